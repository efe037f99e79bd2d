//! Uniparameter quantum affine spaces `O_{q,A}(K^N)`.
//!
//! The H-primes are the ideals `K_Δ` generated by the variables indexed by
//! a diagram `Δ ⊆ {1..N}`. The stratum of `K_Δ` has Krull dimension
//! `dim_Q ker A(Δ)`, where `A(Δ)` is the principal submatrix of `A` on the
//! complement of `Δ`, and `K_Δ` has height `|Δ|`. The parameter `q` never
//! enters a computation; only its being a non-root of unity matters, so it
//! is kept as an optional label.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::exact_linalg::{kernel_dim_q, ZMatrix};
use crate::par::{self, Execution};
use crate::Degrees;

/// Raw JSON shape shared by affine-space and torus inputs.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SkewInput {
    n: usize,
    skew: Vec<Vec<i64>>,
    #[serde(default)]
    q: Option<String>,
}

/// Parses `{"n": N, "skew": [[...]], "q": "..."}` and checks skew-symmetry.
pub(crate) fn parse_skew_json(text: &str) -> Result<(ZMatrix, Option<String>)> {
    let raw: SkewInput =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
    if raw.skew.len() != raw.n {
        return Err(Error::DimensionMismatch { expected: raw.n, found: raw.skew.len() });
    }
    let m = ZMatrix::from_rows(&raw.skew)?;
    check_skew(&m)?;
    Ok((m, raw.q))
}

pub(crate) fn check_skew(m: &ZMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSkewSymmetric(format!("{}x{} is not square", m.rows(), m.cols())));
    }
    for i in 0..m.rows() {
        for j in i..m.cols() {
            if *m.get(i, j) != -m.get(j, i).clone() {
                return Err(Error::NotSkewSymmetric(format!(
                    "entry ({}, {}) = {} but ({}, {}) = {}",
                    i + 1,
                    j + 1,
                    m.get(i, j),
                    j + 1,
                    i + 1,
                    m.get(j, i)
                )));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpaceSpec {
    skew: ZMatrix,
    q_label: Option<String>,
}

impl AffineSpaceSpec {
    pub fn new(skew: ZMatrix) -> Result<Self> {
        check_skew(&skew)?;
        Ok(AffineSpaceSpec { skew, q_label: None })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(ZMatrix::from_rows(rows)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let (skew, q_label) = parse_skew_json(text)?;
        Ok(AffineSpaceSpec { skew, q_label })
    }

    /// The commutative polynomial ring in `n` variables (`A = 0`).
    pub fn commutative(n: usize) -> Self {
        AffineSpaceSpec { skew: ZMatrix::zeros(n, n), q_label: None }
    }

    pub fn n(&self) -> usize {
        self.skew.rows()
    }

    pub fn skew(&self) -> &ZMatrix {
        &self.skew
    }

    pub fn q_label(&self) -> Option<&str> {
        self.q_label.as_deref()
    }

    fn check_diagram(&self, d: &Diagram) -> Result<()> {
        match d.max_member() {
            Some(m) if m > self.n() => Err(Error::IndexOutOfRange { index: m, bound: self.n() }),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumReport {
    pub diagram: Diagram,
    pub stratum_dim: usize,
    pub height: usize,
    pub locdeg: usize,
    pub primdeg: usize,
    pub ratdeg: usize,
}

impl StratumReport {
    pub fn degrees(&self) -> Degrees {
        Degrees { locdeg: self.locdeg, primdeg: self.primdeg, ratdeg: self.ratdeg }
    }
}

/// `A(Δ)`: the principal submatrix of `A` on the sorted complement of `Δ`.
pub fn skew_adjacency(spec: &AffineSpaceSpec, d: &Diagram) -> Result<ZMatrix> {
    spec.check_diagram(d)?;
    let idx: Vec<usize> = d.complement(spec.n()).into_iter().map(|k| k - 1).collect();
    Ok(spec.skew.principal_submatrix(&idx))
}

/// Krull dimension of the H-stratum of `K_Δ`, namely `dim_Q ker A(Δ)`.
pub fn stratum_dim(spec: &AffineSpaceSpec, d: &Diagram) -> Result<usize> {
    Ok(kernel_dim_q(&skew_adjacency(spec, d)?.to_q()))
}

fn stratum_dim_mask(spec: &AffineSpaceSpec, mask: u64) -> usize {
    let idx: Vec<usize> = (0..spec.n()).filter(|&k| mask >> k & 1 == 0).collect();
    kernel_dim_q(&spec.skew.principal_submatrix(&idx).to_q())
}

/// Height of `K_Δ`.
pub fn hprime_height(d: &Diagram) -> usize {
    d.len()
}

/// Primitivity degree of a prime of height `height_p` lying in a stratum of
/// dimension `stratum_dim` whose H-prime has height `stratum_height`:
/// `stratum_dim + stratum_height - height_p`.
pub fn primdeg_from_heights(stratum_dim: usize, stratum_height: usize, height_p: usize) -> Result<usize> {
    let max = stratum_height + stratum_dim;
    if height_p < stratum_height || height_p > max {
        return Err(Error::InvalidHeight { height: height_p, min: stratum_height, max });
    }
    Ok(max - height_p)
}

/// Primitivity degree of a prime `P` of height `height_p` in the stratum of `K_Δ`.
pub fn primdeg_in_stratum(spec: &AffineSpaceSpec, d: &Diagram, height_p: usize) -> Result<usize> {
    primdeg_from_heights(stratum_dim(spec, d)?, hprime_height(d), height_p)
}

/// Report for the H-prime `K_Δ`. All three degrees equal the stratum dimension.
pub fn stratum_report(spec: &AffineSpaceSpec, d: &Diagram) -> Result<StratumReport> {
    let dim = stratum_dim(spec, d)?;
    Ok(StratumReport {
        diagram: d.clone(),
        stratum_dim: dim,
        height: hprime_height(d),
        locdeg: dim,
        primdeg: dim,
        ratdeg: dim,
    })
}

/// Reports for all `2^N` diagrams, ordered by bitmask (so `∅, {1}, {2}, {1,2}, …`).
pub fn all_stratum_reports(spec: &AffineSpaceSpec, exec: Execution) -> Result<Vec<StratumReport>> {
    let n = spec.n();
    if n >= 63 {
        return Err(Error::InvalidInput(format!("cannot enumerate 2^{n} diagrams")));
    }
    Ok(par::map_range(exec, 1usize << n, |mask| {
        let d = Diagram::from_mask(mask as u64);
        let dim = stratum_dim_mask(spec, mask as u64);
        StratumReport { height: d.len(), diagram: d, stratum_dim: dim, locdeg: dim, primdeg: dim, ratdeg: dim }
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataOptions {
    /// Largest `N` verified over all `3^N` nested pairs.
    pub exhaustive_limit: usize,
    /// Number of uniformly drawn nested pairs above the limit.
    pub samples: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for StrataOptions {
    fn default() -> Self {
        StrataOptions { exhaustive_limit: 12, samples: 20_000, seed: 0, execution: Execution::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataViolation {
    pub smaller: Diagram,
    pub larger: Diagram,
    /// `stratum_dim(Δ) + |Δ|`
    pub lhs: usize,
    /// `stratum_dim(Δ') + |Δ'|`
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataVerification {
    pub n: usize,
    pub exhaustive: bool,
    /// Present only when pairs were sampled.
    pub seed: Option<u64>,
    pub pairs_checked: u64,
    pub violations: Vec<StrataViolation>,
}

impl StrataVerification {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_strata_inequality(spec: &AffineSpaceSpec) -> Result<StrataVerification> {
    verify_strata_inequality_with(spec, &StrataOptions::default())
}

/// Checks `dim(Δ) + |Δ| ≤ dim(Δ') + |Δ'|` for nested pairs `Δ ⊆ Δ'`.
///
/// Up to `exhaustive_limit` every nested pair is checked: stratum dimensions
/// are computed once per diagram, then every mask is compared with each of
/// its submasks. Beyond it, `samples` pairs are drawn from a seeded ChaCha
/// stream by assigning each index to one of {outside, `Δ'` only, both}.
pub fn verify_strata_inequality_with(
    spec: &AffineSpaceSpec,
    opts: &StrataOptions,
) -> Result<StrataVerification> {
    let n = spec.n();
    if n > 63 {
        return Err(Error::InvalidInput(format!("N = {n} exceeds the 63-index diagram limit")));
    }
    let violation = |small: u64, large: u64, lhs: usize, rhs: usize| StrataViolation {
        smaller: Diagram::from_mask(small),
        larger: Diagram::from_mask(large),
        lhs,
        rhs,
    };

    if n <= opts.exhaustive_limit {
        let dims = par::map_range(opts.execution, 1usize << n, |m| stratum_dim_mask(spec, m as u64));
        let score = |m: usize| dims[m] + m.count_ones() as usize;
        let per_mask = par::map_range(opts.execution, dims.len(), |large| {
            let rhs = score(large);
            let mut bad = Vec::new();
            let mut small = large;
            loop {
                let lhs = score(small);
                if lhs > rhs {
                    bad.push(violation(small as u64, large as u64, lhs, rhs));
                }
                if small == 0 {
                    break;
                }
                small = (small - 1) & large;
            }
            bad
        });
        let mut violations: Vec<StrataViolation> = per_mask.into_iter().flatten().collect();
        violations.sort_by(|a, b| (&a.smaller, &a.larger).cmp(&(&b.smaller, &b.larger)));
        return Ok(StrataVerification {
            n,
            exhaustive: true,
            seed: None,
            pairs_checked: 3u64.pow(n as u32),
            violations,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let pairs: Vec<(u64, u64)> = (0..opts.samples)
        .map(|_| {
            let (mut small, mut large) = (0u64, 0u64);
            for k in 0..n {
                match rng.gen_range(0..3u8) {
                    0 => {}
                    1 => large |= 1 << k,
                    _ => {
                        large |= 1 << k;
                        small |= 1 << k;
                    }
                }
            }
            (small, large)
        })
        .collect();
    let checked = par::map_slice(opts.execution, &pairs, |&(small, large)| {
        let lhs = stratum_dim_mask(spec, small) + small.count_ones() as usize;
        let rhs = stratum_dim_mask(spec, large) + large.count_ones() as usize;
        (lhs > rhs).then(|| violation(small, large, lhs, rhs))
    });
    let mut violations: Vec<StrataViolation> = checked.into_iter().flatten().collect();
    violations.sort_by(|a, b| (&a.smaller, &a.larger).cmp(&(&b.smaller, &b.larger)));
    violations.dedup();
    Ok(StrataVerification {
        n,
        exhaustive: false,
        seed: Some(opts.seed),
        pairs_checked: pairs.len() as u64,
        violations,
    })
}
