//! Uniparameter quantum tori `O_{q,A}((K^×)^N)`.
//!
//! The bicharacter is `σ(s, t) = q^{sᵀAt}`. Since `q` is not a root of
//! unity, `σ(s, -) ≡ 1` exactly when `A·s = 0`, so the lattice `S` indexing
//! the central monomials is the integer kernel of `A`. The centre is a
//! Laurent polynomial ring in `r = rank S` variables and every prime `P`
//! has all three degrees equal to `r - height(P)`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::exact_linalg::{integer_kernel_basis, kernel_dim_q, ZMatrix};
use crate::quantum_affine::{check_skew, parse_skew_json, skew_adjacency, AffineSpaceSpec};
use crate::Degrees;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSpec {
    skew: ZMatrix,
    q_label: Option<String>,
}

impl TorusSpec {
    pub fn new(skew: ZMatrix) -> Result<Self> {
        check_skew(&skew)?;
        Ok(TorusSpec { skew, q_label: None })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(ZMatrix::from_rows(rows)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let (skew, q_label) = parse_skew_json(text)?;
        Ok(TorusSpec { skew, q_label })
    }

    /// The torus obtained from `O_{q,A}(K^N)/K_Δ` by inverting the
    /// surviving variables; its matrix is `A(Δ)`.
    pub fn localized_stratum(spec: &AffineSpaceSpec, d: &Diagram) -> Result<Self> {
        Ok(TorusSpec { skew: skew_adjacency(spec, d)?, q_label: spec.q_label().map(str::to_owned) })
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
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterDescription {
    pub lattice_basis: Vec<Vec<BigInt>>,
    pub rank: usize,
}

pub fn center_description(spec: &TorusSpec) -> CenterDescription {
    let lattice_basis = integer_kernel_basis(&spec.skew);
    CenterDescription { rank: lattice_basis.len(), lattice_basis }
}

pub fn center_rank(spec: &TorusSpec) -> usize {
    kernel_dim_q(&spec.skew.to_q())
}

/// The common value of locdeg, primdeg and ratdeg at any prime of the given height.
pub fn degree_of_prime(spec: &TorusSpec, height_p: usize) -> Result<usize> {
    let r = center_rank(spec);
    if height_p > r {
        return Err(Error::InvalidHeight { height: height_p, min: 0, max: r });
    }
    Ok(r - height_p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusDegreeRow {
    pub height: usize,
    pub locdeg: usize,
    pub primdeg: usize,
    pub ratdeg: usize,
}

impl TorusDegreeRow {
    pub fn degrees(&self) -> Degrees {
        Degrees { locdeg: self.locdeg, primdeg: self.primdeg, ratdeg: self.ratdeg }
    }
}

/// One row per admissible height `0..=r`.
pub fn degree_table(spec: &TorusSpec) -> Vec<TorusDegreeRow> {
    let r = center_rank(spec);
    (0..=r)
        .map(|h| TorusDegreeRow { height: h, locdeg: r - h, primdeg: r - h, ratdeg: r - h })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn circulant() -> TorusSpec {
        TorusSpec::from_rows(&[[0, 1, -1], [-1, 0, 1], [1, -1, 0]]).unwrap()
    }

    #[test]
    fn centre_examples() {
        let comm = TorusSpec::new(ZMatrix::zeros(3, 3)).unwrap();
        let c = center_description(&comm);
        assert_eq!(c.rank, 3);
        assert_eq!(c.lattice_basis, vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]);

        let plane = TorusSpec::from_rows(&[[0, 1], [-1, 0]]).unwrap();
        let c = center_description(&plane);
        assert_eq!(c.rank, 0);
        assert!(c.lattice_basis.is_empty());

        let c = center_description(&circulant());
        assert_eq!(c.rank, 1);
        assert_eq!(c.lattice_basis, vec![ints(&[1, 1, 1])]);
    }

    #[test]
    fn non_primitive_centre_generator() {
        // A = [[0,2],[-2,0]] padded with a column that only sees half of it:
        // the kernel over Z must still be saturated.
        let t = TorusSpec::from_rows(&[[0, 2, -4], [-2, 0, 0], [4, 0, 0]]).unwrap();
        let c = center_description(&t);
        assert_eq!(c.lattice_basis, vec![ints(&[0, 2, 1])]);
    }

    #[test]
    fn degree_examples() {
        let c = circulant();
        assert_eq!(degree_of_prime(&c, 0).unwrap(), 1);
        assert_eq!(degree_of_prime(&c, 1).unwrap(), 0);
        assert_eq!(
            degree_of_prime(&c, 2),
            Err(Error::InvalidHeight { height: 2, min: 0, max: 1 })
        );
        let comm = TorusSpec::new(ZMatrix::zeros(4, 4)).unwrap();
        assert_eq!(degree_of_prime(&comm, 0).unwrap(), 4);
        assert_eq!(degree_of_prime(&comm, 4).unwrap(), 0);
        let rows = degree_table(&comm);
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.degrees().all_equal() && r.locdeg + r.height == 4));
    }

    #[test]
    fn localized_stratum_matches_affine() {
        let a = AffineSpaceSpec::from_rows(&[[0, 1, -1], [-1, 0, 1], [1, -1, 0]]).unwrap();
        for mask in 0..8u64 {
            let d = Diagram::from_mask(mask);
            let t = TorusSpec::localized_stratum(&a, &d).unwrap();
            assert_eq!(
                center_rank(&t),
                crate::quantum_affine::stratum_dim(&a, &d).unwrap()
            );
        }
    }
}
