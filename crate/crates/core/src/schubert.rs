//! Quantum Schubert cells `U_q[w]`.
//!
//! For a reduced word `w = s_{i_1}⋯s_{i_N}` the roots
//! `β_k = s_{i_1}⋯s_{i_{k-1}}(α_{i_k})` are distinct and positive, and the
//! cell is a uniparameter CGL extension whose skew matrix has `(s, t)`
//! entry `(β_s, β_t)` above the diagonal.
//!
//! H-primes are indexed by Cauchon diagrams, which are in bijection with
//! the Bruhat interval `[e, w]` via `Δ ↦ w^Δ`. Each `u ≤ w` is realized here
//! by its rightmost reduced subexpression (see
//! [`positive_subexpression`]); [`cauchon_entries`] checks at runtime that
//! the realization really is a bijection onto reduced subexpressions.
//!
//! Stratum dimensions are available by two routes: the kernel of the
//! principal submatrix `A(w^Δ)` and the kernel of the operator `w^Δ + w` on
//! `E`. [`verify_formula_agreement`] compares them.

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::exact_linalg::{kernel_dim_q, QMatrix, Rational};
use crate::par::{self, Execution};
use crate::quantum_affine::primdeg_from_heights;
use crate::root_system::{CartanType, Family, RootSystem, RootVector};
use crate::weyl::{
    bruhat_interval_bounded, bruhat_leq, from_word, positive_subexpression, subexpression_element,
    WeylElement, Word,
};
use crate::Degrees;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchubertInput {
    #[serde(rename = "type")]
    family: String,
    rank: usize,
    word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchubertSpec {
    cartan_type: CartanType,
    word: Word,
}

impl SchubertSpec {
    /// Rejects words that are out of range or not reduced.
    pub fn new(cartan_type: CartanType, word: Word) -> Result<Self> {
        let rs = RootSystem::new(cartan_type);
        let w = from_word(&rs, &word)?;
        if w.length() != word.len() {
            return Err(Error::NotReduced(word.0));
        }
        Ok(SchubertSpec { cartan_type, word })
    }

    /// Parses `{"type": "A", "rank": 2, "word": [1, 2, 1]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SchubertInput =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        let family: Family = raw.family.parse()?;
        Self::new(CartanType::new(family, raw.rank)?, Word(raw.word))
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn word(&self) -> &Word {
        &self.word
    }
}

#[derive(Clone, Debug)]
pub struct SchubertData {
    spec: SchubertSpec,
    root_system: RootSystem,
    betas: Vec<RootVector>,
    schubert_matrix: QMatrix,
    w: WeylElement,
}

impl SchubertData {
    pub fn spec(&self) -> &SchubertSpec {
        &self.spec
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn word(&self) -> &Word {
        &self.spec.word
    }

    /// `N = ℓ(w)`, the number of generators of the cell.
    pub fn n(&self) -> usize {
        self.spec.word.len()
    }

    pub fn betas(&self) -> &[RootVector] {
        &self.betas
    }

    pub fn schubert_matrix(&self) -> &QMatrix {
        &self.schubert_matrix
    }

    pub fn w(&self) -> &WeylElement {
        &self.w
    }
}

pub fn build_schubert(spec: &SchubertSpec) -> Result<SchubertData> {
    let rs = RootSystem::new(spec.cartan_type);
    let word = &spec.word;
    word.validate(rs.rank())?;
    let mut prefix = WeylElement::identity(&rs);
    let mut betas = Vec::with_capacity(word.len());
    for &l in word.letters() {
        betas.push(prefix.apply(&RootVector::simple(rs.rank(), l)));
        prefix = prefix.mul_simple_right(&rs, l - 1);
    }
    if prefix.length() != word.len() {
        return Err(Error::NotReduced(word.0.clone()));
    }
    for (k, b) in betas.iter().enumerate() {
        if !b.is_positive() || betas[..k].contains(b) {
            return Err(Error::InvalidInput(format!("root β_{} = {b} is not a new positive root", k + 1)));
        }
    }
    let n = betas.len();
    let mut m = QMatrix::zeros(n, n);
    for s in 0..n {
        for t in s + 1..n {
            let v = rs.inner(&betas[s], &betas[t])?;
            m.set(t, s, -v.clone());
            m.set(s, t, v);
        }
    }
    Ok(SchubertData { spec: spec.clone(), root_system: rs, betas, schubert_matrix: m, w: prefix })
}

fn check_positions(data: &SchubertData, d: &Diagram) -> Result<()> {
    match d.max_member() {
        Some(m) if m > data.n() => Err(Error::IndexOutOfRange { index: m, bound: data.n() }),
        _ => Ok(()),
    }
}

/// `dim_Q ker A(w^Δ)`, with `A(w^Δ)` the principal submatrix of the
/// Schubert matrix on the sorted complement of `Δ`.
pub fn stratum_dim_matrix(data: &SchubertData, d: &Diagram) -> Result<usize> {
    check_positions(data, d)?;
    let idx: Vec<usize> = d.complement(data.n()).into_iter().map(|k| k - 1).collect();
    Ok(kernel_dim_q(&data.schubert_matrix.principal_submatrix(&idx)))
}

/// `dim_Q ker(w^Δ + w)` as an operator on `E`.
pub fn stratum_dim_operator(data: &SchubertData, d: &Diagram) -> Result<usize> {
    let u = subexpression_element(&data.root_system, data.word(), d)?;
    Ok(operator_kernel_dim(&u, &data.w))
}

fn operator_kernel_dim(u: &WeylElement, w: &WeylElement) -> usize {
    let sum = u.to_qmatrix().add(&w.to_qmatrix()).expect("same rank");
    kernel_dim_q(&sum)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchonEntry {
    /// `u = w^Δ`
    pub element: WeylElement,
    pub diagram: Diagram,
    pub stratum_dim: usize,
    /// Height of the H-prime `J_Δ`, equal to `|Δ|`.
    pub height: usize,
    pub degrees: Degrees,
}

impl CauchonEntry {
    pub fn new(element: WeylElement, diagram: Diagram, stratum_dim: usize) -> Self {
        CauchonEntry {
            height: diagram.len(),
            element,
            diagram,
            stratum_dim,
            degrees: Degrees::uniform(stratum_dim),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub execution: Execution,
    /// Refuse intervals with more elements than this.
    pub interval_limit: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { execution: Execution::default(), interval_limit: 1_000_000 }
    }
}

pub fn cauchon_entries(data: &SchubertData) -> Result<Vec<CauchonEntry>> {
    cauchon_entries_with(data, &EnumerationOptions::default())
}

/// One entry per `u ≤ w`, in the graded order of the interval.
///
/// Fails with [`Error::BijectionViolation`] if the greedy diagrams are not
/// pairwise distinct, do not multiply back to `u`, or are not reduced.
pub fn cauchon_entries_with(data: &SchubertData, opts: &EnumerationOptions) -> Result<Vec<CauchonEntry>> {
    let rs = &data.root_system;
    let interval = bruhat_interval_bounded(rs, &data.w, data.word(), opts.interval_limit)?;
    let built = par::map_slice(opts.execution, &interval, |u| -> Result<CauchonEntry> {
        let d = positive_subexpression(rs, data.word(), u)?;
        let back = subexpression_element(rs, data.word(), &d)?;
        if &back != u {
            return Err(Error::BijectionViolation(format!("diagram {d} does not multiply back to its element")));
        }
        if u.length() != d.len() {
            return Err(Error::BijectionViolation(format!("subexpression at {d} is not reduced")));
        }
        let dim = stratum_dim_matrix(data, &d)?;
        Ok(CauchonEntry::new(u.clone(), d, dim))
    });
    let entries: Vec<CauchonEntry> = built.into_iter().collect::<Result<_>>()?;
    let mut diagrams: Vec<&Diagram> = entries.iter().map(|e| &e.diagram).collect();
    diagrams.sort();
    diagrams.dedup();
    if diagrams.len() != interval.len() {
        return Err(Error::BijectionViolation(format!(
            "{} distinct diagrams for {} interval elements",
            diagrams.len(),
            interval.len()
        )));
    }
    Ok(entries)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementMismatch {
    pub diagram: Diagram,
    pub matrix_dim: usize,
    pub operator_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub checked: usize,
    pub mismatches: Vec<AgreementMismatch>,
}

impl AgreementReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Recomputes both stratum-dimension formulas for every entry and compares them.
pub fn verify_formula_agreement(data: &SchubertData, entries: &[CauchonEntry], exec: Execution) -> Result<AgreementReport> {
    let results = par::map_slice(exec, entries, |e| -> Result<Option<AgreementMismatch>> {
        let matrix_dim = stratum_dim_matrix(data, &e.diagram)?;
        let operator_dim = stratum_dim_operator(data, &e.diagram)?;
        Ok((matrix_dim != operator_dim).then(|| AgreementMismatch {
            diagram: e.diagram.clone(),
            matrix_dim,
            operator_dim,
        }))
    });
    let mismatches: Vec<AgreementMismatch> =
        results.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    Ok(AgreementReport { checked: entries.len(), mismatches })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairViolation {
    pub lower: Diagram,
    pub upper: Diagram,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    /// Number of ordered pairs `(u, v)` with `u ≤ v`, reflexive pairs included.
    pub comparable_pairs: usize,
    pub violations: Vec<PairViolation>,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every Bruhat-comparable pair `u ≤ v` (equivalently `J_{Δ_u} ⊆ J_{Δ_v}`)
/// checks `dim(Δ_u) + |Δ_u| ≤ dim(Δ_v) + |Δ_v|`.
pub fn verify_order_inequality(
    data: &SchubertData,
    entries: &[CauchonEntry],
    exec: Execution,
) -> InequalityReport {
    let rs = &data.root_system;
    let per_lower = par::map_slice(exec, entries, |lo| {
        let lhs = lo.stratum_dim + lo.height;
        let mut count = 0;
        let mut bad = Vec::new();
        for hi in entries {
            if !bruhat_leq(rs, &lo.element, &hi.element) {
                continue;
            }
            count += 1;
            let rhs = hi.stratum_dim + hi.height;
            if lhs > rhs {
                bad.push(PairViolation { lower: lo.diagram.clone(), upper: hi.diagram.clone(), lhs, rhs });
            }
        }
        (count, bad)
    });
    let mut comparable_pairs = 0;
    let mut violations = Vec::new();
    for (c, bad) in per_lower {
        comparable_pairs += c;
        violations.extend(bad);
    }
    InequalityReport { comparable_pairs, violations }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneReport {
    /// Ordered pairs with `Δ_u ⊆ Δ_v`.
    pub nested_pairs: usize,
    /// Nested pairs with `u ≰ v`; expected empty.
    pub violations: Vec<(Diagram, Diagram)>,
    /// Pairs with `u ≤ v` but `Δ_u ⊄ Δ_v`. Informational: the inverse
    /// of `Δ ↦ w^Δ` is not increasing for inclusion in general.
    pub comparable_not_nested: usize,
    /// The first few such pairs, in entry order.
    pub comparable_not_nested_examples: Vec<(Diagram, Diagram)>,
}

impl MonotoneReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

const MAX_EXAMPLES: usize = 5;

pub fn verify_poset_monotone(data: &SchubertData, entries: &[CauchonEntry], exec: Execution) -> MonotoneReport {
    let rs = &data.root_system;
    let per_lower = par::map_slice(exec, entries, |lo| {
        let mut nested = 0;
        let mut bad = Vec::new();
        let mut loose = Vec::new();
        for hi in entries {
            let is_nested = lo.diagram.is_subset(&hi.diagram);
            let leq = bruhat_leq(rs, &lo.element, &hi.element);
            if is_nested {
                nested += 1;
                if !leq {
                    bad.push((lo.diagram.clone(), hi.diagram.clone()));
                }
            } else if leq {
                loose.push((lo.diagram.clone(), hi.diagram.clone()));
            }
        }
        (nested, bad, loose)
    });
    let mut report = MonotoneReport {
        nested_pairs: 0,
        violations: Vec::new(),
        comparable_not_nested: 0,
        comparable_not_nested_examples: Vec::new(),
    };
    for (nested, bad, loose) in per_lower {
        report.nested_pairs += nested;
        report.violations.extend(bad);
        report.comparable_not_nested += loose.len();
        let room = MAX_EXAMPLES.saturating_sub(report.comparable_not_nested_examples.len());
        report.comparable_not_nested_examples.extend(loose.into_iter().take(room));
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    /// Reduced word for `u`: the letters retained by the diagram.
    pub element: Word,
    pub length: usize,
    pub diagram: Diagram,
    pub stratum_dim: usize,
    pub height: usize,
    pub locdeg: usize,
    pub primdeg: usize,
    pub ratdeg: usize,
}

impl DegreeRow {
    pub fn degrees(&self) -> Degrees {
        Degrees { locdeg: self.locdeg, primdeg: self.primdeg, ratdeg: self.ratdeg }
    }

    /// primdeg of a (not necessarily H-invariant) prime of height `height_p`
    /// in this stratum.
    pub fn primdeg_at_height(&self, height_p: usize) -> Result<usize> {
        primdeg_from_heights(self.stratum_dim, self.height, height_p)
    }
}

pub fn degree_table(data: &SchubertData, entries: &[CauchonEntry]) -> Vec<DegreeRow> {
    entries
        .iter()
        .map(|e| DegreeRow {
            element: data.word().restrict(&e.diagram),
            length: e.element.length(),
            diagram: e.diagram.clone(),
            stratum_dim: e.stratum_dim,
            height: e.height,
            locdeg: e.degrees.locdeg,
            primdeg: e.degrees.primdeg,
            ratdeg: e.degrees.ratdeg,
        })
        .collect()
}

/// Exact inner product helper kept public for report writers.
pub fn beta_inner(data: &SchubertData, s: usize, t: usize) -> Result<Rational> {
    let n = data.n();
    if s == 0 || s > n {
        return Err(Error::IndexOutOfRange { index: s, bound: n });
    }
    if t == 0 || t > n {
        return Err(Error::IndexOutOfRange { index: t, bound: n });
    }
    data.root_system.inner(&data.betas[s - 1], &data.betas[t - 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(t: &str, w: &[usize]) -> SchubertData {
        build_schubert(&SchubertSpec::new(t.parse().unwrap(), Word(w.to_vec())).unwrap()).unwrap()
    }

    fn d(n: usize, m: &[usize]) -> Diagram {
        Diagram::new(n, m.iter().copied()).unwrap()
    }

    #[test]
    fn build_examples() {
        let a2 = data("A2", &[1, 2, 1]);
        assert_eq!(
            a2.betas(),
            &[RootVector(vec![1, 0]), RootVector(vec![1, 1]), RootVector(vec![0, 1])]
        );
        assert_eq!(
            a2.schubert_matrix(),
            &QMatrix::from_rows(&[[0, 1, -1], [-1, 0, 1], [1, -1, 0]]).unwrap()
        );
        let a1 = data("A1", &[1]);
        assert_eq!(a1.betas(), &[RootVector(vec![1])]);
        assert_eq!(a1.schubert_matrix(), &QMatrix::zeros(1, 1));
        let a2s = data("A2", &[1, 2]);
        assert_eq!(a2s.betas(), &[RootVector(vec![1, 0]), RootVector(vec![1, 1])]);
        assert_eq!(a2s.schubert_matrix(), &QMatrix::from_rows(&[[0, 1], [-1, 0]]).unwrap());
    }

    #[test]
    fn rejects_non_reduced() {
        assert_eq!(
            SchubertSpec::new("A2".parse().unwrap(), Word(vec![1, 1])),
            Err(Error::NotReduced(vec![1, 1]))
        );
        assert!(SchubertSpec::new("A2".parse().unwrap(), Word(vec![3])).is_err());
        assert!(SchubertSpec::from_json(r#"{"type":"A","rank":2,"word":[1,2,1,2]}"#).is_err());
        assert!(SchubertSpec::from_json(r#"{"type":"Q","rank":2,"word":[]}"#).is_err());
        assert!(SchubertSpec::from_json(r#"{"type":"G","rank":3,"word":[]}"#).is_err());
        let s = SchubertSpec::from_json(r#"{"type":"B","rank":2,"word":[1,2,1,2]}"#).unwrap();
        assert_eq!(s.word().len(), 4);
    }

    #[test]
    fn entry_counts() {
        assert_eq!(cauchon_entries(&data("A2", &[1, 2, 1])).unwrap().len(), 6);
        let e = cauchon_entries(&data("A2", &[])).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!((e[0].diagram.clone(), e[0].stratum_dim), (Diagram::empty(), 0));
        assert_eq!(cauchon_entries(&data("A2", &[1, 2])).unwrap().len(), 4);
    }

    #[test]
    fn matrix_route_examples() {
        let a2 = data("A2", &[1, 2, 1]);
        assert_eq!(stratum_dim_matrix(&a2, &Diagram::full(3)).unwrap(), 0);
        assert_eq!(stratum_dim_matrix(&a2, &Diagram::empty()).unwrap(), 1);
        assert_eq!(stratum_dim_matrix(&a2, &d(3, &[1, 3])).unwrap(), 1);
        assert!(stratum_dim_matrix(&a2, &d(4, &[4])).is_err());
    }

    #[test]
    fn operator_route_examples() {
        let a2 = data("A2", &[1, 2, 1]);
        assert_eq!(stratum_dim_operator(&a2, &Diagram::full(3)).unwrap(), 0);
        assert_eq!(stratum_dim_operator(&a2, &Diagram::empty()).unwrap(), 1);
        let a1 = data("A1", &[1]);
        assert_eq!(stratum_dim_operator(&a1, &Diagram::empty()).unwrap(), 1);
    }

    #[test]
    fn verifiers_pass_on_small_cases() {
        for (t, w) in [("A2", vec![1, 2, 1]), ("B2", vec![1, 2, 1, 2]), ("A2", vec![])] {
            let data = data(t, &w);
            let entries = cauchon_entries(&data).unwrap();
            let agreement = verify_formula_agreement(&data, &entries, Execution::Sequential).unwrap();
            assert!(agreement.passed());
            assert_eq!(agreement.checked, entries.len());
            assert!(verify_order_inequality(&data, &entries, Execution::Sequential).passed());
            assert!(verify_poset_monotone(&data, &entries, Execution::Sequential).passed());
        }
    }

    #[test]
    fn a2_degree_table() {
        let a2 = data("A2", &[1, 2, 1]);
        let rows = degree_table(&a2, &cauchon_entries(&a2).unwrap());
        let top = rows.iter().find(|r| r.diagram == Diagram::full(3)).unwrap();
        assert_eq!(top.degrees(), Degrees::uniform(0));
        let bottom = rows.iter().find(|r| r.diagram.is_empty()).unwrap();
        assert_eq!(bottom.degrees(), Degrees::uniform(1));
        assert_eq!(bottom.primdeg_at_height(0).unwrap(), 1);
        assert_eq!(bottom.primdeg_at_height(1).unwrap(), 0);
        assert!(bottom.primdeg_at_height(2).is_err());

        let a1 = data("A1", &[1]);
        let rows = degree_table(&a1, &cauchon_entries(&a1).unwrap());
        assert_eq!(rows[0].diagram, Diagram::empty());
        assert_eq!(rows[0].degrees(), Degrees::uniform(1));
    }

    #[test]
    fn interval_limit_is_enforced() {
        let g2 = data("G2", &[1, 2, 1, 2, 1, 2]);
        let opts = EnumerationOptions { interval_limit: 10, ..Default::default() };
        assert_eq!(cauchon_entries_with(&g2, &opts), Err(Error::IntervalTooLarge { limit: 10 }));
    }

    #[test]
    fn beta_inner_products() {
        let a2 = data("A2", &[1, 2, 1]);
        assert_eq!(beta_inner(&a2, 1, 2).unwrap(), Rational::from_integer(1.into()));
        assert!(beta_inner(&a2, 0, 1).is_err());
        assert!(beta_inner(&a2, 1, 4).is_err());
    }
}
