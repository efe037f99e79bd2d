//! Output records for each verb and their JSON, CSV and table projections.
//!
//! JSON is the full record. CSV and tables show the main row set of a
//! record; tables add a short verification summary underneath.

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use hstrata::exact_linalg::Rational;
use hstrata::quantum_affine::{StrataVerification, StratumReport};
use hstrata::quantum_torus::TorusDegreeRow;
use hstrata::schubert::{AgreementReport, DegreeRow, InequalityReport, MonotoneReport};
use num_bigint::BigInt;

use crate::Format;

pub const DEGREE_SOURCE: &str =
    "strong Dixmier-Moeglin equivalence: locdeg = primdeg = ratdeg = stratum_dim";

#[derive(Debug, Serialize)]
pub struct AffineRecord {
    pub kind: &'static str,
    pub n: usize,
    pub q: Option<String>,
    pub degree_source: &'static str,
    pub rows: Vec<StratumReport>,
    pub verification: StrataVerification,
}

#[derive(Debug, Serialize)]
pub struct TorusRecord {
    pub kind: &'static str,
    pub n: usize,
    pub q: Option<String>,
    pub center_rank: usize,
    pub lattice_basis: Vec<Vec<Value>>,
    pub degrees: Vec<TorusDegreeRow>,
}

#[derive(Debug, Serialize)]
pub struct SchubertRecord {
    pub kind: &'static str,
    pub cartan_type: String,
    pub word: Vec<usize>,
    pub n: usize,
    pub betas: Vec<Vec<i64>>,
    pub schubert_matrix: Vec<Vec<Value>>,
    pub interval_size: usize,
    pub degree_source: &'static str,
    pub rows: Vec<DegreeRow>,
    pub formula_agreement: AgreementReport,
    pub order_inequality: InequalityReport,
    pub poset_monotone: MonotoneReport,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct SuiteCase {
    pub suite: String,
    pub case: String,
    pub checked: u64,
    pub violations: u64,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyRecord {
    pub kind: &'static str,
    pub seed: u64,
    pub cases: Vec<SuiteCase>,
    pub passed: bool,
}

/// Exact integers become JSON numbers when they fit in `i64`, strings otherwise.
pub fn int_value(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

pub fn rational_value(x: &Rational) -> Value {
    if x.is_integer() {
        int_value(x.numer())
    } else {
        Value::String(x.to_string())
    }
}

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}", w = *w))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(headers.to_vec(), &mut out);
    line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect(), &mut out);
    for r in rows {
        line(r.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

fn csv_string(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn json<T: Serialize>(record: &T) -> String {
    let mut s = serde_json::to_string_pretty(record).expect("serializable record");
    s.push('\n');
    s
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

impl AffineRecord {
    const HEADERS: [&'static str; 6] = ["diagram", "stratum_dim", "height", "locdeg", "primdeg", "ratdeg"];

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.diagram.to_string(),
                    r.stratum_dim.to_string(),
                    r.height.to_string(),
                    r.locdeg.to_string(),
                    r.primdeg.to_string(),
                    r.ratdeg.to_string(),
                ]
            })
            .collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => csv_string(&Self::HEADERS, &self.rows()),
            Format::Table => {
                let v = &self.verification;
                format!(
                    "quantum affine space, N = {}\n\n{}\nstrata inequality: {} ({} nested pairs, {}, {} violations)\n",
                    self.n,
                    table(&Self::HEADERS, &self.rows()),
                    pass(v.passed()),
                    v.pairs_checked,
                    if v.exhaustive { "exhaustive".to_string() } else { format!("sampled, seed {}", v.seed.unwrap_or(0)) },
                    v.violations.len()
                )
            }
        }
    }
}

impl TorusRecord {
    const HEADERS: [&'static str; 4] = ["height", "locdeg", "primdeg", "ratdeg"];

    fn rows(&self) -> Vec<Vec<String>> {
        self.degrees
            .iter()
            .map(|r| {
                vec![r.height.to_string(), r.locdeg.to_string(), r.primdeg.to_string(), r.ratdeg.to_string()]
            })
            .collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => csv_string(&Self::HEADERS, &self.rows()),
            Format::Table => {
                let basis: Vec<String> = self
                    .lattice_basis
                    .iter()
                    .map(|b| {
                        let cells: Vec<String> = b.iter().map(value_text).collect();
                        format!("  ({})", cells.join(", "))
                    })
                    .collect();
                format!(
                    "quantum torus, N = {}\ncentre rank: {}\ncentre lattice basis:\n{}\n{}",
                    self.n,
                    self.center_rank,
                    if basis.is_empty() { "  (none)".to_string() } else { basis.join("\n") },
                    "\n".to_string() + &table(&Self::HEADERS, &self.rows())
                )
            }
        }
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl SchubertRecord {
    const HEADERS: [&'static str; 8] =
        ["element", "length", "diagram", "stratum_dim", "height", "locdeg", "primdeg", "ratdeg"];

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.element.to_string(),
                    r.length.to_string(),
                    r.diagram.to_string(),
                    r.stratum_dim.to_string(),
                    r.height.to_string(),
                    r.locdeg.to_string(),
                    r.primdeg.to_string(),
                    r.ratdeg.to_string(),
                ]
            })
            .collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => csv_string(&Self::HEADERS, &self.rows()),
            Format::Table => {
                let betas: Vec<String> = self
                    .betas
                    .iter()
                    .enumerate()
                    .map(|(k, b)| format!("  beta_{} = {}", k + 1, hstrata::RootVector(b.clone())))
                    .collect();
                let matrix: Vec<String> = self
                    .schubert_matrix
                    .iter()
                    .map(|r| format!("  [{}]", r.iter().map(value_text).collect::<Vec<_>>().join(", ")))
                    .collect();
                let m = &self.poset_monotone;
                format!(
                    "quantum Schubert cell {} w = {:?}, N = {}\nroots:\n{}\nskew matrix:\n{}\n\n{}\n\
                     Cauchon diagrams: {} (Bruhat interval size {})\n\
                     two-formula agreement: {} ({} entries, {} mismatches)\n\
                     strata inequality: {} ({} comparable pairs, {} violations)\n\
                     inclusion implies Bruhat order: {} ({} nested pairs, {} violations; {} comparable pairs not nested)\n",
                    self.cartan_type,
                    self.word,
                    self.n,
                    if betas.is_empty() { "  (none)".to_string() } else { betas.join("\n") },
                    if matrix.is_empty() { "  []".to_string() } else { matrix.join("\n") },
                    table(&Self::HEADERS, &self.rows()),
                    self.rows.len(),
                    self.interval_size,
                    pass(self.formula_agreement.passed()),
                    self.formula_agreement.checked,
                    self.formula_agreement.mismatches.len(),
                    pass(self.order_inequality.passed()),
                    self.order_inequality.comparable_pairs,
                    self.order_inequality.violations.len(),
                    pass(m.passed()),
                    m.nested_pairs,
                    m.violations.len(),
                    m.comparable_not_nested,
                )
            }
        }
    }
}

impl VerifyRecord {
    const HEADERS: [&'static str; 5] = ["suite", "case", "checked", "violations", "passed"];

    fn rows(&self) -> Vec<Vec<String>> {
        self.cases
            .iter()
            .map(|c| {
                vec![
                    c.suite.clone(),
                    c.case.clone(),
                    c.checked.to_string(),
                    c.violations.to_string(),
                    c.passed.to_string(),
                ]
            })
            .collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => csv_string(&Self::HEADERS, &self.rows()),
            Format::Table => format!(
                "built-in verification suite, seed {}\n\n{}\noverall: {}\n",
                self.seed,
                table(&Self::HEADERS, &self.rows()),
                pass(self.passed)
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let t = table(&["a", "bbb"], &[vec!["10".into(), "x".into()]]);
        assert_eq!(t, " a  bbb\n--  ---\n10    x\n");
    }

    #[test]
    fn csv_quotes_diagrams() {
        let s = csv_string(&["diagram"], &[vec!["{1,3}".into()]]);
        assert_eq!(s, "diagram\n\"{1,3}\"\n");
    }

    #[test]
    fn big_integers_become_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int_value(&big), Value::String(big.to_string()));
        assert_eq!(int_value(&BigInt::from(-3)), Value::from(-3));
    }
}
