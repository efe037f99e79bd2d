//! Command layer for the `hstrata` binary.
//!
//! [`run`] executes one [`Command`] and returns the rendered report plus the
//! process exit code, so the binary is a thin wrapper and the whole surface
//! is testable in-process.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 malformed or refused
//! input.

pub mod cache;
pub mod report;

use std::fs;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use hstrata::quantum_affine::{
    all_stratum_reports, verify_strata_inequality_with, AffineSpaceSpec, StrataOptions,
};
use hstrata::quantum_torus::{center_description, center_rank, degree_table as torus_degrees, TorusSpec};
use hstrata::schubert::{
    build_schubert, cauchon_entries_with, degree_table, verify_formula_agreement, verify_order_inequality,
    verify_poset_monotone, CauchonEntry, EnumerationOptions, SchubertData, SchubertSpec,
};
use hstrata::weyl::longest_element;
use hstrata::{CartanType, Execution, RootSystem};

use cache::{cache_key, Cache, CacheEntry};
use report::{
    int_value, rational_value, AffineRecord, SchubertRecord, SuiteCase, TorusRecord, VerifyRecord,
    DEGREE_SOURCE,
};

/// Largest affine space whose `2^N` diagrams the CLI will enumerate.
pub const MAX_AFFINE_N: usize = 20;
/// Largest Bruhat interval enumerated without `--force`.
pub const MAX_INTERVAL: usize = 1_000_000;
/// Environment variable supplying a default cache directory.
pub const CACHE_DIR_ENV: &str = "HSTRATA_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verb {
    Affine,
    Torus,
    Schubert,
    Verify,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Table,
}

#[derive(Clone, Debug)]
pub struct Command {
    pub verb: Verb,
    /// A path, or inline JSON when it starts with `{`.
    pub input: Option<String>,
    pub format: Format,
    pub seed: Option<u64>,
    pub cache_dir: Option<PathBuf>,
    pub force: bool,
    pub quiet: bool,
    /// Interval size refused without `force`.
    pub max_interval: usize,
}

impl Command {
    pub fn new(verb: Verb) -> Self {
        Command { verb, input: None, format: Format::Table, seed: None, cache_dir: None, force: false, quiet: false, max_interval: MAX_INTERVAL }
    }

    pub fn input(mut self, input: impl Into<String>) -> Self {
        self.input = Some(input.into());
        self
    }

    pub fn format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }

    pub fn cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] hstrata::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(hstrata::Error::BijectionViolation(_)) => 1,
            _ => 2,
        }
    }
}

struct Emitted {
    text: String,
    passed: bool,
}

pub fn run(cmd: &Command) -> Outcome {
    let mut log = Vec::new();
    let result = match cmd.verb {
        Verb::Affine => read_input(cmd).and_then(|t| run_affine(cmd, &t)),
        Verb::Torus => read_input(cmd).and_then(|t| run_torus(cmd, &t)),
        Verb::Schubert => read_input(cmd).and_then(|t| run_schubert(cmd, &t, &mut log)),
        Verb::Verify => run_verify(cmd, &mut log),
    };
    let mut stderr = if cmd.quiet { String::new() } else { log.join("\n") };
    if !stderr.is_empty() {
        stderr.push('\n');
    }
    match result {
        Ok(e) => {
            if !e.passed {
                stderr.push_str("verification failed\n");
            }
            Outcome { exit_code: if e.passed { 0 } else { 1 }, stdout: e.text, stderr }
        }
        Err(err) => {
            stderr.push_str(&format!("error: {err}\n"));
            Outcome { exit_code: err.exit_code(), stdout: String::new(), stderr }
        }
    }
}

fn read_input(cmd: &Command) -> Result<String, CliError> {
    let input = cmd.input.as_deref().ok_or_else(|| CliError::Input("--input is required".into()))?;
    if input.trim_start().starts_with('{') {
        return Ok(input.to_string());
    }
    fs::read_to_string(input).map_err(|e| CliError::Input(format!("cannot read {input}: {e}")))
}

fn run_affine(cmd: &Command, text: &str) -> Result<Emitted, CliError> {
    let spec = AffineSpaceSpec::from_json(text)?;
    if spec.n() > MAX_AFFINE_N {
        return Err(CliError::Input(format!("N = {} exceeds the limit of {MAX_AFFINE_N}", spec.n())));
    }
    let rows = all_stratum_reports(&spec, Execution::Parallel)?;
    let opts = StrataOptions { seed: cmd.seed.unwrap_or(0), ..Default::default() };
    let verification = verify_strata_inequality_with(&spec, &opts)?;
    let passed = verification.passed();
    let record = AffineRecord {
        kind: "affine",
        n: spec.n(),
        q: spec.q_label().map(str::to_owned),
        degree_source: DEGREE_SOURCE,
        rows,
        verification,
    };
    Ok(Emitted { text: record.render(cmd.format), passed })
}

fn run_torus(cmd: &Command, text: &str) -> Result<Emitted, CliError> {
    let spec = TorusSpec::from_json(text)?;
    let centre = center_description(&spec);
    let record = TorusRecord {
        kind: "torus",
        n: spec.n(),
        q: spec.q_label().map(str::to_owned),
        center_rank: centre.rank,
        lattice_basis: centre.lattice_basis.iter().map(|b| b.iter().map(int_value).collect()).collect(),
        degrees: torus_degrees(&spec),
    };
    Ok(Emitted { text: record.render(cmd.format), passed: true })
}

/// Interval entries for `data`, through the cache when one is configured.
fn entries_cached(
    data: &SchubertData,
    cache: &Cache,
    cmd: &Command,
    log: &mut Vec<String>,
) -> Result<Vec<CauchonEntry>, CliError> {
    let label = format!("{} {:?}", data.spec().cartan_type(), data.word().0);
    let key = cache_key(&data.spec().cartan_type().to_string(), &data.word().0);
    if let Some(hit) = cache.lookup(&key).and_then(|c| c.to_entries(data)) {
        log.push(format!("cache hit: {label}"));
        return Ok(hit);
    }
    let opts = EnumerationOptions {
        execution: Execution::Parallel,
        interval_limit: if cmd.force { usize::MAX } else { cmd.max_interval },
    };
    let entries = cauchon_entries_with(data, &opts).map_err(|e| match e {
        hstrata::Error::IntervalTooLarge { limit } => {
            CliError::Input(format!("Bruhat interval exceeds {limit} elements; pass --force to enumerate anyway"))
        }
        other => other.into(),
    })?;
    if cache.dir().is_some() {
        match cache.store(&CacheEntry::from_entries(data, &entries)) {
            Ok(()) => log.push(format!("cache store: {label}")),
            Err(e) => log.push(format!("cache store failed ({e}); continuing")),
        }
    }
    Ok(entries)
}

fn schubert_record(data: &SchubertData, entries: &[CauchonEntry]) -> Result<SchubertRecord, CliError> {
    let exec = Execution::Parallel;
    let agreement = verify_formula_agreement(data, entries, exec)?;
    let inequality = verify_order_inequality(data, entries, exec);
    let monotone = verify_poset_monotone(data, entries, exec);
    let m = data.schubert_matrix();
    let passed = agreement.passed() && inequality.passed() && monotone.passed();
    Ok(SchubertRecord {
        kind: "schubert",
        cartan_type: data.spec().cartan_type().to_string(),
        word: data.word().0.clone(),
        n: data.n(),
        betas: data.betas().iter().map(|b| b.0.clone()).collect(),
        schubert_matrix: (0..m.rows()).map(|r| (0..m.cols()).map(|c| rational_value(m.get(r, c))).collect()).collect(),
        interval_size: entries.len(),
        degree_source: DEGREE_SOURCE,
        rows: degree_table(data, entries),
        formula_agreement: agreement,
        order_inequality: inequality,
        poset_monotone: monotone,
        passed,
    })
}

fn cache_for(cmd: &Command) -> Cache {
    Cache::new(cmd.cache_dir.clone())
}

fn run_schubert(cmd: &Command, text: &str, log: &mut Vec<String>) -> Result<Emitted, CliError> {
    let spec = SchubertSpec::from_json(text)?;
    let data = build_schubert(&spec)?;
    let entries = entries_cached(&data, &cache_for(cmd), cmd, log)?;
    let record = schubert_record(&data, &entries)?;
    Ok(Emitted { text: record.render(cmd.format), passed: record.passed })
}

/// Schubert cases of the built-in suite with their independently known
/// Weyl group orders.
pub const SUITE_SCHUBERT: [(&str, &[usize], usize); 4] = [
    ("A2", &[1, 2, 1], 6),
    ("B2", &[1, 2, 1, 2], 8),
    ("G2", &[1, 2, 1, 2, 1, 2], 12),
    ("A3", &[1, 2, 1, 3, 2, 1], 24),
];

/// Number of random affine specs in the built-in suite.
pub const SUITE_RANDOM_AFFINE: usize = 20;

/// A seeded random skew-symmetric matrix with entries in `-3..=3`.
#[allow(clippy::needless_range_loop)]
pub fn random_skew(rng: &mut impl Rng, n: usize) -> Vec<Vec<i64>> {
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-3..=3);
            rows[i][j] = v;
            rows[j][i] = -v;
        }
    }
    rows
}

fn run_verify(cmd: &Command, log: &mut Vec<String>) -> Result<Emitted, CliError> {
    let seed = cmd.seed.unwrap_or(0);
    let cache = cache_for(cmd);
    let mut cases = Vec::new();

    for (t, word, order) in SUITE_SCHUBERT {
        let ct: CartanType = t.parse()?;
        let rs = RootSystem::new(ct);
        let spec = SchubertSpec::new(ct, hstrata::Word(word.to_vec()))?;
        if spec.word().len() != longest_element(&rs).length() {
            return Err(CliError::Input(format!("suite word for {t} is not the longest element")));
        }
        let data = build_schubert(&spec)?;
        let entries = entries_cached(&data, &cache, cmd, log)?;
        let record = schubert_record(&data, &entries)?;
        let name = format!("{t} w0");
        let count_ok = entries.len() == order;
        cases.push(SuiteCase {
            suite: "cauchon-bijection".into(),
            case: name.clone(),
            checked: entries.len() as u64,
            violations: u64::from(!count_ok),
            passed: count_ok,
        });
        cases.push(SuiteCase {
            suite: "two-formula-agreement".into(),
            case: name.clone(),
            checked: record.formula_agreement.checked as u64,
            violations: record.formula_agreement.mismatches.len() as u64,
            passed: record.formula_agreement.passed(),
        });
        cases.push(SuiteCase {
            suite: "schubert-inequality".into(),
            case: name.clone(),
            checked: record.order_inequality.comparable_pairs as u64,
            violations: record.order_inequality.violations.len() as u64,
            passed: record.order_inequality.passed(),
        });
        cases.push(SuiteCase {
            suite: "inclusion-monotone".into(),
            case: name,
            checked: record.poset_monotone.nested_pairs as u64,
            violations: record.poset_monotone.violations.len() as u64,
            passed: record.poset_monotone.passed(),
        });
    }

    let mut affine: Vec<(String, AffineSpaceSpec)> = vec![
        ("quantum plane".into(), AffineSpaceSpec::from_rows(&[[0, 1], [-1, 0]])?),
        ("circulant N=3".into(), AffineSpaceSpec::from_rows(&[[0, 1, -1], [-1, 0, 1], [1, -1, 0]])?),
        ("commutative N=4".into(), AffineSpaceSpec::commutative(4)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..SUITE_RANDOM_AFFINE {
        let n = rng.gen_range(2..=8);
        affine.push((format!("random #{k} N={n}"), AffineSpaceSpec::from_rows(&random_skew(&mut rng, n))?));
    }
    for (name, spec) in &affine {
        let v = verify_strata_inequality_with(spec, &StrataOptions { seed, ..Default::default() })?;
        cases.push(SuiteCase {
            suite: "affine-inequality".into(),
            case: name.clone(),
            checked: v.pairs_checked,
            violations: v.violations.len() as u64,
            passed: v.passed(),
        });
        let (checked, bad) = torus_consistency(spec)?;
        cases.push(SuiteCase {
            suite: "torus-affine-consistency".into(),
            case: name.clone(),
            checked,
            violations: bad,
            passed: bad == 0,
        });
    }

    let passed = cases.iter().all(|c| c.passed);
    let record = VerifyRecord { kind: "verify", seed, cases, passed };
    Ok(Emitted { text: record.render(cmd.format), passed })
}

/// For every diagram: stratum dimension equals the centre rank of the torus
/// on `A(Δ)`, and has the parity of `N - |Δ|`. Returns (checked, violations).
pub fn torus_consistency(spec: &AffineSpaceSpec) -> Result<(u64, u64), hstrata::Error> {
    let reports = all_stratum_reports(spec, Execution::Parallel)?;
    let mut bad = 0;
    for r in &reports {
        let torus = TorusSpec::localized_stratum(spec, &r.diagram)?;
        let rank = center_rank(&torus);
        if rank != r.stratum_dim || rank % 2 != (spec.n() - r.diagram.len()) % 2 {
            bad += 1;
        }
    }
    Ok((reports.len() as u64, bad))
}
