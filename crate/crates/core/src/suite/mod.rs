//! The acceptance suite: ten criteria, each a set of rows with a pass/fail verdict.
//!
//! Every criterion is deterministic given [`SuiteConfig`]; runtimes are kept out of the rows.

mod checks;

use std::time::Instant;

use serde::Serialize;

pub use checks::*;

use crate::error::Result;
use crate::quadrature::derive_seed;
use crate::spectra::CaseId;

pub const DEFAULT_SEED: u64 = 20_160_418;

/// Seed and optional overrides of the trial and sample counts of the statistical criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: Option<usize>,
    pub samples: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            trials: None,
            samples: None,
        }
    }
}

impl SuiteConfig {
    fn trials(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    fn samples(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    fn seed_for(&self, id: u8) -> u64 {
        derive_seed(self.seed, id as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub summary: String,
    /// Set when a computation failed rather than a check.
    pub error: Option<String>,
    pub rows: Vec<CheckRow>,
    #[serde(skip)]
    pub seconds: f64,
}

type Verdict = (bool, String, Vec<CheckRow>);

struct Criterion {
    id: u8,
    name: &'static str,
    run: fn(&SuiteConfig) -> Result<Verdict>,
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "exact spectral identities", run: spectral_identities },
    Criterion { id: 2, name: "sharp-constant margins", run: bound_margins },
    Criterion { id: 3, name: "log-Sobolev on the four spheres", run: theorem_functional },
    Criterion { id: 4, name: "spectral vs geometric Dirichlet form", run: dirichlet_cross },
    Criterion { id: 5, name: "lemma closed form", run: lemma_grid },
    Criterion { id: 6, name: "normalizations and asymptotics", run: constants_asymptotics },
    Criterion { id: 7, name: "Gross inequality and projected limit", run: gross_limit },
    Criterion { id: 8, name: "hypercontractivity on S^2", run: hypercontractivity },
    Criterion { id: 9, name: "HLS multipliers, rearrangement, contraction", run: hls_appendix },
    Criterion { id: 10, name: "exact Heisenberg identities", run: heisenberg_exact },
];

pub fn criterion_names() -> Vec<(u8, &'static str)> {
    CRITERIA.iter().map(|c| (c.id, c.name)).collect()
}

pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> Option<CriterionOutcome> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let out = match (c.run)(cfg) {
        Ok((pass, summary, rows)) => CriterionOutcome {
            id: c.id,
            name: c.name,
            pass,
            summary,
            error: None,
            rows,
            seconds: 0.0,
        },
        Err(e) => CriterionOutcome {
            id: c.id,
            name: c.name,
            pass: false,
            summary: "computation failed".into(),
            error: Some(e.to_string()),
            rows: Vec::new(),
            seconds: 0.0,
        },
    };
    Some(CriterionOutcome {
        seconds: start.elapsed().as_secs_f64(),
        ..out
    })
}

pub fn run_all(cfg: &SuiteConfig) -> Vec<CriterionOutcome> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.id, cfg)).collect()
}

fn count_failed(rows: &[CheckRow]) -> usize {
    rows.iter().filter(|r| !r.pass).count()
}

fn all_pass(rows: Vec<CheckRow>, what: &str) -> Verdict {
    let bad = count_failed(&rows);
    (bad == 0, format!("{} {what}, {bad} failed", rows.len()), rows)
}

pub const SPECTRAL_DEGREE: u32 = 100;

fn spectral_cases() -> Vec<CaseId> {
    let mut v: Vec<CaseId> = (2..=10).map(CaseId::real).collect();
    v.extend((1..=3).map(CaseId::complex));
    v.extend((1..=2).map(CaseId::quaternionic));
    v.push(CaseId::octonionic());
    v
}

fn spectral_identities(_: &SuiteConfig) -> Result<Verdict> {
    let mut rows = Vec::new();
    // real n = 2 has a vanishing normalization and no identity
    for case in spectral_cases().iter().filter(|c| **c != CaseId::real(2)) {
        let run = spectra_run(case, SPECTRAL_DEGREE)?;
        rows.extend(run.rows().into_iter().filter(|r| r.suite == "identity"));
    }
    Ok(all_pass(rows, "identities"))
}

fn bound_margins(_: &SuiteConfig) -> Result<Verdict> {
    let mut rows = Vec::new();
    for case in spectral_cases() {
        let run = spectra_run(&case, SPECTRAL_DEGREE)?;
        rows.extend(run.rows().into_iter().filter(|r| r.suite == "bound"));
    }
    Ok(all_pass(rows, "K-types"))
}

fn theorem_functional(cfg: &SuiteConfig) -> Result<Verdict> {
    let seed = cfg.seed_for(3);
    let (trials, samples) = (cfg.trials(100), cfg.samples(200_000));
    let mut rows = Vec::new();
    let cases = [CaseId::real(2), CaseId::complex(1), CaseId::quaternionic(1), CaseId::octonionic()];
    for (i, case) in cases.iter().enumerate() {
        rows.extend(theorem21_rows(case, trials, samples, derive_seed(seed, i as u64), Tolerance::statistical(1e-12))?);
    }
    Ok(all_pass(rows, "functions"))
}

pub const DIRICHLET_AGREEMENT: f64 = 0.95;

fn dirichlet_cross(cfg: &SuiteConfig) -> Result<Verdict> {
    let seed = cfg.seed_for(4);
    let (trials, samples) = (cfg.trials(200), cfg.samples(20_000));
    let mut rows = Vec::new();
    for n in 1..=2 {
        rows.extend(dirichlet_rows(&CaseId::complex(n), trials, samples, derive_seed(seed, n as u64), 3.0)?);
    }
    let ok = rows.len() - count_failed(&rows);
    let frac = ok as f64 / rows.len().max(1) as f64;
    let summary = format!("{ok}/{} within 3 sigma ({:.1}%)", rows.len(), 100.0 * frac);
    Ok((frac >= DIRICHLET_AGREEMENT, summary, rows))
}

fn lemma_grid(_: &SuiteConfig) -> Result<Verdict> {
    Ok(all_pass(lemma_rows(LemmaGrid::Small)?, "grid points"))
}

pub const ASYMPTOTIC_NS: [u32; 6] = [10, 100, 1000, 10_000, 100_000, 1_000_000];

fn constants_asymptotics(_: &SuiteConfig) -> Result<Verdict> {
    let mut rows = constants_rows(8)?;
    rows.extend(asymptotics_rows(&[1, 2, 3], &ASYMPTOTIC_NS)?);
    Ok(all_pass(rows, "constants"))
}

fn gross_limit(cfg: &SuiteConfig) -> Result<Verdict> {
    let mut rows = gross_rows(cfg.trials(100), cfg.seed_for(7), 30)?;
    rows.extend(projected_rows(&[20, 100, 500])?);
    Ok(all_pass(rows, "checks"))
}

pub const SCAN_FRACTIONS: [f64; 4] = [0.25, 0.5, 0.75, 0.9];

fn hypercontractivity(cfg: &SuiteConfig) -> Result<Verdict> {
    let t = 3f64.ln() / 4.0;
    let case = CaseId::real(2);
    let tol = Tolerance::statistical(1e-12);
    let rows = semigroup_rows(&case, 2.0, 4.0, t, cfg.trials(50), cfg.samples(100_000), cfg.seed_for(8), tol)?;
    let bad = count_failed(&rows);
    let scan = semigroup_scan_rows(0.1, &SCAN_FRACTIONS)?;
    let violations = scan.iter().filter(|r| r.pass).count();
    let summary = format!(
        "{} functions at t = log(3)/4, {bad} failed; {violations}/{} sub-threshold times violate",
        rows.len(),
        scan.len()
    );
    let mut all = rows;
    all.extend(scan);
    Ok((bad == 0 && violations > 0, summary, all))
}

fn hls_appendix(cfg: &SuiteConfig) -> Result<Verdict> {
    let seed = cfg.seed_for(9);
    let mut rows = gamma_rows(8, 60)?;
    rows.extend(rearrangement_rows(10_000, None, derive_seed(seed, 0))?);
    rows.extend(rearrangement_exhaustive_rows(8, 3, derive_seed(seed, 1))?);
    rows.extend(hls_rows(
        &CaseId::real(3),
        1.5,
        cfg.trials(100),
        cfg.samples(50_000),
        derive_seed(seed, 2),
        Tolerance::statistical(1e-12),
    )?);
    Ok(all_pass(rows, "checks"))
}

fn heisenberg_exact(cfg: &SuiteConfig) -> Result<Verdict> {
    let seed = cfg.seed_for(10);
    let mut rows = heisenberg_deltab_rows(100, derive_seed(seed, 0))?;
    rows.extend(heisenberg_commutator_rows(3)?);
    rows.extend(cayley_rows(3, 1000, derive_seed(seed, 1))?);
    Ok(all_pass(rows, "checks"))
}
