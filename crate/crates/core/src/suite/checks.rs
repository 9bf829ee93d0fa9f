use std::f64::consts::PI;

use itertools::Itertools;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{rat, rational_to_f64, FirstOrderOperator, MultiPoly, Rational};
use crate::gauss_limit::{
    asymptotics_check, heisenberg_constant, heisenberg_logsob_check, lemma_closed_form, limit_constants,
    projected_inequality_check, sphere_pullback,
};
use crate::geometry::{
    cayley_coords, heisenberg_deltab, heisenberg_deltab_expanded, heisenberg_fields, heisenberg_vars, HeisenbergPoint,
};
use crate::inequalities::{
    beckner_bound_check, dirichlet_form_geometric, dirichlet_form_spectral, gamma_k, gross_check,
    hls_contraction_check, hypercontractive_time, random_gauss_polynomial, rearrangement_check,
    semigroup_contraction_check, verify_theorem21, BandLimitedFunction, ClosureFunction, InequalityReport,
};
use crate::quadrature::{
    derive_seed, integrate_heisenberg_mu, integrate_weighted_rn, seeded_rng, QuadratureKind, QuadratureSpec,
};
use crate::spectra::{
    deltab_eigenvalue, enumerate_ktypes, special_nu_identity, theorem_bound_margin, CaseId, KTypeLabel,
    SpecialNuOutcome,
};

/// One line of every report; the CSV header is the field list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub suite: String,
    pub case: String,
    pub n: Option<u32>,
    pub label: String,
    pub seed: Option<u64>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub std_error: f64,
    pub pass: bool,
}

pub const CSV_HEADER: &str = "suite,case,n,label,seed,lhs,rhs,margin,std_error,pass";

/// `margin ≥ −sigmas·std_error − rel·max(1, rhs)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub sigmas: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn statistical(rel: f64) -> Self {
        Tolerance { sigmas: 3.0, rel }
    }

    pub const fn exact(rel: f64) -> Self {
        Tolerance { sigmas: 0.0, rel }
    }

    pub fn accepts(&self, margin: f64, rhs: f64, std_error: f64) -> bool {
        margin >= -self.sigmas * std_error - self.rel * rhs.max(1.0)
    }
}

impl CheckRow {
    fn new(suite: &str, case: Option<&CaseId>, label: impl Into<String>) -> Self {
        let (case, n) = match case {
            Some(c) => (c.family.to_string(), Some(c.n)),
            None => (String::new(), None),
        };
        CheckRow {
            suite: suite.to_string(),
            case,
            n,
            label: label.into(),
            seed: None,
            lhs: 0.0,
            rhs: 0.0,
            margin: 0.0,
            std_error: 0.0,
            pass: true,
        }
    }

    fn with_n(mut self, n: u32) -> Self {
        self.n = Some(n);
        self
    }

    fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    fn sides(mut self, lhs: f64, rhs: f64, std_error: f64) -> Self {
        self.lhs = lhs;
        self.rhs = rhs;
        self.margin = rhs - lhs;
        self.std_error = std_error;
        self
    }

    fn report(self, r: &InequalityReport, tol: Tolerance) -> Self {
        let mut row = self.sides(r.lhs, r.rhs, r.std_error);
        row.pass = tol.accepts(r.margin, r.rhs, r.std_error);
        row
    }

    /// `|lhs − rhs| ≤ bound`, recorded as `margin = bound − |lhs − rhs|`.
    fn agreement(mut self, lhs: f64, rhs: f64, bound: f64, std_error: f64) -> Self {
        self.lhs = lhs;
        self.rhs = rhs;
        self.margin = bound - (lhs - rhs).abs();
        self.std_error = std_error;
        self.pass = self.margin >= 0.0;
        self
    }
}

/// Seeds of trial `i`: the row seed, and the function and quadrature seeds derived from it.
fn trial_seeds(seed: u64, i: usize) -> (u64, u64, u64) {
    let s = derive_seed(seed, i as u64);
    (s, derive_seed(s, 0), derive_seed(s, 1))
}

/// Per K-type spectral data behind `spectra`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectraRecord {
    pub label: KTypeLabel,
    pub degree: u32,
    pub deltab: i64,
    /// `C·λ − k`, exact.
    pub margin: String,
    pub margin_f64: f64,
    pub in_equality_set: bool,
    pub identity_lhs: Option<String>,
    pub identity_rhs: Option<String>,
    pub identity_holds: Option<bool>,
    #[serde(skip)]
    identity_f64: Option<(f64, f64)>,
    /// Relative gap between the log-gamma and exact octonionic lhs.
    pub log_gamma_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectraRun {
    pub case: CaseId,
    pub max_degree: u32,
    pub records: Vec<SpectraRecord>,
    pub degenerate: Option<String>,
}

pub const LOG_GAMMA_TOL: f64 = 1e-10;

/// Where `C·λ − k` vanishes.
pub fn equality_set_contains(kt: &KTypeLabel) -> bool {
    match *kt {
        KTypeLabel::Real { k } => k <= 1,
        KTypeLabel::Complex { p, q } => p * q == 0,
        KTypeLabel::Quaternionic { p, q } => p == q,
        KTypeLabel::Octonionic { big_n, j } => big_n == j,
    }
}

pub fn spectra_run(case: &CaseId, max_degree: u32) -> Result<SpectraRun> {
    let mut records = Vec::new();
    let mut degenerate = None;
    for kt in enumerate_ktypes(case, max_degree) {
        let m = theorem_bound_margin(case, &kt)?;
        let mut rec = SpectraRecord {
            label: kt,
            degree: kt.degree(),
            deltab: deltab_eigenvalue(case, &kt)?,
            margin: m.to_string(),
            margin_f64: rational_to_f64(&m),
            in_equality_set: equality_set_contains(&kt),
            identity_lhs: None,
            identity_rhs: None,
            identity_holds: None,
            identity_f64: None,
            log_gamma_residual: None,
        };
        match special_nu_identity(case, &kt)? {
            SpecialNuOutcome::Identity(id) => {
                rec.identity_holds = Some(id.holds());
                rec.log_gamma_residual = id.lhs_log_gamma.map(|lg| {
                    let exact = rational_to_f64(&id.lhs);
                    (lg - exact).abs() / exact.abs().max(1.0)
                });
                rec.identity_f64 = Some((rational_to_f64(&id.lhs), rational_to_f64(&id.rhs)));
                rec.identity_lhs = Some(id.lhs.to_string());
                rec.identity_rhs = Some(id.rhs.to_string());
            }
            SpecialNuOutcome::Degenerate { reason } => {
                degenerate.get_or_insert(reason);
            }
        }
        records.push(rec);
    }
    Ok(SpectraRun {
        case: *case,
        max_degree,
        records,
        degenerate,
    })
}

impl SpectraRecord {
    pub fn bound_ok(&self) -> bool {
        self.margin_f64 >= 0.0 && (self.margin_f64 == 0.0) == self.in_equality_set
    }

    pub fn identity_ok(&self) -> bool {
        self.identity_holds != Some(false) && self.log_gamma_residual.is_none_or(|r| r <= LOG_GAMMA_TOL)
    }
}

impl SpectraRun {
    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.bound_ok() && r.identity_ok())
    }

    pub fn rows(&self) -> Vec<CheckRow> {
        let c = rational_to_f64(&self.case.sharp_constant());
        let mut out = Vec::with_capacity(2 * self.records.len());
        for r in &self.records {
            let label = r.label.to_string();
            let mut b = CheckRow::new("bound", Some(&self.case), label.clone()).sides(
                r.degree as f64,
                c * r.deltab as f64,
                0.0,
            );
            b.margin = r.margin_f64;
            b.pass = r.bound_ok();
            out.push(b);
            if let Some((l, rh)) = r.identity_f64 {
                let mut i = CheckRow::new("identity", Some(&self.case), label).sides(l, rh, 0.0);
                if let Some(res) = r.log_gamma_residual {
                    i.std_error = res;
                }
                i.pass = r.identity_ok();
                out.push(i);
            }
        }
        out
    }
}

/// Default degree cap of the random band-limited functions.
pub const RANDOM_DEGREE: u32 = 3;

fn mc(samples: usize, seed: u64) -> QuadratureSpec {
    QuadratureSpec::monte_carlo(samples, seed)
}

/// Theorem rows for `trials` random functions, preceded by a constant function that must give
/// equality to `1e−12`.
pub fn theorem21_rows(case: &CaseId, trials: usize, samples: usize, seed: u64, tol: Tolerance) -> Result<Vec<CheckRow>> {
    let mut out = Vec::with_capacity(trials + 1);
    let one = BandLimitedFunction::constant(*case, 2.5)?;
    let r = verify_theorem21(&one, &mc(samples.min(1000), seed))?;
    let mut row = CheckRow::new("theorem21", Some(case), "constant").with_seed(seed).report(&r, tol);
    row.pass = r.margin.abs() <= 1e-12;
    out.push(row);
    for i in 0..trials {
        let (s, fs, qs) = trial_seeds(seed, i);
        let f = BandLimitedFunction::random(*case, RANDOM_DEGREE, fs)?;
        let r = verify_theorem21(&f, &mc(samples, qs))?;
        out.push(CheckRow::new("theorem21", Some(case), format!("trial {i}")).with_seed(s).report(&r, tol));
    }
    Ok(out)
}

pub fn beckner_rows(case: &CaseId, trials: usize, samples: usize, seed: u64, tol: Tolerance) -> Result<Vec<CheckRow>> {
    let mut out = Vec::with_capacity(trials);
    for i in 0..trials {
        let (s, fs, qs) = trial_seeds(seed, i);
        let f = BandLimitedFunction::random(*case, RANDOM_DEGREE, fs)?;
        let r = beckner_bound_check(&f, &mc(samples, qs))?;
        out.push(CheckRow::new("beckner", Some(case), format!("trial {i}")).with_seed(s).report(&r, tol));
    }
    Ok(out)
}

/// Geometric (sampled) against spectral (exact) Dirichlet form; a row passes when the two agree
/// within `sigmas` standard errors.
pub fn dirichlet_rows(case: &CaseId, trials: usize, samples: usize, seed: u64, sigmas: f64) -> Result<Vec<CheckRow>> {
    let mut out = Vec::with_capacity(trials);
    for i in 0..trials {
        let (s, fs, qs) = trial_seeds(seed, i);
        let f = BandLimitedFunction::random(*case, RANDOM_DEGREE, fs)?;
        let g = dirichlet_form_geometric(&f, &mc(samples, qs))?;
        let sp = dirichlet_form_spectral(&f)?;
        let bound = sigmas * g.std_error + 1e-12 * sp.abs().max(1.0);
        out.push(
            CheckRow::new("dirichlet", Some(case), format!("trial {i}"))
                .with_seed(s)
                .agreement(g.value, sp, bound, g.std_error),
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaGrid {
    /// `m ≤ 3`, integer `N ≤ 6`, `|x|² ∈ {0, ½, 2, 4}`, `n = 3`.
    Small,
    /// Adds half-integer `N` and `n ∈ {1, 3, 10}`.
    Full,
}

pub const LEMMA_TOL: f64 = 1e-8;

/// Closed form of the `y`-integral against adaptive radial quadrature.
pub fn lemma_rows(grid: LemmaGrid) -> Result<Vec<CheckRow>> {
    let ar = QuadratureSpec::new(QuadratureKind::AdaptiveRadial, 6, 0)?;
    let (big_ns, ns): (Vec<f64>, Vec<f64>) = match grid {
        LemmaGrid::Small => ((1..=6).map(f64::from).collect(), vec![3.0]),
        LemmaGrid::Full => ((2..=12).map(|h| h as f64 / 2.0).collect(), vec![1.0, 3.0, 10.0]),
    };
    let mut out = Vec::new();
    for m in 1..=3u32 {
        for &big_n in &big_ns {
            if 2.0 * big_n <= m as f64 {
                continue;
            }
            for &n in &ns {
                for x2 in [0.0, 0.5, 2.0, 4.0] {
                    let want = lemma_closed_form(m, big_n, n, x2)?;
                    let q = integrate_weighted_rn(m as usize, n + x2, -big_n, &|_: &[f64]| 1.0, &ar)?.value
                        * ((n + x2) / n).powf(-big_n);
                    let label = format!("m={m} N={big_n} n={n} x2={x2}");
                    out.push(CheckRow::new("lemma", None, label).agreement(
                        want,
                        q,
                        LEMMA_TOL * (1.0 + want.abs()),
                        0.0,
                    ));
                }
            }
        }
    }
    Ok(out)
}

pub const NORMALIZATION_TOL: f64 = 5e-3;

/// Quadrature masses times the normalizing constants, each within `0.5%` of one.
pub fn constants_rows(max_n: u32) -> Result<Vec<CheckRow>> {
    // the integrands are radial, so one angular node per axis is exact
    let ar = QuadratureSpec::new(QuadratureKind::AdaptiveRadial, 1, 0)?;
    let mut out = Vec::new();
    let one = |_: &[f64]| 1.0;
    for n in 1..=max_n {
        let nf = n as f64;
        let mass = integrate_weighted_rn(n as usize, nf, -nf, &one, &ar)?.value;
        let ln_c = -0.5 * nf * (nf * PI).ln() + ln_gamma(nf)? - ln_gamma(0.5 * nf)?;
        let v = mass * ln_c.exp();
        out.push(CheckRow::new("constants", None, "c_prime").with_n(n).agreement(v, 1.0, NORMALIZATION_TOL, 0.0));
    }
    for n in 3..=max_n {
        for k in 1..=3u32 {
            if k >= n || n + k < 5 {
                continue;
            }
            let c = limit_constants(n, k)?;
            let e = -(n as f64 + k as f64) / 2.0;
            let m = integrate_weighted_rn(k as usize, n as f64, e, &one, &ar)?.value;
            let row = CheckRow::new("constants", None, format!("d_prime k={k}")).with_n(n);
            out.push(row.agreement(m * c.d_prime(), 1.0, NORMALIZATION_TOL, 0.0));
        }
    }
    for n in 1..=max_n {
        let m = integrate_heisenberg_mu(n as usize, &one, &ar)?.value;
        let v = m * heisenberg_constant(n)?;
        out.push(CheckRow::new("constants", None, "heisenberg_c_prime").with_n(n).agreement(
            v,
            1.0,
            NORMALIZATION_TOL,
            0.0,
        ));
    }
    Ok(out)
}

fn ln_gamma(x: f64) -> Result<f64> {
    crate::spectra::log_gamma(x)
}

pub const ASYMPTOTICS_TOL: f64 = 1e-4;

/// `d′(2π)^{k/2} − 1` and `(d̃′/4)(2π)^{k/2} − 1` along `n_list`: the last `n` must be within
/// `1e−4`, and the deviations must shrink in absolute value along the list.
pub fn asymptotics_rows(ks: &[u32], n_list: &[u32]) -> Result<Vec<CheckRow>> {
    let mut out = Vec::new();
    for &k in ks {
        let t = asymptotics_check(k, n_list)?;
        let mut prev: Option<(f64, f64)> = None;
        for (i, r) in t.rows.iter().enumerate() {
            let last = i + 1 == t.rows.len();
            let (a, b) = (r.d_prime_deviation.abs(), r.d_tilde_prime_deviation.abs());
            for (name, v, pv) in [("d_prime", a, prev.map(|p| p.0)), ("d_tilde_prime", b, prev.map(|p| p.1))] {
                // k = 2 zeroes the first column up to rounding
                let bound = if last { ASYMPTOTICS_TOL } else { pv.unwrap_or(1.0).max(1e-9) };
                let mut row = CheckRow::new("asymptotics", None, format!("{name} k={k}")).with_n(r.n);
                row = row.sides(v, bound, 0.0);
                row.pass = v <= bound;
                out.push(row);
            }
            prev = Some((a, b));
        }
    }
    Ok(out)
}

pub const GROSS_TOL: f64 = 1e-6;

/// Random polynomials of degree `≤ 3` on ℝᵏ, `k ≤ 3`, with tensor Gauss–Hermite quadrature.
pub fn gross_rows(trials: usize, seed: u64, nodes: usize) -> Result<Vec<CheckRow>> {
    let mut out = Vec::with_capacity(trials);
    for i in 0..trials {
        let (s, fs, _) = trial_seeds(seed, i);
        let k = 1 + i % 3;
        let degree = 1 + (i / 3) as u32 % 3;
        let f = random_gauss_polynomial(k, degree, fs)?;
        let spec = QuadratureSpec::new(QuadratureKind::GaussHermite, nodes, 0)?;
        let r = gross_check(&f, &spec)?;
        let mut row = CheckRow::new("gross", None, format!("k={k} degree={degree}")).with_n(k as u32).with_seed(s);
        row = row.sides(r.lhs, r.rhs, r.std_error);
        row.pass = r.margin >= -GROSS_TOL;
        out.push(row);
    }
    Ok(out)
}

/// Projected sphere margins for `1 + x/5` on ℝ against the Gross margin; the gap must shrink
/// along `n_list` and end below `5%` of the Gross Dirichlet term.
pub fn projected_rows(n_list: &[u32]) -> Result<Vec<CheckRow>> {
    let f = ClosureFunction { k: 1, f: |x: &[f64]| 1.0 + 0.2 * x[0] };
    let g = gross_check(&f, &QuadratureSpec::new(QuadratureKind::GaussHermite, 60, 0)?)?;
    let ar = QuadratureSpec::new(QuadratureKind::AdaptiveRadial, 4, 0)?;
    let mut out = Vec::with_capacity(n_list.len());
    let mut prev = f64::INFINITY;
    for (i, &n) in n_list.iter().enumerate() {
        let r = projected_inequality_check(1, n, &f, &ar)?;
        let gap = (r.margin - g.margin).abs();
        let last = i + 1 == n_list.len();
        let bound = if last { 0.05 * g.rhs } else { prev };
        let mut row = CheckRow::new("projected", None, "1+x/5").with_n(n).sides(gap, bound, 0.0);
        row.pass = r.margin >= 0.0 && gap < bound;
        out.push(row);
        prev = gap;
    }
    Ok(out)
}

/// Semigroup contraction `L^q → L^p` at time `t` on random functions.
#[allow(clippy::too_many_arguments)]
pub fn semigroup_rows(
    case: &CaseId,
    q: f64,
    p: f64,
    t: f64,
    trials: usize,
    samples: usize,
    seed: u64,
    tol: Tolerance,
) -> Result<Vec<CheckRow>> {
    let mut out = Vec::with_capacity(trials);
    for i in 0..trials {
        let (s, fs, qs) = trial_seeds(seed, i);
        let f = BandLimitedFunction::random(*case, RANDOM_DEGREE, fs)?;
        let r = semigroup_contraction_check(&f, t, q, p, &mc(samples, qs))?;
        out.push(CheckRow::new("semigroup", Some(case), format!("trial {i} t={t}")).with_seed(s).report(&r, tol));
    }
    Ok(out)
}

/// Log-Sobolev on the Heisenberg group for Cayley pullbacks of real parts of random functions on
/// S^{2n+1}; the entropy is sampled, the norm and gradient terms use the adaptive rule.
pub fn heisenberg_rows(n: u32, trials: usize, samples: usize, seed: u64, tol: Tolerance) -> Result<Vec<CheckRow>> {
    let case = CaseId::new(crate::spectra::Family::Complex, n)?;
    let mut out = Vec::with_capacity(trials);
    for i in 0..trials {
        let (s, fs, qs) = trial_seeds(seed, i);
        let g = BandLimitedFunction::random(case, 2, fs)?;
        let f = sphere_pullback(n as usize, |x: &[f64]| g.eval(x).re);
        let r = heisenberg_logsob_check(n as usize, &f, &mc(samples, qs))?;
        out.push(CheckRow::new("heisenberg", Some(&case), format!("trial {i}")).with_seed(s).report(&r, tol));
    }
    Ok(out)
}

/// `1 + ε x₁` on S² at fractions of the `2 → 4` threshold, with an exact product rule.
/// A row passes when the contraction fails, exhibiting the threshold as sharp.
pub fn semigroup_scan_rows(eps: f64, fractions: &[f64]) -> Result<Vec<CheckRow>> {
    let case = CaseId::real(2);
    let c = rational_to_f64(&case.sharp_constant());
    let t0 = hypercontractive_time(c, 2.0, 4.0);
    let linear = BandLimitedFunction::random(case, 1, 0)?;
    let (one, lin) = (linear.components()[0].clone(), linear.components()[1].clone());
    let f = BandLimitedFunction::from_parts_unchecked(
        case,
        vec![
            (one.label, one.harmonic.clone(), 1.0 / one.harmonic_norm2().sqrt()),
            (lin.label, lin.harmonic.clone(), eps / lin.harmonic_norm2().sqrt()),
        ],
    )?;
    let spec = QuadratureSpec::new(QuadratureKind::SphereProductRule, 8, 0)?;
    let mut out = Vec::with_capacity(fractions.len());
    for &fr in fractions {
        let t = fr * t0;
        let r = semigroup_contraction_check(&f, t, 2.0, 4.0, &spec)?;
        let mut row = CheckRow::new("semigroup-scan", Some(&case), format!("t={fr}*t0")).sides(r.lhs, r.rhs, 0.0);
        row.pass = r.margin < -1e-12;
        out.push(row);
    }
    Ok(out)
}

/// `γ₀ = 1` and strict decrease of `γ_k` in `k`.
pub fn gamma_rows(max_n: u32, max_k: u32) -> Result<Vec<CheckRow>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for p in [1.25, 1.5, 1.75] {
            let g0 = gamma_k(n, p, 0)?;
            let mut row = CheckRow::new("gamma", None, format!("p={p} gamma_0")).with_n(n).sides(g0, 1.0, 0.0);
            row.pass = g0 == 1.0;
            out.push(row);
            let mut worst = f64::NEG_INFINITY;
            let mut prev = g0;
            for k in 1..=max_k {
                let g = gamma_k(n, p, k)?;
                worst = worst.max(g - prev);
                prev = g;
            }
            // lhs: the largest step γ_{k+1} − γ_k, which must be negative
            let mut row = CheckRow::new("gamma", None, format!("p={p} decreasing")).with_n(n).sides(worst, 0.0, 0.0);
            row.pass = worst < 0.0;
            out.push(row);
        }
    }
    Ok(out)
}

/// `Q ≤ Q*` on random pairs, of length `length` or uniform in `1..=20`.
pub fn rearrangement_rows(trials: usize, length: Option<usize>, seed: u64) -> Result<Vec<CheckRow>> {
    let mut rng = seeded_rng(seed);
    let mut out = Vec::with_capacity(trials);
    for i in 0..trials {
        let len = length.unwrap_or_else(|| rng.random_range(1..=20));
        let a: Vec<f64> = (0..len).map(|_| rng.random::<f64>()).collect();
        let b: Vec<f64> = (0..len).map(|_| rng.random::<f64>()).collect();
        let (q, qs) = rearrangement_check(&a, &b)?;
        let mut row = CheckRow::new("rearrangement", None, format!("pair {i} len={len}")).with_seed(seed).sides(q, qs, 0.0);
        row.pass = qs >= q - 1e-12 * qs.max(1.0);
        out.push(row);
    }
    Ok(out)
}

/// `Q*` equals the maximum of `Σ aᵢ b_σ(i)` over all permutations, `pairs` pairs per length.
pub fn rearrangement_exhaustive_rows(max_len: usize, pairs: usize, seed: u64) -> Result<Vec<CheckRow>> {
    if max_len > 10 {
        return Err(Error::domain(format!("exhaustive search needs length <= 10, got {max_len}")));
    }
    let mut rng = seeded_rng(seed);
    let mut out = Vec::new();
    for len in 1..=max_len {
        for i in 0..pairs {
            let a: Vec<f64> = (0..len).map(|_| rng.random::<f64>()).collect();
            let b: Vec<f64> = (0..len).map(|_| rng.random::<f64>()).collect();
            let (_, qs) = rearrangement_check(&a, &b)?;
            let best = (0..len)
                .permutations(len)
                .map(|s| s.iter().enumerate().map(|(j, &k)| a[j] * b[k]).sum::<f64>())
                .fold(f64::NEG_INFINITY, f64::max);
            let row = CheckRow::new("rearrangement-exhaustive", None, format!("len={len} pair {i}")).with_seed(seed);
            out.push(row.agreement(best, qs, 1e-12 * qs.max(1.0), 0.0));
        }
    }
    Ok(out)
}

pub fn hls_rows(case: &CaseId, p: f64, trials: usize, samples: usize, seed: u64, tol: Tolerance) -> Result<Vec<CheckRow>> {
    let mut out = Vec::with_capacity(trials);
    for i in 0..trials {
        let (s, fs, qs) = trial_seeds(seed, i);
        let f = BandLimitedFunction::random(*case, RANDOM_DEGREE, fs)?;
        let r = hls_contraction_check(&f, p, &mc(samples, qs))?;
        out.push(CheckRow::new("hls", Some(case), format!("trial {i} p={p}")).with_seed(s).report(&r, tol));
    }
    Ok(out)
}

fn random_heisenberg_poly<R: Rng>(rng: &mut R, n: usize, degree: u32, terms: usize) -> Result<MultiPoly<Rational>> {
    let vars = heisenberg_vars(n);
    let mut ts = Vec::with_capacity(terms);
    for _ in 0..terms {
        let mut e = vec![0u32; vars.len()];
        for _ in 0..rng.random_range(0..=degree) {
            e[rng.random_range(0..vars.len())] += 1;
        }
        ts.push((e, rat(rng.random_range(-9i64..=9), rng.random_range(1i64..=5))));
    }
    MultiPoly::from_terms(&vars, ts)
}

/// Both forms of `Δ_b` on random polynomials, exact; rows count nonzero terms of the difference.
pub fn heisenberg_deltab_rows(trials: usize, seed: u64) -> Result<Vec<CheckRow>> {
    let mut rng = seeded_rng(seed);
    let mut out = Vec::with_capacity(trials);
    for i in 0..trials {
        let n = 1 + i % 3;
        let f = random_heisenberg_poly(&mut rng, n, 5, 8)?;
        let d = heisenberg_deltab(&f, n)?.try_sub(&heisenberg_deltab_expanded(&f, n)?)?;
        let mut row = CheckRow::new("heisenberg-deltab", None, format!("poly {i}"))
            .with_n(n as u32)
            .with_seed(seed)
            .sides(d.num_terms() as f64, 0.0, 0.0);
        row.pass = d.is_zero();
        out.push(row);
    }
    Ok(out)
}

/// `[X_j, Y_j] = −4∂t` and every other bracket of the frame vanishes.
pub fn heisenberg_commutator_rows(max_n: usize) -> Result<Vec<CheckRow>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let f = heisenberg_fields(n)?;
        let vars = heisenberg_vars(n);
        let dt = FirstOrderOperator::<Rational>::partial(&vars, "t")?;
        let all: Vec<_> = f.x.iter().chain(&f.y).collect();
        let mut bad = 0usize;
        for (a, va) in all.iter().enumerate() {
            for (b, vb) in all.iter().enumerate() {
                let c = va.commutator(vb)?;
                let factor = if b == a + n && a < n {
                    -4
                } else if a == b + n && b < n {
                    4
                } else {
                    0
                };
                if c != dt.scale(&rat(factor, 1)) {
                    bad += 1;
                }
            }
        }
        let mut row = CheckRow::new("heisenberg-commutator", None, "[X_j,Y_j]=-4d/dt").with_n(n as u32);
        row = row.sides(bad as f64, 0.0, 0.0);
        row.pass = bad == 0;
        out.push(row);
    }
    Ok(out)
}

pub const CAYLEY_TOL: f64 = 1e-12;

/// Largest `| |C(h)|² − 1 |` over random points, per `n`.
pub fn cayley_rows(max_n: usize, points: usize, seed: u64) -> Result<Vec<CheckRow>> {
    let mut rng = seeded_rng(seed);
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut worst = 0.0f64;
        for _ in 0..points {
            let scale = 10f64.powf(rng.random_range(-2.0..3.0));
            let z = (0..n)
                .map(|_| num_complex::Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * scale)
                .collect();
            let h = HeisenbergPoint::new(z, rng.random_range(-1.0..1.0) * scale * scale);
            let s: f64 = cayley_coords(&h).iter().map(|v| v * v).sum();
            worst = worst.max((s - 1.0).abs());
        }
        let row = CheckRow::new("cayley", None, format!("{points} points")).with_n(n as u32).with_seed(seed);
        out.push(row.agreement(worst, 0.0, CAYLEY_TOL, 0.0));
    }
    Ok(out)
}
