use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::case::{enumerate_ktypes, CaseId, Family, KTypeLabel};
use super::gamma::ln_gamma_signed;
use crate::error::{Error, Result};
use crate::exactpoly::{rat, rat_int, rational_to_f64, Rational};

/// A parameter value that is either an exact rational or a plain float.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Approx(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => rational_to_f64(q),
            Scalar::Approx(x) => *x,
        }
    }

    fn as_integer(&self) -> Option<i64> {
        match self {
            Scalar::Exact(q) if q.is_integer() => q.to_integer().to_i64(),
            Scalar::Approx(x) if x.fract() == 0.0 && x.abs() < 1e15 => Some(*x as i64),
            _ => None,
        }
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Exact(q)
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Approx(x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Approx(x) => write!(f, "{x}"),
        }
    }
}

/// Spectral parameter. The octonionic formula is written in `r`, related by `ν = 11 − r`.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralParam {
    Nu(Scalar),
    R(Scalar),
}

impl SpectralParam {
    pub fn nu(q: Rational) -> Self {
        SpectralParam::Nu(Scalar::Exact(q))
    }

    pub fn r(q: Rational) -> Self {
        SpectralParam::R(Scalar::Exact(q))
    }

    fn to_nu(&self, case: &CaseId) -> Result<Scalar> {
        match self {
            SpectralParam::Nu(s) => Ok(s.clone()),
            SpectralParam::R(_) if case.family != Family::Octonionic => Err(Error::domain(
                "the r parameter is only defined for the octonionic case",
            )),
            SpectralParam::R(s) => Ok(shift_11(s)),
        }
    }

    fn to_r(&self) -> Scalar {
        match self {
            SpectralParam::R(s) => s.clone(),
            SpectralParam::Nu(s) => shift_11(s),
        }
    }
}

fn shift_11(s: &Scalar) -> Scalar {
    match s {
        Scalar::Exact(q) => Scalar::Exact(rat_int(11) - q),
        Scalar::Approx(x) => Scalar::Approx(11.0 - x),
    }
}

impl fmt::Display for SpectralParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralParam::Nu(s) => write!(f, "nu={s}"),
            SpectralParam::R(s) => write!(f, "r={s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ExactProduct,
    GammaTelescoped,
    FloatProduct,
    LogGamma,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralValue {
    pub exact: Option<Rational>,
    pub approx: f64,
    pub provenance: Provenance,
}

impl SpectralValue {
    fn exact(q: Rational, provenance: Provenance) -> Self {
        SpectralValue {
            approx: rational_to_f64(&q),
            exact: Some(q),
            provenance,
        }
    }

    fn approx(x: f64, provenance: Provenance) -> Self {
        SpectralValue {
            exact: None,
            approx: x,
            provenance,
        }
    }
}

// A factor (c − ν)/(ν + d).
struct Factor {
    c: Rational,
    d: Rational,
}

fn classical_factors(case: &CaseId, kt: &KTypeLabel) -> Vec<Factor> {
    let n = case.n as i64;
    let mut out = Vec::new();
    let mut push_run = |count: u32, c0: i64, step: i64, d0: i64| {
        for j in 1..=count as i64 {
            out.push(Factor {
                c: rat_int(c0 + step * j),
                d: rat_int(d0 + step * j),
            });
        }
    };
    match *kt {
        KTypeLabel::Real { k } => push_run(k, n - 1, 1, -1),
        KTypeLabel::Complex { p, q } => {
            push_run(p, 2 * n, 2, -2);
            push_run(q, 2 * n, 2, -2);
        }
        KTypeLabel::Quaternionic { .. } => {
            let (r, s) = kt.quaternionic_rs().expect("quaternionic label");
            push_run(r, 4 * n + 2, 2, -4);
            push_run(s, 4 * n + 4, 2, -2);
        }
        KTypeLabel::Octonionic { .. } => unreachable!("octonionic uses the Gamma form"),
    }
    out
}

fn pole_error(what: String) -> Error {
    Error::Pole { factor: what }
}

fn classical_eigenvalue(case: &CaseId, kt: &KTypeLabel, nu: &Scalar) -> Result<SpectralValue> {
    let factors = classical_factors(case, kt);
    match nu {
        Scalar::Exact(nu) => {
            let mut acc = Rational::one();
            for f in &factors {
                let den = nu + &f.d;
                if den.is_zero() {
                    return Err(pole_error(format!("(nu + {}) vanishes at nu = {nu}", f.d)));
                }
                acc *= (&f.c - nu) / den;
            }
            Ok(SpectralValue::exact(acc, Provenance::ExactProduct))
        }
        Scalar::Approx(nu) => {
            let mut acc = 1.0;
            for f in &factors {
                let d = rational_to_f64(&f.d);
                let den = nu + d;
                if den == 0.0 {
                    return Err(pole_error(format!("(nu + {d}) vanishes at nu = {nu}")));
                }
                acc *= (rational_to_f64(&f.c) - nu) / den;
            }
            Ok(SpectralValue::approx(acc, Provenance::FloatProduct))
        }
    }
}

// Γ(a + h)/Γ(a − h) with 2h = r an integer, as (numerator, denominator) products of |r| linear factors.
fn gamma_shift_ratio(a: &Rational, r: i64) -> (Rational, Rational) {
    let h = rat(r, 2);
    let (base, count) = if r >= 0 { (a - &h, r) } else { (a + &h, -r) };
    let mut prod = Rational::one();
    for i in 0..count {
        prod *= &base + rat_int(i);
    }
    if r >= 0 {
        (prod, Rational::one())
    } else {
        (Rational::one(), prod)
    }
}

fn octonionic_args(k: u32, j: u32) -> [Rational; 4] {
    [
        rat_int((j + k) as i64) + rat(11, 2),
        rat(11, 2),
        rat_int(k as i64) + rat(5, 2),
        rat(5, 2),
    ]
}

/// Octonionic eigenvalue for integer `r` by the telescoped rational form of the Gamma ratio.
pub fn octonionic_eigenvalue_exact(k: u32, j: u32, r: i64) -> Result<Rational> {
    let [a, b, c, d] = octonionic_args(k, j);
    let (an, ad) = gamma_shift_ratio(&a, r);
    let (bn, bd) = gamma_shift_ratio(&b, r);
    let (cn, cd) = gamma_shift_ratio(&c, r);
    let (dn, dd) = gamma_shift_ratio(&d, r);
    // the b and d ratios enter inverted
    let num = an * bd * cn * dd;
    let den = ad * bn * cd * dn;
    if den.is_zero() {
        let h = rat(r, 2);
        let names = ["j+k+11/2", "11/2", "k+5/2", "5/2"];
        // a zero denominator comes from a numerator Gamma sitting at a pole
        let offending = [(&a + &h, names[0], "+"), (&b - &h, names[1], "-"), (&c + &h, names[2], "+"), (&d - &h, names[3], "-")]
            .into_iter()
            .find(|(x, _, _)| x.is_integer() && !x.is_positive())
            .map(|(x, name, sign)| format!("Gamma({name} {sign} r/2) = Gamma({x})"))
            .unwrap_or_else(|| "Gamma ratio".to_string());
        return Err(pole_error(format!("{offending} has a pole at r = {r} (k = {k}, j = {j})")));
    }
    Ok(num / den)
}

/// Octonionic eigenvalue through four log-gamma ratios, for any real `r`.
pub fn octonionic_eigenvalue_log_gamma(k: u32, j: u32, r: f64) -> Result<f64> {
    let h = r / 2.0;
    let [a, b, c, d] = octonionic_args(k, j).map(|q| rational_to_f64(&q));
    let numer = [a + h, b - h, c + h, d - h];
    let denom = [a - h, b + h, c - h, d + h];
    let mut ln = 0.0;
    let mut sign = 1.0;
    for x in numer {
        let (l, s) = ln_gamma_signed(x).map_err(|_| pole_error(format!("Gamma({x}) at r = {r}")))?;
        ln += l;
        sign *= s;
    }
    for x in denom {
        match ln_gamma_signed(x) {
            Ok((l, s)) => {
                ln -= l;
                sign *= s;
            }
            // 1/Γ vanishes at its poles
            Err(_) => return Ok(0.0),
        }
    }
    Ok(sign * ln.exp())
}

/// Eigenvalue of the normalized intertwining operator on the K-type `kt`.
pub fn intertwiner_eigenvalue(case: &CaseId, kt: &KTypeLabel, param: &SpectralParam) -> Result<SpectralValue> {
    kt.check_case(case)?;
    if case.family != Family::Octonionic {
        let nu = param.to_nu(case)?;
        return classical_eigenvalue(case, kt, &nu);
    }
    let (k, j) = kt.octonionic_kj().expect("octonionic label");
    let r = param.to_r();
    if let Some(ri) = r.as_integer() {
        let q = octonionic_eigenvalue_exact(k, j, ri)?;
        return Ok(SpectralValue::exact(q, Provenance::GammaTelescoped));
    }
    let x = octonionic_eigenvalue_log_gamma(k, j, r.to_f64())?;
    Ok(SpectralValue::approx(x, Provenance::LogGamma))
}

/// Eigenvalue of the sub-Laplacian Δ_b on the K-type `kt`.
pub fn deltab_eigenvalue(case: &CaseId, kt: &KTypeLabel) -> Result<i64> {
    kt.check_case(case)?;
    let n = case.n as i64;
    Ok(match *kt {
        KTypeLabel::Real { k } => {
            let k = k as i64;
            k * (k + n - 1)
        }
        KTypeLabel::Complex { p, q } => {
            let (k, j) = ((p + q) as i64, p as i64 - q as i64);
            k * (k + 2 * n) - j * j
        }
        KTypeLabel::Quaternionic { p, q } => {
            let (k, j) = (p as i64, q as i64);
            k * (k + 4 * n + 2) - j * (j + 2)
        }
        KTypeLabel::Octonionic { big_n, j } => {
            let (nn, j) = (big_n as i64, j as i64);
            nn * (nn + 14) - j * (j + 6)
        }
    })
}

/// `(k + (n−2)/2)(k + n/2)`, the spectrum of the conformal Laplacian on Sⁿ.
pub fn yamabe_eigenvalue(n: u32, k: u32) -> Rational {
    let (n, k) = (n as i64, k as i64);
    (rat_int(k) + rat(n - 2, 2)) * (rat_int(k) + rat(n, 2))
}

/// `C·λ − k`; nonnegative on every K-type.
pub fn theorem_bound_margin(case: &CaseId, kt: &KTypeLabel) -> Result<Rational> {
    let lambda = deltab_eigenvalue(case, kt)?;
    Ok(case.sharp_constant() * rat_int(lambda) - rat_int(kt.degree() as i64))
}

/// Both sides of the special-parameter identity for one K-type.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialIdentity {
    pub lhs: Rational,
    pub rhs: Rational,
    /// `lhs − constant`, to be compared with `deltab`.
    pub shifted: Rational,
    pub deltab: Rational,
    /// Log-gamma evaluation of the octonionic lhs.
    pub lhs_log_gamma: Option<f64>,
}

impl SpecialIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.shifted == self.deltab
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpecialNuOutcome {
    Identity(SpecialIdentity),
    /// The normalization constant vanishes; the payload reports the pole of the eigenvalue.
    Degenerate { reason: String },
}

impl SpecialNuOutcome {
    pub fn identity(&self) -> Option<&SpecialIdentity> {
        match self {
            SpecialNuOutcome::Identity(id) => Some(id),
            SpecialNuOutcome::Degenerate { .. } => None,
        }
    }
}

pub fn special_nu_identity(case: &CaseId, kt: &KTypeLabel) -> Result<SpecialNuOutcome> {
    kt.check_case(case)?;
    let n = case.n as i64;
    let deltab = rat_int(deltab_eigenvalue(case, kt)?);
    let special = case.special_parameter();
    let a = |param: SpectralParam| -> Result<Rational> {
        Ok(intertwiner_eigenvalue(case, kt, &param)?
            .exact
            .expect("rational parameter gives an exact value"))
    };
    let id = match *kt {
        KTypeLabel::Real { k } => {
            let norm = rat(n, 2) * rat(n - 2, 2);
            if norm.is_zero() {
                let reason = match a(SpectralParam::nu(special)) {
                    Err(Error::Pole { factor }) => format!("normalization (n-2)/2 vanishes; pole: {factor}"),
                    _ => "normalization (n-2)/2 vanishes".to_string(),
                };
                return Ok(SpecialNuOutcome::Degenerate { reason });
            }
            let lhs = a(SpectralParam::nu(special))? * &norm;
            let rhs = yamabe_eigenvalue(case.n, k);
            SpecialIdentity {
                shifted: &lhs - &norm,
                lhs,
                rhs,
                deltab,
                lhs_log_gamma: None,
            }
        }
        KTypeLabel::Complex { p, q } => {
            let norm = rat_int(n * n);
            let lhs = a(SpectralParam::nu(special))? * &norm;
            let rhs = rat_int((2 * p as i64 + n) * (2 * q as i64 + n));
            SpecialIdentity {
                shifted: &lhs - &norm,
                lhs,
                rhs,
                deltab,
                lhs_log_gamma: None,
            }
        }
        KTypeLabel::Quaternionic { .. } => {
            let (r, s) = kt.quaternionic_rs().expect("quaternionic label");
            let norm = rat_int(2 * n * (2 * n + 2));
            let lhs = a(SpectralParam::nu(special))? * &norm;
            let rhs = rat_int((2 * n + 2 * r as i64) * (2 * n + 2 + 2 * s as i64));
            SpecialIdentity {
                shifted: &lhs - &norm,
                lhs,
                rhs,
                deltab,
                lhs_log_gamma: None,
            }
        }
        KTypeLabel::Octonionic { .. } => {
            let (k, j) = kt.octonionic_kj().expect("octonionic label");
            let norm = rat_int(40);
            let lhs = a(SpectralParam::r(special))? * &norm;
            let rhs = rat_int(4 * (j + k + 5) as i64 * (k + 2) as i64);
            let lg = octonionic_eigenvalue_log_gamma(k, j, 1.0)? * 40.0;
            SpecialIdentity {
                shifted: &lhs - &norm,
                lhs,
                rhs,
                deltab,
                lhs_log_gamma: Some(lg),
            }
        }
    };
    Ok(SpecialNuOutcome::Identity(id))
}

/// One row of a serialized eigenvalue table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueRecord {
    pub case: String,
    pub n: u32,
    pub label: KTypeLabel,
    pub param: String,
    pub exact_num: Option<String>,
    pub exact_den: Option<String>,
    pub approx: Option<f64>,
    pub provenance: Option<Provenance>,
    pub pole: Option<String>,
    pub deltab: i64,
}

/// Eigenvalues for every K-type up to `max_degree`. Poles become records with `pole` set.
pub fn eigenvalue_table(case: &CaseId, max_degree: u32, param: &SpectralParam) -> Result<Vec<EigenvalueRecord>> {
    let mut out = Vec::new();
    for kt in enumerate_ktypes(case, max_degree) {
        let deltab = deltab_eigenvalue(case, &kt)?;
        let mut rec = EigenvalueRecord {
            case: case.family.to_string(),
            n: case.n,
            label: kt,
            param: param.to_string(),
            exact_num: None,
            exact_den: None,
            approx: None,
            provenance: None,
            pole: None,
            deltab,
        };
        match intertwiner_eigenvalue(case, &kt, param) {
            Ok(v) => {
                if let Some(q) = &v.exact {
                    rec.exact_num = Some(q.numer().to_string());
                    rec.exact_den = Some(q.denom().to_string());
                }
                rec.approx = Some(v.approx);
                rec.provenance = Some(v.provenance);
            }
            Err(Error::Pole { factor }) => rec.pole = Some(factor),
            Err(e) => return Err(e),
        }
        out.push(rec);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(case: &CaseId, kt: KTypeLabel, nu: Rational) -> Rational {
        intertwiner_eigenvalue(case, &kt, &SpectralParam::nu(nu)).unwrap().exact.unwrap()
    }

    #[test]
    fn constants_are_fixed() {
        for nu in [rat(-7, 3), rat_int(0), rat(1, 2), rat_int(5)] {
            assert_eq!(exact(&CaseId::real(3), KTypeLabel::Real { k: 0 }, nu.clone()), rat_int(1));
            assert_eq!(
                exact(&CaseId::complex(2), KTypeLabel::Complex { p: 0, q: 0 }, nu.clone()),
                rat_int(1)
            );
        }
    }

    #[test]
    fn real_example() {
        assert_eq!(exact(&CaseId::real(3), KTypeLabel::Real { k: 2 }, rat_int(1)), rat_int(3));
    }

    #[test]
    fn real_pole_names_factor() {
        let err = intertwiner_eigenvalue(&CaseId::real(2), &KTypeLabel::Real { k: 1 }, &SpectralParam::nu(rat_int(0)))
            .unwrap_err();
        match err {
            Error::Pole { factor } => assert!(factor.contains("nu + 0"), "{factor}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn float_parameter_matches_exact() {
        let case = CaseId::quaternionic(2);
        let kt = KTypeLabel::Quaternionic { p: 5, q: 1 };
        let e = exact(&case, kt, rat(7, 4));
        let f = intertwiner_eigenvalue(&case, &kt, &SpectralParam::Nu(Scalar::Approx(1.75))).unwrap();
        assert_eq!(f.provenance, Provenance::FloatProduct);
        assert!((f.approx - rational_to_f64(&e)).abs() < 1e-12 * rational_to_f64(&e).abs());
    }

    #[test]
    fn octonionic_values() {
        let o = CaseId::octonionic();
        let kt = KTypeLabel::Octonionic { big_n: 0, j: 0 };
        let v = intertwiner_eigenvalue(&o, &kt, &SpectralParam::r(rat_int(1))).unwrap();
        assert_eq!(v.exact, Some(rat_int(1)));
        assert_eq!(v.provenance, Provenance::GammaTelescoped);
        // ν = 10 is r = 1
        let w = intertwiner_eigenvalue(&o, &kt, &SpectralParam::nu(rat_int(10))).unwrap();
        assert_eq!(w, v);
        let r_on_real = intertwiner_eigenvalue(&CaseId::real(3), &KTypeLabel::Real { k: 1 }, &SpectralParam::r(rat_int(1)));
        assert!(r_on_real.is_err());
    }

    #[test]
    fn octonionic_log_gamma_matches_telescoped() {
        for r in [-3i64, -1, 0, 1, 2, 4] {
            for k in 0..6 {
                for j in 0..6 {
                    let e = rational_to_f64(&octonionic_eigenvalue_exact(k, j, r).unwrap());
                    let l = octonionic_eigenvalue_log_gamma(k, j, r as f64).unwrap();
                    assert!((e - l).abs() <= 1e-11 * e.abs(), "r={r} k={k} j={j}: {e} vs {l}");
                }
            }
        }
    }

    #[test]
    fn octonionic_non_integer_r_uses_log_gamma() {
        let v = intertwiner_eigenvalue(
            &CaseId::octonionic(),
            &KTypeLabel::Octonionic { big_n: 3, j: 1 },
            &SpectralParam::R(Scalar::Approx(0.5)),
        )
        .unwrap();
        assert_eq!(v.provenance, Provenance::LogGamma);
        assert!(v.exact.is_none() && v.approx.is_finite() && v.approx > 0.0);
    }

    #[test]
    fn octonionic_pole() {
        // r = 11 puts Γ(11/2 − r/2) = Γ(0) in the numerator
        let err = octonionic_eigenvalue_exact(1, 0, 11).unwrap_err();
        assert!(matches!(err, Error::Pole { .. }));
    }

    #[test]
    fn deltab_examples() {
        assert_eq!(deltab_eigenvalue(&CaseId::real(2), &KTypeLabel::Real { k: 1 }).unwrap(), 2);
        assert_eq!(
            deltab_eigenvalue(&CaseId::octonionic(), &KTypeLabel::Octonionic { big_n: 0, j: 0 }).unwrap(),
            0
        );
        assert_eq!(deltab_eigenvalue(&CaseId::complex(1), &KTypeLabel::Complex { p: 1, q: 0 }).unwrap(), 2);
        assert!(deltab_eigenvalue(&CaseId::complex(1), &KTypeLabel::Real { k: 1 }).is_err());
    }

    #[test]
    fn yamabe_examples() {
        assert_eq!(yamabe_eigenvalue(5, 0), rat(15, 4));
        assert_eq!(yamabe_eigenvalue(2, 0), rat_int(0));
        assert_eq!(yamabe_eigenvalue(3, 1), rat(15, 4));
    }

    #[test]
    fn margin_examples() {
        for n in 1..6 {
            assert!(theorem_bound_margin(&CaseId::real(n), &KTypeLabel::Real { k: 1 }).unwrap().is_zero());
            for p in 0..5 {
                assert!(theorem_bound_margin(&CaseId::complex(n), &KTypeLabel::Complex { p, q: 0 })
                    .unwrap()
                    .is_zero());
            }
        }
        for nn in 0..6 {
            assert!(theorem_bound_margin(&CaseId::octonionic(), &KTypeLabel::Octonionic { big_n: nn, j: nn })
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn special_identity_examples() {
        let c = special_nu_identity(&CaseId::complex(1), &KTypeLabel::Complex { p: 0, q: 0 }).unwrap();
        let id = c.identity().unwrap();
        assert_eq!((id.lhs.clone(), id.rhs.clone()), (rat_int(1), rat_int(1)));

        let q = special_nu_identity(&CaseId::quaternionic(1), &KTypeLabel::Quaternionic { p: 2, q: 0 }).unwrap();
        let id = q.identity().unwrap();
        assert_eq!(id.rhs, rat_int(24));
        assert_eq!(id.shifted, rat_int(16));
        assert!(id.holds());

        let o = special_nu_identity(&CaseId::octonionic(), &KTypeLabel::Octonionic { big_n: 0, j: 0 }).unwrap();
        let id = o.identity().unwrap();
        assert_eq!(id.lhs, rat_int(40));
        assert_eq!(id.shifted, rat_int(0));
        assert!(id.holds());

        let d = special_nu_identity(&CaseId::real(2), &KTypeLabel::Real { k: 3 }).unwrap();
        assert!(matches!(d, SpecialNuOutcome::Degenerate { .. }));
    }

    #[test]
    fn table_serializes() {
        let t = eigenvalue_table(&CaseId::real(2), 2, &SpectralParam::nu(rat_int(0))).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].exact_num.as_deref(), Some("1"));
        assert!(t[1].pole.is_some());
        let json = serde_json::to_string(&t).unwrap();
        let back: Vec<EigenvalueRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
