use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Complex number with exact rational real and imaginary parts.
pub type ComplexRational = Complex<BigRational>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // to_f64 on BigRational handles huge numerators/denominators without overflow.
    r.to_f64().unwrap_or(f64::NAN)
}

/// Coefficient ring for [`MultiPoly`].
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: Rational) -> Self;

    fn to_c64(&self) -> Complex64;

    /// Divide by a nonzero rational.
    fn div_rational(&self, r: &Rational) -> Self;
}

impl Coefficient for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }

    fn div_rational(&self, r: &Rational) -> Self {
        self / r
    }
}

impl Coefficient for ComplexRational {
    fn from_rational(r: Rational) -> Self {
        Complex::new(r, Rational::zero())
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn div_rational(&self, r: &Rational) -> Self {
        Complex::new(&self.re / r, &self.im / r)
    }
}

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms map an exponent vector (one entry per variable) to a nonzero coefficient.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C: Coefficient = Rational> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, C>,
}

pub type CPoly = MultiPoly<ComplexRational>;

impl<C: Coefficient> MultiPoly<C> {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|s| s.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: C) -> Self {
        let mut p = Self::zero(vars);
        let n = p.vars.len();
        p.insert(vec![0; n], c);
        p
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::constant(vars, C::one())
    }

    /// The coordinate function named `name`.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self> {
        let mut p = Self::zero(vars);
        let i = p.index_of(name)?;
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        p.insert(e, C::one());
        Ok(p)
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: Vec<u32>, c: C) -> Result<Self> {
        let mut p = Self::zero(vars);
        if exps.len() != p.vars.len() {
            return Err(Error::structural(format!(
                "exponent vector of length {} for {} variables",
                exps.len(),
                p.vars.len()
            )));
        }
        p.insert(exps, c);
        Ok(p)
    }

    pub fn from_terms<S: AsRef<str>>(
        vars: &[S],
        terms: impl IntoIterator<Item = (Vec<u32>, C)>,
    ) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::structural("exponent vector length mismatch"));
            }
            p.insert(e, c);
        }
        Ok(p)
    }

    /// Add `c` to the coefficient of `exps`, dropping the term if it cancels.
    fn insert(&mut self, exps: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::structural(format!("unknown variable {name}")))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Degree in the given variable subset if every term has the same one.
    pub fn homogeneous_degree_in(&self, idx: &[usize]) -> Option<u32> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: u32 = idx.iter().map(|&i| e[i]).sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    fn check_same_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::structural(format!(
                "variable lists differ: {:?} vs {:?}",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(e, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same variables");
        }
        acc
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            out.insert(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&C::from_rational(r.clone()))
    }

    pub fn div_rational(&self, r: &Rational) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            out.insert(e.clone(), v.div_rational(r));
        }
        out
    }

    pub fn negate(&self) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -v.clone();
        }
        out
    }

    pub fn differentiate(&self, var: &str) -> Result<Self> {
        let i = self.index_of(var)?;
        Ok(self.differentiate_index(i))
    }

    pub fn differentiate_index(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            let factor = C::from_rational(rat_int(e[i] as i64));
            out.insert(e2, c.clone() * factor);
        }
        out
    }

    /// Sum of the pure second partials over `dims`.
    pub fn euclidean_laplacian<S: AsRef<str>>(&self, dims: &[S]) -> Result<Self> {
        let idx = self.indices(dims)?;
        Ok(self.laplacian_indices(&idx))
    }

    pub(crate) fn laplacian_indices(&self, idx: &[usize]) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            for &i in idx {
                if e[i] < 2 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[i] -= 2;
                let factor = C::from_rational(rat_int((e[i] * (e[i] - 1)) as i64));
                out.insert(e2, c.clone() * factor);
            }
        }
        out
    }

    pub fn indices<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.index_of(n.as_ref())).collect()
    }

    /// `Σ x_i²` over the given variables, in this polynomial's variable space.
    pub fn radius_squared_like(&self, idx: &[usize]) -> Self {
        let mut out = Self::zero(&self.vars);
        for &i in idx {
            let mut e = vec![0; self.vars.len()];
            e[i] = 2;
            out.insert(e, C::one());
        }
        out
    }

    /// Replace variable `i` by `images[i]` for every variable (all images share one variable list).
    pub fn substitute(&self, images: &[MultiPoly<C>]) -> Result<MultiPoly<C>> {
        if images.len() != self.vars.len() {
            return Err(Error::structural("one image per variable required"));
        }
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        for im in images {
            if im.vars != target {
                return Err(Error::structural("images must share a variable list"));
            }
        }
        // powers[i][k] = images[i]^k, filled lazily
        let mut powers: Vec<Vec<MultiPoly<C>>> = images
            .iter()
            .map(|_| vec![MultiPoly::one(&target)])
            .collect();
        let mut out = MultiPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().try_mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.try_mul(&powers[i][k as usize])?;
            }
            for (e2, c2) in term.terms {
                out.insert(e2, c2);
            }
        }
        Ok(out)
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = MultiPoly::<D>::zero(&self.vars);
        for (e, c) in &self.terms {
            out.insert(e.clone(), f(c));
        }
        out
    }

    pub fn eval_c64(&self, x: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let m: f64 = e
                .iter()
                .zip(x)
                .map(|(&k, &xi)| xi.powi(k as i32))
                .product();
            acc += c.to_c64() * m;
        }
        acc
    }
}

impl MultiPoly<Rational> {
    pub fn to_complex(&self) -> CPoly {
        self.map_coefficients(|c| Complex::new(c.clone(), Rational::zero()))
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.eval_c64(x).re
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (&k, xi) in e.iter().zip(x) {
                for _ in 0..k {
                    m *= xi;
                }
            }
            acc += m;
        }
        acc
    }
}

impl MultiPoly<ComplexRational> {
    pub fn real_part(&self) -> MultiPoly<Rational> {
        self.map_coefficients(|c| c.re.clone())
    }

    pub fn imag_part(&self) -> MultiPoly<Rational> {
        self.map_coefficients(|c| c.im.clone())
    }

    pub fn conj(&self) -> Self {
        self.map_coefficients(|c| c.conj())
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }
}

impl<C: Coefficient> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coefficient> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (v, &k) in self.vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
}

pub fn poly_arith<C: Coefficient>(
    a: &MultiPoly<C>,
    b: &MultiPoly<C>,
    op: ArithOp,
) -> Result<MultiPoly<C>> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Mul => a.try_mul(b),
    }
}
