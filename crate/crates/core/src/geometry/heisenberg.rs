use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};

use super::sphere::SpherePoint;
use crate::error::{Error, Result};
use crate::exactpoly::{rat_int, ComplexRational, FirstOrderOperator, MultiPoly, Rational};

/// A point `(z, t)` of the Heisenberg group ℂⁿ × ℝ.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergPoint {
    pub z: Vec<Complex64>,
    pub t: f64,
}

impl HeisenbergPoint {
    pub fn new(z: Vec<Complex64>, t: f64) -> Self {
        HeisenbergPoint { z, t }
    }

    pub fn identity(n: usize) -> Self {
        HeisenbergPoint {
            z: vec![Complex64::zero(); n],
            t: 0.0,
        }
    }

    /// From real coordinates ordered `x₁..xₙ, y₁..yₙ, t`.
    pub fn from_coords(c: &[f64]) -> Result<Self> {
        if c.len() % 2 == 0 {
            return Err(Error::structural("Heisenberg coordinates have odd length 2n+1"));
        }
        let n = c.len() / 2;
        let z = (0..n).map(|j| Complex64::new(c[j], c[n + j])).collect();
        Ok(HeisenbergPoint { z, t: c[2 * n] })
    }

    /// Real coordinates ordered `x₁..xₙ, y₁..yₙ, t`.
    pub fn coords(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.z.iter().map(|w| w.re).collect();
        out.extend(self.z.iter().map(|w| w.im));
        out.push(self.t);
        out
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn z_norm2(&self) -> f64 {
        self.z.iter().map(|w| w.norm_sqr()).sum()
    }

    pub fn inverse(&self) -> Self {
        HeisenbergPoint {
            z: self.z.iter().map(|w| -w).collect(),
            t: -self.t,
        }
    }
}

/// `(z,t)(z′,t′) = (z+z′, t+t′+2 Im z·z̄′)`.
pub fn heisenberg_mul(a: &HeisenbergPoint, b: &HeisenbergPoint) -> Result<HeisenbergPoint> {
    if a.n() != b.n() {
        return Err(Error::structural(format!(
            "Heisenberg points of different dimension: {} vs {}",
            a.n(),
            b.n()
        )));
    }
    let im: f64 = a.z.iter().zip(&b.z).map(|(u, v)| (u * v.conj()).im).sum();
    Ok(HeisenbergPoint {
        z: a.z.iter().zip(&b.z).map(|(u, v)| u + v).collect(),
        t: a.t + b.t + 2.0 * im,
    })
}

/// Cayley transform onto S^{2n+1} ⊂ ℂ^{n+1}, coordinates interleaved as `(Re w₀, Im w₀, Re w₁, ...)`.
pub fn cayley(h: &HeisenbergPoint) -> SpherePoint {
    SpherePoint::normalized(cayley_coords(h)).expect("Cayley image is nonzero")
}

/// The Cayley formula evaluated as is, without projecting back onto the sphere.
pub fn cayley_coords(h: &HeisenbergPoint) -> Vec<f64> {
    let z0 = Complex64::new(h.z_norm2(), h.t);
    let d = z0 + 1.0;
    let w0 = (z0 - 1.0) / d;
    let mut coords = vec![w0.re, w0.im];
    for zj in &h.z {
        let w = 2.0 * zj / d;
        coords.push(w.re);
        coords.push(w.im);
    }
    coords
}

/// Inverse of [`cayley`]; undefined at `w₀ = 1`.
pub fn cayley_inverse(p: &SpherePoint) -> Result<HeisenbergPoint> {
    let c = p.coords();
    if c.len() < 4 || c.len() % 2 != 0 {
        return Err(Error::structural("expected a point of S^{2n+1} with n >= 1"));
    }
    let w0 = Complex64::new(c[0], c[1]);
    let d = Complex64::one() - w0;
    if d.norm_sqr() == 0.0 {
        return Err(Error::domain("Cayley inverse is undefined at w0 = 1"));
    }
    let z0 = (Complex64::one() + w0) / d;
    let z = c[2..].chunks(2).map(|w| Complex64::new(w[0], w[1]) / d).collect();
    Ok(HeisenbergPoint { z, t: z0.im })
}

/// `(z, t) ↦ (z, −t)`. [`cayley`] is CR for the opposite group law, so it is
/// `cayley ∘ reflect_t` that maps left-invariant horizontal fields to horizontal vectors.
pub fn reflect_t(h: &HeisenbergPoint) -> HeisenbergPoint {
    HeisenbergPoint {
        z: h.z.clone(),
        t: -h.t,
    }
}

/// Length of the image of a unit horizontal field under `cayley ∘ reflect_t`,
/// `2/√((1+|z|²)² + t²)`; even in t.
pub fn cayley_conformal_factor(h: &HeisenbergPoint) -> f64 {
    let a = 1.0 + h.z_norm2();
    2.0 / (a * a + h.t * h.t).sqrt()
}

/// Variable names `x1..xn, y1..yn, t`.
pub fn heisenberg_vars(n: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..=n).map(|j| format!("x{j}")).collect();
    v.extend((1..=n).map(|j| format!("y{j}")));
    v.push("t".to_string());
    v
}

/// The left-invariant fields `X_j`, `Y_j` and the CR-holomorphic `Z_j`.
#[derive(Debug, Clone)]
pub struct HeisenbergFields {
    pub n: usize,
    pub x: Vec<FirstOrderOperator<Rational>>,
    pub y: Vec<FirstOrderOperator<Rational>>,
    pub z: Vec<FirstOrderOperator<ComplexRational>>,
}

fn var_poly<C: crate::exactpoly::Coefficient>(vars: &[String], i: usize, c: C) -> MultiPoly<C> {
    let mut e = vec![0; vars.len()];
    e[i] = 1;
    MultiPoly::monomial(vars, e, c).expect("length matches")
}

/// `X_j = ∂x_j + 2y_j ∂t`, `Y_j = ∂y_j − 2x_j ∂t`, `Z_j = ∂z_j + i z̄_j ∂t`.
pub fn heisenberg_fields(n: usize) -> Result<HeisenbergFields> {
    if n == 0 {
        return Err(Error::domain("Heisenberg group needs n >= 1"));
    }
    let vars = heisenberg_vars(n);
    let t = 2 * n;
    let zero_r = MultiPoly::<Rational>::zero(&vars);
    let zero_c = MultiPoly::<ComplexRational>::zero(&vars);
    let one = Rational::one;
    let c = |re: Rational, im: Rational| Complex::new(re, im);
    let half = Rational::new(1.into(), 2.into());

    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    let mut zs = Vec::with_capacity(n);
    for j in 0..n {
        let (xj, yj) = (j, n + j);

        let mut cx = vec![zero_r.clone(); 2 * n + 1];
        cx[xj] = MultiPoly::one(&vars);
        cx[t] = var_poly(&vars, yj, rat_int(2));
        xs.push(FirstOrderOperator::new(cx)?);

        let mut cy = vec![zero_r.clone(); 2 * n + 1];
        cy[yj] = MultiPoly::one(&vars);
        cy[t] = var_poly(&vars, xj, rat_int(-2));
        ys.push(FirstOrderOperator::new(cy)?);

        // ½∂x − (i/2)∂y + (y + i x)∂t
        let mut cz = vec![zero_c.clone(); 2 * n + 1];
        cz[xj] = MultiPoly::constant(&vars, c(half.clone(), Rational::zero()));
        cz[yj] = MultiPoly::constant(&vars, c(Rational::zero(), -half.clone()));
        cz[t] = var_poly(&vars, yj, c(one(), Rational::zero()))
            .try_add(&var_poly(&vars, xj, c(Rational::zero(), one())))?;
        zs.push(FirstOrderOperator::new(cz)?);
    }
    Ok(HeisenbergFields { n, x: xs, y: ys, z: zs })
}

fn check_heisenberg_vars<C: crate::exactpoly::Coefficient>(f: &MultiPoly<C>, n: usize) -> Result<()> {
    if f.vars() != heisenberg_vars(n).as_slice() {
        return Err(Error::structural(format!(
            "polynomial must use the Heisenberg variables {:?}",
            heisenberg_vars(n)
        )));
    }
    Ok(())
}

/// `Δ_b f = Σ_j (X_j² + Y_j²) f`.
pub fn heisenberg_deltab(f: &MultiPoly<Rational>, n: usize) -> Result<MultiPoly<Rational>> {
    check_heisenberg_vars(f, n)?;
    let fields = heisenberg_fields(n)?;
    let mut out = MultiPoly::zero(f.vars());
    for v in fields.x.iter().chain(&fields.y) {
        out = out.try_add(&v.apply(&v.apply(f)?)?)?;
    }
    Ok(out)
}

/// `Δ_x f + Δ_y f + 4(y·∇_x − x·∇_y)∂_t f + 4|z|² ∂_t² f`, written out directly.
pub fn heisenberg_deltab_expanded(f: &MultiPoly<Rational>, n: usize) -> Result<MultiPoly<Rational>> {
    check_heisenberg_vars(f, n)?;
    let vars = f.vars().to_vec();
    let t = 2 * n;
    let ft = f.differentiate_index(t);
    let mut out = MultiPoly::zero(&vars);
    for i in 0..2 * n {
        out = out.try_add(&f.differentiate_index(i).differentiate_index(i))?;
    }
    let mut mixed = MultiPoly::zero(&vars);
    let mut z2 = MultiPoly::zero(&vars);
    for j in 0..n {
        let (xj, yj) = (j, n + j);
        let y = var_poly(&vars, yj, Rational::one());
        let x = var_poly(&vars, xj, Rational::one());
        mixed = mixed
            .try_add(&y.try_mul(&ft.differentiate_index(xj))?)?
            .try_sub(&x.try_mul(&ft.differentiate_index(yj))?)?;
        z2 = z2.try_add(&x.pow(2))?.try_add(&y.pow(2))?;
    }
    out = out.try_add(&mixed.scale(&rat_int(4)))?;
    out = out.try_add(&z2.try_mul(&ft.differentiate_index(t))?.scale(&rat_int(4)))?;
    Ok(out)
}

/// Directional derivative of `f` along `X_j` (or `Y_j`) at `h`, by the group law:
/// `d/ds f(h · exp(s e))` with a central difference.
pub fn left_invariant_derivative<F>(f: &F, h: &HeisenbergPoint, j: usize, imaginary: bool, step: f64) -> f64
where
    F: Fn(&HeisenbergPoint) -> f64 + ?Sized,
{
    let n = h.n();
    let shifted = |s: f64| {
        let mut e = HeisenbergPoint::identity(n);
        e.z[j] = if imaginary {
            Complex64::new(0.0, s)
        } else {
            Complex64::new(s, 0.0)
        };
        f(&heisenberg_mul(h, &e).expect("same n"))
    };
    (shifted(step) - shifted(-step)) / (2.0 * step)
}
