//! Floating-point evaluation of exact polynomials, with gradients.

use num_complex::Complex64;

use super::poly::{Coefficient, MultiPoly};

#[derive(Debug, Clone)]
struct Term {
    factors: Vec<(usize, u32)>,
    re: f64,
    im: f64,
}

/// A polynomial frozen to `f64` coefficients for repeated evaluation.
#[derive(Debug, Clone)]
pub struct NumPoly {
    nvars: usize,
    max_exp: u32,
    terms: Vec<Term>,
    real: bool,
}

impl NumPoly {
    pub fn new<C: Coefficient>(p: &MultiPoly<C>) -> Self {
        let mut max_exp = 0;
        let mut real = true;
        let terms = p
            .terms()
            .map(|(e, c)| {
                let z = c.to_c64();
                real &= z.im == 0.0;
                let factors: Vec<(usize, u32)> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        max_exp = max_exp.max(k);
                        (i, k)
                    })
                    .collect();
                Term {
                    factors,
                    re: z.re,
                    im: z.im,
                }
            })
            .collect();
        NumPoly {
            nvars: p.nvars(),
            max_exp,
            terms,
            real,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn power_table(&self, x: &[f64]) -> Vec<f64> {
        let stride = self.max_exp as usize + 1;
        let mut table = vec![1.0; self.nvars * stride];
        for (i, &xi) in x.iter().enumerate().take(self.nvars) {
            for k in 1..stride {
                table[i * stride + k] = table[i * stride + k - 1] * xi;
            }
        }
        table
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let stride = self.max_exp as usize + 1;
        let table = self.power_table(x);
        let (mut re, mut im) = (0.0, 0.0);
        for t in &self.terms {
            let m: f64 = t
                .factors
                .iter()
                .map(|&(i, k)| table[i * stride + k as usize])
                .product();
            re += t.re * m;
            im += t.im * m;
        }
        Complex64::new(re, im)
    }

    /// Value and gradient; `grad_re`/`grad_im` must have length `nvars` and are overwritten.
    pub fn eval_with_gradient(&self, x: &[f64], grad_re: &mut [f64], grad_im: &mut [f64]) -> Complex64 {
        let stride = self.max_exp as usize + 1;
        let table = self.power_table(x);
        grad_re.iter_mut().for_each(|g| *g = 0.0);
        grad_im.iter_mut().for_each(|g| *g = 0.0);
        let (mut re, mut im) = (0.0, 0.0);
        for t in &self.terms {
            let m: f64 = t
                .factors
                .iter()
                .map(|&(i, k)| table[i * stride + k as usize])
                .product();
            re += t.re * m;
            im += t.im * m;
            for (a, &(i, k)) in t.factors.iter().enumerate() {
                // ∂/∂x_i of x_i^k times the other factors
                let mut d = k as f64 * table[i * stride + k as usize - 1];
                for (b, &(j, l)) in t.factors.iter().enumerate() {
                    if a != b {
                        d *= table[j * stride + l as usize];
                    }
                }
                grad_re[i] += t.re * d;
                if !self.real {
                    grad_im[i] += t.im * d;
                }
            }
        }
        Complex64::new(re, im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::poly::{rat, rat_int, Rational};

    #[test]
    fn gradient_matches_exact_derivatives() {
        let v = ["a", "b", "c"];
        let p = MultiPoly::<Rational>::from_terms(
            &v,
            vec![
                (vec![3, 1, 0], rat(1, 3)),
                (vec![0, 2, 2], rat_int(-2)),
                (vec![1, 0, 0], rat(5, 4)),
                (vec![0, 0, 0], rat_int(7)),
            ],
        )
        .unwrap();
        let np = NumPoly::new(&p);
        let x = [0.3, -1.2, 0.7];
        let mut gr = [0.0; 3];
        let mut gi = [0.0; 3];
        let val = np.eval_with_gradient(&x, &mut gr, &mut gi);
        assert!((val.re - p.eval_f64(&x)).abs() < 1e-13);
        for i in 0..3 {
            let d = p.differentiate_index(i).eval_f64(&x);
            assert!((gr[i] - d).abs() < 1e-12, "{i}: {} vs {d}", gr[i]);
            assert_eq!(gi[i], 0.0);
        }
    }
}
