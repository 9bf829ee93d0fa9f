use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::{One, Zero};

use super::poly::{rat, CPoly, MultiPoly, Rational};
use crate::error::{Error, Result};

fn c(re: Rational, im: Rational) -> Complex<Rational> {
    Complex::new(re, im)
}

fn unit_var(vars: &[String], i: usize, coeff: Complex<Rational>) -> CPoly {
    let mut e = vec![0; vars.len()];
    e[i] = 1;
    MultiPoly::monomial(vars, e, coeff).expect("length matches")
}

/// `z_j = x_j + i y_j` (or its conjugate) for the coordinate pair `(x, y)`.
pub fn complex_coordinate(vars: &[String], pair: (usize, usize), conjugate: bool) -> CPoly {
    let sign = if conjugate { -Rational::one() } else { Rational::one() };
    unit_var(vars, pair.0, c(Rational::one(), Rational::zero()))
        .try_add(&unit_var(vars, pair.1, c(Rational::zero(), sign)))
        .expect("same vars")
}

/// Split a polynomial in real coordinates into pieces of pure bidegree `(p, q)` in `(z, z̄)`.
///
/// `pairs` lists the `(x_j, y_j)` variable indices; other variables are passive.
pub fn bidegree_split(p: &CPoly, pairs: &[(usize, usize)]) -> Result<BTreeMap<(u32, u32), CPoly>> {
    let vars = p.vars().to_vec();
    let mut seen = vec![false; vars.len()];
    for &(a, b) in pairs {
        if a >= vars.len() || b >= vars.len() || a == b || seen[a] || seen[b] {
            return Err(Error::structural("invalid coordinate pairing"));
        }
        seen[a] = true;
        seen[b] = true;
    }

    // Rewrite in (z, w = z̄) bookkeeping: the slot of x_j holds z_j, the slot of y_j holds w_j.
    let half = rat(1, 2);
    let mut to_zw: Vec<CPoly> = (0..vars.len())
        .map(|i| unit_var(&vars, i, c(Rational::one(), Rational::zero())))
        .collect();
    for &(xi, yi) in pairs {
        // x = (z + w)/2, y = (z - w)/(2i) = -i z/2 + i w/2
        to_zw[xi] = unit_var(&vars, xi, c(half.clone(), Rational::zero()))
            .try_add(&unit_var(&vars, yi, c(half.clone(), Rational::zero())))?;
        to_zw[yi] = unit_var(&vars, xi, c(Rational::zero(), -half.clone()))
            .try_add(&unit_var(&vars, yi, c(Rational::zero(), half.clone())))?;
    }
    let zw = p.substitute(&to_zw)?;

    let mut groups: BTreeMap<(u32, u32), Vec<(Vec<u32>, Complex<Rational>)>> = BTreeMap::new();
    for (e, coeff) in zw.terms() {
        let hol: u32 = pairs.iter().map(|&(xi, _)| e[xi]).sum();
        let anti: u32 = pairs.iter().map(|&(_, yi)| e[yi]).sum();
        groups.entry((hol, anti)).or_default().push((e.clone(), coeff.clone()));
    }

    // back to real coordinates: z = x + i y, w = x - i y
    let mut from_zw: Vec<CPoly> = (0..vars.len())
        .map(|i| unit_var(&vars, i, c(Rational::one(), Rational::zero())))
        .collect();
    for &(xi, yi) in pairs {
        from_zw[xi] = complex_coordinate(&vars, (xi, yi), false);
        from_zw[yi] = complex_coordinate(&vars, (xi, yi), true);
    }
    let mut out = BTreeMap::new();
    for (key, terms) in groups {
        let piece = MultiPoly::from_terms(&vars, terms)?.substitute(&from_zw)?;
        if !piece.is_zero() {
            out.insert(key, piece);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        ["x1", "y1", "x2", "y2"].iter().map(|s| s.to_string()).collect()
    }

    const PAIRS: [(usize, usize); 2] = [(0, 1), (2, 3)];

    #[test]
    fn mixed_monomial_is_pure() {
        let v = vars();
        let z1 = complex_coordinate(&v, (0, 1), false);
        let zb2 = complex_coordinate(&v, (2, 3), true);
        let p = z1.try_mul(&zb2).unwrap();
        let split = bidegree_split(&p, &PAIRS).unwrap();
        assert_eq!(split.len(), 1);
        assert_eq!(split[&(1, 1)], p);
    }

    #[test]
    fn real_part_of_square() {
        let v = vars();
        let z1 = complex_coordinate(&v, (0, 1), false);
        let re = z1.pow(2).real_part().to_complex();
        let split = bidegree_split(&re, &PAIRS).unwrap();
        assert_eq!(split.len(), 2);
        assert_eq!(split[&(2, 0)], z1.pow(2).div_rational(&rat(2, 1)));
        assert_eq!(split[&(0, 2)], z1.conj().pow(2).div_rational(&rat(2, 1)));
    }

    #[test]
    fn constant_is_zero_zero() {
        let v = vars();
        let one = CPoly::one(&v);
        let split = bidegree_split(&one, &PAIRS).unwrap();
        assert_eq!(split.keys().copied().collect::<Vec<_>>(), vec![(0, 0)]);
    }
}
