use super::poly::{Coefficient, MultiPoly};
use crate::error::{Error, Result};

/// `Σ_i c_i(x) ∂/∂x_i` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstOrderOperator<C: Coefficient> {
    coefficients: Vec<MultiPoly<C>>,
}

impl<C: Coefficient> FirstOrderOperator<C> {
    pub fn new(coefficients: Vec<MultiPoly<C>>) -> Result<Self> {
        let n = coefficients
            .first()
            .map(|c| c.nvars())
            .ok_or_else(|| Error::structural("operator needs at least one variable"))?;
        if coefficients.len() != n {
            return Err(Error::structural(format!(
                "{} coefficients for {n} variables",
                coefficients.len()
            )));
        }
        if coefficients.iter().any(|c| c.vars() != coefficients[0].vars()) {
            return Err(Error::structural("coefficients use different variable lists"));
        }
        Ok(FirstOrderOperator { coefficients })
    }

    /// `∂/∂name`.
    pub fn partial<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self> {
        let zero = MultiPoly::<C>::zero(vars);
        let i = zero.index_of(name)?;
        let mut coeffs = vec![zero.clone(); vars.len()];
        coeffs[i] = MultiPoly::one(vars);
        Self::new(coeffs)
    }

    pub fn coefficients(&self) -> &[MultiPoly<C>] {
        &self.coefficients
    }

    pub fn vars(&self) -> &[String] {
        self.coefficients[0].vars()
    }

    pub fn apply(&self, p: &MultiPoly<C>) -> Result<MultiPoly<C>> {
        if p.vars() != self.vars() {
            return Err(Error::structural("operator and polynomial variables differ"));
        }
        let mut out = MultiPoly::zero(p.vars());
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.try_add(&c.try_mul(&p.differentiate_index(i))?)?;
        }
        Ok(out)
    }

    /// `V + W`.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let coeffs = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &C) -> Self {
        FirstOrderOperator {
            coefficients: self.coefficients.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// The commutator `[self, other]`, again a first-order operator.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        if self.vars() != other.vars() {
            return Err(Error::structural("operator variables differ"));
        }
        let coeffs = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| other.apply(a).and_then(|ba| self.apply(b)?.try_sub(&ba)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }
}

pub fn apply_operator<C: Coefficient>(
    v: &FirstOrderOperator<C>,
    p: &MultiPoly<C>,
) -> Result<MultiPoly<C>> {
    v.apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::poly::{rat_int, Rational};

    #[test]
    fn partial_on_square() {
        let v = ["x", "y"];
        let d = FirstOrderOperator::<Rational>::partial(&v, "x").unwrap();
        let x = MultiPoly::var(&v, "x").unwrap();
        assert_eq!(apply_operator(&d, &x.pow(2)).unwrap(), x.scale_rational(&rat_int(2)));
    }

    #[test]
    fn rejects_wrong_length() {
        let v = ["x", "y"];
        let zero = MultiPoly::<Rational>::zero(&v);
        assert!(matches!(FirstOrderOperator::new(vec![zero]), Err(Error::Structural(_))));
    }

    #[test]
    fn partials_commute() {
        let v = ["x", "y"];
        let dx = FirstOrderOperator::<Rational>::partial(&v, "x").unwrap();
        let dy = FirstOrderOperator::<Rational>::partial(&v, "y").unwrap();
        let c = dx.commutator(&dy).unwrap();
        assert!(c.coefficients().iter().all(|p| p.is_zero()));
    }
}
