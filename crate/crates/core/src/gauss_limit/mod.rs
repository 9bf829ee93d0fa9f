//! Finite-dimensional projections of the sphere inequalities and their large-`n` limits:
//! real spheres toward Gauss space, complex spheres toward the Heisenberg group.

mod constants;
mod heisenberg;
mod projected;
mod radial;

pub use constants::{
    asymptotics_check, exp_limit_deviation, heisenberg_constant, lemma_closed_form, limit_constants,
    ln_heisenberg_constant, ln_lemma_closed_form, AsymptoticsRow, AsymptoticsTable, LimitConstants,
};
pub use heisenberg::{
    heisenberg_logsob_check, sphere_pullback, HeisenbergClosure, HeisenbergFunction, HeisenbergPoly, SpherePullback,
    HEISENBERG_FD_STEP,
};
pub use projected::projected_inequality_check;
pub use radial::{
    exploration_row, exploration_table, ln_projected_weight, radial_factor, radial_integral_i, ExplorationMeasure,
    ExplorationRow, RadialIntegral, RadialIntegralParams,
};

use crate::error::Result;

fn to_csv<T: serde::Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

impl AsymptoticsTable {
    /// Columns `k,n,d_prime_deviation,d_tilde_prime_deviation`.
    pub fn to_csv(&self) -> Result<String> {
        #[derive(serde::Serialize)]
        struct Line {
            k: u32,
            n: u32,
            d_prime_deviation: f64,
            d_tilde_prime_deviation: f64,
        }
        to_csv(self.rows.iter().map(|r| Line {
            k: self.k,
            n: r.n,
            d_prime_deviation: r.d_prime_deviation,
            d_tilde_prime_deviation: r.d_tilde_prime_deviation,
        }))
    }
}

/// One line per row; missing normalizations are empty fields.
pub fn exploration_csv(rows: &[ExplorationRow]) -> Result<String> {
    to_csv(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_output() {
        let t = asymptotics_check(2, &[10, 20]).unwrap();
        let s = t.to_csv().unwrap();
        assert!(s.starts_with("k,n,d_prime_deviation,d_tilde_prime_deviation\n2,10,"));
        assert_eq!(s.lines().count(), 3);
        let rows = exploration_table(1, &[50], false).unwrap();
        let s = exploration_csv(&rows).unwrap();
        assert!(s.lines().nth(1).unwrap().starts_with("nu,50,1,"));
        assert_eq!(s.lines().count(), 4);
    }
}
