use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{rat, rat_int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Real,
    Complex,
    Quaternionic,
    Octonionic,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "real" => Ok(Family::Real),
            "complex" => Ok(Family::Complex),
            "quaternionic" => Ok(Family::Quaternionic),
            "octonionic" => Ok(Family::Octonionic),
            other => Err(Error::domain(format!("unknown case {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Real => "real",
            Family::Complex => "complex",
            Family::Quaternionic => "quaternionic",
            Family::Octonionic => "octonionic",
        };
        f.write_str(s)
    }
}

/// One of the four rank-one geometries together with its rank parameter.
///
/// The octonionic case has no free parameter; `n` is stored as 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseId {
    pub family: Family,
    pub n: u32,
}

impl CaseId {
    pub fn new(family: Family, n: u32) -> Result<Self> {
        match family {
            Family::Octonionic => Ok(CaseId { family, n: 1 }),
            _ if n == 0 => Err(Error::domain("rank parameter n must be positive")),
            _ => Ok(CaseId { family, n }),
        }
    }

    pub fn real(n: u32) -> Self {
        Self::new(Family::Real, n).expect("n > 0")
    }

    pub fn complex(n: u32) -> Self {
        Self::new(Family::Complex, n).expect("n > 0")
    }

    pub fn quaternionic(n: u32) -> Self {
        Self::new(Family::Quaternionic, n).expect("n > 0")
    }

    pub fn octonionic() -> Self {
        CaseId {
            family: Family::Octonionic,
            n: 1,
        }
    }

    /// Dimension of the sphere S.
    pub fn sphere_dim(&self) -> usize {
        let n = self.n as usize;
        match self.family {
            Family::Real => n,
            Family::Complex => 2 * n + 1,
            Family::Quaternionic => 4 * n + 3,
            Family::Octonionic => 15,
        }
    }

    /// Dimension of the ambient Euclidean space, `sphere_dim + 1`.
    pub fn ambient_dim(&self) -> usize {
        self.sphere_dim() + 1
    }

    /// `(m_α, m_{2α})`.
    pub fn root_multiplicities(&self) -> (u32, u32) {
        let n = self.n;
        match self.family {
            Family::Real => (n, 0),
            Family::Complex => (2 * n, 1),
            Family::Quaternionic => (4 * n, 3),
            Family::Octonionic => (8, 7),
        }
    }

    /// `ρ(H₀) = (m_α + 2 m_{2α}) / 2`.
    pub fn rho(&self) -> Rational {
        let (a, b) = self.root_multiplicities();
        rat((a + 2 * b) as i64, 2)
    }

    /// Sharp constant in the log-Sobolev inequality: `1 / m_α`.
    pub fn sharp_constant(&self) -> Rational {
        rat(1, self.root_multiplicities().0 as i64)
    }

    /// Parameter of the second-order differential intertwiner.
    ///
    /// ν for the classical cases; for the octonionic case the shifted parameter r = 1.
    pub fn special_parameter(&self) -> Rational {
        let n = self.n as i64;
        match self.family {
            Family::Real => rat(n - 2, 2),
            Family::Complex => rat_int(n),
            Family::Quaternionic => rat_int(2 * n + 2),
            Family::Octonionic => rat_int(1),
        }
    }

    /// Dimension of the horizontal distribution (equals `m_α`).
    pub fn horizontal_dim(&self) -> usize {
        self.root_multiplicities().0 as usize
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Octonionic => write!(f, "octonionic"),
            fam => write!(f, "{fam}(n={})", self.n),
        }
    }
}

/// Label of an irreducible K-type in L²(S).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KTypeLabel {
    Real { k: u32 },
    Complex { p: u32, q: u32 },
    /// `p ≥ q ≥ 0`, `p − q` even.
    Quaternionic { p: u32, q: u32 },
    /// `N ≥ j ≥ 0`, `N − j` even; `N` is the spherical-harmonic degree.
    Octonionic { big_n: u32, j: u32 },
}

impl KTypeLabel {
    pub fn family(&self) -> Family {
        match self {
            KTypeLabel::Real { .. } => Family::Real,
            KTypeLabel::Complex { .. } => Family::Complex,
            KTypeLabel::Quaternionic { .. } => Family::Quaternionic,
            KTypeLabel::Octonionic { .. } => Family::Octonionic,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            KTypeLabel::Real { .. } | KTypeLabel::Complex { .. } => Ok(()),
            KTypeLabel::Quaternionic { p, q } => {
                if p < q || (p - q) % 2 != 0 {
                    Err(Error::domain(format!(
                        "quaternionic label needs p >= q and p - q even, got ({p},{q})"
                    )))
                } else {
                    Ok(())
                }
            }
            KTypeLabel::Octonionic { big_n, j } => {
                if big_n < j || (big_n - j) % 2 != 0 {
                    Err(Error::domain(format!(
                        "octonionic label needs N >= j and N - j even, got ({big_n},{j})"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub(crate) fn check_case(&self, case: &CaseId) -> Result<()> {
        if self.family() != case.family {
            return Err(Error::domain(format!("label {self} does not belong to case {case}")));
        }
        self.validate()
    }

    /// Degree of the spherical harmonics carrying this K-type.
    pub fn degree(&self) -> u32 {
        match *self {
            KTypeLabel::Real { k } => k,
            KTypeLabel::Complex { p, q } => p + q,
            KTypeLabel::Quaternionic { p, .. } => p,
            KTypeLabel::Octonionic { big_n, .. } => big_n,
        }
    }

    /// Signed secondary parameter `j = p − q` of the complex case.
    pub fn complex_signed_j(&self) -> Option<i64> {
        match *self {
            KTypeLabel::Complex { p, q } => Some(p as i64 - q as i64),
            _ => None,
        }
    }

    /// `(r, s) = ((p − q)/2, (p + q)/2)` of the quaternionic case.
    pub fn quaternionic_rs(&self) -> Option<(u32, u32)> {
        match *self {
            KTypeLabel::Quaternionic { p, q } => Some(((p - q) / 2, (p + q) / 2)),
            _ => None,
        }
    }

    /// `(k, j)` with `N = j + 2k` for the octonionic case.
    pub fn octonionic_kj(&self) -> Option<(u32, u32)> {
        match *self {
            KTypeLabel::Octonionic { big_n, j } => Some(((big_n - j) / 2, j)),
            _ => None,
        }
    }

    /// Highest weight of the Spin(9) representation, `(k + j/2, j/2, j/2, j/2)`.
    ///
    /// Carried as metadata only.
    pub fn octonionic_highest_weight(&self) -> Option<[Rational; 4]> {
        self.octonionic_kj().map(|(k, j)| {
            let half_j = rat(j as i64, 2);
            [
                rat_int(k as i64) + half_j.clone(),
                half_j.clone(),
                half_j.clone(),
                half_j,
            ]
        })
    }
}

impl fmt::Display for KTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            KTypeLabel::Real { k } => write!(f, "k={k}"),
            KTypeLabel::Complex { p, q } | KTypeLabel::Quaternionic { p, q } => {
                write!(f, "(p,q)=({p},{q})")
            }
            KTypeLabel::Octonionic { big_n, j } => write!(f, "(N,j)=({big_n},{j})"),
        }
    }
}

/// All K-type labels of degree at most `max_degree`, ordered by degree.
pub fn enumerate_ktypes(case: &CaseId, max_degree: u32) -> Vec<KTypeLabel> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        match case.family {
            Family::Real => out.push(KTypeLabel::Real { k: d }),
            Family::Complex => {
                for q in 0..=d {
                    out.push(KTypeLabel::Complex { p: d - q, q });
                }
            }
            Family::Quaternionic => {
                for q in (0..=d).rev().filter(|q| (d - q) % 2 == 0) {
                    out.push(KTypeLabel::Quaternionic { p: d, q });
                }
            }
            Family::Octonionic => {
                for j in (0..=d).rev().filter(|j| (d - j) % 2 == 0) {
                    out.push(KTypeLabel::Octonionic { big_n: d, j });
                }
            }
        }
    }
    out
}
