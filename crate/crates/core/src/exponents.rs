//! Approximation-ratio exponents, evaluated exactly.
//!
//! `theta(m)` is the densest-k-subhypergraph exponent, `alpha(m)` the
//! set-union-knapsack exponent and `gamma(r)` the case threshold used by the
//! knapsack blow-up. Nothing here touches floating point: the recurrence
//! identities are checked as equalities.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{int, ratio, Rational};

/// `m/2 - 1/2 + (2a - 1)/m` without a domain check on `a`.
///
/// Used for reporting when the base oracle's exponent sits at an endpoint
/// (0 for an exact base, 1 for a linear-ratio heuristic).
pub fn theta_with_base(m: u64, alpha_base: &Rational) -> Result<Rational> {
    if m < 2 {
        return Err(Error::Domain(format!("theta needs m >= 2, got {m}")));
    }
    let m = int(m as i64);
    let two = int(2);
    Ok(&m / &two - ratio(1, 2) + (&two * alpha_base - Rational::one()) / m)
}

/// `theta_m = m/2 - 1/2 - 1/(2m)`.
pub fn theta(m: u64) -> Result<Rational> {
    theta_with_base(m, &ratio(1, 4))
}

/// `theta_m = m/2 - 1/2 + (2a - 1)/m` for a base densest-k-subgraph
/// exponent `0 < a < 1`.
pub fn theta_general(m: u64, alpha_base: &Rational) -> Result<Rational> {
    if *alpha_base <= Rational::zero() || *alpha_base >= Rational::one() {
        return Err(Error::Domain(format!(
            "base exponent must lie in (0, 1), got {alpha_base}"
        )));
    }
    theta_with_base(m, alpha_base)
}

/// `alpha_m = (2/3) [m - 1 - (2m - 2)/(m^2 + m - 1)]`; `alpha(1) = 0`.
pub fn alpha(m: u64) -> Result<Rational> {
    if m < 1 {
        return Err(Error::Domain("alpha needs m >= 1".into()));
    }
    let mr = int(m as i64);
    let inner = &mr - Rational::one() - (int(2) * &mr - int(2)) / (&mr * &mr + &mr - Rational::one());
    Ok(ratio(2, 3) * inner)
}

/// `gamma = 1 + alpha_{r-1} - alpha_r`.
pub fn gamma(r: u64) -> Result<Rational> {
    if r < 2 {
        return Err(Error::Domain(format!("gamma needs r >= 2, got {r}")));
    }
    Ok(Rational::one() + alpha(r - 1)? - alpha(r)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentTable {
    pub m: u64,
    #[serde(with = "crate::rational::as_string")]
    pub theta: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub alpha: Rational,
    /// Only defined for `m >= 3`.
    #[serde(serialize_with = "crate::rational::as_string::option::serialize")]
    pub gamma: Option<Rational>,
}

impl ExponentTable {
    pub fn for_order(m: u64) -> Result<Self> {
        Ok(ExponentTable {
            m,
            theta: theta(m)?,
            alpha: alpha(m)?,
            gamma: if m >= 3 { Some(gamma(m)?) } else { None },
        })
    }
}

pub fn table(m_max: u64) -> Result<Vec<ExponentTable>> {
    (2..=m_max).map(ExponentTable::for_order).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `1 + theta_{r-1} - theta_r/(r-1) = theta_r`
    ThetaRecurrence,
    /// `(2 + alpha_{r-1} - alpha_r) theta_r = alpha_r`
    AlphaTheta,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::ThetaRecurrence => f.write_str("theta_recurrence"),
            Identity::AlphaTheta => f.write_str("alpha_theta"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub r: u64,
    pub identity: Identity,
    pub holds: bool,
}

pub fn verify_identities(m_max: u64) -> Result<Vec<IdentityCheck>> {
    if m_max < 3 {
        return Err(Error::Domain(format!("identities need m_max >= 3, got {m_max}")));
    }
    let mut out = Vec::with_capacity(2 * (m_max as usize - 2));
    for r in 3..=m_max {
        let th_r = theta(r)?;
        let th_prev = theta(r - 1)?;
        let lhs = Rational::one() + th_prev - &th_r / int(r as i64 - 1);
        out.push(IdentityCheck {
            r,
            identity: Identity::ThetaRecurrence,
            holds: lhs == th_r,
        });

        let a_r = alpha(r)?;
        let lhs = (int(2) + alpha(r - 1)? - &a_r) * &th_r;
        out.push(IdentityCheck {
            r,
            identity: Identity::AlphaTheta,
            holds: lhs == a_r,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_examples() {
        assert_eq!(theta(2).unwrap(), ratio(1, 4));
        assert_eq!(theta(3).unwrap(), ratio(5, 6));
        assert_eq!(theta(6).unwrap(), ratio(29, 12));
        assert!(theta(1).is_err());
    }

    #[test]
    fn theta_general_examples() {
        assert_eq!(theta_general(2, &ratio(1, 4)).unwrap(), ratio(1, 4));
        assert_eq!(theta_general(4, &ratio(1, 4)).unwrap(), ratio(11, 8));
        assert_eq!(theta_general(3, &ratio(1, 2)).unwrap(), int(1));
        assert!(theta_general(3, &int(0)).is_err());
        assert!(theta_general(3, &int(1)).is_err());
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(1).unwrap(), int(0));
        assert_eq!(alpha(2).unwrap(), ratio(2, 5));
        assert_eq!(alpha(3).unwrap(), ratio(12, 11));
        assert_eq!(alpha(5).unwrap(), ratio(72, 29));
        assert!(alpha(0).is_err());
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(2).unwrap(), ratio(3, 5));
        assert_eq!(gamma(3).unwrap(), ratio(17, 55));
        assert_eq!(gamma(4).unwrap(), ratio(63, 209));
        assert!(gamma(1).is_err());
    }

    #[test]
    fn identity_lists() {
        let three = verify_identities(3).unwrap();
        assert_eq!(
            three,
            vec![
                IdentityCheck { r: 3, identity: Identity::ThetaRecurrence, holds: true },
                IdentityCheck { r: 3, identity: Identity::AlphaTheta, holds: true },
            ]
        );
        let six = verify_identities(6).unwrap();
        assert_eq!(six.len(), 8);
        assert!(six.iter().all(|c| c.holds));
        assert!(verify_identities(20).unwrap().iter().all(|c| c.holds));
        assert!(verify_identities(2).is_err());
    }

    #[test]
    fn monotone_and_bounded() {
        for m in 2..50 {
            assert!(theta(m).unwrap() < theta(m + 1).unwrap());
            assert!(alpha(m).unwrap() < alpha(m + 1).unwrap());
            assert_eq!(theta(m).unwrap(), theta_general(m, &ratio(1, 4)).unwrap());
        }
        for r in 3..=50 {
            let g = gamma(r).unwrap();
            assert!(g > int(0) && g < int(1), "gamma({r}) = {g}");
        }
    }
}
