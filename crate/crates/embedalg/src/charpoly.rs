//! Is a monic polynomial, given by its factorization profile, the
//! characteristic polynomial of some element of Mat_n(Delta)?
//!
//! Inputs are factorization profiles (degree, multiplicity, and the
//! splitting profile of the root field), never raw coefficients: the
//! criterion only consumes those invariants, and factoring over number
//! fields is out of scope.

use crate::arith::gcd;
use crate::brauer::{capacity_after_base_change, ExtensionProfile, GlobalCsa};
use crate::{Error, Result};

/// One irreducible factor p_i(t)^{a_i} with the profile of
/// F_i = F[t]/(p_i).
#[derive(Clone, Debug)]
pub struct PolyFactor {
    pub degree: u64,
    pub multiplicity: u64,
    pub field_profile: Option<ExtensionProfile>,
}

/// Per-factor verdict: the forced block size n_i, the capacity used in
/// the divisibility test, and whether the factor passes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub n_i: u64,
    pub c_i: u64,
    pub pass: bool,
}

/// Global-field criterion: each factor needs a positive n_i with
/// a_i deg p_i = n_i d and [F_i:F] | n_i c(Delta (x) F_i).
pub fn charpoly_admissible_global(
    factors: &[PolyFactor],
    delta: &GlobalCsa,
    n: u64,
) -> Result<(bool, Vec<FactorReport>)> {
    delta.validate()?;
    if delta.index() != delta.degree {
        return Err(Error::PreconditionViolated(
            "delta must be presented as its division part (degree = index)".into(),
        ));
    }
    let d = delta.degree;
    check_total_degree(factors.iter().map(|f| (f.degree, f.multiplicity)), n, d)?;
    let mut reports = Vec::with_capacity(factors.len());
    let mut all = true;
    for factor in factors {
        let profile = factor.field_profile.as_ref().ok_or_else(|| {
            Error::PreconditionViolated("every factor needs a field profile in global mode".into())
        })?;
        if profile.degree != factor.degree {
            return Err(Error::DegreeMismatch { expected: factor.degree, got: profile.degree });
        }
        let a_deg = factor.multiplicity * factor.degree;
        if a_deg % d != 0 {
            return Err(Error::NonIntegralN { a_deg, d });
        }
        let n_i = a_deg / d;
        let c_i = capacity_after_base_change(delta, profile)?;
        let pass = (n_i * c_i) % factor.degree == 0;
        all &= pass;
        reports.push(FactorReport { n_i, c_i, pass });
    }
    Ok((all, reports))
}

/// Non-Archimedean local criterion: condition (a) plus
/// deg p_i | n_i gcd(d, deg p_i).
pub fn charpoly_admissible_local(
    factors: &[(u64, u64)],
    d: u64,
    n: u64,
) -> Result<(bool, Vec<FactorReport>)> {
    assert!(d > 0, "index must be positive");
    check_total_degree(factors.iter().copied(), n, d)?;
    let mut reports = Vec::with_capacity(factors.len());
    let mut all = true;
    for &(deg, mult) in factors {
        let a_deg = mult * deg;
        let c_i = gcd(d, deg);
        let report = if a_deg % d != 0 {
            FactorReport { n_i: 0, c_i, pass: false }
        } else {
            let n_i = a_deg / d;
            FactorReport { n_i, c_i, pass: (n_i * c_i) % deg == 0 }
        };
        all &= report.pass;
        reports.push(report);
    }
    Ok((all, reports))
}

fn check_total_degree(factors: impl Iterator<Item = (u64, u64)>, n: u64, d: u64) -> Result<()> {
    let total: u64 = factors.map(|(deg, mult)| deg.checked_mul(mult).expect("overflow")).sum();
    let expected = n.checked_mul(d).expect("overflow");
    if total != expected {
        return Err(Error::DegreeMismatch { expected, got: total });
    }
    Ok(())
}
