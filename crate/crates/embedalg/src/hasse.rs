//! Local feasibility, the obstruction vector in ⊕_w Q/Z, the
//! local-global verdict for embedding a field K into a central simple
//! algebra A, and the constructor for pairs where the local-global
//! principle fails.

use crate::arith::{enumerate_weighted_solutions, first_weighted_solution, QModZ, Rational, SolutionVector};
use crate::brauer::{
    capacity_after_base_change, local_capacity, ExtensionProfile, GlobalCsa, PlaceKind, SplitPart,
};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// Local data at one K-place over a fixed base place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WReport {
    pub id: String,
    pub k_w: u64,
    pub c_w: u64,
    pub ell_w: u64,
}

/// Feasibility of local embeddings K_v -> A_v at one base place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalReport {
    pub place: String,
    pub d_v: u64,
    pub s_v: u64,
    pub per_w: Vec<WReport>,
    pub feasible: bool,
    /// All positive solutions of sum(l_w x_w) = n s_v, when requested.
    pub representatives: Vec<SolutionVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionEntry {
    pub x: Rational,
    pub class: QModZ,
}

/// The element (x̄_w) attached to the pair (K, A), indexed by K-places
/// over the base places with nontrivial local index.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Obstruction {
    pub entries: BTreeMap<String, ObstructionEntry>,
}

impl Obstruction {
    pub fn vanishes(&self) -> bool {
        self.entries.values().all(|e| e.class.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HasseVerdict {
    GlobalEmbedding,
    LocalObstruction(Vec<String>),
    HassePrincipleFailure,
}

/// Local embedding feasibility at `place`: does sum(l_w x_w) = n s_v
/// admit an all-positive solution?
///
/// A place with local index 1 needs no splitting data; there the uniform
/// solution x_w = deg(A)/k works whenever k divides deg(A).
pub fn local_report(
    a: &GlobalCsa,
    k: &ExtensionProfile,
    place: &str,
    enumerate: bool,
) -> Result<LocalReport> {
    let index = a.index();
    let n = a.degree / index;
    let d_v = a.local_index(place);
    let s_v = index / d_v;
    let parts = match k.parts_over(place) {
        Some(parts) => parts,
        None if d_v == 1 => {
            return Ok(LocalReport {
                place: place.to_string(),
                d_v,
                s_v,
                per_w: Vec::new(),
                feasible: a.degree % k.degree == 0,
                representatives: Vec::new(),
            });
        }
        None => return Err(Error::MissingSplittingData { place: place.to_string() }),
    };
    let per_w: Vec<WReport> = parts
        .iter()
        .map(|p| {
            let c_w = local_capacity(d_v, p.degree);
            WReport { id: p.id.clone(), k_w: p.degree, c_w, ell_w: p.degree / c_w }
        })
        .collect();
    let ells: Vec<u64> = per_w.iter().map(|w| w.ell_w).collect();
    let mask = vec![true; ells.len()];
    let target = n * s_v;
    let feasible = first_weighted_solution(&ells, target, &mask).is_some();
    let representatives = if enumerate {
        enumerate_weighted_solutions(&ells, target, &mask)
    } else {
        Vec::new()
    };
    Ok(LocalReport { place: place.to_string(), d_v, s_v, per_w, feasible, representatives })
}

/// The obstruction vector: x_w = c(A_v) gcd(k_w, d_v) / [K:F] with
/// c(A_v) = n s_v, one entry per K-place over a base place with d_v > 1.
pub fn obstruction(a: &GlobalCsa, k: &ExtensionProfile) -> Result<Obstruction> {
    if a.degree % k.degree != 0 {
        return Err(Error::DegreeNotDividing { k: k.degree, degree: a.degree });
    }
    let index = a.index();
    let n = a.degree / index;
    let mut entries = BTreeMap::new();
    for (place, li) in a.invariants() {
        let d_v = li.inv.denominator();
        if d_v == 1 {
            continue;
        }
        let parts = k
            .parts_over(place)
            .ok_or_else(|| Error::MissingSplittingData { place: place.to_string() })?;
        let s_v = index / d_v;
        for part in parts {
            let c_w = local_capacity(d_v, part.degree);
            let x = Rational::new((n * s_v * c_w) as i64, k.degree);
            entries.insert(part.id.clone(), ObstructionEntry { x, class: QModZ::from_rational(x) });
        }
    }
    Ok(Obstruction { entries })
}

/// The local-global trichotomy: some place locally infeasible, or a
/// global embedding, or everywhere-local feasibility with a nonzero
/// obstruction class (failure of the Hasse principle).
pub fn hasse_verdict(
    a: &GlobalCsa,
    k: &ExtensionProfile,
) -> Result<(HasseVerdict, Vec<LocalReport>, Obstruction)> {
    a.validate()?;
    if a.degree % k.degree != 0 {
        return Err(Error::DegreeNotDividing { k: k.degree, degree: a.degree });
    }
    let places: BTreeSet<String> = a
        .invariants()
        .map(|(p, _)| p.to_string())
        .chain(k.places().map(|p| p.to_string()))
        .collect();
    let mut reports = Vec::new();
    for place in &places {
        reports.push(local_report(a, k, place, false)?);
    }
    let obs = obstruction(a, k)?;
    let infeasible: Vec<String> =
        reports.iter().filter(|r| !r.feasible).map(|r| r.place.clone()).collect();
    let verdict = if !infeasible.is_empty() {
        HasseVerdict::LocalObstruction(infeasible)
    } else if obs.vanishes() {
        HasseVerdict::GlobalEmbedding
    } else {
        HasseVerdict::HassePrincipleFailure
    };
    // the obstruction route must agree with the capacity route k | n c
    let c = capacity_after_base_change(a, k)?;
    let n = a.capacity();
    debug_assert_eq!(
        verdict == HasseVerdict::GlobalEmbedding,
        (n * c) % k.degree == 0,
        "obstruction and capacity criteria disagree for ({k:?}, {a:?})"
    );
    Ok((verdict, reports, obs))
}

/// Builds the failing family: a division algebra of degree
/// delta = p_1^{n_1} ... p_r^{n_r} with invariants ±1/p_i^{n_i} at 2r
/// fresh places, and a degree-k extension totally split at all of them.
pub fn construct_counterexample(
    k: u64,
    delta_factorization: &[(u64, u32)],
) -> Result<(GlobalCsa, ExtensionProfile)> {
    let precondition = |msg: &str| Err(Error::PreconditionViolated(msg.to_string()));
    if delta_factorization.len() < 2 {
        return precondition("at least two distinct prime factors are required");
    }
    let mut seen = BTreeSet::new();
    for &(p, n) in delta_factorization {
        if !is_prime(p) {
            return precondition("factorization entries must be prime");
        }
        if n == 0 {
            return precondition("prime exponents must be positive");
        }
        if !seen.insert(p) {
            return precondition("prime factors must be distinct");
        }
    }
    let prime_powers: Vec<u64> = delta_factorization
        .iter()
        .map(|&(p, n)| p.checked_pow(n).expect("integer overflow in prime power"))
        .collect();
    let delta = prime_powers
        .iter()
        .try_fold(1u64, |acc, &q| acc.checked_mul(q))
        .expect("integer overflow in delta");
    if k < 2 {
        return precondition("the extension degree k must be at least 2");
    }
    if delta % k != 0 {
        return precondition("k must divide delta");
    }
    if prime_powers.iter().any(|&q| k > delta / q) {
        return precondition("k must be at most delta / p_i^{n_i} for every i");
    }

    let mut entries = Vec::new();
    let mut splitting = BTreeMap::new();
    for (i, &q) in prime_powers.iter().enumerate() {
        for (label, num) in [(format!("v{}", i + 1), 1i64), (format!("v{}'", i + 1), -1i64)] {
            entries.push((label.clone(), PlaceKind::Finite, QModZ::new(num, q)));
            let parts = (1..=k)
                .map(|j| SplitPart { id: format!("{label}:{j}"), degree: 1 })
                .collect();
            splitting.insert(label, parts);
        }
    }
    let algebra = GlobalCsa::new(delta, entries)?;
    let profile = ExtensionProfile::new(k, splitting)?;
    debug_assert!(algebra.validate().is_ok());
    Ok((algebra, profile))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running_instance() -> (GlobalCsa, ExtensionProfile) {
        construct_counterexample(2, &[(2, 1), (3, 1)]).unwrap()
    }

    #[test]
    fn running_instance_local_reports() {
        let (a, k) = running_instance();
        // v1: d = 2, s = 3, two K-places of degree 1
        let r = local_report(&a, &k, "v1", true).unwrap();
        assert_eq!((r.d_v, r.s_v), (2, 3));
        assert!(r.feasible);
        assert_eq!(r.representatives, vec![vec![1, 2], vec![2, 1]]);
        assert!(r.per_w.iter().all(|w| w.c_w == 1 && w.ell_w == 1));
        // v2: d = 3, s = 2
        let r = local_report(&a, &k, "v2", true).unwrap();
        assert_eq!((r.d_v, r.s_v), (3, 2));
        assert!(r.feasible);
        assert_eq!(r.representatives, vec![vec![1, 1]]);
    }

    #[test]
    fn running_instance_obstruction() {
        let (a, k) = running_instance();
        let obs = obstruction(&a, &k).unwrap();
        let e = &obs.entries["v1:1"];
        assert_eq!(e.x, Rational::new(3, 2));
        assert_eq!(e.class, QModZ::new(1, 2));
        let e = &obs.entries["v2:1"];
        assert_eq!(e.x, Rational::new(1, 1));
        assert!(e.class.is_zero());
        assert!(!obs.vanishes());
    }

    #[test]
    fn running_instance_verdict_fails_hasse() {
        let (a, k) = running_instance();
        let (verdict, reports, obs) = hasse_verdict(&a, &k).unwrap();
        assert_eq!(verdict, HasseVerdict::HassePrincipleFailure);
        assert!(reports.iter().all(|r| r.feasible));
        assert!(!obs.vanishes());
    }

    #[test]
    fn quaternion_split_by_quadratic_field() {
        let a = GlobalCsa::new(
            2,
            vec![
                ("p2".to_string(), PlaceKind::Finite, QModZ::new(1, 2)),
                ("oo".to_string(), PlaceKind::Real, QModZ::new(1, 2)),
            ],
        )
        .unwrap();
        let k = ExtensionProfile::new(
            2,
            [
                ("p2".to_string(), vec![SplitPart { id: "w2".into(), degree: 2 }]),
                ("oo".to_string(), vec![SplitPart { id: "woo".into(), degree: 2 }]),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let (verdict, _, obs) = hasse_verdict(&a, &k).unwrap();
        assert_eq!(verdict, HasseVerdict::GlobalEmbedding);
        assert!(obs.vanishes());
        // the integrality property: every x_w is a positive integer
        assert!(obs.entries.values().all(|e| e.x.is_integer() && e.x.numerator() > 0));
    }

    #[test]
    fn local_obstruction_when_too_many_positive_parts() {
        let a = GlobalCsa::new(
            3,
            vec![
                ("v".to_string(), PlaceKind::Finite, QModZ::new(1, 3)),
                ("v'".to_string(), PlaceKind::Finite, QModZ::new(2, 3)),
            ],
        )
        .unwrap();
        let k = ExtensionProfile::new(
            3,
            [
                (
                    "v".to_string(),
                    vec![
                        SplitPart { id: "w1".into(), degree: 1 },
                        SplitPart { id: "w2".into(), degree: 1 },
                        SplitPart { id: "w3".into(), degree: 1 },
                    ],
                ),
                ("v'".to_string(), vec![SplitPart { id: "u".into(), degree: 3 }]),
            ]
            .into_iter()
            .collect(),
        )
        .unwrap();
        let (verdict, _, _) = hasse_verdict(&a, &k).unwrap();
        assert_eq!(verdict, HasseVerdict::LocalObstruction(vec!["v".to_string()]));
    }

    #[test]
    fn split_place_report_is_synthetic() {
        let a = GlobalCsa::split(4);
        let k = ExtensionProfile::unspecified(2);
        let r = local_report(&a, &k, "anywhere", false).unwrap();
        assert!(r.feasible);
        assert!(r.per_w.is_empty());
        let k3 = ExtensionProfile::unspecified(3);
        let r = local_report(&a, &k3, "anywhere", false).unwrap();
        assert!(!r.feasible); // 3 does not divide 4
    }

    #[test]
    fn counterexample_preconditions() {
        assert!(matches!(
            construct_counterexample(4, &[(2, 3)]),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            construct_counterexample(2, &[(2, 1), (2, 1)]),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            construct_counterexample(2, &[(4, 1), (3, 1)]),
            Err(Error::PreconditionViolated(_))
        ));
        // k > delta / p_i^{n_i}
        assert!(matches!(
            construct_counterexample(3, &[(2, 1), (3, 1)]),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(construct_counterexample(2, &[(2, 2), (3, 1)]).is_ok());
    }

    #[test]
    fn counterexample_always_fails_hasse() {
        for (k, fact) in [
            (2u64, vec![(2u64, 1u32), (3, 1)]),
            (2, vec![(2, 2), (3, 1)]),
            (3, vec![(3, 1), (2, 2)]),
            (2, vec![(2, 1), (3, 1), (5, 1)]),
        ] {
            let (a, profile) = construct_counterexample(k, &fact).unwrap();
            assert!(a.validate().is_ok());
            let (verdict, reports, _) = hasse_verdict(&a, &profile).unwrap();
            assert!(reports.iter().all(|r| r.feasible), "k={k} {fact:?}");
            assert_eq!(verdict, HasseVerdict::HassePrincipleFailure, "k={k} {fact:?}");
        }
    }

    #[test]
    fn obstruction_requires_divisible_degree() {
        let (a, _) = running_instance();
        let k = ExtensionProfile::unspecified(4);
        assert_eq!(
            obstruction(&a, &k),
            Err(Error::DegreeNotDividing { k: 4, degree: 6 })
        );
    }
}
