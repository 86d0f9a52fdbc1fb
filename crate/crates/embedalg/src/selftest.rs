//! Seeded randomized cross-checks between independent computation paths.
//!
//! Each suite compares two routes to the same answer on generated valid
//! instances and reports any disagreement. The generators only use the
//! seed passed in, so a failure is reproducible from its report line.

use crate::arith::QModZ;
use crate::brauer::{capacity_after_base_change, ExtensionProfile, GlobalCsa, PlaceKind, SplitPart};
use crate::embed::{embed_csa, embedding_exists, partition_set, split_criterion_max_degree};
use crate::hasse::{hasse_verdict, HasseVerdict};
use crate::model::{
    wedderburn_from_global, GlobalSourceFactor, LocalRing, TargetSimple, TensorFactor,
    WedderburnData,
};
use crate::orbit::{orbit_count, OrbitCount};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub disagreements: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Runs every suite with the same seed and case count.
pub fn run_all(seed: u64, count: usize) -> Vec<SuiteReport> {
    vec![
        agreement_suite(seed, count),
        cor_max_degree_suite(seed, count),
        maximal_subfield_suite(seed, count),
        separable_orbit_suite(seed, count),
    ]
}

/// A random valid CSA: degree at most 24, a handful of finite places
/// with invariants closed off to sum to zero.
fn random_valid_csa(rng: &mut ChaCha8Rng) -> GlobalCsa {
    loop {
        let r = rng.gen_range(1..=3);
        let mut entries = Vec::new();
        let mut sum = QModZ::ZERO;
        for i in 0..r {
            let den = [2u64, 3, 4][rng.gen_range(0..3)];
            let num = rng.gen_range(1..den) as i64;
            let inv = QModZ::new(num, den);
            sum = sum.add(&inv);
            entries.push((format!("q{i}"), PlaceKind::Finite, inv));
        }
        if !sum.is_zero() {
            entries.push(("q*".to_string(), PlaceKind::Finite, sum.neg()));
        }
        let a = GlobalCsa::new(1, entries.clone()).unwrap();
        let delta = a.index();
        if delta > 24 {
            continue;
        }
        let n = rng.gen_range(1..=(24 / delta));
        let a = GlobalCsa::new(n * delta, entries).unwrap();
        debug_assert!(a.validate().is_ok());
        return a;
    }
}

/// A random composition of `total` into positive parts.
fn random_composition(rng: &mut ChaCha8Rng, total: u64) -> Vec<u64> {
    let mut parts = Vec::new();
    let mut left = total;
    while left > 0 {
        let part = rng.gen_range(1..=left);
        parts.push(part);
        left -= part;
    }
    parts
}

/// A degree-k profile listing every place of `a`, with random local
/// partitions; `tag` keeps part ids unique across several profiles.
fn random_profile(rng: &mut ChaCha8Rng, a: &GlobalCsa, k: u64, tag: usize) -> ExtensionProfile {
    let mut splitting = BTreeMap::new();
    for (place, _) in a.invariants() {
        let parts = random_composition(rng, k)
            .into_iter()
            .enumerate()
            .map(|(j, degree)| SplitPart { id: format!("{place}.{tag}.{j}"), degree })
            .collect();
        splitting.insert(place.to_string(), parts);
    }
    ExtensionProfile::new(k, splitting).unwrap()
}

fn random_divisor_of(rng: &mut ChaCha8Rng, n: u64, cap: u64) -> u64 {
    let divisors: Vec<u64> = (1..=n.min(cap)).filter(|d| n % d == 0).collect();
    divisors[rng.gen_range(0..divisors.len())]
}

/// Obstruction route vs capacity route for the field-into-CSA problem:
/// the verdict is GlobalEmbedding exactly when k divides n*c.
pub fn agreement_suite(seed: u64, count: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disagreements = Vec::new();
    for case in 0..count {
        let a = random_valid_csa(&mut rng);
        let k = random_divisor_of(&mut rng, a.degree, 6);
        let profile = random_profile(&mut rng, &a, k, 0);
        let (verdict, _, _) = hasse_verdict(&a, &profile).unwrap();
        let c = capacity_after_base_change(&a, &profile).unwrap();
        let capacity_route = (a.capacity() * c) % k == 0;
        if (verdict == HasseVerdict::GlobalEmbedding) != capacity_route {
            disagreements.push(format!("case {case}: verdict {verdict:?} vs k|nc = {capacity_route}"));
        }
    }
    SuiteReport { name: "hasse-agreement", cases: count, disagreements }
}

/// Maximal-total-degree commutative sources: embedding feasibility must
/// match the "every K_i splits B" criterion.
pub fn cor_max_degree_suite(seed: u64, count: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disagreements = Vec::new();
    for case in 0..count {
        let b = random_valid_csa(&mut rng);
        let degrees = random_composition(&mut rng, b.degree);
        let centers: Vec<ExtensionProfile> = degrees
            .iter()
            .enumerate()
            .map(|(i, &k)| random_profile(&mut rng, &b, k, i))
            .collect();
        let index = b.index();
        let target = TargetSimple::new(index * index, b.capacity()).unwrap();
        let mut factors = Vec::new();
        for (i, center) in centers.iter().enumerate() {
            let src = GlobalSourceFactor::field(center.clone());
            let w = wedderburn_from_global(&b, &src).unwrap();
            for f in w.factors {
                factors.push(TensorFactor { source: i, ..f });
            }
        }
        let w = WedderburnData::new(index * index, factors).unwrap();
        let via_solver = embedding_exists(&[(target, w)]).unwrap().feasible;
        let via_splitting = split_criterion_max_degree(&centers, &b).unwrap();
        if via_solver != via_splitting {
            disagreements.push(format!(
                "case {case}: solver {via_solver} vs splitting criterion {via_splitting}"
            ));
        }
    }
    SuiteReport { name: "max-degree-splitting", cases: count, disagreements }
}

/// [K:F] = deg A: K embeds exactly when the base-changed capacity equals
/// the index (K is then a maximal subfield, i.e. a splitting field).
pub fn maximal_subfield_suite(seed: u64, count: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disagreements = Vec::new();
    for case in 0..count {
        let a = random_valid_csa(&mut rng);
        let k = a.degree;
        let profile = random_profile(&mut rng, &a, k, 0);
        let c = capacity_after_base_change(&a, &profile).unwrap();
        let feasible = embed_csa(&[(k, c)], a.capacity()).feasible;
        let splits = c == a.index();
        if feasible != splits {
            disagreements.push(format!("case {case}: embed {feasible} vs splits {splits}"));
        }
    }
    SuiteReport { name: "maximal-subfield", cases: count, disagreements }
}

/// Separable factors only: the orbit count equals |P(A,B)| exactly.
pub fn separable_orbit_suite(seed: u64, count: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disagreements = Vec::new();
    for case in 0..count {
        let t = rng.gen_range(1..=4);
        let factors = (0..t)
            .map(|i| TensorFactor {
                source: i,
                m: rng.gen_range(1..=5),
                dim_d: 1,
                local_ring: LocalRing::SEPARABLE,
            })
            .collect();
        let w = WedderburnData::new(1, factors).unwrap();
        let dim_v = rng.gen_range(0..=20);
        let expected = match partition_set(&w, dim_v).unwrap().len() {
            0 => OrbitCount::Empty,
            len => OrbitCount::Finite(len as u128),
        };
        let got = orbit_count(&w, dim_v, true).unwrap();
        if got != expected {
            disagreements.push(format!("case {case}: {got:?} vs {expected:?}"));
        }
    }
    SuiteReport { name: "separable-orbit-count", cases: count, disagreements }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_on_default_seeds() {
        for seed in [0, 1, 42] {
            for report in run_all(seed, 200) {
                assert!(
                    report.passed(),
                    "suite {} failed: {:?}",
                    report.name,
                    report.disagreements
                );
            }
        }
    }

    #[test]
    fn generator_respects_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = random_valid_csa(&mut rng);
            assert!(a.degree <= 24);
            assert!(a.validate().is_ok());
        }
    }

    #[test]
    fn suites_are_deterministic_in_the_seed() {
        let a = agreement_suite(5, 50);
        let b = agreement_suite(5, 50);
        assert_eq!(a.cases, b.cases);
        assert_eq!(a.disagreements, b.disagreements);
    }
}
