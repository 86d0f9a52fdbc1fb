//! Existence of F-algebra homomorphisms and embeddings as integer
//! feasibility problems over the Wedderburn invariants.

use crate::arith::{enumerate_weighted_solutions, first_weighted_solution, gcd, SolutionVector};
use crate::brauer::{capacity_after_base_change, ExtensionProfile, GlobalCsa};
use crate::model::{TargetSimple, WedderburnData};
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Outcome of a feasibility query. The witness, when present, is the
/// lexicographically least assignment, listed per target factor in the
/// order the factors were given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Feasibility {
    pub feasible: bool,
    pub witness: Option<Vec<SolutionVector>>,
}

impl Feasibility {
    fn no() -> Self {
        Feasibility { feasible: false, witness: None }
    }
}

/// Is there an F-algebra homomorphism A -> B?
///
/// Per target factor j: nonnegative x_k, each a multiple of l_k, summing
/// to dim V_j. The subproblems are independent.
pub fn hom_exists(targets: &[(TargetSimple, WedderburnData)]) -> Result<Feasibility> {
    let mut witness = Vec::with_capacity(targets.len());
    for (target, w) in targets {
        let ells = w.ell_values()?;
        let mask = vec![false; ells.len()];
        match first_weighted_solution(&ells, target.module_dim, &mask) {
            Some(y) => witness.push(scale_by_ells(&y, &ells)),
            None => return Ok(Feasibility::no()),
        }
    }
    Ok(Feasibility { feasible: true, witness: Some(witness) })
}

/// Is there an F-algebra embedding A -> B?
///
/// On top of the per-j constraints of `hom_exists`, every source factor
/// must receive positive mass somewhere: the chosen supports across the
/// targets must cover the whole source index set.
pub fn embedding_exists(targets: &[(TargetSimple, WedderburnData)]) -> Result<Feasibility> {
    let universe: BTreeSet<usize> = targets
        .iter()
        .flat_map(|(_, w)| w.factors.iter().map(|f| f.source))
        .collect();
    let sources: Vec<usize> = universe.into_iter().collect();
    if sources.len() > 63 {
        return Err(Error::PreconditionViolated("too many source factors".into()));
    }
    let full: u64 = (1u64 << sources.len()) - 1;
    let bit_of = |s: usize| sources.iter().position(|&x| x == s).unwrap();

    // per target: achievable supports (as bitmasks) with one witness each
    let mut achievable: Vec<Vec<(u64, Vec<u64>)>> = Vec::with_capacity(targets.len());
    for (target, w) in targets {
        let ells = w.ell_values()?;
        let groups: Vec<usize> = w.factors.iter().map(|f| bit_of(f.source)).collect();
        let local: BTreeSet<usize> = groups.iter().copied().collect();
        let local: Vec<usize> = local.into_iter().collect();
        let mut options = Vec::new();
        for subset in 0..(1u64 << local.len()) {
            let support: u64 = local
                .iter()
                .enumerate()
                .filter(|(pos, _)| subset & (1 << pos) != 0)
                .map(|(_, &g)| 1u64 << g)
                .sum();
            if let Some(y) = solve_with_support(&ells, &groups, target.module_dim, support) {
                options.push((support, scale_by_ells(&y, &ells)));
            }
        }
        if options.is_empty() {
            return Ok(Feasibility::no());
        }
        achievable.push(options);
    }

    // cover search over the per-target supports
    let mut choice = vec![0usize; targets.len()];
    if cover_search(&achievable, 0, 0, full, &mut choice) {
        let witness = choice
            .iter()
            .enumerate()
            .map(|(j, &idx)| achievable[j][idx].1.clone())
            .collect();
        Ok(Feasibility { feasible: true, witness: Some(witness) })
    } else {
        Ok(Feasibility::no())
    }
}

fn cover_search(
    achievable: &[Vec<(u64, Vec<u64>)>],
    j: usize,
    union: u64,
    full: u64,
    choice: &mut [usize],
) -> bool {
    if j == achievable.len() {
        return union == full;
    }
    for (idx, (support, _)) in achievable[j].iter().enumerate() {
        choice[j] = idx;
        if cover_search(achievable, j + 1, union | support, full, choice) {
            return true;
        }
    }
    false
}

/// Least y >= 0 with sum(l_k y_k) = target, y zero outside the support
/// groups and positive total in each support group.
fn solve_with_support(ells: &[u64], groups: &[usize], target: u64, support: u64) -> Option<Vec<u64>> {
    fn rec(
        ells: &[u64],
        groups: &[usize],
        support: u64,
        pos: usize,
        remaining: u64,
        covered: u64,
        cur: &mut Vec<u64>,
    ) -> bool {
        if pos == ells.len() {
            return remaining == 0 && covered == support;
        }
        // a group still uncovered with no factor left cannot be fixed later
        let later: u64 = (pos..ells.len()).map(|i| 1u64 << groups[i]).fold(0, |a, b| a | b);
        if support & !covered & !later != 0 {
            return false;
        }
        let allowed = support & (1 << groups[pos]) != 0;
        let hi = if allowed { remaining / ells[pos] } else { 0 };
        for y in 0..=hi {
            cur[pos] = y;
            let c = if y > 0 { covered | (1 << groups[pos]) } else { covered };
            if rec(ells, groups, support, pos + 1, remaining - y * ells[pos], c, cur) {
                return true;
            }
        }
        cur[pos] = 0;
        false
    }
    let mut cur = vec![0u64; ells.len()];
    if rec(ells, groups, support, 0, target, 0, &mut cur) {
        Some(cur)
    } else {
        None
    }
}

fn scale_by_ells(y: &[u64], ells: &[u64]) -> Vec<u64> {
    y.iter().zip(ells).map(|(a, l)| a * l).collect()
}

/// Embedding of a semi-simple algebra into Mat_n(Delta): positive n_i
/// with n = sum n_i and [A_i:F] | n_i c_i, where c_i is the capacity of
/// `Delta (x) A_i^o` over the center of A_i.
pub fn embed_csa(factors: &[(u64, u64)], n: u64) -> Feasibility {
    assert!(
        factors.iter().all(|&(dim, c)| dim > 0 && c > 0),
        "dimensions and capacities must be positive"
    );
    if factors.is_empty() {
        return Feasibility::no();
    }
    // n_i ranges over positive multiples of dim_i / gcd(dim_i, c_i)
    let steps: Vec<u64> = factors.iter().map(|&(dim, c)| dim / gcd(dim, c)).collect();
    let mask = vec![true; steps.len()];
    match first_weighted_solution(&steps, n, &mask) {
        Some(y) => {
            let witness: Vec<u64> = y.iter().zip(&steps).map(|(a, s)| a * s).collect();
            Feasibility { feasible: true, witness: Some(vec![witness]) }
        }
        None => Feasibility::no(),
    }
}

/// The partition set P(A, B) for a simple target: all x >= 0 with
/// sum(l_i x_i) = dim_Delta V, lexicographically ascending.
pub fn partition_set(w: &WedderburnData, dim_v: u64) -> Result<Vec<SolutionVector>> {
    let ells = w.ell_values()?;
    let mask = vec![false; ells.len()];
    Ok(enumerate_weighted_solutions(&ells, dim_v, &mask))
}

/// Maximal-degree commutative case: with sum [K_i:F] = deg B, an
/// embedding exists iff every K_i splits B, i.e. every base-changed
/// invariant vanishes.
pub fn split_criterion_max_degree(centers: &[ExtensionProfile], b: &GlobalCsa) -> Result<bool> {
    let total: u64 = centers.iter().map(|k| k.degree).sum();
    if total != b.degree {
        return Err(Error::DegreeMismatch { expected: b.degree, got: total });
    }
    let index = b.index();
    for center in centers {
        if capacity_after_base_change(b, center)? != index {
            return Ok(false);
        }
    }
    Ok(true)
}
