//! End-to-end acceptance checks. Each test prints one pass line so the
//! suite doubles as a release gate report.

use embedalg::arith::{restricted_partition_count, QModZ};
use embedalg::brauer::{GlobalCsa, PlaceKind};
use embedalg::embed::{embed_csa, embedding_exists, hom_exists, partition_set};
use embedalg::hasse::{construct_counterexample, hasse_verdict, HasseVerdict};
use embedalg::model::{LocalRing, TargetSimple, TensorFactor, WedderburnData};
use embedalg::orbit::{orbit_count, OrbitCount};
use embedalg::selftest;
use embedalg::Error;
use std::time::Instant;

#[test]
fn criterion_1_counterexample_regression() {
    let start = Instant::now();
    for (k, fact, class_place) in [
        (2u64, vec![(2u64, 1u32), (3, 1)], "v1:1"),
        (2, vec![(2, 2), (3, 1)], "v1:1"),
    ] {
        let (a, profile) = construct_counterexample(k, &fact).unwrap();
        let (verdict, reports, obs) = hasse_verdict(&a, &profile).unwrap();
        assert!(reports.iter().all(|r| r.feasible), "{fact:?}");
        assert_eq!(verdict, HasseVerdict::HassePrincipleFailure, "{fact:?}");
        assert!(!obs.entries[class_place].class.is_zero(), "{fact:?}");
        // delta = 6: the class over the 2-adic pair place is exactly 1/2
        if fact == [(2, 1), (3, 1)] {
            assert_eq!(obs.entries["v1:1"].class, QModZ::new(1, 2));
        }
        let c = embedalg::brauer::capacity_after_base_change(&a, &profile).unwrap();
        assert!(!embed_csa(&[(k, c)], a.capacity()).feasible, "{fact:?}");
        assert!(start.elapsed().as_millis() < 100, "too slow: {:?}", start.elapsed());
    }
    println!("criterion 1: PASS");
}

#[test]
fn criterion_2_obstruction_capacity_agreement() {
    let start = Instant::now();
    let report = selftest::agreement_suite(20260823, 200);
    assert_eq!(report.cases, 200);
    assert!(report.passed(), "{:?}", report.disagreements);
    assert!(start.elapsed().as_secs() < 5, "too slow: {:?}", start.elapsed());
    println!("criterion 2: PASS");
}

#[test]
fn criterion_3_max_degree_splitting_equivalence() {
    let report = selftest::cor_max_degree_suite(20260823, 100);
    assert_eq!(report.cases, 100);
    assert!(report.passed(), "{:?}", report.disagreements);
    println!("criterion 3: PASS");
}

#[test]
fn criterion_4_maximal_subfield_reduction() {
    let report = selftest::maximal_subfield_suite(20260823, 50);
    assert_eq!(report.cases, 50);
    assert!(report.passed(), "{:?}", report.disagreements);
    println!("criterion 4: PASS");
}

#[test]
fn criterion_5_partition_oracle() {
    fn brute(x: u64, e: u64) -> u64 {
        // partitions of x into parts of size at most e, largest part first
        fn rec(left: u64, max_part: u64) -> u64 {
            if left == 0 {
                return 1;
            }
            (1..=max_part.min(left)).map(|p| rec(left - p, p)).sum()
        }
        rec(x, e)
    }
    for x in 0..=12 {
        for e in 1..=6 {
            assert_eq!(restricted_partition_count(x, e), brute(x, e), "x={x} e={e}");
        }
    }
    assert_eq!(restricted_partition_count(4, 2), 3);
    assert_eq!(restricted_partition_count(5, 3), 5);
    println!("criterion 5: PASS");
}

#[test]
fn criterion_6_separable_orbit_count() {
    let report = selftest::separable_orbit_suite(20260823, 50);
    assert_eq!(report.cases, 50);
    assert!(report.passed(), "{:?}", report.disagreements);
    println!("criterion 6: PASS");
}

#[test]
fn criterion_7_finite_field_ground_truth() {
    let start = Instant::now();
    // Sources are monogenic: A = F_p[t]/(f(t)) with f squarefree, given
    // by its coefficients. Homomorphisms A -> Mat_n(F_p) are matrices X
    // with f(X) = 0; conjugacy orbits are counted exhaustively.
    let cases = vec![
        Case { name: "F4 -> M2(F2)", p: 2, f: vec![1, 1, 1], factor_degrees: vec![2], n: 2, injective_needs_all: false },
        Case { name: "F8 -> M2(F2)", p: 2, f: vec![1, 1, 0, 1], factor_degrees: vec![3], n: 2, injective_needs_all: false },
        Case { name: "F2xF2 -> M2(F2)", p: 2, f: vec![0, 1, 1], factor_degrees: vec![1, 1], n: 2, injective_needs_all: true },
        Case { name: "F4 -> M3(F2)", p: 2, f: vec![1, 1, 1], factor_degrees: vec![2], n: 3, injective_needs_all: false },
        Case { name: "F2xF2 -> M3(F2)", p: 2, f: vec![0, 1, 1], factor_degrees: vec![1, 1], n: 3, injective_needs_all: true },
        Case { name: "F8 -> M3(F2)", p: 2, f: vec![1, 1, 0, 1], factor_degrees: vec![3], n: 3, injective_needs_all: false },
        Case { name: "F9 -> M2(F3)", p: 3, f: vec![1, 0, 1], factor_degrees: vec![2], n: 2, injective_needs_all: false },
        Case { name: "F3xF3 -> M2(F3)", p: 3, f: vec![0, 2, 1], factor_degrees: vec![1, 1], n: 2, injective_needs_all: true },
    ];

    for case in &cases {
        let solutions = roots_of_poly(case.p, &case.f, case.n);
        let classes = conjugacy_classes(case.p, case.n, &solutions);
        let injective = count_injective(case, &solutions);

        // solver-side model: one separable tensor factor per field factor
        let factors: Vec<TensorFactor> = case
            .factor_degrees
            .iter()
            .enumerate()
            .map(|(i, &d)| TensorFactor { source: i, m: 1, dim_d: d, local_ring: LocalRing::SEPARABLE })
            .collect();
        let w = WedderburnData::new(1, factors).unwrap();
        let target = TargetSimple::new(1, case.n as u64).unwrap();

        let hom = hom_exists(&[(target, w.clone())]).unwrap();
        assert_eq!(hom.feasible, !solutions.is_empty(), "{}: hom", case.name);

        let emb = embedding_exists(&[(target, w.clone())]).unwrap();
        assert_eq!(emb.feasible, injective > 0, "{}: embedding", case.name);

        let count = orbit_count(&w, case.n as u64, false).unwrap();
        let expected = if classes == 0 {
            OrbitCount::Empty
        } else {
            OrbitCount::Finite(classes as u128)
        };
        assert_eq!(count, expected, "{}: orbit count", case.name);
        assert_eq!(
            partition_set(&w, case.n as u64).unwrap().len(),
            classes,
            "{}: |P| vs classes",
            case.name
        );
    }
    assert!(start.elapsed().as_secs() < 30, "too slow: {:?}", start.elapsed());
    println!("criterion 7: PASS");
}

#[test]
fn criterion_8_validation_suite() {
    let csa = |degree, invs: &[(&str, PlaceKind, i64, u64)]| {
        GlobalCsa::new(
            degree,
            invs.iter().map(|&(p, kind, n, d)| (p.to_string(), kind, QModZ::new(n, d))),
        )
        .unwrap()
    };
    use PlaceKind::*;
    let bad_sum = csa(6, &[("v", Finite, 1, 2), ("w", Finite, 1, 3)]);
    assert_eq!(bad_sum.validate(), Err(Error::SumNotZero));
    let bad_real = csa(6, &[("oo", Real, 1, 3), ("v", Finite, 2, 3)]);
    assert_eq!(bad_real.validate(), Err(Error::ArchimedeanViolation { place: "oo".into() }));
    let bad_index = csa(2, &[("v", Finite, 1, 3), ("w", Finite, 2, 3)]);
    assert_eq!(bad_index.validate(), Err(Error::IndexExceedsDegree { index: 3, degree: 2 }));
    let (good, _) = construct_counterexample(2, &[(2, 1), (3, 1)]).unwrap();
    assert!(good.validate().is_ok());
    println!("criterion 8: PASS");
}

// --- finite-field brute force ---

struct Case {
    name: &'static str,
    p: u64,
    f: Vec<u64>,               // monic, low degree first
    factor_degrees: Vec<u64>,  // degrees of the irreducible factors of f
    n: usize,
    injective_needs_all: bool, // embedding iff every factor acts (product of fields)
}

type Mat = Vec<u64>; // row-major n*n over F_p

fn mat_mul(p: u64, n: usize, a: &Mat, b: &Mat) -> Mat {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + aik * b[k * n + j]) % p;
            }
        }
    }
    out
}

fn identity(n: usize) -> Mat {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// f(X) over F_p, coefficients low degree first.
fn eval_poly(p: u64, n: usize, f: &[u64], x: &Mat) -> Mat {
    let mut acc = vec![0; n * n];
    for &coeff in f.iter().rev() {
        acc = mat_mul(p, n, &acc, x);
        for i in 0..n {
            acc[i * n + i] = (acc[i * n + i] + coeff) % p;
        }
    }
    acc
}

fn all_matrices(p: u64, n: usize) -> impl Iterator<Item = Mat> {
    let cells = n * n;
    let total = p.pow(cells as u32);
    (0..total).map(move |mut code| {
        (0..cells)
            .map(|_| {
                let digit = code % p;
                code /= p;
                digit
            })
            .collect()
    })
}

fn is_invertible(p: u64, n: usize, m: &Mat) -> bool {
    // Gaussian elimination over F_p
    let mut a = m.clone();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r * n + col] != 0);
        let pivot = match pivot {
            Some(r) => r,
            None => return false,
        };
        if pivot != col {
            for j in 0..n {
                a.swap(col * n + j, pivot * n + j);
            }
        }
        let inv = (1..p).find(|&x| (x * a[col * n + col]) % p == 1).unwrap();
        for r in col + 1..n {
            let factor = (a[r * n + col] * inv) % p;
            for j in 0..n {
                a[r * n + j] = (a[r * n + j] + p * p - factor * a[col * n + j] % p) % p;
            }
        }
    }
    true
}

fn inverse(p: u64, n: usize, m: &Mat) -> Option<Mat> {
    // small groups: search is affordable at these sizes
    all_matrices(p, n).find(|g| mat_mul(p, n, g, m) == identity(n))
}

/// All X in Mat_n(F_p) with f(X) = 0.
fn roots_of_poly(p: u64, f: &[u64], n: usize) -> Vec<Mat> {
    all_matrices(p, n)
        .filter(|x| eval_poly(p, n, f, x).iter().all(|&c| c == 0))
        .collect()
}

/// Number of GL_n(F_p)-conjugacy orbits among the given matrices.
fn conjugacy_classes(p: u64, n: usize, solutions: &[Mat]) -> usize {
    let invertibles: Vec<(Mat, Mat)> = all_matrices(p, n)
        .filter(|g| is_invertible(p, n, g))
        .map(|g| {
            let gi = inverse(p, n, &g).unwrap();
            (g, gi)
        })
        .collect();
    let mut seen: Vec<Mat> = Vec::new();
    let mut classes = 0;
    for x in solutions {
        if seen.contains(x) {
            continue;
        }
        classes += 1;
        for (g, gi) in &invertibles {
            let conj = mat_mul(p, n, &mat_mul(p, n, g, x), gi);
            if !seen.contains(&conj) {
                seen.push(conj);
            }
        }
    }
    classes
}

/// Number of injective homomorphisms. A hom from a product of r fields
/// is injective iff each factor acts nontrivially; with the monogenic
/// presentation that holds iff the minimal polynomial of X equals f.
/// For a single field factor every unital hom is injective.
fn count_injective(case: &Case, solutions: &[Mat]) -> usize {
    if !case.injective_needs_all {
        return solutions.len();
    }
    // product of two degree-1 factors: X must not satisfy either linear
    // factor alone, i.e. X is not a scalar root of f
    let scalars: Vec<Mat> = (0..case.p)
        .map(|c| {
            let mut m = vec![0; case.n * case.n];
            for i in 0..case.n {
                m[i * case.n + i] = c;
            }
            m
        })
        .collect();
    solutions.iter().filter(|x| !scalars.contains(x)).count()
}
