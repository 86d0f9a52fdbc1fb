//! Exact rational and `Q/Z` arithmetic plus the small combinatorial
//! enumerations (restricted partitions, weighted nonnegative solutions)
//! that every solver is built on.
//!
//! All values are immutable and all functions are pure. Integers are
//! fixed-width but every product or sum that could wrap goes through a
//! checked operation, so overflow aborts instead of silently wrapping.

use num_integer::Integer;
use std::fmt;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    assert!(a > 0 && b > 0, "lcm of zero");
    (a / gcd(a, b)).checked_mul(b).expect("integer overflow in lcm")
}

/// A reduced fraction with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational {
    num: i64,
    den: u64,
}

impl Rational {
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "denominator must be positive");
        let g = gcd(num.unsigned_abs(), den);
        Rational {
            num: num / g as i64,
            den: den / g,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A class in `Q/Z`, stored as the reduced representative in `[0, 1)`.
///
/// The zero class is `0/1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QModZ {
    num: u64,
    den: u64,
}

impl QModZ {
    pub const ZERO: QModZ = QModZ { num: 0, den: 1 };

    /// Reduces `num/den` modulo 1 into `[0, 1)`.
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "denominator must be positive");
        let r = num.rem_euclid(den as i64) as u64;
        let g = gcd(r, den);
        QModZ {
            num: r / g,
            den: den / g,
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        QModZ::new(r.numerator(), r.denominator())
    }

    /// The class of `m * self`, i.e. the invariant after base change along
    /// a local extension of degree `m`.
    pub fn scale(&self, m: u64) -> Self {
        assert!(m > 0, "scale factor must be positive");
        let n = (self.num as u128 * m as u128) % self.den as u128;
        let g = gcd(n as u64, self.den);
        QModZ {
            num: n as u64 / g,
            den: self.den / g,
        }
    }

    pub fn add(&self, other: &QModZ) -> Self {
        let l = lcm(self.den, other.den);
        let a = self.num as u128 * (l / self.den) as u128;
        let b = other.num as u128 * (l / other.den) as u128;
        let n = (a + b) % l as u128;
        let g = gcd(n as u64, l);
        QModZ {
            num: n as u64 / g,
            den: l / g,
        }
    }

    pub fn neg(&self) -> Self {
        if self.num == 0 {
            QModZ::ZERO
        } else {
            // already reduced: gcd(den - num, den) = gcd(num, den) = 1
            QModZ {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }

    pub fn sub(&self, other: &QModZ) -> Self {
        self.add(&other.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }
}

impl fmt::Display for QModZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A tuple of nonnegative integers solving a weighted linear equation.
pub type SolutionVector = Vec<u64>;

/// Number `p(x, e)` of partitions of `x` into parts of size at most `e`.
///
/// `p(0, e) = 1` (the empty partition), so the product formulas stay
/// correct when some coordinate is zero.
pub fn restricted_partition_count(x: u64, e: u64) -> u64 {
    assert!(e >= 1, "part bound must be positive");
    let x = x as usize;
    let mut dp = vec![0u64; x + 1];
    dp[0] = 1;
    for part in 1..=(e as usize).min(x) {
        for v in part..=x {
            dp[v] = dp[v]
                .checked_add(dp[v - part])
                .expect("integer overflow in partition count");
        }
    }
    dp[x]
}

/// All vectors `x >= 0` with `sum(weights[i] * x[i]) = target`, requiring
/// `x[i] >= 1` wherever `positivity_mask` demands. Lexicographically
/// ascending.
pub fn enumerate_weighted_solutions(
    weights: &[u64],
    target: u64,
    positivity_mask: &[bool],
) -> Vec<SolutionVector> {
    assert!(!weights.is_empty(), "weights must be nonempty");
    assert_eq!(weights.len(), positivity_mask.len(), "mask length mismatch");
    assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
    let mut out = Vec::new();
    let mut cur = vec![0u64; weights.len()];
    enumerate_rec(weights, positivity_mask, target, 0, &mut cur, &mut |sol| {
        out.push(sol.to_vec());
        true
    });
    out
}

/// Lexicographically least solution, or `None`.
pub fn first_weighted_solution(
    weights: &[u64],
    target: u64,
    positivity_mask: &[bool],
) -> Option<SolutionVector> {
    assert!(!weights.is_empty(), "weights must be nonempty");
    assert_eq!(weights.len(), positivity_mask.len(), "mask length mismatch");
    let mut found = None;
    let mut cur = vec![0u64; weights.len()];
    enumerate_rec(weights, positivity_mask, target, 0, &mut cur, &mut |sol| {
        found = Some(sol.to_vec());
        false
    });
    found
}

/// Depth-first enumeration in ascending coordinate order; the visitor
/// returns false to stop early.
fn enumerate_rec(
    weights: &[u64],
    mask: &[bool],
    remaining: u64,
    pos: usize,
    cur: &mut [u64],
    visit: &mut impl FnMut(&[u64]) -> bool,
) -> bool {
    if pos == weights.len() {
        if remaining == 0 {
            return visit(cur);
        }
        return true;
    }
    // minimum weight still owed by the masked suffix
    let suffix_min: u64 = (pos + 1..weights.len())
        .filter(|&i| mask[i])
        .map(|i| weights[i])
        .sum();
    let mut x: u64 = if mask[pos] { 1 } else { 0 };
    while x.checked_mul(weights[pos]).map_or(false, |c| c <= remaining) {
        let rest = remaining - x * weights[pos];
        if rest >= suffix_min {
            cur[pos] = x;
            if !enumerate_rec(weights, mask, rest, pos + 1, cur, visit) {
                return false;
            }
        }
        x += 1;
    }
    cur[pos] = 0;
    true
}
