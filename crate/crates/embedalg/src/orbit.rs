//! Finiteness and cardinality of the orbit set O_{A,B} of algebra
//! homomorphisms up to conjugation by units of the target.

use crate::embed::partition_set;
use crate::model::{LocalRing, WedderburnData};
use crate::Result;
use crate::arith::restricted_partition_count;

/// Cardinality of the set of modules of a fixed length over one Artinian
/// factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModCount {
    Finite(u128),
    Infinite,
    /// Finite over a finite base field, but no closed formula applies
    /// when the tangent dimension is at least 2.
    FiniteUnknown,
}

/// Status of the orbit set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitCount {
    Empty,
    Finite(u128),
    Infinite,
    FiniteUnknown,
}

/// |Mod(D~, x)|: 1 for x <= 1; p(x, e) when the tangent dimension is at
/// most 1; infinite over an infinite base field otherwise, and finite
/// with unknown cardinality over a finite one.
pub fn mod_count(local_ring: LocalRing, x: u64, base_field_infinite: bool) -> ModCount {
    if x <= 1 {
        ModCount::Finite(1)
    } else if local_ring.tangent_dim <= 1 {
        ModCount::Finite(restricted_partition_count(x, local_ring.nilpotency) as u128)
    } else if base_field_infinite {
        ModCount::Infinite
    } else {
        ModCount::FiniteUnknown
    }
}

/// Orbit count for a simple target: the sum over P(A,B) of the product
/// of per-factor module counts.
pub fn orbit_count(w: &WedderburnData, dim_v: u64, base_field_infinite: bool) -> Result<OrbitCount> {
    let partitions = partition_set(w, dim_v)?;
    if partitions.is_empty() {
        return Ok(OrbitCount::Empty);
    }
    let mut total: u128 = 0;
    let mut unknown = false;
    for vector in &partitions {
        let mut product: u128 = 1;
        let mut term_unknown = false;
        for (factor, &x) in w.factors.iter().zip(vector) {
            match mod_count(factor.local_ring, x, base_field_infinite) {
                ModCount::Infinite => return Ok(OrbitCount::Infinite),
                ModCount::FiniteUnknown => term_unknown = true,
                ModCount::Finite(c) => {
                    product = product.checked_mul(c).expect("integer overflow in orbit count")
                }
            }
        }
        if term_unknown {
            unknown = true;
        } else {
            total = total.checked_add(product).expect("integer overflow in orbit count");
        }
    }
    if unknown {
        Ok(OrbitCount::FiniteUnknown)
    } else {
        Ok(OrbitCount::Finite(total))
    }
}

/// Product over the simple factors of a semi-simple target: empty
/// absorbs, then infinite, then unknown; finite counts multiply.
pub fn orbit_count_semisimple_target(parts: &[OrbitCount]) -> OrbitCount {
    if parts.iter().any(|p| *p == OrbitCount::Empty) {
        return OrbitCount::Empty;
    }
    if parts.iter().any(|p| *p == OrbitCount::Infinite) {
        return OrbitCount::Infinite;
    }
    if parts.iter().any(|p| *p == OrbitCount::FiniteUnknown) {
        return OrbitCount::FiniteUnknown;
    }
    let mut total: u128 = 1;
    for part in parts {
        if let OrbitCount::Finite(c) = part {
            total = total.checked_mul(*c).expect("integer overflow in orbit count");
        }
    }
    OrbitCount::Finite(total)
}
