//! Source and target algebra descriptions.
//!
//! Two input modes exist. Abstract mode takes user-asserted Wedderburn
//! data for the tensor algebras `Delta_j (x) A_i^o` (matrix size m,
//! division-part dimension, optional local-ring data). Global mode
//! computes the same data from Brauer invariants over a global field,
//! where every tensor factor is separable and the local ring is trivial.

use crate::arith::{lcm, QModZ};
use crate::brauer::{base_change, ExtensionProfile, GlobalCsa};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Local-ring data (e, tangent dimension) of the center of one tensor
/// factor; (1, 0) for separable factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalRing {
    /// Smallest e with m_R^e = 0.
    pub nilpotency: u64,
    /// dim_Z m_R / m_R^2.
    pub tangent_dim: u64,
}

impl LocalRing {
    pub const SEPARABLE: LocalRing = LocalRing { nilpotency: 1, tangent_dim: 0 };

    pub fn new(nilpotency: u64, tangent_dim: u64) -> Result<Self> {
        if nilpotency == 0 || ((nilpotency == 1) != (tangent_dim == 0)) {
            return Err(Error::PreconditionViolated(format!(
                "inconsistent local ring data (e={nilpotency}, tangent_dim={tangent_dim})"
            )));
        }
        Ok(LocalRing { nilpotency, tangent_dim })
    }
}

/// One simple factor Mat_m(D) of `Delta (x) A_i^o`, tagged with the index
/// of the source factor A_i it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorFactor {
    pub source: usize,
    pub m: u64,
    pub dim_d: u64,
    pub local_ring: LocalRing,
}

/// Decomposition invariants of `Delta (x) A^o` for a fixed target
/// division algebra Delta.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedderburnData {
    /// [Delta : F].
    pub dim_delta: u64,
    pub factors: Vec<TensorFactor>,
}

impl WedderburnData {
    pub fn new(dim_delta: u64, factors: Vec<TensorFactor>) -> Result<Self> {
        if dim_delta == 0 || factors.iter().any(|f| f.m == 0 || f.dim_d == 0) {
            return Err(Error::PreconditionViolated(
                "dimensions and matrix sizes must be positive".into(),
            ));
        }
        if factors.is_empty() {
            return Err(Error::PreconditionViolated(
                "a semi-simple algebra has at least one factor".into(),
            ));
        }
        Ok(WedderburnData { dim_delta, factors })
    }

    /// The weights l_k = m_k [D_k : F] / [Delta : F], one per factor.
    ///
    /// Fails when some factor is inconsistent (a module over the factor
    /// could not contain Delta).
    pub fn ell_values(&self) -> Result<Vec<u64>> {
        self.factors
            .iter()
            .map(|f| {
                let prod = f.m.checked_mul(f.dim_d).expect("integer overflow in m*[D:F]");
                if prod % self.dim_delta != 0 {
                    Err(Error::NonIntegralEll { m_dim_d: prod, dim_delta: self.dim_delta })
                } else {
                    Ok(prod / self.dim_delta)
                }
            })
            .collect()
    }
}

/// A simple target B = End_Delta(V): division-algebra dimension over F
/// and module rank n = dim_Delta V.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TargetSimple {
    pub dim_delta: u64,
    pub module_dim: u64,
}

impl TargetSimple {
    pub fn new(dim_delta: u64, module_dim: u64) -> Result<Self> {
        if dim_delta == 0 || module_dim == 0 {
            return Err(Error::PreconditionViolated(
                "target algebra must be unital: dimensions must be positive".into(),
            ));
        }
        Ok(TargetSimple { dim_delta, module_dim })
    }
}

/// A simple source factor A_i over a global field, given by its center
/// K_i (as a splitting profile over F) and its Brauer data over K_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalSourceFactor {
    pub center: ExtensionProfile,
    pub degree_over_center: u64,
    invariants_over_center: BTreeMap<String, QModZ>,
}

impl GlobalSourceFactor {
    pub fn new(
        center: ExtensionProfile,
        degree_over_center: u64,
        invariants_over_center: BTreeMap<String, QModZ>,
    ) -> Result<Self> {
        if degree_over_center == 0 {
            return Err(Error::PreconditionViolated("degree over center must be positive".into()));
        }
        let known: std::collections::BTreeSet<&str> = center
            .splitting()
            .flat_map(|(_, parts)| parts.iter().map(|p| p.id.as_str()))
            .collect();
        let mut sum = QModZ::ZERO;
        for (id, inv) in &invariants_over_center {
            if !known.contains(id.as_str()) {
                return Err(Error::PreconditionViolated(format!(
                    "invariant at unknown center place {id}"
                )));
            }
            if degree_over_center % inv.denominator() != 0 {
                return Err(Error::IndexExceedsDegree {
                    index: inv.denominator(),
                    degree: degree_over_center,
                });
            }
            sum = sum.add(inv);
        }
        if !sum.is_zero() {
            return Err(Error::SumNotZero);
        }
        Ok(GlobalSourceFactor { center, degree_over_center, invariants_over_center })
    }

    /// A commutative factor: a field with the given splitting profile.
    pub fn field(center: ExtensionProfile) -> Self {
        GlobalSourceFactor { center, degree_over_center: 1, invariants_over_center: BTreeMap::new() }
    }

    /// [A_i : F] = [K_i : F] * (degree over center)^2.
    pub fn dim_over_f(&self) -> u64 {
        self.center.degree * self.degree_over_center * self.degree_over_center
    }

    pub fn invariant(&self, center_place: &str) -> QModZ {
        self.invariants_over_center.get(center_place).map_or(QModZ::ZERO, |q| *q)
    }
}

/// Wedderburn data of `Delta (x) A_i^o` over a global field, computed
/// from Brauer invariants.
///
/// Over the center K_i the tensor is a single central simple algebra;
/// its local invariants are inv_w(Delta (x) K_i) - inv_w(A_i), its index
/// is their lcm of denominators, and the capacity and division dimension
/// follow from [Delta:F][A_i:F] = c^2 [D:F]. The factor is separable, so
/// the local ring is trivial.
pub fn wedderburn_from_global(delta: &GlobalCsa, source: &GlobalSourceFactor) -> Result<WedderburnData> {
    let delta_index = delta.index();
    let changed = base_change(delta, &source.center)?;
    let mut tensor_index = 1u64;
    for (id, inv) in &changed.invariants {
        let diff = inv.sub(&source.invariant(id));
        tensor_index = lcm(tensor_index, diff.denominator());
    }
    // places of the source's own ramification not touched by delta
    for (id, inv) in &source.invariants_over_center {
        if !changed.invariants.contains_key(id) {
            tensor_index = lcm(tensor_index, inv.denominator());
        }
    }
    let tensor_degree = delta_index
        .checked_mul(source.degree_over_center)
        .expect("integer overflow in tensor degree");
    debug_assert_eq!(tensor_degree % tensor_index, 0);
    let capacity = tensor_degree / tensor_index;
    let dim_delta = delta_index * delta_index;
    let dim_d = dim_delta * source.dim_over_f() / (capacity * capacity);
    debug_assert_eq!(dim_delta * source.dim_over_f(), capacity * capacity * dim_d);
    WedderburnData::new(
        dim_delta,
        vec![TensorFactor { source: 0, m: capacity, dim_d, local_ring: LocalRing::SEPARABLE }],
    )
}

/// Capacity c_i of `Delta (x) A_i^o` over the center of A_i; this is the
/// quantity entering the embedding criterion [A_i:F] | n_i c_i.
pub fn tensor_capacity(delta: &GlobalCsa, source: &GlobalSourceFactor) -> Result<u64> {
    Ok(wedderburn_from_global(delta, source)?.factors[0].m)
}

// --- JSON schema for abstract mode (shared with the CLI) ---

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WedderburnJson {
    pub dim_delta: u64,
    pub module_dim: u64,
    pub factors: Vec<FactorJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorJson {
    pub source: usize,
    pub m: u64,
    pub dim_d: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangent_dim: Option<u64>,
}

impl WedderburnJson {
    pub fn to_target(&self) -> Result<(TargetSimple, WedderburnData)> {
        let target = TargetSimple::new(self.dim_delta, self.module_dim)?;
        let factors = self
            .factors
            .iter()
            .map(|f| {
                let local_ring = LocalRing::new(f.e.unwrap_or(1), f.tangent_dim.unwrap_or(0))?;
                Ok(TensorFactor { source: f.source, m: f.m, dim_d: f.dim_d, local_ring })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((target, WedderburnData::new(self.dim_delta, factors)?))
    }
}
