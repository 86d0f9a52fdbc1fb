//! Central simple algebras over a global field, modeled by their degree
//! and finitely supported local Brauer invariants, together with base
//! change along a splitting profile of a finite extension.
//!
//! Places are opaque labels; nothing here factors primes or constructs
//! number fields. A place not listed in the invariant map is split
//! (invariant zero).

use crate::arith::{gcd, lcm, QModZ};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaceKind {
    Finite,
    Real,
    Complex,
}

/// Local datum of a CSA at one place.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalInvariant {
    pub kind: PlaceKind,
    pub inv: QModZ,
}

/// A central simple algebra over a global field: degree `n * delta` and
/// local invariants at finitely many labeled places.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalCsa {
    pub degree: u64,
    invariants: BTreeMap<String, LocalInvariant>,
}

impl GlobalCsa {
    pub fn new(
        degree: u64,
        entries: impl IntoIterator<Item = (String, PlaceKind, QModZ)>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::PreconditionViolated("degree must be positive".into()));
        }
        let mut invariants = BTreeMap::new();
        for (place, kind, inv) in entries {
            if invariants.insert(place.clone(), LocalInvariant { kind, inv }).is_some() {
                return Err(Error::DuplicatePlace(place));
            }
        }
        Ok(GlobalCsa { degree, invariants })
    }

    /// A matrix algebra of the given degree, ramified nowhere.
    pub fn split(degree: u64) -> Self {
        GlobalCsa { degree, invariants: BTreeMap::new() }
    }

    pub fn invariants(&self) -> impl Iterator<Item = (&str, &LocalInvariant)> {
        self.invariants.iter().map(|(p, li)| (p.as_str(), li))
    }

    /// Invariant at a place; zero when unlisted.
    pub fn invariant(&self, place: &str) -> QModZ {
        self.invariants.get(place).map_or(QModZ::ZERO, |li| li.inv)
    }

    pub fn kind(&self, place: &str) -> Option<PlaceKind> {
        self.invariants.get(place).map(|li| li.kind)
    }

    /// Places with nonzero invariant.
    pub fn ramified_places(&self) -> impl Iterator<Item = &str> {
        self.invariants
            .iter()
            .filter(|(_, li)| !li.inv.is_zero())
            .map(|(p, _)| p.as_str())
    }

    /// Local index d_v at a place (1 when split there).
    pub fn local_index(&self, place: &str) -> u64 {
        self.invariant(place).denominator()
    }

    /// Checks the class-field-theoretic consistency conditions: the
    /// invariants sum to zero in Q/Z, archimedean invariants are in range,
    /// and the global index divides the degree.
    pub fn validate(&self) -> Result<()> {
        let mut sum = QModZ::ZERO;
        for (place, li) in &self.invariants {
            match li.kind {
                PlaceKind::Complex if !li.inv.is_zero() => {
                    return Err(Error::ArchimedeanViolation { place: place.clone() });
                }
                PlaceKind::Real if !li.inv.is_zero() && li.inv != QModZ::new(1, 2) => {
                    return Err(Error::ArchimedeanViolation { place: place.clone() });
                }
                _ => {}
            }
            sum = sum.add(&li.inv);
        }
        if !sum.is_zero() {
            return Err(Error::SumNotZero);
        }
        let index = self.index();
        if self.degree % index != 0 {
            return Err(Error::IndexExceedsDegree { index, degree: self.degree });
        }
        Ok(())
    }

    /// Global index: lcm of the local indices (Grunwald-Wang).
    pub fn index(&self) -> u64 {
        self.invariants
            .values()
            .fold(1, |acc, li| lcm(acc, li.inv.denominator()))
    }

    /// Capacity n = degree / index.
    pub fn capacity(&self) -> u64 {
        self.degree / self.index()
    }
}

/// One place of the extension lying over a base place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPart {
    pub id: String,
    pub degree: u64,
}

/// A degree-k separable extension (or etale algebra factor) described by
/// its local splitting partitions k_w at finitely many base places.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionProfile {
    pub degree: u64,
    splitting: BTreeMap<String, Vec<SplitPart>>,
}

impl ExtensionProfile {
    pub fn new(degree: u64, splitting: BTreeMap<String, Vec<SplitPart>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::PreconditionViolated("extension degree must be positive".into()));
        }
        let mut seen = BTreeSet::new();
        for (place, parts) in &splitting {
            let total: u64 = parts.iter().map(|p| p.degree).sum();
            if total != degree || parts.iter().any(|p| p.degree == 0) {
                return Err(Error::PreconditionViolated(format!(
                    "local degrees over place {place} must be positive and sum to {degree}"
                )));
            }
            for part in parts {
                if !seen.insert(part.id.clone()) {
                    return Err(Error::DuplicatePlace(part.id.clone()));
                }
            }
        }
        Ok(ExtensionProfile { degree, splitting })
    }

    /// Extension with no splitting data listed (every relevant base place
    /// must be split for the algebra in question).
    pub fn unspecified(degree: u64) -> Self {
        ExtensionProfile { degree, splitting: BTreeMap::new() }
    }

    pub fn parts_over(&self, place: &str) -> Option<&[SplitPart]> {
        self.splitting.get(place).map(|v| v.as_slice())
    }

    pub fn places(&self) -> impl Iterator<Item = &str> {
        self.splitting.keys().map(|s| s.as_str())
    }

    pub fn splitting(&self) -> impl Iterator<Item = (&str, &[SplitPart])> {
        self.splitting.iter().map(|(p, v)| (p.as_str(), v.as_slice()))
    }
}

/// Invariants of `A (x) K` indexed by the places of K listed in the
/// profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChangedCsa {
    pub degree_over_k: u64,
    pub invariants: BTreeMap<String, QModZ>,
}

impl BaseChangedCsa {
    /// Index over K: lcm of the listed denominators.
    pub fn index(&self) -> u64 {
        self.invariants.values().fold(1, |acc, q| lcm(acc, q.denominator()))
    }
}

/// Scales each local invariant by the local degree k_w.
///
/// Every place where `a` is ramified must carry splitting data.
pub fn base_change(a: &GlobalCsa, k: &ExtensionProfile) -> Result<BaseChangedCsa> {
    for place in a.ramified_places() {
        if k.parts_over(place).is_none() {
            return Err(Error::MissingSplittingData { place: place.to_string() });
        }
    }
    let mut invariants = BTreeMap::new();
    for (place, parts) in k.splitting() {
        let inv = a.invariant(place);
        for part in parts {
            match a.kind(place) {
                Some(PlaceKind::Complex) if part.degree != 1 => {
                    return Err(Error::ArchimedeanViolation { place: place.to_string() });
                }
                Some(PlaceKind::Real) if part.degree > 2 => {
                    return Err(Error::ArchimedeanViolation { place: place.to_string() });
                }
                _ => {}
            }
            invariants.insert(part.id.clone(), inv.scale(part.degree));
        }
    }
    Ok(BaseChangedCsa { degree_over_k: a.degree, invariants })
}

/// Capacity of the division part of `A (x) K` over K: index(A) divided by
/// the base-changed index. Locally c_w = gcd(d_v, k_w).
pub fn capacity_after_base_change(a: &GlobalCsa, k: &ExtensionProfile) -> Result<u64> {
    let changed = base_change(a, k)?;
    Ok(a.index() / changed.index())
}

// --- JSON schema (shared with the CLI) ---

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CsaJson {
    pub degree: u64,
    pub invariants: Vec<InvariantJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvariantJson {
    pub place: String,
    pub kind: PlaceKind,
    pub num: i64,
    pub den: u64,
}

impl TryFrom<CsaJson> for GlobalCsa {
    type Error = Error;

    fn try_from(json: CsaJson) -> Result<GlobalCsa> {
        let mut entries = Vec::new();
        for inv in json.invariants {
            if inv.den == 0 {
                return Err(Error::PreconditionViolated(format!(
                    "invariant at {} has zero denominator",
                    inv.place
                )));
            }
            entries.push((inv.place, inv.kind, QModZ::new(inv.num, inv.den)));
        }
        GlobalCsa::new(json.degree, entries)
    }
}

impl From<&GlobalCsa> for CsaJson {
    fn from(a: &GlobalCsa) -> CsaJson {
        CsaJson {
            degree: a.degree,
            invariants: a
                .invariants()
                .map(|(place, li)| InvariantJson {
                    place: place.to_string(),
                    kind: li.kind,
                    num: li.inv.numerator() as i64,
                    den: li.inv.denominator(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProfileJson {
    pub degree: u64,
    pub splitting: Vec<SplittingJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SplittingJson {
    pub place: String,
    pub parts: Vec<PartJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartJson {
    pub id: String,
    pub degree: u64,
}

impl TryFrom<ProfileJson> for ExtensionProfile {
    type Error = Error;

    fn try_from(json: ProfileJson) -> Result<ExtensionProfile> {
        let mut splitting = BTreeMap::new();
        for entry in json.splitting {
            let parts: Vec<SplitPart> = entry
                .parts
                .into_iter()
                .map(|p| SplitPart { id: p.id, degree: p.degree })
                .collect();
            if splitting.insert(entry.place.clone(), parts).is_some() {
                return Err(Error::DuplicatePlace(entry.place));
            }
        }
        ExtensionProfile::new(json.degree, splitting)
    }
}

impl From<&ExtensionProfile> for ProfileJson {
    fn from(k: &ExtensionProfile) -> ProfileJson {
        ProfileJson {
            degree: k.degree,
            splitting: k
                .splitting()
                .map(|(place, parts)| SplittingJson {
                    place: place.to_string(),
                    parts: parts
                        .iter()
                        .map(|p| PartJson { id: p.id.clone(), degree: p.degree })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// gcd(d_v, k_w), the local capacity of D_v (x) K_w.
pub fn local_capacity(d_v: u64, k_w: u64) -> u64 {
    gcd(d_v, k_w)
}
