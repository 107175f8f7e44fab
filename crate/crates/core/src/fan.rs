//! The fan of singular weights of the trivial module: shifts `γ = ρ - wρ`,
//! `w ≠ e`, with multiplicity `s(γ) = -ε(w)`, and the truncated denominator
//! identity that certifies it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{AffineWeight, AlgebraSpec};
use crate::error::{Error, Result};
use crate::weyl;

/// Default cap on orbit nodes visited while building a fan.
pub const DEFAULT_NODE_BUDGET: usize = 20_000_000;

/// One shift of the fan. Shifts are added to module weights, so `grade` is
/// non-negative and moves towards the highest weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FanVector {
    /// Classical part in the simple-root basis.
    pub root: Vec<i64>,
    /// Same classical part as Dynkin labels.
    pub labels: Vec<i64>,
    pub grade: i64,
    pub mult: i64,
}

impl FanVector {
    /// The shift as a level-0 weight.
    pub fn as_weight(&self) -> AffineWeight {
        AffineWeight::new(self.labels.clone(), 0, self.grade)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    pub algebra: AlgebraSpec,
    pub cutoff: i64,
    /// Sorted by grade, then root coordinates.
    pub vectors: Vec<FanVector>,
}

impl Fan {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Vectors of grade at most `grade`. Relies on the sort order.
    pub fn up_to(&self, grade: i64) -> &[FanVector] {
        let end = self.vectors.partition_point(|v| v.grade <= grade);
        &self.vectors[..end]
    }

    /// Restriction to a smaller cutoff.
    pub fn truncate(&self, cutoff: i64) -> Fan {
        Fan {
            algebra: self.algebra.clone(),
            cutoff: cutoff.min(self.cutoff),
            vectors: self.up_to(cutoff).to_vec(),
        }
    }
}

pub fn build_fan(alg: &AlgebraSpec, cutoff: i64) -> Result<Fan> {
    build_fan_with_budget(alg, cutoff, DEFAULT_NODE_BUDGET)
}

/// Enumerates the ordinary orbit of `ρ` down to grade `-cutoff`. `ρ` is
/// regular, so orbit points and group elements correspond one to one and
/// the BFS parity is `ε(w)`.
pub fn build_fan_with_budget(alg: &AlgebraSpec, cutoff: i64, budget: usize) -> Result<Fan> {
    if cutoff < 0 {
        return Err(Error::config(format!(
            "fan cutoff must be non-negative, got {cutoff}"
        )));
    }
    let rho = alg.weyl_vector();
    let orbit = weyl::orbit_within(alg, &rho, -cutoff, budget)?;
    let mut vectors: Vec<FanVector> = orbit
        .into_iter()
        .filter(|(w, _)| *w != rho)
        .map(|(w, eps)| {
            let shift = rho.sub(&w);
            let root = alg
                .root_coords(&shift.classical)
                .ok_or_else(|| Error::consistency("ρ - wρ left the root lattice"))?;
            Ok(FanVector {
                root,
                labels: shift.classical,
                grade: shift.grade,
                mult: -i64::from(eps),
            })
        })
        .collect::<Result<_>>()?;
    vectors.sort_by(|a, b| (a.grade, &a.root).cmp(&(b.grade, &b.root)));
    Ok(Fan {
        algebra: alg.clone(),
        cutoff,
        vectors,
    })
}

/// Monomial `e^{-β}` keyed by the simple-root coordinates and grade of `β`.
pub type Monomial = (Vec<i64>, i64);

/// `1 - Π (1 - e^{-α})^{mult α}` over positive affine roots of grade at most
/// `cutoff`, truncated at that grade. Zero coefficients are dropped.
pub fn denominator_expansion(alg: &AlgebraSpec, cutoff: i64) -> BTreeMap<Monomial, BigInt> {
    let r = alg.rank();
    let mut factors: Vec<(Monomial, usize)> = Vec::new();
    for n in 0..=cutoff {
        for a in alg.positive_roots() {
            factors.push(((a.clone(), n), 1));
            if n > 0 {
                factors.push(((a.iter().map(|x| -x).collect(), n), 1));
            }
        }
        if n > 0 {
            factors.push(((vec![0; r], n), r));
        }
    }
    let mut poly: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    poly.insert((vec![0; r], 0), BigInt::one());
    for ((root, grade), mult) in factors {
        for _ in 0..mult {
            let mut next = poly.clone();
            for ((m, g), c) in &poly {
                if g + grade > cutoff {
                    continue;
                }
                let key = (m.iter().zip(&root).map(|(a, b)| a + b).collect(), g + grade);
                let slot = next.entry(key).or_insert_with(BigInt::zero);
                *slot -= c;
            }
            next.retain(|_, c| !c.is_zero());
            poly = next;
        }
    }
    let mut out: BTreeMap<Monomial, BigInt> = poly.into_iter().map(|(k, c)| (k, -c)).collect();
    let unit = (vec![0; r], 0);
    let constant = out.remove(&unit).unwrap_or_default() + BigInt::one();
    if !constant.is_zero() {
        out.insert(unit, constant);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorReport {
    pub cutoff: i64,
    /// Lowest-grade monomial where the fan and the product disagree, with
    /// (fan coefficient, product coefficient).
    pub first_mismatch: Option<(Monomial, BigInt, BigInt)>,
}

impl DenominatorReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares the fan against the truncated product coefficient by coefficient.
pub fn verify_denominator(fan: &Fan) -> DenominatorReport {
    let expected = denominator_expansion(&fan.algebra, fan.cutoff);
    let mut actual: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for v in &fan.vectors {
        *actual
            .entry((v.root.clone(), v.grade))
            .or_insert_with(BigInt::zero) += v.mult;
    }
    actual.retain(|_, c| !c.is_zero());

    let mut keys: Vec<&Monomial> = expected.keys().chain(actual.keys()).collect();
    keys.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    keys.dedup();
    let first_mismatch = keys.into_iter().find_map(|k| {
        let a = actual.get(k).cloned().unwrap_or_default();
        let e = expected.get(k).cloned().unwrap_or_default();
        (a != e).then(|| (k.clone(), a, e))
    });
    DenominatorReport {
        cutoff: fan.cutoff,
        first_mismatch,
    }
}
