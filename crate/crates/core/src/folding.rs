//! Folding the fan into the fundamental chamber relative to a base weight.
//!
//! For a dominant `ξ_j` every shifted point `ξ_j + γ` is brought back to the
//! chamber; it lands on `(ξ_s; k; n)` for some class member `ξ_s` and offset
//! `n >= grade(γ)`. Summing `s(γ)` over landings and seeding `-1` at
//! `(j, 0)` gives the full folded fan `η_{j,s}(n)`.

use std::collections::BTreeMap;

use crate::algebra::{AffineWeight, AlgebraSpec, CongruenceClassId};
use crate::error::{Error, Result};
use crate::fan::{Fan, FanVector};
use crate::par::Strategy;
use crate::weyl;

/// Dominant grade-0 weights of one level and congruence class, in the order
/// used for string indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseWeightSet {
    pub level: i64,
    pub class: CongruenceClassId,
    pub weights: Vec<AffineWeight>,
}

impl BaseWeightSet {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Index of the member with the given Dynkin labels.
    pub fn position(&self, classical: &[i64]) -> Option<usize> {
        self.weights.iter().position(|w| w.classical == classical)
    }
}

/// Where one fan vector sends a base weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedShift {
    pub target: AffineWeight,
    /// `grade(target) - grade(ξ)`.
    pub offset: i64,
    pub contribution: i64,
}

/// Reduces `ξ + γ` to the chamber. Walls are not excluded: multiplicities are
/// invariant under the ordinary action, so every term contributes.
pub fn fold_shift(alg: &AlgebraSpec, xi: &AffineWeight, gamma: &FanVector) -> Result<FoldedShift> {
    let out = weyl::to_dominant(alg, &xi.add(&gamma.as_weight()))?;
    let offset = out.dominant.grade - xi.grade;
    if offset < 0 {
        return Err(Error::consistency(format!(
            "folding {:?} by shift {:?} lowered the grade by {}",
            xi.classical, gamma.root, -offset
        )));
    }
    Ok(FoldedShift {
        target: out.dominant,
        offset,
        contribution: gamma.mult,
    })
}

/// Full folded fan of one base weight. Absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedFan {
    pub base_index: usize,
    pub cutoff: i64,
    /// `(target index, offset) -> η`.
    pub entries: BTreeMap<(usize, usize), i64>,
}

impl FoldedFan {
    pub fn eta(&self, target: usize, grade: usize) -> i64 {
        self.entries.get(&(target, grade)).copied().unwrap_or(0)
    }

    /// `η_{j,s}(0..=cutoff)`.
    pub fn row(&self, target: usize) -> Vec<i64> {
        (0..=self.cutoff as usize)
            .map(|n| self.eta(target, n))
            .collect()
    }
}

/// Folds every fan vector of grade at most `cutoff` against `ξ_j`.
///
/// Reduction never lowers the grade, so a vector of grade `g` lands at offset
/// at least `g` and the fan only needs to reach `cutoff` itself.
pub fn build_folded_fan(
    alg: &AlgebraSpec,
    base: &BaseWeightSet,
    j: usize,
    fan: &Fan,
    cutoff: i64,
) -> Result<FoldedFan> {
    if fan.cutoff < cutoff {
        return Err(Error::OutOfWindow {
            requested: cutoff,
            cutoff: fan.cutoff,
        });
    }
    let xi = base
        .weights
        .get(j)
        .ok_or_else(|| Error::config(format!("base index {j} out of range")))?;
    let mut entries: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    entries.insert((j, 0), -1);
    for gamma in fan.up_to(cutoff) {
        let shift = fold_shift(alg, xi, gamma)?;
        if shift.offset > cutoff {
            continue;
        }
        let s = base.position(&shift.target.classical).ok_or_else(|| {
            Error::consistency(format!(
                "shift {:?} folds {:?} onto {:?}, outside the class",
                gamma.root, xi.classical, shift.target.classical
            ))
        })?;
        *entries.entry((s, shift.offset as usize)).or_insert(0) += shift.contribution;
    }
    entries.retain(|_, v| *v != 0);
    Ok(FoldedFan {
        base_index: j,
        cutoff,
        entries,
    })
}

/// Folded fans for every member of the base set, one task per member.
pub fn build_folded_fans(
    alg: &AlgebraSpec,
    base: &BaseWeightSet,
    fan: &Fan,
    cutoff: i64,
    strategy: Strategy,
) -> Result<Vec<FoldedFan>> {
    let indices: Vec<usize> = (0..base.len()).collect();
    strategy.try_map(&indices, |&j| build_folded_fan(alg, base, j, fan, cutoff))
}

/// Checks that folding `ξ_j` shifted to each probe grade gives the same
/// target class, offset and contribution.
pub fn lemma1_check(
    alg: &AlgebraSpec,
    xi: &AffineWeight,
    gamma: &FanVector,
    probe_grades: &[i64],
) -> Result<bool> {
    let mut reference: Option<(Vec<i64>, i64, i64)> = None;
    for &p in probe_grades {
        let f = fold_shift(alg, &xi.with_grade(p), gamma)?;
        let triple = (f.target.classical, f.offset, f.contribution);
        match &reference {
            None => reference = Some(triple),
            Some(r) if *r != triple => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}

/// Recomposes the reduction of `ξ + γ` through its translation datum
/// `t_θ · s` and checks the landing grade against the closed form
/// `n_ξ + n_γ - (k/2)|θ|² - (s(ξ° + γ°), θ)`.
pub fn translation_check(alg: &AlgebraSpec, xi: &AffineWeight, gamma: &FanVector) -> Result<bool> {
    let phi = xi.add(&gamma.as_weight());
    let out = weyl::to_dominant(alg, &phi)?;
    let datum = weyl::translation_datum(alg, &out);
    if datum.apply(alg, &phi) != out.dominant {
        return Ok(false);
    }
    let moved = datum.classical_action(&phi.classical);
    let norm = datum.norm(alg);
    let k = xi.level;
    let predicted = xi.grade + gamma.grade - k * norm / 2 - datum.pairing(&moved);
    Ok(predicted == out.dominant.grade)
}
