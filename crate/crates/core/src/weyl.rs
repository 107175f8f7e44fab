//! Simple reflections, ordinary and ρ-shifted reduction to the fundamental
//! chamber, and orbit enumeration inside a grade window.

use std::collections::{HashMap, VecDeque};

use crate::algebra::{AffineWeight, AlgebraSpec};
use crate::error::{Error, Result};

/// Default cap on reflection steps before reduction gives up.
pub const DEFAULT_STEP_LIMIT: usize = 1_000_000;

/// Result of bringing a weight into the fundamental chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylOutcome {
    pub dominant: AffineWeight,
    /// `ε` of the word used. Only meaningful off the walls.
    pub sign: i8,
    pub on_wall: bool,
    /// Simple reflections in the order they were applied.
    pub word: Vec<usize>,
}

/// Decomposition `w = t_θ · s` of a reducing element into a translation by a
/// coroot-lattice vector and a classical Weyl group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationDatum {
    /// Translation vector in the simple-coroot basis.
    pub theta: Vec<i64>,
    /// Classical part as a matrix acting on Dynkin-label columns.
    pub classical: Vec<Vec<i64>>,
}

/// `s_i λ = λ - λ_i α_i` with `α_0 = δ - θ`.
pub fn reflect(alg: &AlgebraSpec, i: usize, w: &AffineWeight) -> AffineWeight {
    let mut out = w.clone();
    reflect_in_place(alg, i, &mut out);
    out
}

fn reflect_in_place(alg: &AlgebraSpec, i: usize, w: &mut AffineWeight) {
    if i == 0 {
        let l0 = alg.zeroth_label(w);
        if l0 == 0 {
            return;
        }
        for (x, t) in w.classical.iter_mut().zip(alg.theta_labels()) {
            *x += l0 * t;
        }
        w.grade -= l0;
    } else {
        let li = w.classical[i - 1];
        if li == 0 {
            return;
        }
        let cartan = alg.cartan();
        for (j, x) in w.classical.iter_mut().enumerate() {
            *x -= li * cartan[j][i - 1];
        }
    }
}

/// Dot action `s_i ∘ λ = s_i(λ + ρ) - ρ`.
pub fn shifted_reflect(alg: &AlgebraSpec, i: usize, w: &AffineWeight) -> AffineWeight {
    let rho = alg.weyl_vector();
    reflect(alg, i, &w.add(&rho)).sub(&rho)
}

/// Ordinary reduction to the fundamental chamber.
///
/// Always reflects at the most negative label (lowest index on ties), so the
/// word is deterministic. Requires positive level.
pub fn to_dominant(alg: &AlgebraSpec, w: &AffineWeight) -> Result<WeylOutcome> {
    to_dominant_with_limit(alg, w, DEFAULT_STEP_LIMIT)
}

pub fn to_dominant_with_limit(
    alg: &AlgebraSpec,
    w: &AffineWeight,
    step_limit: usize,
) -> Result<WeylOutcome> {
    if w.rank() != alg.rank() {
        return Err(Error::config("weight rank does not match the algebra"));
    }
    if w.level <= 0 {
        return Err(Error::NonTermination(format!(
            "level {} is not positive; the chamber is not a fundamental domain",
            w.level
        )));
    }
    let mut cur = w.clone();
    let mut word = Vec::new();
    loop {
        let mut worst: Option<(usize, i64)> = None;
        let l0 = alg.zeroth_label(&cur);
        if l0 < 0 {
            worst = Some((0, l0));
        }
        for (j, &l) in cur.classical.iter().enumerate() {
            if l < 0 && worst.is_none_or(|(_, m)| l < m) {
                worst = Some((j + 1, l));
            }
        }
        let Some((i, _)) = worst else {
            break;
        };
        if word.len() >= step_limit {
            return Err(Error::NonTermination(format!(
                "no dominant weight after {step_limit} reflections"
            )));
        }
        reflect_in_place(alg, i, &mut cur);
        word.push(i);
    }
    let on_wall = alg.zeroth_label(&cur) == 0 || cur.classical.contains(&0);
    Ok(WeylOutcome {
        dominant: cur,
        sign: if word.len() % 2 == 0 { 1 } else { -1 },
        on_wall,
        word,
    })
}

/// Reduction under the dot action. With `on_wall` set the weight lies on a
/// shifted wall and every alternating sum over its orbit vanishes; otherwise
/// `dominant` is the unique representative with `dominant + ρ` strictly
/// dominant.
pub fn to_dominant_shifted(alg: &AlgebraSpec, w: &AffineWeight) -> Result<WeylOutcome> {
    let rho = alg.weyl_vector();
    let out = to_dominant(alg, &w.add(&rho))?;
    Ok(WeylOutcome {
        dominant: out.dominant.sub(&rho),
        ..out
    })
}

/// Splits the reducing element of `outcome` into translation and classical
/// parts. Uses `s_0 = t_{θ^∨} s_θ` and `s · t_β = t_{sβ} · s`.
pub fn translation_datum(alg: &AlgebraSpec, outcome: &WeylOutcome) -> TranslationDatum {
    let r = alg.rank();
    let cartan = alg.cartan();
    let mut theta = vec![0i64; r];
    let mut classical: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    for &i in &outcome.word {
        if i == 0 {
            // β -> θ^∨ + s_θ β;  s -> s_θ s
            let pairing: i64 = theta
                .iter()
                .zip(alg.theta_labels())
                .map(|(b, t)| b * t)
                .sum();
            for (b, c) in theta.iter_mut().zip(alg.comarks()) {
                *b += c * (1 - pairing);
            }
            classical = compose_reflection(&classical, |labels| {
                let p: i64 = labels.iter().zip(alg.comarks()).map(|(l, c)| l * c).sum();
                labels
                    .iter()
                    .zip(alg.theta_labels())
                    .map(|(l, t)| l - p * t)
                    .collect()
            });
        } else {
            let k = i - 1;
            let pairing: i64 = (0..r).map(|j| cartan[j][k] * theta[j]).sum();
            theta[k] -= pairing;
            classical = compose_reflection(&classical, |labels| {
                let lk = labels[k];
                (0..r).map(|j| labels[j] - lk * cartan[j][k]).collect()
            });
        }
    }
    TranslationDatum { theta, classical }
}

fn compose_reflection(current: &[Vec<i64>], act: impl Fn(&[i64]) -> Vec<i64>) -> Vec<Vec<i64>> {
    let r = current.len();
    // Apply `act` to every column of `current`.
    let cols: Vec<Vec<i64>> = (0..r)
        .map(|c| act(&current.iter().map(|row| row[c]).collect::<Vec<_>>()))
        .collect();
    (0..r)
        .map(|i| (0..r).map(|c| cols[c][i]).collect())
        .collect()
}

impl TranslationDatum {
    /// Applies `t_θ · s` to a weight:
    /// `t_β(λ) = λ + kβ - ((λ, β) + k|β|²/2) δ`.
    pub fn apply(&self, alg: &AlgebraSpec, w: &AffineWeight) -> AffineWeight {
        let r = alg.rank();
        let moved: Vec<i64> = (0..r)
            .map(|i| (0..r).map(|j| self.classical[i][j] * w.classical[j]).sum())
            .collect();
        let gram = alg.coroot_gram();
        let shift: Vec<i64> = (0..r)
            .map(|i| (0..r).map(|j| gram[i][j] * self.theta[j]).sum())
            .collect();
        let pairing: i64 = moved.iter().zip(&self.theta).map(|(l, b)| l * b).sum();
        let norm: i64 = shift.iter().zip(&self.theta).map(|(s, b)| s * b).sum();
        AffineWeight {
            classical: moved
                .iter()
                .zip(&shift)
                .map(|(l, s)| l + w.level * s)
                .collect(),
            level: w.level,
            grade: w.grade - pairing - w.level * norm / 2,
        }
    }

    /// `|θ^∨|²`.
    pub fn norm(&self, alg: &AlgebraSpec) -> i64 {
        let gram = alg.coroot_gram();
        let r = self.theta.len();
        (0..r)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .map(|(i, j)| self.theta[i] * gram[i][j] * self.theta[j])
            .sum()
    }

    /// Classical part acting on a label vector.
    pub fn classical_action(&self, labels: &[i64]) -> Vec<i64> {
        self.classical
            .iter()
            .map(|row| row.iter().zip(labels).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `(λ°, θ^∨)` for classical labels `λ°`.
    pub fn pairing(&self, labels: &[i64]) -> i64 {
        labels.iter().zip(&self.theta).map(|(l, b)| l * b).sum()
    }
}

/// All elements of the orbit of a dominant weight with grade at least
/// `min_grade`, together with the parity of the word that reached them
/// (`ε` for regular orbits). Reduction never lowers the grade, so every
/// element of the window is connected to the start inside the window.
pub fn orbit_within(
    alg: &AlgebraSpec,
    start: &AffineWeight,
    min_grade: i64,
    max_nodes: usize,
) -> Result<Vec<(AffineWeight, i8)>> {
    if start.level <= 0 {
        return Err(Error::NonTermination(
            "orbit enumeration needs positive level".into(),
        ));
    }
    if !alg.is_dominant(start) {
        return Err(Error::config(
            "orbit enumeration must start from a dominant weight",
        ));
    }
    if start.grade < min_grade {
        return Ok(Vec::new());
    }
    let r = alg.rank();
    let mut seen: HashMap<AffineWeight, usize> = HashMap::new();
    let mut out: Vec<(AffineWeight, i8)> = vec![(start.clone(), 1)];
    seen.insert(start.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        let (w, sign) = out[idx].clone();
        for i in 0..=r {
            let label = if i == 0 {
                alg.zeroth_label(&w)
            } else {
                w.classical[i - 1]
            };
            if label == 0 {
                continue;
            }
            let next = reflect(alg, i, &w);
            if next.grade < min_grade || seen.contains_key(&next) {
                continue;
            }
            if out.len() >= max_nodes {
                return Err(Error::Resource(format!(
                    "orbit enumeration exceeded {max_nodes} weights"
                )));
            }
            seen.insert(next.clone(), out.len());
            queue.push_back(out.len());
            out.push((next, -sign));
        }
    }
    Ok(out)
}
