//! Congruence-class enumeration, the block system for one module and its
//! grade-by-grade solution into string functions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::{AffineWeight, AlgebraSpec, CongruenceClassId};
use crate::error::{Error, Result};
use crate::fan::{build_fan, Fan};
use crate::folding::{build_folded_fans, BaseWeightSet, FoldedFan};
use crate::linalg::{self, rat, RatMatrix};
use crate::par::Strategy;
use crate::weyl;

/// All dominant weights of level `k` at grade 0, split by congruence class.
/// Within a class weights are ordered by their simple-root coordinates.
pub fn enumerate_class_weights(
    alg: &AlgebraSpec,
    level: i64,
) -> Result<BTreeMap<CongruenceClassId, BaseWeightSet>> {
    if level < 1 {
        return Err(Error::config(format!(
            "level must be at least 1, got {level}"
        )));
    }
    let mut all = Vec::new();
    let mut labels = vec![0i64; alg.rank()];
    collect_dominant(alg.comarks(), level, 0, &mut labels, &mut all);
    let mut classes: BTreeMap<CongruenceClassId, BaseWeightSet> = BTreeMap::new();
    for classical in all {
        let class = alg.congruence_class(&classical);
        classes
            .entry(class.clone())
            .or_insert_with(|| BaseWeightSet {
                level,
                class,
                weights: Vec::new(),
            })
            .weights
            .push(AffineWeight::new(classical, level, 0));
    }
    for base in classes.values_mut() {
        base.weights.sort_by(|a, b| alg.root_basis_order(a, b));
    }
    Ok(classes)
}

fn collect_dominant(
    comarks: &[i64],
    budget: i64,
    i: usize,
    labels: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    if i == comarks.len() {
        out.push(labels.clone());
        return;
    }
    let mut v = 0;
    while v * comarks[i] <= budget {
        labels[i] = v;
        collect_dominant(comarks, budget - v * comarks[i], i + 1, labels, out);
        v += 1;
    }
    labels[i] = 0;
}

/// Class of `μ` together with its position inside it.
pub fn class_of(alg: &AlgebraSpec, level: i64, mu: &[i64]) -> Result<(BaseWeightSet, usize)> {
    let w = alg.weight(mu, level)?;
    if !alg.is_dominant(&w) {
        return Err(Error::config(format!(
            "highest weight {mu:?} is not dominant at level {level}"
        )));
    }
    let classes = enumerate_class_weights(alg, level)?;
    let base = classes
        .into_values()
        .find(|b| b.position(mu).is_some())
        .ok_or_else(|| Error::consistency("highest weight missing from its class"))?;
    let idx = base.position(mu).unwrap_or_default();
    Ok((base, idx))
}

/// The linear system `Σ_s M_(j,s) m_s = δ_j` truncated at `depth` grades.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSystem {
    pub depth: usize,
    pub mu_index: usize,
    /// `eta[j][s][n] = η_{j,s}(n)`.
    pub eta: Vec<Vec<Vec<i64>>>,
}

impl BlockSystem {
    pub fn size(&self) -> usize {
        self.eta.len()
    }

    /// Upper-triangular Toeplitz block with `η_{j,s}(b - a)` at `(a, b)`.
    /// Rows and columns run from the deepest grade up to grade 0.
    pub fn block(&self, j: usize, s: usize) -> Vec<Vec<i64>> {
        let n = self.depth + 1;
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| if b >= a { self.eta[j][s][b - a] } else { 0 })
                    .collect()
            })
            .collect()
    }

    pub fn full_matrix(&self) -> Vec<Vec<i64>> {
        let p = self.size();
        let n = self.depth + 1;
        let mut out = vec![vec![0i64; p * n]; p * n];
        for j in 0..p {
            for s in 0..p {
                for (a, row) in self.block(j, s).into_iter().enumerate() {
                    out[j * n + a][s * n..(s + 1) * n].copy_from_slice(&row);
                }
            }
        }
        out
    }

    /// Right-hand side: `-1` at the grade-0 slot of the highest weight.
    pub fn rhs(&self) -> Vec<i64> {
        let n = self.depth + 1;
        let mut v = vec![0; self.size() * n];
        v[self.mu_index * n + self.depth] = -1;
        v
    }

    /// `[η_{j,s}(0)]`.
    pub fn grade_zero_block(&self) -> Vec<Vec<i64>> {
        self.eta
            .iter()
            .map(|row| row.iter().map(|e| e[0]).collect())
            .collect()
    }

    pub fn grade_zero_determinant(&self) -> BigInt {
        linalg::determinant_i64(&self.grade_zero_block())
    }

    /// Solves the whole block matrix at once. Slow; used as a cross-check of
    /// the forward substitution in [`solve_strings`].
    pub fn solve_monolithic(&self) -> Result<Vec<Vec<BigInt>>> {
        let m = linalg::to_rational(&self.full_matrix());
        let b: Vec<BigRational> = self.rhs().into_iter().map(rat).collect();
        let x =
            linalg::solve(&m, &b).ok_or_else(|| Error::consistency("block matrix is singular"))?;
        let n = self.depth + 1;
        (0..self.size())
            .map(|s| {
                (0..n)
                    .map(|d| integral(&x[s * n + self.depth - d], s, d))
                    .collect()
            })
            .collect()
    }
}

pub fn assemble_system(
    base: &BaseWeightSet,
    folded: &[FoldedFan],
    mu_index: usize,
    depth: usize,
) -> Result<BlockSystem> {
    let p = base.len();
    if folded.len() != p {
        return Err(Error::config(format!(
            "expected {p} folded fans, got {}",
            folded.len()
        )));
    }
    if mu_index >= p {
        return Err(Error::config(format!(
            "highest weight index {mu_index} out of range"
        )));
    }
    let mut eta = Vec::with_capacity(p);
    for (j, ff) in folded.iter().enumerate() {
        if ff.base_index != j {
            return Err(Error::config("folded fans are not in base order"));
        }
        if (ff.cutoff as usize) < depth {
            return Err(Error::OutOfWindow {
                requested: depth as i64,
                cutoff: ff.cutoff,
            });
        }
        eta.push(
            (0..p)
                .map(|s| (0..=depth).map(|n| ff.eta(s, n)).collect())
                .collect(),
        );
    }
    Ok(BlockSystem {
        depth,
        mu_index,
        eta,
    })
}

fn integral(x: &BigRational, s: usize, d: usize) -> Result<BigInt> {
    if !x.is_integer() {
        return Err(Error::consistency(format!(
            "string {} has non-integral coefficient {x} at depth {d}",
            s + 1
        )));
    }
    if x.is_negative() {
        return Err(Error::consistency(format!(
            "string {} has negative coefficient {x} at depth {d}",
            s + 1
        )));
    }
    Ok(x.to_integer())
}

/// Forward substitution over grades with the inverse of the grade-0 block.
pub fn solve_strings(system: &BlockSystem) -> Result<Vec<Vec<BigInt>>> {
    let p = system.size();
    let e0: RatMatrix = linalg::to_rational(&system.grade_zero_block());
    let inv = linalg::inverse(&e0).ok_or_else(|| {
        Error::consistency(format!(
            "grade-0 block is singular: {:?}",
            system.grade_zero_block()
        ))
    })?;
    let mut x: Vec<Vec<BigInt>> = vec![Vec::with_capacity(system.depth + 1); p];
    for d in 0..=system.depth {
        let rhs: Vec<BigRational> = (0..p)
            .map(|j| {
                let mut acc = BigInt::zero();
                if j == system.mu_index && d == 0 {
                    acc -= 1;
                }
                for s in 0..p {
                    for n in 1..=d {
                        let e = system.eta[j][s][n];
                        if e != 0 {
                            acc -= &x[s][d - n] * e;
                        }
                    }
                }
                BigRational::from_integer(acc)
            })
            .collect();
        let sol = linalg::mat_vec(&inv, &rhs);
        for (s, v) in sol.iter().enumerate() {
            x[s].push(integral(v, s, d)?);
        }
    }
    Ok(x)
}

/// String functions of one module through every member of its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringTable {
    pub algebra: AlgebraSpec,
    pub level: i64,
    pub class: CongruenceClassId,
    pub base: Vec<AffineWeight>,
    pub mu_index: usize,
    /// Number of grades below the top, `|u|`.
    pub depth: usize,
    /// `coefficients[s][n]` is the multiplicity of `ξ_s - nδ`.
    pub coefficients: Vec<Vec<BigInt>>,
}

impl StringTable {
    pub fn mu(&self) -> &AffineWeight {
        &self.base[self.mu_index]
    }

    /// The cutoff as a grade, `u = -depth`.
    pub fn cutoff(&self) -> i64 {
        -(self.depth as i64)
    }

    pub fn string(&self, s: usize) -> &[BigInt] {
        &self.coefficients[s]
    }

    /// Multiplicity of an arbitrary weight, via its dominant representative.
    pub fn weight_multiplicity(&self, w: &AffineWeight) -> Result<BigInt> {
        if w.rank() != self.algebra.rank() {
            return Err(Error::config("weight rank does not match the algebra"));
        }
        if w.level != self.level {
            return Err(Error::config(format!(
                "weight has level {}, module has level {}",
                w.level, self.level
            )));
        }
        let dom = weyl::to_dominant(&self.algebra, w)?.dominant;
        if dom.grade > 0 {
            return Ok(BigInt::zero());
        }
        let depth = -dom.grade;
        if depth > self.depth as i64 {
            return Err(Error::OutOfWindow {
                requested: depth,
                cutoff: self.depth as i64,
            });
        }
        Ok(self
            .base
            .iter()
            .position(|b| b.classical == dom.classical)
            .map(|s| self.coefficients[s][depth as usize].clone())
            .unwrap_or_default())
    }

    /// All weights of grade `>= -window` with nonzero multiplicity, sorted by
    /// decreasing grade and then by weight.
    pub fn character(
        &self,
        window: usize,
        strategy: Strategy,
    ) -> Result<Vec<(AffineWeight, BigInt)>> {
        if window > self.depth {
            return Err(Error::OutOfWindow {
                requested: window as i64,
                cutoff: self.depth as i64,
            });
        }
        let w = window as i64;
        let indices: Vec<usize> = (0..self.base.len()).collect();
        let parts = strategy.try_map(&indices, |&s| {
            let coeffs = &self.coefficients[s];
            if coeffs[..=window].iter().all(Zero::is_zero) {
                return Ok(Vec::new());
            }
            let orbit = weyl::orbit_within(
                &self.algebra,
                &self.base[s],
                -w,
                crate::fan::DEFAULT_NODE_BUDGET,
            )?;
            let mut out = Vec::new();
            for (pt, _) in orbit {
                for (d, m) in coeffs.iter().enumerate().take(window + 1) {
                    let grade = pt.grade - d as i64;
                    if grade < -w {
                        break;
                    }
                    if !m.is_zero() {
                        out.push((pt.with_grade(grade), m.clone()));
                    }
                }
            }
            Ok(out)
        })?;
        let mut all: Vec<(AffineWeight, BigInt)> = parts.into_iter().flatten().collect();
        all.sort_by(|a, b| b.0.grade.cmp(&a.0.grade).then_with(|| a.0.cmp(&b.0)));
        Ok(all)
    }
}

/// Every intermediate of the main path for one module.
#[derive(Debug, Clone)]
pub struct ModuleComputation {
    pub base: BaseWeightSet,
    pub fan: Fan,
    pub folded: Vec<FoldedFan>,
    pub system: BlockSystem,
    pub table: StringTable,
}

impl ModuleComputation {
    /// Builds the fan to `depth`, folds it against every class member and
    /// solves for the string functions of `L^μ`.
    pub fn run(
        alg: &AlgebraSpec,
        level: i64,
        mu: &[i64],
        depth: usize,
        strategy: Strategy,
    ) -> Result<Self> {
        let fan = build_fan(alg, depth as i64)?;
        Self::with_fan(alg, level, mu, depth, fan, strategy)
    }

    /// As [`ModuleComputation::run`] with a prebuilt fan of sufficient cutoff.
    pub fn with_fan(
        alg: &AlgebraSpec,
        level: i64,
        mu: &[i64],
        depth: usize,
        fan: Fan,
        strategy: Strategy,
    ) -> Result<Self> {
        let (base, mu_index) = class_of(alg, level, mu)?;
        let folded = build_folded_fans(alg, &base, &fan, depth as i64, strategy)?;
        let system = assemble_system(&base, &folded, mu_index, depth)?;
        let coefficients = solve_strings(&system)?;
        let table = StringTable {
            algebra: alg.clone(),
            level,
            class: base.class.clone(),
            base: base.weights.clone(),
            mu_index,
            depth,
            coefficients,
        };
        Ok(Self {
            base,
            fan,
            folded,
            system,
            table,
        })
    }
}
