//! Reference computations independent of folding: the unfolded Racah
//! recursion over the fan, and closed-form q-series for level 1.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{AffineWeight, AlgebraSpec};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{self, rat};
use crate::weyl;

/// Multiplicities of `L^μ` by the generalized Racah formula
/// `m_ξ = Σ_γ s(γ) m_{ξ+γ} + Σ_w ε(w) [w∘μ = ξ]`, memoized on dominant
/// representatives. Safe to share between threads; concurrent fills may
/// duplicate work but never disagree.
#[derive(Debug)]
pub struct RacahOracle {
    alg: AlgebraSpec,
    mu: AffineWeight,
    fan: Fan,
    cache: Mutex<HashMap<AffineWeight, BigInt>>,
}

impl RacahOracle {
    pub fn new(alg: &AlgebraSpec, mu: AffineWeight, fan: Fan) -> Result<Self> {
        if mu.level < 1 || !alg.is_dominant(&mu) || mu.grade != 0 {
            return Err(Error::config(
                "oracle needs a dominant highest weight of positive level at grade 0",
            ));
        }
        Ok(Self {
            alg: alg.clone(),
            mu,
            fan,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn mu(&self) -> &AffineWeight {
        &self.mu
    }

    pub fn cutoff(&self) -> i64 {
        self.fan.cutoff
    }

    pub fn multiplicity(&self, w: &AffineWeight) -> Result<BigInt> {
        if w.level != self.mu.level || w.rank() != self.mu.rank() {
            return Err(Error::config(
                "weight does not belong to the module's level",
            ));
        }
        let dom = weyl::to_dominant(&self.alg, w)?.dominant;
        if -dom.grade > self.fan.cutoff {
            return Err(Error::OutOfWindow {
                requested: -dom.grade,
                cutoff: self.fan.cutoff,
            });
        }
        self.dominant_multiplicity(&dom)
    }

    fn dominant_multiplicity(&self, xi: &AffineWeight) -> Result<BigInt> {
        if xi.grade > 0 || !self.alg.dominates(&self.mu, xi) {
            return Ok(BigInt::zero());
        }
        if let Some(m) = self.cache.lock().expect("oracle cache poisoned").get(xi) {
            return Ok(m.clone());
        }
        let mut acc = BigInt::zero();
        let singular = weyl::to_dominant_shifted(&self.alg, xi)?;
        if !singular.on_wall && singular.dominant == self.mu {
            acc += singular.sign;
        }
        for gamma in self.fan.up_to(-xi.grade) {
            let up = weyl::to_dominant(&self.alg, &xi.add(&gamma.as_weight()))?.dominant;
            let m = self.dominant_multiplicity(&up)?;
            if !m.is_zero() {
                acc += m * gamma.mult;
            }
        }
        if acc.is_negative() {
            return Err(Error::consistency(format!(
                "negative multiplicity {acc} at {:?}",
                xi
            )));
        }
        self.cache
            .lock()
            .expect("oracle cache poisoned")
            .insert(xi.clone(), acc.clone());
        Ok(acc)
    }
}

/// One-shot form of [`RacahOracle::multiplicity`].
pub fn racah_multiplicity(
    alg: &AlgebraSpec,
    mu: &AffineWeight,
    w: &AffineWeight,
    fan: &Fan,
) -> Result<BigInt> {
    RacahOracle::new(alg, mu.clone(), fan.clone())?.multiplicity(w)
}

/// `Π_{n>=1} (1 - q^n)` to order `n` by the pentagonal number theorem.
pub fn euler_series(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n + 1];
    out[0] = BigInt::one();
    for k in 1i64.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let a = (k * (3 * k - 1) / 2) as usize;
        let b = (k * (3 * k + 1) / 2) as usize;
        if a > n {
            break;
        }
        out[a] += sign;
        if b <= n {
            out[b] += sign;
        }
    }
    out
}

pub fn series_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Reciprocal of a series with constant term `±1`.
pub fn series_reciprocal(a: &[BigInt], n: usize) -> Vec<BigInt> {
    assert!(
        a[0].abs().is_one(),
        "series reciprocal needs a unit constant term"
    );
    let mut out = vec![BigInt::zero(); n + 1];
    out[0] = a[0].clone();
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for j in 1..=k.min(a.len() - 1) {
            acc += &a[j] * &out[k - j];
        }
        out[k] = -acc * &a[0];
    }
    out
}

/// `Π (1 - q^n)^e` to order `n`, any integer exponent.
pub fn euler_power_series(e: i64, n: usize) -> Vec<BigInt> {
    let base = euler_series(n);
    let mut out = vec![BigInt::zero(); n + 1];
    out[0] = BigInt::one();
    for _ in 0..e.unsigned_abs() {
        out = series_mul(&out, &base, n);
    }
    if e < 0 {
        series_reciprocal(&out, n)
    } else {
        out
    }
}

/// `Π (1 - q^n)^{-2}` to order `n`.
pub fn euler_square_series(n: usize) -> Vec<BigInt> {
    let e = euler_series(n);
    series_reciprocal(&series_mul(&e, &e, n), n)
}

/// `-Π (1 - q^n)^2`, the folded fan of a rank-2 level-1 module.
pub fn level1_eta_series(n: usize) -> Vec<i64> {
    let e = euler_series(n);
    series_mul(&e, &e, n)
        .iter()
        .map(|c| -c.to_i64().expect("small coefficient"))
        .collect()
}

/// Total multiplicity of each slice `grade = -n`, `n = 0..=depth`, of a
/// level-1 module of a simply-laced algebra, from the lattice form of its
/// character: the weights `μ + α - (|α|²/2 + (μ, α))δ`, `α ∈ Q°`, each head
/// a string `Π (1 - q^n)^{-r}`.
pub fn level1_slice_totals(alg: &AlgebraSpec, mu: &[i64], depth: usize) -> Result<Vec<BigInt>> {
    let r = alg.rank();
    if mu.len() != r {
        return Err(Error::config("label count does not match the rank"));
    }
    let dominant = alg.weight(mu, 1)?;
    if !alg.is_dominant(&dominant) {
        return Err(Error::config("not a dominant level-1 weight"));
    }
    // Quadratic q(c) = c^T G c / 2 + b^T c on root coordinates.
    let gram: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            let ai = alg.labels_of_root(&unit(r, i));
            (0..r)
                .map(|j| alg.classical_inner_product(&ai, &alg.labels_of_root(&unit(r, j))))
                .collect()
        })
        .collect();
    let b: Vec<BigRational> = (0..r)
        .map(|i| alg.classical_inner_product(mu, &alg.labels_of_root(&unit(r, i))))
        .collect();
    let ginv = linalg::inverse(&gram).ok_or_else(|| Error::config("singular root Gram matrix"))?;
    let centre: Vec<BigRational> = linalg::mat_vec(&ginv, &b).into_iter().map(|x| -x).collect();
    let q = |c: &[BigRational]| -> BigRational {
        let gc = linalg::mat_vec(&gram, c);
        let quad: BigRational = c.iter().zip(&gc).map(|(x, y)| x * y).sum();
        let lin: BigRational = c.iter().zip(&b).map(|(x, y)| x * y).sum();
        quad / rat(2) + lin
    };
    let slack = rat(depth as i64) - q(&centre);
    // |c_i - centre_i| <= sqrt(2 · slack · G⁻¹_ii) on the sublevel set.
    let bounds: Vec<(i64, i64)> = (0..r)
        .map(|i| {
            let t = (rat(2) * &slack * &ginv[i][i]).ceil().to_integer();
            let radius: BigInt = Roots::sqrt(&t) + 1;
            let c: BigInt = centre[i].floor().to_integer();
            let lo = (&c - &radius).to_i64().unwrap_or(i64::MIN / 2);
            let hi = (&c + &radius + BigInt::one())
                .to_i64()
                .unwrap_or(i64::MAX / 2);
            (lo, hi)
        })
        .collect();

    let strings = euler_power_series(-(r as i64), depth);
    let mut totals = vec![BigInt::zero(); depth + 1];
    let mut c: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    loop {
        let cr: Vec<BigRational> = c.iter().map(|&x| rat(x)).collect();
        let shell = q(&cr);
        if !shell.is_integer() {
            return Err(Error::config("lattice form needs a simply-laced algebra"));
        }
        if let Some(s) = shell
            .to_integer()
            .to_i64()
            .filter(|&s| s >= 0 && s <= depth as i64)
        {
            let s = s as usize;
            for n in s..=depth {
                totals[n] += &strings[n - s];
            }
        }
        // Odometer over the box.
        let mut i = 0;
        loop {
            if i == r {
                return Ok(totals);
            }
            c[i] += 1;
            if c[i] <= bounds[i].1 {
                break;
            }
            c[i] = bounds[i].0;
            i += 1;
        }
    }
}

fn unit(r: usize, i: usize) -> Vec<i64> {
    (0..r).map(|j| i64::from(i == j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::build_fan;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn euler_series_head() {
        assert_eq!(
            ints(&euler_series(12)),
            vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]
        );
        assert_eq!(ints(&euler_square_series(0)), vec![1]);
        assert_eq!(ints(&euler_square_series(4)), vec![1, 2, 5, 10, 20]);
        assert_eq!(euler_square_series(10)[10], BigInt::from(481));
        assert_eq!(euler_power_series(-2, 20), euler_square_series(20));
        // Partitions.
        assert_eq!(euler_power_series(-1, 10)[10], BigInt::from(42));
    }

    #[test]
    fn eta_series() {
        let eta = level1_eta_series(14);
        assert_eq!(&eta[..6], &[-1, 2, 1, -2, -1, -2]);
        assert_eq!(eta[6], 2);
        assert_eq!(eta[14], -3);
    }

    #[test]
    fn racah_level_one() {
        let alg = AlgebraSpec::preset("A2").unwrap();
        let fan = build_fan(&alg, 3).unwrap();
        let mu = AffineWeight::new(vec![0, 0], 1, 0);
        assert_eq!(
            racah_multiplicity(&alg, &mu, &mu, &fan).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            racah_multiplicity(&alg, &mu, &mu.with_grade(-3), &fan).unwrap(),
            BigInt::from(10)
        );
        assert!(matches!(
            racah_multiplicity(&alg, &mu, &mu.with_grade(-4), &fan),
            Err(Error::OutOfWindow { .. })
        ));
    }

    #[test]
    fn racah_level_two() {
        let alg = AlgebraSpec::preset("A2").unwrap();
        let fan = build_fan(&alg, 4).unwrap();
        let mu = AffineWeight::new(vec![0, 0], 2, 0);
        let w = AffineWeight::new(vec![1, 1], 2, -4);
        assert_eq!(
            racah_multiplicity(&alg, &mu, &w, &fan).unwrap(),
            BigInt::from(32)
        );
    }

    #[test]
    fn slice_totals_match_small_cases() {
        let alg = AlgebraSpec::preset("A2").unwrap();
        let t = level1_slice_totals(&alg, &[0, 0], 2).unwrap();
        assert_eq!(ints(&t[..2]), vec![1, 8]);
        let a1 = AlgebraSpec::preset("A1").unwrap();
        // Basic A1 module: grade -1 holds ±α at 1 and 0 at 1.
        assert_eq!(
            ints(&level1_slice_totals(&a1, &[0], 1).unwrap()),
            vec![1, 3]
        );
    }
}
