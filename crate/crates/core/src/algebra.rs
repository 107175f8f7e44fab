//! Cartan data, its untwisted affinization and exact weight arithmetic.
//!
//! Weights are stored in the Dynkin-label basis: `classical[i]` is the label
//! `λ_{i+1}` against the simple coroot `α_{i+1}^∨`, the zeroth label is
//! implied by the level. All lattice weights have integer labels and integer
//! grades for untwisted algebras, so the hot paths run on `i64`; rationals
//! only appear for inner products and the simple-root display basis.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, rat, IntMatrix, RatMatrix};

/// Affine weight `(λ°; k; n)`. `grade` is the coefficient of `δ`, so weights of
/// a module with highest weight at grade 0 sit at grades `<= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineWeight {
    pub classical: Vec<i64>,
    pub level: i64,
    pub grade: i64,
}

impl AffineWeight {
    pub fn new(classical: Vec<i64>, level: i64, grade: i64) -> Self {
        Self {
            classical,
            level,
            grade,
        }
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![0; rank], 0, 0)
    }

    pub fn rank(&self) -> usize {
        self.classical.len()
    }

    pub fn add(&self, other: &AffineWeight) -> AffineWeight {
        AffineWeight {
            classical: self
                .classical
                .iter()
                .zip(&other.classical)
                .map(|(a, b)| a + b)
                .collect(),
            level: self.level + other.level,
            grade: self.grade + other.grade,
        }
    }

    pub fn sub(&self, other: &AffineWeight) -> AffineWeight {
        AffineWeight {
            classical: self
                .classical
                .iter()
                .zip(&other.classical)
                .map(|(a, b)| a - b)
                .collect(),
            level: self.level - other.level,
            grade: self.grade - other.grade,
        }
    }

    /// Shift along the imaginary direction.
    pub fn with_grade(&self, grade: i64) -> AffineWeight {
        AffineWeight {
            grade,
            ..self.clone()
        }
    }
}

/// Root-lattice vector `α° + nδ`, classical part in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVector {
    pub classical: Vec<i64>,
    pub grade: i64,
}

/// Residue of a classical weight in `P°/Q°`, read off the Smith normal form
/// of the Cartan matrix. Only the nontrivial invariant factors contribute.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CongruenceClassId {
    pub residue: Vec<i64>,
}

impl std::fmt::Display for CongruenceClassId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.residue.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Classical Cartan data together with everything derived for the untwisted
/// affine extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    label: String,
    cartan: IntMatrix,
    /// `d_i` with `d_i A_ij` symmetric, scaled so that the highest root has
    /// squared length 2.
    symmetrizer: Vec<BigRational>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    dual_coxeter: i64,

    cartan_det: i64,
    /// `det(A) * A⁻¹`, integral.
    cartan_adj: IntMatrix,
    cartan_inv: RatMatrix,
    /// Gram matrix of the fundamental weights.
    weight_gram: RatMatrix,
    /// `(α_i^∨, α_j^∨)`, integral for every finite type.
    coroot_gram: IntMatrix,
    theta_labels: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
    smith: linalg::SmithForm,
}

#[derive(Debug, Deserialize)]
struct AlgebraConfig {
    label: String,
    cartan: Vec<Vec<i64>>,
    #[serde(default)]
    symmetrizer: Option<Vec<serde_json::Value>>,
}

impl AlgebraSpec {
    /// Validates a classical Cartan matrix and builds its affine data. When
    /// `symmetrizer` is `None` it is derived from the matrix.
    pub fn new(
        label: impl Into<String>,
        cartan: IntMatrix,
        symmetrizer: Option<Vec<BigRational>>,
    ) -> Result<Self> {
        let label = label.into();
        let r = cartan.len();
        if r == 0 {
            return Err(Error::config("rank must be at least 1"));
        }
        if cartan.iter().any(|row| row.len() != r) {
            return Err(Error::config("Cartan matrix must be square"));
        }
        for i in 0..r {
            if cartan[i][i] != 2 {
                return Err(Error::config(format!("A[{i}][{i}] must be 2")));
            }
            for j in 0..r {
                if i != j && cartan[i][j] > 0 {
                    return Err(Error::config(format!("A[{i}][{j}] must be <= 0")));
                }
                if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                    return Err(Error::config(format!(
                        "A[{i}][{j}] and A[{j}][{i}] must vanish together"
                    )));
                }
            }
        }

        let d = match symmetrizer {
            Some(d) => {
                if d.len() != r {
                    return Err(Error::config("symmetrizer length must equal the rank"));
                }
                if d.iter().any(|x| !x.is_positive()) {
                    return Err(Error::config("symmetrizer entries must be positive"));
                }
                d
            }
            None => derive_symmetrizer(&cartan)?,
        };
        for i in 0..r {
            for j in 0..r {
                if &d[i] * rat(cartan[i][j]) != &d[j] * rat(cartan[j][i]) {
                    return Err(Error::config(format!(
                        "d_i A_ij is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let sym: RatMatrix = (0..r)
            .map(|i| (0..r).map(|j| &d[i] * rat(cartan[i][j])).collect())
            .collect();
        if !linalg::is_positive_definite(&sym) {
            return Err(Error::config(
                "symmetrized Cartan matrix is not positive definite (not of finite type)",
            ));
        }

        let positive_roots = positive_roots(&cartan)?;
        let theta = positive_roots
            .iter()
            .max_by_key(|root| root.iter().sum::<i64>())
            .cloned()
            .expect("finite type has roots");

        // Rescale so that (θ, θ) = 2.
        let theta_sq: BigRational = (0..r)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .map(|(i, j)| rat(theta[i] * theta[j]) * &sym[i][j])
            .sum();
        let scale = rat(2) / theta_sq;
        let d: Vec<BigRational> = d.into_iter().map(|x| x * &scale).collect();

        let marks = theta.clone();
        let comarks: Vec<i64> = marks
            .iter()
            .zip(&d)
            .map(|(&a, di)| {
                let c = rat(a) * di;
                if c.is_integer() && c.is_positive() {
                    Ok(c.to_integer().to_i64().unwrap_or(0))
                } else {
                    Err(Error::config("comarks are not positive integers"))
                }
            })
            .collect::<Result<_>>()?;
        let dual_coxeter = 1 + comarks.iter().sum::<i64>();

        let cartan_inv = linalg::inverse(&linalg::to_rational(&cartan)).expect("positive definite");
        let cartan_det = linalg::determinant_i64(&cartan)
            .to_i64()
            .ok_or_else(|| Error::config("Cartan determinant too large"))?;
        let cartan_adj: IntMatrix = cartan_inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x * rat(cartan_det)).to_integer().to_i64().unwrap_or(0))
                    .collect()
            })
            .collect();
        let weight_gram: RatMatrix = (0..r)
            .map(|i| (0..r).map(|j| &d[i] * &cartan_inv[i][j]).collect())
            .collect();
        let coroot_gram: IntMatrix = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let c = rat(cartan[i][j]) / &d[j];
                        if c.is_integer() {
                            Ok(c.to_integer().to_i64().unwrap_or(0))
                        } else {
                            Err(Error::config("coroot lattice is not integral"))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let theta_labels: Vec<i64> = (0..r)
            .map(|i| (0..r).map(|j| cartan[i][j] * theta[j]).sum())
            .collect();
        let smith = linalg::smith_normal_form(&cartan);

        Ok(Self {
            label,
            cartan,
            symmetrizer: d,
            marks,
            comarks,
            dual_coxeter,
            cartan_det,
            cartan_adj,
            cartan_inv,
            weight_gram,
            coroot_gram,
            theta_labels,
            positive_roots,
            smith,
        })
    }

    /// Built-in Cartan types.
    pub fn preset(name: &str) -> Result<Self> {
        let cartan = match name {
            "A1" => vec![vec![2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            _ => return Err(Error::config(format!("unknown algebra preset `{name}`"))),
        };
        let r = cartan.len();
        Self::new(name, cartan, Some(vec![rat(1); r]))
    }

    /// Parses the JSON config format
    /// `{"label": "A2", "cartan": [[2,-1],[-1,2]], "symmetrizer": [1,1]}`.
    /// Symmetrizer entries may be integers or strings such as `"1/2"`.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: AlgebraConfig = serde_json::from_str(text)
            .map_err(|e| Error::config(format!("invalid algebra config: {e}")))?;
        let symmetrizer = cfg
            .symmetrizer
            .map(|vals| vals.iter().map(parse_rational).collect::<Result<Vec<_>>>())
            .transpose()?;
        Self::new(cfg.label, cfg.cartan, symmetrizer)
    }

    /// A preset name, or else a path to a JSON config file.
    pub fn load(name_or_path: &str) -> Result<Self> {
        if let Ok(spec) = Self::preset(name_or_path) {
            return Ok(spec);
        }
        let path = Path::new(name_or_path);
        if !path.exists() {
            return Err(Error::config(format!(
                "`{name_or_path}` is neither a preset (A1, A2, A3) nor a readable file"
            )));
        }
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[BigRational] {
        &self.symmetrizer
    }

    /// Marks `a_1..a_r` (the zeroth mark is 1).
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// Comarks `a_1^∨..a_r^∨` (the zeroth comark is 1).
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }

    /// Highest root, Dynkin labels.
    pub fn theta_labels(&self) -> &[i64] {
        &self.theta_labels
    }

    /// Highest root in the simple-root basis (equal to the marks).
    pub fn theta_root(&self) -> &[i64] {
        &self.marks
    }

    pub fn coroot_gram(&self) -> &IntMatrix {
        &self.coroot_gram
    }

    /// Positive classical roots in the simple-root basis, sorted by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn zeroth_label(&self, w: &AffineWeight) -> i64 {
        w.level
            - w.classical
                .iter()
                .zip(&self.comarks)
                .map(|(l, c)| l * c)
                .sum::<i64>()
    }

    /// Labels `(λ_0, λ_1, .., λ_r)`.
    pub fn affine_labels(&self, w: &AffineWeight) -> Vec<i64> {
        let mut out = Vec::with_capacity(w.classical.len() + 1);
        out.push(self.zeroth_label(w));
        out.extend_from_slice(&w.classical);
        out
    }

    pub fn is_dominant(&self, w: &AffineWeight) -> bool {
        self.zeroth_label(w) >= 0 && w.classical.iter().all(|&l| l >= 0)
    }

    /// Weight with prescribed labels `λ_1..λ_r` at level `k`, grade 0.
    pub fn weight(&self, classical: &[i64], level: i64) -> Result<AffineWeight> {
        if classical.len() != self.rank() {
            return Err(Error::config(format!(
                "expected {} Dynkin labels, got {}",
                self.rank(),
                classical.len()
            )));
        }
        Ok(AffineWeight::new(classical.to_vec(), level, 0))
    }

    /// Weyl vector: every label 1, level `h^∨`, grade 0.
    pub fn weyl_vector(&self) -> AffineWeight {
        AffineWeight::new(vec![1; self.rank()], self.dual_coxeter, 0)
    }

    /// Invariant form `(λ°, μ°) + k_λ n_μ + k_μ n_λ`.
    pub fn inner_product(&self, a: &AffineWeight, b: &AffineWeight) -> Result<BigRational> {
        if a.rank() != self.rank() || b.rank() != self.rank() {
            return Err(Error::config("weight rank does not match the algebra"));
        }
        Ok(self.classical_inner_product(&a.classical, &b.classical)
            + rat(a.level * b.grade + b.level * a.grade))
    }

    pub fn classical_inner_product(&self, a: &[i64], b: &[i64]) -> BigRational {
        let r = self.rank();
        let mut acc = BigRational::zero();
        for i in 0..r {
            if a[i] == 0 {
                continue;
            }
            for j in 0..r {
                if b[j] != 0 {
                    acc += &self.weight_gram[i][j] * rat(a[i] * b[j]);
                }
            }
        }
        acc
    }

    /// Classical part in the simple-root basis.
    pub fn to_root_basis(&self, w: &AffineWeight) -> Vec<BigRational> {
        let v: Vec<BigRational> = w.classical.iter().map(|&x| rat(x)).collect();
        linalg::mat_vec(&self.cartan_inv, &v)
    }

    /// Inverse of [`AlgebraSpec::to_root_basis`]; fails unless the labels come
    /// out integral.
    pub fn from_root_basis(
        &self,
        coords: &[BigRational],
        level: i64,
        grade: i64,
    ) -> Result<AffineWeight> {
        if coords.len() != self.rank() {
            return Err(Error::config("coordinate count does not match the rank"));
        }
        let labels = (0..self.rank())
            .map(|i| {
                let v: BigRational = (0..self.rank())
                    .map(|j| rat(self.cartan[i][j]) * &coords[j])
                    .sum();
                if v.is_integer() {
                    v.to_integer()
                        .to_i64()
                        .ok_or_else(|| Error::config("label overflow"))
                } else {
                    Err(Error::config("coordinates do not give an integral weight"))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AffineWeight::new(labels, level, grade))
    }

    /// Simple-root coordinates of a classical label vector when it lies in the
    /// root lattice.
    pub fn root_coords(&self, labels: &[i64]) -> Option<Vec<i64>> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                let num: i64 = (0..r).map(|j| self.cartan_adj[i][j] * labels[j]).sum();
                (num % self.cartan_det == 0).then(|| num / self.cartan_det)
            })
            .collect()
    }

    /// Dynkin labels of a root-lattice vector given in the simple-root basis.
    pub fn labels_of_root(&self, coords: &[i64]) -> Vec<i64> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| self.cartan[i][j] * coords[j]).sum())
            .collect()
    }

    pub fn root_to_weight(&self, root: &RootVector) -> AffineWeight {
        AffineWeight::new(self.labels_of_root(&root.classical), 0, root.grade)
    }

    pub fn congruence_class(&self, classical: &[i64]) -> CongruenceClassId {
        let residue = self
            .smith
            .diagonal
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d != 1)
            .map(|(i, &d)| {
                let v: i64 = self.smith.u[i]
                    .iter()
                    .zip(classical)
                    .map(|(a, b)| a * b)
                    .sum();
                if d == 0 {
                    v
                } else {
                    v.rem_euclid(d)
                }
            })
            .collect();
        CongruenceClassId { residue }
    }

    /// Order of `P°/Q°`.
    pub fn class_count(&self) -> i64 {
        self.cartan_det.abs()
    }

    /// Whether `upper - lower` is a non-negative integer combination of
    /// `α_0, .., α_r`.
    pub fn dominates(&self, upper: &AffineWeight, lower: &AffineWeight) -> bool {
        if upper.level != lower.level {
            return false;
        }
        let c0 = upper.grade - lower.grade;
        if c0 < 0 {
            return false;
        }
        let diff: Vec<i64> = upper
            .classical
            .iter()
            .zip(&lower.classical)
            .map(|(a, b)| a - b)
            .collect();
        match self.root_coords(&diff) {
            Some(c) => c.iter().zip(&self.marks).all(|(ci, ti)| ci + c0 * ti >= 0),
            None => false,
        }
    }

    /// Order used for class enumeration: lexicographic on simple-root
    /// coordinates, which is the order the published A2 tables use.
    pub fn root_basis_order(&self, a: &AffineWeight, b: &AffineWeight) -> Ordering {
        self.to_root_basis(a)
            .cmp(&self.to_root_basis(b))
            .then_with(|| a.cmp(b))
    }
}

fn parse_rational(v: &serde_json::Value) -> Result<BigRational> {
    match v {
        serde_json::Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map(BigRational::from_integer)
            .map_err(|_| Error::config(format!("symmetrizer entry {n} is not an integer"))),
        serde_json::Value::String(s) => {
            let (num, den) = s.split_once('/').unwrap_or((s, "1"));
            let num: BigInt = num
                .trim()
                .parse()
                .map_err(|_| Error::config(format!("bad rational `{s}`")))?;
            let den: BigInt = den
                .trim()
                .parse()
                .map_err(|_| Error::config(format!("bad rational `{s}`")))?;
            if den.is_zero() {
                return Err(Error::config(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(num, den))
        }
        other => Err(Error::config(format!("bad symmetrizer entry {other}"))),
    }
}

/// Propagates `d_j = d_i A_ij / A_ji` along the Dynkin diagram.
fn derive_symmetrizer(cartan: &IntMatrix) -> Result<Vec<BigRational>> {
    let r = cartan.len();
    let mut d: Vec<Option<BigRational>> = vec![None; r];
    for start in 0..r {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(BigRational::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().expect("visited");
            for j in 0..r {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                let dj = &di * rat(cartan[i][j]) / rat(cartan[j][i]);
                match &d[j] {
                    Some(existing) if *existing != dj => {
                        return Err(Error::config("Cartan matrix is not symmetrizable"))
                    }
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                }
            }
        }
    }
    Ok(d.into_iter().map(|x| x.expect("all assigned")).collect())
}

/// Positive roots by extending root strings: `β + α_i` is a root iff
/// `p - <β, α_i^∨> > 0`, `p` being how far the string extends downwards.
fn positive_roots(cartan: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    let r = cartan.len();
    let simple: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut all: Vec<Vec<i64>> = simple.clone();
    let mut known: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..r {
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if known.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..r).map(|j| cartan[i][j] * beta[j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        if known.len() > 10_000 {
            return Err(Error::config("root system is not finite"));
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort_by_key(|root| (root.iter().sum::<i64>(), root.clone()));
    Ok(all)
}
