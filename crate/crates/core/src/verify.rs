//! Fixture comparison and structural self-checks, reported as PASS/FAIL lines
//! with the first divergence.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::algebra::{AffineWeight, AlgebraSpec};
use crate::error::Result;
use crate::fan::{build_fan, verify_denominator, Fan};
use crate::fixtures::{Entry, Fixture, FixtureBody};
use crate::folding::{build_folded_fans, lemma1_check, translation_check};
use crate::io::FanEntry;
use crate::oracle::RacahOracle;
use crate::par::Strategy;
use crate::strings::{class_of, enumerate_class_weights, ModuleComputation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Summary on success, first divergence on failure.
    pub detail: String,
}

impl CheckResult {
    fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            detail: detail.into(),
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, r: Result<CheckResult>) -> Self {
        r.unwrap_or_else(|e| CheckResult::fail(name, e.to_string()))
    }

    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        format!("{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for w in &self.warnings {
            out.push_str(&format!("WARN {w}\n"));
        }
        for c in &self.checks {
            out.push_str(&c.line());
            out.push('\n');
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out.push_str(&format!(
            "{} checks, {} failed\n",
            self.checks.len(),
            failed
        ));
        out
    }
}

/// Compares one fixture against a fresh computation.
pub fn check_fixture(fx: &Fixture, strategy: Strategy) -> CheckResult {
    let name = format!("fixture {}", fx.name);
    CheckResult::from_result(&name, check_fixture_inner(&name, fx, strategy))
}

fn check_fixture_inner(name: &str, fx: &Fixture, strategy: Strategy) -> Result<CheckResult> {
    match &fx.body {
        FixtureBody::Fan {
            algebra,
            cutoff,
            vectors,
        } => {
            let alg = AlgebraSpec::load(algebra)?;
            let fan = build_fan(&alg, *cutoff)?;
            Ok(compare_fan(name, &fan, vectors))
        }
        FixtureBody::FoldedFan {
            algebra,
            level,
            mu,
            depth,
            rows,
        } => {
            let alg = AlgebraSpec::load(algebra)?;
            let (base, _) = class_of(&alg, *level, mu)?;
            let fan = build_fan(&alg, *depth as i64)?;
            let folded = build_folded_fans(&alg, &base, &fan, *depth as i64, strategy)?;
            for row in rows {
                let (j, s) = (row.base, row.target);
                if j == 0 || s == 0 || j > base.len() || s > base.len() {
                    return Ok(CheckResult::fail(
                        name,
                        format!("row eta_{{{j},{s}}} is outside the class"),
                    ));
                }
                let computed = folded[j - 1].row(s - 1);
                if let Some(d) = first_divergence(
                    &row.eta,
                    &computed
                        .iter()
                        .map(|&x| BigInt::from(x))
                        .collect::<Vec<_>>(),
                ) {
                    return Ok(CheckResult::fail(name, format!("eta_{{{j},{s}}}({d})")));
                }
            }
            Ok(CheckResult::pass(
                name,
                format!("{} rows, {} annotated", rows.len(), fx.annotations()),
            ))
        }
        FixtureBody::Strings {
            algebra,
            level,
            mu,
            depth,
            strings,
        } => {
            let alg = AlgebraSpec::load(algebra)?;
            let run = ModuleComputation::run(&alg, *level, mu, *depth, strategy)?;
            let table = &run.table;
            if strings.len() != table.base.len() {
                return Ok(CheckResult::fail(
                    name,
                    format!(
                        "fixture has {} strings, class has {}",
                        strings.len(),
                        table.base.len()
                    ),
                ));
            }
            let oracle = RacahOracle::new(&alg, table.mu().clone(), run.fan.clone())?;
            for (s, row) in strings.iter().enumerate() {
                if row.xi != table.base[s].classical {
                    return Ok(CheckResult::fail(
                        name,
                        format!(
                            "string {} is through {:?}, expected {:?}",
                            s + 1,
                            table.base[s].classical,
                            row.xi
                        ),
                    ));
                }
                if let Some(d) = first_divergence(&row.coeffs, table.string(s)) {
                    return Ok(CheckResult::fail(name, format!("sigma_{}[{d}]", s + 1)));
                }
                // Corrected entries must also agree with the unfolded recursion.
                for (n, e) in row.coeffs.iter().enumerate() {
                    if e.is_annotated() {
                        let w = AffineWeight::new(row.xi.clone(), *level, -(n as i64));
                        let m = oracle.multiplicity(&w)?;
                        if &m != e.expected() {
                            return Ok(CheckResult::fail(
                                name,
                                format!(
                                    "sigma_{}[{n}]: adjudicated {} but recursion gives {m}",
                                    s + 1,
                                    e.expected()
                                ),
                            ));
                        }
                    }
                }
            }
            Ok(CheckResult::pass(
                name,
                format!(
                    "{} strings to depth {depth}, {} annotated",
                    strings.len(),
                    fx.annotations()
                ),
            ))
        }
    }
}

/// Index of the first mismatch, rendered as `n: expected x, computed y`.
fn first_divergence(expected: &[Entry], computed: &[BigInt]) -> Option<String> {
    if expected.len() > computed.len() {
        return Some(format!(
            "{}: fixture is longer than the computed window ({})",
            computed.len(),
            computed.len()
        ));
    }
    expected
        .iter()
        .zip(computed)
        .enumerate()
        .find(|(_, (e, c))| e.expected() != *c)
        .map(|(n, (e, c))| format!("{n}: expected {}, computed {c}", e.expected()))
}

fn compare_fan(name: &str, fan: &Fan, expected: &[FanEntry]) -> CheckResult {
    let report = verify_denominator(fan);
    if let Some(((root, grade), have, want)) = report.first_mismatch {
        return CheckResult::fail(
            name,
            format!(
                "denominator identity fails at {root:?} grade {grade}: fan {have}, product {want}"
            ),
        );
    }
    let computed: BTreeMap<(i64, Vec<i64>), i64> = fan
        .vectors
        .iter()
        .map(|v| ((v.grade, v.root.clone()), v.mult))
        .collect();
    let mut listed: BTreeMap<(i64, Vec<i64>), i64> = BTreeMap::new();
    for e in expected {
        listed.insert((e.grade, e.root.clone()), e.mult);
    }
    for (k, m) in &listed {
        match computed.get(k) {
            Some(c) if c == m => {}
            Some(c) => {
                return CheckResult::fail(
                    name,
                    format!("{:?} grade {}: expected {m}, computed {c}", k.1, k.0),
                )
            }
            None => {
                return CheckResult::fail(
                    name,
                    format!("{:?} grade {} missing from the fan", k.1, k.0),
                )
            }
        }
    }
    if let Some(k) = computed.keys().find(|k| !listed.contains_key(*k)) {
        return CheckResult::fail(name, format!("{:?} grade {} not in the fixture", k.1, k.0));
    }
    CheckResult::pass(
        name,
        format!("{} vectors, denominator identity holds", listed.len()),
    )
}

/// Structural checks on one module run: grade-independence of every folded
/// shift and its translation decomposition, the unimodular grade-0 block,
/// `m_{μ,0} = 1` and agreement with the unfolded recursion on every dominant
/// weight of the window.
pub fn check_module(
    alg: &AlgebraSpec,
    run: &ModuleComputation,
    strategy: Strategy,
) -> Vec<CheckResult> {
    let t = &run.table;
    let tag = format!(
        "{} level {} mu {:?}",
        alg.label(),
        t.level,
        t.mu().classical
    );
    let mut out = Vec::new();

    let name = format!("lemma1 {tag}");
    let probes = [0, -5];
    let lemma = lemma1_sweep(alg, run, &probes);
    out.push(match lemma {
        Ok(Ok(n)) => CheckResult::pass(&name, format!("{n} folded shifts")),
        Ok(Err(d)) => CheckResult::fail(&name, d),
        Err(e) => CheckResult::fail(&name, e.to_string()),
    });

    let name = format!("grade-0 block {tag}");
    let det = run.system.grade_zero_determinant();
    out.push(if det.abs().is_one() {
        CheckResult::pass(&name, format!("det = {det}"))
    } else {
        CheckResult::fail(&name, format!("det = {det}"))
    });

    let name = format!("highest weight {tag}");
    let top = &t.coefficients[t.mu_index][0];
    out.push(if top.is_one() {
        CheckResult::pass(&name, "m = 1")
    } else {
        CheckResult::fail(&name, format!("m = {top}"))
    });

    let name = format!("oracle {tag}");
    out.push(CheckResult::from_result(
        &name,
        oracle_equivalence(&name, alg, run, strategy),
    ));
    out
}

/// Number of folded shifts checked, or the first failing one.
fn lemma1_sweep(
    alg: &AlgebraSpec,
    run: &ModuleComputation,
    probes: &[i64],
) -> Result<std::result::Result<usize, String>> {
    for xi in &run.base.weights {
        for gamma in &run.fan.vectors {
            if !lemma1_check(alg, xi, gamma, probes)? {
                return Ok(Err(format!(
                    "{:?} with shift {:?} grade {}",
                    xi.classical, gamma.root, gamma.grade
                )));
            }
            if !translation_check(alg, xi, gamma)? {
                return Ok(Err(format!(
                    "translation datum of {:?} + {:?} grade {} does not recompose",
                    xi.classical, gamma.root, gamma.grade
                )));
            }
        }
    }
    Ok(Ok(run.base.len() * run.fan.len()))
}

fn oracle_equivalence(
    name: &str,
    alg: &AlgebraSpec,
    run: &ModuleComputation,
    strategy: Strategy,
) -> Result<CheckResult> {
    let t = &run.table;
    let oracle = RacahOracle::new(alg, t.mu().clone(), run.fan.clone())?;
    let mut weights = Vec::new();
    for base in enumerate_class_weights(alg, t.level)?.into_values() {
        for w in base.weights {
            for n in 0..=t.depth as i64 {
                weights.push(w.with_grade(-n));
            }
        }
    }
    let pairs = strategy.try_map(&weights, |w| {
        Ok((t.weight_multiplicity(w)?, oracle.multiplicity(w)?))
    })?;
    for (w, (folded, unfolded)) in weights.iter().zip(&pairs) {
        if folded != unfolded {
            return Ok(CheckResult::fail(
                name,
                format!(
                    "{:?} grade {}: folded {folded}, recursion {unfolded}",
                    w.classical, w.grade
                ),
            ));
        }
    }
    Ok(CheckResult::pass(
        name,
        format!("{} dominant weights agree", weights.len()),
    ))
}

/// Runs every fixture, then the structural checks for each module named by a
/// string fixture.
pub fn run_suite(fixtures: &[Fixture], strategy: Strategy) -> Report {
    let mut report = Report::default();
    if fixtures.is_empty() {
        report
            .warnings
            .push("no fixtures found; nothing to verify".into());
        return report;
    }
    report.checks = strategy.map(fixtures, |fx| check_fixture(fx, strategy));

    let mut modules: Vec<(String, i64, Vec<i64>, usize)> = Vec::new();
    for fx in fixtures {
        if let FixtureBody::Strings {
            algebra,
            level,
            mu,
            depth,
            ..
        } = &fx.body
        {
            let key = (algebra.clone(), *level, mu.clone(), *depth);
            if !modules.contains(&key) {
                modules.push(key);
            }
        }
    }
    let structural = strategy.map(&modules, |(algebra, level, mu, depth)| {
        let name = format!("module {algebra} level {level} mu {mu:?}");
        let run = AlgebraSpec::load(algebra).and_then(|alg| {
            ModuleComputation::run(&alg, *level, mu, *depth, strategy).map(|r| (alg, r))
        });
        match run {
            Ok((alg, run)) => check_module(&alg, &run, strategy),
            Err(e) => vec![CheckResult::fail(name, e.to_string())],
        }
    });
    report.checks.extend(structural.into_iter().flatten());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn empty_fixture_set_passes_with_warning() {
        let r = run_suite(&[], Strategy::Sequential);
        assert!(r.passed());
        assert_eq!(r.warnings.len(), 1);
        assert!(r.render().starts_with("WARN"));
    }

    #[test]
    fn perturbed_fixture_fails_at_the_right_place() {
        let mut fx = fixtures::embedded()
            .into_iter()
            .find(|f| f.name == "a2-level2-class1-strings")
            .unwrap();
        assert!(check_fixture(&fx, Strategy::Sequential).passed);
        if let FixtureBody::Strings { strings, .. } = &mut fx.body {
            strings[1].coeffs[4] = Entry::Plain(BigInt::from(33));
        }
        let r = check_fixture(&fx, Strategy::Sequential);
        assert!(!r.passed);
        assert_eq!(r.detail, "sigma_2[4: expected 33, computed 32]");
    }

    #[test]
    fn fan_fixture_detects_sign_flip() {
        let mut fx = fixtures::embedded()
            .into_iter()
            .find(|f| f.name == "a2-fan")
            .unwrap();
        if let FixtureBody::Fan { vectors, .. } = &mut fx.body {
            vectors[0].mult = -vectors[0].mult;
        }
        let r = check_fixture(&fx, Strategy::Sequential);
        assert!(!r.passed);
        assert!(r.detail.contains("[0, 1] grade 0"), "{}", r.detail);
    }
}
