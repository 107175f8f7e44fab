//! End-to-end runs checked against independent series and the unfolded
//! recursion, including algebras beyond A2.

use affstr::algebra::AlgebraSpec;
use affstr::fan::{build_fan, verify_denominator};
use affstr::folding::build_folded_fans;
use affstr::oracle::{
    euler_power_series, euler_square_series, level1_eta_series, level1_slice_totals,
};
use affstr::strings::{class_of, ModuleComputation};
use affstr::verify::check_module;
use affstr::Strategy;
use num_bigint::BigInt;

fn b2() -> AlgebraSpec {
    AlgebraSpec::new("B2", vec![vec![2, -2], vec![-1, 2]], None).unwrap()
}

fn g2() -> AlgebraSpec {
    AlgebraSpec::new("G2", vec![vec![2, -3], vec![-1, 2]], None).unwrap()
}

#[test]
fn level_one_a2_folded_fan_is_minus_the_squared_euler_product() {
    let alg = AlgebraSpec::preset("A2").unwrap();
    let eta = level1_eta_series(20);
    let sigma = euler_square_series(20);
    for mu in [[0, 0], [1, 0], [0, 1]] {
        let run = ModuleComputation::run(&alg, 1, &mu, 20, Strategy::Sequential).unwrap();
        assert_eq!(run.folded[0].row(0), eta);
        assert_eq!(run.table.string(0), &sigma[..]);
    }
    for n in 0..=20 {
        let conv: BigInt = (0..=n).map(|i| &sigma[n - i] * eta[i]).sum();
        assert_eq!(conv, BigInt::from(-i64::from(n == 0)));
    }
}

#[test]
fn wider_fan_does_not_change_folded_fans() {
    let alg = AlgebraSpec::preset("A2").unwrap();
    for (level, mu, depth) in [(2, [0, 0], 8), (4, [0, 0], 7), (3, [1, 0], 6)] {
        let (base, _) = class_of(&alg, level, &mu).unwrap();
        let tight = build_fan(&alg, depth).unwrap();
        let wide = build_fan(&alg, depth + 2).unwrap();
        let a = build_folded_fans(&alg, &base, &tight, depth, Strategy::Sequential).unwrap();
        let b = build_folded_fans(&alg, &base, &wide, depth, Strategy::Sequential).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn level_four_block_matches_the_printed_matrix() {
    let alg = AlgebraSpec::preset("A2").unwrap();
    let run = ModuleComputation::run(&alg, 4, &[0, 0], 9, Strategy::Sequential).unwrap();
    let block = run.system.block(1, 2);
    assert_eq!(block[0], vec![1, -1, 1, 0, 1, -1, -1, -1, 0, 0]);
    assert_eq!(block[1], vec![0, 1, -1, 1, 0, 1, -1, -1, -1, 0]);
    assert_eq!(block[9], vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
    assert_eq!(
        run.system.solve_monolithic().unwrap(),
        run.table.coefficients
    );
}

#[test]
fn level_one_strings_of_other_simply_laced_algebras() {
    for (name, rank) in [("A1", 1), ("A3", 3)] {
        let alg = AlgebraSpec::preset(name).unwrap();
        let expected = euler_power_series(-rank, 10);
        let classes = affstr::strings::enumerate_class_weights(&alg, 1).unwrap();
        assert_eq!(classes.len() as i64, alg.class_count());
        for base in classes.values() {
            let mu = &base.weights[0].classical;
            let run = ModuleComputation::run(&alg, 1, mu, 10, Strategy::Sequential).unwrap();
            assert_eq!(run.table.string(0), &expected[..], "{name} {mu:?}");
        }
    }
}

#[test]
fn level_one_character_slices_match_the_lattice_form() {
    for name in ["A1", "A2", "A3"] {
        let alg = AlgebraSpec::preset(name).unwrap();
        let depth = if name == "A3" { 4 } else { 7 };
        for base in affstr::strings::enumerate_class_weights(&alg, 1)
            .unwrap()
            .values()
        {
            let mu = base.weights[0].classical.clone();
            let run = ModuleComputation::run(&alg, 1, &mu, depth, Strategy::Parallel).unwrap();
            let ch = run.table.character(depth, Strategy::Parallel).unwrap();
            let totals = level1_slice_totals(&alg, &mu, depth).unwrap();
            for (n, total) in totals.iter().enumerate() {
                let slice: BigInt = ch
                    .iter()
                    .filter(|(w, _)| w.grade == -(n as i64))
                    .map(|(_, m)| m)
                    .sum();
                assert_eq!(&slice, total, "{name} {mu:?} grade -{n}");
            }
        }
    }
}

#[test]
fn non_simply_laced_modules_agree_with_the_recursion() {
    for alg in [b2(), g2()] {
        let fan = build_fan(&alg, 6).unwrap();
        assert!(verify_denominator(&fan).passed(), "{}", alg.label());
        for level in 1..=2 {
            for base in affstr::strings::enumerate_class_weights(&alg, level)
                .unwrap()
                .values()
            {
                for mu in &base.weights {
                    let run = ModuleComputation::with_fan(
                        &alg,
                        level,
                        &mu.classical,
                        6,
                        fan.clone(),
                        Strategy::Sequential,
                    )
                    .unwrap();
                    for check in check_module(&alg, &run, Strategy::Sequential) {
                        assert!(check.passed, "{}", check.line());
                    }
                }
            }
        }
    }
}

#[test]
fn a3_level_two_agrees_with_the_recursion() {
    let alg = AlgebraSpec::preset("A3").unwrap();
    let fan = build_fan(&alg, 5).unwrap();
    assert!(verify_denominator(&fan).passed());
    for mu in [[0, 0, 0], [1, 0, 1], [0, 1, 0], [1, 0, 0]] {
        let run =
            ModuleComputation::with_fan(&alg, 2, &mu, 5, fan.clone(), Strategy::Parallel).unwrap();
        for check in check_module(&alg, &run, Strategy::Parallel) {
            assert!(check.passed, "{}", check.line());
        }
    }
}
