//! One PASS/FAIL line per acceptance criterion, plus independent oracles for
//! the values the criteria are built on.
//!
//! Every comparison is exact (tolerance zero). Runtime budgets live with each
//! check in `verify` and count as part of the criterion. The target runs
//! without the libtest harness so the lines are always printed, and runs its
//! cases one at a time so the budgets are not measured under contention.

use std::panic;
use std::process::ExitCode;

use tropenum_core::catalog::{instantiate, Family, Fixtures, Params};
use tropenum_core::census::{artificial_census, binodal_contribution, reference_closed_form};
use tropenum_core::curvecount::{caporaso_harris, count_curves};
use tropenum_core::exactmath::Rational;
use tropenum_core::verify::{check_ids, run_check};

/// Criteria that stay red, with the reason. Each must still fail; if one
/// starts passing, the entry has to be removed deliberately.
const KNOWN_RED: [(u32, &str); 2] = [
    (
        4,
        "delta=3 second coefficient: the census sums to -192/5, the published value is -1341/35; \
         the published intermediate -1344/35 does not follow from the stated floor contributions",
    ),
    (
        5,
        "delta=3 bound inherits the census discrepancy: 32/5 computed, 221/35 published",
    ),
];

/// Absolute tolerance on every compared value.
const TOLERANCE: i64 = 0;

fn acceptance() {
    let fixtures = Fixtures::builtin();
    let mut unexpected = Vec::new();
    for (id, title) in check_ids() {
        let o = run_check(id, fixtures).expect("listed id");
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:>2} {status} {title} [{} ms of {} ms] {}",
            o.elapsed_ms, o.budget_ms, o.detail
        );
        let red = KNOWN_RED.iter().find(|(k, _)| *k == id);
        match (o.passed, red) {
            (true, None) => {}
            (false, Some((_, why))) => println!("            known red: {why}"),
            (true, Some(_)) => {
                unexpected.push(format!("criterion {id} is listed as known red but passes"))
            }
            (false, None) => unexpected.push(format!("criterion {id} fails: {}", o.detail)),
        }
    }
    assert!(unexpected.is_empty(), "{unexpected:#?}");
    println!("tolerance: {TOLERANCE} (exact)");
}

fn rat(n: i128, q: i128) -> Rational {
    Rational::frac(n as i64, q as i64)
}

fn one_nodal_curves_match_the_discriminant_degree() {
    for d in 3..=8u32 {
        let expected = 3 * u64::from(d - 1).pow(2);
        assert_eq!(count_curves(d, 1).unwrap().total, expected, "d={d}");
    }
}

fn two_nodal_curves_match_the_node_polynomial() {
    for d in 4..=7u64 {
        // (3/2)(d-1)(d-2)(3d²-3d-11)
        let expected = 3 * (d - 1) * (d - 2) * (3 * d * d - 3 * d - 11) / 2;
        assert_eq!(count_curves(d as u32, 2).unwrap().total, expected, "d={d}");
    }
    assert_eq!(count_curves(5, 2).unwrap().total, 882);
}

fn three_nodal_curves_informational() {
    // Not a criterion: floor plans and the recursion differ at three nodes.
    for d in [5u32, 6] {
        let plans = count_curves(d, 3).unwrap().total;
        let recursion = caporaso_harris(d, 3);
        println!("info: d={d} three nodes: floor plans {plans}, recursion {recursion}");
        assert!(
            plans.to_string() != recursion.to_string(),
            "the three-node mismatch has disappeared; revisit the notes"
        );
    }
}

/// Nested sum over floors `d ≥ i_1 ≥ … ≥ i_δ ≥ 2`, only `i_1` allowed on top.
fn census_by_nested_sum(delta: u32, d: i128) -> i128 {
    fn interior(i: i128) -> i128 {
        12 * i * i - 18 * i + 8
    }
    fn rec(left: u32, max: i128) -> i128 {
        if left == 0 {
            return 1;
        }
        (2..=max).map(|i| interior(i) * rec(left - 1, i)).sum()
    }
    let top = 3 * d * d - 7 * d + 4;
    rec(delta, d - 1) + top * rec(delta - 1, d - 1)
}

fn census_polynomials_match_nested_sums() {
    for delta in 1..=4 {
        let p = artificial_census(delta).unwrap().polynomial;
        for d in 2..=16 {
            assert_eq!(
                p.eval_int(d as i64),
                rat(census_by_nested_sum(delta, d), 1),
                "delta={delta} d={d}"
            );
        }
    }
}

fn census_second_coefficients_by_interpolation() {
    // A degree-n polynomial is fixed by n+1 values; recover its top two
    // coefficients by Lagrange interpolation on nested sums alone.
    for (delta, lead, second) in [
        (1, rat(4, 1), rat(-12, 1)),
        (2, rat(8, 1), rat(-168, 5)),
        (3, rat(32, 3), rat(-192, 5)),
    ] {
        let n = 3 * delta as usize;
        let xs: Vec<i128> = (2..=(n as i128 + 2)).collect();
        let ys: Vec<i128> = xs.iter().map(|&x| census_by_nested_sum(delta, x)).collect();
        // Top coefficient: Σ y_j / Π_{k≠j}(x_j - x_k); next: Σ y_j · (-Σ_{k≠j} x_k) / Π.
        let mut c_n = Rational::zero();
        let mut c_n1 = Rational::zero();
        for j in 0..xs.len() {
            let denom: i128 = (0..xs.len())
                .filter(|&k| k != j)
                .map(|k| xs[j] - xs[k])
                .product();
            let others: i128 = (0..xs.len()).filter(|&k| k != j).map(|k| xs[k]).sum();
            let denom = Rational::from(denom as i64);
            c_n += &(Rational::from(ys[j] as i64) / &denom);
            c_n1 -= &(Rational::from((ys[j] * others) as i64) / &denom);
        }
        assert_eq!((c_n, c_n1), (lead, second), "delta={delta}");
    }
}

fn contribution_closed_forms_match_triple_sums() {
    let s1 = |d: i64| -> i64 {
        (4..d)
            .flat_map(|f| (0..=f - 4).flat_map(move |y| (3..f - y).map(|a| a - 2)))
            .sum()
    };
    let s2 = |d: i64| -> i64 {
        (5..d)
            .flat_map(|f| (1..=f - 4).flat_map(move |y| (3..f - y).map(|a| a - 2)))
            .sum()
    };
    let s20 = |d: i64| -> i64 {
        (4..d)
            .flat_map(|f| {
                (0..=f - 4).flat_map(move |y| (0..=f - y - 4).map(move |z| f - y - z - 3))
            })
            .sum()
    };
    let f10 = reference_closed_form(Family::F10).unwrap();
    let f20 = reference_closed_form(Family::F20).unwrap();
    for d in 5..=40 {
        assert_eq!(
            f10.eval(d),
            Rational::from(s1(d) + 2 * s2(d)),
            "family 10, d={d}"
        );
        assert_eq!(f20.eval(d), Rational::from(s20(d)), "family 20, d={d}");
    }
    let r = binodal_contribution(&Fixtures::builtin().placement_rules, 8).unwrap();
    assert_eq!(r.total, Rational::from(65 + 24 + 35));
}

fn degree_formulas_at_sample_points() {
    let p = |s: &str| s.parse::<Params>().unwrap();
    for (family, params, degree, paths) in [
        (Family::F10, "a=3,b=1", 6, vec![1, 3, 1, 1]),
        (Family::F10, "a=4,b=1", 14, vec![2, 8, 2, 2]),
        (Family::F20, "a=4", 6, vec![1, 1, 1, 1, 2]),
    ] {
        let inst = instantiate(family, p(params)).unwrap();
        assert_eq!(inst.binodal_degree().unwrap(), degree);
        assert_eq!(inst.path_multiplicities().unwrap(), paths);
        assert_eq!(paths.iter().sum::<i64>(), degree);
    }
}

fn main() -> ExitCode {
    let cases: [(&str, fn()); 8] = [
        ("acceptance", acceptance),
        (
            "one_nodal_curves_match_the_discriminant_degree",
            one_nodal_curves_match_the_discriminant_degree,
        ),
        (
            "two_nodal_curves_match_the_node_polynomial",
            two_nodal_curves_match_the_node_polynomial,
        ),
        (
            "three_nodal_curves_informational",
            three_nodal_curves_informational,
        ),
        (
            "census_polynomials_match_nested_sums",
            census_polynomials_match_nested_sums,
        ),
        (
            "census_second_coefficients_by_interpolation",
            census_second_coefficients_by_interpolation,
        ),
        (
            "contribution_closed_forms_match_triple_sums",
            contribution_closed_forms_match_triple_sums,
        ),
        (
            "degree_formulas_at_sample_points",
            degree_formulas_at_sample_points,
        ),
    ];
    let mut failed = 0;
    for (name, case) in cases {
        let ok = panic::catch_unwind(case).is_ok();
        println!("test {name} ... {}", if ok { "ok" } else { "FAILED" });
        failed += usize::from(!ok);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        cases.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
