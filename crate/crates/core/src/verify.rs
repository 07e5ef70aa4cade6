//! End-to-end checks of the library against tabulated values and identities.
//! Each check is self-contained so front ends can run any subset.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::catalog::{instantiate, parameter_grid, placements, Family, Fixtures, Params};
use crate::census::{
    artificial_census, binodal_contribution_sampled, floor_plan_product, germ_multiplicity,
    GermDescriptor, LowerBound, NodeFactor,
};
use crate::curvecount::{caporaso_harris, count_curves};
use crate::exactmath::Rational;
use crate::geometry::{iua_equivalent, normal_fan};
use crate::mikhalkin::{feasible_path_census, MikhalkinConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: u128,
}

type CheckResult = Result<(), String>;

struct Check {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn(&Fixtures) -> CheckResult,
}

const CHECKS: [Check; 12] = [
    Check {
        id: 1,
        title: "quartic binodal floor plans",
        budget: Duration::from_secs(1),
        run: curve_table,
    },
    Check {
        id: 2,
        title: "floor plans agree with Severi degrees",
        budget: Duration::from_secs(30),
        run: severi,
    },
    Check {
        id: 3,
        title: "Caporaso-Harris sanity",
        budget: Duration::from_secs(5),
        run: oracle_sanity,
    },
    Check {
        id: 4,
        title: "artificial census coefficients",
        budget: Duration::from_secs(5),
        run: census_terms,
    },
    Check {
        id: 5,
        title: "unseparated lower bounds",
        budget: Duration::from_secs(5),
        run: lower_bounds,
    },
    Check {
        id: 6,
        title: "path multiplicities sum to the degree",
        budget: Duration::from_secs(5),
        run: degree_identity,
    },
    Check {
        id: 7,
        title: "family-8 degree splits",
        budget: Duration::from_secs(1),
        run: family8,
    },
    Check {
        id: 8,
        title: "lattice path feasibility",
        budget: Duration::from_secs(60),
        run: feasibility,
    },
    Check {
        id: 9,
        title: "normal fan fixtures",
        budget: Duration::from_secs(5),
        run: fans,
    },
    Check {
        id: 10,
        title: "catalog geometry and placements",
        budget: Duration::from_secs(60),
        run: geometry,
    },
    Check {
        id: 11,
        title: "binodal contributions",
        budget: Duration::from_secs(5),
        run: contributions,
    },
    Check {
        id: 12,
        title: "floor plan multiplicities",
        budget: Duration::from_secs(1),
        run: multiplicities,
    },
];

pub fn check_ids() -> impl Iterator<Item = (u32, &'static str)> {
    CHECKS.iter().map(|c| (c.id, c.title))
}

pub fn run_check(id: u32, fixtures: &Fixtures) -> Option<CheckOutcome> {
    let c = CHECKS.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let result = (c.run)(fixtures);
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(()) if elapsed <= c.budget => (true, "ok".to_string()),
        Ok(()) => (
            false,
            format!("correct but took {elapsed:?}, budget {:?}", c.budget),
        ),
        Err(e) => (false, e),
    };
    Some(CheckOutcome {
        id,
        title: c.title,
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
        budget_ms: c.budget.as_millis(),
    })
}

pub fn run_all(fixtures: &Fixtures) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .filter_map(|c| run_check(c.id, fixtures))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> CheckResult {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn curve_table(_: &Fixtures) -> CheckResult {
    let c = count_curves(4, 2).map_err(err)?;
    let expect: [(&[[u32; 2]], u64); 9] = [
        (&[[4, 2]], 3),
        (&[[3, 2]], 48),
        (&[[2, 2]], 6),
        (&[[4, 1], [3, 1]], 20),
        (&[[4, 1], [2, 1]], 24),
        (&[[4, 1], [1, 1]], 6),
        (&[[3, 1], [2, 1]], 84),
        (&[[3, 1], [1, 1]], 28),
        (&[[2, 1], [1, 1]], 6),
    ];
    ensure(c.total == 225, || format!("total {} != 225", c.total))?;
    ensure(c.breakdown.len() == 9, || {
        format!("{} tuple entries", c.breakdown.len())
    })?;
    for (tuple, n) in expect {
        let got = c
            .breakdown
            .iter()
            .find(|t| t.tuple == tuple)
            .map_or(0, |t| t.count);
        ensure(got == n, || format!("{tuple:?}: {got} != {n}"))?;
    }
    Ok(())
}

fn severi(_: &Fixtures) -> CheckResult {
    for d in 3..=8u32 {
        let got = count_curves(d, 1).map_err(err)?.total;
        let want = 3 * u64::from(d - 1).pow(2);
        ensure(got == want, || format!("d={d}, one node: {got} != {want}"))?;
    }
    for d in 4..=7u32 {
        let got = count_curves(d, 2).map_err(err)?.total;
        let want = caporaso_harris(d, 2);
        ensure(want == got.into(), || {
            format!("d={d}, two nodes: {got} != {want}")
        })?;
    }
    Ok(())
}

fn oracle_sanity(_: &Fixtures) -> CheckResult {
    ensure(caporaso_harris(4, 2) == 225u32.into(), || {
        "N(4,2) != 225".into()
    })?;
    for d in 1..=8 {
        ensure(caporaso_harris(d, 0) == 1u32.into(), || {
            format!("N({d},0) != 1")
        })?;
    }
    Ok(())
}

fn census_terms(_: &Fixtures) -> CheckResult {
    let targets = [
        (1, (3, Rational::from(4)), (2, Rational::from(-12))),
        (2, (6, Rational::from(8)), (5, Rational::frac(-168, 5))),
        (
            3,
            (9, Rational::frac(32, 3)),
            (8, Rational::frac(-1341, 35)),
        ),
        (4, (12, Rational::frac(32, 3)), (11, Rational::frac(-64, 5))),
    ];
    let mut bad = Vec::new();
    for (delta, lead, second) in targets {
        let got = artificial_census(delta).map_err(err)?.top_terms;
        let want = vec![lead, second];
        if got != want {
            bad.push(format!(
                "delta={delta}: got {} expected {}",
                fmt_terms(&got),
                fmt_terms(&want)
            ));
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))
}

fn fmt_terms(t: &[(usize, Rational)]) -> String {
    t.iter()
        .map(|(e, c)| format!("{c} d^{e}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn lower_bounds(_: &Fixtures) -> CheckResult {
    use crate::census::unseparated_lower_bound;
    let mut bad = Vec::new();
    for (delta, exponent, coefficient) in [
        (2, 5, Rational::frac(48, 5)),
        (3, 8, Rational::frac(221, 35)),
    ] {
        let got = unseparated_lower_bound(delta).map_err(err)?;
        let want = LowerBound::Bound {
            exponent,
            coefficient,
        };
        if got != want {
            bad.push(format!("delta={delta}: got {got:?} expected {want:?}"));
        }
    }
    match unseparated_lower_bound(4).map_err(err)? {
        LowerBound::Inconclusive { .. } => {}
        other => bad.push(format!("delta=4: expected inconclusive, got {other:?}")),
    }
    ensure(bad.is_empty(), || bad.join("; "))
}

fn degree_identity(_: &Fixtures) -> CheckResult {
    let grids = [
        (Family::F10, 12),
        (Family::F13, 12),
        (Family::F14, 12),
        (Family::F20, 12),
        (Family::F21, 8),
    ];
    let mut checked = 0;
    for (family, max) in grids {
        for params in parameter_grid(family, max) {
            let inst = instantiate(family, params.clone()).map_err(err)?;
            if !inst.is_binodal() {
                continue;
            }
            let sum: i64 = inst.path_multiplicities().map_err(err)?.iter().sum();
            let deg = inst.binodal_degree().map_err(err)?;
            ensure(sum == deg, || {
                format!("family {family} {params}: paths sum to {sum}, degree {deg}")
            })?;
            checked += 1;
        }
    }
    ensure(checked > 100, || {
        format!("only {checked} instances checked")
    })
}

fn family8(fx: &Fixtures) -> CheckResult {
    let cells = &fx.family8.cells;
    ensure(cells.len() == 16, || format!("{} cells", cells.len()))?;
    for c in cells {
        let s: i64 = c.split.iter().sum();
        ensure(s == c.degree, || {
            format!(
                "a={}, b={}: split sums to {s}, degree {}",
                c.a, c.b, c.degree
            )
        })?;
    }
    Ok(())
}

/// Letter labels of the feasible paths, with the number of gaps of each.
fn feasible(
    family: Family,
    params: &str,
    cfg: &MikhalkinConfig,
) -> Result<Vec<(String, usize)>, String> {
    let inst = instantiate(family, params.parse().map_err(err)?).map_err(err)?;
    let order = inst.polytope.lattice_points().map_err(err)?;
    let mut v: Vec<(String, usize)> = feasible_path_census(&inst.polytope, 2, cfg)
        .map_err(err)?
        .iter()
        .map(|(p, _)| (p.label(&order), p.gaps().len()))
        .collect();
    v.sort();
    Ok(v)
}

fn feasibility(_: &Fixtures) -> CheckResult {
    let base = MikhalkinConfig::default();
    let escalated = MikhalkinConfig {
        escalation_rounds: base.escalation_rounds + 3,
        ..base.clone()
    };
    let mut runs = Vec::new();
    for a in 4..=7 {
        runs.push((Family::F20, format!("a={a}")));
    }
    for q in ["a=1,b=1,c=2,d=3", "a=2,b=1,c=3,d=2"] {
        runs.push((Family::F21, q.to_string()));
    }
    for (f, q) in [
        (Family::F10, "a=4,b=1"),
        (Family::F13, "a=5,b=1"),
        (Family::F14, "a=5,b=2"),
    ] {
        runs.push((f, q.to_string()));
    }
    for (family, params) in &runs {
        let got = feasible(*family, params, &base)?;
        let again = feasible(*family, params, &escalated)?;
        ensure(got == again, || {
            format!("family {family} {params}: verdicts change under escalation")
        })?;
        let labels: Vec<&str> = got.iter().map(|(l, _)| l.as_str()).collect();
        let has = |l: &str| labels.contains(&l);
        ensure(got.iter().all(|(_, g)| *g <= 1), || {
            format!("family {family} {params}: feasible path with two gaps")
        })?;
        match family {
            Family::F20 => {
                ensure(labels.len() == 5, || {
                    format!("family 20 {params}: {labels:?}")
                })?;
                ensure(has("A|B-C-D-F"), || {
                    format!("family 20 {params}: A|B-C-D-F missing")
                })?;
                for l in ["A-C-D-F", "A-B|C-D-F", "A-B-C|D-F", "A-B-C-D|F"] {
                    ensure(!has(l), || {
                        format!("family 20 {params}: {l} should be infeasible")
                    })?;
                }
            }
            Family::F21 => {
                ensure(labels.len() == 5, || {
                    format!("family 21 {params}: {labels:?}")
                })?;
                for l in ["A-C-E-F", "A-D-E-F", "A-C|D-E-F", "A-C-D-F"] {
                    ensure(!has(l), || {
                        format!("family 21 {params}: {l} should be infeasible")
                    })?;
                }
            }
            _ => {
                let want = match family {
                    Family::F10 => 4,
                    Family::F13 => 3,
                    _ => 2,
                };
                ensure(labels.len() == want, || {
                    format!("family {family} {params}: {labels:?}, expected {want}")
                })?;
                ensure(got.iter().all(|(_, g)| *g == 0), || {
                    format!("family {family} {params}: disconnected feasible path")
                })?;
            }
        }
    }
    Ok(())
}

fn fans(fx: &Fixtures) -> CheckResult {
    for family in [Family::F20, Family::F21] {
        let fixture = fx
            .fan(family)
            .ok_or_else(|| format!("no fan fixture for family {family}"))?;
        let inst = instantiate(family, fixture.params.clone()).map_err(err)?;
        let fan = normal_fan(&inst.polytope).map_err(err)?;
        let corrected = fixture.corrected().map_err(err)?;
        let printed = fixture.printed().map_err(err)?;
        for (letter, point) in inst.labelled_points().map_err(err)? {
            let key = letter.to_string();
            let cone = fan
                .vertex_cone(&point)
                .ok_or_else(|| format!("{letter} is not a vertex"))?;
            let rays = corrected
                .get(&key)
                .ok_or_else(|| format!("fixture lacks cone {letter}"))?;
            ensure(cone.same_rays(rays), || {
                format!(
                    "family {family} cone {letter}: computed {:?}, listed {rays:?}",
                    cone.generators
                )
            })?;
            // Printed lists may differ only by the recorded errata.
            if printed[&key] != *rays {
                ensure(!fixture.errata.is_empty(), || {
                    format!("family {family} cone {letter} differs without erratum")
                })?;
            }
        }
    }
    Ok(())
}

fn geometry(fx: &Fixtures) -> CheckResult {
    for family in Family::ALL {
        for params in parameter_grid(family, 8) {
            let inst = instantiate(family, params.clone()).map_err(err)?;
            ensure(inst.lattice_point_count == 6 && inst.width == 1, || {
                format!(
                    "family {family} {params}: {} points, width {}",
                    inst.lattice_point_count, inst.width
                )
            })?;
        }
    }
    let mut compared = 0;
    for family in [Family::F10, Family::F13, Family::F20] {
        for d in 5..=9 {
            for p in placements(&fx.placement_rules, family, d).map_err(err)? {
                let poly = p.polytope().map_err(err)?;
                let canon = instantiate(family, p.canonical_params.clone()).map_err(err)?;
                // Equivalence to a catalog instance carries its six points and width 1.
                let map = iua_equivalent(&poly, &canon.polytope).map_err(err)?;
                ensure(map.is_some(), || {
                    format!(
                        "family {family} v{} d={d} f={} y={} a={}: not equivalent to {}",
                        p.variant, p.f, p.y, p.a, p.canonical_params
                    )
                })?;
                compared += 1;
            }
        }
    }
    ensure(compared > 0, || "no placements compared".into())
}

fn contributions(fx: &Fixtures) -> CheckResult {
    let report = binodal_contribution_sampled(&fx.placement_rules, 8, 40).map_err(err)?;
    for f in &report.per_family {
        if f.family != Family::F13 {
            ensure(f.matches, || {
                format!("family {}: brute force differs from closed form", f.family)
            })?;
        }
    }
    let (published_even, _) = crate::census::reference_totals();
    ensure(report.total_even == published_even, || {
        "even total differs from component sum".into()
    })?;
    ensure(report.consistency_flags.len() == 1, || {
        format!("flags: {:?}", report.consistency_flags)
    })?;
    let flag = &report.consistency_flags[0];
    ensure(
        flag.paper_value == "-31/4" && flag.computed_value == "31/4",
        || format!("flag {flag:?}"),
    )?;
    ensure(report.total == Rational::from(124), || {
        format!("total at d=8 is {}", report.total)
    })
}

/// The two worked examples of binodal counts, factor by factor.
pub fn worked_examples() -> [(&'static str, Vec<Vec<NodeFactor>>); 2] {
    let cell = |name: &str, m| NodeFactor::Measured {
        cell: name.to_string(),
        multiplicity: m,
        nodes: 1,
    };
    let path = |a, i| NodeFactor::BinodalPath {
        family: Family::F10,
        params: Params::new([("a", a), ("b", 1)]),
        path: i,
    };
    [
        (
            "eight-point polytope",
            vec![
                vec![cell("pentatope", 2), cell("pentatope", 1)],
                vec![cell("pentatope", 2), cell("pentatope", 1)],
                vec![cell("bipyramid", 2), cell("bipyramid", 2)],
                vec![cell("bipyramid", 2), cell("bipyramid", 2)],
                vec![cell("weight-2 edge", 2), cell("weight-2 edge", 2)],
            ],
        ),
        (
            "polytope with a family-10 cell",
            vec![
                vec![path(3, 0)],
                vec![path(3, 2)],
                vec![path(3, 3)],
                vec![path(4, 0)],
                vec![path(4, 1)],
                vec![cell("pentatope", 3), cell("weight-2 vertical end", 2)],
            ],
        ),
    ]
}

fn multiplicities(fx: &Fixtures) -> CheckResult {
    let [(_, first), (_, second)] = worked_examples();
    let plan_mults = |plans: &[Vec<NodeFactor>]| -> Result<Vec<i64>, String> {
        plans
            .iter()
            .map(|p| floor_plan_product(p, 2).map_err(err))
            .collect()
    };
    let m1 = plan_mults(&first)?;
    ensure(
        m1 == [2, 2, 4, 4, 4] && m1.iter().sum::<i64>() == 16,
        || format!("first example {m1:?}"),
    )?;
    let m2 = plan_mults(&second)?;
    ensure(
        m2 == [1, 1, 1, 2, 8, 6] && m2.iter().sum::<i64>() == 19,
        || format!("second example {m2:?}"),
    )?;
    for family in [Family::F10, Family::F20] {
        let ps = placements(&fx.placement_rules, family, 5).map_err(err)?;
        ensure(!ps.is_empty(), || {
            format!("family {family} has no placement at d=5")
        })?;
        for p in ps {
            let rule = fx
                .placement_rules
                .iter()
                .find(|r| r.family == family && r.variant == p.variant)
                .ok_or("placement without rule")?;
            let germ = GermDescriptor {
                kind: rule.germ.parse().map_err(err)?,
                floor: (p.f) as u32,
                slope: Some(p.a),
                vertical_edge_left: rule.vertical_edge_left,
            };
            let by_germ = germ_multiplicity(&germ).map_err(err)?;
            ensure(p.multiplicity == 1 && by_germ == 1, || {
                format!(
                    "family {family} at d=5: placement {} germ rule {by_germ}",
                    p.multiplicity
                )
            })?;
        }
    }
    Ok(())
}
