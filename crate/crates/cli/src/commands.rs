use serde_json::json;
use tropenum_core::catalog::{instantiate, parameter_grid, Family, FamilyInstance, Fixtures};
use tropenum_core::census::{
    artificial_census, binodal_contribution_sampled, reference_lower_bound, reference_top_terms,
    unseparated_lower_bound, ConsistencyFlag, LowerBound, MAX_CENSUS_DELTA,
};
use tropenum_core::curvecount::{caporaso_harris, count_curves};
use tropenum_core::exactmath::Rational;
use tropenum_core::geometry::{iua_equivalent, normal_fan, LatticePoint3, LatticePolytope};
use tropenum_core::mikhalkin::{enumerate_paths, path_feasible, MikhalkinConfig};
use tropenum_core::verify;

use crate::report::{Outcome, Table};
use crate::{
    CatalogCommand, CensusArgs, CliError, Command, ContributionArgs, ContributionTarget,
    CountCurvesArgs, InstanceArgs, IuaArgs, PathsArgs, VerifyArgs,
};

pub fn dispatch(cmd: &Command, fx: &Fixtures) -> Result<Outcome, CliError> {
    match cmd {
        Command::CountCurves(a) => count(a),
        Command::Census(a) => census(a),
        Command::Contribution(a) => contribution(a, fx),
        Command::Catalog(CatalogCommand::List) => catalog_list(),
        Command::Catalog(CatalogCommand::Instantiate(a)) => catalog_instantiate(a),
        Command::Paths(a) => paths(a),
        Command::Fan(a) => fan(a, fx),
        Command::IuaCheck(a) => iua_check(a),
        Command::VerifyAll(a) => verify_all(a, fx),
    }
}

fn flag(location: String, published: impl ToString, computed: impl ToString) -> ConsistencyFlag {
    ConsistencyFlag {
        location,
        paper_value: published.to_string(),
        computed_value: computed.to_string(),
    }
}

fn count(a: &CountCurvesArgs) -> Result<Outcome, CliError> {
    if a.nodes > a.max_nodes {
        return Err(CliError::Usage(format!(
            "--nodes {} exceeds --max-nodes {}",
            a.nodes, a.max_nodes
        )));
    }
    let c = count_curves(a.degree, a.nodes)?;
    let oracle = a.oracle.then(|| caporaso_harris(a.degree, a.nodes));
    let mut text = vec![format!("{}", c.total)];
    let mut table;
    if a.breakdown {
        table = Table::new(&["tuple", "count"]);
        for t in &c.breakdown {
            let tuple: Vec<String> = t.tuple.iter().map(|[i, k]| format!("({i},{k})")).collect();
            text.push(format!("{} {}", tuple.join(" "), t.count));
            table.push(vec![tuple.join(" "), t.count.to_string()]);
        }
    } else {
        table = Table::new(&["degree", "nodes", "total"]);
        table.push(vec![
            a.degree.to_string(),
            a.nodes.to_string(),
            c.total.to_string(),
        ]);
    }
    let mut ok = true;
    if let Some(o) = &oracle {
        text.push(format!("caporaso-harris {o}"));
        // Both routes count irreducible and reducible curves alike; they must agree.
        ok = o.to_string() == c.total.to_string();
        if !ok {
            text.push("floor plans and recursion disagree".into());
        }
    }
    let mut results = json!({ "degree": c.degree, "nodes": c.delta, "total": c.total });
    if a.breakdown {
        results["breakdown"] = serde_json::to_value(&c.breakdown)?;
    }
    if let Some(o) = oracle {
        results["caporaso_harris"] = json!(o.to_string());
    }
    let mut out = Outcome::new(results, table, text)?;
    out.ok = ok;
    Ok(out)
}

fn terms_json(terms: &[(usize, Rational)]) -> serde_json::Value {
    terms
        .iter()
        .map(|(e, c)| json!({ "exponent": e, "coefficient": c }))
        .collect()
}

fn census(a: &CensusArgs) -> Result<Outcome, CliError> {
    if a.delta == 0 || a.delta > MAX_CENSUS_DELTA {
        return Err(CliError::Usage(format!(
            "--delta must be in 1..={MAX_CENSUS_DELTA}"
        )));
    }
    let c = artificial_census(a.delta)?;
    let bound = unseparated_lower_bound(a.delta)?;
    let mut flags = Vec::new();
    if let Some(published) = reference_top_terms(a.delta) {
        for ((e, got), (_, want)) in c.top_terms.iter().zip(&published) {
            if got != want {
                flags.push(flag(
                    format!("census delta={}, coefficient of d^{e}", a.delta),
                    want,
                    got,
                ));
            }
        }
    }
    if let (Some((e, want)), LowerBound::Bound { coefficient, .. }) =
        (reference_lower_bound(a.delta), &bound)
    {
        if coefficient != &want {
            flags.push(flag(
                format!("lower bound delta={}, coefficient of d^{e}", a.delta),
                want,
                coefficient,
            ));
        }
    }
    let mut table = Table::new(&["exponent", "coefficient"]);
    let (text, results) = if a.exact {
        for (e, coef) in c.polynomial.coeffs().iter().enumerate().rev() {
            table.push(vec![e.to_string(), coef.to_string()]);
        }
        let results = json!({
            "delta": a.delta,
            "polynomial": c.polynomial,
            "top_terms": terms_json(&c.top_terms),
            "lower_bound": bound,
            "validity_note": c.validity_note,
        });
        (vec![c.polynomial.display_in("d")], results)
    } else {
        let terms = c.polynomial.top_coefficients(a.top_terms)?;
        for (e, coef) in &terms {
            table.push(vec![e.to_string(), coef.to_string()]);
        }
        let line = terms
            .iter()
            .map(|(_, coef)| coef.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let results = json!({
            "delta": a.delta,
            "top_terms": terms_json(&terms),
            "lower_bound": bound,
            "validity_note": c.validity_note,
        });
        (vec![line], results)
    };
    let mut out = Outcome::new(results, table, text)?;
    out.flags = flags;
    Ok(out)
}

fn contribution(a: &ContributionArgs, fx: &Fixtures) -> Result<Outcome, CliError> {
    let report = binodal_contribution_sampled(
        &fx.placement_rules,
        a.degree,
        a.sample_max.unwrap_or(a.degree),
    )?;
    let wanted = match a.family {
        ContributionTarget::F10 => Some(Family::F10),
        ContributionTarget::F13 => Some(Family::F13),
        ContributionTarget::F20 => Some(Family::F20),
        ContributionTarget::Total => None,
    };
    let families: Vec<_> = report
        .per_family
        .iter()
        .filter(|f| wanted.is_none_or(|w| f.family == w))
        .collect();
    let value = match wanted {
        Some(_) => families[0].value.clone(),
        None => report.total.clone(),
    };
    let mut table = Table::new(&["family", "degree", "closed_form", "brute_force", "match"]);
    let mut text = vec![value.to_string()];
    for f in &families {
        let brute = f
            .brute_force
            .iter()
            .find(|(k, _)| *k == a.degree)
            .map(|(_, v)| v.to_string())
            .unwrap_or_default();
        table.push(vec![
            f.family.to_string(),
            a.degree.to_string(),
            f.value.to_string(),
            brute,
            f.matches.to_string(),
        ]);
        if a.report {
            text.push(format!(
                "family {}: {} (brute force {})",
                f.family,
                f.value,
                if f.matches { "agrees" } else { "differs" }
            ));
            if let Some(note) = &f.note {
                text.push(format!("  note: {note}"));
            }
        }
    }
    if wanted.is_none() {
        table.push(vec![
            "total".into(),
            a.degree.to_string(),
            report.total.to_string(),
            String::new(),
            String::new(),
        ]);
    }
    let results = if a.report {
        json!({
            "degree": a.degree,
            "family": wanted.map(|f| f.number()),
            "value": value,
            "report": report,
        })
    } else {
        json!({ "degree": a.degree, "family": wanted.map(|f| f.number()), "value": value })
    };
    let mut out = Outcome::new(results, table, text)?;
    out.flags = report.consistency_flags;
    Ok(out)
}

fn catalog_list() -> Result<Outcome, CliError> {
    let mut table = Table::new(&["family", "parameters", "example", "binodal_degree"]);
    let mut text = Vec::new();
    let mut items = Vec::new();
    for family in Family::ALL {
        let params = family.param_names().join(",");
        // Smallest binodal instance, so that its degree formula applies.
        let first = parameter_grid(family, 6)
            .into_iter()
            .filter_map(|p| instantiate(family, p).ok())
            .find(FamilyInstance::is_binodal);
        let example = first.as_ref().map(|i| i.params.clone());
        let degree = first.as_ref().and_then(|i| i.binodal_degree().ok());
        let example_s = example
            .as_ref()
            .map(ToString::to_string)
            .unwrap_or_else(|| "-".into());
        let degree_s = degree.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
        text.push(format!(
            "{family:>2}  params [{params}]  e.g. {example_s} degree {degree_s}"
        ));
        table.push(vec![family.to_string(), params, example_s, degree_s]);
        items.push(json!({
            "family": family.number(),
            "parameters": family.param_names(),
            "example": example,
            "binodal_degree": degree,
        }));
    }
    Outcome::new(items, table, text)
}

fn instance_json(inst: &FamilyInstance) -> Result<serde_json::Value, CliError> {
    let degree = inst.binodal_degree().ok();
    let mults = inst.path_multiplicities().ok();
    let mut v = serde_json::to_value(inst)?;
    v["verified"] = json!(inst.verified());
    v["binodal_degree"] = json!(degree);
    v["path_multiplicities"] = json!(mults);
    v["labelled_points"] = inst
        .labelled_points()?
        .into_iter()
        .map(|(c, p)| json!({ "label": c.to_string(), "point": p }))
        .collect();
    Ok(v)
}

fn catalog_instantiate(a: &InstanceArgs) -> Result<Outcome, CliError> {
    let inst = instantiate(a.family, a.params.clone())?;
    let mut text = vec![format!("family {} {}", inst.family, inst.params)];
    for (c, p) in inst.labelled_points()? {
        text.push(format!("  {c} {p}"));
    }
    text.push(format!(
        "lattice points {}, width {}",
        inst.lattice_point_count, inst.width
    ));
    let mut table = Table::new(&[
        "family",
        "params",
        "binodal",
        "binodal_degree",
        "path_multiplicities",
        "verified",
    ]);
    let degree = inst
        .binodal_degree()
        .map(|d| d.to_string())
        .unwrap_or_default();
    let mults = inst
        .path_multiplicities()
        .map(|m| {
            m.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default();
    if inst.is_binodal() {
        text.push(format!(
            "binodal degree {degree}, path multiplicities [{mults}]"
        ));
        if !inst.verified() {
            text.push("outside the directly checked parameter range".into());
        }
    } else {
        text.push("not binodal".into());
    }
    table.push(vec![
        inst.family.to_string(),
        inst.params.to_string(),
        inst.is_binodal().to_string(),
        degree,
        mults,
        inst.verified().to_string(),
    ]);
    Outcome::new(instance_json(&inst)?, table, text)
}

fn paths(a: &PathsArgs) -> Result<Outcome, CliError> {
    let inst = instantiate(a.instance.family, a.instance.params.clone())?;
    let mut cfg = MikhalkinConfig::default();
    if let Some(eta) = &a.eta {
        cfg.eta = eta.clone();
    }
    if let Some(l) = &a.lambdas {
        cfg.lambda_schedule = l.clone();
    }
    if let Some(r) = a.escalation_rounds {
        cfg.escalation_rounds = r;
    }
    let p = &inst.polytope;
    let order = p.lattice_points()?;
    let candidates = enumerate_paths(p, a.skip)?;
    let mut items = Vec::new();
    let mut table = Table::new(&["path", "verdict", "gaps", "obstruction"]);
    let (mut feasible, mut infeasible) = (Vec::new(), Vec::new());
    for q in &candidates {
        let r = path_feasible(p, q, &cfg)?;
        let label = q.label(&order);
        if r.is_feasible() {
            feasible.push(label.clone());
        } else {
            infeasible.push(format!(
                "{label}: {}",
                r.obstruction.clone().unwrap_or_default()
            ));
        }
        if r.is_feasible() || a.all {
            table.push(vec![
                label.clone(),
                if r.is_feasible() {
                    "feasible"
                } else {
                    "infeasible"
                }
                .into(),
                q.gaps().len().to_string(),
                r.obstruction.clone().unwrap_or_default(),
            ]);
            items.push(json!({ "label": label, "path": q, "report": r }));
        }
    }
    let mut text = vec![format!(
        "{} feasible, {} infeasible",
        feasible.len(),
        infeasible.len()
    )];
    text.extend(feasible.iter().map(|l| format!("  feasible   {l}")));
    if a.all {
        text.extend(infeasible.iter().map(|l| format!("  infeasible {l}")));
    }
    let results = json!({
        "family": inst.family.number(),
        "params": inst.params,
        "config": cfg,
        "feasible_count": feasible.len(),
        "infeasible_count": infeasible.len(),
        "paths": items,
    });
    Outcome::new(results, table, text)
}

fn fan(a: &InstanceArgs, fx: &Fixtures) -> Result<Outcome, CliError> {
    let inst = instantiate(a.family, a.params.clone())?;
    let fan = normal_fan(&inst.polytope)?;
    // Listed rays are affine in the parameters, so they can be evaluated at any instance.
    let listed = match fx.fan(a.family) {
        Some(f) => {
            let mut f = f.clone();
            f.params = a.params.clone();
            Some((f.printed()?, f.corrected()?))
        }
        None => None,
    };
    let mut flags = Vec::new();
    let mut items = Vec::new();
    let mut text = vec![format!(
        "normal fan of family {} {}",
        inst.family, inst.params
    )];
    let mut table = Table::new(&["label", "point", "rays", "listed_match"]);
    for (c, point) in inst.labelled_points()? {
        let key = c.to_string();
        let Some(cone) = fan.vertex_cone(&point) else {
            text.push(format!("  {c} {point} not a vertex"));
            continue;
        };
        let rays: Vec<String> = cone.generators.iter().map(ToString::to_string).collect();
        let matches = listed.as_ref().and_then(|(printed, corrected)| {
            let fixed = corrected.get(&key)?;
            if printed[&key] != *fixed {
                for (p, q) in printed[&key].iter().zip(fixed) {
                    if p != q {
                        flags.push(flag(format!("family {} cone {c}", inst.family), p, q));
                    }
                }
            }
            Some(cone.same_rays(fixed))
        });
        let m = matches.map(|m| m.to_string()).unwrap_or_else(|| "-".into());
        text.push(format!("  {c} {point}: {} (listed: {m})", rays.join(" ")));
        table.push(vec![key.clone(), point.to_string(), rays.join(" "), m]);
        items.push(json!({ "label": key, "point": point, "rays": cone.generators, "listed_match": matches }));
    }
    let edges: Vec<_> = fan
        .edge_cones
        .iter()
        .map(|((p, q), cone)| json!({ "edge": [p, q], "rays": cone.generators }))
        .collect();
    let all_match = items.iter().all(|i| i["listed_match"] != json!(false));
    let results = json!({
        "family": inst.family.number(),
        "params": inst.params,
        "vertex_cones": items,
        "edge_cones": edges,
    });
    let mut out = Outcome::new(results, table, text)?;
    out.flags = flags;
    out.ok = all_match;
    Ok(out)
}

fn parse_points(s: &str) -> Result<LatticePolytope, CliError> {
    let bad = || CliError::Usage(format!("cannot read points {s:?}; expected x,y,z;x,y,z;…"));
    let pts = s
        .split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let c: Vec<i64> = t
                .split(',')
                .map(|x| x.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| bad())?;
            match c[..] {
                [x, y, z] => Ok(LatticePoint3::new(x, y, z)),
                _ => Err(bad()),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LatticePolytope::new(pts)?)
}

fn iua_check(a: &IuaArgs) -> Result<Outcome, CliError> {
    let left = instantiate(a.family, a.params.clone())?;
    let right = match (&a.points, a.other_family) {
        (Some(s), _) => parse_points(s)?,
        (None, Some(f)) => instantiate(f, a.other_params.clone().unwrap_or_default())?.polytope,
        (None, None) => return Err(CliError::Usage("give --points or --other-family".into())),
    };
    let map = iua_equivalent(&left.polytope, &right)?;
    let verdict = if map.is_some() {
        "equivalent"
    } else {
        "not equivalent"
    };
    let mut text = vec![verdict.to_string()];
    if let Some(m) = &map {
        text.push(format!(
            "matrix {:?}, translation {}",
            m.matrix(),
            m.translation()
        ));
    }
    let mut table = Table::new(&["equivalent", "matrix", "translation"]);
    table.push(vec![
        map.is_some().to_string(),
        map.as_ref()
            .map(|m| format!("{:?}", m.matrix()))
            .unwrap_or_default(),
        map.as_ref()
            .map(|m| m.translation().to_string())
            .unwrap_or_default(),
    ]);
    let results =
        json!({ "left": left.polytope, "right": right, "equivalent": map.is_some(), "map": map });
    Outcome::new(results, table, text)
}

fn verify_all(a: &VerifyArgs, fx: &Fixtures) -> Result<Outcome, CliError> {
    let known: Vec<u32> = verify::check_ids().map(|(id, _)| id).collect();
    if let Some(bad) = a.only.iter().find(|id| !known.contains(id)) {
        return Err(CliError::Usage(format!("no check with id {bad}")));
    }
    let outcomes: Vec<_> = if a.only.is_empty() {
        verify::run_all(fx)
    } else {
        a.only
            .iter()
            .filter_map(|&id| verify::run_check(id, fx))
            .collect()
    };
    let mut table = Table::new(&["id", "title", "status", "elapsed_ms", "budget_ms", "detail"]);
    let mut text = Vec::new();
    let mut items = Vec::new();
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        text.push(format!(
            "{:>2} {status} {:<28} {:>6} ms  {}",
            o.id, o.title, o.elapsed_ms, o.detail
        ));
        table.push(vec![
            o.id.to_string(),
            o.title.to_string(),
            status.into(),
            o.elapsed_ms.to_string(),
            o.budget_ms.to_string(),
            o.detail.clone(),
        ]);
        items.push(json!({
            "id": o.id,
            "title": o.title,
            "passed": o.passed,
            "detail": o.detail,
            "elapsed_ms": o.elapsed_ms as u64,
            "budget_ms": o.budget_ms as u64,
        }));
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    text.push(format!(
        "{} passed, {failed} failed",
        outcomes.len() - failed
    ));
    let mut out = Outcome::new(items, table, text)?;
    out.ok = failed == 0;
    Ok(out)
}
