use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CatalogError, Family, Params};
use crate::exactmath::{AffineExpr, ExactError};
use crate::geometry::{LatticePoint3, LatticePolytope};

/// A germ multiplicity, optionally split on the parity of `a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Multiplicity {
    Uniform(AffineExpr),
    ByParity { even: AffineExpr, odd: AffineExpr },
}

impl Multiplicity {
    pub fn eval(&self, a: i64) -> Result<i64, CatalogError> {
        let env = BTreeMap::from([("a", a)]);
        let e = match self {
            Multiplicity::Uniform(e) => e,
            Multiplicity::ByParity { even, odd } => {
                if a % 2 == 0 {
                    even
                } else {
                    odd
                }
            }
        };
        Ok(e.eval(&env)?)
    }

    fn exprs(&self) -> Vec<&AffineExpr> {
        match self {
            Multiplicity::Uniform(e) => vec![e],
            Multiplicity::ByParity { even, odd } => vec![even, odd],
        }
    }
}

/// A matrix template whose instantiations are copies of one family inside `dΔ₃`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacementRule {
    pub family: Family,
    pub variant: u32,
    /// Node-germ kind, in the kebab-case naming of the census module.
    pub germ: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertical_edge_left: Option<bool>,
    pub a_min: i64,
    /// Column letters of the marked lattice path.
    pub path: Vec<String>,
    pub multiplicity: Multiplicity,
    /// Parameters of the family instance this placement is equivalent to.
    pub canonical_params: BTreeMap<String, AffineExpr>,
    /// Rows x, y, z; columns A..F; affine in d, f, y, a.
    pub rows: [[AffineExpr; 6]; 3],
}

const TEMPLATE_VARS: [&str; 4] = ["d", "f", "y", "a"];

impl PlacementRule {
    pub(super) fn validate(&self) -> Result<(), CatalogError> {
        let bad = |what: String| {
            CatalogError::Fixture(format!(
                "placement {}v{}: {what}",
                self.family, self.variant
            ))
        };
        for e in self.rows.iter().flatten() {
            if let Some(v) = e.variables().find(|v| !TEMPLATE_VARS.contains(v)) {
                return Err(bad(format!("unknown variable {v} in {e}")));
            }
        }
        for e in self
            .multiplicity
            .exprs()
            .into_iter()
            .chain(self.canonical_params.values())
        {
            if let Some(v) = e.variables().find(|v| *v != "a") {
                return Err(bad(format!("{e} may only depend on a, found {v}")));
            }
        }
        if self.path.len() < 2 || self.path.iter().any(|l| column_index(l).is_none()) {
            return Err(bad(format!(
                "path {:?} must name at least two columns A..F",
                self.path
            )));
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        format!("{}v{}", self.family, self.variant)
    }

    /// Integer coefficients of each entry over `(d, f, y, a, 1)`.
    fn compile(&self) -> Result<[[[i64; 5]; 6]; 3], CatalogError> {
        let mut out = [[[0; 5]; 6]; 3];
        for (r, row) in self.rows.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                for (slot, v) in TEMPLATE_VARS.iter().enumerate() {
                    out[r][j][slot] = i64::try_from(e.coeff(v))
                        .map_err(|_| CatalogError::Exact(ExactError::Overflow))?;
                }
                out[r][j][4] = i64::try_from(e.constant_term())
                    .map_err(|_| CatalogError::Exact(ExactError::Overflow))?;
            }
        }
        Ok(out)
    }
}

/// Columns at `(d, f, y, a)`, or `None` as soon as one leaves `dΔ₃`.
fn columns_in_simplex(c: &[[[i64; 5]; 6]; 3], vals: [i64; 4]) -> Option<Vec<LatticePoint3>> {
    let e = |k: &[i64; 5]| k[0] * vals[0] + k[1] * vals[1] + k[2] * vals[2] + k[3] * vals[3] + k[4];
    let mut out = [LatticePoint3::new(0, 0, 0); 6];
    for (j, slot) in out.iter_mut().enumerate() {
        *slot = LatticePoint3::new(e(&c[0][j]), e(&c[1][j]), e(&c[2][j]));
        if !in_simplex(slot, vals[0]) {
            return None;
        }
    }
    Some(out.to_vec())
}

fn column_index(letter: &str) -> Option<usize> {
    match letter.as_bytes() {
        [c @ b'A'..=b'F'] => Some((c - b'A') as usize),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Placement {
    pub family: Family,
    pub variant: u32,
    pub d: i64,
    pub f: i64,
    pub y: i64,
    pub a: i64,
    pub columns: Vec<LatticePoint3>,
    pub path: Vec<LatticePoint3>,
    pub multiplicity: i64,
    pub canonical_params: Params,
}

impl Placement {
    pub fn polytope(&self) -> Result<LatticePolytope, CatalogError> {
        Ok(LatticePolytope::new(self.columns.iter().copied())?)
    }
}

fn in_simplex(p: &LatticePoint3, d: i64) -> bool {
    p.x >= 0 && p.y >= 0 && p.z >= 0 && p.x + p.y + p.z <= d
}

/// Calls `visit(rule, f, y, a, columns)` for every instantiation whose columns
/// lie in `dΔ₃`, ordered by rule, then `f`, `y`, `a`.
fn for_each_placement(
    rules: &[PlacementRule],
    family: Family,
    d: i64,
    mut visit: impl FnMut(&PlacementRule, i64, i64, i64, Vec<LatticePoint3>) -> Result<(), CatalogError>,
) -> Result<(), CatalogError> {
    for rule in rules.iter().filter(|r| r.family == family) {
        let compiled = rule.compile()?;
        for f in 0..d {
            for y in 0..=d {
                // Columns in dΔ₃ have entries at most d, and a enters every template with coefficient ±1.
                for a in rule.a_min..=2 * d + 2 {
                    if let Some(columns) = columns_in_simplex(&compiled, [d, f, y, a]) {
                        visit(rule, f, y, a, columns)?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// Every instantiation of the rules for `family` whose columns lie in `dΔ₃`,
/// ordered by rule, then `f`, `y`, `a`. Degrees too small for any placement
/// give an empty list.
pub fn placements(
    rules: &[PlacementRule],
    family: Family,
    d: i64,
) -> Result<Vec<Placement>, CatalogError> {
    let mut out = Vec::new();
    for_each_placement(rules, family, d, |rule, f, y, a, columns| {
        let path = rule
            .path
            .iter()
            .map(|l| columns[column_index(l).expect("validated")])
            .collect();
        let aenv = BTreeMap::from([("a", a)]);
        let canonical_params = Params(
            rule.canonical_params
                .iter()
                .map(|(k, e)| Ok((k.clone(), e.eval(&aenv)?)))
                .collect::<Result<_, CatalogError>>()?,
        );
        out.push(Placement {
            family,
            variant: rule.variant,
            d,
            f,
            y,
            a,
            columns,
            path,
            multiplicity: rule.multiplicity.eval(a)?,
            canonical_params,
        });
        Ok(())
    })?;
    Ok(out)
}

/// Sum of placement multiplicities, without materialising the placements.
pub fn placement_multiplicity_sum(
    rules: &[PlacementRule],
    family: Family,
    d: i64,
) -> Result<i64, CatalogError> {
    let mut total = 0;
    for_each_placement(rules, family, d, |rule, _, _, a, _| {
        total += rule.multiplicity.eval(a)?;
        Ok(())
    })?;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::super::Fixtures;
    use super::*;

    fn rules() -> &'static [PlacementRule] {
        &Fixtures::builtin().placement_rules
    }

    #[test]
    fn smallest_degrees() {
        let p20 = placements(rules(), Family::F20, 5).unwrap();
        assert_eq!(p20.len(), 1);
        assert_eq!(
            (p20[0].f, p20[0].y, p20[0].a, p20[0].multiplicity),
            (4, 0, 4, 1)
        );
        let p10 = placements(rules(), Family::F10, 5).unwrap();
        assert_eq!(p10.len(), 1);
        assert_eq!((p10[0].variant, p10[0].a, p10[0].multiplicity), (1, 3, 1));
        assert!(placements(rules(), Family::F13, 6).unwrap().is_empty());
        assert!(placements(rules(), Family::F20, 4).unwrap().is_empty());
        assert!(placements(rules(), Family::F14, 9).unwrap().is_empty());
    }

    #[test]
    fn sum_agrees_with_materialised_placements() {
        for fam in [Family::F10, Family::F13, Family::F20] {
            for d in 5..=11 {
                let direct: i64 = placements(rules(), fam, d)
                    .unwrap()
                    .iter()
                    .map(|p| p.multiplicity)
                    .sum();
                assert_eq!(placement_multiplicity_sum(rules(), fam, d).unwrap(), direct);
            }
        }
    }

    #[test]
    fn multiplicity_parity() {
        let m13 = &rules()
            .iter()
            .find(|r| r.family == Family::F13)
            .unwrap()
            .multiplicity;
        assert_eq!((m13.eval(6).unwrap(), m13.eval(7).unwrap()), (4, 4));
    }

    #[test]
    fn placements_are_six_point_polytopes() {
        for fam in [Family::F10, Family::F13, Family::F20] {
            for p in placements(rules(), fam, 8).unwrap() {
                assert_eq!(
                    p.polytope().unwrap().lattice_points().unwrap().len(),
                    6,
                    "{p:?}"
                );
            }
        }
    }
}
