//! Tabulated data shipped as JSON. The files under `fixtures/` are compiled in
//! as defaults; [`Fixtures::load_dir`] reads a replacement set from disk.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::placement::PlacementRule;
use super::{CatalogError, Family, Params};
use crate::exactmath::AffineExpr;
use crate::geometry::LatticePoint3;

const FAMILY8: &str = include_str!("../../../../fixtures/family8_degrees.json");
const PLACEMENTS: &str = include_str!("../../../../fixtures/placement_rules.json");
const FANS: &str = include_str!("../../../../fixtures/appendix_fans.json");

pub const FAMILY8_FILE: &str = "family8_degrees.json";
pub const PLACEMENTS_FILE: &str = "placement_rules.json";
pub const FANS_FILE: &str = "appendix_fans.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family8Cell {
    pub a: i64,
    pub b: i64,
    pub degree: i64,
    pub split: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family8Table {
    pub version: u32,
    #[serde(default)]
    pub description: String,
    pub cells: Vec<Family8Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Family8Lookup {
    Known { degree: i64, split: Vec<i64> },
    Unknown,
}

impl Family8Table {
    pub fn lookup(&self, a: i64, b: i64) -> Family8Lookup {
        match self.cells.iter().find(|c| c.a == a && c.b == b) {
            Some(c) => Family8Lookup::Known {
                degree: c.degree,
                split: c.split.clone(),
            },
            None => Family8Lookup::Unknown,
        }
    }
}

/// Printed ray generators of the vertex cones of one instance, by vertex letter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FanFixture {
    pub family: Family,
    pub params: Params,
    pub cones: BTreeMap<String, Vec<[AffineExpr; 3]>>,
    #[serde(default)]
    pub errata: Vec<Erratum>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Erratum {
    pub printed: [AffineExpr; 3],
    pub corrected: [AffineExpr; 3],
}

fn eval3(e: &[AffineExpr; 3], env: &BTreeMap<&str, i64>) -> Result<LatticePoint3, CatalogError> {
    Ok(LatticePoint3::new(
        e[0].eval(env)?,
        e[1].eval(env)?,
        e[2].eval(env)?,
    ))
}

impl FanFixture {
    fn env(&self) -> BTreeMap<&str, i64> {
        self.params.iter().collect()
    }

    /// The rays as printed.
    pub fn printed(&self) -> Result<BTreeMap<String, Vec<LatticePoint3>>, CatalogError> {
        let env = self.env();
        self.cones
            .iter()
            .map(|(k, rays)| {
                Ok((
                    k.clone(),
                    rays.iter()
                        .map(|r| eval3(r, &env))
                        .collect::<Result<_, _>>()?,
                ))
            })
            .collect()
    }

    /// The rays with every erratum applied.
    pub fn corrected(&self) -> Result<BTreeMap<String, Vec<LatticePoint3>>, CatalogError> {
        let env = self.env();
        let fixes: Vec<(LatticePoint3, LatticePoint3)> = self
            .errata
            .iter()
            .map(|e| Ok((eval3(&e.printed, &env)?, eval3(&e.corrected, &env)?)))
            .collect::<Result<_, CatalogError>>()?;
        let mut out = self.printed()?;
        for rays in out.values_mut() {
            for r in rays.iter_mut() {
                if let Some((_, fixed)) = fixes.iter().find(|(p, _)| p == r) {
                    *r = *fixed;
                }
            }
        }
        Ok(out)
    }
}

#[derive(Deserialize)]
struct PlacementFile {
    rules: Vec<PlacementRule>,
}

#[derive(Deserialize)]
struct FanFile {
    instances: Vec<FanFixture>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixtures {
    pub family8: Family8Table,
    pub placement_rules: Vec<PlacementRule>,
    pub fans: Vec<FanFixture>,
}

fn parse<T: for<'de> Deserialize<'de>>(name: &str, text: &str) -> Result<T, CatalogError> {
    serde_json::from_str(text).map_err(|e| CatalogError::Fixture(format!("{name}: {e}")))
}

impl Fixtures {
    pub fn from_strs(family8: &str, placements: &str, fans: &str) -> Result<Self, CatalogError> {
        let family8: Family8Table = parse(FAMILY8_FILE, family8)?;
        let placement_rules = parse::<PlacementFile>(PLACEMENTS_FILE, placements)?.rules;
        for r in &placement_rules {
            r.validate()?;
        }
        let fans = parse::<FanFile>(FANS_FILE, fans)?.instances;
        Ok(Fixtures {
            family8,
            placement_rules,
            fans,
        })
    }

    /// The compiled-in fixture set.
    pub fn builtin() -> &'static Fixtures {
        static CELL: OnceLock<Fixtures> = OnceLock::new();
        CELL.get_or_init(|| {
            Fixtures::from_strs(FAMILY8, PLACEMENTS, FANS).expect("bundled fixtures are valid")
        })
    }

    /// Reads the three fixture files from `dir`.
    pub fn load_dir(dir: &Path) -> Result<Self, CatalogError> {
        let read = |name: &str| {
            std::fs::read_to_string(dir.join(name))
                .map_err(|e| CatalogError::Fixture(format!("{}: {e}", dir.join(name).display())))
        };
        Self::from_strs(
            &read(FAMILY8_FILE)?,
            &read(PLACEMENTS_FILE)?,
            &read(FANS_FILE)?,
        )
    }

    pub fn fan(&self, family: Family) -> Option<&FanFixture> {
        self.fans.iter().find(|f| f.family == family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family8_table() {
        let t = &Fixtures::builtin().family8;
        assert_eq!(t.cells.len(), 16);
        assert_eq!(
            t.lookup(3, 1),
            Family8Lookup::Known {
                degree: 8,
                split: vec![3, 5]
            }
        );
        assert_eq!(
            t.lookup(7, 6),
            Family8Lookup::Known {
                degree: 80,
                split: vec![15, 40, 25]
            }
        );
        assert_eq!(t.lookup(4, 2), Family8Lookup::Unknown);
        assert_eq!(t.lookup(9, 1), Family8Lookup::Unknown);
    }

    #[test]
    fn fan_fixture_errata_apply() {
        let f = Fixtures::builtin().fan(Family::F20).unwrap();
        let printed = f.printed().unwrap();
        let fixed = f.corrected().unwrap();
        assert!(printed["B"].contains(&LatticePoint3::new(-4, 1, 1)));
        assert!(fixed["B"].contains(&LatticePoint3::new(-2, 1, 1)));
        assert_eq!(printed["E"], fixed["E"]);
    }

    #[test]
    fn bad_fixture_is_reported() {
        let err = Fixtures::from_strs("{", PLACEMENTS, FANS).unwrap_err();
        assert!(matches!(err, CatalogError::Fixture(m) if m.starts_with(FAMILY8_FILE)));
    }
}
