//! The families of 3-dimensional lattice polytopes with six lattice points and
//! width one, their binodality status, degree and path-multiplicity formulas,
//! tabulated data, and placements inside `dΔ₃`.

mod fixtures;
mod placement;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exactmath::ExactError;
use crate::geometry::{lattice_width, GeometryError, LatticePoint3, LatticePolytope};

pub use fixtures::{Family8Cell, Family8Lookup, Family8Table, FanFixture, Fixtures};
pub use placement::{
    placement_multiplicity_sum, placements, Multiplicity, Placement, PlacementRule,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown family {0}; known families are 1, 8, 9, 10, 13, 14, 15, 16, 17, 20, 21")]
    UnknownFamily(u32),
    #[error("family {family} needs parameter {name}")]
    MissingParam { family: Family, name: &'static str },
    #[error("family {family} takes no parameter {name}")]
    UnexpectedParam { family: Family, name: String },
    #[error("family {family}: constraint {condition} fails for {params}")]
    Constraint {
        family: Family,
        condition: &'static str,
        params: Params,
    },
    #[error("family {0} has no degree formula; see the family-8 fixture table")]
    NoFormula(Family),
    #[error("family {family} at {params} is not binodal: {reason}")]
    NotBinodal {
        family: Family,
        params: Params,
        reason: String,
    },
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("cannot parse parameters {0:?}; expected a=3,b=1")]
    BadParams(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub enum Family {
    F1,
    F8,
    F9,
    F10,
    F13,
    F14,
    F15,
    F16,
    F17,
    F20,
    F21,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::F1,
        Family::F8,
        Family::F9,
        Family::F10,
        Family::F13,
        Family::F14,
        Family::F15,
        Family::F16,
        Family::F17,
        Family::F20,
        Family::F21,
    ];

    pub fn number(self) -> u32 {
        match self {
            Family::F1 => 1,
            Family::F8 => 8,
            Family::F9 => 9,
            Family::F10 => 10,
            Family::F13 => 13,
            Family::F14 => 14,
            Family::F15 => 15,
            Family::F16 => 16,
            Family::F17 => 17,
            Family::F20 => 20,
            Family::F21 => 21,
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::F1 | Family::F9 => &[],
            Family::F20 => &["a"],
            Family::F21 => &["a", "b", "c", "d"],
            _ => &["a", "b"],
        }
    }

    /// The 3×6 matrix whose columns are the lattice points `A..F`.
    pub fn matrix(self, p: &Params) -> Result<[Vec<i64>; 3], CatalogError> {
        let v = |name: &'static str| p.require(self, name);
        Ok(match self {
            Family::F1 => [
                vec![0, 0, 0, 0, 0, 1],
                vec![0, 1, 1, 1, 2, 1],
                vec![0, 0, 1, 2, 0, 0],
            ],
            Family::F8 => [
                vec![0, 0, 0, 0, 1, 1],
                vec![0, 1, 1, 2, 0, v("a")?],
                vec![0, 1, 2, 1, 0, v("b")?],
            ],
            Family::F9 => [
                vec![0, 0, 0, 0, 1, 1],
                vec![0, 0, 1, 1, 0, 0],
                vec![0, 1, 0, 1, 0, 1],
            ],
            Family::F10 => [
                vec![0, 0, 0, 0, 1, 1],
                vec![0, 0, 1, 1, 0, v("a")?],
                vec![0, 1, 0, 1, 0, v("b")?],
            ],
            Family::F13 => [
                vec![0, 0, 0, 0, 1, 1],
                vec![0, 1, 1, 2, 0, v("a")?],
                vec![0, 0, 1, 0, 0, v("b")?],
            ],
            Family::F14 => [
                vec![0, 0, 0, 0, 1, 1],
                vec![0, 1, 1, 2, 0, v("b")?],
                vec![0, 0, 1, 0, 0, v("a")?],
            ],
            Family::F15 => [
                vec![0, 0, 0, 0, 1, 1],
                vec![0, 0, 0, 0, 0, v("a")?],
                vec![0, 1, 2, 3, 0, v("b")?],
            ],
            Family::F16 => {
                let (a, b) = (v("a")?, v("b")?);
                [
                    vec![0, 0, 0, 1, 1, 1],
                    vec![0, 1, 2, 0, b, 2 * b],
                    vec![0, 0, 0, 0, a, 2 * a],
                ]
            }
            Family::F17 => {
                let (a, b) = (v("a")?, v("b")?);
                [
                    vec![0, 0, 0, 1, 1, 1],
                    vec![0, 0, 1, 0, a, 2 * a],
                    vec![0, 1, 0, 0, b, 2 * b],
                ]
            }
            Family::F20 => [
                vec![0, 0, 0, 1, 1, 1],
                vec![1, 1, 2, 0, 1, 1],
                vec![0, 1, 0, v("a")?, 0, 1],
            ],
            Family::F21 => [
                vec![0, 0, 0, 1, 1, 1],
                vec![0, 0, 1, 0, v("a")?, v("c")?],
                vec![0, 1, 0, 0, v("b")?, v("d")?],
            ],
        })
    }

    /// First violated parameter constraint, if any.
    fn violated(self, p: &Params) -> Result<Option<&'static str>, CatalogError> {
        let v = |name: &'static str| p.require(self, name);
        let coprime = |a: i64, b: i64| a.gcd(&b) == 1;
        let check =
            |conds: &[(bool, &'static str)]| conds.iter().find(|(ok, _)| !ok).map(|(_, c)| *c);
        Ok(match self {
            Family::F1 | Family::F9 => None,
            Family::F8 => {
                let (a, b) = (v("a")?, v("b")?);
                check(&[
                    (coprime(a, b), "gcd(a,b)=1"),
                    (2 * b != a, "2b≠a"),
                    (0 < b && b < a, "0<b<a"),
                ])
            }
            Family::F10 | Family::F17 => {
                let (a, b) = (v("a")?, v("b")?);
                check(&[(coprime(a, b), "gcd(a,b)=1"), (0 < b && b <= a, "0<b≤a")])
            }
            Family::F13 | Family::F14 => {
                let (a, b) = (v("a")?, v("b")?);
                check(&[(coprime(a, b), "gcd(a,b)=1"), (0 < b && b < a, "0<b<a")])
            }
            Family::F15 | Family::F16 => {
                let (a, b) = (v("a")?, v("b")?);
                check(&[(coprime(a, b), "gcd(a,b)=1"), (0 <= b && b < a, "0≤b<a")])
            }
            Family::F20 => check(&[(v("a")? >= 3, "a≥3")]),
            Family::F21 => {
                let (a, b, c, d) = (v("a")?, v("b")?, v("c")?, v("d")?);
                check(&[
                    (a * d - b * c == 1, "ad−bc=1"),
                    (a > 0 && b > 0 && c > 0 && d > 0, "a,b,c,d>0"),
                    (c + d > a + b, "c+d>a+b"),
                    (c > a, "c>a"),
                ])
            }
        })
    }

    fn status(self, p: &Params) -> Result<Status, CatalogError> {
        let not = |why: &str| Status::NotBinodal {
            reason: why.to_string(),
        };
        let pair = || -> Result<(i64, i64), CatalogError> {
            Ok((p.require(self, "a")?, p.require(self, "b")?))
        };
        Ok(match self {
            Family::F1 | Family::F9 | Family::F15 | Family::F16 | Family::F17 => {
                not("every polytope of this family is eliminated")
            }
            Family::F10 if matches!(pair()?, (1, 1) | (2, 1)) => not("family 10 needs a ≥ 3"),
            Family::F13 | Family::F14 if matches!(pair()?, (2, 1) | (3, 1)) => {
                not("with b=1 the family needs a > 3")
            }
            Family::F20 if p.require(self, "a")? == 3 => not("family 20 needs a > 3"),
            _ => Status::Binodal,
        })
    }

    /// The table's verified parameter range for the degree and multiplicity formulas.
    fn verified(self, p: &Params) -> bool {
        let g = |n: &str| p.get(n).unwrap_or(i64::MAX);
        match self {
            Family::F10 => g("a") <= 7 && g("b") <= 4,
            Family::F13 => g("a") <= 9 && g("b") <= 8,
            Family::F14 => g("a") <= 9 && g("b") <= 7,
            Family::F20 => g("a") <= 7,
            Family::F21 => ["a", "b", "c", "d"].iter().all(|n| g(n) <= 5),
            _ => false,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl TryFrom<u32> for Family {
    type Error = CatalogError;
    fn try_from(n: u32) -> Result<Self, CatalogError> {
        Family::ALL
            .into_iter()
            .find(|f| f.number() == n)
            .ok_or(CatalogError::UnknownFamily(n))
    }
}

impl From<Family> for u32 {
    fn from(f: Family) -> u32 {
        f.number()
    }
}

/// Named integer parameters, written `a=3,b=1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Params(BTreeMap<String, i64>);

impl Params {
    pub fn new<'a>(pairs: impl IntoIterator<Item = (&'a str, i64)>) -> Self {
        Params(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.0.get(name).copied()
    }

    fn require(&self, family: Family, name: &'static str) -> Result<i64, CatalogError> {
        self.get(name)
            .ok_or(CatalogError::MissingParam { family, name })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if parts.is_empty() {
            f.write_str("(no parameters)")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Params {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let mut map = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| CatalogError::BadParams(s.to_string()))?;
            let v: i64 = v
                .trim()
                .parse()
                .map_err(|_| CatalogError::BadParams(s.to_string()))?;
            map.insert(k.trim().to_string(), v);
        }
        Ok(Params(map))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum Status {
    Binodal,
    NotBinodal { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyInstance {
    pub family: Family,
    pub params: Params,
    pub status: Status,
    pub polytope: LatticePolytope,
    pub lattice_point_count: usize,
    pub width: i64,
}

pub fn instantiate(family: Family, params: Params) -> Result<FamilyInstance, CatalogError> {
    if let Some((name, _)) = params
        .iter()
        .find(|(k, _)| !family.param_names().contains(k))
    {
        return Err(CatalogError::UnexpectedParam {
            family,
            name: name.to_string(),
        });
    }
    if let Some(condition) = family.violated(&params)? {
        return Err(CatalogError::Constraint {
            family,
            condition,
            params,
        });
    }
    let polytope = LatticePolytope::from_columns(&family.matrix(&params)?)?;
    let lattice_point_count = polytope.lattice_points()?.len();
    let (width, _) = lattice_width(&polytope)?;
    let status = family.status(&params)?;
    Ok(FamilyInstance {
        family,
        params,
        status,
        polytope,
        lattice_point_count,
        width,
    })
}

impl FamilyInstance {
    pub fn is_binodal(&self) -> bool {
        self.status == Status::Binodal
    }

    /// Whether the parameters lie in the range where the formulas were checked
    /// against direct computation. Outside it the values are conjectural.
    pub fn verified(&self) -> bool {
        self.family.verified(&self.params)
    }

    /// Lattice points `A..F` in matrix column order.
    pub fn labelled_points(&self) -> Result<Vec<(char, LatticePoint3)>, CatalogError> {
        let m = self.family.matrix(&self.params)?;
        Ok((0..6)
            .map(|j| {
                (
                    (b'A' + j as u8) as char,
                    LatticePoint3::new(m[0][j], m[1][j], m[2][j]),
                )
            })
            .collect())
    }

    fn formula_params(&self) -> Result<(i64, i64, i64, i64, i64), CatalogError> {
        if let Status::NotBinodal { reason } = &self.status {
            return Err(CatalogError::NotBinodal {
                family: self.family,
                params: self.params.clone(),
                reason: reason.clone(),
            });
        }
        let g = |n: &str| self.params.get(n).unwrap_or(0);
        let (a, b, c, d) = (g("a"), g("b"), g("c"), g("d"));
        Ok((a, b, c, d, (a + b).rem_euclid(2)))
    }

    /// Degree of the binodal variety by the family's formula.
    pub fn binodal_degree(&self) -> Result<i64, CatalogError> {
        let (a, b, c, d, k) = self.formula_params()?;
        match self.family {
            Family::F10 => Ok((a - 2) * (a + b + 2)),
            // a²+b²+(κ-2)(a+b) is even for either parity of a+b
            Family::F13 => Ok((a * a + b * b + (k - 2) * (a + b)) / 2 + a * b - 4 + k),
            Family::F14 => Ok((a + 1) * (a + b - 4 + k)),
            Family::F20 => Ok((a - 3) * (a + 2)),
            Family::F21 => Ok((d + c + 2) * (d + c - 4)),
            other => Err(CatalogError::NoFormula(other)),
        }
    }

    /// Multiplicity of each lattice path in the family's table order.
    pub fn path_multiplicities(&self) -> Result<Vec<i64>, CatalogError> {
        let (a, b, c, d, k) = self.formula_params()?;
        match self.family {
            Family::F10 => Ok(vec![a - 2, a * (a - 2), a - 2, b * (a - 2)]),
            Family::F13 => {
                let s = a + b - 4 + k;
                // (a-b)(a+b+κ-4) with a+b+κ even
                Ok(vec![(a - b) * s / 2, s, b * s])
            }
            Family::F14 => {
                let s = a + b - 4 + k;
                Ok(vec![s, a * s])
            }
            Family::F20 => Ok(vec![a - 3, a - 3, a - 3, a - 3, (a - 2) * (a - 3)]),
            Family::F21 => {
                let s = c + d - 4;
                Ok(vec![s, c * s, s, (d - b) * s, b * s])
            }
            other => Err(CatalogError::NoFormula(other)),
        }
    }
}

/// Every valid parameter choice for `family` with all parameters in `1..=max`
/// (and `b = 0` where the constraints allow it).
pub fn parameter_grid(family: Family, max: i64) -> Vec<Params> {
    let names = family.param_names();
    let mut out = Vec::new();
    let mut cur = vec![0i64; names.len()];
    fn rec(
        i: usize,
        max: i64,
        names: &[&'static str],
        cur: &mut Vec<i64>,
        family: Family,
        out: &mut Vec<Params>,
    ) {
        if i == names.len() {
            let p = Params::new(names.iter().copied().zip(cur.iter().copied()));
            if matches!(family.violated(&p), Ok(None)) {
                out.push(p);
            }
            return;
        }
        for v in 0..=max {
            cur[i] = v;
            rec(i + 1, max, names, cur, family, out);
        }
    }
    rec(0, max, names, &mut cur, family, &mut out);
    out
}
