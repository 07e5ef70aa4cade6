//! Node germs of surface floor plans and their complex multiplicities.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::CensusError;
use crate::catalog::{instantiate, Family, Params};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GermKind {
    Parallelogram,
    #[serde(rename = "midpoint-weight-2-edge")]
    MidpointWeight2Edge,
    #[serde(rename = "horizontal-end-2")]
    HorizontalEnd2,
    #[serde(rename = "diagonal-end-2")]
    DiagonalEnd2,
    LeftStringEdge,
    LeftStringVertex,
    RightStringEdge,
    RightStringVertex,
    DoubleRightString,
    PairRightStringWeight2Edge,
    PairRightStringParallelogram,
}

impl GermKind {
    pub const ALL: [GermKind; 11] = [
        GermKind::Parallelogram,
        GermKind::MidpointWeight2Edge,
        GermKind::HorizontalEnd2,
        GermKind::DiagonalEnd2,
        GermKind::LeftStringEdge,
        GermKind::LeftStringVertex,
        GermKind::RightStringEdge,
        GermKind::RightStringVertex,
        GermKind::DoubleRightString,
        GermKind::PairRightStringWeight2Edge,
        GermKind::PairRightStringParallelogram,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GermKind::Parallelogram => "parallelogram",
            GermKind::MidpointWeight2Edge => "midpoint-weight-2-edge",
            GermKind::HorizontalEnd2 => "horizontal-end-2",
            GermKind::DiagonalEnd2 => "diagonal-end-2",
            GermKind::LeftStringEdge => "left-string-edge",
            GermKind::LeftStringVertex => "left-string-vertex",
            GermKind::RightStringEdge => "right-string-edge",
            GermKind::RightStringVertex => "right-string-vertex",
            GermKind::DoubleRightString => "double-right-string",
            GermKind::PairRightStringWeight2Edge => "pair-right-string-weight2-edge",
            GermKind::PairRightStringParallelogram => "pair-right-string-parallelogram",
        }
    }

    /// Germs built from a binodal polytope interact across two floors.
    pub fn is_unseparated(self) -> bool {
        matches!(
            self,
            GermKind::DoubleRightString
                | GermKind::PairRightStringWeight2Edge
                | GermKind::PairRightStringParallelogram
        )
    }

    pub fn nodes(self) -> u32 {
        if self.is_unseparated() {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for GermKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GermKind {
    type Err = CensusError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GermKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| CensusError::UnknownGerm(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Separated,
    Unseparated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermDescriptor {
    pub kind: GermKind,
    pub floor: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope: Option<i64>,
    /// Only read for double right strings: whether the vertical edge of the
    /// aligned triangle is on its left.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertical_edge_left: Option<bool>,
}

impl GermDescriptor {
    pub fn new(kind: GermKind, floor: u32) -> Self {
        GermDescriptor {
            kind,
            floor,
            slope: None,
            vertical_edge_left: None,
        }
    }

    pub fn with_slope(kind: GermKind, floor: u32, a: i64) -> Self {
        GermDescriptor {
            slope: Some(a),
            ..Self::new(kind, floor)
        }
    }

    pub fn mode(&self) -> Mode {
        if self.kind.is_unseparated() {
            Mode::Unseparated
        } else {
            Mode::Separated
        }
    }
}

fn slope(g: &GermDescriptor, min: i64, rule: &'static str) -> Result<i64, CensusError> {
    let a = g.slope.ok_or(CensusError::MissingSlope(g.kind))?.abs();
    if a < min {
        return Err(CensusError::SlopeBound {
            kind: g.kind,
            rule,
            slope: a,
        });
    }
    Ok(a)
}

pub fn germ_multiplicity(g: &GermDescriptor) -> Result<i64, CensusError> {
    let i = i64::from(g.floor);
    if g.floor == 0 {
        return Err(CensusError::BadFloor(g.floor));
    }
    Ok(match g.kind {
        GermKind::Parallelogram | GermKind::LeftStringEdge | GermKind::RightStringEdge => 2,
        GermKind::LeftStringVertex | GermKind::RightStringVertex => 1,
        GermKind::MidpointWeight2Edge => 8,
        GermKind::HorizontalEnd2 => 2 * (i + 1),
        GermKind::DiagonalEnd2 => 2 * (i - 1),
        GermKind::DoubleRightString => {
            let a = slope(g, 3, "|a| >= 3")?;
            let left = g
                .vertical_edge_left
                .ok_or(CensusError::MissingOrientation)?;
            if left {
                a - 2
            } else {
                a - 3
            }
        }
        GermKind::PairRightStringWeight2Edge => {
            let a = slope(g, 4, "|a| >= 4")?;
            if a % 2 == 0 {
                a - 2
            } else {
                a - 3
            }
        }
        GermKind::PairRightStringParallelogram => slope(g, 4, "|a| >= 4")? - 2,
    })
}

/// One factor of a floor-plan multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum NodeFactor {
    Germ(GermDescriptor),
    /// Two unseparated nodes dual to a binodal polytope, weighted by the
    /// multiplicity of the lattice path through it.
    BinodalPath {
        family: Family,
        params: Params,
        path: usize,
    },
    /// A cell whose multiplicity was determined from its own discriminant
    /// rather than from a germ rule.
    Measured {
        cell: String,
        multiplicity: i64,
        nodes: u32,
    },
}

impl NodeFactor {
    pub fn nodes(&self) -> u32 {
        match self {
            NodeFactor::Germ(g) => g.kind.nodes(),
            NodeFactor::BinodalPath { .. } => 2,
            NodeFactor::Measured { nodes, .. } => *nodes,
        }
    }

    pub fn multiplicity(&self) -> Result<i64, CensusError> {
        match self {
            NodeFactor::Germ(g) => germ_multiplicity(g),
            NodeFactor::BinodalPath {
                family,
                params,
                path,
            } => {
                let mults = instantiate(*family, params.clone())?.path_multiplicities()?;
                mults.get(*path).copied().ok_or(CensusError::NoSuchPath {
                    path: *path,
                    count: mults.len(),
                })
            }
            NodeFactor::Measured { multiplicity, .. } => Ok(*multiplicity),
        }
    }
}

/// Product of the factor multiplicities of a δ-nodal floor plan.
pub fn floor_plan_product(factors: &[NodeFactor], delta: u32) -> Result<i64, CensusError> {
    let nodes: u32 = factors.iter().map(NodeFactor::nodes).sum();
    if nodes != delta {
        return Err(CensusError::NodeCount {
            expected: delta,
            found: nodes,
        });
    }
    factors.iter().map(NodeFactor::multiplicity).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicity_rules() {
        assert_eq!(
            germ_multiplicity(&GermDescriptor::new(GermKind::HorizontalEnd2, 3)).unwrap(),
            8
        );
        assert_eq!(
            germ_multiplicity(&GermDescriptor::new(GermKind::DiagonalEnd2, 3)).unwrap(),
            4
        );
        assert_eq!(
            germ_multiplicity(&GermDescriptor::new(GermKind::RightStringVertex, 5)).unwrap(),
            1
        );
        let pair = |a| GermDescriptor::with_slope(GermKind::PairRightStringWeight2Edge, 5, a);
        assert_eq!(germ_multiplicity(&pair(6)).unwrap(), 4);
        assert_eq!(germ_multiplicity(&pair(7)).unwrap(), 4);
        assert_eq!(germ_multiplicity(&pair(-6)).unwrap(), 4);
        let mut drs = GermDescriptor::with_slope(GermKind::DoubleRightString, 4, 5);
        assert!(matches!(
            germ_multiplicity(&drs),
            Err(CensusError::MissingOrientation)
        ));
        drs.vertical_edge_left = Some(true);
        assert_eq!(germ_multiplicity(&drs).unwrap(), 3);
        drs.vertical_edge_left = Some(false);
        assert_eq!(germ_multiplicity(&drs).unwrap(), 2);
    }

    #[test]
    fn slope_bounds() {
        let p = GermDescriptor::with_slope(GermKind::PairRightStringParallelogram, 5, 3);
        assert!(matches!(
            germ_multiplicity(&p),
            Err(CensusError::SlopeBound { slope: 3, .. })
        ));
        let missing = GermDescriptor::new(GermKind::PairRightStringParallelogram, 5);
        assert!(matches!(
            germ_multiplicity(&missing),
            Err(CensusError::MissingSlope(_))
        ));
    }

    #[test]
    fn names_round_trip() {
        for k in GermKind::ALL {
            assert_eq!(k.name().parse::<GermKind>().unwrap(), k);
            assert_eq!(
                serde_json::to_string(&k).unwrap(),
                format!("\"{}\"", k.name())
            );
        }
        assert_eq!(GermKind::DoubleRightString.nodes(), 2);
        assert_eq!(
            GermDescriptor::new(GermKind::Parallelogram, 2).mode(),
            Mode::Separated
        );
    }

    #[test]
    fn products() {
        assert_eq!(floor_plan_product(&[], 0).unwrap(), 1);
        let g = NodeFactor::Germ(GermDescriptor::new(GermKind::Parallelogram, 2));
        assert!(matches!(
            floor_plan_product(std::slice::from_ref(&g), 2),
            Err(CensusError::NodeCount { .. })
        ));
        let path = NodeFactor::BinodalPath {
            family: Family::F10,
            params: Params::new([("a", 4), ("b", 1)]),
            path: 1,
        };
        assert_eq!(floor_plan_product(&[path, g], 3).unwrap(), 16);
    }
}
