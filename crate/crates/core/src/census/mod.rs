//! Surface floor-plan censuses: node-germ multiplicities, the artificial
//! census `A_δ(d)`, and binodal-polytope contributions.

mod artificial;
mod contribution;
mod germ;

pub use artificial::{
    artificial_census, expected_second_coefficient, germ_floor_contribution, interior_contribution,
    reference_lower_bound, reference_top_terms, top_contribution, unseparated_lower_bound,
    CensusResult, LowerBound, MAX_CENSUS_DELTA,
};
pub use contribution::{
    binodal_contribution, binodal_contribution_sampled, brute_force, reference_closed_form,
    reference_totals, ClosedForm, ConsistencyFlag, ContributionReport, FamilyContribution,
    CONTRIBUTING_FAMILIES,
};
pub use germ::{floor_plan_product, germ_multiplicity, GermDescriptor, GermKind, Mode, NodeFactor};

use crate::catalog::CatalogError;
use crate::exactmath::ExactError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CensusError {
    #[error("unknown germ kind {0:?}")]
    UnknownGerm(String),
    #[error("{0} needs a slope parameter")]
    MissingSlope(GermKind),
    #[error("double right string needs the side of the vertical edge")]
    MissingOrientation,
    #[error("{kind} requires {rule}, got |a| = {slope}")]
    SlopeBound {
        kind: GermKind,
        rule: &'static str,
        slope: i64,
    },
    #[error("floor {0} is outside the surface")]
    BadFloor(u32),
    #[error("floor plan has {found} nodes, expected {expected}")]
    NodeCount { expected: u32, found: u32 },
    #[error("path {path} does not exist; the family has {count} paths")]
    NoSuchPath { path: usize, count: usize },
    #[error("census is implemented for 1 <= delta <= {max}, got {delta}")]
    DeltaRange { delta: u32, max: u32 },
    #[error("binodal contributions need degree at least 5, got {0}")]
    DegreeTooSmall(i64),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
