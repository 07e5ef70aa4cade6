//! Points on a line in Mikhalkin position: lattice order, lattice paths, and
//! exact realizability of a path by a tropical surface with the trivial
//! subdivision.

mod feasibility;
mod path;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::exactmath::{ExactError, Rational};
use crate::geometry::{GeometryError, LatticePoint3};

pub use feasibility::{
    feasible_path_census, path_feasible, FeasibilityReport, MarkedPoint, Verdict, Witness,
};
pub use path::{enumerate_paths, LatticePath};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MikhalkinError {
    #[error("duplicate lattice point {0}")]
    DuplicatePoint(LatticePoint3),
    #[error("segment {from} -> {to} is not on an edge of the polytope")]
    NotAnEdge {
        from: LatticePoint3,
        to: LatticePoint3,
    },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Sorts by `⟨p, (1, η, η²)⟩` for infinitesimal `η`, which is lexicographic order.
pub fn mikhalkin_order(points: &[LatticePoint3]) -> Result<Vec<LatticePoint3>, MikhalkinError> {
    let mut seen = BTreeSet::new();
    for p in points {
        if !seen.insert(*p) {
            return Err(MikhalkinError::DuplicatePoint(*p));
        }
    }
    Ok(seen.into_iter().collect())
}

/// Marked points sit at `λ_j · (1, η, η²)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MikhalkinConfig {
    pub eta: Rational,
    /// Strictly increasing and starting at 0.
    pub lambda_schedule: Vec<Rational>,
    /// Extra runs with the tail `λ_2, λ_3, …` multiplied by `10^r` for `r = 1..=rounds`.
    pub escalation_rounds: u32,
}

impl Default for MikhalkinConfig {
    fn default() -> Self {
        MikhalkinConfig {
            eta: Rational::frac(1, 1000),
            lambda_schedule: vec![Rational::zero(), Rational::one(), Rational::from(1_000_000)],
            escalation_rounds: 3,
        }
    }
}

impl MikhalkinConfig {
    pub fn validate(&self, points: &[LatticePoint3]) -> Result<(), MikhalkinError> {
        if !self.eta.is_positive() {
            return Err(MikhalkinError::Config("eta must be positive".into()));
        }
        let max_sum = points
            .iter()
            .map(|p| (p.x + p.y + p.z).abs())
            .max()
            .unwrap_or(0);
        if max_sum > 0 && &self.eta * &Rational::from(max_sum) >= Rational::one() {
            return Err(MikhalkinError::Config(format!(
                "eta {} too large for coordinate sums up to {max_sum}",
                self.eta
            )));
        }
        match self.lambda_schedule.first() {
            Some(l) if l.is_zero() => {}
            _ => {
                return Err(MikhalkinError::Config(
                    "lambda schedule must start at 0".into(),
                ))
            }
        }
        if self.lambda_schedule.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MikhalkinError::Config(
                "lambda schedule must be strictly increasing".into(),
            ));
        }
        Ok(())
    }

    pub fn direction(&self) -> [Rational; 3] {
        [Rational::one(), self.eta.clone(), &self.eta * &self.eta]
    }

    /// First `m` parameters, extending the given schedule by factors of `10^6`.
    pub fn lambdas(&self, m: usize, round: u32) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.lambda_schedule.iter().take(m).cloned().collect();
        let step = Rational::from(1_000_000);
        while out.len() < m {
            let next = match out.last() {
                None => Rational::zero(),
                Some(l) if l.is_zero() => Rational::one(),
                Some(l) => l * &step,
            };
            out.push(next);
        }
        let scale = Rational::from(10).pow(round);
        for l in out.iter_mut().skip(2) {
            *l = &*l * &scale;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint3 {
        LatticePoint3::new(x, y, z)
    }

    #[test]
    fn lex_order_and_duplicates() {
        assert_eq!(
            mikhalkin_order(&[p(1, 0, 0), p(0, 1, 0), p(0, 0, 1)]).unwrap(),
            vec![p(0, 0, 1), p(0, 1, 0), p(1, 0, 0)]
        );
        assert!(matches!(
            mikhalkin_order(&[p(1, 0, 0), p(1, 0, 0)]),
            Err(MikhalkinError::DuplicatePoint(_))
        ));
    }

    #[test]
    fn schedule_extension_and_escalation() {
        let cfg = MikhalkinConfig::default();
        let l = cfg.lambdas(4, 0);
        assert_eq!(l[3], Rational::from(1_000_000_000_000i64));
        let e = cfg.lambdas(3, 2);
        assert_eq!(
            (e[0].clone(), e[1].clone(), e[2].clone()),
            (
                Rational::zero(),
                Rational::one(),
                Rational::from(100_000_000)
            )
        );
        assert!(cfg.validate(&[p(5, 5, 5)]).is_ok());
        let bad = MikhalkinConfig {
            eta: Rational::frac(1, 2),
            ..MikhalkinConfig::default()
        };
        assert!(bad.validate(&[p(1, 1, 0)]).is_err());
    }

    proptest! {
        #[test]
        fn lex_matches_eta_weighting(
            pts in prop::collection::btree_set((0i64..6, 0i64..6, 0i64..6), 1..12),
            k in 1i64..50,
        ) {
            let pts: Vec<_> = pts.into_iter().map(|(x, y, z)| p(x, y, z)).collect();
            let max_sum = pts.iter().map(|q| q.x + q.y + q.z).max().unwrap().max(1);
            let eta = Rational::frac(k, 51 * max_sum);
            let weight = |q: &LatticePoint3| q.dot_rational(&[Rational::one(), eta.clone(), &eta * &eta]);
            let mut by_weight = pts.clone();
            by_weight.sort_by_key(weight);
            prop_assert_eq!(mikhalkin_order(&pts).unwrap(), by_weight);
        }
    }
}
