//! Counting δ-nodal plane curves of degree d through points in horizontally
//! stretched position via floor plans, with a Caporaso–Harris oracle.

mod floorplan;
mod severi;

use serde::{Deserialize, Serialize};

pub use floorplan::{count_curves, enumerate_floor_plans, for_each_floor_plan, CurveCount};
pub use severi::caporaso_harris;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("{delta} nodes exceed the genus bound {max} for degree {degree}")]
    TooManyNodes { degree: u32, delta: u32, max: u32 },
    #[error("invalid floor plan: {0}")]
    InvalidPlan(String),
}

/// A point of a neighbouring divisor that a floating point lines up with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "index")]
pub enum PointRef {
    Fixed(usize),
    Float(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AlignmentTarget {
    pub divisor: u32,
    pub point: PointRef,
}

/// Divisor `D_i`: its fixed points (one per point condition, with weights) and
/// its floating points, each aligned with a point of `D_{i-1}` or `D_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodalDivisor {
    pub degree: u32,
    pub weights: Vec<u32>,
    pub floats: Vec<AlignmentTarget>,
}

impl NodalDivisor {
    fn excess(&self) -> u32 {
        self.weights.iter().map(|w| w - 1).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CurveFloorPlan {
    pub degree: u32,
    pub delta: u32,
    /// Nodal floors `(i, k_i)` with `i` decreasing.
    pub tuple: Vec<(u32, u32)>,
    /// `D_d, …, D_1`.
    pub divisors: Vec<NodalDivisor>,
}

impl CurveFloorPlan {
    pub fn divisor(&self, i: u32) -> &NodalDivisor {
        &self.divisors[(self.degree - i) as usize]
    }

    /// `∏ w²` over the weighted points.
    pub fn multiplicity(&self) -> u64 {
        self.divisors
            .iter()
            .flat_map(|d| &d.weights)
            .map(|&w| u64::from(w * w))
            .product()
    }

    /// The fixed point of a neighbouring divisor that `target` ultimately lines up with.
    fn resolve(&self, mut target: AlignmentTarget) -> Result<(u32, usize), CurveError> {
        for _ in 0..=self.divisors.iter().map(|d| d.floats.len()).sum::<usize>() {
            match target.point {
                PointRef::Fixed(p) => return Ok((target.divisor, p)),
                PointRef::Float(q) => {
                    let div = self.divisor(target.divisor);
                    target = *div
                        .floats
                        .get(q)
                        .ok_or_else(|| bad(format!("no float {q} in D_{}", target.divisor)))?;
                }
            }
        }
        Err(bad("alignment chain has a cycle".into()))
    }

    pub fn validate(&self) -> Result<(), CurveError> {
        let d = self.degree;
        if self.divisors.len() != d as usize {
            return Err(bad(format!(
                "{} divisors for degree {d}",
                self.divisors.len()
            )));
        }
        let k_of = |i: u32| {
            self.tuple
                .iter()
                .find(|(j, _)| *j == i)
                .map_or(0, |(_, k)| *k)
        };
        if self.tuple.iter().map(|(_, k)| k).sum::<u32>() != self.delta {
            return Err(bad("node counts do not sum to delta".into()));
        }
        let weighted = self
            .divisors
            .iter()
            .flat_map(|x| &x.weights)
            .filter(|&&w| w > 1)
            .count();
        if weighted > self.delta as usize {
            return Err(bad(format!("{weighted} weighted points exceed delta")));
        }
        for div in &self.divisors {
            let i = div.degree;
            let k = k_of(i);
            if div.weights.len() as u32 != i - k {
                return Err(bad(format!(
                    "D_{i} has {} fixed points, expected {}",
                    div.weights.len(),
                    i - k
                )));
            }
            if div.weights.iter().sum::<u32>() + div.floats.len() as u32 != i {
                return Err(bad(format!("points of D_{i} do not add up to its degree")));
            }
            if div.excess() + div.floats.len() as u32 != k {
                return Err(bad(format!(
                    "D_{i}: weight excess plus floats differs from k={k}"
                )));
            }
            if (i == 1 || i == d) && div.excess() > 0 {
                return Err(bad(format!(
                    "D_{i} is an outer divisor and cannot carry weights"
                )));
            }
            if div.weights.iter().any(|&w| w == 0 || w > self.delta + 1) {
                return Err(bad(format!("D_{i} has a weight outside 1..=delta+1")));
            }
            let mut resolved = Vec::new();
            for t in &div.floats {
                if t.divisor + 1 != i && t.divisor != i + 1 {
                    return Err(bad(format!(
                        "float of D_{i} targets non-neighbour D_{}",
                        t.divisor
                    )));
                }
                if let PointRef::Fixed(p) = t.point {
                    if self.divisor(t.divisor).weights.get(p) != Some(&1) {
                        return Err(bad(format!(
                            "float of D_{i} targets a weighted or missing point"
                        )));
                    }
                }
                let r = self.resolve(*t)?;
                if r.0 == i {
                    return Err(bad(format!(
                        "float of D_{i} resolves back to its own divisor"
                    )));
                }
                resolved.push(r);
            }
            if resolved.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad(format!("floats of D_{i} are not in canonical order")));
            }
        }
        Ok(())
    }
}

fn bad(msg: String) -> CurveError {
    CurveError::InvalidPlan(msg)
}

pub(crate) fn check_args(d: u32, delta: u32) -> Result<(), CurveError> {
    if d == 0 {
        return Err(CurveError::ZeroDegree);
    }
    let max = (d - 1) * d.saturating_sub(2) / 2;
    if delta > max {
        return Err(CurveError::TooManyNodes {
            degree: d,
            delta,
            max,
        });
    }
    Ok(())
}
