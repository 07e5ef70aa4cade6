use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{enumerate_paths, LatticePath, MikhalkinConfig, MikhalkinError};
use crate::exactmath::{
    positive_completion, solve_exact, Infeasibility, LinOutcome, LinSystem, Rational, SignTag,
};
use crate::geometry::{normal_fan, LatticePoint3, LatticePolytope};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Feasible,
    Infeasible,
}

/// Marked point `λ·(1,η,η²) = vertex + α₀ g₀ + α₁ g₁` on the wall dual to a segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub segment: usize,
    pub lambda: Rational,
    pub generators: [LatticePoint3; 2],
    pub alpha: [Rational; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// The vertex of the tropical surface.
    pub vertex: [Rational; 3],
    pub points: Vec<MarkedPoint>,
}

impl Witness {
    /// Re-substitutes every marked point; all coefficients must be positive.
    pub fn check(&self, eta: &Rational) -> bool {
        let u = [Rational::one(), eta.clone(), eta * eta];
        self.points.iter().all(|m| {
            m.alpha.iter().all(Rational::is_positive)
                && (0..3).all(|k| {
                    let g = |i: usize| Rational::from(m.generators[i].coords()[k]);
                    let rhs = &self.vertex[k] + &(&m.alpha[0] * &g(0)) + &m.alpha[1] * &g(1);
                    &m.lambda * &u[k] == rhs
                })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub obstruction: Option<String>,
}

impl FeasibilityReport {
    fn infeasible(why: String) -> Self {
        FeasibilityReport {
            verdict: Verdict::Infeasible,
            witness: None,
            obstruction: Some(why),
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.verdict == Verdict::Feasible
    }
}

/// Decides whether points on the line `λ·(1,η,η²)` at the configured
/// parameters can lie on the walls dual to the marked segments of `path`, for
/// a tropical surface whose line crossings visit exactly the points of `path`.
///
/// The schedule is re-run with its tail scaled up, so an obstruction that only
/// appears for large `λ` is reported as infeasible.
pub fn path_feasible(
    p: &LatticePolytope,
    path: &LatticePath,
    cfg: &MikhalkinConfig,
) -> Result<FeasibilityReport, MikhalkinError> {
    let lattice = p.lattice_points()?;
    cfg.validate(&lattice)?;
    for q in path.points() {
        if lattice.binary_search(q).is_err() {
            return Err(MikhalkinError::InvalidPath(format!(
                "{q} is not a lattice point of the polytope"
            )));
        }
    }
    let fan = normal_fan(p)?;
    let segments: Vec<(LatticePoint3, LatticePoint3)> = path.segments().collect();
    let edges: Vec<Option<&crate::geometry::Edge>> =
        segments.iter().map(|(a, b)| p.edge_through(a, b)).collect();

    let mut walls = Vec::new();
    for i in path.marked_segments() {
        let (a, b) = segments[i];
        let edge = edges[i].ok_or(MikhalkinError::NotAnEdge { from: a, to: b })?;
        let cone = fan
            .edge_cone(&edge.ends.0, &edge.ends.1)
            .expect("every hull edge has a cone");
        walls.push((i, [cone.generators[0], cone.generators[1]]));
    }
    for i in 0..segments.len() {
        for j in i + 1..segments.len() {
            if let (Some(e), Some(f)) = (edges[i], edges[j]) {
                if e == f {
                    return Ok(FeasibilityReport::infeasible(format!(
                        "segments {i} and {j} lie on the same edge {}-{}, so they share one wall",
                        e.ends.0, e.ends.1
                    )));
                }
            }
        }
    }

    let base = attempt(&lattice, path, &walls, cfg, 0)?;
    let witness = match base {
        Ok(w) => w,
        Err(why) => return Ok(FeasibilityReport::infeasible(why)),
    };
    for round in 1..=cfg.escalation_rounds {
        if let Err(why) = attempt(&lattice, path, &walls, cfg, round)? {
            return Ok(FeasibilityReport::infeasible(format!(
                "λ bounded above: solvable at the base schedule but not with the tail scaled by 10^{round} ({why})"
            )));
        }
    }
    Ok(FeasibilityReport {
        verdict: Verdict::Feasible,
        witness: Some(witness),
        obstruction: None,
    })
}

type Wall = (usize, [LatticePoint3; 2]);

/// One schedule. The inner error is the obstruction text.
fn attempt(
    lattice: &[LatticePoint3],
    path: &LatticePath,
    walls: &[Wall],
    cfg: &MikhalkinConfig,
    round: u32,
) -> Result<Result<Witness, String>, MikhalkinError> {
    let m = walls.len();
    let lambdas = cfg.lambdas(m, round);
    let u = cfg.direction();
    // Unknowns: vertex (3), then (α_{j,0}, α_{j,1}) per marked point.
    let n = 3 + 2 * m;
    let mut matrix = Vec::with_capacity(3 * m);
    let mut rhs = Vec::with_capacity(3 * m);
    for (j, (_, gens)) in walls.iter().enumerate() {
        for k in 0..3 {
            let mut row = vec![Rational::zero(); n];
            row[k] = Rational::one();
            row[3 + 2 * j] = Rational::from(gens[0].coords()[k]);
            row[4 + 2 * j] = Rational::from(gens[1].coords()[k]);
            matrix.push(row);
            rhs.push(&lambdas[j] * &u[k]);
        }
    }
    let signs = (0..n)
        .map(|v| {
            if v < 3 {
                SignTag::Free
            } else {
                SignTag::StrictlyPositive
            }
        })
        .collect();
    let sys = LinSystem::new(matrix, rhs, signs)?;
    let describe = |var: usize| {
        let j = (var - 3) / 2;
        format!(
            "coefficient α{} of marked point {j} (segment {})",
            (var - 3) % 2,
            walls[j].0
        )
    };
    let x = match solve_exact(&sys) {
        LinOutcome::Solution { x } => x,
        LinOutcome::Infeasible(Infeasibility::Inconsistent { row }) => {
            return Ok(Err(format!(
                "no surface vertex fits marked point {} (equation {row} inconsistent)",
                row / 3
            )));
        }
        LinOutcome::Infeasible(Infeasibility::SignViolated { var, value }) => {
            return Ok(Err(format!(
                "{} is forced to {value}, not positive",
                describe(var)
            )));
        }
        LinOutcome::UnderDetermined {
            particular,
            null_space,
        } => {
            let positive: Vec<usize> = (3..n).collect();
            match positive_completion(&particular, &null_space, &positive) {
                Some(x) => x,
                None => return Ok(Err("no solution has all wall coefficients positive".into())),
            }
        }
    };
    let vertex = [x[0].clone(), x[1].clone(), x[2].clone()];
    let seen = crossing_sequence(lattice, &vertex, &u);
    if seen != path.points() {
        let shown: Vec<String> = seen.iter().map(ToString::to_string).collect();
        return Ok(Err(format!(
            "the line crosses the regions of {} instead",
            shown.join(" ")
        )));
    }
    let points = walls
        .iter()
        .enumerate()
        .map(|(j, (seg, gens))| MarkedPoint {
            segment: *seg,
            lambda: lambdas[j].clone(),
            generators: *gens,
            alpha: [x[3 + 2 * j].clone(), x[4 + 2 * j].clone()],
        })
        .collect();
    Ok(Ok(Witness { vertex, points }))
}

/// Regions met by `t ↦ t·u` for `t` from -∞ to ∞ when the surface is the
/// corner locus of `max_U ⟨U, x - vertex⟩`, i.e. the upper envelope of lines
/// with slope `⟨U,u⟩` and intercept `-⟨U,vertex⟩`.
fn crossing_sequence(
    lattice: &[LatticePoint3],
    vertex: &[Rational; 3],
    u: &[Rational; 3],
) -> Vec<LatticePoint3> {
    let lines: Vec<(Rational, Rational, LatticePoint3)> = lattice
        .iter()
        .map(|q| (q.dot_rational(u), -q.dot_rational(vertex), *q))
        .collect();
    let mut cur = lines
        .iter()
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)))
        .expect("polytope has lattice points");
    let mut seq = vec![cur.2];
    loop {
        let mut best: Option<(Rational, &(Rational, Rational, LatticePoint3))> = None;
        for l in lines.iter().filter(|l| l.0 > cur.0) {
            let t = (&cur.1 - &l.1) / (&l.0 - &cur.0);
            let better = match &best {
                None => true,
                Some((bt, bl)) => t < *bt || (t == *bt && l.0 > bl.0),
            };
            if better {
                best = Some((t, l));
            }
        }
        match best {
            Some((_, l)) => {
                cur = l;
                seq.push(cur.2);
            }
            None => break,
        }
    }
    seq
}

/// The paths of [`enumerate_paths`] that pass [`path_feasible`], each with its report.
pub fn feasible_path_census(
    p: &LatticePolytope,
    skip: usize,
    cfg: &MikhalkinConfig,
) -> Result<Vec<(LatticePath, FeasibilityReport)>, MikhalkinError> {
    let candidates = enumerate_paths(p, skip)?;
    let reports: Vec<FeasibilityReport> = candidates
        .par_iter()
        .map(|q| path_feasible(p, q, cfg))
        .collect::<Result<_, _>>()?;
    Ok(candidates
        .into_iter()
        .zip(reports)
        .filter(|(_, r)| r.is_feasible())
        .collect())
}
