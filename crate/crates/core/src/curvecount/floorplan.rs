//! Floor plans of δ-nodal plane curves.
//!
//! A nodal floor `i` with `k` node germs keeps `i - k` fixed points. Its `k`
//! germs are split between weight excess on fixed points (interior floors only)
//! and floating points. A float lines up with a weight-1 point of `D_{i±1}`,
//! possibly through a chain of other floats. The chain must end at a fixed
//! point outside `D_i`, and floats of one divisor must end at distinct points.
//! Floats of different divisors may end at the same point.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{check_args, AlignmentTarget, CurveError, CurveFloorPlan, NodalDivisor, PointRef};

/// Total count with the contribution of each index tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveCount {
    pub degree: u32,
    pub delta: u32,
    pub total: u64,
    pub breakdown: Vec<TupleCount>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TupleCount {
    /// `[[i, k], …]` with `i` decreasing.
    pub tuple: Vec<[u32; 2]>,
    pub count: u64,
}

/// Every `(i, k_i)` choice with `1 ≤ k_i ≤ i` and `Σ k_i = δ`, floors decreasing.
fn index_tuples(d: u32, delta: u32) -> Vec<Vec<(u32, u32)>> {
    fn rec(i: u32, left: u32, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if i == 0 {
            return;
        }
        for k in (1..=left.min(i)).rev() {
            cur.push((i, k));
            rec(i - 1, left - k, cur, out);
            cur.pop();
        }
        rec(i - 1, left, cur, out);
    }
    let mut out = Vec::new();
    rec(d, delta, &mut Vec::new(), &mut out);
    out
}

/// Weight vectors on `n` fixed points with total excess at most `budget`.
fn weight_vectors(n: usize, budget: u32, allow: bool) -> Vec<Vec<u32>> {
    fn rec(n: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for w in 1..=budget + 1 {
            cur.push(w);
            rec(n, budget - (w - 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, if allow { budget } else { 0 }, &mut Vec::new(), &mut out);
    out
}

fn skeleton(d: u32, delta: u32, tuple: &[(u32, u32)]) -> CurveFloorPlan {
    let divisors = (1..=d)
        .rev()
        .map(|i| {
            let k = tuple.iter().find(|(j, _)| *j == i).map_or(0, |(_, k)| *k);
            NodalDivisor {
                degree: i,
                weights: vec![1; (i - k) as usize],
                floats: Vec::new(),
            }
        })
        .collect();
    CurveFloorPlan {
        degree: d,
        delta,
        tuple: tuple.to_vec(),
        divisors,
    }
}

/// Calls `visit` on every floor plan with the given index tuple.
fn plans_for_tuple(
    d: u32,
    delta: u32,
    tuple: &[(u32, u32)],
    visit: &mut dyn FnMut(&CurveFloorPlan),
) {
    let base = skeleton(d, delta, tuple);
    let choices: Vec<Vec<Vec<u32>>> = tuple
        .iter()
        .map(|&(i, k)| weight_vectors((i - k) as usize, k, i != 1 && i != d))
        .collect();
    let mut pick = vec![0usize; tuple.len()];
    loop {
        let mut plan = base.clone();
        let mut float_counts = BTreeMap::new();
        for (t, &(i, k)) in tuple.iter().enumerate() {
            let div = &mut plan.divisors[(d - i) as usize];
            div.weights = choices[t][pick[t]].clone();
            float_counts.insert(i, k - div.excess());
        }
        let weighted = plan
            .divisors
            .iter()
            .flat_map(|x| &x.weights)
            .filter(|&&w| w > 1)
            .count();
        if weighted <= delta as usize {
            assign_floats(&mut plan, &float_counts, visit);
        }
        // advance the mixed-radix counter over weight choices
        let mut t = 0;
        while t < pick.len() {
            pick[t] += 1;
            if pick[t] < choices[t].len() {
                break;
            }
            pick[t] = 0;
            t += 1;
        }
        if t == pick.len() {
            break;
        }
    }
}

fn assign_floats(
    plan: &mut CurveFloorPlan,
    counts: &BTreeMap<u32, u32>,
    visit: &mut dyn FnMut(&CurveFloorPlan),
) {
    let d = plan.degree;
    // Floats in increasing divisor order, then by index.
    let slots: Vec<(u32, usize)> = counts
        .iter()
        .flat_map(|(&i, &n)| (0..n as usize).map(move |j| (i, j)))
        .collect();
    let options: Vec<Vec<AlignmentTarget>> = slots
        .iter()
        .map(|&(i, _)| {
            let mut o = Vec::new();
            for n in [i - 1, i + 1] {
                if n == 0 || n > d {
                    continue;
                }
                let div = &plan.divisors[(d - n) as usize];
                for (p, &w) in div.weights.iter().enumerate() {
                    if w == 1 {
                        o.push(AlignmentTarget {
                            divisor: n,
                            point: PointRef::Fixed(p),
                        });
                    }
                }
                for q in 0..counts.get(&n).copied().unwrap_or(0) as usize {
                    o.push(AlignmentTarget {
                        divisor: n,
                        point: PointRef::Float(q),
                    });
                }
            }
            o
        })
        .collect();
    for (&i, &n) in counts {
        plan.divisors[(d - i) as usize].floats = vec![
            AlignmentTarget {
                divisor: 0,
                point: PointRef::Fixed(0)
            };
            n as usize
        ];
    }
    let mut pick = vec![0usize; slots.len()];
    if options.iter().any(Vec::is_empty) {
        return;
    }
    loop {
        for (s, &(i, j)) in slots.iter().enumerate() {
            plan.divisors[(d - i) as usize].floats[j] = options[s][pick[s]];
        }
        if plan.validate().is_ok() {
            visit(plan);
        }
        let mut s = 0;
        while s < pick.len() {
            pick[s] += 1;
            if pick[s] < options[s].len() {
                break;
            }
            pick[s] = 0;
            s += 1;
        }
        if s == pick.len() {
            break;
        }
    }
}

/// Visits every floor plan of degree `d` with `δ` nodes.
pub fn for_each_floor_plan(
    d: u32,
    delta: u32,
    mut visit: impl FnMut(&CurveFloorPlan),
) -> Result<(), CurveError> {
    check_args(d, delta)?;
    for tuple in index_tuples(d, delta) {
        plans_for_tuple(d, delta, &tuple, &mut visit);
    }
    Ok(())
}

pub fn enumerate_floor_plans(d: u32, delta: u32) -> Result<Vec<CurveFloorPlan>, CurveError> {
    let mut out = Vec::new();
    for_each_floor_plan(d, delta, |p| out.push(p.clone()))?;
    Ok(out)
}

/// Weighted number of floor plans, split by index tuple. Tuples run in parallel.
pub fn count_curves(d: u32, delta: u32) -> Result<CurveCount, CurveError> {
    check_args(d, delta)?;
    let breakdown: Vec<TupleCount> = index_tuples(d, delta)
        .into_par_iter()
        .map(|tuple| {
            let mut count = 0u64;
            plans_for_tuple(d, delta, &tuple, &mut |p| count += p.multiplicity());
            TupleCount {
                tuple: tuple.iter().map(|&(i, k)| [i, k]).collect(),
                count,
            }
        })
        .filter(|t| t.count > 0)
        .collect();
    let total = breakdown.iter().map(|t| t.count).sum();
    Ok(CurveCount {
        degree: d,
        delta,
        total,
        breakdown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn entry(c: &CurveCount, tuple: &[[u32; 2]]) -> u64 {
        c.breakdown
            .iter()
            .find(|t| t.tuple == tuple)
            .map_or(0, |t| t.count)
    }

    #[test]
    fn quartic_binodal_table() {
        let c = count_curves(4, 2).unwrap();
        assert_eq!(c.total, 225);
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
        for (t, n) in expect {
            assert_eq!(entry(&c, t), n, "{t:?}");
        }
        assert_eq!(c.breakdown.len(), 9);
    }

    #[test]
    fn floor_three_with_two_nodes() {
        let plans: Vec<_> = enumerate_floor_plans(4, 2)
            .unwrap()
            .into_iter()
            .filter(|p| p.tuple == [(3, 2)])
            .collect();
        assert_eq!(plans.len(), 22);
        let by_mult = |m: u64| plans.iter().filter(|p| p.multiplicity() == m).count();
        assert_eq!((by_mult(9), by_mult(4), by_mult(1)), (1, 6, 15));
    }

    #[test]
    fn no_nodes_and_one_node() {
        for d in 1..=6 {
            assert_eq!(count_curves(d, 0).unwrap().total, 1);
        }
        for d in 3..=8u64 {
            assert_eq!(
                count_curves(d as u32, 1).unwrap().total,
                3 * (d - 1) * (d - 1)
            );
        }
    }

    #[test]
    fn plans_are_valid_and_distinct() {
        let plans = enumerate_floor_plans(5, 2).unwrap();
        let set: BTreeSet<String> = plans
            .iter()
            .map(|p| serde_json::to_string(p).unwrap())
            .collect();
        assert_eq!(set.len(), plans.len());
        for p in &plans {
            p.validate().unwrap();
        }
    }

    #[test]
    fn argument_checks() {
        assert!(matches!(count_curves(0, 0), Err(CurveError::ZeroDegree)));
        assert!(matches!(
            count_curves(3, 2),
            Err(CurveError::TooManyNodes { .. })
        ));
    }
}
