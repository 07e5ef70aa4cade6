//! Exact Gaussian elimination with per-variable sign tags, plus a strict
//! positivity search over the solution space of an underdetermined system.

use serde::{Deserialize, Serialize};

use super::{ExactError, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignTag {
    Free,
    StrictlyPositive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinSystem {
    pub matrix: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub signs: Vec<SignTag>,
}

impl LinSystem {
    pub fn new(
        matrix: Vec<Vec<Rational>>,
        rhs: Vec<Rational>,
        signs: Vec<SignTag>,
    ) -> Result<Self, ExactError> {
        if matrix.len() != rhs.len() {
            return Err(ExactError::Dimension(format!(
                "{} rows but {} right-hand sides",
                matrix.len(),
                rhs.len()
            )));
        }
        if let Some(r) = matrix.iter().position(|row| row.len() != signs.len()) {
            return Err(ExactError::Dimension(format!(
                "row {r} has {} entries, expected {}",
                matrix[r].len(),
                signs.len()
            )));
        }
        Ok(LinSystem { matrix, rhs, signs })
    }

    pub fn cols(&self) -> usize {
        self.signs.len()
    }

    /// `A x = b` exactly.
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.cols()
            && self.matrix.iter().zip(&self.rhs).all(|(row, b)| {
                let lhs: Rational = row.iter().zip(x).map(|(a, v)| a * v).sum();
                &lhs == b
            })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Infeasibility {
    /// Row reduces to `0 = c` with `c ≠ 0`.
    Inconsistent { row: usize },
    /// The unique solution has a non-positive value in a strictly positive slot.
    SignViolated { var: usize, value: Rational },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum LinOutcome {
    Solution {
        x: Vec<Rational>,
    },
    Infeasible(Infeasibility),
    /// Every solution is `particular + Σ t_k null_space[k]`. Sign tags are not
    /// checked here; see [`positive_completion`].
    UnderDetermined {
        particular: Vec<Rational>,
        null_space: Vec<Vec<Rational>>,
    },
}

/// Reduced row echelon form of `[A | b]`, returning pivot columns.
fn rref(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip().expect("pivot is nonzero");
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (d, s) in row.iter_mut().zip(&pivot_row) {
                    *d = &*d - &(&f * s);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn solve_exact(sys: &LinSystem) -> LinOutcome {
    let n = sys.cols();
    let mut m: Vec<Vec<Rational>> = sys
        .matrix
        .iter()
        .zip(&sys.rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, n);
    // Rows past the pivots are all zero on the left; a nonzero right side is a contradiction.
    if m.iter().skip(pivots.len()).any(|row| !row[n].is_zero()) {
        return LinOutcome::Infeasible(Infeasibility::Inconsistent {
            row: first_inconsistent_row(sys),
        });
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][n].clone();
    }
    if pivots.len() == n {
        if let Some(var) =
            (0..n).find(|&v| sys.signs[v] == SignTag::StrictlyPositive && !x[v].is_positive())
        {
            let value = x[var].clone();
            return LinOutcome::Infeasible(Infeasibility::SignViolated { var, value });
        }
        return LinOutcome::Solution { x };
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let null_space = free
        .iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); n];
            v[fc] = Rational::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -&m[i][fc];
            }
            v
        })
        .collect();
    LinOutcome::UnderDetermined {
        particular: x,
        null_space,
    }
}

/// Row swaps lose the original index; recover the first row whose addition to
/// the preceding rows makes the system inconsistent.
fn first_inconsistent_row(sys: &LinSystem) -> usize {
    let n = sys.cols();
    for k in 1..=sys.matrix.len() {
        let mut sub: Vec<Vec<Rational>> = sys.matrix[..k]
            .iter()
            .zip(&sys.rhs[..k])
            .map(|(row, b)| {
                let mut r = row.clone();
                r.push(b.clone());
                r
            })
            .collect();
        let piv = rref(&mut sub, n);
        if sub.iter().skip(piv.len()).any(|row| !row[n].is_zero()) {
            return k - 1;
        }
    }
    sys.matrix.len().saturating_sub(1)
}

/// Finds `t` with `base[v] + Σ_k t_k dirs[k][v] > 0` for every `v` in `positive`,
/// by exact Fourier–Motzkin elimination. Returns the resulting point.
pub fn positive_completion(
    base: &[Rational],
    dirs: &[Vec<Rational>],
    positive: &[usize],
) -> Option<Vec<Rational>> {
    // Constraint: c + Σ a_k t_k > 0, stored as (a, c).
    let constraints: Vec<(Vec<Rational>, Rational)> = positive
        .iter()
        .map(|&v| (dirs.iter().map(|d| d[v].clone()).collect(), base[v].clone()))
        .collect();
    let t = fm_solve(constraints, dirs.len())?;
    let mut x = base.to_vec();
    for (tk, d) in t.iter().zip(dirs) {
        for (xv, dv) in x.iter_mut().zip(d) {
            *xv = &*xv + &(tk * dv);
        }
    }
    Some(x)
}

type Strict = (Vec<Rational>, Rational);

fn fm_solve(cons: Vec<Strict>, k: usize) -> Option<Vec<Rational>> {
    if k == 0 {
        return cons.iter().all(|(_, c)| c.is_positive()).then(Vec::new);
    }
    let last = k - 1;
    let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for (a, c) in cons {
        let s = a[last].clone();
        if s.is_zero() {
            rest.push((a[..last].to_vec(), c));
        } else if s.is_positive() {
            lower.push((a, c, s));
        } else {
            upper.push((a, c, s));
        }
    }
    // Dividing by the t_last coefficient: t_last > -(c + a'·t)/s for s>0, and
    // t_last < (c + a'·t)/|s| for s<0. Each (lower, upper) pair yields one constraint.
    let mut reduced = rest;
    for (al, cl, sl) in &lower {
        for (au, cu, su) in &upper {
            let su_abs = -su;
            let a: Vec<Rational> = (0..last).map(|j| &al[j] / sl + &au[j] / &su_abs).collect();
            let c = cl / sl + cu / &su_abs;
            reduced.push((a, c));
        }
    }
    let mut t = fm_solve(reduced, last)?;
    let eval = |a: &[Rational], c: &Rational, t: &[Rational]| -> Rational {
        c + &a[..last]
            .iter()
            .zip(t)
            .map(|(x, y)| x * y)
            .sum::<Rational>()
    };
    let lo = lower.iter().map(|(a, c, s)| -(eval(a, c, &t) / s)).max();
    let hi = upper.iter().map(|(a, c, s)| eval(a, c, &t) / (-s)).min();
    let v = match (lo, hi) {
        (Some(l), Some(h)) => {
            if l >= h {
                return None;
            }
            (l + h) / Rational::from(2)
        }
        (Some(l), None) => l + Rational::one(),
        (None, Some(h)) => h - Rational::one(),
        (None, None) => Rational::zero(),
    };
    t.push(v);
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn trivial_scalar_cases() {
        let sys = LinSystem::new(
            vec![vec![r(1)]],
            vec![r(3)],
            vec![SignTag::StrictlyPositive],
        )
        .unwrap();
        assert_eq!(solve_exact(&sys), LinOutcome::Solution { x: vec![r(3)] });
        let sys = LinSystem::new(
            vec![vec![r(1)]],
            vec![r(-1)],
            vec![SignTag::StrictlyPositive],
        )
        .unwrap();
        assert_eq!(
            solve_exact(&sys),
            LinOutcome::Infeasible(Infeasibility::SignViolated {
                var: 0,
                value: r(-1)
            })
        );
    }

    #[test]
    fn inconsistent_row_is_reported() {
        let sys = LinSystem::new(
            vec![vec![r(1), r(1)], vec![r(1), r(-1)], vec![r(2), r(2)]],
            vec![r(2), r(0), r(5)],
            vec![SignTag::Free; 2],
        )
        .unwrap();
        assert_eq!(
            solve_exact(&sys),
            LinOutcome::Infeasible(Infeasibility::Inconsistent { row: 2 })
        );
    }

    #[test]
    fn underdetermined_exposes_null_space() {
        let sys = LinSystem::new(
            vec![vec![r(1), r(-1)]],
            vec![r(-1)],
            vec![SignTag::StrictlyPositive; 2],
        )
        .unwrap();
        let LinOutcome::UnderDetermined {
            particular,
            null_space,
        } = solve_exact(&sys)
        else {
            panic!("expected a parametric solution");
        };
        assert_eq!(null_space.len(), 1);
        let x = positive_completion(&particular, &null_space, &[0, 1]).unwrap();
        assert!(sys.satisfied_by(&x));
        assert!(x.iter().all(Rational::is_positive));
    }

    #[test]
    fn positive_completion_detects_emptiness() {
        // x0 = -t, x1 = t - 1: x0 > 0 needs t < 0, x1 > 0 needs t > 1
        let base = vec![r(0), r(-1)];
        let dirs = vec![vec![r(-1), r(1)]];
        assert!(positive_completion(&base, &dirs, &[0, 1]).is_none());
        assert!(positive_completion(&base, &dirs, &[0]).is_some());
    }

    #[test]
    fn dimension_mismatch() {
        assert!(LinSystem::new(vec![vec![r(1)]], vec![], vec![SignTag::Free]).is_err());
        assert!(LinSystem::new(vec![vec![r(1), r(2)]], vec![r(0)], vec![SignTag::Free]).is_err());
    }

    proptest! {
        #[test]
        fn nonsingular_systems_are_solved_exactly(
            entries in prop::collection::vec(-9i64..10, 9),
            rhs in prop::collection::vec(-9i64..10, 3),
        ) {
            let a: Vec<Vec<Rational>> = entries.chunks(3).map(|c| c.iter().map(|&v| r(v)).collect()).collect();
            let det = &(&a[0][0] * &(&(&a[1][1] * &a[2][2]) - &(&a[1][2] * &a[2][1])))
                - &(&a[0][1] * &(&(&a[1][0] * &a[2][2]) - &(&a[1][2] * &a[2][0])))
                + &(&a[0][2] * &(&(&a[1][0] * &a[2][1]) - &(&a[1][1] * &a[2][0])));
            prop_assume!(!det.is_zero());
            let sys = LinSystem::new(a, rhs.iter().map(|&v| r(v)).collect(), vec![SignTag::Free; 3]).unwrap();
            match solve_exact(&sys) {
                LinOutcome::Solution { x } => prop_assert!(sys.satisfied_by(&x)),
                other => prop_assert!(false, "unexpected {:?}", other),
            }
        }

        #[test]
        fn completion_points_are_strictly_positive(
            base in prop::collection::vec(-5i64..6, 4),
            d1 in prop::collection::vec(-3i64..4, 4),
            d2 in prop::collection::vec(-3i64..4, 4),
        ) {
            let base: Vec<Rational> = base.into_iter().map(r).collect();
            let dirs = vec![d1.into_iter().map(r).collect::<Vec<_>>(), d2.into_iter().map(r).collect()];
            if let Some(x) = positive_completion(&base, &dirs, &[0, 1, 2, 3]) {
                prop_assert!(x.iter().all(Rational::is_positive));
            }
        }
    }
}
