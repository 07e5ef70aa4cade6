//! Severi degrees from the Caporaso–Harris recursion on tangency sequences.
//!
//! `N(d, δ, α, β)` counts δ-nodal degree-d curves through the right number of
//! general points with tangency `α` at fixed points of a line and `β` at
//! unassigned points, where `I(α) + I(β) = d` and `I(v) = Σ k v_k`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};

type Key = (u32, u32, Vec<u32>, Vec<u32>);

fn weighted_len(v: &[u32]) -> u32 {
    v.iter().enumerate().map(|(k, x)| (k as u32 + 1) * x).sum()
}

struct Recursion {
    memo: HashMap<Key, BigUint>,
}

impl Recursion {
    fn n(&mut self, d: u32, delta: i64, a: &[u32], b: &[u32]) -> BigUint {
        if delta < 0 || weighted_len(a) + weighted_len(b) != d {
            return BigUint::zero();
        }
        if d == 0 {
            return if delta == 0 {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        }
        let key = (d, delta as u32, a.to_vec(), b.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let len = a.len();
        let mut total = BigUint::zero();
        // The curve acquires a fixed tangency point of order k.
        for k in 0..len {
            if b[k] > 0 {
                let (mut a2, mut b2) = (a.to_vec(), b.to_vec());
                a2[k] += 1;
                b2[k] -= 1;
                total += self.n(d, delta, &a2, &b2) * BigUint::from(k as u32 + 1);
            }
        }
        // The curve splits off the line.
        for ap in sub_vectors(a) {
            let ia = weighted_len(&ap);
            if ia > d - 1 {
                continue;
            }
            for bp in super_vectors(b, d - 1 - ia) {
                if ia + weighted_len(&bp) != d - 1 {
                    continue;
                }
                let gained: u32 = bp.iter().zip(b).map(|(x, y)| x - y).sum();
                let dp = delta - i64::from(d - 1) + i64::from(gained);
                if dp < 0 {
                    continue;
                }
                let mut c = BigUint::one();
                for k in 0..len {
                    let diff = bp[k] - b[k];
                    c *= BigUint::from(k as u32 + 1).pow(diff);
                    c *= binomial(BigUint::from(a[k]), BigUint::from(ap[k]));
                    c *= binomial(BigUint::from(bp[k]), BigUint::from(b[k]));
                }
                total += c * self.n(d - 1, dp, &ap, &bp);
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// All `v' ≤ v` componentwise.
fn sub_vectors(v: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &x in v {
        out = out
            .into_iter()
            .flat_map(|p| (0..=x).map(move |y| [p.clone(), vec![y]].concat()))
            .collect();
    }
    out
}

/// All `v' ≥ v` componentwise with `I(v') ≤ budget`.
fn super_vectors(v: &[u32], budget: u32) -> Vec<Vec<u32>> {
    fn rec(
        v: &[u32],
        k: usize,
        used: u32,
        budget: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if k == v.len() {
            out.push(cur.clone());
            return;
        }
        let w = k as u32 + 1;
        let mut x = v[k];
        while used + w * x <= budget {
            cur.push(x);
            rec(v, k + 1, used + w * x, budget, cur, out);
            cur.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    rec(v, 0, 0, budget, &mut Vec::new(), &mut out);
    out
}

/// The Severi degree `N^{d,δ}`: δ-nodal degree-d curves, possibly reducible,
/// through `d(d+3)/2 - δ` general points.
pub fn caporaso_harris(d: u32, delta: u32) -> BigUint {
    let mut r = Recursion {
        memo: HashMap::new(),
    };
    let len = d.max(1) as usize;
    let mut b = vec![0u32; len];
    b[0] = d;
    r.n(d, i64::from(delta), &vec![0; len], &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(d: u32, delta: u32) -> u64 {
        caporaso_harris(d, delta).try_into().unwrap()
    }

    #[test]
    fn classical_values() {
        assert_eq!(ch(4, 2), 225);
        assert_eq!(ch(3, 1), 12);
        assert_eq!(ch(5, 2), 882);
        for d in 1..=8 {
            assert_eq!(ch(d, 0), 1);
        }
        // two lines through four points: three pairings
        assert_eq!(ch(2, 1), 3);
    }

    #[test]
    fn node_polynomials() {
        for d in 3..=9u64 {
            assert_eq!(ch(d as u32, 1), 3 * (d - 1) * (d - 1));
        }
        for d in 4..=9u64 {
            // (3/2)(d-1)(d-2)(3d²-3d-11)
            assert_eq!(
                2 * ch(d as u32, 2),
                3 * (d - 1) * (d - 2) * (3 * d * d - 3 * d - 11)
            );
        }
    }
}
