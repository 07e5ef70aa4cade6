use std::collections::BTreeSet;

use super::point::LatticePoint3;
use super::{GeometryError, LatticePolytope};

/// Width of `p` along the integer functional `f`.
pub fn width_along(p: &LatticePolytope, f: &LatticePoint3) -> i64 {
    let vals = p.generators().iter().map(|v| f.dot(v));
    let (lo, hi) = vals.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));
    hi - lo
}

/// Minimum of `max f - min f` over nonzero integer functionals `f`, together
/// with a minimizing primitive functional. Polytopes of dimension below 3 have
/// width 0.
///
/// Start from the best coordinate functional or facet normal, of width `w₀`.
/// For independent differences `u₁, u₂, u₃` of generators, any `f` of width at
/// most `w₀` has `f·u_k ∈ [-w₀, w₀]`, so `f = M⁻¹t` for an integer vector `t`
/// in that cube. Enumerating the integral ones is exhaustive.
pub fn lattice_width(p: &LatticePolytope) -> Result<(i64, LatticePoint3), GeometryError> {
    if p.dim() < 3 {
        let f = degenerate_functional(p);
        return Ok((0, f));
    }
    let hull = p.hull()?;
    let axes = [
        LatticePoint3::new(1, 0, 0),
        LatticePoint3::new(0, 1, 0),
        LatticePoint3::new(0, 0, 1),
    ];
    let mut best = axes
        .into_iter()
        .chain(hull.facets.iter().map(|f| f.inner_normal.primitive()))
        .map(|f| (width_along(p, &f), f))
        .min()
        .expect("three axes");
    let gens = p.generators();
    let diffs: Vec<LatticePoint3> = gens.iter().skip(1).map(|q| *q - gens[0]).collect();
    let (m, det) = independent_triple(&diffs).ok_or(GeometryError::Degenerate { dim: p.dim() })?;
    let adj = adjugate(&m);
    let w0 = best.0;
    let mut seen = BTreeSet::new();
    for t0 in -w0..=w0 {
        for t1 in -w0..=w0 {
            for t2 in -w0..=w0 {
                let t = [t0, t1, t2];
                let num: Vec<i64> = (0..3)
                    .map(|r| (0..3).map(|c| adj[r][c] * t[c]).sum())
                    .collect();
                if num.iter().any(|x| x % det != 0) {
                    continue;
                }
                let f = LatticePoint3::new(num[0] / det, num[1] / det, num[2] / det);
                if f.is_zero() || !seen.insert(f.primitive()) {
                    continue;
                }
                let f = f.primitive();
                best = best.min((width_along(p, &f), f));
            }
        }
    }
    Ok(best)
}

/// Rows `u₁, u₂, u₃` with nonzero determinant, preferring small `|det|`.
fn independent_triple(diffs: &[LatticePoint3]) -> Option<([[i64; 3]; 3], i64)> {
    let mut best: Option<([[i64; 3]; 3], i64)> = None;
    for (i, a) in diffs.iter().enumerate() {
        for (j, b) in diffs.iter().enumerate().skip(i + 1) {
            for c in diffs.iter().skip(j + 1) {
                let det = super::det3(a, b, c);
                if det != 0 && best.as_ref().is_none_or(|(_, d)| det.abs() < d.abs()) {
                    best = Some(([a.coords(), b.coords(), c.coords()], det));
                }
            }
        }
    }
    best
}

/// `adj(M)` with `M · adj(M) = det(M) · I`, so `M⁻¹ t = adj(M) t / det`.
fn adjugate(m: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            let (r1, r2) = ((c + 1) % 3, (c + 2) % 3);
            let (c1, c2) = ((r + 1) % 3, (r + 2) % 3);
            m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]
        })
    })
}

/// A nonzero functional constant on a lower-dimensional polytope.
fn degenerate_functional(p: &LatticePolytope) -> LatticePoint3 {
    let gens = p.generators();
    let o = gens[0];
    let diffs: Vec<LatticePoint3> = gens
        .iter()
        .map(|q| *q - o)
        .filter(|v| !v.is_zero())
        .collect();
    let axes = [
        LatticePoint3::new(1, 0, 0),
        LatticePoint3::new(0, 1, 0),
        LatticePoint3::new(0, 0, 1),
    ];
    let Some(u) = diffs.first() else {
        return axes[0];
    };
    if let Some(v) = diffs.iter().find(|v| !u.cross(v).is_zero()) {
        return u.cross(v).primitive();
    }
    axes.iter()
        .map(|e| u.cross(e))
        .find(|n| !n.is_zero())
        .expect("u is nonzero")
        .primitive()
}
