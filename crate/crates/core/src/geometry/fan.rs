//! Outer normal fan in the max convention.
//!
//! The cone of a vertex `V` is `{w : ⟨w,V⟩ ≥ ⟨w,U⟩ for all U}`, generated by the
//! outer normals of the facets through `V`. The cone of an edge is the common
//! 2-dimensional face of its endpoint cones, generated by the outer normals of
//! the two facets that meet along it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::point::{det3, LatticePoint3};
use super::{GeometryError, LatticePolytope};
use crate::exactmath::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    pub generators: Vec<LatticePoint3>,
}

impl Cone {
    /// Same set of rays, up to positive scaling and order.
    pub fn same_rays(&self, rays: &[LatticePoint3]) -> bool {
        let mut a: Vec<LatticePoint3> = self
            .generators
            .iter()
            .map(LatticePoint3::primitive)
            .collect();
        let mut b: Vec<LatticePoint3> = rays.iter().map(LatticePoint3::primitive).collect();
        a.sort();
        b.sort();
        a.dedup();
        b.dedup();
        a == b
    }

    /// Whether `w` is a nonnegative combination of the generators. Uses
    /// Carathéodory: some linearly independent subset of size ≤ 3 suffices.
    pub fn contains(&self, w: &[Rational; 3]) -> bool {
        if w.iter().all(Rational::is_zero) {
            return true;
        }
        let g = &self.generators;
        let n = g.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let d = det3(&g[a], &g[b], &g[c]);
                    if d == 0 {
                        continue;
                    }
                    // Cramer's rule for w = λa g_a + λb g_b + λc g_c.
                    let dd = Rational::from(d);
                    let m = [g[a], g[b], g[c]];
                    if (0..3).all(|k| !(cramer_det(&m, k, w) / &dd).is_negative()) {
                        return true;
                    }
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if let Some((la, lb)) = solve_pair(&g[a], &g[b], w) {
                    if !la.is_negative() && !lb.is_negative() {
                        return true;
                    }
                }
            }
            if let Some(l) = scalar_multiple(&g[a], w) {
                if !l.is_negative() {
                    return true;
                }
            }
        }
        false
    }
}

/// Determinant of the 3×3 matrix with columns `m`, column `k` replaced by `w`.
fn cramer_det(m: &[LatticePoint3; 3], k: usize, w: &[Rational; 3]) -> Rational {
    let col = |j: usize| -> [Rational; 3] {
        if j == k {
            w.clone()
        } else {
            m[j].coords().map(Rational::from)
        }
    };
    let (c0, c1, c2) = (col(0), col(1), col(2));
    &(&c0[0] * &(&(&c1[1] * &c2[2]) - &(&c1[2] * &c2[1])))
        - &(&c1[0] * &(&(&c0[1] * &c2[2]) - &(&c0[2] * &c2[1])))
        + &c2[0] * &(&(&c0[1] * &c1[2]) - &(&c0[2] * &c1[1]))
}

fn solve_pair(
    a: &LatticePoint3,
    b: &LatticePoint3,
    w: &[Rational; 3],
) -> Option<(Rational, Rational)> {
    let n = a.cross(b);
    if n.is_zero() || !n.dot_rational(w).is_zero() {
        return None;
    }
    // Project onto the plane's coordinates: pick the 2×2 minor with largest normal component.
    let nc = n.coords();
    let drop = (0..3)
        .max_by_key(|&k| nc[k].abs())
        .expect("three coordinates");
    let idx: Vec<usize> = (0..3).filter(|&k| k != drop).collect();
    let (ac, bc) = (a.coords(), b.coords());
    let det = ac[idx[0]] * bc[idx[1]] - ac[idx[1]] * bc[idx[0]];
    let det = Rational::from(det);
    let la = (&w[idx[0]] * &Rational::from(bc[idx[1]]) - &w[idx[1]] * &Rational::from(bc[idx[0]]))
        / &det;
    let lb = (&Rational::from(ac[idx[0]]) * &w[idx[1]] - &Rational::from(ac[idx[1]]) * &w[idx[0]])
        / &det;
    Some((la, lb))
}

fn scalar_multiple(g: &LatticePoint3, w: &[Rational; 3]) -> Option<Rational> {
    let gc = g.coords();
    let k = (0..3).find(|&k| gc[k] != 0)?;
    let l = &w[k] / &Rational::from(gc[k]);
    (0..3)
        .all(|j| w[j] == &l * &Rational::from(gc[j]))
        .then_some(l)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFan {
    pub vertex_cones: BTreeMap<LatticePoint3, Cone>,
    /// Keyed by the edge's endpoints in lexicographic order.
    pub edge_cones: BTreeMap<(LatticePoint3, LatticePoint3), Cone>,
}

impl NormalFan {
    pub fn vertex_cone(&self, v: &LatticePoint3) -> Option<&Cone> {
        self.vertex_cones.get(v)
    }

    /// The cone of the polytope edge through `a` and `b`, in either order.
    pub fn edge_cone(&self, a: &LatticePoint3, b: &LatticePoint3) -> Option<&Cone> {
        let key = if a <= b { (*a, *b) } else { (*b, *a) };
        self.edge_cones.get(&key)
    }
}

pub fn normal_fan(p: &LatticePolytope) -> Result<NormalFan, GeometryError> {
    let hull = p.hull()?;
    let vertex_cones = hull
        .vertices
        .iter()
        .map(|v| {
            let generators = hull
                .facets
                .iter()
                .filter(|f| f.contains(v))
                .map(|f| f.outer_normal())
                .collect();
            (*v, Cone { generators })
        })
        .collect();
    let mut edge_cones = BTreeMap::new();
    for e in &hull.edges {
        let g1 = hull.facets[e.facets.0].outer_normal();
        let g2 = hull.facets[e.facets.1].outer_normal();
        if g1.cross(&g2).is_zero() {
            return Err(GeometryError::Malformed(format!(
                "edge {:?} has parallel facet normals",
                e.ends
            )));
        }
        edge_cones.insert(
            e.ends,
            Cone {
                generators: vec![g1, g2],
            },
        );
    }
    Ok(NormalFan {
        vertex_cones,
        edge_cones,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint3 {
        LatticePoint3::new(x, y, z)
    }

    fn family20(a: i64) -> LatticePolytope {
        LatticePolytope::from_columns(&[
            vec![0, 0, 0, 1, 1, 1],
            vec![1, 1, 2, 0, 1, 1],
            vec![0, 1, 0, a, 0, 1],
        ])
        .unwrap()
    }

    #[test]
    fn tetrahedron_origin_cone() {
        let t = LatticePolytope::dilated_simplex(1).unwrap();
        let fan = normal_fan(&t).unwrap();
        let c = fan.vertex_cone(&p(0, 0, 0)).unwrap();
        assert!(c.same_rays(&[p(-1, 0, 0), p(0, -1, 0), p(0, 0, -1)]));
    }

    #[test]
    fn vertex_cone_of_e_in_family_20() {
        let fan = normal_fan(&family20(4)).unwrap();
        let c = fan.vertex_cone(&p(1, 1, 0)).unwrap();
        assert!(c.same_rays(&[p(1, 0, 0), p(0, 0, -1), p(0, -4, -1), p(1, 1, 0)]));
    }

    #[test]
    fn edge_cone_is_shared_face() {
        let fan = normal_fan(&family20(5)).unwrap();
        for ((a, b), c) in &fan.edge_cones {
            let (ca, cb) = (fan.vertex_cone(a).unwrap(), fan.vertex_cone(b).unwrap());
            for g in &c.generators {
                assert!(ca.generators.contains(g) && cb.generators.contains(g));
            }
        }
    }

    #[test]
    fn contains_handles_faces() {
        let c = Cone {
            generators: vec![p(1, 0, 0), p(0, 1, 0)],
        };
        let w = |x: i64, y: i64, z: i64| [Rational::from(x), Rational::from(y), Rational::from(z)];
        assert!(c.contains(&w(2, 3, 0)));
        assert!(!c.contains(&w(-1, 3, 0)));
        assert!(!c.contains(&w(1, 1, 1)));
        assert!(c.contains(&w(0, 5, 0)));
    }

    proptest! {
        #[test]
        fn vertex_cones_cover_space(a in 4i64..8, wx in -50i64..50, wy in -50i64..50, wz in -50i64..50) {
            prop_assume!(wx != 0 || wy != 0 || wz != 0);
            let poly = family20(a);
            let fan = normal_fan(&poly).unwrap();
            let w = [Rational::from(wx), Rational::from(wy), Rational::from(wz)];
            let values: Vec<(LatticePoint3, Rational)> =
                poly.vertices().unwrap().iter().map(|v| (*v, v.dot_rational(&w))).collect();
            let best = values.iter().map(|(_, x)| x.clone()).max().unwrap();
            let maximizers: Vec<_> = values.iter().filter(|(_, x)| *x == best).map(|(v, _)| *v).collect();
            let hits: Vec<_> = fan.vertex_cones.iter().filter(|(_, c)| c.contains(&w)).map(|(v, _)| *v).collect();
            prop_assert!(!hits.is_empty());
            prop_assert_eq!(&hits, &maximizers);
        }
    }
}
