//! Lattice polytopes in 3-space with hull structure from exhaustive facet search.

use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::point::{det3, LatticePoint3};
use super::GeometryError;

/// `⟨inner_normal, x⟩ ≥ offset` on the polytope, with equality on `vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub inner_normal: LatticePoint3,
    pub offset: i64,
    pub vertices: Vec<LatticePoint3>,
}

impl Facet {
    pub fn outer_normal(&self) -> LatticePoint3 {
        -self.inner_normal
    }

    pub fn contains(&self, p: &LatticePoint3) -> bool {
        self.inner_normal.dot(p) == self.offset
    }
}

/// A polytope edge with endpoints in lexicographic order and the indices of
/// the two facets that meet along it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub ends: (LatticePoint3, LatticePoint3),
    pub facets: (usize, usize),
}

impl Edge {
    /// Whether `p` lies on the closed segment.
    pub fn contains(&self, p: &LatticePoint3) -> bool {
        let (a, b) = self.ends;
        let d = b - a;
        let q = *p - a;
        if !d.cross(&q).is_zero() {
            return false;
        }
        let t = d.dot(&q);
        t >= 0 && t <= d.dot(&d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hull {
    pub vertices: Vec<LatticePoint3>,
    pub edges: Vec<Edge>,
    pub facets: Vec<Facet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    generators: Vec<LatticePoint3>,
    dim: usize,
    hull: Option<Hull>,
}

fn affine_dim(points: &[LatticePoint3]) -> usize {
    let Some(&o) = points.first() else { return 0 };
    let diffs: Vec<LatticePoint3> = points
        .iter()
        .map(|p| *p - o)
        .filter(|v| !v.is_zero())
        .collect();
    let Some(&u) = diffs.first() else { return 0 };
    let Some(v) = diffs.iter().find(|v| !u.cross(v).is_zero()) else {
        return 1;
    };
    let n = u.cross(v);
    if diffs.iter().any(|w| n.dot(w) != 0) {
        3
    } else {
        2
    }
}

fn build_hull(points: &[LatticePoint3]) -> Hull {
    let mut facets: Vec<Facet> = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate().skip(i + 1) {
            for r in points.iter().skip(j + 1) {
                let n = (*q - *p).cross(&(*r - *p));
                if n.is_zero() {
                    continue;
                }
                let n = n.primitive();
                let m = n.dot(p);
                let (mut lo, mut hi) = (true, true);
                for u in points {
                    let v = n.dot(u);
                    lo &= v >= m;
                    hi &= v <= m;
                }
                let (normal, offset) = match (lo, hi) {
                    (true, _) => (n, m),
                    (_, true) => (-n, -m),
                    _ => continue,
                };
                if seen.insert(normal) {
                    facets.push(Facet {
                        inner_normal: normal,
                        offset,
                        vertices: Vec::new(),
                    });
                }
            }
        }
    }
    facets.sort_by_key(|f| f.inner_normal);

    let vertices: Vec<LatticePoint3> = points
        .iter()
        .copied()
        .filter(|p| {
            let ns: Vec<LatticePoint3> = facets
                .iter()
                .filter(|f| f.contains(p))
                .map(|f| f.inner_normal)
                .collect();
            (0..ns.len()).any(|a| {
                (a + 1..ns.len())
                    .any(|b| (b + 1..ns.len()).any(|c| det3(&ns[a], &ns[b], &ns[c]) != 0))
            })
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for f in &mut facets {
        f.vertices = vertices.iter().copied().filter(|v| f.contains(v)).collect();
    }

    let mut edges = Vec::new();
    for a in 0..facets.len() {
        for b in a + 1..facets.len() {
            let common: Vec<LatticePoint3> = facets[a]
                .vertices
                .iter()
                .copied()
                .filter(|v| facets[b].contains(v))
                .collect();
            if common.len() >= 2 {
                // Two distinct facet planes meet in a line, so `common` is collinear
                // and lexicographic order runs along it.
                let lo = *common.iter().min().expect("nonempty");
                let hi = *common.iter().max().expect("nonempty");
                edges.push(Edge {
                    ends: (lo, hi),
                    facets: (a, b),
                });
            }
        }
    }
    edges.sort_by_key(|e| e.ends);
    Hull {
        vertices,
        edges,
        facets,
    }
}

impl LatticePolytope {
    /// Convex hull of the given points. Duplicates are removed.
    pub fn new(points: impl IntoIterator<Item = LatticePoint3>) -> Result<Self, GeometryError> {
        let generators: Vec<LatticePoint3> = points
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if generators.is_empty() {
            return Err(GeometryError::Empty);
        }
        let dim = affine_dim(&generators);
        let hull = (dim == 3).then(|| build_hull(&generators));
        Ok(LatticePolytope {
            generators,
            dim,
            hull,
        })
    }

    /// Columns of a 3×n integer matrix.
    pub fn from_columns(rows: &[Vec<i64>; 3]) -> Result<Self, GeometryError> {
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(GeometryError::Malformed(
                "matrix rows differ in length".into(),
            ));
        }
        Self::new((0..n).map(|j| LatticePoint3::new(rows[0][j], rows[1][j], rows[2][j])))
    }

    /// `d·Δ₃ = conv{0, d e₁, d e₂, d e₃}`.
    pub fn dilated_simplex(d: i64) -> Result<Self, GeometryError> {
        Self::new([
            LatticePoint3::new(0, 0, 0),
            LatticePoint3::new(d, 0, 0),
            LatticePoint3::new(0, d, 0),
            LatticePoint3::new(0, 0, d),
        ])
    }

    pub fn generators(&self) -> &[LatticePoint3] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hull(&self) -> Result<&Hull, GeometryError> {
        self.hull
            .as_ref()
            .ok_or(GeometryError::Degenerate { dim: self.dim })
    }

    pub fn vertices(&self) -> Result<&[LatticePoint3], GeometryError> {
        Ok(&self.hull()?.vertices)
    }

    pub fn is_vertex(&self, p: &LatticePoint3) -> bool {
        self.hull
            .as_ref()
            .is_some_and(|h| h.vertices.binary_search(p).is_ok())
    }

    /// The edge whose closed segment contains both points, if any.
    pub fn edge_through(&self, a: &LatticePoint3, b: &LatticePoint3) -> Option<&Edge> {
        let h = self.hull.as_ref()?;
        h.edges.iter().find(|e| e.contains(a) && e.contains(b))
    }

    pub fn contains(&self, p: &LatticePoint3) -> Result<bool, GeometryError> {
        Ok(self
            .hull()?
            .facets
            .iter()
            .all(|f| f.inner_normal.dot(p) >= f.offset))
    }

    /// Integer points of the hull in lexicographic order.
    pub fn lattice_points(&self) -> Result<Vec<LatticePoint3>, GeometryError> {
        let hull = self.hull()?;
        let lo = |k: usize| {
            self.generators
                .iter()
                .map(|p| p.coords()[k])
                .min()
                .expect("nonempty")
        };
        let hi = |k: usize| {
            self.generators
                .iter()
                .map(|p| p.coords()[k])
                .max()
                .expect("nonempty")
        };
        let mut out = Vec::new();
        for x in lo(0)..=hi(0) {
            for y in lo(1)..=hi(1) {
                for z in lo(2)..=hi(2) {
                    let p = LatticePoint3::new(x, y, z);
                    if hull
                        .facets
                        .iter()
                        .all(|f| f.inner_normal.dot(&p) >= f.offset)
                    {
                        out.push(p);
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct RawPolytope {
    points: Vec<LatticePoint3>,
}

impl Serialize for LatticePolytope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawPolytope {
            points: self.generators.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LatticePolytope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawPolytope::deserialize(deserializer)?;
        LatticePolytope::new(raw.points).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> LatticePoint3 {
        LatticePoint3::new(x, y, z)
    }

    #[test]
    fn unit_tetrahedron() {
        let t = LatticePolytope::dilated_simplex(1).unwrap();
        assert_eq!(t.lattice_points().unwrap().len(), 4);
        let h = t.hull().unwrap();
        assert_eq!(h.vertices.len(), 4);
        assert_eq!(h.facets.len(), 4);
        assert_eq!(h.edges.len(), 6);
    }

    #[test]
    fn dilated_simplex_counts() {
        for d in 1..=5i64 {
            let n = LatticePolytope::dilated_simplex(d)
                .unwrap()
                .lattice_points()
                .unwrap()
                .len() as i64;
            assert_eq!(n, (d + 1) * (d + 2) * (d + 3) / 6);
        }
    }

    #[test]
    fn non_vertex_edge_point() {
        // conv{(0,0,0),(0,2,0),(1,0,0),(0,0,1)}; (0,1,0) sits mid-edge
        let t = LatticePolytope::new([p(0, 0, 0), p(0, 1, 0), p(0, 2, 0), p(1, 0, 0), p(0, 0, 1)])
            .unwrap();
        assert!(!t.is_vertex(&p(0, 1, 0)));
        assert!(t.edge_through(&p(0, 0, 0), &p(0, 1, 0)).is_some());
        assert_eq!(t.hull().unwrap().edges.len(), 6);
    }

    #[test]
    fn euler_on_cube() {
        let cube: Vec<_> = (0..8)
            .map(|i| p(i & 1, (i >> 1) & 1, (i >> 2) & 1))
            .collect();
        let c = LatticePolytope::new(cube).unwrap();
        let h = c.hull().unwrap();
        assert_eq!(
            (h.vertices.len(), h.edges.len(), h.facets.len()),
            (8, 12, 6)
        );
        for e in &h.edges {
            let (a, b) = e.facets;
            assert!(h.facets[a].contains(&e.ends.0) && h.facets[b].contains(&e.ends.1));
        }
    }

    #[test]
    fn degenerate_input() {
        let flat = LatticePolytope::new([p(0, 0, 0), p(1, 0, 0), p(0, 1, 0)]).unwrap();
        assert_eq!(flat.dim(), 2);
        assert!(matches!(
            flat.hull(),
            Err(GeometryError::Degenerate { dim: 2 })
        ));
        assert!(LatticePolytope::new(Vec::new()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = LatticePolytope::dilated_simplex(1).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"points":[[0,0,0],[0,0,1],[0,1,0],[1,0,0]]}"#);
        assert_eq!(serde_json::from_str::<LatticePolytope>(&s).unwrap(), t);
    }
}
