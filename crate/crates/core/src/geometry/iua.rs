use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::point::{det3, LatticePoint3};
use super::{GeometryError, LatticePolytope};

/// `x ↦ matrix·x + translation` with `|det matrix| = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct UnimodularAffineMap {
    matrix: [[i64; 3]; 3],
    translation: LatticePoint3,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    matrix: [[i64; 3]; 3],
    translation: LatticePoint3,
}

impl TryFrom<RawMap> for UnimodularAffineMap {
    type Error = GeometryError;
    fn try_from(r: RawMap) -> Result<Self, GeometryError> {
        UnimodularAffineMap::new(r.matrix, r.translation)
    }
}

impl From<UnimodularAffineMap> for RawMap {
    fn from(m: UnimodularAffineMap) -> Self {
        RawMap {
            matrix: m.matrix,
            translation: m.translation,
        }
    }
}

fn rows_of(m: &[[i64; 3]; 3]) -> [LatticePoint3; 3] {
    m.map(LatticePoint3::from)
}

impl UnimodularAffineMap {
    pub fn new(matrix: [[i64; 3]; 3], translation: LatticePoint3) -> Result<Self, GeometryError> {
        let [r0, r1, r2] = rows_of(&matrix);
        let d = det3(&r0, &r1, &r2);
        if d.abs() != 1 {
            return Err(GeometryError::NotUnimodular(d));
        }
        Ok(UnimodularAffineMap {
            matrix,
            translation,
        })
    }

    pub fn identity() -> Self {
        UnimodularAffineMap {
            matrix: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            translation: LatticePoint3::default(),
        }
    }

    pub fn matrix(&self) -> &[[i64; 3]; 3] {
        &self.matrix
    }

    pub fn translation(&self) -> LatticePoint3 {
        self.translation
    }

    pub fn apply(&self, p: &LatticePoint3) -> LatticePoint3 {
        let [r0, r1, r2] = rows_of(&self.matrix);
        LatticePoint3::new(r0.dot(p), r1.dot(p), r2.dot(p)) + self.translation
    }

    pub fn apply_polytope(&self, p: &LatticePolytope) -> Result<LatticePolytope, GeometryError> {
        LatticePolytope::new(p.generators().iter().map(|v| self.apply(v)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &UnimodularAffineMap) -> UnimodularAffineMap {
        let mut m = [[0i64; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum();
            }
        }
        let t = self.apply(&other.translation);
        UnimodularAffineMap {
            matrix: m,
            translation: t,
        }
    }
}

/// Columns `b - base`, `c - base`, `d - base` as a row-major matrix.
fn frame(base: &LatticePoint3, rest: [&LatticePoint3; 3]) -> [[i64; 3]; 3] {
    let cols = rest.map(|p| (*p - *base).coords());
    let mut m = [[0i64; 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = cols[j][i];
        }
    }
    m
}

/// Adjugate, so that `m · adj(m) = det(m) · I`.
fn adjugate(m: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut a = [[0i64; 3]; 3];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            *cell = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    }
    a
}

fn det(m: &[[i64; 3]; 3]) -> i64 {
    let [r0, r1, r2] = rows_of(m);
    det3(&r0, &r1, &r2)
}

/// Searches for an integral unimodular affine map carrying the lattice points
/// of `p` bijectively onto those of `q`.
///
/// An affinely independent 4-tuple of `p` is pinned and matched against every
/// ordered 4-tuple of `q`; each match determines at most one affine map.
pub fn iua_equivalent(
    p: &LatticePolytope,
    q: &LatticePolytope,
) -> Result<Option<UnimodularAffineMap>, GeometryError> {
    let pp = p.lattice_points()?;
    let qp = q.lattice_points()?;
    if pp.len() != qp.len() {
        return Ok(None);
    }
    let target: BTreeSet<LatticePoint3> = qp.iter().copied().collect();
    let base = pinned_frame(&pp).ok_or(GeometryError::Degenerate { dim: p.dim() })?;
    let pm = frame(&base[0], [&base[1], &base[2], &base[3]]);
    let pdet = det(&pm);
    let padj = adjugate(&pm);

    let n = qp.len();
    for i0 in 0..n {
        for i1 in 0..n {
            for i2 in 0..n {
                for i3 in 0..n {
                    let idx = [i0, i1, i2, i3];
                    if (0..4).any(|a| (a + 1..4).any(|b| idx[a] == idx[b])) {
                        continue;
                    }
                    let qm = frame(&qp[i0], [&qp[i1], &qp[i2], &qp[i3]]);
                    if det(&qm).abs() != pdet.abs() {
                        continue;
                    }
                    let Some(matrix) = integral_quotient(&qm, &padj, pdet) else {
                        continue;
                    };
                    let [r0, r1, r2] = rows_of(&matrix);
                    let lin =
                        LatticePoint3::new(r0.dot(&base[0]), r1.dot(&base[0]), r2.dot(&base[0]));
                    let Ok(map) = UnimodularAffineMap::new(matrix, qp[i0] - lin) else {
                        continue;
                    };
                    if pp.iter().all(|v| target.contains(&map.apply(v))) {
                        return Ok(Some(map));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `qm · adj / det` when every entry is integral.
fn integral_quotient(qm: &[[i64; 3]; 3], adj: &[[i64; 3]; 3], det: i64) -> Option<[[i64; 3]; 3]> {
    let mut out = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let s: i64 = (0..3).map(|k| qm[i][k] * adj[k][j]).sum();
            if s % det != 0 {
                return None;
            }
            out[i][j] = s / det;
        }
    }
    Some(out)
}

fn pinned_frame(points: &[LatticePoint3]) -> Option<[LatticePoint3; 4]> {
    let o = *points.first()?;
    for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate().skip(i + 1) {
            for c in points.iter().skip(j + 1) {
                if det3(&(*a - o), &(*b - o), &(*c - o)) != 0 {
                    return Some([o, *a, *b, *c]);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cols(rows: [Vec<i64>; 3]) -> LatticePolytope {
        LatticePolytope::from_columns(&rows).unwrap()
    }

    fn family10(a: i64, b: i64) -> LatticePolytope {
        cols([
            vec![0, 0, 0, 0, 1, 1],
            vec![0, 0, 1, 1, 0, a],
            vec![0, 1, 0, 1, 0, b],
        ])
    }

    fn family13(a: i64, b: i64) -> LatticePolytope {
        cols([
            vec![0, 0, 0, 0, 1, 1],
            vec![0, 1, 1, 2, 0, a],
            vec![0, 0, 1, 0, 0, b],
        ])
    }

    fn family14(a: i64, b: i64) -> LatticePolytope {
        cols([
            vec![0, 0, 0, 0, 1, 1],
            vec![0, 1, 1, 2, 0, b],
            vec![0, 0, 1, 0, 0, a],
        ])
    }

    #[test]
    fn reflexive_gives_a_symmetry() {
        let p = family10(3, 1);
        let m = iua_equivalent(&p, &p).unwrap().unwrap();
        let img: BTreeSet<_> = p
            .lattice_points()
            .unwrap()
            .iter()
            .map(|v| m.apply(v))
            .collect();
        assert_eq!(img, p.lattice_points().unwrap().into_iter().collect());
    }

    #[test]
    fn double_right_string_representative() {
        // d=5, floor f=1, y=0, a=3 in the first family-10 placement
        let (d, f, y, a) = (5, 1, 0, 3);
        let rep = cols([
            vec![d - f - 1, d - f - 1, d - f - 1, d - f, d - f, d - f],
            vec![f, f, f + 1, y, y, y + 1],
            vec![0, 1, 0, a, a + 1, 0],
        ]);
        assert!(iua_equivalent(&rep, &family10(3, 1)).unwrap().is_some());
    }

    #[test]
    fn families_13_and_14_differ() {
        assert!(iua_equivalent(&family13(5, 1), &family14(5, 1))
            .unwrap()
            .is_none());
        assert!(iua_equivalent(
            &family10(3, 1),
            &LatticePolytope::dilated_simplex(1).unwrap()
        )
        .unwrap()
        .is_none());
    }

    #[test]
    fn map_json_and_validation() {
        let m = UnimodularAffineMap::identity();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"matrix":[[1,0,0],[0,1,0],[0,0,1]],"translation":[0,0,0]}"#
        );
        assert_eq!(serde_json::from_str::<UnimodularAffineMap>(&s).unwrap(), m);
        assert!(serde_json::from_str::<UnimodularAffineMap>(
            r#"{"matrix":[[2,0,0],[0,1,0],[0,0,1]],"translation":[0,0,0]}"#
        )
        .is_err());
    }

    /// Products of elementary shears and coordinate swaps.
    fn random_map() -> impl Strategy<Value = UnimodularAffineMap> {
        (
            prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6),
            prop::array::uniform3(-5i64..5),
        )
            .prop_map(|(ops, t)| {
                let mut m = UnimodularAffineMap::identity();
                for (i, j, k) in ops {
                    let mut e = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
                    if i == j {
                        e.swap(i, (i + 1) % 3);
                    } else {
                        e[i][j] = k;
                    }
                    m = UnimodularAffineMap::new(e, LatticePoint3::default())
                        .unwrap()
                        .compose(&m);
                }
                UnimodularAffineMap::new(*m.matrix(), LatticePoint3::from(t)).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn detects_transformed_copies(m in random_map(), a in 3i64..7) {
            let p = family13(a, 1);
            let q = m.apply_polytope(&p).unwrap();
            let fwd = iua_equivalent(&p, &q).unwrap();
            let back = iua_equivalent(&q, &p).unwrap();
            prop_assert!(fwd.is_some() && back.is_some());
            let fwd = fwd.unwrap();
            let img: BTreeSet<_> = p.lattice_points().unwrap().iter().map(|v| fwd.apply(v)).collect();
            prop_assert_eq!(img, q.lattice_points().unwrap().into_iter().collect::<BTreeSet<_>>());
        }
    }
}
