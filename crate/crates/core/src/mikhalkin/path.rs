use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::MikhalkinError;
use crate::geometry::{LatticePoint3, LatticePolytope};

/// Lattice points in increasing order. Segment `i` joins `points[i]` and
/// `points[i+1]`; segments listed in `gaps` carry no marked point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    points: Vec<LatticePoint3>,
    gaps: BTreeSet<usize>,
}

impl LatticePath {
    pub fn new(
        points: Vec<LatticePoint3>,
        gaps: impl IntoIterator<Item = usize>,
    ) -> Result<Self, MikhalkinError> {
        if points.len() < 2 {
            return Err(MikhalkinError::InvalidPath(
                "a path needs at least two points".into(),
            ));
        }
        if let Some(w) = points.windows(2).find(|w| w[0] >= w[1]) {
            return Err(MikhalkinError::InvalidPath(format!(
                "{} does not precede {}",
                w[0], w[1]
            )));
        }
        let gaps: BTreeSet<usize> = gaps.into_iter().collect();
        if let Some(g) = gaps.iter().find(|&&g| g + 1 >= points.len()) {
            return Err(MikhalkinError::InvalidPath(format!(
                "gap after point {g} is past the end"
            )));
        }
        Ok(LatticePath { points, gaps })
    }

    pub fn connected(points: Vec<LatticePoint3>) -> Result<Self, MikhalkinError> {
        Self::new(points, [])
    }

    pub fn points(&self) -> &[LatticePoint3] {
        &self.points
    }

    pub fn gaps(&self) -> &BTreeSet<usize> {
        &self.gaps
    }

    pub fn is_connected(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn segments(&self) -> impl Iterator<Item = (LatticePoint3, LatticePoint3)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }

    /// Indices of segments carrying a marked point.
    pub fn marked_segments(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.points.len() - 1).filter(|i| !self.gaps.contains(i))
    }

    /// Letter notation like `A|B-C-D-F`, naming points by their position in `order`.
    pub fn label(&self, order: &[LatticePoint3]) -> String {
        let mut s = String::new();
        for (i, q) in self.points.iter().enumerate() {
            match order.iter().position(|o| o == q) {
                Some(k) if k < 26 => s.push((b'A' + k as u8) as char),
                _ => s.push_str(&q.to_string()),
            }
            if i + 1 < self.points.len() {
                s.push(if self.gaps.contains(&i) { '|' } else { '-' });
            }
        }
        s
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, q) in self.points.iter().enumerate() {
            write!(f, "{q}")?;
            if i + 1 < self.points.len() {
                f.write_str(if self.gaps.contains(&i) { " | " } else { " - " })?;
            }
        }
        Ok(())
    }
}

/// `gap_after` is `null`, a segment index, or a list of indices for the rare
/// multi-gap candidate.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GapField {
    One(usize),
    Many(Vec<usize>),
}

#[derive(Serialize, Deserialize)]
struct RawPath {
    vertices: Vec<LatticePoint3>,
    gap_after: Option<GapField>,
}

impl Serialize for LatticePath {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let gap_after = match self.gaps.len() {
            0 => None,
            1 => self.gaps.first().copied().map(GapField::One),
            _ => Some(GapField::Many(self.gaps.iter().copied().collect())),
        };
        RawPath {
            vertices: self.points.clone(),
            gap_after,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LatticePath {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawPath::deserialize(deserializer)?;
        let gaps = match raw.gap_after {
            None => Vec::new(),
            Some(GapField::One(g)) => vec![g],
            Some(GapField::Many(v)) => v,
        };
        LatticePath::new(raw.vertices, gaps).map_err(serde::de::Error::custom)
    }
}

/// All increasing edge paths from the first to the last lattice point that
/// omit at most `skip` lattice points, with every placement of the gaps that
/// leaves exactly `n - 1 - skip` marked segments.
///
/// Each step moves to a later lattice point on a common edge. A step may pass
/// over lattice points inside the edge; such a segment has lattice length > 1.
pub fn enumerate_paths(
    p: &LatticePolytope,
    skip: usize,
) -> Result<Vec<LatticePath>, MikhalkinError> {
    let hull = p.hull()?;
    let pts = p.lattice_points()?;
    let n = pts.len();
    if skip + 1 > n {
        return Err(MikhalkinError::Config(format!(
            "cannot skip {skip} of {n} lattice points"
        )));
    }
    let marked = n - 1 - skip;
    // steps[i]: indices j > i sharing an edge with point i
    let steps: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (i + 1..n)
                .filter(|&j| {
                    hull.edges
                        .iter()
                        .any(|e| e.contains(&pts[i]) && e.contains(&pts[j]))
                })
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut stack = vec![0usize];
    walk(&steps, n - 1, &mut stack, &mut |route| {
        let segs = route.len() - 1;
        if segs < marked {
            return;
        }
        let points: Vec<LatticePoint3> = route.iter().map(|&i| pts[i]).collect();
        for gaps in combinations(segs, segs - marked) {
            out.push(LatticePath {
                points: points.clone(),
                gaps: gaps.into_iter().collect(),
            });
        }
    });
    out.sort();
    Ok(out)
}

fn walk(
    steps: &[Vec<usize>],
    last: usize,
    stack: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    let cur = *stack.last().expect("stack starts nonempty");
    if cur == last {
        emit(stack);
        return;
    }
    for &j in &steps[cur] {
        stack.push(j);
        walk(steps, last, stack, emit);
        stack.pop();
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
