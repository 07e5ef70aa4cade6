use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exactmath::Rational;

/// Integer point or direction in 3-space. Serializes as `[x, y, z]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 3]", into = "[i64; 3]")]
pub struct LatticePoint3 {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl From<[i64; 3]> for LatticePoint3 {
    fn from([x, y, z]: [i64; 3]) -> Self {
        LatticePoint3 { x, y, z }
    }
}

impl From<LatticePoint3> for [i64; 3] {
    fn from(p: LatticePoint3) -> Self {
        [p.x, p.y, p.z]
    }
}

impl LatticePoint3 {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        LatticePoint3 { x, y, z }
    }

    pub fn coords(&self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, o: &LatticePoint3) -> i64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &LatticePoint3) -> LatticePoint3 {
        LatticePoint3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0 && self.z == 0
    }

    pub fn gcd(&self) -> i64 {
        self.x.gcd(&self.y).gcd(&self.z)
    }

    /// Divides out the content; the zero vector is returned unchanged.
    pub fn primitive(&self) -> LatticePoint3 {
        let g = self.gcd();
        if g == 0 {
            return *self;
        }
        LatticePoint3::new(self.x / g, self.y / g, self.z / g)
    }

    pub fn dot_rational(&self, w: &[Rational; 3]) -> Rational {
        &(&Rational::from(self.x) * &w[0])
            + &(&Rational::from(self.y) * &w[1])
            + &Rational::from(self.z) * &w[2]
    }
}

pub fn det3(a: &LatticePoint3, b: &LatticePoint3, c: &LatticePoint3) -> i64 {
    a.dot(&b.cross(c))
}

impl Add for LatticePoint3 {
    type Output = LatticePoint3;
    fn add(self, o: LatticePoint3) -> LatticePoint3 {
        LatticePoint3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for LatticePoint3 {
    type Output = LatticePoint3;
    fn sub(self, o: LatticePoint3) -> LatticePoint3 {
        LatticePoint3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for LatticePoint3 {
    type Output = LatticePoint3;
    fn neg(self) -> LatticePoint3 {
        LatticePoint3::new(-self.x, -self.y, -self.z)
    }
}

impl fmt::Display for LatticePoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

impl fmt::Debug for LatticePoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_and_cross() {
        let v = LatticePoint3::new(4, -6, 2);
        assert_eq!(v.primitive(), LatticePoint3::new(2, -3, 1));
        let e1 = LatticePoint3::new(1, 0, 0);
        let e2 = LatticePoint3::new(0, 1, 0);
        assert_eq!(e1.cross(&e2), LatticePoint3::new(0, 0, 1));
        assert_eq!(det3(&e1, &e2, &LatticePoint3::new(0, 0, 1)), 1);
    }

    #[test]
    fn json_is_a_triple() {
        let p = LatticePoint3::new(1, -2, 3);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,-2,3]");
        assert_eq!(
            serde_json::from_str::<LatticePoint3>("[1,-2,3]").unwrap(),
            p
        );
    }
}
