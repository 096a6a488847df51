//! Equivariant sheaves on the zero section and their Euler pairings.

use serde::{Deserialize, Serialize};

use super::{KClass, Weight};
use crate::error::{Error, Result};

/// `O(a Z0 + b Zinf) ⊗ twist` on the projective line, with `t0` acting on the base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EqLineBundleP1 {
    pub a: i64,
    pub b: i64,
    pub twist: Weight,
}

impl EqLineBundleP1 {
    pub fn new(a: i64, b: i64, twist: Weight) -> Self {
        EqLineBundleP1 { a, b, twist }
    }

    pub fn trivial() -> Self {
        Self::new(0, 0, Weight::TRIVIAL)
    }

    pub fn degree(&self) -> i64 {
        self.a + self.b
    }

    pub fn tensor(&self, other: &EqLineBundleP1) -> EqLineBundleP1 {
        EqLineBundleP1::new(self.a + other.a, self.b + other.b, self.twist + other.twist)
    }
}

/// Total space of `L1 ⊕ L2 ⊕ L3` over the projective line, `Li = O(li)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitGeometry {
    pub l1: i64,
    pub l2: i64,
    pub l3: i64,
}

impl SplitGeometry {
    /// The local curve `O(-1) ⊕ O(-1) ⊕ O`.
    pub const RESOLVED_CONIFOLD_TIMES_LINE: SplitGeometry = SplitGeometry { l1: -1, l2: -1, l3: 0 };

    pub fn new(l1: i64, l2: i64, l3: i64) -> Result<Self> {
        if l1 + l2 + l3 != -2 {
            return Err(Error::NotCalabiYau { l1, l2, l3 });
        }
        Ok(SplitGeometry { l1, l2, l3 })
    }

    pub fn degrees(&self) -> [i64; 3] {
        [self.l1, self.l2, self.l3]
    }

    /// Normal summand `O(li Zinf) ⊗ t_i`, for `i` in 1..=3.
    pub fn normal_summand(&self, i: usize) -> EqLineBundleP1 {
        EqLineBundleP1::new(0, self.degrees()[i - 1], Weight::t(i, 1))
    }

    pub fn tag(&self) -> String {
        format!("({},{},{})", self.l1, self.l2, self.l3)
    }
}

impl std::fmt::Display for SplitGeometry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.tag())
    }
}

/// Equivariant Euler characteristic of `O(a Z0 + b Zinf)`.
pub fn chi_p1_line(a: i64, b: i64) -> KClass {
    let s = a + b;
    if s >= 0 {
        KClass::from_terms((-b..=a).map(|j| (Weight::t(0, j as i32), 1)))
    } else if s <= -2 {
        KClass::from_terms((a + 1..=-b - 1).map(|j| (Weight::t(0, j as i32), -1)))
    } else {
        KClass::zero()
    }
}

/// `chi(A, B) = chi(A^v ⊗ B)` with twists carried through.
pub fn chi_p1_pair(a: &EqLineBundleP1, b: &EqLineBundleP1) -> KClass {
    chi_p1_line(b.a - a.a, b.b - a.b).shift(b.twist - a.twist)
}

/// `chi_X(A, B)` for line bundles on the zero section, via the Koszul resolution
/// of the normal bundle. Not reduced modulo the Calabi-Yau relation.
pub fn chi_x_pair(a: &EqLineBundleP1, b: &EqLineBundleP1, geom: &SplitGeometry) -> KClass {
    let mut out = KClass::zero();
    for subset in 0u8..8 {
        let mut wedge = EqLineBundleP1::trivial();
        for i in 1..=3 {
            if subset & (1 << (i - 1)) != 0 {
                wedge = wedge.tensor(&geom.normal_summand(i));
            }
        }
        let sign = if subset.count_ones() % 2 == 0 { 1 } else { -1 };
        out = &out + &chi_p1_pair(a, &b.tensor(&wedge)).scale(sign);
    }
    out
}

/// `chi_X(F, F)` for `F` pushed forward from the zero section, reduced to the Calabi-Yau torus.
pub fn chi_adjunction(f: &[EqLineBundleP1], geom: &SplitGeometry) -> KClass {
    let mut out = KClass::zero();
    for a in f {
        for b in f {
            out = &out + &chi_x_pair(a, b, geom);
        }
    }
    out.reduce_cy()
}

/// Euler characteristic of `F` itself.
pub fn chi_sheaf(f: &[EqLineBundleP1]) -> KClass {
    f.iter().fold(KClass::zero(), |acc, l| {
        &acc + &chi_p1_line(l.a, l.b).shift(l.twist)
    })
}

/// Whether `full = half + conj(half)` modulo `t0 t1 t2 t3 = 1`.
pub fn check_square_root(full: &KClass, half: &KClass) -> bool {
    full.reduce_cy() == (half + &half.conj()).reduce_cy()
}
