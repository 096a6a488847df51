use super::{Composition, D1FixedPoint};
use crate::equivariant::{
    chi_adjunction, chi_p1_line, chi_sheaf, EqLineBundleP1, KClass, SplitGeometry, Weight,
};
use crate::error::{Error, Result};

fn check_cy(geom: &SplitGeometry) -> Result<()> {
    if geom.l1 + geom.l2 + geom.l3 != -2 {
        return Err(Error::NotCalabiYau {
            l1: geom.l1,
            l2: geom.l2,
            l3: geom.l3,
        });
    }
    Ok(())
}

fn t0_sum(from: i64, to: i64) -> KClass {
    KClass::from_terms((from..=to).map(|j| (Weight::t(0, j as i32), 1)))
}

fn t3_sum(from: i64, to: i64) -> KClass {
    KClass::from_terms((from..=to).map(|j| (Weight::t(3, j as i32), 1)))
}

/// `-sum_i chi(Li) t_i - sum_{j=-b, j!=0}^{a} t0^j` with `chi(Li) = li + 1` taken as a rank.
pub fn half_obstruction_d1(fp: &D1FixedPoint, geom: &SplitGeometry) -> Result<KClass> {
    check_cy(geom)?;
    let mut out = KClass::zero();
    for (i, l) in geom.degrees().into_iter().enumerate() {
        out.add_term(Weight::t(i + 1, 1), -(l + 1));
    }
    for j in -fp.b..=fp.a {
        if j != 0 {
            out.add_term(Weight::t(0, j as i32), -1);
        }
    }
    Ok(out)
}

/// `chi(O) - chi(N) - chi(O, F)` keeping the torus weights of `chi(Li)`.
///
/// Agrees with [`half_obstruction_d1`] when every `li` is `-1` or `0`.
pub fn half_obstruction_d1_equivariant(fp: &D1FixedPoint, geom: &SplitGeometry) -> Result<KClass> {
    check_cy(geom)?;
    let mut out = KClass::one();
    for i in 1..=3 {
        let l = geom.normal_summand(i);
        out = &out - &chi_p1_line(l.a, l.b).shift(l.twist);
    }
    Ok(&out - &chi_p1_line(fp.a, fp.b))
}

pub fn fixed_sheaf_d1(fp: &D1FixedPoint) -> Vec<EqLineBundleP1> {
    vec![EqLineBundleP1::new(fp.a, fp.b, Weight::TRIVIAL)]
}

/// `chi_X(I, I)_0 = chi_X(F, F) - chi(F) - conj chi(F)` modulo the Calabi-Yau relation.
fn full_from_sheaf(f: &[EqLineBundleP1], geom: &SplitGeometry) -> KClass {
    let chi = chi_sheaf(f);
    let full = &(&chi_adjunction(f, geom) - &chi) - &chi.conj();
    full.reduce_cy()
}

pub fn full_obstruction_d1(fp: &D1FixedPoint, geom: &SplitGeometry) -> Result<KClass> {
    check_cy(geom)?;
    Ok(full_from_sheaf(&fixed_sheaf_d1(fp), geom))
}

/// `F = ⊕_i O(i Z0 + (k - i) Zinf) ⊗ (1 + t3^-1 + ... + t3^-(di - 1))`.
pub fn fixed_sheaf(c: &Composition) -> Vec<EqLineBundleP1> {
    let k = c.k() as i64;
    let mut out = Vec::new();
    for (i, &di) in c.parts().iter().enumerate() {
        let i = i as i64;
        for j in 0..di as i32 {
            out.push(EqLineBundleP1::new(i, k - i, Weight::t(3, -j)));
        }
    }
    out
}

/// The square root chosen for a composition, as printed:
///
/// `-sum_i (sum_{j=-(k-i)}^{i} t0^j)(sum_{j<di} t3^-j)
///  + sum_{i<j} t0^(j-i) (1 - t3^di - t3^-dj + t3^(di-dj)) + sum_i (1 - t3^di)`.
pub fn half_obstruction_general(c: &Composition) -> KClass {
    let k = c.k() as i64;
    let d: Vec<i64> = c.parts().iter().map(|&x| x as i64).collect();
    let mut out = KClass::zero();
    for (i, &di) in d.iter().enumerate() {
        let i = i as i64;
        let chi_i = &t0_sum(-(k - i), i) * &t3_sum(-(di - 1), 0);
        out = &out - &chi_i;
    }
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let w = Weight::t(0, (j - i) as i32);
            let (di, dj) = (d[i] as i32, d[j] as i32);
            let mut term = KClass::one();
            term.add_term(Weight::t(3, di), -1);
            term.add_term(Weight::t(3, -dj), -1);
            term.add_term(Weight::t(3, di - dj), 1);
            out = &out + &term.shift(w);
        }
    }
    for &di in &d {
        out.add_term(Weight::TRIVIAL, 1);
        out.add_term(Weight::t(3, di as i32), -1);
    }
    out
}

/// Full obstruction class of the fixed pair, assembled through the adjunction formula.
pub fn full_obstruction_general(c: &Composition) -> KClass {
    full_from_sheaf(&fixed_sheaf(c), &SplitGeometry::RESOLVED_CONIFOLD_TIMES_LINE)
}

/// Orientation sign `(-1)^(number of zero parts)` under which the fixed-point
/// sum reproduces the closed formula term by term.
pub fn orientation_sign(c: &Composition) -> i64 {
    if c.zero_parts().is_multiple_of(2) {
        1
    } else {
        -1
    }
}
