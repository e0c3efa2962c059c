//! Fundamental units of complex cubic fields (unit rank 1).
//!
//! Candidates of norm ±1 are found by ascending coefficient-height search in
//! Z[theta]. A candidate of regulator R can only be a k-th power of the
//! fundamental unit for k <= R / 0.28 (the regulator of a complex cubic
//! field exceeds 0.28), so fundamentality is certified by attempting exact
//! k-th root extraction for every such k.

use num_traits::{Signed, Zero};

use super::ideals::{elem_from_i64, Elem};
use super::{CubicError, CubicField};
use crate::arith::Integer;

/// The lower bound on regulators of complex cubic fields used by the
/// certification step.
pub const REGULATOR_LOWER_BOUND: f64 = 0.28;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicUnit {
    pub coords: Elem,
}

impl CubicUnit {
    /// |log of the real embedding|.
    pub fn regulator(&self, field: &CubicField) -> f64 {
        field.embed_real(&self.coords).abs().ln().abs()
    }
}

const HEIGHT_SCHEDULE: [i64; 7] = [2, 4, 8, 16, 32, 64, 128];

/// Search for the fundamental unit, certify it, and canonicalize so the
/// real embedding exceeds 1.
pub fn fundamental_unit(field: &CubicField) -> Result<CubicUnit, CubicError> {
    let mut best: Option<(Elem, f64)> = None;
    for &h in &HEIGHT_SCHEDULE {
        for a in -h..=h {
            for b in -h..=h {
                for c in -h..=h {
                    if b == 0 && c == 0 {
                        continue; // rational: only the torsion units ±1
                    }
                    let is_unit = match field.elem_norm_i128([a as i128, b as i128, c as i128]) {
                        Some(n) => n == 1 || n == -1,
                        None => {
                            field.elem_norm(&elem_from_i64(a, b, c)).abs() == Integer::from(1)
                        }
                    };
                    if !is_unit {
                        continue;
                    }
                    let e = elem_from_i64(a, b, c);
                    let reg = field.embed_real(&e).abs().ln().abs();
                    if reg < 1e-9 {
                        continue;
                    }
                    if best.as_ref().map_or(true, |(_, r)| reg < *r) {
                        best = Some((e, reg));
                    }
                }
            }
        }
        if best.is_some() {
            break;
        }
    }
    let (mut eps, mut reg) = best.ok_or_else(|| {
        CubicError::SearchExhausted(format!(
            "no unit of height <= {} found",
            HEIGHT_SCHEDULE.last().unwrap()
        ))
    })?;

    // Certification: extract k-th roots while the regulator permits one.
    loop {
        let k_max = (reg / REGULATOR_LOWER_BOUND + 1e-9).floor() as u32;
        if k_max < 2 {
            break;
        }
        let mut extracted = None;
        'search: for k in 2..=k_max {
            if let Some(root) = kth_root(field, &eps, k) {
                extracted = Some(root);
                break 'search;
            }
        }
        match extracted {
            Some(root) => {
                reg = field.embed_real(&root).abs().ln().abs();
                eps = root;
            }
            None => break,
        }
    }

    // Canonical form: real embedding positive and > 1.
    let mut sigma = field.embed_real(&eps);
    if sigma.abs() < 1.0 {
        eps = invert_unit(field, &eps);
        sigma = field.embed_real(&eps);
    }
    if sigma < 0.0 {
        eps = eps.map(|c| -c);
    }
    debug_assert!(field.embed_real(&eps) > 1.0);
    debug_assert_eq!(field.elem_norm(&eps).abs(), Integer::from(1));
    Ok(CubicUnit { coords: eps })
}

/// Try to extract an exact k-th root of the unit (up to sign): reconstruct
/// candidate coordinates from numeric k-th roots of the embeddings, round,
/// and verify the power exactly in Z[theta].
fn kth_root(field: &CubicField, eps: &Elem, k: u32) -> Option<Elem> {
    let s1 = field.embed_real(eps);
    let (re2, im2) = field.embed_complex(eps);
    let q = (s1.abs()).powf(1.0 / k as f64);
    let r2 = (re2 * re2 + im2 * im2).sqrt().powf(1.0 / k as f64);
    let phi = im2.atan2(re2);
    for branch in 0..k {
        let ang = (phi + 2.0 * std::f64::consts::PI * branch as f64) / k as f64;
        let (z_re, z_im) = (r2 * ang.cos(), r2 * ang.sin());
        for sign in [1.0f64, -1.0] {
            let target = [sign * q, z_re, z_im];
            let Some(coords) = field.coords_from_embeddings(target) else {
                continue;
            };
            if coords.iter().all(|c| c.is_zero()) {
                continue;
            }
            // Exact verification.
            if field.elem_norm(&coords).abs() != Integer::from(1) {
                continue;
            }
            let mut pow = coords.clone();
            for _ in 1..k {
                pow = field.elem_mul(&pow, &coords);
            }
            let neg = pow.clone().map(|c| -c);
            if &pow == eps || &neg == eps {
                return Some(coords);
            }
        }
    }
    None
}

/// Exact inverse of a unit: solve e * x = 1 by Cramer's rule on the
/// multiplication matrix (determinant ±1).
pub(crate) fn invert_unit(field: &CubicField, e: &Elem) -> Elem {
    let c0 = e.clone();
    let c1 = field.mul_theta(e);
    let c2 = field.mul_theta(&c1);
    // Matrix with columns c0, c1, c2; solve M x = (1, 0, 0)^T.
    let det = &c0[0] * (&c1[1] * &c2[2] - &c1[2] * &c2[1])
        - &c1[0] * (&c0[1] * &c2[2] - &c0[2] * &c2[1])
        + &c2[0] * (&c0[1] * &c1[2] - &c0[2] * &c1[1]);
    debug_assert_eq!(det.abs(), Integer::from(1));
    // Cramer: x_i = det(M with column i replaced by e1) / det.
    let rep = |col: usize| {
        let pick = |j: usize, r: usize| -> Integer {
            if j == col {
                if r == 0 {
                    Integer::from(1)
                } else {
                    Integer::zero()
                }
            } else if j == 0 {
                c0[r].clone()
            } else if j == 1 {
                c1[r].clone()
            } else {
                c2[r].clone()
            }
        };
        let d = pick(0, 0) * (pick(1, 1) * pick(2, 2) - pick(1, 2) * pick(2, 1))
            - pick(1, 0) * (pick(0, 1) * pick(2, 2) - pick(0, 2) * pick(2, 1))
            + pick(2, 0) * (pick(0, 1) * pick(1, 2) - pick(0, 2) * pick(1, 1));
        d
    };
    let x = [rep(0), rep(1), rep(2)];
    let out = if det == Integer::from(1) { x } else { x.map(|c| -c) };
    debug_assert_eq!(
        field.elem_mul(e, &out),
        [Integer::from(1), Integer::zero(), Integer::zero()]
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::CubicPoly;

    fn make(c2: i64, c1: i64, c0: i64) -> CubicField {
        CubicField::new(
            CubicPoly::new(Integer::from(c2), Integer::from(c1), Integer::from(c0)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn theta_is_fundamental_for_the_smallest_regulator_field() {
        // x^3 - x - 1: theta has norm 1 and regulator log(1.3247...) ≈ 0.2812,
        // the minimum over all complex cubic fields; canonical form is theta
        // itself (real root > 1).
        let f = make(0, -1, -1);
        let u = fundamental_unit(&f).unwrap();
        assert_eq!(u.coords, elem_from_i64(0, 1, 0));
        let reg = u.regulator(&f);
        assert!(reg >= REGULATOR_LOWER_BOUND && reg < 0.29, "reg = {reg}");
    }

    #[test]
    fn inverse_field_unit_is_canonicalized() {
        // x^3 + 4x - 1: theta is a unit with real embedding 0.246 < 1, so
        // the canonical fundamental unit is theta^{-1} = theta^2 + 4.
        let f = make(0, 4, -1);
        let u = fundamental_unit(&f).unwrap();
        assert_eq!(u.coords, elem_from_i64(4, 0, 1));
        assert!((u.regulator(&f) - 1.4013).abs() < 1e-3);
        assert_eq!(f.elem_norm(&u.coords), Integer::from(1));
    }

    #[test]
    fn unit_inverse_roundtrip() {
        let f = make(0, 4, -1);
        let u = fundamental_unit(&f).unwrap();
        let inv = invert_unit(&f, &u.coords);
        let prod = f.elem_mul(&u.coords, &inv);
        assert_eq!(prod, elem_from_i64(1, 0, 0));
    }

    #[test]
    fn certification_rejects_proper_powers() {
        // Feed the search eps^2 and confirm root extraction recovers eps
        // (exercised through the public API by construction: the square has
        // regulator 2R, so k = 2 must be attempted and succeed).
        let f = make(0, -1, -1);
        let u = fundamental_unit(&f).unwrap();
        let sq = f.elem_mul(&u.coords, &u.coords);
        let root = kth_root(&f, &sq, 2).expect("square root of eps^2 exists");
        let same = root == u.coords;
        let neg = root == u.coords.clone().map(|c| -c);
        assert!(same || neg);
        // No cube root of eps^2 exists.
        assert!(kth_root(&f, &sq, 3).is_none());
    }
}
