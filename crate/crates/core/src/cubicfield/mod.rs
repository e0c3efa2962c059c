//! Arithmetic of non-Galois complex cubic fields (one real embedding, unit
//! rank 1) inside the monogenic order Z[theta]: class numbers by Minkowski
//! bound ideal enumeration, fundamental units, and the p-rationality test
//! through Fermat quotients of the fundamental unit.
//!
//! Primes dividing the index [O_K : Z[theta]] are detected with Dedekind's
//! criterion and refused by the operations that need the maximal order.

pub mod ideals;
pub mod parse;
pub mod units;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as NumInteger;
use num_traits::{Signed, ToPrimitive, Zero};
use std::sync::OnceLock;
use thiserror::Error;

use crate::arith::{self, CubicPoly, Integer};
use crate::padic::{PadicError, UnramifiedRing};
use crate::quadfield;

use ideals::{
    complement, ideal_from_generators, ideal_mul, prime_ideal, CubicIdeal, Elem,
};
pub use units::{fundamental_unit as search_fundamental_unit, CubicUnit, REGULATOR_LOWER_BOUND};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CubicError {
    #[error("prime {0} divides the index [O_K : Z[theta]]")]
    IndexObstruction(u64),
    #[error("prime {0} ramifies (divides the polynomial discriminant)")]
    Ramified(u64),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("out of supported range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Precision(#[from] PadicError),
}

/// Tri-state verdict of the p-rationality criteria: `Unknown` whenever a
/// hypothesis of the implemented sufficient criterion is unmet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PRationality {
    Yes,
    No,
    Unknown,
}

/// A complex cubic field presented by a monic defining polynomial.
#[derive(Debug)]
pub struct CubicField {
    poly: CubicPoly,
    disc: Integer,
    index_primes: Vec<u64>,
    theta3: Elem,
    theta4: Elem,
    h: OnceLock<u64>,
    unit: OnceLock<CubicUnit>,
    roots: OnceLock<(f64, (f64, f64))>,
}

impl CubicField {
    pub fn new(poly: CubicPoly) -> Result<Self, CubicError> {
        let disc = poly.discriminant();
        if !disc.is_negative() {
            return Err(CubicError::OutOfRange(
                "discriminant must be negative (one real embedding)".into(),
            ));
        }
        let index_primes = index_prime_divisors(&poly, &disc)?;
        let c0 = &poly.c0;
        let c1 = &poly.c1;
        let c2 = &poly.c2;
        let theta3 = [-c0.clone(), -c1.clone(), -c2.clone()];
        // theta^4 = (c2 c0, c2 c1 - c0, c2^2 - c1)
        let theta4 = [c2 * c0, c2 * c1 - c0, c2 * c2 - c1];
        Ok(CubicField {
            poly,
            disc,
            index_primes,
            theta3,
            theta4,
            h: OnceLock::new(),
            unit: OnceLock::new(),
            roots: OnceLock::new(),
        })
    }

    pub fn poly(&self) -> &CubicPoly {
        &self.poly
    }

    pub fn discriminant(&self) -> &Integer {
        &self.disc
    }

    /// Primes dividing [O_K : Z[theta]] (Dedekind-certified).
    pub fn index_primes(&self) -> &[u64] {
        &self.index_primes
    }

    /// The field discriminant, available exactly when the order is maximal.
    pub fn field_discriminant(&self) -> Option<&Integer> {
        if self.index_primes.is_empty() {
            Some(&self.disc)
        } else {
            None
        }
    }

    pub(crate) fn theta3(&self) -> &Elem {
        &self.theta3
    }

    pub(crate) fn theta4(&self) -> &Elem {
        &self.theta4
    }

    /// (real root, complex root) of the defining polynomial.
    fn numeric_roots(&self) -> (f64, (f64, f64)) {
        *self.roots.get_or_init(|| {
            let c2 = big_to_f64(&self.poly.c2);
            let c1 = big_to_f64(&self.poly.c1);
            let c0 = big_to_f64(&self.poly.c0);
            let f = |x: f64| ((x + c2) * x + c1) * x + c0;
            // Single real root: bracket by the Cauchy bound and bisect.
            let bound = 1.0 + c2.abs().max(c1.abs()).max(c0.abs());
            let (mut lo, mut hi) = (-bound, bound);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if f(mid) <= 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let rho = 0.5 * (lo + hi);
            // Deflate: x^2 + u x + v.
            let u = c2 + rho;
            let v = c1 + c2 * rho + rho * rho;
            let disc = v - u * u / 4.0;
            debug_assert!(disc > 0.0, "complex cubic has a conjugate pair");
            ((rho), (-u / 2.0, disc.sqrt()))
        })
    }

    /// Checked machine-integer norm used by the unit search hot loop;
    /// `None` on overflow (the caller falls back to exact arithmetic).
    pub(crate) fn elem_norm_i128(&self, e: [i128; 3]) -> Option<i128> {
        let t3 = [
            self.theta3[0].to_i128()?,
            self.theta3[1].to_i128()?,
            self.theta3[2].to_i128()?,
        ];
        let mul_theta = |v: [i128; 3]| -> Option<[i128; 3]> {
            Some([
                v[2].checked_mul(t3[0])?,
                v[0].checked_add(v[2].checked_mul(t3[1])?)?,
                v[1].checked_add(v[2].checked_mul(t3[2])?)?,
            ])
        };
        let c0 = e;
        let c1 = mul_theta(c0)?;
        let c2 = mul_theta(c1)?;
        let m2 = |a: i128, b: i128| a.checked_mul(b);
        let det = m2(c0[0], m2(c1[1], c2[2])?.checked_sub(m2(c1[2], c2[1])?)?)?
            .checked_sub(m2(c1[0], m2(c0[1], c2[2])?.checked_sub(m2(c0[2], c2[1])?)?)?)?
            .checked_add(m2(c2[0], m2(c0[1], c1[2])?.checked_sub(m2(c0[2], c1[1])?)?)?)?;
        Some(det)
    }

    pub fn embed_real(&self, e: &Elem) -> f64 {
        let (rho, _) = self.numeric_roots();
        let a = big_to_f64(&e[0]);
        let b = big_to_f64(&e[1]);
        let c = big_to_f64(&e[2]);
        a + b * rho + c * rho * rho
    }

    pub fn embed_complex(&self, e: &Elem) -> (f64, f64) {
        let (_, (zr, zi)) = self.numeric_roots();
        let a = big_to_f64(&e[0]);
        let b = big_to_f64(&e[1]);
        let c = big_to_f64(&e[2]);
        // z^2 = (zr^2 - zi^2) + 2 zr zi i
        let z2r = zr * zr - zi * zi;
        let z2i = 2.0 * zr * zi;
        (a + b * zr + c * z2r, b * zi + c * z2i)
    }

    /// Solve for integer coordinates hitting the target embeddings
    /// (sigma_real, Re sigma_complex, Im sigma_complex); `None` if the
    /// rounded solution is not close.
    pub(crate) fn coords_from_embeddings(&self, target: [f64; 3]) -> Option<Elem> {
        let (rho, (zr, zi)) = self.numeric_roots();
        let z2r = zr * zr - zi * zi;
        let z2i = 2.0 * zr * zi;
        let m = [
            [1.0, rho, rho * rho],
            [1.0, zr, z2r],
            [0.0, zi, z2i],
        ];
        let x = solve3(m, target)?;
        let rounded = x.map(|v| v.round());
        if x.iter().zip(&rounded).any(|(v, r)| (v - r).abs() > 0.3) {
            return None;
        }
        if rounded.iter().any(|v| v.abs() > 9e15) {
            return None;
        }
        Some([
            Integer::from(rounded[0] as i64),
            Integer::from(rounded[1] as i64),
            Integer::from(rounded[2] as i64),
        ])
    }

    /// Class number of the maximal order (requires index 1 below the
    /// Minkowski bound), computed once.
    pub fn class_number(&self) -> Result<u64, CubicError> {
        if let Some(h) = self.h.get() {
            return Ok(*h);
        }
        let h = class_number_cubic_uncached(self)?;
        Ok(*self.h.get_or_init(|| h))
    }

    /// The fundamental unit, computed once.
    pub fn fundamental_unit(&self) -> Result<CubicUnit, CubicError> {
        if let Some(u) = self.unit.get() {
            return Ok(u.clone());
        }
        let u = units::fundamental_unit(self)?;
        Ok(self.unit.get_or_init(|| u).clone())
    }
}

fn big_to_f64(x: &Integer) -> f64 {
    x.to_f64().expect("coefficient fits f64 range")
}

fn solve3(m: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if det.abs() < 1e-12 {
        return None;
    }
    let mut out = [0.0; 3];
    for col in 0..3 {
        let mut mm = m;
        for row in 0..3 {
            mm[row][col] = b[row];
        }
        let d = mm[0][0] * (mm[1][1] * mm[2][2] - mm[1][2] * mm[2][1])
            - mm[0][1] * (mm[1][0] * mm[2][2] - mm[1][2] * mm[2][0])
            + mm[0][2] * (mm[1][0] * mm[2][1] - mm[1][1] * mm[2][0]);
        out[col] = d / det;
    }
    Some(out)
}

/// Primes q with q^2 | disc(f) for which Dedekind's criterion certifies
/// q | [O_K : Z[theta]].
fn index_prime_divisors(poly: &CubicPoly, disc: &Integer) -> Result<Vec<u64>, CubicError> {
    let mut candidates = Vec::new();
    let mut rest = disc.abs();
    let mut q = 2u64;
    while Integer::from(q) * Integer::from(q) <= rest && q <= 1_000_000 {
        let bq = Integer::from(q);
        if rest.is_multiple_of(&bq) {
            let mut mult = 0u32;
            while rest.is_multiple_of(&bq) {
                rest /= &bq;
                mult += 1;
            }
            if mult >= 2 {
                candidates.push(q);
            }
        }
        q += 1;
    }
    if rest > Integer::from(1) {
        // Leftover beyond the trial range: a single large prime is fine, a
        // large square contributes a candidate, anything else is ambiguous.
        if let Some(s) = arith::exact_sqrt(&rest) {
            let sp = s.to_u64().ok_or_else(|| {
                CubicError::OutOfRange("square factor too large to analyze".into())
            })?;
            if arith::is_prime_u64(sp) {
                candidates.push(sp);
            } else {
                return Err(CubicError::OutOfRange(
                    "cannot certify index divisors of this discriminant".into(),
                ));
            }
        } else {
            let lp = rest.to_u64();
            match lp {
                Some(v) if arith::is_prime_u64(v) => {}
                _ => {
                    if rest.bits() > 63 || !arith::is_prime_u64(rest.to_u64().unwrap_or(0)) {
                        return Err(CubicError::OutOfRange(
                            "cannot certify index divisors of this discriminant".into(),
                        ));
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for q in candidates {
        if dedekind_divides_index(poly, q) {
            out.push(q);
        }
    }
    Ok(out)
}

/// Monic factorization of f mod p with multiplicities, lowest-first
/// coefficient vectors.
pub fn factor_cubic_mod_p(poly: &CubicPoly, p: u64) -> Vec<(Vec<u64>, u32)> {
    let [c0, c1, c2] = poly.coeffs_mod(p);
    let mut f = vec![c0, c1, c2, 1];
    let roots = arith::cubic_roots_mod_p(poly, p);
    let mut out = Vec::new();
    for r in roots {
        let mut mult = 0u32;
        loop {
            // Synthetic division by (x - r).
            let mut quot = vec![0u64; f.len() - 1];
            let mut acc = 0u64;
            for i in (0..f.len()).rev() {
                acc = if i == f.len() - 1 {
                    f[i]
                } else {
                    (f[i] + acc) % p
                };
                if i > 0 {
                    quot[i - 1] = acc;
                    acc = (acc as u128 * r as u128 % p as u128) as u64;
                } else if acc % p != 0 {
                    break;
                }
            }
            // Exact check: remainder is f evaluated at r.
            if arith::poly_eval_mod(&f, r, p) != 0 {
                break;
            }
            f = quot;
            mult += 1;
            if f.len() == 1 {
                break;
            }
        }
        debug_assert!(mult >= 1);
        out.push((vec![(p - r) % p, 1], mult));
    }
    if f.len() > 1 {
        // Rootless remainder of degree 2 or 3 is irreducible.
        out.push((f, 1));
    }
    out.sort();
    out
}

/// Dedekind's criterion at q for a monic cubic: with f ≡ ∏ g_i^{e_i},
/// g* = ∏ g_i and h* = f/g* mod q, set F = (lift(g*) lift(h*) - f)/q;
/// then q | [O_K : Z[theta]] iff gcd(F, g*, h*) is non-constant mod q.
fn dedekind_divides_index(poly: &CubicPoly, q: u64) -> bool {
    let factors = factor_cubic_mod_p(poly, q);
    let mut gstar = vec![1u64];
    for (g, _) in &factors {
        gstar = arith::poly_mul_mod(&gstar, g, q);
    }
    let [c0, c1, c2] = poly.coeffs_mod(q);
    let fq = vec![c0, c1, c2, 1];
    let hstar = poly_div_exact_mod(&fq, &gstar, q);
    // Integer product of the lifts minus f, divided by q.
    let gl: Vec<i128> = gstar.iter().map(|&c| c as i128).collect();
    let hl: Vec<i128> = hstar.iter().map(|&c| c as i128).collect();
    let mut prod = vec![0i128; gl.len() + hl.len() - 1];
    for (i, &gc) in gl.iter().enumerate() {
        for (j, &hc) in hl.iter().enumerate() {
            prod[i + j] += gc * hc;
        }
    }
    let fint = [
        poly.c0.to_i128().expect("coefficient fits i128"),
        poly.c1.to_i128().unwrap(),
        poly.c2.to_i128().unwrap(),
        1i128,
    ];
    let mut fbig = vec![0i128; prod.len().max(4)];
    for (i, c) in fint.iter().enumerate() {
        fbig[i] = *c;
    }
    prod.resize(fbig.len(), 0);
    let fvec: Vec<u64> = prod
        .iter()
        .zip(&fbig)
        .map(|(a, b)| {
            let diff = a - b;
            debug_assert_eq!(diff % q as i128, 0, "g* h* ≡ f (mod q) must hold");
            (diff / q as i128).rem_euclid(q as i128) as u64
        })
        .collect();
    let d1 = arith::poly_gcd_mod(&gstar, &hstar, q);
    let d2 = arith::poly_gcd_mod(&d1, &fvec, q);
    d2.len().saturating_sub(1) >= 1
}

fn poly_div_exact_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    // both monic, exact division mod p
    let mut r = a.to_vec();
    arith::poly_trim(&mut r);
    let db = b.len() - 1;
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let coef = *r.last().unwrap();
        q[shift] = coef;
        for (k, &bk) in b.iter().enumerate() {
            let sub = (coef as u128 * bk as u128 % p as u128) as u64;
            r[shift + k] = (r[shift + k] + p - sub) % p;
        }
        arith::poly_trim(&mut r);
    }
    assert!(r.is_empty(), "division must be exact");
    q
}

// --- short vectors / principality ------------------------------------------

/// Gram matrix of the ideal basis under the weighted form
/// w1 |s1(x)|^2 + 2 w2 |s2(x)|^2 (w1 = w2 = 1 is the T2 form).
fn gram_weighted(field: &CubicField, ideal: &CubicIdeal, w1: f64, w2: f64) -> [[f64; 3]; 3] {
    let emb: Vec<(f64, f64, f64)> = ideal
        .rows
        .iter()
        .map(|r| {
            let s1 = field.embed_real(r);
            let (c_re, c_im) = field.embed_complex(r);
            (s1, c_re, c_im)
        })
        .collect();
    let mut g = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            g[i][j] = w1 * emb[i].0 * emb[j].0
                + 2.0 * w2 * (emb[i].1 * emb[j].1 + emb[i].2 * emb[j].2);
        }
    }
    g
}

fn gram(field: &CubicField, ideal: &CubicIdeal) -> [[f64; 3]; 3] {
    gram_weighted(field, ideal, 1.0, 1.0)
}

/// Integer combinations of the ideal basis with T2 below the bound
/// (Fincke-Pohst on the Cholesky factorization), excluding zero.
fn enumerate_short(
    field: &CubicField,
    ideal: &CubicIdeal,
    bound: f64,
    cap: usize,
) -> Result<Vec<Elem>, CubicError> {
    let g = gram(field, ideal);
    enumerate_with_gram(ideal, g, bound, cap)
}

fn enumerate_with_gram(
    ideal: &CubicIdeal,
    g: [[f64; 3]; 3],
    bound: f64,
    cap: usize,
) -> Result<Vec<Elem>, CubicError> {
    // Cholesky: G = R^T R, R upper triangular.
    let mut r = [[0.0f64; 3]; 3];
    for i in 0..3 {
        let mut d = g[i][i];
        for k in 0..i {
            d -= r[k][i] * r[k][i];
        }
        if d <= 0.0 {
            return Err(CubicError::SearchExhausted(
                "Gram matrix lost positive definiteness numerically".into(),
            ));
        }
        r[i][i] = d.sqrt();
        for j in i + 1..3 {
            let mut s = g[i][j];
            for k in 0..i {
                s -= r[k][i] * r[k][j];
            }
            r[i][j] = s / r[i][i];
        }
    }
    let bound = bound * (1.0 + 1e-9) + 1e-9;
    let mut out = Vec::new();
    let b3 = (bound.sqrt() / r[2][2] + 1e-9).floor() as i64;
    for x3 in -b3..=b3 {
        let t3 = r[2][2] * x3 as f64;
        let rem2 = bound - t3 * t3;
        if rem2 < 0.0 {
            continue;
        }
        let center2 = -(r[1][2] * x3 as f64) / r[1][1];
        let half2 = rem2.sqrt() / r[1][1];
        let lo2 = (center2 - half2 - 1e-9).ceil() as i64;
        let hi2 = (center2 + half2 + 1e-9).floor() as i64;
        for x2 in lo2..=hi2 {
            let t2 = r[1][1] * x2 as f64 + r[1][2] * x3 as f64;
            let rem1 = rem2 - t2 * t2;
            if rem1 < 0.0 {
                continue;
            }
            let center1 = -(r[0][1] * x2 as f64 + r[0][2] * x3 as f64) / r[0][0];
            let half1 = rem1.sqrt() / r[0][0];
            let lo1 = (center1 - half1 - 1e-9).ceil() as i64;
            let hi1 = (center1 + half1 + 1e-9).floor() as i64;
            for x1 in lo1..=hi1 {
                if x1 == 0 && x2 == 0 && x3 == 0 {
                    continue;
                }
                if out.len() >= cap {
                    return Err(CubicError::SearchExhausted(format!(
                        "short-vector enumeration exceeded {cap} candidates"
                    )));
                }
                let mut v = [Integer::zero(), Integer::zero(), Integer::zero()];
                for (k, &x) in [x1, x2, x3].iter().enumerate() {
                    if x != 0 {
                        for c in 0..3 {
                            v[c] += Integer::from(x) * &ideal.rows[k][c];
                        }
                    }
                }
                out.push(v);
            }
        }
    }
    Ok(out)
}

fn shortest_vector(field: &CubicField, ideal: &CubicIdeal) -> Result<Elem, CubicError> {
    let g = gram(field, ideal);
    let det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
        - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
    let mut bound = 1.8 * det.abs().powf(1.0 / 3.0);
    for _ in 0..40 {
        let cands = enumerate_short(field, ideal, bound, 4_000_000)?;
        if let Some(best) = cands.into_iter().min_by(|a, b| {
            let qa = t2_value(field, a);
            let qb = t2_value(field, b);
            qa.partial_cmp(&qb).unwrap()
        }) {
            return Ok(best);
        }
        bound *= 2.0;
    }
    Err(CubicError::SearchExhausted("no short vector found".into()))
}

fn t2_value(field: &CubicField, e: &Elem) -> f64 {
    let s1 = field.embed_real(e);
    let (re, im) = field.embed_complex(e);
    s1 * s1 + 2.0 * (re * re + im * im)
}

/// Is the ideal principal? An ideal of norm n is principal iff it contains
/// an element of norm ±n. Any generator has an associate whose real-place
/// logarithm sits within R/2 of the balanced value (R the fundamental
/// regulator), so the spread is covered by unit-twisted quadratic forms
/// w1 = e^(-2t), w2 = e^t in slices of width 1; each slice needs only a
/// constant-volume enumeration.
pub fn is_principal(field: &CubicField, ideal: &CubicIdeal) -> Result<bool, CubicError> {
    let n = ideal.norm();
    let reg = field.fundamental_unit()?.regulator(field);
    let nf = n.to_f64().expect("ideal norm fits f64");
    let half_width = 0.5f64;
    let slices = ((reg / 2.0) / half_width).ceil() as i64;
    if slices > 400 {
        return Err(CubicError::SearchExhausted(format!(
            "regulator {reg:.2} needs more than 400 principality slices"
        )));
    }
    // Within a slice |t - t_j| <= 1/2 the twisted form is bounded by
    // n^(2/3) (e^1 + 2 e^(1/2)).
    let slice_bound = nf.powf(2.0 / 3.0)
        * ((2.0 * half_width).exp() + 2.0 * half_width.exp())
        * (1.0 + 1e-7);
    for j in -slices..=slices {
        let t = j as f64 * half_width;
        let g = gram_weighted(field, ideal, (-2.0 * t).exp(), t.exp());
        let cands = enumerate_with_gram(ideal, g, slice_bound, 2_000_000)?;
        for v in cands {
            if field.elem_norm(&v).abs() == n {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Same ideal class? I ~ J iff I * (N(J) J^{-1}) is principal.
fn same_class(field: &CubicField, i: &CubicIdeal, j: &CubicIdeal) -> Result<bool, CubicError> {
    if i == j {
        return Ok(true);
    }
    let prod = ideal_mul(field, i, &complement(field, j));
    is_principal(field, &prod)
}

/// Small-norm representative of the inverse class: ((alpha) : I) for a
/// shortest alpha in I. Applying it twice lands back in the class of I.
fn reduce_once(field: &CubicField, ideal: &CubicIdeal) -> Result<CubicIdeal, CubicError> {
    let alpha = shortest_vector(field, ideal)?;
    let alpha_ideal = ideal_from_generators(field, &[alpha]);
    let out = ideal_mul(field, &alpha_ideal, &complement(field, ideal));
    Ok(out.divide_scalar(&ideal.norm()))
}

fn reduce_class_rep(field: &CubicField, ideal: &CubicIdeal) -> Result<CubicIdeal, CubicError> {
    reduce_once(field, &reduce_once(field, ideal)?)
}

/// Minkowski bound for a cubic field with one complex place:
/// (4/pi) (3!/3^3) sqrt|d| = (8 / 9 pi) sqrt|d|.
pub fn minkowski_bound(disc: &Integer) -> u64 {
    let d = disc.abs().to_f64().expect("bounded discriminant");
    ((4.0 / std::f64::consts::PI) * (2.0 / 9.0) * d.sqrt()).floor() as u64
}

fn class_number_cubic_uncached(field: &CubicField) -> Result<u64, CubicError> {
    if field.disc.abs() > Integer::from(100_000) {
        return Err(CubicError::OutOfRange(
            "class numbers supported for |disc| <= 10^5".into(),
        ));
    }
    let mb = minkowski_bound(&field.disc);
    for &q in &field.index_primes {
        if q <= mb {
            return Err(CubicError::IndexObstruction(q));
        }
    }
    // Prime ideals of norm below the Minkowski bound generate the class group.
    let mut gens = Vec::new();
    for q in arith::primes_in_range(2, mb) {
        for (gpoly, _mult) in factor_cubic_mod_p(&field.poly, q) {
            let deg = (gpoly.len() - 1) as u32;
            let norm = (q as u128).pow(deg);
            if norm <= mb as u128 {
                gens.push(prime_ideal(field, q, &gpoly));
            }
        }
    }
    let one = CubicIdeal::scalar(field, &Integer::from(1));
    let mut reps: Vec<CubicIdeal> = vec![one.clone()];
    let mut queue: Vec<CubicIdeal> = vec![one];
    while let Some(r) = queue.pop() {
        for g in &gens {
            let prod = ideal_mul(field, &r, g);
            let cand = reduce_class_rep(field, &prod)?;
            let mut known = false;
            for rep in &reps {
                if same_class(field, &cand, rep)? {
                    known = true;
                    break;
                }
            }
            if !known {
                reps.push(cand.clone());
                queue.push(cand);
                if reps.len() > 10_000 {
                    return Err(CubicError::SearchExhausted(
                        "class group enumeration exceeded 10^4 classes".into(),
                    ));
                }
            }
        }
    }
    Ok(reps.len() as u64)
}

/// Class number of the cubic field (Minkowski enumeration; errors if an
/// index prime sits below the bound).
pub fn class_number_cubic(field: &CubicField) -> Result<u64, CubicError> {
    field.class_number()
}

// --- p-rationality ----------------------------------------------------------

/// Absolute p-adic precision used for the Fermat quotients (the criterion
/// itself needs mod p^2; one extra digit of margin plus the series guard).
const PRATIONAL_PREC: u32 = 4;

/// Fermat-quotient vector of a unit: for each prime above p with residue
/// degree f, the coordinates of log(e^(p^f - 1)) / p mod p; concatenated
/// over the primes in factor order.
fn fermat_quotient_vector(
    field: &CubicField,
    p: u64,
    unit: &Elem,
) -> Result<Vec<u64>, CubicError> {
    let factors = factor_cubic_mod_p(&field.poly, p);
    debug_assert_eq!(
        factors.iter().map(|(g, e)| (g.len() - 1) as u32 * e).sum::<u32>(),
        3,
        "local degrees must sum to 3"
    );
    let modulus = BigInt::from(p).pow(PRATIONAL_PREC);
    let mut vector = Vec::with_capacity(3);
    // Hensel data: lift each local factor of f to p^PRATIONAL_PREC.
    let linear_roots: Vec<BigInt> = factors
        .iter()
        .filter(|(g, _)| g.len() == 2)
        .map(|(g, _)| hensel_root(&field.poly, p, (p - g[0] % p) % p, PRATIONAL_PREC))
        .collect();
    let mut root_iter = linear_roots.iter();
    for (g, _) in &factors {
        let deg = (g.len() - 1) as u32;
        let ring = match deg {
            1 => {
                let root = root_iter.next().unwrap();
                // modulus x - root: non-leading coefficient is -root.
                let m0 = (-root).mod_floor(&modulus).to_biguint().unwrap();
                UnramifiedRing::new(p, 1, PRATIONAL_PREC, vec![m0])?
            }
            2 => {
                // f = (x - a)(x^2 + (c2 + a) x + (c1 + c2 a + a^2)) for the
                // lifted root a of the complementary linear factor.
                let a = linear_roots
                    .first()
                    .expect("a quadratic factor forces a linear one")
                    .clone();
                let q1 = (&field.poly.c2 + &a).mod_floor(&modulus);
                let q0 = (&field.poly.c1 + &field.poly.c2 * &a + &a * &a).mod_floor(&modulus);
                UnramifiedRing::new(
                    p,
                    2,
                    PRATIONAL_PREC,
                    vec![q0.to_biguint().unwrap(), q1.to_biguint().unwrap()],
                )?
            }
            3 => {
                let coeffs = [&field.poly.c0, &field.poly.c1, &field.poly.c2]
                    .map(|c| c.mod_floor(&modulus).to_biguint().unwrap());
                UnramifiedRing::new(p, 3, PRATIONAL_PREC, coeffs.to_vec())?
            }
            _ => unreachable!(),
        };
        // Embed theta -> ring generator, evaluate the unit, and take the
        // quotient log(eps^(p^f - 1)) / p (a principal unit's log, so the
        // ring log's internal normalization is the identity on it).
        let gen = ring.generator();
        let gen2 = ring.mul(&gen, &gen);
        let coeff = |c: &Integer| ring.scalar(&c.mod_floor(&modulus).to_biguint().unwrap());
        let emb = ring.add(
            &ring.add(&coeff(&unit[0]), &ring.mul(&coeff(&unit[1]), &gen)),
            &ring.mul(&coeff(&unit[2]), &gen2),
        );
        let q_minus_1 = BigUint::from(p).pow(deg) - BigUint::from(1u32);
        let principal = ring.pow(&emb, &q_minus_1);
        let (lg, valid) = ring.iwasawa_log(&principal)?;
        debug_assert!(valid >= 2, "log must retain two digits");
        let shifted = ring.exact_shift_down(&lg, 1);
        for c in &shifted.coords {
            vector.push((c % p).to_u64().unwrap());
        }
    }
    Ok(vector)
}

fn hensel_root(poly: &CubicPoly, p: u64, root_mod_p: u64, digits: u32) -> BigInt {
    let mut s = BigInt::from(root_mod_p % p);
    let mut known = 1u32;
    while known < digits {
        let next = (known * 2).min(digits);
        let m = BigInt::from(p).pow(next);
        let f = poly.eval(&s).mod_floor(&m);
        // f'(x) = 3x^2 + 2 c2 x + c1
        let deriv = (BigInt::from(3) * &s * &s + BigInt::from(2) * &poly.c2 * &s + &poly.c1)
            .mod_floor(&m);
        let inv = deriv.extended_gcd(&m).x.mod_floor(&m);
        s = (&s - f * inv).mod_floor(&m);
        known = next;
    }
    debug_assert!(poly.eval(&s).mod_floor(&BigInt::from(p).pow(digits)).is_zero());
    s
}

/// p-rationality of the cubic field for p >= 5 coprime to 6 disc(f) and to
/// the index: Unknown when p divides the class number (the identification
/// of the p-ramified Galois group with local units needs p coprime to h);
/// otherwise Yes iff the Fermat-quotient vector of the fundamental unit is
/// nonzero mod p (rank-1 unit image stays saturated, no p-torsion).
pub fn p_rational_cubic(field: &CubicField, p: u64) -> Result<PRationality, CubicError> {
    assert!(p >= 5, "criterion requires p >= 5");
    if field.disc.is_multiple_of(&Integer::from(p)) {
        return Err(CubicError::Ramified(p));
    }
    if field.index_primes.contains(&p) {
        return Err(CubicError::IndexObstruction(p));
    }
    let h = field.class_number()?;
    if h % p == 0 {
        return Ok(PRationality::Unknown);
    }
    let unit = field.fundamental_unit()?;
    let v = fermat_quotient_vector(field, p, &unit.coords)?;
    if v.iter().any(|&c| c != 0) {
        Ok(PRationality::Yes)
    } else {
        Ok(PRationality::No)
    }
}

/// p-rationality of an imaginary quadratic field for p >= 5: the unit group
/// is torsion of order coprime to p and the pro-p part of the local units
/// is torsion-free, so p coprime to the class number suffices. Ramified p
/// and p | h fall outside the criterion and return Unknown.
pub fn p_rational_imquad(d: i64, p: u64) -> Result<PRationality, quadfield::QuadError> {
    if p < 5 || d.rem_euclid(p as i64) == 0 {
        return Ok(PRationality::Unknown);
    }
    let h = quadfield::class_number(d)?;
    if h % p == 0 {
        Ok(PRationality::Unknown)
    } else {
        Ok(PRationality::Yes)
    }
}
