//! The Iwasawa algebra O[[T]] at finite precision.
//!
//! Series are truncated at degree M with coefficients known mod ϖ^N.
//! Coefficient arithmetic is implemented for the ϖ = p case (unramified O,
//! rational-integer coefficient model, v_ϖ = v_p); the residue-field size
//! q = p^f enters the Euler characteristic, and ramified base change is
//! handled as pure invariant bookkeeping.
//!
//! An exact zero is representable symbolically, so "f(0) = 0" can be a
//! certainty rather than a precision artifact. Any operation that cannot
//! certify its postcondition at the working precision fails loudly.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as NumInteger;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::padic::pow_u;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LambdaError {
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("unsupported coefficient ring: {0}")]
    UnsupportedRing(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// The coefficient valuation ring O: residue field of size q = p^f,
/// ramification index e over Z_p, and working ϖ-adic precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffRing {
    pub p: u64,
    pub residue_degree: u32,
    pub ram_index: u32,
    pub prec: u32,
}

impl CoeffRing {
    pub fn zp(p: u64, prec: u32) -> Self {
        CoeffRing { p, residue_degree: 1, ram_index: 1, prec }
    }

    /// Residue field size q.
    pub fn q(&self) -> BigUint {
        pow_u(self.p, self.residue_degree)
    }

    fn modulus(&self) -> BigUint {
        pow_u(self.p, self.prec)
    }

    fn require_unramified(&self) -> Result<(), LambdaError> {
        if self.ram_index != 1 {
            return Err(LambdaError::UnsupportedRing(
                "series arithmetic is implemented for e = 1 (ϖ = p); use \
                 base_change_invariants for ramified bookkeeping"
                    .into(),
            ));
        }
        Ok(())
    }
}

/// One series coefficient: either symbolically zero, or a residue known
/// modulo ϖ^prec (the precision lives on the series).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coeff {
    ExactZero,
    Mod(BigUint),
}

impl Coeff {
    fn is_exact_zero(&self) -> bool {
        matches!(self, Coeff::ExactZero)
    }
}

/// A truncated power series a_0 + a_1 T + ... + a_M T^M over O.
///
/// `tail_exact` records whether coefficients beyond the truncation degree
/// are exactly zero (true for polynomials such as characteristic elements),
/// which controls how far products remain certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSeries {
    ring: CoeffRing,
    coeffs: Vec<Coeff>,
    tail_exact: bool,
}

/// Elementary-divisor data of a finitely generated torsion module:
/// ϖ-power multiplicities and (distinguished polynomial, multiplicity) pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureData {
    pub mu_parts: Vec<u32>,
    pub poly_parts: Vec<(Vec<BigInt>, u32)>,
}

/// χ(Γ, D) = q^{v(f(0))} when f(0) is a certified nonzero; `Undefined`
/// exactly when f(0) = 0 symbolically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EulerChar {
    Finite(BigUint),
    Undefined,
}

impl CharSeries {
    /// Build a series from signed integer coefficients. Zeros are taken as
    /// exact (the constructor is the symbolic entry point); everything else
    /// is reduced mod ϖ^prec.
    pub fn from_integer_coeffs(ring: CoeffRing, coeffs: &[BigInt]) -> Result<Self, LambdaError> {
        ring.require_unramified()?;
        if coeffs.is_empty() {
            return Err(LambdaError::InvalidInput("series needs at least one coefficient".into()));
        }
        let m = BigInt::from(ring.modulus());
        let coeffs = coeffs
            .iter()
            .map(|c| {
                if c.is_zero() {
                    Coeff::ExactZero
                } else {
                    Coeff::Mod(c.mod_floor(&m).to_biguint().unwrap())
                }
            })
            .collect();
        Ok(CharSeries { ring, coeffs, tail_exact: true })
    }

    pub fn from_i64_coeffs(ring: CoeffRing, coeffs: &[i64]) -> Result<Self, LambdaError> {
        let v: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        CharSeries::from_integer_coeffs(ring, &v)
    }

    /// Build from residues carrying their own "known modulo ϖ^k"; `None`
    /// marks an exact zero. The series precision is the minimum k.
    pub fn from_residues(
        ring: CoeffRing,
        entries: &[(BigInt, Option<u32>)],
    ) -> Result<Self, LambdaError> {
        ring.require_unramified()?;
        if entries.is_empty() {
            return Err(LambdaError::InvalidInput("series needs at least one coefficient".into()));
        }
        let mut prec = ring.prec;
        for (_, known) in entries {
            if let Some(k) = known {
                if *k == 0 {
                    return Err(LambdaError::InvalidInput("coefficient known to 0 digits".into()));
                }
                prec = prec.min(*k);
            }
        }
        let mut ring = ring;
        ring.prec = prec;
        let m = BigInt::from(ring.modulus());
        let coeffs = entries
            .iter()
            .map(|(c, known)| match known {
                None => {
                    if c.is_zero() {
                        Coeff::ExactZero
                    } else {
                        Coeff::Mod(c.mod_floor(&m).to_biguint().unwrap())
                    }
                }
                Some(_) => Coeff::Mod(c.mod_floor(&m).to_biguint().unwrap()),
            })
            .collect();
        Ok(CharSeries { ring, coeffs, tail_exact: false })
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    /// Truncation degree M.
    pub fn truncation_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Coeff {
        self.coeffs.get(i).unwrap_or(&Coeff::ExactZero)
    }

    /// ϖ-valuation of the i-th coefficient: `None` for an exact zero
    /// (valuation infinity), `Err` when indistinguishable from zero.
    pub fn coeff_valuation(&self, i: usize) -> Result<Option<u32>, LambdaError> {
        match self.coeff(i) {
            Coeff::ExactZero => Ok(None),
            Coeff::Mod(r) => {
                if r.is_zero() {
                    return Err(LambdaError::PrecisionExhausted(format!(
                        "coefficient {i} is 0 mod ϖ^{}",
                        self.ring.prec
                    )));
                }
                let p = BigUint::from(self.ring.p);
                let mut v = 0u32;
                let mut t = r.clone();
                while (&t % &p).is_zero() {
                    t /= &p;
                    v += 1;
                }
                Ok(Some(v))
            }
        }
    }

    fn modulus(&self) -> BigUint {
        self.ring.modulus()
    }

    /// Product of two series. The certified truncation degree is the minimum
    /// of the factors' unless both tails are exact, in which case the full
    /// polynomial product is returned.
    pub fn mul(&self, other: &CharSeries) -> CharSeries {
        assert_eq!(self.ring.p, other.ring.p, "mismatched coefficient rings");
        let prec = self.ring.prec.min(other.ring.prec);
        let mut ring = self.ring.clone();
        ring.prec = prec;
        let m = pow_u(ring.p, prec);
        let (da, db) = (self.coeffs.len() - 1, other.coeffs.len() - 1);
        let tail_exact = self.tail_exact && other.tail_exact;
        // An exact polynomial factor does not limit the certified degree of
        // the product; a truncated factor does.
        let out_deg = match (self.tail_exact, other.tail_exact) {
            (true, true) => da + db,
            (true, false) => db,
            (false, true) => da,
            (false, false) => da.min(db),
        };
        let mut out = vec![Coeff::ExactZero; out_deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > out_deg {
                    break;
                }
                if b.is_exact_zero() {
                    continue;
                }
                let (Coeff::Mod(x), Coeff::Mod(y)) = (a, b) else { unreachable!() };
                let prod = x * y % &m;
                out[i + j] = match &out[i + j] {
                    Coeff::ExactZero => Coeff::Mod(prod),
                    Coeff::Mod(acc) => Coeff::Mod((acc + prod) % &m),
                };
            }
        }
        // Reduce stored residues to the common precision.
        for c in out.iter_mut() {
            if let Coeff::Mod(r) = c {
                *r = &*r % &m;
            }
        }
        CharSeries { ring, coeffs: out, tail_exact }
    }

    /// Multiply by ϖ^k.
    pub fn scale_by_pi_power(&self, k: u32) -> CharSeries {
        let m = self.modulus();
        let pk = pow_u(self.ring.p, k);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c {
                Coeff::ExactZero => Coeff::ExactZero,
                Coeff::Mod(r) => Coeff::Mod(r * &pk % &m),
            })
            .collect();
        CharSeries { ring: self.ring.clone(), coeffs, tail_exact: self.tail_exact }
    }

    /// Exact division by ϖ^k; every coefficient must be certifiably
    /// divisible. Precision drops by k.
    fn exact_divide_pi_power(&self, k: u32) -> Result<CharSeries, LambdaError> {
        if k == 0 {
            return Ok(self.clone());
        }
        if self.ring.prec <= k {
            return Err(LambdaError::PrecisionExhausted(format!(
                "dividing by ϖ^{k} leaves no certified digits"
            )));
        }
        let pk = pow_u(self.ring.p, k);
        let mut ring = self.ring.clone();
        ring.prec -= k;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c {
                Coeff::ExactZero => Ok(Coeff::ExactZero),
                Coeff::Mod(r) => {
                    if (r % &pk).is_zero() {
                        Ok(Coeff::Mod(r / &pk))
                    } else {
                        Err(LambdaError::InvalidInput(format!(
                            "coefficient not divisible by ϖ^{k}"
                        )))
                    }
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(CharSeries { ring, coeffs, tail_exact: self.tail_exact })
    }

    fn residue_of(&self, i: usize) -> BigUint {
        match self.coeff(i) {
            Coeff::ExactZero => BigUint::zero(),
            Coeff::Mod(r) => r.clone(),
        }
    }

    /// Compare to another series coefficientwise mod ϖ^k.
    fn congruent_to(&self, other: &CharSeries, k: u32) -> bool {
        let m = pow_u(self.ring.p, k);
        let deg = self.coeffs.len().max(other.coeffs.len());
        (0..deg).all(|i| self.residue_of(i) % &m == other.residue_of(i) % &m)
    }
}

/// μ = min coefficient valuation, λ = least index attaining it.
///
/// Fails with `PrecisionExhausted` when every coefficient is
/// indistinguishable from zero at the working precision.
pub fn weierstrass_invariants(f: &CharSeries) -> Result<(u32, u32), LambdaError> {
    let mut mu: Option<u32> = None;
    let mut lambda = 0u32;
    for i in 0..=f.truncation_degree() {
        // Exact zeros (infinite valuation) and below-precision coefficients
        // cannot beat a determinate minimum.
        if let Ok(Some(v)) = f.coeff_valuation(i) {
            if mu.map_or(true, |m| v < m) {
                mu = Some(v);
                lambda = i as u32;
            }
        }
    }
    match mu {
        Some(m) => Ok((m, lambda)),
        None => Err(LambdaError::PrecisionExhausted(
            "no coefficient is distinguishable from zero".into(),
        )),
    }
}

/// Guard digits in T required between λ and the truncation degree.
const PREPARE_DEGREE_GUARD: usize = 8;

/// Weierstrass preparation f = ϖ^μ · g · u with g distinguished of degree λ
/// and u a unit, by Weierstrass division of T^λ by ϖ^{-μ} f.
///
/// A degree-M truncation of f pins the distinguished factor down only to
/// roughly (M + 1 - λ)/λ ϖ-adic digits: the unknown tail of the unit factor
/// feeds back into g, gaining a power of ϖ for every λ degrees it travels.
/// The returned series therefore carry precision
/// min(N - μ, floor((M + 1 - λ)/λ)), and the factorization is verified by
/// re-expansion at that precision before returning.
pub fn weierstrass_prepare(
    f: &CharSeries,
) -> Result<(u32, CharSeries, CharSeries), LambdaError> {
    let (mu, lambda) = weierstrass_invariants(f)?;
    let lam = lambda as usize;
    if lam + PREPARE_DEGREE_GUARD >= f.coeffs.len() {
        return Err(LambdaError::PrecisionExhausted(format!(
            "λ = {lambda} is too close to the truncation degree {} (guard {})",
            f.truncation_degree(),
            PREPARE_DEGREE_GUARD
        )));
    }
    let f0 = f.exact_divide_pi_power(mu)?;
    let n_prec = f0.ring.prec;
    let deg = f0.truncation_degree();

    // Split f0 = A + T^λ b with A of degree < λ (coefficients all divisible
    // by ϖ) and b a unit series.
    let a_low: Vec<BigUint> = (0..lam).map(|i| f0.residue_of(i)).collect();
    let b: Vec<BigUint> = (lam..=deg).map(|i| f0.residue_of(i)).collect();
    let m = pow_u(f0.ring.p, n_prec);
    let p = BigUint::from(f0.ring.p);
    debug_assert!(!(&b[0] % &p).is_zero(), "b(0) must be a unit");
    for c in &a_low {
        if !(c % &p).is_zero() {
            return Err(LambdaError::PrecisionExhausted(
                "low coefficients are not ϖ-divisible; invariants were misread".into(),
            ));
        }
    }
    let b_inv = invert_unit_series(&b, &m, &p, n_prec)?;

    // Weierstrass division of h = T^λ by f0: h = q f0 + r, deg r < λ.
    // Iterate rho <- rho_low - (rho_high / b) A. The part of rho in degrees
    // >= λ gains a power of ϖ each round because A ≡ 0 (mod ϖ), so after
    // n_prec rounds only the remainder (degree < λ) survives.
    let mut q = vec![BigUint::zero(); deg + 1];
    let mut rho = vec![BigUint::zero(); deg + 1];
    rho[lam] = BigUint::one();
    let mut converged = false;
    for _ in 0..=n_prec {
        if rho[lam..].iter().all(|c| c.is_zero()) {
            converged = true;
            break;
        }
        let rho_high: Vec<BigUint> = rho[lam..].to_vec();
        let rho_low: Vec<BigUint> = rho[..lam].to_vec();
        let t = series_mul_trunc(&rho_high, &b_inv, deg + 1 - lam, &m);
        for (i, c) in t.iter().enumerate() {
            q[i] = (&q[i] + c) % &m;
        }
        let ta = series_mul_trunc(&t, &a_low, deg + 1, &m);
        let mut next = vec![BigUint::zero(); deg + 1];
        for (i, c) in rho_low.iter().enumerate() {
            next[i] = c.clone();
        }
        for (i, c) in ta.iter().enumerate() {
            if i < next.len() {
                next[i] = ((&next[i] + &m) - c) % &m;
            }
        }
        rho = next;
    }
    if !converged {
        return Err(LambdaError::PrecisionExhausted(
            "Weierstrass division did not converge at this precision".into(),
        ));
    }
    // r = T^λ - q f0 restricted to degrees < λ; then g = T^λ - r = q f0.
    let f0_res: Vec<BigUint> = (0..=deg).map(|i| f0.residue_of(i)).collect();
    let qf = series_mul_trunc(&q, &f0_res, deg + 1, &m);
    // g must be distinguished: monic of degree λ with ϖ-divisible lower part.
    let mut g_coeffs: Vec<BigUint> = qf[..=lam].to_vec();
    if g_coeffs[lam] != BigUint::one() {
        return Err(LambdaError::PrecisionExhausted(
            "prepared polynomial is not monic at this precision".into(),
        ));
    }
    for c in &qf[lam + 1..] {
        if !c.is_zero() {
            return Err(LambdaError::PrecisionExhausted(
                "high coefficients of q·f did not vanish".into(),
            ));
        }
    }
    for c in &g_coeffs[..lam] {
        if !(c % &p).is_zero() {
            return Err(LambdaError::PrecisionExhausted(
                "prepared polynomial is not distinguished".into(),
            ));
        }
    }
    // u = q^{-1}: q is a unit series since g = q f0 with g, f0 of equal
    // invariants (0, λ).
    let u_coeffs = invert_unit_series(&q, &m, &p, n_prec)?;

    // Digits actually determined by the truncation degree.
    let certified = if lam == 0 {
        n_prec
    } else {
        (((deg + 1 - lam) / lam) as u32).min(n_prec)
    };
    if certified == 0 {
        return Err(LambdaError::PrecisionExhausted(format!(
            "truncation degree {deg} certifies no digits of a degree-{lam} factor"
        )));
    }
    let mut ring = f0.ring.clone();
    ring.prec = certified;
    let out_mod = pow_u(ring.p, certified);
    let g = CharSeries {
        ring: ring.clone(),
        coeffs: g_coeffs
            .drain(..)
            .map(|r| {
                let r = r % &out_mod;
                if r.is_zero() { Coeff::ExactZero } else { Coeff::Mod(r) }
            })
            .collect(),
        tail_exact: true,
    };
    // The unit's coefficient u_j is determined to ~(M - λ - j)/λ + 1 digits,
    // so the uniform claim only covers degrees up to M - λ·certified.
    let u_deg = deg.saturating_sub(lam * certified as usize);
    let u = CharSeries {
        ring,
        coeffs: u_coeffs
            .into_iter()
            .take(u_deg + 1)
            .map(|r| {
                let r = r % &out_mod;
                if r.is_zero() { Coeff::ExactZero } else { Coeff::Mod(r) }
            })
            .collect(),
        tail_exact: false,
    };
    // Verify by re-expansion against the ϖ^μ-stripped input: g u ≡ f/ϖ^μ
    // at the certified precision.
    let expanded = g.mul(&u);
    let trunc = u.truncation_degree();
    let f0_trunc = CharSeries {
        ring: f0.ring.clone(),
        coeffs: f0.coeffs[..=trunc.min(f0.truncation_degree())].to_vec(),
        tail_exact: false,
    };
    if !expanded.congruent_to(&f0_trunc, certified) {
        return Err(LambdaError::PrecisionExhausted(
            "re-expansion check failed; factorization not certified".into(),
        ));
    }
    Ok((mu, g, u))
}

fn series_mul_trunc(a: &[BigUint], b: &[BigUint], len: usize, m: &BigUint) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if i >= len || x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if y.is_zero() {
                continue;
            }
            out[i + j] = (&out[i + j] + x * y) % m;
        }
    }
    out
}

/// Inverse of a unit power series mod (ϖ^prec, T^len) by Newton iteration.
fn invert_unit_series(
    b: &[BigUint],
    m: &BigUint,
    p: &BigUint,
    _prec: u32,
) -> Result<Vec<BigUint>, LambdaError> {
    if b.is_empty() || (&b[0] % p).is_zero() {
        return Err(LambdaError::InvalidInput("series is not a unit".into()));
    }
    let len = b.len();
    let c0_inv = modinv_biguint(&b[0], m)?;
    let mut z = vec![BigUint::zero(); len];
    z[0] = c0_inv;
    let mut known = 1usize;
    while known < len {
        let next = (known * 2).min(len);
        // z <- z (2 - b z) mod T^next
        let bz = series_mul_trunc(&b[..next.min(b.len())], &z, next, m);
        let mut t = vec![BigUint::zero(); next];
        for (i, c) in bz.iter().enumerate() {
            t[i] = ((m + if i == 0 { BigUint::from(2u32) } else { BigUint::zero() }) - c) % m;
        }
        let zn = series_mul_trunc(&z, &t, next, m);
        z[..next].clone_from_slice(&zn);
        known = next;
    }
    Ok(z)
}

fn modinv_biguint(a: &BigUint, m: &BigUint) -> Result<BigUint, LambdaError> {
    // Extended Euclid on BigInt.
    let a = BigInt::from(a.clone());
    let m_int = BigInt::from(m.clone());
    let ext = a.extended_gcd(&m_int);
    if !ext.gcd.is_one() {
        return Err(LambdaError::InvalidInput("not invertible".into()));
    }
    Ok(ext.x.mod_floor(&m_int).to_biguint().unwrap())
}

/// The characteristic element ∏ ϖ^{μ_i} × ∏ g_j^{λ_j} of structure data.
pub fn characteristic_element(
    data: &StructureData,
    ring: &CoeffRing,
) -> Result<CharSeries, LambdaError> {
    ring.require_unramified()?;
    let p = BigInt::from(ring.p);
    for (g, mult) in &data.poly_parts {
        if *mult == 0 {
            return Err(LambdaError::InvalidInput("polynomial multiplicity must be >= 1".into()));
        }
        if g.len() < 2 {
            return Err(LambdaError::InvalidInput("distinguished polynomial must have degree >= 1".into()));
        }
        if g.last().map(|c| !c.is_one()).unwrap_or(true) {
            return Err(LambdaError::InvalidInput("distinguished polynomial must be monic".into()));
        }
        for c in &g[..g.len() - 1] {
            if !c.is_multiple_of(&p) {
                return Err(LambdaError::InvalidInput(
                    "non-leading coefficients must be divisible by ϖ".into(),
                ));
            }
        }
    }
    for mu in &data.mu_parts {
        if *mu == 0 {
            return Err(LambdaError::InvalidInput("μ parts must be >= 1".into()));
        }
    }
    let mut acc = CharSeries::from_i64_coeffs(ring.clone(), &[1])?;
    for (g, mult) in &data.poly_parts {
        let gs = CharSeries::from_integer_coeffs(ring.clone(), g)?;
        for _ in 0..*mult {
            acc = acc.mul(&gs);
        }
    }
    let total_mu: u32 = data.mu_parts.iter().sum();
    Ok(acc.scale_by_pi_power(total_mu))
}

/// χ(Γ, D) = |f(0)|_ϖ^{-1} = q^{v(a_0)}; `Undefined` iff a_0 = 0 exactly.
pub fn euler_characteristic(f: &CharSeries) -> Result<EulerChar, LambdaError> {
    match f.coeff_valuation(0) {
        Ok(None) => Ok(EulerChar::Undefined),
        Ok(Some(v)) => Ok(EulerChar::Finite(f.ring.q().pow(v))),
        Err(e) => Err(e),
    }
}

/// Order of vanishing at T = 0: the least index with a certified nonzero
/// coefficient; exact zeros are skipped, indeterminate ones abort.
pub fn vanishing_order(f: &CharSeries) -> Result<u32, LambdaError> {
    for i in 0..=f.truncation_degree() {
        match f.coeff(i) {
            Coeff::ExactZero => continue,
            Coeff::Mod(r) => {
                if r.is_zero() {
                    return Err(LambdaError::PrecisionExhausted(format!(
                        "coefficient {i} indistinguishable from zero"
                    )));
                }
                return Ok(i as u32);
            }
        }
    }
    Err(LambdaError::PrecisionExhausted(
        "series is zero at the working precision".into(),
    ))
}

/// Invariants after extending scalars to a valuation ring with relative
/// ramification index e: (μ, λ) -> (e μ, λ).
pub fn base_change_invariants(mu: u32, lambda: u32, e_rel: u32) -> (u32, u32) {
    assert!(e_rel >= 1);
    (e_rel * mu, lambda)
}

// --- serialization (CLI `charseries` subcommand) ---

/// JSON form: coefficients as (decimal string, digits-known) pairs, with
/// `null` digits marking symbolic exactness.
#[derive(Debug, Serialize, Deserialize)]
pub struct CharSeriesJson {
    pub p: u64,
    #[serde(default = "default_one")]
    pub residue_degree: u32,
    pub coeffs: Vec<(String, Option<u32>)>,
}

fn default_one() -> u32 {
    1
}

impl CharSeries {
    pub fn to_json(&self) -> CharSeriesJson {
        CharSeriesJson {
            p: self.ring.p,
            residue_degree: self.ring.residue_degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| match c {
                    Coeff::ExactZero => ("0".to_string(), None),
                    Coeff::Mod(r) => (r.to_string(), Some(self.ring.prec)),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &CharSeriesJson) -> Result<Self, LambdaError> {
        if !crate::arith::is_prime_u64(json.p) {
            return Err(LambdaError::InvalidInput(format!("{} is not prime", json.p)));
        }
        let entries: Vec<(BigInt, Option<u32>)> = json
            .coeffs
            .iter()
            .map(|(s, known)| {
                s.parse::<BigInt>()
                    .map(|v| (v, *known))
                    .map_err(|e| LambdaError::InvalidInput(format!("bad coefficient {s}: {e}")))
            })
            .collect::<Result<_, _>>()?;
        let default_prec = entries
            .iter()
            .filter_map(|(_, k)| *k)
            .min()
            .unwrap_or(12);
        let ring = CoeffRing {
            p: json.p,
            residue_degree: json.residue_degree,
            ram_index: 1,
            prec: default_prec,
        };
        CharSeries::from_residues(ring, &entries)
    }
}
