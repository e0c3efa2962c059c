//! Finite-precision p-adic arithmetic: Z_p and its unramified extensions of
//! degree at most 3, Teichmüller lifts, norms to the base, and the Iwasawa
//! logarithm with the branch fixed by log p := 0.
//!
//! Every value carries explicit precision. An operation that cannot certify
//! its answer at the available precision returns `PrecisionExhausted` rather
//! than guessing; p = 2 and p = 3 are rejected by the logarithm (every
//! criterion downstream assumes p >= 5).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as NumInteger;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PadicError {
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("p = {0} is not supported here (log requires p >= 5)")]
    UnsupportedPrime(u64),
    #[error("not a unit: {0}")]
    NotAUnit(String),
}

/// A p-adic integer at finite precision.
///
/// `Nonzero` stores the valuation together with the unit part known modulo
/// p^rel_prec, so the value itself is known modulo p^(val + rel_prec).
/// `BelowPrecision` records a value indistinguishable from zero: all that is
/// known is divisibility by p^abs_prec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicNumber {
    p: u64,
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    ExactZero,
    Nonzero { val: u32, unit: BigUint, rel_prec: u32 },
    BelowPrecision { abs_prec: u32 },
}

pub(crate) fn pow_u(p: u64, e: u32) -> BigUint {
    BigUint::from(p).pow(e)
}

impl PAdicNumber {
    pub fn exact_zero(p: u64) -> Self {
        PAdicNumber { p, repr: Repr::ExactZero }
    }

    /// Classify a residue known modulo p^abs_prec.
    pub fn from_residue(value: &BigInt, p: u64, abs_prec: u32) -> Self {
        assert!(abs_prec >= 1);
        let m = BigInt::from(pow_u(p, abs_prec));
        let mut r = value.mod_floor(&m).to_biguint().unwrap();
        if r.is_zero() {
            return PAdicNumber { p, repr: Repr::BelowPrecision { abs_prec } };
        }
        let bp = BigUint::from(p);
        let mut val = 0u32;
        while (&r % &bp).is_zero() {
            r /= &bp;
            val += 1;
        }
        PAdicNumber {
            p,
            repr: Repr::Nonzero { val, unit: r, rel_prec: abs_prec - val },
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::ExactZero)
    }

    /// `Ok(None)` means valuation +infinity (exact zero).
    pub fn valuation(&self) -> Result<Option<u32>, PadicError> {
        match &self.repr {
            Repr::ExactZero => Ok(None),
            Repr::Nonzero { val, .. } => Ok(Some(*val)),
            Repr::BelowPrecision { abs_prec } => Err(PadicError::PrecisionExhausted(format!(
                "value is 0 mod p^{abs_prec}; valuation undetermined"
            ))),
        }
    }

    /// Certified lower bound on the valuation.
    pub fn valuation_at_least(&self, k: u32) -> bool {
        match &self.repr {
            Repr::ExactZero => true,
            Repr::Nonzero { val, .. } => *val >= k,
            Repr::BelowPrecision { abs_prec } => *abs_prec >= k,
        }
    }

    /// Unit part with the number of digits it is known to.
    pub fn unit_part(&self) -> Option<(&BigUint, u32)> {
        match &self.repr {
            Repr::Nonzero { unit, rel_prec, .. } => Some((unit, *rel_prec)),
            _ => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.repr, Repr::Nonzero { val: 0, .. })
    }

    /// The value reduced mod p^k, when k digits are certified.
    pub fn residue(&self, k: u32) -> Result<BigUint, PadicError> {
        match &self.repr {
            Repr::ExactZero => Ok(BigUint::zero()),
            Repr::BelowPrecision { abs_prec } => {
                if k <= *abs_prec {
                    Ok(BigUint::zero())
                } else {
                    Err(PadicError::PrecisionExhausted(format!(
                        "only {abs_prec} digits known, {k} requested"
                    )))
                }
            }
            Repr::Nonzero { val, unit, rel_prec } => {
                if k <= val + rel_prec {
                    Ok(pow_u(self.p, *val) * unit % pow_u(self.p, k))
                } else {
                    Err(PadicError::PrecisionExhausted(format!(
                        "only {} digits known, {k} requested",
                        val + rel_prec
                    )))
                }
            }
        }
    }

    pub fn mul(&self, other: &PAdicNumber) -> PAdicNumber {
        assert_eq!(self.p, other.p);
        let p = self.p;
        match (&self.repr, &other.repr) {
            (Repr::ExactZero, _) | (_, Repr::ExactZero) => PAdicNumber::exact_zero(p),
            (Repr::BelowPrecision { abs_prec }, Repr::Nonzero { val, .. })
            | (Repr::Nonzero { val, .. }, Repr::BelowPrecision { abs_prec }) => PAdicNumber {
                p,
                repr: Repr::BelowPrecision { abs_prec: abs_prec + val },
            },
            (Repr::BelowPrecision { abs_prec: a }, Repr::BelowPrecision { abs_prec: b }) => {
                PAdicNumber { p, repr: Repr::BelowPrecision { abs_prec: a + b } }
            }
            (
                Repr::Nonzero { val: v1, unit: u1, rel_prec: r1 },
                Repr::Nonzero { val: v2, unit: u2, rel_prec: r2 },
            ) => {
                let rel = (*r1).min(*r2);
                let unit = u1 * u2 % pow_u(p, rel);
                PAdicNumber { p, repr: Repr::Nonzero { val: v1 + v2, unit, rel_prec: rel } }
            }
        }
    }

    /// Divide by p^k (shift the valuation down). Errors if the valuation is
    /// not certified to be at least k.
    pub fn shift_down(&self, k: u32) -> Result<PAdicNumber, PadicError> {
        match &self.repr {
            Repr::ExactZero => Ok(self.clone()),
            Repr::BelowPrecision { abs_prec } => {
                if *abs_prec > k {
                    Ok(PAdicNumber {
                        p: self.p,
                        repr: Repr::BelowPrecision { abs_prec: abs_prec - k },
                    })
                } else {
                    Err(PadicError::PrecisionExhausted(
                        "cannot certify divisibility for the shift".into(),
                    ))
                }
            }
            Repr::Nonzero { val, unit, rel_prec } => {
                if *val >= k {
                    Ok(PAdicNumber {
                        p: self.p,
                        repr: Repr::Nonzero { val: val - k, unit: unit.clone(), rel_prec: *rel_prec },
                    })
                } else {
                    Err(PadicError::NotAUnit(format!(
                        "valuation {val} is smaller than the shift {k}"
                    )))
                }
            }
        }
    }
}

/// The Teichmüller lift: the unique (p-1)-st root of unity congruent to
/// `a` mod p, computed by iterating x -> x^p until stable.
///
/// Panics if p is not prime or a ≡ 0 mod p.
pub fn teichmueller(a: u64, p: u64, abs_prec: u32) -> PAdicNumber {
    assert!(crate::arith::is_prime_u64(p), "teichmueller: p must be prime");
    assert!(a % p != 0, "teichmueller: a must be a unit mod p");
    let m = pow_u(p, abs_prec);
    let mut x = BigUint::from(a % p);
    for _ in 0..=abs_prec + 1 {
        let next = x.modpow(&BigUint::from(p), &m);
        if next == x {
            break;
        }
        x = next;
    }
    debug_assert_eq!(
        x.modpow(&BigUint::from(p), &m),
        x,
        "Teichmüller iteration did not stabilize"
    );
    PAdicNumber { p, repr: Repr::Nonzero { val: 0, unit: x, rel_prec: abs_prec } }
}

/// An unramified extension of Z_p of residue degree f in {1, 2, 3}, modeled
/// as Z[x] / (p^abs_prec, m(x)) for a monic lift m of a polynomial
/// irreducible mod p. Elements are coordinate vectors in the power basis.
#[derive(Debug, Clone)]
pub struct UnramifiedRing {
    p: u64,
    f: u32,
    abs_prec: u32,
    /// Non-leading coefficients of the monic modulus m(x), lowest first.
    modulus: Vec<BigUint>,
    /// sigma(theta): the Hensel-lifted Frobenius image of the generator.
    frob_gen: Vec<BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalElement {
    pub coords: Vec<BigUint>,
}

impl UnramifiedRing {
    /// Build the ring from a monic modulus given by its non-leading
    /// coefficients (lowest first, length f), irreducible mod p.
    pub fn new(p: u64, f: u32, abs_prec: u32, modulus: Vec<BigUint>) -> Result<Self, PadicError> {
        assert!(crate::arith::is_prime_u64(p));
        assert!((1..=3).contains(&f), "residue degree must be 1, 2 or 3");
        assert_eq!(modulus.len(), f as usize);
        assert!(abs_prec >= 1);
        let m = pow_u(p, abs_prec);
        let modulus: Vec<BigUint> = modulus.into_iter().map(|c| c % &m).collect();
        // Degree 2 and 3 polynomials are irreducible mod p iff they have no
        // roots (a cubic cannot factor into irreducible quadratics alone).
        if f >= 2 {
            let mp: Vec<u64> = modulus
                .iter()
                .map(|c| (c % p).to_u64().unwrap())
                .chain(std::iter::once(1))
                .collect();
            for x in 0..p {
                if crate::arith::poly_eval_mod(&mp, x, p) == 0 {
                    return Err(PadicError::NotAUnit(format!(
                        "modulus has the root {x} mod {p}; not irreducible"
                    )));
                }
            }
        }
        let mut ring = UnramifiedRing { p, f, abs_prec, modulus, frob_gen: Vec::new() };
        ring.frob_gen = ring.lift_frobenius()?;
        Ok(ring)
    }

    /// A deterministic default modulus: the lexicographically first monic
    /// polynomial of degree f with no roots mod p.
    pub fn with_default_modulus(p: u64, f: u32, abs_prec: u32) -> Result<Self, PadicError> {
        match f {
            1 => UnramifiedRing::new(p, 1, abs_prec, vec![BigUint::zero()]),
            2 => {
                for c0 in 1..p {
                    for c1 in 0..p {
                        let cand = vec![BigUint::from(c0), BigUint::from(c1)];
                        if let Ok(r) = UnramifiedRing::new(p, 2, abs_prec, cand) {
                            return Ok(r);
                        }
                    }
                }
                unreachable!("irreducible quadratics exist mod every prime")
            }
            3 => {
                for c0 in 1..p {
                    for c1 in 0..p {
                        for c2 in 0..p {
                            let cand =
                                vec![BigUint::from(c0), BigUint::from(c1), BigUint::from(c2)];
                            if let Ok(r) = UnramifiedRing::new(p, 3, abs_prec, cand) {
                                return Ok(r);
                            }
                        }
                    }
                }
                unreachable!("irreducible cubics exist mod every prime")
            }
            _ => unreachable!(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn residue_degree(&self) -> u32 {
        self.f
    }
    pub fn abs_prec(&self) -> u32 {
        self.abs_prec
    }
    pub fn modulus_coeffs(&self) -> &[BigUint] {
        &self.modulus
    }
    fn pn(&self) -> BigUint {
        pow_u(self.p, self.abs_prec)
    }

    pub fn zero(&self) -> LocalElement {
        LocalElement { coords: vec![BigUint::zero(); self.f as usize] }
    }

    pub fn one(&self) -> LocalElement {
        self.scalar(&BigUint::one())
    }

    pub fn scalar(&self, c: &BigUint) -> LocalElement {
        let mut coords = vec![BigUint::zero(); self.f as usize];
        coords[0] = c % self.pn();
        LocalElement { coords }
    }

    /// The power-basis generator theta (for f = 1 this is the root of the
    /// linear modulus, i.e. -m0).
    pub fn generator(&self) -> LocalElement {
        let mut coords = vec![BigUint::zero(); self.f as usize];
        if self.f == 1 {
            coords[0] = (self.pn() - &self.modulus[0] % self.pn()) % self.pn();
        } else {
            coords[1] = BigUint::one();
        }
        LocalElement { coords }
    }

    pub fn from_coords(&self, coords: Vec<BigUint>) -> LocalElement {
        assert_eq!(coords.len(), self.f as usize);
        let m = self.pn();
        LocalElement { coords: coords.into_iter().map(|c| c % &m).collect() }
    }

    pub fn from_signed_coords(&self, coords: &[BigInt]) -> LocalElement {
        let m = BigInt::from(self.pn());
        self.from_coords(
            coords
                .iter()
                .map(|c| c.mod_floor(&m).to_biguint().unwrap())
                .collect(),
        )
    }

    pub fn add(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        let m = self.pn();
        LocalElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| (x + y) % &m).collect(),
        }
    }

    pub fn sub(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        let m = self.pn();
        LocalElement {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| ((x + &m) - y) % &m)
                .collect(),
        }
    }

    pub fn mul(&self, a: &LocalElement, b: &LocalElement) -> LocalElement {
        let n = self.f as usize;
        let m = self.pn();
        let mut prod = vec![BigUint::zero(); 2 * n - 1];
        for i in 0..n {
            if a.coords[i].is_zero() {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (&prod[i + j] + &a.coords[i] * &b.coords[j]) % &m;
            }
        }
        // Reduce by the monic modulus: x^f = -(m_{f-1} x^{f-1} + ... + m_0).
        for k in (n..prod.len()).rev() {
            let lead = std::mem::take(&mut prod[k]);
            if lead.is_zero() {
                continue;
            }
            for (i, mi) in self.modulus.iter().enumerate() {
                let idx = k - n + i;
                let sub = &lead * mi % &m;
                prod[idx] = ((&prod[idx] + &m) - sub) % &m;
            }
        }
        prod.truncate(n);
        LocalElement { coords: prod }
    }

    pub fn pow(&self, a: &LocalElement, e: &BigUint) -> LocalElement {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e.clone();
        let two = BigUint::from(2u32);
        while !e.is_zero() {
            if e.is_odd() {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e /= &two;
        }
        acc
    }

    fn eval_modulus(&self, x: &LocalElement) -> LocalElement {
        // m(t) = t^f + sum m_i t^i, evaluated by Horner.
        let mut acc = self.one();
        for mi in self.modulus.iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, &self.scalar(mi));
        }
        acc
    }

    fn eval_modulus_derivative(&self, x: &LocalElement) -> LocalElement {
        // m'(t) = f t^{f-1} + sum_{i>=1} i m_i t^{i-1}
        let mut acc = self.scalar(&BigUint::from(self.f));
        for i in (1..self.f as usize).rev() {
            acc = self.mul(&acc, x);
            let c = &self.modulus[i] * BigUint::from(i as u32) % self.pn();
            acc = self.add(&acc, &self.scalar(&c));
        }
        acc
    }

    /// Multiplicative inverse of a unit, lifting the residue-field inverse
    /// with Newton iteration z -> z(2 - xz).
    pub fn invert(&self, x: &LocalElement) -> Result<LocalElement, PadicError> {
        let p = self.p;
        let xp: Vec<u64> = x.coords.iter().map(|c| (c % p).to_u64().unwrap()).collect();
        if xp.iter().all(|&c| c == 0) {
            return Err(PadicError::NotAUnit("zero residue".into()));
        }
        let inv0 = if self.f == 1 {
            vec![mod_inverse_u64(xp[0], p)]
        } else {
            let mpoly: Vec<u64> = self
                .modulus
                .iter()
                .map(|c| (c % p).to_u64().unwrap())
                .chain(std::iter::once(1))
                .collect();
            poly_mod_inverse(&xp, &mpoly, p)
                .ok_or_else(|| PadicError::NotAUnit("not invertible".into()))?
        };
        let mut z = self.from_coords(
            inv0.into_iter()
                .map(BigUint::from)
                .chain(std::iter::repeat(BigUint::zero()))
                .take(self.f as usize)
                .collect(),
        );
        let two = self.scalar(&BigUint::from(2u32));
        let mut digits = 1u32;
        while digits < self.abs_prec {
            let t = self.sub(&two, &self.mul(x, &z));
            z = self.mul(&z, &t);
            digits *= 2;
        }
        debug_assert_eq!(self.mul(x, &z), self.one());
        Ok(z)
    }

    /// Hensel-lift the Frobenius image of the generator: the root of the
    /// modulus congruent to theta^p mod p.
    fn lift_frobenius(&self) -> Result<Vec<BigUint>, PadicError> {
        if self.f == 1 {
            return Ok(self.generator().coords);
        }
        let mut y = self.pow(&self.generator(), &BigUint::from(self.p));
        let mut digits = 1u32;
        while digits < self.abs_prec {
            let fy = self.eval_modulus(&y);
            let dfy = self.eval_modulus_derivative(&y);
            let inv = self.invert(&dfy)?;
            let delta = self.mul(&fy, &inv);
            y = self.sub(&y, &delta);
            digits *= 2;
        }
        let check = self.eval_modulus(&y);
        if !check.coords.iter().all(|c| c.is_zero()) {
            return Err(PadicError::PrecisionExhausted(
                "Frobenius lift did not converge".into(),
            ));
        }
        Ok(y.coords)
    }

    /// The ring automorphism lifting x -> x^p on the residue field.
    pub fn frobenius(&self, x: &LocalElement) -> LocalElement {
        let sigma_theta = LocalElement { coords: self.frob_gen.clone() };
        let mut acc = self.zero();
        for c in x.coords.iter().rev() {
            acc = self.mul(&acc, &sigma_theta);
            acc = self.add(&acc, &self.scalar(c));
        }
        acc
    }

    /// Norm to Z_p: the product of the f Frobenius conjugates.
    pub fn norm(&self, x: &LocalElement) -> BigUint {
        let mut acc = x.clone();
        let mut conj = x.clone();
        for _ in 1..self.f {
            conj = self.frobenius(&conj);
            acc = self.mul(&acc, &conj);
        }
        for c in &acc.coords[1..] {
            assert!(c.is_zero(), "norm must land in the base ring");
        }
        acc.coords[0].clone()
    }

    /// p-adic valuation of an element: the minimum coordinate valuation
    /// (the extension is unramified). `None` when indistinguishable from 0.
    pub fn valuation(&self, x: &LocalElement) -> Option<u32> {
        let mut best: Option<u32> = None;
        let bp = BigUint::from(self.p);
        for c in &x.coords {
            if c.is_zero() {
                continue;
            }
            let mut v = 0u32;
            let mut t = c.clone();
            while (&t % &bp).is_zero() {
                t /= &bp;
                v += 1;
            }
            best = Some(best.map_or(v, |b| b.min(v)));
        }
        best
    }

    pub fn is_unit(&self, x: &LocalElement) -> bool {
        x.coords.iter().any(|c| !(c % self.p).is_zero())
    }

    /// Divide every coordinate by p^k; the element must be divisible.
    /// The result is valid mod p^(abs_prec - k).
    pub fn exact_shift_down(&self, x: &LocalElement, k: u32) -> LocalElement {
        let pk = pow_u(self.p, k);
        LocalElement {
            coords: x
                .coords
                .iter()
                .map(|c| {
                    debug_assert!((c % &pk).is_zero());
                    c / &pk
                })
                .collect(),
        }
    }

    /// Iwasawa logarithm of a unit u: log u := log(u^(p^f - 1)) / (p^f - 1),
    /// with log(1 + t) evaluated as the truncated alternating series.
    ///
    /// Returns the element together with the number of p-adic digits it is
    /// certified to: the series divisions by powers of p cost
    /// floor(log_p k_max) digits off the ring precision.
    pub fn iwasawa_log(&self, u: &LocalElement) -> Result<(LocalElement, u32), PadicError> {
        if self.p < 5 {
            return Err(PadicError::UnsupportedPrime(self.p));
        }
        if !self.is_unit(u) {
            return Err(PadicError::NotAUnit("log requires a unit".into()));
        }
        let n = self.abs_prec;
        let q_minus_1 = pow_u(self.p, self.f) - BigUint::one();
        let w = self.pow(u, &q_minus_1);
        let t = self.sub(&w, &self.one());
        match self.valuation(&t) {
            None => {
                // w ≡ 1 at full precision: log is 0 to every certified digit.
                return Ok((self.zero(), n));
            }
            Some(v) => assert!(v >= 1, "u^(q-1) must be a principal unit"),
        }
        // Terms t^k / k have valuation >= k - log_p k; find the cutoff.
        let mut k_max = 1u64;
        while k_max - ilog_u64(self.p, k_max) < n as u64 {
            k_max += 1;
        }
        let guard = ilog_u64(self.p, k_max) as u32;
        if n <= guard + 1 {
            return Err(PadicError::PrecisionExhausted(
                "ring precision too small for the log series".into(),
            ));
        }
        let mut acc = self.zero();
        let mut tk = self.one();
        for k in 1..k_max {
            tk = self.mul(&tk, &t);
            // term = ± t^k / k with k = p^s * k'.
            let mut s = 0u32;
            let mut kk = k;
            while kk % self.p == 0 {
                kk /= self.p;
                s += 1;
            }
            let inv_kk = self.scalar(&mod_inverse_big(kk, self.p, self.abs_prec));
            let mut term = self.mul(&tk, &inv_kk);
            if s > 0 {
                term = self.exact_shift_down(&term, s);
            }
            if k % 2 == 1 {
                acc = self.add(&acc, &term);
            } else {
                acc = self.sub(&acc, &term);
            }
        }
        // Divide by p^f - 1, a p-adic unit.
        let inv = self
            .invert(&self.scalar(&(&q_minus_1 % self.pn())))
            .expect("p^f - 1 is a unit");
        let result = self.mul(&acc, &inv);
        Ok((result, n - guard))
    }
}

fn ilog_u64(p: u64, k: u64) -> u64 {
    let mut v = 0;
    let mut t = p;
    while t <= k {
        v += 1;
        t *= p;
    }
    v
}

fn mod_inverse_u64(a: u64, p: u64) -> u64 {
    // Fermat inverse mod a prime.
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn mod_inverse_big(a: u64, p: u64, abs_prec: u32) -> BigUint {
    // Inverse mod p^abs_prec of an integer coprime to p, by Newton lifting.
    let m = pow_u(p, abs_prec);
    let a = BigUint::from(a) % &m;
    let mut z = BigUint::from(mod_inverse_u64((&a % p).to_u64().unwrap(), p));
    let two = BigUint::from(2u32);
    let mut digits = 1u32;
    while digits < abs_prec {
        let az = &a * &z % &m;
        let t = ((&two + &m) - az) % &m;
        z = &z * &t % &m;
        digits *= 2;
    }
    z
}

/// Inverse of a polynomial in F_p[x]/(m), by extended Euclid.
fn poly_mod_inverse(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    crate::arith::poly_trim(&mut r0);
    crate::arith::poly_trim(&mut r1);
    let mut s0: Vec<u64> = vec![];
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1, p);
        let qs1 = crate::arith::poly_mul_mod(&q, &s1, p);
        let s2 = poly_sub(&s0, &qs1, p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None; // gcd is not a unit
    }
    let inv = mod_inverse_u64(r0[0], p);
    let mut out: Vec<u64> = s0
        .iter()
        .map(|&c| (c as u128 * inv as u128 % p as u128) as u64)
        .collect();
    out.resize(m.len() - 1, 0);
    Some(out)
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    crate::arith::poly_trim(&mut out);
    out
}

fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    crate::arith::poly_trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![0u64; r.len() - db];
    let lead_inv = mod_inverse_u64(*b.last().unwrap(), p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let coef = (*r.last().unwrap() as u128 * lead_inv as u128 % p as u128) as u64;
        q[shift] = coef;
        for (k, &bk) in b.iter().enumerate() {
            let sub = (coef as u128 * bk as u128 % p as u128) as u64;
            r[shift + k] = (r[shift + k] + p - sub) % p;
        }
        crate::arith::poly_trim(&mut r);
    }
    crate::arith::poly_trim(&mut q);
    (q, r)
}

/// Iwasawa logarithm of a p-adic number for p >= 5, branch log p := 0:
/// powers of p are discarded and the unit part is fed to the series
/// log u = log(u^(p-1)) / (p-1).
///
/// The result carries as many certified digits as the input's unit part.
pub fn iwasawa_log(x: &PAdicNumber) -> Result<PAdicNumber, PadicError> {
    let p = x.p;
    if p < 5 {
        return Err(PadicError::UnsupportedPrime(p));
    }
    let (unit, rel_prec) = match &x.repr {
        Repr::ExactZero => return Err(PadicError::NotAUnit("log of exact zero".into())),
        Repr::BelowPrecision { .. } => {
            return Err(PadicError::NotAUnit(
                "log of a value indistinguishable from zero".into(),
            ))
        }
        Repr::Nonzero { unit, rel_prec, .. } => (unit.clone(), *rel_prec),
    };
    if rel_prec < 2 {
        return Err(PadicError::PrecisionExhausted(
            "fewer than one significant digit would remain".into(),
        ));
    }
    // Pad with guard digits so the series divisions by powers of p do not
    // eat into the requested precision.
    let guard = {
        let mut k_max = 1u64;
        while k_max - ilog_u64(p, k_max) < (rel_prec as u64 + 2) {
            k_max += 1;
        }
        ilog_u64(p, k_max) as u32 + 1
    };
    let work = rel_prec + guard;
    let ring = UnramifiedRing::new(p, 1, work, vec![BigUint::zero()])?;
    let elem = ring.from_coords(vec![unit % pow_u(p, work)]);
    let (lg, valid) = ring.iwasawa_log(&elem)?;
    debug_assert!(valid >= rel_prec);
    let residue = BigInt::from(lg.coords[0].clone() % pow_u(p, rel_prec));
    Ok(PAdicNumber::from_residue(&residue, p, rel_prec))
}

/// Norm from an unramified extension down to the base, as a p-adic number
/// at the ring's precision.
pub fn norm_to_base(ring: &UnramifiedRing, x: &LocalElement) -> PAdicNumber {
    let n = ring.norm(x);
    PAdicNumber::from_residue(&BigInt::from(n), ring.p(), ring.abs_prec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn padic(v: i64, p: u64, n: u32) -> PAdicNumber {
        PAdicNumber::from_residue(&BigInt::from(v), p, n)
    }

    #[test]
    fn residue_classification() {
        let x = padic(50, 5, 4); // 2 * 5^2
        assert_eq!(x.valuation().unwrap(), Some(2));
        assert_eq!(x.unit_part().unwrap().0, &BigUint::from(2u32));
        assert_eq!(x.residue(4).unwrap(), BigUint::from(50u32));
        assert!(padic(625, 5, 4).valuation().is_err()); // 0 mod 5^4
        assert_eq!(PAdicNumber::exact_zero(5).valuation().unwrap(), None);
    }

    #[test]
    fn log_pinned_values() {
        // log_5(6) at N=3: the series 5 - 25/2 + 125/3 gives 55 mod 125.
        let lg = iwasawa_log(&padic(6, 5, 3)).unwrap();
        assert_eq!(lg.valuation().unwrap(), Some(1));
        assert_eq!(lg.residue(3).unwrap(), BigUint::from(55u32));

        // log_p(1) = 0 to every certified digit.
        let lg1 = iwasawa_log(&padic(1, 5, 6)).unwrap();
        assert_eq!(lg1.residue(6).unwrap(), BigUint::zero());

        // log_5(11) at N=2: (1/4) log(11^4), 11^4 ≡ 16 mod 25.
        let lg11 = iwasawa_log(&padic(11, 5, 2)).unwrap();
        assert_eq!(lg11.residue(2).unwrap(), BigUint::from(10u32));
    }

    #[test]
    fn log_of_pure_power_of_p_is_zero_branch() {
        // branch log p := 0: log(p^v * u) = log(u); for u ≡ 1, log ≡ 0.
        let x = padic(5, 5, 4); // val 1, unit 1 known to 3 digits
        let lg = iwasawa_log(&x).unwrap();
        assert_eq!(lg.residue(3).unwrap(), BigUint::zero());
    }

    #[test]
    fn log_is_additive_on_units() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &p in &[5u64, 7, 13] {
            let n = 5u32;
            let pn = pow_u(p, n);
            for _ in 0..1000 {
                let u = loop {
                    let c: u64 = rng.gen_range(1..10_000);
                    if c % p != 0 {
                        break c;
                    }
                };
                let v = loop {
                    let c: u64 = rng.gen_range(1..10_000);
                    if c % p != 0 {
                        break c;
                    }
                };
                let uv = BigUint::from(u) * BigUint::from(v) % &pn;
                let lg_u = iwasawa_log(&padic(u as i64, p, n)).unwrap();
                let lg_v = iwasawa_log(&padic(v as i64, p, n)).unwrap();
                let lg_uv =
                    iwasawa_log(&PAdicNumber::from_residue(&BigInt::from(uv), p, n)).unwrap();
                let sum = (lg_u.residue(n).unwrap() + lg_v.residue(n).unwrap()) % &pn;
                assert_eq!(lg_uv.residue(n).unwrap(), sum, "p={p} u={u} v={v}");
            }
        }
    }

    #[test]
    fn principal_units_of_valuation_one_have_log_valuation_one() {
        for &p in &[5u64, 7] {
            for k in 1..p {
                let u = 1 + k * p; // v(u - 1) = 1
                let lg = iwasawa_log(&padic(u as i64, p, 4)).unwrap();
                assert_eq!(lg.valuation().unwrap(), Some(1), "p={p} u={u}");
            }
        }
    }

    #[test]
    fn teichmueller_pinned() {
        let t = teichmueller(2, 5, 2);
        assert_eq!(t.residue(2).unwrap(), BigUint::from(7u32));
        let t1 = teichmueller(1, 7, 5);
        assert_eq!(t1.residue(5).unwrap(), BigUint::one());
        let t4 = teichmueller(4, 5, 2);
        assert_eq!(t4.residue(2).unwrap(), BigUint::from(24u32));
    }

    #[test]
    fn teichmueller_is_a_root_of_unity_congruent_to_a() {
        for &p in &[5u64, 7, 13] {
            for n in 1..=8u32 {
                let m = pow_u(p, n);
                for a in 1..p {
                    let t = teichmueller(a, p, n);
                    let r = t.residue(n).unwrap();
                    assert_eq!(r.modpow(&BigUint::from(p - 1), &m), BigUint::one());
                    assert_eq!(&r % p, BigUint::from(a));
                }
            }
        }
    }

    #[test]
    fn teichmueller_is_multiplicative() {
        // omega is the unique splitting of the units into torsion times
        // principal parts, so it must be a character mod p^N.
        for &p in &[5u64, 7, 13] {
            let n = 6u32;
            let m = pow_u(p, n);
            for a in 1..p {
                for b in 1..p {
                    let ab = a * b % p;
                    if ab == 0 {
                        continue;
                    }
                    let lhs = teichmueller(ab, p, n).residue(n).unwrap();
                    let rhs = teichmueller(a, p, n).residue(n).unwrap()
                        * teichmueller(b, p, n).residue(n).unwrap()
                        % &m;
                    assert_eq!(lhs, rhs, "p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn norm_on_the_base_ring_is_the_identity() {
        let ring = UnramifiedRing::with_default_modulus(5, 1, 4).unwrap();
        let x = ring.scalar(&BigUint::from(123u32));
        assert_eq!(ring.norm(&x), BigUint::from(123u32));
    }

    #[test]
    fn norm_of_multiplicative_generator_generates_the_base_units() {
        // F_25 = F_5[x]/(m); the norm maps a generator of F_25^* onto an
        // element of multiplicative order 4, i.e. a generator of F_5^*.
        let ring = UnramifiedRing::with_default_modulus(5, 2, 1).unwrap();
        let mut found = false;
        'outer: for a in 0..5u32 {
            for b in 0..5u32 {
                let g = ring.from_coords(vec![BigUint::from(a), BigUint::from(b)]);
                if !ring.is_unit(&g) {
                    continue;
                }
                let mut order = 1;
                let mut acc = g.clone();
                while acc != ring.one() {
                    acc = ring.mul(&acc, &g);
                    order += 1;
                }
                if order == 24 {
                    let n = ring.norm(&g);
                    assert!(n == BigUint::from(2u32) || n == BigUint::from(3u32));
                    found = true;
                    break 'outer;
                }
            }
        }
        assert!(found, "F_25 has a multiplicative generator");
    }

    #[test]
    fn norm_of_scalar_p_in_degree_two_is_p_squared() {
        let ring = UnramifiedRing::with_default_modulus(5, 2, 4).unwrap();
        let x = ring.scalar(&BigUint::from(5u32));
        let nm = norm_to_base(&ring, &x);
        assert_eq!(nm.valuation().unwrap(), Some(2));
        assert_eq!(nm.unit_part().unwrap().0, &BigUint::one());
    }

    /// Resultant-based norm oracle: N(g(theta)) = Res(m, g) for monic m,
    /// as an exact integer determinant of the Sylvester matrix.
    fn resultant_norm(modulus: &[BigUint], g: &[BigUint], p: u64, n: u32) -> BigUint {
        let f = modulus.len();
        let mut gv: Vec<BigInt> = g.iter().map(|c| BigInt::from(c.clone())).collect();
        while gv.last().map(|c| c.is_zero()).unwrap_or(false) {
            gv.pop();
        }
        if gv.is_empty() {
            return BigUint::zero();
        }
        let dg = gv.len() - 1;
        if dg == 0 {
            // constant: norm = c^f
            let c = gv[0].clone();
            let m = BigInt::from(pow_u(p, n));
            return c.modpow(&BigInt::from(f as u64), &m).to_biguint().unwrap();
        }
        let size = f + dg;
        let mut mat = vec![vec![BigInt::from(0); size]; size];
        let mcoef: Vec<BigInt> = std::iter::once(BigInt::from(1))
            .chain(modulus.iter().rev().map(|c| BigInt::from(c.clone())))
            .collect(); // highest degree first
        let gcoef: Vec<BigInt> = gv.iter().rev().cloned().collect();
        for r in 0..dg {
            for (k, c) in mcoef.iter().enumerate() {
                mat[r][r + k] = c.clone();
            }
        }
        for r in 0..f {
            for (k, c) in gcoef.iter().enumerate() {
                mat[dg + r][r + k] = c.clone();
            }
        }
        let det = det_bigint(mat);
        let m = BigInt::from(pow_u(p, n));
        det.mod_floor(&m).to_biguint().unwrap()
    }

    fn det_bigint(mut m: Vec<Vec<BigInt>>) -> BigInt {
        // Fraction-free Gaussian elimination (Bareiss).
        let n = m.len();
        let mut sign = BigInt::from(1);
        let mut prev = BigInt::from(1);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
                match swap {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::from(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = &num / &prev;
                }
                m[i][k] = BigInt::from(0);
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    #[test]
    fn norm_matches_resultant_and_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for &(p, f) in &[(5u64, 2u32), (7, 3), (13, 2)] {
            let n = 3u32;
            let ring = UnramifiedRing::with_default_modulus(p, f, n).unwrap();
            let pn = pow_u(p, n);
            for _ in 0..200 {
                let a = ring.from_coords(
                    (0..f)
                        .map(|_| BigUint::from(rng.gen_range(0..10_000u64)) % &pn)
                        .collect(),
                );
                let b = ring.from_coords(
                    (0..f)
                        .map(|_| BigUint::from(rng.gen_range(0..10_000u64)) % &pn)
                        .collect(),
                );
                let na = ring.norm(&a);
                let nb = ring.norm(&b);
                let nab = ring.norm(&ring.mul(&a, &b));
                assert_eq!(nab, na.clone() * nb % &pn, "multiplicativity p={p} f={f}");
                let oracle = resultant_norm(ring.modulus_coeffs(), &a.coords, p, n);
                assert_eq!(na, oracle, "resultant oracle p={p} f={f} a={:?}", a.coords);
            }
        }
    }

    #[test]
    fn frobenius_fixes_the_base_and_has_order_f() {
        let ring = UnramifiedRing::with_default_modulus(7, 3, 4).unwrap();
        let theta = ring.generator();
        let mut y = theta.clone();
        for _ in 0..3 {
            y = ring.frobenius(&y);
        }
        assert_eq!(y, theta, "sigma^f = id on the generator");
        let c = ring.scalar(&BigUint::from(29u32));
        assert_eq!(ring.frobenius(&c), c, "sigma fixes scalars");
    }

    #[test]
    fn log_in_extension_kills_torsion() {
        // The Teichmüller factor is torsion: log(omega * u) = log(u).
        let p = 5u64;
        let n = 5u32;
        let ring = UnramifiedRing::with_default_modulus(p, 1, n).unwrap();
        let omega = teichmueller(3, p, n).residue(n).unwrap();
        let u = BigUint::from(1u64 + p);
        let x = ring.from_coords(vec![&omega * &u % pow_u(p, n)]);
        let y = ring.from_coords(vec![u]);
        let (lx, vx) = ring.iwasawa_log(&x).unwrap();
        let (ly, vy) = ring.iwasawa_log(&y).unwrap();
        let v = vx.min(vy);
        assert_eq!(
            lx.coords[0].clone() % pow_u(p, v),
            ly.coords[0].clone() % pow_u(p, v)
        );
    }

    #[test]
    fn log_rejects_small_primes() {
        assert!(matches!(
            iwasawa_log(&padic(4, 3, 4)),
            Err(PadicError::UnsupportedPrime(3))
        ));
    }
}
