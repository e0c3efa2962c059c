//! Exact integer and modular arithmetic shared by every other module:
//! Kronecker symbols, square-and-multiply modular powers, deterministic
//! primality below 2^63, and root-counting for monic integer cubics.

use num_bigint::BigInt;
use num_integer::Integer as NumInteger;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer; all rational-integer quantities
/// (discriminants, class numbers, prime powers) live here.
pub type Integer = BigInt;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("polynomial is reducible over the rationals: {0}")]
    Reducible(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Full Kronecker symbol (a|n) for n >= 1, including the even-n and
/// `a ≡ 0, 1 (mod 4)` conventions.
///
/// Panics if `n < 1`.
pub fn kronecker(a: &Integer, n: &Integer) -> i32 {
    assert!(n >= &Integer::one(), "kronecker: n must be >= 1");
    if n.is_one() {
        return 1;
    }
    let mut n = n.clone();
    let mut result = 1i32;

    // Split off the even part of n: (a|2)^e.
    let two = Integer::from(2);
    let mut e = 0u64;
    while n.is_even() {
        n /= &two;
        e += 1;
    }
    if e > 0 {
        if a.is_even() {
            return 0;
        }
        // (a|2) = ±1 by a mod 8.
        let a8 = a.mod_floor(&Integer::from(8));
        let sym2 = if a8 == Integer::from(1) || a8 == Integer::from(7) {
            1
        } else {
            -1
        };
        if e % 2 == 1 {
            result *= sym2;
        }
    }
    if n.is_one() {
        return result;
    }

    // Jacobi symbol (a|n) for odd n > 1 by quadratic reciprocity.
    let mut a = a.mod_floor(&n);
    let four = Integer::from(4);
    let eight = Integer::from(8);
    let three = Integer::from(3);
    loop {
        if a.is_zero() {
            return if n.is_one() { result } else { 0 };
        }
        while a.is_even() {
            a /= &two;
            let n8 = n.mod_floor(&eight);
            if n8 == three || n8 == Integer::from(5) {
                result = -result;
            }
        }
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            result = -result;
        }
        let r = n.mod_floor(&a);
        n = std::mem::replace(&mut a, r);
        if a.is_zero() {
            return if n.is_one() { result } else { 0 };
        }
    }
}

/// Convenience wrapper for machine-sized arguments.
pub fn kronecker_i64(a: i64, n: u64) -> i32 {
    kronecker(&Integer::from(a), &Integer::from(n))
}

/// a^e mod m by square-and-multiply, with the base normalized into [0, m).
///
/// Panics if `e < 0` or `m < 2`.
pub fn modpow(a: &Integer, e: &Integer, m: &Integer) -> Integer {
    assert!(!e.is_negative(), "modpow: exponent must be >= 0");
    assert!(m >= &Integer::from(2), "modpow: modulus must be >= 2");
    let base = a.mod_floor(m);
    base.modpow(e, m)
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, a, m);
        }
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin valid for all n < 2^64 (witness set
/// 2..=37 covers well past 2^63, the largest scan bound we accept).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &w in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Ascending primes in the inclusive range [lo, hi], by segmented sieve.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi < lo || hi < 2 {
        return Vec::new();
    }
    let lo = lo.max(2);
    // Base primes up to sqrt(hi).
    let root = (hi as f64).sqrt() as u64 + 2;
    let mut base_sieve = vec![true; (root + 1) as usize];
    let mut base = Vec::new();
    for i in 2..=root as usize {
        if base_sieve[i] {
            base.push(i as u64);
            let mut j = i * i;
            while j <= root as usize {
                base_sieve[j] = false;
                j += i;
            }
        }
    }
    let len = (hi - lo + 1) as usize;
    let mut seg = vec![true; len];
    for &p in &base {
        if p * p > hi {
            break;
        }
        let mut start = p.max(lo.div_ceil(p)) * p;
        if start < p * p {
            start = p * p;
        }
        let mut j = start;
        while j <= hi {
            seg[(j - lo) as usize] = false;
            j += p;
        }
    }
    let mut out = Vec::new();
    for (i, &alive) in seg.iter().enumerate() {
        let n = lo + i as u64;
        if alive && n >= 2 {
            out.push(n);
        }
    }
    out
}

/// Integer square root of a non-negative BigInt; `None` if not a perfect square.
pub fn exact_sqrt(n: &Integer) -> Option<Integer> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Splitting pattern of a monic integer cubic modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorType {
    /// Three distinct roots mod p (Frobenius trivial in S3).
    ThreeRoots,
    /// Exactly one root mod p (Frobenius a transposition).
    OneRoot,
    /// No roots mod p (Frobenius a 3-cycle).
    Irreducible,
    /// p divides the polynomial discriminant.
    Ramified,
}

/// A monic integer cubic x^3 + c2 x^2 + c1 x + c0, irreducible over Q with
/// non-square discriminant (so the Galois group of its splitting field is S3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicPoly {
    pub c2: Integer,
    pub c1: Integer,
    pub c0: Integer,
}

impl CubicPoly {
    /// Build and validate. A monic cubic is reducible over Q exactly when it
    /// has an integer root dividing c0; we additionally reject square
    /// discriminants so the Galois-group claim (S3, not C3) holds.
    pub fn new(c2: Integer, c1: Integer, c0: Integer) -> Result<Self, ArithError> {
        let poly = CubicPoly { c2, c1, c0 };
        if poly.c0.is_zero() {
            return Err(ArithError::Reducible("root at 0".into()));
        }
        if poly.c0.abs() > Integer::from(1_000_000_000_000u64) {
            return Err(ArithError::InvalidInput(
                "constant term too large for the rational root test".into(),
            ));
        }
        // Integer roots of a monic cubic divide the constant term.
        let abs_c0 = poly.c0.abs();
        let mut d = Integer::one();
        while &(&d * &d) <= &abs_c0 {
            if abs_c0.is_multiple_of(&d) {
                let e = &abs_c0 / &d;
                for cand in [d.clone(), -d.clone(), e.clone(), -e] {
                    if poly.eval(&cand).is_zero() {
                        return Err(ArithError::Reducible(format!("root at {cand}")));
                    }
                }
            }
            d += 1;
        }
        let disc = poly.discriminant();
        if disc.is_zero() {
            return Err(ArithError::Reducible("repeated root".into()));
        }
        if exact_sqrt(&disc).is_some() {
            return Err(ArithError::InvalidInput(
                "square discriminant: splitting field is cyclic, not S3".into(),
            ));
        }
        Ok(poly)
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        ((x + &self.c2) * x + &self.c1) * x + &self.c0
    }

    /// Discriminant of x^3 + a x^2 + b x + c:
    /// 18abc - 4a^3 c + a^2 b^2 - 4 b^3 - 27 c^2.
    pub fn discriminant(&self) -> Integer {
        let (a, b, c) = (&self.c2, &self.c1, &self.c0);
        Integer::from(18) * a * b * c - Integer::from(4) * a * a * a * c + a * a * b * b
            - Integer::from(4) * b * b * b
            - Integer::from(27) * c * c
    }

    /// Coefficients reduced mod p as [c0, c1, c2] (the leading 1 implicit).
    pub fn coeffs_mod(&self, p: u64) -> [u64; 3] {
        let m = Integer::from(p);
        [
            self.c0.mod_floor(&m).try_into().unwrap(),
            self.c1.mod_floor(&m).try_into().unwrap(),
            self.c2.mod_floor(&m).try_into().unwrap(),
        ]
    }
}

// --- dense polynomial arithmetic over F_p (small degree, u64 coefficients) ---

pub(crate) fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn poly_mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod_u64(ai, bj, p)) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of a by the monic polynomial m, coefficients mod p.
pub(crate) fn poly_rem_mod(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*m.last().unwrap(), 1, "divisor must be monic");
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (k, &mk) in m.iter().enumerate() {
            let idx = shift + k;
            let sub = mulmod_u64(lead, mk, p);
            r[idx] = (r[idx] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

pub(crate) fn poly_gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // Make b monic before taking remainders.
        let inv = powmod_u64(*b.last().unwrap(), p - 2, p);
        let monic: Vec<u64> = b.iter().map(|&c| mulmod_u64(c, inv, p)).collect();
        let r = poly_rem_mod(&a, &monic, p);
        a = monic;
        b = r;
    }
    if a.is_empty() {
        return a;
    }
    let inv = powmod_u64(*a.last().unwrap(), p - 2, p);
    a.iter().map(|&c| mulmod_u64(c, inv, p)).collect()
}

/// x^e mod (m, p) by square-and-multiply in F_p[x]/(m).
pub(crate) fn poly_powmod_x(e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = poly_rem_mod(&[0, 1], m, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem_mod(&poly_mul_mod(&acc, &base, p), m, p);
        }
        base = poly_rem_mod(&poly_mul_mod(&base, &base, p), m, p);
        e >>= 1;
    }
    acc
}

/// Frobenius pattern of a cubic at p: `Ramified` iff p | disc(f); otherwise
/// the number of distinct roots mod p (0, 1 or 3 — a cubic with distinct
/// roots cannot have exactly two in F_p) via deg gcd(x^p - x, f).
pub fn factor_type_cubic(f: &CubicPoly, p: u64) -> FactorType {
    assert!(p >= 2 && is_prime_u64(p), "factor_type_cubic: p must be prime");
    let disc = f.discriminant();
    if disc.is_multiple_of(&Integer::from(p)) {
        return FactorType::Ramified;
    }
    let [c0, c1, c2] = f.coeffs_mod(p);
    let fp = vec![c0, c1, c2, 1];
    if p < 5 {
        // Tiny fields: count roots directly.
        let mut roots = 0;
        for x in 0..p {
            let v = (poly_eval_mod(&fp, x, p)) % p;
            if v == 0 {
                roots += 1;
            }
        }
        return match roots {
            0 => FactorType::Irreducible,
            1 => FactorType::OneRoot,
            3 => FactorType::ThreeRoots,
            _ => unreachable!("cubic with p coprime to disc has 0, 1 or 3 roots"),
        };
    }
    // gcd(x^p - x, f) is the product of the distinct linear factors of f.
    let xp = poly_powmod_x(p, &fp, p);
    // x^p - x mod f
    let mut diff = xp;
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    poly_trim(&mut diff);
    let g = poly_gcd_mod(&diff, &fp, p);
    match g.len().saturating_sub(1) {
        0 => FactorType::Irreducible,
        1 => FactorType::OneRoot,
        3 => FactorType::ThreeRoots,
        d => unreachable!("gcd degree {d} impossible for squarefree cubic"),
    }
}

pub(crate) fn poly_eval_mod(f: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = (mulmod_u64(acc, x, p) + c) % p;
    }
    acc
}

/// Distinct roots of a monic cubic mod p (p coprime to the discriminant),
/// via gcd with x^p - x and deterministic equal-degree splitting.
pub fn cubic_roots_mod_p(f: &CubicPoly, p: u64) -> Vec<u64> {
    assert!(is_prime_u64(p));
    let [c0, c1, c2] = f.coeffs_mod(p);
    let fp = vec![c0, c1, c2, 1];
    if p <= 3000 {
        let mut roots: Vec<u64> = (0..p).filter(|&x| poly_eval_mod(&fp, x, p) == 0).collect();
        roots.sort_unstable();
        return roots;
    }
    let xp = poly_powmod_x(p, &fp, p);
    let mut diff = xp;
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    poly_trim(&mut diff);
    let g = poly_gcd_mod(&diff, &fp, p);
    let mut roots = Vec::new();
    collect_roots(&g, p, &mut roots);
    roots.sort_unstable();
    roots
}

/// Split a monic product of distinct linear factors into roots.
/// The splitting offsets are tried deterministically so scans are replayable.
fn collect_roots(g: &[u64], p: u64, out: &mut Vec<u64>) {
    match g.len().saturating_sub(1) {
        0 => {}
        1 => out.push((p - g[0] % p) % p),
        2 => {
            // roots of x^2 + bx + c
            let b = g[1];
            let c = g[0];
            let disc = (mulmod_u64(b, b, p) + p - mulmod_u64(4 % p, c, p) % p) % p;
            let r = sqrt_mod_p(disc, p).expect("split quadratic must have square disc");
            let inv2 = powmod_u64(2, p - 2, p);
            out.push(mulmod_u64((p + p - b - r) % p, inv2, p) % p);
            out.push(mulmod_u64((p + p - b + r) % p % p, inv2, p) % p);
        }
        3 => {
            // Deterministic Cantor-Zassenhaus: gcd((x+a)^((p-1)/2) - 1, g).
            for a in 0..p {
                let shifted = poly_powmod_shifted(a, (p - 1) / 2, g, p);
                let mut h = shifted;
                if h.is_empty() {
                    h = vec![0];
                }
                h[0] = (h[0] + p - 1) % p;
                poly_trim(&mut h);
                let d = poly_gcd_mod(&h, g, p);
                if !d.is_empty() && d.len() - 1 > 0 && d.len() - 1 < 3 {
                    collect_roots(&d, p, out);
                    // divide g by d
                    let q = poly_div_exact(g, &d, p);
                    collect_roots(&q, p, out);
                    return;
                }
            }
            unreachable!("equal-degree splitting failed for all offsets");
        }
        _ => unreachable!(),
    }
}

/// (x + a)^e mod (m, p).
fn poly_powmod_shifted(a: u64, e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = poly_rem_mod(&[a, 1], m, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem_mod(&poly_mul_mod(&acc, &base, p), m, p);
        }
        base = poly_rem_mod(&poly_mul_mod(&base, &base, p), m, p);
        e >>= 1;
    }
    acc
}

fn poly_div_exact(a: &[u64], d: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dd = d.len() - 1;
    let mut q = vec![0u64; r.len().saturating_sub(dd)];
    let lead_inv = powmod_u64(*d.last().unwrap(), p - 2, p);
    while r.len() > dd {
        let shift = r.len() - 1 - dd;
        let coef = mulmod_u64(*r.last().unwrap(), lead_inv, p);
        q[shift] = coef;
        for (k, &dk) in d.iter().enumerate() {
            let idx = shift + k;
            let sub = mulmod_u64(coef, dk, p);
            r[idx] = (r[idx] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    debug_assert!(r.is_empty(), "division was not exact");
    poly_trim(&mut q);
    q
}

/// Tonelli-Shanks square root of a mod odd prime p; `None` for non-residues.
pub fn sqrt_mod_p(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if powmod_u64(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(powmod_u64(a, (p + 1) / 4, p));
    }
    // Factor p-1 = q * 2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    // Deterministic search for a non-residue.
    let mut z = 2;
    while powmod_u64(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod_u64(z, q, p);
    let mut t = powmod_u64(a, q, p);
    let mut r = powmod_u64(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod_u64(tt, tt, p);
            i += 1;
        }
        let b = powmod_u64(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod_u64(b, b, p);
        t = mulmod_u64(t, c, p);
        r = mulmod_u64(r, b, p);
    }
    Some(r)
}

/// Fundamental discriminant attached to a nonzero integer: the discriminant
/// of Q(sqrt(n)), i.e. the squarefree kernel m of n if m ≡ 1 (mod 4), else 4m.
pub fn fundamental_discriminant(n: &Integer) -> Result<Integer, ArithError> {
    if n.is_zero() {
        return Err(ArithError::InvalidInput("zero has no field discriminant".into()));
    }
    let mut m = n.clone();
    // Strip square factors by trial division (inputs here are cubic
    // discriminants of moderate size).
    let mut d = Integer::from(2);
    let limit = Integer::from(2_000_000u64);
    loop {
        let dd = &d * &d;
        if &dd > &m.abs() {
            break;
        }
        while m.is_multiple_of(&dd) {
            m /= &dd;
        }
        d += 1;
        if d > limit {
            return Err(ArithError::InvalidInput(
                "squarefree kernel out of supported range".into(),
            ));
        }
    }
    let four = Integer::from(4);
    if m.mod_floor(&four) == Integer::one() {
        Ok(m)
    } else {
        Ok(m * four)
    }
}
