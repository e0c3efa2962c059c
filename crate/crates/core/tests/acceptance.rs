//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured runtime (visible under `cargo test --test acceptance --
//! --nocapture`). Tolerances and time limits are pinned in the assertions.
//!
//! Expected values tagged as derived were confirmed against the standalone
//! oracles embedded in this file (plain machine-integer congruence and
//! series arithmetic, reduced-form counts, exhaustive enumerations) before
//! being frozen.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as NumInteger;
use num_traits::{One, Zero};

use iwasawa_core::arith::{self, CubicPoly, Integer};
use iwasawa_core::artin::{
    build_icosahedral_group, snap_trace, AxisClass, CertifyOptions, DihedralS3Rep,
};
use iwasawa_core::cubicfield::CubicField;
use iwasawa_core::invariants::{lambda_classify, LambdaValue};
use iwasawa_core::lambda::{
    characteristic_element, euler_characteristic, weierstrass_invariants, weierstrass_prepare,
    CharSeries, CoeffRing, EulerChar, StructureData,
};
use iwasawa_core::quadfield::{self, oracle};
use iwasawa_core::survey::{self, ScanMode, Summary};

fn pass(n: u32, what: &str, started: Instant) {
    println!(
        "ACCEPTANCE {n:2} PASS: {what} ({:.2}s)",
        started.elapsed().as_secs_f64()
    );
}

/// Criterion 1: the reduced-form class number equals the independent
/// Minkowski ideal-enumeration count for every fundamental -2000 <= D < 0,
/// exactly, within 60 seconds.
#[test]
fn acceptance_01_class_number_oracle_equivalence() {
    let t0 = Instant::now();
    let mut checked = 0u32;
    for d in -2000..0i64 {
        if !quadfield::is_fundamental(d) {
            continue;
        }
        let forms = quadfield::class_number(d).unwrap();
        let ideals = oracle::class_number_by_ideal_enumeration(d);
        assert_eq!(forms, ideals, "class number mismatch at D = {d}");
        checked += 1;
    }
    assert!(checked > 600, "expected over 600 fundamental discriminants");
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "criterion 1 exceeded 60 s: {elapsed:.1}s");
    pass(1, &format!("{checked} discriminants, reduced forms = ideal enumeration"), t0);
}

/// Criterion 2: Gold's trace verdict and the normalized-regulator unit test
/// agree for every split prime 5 <= p <= 499 and fundamental |D| <= 200
/// with p coprime to h_K w_K; zero disagreements, within 120 seconds.
#[test]
fn acceptance_02_gold_regulator_agreement() {
    let t0 = Instant::now();
    let mut pairs = 0u32;
    for d in -200..0i64 {
        if !quadfield::is_fundamental(d) {
            continue;
        }
        let field = quadfield::ImagQuadField::new(d).unwrap();
        let h = field.class_number();
        let w = u64::from(field.unit_count());
        for p in arith::primes_in_range(5, 499) {
            if (h * w) % p == 0 {
                continue;
            }
            if !matches!(quadfield::splitting(d, p), quadfield::SplitType::Split { .. }) {
                continue;
            }
            let gold = iwasawa_core::invariants::gold_test(&field, p).unwrap();
            let gt_one = gold.result == iwasawa_core::invariants::GoldResult::LambdaGtOne;
            let nonunit = !iwasawa_core::invariants::normalized_regulator_is_unit(&field, p)
                .unwrap();
            assert_eq!(gt_one, nonunit, "routes disagree at D={d} p={p}");
            pairs += 1;
        }
    }
    assert!(pairs > 2000, "expected thousands of split pairs, got {pairs}");
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 120.0, "criterion 2 exceeded 120 s: {elapsed:.1}s");
    pass(2, &format!("{pairs} (D, p) pairs, zero route disagreements"), t0);
}

mod pinned_oracles {
    /// Trace congruence oracle in plain machine arithmetic: t^(p-1) mod p^2.
    pub fn trace_power(t: u64, p: u64) -> u64 {
        let m = (p * p) as u128;
        let mut acc = 1u128;
        let mut base = (t as u128) % m;
        let mut e = p - 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        acc as u64
    }

    /// All (x, y) with x^2 + |D| y^2 = 4 p^r, y > 0, x ≡ y D (mod 2):
    /// the coordinates of the candidate generators of the primes above p.
    pub fn norm_equation_solutions(d: i64, target: u64) -> Vec<(i64, u64)> {
        let mut out = Vec::new();
        let ad = (-d) as u64;
        let mut y = 1u64;
        while ad * y * y <= 4 * target {
            let rest = 4 * target - ad * y * y;
            let x = (rest as f64).sqrt().round() as u64;
            if x * x == rest && x > 0 {
                let parity = (x as i64 - y as i64 * d).rem_euclid(2);
                if parity == 0 {
                    out.push((x as i64, y));
                    out.push((-(x as i64), y));
                }
            }
            y += 1;
        }
        out
    }

    /// Reduced-form class number in plain integers (standalone copy).
    pub fn form_count(d: i64) -> u64 {
        let mut count = 0;
        let mut a = 1i64;
        while 3 * a * a <= -d {
            let mut b = -a + 1;
            if (b - d).rem_euclid(2) != 0 {
                b += 1;
            }
            while b <= a {
                let num = b * b - d;
                if num % (4 * a) == 0 {
                    let c = num / (4 * a);
                    if c >= a && !(b < 0 && (b == -a || a == c)) {
                        count += 1;
                    }
                }
                b += 2;
            }
            a += 1;
        }
        count
    }

    /// Euler criterion in plain integers: the Kronecker symbol (d|p) for an
    /// odd prime p not dividing d.
    pub fn euler_symbol(d: i64, p: u64) -> i32 {
        let dp = d.rem_euclid(p as i64) as u64;
        let mut acc = 1u64;
        let mut base = dp % p;
        let mut e = (p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        if acc == 1 {
            1
        } else if acc == p - 1 {
            -1
        } else {
            0
        }
    }

    /// Standalone 5-adic regulator computation for D = -4 at p = 5, mod 125:
    /// brute-force square root of D, embedding of 3 + 4i, direct log series.
    pub fn gaussian_regulator_mod_125() -> (u32, u64) {
        let m = 5u64.pow(6); // work mod 5^6
        // designated root: s ≡ 1 (mod 5), s^2 ≡ -4 (mod 5^6)
        let mut s = 0;
        for x in 0..m {
            if (x * x + 4) % m == 0 && x % 5 == 1 {
                s = x;
                break;
            }
        }
        assert!(s > 0);
        // alpha = 3 + 4i = (6 + 4 sqrt(-4))/2 = 3 + 2s; conj = 3 - 2s;
        // these generate p^2 and its conjugate: Reg = (log(a) - log(conj))/2
        // ... equivalently log of the unit part of a / 25 minus log of conj.
        let a = (3 + 2 * s) % m;
        let conj = (3 + m - 2 * s % m) % m;
        assert_eq!(a % 25, 0, "alpha lands in the square of the prime");
        let unit_a = a / 25; // known mod 5^4
        // log(u) = log(u^4)/4 with log(1+x) = x - x^2/2 + x^3/3 (mod 5^4)
        let log_mod = 5u64.pow(4);
        let log_u = |u: u64| -> u64 {
            let m4 = log_mod as u128;
            let u = u as u128 % m4;
            let u4 = u * u % m4 * u % m4 * u % m4;
            let x = (u4 + m4 - 1) % m4;
            let inv2 = 313 * 313 % m4 * 5 % m4; // placeholder, recomputed below
            let _ = inv2;
            // modular inverses of 2, 3, 4 mod 5^4
            let inv = |k: u128| -> u128 {
                let mut t = 1u128;
                let mut b = k % m4;
                let mut e = (4 * 125) - 1; // phi(5^4) - 1 = 499
                while e > 0 {
                    if e & 1 == 1 {
                        t = t * b % m4;
                    }
                    b = b * b % m4;
                    e >>= 1;
                }
                t
            };
            let x2 = x * x % m4;
            let x3 = x2 * x % m4;
            let series = (x + m4 - x2 * inv(2) % m4 + x3 * inv(3) % m4) % m4;
            (series * inv(4) % m4) as u64
        };
        let la = log_u(unit_a % log_mod);
        let lb = log_u(conj % log_mod);
        // Reg = (log a - log b)/2 where the class order is... the order of
        // the prime above 5 in Cl(-4) is 1, and alpha generates its square,
        // so Reg = (log a - log b)/2.
        let diff = (la + log_mod - lb) % log_mod;
        let half = diff * 313 % 625 % 625; // 1/2 = 313 mod 625
        let mut reg = half % 625;
        // canonical sign: leading digit of the unit part in [1, 2]
        let mut t = reg;
        while t % 5 == 0 {
            t /= 5;
        }
        if t % 5 > 2 {
            reg = (625 - reg) % 625;
        }
        let mut val = 0;
        let mut r = reg;
        while r % 5 == 0 {
            val += 1;
            r /= 5;
        }
        (val, reg % 125)
    }
}

/// Criterion 3: the pinned classifications, each first confirmed by the
/// standalone congruence/log oracles above and then frozen.
#[test]
fn acceptance_03_pinned_classifications() {
    let t0 = Instant::now();

    // (-4, 5): every candidate generator of norm 25 in the square of a
    // prime above 5 has Tr^4 ≢ 1 (mod 25), so lambda = 1.
    let sols = pinned_oracles::norm_equation_solutions(-4, 25);
    assert!(!sols.is_empty());
    let mut any_noncongruent = false;
    for (x, _y) in &sols {
        let t = x.rem_euclid(25) as u64;
        if t % 5 != 0 {
            let v = pinned_oracles::trace_power(t, 5);
            assert_ne!(v, 1, "trace {t} unexpectedly satisfies the congruence");
            any_noncongruent = true;
        }
    }
    assert!(any_noncongruent);
    // The standalone regulator route agrees: valuation 1, canonical
    // residue 30 mod 125.
    assert_eq!(pinned_oracles::gaussian_regulator_mod_125(), (1, 30));

    // (-3, 13): every candidate generator of norm 169 satisfies the
    // congruence, so lambda > 1.
    let sols = pinned_oracles::norm_equation_solutions(-3, 169);
    assert!(!sols.is_empty());
    for (x, y) in &sols {
        if *y == 0 {
            continue;
        }
        let t = x.rem_euclid(169) as u64;
        if t % 13 != 0 {
            assert_eq!(pinned_oracles::trace_power(t, 13), 1, "trace {t}");
        }
    }

    // (-23, 5): 5 is inert (Euler criterion -1) and coprime to h = 3.
    assert_eq!(pinned_oracles::euler_symbol(-23, 5), -1);
    assert_eq!(pinned_oracles::form_count(-23), 3);

    // Frozen regression values through the implementation.
    let f4 = quadfield::ImagQuadField::new(-4).unwrap();
    let f3 = quadfield::ImagQuadField::new(-3).unwrap();
    let f23 = quadfield::ImagQuadField::new(-23).unwrap();
    assert_eq!(lambda_classify(&f4, 5).value, LambdaValue::One);
    assert_eq!(lambda_classify(&f3, 13).value, LambdaValue::GreaterThanOne);
    assert_eq!(lambda_classify(&f23, 5).value, LambdaValue::Zero);
    let reg = iwasawa_core::invariants::gross_regulator(&f4, 5).unwrap();
    assert_eq!(reg.valuation().unwrap(), Some(1));
    assert_eq!(reg.residue(3).unwrap(), BigUint::from(30u32));
    pass(3, "(-4,5)=One, (-3,13)=GreaterThanOne, (-23,5)=Zero, oracle-confirmed", t0);
}

/// Criterion 4: 1000 random Weierstrass round-trips over Z_5 and Z_7
/// recover (mu, g) exactly, within 10 seconds.
#[test]
fn acceptance_04_weierstrass_roundtrip() {
    use rand::{Rng, SeedableRng};
    let t0 = Instant::now();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260809);
    let mut done = 0u32;
    while done < 1000 {
        let p = if done % 2 == 0 { 5u64 } else { 7 };
        let ring = CoeffRing::zp(p, 12);
        let mu = rng.gen_range(0..=3u32);
        let deg = rng.gen_range(0..=6usize);
        let mut g: Vec<i64> = (0..deg)
            .map(|_| p as i64 * rng.gen_range(0..(p as i64).pow(2)))
            .collect();
        g.push(1);
        let mut u: Vec<i64> = (0..36).map(|_| rng.gen_range(0..(p as i64).pow(3))).collect();
        if u[0] % p as i64 == 0 {
            u[0] += 1;
        }
        let gs = CharSeries::from_i64_coeffs(ring.clone(), &g).unwrap();
        let us = CharSeries::from_residues(
            ring.clone(),
            &u.iter().map(|&c| (BigInt::from(c), Some(12))).collect::<Vec<_>>(),
        )
        .unwrap();
        let f = gs.mul(&us).scale_by_pi_power(mu);
        let (mu2, g2, _u2) = weierstrass_prepare(&f).unwrap();
        assert_eq!(mu2, mu);
        assert_eq!(g2.truncation_degree(), deg);
        let out_prec = g2.ring().prec;
        assert!(out_prec >= 4);
        let modulus = BigInt::from(p).pow(out_prec);
        for (i, c) in g.iter().enumerate() {
            let expect = BigInt::from(*c).mod_floor(&modulus);
            let got = match g2.coeff(i) {
                iwasawa_core::lambda::Coeff::ExactZero => BigInt::zero(),
                iwasawa_core::lambda::Coeff::Mod(r) => BigInt::from(r.clone()),
            };
            assert_eq!(got, expect, "coefficient {i}");
        }
        done += 1;
    }
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "criterion 4 exceeded 10 s: {elapsed:.1}s");
    pass(4, "1000 random (mu, g, u) products recovered exactly", t0);
}

/// Criterion 5: the Euler-characteristic dichotomy chi = 1 iff
/// (mu, lambda) = (0, 0), exhaustively over all series with M = 4 and
/// coefficients mod 5^2; and chi = q^{v(f(0))} on 1000 random
/// characteristic elements of structure data.
#[test]
fn acceptance_05_euler_characteristic_dichotomy() {
    use rand::{Rng, SeedableRng};
    let t0 = Instant::now();
    let ring = CoeffRing { p: 5, residue_degree: 1, ram_index: 1, prec: 2 };
    let mut total = 0u64;
    let mut chi_one = 0u64;
    for a0 in 0..25i64 {
        for a1 in 0..25i64 {
            for a2 in 0..25i64 {
                for a3 in 0..25i64 {
                    for a4 in 0..25i64 {
                        let f = CharSeries::from_residues(
                            ring.clone(),
                            &[
                                (BigInt::from(a0), Some(2)),
                                (BigInt::from(a1), Some(2)),
                                (BigInt::from(a2), Some(2)),
                                (BigInt::from(a3), Some(2)),
                                (BigInt::from(a4), Some(2)),
                            ],
                        )
                        .unwrap();
                        let is_one = matches!(
                            euler_characteristic(&f),
                            Ok(EulerChar::Finite(ref v)) if v.is_one()
                        );
                        let inv_zero = matches!(weierstrass_invariants(&f), Ok((0, 0)));
                        assert_eq!(is_one, inv_zero, "a=({a0},{a1},{a2},{a3},{a4})");
                        total += 1;
                        if is_one {
                            chi_one += 1;
                        }
                    }
                }
            }
        }
    }
    assert_eq!(total, 25u64.pow(5));
    // chi = 1 iff v(a_0) = 0: 20 unit residues among 25 for a_0.
    assert_eq!(chi_one, 20 * 25u64.pow(4));

    // Second half: chi = q^{v(f(0))} against the exact integer product.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let ring = CoeffRing::zp(5, 12);
    for _ in 0..1000 {
        let n_mu = rng.gen_range(0..=2);
        let mu_parts: Vec<u32> = (0..n_mu).map(|_| rng.gen_range(1..=2)).collect();
        let n_poly = rng.gen_range(0..=2);
        let poly_parts: Vec<(Vec<BigInt>, u32)> = (0..n_poly)
            .map(|_| {
                let deg = rng.gen_range(1..=3);
                let mut g: Vec<BigInt> =
                    (0..deg).map(|_| BigInt::from(5 * rng.gen_range(0..5i64))).collect();
                g.push(BigInt::one());
                (g, rng.gen_range(1..=2u32))
            })
            .collect();
        let data = StructureData { mu_parts: mu_parts.clone(), poly_parts: poly_parts.clone() };
        let f = characteristic_element(&data, &ring).unwrap();
        // Exact integer value of f(0).
        let mut exact = BigInt::from(5).pow(mu_parts.iter().sum::<u32>());
        for (g, mult) in &poly_parts {
            exact *= g[0].pow(*mult);
        }
        let chi = euler_characteristic(&f).unwrap();
        if exact.is_zero() {
            assert_eq!(chi, EulerChar::Undefined);
        } else {
            let mut v = 0u32;
            let mut t = exact.clone();
            while t.mod_floor(&BigInt::from(5)).is_zero() {
                t /= 5;
                v += 1;
            }
            assert_eq!(chi, EulerChar::Finite(BigUint::from(5u32).pow(v)));
        }
    }
    pass(5, "chi = 1 iff (mu, lambda) = (0,0) over 5^2-exhaustive M = 4; chi = q^v on 1000 products", t0);
}

/// Criterion 6: the icosahedral suite: exactly 60 matrices, closure within
/// 1e-6, the exact snapped trace multiset, d+ = 1, and 5-cycle eigenvalues
/// {1, e^{±2 pi i/5}} within 1e-9.
#[test]
fn acceptance_06_icosahedral_suite() {
    let t0 = Instant::now();
    let group = build_icosahedral_group().unwrap(); // closure checked inside
    assert_eq!(group.len(), 60);
    let phi = iwasawa_core::artin::icosa::GOLDEN_RATIO;
    let mut counts = std::collections::BTreeMap::new();
    for g in &group {
        let t = snap_trace(g.trace()).unwrap();
        *counts.entry(format!("{t:.6}")).or_insert(0u32) += 1;
    }
    let expected = [
        (3.0, 1u32),
        (-1.0, 15),
        (0.0, 20),
        (phi, 12),
        (1.0 - phi, 12),
    ];
    for (value, count) in expected {
        assert_eq!(counts.get(&format!("{value:.6}")), Some(&count), "trace {value}");
    }
    // d+ = (chi(1) + chi(sigma))/2 for an order-2 element.
    let half_turn = group.iter().find(|g| g.axis_class == AxisClass::Edge).unwrap();
    let d_plus = (3.0 + snap_trace(half_turn.trace()).unwrap()) / 2.0;
    assert_eq!(d_plus, 1.0);
    // 5-cycle eigenvalues.
    let theta = 2.0 * std::f64::consts::PI / 5.0;
    for g in &group {
        if g.axis_class == AxisClass::Vertex && (g.angle.abs() - theta).abs() < 1e-12 {
            let (re, im) = g.complex_eigenvalue();
            assert!((re - theta.cos()).abs() < 1e-9);
            assert!((im - theta.sin()).abs() < 1e-9);
        }
    }
    pass(6, "60 rotations, closed to 1e-6, exact trace multiset, d+ = 1", t0);
}

/// Criterion 7: Chebotarev sanity for x^3 - x - 1: the share of p <= 10^5
/// with irreducible reduction lies in [0.313, 0.353], within 30 seconds.
#[test]
fn acceptance_07_chebotarev_window() {
    let t0 = Instant::now();
    let poly = CubicPoly::new(Integer::from(0), Integer::from(-1), Integer::from(-1)).unwrap();
    let rep = DihedralS3Rep::new(CubicField::new(poly).unwrap()).unwrap();
    let primes = arith::primes_in_range(2, 100_000);
    assert_eq!(primes.len(), 9592); // pi(10^5)
    let hits = primes.iter().filter(|&&p| iwasawa_core::artin::in_s(&rep, p).0).count();
    let ratio = hits as f64 / primes.len() as f64;
    assert!(
        (0.313..=0.353).contains(&ratio),
        "S-density {ratio} outside [0.313, 0.353]"
    );
    let elapsed = t0.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "criterion 7 exceeded 30 s: {elapsed:.1}s");
    pass(7, &format!("S-density {ratio:.4} within [0.313, 0.353] at 10^5"), t0);
}

/// Criterion 8: T(rho) growth for x^3 - x - 1 with exact subfield data up
/// to 10^4: nondecreasing, nonzero, and every certified row fully verified
/// (the c log x lower bound is reported, never asserted).
#[test]
fn acceptance_08_certified_t_growth() {
    let t0 = Instant::now();
    let poly = CubicPoly::new(Integer::from(0), Integer::from(-1), Integer::from(-1)).unwrap();
    let rep = DihedralS3Rep::new(CubicField::new(poly).unwrap()).unwrap();
    let opts = CertifyOptions::default();
    let report = survey::scan_t(&rep, 10_000, &opts, ScanMode::Parallel);
    let Summary::Artin { certified_t, fitted_c, samples, .. } = &report.summary else {
        panic!("wrong summary kind");
    };
    assert!(*certified_t > 0, "no prime certified below 10^4");
    let mut last = 0;
    for (_, n) in samples {
        assert!(*n >= last, "counting function must be nondecreasing");
        last = *n;
    }
    for row in &report.rows {
        if row.verdict == "in_t" {
            assert_eq!(row.prational_l, "yes", "p={}", row.p);
            assert_eq!(row.prational_k0, "yes", "p={}", row.p);
            assert_eq!(row.hk_source, "cache", "p={}", row.p);
            assert!(!row.notes.contains("h_assumed"), "p={}", row.p);
        }
    }
    pass(
        8,
        &format!(
            "{certified_t} primes certified up to 10^4; reported fit N_T(x) ~ {fitted_c:.2} log x"
        ),
        t0,
    );
}

/// Criterion 9: heuristic identities: the r = 0 column of the random-module
/// product equals the Cohen-Lenstra product to 1e-12 at matched truncation
/// for p in {5, 7, 13}, and rank-failure(1, 2, 5) is exactly 1/25.
#[test]
fn acceptance_09_heuristic_identities() {
    let t0 = Instant::now();
    for &p in &[5u64, 7, 13] {
        let ejv = survey::heuristics::ejv_probability(p, 0, 64);
        let cl = survey::heuristics::cohen_lenstra_probability(p, 64);
        assert!((ejv - cl).abs() < 1e-12, "p={p}");
    }
    let (num, den) = survey::heuristics::rank_failure_probability(5, 1, 2);
    assert_eq!((num.to_string().as_str(), den.to_string().as_str()), ("1", "25"));
    let report = survey::heuristics::heuristic_values(5, 1, 1, 2, 64);
    assert_eq!(report.rank_failure, 0.04);
    assert!((report.ejv - 0.19008).abs() < 1e-5);
    pass(9, "EJV(p,0) = Cohen-Lenstra to 1e-12; rank-failure(1,2,5) = 1/25 exactly", t0);
}

/// Criterion 10: parallel and serial scans serialize byte-identically on
/// the criteria 7-8 inputs.
#[test]
fn acceptance_10_scan_determinism() {
    let t0 = Instant::now();
    let poly = CubicPoly::new(Integer::from(0), Integer::from(-1), Integer::from(-1)).unwrap();
    let rep = DihedralS3Rep::new(CubicField::new(poly).unwrap()).unwrap();
    let opts = CertifyOptions::default();
    let par = survey::scan_t(&rep, 10_000, &opts, ScanMode::Parallel);
    let ser = survey::scan_t(&rep, 10_000, &opts, ScanMode::Serial);
    assert_eq!(par.to_csv(), ser.to_csv(), "artin CSV outputs differ");
    assert_eq!(par.to_json(), ser.to_json(), "artin JSON outputs differ");

    let field = quadfield::ImagQuadField::new(-4).unwrap();
    let lp = survey::scan_lambda(&field, 10_000, ScanMode::Parallel, None);
    let ls = survey::scan_lambda(&field, 10_000, ScanMode::Serial, None);
    assert_eq!(lp.to_csv(), ls.to_csv(), "lambda CSV outputs differ");
    assert_eq!(lp.to_json(), ls.to_json(), "lambda JSON outputs differ");
    pass(10, "parallel and serial scans byte-identical (artin 10^4, lambda 10^4)", t0);
}
