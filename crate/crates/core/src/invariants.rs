//! The lambda-classification engine for imaginary quadratic fields.
//!
//! Two routes decide whether λ_p(K) exceeds 1 for a split prime p with
//! p coprime to the class number:
//!
//! - Gold's criterion in trace form: with 𝔭^r = (α), r >= 2 and p ∤ r,
//!   λ_p(K) > 1 iff Tr(α)^(p-1) ≡ 1 (mod p^2). This is the integer-only
//!   fast path (r >= 2 puts the conjugate of α inside 𝔭̄^2, so α ≡ Tr(α)
//!   there, and the residue ring at 𝔭̄^2 is Z/p^2).
//! - The p-adic regulator route: Reg_p(K) = (1/r) log_p(ι(α)/ι(ᾱ)) for the
//!   designated embedding ι; the normalized regulator Reg_p / p is a unit
//!   iff λ_p(K) = 1.
//!
//! Splitting conventions: r_{p,K} = 1 for split p and 0 otherwise (the
//! convention under which λ >= r always holds); verdicts carry the note.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as NumInteger;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith;
use crate::padic::{self, PAdicNumber, PadicError};
use crate::quadfield::{self, ImagQuadField, QuadElement, QuadError, SplitType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    Split,
    ClassNumberCoprime,
    UnitCountCoprime,
    PrimeAtLeastFive,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("hypothesis violated: {0:?}")]
    HypothesisViolated(Hypothesis),
    #[error(transparent)]
    Precision(#[from] PadicError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GoldResult {
    LambdaEqOne,
    LambdaGtOne,
}

/// Outcome of Gold's trace test with its full evidence trail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldTest {
    pub result: GoldResult,
    /// Exponent used: the least multiple of the class order of 𝔭 that is
    /// >= 2 and coprime to p.
    pub r: u64,
    pub alpha: QuadElement,
    /// Tr(alpha)^(p-1) mod p^2.
    pub congruence_value: BigUint,
}

fn check_common_hypotheses(field: &ImagQuadField, p: u64) -> Result<u64, InvariantError> {
    if p < 5 {
        return Err(InvariantError::HypothesisViolated(Hypothesis::PrimeAtLeastFive));
    }
    if u64::from(field.unit_count()) % p == 0 {
        return Err(InvariantError::HypothesisViolated(Hypothesis::UnitCountCoprime));
    }
    let h = field.class_number();
    if h % p == 0 {
        return Err(InvariantError::HypothesisViolated(Hypothesis::ClassNumberCoprime));
    }
    Ok(h)
}

/// Gold's criterion, trace form: for split p >= 5 with p ∤ h_K w_K,
/// λ_p(K) > 1 iff Tr(α)^(p-1) ≡ 1 (mod p^2) for a generator α of 𝔭^r.
pub fn gold_test(field: &ImagQuadField, p: u64) -> Result<GoldTest, InvariantError> {
    let d = field.discriminant();
    check_common_hypotheses(field, p)?;
    if !matches!(quadfield::splitting(d, p), SplitType::Split { .. }) {
        return Err(InvariantError::HypothesisViolated(Hypothesis::Split));
    }
    let ord = quadfield::prime_class_order(d, p)?;
    // Least multiple of ord that is >= 2; p ∤ ord since ord | h_K.
    let r = if ord >= 2 { ord } else { 2 };
    debug_assert!(r % p != 0);
    let alpha = quadfield::principal_generator(d, p, r)?;
    let p2 = BigInt::from(p).pow(2);
    let tr = alpha.trace().mod_floor(&p2);
    let value = arith::modpow(&tr, &BigInt::from(p - 1), &p2).to_biguint().unwrap();
    let result = if value.is_one() {
        GoldResult::LambdaGtOne
    } else {
        GoldResult::LambdaEqOne
    };
    Ok(GoldTest { result, r, alpha, congruence_value: value })
}

/// Newton lift of the designated square root of D to p^digits (p odd).
fn hensel_sqrt(d: i64, p: u64, digits: u32, root_mod_p: u64) -> BigUint {
    let big_d = BigInt::from(d);
    let mut s = BigInt::from(root_mod_p % p);
    let mut known = 1u32;
    while known < digits {
        let next = (known * 2).min(digits);
        let modulus = BigInt::from(p).pow(next);
        let f = (&s * &s - &big_d).mod_floor(&modulus);
        let deriv = (BigInt::from(2) * &s).mod_floor(&modulus);
        let inv = deriv
            .extended_gcd(&modulus)
            .x
            .mod_floor(&modulus);
        s = (&s - f * inv).mod_floor(&modulus);
        known = next;
    }
    debug_assert!(((&s * &s - BigInt::from(d)) % BigInt::from(p).pow(digits)).is_zero());
    s.to_biguint().unwrap()
}

/// Regulator at an explicit target precision (digits of the returned value).
fn gross_regulator_at(
    field: &ImagQuadField,
    p: u64,
    prec: u32,
) -> Result<PAdicNumber, InvariantError> {
    let d = field.discriminant();
    check_common_hypotheses(field, p)?;
    let SplitType::Split { b } = quadfield::splitting(d, p) else {
        return Err(InvariantError::HypothesisViolated(Hypothesis::Split));
    };
    let ord = quadfield::prime_class_order(d, p)?;
    let alpha = quadfield::principal_generator(d, p, ord)?;

    let r0 = u32::try_from(ord).expect("class order fits u32");
    let work = r0 + prec + 2;
    let s = BigInt::from(hensel_sqrt(d, p, work, b % p));
    let modulus = BigInt::from(p).pow(work);
    let inv2 = BigInt::from(2).extended_gcd(&modulus).x.mod_floor(&modulus);
    let emb = ((&alpha.x + &alpha.y * &s) * &inv2).mod_floor(&modulus);
    let emb_conj = ((&alpha.x - &alpha.y * &s) * &inv2).mod_floor(&modulus);

    let i_alpha = PAdicNumber::from_residue(&emb, p, work);
    let i_conj = PAdicNumber::from_residue(&emb_conj, p, work);
    debug_assert_eq!(i_alpha.valuation().ok().flatten(), Some(r0), "alpha has 𝔭-valuation r");
    debug_assert_eq!(i_conj.valuation().ok().flatten(), Some(0), "conjugate is a 𝔭-unit");

    let log_a = padic::iwasawa_log(&i_alpha)?; // valid mod p^(work - r0)
    let log_b = padic::iwasawa_log(&i_conj)?; // valid mod p^work
    let valid = work - r0; // = prec + 2
    let pm = BigUint::from(p).pow(valid);
    let diff = (log_a.residue(valid)? + &pm - log_b.residue(valid)?) % &pm;
    // Divide by r (a p-adic unit, since r | h and p ∤ h).
    let ord_inv = BigInt::from(ord)
        .extended_gcd(&BigInt::from(pm.clone()))
        .x
        .mod_floor(&BigInt::from(pm.clone()))
        .to_biguint()
        .unwrap();
    let mut reg = diff * ord_inv % &pm;
    if reg.is_zero() {
        return Err(InvariantError::Precision(PadicError::PrecisionExhausted(format!(
            "regulator is 0 mod p^{valid}"
        ))));
    }
    // Canonical sign: the leading digit of the unit part lies in [1, p/2].
    let mut t = reg.clone();
    let bp = BigUint::from(p);
    while (&t % &bp).is_zero() {
        t /= &bp;
    }
    let lead = (&t % &bp).to_u64().unwrap();
    if lead > (p - 1) / 2 {
        reg = (&pm - &reg) % &pm;
    }
    // Return every certified digit: the criteria consume 2, the guard adds
    // `prec` on top.
    let out = PAdicNumber::from_residue(&BigInt::from(reg), p, valid);
    Ok(out)
}

/// Default regulator precision and the escalation limit on exhaustion.
const REGULATOR_DEFAULT_PREC: u32 = 3;
const REGULATOR_MAX_PREC: u32 = 10;

/// The Federer-Gross regulator Reg_p(K) = (1/r) log_p(ι(α)/ι(ᾱ)), returned
/// with canonical sign. Divisible by p for split p; precision escalates from
/// 3 to 10 digits before failing hard.
pub fn gross_regulator(field: &ImagQuadField, p: u64) -> Result<PAdicNumber, InvariantError> {
    match gross_regulator_at(field, p, REGULATOR_DEFAULT_PREC) {
        Err(InvariantError::Precision(_)) => gross_regulator_at(field, p, REGULATOR_MAX_PREC),
        other => other,
    }
}

/// The normalized regulator R_p(K) = Reg_p(K) / p^{r_{p,K}} (split p has
/// r_{p,K} = 1); "p ∤ R_p(K)" is exactly "the result is a unit".
pub fn normalized_regulator(field: &ImagQuadField, p: u64) -> Result<PAdicNumber, InvariantError> {
    let reg = gross_regulator(field, p)?;
    Ok(reg.shift_down(1)?)
}

/// Whether R_p(K) is a unit, decided at the default precision. Always
/// decidable: the regulator has valuation >= 1, and valuation exactly 1 is
/// visible mod p^2.
pub fn normalized_regulator_is_unit(field: &ImagQuadField, p: u64) -> Result<bool, InvariantError> {
    let reg = gross_regulator_at(field, p, REGULATOR_DEFAULT_PREC)?;
    Ok(!reg.valuation_at_least(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LambdaValue {
    Zero,
    One,
    GreaterThanOne,
    Unknown,
}

/// Per-(field, prime) classification record with the evidence trail.
#[derive(Debug, Clone)]
pub struct LambdaVerdict {
    pub d: i64,
    pub p: u64,
    pub value: LambdaValue,
    pub evidence: LambdaEvidence,
}

#[derive(Debug, Clone)]
pub struct LambdaEvidence {
    pub split: SplitType,
    pub h: u64,
    pub p_divides_h: bool,
    pub gold: Option<GoldTest>,
    /// Valuation bound from the regulator route: true iff v(Reg_p) >= 2,
    /// i.e. R_p is not a unit. Filled whenever Gold's test runs.
    pub regulator_nonunit: Option<bool>,
    /// μ_p(K) = 0 for abelian fields (Ferrero-Washington).
    pub mu: u32,
    pub notes: Vec<String>,
}

/// Classification of λ_p(K):
///
/// - inert/ramified p with p ∤ h_K: λ = 0;
/// - split p with p ∤ h_K: λ = 1 or > 1 by Gold's trace test, with the
///   regulator route recorded alongside;
/// - every unmet hypothesis degrades to `Unknown` with a note.
pub fn lambda_classify(field: &ImagQuadField, p: u64) -> LambdaVerdict {
    let d = field.discriminant();
    let split = quadfield::splitting(d, p);
    let h = field.class_number();
    let p_divides_h = h % p == 0;
    let mut notes = vec![
        "convention: r_{p,K} = 1 for split p, 0 for inert/ramified".to_string(),
        "mu = 0 by Ferrero-Washington (abelian field)".to_string(),
    ];
    let mut gold = None;
    let mut regulator_nonunit = None;

    let value = if p < 5 {
        notes.push("p < 5 outside the supported criteria".into());
        LambdaValue::Unknown
    } else if u64::from(field.unit_count()) % p == 0 {
        notes.push("p divides the unit count w_K".into());
        LambdaValue::Unknown
    } else {
        match split {
            SplitType::Inert | SplitType::Ramified => {
                if p_divides_h {
                    notes.push("p | h_K: criterion inapplicable".into());
                    LambdaValue::Unknown
                } else {
                    LambdaValue::Zero
                }
            }
            SplitType::Split { .. } => {
                if p_divides_h {
                    notes.push("p | h_K: criterion inapplicable".into());
                    LambdaValue::Unknown
                } else {
                    notes.push(format!(
                        "w_(K(mu_p)) ~ p holds: p || lcm(w_K, p) since p does not divide w_K = {}",
                        field.unit_count()
                    ));
                    match gold_test(field, p) {
                        Ok(test) => {
                            let verdict = match test.result {
                                GoldResult::LambdaEqOne => LambdaValue::One,
                                GoldResult::LambdaGtOne => LambdaValue::GreaterThanOne,
                            };
                            gold = Some(test);
                            regulator_nonunit =
                                normalized_regulator_is_unit(field, p).ok().map(|u| !u);
                            verdict
                        }
                        Err(e) => {
                            notes.push(format!("gold test failed: {e}"));
                            LambdaValue::Unknown
                        }
                    }
                }
            }
        }
    };
    LambdaVerdict {
        d,
        p,
        value,
        evidence: LambdaEvidence {
            split,
            h,
            p_divides_h,
            gold,
            regulator_nonunit,
            mu: 0,
            notes,
        },
    }
}
