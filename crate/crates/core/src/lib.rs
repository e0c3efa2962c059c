//! Effective criteria for Iwasawa invariants of imaginary quadratic fields
//! and dihedral Artin representations.
//!
//! The crate is organized around the objects the criteria consume:
//!
//! - [`arith`]: exact integer arithmetic, Kronecker symbols, deterministic
//!   primality, cubic factorization types.
//! - [`padic`]: finite-precision arithmetic in `Z_p` and its unramified
//!   extensions of degree at most 3, Teichmüller lifts, the Iwasawa
//!   logarithm (branch `log p := 0`), and norms to `Q_p`.
//! - [`lambda`]: the Iwasawa algebra `O[[T]]` at finite precision —
//!   Weierstrass preparation, mu/lambda invariants, characteristic
//!   elements, Euler characteristics.
//! - [`quadfield`]: imaginary quadratic fields through binary quadratic
//!   forms — class numbers, splitting, ideal-class orders, principal
//!   generators of split prime powers.
//! - [`invariants`]: the lambda-classification engine — Gold's criterion in
//!   trace form, the Federer-Gross p-adic regulator and its normalization.
//! - [`cubicfield`]: non-Galois complex cubic fields — class numbers by
//!   Minkowski enumeration, fundamental units, p-rationality tests.
//! - [`artin`]: the S(rho)/T(rho) prime classifier for dihedral S3
//!   representations and the icosahedral A5 rotation checker.
//! - [`survey`]: prime-range scans, density heuristics, CSV/JSON reports.

pub mod arith;
pub mod artin;
pub mod cubicfield;
pub mod invariants;
pub mod lambda;
pub mod padic;
pub mod quadfield;
pub mod survey;
