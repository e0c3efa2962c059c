//! Parser for monic integer cubics from CLI strings: either the coefficient
//! list "c3,c2,c1,c0" or polynomial text like "x^3 - x - 1" / "x^3 + 4*x - 1".

use crate::arith::{ArithError, CubicPoly, Integer};

pub fn parse_cubic(input: &str) -> Result<CubicPoly, ArithError> {
    let trimmed = input.trim();
    if trimmed.contains(',') {
        return parse_coeff_list(trimmed);
    }
    parse_poly_text(trimmed)
}

fn parse_coeff_list(s: &str) -> Result<CubicPoly, ArithError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(ArithError::InvalidInput(format!(
            "expected four coefficients c3,c2,c1,c0, got {}",
            parts.len()
        )));
    }
    let coeffs: Vec<Integer> = parts
        .iter()
        .map(|p| {
            p.parse::<Integer>()
                .map_err(|e| ArithError::InvalidInput(format!("bad coefficient {p}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    if coeffs[0] != Integer::from(1) {
        return Err(ArithError::InvalidInput("cubic must be monic (c3 = 1)".into()));
    }
    CubicPoly::new(coeffs[1].clone(), coeffs[2].clone(), coeffs[3].clone())
}

/// Term-by-term scan of "[±] [k][*] [x [^e]]" with e in 0..=3.
fn parse_poly_text(s: &str) -> Result<CubicPoly, ArithError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(ArithError::InvalidInput("empty polynomial".into()));
    }
    let mut coeffs = [Integer::from(0), Integer::from(0), Integer::from(0), Integer::from(0)];
    let bytes = compact.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        let mut sign = Integer::from(1);
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        if i >= bytes.len() {
            return Err(ArithError::InvalidInput("dangling sign".into()));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coef = if i > start {
            compact[start..i]
                .parse::<Integer>()
                .map_err(|e| ArithError::InvalidInput(e.to_string()))?
        } else {
            Integer::from(1)
        };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let exp = if i < bytes.len() && (bytes[i] == b'x' || bytes[i] == b'X') {
            i += 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if es == i {
                    return Err(ArithError::InvalidInput("missing exponent after ^".into()));
                }
                compact[es..i]
                    .parse::<usize>()
                    .map_err(|e| ArithError::InvalidInput(e.to_string()))?
            } else {
                1
            }
        } else {
            if i == start {
                return Err(ArithError::InvalidInput(format!(
                    "unexpected character at position {i}"
                )));
            }
            0
        };
        if exp > 3 {
            return Err(ArithError::InvalidInput(format!("degree {exp} exceeds 3")));
        }
        coeffs[exp] += sign * coef;
    }
    if coeffs[3] != Integer::from(1) {
        return Err(ArithError::InvalidInput("cubic must be monic in x^3".into()));
    }
    CubicPoly::new(coeffs[2].clone(), coeffs[1].clone(), coeffs[0].clone())
}
