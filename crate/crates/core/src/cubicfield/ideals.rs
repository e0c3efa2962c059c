//! Ideal lattices of the monogenic order Z[theta] of a cubic field.
//!
//! Ideals are stored in row Hermite normal form with respect to the power
//! basis (1, theta, theta^2): rows (n0, 0, 0), (m0, n1, 0), (k0, k1, n2)
//! with positive diagonal and reduced off-diagonal entries; the norm is the
//! diagonal product. Products are spanned by the nine pairwise products of
//! basis rows, and the "complement" N(J) J^{-1} comes from an integer
//! kernel computation.

use num_integer::Integer as NumInteger;
use num_traits::{Signed, Zero};

use super::CubicField;
use crate::arith::Integer;

pub type Elem = [Integer; 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicIdeal {
    /// Rows of the HNF basis matrix.
    pub rows: [Elem; 3],
}

pub fn elem_from_i64(a: i64, b: i64, c: i64) -> Elem {
    [Integer::from(a), Integer::from(b), Integer::from(c)]
}

pub fn elem_is_zero(e: &Elem) -> bool {
    e.iter().all(|c| c.is_zero())
}

impl CubicField {
    /// theta * (a, b, c) using theta^3 = -c2 theta^2 - c1 theta - c0.
    pub(crate) fn mul_theta(&self, e: &Elem) -> Elem {
        let t3 = self.theta3();
        [
            &e[2] * &t3[0],
            &e[0] + &e[2] * &t3[1],
            &e[1] + &e[2] * &t3[2],
        ]
    }

    pub(crate) fn elem_mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut conv = [
            Integer::zero(),
            Integer::zero(),
            Integer::zero(),
            Integer::zero(),
            Integer::zero(),
        ];
        for i in 0..3 {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                conv[i + j] += &a[i] * &b[j];
            }
        }
        let t3 = self.theta3();
        let t4 = self.theta4();
        [
            &conv[0] + &conv[3] * &t3[0] + &conv[4] * &t4[0],
            &conv[1] + &conv[3] * &t3[1] + &conv[4] * &t4[1],
            &conv[2] + &conv[3] * &t3[2] + &conv[4] * &t4[2],
        ]
    }

    /// Field norm of an element of Z[theta], as the determinant of its
    /// multiplication matrix.
    pub fn elem_norm(&self, e: &Elem) -> Integer {
        let c0 = e.clone();
        let c1 = self.mul_theta(e);
        let c2 = self.mul_theta(&c1);
        det3(&[c0, c1, c2])
    }
}

fn det3(cols: &[Elem; 3]) -> Integer {
    let m = cols;
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[1][0] * (&m[0][1] * &m[2][2] - &m[0][2] * &m[2][1])
        + &m[2][0] * (&m[0][1] * &m[1][2] - &m[0][2] * &m[1][1])
}

/// Row HNF of a full-rank set of generators.
pub fn hnf_rows(mut gens: Vec<Elem>) -> CubicIdeal {
    gens.retain(|g| !elem_is_zero(g));
    assert!(!gens.is_empty(), "degenerate lattice");
    // Pivot on coordinate 2, then 1, then 0.
    let mut pivots: Vec<Elem> = Vec::with_capacity(3);
    for coord in (0..3).rev() {
        loop {
            let mut idx: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i][coord].is_zero()).collect();
            if idx.len() <= 1 {
                break;
            }
            idx.sort_by_key(|&i| gens[i][coord].abs());
            let (pi, qi) = (idx[0], idx[1]);
            let q = gens[qi][coord].div_floor(&gens[pi][coord]);
            for k in 0..3 {
                let sub = &q * &gens[pi][k];
                gens[qi][k] -= sub;
            }
        }
        if let Some(i) = (0..gens.len()).find(|&i| !gens[i][coord].is_zero()) {
            let mut row = gens.remove(i);
            if row[coord].is_negative() {
                for c in row.iter_mut() {
                    *c = -std::mem::take(c);
                }
            }
            pivots.push(row);
        } else {
            panic!("lattice does not have full rank");
        }
    }
    // pivots[0] has pivot at coord 2, [1] at coord 1, [2] at coord 0.
    let b1 = pivots.pop().unwrap();
    let mut b2 = pivots.pop().unwrap();
    let mut b3 = pivots.pop().unwrap();
    // Reduce off-diagonal entries.
    let q = b3[1].div_floor(&b2[1]);
    for k in 0..3 {
        let sub = &q * &b2[k];
        b3[k] -= sub;
    }
    let q = b3[0].div_floor(&b1[0]);
    b3[0] -= &q * &b1[0];
    let q = b2[0].div_floor(&b1[0]);
    b2[0] -= &q * &b1[0];
    CubicIdeal { rows: [b1, b2, b3] }
}

impl CubicIdeal {
    pub fn norm(&self) -> Integer {
        &self.rows[0][0] * &self.rows[1][1] * &self.rows[2][2]
    }

    pub fn contains(&self, e: &Elem) -> bool {
        // Back-substitute through the triangular basis.
        let k2 = match e[2].clone().div_rem(&self.rows[2][2]) {
            (q, rem) if rem.is_zero() => q,
            _ => return false,
        };
        let e1 = &e[1] - &k2 * &self.rows[2][1];
        let k1 = match e1.div_rem(&self.rows[1][1]) {
            (q, rem) if rem.is_zero() => q,
            _ => return false,
        };
        let e0 = &e[0] - &k2 * &self.rows[2][0] - &k1 * &self.rows[1][0];
        e0.div_rem(&self.rows[0][0]).1.is_zero()
    }

    pub fn scalar(field: &CubicField, n: &Integer) -> CubicIdeal {
        let _ = field;
        let n = n.abs();
        CubicIdeal {
            rows: [
                [n.clone(), Integer::zero(), Integer::zero()],
                [Integer::zero(), n.clone(), Integer::zero()],
                [Integer::zero(), Integer::zero(), n],
            ],
        }
    }

    /// Exact division of every entry by a positive integer.
    pub fn divide_scalar(&self, n: &Integer) -> CubicIdeal {
        let rows = self.rows.clone().map(|r| {
            r.map(|c| {
                let (q, rem) = c.div_rem(n);
                assert!(rem.is_zero(), "scalar division must be exact");
                q
            })
        });
        CubicIdeal { rows }
    }
}

/// Ideal generated by ring elements (closing under multiplication by theta).
pub fn ideal_from_generators(field: &CubicField, gens: &[Elem]) -> CubicIdeal {
    let mut rows = Vec::with_capacity(gens.len() * 3);
    for g in gens {
        let t1 = field.mul_theta(g);
        let t2 = field.mul_theta(&t1);
        rows.push(g.clone());
        rows.push(t1);
        rows.push(t2);
    }
    hnf_rows(rows)
}

pub fn ideal_mul(field: &CubicField, a: &CubicIdeal, b: &CubicIdeal) -> CubicIdeal {
    let mut rows = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            rows.push(field.elem_mul(&a.rows[i], &b.rows[j]));
        }
    }
    hnf_rows(rows)
}

/// The prime ideal (q, g(theta)) for a monic factor g of f mod q (q coprime
/// to the index). Norm q^deg(g).
pub fn prime_ideal(field: &CubicField, q: u64, g: &[u64]) -> CubicIdeal {
    let mut coords = [Integer::zero(), Integer::zero(), Integer::zero()];
    for (i, &c) in g.iter().enumerate() {
        if i < 3 {
            coords[i] = Integer::from(c);
        }
    }
    ideal_from_generators(
        field,
        &[elem_from_i64(q as i64, 0, 0), coords],
    )
}

/// The complement J' = N(J) J^{-1} = { x in O : x J ⊆ N(J) O }, an integral
/// ideal of norm N(J)^2 with J J' = (N(J)).
pub fn complement(field: &CubicField, j: &CubicIdeal) -> CubicIdeal {
    let n = j.norm();
    // Conditions: for each basis row v, M_v x ≡ 0 (mod n), where M_v is the
    // multiplication-by-v matrix in the power basis.
    let mut a = Vec::with_capacity(9); // rows of the stacked 9x3 system
    for v in &j.rows {
        let col0 = v.clone();
        let col1 = field.mul_theta(v);
        let col2 = field.mul_theta(&col1);
        for r in 0..3 {
            a.push([col0[r].clone(), col1[r].clone(), col2[r].clone()]);
        }
    }
    // Kernel of [A | n I_9] over Z, projected to the x block.
    let rows = 9;
    let cols = 12;
    let mut mat: Vec<Vec<Integer>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Integer> = a[r].to_vec();
            row.extend((0..rows).map(|k| {
                if k == r {
                    n.clone()
                } else {
                    Integer::zero()
                }
            }));
            row
        })
        .collect();
    // Column reduction with a tracked transform.
    let mut u: Vec<Vec<Integer>> = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| if i == j { Integer::from(1) } else { Integer::zero() })
                .collect()
        })
        .collect();
    let mut pivot_col = 0usize;
    for r in 0..rows {
        loop {
            let mut live: Vec<usize> =
                (pivot_col..cols).filter(|&c| !mat[r][c].is_zero()).collect();
            if live.len() <= 1 {
                break;
            }
            live.sort_by_key(|&c| mat[r][c].abs());
            let (pc, qc) = (live[0], live[1]);
            let q = mat[r][qc].div_floor(&mat[r][pc]);
            for row in mat.iter_mut() {
                let sub = &q * &row[pc];
                row[qc] -= sub;
            }
            for urow in u.iter_mut() {
                let sub = &q * &urow[pc];
                urow[qc] -= sub;
            }
        }
        if let Some(c) = (pivot_col..cols).find(|&c| !mat[r][c].is_zero()) {
            mat.iter_mut().for_each(|row| row.swap(pivot_col, c));
            u.iter_mut().for_each(|row| row.swap(pivot_col, c));
            pivot_col += 1;
        }
    }
    // Kernel basis: columns past the pivots; project onto the first 3 rows
    // of the transform (the x block).
    let mut gens: Vec<Elem> = Vec::new();
    for c in pivot_col..cols {
        debug_assert!((0..rows).all(|r| mat[r][c].is_zero()));
        gens.push([u[0][c].clone(), u[1][c].clone(), u[2][c].clone()]);
    }
    // n O is always inside the complement; add it to guarantee full rank.
    gens.push([n.clone(), Integer::zero(), Integer::zero()]);
    gens.push([Integer::zero(), n.clone(), Integer::zero()]);
    gens.push([Integer::zero(), Integer::zero(), n.clone()]);
    let out = hnf_rows(gens);
    debug_assert_eq!(
        ideal_mul(field, j, &out),
        CubicIdeal::scalar(field, &n),
        "J * complement(J) must equal (N(J))"
    );
    out
}
