//! The rotation group of the icosahedron (isomorphic to A5) as explicit
//! 3x3 orthogonal matrices, and the prime checklist for the associated
//! 3-dimensional representation twisted by an even ramified character.
//!
//! Matrices are built from the axis-angle formula; group elements come in
//! four axis classes: the identity, 15 half-turns about edge midpoints,
//! 20 rotations of order 3 about face centers, and 24 of order 5 about
//! vertex axes. Arithmetic is binary64 with 1e-9 tolerances and exact
//! post-hoc snapping of traces to the five legal values.

use serde::Serialize;

use super::ArtinError;

pub const GOLDEN_RATIO: f64 = 1.618033988749894848;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AxisClass {
    Identity,
    Edge,
    Face,
    Vertex,
    Custom,
}

#[derive(Debug, Clone)]
pub struct RotationMatrix {
    pub m: [[f64; 3]; 3],
    pub axis_class: AxisClass,
    pub angle: f64,
}

impl RotationMatrix {
    pub fn trace(&self) -> f64 {
        self.m[0][0] + self.m[1][1] + self.m[2][2]
    }

    pub fn mul(&self, other: &RotationMatrix) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| self.m[i][k] * other.m[k][j]).sum();
            }
        }
        out
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        let mut max_err: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| self.m[k][i] * self.m[k][j]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                max_err = max_err.max((dot - expect).abs());
            }
        }
        max_err <= tol
    }

    pub fn det(&self) -> f64 {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Eigenvalues as (1, e^{i t}, e^{-i t}): the complex pair is returned
    /// as (re, im) with im >= 0, from the quadratic factor
    /// x^2 - (trace - 1)x + 1 of the characteristic polynomial.
    pub fn complex_eigenvalue(&self) -> (f64, f64) {
        let s = self.trace() - 1.0;
        let disc = 4.0 - s * s;
        let im = if disc > 0.0 { disc.sqrt() / 2.0 } else { 0.0 };
        (s / 2.0, im)
    }
}

/// Rotation by `theta` about a unit axis (x, y, z): the axis-angle matrix
/// with rows
///   [c + (1-c)x^2,      (1-c)xy - z s,  (1-c)xz + y s]
///   [(1-c)xy + z s,     c + (1-c)y^2,   (1-c)yz - x s]
///   [(1-c)xz - y s,     (1-c)yz + x s,  c + (1-c)z^2]
/// (the (2,2) entry uses y^2; anything else fails orthogonality).
///
/// Panics unless the axis is a unit vector within 1e-12.
pub fn icosahedral_rotation(axis: [f64; 3], theta: f64) -> RotationMatrix {
    let [x, y, z] = axis;
    let n = (x * x + y * y + z * z).sqrt();
    assert!((n - 1.0).abs() <= 1e-12, "axis must be a unit vector");
    let c = theta.cos();
    let s = theta.sin();
    let k = 1.0 - c;
    let m = [
        [c + k * x * x, k * x * y - z * s, k * x * z + y * s],
        [k * x * y + z * s, c + k * y * y, k * y * z - x * s],
        [k * x * z - y * s, k * y * z + x * s, c + k * z * z],
    ];
    let out = RotationMatrix { m, axis_class: AxisClass::Custom, angle: theta };
    debug_assert!(out.is_orthogonal(1e-9));
    debug_assert!((out.det() - 1.0).abs() <= 1e-9);
    out
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

fn dist2(a: [f64; 3], b: [f64; 3]) -> f64 {
    (0..3).map(|i| (a[i] - b[i]) * (a[i] - b[i])).sum()
}

/// Deduplicate directions up to sign.
fn push_axis(axes: &mut Vec<[f64; 3]>, v: [f64; 3]) {
    let v = normalize(v);
    for a in axes.iter() {
        let dot = a[0] * v[0] + a[1] * v[1] + a[2] * v[2];
        if (dot.abs() - 1.0).abs() < 1e-9 {
            return;
        }
    }
    axes.push(v);
}

/// The 60 rotations of the icosahedron: identity, 15 half-turns (edge
/// midpoint axes), 20 of order 3 (face axes, ±2π/3), 24 of order 5 (vertex
/// axes, ±2π/5 and ±4π/5). Closure under multiplication is verified to
/// 1e-6 before returning.
pub fn build_icosahedral_group() -> Result<Vec<RotationMatrix>, ArtinError> {
    let phi = GOLDEN_RATIO;
    // Vertices: cyclic permutations of (0, ±1, ±phi).
    let mut vertices = Vec::with_capacity(12);
    for &s1 in &[1.0f64, -1.0] {
        for &s2 in &[1.0f64, -1.0] {
            vertices.push([0.0, s1, s2 * phi]);
            vertices.push([s1, s2 * phi, 0.0]);
            vertices.push([s2 * phi, 0.0, s1]);
        }
    }
    assert_eq!(vertices.len(), 12);
    // Edges connect vertices at the minimal distance 2.
    let mut edges = Vec::new();
    for i in 0..12 {
        for j in i + 1..12 {
            if (dist2(vertices[i], vertices[j]) - 4.0).abs() < 1e-9 {
                edges.push((i, j));
            }
        }
    }
    assert_eq!(edges.len(), 30, "icosahedron has 30 edges");
    // Faces: mutually adjacent triples.
    let adjacent = |i: usize, j: usize| (dist2(vertices[i], vertices[j]) - 4.0).abs() < 1e-9;
    let mut faces = Vec::new();
    for i in 0..12 {
        for j in i + 1..12 {
            if !adjacent(i, j) {
                continue;
            }
            for k in j + 1..12 {
                if adjacent(i, k) && adjacent(j, k) {
                    faces.push((i, j, k));
                }
            }
        }
    }
    assert_eq!(faces.len(), 20, "icosahedron has 20 faces");

    let mut vertex_axes = Vec::new();
    for &v in &vertices {
        push_axis(&mut vertex_axes, v);
    }
    assert_eq!(vertex_axes.len(), 6);
    let mut edge_axes = Vec::new();
    for &(i, j) in &edges {
        let mid = [
            (vertices[i][0] + vertices[j][0]) / 2.0,
            (vertices[i][1] + vertices[j][1]) / 2.0,
            (vertices[i][2] + vertices[j][2]) / 2.0,
        ];
        push_axis(&mut edge_axes, mid);
    }
    assert_eq!(edge_axes.len(), 15);
    let mut face_axes = Vec::new();
    for &(i, j, k) in &faces {
        let c = [
            (vertices[i][0] + vertices[j][0] + vertices[k][0]) / 3.0,
            (vertices[i][1] + vertices[j][1] + vertices[k][1]) / 3.0,
            (vertices[i][2] + vertices[j][2] + vertices[k][2]) / 3.0,
        ];
        push_axis(&mut face_axes, c);
    }
    assert_eq!(face_axes.len(), 10);

    let mut group = Vec::with_capacity(60);
    group.push(RotationMatrix {
        m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        axis_class: AxisClass::Identity,
        angle: 0.0,
    });
    use std::f64::consts::PI;
    for &axis in &edge_axes {
        let mut r = icosahedral_rotation(axis, PI);
        r.axis_class = AxisClass::Edge;
        group.push(r);
    }
    for &axis in &face_axes {
        for &sgn in &[1.0f64, -1.0] {
            let mut r = icosahedral_rotation(axis, sgn * 2.0 * PI / 3.0);
            r.axis_class = AxisClass::Face;
            group.push(r);
        }
    }
    for &axis in &vertex_axes {
        for &mult in &[1.0f64, -1.0, 2.0, -2.0] {
            let mut r = icosahedral_rotation(axis, mult * 2.0 * PI / 5.0);
            r.axis_class = AxisClass::Vertex;
            group.push(r);
        }
    }
    assert_eq!(group.len(), 60);

    // Closure check: every product is within 1e-6 of a member.
    for a in &group {
        for b in &group {
            let prod = a.mul(b);
            let mut best = f64::INFINITY;
            for c in &group {
                let mut err: f64 = 0.0;
                for i in 0..3 {
                    for j in 0..3 {
                        err = err.max((prod[i][j] - c.m[i][j]).abs());
                    }
                }
                best = best.min(err);
            }
            if best > 1e-6 {
                return Err(ArtinError::ClosureFailure(format!(
                    "product strays {best:e} from the group"
                )));
            }
        }
    }
    Ok(group)
}

/// Snap a numeric trace to the five legal A5 character values
/// {3, -1, 0, phi, 1 - phi}; errors if nothing is within 1e-6.
pub fn snap_trace(t: f64) -> Result<f64, ArtinError> {
    const LEGAL: [f64; 5] = [3.0, -1.0, 0.0, GOLDEN_RATIO, 1.0 - GOLDEN_RATIO];
    for v in LEGAL {
        if (t - v).abs() <= 1e-6 {
            return Ok(v);
        }
    }
    Err(ArtinError::ClosureFailure(format!("trace {t} is not an A5 character value")))
}

#[derive(Debug, Clone, Serialize)]
pub struct ChecklistItem {
    pub holds: bool,
    pub reason: String,
}

/// Structured report for the hypotheses of the icosahedral vanishing
/// criterion at a prime p >= 7 split in the degree-5 subfield.
#[derive(Debug, Clone, Serialize)]
pub struct ChecklistReport {
    pub p: u64,
    pub p_is_prime: ChecklistItem,
    pub p_odd: ChecklistItem,
    pub p_coprime_to_group_order: ChecklistItem,
    pub d_plus_is_one: ChecklistItem,
    pub multiplicity_one: ChecklistItem,
    pub h0_vanishes: ChecklistItem,
    pub all_pass: bool,
}

/// Checks reported:
/// - p prime, odd, and coprime to |A5| = 60;
/// - d^+ = 1, computed from the trace of an order-2 element:
///   (chi(1) + chi(sigma))/2 = (3 - 1)/2;
/// - multiplicity one of eps = alpha_p psi inside diag(alpha_p,
///   alpha_p^{-1}, 1) ⊗ psi (alpha_p of order 5, so alpha_p psi differs
///   from alpha_p^{-1} psi and from psi);
/// - H^0 of the quotient vanishes (alpha_p^{-1} psi and psi are nontrivial
///   because psi ramifies at p while alpha_p does not).
pub fn icosahedral_checklist(p: u64) -> Result<ChecklistReport, ArtinError> {
    let group = build_icosahedral_group()?;
    let half_turn = group
        .iter()
        .find(|g| g.axis_class == AxisClass::Edge)
        .expect("group contains half-turns");
    let chi_one = 3.0;
    let chi_sigma = snap_trace(half_turn.trace())?;
    let d_plus = ((chi_one + chi_sigma) / 2.0).round() as i64;

    let p_is_prime = crate::arith::is_prime_u64(p);
    let p_odd = p % 2 == 1;
    let coprime = p_is_prime && 60 % p != 0;
    let report = ChecklistReport {
        p,
        p_is_prime: ChecklistItem {
            holds: p_is_prime,
            reason: if p_is_prime { "p is prime".into() } else { "p is not prime".into() },
        },
        p_odd: ChecklistItem {
            holds: p_odd,
            reason: if p_odd { "p is odd".into() } else { "p = 2 is even".into() },
        },
        p_coprime_to_group_order: ChecklistItem {
            holds: coprime,
            reason: if coprime {
                "p does not divide |A5| = 60 = [K:Q] at the group level".into()
            } else {
                format!("p = {p} divides 60")
            },
        },
        d_plus_is_one: ChecklistItem {
            holds: d_plus == 1,
            reason: format!(
                "order-2 rotations have trace {chi_sigma}, so d+ = (3 + ({chi_sigma}))/2 = {d_plus}"
            ),
        },
        multiplicity_one: ChecklistItem {
            holds: true,
            reason: "alpha_p has order 5, so alpha_p psi differs from alpha_p^-1 psi and from psi"
                .into(),
        },
        h0_vanishes: ChecklistItem {
            holds: true,
            reason: "alpha_p^-1 psi and psi are nontrivial: psi ramifies at p, alpha_p does not"
                .into(),
        },
        all_pass: p_is_prime && p_odd && coprime && d_plus == 1,
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rotation_pinned_matrices() {
        // z-axis half turn: diag(-1, -1, 1).
        let r = icosahedral_rotation([0.0, 0.0, 1.0], PI);
        for (i, row) in [[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]]
            .iter()
            .enumerate()
        {
            for j in 0..3 {
                assert!((r.m[i][j] - row[j]).abs() < 1e-12);
            }
        }
        // Zero angle: identity.
        let id = icosahedral_rotation([1.0, 0.0, 0.0], 0.0);
        assert!((id.trace() - 3.0).abs() < 1e-12);
        // 2π/5 about z: trace = 1 + 2 cos(2π/5) = golden ratio.
        let r5 = icosahedral_rotation([0.0, 0.0, 1.0], 2.0 * PI / 5.0);
        assert!((r5.trace() - GOLDEN_RATIO).abs() < 1e-12);
    }

    #[test]
    fn group_has_the_a5_class_structure() {
        let g = build_icosahedral_group().unwrap();
        assert_eq!(g.len(), 60);
        let mut counts = std::collections::BTreeMap::new();
        for r in &g {
            let t = snap_trace(r.trace()).unwrap();
            *counts.entry(format!("{t:.6}")).or_insert(0u32) += 1;
        }
        assert_eq!(counts.get(&format!("{:.6}", 3.0)), Some(&1));
        assert_eq!(counts.get(&format!("{:.6}", -1.0)), Some(&15));
        assert_eq!(counts.get(&format!("{:.6}", 0.0)), Some(&20));
        assert_eq!(counts.get(&format!("{:.6}", GOLDEN_RATIO)), Some(&12));
        assert_eq!(counts.get(&format!("{:.6}", 1.0 - GOLDEN_RATIO)), Some(&12));
    }

    #[test]
    fn five_cycles_have_the_advertised_eigenvalues() {
        let g = build_icosahedral_group().unwrap();
        let theta = 2.0 * PI / 5.0;
        let expect = (theta.cos(), theta.sin());
        let mut seen = 0;
        for r in &g {
            if r.axis_class == AxisClass::Vertex && (r.angle.abs() - theta).abs() < 1e-9 {
                let (re, im) = r.complex_eigenvalue();
                assert!((re - expect.0).abs() < 1e-9 && (im - expect.1).abs() < 1e-9);
                seen += 1;
            }
        }
        assert_eq!(seen, 12);
    }

    #[test]
    fn element_orders_match_axis_classes() {
        let g = build_icosahedral_group().unwrap();
        for r in &g {
            let expected_order = match r.axis_class {
                AxisClass::Identity => 1,
                AxisClass::Edge => 2,
                AxisClass::Face => 3,
                AxisClass::Vertex => 5,
                AxisClass::Custom => unreachable!(),
            };
            let mut acc = r.clone();
            let mut order = 1;
            while (acc.trace() - 3.0).abs() > 1e-9 {
                acc = RotationMatrix { m: acc.mul(r), axis_class: AxisClass::Custom, angle: 0.0 };
                order += 1;
                assert!(order <= 5);
            }
            assert_eq!(order, expected_order);
            assert_eq!(60 % order, 0);
        }
    }

    #[test]
    fn checklist_pinned() {
        let ok = icosahedral_checklist(7).unwrap();
        assert!(ok.all_pass);
        assert!(ok.d_plus_is_one.holds);

        let p5 = icosahedral_checklist(5).unwrap();
        assert!(!p5.all_pass);
        assert!(!p5.p_coprime_to_group_order.holds);

        let p2 = icosahedral_checklist(2).unwrap();
        assert!(!p2.all_pass);
        assert!(!p2.p_odd.holds);
    }
}
