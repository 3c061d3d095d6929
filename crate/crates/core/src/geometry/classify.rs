//! First/second type, containment, the dual map along a line and the
//! tangent-plane test for double lines.

use crate::algebra::binary::{binary_roots, BinaryRoots};
use crate::algebra::linalg::{self, EchelonSpace};
use crate::algebra::HomForm;
use crate::error::{Error, Result};
use crate::field::{upoly, Field};

use super::cubic::Cubic;
use super::points::eckardt_test;
use super::subspace::{ProjLine, ProjPlane};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineType {
    First,
    Second,
}

impl LineType {
    pub fn as_str(&self) -> &'static str {
        match self {
            LineType::First => "first",
            LineType::Second => "second",
        }
    }
}

/// Image of a line under the dual (Gauss) map `x -> grad E(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualImage<E> {
    /// Dimension of the linear span of the image, minus one, is `rank - 1`.
    pub rank: usize,
    pub is_line: bool,
    /// Degree of the map onto its image: 2 normally, 1 when the two binary
    /// quadrics of the pencil share a root.
    pub degree: usize,
    /// Basis of the span of the image, as linear forms.
    pub image_span: Vec<Vec<E>>,
    /// Common zeros of the pencil of tangent hyperplanes, when the image is a
    /// line.
    pub base_plane: Option<ProjPlane<E>>,
}

/// A plane `pi` with `E|pi = L^2 * M` for the line `{L = 0}`, and the
/// residual line `{M = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleWitness<E> {
    pub plane: ProjPlane<E>,
    pub residual: ProjLine<E>,
    pub triple: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineReport<E> {
    pub line: ProjLine<E>,
    pub in_v: bool,
    pub line_type: LineType,
    pub j2_restricted_dim: usize,
    /// Roots of `E|l`; `None` when the line lies on the cubic.
    pub intersection: Option<BinaryRoots<E>>,
    pub double: Option<DoubleWitness<E>>,
    pub dual_image: DualImage<E>,
    /// Rational points of `l` on the cubic that are Eckardt points.
    pub eckardt_hits: Vec<Vec<E>>,
}

/// Full classification of a line relative to the cubic.
pub fn classify_line<F: Field>(cubic: &Cubic<F>, line: &ProjLine<F::Elem>, tower_bound: usize) -> Result<LineReport<F::Elem>> {
    let field = cubic.field();
    let restricted = cubic.restrict(line);
    let in_v = restricted.is_zero(field);
    let j2 = cubic.restricted_partials_rank(line);
    let line_type = if j2 <= 2 { LineType::Second } else { LineType::First };
    let intersection = if in_v { None } else { Some(binary_roots(field, &restricted, tower_bound)?) };
    let double = if in_v { tangent_plane_witness(cubic, line)? } else { None };
    let dual_image = dual_map_image(cubic, line);
    let candidates: Vec<Vec<F::Elem>> = match &intersection {
        Some(roots) => roots.rational.iter().map(|r| line.point_at(field, &r.point[0], &r.point[1])).collect(),
        None if field.is_finite() => line.rational_points(field),
        None => Vec::new(),
    };
    let mut eckardt_hits = Vec::new();
    for p in candidates {
        let mut p = p;
        field.normalize(&mut p);
        if let Ok(data) = eckardt_test(cubic, &p) {
            if data.is_eckardt {
                eckardt_hits.push(p);
            }
        }
    }
    Ok(LineReport { line: line.clone(), in_v, line_type, j2_restricted_dim: j2, intersection, double, dual_image, eckardt_hits })
}

/// Distinct sample parameters `(s, t)` on `P^1`, avoiding the canonical
/// spanning points where possible.
fn sample_parameters<F: Field>(field: &F) -> Vec<[F::Elem; 2]> {
    let one = field.one();
    let candidates = [
        [one.clone(), one.clone()],
        [one.clone(), field.neg(&one)],
        [one.clone(), field.from_i64(2)],
        [field.from_i64(2), one.clone()],
        [one.clone(), field.from_i64(3)],
        [one.clone(), field.zero()],
        [field.zero(), one.clone()],
    ];
    let mut out: Vec<[F::Elem; 2]> = Vec::new();
    for c in candidates {
        let mut v = vec![c[0].clone(), c[1].clone()];
        if !field.normalize(&mut v) {
            continue;
        }
        let p = [v[0].clone(), v[1].clone()];
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// The image of `l` under the dual map, from gradients at sample points.
pub fn dual_map_image<F: Field>(cubic: &Cubic<F>, line: &ProjLine<F::Elem>) -> DualImage<F::Elem> {
    let field = cubic.field();
    let images: Vec<Vec<F::Elem>> = sample_parameters(field)
        .into_iter()
        .take(4)
        .map(|[s, t]| cubic.gradient_at(&line.point_at(field, &s, &t)))
        .collect();
    let span = EchelonSpace::from_vectors(field, 5, images);
    let rank = span.dim();
    assert!(rank > 0, "restricted partials vanish identically: the cubic is singular along the line");
    let is_line = rank == 2;
    let mut degree = if rank >= 2 { 2 } else { 0 };
    let mut base_plane = None;
    if is_line {
        // coordinates of the pencil in the basis of the span: two binary quadrics
        let m = cubic.restricted_partials(line);
        let pv = span.pivots();
        let g: Vec<Vec<F::Elem>> = pv.iter().map(|&p| m[p].clone()).collect();
        if field.is_zero(&upoly::resultant(field, &g[0], 2, &g[1], 2)) {
            degree = 1;
        }
        base_plane = Some(ProjPlane::from_forms(field, span.rows()).expect("two independent forms"));
    }
    DualImage { rank, is_line, degree, image_span: span.rows().to_vec(), base_plane }
}

/// For a line on the cubic: the plane tangent to the cubic along the line,
/// if there is one, with the residual line of the plane section.
///
/// The plane consists of the points lying in every tangent hyperplane along
/// the line; it is 2-dimensional exactly for lines of second type.
pub fn tangent_plane_witness<F: Field>(cubic: &Cubic<F>, line: &ProjLine<F::Elem>) -> Result<Option<DoubleWitness<F::Elem>>> {
    let field = cubic.field();
    if !cubic.contains_line(line) {
        return Err(Error::NotOnCubic("the line"));
    }
    let m = cubic.restricted_partials(line);
    let conditions = linalg::transpose(&m);
    let common = linalg::kernel(field, &conditions, 5);
    if common.dim() != 3 {
        return Ok(None);
    }
    let (p, q) = line.points();
    let r = common
        .rows()
        .iter()
        .find(|v| !line.contains_point(field, v))
        .expect("plane strictly contains the line")
        .clone();
    let section = witness_section(cubic, p, q, &r)?;
    let witness = witness_from_section(field, p, q, &r, &section)?;
    Ok(Some(witness))
}

/// `E(s P + t Q + u R)` as a ternary cubic.
fn ternary_section<F: Field>(cubic: &Cubic<F>, p: &[F::Elem], q: &[F::Elem], r: &[F::Elem]) -> HomForm<F::Elem> {
    let images: Vec<Vec<F::Elem>> = (0..5).map(|i| vec![p[i].clone(), q[i].clone(), r[i].clone()]).collect();
    cubic.form().compose_linear(cubic.field(), &images)
}

fn divisible_by_u_squared<F: Field>(field: &F, t: &HomForm<F::Elem>) -> bool {
    t.terms(field).all(|(e, _)| e[2] >= 2)
}

fn witness_section<F: Field>(cubic: &Cubic<F>, p: &[F::Elem], q: &[F::Elem], r: &[F::Elem]) -> Result<HomForm<F::Elem>> {
    let t = ternary_section(cubic, p, q, r);
    if !divisible_by_u_squared(cubic.field(), &t) {
        return Err(Error::Unsupported("tangent plane section is not divisible by the square of the line".into()));
    }
    Ok(t)
}

fn witness_from_section<F: Field>(
    field: &F,
    p: &[F::Elem],
    q: &[F::Elem],
    r: &[F::Elem],
    t: &HomForm<F::Elem>,
) -> Result<DoubleWitness<F::Elem>> {
    // t = u^2 (a s + b t + c u)
    let a = t.coeff(&[1, 0, 2, 0, 0]).clone();
    let b = t.coeff(&[0, 1, 2, 0, 0]).clone();
    let c = t.coeff(&[0, 0, 3, 0, 0]).clone();
    if field.is_zero(&a) && field.is_zero(&b) && field.is_zero(&c) {
        return Err(Error::Unsupported("the cubic contains a plane".into()));
    }
    let triple = field.is_zero(&a) && field.is_zero(&b);
    let ker = linalg::kernel(field, &[vec![a, b, c]], 3);
    let pts: Vec<Vec<F::Elem>> = ker
        .rows()
        .iter()
        .map(|k| (0..5).map(|i| field.add(&field.add(&field.mul(&k[0], &p[i]), &field.mul(&k[1], &q[i])), &field.mul(&k[2], &r[i]))).collect())
        .collect();
    let residual = ProjLine::from_span(field, &pts)?;
    let plane = ProjPlane::from_span(field, &[p.to_vec(), q.to_vec(), r.to_vec()])?;
    Ok(DoubleWitness { plane, residual, triple })
}

/// Exhaustive variant of [`tangent_plane_witness`] over a finite field:
/// every plane through the line is tested by expanding the plane section.
/// Returns all planes that work.
pub fn tangent_plane_witness_scan<F: Field>(cubic: &Cubic<F>, line: &ProjLine<F::Elem>) -> Result<Vec<DoubleWitness<F::Elem>>> {
    let field = cubic.field();
    let q = field.order().ok_or(Error::FiniteFieldRequired)?;
    if !cubic.contains_line(line) {
        return Err(Error::NotOnCubic("the line"));
    }
    let (p, pq) = line.points();
    // complete the line to a basis with standard vectors
    let mut basis = vec![p.to_vec(), pq.to_vec()];
    let mut extra = Vec::new();
    for j in 0..5 {
        let mut e = vec![field.zero(); 5];
        e[j] = field.one();
        let mut trial = basis.clone();
        trial.push(e.clone());
        if linalg::rank(field, &trial) == trial.len() {
            basis = trial;
            extra.push(e);
        }
    }
    let mut found = Vec::new();
    for c in projective_points(field, q, 3) {
        let r: Vec<F::Elem> = (0..5)
            .map(|i| {
                let mut acc = field.zero();
                for (k, e) in extra.iter().enumerate() {
                    acc = field.add(&acc, &field.mul(&c[k], &e[i]));
                }
                acc
            })
            .collect();
        let t = ternary_section(cubic, p, pq, &r);
        if divisible_by_u_squared(field, &t) {
            found.push(witness_from_section(field, p, pq, &r, &t)?);
        }
    }
    Ok(found)
}

/// All normalized points of `P^(n-1)` over a finite field of order `q`.
pub fn projective_points<F: Field>(field: &F, q: u64, n: usize) -> Vec<Vec<F::Elem>> {
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let total = q.pow(free as u32);
        for idx in 0..total {
            let mut v = vec![field.zero(); n];
            v[lead] = field.one();
            let mut rest = idx;
            for j in (lead + 1..n).rev() {
                v[j] = field.element(rest % q);
                rest /= q;
            }
            out.push(v);
        }
    }
    out
}
