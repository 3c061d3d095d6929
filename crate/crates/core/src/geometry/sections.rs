//! The Hessian quintic and plane sections (triangles).

use crate::algebra::binary::binary_roots;
use crate::algebra::linalg;
use crate::algebra::HomForm;
use crate::error::{Error, Result};
use crate::field::{upoly, Field};

use super::cubic::Cubic;
use super::subspace::{ProjLine, ProjPlane};

/// `det(d^2 E / dz_i dz_j)`, a quintic form (zero in characteristic 2).
pub fn hessian<F: Field>(cubic: &Cubic<F>) -> HomForm<F::Elem> {
    let field = cubic.field();
    let m: Vec<Vec<HomForm<F::Elem>>> = cubic.partials().iter().map(|d| d.gradient(field)).collect();
    form_determinant(field, &m, 0, &mut [false; 5])
}

/// Laplace expansion along rows `row..`, with `used` columns removed.
fn form_determinant<F: Field>(field: &F, m: &[Vec<HomForm<F::Elem>>], row: usize, used: &mut [bool; 5]) -> HomForm<F::Elem> {
    let n = m.len();
    let nvars = m[0][0].nvars();
    if row == n {
        return HomForm::monomial(field, nvars, &[0; 5], field.one());
    }
    let mut acc: Option<HomForm<F::Elem>> = None;
    let mut sign = true;
    for j in 0..n {
        if used[j] {
            continue;
        }
        if !m[row][j].is_zero(field) {
            used[j] = true;
            let minor = form_determinant(field, m, row + 1, used);
            used[j] = false;
            let term = m[row][j].mul(field, &minor);
            acc = Some(match acc {
                None if sign => term,
                None => term.scale(field, &field.neg(&field.one())),
                Some(a) if sign => a.add(field, &term),
                Some(a) => a.sub(field, &term),
            });
        }
        sign = !sign;
    }
    acc.unwrap_or_else(|| HomForm::zero(field, nvars, m[0][0].degree() * (n - row)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HessianOnLine<E> {
    /// Binary quintic `H(s P + t Q)`.
    pub form: HomForm<E>,
    pub degenerate: bool,
}

/// The Hessian restricted to a line of the cubic. Its zeros are the points of
/// the line where it meets other lines of a rare triangle.
pub fn hessian_on_line<F: Field>(cubic: &Cubic<F>, line: &ProjLine<F::Elem>) -> Result<HessianOnLine<F::Elem>> {
    if !cubic.contains_line(line) {
        return Err(Error::NotOnCubic("the line"));
    }
    let field = cubic.field();
    let (p, q) = line.points();
    let form = hessian(cubic).restrict_to_points(field, p, q);
    let degenerate = form.is_zero(field);
    Ok(HessianOnLine { form, degenerate })
}

/// A linear factor of a plane section, with the line it cuts out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactor<E> {
    /// Linear form in the plane coordinates `(a, b, c)` of the plane's span.
    pub form: Vec<E>,
    pub line: ProjLine<E>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneSection<E> {
    pub plane: ProjPlane<E>,
    /// `E(a S0 + b S1 + c S2)` for the span rows `S0, S1, S2`.
    pub section: HomForm<E>,
    pub lines: Vec<LinearFactor<E>>,
    /// The section divided by all linear factors (a constant, a conic or an
    /// irreducible cubic).
    pub residual: HomForm<E>,
    /// Set when the section is three distinct lines: `Some(true)` when they
    /// pass through one point (a rare triangle).
    pub rare_triangle: Option<bool>,
    /// Smallest extension degree `k <= tower` over which the section splits
    /// into lines; finite fields only.
    pub splits_over: Option<usize>,
}

/// Factors the cubic curve cut on the cubic by a plane.
pub fn plane_section<F: Field>(cubic: &Cubic<F>, plane: &ProjPlane<F::Elem>, tower_bound: usize) -> Result<PlaneSection<F::Elem>> {
    let field = cubic.field();
    let s = plane.span();
    let images: Vec<Vec<F::Elem>> = (0..5).map(|i| vec![s[0][i].clone(), s[1][i].clone(), s[2][i].clone()]).collect();
    let section = cubic.form().compose_linear(field, &images);
    if section.is_zero(field) {
        return Err(Error::Unsupported("the cubic contains the plane".into()));
    }
    let (factors, residual) = linear_factors(field, &section)?;
    let mut lines = Vec::new();
    for (form, multiplicity) in factors {
        let ker = linalg::kernel(field, std::slice::from_ref(&form), 3);
        let pts: Vec<Vec<F::Elem>> = ker
            .rows()
            .iter()
            .map(|k| (0..5).map(|i| field.dot(k, &images[i])).collect())
            .collect();
        lines.push(LinearFactor { form, line: ProjLine::from_span(field, &pts)?, multiplicity });
    }
    let rare_triangle = if lines.len() == 3 && residual.degree() == 0 {
        let m: Vec<Vec<F::Elem>> = lines.iter().map(|l| l.form.clone()).collect();
        Some(linalg::rank(field, &m) == 2)
    } else {
        None
    };
    let mut splits_over = None;
    if residual.degree() == 0 {
        splits_over = Some(1);
    } else if field.is_finite() {
        for k in 2..=tower_bound {
            let ext = field.extension(k).ok_or(Error::FiniteFieldRequired)?;
            let lifted = residual.map_coeffs(|c| ext.embed(field, c));
            if linear_factors(&ext.field, &lifted)?.1.degree() == 0 {
                splits_over = Some(k);
                break;
            }
        }
    }
    Ok(PlaneSection { plane: plane.clone(), section, lines, residual, rare_triangle, splits_over })
}

/// All linear factors of a nonzero ternary form over its field, with
/// multiplicities, and the cofactor. Factors are normalized and listed in
/// the order found.
pub fn linear_factors<F: Field>(field: &F, t: &HomForm<F::Elem>) -> Result<(Vec<(Vec<F::Elem>, usize)>, HomForm<F::Elem>)> {
    if t.nvars() != 3 {
        return Err(Error::Dimension("expected a ternary form".into()));
    }
    let mut rest = t.clone();
    let mut found: Vec<(Vec<F::Elem>, usize)> = Vec::new();
    while let Some(l) = find_linear_factor(field, &rest)? {
        rest = rest.divide_by_linear(field, &HomForm::linear(&l)).expect("factor divides");
        match found.iter_mut().find(|(f, _)| *f == l) {
            Some((_, m)) => *m += 1,
            None => found.push((l, 1)),
        }
    }
    Ok((found, rest))
}

fn find_linear_factor<F: Field>(field: &F, t: &HomForm<F::Elem>) -> Result<Option<Vec<F::Elem>>> {
    if t.degree() == 0 {
        return Ok(None);
    }
    let z = vec![field.zero(), field.zero(), field.one()];
    if t.terms(field).all(|(e, _)| e[2] >= 1) {
        return Ok(Some(z));
    }
    // T(x, y, 0) is nonzero: any linear factor meets {z = 0} in one of its roots
    let mut on_z = HomForm::zero(field, 2, t.degree());
    for (e, c) in t.terms(field) {
        if e[2] == 0 {
            on_z.set_coeff(&[e[0], e[1], 0, 0, 0], c.clone());
        }
    }
    for root in binary_roots(field, &on_z, 1)?.rational {
        let r = vec![root.point[0].clone(), root.point[1].clone(), field.zero()];
        let b = if field.is_zero(&r[0]) { vec![field.one(), field.zero(), field.zero()] } else { vec![field.zero(), field.one(), field.zero()] };
        // lines through r: join with z + mu * b, or with b (mu = infinity)
        let images: Vec<Vec<F::Elem>> = (0..3).map(|i| vec![r[i].clone(), z[i].clone(), b[i].clone()]).collect();
        let u = t.compose_linear(field, &images);
        let d = t.degree();
        let mut coeff_polys: Vec<Vec<F::Elem>> = vec![Vec::new(); d + 1];
        let mut at_infinity = true;
        for (e, c) in u.terms(field) {
            let j = (e[1] + e[2]) as usize;
            let slot = &mut coeff_polys[j];
            if slot.len() <= e[2] as usize {
                slot.resize(e[2] as usize + 1, field.zero());
            }
            slot[e[2] as usize] = field.add(&slot[e[2] as usize], c);
            if e[1] == 0 {
                at_infinity = false;
            }
        }
        let mut g: Vec<F::Elem> = Vec::new();
        for p in &coeff_polys {
            g = upoly::gcd(field, &g, &upoly::trimmed(field, p));
        }
        let mut points = Vec::new();
        if g.is_empty() {
            return Err(Error::Unsupported("the form vanishes on every line through a point".into()));
        }
        for (mu, _) in upoly::roots(field, &g) {
            points.push((0..3).map(|i| field.add(&z[i], &field.mul(&mu, &b[i]))).collect::<Vec<_>>());
        }
        if at_infinity {
            points.push(b.clone());
        }
        if let Some(w) = points.into_iter().next() {
            let mut l = cross(field, &r, &w);
            field.normalize(&mut l);
            return Ok(Some(l));
        }
    }
    Ok(None)
}

fn cross<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let c = |i: usize, j: usize| field.sub(&field.mul(&a[i], &b[j]), &field.mul(&a[j], &b[i]));
    vec![c(1, 2), c(2, 0), c(0, 1)]
}
