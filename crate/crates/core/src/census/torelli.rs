//! Reconstruction of the cubic from lines on it, the normalized equation
//! along a double line, and the rank of the differential at that equation.

use crate::algebra::linalg::{self, EchelonSpace};
use crate::algebra::monomial;
use crate::algebra::HomForm;
use crate::error::{Error, Result};
use crate::field::{upoly, Field};
use crate::geometry::{tangent_plane_witness, ProjLine};
use crate::ring::CubicContext;

/// Minimum number of lines for a meaningful reconstruction attempt.
pub const MIN_RECONSTRUCTION_LINES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction<E> {
    pub lines: usize,
    pub sampled_points: usize,
    pub kernel_dim: usize,
    /// Basis of the cubics vanishing on every sampled point.
    pub kernel: Vec<HomForm<E>>,
    pub insufficient_sample: bool,
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug> Reconstruction<E> {
    /// Whether a given cubic vanishes on all sampled points.
    pub fn contains<F: Field<Elem = E>>(&self, field: &F, cubic: &HomForm<E>) -> bool {
        let space = EchelonSpace::from_vectors(field, cubic.coeffs().len(), self.kernel.iter().map(|k| k.coeffs().to_vec()).collect());
        space.contains(field, cubic.coeffs())
    }

    /// `kernel_dim = 1` and the generator is proportional to `cubic`.
    pub fn recovers<F: Field<Elem = E>>(&self, field: &F, cubic: &HomForm<E>) -> bool {
        self.kernel_dim == 1 && self.kernel[0].proportional(field, cubic)
    }
}

/// Cubic forms vanishing at every rational point of the given lines.
pub fn reconstruct<F: Field>(field: &F, lines: &[ProjLine<F::Elem>]) -> Result<Reconstruction<F::Elem>> {
    if lines.is_empty() {
        return Err(Error::EmptyInput);
    }
    field.order().ok_or(Error::FiniteFieldRequired)?;
    let mons = monomial::monomials(5, 3);
    let mut rows = Vec::new();
    for l in lines {
        if l.ambient_dim() != 4 {
            return Err(Error::Dimension("lines must lie in P^4".into()));
        }
        for p in l.rational_points(field) {
            rows.push(
                mons.iter()
                    .map(|e| (0..5).fold(field.one(), |acc, i| field.mul(&acc, &field.pow(&p[i], e[i] as u64))))
                    .collect::<Vec<_>>(),
            );
        }
    }
    let sampled_points = rows.len();
    let (_, ker) = linalg::rref_rank_kernel(field, &rows, mons.len())?;
    let kernel: Vec<HomForm<F::Elem>> = ker
        .rows()
        .iter()
        .map(|r| HomForm::from_coeffs(5, 3, r.clone()).expect("35 coefficients").normalized(field))
        .collect();
    Ok(Reconstruction {
        lines: lines.len(),
        sampled_points,
        kernel_dim: kernel.len(),
        kernel,
        insufficient_sample: lines.len() < MIN_RECONSTRUCTION_LINES,
    })
}

/// The pieces of a cubic in the shape `z0 Q0 + z1 Q1 + c z2^2 z3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedShape<E> {
    pub q0: HomForm<E>,
    pub q1: HomForm<E>,
    pub c: E,
}

/// Splits a cubic of the normalized shape: `Q0` collects the terms divisible
/// by `z0`, `Q1` the remaining terms divisible by `z1`, and the rest must be
/// exactly `c z2^2 z3` with `c != 0`.
pub fn normalized_shape<F: Field>(field: &F, e: &HomForm<F::Elem>) -> Result<NormalizedShape<F::Elem>> {
    if e.nvars() != 5 || e.degree() != 3 {
        return Err(Error::Dimension("expected a cubic form in z0..z4".into()));
    }
    let mut q0 = HomForm::zero(field, 5, 2);
    let mut q1 = HomForm::zero(field, 5, 2);
    let mut c = field.zero();
    for (exp, v) in e.terms(field) {
        let mut rest = *exp;
        if exp[0] > 0 {
            rest[0] -= 1;
            q0.set_coeff(&rest, v.clone());
        } else if exp[1] > 0 {
            rest[1] -= 1;
            q1.set_coeff(&rest, v.clone());
        } else if *exp == [0, 0, 2, 1, 0] {
            c = v.clone();
        } else {
            return Err(Error::NotNormalized(format!("unexpected term {}", monomial::display(5, exp, &monomial::Z_NAMES))));
        }
    }
    if field.is_zero(&c) {
        return Err(Error::NotNormalized("missing the z2^2*z3 term".into()));
    }
    Ok(NormalizedShape { q0, q1, c })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DphiReport<E> {
    /// Rank of the map `S^1 x S^1 x S^1 x S^1 x S^2 x S^2 -> S^3` (50 -> 35).
    pub rank: usize,
    /// `C0`, `C1`, `z2^2` have no common zero in `P^2` (over the closure).
    pub claim_a: bool,
    /// `z2 z3` is independent of `C0`, `C1`, `z2^2`.
    pub claim_b: bool,
    pub shape: NormalizedShape<E>,
    /// `C_i = Q_i(0, 0, z2, z3, z4)` as ternary quadrics.
    pub c0: HomForm<E>,
    pub c1: HomForm<E>,
}

/// Rank of the differential at a cubic in normalized shape, and the two
/// conditions on the conics `C0`, `C1` that make it surjective. Singular
/// cubics are rejected unless `allow_singular` is set.
pub fn dphi_rank<F: Field>(ctx: &CubicContext<F>, allow_singular: bool) -> Result<DphiReport<F::Elem>> {
    if !allow_singular {
        ctx.require_smooth()?;
    }
    let field = ctx.field();
    let shape = normalized_shape(field, ctx.form())?;
    let s3 = monomial::monomials(5, 3);
    let z = |i: usize| HomForm::variable(field, 5, i);
    let z2z3 = z(2).mul(field, &z(3)).scale(field, &field.add(&shape.c, &shape.c));
    let z2sq = z(2).mul(field, &z(2)).scale(field, &shape.c);
    let mut cols: Vec<Vec<F::Elem>> = Vec::with_capacity(50);
    for factor in [&shape.q0, &shape.q1, &z2z3, &z2sq] {
        for j in 0..5 {
            cols.push(z(j).mul(field, factor).into_coeffs());
        }
    }
    for v in [0, 1] {
        for m in monomial::monomials(5, 2) {
            cols.push(z(v).mul(field, &HomForm::monomial(field, 5, m, field.one())).into_coeffs());
        }
    }
    debug_assert_eq!(cols.len(), 50);
    debug_assert!(cols.iter().all(|c| c.len() == s3.len()));
    let rank = linalg::rank(field, &cols);

    // restrict to z0 = z1 = 0, as forms in (z2, z3, z4)
    let plane = |q: &HomForm<F::Elem>| -> HomForm<F::Elem> {
        let images: Vec<Vec<F::Elem>> = (0..5)
            .map(|i| (0..3).map(|k| if i >= 2 && i - 2 == k { field.one() } else { field.zero() }).collect())
            .collect();
        q.compose_linear(field, &images)
    };
    let c0 = plane(&shape.q0);
    let c1 = plane(&shape.q1);
    // claim a: on z2 = 0, the binary quadrics C0(0, z3, z4), C1(0, z3, z4)
    // have no common root; binary coefficients ascend in z4 / z3
    let on_line = |c: &HomForm<F::Elem>| -> Vec<F::Elem> {
        vec![c.coeff(&[0, 2, 0, 0, 0]).clone(), c.coeff(&[0, 1, 1, 0, 0]).clone(), c.coeff(&[0, 0, 2, 0, 0]).clone()]
    };
    let res = upoly::resultant(field, &on_line(&c0), 2, &on_line(&c1), 2);
    let claim_a = !field.is_zero(&res);
    let w = |e: [u8; 5]| HomForm::monomial(field, 3, &e, field.one());
    let claim_b = linalg::rank(field, &[
        c0.coeffs().to_vec(),
        c1.coeffs().to_vec(),
        w([2, 0, 0, 0, 0]).into_coeffs(),
        w([1, 1, 0, 0, 0]).into_coeffs(),
    ]) == 4;
    Ok(DphiReport { rank, claim_a, claim_b, shape, c0, c1 })
}

/// A cubic moved so that a double line is `{z0 = z1 = z2 = 0}` and its
/// residual line is `{z0 = z1 = z3 = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedCubic<E> {
    pub form: HomForm<E>,
    /// `basis[i]` is the point of `P^4` sent to `e_i`; the new form is
    /// `E(sum y_i basis[i])`.
    pub basis: Vec<Vec<E>>,
    pub shape: NormalizedShape<E>,
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug> NormalizedCubic<E> {
    /// Substitution matrix `M` with `form = E(M y)`.
    pub fn matrix(&self) -> Vec<Vec<E>> {
        basis_matrix(&self.basis)
    }
}

pub fn normalize_double_line<F: Field>(ctx: &CubicContext<F>, line: &ProjLine<F::Elem>) -> Result<NormalizedCubic<F::Elem>> {
    let field = ctx.field();
    let cubic = ctx.cubic();
    if !cubic.contains_line(line) {
        return Err(Error::NotDouble);
    }
    let w = tangent_plane_witness(cubic, line)?.ok_or(Error::NotDouble)?;
    if w.triple {
        return Err(Error::TripleLine);
    }
    let residual = &w.residual;
    // meeting point of the two lines
    let both: Vec<Vec<F::Elem>> = line.annihilator(field).rows().iter().chain(residual.annihilator(field).rows()).cloned().collect();
    let meet = linalg::kernel(field, &both, 5);
    debug_assert_eq!(meet.dim(), 1);
    let mut b4 = meet.rows()[0].clone();
    field.normalize(&mut b4);
    let other = |l: &ProjLine<F::Elem>| -> Vec<F::Elem> {
        l.span()
            .iter()
            .find(|r| linalg::rank(field, &[b4.clone(), (*r).clone()]) == 2)
            .expect("a line has two independent points")
            .clone()
    };
    let b3 = other(line);
    let b2 = other(residual);
    let mut basis = vec![b2, b3, b4];
    for j in 0..5 {
        if basis.len() == 5 {
            break;
        }
        let mut e = vec![field.zero(); 5];
        e[j] = field.one();
        let mut trial = basis.clone();
        trial.push(e.clone());
        if linalg::rank(field, &trial) == trial.len() {
            basis.insert(basis.len() - 3, e);
        }
    }
    let form = ctx.form().substitute_linear(field, &basis_matrix(&basis))?;
    let shape = normalized_shape(field, &form)?;
    Ok(NormalizedCubic { form, basis, shape })
}

fn basis_matrix<E: Clone>(basis: &[Vec<E>]) -> Vec<Vec<E>> {
    (0..5).map(|i| (0..5).map(|k| basis[k][i].clone()).collect()).collect()
}
