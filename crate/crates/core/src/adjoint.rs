//! Two-forms on `R^1`, Schubert forms of planes, the adjoint class of a
//! second-type line and the lines of the cubic meeting it.

use serde::Serialize;

use crate::algebra::binary::binary_roots;
use crate::algebra::linalg::{self, EchelonSpace};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{dual_map_image, eckardt_test, lines_through_point, ProjLine, ProjPlane, PAIRS};
use crate::ring::{CubicContext, XiClass};

/// An element of `Λ^2 R^1` in the basis `z_i ^ z_j`, `i < j`, ordered as
/// [`PAIRS`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoForm<E> {
    pub coeffs: Vec<E>,
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug> TwoForm<E> {
    pub fn zero<F: Field<Elem = E>>(field: &F) -> Self {
        Self { coeffs: vec![field.zero(); 10] }
    }

    /// `a ^ b` for linear forms `a`, `b`.
    pub fn wedge<F: Field<Elem = E>>(field: &F, a: &[E], b: &[E]) -> Self {
        let coeffs = PAIRS.iter().map(|&(i, j)| field.sub(&field.mul(&a[i], &b[j]), &field.mul(&a[j], &b[i]))).collect();
        Self { coeffs }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    pub fn normalized<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let mut coeffs = self.coeffs.clone();
        field.normalize(&mut coeffs);
        Self { coeffs }
    }

    /// Pairing with the Plücker point of a line. Zero exactly when the line
    /// meets the plane of a decomposable form.
    pub fn evaluate_on_line<F: Field<Elem = E>>(&self, field: &F, line: &ProjLine<E>) -> E {
        field.dot(&self.coeffs, line.pluecker())
    }
}

/// `Ω_π = H1 ^ H2` for the two forms cutting out the plane, normalized.
pub fn schubert_form<F: Field>(field: &F, plane: &ProjPlane<F::Elem>) -> TwoForm<F::Elem> {
    let d = plane.dual();
    TwoForm::wedge(field, &d[0], &d[1]).normalized(field)
}

/// `W(r)`, the linear forms vanishing on the line, and `W(r)^2`, the span of
/// their pairwise wedges in `Λ^2 R^1`.
pub fn w_spaces<F: Field>(field: &F, line: &ProjLine<F::Elem>) -> (EchelonSpace<F::Elem>, EchelonSpace<F::Elem>) {
    let w = line.annihilator(field);
    let rows = w.rows();
    let mut wedges = Vec::new();
    for a in 0..rows.len() {
        for b in a + 1..rows.len() {
            wedges.push(TwoForm::wedge(field, &rows[a], &rows[b]).coeffs);
        }
    }
    let w2 = EchelonSpace::from_vectors(field, 10, wedges);
    (w, w2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    Transverse,
    Tangency,
    EckardtOnLine,
    InF,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointReport<E> {
    pub line: ProjLine<E>,
    pub xi: XiClass<E>,
    pub w: EchelonSpace<E>,
    pub w2: EchelonSpace<E>,
    pub vanishes: bool,
    /// Schubert form of the base plane reduced against `W(r)^2` and
    /// normalized; zero when the class vanishes.
    pub representative: TwoForm<E>,
    /// Tangent hyperplanes at the rational points of `l ∩ V`.
    pub tangent_hyperplanes: Vec<Vec<E>>,
    pub base_plane: Option<ProjPlane<E>>,
    pub degeneracy: Degeneracy,
    /// Rational points of `l ∩ V` that are Eckardt points.
    pub eckardt_hits: Vec<Vec<E>>,
}

/// Input of [`adjoint_class`]: a class of rank 2 or a second-type line.
#[derive(Clone, Debug)]
pub enum AdjointInput<E> {
    Xi(XiClass<E>),
    Line(ProjLine<E>),
}

/// The adjoint class attached to a second-type line. It vanishes exactly
/// when the line lies on the cubic; otherwise it is represented by the
/// Schubert form of the base plane of the pencil of tangent hyperplanes.
pub fn adjoint_class<F: Field>(ctx: &CubicContext<F>, input: &AdjointInput<F::Elem>, tower_bound: usize) -> Result<AdjointReport<F::Elem>> {
    ctx.require_smooth()?;
    let field = ctx.field();
    let (xi, line) = match input {
        AdjointInput::Xi(xi) => {
            if xi.rank != 2 {
                return Err(Error::RankNotTwo(xi.rank));
            }
            (xi.clone(), ctx.sigma_line_of_xi(xi)?)
        }
        AdjointInput::Line(l) => {
            let xi = ctx.xi_of_line(l)?;
            if xi.rank != 2 {
                return Err(Error::RankNotTwo(xi.rank));
            }
            (xi, l.clone())
        }
    };
    let cubic = ctx.cubic();
    let (w, w2) = w_spaces(field, &line);
    let base_plane = dual_map_image(cubic, &line).base_plane;
    let restricted = cubic.restrict(&line);
    if restricted.is_zero(field) {
        return Ok(AdjointReport {
            line,
            xi,
            w,
            w2,
            vanishes: true,
            representative: TwoForm::zero(field),
            tangent_hyperplanes: Vec::new(),
            base_plane,
            degeneracy: Degeneracy::InF,
            eckardt_hits: Vec::new(),
        });
    }
    let roots = binary_roots(field, &restricted, tower_bound)?;
    let mut tangent_hyperplanes = Vec::new();
    let mut eckardt_hits = Vec::new();
    for r in &roots.rational {
        let mut p = line.point_at(field, &r.point[0], &r.point[1]);
        field.normalize(&mut p);
        let mut h = cubic.gradient_at(&p);
        field.normalize(&mut h);
        tangent_hyperplanes.push(h);
        if eckardt_test(cubic, &p)?.is_eckardt {
            eckardt_hits.push(p);
        }
    }
    let degeneracy = if roots.has_multiple_root() {
        Degeneracy::Tangency
    } else if !eckardt_hits.is_empty() {
        Degeneracy::EckardtOnLine
    } else {
        Degeneracy::Transverse
    };
    let plane = base_plane.clone().expect("second-type lines have a base plane");
    let omega = schubert_form(field, &plane);
    let mut reduced = w2.reduce(field, &omega.coeffs);
    field.normalize(&mut reduced);
    Ok(AdjointReport {
        line,
        xi,
        w,
        w2,
        vanishes: false,
        representative: TwoForm { coeffs: reduced },
        tangent_hyperplanes,
        base_plane,
        degeneracy,
        eckardt_hits,
    })
}

/// Symbol-level data of the primitive form attached to a rank-2 class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveFormData<E> {
    /// `ω1 ^ ω2 ^ ω3` for a basis of `K_1(ξ)`, in the basis `z_i ^ z_j ^ z_k`
    /// (`i < j < k`, lexicographic), normalized.
    pub phi: Vec<E>,
    /// Linear forms `ω4`, `ω5` completing `K_1(ξ)` to `R^1`.
    pub omega: [Vec<E>; 2],
    /// `ξ·ω4`, `ξ·ω5` in the basis of `R^4`.
    pub images: [Vec<E>; 2],
    pub independent: bool,
    /// `image δ(ξ) = span(ξ·ω4, ξ·ω5)`.
    pub decomposable: bool,
}

pub const TRIPLES: [(usize, usize, usize); 10] = [
    (0, 1, 2),
    (0, 1, 3),
    (0, 1, 4),
    (0, 2, 3),
    (0, 2, 4),
    (0, 3, 4),
    (1, 2, 3),
    (1, 2, 4),
    (1, 3, 4),
    (2, 3, 4),
];

pub fn primitive_form<F: Field>(ctx: &CubicContext<F>, xi: &XiClass<F::Elem>) -> Result<PrimitiveFormData<F::Elem>> {
    ctx.require_smooth()?;
    if xi.rank != 2 {
        return Err(Error::RankNotTwo(xi.rank));
    }
    let field = ctx.field();
    let k = xi.k1.rows();
    let mut phi: Vec<F::Elem> = TRIPLES
        .iter()
        .map(|&(a, b, c)| linalg::determinant(field, k.iter().map(|r| vec![r[a].clone(), r[b].clone(), r[c].clone()]).collect()))
        .collect();
    field.normalize(&mut phi);
    let mut omega = Vec::new();
    let mut rows = k.to_vec();
    for j in 0..5 {
        let mut e = vec![field.zero(); 5];
        e[j] = field.one();
        rows.push(e.clone());
        if linalg::rank(field, &rows) == rows.len() {
            omega.push(e);
        } else {
            rows.pop();
        }
    }
    let images: Vec<Vec<F::Elem>> = omega.iter().map(|w| ctx.multiply(1, w, 3, &xi.coords)).collect();
    let r4 = images[0].len();
    let span = EchelonSpace::from_vectors(field, r4, images.clone());
    let image = EchelonSpace::from_vectors(field, r4, xi.delta.clone());
    let independent = span.dim() == 2;
    let decomposable = independent && span == image;
    Ok(PrimitiveFormData {
        phi,
        omega: [omega[0].clone(), omega[1].clone()],
        images: [images[0].clone(), images[1].clone()],
        independent,
        decomposable,
    })
}

/// A line of the cubic meeting `l_r`, defined over `F_(q^degree)` and over
/// no smaller field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrLine<E> {
    pub degree: usize,
    pub line: ProjLine<E>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DrFlag {
    Finite,
    /// `l_r` passes through an Eckardt point: a whole cone of lines meets it.
    EckardtFamily,
    /// `r` lies on the Fano surface and every line through `l_r` counts.
    InF,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrReport<E> {
    pub lines: Vec<DrLine<E>>,
    /// Dimension of the projective span of the Plücker points over the
    /// algebraic closure; prime base fields only.
    pub span_dim: Option<usize>,
    pub flag: DrFlag,
    pub tower_bound: usize,
}

/// Lines of the cubic meeting `l_r` over `F_(q^k)`, `k <= tower_bound`.
pub fn d_r_lines<F: Field>(ctx: &CubicContext<F>, r: &ProjLine<F::Elem>, tower_bound: usize) -> Result<DrReport<F::Elem>> {
    let field = ctx.field();
    let q = field.order().ok_or(Error::FiniteFieldRequired)?;
    let cubic = ctx.cubic();
    let restricted = cubic.restrict(r);
    if restricted.is_zero(field) {
        return Ok(DrReport { lines: Vec::new(), span_dim: None, flag: DrFlag::InF, tower_bound });
    }
    let mut lines = Vec::new();
    let mut flag = DrFlag::Finite;
    for k in 1..=tower_bound.max(1) {
        let ext = field.extension(k).ok_or(Error::FiniteFieldRequired)?;
        let kf = &ext.field;
        let cubic_k = cubic.base_change(&ext);
        let line_k = r.map_field(&ext, field);
        let roots = binary_roots(kf, &cubic_k.restrict(&line_k), 1)?;
        for root in &roots.rational {
            let mut p = line_k.point_at(kf, &root.point[0], &root.point[1]);
            kf.normalize(&mut p);
            let found = lines_through_point(&cubic_k, &p, 1)?;
            if found.eckardt {
                flag = DrFlag::EckardtFamily;
                continue;
            }
            for l in found.lines {
                if definition_degree(kf, q, k, l.pluecker()) == k && !lines.iter().any(|d: &DrLine<F::Elem>| d.degree == k && d.line == l) {
                    lines.push(DrLine { degree: k, line: l });
                }
            }
        }
    }
    let span_dim = if flag == DrFlag::Finite && q == field.characteristic() {
        pluecker_span_rank(field.characteristic(), q, &lines, |d| field.extension(d).expect("finite field").field)
            .map(|rank| rank.saturating_sub(1))
    } else {
        None
    };
    Ok(DrReport { lines, span_dim, flag, tower_bound })
}

/// Smallest `j | k` with every coordinate fixed by `x -> x^(q^j)`.
fn definition_degree<F: Field>(field: &F, q: u64, k: usize, v: &[F::Elem]) -> usize {
    (1..=k)
        .filter(|&j| k.is_multiple_of(j))
        .find(|&j| {
            let e = q.pow(j as u32);
            v.iter().all(|a| field.pow(a, e) == *a)
        })
        .unwrap_or(k)
}

/// Rank over the closure of a Galois-stable set of Plücker points, as the
/// `F_p`-rank of their coordinate digits (prime base field `q = p`).
fn pluecker_span_rank<F: Field>(p: u64, q: u64, lines: &[DrLine<F::Elem>], ext_of: impl Fn(usize) -> F) -> Option<usize> {
    if p != q {
        return None;
    }
    let base = ext_of(1);
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for d in lines {
        let kf = ext_of(d.degree);
        let digits: Vec<Vec<u64>> = d
            .line
            .pluecker()
            .iter()
            .map(|a| {
                let mut idx = kf.index_of(a);
                (0..d.degree)
                    .map(|_| {
                        let c = idx % p;
                        idx /= p;
                        c
                    })
                    .collect()
            })
            .collect();
        for i in 0..d.degree {
            rows.push(digits.iter().map(|ds| base.element(ds[i])).collect());
        }
    }
    Some(linalg::rank(&base, &rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::HomForm;
    use crate::field::{Gf, Rationals};
    use num_rational::BigRational;

    fn fermat<F: Field>(f: &F) -> HomForm<F::Elem> {
        let mut out = HomForm::zero(f, 5, 3);
        for i in 0..5 {
            let mut e = [0u8; 5];
            e[i] = 3;
            out.set_coeff(&e, f.one());
        }
        out
    }

    fn mono<F: Field>(f: &F, e: [u8; 5]) -> HomForm<F::Elem> {
        HomForm::monomial(f, 5, &e, f.one())
    }

    #[test]
    fn schubert_forms_and_evaluation() {
        let f = Gf::prime(7).unwrap();
        let p01 = ProjPlane::from_forms(&f, &[vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0]]).unwrap();
        let om = schubert_form(&f, &p01);
        assert_eq!(om.coeffs, vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        let pi = ProjPlane::from_forms(&f, &[vec![1, 1, 0, 0, 0], vec![0, 0, 1, 1, 0]]).unwrap();
        assert_eq!(schubert_form(&f, &pi).coeffs, vec![0, 1, 1, 0, 1, 1, 0, 0, 0, 0]);
        let l01 = ProjLine::through(&f, &[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0]).unwrap();
        let l23 = ProjLine::through(&f, &[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0]).unwrap();
        let tri = ProjLine::through(&f, &[1, 6, 0, 0, 0], &[0, 0, 1, 6, 0]).unwrap();
        assert_eq!(om.evaluate_on_line(&f, &l01), 1);
        assert_eq!(om.evaluate_on_line(&f, &l23), 0);
        assert_eq!(om.evaluate_on_line(&f, &tri), 0);
    }

    #[test]
    fn schubert_forms_vanish_exactly_on_meeting_lines_f3() {
        let f = Gf::prime(3).unwrap();
        let lines = crate::census::LineSpace::new(&f, 4).unwrap();
        let planes = [
            ProjPlane::from_forms(&f, &[vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0]]).unwrap(),
            ProjPlane::from_forms(&f, &[vec![1, 1, 0, 2, 0], vec![0, 1, 2, 0, 1]]).unwrap(),
        ];
        for pi in &planes {
            let om = schubert_form(&f, pi);
            for l in lines.iter() {
                assert_eq!(om.evaluate_on_line(&f, &l) == 0, pi.meets_line(&f, &l));
            }
        }
    }

    #[test]
    fn w_space_examples() {
        let f = Gf::prime(7).unwrap();
        let l01 = ProjLine::through(&f, &[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0]).unwrap();
        let (w, w2) = w_spaces(&f, &l01);
        assert_eq!(w.rows(), &[vec![0, 0, 1, 0, 0], vec![0, 0, 0, 1, 0], vec![0, 0, 0, 0, 1]]);
        assert_eq!(w2.rows(), &[
            vec![0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 1]
        ]);
        let tri = ProjLine::through(&f, &[1, 6, 0, 0, 0], &[0, 0, 1, 6, 0]).unwrap();
        let (w, w2) = w_spaces(&f, &tri);
        assert_eq!(w.rows(), &[vec![1, 1, 0, 0, 0], vec![0, 0, 1, 1, 0], vec![0, 0, 0, 0, 1]]);
        assert_eq!(w2.dim(), 3);
    }

    #[test]
    fn fermat_adjoint_examples() {
        let f = Gf::prime(7).unwrap();
        let ctx = CubicContext::new(&f, &fermat(&f)).unwrap();
        let xi = ctx.make_xi(&mono(&f, [0, 0, 1, 1, 1])).unwrap();
        let rep = adjoint_class(&ctx, &AdjointInput::Xi(xi), 3).unwrap();
        assert!(!rep.vanishes);
        assert_eq!(rep.tangent_hyperplanes, vec![vec![1, 2, 0, 0, 0], vec![1, 4, 0, 0, 0], vec![1, 1, 0, 0, 0]]);
        let base = ProjPlane::from_forms(&f, &[vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0]]).unwrap();
        assert_eq!(rep.base_plane, Some(base));
        assert_eq!(rep.representative.coeffs, vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        // the three intersection points are distinct, and all are Eckardt points
        assert_eq!(rep.degeneracy, Degeneracy::EckardtOnLine);
        assert_eq!(rep.eckardt_hits.len(), 3);

        let wrong = ctx.make_xi(&mono(&f, [1, 1, 1, 0, 0]).add(&f, &mono(&f, [0, 0, 1, 1, 1]))).unwrap();
        assert_eq!(adjoint_class(&ctx, &AdjointInput::Xi(wrong), 3), Err(Error::RankNotTwo(4)));

        let q = Rationals;
        let ctx = CubicContext::new(&q, &fermat(&q)).unwrap();
        let lin = |c: [i64; 5]| HomForm::linear(&c.map(|x| BigRational::from_integer(x.into())));
        let xi = ctx.make_xi(&lin([1, -1, 0, 0, 0]).mul(&q, &lin([0, 0, 1, -1, 0])).mul(&q, &lin([0, 0, 0, 0, 1]))).unwrap();
        assert_eq!(xi.rank, 2);
        let rep = adjoint_class(&ctx, &AdjointInput::Xi(xi), 1).unwrap();
        assert!(rep.vanishes);
        assert_eq!(rep.degeneracy, Degeneracy::InF);
        assert!(rep.representative.is_zero(&q));
    }

    #[test]
    fn primitive_form_examples() {
        let f = Gf::prime(7).unwrap();
        let ctx = CubicContext::new(&f, &fermat(&f)).unwrap();
        let xi = ctx.make_xi(&mono(&f, [0, 0, 1, 1, 1])).unwrap();
        let d = primitive_form(&ctx, &xi).unwrap();
        assert_eq!(d.phi, vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(d.images[0], ctx.reduce(&mono(&f, [1, 0, 1, 1, 1])));
        assert_eq!(d.images[1], ctx.reduce(&mono(&f, [0, 1, 1, 1, 1])));
        assert!(d.independent && d.decomposable);

        let xi = ctx.make_xi(&mono(&f, [1, 1, 1, 0, 0])).unwrap();
        let d = primitive_form(&ctx, &xi).unwrap();
        assert_eq!(d.images[0], ctx.reduce(&mono(&f, [1, 1, 1, 1, 0])));
        assert_eq!(d.images[1], ctx.reduce(&mono(&f, [1, 1, 1, 0, 1])));

        let wrong = ctx.make_xi(&mono(&f, [1, 1, 1, 0, 0]).add(&f, &mono(&f, [0, 0, 1, 1, 1]))).unwrap();
        assert_eq!(primitive_form(&ctx, &wrong), Err(Error::RankNotTwo(4)));
    }

    #[test]
    fn d_r_flags_on_fermat() {
        let f = Gf::prime(7).unwrap();
        let ctx = CubicContext::new(&f, &fermat(&f)).unwrap();
        let l01 = ProjLine::through(&f, &[1, 0, 0, 0, 0], &[0, 1, 0, 0, 0]).unwrap();
        assert_eq!(d_r_lines(&ctx, &l01, 2).unwrap().flag, DrFlag::EckardtFamily);
        let tri = ProjLine::through(&f, &[1, 6, 0, 0, 0], &[0, 0, 1, 6, 0]).unwrap();
        assert_eq!(d_r_lines(&ctx, &tri, 2).unwrap().flag, DrFlag::InF);
        let q = CubicContext::new(&Rationals, &fermat(&Rationals)).unwrap();
        let lq = ProjLine::from_span(&Rationals, &[
            (0..5).map(|i| BigRational::from_integer(((i == 0) as i64).into())).collect(),
            (0..5).map(|i| BigRational::from_integer(((i == 1) as i64).into())).collect(),
        ])
        .unwrap();
        assert_eq!(d_r_lines(&q, &lq, 2), Err(Error::FiniteFieldRequired));
    }
}
