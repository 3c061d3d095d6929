//! Eckardt points and the lines through a point of the cubic.

use crate::algebra::binary::binary_roots;
use crate::algebra::linalg;
use crate::algebra::HomForm;
use crate::error::{Error, Result};
use crate::field::{upoly, Field};

use super::classify::projective_points;
use super::cubic::Cubic;
use super::subspace::ProjLine;

/// Data of the tangent hyperplane section at a point `p` of the cubic.
///
/// In the basis `b0 = p, b1, b2, b3` of the tangent hyperplane (plus `b4`
/// outside it) the section reads `y0 * quadric(y1, y2, y3) + cubic(y1, y2, y3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EckardtData<E> {
    pub point: Vec<E>,
    pub is_eckardt: bool,
    /// Coefficients of the tangent hyperplane.
    pub tangent: Vec<E>,
    /// Columns `b0..b4` of the normalizing coordinate change.
    pub basis: Vec<Vec<E>>,
    pub quadric: HomForm<E>,
    /// Base of the cone when the point is an Eckardt point.
    pub cubic: HomForm<E>,
}

/// Tests whether the tangent hyperplane section at `p` is a cone with vertex
/// `p`, i.e. whether `p` is an Eckardt point.
pub fn eckardt_test<F: Field>(cubic: &Cubic<F>, p: &[F::Elem]) -> Result<EckardtData<F::Elem>> {
    let field = cubic.field();
    if p.len() != 5 {
        return Err(Error::Dimension("points of P^4 have 5 coordinates".into()));
    }
    let mut p = p.to_vec();
    if !field.normalize(&mut p) {
        return Err(Error::Dimension("the zero vector is not a point".into()));
    }
    if !field.is_zero(&cubic.eval(&p)) {
        return Err(Error::NotOnCubic("the point"));
    }
    let mut tangent = cubic.gradient_at(&p);
    if !field.normalize(&mut tangent) {
        return Err(Error::SingularCubic);
    }
    // b1..b3: complete p inside ker(tangent), standard vectors first
    let ker = linalg::kernel(field, &[tangent.clone()], 5);
    let mut candidates: Vec<Vec<F::Elem>> = (0..5)
        .filter(|&j| field.is_zero(&tangent[j]))
        .map(|j| unit(field, j))
        .collect();
    candidates.extend(ker.rows().iter().cloned());
    let mut basis = vec![p.clone()];
    for c in candidates {
        if basis.len() == 4 {
            break;
        }
        let mut trial = basis.clone();
        trial.push(c.clone());
        if linalg::rank(field, &trial) == trial.len() {
            basis.push(c);
        }
    }
    let b4 = (0..5).find(|&j| !field.is_zero(&tangent[j])).expect("nonzero tangent");
    basis.push(unit(field, b4));

    // E restricted to the tangent hyperplane, in y0..y3
    let images: Vec<Vec<F::Elem>> = (0..5).map(|i| (0..4).map(|k| basis[k][i].clone()).collect()).collect();
    let section = cubic.form().compose_linear(field, &images);
    let mut quadric = HomForm::zero(field, 3, 2);
    let mut base = HomForm::zero(field, 3, 3);
    for (e, c) in section.terms(field) {
        let rest = [e[1], e[2], e[3], 0, 0];
        match e[0] {
            0 => base.set_coeff(&rest, c.clone()),
            1 => quadric.set_coeff(&rest, c.clone()),
            _ => unreachable!("p lies on the cubic and the section is tangent at p"),
        }
    }
    let is_eckardt = quadric.is_zero(field);
    Ok(EckardtData { point: p, is_eckardt, tangent, basis, quadric, cubic: base })
}

fn unit<F: Field>(field: &F, j: usize) -> Vec<F::Elem> {
    let mut e = vec![field.zero(); 5];
    e[j] = field.one();
    e
}

/// Lines of the cubic through a point, over the degree-`k` extension.
#[derive(Clone, Debug)]
pub struct PointLines<F: Field> {
    pub field: F,
    pub eckardt: bool,
    /// Set when the conic and cubic of directions share a component, so the
    /// lines form a family.
    pub infinite: bool,
    pub lines: Vec<ProjLine<F::Elem>>,
}

/// Lines on the cubic through `p` defined over `F_(q^k)`.
///
/// Directions of such lines are the common zeros of the quadric and cubic of
/// [`EckardtData`] in the plane of directions. They are found by projecting
/// from a rational point off the quadric: the resultant of the two curves is
/// a binary sextic whose roots give the projection lines, and each line is
/// then intersected with both curves.
pub fn lines_through_point<F: Field>(cubic: &Cubic<F>, p: &[F::Elem], k: usize) -> Result<PointLines<F>> {
    let field = cubic.field();
    let q = field.order().ok_or(Error::FiniteFieldRequired)?;
    let data = eckardt_test(cubic, p)?;
    let ext = field.extension(k.max(1)).ok_or(Error::FiniteFieldRequired)?;
    let kf = ext.field.clone();
    if data.is_eckardt {
        return Ok(PointLines { field: kf, eckardt: true, infinite: true, lines: Vec::new() });
    }
    // projection centre: a rational point not on the quadric. A nonzero
    // conic cannot vanish on a 3x3 affine grid, so the search is short.
    let grid = q.min(3);
    let center = (0..grid * grid)
        .map(|i| vec![field.one(), field.element(i % grid), field.element(i / grid)])
        .chain(if q < 3 { projective_points(field, q, 3) } else { Vec::new() })
        .find(|c| !field.is_zero(&data.quadric.eval(field, c)))
        .expect("a nonzero conic misses some rational point");
    let mut frame = Vec::new();
    for j in 0..3 {
        let mut e = vec![field.zero(); 3];
        e[j] = field.one();
        let mut trial = frame.clone();
        trial.push(e.clone());
        trial.push(center.clone());
        if frame.len() < 2 && linalg::rank(field, &trial) == trial.len() {
            frame.push(e);
        }
    }
    frame.push(center);
    // x, y, z in the frame (a1, a2, centre)
    let images: Vec<Vec<F::Elem>> = (0..3).map(|i| (0..3).map(|c| frame[c][i].clone()).collect()).collect();
    let qf = data.quadric.compose_linear(field, &images).map_coeffs(|c| ext.embed(field, c));
    let cf = data.cubic.compose_linear(field, &images).map_coeffs(|c| ext.embed(field, c));

    let res = resultant_in_z(&kf, &qf, &cf);
    let mut lines: Vec<ProjLine<F::Elem>> = Vec::new();
    if res.is_zero(&kf) {
        return Ok(PointLines { field: kf, eckardt: false, infinite: true, lines });
    }
    let frame_k: Vec<Vec<F::Elem>> = frame.iter().map(|v| ext.embed_all(field, v)).collect();
    let basis_k: Vec<Vec<F::Elem>> = data.basis.iter().map(|v| ext.embed_all(field, v)).collect();
    let pk = ext.embed_all(field, &data.point);
    for root in binary_roots(&kf, &res, 1)?.rational {
        let [x, y] = root.point;
        let qz = z_polynomial(&kf, &qf, &x, &y);
        let cz = z_polynomial(&kf, &cf, &x, &y);
        let g = upoly::gcd(&kf, &qz, &cz);
        for (z, _) in upoly::roots(&kf, &g) {
            // direction in the (y1, y2, y3) plane, then in P^4
            let dir3: Vec<F::Elem> = (0..3)
                .map(|i| {
                    let t = kf.add(&kf.mul(&x, &frame_k[0][i]), &kf.mul(&y, &frame_k[1][i]));
                    kf.add(&t, &kf.mul(&z, &frame_k[2][i]))
                })
                .collect();
            let v: Vec<F::Elem> = (0..5)
                .map(|j| {
                    let mut acc = kf.zero();
                    for i in 0..3 {
                        acc = kf.add(&acc, &kf.mul(&dir3[i], &basis_k[i + 1][j]));
                    }
                    acc
                })
                .collect();
            let line = ProjLine::through(&kf, &pk, &v)?;
            if !lines.contains(&line) {
                lines.push(line);
            }
        }
    }
    lines.sort_by_key(|l| l.pluecker().iter().map(|c| kf.index_of(c)).collect::<Vec<_>>());
    Ok(PointLines { field: kf, eckardt: false, infinite: false, lines })
}

/// The univariate polynomial `f(x, y, z)` in `z` (ascending coefficients).
fn z_polynomial<F: Field>(field: &F, f: &HomForm<F::Elem>, x: &F::Elem, y: &F::Elem) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); f.degree() + 1];
    for (e, c) in f.terms(field) {
        let t = field.mul(c, &field.mul(&field.pow(x, e[0] as u64), &field.pow(y, e[1] as u64)));
        out[e[2] as usize] = field.add(&out[e[2] as usize], &t);
    }
    upoly::trim(field, &mut out);
    out
}

/// `Res_z(f, g)` for ternary forms in `(x, y, z)`, as a binary form in
/// `(x, y)` of degree `deg f * deg g`. The coefficient of `z^deg f` in `f`
/// must be a nonzero constant.
fn resultant_in_z<F: Field>(field: &F, f: &HomForm<F::Elem>, g: &HomForm<F::Elem>) -> HomForm<F::Elem> {
    let (df, dg) = (f.degree(), g.degree());
    // coefficient of z^j as a univariate polynomial in u = y / x
    let coeff_polys = |h: &HomForm<F::Elem>| -> Vec<Vec<F::Elem>> {
        let mut out = vec![Vec::new(); h.degree() + 1];
        for (e, c) in h.terms(field) {
            let j = e[2] as usize;
            let slot = &mut out[j];
            if slot.len() <= e[1] as usize {
                slot.resize(e[1] as usize + 1, field.zero());
            }
            slot[e[1] as usize] = field.add(&slot[e[1] as usize], c);
        }
        out
    };
    let fc = coeff_polys(f);
    let gc = coeff_polys(g);
    let n = df + dg;
    let mut m: Vec<Vec<Vec<F::Elem>>> = vec![vec![Vec::new(); n]; n];
    for s in 0..dg {
        for i in 0..=df {
            m[s][s + i] = fc[df - i].clone();
        }
    }
    for s in 0..df {
        for i in 0..=dg {
            m[dg + s][s + i] = gc[dg - i].clone();
        }
    }
    let det = poly_determinant(field, &m);
    let total = df * dg;
    let mut coeffs = det;
    coeffs.resize(total + 1, field.zero());
    HomForm::from_coeffs(2, total, coeffs).expect("binary form of the resultant degree")
}

/// Determinant of a matrix of univariate polynomials by Laplace expansion.
fn poly_determinant<F: Field>(field: &F, m: &[Vec<Vec<F::Elem>>]) -> Vec<F::Elem> {
    let n = m.len();
    if n == 0 {
        return vec![field.one()];
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc: Vec<F::Elem> = Vec::new();
    for j in 0..n {
        if m[0][j].is_empty() {
            continue;
        }
        let minor: Vec<Vec<Vec<F::Elem>>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = upoly::mul(field, &m[0][j], &poly_determinant(field, &minor));
        acc = if j % 2 == 0 { upoly::add(field, &acc, &term) } else { upoly::sub(field, &acc, &term) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf, Rationals};
    use num_rational::BigRational;

    fn fermat<F: Field>(f: &F) -> Cubic<F> {
        let mut out = HomForm::zero(f, 5, 3);
        for i in 0..5 {
            let mut e = [0u8; 5];
            e[i] = 3;
            out.set_coeff(&e, f.one());
        }
        Cubic::new(f, &out).unwrap()
    }

    #[test]
    fn eckardt_examples() {
        let f = Rationals;
        let e = fermat(&f);
        let p: Vec<BigRational> = [1, -1, 0, 0, 0].iter().map(|&x| BigRational::from_integer(x.into())).collect();
        let d = eckardt_test(&e, &p).unwrap();
        assert!(d.is_eckardt);
        assert_eq!(d.cubic.to_expression(&f, &["y1", "y2", "y3"]), "y1^3 + y2^3 + y3^3");
        assert_eq!(&d.basis[1..4], &[
            p.iter().map(|_| BigRational::from_integer(0.into())).enumerate().map(|(i, z)| if i == 2 { BigRational::from_integer(1.into()) } else { z }).collect::<Vec<_>>(),
            (0..5).map(|i| BigRational::from_integer(((i == 3) as i64).into())).collect(),
            (0..5).map(|i| BigRational::from_integer(((i == 4) as i64).into())).collect(),
        ]);

        let g = Gf::prime(7).unwrap();
        let e7 = fermat(&g);
        assert!(!eckardt_test(&e7, &[1, 2, 3, 0, 3]).unwrap().is_eckardt);
        assert_eq!(eckardt_test(&e7, &[1, 0, 0, 0, 0]), Err(Error::NotOnCubic("the point")));
    }

    #[test]
    fn lines_through_points_match_exhaustive_scan() {
        let f = Gf::prime(7).unwrap();
        let e = fermat(&f);
        let res = lines_through_point(&e, &[1, 6, 0, 0, 0], 1).unwrap();
        assert!(res.eckardt);
        let points: Vec<Vec<u32>> = projective_points(&f, 7, 5).into_iter().filter(|p| e.eval(p) == 0).collect();
        let mut checked = 0;
        for p in points.iter().filter(|p| !eckardt_test(&e, p).unwrap().is_eckardt).take(25) {
            let found = lines_through_point(&e, p, 1).unwrap();
            assert!(!found.infinite);
            // oracle: every direction in P^4 through p
            let mut scan = Vec::new();
            for d in projective_points(&f, 7, 5) {
                if let Ok(l) = ProjLine::through(&f, p, &d) {
                    if e.contains_line(&l) && !scan.contains(&l) {
                        scan.push(l);
                    }
                }
            }
            scan.sort_by_key(|l| l.pluecker().to_vec());
            assert_eq!(found.lines, scan, "p = {p:?}");
            assert!(lines_through_point(&e, p, 6).unwrap().lines.len() <= 6);
            checked += 1;
        }
        assert_eq!(checked, 25);
        assert_eq!(lines_through_point(&Cubic::new(&Rationals, &HomForm::zero(&Rationals, 5, 3)).unwrap(), &[], 1).unwrap_err(), Error::FiniteFieldRequired);
    }
}
