//! The Jacobian ring `R = S/J` of a cubic form in five variables and the
//! multiplication maps `R^1 -> R^4` attached to classes in `R^3`.
//!
//! `J_k` is stored in reduced echelon form with pivots searched from the
//! *last* monomial backwards, so the non-pivot monomials are exactly the
//! earliest monomials (in table order) completing `J_k` to `S^k`. Those
//! monomials are the basis of `R^k` used by every matrix in this module, and
//! the socle `R^5` is identified with the field through its single basis
//! monomial.

use crate::algebra::linalg::{self, EchelonSpace};
use crate::algebra::monomial::{self, Exponent};
use crate::algebra::HomForm;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{Cubic, ProjLine};

pub const TOP_DEGREE: usize = 6;
pub const SMOOTH_PROFILE: [usize; 6] = [1, 5, 10, 10, 5, 1];

#[derive(Clone, Debug)]
pub struct CubicContext<F: Field> {
    field: F,
    cubic: Cubic<F>,
    jac: Vec<EchelonSpace<F::Elem>>,
    /// `basis[k]`: monomial indices (into the degree-`k` table) spanning `R^k`.
    basis: Vec<Vec<usize>>,
    /// `normal[k][m]`: coordinates of monomial `m` of degree `k` in `R^k`.
    normal: Vec<Vec<Vec<F::Elem>>>,
    smooth: bool,
}

impl<F: Field> CubicContext<F> {
    /// Builds the graded pieces of `R` up to degree 6. Characteristics 2 and
    /// 3 are rejected; see [`CubicContext::with_small_characteristic`].
    pub fn new(field: &F, cubic: &HomForm<F::Elem>) -> Result<Self> {
        let p = field.characteristic();
        if p == 2 || p == 3 {
            return Err(Error::Characteristic(p));
        }
        Self::with_small_characteristic(field, cubic)
    }

    /// Same as [`CubicContext::new`] without the characteristic guard. In
    /// characteristic 3 the socle test no longer detects smoothness.
    pub fn with_small_characteristic(field: &F, cubic: &HomForm<F::Elem>) -> Result<Self> {
        let cubic = Cubic::new(field, cubic)?;
        if cubic.form().is_zero(field) {
            return Err(Error::ZeroForm);
        }
        let partials = cubic.partials();
        let mut jac = Vec::with_capacity(TOP_DEGREE + 1);
        let mut basis = Vec::with_capacity(TOP_DEGREE + 1);
        let mut normal = Vec::with_capacity(TOP_DEGREE + 1);
        for k in 0..=TOP_DEGREE {
            let n = monomial::count(5, k);
            let mut rows = Vec::new();
            if k >= 2 {
                for m in monomial::monomials(5, k - 2) {
                    for d in partials {
                        let mut row = vec![field.zero(); n];
                        for (e, c) in d.terms(field) {
                            row[monomial::index_of(5, &monomial::add_exponents(m, e))] = c.clone();
                        }
                        rows.push(row);
                    }
                }
            }
            let order: Vec<usize> = (0..n).rev().collect();
            let pivots = linalg::rref_with_order(field, &mut rows, &order);
            let mut pivot_row = vec![None; n];
            for (r, &p) in pivots.iter().enumerate() {
                pivot_row[p] = Some(r);
            }
            let b: Vec<usize> = (0..n).filter(|&c| pivot_row[c].is_none()).collect();
            let nf: Vec<Vec<F::Elem>> = (0..n)
                .map(|m| match pivot_row[m] {
                    None => b.iter().map(|&c| if c == m { field.one() } else { field.zero() }).collect(),
                    Some(r) => b.iter().map(|&c| field.neg(&rows[r][c])).collect(),
                })
                .collect();
            jac.push(EchelonSpace::from_vectors(field, n, rows));
            basis.push(b);
            normal.push(nf);
        }
        let dims: Vec<usize> = basis.iter().map(|b| b.len()).collect();
        let smooth = dims[..6] == SMOOTH_PROFILE && dims[6] == 0;
        Ok(Self { field: field.clone(), cubic, jac, basis, normal, smooth })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn cubic(&self) -> &Cubic<F> {
        &self.cubic
    }

    pub fn form(&self) -> &HomForm<F::Elem> {
        self.cubic.form()
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    /// `dim R^k` for `k = 0..=6`.
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    pub fn jacobian_piece(&self, k: usize) -> &EchelonSpace<F::Elem> {
        &self.jac[k]
    }

    /// Basis monomials of `R^k`.
    pub fn basis_monomials(&self, k: usize) -> Vec<Exponent> {
        let table = monomial::monomials(5, k);
        self.basis[k].iter().map(|&i| table[i]).collect()
    }

    pub fn require_smooth(&self) -> Result<()> {
        if self.smooth {
            Ok(())
        } else {
            Err(Error::SingularCubic)
        }
    }

    /// Coordinates of a form of degree `<= 6` in the basis of `R^deg`.
    pub fn reduce(&self, f: &HomForm<F::Elem>) -> Vec<F::Elem> {
        let k = f.degree();
        let field = &self.field;
        let mut out = vec![field.zero(); self.basis[k].len()];
        for (i, c) in f.coeffs().iter().enumerate() {
            if field.is_zero(c) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&self.normal[k][i]) {
                if !field.is_zero(x) {
                    *o = field.add(o, &field.mul(c, x));
                }
            }
        }
        out
    }

    /// The basis-monomial combination with the given `R^k` coordinates.
    pub fn lift(&self, k: usize, coords: &[F::Elem]) -> HomForm<F::Elem> {
        let field = &self.field;
        let mut out = HomForm::zero(field, 5, k);
        let table = monomial::monomials(5, k);
        for (&i, c) in self.basis[k].iter().zip(coords) {
            out.set_coeff(&table[i], c.clone());
        }
        out
    }

    /// Product of classes in `R^i` and `R^j`, as coordinates in `R^(i+j)`.
    pub fn multiply(&self, i: usize, a: &[F::Elem], j: usize, b: &[F::Elem]) -> Vec<F::Elem> {
        let field = &self.field;
        let k = i + j;
        let ti = monomial::monomials(5, i);
        let tj = monomial::monomials(5, j);
        let mut out = vec![field.zero(); self.basis[k].len()];
        for (&mi, ca) in self.basis[i].iter().zip(a) {
            if field.is_zero(ca) {
                continue;
            }
            for (&mj, cb) in self.basis[j].iter().zip(b) {
                if field.is_zero(cb) {
                    continue;
                }
                let c = field.mul(ca, cb);
                let m = monomial::index_of(5, &monomial::add_exponents(&ti[mi], &tj[mj]));
                for (o, x) in out.iter_mut().zip(&self.normal[k][m]) {
                    if !field.is_zero(x) {
                        *o = field.add(o, &field.mul(&c, x));
                    }
                }
            }
        }
        out
    }

    /// Socle coordinate of a class in `R^5`.
    fn socle(&self, coords: &[F::Elem]) -> F::Elem {
        coords.first().cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Matrix of the pairing `R^i x R^(5-i) -> R^5`, rows indexed by the basis
    /// of `R^i`.
    pub fn pairing_matrix(&self, i: usize) -> Result<Vec<Vec<F::Elem>>> {
        self.require_smooth()?;
        if i > 5 {
            return Err(Error::Dimension(format!("pairing degree {i} outside 0..=5")));
        }
        let field = &self.field;
        let j = 5 - i;
        let ti = monomial::monomials(5, i);
        let tj = monomial::monomials(5, j);
        Ok(self.basis[i]
            .iter()
            .map(|&a| {
                self.basis[j]
                    .iter()
                    .map(|&b| {
                        let m = monomial::index_of(5, &monomial::add_exponents(&ti[a], &tj[b]));
                        self.normal[5][m].first().cloned().unwrap_or_else(|| field.zero())
                    })
                    .collect()
            })
            .collect())
    }

    /// The class of a cubic form in `R^3`, with its multiplication data.
    pub fn make_xi(&self, f: &HomForm<F::Elem>) -> Result<XiClass<F::Elem>> {
        if f.nvars() != 5 || f.degree() != 3 {
            return Err(Error::Dimension("a class in R^3 needs a cubic form".into()));
        }
        self.xi_from_coords(self.reduce(f))
    }

    pub fn xi_from_coords(&self, coords: Vec<F::Elem>) -> Result<XiClass<F::Elem>> {
        let field = &self.field;
        if coords.len() != self.basis[3].len() {
            return Err(Error::Dimension("wrong number of R^3 coordinates".into()));
        }
        if coords.iter().all(|c| field.is_zero(c)) {
            return Err(Error::ZeroClass);
        }
        let r1 = self.basis[1].len();
        // delta[a] = coordinates of z_a * xi in R^4 (a runs over the R^1 basis)
        let delta: Vec<Vec<F::Elem>> = (0..r1)
            .map(|a| {
                let mut unit = vec![field.zero(); r1];
                unit[a] = field.one();
                self.multiply(1, &unit, 3, &coords)
            })
            .collect();
        let r4 = self.basis[4].len();
        let as_map = linalg::transpose(&delta);
        let (rank, k1) = if r4 == 0 {
            (0, EchelonSpace::full(field, r1))
        } else {
            linalg::rref_rank_kernel(field, &as_map, r1)?
        };
        let r2 = self.basis[2].len();
        let k2_rows: Vec<Vec<F::Elem>> = {
            let images: Vec<Vec<F::Elem>> = (0..r2)
                .map(|a| {
                    let mut unit = vec![field.zero(); r2];
                    unit[a] = field.one();
                    self.multiply(2, &unit, 3, &coords)
                })
                .collect();
            linalg::transpose(&images)
        };
        let k2 = if k2_rows.is_empty() {
            EchelonSpace::full(field, r2)
        } else {
            linalg::kernel(field, &k2_rows, r2)
        };
        let representative = self.lift(3, &coords);
        Ok(XiClass { coords, representative, delta, rank, k1, k2 })
    }

    /// Rank of the quadratic form `rho(xi)` on `R^1`, `(a, b) -> <z_a z_b xi>`,
    /// and whether it is at most 2.
    pub fn xi_quadric_rank(&self, xi: &XiClass<F::Elem>) -> Result<(usize, bool)> {
        self.require_smooth()?;
        let m = self.rho_matrix(xi);
        let rank = linalg::rank(&self.field, &m);
        Ok((rank, rank <= 2))
    }

    /// Symmetric matrix of `rho(xi)` computed through products in `R^5`.
    pub fn rho_matrix(&self, xi: &XiClass<F::Elem>) -> Vec<Vec<F::Elem>> {
        let field = &self.field;
        let r1 = self.basis[1].len();
        let unit = |a: usize| {
            let mut u = vec![field.zero(); r1];
            u[a] = field.one();
            u
        };
        (0..r1)
            .map(|a| {
                (0..r1)
                    .map(|b| {
                        let ab = self.multiply(1, &unit(a), 1, &unit(b));
                        self.socle(&self.multiply(2, &ab, 3, &xi.coords))
                    })
                    .collect()
            })
            .collect()
    }

    /// The line cut out by `K_1(xi)` when that kernel is 3-dimensional.
    pub fn sigma_line_of_xi(&self, xi: &XiClass<F::Elem>) -> Result<ProjLine<F::Elem>> {
        self.require_smooth()?;
        if xi.k1.dim() != 3 {
            return Err(Error::KernelDimension { expected: 3, found: xi.k1.dim() });
        }
        let span = linalg::kernel(&self.field, xi.k1.rows(), 5);
        ProjLine::from_span(&self.field, span.rows())
    }

    /// Span of `W(r) * R^1` inside `R^2`, where `W(r)` are the linear forms
    /// vanishing on the line.
    pub fn w_times_r1(&self, line: &ProjLine<F::Elem>) -> EchelonSpace<F::Elem> {
        let field = &self.field;
        let w = line.annihilator(field);
        let mut vectors = Vec::with_capacity(15);
        for form in w.rows() {
            for a in 0..5 {
                let mut unit = vec![field.zero(); 5];
                unit[a] = field.one();
                vectors.push(self.multiply(1, form, 1, &unit));
            }
        }
        EchelonSpace::from_vectors(field, self.basis[2].len(), vectors)
    }

    /// The class `xi` (first nonzero coordinate 1) with `K_1(xi) = W(r)`.
    pub fn xi_of_line(&self, line: &ProjLine<F::Elem>) -> Result<XiClass<F::Elem>> {
        self.require_smooth()?;
        let field = &self.field;
        let span = self.w_times_r1(line);
        if span.dim() == 10 {
            return Err(Error::NotInSigma);
        }
        let pairing = self.pairing_matrix(2)?;
        let conditions = linalg::mat_mul(field, span.rows(), &pairing);
        let ker = linalg::kernel(field, &conditions, 10);
        if ker.dim() != 1 {
            return Err(Error::KernelDimension { expected: 1, found: ker.dim() });
        }
        let mut coords = ker.rows()[0].clone();
        field.normalize(&mut coords);
        self.xi_from_coords(coords)
    }
}

/// A nonzero class `xi` in `R^3` with the multiplication map
/// `delta(xi): R^1 -> R^4` and the kernels `K_1`, `K_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiClass<E> {
    /// Coordinates in the basis of `R^3`.
    pub coords: Vec<E>,
    /// Basis-monomial representative of the coset.
    pub representative: HomForm<E>,
    /// `delta[a]`: coordinates of `z_a * xi` in `R^4`.
    pub delta: Vec<Vec<E>>,
    pub rank: usize,
    /// Kernel of `R^1 -> R^4`, in coordinates `z0..z4`.
    pub k1: EchelonSpace<E>,
    /// Kernel of `R^2 -> R^5`, in the basis of `R^2`.
    pub k2: EchelonSpace<E>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf, Rationals};

    pub(crate) fn fermat<F: Field>(f: &F) -> HomForm<F::Elem> {
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
    fn fermat_profile() {
        let ctx = CubicContext::new(&Rationals, &fermat(&Rationals)).unwrap();
        assert_eq!(ctx.dims(), vec![1, 5, 10, 10, 5, 1, 0]);
        assert!(ctx.is_smooth());
        // R is spanned by squarefree monomials
        let b3: Vec<String> = ctx
            .basis_monomials(3)
            .iter()
            .map(|e| monomial::display(5, e, &monomial::Z_NAMES))
            .collect();
        assert_eq!(b3[0], "z0*z1*z2");
        assert_eq!(ctx.basis_monomials(5), vec![[1, 1, 1, 1, 1]]);
    }

    #[test]
    fn singular_examples() {
        let f = Rationals;
        let ctx = CubicContext::new(&f, &mono(&f, [3, 0, 0, 0, 0])).unwrap();
        assert!(!ctx.is_smooth());
        assert_ne!(ctx.dims()[6], 0);
        let mut cone = fermat(&f);
        cone.set_coeff(&[0, 0, 0, 0, 3], f.zero());
        let ctx = CubicContext::new(&f, &cone).unwrap();
        assert!(!ctx.is_smooth());
        assert!(matches!(CubicContext::new(&Gf::prime(3).unwrap(), &fermat(&Gf::prime(3).unwrap())), Err(Error::Characteristic(3))));
    }

    #[test]
    fn fermat_pairings_are_permutations() {
        let f = Gf::prime(7).unwrap();
        let ctx = CubicContext::new(&f, &fermat(&f)).unwrap();
        assert_eq!(ctx.pairing_matrix(0).unwrap(), vec![vec![1]]);
        let p1 = ctx.pairing_matrix(1).unwrap();
        // z_a pairs with the complementary squarefree quartic
        let b4 = ctx.basis_monomials(4);
        for (a, row) in p1.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let complement = b4[j][a] == 0;
                assert_eq!(*x, u32::from(complement), "a={a} j={j}");
            }
        }
    }

    #[test]
    fn xi_examples() {
        let f = Gf::prime(7).unwrap();
        let ctx = CubicContext::new(&f, &fermat(&f)).unwrap();
        let xi = ctx.make_xi(&mono(&f, [0, 0, 1, 1, 1])).unwrap();
        assert_eq!(xi.rank, 2);
        assert_eq!(xi.k1.rows(), &[vec![0, 0, 1, 0, 0], vec![0, 0, 0, 1, 0], vec![0, 0, 0, 0, 1]]);
        assert_eq!(xi.k2.dim(), 9);
        assert_eq!(ctx.xi_quadric_rank(&xi).unwrap(), (2, true));
        let line = ctx.sigma_line_of_xi(&xi).unwrap();
        assert_eq!(line.pluecker(), &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);

        let g = mono(&f, [1, 1, 1, 0, 0]).add(&f, &mono(&f, [0, 0, 1, 1, 1]));
        let xi = ctx.make_xi(&g).unwrap();
        assert_eq!(xi.rank, 4);
        assert_eq!(xi.k1.rows(), &[vec![0, 0, 1, 0, 0]]);
        assert_eq!(ctx.xi_quadric_rank(&xi).unwrap(), (4, false));
        assert_eq!(ctx.sigma_line_of_xi(&xi), Err(Error::KernelDimension { expected: 3, found: 1 }));

        assert_eq!(ctx.make_xi(&mono(&f, [3, 0, 0, 0, 0])), Err(Error::ZeroClass));
    }

    #[test]
    fn xi_of_line_examples() {
        let f = Gf::prime(7).unwrap();
        let ctx = CubicContext::new(&f, &fermat(&f)).unwrap();
        let l01 = ProjLine::from_span(&f, &[vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0]]).unwrap();
        let xi = ctx.xi_of_line(&l01).unwrap();
        assert!(xi.representative.proportional(&f, &mono(&f, [0, 0, 1, 1, 1])));
        assert_eq!(ctx.sigma_line_of_xi(&xi).unwrap(), l01);
        let l34 = ProjLine::from_span(&f, &[vec![0, 0, 0, 1, 0], vec![0, 0, 0, 0, 1]]).unwrap();
        let xi = ctx.xi_of_line(&l34).unwrap();
        assert!(xi.representative.proportional(&f, &mono(&f, [1, 1, 1, 0, 0])));
        let first = ProjLine::from_span(&f, &[vec![1, 0, 1, 0, 1], vec![0, 1, 0, 1, 1]]).unwrap();
        assert_eq!(ctx.xi_of_line(&first), Err(Error::NotInSigma));
    }
}
