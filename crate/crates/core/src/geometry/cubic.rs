use crate::algebra::{linalg, monomial, HomForm};
use crate::error::{Error, Result};
use crate::field::{Extension, Field};

use super::subspace::ProjLine;

/// A cubic form in `z0..z4` together with its field and partial derivatives.
/// This is all the line geometry needs, and it can be moved to extension
/// fields cheaply.
#[derive(Clone, Debug)]
pub struct Cubic<F: Field> {
    field: F,
    form: HomForm<F::Elem>,
    partials: Vec<HomForm<F::Elem>>,
}

impl<F: Field> Cubic<F> {
    pub fn new(field: &F, form: &HomForm<F::Elem>) -> Result<Self> {
        if form.nvars() != 5 || form.degree() != 3 {
            return Err(Error::Dimension("expected a cubic form in z0..z4".into()));
        }
        Ok(Self { field: field.clone(), form: form.clone(), partials: form.gradient(field) })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn form(&self) -> &HomForm<F::Elem> {
        &self.form
    }

    pub fn partials(&self) -> &[HomForm<F::Elem>] {
        &self.partials
    }

    pub fn base_change(&self, ext: &Extension<F>) -> Cubic<F> {
        let form = self.form.map_coeffs(|c| ext.embed(&self.field, c));
        Cubic::new(&ext.field, &form).expect("same shape")
    }

    pub fn eval(&self, x: &[F::Elem]) -> F::Elem {
        self.form.eval(&self.field, x)
    }

    pub fn gradient_at(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.partials.iter().map(|d| d.eval(&self.field, x)).collect()
    }

    pub fn is_singular_point(&self, x: &[F::Elem]) -> bool {
        self.gradient_at(x).iter().all(|c| self.field.is_zero(c))
    }

    /// No singular point over the algebraic closure, in any characteristic.
    ///
    /// `E` and its partials have no common projective zero exactly when they
    /// span all forms of degree 7 (Macaulay's bound for generators of degrees
    /// 3, 2, 2, 2, 2). Unlike the Jacobian-ring test this does not rely on
    /// the Euler relation, so it also holds in characteristic 3.
    pub fn is_nonsingular(&self) -> bool {
        let field = &self.field;
        let n = monomial::count(5, 7);
        let mut rows = Vec::new();
        let gens = std::iter::once(&self.form).chain(&self.partials);
        for g in gens {
            if g.is_zero(field) {
                continue;
            }
            for m in monomial::monomials(5, 7 - g.degree()) {
                let mut row = vec![field.zero(); n];
                for (e, c) in g.terms(field) {
                    row[monomial::index_of(5, &monomial::add_exponents(m, e))] = c.clone();
                }
                rows.push(row);
            }
        }
        linalg::rank(field, &rows) == n
    }

    /// `E(s P + t Q)` for the canonical points of the line.
    pub fn restrict(&self, line: &ProjLine<F::Elem>) -> HomForm<F::Elem> {
        let (p, q) = line.points();
        self.form.restrict_to_points(&self.field, p, q)
    }

    pub fn contains_line(&self, line: &ProjLine<F::Elem>) -> bool {
        let f = &self.field;
        let (p, q) = line.points();
        if !f.is_zero(&self.eval(p)) || !f.is_zero(&self.eval(q)) {
            return false;
        }
        self.restrict(line).is_zero(f)
    }

    /// The 5x3 matrix whose row `i` holds the coefficients of
    /// `dE/dz_i (s P + t Q)` on `s^2, s t, t^2`.
    pub fn restricted_partials(&self, line: &ProjLine<F::Elem>) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (p, q) = line.points();
        let pq: Vec<F::Elem> = p.iter().zip(q).map(|(a, b)| f.add(a, b)).collect();
        self.partials
            .iter()
            .map(|d| {
                let a = d.eval(f, p);
                let c = d.eval(f, q);
                let b = f.sub(&f.sub(&d.eval(f, &pq), &a), &c);
                vec![a, b, c]
            })
            .collect()
    }

    /// `dim J_2|_l`: rank of [`Cubic::restricted_partials`].
    pub fn restricted_partials_rank(&self, line: &ProjLine<F::Elem>) -> usize {
        linalg::rank(&self.field, &self.restricted_partials(line))
    }
}
