//! Dense homogeneous forms.
//!
//! A [`HomForm`] stores one coefficient per monomial of its degree, in the
//! order of [`monomial::monomials`]. The number of variables is part of the
//! value: quinary forms live on `P^4`, ternary forms on planes and binary
//! forms on lines.

use crate::error::{Error, Result};
use crate::field::Field;

use super::linalg;
use super::monomial::{self, Exponent};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomForm<E> {
    nvars: usize,
    degree: usize,
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> HomForm<E> {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn monomials(&self) -> &'static [Exponent] {
        monomial::monomials(self.nvars, self.degree)
    }

    pub fn coeff(&self, exp: &Exponent) -> &E {
        &self.coeffs[monomial::index_of(self.nvars, exp)]
    }
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug> HomForm<E> {
    pub fn zero<F: Field<Elem = E>>(field: &F, nvars: usize, degree: usize) -> Self {
        Self { nvars, degree, coeffs: vec![field.zero(); monomial::count(nvars, degree)] }
    }

    pub fn from_coeffs(nvars: usize, degree: usize, coeffs: Vec<E>) -> Result<Self> {
        let expected = monomial::count(nvars, degree);
        if coeffs.len() != expected {
            return Err(Error::Dimension(format!(
                "a degree-{degree} form in {nvars} variables needs {expected} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self { nvars, degree, coeffs })
    }

    pub fn monomial<F: Field<Elem = E>>(field: &F, nvars: usize, exp: &Exponent, c: E) -> Self {
        let degree = monomial::degree_of(exp);
        let mut out = Self::zero(field, nvars, degree);
        out.coeffs[monomial::index_of(nvars, exp)] = c;
        out
    }

    /// The coordinate `z_i` as a linear form.
    pub fn variable<F: Field<Elem = E>>(field: &F, nvars: usize, i: usize) -> Self {
        let mut exp = [0u8; monomial::MAX_VARS];
        exp[i] = 1;
        Self::monomial(field, nvars, &exp, field.one())
    }

    /// Linear form `sum c_i z_i`.
    pub fn linear(coeffs: &[E]) -> Self {
        Self { nvars: coeffs.len(), degree: 1, coeffs: coeffs.to_vec() }
    }

    pub fn set_coeff(&mut self, exp: &Exponent, c: E) {
        let i = monomial::index_of(self.nvars, exp);
        self.coeffs[i] = c;
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.coeffs.iter().all(|c| field.is_zero(c))
    }

    /// Nonzero terms as `(exponent, coefficient)` pairs in table order.
    pub fn terms<'a, F: Field<Elem = E>>(&'a self, field: &'a F) -> impl Iterator<Item = (&'static Exponent, &'a E)> + 'a {
        self.monomials().iter().zip(&self.coeffs).filter(move |(_, c)| !field.is_zero(c))
    }

    fn check_same_shape(&self, other: &Self) {
        assert!(
            self.nvars == other.nvars && self.degree == other.degree,
            "form shapes differ: ({}, {}) vs ({}, {})",
            self.nvars,
            self.degree,
            other.nvars,
            other.degree
        );
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.check_same_shape(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| field.add(a, b)).collect();
        Self { nvars: self.nvars, degree: self.degree, coeffs }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.check_same_shape(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| field.sub(a, b)).collect();
        Self { nvars: self.nvars, degree: self.degree, coeffs }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        let coeffs = self.coeffs.iter().map(|a| field.mul(a, c)).collect();
        Self { nvars: self.nvars, degree: self.degree, coeffs }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "forms in different numbers of variables");
        let n = self.nvars;
        let mut out = Self::zero(field, n, self.degree + other.degree);
        let other_terms: Vec<(&Exponent, &E)> = other.terms(field).collect();
        for (ea, a) in self.terms(field) {
            for (eb, b) in &other_terms {
                let e = monomial::add_exponents(ea, eb);
                let i = monomial::index_of(n, &e);
                out.coeffs[i] = field.add(&out.coeffs[i], &field.mul(a, b));
            }
        }
        out
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, k: usize) -> Self {
        let mut acc = Self::monomial(field, self.nvars, &[0; monomial::MAX_VARS], field.one());
        for _ in 0..k {
            acc = acc.mul(field, self);
        }
        acc
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, point: &[E]) -> E {
        assert_eq!(point.len(), self.nvars, "point has the wrong number of coordinates");
        // powers[i][e] = point[i]^e
        let powers: Vec<Vec<E>> = point
            .iter()
            .map(|x| {
                let mut v = vec![field.one()];
                for _ in 0..self.degree {
                    let next = field.mul(v.last().unwrap(), x);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = field.zero();
        for (exp, c) in self.terms(field) {
            let mut t = c.clone();
            for i in 0..self.nvars {
                if exp[i] > 0 {
                    t = field.mul(&t, &powers[i][exp[i] as usize]);
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    pub fn partial<F: Field<Elem = E>>(&self, field: &F, i: usize) -> Self {
        assert!(self.degree > 0, "derivative of a constant form");
        let mut out = Self::zero(field, self.nvars, self.degree - 1);
        for (exp, c) in self.terms(field) {
            if exp[i] == 0 {
                continue;
            }
            let mut e = *exp;
            e[i] -= 1;
            let j = monomial::index_of(self.nvars, &e);
            out.coeffs[j] = field.add(&out.coeffs[j], &field.mul(c, &field.from_i64(exp[i] as i64)));
        }
        out
    }

    pub fn gradient<F: Field<Elem = E>>(&self, field: &F) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(field, i)).collect()
    }

    /// Pulls the form back along a linear map: variable `z_i` is replaced by
    /// the linear form `images[i]` in `m` new variables.
    pub fn compose_linear<F: Field<Elem = E>>(&self, field: &F, images: &[Vec<E>]) -> Self {
        assert_eq!(images.len(), self.nvars, "need one image per variable");
        let m = images[0].len();
        let lin: Vec<Self> = images.iter().map(|row| Self::linear(row)).collect();
        // powers[i][e] = images[i]^e
        let unit = Self::monomial(field, m, &[0; monomial::MAX_VARS], field.one());
        let powers: Vec<Vec<Self>> = lin
            .iter()
            .map(|l| {
                let mut v = vec![unit.clone()];
                for _ in 0..self.degree {
                    let next = v.last().unwrap().mul(field, l);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Self::zero(field, m, self.degree);
        for (exp, c) in self.terms(field) {
            let mut t = unit.scale(field, c);
            for i in 0..self.nvars {
                if exp[i] > 0 {
                    t = t.mul(field, &powers[i][exp[i] as usize]);
                }
            }
            out = out.add(field, &t);
        }
        out
    }

    /// `f(M z)`: the variable `z_i` becomes `sum_j M[i][j] z_j`.
    ///
    /// Substituting `M2` and then `M1` equals substituting `M2 * M1`.
    pub fn substitute_linear<F: Field<Elem = E>>(&self, field: &F, m: &[Vec<E>]) -> Result<Self> {
        let n = self.nvars;
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("substitution needs a {n}x{n} matrix")));
        }
        if field.is_zero(&linalg::determinant(field, m.to_vec())) {
            return Err(Error::SingularMatrix);
        }
        Ok(self.compose_linear(field, m))
    }

    /// `f(s P + t Q)` as a binary form in `(s, t)`.
    pub fn restrict_to_points<F: Field<Elem = E>>(&self, field: &F, p: &[E], q: &[E]) -> Self {
        let images: Vec<Vec<E>> = p.iter().zip(q).map(|(a, b)| vec![a.clone(), b.clone()]).collect();
        self.compose_linear(field, &images)
    }

    /// Applies a coefficient map, e.g. an embedding into an extension field.
    pub fn map_coeffs<G: Clone + PartialEq>(&self, f: impl Fn(&E) -> G) -> HomForm<G> {
        HomForm { nvars: self.nvars, degree: self.degree, coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// A form with independent uniform coefficients over a finite field, or
    /// integers in `-5..=5` over the rationals.
    pub fn random<F: Field<Elem = E>, R: rand::Rng + ?Sized>(field: &F, nvars: usize, degree: usize, rng: &mut R) -> Self {
        let n = monomial::count(nvars, degree);
        let coeffs = (0..n)
            .map(|_| match field.order() {
                Some(q) => field.element(rng.gen_range(0..q)),
                None => field.from_i64(rng.gen_range(-5..=5)),
            })
            .collect();
        Self { nvars, degree, coeffs }
    }

    /// Scales so the first nonzero coefficient is 1; `false` for zero.
    pub fn normalize<F: Field<Elem = E>>(&mut self, field: &F) -> bool {
        field.normalize(&mut self.coeffs)
    }

    pub fn normalized<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let mut out = self.clone();
        out.normalize(field);
        out
    }

    /// `self = c * other` for some nonzero scalar `c`.
    pub fn proportional<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.degree == other.degree
            && !self.is_zero(field)
            && !other.is_zero(field)
            && self.normalized(field) == other.normalized(field)
    }

    /// Polynomial division by a nonzero linear form, if exact.
    pub fn divide_by_linear<F: Field<Elem = E>>(&self, field: &F, l: &Self) -> Option<Self> {
        assert_eq!(l.degree, 1);
        if self.degree == 0 {
            return if self.is_zero(field) { Some(self.clone()) } else { None };
        }
        let n = self.nvars;
        if l.is_zero(field) {
            return None;
        }
        // Solve q * l = self as a linear system in the coefficients of q.
        let qmons = monomial::monomials(n, self.degree - 1);
        let nrows = self.coeffs.len();
        let mut cols: Vec<Vec<E>> = Vec::with_capacity(qmons.len());
        for qe in qmons {
            let mut col = vec![field.zero(); nrows];
            for (i, c) in l.coeffs.iter().enumerate() {
                if field.is_zero(c) {
                    continue;
                }
                let mut e = *qe;
                e[i] += 1;
                col[monomial::index_of(n, &e)] = c.clone();
            }
            cols.push(col);
        }
        let sol = linalg::solve_columns(field, &cols, &self.coeffs)?;
        Some(Self { nvars: n, degree: self.degree - 1, coeffs: sol })
    }

    /// Expression text like `z0^3 + 2*z1*z2^2`; `0` for the zero form.
    pub fn to_expression<F: Field<Elem = E>>(&self, field: &F, names: &[&str]) -> String {
        let mut out = String::new();
        for (exp, c) in self.terms(field) {
            let mono = monomial::display(self.nvars, exp, names);
            let text = field.format_elem(c);
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if !text.contains(',') => (true, rest.to_string()),
                _ => (false, text),
            };
            let body = if body.contains(',') { format!("[{body}]") } else { body };
            let term = if mono == "1" {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }
}
