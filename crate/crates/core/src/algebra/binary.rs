//! Binary forms (forms in `s, t`) and their roots on `P^1`.
//!
//! A binary form of degree `d` is a [`HomForm`] in two variables; its
//! coefficient `i` belongs to `s^(d-i) t^i`, so the coefficient vector is also
//! the ascending coefficient list of the dehomogenization `b(1, u)`.

use crate::error::{Error, Result};
use crate::field::{upoly, Extension, Field};

use super::form::HomForm;

/// A rational point `(s : t)` of `P^1` with its multiplicity. Points are
/// normalized to `(1 : r)` or `(0 : 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootPoint<E> {
    pub point: [E; 2],
    pub multiplicity: usize,
}

/// An irreducible factor of degree `> 1`: a closed point whose residue field
/// is the degree-`degree` extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedPoint<E> {
    pub degree: usize,
    pub factor: HomForm<E>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryRoots<E> {
    pub rational: Vec<RootPoint<E>>,
    pub closed: Vec<ClosedPoint<E>>,
    /// What is left after removing every found factor (a constant when
    /// everything was resolved). Includes the leading scalar.
    pub unresolved: HomForm<E>,
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug> BinaryRoots<E> {
    pub fn found_degree(&self) -> usize {
        self.rational.iter().map(|r| r.multiplicity).sum::<usize>()
            + self.closed.iter().map(|c| c.degree * c.multiplicity).sum::<usize>()
    }

    pub fn is_complete(&self) -> bool {
        self.unresolved.degree() == 0
    }

    pub fn has_multiple_root(&self) -> bool {
        self.rational.iter().any(|r| r.multiplicity > 1) || self.closed.iter().any(|c| c.multiplicity > 1)
    }

    /// Multiplies everything back together.
    pub fn expand<F: Field<Elem = E>>(&self, field: &F) -> HomForm<E> {
        let mut acc = self.unresolved.clone();
        for r in &self.rational {
            let lin = HomForm::linear(&[field.neg(&r.point[1]), r.point[0].clone()]);
            acc = acc.mul(field, &lin.pow(field, r.multiplicity));
        }
        for c in &self.closed {
            acc = acc.mul(field, &c.factor.pow(field, c.multiplicity));
        }
        acc
    }
}

/// Roots of a nonzero binary form: rational points with multiplicities and,
/// over finite fields, closed points of degree up to `tower_bound`.
///
/// Over finite fields the search uses distinct-degree factorization (gcds
/// with `u^(q^j) - u`) followed by equal-degree splitting; over the rationals
/// only rational roots are found.
pub fn binary_roots<F: Field>(field: &F, b: &HomForm<F::Elem>, tower_bound: usize) -> Result<BinaryRoots<F::Elem>> {
    assert_eq!(b.nvars(), 2, "binary_roots needs a binary form");
    if b.is_zero(field) {
        return Err(Error::ZeroForm);
    }
    let d = b.degree();
    let f = upoly::trimmed(field, b.coeffs());
    let finite_degree = f.len() - 1;
    let mut rational = Vec::new();
    if finite_degree < d {
        rational.push(RootPoint { point: [field.zero(), field.one()], multiplicity: d - finite_degree });
    }
    let mut closed = Vec::new();
    let (unit, rest) = if finite_degree == 0 {
        (f[0].clone(), vec![field.one()])
    } else {
        let fact = field.factor_univariate(&f, tower_bound.max(1));
        for (g, m) in fact.factors {
            if g.len() == 2 {
                rational.push(RootPoint { point: [field.one(), field.neg(&g[0])], multiplicity: m });
            } else {
                let deg = g.len() - 1;
                let factor = HomForm::from_coeffs(2, deg, g).expect("binary form shape");
                closed.push(ClosedPoint { degree: deg, factor, multiplicity: m });
            }
        }
        (fact.unit, fact.rest)
    };
    if field.is_finite() {
        rational.sort_by_key(|r| (!field.is_zero(&r.point[0]), field.index_of(&r.point[1])));
    }
    let rest_deg = rest.len() - 1;
    let unresolved = HomForm::from_coeffs(2, rest_deg, upoly::scale(field, &rest, &unit)).expect("shape");
    Ok(BinaryRoots { rational, closed, unresolved })
}

/// All roots of `b` with coordinates in the degree-`k` extension, which is
/// returned alongside. `None` over the rationals.
#[allow(clippy::type_complexity)]
pub fn roots_in_extension<F: Field>(
    field: &F,
    b: &HomForm<F::Elem>,
    k: usize,
) -> Result<Option<(Extension<F>, Vec<RootPoint<F::Elem>>)>> {
    let Some(ext) = field.extension(k) else {
        return Ok(None);
    };
    let lifted = b.map_coeffs(|c| ext.embed(field, c));
    let roots = binary_roots(&ext.field, &lifted, 1)?;
    Ok(Some((ext, roots.rational)))
}
