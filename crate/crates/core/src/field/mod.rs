//! Exact scalar fields.
//!
//! Two concrete fields implement [`Field`]: [`Rationals`] (arbitrary precision)
//! and [`Gf`] (finite fields `F_{p^k}` with a deterministic modulus). Every
//! algebraic object in the crate is generic over the field and carries no
//! floating point.

mod gf;
mod rational;
pub mod upoly;

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

pub use gf::Gf;
pub use rational::Rationals;

use crate::error::{Error, Result};

/// An exact field. Field objects are cheap to clone and carry whatever
/// context (modulus, tables) the arithmetic needs.
pub trait Field: Clone + Send + Sync + fmt::Debug + Sized + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// `n/d` mapped into the field. Fails when `d` vanishes in the field.
    fn from_ratio(&self, n: &num_bigint::BigInt, d: &num_bigint::BigInt) -> Result<Self::Elem>;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    /// Element with the given index, `0 <= index < order`. Finite fields only.
    fn element(&self, index: u64) -> Self::Elem;
    /// Inverse of [`Field::element`]. Finite fields only.
    fn index_of(&self, a: &Self::Elem) -> u64;

    /// The degree-`degree` extension together with the embedding of `self`,
    /// or `None` when the field has no constructible extensions (rationals).
    fn extension(&self, degree: usize) -> Option<Extension<Self>>;

    /// Splits off every monic irreducible factor of degree `<= max_degree`
    /// that the field can certify (the rationals only certify linear ones).
    fn factor_univariate(&self, f: &[Self::Elem], max_degree: usize) -> UniFactorization<Self>;

    /// Scalar in coefficient-file syntax.
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    /// Short human label, e.g. `Q`, `F_7`, `F_7^2`.
    fn label(&self) -> String;

    /// Reduced row-echelon form, pivots searched in `order`. See
    /// [`crate::algebra::linalg::rref_with_order`].
    fn row_reduce(&self, rows: &mut Vec<Vec<Self::Elem>>, order: &[usize]) -> Vec<usize> {
        crate::algebra::linalg::gauss_jordan(self, rows, order)
    }

    fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// `sum a_i b_i`.
    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        let mut acc = self.zero();
        for (x, y) in a.iter().zip(b) {
            acc = self.add(&acc, &self.mul(x, y));
        }
        acc
    }

    /// Scales `v` so that its first nonzero entry is 1. Returns `false` for
    /// the zero vector.
    fn normalize(&self, v: &mut [Self::Elem]) -> bool {
        let Some(lead) = v.iter().find(|x| !self.is_zero(x)).cloned() else {
            return false;
        };
        let inv = self.inv(&lead).expect("nonzero");
        for x in v.iter_mut() {
            *x = self.mul(x, &inv);
        }
        true
    }
}

/// Result of [`Field::factor_univariate`]:
/// `f = unit * prod(factor^mult) * rest`, factors monic irreducible and
/// sorted by (degree, coefficients), `rest` monic.
#[derive(Clone, Debug)]
pub struct UniFactorization<F: Field> {
    pub unit: F::Elem,
    pub factors: Vec<(Vec<F::Elem>, usize)>,
    pub rest: Vec<F::Elem>,
}

/// A finite extension `K ⊃ F` with the embedding of `F`.
#[derive(Clone, Debug)]
pub struct Extension<F: Field> {
    pub field: F,
    pub degree: usize,
    /// Image of every base element by index; `None` when the embedding keeps
    /// indices unchanged (prime base fields).
    images: Option<Arc<Vec<F::Elem>>>,
}

impl<F: Field> Extension<F> {
    pub(crate) fn new(field: F, degree: usize, images: Option<Arc<Vec<F::Elem>>>) -> Self {
        Self { field, degree, images }
    }

    pub fn embed(&self, base: &F, a: &F::Elem) -> F::Elem {
        match &self.images {
            None => self.field.element(base.index_of(a)),
            Some(table) => table[base.index_of(a) as usize].clone(),
        }
    }

    pub fn embed_all(&self, base: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        v.iter().map(|a| self.embed(base, a)).collect()
    }
}

/// Field selection as written on the command line: `0` for the rationals,
/// `p` or `p^k` for a finite field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Finite { p: u32, k: u32 },
}

impl FieldSpec {
    /// Parses `0`, `p`, `p^k`. Characteristics 2 and 3 are rejected unless
    /// `allow_small_char` is set.
    pub fn parse(text: &str, allow_small_char: bool) -> Result<Self> {
        let text = text.trim();
        let (base, exp) = match text.split_once('^') {
            Some((b, e)) => (b.trim(), Some(e.trim())),
            None => (text, None),
        };
        let p: u64 = base
            .parse()
            .map_err(|_| Error::Usage(format!("bad field spec `{text}`")))?;
        let k: u32 = match exp {
            Some(e) => e
                .parse()
                .map_err(|_| Error::Usage(format!("bad extension degree in `{text}`")))?,
            None => 1,
        };
        if p == 0 {
            if exp.is_some() {
                return Err(Error::Usage("the rationals have no `^k` form".into()));
            }
            return Ok(FieldSpec::Rational);
        }
        if k == 0 {
            return Err(Error::Usage("extension degree must be >= 1".into()));
        }
        let p32 = u32::try_from(p).map_err(|_| Error::Usage(format!("prime {p} too large")))?;
        if !gf::is_prime(p32) {
            return Err(Error::Usage(format!("{p} is not prime")));
        }
        if (p == 2 || p == 3) && !allow_small_char {
            return Err(Error::Characteristic(p));
        }
        Ok(FieldSpec::Finite { p: p32, k })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Finite { p, .. } => *p as u64,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "0"),
            FieldSpec::Finite { p, k: 1 } => write!(f, "{p}"),
            FieldSpec::Finite { p, k } => write!(f, "{p}^{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_spec_parsing() {
        assert_eq!(FieldSpec::parse("0", false).unwrap(), FieldSpec::Rational);
        assert_eq!(FieldSpec::parse("7", false).unwrap(), FieldSpec::Finite { p: 7, k: 1 });
        assert_eq!(FieldSpec::parse("5^3", false).unwrap(), FieldSpec::Finite { p: 5, k: 3 });
        assert!(matches!(FieldSpec::parse("3", false), Err(Error::Characteristic(3))));
        assert_eq!(FieldSpec::parse("3", true).unwrap(), FieldSpec::Finite { p: 3, k: 1 });
        assert!(FieldSpec::parse("9", false).is_err());
        assert!(FieldSpec::parse("x", false).is_err());
        assert_eq!(FieldSpec::parse("11^2", false).unwrap().to_string(), "11^2");
    }
}
