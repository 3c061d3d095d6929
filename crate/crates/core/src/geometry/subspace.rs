//! Points, lines and planes of `P^4` in canonical form.

use crate::algebra::linalg::{self, EchelonSpace};
use crate::error::{Error, Result};
use crate::field::{Extension, Field};

/// Index pairs `(i, j)`, `i < j`, in the order used for Plücker coordinates
/// and for the basis `z_i ^ z_j` of two-forms.
pub const PAIRS: [(usize, usize); 10] =
    [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

pub fn pair_index(i: usize, j: usize) -> usize {
    PAIRS.iter().position(|&p| p == (i.min(j), i.max(j))).expect("valid pair")
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub fn normalize_point<F: Field>(field: &F, p: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let mut out = p.to_vec();
    if field.normalize(&mut out) {
        Ok(out)
    } else {
        Err(Error::Dimension("the zero vector is not a projective point".into()))
    }
}

/// A line of `P^n` (usually `n = 4`) stored as the reduced row-echelon form
/// of a 2-row spanning matrix, together with its normalized Plücker
/// coordinates `p_ij = P_i Q_j - P_j Q_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjLine<E> {
    span: Vec<Vec<E>>,
    pluecker: Vec<E>,
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug> ProjLine<E> {
    /// The line spanned by the rows of `rows` (which must have rank 2).
    pub fn from_span<F: Field<Elem = E>>(field: &F, rows: &[Vec<E>]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n) || n < 2 {
            return Err(Error::Dimension("line rows must have a common length >= 2".into()));
        }
        let mut m = rows.to_vec();
        let pivots = linalg::rref(field, &mut m);
        if pivots.len() != 2 {
            return Err(Error::Dimension(format!("a line needs a rank-2 span, got rank {}", pivots.len())));
        }
        Ok(Self::from_rref_unchecked(field, m))
    }

    pub fn through<F: Field<Elem = E>>(field: &F, p: &[E], q: &[E]) -> Result<Self> {
        Self::from_span(field, &[p.to_vec(), q.to_vec()])
    }

    /// Wraps rows that are already in reduced row-echelon form.
    pub fn from_rref_unchecked<F: Field<Elem = E>>(field: &F, span: Vec<Vec<E>>) -> Self {
        let pluecker = pluecker_of(field, &span[0], &span[1]);
        Self { span, pluecker }
    }

    /// Rebuilds a line of `P^4` from ten Plücker coordinates, checking the
    /// quadratic relations.
    pub fn from_pluecker<F: Field<Elem = E>>(field: &F, p: &[E]) -> Result<Self> {
        if p.len() != 10 {
            return Err(Error::Dimension("Plücker vectors have 10 coordinates".into()));
        }
        let at = |i: usize, j: usize| -> E {
            if i == j {
                field.zero()
            } else if i < j {
                p[pair_index(i, j)].clone()
            } else {
                field.neg(&p[pair_index(j, i)])
            }
        };
        for quad in [(0, 1, 2, 3), (0, 1, 2, 4), (0, 1, 3, 4), (0, 2, 3, 4), (1, 2, 3, 4)] {
            let (i, j, k, l) = quad;
            let v = field.add(
                &field.sub(&field.mul(&at(i, j), &at(k, l)), &field.mul(&at(i, k), &at(j, l))),
                &field.mul(&at(i, l), &at(j, k)),
            );
            if !field.is_zero(&v) {
                return Err(Error::Parse("Plücker relations fail: not a line".into()));
            }
        }
        let Some(nz) = p.iter().position(|x| !field.is_zero(x)) else {
            return Err(Error::Parse("zero Plücker vector".into()));
        };
        let (i, j) = PAIRS[nz];
        let a: Vec<E> = (0..5).map(|k| at(i, k)).collect();
        let b: Vec<E> = (0..5).map(|k| at(j, k)).collect();
        Self::from_span(field, &[a, b])
    }

    pub fn ambient_dim(&self) -> usize {
        self.span[0].len() - 1
    }

    pub fn span(&self) -> &[Vec<E>] {
        &self.span
    }

    /// The two canonical spanning points `P`, `Q` (rows of the echelon form).
    pub fn points(&self) -> (&[E], &[E]) {
        (&self.span[0], &self.span[1])
    }

    pub fn pluecker(&self) -> &[E] {
        &self.pluecker
    }

    /// `s P + t Q`.
    pub fn point_at<F: Field<Elem = E>>(&self, field: &F, s: &E, t: &E) -> Vec<E> {
        self.span[0]
            .iter()
            .zip(&self.span[1])
            .map(|(p, q)| field.add(&field.mul(s, p), &field.mul(t, q)))
            .collect()
    }

    /// The linear forms vanishing on the line.
    pub fn annihilator<F: Field<Elem = E>>(&self, field: &F) -> EchelonSpace<E> {
        linalg::kernel(field, &self.span, self.span[0].len())
    }

    pub fn contains_point<F: Field<Elem = E>>(&self, field: &F, x: &[E]) -> bool {
        let mut rows = self.span.clone();
        rows.push(x.to_vec());
        linalg::rank(field, &rows) == 2
    }

    /// All `q + 1` rational points, normalized, `(0:1)` direction first.
    pub fn rational_points<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let q = field.order().expect("finite field");
        let mut out = vec![self.span[1].clone()];
        for i in 0..q {
            let t = field.element(i);
            let mut p = self.point_at(field, &field.one(), &t);
            field.normalize(&mut p);
            out.push(p);
        }
        out
    }

    pub fn map_field<G: Field>(&self, ext: &Extension<G>, base: &G) -> ProjLine<G::Elem>
    where
        G: Field<Elem = E>,
    {
        let rows: Vec<Vec<E>> = self.span.iter().map(|r| ext.embed_all(base, r)).collect();
        ProjLine::from_rref_unchecked(&ext.field, rows)
    }

    /// Whether two lines meet.
    pub fn meets<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        let rows: Vec<Vec<E>> = self.span.iter().chain(&other.span).cloned().collect();
        linalg::rank(field, &rows) <= 3
    }
}

fn pluecker_of<F: Field>(field: &F, p: &[F::Elem], q: &[F::Elem]) -> Vec<F::Elem> {
    let n = p.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(field.sub(&field.mul(&p[i], &q[j]), &field.mul(&p[j], &q[i])));
        }
    }
    field.normalize(&mut out);
    out
}

/// A plane of `P^4`: canonical 3-row span and the two linear forms cutting
/// it out (both in reduced row-echelon form).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjPlane<E> {
    span: Vec<Vec<E>>,
    dual: Vec<Vec<E>>,
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug> ProjPlane<E> {
    pub fn from_span<F: Field<Elem = E>>(field: &F, rows: &[Vec<E>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != 5) {
            return Err(Error::Dimension("plane rows must have 5 coordinates".into()));
        }
        let space = EchelonSpace::from_vectors(field, 5, rows.to_vec());
        if space.dim() != 3 {
            return Err(Error::Dimension(format!("a plane needs a rank-3 span, got rank {}", space.dim())));
        }
        let dual = space.annihilator(field);
        Ok(Self { span: space.rows().to_vec(), dual: dual.rows().to_vec() })
    }

    /// The plane `{h_1 = h_2 = 0}`.
    pub fn from_forms<F: Field<Elem = E>>(field: &F, forms: &[Vec<E>]) -> Result<Self> {
        if forms.iter().any(|r| r.len() != 5) {
            return Err(Error::Dimension("linear forms must have 5 coefficients".into()));
        }
        let dual = EchelonSpace::from_vectors(field, 5, forms.to_vec());
        if dual.dim() != 2 {
            return Err(Error::Dimension(format!("a plane needs two independent forms, got {}", dual.dim())));
        }
        let span = dual.annihilator(field);
        Ok(Self { span: span.rows().to_vec(), dual: dual.rows().to_vec() })
    }

    pub fn span(&self) -> &[Vec<E>] {
        &self.span
    }

    pub fn dual(&self) -> &[Vec<E>] {
        &self.dual
    }

    pub fn contains_point<F: Field<Elem = E>>(&self, field: &F, x: &[E]) -> bool {
        self.dual.iter().all(|h| field.is_zero(&field.dot(h, x)))
    }

    pub fn contains_line<F: Field<Elem = E>>(&self, field: &F, l: &ProjLine<E>) -> bool {
        l.span().iter().all(|p| self.contains_point(field, p))
    }

    pub fn meets_line<F: Field<Elem = E>>(&self, field: &F, l: &ProjLine<E>) -> bool {
        let m: Vec<Vec<E>> = self
            .dual
            .iter()
            .map(|h| l.span().iter().map(|p| field.dot(h, p)).collect())
            .collect();
        linalg::rank(field, &m) < 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf;

    #[test]
    fn pluecker_round_trip_small_fields() {
        for p in [2u32, 3] {
            let f = Gf::prime(p).unwrap();
            let lines = crate::census::LineSpace::new(&f, 4).unwrap();
            for idx in 0..lines.len() {
                let l = lines.line(idx);
                assert_eq!(ProjLine::from_pluecker(&f, l.pluecker()).unwrap(), l);
            }
        }
    }

    #[test]
    fn canonical_forms() {
        let f = Gf::prime(7).unwrap();
        let l = ProjLine::through(&f, &[1, 6, 0, 0, 0], &[0, 0, 1, 6, 0]).unwrap();
        let m = ProjLine::through(&f, &[1, 6, 1, 6, 0], &[2, 5, 0, 0, 0]).unwrap();
        assert_eq!(l, m);
        assert_eq!(l.annihilator(&f).rows(), &[vec![1, 1, 0, 0, 0], vec![0, 0, 1, 1, 0], vec![0, 0, 0, 0, 1]]);
        let pi = ProjPlane::from_forms(&f, &[vec![1, 1, 0, 0, 0], vec![0, 0, 1, 1, 0]]).unwrap();
        assert!(pi.contains_line(&f, &l));
        assert!(ProjLine::through(&f, &[1, 0, 0, 0, 0], &[2, 0, 0, 0, 0]).is_err());
        assert!(ProjLine::from_pluecker(&f, &[1, 0, 0, 0, 0, 0, 0, 1, 0, 0]).is_err());
    }
}
