//! Indexable enumeration of the lines of `P^n(F_q)`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::ProjLine;

/// Largest field order accepted for full line censuses by default.
pub const DEFAULT_MAX_ORDER: u64 = 13;

/// All lines of `P^n(F_q)`, each once, as reduced row-echelon spans.
///
/// Lines are grouped by pivot pair `(i, j)` in lexicographic order; within a
/// group the free entries are read as base-`q` digits (row 0 first, most
/// significant digit first).
#[derive(Clone, Debug)]
pub struct LineSpace<F: Field> {
    field: F,
    q: u64,
    n: usize,
    /// `(i, j, first index, number of free entries)`
    cells: Vec<(usize, usize, usize, usize)>,
    len: usize,
}

impl<F: Field> LineSpace<F> {
    pub fn new(field: &F, n: usize) -> Result<Self> {
        Self::with_max_order(field, n, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(field: &F, n: usize, max_order: u64) -> Result<Self> {
        let q = field.order().ok_or(Error::FiniteFieldRequired)?;
        if q > max_order {
            return Err(Error::Budget(format!("line census over F_{q} exceeds the cap q <= {max_order}")));
        }
        if n < 1 {
            return Err(Error::Dimension("lines need n >= 1".into()));
        }
        let mut cells = Vec::new();
        let mut start = 0usize;
        for i in 0..=n {
            for j in i + 1..=n {
                let free = (n - i - 1) + (n - j);
                cells.push((i, j, start, free));
                start += q.pow(free as u32) as usize;
            }
        }
        Ok(Self { field: field.clone(), q, n, cells, len: start })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn line(&self, idx: usize) -> ProjLine<F::Elem> {
        assert!(idx < self.len, "line index out of range");
        let f = &self.field;
        let cell = self.cells.partition_point(|c| c.2 <= idx) - 1;
        let (i, j, start, free) = self.cells[cell];
        let mut rest = (idx - start) as u64;
        let mut digits = vec![0u64; free];
        for d in digits.iter_mut().rev() {
            *d = rest % self.q;
            rest /= self.q;
        }
        let mut digits = digits.into_iter();
        let mut p = vec![f.zero(); self.n + 1];
        let mut r = vec![f.zero(); self.n + 1];
        p[i] = f.one();
        r[j] = f.one();
        for k in i + 1..=self.n {
            if k != j {
                p[k] = f.element(digits.next().expect("digit"));
            }
        }
        for slot in r.iter_mut().skip(j + 1) {
            *slot = f.element(digits.next().expect("digit"));
        }
        ProjLine::from_rref_unchecked(f, vec![p, r])
    }

    pub fn iter(&self) -> impl Iterator<Item = ProjLine<F::Elem>> + '_ {
        (0..self.len).map(move |i| self.line(i))
    }
}

/// All points of `P^n(F_q)` as normalized vectors (first nonzero entry 1),
/// ordered by the position of that entry and then by base-`q` digits.
#[derive(Clone, Debug)]
pub struct PointSpace<F: Field> {
    field: F,
    q: u64,
    n: usize,
    len: usize,
}

impl<F: Field> PointSpace<F> {
    pub fn new(field: &F, n: usize) -> Result<Self> {
        let q = field.order().ok_or(Error::FiniteFieldRequired)?;
        let len = (0..=n as u32).try_fold(0u64, |acc, e| q.checked_pow(e).and_then(|x| acc.checked_add(x)));
        let len = len.filter(|&l| l <= 1 << 32).ok_or_else(|| Error::Budget(format!("P^{n}(F_{q}) is too large")))?;
        Ok(Self { field: field.clone(), q, n, len: len as usize })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn point(&self, idx: usize) -> Vec<F::Elem> {
        assert!(idx < self.len, "point index out of range");
        let f = &self.field;
        let mut rest = idx as u64;
        let mut lead = 0;
        loop {
            let block = self.q.pow((self.n - lead) as u32);
            if rest < block {
                break;
            }
            rest -= block;
            lead += 1;
        }
        let mut v = vec![f.zero(); self.n + 1];
        v[lead] = f.one();
        for slot in v[lead + 1..].iter_mut().rev() {
            *slot = f.element(rest % self.q);
            rest /= self.q;
        }
        v
    }
}

/// Gaussian binomial `[n+1 choose 2]_q`: the number of lines of `P^n(F_q)`.
pub fn line_count(q: u64, n: usize) -> u64 {
    let a = q.pow(n as u32 + 1) - 1;
    let b = q.pow(n as u32) - 1;
    a * b / ((q * q - 1) * (q - 1))
}
