//! Dense univariate polynomials over a [`Field`], coefficients in ascending
//! order. Used for root finding, resultants and extension-field moduli.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Field, UniFactorization};

/// Drops trailing zero coefficients.
pub fn trim<F: Field>(field: &F, v: &mut Vec<F::Elem>) {
    while v.last().is_some_and(|c| field.is_zero(c)) {
        v.pop();
    }
}

pub fn trimmed<F: Field>(field: &F, v: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = v.to_vec();
    trim(field, &mut out);
    out
}

/// Degree of a trimmed polynomial, `None` for zero.
pub fn degree<E>(v: &[E]) -> Option<usize> {
    v.len().checked_sub(1)
}

pub fn add<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let zero = field.zero();
    let mut out: Vec<F::Elem> = (0..n)
        .map(|i| field.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(field, &mut out);
    out
}

pub fn sub<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let zero = field.zero();
    let mut out: Vec<F::Elem> = (0..n)
        .map(|i| field.sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(field, &mut out);
    out
}

pub fn mul<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    trim(field, &mut out);
    out
}

pub fn scale<F: Field>(field: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = a.iter().map(|x| field.mul(x, c)).collect();
    trim(field, &mut out);
    out
}

/// Makes `a` monic, returning its former leading coefficient.
pub fn monic<F: Field>(field: &F, a: &[F::Elem]) -> (F::Elem, Vec<F::Elem>) {
    let a = trimmed(field, a);
    match a.last() {
        None => (field.zero(), a),
        Some(lc) => {
            let inv = field.inv(lc).expect("nonzero leading coefficient");
            let lc = lc.clone();
            (lc, scale(field, &a, &inv))
        }
    }
}

/// Euclidean division, `b != 0`.
pub fn divrem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let b = trimmed(field, b);
    let db = degree(&b).expect("division by zero polynomial");
    let mut r = trimmed(field, a);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv_lc = field.inv(&b[db]).expect("nonzero");
    let mut q = vec![field.zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = field.mul(&r[dr], &inv_lc);
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = field.sub(&r[shift + j], &field.mul(&c, bj));
        }
        q[shift] = c;
        trim(field, &mut r);
    }
    trim(field, &mut q);
    (q, r)
}

pub fn rem<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(field, a, b).1
}

/// Monic gcd (zero when both inputs are zero).
pub fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = trimmed(field, a);
    let mut y = trimmed(field, b);
    while !y.is_empty() {
        let r = rem(field, &x, &y);
        x = y;
        y = r;
    }
    monic(field, &x).1
}

pub fn eval<F: Field>(field: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = field.zero();
    for c in a.iter().rev() {
        acc = field.add(&field.mul(&acc, x), c);
    }
    acc
}

pub fn derivative<F: Field>(field: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    let mut out: Vec<F::Elem> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| field.mul(c, &field.from_i64(i as i64)))
        .collect();
    trim(field, &mut out);
    out
}

pub fn mulmod<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    rem(field, &mul(field, a, b), m)
}

pub fn powmod_u64<F: Field>(field: &F, base: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = rem(field, &[field.one()], m);
    let mut b = rem(field, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(field, &acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(field, &b, &b, m);
        }
    }
    acc
}

pub fn powmod_big<F: Field>(field: &F, base: &[F::Elem], e: &BigUint, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = rem(field, &[field.one()], m);
    let b = rem(field, base, m);
    for i in (0..e.bits()).rev() {
        acc = mulmod(field, &acc, &acc, m);
        if e.bit(i) {
            acc = mulmod(field, &acc, &b, m);
        }
    }
    acc
}

/// Resultant of two polynomials with *formal* degrees `da`, `db`
/// (coefficient slices may be shorter), via the Sylvester determinant.
pub fn resultant<F: Field>(field: &F, a: &[F::Elem], da: usize, b: &[F::Elem], db: usize) -> F::Elem {
    let n = da + db;
    if n == 0 {
        return field.one();
    }
    let zero = field.zero();
    let coef = |p: &[F::Elem], i: usize| p.get(i).cloned().unwrap_or_else(|| zero.clone());
    let mut rows: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
    for s in 0..db {
        let mut row = vec![field.zero(); n];
        for i in 0..=da {
            row[s + i] = coef(a, da - i);
        }
        rows.push(row);
    }
    for s in 0..da {
        let mut row = vec![field.zero(); n];
        for i in 0..=db {
            row[s + i] = coef(b, db - i);
        }
        rows.push(row);
    }
    crate::algebra::linalg::determinant(field, rows)
}

/// Roots in the field itself, with multiplicities, via
/// [`Field::factor_univariate`].
pub fn roots<F: Field>(field: &F, f: &[F::Elem]) -> Vec<(F::Elem, usize)> {
    let fact = field.factor_univariate(f, 1);
    fact.factors
        .into_iter()
        .filter(|(g, _)| g.len() == 2)
        .map(|(g, m)| (field.neg(&g[0]), m))
        .collect()
}

/// Factorization over a finite field: distinct-degree splitting up to
/// `max_degree`, then equal-degree splitting (Cantor–Zassenhaus, with the
/// trace map in characteristic 2). Deterministic: the splitting polynomials
/// come from a fixed-seed generator.
pub(crate) fn finite_factor<F: Field>(field: &F, f: &[F::Elem], max_degree: usize) -> UniFactorization<F> {
    let q = field.order().expect("finite field");
    let (unit, g) = monic(field, f);
    assert!(!g.is_empty(), "factoring the zero polynomial");
    let deg = g.len() - 1;
    let x = vec![field.zero(), field.one()];
    let mut distinct: Vec<Vec<F::Elem>> = Vec::new();
    let mut found_product = vec![field.one()];
    let mut h = rem(field, &x, &g);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f1e1d);
    for d in 1..=max_degree.min(deg) {
        h = powmod_u64(field, &h, q, &g);
        let gd = gcd(field, &g, &sub(field, &h, &x));
        let common = gcd(field, &gd, &found_product);
        let (exact, r) = divrem(field, &gd, &common);
        debug_assert!(r.is_empty());
        if exact.len() > 1 {
            let mut pieces = Vec::new();
            equal_degree_split(field, &exact, d, q, &mut rng, &mut pieces);
            found_product = mul(field, &found_product, &exact);
            distinct.extend(pieces);
        }
    }
    let mut rest = g;
    let mut factors = Vec::new();
    for p in distinct {
        let mut m = 0;
        loop {
            let (quo, r) = divrem(field, &rest, &p);
            if !r.is_empty() {
                break;
            }
            rest = quo;
            m += 1;
        }
        debug_assert!(m > 0);
        factors.push((p, m));
    }
    sort_factors(field, &mut factors);
    UniFactorization { unit, factors, rest }
}

pub(crate) fn sort_factors<F: Field>(field: &F, factors: &mut [(Vec<F::Elem>, usize)]) {
    if field.is_finite() {
        factors.sort_by_key(|(p, _)| {
            let mut key: Vec<u64> = vec![p.len() as u64];
            key.extend(p.iter().rev().map(|c| field.index_of(c)));
            key
        });
    } else {
        factors.sort_by_key(|(p, _)| (p.len(), field.format_elem(&p[0])));
    }
}

fn equal_degree_split<F: Field>(
    field: &F,
    f: &[F::Elem],
    d: usize,
    q: u64,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Vec<F::Elem>>,
) {
    let n = f.len() - 1;
    if n == d {
        out.push(f.to_vec());
        return;
    }
    let qd = BigUint::from(q).pow(d as u32);
    let odd = q % 2 == 1;
    loop {
        let a: Vec<F::Elem> = trimmed(
            field,
            &(0..n).map(|_| field.element(rng.gen_range(0..q))).collect::<Vec<_>>(),
        );
        if a.len() < 2 {
            continue;
        }
        let b = if odd {
            let e: BigUint = (&qd - 1u32) / 2u32;
            sub(field, &powmod_big(field, &a, &e, f), &[field.one()])
        } else {
            // absolute trace down to F_2: sum a^(2^i), i < log2(q^d)
            let bits = (63 - q.leading_zeros() as u64) * d as u64;
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..bits {
                t = mulmod(field, &t, &t, f);
                acc = add(field, &acc, &t);
            }
            acc
        };
        let g = gcd(field, f, &b);
        if g.len() > 1 && g.len() < f.len() {
            let (h, _) = divrem(field, f, &g);
            equal_degree_split(field, &g, d, q, rng, out);
            equal_degree_split(field, &monic(field, &h).1, d, q, rng, out);
            return;
        }
    }
}
