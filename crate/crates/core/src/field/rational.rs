//! The rational numbers with arbitrary-precision numerators and denominators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{upoly, Extension, Field, UniFactorization};
use crate::error::{Error, Result};

/// Trial division bound used when enumerating candidate rational roots.
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

/// Parses `a` or `a/b` with integers `a`, `b`.
pub(crate) fn parse_ratio(s: &str) -> Result<(BigInt, BigInt)> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("malformed rational `{s}`")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("malformed rational `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok((n, d))
}

/// Scales a rational row to a primitive integer row.
fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

fn modular_rank(m: &[Vec<BigInt>]) -> usize {
    const P: u64 = 2_305_843_009_213_693_951; // 2^61 - 1
    let modp = |x: &BigInt| -> u64 {
        let r = x.mod_floor(&BigInt::from(P));
        r.to_u64_digits().1.first().copied().unwrap_or(0)
    };
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % P as u128) as u64;
    let inv = |a: u64| {
        let (mut base, mut e, mut acc) = (a, P - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let mut rows: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(modp).collect()).collect();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(found) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let pi = inv(rows[rank][c]);
        let pivot: Vec<u64> = rows[rank].iter().map(|&x| mul(x, pi)).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + P - mul(f, y)) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Fraction-free Gauss-Jordan: integer row operations, each row kept
/// primitive, division by the pivots only at the end.
fn integer_rref(rows: &mut Vec<Vec<BigRational>>, order: &[usize]) -> Vec<usize> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    // rank modulo a prime never exceeds the rational rank, so full column
    // rank there means the reduced form is the identity
    let ncols = m.first().map_or(0, |r| r.len());
    if ncols > 0 && order.len() == ncols && ncols <= m.len() && modular_rank(&m) == ncols {
        let n = order.len();
        *rows = order
            .iter()
            .map(|&c| (0..n).map(|j| if j == c { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        return order.to_vec();
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == m.len() {
            break;
        }
        let Some(found) = (r..m.len()).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].bits()) else {
            continue;
        };
        m.swap(r, found);
        let pivot_row = m[r].clone();
        let p = &pivot_row[c];
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = p.gcd(&row[c]);
            let a = p / &g;
            let b = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if y.is_zero() {
                    if !x.is_zero() {
                        *x *= &a;
                    }
                } else {
                    *x = &*x * &a - &b * y;
                }
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    *rows = m
        .into_iter()
        .zip(&pivots)
        .map(|(row, &c)| {
            let p = row[c].clone();
            row.into_iter().map(|x| BigRational::new(x, p.clone())).collect()
        })
        .collect();
    pivots
}

impl Field for Rationals {
    type Elem = BigRational;

    fn row_reduce(&self, rows: &mut Vec<Vec<BigRational>>, order: &[usize]) -> Vec<usize> {
        integer_rref(rows, order)
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Result<BigRational> {
        if d.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(n.clone(), d.clone()))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn element(&self, _index: u64) -> BigRational {
        panic!("the rationals are not enumerable by index")
    }

    fn index_of(&self, _a: &BigRational) -> u64 {
        panic!("the rationals are not enumerable by index")
    }

    fn extension(&self, _degree: usize) -> Option<Extension<Self>> {
        None
    }

    /// Only linear factors are certified over the rationals (rational root
    /// test); everything else is left in `rest`.
    fn factor_univariate(&self, f: &[BigRational], _max_degree: usize) -> UniFactorization<Self> {
        let (unit, mut rest) = upoly::monic(self, f);
        assert!(!rest.is_empty(), "factoring the zero polynomial");
        let mut factors: Vec<(Vec<BigRational>, usize)> = Vec::new();
        for r in rational_root_candidates(&rest) {
            let lin = vec![-r.clone(), BigRational::one()];
            let mut m = 0;
            loop {
                if rest.len() < 2 {
                    break;
                }
                let (q, rem) = upoly::divrem(self, &rest, &lin);
                if !rem.is_empty() {
                    break;
                }
                rest = q;
                m += 1;
            }
            if m > 0 {
                factors.push((lin, m));
            }
        }
        factors.sort_by(|a, b| a.0[0].cmp(&b.0[0]));
        UniFactorization { unit, factors, rest }
    }

    fn format_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let (n, d) = parse_ratio(s)?;
        self.from_ratio(&n, &d)
    }

    fn label(&self) -> String {
        "Q".to_string()
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            primes.push((bd, e));
        }
        d += 1;
    }
    // cofactor treated as prime past the trial-division bound
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for x in &out {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(x * &pk);
                pk *= &p;
            }
        }
        out = next;
    }
    out
}

fn rational_root_candidates(f: &[BigRational]) -> Vec<BigRational> {
    let lcm = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut out = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        out.push(BigRational::zero());
    }
    let c0 = &ints[low];
    let cn = ints.last().unwrap();
    if ints.len() - low <= 1 {
        return out;
    }
    let nums = divisors(c0);
    let dens = divisors(cn);
    let mut seen = std::collections::BTreeSet::new();
    for a in &nums {
        for b in &dens {
            for sign in [1i32, -1] {
                let r = BigRational::new(a * BigInt::from(sign), b.clone());
                if seen.insert(r.clone()) {
                    let val = upoly::eval(&Rationals, f, &r);
                    if val.is_zero() {
                        out.push(r);
                    }
                }
            }
        }
    }
    out
}
