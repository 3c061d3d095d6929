//! Finite fields `F_{p^k}`.
//!
//! Elements are `u32` indices: the polynomial `c_0 + c_1 x + ... + c_{k-1}
//! x^{k-1}` (coefficients in `F_p`) has index `c_0 + c_1 p + ... `. The
//! modulus is the smallest monic irreducible of degree `k` when monic
//! polynomials `x^k + c_{k-1} x^{k-1} + ... + c_0` are ordered
//! lexicographically by `(c_{k-1}, ..., c_0)`.
//!
//! Prime fields use direct modular arithmetic. Extension fields up to
//! [`TABLE_LIMIT`] elements use log/antilog/Zech tables; larger ones fall back
//! to polynomial arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use once_cell::sync::Lazy;

use super::{upoly, Extension, Field, UniFactorization};
use crate::error::{Error, Result};

pub const TABLE_LIMIT: u64 = 1 << 21;

const NO_LOG: u32 = u32::MAX;

#[derive(Clone)]
pub struct Gf(Arc<Inner>);

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    log_minus_one: u32,
}

static CACHE: Lazy<Mutex<HashMap<(u32, u32), Gf>>> = Lazy::new(|| Mutex::new(HashMap::new()));

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Gf {
    /// `F_{p^k}`; instances are cached per `(p, k)`.
    pub fn new(p: u32, k: u32) -> Result<Gf> {
        if !is_prime(p) {
            return Err(Error::Usage(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Usage("extension degree must be >= 1".into()));
        }
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| Error::Budget(format!("field of order {p}^{k} does not fit in 32 bits")))?;
        if let Some(f) = CACHE.lock().unwrap().get(&(p, k)) {
            return Ok(f.clone());
        }
        let modulus = if k == 1 { vec![0, 1] } else { smallest_irreducible(p, k) };
        let mut inner = Inner { p, k, q: q as u32, modulus, tables: None };
        if k > 1 && q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        let gf = Gf(Arc::new(inner));
        CACHE.lock().unwrap().insert((p, k), gf.clone());
        Ok(gf)
    }

    pub fn prime(p: u32) -> Result<Gf> {
        Gf::new(p, 1)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Ascending coefficients of the defining modulus over `F_p`.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Coordinates over the prime field.
    pub fn digits(&self, a: u32) -> Vec<u32> {
        digits(&self.0, a)
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        from_digits(self.0.p, d)
    }
}

fn digits(inner: &Inner, mut a: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(inner.k as usize);
    for _ in 0..inner.k {
        out.push(a % inner.p);
        a /= inner.p;
    }
    out
}

fn from_digits(p: u32, d: &[u32]) -> u32 {
    d.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64) as u32
}

fn slow_mul(inner: &Inner, a: u32, b: u32) -> u32 {
    let p = inner.p as u64;
    let k = inner.k as usize;
    let da = digits(inner, a);
    let db = digits(inner, b);
    let mut prod = vec![0u64; 2 * k - 1];
    for i in 0..k {
        if da[i] == 0 {
            continue;
        }
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
        }
    }
    for top in (k..2 * k - 1).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for i in 0..k {
            let m = inner.modulus[i] as u64;
            prod[top - k + i] = (prod[top - k + i] + (p - c) * m) % p;
        }
    }
    let d: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
    from_digits(inner.p, &d)
}

fn slow_add(inner: &Inner, a: u32, b: u32) -> u32 {
    let da = digits(inner, a);
    let db = digits(inner, b);
    let d: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % inner.p).collect();
    from_digits(inner.p, &d)
}

fn slow_neg(inner: &Inner, a: u32) -> u32 {
    let d: Vec<u32> = digits(inner, a).iter().map(|&x| (inner.p - x) % inner.p).collect();
    from_digits(inner.p, &d)
}

fn slow_pow(inner: &Inner, a: u32, mut e: u64) -> u32 {
    let mut acc = 1u32;
    let mut b = a;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(inner, acc, b);
        }
        b = slow_mul(inner, b, b);
        e >>= 1;
    }
    acc
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q as u64;
    let order = q - 1;
    let factors = prime_factors(order);
    let g = (2..inner.q)
        .find(|&g| factors.iter().all(|&r| slow_pow(inner, g, order / r) != 1))
        .expect("multiplicative group is cyclic");
    let n = order as usize;
    let mut exp = vec![0u32; 2 * n];
    let mut log = vec![NO_LOG; q as usize];
    let mut x = 1u32;
    for i in 0..n {
        exp[i] = x;
        exp[i + n] = x;
        log[x as usize] = i as u32;
        x = slow_mul(inner, x, g);
    }
    let p = inner.p;
    let zech = (0..n)
        .map(|i| {
            let y = exp[i];
            let y1 = y - y % p + (y % p + 1) % p;
            log[y1 as usize]
        })
        .collect();
    let log_minus_one = log[(p - 1) as usize];
    Tables { exp, log, zech, log_minus_one }
}

// Prime-field polynomial helpers for the irreducibility test.
fn pp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let k = m.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for i in 0..=k {
            prod[top - k + i] = (prod[top - k + i] + (p - c) * m[i]) % p;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

fn pp_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let k = m.len() - 1;
    let mut acc = vec![0u64; k];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = pp_mulmod(&acc, &b, m, p);
        }
        b = pp_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn pp_gcd_is_one(a: &[u64], b: &[u64], p: u64) -> bool {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    let inv = |x: u64| -> u64 {
        let mut r = 1u64;
        let mut b = x % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        // x mod y
        let dy = y.len() - 1;
        let il = inv(y[dy]);
        while x.len() > dy {
            let dx = x.len() - 1;
            let c = x[dx] * il % p;
            for j in 0..=dy {
                x[dx - dy + j] = (x[dx - dy + j] + (p - c) * y[j]) % p;
            }
            trim(&mut x);
        }
        std::mem::swap(&mut x, &mut y);
    }
    x.len() == 1
}

/// Rabin's test for a monic polynomial of degree `k` over `F_p`.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    if k == 1 {
        return true;
    }
    let mut x = vec![0u64; k];
    x[1] = 1;
    // x^{p^i} mod m for i = 1..=k
    let mut pows = Vec::with_capacity(k);
    let mut cur = x.clone();
    for _ in 0..k {
        cur = pp_powmod(&cur, p, m, p);
        pows.push(cur.clone());
    }
    if pows[k - 1] != x {
        return false;
    }
    for r in prime_factors(k as u64) {
        let i = k / r as usize;
        let mut h = pows[i - 1].clone();
        h[1] = (h[1] + p - 1) % p;
        if !pp_gcd_is_one(m, &h, p) {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let p64 = p as u64;
    let count = p64.pow(k);
    for n in 0..count {
        let mut coeffs: Vec<u64> = Vec::with_capacity(k as usize + 1);
        let mut t = n;
        for _ in 0..k {
            coeffs.push(t % p64);
            t /= p64;
        }
        if coeffs[0] == 0 {
            continue;
        }
        coeffs.push(1);
        if is_irreducible(&coeffs, p64) {
            return coeffs.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}

impl Eq for Gf {}

impl Field for Gf {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }

    #[inline]
    fn one(&self) -> u32 {
        1
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let inner = &*self.0;
        if inner.k == 1 {
            let s = *a + *b;
            return if s >= inner.p { s - inner.p } else { s };
        }
        match &inner.tables {
            Some(t) => {
                if *a == 0 {
                    return *b;
                }
                if *b == 0 {
                    return *a;
                }
                let n = inner.q - 1;
                let la = t.log[*a as usize];
                let lb = t.log[*b as usize];
                let d = if lb >= la { lb - la } else { lb + n - la };
                let z = t.zech[d as usize];
                if z == NO_LOG {
                    0
                } else {
                    t.exp[(la + z) as usize]
                }
            }
            None => slow_add(inner, *a, *b),
        }
    }

    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let inner = &*self.0;
        if inner.k == 1 {
            return if *a >= *b { *a - *b } else { *a + inner.p - *b };
        }
        self.add(a, &self.neg(b))
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        let inner = &*self.0;
        if *a == 0 {
            return 0;
        }
        if inner.k == 1 {
            return inner.p - *a;
        }
        match &inner.tables {
            Some(t) => {
                let l = t.log[*a as usize] + t.log_minus_one;
                t.exp[l as usize]
            }
            None => slow_neg(inner, *a),
        }
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        let inner = &*self.0;
        if inner.k == 1 {
            return ((*a as u64 * *b as u64) % inner.p as u64) as u32;
        }
        if *a == 0 || *b == 0 {
            return 0;
        }
        match &inner.tables {
            Some(t) => t.exp[(t.log[*a as usize] + t.log[*b as usize]) as usize],
            None => slow_mul(inner, *a, *b),
        }
    }

    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let inner = &*self.0;
        if inner.k == 1 {
            let r = BigInt::from(*a).extended_gcd(&BigInt::from(inner.p));
            let x = r.x.mod_floor(&BigInt::from(inner.p));
            return Some(x.to_u32().unwrap());
        }
        match &inner.tables {
            Some(t) => {
                let n = inner.q - 1;
                let l = t.log[*a as usize];
                Some(t.exp[((n - l) % n) as usize])
            }
            None => Some(slow_pow(inner, *a, inner.q as u64 - 2)),
        }
    }

    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Result<u32> {
        let p = BigInt::from(self.0.p);
        let dn = d.mod_floor(&p).to_u32().unwrap();
        if dn == 0 {
            return Err(Error::Parse(format!(
                "denominator {d} vanishes in characteristic {}",
                self.0.p
            )));
        }
        let nn = n.mod_floor(&p).to_u32().unwrap();
        Ok(self.mul(&nn, &self.inv(&dn).unwrap()))
    }

    fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    fn order(&self) -> Option<u64> {
        Some(self.0.q as u64)
    }

    #[inline]
    fn element(&self, index: u64) -> u32 {
        debug_assert!(index < self.0.q as u64);
        index as u32
    }

    #[inline]
    fn index_of(&self, a: &u32) -> u64 {
        *a as u64
    }

    fn extension(&self, degree: usize) -> Option<Extension<Self>> {
        let big = Gf::new(self.0.p, self.0.k * degree as u32).ok()?;
        if self.0.k == 1 || degree == 1 {
            return Some(Extension::new(big, degree, None));
        }
        // image of the generator: smallest-index root of our modulus in `big`
        let m: Vec<u32> = self.0.modulus.clone();
        let theta = upoly::roots(&big, &m)
            .into_iter()
            .map(|(r, _)| r)
            .min()
            .expect("the modulus splits in the extension");
        let mut theta_pows = vec![1u32];
        for _ in 1..self.0.k {
            let last = *theta_pows.last().unwrap();
            theta_pows.push(big.mul(&last, &theta));
        }
        let images: Vec<u32> = (0..self.0.q)
            .map(|a| {
                let d = self.digits(a);
                d.iter()
                    .zip(&theta_pows)
                    .fold(0u32, |acc, (&c, t)| big.add(&acc, &big.mul(&c, t)))
            })
            .collect();
        Some(Extension::new(big, degree, Some(Arc::new(images))))
    }

    fn factor_univariate(&self, f: &[u32], max_degree: usize) -> UniFactorization<Self> {
        upoly::finite_factor(self, f, max_degree)
    }

    fn format_elem(&self, a: &u32) -> String {
        if self.0.k == 1 {
            a.to_string()
        } else {
            self.digits(*a).iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    fn parse_elem(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        if s.contains(',') {
            let parts: Vec<&str> = s.split(',').collect();
            if parts.len() != self.0.k as usize {
                return Err(Error::Parse(format!(
                    "expected {} coordinates for an element of {}, got `{s}`",
                    self.0.k,
                    self.label()
                )));
            }
            let mut d = Vec::with_capacity(parts.len());
            for part in parts {
                let v: i64 = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coordinate `{part}`")))?;
                d.push(v.rem_euclid(self.0.p as i64) as u32);
            }
            return Ok(self.from_digits(&d));
        }
        let (n, d) = super::rational::parse_ratio(s)?;
        self.from_ratio(&n, &d)
    }

    fn label(&self) -> String {
        if self.0.k == 1 {
            format!("F_{}", self.0.p)
        } else {
            format!("F_{}^{}", self.0.p, self.0.k)
        }
    }
}
