//! Monomial tables in up to five variables.
//!
//! Monomials of a fixed degree are ordered by their exponent tuples
//! `(e_0, ..., e_{n-1})` compared lexicographically, *descending*: for cubics
//! in five variables the table starts `z0^3, z0^2*z1, z0^2*z2, ...` and ends
//! `..., z3*z4^2, z4^3` (35 entries, listed in `tests::degree_three_table`).

use once_cell::sync::Lazy;

pub const MAX_VARS: usize = 5;
pub const MAX_DEGREE: usize = 9;

pub type Exponent = [u8; MAX_VARS];

static TABLES: Lazy<Vec<Vec<Vec<Exponent>>>> = Lazy::new(|| {
    (0..=MAX_VARS)
        .map(|n| (0..=MAX_DEGREE).map(|d| generate(n, d)).collect())
        .collect()
});

fn generate(nvars: usize, degree: usize) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = [0u8; MAX_VARS];
    fn rec(i: usize, n: usize, left: usize, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if n == 0 {
            if left == 0 {
                out.push(*cur);
            }
            return;
        }
        if i == n - 1 {
            cur[i] = left as u8;
            out.push(*cur);
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u8;
            rec(i + 1, n, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, nvars, degree, &mut cur, &mut out);
    out
}

/// Number of monomials of `degree` in `nvars` variables.
pub fn count(nvars: usize, degree: usize) -> usize {
    if nvars == 0 {
        return usize::from(degree == 0);
    }
    binomial(degree + nvars - 1, nvars - 1)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All monomials of `degree` in `nvars` variables in the crate's order.
pub fn monomials(nvars: usize, degree: usize) -> &'static [Exponent] {
    assert!(nvars <= MAX_VARS && degree <= MAX_DEGREE, "monomial table out of range");
    &TABLES[nvars][degree]
}

/// Position of `exp` in [`monomials`]`(nvars, deg(exp))`.
pub fn index_of(nvars: usize, exp: &Exponent) -> usize {
    let mut left: usize = exp[..nvars].iter().map(|&e| e as usize).sum();
    let mut idx = 0;
    for i in 0..nvars.saturating_sub(1) {
        let e = exp[i] as usize;
        let rest_vars = nvars - i - 1;
        for larger in (e + 1)..=left {
            idx += count(rest_vars, left - larger);
        }
        left -= e;
    }
    idx
}

pub fn degree_of(exp: &Exponent) -> usize {
    exp.iter().map(|&e| e as usize).sum()
}

pub fn add_exponents(a: &Exponent, b: &Exponent) -> Exponent {
    let mut out = [0u8; MAX_VARS];
    for i in 0..MAX_VARS {
        out[i] = a[i] + b[i];
    }
    out
}

/// Human-readable monomial such as `z0^2*z3`; `1` for the empty monomial.
pub fn display(nvars: usize, exp: &Exponent, names: &[&str]) -> String {
    let parts: Vec<String> = (0..nvars)
        .filter(|&i| exp[i] > 0)
        .map(|i| {
            if exp[i] == 1 {
                names[i].to_string()
            } else {
                format!("{}^{}", names[i], exp[i])
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

pub const Z_NAMES: [&str; 5] = ["z0", "z1", "z2", "z3", "z4"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_binomials() {
        assert_eq!(monomials(5, 3).len(), 35);
        assert_eq!(monomials(5, 6).len(), 210);
        assert_eq!(monomials(2, 5).len(), 6);
        assert_eq!(monomials(3, 3).len(), 10);
        for n in 1..=5 {
            for d in 0..=6 {
                assert_eq!(monomials(n, d).len(), count(n, d));
            }
        }
    }

    #[test]
    fn ranking_inverts_enumeration() {
        for n in 1..=5 {
            for d in 0..=7 {
                for (i, e) in monomials(n, d).iter().enumerate() {
                    assert_eq!(index_of(n, e), i, "n={n} d={d} e={e:?}");
                }
            }
        }
    }

    #[test]
    fn degree_three_table() {
        let names: Vec<String> = monomials(5, 3).iter().map(|e| display(5, e, &Z_NAMES)).collect();
        let expected = [
            "z0^3", "z0^2*z1", "z0^2*z2", "z0^2*z3", "z0^2*z4", "z0*z1^2", "z0*z1*z2", "z0*z1*z3",
            "z0*z1*z4", "z0*z2^2", "z0*z2*z3", "z0*z2*z4", "z0*z3^2", "z0*z3*z4", "z0*z4^2", "z1^3",
            "z1^2*z2", "z1^2*z3", "z1^2*z4", "z1*z2^2", "z1*z2*z3", "z1*z2*z4", "z1*z3^2",
            "z1*z3*z4", "z1*z4^2", "z2^3", "z2^2*z3", "z2^2*z4", "z2*z3^2", "z2*z3*z4", "z2*z4^2",
            "z3^3", "z3^2*z4", "z3*z4^2", "z4^3",
        ];
        assert_eq!(names, expected);
    }
}
