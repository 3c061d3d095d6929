//! Text formats: polynomial expressions, coefficient files, points, lines
//! and planes, and JSON renderings of the reports.
//!
//! Expressions follow
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := coeff? ('*'? var ('^' int)?)*
//! coeff  := int | int '/' int | '[' int (',' int)* ']'
//! var    := z0 | z1 | z2 | z3 | z4
//! ```
//!
//! with whitespace ignored. The bracket form gives an element of `F_(p^k)`
//! by its coordinates in the power basis of the field's modulus.

use serde_json::{json, Value};

use crate::adjoint::{AdjointReport, DrReport, PrimitiveFormData};
use crate::algebra::binary::BinaryRoots;
use crate::algebra::monomial::{self, Exponent, Z_NAMES};
use crate::algebra::HomForm;
use crate::census::{DphiReport, NormalizedCubic, Reconstruction};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{EckardtData, HessianOnLine, LineReport, PlaneSection, PointLines, ProjLine, ProjPlane};
use crate::ring::{CubicContext, XiClass};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).expect("ascii"))
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }
}

/// Parses a homogeneous form of the given degree in `z0..z4`.
pub fn parse_form<F: Field>(field: &F, text: &str, degree: usize) -> Result<HomForm<F::Elem>> {
    let mut cur = Cursor { s: text.as_bytes(), pos: 0 };
    let mut out = HomForm::zero(field, 5, degree);
    let mut first = true;
    if cur.peek().is_none() {
        return Err(Error::Parse("empty expression".into()));
    }
    while cur.peek().is_some() {
        let negative = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else {
            return Err(cur.error("expected '+' or '-'"));
        };
        first = false;
        let (coeff, exp) = parse_term(field, &mut cur)?;
        let total: usize = exp.iter().map(|&e| e as usize).sum();
        if total != degree {
            return Err(Error::Parse(format!(
                "term {} has degree {total}, expected {degree} (non-homogeneous or wrong degree)",
                monomial::display(5, &exp, &Z_NAMES)
            )));
        }
        let coeff = if negative { field.neg(&coeff) } else { coeff };
        let sum = field.add(out.coeff(&exp), &coeff);
        out.set_coeff(&exp, sum);
    }
    Ok(out)
}

pub fn parse_cubic<F: Field>(field: &F, text: &str) -> Result<HomForm<F::Elem>> {
    parse_form(field, text, 3)
}

fn parse_term<F: Field>(field: &F, cur: &mut Cursor<'_>) -> Result<(F::Elem, Exponent)> {
    let mut coeff = field.one();
    let mut exp: Exponent = [0; 5];
    let mut any = false;
    match cur.peek() {
        Some(b'[') => {
            cur.pos += 1;
            let start = cur.pos;
            while cur.pos < cur.s.len() && cur.s[cur.pos] != b']' {
                cur.pos += 1;
            }
            if cur.pos == cur.s.len() {
                return Err(cur.error("unclosed '['"));
            }
            let inner = std::str::from_utf8(&cur.s[start..cur.pos]).expect("ascii slice");
            cur.pos += 1;
            coeff = field.parse_elem(inner)?;
            any = true;
        }
        Some(c) if c.is_ascii_digit() => {
            let n = cur.digits().expect("digit");
            let text = if cur.eat(b'/') {
                let d = cur.digits().ok_or_else(|| cur.error("malformed rational"))?;
                format!("{n}/{d}")
            } else {
                n.to_string()
            };
            coeff = field.parse_elem(&text)?;
            any = true;
        }
        _ => {}
    }
    loop {
        let save = cur.pos;
        let star = cur.eat(b'*');
        if cur.peek() == Some(b'z') {
            cur.pos += 1;
            let idx = cur.digits().ok_or_else(|| cur.error("expected a variable index"))?;
            let i: usize = idx.parse().map_err(|_| cur.error("bad variable index"))?;
            if i >= 5 {
                return Err(Error::Parse(format!("unknown variable z{idx}")));
            }
            let mut e = 1u32;
            if cur.eat(b'^') {
                let t = cur.digits().ok_or_else(|| cur.error("expected an exponent"))?;
                e = t.parse().map_err(|_| cur.error("bad exponent"))?;
            }
            let total = exp[i] as u32 + e;
            if total > monomial::MAX_DEGREE as u32 {
                return Err(Error::Parse(format!("exponent of z{i} too large")));
            }
            exp[i] = total as u8;
            any = true;
        } else {
            match cur.peek() {
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = cur.pos;
                    while cur.pos < cur.s.len() && cur.s[cur.pos].is_ascii_alphanumeric() {
                        cur.pos += 1;
                    }
                    let name = std::str::from_utf8(&cur.s[start..cur.pos]).expect("ascii");
                    return Err(Error::Parse(format!("unknown variable {name}")));
                }
                _ if star => return Err(cur.error("expected a variable after '*'")),
                _ => {
                    cur.pos = save;
                    break;
                }
            }
        }
    }
    if !any {
        return Err(cur.error("expected a term"));
    }
    Ok((coeff, exp))
}

/// Coefficient file: one scalar per line in the monomial table order;
/// blank lines and `#` comments are skipped.
pub fn parse_coefficients<F: Field>(field: &F, text: &str, degree: usize) -> Result<HomForm<F::Elem>> {
    let values: Vec<F::Elem> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| field.parse_elem(l.trim_start_matches('[').trim_end_matches(']')))
        .collect::<Result<_>>()?;
    let n = monomial::count(5, degree);
    if values.len() != n {
        return Err(Error::Parse(format!("expected {n} coefficients, found {}", values.len())));
    }
    HomForm::from_coeffs(5, degree, values)
}

pub fn format_coefficients<F: Field>(field: &F, form: &HomForm<F::Elem>) -> String {
    let mut out = String::new();
    for c in form.coeffs() {
        out.push_str(&field.format_elem(c));
        out.push('\n');
    }
    out
}

/// A cubic given either as an expression or as a coefficient file.
pub fn parse_cubic_source<F: Field>(field: &F, text: &str) -> Result<HomForm<F::Elem>> {
    let body: String = text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join("\n");
    if body.contains('z') {
        parse_cubic(field, &body.replace('\n', " "))
    } else {
        parse_coefficients(field, &body, 3)
    }
}

pub fn format_form<F: Field>(field: &F, form: &HomForm<F::Elem>) -> String {
    form.to_expression(field, &Z_NAMES)
}

pub fn format_cubic<F: Field>(field: &F, form: &HomForm<F::Elem>) -> String {
    format_form(field, form)
}

/// Splits on commas outside brackets.
fn split_top(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// A comma-separated vector; extension elements are written `[c0,...]`.
pub fn parse_vector<F: Field>(field: &F, text: &str) -> Result<Vec<F::Elem>> {
    split_top(text.trim())
        .into_iter()
        .map(|t| field.parse_elem(t.trim().trim_start_matches('[').trim_end_matches(']')))
        .collect()
}

fn parse_vectors<F: Field>(field: &F, text: &str) -> Result<Vec<Vec<F::Elem>>> {
    let rows: Vec<Vec<F::Elem>> = text.split(';').map(|t| parse_vector(field, t)).collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != 5) {
        return Err(Error::Parse("points and linear forms need 5 coordinates".into()));
    }
    Ok(rows)
}

pub fn parse_point<F: Field>(field: &F, text: &str) -> Result<Vec<F::Elem>> {
    let rows = parse_vectors(field, text)?;
    if rows.len() != 1 {
        return Err(Error::Parse("expected one point".into()));
    }
    Ok(rows.into_iter().next().expect("one row"))
}

/// `"p;q"` (two points) or ten Plücker coordinates.
pub fn parse_line<F: Field>(field: &F, text: &str) -> Result<ProjLine<F::Elem>> {
    if !text.contains(';') {
        let p = parse_vector(field, text)?;
        if p.len() == 10 {
            return ProjLine::from_pluecker(field, &p);
        }
        return Err(Error::Parse("a line is two points `p;q` or ten Plücker coordinates".into()));
    }
    let rows = parse_vectors(field, text)?;
    if rows.len() != 2 {
        return Err(Error::Parse("a line is given by two points".into()));
    }
    ProjLine::from_span(field, &rows).map_err(|e| Error::Parse(e.to_string()))
}

/// `"p;q;r"` (three points) or `"h1;h2"` (two linear forms).
pub fn parse_plane<F: Field>(field: &F, text: &str) -> Result<ProjPlane<F::Elem>> {
    let rows = parse_vectors(field, text)?;
    let plane = match rows.len() {
        3 => ProjPlane::from_span(field, &rows),
        2 => ProjPlane::from_forms(field, &rows),
        _ => return Err(Error::Parse("a plane is three points or two linear forms".into())),
    };
    plane.map_err(|e| Error::Parse(e.to_string()))
}

pub fn vec_json<F: Field>(field: &F, v: &[F::Elem]) -> Value {
    Value::from(v.iter().map(|c| field.format_elem(c)).collect::<Vec<_>>())
}

fn rows_json<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> Value {
    Value::from(rows.iter().map(|r| vec_json(field, r)).collect::<Vec<_>>())
}

pub fn line_json<F: Field>(field: &F, l: &ProjLine<F::Elem>) -> Value {
    json!({ "span": rows_json(field, l.span()), "pluecker": vec_json(field, l.pluecker()) })
}

pub fn plane_json<F: Field>(field: &F, p: &ProjPlane<F::Elem>) -> Value {
    json!({ "span": rows_json(field, p.span()), "dual": rows_json(field, p.dual()) })
}

fn binary_json<F: Field>(field: &F, b: &HomForm<F::Elem>) -> String {
    b.to_expression(field, &["s", "t"])
}

pub fn roots_json<F: Field>(field: &F, r: &BinaryRoots<F::Elem>) -> Value {
    json!({
        "rational": r.rational.iter().map(|p| json!({"point": vec_json(field, &p.point), "multiplicity": p.multiplicity})).collect::<Vec<_>>(),
        "closed": r.closed.iter().map(|c| json!({"degree": c.degree, "factor": binary_json(field, &c.factor), "multiplicity": c.multiplicity})).collect::<Vec<_>>(),
        "unresolved": binary_json(field, &r.unresolved),
        "complete": r.is_complete(),
    })
}

pub fn ring_json<F: Field>(ctx: &CubicContext<F>) -> Value {
    let field = ctx.field();
    let bases: Vec<Vec<String>> =
        (0..=5).map(|k| ctx.basis_monomials(k).iter().map(|e| monomial::display(5, e, &Z_NAMES)).collect()).collect();
    json!({
        "field": field.label(),
        "cubic": format_cubic(field, ctx.form()),
        "dims": &ctx.dims()[..6],
        "dim_r6": ctx.dims()[6],
        "smooth": ctx.is_smooth(),
        "nonsingular": ctx.cubic().is_nonsingular(),
        "bases": bases,
    })
}

pub fn xi_json<F: Field>(ctx: &CubicContext<F>, xi: &XiClass<F::Elem>) -> Value {
    let field = ctx.field();
    let quadric = ctx.xi_quadric_rank(xi).ok();
    let line = ctx.sigma_line_of_xi(xi).ok();
    json!({
        "coords": vec_json(field, &xi.coords),
        "representative": format_cubic(field, &xi.representative),
        "rank": xi.rank,
        "k1": rows_json(field, xi.k1.rows()),
        "k2_dim": xi.k2.dim(),
        "quadric_rank": quadric.map(|q| q.0),
        "in_xi2": quadric.map(|q| q.1),
        "sigma_line": line.map(|l| line_json(field, &l)),
    })
}

pub fn line_report_json<F: Field>(field: &F, r: &LineReport<F::Elem>) -> Value {
    json!({
        "line": line_json(field, &r.line),
        "in_v": r.in_v,
        "type": r.line_type.as_str(),
        "j2_restricted_dim": r.j2_restricted_dim,
        "intersection": r.intersection.as_ref().map(|i| roots_json(field, i)),
        "double": r.double.is_some(),
        "witness": r.double.as_ref().map(|w| json!({
            "plane": plane_json(field, &w.plane),
            "residual": line_json(field, &w.residual),
            "triple": w.triple,
        })),
        "dual_image": {
            "rank": r.dual_image.rank,
            "is_line": r.dual_image.is_line,
            "degree": r.dual_image.degree,
            "span": rows_json(field, &r.dual_image.image_span),
            "base_plane": r.dual_image.base_plane.as_ref().map(|p| plane_json(field, p)),
        },
        "eckardt_hits": rows_json(field, &r.eckardt_hits),
    })
}

pub fn adjoint_json<F: Field>(field: &F, r: &AdjointReport<F::Elem>) -> Value {
    json!({
        "line": line_json(field, &r.line),
        "xi": vec_json(field, &r.xi.coords),
        "w": rows_json(field, r.w.rows()),
        "w2": rows_json(field, r.w2.rows()),
        "vanishes": r.vanishes,
        "representative": vec_json(field, &r.representative.coeffs),
        "tangent_hyperplanes": rows_json(field, &r.tangent_hyperplanes),
        "base_plane": r.base_plane.as_ref().map(|p| plane_json(field, p)),
        "degeneracy": r.degeneracy,
        "eckardt_hits": rows_json(field, &r.eckardt_hits),
    })
}

pub fn primitive_json<F: Field>(field: &F, d: &PrimitiveFormData<F::Elem>) -> Value {
    json!({
        "phi": vec_json(field, &d.phi),
        "omega": rows_json(field, &d.omega),
        "images": rows_json(field, &d.images),
        "independent": d.independent,
        "decomposable": d.decomposable,
    })
}

/// Lines of `D_r` live over various extensions; each is rendered with its
/// own field's element format.
pub fn dr_json<F: Field>(field: &F, d: &DrReport<F::Elem>) -> Value {
    json!({
        "flag": d.flag,
        "tower_bound": d.tower_bound,
        "span_dim": d.span_dim,
        "lines": d.lines.iter().map(|l| {
            let ext = field.extension(l.degree).expect("finite field");
            json!({"degree": l.degree, "line": line_json(&ext.field, &l.line)})
        }).collect::<Vec<_>>(),
    })
}

pub fn dphi_json<F: Field>(field: &F, d: &DphiReport<F::Elem>) -> Value {
    json!({
        "rank": d.rank,
        "surjective": d.rank == 35,
        "claim_a": d.claim_a,
        "claim_b": d.claim_b,
        "c": field.format_elem(&d.shape.c),
        "q0": format_cubic(field, &d.shape.q0),
        "q1": format_cubic(field, &d.shape.q1),
        "c0": d.c0.to_expression(field, &["z2", "z3", "z4"]),
        "c1": d.c1.to_expression(field, &["z2", "z3", "z4"]),
    })
}

pub fn normalized_json<F: Field>(field: &F, n: &NormalizedCubic<F::Elem>) -> Value {
    json!({
        "form": format_cubic(field, &n.form),
        "basis": rows_json(field, &n.basis),
        "c": field.format_elem(&n.shape.c),
    })
}

pub fn eckardt_json<F: Field>(field: &F, d: &EckardtData<F::Elem>) -> Value {
    json!({
        "point": vec_json(field, &d.point),
        "is_eckardt": d.is_eckardt,
        "tangent": vec_json(field, &d.tangent),
        "basis": rows_json(field, &d.basis),
        "quadric": d.quadric.to_expression(field, &["y1", "y2", "y3"]),
        "cone_base": d.is_eckardt.then(|| d.cubic.to_expression(field, &["y1", "y2", "y3"])),
    })
}

pub fn point_lines_json<F: Field>(p: &PointLines<F>) -> Value {
    json!({
        "field": p.field.label(),
        "eckardt": p.eckardt,
        "infinite": p.infinite,
        "lines": p.lines.iter().map(|l| line_json(&p.field, l)).collect::<Vec<_>>(),
    })
}

pub fn hessian_json<F: Field>(field: &F, h: &HessianOnLine<F::Elem>, roots: Option<&BinaryRoots<F::Elem>>) -> Value {
    json!({
        "restricted": binary_json(field, &h.form),
        "degenerate": h.degenerate,
        "roots": roots.map(|r| roots_json(field, r)),
    })
}

pub fn section_json<F: Field>(field: &F, s: &PlaneSection<F::Elem>) -> Value {
    json!({
        "plane": plane_json(field, &s.plane),
        "section": s.section.to_expression(field, &["a", "b", "c"]),
        "lines": s.lines.iter().map(|l| json!({
            "form": vec_json(field, &l.form),
            "line": line_json(field, &l.line),
            "multiplicity": l.multiplicity,
        })).collect::<Vec<_>>(),
        "residual": s.residual.to_expression(field, &["a", "b", "c"]),
        "rare_triangle": s.rare_triangle,
        "splits_over": s.splits_over,
    })
}

pub fn reconstruction_json<F: Field>(field: &F, r: &Reconstruction<F::Elem>, source: Option<&HomForm<F::Elem>>) -> Value {
    json!({
        "lines": r.lines,
        "sampled_points": r.sampled_points,
        "kernel_dim": r.kernel_dim,
        "kernel": r.kernel.iter().map(|k| format_cubic(field, k)).collect::<Vec<_>>(),
        "insufficient_sample": r.insufficient_sample,
        "contains_source": source.map(|e| r.contains(field, e)),
        "recovers_source": source.map(|e| r.recovers(field, e)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf, Rationals};
    use num_rational::BigRational;

    #[test]
    fn parse_examples() {
        let q = Rationals;
        let f = parse_cubic(&q, "z0^3+z1^3+z2^3+z3^3+z4^3").unwrap();
        let cubes = [[3, 0, 0, 0, 0], [0, 3, 0, 0, 0], [0, 0, 3, 0, 0], [0, 0, 0, 3, 0], [0, 0, 0, 0, 3]];
        for (e, c) in monomial::monomials(5, 3).iter().zip(f.coeffs()) {
            assert_eq!(*c == BigRational::from_integer(1.into()), cubes.contains(e));
        }
        let g = parse_cubic(&q, "z0^2*z1 - z0*z1^2").unwrap();
        assert_eq!(g.coeff(&[2, 1, 0, 0, 0]), &BigRational::from_integer(1.into()));
        assert_eq!(g.coeff(&[1, 2, 0, 0, 0]), &BigRational::from_integer((-1).into()));
        assert_eq!(g.terms(&q).count(), 2);
        assert!(matches!(parse_cubic(&q, "z0^2 + z1^3"), Err(Error::Parse(_))));
        assert!(matches!(parse_cubic(&q, "z5^3"), Err(Error::Parse(_))));
        assert!(matches!(parse_cubic(&q, "x^3"), Err(Error::Parse(_))));
        assert!(matches!(parse_cubic(&q, "1/0*z0^3"), Err(Error::Parse(_))));
        assert!(matches!(parse_cubic(&q, "z0^2"), Err(Error::Parse(_))));
        let f7 = Gf::prime(7).unwrap();
        assert!(matches!(parse_cubic(&f7, "1/7*z0^3"), Err(Error::Parse(_))));
        assert_eq!(parse_cubic(&f7, "-z0 z1 z2 + 1/2 z3^3").unwrap().coeff(&[0, 0, 0, 3, 0]), &4);
        let f49 = Gf::new(7, 2).unwrap();
        let h = parse_cubic(&f49, "[1,2]*z0^3 - z4^3").unwrap();
        assert_eq!(format_cubic(&f49, &h), "[1,2]*z0^3 + [6,0]*z4^3".replace("[6,0]", &format!("[{}]", f49.format_elem(&f49.neg(&1)))));
    }

    #[test]
    fn line_and_plane_specs() {
        let f = Gf::prime(7).unwrap();
        let l = parse_line(&f, "1,0,0,0,0;0,1,0,0,0").unwrap();
        assert_eq!(l.pluecker(), &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(parse_line(&f, "1,0,0,0,0,0,0,0,0,0").unwrap(), l);
        let pi = parse_plane(&f, "1,1,0,0,0;0,0,1,1,0").unwrap();
        assert!(pi.contains_point(&f, &[1, 6, 0, 0, 3]));
        assert!(parse_line(&f, "1,0,0,0,0;2,0,0,0,0").is_err());
    }

    #[test]
    fn coefficient_files() {
        let f = Gf::new(5, 2).unwrap();
        let g = HomForm::random(&f, 5, 3, &mut <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3));
        let text = format_coefficients(&f, &g);
        assert_eq!(parse_coefficients(&f, &text, 3).unwrap(), g);
        assert_eq!(parse_cubic_source(&f, &text).unwrap(), g);
        assert_eq!(parse_cubic_source(&f, &format_cubic(&f, &g)).unwrap(), g);
    }
}
