//! Line, point and Eckardt censuses over a finite field.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{eckardt_test, tangent_plane_witness, Cubic, DoubleWitness, ProjLine};
use crate::ring::CubicContext;

use super::lines::{LineSpace, PointSpace, DEFAULT_MAX_ORDER};

/// Largest `#P^4(F_(q^k))` scanned for the per-extension point counts.
pub const POINT_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Lines,
    Sigma,
    Double,
    Eckardt,
    Points,
}

impl Task {
    pub const ALL: [Task; 5] = [Task::Lines, Task::Sigma, Task::Double, Task::Eckardt, Task::Points];

    pub fn parse(s: &str) -> Result<Task> {
        match s.trim() {
            "lines" => Ok(Task::Lines),
            "sigma" => Ok(Task::Sigma),
            "double" => Ok(Task::Double),
            "eckardt" => Ok(Task::Eckardt),
            "points" => Ok(Task::Points),
            other => Err(Error::Usage(format!("unknown census task '{other}'"))),
        }
    }

    pub fn parse_list(s: &str) -> Result<BTreeSet<Task>> {
        s.split(',').filter(|t| !t.trim().is_empty()).map(Task::parse).collect()
    }
}

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub tasks: BTreeSet<Task>,
    /// Lines (or points) per work unit. Output does not depend on it.
    pub chunk_size: usize,
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
    pub seed: u64,
    /// Extension degrees for the per-extension point counts.
    pub tower_bound: usize,
    pub max_order: u64,
    /// Include double lines and Eckardt points in the report.
    pub lists: bool,
    /// Record wall-clock time (makes the report non-reproducible).
    pub timing: bool,
}

impl Default for CensusConfig {
    fn default() -> Self {
        Self {
            tasks: [Task::Lines, Task::Sigma, Task::Double].into_iter().collect(),
            chunk_size: 4096,
            workers: 0,
            seed: 0,
            tower_bound: 1,
            max_order: DEFAULT_MAX_ORDER,
            lists: true,
            timing: false,
        }
    }
}

/// A double line found by the census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleLine<E> {
    pub line: ProjLine<E>,
    pub witness: DoubleWitness<E>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusCounts {
    pub lines_scanned: Option<u64>,
    /// Lines on the cubic.
    pub fano: Option<u64>,
    /// Second-type lines.
    pub sigma: Option<u64>,
    pub sigma_on_cubic: Option<u64>,
    /// Double lines as second-type lines on the cubic.
    pub double_by_type: Option<u64>,
    /// Double lines as lines with a tangent-plane witness.
    pub double_by_witness: Option<u64>,
    pub triple: Option<u64>,
    pub eckardt: Option<u64>,
    pub points: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct CensusReport<E> {
    pub field: String,
    pub cubic: String,
    pub seed: u64,
    pub counts: CensusCounts,
    pub double_lines: Vec<DoubleLine<E>>,
    pub eckardt_points: Vec<Vec<E>>,
    /// `(k, #V(F_(q^k)))`.
    pub per_extension: Vec<(usize, u64)>,
    pub seconds: Option<f64>,
    lists: bool,
}

#[derive(Clone, Debug)]
struct Partial<E> {
    scanned: u64,
    fano: u64,
    sigma: u64,
    sigma_on: u64,
    by_witness: u64,
    triple: u64,
    doubles: Vec<DoubleLine<E>>,
}

impl<E> Partial<E> {
    fn merge(mut self, other: Self) -> Self {
        self.scanned += other.scanned;
        self.fano += other.fano;
        self.sigma += other.sigma;
        self.sigma_on += other.sigma_on;
        self.by_witness += other.by_witness;
        self.triple += other.triple;
        self.doubles.extend(other.doubles);
        self
    }
}

/// Full census for a smooth cubic.
pub fn census_run<F: Field>(ctx: &CubicContext<F>, config: &CensusConfig) -> Result<CensusReport<F::Elem>> {
    ctx.require_smooth()?;
    census_cubic(ctx.cubic(), config)
}

/// Census without the smoothness check, for characteristics where the
/// Jacobian-ring test does not apply.
pub fn census_cubic<F: Field>(cubic: &Cubic<F>, config: &CensusConfig) -> Result<CensusReport<F::Elem>> {
    let field = cubic.field();
    field.order().ok_or(Error::FiniteFieldRequired)?;
    let start = Instant::now();
    let run = || -> Result<CensusReport<F::Elem>> {
        let mut counts = CensusCounts::default();
        let mut double_lines = Vec::new();
        let tasks = &config.tasks;
        let scan = tasks.contains(&Task::Lines) || tasks.contains(&Task::Sigma) || tasks.contains(&Task::Double);
        if scan {
            let space = LineSpace::with_max_order(field, 4, config.max_order)?;
            let want_sigma = tasks.contains(&Task::Sigma);
            let want_double = tasks.contains(&Task::Double);
            let partial = scan_lines(cubic, &space, config.chunk_size, want_sigma, want_double)?;
            counts.lines_scanned = Some(partial.scanned);
            counts.fano = Some(partial.fano);
            if want_sigma {
                counts.sigma = Some(partial.sigma);
                counts.sigma_on_cubic = Some(partial.sigma_on);
            }
            if want_double {
                counts.double_by_type = Some(partial.sigma_on);
                counts.double_by_witness = Some(partial.by_witness);
                counts.triple = Some(partial.triple);
                double_lines = partial.doubles;
            }
        }
        let mut eckardt_points = Vec::new();
        if tasks.contains(&Task::Eckardt) {
            eckardt_points = eckardt_census(cubic, config.chunk_size)?;
            counts.eckardt = Some(eckardt_points.len() as u64);
        }
        let mut per_extension = Vec::new();
        if tasks.contains(&Task::Points) {
            counts.points = Some(count_points(cubic, config.chunk_size)?);
            for k in 1..=config.tower_bound.max(1) {
                let ext = field.extension(k).ok_or(Error::FiniteFieldRequired)?;
                let qk = ext.field.order().expect("finite");
                if qk.checked_pow(4).is_none_or(|x| x > POINT_BUDGET) {
                    break;
                }
                per_extension.push((k, count_points(&cubic.base_change(&ext), config.chunk_size)?));
            }
        }
        Ok(CensusReport {
            field: field.label(),
            cubic: cubic.form().to_expression(field, &crate::algebra::monomial::Z_NAMES),
            seed: config.seed,
            counts,
            double_lines,
            eckardt_points,
            per_extension,
            seconds: None,
            lists: config.lists,
        })
    };
    let mut report = if config.workers > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
        pool.install(run)?
    } else {
        run()?
    };
    if config.timing {
        report.seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

fn scan_lines<F: Field>(cubic: &Cubic<F>, space: &LineSpace<F>, chunk: usize, sigma: bool, double: bool) -> Result<Partial<F::Elem>> {
    let chunk = chunk.max(1);
    let n = space.len();
    let parts: Vec<Result<Partial<F::Elem>>> = (0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut part = Partial { scanned: 0, fano: 0, sigma: 0, sigma_on: 0, by_witness: 0, triple: 0, doubles: Vec::new() };
            for idx in c * chunk..((c + 1) * chunk).min(n) {
                let l = space.line(idx);
                part.scanned += 1;
                let on = cubic.contains_line(&l);
                part.fano += u64::from(on);
                if sigma || double {
                    let second = cubic.restricted_partials_rank(&l) <= 2;
                    part.sigma += u64::from(second);
                    part.sigma_on += u64::from(second && on);
                }
                if double && on {
                    if let Some(w) = tangent_plane_witness(cubic, &l)? {
                        part.by_witness += 1;
                        part.triple += u64::from(w.triple);
                        part.doubles.push(DoubleLine { line: l, witness: w });
                    }
                }
            }
            Ok(part)
        })
        .collect();
    let mut total = Partial { scanned: 0, fano: 0, sigma: 0, sigma_on: 0, by_witness: 0, triple: 0, doubles: Vec::new() };
    for p in parts {
        total = total.merge(p?);
    }
    Ok(total)
}

fn count_points<F: Field>(cubic: &Cubic<F>, chunk: usize) -> Result<u64> {
    let space = PointSpace::new(cubic.field(), 4)?;
    let chunk = chunk.max(1);
    let n = space.len();
    Ok((0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            (c * chunk..((c + 1) * chunk).min(n)).filter(|&i| cubic.field().is_zero(&cubic.eval(&space.point(i)))).count() as u64
        })
        .sum())
}

/// Eckardt points among the rational points of the cubic, in point order.
pub fn eckardt_census<F: Field>(cubic: &Cubic<F>, chunk: usize) -> Result<Vec<Vec<F::Elem>>> {
    let field = cubic.field();
    let space = PointSpace::new(field, 4)?;
    let chunk = chunk.max(1);
    let n = space.len();
    let parts: Vec<Result<Vec<Vec<F::Elem>>>> = (0..n.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut out = Vec::new();
            for i in c * chunk..((c + 1) * chunk).min(n) {
                let p = space.point(i);
                if !field.is_zero(&cubic.eval(&p)) {
                    continue;
                }
                if eckardt_test(cubic, &p)?.is_eckardt {
                    out.push(p);
                }
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Degree of the curve of double lines in the Plücker embedding.
pub const DOUBLE_CURVE_DEGREE: u64 = 90;
/// Lower bound for the degree of the ruled surface of double lines.
pub const DOUBLE_SURFACE_DEGREE_LOWER_BOUND: u64 = 15;
/// Lines on a smooth cubic surface.
pub const CUBIC_SURFACE_LINES: u64 = 27;

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug> CensusReport<E> {
    /// JSON with sorted keys; byte-stable for a fixed configuration when
    /// timing is off.
    pub fn to_json<F: Field<Elem = E>>(&self, field: &F) -> serde_json::Value {
        use serde_json::json;
        let fmt = |v: &[E]| -> Vec<String> { v.iter().map(|c| field.format_elem(c)).collect() };
        let lists = if self.lists {
            json!({
                "double_lines": self.double_lines.iter().map(|d| json!({
                    "pluecker": fmt(d.line.pluecker()),
                    "span": d.line.span().iter().map(|r| fmt(r)).collect::<Vec<_>>(),
                    "plane": d.witness.plane.dual().iter().map(|r| fmt(r)).collect::<Vec<_>>(),
                    "residual": fmt(d.witness.residual.pluecker()),
                    "triple": d.witness.triple,
                })).collect::<Vec<_>>(),
                "eckardt_points": self.eckardt_points.iter().map(|p| fmt(p)).collect::<Vec<_>>(),
            })
        } else {
            serde_json::Value::Null
        };
        // serde_json's default map is ordered, so keys come out sorted
        json!({
            "field": self.field,
            "cubic": self.cubic,
            "seed": self.seed,
            "counts": self.counts,
            "lists": lists,
            "per_extension": self.per_extension.iter().map(|(k, n)| json!({"degree": k, "points": n})).collect::<Vec<_>>(),
            "timing": self.seconds.map(|s| json!({"seconds": s})),
            "classical_constants": {
                "double_curve_degree": DOUBLE_CURVE_DEGREE,
                "double_surface_degree_at_least": DOUBLE_SURFACE_DEGREE_LOWER_BOUND,
                "cubic_surface_lines": CUBIC_SURFACE_LINES,
            },
        })
    }
}
