//! Command-line front end. [`run_command`] parses arguments, runs one
//! subcommand and writes a JSON report; `main` only forwards the exit code.
//!
//! Exit codes: 0 on success, 1 when a mathematical precondition fails (the
//! JSON then carries `error` and `reason`), 2 on usage or parse errors.
//!
//! Randomness (`--cubic random`) comes from ChaCha8 seeded with `--seed`,
//! so reports are reproducible on every platform.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use threefold::adjoint::{adjoint_class, d_r_lines, primitive_form, AdjointInput, DrFlag};
use threefold::algebra::binary::binary_roots;
use threefold::algebra::HomForm;
use threefold::census::{census_cubic, census_run, dphi_rank, eckardt_census, normalize_double_line, reconstruct, CensusConfig, Task};
use threefold::field::{Field, FieldSpec, Gf, Rationals};
use threefold::geometry::{classify_line, eckardt_test, hessian, hessian_on_line, lines_through_point, plane_section, Cubic};
use threefold::io;
use threefold::ring::CubicContext;
use threefold::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "threefold", version, about = "Exact computations on cubic threefolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Cubic: a file (expression or coefficient list), an inline
    /// expression, or `random`.
    #[arg(long)]
    cubic: String,
    /// `0` for the rationals, `p` or `p^k` for a finite field.
    #[arg(long, default_value = "0")]
    field: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// No progress messages on stderr.
    #[arg(long)]
    quiet: bool,
    /// Accept characteristic 2 and 3.
    #[arg(long)]
    allow_small_char: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded dimensions and monomial bases of the Jacobian ring.
    Ring {
        #[command(flatten)]
        common: Common,
    },
    /// Type of a line, its intersection with the cubic and double-line witness.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        line: String,
        #[arg(long, default_value_t = 3)]
        tower: usize,
    },
    /// Rank data of a class in degree 3.
    Xi {
        #[command(flatten)]
        common: Common,
        /// Cubic form representing the class (file or inline expression).
        #[arg(long, conflicts_with = "line")]
        xi: Option<String>,
        /// A second-type line; its class is used.
        #[arg(long)]
        line: Option<String>,
    },
    /// Adjoint class of a second-type line and the lines meeting it.
    Adjoint {
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with = "line")]
        xi: Option<String>,
        #[arg(long)]
        line: Option<String>,
        #[arg(long, default_value_t = 3)]
        tower: usize,
        /// Also list the lines of the cubic meeting the line (finite fields).
        #[arg(long)]
        meeting_lines: bool,
    },
    /// Exhaustive census over a finite field.
    Census {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "lines,sigma,double")]
        tasks: String,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, default_value_t = 4096)]
        chunk: usize,
        /// Extension degrees for the point counts.
        #[arg(long, default_value_t = 1)]
        tower: usize,
        #[arg(long, default_value_t = threefold::census::DEFAULT_MAX_ORDER)]
        max_order: u64,
        #[arg(long)]
        no_lists: bool,
        /// Record wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Cubics containing a set of lines (by default the census double lines).
    Reconstruct {
        #[command(flatten)]
        common: Common,
        /// File with one line spec per row.
        #[arg(long)]
        lines: Option<String>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Rank of the differential of the period map at a normalized cubic.
    Dphi {
        #[command(flatten)]
        common: Common,
        /// Normalize along this double line first.
        #[arg(long)]
        line: Option<String>,
        #[arg(long)]
        allow_singular: bool,
    },
    /// Eckardt test at a point, or the Eckardt census.
    Eckardt {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        point: Option<String>,
        /// List the lines through the point.
        #[arg(long)]
        lines: bool,
        #[arg(long, default_value_t = 4096)]
        chunk: usize,
    },
    /// Hessian, or its restriction to a line of the cubic.
    Hessian {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        line: Option<String>,
        #[arg(long, default_value_t = 3)]
        tower: usize,
    },
    /// Plane section and its linear components.
    Section {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        plane: String,
        #[arg(long, default_value_t = 3)]
        tower: usize,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Ring { common }
            | Command::Classify { common, .. }
            | Command::Xi { common, .. }
            | Command::Adjoint { common, .. }
            | Command::Census { common, .. }
            | Command::Reconstruct { common, .. }
            | Command::Dphi { common, .. }
            | Command::Eckardt { common, .. }
            | Command::Hessian { common, .. }
            | Command::Section { common, .. } => common,
        }
    }
}

/// Runs one command line (including the program name) and returns the exit
/// code. Reports go to `out` unless `--out` is given; progress goes to `err`.
pub fn run_command<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let common = cli.command.common().clone();
    let result = FieldSpec::parse(&common.field, common.allow_small_char).and_then(|spec| match spec {
        FieldSpec::Rational => dispatch(Rationals, &cli.command, err),
        FieldSpec::Finite { p, k } => dispatch(Gf::new(p, k)?, &cli.command, err),
    });
    let (value, code) = match result {
        Ok(v) => (v, 0),
        Err(e) => (json!({ "error": e.to_string(), "reason": e.reason() }), e.exit_code()),
    };
    let text = serde_json::to_string_pretty(&value).expect("json values serialize") + "\n";
    match (&common.out, code) {
        (Some(path), 0) => {
            if let Err(e) = std::fs::write(path, &text) {
                let _ = writeln!(err, "cannot write {}: {e}", path.display());
                return 2;
            }
        }
        _ => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    code
}

fn read_source(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    } else if arg.contains('z') {
        Ok(arg.to_string())
    } else {
        Err(Error::Io(format!("no such file: {arg}")))
    }
}

fn load_cubic<F: Field>(field: &F, common: &Common) -> Result<HomForm<F::Elem>> {
    if common.cubic == "random" {
        return Ok(random_smooth_cubic(field, common.seed, common.allow_small_char));
    }
    io::parse_cubic_source(field, &read_source(&common.cubic)?)
}

/// First smooth form in the ChaCha8 stream for `seed`; over very small
/// fields the last draw is returned even if singular.
fn random_smooth_cubic<F: Field>(field: &F, seed: u64, small: bool) -> HomForm<F::Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = HomForm::random(field, 5, 3, &mut rng);
    for _ in 0..64 {
        let ctx = if small { CubicContext::with_small_characteristic(field, &f) } else { CubicContext::new(field, &f) };
        if ctx.map(|c| c.is_smooth()).unwrap_or(false) {
            break;
        }
        f = HomForm::random(field, 5, 3, &mut rng);
    }
    f
}

fn context<F: Field>(field: &F, cubic: &HomForm<F::Elem>, common: &Common) -> Result<CubicContext<F>> {
    if common.allow_small_char {
        CubicContext::with_small_characteristic(field, cubic)
    } else {
        CubicContext::new(field, cubic)
    }
}

fn progress(err: &mut dyn Write, common: &Common, msg: &str) {
    if !common.quiet {
        let _ = writeln!(err, "{msg}");
    }
}

fn with_header<F: Field>(field: &F, cubic: &HomForm<F::Elem>, body: Value) -> Value {
    let mut v = json!({ "field": field.label(), "cubic": io::format_cubic(field, cubic) });
    if let (Value::Object(m), Value::Object(b)) = (&mut v, body) {
        m.extend(b);
    }
    v
}

fn dispatch<F: Field>(field: F, command: &Command, err: &mut dyn Write) -> Result<Value> {
    let common = command.common();
    let form = load_cubic(&field, common)?;
    let f = &field;
    match command {
        Command::Ring { .. } => {
            let ctx = context(f, &form, common)?;
            Ok(io::ring_json(&ctx))
        }
        Command::Classify { line, tower, .. } => {
            let cubic = Cubic::new(f, &form)?;
            let line = io::parse_line(f, line)?;
            let report = classify_line(&cubic, &line, *tower)?;
            Ok(with_header(f, &form, io::line_report_json(f, &report)))
        }
        Command::Xi { xi, line, .. } => {
            let ctx = context(f, &form, common)?;
            let class = match (xi, line) {
                (Some(x), _) => ctx.make_xi(&io::parse_cubic_source(f, &read_source(x)?)?)?,
                (None, Some(l)) => ctx.xi_of_line(&io::parse_line(f, l)?)?,
                (None, None) => return Err(Error::Usage("xi needs --xi or --line".into())),
            };
            let mut body = io::xi_json(&ctx, &class);
            if class.rank == 2 {
                body["primitive"] = io::primitive_json(f, &primitive_form(&ctx, &class)?);
            }
            Ok(with_header(f, &form, body))
        }
        Command::Adjoint { xi, line, tower, meeting_lines, .. } => {
            let ctx = context(f, &form, common)?;
            let input = match (xi, line) {
                (Some(x), _) => AdjointInput::Xi(ctx.make_xi(&io::parse_cubic_source(f, &read_source(x)?)?)?),
                (None, Some(l)) => AdjointInput::Line(io::parse_line(f, l)?),
                (None, None) => return Err(Error::Usage("adjoint needs --xi or --line".into())),
            };
            let report = adjoint_class(&ctx, &input, *tower)?;
            let mut body = io::adjoint_json(f, &report);
            if *meeting_lines {
                let dr = d_r_lines(&ctx, &report.line, *tower)?;
                let mut d = io::dr_json(f, &dr);
                if dr.flag == DrFlag::Finite && !report.vanishes {
                    // every line meeting l_r meets the base plane
                    d["representative_vanishes_on_all"] = Value::Bool(dr.lines.iter().all(|l| {
                        let ext = f.extension(l.degree).expect("finite field");
                        let w = ext.embed_all(f, &report.representative.coeffs);
                        ext.field.is_zero(&ext.field.dot(&w, l.line.pluecker()))
                    }));
                }
                body["meeting_lines"] = d;
            }
            Ok(with_header(f, &form, body))
        }
        Command::Census { tasks, workers, chunk, tower, max_order, no_lists, timing, .. } => {
            let config = CensusConfig {
                tasks: Task::parse_list(tasks)?,
                chunk_size: (*chunk).max(1),
                workers: *workers,
                seed: common.seed,
                tower_bound: (*tower).max(1),
                max_order: *max_order,
                lists: !no_lists,
                timing: *timing,
            };
            progress(err, common, &format!("census over {} ({} workers)", f.label(), workers));
            let report = if f.characteristic() == 3 && common.allow_small_char {
                // the Jacobian-ring test is meaningless here; use the direct one
                let cubic = Cubic::new(f, &form)?;
                if !cubic.is_nonsingular() {
                    return Err(Error::SingularCubic);
                }
                census_cubic(&cubic, &config)?
            } else {
                census_run(&context(f, &form, common)?, &config)?
            };
            Ok(report.to_json(f))
        }
        Command::Reconstruct { lines, workers, .. } => {
            let source: Vec<_> = match lines {
                Some(path) => read_source_file(path)?
                    .lines()
                    .map(|l| l.split('#').next().unwrap_or("").trim())
                    .filter(|l| !l.is_empty())
                    .map(|l| io::parse_line(f, l))
                    .collect::<Result<_>>()?,
                None => {
                    progress(err, common, &format!("collecting double lines over {}", f.label()));
                    let config = CensusConfig {
                        tasks: [Task::Double].into_iter().collect(),
                        workers: *workers,
                        seed: common.seed,
                        ..Default::default()
                    };
                    census_run(&context(f, &form, common)?, &config)?.double_lines.into_iter().map(|d| d.line).collect()
                }
            };
            let r = reconstruct(f, &source)?;
            Ok(with_header(f, &form, io::reconstruction_json(f, &r, Some(&form))))
        }
        Command::Dphi { line, allow_singular, .. } => {
            let ctx = context(f, &form, common)?;
            let (ctx, normalized) = match line {
                Some(l) => {
                    let n = normalize_double_line(&ctx, &io::parse_line(f, l)?)?;
                    (context(f, &n.form, common)?, Some(io::normalized_json(f, &n)))
                }
                None => (ctx, None),
            };
            let d = dphi_rank(&ctx, *allow_singular)?;
            let mut body = io::dphi_json(f, &d);
            body["normalized"] = normalized.unwrap_or(Value::Null);
            body["smooth"] = Value::Bool(ctx.is_smooth());
            Ok(with_header(f, &form, body))
        }
        Command::Eckardt { point, lines, chunk, .. } => {
            let cubic = Cubic::new(f, &form)?;
            match point {
                Some(p) => {
                    let p = io::parse_point(f, p)?;
                    let mut body = io::eckardt_json(f, &eckardt_test(&cubic, &p)?);
                    if *lines {
                        body["lines_through"] = io::point_lines_json(&lines_through_point(&cubic, &p, 6)?);
                    }
                    Ok(with_header(f, &form, body))
                }
                None => {
                    progress(err, common, &format!("scanning the points of the cubic over {}", f.label()));
                    let pts = eckardt_census(&cubic, (*chunk).max(1))?;
                    let list: Vec<Value> = pts.iter().map(|p| io::vec_json(f, p)).collect();
                    Ok(with_header(f, &form, json!({ "count": pts.len(), "eckardt_points": list })))
                }
            }
        }
        Command::Hessian { line, tower, .. } => {
            let cubic = Cubic::new(f, &form)?;
            let h = hessian(&cubic);
            let mut body = json!({ "hessian": io::format_form(f, &h) });
            if let Some(l) = line {
                let on = hessian_on_line(&cubic, &io::parse_line(f, l)?)?;
                let roots = if on.degenerate { None } else { Some(binary_roots(f, &on.form, *tower)?) };
                body["on_line"] = io::hessian_json(f, &on, roots.as_ref());
            }
            Ok(with_header(f, &form, body))
        }
        Command::Section { plane, tower, .. } => {
            let cubic = Cubic::new(f, &form)?;
            let s = plane_section(&cubic, &io::parse_plane(f, plane)?, *tower)?;
            Ok(with_header(f, &form, io::section_json(f, &s)))
        }
    }
}

fn read_source_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}
