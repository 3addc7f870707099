//! Command-line surface. [`run`] takes the argument list and two writers so
//! tests can drive it in-process.
//!
//! Exit codes: 0 success or verified, 1 usage or input error, 2 a
//! verification failed, 3 inconclusive.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formspace::{FormSpace, GradedIdealSlice};
use crate::gin::{gin, trial_seed, Arithmetic, GinConfig, GinResult, DEFAULT_RANGE, DEFAULT_TRIALS};
use crate::io::{parse, parse_polynomial, render_staircase, InputDocument, StaircaseFormat};
use crate::monomial::Monomial;
use crate::scalar::Scalar;
use crate::stable::{build_j, MonomialSpace};
use crate::verify::{
    analyze_locus, check_common_factor_scenario, check_locus_codimension, check_quartic_example,
    check_restricted_ideal, check_restricted_ideal_at_depth, check_staircase_examples, explore_quartic_colons,
    StaircaseExamplesConfig, Verdict, DEFAULT_DEGREE_CAP, DEFAULT_WINDOW,
};

pub const SEED_ENV: &str = "GINSPACE_SEED";

#[derive(Parser, Debug)]
#[command(name = "ginspace", version, about = "Initial and generic initial spaces of homogeneous forms (revlex)")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Randomness {
    /// Master seed for coordinate changes and random forms.
    #[arg(long, env = SEED_ENV)]
    seed: Option<u64>,
    /// Independent trials per round.
    #[arg(long)]
    trials: Option<usize>,
    /// Coefficients of random changes are drawn from [-range, range].
    #[arg(long)]
    range: Option<u64>,
    /// Compute pivots modulo a prime (default 32003) instead of over the rationals.
    #[arg(long, num_args = 0..=1, default_missing_value = "32003")]
    prime: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Ascii,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Check {
    #[value(name = "main-a")]
    MainA,
    #[value(name = "main-b")]
    MainB,
    Corollary,
    #[value(name = "examples-2.6")]
    Examples,
    #[value(name = "example-2.7")]
    Quartic,
    #[value(name = "theorem-1")]
    CommonFactor,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Initial space of the span of the forms.
    In { file: PathBuf },
    /// Generic initial space.
    Gin {
        file: PathBuf,
        #[command(flatten)]
        rand: Randomness,
    },
    /// Colon by a monomial or by a linear form.
    Colon {
        file: PathBuf,
        #[arg(long, conflicts_with = "by_form", required_unless_present = "by_form")]
        by: Option<String>,
        #[arg(long)]
        by_form: Option<String>,
    },
    /// Set the last R variables to zero.
    Restrict {
        file: PathBuf,
        #[arg(long)]
        drop: usize,
    },
    /// Minimal generators of J(gin V) with respect to the last variable.
    Jideal {
        file: PathBuf,
        /// Drop this many top variables from gin(V) first.
        #[arg(long, default_value_t = 0)]
        restrict: usize,
        #[command(flatten)]
        rand: Randomness,
    },
    /// Hilbert function of the ideal generated by the forms.
    Hilbert {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Report dim (S/I)_e instead of dim I_e.
        #[arg(long)]
        quotient: bool,
    },
    /// Vanishing locus from the quotient Hilbert function.
    Locus {
        file: PathBuf,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Point to test, comma separated (e.g. 1,0,0 or 1/2,1,0). Repeatable.
        #[arg(long)]
        witness: Vec<String>,
    },
    /// Run a verification pipeline.
    Verify {
        check: Check,
        /// Input file (main-a, main-b, corollary; optional for examples-2.6 and example-2.7).
        file: Option<PathBuf>,
        /// Restriction depth (main-b, corollary).
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Degree of the common factor (theorem-1).
        #[arg(long, default_value_t = 1)]
        a: u32,
        #[arg(long, default_value_t = 2)]
        b: u32,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        degree_cap: u32,
        #[command(flatten)]
        rand: Randomness,
    },
    /// Staircase diagram of gin(V), or of in(V) with --as-given.
    Staircase {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        /// Skip the coordinate change.
        #[arg(long)]
        as_given: bool,
        #[command(flatten)]
        rand: Randomness,
    },
}

/// What a command produced: human text, a JSON value and an exit code.
struct Outcome {
    text: String,
    json: serde_json::Value,
    code: i32,
}

impl Outcome {
    fn new(command: &str, seed: Option<u64>, text: String, report: impl Serialize, code: i32) -> Self {
        let mut json = serde_json::json!({
            "command": command,
            "report": serde_json::to_value(report).expect("reports are plain data"),
        });
        if let Some(s) = seed {
            json["seed"] = s.into();
        }
        json["exit_code"] = code.into();
        Outcome { text, json, code }
    }
}

fn read_document(path: &Path) -> Result<InputDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

fn gin_config(rand: &Randomness, doc: Option<&InputDocument>) -> GinConfig {
    let opts = doc.map(|d| d.options.clone()).unwrap_or_default();
    GinConfig {
        trials: rand.trials.or(opts.trials).unwrap_or(DEFAULT_TRIALS),
        seed: rand.seed.or(opts.seed).unwrap_or(0),
        range: rand.range.or(opts.range).unwrap_or(DEFAULT_RANGE),
        arithmetic: match rand.prime {
            Some(p) => Arithmetic::Prime(p),
            None => Arithmetic::Rational,
        },
        ..GinConfig::default()
    }
}

fn list(s: &MonomialSpace) -> String {
    s.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")
}

fn basis_text(v: &FormSpace) -> String {
    let mut out = format!("dim: {}\n", v.dim());
    for b in v.basis_polynomials() {
        out.push_str(&format!("  {b}\n"));
    }
    out
}

#[derive(Serialize)]
struct SpaceReport {
    nvars: usize,
    degree: u32,
    dim: usize,
    basis: Vec<String>,
    initial_space: MonomialSpace,
}

impl SpaceReport {
    fn new(v: &FormSpace) -> Self {
        SpaceReport {
            nvars: v.nvars(),
            degree: v.degree(),
            dim: v.dim(),
            basis: v.basis_polynomials().iter().map(|b| b.to_string()).collect(),
            initial_space: v.initial_space(),
        }
    }
}

fn space_outcome(command: &str, v: &FormSpace) -> Outcome {
    let text = format!("{}in: {{{}}}\n", basis_text(v), list(&v.initial_space()));
    Outcome::new(command, None, text, SpaceReport::new(v), 0)
}

fn parse_monomial(text: &str, nvars: usize) -> Result<Monomial> {
    let p = parse_polynomial(text, nvars)?;
    match p.terms().collect::<Vec<_>>().as_slice() {
        [(m, c)] if c == &&Scalar::from_integer(1.into()) => Ok((*m).clone()),
        _ => Err(Error::Invalid(format!("`{text}` is not a monomial"))),
    }
}

fn parse_point(text: &str, nvars: usize) -> Result<Vec<Scalar>> {
    let coords: Vec<Scalar> = text
        .split(',')
        .map(|c| {
            let c = c.trim();
            c.parse::<Scalar>()
                .map_err(|_| Error::Invalid(format!("bad coordinate `{c}` in witness `{text}`")))
        })
        .collect::<Result<_>>()?;
    if coords.len() != nvars {
        return Err(Error::Dimension(format!("witness `{text}` needs {nvars} coordinates")));
    }
    Ok(coords)
}

fn gin_text(r: &GinResult) -> String {
    let mut text = format!(
        "seed: {}\ngin: {{{}}}\ntrials: {} agreeing, {} discarded\n",
        r.seed,
        list(&r.monomials),
        r.trials,
        r.discarded
    );
    if r.monomials.nvars() == 3 {
        text.push_str(&render_staircase(&r.monomials, StaircaseFormat::Ascii).expect("three variables"));
    }
    text
}

fn verdict_line(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "verdict: pass\n",
        Verdict::Fail => "verdict: FAIL\n",
        Verdict::Inconclusive => "verdict: inconclusive\n",
    }
}

fn require_file(file: &Option<PathBuf>, check: &str) -> Result<InputDocument> {
    match file {
        Some(f) => read_document(f),
        None => Err(Error::Invalid(format!("verify {check} needs an input file"))),
    }
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::In { file } => {
            let v = read_document(&file)?.form_space()?;
            Ok(space_outcome("in", &v))
        }
        Command::Gin { file, rand } => {
            let doc = read_document(&file)?;
            let cfg = gin_config(&rand, Some(&doc));
            let r = gin(&doc.form_space()?, &cfg)?;
            Ok(Outcome::new("gin", Some(cfg.seed), gin_text(&r), &r, 0))
        }
        Command::Colon { file, by, by_form } => {
            let doc = read_document(&file)?;
            let v = doc.form_space()?;
            let w = match (by, by_form) {
                (Some(m), _) => v.colon_monomial(&parse_monomial(&m, doc.nvars)?)?,
                (None, Some(h)) => {
                    let h = parse_polynomial(&h, doc.nvars)?;
                    if h.degree() != 1 || h.is_zero() {
                        return Err(Error::Invalid(format!("`{h}` is not a nonzero linear form")));
                    }
                    v.colon_form(&h)?
                }
                (None, None) => unreachable!("clap requires one of --by, --by-form"),
            };
            Ok(space_outcome("colon", &w))
        }
        Command::Restrict { file, drop } => {
            let v = read_document(&file)?.form_space()?;
            Ok(space_outcome("restrict", &v.restrict(drop)?))
        }
        Command::Jideal { file, restrict, rand } => {
            let doc = read_document(&file)?;
            let cfg = gin_config(&rand, Some(&doc));
            let g = gin(&doc.form_space()?, &cfg)?;
            let t = if restrict == 0 {
                g.monomials.clone()
            } else {
                g.monomials.restrict(restrict)?
            };
            let j = build_j(&t)?;
            let gens = j.ideal.generators();
            let flag = j.has_generator_in_source_degree();
            let text = format!(
                "seed: {}\ngens: {}; generator in degree d: {}\n",
                cfg.seed,
                gens.iter()
                    .map(|m| format!("{m} (deg {})", m.degree()))
                    .collect::<Vec<_>>()
                    .join(", "),
                if flag { "yes" } else { "no" }
            );
            let report = serde_json::json!({
                "gin": g.monomials,
                "restricted_by": restrict,
                "generators": gens,
                "generator_in_degree": flag,
                "degree": t.degree(),
            });
            Ok(Outcome::new("jideal", Some(cfg.seed), text, report, 0))
        }
        Command::Hilbert {
            file,
            max_degree,
            quotient,
        } => {
            let doc = read_document(&file)?;
            let v = doc.form_space()?;
            let top = max_degree.or(doc.options.maxdeg).unwrap_or(v.degree() + DEFAULT_WINDOW);
            let values = GradedIdealSlice::new(v, top).hilbert_values(quotient);
            let text: String = values.iter().map(|(e, h)| format!("{e}: {h}\n")).collect();
            let report = serde_json::json!({ "quotient": quotient, "values": values });
            Ok(Outcome::new("hilbert", None, text, report, 0))
        }
        Command::Locus {
            file,
            max_degree,
            witness,
        } => {
            let doc = read_document(&file)?;
            let v = doc.form_space()?;
            let top = max_degree.or(doc.options.maxdeg).unwrap_or(v.degree() + DEFAULT_WINDOW);
            let points = witness
                .iter()
                .map(|w| parse_point(w, doc.nvars))
                .collect::<Result<Vec<_>>>()?;
            let r = analyze_locus(&v, top, &points)?;
            let mut text: String = r
                .quotient_hilbert
                .iter()
                .map(|(e, h)| format!("{e}: {h}\n"))
                .collect();
            text.push_str(&format!("locus: {}\n", serde_json::to_string(&r.status).expect("plain")));
            for w in &r.witnesses {
                text.push_str(&format!(
                    "witness ({}): {}\n",
                    w.point.join(", "),
                    if w.vanishes { "vanishes" } else { "does not vanish" }
                ));
            }
            text.push_str(verdict_line(r.verdict));
            Ok(Outcome::new("locus", None, text, &r, r.verdict.exit_code()))
        }
        Command::Verify {
            check,
            file,
            depth,
            max_degree,
            a,
            b,
            m,
            n,
            degree_cap,
            rand,
        } => verify(check, file, depth, max_degree, (a, b, m, n, degree_cap), rand),
        Command::Staircase {
            file,
            format,
            as_given,
            rand,
        } => {
            let doc = read_document(&file)?;
            let cfg = gin_config(&rand, Some(&doc));
            let v = doc.form_space()?;
            let (s, seed) = if as_given {
                (v.initial_space(), None)
            } else {
                (gin(&v, &cfg)?.monomials, Some(cfg.seed))
            };
            let fmt = match format {
                Format::Ascii => StaircaseFormat::Ascii,
                Format::Json => StaircaseFormat::Json,
            };
            let mut text = String::new();
            if let Some(seed) = seed {
                if matches!(format, Format::Ascii) {
                    text.push_str(&format!("seed: {seed}\n"));
                }
            }
            text.push_str(&render_staircase(&s, fmt)?);
            let diagram: serde_json::Value =
                serde_json::from_str(&render_staircase(&s, StaircaseFormat::Json)?).expect("own output");
            Ok(Outcome::new("staircase", seed, text, diagram, 0))
        }
    }
}

/// Move a file's space to general coordinates, recording the seed.
fn general_position(doc: &InputDocument, cfg: &GinConfig) -> Result<FormSpace> {
    crate::gin::generify_with_range(&doc.form_space()?, trial_seed(cfg.seed, u64::MAX), cfg.range)
}

fn verify(
    check: Check,
    file: Option<PathBuf>,
    depth: Option<usize>,
    max_degree: Option<u32>,
    (a, b, m, n, cap): (u32, u32, usize, usize, u32),
    rand: Randomness,
) -> Result<Outcome> {
    match check {
        Check::MainA | Check::MainB => {
            let name = if matches!(check, Check::MainA) { "main-a" } else { "main-b" };
            let doc = require_file(&file, name)?;
            let cfg = gin_config(&rand, Some(&doc));
            let v = general_position(&doc, &cfg)?;
            let top = max_degree.or(doc.options.maxdeg).unwrap_or(v.degree() + 3);
            let r = match check {
                Check::MainA => check_restricted_ideal(&v, top)?,
                _ => check_restricted_ideal_at_depth(&v, depth.unwrap_or(1), top)?,
            };
            let mut text = format!(
                "seed: {}\nin: {{{}}}\nhypothesis holds: {}\nJ gens: {}\n",
                cfg.seed,
                list(&r.initial_space),
                r.hypothesis_holds,
                r.j_generators.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")
            );
            for (e, ok) in &r.per_degree_match {
                text.push_str(&format!("degree {e}: {}\n", if *ok { "match" } else { "differ" }));
            }
            text.push_str(verdict_line(r.verdict));
            Ok(Outcome::new(name, Some(cfg.seed), text, &r, r.verdict.exit_code()))
        }
        Check::Corollary => {
            let doc = require_file(&file, "corollary")?;
            let cfg = gin_config(&rand, Some(&doc));
            let v = general_position(&doc, &cfg)?;
            let top = max_degree.or(doc.options.maxdeg).unwrap_or(v.degree() + DEFAULT_WINDOW);
            let r = check_locus_codimension(&v, depth.unwrap_or(0), top)?;
            let show = |c: Option<usize>| c.map_or("none".to_string(), |c| c.to_string());
            let text = format!(
                "seed: {}\ncodim J: {}\ncodim locus: {}\napplies: {}\n{}",
                cfg.seed,
                show(r.c_j),
                show(r.c_locus),
                r.applies,
                verdict_line(r.verdict)
            );
            Ok(Outcome::new("corollary", Some(cfg.seed), text, &r, r.verdict.exit_code()))
        }
        Check::Examples => {
            let mut config = StaircaseExamplesConfig::default();
            let mut seed = rand.seed;
            if let Some(f) = &file {
                let doc = read_document(f)?;
                seed = seed.or(doc.options.seed);
                if let (Ok(q), Ok(p)) = (doc.candidate("q"), doc.candidate("p")) {
                    config.quadric = q.clone();
                    config.cubic = p.clone();
                    config.expected_tail_a = None;
                }
            }
            config.seed = seed.unwrap_or(0);
            if let Some(t) = rand.trials {
                config.trials = t;
            }
            if let Some(top) = max_degree {
                config.max_degree = top;
            }
            let r = check_staircase_examples(&config)?;
            let mut text = format!("seed: {}\ntarget: {{{}}}\n", config.seed, list(&r.target));
            for c in &r.cases {
                text.push_str(&format!(
                    "case {}: gin {} target, dim {}, locus {}: {}\n",
                    c.name,
                    if c.gin_matches { "=" } else { "!=" },
                    c.dim,
                    serde_json::to_string(&c.locus.status).expect("plain"),
                    if c.pass { "pass" } else { "FAIL" }
                ));
            }
            for s in &r.span_checks {
                text.push_str(&format!(
                    "{}: dim {}, equals target space: {}\n",
                    s.name, s.dim, s.equals_target
                ));
            }
            text.push_str(verdict_line(r.verdict));
            Ok(Outcome::new("examples-2.6", Some(config.seed), text, &r, r.verdict.exit_code()))
        }
        Check::Quartic => {
            let seed = rand.seed.unwrap_or(0);
            if let Some(f) = &file {
                let doc = read_document(f)?;
                let cfg = gin_config(&rand, Some(&doc));
                let v = general_position(&doc, &cfg)?;
                let r = explore_quartic_colons(&v, cfg.seed)?;
                let text = format!(
                    "seed: {}\nin(V:x3): {{{}}}\nV:h^2 nonzero: {}\nV:h1h2 nonzero: {}\n",
                    cfg.seed,
                    list(&r.initial_colon_last),
                    r.colon_square_nonzero,
                    r.colon_product_nonzero
                );
                return Ok(Outcome::new("example-2.7", Some(cfg.seed), text, &r, 0));
            }
            let r = check_quartic_example(seed)?;
            let text = format!(
                "seed: {}\ngin: {{{}}} ({})\nin(V:x3): {{{}}} ({})\nV:h^2 nonzero: {}\nV:h1h2 nonzero: {}\n{}",
                seed,
                list(&r.gin),
                if r.gin_matches { "as expected" } else { "UNEXPECTED" },
                list(&r.colons.initial_colon_last),
                if r.initial_colon_matches { "as expected" } else { "UNEXPECTED" },
                r.colons.colon_square_nonzero,
                r.colons.colon_product_nonzero,
                verdict_line(r.verdict)
            );
            Ok(Outcome::new("example-2.7", Some(seed), text, &r, r.verdict.exit_code()))
        }
        Check::CommonFactor => {
            let seed = rand.seed.unwrap_or(0);
            let r = check_common_factor_scenario(a, b, m, n, seed, cap)?;
            let text = format!(
                "seed: {}\nfactor: {}\ngin: {{{}}} ({})\nfactor divides: {}\nrestriction: {:?}\ncodim J: {}\n{}",
                seed,
                r.factor,
                list(&r.gin),
                if r.gin_matches { "as expected" } else { "UNEXPECTED" },
                r.factor_divides,
                r.restriction.verdict,
                r.codimension.c_j.map_or("none".into(), |c| c.to_string()),
                verdict_line(r.verdict)
            );
            Ok(Outcome::new("theorem-1", Some(seed), text, &r, r.verdict.exit_code()))
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::NonGeneric { .. } | Error::Randomness(_) => 3,
        _ => 1,
    }
}

/// Run the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let json = cli.json;
    match execute(cli.command) {
        Ok(o) => {
            let _ = if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json value"))
            } else {
                write!(out, "{}", o.text)
            };
            o.code
        }
        Err(e) => {
            let code = error_code(&e);
            if json {
                let v = serde_json::json!({ "error": e.to_string(), "exit_code": code });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json value"));
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}
