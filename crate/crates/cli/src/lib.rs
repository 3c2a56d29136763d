//! The `homform` command line: reads JSON form files, runs the analyses of the `homform` crate
//! and prints canonical JSON reports.
//!
//! Exit codes: 0 success, 2 invalid input, 3 size guard exceeded, 4 mathematical precondition
//! not met.

pub mod formats;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use homform::algebra::{algebra_from_form, hilbert_truncation, predicted_d2, predicted_d3};
use homform::frobenius::frobenius_quotient;
use homform::hopf::{
    coaction_check, contraction_identity_check, coproduct_check, counit_check, hopf_presentation, solve_wtilde,
    verify_antipode_identity, yang_baxter_check,
};
use homform::koszul::{gorenstein_cochain_check, koszul_complex, verdict_of, KoszulVerdict};
use homform::preregularity::analyze;
use homform::tensor::MultilinearForm;
use homform::twist::{twist_data, twist_relations};
use homform::{gallery, ErrorKind, FieldDescriptor, Limits};
use serde_json::{json, Value};

use formats::{form_to_json, matrix_strings, parse_field_flag, parse_form, parse_matrix, scalar_string};

pub const GUARD_ENV: &str = "HOMFORM_GUARD_COLUMNS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] homform::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io { .. } => 2,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Validation => 2,
                ErrorKind::Guard => 3,
                ErrorKind::Precondition => 4,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "homform", version, about = "Multilinear forms and the homogeneous algebras they define")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Largest number of columns any single linear system may have.
    #[arg(long, global = true)]
    pub guard_columns: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Expected field of the input: `rational` or `quadratic:C0,C1` for Q[t]/(t^2+C1 t+C0).
    #[arg(long, global = true)]
    pub field: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nondegeneracy, twist matrix Q, preregularity, 3-regularity and condition (iii)'.
    Analyze {
        file: PathBuf,
        #[arg(long = "N")]
        n: Option<usize>,
    },
    /// Graded dimensions of A(w,N) and comparison with the predicted series.
    Hilbert {
        file: PathBuf,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
    /// Homology of the Koszul complex up to an internal degree, and the Gorenstein pattern.
    KoszulCheck {
        file: PathBuf,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 7)]
        max_degree: usize,
    },
    /// Graded dimensions of the Koszul dual and of the Frobenius quotient.
    Dual {
        file: PathBuf,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Twist a form by a matrix L preserving it; prints the twisted form file.
    Twist {
        file: PathBuf,
        /// Matrix file holding L.
        #[arg(long)]
        matrix: PathBuf,
        /// Also compare the relation-level twist of A(w,N).
        #[arg(long = "N")]
        n: Option<usize>,
    },
    /// Relations, antipode and consistency checks of the Hopf algebra H(w, wt).
    Hopf {
        file: PathBuf,
        /// Form file holding a right inverse wt; computed when omitted.
        #[arg(long)]
        wtilde: Option<PathBuf>,
        /// Degree used for the coaction check (default m-1, or 2 for bilinear forms).
        #[arg(long = "N")]
        n: Option<usize>,
    },
    /// List the built-in forms, or print one as a form file.
    Gallery { name: Option<String> },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn read_form(path: &Path, expected: Option<&FieldDescriptor>) -> Result<MultilinearForm, CliError> {
    let w = parse_form(&read(path)?)?;
    if let Some(f) = expected {
        if f.join(&w.field()?).ok().as_ref() != Some(f) {
            return Err(CliError::Validation(format!(
                "{}: entries do not lie in the field given by --field",
                path.display()
            )));
        }
    }
    Ok(w)
}

/// Guard from `--guard-columns`, then the environment, then the default.
pub fn limits_from(flag: Option<usize>, env: Option<String>) -> Result<Limits, CliError> {
    if let Some(n) = flag {
        return Ok(Limits::new(n));
    }
    match env {
        Some(s) => s
            .trim()
            .parse()
            .map(Limits::new)
            .map_err(|_| CliError::Validation(format!("{GUARD_ENV}: \"{s}\" is not a column count"))),
        None => Ok(Limits::default()),
    }
}

fn report(command: &str, body: Value) -> Value {
    let mut v = body;
    let o = v.as_object_mut().expect("report bodies are objects");
    o.insert("format".into(), json!(formats::REPORT_FORMAT));
    o.insert("command".into(), json!(command));
    v
}

fn check_n(w: &MultilinearForm, n: usize) -> Result<(), CliError> {
    if n < 2 || n > w.arity() {
        return Err(CliError::Validation(format!("--N must satisfy 2 <= N <= {}, got {n}", w.arity())));
    }
    Ok(())
}

pub fn cmd_analyze(w: &MultilinearForm, n: Option<usize>) -> Result<Value, CliError> {
    if let Some(n) = n {
        check_n(w, n)?;
    }
    let r = analyze(w, n);
    Ok(report(
        "analyze",
        json!({
            "dimension": w.dim(),
            "arity": w.arity(),
            "one_site_nondegenerate": r.one_site_nondegenerate,
            "twist": r.twist.status(),
            "Q": r.q_matrix().map(matrix_strings),
            "preregular": r.preregular,
            "three_regular": r.three_regular,
            "three_regular_nullity": r.three_regular_nullity,
            "iii_prime": r.iii_prime,
        }),
    ))
}

pub fn cmd_hilbert(w: &MultilinearForm, n: usize, max_degree: usize, limits: &Limits) -> Result<Value, CliError> {
    check_n(w, n)?;
    let p = algebra_from_form(w, n)?;
    let dims = hilbert_truncation(&p, max_degree, limits)?;
    let r = analyze(w, Some(n));
    let predicted = if w.arity() == 2 && n == 2 && r.preregular {
        Some(predicted_d2(w.dim(), max_degree))
    } else if w.arity() == n + 1 && r.three_regular == Some(true) {
        Some(predicted_d3(w.dim(), n, max_degree))
    } else {
        None
    };
    let comparison = match &predicted {
        None => "not-applicable",
        Some(pr) if pr.iter().zip(&dims).all(|(a, b)| *a == *b as i64) => "match",
        Some(_) => "mismatch",
    };
    Ok(report(
        "hilbert",
        json!({"N": n, "max_degree": max_degree, "dims": dims, "predicted": predicted, "comparison": comparison}),
    ))
}

pub fn cmd_koszul_check(w: &MultilinearForm, n: usize, max_degree: usize, limits: &Limits) -> Result<Value, CliError> {
    check_n(w, n)?;
    let p = algebra_from_form(w, n)?;
    let c = koszul_complex(&p, max_degree, limits)?;
    let verdict = verdict_of(&c);
    let nonzero: Vec<Value> = c
        .homology
        .iter()
        .filter(|(_, &h)| h > 0)
        .map(|(&(pos, t), &h)| json!({"position": pos, "degree": t, "dim": h}))
        .collect();
    let mut body = json!({
        "N": n,
        "max_degree": max_degree,
        "summary": verdict.to_string(),
        "nonzero_homology": nonzero,
    });
    let o = body.as_object_mut().expect("object");
    match verdict {
        KoszulVerdict::PassUpTo { degree } => {
            o.insert("verdict".into(), json!("pass"));
            o.insert("degree".into(), json!(degree));
            let g = gorenstein_cochain_check(&p, max_degree, limits)?;
            o.insert(
                "gorenstein".into(),
                json!({
                    "global_dimension": g.global_dimension,
                    "pattern_holds": g.pattern_holds,
                    "summary": g.to_string(),
                }),
            );
        }
        KoszulVerdict::FailAt { position, degree, dim } => {
            o.insert("verdict".into(), json!("fail"));
            o.insert("fail_at".into(), json!({"position": position, "degree": degree, "dim": dim}));
        }
    }
    Ok(report("koszul-check", body))
}

pub fn cmd_dual(w: &MultilinearForm, n: usize, max_degree: Option<usize>, limits: &Limits) -> Result<Value, CliError> {
    check_n(w, n)?;
    let top = max_degree.unwrap_or(w.arity() + 1);
    let p = algebra_from_form(w, n)?;
    let dims = hilbert_truncation(&p.dual(), top, limits)?;
    let mut body = json!({"N": n, "max_degree": top, "dual_dims": dims});
    if analyze(w, None).preregular {
        let f = frobenius_quotient(w, n, limits)?;
        let o = body.as_object_mut().expect("object");
        o.insert("frobenius_dims".into(), json!(f.dims));
        o.insert("ideal_dims".into(), json!(f.ideal_dims()));
        o.insert("is_frobenius".into(), json!(f.is_frobenius()));
    }
    Ok(report("dual", body))
}

pub fn cmd_twist(w: &MultilinearForm, l_text: &str, n: Option<usize>) -> Result<Value, CliError> {
    let l = parse_matrix(l_text)?;
    if l.nrows() != w.dim() || l.ncols() != w.dim() {
        return Err(CliError::Validation(format!("L must be {0}x{0}", w.dim())));
    }
    let t = twist_data(w, &l)?;
    if let Some(n) = n {
        check_n(w, n)?;
        let lhs = twist_relations(&algebra_from_form(w, n)?, &l)?;
        if lhs != algebra_from_form(&t.twisted, n)? {
            return Err(homform::Error::Verification("relation-level and form-level twists differ".into()).into());
        }
    }
    form_to_json(&t.twisted)
}

pub fn cmd_hopf(
    w: &MultilinearForm,
    wt: Option<&MultilinearForm>,
    n: Option<usize>,
    limits: &Limits,
) -> Result<Value, CliError> {
    let wt = match wt {
        Some(x) => x.clone(),
        None => solve_wtilde(w)?,
    };
    let hp = hopf_presentation(w, &wt, limits)?;
    let d = w.dim();
    let n = n.unwrap_or(if w.arity() == 2 { 2 } else { w.arity() - 1 });
    check_n(w, n)?;
    let antipode: Vec<Value> = (0..d)
        .map(|mu| Value::Array((0..d).map(|nu| json!(hp.antipode(mu, nu).to_string())).collect()))
        .collect();
    let mut body = json!({
        "format": formats::HOPF_FORMAT,
        "dimension": d,
        "arity": w.arity(),
        "raw_families": hp.raw_family_count(),
        "relations": hp.relations().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "antipode": antipode,
        "checks": {
            "contraction": contraction_identity_check(w, &wt)?,
            "antipode": verify_antipode_identity(&hp, limits)?,
            "counit": counit_check(&hp),
            "coproduct": coproduct_check(&hp, limits)?,
            "coaction": coaction_check(w, n, &hp, limits)?,
        },
        "wtilde": form_to_json(&wt)?,
    });
    if w.arity() == 2 {
        let b = w.flatten(1)?;
        let yb = match yang_baxter_check(&b) {
            Ok(r) => json!({
                "c": r.q.c.to_string(),
                "q": [scalar_string(&r.q.roots.0), scalar_string(&r.q.roots.1)],
                "braid_plus": r.braid_plus,
                "braid_minus": r.braid_minus,
                "hecke_plus": r.hecke_plus,
                "hecke_minus": r.hecke_minus,
            }),
            Err(e) => json!({"error": e.to_string()}),
        };
        body.as_object_mut().expect("object").insert("yang_baxter".into(), yb);
    }
    Ok(body)
}

pub fn cmd_gallery(name: Option<&str>) -> Result<Value, CliError> {
    match name {
        Some(n) => {
            let e = gallery::by_name(n).map_err(|_| CliError::Validation(format!("unknown gallery entry \"{n}\"")))?;
            form_to_json(&e.form)
        }
        None => {
            let list: Vec<Value> = gallery::all_entries()?
                .into_iter()
                .map(|e| json!({"name": e.name, "N": e.degree, "dimension": e.form.dim(), "arity": e.form.arity(), "note": e.note}))
                .collect();
            Ok(report("gallery", json!({"entries": list})))
        }
    }
}

/// Runs one parsed invocation and returns the JSON document to emit.
pub fn execute(cli: &Cli, env_guard: Option<String>) -> Result<Value, CliError> {
    let limits = limits_from(cli.guard_columns, env_guard)?;
    let field = cli.field.as_deref().map(parse_field_flag).transpose()?;
    let field = field.as_ref();
    match &cli.command {
        Command::Analyze { file, n } => cmd_analyze(&read_form(file, field)?, *n),
        Command::Hilbert { file, n, max_degree } => cmd_hilbert(&read_form(file, field)?, *n, *max_degree, &limits),
        Command::KoszulCheck { file, n, max_degree } => {
            cmd_koszul_check(&read_form(file, field)?, *n, *max_degree, &limits)
        }
        Command::Dual { file, n, max_degree } => cmd_dual(&read_form(file, field)?, *n, *max_degree, &limits),
        Command::Twist { file, matrix, n } => cmd_twist(&read_form(file, field)?, &read(matrix)?, *n),
        Command::Hopf { file, wtilde, n } => {
            let w = read_form(file, field)?;
            let wt = wtilde.as_deref().map(|p| read_form(p, None)).transpose()?;
            cmd_hopf(&w, wt.as_ref(), *n, &limits)
        }
        Command::Gallery { name } => cmd_gallery(name.as_deref()),
    }
}

/// Canonical text of a JSON document: sorted keys, two-space indentation, trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = execute(&cli, std::env::var(GUARD_ENV).ok()).and_then(|v| {
        let text = render(&v);
        match &cli.output {
            Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.clone(), source }),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
