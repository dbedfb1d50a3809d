//! Command-line front end: `check`, `report`, `map`, `builtin` and `verify-paper`.

pub mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use nilalb_core::albanese::{albanese_lattice, albanese_map, FoliatedNilmanifold, GroupWord};
use nilalb_core::corpus;
use nilalb_core::document::{BuildError, InputDocument};
use nilalb_core::exactalg::parse_rational;
use nilalb_core::geometry::bundle_like_check;
use nilalb_core::liealg::{render_vector, LeafSubalgebra};
use nilalb_core::report::build_report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "nilalb", version, about = "Exact basic cohomology and basic Albanese tori of invariant foliations on nilmanifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate the algebra, the leaf subalgebra and the bundle-like condition.
    Check { file: PathBuf },
    /// Run the full analysis.
    Report {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Rational value of s used for the positive-definiteness check.
        #[arg(long)]
        param_sample: Option<String>,
    },
    /// Evaluate the basic Albanese map on a word "j:t,j:t,..." (1-based j, rational t).
    Map {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Report on a built-in example, or print its input file with --emit.
    Builtin {
        name: String,
        #[arg(long)]
        emit: bool,
    },
    /// Reproduce the Iwasawa example claim by claim.
    VerifyPaper {
        /// Check the claims against another input file instead of the built-in model.
        #[arg(long, hide = true)]
        input: Option<PathBuf>,
    },
}

fn load(path: &Path, err: &mut dyn Write) -> Result<InputDocument, i32> {
    InputDocument::read(path).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_INPUT
    })
}

fn build(doc: &InputDocument, err: &mut dyn Write) -> Result<FoliatedNilmanifold, i32> {
    doc.build().map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        match e {
            BuildError::Input(_) => EXIT_INPUT,
            BuildError::Model(_) => EXIT_CHECK_FAILED,
        }
    })
}

fn cmd_check(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, i32> {
    let doc = load(path, err)?;
    let alg = doc.algebra().map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_INPUT
    })?;
    let names = alg.names().to_vec();
    let _ = writeln!(out, "{}: {}-dimensional algebra", doc.name, alg.dim());
    let validation = alg.validate();
    if !validation.passes() {
        for v in validation.describe(&alg) {
            let _ = writeln!(out, "validation: FAILED: {v}");
        }
        let _ = writeln!(out, "check failed");
        return Ok(EXIT_CHECK_FAILED);
    }
    let _ = writeln!(out, "validation: ok (nilpotency class {})", validation.nilpotency_class.unwrap_or(0));
    let leaf = match LeafSubalgebra::new(&alg, doc.leaf_space()) {
        Ok(l) => l,
        Err(e) => {
            let _ = writeln!(out, "foliation: FAILED: {e}");
            let _ = writeln!(out, "check failed");
            return Ok(EXIT_CHECK_FAILED);
        }
    };
    let kind = if leaf.is_ideal() { "ideal" } else { "subalgebra, not an ideal" };
    let _ = writeln!(out, "foliation: ok (dimension {}, {kind})", leaf.dim());
    let fnm = build(&doc, err)?;
    let bl = bundle_like_check(fnm.algebra(), fnm.leaf(), fnm.metric()).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_CHECK_FAILED
    })?;
    match bl.witness {
        None => {
            let _ = writeln!(out, "bundle-like: ok");
            let _ = writeln!(out, "check passed");
            Ok(EXIT_OK)
        }
        Some(w) => {
            let _ = writeln!(
                out,
                "bundle-like: FAILED: (L_v g)(x, y) = {} for v = {}, x = {}, y = {}",
                w.value,
                render_vector(&w.v, &names),
                render_vector(&w.x, &names),
                render_vector(&w.y, &names)
            );
            let _ = writeln!(out, "check failed");
            Ok(EXIT_CHECK_FAILED)
        }
    }
}

fn write_report(fnm: &FoliatedNilmanifold, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, i32> {
    let report = build_report(fnm).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_CHECK_FAILED
    })?;
    let text = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let _ = out.write_all(text.as_bytes());
    Ok(EXIT_OK)
}

fn cmd_report(
    path: &Path,
    format: Format,
    sample: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, i32> {
    let doc = load(path, err)?;
    let mut fnm = build(&doc, err)?;
    if let Some(text) = sample {
        let x = parse_rational(text).map_err(|e| {
            let _ = writeln!(err, "error: --param-sample: {e}");
            EXIT_INPUT
        })?;
        fnm = fnm.with_param_sample(x);
    }
    write_report(&fnm, format, out, err)
}

fn cmd_map(path: &Path, word: &str, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, i32> {
    let doc = load(path, err)?;
    let word = GroupWord::parse(word).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_INPUT
    })?;
    let fnm = build(&doc, err)?;
    let result = albanese_lattice(&fnm).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_CHECK_FAILED
    })?;
    let point = albanese_map(&result, &word).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_INPUT
    })?;
    let _ = writeln!(out, "{point}");
    Ok(EXIT_OK)
}

fn cmd_builtin(name: &str, emit: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, i32> {
    let example = corpus::get(name).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_INPUT
    })?;
    if emit {
        let _ = out.write_all(example.source.as_bytes());
        return Ok(EXIT_OK);
    }
    write_report(&example.fnm, Format::Text, out, err)
}

fn cmd_verify(input: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, i32> {
    let (source, doc) = match input {
        Some(path) => (path.display().to_string(), load(path, err)?),
        None => {
            let ex = corpus::get("iwasawa9").expect("built-in example");
            ("built-in iwasawa9".to_string(), ex.document)
        }
    };
    let claims = verify::check_document(&doc);
    let _ = out.write_all(verify::render_ledger(&source, &claims).as_bytes());
    Ok(if claims.iter().all(|c| c.passed) { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Check { file } => cmd_check(file, out, err),
        Command::Report { file, format, param_sample } => cmd_report(file, *format, param_sample.as_deref(), out, err),
        Command::Map { file, word } => cmd_map(file, word, out, err),
        Command::Builtin { name, emit } => cmd_builtin(name, *emit, out, err),
        Command::VerifyPaper { input } => cmd_verify(input.as_deref(), out, err),
    };
    result.unwrap_or_else(|code| code)
}

/// Parses arguments and runs; usage errors map to the input-error exit code.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            code
        }
    }
}
