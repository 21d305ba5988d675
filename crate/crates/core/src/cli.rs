//! Command-line front end: per-crossing Morse and cluster data, matrix
//! printing, and the randomized self-test.
//!
//! Exit codes: 0 when every selected crossing satisfies the comparison, 1 on
//! a mismatch (or a self-test counterexample), 2 on invalid input.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{parse_braid, BraidWord};
use crate::compare::{verify_crossing, CrossingReport};
use crate::matgen::{self, SquareMatrix};
use crate::ring::{Polynomial, RationalFunction, Ring};
use crate::selftest::{run_selftest, SelftestConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bruhat-cluster", version, about = "Bruhat numbers and cluster variables of positive braid words")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-crossing differential, rook matrix, signed Bruhat product, braid
    /// matrix and cluster variable.
    Report(ReportArgs),
    /// Print generator, braid, half-twist or differential matrices.
    Matrices(MatricesArgs),
    /// Run the randomized invariant suites.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct BraidArgs {
    /// Braid word, e.g. "1 2 1^2 s3".
    #[arg(long, default_value = "")]
    pub braid: String,
    /// Number of strands.
    #[arg(long)]
    pub strands: usize,
    /// Restrict to crossing k (1-based).
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub braid: BraidArgs,
    /// Also print the unipotent factors and individual Bruhat numbers.
    #[arg(long)]
    pub detail: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    #[value(name = "x")]
    X,
    #[value(name = "B")]
    B,
    #[value(name = "P")]
    P,
    #[value(name = "w0")]
    W0,
    #[value(name = "diff")]
    Diff,
}

#[derive(Debug, Clone, Args)]
pub struct MatricesArgs {
    #[command(flatten)]
    pub braid: BraidArgs,
    #[arg(long, value_enum)]
    pub kind: MatrixKind,
}

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub words: usize,
    #[arg(long, default_value_t = 5)]
    pub max_strands: usize,
    #[arg(long, default_value_t = 12)]
    pub max_length: usize,
    /// Flip the comparison sign to check that the harness reports failures.
    #[arg(long, hide = true)]
    pub inject_sign_fault: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub braid: JsonBraid,
    pub crossings: Vec<JsonCrossing>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonBraid {
    pub strands: usize,
    pub letters: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonCrossing {
    pub k: usize,
    pub letter: usize,
    pub complement: usize,
    pub sign: i64,
    pub cluster_variable: String,
    pub sw_minor: String,
    pub bruhat_numbers: Option<Vec<JsonRational>>,
    pub not_top_cell_indices: Option<Vec<usize>>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRational {
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonMatrices {
    pub kind: String,
    pub matrices: Vec<JsonMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonMatrix {
    pub label: String,
    pub rows: Vec<Vec<String>>,
}

struct InputError(String);

impl<E: std::error::Error> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn load_word(args: &BraidArgs) -> Result<BraidWord, InputError> {
    let word = parse_braid(&args.braid, args.strands)?;
    if let Some(k) = args.k {
        if k == 0 || k > word.len() {
            return Err(InputError(format!("crossing {k} outside 1..={}", word.len())));
        }
    }
    Ok(word)
}

fn selected_crossings(word: &BraidWord, k: Option<usize>) -> Vec<usize> {
    match k {
        Some(k) => vec![k],
        None => (1..=word.len()).collect(),
    }
}

fn crossing_json(r: &CrossingReport) -> JsonCrossing {
    JsonCrossing {
        k: r.k,
        letter: r.letter,
        complement: r.complement,
        sign: r.sign,
        cluster_variable: r.cluster_variable.to_string(),
        sw_minor: r.sw_minor.to_string(),
        bruhat_numbers: r.bruhat_numbers.as_ref().map(|b| {
            b.values
                .iter()
                .map(|v| JsonRational {
                    num: v.numerator().to_string(),
                    den: v.denominator().to_string(),
                })
                .collect()
        }),
        not_top_cell_indices: r.not_top_cell.clone(),
        holds: r.holds,
    }
}

fn indent(m: &impl std::fmt::Display) -> String {
    m.to_string()
        .lines()
        .map(|l| format!("  {l}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn signed(s: i64) -> &'static str {
    if s < 0 {
        "-1"
    } else {
        "+1"
    }
}

fn report_text(word: &BraidWord, reports: &[CrossingReport], detail: bool) -> String {
    let mut out = String::new();
    let letters: Vec<String> = word.letters().iter().map(|i| i.to_string()).collect();
    out += &format!("braid: strands={} letters=[{}]\n", word.strands(), letters.join(", "));
    for r in reports {
        out += &format!(
            "\ncrossing {}: letter {}, complement {}, sign {}\n",
            r.k,
            r.letter,
            r.complement,
            signed(r.sign)
        );
        out += &format!("differential:\n{}\n", indent(&r.differential));
        if let Some(f) = &r.factorization {
            out += &format!("rook matrix:\n{}\n", indent(&f.rook));
            out += &format!("rook permutation: {}\n", f.perm);
            if detail {
                out += &format!("u_left:\n{}\n", indent(&f.u_left));
                out += &format!("u_right:\n{}\n", indent(&f.u_right));
            }
        }
        match (&r.bruhat_numbers, &r.not_top_cell) {
            (Some(b), _) if detail => {
                for (j, v) in b.values.iter().enumerate() {
                    out += &format!("bruhat number {}: {}\n", j + 1, v);
                }
            }
            (None, Some(v)) => {
                let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                out += &format!("not in the top cell: SW minors vanish at [{}]\n", v.join(", "));
            }
            _ => {}
        }
        out += &format!("signed bruhat product: {}\n", r.morse_side);
        out += &format!("braid matrix:\n{}\n", indent(&r.braid_matrix));
        out += &format!("cluster variable: {}\n", r.cluster_variable);
        out += &format!("holds: {}\n", r.holds);
    }
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.holds)
        .map(|r| r.k.to_string())
        .collect();
    if failed.is_empty() {
        out += &format!("\nresult: all {} crossings hold\n", reports.len());
    } else {
        out += &format!("\nresult: mismatch at crossings [{}]\n", failed.join(", "));
    }
    out
}

/// Runs `report` and returns `(exit code, output)`.
pub fn cmd_report(args: &ReportArgs) -> Result<(i32, String), String> {
    let word = load_word(&args.braid).map_err(|e| e.0)?;
    let ks = selected_crossings(&word, args.braid.k);
    let reports = ks
        .par_iter()
        .map(|&k| verify_crossing(&word, k, true))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let code = if reports.iter().all(|r| r.holds) {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    let text = match args.braid.format {
        Format::Text => report_text(&word, &reports, args.detail),
        Format::Json => {
            let json = JsonReport {
                braid: JsonBraid {
                    strands: word.strands(),
                    letters: word.letters().to_vec(),
                },
                crossings: reports.iter().map(crossing_json).collect(),
            };
            serde_json::to_string_pretty(&json).expect("plain data serializes") + "\n"
        }
    };
    Ok((code, text))
}

fn labeled<R: Ring>(label: String, m: &SquareMatrix<R>) -> JsonMatrix {
    JsonMatrix {
        label,
        rows: m
            .rows()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect(),
    }
}

/// Runs `matrices` and returns its output.
pub fn cmd_matrices(args: &MatricesArgs) -> Result<String, String> {
    let word = load_word(&args.braid).map_err(|e| e.0)?;
    let n = word.strands();
    let l = word.len();
    let k = args.braid.k.unwrap_or(l);
    let one = Polynomial::one(l);
    let vars = matgen::word_variables(&word);
    let err = |e: matgen::MatrixError| e.to_string();
    let (kind, matrices) = match args.kind {
        MatrixKind::X => {
            let ks = selected_crossings(&word, args.braid.k);
            let ms = ks
                .iter()
                .map(|&k| {
                    let i = word.letter(k);
                    matgen::gen_x(n, i, &vars[k - 1]).map(|m| labeled(format!("x_{i}(z{k})"), &m))
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            ("x", ms)
        }
        MatrixKind::B => {
            let m = matgen::braid_matrix_b_at(&word.prefix(k), &vars[..k], &one).map_err(err)?;
            ("B", vec![labeled(format!("B (crossings 1..{k})"), &m)])
        }
        MatrixKind::P => {
            let m = matgen::braid_matrix_p_at(&word.prefix(k), &vars[..k], &one).map_err(err)?;
            ("P", vec![labeled(format!("P (crossings 1..{k})"), &m)])
        }
        MatrixKind::W0 => {
            let m = matgen::w0_lift(n, &one).map_err(err)?;
            ("w0", vec![labeled(format!("w0 lift (n = {n})"), &m)])
        }
        MatrixKind::Diff => {
            let m = matgen::differential(&word, k).map_err(err)?;
            ("diff", vec![labeled(format!("differential {k}"), &m)])
        }
    };
    Ok(match args.braid.format {
        Format::Json => {
            let json = JsonMatrices {
                kind: kind.to_string(),
                matrices,
            };
            serde_json::to_string_pretty(&json).expect("plain data serializes") + "\n"
        }
        Format::Text => {
            let mut out = String::new();
            for (idx, m) in matrices.iter().enumerate() {
                if idx > 0 {
                    out.push('\n');
                }
                out += &format!("{}:\n", m.label);
                for row in &m.rows {
                    out += &format!("[{}]\n", row.join(", "));
                }
            }
            out
        }
    })
}

/// Runs `selftest` and returns `(exit code, output)`.
pub fn cmd_selftest(args: &SelftestArgs) -> (i32, String) {
    let config = SelftestConfig {
        seed: args.seed,
        words: args.words,
        max_strands: args.max_strands,
        max_length: args.max_length,
        inject_sign_fault: args.inject_sign_fault,
    };
    let mut out = format!(
        "selftest: seed={} words={} max_strands={} max_length={}\n",
        config.seed, config.words, config.max_strands, config.max_length
    );
    match run_selftest(&config) {
        Ok(summary) => {
            for (name, checks) in summary.suites {
                out += &format!("suite {name}: {checks} checks passed\n");
            }
            out += "selftest: pass\n";
            (EXIT_OK, out)
        }
        Err(ce) => {
            out += &format!("{ce}\nselftest: FAIL\n");
            (EXIT_MISMATCH, out)
        }
    }
}

fn emit(out_path: Option<&PathBuf>, text: &str, stdout: &mut dyn Write) -> io::Result<()> {
    match out_path {
        Some(p) => fs::write(p, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let (code, text, out_path) = match &cli.command {
        Command::Report(a) => match cmd_report(a) {
            Ok((code, text)) => (code, text, a.braid.out.clone()),
            Err(msg) => {
                let _ = writeln!(stderr, "error: {msg}");
                return EXIT_INPUT;
            }
        },
        Command::Matrices(a) => match cmd_matrices(a) {
            Ok(text) => (EXIT_OK, text, a.braid.out.clone()),
            Err(msg) => {
                let _ = writeln!(stderr, "error: {msg}");
                return EXIT_INPUT;
            }
        },
        Command::Selftest(a) => {
            let (code, text) = cmd_selftest(a);
            (code, text, None)
        }
    };
    if let Err(e) = emit(out_path.as_ref(), &text, stdout) {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_INPUT;
    }
    code
}

/// Parses a rational function from a JSON `{num, den}` pair.
pub fn parse_json_rational(r: &JsonRational, nvars: usize) -> Result<RationalFunction, String> {
    let num = Polynomial::parse(&r.num, nvars).map_err(|e| e.to_string())?;
    let den = Polynomial::parse(&r.den, nvars).map_err(|e| e.to_string())?;
    RationalFunction::new(num, den).map_err(|e| e.to_string())
}
