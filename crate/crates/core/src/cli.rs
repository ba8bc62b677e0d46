//! Command-line front end for the `sp4` binary.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{MathError, Result};
use crate::exact::{Character, HalfInt};
use crate::gkmod::ktypes;
use crate::intertwine::theorem::{genfun_constant, long_operator_genfun_order};
use crate::intertwine::{long_operator_product, mellin_numeric, simple_operator, OperatorBlock, OperatorKind};
use crate::intertwine::block::parse_lambda;
use crate::verify::{run_suites, Outcome, VerifyConfig};

#[derive(Parser, Debug)]
#[command(name = "sp4", version, about = "Intertwining operators for the minimal principal series of Sp(4,R)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Operator blocks for every K-type up to the bounds.
    Compute(Opts),
    /// Run the invariant suites and print a pass/fail table.
    Verify(Opts),
    /// K-types and their multiplicities.
    Ktypes(Opts),
    /// Mellin quadrature against the closed form.
    MellinCheck(Opts),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Induction sign pair `d1,d2` with entries in {0,1}.
    #[arg(long, default_value = "0,0", value_parser = parse_delta)]
    pub delta: (u8, u8),
    /// `p/q,p/q` for exact work, or `re+imi,re+imi` for floats.
    #[arg(long, default_value = "9/2,5/2", allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, default_value = "3")]
    pub jmax: HalfInt,
    /// Defaults to `--jmax`.
    #[arg(long)]
    pub nmax: Option<HalfInt>,
    #[arg(long, default_value = "LONG")]
    pub kind: OperatorKind,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Raise the verification bounds.
    #[arg(long)]
    pub deep: bool,
    /// Initial truncation order for Laurent expansions.
    #[arg(long)]
    pub trunc_order: Option<i64>,
}

fn parse_delta(s: &str) -> std::result::Result<(u8, u8), String> {
    let (a, b) = s.split_once(',').ok_or("expected d1,d2")?;
    let p = |x: &str| match x.trim() {
        "0" => Ok(0u8),
        "1" => Ok(1u8),
        other => Err(format!("delta entries must be 0 or 1, got {other:?}")),
    };
    Ok((p(a)?, p(b)?))
}

impl Opts {
    fn character(&self) -> Result<Character> {
        let (a, b) = self
            .lambda
            .split_once(',')
            .ok_or_else(|| MathError::Parse(format!("--lambda expects two comma-separated values, got {:?}", self.lambda)))?;
        Character::new(self.delta, parse_lambda(a.trim(), b.trim())?)
    }

    fn nmax(&self) -> HalfInt {
        self.nmax.unwrap_or(self.jmax)
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

fn exit_code(e: &MathError) -> i32 {
    match e {
        MathError::Pole(_) | MathError::OutOfRange(_) | MathError::Parse(_) => EXIT_CONFIG,
        _ => EXIT_FAILED,
    }
}

fn emit(opts: &Opts, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match &opts.out {
        Some(p) => fs::write(p, text).map_err(|e| MathError::Parse(format!("cannot write {}: {e}", p.display()))),
        None => {
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn compute_block(opts: &Opts, chi: &Character, kt: (HalfInt, HalfInt)) -> Result<OperatorBlock> {
    match opts.kind {
        OperatorKind::Long => long_operator_product(kt, chi),
        OperatorKind::LongGenfun => {
            let g = long_operator_genfun_order(kt, chi, opts.trunc_order)?;
            let p = long_operator_product(kt, chi)?;
            let c = genfun_constant(&g.block, &p.block)?;
            let mut block = g.block.divide_by(&c)?;
            block.omitted_kappa = p.block.omitted_kappa;
            Ok(OperatorBlock { block, ..g })
        }
        k => simple_operator(k, kt, chi),
    }
}

fn compute(opts: &Opts, stdout: &mut dyn Write) -> Result<()> {
    let chi = opts.character()?;
    let mut blocks = Vec::new();
    for kt in ktypes(chi.delta, opts.jmax, opts.nmax()) {
        blocks.push(compute_block(opts, &chi, (kt.j, kt.n))?);
    }
    let text = match opts.format {
        Format::Json => {
            let v: Vec<serde_json::Value> = blocks.iter().map(|b| b.to_json_value()).collect();
            serde_json::to_string_pretty(&v).expect("plain data serializes") + "\n"
        }
        Format::Csv => blocks.iter().map(|b| b.to_csv()).collect::<Vec<_>>().join("\n"),
    };
    emit(opts, &text, stdout)
}

fn seed() -> u64 {
    std::env::var("SP4_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or_else(rand::random)
}

fn verify(opts: &Opts, stdout: &mut dyn Write) -> Result<i32> {
    let chi = opts.character()?;
    let seed = seed();
    let cfg = VerifyConfig { chi, j_max: opts.jmax, deep: opts.deep, seed, trunc_order: opts.trunc_order };
    let reports = run_suites(&cfg);
    let mut text = format!("{:<40} {:>6} {:>6} {:>6} {:>6}\n", "suite", "cells", "pass", "fail", "error");
    let mut code = EXIT_OK;
    for r in &reports {
        let status = if r.ok() { "PASS" } else { "FAIL" };
        text += &format!(
            "{:<40} {:>6} {:>6} {:>6} {:>6}  {status}\n",
            r.name,
            r.cells.len(),
            r.passed(),
            r.failed(),
            r.errors()
        );
        for c in &r.cells {
            match &c.outcome {
                Outcome::Pass => {}
                Outcome::Fail(m) => {
                    text += &format!("    fail  {}: {m}\n", c.label);
                    code = code.max(EXIT_FAILED);
                }
                Outcome::Error(e) => {
                    text += &format!("    error {}: {e}\n", c.label);
                    code = code.max(exit_code(e));
                }
            }
        }
    }
    if code != EXIT_OK {
        text += &format!("SP4_SEED={seed}\n");
    }
    emit(opts, &text, stdout)?;
    Ok(code)
}

fn ktype_table(opts: &Opts, stdout: &mut dyn Write) -> Result<()> {
    let list = ktypes(opts.delta, opts.jmax, opts.nmax());
    let text = match opts.format {
        Format::Json => serde_json::to_string_pretty(&list).expect("plain data serializes") + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["j", "n", "multiplicity", "m"]).expect("in-memory write");
            for k in &list {
                let ms: Vec<String> = k.m_set.iter().map(|m| m.to_string()).collect();
                w.write_record([k.j.to_string(), k.n.to_string(), k.multiplicity().to_string(), ms.join(" ")])
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
    };
    emit(opts, &text, stdout)
}

fn mellin_check(opts: &Opts, stdout: &mut dyn Write) -> Result<i32> {
    let zs: &[f64] = if opts.deep { &[1.0, 1.5, 2.0, 2.5, 3.0, 4.5] } else { &[1.0, 1.5, 2.0, 2.5] };
    let mut text = format!("{:>5} {:>5} {:>22} {:>22} {:>10}\n", "z", "m", "quadrature", "Q(z,m)", "rel.err");
    let mut code = EXIT_OK;
    for &z in zs {
        for tm in 0..=3 {
            let m = HalfInt::from_twice(tm);
            let r = mellin_numeric(z, m)?;
            let status = if r.passed(1e-8) { "PASS" } else { "FAIL" };
            if !r.passed(1e-8) {
                code = EXIT_FAILED;
            }
            text += &format!(
                "{:>5} {:>5} {:>22.15e} {:>22.15e} {:>10.2e}  {status}\n",
                z, m.to_string(), r.numeric, r.expected, r.rel_err
            );
        }
    }
    emit(opts, &text, stdout)?;
    Ok(code)
}

/// Runs one command, writing reports to `stdout` and diagnostics to stderr.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> i32 {
    let res = match &cli.command {
        Command::Compute(o) => compute(o, stdout).map(|_| EXIT_OK),
        Command::Verify(o) => verify(o, stdout),
        Command::Ktypes(o) => ktype_table(o, stdout).map(|_| EXIT_OK),
        Command::MellinCheck(o) => mellin_check(o, stdout),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
