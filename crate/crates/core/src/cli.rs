//! Command-line front end.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::aniso::{check_fixture, has_primitive_zero_mod, AnisoCheck};
use crate::cert::Certificate;
use crate::error::{Error, Result};
use crate::forms::{parse_coeff, AdditiveForm, DEFAULT_PRECISION};
use crate::powers::{fourth_power_values, unit_fourth_powers};
use crate::qring::{Field, QuadRing};
use crate::solver::solve;

const GRAMMAR: &str = "\
form  := coeff (',' coeff)*
coeff := term ('+' term)*
term  := int | int '*' pexp | pexp
pexp  := 'p' ['^' uint]        (p is the uniformizer)
int   := ['-'] uint
example: \"1,1,p+p^3,-2*p^2\"";

#[derive(Debug, Parser)]
#[command(name = "quartic", version, about = "Additive quartic forms over ramified quadratic extensions of Q_2")]
pub struct Cli {
    /// Worker threads for parallel subcommands (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Uniformizers and the expansion of 2, recomputed and cross-checked.
    Fields {
        #[arg(long)]
        json: bool,
    },
    /// Fourth powers modulo π^k.
    Powers {
        #[arg(long)]
        field: Field,
        #[arg(long)]
        modulus: u32,
        /// Include non-units (all x instead of x a unit).
        #[arg(long)]
        all: bool,
        #[arg(long)]
        json: bool,
    },
    /// π-adic digits of a coefficient expression.
    Expand {
        #[arg(long)]
        field: Field,
        #[arg(long)]
        digits: u32,
        expr: String,
    },
    /// Finds a primitive zero modulo π^precision and prints a certificate.
    Solve {
        #[arg(long)]
        field: Field,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
        #[arg(long)]
        json: bool,
        coeffs: String,
    },
    /// Decides whether a form has a primitive zero modulo π^k.
    CheckAniso {
        #[arg(long)]
        field: Field,
        #[arg(long)]
        modulus: u32,
        #[arg(long)]
        json: bool,
        /// Exit 1 unless the answer matches.
        #[arg(long)]
        expect: Option<Answer>,
        coeffs: String,
    },
    /// Runs the anisotropy fixtures.
    VerifyPaper {
        #[arg(long)]
        field: Option<Field>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Answer {
    Yes,
    No,
}

#[derive(Debug, Serialize)]
struct FieldRow {
    field: Field,
    radicand: i64,
    uniformizer: &'static str,
    two_mod_pi7: String,
    expected: &'static str,
    ok: bool,
}

fn field_rows() -> Result<Vec<FieldRow>> {
    Field::ALL
        .iter()
        .map(|&f| {
            let ring = QuadRing::new(f);
            let two = ring.make(2, 0, ring.max_prec())?.digits(7)?.to_string();
            let expected = f.two_mod_pi7();
            Ok(FieldRow { field: f, radicand: f.radicand(), uniformizer: f.uniformizer(), ok: two == expected, two_mod_pi7: two, expected })
        })
        .collect()
}

fn usage_error(e: &Error) -> bool {
    matches!(e, Error::Syntax { .. } | Error::ZeroCoefficient { .. } | Error::Precision { .. } | Error::InvalidArgument(_))
}

/// Parses `args` (including the program name) and runs the command, writing
/// to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli.command, out)),
            Err(e) => Err(Error::InvalidArgument(e.to_string())),
        },
        None => execute(&cli.command, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            if matches!(e, Error::Syntax { .. }) {
                let _ = writeln!(out, "\ngrammar:\n{GRAMMAR}");
            }
            if usage_error(&e) {
                2
            } else {
                1
            }
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Internal(e.to_string())
}

fn json<T: Serialize>(out: &mut (dyn Write + Send), value: &T) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))?).map_err(io)
}

fn execute(cmd: &Command, out: &mut (dyn Write + Send)) -> Result<i32> {
    match cmd {
        Command::Fields { json: as_json } => {
            let rows = field_rows()?;
            if *as_json {
                json(out, &rows)?;
            } else {
                for r in &rows {
                    let mark = if r.ok { "ok" } else { "MISMATCH" };
                    writeln!(out, "{:<8} m={:<4} π={:<8} 2 ≡ {} (mod π^7)  {mark}", r.field, r.radicand, r.uniformizer, r.two_mod_pi7).map_err(io)?;
                }
            }
            Ok(if rows.iter().all(|r| r.ok) { 0 } else { 1 })
        }
        Command::Powers { field, modulus, all, json: as_json } => {
            let ring = QuadRing::new(*field);
            let set = if *all { fourth_power_values(ring, *modulus)? } else { unit_fourth_powers(ring, *modulus)? };
            let items: Vec<String> = set.iter().map(ToString::to_string).collect();
            if *as_json {
                json(out, &items)?;
            } else {
                for s in items {
                    writeln!(out, "{s}").map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Expand { field, digits, expr } => {
            let ring = QuadRing::new(*field);
            let c = parse_coeff(expr, ring, ring.max_prec())?;
            writeln!(out, "{}", c.digits(*digits)?).map_err(io)?;
            Ok(0)
        }
        Command::Solve { field, precision, json: as_json, coeffs } => {
            let ring = QuadRing::new(*field);
            let form = AdditiveForm::parse(coeffs, ring, ring.max_prec())?;
            let witness = solve(&form, *precision)?;
            let cert = Certificate::new(&form, &witness)?;
            if *as_json {
                writeln!(out, "{}", cert.to_json()).map_err(io)?;
            } else {
                writeln!(out, "zero modulo π^{} (lifted x{})", cert.check_modulus, cert.lifted_index).map_err(io)?;
                for (i, x) in cert.assignment.iter().enumerate() {
                    writeln!(out, "x{i} = {x}").map_err(io)?;
                }
                writeln!(out, "F(x) = {}", cert.residual).map_err(io)?;
            }
            Ok(0)
        }
        Command::CheckAniso { field, modulus, json: as_json, expect, coeffs } => {
            let ring = QuadRing::new(*field);
            let form = AdditiveForm::parse(coeffs, ring, ring.max_prec())?;
            let zero = has_primitive_zero_mod(&form, *modulus)?;
            let answer = if zero.is_some() { Answer::Yes } else { Answer::No };
            let witness: Option<Vec<String>> = zero
                .map(|x| x.iter().map(|e| e.digits(*modulus).map(|d| d.to_string())).collect::<Result<_>>())
                .transpose()?;
            if *as_json {
                #[derive(Serialize)]
                struct Report<'a> {
                    field: Field,
                    modulus: u32,
                    primitive_zero: bool,
                    witness: &'a Option<Vec<String>>,
                }
                json(out, &Report { field: *field, modulus: *modulus, primitive_zero: answer == Answer::Yes, witness: &witness })?;
            } else {
                match &witness {
                    Some(w) => writeln!(out, "yes: primitive zero modulo π^{modulus}: {}", w.join(" ")),
                    None => writeln!(out, "no: no primitive zero modulo π^{modulus}"),
                }
                .map_err(io)?;
            }
            Ok(match expect {
                Some(e) if *e != answer => 1,
                _ => 0,
            })
        }
        Command::VerifyPaper { field, json: as_json } => {
            let fields: Vec<Field> = match field {
                Some(f) => vec![*f],
                None => Field::ALL.to_vec(),
            };
            let checks: Vec<AnisoCheck> = fields.par_iter().map(|&f| check_fixture(f)).collect::<Result<_>>()?;
            if *as_json {
                json(out, &checks)?;
            } else {
                for c in &checks {
                    let verdict = if c.pass { "PASS" } else { "FAIL" };
                    write!(out, "{verdict} {:<8} {} vars, mod π^{}: {}", c.field, c.variables, c.modulus, c.form).map_err(io)?;
                    if let Some(w) = &c.witness {
                        write!(out, "\n     primitive zero: {}", w.join(" ")).map_err(io)?;
                    }
                    if let Some(k) = c.anisotropic_from.filter(|&k| k != c.modulus) {
                        write!(out, "\n     no primitive zero from π^{k} on").map_err(io)?;
                    }
                    writeln!(out).map_err(io)?;
                }
            }
            Ok(if checks.iter().all(|c| c.pass) { 0 } else { 1 })
        }
    }
}
