//! Command-line front end for the poldif solver.
//!
//! Exit codes: 0 success, 1 verified-false or no solution, 2 usage and
//! input errors, 3 internal invariant violations.

use std::fmt::Display;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use poldif::expr::{self, VariableSet};
use poldif::poly::{apply_operator, Polynomial};
use poldif::selftest;
use poldif::solver::{self, SolveError, SolveOutcome};
use poldif::structured;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DEFECT: u8 = 3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Parser)]
#[command(
    name = "poldif",
    version,
    about = "Exact polynomial solutions of constant-coefficient PDEs p(D)f = q",
    after_help = "Polynomial arguments take an inline expression like \"x^2 + 1/2*y\" \
                  or @path to read one from a file."
)]
struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        env = "POLDIF_FORMAT",
        value_enum,
        default_value_t = OutputFormat::Text
    )]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct VarsArg {
    /// Comma-separated variable names (default: x,y).
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
}

impl VarsArg {
    fn resolve(&self) -> Result<VariableSet, u8> {
        match &self.vars {
            None => Ok(VariableSet::default()),
            Some(names) => {
                VariableSet::new(names.iter().cloned()).map_err(|e| fail(EXIT_USAGE, e))
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Find a particular polynomial solution of p(D)f = q.
    Solve {
        /// Operator polynomial p.
        #[arg(short = 'p', value_name = "EXPR")]
        operator: String,
        /// Right-hand side polynomial q.
        #[arg(short = 'q', value_name = "EXPR")]
        rhs: String,
        /// Also print a kernel basis and the free-parameter count.
        #[arg(long)]
        family: bool,
        /// Ambient total degree for the family (default: deg q + s).
        #[arg(long, requires = "family")]
        ambient: Option<u32>,
        #[command(flatten)]
        vars: VarsArg,
    },
    /// Check whether f solves p(D)f = q; prints the residual q - p(D)f.
    Verify {
        #[arg(short = 'p', value_name = "EXPR")]
        operator: String,
        /// Candidate solution f.
        #[arg(short = 'f', value_name = "EXPR")]
        candidate: String,
        #[arg(short = 'q', value_name = "EXPR")]
        rhs: String,
        #[command(flatten)]
        vars: VarsArg,
    },
    /// Print a basis of the polynomial kernel of p(D) in Pi_k.
    Kernel {
        #[arg(short = 'p', value_name = "EXPR")]
        operator: String,
        /// Ambient total degree k.
        #[arg(long)]
        ambient: u32,
        #[command(flatten)]
        vars: VarsArg,
    },
    /// Dimension bookkeeping: space dimensions, free-variable counts,
    /// kernel dimensions.
    Dims {
        /// Number of variables (with --degree).
        #[arg(long)]
        arity: Option<usize>,
        /// Total degree n: prints dim Pi_n (or the homogeneous slice with --hom).
        #[arg(long, allow_negative_numbers = true)]
        degree: Option<i32>,
        /// Count homogeneous polynomials of exact degree n instead.
        #[arg(long)]
        hom: bool,
        /// Free-variable count of the layer system: N M K.
        #[arg(long, num_args = 3, value_names = ["N", "M", "K"])]
        sigma: Option<Vec<u32>>,
        /// Bivariate kernel dimension: S K.
        #[arg(long = "kernel-dim", num_args = 2, value_names = ["S", "K"])]
        kernel_dim: Option<Vec<u32>>,
    },
    /// Apply the operator: print p(D)f.
    Apply {
        #[arg(short = 'p', value_name = "EXPR")]
        operator: String,
        #[arg(short = 'f', value_name = "EXPR")]
        target: String,
        #[command(flatten)]
        vars: VarsArg,
    },
    /// Brute-force solve on all of Pi_k, ignoring layer structure.
    Oracle {
        #[arg(short = 'p', value_name = "EXPR")]
        operator: String,
        #[arg(short = 'q', value_name = "EXPR")]
        rhs: String,
        /// Ambient total degree k.
        #[arg(long)]
        ambient: u32,
        #[command(flatten)]
        vars: VarsArg,
    },
    /// Run the seeded randomized property suite.
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = selftest::DEFAULT_CASES)]
        cases: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(cli))
}

fn run(cli: Cli) -> u8 {
    let format = cli.format;
    match cli.command {
        Command::Solve {
            operator,
            rhs,
            family,
            ambient,
            vars,
        } => cmd_solve(format, &operator, &rhs, family, ambient, &vars),
        Command::Verify {
            operator,
            candidate,
            rhs,
            vars,
        } => cmd_verify(format, &operator, &candidate, &rhs, &vars),
        Command::Kernel {
            operator,
            ambient,
            vars,
        } => cmd_kernel(format, &operator, ambient, &vars),
        Command::Dims {
            arity,
            degree,
            hom,
            sigma,
            kernel_dim,
        } => cmd_dims(format, arity, degree, hom, sigma, kernel_dim),
        Command::Apply {
            operator,
            target,
            vars,
        } => cmd_apply(format, &operator, &target, &vars),
        Command::Oracle {
            operator,
            rhs,
            ambient,
            vars,
        } => cmd_oracle(format, &operator, &rhs, ambient, &vars),
        Command::Selftest { seed, cases } => cmd_selftest(format, seed, cases),
    }
}

fn fail(code: u8, err: impl Display) -> u8 {
    eprintln!("error: {err}");
    code
}

fn solve_error_code(err: &SolveError) -> u8 {
    if err.is_internal_defect() {
        EXIT_DEFECT
    } else {
        EXIT_USAGE
    }
}

/// Reads a polynomial argument: inline text, or the contents of a file for
/// `@path`.
fn read_poly_text(raw: &str) -> Result<String, u8> {
    if let Some(path) = raw.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| fail(EXIT_USAGE, format!("cannot read `{path}`: {e}")))
    } else {
        Ok(raw.to_string())
    }
}

fn parse_poly(raw: &str, vars: &VariableSet) -> Result<Polynomial, u8> {
    let text = read_poly_text(raw)?;
    expr::parse(&text, vars).map_err(|e| fail(EXIT_USAGE, e))
}

fn print_outcome(format: OutputFormat, outcome: &SolveOutcome, vars: &VariableSet, family: bool) {
    match format {
        OutputFormat::Text => {
            if family {
                println!("particular: {}", expr::format(&outcome.particular, vars));
                for (i, f) in outcome.kernel_basis.iter().enumerate() {
                    println!("kernel[{i}]: {}", expr::format(f, vars));
                }
                println!("free count: {}", outcome.free_count);
            } else {
                println!("{}", expr::format(&outcome.particular, vars));
            }
        }
        OutputFormat::Structured => {
            println!("{}", structured::to_structured_outcome(outcome, vars));
        }
    }
}

fn cmd_solve(
    format: OutputFormat,
    operator: &str,
    rhs: &str,
    family: bool,
    ambient: Option<u32>,
    vars: &VarsArg,
) -> u8 {
    let vars = match vars.resolve() {
        Ok(v) => v,
        Err(code) => return code,
    };
    let p = match parse_poly(operator, &vars) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let q = match parse_poly(rhs, &vars) {
        Ok(q) => q,
        Err(code) => return code,
    };

    let result = if family {
        let ambient = ambient.unwrap_or_else(|| {
            // Default to the minimal ambient degree deg(q) + s; the zero
            // operator falls through to solution_family's own error.
            match p.zero_order() {
                Ok(s) => (q.degree() + s as i32).max(0) as u32,
                Err(_) => 0,
            }
        });
        solver::solution_family(&p, &q, ambient)
    } else {
        solver::solve_pde(&p, &q)
    };

    match result {
        Ok(outcome) => {
            print_outcome(format, &outcome, &vars, family);
            EXIT_OK
        }
        Err(e) => fail(solve_error_code(&e), e),
    }
}

fn cmd_verify(
    format: OutputFormat,
    operator: &str,
    candidate: &str,
    rhs: &str,
    vars: &VarsArg,
) -> u8 {
    let vars = match vars.resolve() {
        Ok(v) => v,
        Err(code) => return code,
    };
    let (p, f, q) = match (
        parse_poly(operator, &vars),
        parse_poly(candidate, &vars),
        parse_poly(rhs, &vars),
    ) {
        (Ok(p), Ok(f), Ok(q)) => (p, f, q),
        (Err(code), ..) | (_, Err(code), _) | (.., Err(code)) => return code,
    };
    let residual = match solver::verify(&p, &f, &q) {
        Ok(r) => r,
        Err(e) => return fail(solve_error_code(&e), e),
    };
    let verified = residual.is_zero();
    match format {
        OutputFormat::Text => {
            println!("{}", expr::format(&residual, &vars));
            if !verified {
                eprintln!("verified: false");
            }
        }
        OutputFormat::Structured => {
            let doc = json!({
                "residual": structured::polynomial_doc(&residual, &vars),
                "verified": verified,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
        }
    }
    if verified {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn cmd_kernel(format: OutputFormat, operator: &str, ambient: u32, vars: &VarsArg) -> u8 {
    let vars = match vars.resolve() {
        Ok(v) => v,
        Err(code) => return code,
    };
    let p = match parse_poly(operator, &vars) {
        Ok(p) => p,
        Err(code) => return code,
    };
    match solver::kernel_basis(&p, ambient) {
        Ok(basis) => {
            match format {
                OutputFormat::Text => {
                    for f in &basis {
                        println!("{}", expr::format(f, &vars));
                    }
                }
                OutputFormat::Structured => {
                    let docs: Vec<_> = basis
                        .iter()
                        .map(|f| structured::polynomial_doc(f, &vars))
                        .collect();
                    let doc = json!({ "kernel_basis": docs, "count": basis.len() });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
                }
            }
            EXIT_OK
        }
        Err(e) => fail(solve_error_code(&e), e),
    }
}

fn cmd_dims(
    format: OutputFormat,
    arity: Option<usize>,
    degree: Option<i32>,
    hom: bool,
    sigma: Option<Vec<u32>>,
    kernel_dim: Option<Vec<u32>>,
) -> u8 {
    let value = match (arity, degree, &sigma, &kernel_dim) {
        (Some(k), Some(n), None, None) => {
            if k == 0 {
                return fail(EXIT_USAGE, "arity must be at least 1");
            }
            if hom {
                solver::dim_hom(n, k)
            } else {
                solver::dim_pi(n, k)
            }
        }
        (None, None, Some(args), None) => {
            let (n, m, k) = (args[0], args[1], args[2] as usize);
            if k == 0 {
                return fail(EXIT_USAGE, "arity must be at least 1");
            }
            solver::sigma_free(n, m, k)
        }
        (None, None, None, Some(args)) => solver::kernel_dim(args[0], args[1]),
        _ => {
            return fail(
                EXIT_USAGE,
                "choose exactly one of: --arity K --degree N [--hom], --sigma N M K, \
                 --kernel-dim S K",
            );
        }
    };
    match format {
        OutputFormat::Text => println!("{value}"),
        OutputFormat::Structured => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "value": value })).expect("serializes")
            );
        }
    }
    EXIT_OK
}

fn cmd_apply(format: OutputFormat, operator: &str, target: &str, vars: &VarsArg) -> u8 {
    let vars = match vars.resolve() {
        Ok(v) => v,
        Err(code) => return code,
    };
    let (p, f) = match (parse_poly(operator, &vars), parse_poly(target, &vars)) {
        (Ok(p), Ok(f)) => (p, f),
        (Err(code), _) | (_, Err(code)) => return code,
    };
    let image = apply_operator(&p, &f).expect("arities match by construction");
    match format {
        OutputFormat::Text => println!("{}", expr::format(&image, &vars)),
        OutputFormat::Structured => {
            println!("{}", structured::to_structured_polynomial(&image, &vars));
        }
    }
    EXIT_OK
}

fn cmd_oracle(
    format: OutputFormat,
    operator: &str,
    rhs: &str,
    ambient: u32,
    vars: &VarsArg,
) -> u8 {
    let vars = match vars.resolve() {
        Ok(v) => v,
        Err(code) => return code,
    };
    let (p, q) = match (parse_poly(operator, &vars), parse_poly(rhs, &vars)) {
        (Ok(p), Ok(q)) => (p, q),
        (Err(code), _) | (_, Err(code)) => return code,
    };
    match solver::oracle_solve(&p, &q, ambient) {
        Ok(Some(f)) => {
            match format {
                OutputFormat::Text => println!("{}", expr::format(&f, &vars)),
                OutputFormat::Structured => {
                    let doc = json!({ "solution": structured::polynomial_doc(&f, &vars) });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
                }
            }
            EXIT_OK
        }
        Ok(None) => {
            match format {
                OutputFormat::Text => println!("no solution"),
                OutputFormat::Structured => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({ "solution": null }))
                            .expect("serializes")
                    );
                }
            }
            EXIT_NEGATIVE
        }
        Err(e) => fail(solve_error_code(&e), e),
    }
}

fn cmd_selftest(format: OutputFormat, seed: u64, cases: usize) -> u8 {
    let report = selftest::run(seed, cases);
    match format {
        OutputFormat::Text => println!("{}", report.render()),
        OutputFormat::Structured => {
            let checks: Vec<_> = report
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "failed": c.failed }))
                .collect();
            let doc = json!({
                "seed": report.seed,
                "cases": report.cases,
                "checks": checks,
                "failures": report.failures(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
        }
    }
    if report.failures() == 0 {
        EXIT_OK
    } else {
        EXIT_DEFECT
    }
}
