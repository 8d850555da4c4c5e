use clap::{Parser, Subcommand};
use cyclic_ainf::algebra::{tensor_product_algebra, validate_algebra};
use cyclic_ainf::diagonal::{build_diagonal, freedom_dimension, verify_diagonal, Flags};
use cyclic_ainf::homotopy::{build_homotopy, verify_homotopy};
use cyclic_ainf::io::*;
use cyclic_ainf::kontsevich::{evaluate, verify_tensor_formula, Presentation};
use cyclic_ainf::rational::format_q;
use cyclic_ainf::ribbon::{ParityCase, Twist};
use cyclic_ainf::{selftest, Error};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const DEFAULT_SEED: u64 = 20240611;

#[derive(Parser)]
#[command(
    name = "cyclic-ainf",
    version,
    about = "Cyclic diagonals, tensor products of cyclic A∞-algebras, and Kontsevich classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and verify a cyclic diagonal, then write it.
    Diagonal {
        #[arg(long)]
        max_arity: usize,
        #[arg(long)]
        cocommutative: bool,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Check a stored diagonal.
    VerifyDiagonal { file: PathBuf },
    /// Dimension of the ambiguity of Δ(c_n).
    Freedom {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        cocommutative: bool,
    },
    /// Cyclic homotopy between two stored diagonals.
    Homotopy {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long)]
        max_arity: usize,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Tensor product of two cyclic A∞-algebras along a diagonal.
    TensorAlgebra {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        diagonal: PathBuf,
        #[arg(long)]
        max_arity: usize,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
    /// Kontsevich class of an algebra on an oriented graph.
    Kontsevich {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        /// Seed for the re-presentation check.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Compare c_{A⊗B}(G) with (c_A⊗c_B)(δG).
    TensorFormula {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        diagonal: PathBuf,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Run every acceptance check on the shipped fixtures.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidGraph(_)
            | Error::ParityMismatch
            | Error::DiagonalArityTooSmall { .. } => Failure::Input(e.to_string()),
            other => Failure::Verification(other.to_string()),
        }
    }
}

fn verdict(ok: bool, what: impl FnOnce() -> String) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification(what()))
    }
}

fn read(path: &Path) -> Result<serde_json::Value, Failure> {
    Ok(read_json(path)?)
}

fn write(path: &Path, v: &serde_json::Value) -> Result<(), Failure> {
    write_json(path, v).map_err(|e| Failure::Input(e.to_string()))
}

fn flags(cocommutative: bool) -> Flags {
    if cocommutative {
        Flags::CYCLIC_COCOMMUTATIVE
    } else {
        Flags::CYCLIC
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Diagonal {
            max_arity,
            cocommutative,
            output,
        } => {
            if max_arity < 2 {
                return Err(Failure::Input("--max-arity must be at least 2".into()));
            }
            let d = build_diagonal(max_arity, flags(cocommutative))?;
            let reports = verify_diagonal(&d);
            write(&output, &diagonal_to_json(&d))?;
            let bad: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
            verdict(bad.is_empty(), || format!("diagonal fails at {bad:?}"))
        }
        Command::VerifyDiagonal { file } => {
            let d = diagonal_from_json(&read(&file)?)?;
            let reports = verify_diagonal(&d);
            for r in &reports {
                println!("{}", serde_json::to_string(r).expect("reports serialize"));
            }
            verdict(reports.iter().all(|r| r.passed()), || {
                "diagonal failed verification".into()
            })
        }
        Command::Freedom {
            arity,
            cocommutative,
        } => {
            if arity < 3 {
                return Err(Failure::Input("--arity must be at least 3".into()));
            }
            println!("{}", freedom_dimension(arity, flags(cocommutative)));
            Ok(())
        }
        Command::Homotopy {
            from,
            to,
            max_arity,
            output,
        } => {
            let a = diagonal_from_json(&read(&from)?)?;
            let b = diagonal_from_json(&read(&to)?)?;
            if a.max_arity < max_arity || b.max_arity < max_arity {
                return Err(Failure::Input(format!(
                    "both diagonals must reach arity {max_arity}"
                )));
            }
            let h = build_homotopy(&a.truncated(max_arity), &b.truncated(max_arity), max_arity)?;
            write(&output, &homotopy_to_json(&h))?;
            let reports = verify_homotopy(&h);
            let bad: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
            verdict(bad.is_empty(), || format!("homotopy fails at {bad:?}"))
        }
        Command::TensorAlgebra {
            a,
            b,
            diagonal,
            max_arity,
            output,
        } => {
            let a = algebra_from_json(&read(&a)?)?;
            let b = algebra_from_json(&read(&b)?)?;
            let d = diagonal_from_json(&read(&diagonal)?)?;
            let ab = tensor_product_algebra(&a, &b, &d, max_arity)?;
            write(&output, &algebra_to_json(&ab))?;
            let r = validate_algebra(&ab, max_arity);
            verdict(r.passed(), || format!("tensor product fails: {r:?}"))
        }
        Command::Kontsevich {
            algebra,
            graph,
            seed,
        } => {
            let alg = algebra_from_json(&read(&algebra)?)?;
            let g = graph_from_json(&read(&graph)?)?;
            let name = algebra
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let e = evaluate(
                &alg,
                &g.graph,
                g.twist,
                g.sign,
                &Presentation::standard(&g.graph),
            )?;
            println!("{}", to_pretty(&evaluation_to_json(&e, &name)).trim_end());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..8 {
                let p = Presentation::random(&g.graph, &mut rng);
                let other = evaluate(&alg, &g.graph, g.twist, g.sign, &p)?.value;
                if other != e.value {
                    return Err(Failure::Verification(format!(
                        "presentation {p:?} gives {} instead of {}",
                        format_q(&other),
                        format_q(&e.value)
                    )));
                }
            }
            Ok(())
        }
        Command::TensorFormula {
            a,
            b,
            diagonal,
            graph,
        } => {
            let a = algebra_from_json(&read(&a)?)?;
            let b = algebra_from_json(&read(&b)?)?;
            let d = diagonal_from_json(&read(&diagonal)?)?;
            let g = graph_from_json(&read(&graph)?)?;
            let (src, _, _) = ParityCase::from_parities(a.parity, b.parity).twists();
            if g.twist != src {
                let want = if src == Twist::Twisted {
                    "twisted"
                } else {
                    "untwisted"
                };
                return Err(Failure::Input(format!(
                    "graph.twisted: the product needs a {want} graph"
                )));
            }
            let r = verify_tensor_formula(&a, &b, &d, &g.graph)?;
            let s = cyclic_ainf::rational::sign_q(g.sign);
            let report = json!({
                "lhs": format_q(&(&r.lhs * &s)),
                "rhs": format_q(&(&r.rhs * &s)),
                "terms": r.terms,
                "equal": r.equal,
            });
            println!("{}", to_pretty(&report).trim_end());
            verdict(r.equal, || "c_{A⊗B}(G) differs from (c_A⊗c_B)(δG)".into())
        }
        Command::Selftest { seed } => {
            let checks = selftest::run_all();
            let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
            for c in &checks {
                println!("{}", c.line());
            }
            println!(
                "seed {seed}: {} of {} checks pass",
                checks.len() - failed.len(),
                checks.len()
            );
            verdict(failed.is_empty(), || {
                format!("{} checks failed", failed.len())
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
    }
}
