//! Command-line front end. Every subcommand is a thin wrapper over a
//! library call; numeric output is printed with 9 significant digits and
//! the same argv plus seed always produces byte-identical output.
//!
//! Exit codes: 0 success, 1 usage error, 2 numeric failure
//! (non-convergence or crosscheck breach), 3 malformed state file.

use std::fs::File;
use std::io::{BufReader, Read, Write};

use clap::{Arg, ArgAction, Command};

use crate::analysis::{
    bell3_report, blank_boundary, maximal_blank_range, sweep, verdict, write_csv,
};
use crate::density::BipartiteDensity;
use crate::error::{Error, Result};
use crate::monotones::{entanglement_entropy, negativity};
use crate::ree::{ree_upper_bound, ReeParams};
use crate::states::{schmidt_state, CloneCase, PureState, SchmidtKind};
use crate::verify;

fn s9(x: f64) -> String {
    format!("{x:.8e}")
}

fn s9_opt(x: Option<f64>) -> String {
    x.map(s9).unwrap_or_else(|| "NA".to_string())
}

fn cmd() -> Command {
    let case_arg = Arg::new("case")
        .long("case")
        .required(true)
        .value_parser(["1", "2"]);
    let a_arg = Arg::new("a")
        .long("a")
        .required(true)
        .value_parser(clap::value_parser!(f64));
    Command::new("locclone")
        .about("Entanglement bounds for exact LOCC cloning of entangled qubit pairs")
        .subcommand_required(true)
        .subcommand(
            Command::new("negativity")
                .about("Negativity of a state read from a DMAT or PVEC file")
                .arg(Arg::new("state").long("state").required(true)),
        )
        .subcommand(
            Command::new("entropy")
                .about("Entanglement entropy of a Schmidt-family state")
                .arg(
                    Arg::new("kind")
                        .long("kind")
                        .required(true)
                        .value_parser(["psi1", "psi2", "psi3", "phi"]),
                )
                .arg(a_arg.clone()),
        )
        .subcommand(
            Command::new("feasibility")
                .about("Negativity comparison for one cloning scenario")
                .arg(case_arg.clone())
                .arg(a_arg.clone())
                .arg(
                    Arg::new("c")
                        .long("c")
                        .required(true)
                        .value_parser(clap::value_parser!(f64)),
                )
                .arg(
                    Arg::new("numeric")
                        .long("numeric")
                        .action(ArgAction::SetTrue)
                        .help("recompute the output negativity from the built 16x16 state"),
                ),
        )
        .subcommand(
            Command::new("boundary")
                .about("Minimal blank-copy entanglement at a given coefficient")
                .arg(case_arg.clone())
                .arg(a_arg.clone()),
        )
        .subcommand(
            Command::new("range")
                .about("Coefficient range where a maximally entangled blank is ruled out")
                .arg(case_arg.clone())
                .arg(
                    Arg::new("tol")
                        .long("tol")
                        .value_parser(clap::value_parser!(f64))
                        .default_value("1e-6"),
                ),
        )
        .subcommand(
            Command::new("sweep")
                .about("Write a CSV sweep of the blank boundary over a coefficient grid")
                .arg(case_arg.clone())
                .arg(
                    Arg::new("a-min")
                        .long("a-min")
                        .required(true)
                        .value_parser(clap::value_parser!(f64)),
                )
                .arg(
                    Arg::new("a-max")
                        .long("a-max")
                        .required(true)
                        .value_parser(clap::value_parser!(f64)),
                )
                .arg(
                    Arg::new("steps")
                        .long("steps")
                        .value_parser(clap::value_parser!(usize))
                        .default_value("200"),
                )
                .arg(Arg::new("out").long("out").required(true)),
        )
        .subcommand(
            Command::new("bell3")
                .about("Blank-entanglement accounting for cloning three Bell states")
                .arg(
                    Arg::new("blank-ebits")
                        .long("blank-ebits")
                        .value_parser(clap::value_parser!(f64))
                        .default_value("1.0"),
                ),
        )
        .subcommand(
            Command::new("ree")
                .about("Upper bound on the relative entropy of entanglement of a state file")
                .arg(Arg::new("state").long("state").required(true))
                .arg(
                    Arg::new("terms")
                        .long("terms")
                        .value_parser(clap::value_parser!(usize))
                        .default_value("0")
                        .help("product terms in the separable ansatz; 0 = (dimA*dimB)^2 capped at 64"),
                )
                .arg(
                    Arg::new("iters")
                        .long("iters")
                        .value_parser(clap::value_parser!(usize))
                        .default_value("500"),
                )
                .arg(
                    Arg::new("restarts")
                        .long("restarts")
                        .value_parser(clap::value_parser!(usize))
                        .default_value("4"),
                )
                .arg(
                    Arg::new("seed")
                        .long("seed")
                        .value_parser(clap::value_parser!(u64))
                        .default_value("42"),
                ),
        )
        .subcommand(
            Command::new("verify")
                .about("Run the full verification suite, one line per criterion")
                .arg(
                    Arg::new("seed")
                        .long("seed")
                        .value_parser(clap::value_parser!(u64))
                        .default_value("42"),
                ),
        )
}

fn parse_case(m: &clap::ArgMatches) -> CloneCase {
    match m.get_one::<String>("case").map(String::as_str) {
        Some("2") => CloneCase::II,
        _ => CloneCase::I,
    }
}

/// Load a density matrix from a DMAT file, or a PVEC file promoted to its
/// projector.
fn load_state(path: &str) -> Result<BipartiteDensity> {
    let mut text = String::new();
    File::open(path)
        .map_err(|e| Error::MalformedFile(format!("{path}: {e}")))?
        .read_to_string(&mut text)
        .map_err(|e| Error::MalformedFile(format!("{path}: {e}")))?;
    let first_token = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    match first_token {
        "DMAT" => BipartiteDensity::read_dmat(&mut BufReader::new(text.as_bytes())),
        "PVEC" => {
            let psi = PureState::read_pvec(&mut BufReader::new(text.as_bytes()))?;
            Ok(psi.density())
        }
        _ => Err(Error::MalformedFile(format!(
            "{path}: expected a DMAT or PVEC header"
        ))),
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InvalidParameter(_) | Error::DimensionMismatch(_) => 1,
        Error::MalformedFile(_) => 3,
        _ => 2,
    }
}

/// Run one invocation. `args` excludes the binary name.
pub fn dispatch<O: Write, E: Write>(args: &[String], out: &mut O, err: &mut E) -> i32 {
    let mut argv = vec!["locclone".to_string()];
    argv.extend_from_slice(args);
    let matches = match cmd().try_get_matches_from(&argv) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match run(&matches, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn run<O: Write>(matches: &clap::ArgMatches, out: &mut O) -> Result<i32> {
    match matches.subcommand() {
        Some(("negativity", m)) => {
            let rho = load_state(m.get_one::<String>("state").unwrap())?;
            writeln!(out, "negativity {}", s9(negativity(&rho)))?;
            Ok(0)
        }
        Some(("entropy", m)) => {
            let kind = SchmidtKind::parse(m.get_one::<String>("kind").unwrap())
                .expect("clap restricts the value set");
            let a = *m.get_one::<f64>("a").unwrap();
            let psi = schmidt_state(kind, a)?;
            writeln!(out, "entanglement_entropy {}", s9(entanglement_entropy(&psi)))?;
            Ok(0)
        }
        Some(("feasibility", m)) => {
            let v = verdict(
                parse_case(m),
                *m.get_one::<f64>("a").unwrap(),
                *m.get_one::<f64>("c").unwrap(),
                m.get_flag("numeric"),
            )?;
            writeln!(out, "case {}", v.case)?;
            writeln!(out, "a {}", s9(v.a))?;
            writeln!(out, "c {}", s9(v.c))?;
            writeln!(out, "n_in {}", s9(v.n_in))?;
            writeln!(out, "n_out {}", s9(v.n_out))?;
            if let Some(num) = v.numeric_n_out {
                writeln!(out, "numeric_n_out {}", s9(num))?;
            }
            writeln!(out, "margin {}", s9(v.margin))?;
            writeln!(out, "verdict {}", v.verdict)?;
            Ok(0)
        }
        Some(("boundary", m)) => {
            let b = blank_boundary(parse_case(m), *m.get_one::<f64>("a").unwrap())?;
            writeln!(out, "case {}", b.case)?;
            writeln!(out, "a {}", s9(b.a))?;
            writeln!(out, "rhs {}", s9(b.rhs))?;
            writeln!(out, "c_min_sq {}", s9_opt(b.c_min_sq))?;
            writeln!(out, "e_blank_min {}", s9_opt(b.e_blank_min))?;
            writeln!(
                out,
                "two_qubit_blank_impossible {}",
                b.two_qubit_blank_impossible
            )?;
            Ok(0)
        }
        Some(("range", m)) => {
            let r = maximal_blank_range(parse_case(m), *m.get_one::<f64>("tol").unwrap())?;
            writeln!(out, "case {}", r.case)?;
            writeln!(out, "a_low {}", s9_opt(r.a_low))?;
            writeln!(out, "a_high {}", s9_opt(r.a_high))?;
            for t in &r.tangent_points {
                writeln!(out, "tangent {}", s9(*t))?;
            }
            Ok(0)
        }
        Some(("sweep", m)) => {
            let rows = sweep(
                parse_case(m),
                *m.get_one::<f64>("a-min").unwrap(),
                *m.get_one::<f64>("a-max").unwrap(),
                *m.get_one::<usize>("steps").unwrap(),
            )?;
            let path = m.get_one::<String>("out").unwrap();
            let mut file = File::create(path)?;
            write_csv(&rows, &mut file)?;
            writeln!(out, "wrote {} rows to {}", rows.len(), path)?;
            Ok(0)
        }
        Some(("bell3", m)) => {
            let report = bell3_report(*m.get_one::<f64>("blank-ebits").unwrap())?;
            writeln!(out, "{report}")?;
            Ok(0)
        }
        Some(("ree", m)) => {
            let rho = load_state(m.get_one::<String>("state").unwrap())?;
            let params = ReeParams {
                terms: *m.get_one::<usize>("terms").unwrap(),
                iters: *m.get_one::<usize>("iters").unwrap(),
                restarts: *m.get_one::<usize>("restarts").unwrap(),
                seed: *m.get_one::<u64>("seed").unwrap(),
            };
            let result = ree_upper_bound(&rho, &params)?;
            write!(out, "{}", result.report())?;
            Ok(if result.converged { 0 } else { 2 })
        }
        Some(("verify", m)) => {
            let reports = verify::run_all(*m.get_one::<u64>("seed").unwrap());
            for report in &reports {
                writeln!(out, "{}", report.summary_line())?;
            }
            Ok(if verify::all_pass(&reports) { 0 } else { 2 })
        }
        _ => unreachable!("subcommand_required is set"),
    }
}
