//! The `autop` command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 ring or math error.

use std::io::Write;
use std::path::PathBuf;

use clap::{ColorChoice, Parser, Subcommand};
use serde_json::{json, Value};

use crate::autonomous::{apply_pointwise, invert};
use crate::bell::{complete_bell, partial_bell};
use crate::error::Error;
use crate::flow::{
    closed_form_flow, equilibrium_check, flow_at_point, gmodule_orbit, group_law_check,
    module_axioms_check, orbit_samples, parse_grid, pde_check, time_scale_check, write_orbit_csv,
    FieldKind, VectorFieldSpec,
};
use crate::homogeneity::solve_report;
use crate::rings::{text::split_list, Elem, Ring};
use crate::verify::{run_all, Status, VerifyReport};

#[derive(Parser, Debug)]
#[command(
    name = "autop",
    version,
    about = "Autonomous operator on sequences, Bell polynomials and flows"
)]
#[command(color = ColorChoice::Never)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partial and complete Bell polynomials
    #[command(subcommand)]
    Bell(BellCmd),
    /// Apply or invert the operator on a sequence
    #[command(subcommand)]
    Autonomous(AutonomousCmd),
    /// Homogeneity groups H_k
    #[command(subcommand)]
    Homogeneity(HomogeneityCmd),
    /// Flows of x' = f(x)
    #[command(subcommand)]
    Flow(FlowCmd),
    /// Randomized invariant suite
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
enum BellCmd {
    /// B_{n,k}(b_1, ...)
    Partial {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        b: String,
        #[arg(long, default_value = "z")]
        ring: String,
    },
    /// Y_n = sum_k B_{n,k}(b) a_k
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: String,
        #[arg(long)]
        a: String,
        #[arg(long, default_value = "z")]
        ring: String,
    },
}

#[derive(Subcommand, Debug)]
enum AutonomousCmd {
    /// (A_1, ..., A_L) for a sequence of length L
    Apply {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        seq: String,
    },
    /// The preimage over the fraction field
    Invert {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        seq: String,
    },
}

#[derive(Subcommand, Debug)]
enum HomogeneityCmd {
    /// Solve a^{k-1} = 1, b^{k-1} = a
    Solve {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        k: u64,
    },
}

#[derive(clap::Args, Debug)]
struct FlowArgs {
    #[arg(long)]
    ring: String,
    /// const:a | affine:a,b | expfield:a | series:[c0,c1,...]
    #[arg(long)]
    field: String,
    #[arg(long, default_value = "0")]
    x0: String,
    #[arg(long, default_value_t = 6)]
    order: usize,
}

#[derive(Subcommand, Debug)]
enum FlowCmd {
    /// Flow coefficients from the operator
    Series(FlowArgs),
    /// Flow coefficients from the closed form
    Closed(FlowArgs),
    /// Numeric samples of the truncated flow as CSV
    Orbit {
        #[command(flatten)]
        args: FlowArgs,
        /// start:end:count
        #[arg(long, default_value = "0:1:11")]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unit-twisted family of flows, symbolic in x around 0
    Family {
        #[command(flatten)]
        args: FlowArgs,
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long, default_value_t = 3)]
        bound_m: u32,
    },
    /// Identity checks for one field
    Check(FlowArgs),
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Every invariant over one ring
    All {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long, default_value_t = 20_250_101)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Math(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn usage(flag: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("--{flag}: {e}"))
}

fn parse_ring(text: &str) -> std::result::Result<Ring, Failure> {
    text.parse()
        .and_then(Ring::new)
        .map_err(|e| usage("ring", e))
}

/// A JSON array whose items are numbers or strings in ring syntax; a bare bracketed
/// list is accepted too.
fn parse_seq(ring: &Ring, flag: &str, text: &str) -> std::result::Result<Vec<Elem>, Failure> {
    let items: Vec<String> = match serde_json::from_str::<Vec<Value>>(text) {
        Ok(values) => values
            .into_iter()
            .map(|v| match v {
                Value::String(s) => Ok(s),
                Value::Number(n) => Ok(n.to_string()),
                other => Err(usage(flag, format!("unexpected item {other}"))),
            })
            .collect::<std::result::Result<_, _>>()?,
        Err(_) => {
            let t = text.trim();
            let body = t
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| usage(flag, "expected a list like [1,2,3]"))?;
            split_list(body).into_iter().map(str::to_string).collect()
        }
    };
    items
        .iter()
        .map(|s| ring.parse(s).map_err(|e| usage(flag, e)))
        .collect()
}

/// Integers as bare JSON numbers, everything else as strings.
fn elem_json(ring: &Ring, x: &Elem) -> Value {
    let text = ring.render(x);
    let integral = ring.as_rational(x).is_some_and(|q| q.is_integer());
    if integral {
        if let Ok(v) = serde_json::from_str::<Value>(&text) {
            return v;
        }
    }
    Value::String(text)
}

fn seq_json(ring: &Ring, xs: &[Elem]) -> Value {
    Value::Array(xs.iter().map(|x| elem_json(ring, x)).collect())
}

fn emit(out: &mut dyn Write, v: &Value) -> Outcome {
    writeln!(out, "{v}").map_err(|e| Failure::Math(Error::Unsupported(format!("write: {e}"))))
}

fn emit_text(out: &mut dyn Write, text: &str) -> Outcome {
    write!(out, "{text}").map_err(|e| Failure::Math(Error::Unsupported(format!("write: {e}"))))
}

/// Runs `autop` with the given argv (program name first), writing to `out` and `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                let _ = write!(err, "{e}");
                return 2;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("usage error");
            let _ = writeln!(err, "{first}");
            return 2;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Math(e)) => {
            let _ = writeln!(err, "error: {e}");
            3
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Bell(c) => bell(c, out),
        Command::Autonomous(c) => autonomous(c, out),
        Command::Homogeneity(HomogeneityCmd::Solve { ring, k }) => homogeneity(&ring, k, out),
        Command::Flow(c) => flow(c, out),
        Command::Verify(VerifyCmd::All { ring, order, seed }) => {
            let ring = parse_ring(&ring)?;
            if order < 2 {
                return Err(usage("order", "must be at least 2"));
            }
            let report = run_all(&ring, order, seed)?;
            finish_report(&report, out)
        }
    }
}

fn finish_report(report: &VerifyReport, out: &mut dyn Write) -> Outcome {
    emit_text(out, &report.render())?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn bell(cmd: BellCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        BellCmd::Partial { n, k, b, ring } => {
            let ring = parse_ring(&ring)?;
            let b = parse_seq(&ring, "b", &b)?;
            if k < 1 || k > n {
                return Err(usage("k", format!("need 1 <= k <= n, got n={n}, k={k}")));
            }
            if b.len() < n - k + 1 {
                return Err(usage(
                    "b",
                    format!("needs {} entries, got {}", n - k + 1, b.len()),
                ));
            }
            emit(out, &elem_json(&ring, &partial_bell(&ring, n, k, &b)?))
        }
        BellCmd::Complete { n, b, a, ring } => {
            let ring = parse_ring(&ring)?;
            let b = parse_seq(&ring, "b", &b)?;
            let a = parse_seq(&ring, "a", &a)?;
            if n < 1 {
                return Err(usage("n", "must be at least 1"));
            }
            if b.len() < n {
                return Err(usage("b", format!("needs {n} entries, got {}", b.len())));
            }
            if a.len() < n {
                return Err(usage("a", format!("needs {n} entries, got {}", a.len())));
            }
            emit(out, &elem_json(&ring, &complete_bell(&ring, n, &b, &a)?))
        }
    }
}

fn autonomous(cmd: AutonomousCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        AutonomousCmd::Apply { ring, seq } => {
            let ring = parse_ring(&ring)?;
            let x = parse_seq(&ring, "seq", &seq)?;
            if x.is_empty() {
                return Err(usage("seq", "empty sequence"));
            }
            emit(out, &seq_json(&ring, &apply_pointwise(&ring, &x)?))
        }
        AutonomousCmd::Invert { ring, seq } => {
            let ring = parse_ring(&ring)?;
            let y = parse_seq(&ring, "seq", &seq)?;
            if y.is_empty() {
                return Err(usage("seq", "empty sequence"));
            }
            let inv = invert(&ring, &y)?;
            emit(
                out,
                &json!({ "seq": seq_json(&inv.field, &inv.terms), "in_ring": inv.in_ring }),
            )
        }
    }
}

fn homogeneity(ring: &str, k: u64, out: &mut dyn Write) -> Outcome {
    let ring = parse_ring(ring)?;
    if k < 2 {
        return Err(usage("k", "must be at least 2"));
    }
    let report = solve_report(&ring, k)?;
    let pair = |a: &Elem, b: &Elem| json!({ "a": elem_json(&ring, a), "b": elem_json(&ring, b) });
    let claim = report.claim.as_ref().map(|c| {
        json!({
            "pairs": c.pairs.as_ref().map(|ps| ps.iter().map(|(a, b)| pair(a, b)).collect::<Vec<_>>()),
            "order": c.order,
            "invariant_factors": c.invariant_factors,
        })
    });
    let v = json!({
        "ring": ring.to_string(),
        "k": k,
        "pairs": report.pairs.iter().map(|p| pair(&p.a, &p.b)).collect::<Vec<_>>(),
        "order": report.structure.order,
        "invariant_factors": report.structure.invariant_factors,
        "exponent": report.structure.exponent,
        "paper_claim": claim,
        "agreement": report.agreement,
    });
    emit(out, &v)
}

fn flow_setup(args: &FlowArgs) -> std::result::Result<(Ring, VectorFieldSpec, Elem), Failure> {
    let ring = parse_ring(&args.ring)?;
    let field = VectorFieldSpec::parse(&ring, &args.field).map_err(|e| usage("field", e))?;
    let x0 = field.field.parse(&args.x0).map_err(|e| usage("x0", e))?;
    Ok((ring, field, x0))
}

fn flow(cmd: FlowCmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        FlowCmd::Series(args) => {
            let (_, field, x0) = flow_setup(&args)?;
            let phi = flow_at_point(&field, &x0, args.order)?;
            emit(out, &seq_json(&phi.ring, &phi.coeffs))
        }
        FlowCmd::Closed(args) => {
            let (_, field, x0) = flow_setup(&args)?;
            let phi = closed_form_flow(&field, &x0, args.order)?;
            emit(out, &seq_json(&phi.ring, &phi.coeffs))
        }
        FlowCmd::Orbit {
            args,
            grid,
            out: path,
        } => {
            let (_, field, x0) = flow_setup(&args)?;
            let grid = parse_grid(&grid).map_err(|e| usage("grid", e))?;
            let phi = flow_at_point(&field, &x0, args.order)?;
            let rows = orbit_samples(&phi, &grid)?;
            match path {
                Some(p) => {
                    let file = std::fs::File::create(&p)
                        .map_err(|e| usage("out", format!("{}: {e}", p.display())))?;
                    write_orbit_csv(&rows, file)?;
                    Ok(())
                }
                None => Ok(write_orbit_csv(&rows, out)?),
            }
        }
        FlowCmd::Family { args, k, bound_m } => {
            let (ring, field, _) = flow_setup(&args)?;
            if k < 1 {
                return Err(usage("k", "must be at least 1"));
            }
            let members = gmodule_orbit(&field, k, &ring, bound_m, args.order)?;
            let k_field = &field.field;
            let items: Vec<Value> = members
                .iter()
                .map(|m| {
                    json!({
                        "a": elem_json(k_field, &m.a),
                        "scalar": elem_json(k_field, &m.scalar),
                        "coeffs": m.flow.render(),
                    })
                })
                .collect();
            emit(out, &Value::Array(items))
        }
        FlowCmd::Check(args) => {
            let (ring, field, x0) = flow_setup(&args)?;
            flow_check(&ring, &field, &x0, args.order, out)
        }
    }
}

fn flow_check(
    ring: &Ring,
    field: &VectorFieldSpec,
    x0: &Elem,
    order: usize,
    out: &mut dyn Write,
) -> Outcome {
    use crate::verify::CheckRow;
    let k = &field.field;
    let half = (order / 2).max(1);
    let mut rows = Vec::new();
    let mut push = |name: &str, outcome: crate::error::Result<bool>| {
        let (status, detail) = match outcome {
            Ok(true) => (Status::Pass, String::new()),
            Ok(false) => (Status::Fail, "mismatch".to_string()),
            Err(
                e @ (Error::UnsupportedKind(_)
                | Error::UnsupportedBasePoint(_)
                | Error::OrderExhausted(_)),
            ) => (Status::Skip, e.to_string()),
            Err(e) => (Status::Fail, e.to_string()),
        };
        rows.push(CheckRow {
            module: "flow",
            name: name.to_string(),
            status,
            detail,
        });
    };
    push(
        "closed form",
        closed_form_flow(field, x0, order).and_then(|c| Ok(flow_at_point(field, x0, order)? == c)),
    );
    let expansion = match &field.kind {
        FieldKind::Series(s) => Ok(s.clone()),
        _ => field.expansion_at(x0, 2 * half),
    };
    push(
        "group law",
        expansion
            .clone()
            .and_then(|f| group_law_check(&f, x0, half, half)),
    );
    push(
        "pde",
        expansion
            .clone()
            .and_then(|f| Ok(pde_check(&f, half)?.holds())),
    );
    push(
        "time scaling",
        time_scale_check(field, x0, &k.from_int(2), order),
    );
    push(
        "module axioms",
        expansion.and_then(|f| {
            Ok(module_axioms_check(&f, x0, &k.one(), &k.from_int(2), &k.from_int(3), half)?.all())
        }),
    );
    let report = VerifyReport {
        ring: ring.clone(),
        order,
        rows,
    };
    let equilibrium = equilibrium_check(field, x0)?;
    emit_text(out, &report.render())?;
    emit_text(out, &format!("equilibrium at x0: {equilibrium}\n"))?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("autop").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn apply_all_ones() {
        let (code, out, _) = call(&["autonomous", "apply", "--ring", "z", "--seq", "[1,1,1,1,1]"]);
        assert_eq!((code, out.as_str()), (0, "[1,1,2,6,24]\n"));
    }

    #[test]
    fn invert_reports_ring_membership() {
        let (code, out, _) = call(&["autonomous", "invert", "--ring", "z", "--seq", "[2,1]"]);
        assert_eq!(code, 0);
        assert_eq!(out, "{\"in_ring\":false,\"seq\":[2,\"1/2\"]}\n");
    }

    #[test]
    fn usage_and_math_errors() {
        let (code, _, err) = call(&["autonomous", "apply", "--ring", "nope", "--seq", "[1]"]);
        assert_eq!(code, 2);
        assert!(err.contains("--ring"), "{err}");
        let (code, _, err) = call(&["autonomous", "apply", "--ring", "z", "--seq", "[1,x]"]);
        assert_eq!(code, 2);
        assert!(err.contains("--seq"), "{err}");
        let (code, _, _) = call(&["autonomous", "invert", "--ring", "z", "--seq", "[0,1]"]);
        assert_eq!(code, 3);
        let (code, _, err) = call(&["bell", "partial", "--n", "3"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn closed_exponential() {
        let (code, out, _) = call(&[
            "flow",
            "closed",
            "--ring",
            "q",
            "--field",
            "affine:0,1",
            "--x0",
            "1",
            "--order",
            "4",
        ]);
        assert_eq!((code, out.as_str()), (0, "[1,1,1,1,1]\n"));
    }
}
