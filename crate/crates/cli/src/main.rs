//! `mono`: command-line front end for the monocat library.
//!
//! Exit codes: 0 the property holds, 1 it fails (the report carries a
//! witness), 2 invalid input, 3 inconclusive within the caps.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monocat::{Caps, Error, Result};
use serde_json::Value;

use commands::Ctx;
use report::{Report, Status};

#[derive(Parser, Debug)]
#[command(name = "mono", version, about = "Exact checks in monomorphism categories over the rationals")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Bundled algebra name (kA2, lambda2, T2(kA2), ...) or an algebra JSON file.
    /// Defaults to the algebra named in the first input file.
    #[arg(long, global = true)]
    algebra: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Resolution length cap (overrides MONO_CAPS).
    #[arg(long, global = true)]
    res_cap: Option<usize>,
    /// Search depth cap (overrides MONO_CAPS).
    #[arg(long, global = true)]
    depth_cap: Option<usize>,
    /// Enumeration dimension cap (overrides MONO_CAPS).
    #[arg(long, global = true)]
    dim_cap: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Right minimal S_n-approximation of a chain.
    Rmon { object: String },
    /// Membership in S_n(X), or F_n(X) with --epi.
    CheckSn {
        object: String,
        /// X = ^perp T.
        #[arg(long)]
        perp_left: Option<String>,
        /// X = T^perp.
        #[arg(long)]
        perp_right: Option<String>,
        #[arg(long)]
        epi: bool,
    },
    /// Membership in ^perp T (or T^perp with --right).
    Perp {
        object: String,
        #[arg(long = "T")]
        t: String,
        #[arg(long)]
        right: bool,
        /// Check Ext^i for 1 <= i <= bound only.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Verify that T is cotilting (or tilting); with --n, certify m(T) over T_n(A).
    Cotilt {
        #[arg(long = "T")]
        t: String,
        #[arg(long)]
        tilting: bool,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Compare S_n(^perp T) with ^perp m(T) over a catalog.
    Reciprocity {
        #[arg(long = "T")]
        t: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        catalog: String,
    },
    /// Compare both sides of a named identity over a catalog.
    Identity {
        /// sn-perp-left-triple, sn-perp-right, sn-perp-both, sn-cm, fn-perp-right-triple,
        /// fn-perp-right, fn-tilting, fn-regular, fn-cocm, fn-perp-left, fn-perp-both
        id: String,
        /// Defaults to the regular module.
        #[arg(long = "T")]
        t: Option<String>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        catalog: String,
    },
    /// Self-injective dimensions on both sides.
    Profile,
    /// Gorenstein-projective membership (Gorenstein algebras only).
    Gproj { object: String },
    /// Compare Gorenstein-projectives of T_n(A) with S_n(A) over a catalog.
    Thm44 {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        catalog: String,
    },
    /// Endomorphism algebra of a module or chain.
    Endalg { object: String },
    /// Global dimension of the algebra, or of End(M) with --of-end.
    Gldim {
        #[arg(long)]
        of_end: Option<String>,
    },
    /// Finite-type criterion for a candidate bi-generator M.
    Thm51 {
        #[arg(long = "M")]
        m: String,
        /// Catalog of Mor_n(A) for the add(M) = ^perp m(D(A)) comparison.
        #[arg(long)]
        catalog: Option<String>,
    },
    /// Enumerate indecomposables up to the dimension cap.
    Enumerate {
        /// Chain length; modules when absent.
        #[arg(long)]
        n: Option<usize>,
        /// Monomorphism chains only.
        #[arg(long)]
        mono: bool,
        /// Also write the catalog to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Indecomposable summands.
    Decompose { object: String },
    /// Run the acceptance suite on the bundled fixtures.
    Selftest {
        #[arg(long)]
        only: Option<usize>,
    },
    /// Write bundled fixtures as JSON: kA2, lambda2, rem310_catalog, tn_fixtures.
    EmitFixture {
        name: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Re-run the invocation recorded in a JSON report and compare outcomes.
    Replay { report: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Rmon { .. } => "rmon",
            Command::CheckSn { .. } => "check-sn",
            Command::Perp { .. } => "perp",
            Command::Cotilt { .. } => "cotilt",
            Command::Reciprocity { .. } => "reciprocity",
            Command::Identity { .. } => "identity",
            Command::Profile => "profile",
            Command::Gproj { .. } => "gproj",
            Command::Thm44 { .. } => "thm44",
            Command::Endalg { .. } => "endalg",
            Command::Gldim { .. } => "gldim",
            Command::Thm51 { .. } => "thm51",
            Command::Enumerate { .. } => "enumerate",
            Command::Decompose { .. } => "decompose",
            Command::Selftest { .. } => "selftest",
            Command::EmitFixture { .. } => "emit-fixture",
            Command::Replay { .. } => "replay",
        }
    }
}

/// `res=32,depth=16,dim=6`; missing keys keep their defaults.
fn parse_caps(s: &str) -> Result<Caps> {
    let mut caps = Caps::default();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) =
            part.split_once('=').ok_or_else(|| Error::input(format!("MONO_CAPS: expected key=value, got {part:?}")))?;
        let v: usize = v.trim().parse().map_err(|_| Error::input(format!("MONO_CAPS: bad number in {part:?}")))?;
        match k.trim() {
            "res" | "resolution" => caps.res = v,
            "depth" => caps.depth = v,
            "dim" => caps.dim = v,
            other => return Err(Error::input(format!("MONO_CAPS: unknown cap {other:?}"))),
        }
    }
    Ok(caps)
}

fn caps(common: &Common) -> Result<Caps> {
    let mut caps = match std::env::var("MONO_CAPS") {
        Ok(s) => parse_caps(&s)?,
        Err(_) => Caps::default(),
    };
    if let Some(r) = common.res_cap {
        caps.res = r;
    }
    if let Some(d) = common.depth_cap {
        caps.depth = d;
    }
    if let Some(d) = common.dim_cap {
        caps.dim = d;
    }
    Ok(caps)
}

fn execute(cli: &Cli) -> Result<Report> {
    let mut ctx = Ctx::new(cli.common.algebra.clone(), caps(&cli.common)?, cli.common.seed);
    let c = &mut ctx;
    match &cli.command {
        Command::Rmon { object } => commands::rmon_cmd(c, object),
        Command::CheckSn { object, perp_left, perp_right, epi } => {
            commands::check_sn(c, object, perp_left.as_deref(), perp_right.as_deref(), *epi)
        }
        Command::Perp { object, t, right, bound } => commands::perp(c, object, t, *right, *bound),
        Command::Cotilt { t, tilting, n } => commands::cotilt(c, t, *tilting, *n),
        Command::Reciprocity { t, n, catalog } => commands::reciprocity(c, t, *n, catalog),
        Command::Identity { id, t, n, catalog } => commands::identity(c, id, t.as_deref(), *n, catalog),
        Command::Profile => commands::profile_cmd(c),
        Command::Gproj { object } => commands::gproj(c, object),
        Command::Thm44 { n, catalog } => commands::gproj_sn(c, *n, catalog),
        Command::Endalg { object } => commands::endalg(c, object),
        Command::Gldim { of_end } => commands::gldim(c, of_end.as_deref()),
        Command::Thm51 { m, catalog } => commands::finite_type(c, m, catalog.as_deref()),
        Command::Enumerate { n, mono, out } => commands::enumerate(c, *n, *mono, out.as_deref()),
        Command::Decompose { object } => commands::decompose(c, object),
        Command::Selftest { only } => commands::selftest_cmd(c, *only),
        Command::EmitFixture { name, out } => commands::emit_fixture(name, out),
        Command::Replay { report } => replay(report),
    }
}

fn run(cli: &Cli) -> Report {
    execute(cli).unwrap_or_else(|e| Report::from_error(&e))
}

/// Re-runs the recorded invocation; holds when exit code and witness match.
fn replay(path: &PathBuf) -> Result<Report> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    let recorded = monocat::io::parse_json(&text)?;
    let invocation: Vec<String> = recorded
        .get("invocation")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::input("report has no invocation"))?
        .iter()
        .map(|v| v.as_str().map(String::from).ok_or_else(|| Error::input("invocation entries must be strings")))
        .collect::<Result<_>>()?;
    let cli = Cli::try_parse_from(std::iter::once("mono".to_string()).chain(invocation.iter().cloned()))
        .map_err(|e| Error::input(format!("recorded invocation does not parse: {e}")))?;
    if matches!(cli.command, Command::Replay { .. }) {
        return Err(Error::input("refusing to replay a replay"));
    }
    let again = run(&cli).to_json(cli.command.name(), &invocation);
    let same = again["exit"] == recorded["exit"] && again["witness"] == recorded["witness"];
    let summary = if same {
        format!("reproduced exit {} with the same witness", again["exit"])
    } else {
        format!("recorded exit {}, replay gave exit {}", recorded["exit"], again["exit"])
    };
    let witness = (!same).then(|| serde_json::json!({ "recorded": recorded["witness"], "replayed": again["witness"] }));
    Ok(Report::new(Status::of(same), summary).with_witness(witness))
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
    let report = run(&cli);
    let invocation: Vec<String> = std::env::args().skip(1).collect();
    match cli.common.format {
        Format::Json => {
            let v = report.to_json(cli.command.name(), &invocation);
            println!("{}", serde_json::to_string_pretty(&v).expect("report serializes"));
        }
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.status.code() as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_parse() {
        let c = parse_caps("res=8, dim=3").unwrap();
        assert_eq!(c, Caps { res: 8, depth: 16, dim: 3 });
        assert!(parse_caps("res").is_err());
        assert!(parse_caps("size=3").is_err());
        assert_eq!(parse_caps("").unwrap(), Caps::default());
    }

    #[test]
    fn cli_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
