use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use smdiscord::discord::discord_oracle;
use smdiscord::entropy::{EntropyKind, EntropyParams};
use smdiscord::states::{PointerAxis, StateSpec};
use smdiscord::sweep::{
    eval_point, find_zero_discord, reproduce_figures, sweep_rows, write_csv, Family, FixedParams, RootQuery, SweepAxis,
    SweepSpec, DEFAULT_ROOT_TOL,
};
use smdiscord::{discord_bell, Error, Result};

#[derive(Parser)]
#[command(name = "smdiscord", version, about = "Generalized quantum discord of two-qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct EntropyArgs {
    /// sm, renyi, tsallis or vn
    #[arg(long)]
    entropy: EntropyKind,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
}

impl EntropyArgs {
    fn params(&self) -> Result<EntropyParams> {
        EntropyParams::from_parts(self.entropy, self.q, self.r)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Discord, negativity and spectrum of one state
    Eval {
        /// werner:p=.., isotropic:F=.., pointer:C=..[,axis=..], bell:c1=..,c2=..,c3=.. or file:<json>
        #[arg(long)]
        state: StateSpec,
        #[command(flatten)]
        entropy: EntropyArgs,
        #[arg(long)]
        json: bool,
    },
    /// CSV over a 1-D or 2-D parameter grid
    Sweep {
        #[arg(long)]
        state_family: Family,
        /// param:lo:hi:steps with param one of p, F, C, q, r
        #[arg(long)]
        sweep: SweepAxis,
        #[arg(long)]
        sweep2: Option<SweepAxis>,
        #[command(flatten)]
        entropy: EntropyArgs,
        /// Fixed non-swept value, key=value with key p, F, C, axis, c1, c2 or c3
        #[arg(long = "fixed", value_name = "KEY=VALUE")]
        fixed: Vec<String>,
        /// Output path, or - for stdout
        #[arg(long)]
        out: PathBuf,
    },
    /// State parameter where the signed discord vanishes
    Root {
        #[arg(long)]
        state_family: Family,
        #[command(flatten)]
        entropy: EntropyArgs,
        /// lo:hi
        #[arg(long)]
        bracket: String,
        #[arg(long, default_value_t = DEFAULT_ROOT_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Write every figure CSV and a manifest into a directory
    Figures {
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the closed form with a brute-force scan over measurements
    Oracle {
        #[arg(long)]
        state: StateSpec,
        #[command(flatten)]
        entropy: EntropyArgs,
        #[arg(long, default_value_t = 2000)]
        grid: usize,
        #[arg(long)]
        json: bool,
    },
}

fn parse_fixed(entries: &[String], family: Family) -> Result<FixedParams> {
    let mut fixed = FixedParams::default();
    let mut bell = [None; 3];
    for entry in entries {
        let (key, value) =
            entry.split_once('=').ok_or_else(|| Error::Parse(format!("--fixed expects key=value, got {entry:?}")))?;
        let value: f64 = value.parse().map_err(|e| Error::Parse(format!("bad number {value:?} for {key}: {e}")))?;
        match key {
            "p" | "F" | "C" if family.state_param().map(|p| p.name()) == Some(key) => fixed.state = Some(value),
            "axis" if family == Family::Pointer && value.fract() == 0.0 && value >= 0.0 => {
                fixed.axis = PointerAxis::from_index(value as usize)?
            }
            "c1" | "c2" | "c3" if family == Family::Bell => {
                bell[key[1..].parse::<usize>().expect("c1..c3") - 1] = Some(value)
            }
            _ => return Err(Error::Parse(format!("--fixed {key} does not apply to the {family} family"))),
        }
    }
    if let [Some(c1), Some(c2), Some(c3)] = bell {
        fixed.bell = Some([c1, c2, c3]);
    } else if bell.iter().any(Option::is_some) {
        return Err(Error::Parse("bell sweeps need all of c1, c2, c3".into()));
    }
    Ok(fixed)
}

fn parse_bracket(s: &str) -> Result<(f64, f64)> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| Error::Parse(format!("bracket {s:?} is not lo:hi")))?;
    let num = |v: &str| v.parse::<f64>().map_err(|e| Error::Parse(format!("bad number {v:?} in bracket: {e}")));
    Ok((num(lo)?, num(hi)?))
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Eval { state, entropy, json } => {
            let report = eval_point(&state, &entropy.params()?)?;
            if json {
                return print_json(&report);
            }
            let d = &report.discord;
            println!("state        {}", report.state);
            println!("entropy      {}", report.entropy);
            println!("signed       {:.12}", d.signed);
            println!("absolute     {:.12}", d.absolute);
            println!("marginal     {:.12}", d.marginal_entropy);
            println!("conditional  {:.12}", d.conditional_term);
            println!("joint        {:.12}", d.joint_entropy);
            println!("negativity   {:.12}", report.negativity);
            println!("eigenvalues  {:?}", report.eigenvalues);
            println!("valid        {}", report.validity.valid);
        }
        Command::Sweep { state_family, sweep, sweep2, entropy, fixed, out } => {
            let mut fixed_params = parse_fixed(&fixed, state_family)?;
            fixed_params.q = entropy.q;
            fixed_params.r = entropy.r;
            let axes = std::iter::once(sweep).chain(sweep2).collect();
            let spec = SweepSpec::new(state_family, axes, entropy.entropy, fixed_params)?;
            let rows = sweep_rows(&spec)?;
            let mut buf = Vec::new();
            write_csv(&spec, &rows, &mut buf)?;
            if out.as_os_str() == "-" {
                std::io::stdout().write_all(&buf).map_err(|e| Error::Io { path: "<stdout>".into(), source: e })?;
            } else {
                std::fs::write(&out, buf).map_err(|e| Error::Io { path: out.clone(), source: e })?;
                eprintln!("wrote {} rows to {}", rows.len(), out.display());
            }
        }
        Command::Root { state_family, entropy, bracket, tol, json } => {
            let query = RootQuery::new(state_family, entropy.params()?, parse_bracket(&bracket)?, tol)?;
            let root = find_zero_discord(&query)?;
            if json {
                return print_json(&root);
            }
            println!("root      {:.12}", root.root);
            println!("discord   {:.6e}", root.value);
            println!("bracket   [{:.12}, {:.12}]", root.bracket.0, root.bracket.1);
            if root.touching {
                println!("note      discord touches zero without changing sign");
            }
        }
        Command::Figures { out } => {
            let manifest = reproduce_figures(&out)?;
            for fig in &manifest.figures {
                println!("{}", out.join(&fig.file).display());
            }
            println!("{}", out.join("manifest.json").display());
        }
        Command::Oracle { state, entropy, grid, json } => {
            let ent = entropy.params()?;
            let resolved = state.resolve()?;
            let closed = discord_bell(&resolved.bell, &ent)?;
            let oracle = discord_oracle(&resolved.matrix, &ent, grid)?;
            let delta = oracle.result.signed - closed.signed;
            if json {
                return print_json(&serde_json::json!({
                    "closed_form": closed,
                    "oracle": oracle,
                    "delta": delta,
                }));
            }
            let z = oracle.direction.z();
            println!("closed form  {:.12}", closed.signed);
            println!("oracle       {:.12}", oracle.result.signed);
            println!("delta        {delta:.3e}");
            println!("direction    ({:.6}, {:.6}, {:.6})", z[0], z[1], z[2]);
            println!("theta        {:.9}", oracle.theta);
            println!("directions   {}", oracle.directions_scanned);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
