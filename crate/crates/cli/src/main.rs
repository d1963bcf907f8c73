//! `hallgebra`: batch front end over the exact Hall-algebra workbench.
//!
//! Exit codes: 0 on success, 1 when a verdict fails, 2 on usage or budget
//! errors. Output is byte-stable for a fixed command line.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hallgebra::wreath::WREATH_BUDGET;
use hallgebra::DEFAULT_BUDGET;
use report::Format;

#[derive(Parser, Debug)]
#[command(name = "hallgebra", version, about = "Exact Hall algebras, Hecke algebras and wreath-product characters")]
struct Cli {
    /// Cap on enumerated records: groupoid morphisms, or the order of
    /// G ≀ S_n for the wreath commands (defaults 1000000 and 5000).
    #[arg(long, global = true, value_parser = positive)]
    budget: Option<usize>,
    /// Accepted and ignored; every computation is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    out: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Vect,
    F1Free,
    AbGroups,
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::F1Free)]
    family: FamilyArg,
    /// Field size for `vect`.
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Prime for `ab-groups`.
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Group for `f1-free`.
    #[arg(long = "G", default_value = "trivial")]
    group: String,
    /// Bound on dimension, rank, or log_p of the order.
    #[arg(long, default_value_t = 2)]
    bound: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Subobjects,
    Ses,
    Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    S,
    Hecke,
    Mutations,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hall structure constants g^M_{N,L} of a proto-abelian instance.
    HallTable {
        #[command(flatten)]
        inst: InstanceArgs,
        /// `subobjects` counts subobjects, `ses` counts short exact
        /// sequences, `span` also compares against the groupoid span route.
        #[arg(long, value_enum, default_value_t = Route::Subobjects)]
        route: Route,
    },
    /// Structure constants of the Hecke algebra of (G, H) in the double coset basis.
    HeckeTable {
        #[arg(long = "G")]
        group: String,
        #[arg(long = "H")]
        subgroup: String,
    },
    /// Action constants of the Hecke algebra of (G, H) on functions on P\G/H.
    HeckeModule {
        #[arg(long = "G")]
        group: String,
        #[arg(long = "H")]
        subgroup: String,
        #[arg(long = "P")]
        module: String,
    },
    /// Degree-3 2-Segal and unitality checks.
    SegalCheck {
        #[arg(long, value_enum)]
        construction: Construction,
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long = "H", default_value = "trivial")]
        subgroup: String,
    },
    /// Character table of G ≀ S_n.
    WreathCharTable {
        #[arg(long = "G")]
        group: String,
        #[arg(long)]
        n: usize,
    },
    /// Checks ch(Ind(X_λ ⊠ X_μ)) = S_λ S_μ for ‖λ‖ + ‖μ‖ ≤ max-total.
    ChVerify {
        #[arg(long = "G")]
        group: String,
        #[arg(long, default_value_t = 3)]
        max_total: usize,
    },
    /// Schur-Weyl counting identities for G ≀ S_n against R^d_λ.
    Schurweyl {
        #[arg(long = "G")]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
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
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    let wreath_budget = cli.budget.unwrap_or(WREATH_BUDGET);
    let result = match &cli.command {
        Command::HallTable { inst, route } => commands::hall_table(inst, *route, budget),
        Command::HeckeTable { group, subgroup } => commands::hecke_table_cmd(group, subgroup, budget),
        Command::HeckeModule { group, subgroup, module } => commands::hecke_module_cmd(group, subgroup, module, budget),
        Command::SegalCheck {
            construction,
            inst,
            subgroup,
        } => commands::segal_check(*construction, inst, subgroup, budget),
        Command::WreathCharTable { group, n } => commands::wreath_char_table(group, *n, wreath_budget),
        Command::ChVerify { group, max_total } => commands::ch_verify(group, *max_total, wreath_budget),
        Command::Schurweyl { group, n, d } => commands::schurweyl(group, *n, *d, wreath_budget),
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let bytes = match report.render(cli.out) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::stdout().write_all(&bytes),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(if report.pass { 0 } else { 1 })
}
