mod commands;
mod report;

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rimforge::{Budget, Error, DEFAULT_MAX_COSETS};

use report::{Report, Status};

#[derive(Parser)]
#[command(name = "rimforge", version, about = "Surface-knot groups, branched covers and Alexander invariants")]
struct Cli {
    /// Coset budget for every enumeration
    #[arg(long, global = true, env = "RIMFORGE_MAX_COSETS", default_value_t = DEFAULT_MAX_COSETS)]
    max_cosets: usize,

    /// Move budget for Tietze simplification
    #[arg(long, global = true, default_value_t = 10_000)]
    tietze_budget: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print a presentation or knot in normal form
    Normalize {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        knot: Option<String>,
    },
    /// Coset enumeration: group order, or subgroup index
    Enumerate {
        #[arg(long)]
        group: String,
        /// Subgroup generator words
        #[arg(long = "subgroup")]
        subgroup: Vec<String>,
    },
    /// Tietze simplification
    Simplify {
        #[arg(long)]
        group: String,
        /// Keep the first N generators
        #[arg(long, default_value_t = 0)]
        protect: usize,
    },
    /// Fundamental group of the d-fold cyclic branched cover
    BranchedCover {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        d: u64,
    },
    /// Order of H_1 of the d-fold branched cover, and H_1 of the unbranched cover
    CoverHomology {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        d: u64,
    },
    /// Iterated twisted rim surgery on a base surface-knot group
    RimSurgery {
        #[arg(long)]
        base: String,
        #[arg(long)]
        meridian: String,
        /// `[(knot,m),...]`
        #[arg(long, default_value = "[]")]
        steps: String,
    },
    /// Alexander polynomial and determinant
    Alexander {
        #[arg(long)]
        knot: String,
    },
    /// Partition knots by Alexander coefficient multiset
    Distinguish {
        /// `;`-separated knot specs
        #[arg(long)]
        knots: String,
    },
    /// Condition (K_d) and commutator witnesses for gamma^d
    Kd {
        #[arg(long)]
        group: String,
        #[arg(long)]
        gamma: String,
        /// `v1,w1;v2,w2`; searched when absent
        #[arg(long)]
        witnesses: Option<String>,
        #[arg(long, default_value_t = commands::DEFAULT_SEARCH_BUDGET)]
        search_budget: u64,
    },
    /// Presentations of the symplectic construction with certificates
    Symplectic {
        #[arg(long)]
        group: String,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        witnesses: Option<String>,
        #[arg(long, default_value_t = commands::DEFAULT_SEARCH_BUDGET)]
        search_budget: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Normalize { .. } => "normalize",
            Command::Enumerate { .. } => "enumerate",
            Command::Simplify { .. } => "simplify",
            Command::BranchedCover { .. } => "branched-cover",
            Command::CoverHomology { .. } => "cover-homology",
            Command::RimSurgery { .. } => "rim-surgery",
            Command::Alexander { .. } => "alexander",
            Command::Distinguish { .. } => "distinguish",
            Command::Kd { .. } => "kd",
            Command::Symplectic { .. } => "symplectic",
        }
    }
}

fn run(cmd: &Command, r: &mut Report, budget: &Budget) -> Result<(), Error> {
    match cmd {
        Command::Normalize { group, knot } => commands::normalize(r, group.as_deref(), knot.as_deref()),
        Command::Enumerate { group, subgroup } => commands::enumerate_cmd(r, group, subgroup, budget),
        Command::Simplify { group, protect } => commands::simplify(r, group, *protect, budget),
        Command::BranchedCover { knot, d } => commands::branched_cover(r, knot, *d, budget),
        Command::CoverHomology { knot, d } => commands::cover_homology(r, knot, *d, budget),
        Command::RimSurgery { base, meridian, steps } => commands::rim_surgery(r, base, meridian, steps, budget),
        Command::Alexander { knot } => commands::alexander(r, knot),
        Command::Distinguish { knots } => commands::distinguish(r, knots),
        Command::Kd { group, gamma, witnesses, search_budget } => {
            commands::kd(r, group, gamma, witnesses.as_deref(), *search_budget, budget)
        }
        Command::Symplectic { group, gamma, witnesses, search_budget } => {
            commands::symplectic(r, group, gamma, witnesses.as_deref(), *search_budget, budget)
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let budget = Budget { max_cosets: cli.max_cosets, tietze_moves: cli.tietze_budget };
    let mut r = Report::new(cli.command.name());
    if let Err(e) = run(&cli.command, &mut r, &budget) {
        r.result("error", e.to_string());
        r.degrade(if matches!(e, Error::Indeterminate { .. }) { Status::Indeterminate } else { Status::Error });
    }
    let text = match cli.format {
        Format::Text => r.to_text(),
        Format::Json => serde_json::to_string_pretty(&r.to_json()).expect("reports serialize") + "\n",
    };
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    std::process::exit(r.status.exit_code());
}
