//! Command-line front end: argument definitions, the commands, and the
//! example corpus. Every command produces one JSON report on stdout.

pub mod commands;
pub mod corpus;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::run;
pub use report::{CliError, Outcome};

#[derive(Debug, Parser)]
#[command(name = "respgames", version, about = "Responsibility in extensive form games")]
pub struct Cli {
    #[command(flatten)]
    pub config: GlobalConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalConfig {
    /// Largest game the compilers and unrolling may build (defaults to
    /// RESPGAMES_NODE_CAP, else 100000).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub node_cap: Option<u64>,
    /// Largest player count for which coalitions are enumerated.
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..=30))]
    pub subset_cap: u32,
    /// Largest number of pure strategies the brute-force checks enumerate.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub oracle_cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

impl GlobalConfig {
    pub fn node_cap(&self) -> usize {
        self.node_cap.map(|c| c as usize).unwrap_or_else(respgames_core::node_cap)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    F,
    S,
    C,
}

impl From<KindArg> for respgames_core::Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::F => respgames_core::Kind::F,
            KindArg::S => respgames_core::Kind::S,
            KindArg::C => respgames_core::Kind::C,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    #[value(name = "C")]
    Coalition,
    #[value(name = "Cbar")]
    Opponent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LabelArg {
    #[value(name = "E")]
    E,
    #[value(name = "notE")]
    NotE,
}

/// The backward context shared by the responsibility commands.
#[derive(Debug, Clone, Args)]
pub struct ContextArgs {
    /// File holding the play: `{"leaf": "s8"}` or `{"actions": ["A", "h2", "t3"]}`.
    #[arg(long)]
    pub play: Option<PathBuf>,
    /// File holding the strategy profile (a list of per-player strategies).
    #[arg(long)]
    pub profile: Option<PathBuf>,
    /// Do not refine information sets by coalition history (for
    /// reproducing what goes wrong without it).
    #[arg(long)]
    pub no_refine: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a game file is well formed.
    Validate { file: PathBuf },
    /// Check a game for perfect recall.
    Recall { file: PathBuf },
    /// The two-player game induced by a coalition, with its origin map.
    Induce {
        #[arg(long)]
        game: PathBuf,
        #[arg(long)]
        coalition: String,
        #[arg(long)]
        no_refine: bool,
    },
    /// Exact value of a two-player game for one side.
    Value {
        #[arg(long)]
        game: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Coalition)]
        side: SideArg,
        #[arg(long, value_enum, default_value_t = LabelArg::NotE)]
        win: LabelArg,
        /// Induce the game of this coalition first.
        #[arg(long)]
        coalition: Option<String>,
        /// Include the optimal realization plan.
        #[arg(long)]
        plan: bool,
    },
    /// Decide whether a coalition is responsible.
    Decide {
        #[arg(long)]
        game: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        coalition: String,
        #[command(flatten)]
        ctx: ContextArgs,
        /// For kind s: decide the property on every E-play instead of the
        /// given one.
        #[arg(long)]
        all_e_plays: bool,
        /// Also run the brute-force checker (bounded by --oracle-cap).
        #[arg(long)]
        oracle: bool,
    },
    /// All minimal coalitions with the property.
    Minimal {
        #[arg(long)]
        game: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        ctx: ContextArgs,
    },
    /// Responsibility values of every player.
    Shapley {
        #[arg(long)]
        game: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[command(flatten)]
        ctx: ContextArgs,
        /// Evaluate the raw property on every coalition and report where it
        /// is not monotone.
        #[arg(long)]
        audit: bool,
    },
    /// Causal models.
    #[command(subcommand)]
    Causal(CausalCommand),
    /// Concurrent epistemic game structures.
    #[command(subcommand)]
    Cegs(CegsCommand),
    /// The bundled example corpus.
    #[command(subcommand)]
    Examples(ExamplesCommand),
    /// Print a random game or causal model.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GenWhat::Game)]
        what: GenWhat,
        #[arg(long, default_value_t = 3)]
        players: u32,
        #[arg(long, default_value_t = 40)]
        nodes: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenWhat {
    Game,
    Causal,
}

#[derive(Debug, Clone, Args)]
pub struct CauseArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Exogenous values, `U1=1,U2=0`.
    #[arg(long)]
    pub context: String,
    /// The candidate cause, `X=1,Y=0`.
    #[arg(long)]
    pub cause: String,
    /// The event, e.g. `A=0 | B=1`.
    #[arg(long)]
    pub formula: String,
}

#[derive(Debug, Subcommand)]
pub enum CausalCommand {
    /// The game of a causal model, optionally labelled by an event.
    Compile {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: Option<String>,
        /// Also emit the profile and play of this context.
        #[arg(long)]
        context: Option<String>,
    },
    /// But-for causality, directly and through the compiled game.
    Butfor {
        #[command(flatten)]
        args: CauseArgs,
    },
    /// Actual causality.
    Ac {
        #[command(flatten)]
        args: CauseArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum CegsCommand {
    Validate {
        file: PathBuf,
    },
    /// Unroll into an extensive form game.
    Unroll {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        init: String,
        #[arg(long)]
        horizon: u32,
        /// Bad states, `s3,s7`.
        #[arg(long, default_value = "")]
        bad: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExamplesCommand {
    List,
    /// Compute the responsibility values of an example's scenarios and
    /// compare them with the expectations.
    Run {
        #[arg(long)]
        name: String,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[arg(long)]
        scenario: Option<String>,
    },
    /// Write an example's game, plays and profiles as JSON files.
    Export {
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
}
