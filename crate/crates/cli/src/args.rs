use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "parhom", version, about = "Parity homomorphism counting and hardness gadgets")]
pub struct Cli {
    /// Print the full JSON report instead of a one-line summary.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(flatten)]
    pub budget: BudgetArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Largest candidate graph in gadget and distinguisher searches.
    #[arg(long, global = true, value_name = "N", env = "PARHOM_BUDGET_VERTICES")]
    pub budget_vertices: Option<usize>,

    /// Candidates examined before a search gives up.
    #[arg(long, global = true, value_name = "N", env = "PARHOM_BUDGET_CANDIDATES")]
    pub budget_candidates: Option<usize>,

    /// Largest compiled instance the parity verifier will count.
    #[arg(long, global = true, value_name = "N", env = "PARHOM_BUDGET_INSTANCE")]
    pub budget_instance: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    LexLeast,
    LexGreatest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BatterySize {
    /// Graphs up to 4 vertices and 20 random ones on 5 or 6.
    Small,
    /// Graphs up to 5 vertices and 100 random ones on 6 to 8.
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree profile, cycle census and symmetry summary of a host.
    Analyze { host: PathBuf },

    /// Involution-free reduction chain.
    Reduce {
        host: PathBuf,
        #[arg(long, value_enum, default_value = "lex-least")]
        policy: Policy,
    },

    /// Search for a graph whose hom-count parities into two hosts differ.
    Distinguish {
        first: PathBuf,
        second: PathBuf,
        /// Distinguished vertices of the first host, comma separated.
        #[arg(long, value_delimiter = ',')]
        first_tuple: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        second_tuple: Vec<String>,
        /// Only connected candidates.
        #[arg(long)]
        connected: bool,
    },

    /// Build a hardness gadget certificate, or re-check one with --verify.
    Gadget {
        host: PathBuf,
        #[arg(long, value_name = "CERT")]
        verify: Option<PathBuf>,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Compile an input graph into a pinned instance over the host.
    Compile {
        graph: PathBuf,
        #[arg(long)]
        gadget: PathBuf,
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Check the compiled parity against independent-set counts.
    Verify {
        #[arg(long)]
        gadget: PathBuf,
        #[arg(long)]
        host: PathBuf,
        /// Input graphs to check; repeatable.
        #[arg(long)]
        graph: Vec<PathBuf>,
        #[arg(long, value_enum)]
        battery: Option<BatterySize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Polynomial, hard with certificate, inconclusive or out of scope.
    Classify { host: PathBuf },

    /// Count homomorphisms from a pattern into a host.
    Count {
        pattern: PathBuf,
        host: PathBuf,
        #[arg(long)]
        pinning: Option<PathBuf>,
        #[arg(long, conflicts_with = "exact")]
        mod2: bool,
        #[arg(long)]
        exact: bool,
    },

    /// Run every graph, pinning and certificate file in a directory.
    Battery {
        dir: PathBuf,
        #[arg(long)]
        fail_fast: bool,
    },
}
