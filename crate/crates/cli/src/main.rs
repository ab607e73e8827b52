//! `cogrowth`: obstructions, cogrowth and Rauzy graphs from the command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 resource limit exceeded
//! (partial results are flagged), 3 certification negative.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "cogrowth",
    version,
    about = "Obstructions and cogrowth of algebras and infinite words"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Finitely presented algebras given by a relation file.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Infinite words given by a source descriptor.
    #[command(subcommand)]
    Word(WordCmd),
    /// Rauzy graphs and the entropy regulator.
    #[command(subcommand)]
    Rauzy(RauzyCmd),
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    Dot,
    Text,
}

#[derive(Args, Debug)]
pub struct AlgebraArgs {
    /// Relation file (`alphabet: x y` then `relation: ...` lines).
    #[arg(long)]
    pub relations: PathBuf,
    /// Cap on the number of basis elements during completion.
    #[arg(long, default_value_t = 20_000)]
    pub limit_basis: usize,
}

#[derive(Args, Debug)]
pub struct SourceArgs {
    /// `fib`, `periodic:<word>`, `morphic:a->ab,b->a;seed=a` or `prefix:<path>;complete=<n>`.
    #[arg(long)]
    pub source: String,
    /// Declared alphabet (letters in precedence order); defaults to the source letters.
    #[arg(long)]
    pub alphabet: Option<String>,
    /// Longest prefix generated while waiting for factors to stabilize.
    #[arg(long, default_value_t = cogrowth::langword::DEFAULT_PREFIX_CAP)]
    pub seed_cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum AlgebraCmd {
    /// Obstructions (leading words of the reduced Gröbner basis) up to a length.
    Obstructions {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// `n<TAB>O_A(n)` for n = 1..=max-len.
    Cogrowth {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// `n<TAB>V(n)` for n = 0..=max-len: irreducible words of length at most n.
    Growth {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        max_len: usize,
        /// Cap on live states of the avoidance automaton.
        #[arg(long, default_value_t = 1_000_000)]
        limit_states: usize,
        /// Print the live-state transfer matrix instead of the counts.
        #[arg(long)]
        matrix: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Echo the relation file canonically, or reduce a polynomial.
    Nf {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Print the parsed relation file in canonical form.
        #[arg(long, conflicts_with = "poly")]
        echo: bool,
        /// Polynomial to reduce modulo the completed basis.
        #[arg(long, required_unless_present = "echo")]
        poly: Option<String>,
        /// Word bound for completion (default: twice the largest degree).
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Finite-basis certificate: no obstruction length in [N, 2N].
    Certify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long = "N", id = "N")]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
pub enum WordCmd {
    /// Minimal forbidden words up to a length, sorted by length then letters.
    Obstructions {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// `n<TAB>O_W(n)` for n = 1..=max-len.
    Cogrowth {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Number of obstructions of a periodic word.
    Colength {
        #[arg(long)]
        period: String,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exhaustive check of the two colength bounds over binary periods.
    Bounds {
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
pub enum RauzyCmd {
    /// The Rauzy graph R_n of a source.
    Graph {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// `n<TAB>er(R_n)` for n = from..=n.
    Er {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        n: usize,
        /// First n to report (default: only n).
        #[arg(long)]
        from: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Edge-deletion check on L^{3 er(H)}(H) for a Rauzy graph or random graphs.
    LemmaCheck {
        #[arg(long, required_unless_present = "random", conflicts_with = "random")]
        source: Option<String>,
        /// Rauzy graph order when checking a source.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = cogrowth::langword::DEFAULT_PREFIX_CAP)]
        seed_cap: usize,
        /// Number of random strongly connected graphs to check.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest vertex count of the random graphs.
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        /// Largest entropy regulator of the random graphs.
        #[arg(long, default_value_t = 2)]
        max_er: usize,
        /// Cap on the edges of the iterated line graph.
        #[arg(long, default_value_t = 200_000)]
        size_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Algebra(cmd) => commands::algebra(cmd),
        Command::Word(cmd) => commands::word(cmd),
        Command::Rauzy(cmd) => commands::rauzy(cmd),
    };
    match result {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            if let Some(partial) = &e.partial {
                print!("{partial}");
            }
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
