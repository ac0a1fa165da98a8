use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use accessibility::cli::{self, Command, Flags};
use accessibility::poly::OrderKind;

#[derive(Parser)]
#[command(name = "accessibility", version, about = "Singular points and accessibility indices of polynomial control-affine systems")]
struct Args {
    #[command(subcommand)]
    command: Cmd,

    /// Monomial order; overrides the file's `order` option.
    #[arg(long, global = true, value_enum)]
    order: Option<Order>,

    /// Bracket depth cap (default 2n).
    #[arg(long, global = true)]
    max_depth: Option<usize>,

    /// Seed for sampling and generic-rank witnesses.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Exit with status 3 when a depth cap stops an analysis without a result.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact accessibility index and singular set (real radicals).
    Index { file: PathBuf },
    /// Singular set from the invariant closure of the minor ideal.
    Singular { file: PathBuf },
    /// Module-chain bound and the singular set at that depth.
    Bound { file: PathBuf },
    /// Strong accessibility index and bound.
    Strong { file: PathBuf },
    /// Points where the distribution has rank below `l`.
    Rank {
        #[arg(long)]
        l: usize,
        file: PathBuf,
    },
    /// Show the immersed polynomial system.
    Immerse {
        /// Verify the pushforward identities modulo the relations.
        #[arg(long)]
        check: bool,
        file: PathBuf,
    },
    /// Every applicable analysis.
    Full { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Degrevlex,
    Lex,
    Deglex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (command, file) = match args.command {
        Cmd::Index { file } => (Command::Index, file),
        Cmd::Singular { file } => (Command::Singular, file),
        Cmd::Bound { file } => (Command::Bound, file),
        Cmd::Strong { file } => (Command::Strong, file),
        Cmd::Rank { l, file } => (Command::Rank { l }, file),
        Cmd::Immerse { check, file } => (Command::Immerse { check }, file),
        Cmd::Full { file } => (Command::Full, file),
    };
    let flags = Flags {
        order: args.order.map(|o| match o {
            Order::Degrevlex => OrderKind::DegRevLex,
            Order::Lex => OrderKind::Lex,
            Order::Deglex => OrderKind::DegLex,
        }),
        max_depth: args.max_depth,
        seed: args.seed,
        strict: args.strict,
    };
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(cli::EXIT_INPUT as u8);
        }
    };
    match cli::run(command, &text, &flags) {
        Ok(doc) => {
            let out = match args.format {
                Format::Text => doc.to_text(),
                Format::Structured => doc.to_json() + "\n",
            };
            // a closed pipe (`| head`) is not an error worth a panic
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::from(cli::exit_code(&doc, &flags) as u8)
        }
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            ExitCode::from(cli::EXIT_INPUT as u8)
        }
    }
}
