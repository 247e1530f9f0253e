//! `rearrange`: distances, sorting certificates, breakpoint analysis,
//! reductions and the lemma verification suite from the command line.
//!
//! Exit codes: 0 success (or a yes answer), 1 a no answer, 2 usage or input
//! error, 3 a failed verification or certificate check.

mod commands;
mod json;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "rearrange", version, about = "Weighted sorting of permutations by rearrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Pricing {
    /// Model name: T, R, Rs, M1..M6, M1s..M6s (M1bar..M6bar), Mf1..Mf3
    #[arg(long)]
    pub model: String,

    /// Cost scheme: `uniform`, `w:W1,W2` (`w:-,W2` without reversals) or
    /// `f:F0,F1,F2,F3`
    #[arg(long, default_value = "uniform")]
    pub scheme: String,

    /// Accept weights outside the range where the bounds are proven
    #[arg(long)]
    pub unchecked_weights: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimum sorting cost of a permutation
    Distance {
        #[arg(long, allow_hyphen_values = true)]
        perm: String,
        #[command(flatten)]
        pricing: Pricing,
        /// Only search for sequences of cost at most this value; exit 1 if
        /// there is none
        #[arg(long)]
        budget: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Optimal sorting certificate, replay of a given sequence, or a check
    /// of a stored certificate
    Sort {
        #[arg(long, required_unless_present = "check", allow_hyphen_values = true)]
        perm: Option<String>,
        #[arg(long, required_unless_present = "check")]
        model: Option<String>,
        #[arg(long, default_value = "uniform")]
        scheme: String,
        #[arg(long)]
        unchecked_weights: bool,
        /// Replay this sequence instead of searching, e.g. "t(1,2,4) r(1,3)"
        #[arg(long, conflicts_with = "check")]
        ops: Option<String>,
        /// Check a JSON certificate from a file, or `-` for stdin
        #[arg(long, conflicts_with_all = ["perm", "model"])]
        check: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Breakpoint count and positions
    Breakpoints {
        #[arg(long, allow_hyphen_values = true)]
        perm: String,
        /// rev, trans, rev-frag or trans-frag
        #[arg(long, required_unless_present = "model", conflicts_with = "model")]
        kind: Option<String>,
        /// Use the breakpoint kind of this model
        #[arg(long)]
        model: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Strip decomposition
    Strips {
        #[arg(long, allow_hyphen_values = true)]
        perm: String,
        #[arg(long, required_unless_present = "model", conflicts_with = "model")]
        kind: Option<String>,
        #[arg(long)]
        model: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
    /// Map an SB3T or FWST instance to a target problem
    Reduce {
        /// sb3t or fwst
        #[arg(long)]
        from: String,
        /// wsr-signed:MODEL, wsr-unsigned:MODEL, fwst, fwsr:Mf2 or fwsr:Mf3
        #[arg(long)]
        to: String,
        #[arg(long, allow_hyphen_values = true)]
        perm: String,
        /// Defaults to `uniform` for weighted targets and `f:0,1,2,3` for
        /// fragmentation targets
        #[arg(long)]
        scheme: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
    },
    /// Run the exhaustive lemma and reduction checks
    Verify {
        /// all, reduction, or one lemma id (see README)
        #[arg(long, default_value = "all")]
        lemma: String,
        /// Size bound applied to every check (defaults differ per check)
        #[arg(long)]
        n_max: Option<usize>,
        /// Worker threads; 1 runs sequentially, 0 uses every core
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
        /// Seed for the randomized normalization trials
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Random sequences for the normalization check
        #[arg(long)]
        trials: Option<usize>,
        /// Longest random sequence for the normalization check
        #[arg(long)]
        seq_len_max: Option<usize>,
        /// Switch on a deliberate bug to show the check catches it
        #[arg(long)]
        inject_fault: Option<String>,
        /// Include wall times in JSON output
        #[arg(long)]
        timings: bool,
    },
    /// List permutations of a family
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        signed: bool,
        #[arg(long, value_enum, default_value = "all")]
        family: commands::Family,
        #[arg(long, value_enum, default_value = "text")]
        emit: Emit,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Distance {
            perm,
            pricing,
            budget,
            emit,
        } => commands::distance(&perm, &pricing, budget.as_deref(), emit),
        Command::Sort {
            perm,
            model,
            scheme,
            unchecked_weights,
            ops,
            check,
            emit,
        } => match check {
            Some(path) => commands::check_certificate(&path, emit),
            None => {
                let pricing = Pricing {
                    model: model.expect("required by clap"),
                    scheme,
                    unchecked_weights,
                };
                commands::sort(&perm.expect("required by clap"), &pricing, ops.as_deref(), emit)
            }
        },
        Command::Breakpoints { perm, kind, model, emit } => {
            commands::breakpoints(&perm, kind.as_deref(), model.as_deref(), emit)
        }
        Command::Strips { perm, kind, model, emit } => commands::strips(&perm, kind.as_deref(), model.as_deref(), emit),
        Command::Reduce {
            from,
            to,
            perm,
            scheme,
            emit,
        } => commands::reduce(&from, &to, &perm, scheme.as_deref(), emit),
        Command::Verify {
            lemma,
            n_max,
            jobs,
            emit,
            seed,
            trials,
            seq_len_max,
            inject_fault,
            timings,
        } => commands::verify(commands::VerifyArgs {
            lemma,
            n_max,
            jobs,
            emit,
            seed,
            trials,
            seq_len_max,
            inject_fault,
            timings,
        }),
        Command::Enumerate { n, signed, family, emit } => commands::enumerate(n, signed, family, emit),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
