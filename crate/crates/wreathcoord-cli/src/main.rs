//! Command-line front end: decompose, encode, decode, solve and verify
//! puzzle states expressed in cycle notation.
//!
//! Exit status: 0 success, 1 domain error (element not in the group, bad
//! chain, unreadable file), 2 usage error. Payload goes to stdout, warnings
//! and errors to stderr.

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wreathcoord::puzzle::{named_chain, ChainRecipe, PuzzleDefinition};
use wreathcoord::{
    Coordinates, Decomposition, Permutation, SubgroupChain, Word, DEFAULT_INDEX_CAP,
};

const INDEX_CAP_VAR: &str = "WREATHCOORD_INDEX_CAP";

#[derive(Parser)]
#[command(
    name = "wreathcoord",
    about = "Hierarchical coordinates on permutation puzzles",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PuzzleArg {
    /// Built-in puzzle (`pocket`, `rubik3`) or a puzzle file path.
    puzzle: String,
}

#[derive(Args)]
struct ChainArg {
    /// Chain recipe: `two-level`, `cornerwise`, `corner-edges`,
    /// `point-stab`, or a chain file path. Defaults to the puzzle file's
    /// own recipe, else `point-stab`.
    #[arg(long)]
    chain: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the order of the puzzle group.
    Order(PuzzleArg),
    /// Print per-level index counts, component orders and degrees.
    Decompose {
        #[command(flatten)]
        puzzle: PuzzleArg,
        #[command(flatten)]
        chain: ChainArg,
    },
    /// Print a seeded random group element in cycle notation.
    Scramble {
        #[command(flatten)]
        puzzle: PuzzleArg,
        #[arg(long)]
        seed: u64,
    },
    /// Print the coordinate tuple of an element.
    Encode {
        #[command(flatten)]
        puzzle: PuzzleArg,
        #[command(flatten)]
        chain: ChainArg,
        /// The element, in cycle notation.
        #[arg(long)]
        element: String,
    },
    /// Print the element of a coordinate tuple in cycle notation.
    Decode {
        #[command(flatten)]
        puzzle: PuzzleArg,
        #[command(flatten)]
        chain: ChainArg,
        /// Comma-separated coordinate values, e.g. `3,1,4`.
        #[arg(long)]
        coords: String,
    },
    /// Print a word over the puzzle moves solving the element.
    Solve {
        #[command(flatten)]
        puzzle: PuzzleArg,
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        element: String,
        /// Print one word per level killer, top-down.
        #[arg(long)]
        per_level: bool,
    },
    /// Recompute element·word; print SOLVED or the residual's coordinates.
    Verify {
        #[command(flatten)]
        puzzle: PuzzleArg,
        #[command(flatten)]
        chain: ChainArg,
        #[arg(long)]
        element: String,
        #[arg(long)]
        word: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<(), String> {
    match command {
        Command::Order(p) => {
            let puzzle = load_puzzle(&p.puzzle)?;
            println!("{}", puzzle.group().order());
            Ok(())
        }
        Command::Decompose { puzzle, chain } => {
            let puzzle = load_puzzle(&puzzle.puzzle)?;
            let d = build_decomposition(&puzzle, chain.chain.as_deref())?;
            for (i, level) in d.levels().iter().enumerate() {
                println!(
                    "{} {} {} {}",
                    i + 1,
                    level.index_count(),
                    level.action().order(),
                    level.index_count()
                );
            }
            println!("total {}", d.tuple_count());
            Ok(())
        }
        Command::Scramble { puzzle, seed } => {
            let puzzle = load_puzzle(&puzzle.puzzle)?;
            println!("{}", puzzle.group().random_element(seed));
            Ok(())
        }
        Command::Encode {
            puzzle,
            chain,
            element,
        } => {
            let puzzle = load_puzzle(&puzzle.puzzle)?;
            let g = parse_element(&puzzle, &element)?;
            let d = build_decomposition(&puzzle, chain.chain.as_deref())?;
            let c = d.encode(&g).map_err(stringify)?;
            println!("{c}");
            Ok(())
        }
        Command::Decode {
            puzzle,
            chain,
            coords,
        } => {
            let puzzle = load_puzzle(&puzzle.puzzle)?;
            let c = Coordinates::parse(&coords).map_err(stringify)?;
            let d = build_decomposition(&puzzle, chain.chain.as_deref())?;
            println!("{}", d.decode(&c).map_err(stringify)?);
            Ok(())
        }
        Command::Solve {
            puzzle,
            chain,
            element,
            per_level,
        } => {
            let puzzle = load_puzzle(&puzzle.puzzle)?;
            let g = parse_element(&puzzle, &element)?;
            let d = build_decomposition(&puzzle, chain.chain.as_deref())?;
            if per_level {
                for word in d.solve_words_per_level(&g).map_err(stringify)? {
                    println!("{word}");
                }
            } else {
                println!("{}", d.solve_word(&g).map_err(stringify)?);
            }
            Ok(())
        }
        Command::Verify {
            puzzle,
            chain,
            element,
            word,
        } => {
            let puzzle = load_puzzle(&puzzle.puzzle)?;
            let g = parse_element(&puzzle, &element)?;
            let w = Word::parse(&word).map_err(stringify)?;
            let moved = g.compose(&puzzle.group().evaluate_word(&w).map_err(stringify)?);
            if moved.is_identity() {
                println!("SOLVED");
            } else {
                let d = build_decomposition(&puzzle, chain.chain.as_deref())?;
                println!("{}", d.encode(&moved).map_err(stringify)?);
            }
            Ok(())
        }
    }
}

fn stringify(e: wreathcoord::Error) -> String {
    e.to_string()
}

fn load_puzzle(spec: &str) -> Result<PuzzleDefinition, String> {
    match spec {
        "pocket" => Ok(PuzzleDefinition::pocket_cube()),
        "rubik3" => Ok(PuzzleDefinition::rubiks_cube()),
        path => PuzzleDefinition::load(Path::new(path)).map_err(stringify),
    }
}

fn parse_element(puzzle: &PuzzleDefinition, text: &str) -> Result<Permutation, String> {
    let p = Permutation::parse_cycles(text, puzzle.degree()).map_err(stringify)?;
    if !puzzle.group().contains(&p) {
        return Err(format!(
            "element {p} is not reachable in puzzle {}",
            puzzle.name()
        ));
    }
    Ok(p)
}

fn resolve_chain(puzzle: &PuzzleDefinition, spec: Option<&str>) -> Result<SubgroupChain, String> {
    match spec {
        Some(name @ ("two-level" | "cornerwise" | "corner-edges" | "point-stab")) => {
            named_chain(puzzle, name).map_err(stringify)
        }
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read chain file {path}: {e}"))?;
            let recipe = ChainRecipe::parse(&text).map_err(stringify)?;
            recipe.resolve(puzzle).map_err(stringify)
        }
        None => match puzzle.recipe() {
            Some(recipe) => recipe.resolve(puzzle).map_err(stringify),
            None => named_chain(puzzle, "point-stab").map_err(stringify),
        },
    }
}

fn build_decomposition(
    puzzle: &PuzzleDefinition,
    chain_spec: Option<&str>,
) -> Result<Decomposition, String> {
    let chain = resolve_chain(puzzle, chain_spec)?;
    for warning in chain.warnings() {
        eprintln!("warning: {warning}");
    }
    let cap = index_cap()?;
    Decomposition::build_with_cap(chain, cap).map_err(stringify)
}

fn index_cap() -> Result<usize, String> {
    match std::env::var(INDEX_CAP_VAR) {
        Ok(value) => value
            .parse()
            .map_err(|_| format!("{INDEX_CAP_VAR} must be a positive integer, got {value:?}")),
        Err(_) => Ok(DEFAULT_INDEX_CAP),
    }
}
