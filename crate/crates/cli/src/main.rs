mod dot;
mod report;

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ppe_core::analysis::{
    compare, enumerate_biped, is_invertible, is_pareto_optimal, solve_invertible,
};
use ppe_core::game::GameTree;
use ppe_core::logic::{solve_ppe_logic, LogicBounds, LogicSolution, DEFAULT_VERTEX_LIMIT};
use ppe_core::{
    parse_games, random_game, serialize_game, solve_ppe_general, solve_ppe_quick, solve_spe,
    LogicError,
};

/// Perfect Prediction Equilibrium and backward-induction solvers.
#[derive(Parser)]
#[command(name = "ppe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve every game in the input with one method.
    Solve {
        /// Game file, or `-` for standard input.
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::PpeGeneral)]
        method: Method,
        /// Include the elimination trace (ppe-general only).
        #[arg(long)]
        trace: bool,
        /// Variable bound for the ppe-logic enumeration.
        #[arg(long, default_value_t = 24)]
        max_logic_vars: usize,
    },
    /// Compare the subgame perfect and perfect prediction outcomes.
    Compare { input: PathBuf },
    /// Run every method and check agreement and Pareto optimality.
    Verify {
        input: PathBuf,
        #[arg(long, default_value_t = 24)]
        max_logic_vars: usize,
    },
    /// Print the equation system and its solution.
    Equations {
        input: PathBuf,
        #[arg(long, default_value_t = 24)]
        max_logic_vars: usize,
    },
    /// Print the 18-game biped table.
    Biped,
    /// Export the game as Graphviz DOT with the equilibrium marked.
    #[command(alias = "export-dot")]
    Dot { input: PathBuf },
    /// Generate random games in the text format.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        players: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        branching: usize,
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Spe,
    PpeGeneral,
    PpeQuick,
    PpeLogic,
}

enum Failure {
    Input(String),
    Bound(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Bound(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Bound(m) => f.write_str(m),
        }
    }
}

impl From<LogicError> for Failure {
    fn from(e: LogicError) -> Self {
        if e.is_bound() {
            Failure::Bound(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn read_games(input: &PathBuf) -> Result<Vec<GameTree>, Failure> {
    let text = if input.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(input)
            .map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?
    };
    let games = parse_games(&text).map_err(|e| Failure::Input(e.to_string()))?;
    if games.is_empty() {
        return Err(Failure::Input("no game in input".into()));
    }
    Ok(games)
}

fn logic(tree: &GameTree, max_vars: usize) -> Result<LogicSolution, Failure> {
    let bounds = LogicBounds {
        max_vertices: DEFAULT_VERTEX_LIMIT,
        max_variables: max_vars,
    };
    Ok(solve_ppe_logic(tree, bounds)?)
}

fn verify(tree: &GameTree, max_vars: usize) -> Result<String, Failure> {
    let general = solve_ppe_general(tree).outcome;
    let quick = solve_ppe_quick(tree).outcome;
    let mut lines = vec![
        format!("spe: {}", tree.label(solve_spe(tree).outcome)),
        format!("ppe-general: {}", tree.label(general)),
        format!("ppe-quick: {}", tree.label(quick)),
    ];
    let mut agree = quick == general;
    match logic(tree, max_vars) {
        Ok(l) => {
            agree &= l.outcome == general;
            lines.push(format!("ppe-logic: {}", tree.label(l.outcome)));
        }
        Err(Failure::Bound(m)) => lines.push(format!("ppe-logic: skipped ({m})")),
        Err(e) => return Err(e),
    }
    if is_invertible(tree) {
        let o = solve_invertible(tree).map_err(|e| Failure::Input(e.to_string()))?;
        agree &= o == general;
        lines.push(format!("invertible: {}", tree.label(o)));
    } else {
        lines.push("invertible: n/a".into());
    }
    let pareto = is_pareto_optimal(tree, general).map_err(|e| Failure::Input(e.to_string()))?;
    lines.push(format!("pareto: {pareto}"));
    lines.push(format!("agree: {agree}"));
    let text = lines.join("\n") + "\n";
    if agree && pareto {
        Ok(text)
    } else {
        Err(Failure::Input(format!("verification failed\n{text}")))
    }
}

fn each_game(
    input: &PathBuf,
    mut f: impl FnMut(&GameTree) -> Result<String, Failure>,
) -> Result<String, Failure> {
    let games = read_games(input)?;
    let mut parts = Vec::with_capacity(games.len());
    for g in &games {
        parts.push(f(g)?);
    }
    Ok(parts.join("\n"))
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Solve {
            input,
            method,
            trace,
            max_logic_vars,
        } => each_game(&input, |t| {
            Ok(match method {
                Method::Spe => report::spe(t, &solve_spe(t)),
                Method::PpeGeneral => report::general(t, &solve_ppe_general(t), trace),
                Method::PpeQuick => report::quick(t, &solve_ppe_quick(t)),
                Method::PpeLogic => report::logic(t, &logic(t, max_logic_vars)?),
            })
        }),
        Command::Compare { input } => each_game(&input, |t| Ok(report::compare(t, &compare(t)))),
        Command::Verify {
            input,
            max_logic_vars,
        } => each_game(&input, |t| verify(t, max_logic_vars)),
        Command::Equations {
            input,
            max_logic_vars,
        } => each_game(&input, |t| {
            Ok(report::equations(t, &logic(t, max_logic_vars)?))
        }),
        Command::Biped => Ok(report::biped(&enumerate_biped())),
        Command::Dot { input } => each_game(&input, |t| Ok(dot::render(t, &solve_ppe_general(t)))),
        Command::Random {
            seed,
            players,
            depth,
            branching,
            count,
        } => {
            let mut games = Vec::new();
            for k in 0..count {
                let t = random_game(seed.wrapping_add(k), players, depth, branching)
                    .map_err(|e| Failure::Input(e.to_string()))?;
                games.push(serialize_game(&t) + "\n");
            }
            Ok(games.join("\n"))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(text) => {
            let mut out = io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
