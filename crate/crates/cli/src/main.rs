use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use online_ramsey::solver::{solve_with, SolverConfig};
use online_ramsey::verify::{export_dot, verify_exhaustive, verify_sampled};
use online_ramsey::{
    closed_form_budget, run_game, Color, ColoredGraph, ConstructiveBuilder, GameConfig, GameStatus,
    GameTrace, Painter, PainterSpec, Vertex,
};

#[derive(Parser)]
#[command(
    name = "ramsey",
    about = "Builder/Painter lab for a red P4 against a blue path"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Play the constructive Builder against one Painter.
    Play {
        #[arg(long)]
        n: usize,
        /// blocking, red, blue, random[:seed] or minimax
        #[arg(long, default_value = "blocking")]
        painter: String,
        /// Color the edges yourself from stdin.
        #[arg(long)]
        interactive: bool,
        /// Also write the trace here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the Builder stays within budget.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with_all = ["trials", "seed"])]
        exhaustive: bool,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact game value by search.
    Solve {
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_budget: Option<usize>,
        /// Write an optimal strategy table.
        #[arg(long)]
        emit_table: Option<PathBuf>,
    },
    /// Render a saved trace.
    Export {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Text,
}

/// Reads `r`/`b` answers; anything else is asked again.
struct Human<R, W> {
    input: R,
    prompt: W,
}

impl<R: BufRead, W: Write> Human<R, W> {
    fn ask(&mut self, g: &ColoredGraph, u: Vertex, v: Vertex) -> io::Result<Color> {
        let (order, _) = g.longest_blue_path();
        loop {
            write!(
                self.prompt,
                "round {}: edge {u}-{v} (longest blue path {order}) color [r/b]? ",
                g.edge_count() + 1
            )?;
            self.prompt.flush()?;
            let mut line = String::new();
            if self.input.read_line(&mut line)? == 0 {
                return Err(io::Error::new(io::ErrorKind::UnexpectedEof, "input closed"));
            }
            match line.trim() {
                "r" | "R" => return Ok(Color::Red),
                "b" | "B" => return Ok(Color::Blue),
                other => match Color::parse(other) {
                    Some(c) => return Ok(c),
                    None => writeln!(self.prompt, "answer r or b")?,
                },
            }
        }
    }
}

impl<R: BufRead, W: Write> Painter for Human<R, W> {
    fn color(&mut self, g: &ColoredGraph, u: Vertex, v: Vertex) -> Color {
        match self.ask(g, u, v) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("\n{e}");
                std::process::exit(2);
            }
        }
    }
}

fn play(n: usize, painter: &str, interactive: bool, out: Option<PathBuf>) -> Result<bool> {
    let cfg = GameConfig::for_target(n)?;
    let mut builder = ConstructiveBuilder::new(n)?;
    let trace = if interactive {
        let stdin = io::stdin();
        let mut human = Human {
            input: stdin.lock(),
            prompt: io::stderr(),
        };
        run_game(&mut builder, &mut human, cfg)?
    } else {
        let spec: PainterSpec = painter.parse()?;
        let mut p = spec.build(&cfg)?;
        run_game(&mut builder, &mut p, cfg)?
    };
    let text = trace.to_text();
    print!("{text}");
    if let Some(path) = out {
        fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    println!(
        "rounds={} budget={} status={}",
        trace.rounds.len(),
        cfg.budget,
        trace.status
    );
    Ok(trace.status.builder_won())
}

fn verify(n: usize, exhaustive: bool, trials: Option<u64>, seed: u64) -> Result<bool> {
    let report = match (exhaustive, trials) {
        (_, Some(0)) => bail!("--trials must be at least 1"),
        (false, Some(t)) => verify_sampled(n, t, seed)?,
        _ => verify_exhaustive(n)?,
    };
    print!("{}", report.to_text());
    println!("---");
    print!("{}", report.to_record());
    Ok(report.passed())
}

fn solve(m: usize, n: usize, max_budget: Option<usize>, emit: Option<PathBuf>) -> Result<bool> {
    let max = max_budget.unwrap_or(closed_form_budget(n) + 2);
    let res = solve_with(SolverConfig::new(m, n), max, emit.is_some())?;
    match res.value {
        Some(v) => println!("value P_{m} vs P_{n}: {v}"),
        None => println!("value P_{m} vs P_{n}: more than {max}"),
    }
    println!("nodes_expanded={}", res.nodes_expanded);
    println!("states_stored={}", res.states_stored);
    if let (Some(path), Some(table)) = (emit, &res.table) {
        let check = table.verify()?;
        fs::write(&path, table.to_text()).with_context(|| format!("writing {}", path.display()))?;
        println!(
            "table {} entries, {} leaves, deepest {} rounds -> {}",
            table.len(),
            check.leaves,
            check.max_rounds,
            path.display()
        );
    }
    Ok(res.value.is_some())
}

fn export(path: PathBuf, format: Format) -> Result<bool> {
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let trace = GameTrace::parse_verified(&text)?;
    match format {
        Format::Dot => print!("{}", export_dot(&trace)?),
        Format::Text => print!("{}", trace.to_text()),
    }
    Ok(trace.status != GameStatus::BudgetExceeded)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Play {
            n,
            painter,
            interactive,
            out,
        } => play(n, &painter, interactive, out),
        Cmd::Verify {
            n,
            exhaustive,
            trials,
            seed,
        } => verify(n, exhaustive, trials, seed),
        Cmd::Solve {
            m,
            n,
            max_budget,
            emit_table,
        } => solve(m, n, max_budget, emit_table),
        Cmd::Export { trace, format } => export(trace, format),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
