//! Command-line surface. Exit codes: 0 success or all checks passed, 1 a
//! verification check failed, 2 invalid input.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Map;
use slimrect_core::diagram::{check_c2, mirror_natural_diagram, natural_diagram, unit_mirror_natural_diagram, unit_natural_diagram};
use slimrect_core::enumerate::{verify_member, Suites};
use slimrect_core::fork::{canonical_minimal_s7, decompose, delete_fork, insert_fork, is_cell, rank, replay};
use slimrect_core::{grid, Cell4, CellRef, Limits, LeveledLattice, Q, VerificationReport};

use crate::format::{load_lattice, load_script, parse_rational, save_diagram, save_lattice, save_script};
use crate::render::{render_svg, render_tikz};
use crate::report::{report_json, report_text};
use crate::universe::{load_universe, par_enumerate_sr, par_verify_universe, save_universe};

pub const MAX_ELEMENTS_VAR: &str = "SLIMRECT_MAX_ELEMENTS";

#[derive(Parser, Debug)]
#[command(name = "slimrect", version, about = "Slim rectangular lattices: forks, decomposition, natural diagrams")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a lattice file.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Insert or delete a fork.
    Fork {
        #[command(subcommand)]
        op: ForkOp,
    },
    /// Write the fork script that rebuilds FILE from a grid.
    Decompose {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Rebuild a lattice from a script file.
    Replay {
        script: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Print the number of forks in FILE.
    Rank { file: PathBuf },
    /// Check FILE, or every member of a universe directory.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Generate every slim rectangular lattice up to the given grid and rank.
    Enumerate {
        /// Largest grid, as P,Q.
        #[arg(long, value_parser = parse_pair)]
        max_grid: (usize, usize),
        #[arg(long)]
        max_rank: usize,
        /// Directory to write index.json and lattices/ into.
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw FILE.
    Render {
        file: PathBuf,
        /// Natural diagram (the only kind drawn).
        #[arg(long, required = true)]
        natural: bool,
        /// Require the drawing to satisfy C2; exit 1 otherwise.
        #[arg(long)]
        c2: bool,
        /// Draw through the mirrored map instead.
        #[arg(long)]
        mirror: bool,
        /// Step lengths along the lower-left chain, e.g. 1,3/2,2 (default all 1).
        #[arg(long, value_delimiter = ',', value_parser = parse_q)]
        left_units: Option<Vec<Q>>,
        /// Step lengths along the lower-right chain.
        #[arg(long, value_delimiter = ',', value_parser = parse_q)]
        right_units: Option<Vec<Q>>,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand, Debug)]
enum Gen {
    /// Product of a P-element and a Q-element chain.
    Grid {
        p: usize,
        q: usize,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand, Debug)]
enum ForkOp {
    /// Insert a fork into a 4-cell.
    Insert {
        file: PathBuf,
        /// Cell as H,K,J: height of o, index of o in its level, index of c among o's upper covers.
        #[arg(long, value_parser = parse_cell, conflicts_with = "square", required_unless_present = "square")]
        cell: Option<CellRef>,
        /// Cell by element names O,C,D,I.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        square: Option<Vec<String>>,
        #[command(flatten)]
        out: Out,
    },
    /// Delete the fork of the canonical minimal covering S7.
    Delete {
        file: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args, Debug)]
struct Out {
    /// Write here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Main,
    Corollaries,
    Diagrams,
    Forks,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Svg,
    Tikz,
    Json,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected P,Q")?;
    Ok((a.trim().parse().map_err(|_| "bad P")?, b.trim().parse().map_err(|_| "bad Q")?))
}

fn parse_cell(s: &str) -> Result<CellRef, String> {
    let parts: Vec<usize> = s.split(',').map(|t| t.trim().parse::<usize>()).collect::<Result<_, _>>().map_err(|_| "expected H,K,J")?;
    match parts[..] {
        [o_height, o_index, c_index] => Ok(CellRef { o_height, o_index, c_index }),
        _ => Err("expected H,K,J".into()),
    }
}

fn parse_q(s: &str) -> Result<Q, String> {
    parse_rational(s).ok_or_else(|| format!("bad rational {s:?}"))
}

enum Failure {
    Input(anyhow::Error),
    Checks,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_lattice(path: &Path) -> Result<LeveledLattice> {
    let (l, _) = load_lattice(&read(path)?).with_context(|| format!("loading {}", path.display()))?;
    Ok(l)
}

fn emit(out: &Out, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn limits() -> Result<Limits> {
    let mut limits = Limits::default();
    if let Ok(v) = std::env::var(MAX_ELEMENTS_VAR) {
        limits.max_elements = v.trim().parse().map_err(|_| anyhow!("{MAX_ELEMENTS_VAR} must be a positive integer, got {v:?}"))?;
    }
    Ok(limits)
}

fn suites(s: Suite) -> Suites {
    let only = |main, corollaries, diagrams, forks| Suites { main, corollaries, diagrams, forks, ..Suites::ALL };
    match s {
        Suite::Main => only(true, false, false, false),
        Suite::Corollaries => only(false, true, false, false),
        Suite::Diagrams => only(false, false, true, false),
        Suite::Forks => only(false, false, false, true),
        Suite::All => Suites::ALL,
    }
}

fn cell_summary(l: &LeveledLattice, c: &Cell4) -> String {
    format!("cell {} = {{{}, {}, {}, {}}}", c.reference(l), l.label(c.o), l.label(c.c), l.label(c.d), l.label(c.i))
}

fn run_command(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Gen { what: Gen::Grid { p, q, out } } => {
            let g = grid(p, q)?;
            emit(&out, &save_lattice(&g, Map::new())?)?;
        }
        Command::Fork { op: ForkOp::Insert { file, cell, square, out } } => {
            let l = read_lattice(&file)?;
            let c = match (cell, square) {
                (Some(r), _) => r.resolve(&l).ok_or_else(|| anyhow!("{r} does not name a 4-cell"))?,
                (None, Some(names)) => {
                    let ids = names
                        .iter()
                        .map(|n| l.find(n).ok_or_else(|| anyhow!("no element named {n:?}")))
                        .collect::<Result<Vec<_>>>()?;
                    let [o, c, d, i] = ids[..] else { return Err(anyhow!("--square needs four names").into()) };
                    let c = Cell4 { o, c, d, i };
                    if !is_cell(&l, &c) {
                        return Err(anyhow!("{{{}}} is not a 4-cell", names.join(", ")).into());
                    }
                    c
                }
                (None, None) => unreachable!("clap requires one of --cell, --square"),
            };
            let (bigger, trace) = insert_fork(&l, &c)?;
            emit(&out, &save_lattice(&bigger, Map::new())?)?;
            let names = |ids: &[usize]| ids.iter().map(|&x| bigger.label(x)).collect::<Vec<_>>().join(" ");
            eprintln!(
                "inserted at {}: m = {}, left [{}], right [{}], {} -> {} elements",
                cell_summary(&l, &c),
                bigger.label(trace.m),
                names(&trace.left),
                names(&trace.right),
                l.len(),
                bigger.len()
            );
        }
        Command::Fork { op: ForkOp::Delete { file, out } } => {
            let l = read_lattice(&file)?;
            let s = canonical_minimal_s7(&l).ok_or_else(|| anyhow!("no covering S7: nothing to delete"))?;
            let (smaller, c) = delete_fork(&l, &s)?;
            emit(&out, &save_lattice(&smaller, Map::new())?)?;
            eprintln!("deleted fork at {}", cell_summary(&smaller, &c));
        }
        Command::Decompose { file, out } => {
            let l = read_lattice(&file)?;
            let script = decompose(&l)?;
            emit(&out, &save_script(&script))?;
        }
        Command::Replay { script, out } => {
            let s = load_script(&read(&script)?).with_context(|| format!("loading {}", script.display()))?;
            let l = replay(&s)?;
            emit(&out, &save_lattice(&l, Map::new())?)?;
        }
        Command::Rank { file } => {
            let l = read_lattice(&file)?;
            println!("{}", rank(&l)?);
        }
        Command::Verify { file, suite, json } => {
            let (report, lattice): (VerificationReport, Option<LeveledLattice>) = if file.is_dir() {
                if suite != Suite::All {
                    return Err(anyhow!("a universe directory is verified with --suite all").into());
                }
                (par_verify_universe(&load_universe(&file)?), None)
            } else {
                let l = read_lattice(&file)?;
                let name = file.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
                (verify_member(&l, &name, suites(suite)), Some(l))
            };
            let text = if json { report_json(&report, lattice.as_ref()) } else { report_text(&report, lattice.as_ref()) };
            print!("{text}");
            if !report.passed() {
                return Err(Failure::Checks);
            }
        }
        Command::Enumerate { max_grid, max_rank, out } => {
            let u = par_enumerate_sr(max_grid.0, max_grid.1, max_rank, limits()?)?;
            save_universe(&u, &out)?;
            println!("{} lattices written to {}", u.len(), out.display());
        }
        Command::Render { file, natural: _, c2, mirror, left_units, right_units, format, out } => {
            let l = read_lattice(&file)?;
            let d = match (left_units, right_units) {
                (None, None) if mirror => unit_mirror_natural_diagram(&l),
                (None, None) => unit_natural_diagram(&l),
                (Some(a), Some(b)) if mirror => mirror_natural_diagram(&l, &a, &b),
                (Some(a), Some(b)) => natural_diagram(&l, &a, &b),
                _ => return Err(anyhow!("give both --left-units and --right-units, or neither").into()),
            }
            ?;
            if c2 {
                let report = check_c2(&l, &d);
                if !report.passed() {
                    eprint!("{}", report_text(&report, Some(&l)));
                    return Err(Failure::Checks);
                }
            }
            let text = match format {
                Format::Svg => render_svg(&l, &d),
                Format::Tikz => render_tikz(&l, &d),
                Format::Json => save_diagram(&l, &d),
            }
            ?;
            emit(&out, &text)?;
        }
    }
    Ok(())
}

pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run_command(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
