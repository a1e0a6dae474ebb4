//! `hampath`: enumerate, validate, reconfigure and replay simple
//! Hamiltonian paths on rectangular grids.
//!
//! Exit codes: 0 success, 1 I/O or other failure, 2 parse error,
//! 3 validation failure, 4 no simple path on the grid, 5 enumeration cap
//! exceeded, 6 grid dimensions differ.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use hampath_core::grid::parse_dims_line;
use hampath_core::oracle::{
    build_hp_graph_capped, enumerate_simple_capped, enumerate_st_hamiltonian_capped, DEFAULT_CAP,
};
use hampath_core::{
    classify_with, decompose, graph_stats, parse_path_file, reconfigure, replay, Error, GridDims,
    HamPath, Phase, SubpathKind, SwitchTrace,
};

use render::{Format, StepMarks};

#[derive(Parser)]
#[command(
    name = "hampath",
    version,
    about = "Square-switch reconfiguration of simple grid Hamiltonian paths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a path file and describe its structure.
    Validate {
        file: PathBuf,
        /// Print the path with its internal subpaths lettered.
        #[arg(long)]
        draw: bool,
    },
    /// Find a switch sequence between two simple paths.
    Reconfigure {
        from: PathBuf,
        to: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        /// Directory for one drawing per step.
        #[arg(long)]
        render: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Statistics of the switch graph of all simple paths.
    Hpgraph {
        m: usize,
        n: usize,
        /// Write the edge list, one pair of move strings per line.
        #[arg(long)]
        export: Option<PathBuf>,
        /// Enumerate beyond the default size cap.
        #[arg(long)]
        force: bool,
    },
    /// Count s,t Hamiltonian paths.
    Enumerate {
        m: usize,
        n: usize,
        #[arg(long)]
        simple_only: bool,
        /// Print every path, in lexicographic move order.
        #[arg(long)]
        list: bool,
    },
    /// Apply a trace file to a path and check where it ends.
    Replay { trace: PathBuf, from: PathBuf },
}

/// A failure tagged with its exit code.
#[derive(Debug)]
struct Exit(u8, String);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(Exit(code, _)) = err.downcast_ref::<Exit>() {
        return *code;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::InvalidDims { .. }) => 2,
        Some(Error::NoSimplePath(_)) => 4,
        Some(Error::CapExceeded { .. }) => 5,
        Some(Error::DimsMismatch(..)) => 6,
        Some(_) => 3,
        None => 1,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Reads a path file, reporting grids without simple paths before the
/// path itself is walked.
fn load_path(file: &Path) -> Result<HamPath> {
    let text = read(file)?;
    if let Some(first) = text.lines().next() {
        let dims = parse_dims_line(first, 1).with_context(|| format!("in {}", file.display()))?;
        if !dims.admits_hamiltonian_path() {
            return Err(Error::NoSimplePath(dims))
                .with_context(|| format!("in {}", file.display()));
        }
    }
    parse_path_file(&text).with_context(|| format!("in {}", file.display()))
}

fn load_simple(file: &Path) -> Result<HamPath> {
    let p = load_path(file)?;
    if !hampath_core::is_simple(&p) {
        return Err(Error::NotSimple).with_context(|| format!("in {}", file.display()));
    }
    Ok(p)
}

fn dims(m: usize, n: usize) -> Result<GridDims> {
    Ok(GridDims::new(m, n)?)
}

fn cmd_validate(file: &Path, draw: bool) -> Result<()> {
    let p = load_path(file)?;
    let dec = decompose(&p);
    let form = classify_with(&p, &dec);
    let d = p.dims();
    println!("grid {d}");
    println!("hamiltonian: yes");
    println!("simple: {}", if dec.is_simple() { "yes" } else { "no" });
    println!(
        "{form}, j={}, k={}, l={}, {} cookies",
        dec.mu,
        dec.eta,
        dec.nu,
        dec.cookies()
    );
    let sides = [
        (SubpathKind::CookieN, "N"),
        (SubpathKind::CookieS, "S"),
        (SubpathKind::CookieE, "E"),
        (SubpathKind::CookieW, "W"),
        (SubpathKind::CornerCookie, "corner"),
    ];
    for (kind, side) in sides {
        let sizes: Vec<String> = dec
            .parts
            .iter()
            .filter(|s| s.kind == kind)
            .map(|s| s.size.map_or("-".to_string(), |z| z.to_string()))
            .collect();
        if !sizes.is_empty() {
            println!("cookies {side}: sizes {}", sizes.join(","));
        }
    }
    if let Some(span) = dec.separator_span() {
        println!(
            "straight separators: {:?} {}..={}, first met {}",
            span.axis, span.first, span.last, span.eta1
        );
    }
    print!("{}", dec.report());
    if draw {
        print!("{}", render::ascii(&p, Some(&dec), None));
        println!("{}", render::OVERLAY_LEGEND);
    }
    if !dec.is_simple() {
        return Err(Exit(3, format!("{} is not simple", file.display())).into());
    }
    Ok(())
}

fn cmd_reconfigure(
    from: &Path,
    to: &Path,
    trace_out: &Path,
    render_dir: Option<&Path>,
    format: Format,
) -> Result<()> {
    let p = load_simple(from)?;
    let q = load_simple(to)?;
    let trace = reconfigure(&p, &q)?;
    write(trace_out, &trace.to_text())?;
    let d = p.dims();
    println!(
        "switches: {} (bound {} = floor(5*{}/4))",
        trace.switch_count(),
        5 * d.size() / 4,
        d.size()
    );
    let phases = [
        Phase::StepA,
        Phase::StepB,
        Phase::StepC,
        Phase::CanonicalSweep,
        Phase::ReversedTail,
    ];
    let counts: Vec<String> = phases
        .iter()
        .map(|&ph| format!("{}={}", ph.code(), trace.count_phase(ph)))
        .collect();
    println!("phases: {}", counts.join(" "));
    println!("trace written to {}", trace_out.display());
    if let Some(dir) = render_dir {
        let n = render_steps(&trace, dir, format)?;
        println!("{n} drawings written to {}", dir.display());
    }
    Ok(())
}

fn render_steps(trace: &SwitchTrace, dir: &Path, format: Format) -> Result<usize> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let states = trace.states()?;
    for (i, state) in states.iter().enumerate() {
        let marks = (i > 0).then(|| StepMarks::between(&states[i - 1], state));
        let title = if i == 0 {
            "initial path".to_string()
        } else {
            format!("after switch {i}")
        };
        let text = match format {
            Format::Ascii => format!("{title}\n{}", render::ascii(state, None, marks.as_ref())),
            Format::Svg => render::svg(state, marks.as_ref(), &title),
        };
        let name = format!("step_{i:04}.{}", format.extension());
        write(&dir.join(name), &text)?;
    }
    Ok(states.len())
}

fn cap(force: bool) -> usize {
    if force {
        usize::MAX
    } else {
        DEFAULT_CAP
    }
}

fn cmd_hpgraph(m: usize, n: usize, export: Option<&Path>, force: bool) -> Result<()> {
    let d = dims(m, n)?;
    let g = build_hp_graph_capped(d, cap(force))?;
    let stats = graph_stats(&g)?;
    println!("grid {d}");
    println!("nodes: {}", stats.nodes);
    println!("edges: {}", stats.edges);
    println!("arcs: {} ({} one-way)", g.arcs, g.one_way_arcs);
    println!("components: {}", stats.components);
    match (stats.nodes, stats.diameter) {
        (0, _) | (_, None) => println!("diameter: n/a"),
        (_, Some(diam)) => println!("diameter: {diam} (bound {})", 5 * d.size() / 4),
    }
    println!("max trace length: {}", stats.max_trace_len);
    let hist: Vec<String> = stats
        .degree_histogram
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(deg, c)| format!("{deg}:{c}"))
        .collect();
    println!("degrees: {}", hist.join(" "));
    if let Some(file) = export {
        write(file, &g.edge_list())?;
        println!("edge list written to {}", file.display());
    }
    Ok(())
}

fn cmd_enumerate(m: usize, n: usize, simple_only: bool, list: bool) -> Result<()> {
    let d = dims(m, n)?;
    let (paths, what) = if simple_only {
        (enumerate_simple_capped(d, DEFAULT_CAP)?, "simple")
    } else {
        (
            enumerate_st_hamiltonian_capped(d, DEFAULT_CAP)?,
            "hamiltonian",
        )
    };
    println!("{what} paths on {d}: {}", paths.len());
    if list {
        for p in &paths {
            println!("{p}");
        }
    }
    Ok(())
}

fn cmd_replay(trace_file: &Path, from: &Path) -> Result<()> {
    let text = read(trace_file)?;
    let trace =
        SwitchTrace::parse(&text).with_context(|| format!("in {}", trace_file.display()))?;
    let start = load_path(from)?;
    if start.dims() != trace.initial.dims() {
        bail!(Error::DimsMismatch(start.dims(), trace.initial.dims()));
    }
    let end = replay(&trace, &start)?;
    println!("replayed {} switches", trace.switch_count());
    println!("final path: {end}");
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { file, draw } => cmd_validate(&file, draw),
        Command::Reconfigure {
            from,
            to,
            trace,
            render,
            format,
        } => cmd_reconfigure(&from, &to, &trace, render.as_deref(), format),
        Command::Hpgraph {
            m,
            n,
            export,
            force,
        } => cmd_hpgraph(m, n, export.as_deref(), force),
        Command::Enumerate {
            m,
            n,
            simple_only,
            list,
        } => cmd_enumerate(m, n, simple_only, list),
        Command::Replay { trace, from } => cmd_replay(&trace, &from),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
