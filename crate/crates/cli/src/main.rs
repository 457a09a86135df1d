use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use systolic::checker::{classify_short_cycle, min_two_full_cycle_with, SearchConfig};
use systolic::diagrams::{dehn_scan_with, fill_cycle, reduce, reduce_flat, render_svg, DehnConfig, DiscDiagram};
use systolic::dihedral::build_xn_ball_capped;
use systolic::links::{assemble_gamma_real_link, gamma_interior_link, interior_link, real_link, DefiningGraph};
use systolic::{Error, LinkGraph, MetricComplex};

/// Checks links of Artin group complexes for 2pi-largeness and rewrites
/// disc diagrams.
#[derive(Debug, Parser)]
#[command(name = "systolic", version)]
struct RunConfig {
    /// Worker threads for the parallel stages.
    #[arg(long, global = true, env = "SYSTOLIC_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LinkKind {
    Real,
    Interior,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ball of X_n around the identity, with a precell sidecar `<out>.precells`.
    BuildBall {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = systolic::dihedral::DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
    },
    /// Closed-form link of a vertex of X_n.
    SynthLink {
        #[arg(long, value_enum)]
        kind: LinkKind,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Real link of a general defining graph, or the interior link of one edge.
    AssembleLink {
        #[arg(long)]
        graph: PathBuf,
        /// Emit the interior link of this edge (`s-t`) instead.
        #[arg(long)]
        edge: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive 2pi-largeness check. Exit 0 = large, 1 = violation.
    Check {
        #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
        link: Option<PathBuf>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Fill a closed edge path of a complex with a disc diagram.
    Fill {
        #[arg(long)]
        complex: PathBuf,
        /// Comma-separated vertex ids; the closing edge is implied.
        #[arg(long)]
        cycle: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a disc diagram to a CAT(0) one.
    Reduce {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        diagram: PathBuf,
        /// Also make the stars of flat vertices injective.
        #[arg(long)]
        flat: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Areas of reduced fillings of random trivial words in DA_n.
    DehnScan {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_boundary: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    RenderSvg {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// One report line for a link, and whether the link passed.
fn check_line(
    name: &str,
    link: &LinkGraph,
    tolerance: f64,
    graph: Option<&DefiningGraph>,
) -> anyhow::Result<(String, bool)> {
    let witness = min_two_full_cycle_with(link, SearchConfig::default());
    let Some(w) = witness else {
        return Ok((format!("LINK {name} MIN none CYCLE - CASE -"), true));
    };
    let min = w.angular_length.radians();
    let large = min >= std::f64::consts::TAU - tolerance;
    let case = match graph {
        Some(g) if w.block_trace.iter().any(Option::is_some) => classify_short_cycle(&w, g)?.to_string(),
        _ => "-".to_string(),
    };
    Ok((
        format!("LINK {name} MIN {min:.12} CYCLE {} CASE {case}", w.names(link)),
        large,
    ))
}

fn run(cfg: RunConfig) -> anyhow::Result<u8> {
    if let Some(t) = cfg.threads {
        systolic::par::configure_threads(t)?;
    }
    match cfg.command {
        Command::BuildBall {
            n,
            radius,
            out,
            max_elements,
        } => {
            let ball = build_xn_ball_capped(n, radius, max_elements)?;
            fs::write(&out, ball.complex.to_text()).with_context(|| format!("writing {}", out.display()))?;
            let mut side = out.clone().into_os_string();
            side.push(".precells");
            fs::write(&side, ball.precell_index_text())?;
            log::info!(
                "ball of radius {radius} in X_{n}: {} vertices, {} precells",
                ball.complex.vertex_count(),
                ball.precells.len()
            );
            Ok(0)
        }
        Command::SynthLink { kind, n, out } => {
            let link = match kind {
                LinkKind::Real => real_link(n)?,
                LinkKind::Interior => interior_link(n)?,
            };
            emit(out.as_deref(), &link.to_text())?;
            Ok(0)
        }
        Command::AssembleLink { graph, edge, out } => {
            let g = DefiningGraph::parse(&read(&graph)?)?;
            let link = match edge {
                None => assemble_gamma_real_link(&g)?,
                Some(e) => {
                    let (s, t) = e.split_once('-').context("edge must be written s-t")?;
                    let idx = match (g.index_of(s), g.index_of(t)) {
                        (Some(a), Some(b)) => g.edge_index(a, b),
                        _ => None,
                    };
                    gamma_interior_link(&g, idx.with_context(|| format!("no edge {e} in the graph"))?)?
                }
            };
            emit(out.as_deref(), &link.to_text())?;
            Ok(0)
        }
        Command::Check { link, graph, tolerance } => {
            if tolerance.is_nan() || tolerance <= 0.0 {
                bail!(Error::Config("tolerance must be positive".into()));
            }
            let mut lines = Vec::new();
            let mut pass = true;
            if let Some(path) = link {
                let l = LinkGraph::from_text(&read(&path)?)?;
                let (line, ok) = check_line(&l.center, &l, tolerance, None)?;
                lines.push(line);
                pass &= ok;
            } else if let Some(path) = graph {
                let g = DefiningGraph::parse(&read(&path)?)?;
                if !g.two_dimensional() {
                    log::warn!("defining graph is not two-dimensional; checking anyway");
                }
                let real = assemble_gamma_real_link(&g)?;
                let (line, ok) = check_line("real", &real, tolerance, Some(&g))?;
                lines.push(line);
                pass &= ok;
                for (e, edge) in g.edges().iter().enumerate() {
                    let l = gamma_interior_link(&g, e)?;
                    let name = format!("interior:{}-{}", g.name(edge.s), g.name(edge.t));
                    let (line, ok) = check_line(&name, &l, tolerance, None)?;
                    lines.push(line);
                    pass &= ok;
                }
            }
            let mut report = lines.join("\n");
            report.push('\n');
            emit(None, &report)?;
            Ok(if pass { 0 } else { 1 })
        }
        Command::Fill { complex, cycle, out } => {
            let c = MetricComplex::from_text(&read(&complex)?)?;
            let ids: Vec<u32> = cycle
                .split(',')
                .map(|s| s.trim().parse::<u32>().with_context(|| format!("bad vertex id {s:?}")))
                .collect::<anyhow::Result<_>>()?;
            let d = fill_cycle(&c, &ids)?;
            log::info!("filled a cycle of length {} with {} triangles", ids.len(), d.area());
            emit(out.as_deref(), &d.to_text())?;
            Ok(0)
        }
        Command::Reduce {
            complex,
            diagram,
            flat,
            out,
        } => {
            let c = MetricComplex::from_text(&read(&complex)?)?;
            let d = DiscDiagram::from_text(&read(&diagram)?)?;
            let report = d.validate(&c);
            if !report.is_valid() {
                bail!(Error::Domain(format!("invalid diagram: {}", report.errors.join("; "))));
            }
            let (r, log) = if flat { reduce_flat(&d, &c)? } else { reduce(&d, &c)? };
            for m in &log {
                log::info!("{m}");
            }
            log::info!("area {} -> {} in {} moves", d.area(), r.area(), log.len());
            emit(out.as_deref(), &r.compact().to_text())?;
            Ok(0)
        }
        Command::DehnScan {
            n,
            max_boundary,
            samples,
            seed,
        } => {
            let scan = dehn_scan_with(&DehnConfig::new(n, max_boundary, samples, seed))?;
            emit(None, &scan.to_text())?;
            Ok(if scan.slope().is_some_and(|k| k > 2.2) { 1 } else { 0 })
        }
        Command::RenderSvg { diagram, out } => {
            let d = DiscDiagram::from_text(&read(&diagram)?)?;
            fs::write(&out, render_svg(&d)).with_context(|| format!("writing {}", out.display()))?;
            Ok(0)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::RegionTooSmall(_) | Error::AmbientNotSystolic(_) | Error::Invariant(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cfg) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
