//! Command-line front end.

use std::io::Write;
use std::net::SocketAddr;
use std::ops::Bound;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kaleido_core::chi::{conway_name, enumerate_by_chi, enumerate_euclidean, enumerate_spherical};
use kaleido_core::hyperbolic::{triangle_tiling, DiskPoint, UhpPoint};
use kaleido_core::knots::{GaussCode, KnotDiagram, KNOT_TABLE};
use kaleido_core::notation::OrbifoldSignature;
use kaleido_core::polyhedron::{builtin, load_off, write_off, PolyhedralSurface};
use kaleido_core::projection::{image_of_cut, PlaneCut};
use kaleido_core::rational::Rational;
use thiserror::Error;

use crate::api::{self, Cors};
use crate::payload::{Classification, PolyReport};
use crate::svg;

const MAX_LISTED_CROSSINGS: usize = 16;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

fn domain(e: impl ToString) -> CliError {
    CliError::Domain(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "kaleido", version, about = "Orbifolds, curvature, hyperbolic tilings and knot diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Euler characteristic, geometry and name of a signature.
    Classify {
        signature: String,
        #[arg(long)]
        json: bool,
    },
    /// List signatures of one geometry class.
    Enumerate {
        #[arg(long, value_enum)]
        class: Class,
        #[arg(long, default_value_t = 6)]
        max_order: u32,
        /// Lower bound on chi, required for hyperbolic listings (e.g. -1/6).
        #[arg(long, allow_hyphen_values = true)]
        min_chi: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Conway name of a Euclidean signature.
    Name { signature: String },
    /// Polyhedral meshes.
    Poly {
        #[command(subcommand)]
        command: PolyCommand,
    },
    /// Stereographic projection.
    Project {
        #[command(subcommand)]
        command: ProjectCommand,
    },
    /// Hyperbolic plane.
    Hyp {
        #[command(subcommand)]
        command: HypCommand,
    },
    /// Gauss codes and knot diagrams.
    Knot {
        #[command(subcommand)]
        command: KnotCommand,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Allow only this origin instead of any.
        #[arg(long)]
        cors_origin: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Class {
    Euclidean,
    Spherical,
    Hyperbolic,
}

#[derive(Debug, clap::Args)]
pub struct MeshSource {
    /// OFF file.
    #[arg(required_unless_present = "builtin")]
    pub file: Option<PathBuf>,
    /// One of the regular solids instead of a file.
    #[arg(long, conflicts_with = "file")]
    pub builtin: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum PolyCommand {
    /// Angle defects and V - E + F.
    Report {
        #[command(flatten)]
        source: MeshSource,
        #[arg(long)]
        json: bool,
    },
    /// The dual map, as OFF.
    Dual {
        #[command(flatten)]
        source: MeshSource,
    },
}

#[derive(Debug, Subcommand)]
pub enum ProjectCommand {
    /// Image of the circle cut from the sphere by Ax + By + Cz + D = 0.
    Circle {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_plane)]
        plane: [f64; 4],
        /// Also write a grid drawing to this file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Model {
    Uhp,
    Disk,
}

#[derive(Debug, Subcommand)]
pub enum HypCommand {
    /// Distance between two points, each given as x,y.
    Distance {
        #[arg(allow_hyphen_values = true, value_parser = parse_pair)]
        a: [f64; 2],
        #[arg(allow_hyphen_values = true, value_parser = parse_pair)]
        b: [f64; 2],
        #[arg(long, value_enum, default_value = "uhp")]
        model: Model,
    },
    /// Tiling of the disk by the (p, q, r) triangle and its reflections.
    Tile {
        p: u32,
        q: u32,
        r: u32,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Write the drawing here instead of stdout.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum KnotCommand {
    /// Check that a signed Gauss code describes a plane curve.
    Validate { code: String },
    /// Every over/under assignment of a curve.
    Diagrams { code: String },
    /// The two alternating diagrams of a curve.
    Alternating { code: String },
    /// The two checkerboard colourings of the faces of a curve.
    Color { code: String },
    /// Number of 3-colourings of a diagram; a bare code means its alternating diagram.
    Tricolor { diagram: String },
    /// Invariants of a diagram and the small-table knots sharing them.
    Identify { diagram: String },
}

fn parse_floats<const N: usize>(text: &str) -> Result<[f64; N], String> {
    let values = text
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| format!("{s:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    values.try_into().map_err(|v: Vec<f64>| format!("expected {N} comma-separated numbers, got {}", v.len()))
}

fn parse_plane(text: &str) -> Result<[f64; 4], String> {
    parse_floats(text)
}

fn parse_pair(text: &str) -> Result<[f64; 2], String> {
    parse_floats(text)
}

/// Parse `args` (including the program name) and run the command, writing to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli.command, out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Classify { signature, json } => {
            let sig = OrbifoldSignature::parse(&signature).map_err(domain)?;
            let c = Classification::of(&sig);
            if json {
                writeln!(out, "{}", serde_json::to_string(&c).map_err(domain)?)?;
            } else {
                writeln!(out, "{}", c.line())?;
            }
        }
        Command::Enumerate { class, max_order, min_chi, json } => {
            let sigs = match class {
                Class::Euclidean => enumerate_euclidean(),
                Class::Spherical => enumerate_spherical(max_order).map_err(domain)?,
                Class::Hyperbolic => {
                    let text = min_chi.ok_or_else(|| domain("hyperbolic listing needs --min-chi"))?;
                    let min: Rational = text.parse().map_err(domain)?;
                    enumerate_by_chi(Bound::Included(min), Bound::Excluded(Rational::ZERO), max_order)
                        .map_err(domain)?
                }
            };
            for sig in &sigs {
                let c = Classification::of(sig);
                if json {
                    writeln!(out, "{}", serde_json::to_string(&c).map_err(domain)?)?;
                } else {
                    writeln!(out, "{:<10} {}", c.signature, c.line())?;
                }
            }
        }
        Command::Name { signature } => {
            let sig = OrbifoldSignature::parse(&signature).map_err(domain)?;
            let name =
                conway_name(&sig).ok_or_else(|| domain(format!("{sig} is not one of the 17 Euclidean signatures")))?;
            writeln!(out, "{}", name.full)?;
        }
        Command::Poly { command } => poly(command, out)?,
        Command::Project { command: ProjectCommand::Circle { plane, svg: path } } => {
            let [a, b, c, d] = plane;
            let cut = PlaneCut::new(a, b, c, d).map_err(domain)?;
            let image = image_of_cut(&cut).map_err(domain)?;
            writeln!(out, "{}", serde_json::to_string(&image).map_err(domain)?)?;
            if let Some(path) = path {
                std::fs::write(path, svg::sphere_grid(&cut, 4.0))?;
            }
        }
        Command::Hyp { command } => hyp(command, out)?,
        Command::Knot { command } => knot(command, out)?,
        Command::Serve { port, host, cors_origin } => serve(&host, port, cors_origin)?,
    }
    Ok(())
}

fn load_mesh(source: &MeshSource) -> Result<PolyhedralSurface, CliError> {
    match (&source.builtin, &source.file) {
        (Some(name), _) => builtin(name).map_err(domain),
        (None, Some(path)) => load_off(&std::fs::read(path)?).map_err(domain),
        (None, None) => Err(domain("give an OFF file or --builtin")),
    }
}

fn poly(command: PolyCommand, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        PolyCommand::Report { source, json } => {
            let report = PolyReport::of(&load_mesh(&source)?).map_err(domain)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&report).map_err(domain)?)?;
            } else {
                writeln!(out, "{}", report.text())?;
            }
        }
        PolyCommand::Dual { source } => {
            let dual = load_mesh(&source)?.dual_map().map_err(domain)?;
            write!(out, "{}", write_off(&dual))?;
        }
    }
    Ok(())
}

fn hyp(command: HypCommand, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        HypCommand::Distance { a, b, model } => {
            let d = match model {
                Model::Uhp => {
                    let p = UhpPoint::new(a[0], a[1]).map_err(domain)?;
                    let q = UhpPoint::new(b[0], b[1]).map_err(domain)?;
                    p.distance(&q)
                }
                Model::Disk => {
                    let p = DiskPoint::new(a[0], a[1]).map_err(domain)?;
                    let q = DiskPoint::new(b[0], b[1]).map_err(domain)?;
                    p.distance(&q)
                }
            };
            writeln!(out, "{d}")?;
        }
        HypCommand::Tile { p, q, r, depth, svg: path } => {
            let tiles = triangle_tiling(p, q, r, depth).map_err(domain)?;
            let drawing = svg::tiling(&tiles);
            match path {
                Some(path) => {
                    std::fs::write(&path, drawing)?;
                    writeln!(out, "{} tiles written to {}", tiles.len(), path.display())?;
                }
                None => write!(out, "{drawing}")?,
            }
        }
    }
    Ok(())
}

fn listable(code: &GaussCode) -> Result<(), CliError> {
    if code.crossing_count() > MAX_LISTED_CROSSINGS {
        return Err(domain(format!("listing is limited to {MAX_LISTED_CROSSINGS} crossings")));
    }
    Ok(())
}

fn diagram_or_alternating(text: &str) -> Result<KnotDiagram, CliError> {
    if text.contains('/') {
        KnotDiagram::parse(text).map_err(domain)
    } else {
        let code = GaussCode::parse(text).map_err(domain)?;
        let [even_over, _] = code.alternating_diagrams();
        Ok(even_over)
    }
}

fn knot(command: KnotCommand, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        KnotCommand::Validate { code } => {
            let code = GaussCode::parse(&code).map_err(domain)?;
            writeln!(out, "ok crossings={} faces={}", code.crossing_count(), code.face_count())?;
        }
        KnotCommand::Diagrams { code } => {
            let code = GaussCode::parse(&code).map_err(domain)?;
            listable(&code)?;
            for d in code.all_diagrams() {
                let mark = if d.is_alternating() { " alternating" } else { "" };
                writeln!(out, "{d}{mark}")?;
            }
        }
        KnotCommand::Alternating { code } => {
            let code = GaussCode::parse(&code).map_err(domain)?;
            let [a, b] = code.alternating_diagrams();
            writeln!(out, "{a}")?;
            if b != a {
                writeln!(out, "{b}")?;
            }
        }
        KnotCommand::Color { code } => {
            let code = GaussCode::parse(&code).map_err(domain)?;
            for coloring in code.checkerboard() {
                let black: Vec<String> =
                    coloring.black.iter().enumerate().filter(|(_, b)| **b).map(|(f, _)| f.to_string()).collect();
                writeln!(out, "black faces: {}", black.join(" "))?;
            }
        }
        KnotCommand::Tricolor { diagram } => {
            let d = diagram_or_alternating(&diagram)?;
            writeln!(out, "{}", d.tricolor_count())?;
        }
        KnotCommand::Identify { diagram } => {
            let d = diagram_or_alternating(&diagram)?;
            let (tricolor, det) = (d.tricolor_count(), d.determinant());
            writeln!(
                out,
                "crossings={} alternating={} tricolor={} determinant={}",
                d.code().crossing_count(),
                d.is_alternating(),
                tricolor,
                det
            )?;
            let matches: Vec<&str> = KNOT_TABLE
                .iter()
                .filter(|k| k.tricolor_count == tricolor && k.determinant == det)
                .map(|k| k.name)
                .collect();
            if matches.is_empty() {
                writeln!(out, "no match in the table")?;
            } else {
                writeln!(out, "consistent with: {}", matches.join(" "))?;
            }
        }
    }
    Ok(())
}

fn serve(host: &str, port: u16, cors_origin: Option<String>) -> Result<(), CliError> {
    let cors = match cors_origin {
        Some(origin) => Cors::Origin(origin.parse().map_err(domain)?),
        None => Cors::Permissive,
    };
    let addr: SocketAddr = format!("{host}:{port}").parse().map_err(domain)?;
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, api::router(cors)).await
    })?;
    Ok(())
}
