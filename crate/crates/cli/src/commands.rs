//! The `info`, `export`, `simulate` and `plan` subcommands.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use polychora_core::color::DEFAULT_SHADING_STRENGTH;
use polychora_core::export::{to_obj, MeshJson};
use polychora_core::game::{default_eat_radius, EatEvent, GameConfig, GameError, GameState};
use polychora_core::io::{read_trajectory, write_event_log, write_trajectory, ReadError};
use polychora_core::mesh::{project_mesh, tessellate};
use polychora_core::polytope::PolytopeName;
use polychora_core::projection::ProjectionError;
use polychora_core::quat::UnitQuaternion;
use polychora_core::trajectory::{
    hamiltonian_path, nn_tour, plan_samples, spin_trajectory, tour_waypoints, TrajectoryError,
    TrajectorySample,
};

use crate::geometry;

pub const SPIN_STEP: f64 = 0.01;

#[derive(Debug)]
pub enum CliError {
    UnknownPolytope(String),
    Io { path: PathBuf, source: io::Error },
    Trajectory { path: PathBuf, line: usize, reason: String },
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::UnknownPolytope(_) => 2,
            Self::Io { .. } => 3,
            Self::Trajectory { .. } => 4,
            Self::Usage(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::UnknownPolytope(name) => write!(
                f,
                "unknown polytope `{name}` (expected one of 5-cell, 8-cell, 16-cell, 24-cell, 120-cell, 600-cell)"
            ),
            Self::Io { path, source } => write!(f, "{}: {source}", path.display()),
            Self::Trajectory { path, line, reason } => {
                write!(f, "{}: malformed trajectory at line {line}: {reason}", path.display())
            }
            Self::Usage(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn parse_polytope(name: &str) -> Result<PolytopeName, CliError> {
    name.parse().map_err(|_| CliError::UnknownPolytope(name.to_string()))
}

/// Parses `w,x,y,z` with the same validation as the HTTP boundary.
pub fn parse_quaternion(text: &str) -> Result<UnitQuaternion<f64>, CliError> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("bad quaternion `{text}`: {e}")))?;
    let c: [f64; 4] = parts
        .try_into()
        .map_err(|_| CliError::Usage(format!("quaternion `{text}` needs four components")))?;
    UnitQuaternion::from_wire(c).map_err(|e| CliError::Usage(format!("bad quaternion `{text}`: {e}")))
}

pub fn info(name: PolytopeName) -> String {
    let p = geometry::polychoron(name);
    let (v, e, f, c) = p.counts();
    let dual = p.dual_adjacency();
    let radius = default_eat_radius(name);
    let mut out = String::new();
    writeln!(out, "polytope: {name}").unwrap();
    writeln!(out, "vertices: {v}").unwrap();
    writeln!(out, "edges: {e}").unwrap();
    writeln!(out, "faces: {f}").unwrap();
    writeln!(out, "cells: {c}").unwrap();
    writeln!(out, "euler characteristic: {}", v as i64 - e as i64 + f as i64 - c as i64).unwrap();
    match dual.regular_degree() {
        Some(d) => writeln!(out, "dual degree: {d}").unwrap(),
        None => writeln!(out, "dual degree: irregular").unwrap(),
    }
    writeln!(out, "eat radius: {radius:.6} rad ({:.3} deg)", radius.to_degrees()).unwrap();
    writeln!(out, "default subdivision: {}", name.default_subdivision()).unwrap();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Json,
    Obj,
}

impl std::str::FromStr for MeshFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Self::Json),
            "obj" => Ok(Self::Obj),
            other => Err(format!("unknown format `{other}` (expected json or obj)")),
        }
    }
}

/// Writes the mesh seen from `transform`. OBJ output also writes the MTL
/// file next to it.
pub fn export(
    name: PolytopeName,
    format: MeshFormat,
    level: u32,
    transform: &UnitQuaternion<f64>,
    out: &Path,
) -> Result<usize, CliError> {
    let p = geometry::polychoron(name);
    let mesh = tessellate(&p, level).map_err(|e| match e {
        ProjectionError::SubdivisionTooDeep(_) => CliError::Usage(e.to_string()),
        other => CliError::Usage(other.to_string()),
    })?;
    let projected = project_mesh(&mesh, transform, &Default::default());
    match format {
        MeshFormat::Json => {
            let text = MeshJson::from_projected(&projected, DEFAULT_SHADING_STRENGTH).to_json_string();
            std::fs::write(out, text).map_err(io_err(out))?;
        }
        MeshFormat::Obj => {
            let mtl_path = out.with_extension("mtl");
            let mtl_name = mtl_path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| "mesh.mtl".into());
            let (obj, mtl) = to_obj(&projected, DEFAULT_SHADING_STRENGTH, &mtl_name);
            std::fs::write(out, obj).map_err(io_err(out))?;
            std::fs::write(&mtl_path, mtl).map_err(io_err(&mtl_path))?;
        }
    }
    Ok(projected.triangles.len())
}

/// Where a simulated or planned stream comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    NnTour,
    Hamiltonian,
    Spin360,
    Spin720,
    File(PathBuf),
}

impl Source {
    pub fn parse(text: &str) -> Self {
        match text {
            "nn-tour" => Self::NnTour,
            "hamiltonian" => Self::Hamiltonian,
            "spin360" => Self::Spin360,
            "spin720" => Self::Spin720,
            path => Self::File(PathBuf::from(path)),
        }
    }
}

pub struct Plan {
    pub samples: Vec<TrajectorySample<f64>>,
    /// Set when a Hamiltonian search timed out and the nearest-neighbour
    /// tour was used instead.
    pub fell_back: bool,
}

/// Builds the sample stream for `source`. Tours are sampled at half the
/// eat radius so no center can be stepped over.
pub fn plan(
    name: PolytopeName,
    source: &Source,
    eat_radius: f64,
    time_limit: Duration,
) -> Result<Plan, CliError> {
    let spin = |turns: f64| {
        spin_trajectory([0.0, 1.0, 0.0], turns * std::f64::consts::TAU, SPIN_STEP)
            .map_err(|e| CliError::Usage(e.to_string()))
    };
    let tour = |order: Vec<usize>| -> Result<Vec<TrajectorySample<f64>>, CliError> {
        let p = geometry::polychoron(name);
        plan_samples(&UnitQuaternion::identity(), &tour_waypoints(&p, &order), eat_radius / 2.0)
            .map_err(|e: TrajectoryError| CliError::Usage(e.to_string()))
    };
    let nn = || nn_tour(&geometry::polychoron(name), &UnitQuaternion::identity());
    Ok(match source {
        Source::Spin360 => Plan {
            samples: spin(1.0)?,
            fell_back: false,
        },
        Source::Spin720 => Plan {
            samples: spin(2.0)?,
            fell_back: false,
        },
        Source::NnTour => Plan {
            samples: tour(nn())?,
            fell_back: false,
        },
        Source::Hamiltonian => {
            let dual = geometry::polychoron(name).dual_adjacency();
            match hamiltonian_path(&dual, time_limit) {
                Some(path) => Plan {
                    samples: tour(path)?,
                    fell_back: false,
                },
                None => Plan {
                    samples: tour(nn())?,
                    fell_back: true,
                },
            }
        }
        Source::File(path) => {
            let file = File::open(path).map_err(io_err(path))?;
            let samples = read_trajectory(BufReader::new(file)).map_err(|e| match e {
                ReadError::Io(source) => CliError::Io {
                    path: path.clone(),
                    source,
                },
                ReadError::Format { line, reason } => CliError::Trajectory {
                    path: path.clone(),
                    line,
                    reason,
                },
            })?;
            Plan {
                samples,
                fell_back: false,
            }
        }
    })
}

pub fn write_plan(samples: &[TrajectorySample<f64>], out: &Path) -> Result<(), CliError> {
    let file = File::create(out).map_err(io_err(out))?;
    write_trajectory(BufWriter::new(file), samples).map_err(io_err(out))
}

pub struct Outcome {
    pub events: Vec<EatEvent<f64>>,
    pub coverage: f64,
    pub won: bool,
    pub cells: usize,
    pub samples: usize,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn summary(&self) -> String {
        format!(
            "samples: {}\nevents: {}\ncells: {}\ncoverage: {:.6}\nwon: {}\nwall time: {:.3} s\n",
            self.samples,
            self.events.len(),
            self.cells,
            self.coverage,
            self.won,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Runs a game over `samples`.
pub fn simulate(
    name: PolytopeName,
    eat_radius: Option<f64>,
    samples: &[TrajectorySample<f64>],
) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let mut config = GameConfig::new(name);
    config.eat_radius = eat_radius;
    let mut game = GameState::with_centers(config, geometry::cell_centers(name))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    for s in samples {
        game.step(s.q, s.t).map_err(|e: GameError| CliError::Usage(e.to_string()))?;
    }
    Ok(Outcome {
        events: game.event_log().to_vec(),
        coverage: game.coverage(),
        won: game.is_won(),
        cells: game.cell_count(),
        samples: samples.len(),
        elapsed: started.elapsed(),
    })
}

pub fn write_events(events: &[EatEvent<f64>], out: &Path) -> Result<(), CliError> {
    let file = File::create(out).map_err(io_err(out))?;
    let mut w = BufWriter::new(file);
    write_event_log(&mut w, events).map_err(io_err(out))?;
    w.flush().map_err(io_err(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_flag() {
        assert_eq!(parse_quaternion("0,1,0,0").unwrap(), UnitQuaternion::i());
        assert!(parse_quaternion("1,0,0").is_err());
        assert!(parse_quaternion("0,0,0,0").is_err());
        assert!(parse_quaternion("a,b,c,d").is_err());
    }

    #[test]
    fn info_report() {
        let text = info(PolytopeName::Cell24);
        assert!(text.contains("cells: 24\n"));
        assert!(text.contains("dual degree: 8\n"));
        assert!(text.contains("euler characteristic: 0\n"));
    }

    #[test]
    fn spins() {
        for (src, expect) in [(Source::Spin360, std::f64::consts::PI), (Source::Spin720, 0.0)] {
            let p = plan(PolytopeName::Cell8, &src, 0.5, Duration::from_secs(1)).unwrap();
            let o = simulate(PolytopeName::Cell8, None, &p.samples).unwrap();
            assert!(!o.won);
            let mut cur = p.samples[0].q;
            for s in &p.samples {
                cur = UnitQuaternion::resolve_sign(&cur, &s.q);
            }
            assert!((cur.geodesic_distance(&UnitQuaternion::identity()) - expect).abs() < 1e-9);
        }
    }

    #[test]
    fn source_names() {
        assert_eq!(Source::parse("nn-tour"), Source::NnTour);
        assert_eq!(Source::parse("x.jsonl"), Source::File("x.jsonl".into()));
    }
}
