//! Orientation streams: spins, waypoint tours and their sampling at 60 Hz.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::polytope::{DualGraph, Polychoron};
use crate::quat::{AxisAngle, QuatError, UnitQuaternion};
use crate::scalar::Real;

pub const SAMPLE_RATE_HZ: f64 = 60.0;
pub const MAX_SPIN_STEP: f64 = 0.1;
pub const DEFAULT_HAMILTONIAN_LIMIT: Duration = Duration::from_secs(10);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TrajectoryError {
    #[error("step {0} outside (0, {MAX_SPIN_STEP}]")]
    BadStep(f64),
    #[error("total angle must be finite and nonnegative, got {0}")]
    BadAngle(f64),
    #[error(transparent)]
    Quat(#[from] QuatError),
}

/// One raw orientation sample, as a headset would report it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample<T> {
    pub t: f64,
    pub q: UnitQuaternion<T>,
}

fn timestamp(k: usize) -> f64 {
    k as f64 / SAMPLE_RATE_HZ
}

/// Samples of `from_axis_angle(axis, k·step)` up to and including
/// `total_angle`; the last angle is clamped to `total_angle` exactly.
pub fn spin_trajectory<T: Real>(
    axis: [T; 3],
    total_angle: T,
    step: T,
) -> Result<Vec<TrajectorySample<T>>, TrajectoryError> {
    if !(step > T::zero() && step <= T::lit(MAX_SPIN_STEP)) {
        return Err(TrajectoryError::BadStep(step.as_f64()));
    }
    if !total_angle.is_finite() || total_angle < T::zero() {
        return Err(TrajectoryError::BadAngle(total_angle.as_f64()));
    }
    let ratio = (total_angle / step).as_f64();
    let n = if (ratio - ratio.round()).abs() < 1e-9 {
        ratio.round()
    } else {
        ratio.ceil()
    } as usize;
    (0..=n)
        .map(|k| {
            let angle = (T::lit(k as f64) * step).min(total_angle);
            let q = UnitQuaternion::from_axis_angle(&AxisAngle::new(axis, angle)?);
            Ok(TrajectorySample { t: timestamp(k), q })
        })
        .collect()
}

/// Greedy nearest-neighbour order of the cell ids, starting from `start`.
/// Distance ties (within 1e-12) go to the lowest id.
pub fn nn_tour<T: Real>(p: &Polychoron<T>, start: &UnitQuaternion<T>) -> Vec<usize> {
    let centers = &p.cell_centers;
    let mut visited = vec![false; centers.len()];
    let mut order = Vec::with_capacity(centers.len());
    let mut here = *start;
    let tie = T::lit(1e-12);
    for _ in 0..centers.len() {
        let mut best: Option<(usize, T)> = None;
        for (id, c) in centers.iter().enumerate() {
            if visited[id] {
                continue;
            }
            let d = here.geodesic_distance(c);
            match best {
                Some((_, bd)) if d >= bd - tie => {}
                _ => best = Some((id, d)),
            }
        }
        let (id, _) = best.expect("an unvisited center remains");
        visited[id] = true;
        order.push(id);
        here = centers[id];
    }
    order
}

/// Cell centers in tour order.
pub fn tour_waypoints<T: Real>(p: &Polychoron<T>, order: &[usize]) -> Vec<UnitQuaternion<T>> {
    order.iter().map(|&id| p.cell_centers[id]).collect()
}

/// Sum of geodesic lengths along consecutive waypoints.
pub fn tour_length<T: Real>(waypoints: &[UnitQuaternion<T>]) -> T {
    waypoints
        .windows(2)
        .map(|w| w[0].geodesic_distance(&w[1]))
        .fold(T::zero(), |a, b| a + b)
}

/// Slerps between consecutive waypoints so that no two samples are more
/// than `max_step` apart. Every waypoint appears exactly; repeated
/// waypoints collapse to one sample.
pub fn interpolate<T: Real>(
    waypoints: &[UnitQuaternion<T>],
    max_step: T,
) -> Result<Vec<TrajectorySample<T>>, TrajectoryError> {
    if !max_step.is_finite() || max_step <= T::zero() {
        return Err(TrajectoryError::BadStep(max_step.as_f64()));
    }
    let Some(first) = waypoints.first() else {
        return Ok(Vec::new());
    };
    let mut out = vec![TrajectorySample { t: 0.0, q: *first }];
    for pair in waypoints.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let d = a.geodesic_distance(&b);
        if d == T::zero() {
            continue;
        }
        if d >= T::PI() - T::geometric_tolerance() {
            return Err(QuatError::AntipodalPair.into());
        }
        let n = (d / max_step).ceil().to_usize().unwrap_or(1).max(1);
        for k in 1..=n {
            let q = if k == n {
                b
            } else {
                a.slerp(&b, T::lit(k as f64) / T::lit(n as f64))?
            };
            out.push(TrajectorySample {
                t: timestamp(out.len()),
                q,
            });
        }
    }
    Ok(out)
}

/// Prepends `start` and inserts a quarter-turn via-point `a·i` between any
/// antipodal neighbours, then interpolates.
pub fn plan_samples<T: Real>(
    start: &UnitQuaternion<T>,
    waypoints: &[UnitQuaternion<T>],
    max_step: T,
) -> Result<Vec<TrajectorySample<T>>, TrajectoryError> {
    let mut path = Vec::with_capacity(waypoints.len() + 1);
    path.push(*start);
    for w in waypoints {
        let last = *path.last().expect("nonempty");
        if last.geodesic_distance(w) >= T::PI() - T::geometric_tolerance() {
            path.push(last * UnitQuaternion::i());
        }
        path.push(*w);
    }
    interpolate(&path, max_step)
}

/// Backtracking search for a Hamiltonian path, trying neighbours with the
/// fewest unvisited neighbours first. `None` means the deadline passed, or
/// the graph has no such path.
pub fn hamiltonian_path(g: &DualGraph, time_limit: Duration) -> Option<Vec<usize>> {
    if g.node_count == 0 {
        return Some(Vec::new());
    }
    let deadline = Instant::now() + time_limit;
    let mut starts: Vec<usize> = (0..g.node_count).collect();
    starts.sort_by_key(|&v| (g.degree(v), v));
    // cheap bounded probes from every start first: the ordering heuristic
    // rarely needs deep backtracking from a good start
    let probe = 8 * g.node_count as u64;
    for &s in &starts {
        match search_from(g, s, deadline, probe) {
            Search::Found(p) => return Some(p),
            Search::TimedOut if Instant::now() >= deadline => return None,
            _ => {}
        }
    }
    for s in starts {
        match search_from(g, s, deadline, u64::MAX) {
            Search::Found(p) => return Some(p),
            Search::Exhausted => continue,
            Search::TimedOut => return None,
        }
    }
    None
}

pub fn hamiltonian_path_from(g: &DualGraph, start: usize, time_limit: Duration) -> Option<Vec<usize>> {
    if start >= g.node_count {
        return None;
    }
    match search_from(g, start, Instant::now() + time_limit, u64::MAX) {
        Search::Found(p) => Some(p),
        _ => None,
    }
}

/// True when `path` visits every node once along edges of `g`.
pub fn is_hamiltonian_path(g: &DualGraph, path: &[usize]) -> bool {
    let mut seen = vec![false; g.node_count];
    for &v in path {
        if v >= g.node_count || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    path.len() == g.node_count && path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

enum Search {
    Found(Vec<usize>),
    Exhausted,
    TimedOut,
}

struct Backtrack<'a> {
    g: &'a DualGraph,
    visited: Vec<bool>,
    /// unvisited neighbours per node
    free: Vec<usize>,
    path: Vec<usize>,
    deadline: Instant,
    expansions: u64,
    budget: u64,
    timed_out: bool,
}

impl Backtrack<'_> {
    fn enter(&mut self, v: usize) {
        self.visited[v] = true;
        self.path.push(v);
        for &u in self.g.neighbors(v) {
            self.free[u] -= 1;
        }
    }

    fn leave(&mut self, v: usize) {
        self.visited[v] = false;
        self.path.pop();
        for &u in self.g.neighbors(v) {
            self.free[u] += 1;
        }
    }

    /// An unvisited node with no free neighbours, or two with one, that the
    /// current end cannot reach next, can never be completed.
    fn dead_end(&self, at: usize) -> bool {
        let mut loose = 0;
        for u in 0..self.g.node_count {
            if self.visited[u] || self.g.has_edge(at, u) {
                continue;
            }
            match self.free[u] {
                0 => return true,
                1 => {
                    loose += 1;
                    if loose > 1 {
                        return true;
                    }
                }
                _ => {}
            }
        }
        false
    }

    fn extend(&mut self, at: usize) -> bool {
        if self.path.len() == self.g.node_count {
            return true;
        }
        self.expansions += 1;
        if self.expansions > self.budget || (self.expansions.is_multiple_of(1024) && Instant::now() >= self.deadline) {
            self.timed_out = true;
        }
        if self.timed_out || self.dead_end(at) {
            return false;
        }
        let mut next: Vec<usize> = self
            .g
            .neighbors(at)
            .iter()
            .copied()
            .filter(|&u| !self.visited[u])
            .collect();
        next.sort_by_key(|&u| (self.free[u], u));
        for u in next {
            self.enter(u);
            if self.extend(u) {
                return true;
            }
            self.leave(u);
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

fn search_from(g: &DualGraph, start: usize, deadline: Instant, budget: u64) -> Search {
    let mut bt = Backtrack {
        g,
        visited: vec![false; g.node_count],
        free: (0..g.node_count).map(|v| g.degree(v)).collect(),
        path: Vec::with_capacity(g.node_count),
        deadline,
        expansions: 0,
        budget,
        timed_out: false,
    };
    bt.enter(start);
    if bt.extend(start) {
        Search::Found(bt.path)
    } else if bt.timed_out {
        Search::TimedOut
    } else {
        Search::Exhausted
    }
}
