//! The game: a stream of orientation samples moves the player through S³,
//! and every cell whose center comes within the eat radius is eaten.

use std::collections::HashSet;
use std::sync::Arc;

use thiserror::Error;

use crate::polytope::{Polychoron, PolytopeError, PolytopeName};
use crate::quat::UnitQuaternion;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("invalid game configuration: {0}")]
    Config(String),
    #[error("time went backwards: {t} < {last}")]
    NonMonotonicTime { last: f64, t: f64 },
    #[error("non-finite timestamp")]
    NonFiniteTime,
}

/// How the default eat radius is derived from the cell layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EatRadiusRule {
    /// Radius of the geodesic ball whose volume equals one cell's share of
    /// S³, i.e. `2r − sin 2r = 2π / cells`.
    #[default]
    CellVolume,
    /// Half the geodesic distance between centers of adjacent cells. Eat
    /// regions then never overlap, but the 16-cell and 24-cell coincide.
    HalfAdjacentSeparation,
}

impl std::str::FromStr for EatRadiusRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cell-volume" => Ok(Self::CellVolume),
            "half-separation" => Ok(Self::HalfAdjacentSeparation),
            other => Err(format!("unknown eat-radius rule `{other}`")),
        }
    }
}

/// Geodesic distance between centers of adjacent cells.
fn adjacent_separation(name: PolytopeName) -> f64 {
    use std::f64::consts::PI;
    match name {
        PolytopeName::Cell5 => (-0.25f64).acos(),
        PolytopeName::Cell8 => PI / 2.0,
        PolytopeName::Cell16 | PolytopeName::Cell24 => PI / 3.0,
        PolytopeName::Cell120 => PI / 5.0,
        // adjacent vertices of the 120-cell: cos θ = (1 + 3√5) / 8
        PolytopeName::Cell600 => ((1.0 + 3.0 * 5f64.sqrt()) / 8.0).acos(),
    }
}

/// Solves `2r − sin 2r = 2π / cells` by bisection on `(0, π/2)`.
fn equal_volume_radius(cells: usize) -> f64 {
    let target = 2.0 * std::f64::consts::PI / cells as f64;
    let (mut lo, mut hi) = (0.0f64, std::f64::consts::FRAC_PI_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if 2.0 * mid - (2.0 * mid).sin() < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn eat_radius(name: PolytopeName, rule: EatRadiusRule) -> f64 {
    match rule {
        EatRadiusRule::CellVolume => equal_volume_radius(name.cell_count()),
        EatRadiusRule::HalfAdjacentSeparation => adjacent_separation(name) / 2.0,
    }
}

pub fn default_eat_radius(name: PolytopeName) -> f64 {
    eat_radius(name, EatRadiusRule::default())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameConfig<T> {
    pub polytope: PolytopeName,
    /// Explicit radius in radians; overrides `rule`.
    pub eat_radius: Option<T>,
    pub rule: EatRadiusRule,
    pub start: UnitQuaternion<T>,
}

impl<T: Real> GameConfig<T> {
    pub fn new(polytope: PolytopeName) -> Self {
        Self {
            polytope,
            eat_radius: None,
            rule: EatRadiusRule::default(),
            start: UnitQuaternion::identity(),
        }
    }

    pub fn with_eat_radius(mut self, r: T) -> Self {
        self.eat_radius = Some(r);
        self
    }

    pub fn with_rule(mut self, rule: EatRadiusRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_start(mut self, start: UnitQuaternion<T>) -> Self {
        self.start = start;
        self
    }

    pub fn resolved_eat_radius(&self) -> Result<T, GameError> {
        let r = self
            .eat_radius
            .unwrap_or_else(|| T::lit(eat_radius(self.polytope, self.rule)));
        if !(r > T::zero() && r < T::FRAC_PI_2()) {
            return Err(GameError::Config(format!(
                "eat radius {r} outside (0, π/2)"
            )));
        }
        Ok(r)
    }
}

/// A cell eaten at time `t` (seconds) with the player at `position`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EatEvent<T> {
    pub t: f64,
    pub cell: usize,
    pub position: UnitQuaternion<T>,
}

#[derive(Debug, Clone)]
pub struct GameState<T> {
    polytope: PolytopeName,
    eat_radius: T,
    centers: Arc<[UnitQuaternion<T>]>,
    eaten: Vec<bool>,
    eaten_count: usize,
    current: UnitQuaternion<T>,
    previous_raw: UnitQuaternion<T>,
    last_t: f64,
    log: Vec<EatEvent<T>>,
}

impl<T: Real> GameState<T> {
    /// Builds the polytope and starts a game; cells at the start
    /// orientation are eaten at `t = 0`.
    pub fn new(config: GameConfig<T>) -> Result<Self, GameError> {
        let p = Polychoron::<T>::build(config.polytope);
        Self::with_centers(config, p.cell_centers.into())
    }

    pub fn from_polychoron(config: GameConfig<T>, p: &Polychoron<T>) -> Result<Self, GameError> {
        if p.name != config.polytope {
            return Err(GameError::Config(format!(
                "configured for {} but given {}",
                config.polytope, p.name
            )));
        }
        Self::with_centers(config, p.cell_centers.clone().into())
    }

    /// Starts a game over precomputed cell centers (shared between games).
    pub fn with_centers(config: GameConfig<T>, centers: Arc<[UnitQuaternion<T>]>) -> Result<Self, GameError> {
        let eat_radius = config.resolved_eat_radius()?;
        let mut state = Self {
            polytope: config.polytope,
            eat_radius,
            eaten: vec![false; centers.len()],
            centers,
            eaten_count: 0,
            current: config.start,
            previous_raw: config.start,
            last_t: 0.0,
            log: Vec::new(),
        };
        state.eat_at(0.0);
        Ok(state)
    }

    /// Feeds one raw (sign-arbitrary) orientation sample.
    pub fn step(&mut self, raw: UnitQuaternion<T>, t: f64) -> Result<Vec<EatEvent<T>>, GameError> {
        if !t.is_finite() {
            return Err(GameError::NonFiniteTime);
        }
        if t < self.last_t {
            return Err(GameError::NonMonotonicTime { last: self.last_t, t });
        }
        self.last_t = t;
        self.previous_raw = raw;
        self.current = UnitQuaternion::resolve_sign(&self.current, &raw);
        let before = self.log.len();
        self.eat_at(t);
        Ok(self.log[before..].to_vec())
    }

    fn eat_at(&mut self, t: f64) {
        for (cell, center) in self.centers.iter().enumerate() {
            if !self.eaten[cell] && self.current.geodesic_distance(center) <= self.eat_radius {
                self.eaten[cell] = true;
                self.eaten_count += 1;
                self.log.push(EatEvent {
                    t,
                    cell,
                    position: self.current,
                });
            }
        }
    }

    pub fn polytope(&self) -> PolytopeName {
        self.polytope
    }

    pub fn eat_radius(&self) -> T {
        self.eat_radius
    }

    /// Sign-resolved player position.
    pub fn player(&self) -> UnitQuaternion<T> {
        self.current
    }

    pub fn previous_raw(&self) -> UnitQuaternion<T> {
        self.previous_raw
    }

    pub fn last_time(&self) -> f64 {
        self.last_t
    }

    pub fn cell_count(&self) -> usize {
        self.eaten.len()
    }

    pub fn eaten_count(&self) -> usize {
        self.eaten_count
    }

    pub fn is_eaten(&self, cell: usize) -> bool {
        self.eaten[cell]
    }

    pub fn eaten_flags(&self) -> &[bool] {
        &self.eaten
    }

    pub fn eaten_set(&self) -> HashSet<usize> {
        self.log.iter().map(|e| e.cell).collect()
    }

    pub fn event_log(&self) -> &[EatEvent<T>] {
        &self.log
    }

    pub fn coverage(&self) -> f64 {
        if self.eaten.is_empty() {
            return 1.0;
        }
        self.eaten_count as f64 / self.eaten.len() as f64
    }

    pub fn is_won(&self) -> bool {
        self.eaten_count == self.eaten.len()
    }

    pub fn centers(&self) -> &Arc<[UnitQuaternion<T>]> {
        &self.centers
    }
}
