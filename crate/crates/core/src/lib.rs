//! Regular 4-polytopes on the unit quaternions: construction, stereographic
//! viewing, Hopf colouring and a cell-eating game driven by orientation
//! streams.
//!
//! Everything geometric is generic over the scalar type; the aliases below
//! fix it to `f64` (or `f32`).

pub mod color;
pub mod export;
pub mod game;
pub mod io;
pub mod mesh;
pub mod polytope;
pub mod projection;
pub mod quat;
pub mod scalar;
pub mod trajectory;

pub use polytope::PolytopeName;
pub use scalar::Real;

pub type UnitQuat = quat::UnitQuaternion<f64>;
pub type UnitQuat32 = quat::UnitQuaternion<f32>;
pub type Polychoron64 = polytope::Polychoron<f64>;
pub type Polychoron32 = polytope::Polychoron<f32>;
pub type Mesh64 = mesh::TessellatedMesh<f64>;
pub type ProjectedMesh64 = mesh::ProjectedMesh<f64>;
pub type Game = game::GameState<f64>;
pub type GameConfig64 = game::GameConfig<f64>;
pub type Sample = trajectory::TrajectorySample<f64>;
