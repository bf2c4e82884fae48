//! Process-wide immutable geometry, built on first use.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use polychora_core::export::MeshJson;
use polychora_core::mesh::{project_mesh, tessellate};
use polychora_core::polytope::{Polychoron, PolytopeName};
use polychora_core::projection::ProjectionError;
use polychora_core::quat::UnitQuaternion;

static POLYCHORA: [OnceLock<Arc<Polychoron<f64>>>; 6] = [const { OnceLock::new() }; 6];

fn slot(name: PolytopeName) -> usize {
    PolytopeName::ALL.iter().position(|&n| n == name).expect("listed")
}

pub fn polychoron(name: PolytopeName) -> Arc<Polychoron<f64>> {
    POLYCHORA[slot(name)]
        .get_or_init(|| Arc::new(Polychoron::build(name)))
        .clone()
}

pub fn cell_centers(name: PolytopeName) -> Arc<[UnitQuaternion<f64>]> {
    static CENTERS: [OnceLock<Arc<[UnitQuaternion<f64>]>>; 6] = [const { OnceLock::new() }; 6];
    CENTERS[slot(name)]
        .get_or_init(|| polychoron(name).cell_centers.clone().into())
        .clone()
}

/// Untransformed mesh JSON with base colours, cached per level so repeated
/// requests return the same bytes.
pub fn base_mesh_json(name: PolytopeName, level: u32) -> Result<Arc<String>, ProjectionError> {
    type MeshCache = Mutex<HashMap<(PolytopeName, u32), Arc<String>>>;
    static CACHE: OnceLock<MeshCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&(name, level)) {
        return Ok(hit.clone());
    }
    let p = polychoron(name);
    let mesh = tessellate(&p, level)?;
    let projected = project_mesh(&mesh, &UnitQuaternion::identity(), &Default::default());
    let text = Arc::new(MeshJson::from_projected(&projected, 0.0).to_json_string());
    Ok(cache
        .lock()
        .expect("cache lock")
        .entry((name, level))
        .or_insert(text)
        .clone())
}
