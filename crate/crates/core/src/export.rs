//! Mesh files: the JSON schema read by the browser client, and OBJ + MTL.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::mesh::ProjectedMesh;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MeshJson {
    pub vertices3: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
    pub cell_ids: Vec<usize>,
    pub colors: Vec<[f64; 3]>,
}

impl MeshJson {
    /// Per-triangle colours shaded with `strength` (0 gives base colours).
    pub fn from_projected<T: Real>(mesh: &ProjectedMesh<T>, strength: T) -> Self {
        Self {
            vertices3: mesh.vertices.iter().map(|v| v.map(|c| c.as_f64())).collect(),
            triangles: mesh.triangles.clone(),
            cell_ids: mesh.cell_ids.clone(),
            colors: mesh.colors(strength).iter().map(|c| c.to_f64_array()).collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("mesh serializes")
    }
}

/// OBJ and MTL text. Faces are grouped per cell (`g cell_<id>`, ascending),
/// materials are shared between faces with equal 8-bit colours.
pub fn to_obj<T: Real>(mesh: &ProjectedMesh<T>, strength: T, mtl_file: &str) -> (String, String) {
    let colors: Vec<[u8; 3]> = mesh.colors(strength).iter().map(|c| c.to_rgb8()).collect();
    let mut order: Vec<usize> = (0..mesh.triangles.len()).collect();
    order.sort_by_key(|&t| mesh.cell_ids[t]);

    let mut materials: HashMap<[u8; 3], usize> = HashMap::new();
    let mut mtl = String::new();
    let mut obj = String::new();
    writeln!(obj, "mtllib {mtl_file}").unwrap();
    for v in &mesh.vertices {
        let [x, y, z] = v.map(|c| c.as_f64());
        writeln!(obj, "v {x} {y} {z}").unwrap();
    }
    let mut group = None;
    let mut current = None;
    for t in order {
        let cell = mesh.cell_ids[t];
        if group != Some(cell) {
            writeln!(obj, "g cell_{cell}").unwrap();
            group = Some(cell);
            current = None;
        }
        let rgb = colors[t];
        let next = materials.len();
        let id = *materials.entry(rgb).or_insert_with(|| {
            let [r, g, b] = rgb.map(|c| c as f64 / 255.0);
            writeln!(mtl, "newmtl c{next}\nKd {r} {g} {b}\n").unwrap();
            next
        });
        if current != Some(id) {
            writeln!(obj, "usemtl c{id}").unwrap();
            current = Some(id);
        }
        let [a, b, c] = mesh.triangles[t].map(|i| i + 1);
        writeln!(obj, "f {a} {b} {c}").unwrap();
    }
    (obj, mtl)
}
