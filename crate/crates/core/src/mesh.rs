//! Triangulated cell boundaries on S³ and their projection to the viewer.

use std::collections::{HashMap, HashSet};

use crate::color::{shaded_color, ColorRgb};
use crate::polytope::Polychoron;
use crate::projection::{radial_project, stereographic, transform_vector, Point3, Point4, ProjectionError};
use crate::quat::UnitQuaternion;
use crate::scalar::{dot4, norm4, sub4, Real};

pub const MAX_SUBDIVISION: u32 = 6;

/// Cell-boundary triangles with vertices on S³.
///
/// Every 2-face appears twice, once for each of its two cells, with opposite
/// normals, so removing one cell never removes its neighbour's wall.
#[derive(Debug, Clone)]
pub struct TessellatedMesh<T> {
    pub vertices: Vec<Point4<T>>,
    pub triangles: Vec<[usize; 3]>,
    pub cell_ids: Vec<usize>,
    /// Unit 4-vector per triangle, tangent to S³, normal to the triangle and
    /// pointing out of its cell.
    pub face_normals: Vec<Point4<T>>,
    pub subdivision_level: u32,
}

impl<T: Real> TessellatedMesh<T> {
    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }
}

/// Fan-triangulates each face from its centroid, splits every triangle
/// 4-way `level` times, then projects radially onto S³.
pub fn tessellate<T: Real>(p: &Polychoron<T>, level: u32) -> Result<TessellatedMesh<T>, ProjectionError> {
    if level > MAX_SUBDIVISION {
        return Err(ProjectionError::SubdivisionTooDeep(level));
    }
    let face_cells = p.face_cells();
    let mut mesh = TessellatedMesh {
        vertices: Vec::new(),
        triangles: Vec::new(),
        cell_ids: Vec::new(),
        face_normals: Vec::new(),
        subdivision_level: level,
    };

    for (f, face) in p.faces.iter().enumerate() {
        let n = T::lit(face.len() as f64);
        let mut centroid = [T::zero(); 4];
        for &v in face {
            for k in 0..4 {
                centroid[k] = centroid[k] + p.vertices[v][k] / n;
            }
        }
        let mut local: Vec<Point4<T>> = vec![centroid];
        local.extend(face.iter().map(|&v| p.vertices[v]));
        let mut tris: Vec<[usize; 3]> = (0..face.len())
            .map(|i| [0, 1 + i, 1 + (i + 1) % face.len()])
            .collect();
        for _ in 0..level {
            tris = subdivide(&mut local, &tris);
        }

        let offset = mesh.vertices.len();
        for v in &local {
            mesh.vertices.push(radial_project(*v)?.to_array());
        }
        let face_dir = radial_project(centroid)?.to_array();

        for (side, &cell) in face_cells[f].iter().enumerate() {
            let center = p.cell_centers[cell].to_array();
            let outward = sub4(&face_dir, &center);
            for t in &tris {
                let [a, b, c] = t.map(|i| i + offset);
                let tri = if side == 0 { [a, b, c] } else { [a, c, b] };
                let normal = tangent_normal(
                    &mesh.vertices[a],
                    &mesh.vertices[b],
                    &mesh.vertices[c],
                    outward,
                );
                mesh.triangles.push(tri);
                mesh.cell_ids.push(cell);
                mesh.face_normals.push(normal);
            }
        }
    }
    Ok(mesh)
}

fn subdivide<T: Real>(vertices: &mut Vec<Point4<T>>, tris: &[[usize; 3]]) -> Vec<[usize; 3]> {
    let mut cache: HashMap<(usize, usize), usize> = HashMap::new();
    let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<Point4<T>>| {
        *cache.entry((a.min(b), a.max(b))).or_insert_with(|| {
            let half = T::lit(0.5);
            let (va, vb) = (vertices[a], vertices[b]);
            vertices.push(std::array::from_fn(|k| (va[k] + vb[k]) * half));
            vertices.len() - 1
        })
    };
    let mut out = Vec::with_capacity(tris.len() * 4);
    for &[a, b, c] in tris {
        let ab = midpoint(a, b, vertices);
        let bc = midpoint(b, c, vertices);
        let ca = midpoint(c, a, vertices);
        out.push([a, ab, ca]);
        out.push([ab, b, bc]);
        out.push([ca, bc, c]);
        out.push([ab, bc, ca]);
    }
    out
}

/// Gram–Schmidt of `hint` against the triangle's edges and its radial
/// direction.
fn tangent_normal<T: Real>(a: &Point4<T>, b: &Point4<T>, c: &Point4<T>, hint: Point4<T>) -> Point4<T> {
    let radial: Point4<T> = std::array::from_fn(|k| a[k] + b[k] + c[k]);
    let mut basis: Vec<Point4<T>> = Vec::with_capacity(3);
    for v in [sub4(b, a), sub4(c, a), radial] {
        let mut r = v;
        for e in &basis {
            let d = dot4(&r, e);
            r = std::array::from_fn(|k| r[k] - d * e[k]);
        }
        let n = norm4(&r);
        basis.push(r.map(|x| x / n));
    }
    let mut r = hint;
    // two passes keep the result orthogonal to working precision
    for _ in 0..2 {
        for e in &basis {
            let d = dot4(&r, e);
            r = std::array::from_fn(|k| r[k] - d * e[k]);
        }
    }
    let n = norm4(&r);
    r.map(|x| x / n)
}

/// A mesh as seen from one orientation, ready to draw.
#[derive(Debug, Clone, Default)]
pub struct ProjectedMesh<T> {
    pub vertices: Vec<Point3<T>>,
    pub triangles: Vec<[usize; 3]>,
    pub cell_ids: Vec<usize>,
    /// Transformed face normals.
    pub normals: Vec<Point4<T>>,
    /// Transformed triangle centroids, on S³.
    pub positions: Vec<UnitQuaternion<T>>,
}

impl<T: Real> ProjectedMesh<T> {
    pub fn colors(&self, strength: T) -> Vec<ColorRgb<T>> {
        self.positions
            .iter()
            .zip(&self.normals)
            .map(|(pos, n)| {
                let normal = UnitQuaternion::from_array(*n).unwrap_or_else(|_| UnitQuaternion::identity());
                shaded_color(pos, &normal, strength)
            })
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }
}

/// Drops eaten cells, moves the scene to orientation `q`, culls triangles
/// touching the pole band and projects the rest to ℝ³.
pub fn project_mesh<T: Real>(
    mesh: &TessellatedMesh<T>,
    q: &UnitQuaternion<T>,
    eaten: &HashSet<usize>,
) -> ProjectedMesh<T> {
    let mut remap: Vec<Option<Option<usize>>> = vec![None; mesh.vertices.len()];
    let mut moved: Vec<Option<Point4<T>>> = vec![None; mesh.vertices.len()];
    let mut out = ProjectedMesh::default();

    for (t, tri) in mesh.triangles.iter().enumerate() {
        if eaten.contains(&mesh.cell_ids[t]) {
            continue;
        }
        let mut idx = [0usize; 3];
        let mut visible = true;
        for (slot, &v) in tri.iter().enumerate() {
            let entry = remap[v].get_or_insert_with(|| {
                let p = transform_vector(q, mesh.vertices[v]);
                moved[v] = Some(p);
                let unit = UnitQuaternion::from_unit_components(p[0], p[1], p[2], p[3]);
                stereographic(&unit).ok().map(|x| {
                    out.vertices.push(x);
                    out.vertices.len() - 1
                })
            });
            match entry {
                Some(i) => idx[slot] = *i,
                None => {
                    visible = false;
                    break;
                }
            }
        }
        if !visible {
            continue;
        }
        let corners = tri.map(|v| moved[v].expect("transformed above"));
        let centroid: Point4<T> = std::array::from_fn(|k| corners[0][k] + corners[1][k] + corners[2][k]);
        out.triangles.push(idx);
        out.cell_ids.push(mesh.cell_ids[t]);
        out.normals.push(transform_vector(q, mesh.face_normals[t]));
        out.positions
            .push(UnitQuaternion::from_array(centroid).unwrap_or_else(|_| UnitQuaternion::from_unit_components(corners[0][0], corners[0][1], corners[0][2], corners[0][3])));
    }
    out
}
