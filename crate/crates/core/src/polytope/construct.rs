//! Vertex sets of the six regular polychora and recovery of their
//! edges, 2-faces and cells from the vertices alone.
//!
//! Everything here runs in `f64`; [`super::Polychoron`] casts the result to
//! the requested scalar type afterwards.

use std::collections::{BTreeSet, HashMap};

use super::PolytopeName;

/// Incidence tolerance on chord lengths and hyperplane offsets.
pub(crate) const INCIDENCE_TOL: f64 = 1e-9;

pub(crate) type V4 = [f64; 4];

#[derive(Debug, Clone)]
pub(crate) struct Combinatorics {
    pub vertices: Vec<V4>,
    pub edges: Vec<[usize; 2]>,
    pub faces: Vec<Vec<usize>>,
    pub cells: Vec<Vec<usize>>,
}

pub(crate) fn vertices_of(name: PolytopeName) -> Vec<V4> {
    match name {
        PolytopeName::Cell5 => simplex(),
        PolytopeName::Cell8 => tesseract(),
        PolytopeName::Cell16 => cross_polytope(),
        PolytopeName::Cell24 => icositetrachoron(),
        PolytopeName::Cell600 => hexacosichoron(),
        PolytopeName::Cell120 => {
            let dual = recover(hexacosichoron()).expect("600-cell combinatorics");
            cell_centroids(&dual)
        }
    }
}

fn normalized(v: V4) -> V4 {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]).sqrt();
    v.map(|c| c / n)
}

/// Regular simplex with a vertex at 1, so nothing sits on the projection
/// pole.
fn simplex() -> Vec<V4> {
    let a = -1.0 / 10f64.sqrt();
    let b = 1.0 / 6f64.sqrt();
    let c = 1.0 / 3f64.sqrt();
    vec![
        [a, b, c, 1.0],
        [a, b, c, -1.0],
        [a, b, -2.0 * c, 0.0],
        [a, -(1.5f64).sqrt(), 0.0, 0.0],
        [2.0 * (0.4f64).sqrt(), 0.0, 0.0, 0.0],
    ]
    .into_iter()
    .map(normalized)
    .collect()
}

fn sign_patterns<const N: usize>() -> impl Iterator<Item = [f64; N]> {
    (0..1u32 << N).map(|bits| {
        let mut s = [1.0; N];
        for (k, v) in s.iter_mut().enumerate() {
            if bits & (1 << k) != 0 {
                *v = -1.0;
            }
        }
        s
    })
}

fn tesseract() -> Vec<V4> {
    sign_patterns::<4>().map(|s| s.map(|v| 0.5 * v)).collect()
}

fn cross_polytope() -> Vec<V4> {
    let mut out = Vec::with_capacity(8);
    for axis in 0..4 {
        for sign in [1.0, -1.0] {
            let mut v = [0.0; 4];
            v[axis] = sign;
            out.push(v);
        }
    }
    out
}

fn icositetrachoron() -> Vec<V4> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in (a + 1)..4 {
            for s in sign_patterns::<2>() {
                let mut v = [0.0; 4];
                v[a] = s[0] * h;
                v[b] = s[1] * h;
                out.push(v);
            }
        }
    }
    out
}

fn is_even_permutation(p: &[usize; 4]) -> bool {
    let mut inversions = 0;
    for a in 0..4 {
        for b in (a + 1)..4 {
            if p[a] > p[b] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn hexacosichoron() -> Vec<V4> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut out = cross_polytope();
    out.extend(tesseract());
    let base = [phi / 2.0, 0.5, 0.5 / phi, 0.0];
    for p0 in 0..4 {
        for p1 in 0..4 {
            for p2 in 0..4 {
                for p3 in 0..4 {
                    let p = [p0, p1, p2, p3];
                    let distinct: BTreeSet<_> = p.iter().collect();
                    if distinct.len() != 4 || !is_even_permutation(&p) {
                        continue;
                    }
                    for s in sign_patterns::<3>() {
                        let signed = [base[0] * s[0], base[1] * s[1], base[2] * s[2], 0.0];
                        let mut v = [0.0; 4];
                        for k in 0..4 {
                            v[p[k]] = signed[k];
                        }
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

fn dot(a: &V4, b: &V4) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

fn sub(a: &V4, b: &V4) -> V4 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

fn dist(a: &V4, b: &V4) -> f64 {
    let d = sub(a, b);
    dot(&d, &d).sqrt()
}

fn det3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Vector orthogonal to `a`, `b` and `c` (the 4D generalized cross product).
pub(crate) fn cross4(a: &V4, b: &V4, c: &V4) -> V4 {
    let minor = |skip: usize| {
        let pick = |v: &V4| {
            let mut out = [0.0; 3];
            let mut k = 0;
            for (i, x) in v.iter().enumerate() {
                if i != skip {
                    out[k] = *x;
                    k += 1;
                }
            }
            out
        };
        det3(pick(a), pick(b), pick(c))
    };
    [minor(0), -minor(1), minor(2), -minor(3)]
}

/// Sorts lexicographically, with tiny coordinates snapped to zero so the
/// ordering does not hinge on the sign of rounding noise.
fn canonical_order(mut vertices: Vec<V4>) -> Vec<V4> {
    for v in vertices.iter_mut() {
        for c in v.iter_mut() {
            if c.abs() < 1e-14 {
                *c = 0.0;
            }
        }
    }
    vertices.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    vertices
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum RecoveryError {
    TooFewVertices,
    NoPlanarCycles,
    DegenerateFace(usize),
}

/// Rebuilds edges, polygonal faces and cells from the vertex set of a
/// regular polytope inscribed in S³.
pub(crate) fn recover(vertices: Vec<V4>) -> Result<Combinatorics, RecoveryError> {
    if vertices.len() < 5 {
        return Err(RecoveryError::TooFewVertices);
    }
    let vertices = canonical_order(vertices);
    let n = vertices.len();

    let mut min_chord = f64::INFINITY;
    for a in 0..n {
        for b in (a + 1)..n {
            min_chord = min_chord.min(dist(&vertices[a], &vertices[b]));
        }
    }
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); n];
    for a in 0..n {
        for b in (a + 1)..n {
            if (dist(&vertices[a], &vertices[b]) - min_chord).abs() <= INCIDENCE_TOL {
                edges.push([a, b]);
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
    }

    let faces = planar_girth_cycles(&vertices, &adjacency)?;
    let cells = facet_cells(&vertices, &faces)?;
    Ok(Combinatorics {
        vertices,
        edges,
        faces,
        cells,
    })
}

/// All shortest cycles of the edge graph that lie in an affine 2-plane.
/// Each cycle starts at its smallest vertex and runs toward the smaller
/// of that vertex's two cycle neighbours.
fn planar_girth_cycles(
    vertices: &[V4],
    adjacency: &[Vec<usize>],
) -> Result<Vec<Vec<usize>>, RecoveryError> {
    for len in 3..=8 {
        let mut found = Vec::new();
        for start in 0..vertices.len() {
            let mut path = vec![start];
            extend_cycles(start, len, adjacency, &mut path, &mut found);
        }
        found.retain(|c: &Vec<usize>| is_planar(vertices, c));
        if !found.is_empty() {
            found.sort();
            return Ok(found);
        }
    }
    Err(RecoveryError::NoPlanarCycles)
}

fn extend_cycles(
    start: usize,
    len: usize,
    adjacency: &[Vec<usize>],
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().expect("non-empty path");
    if path.len() == len {
        if adjacency[last].contains(&start) && path[1] < last {
            out.push(path.clone());
        }
        return;
    }
    for &next in &adjacency[last] {
        if next > start && !path.contains(&next) {
            path.push(next);
            extend_cycles(start, len, adjacency, path, out);
            path.pop();
        }
    }
}

fn is_planar(vertices: &[V4], cycle: &[usize]) -> bool {
    let origin = vertices[cycle[0]];
    let e1 = sub(&vertices[cycle[1]], &origin);
    let n1 = dot(&e1, &e1).sqrt();
    let u1 = e1.map(|c| c / n1);
    let e2 = sub(&vertices[cycle[2]], &origin);
    let proj = dot(&e2, &u1);
    let r2 = [0, 1, 2, 3].map(|k| e2[k] - proj * u1[k]);
    let n2 = dot(&r2, &r2).sqrt();
    if n2 <= INCIDENCE_TOL {
        return false;
    }
    let u2 = r2.map(|c| c / n2);
    cycle[3..].iter().all(|&v| {
        let e = sub(&vertices[v], &origin);
        let (a, b) = (dot(&e, &u1), dot(&e, &u2));
        let r = [0, 1, 2, 3].map(|k| e[k] - a * u1[k] - b * u2[k]);
        dot(&r, &r).sqrt() <= INCIDENCE_TOL
    })
}

struct Facet {
    normal: V4,
    faces: Vec<usize>,
}

/// Groups faces into cells: each pair of faces sharing an edge spans a
/// supporting hyperplane, and the cell is every face lying in it.
fn facet_cells(vertices: &[V4], faces: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, RecoveryError> {
    let mut edge_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    let mut vertex_faces = vec![Vec::new(); vertices.len()];
    for (f, cycle) in faces.iter().enumerate() {
        for k in 0..cycle.len() {
            let (a, b) = (cycle[k], cycle[(k + 1) % cycle.len()]);
            edge_faces.entry((a.min(b), a.max(b))).or_default().push(f);
            vertex_faces[cycle[k]].push(f);
        }
    }

    let mut facets: Vec<Facet> = Vec::new();
    let mut face_facets: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];

    for (f, cycle) in faces.iter().enumerate() {
        if face_facets[f].len() >= 2 {
            continue;
        }
        let mut neighbours = BTreeSet::new();
        for k in 0..cycle.len() {
            let (a, b) = (cycle[k], cycle[(k + 1) % cycle.len()]);
            for &g in &edge_faces[&(a.min(b), a.max(b))] {
                if g != f {
                    neighbours.insert(g);
                }
            }
        }
        for g in neighbours {
            if face_facets[f].len() >= 2 {
                break;
            }
            let Some(apex) = faces[g].iter().find(|v| !cycle.contains(v)) else {
                continue;
            };
            let p0 = vertices[cycle[0]];
            let mut normal = cross4(
                &sub(&vertices[cycle[1]], &p0),
                &sub(&vertices[cycle[2]], &p0),
                &sub(&vertices[*apex], &p0),
            );
            let len = dot(&normal, &normal).sqrt();
            if len <= INCIDENCE_TOL {
                return Err(RecoveryError::DegenerateFace(f));
            }
            normal = normal.map(|c| c / len);
            let mut offset = dot(&normal, &p0);
            if offset < 0.0 {
                normal = normal.map(|c| -c);
                offset = -offset;
            }
            if offset <= INCIDENCE_TOL {
                continue;
            }
            let supporting = vertices
                .iter()
                .all(|v| dot(&normal, v) <= offset + INCIDENCE_TOL);
            if !supporting {
                continue;
            }
            let known = face_facets[f]
                .iter()
                .any(|&c| dot(&facets[c].normal, &normal) > 1.0 - INCIDENCE_TOL);
            if known {
                continue;
            }
            let on_plane: BTreeSet<usize> = (0..vertices.len())
                .filter(|&v| (dot(&normal, &vertices[v]) - offset).abs() <= INCIDENCE_TOL)
                .collect();
            let cell_faces: BTreeSet<usize> = on_plane
                .iter()
                .flat_map(|&v| vertex_faces[v].iter().copied())
                .filter(|&h| faces[h].iter().all(|v| on_plane.contains(v)))
                .collect();
            let id = facets.len();
            for &h in &cell_faces {
                face_facets[h].push(id);
            }
            facets.push(Facet {
                normal,
                faces: cell_faces.into_iter().collect(),
            });
        }
    }

    let mut cells: Vec<Vec<usize>> = facets.into_iter().map(|f| f.faces).collect();
    cells.sort();
    Ok(cells)
}

/// Vertex indices of a cell, ascending.
pub(crate) fn cell_vertex_ids(faces: &[Vec<usize>], cell: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = cell
        .iter()
        .flat_map(|&f| faces[f].iter().copied())
        .collect();
    set.into_iter().collect()
}

/// Normalized centroid of each cell's vertices.
pub(crate) fn cell_centroids(c: &Combinatorics) -> Vec<V4> {
    c.cells
        .iter()
        .map(|cell| {
            let ids = cell_vertex_ids(&c.faces, cell);
            let mut sum = [0.0; 4];
            for &v in &ids {
                for k in 0..4 {
                    sum[k] += c.vertices[v][k];
                }
            }
            normalized(sum)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross4_is_orthogonal() {
        let a = [1.0, 2.0, 0.5, -1.0];
        let b = [0.0, 1.0, 3.0, 2.0];
        let c = [-2.0, 0.5, 1.0, 1.0];
        let n = cross4(&a, &b, &c);
        assert!(dot(&n, &a).abs() < 1e-12);
        assert!(dot(&n, &b).abs() < 1e-12);
        assert!(dot(&n, &c).abs() < 1e-12);
        assert!(dot(&n, &n) > 1e-3);
    }

    #[test]
    fn raw_vertex_counts() {
        assert_eq!(simplex().len(), 5);
        assert_eq!(tesseract().len(), 16);
        assert_eq!(cross_polytope().len(), 8);
        assert_eq!(icositetrachoron().len(), 24);
        let h = hexacosichoron();
        assert_eq!(h.len(), 120);
        for v in &h {
            assert!((dot(v, v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn simplex_is_regular_and_centred() {
        let s = simplex();
        let mut sum = [0.0; 4];
        for v in &s {
            for k in 0..4 {
                sum[k] += v[k];
            }
        }
        assert!(sum.iter().all(|c| c.abs() < 1e-12));
        for a in 0..5 {
            for b in (a + 1)..5 {
                assert!((dot(&s[a], &s[b]) + 0.25).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn too_few_vertices() {
        assert_eq!(
            recover(cross_polytope()[..4].to_vec()).unwrap_err(),
            RecoveryError::TooFewVertices
        );
    }
}
