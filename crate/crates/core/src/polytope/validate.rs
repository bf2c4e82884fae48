use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::Polychoron;
use crate::scalar::{norm4, sub4, Real};

/// One broken invariant, with the indices involved.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Euler { v: usize, e: usize, f: usize, c: usize },
    VertexNorm { vertex: usize, norm: f64 },
    EdgeLength { edge: usize, length: f64, expected: f64 },
    FaceNotClosed { face: usize },
    FaceSize { face: usize, size: usize, expected: usize },
    CellSize { cell: usize, size: usize, expected: usize },
    FaceSharing { face: usize, cells: usize },
    EdgeCycle { edge: usize },
    CenterCount { centers: usize, cells: usize },
    CenterNorm { cell: usize, norm: f64 },
    CentersCoincide { a: usize, b: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Euler { v, e, f: fa, c } => {
                write!(f, "Euler relation fails: {v} - {e} + {fa} - {c} != 0")
            }
            Violation::VertexNorm { vertex, norm } => {
                write!(f, "vertex {vertex} has norm {norm}")
            }
            Violation::EdgeLength {
                edge,
                length,
                expected,
            } => write!(f, "edge {edge} has length {length}, expected {expected}"),
            Violation::FaceNotClosed { face } => {
                write!(f, "face {face} is not a cycle of edges")
            }
            Violation::FaceSize {
                face,
                size,
                expected,
            } => write!(f, "face {face} has {size} vertices, expected {expected}"),
            Violation::CellSize {
                cell,
                size,
                expected,
            } => write!(f, "cell {cell} has {size} faces, expected {expected}"),
            Violation::FaceSharing { face, cells } => {
                write!(f, "face {face} is shared by {cells} cells, expected exactly 2")
            }
            Violation::EdgeCycle { edge } => {
                write!(f, "faces around edge {edge} do not form a single cycle")
            }
            Violation::CenterCount { centers, cells } => {
                write!(f, "{centers} cell centers for {cells} cells")
            }
            Violation::CenterNorm { cell, norm } => {
                write!(f, "center of cell {cell} has norm {norm}")
            }
            Violation::CentersCoincide { a, b } => {
                write!(f, "centers of cells {a} and {b} coincide")
            }
        }
    }
}

/// Outcome of [`Polychoron::validate`]; lists every violation found, in
/// check order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

pub(super) fn validate<T: Real>(p: &Polychoron<T>) -> ValidationReport {
    let mut out = Vec::new();
    let (v, e, f, c) = p.counts();
    if v + f != e + c {
        out.push(Violation::Euler { v, e, f, c });
    }

    let unit_tol = T::unit_tolerance();
    let geo_tol = T::geometric_tolerance();
    for (i, vert) in p.vertices.iter().enumerate() {
        let n = norm4(vert);
        if (n - T::one()).abs() > unit_tol {
            out.push(Violation::VertexNorm {
                vertex: i,
                norm: n.as_f64(),
            });
        }
    }

    let lengths: Vec<T> = p
        .edges
        .iter()
        .map(|&[a, b]| norm4(&sub4(&p.vertices[a], &p.vertices[b])))
        .collect();
    if let Some(&expected) = lengths.first() {
        for (i, &len) in lengths.iter().enumerate() {
            if (len - expected).abs() > geo_tol {
                out.push(Violation::EdgeLength {
                    edge: i,
                    length: len.as_f64(),
                    expected: expected.as_f64(),
                });
            }
        }
    }

    let edge_ids: BTreeMap<(usize, usize), usize> = p
        .edges
        .iter()
        .enumerate()
        .map(|(i, &[a, b])| ((a.min(b), a.max(b)), i))
        .collect();
    let mut edge_faces: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let face_size = p.faces.first().map_or(0, Vec::len);
    for (fi, face) in p.faces.iter().enumerate() {
        if face.len() != face_size {
            out.push(Violation::FaceSize {
                face: fi,
                size: face.len(),
                expected: face_size,
            });
        }
        for k in 0..face.len() {
            let (a, b) = (face[k], face[(k + 1) % face.len()]);
            match edge_ids.get(&(a.min(b), a.max(b))) {
                Some(&id) => edge_faces.entry(id).or_default().push(fi),
                None => {
                    out.push(Violation::FaceNotClosed { face: fi });
                    break;
                }
            }
        }
    }

    let cell_size = p.cells.first().map_or(0, Vec::len);
    for (ci, cell) in p.cells.iter().enumerate() {
        if cell.len() != cell_size {
            out.push(Violation::CellSize {
                cell: ci,
                size: cell.len(),
                expected: cell_size,
            });
        }
    }

    let face_cells = p.face_cells();
    for (fi, cells) in face_cells.iter().enumerate() {
        if cells.len() != 2 {
            out.push(Violation::FaceSharing {
                face: fi,
                cells: cells.len(),
            });
        }
    }

    // Around each edge the faces and the cells between them alternate in a
    // single ring: every face meets two of the ring's cells, every cell two
    // of its faces, and the ring is connected.
    for (&edge, faces) in &edge_faces {
        if !edge_ring_is_single_cycle(faces, &face_cells) {
            out.push(Violation::EdgeCycle { edge });
        }
    }

    if p.cell_centers.len() != c {
        out.push(Violation::CenterCount {
            centers: p.cell_centers.len(),
            cells: c,
        });
    }
    for (ci, center) in p.cell_centers.iter().enumerate() {
        let n = center.norm();
        if (n - T::one()).abs() > unit_tol {
            out.push(Violation::CenterNorm {
                cell: ci,
                norm: n.as_f64(),
            });
        }
    }
    'outer: for a in 0..p.cell_centers.len() {
        for b in (a + 1)..p.cell_centers.len() {
            if p.cell_centers[a].geodesic_distance(&p.cell_centers[b]) <= T::lit(1e-6) {
                out.push(Violation::CentersCoincide { a, b });
                break 'outer;
            }
        }
    }

    ValidationReport { violations: out }
}

fn edge_ring_is_single_cycle(faces: &[usize], face_cells: &[Vec<usize>]) -> bool {
    let mut cell_faces: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &f in faces {
        if face_cells[f].len() != 2 {
            return false;
        }
        for &c in &face_cells[f] {
            cell_faces.entry(c).or_default().push(f);
        }
    }
    if cell_faces.values().any(|fs| fs.len() != 2) {
        return false;
    }
    // walk the ring from the first face
    let mut seen = BTreeSet::new();
    let mut stack = vec![faces[0]];
    while let Some(f) = stack.pop() {
        if !seen.insert(f) {
            continue;
        }
        for c in &face_cells[f] {
            stack.extend(cell_faces[c].iter().copied());
        }
    }
    seen.len() == faces.len()
}
