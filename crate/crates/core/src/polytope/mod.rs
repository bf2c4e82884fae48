//! The six regular polychora, inscribed in S³.
//!
//! Vertices are generated from the standard coordinate constructions and
//! sorted lexicographically; edges, faces and cells are then recovered from
//! the vertex set alone (see [`construct`]). The 120-cell is built as the
//! dual of the 600-cell.

mod construct;
mod validate;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::quat::UnitQuaternion;
use crate::scalar::{cast4, Real};

pub use validate::{ValidationReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("unknown polytope `{0}` (expected one of 5-cell, 8-cell, 16-cell, 24-cell, 120-cell, 600-cell)")]
    UnknownPolytope(String),
    #[error("could not recover combinatorics: {0}")]
    Construction(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolytopeName {
    Cell5,
    Cell8,
    Cell16,
    Cell24,
    Cell120,
    Cell600,
}

impl PolytopeName {
    /// All six, ordered by cell count.
    pub const ALL: [PolytopeName; 6] = [
        PolytopeName::Cell5,
        PolytopeName::Cell8,
        PolytopeName::Cell16,
        PolytopeName::Cell24,
        PolytopeName::Cell120,
        PolytopeName::Cell600,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PolytopeName::Cell5 => "5-cell",
            PolytopeName::Cell8 => "8-cell",
            PolytopeName::Cell16 => "16-cell",
            PolytopeName::Cell24 => "24-cell",
            PolytopeName::Cell120 => "120-cell",
            PolytopeName::Cell600 => "600-cell",
        }
    }

    pub fn cell_count(self) -> usize {
        match self {
            PolytopeName::Cell5 => 5,
            PolytopeName::Cell8 => 8,
            PolytopeName::Cell16 => 16,
            PolytopeName::Cell24 => 24,
            PolytopeName::Cell120 => 120,
            PolytopeName::Cell600 => 600,
        }
    }

    /// Subdivision level used for interactive meshes.
    pub fn default_subdivision(self) -> u32 {
        match self {
            PolytopeName::Cell120 => 2,
            PolytopeName::Cell600 => 1,
            _ => 3,
        }
    }
}

impl fmt::Display for PolytopeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PolytopeName {
    type Err = PolytopeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolytopeName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| PolytopeError::UnknownPolytope(s.to_string()))
    }
}

/// A regular 4-polytope with full combinatorics.
///
/// Faces are vertex cycles in boundary order; cells are ascending lists of
/// face indices. All indices are zero-based.
#[derive(Debug, Clone)]
pub struct Polychoron<T> {
    pub name: PolytopeName,
    pub vertices: Vec<[T; 4]>,
    pub edges: Vec<[usize; 2]>,
    pub faces: Vec<Vec<usize>>,
    pub cells: Vec<Vec<usize>>,
    pub cell_centers: Vec<UnitQuaternion<T>>,
}

impl<T: Real> Polychoron<T> {
    pub fn build(name: PolytopeName) -> Self {
        Self::from_vertices(name, construct::vertices_of(name))
            .expect("built-in constructions are valid")
    }

    /// Parses `name` and builds the polytope.
    pub fn build_named(name: &str) -> Result<Self, PolytopeError> {
        Ok(Self::build(name.parse()?))
    }

    /// Recovers the combinatorics of the regular polytope with these vertices.
    /// Vertices are radially projected to S³ first.
    pub fn from_vertices(name: PolytopeName, vertices: Vec<[f64; 4]>) -> Result<Self, PolytopeError> {
        let projected = vertices
            .into_iter()
            .map(|v| {
                let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]).sqrt();
                v.map(|c| c / n)
            })
            .collect();
        let comb = construct::recover(projected)
            .map_err(|e| PolytopeError::Construction(format!("{e:?}")))?;
        let centers = construct::cell_centroids(&comb);
        Ok(Self {
            name,
            vertices: comb.vertices.iter().map(cast4).collect(),
            edges: comb.edges,
            faces: comb.faces,
            cells: comb.cells,
            cell_centers: centers
                .iter()
                .map(|c| UnitQuaternion::from_unit_components(T::lit(c[0]), T::lit(c[1]), T::lit(c[2]), T::lit(c[3])))
                .collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// `(V, E, F, C)`.
    pub fn counts(&self) -> (usize, usize, usize, usize) {
        (
            self.vertices.len(),
            self.edges.len(),
            self.faces.len(),
            self.cells.len(),
        )
    }

    pub fn cell_centers(&self) -> &[UnitQuaternion<T>] {
        &self.cell_centers
    }

    /// Ascending vertex ids of a cell.
    pub fn cell_vertices(&self, cell: usize) -> Vec<usize> {
        construct::cell_vertex_ids(&self.faces, &self.cells[cell])
    }

    /// The (up to two) cells containing each face.
    pub fn face_cells(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.faces.len()];
        for (c, cell) in self.cells.iter().enumerate() {
            for &f in cell {
                out[f].push(c);
            }
        }
        out
    }

    /// Cells are adjacent when they share exactly one 2-face.
    pub fn dual_adjacency(&self) -> DualGraph {
        let mut shared: HashMap<(usize, usize), usize> = HashMap::new();
        for cells in self.face_cells() {
            for a in 0..cells.len() {
                for b in (a + 1)..cells.len() {
                    let key = (cells[a].min(cells[b]), cells[a].max(cells[b]));
                    *shared.entry(key).or_default() += 1;
                }
            }
        }
        let edges: BTreeSet<(usize, usize)> = shared
            .into_iter()
            .filter(|&(_, n)| n == 1)
            .map(|(k, _)| k)
            .collect();
        DualGraph::new(self.cells.len(), edges.into_iter().map(|(a, b)| [a, b]).collect())
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }

    /// JSON export with `f64` coordinates.
    pub fn to_export(&self) -> PolychoronExport {
        PolychoronExport {
            name: self.name.as_str().to_string(),
            vertices: self.vertices.iter().map(|v| v.map(Real::as_f64)).collect(),
            edges: self.edges.clone(),
            faces: self.faces.clone(),
            cells: self.cells.clone(),
            cell_centers: self.cell_centers.iter().map(|q| q.to_f64_array()).collect(),
        }
    }
}

/// Wire form of a [`Polychoron`].
#[derive(Debug, Clone, Serialize, serde::Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct PolychoronExport {
    pub name: String,
    pub vertices: Vec<[f64; 4]>,
    pub edges: Vec<[usize; 2]>,
    pub faces: Vec<Vec<usize>>,
    pub cells: Vec<Vec<usize>>,
    pub cell_centers: Vec<[f64; 4]>,
}

/// Cell adjacency graph; its nodes are the vertices of the dual polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub node_count: usize,
    pub edges: Vec<[usize; 2]>,
    adjacency: Vec<Vec<usize>>,
}

impl DualGraph {
    pub fn new(node_count: usize, edges: Vec<[usize; 2]>) -> Self {
        let mut adjacency = vec![Vec::new(); node_count];
        for &[a, b] in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        Self {
            node_count,
            edges,
            adjacency,
        }
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// The common degree, if every node has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.adjacency.first()?.len();
        self.adjacency
            .iter()
            .all(|l| l.len() == first)
            .then_some(first)
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.node_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(n) = queue.pop_front() {
            for &m in &self.adjacency[n] {
                if !seen[m] {
                    seen[m] = true;
                    count += 1;
                    queue.push_back(m);
                }
            }
        }
        count == self.node_count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    type P = Polychoron<f64>;

    #[test]
    fn parses_names() {
        for n in PolytopeName::ALL {
            assert_eq!(n.as_str().parse::<PolytopeName>().unwrap(), n);
        }
        assert_eq!(
            "7-cell".parse::<PolytopeName>().unwrap_err(),
            PolytopeError::UnknownPolytope("7-cell".into())
        );
        assert!(P::build_named("tesseract").is_err());
    }

    /// Oracle: the k-faces of a simplex are its (k+1)-subsets of vertices.
    #[test]
    fn five_cell_matches_subset_enumeration() {
        let p = P::build(PolytopeName::Cell5);
        let choose = |n: usize, k: usize| -> usize {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        };
        assert_eq!(
            p.counts(),
            (5, choose(5, 2), choose(5, 3), choose(5, 4))
        );
        assert_eq!(p.counts(), (5, 10, 10, 5));
        // every 3-subset is a face
        let faces: BTreeSet<Vec<usize>> = p
            .faces
            .iter()
            .map(|f| {
                let mut s = f.clone();
                s.sort();
                s
            })
            .collect();
        for a in 0..5 {
            for b in (a + 1)..5 {
                for c in (b + 1)..5 {
                    assert!(faces.contains(&vec![a, b, c]));
                }
            }
        }
    }

    #[test]
    fn eight_cell_centers_are_the_axes() {
        let p = P::build(PolytopeName::Cell8);
        assert_eq!(p.cell_count(), 8);
        // oracle: average the 8 vertices of each cube directly
        for (c, center) in p.cell_centers.iter().enumerate() {
            let ids = p.cell_vertices(c);
            assert_eq!(ids.len(), 8);
            let mut sum = [0.0f64; 4];
            for &v in &ids {
                for k in 0..4 {
                    sum[k] += p.vertices[v][k] / 8.0;
                }
            }
            let axis = sum.iter().position(|s| s.abs() > 0.25).unwrap();
            for k in 0..4 {
                let expect = if k == axis { sum[k].signum() } else { 0.0 };
                assert!((center.to_array()[k] - expect).abs() < 1e-12);
            }
        }
        let min = pairwise_min(&p.cell_centers);
        assert!((min - FRAC_PI_2).abs() < 1e-12);
    }

    fn pairwise_min(c: &[UnitQuaternion<f64>]) -> f64 {
        let mut m = f64::INFINITY;
        for a in 0..c.len() {
            for b in (a + 1)..c.len() {
                m = m.min(c[a].geodesic_distance(&c[b]));
            }
        }
        m
    }

    #[test]
    fn twenty_four_cell_is_self_dual() {
        let p = P::build(PolytopeName::Cell24);
        let centers: Vec<[f64; 4]> = p.cell_centers.iter().map(|c| c.to_array()).collect();
        let dual = P::from_vertices(PolytopeName::Cell24, centers).unwrap();
        assert!(dual.validate().is_ok(), "{:?}", dual.validate());
        assert_eq!(dual.counts(), (24, 96, 96, 24));
    }

    #[test]
    fn eight_and_sixteen_are_dual() {
        let p8 = P::build(PolytopeName::Cell8);
        let centers: Vec<[f64; 4]> = p8.cell_centers.iter().map(|c| c.to_array()).collect();
        let d = P::from_vertices(PolytopeName::Cell16, centers).unwrap();
        assert!(d.validate().is_ok());
        assert_eq!(d.counts(), P::build(PolytopeName::Cell16).counts());
    }

    /// Oracle for dual degrees: count shared faces by scanning every cell pair.
    fn brute_force_degrees(p: &P) -> Vec<usize> {
        let sets: Vec<BTreeSet<usize>> = p.cells.iter().map(|c| c.iter().copied().collect()).collect();
        (0..sets.len())
            .map(|a| {
                (0..sets.len())
                    .filter(|&b| b != a && sets[a].intersection(&sets[b]).count() == 1)
                    .count()
            })
            .collect()
    }

    #[test]
    fn dual_degrees_small() {
        for (name, degree) in [
            (PolytopeName::Cell5, 4),
            (PolytopeName::Cell8, 6),
            (PolytopeName::Cell16, 4),
            (PolytopeName::Cell24, 8),
        ] {
            let p = P::build(name);
            let g = p.dual_adjacency();
            let oracle = brute_force_degrees(&p);
            assert!(oracle.iter().all(|&d| d == degree), "{name}");
            assert_eq!(g.regular_degree(), Some(degree), "{name}");
            assert!(g.is_connected());
            let total: usize = (0..g.node_count).map(|n| g.degree(n)).sum();
            assert_eq!(g.edges.len() * 2, total);
        }
    }

    #[test]
    fn large_polychora() {
        let p600 = P::build(PolytopeName::Cell600);
        assert_eq!(p600.counts(), (120, 720, 1200, 600));
        assert!(p600.validate().is_ok(), "{:?}", p600.validate().first_failure());
        let g600 = p600.dual_adjacency();
        assert_eq!(g600.regular_degree(), Some(4));
        assert!(g600.is_connected());

        let p120 = P::build(PolytopeName::Cell120);
        assert_eq!(p120.counts(), (600, 1200, 720, 120));
        assert!(p120.validate().is_ok(), "{:?}", p120.validate().first_failure());
        let g120 = p120.dual_adjacency();
        assert_eq!(g120.regular_degree(), Some(12));
        assert!(g120.is_connected());

        // the 120-cell's centers are the 600-cell's vertices again
        let centers: Vec<[f64; 4]> = p120.cell_centers.iter().map(|c| c.to_array()).collect();
        let back = P::from_vertices(PolytopeName::Cell600, centers).unwrap();
        assert!(back.validate().is_ok());
        assert_eq!(back.counts(), p600.counts());
        for a in &back.vertices {
            let hit = p600
                .vertices
                .iter()
                .any(|b| (0..4).all(|k| (a[k] - b[k]).abs() < 1e-12));
            assert!(hit);
        }
    }

    #[test]
    fn build_is_deterministic() {
        let a = P::build(PolytopeName::Cell24);
        let b = P::build(PolytopeName::Cell24);
        assert_eq!(a.vertices, b.vertices);
        assert_eq!(a.faces, b.faces);
        assert_eq!(a.cells, b.cells);
    }

    #[test]
    fn vertices_sorted_lexicographically() {
        let p = P::build(PolytopeName::Cell16);
        for w in p.vertices.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn export_round_trips_through_json() {
        let p = P::build(PolytopeName::Cell5);
        let e = p.to_export();
        let text = serde_json::to_string(&e).unwrap();
        assert!(text.contains("\"cellCenters\""));
        let back: PolychoronExport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn single_precision_build() {
        let p = Polychoron::<f32>::build(PolytopeName::Cell24);
        assert_eq!(p.counts(), (24, 96, 96, 24));
        assert!(p.validate().is_ok(), "{:?}", p.validate());
    }
}
