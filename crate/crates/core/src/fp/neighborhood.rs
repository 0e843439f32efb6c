use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::sap::Word;

/// The distance-one neighborhood of a polygon: its vertices plus every
/// lattice point adjacent to one of them, carrying the adjacency of the
/// edges incident to the polygon.
///
/// The edge set is exactly the edges the lattice loses when the polygon's
/// vertices are deleted: both ends in the neighborhood and at least one end
/// on the polygon itself. Edges between two outside neighbors never enter;
/// including them is inconsistent with the published fractions.
///
/// Vertex order is deterministic: the polygon path starting at the origin,
/// then the outside neighbors sorted by (y, x). The contraction downstream
/// is basis-independent, but reproducible matrices make runs comparable.
#[derive(Clone, Debug)]
pub struct NeighborhoodGraph {
    vertices: Vec<(i64, i64)>,
    polygon_len: usize,
    /// Sorted adjacency lists of the induced subgraph.
    neighbors: Vec<Vec<usize>>,
}

impl NeighborhoodGraph {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn polygon_len(&self) -> usize {
        self.polygon_len
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn adjacency_lists(&self) -> &[Vec<usize>] {
        &self.neighbors
    }

    /// Degree of vertex i inside the induced subgraph; the diagonal of the
    /// squared adjacency matrix.
    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }
}

/// Builds the neighborhood graph of a closed self-avoiding word (canonical
/// or not).
pub fn build_neighborhood(word: &Word) -> Result<NeighborhoodGraph> {
    if word.is_empty() || !word.is_closed() {
        return Err(Error::InvalidPolygon(format!("{word} does not close")));
    }
    let path = word.vertices();
    let mut on_polygon: HashSet<(i64, i64)> = HashSet::with_capacity(path.len());
    for &v in &path {
        if !on_polygon.insert(v) {
            return Err(Error::InvalidPolygon(format!(
                "{word} revisits vertex ({}, {})",
                v.0, v.1
            )));
        }
    }

    // polygon path order, starting from the origin (the path's last vertex)
    let mut vertices: Vec<(i64, i64)> = Vec::with_capacity(4 * path.len());
    vertices.push((0, 0));
    vertices.extend_from_slice(&path[..path.len() - 1]);

    let mut outside: Vec<(i64, i64)> = Vec::new();
    let mut seen: HashSet<(i64, i64)> = HashSet::new();
    for &(x, y) in &path {
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let p = (x + dx, y + dy);
            if !on_polygon.contains(&p) && seen.insert(p) {
                outside.push(p);
            }
        }
    }
    outside.sort_by_key(|&(x, y)| (y, x));
    vertices.extend(outside);

    let index: std::collections::HashMap<(i64, i64), usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let polygon_len = path.len();
    let mut neighbors = vec![Vec::new(); vertices.len()];
    for (i, &(x, y)) in vertices.iter().enumerate() {
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            if let Some(&j) = index.get(&(x + dx, y + dy)) {
                // keep the edge only if it touches the polygon
                if i < polygon_len || j < polygon_len {
                    neighbors[i].push(j);
                }
            }
        }
    }
    for adj in &mut neighbors {
        adj.sort_unstable();
    }

    Ok(NeighborhoodGraph {
        vertices,
        polygon_len,
        neighbors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(s: &str) -> NeighborhoodGraph {
        build_neighborhood(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn unit_square_has_twelve_vertices() {
        let g = graph("RULD");
        assert_eq!(g.size(), 12);
        assert_eq!(g.polygon_len(), 4);
    }

    #[test]
    fn corner_polygon_has_nineteen() {
        assert_eq!(graph("RUULLDRD").size(), 19);
    }

    #[test]
    fn doubled_edge_neighborhood() {
        // the length-2 polygon has 2 vertices and 6 outside neighbors
        assert_eq!(graph("RL").size(), 8);
    }

    #[test]
    fn size_bound_for_proper_polygons() {
        for s in ["RULD", "RUULLDRD", "RRUULLDD", "RRRUULLLDD"] {
            let g = graph(s);
            assert!(g.size() <= 3 * g.polygon_len());
        }
    }

    #[test]
    fn degrees_match_squared_adjacency_diagonal() {
        let g = graph("RUULLDRD");
        let n = g.size();
        for i in 0..n {
            // (B^2)_{ii} = sum_k B_{ik} B_{ki}
            let diag: usize = g.neighbors(i).len();
            assert_eq!(g.degree(i), diag);
            // row sums equal column sums by symmetry
            let col: usize = (0..n).filter(|&k| g.neighbors(k).contains(&i)).count();
            assert_eq!(col, g.degree(i));
        }
    }

    #[test]
    fn deterministic_rebuild() {
        let a = graph("RUULLDRD");
        let b = graph("RUULLDRD");
        assert_eq!(a.vertices(), b.vertices());
        for i in 0..a.size() {
            assert_eq!(a.neighbors(i), b.neighbors(i));
        }
    }

    #[test]
    fn rejects_bad_words() {
        assert!(build_neighborhood(&"RULL".parse().unwrap()).is_err());
        assert!(build_neighborhood(&"RULDRULD".parse().unwrap()).is_err());
        assert!(build_neighborhood(&Word::empty()).is_err());
    }
}
