//! Small hand-made instances with known topology.

use crate::complexes::WeightedGraph;
use crate::relations::CrossDistanceMatrix;

/// Vertex to opposite-edge-midpoint distance in a unit regular tetrahedron.
pub const HALF_SQRT_3: f64 = 0.866_025_403_784_438_6;

/// Cross distances on the 6-cycle `x0, y2, x1, y0, x2, y1` with unit edges and
/// the shortest-path metric: `d(x_i, y_i) = 3`, `d(x_i, y_j) = 1` otherwise.
pub fn c6_matrix() -> CrossDistanceMatrix {
    let rows = (0..3)
        .map(|i| (0..3).map(|j| if i == j { 3.0 } else { 1.0 }).collect())
        .collect();
    CrossDistanceMatrix::from_rows(rows).expect("valid fixture")
}

/// The six unordered vertex pairs of a tetrahedron, in the column order used
/// by [`tetrahedron_matrix`]: `01, 02, 03, 12, 13, 23`.
pub const TETRAHEDRON_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Vertices of a unit regular tetrahedron (rows) against its edge midpoints
/// (columns). Entries are exactly `1/2` when the vertex lies on the edge and
/// `sqrt(3)/2` otherwise.
pub fn tetrahedron_matrix() -> CrossDistanceMatrix {
    let rows = (0..4)
        .map(|i| {
            TETRAHEDRON_EDGES
                .iter()
                .map(|&(a, b)| if i == a || i == b { 0.5 } else { HALF_SQRT_3 })
                .collect()
        })
        .collect();
    CrossDistanceMatrix::from_rows(rows).expect("valid fixture")
}

/// Coordinates of a unit regular tetrahedron and of its edge midpoints.
pub fn tetrahedron_points() -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let h = 3f64.sqrt();
    let vertices = vec![
        vec![0.0, 0.0, 0.0],
        vec![1.0, 0.0, 0.0],
        vec![0.5, h / 2.0, 0.0],
        vec![0.5, h / 6.0, (2.0f64 / 3.0).sqrt()],
    ];
    let midpoints = TETRAHEDRON_EDGES
        .iter()
        .map(|&(a, b)| {
            vertices[a]
                .iter()
                .zip(&vertices[b])
                .map(|(p, q)| (p + q) / 2.0)
                .collect()
        })
        .collect();
    (vertices, midpoints)
}

/// `K_{2,2,2}` on the tetrahedron's edge midpoints, all values `1/2`: two
/// midpoints are adjacent unless their edges are disjoint.
pub fn octahedron_graph() -> WeightedGraph {
    let mut edges = Vec::new();
    for (i, &(a, b)) in TETRAHEDRON_EDGES.iter().enumerate() {
        for (k, &(c, d)) in TETRAHEDRON_EDGES.iter().enumerate().skip(i + 1) {
            if a == c || a == d || b == c || b == d {
                edges.push(((i, k), 0.5));
            }
        }
    }
    WeightedGraph::new(vec![0.5; 6], edges).expect("valid fixture")
}
