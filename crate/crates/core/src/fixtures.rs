//! Small reference networks.

use crate::embedding::PlanarEmbedding;

/// The 6-node, 10-branch c-net whose battery choices give the 33x32 and
/// 69x61 perfect rectangles and the 15x11 imperfect one, all of order 9.
///
/// Branch order and directions are fixed explicitly: the last branch is the
/// battery and runs from node 5 back to node 0, against the lower-to-higher
/// convention used for graphs read from planar_code.
pub fn nine_square_cnet() -> PlanarEmbedding {
    let edges = vec![(0, 2), (0, 1), (1, 3), (1, 4), (2, 3), (3, 4), (2, 5), (3, 5), (4, 5), (5, 0)];
    let rotation = vec![
        vec![2, 0, 19],
        vec![6, 4, 3],
        vec![8, 12, 1],
        vec![14, 9, 5, 10],
        vec![16, 11, 7],
        vec![18, 13, 15, 17],
    ];
    PlanarEmbedding::from_darts(6, edges, rotation).expect("fixture is planar")
}

/// The tetrahedron, vertices 0..4.
pub fn tetrahedron() -> PlanarEmbedding {
    PlanarEmbedding::from_neighbors(&[vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]]).expect("planar")
}

/// Compound perfect squared squares of orders 24 to 28, one annotated
/// Bouwkampcode per line.
pub const APPENDIX: &str = include_str!("../data/appendix_cpss.txt");
