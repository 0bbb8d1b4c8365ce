//! Class membership with witnesses: 5-cycles and touching triangles.

use plane110::graph_class::{in_class_abstract, triangle_distance};
use plane110::plane_graph::Graph;

fn main() {
    let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
    let apart = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
    for (name, g) in [("C5", &c5), ("bowtie", &bowtie), ("triangles joined by an edge", &apart)] {
        let r = in_class_abstract(g);
        println!(
            "{name}: in class {}, 5-cycle {:?}, touching triangles {:?}, triangle distance {:?}",
            r.in_class,
            r.five_cycle_witness,
            r.triangle_pair_witness,
            triangle_distance(g)
        );
    }
}
