//! Draws reproducible random members of the class.

use plane110::generators::sample_in_class;
use plane110::graph_class::triangles;

fn main() {
    for seed in 0..5 {
        let g = sample_in_class(24, seed).expect("sampler");
        println!(
            "seed {seed}: {} vertices, {} edges, {} faces, {} triangles",
            g.vertex_count(),
            g.edge_count(),
            g.faces().len(),
            triangles(g.graph()).len()
        );
    }
    print!("{}", sample_in_class(8, 7).unwrap().to_text());
}
