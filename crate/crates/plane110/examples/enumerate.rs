//! Counts connected planar graphs on up to `n` vertices (default 7).

use plane110::generators::enumerate_plane_graphs;
use plane110::graph_class::in_class_g;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    for n in 1..=max {
        let all = enumerate_plane_graphs(n).expect("n <= 10");
        let in_class = all.iter().filter(|g| in_class_g(g).in_class).count();
        println!("n={n}: {} connected planar graphs, {in_class} in the class", all.len());
    }
}
