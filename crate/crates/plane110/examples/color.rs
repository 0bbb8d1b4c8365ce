//! Finds a (1,1,0)-coloring with a pinned vertex and checks it.

use plane110::coloring::{solve, verify, Caps, Coloring};
use plane110::generators::sample_in_class;

fn main() {
    let g = sample_in_class(20, 3).expect("sampler");
    let caps = Caps::default();
    let pins = Coloring::from_pairs(g.vertex_count(), &[(0, 3)]);
    let sol = solve(g.graph(), caps, &pins, &[]).expect("pins are valid");
    let col = sol.coloring().expect("class members are colorable");
    assert!(verify(g.graph(), col, caps).is_empty());
    print!("{}", col.to_lines());
    println!("search nodes: {}", sol.stats().nodes);
}
