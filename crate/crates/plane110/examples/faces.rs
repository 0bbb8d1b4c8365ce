//! Loads a plane graph from text and traces its faces.

use plane110::plane_graph::PlaneGraph;

const K4: &str = "\
# K4 drawn with vertex 3 in the middle
vertices 4
0: 1 3 2
1: 2 3 0
2: 0 3 1
3: 0 1 2
outer: 0 1 2
";

fn main() {
    let g = PlaneGraph::load(K4).expect("valid .pg text");
    println!("V={} E={} F={}", g.vertex_count(), g.edge_count(), g.faces().len());
    for f in g.faces() {
        println!("face {}: walk {:?}", f.id, f.walk);
    }
    println!("outer face: {:?}", g.outer_face());
    print!("{}", g.to_text());
}
