//! Every coloring of a facial triangle extends so that no vertex off the
//! triangle shares a color with a triangle neighbor.

use plane110::cli::default_c0;
use plane110::coloring::{check_superextendable, Caps};
use plane110::generators::sample_in_class;

fn main() {
    let mut shown = 0;
    for seed in 0.. {
        let g = sample_in_class(11, seed).expect("sampler");
        let Some(f) = default_c0(&g) else { continue };
        let cycle = g.face(f).walk.clone();
        let r = check_superextendable(g.graph(), &cycle, Caps::default()).expect("cycle");
        println!(
            "seed {seed}: cycle {cycle:?}, {}/{} boundary colorings superextend",
            r.extended, r.boundary_colorings
        );
        shown += 1;
        if shown == 5 {
            break;
        }
    }
}
