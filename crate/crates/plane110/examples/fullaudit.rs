//! The whole pipeline on a few samples, as the `fullaudit` command runs it.

use plane110::cli::full_audit;
use plane110::coloring::Caps;
use plane110::generators::sample_in_class;

fn main() {
    for seed in 0..4 {
        let g = sample_in_class(16, seed).expect("sampler");
        let r = full_audit(&g, Caps::default());
        let stages: Vec<String> = r.stages.iter().map(|s| format!("{}:{:?}", s.name, s.status)).collect();
        println!("seed {seed}: exit {} [{}]", r.exit_code, stages.join(", "));
    }
}
