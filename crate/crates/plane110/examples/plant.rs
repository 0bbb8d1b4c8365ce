//! Builds one gadget per configuration and prints it in .pg format.

use plane110::configurations::LemmaId;
use plane110::generators::plant_configuration;

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "no-333-path".into());
    let lemma: LemmaId = name.parse().expect("known configuration name");
    let p = plant_configuration(lemma, 0).expect("gadget");
    println!("# {lemma}: key vertices {:?}, in class {}", p.key, p.in_class);
    print!("{}", p.graph.with_outer_face(p.c0).to_text());
}
