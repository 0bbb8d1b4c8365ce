//! Lists configuration matches and which of them explain each negative
//! final charge.

use plane110::configurations::{explain_with, scan, LemmaId};
use plane110::discharging::{discharge, fmt_q};
use plane110::generators::plant_configuration;

fn main() {
    let p = plant_configuration(LemmaId::Triangle344Side, 0).expect("gadget");
    let matches = scan(&p.graph, p.c0);
    for m in &matches {
        let roles: Vec<String> = m.vertices.iter().map(|(r, v)| format!("{r}={v}")).collect();
        println!("{}: {}", m.lemma, roles.join(" "));
    }
    let (_, _, audit) = discharge(&p.graph, p.c0).expect("discharge");
    for n in &audit.negatives {
        let by: Vec<String> = explain_with(&matches, n.element).iter().map(|m| m.lemma.to_string()).collect();
        println!("{} ({}) explained by {:?}", n.element, fmt_q(&n.charge), by);
    }
}
