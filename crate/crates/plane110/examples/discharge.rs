//! Runs the discharging rules on a poor 4-vertex gadget and prints the
//! transfers and the final charges that stay negative.

use plane110::configurations::LemmaId;
use plane110::discharging::{discharge, fmt_q};
use plane110::generators::plant_configuration;

fn main() {
    let p = plant_configuration(LemmaId::PoorFour, 1).expect("gadget");
    let (_, ledger, audit) = discharge(&p.graph, p.c0).expect("C0 is a facial 3- or 7-cycle");
    for t in &ledger.transfers {
        println!("{} -> {}: {} ({})", t.from, t.to, fmt_q(&t.amount), t.rule.tag());
    }
    println!("sum before {}, after {}", fmt_q(&ledger.initial_sum()), fmt_q(&ledger.final_sum()));
    for n in &audit.negatives {
        println!("negative: {} = {}", n.element, fmt_q(&n.charge));
    }
    println!("outer cycle formula holds: {}", audit.outer.holds);
}
