//! Build the cyclic, cocommutative diagonal through arity 5 and check it.

use cyclic_ainf::diagonal::{build_diagonal, corolla_weight, verify_diagonal, Flags};
use cyclic_ainf::rational::format_q;

fn main() {
    let d = build_diagonal(5, Flags::CYCLIC_COCOMMUTATIVE).expect("solvable in every arity");
    for (n, x) in &d.entries {
        println!(
            "Δ(c{n}): {} terms, weight on c{n}⊗trivalent {}",
            x.len(),
            format_q(&corolla_weight(x, *n))
        );
    }
    println!("Δ(c3) =");
    for ((l, r), c) in d.entries[&3].iter() {
        println!("  {:>5} {l} ⊗ {r}", format_q(c));
    }
    for r in verify_diagonal(&d) {
        println!(
            "arity {}: {}",
            r.arity,
            if r.passed() { "ok" } else { "FAILED" }
        );
    }
}
