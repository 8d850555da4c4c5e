//! Cyclic homotopy between two members of the arity-4 family.

use cyclic_ainf::diagonal::{corolla_pair_c2, Diagonal, Flags};
use cyclic_ainf::fixtures::{printed_delta3, printed_delta4};
use cyclic_ainf::homotopy::{build_homotopy, dt_part, verify_homotopy};
use cyclic_ainf::rational::{format_q, q};
use std::collections::BTreeMap;

fn family(x: cyclic_ainf::Q) -> Diagonal {
    let entries = BTreeMap::from([
        (2, corolla_pair_c2()),
        (3, printed_delta3()),
        (4, printed_delta4(&x)),
    ]);
    Diagonal {
        max_arity: 4,
        flags: Flags::CYCLIC,
        entries,
    }
}

fn main() {
    let h = build_homotopy(&family(q(0, 1)), &family(q(-1, 10)), 4).unwrap();
    for r in verify_homotopy(&h) {
        println!(
            "arity {}: start {} end {} chain map {} cyclic {}",
            r.arity, r.start, r.end, r.chain_map, r.cyclic
        );
    }
    println!("dt part in arity 4:");
    for ((l, r, k, _), c) in dt_part(&h.entries[&4]).iter() {
        println!("  {:>6} t^{k} dt {l} ⊗ {r}", format_q(c));
    }
}
