//! How much choice is left in Δ(c_n) once lower arities are fixed.

use cyclic_ainf::diagonal::{freedom_dimension, Flags};

fn main() {
    println!(
        "{:>5} {:>8} {:>22}",
        "arity", "cyclic", "cyclic+cocommutative"
    );
    for n in 3..=5 {
        let a = freedom_dimension(n, Flags::CYCLIC);
        let b = freedom_dimension(n, Flags::CYCLIC_COCOMMUTATIVE);
        println!("{n:>5} {a:>8} {b:>22}");
    }
}
