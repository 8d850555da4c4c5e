//! Tensor products of small cyclic A∞-algebras along the diagonal.

use cyclic_ainf::algebra::{dual_numbers, m3_algebra, tensor_product_algebra, validate_algebra};
use cyclic_ainf::diagonal::{build_diagonal, Flags};
use cyclic_ainf::selftest::m4_witness;

fn main() {
    let d = build_diagonal(5, Flags::CYCLIC_COCOMMUTATIVE).unwrap();
    let pairs = [
        (
            "even dual numbers squared",
            dual_numbers(false),
            dual_numbers(false),
        ),
        (
            "odd dual numbers squared",
            dual_numbers(true),
            dual_numbers(true),
        ),
        ("m3 algebra squared", m3_algebra(), m3_algebra()),
    ];
    for (name, a, b) in pairs {
        let n = if a.dim() * b.dim() > 4 { 4 } else { 5 };
        let ab = tensor_product_algebra(&a, &b, &d, n).unwrap();
        let report = validate_algebra(&ab, n);
        println!(
            "{name}: dim {}, valid through arity {n}: {}",
            ab.dim(),
            report.passed()
        );
        match m4_witness(&ab) {
            Some(w) => println!("  {w}"),
            None => println!("  m4 = 0"),
        }
    }
}
