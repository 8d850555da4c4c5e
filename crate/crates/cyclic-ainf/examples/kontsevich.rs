//! Kontsevich classes of small algebras on small graphs.

use cyclic_ainf::algebra::*;
use cyclic_ainf::kontsevich::{kontsevich_value, verify_cocycle};
use cyclic_ainf::rational::format_q;
use cyclic_ainf::ribbon::*;

fn main() {
    let algebras = [
        ("ℚ", ground_field()),
        ("ℚ×ℚ", split_algebra()),
        ("even dual numbers", dual_numbers(false)),
        ("M(2|1)", matrix_superalgebra(2, 1)),
    ];
    let graphs = [("theta", theta()), ("dumbbell", dumbbell())];
    for (an, a) in &algebras {
        let vals: Vec<String> = graphs
            .iter()
            .map(|(gn, g)| {
                format!(
                    "{gn} {}",
                    format_q(&kontsevich_value(a, g, Twist::Untwisted, 1).unwrap())
                )
            })
            .collect();
        println!("{an}: {}", vals.join(", "));
    }
    let base = rose(&[(0, 3), (1, 4), (2, 5)]).unwrap();
    for (an, a) in &algebras[..3] {
        let r = verify_cocycle(a, &base, Twist::Untwisted).unwrap();
        println!(
            "{an} is a cocycle on G({base}): {} ({} generators)",
            r.passed(),
            r.checked
        );
    }
}
