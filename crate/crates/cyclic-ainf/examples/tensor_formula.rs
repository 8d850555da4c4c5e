//! c_{A⊗B}(G) against (c_A ⊗ c_B)(δG) on the figure-eight complex.

use cyclic_ainf::algebra::{dual_numbers, ground_field, split_algebra};
use cyclic_ainf::diagonal::{build_diagonal, Flags};
use cyclic_ainf::kontsevich::verify_tensor_formula;
use cyclic_ainf::rational::format_q;
use cyclic_ainf::ribbon::{figure_eight, generate_subcomplex, Twist};

fn main() {
    let d = build_diagonal(4, Flags::CYCLIC_COCOMMUTATIVE).unwrap();
    let pairs = [
        ("ℚ⊗ℚ", ground_field(), ground_field()),
        ("(ℚ×ℚ)⊗(ℚ×ℚ)", split_algebra(), split_algebra()),
        ("dual⊗dual", dual_numbers(false), dual_numbers(false)),
    ];
    for (name, a, b) in &pairs {
        println!("{name}");
        for gs in generate_subcomplex(&figure_eight(), Twist::Untwisted).into_values() {
            for g in gs {
                let r = verify_tensor_formula(a, b, &d, &g).unwrap();
                println!(
                    "  {g}: lhs {} rhs {} over {} terms",
                    format_q(&r.lhs),
                    format_q(&r.rhs),
                    r.terms
                );
            }
        }
    }
}
