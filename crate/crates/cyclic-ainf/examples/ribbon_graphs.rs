//! The small ribbon graphs and the complexes they generate.

use cyclic_ainf::ribbon::*;

fn main() {
    let graphs = [
        ("theta", theta()),
        ("dumbbell", dumbbell()),
        ("figure-eight", figure_eight()),
        ("torus figure-eight", torus_figure_eight()),
        ("rose", rose(&[(0, 2), (1, 4), (3, 5)]).unwrap()),
    ];
    for (name, g) in &graphs {
        let (genus, bdry) = g.genus_and_boundaries();
        println!(
            "{name}: {g}  genus {genus}, {bdry} boundary cycles, degree {}",
            g.degree()
        );
        for twist in [Twist::Untwisted, Twist::Twisted] {
            let complex = generate_subcomplex(g, twist);
            let dims: Vec<(usize, usize)> = complex.iter().map(|(d, gs)| (*d, gs.len())).collect();
            println!("  {twist:?}: dimensions by degree {dims:?}");
        }
    }
    let g = figure_eight();
    println!("∂ figure-eight:");
    for (h, c) in graph_boundary(&g, Twist::Untwisted).iter() {
        println!("  {c:>3} {h}");
    }
}
