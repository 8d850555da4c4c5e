//! Cells of the associahedra K(2)..K(7) and their homology.

use cyclic_ainf::linalg::homology_rank;
use cyclic_ainf::tree::{enumerate_trees, kirkman_count, tree_boundary, PlanarTree};

fn main() {
    for n in 2..=7 {
        let cells: Vec<Vec<PlanarTree>> = (0..=n - 2)
            .map(|d| enumerate_trees(n, d).unwrap())
            .collect();
        let counts: Vec<usize> = cells.iter().map(Vec::len).collect();
        let betti: Vec<usize> = (0..=n - 2)
            .map(|d| {
                homology_rank(
                    &cells[d],
                    cells.get(d + 1).map(Vec::as_slice).unwrap_or(&[]),
                    tree_boundary,
                )
            })
            .collect();
        let kirkman: Vec<u128> = (0..=n - 2).map(|t| kirkman_count(n, n - 2 - t)).collect();
        println!("K({n}): cells by degree {counts:?} (Kirkman {kirkman:?}), homology {betti:?}");
    }
    let c4 = PlanarTree::corolla(4);
    println!("∂{c4} =");
    for (t, c) in tree_boundary(&c4).iter() {
        println!("  {c:>3} {t}");
    }
}
