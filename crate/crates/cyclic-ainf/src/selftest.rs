//! The acceptance checks, shared by the `selftest` subcommand and the test suite.

use crate::algebra::{
    dual_numbers, ground_field, m3_algebra, tensor_product_algebra, validate_algebra,
    CyclicAInfAlgebra,
};
use crate::diagonal::{
    build_diagonal, canonicalize, freedom_dimension, verify_diagonal, Diagonal, Flags,
};
use crate::fixtures::*;
use crate::homotopy::{build_homotopy, dt_part, verify_homotopy};
use crate::io::{algebra_from_json, diagonal_from_json, graph_from_json, parse_json};
use crate::kontsevich::{kontsevich_value, verify_tensor_formula};
use crate::linalg::homology_rank;
use crate::rational::{format_q, q};
use crate::ribbon::{
    boundary, check_diagonal_chain_map, check_diagonal_independence, check_marking_law, check_phi,
    dumbbell, expansions_at, figure_eight, generate_subcomplex, oriented, rose, theta, ParityCase,
    RibbonGraph, Twist,
};
use crate::tree::{all_trees, boundary_chain, enumerate_trees, tree_boundary, PlanarTree};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub criterion: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(
        criterion: u32,
        name: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> Check {
        Check {
            criterion,
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!(
            "[{status}] criterion {}: {} ({})",
            self.criterion, self.name, self.detail
        )
    }
}

fn fixed_diagonal(flags: Flags, x: &crate::Q) -> Diagonal {
    let mut entries = BTreeMap::new();
    entries.insert(2, crate::diagonal::corolla_pair_c2());
    entries.insert(3, printed_delta3());
    entries.insert(4, printed_delta4(x));
    Diagonal {
        max_arity: 4,
        flags,
        entries,
    }
}

pub fn printed_formulas() -> Vec<Check> {
    let d3 = build_diagonal(3, Flags::CYCLIC).expect("arity 3 builds");
    let ok3 = d3.entries[&3] == printed_delta3();
    let built = build_diagonal(4, Flags::CYCLIC_COCOMMUTATIVE).expect("arity 4 builds");
    let printed = fixed_diagonal(Flags::CYCLIC_COCOMMUTATIVE, &q(-1, 10));
    let ok4 = canonicalize(&printed) == canonicalize(&built);
    let g11 = gamma_table(&q(-1, 10))[0][0].clone();
    vec![
        Check::new(
            1,
            "Δ(c3) equals the printed formula",
            ok3,
            format!("{} terms", d3.entries[&3].len()),
        ),
        Check::new(
            1,
            "cocommutative Δ(c4) equals the printed formula at x = -1/10",
            ok4 && g11.is_zero(),
            format!(
                "{} terms, γ11 = {}",
                built.entries[&4].len(),
                format_q(&g11)
            ),
        ),
    ]
}

pub fn freedom() -> Vec<Check> {
    [
        (4, Flags::CYCLIC, 1),
        (4, Flags::CYCLIC_COCOMMUTATIVE, 0),
        (5, Flags::CYCLIC, 5),
        (5, Flags::CYCLIC_COCOMMUTATIVE, 4),
    ]
    .into_iter()
    .map(|(n, f, want)| {
        let got = freedom_dimension(n, f);
        let name = if f.cocommutative {
            "cyclic+cocommutative"
        } else {
            "cyclic"
        };
        Check::new(
            2,
            format!("freedom({n}, {name}) = {want}"),
            got == want,
            format!("computed {got}"),
        )
    })
    .collect()
}

/// Number of binary planar trees with `n` leaves, by splitting at the root.
fn binary_trees(n: usize, memo: &mut BTreeMap<usize, u128>) -> u128 {
    if n == 1 {
        return 1;
    }
    if let Some(&v) = memo.get(&n) {
        return v;
    }
    let v = (1..n)
        .map(|k| binary_trees(k, memo) * binary_trees(n - k, memo))
        .sum();
    memo.insert(n, v);
    v
}

pub fn associahedra() -> Vec<Check> {
    let mut out = Vec::new();
    let mut squares = true;
    let mut homology = true;
    let mut counts = Vec::new();
    let mut memo = BTreeMap::new();
    let mut counts_ok = true;
    for n in 2..=7 {
        for t in all_trees(n) {
            if !boundary_chain(&tree_boundary(&t)).is_zero() {
                squares = false;
            }
        }
        let cells: Vec<Vec<PlanarTree>> = (0..=n - 2)
            .map(|d| enumerate_trees(n, d).unwrap())
            .collect();
        for d in 0..=n - 2 {
            let up = cells.get(d + 1).cloned().unwrap_or_default();
            let h = homology_rank(&cells[d], &up, tree_boundary);
            if h != usize::from(d == 0) {
                homology = false;
            }
        }
        counts.push(cells[0].len());
        counts_ok &= cells[0].len() as u128 == binary_trees(n, &mut memo);
    }
    out.push(Check::new(
        3,
        "∂² = 0 on C(K(n)), 2 ≤ n ≤ 7",
        squares,
        "all cells",
    ));
    out.push(Check::new(
        3,
        "K(n) has the homology of a point, 2 ≤ n ≤ 7",
        homology,
        "ranks 1, 0, 0, …",
    ));
    out.push(Check::new(
        3,
        "vertex counts match the recursive count",
        counts_ok && counts == [1, 2, 5, 14, 42, 132],
        format!("{counts:?}"),
    ));
    out
}

pub fn diagonal_at_scale() -> Vec<Check> {
    let d = build_diagonal(6, Flags::CYCLIC_COCOMMUTATIVE).expect("arity 6 builds");
    let reports = verify_diagonal(&d);
    let ok = reports.iter().all(|r| r.passed()) && reports.len() == 5;
    let sizes: Vec<usize> = (2..=6).map(|n| d.entries[&n].len()).collect();
    vec![Check::new(
        4,
        "cyclic+cocommutative Δ through arity 6 verifies",
        ok,
        format!("terms per arity {sizes:?}"),
    )]
}

pub fn homotopy() -> Vec<Check> {
    let a = fixed_diagonal(Flags::CYCLIC, &q(0, 1));
    let b = fixed_diagonal(Flags::CYCLIC, &q(-1, 10));
    let h = build_homotopy(&a, &b, 4).expect("homotopy builds");
    let reports = verify_homotopy(&h);
    let ends = reports.iter().all(|r| r.start && r.end);
    let chain = reports.iter().all(|r| r.chain_map);
    let cyclic = reports.iter().all(|r| r.cyclic);
    let dt = h.entries.get(&4).map(|x| dt_part(x).len()).unwrap_or(0);
    vec![
        Check::new(5, "homotopy endpoints", ends, "x = 0 to x = -1/10"),
        Check::new(
            5,
            "homotopy satisfies the chain-map identity",
            chain,
            format!("{dt} dt terms in arity 4"),
        ),
        Check::new(
            5,
            "homotopy is cyclically equivariant",
            cyclic,
            "arities 2..4",
        ),
    ]
}

/// The first input tuple on which `m_4` is nonzero.
pub fn m4_witness(alg: &CyclicAInfAlgebra) -> Option<String> {
    let ops = alg.ops.get(&4)?;
    ops.iter().find(|(_, v)| !v.is_zero()).map(|(ins, out)| {
        let names: Vec<&str> = ins.iter().map(|&i| alg.names[i].as_str()).collect();
        let terms: Vec<String> = out
            .iter()
            .map(|(i, c)| format!("{}·{}", format_q(c), alg.names[*i]))
            .collect();
        format!("m4({}) = {}", names.join(", "), terms.join(" + "))
    })
}

pub fn tensor_algebras() -> Vec<Check> {
    let d = build_diagonal(6, Flags::CYCLIC_COCOMMUTATIVE).expect("arity 6 builds");
    let mut out = Vec::new();
    let mut frobenius_witness = None;
    for (name, a) in [
        ("ℚ⊗ℚ", ground_field()),
        ("even dual ⊗ even dual", dual_numbers(false)),
        ("odd dual ⊗ odd dual", dual_numbers(true)),
    ] {
        let ab = tensor_product_algebra(&a, &a, &d, 6).expect("tensor product builds");
        let r = validate_algebra(&ab, 6);
        out.push(Check::new(
            6,
            format!("{name} is a cyclic A∞-algebra through arity 6"),
            r.passed(),
            r.failure.unwrap_or_else(|| "all identities".into()),
        ));
        if name != "ℚ⊗ℚ" && frobenius_witness.is_none() {
            frobenius_witness = m4_witness(&ab);
        }
    }
    out.push(Check::new(
        6,
        "m4 of a Frobenius⊗Frobenius product is nonzero",
        frobenius_witness.is_some(),
        frobenius_witness.unwrap_or_else(|| "m4 vanishes on every tuple".into()),
    ));
    let m3 = m3_algebra();
    let ab = tensor_product_algebra(&m3, &m3, &d, 4).expect("tensor product builds");
    let w = m4_witness(&ab);
    out.push(Check::new(
        6,
        "supplement: m4 of m3⊗m3 is nonzero",
        w.is_some() && validate_algebra(&ab, 4).passed(),
        w.unwrap_or_else(|| "m4 vanishes".into()),
    ));
    out
}

fn test_graphs() -> [(&'static str, RibbonGraph); 3] {
    [
        ("theta", theta()),
        ("dumbbell", dumbbell()),
        ("figure-eight", figure_eight()),
    ]
}

/// A six-valent rose whose twisted subcomplex is nonzero.
fn twisted_rose() -> RibbonGraph {
    rose(&[(0, 2), (1, 4), (3, 5)]).expect("valid rose")
}

pub fn graph_complexes() -> Vec<Check> {
    let mut out = Vec::new();
    for (name, g) in test_graphs() {
        for twist in [Twist::Untwisted, Twist::Twisted] {
            let mut squares = true;
            let mut counts = true;
            let mut law = Ok(0);
            let mut generators = 0;
            for gs in generate_subcomplex(&g, twist).into_values() {
                for h in gs {
                    generators += 1;
                    let x = oriented(&h, twist, 1);
                    squares &= boundary(&boundary(&x, twist), twist).is_zero();
                    for (v, val) in h.valencies().into_iter().enumerate() {
                        counts &= expansions_at(&h, twist, 1, v).len() == val * (val - 3) / 2;
                    }
                    if law.is_ok() {
                        law = check_marking_law(&h, twist).map(|k| k + law.unwrap_or(0));
                    }
                }
            }
            let tag = format!("{name}, {twist:?}");
            out.push(Check::new(
                7,
                format!("∂² = 0 on G({tag})"),
                squares,
                format!("{generators} generators"),
            ));
            out.push(Check::new(
                7,
                format!("expansion counts val(val-3)/2 on G({tag})"),
                counts,
                "every vertex",
            ));
            let phi = check_phi(&g, twist);
            out.push(Check::new(
                7,
                format!("φ is a chain isomorphism onto G({tag})"),
                phi.is_ok(),
                phi.map(|d| format!("dimension {d}")).unwrap_or_else(|e| e),
            ));
            out.push(Check::new(
                7,
                format!("A_Γ transformation law on G({tag})"),
                law.is_ok(),
                law.map(|k| format!("{k} expansion pairs"))
                    .unwrap_or_else(|e| e),
            ));
        }
    }
    out
}

pub fn graph_diagonal_checks() -> Vec<Check> {
    let d = build_diagonal(5, Flags::CYCLIC_COCOMMUTATIVE).expect("arity 5 builds");
    let mut out = Vec::new();
    let supplement = [("supplement: ", vec![twisted_rose()])];
    let main = [(
        "",
        test_graphs()
            .into_iter()
            .map(|(_, g)| g)
            .collect::<Vec<_>>(),
    )];
    for ((prefix, graphs), case) in main
        .into_iter()
        .chain(supplement)
        .flat_map(|x| ParityCase::ALL.map(|c| (x.clone(), c)))
    {
        let mut chain = Ok(0);
        let mut indep = Ok(0);
        for g in graphs {
            if chain.is_ok() {
                chain = check_diagonal_chain_map(&g, case, &d).map(|k| k + chain.unwrap_or(0));
            }
            let (src, _, _) = case.twists();
            for gs in generate_subcomplex(&g, src).into_values() {
                for h in gs {
                    if indep.is_ok() {
                        indep = check_diagonal_independence(&h, case, &d)
                            .map(|k| k + indep.unwrap_or(0));
                    }
                }
            }
        }
        out.push(Check::new(
            8,
            format!("{prefix}δ is a chain map ({case:?})"),
            chain.is_ok(),
            chain
                .map(|k| format!("{k} generators"))
                .unwrap_or_else(|e| e),
        ));
        out.push(Check::new(
            8,
            format!("{prefix}δ ignores vertex order and roots ({case:?})"),
            indep.is_ok(),
            indep.map(|k| format!("{k} markings")).unwrap_or_else(|e| e),
        ));
    }
    out
}

pub fn tensor_formula() -> Vec<Check> {
    let d = build_diagonal(5, Flags::CYCLIC_COCOMMUTATIVE).expect("arity 5 builds");
    let pairs = [
        ("ℚ⊗ℚ", ground_field(), ground_field()),
        (
            "even dual ⊗ even dual",
            dual_numbers(false),
            dual_numbers(false),
        ),
        ("ℚ ⊗ odd dual", ground_field(), dual_numbers(true)),
        ("even dual ⊗ m3", dual_numbers(false), m3_algebra()),
        (
            "odd dual ⊗ odd dual",
            dual_numbers(true),
            dual_numbers(true),
        ),
        ("m3 ⊗ odd dual", m3_algebra(), dual_numbers(true)),
    ];
    let mut out = Vec::new();
    let graphs = test_graphs().into_iter().map(|(n, g)| (n.to_string(), g));
    let supplement = [("supplement: rose".to_string(), twisted_rose())];
    for (name, g) in graphs.chain(supplement) {
        for (alg, a, b) in &pairs {
            if name.starts_with("supplement") && a.dim() * b.dim() > 4 {
                continue;
            }
            let case = ParityCase::from_parities(a.parity, b.parity);
            let (src, _, _) = case.twists();
            let mut checked = 0;
            let mut failure = None;
            for gs in generate_subcomplex(&g, src).into_values() {
                for h in gs {
                    match verify_tensor_formula(a, b, &d, &h) {
                        Ok(r) if r.equal => checked += 1,
                        Ok(r) => {
                            failure = failure.or(Some(format!(
                                "{h}: {} vs {}",
                                format_q(&r.lhs),
                                format_q(&r.rhs)
                            )))
                        }
                        Err(e) => failure = failure.or(Some(format!("{h}: {e}"))),
                    }
                }
            }
            out.push(Check::new(
                9,
                format!("tensor formula, {alg}, G({name})"),
                failure.is_none(),
                failure.unwrap_or_else(|| format!("{checked} graphs")),
            ));
        }
    }
    let q_theta =
        kontsevich_value(&ground_field(), &theta(), Twist::Untwisted, 1).expect("evaluates");
    let dual_theta =
        kontsevich_value(&dual_numbers(false), &theta(), Twist::Untwisted, 1).expect("evaluates");
    out.push(Check::new(
        9,
        "ℚ theta value has absolute value 1",
        q_theta == q(1, 1) || q_theta == q(-1, 1),
        format_q(&q_theta),
    ));
    out.push(Check::new(
        9,
        "even dual theta value is 0",
        dual_theta.is_zero(),
        format_q(&dual_theta),
    ));
    out
}

pub fn shipped_fixtures() -> Vec<Check> {
    let parsed = (|| -> crate::Result<bool> {
        let j = |s: &str| parse_json(s, "fixture");
        let d3 = diagonal_from_json(&j(DIAGONAL_3)?)?;
        let d4 = diagonal_from_json(&j(DIAGONAL_4)?)?;
        let mut ok =
            d3.entries[&3] == printed_delta3() && d4.entries[&4] == printed_delta4(&q(-1, 10));
        for text in [
            ALGEBRA_FIELD,
            ALGEBRA_DUAL_EVEN,
            ALGEBRA_DUAL_ODD,
            ALGEBRA_M3,
        ] {
            ok &= validate_algebra(&algebra_from_json(&j(text)?)?, 5).passed();
        }
        for text in [GRAPH_THETA, GRAPH_DUMBBELL, GRAPH_FIGURE_EIGHT] {
            graph_from_json(&j(text)?)?;
        }
        Ok(ok)
    })();
    vec![Check::new(
        0,
        "shipped fixtures parse and agree with the printed formulas",
        matches!(parsed, Ok(true)),
        match parsed {
            Ok(_) => "9 files".to_string(),
            Err(e) => e.to_string(),
        },
    )]
}

pub fn run_all() -> Vec<Check> {
    let mut out = shipped_fixtures();
    out.extend(printed_formulas());
    out.extend(freedom());
    out.extend(associahedra());
    out.extend(diagonal_at_scale());
    out.extend(homotopy());
    out.extend(tensor_algebras());
    out.extend(graph_complexes());
    out.extend(graph_diagonal_checks());
    out.extend(tensor_formula());
    out
}
