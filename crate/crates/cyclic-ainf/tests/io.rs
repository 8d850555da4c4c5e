use cyclic_ainf::algebra::*;
use cyclic_ainf::diagonal::{build_diagonal, Flags};
use cyclic_ainf::fixtures::*;
use cyclic_ainf::homotopy::build_homotopy;
use cyclic_ainf::io::*;
use cyclic_ainf::rational::{format_q, parse_q, q};
use cyclic_ainf::ribbon::*;
use cyclic_ainf::Error;
use proptest::prelude::*;
use proptest::sample::Index;
use serde_json::json;

fn message(e: Error) -> String {
    e.to_string()
}

#[test]
fn homotopy_round_trips() {
    let a = diagonal_from_json(&parse_json(DIAGONAL_4, "d4").unwrap()).unwrap();
    let mut b = a.clone();
    b.flags = Flags::CYCLIC;
    b.entries.insert(4, printed_delta4(&q(0, 1)));
    let mut a = a;
    a.flags = Flags::CYCLIC;
    let h = build_homotopy(&a, &b, 4).unwrap();
    let v = homotopy_to_json(&h);
    assert_eq!(homotopy_from_json(&v).unwrap(), h);
    let text = to_pretty(&v);
    assert_eq!(
        to_pretty(
            &homotopy_from_json(&parse_json(&text, "h").unwrap())
                .map(|h| homotopy_to_json(&h))
                .unwrap()
        ),
        text
    );
}

#[test]
fn written_files_are_stable() {
    let d = build_diagonal(4, Flags::CYCLIC_COCOMMUTATIVE).unwrap();
    assert_eq!(to_pretty(&diagonal_to_json(&d)), DIAGONAL_4);
    let dir = std::env::temp_dir().join(format!("cyclic-ainf-io-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("m3.json");
    write_json(&p, &algebra_to_json(&m3_algebra())).unwrap();
    assert_eq!(std::fs::read_to_string(&p).unwrap(), ALGEBRA_M3);
    assert_eq!(
        algebra_from_json(&read_json(&p).unwrap()).unwrap(),
        m3_algebra()
    );
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn schema_errors_carry_locations() {
    let bad_tree = json!({"max_arity": 2, "flags": {}, "entries": {"2": [{"left": "(*", "right": "(**)", "coeff": "1"}]}});
    assert!(
        message(diagonal_from_json(&bad_tree).unwrap_err()).contains("diagonal.entries.2[0].left")
    );
    let wrong_arity = json!({"max_arity": 3, "flags": {}, "entries": {"2": [], "3": [{"left": "(**)", "right": "(**)", "coeff": "1"}]}});
    assert!(message(diagonal_from_json(&wrong_arity).unwrap_err()).contains("diagonal.entries.3"));
    let mut alg = algebra_to_json(&dual_numbers(false));
    alg["ops"]["2"][0]["in"][1] = json!("y");
    assert!(message(algebra_from_json(&alg).unwrap_err()).contains("algebra.ops.2[0].in"));
    let mut g = graph_to_json(&OrientedGraph {
        graph: theta(),
        twist: Twist::Untwisted,
        sign: 1,
    });
    g["orientation"]["sign"] = json!(2);
    assert!(message(graph_from_json(&g).unwrap_err()).contains("graph.orientation.sign"));
    g["orientation"]["sign"] = json!(1);
    g["iota"][0] = json!([0, 1]);
    assert!(graph_from_json(&g).is_err());
    assert!(
        message(parse_json("{\"a\": }", "input.json").unwrap_err()).contains("input.json: line 1")
    );
}

#[test]
fn reordering_orientation_symbols_flips_the_sign() {
    let mut g = graph_to_json(&OrientedGraph {
        graph: theta(),
        twist: Twist::Untwisted,
        sign: 1,
    });
    let order = g["orientation"]["order"].as_array().unwrap().clone();
    let mut swapped = order.clone();
    swapped.swap(2, 3);
    g["orientation"]["order"] = json!(swapped);
    let o = graph_from_json(&g).unwrap();
    assert_eq!(o.sign, -1);
}

fn arb_q() -> impl Strategy<Value = cyclic_ainf::Q> {
    (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| q(n, d))
}

proptest! {
    #[test]
    fn rationals_round_trip(x in arb_q()) {
        prop_assert_eq!(parse_q(&format_q(&x)), Some(x));
    }

    #[test]
    fn graphs_round_trip(i in any::<Index>(), twisted in any::<bool>(), negative in any::<bool>()) {
        let r = rose(&[(0, 2), (1, 4), (3, 5)]).unwrap();
        let mut gs: Vec<RibbonGraph> = generate_subcomplex(&r, Twist::Untwisted).into_values().flatten().collect();
        gs.extend([theta(), dumbbell(), figure_eight()]);
        let g = gs[i.index(gs.len())].clone();
        let o = OrientedGraph { graph: g, twist: if twisted { Twist::Twisted } else { Twist::Untwisted }, sign: if negative { -1 } else { 1 } };
        let v = graph_to_json(&o);
        prop_assert_eq!(graph_from_json(&v).unwrap(), o);
        prop_assert_eq!(graph_to_json(&graph_from_json(&v).unwrap()), v);
    }

    #[test]
    fn algebras_round_trip(i in any::<Index>(), j in any::<Index>()) {
        let zoo = [ground_field(), dual_numbers(false), dual_numbers(true), split_algebra(), odd_clifford(), m3_algebra()];
        let d = build_diagonal(3, Flags::CYCLIC).unwrap();
        let ab = tensor_product_algebra(&zoo[i.index(zoo.len())], &zoo[j.index(zoo.len())], &d, 3).unwrap();
        let v = algebra_to_json(&ab);
        prop_assert_eq!(algebra_to_json(&algebra_from_json(&v).unwrap()), v);
    }
}
