use proptest::prelude::*;

use qabacus::circuit::{parse, serialize, Label};
use qabacus::{Circuit, Control, DyadicTurn, Gate, Polarity, Turn};

fn turn() -> impl Strategy<Value = Turn> {
    prop_oneof![
        4 => (any::<u64>(), 0u32..=62).prop_map(|(n, e)| Turn::Dyadic(DyadicTurn::new(n, e).unwrap())),
        1 => (0.0f64..1.0).prop_map(|v| Turn::real(v).unwrap()),
    ]
}

fn gate(n: usize) -> impl Strategy<Value = Gate> {
    let q = 0..n;
    prop_oneof![
        q.clone().prop_map(Gate::H),
        q.clone().prop_map(Gate::X),
        (q.clone(), 0..n.max(2) - 1).prop_map(move |(a, r)| {
            if n == 1 {
                Gate::H(0)
            } else {
                Gate::Swap(a, (a + 1 + r) % n)
            }
        }),
        (
            turn(),
            Just(()).prop_perturb(move |_, mut rng| {
                // random target plus a random subset of the other qubits as controls
                let target = rng.random_range(0..n);
                let mut controls = Vec::new();
                for c in (0..n).filter(|&c| c != target) {
                    if rng.random_bool(0.3) {
                        let polarity = if rng.random_bool(0.5) {
                            Polarity::Positive
                        } else {
                            Polarity::Negative
                        };
                        controls.push(Control { qubit: c, polarity });
                    }
                }
                (target, controls)
            })
        )
            .prop_map(|(t, (target, controls))| Gate::controlled_phase(t, controls, target)),
    ]
}

fn circuit() -> impl Strategy<Value = Circuit> {
    (1usize..=8)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(gate(n), 0..40),
                prop::collection::vec("[A-Za-z][A-Za-z0-9_^{}]{0,6}", 0..4),
            )
        })
        .prop_perturb(|(n, gates, names), mut rng| {
            let len = gates.len();
            let mut cuts: Vec<usize> = (0..names.len() * 2)
                .map(|_| rng.random_range(0..=len))
                .collect();
            cuts.sort_unstable();
            let labels = names
                .into_iter()
                .zip(cuts.chunks(2))
                .map(|(name, c)| Label {
                    name,
                    start: c[0],
                    end: c[1],
                })
                .filter(|l| l.start < l.end)
                .collect();
            Circuit::from_parts(n, gates, labels).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn serialize_parse_roundtrip(c in circuit()) {
        let text = serialize(&c);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(serialize(&back), text);
    }
}

#[test]
fn grammar_sample() {
    let text = "QUBITS 3\n# rotate\nH 2\nP 1/4 +2 -1 -> 0\nP 0/1 -> 1\nSWAP 0 2\nX 1\n";
    let c = parse(text).unwrap();
    assert_eq!(c.len(), 5);
    assert_eq!(
        c.gates()[1],
        Gate::controlled_phase(
            DyadicTurn::new(1, 2).unwrap(),
            vec![Control::positive(2), Control::negative(1)],
            0
        )
    );
    let reparsed = parse(&serialize(&c)).unwrap();
    assert_eq!(reparsed, c);
}

#[test]
fn malformed_lines_are_rejected() {
    for bad in [
        "QUBITS 2\nH 2\n",
        "QUBITS 2\nP 1/3 -> 0\n",
        "QUBITS 2\nP 1/2 +0 -> 0\n",
        "QUBITS 2\nSWAP 1 1\n",
        "QUBITS 2\nCNOT 0 1\n",
        "QUBITS 2\n#@ end\n",
        "QUBITS 2\n#@ begin a\nH 0\n",
    ] {
        assert!(parse(bad).is_err(), "{bad:?}");
    }
}
