//! Circuits as text: serialize, edit, parse, simulate.

use qabacus::circuit::parse;
use qabacus::qft::build_qft;
use qabacus::StateVector;

fn main() -> qabacus::Result<()> {
    let qft = build_qft(3, true)?;
    let text = qft.to_string();
    print!("{text}");

    let hand_written = "\
QUBITS 2
# negative control: the quarter turn fires while qubit 1 is 0
H 1
P 1/2 +1 -> 0
H 0
P 1/4 -1 -> 0
";
    let c = parse(hand_written)?;
    println!("\nparsed {} gates, counts {}", c.len(), c.gate_counts());
    print!("lowered:\n{}", c.lower_negative_controls());
    let state = StateVector::new_basis_state(2, 0)?.run(&c)?;
    for (basis, p) in state.outcome_distribution() {
        println!("{} {p:.3}", basis.to_bitstring(2));
    }

    match parse("QUBITS 2\nP 1/3 -> 0\n") {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
