//! Counting ones and zeros with the phase-kickback counter.
//!
//! ```text
//! cargo run --example count_ones -- 1101001
//! ```

use qabacus::abacus::{ancilla_width, bits_from_str, build_counter, simulate_count, CountTarget};

fn main() -> qabacus::Result<()> {
    let bits = std::env::args().nth(1).unwrap_or_else(|| "1101001".into());
    let input = bits_from_str(&bits)?;
    let n = input.len();

    let (ones, p) = simulate_count(&input, CountTarget::Ones, 1e-9)?;
    let (zeros, _) = simulate_count(&input, CountTarget::Zeros, 1e-9)?;
    println!("input {bits}: {ones} ones, {zeros} zeros (p = {p:.12})");

    let circuit = build_counter(n, CountTarget::Ones)?;
    let rotations = circuit.block_gate_counts(|name| name.starts_with("U^"));
    println!(
        "{n} input qubits, {} ancillas, {} controlled rotations, {} gates total",
        ancilla_width(n),
        rotations.controlled(),
        circuit.len()
    );

    // growth of the rotation count
    for n in [2, 4, 8, 16] {
        let c = build_counter(n, CountTarget::Ones)?;
        let k = c
            .block_gate_counts(|name| name.starts_with("U^"))
            .controlled();
        println!("n={n:>2}  m={}  rotations={k}", ancilla_width(n));
    }
    Ok(())
}
