//! Phase estimation of `U|j⟩ = e^{i2πj/4}|j⟩` on two qubits: every input is
//! read back exactly, so the estimator doubles as a QFT.

use qabacus::pea::{build_qft_pea, power_label};
use qabacus::StateVector;

fn main() -> qabacus::Result<()> {
    let n = 2;
    let circuit = build_qft_pea(n)?;
    let block = circuit
        .block_circuit(&power_label(0))
        .expect("first power block");

    println!("j  eigenvalue of U        readout");
    for j in 0..1usize << n {
        let marked = j | 1 << n;
        let kicked = StateVector::new_basis_state(2 * n, marked)?.run(&block)?;
        let lambda = kicked.amplitude(marked);
        let out = StateVector::new_basis_state(2 * n, j)?.run(&circuit)?;
        let readout = out.deterministic_register_outcome(&[2, 3], 1e-12)?;
        println!(
            "{j}  {:>+.3}{:>+.3}i          {readout}",
            lambda.re, lambda.im
        );
    }
    println!();
    print!("{circuit}");
    Ok(())
}
