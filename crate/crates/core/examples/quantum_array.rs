//! A four-entry quantum array: create, add 1 at even indices, read back.

use qabacus::qarray::{
    build_create, build_create_arithmetic, build_update_add, read_all, ArrayContents, ArrayLayout,
    IndexPredicate,
};
use qabacus::StateVector;

fn main() -> qabacus::Result<()> {
    let layout = ArrayLayout::new(2, 3)?;
    let mut circuit = build_create(&ArrayContents::new(vec![1, 2, 0, 5]), layout)?;
    let zero = StateVector::new_basis_state(layout.num_qubits(), 0)?;

    let before = read_all(&zero.clone().run(&circuit)?, layout, 1e-9)?;
    println!(
        "created   {:?}  gates{}",
        before.values(),
        circuit.gate_counts()
    );

    let update = build_update_add(1, IndexPredicate::even(), layout)?;
    circuit.append(&update)?;
    let after = read_all(&zero.clone().run(&circuit)?, layout, 1e-9)?;
    println!(
        "+1 even   {:?}  gates{}",
        after.values(),
        update.gate_counts()
    );

    let wrap = build_update_add(4, IndexPredicate::all(), layout)?;
    circuit.append(&wrap)?;
    let wrapped = read_all(&zero.clone().run(&circuit)?, layout, 1e-9)?;
    println!("+4 all    {:?}  (mod 8)", wrapped.values());

    let series = build_create_arithmetic(1, 2, layout)?;
    let odd = read_all(&zero.run(&series)?, layout, 1e-9)?;
    println!(
        "1 + 2j    {:?}  gates{}",
        odd.values(),
        series.gate_counts()
    );
    Ok(())
}
