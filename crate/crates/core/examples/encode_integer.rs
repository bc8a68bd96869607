//! Storing an integer as one phase per qubit and reading it back.

use qabacus::encoder::{
    build_encoder, decode_register, decode_signed, encode, encode_signed, phase_turns,
};

fn main() -> qabacus::Result<()> {
    let (d, n) = (5, 3);
    let turns = phase_turns(d, n)?;
    let shown: Vec<String> = turns.iter().map(ToString::to_string).collect();
    println!(
        "d={d} on {n} qubits, turns (high qubit first): {}",
        shown.join(" ")
    );
    print!("{}", build_encoder(d, n)?);

    let state = encode(d, n)?;
    println!("decoded {}", decode_register(&state, n, 1e-9)?);

    let mut wrong = 0;
    for n in 1..=8 {
        for d in 0..1u64 << n {
            if decode_register(&encode(d, n)?, n, 1e-9)? != d {
                wrong += 1;
            }
        }
    }
    println!("all values up to 8 qubits: {wrong} failures");

    let s = encode_signed(-3, 4)?;
    println!(
        "signed -3 on 4 qubits decodes to {}",
        decode_signed(&s, 4, 1e-9)?
    );
    Ok(())
}
