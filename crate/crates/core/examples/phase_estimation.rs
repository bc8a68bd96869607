//! Outcome distribution of phase estimation for an arbitrary eigenphase,
//! simulated and from the closed form.

use qabacus::pea::{analytic_distribution, simulate_pea, PhaseTable};
use qabacus::Turn;

fn main() -> qabacus::Result<()> {
    let m = 4;
    for phi in [0.3125, 0.3, 1.0 / 3.0] {
        let turn = Turn::real(phi)?;
        let simulated = simulate_pea(&PhaseTable::new(vec![turn])?, m, 0)?;
        let analytic = analytic_distribution(turn, m)?;
        println!("phi = {phi:.6}, m = {m}");
        for (j, (s, a)) in simulated.iter().zip(&analytic).enumerate() {
            if *s > 1e-2 {
                let bar = "#".repeat((s * 40.0).round() as usize);
                println!("  {j:>2}  {s:.6}  {a:.6}  {bar}");
            }
        }
    }
    Ok(())
}
