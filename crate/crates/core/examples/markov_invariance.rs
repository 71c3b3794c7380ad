//! Random conjugations and stabilizations never change α'.

use vertexlink::braid::parse_braid;
use vertexlink::invariants::{compute_constants, invariance_suite, markov_tau};
use vertexlink::models::{build_model, Sign};

fn main() -> vertexlink::error::Result<()> {
    for n in 2..=3 {
        let m = build_model(n, Sign::Plus)?;
        let c = compute_constants(&m)?;
        let tau = markov_tau(&m);
        println!("N={n}: tau = ({}) / ({}), closure of one crossing {}", tau.numerator, tau.denominator, c.closure_pos);
        for base in ["1 1 1", "1 -2 1 -2"] {
            let rep = invariance_suite(&parse_braid(base, None)?, &m, 20, 5, 5)?;
            println!(
                "  [{base}] {} moves, {} stabilizations checked, {}",
                rep.moves_applied,
                rep.stabilizations_checked,
                if rep.passed() { "invariant" } else { "CHANGED" }
            );
        }
    }
    Ok(())
}
