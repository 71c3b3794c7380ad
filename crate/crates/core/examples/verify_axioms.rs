//! Every axiom and Markov condition for the three models, both signs.

use vertexlink::axioms::{check_axioms, check_markov_conditions};
use vertexlink::models::{build_model, Sign};

fn main() -> vertexlink::error::Result<()> {
    for n in 2..=4 {
        for sign in [Sign::Plus, Sign::Minus] {
            let m = build_model(n, sign)?;
            let axioms = check_axioms(&m);
            let markov = check_markov_conditions(&m);
            let names: Vec<String> = axioms
                .checks
                .iter()
                .chain(&markov.checks)
                .map(|c| format!("{}{}", c.name, if c.passed { "" } else { "(FAIL)" }))
                .collect();
            println!("N={n} {sign:?}: {}", names.join(" "));
        }
    }
    Ok(())
}
