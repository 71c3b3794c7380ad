//! The N = 2 ambient invariant is the Jones polynomial.
//!
//!     cargo run --example jones_trefoil -- "1 -2 1 -2"

use vertexlink::braid::parse_braid;
use vertexlink::invariants::{ambient_invariant, regular_invariant};
use vertexlink::models::{build_model, Sign};
use vertexlink::ring::Variable;

fn main() -> vertexlink::error::Result<()> {
    let m = build_model(2, Sign::Plus)?;
    let extra: Vec<String> = std::env::args().skip(1).collect();
    let words: Vec<String> = if extra.is_empty() {
        ["1 1 1", "-1 -1 -1", "1 -2 1 -2", "1 1"].map(String::from).to_vec()
    } else {
        extra
    };
    for text in &words {
        let w = parse_braid(text, None)?;
        let bracket = regular_invariant(&w, &m);
        let alpha = ambient_invariant(&w, &m)?;
        println!("{w}");
        println!("  <L>  = {}", bracket.value.render(Variable::Q).text);
        println!("  α'   = {}", alpha.value.render(Variable::T).text);
    }
    Ok(())
}
