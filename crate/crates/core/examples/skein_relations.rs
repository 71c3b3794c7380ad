//! Order-N skein relations hold for random contexts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vertexlink::braid::BraidWord;
use vertexlink::invariants::skein_residual;
use vertexlink::models::{build_model, Sign};

fn main() -> vertexlink::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=4 {
        let m = build_model(n, Sign::Plus)?;
        let mut zero = 0;
        for _ in 0..10 {
            let strands = rng.gen_range(2..=3usize);
            let letters = (0..rng.gen_range(0..5))
                .map(|_| rng.gen_range(1..strands as i32) * if rng.gen_bool(0.5) { 1 } else { -1 })
                .collect();
            let ctx = BraidWord::new(strands, letters)?;
            let i = rng.gen_range(1..strands as i32);
            let r = skein_residual(&m, &ctx, i)?;
            if r.is_zero() {
                zero += 1;
            } else {
                println!("N={n} {ctx} at b_{i}: residual {r}");
            }
        }
        println!("N={n}: {zero}/10 residuals are exactly zero");
    }
    Ok(())
}
