//! The spectral-parameter models and their u -> ∞ limit.

use vertexlink::models::{build_model, limit_check, spectral_checks, Sign, SpectralModel};

fn main() -> vertexlink::error::Result<()> {
    for (n, lambda) in [(2, 0.5), (3, 0.4)] {
        let sm = SpectralModel::new(n, lambda, 0.5)?;
        let rep = spectral_checks(&sm, 0.9, -1.7);
        println!("N={n} λ={lambda}: {rep:?}");
        let m = build_model(n, Sign::Plus)?;
        for u in [4.0, 8.0, 15.0] {
            let lim = limit_check(&sm, &m, u)?;
            println!("  u={u:>4}: deviation from R {:.3e}", lim.deviation);
        }
    }
    Ok(())
}
