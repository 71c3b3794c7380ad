//! Spin-j U_q sl(2) matrices, the element w and the vertex R-matrices.

use vertexlink::models::{build_model, Sign};
use vertexlink::ring::Variable;
use vertexlink::tensor::HalfInt;
use vertexlink::uqsl2::{build_rep, build_w, cs_checks, proportionality, rep_checks, w_transpose_factor};

fn main() -> vertexlink::error::Result<()> {
    let q = 1.5;
    for j in [HalfInt(1), HalfInt(2), HalfInt(3)] {
        let rep = build_rep(j, q)?;
        let w = build_w(j)?;
        let alg = rep_checks(&rep);
        let cs = cs_checks(&rep, &w)?;
        let p = proportionality(&rep)?;
        let m = build_model(rep.dim(), Sign::Plus)?;
        let factor = w_transpose_factor(&w, &m).map(|c| c.render(Variable::Q).text);
        println!("j={j} q={q}");
        println!("  algebra {:.1e}  casimir {:.1e}  cs1 {:.1e}  cs2 {:.1e}", alg.algebra, alg.casimir, cs.cs1, cs.cs2);
        println!("  P R / (R/Z) ratio {:.6}, spread {:.1e}, ignoring signs {:.1e}", p.ratio, p.spread, p.abs_spread);
        println!("  (π(w))^t = c M_d with c = {}", factor.unwrap_or_else(|| "none".into()));
    }
    Ok(())
}
