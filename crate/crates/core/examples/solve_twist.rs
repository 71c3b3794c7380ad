//! Recover M_d (and Z) from the normalized R-matrix alone.

use vertexlink::axioms::{discover_z, is_proportional, solve_twist};
use vertexlink::models::{build_model, Sign};
use vertexlink::ring::Variable;

fn main() -> vertexlink::error::Result<()> {
    for n in 2..=4 {
        let m = build_model(n, Sign::Plus)?;
        let z_inv = m.z.unit_inverse().expect("Z is a unit");
        let r_hat = m.r.scale(&z_inv);
        let r_hat_inv = m.r_inv.scale(&m.z);

        let sol = solve_twist(&r_hat, &r_hat_inv, Some(&m.z))?;
        let same = is_proportional(&sol.m_d_basis[0], &m.m_d);
        println!("N={n}: nullspace dimension {}, proportional to the table: {same}", sol.uniqueness);

        let found = discover_z(&r_hat, &r_hat_inv)?;
        let squares: Vec<String> = found.confirmed_z_squared.iter().map(|z| z.render(Variable::Q).text).collect();
        println!("      Z^2 candidates that work: {}", squares.join(", "));
    }
    Ok(())
}
