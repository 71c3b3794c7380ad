//! TL generators from caps and cups, the N = 2 bracket and the N = 3
//! Dubrovnik identity.

use vertexlink::models::{build_model, Sign};
use vertexlink::ring::Variable;
use vertexlink::tlbracket::{bracket_decompose_n2, build_tl, curl_factors, dubrovnik_check_n3, tl_relations};

fn main() -> vertexlink::error::Result<()> {
    for n in 2..=4 {
        let m = build_model(n, Sign::Plus)?;
        let tl = build_tl(&m);
        let ok = tl_relations(&tl.e, &tl.k, n, 4).passed();
        let (pos, neg) = curl_factors(&m)?;
        println!(
            "N={n}: k = {}, TL on 4 strands {ok}, curls {} / {}",
            tl.k.render(Variable::Q).text,
            pos.render(Variable::Q).text,
            neg.render(Variable::Q).text
        );
    }
    let d = bracket_decompose_n2(&build_model(2, Sign::Plus)?)?;
    println!("N=2: R = ({}) 1 + ({}) e", d.a.render(Variable::Q).text, d.b.render(Variable::Q).text);
    let dub = dubrovnik_check_n3(&build_model(3, Sign::Plus)?);
    println!("N=3: R - R^-1 = (q^-2 - q^2)(1 - e): {}", dub.identity);
    Ok(())
}
