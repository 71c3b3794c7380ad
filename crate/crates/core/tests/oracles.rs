// Reference values computed without the tensor engine: knot-table Jones
// polynomials, the order-N skein recursion on 2-strand torus links, and the
// planar state sum from bracket-oracle.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vertexlink::axioms::check_axioms;
use vertexlink::braid::{parse_braid, BraidWord};
use vertexlink::invariants::{ambient_invariant, regular_invariant};
use vertexlink::models::{build_model, Sign, VertexModel};
use vertexlink::ring::{parse, RingElem};

fn p(text: &str) -> RingElem {
    parse(text).unwrap()
}

fn alpha(text: &str, strands: Option<usize>, m: &VertexModel) -> RingElem {
    ambient_invariant(&parse_braid(text, strands).unwrap(), m).unwrap().value
}

fn torus_word(k: i32) -> BraidWord {
    let letter = if k >= 0 { 1 } else { -1 };
    BraidWord::new(2, vec![letter; k.unsigned_abs() as usize]).unwrap()
}

#[test]
fn knot_table_values() {
    let m = build_model(2, Sign::Plus).unwrap();
    // right trefoil and figure eight, V(unknot) = 1
    assert_eq!(alpha("1 1 1", None, &m), p("t + t^3 - t^4"));
    assert_eq!(alpha("-1 -1 -1", None, &m), p("t^-1 + t^-3 - t^-4"));
    assert_eq!(alpha("1 -2 1 -2", None, &m), p("t^2 - t + 1 - t^-1 + t^-2"));
    // Hopf link: V = -t^{1/2} - t^{5/2}; two components flip the sign
    assert_eq!(alpha("1 1", None, &m), -p("-s^2 - s^10"));
    for n in 2..=4 {
        let m = build_model(n, Sign::Plus).unwrap();
        assert!(alpha("", Some(1), &m).is_one(), "unknot N={n}");
        assert!(alpha("1 2 3", None, &m).is_one(), "stabilized unknot N={n}");
    }
}

/// `α'(b^{N-1}) = Σ c_p α'(b^p)` with `p` from `N-2` down to `-1`, as `s`-polys.
fn skein_coefficients(n: usize, sign: Sign) -> Vec<RingElem> {
    let sg = RingElem::int(sign.value());
    let t = |x: &str| p(x);
    match n {
        2 => vec![&sg * &t("s^2 - s^6"), t("t^2")],
        3 => vec![&sg * &t("t - t^3 + t^4"), t("t^4 - t^5 + t^7"), -(&sg * &t("t^8"))],
        4 => vec![
            &sg * &t("s^6 - s^18 + s^26 - s^30"),
            t("t^6 - t^8 + t^9 + t^11 - t^12 + t^14"),
            -(&sg * &t("s^50 - s^54 + s^62 - s^74")),
            -t("t^20"),
        ],
        _ => unreachable!(),
    }
}

/// α' of the closures of `b^k`, k = -1..=top, from the recursion alone.
fn torus_by_skein(n: usize, sign: Sign, top: i32) -> Vec<RingElem> {
    let sg = RingElem::int(sign.value());
    let d: RingElem = (0..n as i64).map(|j| RingElem::q_pow(2 * j)).sum();
    let unlink = &(&sg * &RingElem::q_pow(-(n as i64 - 1))) * &d;
    let c = skein_coefficients(n, sign);
    // seeds: b^{-1} and b are unknots, b^0 the 2-unlink (enough for N <= 3)
    assert!(n <= 3);
    let mut vals = vec![RingElem::one(), unlink, RingElem::one()];
    while (vals.len() as i32) - 2 < top {
        let k = vals.len();
        let next: RingElem = c.iter().enumerate().map(|(i, ci)| ci * &vals[k - 1 - i]).sum();
        vals.push(next);
    }
    vals
}

#[test]
fn torus_links_follow_the_skein_recursion() {
    for n in [2, 3] {
        for sign in [Sign::Plus, Sign::Minus] {
            let m = build_model(n, sign).unwrap();
            let vals = torus_by_skein(n, sign, 6);
            assert!(vals.len() >= 8, "N={n}");
            for (idx, expected) in vals.iter().enumerate() {
                let k = idx as i32 - 1;
                let got = ambient_invariant(&torus_word(k), &m).unwrap().value;
                assert_eq!(&got, expected, "N={n} {sign:?} b^{k}");
            }
        }
    }
}

#[test]
fn n4_torus_links_beyond_the_seeds() {
    // N=4 needs α'(b^2); take it from the engine and check everything above
    for sign in [Sign::Plus, Sign::Minus] {
        let m = build_model(4, sign).unwrap();
        let c = skein_coefficients(4, sign);
        let mut vals: Vec<RingElem> = (-1..=2).map(|k| ambient_invariant(&torus_word(k), &m).unwrap().value).collect();
        assert!(vals[0].is_one() && vals[2].is_one());
        for k in 3..=6 {
            let top = vals.len();
            let next: RingElem = c.iter().enumerate().map(|(i, ci)| ci * &vals[top - 1 - i]).sum();
            assert_eq!(ambient_invariant(&torus_word(k), &m).unwrap().value, next, "{sign:?} b^{k}");
            vals.push(next);
        }
    }
}

fn sample_q() -> Vec<BigRational> {
    [(2, 1), (3, 1), (1, 2), (5, 3), (-7, 4)]
        .iter()
        .map(|&(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
        .collect()
}

/// `α' = (-1)^{n+e+1} V / d` with `V` from the state sum.
fn agrees_with_state_sum(w: &BraidWord, m: &VertexModel) -> bool {
    let a = ambient_invariant(w, m).unwrap().value;
    let v = bracket_oracle::normalized_bracket(w.strands(), w.letters());
    let sign = if (w.strands() as i64 + w.writhe() + 1) % 2 == 0 { 1 } else { -1 };
    let lhs = &(&a * &p("-q - q^-1")) * &RingElem::int(sign);
    sample_q().iter().all(|q| lhs.eval_rational(q).ok() == v.eval_q(q))
}

#[test]
fn n2_matches_state_sum_on_fixed_and_random_braids() {
    let m = build_model(2, Sign::Plus).unwrap();
    for text in ["1 1 1", "1 -2 1 -2", "1 1", "1 1 1 1 1", "1 1 2 -1 2", "1 2 1 2", "-1 2 -3 2 1"] {
        assert!(agrees_with_state_sum(&parse_braid(text, None).unwrap(), &m), "{text}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..25 {
        let strands = rng.gen_range(1..=4usize);
        let len = if strands == 1 { 0 } else { rng.gen_range(0..=7) };
        let letters = (0..len)
            .map(|_| rng.gen_range(1..strands as i32) * if rng.gen_bool(0.5) { 1 } else { -1 })
            .collect();
        let w = BraidWord::new(strands, letters).unwrap();
        assert!(agrees_with_state_sum(&w, &m), "{w}");
    }
}

#[test]
fn gauge_freedom_of_caps_and_cups() {
    for n in 2..=4 {
        let m = build_model(n, Sign::Plus).unwrap();
        let w = parse_braid("1 -2 1 -2", None).unwrap();
        let base = regular_invariant(&w, &m).value;
        for c in [RingElem::one(), RingElem::int(-1), RingElem::q_pow(1)] {
            let inv = c.unit_inverse().unwrap();
            let g = VertexModel::from_parts(
                n,
                m.sign,
                m.z.clone(),
                m.r.clone(),
                m.r_inv.clone(),
                m.m_u.scale(&inv),
                m.m_d.scale(&c),
                m.eigenvalues.clone(),
            );
            assert!(check_axioms(&g).passed(), "N={n} c={c}");
            assert_eq!(regular_invariant(&w, &g).value, base, "N={n} c={c}");
        }
    }
}

#[test]
fn sign_choice_changes_alpha_by_a_sign_only() {
    for n in 2..=4 {
        let plus = build_model(n, Sign::Plus).unwrap();
        let minus = build_model(n, Sign::Minus).unwrap();
        for text in ["1 1 1", "1 1", "1 -2 1 -2", "1 1 2 -1 2", "1 1 2 2"] {
            let (a, b) = (alpha(text, None, &plus), alpha(text, None, &minus));
            assert!(b == a || b == -&a, "N={n} {text}: {a} vs {b}");
        }
    }
}

#[test]
fn mirror_image_inverts_the_variable() {
    // α'(mirror) is α' with s -> s^-1
    let flip = |x: &RingElem| -> RingElem {
        let rational = x.rational_part().terms().map(|(e, c)| (-e, c.clone()));
        RingElem::from(vertexlink::ring::LaurentPoly::from_terms(rational))
    };
    for n in 2..=3 {
        let m = build_model(n, Sign::Plus).unwrap();
        for (w, mirror) in [("1 1 1", "-1 -1 -1"), ("1 1 2 -1 2", "-1 -1 -2 1 -2")] {
            assert_eq!(flip(&alpha(w, None, &m)), alpha(mirror, None, &m), "N={n} {w}");
        }
    }
}
