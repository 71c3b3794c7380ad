// Randomized properties of the ring, the tensor layer and the braid
// representation.

use proptest::prelude::*;
use vertexlink::braid::{represent, BraidWord};
use vertexlink::models::{build_model, Sign};
use vertexlink::ring::{parse, LaurentPoly, RingElem, Variable};
use vertexlink::tensor::SqMatrix;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-8i64..=8, -5i64..=5), 0..5)
        .prop_map(|terms| LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| (e, c.into()))))
}

fn elem() -> impl Strategy<Value = RingElem> {
    (laurent(), laurent(), any::<bool>())
        .prop_map(|(a, b, rad)| if rad { RingElem::new(a, b) } else { RingElem::from(a) })
}

fn small_matrix(dim: usize) -> impl Strategy<Value = SqMatrix> {
    prop::collection::vec((0..dim, 0..dim, -3i64..=3, -4i64..=4), 0..6).prop_map(move |es| {
        let mut m = SqMatrix::zero(dim);
        for (i, j, c, e) in es {
            m.add_at(i, j, &RingElem::mono(c, e));
        }
        m
    })
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &RingElem::one(), a.clone());
    }

    #[test]
    fn radical_stays_closed(a in elem(), b in elem()) {
        // r² lands back in the rational part
        let r2 = &RingElem::rad() * &RingElem::rad();
        prop_assert!(!r2.has_radical());
        prop_assert!(!(&a * &a.conjugate()).has_radical());
        prop_assert_eq!(RingElem::from(a.norm()), &a * &a.conjugate());
        let p = &a * &b;
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!(p.exact_div(&b).unwrap(), a);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in elem(), b in elem(), s in 0.7f64..1.4) {
        let (x, y) = (a.eval_at_s(s), b.eval_at_s(s));
        prop_assert!(close((&a * &b).eval_at_s(s), x * y));
        prop_assert!(close((&a + &b).eval_at_s(s), x + y));
    }

    #[test]
    fn render_parse_round_trip(a in elem()) {
        for var in [Variable::S, Variable::Q, Variable::T] {
            let text = a.render(var).text;
            prop_assert_eq!(parse(&text).unwrap(), a.clone(), "{}", text);
        }
    }

    #[test]
    fn kron_mixed_product(a in small_matrix(2), b in small_matrix(3), c in small_matrix(2), d in small_matrix(3)) {
        prop_assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    }

    #[test]
    fn kron_associative(a in small_matrix(2), b in small_matrix(2), c in small_matrix(3)) {
        prop_assert_eq!(a.kron(&b).kron(&c), a.kron(&b.kron(&c)));
    }

    #[test]
    fn trace_commutes(a in small_matrix(4), b in small_matrix(4)) {
        prop_assert_eq!(a.mul(&b).trace(), b.mul(&a).trace());
        prop_assert_eq!(a.trace_of_product(&b).unwrap(), a.mul(&b).trace());
    }

    #[test]
    fn matrix_json_round_trip(a in small_matrix(4)) {
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let back = SqMatrix::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }
}

fn rep(n: usize, strands: usize, letters: &[i32]) -> SqMatrix {
    let m = build_model(n, Sign::Plus).unwrap();
    represent(&BraidWord::new(strands, letters.to_vec()).unwrap(), &m)
}

#[test]
fn braid_group_relations_hold_in_every_model() {
    for n in 2..=4 {
        assert_eq!(rep(n, 3, &[1, 2, 1]), rep(n, 3, &[2, 1, 2]), "N={n}");
        assert!(rep(n, 3, &[1, -1]).is_identity());
        assert!(rep(n, 3, &[-2, 2]).is_identity());
    }
    for n in 2..=3 {
        assert_eq!(rep(n, 4, &[1, 3]), rep(n, 4, &[3, 1]), "N={n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // represent is a homomorphism on B_3
    #[test]
    fn representation_is_multiplicative(
        n in 2usize..=3,
        a in prop::collection::vec(prop::sample::select(vec![1, 2, -1, -2]), 0..4),
        b in prop::collection::vec(prop::sample::select(vec![1, 2, -1, -2]), 0..4),
    ) {
        let joined: Vec<i32> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(rep(n, 3, &joined), rep(n, 3, &a).mul(&rep(n, 3, &b)));
    }
}
