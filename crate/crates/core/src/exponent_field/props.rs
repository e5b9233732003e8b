use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::numeric::mp::{to_f64, MpContext};

fn poly() -> impl Strategy<Value = LambdaPoly> {
    prop::collection::vec(((0u32..=2, 0u32..=2), -4i64..=4), 0..4).prop_map(|terms| {
        LambdaPoly::from_terms(
            terms.into_iter().map(|((a, b), c)| (Mono::from_exponents(vec![a, b]), BigInt::from(c))),
        )
    })
}

fn scalar() -> impl Strategy<Value = ExponentScalar> {
    (poly(), poly().prop_filter("nonzero denominator", |d| !d.is_zero()))
        .prop_map(|(n, d)| ExponentScalar::new(n, d).expect("denominator is nonzero"))
}

fn emb() -> EmbeddingSpec {
    EmbeddingSpec::new(vec!["sqrt(2)".into(), "3/7".into()], 128).unwrap()
}

/// Value at the embedding, or `None` when the denominator is close to zero.
fn value(a: &ExponentScalar) -> Option<f64> {
    let den = ExponentScalar::from_poly(a.denom().clone());
    let d = to_f64(&numeric_embed(&den, &emb()).ok()?);
    (d.abs() > 1e-3).then(|| to_f64(&numeric_embed(a, &emb()).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonical_form_is_idempotent(a in scalar()) {
        let c = a.canonical();
        prop_assert_eq!(c.canonical(), c.clone());
        prop_assert_eq!(c, a);
    }

    #[test]
    fn field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
            prop_assert_eq!(&b * &b.inverse().unwrap(), ExponentScalar::one());
        }
    }

    #[test]
    fn qbasis_reconstructs_inputs(xs in prop::collection::vec(scalar(), 1..6)) {
        let qb = qbasis_decompose(&xs);
        prop_assert_eq!(qb.reconstruct(), xs.clone());
        prop_assert!(qb.dim() <= xs.len());
        // the basis elements are Q-independent: their own decomposition has full rank
        prop_assert_eq!(qbasis_decompose(&qb.basis).dim(), qb.dim());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn embedding_is_a_homomorphism(a in scalar(), b in scalar()) {
        let (Some(va), Some(vb)) = (value(&a), value(&b)) else { return Ok(()) };
        let ctx = MpContext::new(192);
        let (ea, eb) = (numeric_embed(&a, &emb()).unwrap(), numeric_embed(&b, &emb()).unwrap());
        let scale = 1.0 + va.abs().max(vb.abs());
        let tol = 1e-25 * scale * scale;
        for (op, exact) in [(ArithOp::Add, ctx.add(&ea, &eb)), (ArithOp::Sub, ctx.sub(&ea, &eb)), (ArithOp::Mul, ctx.mul(&ea, &eb))] {
            let r = scalar_arith(&a, &b, op).unwrap();
            if let Some(vr) = value(&r) {
                let er = numeric_embed(&r, &emb()).unwrap();
                let diff = to_f64(&ctx.sub(&er, &exact)).abs();
                prop_assert!(diff <= tol * (1.0 + vr.abs()), "{:?}: {} vs {}", op, vr, to_f64(&exact));
            }
        }
        if vb.abs() > 1e-3 {
            let r = scalar_arith(&a, &b, ArithOp::Div).unwrap();
            if let Some(vr) = value(&r) {
                let er = numeric_embed(&r, &emb()).unwrap();
                let diff = to_f64(&ctx.sub(&er, &ctx.div(&ea, &eb))).abs();
                prop_assert!(diff <= tol * 1e3 * (1.0 + vr.abs()));
            }
        }
    }
}
