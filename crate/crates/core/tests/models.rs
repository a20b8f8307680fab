mod common;

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

use mixedab_core::linalg::canonical_form;
use mixedab_core::presented::{
    check_realization, example_b, realize_cyclic, realize_free_auto, truncate, BoundedHeight, ChainGen, Presentation,
    Relation,
};
use mixedab_core::valuated::{ulm_free, FreeValuated, ValuatedCyclic};

/// Disjoint union of two presentations, ids prefixed to keep them apart.
fn direct_sum(a: &Presentation, b: &Presentation) -> Presentation {
    let rename = |tag: &str, p: &Presentation| -> (Vec<String>, Vec<ChainGen>) {
        let name = |id: &str| format!("{tag}.{id}");
        let chains = p
            .chains
            .iter()
            .map(|c| ChainGen {
                id: name(&c.id),
                rel: Relation { coeffs: c.rel.coeffs.iter().map(|(g, v)| (name(g), v.clone())).collect() },
                ..c.clone()
            })
            .collect();
        (p.base.iter().map(|g| name(g)).collect(), chains)
    };
    let (mut base, mut chains) = rename("a", a);
    let (b_base, b_chains) = rename("b", b);
    base.extend(b_base);
    chains.extend(b_chains);
    Presentation { base, chains, manifest: a.manifest.clone() }
}

#[test]
fn ulm_is_additive_over_direct_sums() {
    let mut rng = common::rng(21);
    for _ in 0..40 {
        let (x, y) = (common::cyclic(&mut rng, 3), common::cyclic(&mut rng, 3));
        let (px, py) = (realize_cyclic(&x, &[], 8).unwrap(), realize_cyclic(&y, &[], 8).unwrap());
        let sum = direct_sum(&px, &py);
        for p in common::PRIMES {
            let f = |pres: &Presentation| truncate(pres, p, 12).unwrap().ulm(10).unwrap();
            let expected: Vec<u64> = f(&px).iter().zip(f(&py)).map(|(a, b)| a + b).collect();
            assert_eq!(f(&sum), expected, "p = {p}");
            // the sum realizes the rank-two coproduct
            let both = FreeValuated { coords: vec![x.clone(), y.clone()] };
            assert_eq!(f(&sum), ulm_free(&both, p, 10));
        }
    }
}

#[test]
fn example_b_torsion_is_cyclic_of_order_p() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        let m = truncate(&example_b(13), p, 6).unwrap();
        assert_eq!(canonical_form(m.relations()), vec![BigInt::from(p), BigInt::from(0)]);
        // |t|_q = 0 at every prime, the quotient height of [t] is positive
        let t = m.generator("t", BigInt::one()).unwrap();
        assert_eq!(m.height(&t).unwrap(), BoundedHeight::Exact(0));
        assert!(m.free_quotient_height(&t).unwrap().unwrap() >= 1);
    }
    let m = truncate(&example_b(2), 2, 4).unwrap();
    assert_eq!(m.columns(), ["t", "s_2"]);
    assert!(m.inf_marked().is_empty());
}

#[test]
fn jump_one_three_heights() {
    let x: ValuatedCyclic = serde_json::from_str(r#"{"tracks": {"2": {"v0": 0, "jumps": [[1, 3]]}}}"#).unwrap();
    let pres = realize_cyclic(&x, &[], 8).unwrap();
    let m = truncate(&pres, 2, 8).unwrap();
    let expect = [(1, BoundedHeight::Exact(0)), (2, BoundedHeight::Exact(3)), (4, BoundedHeight::Exact(4))];
    for (c, h) in expect {
        assert_eq!(m.height(&m.generator("x", c.into()).unwrap()).unwrap(), h, "{c}x");
    }
    // 2x = 8y, so 2x - 8y is zero, and x - 4y is the torsion element of order 2
    let word = [("x".to_string(), BigInt::one()), ("y_2_1_2".to_string(), BigInt::from(-2))].into();
    let e = m.element(&word).unwrap();
    assert_eq!(m.free_quotient_height(&e).unwrap(), None);
}

#[test]
fn realizations_are_deterministic() {
    let mut rng = common::rng(22);
    for _ in 0..20 {
        let x = common::cyclic(&mut rng, 3);
        assert_eq!(realize_cyclic(&x, &[11], 8).unwrap().to_json(), realize_cyclic(&x, &[11], 8).unwrap().to_json());
        let f = common::free(&mut rng, 3);
        assert_eq!(realize_free_auto(&f).unwrap().to_json(), realize_free_auto(&f).unwrap().to_json());
    }
}

#[test]
fn deeper_models_agree_below_the_margin() {
    let mut rng = common::rng(23);
    for _ in 0..30 {
        let f = common::free(&mut rng, 2);
        let pres = realize_free_auto(&f).unwrap();
        let p = common::PRIMES[rng.gen_range(0..4)];
        let a = check_realization(&f, &pres, p, 8).unwrap();
        let b = check_realization(&f, &pres, p, 14).unwrap();
        assert!(a.valuation_match && b.valuation_match);
        let (ma, mb) = (truncate(&pres, p, 8).unwrap(), truncate(&pres, p, 14).unwrap());
        assert_eq!(ma.ulm(6).unwrap(), mb.ulm(6).unwrap());
    }
}
