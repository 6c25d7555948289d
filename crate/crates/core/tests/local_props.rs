use proptest::prelude::*;
use ramcc_core::algebra::{Poly, RationalFunction, Var};
use ramcc_core::corpus::corpus;
use ramcc_core::local::{order_valuation, residue, ExtensionSpec, LaurentSeries, OrderElement};
use std::sync::Arc;

fn spec(name: &str) -> Arc<ExtensionSpec> {
    corpus().into_iter().find(|e| e.name == name).unwrap().spec(None).unwrap()
}

/// Σ_i Σ_k c_(i,k) t^k h^i with polynomial coefficients in x.
fn element(s: &Arc<ExtensionSpec>, raw: &[(usize, i64, Vec<i64>)]) -> OrderElement {
    let mut coords = vec![LaurentSeries::zero(s.p(), s.precision()); s.degree()];
    for (i, k, c) in raw {
        let r = RationalFunction::from_poly(Poly::from_coeffs(s.p(), c), Var::X);
        let term = LaurentSeries::monomial(r, *k, s.precision());
        coords[i % s.degree()] = coords[i % s.degree()].add(&term);
    }
    OrderElement::from_coords(s, coords).unwrap()
}

fn raw() -> impl Strategy<Value = Vec<(usize, i64, Vec<i64>)>> {
    prop::collection::vec((0usize..4, 0i64..4, prop::collection::vec(-3i64..4, 1..3)), 1..5)
}

fn corpus_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["as-p2-x", "as-p3-x", "as-p3-xx1", "as-p5-x3x", "sq-p2"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn valuation_axioms(name in corpus_name(), a in raw(), b in raw()) {
        let s = spec(name);
        let (x, y) = (element(&s, &a), element(&s, &b));
        let (Ok(vx), Ok(vy)) = (order_valuation(&x), order_valuation(&y)) else { return Ok(()) };
        prop_assert_eq!(order_valuation(&x.mul(&y)).unwrap(), vx + vy);
        if let Ok(vs) = order_valuation(&x.add(&y)) {
            prop_assert!(vs >= vx.min(vy));
        }
    }

    #[test]
    fn residue_is_a_ring_map(name in corpus_name(), a in raw(), b in raw()) {
        let s = spec(name);
        let (x, y) = (element(&s, &a), element(&s, &b));
        let (Ok(rx), Ok(ry)) = (residue(&x), residue(&y)) else { return Ok(()) };
        prop_assert_eq!(residue(&x.mul(&y)).unwrap(), &rx * &ry);
        prop_assert_eq!(residue(&x.add(&y)).unwrap(), &rx + &ry);
        if let Ok(v) = order_valuation(&x) {
            prop_assert_eq!(rx.is_zero(), v >= 1);
        }
    }
}

#[test]
fn residues_of_powers_of_h_are_independent() {
    for e in corpus() {
        let s = e.spec(None).unwrap();
        assert_eq!(s.residue_rank(), s.degree(), "{}", e.name);
    }
}

#[test]
fn uniformizer_and_generator() {
    let s = spec("as-p3-x");
    let h = OrderElement::gen(&s);
    assert_eq!(order_valuation(&h).unwrap(), 0);
    assert_eq!(residue(&h).unwrap().var(), Var::u(1));
    let t = OrderElement::from_base(&s, LaurentSeries::t_power(3, 1, s.precision()));
    // ramification index one: t stays a uniformizer
    assert_eq!(order_valuation(&t).unwrap(), 1);
}
