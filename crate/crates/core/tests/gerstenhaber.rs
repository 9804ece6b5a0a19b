use algeo::gerstenhaber::{BasisRef, GerstenhaberCarrier};
use algeo::{comp, Cochain, FieldSpec};

fn refs(c: &GerstenhaberCarrier, degree: i64) -> Vec<BasisRef> {
    (0..c.count(degree))
        .map(|index| BasisRef { degree, index })
        .collect()
}

#[test]
fn truncated_carrier_at_arity_four() {
    let c = GerstenhaberCarrier::new(2, 4).unwrap();
    assert_eq!(c.dimension(), 62);
    assert!(c.torsion_vanishes().unwrap());
    for r in refs(&c, 0) {
        assert_eq!(c.function_witness(&c.element(r).unwrap(), r).unwrap(), None);
    }
    for r in refs(&c, 1) {
        let w = c
            .function_witness(&c.element(r).unwrap(), r)
            .unwrap()
            .unwrap_or_else(|| panic!("no witness for {r:?}"));
        assert!(c.recheck_function_witness(&w).unwrap());
    }
    for a in refs(&c, 0) {
        for b in refs(&c, 0) {
            let (f, g) = (c.element(a).unwrap(), c.element(b).unwrap());
            assert!(c.composition_matches(&f, &g).unwrap());
        }
    }
}

#[test]
fn witnesses_fail_by_hand() {
    // (f∘x)∘y ≠ f∘(x∘y) recomputed straight from comp.
    let c = GerstenhaberCarrier::new(2, 4).unwrap();
    let r = BasisRef {
        degree: 1,
        index: 3,
    };
    let w = c
        .function_witness(&c.element(r).unwrap(), r)
        .unwrap()
        .unwrap();
    let (f, x, y) = (
        c.element(w.f).unwrap(),
        c.element(w.x).unwrap(),
        c.element(w.y).unwrap(),
    );
    let lhs = comp(&comp(&f, &x).unwrap(), &y);
    let rhs = comp(&x, &y).and_then(|xy| comp(&f, &xy));
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => assert_ne!(l, r),
        (Ok(l), Err(_)) | (Err(_), Ok(l)) => assert!(!l.is_zero()),
        (Err(_), Err(_)) => panic!("both sides vanish below degree -1"),
    }
}

#[test]
fn the_carrier_is_not_regular() {
    let c = GerstenhaberCarrier::new(2, 3).unwrap();
    let w = c
        .regularity_witness()
        .unwrap()
        .expect("associator is not A-linear");
    assert!(w.slot == 1 || w.slot == 2);
}

#[test]
fn works_over_a_prime_field() {
    let f7 = FieldSpec::prime(7).unwrap();
    let c = GerstenhaberCarrier::over(f7, 2, 3).unwrap();
    assert!(c.torsion_vanishes().unwrap());
    let id = Cochain::identity(c.module());
    assert!(c.composition_matches(&id, &id).unwrap());
}
