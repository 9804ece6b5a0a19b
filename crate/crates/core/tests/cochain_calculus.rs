mod common;

use algeo::cochain::permutations;
use algeo::random;
use algeo::{
    alt_cochain, associator3, bracket, comp, comp_i, insert_pair, split_mu, Cochain, Error, Module,
};
use common::{f7, naive_bracket, naive_comp, naive_comp_i, q};
use proptest::prelude::*;

fn modules() -> Vec<Module> {
    let mut out = Vec::new();
    for field in [q(), f7()] {
        for n in 1..=3 {
            out.push(Module::new(field, n));
        }
    }
    out
}

#[test]
fn single_insertion_matches_the_naive_evaluator() {
    for module in modules() {
        let mut rng = random::rng(module.dim as u64);
        for p in 0..=2 {
            for qd in -1..=2 {
                if module.dim == 3 && p + qd > 3 {
                    continue;
                }
                let f = random::cochain(module, p, &mut rng).unwrap();
                let g = random::cochain(module, qd, &mut rng).unwrap();
                for i in 1..=f.arity() {
                    assert_eq!(
                        comp_i(&f, &g, i).unwrap(),
                        naive_comp_i(&f, &g, i),
                        "{module:?} p={p} q={qd} i={i}"
                    );
                }
            }
        }
    }
}

#[test]
fn comp_and_bracket_match_the_naive_evaluator() {
    for module in modules() {
        let mut rng = random::rng(100 + module.dim as u64);
        for p in -1..=2 {
            for qd in -1..=2 {
                if p + qd < -1 || (module.dim == 3 && p + qd > 3) {
                    continue;
                }
                let f = random::cochain(module, p, &mut rng).unwrap();
                let g = random::cochain(module, qd, &mut rng).unwrap();
                assert_eq!(comp(&f, &g).unwrap(), naive_comp(&f, &g));
                assert_eq!(bracket(&f, &g).unwrap(), naive_bracket(&f, &g));
            }
        }
    }
}

#[test]
fn hand_computed_insertions() {
    let m = Module::new(q(), 1);
    let one = |d: i64| Cochain::from_scalars(m, d, vec![q().one()]).unwrap();
    // On a line comp(f, g) = Σ_i (−1)^{(i−1)q} times the unit cochain.
    assert!(comp(&one(1), &one(1)).unwrap().is_zero());
    assert_eq!(comp(&one(1), &one(2)).unwrap(), one(3).scale_int(2));
    assert_eq!(comp(&one(2), &one(1)).unwrap(), one(3));
    assert!(bracket(&one(1), &one(1)).unwrap().is_zero());
    assert_eq!(bracket(&one(1), &one(2)).unwrap(), one(3));
    assert!(comp(&one(-1), &one(1)).unwrap().is_zero());
    assert!(comp(&one(1), &one(-1)).unwrap().is_zero());
    assert_eq!(comp(&one(2), &one(-1)).unwrap(), one(1));
}

#[test]
fn double_insertion_is_two_nested_single_insertions() {
    let m = Module::new(f7(), 2);
    let mut rng = random::rng(7);
    let f = random::cochain(m, 2, &mut rng).unwrap();
    let g = random::cochain(m, 1, &mut rng).unwrap();
    let h = random::cochain(m, 0, &mut rng).unwrap();
    // Slots i < j: insert h first at its shifted position.
    let lhs = insert_pair(&f, &g, &h, 1, 3).unwrap();
    let rhs = comp_i(&comp_i(&f, &g, 1).unwrap(), &h, 3 + g.degree() as usize).unwrap();
    assert_eq!(lhs, rhs);
    let lhs = insert_pair(&f, &g, &h, 3, 1).unwrap();
    let rhs = comp_i(&comp_i(&f, &g, 3).unwrap(), &h, 1).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn split_and_alternation() {
    let m = Module::new(q(), 2);
    let mut rng = random::rng(3);
    let mu = random::cochain(m, 1, &mut rng).unwrap();
    let (plus, minus) = split_mu(&mu).unwrap();
    assert_eq!(plus.add(&minus).unwrap(), mu.scale_int(2));
    assert_eq!(plus.permute_args(&[1, 0]).unwrap(), plus);
    assert_eq!(minus.permute_args(&[1, 0]).unwrap(), minus.neg());
    assert_eq!(alt_cochain(&minus).unwrap(), minus.scale_int(2));
    assert!(alt_cochain(&plus).unwrap().is_zero());
    assert_eq!(permutations(3).len(), 6);
    assert_eq!(permutations(3).iter().filter(|(_, odd)| *odd).count(), 3);
}

#[test]
fn errors() {
    let m = Module::new(q(), 2);
    let a = Cochain::basis(m, -1, 0).unwrap();
    assert_eq!(comp(&a, &a).unwrap_err(), Error::DegreeOutOfRange(-2));
    assert!(matches!(
        comp_i(&a, &a, 1),
        Err(Error::SlotOutOfRange { .. })
    ));
    let f = Cochain::basis(m, 1, 0).unwrap();
    assert!(matches!(
        comp_i(&f, &f, 3),
        Err(Error::SlotOutOfRange { .. })
    ));
    let other = Cochain::basis(Module::new(f7(), 2), 1, 0).unwrap();
    assert!(comp(&f, &other).is_err());
}

fn sign(m: Module, odd: bool) -> algeo::Scalar {
    m.field.from_i64(if odd { -1 } else { 1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn graded_jacobi_over_f7(seed in any::<u64>(), p in 0i64..=2, qd in -1i64..=2, r in 0i64..=1) {
        let m = Module::new(f7(), 2);
        let mut rng = random::rng(seed);
        let f = random::cochain(m, p, &mut rng).unwrap();
        let g = random::cochain(m, qd, &mut rng).unwrap();
        let h = random::cochain(m, r, &mut rng).unwrap();
        let t1 = bracket(&f, &bracket(&g, &h).unwrap()).unwrap().scale(&sign(m, (p * r) % 2 != 0));
        let t2 = bracket(&g, &bracket(&h, &f).unwrap()).unwrap().scale(&sign(m, (qd * p).rem_euclid(2) == 1));
        let t3 = bracket(&h, &bracket(&f, &g).unwrap()).unwrap().scale(&sign(m, (r * qd).rem_euclid(2) == 1));
        prop_assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
    }

    #[test]
    fn associator_is_symmetric_in_the_last_two(seed in any::<u64>(), p in 0i64..=2, qd in -1i64..=1, r in -1i64..=1) {
        prop_assume!(qd + r >= -1);
        let m = Module::new(q(), 2);
        let mut rng = random::rng(seed);
        let f = random::cochain(m, p, &mut rng).unwrap();
        let g = random::cochain(m, qd, &mut rng).unwrap();
        let h = random::cochain(m, r, &mut rng).unwrap();
        let lhs = associator3(&f, &g, &h).unwrap();
        let rhs = associator3(&f, &h, &g).unwrap().scale(&sign(m, (qd * r).rem_euclid(2) == 1));
        prop_assert_eq!(lhs, rhs);
    }
}
