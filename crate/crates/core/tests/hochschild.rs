use algeo::builtins::{self, BUILTIN_NAMES};
use algeo::random;
use algeo::{alt_cochain, bracket, comp, split_mu, AlgebraSpec, QuasiComplex, Scalar};

fn basis_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
}

fn nested(
    br: impl Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
    a: &[Scalar],
    b: &[Scalar],
    c: &[Scalar],
) -> Vec<Scalar> {
    br(b, &br(c, a))
}

#[test]
fn lie_algebra_associator_is_a_double_bracket() {
    let sl2 = builtins::sl2();
    let qc = QuasiComplex::new(sl2.clone());
    let alpha = qc.curvature();
    for (a, b, c) in basis_triples(3) {
        let (ea, eb, ec) = (
            sl2.basis_vector(a),
            sl2.basis_vector(b),
            sl2.basis_vector(c),
        );
        let expected = nested(|x, y| sl2.mul(x, y), &ea, &eb, &ec);
        assert_eq!(alpha.value_on_basis(&[a, b, c]), expected, "({a},{b},{c})");
    }
    assert!(alt_cochain(alpha).unwrap().is_zero());
}

#[test]
fn jordan_and_lie_associators_of_matrices() {
    let m2 = builtins::m2q();
    let (plus, minus) = split_mu(&m2.mu_cochain()).unwrap();
    let ap = comp(&plus, &plus).unwrap();
    let am = comp(&minus, &minus).unwrap();
    for (a, b, c) in basis_triples(4) {
        let (ea, eb, ec) = (m2.basis_vector(a), m2.basis_vector(b), m2.basis_vector(c));
        let bca = nested(|x, y| m2.commutator(x, y), &ea, &eb, &ec);
        let neg: Vec<Scalar> = bca.iter().map(|x| -x).collect();
        assert_eq!(ap.value_on_basis(&[a, b, c]), neg);
        assert_eq!(am.value_on_basis(&[a, b, c]), bca);
    }
    assert!(alt_cochain(&ap).unwrap().is_zero());
    assert!(alt_cochain(&am).unwrap().is_zero());
}

fn all_builtins() -> Vec<AlgebraSpec> {
    BUILTIN_NAMES
        .iter()
        .map(|n| builtins::builtin(n).unwrap())
        .collect()
}

#[test]
fn quasi_complex_identities_on_builtins_and_random_algebras() {
    let mut algebras = all_builtins();
    for seed in 0..8 {
        algebras.push(builtins::random_algebra(7, 2, seed).unwrap());
    }
    for alg in algebras {
        let qc = QuasiComplex::new(alg.clone());
        let m = alg.module();
        assert_eq!(
            &qc.differential(qc.identity()).unwrap(),
            qc.mu(),
            "{}",
            alg.name()
        );
        assert!(qc.bianchi_check().unwrap(), "{}", alg.name());
        assert_eq!(
            qc.differential(qc.mu()).unwrap(),
            qc.curvature().scale_int(2)
        );
        let mut rng = random::rng(alg.dim() as u64);
        for degree in -1..=1 {
            let f = random::cochain(m, degree, &mut rng).unwrap();
            assert_eq!(bracket(qc.identity(), &f).unwrap(), f.scale_int(-degree));
            assert!(
                qc.square_formula_check(&f).unwrap(),
                "{} degree {degree}",
                alg.name()
            );
        }
    }
}

#[test]
fn associative_algebras_give_complexes() {
    for name in ["m2q", "qz3", "zero3"] {
        let qc = QuasiComplex::new(builtins::builtin(name).unwrap());
        assert!(qc.is_associative());
        assert!(qc.curvature().is_zero());
        let mut rng = random::rng(11);
        for degree in -1..=1 {
            let f = random::cochain(qc.algebra().module(), degree, &mut rng).unwrap();
            assert!(qc.differential_power(&f, 2).unwrap().is_zero());
        }
    }
    assert!(!QuasiComplex::new(builtins::octonions()).is_associative());
}

#[test]
fn classical_differential_in_low_degree() {
    // For a 0-cochain f: (δf)(x, y) = x f(y) − f(xy) + f(x) y.
    let m2 = builtins::m2q();
    let qc = QuasiComplex::new(m2.clone());
    let mut rng = random::rng(5);
    let f = random::cochain(m2.module(), 0, &mut rng).unwrap();
    let df = qc.classical_differential(&f).unwrap();
    let fv = |v: &[Scalar]| f.eval_vectors(&[v]).unwrap();
    for x in 0..4 {
        for y in 0..4 {
            let (ex, ey) = (m2.basis_vector(x), m2.basis_vector(y));
            let t1 = m2.mul(&ex, &fv(&ey));
            let t2 = fv(&m2.mul(&ex, &ey));
            let t3 = m2.mul(&fv(&ex), &ey);
            let expected: Vec<Scalar> = (0..4).map(|k| &(&t1[k] - &t2[k]) + &t3[k]).collect();
            assert_eq!(df.value_on_basis(&[x, y]), expected);
        }
    }
}

#[test]
fn coherence_orders() {
    for name in ["m2q", "qz3"] {
        let report = QuasiComplex::new(builtins::builtin(name).unwrap())
            .coherence_order(4, 1)
            .unwrap();
        assert_eq!(report.order, Some(2), "{name}");
    }
    let zero = QuasiComplex::new(builtins::zero_algebra(3));
    assert_eq!(zero.coherence_order(4, 1).unwrap().order, Some(1));

    let oct = QuasiComplex::new(builtins::octonions());
    let report = oct.coherence_order(4, 1).unwrap();
    assert_eq!(report.order, None);
    let w = report.witness().unwrap();
    assert_eq!(w.order, 4);
    assert!(w.recheck(&oct).unwrap());
    let f = w.cochain(&oct).unwrap();
    assert!(!oct.differential_power(&f, 4).unwrap().is_zero());
}

#[test]
fn representation_curvatures() {
    for alg in all_builtins() {
        let qc = QuasiComplex::new(alg.clone());
        let n = alg.dim();
        for x in 0..n {
            for y in 0..n {
                let (ex, ey) = (alg.basis_vector(x), alg.basis_vector(y));
                assert!(
                    qc.sigma_matches_associator(&ex, &ey).unwrap(),
                    "{}",
                    alg.name()
                );
                if qc.is_associative() {
                    assert!(qc.rep_curvatures(&ex, &ey).1.is_zero());
                }
            }
        }
    }
    // σ(x, y)(z) = −α(x, y, z) by hand on the first non-associative octonion triple.
    let oct = builtins::octonions();
    let qc = QuasiComplex::new(oct.clone());
    let e = |i: usize| oct.basis_vector(i);
    let (x, y, z) = basis_triples(8)
        .find(|&(x, y, z)| {
            oct.mul(&oct.mul(&e(x), &e(y)), &e(z)) != oct.mul(&e(x), &oct.mul(&e(y), &e(z)))
        })
        .unwrap();
    let alpha: Vec<Scalar> = oct
        .mul(&oct.mul(&e(x), &e(y)), &e(z))
        .iter()
        .zip(oct.mul(&e(x), &oct.mul(&e(y), &e(z))))
        .map(|(l, r)| l - &r)
        .collect();
    let (sigma, _) = qc.rep_curvatures(&e(x), &e(y));
    let minus: Vec<Scalar> = alpha.iter().map(|v| -v).collect();
    assert_eq!(sigma.apply(&e(z)), minus);
}

#[test]
fn pre_lie_criterion() {
    for alg in all_builtins() {
        let qc = QuasiComplex::new(alg.clone());
        assert_eq!(qc.is_pre_lie(), qc.commutator_is_lie(), "{}", alg.name());
    }
    assert!(QuasiComplex::new(builtins::sl2()).is_pre_lie());
    assert!(!QuasiComplex::new(builtins::octonions()).is_pre_lie());
}
