mod common;

use algeo::builtins::{self, BUILTIN_NAMES};
use algeo::hochschild::left_regular;
use algeo::random;
use algeo::torsion::{left_nucleus_basis, FunctionCheck, RegularityFailure};
use algeo::{AlgebraSpec, Endomorphism, FieldSpec, Scalar, StructureConstants, TorsionAlgebra};
use common::{brute_force_function_count, function_dimension};

/// The dimension of the function algebra of `sl2` with `μ = ½[,]`, as computed by the
/// elimination oracle and frozen for regression.
const SL2_HALF_FUNCTION_DIMENSION: usize = 1;

#[test]
fn function_dimensions_agree_with_the_elimination_oracle() {
    for name in BUILTIN_NAMES {
        let alg = builtins::builtin(name).unwrap();
        let fa = TorsionAlgebra::new(alg.clone()).function_algebra().unwrap();
        assert_eq!(fa.dimension(), function_dimension(&alg), "{name}");
    }
    for seed in 0..16 {
        let alg = builtins::random_algebra(7, 3, seed).unwrap();
        let fa = TorsionAlgebra::new(alg.clone()).function_algebra().unwrap();
        assert_eq!(fa.dimension(), function_dimension(&alg), "{}", alg.name());
    }
}

#[test]
fn function_counts_agree_with_enumeration() {
    let f5 = FieldSpec::prime(5).unwrap();
    let mut algebras = Vec::new();
    for seed in 0..8 {
        algebras.push(builtins::random_algebra(5, 2, seed).unwrap());
    }
    let names = || vec!["u".to_string(), "v".to_string()];
    algebras.push(AlgebraSpec::new("zero", f5, names(), StructureConstants::new(), None).unwrap());
    // Dual numbers: u unit, v² = 0.
    let dual: StructureConstants = [((0, 0, 0), 1), ((0, 1, 1), 1), ((1, 0, 1), 1)]
        .into_iter()
        .map(|(k, c)| (k, f5.from_i64(c)))
        .collect();
    algebras.push(AlgebraSpec::new("dual", f5, names(), dual, None).unwrap());
    // Left zero band: u u = u, u v = u, v u = v, v v = v.
    let band: StructureConstants = [
        ((0, 0, 0), 1),
        ((0, 1, 0), 1),
        ((1, 0, 1), 1),
        ((1, 1, 1), 1),
    ]
    .into_iter()
    .map(|(k, c)| (k, f5.from_i64(c)))
    .collect();
    algebras.push(AlgebraSpec::new("band", f5, names(), band, None).unwrap());
    for alg in algebras {
        let p = alg.field().modulus().unwrap();
        let fa = TorsionAlgebra::new(alg.clone()).function_algebra().unwrap();
        assert_eq!(
            brute_force_function_count(&alg),
            p.pow(fa.dimension() as u32),
            "{}",
            alg.name()
        );
    }
}

#[test]
fn frozen_dimensions() {
    let dim = |name: &str| {
        TorsionAlgebra::new(builtins::builtin(name).unwrap())
            .function_algebra()
            .unwrap()
            .dimension()
    };
    assert_eq!(dim("m2q"), 4);
    assert_eq!(dim("qz3"), 3);
    assert_eq!(dim("octonions"), 1);
    assert_eq!(dim("zero3"), 9);
    assert_eq!(dim("sl2-half"), SL2_HALF_FUNCTION_DIMENSION);
    assert_eq!(
        function_dimension(&builtins::sl2_half()),
        SL2_HALF_FUNCTION_DIMENSION
    );
}

#[test]
fn matrix_functions_are_left_multiplications() {
    let m2 = builtins::m2q();
    let ta = TorsionAlgebra::new(m2.clone());
    let fa = ta.function_algebra().unwrap();
    let unit = m2.unit().unwrap();
    let at_one: Vec<Vec<Scalar>> = fa.basis().iter().map(|phi| phi.apply(&unit)).collect();
    for (a, phi) in fa.basis().iter().enumerate() {
        assert_eq!(*phi, left_regular(&m2, &at_one[a]));
        for b in 0..fa.dimension() {
            // φ_a ∘ φ_b ↦ φ_a(1) φ_b(1).
            let coords = fa.product(a, b);
            let image: Vec<Scalar> = (0..4)
                .map(|k| {
                    coords
                        .iter()
                        .zip(&at_one)
                        .fold(m2.field().zero(), |acc, (c, v)| &acc + &(c * &v[k]))
                })
                .collect();
            assert_eq!(image, m2.mul(&at_one[a], &at_one[b]));
        }
    }
    assert_eq!(left_nucleus_basis(&m2).len(), 4);
}

#[test]
fn unital_associative_builtins_are_regular() {
    for name in ["m2q", "qz3"] {
        let ta = TorsionAlgebra::new(builtins::builtin(name).unwrap());
        assert!(ta.torsion_tensor().is_zero(), "{name}");
        let fa = ta.function_algebra().unwrap();
        let reg = ta.is_regular(&fa);
        assert!(reg.regular, "{name}: {:?}", reg.witness);
        let claims = ta.theorem1_suite(&fa);
        assert_eq!(claims.len(), 6);
        assert!(claims.iter().all(|c| c.holds), "{name}: {claims:?}");
    }
}

#[test]
fn a_poisson_bracket_breaks_regularity() {
    let ta = TorsionAlgebra::new(builtins::poisson_sl2());
    assert!(!ta.torsion_tensor().is_zero());
    let fa = ta.function_algebra().unwrap();
    let reg = ta.is_regular(&fa);
    assert!(!reg.regular);
    let w = reg.witness.unwrap();
    assert_eq!(w.kind, RegularityFailure::TorsionSecond);
    assert!(w.recheck(&ta, &fa));
}

#[test]
fn direct_function_test() {
    let m2 = builtins::m2q();
    let ta = TorsionAlgebra::new(m2.clone());
    assert!(ta.is_function(&Endomorphism::identity(m2.module())).holds());
    // Right multiplication by e12 is not a left multiplication.
    let r = Endomorphism::from_columns(m2.module(), |i| {
        m2.mul(&m2.basis_vector(i), &m2.basis_vector(1))
    });
    assert!(matches!(
        ta.is_function(&r),
        FunctionCheck::Violation { .. }
    ));
    let fa = ta.function_algebra().unwrap();
    assert!(!fa.contains(&r));
    assert!(fa.contains(&left_regular(&m2, &m2.basis_vector(1))));
}

#[test]
fn torsion_decomposition_for_arbitrary_endomorphisms() {
    for name in BUILTIN_NAMES {
        let ta = TorsionAlgebra::new(builtins::builtin(name).unwrap());
        let m = ta.module();
        let mut rng = random::rng(9);
        for _ in 0..16 {
            let x = random::vector(m, &mut rng);
            let y = random::vector(m, &mut rng);
            let phi = random::endomorphism(m, &mut rng);
            let r = ta.lemma_two_of_three(&x, &y, &phi);
            assert!(r.identity_holds(), "{name}");
            assert!(r.r_ii_vanishes(), "{name}");
        }
    }
}

#[test]
fn vector_fields_act_by_derivations() {
    let ta = TorsionAlgebra::new(builtins::octonions());
    let m = ta.module();
    let mut rng = random::rng(4);
    for _ in 0..8 {
        let x = random::vector(m, &mut rng);
        let phi = random::endomorphism(m, &mut rng);
        let psi = random::endomorphism(m, &mut rng);
        let lhs = ta.vf_action(&x, &phi.compose(&psi));
        let rhs = ta
            .vf_action(&x, &phi)
            .compose(&psi)
            .add(&phi.compose(&ta.vf_action(&x, &psi)));
        assert_eq!(lhs, rhs);
    }
}
