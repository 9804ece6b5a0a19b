//! Torsion algebras `(C, D, [,]_C)`: the multiplication `D_X Y = μ(X, Y)` read as a
//! connection, its torsion, the algebra of functions and the action of vector fields.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraSpec, Module};
use crate::cochain::{Cochain, Endomorphism};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::hochschild::left_regular;
use crate::linalg::{expand_in_basis, kernel_basis, Expansion, Matrix};

fn vsub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vadd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

#[derive(Debug, Clone)]
pub struct TorsionAlgebra {
    algebra: AlgebraSpec,
    lie_bracket: Cochain,
    torsion: Cochain,
}

impl TorsionAlgebra {
    /// The bracket is the one supplied with the algebra (validated at load), or `μ₋`.
    pub fn new(algebra: AlgebraSpec) -> TorsionAlgebra {
        let lie_bracket = algebra.bracket_cochain();
        let (_, skew) = crate::cochain::split_mu(&algebra.mu_cochain()).expect("binary");
        let torsion = skew.sub(&lie_bracket).expect("same shape");
        TorsionAlgebra {
            algebra,
            lie_bracket,
            torsion,
        }
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }
    pub fn module(&self) -> Module {
        self.algebra.module()
    }
    pub fn lie_bracket(&self) -> &Cochain {
        &self.lie_bracket
    }

    /// `T = μ₋ − [,]_C`.
    pub fn torsion_tensor(&self) -> &Cochain {
        &self.torsion
    }

    pub fn torsion(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.algebra.commutator(x, y);
        vsub(&d, &self.algebra.bracket(x, y))
    }

    pub fn connection(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.algebra.mul(x, y)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.algebra.bracket(x, y)
    }

    pub fn associator(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let a = &self.algebra;
        vsub(&a.mul(&a.mul(x, y), z), &a.mul(x, &a.mul(y, z)))
    }

    fn e(&self, i: usize) -> Vec<Scalar> {
        self.algebra.basis_vector(i)
    }

    /// `D_X` as an endomorphism.
    pub fn covariant(&self, x: &[Scalar]) -> Endomorphism {
        left_regular(&self.algebra, x)
    }

    /// Kernel of the linear conditions `D_{φ(e_a)} e_b = φ(D_{e_a} e_b)` on the entries of `φ`.
    pub fn function_algebra(&self) -> Result<FunctionAlgebra> {
        let n = self.algebra.dim();
        let field = self.algebra.field();
        let mu = self.algebra.mu_constants();
        // Unknown φ_{r,c} at column r*n + c (row = output, column = input).
        let mut m = Matrix::zeros(field, n * n * n, n * n);
        for (&(i, j, k), c) in mu {
            // LHS Σ_c φ_{c,a} μ_{c,b}^k : the term with c = i, b = j, for every a.
            for a in 0..n {
                let row = (a * n + j) * n + k;
                let col = i * n + a;
                let v = m.get(row, col) + c;
                m.set(row, col, v);
            }
            // RHS −Σ_c φ_{k',c} μ_{a,b}^c : with a = i, b = j, c = k, for every output k'.
            for kk in 0..n {
                let row = (i * n + j) * n + kk;
                let col = kk * n + k;
                let v = m.get(row, col) - c;
                m.set(row, col, v);
            }
        }
        let module = self.module();
        let basis: Vec<Endomorphism> = kernel_basis(&m)
            .vectors
            .iter()
            .map(|v| Endomorphism::from_flat(module, v).expect("n*n entries"))
            .collect();
        FunctionAlgebra::new(module, basis)
    }

    /// Direct check of `D_{φX} Y = φ(D_X Y)` over basis pairs; returns the first violation.
    pub fn is_function(&self, phi: &Endomorphism) -> FunctionCheck {
        let n = self.algebra.dim();
        for x in 0..n {
            let phix = phi.apply(&self.e(x));
            for y in 0..n {
                let lhs = self.connection(&phix, &self.e(y));
                let rhs = phi.apply(&self.connection(&self.e(x), &self.e(y)));
                if lhs != rhs {
                    return FunctionCheck::Violation { x, y };
                }
            }
        }
        FunctionCheck::Function
    }

    /// `X·φ = [D_X, φ]`.
    pub fn vf_action(&self, x: &[Scalar], phi: &Endomorphism) -> Endomorphism {
        self.covariant(x).commutator(phi)
    }

    /// The two braces of the torsion decomposition, evaluated at `Y`.
    pub fn lemma_two_of_three(&self, x: &[Scalar], y: &[Scalar], phi: &Endomorphism) -> TwoOfThree {
        let xphi = self.vf_action(x, phi);
        let phiy = phi.apply(y);
        let xphi_y = xphi.apply(y);
        let dx_phiy = self.connection(x, &phiy);
        let phi_dxy = phi.apply(&self.connection(x, y));
        let r_ii = vsub(&vsub(&dx_phiy, &phi_dxy), &xphi_y);
        let r_iii = vsub(
            &vadd(&xphi_y, &phi.apply(&self.bracket(x, y))),
            &self.bracket(x, &phiy),
        );
        // φ(D_Y X) − D_{φY} X, zero exactly when φ is a function on this pair.
        let function_defect = vsub(
            &phi.apply(&self.connection(y, x)),
            &self.connection(&phiy, x),
        );
        let torsion_defect = vsub(&self.torsion(x, &phiy), &phi.apply(&self.torsion(x, y)));
        TwoOfThree {
            r_ii,
            r_iii,
            function_defect,
            torsion_defect,
        }
    }

    /// Torsion and associator `A`-linear in the first two slots, over all basis data.
    pub fn is_regular(&self, fa: &FunctionAlgebra) -> Regularity {
        let n = self.algebra.dim();
        for (pi, phi) in fa.basis().iter().enumerate() {
            for x in 0..n {
                let (ex, phix) = (self.e(x), phi.apply(&self.e(x)));
                for y in 0..n {
                    let (ey, phiy) = (self.e(y), phi.apply(&self.e(y)));
                    let t = phi.apply(&self.torsion(&ex, &ey));
                    if self.torsion(&phix, &ey) != t {
                        return Regularity::violated(
                            RegularityFailure::TorsionFirst,
                            pi,
                            vec![x, y],
                        );
                    }
                    if self.torsion(&ex, &phiy) != t {
                        return Regularity::violated(
                            RegularityFailure::TorsionSecond,
                            pi,
                            vec![x, y],
                        );
                    }
                    for z in 0..n {
                        let ez = self.e(z);
                        let a = phi.apply(&self.associator(&ex, &ey, &ez));
                        if self.associator(&phix, &ey, &ez) != a {
                            return Regularity::violated(
                                RegularityFailure::AssociatorFirst,
                                pi,
                                vec![x, y, z],
                            );
                        }
                        if self.associator(&ex, &phiy, &ez) != a {
                            return Regularity::violated(
                                RegularityFailure::AssociatorSecond,
                                pi,
                                vec![x, y, z],
                            );
                        }
                    }
                }
            }
        }
        Regularity {
            regular: true,
            witness: None,
        }
    }

    /// Checks the six conclusions for regular torsion algebras on all basis data.
    pub fn theorem1_suite(&self, fa: &FunctionAlgebra) -> Vec<ClaimResult> {
        let n = self.algebra.dim();
        let basis = fa.basis();
        let mut claims: Vec<ClaimResult> = Vec::with_capacity(6);

        // (1) X·φ is a function.
        let mut w = None;
        'c1: for x in 0..n {
            for (pi, phi) in basis.iter().enumerate() {
                if !fa.contains(&self.vf_action(&self.e(x), phi)) {
                    w = Some(vec![x, pi]);
                    break 'c1;
                }
            }
        }
        claims.push(ClaimResult::new(1, "X·φ is a function", w));

        // (2) Leibniz over composition.
        let mut w = None;
        'c2: for x in 0..n {
            let ex = self.e(x);
            for (pi, phi) in basis.iter().enumerate() {
                for (qi, psi) in basis.iter().enumerate() {
                    let lhs = self.vf_action(&ex, &phi.compose(psi));
                    let rhs = self
                        .vf_action(&ex, phi)
                        .compose(psi)
                        .add(&phi.compose(&self.vf_action(&ex, psi)));
                    if lhs != rhs {
                        w = Some(vec![x, pi, qi]);
                        break 'c2;
                    }
                }
            }
        }
        claims.push(ClaimResult::new(
            2,
            "X acts as a derivation on functions",
            w,
        ));

        // (3) associator A-linear in the first two slots.
        let mut w = None;
        'c3: for (pi, phi) in basis.iter().enumerate() {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let (ex, ey, ez) = (self.e(x), self.e(y), self.e(z));
                        let a = phi.apply(&self.associator(&ex, &ey, &ez));
                        if self.associator(&phi.apply(&ex), &ey, &ez) != a
                            || self.associator(&ex, &phi.apply(&ey), &ez) != a
                        {
                            w = Some(vec![pi, x, y, z]);
                            break 'c3;
                        }
                    }
                }
            }
        }
        claims.push(ClaimResult::new(
            3,
            "associator is A-linear in its first two slots",
            w,
        ));

        // (4) [X, φY] = φ[X, Y] + (X·φ)Y, and (5) D_X(φY) = (X·φ)Y + φ D_X Y.
        let mut w4 = None;
        let mut w5 = None;
        for x in 0..n {
            for (pi, phi) in basis.iter().enumerate() {
                let xphi = self.vf_action(&self.e(x), phi);
                for y in 0..n {
                    let (ex, ey) = (self.e(x), self.e(y));
                    let phiy = phi.apply(&ey);
                    let xphi_y = xphi.apply(&ey);
                    if w4.is_none()
                        && self.bracket(&ex, &phiy)
                            != vadd(&phi.apply(&self.bracket(&ex, &ey)), &xphi_y)
                    {
                        w4 = Some(vec![x, pi, y]);
                    }
                    if w5.is_none()
                        && self.connection(&ex, &phiy)
                            != vadd(&xphi_y, &phi.apply(&self.connection(&ex, &ey)))
                    {
                        w5 = Some(vec![x, pi, y]);
                    }
                }
            }
        }
        claims.push(ClaimResult::new(4, "[X, φY] = φ[X, Y] + (X·φ)Y", w4));
        claims.push(ClaimResult::new(5, "D_X(φY) = (X·φ)Y + φ D_X Y", w5));

        // (6) torsion A-bilinear.
        let mut w = None;
        'c6: for (pi, phi) in basis.iter().enumerate() {
            for x in 0..n {
                for y in 0..n {
                    let (ex, ey) = (self.e(x), self.e(y));
                    let t = phi.apply(&self.torsion(&ex, &ey));
                    if self.torsion(&phi.apply(&ex), &ey) != t
                        || self.torsion(&ex, &phi.apply(&ey)) != t
                    {
                        w = Some(vec![pi, x, y]);
                        break 'c6;
                    }
                }
            }
        }
        claims.push(ClaimResult::new(6, "torsion is A-bilinear", w));
        claims
    }
}

/// Basis of the left nucleus `{c : (cX)Y = c(XY)}`, computed independently of the
/// function-algebra kernel.
pub fn left_nucleus_basis(algebra: &AlgebraSpec) -> Vec<Vec<Scalar>> {
    let n = algebra.dim();
    let field = algebra.field();
    let mut m = Matrix::zeros(field, n * n * n, n);
    for c in 0..n {
        let ec = algebra.basis_vector(c);
        for x in 0..n {
            let ex = algebra.basis_vector(x);
            for y in 0..n {
                let ey = algebra.basis_vector(y);
                let lhs = algebra.mul(&algebra.mul(&ec, &ex), &ey);
                let rhs = algebra.mul(&ec, &algebra.mul(&ex, &ey));
                for k in 0..n {
                    m.set((x * n + y) * n + k, c, &lhs[k] - &rhs[k]);
                }
            }
        }
    }
    kernel_basis(&m).vectors
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionCheck {
    Function,
    /// `D_{φ(e_x)} e_y ≠ φ(D_{e_x} e_y)`.
    Violation {
        x: usize,
        y: usize,
    },
}

impl FunctionCheck {
    pub fn holds(&self) -> bool {
        matches!(self, FunctionCheck::Function)
    }
}

/// Output of [`TorsionAlgebra::lemma_two_of_three`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoOfThree {
    /// `D_X(φY) − φ D_X Y − (X·φ)Y`.
    pub r_ii: Vec<Scalar>,
    /// `(X·φ)Y + φ[X,Y] − [X, φY]`.
    pub r_iii: Vec<Scalar>,
    /// `φ(D_Y X) − D_{φY} X`; vanishes for functions.
    pub function_defect: Vec<Scalar>,
    /// `T(X, φY) − φT(X, Y)`.
    pub torsion_defect: Vec<Scalar>,
}

impl TwoOfThree {
    /// `T(X,φY) − φT(X,Y) = r_ii + r_iii + (φ(D_Y X) − D_{φY} X)`; the last term drops
    /// out when `φ` is a function.
    pub fn identity_holds(&self) -> bool {
        let rhs = vadd(&vadd(&self.r_ii, &self.r_iii), &self.function_defect);
        self.torsion_defect == rhs
    }

    pub fn r_ii_vanishes(&self) -> bool {
        is_zero(&self.r_ii)
    }

    pub fn r_iii_vanishes(&self) -> bool {
        is_zero(&self.r_iii)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularityFailure {
    TorsionFirst,
    TorsionSecond,
    AssociatorFirst,
    AssociatorSecond,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityWitness {
    pub kind: RegularityFailure,
    /// Index of the function-algebra basis element.
    pub function: usize,
    /// Basis indices `(X, Y)` or `(X, Y, Z)`.
    pub args: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regularity {
    pub regular: bool,
    pub witness: Option<RegularityWitness>,
}

impl Regularity {
    fn violated(kind: RegularityFailure, function: usize, args: Vec<usize>) -> Regularity {
        Regularity {
            regular: false,
            witness: Some(RegularityWitness {
                kind,
                function,
                args,
            }),
        }
    }
}

impl RegularityWitness {
    /// Re-evaluates the violated identity; `true` if it still fails.
    pub fn recheck(&self, ta: &TorsionAlgebra, fa: &FunctionAlgebra) -> bool {
        let phi = &fa.basis()[self.function];
        let e: Vec<Vec<Scalar>> = self.args.iter().map(|&i| ta.e(i)).collect();
        match self.kind {
            RegularityFailure::TorsionFirst => {
                ta.torsion(&phi.apply(&e[0]), &e[1]) != phi.apply(&ta.torsion(&e[0], &e[1]))
            }
            RegularityFailure::TorsionSecond => {
                ta.torsion(&e[0], &phi.apply(&e[1])) != phi.apply(&ta.torsion(&e[0], &e[1]))
            }
            RegularityFailure::AssociatorFirst => {
                ta.associator(&phi.apply(&e[0]), &e[1], &e[2])
                    != phi.apply(&ta.associator(&e[0], &e[1], &e[2]))
            }
            RegularityFailure::AssociatorSecond => {
                ta.associator(&e[0], &phi.apply(&e[1]), &e[2])
                    != phi.apply(&ta.associator(&e[0], &e[1], &e[2]))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim: u8,
    pub statement: String,
    pub holds: bool,
    /// First violating tuple of basis indices (vector fields and function-basis indices).
    pub witness: Option<Vec<usize>>,
}

impl ClaimResult {
    fn new(claim: u8, statement: &str, witness: Option<Vec<usize>>) -> ClaimResult {
        ClaimResult {
            claim,
            statement: statement.to_string(),
            holds: witness.is_none(),
            witness,
        }
    }
}

/// The algebra of functions: a basis of endomorphisms and the coordinates of their
/// pairwise composites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionAlgebra {
    module: Module,
    basis: Vec<Endomorphism>,
    flat_basis: Vec<Vec<Scalar>>,
    table: Vec<Vec<Vec<Scalar>>>,
}

impl FunctionAlgebra {
    /// Builds the multiplication table; fails if a composite leaves the span.
    pub fn new(module: Module, basis: Vec<Endomorphism>) -> Result<FunctionAlgebra> {
        let flat_basis: Vec<Vec<Scalar>> = basis.iter().map(Endomorphism::flat).collect();
        let mut table = Vec::with_capacity(basis.len());
        for (a, pa) in basis.iter().enumerate() {
            let mut row = Vec::with_capacity(basis.len());
            for (b, pb) in basis.iter().enumerate() {
                match expand_in_basis(module.field, &flat_basis, &pa.compose(pb).flat())? {
                    Expansion::Coordinates(c) => row.push(c),
                    Expansion::NotInSpan { .. } => {
                        return Err(Error::Validation(format!(
                            "composite of function basis elements {a} and {b} leaves the function algebra"
                        )))
                    }
                }
            }
            table.push(row);
        }
        Ok(FunctionAlgebra {
            module,
            basis,
            flat_basis,
            table,
        })
    }

    pub fn module(&self) -> Module {
        self.module
    }
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Endomorphism] {
        &self.basis
    }

    /// Coordinates of `φ_a ∘ φ_b`.
    pub fn product(&self, a: usize, b: usize) -> &[Scalar] {
        &self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.table
    }

    pub fn coordinates(&self, phi: &Endomorphism) -> Option<Vec<Scalar>> {
        expand_in_basis(self.module.field, &self.flat_basis, &phi.flat())
            .ok()
            .and_then(Expansion::coordinates)
    }

    pub fn contains(&self, phi: &Endomorphism) -> bool {
        self.coordinates(phi).is_some()
    }

    pub fn combination(&self, coords: &[Scalar]) -> Endomorphism {
        let mut acc = Endomorphism::zero(self.module);
        for (c, b) in coords.iter().zip(&self.basis) {
            acc = acc.add(&b.scale(c));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn function_algebra_of_zero_algebra_is_everything() {
        let ta = TorsionAlgebra::new(builtins::zero_algebra(3));
        assert_eq!(ta.function_algebra().unwrap().dimension(), 9);
    }

    #[test]
    fn identity_is_a_function() {
        for name in builtins::BUILTIN_NAMES {
            let ta = TorsionAlgebra::new(builtins::builtin(name).unwrap());
            assert!(ta.is_function(&Endomorphism::identity(ta.module())).holds());
        }
    }
}
