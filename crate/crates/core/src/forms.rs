//! Module-valued differential forms on a torsion algebra: the `(λ, ρ)` quasi-bimodule
//! differential, its alternation, curvature `K`, interior products and Lie derivatives.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;
use crate::random::{self, TrialRng};
use crate::torsion::{FunctionAlgebra, TorsionAlgebra};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CarrierKind {
    /// `M = C` with `D^M_X u = μ(X, u)`.
    VectorFields,
    /// `M = A` with `D^M_X φ = X·φ`, in coordinates of the function-algebra basis.
    Functions,
}

impl CarrierKind {
    pub fn label(self) -> &'static str {
        match self {
            CarrierKind::VectorFields => "C",
            CarrierKind::Functions => "A",
        }
    }
}

/// A module `M` over the torsion algebra with its derivation law and `A`-action, both
/// stored as matrices per basis element.
#[derive(Debug, Clone)]
pub struct ModuleCarrier {
    kind: CarrierKind,
    field: FieldSpec,
    base_dim: usize,
    dim: usize,
    derivations: Vec<Matrix>,
    functions: FunctionAlgebra,
    /// Action of the `b`-th function-algebra basis element on `C` and on `M`.
    on_base: Vec<Matrix>,
    on_module: Vec<Matrix>,
}

impl ModuleCarrier {
    pub fn vector_fields(ta: &TorsionAlgebra) -> Result<ModuleCarrier> {
        let fa = ta.function_algebra()?;
        let n = ta.algebra().dim();
        let derivations = (0..n)
            .map(|x| ta.covariant(&ta.algebra().basis_vector(x)).matrix().clone())
            .collect();
        let on_base: Vec<Matrix> = fa.basis().iter().map(|p| p.matrix().clone()).collect();
        Ok(ModuleCarrier {
            kind: CarrierKind::VectorFields,
            field: ta.algebra().field(),
            base_dim: n,
            dim: n,
            derivations,
            on_module: on_base.clone(),
            on_base,
            functions: fa,
        })
    }

    /// Requires a regular torsion algebra, so that `X·φ` stays inside `A`.
    pub fn functions(ta: &TorsionAlgebra) -> Result<ModuleCarrier> {
        let fa = ta.function_algebra()?;
        let regularity = ta.is_regular(&fa);
        if !regularity.regular {
            return Err(Error::CarrierClosure(
                "the functions carrier needs a regular torsion algebra, so that X·φ stays in A"
                    .into(),
            ));
        }
        let n = ta.algebra().dim();
        let m = fa.dimension();
        let field = ta.algebra().field();
        let mut derivations = Vec::with_capacity(n);
        for x in 0..n {
            let ex = ta.algebra().basis_vector(x);
            let mut mat = Matrix::zeros(field, m, m);
            for (b, phi) in fa.basis().iter().enumerate() {
                let image = ta.vf_action(&ex, phi);
                let coords = fa.coordinates(&image).ok_or_else(|| {
                    Error::CarrierClosure(format!(
                        "X·φ leaves the function algebra for X = e{x}, φ = basis element {b}"
                    ))
                })?;
                for (r, c) in coords.iter().enumerate() {
                    mat.set(r, b, c.clone());
                }
            }
            derivations.push(mat);
        }
        let on_base: Vec<Matrix> = fa.basis().iter().map(|p| p.matrix().clone()).collect();
        let on_module = (0..m)
            .map(|b| {
                let mut mat = Matrix::zeros(field, m, m);
                for c in 0..m {
                    for (r, v) in fa.product(b, c).iter().enumerate() {
                        mat.set(r, c, v.clone());
                    }
                }
                mat
            })
            .collect();
        Ok(ModuleCarrier {
            kind: CarrierKind::Functions,
            field,
            base_dim: n,
            dim: m,
            derivations,
            functions: fa,
            on_base,
            on_module,
        })
    }

    pub fn new(ta: &TorsionAlgebra, kind: CarrierKind) -> Result<ModuleCarrier> {
        match kind {
            CarrierKind::VectorFields => ModuleCarrier::vector_fields(ta),
            CarrierKind::Functions => ModuleCarrier::functions(ta),
        }
    }

    pub fn kind(&self) -> CarrierKind {
        self.kind
    }
    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }
    pub fn function_algebra(&self) -> &FunctionAlgebra {
        &self.functions
    }

    /// Matrix of `D^M_X`.
    pub fn derivation(&self, x: &[Scalar]) -> Matrix {
        let mut acc = Matrix::zeros(self.field, self.dim, self.dim);
        for (c, m) in x.iter().zip(&self.derivations) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c)).expect("same shape");
            }
        }
        acc
    }

    pub fn derivation_basis(&self, x: usize) -> &Matrix {
        &self.derivations[x]
    }
}

/// An `M`-valued multilinear map on `C^k`, dense over basis tuples (first argument most
/// significant), `k` = number of arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DForm {
    field: FieldSpec,
    base_dim: usize,
    value_dim: usize,
    degree: usize,
    values: Vec<Scalar>,
}

impl DForm {
    pub fn zero(carrier: &ModuleCarrier, degree: usize) -> DForm {
        DForm::from_fn(carrier, degree, |_| vec![carrier.field.zero(); carrier.dim])
    }

    pub fn from_fn(
        carrier: &ModuleCarrier,
        degree: usize,
        mut value: impl FnMut(&[usize]) -> Vec<Scalar>,
    ) -> DForm {
        let (n, m) = (carrier.base_dim, carrier.dim);
        let tuples = n.pow(degree as u32);
        let mut values = Vec::with_capacity(tuples * m);
        let mut args = vec![0usize; degree];
        for t in 0..tuples {
            decode(t, n, &mut args);
            let v = value(&args);
            debug_assert_eq!(v.len(), m);
            values.extend(v);
        }
        DForm {
            field: carrier.field,
            base_dim: n,
            value_dim: m,
            degree,
            values,
        }
    }

    /// Random entries, not alternating.
    pub fn random(carrier: &ModuleCarrier, degree: usize, rng: &mut TrialRng) -> DForm {
        let field = carrier.field;
        DForm::from_fn(carrier, degree, |_| {
            (0..carrier.dim)
                .map(|_| random::scalar(field, rng))
                .collect()
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn value_dim(&self) -> usize {
        self.value_dim
    }
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn value(&self, args: &[usize]) -> &[Scalar] {
        let t = args.iter().fold(0, |acc, &a| acc * self.base_dim + a);
        &self.values[t * self.value_dim..(t + 1) * self.value_dim]
    }

    /// `ω(args)` with the basis argument in `slot` replaced by the vector `v`.
    pub fn value_with(&self, args: &[usize], slot: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut acc = vec![self.field.zero(); self.value_dim];
        let mut a = args.to_vec();
        for (c, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            a[slot] = c;
            axpy(&mut acc, coeff, self.value(&a));
        }
        acc
    }

    pub fn add(&self, other: &DForm) -> DForm {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        DForm {
            values,
            ..self.clone()
        }
    }

    pub fn scale(&self, k: &Scalar) -> DForm {
        let values = self.values.iter().map(|a| a * k).collect();
        DForm {
            values,
            ..self.clone()
        }
    }

    /// Unnormalised alternation `Σ_σ sgn(σ) ω∘σ`.
    pub fn alternate(&self) -> DForm {
        let k = self.degree;
        let perms = crate::cochain::permutations(k);
        let mut values = vec![self.field.zero(); self.values.len()];
        let tuples = self.base_dim.pow(k as u32);
        let mut args = vec![0usize; k];
        let mut permuted = vec![0usize; k];
        for t in 0..tuples {
            decode(t, self.base_dim, &mut args);
            let out = &mut values[t * self.value_dim..(t + 1) * self.value_dim];
            for (perm, odd) in &perms {
                for i in 0..k {
                    permuted[i] = args[perm[i]];
                }
                let v = self.value(&permuted);
                for (o, x) in out.iter_mut().zip(v) {
                    *o = if *odd { &*o - x } else { &*o + x };
                }
            }
        }
        DForm {
            values,
            ..self.clone()
        }
    }

    /// First basis tuple and adjacent position where swapping fails to negate.
    pub fn alternating_witness(&self) -> Option<(Vec<usize>, usize)> {
        let k = self.degree;
        let tuples = self.base_dim.pow(k as u32);
        let mut args = vec![0usize; k];
        for t in 0..tuples {
            decode(t, self.base_dim, &mut args);
            for i in 0..k.saturating_sub(1) {
                let mut swapped = args.clone();
                swapped.swap(i, i + 1);
                let a = self.value(&args);
                let b = self.value(&swapped);
                if a.iter().zip(b).any(|(x, y)| !(x + y).is_zero()) {
                    return Some((args.clone(), i));
                }
            }
        }
        None
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating_witness().is_none()
    }
}

fn decode(mut t: usize, n: usize, args: &mut [usize]) {
    for a in args.iter_mut().rev() {
        *a = t % n;
        t /= n;
    }
}

fn axpy(acc: &mut [Scalar], k: &Scalar, v: &[Scalar]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(k * x);
        }
    }
}

fn mv(m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    m.mul_vec(v).expect("carrier dimensions agree")
}

/// `[a, b] − c` for square matrices of one size.
fn commutator_minus(a: &Matrix, b: &Matrix, c: &Matrix) -> Matrix {
    let ab = a.mul(b).expect("square");
    let ba = b.mul(a).expect("square");
    ab.sub(&ba).and_then(|m| m.sub(c)).expect("square")
}

fn sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

/// Where an `A`-multilinearity condition `ω(…, φX, …) = φ·ω(…, X, …)` fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultilinearityWitness {
    pub function: usize,
    pub slot: usize,
    pub args: Vec<usize>,
}

/// Result of comparing two forms for proportionality `rhs = c·lhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ratio {
    Constant(Scalar),
    BothZero,
    NotProportional,
}

pub fn ratio(lhs: &DForm, rhs: &DForm) -> Ratio {
    ratio_of(&lhs.values, &rhs.values)
}

pub fn ratio_of(lhs: &[Scalar], rhs: &[Scalar]) -> Ratio {
    let Some(i) = lhs.iter().position(|x| !x.is_zero()) else {
        return if rhs.iter().all(Scalar::is_zero) {
            Ratio::BothZero
        } else {
            Ratio::NotProportional
        };
    };
    let c = rhs[i].checked_div(&lhs[i]).expect("nonzero");
    if lhs.iter().zip(rhs).all(|(a, b)| &(a * &c) == b) {
        Ratio::Constant(c)
    } else {
        Ratio::NotProportional
    }
}

/// Differential calculus of one torsion algebra with values in one carrier.
#[derive(Debug, Clone)]
pub struct FormCalculus {
    carrier: ModuleCarrier,
    /// `[e_a, e_b]_C` for all basis pairs.
    brackets: Vec<Vec<Vec<Scalar>>>,
}

impl FormCalculus {
    pub fn new(ta: &TorsionAlgebra, kind: CarrierKind) -> Result<FormCalculus> {
        let carrier = ModuleCarrier::new(ta, kind)?;
        let n = ta.algebra().dim();
        let brackets = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        ta.bracket(&ta.algebra().basis_vector(a), &ta.algebra().basis_vector(b))
                    })
                    .collect()
            })
            .collect();
        Ok(FormCalculus { carrier, brackets })
    }

    pub fn carrier(&self) -> &ModuleCarrier {
        &self.carrier
    }

    fn act(&self, x: usize, u: &[Scalar]) -> Vec<Scalar> {
        mv(&self.carrier.derivations[x], u)
    }

    /// `du(X) = 2D_X u` for an element `u ∈ M`, as a 1-form.
    pub fn zero_form(&self, u: &[Scalar]) -> DForm {
        DForm::from_fn(&self.carrier, 0, |_| u.to_vec())
    }

    /// The `(λ, ρ)` differential, term by term:
    /// `dω(a₁..a_{k+1}) = λ(a₁, ω(a₂..)) + Σ_{i=1}^{k} (−1)^i ω(.., [a_i, a_{i+1}], ..)
    ///  + (−1)^{k−1} ρ(ω(a₁..a_k), a_{k+1})` with `λ(X,u) = D_X u`, `ρ(u,X) = −D_X u`.
    pub fn hoch_differential(&self, omega: &DForm) -> DForm {
        let k = omega.degree;
        let field = self.carrier.field;
        DForm::from_fn(&self.carrier, k + 1, |a| {
            let mut acc = self.act(a[0], omega.value(&a[1..]));
            for i in 0..k {
                let mut merged: Vec<usize> = Vec::with_capacity(k);
                merged.extend_from_slice(&a[..i]);
                merged.push(0);
                merged.extend_from_slice(&a[i + 2..]);
                let v = omega.value_with(&merged, i, &self.brackets[a[i]][a[i + 1]]);
                axpy(&mut acc, &field.from_i64(sign((i + 1) % 2 == 1)), &v);
            }
            // (−1)^{k−1}·ρ = (−1)^k·D_{a_{k+1}}
            let last = self.act(a[k], omega.value(&a[..k]));
            axpy(&mut acc, &field.from_i64(sign(k % 2 == 1)), &last);
            acc
        })
    }

    /// `d_Ch = Alt ∘ d`, unnormalised.
    pub fn ce_differential(&self, omega: &DForm) -> DForm {
        self.hoch_differential(omega).alternate()
    }

    /// The usual Chevalley–Eilenberg formula
    /// `Σ_i (−1)^i D_{X_i} ω(..X̂_i..) + Σ_{i<j} (−1)^{i+j} ω([X_i, X_j], ..X̂_i..X̂_j..)`.
    pub fn explicit_differential(&self, omega: &DForm) -> DForm {
        let k = omega.degree;
        let field = self.carrier.field;
        DForm::from_fn(&self.carrier, k + 1, |a| {
            let mut acc = vec![field.zero(); self.carrier.dim];
            for i in 0..=k {
                let rest: Vec<usize> = a
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &x)| x)
                    .collect();
                let v = self.act(a[i], omega.value(&rest));
                axpy(&mut acc, &field.from_i64(sign(i % 2 == 1)), &v);
            }
            for i in 0..=k {
                for j in i + 1..=k {
                    let mut rest = vec![0usize];
                    rest.extend(
                        a.iter()
                            .enumerate()
                            .filter(|&(l, _)| l != i && l != j)
                            .map(|(_, &x)| x),
                    );
                    let v = omega.value_with(&rest, 0, &self.brackets[a[i]][a[j]]);
                    axpy(&mut acc, &field.from_i64(sign((i + j) % 2 == 1)), &v);
                }
            }
            acc
        })
    }

    /// `K(X, Y) = 2(D_X D_Y − D_Y D_X − D_{[X,Y]_C})` on `M`.
    pub fn curvature_k(&self, x: &[Scalar], y: &[Scalar], ta: &TorsionAlgebra) -> Matrix {
        let dx = self.carrier.derivation(x);
        let dy = self.carrier.derivation(y);
        let dxy = self.carrier.derivation(&ta.bracket(x, y));
        let two = self.carrier.field.from_i64(2);
        commutator_minus(&dx, &dy, &dxy).scale(&two)
    }

    /// `K(e_x, e_y)` from the cached bracket table.
    pub fn curvature_k_basis(&self, x: usize, y: usize) -> Matrix {
        let dx = &self.carrier.derivations[x];
        let dy = &self.carrier.derivations[y];
        let dxy = self.carrier.derivation(&self.brackets[x][y]);
        let two = self.carrier.field.from_i64(2);
        commutator_minus(dx, dy, &dxy).scale(&two)
    }

    /// First `(X, Y, u)` basis triple with `ddu(X,Y) ≠ K(X,Y)u`.
    pub fn ddu_witness(&self) -> Option<(usize, usize, usize)> {
        let (n, m) = (self.carrier.base_dim, self.carrier.dim);
        let field = self.carrier.field;
        let ks: Vec<Vec<Matrix>> = (0..n)
            .map(|x| (0..n).map(|y| self.curvature_k_basis(x, y)).collect())
            .collect();
        for u in 0..m {
            let mut e = vec![field.zero(); m];
            e[u] = field.one();
            let ddu = self.hoch_differential(&self.hoch_differential(&self.zero_form(&e)));
            for x in 0..n {
                for y in 0..n {
                    if ddu.value(&[x, y]) != mv(&ks[x][y], &e).as_slice() {
                        return Some((x, y, u));
                    }
                }
            }
        }
        None
    }

    /// `i_X ω(Y₁..) = ω(X, Y₁..)`.
    pub fn interior(&self, x: &[Scalar], omega: &DForm) -> Result<DForm> {
        if omega.degree == 0 {
            return Err(Error::DegreeUnderflow);
        }
        Ok(DForm::from_fn(&self.carrier, omega.degree - 1, |rest| {
            let mut args = vec![0usize];
            args.extend_from_slice(rest);
            omega.value_with(&args, 0, x)
        }))
    }

    /// `(L_X ω)(Z₁..Z_k) = D_X ω(Z₁..) − Σ_i ω(.., [X, Z_i], ..)`.
    pub fn lie_derivative(&self, x: &[Scalar], omega: &DForm) -> DForm {
        let dx = self.carrier.derivation(x);
        let field = self.carrier.field;
        let n = self.carrier.base_dim;
        // [X, e_c] for each basis c
        let bx: Vec<Vec<Scalar>> = (0..n)
            .map(|c| {
                let mut acc = vec![field.zero(); n];
                for (a, xa) in x.iter().enumerate() {
                    if !xa.is_zero() {
                        axpy(&mut acc, xa, &self.brackets[a][c]);
                    }
                }
                acc
            })
            .collect();
        let minus = field.from_i64(-1);
        DForm::from_fn(&self.carrier, omega.degree, |z| {
            let mut acc = mv(&dx, omega.value(z));
            for i in 0..z.len() {
                let v = omega.value_with(z, i, &bx[z[i]]);
                axpy(&mut acc, &minus, &v);
            }
            acc
        })
    }

    /// `d i_X ω + i_X d ω` for the differential `d`.
    pub fn cartan(&self, x: &[Scalar], omega: &DForm, d: impl Fn(&DForm) -> DForm) -> DForm {
        let tail = self.interior(x, &d(omega)).expect("degree ≥ 1");
        match self.interior(x, omega) {
            Ok(ix) => d(&ix).add(&tail),
            Err(_) => tail,
        }
    }

    /// First failure of `ω(…, φ_b X, …) = φ_b·ω(…, X, …)` over function basis, slots and
    /// basis tuples.
    pub fn multilinearity_witness(&self, omega: &DForm) -> Option<MultilinearityWitness> {
        let k = omega.degree;
        let n = self.carrier.base_dim;
        let tuples = n.pow(k as u32);
        let mut args = vec![0usize; k];
        for (b, (base, module)) in self
            .carrier
            .on_base
            .iter()
            .zip(&self.carrier.on_module)
            .enumerate()
        {
            for t in 0..tuples {
                decode(t, n, &mut args);
                let rhs = mv(module, omega.value(&args));
                for slot in 0..k {
                    let col: Vec<Scalar> =
                        (0..n).map(|r| base.get(r, args[slot]).clone()).collect();
                    if omega.value_with(&args, slot, &col) != rhs {
                        return Some(MultilinearityWitness {
                            function: b,
                            slot,
                            args: args.clone(),
                        });
                    }
                }
            }
        }
        None
    }

    /// Basis of the 1-forms `ω_a(X) = L_X ∘ a` (functions carrier) or `ω_a(X) = μ(X, a)`
    /// restricted to those that are `A`-linear; used as sample `A`-multilinear inputs.
    pub fn linear_one_forms(&self, ta: &TorsionAlgebra) -> Vec<DForm> {
        let m = self.carrier.dim;
        let field = self.carrier.field;
        let mut out = Vec::new();
        for a in 0..m {
            let form = match self.carrier.kind {
                CarrierKind::VectorFields => {
                    let mut e = vec![field.zero(); m];
                    e[a] = field.one();
                    DForm::from_fn(&self.carrier, 1, |x| {
                        ta.connection(&ta.algebra().basis_vector(x[0]), &e)
                    })
                }
                CarrierKind::Functions => {
                    let fa = &self.carrier.functions;
                    let phi = &fa.basis()[a];
                    DForm::from_fn(&self.carrier, 1, |x| {
                        let lx = ta.covariant(&ta.algebra().basis_vector(x[0]));
                        fa.coordinates(&lx.compose(phi))
                            .unwrap_or_else(|| vec![field.zero(); m])
                    })
                }
            };
            if self.multilinearity_witness(&form).is_none() {
                out.push(form);
            }
        }
        out
    }
}
