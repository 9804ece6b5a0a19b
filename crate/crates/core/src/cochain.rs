//! Hochschild cochains of a finite-dimensional module and the comp calculus on them.
//!
//! A cochain of degree `p >= -1` is a multilinear map `A^{⊗(p+1)} → A`; degree `-1`
//! cochains are the elements of `A`. Coefficients are stored densely, indexed by the
//! argument tuple in mixed radix (first argument most significant) followed by the
//! output coordinate.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::algebra::Module;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::kernel::{insert_accumulate, permute_accumulate, Coeffs, Insertion};
use crate::linalg::Matrix;

pub const DEFAULT_BUDGET: usize = 10_000_000;

static BUDGET: AtomicUsize = AtomicUsize::new(DEFAULT_BUDGET);

/// Maximum number of scalars a single cochain may hold.
pub fn budget() -> usize {
    BUDGET.load(Ordering::Relaxed)
}

pub fn set_budget(scalars: usize) {
    BUDGET.store(scalars, Ordering::Relaxed);
}

/// Coefficient count of a degree `degree` cochain on `module`, checked against the budget.
pub fn coefficient_count(module: Module, degree: i64) -> Result<usize> {
    if degree < -1 {
        return Err(Error::DegreeOutOfRange(degree));
    }
    let requested = (module.dim as u128).pow((degree + 2) as u32);
    let budget = budget();
    if requested > budget as u128 {
        return Err(Error::BudgetExceeded { requested, budget });
    }
    Ok(requested as usize)
}

fn parity(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    module: Module,
    degree: i64,
    coeffs: Coeffs,
}

impl Cochain {
    pub fn zero(module: Module, degree: i64) -> Result<Cochain> {
        let len = coefficient_count(module, degree)?;
        Ok(Cochain {
            module,
            degree,
            coeffs: Coeffs::zeros(module.field, len),
        })
    }

    pub fn from_scalars(module: Module, degree: i64, values: Vec<Scalar>) -> Result<Cochain> {
        let len = coefficient_count(module, degree)?;
        if values.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                got: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|s| s.spec() != module.field) {
            return Err(Error::MixedFields(
                module.field.to_string(),
                bad.spec().to_string(),
            ));
        }
        Ok(Cochain {
            module,
            degree,
            coeffs: Coeffs::from_scalars(module.field, &values),
        })
    }

    /// An element of `A` as a degree `-1` cochain.
    pub fn element(module: Module, v: &[Scalar]) -> Result<Cochain> {
        Cochain::from_scalars(module, -1, v.to_vec())
    }

    /// The identity map `I ∈ C^0`.
    pub fn identity(module: Module) -> Cochain {
        let n = module.dim;
        let mut c = Cochain::zero(module, 0).expect("identity fits any budget");
        for i in 0..n {
            c.coeffs.set(i * n + i, &module.field.one());
        }
        c
    }

    /// The basis cochain with a single 1 at flat coefficient index `index`.
    pub fn basis(module: Module, degree: i64, index: usize) -> Result<Cochain> {
        let mut c = Cochain::zero(module, degree)?;
        if index >= c.len() {
            return Err(Error::DimensionMismatch {
                expected: c.len(),
                got: index,
            });
        }
        c.coeffs.set(index, &module.field.one());
        Ok(c)
    }

    pub fn module(&self) -> Module {
        self.module
    }
    pub fn field(&self) -> FieldSpec {
        self.module.field
    }
    pub fn dim(&self) -> usize {
        self.module.dim
    }
    pub fn degree(&self) -> i64 {
        self.degree
    }
    pub fn arity(&self) -> usize {
        (self.degree + 1) as usize
    }
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }
    pub fn is_empty(&self) -> bool {
        self.coeffs.len() == 0
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }
    pub fn nonzero_count(&self) -> usize {
        self.coeffs.nonzero_count()
    }

    pub fn coeff(&self, index: usize) -> Scalar {
        self.coeffs.get(index)
    }

    pub fn set_coeff(&mut self, index: usize, value: &Scalar) {
        self.coeffs.set(index, value);
    }

    /// Flat index of `(args, out)`.
    pub fn index_of(&self, args: &[usize], out: usize) -> usize {
        let n = self.dim();
        args.iter().fold(0, |acc, a| acc * n + a) * n + out
    }

    /// Decodes a flat index into `(args, out)`.
    pub fn decode_index(&self, index: usize) -> (Vec<usize>, usize) {
        let n = self.dim();
        let out = index % n;
        let mut rest = index / n;
        let mut args = vec![0; self.arity()];
        for a in args.iter_mut().rev() {
            *a = rest % n;
            rest /= n;
        }
        (args, out)
    }

    /// Value on basis arguments: `f(e_{args[0]}, …)` as a vector.
    pub fn value_on_basis(&self, args: &[usize]) -> Vec<Scalar> {
        let base = self.index_of(args, 0);
        (0..self.dim()).map(|o| self.coeffs.get(base + o)).collect()
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        self.coeffs.to_scalars()
    }

    /// Coefficients of a degree `-1` cochain, i.e. the element itself.
    pub fn as_vector(&self) -> Option<Vec<Scalar>> {
        (self.degree == -1).then(|| self.to_scalars())
    }

    fn compatible(&self, other: &Cochain) -> Result<()> {
        if self.module != other.module {
            return Err(Error::MixedAlgebras(
                self.module.to_string(),
                other.module.to_string(),
            ));
        }
        Ok(())
    }

    fn same_shape(&self, other: &Cochain) -> Result<()> {
        self.compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: other.arity(),
            });
        }
        Ok(())
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, k: &Scalar, other: &Cochain) -> Result<Cochain> {
        self.same_shape(other)?;
        let mut out = self.clone();
        out.coeffs.axpy(k, &other.coeffs);
        Ok(out)
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.add_scaled(&self.field().one(), other)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add_scaled(&self.field().from_i64(-1), other)
    }

    pub fn scale(&self, k: &Scalar) -> Cochain {
        Cochain {
            module: self.module,
            degree: self.degree,
            coeffs: self.coeffs.scaled(k),
        }
    }

    pub fn scale_int(&self, k: i64) -> Cochain {
        self.scale(&self.field().from_i64(k))
    }

    pub fn neg(&self) -> Cochain {
        self.scale_int(-1)
    }

    /// Evaluates on degree `-1` arguments, contracting the innermost argument first.
    pub fn eval(&self, args: &[Cochain]) -> Result<Cochain> {
        if args.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: args.len(),
            });
        }
        let mut acc = self.clone();
        for (slot, a) in args.iter().enumerate().rev() {
            if a.degree != -1 {
                return Err(Error::ArityMismatch {
                    expected: 0,
                    got: a.arity(),
                });
            }
            acc = comp_i(&acc, a, slot + 1)?;
        }
        Ok(acc)
    }

    /// Evaluates on plain vectors.
    pub fn eval_vectors(&self, args: &[&[Scalar]]) -> Result<Vec<Scalar>> {
        let elems = args
            .iter()
            .map(|v| Cochain::element(self.module, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval(&elems)?.to_scalars())
    }

    /// Input slots permuted: `(f∘σ)(a_1..a_k) = f(a_σ(1)..a_σ(k))`, `perm` 0-based.
    pub fn permute_args(&self, perm: &[usize]) -> Result<Cochain> {
        if perm.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: perm.len(),
            });
        }
        let mut out = Cochain::zero(self.module, self.degree)?;
        accumulate_permutation(&mut out, self, perm, false);
        Ok(out)
    }
}

/// Single insertion `f ∘_slot g`: `g` fills input `slot` (1-based) of `f`, no sign.
pub fn comp_i(f: &Cochain, g: &Cochain, slot: usize) -> Result<Cochain> {
    f.compatible(g)?;
    if f.degree < 0 || slot == 0 || slot > f.arity() {
        return Err(Error::SlotOutOfRange {
            slot,
            arity: f.arity(),
        });
    }
    let mut out = Cochain::zero(f.module, f.degree + g.degree)?;
    let geom = Insertion {
        n: f.dim(),
        f_arity: f.arity(),
        g_arity: g.arity(),
        slot,
    };
    accumulate_insertion(&mut out, f, g, geom, false);
    Ok(out)
}

fn accumulate_insertion(
    out: &mut Cochain,
    f: &Cochain,
    g: &Cochain,
    geom: Insertion,
    negate: bool,
) {
    match (&mut out.coeffs, &f.coeffs, &g.coeffs) {
        (Coeffs::Rational(o), Coeffs::Rational(a), Coeffs::Rational(b)) => {
            insert_accumulate(&crate::kernel::RatOps, o, a, b, geom, negate)
        }
        (Coeffs::Prime(p, o), Coeffs::Prime(_, a), Coeffs::Prime(_, b)) => {
            insert_accumulate(&crate::kernel::ModOps(*p), o, a, b, geom, negate)
        }
        _ => unreachable!("same module implies same field"),
    }
}

fn accumulate_permutation(out: &mut Cochain, f: &Cochain, perm: &[usize], negate: bool) {
    let n = f.dim();
    match (&mut out.coeffs, &f.coeffs) {
        (Coeffs::Rational(o), Coeffs::Rational(a)) => {
            permute_accumulate(&crate::kernel::RatOps, o, a, n, perm, negate)
        }
        (Coeffs::Prime(p, o), Coeffs::Prime(_, a)) => {
            permute_accumulate(&crate::kernel::ModOps(*p), o, a, n, perm, negate)
        }
        _ => unreachable!("same module implies same field"),
    }
}

/// Gerstenhaber's comp: `f∘g = Σ_{i=1}^{p+1} (−1)^{(i−1)q} f ∘_i g`, zero when `p = −1`.
pub fn comp(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    f.compatible(g)?;
    let mut out = Cochain::zero(f.module, f.degree + g.degree)?;
    if f.degree == -1 {
        return Ok(out);
    }
    for slot in 1..=f.arity() {
        let geom = Insertion {
            n: f.dim(),
            f_arity: f.arity(),
            g_arity: g.arity(),
            slot,
        };
        let negate = parity((slot as i64 - 1) * g.degree);
        accumulate_insertion(&mut out, f, g, geom, negate);
    }
    Ok(out)
}

/// Simultaneous insertion of `g` into slot `i` and `h` into slot `j` of `f`
/// (both slot numbers refer to `f`'s original inputs).
pub fn insert_pair(f: &Cochain, g: &Cochain, h: &Cochain, i: usize, j: usize) -> Result<Cochain> {
    f.compatible(g)?;
    f.compatible(h)?;
    let arity = if f.degree < 0 { 0 } else { f.arity() };
    for s in [i, j] {
        if s == 0 || s > arity {
            return Err(Error::SlotOutOfRange { slot: s, arity });
        }
    }
    if i == j {
        return Err(Error::SlotCollision(i));
    }
    if i < j {
        comp_i(&comp_i(f, h, j)?, g, i)
    } else {
        comp_i(&comp_i(f, g, i)?, h, j)
    }
}

/// Graded commutator `[f, g] = f∘g − (−1)^{pq} g∘f`.
pub fn bracket(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let fg = comp(f, g)?;
    let gf = comp(g, f)?;
    if parity(f.degree * g.degree) {
        fg.add(&gf)
    } else {
        fg.sub(&gf)
    }
}

/// Associator of comp: `(f∘g)∘h − f∘(g∘h)`.
pub fn associator3(f: &Cochain, g: &Cochain, h: &Cochain) -> Result<Cochain> {
    comp(&comp(f, g)?, h)?.sub(&comp(f, &comp(g, h)?)?)
}

/// Returns `(μ₊, μ₋)` with `μ₊(a,b) = μ(a,b) + μ(b,a)` and `μ₋(a,b) = μ(a,b) − μ(b,a)`,
/// so `μ₊ + μ₋ = 2μ`.
pub fn split_mu(f: &Cochain) -> Result<(Cochain, Cochain)> {
    if f.arity() != 2 || f.degree != 1 {
        return Err(Error::ArityMismatch {
            expected: 2,
            got: f.arity(),
        });
    }
    let swapped = f.permute_args(&[1, 0])?;
    Ok((f.add(&swapped)?, f.sub(&swapped)?))
}

/// All permutations of `0..k` with their parity (`true` = odd), in lexicographic order.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let inversions = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        out.push((perm.clone(), inversions % 2 == 1));
        // next lexicographic permutation
        let Some(i) = (0..k.saturating_sub(1))
            .rev()
            .find(|&i| perm[i] < perm[i + 1])
        else {
            break;
        };
        let j = (i + 1..k)
            .rev()
            .find(|&j| perm[j] > perm[i])
            .expect("exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    out
}

/// Ungraded alternation over input slots, without normalisation:
/// `Σ_σ sgn(σ) f∘σ`.
pub fn alt_cochain(f: &Cochain) -> Result<Cochain> {
    let k = if f.degree < 0 { 0 } else { f.arity() };
    let mut out = Cochain::zero(f.module, f.degree)?;
    for (perm, odd) in permutations(k) {
        accumulate_permutation(&mut out, f, &perm, odd);
    }
    Ok(out)
}

/// Graded alternation of a trilinear operation on homogeneous cochains:
/// `Σ_{σ∈S₃} sgn(σ) · κ(σ) · op(x_σ(1), x_σ(2), x_σ(3))`, where the Koszul sign `κ(σ)`
/// is the product of `(−1)^{|a||b|}` over the pairs the permutation inverts.
pub fn graded_alt3<F>(op: F, f: &Cochain, g: &Cochain, h: &Cochain) -> Result<Cochain>
where
    F: Fn(&Cochain, &Cochain, &Cochain) -> Result<Cochain>,
{
    let xs = [f, g, h];
    let mut acc: Option<Cochain> = None;
    for (perm, odd) in permutations(3) {
        let mut negative = odd;
        for i in 0..3 {
            for j in i + 1..3 {
                if perm[i] > perm[j] && parity(xs[perm[i]].degree * xs[perm[j]].degree) {
                    negative = !negative;
                }
            }
        }
        let term = op(xs[perm[0]], xs[perm[1]], xs[perm[2]])?;
        let k = term.field().from_i64(if negative { -1 } else { 1 });
        acc = Some(match acc {
            None => term.scale(&k),
            Some(a) => a.add_scaled(&k, &term)?,
        });
    }
    Ok(acc.expect("S3 is nonempty"))
}

/// An endomorphism of the underlying module, stored as a matrix acting on column
/// vectors (row = output coordinate, column = input coordinate).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    module: Module,
    matrix: Matrix,
}

impl Endomorphism {
    pub fn from_matrix(module: Module, matrix: Matrix) -> Result<Endomorphism> {
        if matrix.rows() != module.dim || matrix.cols() != module.dim {
            return Err(Error::DimensionMismatch {
                expected: module.dim,
                got: matrix.rows().max(matrix.cols()),
            });
        }
        if matrix.field() != module.field {
            return Err(Error::MixedFields(
                module.field.to_string(),
                matrix.field().to_string(),
            ));
        }
        Ok(Endomorphism { module, matrix })
    }

    pub fn identity(module: Module) -> Endomorphism {
        Endomorphism {
            module,
            matrix: Matrix::identity(module.field, module.dim),
        }
    }

    pub fn zero(module: Module) -> Endomorphism {
        Endomorphism {
            module,
            matrix: Matrix::zeros(module.field, module.dim, module.dim),
        }
    }

    /// Builds the matrix whose `j`-th column is `image(e_j)`.
    pub fn from_columns(module: Module, image: impl Fn(usize) -> Vec<Scalar>) -> Endomorphism {
        let n = module.dim;
        let mut m = Matrix::zeros(module.field, n, n);
        for j in 0..n {
            for (i, v) in image(j).into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Endomorphism { module, matrix: m }
    }

    /// Entries of a row-major flattened `n×n` matrix.
    pub fn from_flat(module: Module, entries: &[Scalar]) -> Result<Endomorphism> {
        let n = module.dim;
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        let rows = entries.chunks(n).map(<[Scalar]>::to_vec).collect();
        Endomorphism::from_matrix(module, Matrix::from_rows(module.field, rows)?)
    }

    pub fn module(&self) -> Module {
        self.module
    }
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
    pub fn flat(&self) -> Vec<Scalar> {
        self.matrix.entries().to_vec()
    }
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix
            .mul_vec(v)
            .expect("dimension checked at construction")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism {
            module: self.module,
            matrix: self.matrix.mul(&other.matrix).expect("same module"),
        }
    }

    pub fn add(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism {
            module: self.module,
            matrix: self.matrix.add(&other.matrix).expect("same module"),
        }
    }

    pub fn sub(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism {
            module: self.module,
            matrix: self.matrix.sub(&other.matrix).expect("same module"),
        }
    }

    pub fn scale(&self, k: &Scalar) -> Endomorphism {
        Endomorphism {
            module: self.module,
            matrix: self.matrix.scale(k),
        }
    }

    /// `self ∘ other − other ∘ self`.
    pub fn commutator(&self, other: &Endomorphism) -> Endomorphism {
        self.compose(other).sub(&other.compose(self))
    }

    /// The same map as a degree 0 cochain.
    pub fn to_cochain(&self) -> Cochain {
        let n = self.module.dim;
        let mut c = Cochain::zero(self.module, 0).expect("degree 0 fits");
        for a in 0..n {
            for o in 0..n {
                c.set_coeff(a * n + o, self.matrix.get(o, a));
            }
        }
        c
    }

    pub fn from_cochain(c: &Cochain) -> Result<Endomorphism> {
        if c.degree() != 0 {
            return Err(Error::ArityMismatch {
                expected: 1,
                got: c.arity(),
            });
        }
        Ok(Endomorphism::from_columns(c.module(), |j| {
            c.value_on_basis(&[j])
        }))
    }
}
