//! Field-specialized dense coefficient storage and the contraction loops behind the
//! cochain calculus. Rational coefficients are stored unboxed as `BigRational`, prime
//! field coefficients as raw residues, so the inner loops never match on a scalar enum.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{FieldSpec, Scalar};

pub(crate) trait Ops {
    type E: Clone + PartialEq;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add_assign(&self, acc: &mut Self::E, a: &Self::E);
    fn sub_assign(&self, acc: &mut Self::E, a: &Self::E);
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;

    fn mul_add_assign(&self, acc: &mut Self::E, a: &Self::E, b: &Self::E) {
        let t = self.mul(a, b);
        self.add_assign(acc, &t);
    }

    fn mul_sub_assign(&self, acc: &mut Self::E, a: &Self::E, b: &Self::E) {
        let t = self.mul(a, b);
        self.sub_assign(acc, &t);
    }
}

pub(crate) struct RatOps;

impl Ops for RatOps {
    type E = BigRational;
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add_assign(&self, acc: &mut BigRational, a: &BigRational) {
        *acc += a;
    }
    fn sub_assign(&self, acc: &mut BigRational, a: &BigRational) {
        *acc -= a;
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        // Integer fast path: skips the gcd normalisation on the common case.
        if a.denom().is_one() && b.denom().is_one() {
            BigRational::from_integer(a.numer() * b.numer())
        } else {
            a * b
        }
    }
    fn mul_add_assign(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        if acc.denom().is_one() && a.denom().is_one() && b.denom().is_one() {
            let (mut n, d) = std::mem::replace(acc, BigRational::zero()).into_raw();
            n += a.numer() * b.numer();
            *acc = BigRational::new_raw(n, d);
        } else {
            *acc += self.mul(a, b);
        }
    }
    fn mul_sub_assign(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        if acc.denom().is_one() && a.denom().is_one() && b.denom().is_one() {
            let (mut n, d) = std::mem::replace(acc, BigRational::zero()).into_raw();
            n -= a.numer() * b.numer();
            *acc = BigRational::new_raw(n, d);
        } else {
            *acc -= self.mul(a, b);
        }
    }
}

#[derive(Clone, Copy)]
pub(crate) struct ModOps(pub u64);

impl Ops for ModOps {
    type E = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add_assign(&self, acc: &mut u64, a: &u64) {
        *acc = (*acc + a) % self.0;
    }
    fn sub_assign(&self, acc: &mut u64, a: &u64) {
        *acc = (*acc + self.0 - a) % self.0;
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
}

/// Dense coefficient array over one field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Coeffs {
    Rational(Vec<BigRational>),
    Prime(u64, Vec<u64>),
}

impl Coeffs {
    pub fn zeros(field: FieldSpec, len: usize) -> Coeffs {
        match field {
            FieldSpec::Rational => Coeffs::Rational(vec![BigRational::zero(); len]),
            FieldSpec::Prime(p) => Coeffs::Prime(p, vec![0; len]),
        }
    }

    pub fn from_scalars(field: FieldSpec, values: &[Scalar]) -> Coeffs {
        match field {
            FieldSpec::Rational => Coeffs::Rational(
                values
                    .iter()
                    .map(|s| match s {
                        Scalar::Rational(r) => r.clone(),
                        _ => panic!("expected a rational scalar"),
                    })
                    .collect(),
            ),
            FieldSpec::Prime(p) => Coeffs::Prime(
                p,
                values
                    .iter()
                    .map(|s| match s {
                        Scalar::Prime { value, modulus } if *modulus == p => *value,
                        _ => panic!("expected a scalar mod {p}"),
                    })
                    .collect(),
            ),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Coeffs::Rational(v) => v.len(),
            Coeffs::Prime(_, v) => v.len(),
        }
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self {
            Coeffs::Rational(v) => Scalar::Rational(v[i].clone()),
            Coeffs::Prime(p, v) => Scalar::Prime {
                value: v[i],
                modulus: *p,
            },
        }
    }

    pub fn set(&mut self, i: usize, s: &Scalar) {
        match (self, s) {
            (Coeffs::Rational(v), Scalar::Rational(r)) => v[i] = r.clone(),
            (Coeffs::Prime(p, v), Scalar::Prime { value, modulus }) if p == modulus => {
                v[i] = *value
            }
            _ => panic!("coefficient field mismatch"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeffs::Rational(v) => v.iter().all(Zero::is_zero),
            Coeffs::Prime(_, v) => v.iter().all(|x| *x == 0),
        }
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    pub fn nonzero_count(&self) -> usize {
        match self {
            Coeffs::Rational(v) => v.iter().filter(|x| !x.is_zero()).count(),
            Coeffs::Prime(_, v) => v.iter().filter(|x| **x != 0).count(),
        }
    }

    /// `self += k * other`.
    pub fn axpy(&mut self, k: &Scalar, other: &Coeffs) {
        match (self, other, k) {
            (Coeffs::Rational(a), Coeffs::Rational(b), Scalar::Rational(k)) => {
                axpy_generic(&RatOps, a, k, b)
            }
            (Coeffs::Prime(p, a), Coeffs::Prime(_, b), Scalar::Prime { value, .. }) => {
                axpy_generic(&ModOps(*p), a, value, b)
            }
            _ => panic!("coefficient field mismatch"),
        }
    }

    pub fn scaled(&self, k: &Scalar) -> Coeffs {
        let mut out = match self {
            Coeffs::Rational(v) => Coeffs::Rational(vec![BigRational::zero(); v.len()]),
            Coeffs::Prime(p, v) => Coeffs::Prime(*p, vec![0; v.len()]),
        };
        out.axpy(k, self);
        out
    }
}

fn axpy_generic<O: Ops>(ops: &O, acc: &mut [O::E], k: &O::E, other: &[O::E]) {
    if ops.is_zero(k) {
        return;
    }
    for (a, b) in acc.iter_mut().zip(other) {
        if !ops.is_zero(b) {
            ops.mul_add_assign(a, k, b);
        }
    }
}

/// Geometry of a single-slot insertion `f ∘_slot g` on an `n`-dimensional module.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Insertion {
    pub n: usize,
    pub f_arity: usize,
    pub g_arity: usize,
    /// 1-based slot of `f` receiving `g`.
    pub slot: usize,
}

/// Accumulates `sign * (f ∘_slot g)` into `out`.
///
/// Layout: an arity-`k` cochain stores `n^k * n` coefficients, indexed by the argument
/// tuple in mixed radix (first argument most significant) followed by the output index.
/// Writing the result index as `[P, M, S, o]` with `P` the first `slot - 1` arguments,
/// `M` the arguments consumed by `g` and `S` the rest, the contraction is
/// `out[P, M, S, o] += Σ_b g[M, b] f[P, b, S, o]`, and the `(S, o)` block is
/// contiguous in both `f` and `out`.
pub(crate) fn insert_accumulate<O: Ops>(
    ops: &O,
    out: &mut [O::E],
    f: &[O::E],
    g: &[O::E],
    geom: Insertion,
    negate: bool,
) {
    let n = geom.n;
    let prefix = n.pow(geom.slot as u32 - 1);
    let middle = n.pow(geom.g_arity as u32);
    let block = n.pow((geom.f_arity - geom.slot) as u32) * n;
    for pi in 0..prefix {
        for mi in 0..middle {
            let out_base = (pi * middle + mi) * block;
            let out_block = &mut out[out_base..out_base + block];
            for b in 0..n {
                let gv = &g[mi * n + b];
                if ops.is_zero(gv) {
                    continue;
                }
                let f_base = (pi * n + b) * block;
                let f_block = &f[f_base..f_base + block];
                for (o, fv) in out_block.iter_mut().zip(f_block) {
                    if ops.is_zero(fv) {
                        continue;
                    }
                    if negate {
                        ops.mul_sub_assign(o, gv, fv);
                    } else {
                        ops.mul_add_assign(o, gv, fv);
                    }
                }
            }
        }
    }
}

/// Accumulates `sign * f∘σ` into `out`, where `(f∘σ)(a_1..a_k) = f(a_σ(1)..a_σ(k))`.
/// `perm` is 0-based.
pub(crate) fn permute_accumulate<O: Ops>(
    ops: &O,
    out: &mut [O::E],
    f: &[O::E],
    n: usize,
    perm: &[usize],
    negate: bool,
) {
    let k = perm.len();
    let tuples = n.pow(k as u32);
    let mut args = vec![0usize; k];
    let mut strides = vec![0usize; k];
    for (i, s) in strides.iter_mut().enumerate() {
        *s = n.pow((k - 1 - i) as u32) * n;
    }
    for t in 0..tuples {
        // decode t into args (first most significant)
        let mut rem = t;
        for i in (0..k).rev() {
            args[i] = rem % n;
            rem /= n;
        }
        let src: usize = (0..k).map(|i| args[perm[i]] * strides[i]).sum();
        let dst = t * n;
        for o in 0..n {
            let v = &f[src + o];
            if ops.is_zero(v) {
                continue;
            }
            if negate {
                ops.sub_assign(&mut out[dst + o], v);
            } else {
                ops.add_assign(&mut out[dst + o], v);
            }
        }
    }
}
