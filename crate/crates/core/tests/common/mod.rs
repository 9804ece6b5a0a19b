//! Independent oracles: naive evaluators written straight from the definitions, with no
//! shared code beyond coefficient access.
#![allow(dead_code)]

use algeo::{AlgebraSpec, Cochain, FieldSpec, Module, Scalar};

/// All `k`-tuples over `0..n`, first coordinate most significant.
pub fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |b| {
                    let mut t = t.clone();
                    t.push(b);
                    t
                })
            })
            .collect();
    }
    out
}

fn build(module: Module, degree: i64, value: impl Fn(&[usize]) -> Vec<Scalar>) -> Cochain {
    let arity = (degree + 1) as usize;
    let mut c = Cochain::zero(module, degree).unwrap();
    for args in tuples(module.dim, arity) {
        let v = value(&args);
        for (out, x) in v.iter().enumerate() {
            let idx = c.index_of(&args, out);
            c.set_coeff(idx, x);
        }
    }
    c
}

/// `(f ∘_i g)(a) = f(a_1, .., a_{i-1}, g(a_i, .., a_{i+q}), a_{i+q+1}, ..)`, expanded
/// linearly in the inserted argument.
pub fn naive_comp_i(f: &Cochain, g: &Cochain, i: usize) -> Cochain {
    let module = f.module();
    let n = module.dim;
    let q_arity = g.arity();
    build(module, f.degree() + g.degree(), |a| {
        let inner = g.value_on_basis(&a[i - 1..i - 1 + q_arity]);
        let mut acc = vec![module.field.zero(); n];
        for (b, coef) in inner.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let mut args = a[..i - 1].to_vec();
            args.push(b);
            args.extend_from_slice(&a[i - 1 + q_arity..]);
            for (o, v) in acc.iter_mut().zip(f.value_on_basis(&args)) {
                *o = &*o + &(coef * &v);
            }
        }
        acc
    })
}

fn sign(module: Module, negative: bool) -> Scalar {
    module.field.from_i64(if negative { -1 } else { 1 })
}

pub fn naive_comp(f: &Cochain, g: &Cochain) -> Cochain {
    let module = f.module();
    let mut out = Cochain::zero(module, f.degree() + g.degree()).unwrap();
    if f.degree() < 0 {
        return out;
    }
    for i in 1..=f.arity() {
        let s = sign(module, ((i as i64 - 1) * g.degree()).rem_euclid(2) == 1);
        out = out.add_scaled(&s, &naive_comp_i(f, g, i)).unwrap();
    }
    out
}

pub fn naive_bracket(f: &Cochain, g: &Cochain) -> Cochain {
    let s = sign(f.module(), (f.degree() * g.degree()).rem_euclid(2) == 1);
    naive_comp(f, g).sub(&naive_comp(g, f).scale(&s)).unwrap()
}

/// Nullity of a matrix by plain Gaussian elimination over the scalars' field.
pub fn nullity(mut rows: Vec<Vec<Scalar>>, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().unwrap();
        let pivot: Vec<Scalar> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let k = rows[r][c].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x = &*x - &(&k * y);
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    cols - rank
}

/// Dimension of `{φ : μ(φx, y) = φ μ(x, y)}` from the multiplication table alone.
/// Unknown `φ[r][c]` is the `e_r` coefficient of `φ(e_c)`, column `r * n + c`.
pub fn function_dimension(algebra: &AlgebraSpec) -> usize {
    let n = algebra.dim();
    let field = algebra.field();
    let mut rows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for k in 0..n {
                let mut row = vec![field.zero(); n * n];
                for r in 0..n {
                    let c = &algebra.mul_basis(r, y)[k];
                    row[r * n + x] = &row[r * n + x] + c;
                }
                for (m, c) in algebra.mul_basis(x, y).iter().enumerate() {
                    row[k * n + m] = &row[k * n + m] - c;
                }
                rows.push(row);
            }
        }
    }
    nullity(rows, n * n)
}

/// Counts functions by enumerating every endomorphism over a small prime field.
pub fn brute_force_function_count(algebra: &AlgebraSpec) -> u64 {
    let n = algebra.dim();
    let p = algebra.field().modulus().expect("prime field");
    let field = algebra.field();
    let total = p.pow((n * n) as u32);
    let table: Vec<Vec<Vec<u64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    algebra
                        .mul_basis(i, j)
                        .iter()
                        .map(|c| residue(c, field))
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut count = 0;
    let mut phi = vec![0u64; n * n];
    for code in 0..total {
        let mut c = code;
        for e in phi.iter_mut() {
            *e = c % p;
            c /= p;
        }
        // phi[r * n + col] is the e_r coefficient of phi(e_col).
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|k| {
                    let lhs: u64 = (0..n).map(|r| phi[r * n + x] * table[r][y][k]).sum::<u64>() % p;
                    let rhs: u64 = (0..n).map(|m| table[x][y][m] * phi[k * n + m]).sum::<u64>() % p;
                    lhs == rhs
                })
            })
        });
        if ok {
            count += 1;
        }
    }
    count
}

fn residue(c: &Scalar, field: FieldSpec) -> u64 {
    let p = field.modulus().unwrap();
    (0..p).find(|&r| field.from_i64(r as i64) == *c).unwrap()
}

pub fn q() -> FieldSpec {
    FieldSpec::Rational
}

pub fn f7() -> FieldSpec {
    FieldSpec::prime(7).unwrap()
}
