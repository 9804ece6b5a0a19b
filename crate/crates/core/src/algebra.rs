//! Finite-dimensional algebras given by sparse structure constants.

use std::collections::BTreeMap;
use std::fmt;

use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{rref, Matrix};

/// Sparse structure constants: `(i, j, k) -> c` meaning `m(e_i, e_j) = Σ_k c e_k`.
pub type StructureConstants = BTreeMap<(usize, usize, usize), Scalar>;

/// The underlying module `k^n` that cochains act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Module {
    pub field: FieldSpec,
    pub dim: usize,
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.field, self.dim)
    }
}

impl Module {
    pub fn new(field: FieldSpec, dim: usize) -> Module {
        Module { field, dim }
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }
}

/// A finite-dimensional algebra `(C, μ)` with an optional independent Lie bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    name: String,
    module: Module,
    basis_names: Vec<String>,
    mu: StructureConstants,
    bracket: Option<StructureConstants>,
}

impl AlgebraSpec {
    /// Validates indices, coefficient fields and (when supplied) antisymmetry and the
    /// Jacobi identity of the bracket.
    pub fn new(
        name: impl Into<String>,
        field: FieldSpec,
        basis_names: Vec<String>,
        mu: StructureConstants,
        bracket: Option<StructureConstants>,
    ) -> Result<AlgebraSpec> {
        let dim = basis_names.len();
        if dim == 0 {
            return Err(Error::Validation("dimension must be positive".into()));
        }
        let check = |label: &str, table: &StructureConstants| -> Result<()> {
            for (&(i, j, k), c) in table {
                if i >= dim || j >= dim || k >= dim {
                    return Err(Error::Validation(format!(
                        "{label} index ({i},{j},{k}) out of range for dimension {dim}"
                    )));
                }
                if c.spec() != field {
                    return Err(Error::Validation(format!(
                        "{label} coefficient at ({i},{j},{k}) is over {} not {field}",
                        c.spec()
                    )));
                }
                if c.is_zero() {
                    return Err(Error::Validation(format!(
                        "{label} coefficient at ({i},{j},{k}) is zero; sparse entries must be nonzero"
                    )));
                }
            }
            Ok(())
        };
        check("mu", &mu)?;
        let alg = AlgebraSpec {
            name: name.into(),
            module: Module::new(field, dim),
            basis_names,
            mu,
            bracket: None,
        };
        let Some(br) = bracket else {
            return Ok(alg);
        };
        check("bracket", &br)?;
        let alg = AlgebraSpec {
            bracket: Some(br),
            ..alg
        };
        alg.validate_bracket()?;
        Ok(alg)
    }

    fn validate_bracket(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let a = self.bracket_basis(i, j);
                let b = self.bracket_basis(j, i);
                if a.iter().zip(&b).any(|(x, y)| !(x + y).is_zero()) {
                    return Err(Error::Validation(format!(
                        "bracket is not antisymmetric at ({}, {})",
                        self.basis_names[i], self.basis_names[j]
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (
                        self.module.basis_vector(i),
                        self.module.basis_vector(j),
                        self.module.basis_vector(k),
                    );
                    let t1 = self.bracket(&x, &self.bracket(&y, &z));
                    let t2 = self.bracket(&y, &self.bracket(&z, &x));
                    let t3 = self.bracket(&z, &self.bracket(&x, &y));
                    if t1
                        .iter()
                        .zip(&t2)
                        .zip(&t3)
                        .any(|((a, b), c)| !(&(a + b) + c).is_zero())
                    {
                        return Err(Error::Validation(format!(
                            "bracket violates the Jacobi identity at ({}, {}, {})",
                            self.basis_names[i], self.basis_names[j], self.basis_names[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn field(&self) -> FieldSpec {
        self.module.field
    }
    pub fn dim(&self) -> usize {
        self.module.dim
    }
    pub fn module(&self) -> Module {
        self.module
    }
    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }
    pub fn mu_constants(&self) -> &StructureConstants {
        &self.mu
    }
    /// The explicitly supplied bracket, if any.
    pub fn bracket_constants(&self) -> Option<&StructureConstants> {
        self.bracket.as_ref()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        self.module.basis_vector(i)
    }

    fn apply_table(&self, table: &StructureConstants, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.module.zero_vector();
        for (&(i, j, k), c) in table {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            out[k] = &out[k] + &(&(&x[i] * &y[j]) * c);
        }
        out
    }

    /// `μ(x, y)`.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.apply_table(&self.mu, x, y)
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.mul(&self.basis_vector(i), &self.basis_vector(j))
    }

    /// `μ₋(x, y) = μ(x, y) − μ(y, x)`.
    pub fn commutator(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let a = self.mul(x, y);
        let b = self.mul(y, x);
        a.iter().zip(&b).map(|(p, q)| p - q).collect()
    }

    /// The Lie bracket `[x, y]_C`: the supplied bracket, or the commutator `μ₋`.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        match &self.bracket {
            Some(t) => self.apply_table(t, x, y),
            None => self.commutator(x, y),
        }
    }

    fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.bracket(&self.basis_vector(i), &self.basis_vector(j))
    }

    fn table_cochain(&self, table: &StructureConstants) -> Cochain {
        let n = self.dim();
        let mut values = vec![self.field().zero(); n * n * n];
        for (&(i, j, k), c) in table {
            values[(i * n + j) * n + k] = c.clone();
        }
        Cochain::from_scalars(self.module, 1, values).expect("structure constants fit")
    }

    /// The multiplication as a degree 1 cochain.
    pub fn mu_cochain(&self) -> Cochain {
        self.table_cochain(&self.mu)
    }

    /// The Lie bracket as a degree 1 cochain (supplied, or `μ₋`).
    pub fn bracket_cochain(&self) -> Cochain {
        match &self.bracket {
            Some(t) => self.table_cochain(t),
            None => {
                let (_, skew) = crate::cochain::split_mu(&self.mu_cochain()).expect("binary");
                skew
            }
        }
    }

    /// Two-sided unit, if one exists.
    pub fn unit(&self) -> Option<Vec<Scalar>> {
        let n = self.dim();
        let field = self.field();
        // Unknown e: e·e_j = e_j and e_j·e = e_j for all j.
        let mut rows = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for k in 0..n {
                let target = if j == k { field.one() } else { field.zero() };
                let mut left = vec![field.zero(); n + 1];
                let mut right = vec![field.zero(); n + 1];
                for i in 0..n {
                    if let Some(c) = self.mu.get(&(i, j, k)) {
                        left[i] = c.clone();
                    }
                    if let Some(c) = self.mu.get(&(j, i, k)) {
                        right[i] = c.clone();
                    }
                }
                left[n] = target.clone();
                right[n] = target;
                rows.push(left);
                rows.push(right);
            }
        }
        let m = Matrix::from_rows(field, rows).expect("rectangular");
        let ech = rref(&m);
        if ech.pivots.contains(&n) {
            return None;
        }
        let mut e = vec![field.zero(); n];
        for (row, &p) in ech.pivots.iter().enumerate() {
            e[p] = ech.matrix.get(row, n).clone();
        }
        Some(e)
    }

    /// Renders an element as `c·name + …` using the basis names.
    pub fn format_element(&self, v: &[Scalar]) -> String {
        let terms: Vec<String> = v
            .iter()
            .zip(&self.basis_names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, name)| {
                if c.is_one() {
                    name.clone()
                } else {
                    format!("{c}*{name}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    #[test]
    fn rejects_out_of_range_and_zero_entries() {
        let q = FieldSpec::Rational;
        let mut mu = StructureConstants::new();
        mu.insert((0, 2, 0), q.one());
        assert!(matches!(
            AlgebraSpec::new("bad", q, names(2), mu, None),
            Err(Error::Validation(_))
        ));
        let mut mu = StructureConstants::new();
        mu.insert((0, 0, 0), q.zero());
        assert!(AlgebraSpec::new("bad", q, names(1), mu, None).is_err());
    }

    #[test]
    fn rejects_non_jacobi_bracket() {
        // [e0,e1] = e1, [e0,e2] = e0 fails Jacobi on a 3-dim space.
        let q = FieldSpec::Rational;
        let mut br = StructureConstants::new();
        let one = q.one();
        let m1 = q.from_i64(-1);
        br.insert((0, 1, 1), one.clone());
        br.insert((1, 0, 1), m1.clone());
        br.insert((0, 2, 0), one.clone());
        br.insert((2, 0, 0), m1.clone());
        br.insert((1, 2, 2), one);
        br.insert((2, 1, 2), m1);
        let err = AlgebraSpec::new("broken", q, names(3), StructureConstants::new(), Some(br))
            .unwrap_err();
        match err {
            Error::Validation(msg) => assert!(msg.contains("Jacobi"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_non_antisymmetric_bracket() {
        let q = FieldSpec::Rational;
        let mut br = StructureConstants::new();
        br.insert((0, 0, 0), q.one());
        let err =
            AlgebraSpec::new("sym", q, names(1), StructureConstants::new(), Some(br)).unwrap_err();
        assert!(matches!(err, Error::Validation(m) if m.contains("antisymmetric")));
    }
}
