//! The Hochschild quasi-complex `(C^•(A), d_μ = [μ, ·])` of a possibly
//! non-associative algebra, its curvature `α`, coherence orders and the curvatures of
//! the left regular quasi-representation.

use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraSpec;
use crate::cochain::{alt_cochain, bracket, comp, split_mu, Cochain, Endomorphism};
use crate::error::Result;
use crate::field::Scalar;

#[derive(Debug, Clone)]
pub struct QuasiComplex {
    algebra: AlgebraSpec,
    mu: Cochain,
    identity: Cochain,
    alpha: Cochain,
}

impl QuasiComplex {
    pub fn new(algebra: AlgebraSpec) -> QuasiComplex {
        let mu = algebra.mu_cochain();
        let identity = Cochain::identity(algebra.module());
        let alpha = comp(&mu, &mu).expect("degree 2 cochain fits the budget");
        QuasiComplex {
            algebra,
            mu,
            identity,
            alpha,
        }
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }
    pub fn mu(&self) -> &Cochain {
        &self.mu
    }
    pub fn identity(&self) -> &Cochain {
        &self.identity
    }

    /// `d_μ f = [μ, f]`.
    pub fn differential(&self, f: &Cochain) -> Result<Cochain> {
        bracket(&self.mu, f)
    }

    /// `d^k f`.
    pub fn differential_power(&self, f: &Cochain, k: usize) -> Result<Cochain> {
        let mut acc = f.clone();
        for _ in 0..k {
            acc = self.differential(&acc)?;
        }
        Ok(acc)
    }

    /// The classical Hochschild differential `(−1)^p d_μ f`.
    pub fn classical_differential(&self, f: &Cochain) -> Result<Cochain> {
        let d = self.differential(f)?;
        Ok(if f.degree().rem_euclid(2) == 1 {
            d.neg()
        } else {
            d
        })
    }

    /// The associator `α = μ∘μ`, with `α(x,y,z) = (xy)z − x(yz)` and `2α = [μ, μ]`.
    pub fn curvature(&self) -> &Cochain {
        &self.alpha
    }

    pub fn is_associative(&self) -> bool {
        self.alpha.is_zero()
    }

    /// Pre-Lie test through the alternated associator.
    pub fn is_pre_lie(&self) -> bool {
        alt_cochain(&self.alpha)
            .expect("same degree as α")
            .is_zero()
    }

    /// Direct test that `μ₋` satisfies the Jacobi identity on basis triples.
    pub fn commutator_is_lie(&self) -> bool {
        let (_, skew) = split_mu(&self.mu).expect("μ is binary");
        let n = self.algebra.dim();
        let b = |x: &[Scalar], y: &[Scalar]| skew.eval_vectors(&[x, y]).expect("binary");
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (
                        self.algebra.basis_vector(i),
                        self.algebra.basis_vector(j),
                        self.algebra.basis_vector(k),
                    );
                    let t1 = b(&x, &b(&y, &z));
                    let t2 = b(&y, &b(&z, &x));
                    let t3 = b(&z, &b(&x, &y));
                    if t1
                        .iter()
                        .zip(&t2)
                        .zip(&t3)
                        .any(|((a, b), c)| !(&(a + b) + c).is_zero())
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `d_μ α = 0`.
    pub fn bianchi_check(&self) -> Result<bool> {
        Ok(self.differential(&self.alpha)?.is_zero())
    }

    /// `d_μ² s = [α, s]`.
    pub fn square_formula_check(&self, s: &Cochain) -> Result<bool> {
        let dd = self.differential_power(s, 2)?;
        Ok(dd == bracket(&self.alpha, s)?)
    }

    /// Smallest `N <= max_order` with `d^N f = 0` for every basis cochain `f` of degree
    /// `-1..=max_degree`. The verification is bounded by both cutoffs.
    pub fn coherence_order(&self, max_order: usize, max_degree: i64) -> Result<CoherenceReport> {
        let module = self.algebra.module();
        let mut violations = Vec::new();
        for order in 1..=max_order {
            match self.first_violation(order, max_degree)? {
                None => {
                    return Ok(CoherenceReport {
                        max_order_tested: max_order,
                        max_degree_tested: max_degree,
                        order: Some(order),
                        violations,
                    })
                }
                Some((degree, index)) => {
                    let f = Cochain::basis(module, degree, index)?;
                    let (args, out) = f.decode_index(index);
                    violations.push(CoherenceWitness {
                        order,
                        degree,
                        basis_index: index,
                        args,
                        out,
                    });
                }
            }
        }
        Ok(CoherenceReport {
            max_order_tested: max_order,
            max_degree_tested: max_degree,
            order: None,
            violations,
        })
    }

    fn first_violation(&self, order: usize, max_degree: i64) -> Result<Option<(i64, usize)>> {
        let module = self.algebra.module();
        for degree in -1..=max_degree {
            let count = crate::cochain::coefficient_count(module, degree)?;
            for index in 0..count {
                let f = Cochain::basis(module, degree, index)?;
                let mut acc = f;
                let mut vanished = false;
                for _ in 0..order {
                    acc = self.differential(&acc)?;
                    if acc.is_zero() {
                        vanished = true;
                        break;
                    }
                }
                if !vanished {
                    return Ok(Some((degree, index)));
                }
            }
        }
        Ok(None)
    }

    /// Matrix of `y ↦ μ(x, y)`.
    pub fn left_regular(&self, x: &[Scalar]) -> Endomorphism {
        left_regular(&self.algebra, x)
    }

    /// `σ(x,y) = L(x)L(y) − L(xy)` and `κ(x,y) = [L(x), L(y)] − L(μ₋(x,y))`.
    pub fn rep_curvatures(&self, x: &[Scalar], y: &[Scalar]) -> (Endomorphism, Endomorphism) {
        let lx = self.left_regular(x);
        let ly = self.left_regular(y);
        let sigma = lx
            .compose(&ly)
            .sub(&self.left_regular(&self.algebra.mul(x, y)));
        let kappa = lx
            .commutator(&ly)
            .sub(&self.left_regular(&self.algebra.commutator(x, y)));
        (sigma, kappa)
    }

    /// Checks `σ(x,y)(e_z) = −α(x, y, e_z)` for every basis `z`.
    pub fn sigma_matches_associator(&self, x: &[Scalar], y: &[Scalar]) -> Result<bool> {
        let (sigma, _) = self.rep_curvatures(x, y);
        for z in 0..self.algebra.dim() {
            let ez = self.algebra.basis_vector(z);
            let lhs = sigma.apply(&ez);
            let rhs = self.alpha.eval_vectors(&[x, y, &ez])?;
            if lhs.iter().zip(&rhs).any(|(a, b)| !(a + b).is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn left_regular(algebra: &AlgebraSpec, x: &[Scalar]) -> Endomorphism {
    Endomorphism::from_columns(algebra.module(), |j| {
        algebra.mul(x, &algebra.basis_vector(j))
    })
}

/// A basis cochain `f` with `d^order f ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceWitness {
    pub order: usize,
    pub degree: i64,
    pub basis_index: usize,
    /// Basis arguments and output coordinate of the single nonzero coefficient of `f`.
    pub args: Vec<usize>,
    pub out: usize,
}

impl CoherenceWitness {
    pub fn cochain(&self, qc: &QuasiComplex) -> Result<Cochain> {
        Cochain::basis(qc.algebra().module(), self.degree, self.basis_index)
    }

    /// Recomputes `d^order f` and confirms it is nonzero.
    pub fn recheck(&self, qc: &QuasiComplex) -> Result<bool> {
        Ok(!qc
            .differential_power(&self.cochain(qc)?, self.order)?
            .is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceReport {
    pub max_order_tested: usize,
    pub max_degree_tested: i64,
    /// Smallest `N` with `d^N = 0` on the tested degrees, or `None` if none was found.
    pub order: Option<usize>,
    /// One witness per order that failed, in increasing order.
    pub violations: Vec<CoherenceWitness>,
}

impl CoherenceReport {
    /// Witness for the highest failing order (the one that rules out the cutoff).
    pub fn witness(&self) -> Option<&CoherenceWitness> {
        self.violations.last()
    }
}
