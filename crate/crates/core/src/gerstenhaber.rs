//! The truncated Gerstenhaber carrier `⊕_{-1 ≤ p < max_arity} C^p(V)` with the
//! Gerstenhaber composition as connection and the graded commutator as bracket.

use serde::{Deserialize, Serialize};

use crate::algebra::Module;
use crate::cochain::{self, Cochain};
use crate::error::{Error, Result};
use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GerstenhaberCarrier {
    module: Module,
    max_arity: usize,
}

/// A basis cochain of the carrier, addressed by degree and coefficient index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisRef {
    pub degree: i64,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairWitness {
    pub f: BasisRef,
    pub x: BasisRef,
    pub y: BasisRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociatorWitness {
    pub f: BasisRef,
    /// Slot (1 or 2) that `L_f` was applied to.
    pub slot: usize,
    pub x: BasisRef,
    pub y: BasisRef,
    pub z: BasisRef,
}

impl GerstenhaberCarrier {
    pub fn new(v_dim: usize, max_arity: usize) -> Result<GerstenhaberCarrier> {
        GerstenhaberCarrier::over(FieldSpec::Rational, v_dim, max_arity)
    }

    pub fn over(field: FieldSpec, v_dim: usize, max_arity: usize) -> Result<GerstenhaberCarrier> {
        if v_dim == 0 {
            return Err(Error::Validation("V must have positive dimension".into()));
        }
        if max_arity < 2 {
            return Err(Error::Validation("max_arity must be at least 2".into()));
        }
        let module = Module { field, dim: v_dim };
        let top = max_arity as i64 - 1;
        cochain::coefficient_count(module, top)?;
        Ok(GerstenhaberCarrier { module, max_arity })
    }

    pub fn module(&self) -> Module {
        self.module
    }
    pub fn max_arity(&self) -> usize {
        self.max_arity
    }
    pub fn max_degree(&self) -> i64 {
        self.max_arity as i64 - 1
    }

    /// Total dimension of the truncated carrier.
    pub fn dimension(&self) -> usize {
        (-1..=self.max_degree()).map(|p| self.count(p)).sum()
    }

    pub fn count(&self, degree: i64) -> usize {
        cochain::coefficient_count(self.module, degree).expect("checked at construction")
    }

    /// All basis elements in order of increasing degree, then index.
    pub fn basis_refs(&self) -> impl Iterator<Item = BasisRef> + '_ {
        (-1..=self.max_degree()).flat_map(move |degree| {
            (0..self.count(degree)).map(move |index| BasisRef { degree, index })
        })
    }

    pub fn element(&self, b: BasisRef) -> Result<Cochain> {
        Cochain::basis(self.module, b.degree, b.index)
    }

    fn check(&self, degree: i64) -> Result<()> {
        if degree > self.max_degree() {
            return Err(Error::Truncated {
                degree,
                max: self.max_degree(),
            });
        }
        Ok(())
    }

    /// `D_x y = x ∘̄ y`. `None` is the zero element below degree −1 (both factors in `V`).
    pub fn connection(&self, x: &Cochain, y: &Cochain) -> Result<Option<Cochain>> {
        let degree = x.degree() + y.degree();
        self.check(degree)?;
        if degree < -1 {
            return Ok(None);
        }
        cochain::comp(x, y).map(Some)
    }

    pub fn bracket(&self, x: &Cochain, y: &Cochain) -> Result<Option<Cochain>> {
        let degree = x.degree() + y.degree();
        self.check(degree)?;
        if degree < -1 {
            return Ok(None);
        }
        cochain::bracket(x, y).map(Some)
    }

    fn connection_opt(&self, x: &Cochain, y: Option<&Cochain>) -> Result<Option<Cochain>> {
        match y {
            Some(y) => self.connection(x, y),
            None => Ok(None),
        }
    }

    /// `T(x, y) = D_x y − (−1)^{pq} D_y x − [x, y]`, checked on every basis pair whose
    /// composite fits the truncation.
    pub fn torsion_vanishes(&self) -> Result<bool> {
        let refs: Vec<BasisRef> = self.basis_refs().collect();
        for &a in &refs {
            for &b in &refs {
                if a.degree + b.degree > self.max_degree() {
                    continue;
                }
                let (x, y) = (self.element(a)?, self.element(b)?);
                let (Some(xy), Some(yx), Some(br)) = (
                    self.connection(&x, &y)?,
                    self.connection(&y, &x)?,
                    self.bracket(&x, &y)?,
                ) else {
                    continue;
                };
                let skew = if (a.degree * b.degree).rem_euclid(2) == 1 {
                    xy.add(&yx)?
                } else {
                    xy.sub(&yx)?
                };
                if skew != br {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// First basis pair `(x, y)` with `(f∘̄x)∘̄y ≠ f∘̄(x∘̄y)`, i.e. where `L_f` fails the
    /// function condition; pairs leaving the truncation are skipped.
    pub fn function_witness(&self, f: &Cochain, f_ref: BasisRef) -> Result<Option<PairWitness>> {
        let refs: Vec<BasisRef> = self.basis_refs().collect();
        for &a in &refs {
            if f.degree() + a.degree > self.max_degree() {
                continue;
            }
            let x = self.element(a)?;
            let fx = self.connection(f, &x)?;
            for &b in &refs {
                if f.degree() + a.degree + b.degree > self.max_degree()
                    || a.degree + b.degree > self.max_degree()
                {
                    continue;
                }
                let y = self.element(b)?;
                let lhs = match &fx {
                    Some(fx) => self.connection(fx, &y)?,
                    None => None,
                };
                let xy = self.connection(&x, &y)?;
                let rhs = self.connection_opt(f, xy.as_ref())?;
                if !same(&lhs, &rhs) {
                    return Ok(Some(PairWitness {
                        f: f_ref,
                        x: a,
                        y: b,
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Replays a function-condition witness; `true` if it still fails.
    pub fn recheck_function_witness(&self, w: &PairWitness) -> Result<bool> {
        let (f, x, y) = (self.element(w.f)?, self.element(w.x)?, self.element(w.y)?);
        let lhs = match self.connection(&f, &x)? {
            Some(fx) => self.connection(&fx, &y)?,
            None => None,
        };
        let xy = self.connection(&x, &y)?;
        let rhs = self.connection_opt(&f, xy.as_ref())?;
        Ok(!same(&lhs, &rhs))
    }

    /// `L_f ∘ L_g = L_{f∘̄g}` on every basis element the composites reach.
    pub fn composition_matches(&self, f: &Cochain, g: &Cochain) -> Result<bool> {
        let fg = self.connection(f, g)?.expect("degree ≥ −1 for f, g in C⁰");
        for b in self.basis_refs() {
            if f.degree() + g.degree() + b.degree > self.max_degree() {
                continue;
            }
            let x = self.element(b)?;
            let gx = self.connection(g, &x)?;
            let lhs = self.connection_opt(f, gx.as_ref())?;
            let rhs = self.connection(&fg, &x)?;
            if !same(&lhs, &rhs) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Searches for a failure of `α(φx, y, z) = φα(x, y, z)` or `α(x, φy, z) = φα(x, y, z)`
    /// with `φ = L_f`, `f` a basis element of `C⁰(V)`.
    pub fn regularity_witness(&self) -> Result<Option<AssociatorWitness>> {
        let refs: Vec<BasisRef> = self.basis_refs().collect();
        let max = self.max_degree();
        for fi in 0..self.count(0) {
            let f_ref = BasisRef {
                degree: 0,
                index: fi,
            };
            let f = self.element(f_ref)?;
            for &a in &refs {
                for &b in &refs {
                    for &c in &refs {
                        if a.degree + b.degree + c.degree > max
                            || a.degree + b.degree > max
                            || b.degree + c.degree > max
                        {
                            continue;
                        }
                        let (x, y, z) = (self.element(a)?, self.element(b)?, self.element(c)?);
                        let base = self.associator(&x, &y, &z)?;
                        let phi_base = self.connection_opt(&f, base.as_ref())?;
                        let fx = self.connection(&f, &x)?;
                        let first = match &fx {
                            Some(fx) => self.associator(fx, &y, &z)?,
                            None => None,
                        };
                        if !same(&first, &phi_base) {
                            return Ok(Some(AssociatorWitness {
                                f: f_ref,
                                slot: 1,
                                x: a,
                                y: b,
                                z: c,
                            }));
                        }
                        let fy = self.connection(&f, &y)?;
                        let second = match &fy {
                            Some(fy) => self.associator(&x, fy, &z)?,
                            None => None,
                        };
                        if !same(&second, &phi_base) {
                            return Ok(Some(AssociatorWitness {
                                f: f_ref,
                                slot: 2,
                                x: a,
                                y: b,
                                z: c,
                            }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// `(x∘̄y)∘̄z − x∘̄(y∘̄z)`.
    pub fn associator(&self, x: &Cochain, y: &Cochain, z: &Cochain) -> Result<Option<Cochain>> {
        let left = match self.connection(x, y)? {
            Some(xy) => self.connection(&xy, z)?,
            None => None,
        };
        let yz = self.connection(y, z)?;
        let right = self.connection_opt(x, yz.as_ref())?;
        Ok(match (left, right) {
            (Some(l), Some(r)) => Some(l.sub(&r)?),
            (Some(l), None) => Some(l),
            (None, Some(r)) => Some(r.neg()),
            (None, None) => None,
        })
    }
}

fn same(a: &Option<Cochain>, b: &Option<Cochain>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => a == b,
        (Some(c), None) | (None, Some(c)) => c.is_zero(),
        (None, None) => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let c = GerstenhaberCarrier::new(2, 4).unwrap();
        assert_eq!(c.dimension(), 2 + 4 + 8 + 16 + 32);
        assert!(GerstenhaberCarrier::new(2, 1).is_err());
    }

    #[test]
    fn composites_beyond_the_truncation_are_flagged() {
        let c = GerstenhaberCarrier::new(2, 2).unwrap();
        let mu = c
            .element(BasisRef {
                degree: 1,
                index: 0,
            })
            .unwrap();
        assert_eq!(
            c.connection(&mu, &mu).unwrap_err(),
            Error::Truncated { degree: 2, max: 1 }
        );
    }

    #[test]
    fn identity_composes_trivially() {
        let c = GerstenhaberCarrier::new(2, 3).unwrap();
        let id = Cochain::identity(c.module());
        assert!(c.composition_matches(&id, &id).unwrap());
    }
}
