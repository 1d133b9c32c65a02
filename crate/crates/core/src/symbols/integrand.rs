use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exterior::{Flavor, LinearOp};
use crate::scalars::{GaussianRational, SymbolicScalar};

use super::moments::sphere_moment;

/// Polynomial in `ξ_1..ξ_n` with operator coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiPolynomialOp {
    n: usize,
    terms: BTreeMap<Vec<u32>, LinearOp>,
}

impl XiPolynomialOp {
    pub fn zero(n: usize) -> Self {
        XiPolynomialOp { n, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &LinearOp)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &[u32]) -> LinearOp {
        self.terms.get(alpha).cloned().unwrap_or_else(|| LinearOp::zero(self.n))
    }

    pub fn add_term(&mut self, alpha: Vec<u32>, op: &LinearOp) -> Result<()> {
        if alpha.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: alpha.len(),
            });
        }
        if op.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: op.n(),
            });
        }
        match self.terms.get_mut(&alpha) {
            Some(cur) => {
                cur.add_assign(op)?;
                if cur.is_zero() {
                    self.terms.remove(&alpha);
                }
            }
            None if !op.is_zero() => {
                self.terms.insert(alpha, op.clone());
            }
            None => {}
        }
        Ok(())
    }

    /// Terms of total ξ-degree `deg`.
    pub fn homogeneous_part(&self, deg: u32) -> XiPolynomialOp {
        XiPolynomialOp {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.iter().sum::<u32>() == deg)
                .map(|(a, o)| (a.clone(), o.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &GaussianRational) -> XiPolynomialOp {
        let mut r = XiPolynomialOp::zero(self.n);
        for (a, o) in &self.terms {
            r.add_term(a.clone(), &o.scale(s)).expect("same dimension");
        }
        r
    }
}

fn pair_exponent(n: usize, i: usize, j: usize) -> Vec<u32> {
    let mut a = vec![0u32; n];
    a[i] += 1;
    a[j] += 1;
    a
}

/// Flat-point integrand `p·[Θ + m Σ_{i,j} (c_iΘ + Θc_i) ξ_i ξ_j c_j]`.
pub fn interior_integrand(theta: &LinearOp, m: usize, prefactor: &GaussianRational) -> Result<XiPolynomialOp> {
    let n = theta.n();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    if n != 2 * m {
        return Err(Error::DimensionMismatch { expected: 2 * m, found: n });
    }
    let mut poly = XiPolynomialOp::zero(n);
    poly.add_term(vec![0; n], &theta.scale(prefactor))?;
    let gens: Vec<LinearOp> = (1..=n).map(|j| LinearOp::generator(n, Flavor::C, j)).collect::<Result<_>>()?;
    let weight = prefactor * &GaussianRational::int(m as i64);
    for i in 0..n {
        let sandwich = gens[i].compose(theta)?.add(&theta.compose(&gens[i])?)?;
        if sandwich.is_zero() {
            continue;
        }
        let sandwich = sandwich.scale(&weight);
        for (j, cj) in gens.iter().enumerate() {
            poly.add_term(pair_exponent(n, i, j), &sandwich.compose(cj)?)?;
        }
    }
    Ok(poly)
}

/// `Σ_α trace(word ∘ coeff_α) · ∫_{S^{n-1}} ξ^α`.
pub fn trace_integrate(word: &LinearOp, poly: &XiPolynomialOp) -> Result<SymbolicScalar> {
    if word.n() != poly.n() {
        return Err(Error::DimensionMismatch {
            expected: poly.n(),
            found: word.n(),
        });
    }
    let mut acc = SymbolicScalar::zero();
    for (alpha, coeff) in &poly.terms {
        let moment = sphere_moment(alpha, poly.n);
        if moment.is_zero() {
            continue;
        }
        let tr = word.trace_product(coeff)?;
        acc = &acc + &moment.scale(&tr);
    }
    Ok(acc)
}
