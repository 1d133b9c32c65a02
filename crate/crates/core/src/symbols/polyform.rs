use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{check_dim, BasisIndex, Flavor, LinearOp, Multivector};
use crate::scalars::GaussianRational;

/// Differential form on flat `R^n` with polynomial coefficients of bounded degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyForm {
    n: usize,
    max_degree: u32,
    terms: BTreeMap<(Vec<u32>, u32), GaussianRational>,
}

impl PolyForm {
    pub fn zero(n: usize, max_degree: u32) -> Self {
        PolyForm {
            n,
            max_degree,
            terms: BTreeMap::new(),
        }
    }

    /// `x^exponent e_I`.
    pub fn basis(n: usize, max_degree: u32, exponent: Vec<u32>, idx: BasisIndex) -> Result<Self> {
        let mut p = Self::zero(n, max_degree);
        p.add_term(exponent, idx.0, GaussianRational::one())?;
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exponent: Vec<u32>, mask: u32, c: GaussianRational) -> Result<()> {
        let deg: u32 = exponent.iter().sum();
        if deg > self.max_degree {
            return Err(Error::Config(format!("polynomial degree {deg} exceeds bound {}", self.max_degree)));
        }
        if c.is_zero() {
            return Ok(());
        }
        let key = (exponent, mask);
        let e = self.terms.entry(key.clone()).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn add(&self, o: &PolyForm) -> Result<PolyForm> {
        let mut r = self.clone();
        for ((a, m), c) in &o.terms {
            r.add_term(a.clone(), *m, c.clone())?;
        }
        Ok(r)
    }

    pub fn scale(&self, s: &GaussianRational) -> PolyForm {
        let mut r = PolyForm::zero(self.n, self.max_degree);
        for ((a, m), c) in &self.terms {
            r.add_term(a.clone(), *m, c * s).expect("degree preserved");
        }
        r
    }

    /// Multiplication by the coordinate function `x_k` (1-based).
    pub fn mul_coordinate(&self, k: usize) -> Result<PolyForm> {
        let mut r = PolyForm::zero(self.n, self.max_degree);
        for ((a, m), c) in &self.terms {
            let mut a = a.clone();
            a[k - 1] += 1;
            r.add_term(a, *m, c.clone())?;
        }
        Ok(r)
    }

    /// Applies a constant-coefficient operator on Λ* pointwise.
    pub fn apply_pointwise(&self, op: &LinearOp) -> Result<PolyForm> {
        let mut r = PolyForm::zero(self.n, self.max_degree);
        for ((a, m), c) in &self.terms {
            let img = op.apply(&Multivector::monomial(self.n, BasisIndex(*m), c.clone()))?;
            for (idx, v) in img.terms() {
                r.add_term(a.clone(), idx.0, v.clone())?;
            }
        }
        Ok(r)
    }

    /// `Σ_j (∂_j f) gen_j(e_I)` with `gen_j` given per direction.
    fn first_order(&self, gens: &[LinearOp], sign: i64) -> Result<PolyForm> {
        let mut r = PolyForm::zero(self.n, self.max_degree);
        let s = GaussianRational::int(sign);
        for ((a, m), c) in &self.terms {
            for (j, g) in gens.iter().enumerate() {
                if a[j] == 0 {
                    continue;
                }
                let mut da = a.clone();
                da[j] -= 1;
                let k = &(c * &GaussianRational::int(a[j] as i64)) * &s;
                let img = g.apply(&Multivector::monomial(self.n, BasisIndex(*m), k))?;
                for (idx, v) in img.terms() {
                    r.add_term(da.clone(), idx.0, v.clone())?;
                }
            }
        }
        Ok(r)
    }

    /// Exterior derivative `d = Σ ε_j ∂_j`.
    pub fn d(&self) -> Result<PolyForm> {
        self.first_order(&raise_ops(self.n)?, 1)
    }

    /// Codifferential `δ = -Σ ι_j ∂_j`.
    pub fn delta(&self) -> Result<PolyForm> {
        self.first_order(&lower_ops(self.n)?, -1)
    }
}

fn raise_ops(n: usize) -> Result<Vec<LinearOp>> {
    (1..=n)
        .map(|j| {
            let c = LinearOp::generator(n, Flavor::C, j)?;
            let h = LinearOp::generator(n, Flavor::Hat, j)?;
            Ok(c.add(&h)?.scale(&GaussianRational::ratio(1, 2)))
        })
        .collect()
}

fn lower_ops(n: usize) -> Result<Vec<LinearOp>> {
    (1..=n)
        .map(|j| {
            let c = LinearOp::generator(n, Flavor::C, j)?;
            let h = LinearOp::generator(n, Flavor::Hat, j)?;
            Ok(h.add(&c.scale(&GaussianRational::int(-1)))?.scale(&GaussianRational::ratio(1, 2)))
        })
        .collect()
}

fn monomials_below(n: usize, bound: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, bound, &mut vec![0; n], &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorReport {
    pub n: usize,
    pub k: usize,
    pub degree: u32,
    pub cases: usize,
    /// `[d+δ, x_k] = c(dx_k)`
    pub clifford_c: bool,
    /// `[i(d-δ), x_k] = i ĉ(dx_k)`
    pub clifford_hat: bool,
    pub d_squared_zero: bool,
    pub delta_squared_zero: bool,
}

impl CommutatorReport {
    pub fn all_pass(&self) -> bool {
        self.clifford_c && self.clifford_hat && self.d_squared_zero && self.delta_squared_zero
    }
}

/// Checks the flat commutator identities on all basis forms of polynomial degree `< d`.
pub fn flat_commutator_check(n: usize, k: usize, d: u32) -> Result<CommutatorReport> {
    check_dim(n)?;
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    if d == 0 {
        return Err(Error::Config("truncation degree must be at least 1".into()));
    }
    let i = GaussianRational::i();
    let ck = LinearOp::generator(n, Flavor::C, k)?;
    let hk = LinearOp::generator(n, Flavor::Hat, k)?.scale(&i);
    let (raise, lower) = (raise_ops(n)?, lower_ops(n)?);
    let ext = |p: &PolyForm| p.first_order(&raise, 1);
    let delta = |p: &PolyForm| p.first_order(&lower, -1);
    let dirac = |p: &PolyForm| -> Result<PolyForm> { ext(p)?.add(&delta(p)?) };
    let twisted = |p: &PolyForm| -> Result<PolyForm> { Ok(ext(p)?.add(&delta(p)?.scale(&GaussianRational::int(-1)))?.scale(&i)) };
    let mut report = CommutatorReport {
        n,
        k,
        degree: d,
        cases: 0,
        clifford_c: true,
        clifford_hat: true,
        d_squared_zero: true,
        delta_squared_zero: true,
    };
    for a in monomials_below(n, d) {
        let deg: u32 = a.iter().sum();
        for mask in 0..(1u32 << n) {
            let w = PolyForm::basis(n, d, a.clone(), BasisIndex(mask))?;
            if !ext(&ext(&w)?)?.is_zero() {
                report.d_squared_zero = false;
            }
            if !delta(&delta(&w)?)?.is_zero() {
                report.delta_squared_zero = false;
            }
            if deg >= d {
                continue;
            }
            report.cases += 1;
            let xw = w.mul_coordinate(k)?;
            let lhs = dirac(&xw)?.add(&dirac(&w)?.mul_coordinate(k)?.scale(&GaussianRational::int(-1)))?;
            if lhs != w.apply_pointwise(&ck)? {
                report.clifford_c = false;
            }
            let lhs = twisted(&xw)?.add(&twisted(&w)?.mul_coordinate(k)?.scale(&GaussianRational::int(-1)))?;
            if lhs != w.apply_pointwise(&hk)? {
                report.clifford_hat = false;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutators_in_the_plane() {
        let r = flat_commutator_check(2, 1, 2).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert!(r.cases > 0);
        assert!(flat_commutator_check(2, 3, 2).is_err());
    }

    #[test]
    fn coordinate_commutator_on_constant() {
        let n = 2;
        let one = PolyForm::basis(n, 2, vec![0, 0], BasisIndex(0)).unwrap();
        let x1 = one.mul_coordinate(1).unwrap();
        let lhs = x1.d().unwrap().add(&x1.delta().unwrap()).unwrap();
        assert_eq!(lhs, PolyForm::basis(n, 2, vec![0, 0], BasisIndex(1)).unwrap());
        let dirac_one = one.d().unwrap().add(&one.delta().unwrap()).unwrap();
        assert!(dirac_one.is_zero());
    }

    #[test]
    fn codifferential_is_adjoint_sign() {
        // δ(x_1 e_1) = -1, the divergence with the adjoint sign.
        let n = 2;
        let w = PolyForm::basis(n, 2, vec![1, 0], BasisIndex(1)).unwrap();
        assert_eq!(
            w.delta().unwrap(),
            PolyForm::basis(n, 2, vec![0, 0], BasisIndex(0))
                .unwrap()
                .scale(&GaussianRational::int(-1))
        );
    }
}
