use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exterior::LinearOp;
use crate::scalars::{GaussianRational, Rational, SymbolicScalar, Unit};

/// Coefficient ring for rational functions of `ξ_n`.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, s: &GaussianRational) -> Self;
}

impl Coeff for GaussianRational {
    fn zero_like(&self) -> Self {
        GaussianRational::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, s: &GaussianRational) -> Self {
        self * s
    }
}

impl Coeff for LinearOp {
    fn zero_like(&self) -> Self {
        LinearOp::zero(self.n())
    }
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other).expect("coefficients share a dimension")
    }
    fn times(&self, s: &GaussianRational) -> Self {
        self.scale(s)
    }
}

/// `Σ a_{p,k} / (ξ - p)^k + Σ b_d ξ^d` with canonical (nonzero) coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalXn<C: Coeff> {
    zero: C,
    terms: BTreeMap<(GaussianRational, usize), C>,
    poly: Vec<C>,
}

type Poly = Vec<GaussianRational>;

fn poly_mul(a: &[GaussianRational], b: &[GaussianRational]) -> Poly {
    let mut out = vec![GaussianRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, j| acc * Rational::new((n - j) as i64, (j + 1) as i64))
}

/// First `len` Taylor coefficients in `t` of `(t + δ)^{-k}`.
fn inverse_power_series(delta: &GaussianRational, k: usize, len: usize) -> Poly {
    let inv = delta.inv().expect("distinct poles");
    (0..len)
        .map(|r| {
            let sign = if r % 2 == 0 { Rational::one() } else { -Rational::one() };
            inv.pow((k + r) as u32).scale(&(sign * binomial(k + r - 1, r)))
        })
        .collect()
}

impl<C: Coeff> RationalXn<C> {
    pub fn zero(zero: C) -> Self {
        RationalXn {
            zero,
            terms: BTreeMap::new(),
            poly: Vec::new(),
        }
    }

    pub fn pole_term(coeff: C, pole: GaussianRational, order: usize) -> Self {
        let mut r = Self::zero(coeff.zero_like());
        r.add_pole_term(pole, order, &coeff);
        r
    }

    /// `Σ_d numer[d] ξ^d / Π (ξ - p)^k`.
    pub fn from_fraction(zero: C, numer: &[C], poles: &[(GaussianRational, usize)]) -> Self {
        let mut merged: BTreeMap<GaussianRational, usize> = BTreeMap::new();
        for (p, k) in poles.iter().filter(|(_, k)| *k > 0) {
            *merged.entry(p.clone()).or_default() += k;
        }
        let mut denom: Poly = vec![GaussianRational::one()];
        for (p, k) in &merged {
            for _ in 0..*k {
                denom = poly_mul(&denom, &[-p, GaussianRational::one()]);
            }
        }
        let deg = denom.len() - 1;
        let mut rem: Vec<C> = numer.to_vec();
        let mut out = Self::zero(zero.clone());
        if rem.len() > deg {
            let mut quotient = vec![zero.clone(); rem.len() - deg];
            for top in (deg..rem.len()).rev() {
                let q = rem[top].clone();
                if q.is_zero_coeff() {
                    continue;
                }
                for (i, d) in denom.iter().enumerate() {
                    let idx = top - deg + i;
                    rem[idx] = rem[idx].plus(&q.times(&-d));
                }
                quotient[top - deg] = q;
            }
            rem.truncate(deg);
            out.poly = quotient;
            out.trim_poly();
        }
        for (p, &k) in &merged {
            // Taylor coefficients of the remainder around p.
            let shifted: Vec<C> = (0..k)
                .map(|r| {
                    rem.iter().enumerate().skip(r).fold(zero.clone(), |acc, (s, c)| {
                        acc.plus(&c.times(&p.pow((s - r) as u32).scale(&binomial(s, r))))
                    })
                })
                .collect();
            let mut series: Poly = vec![GaussianRational::one()];
            for (q, &kq) in merged.iter().filter(|(q, _)| *q != p) {
                series = poly_mul(&series, &inverse_power_series(&(p - q), kq, k));
                series.truncate(k);
            }
            series.resize(k, GaussianRational::zero());
            for j in 1..=k {
                let a = (0..=k - j).fold(zero.clone(), |acc, r| acc.plus(&shifted[r].times(&series[k - j - r])));
                out.add_pole_term(p.clone(), j, &a);
            }
        }
        out
    }

    fn trim_poly(&mut self) {
        while self.poly.last().is_some_and(|c| c.is_zero_coeff()) {
            self.poly.pop();
        }
    }

    fn add_pole_term(&mut self, pole: GaussianRational, order: usize, c: &C) {
        let key = (pole, order);
        let sum = match self.terms.get(&key) {
            Some(old) => old.plus(c),
            None => c.clone(),
        };
        if sum.is_zero_coeff() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GaussianRational, usize, &C)> {
        self.terms.iter().map(|((p, k), c)| (p, *k, c))
    }

    pub fn polynomial_part(&self) -> &[C] {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.poly.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((p, k), c) in &other.terms {
            out.add_pole_term(p.clone(), *k, c);
        }
        if out.poly.len() < other.poly.len() {
            out.poly.resize(other.poly.len(), self.zero.clone());
        }
        for (i, c) in other.poly.iter().enumerate() {
            out.poly[i] = out.poly[i].plus(c);
        }
        out.trim_poly();
        out
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut out = Self::zero(self.zero.clone());
        for ((p, k), c) in &self.terms {
            out.add_pole_term(p.clone(), *k, &c.times(s));
        }
        out.poly = self.poly.iter().map(|c| c.times(s)).collect();
        out.trim_poly();
        out
    }

    /// Product with the scalar fraction `Σ numer[d] ξ^d / Π (ξ - p)^k`.
    pub fn mul_fraction(&self, numer: &[GaussianRational], poles: &[(GaussianRational, usize)]) -> Self {
        let mut out = Self::zero(self.zero.clone());
        for ((p, k), c) in &self.terms {
            let num: Vec<C> = numer.iter().map(|x| c.times(x)).collect();
            let mut ps = poles.to_vec();
            ps.push((p.clone(), *k));
            out = out.add(&Self::from_fraction(self.zero.clone(), &num, &ps));
        }
        for (d, c) in self.poly.iter().enumerate() {
            let mut num = vec![self.zero.clone(); d];
            num.extend(numer.iter().map(|x| c.times(x)));
            out = out.add(&Self::from_fraction(self.zero.clone(), &num, poles));
        }
        out
    }

    pub fn map<D: Coeff, F: Fn(&C) -> Result<D>>(&self, zero: D, f: F) -> Result<RationalXn<D>> {
        let mut out = RationalXn::zero(zero);
        for ((p, k), c) in &self.terms {
            out.add_pole_term(p.clone(), *k, &f(c)?);
        }
        out.poly = self.poly.iter().map(f).collect::<Result<_>>()?;
        out.trim_poly();
        Ok(out)
    }

    fn check_decay_and_axis(&self) -> Result<()> {
        if !self.poly.is_empty() {
            return Err(Error::InsufficientDecay);
        }
        if self.terms.keys().any(|(p, _)| p.im.is_zero()) {
            return Err(Error::RealAxisPole);
        }
        Ok(())
    }

    fn keep(&self, upper: bool) -> Result<Self> {
        self.check_decay_and_axis()?;
        let mut out = Self::zero(self.zero.clone());
        for ((p, k), c) in &self.terms {
            if p.im.is_negative() != upper {
                out.add_pole_term(p.clone(), *k, c);
            }
        }
        Ok(out)
    }

    /// Upper-half-plane pole part.
    pub fn pi_plus(&self) -> Result<Self> {
        self.keep(true)
    }

    /// Lower-half-plane pole part.
    pub fn pi_minus(&self) -> Result<Self> {
        self.keep(false)
    }

    /// `∫_R r(ξ) dξ / π`, i.e. `2i Σ_{Im p > 0} Res_p r`.
    pub fn line_integral(&self) -> Result<C> {
        self.check_decay_and_axis()?;
        let total = self
            .terms
            .iter()
            .filter(|((_, k), _)| *k == 1)
            .fold(self.zero.clone(), |acc, (_, c)| acc.plus(c));
        if !total.is_zero_coeff() {
            return Err(Error::InsufficientDecay);
        }
        let upper = self
            .terms
            .iter()
            .filter(|((p, k), _)| *k == 1 && !p.im.is_negative())
            .fold(self.zero.clone(), |acc, (_, c)| acc.plus(c));
        Ok(upper.times(&GaussianRational::int(2).times(&GaussianRational::i())))
    }
}

impl RationalXn<GaussianRational> {
    pub fn scalar_fraction(numer: &[GaussianRational], poles: &[(GaussianRational, usize)]) -> Self {
        Self::from_fraction(GaussianRational::zero(), numer, poles)
    }

    pub fn line_integral_symbolic(&self) -> Result<SymbolicScalar> {
        Ok(SymbolicScalar::term(self.line_integral()?, Unit::PI))
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let z = Complex64::new(x, 0.0);
        let poles: Complex64 = self
            .terms()
            .map(|(p, k, c)| c.to_complex() / (z - p.to_complex()).powi(k as i32))
            .sum();
        let poly: Complex64 = self.poly.iter().enumerate().map(|(d, c)| c.to_complex() * z.powi(d as i32)).sum();
        poles + poly
    }
}
