use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{GaussianRational, Rational};

/// Exponents of `pi`, `V(S^{n-1})` and `V(S^{n-2})` in a symbolic unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Unit {
    pub pi: i32,
    pub vol_top: i32,
    pub vol_sub: i32,
}

impl Unit {
    pub const ONE: Unit = Unit {
        pi: 0,
        vol_top: 0,
        vol_sub: 0,
    };
    pub const PI: Unit = Unit {
        pi: 1,
        vol_top: 0,
        vol_sub: 0,
    };
    pub const VOL_TOP: Unit = Unit {
        pi: 0,
        vol_top: 1,
        vol_sub: 0,
    };
    pub const VOL_SUB: Unit = Unit {
        pi: 0,
        vol_top: 0,
        vol_sub: 1,
    };

    fn times(self, o: Unit) -> Unit {
        Unit {
            pi: self.pi + o.pi,
            vol_top: self.vol_top + o.vol_top,
            vol_sub: self.vol_sub + o.vol_sub,
        }
    }
}

/// Finite sum of Gaussian-rational multiples of symbolic units.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymbolicScalar {
    terms: BTreeMap<Unit, GaussianRational>,
}

impl SymbolicScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Unit::ONE)
    }

    pub fn term(c: GaussianRational, unit: Unit) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(unit, c);
        }
        SymbolicScalar { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Unit, GaussianRational)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (u, c) in it {
            s.add_term(u, &c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Unit, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, unit: Unit) -> GaussianRational {
        self.terms.get(&unit).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, unit: Unit, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(unit).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&unit);
        }
    }

    /// Drops zero coefficients; a no-op on values built through the public API.
    pub fn normalize(&self) -> Self {
        SymbolicScalar {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(u, c)| (*u, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SymbolicScalar {
            terms: self.terms.iter().map(|(u, v)| (*u, v * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&GaussianRational::real(r.clone()))
    }

    pub fn times_unit(&self, unit: Unit) -> Self {
        SymbolicScalar {
            terms: self.terms.iter().map(|(u, v)| (u.times(unit), v.clone())).collect(),
        }
    }

    /// Exact quotient when `self` is a scalar multiple of `other`.
    pub fn ratio_to(&self, other: &SymbolicScalar) -> Option<GaussianRational> {
        let (u0, c0) = other.terms.iter().next()?;
        let k = &self.coefficient(*u0) / c0;
        if &other.scale(&k) == self {
            Some(k)
        } else {
            None
        }
    }

    /// Canonical text form; `n` names the sphere units.
    pub fn render(&self, n: usize) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(u, c)| {
                let mut s = format!("({c})");
                push_factor(&mut s, "pi", u.pi);
                push_factor(&mut s, &format!("V(S^{})", n as i64 - 1), u.vol_top);
                push_factor(&mut s, &format!("V(S^{})", n as i64 - 2), u.vol_sub);
                s
            })
            .collect();
        parts.join(" + ")
    }

    /// Floating-point value with sphere volumes of dimension `n`.
    pub fn numeric_value(&self, n: usize) -> Complex64 {
        let pi = std::f64::consts::PI;
        let top = sphere_volume(n as i64 - 1);
        let sub = sphere_volume(n as i64 - 2);
        self.terms
            .iter()
            .map(|(u, c)| c.to_complex() * pi.powi(u.pi) * top.powi(u.vol_top) * sub.powi(u.vol_sub))
            .sum()
    }
}

fn push_factor(s: &mut String, name: &str, exp: i32) {
    match exp {
        0 => {}
        1 => {
            s.push_str(" * ");
            s.push_str(name);
        }
        e => s.push_str(&format!(" * {name}^{e}")),
    }
}

/// Surface area of the unit sphere `S^k` in `R^{k+1}`.
pub fn sphere_volume(k: i64) -> f64 {
    let pi = std::f64::consts::PI;
    match k {
        k if k < 0 => f64::NAN,
        0 => 2.0,
        1 => 2.0 * pi,
        k => 2.0 * pi / (k - 1) as f64 * sphere_volume(k - 2),
    }
}

impl std::fmt::Debug for SymbolicScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(u, c)| format!("({c})*pi^{}*Vt^{}*Vs^{}", u.pi, u.vol_top, u.vol_sub))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Add<&SymbolicScalar> for &SymbolicScalar {
    type Output = SymbolicScalar;
    fn add(self, o: &SymbolicScalar) -> SymbolicScalar {
        let mut r = self.clone();
        for (u, c) in &o.terms {
            r.add_term(*u, c);
        }
        r
    }
}

impl Add for SymbolicScalar {
    type Output = SymbolicScalar;
    fn add(self, o: SymbolicScalar) -> SymbolicScalar {
        &self + &o
    }
}

impl Sub<&SymbolicScalar> for &SymbolicScalar {
    type Output = SymbolicScalar;
    fn sub(self, o: &SymbolicScalar) -> SymbolicScalar {
        self + &(-o)
    }
}

impl Sub for SymbolicScalar {
    type Output = SymbolicScalar;
    fn sub(self, o: SymbolicScalar) -> SymbolicScalar {
        &self - &o
    }
}

impl Mul<&SymbolicScalar> for &SymbolicScalar {
    type Output = SymbolicScalar;
    fn mul(self, o: &SymbolicScalar) -> SymbolicScalar {
        let mut r = SymbolicScalar::zero();
        for (u1, c1) in &self.terms {
            for (u2, c2) in &o.terms {
                r.add_term(u1.times(*u2), &(c1 * c2));
            }
        }
        r
    }
}

impl Mul for SymbolicScalar {
    type Output = SymbolicScalar;
    fn mul(self, o: SymbolicScalar) -> SymbolicScalar {
        &self * &o
    }
}

impl Neg for &SymbolicScalar {
    type Output = SymbolicScalar;
    fn neg(self) -> SymbolicScalar {
        SymbolicScalar {
            terms: self.terms.iter().map(|(u, c)| (*u, -c)).collect(),
        }
    }
}

impl Neg for SymbolicScalar {
    type Output = SymbolicScalar;
    fn neg(self) -> SymbolicScalar {
        -&self
    }
}

impl std::iter::Sum for SymbolicScalar {
    fn sum<I: Iterator<Item = SymbolicScalar>>(iter: I) -> SymbolicScalar {
        iter.fold(SymbolicScalar::zero(), |a, b| &a + &b)
    }
}
