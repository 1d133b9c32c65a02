//! Exterior algebra of R^n on a bitmask basis, with exterior/interior
//! multiplication and the two Clifford actions `c = ε - ι`, `ĉ = ε + ι`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{GaussianRational, Rational};

pub const MAX_DIM: usize = 14;

pub fn check_dim(n: usize) -> Result<()> {
    if (2..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

fn check_index(j: usize, n: usize) -> Result<()> {
    if j >= 1 && j <= n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: j, n })
    }
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: a, found: b })
    }
}

/// Wedge monomial `e_I`; bit `j-1` set iff generator `e_j` is present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex(pub u32);

impl BasisIndex {
    pub fn from_generators(gens: &[usize]) -> Self {
        BasisIndex(gens.iter().fold(0, |m, &j| m | 1 << (j - 1)))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }
}

/// Sign `(-1)^{#{i in I : i < j}}` for 0-based bit `bit`.
#[inline]
fn order_sign(mask: u32, bit: u32) -> bool {
    (mask & ((1u32 << bit) - 1)).count_ones() % 2 == 1
}

/// Raise (`ε`) or lower (`ι`) a single monomial. Returns `(new mask, negative?)`.
#[inline]
fn raise_mono(mask: u32, bit: u32) -> Option<(u32, bool)> {
    if mask & (1 << bit) != 0 {
        None
    } else {
        Some((mask | 1 << bit, order_sign(mask, bit)))
    }
}

#[inline]
fn lower_mono(mask: u32, bit: u32) -> Option<(u32, bool)> {
    if mask & (1 << bit) == 0 {
        None
    } else {
        Some((mask & !(1 << bit), order_sign(mask, bit)))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Multivector {
    n: usize,
    coeffs: BTreeMap<BasisIndex, GaussianRational>,
}

impl Multivector {
    pub fn zero(n: usize) -> Self {
        Multivector {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(n: usize, idx: BasisIndex) -> Self {
        Self::monomial(n, idx, GaussianRational::one())
    }

    pub fn monomial(n: usize, idx: BasisIndex, c: GaussianRational) -> Self {
        let mut m = Self::zero(n);
        m.add_term(idx, &c);
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, idx: BasisIndex) -> GaussianRational {
        self.coeffs.get(&idx).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &GaussianRational)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, idx: BasisIndex, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(idx).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    pub fn add(&self, o: &Multivector) -> Result<Multivector> {
        same_dim(self.n, o.n)?;
        let mut r = self.clone();
        for (k, c) in &o.coeffs {
            r.add_term(*k, c);
        }
        Ok(r)
    }

    pub fn scale(&self, s: &GaussianRational) -> Multivector {
        let mut r = Multivector::zero(self.n);
        for (k, c) in &self.coeffs {
            r.add_term(*k, &(c * s));
        }
        r
    }

    fn map_mono(&self, j: usize, f: fn(u32, u32) -> Option<(u32, bool)>) -> Result<Multivector> {
        check_index(j, self.n)?;
        let mut r = Multivector::zero(self.n);
        for (k, c) in &self.coeffs {
            if let Some((m, neg)) = f(k.0, (j - 1) as u32) {
                r.add_term(BasisIndex(m), &if neg { -c } else { c.clone() });
            }
        }
        Ok(r)
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.coeffs.iter().map(|(k, v)| (format!("{:#b}", k.0), v)))
            .finish()
    }
}

/// `ε_j x` for 1-based generator index `j`.
pub fn wedge_raise(j: usize, x: &Multivector) -> Result<Multivector> {
    x.map_mono(j, raise_mono)
}

/// `ι_j x` for 1-based generator index `j`.
pub fn contract_lower(j: usize, x: &Multivector) -> Result<Multivector> {
    x.map_mono(j, lower_mono)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Flavor {
    #[serde(rename = "c")]
    C,
    #[serde(rename = "chat")]
    Hat,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::C => write!(f, "c"),
            Flavor::Hat => write!(f, "ĉ"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    pub components: Vec<Rational>,
}

impl Vector {
    pub fn new(components: Vec<Rational>) -> Self {
        Vector { components }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Vector {
            components: v.iter().map(|&x| Rational::from_int(x)).collect(),
        }
    }

    /// Unit vector `e_j`, 1-based.
    pub fn basis(n: usize, j: usize) -> Self {
        let mut c = vec![Rational::zero(); n];
        c[j - 1] = Rational::one();
        Vector { components: c }
    }

    pub fn zero(n: usize) -> Self {
        Vector {
            components: vec![Rational::zero(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    /// 1-based component access.
    pub fn get(&self, j: usize) -> &Rational {
        &self.components[j - 1]
    }

    pub fn dot(&self, o: &Vector) -> Rational {
        self.components
            .iter()
            .zip(&o.components)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, s: &Rational) -> Vector {
        Vector {
            components: self.components.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, o: &Vector) -> Vector {
        Vector {
            components: self.components.iter().zip(&o.components).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.components).finish()
    }
}

/// Linear operator on Λ*(R^n); column `I` holds the image of `e_I`.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearOp {
    n: usize,
    columns: Vec<BTreeMap<u32, GaussianRational>>,
}

impl fmt::Debug for LinearOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOp(n={}, nnz={})", self.n, self.nnz())
    }
}

fn add_into(col: &mut BTreeMap<u32, GaussianRational>, k: u32, c: GaussianRational) {
    if c.is_zero() {
        return;
    }
    match col.entry(k) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl LinearOp {
    pub fn zero(n: usize) -> Self {
        LinearOp {
            n,
            columns: vec![BTreeMap::new(); 1 << n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, GaussianRational::one())
    }

    pub fn scalar(n: usize, s: GaussianRational) -> Self {
        let mut op = Self::zero(n);
        if !s.is_zero() {
            for (i, col) in op.columns.iter_mut().enumerate() {
                col.insert(i as u32, s.clone());
            }
        }
        op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    /// Matrix entry `(row, col)`.
    pub fn entry(&self, row: BasisIndex, col: BasisIndex) -> GaussianRational {
        self.columns[col.0 as usize].get(&row.0).cloned().unwrap_or_default()
    }

    pub fn column(&self, col: BasisIndex) -> Multivector {
        let mut m = Multivector::zero(self.n);
        for (k, c) in &self.columns[col.0 as usize] {
            m.add_term(BasisIndex(*k), c);
        }
        m
    }

    /// Iterates `(row, col, value)` over stored entries.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, &GaussianRational)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, c)| (*i, j as u32, c)))
    }

    pub fn apply(&self, x: &Multivector) -> Result<Multivector> {
        same_dim(self.n, x.n)?;
        let mut r = Multivector::zero(self.n);
        for (k, c) in x.terms() {
            for (i, a) in &self.columns[k.0 as usize] {
                r.add_term(BasisIndex(*i), &(a * c));
            }
        }
        Ok(r)
    }

    /// Single generator `c(e_j)` or `ĉ(e_j)`, 1-based.
    pub fn generator(n: usize, flavor: Flavor, j: usize) -> Result<LinearOp> {
        check_dim(n)?;
        check_index(j, n)?;
        let bit = (j - 1) as u32;
        let mut op = LinearOp::zero(n);
        for (mask, col) in op.columns.iter_mut().enumerate() {
            let mask = mask as u32;
            if let Some((m, neg)) = raise_mono(mask, bit) {
                col.insert(m, if neg { GaussianRational::int(-1) } else { GaussianRational::one() });
            }
            if let Some((m, neg)) = lower_mono(mask, bit) {
                // c = ε - ι flips the interior sign; ĉ = ε + ι keeps it.
                let neg = neg ^ (flavor == Flavor::C);
                col.insert(m, if neg { GaussianRational::int(-1) } else { GaussianRational::one() });
            }
        }
        Ok(op)
    }

    pub fn compose(&self, b: &LinearOp) -> Result<LinearOp> {
        same_dim(self.n, b.n)?;
        let columns = b
            .columns
            .iter()
            .map(|bcol| {
                let mut out = BTreeMap::new();
                for (j, x) in bcol {
                    for (k, y) in &self.columns[*j as usize] {
                        add_into(&mut out, *k, y * x);
                    }
                }
                out
            })
            .collect();
        Ok(LinearOp { n: self.n, columns })
    }

    pub fn add(&self, b: &LinearOp) -> Result<LinearOp> {
        same_dim(self.n, b.n)?;
        let mut r = self.clone();
        r.add_assign(b)?;
        Ok(r)
    }

    pub fn add_assign(&mut self, b: &LinearOp) -> Result<()> {
        same_dim(self.n, b.n)?;
        for (col, bcol) in self.columns.iter_mut().zip(&b.columns) {
            for (k, c) in bcol {
                add_into(col, *k, c.clone());
            }
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, s: &GaussianRational, b: &LinearOp) -> Result<()> {
        same_dim(self.n, b.n)?;
        if s.is_zero() {
            return Ok(());
        }
        for (col, bcol) in self.columns.iter_mut().zip(&b.columns) {
            for (k, c) in bcol {
                add_into(col, *k, c * s);
            }
        }
        Ok(())
    }

    pub fn scale(&self, s: &GaussianRational) -> LinearOp {
        if s.is_zero() {
            return LinearOp::zero(self.n);
        }
        LinearOp {
            n: self.n,
            columns: self
                .columns
                .iter()
                .map(|col| col.iter().map(|(k, c)| (*k, c * s)).collect())
                .collect(),
        }
    }

    pub fn trace(&self) -> GaussianRational {
        let mut t = GaussianRational::zero();
        for (i, col) in self.columns.iter().enumerate() {
            if let Some(c) = col.get(&(i as u32)) {
                t += c;
            }
        }
        t
    }

    /// `trace(self ∘ b)` without forming the product.
    pub fn trace_product(&self, b: &LinearOp) -> Result<GaussianRational> {
        same_dim(self.n, b.n)?;
        let mut t = GaussianRational::zero();
        for (i, bcol) in b.columns.iter().enumerate() {
            for (j, x) in bcol {
                if let Some(a) = self.columns[*j as usize].get(&(i as u32)) {
                    t += &(a * x);
                }
            }
        }
        Ok(t)
    }

    /// Conjugate transpose for the standard inner product on Λ*.
    pub fn adjoint(&self) -> LinearOp {
        let mut r = LinearOp::zero(self.n);
        for (i, j, c) in self.entries() {
            r.columns[i as usize].insert(j, c.conj());
        }
        r
    }
}

/// `c(u) = Σ u_j (ε_j - ι_j)` or `ĉ(u) = Σ u_j (ε_j + ι_j)`.
pub fn clifford(flavor: Flavor, u: &Vector, n: usize) -> Result<LinearOp> {
    check_dim(n)?;
    same_dim(n, u.n())?;
    let mut op = LinearOp::zero(n);
    for j in 1..=n {
        let uj = u.get(j);
        if !uj.is_zero() {
            op.add_scaled(&GaussianRational::real(uj.clone()), &LinearOp::generator(n, flavor, j)?)?;
        }
    }
    Ok(op)
}

/// Ordered product of Clifford operators, leftmost factor applied last.
pub fn clifford_word(args: &[(Flavor, Vector)]) -> Result<LinearOp> {
    let (first, rest) = args.split_first().ok_or(Error::EmptyWord)?;
    let n = first.1.n();
    let mut acc = clifford(first.0, &first.1, n)?;
    for (f, v) in rest {
        same_dim(n, v.n())?;
        acc = acc.compose(&clifford(*f, v, n)?)?;
    }
    Ok(acc)
}

/// Product of generators `g(e_{j1}) g(e_{j2}) ...` with 1-based indices.
pub fn generator_word(n: usize, word: &[(Flavor, usize)]) -> Result<LinearOp> {
    let mut acc = LinearOp::identity(n);
    for &(f, j) in word {
        acc = acc.compose(&LinearOp::generator(n, f, j)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(n: i64) -> GaussianRational {
        GaussianRational::int(n)
    }

    #[test]
    fn wedge_and_contract_signs() {
        let one = Multivector::basis(3, BasisIndex(0));
        let e1 = wedge_raise(1, &one).unwrap();
        assert_eq!(e1, Multivector::basis(3, BasisIndex::from_generators(&[1])));
        let e12 = wedge_raise(2, &e1).unwrap();
        assert_eq!(e12.coeff(BasisIndex::from_generators(&[1, 2])), gr(-1));
        assert!(wedge_raise(1, &e1).unwrap().is_zero());

        let e1e2 = Multivector::basis(3, BasisIndex::from_generators(&[1, 2]));
        assert_eq!(contract_lower(2, &e1e2).unwrap().coeff(BasisIndex::from_generators(&[1])), gr(-1));
        assert_eq!(contract_lower(1, &e1).unwrap(), one);
        assert!(contract_lower(3, &e1).unwrap().is_zero());
        assert!(wedge_raise(4, &e1).is_err());
        assert!(contract_lower(0, &e1).is_err());
    }

    #[test]
    fn clifford_squares() {
        let n = 4;
        let c1 = LinearOp::generator(n, Flavor::C, 1).unwrap();
        let h1 = LinearOp::generator(n, Flavor::Hat, 1).unwrap();
        let one = Multivector::basis(n, BasisIndex(0));
        let e1 = Multivector::basis(n, BasisIndex(1));
        assert_eq!(c1.apply(&one).unwrap(), e1);
        assert_eq!(c1.apply(&e1).unwrap(), one.scale(&gr(-1)));
        assert_eq!(c1.compose(&c1).unwrap(), LinearOp::scalar(n, gr(-1)));
        assert_eq!(h1.compose(&h1).unwrap(), LinearOp::identity(n));
        let h2 = LinearOp::generator(n, Flavor::Hat, 2).unwrap();
        let anti = c1.compose(&h2).unwrap().add(&h2.compose(&c1).unwrap()).unwrap();
        assert!(anti.is_zero());
    }

    #[test]
    fn traces() {
        let n = 4;
        assert_eq!(LinearOp::identity(n).trace(), gr(16));
        let w = generator_word(n, &[(Flavor::C, 1), (Flavor::C, 2)]).unwrap();
        assert_eq!(w.trace(), gr(0));
        let w = generator_word(n, &[(Flavor::Hat, 1), (Flavor::Hat, 2), (Flavor::Hat, 1), (Flavor::Hat, 2)]).unwrap();
        assert_eq!(w.trace(), gr(-16));
    }

    #[test]
    fn word_products() {
        let n = 3;
        let e1 = Vector::basis(n, 1);
        let w = clifford_word(&[(Flavor::C, e1.clone()), (Flavor::C, e1.clone())]).unwrap();
        assert_eq!(w, LinearOp::scalar(n, gr(-1)));
        let w = clifford_word(&[(Flavor::C, e1.clone()), (Flavor::Hat, e1.clone()), (Flavor::Hat, e1.clone())]).unwrap();
        assert_eq!(w, clifford(Flavor::C, &e1, n).unwrap());
        assert!(clifford_word(&[]).is_err());
        assert!(clifford_word(&[(Flavor::C, e1), (Flavor::C, Vector::basis(4, 1))]).is_err());
    }

    #[test]
    fn compose_with_identity_and_negation() {
        let n = 3;
        let x = clifford(Flavor::Hat, &Vector::from_ints(&[1, -2, 3]), n).unwrap();
        assert_eq!(LinearOp::identity(n).compose(&x).unwrap(), x);
        assert!(x.add(&x.scale(&gr(-1))).unwrap().is_zero());
        assert_eq!(x.trace_product(&x).unwrap(), x.compose(&x).unwrap().trace());
    }

    #[test]
    fn adjoints_of_generators() {
        let n = 3;
        for j in 1..=n {
            let c = LinearOp::generator(n, Flavor::C, j).unwrap();
            let h = LinearOp::generator(n, Flavor::Hat, j).unwrap();
            assert_eq!(c.adjoint(), c.scale(&gr(-1)));
            assert_eq!(h.adjoint(), h);
        }
    }
}
