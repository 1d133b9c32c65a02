//! Antisymmetric k-tensors, their contractions against vectors and their
//! Clifford lifts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{check_dim, generator_word, Flavor, LinearOp, Vector};
use crate::scalars::{GaussianRational, Rational};

/// Fully antisymmetric tensor stored on strictly increasing 1-based index tuples.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AntiSymForm {
    n: usize,
    k: usize,
    entries: BTreeMap<Vec<usize>, Rational>,
}

/// Sorts `idx` in place and returns the permutation sign, or `None` on a repeat.
fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut neg = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            neg = !neg;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(neg)
    }
}

/// Strictly increasing `k`-subsets of `1..=n` in lexicographic order.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

impl AntiSymForm {
    pub fn zero(n: usize, k: usize) -> Self {
        AntiSymForm {
            n,
            k,
            entries: BTreeMap::new(),
        }
    }

    /// Single-entry form with `T(idx) = value`; `idx` may be unsorted.
    pub fn unit(n: usize, idx: &[usize], value: Rational) -> Result<Self> {
        let mut f = Self::zero(n, idx.len());
        f.set(idx, value)?;
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Stored entries on increasing tuples.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.entries.iter()
    }

    fn check_tuple(&self, idx: &[usize]) -> Result<()> {
        if idx.len() != self.k {
            return Err(Error::WrongDegree {
                expected: self.k,
                found: idx.len(),
            });
        }
        if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > self.n) {
            return Err(Error::IndexOutOfRange { index: bad, n: self.n });
        }
        Ok(())
    }

    /// Sets `T(idx)`, storing the antisymmetrized value on the sorted tuple.
    pub fn set(&mut self, idx: &[usize], value: Rational) -> Result<()> {
        self.check_tuple(idx)?;
        let mut key = idx.to_vec();
        match sort_with_sign(&mut key) {
            None if value.is_zero() => Ok(()),
            None => Err(Error::Parse(format!("repeated index in {idx:?}"))),
            Some(neg) => {
                let v = if neg { -value } else { value };
                if v.is_zero() {
                    self.entries.remove(&key);
                } else {
                    self.entries.insert(key, v);
                }
                Ok(())
            }
        }
    }

    /// `T(e_{i1}, ..., e_{ik})` for an arbitrary 1-based tuple.
    pub fn get(&self, idx: &[usize]) -> Result<Rational> {
        self.check_tuple(idx)?;
        let mut key = idx.to_vec();
        Ok(match sort_with_sign(&mut key) {
            None => Rational::zero(),
            Some(neg) => {
                let v = self.entries.get(&key).cloned().unwrap_or_default();
                if neg {
                    -v
                } else {
                    v
                }
            }
        })
    }

    pub fn add(&self, o: &AntiSymForm) -> Result<AntiSymForm> {
        self.same_shape(o)?;
        let mut r = self.clone();
        for (k, v) in &o.entries {
            let cur = r.entries.get(k).cloned().unwrap_or_default();
            r.set(k, cur + v)?;
        }
        Ok(r)
    }

    pub fn scale(&self, s: &Rational) -> AntiSymForm {
        let mut r = AntiSymForm::zero(self.n, self.k);
        if !s.is_zero() {
            r.entries = self.entries.iter().map(|(k, v)| (k.clone(), v * s)).collect();
        }
        r
    }

    fn same_shape(&self, o: &AntiSymForm) -> Result<()> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: o.n,
            });
        }
        if self.k != o.k {
            return Err(Error::WrongDegree {
                expected: self.k,
                found: o.k,
            });
        }
        Ok(())
    }

    /// Relabels the frame: `e_j -> sign_j e_{perm_j}` (1-based `perm`).
    pub fn transform(&self, perm: &[usize], signs: &[bool]) -> Result<AntiSymForm> {
        let mut r = AntiSymForm::zero(self.n, self.k);
        for (idx, v) in &self.entries {
            let image: Vec<usize> = idx.iter().map(|&i| perm[i - 1]).collect();
            let neg = idx.iter().filter(|&&i| signs[i - 1]).count() % 2 == 1;
            r.set(&image, if neg { -v } else { v.clone() })?;
        }
        Ok(r)
    }

    pub fn from_json(text: &str) -> Result<AntiSymForm> {
        let file: FormFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("form file: {e}")))?;
        file.into_form()
    }

    pub fn to_json(&self) -> String {
        let file = FormFile {
            n: self.n,
            degree: self.k,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| FormEntry {
                    idx: k.clone(),
                    value: v.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("form serialization")
    }
}

#[derive(Serialize, Deserialize)]
struct FormEntry {
    idx: Vec<usize>,
    value: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormFile {
    n: usize,
    degree: usize,
    entries: Vec<FormEntry>,
}

impl FormFile {
    fn into_form(self) -> Result<AntiSymForm> {
        check_dim(self.n).map_err(|e| Error::Parse(format!("field `n`: {e}")))?;
        if self.degree < 1 || self.degree > self.n {
            return Err(Error::Parse(format!("field `degree`: {} not in 1..={}", self.degree, self.n)));
        }
        let mut form = AntiSymForm::zero(self.n, self.degree);
        for (i, e) in self.entries.iter().enumerate() {
            let at = format!("entries[{i}]");
            if e.idx.len() != self.degree {
                return Err(Error::Parse(format!(
                    "{at}.idx: expected {} indices, found {}",
                    self.degree,
                    e.idx.len()
                )));
            }
            if e.idx.iter().any(|&j| j == 0 || j > self.n) {
                return Err(Error::Parse(format!("{at}.idx: indices must lie in 1..={}", self.n)));
            }
            if e.idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(format!("{at}.idx: indices must be strictly increasing")));
            }
            let v: Rational = e.value.parse().map_err(|err| Error::Parse(format!("{at}.value: {err}")))?;
            if form.entries.contains_key(&e.idx) {
                return Err(Error::Parse(format!("{at}.idx: duplicate tuple {:?}", e.idx)));
            }
            form.set(&e.idx, v)?;
        }
        Ok(form)
    }
}

/// Exact determinant by fraction-carrying Gaussian elimination.
fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let k = m.len();
    let mut det = Rational::one();
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det = det * &pivot;
        for r in col + 1..k {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            let (top, bottom) = m.split_at_mut(r);
            for (x, y) in bottom[0][col..k].iter_mut().zip(&top[col][col..k]) {
                *x = &*x - &(&f * y);
            }
        }
    }
    det
}

fn check_vectors(t: &AntiSymForm, vectors: &[Vector]) -> Result<()> {
    if vectors.len() != t.k {
        return Err(Error::ArgumentCount {
            expected: t.k,
            found: vectors.len(),
        });
    }
    if let Some(v) = vectors.iter().find(|v| v.n() != t.n) {
        return Err(Error::DimensionMismatch {
            expected: t.n,
            found: v.n(),
        });
    }
    Ok(())
}

/// `T(u^1, ..., u^k)` summed over increasing tuples with k×k minors.
pub fn form_contract(t: &AntiSymForm, vectors: &[Vector]) -> Result<Rational> {
    check_vectors(t, vectors)?;
    let mut acc = Rational::zero();
    for (idx, v) in &t.entries {
        let minor: Vec<Vec<Rational>> = idx.iter().map(|&i| vectors.iter().map(|u| u.get(i).clone()).collect()).collect();
        acc = acc + v * &determinant(minor);
    }
    Ok(acc)
}

/// Same contraction summed over every index tuple (reference route).
pub fn form_contract_full(t: &AntiSymForm, vectors: &[Vector]) -> Result<Rational> {
    check_vectors(t, vectors)?;
    let (n, k) = (t.n, t.k);
    let mut acc = Rational::zero();
    let mut idx = vec![1usize; k];
    loop {
        let coeff = idx.iter().zip(vectors).fold(Rational::one(), |a, (&i, u)| a * u.get(i));
        if !coeff.is_zero() {
            acc = acc + t.get(&idx)? * coeff;
        }
        let mut p = k;
        loop {
            if p == 0 {
                return Ok(acc);
            }
            p -= 1;
            if idx[p] < n {
                idx[p] += 1;
                break;
            }
            idx[p] = 1;
        }
    }
}

fn lift_sum(t: &AntiSymForm, word: &[Flavor]) -> Result<LinearOp> {
    let mut op = LinearOp::zero(t.n);
    for (idx, v) in &t.entries {
        let w: Vec<(Flavor, usize)> = word.iter().copied().zip(idx.iter().copied()).collect();
        op.add_scaled(&GaussianRational::real(v.clone()), &generator_word(t.n, &w)?)?;
    }
    Ok(op)
}

/// `Σ_{i1<...<ik} T_{i1...ik} g(e_{i1}) ... g(e_{ik})` with a single flavor.
pub fn lift_generic(t: &AntiSymForm, flavor: Flavor) -> Result<LinearOp> {
    check_dim(t.n)?;
    lift_sum(t, &vec![flavor; t.k])
}

fn require_degree(t: &AntiSymForm, k: usize) -> Result<()> {
    if t.k == k {
        Ok(())
    } else {
        Err(Error::WrongDegree { expected: k, found: t.k })
    }
}

/// `Σ_{i<s<t} T_{ist} c_i c_s c_t`.
pub fn lift_t2_cubic(t: &AntiSymForm) -> Result<LinearOp> {
    require_degree(t, 3)?;
    lift_generic(t, Flavor::C)
}

/// `Σ_{i,s,t pairwise distinct} T_{ist} c_i ĉ_s ĉ_t`.
pub fn lift_t2_mixed(t: &AntiSymForm) -> Result<LinearOp> {
    require_degree(t, 3)?;
    check_dim(t.n)?;
    let mut op = LinearOp::zero(t.n);
    for (idx, v) in &t.entries {
        let [a, b, c] = [idx[0], idx[1], idx[2]];
        for (p, neg) in [
            ([a, b, c], false),
            ([a, c, b], true),
            ([b, a, c], true),
            ([b, c, a], false),
            ([c, a, b], false),
            ([c, b, a], true),
        ] {
            let w = generator_word(t.n, &[(Flavor::C, p[0]), (Flavor::Hat, p[1]), (Flavor::Hat, p[2])])?;
            let s = GaussianRational::real(if neg { -v } else { v.clone() });
            op.add_scaled(&s, &w)?;
        }
    }
    Ok(op)
}

/// The torsion lift `(3/2) cubic - (1/4) mixed`.
pub fn lift_t2(t: &AntiSymForm) -> Result<LinearOp> {
    let mut op = lift_t2_cubic(t)?.scale(&GaussianRational::ratio(3, 2));
    op.add_scaled(&GaussianRational::ratio(-1, 4), &lift_t2_mixed(t)?)?;
    Ok(op)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedLift {
    /// `Σ_{k<l} T_{kl} ĉ_k ĉ_l`
    T1,
    /// `Σ_{k<l<a<b} T c_k c_l ĉ_a ĉ_b`
    T3,
    /// `Σ_{k<l<a<b} T ĉ_k ĉ_l ĉ_a ĉ_b`
    T4,
}

pub fn lift_named(name: NamedLift, t: &AntiSymForm) -> Result<LinearOp> {
    check_dim(t.n)?;
    match name {
        NamedLift::T1 => {
            require_degree(t, 2)?;
            lift_sum(t, &[Flavor::Hat, Flavor::Hat])
        }
        NamedLift::T3 => {
            require_degree(t, 4)?;
            lift_sum(t, &[Flavor::C, Flavor::C, Flavor::Hat, Flavor::Hat])
        }
        NamedLift::T4 => {
            require_degree(t, 4)?;
            lift_sum(t, &[Flavor::Hat; 4])
        }
    }
}

/// Every lift used by the functionals and lemma checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LiftKind {
    T1,
    T2,
    T2Cubic,
    T2Mixed,
    T3,
    T4,
}

impl LiftKind {
    pub fn degree(self) -> usize {
        match self {
            LiftKind::T1 => 2,
            LiftKind::T2 | LiftKind::T2Cubic | LiftKind::T2Mixed => 3,
            LiftKind::T3 | LiftKind::T4 => 4,
        }
    }

    pub fn apply(self, t: &AntiSymForm) -> Result<LinearOp> {
        match self {
            LiftKind::T1 => lift_named(NamedLift::T1, t),
            LiftKind::T2 => lift_t2(t),
            LiftKind::T2Cubic => lift_t2_cubic(t),
            LiftKind::T2Mixed => lift_t2_mixed(t),
            LiftKind::T3 => lift_named(NamedLift::T3, t),
            LiftKind::T4 => lift_named(NamedLift::T4, t),
        }
    }
}
