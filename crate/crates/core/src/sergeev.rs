//! The graded-opposite Sergeev algebra `W(d)°`.
//!
//! Basis monomials are `σ C_1^{ε_1} ⋯ C_d^{ε_d}`. Multiplication follows
//!
//! ```text
//! C_i² = 1,   C_i C_j = -C_j C_i,   C_i σ = σ C_{σ(i)},   σ.τ = τσ
//! ```
//!
//! where `τσ` is the composition `τ ∘ σ` in `S_d`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{factorial, inversion_parity, Perm};
use crate::scalar::Scalar;

/// `σ C_1^{ε_1} ⋯ C_d^{ε_d}`; bit `i - 1` of `eps` holds `ε_i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    pub perm: Perm,
    pub eps: u32,
}

impl Monomial {
    pub fn new(perm: Perm, eps: u32) -> Self {
        debug_assert!(perm.len() >= 32 || eps >> perm.len() == 0);
        Monomial { perm, eps }
    }

    pub fn identity(d: usize) -> Self {
        Monomial { perm: Perm::identity(d), eps: 0 }
    }

    pub fn d(&self) -> usize {
        self.perm.len()
    }

    /// `ε_i` for 1-based `i`.
    pub fn eps_at(&self, i: usize) -> bool {
        self.eps >> (i - 1) & 1 == 1
    }

    pub fn eps_vec(&self) -> Vec<u8> {
        (1..=self.d()).map(|i| self.eps_at(i) as u8).collect()
    }

    /// `|σc|`, the parity of the Clifford part.
    pub fn is_odd(&self) -> bool {
        self.eps.count_ones() % 2 == 1
    }

    /// Position in the basis order: permutation rank, then `ε` as a number.
    pub fn index(&self) -> usize {
        (self.perm.rank() << self.d()) | self.eps as usize
    }

    pub fn from_index(d: usize, index: usize) -> Self {
        Monomial { perm: Perm::unrank(d, index >> d), eps: (index & ((1 << d) - 1)) as u32 }
    }

    /// Product in `W(d)°`; the result is `±` a single monomial.
    pub fn mul(&self, rhs: &Monomial) -> (Monomial, bool) {
        // c τ = τ C_{τ(i1)} ⋯ C_{τ(ik)}: move the left Clifford part across τ
        let moved: Vec<usize> = (0..self.d()).filter(|&i| self.eps >> i & 1 == 1).map(|i| rhs.perm.apply(i)).collect();
        let mut neg = inversion_parity(&moved);
        let moved_bits = moved.iter().fold(0u32, |acc, &i| acc | 1 << i);
        // merge the two ascending Clifford strings; C_i² = 1 cancels repeats
        let mut b = rhs.eps;
        while b != 0 {
            let j = b.trailing_zeros();
            if (moved_bits >> j >> 1).count_ones() % 2 == 1 {
                neg = !neg;
            }
            b &= b - 1;
        }
        let perm = rhs.perm.compose(&self.perm);
        (Monomial { perm, eps: moved_bits ^ rhs.eps }, neg)
    }

    pub fn embed(&self, e: usize) -> Monomial {
        Monomial { perm: self.perm.embed(e), eps: self.eps }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cliff: Vec<String> = (1..=self.d()).filter(|&i| self.eps_at(i)).map(|i| format!("C{i}")).collect();
        match (self.perm.is_identity(), cliff.is_empty()) {
            (true, true) => write!(f, "1"),
            (true, false) => write!(f, "{}", cliff.join("")),
            (false, true) => write!(f, "{}", self.perm),
            (false, false) => write!(f, "{}{}", self.perm, cliff.join("")),
        }
    }
}

/// All `d!·2^d` basis monomials in index order.
pub fn basis(d: usize) -> Vec<Monomial> {
    (0..factorial(d) << d).map(|i| Monomial::from_index(d, i)).collect()
}

pub fn dimension(d: usize) -> usize {
    factorial(d) << d
}

/// A linear combination of basis monomials of `W(d)°`.
#[derive(Clone, PartialEq)]
pub struct SergeevElement<T> {
    d: usize,
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> SergeevElement<T> {
    pub fn zero(d: usize) -> Self {
        SergeevElement { d, terms: BTreeMap::new() }
    }

    pub fn one(d: usize) -> Self {
        Self::from_monomial(Monomial::identity(d), T::one())
    }

    pub fn from_monomial(m: Monomial, c: T) -> Self {
        let mut out = Self::zero(m.d());
        out.add_term(m, c);
        out
    }

    pub fn perm(p: Perm) -> Self {
        Self::from_monomial(Monomial::new(p, 0), T::one())
    }

    /// The Clifford generator `C_i`.
    pub fn clifford(d: usize, i: usize) -> Result<Self> {
        if i == 0 || i > d {
            return Err(Error::IndexOutOfRange { index: i, max: d });
        }
        Ok(Self::from_monomial(Monomial::new(Perm::identity(d), 1 << (i - 1)), T::one()))
    }

    pub fn from_terms<I>(d: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, T)>,
    {
        let mut out = Self::zero(d);
        for (m, c) in terms {
            if m.d() != d {
                return Err(Error::ArityMismatch(d, m.d()));
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if self.d != rhs.d {
            return Err(Error::ArityMismatch(self.d, rhs.d));
        }
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.d);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.d != rhs.d {
            return Err(Error::ArityMismatch(self.d, rhs.d));
        }
        let mut out = Self::zero(self.d);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let (m, neg) = a.mul(b);
                let c = ca.clone() * cb.clone();
                out.add_term(m, if neg { -c } else { c });
            }
        }
        Ok(out)
    }

    /// `σ · w · σ⁻¹`.
    pub fn conj_perm(&self, sigma: &Perm) -> Result<Self> {
        if sigma.len() != self.d {
            return Err(Error::ArityMismatch(self.d, sigma.len()));
        }
        let s = Self::perm(sigma.clone());
        let s_inv = Self::perm(sigma.inverse());
        s.try_mul(self)?.try_mul(&s_inv)
    }

    /// `C_i · w · C_i`.
    pub fn conj_clifford(&self, i: usize) -> Result<Self> {
        let c = Self::clifford(self.d, i)?;
        c.try_mul(self)?.try_mul(&c)
    }

    /// `(even terms, odd terms)` by Clifford parity.
    pub fn split(&self) -> (Self, Self) {
        let mut even = Self::zero(self.d);
        let mut odd = Self::zero(self.d);
        for (m, c) in &self.terms {
            let target = if m.is_odd() { &mut odd } else { &mut even };
            target.terms.insert(m.clone(), c.clone());
        }
        (even, odd)
    }

    /// The same element read in `W(e)°`.
    pub fn embed(&self, e: usize) -> Result<Self> {
        if e < self.d {
            return Err(Error::EmbedTooSmall { from: self.d, to: e });
        }
        let terms = self.terms.iter().map(|(m, c)| (m.embed(e), c.clone())).collect();
        Ok(SergeevElement { d: e, terms })
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SergeevElement<U> {
        let mut out = SergeevElement::zero(self.d);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Sparse coordinates against [`basis`], sorted by index.
    pub fn coords(&self) -> Vec<(usize, T)> {
        let mut v: Vec<(usize, T)> = self.terms.iter().map(|(m, c)| (m.index(), c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn from_coords(d: usize, coords: &[(usize, T)]) -> Self {
        let mut out = Self::zero(d);
        for (i, c) in coords {
            out.add_term(Monomial::from_index(d, *i), c.clone());
        }
        out
    }
}

impl<T: Scalar> fmt::Debug for SergeevElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Scalar> fmt::Display for SergeevElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({})·{m}", c.to_text())?;
            }
        }
        Ok(())
    }
}
