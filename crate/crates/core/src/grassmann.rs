//! The Grassmann algebra `E_N` on `N` anticommuting generators `θ1..θN`.
//!
//! Monomials are stored as bitmasks (bit `i - 1` set for `θi`), so the
//! capacity is bounded by 64 generators. Terms are kept in canonical order:
//! by number of generators first, then lexicographically on the ascending
//! index list.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const MAX_CAPACITY: usize = 64;

/// A Grassmann monomial `θ_{i1} θ_{i2} ⋯` with `i1 < i2 < ⋯`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u64);

impl Blade {
    pub const ONE: Blade = Blade(0);

    pub fn from_bits(bits: u64) -> Self {
        Blade(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Builds the monomial from 1-based generator indices, which must be
    /// strictly ascending.
    pub fn from_gens(gens: &[usize]) -> Option<Self> {
        let mut bits = 0u64;
        let mut last = 0usize;
        for &g in gens {
            if g <= last || g > MAX_CAPACITY {
                return None;
            }
            bits |= 1 << (g - 1);
            last = g;
        }
        Some(Blade(bits))
    }

    pub fn generator(index: usize) -> Self {
        debug_assert!((1..=MAX_CAPACITY).contains(&index));
        Blade(1 << (index - 1))
    }

    pub fn gens(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.grade());
        let mut b = self.0;
        while b != 0 {
            out.push(b.trailing_zeros() as usize + 1);
            b &= b - 1;
        }
        out
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_odd(self) -> bool {
        self.0.count_ones() % 2 == 1
    }

    pub fn contains(self, other: Blade) -> bool {
        self.0 & other.0 == other.0
    }

    /// Highest generator index present, 0 for the unit.
    pub fn top(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Product of two monomials: `None` when they share a generator,
    /// otherwise the merged monomial and whether the reordering is odd.
    pub fn mul(self, rhs: Blade) -> Option<(Blade, bool)> {
        if self.0 & rhs.0 != 0 {
            return None;
        }
        // one transposition for every pair i in self, j in rhs with i > j
        let mut swaps = 0u32;
        let mut b = rhs.0;
        while b != 0 {
            let j = b.trailing_zeros();
            swaps += (self.0 >> j).count_ones();
            b &= b - 1;
        }
        Some((Blade(self.0 | rhs.0), swaps % 2 == 1))
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade().cmp(&other.grade()).then_with(|| {
            if self.0 == other.0 {
                Ordering::Equal
            } else {
                // the ascending list holding the lowest differing generator is smaller
                let low = (self.0 ^ other.0) & (self.0 ^ other.0).wrapping_neg();
                if self.0 & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        })
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        for g in self.gens() {
            write!(f, "θ{g}")?;
        }
        Ok(())
    }
}

/// Z/2 parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

/// An element of the truncated Grassmann algebra with exact coefficients.
#[derive(Clone, PartialEq)]
pub struct GrassmannElement<T> {
    capacity: usize,
    terms: BTreeMap<Blade, T>,
}

fn check_capacity(capacity: usize) -> Result<()> {
    if capacity > MAX_CAPACITY {
        Err(Error::CapacityTooLarge(capacity))
    } else {
        Ok(())
    }
}

impl<T: Scalar> GrassmannElement<T> {
    pub fn zero(capacity: usize) -> Self {
        assert!(capacity <= MAX_CAPACITY, "capacity {capacity} exceeds 64");
        GrassmannElement { capacity, terms: BTreeMap::new() }
    }

    pub fn one(capacity: usize) -> Self {
        Self::scalar(capacity, T::one())
    }

    pub fn scalar(capacity: usize, c: T) -> Self {
        let mut out = Self::zero(capacity);
        out.add_term(Blade::ONE, c);
        out
    }

    /// The generator `θ_index`.
    pub fn generator(capacity: usize, index: usize) -> Result<Self> {
        check_capacity(capacity)?;
        if index == 0 || index > capacity {
            return Err(Error::GeneratorOutOfRange { index, capacity });
        }
        Ok(Self::monomial(capacity, Blade::generator(index), T::one()))
    }

    pub fn monomial(capacity: usize, blade: Blade, c: T) -> Self {
        assert!(blade.top() <= capacity, "monomial {blade} exceeds capacity {capacity}");
        let mut out = Self::zero(capacity);
        out.add_term(blade, c);
        out
    }

    /// Builds an element from `(generator list, coefficient)` pairs; repeated
    /// monomials are summed.
    pub fn from_terms<I>(capacity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, T)>,
    {
        check_capacity(capacity)?;
        let mut out = Self::zero(capacity);
        for (gens, c) in terms {
            if let Some(&g) = gens.iter().find(|&&g| g == 0 || g > capacity) {
                return Err(Error::GeneratorOutOfRange { index: g, capacity });
            }
            let blade = Blade::from_gens(&gens)
                .ok_or_else(|| Error::Json(format!("generator list {gens:?} is not strictly ascending")))?;
            out.add_term(blade, c);
        }
        Ok(out)
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &T)> {
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

    pub fn coeff(&self, blade: Blade) -> T {
        self.terms.get(&blade).cloned().unwrap_or_else(T::zero)
    }

    /// Adds `c · blade`, dropping the entry if it cancels.
    pub fn add_term(&mut self, blade: Blade, c: T) {
        if c.is_zero() {
            return;
        }
        debug_assert!(blade.top() <= self.capacity);
        match self.terms.entry(blade) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `Some(parity)` when every term has the same parity; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|b| b.is_odd());
        match it.next() {
            None => Some(Parity::Even),
            Some(first) => it.all(|p| p == first).then_some(Parity::from_odd(first)),
        }
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|b| !b.is_odd())
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|b| b.is_odd())
    }

    /// Exterior product. Fails on differing capacities.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.capacity != rhs.capacity {
            return Err(Error::CapacityMismatch(self.capacity, rhs.capacity));
        }
        let mut out = Self::zero(self.capacity);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                if let Some((blade, neg)) = a.mul(*b) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(blade, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if self.capacity != rhs.capacity {
            return Err(Error::CapacityMismatch(self.capacity, rhs.capacity));
        }
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.capacity);
        if c.is_zero() {
            return out;
        }
        for (b, v) in &self.terms {
            out.terms.insert(*b, v.clone() * c.clone());
        }
        out
    }

    /// The parity involution `ω`.
    pub fn omega(&self) -> Self {
        let terms = self.terms.iter().map(|(b, c)| (*b, if b.is_odd() { -c.clone() } else { c.clone() })).collect();
        GrassmannElement { capacity: self.capacity, terms }
    }

    /// `(even part, odd part)`.
    pub fn split(&self) -> (Self, Self) {
        let mut even = Self::zero(self.capacity);
        let mut odd = Self::zero(self.capacity);
        for (b, c) in &self.terms {
            let target = if b.is_odd() { &mut odd } else { &mut even };
            target.terms.insert(*b, c.clone());
        }
        (even, odd)
    }

    pub fn even_part(&self) -> Self {
        self.split().0
    }

    pub fn odd_part(&self) -> Self {
        self.split().1
    }

    /// Highest generator index in use.
    pub fn top_generator(&self) -> usize {
        self.terms.keys().map(|b| b.top()).max().unwrap_or(0)
    }

    /// Copy with a different capacity; fails if a used generator would fall
    /// outside it.
    pub fn with_capacity(&self, capacity: usize) -> Result<Self> {
        check_capacity(capacity)?;
        let top = self.top_generator();
        if top > capacity {
            return Err(Error::GeneratorOutOfRange { index: top, capacity });
        }
        Ok(GrassmannElement { capacity, terms: self.terms.clone() })
    }

    /// Applies `f` to each coefficient, e.g. to change the scalar type.
    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> GrassmannElement<U> {
        let mut out = GrassmannElement::zero(self.capacity);
        for (b, c) in &self.terms {
            out.add_term(*b, f(c));
        }
        out
    }
}

impl<T: Scalar> fmt::Debug for GrassmannElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Scalar> fmt::Display for GrassmannElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *b == Blade::ONE {
                write!(f, "{}", c.to_text())?;
            } else if c.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "({})·{b}", c.to_text())?;
            }
        }
        Ok(())
    }
}

// The operator forms panic on mismatched capacities; use the `try_*`
// methods where that is reachable from user input.

impl<T: Scalar> Add for &GrassmannElement<T> {
    type Output = GrassmannElement<T>;

    fn add(self, rhs: Self) -> GrassmannElement<T> {
        self.try_add(rhs).expect("grassmann addition")
    }
}

impl<T: Scalar> Sub for &GrassmannElement<T> {
    type Output = GrassmannElement<T>;

    fn sub(self, rhs: Self) -> GrassmannElement<T> {
        self.try_add(&-rhs).expect("grassmann subtraction")
    }
}

impl<T: Scalar> std::ops::Mul for &GrassmannElement<T> {
    type Output = GrassmannElement<T>;

    fn mul(self, rhs: Self) -> GrassmannElement<T> {
        self.try_mul(rhs).expect("grassmann product")
    }
}

impl<T: Scalar> Neg for &GrassmannElement<T> {
    type Output = GrassmannElement<T>;

    fn neg(self) -> GrassmannElement<T> {
        self.scale(&-T::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use proptest::prelude::*;

    type G = GrassmannElement<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn th(cap: usize, i: usize) -> G {
        G::generator(cap, i).unwrap()
    }

    /// Sign of sorting the concatenated generator list by adjacent swaps.
    fn bubble_product(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
        let mut word: Vec<usize> = a.iter().chain(b).copied().collect();
        let mut neg = false;
        for i in 0..word.len() {
            for j in 0..word.len() - 1 - i {
                if word[j] > word[j + 1] {
                    word.swap(j, j + 1);
                    neg = !neg;
                }
            }
        }
        if word.windows(2).any(|w| w[0] == w[1]) {
            None
        } else {
            Some((word, neg))
        }
    }

    #[test]
    fn exterior_product_examples() {
        let (t1, t2) = (th(3, 1), th(3, 2));
        let t12 = G::from_terms(3, [(vec![1, 2], q(1))]).unwrap();
        assert_eq!(&t1 * &t2, t12);
        assert_eq!(&t2 * &t1, -&t12);
        let one = G::one(3);
        assert_eq!(&(&one + &t1) * &(&one - &t1), one);
        assert!((&t1 * &t1).is_zero());
    }

    #[test]
    fn omega_and_split_examples() {
        let t1 = th(4, 1);
        assert_eq!(t1.omega(), -&t1);
        let e = G::from_terms(4, [(vec![], q(1)), (vec![1, 2], q(1))]).unwrap();
        assert_eq!(e.omega(), e);
        let x = G::from_terms(4, [(vec![1], q(1)), (vec![2, 3, 4], q(1))]).unwrap();
        assert_eq!(x.omega().omega(), x);

        let y = G::from_terms(4, [(vec![1, 2], q(1)), (vec![3], q(1))]).unwrap();
        let (ev, od) = y.split();
        assert_eq!(ev, G::from_terms(4, [(vec![1, 2], q(1))]).unwrap());
        assert_eq!(od, th(4, 3));
        assert_eq!(G::scalar(4, q(5)).split(), (G::scalar(4, q(5)), G::zero(4)));
        let z = &th(4, 1) + &th(4, 2);
        assert_eq!(z.split(), (G::zero(4), z.clone()));
    }

    #[test]
    fn capacity_errors() {
        assert_eq!(th(2, 1).try_mul(&th(3, 1)), Err(Error::CapacityMismatch(2, 3)));
        assert!(G::generator(2, 3).is_err());
        assert!(G::generator(65, 1).is_err());
        assert!(th(3, 3).with_capacity(2).is_err());
        assert_eq!(th(3, 2).with_capacity(5).unwrap().capacity(), 5);
    }

    #[test]
    fn canonical_term_order() {
        let blades: Vec<Blade> = [vec![2, 3], vec![1], vec![], vec![1, 3], vec![2], vec![1, 2]]
            .iter()
            .map(|g| Blade::from_gens(g).unwrap())
            .collect();
        let mut sorted = blades.clone();
        sorted.sort();
        let lists: Vec<Vec<usize>> = sorted.iter().map(|b| b.gens()).collect();
        assert_eq!(lists, vec![vec![], vec![1], vec![2], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn blade_product_matches_bubble_sort() {
        for a in 0u64..64 {
            for b in 0u64..64 {
                let (ba, bb) = (Blade(a), Blade(b));
                let expect = bubble_product(&ba.gens(), &bb.gens());
                let got = ba.mul(bb).map(|(c, n)| (c.gens(), n));
                assert_eq!(got, expect, "{ba} * {bb}");
            }
        }
    }

    fn arb_element(cap: usize) -> impl Strategy<Value = G> {
        prop::collection::vec((0u64..(1 << cap), -3i64..=3), 0..6).prop_map(move |ts| {
            let mut e = G::zero(cap);
            for (bits, c) in ts {
                e.add_term(Blade(bits), q(c));
            }
            e
        })
    }

    fn arb_homogeneous(cap: usize) -> impl Strategy<Value = (G, bool)> {
        (arb_element(cap), any::<bool>()).prop_map(|(e, odd)| {
            let (ev, od) = e.split();
            if odd {
                (od, true)
            } else {
                (ev, false)
            }
        })
    }

    proptest! {
        #[test]
        fn associative(a in arb_element(5), b in arb_element(5), c in arb_element(5)) {
            prop_assert_eq!(&a * &(&b * &c), &(&a * &b) * &c);
        }

        #[test]
        fn supercommutative((a, pa) in arb_homogeneous(5), (b, pb) in arb_homogeneous(5)) {
            let ab = &a * &b;
            let ba = &b * &a;
            prop_assert_eq!(ab, if pa && pb { -&ba } else { ba });
        }

        #[test]
        fn omega_is_homomorphism(a in arb_element(5), b in arb_element(5)) {
            prop_assert_eq!((&a * &b).omega(), &a.omega() * &b.omega());
        }

        #[test]
        fn repeated_generator_kills(a in arb_element(5), i in 1usize..=5) {
            let t = th(5, i);
            prop_assert!((&(&t * &a) * &t).is_zero());
        }

        #[test]
        fn split_reconstructs(a in arb_element(5)) {
            let (ev, od) = a.split();
            prop_assert!(ev.is_even() && od.is_odd());
            prop_assert_eq!(&ev + &od, a);
        }
    }
}
