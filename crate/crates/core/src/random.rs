//! Seeded random inputs for property suites.

use rand::Rng;

use crate::grassmann::{Blade, GrassmannElement};
use crate::perm::{factorial, Perm};
use crate::scalar::Scalar;
use crate::sergeev::{dimension, Monomial, SergeevElement};
use crate::supermatrix::SuperMatrix;

/// A homogeneous element with a few small integer terms.
pub fn grassmann<T: Scalar, R: Rng>(rng: &mut R, capacity: usize, odd: bool) -> GrassmannElement<T> {
    let mut out = GrassmannElement::zero(capacity);
    if capacity == 0 && odd {
        return out;
    }
    for _ in 0..rng.gen_range(1..=3) {
        let mut bits: u64 = 0;
        for g in 0..capacity {
            if rng.gen_bool(0.35) {
                bits |= 1 << g;
            }
        }
        if (bits.count_ones() % 2 == 1) != odd {
            bits ^= 1 << rng.gen_range(0..capacity.max(1));
        }
        if capacity == 0 {
            bits = 0;
        }
        out.add_term(Blade::from_bits(bits), T::from_int(rng.gen_range(-3..=3)));
    }
    out
}

/// A degree-0 element of `M(n, n)`.
pub fn matrix<T: Scalar, R: Rng>(rng: &mut R, n: usize, capacity: usize) -> SuperMatrix<T> {
    let mut m = SuperMatrix::zeros(2 * n, Some((n, n)), capacity);
    for i in 0..2 * n {
        for j in 0..2 * n {
            m.set(i, j, grassmann(rng, capacity, (i < n) != (j < n)));
        }
    }
    m
}

/// A plain element of `M_n(E)` with mixed-parity entries.
pub fn plain_matrix<T: Scalar, R: Rng>(rng: &mut R, n: usize, capacity: usize) -> SuperMatrix<T> {
    let mut m = SuperMatrix::zeros(n, None, capacity);
    for i in 0..n {
        for j in 0..n {
            let e = grassmann(rng, capacity, false);
            let o = grassmann(rng, capacity, true);
            m.set(i, j, &e + &o);
        }
    }
    m
}

pub fn perm<R: Rng>(rng: &mut R, d: usize) -> Perm {
    Perm::unrank(d, rng.gen_range(0..factorial(d)))
}

pub fn monomial<R: Rng>(rng: &mut R, d: usize) -> Monomial {
    Monomial::from_index(d, rng.gen_range(0..dimension(d)))
}

pub fn sergeev<T: Scalar, R: Rng>(rng: &mut R, d: usize) -> SergeevElement<T> {
    let mut w = SergeevElement::zero(d);
    for _ in 0..rng.gen_range(1..=4) {
        w.add_term(monomial(rng, d), T::from_int(rng.gen_range(-3..=3)));
    }
    w
}
