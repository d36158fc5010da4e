//! Square matrices over `E_N`, optionally carrying a `(k, l)` block grading.
//!
//! With a grading the matrix lives in `M(k, l)`: Grassmann scalars act
//! through `ω_{k,l}(e) = diag(e, …, e, ω(e), …, ω(e))`, and the supertrace
//! is available. Without one it is a plain element of `M_n(E)`, which is
//! where the queer trace lives.

use std::fmt;

use crate::error::{Error, Result};
use crate::grassmann::{Blade, GrassmannElement};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct SuperMatrix<T> {
    size: usize,
    grading: Option<(usize, usize)>,
    capacity: usize,
    entries: Vec<GrassmannElement<T>>,
}

impl<T: Scalar> SuperMatrix<T> {
    pub fn zeros(size: usize, grading: Option<(usize, usize)>, capacity: usize) -> Self {
        if let Some((k, l)) = grading {
            assert_eq!(k + l, size, "grading ({k},{l}) does not match size {size}");
        }
        SuperMatrix { size, grading, capacity, entries: vec![GrassmannElement::zero(capacity); size * size] }
    }

    pub fn identity(size: usize, grading: Option<(usize, usize)>, capacity: usize) -> Self {
        let mut m = Self::zeros(size, grading, capacity);
        for i in 0..size {
            m.entries[i * size + i] = GrassmannElement::one(capacity);
        }
        m
    }

    /// `coef · E_ab` with 1-based `a`, `b`, placed as a plain entry.
    pub fn unit(size: usize, grading: Option<(usize, usize)>, a: usize, b: usize, coef: GrassmannElement<T>) -> Self {
        let mut m = Self::zeros(size, grading, coef.capacity());
        m.set(a - 1, b - 1, coef);
        m
    }

    pub fn from_rows(grading: Option<(usize, usize)>, rows: Vec<Vec<GrassmannElement<T>>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::Shape("empty matrix".into()));
        }
        if let Some((k, l)) = grading {
            if k + l != size {
                return Err(Error::Shape(format!("grading ({k},{l}) on a {size}×{size} matrix")));
            }
        }
        let capacity = rows[0][0].capacity();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::Shape(format!("row of length {} in a {size}×{size} matrix", row.len())));
            }
            for e in row {
                if e.capacity() != capacity {
                    return Err(Error::CapacityMismatch(capacity, e.capacity()));
                }
                entries.push(e);
            }
        }
        Ok(SuperMatrix { size, grading, capacity, entries })
    }

    /// `J = [[0, I], [I, 0]]` in `M(n, n)`.
    pub fn j(n: usize, capacity: usize) -> Self {
        let mut m = Self::zeros(2 * n, Some((n, n)), capacity);
        for i in 0..n {
            m.set(i, n + i, GrassmannElement::one(capacity));
            m.set(n + i, i, GrassmannElement::one(capacity));
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn grading(&self) -> Option<(usize, usize)> {
        self.grading
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// 0-based entry.
    pub fn get(&self, i: usize, j: usize) -> &GrassmannElement<T> {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: GrassmannElement<T>) {
        assert_eq!(e.capacity(), self.capacity, "entry capacity");
        self.entries[i * self.size + j] = e;
    }

    pub fn rows(&self) -> Vec<Vec<GrassmannElement<T>>> {
        self.entries.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// 0 for the first `k` rows/columns, 1 after.
    pub fn block(&self, i: usize) -> usize {
        match self.grading {
            Some((k, _)) if i >= k => 1,
            _ => 0,
        }
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SuperMatrix<U> {
        SuperMatrix {
            size: self.size,
            grading: self.grading,
            capacity: self.capacity,
            entries: self.entries.iter().map(|e| e.map_coeffs(&f)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn with_grading(&self, grading: Option<(usize, usize)>) -> Result<Self> {
        if let Some((k, l)) = grading {
            if k + l != self.size {
                return Err(Error::Shape(format!("grading ({k},{l}) on size {}", self.size)));
            }
        }
        Ok(SuperMatrix { grading, ..self.clone() })
    }

    pub fn with_capacity(&self, capacity: usize) -> Result<Self> {
        let entries = self.entries.iter().map(|e| e.with_capacity(capacity)).collect::<Result<Vec<_>>>()?;
        Ok(SuperMatrix { capacity, entries, ..self.clone() })
    }

    fn check_compatible(&self, rhs: &Self) -> Result<()> {
        if self.size != rhs.size {
            return Err(Error::Shape(format!("{} vs {}", self.size, rhs.size)));
        }
        if self.grading != rhs.grading {
            return Err(Error::GradingMismatch(format!("{:?} vs {:?}", self.grading, rhs.grading)));
        }
        if self.capacity != rhs.capacity {
            return Err(Error::CapacityMismatch(self.capacity, rhs.capacity));
        }
        Ok(())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let n = self.size;
        let mut out = Self::zeros(n, self.grading, self.capacity);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    let slot = &mut out.entries[i * n + j];
                    *slot = &*slot + &prod;
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        Ok(SuperMatrix { entries, ..self.clone() })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    /// Multiplication by a base-field scalar.
    pub fn scale(&self, c: &T) -> Self {
        let entries = self.entries.iter().map(|e| e.scale(c)).collect();
        SuperMatrix { entries, ..self.clone() }
    }

    /// The diagonal matrix through which `e` acts: `ω_{k,l}(e)` when graded,
    /// `e·I` otherwise.
    pub fn scalar_matrix(&self, e: &GrassmannElement<T>) -> Result<Self> {
        if e.capacity() != self.capacity {
            return Err(Error::CapacityMismatch(self.capacity, e.capacity()));
        }
        let mut m = Self::zeros(self.size, self.grading, self.capacity);
        let odd_block = e.omega();
        for i in 0..self.size {
            let d = if self.block(i) == 1 { odd_block.clone() } else { e.clone() };
            m.set(i, i, d);
        }
        Ok(m)
    }

    /// Left action `e · a` (through `ω_{k,l}` when graded).
    pub fn act(&self, e: &GrassmannElement<T>) -> Result<Self> {
        if e.capacity() != self.capacity {
            return Err(Error::CapacityMismatch(self.capacity, e.capacity()));
        }
        let n = self.size;
        let odd_block = e.omega();
        let mut out = self.clone();
        for i in 0..n {
            let d = if self.block(i) == 1 { &odd_block } else { e };
            for j in 0..n {
                out.entries[i * n + j] = d * self.get(i, j);
            }
        }
        Ok(out)
    }

    /// Right action `a · e`.
    pub fn act_right(&self, e: &GrassmannElement<T>) -> Result<Self> {
        self.try_mul(&self.scalar_matrix(e)?)
    }

    /// `(degree-0 part, degree-1 part)` under the grading.
    pub fn split_degree(&self) -> Result<(Self, Self)> {
        if self.grading.is_none() {
            return Err(Error::Ungraded);
        }
        let n = self.size;
        let mut d0 = Self::zeros(n, self.grading, self.capacity);
        let mut d1 = d0.clone();
        for i in 0..n {
            for j in 0..n {
                let (ev, od) = self.get(i, j).split();
                if self.block(i) == self.block(j) {
                    d0.set(i, j, ev);
                    d1.set(i, j, od);
                } else {
                    d0.set(i, j, od);
                    d1.set(i, j, ev);
                }
            }
        }
        Ok((d0, d1))
    }

    /// `Some(g)` if the matrix is homogeneous of degree `g` (zero reports 0).
    pub fn degree(&self) -> Result<Option<u8>> {
        let (d0, d1) = self.split_degree()?;
        Ok(match (d0.is_zero(), d1.is_zero()) {
            (_, true) => Some(0),
            (true, false) => Some(1),
            (false, false) => None,
        })
    }

    /// The supertrace on `M(k, l)`, extended linearly from homogeneous parts.
    pub fn str(&self) -> Result<GrassmannElement<T>> {
        let (k, _) = self.grading.ok_or(Error::Ungraded)?;
        // degree-0 part keeps the even diagonal, degree-1 the odd one; the
        // lower block picks up -(-1)^deg, i.e. -ω on its diagonal entries
        let mut out = GrassmannElement::zero(self.capacity);
        for i in 0..self.size {
            let a = self.get(i, i);
            out = if i < k { &out + a } else { &out - &a.omega() };
        }
        Ok(out)
    }

    /// Odd part of the diagonal sum (the queer trace of `M_n(E)`).
    pub fn qtr(&self) -> GrassmannElement<T> {
        let mut out = GrassmannElement::zero(self.capacity);
        for i in 0..self.size {
            out = &out + self.get(i, i);
        }
        out.odd_part()
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.try_mul(other)? == other.try_mul(self)?)
    }

    fn check_square_nn(&self) -> Result<usize> {
        match self.grading {
            Some((k, l)) if k == l => Ok(k),
            Some(g) => Err(Error::GradingMismatch(format!("expected (n,n), found {g:?}"))),
            None => Err(Error::Ungraded),
        }
    }

    /// `½ str(J a)` for `a` in the centralizer `SM(n, n)` of `J`.
    pub fn qtr_tilde(&self) -> Result<GrassmannElement<T>> {
        let n = self.check_square_nn()?;
        let j = Self::j(n, self.capacity);
        if !self.commutes_with(&j)? {
            return Err(Error::NotInCentralizer);
        }
        Ok(j.try_mul(self)?.str()?.scale(&T::half()))
    }

    /// `tr(B)` for `a = [[A, B], [B, A]]`; agrees with [`Self::qtr_tilde`] on
    /// degree-0 elements only.
    pub fn qtr_tilde_block_trace(&self) -> Result<GrassmannElement<T>> {
        let n = self.check_square_nn()?;
        self.check_symmetric_block(n)?;
        let mut out = GrassmannElement::zero(self.capacity);
        for i in 0..n {
            out = &out + self.get(i, n + i);
        }
        Ok(out)
    }

    fn check_symmetric_block(&self, n: usize) -> Result<()> {
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j) != self.get(n + i, n + j) || self.get(i, n + j) != self.get(n + i, j) {
                    return Err(Error::NotSymmetricBlock);
                }
            }
        }
        Ok(())
    }

    /// `[[A, B], [B, A]] ↦ A + B`, an ungraded `n × n` matrix.
    pub fn iso(&self) -> Result<Self> {
        let n = self.check_square_nn()?;
        self.check_symmetric_block(n)?;
        let mut out = Self::zeros(n, None, self.capacity);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(i, j) + self.get(i, n + j));
            }
        }
        Ok(out)
    }

    /// Inverse of [`Self::iso`]: `X ↦ [[X₀, X₁], [X₁, X₀]]` with `X₀`, `X₁`
    /// the even and odd parts entrywise, giving a degree-0 element of
    /// `SM(n, n)`.
    pub fn iso_inverse(&self) -> Self {
        let n = self.size;
        let mut out = Self::zeros(2 * n, Some((n, n)), self.capacity);
        for i in 0..n {
            for j in 0..n {
                let (ev, od) = self.get(i, j).split();
                out.set(i, j, ev.clone());
                out.set(n + i, n + j, ev);
                out.set(i, n + j, od.clone());
                out.set(n + i, j, od);
            }
        }
        out
    }
}

/// Graded matrix units spanning `M(n, n)_0` for one substitution slot:
/// `E_ab` on the diagonal blocks and `θ_g E_ab` on the off-diagonal blocks,
/// with `g` the slot's odd generator.
pub fn spanning_set<T: Scalar>(n: usize, generator: usize, capacity: usize) -> Result<Vec<SuperMatrix<T>>> {
    if generator == 0 || generator > capacity {
        return Err(Error::CapacityExhausted { needed: generator, available: capacity });
    }
    let size = 2 * n;
    let theta = GrassmannElement::monomial(capacity, Blade::generator(generator), T::one());
    let one = GrassmannElement::one(capacity);
    let mut out = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            let coef = if (a < n) == (b < n) { one.clone() } else { theta.clone() };
            out.push(SuperMatrix::unit(size, Some((n, n)), a + 1, b + 1, coef));
        }
    }
    Ok(out)
}

impl<T: Scalar> fmt::Debug for SuperMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Scalar> fmt::Display for SuperMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.size).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type G = GrassmannElement<Rational>;
    type M = SuperMatrix<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn th(cap: usize, i: usize) -> G {
        G::generator(cap, i).unwrap()
    }

    fn rand_grassmann(rng: &mut ChaCha8Rng, cap: usize, parity: Option<bool>) -> G {
        let mut e = G::zero(cap);
        for _ in 0..rng.gen_range(0..4) {
            let bits: u64 = rng.gen_range(0..(1u64 << cap));
            let blade = Blade::from_bits(bits);
            if parity.is_none_or(|odd| blade.is_odd() == odd) {
                e.add_term(blade, q(rng.gen_range(-3..=3)));
            }
        }
        e
    }

    /// Random homogeneous element of `M(n, n)` of the given degree.
    fn rand_graded(rng: &mut ChaCha8Rng, n: usize, cap: usize, degree: u8) -> M {
        let mut m = M::zeros(2 * n, Some((n, n)), cap);
        for i in 0..2 * n {
            for j in 0..2 * n {
                let cross = (i < n) != (j < n);
                let odd = cross ^ (degree == 1);
                m.set(i, j, rand_grassmann(rng, cap, Some(odd)));
            }
        }
        m
    }

    fn rand_sym(rng: &mut ChaCha8Rng, n: usize, cap: usize) -> M {
        let a = rand_graded(rng, n, cap, 0);
        let j = M::j(n, cap);
        a.try_add(&j.try_mul(&a).unwrap().try_mul(&j).unwrap()).unwrap()
    }

    #[test]
    fn supertrace_examples() {
        assert!(M::identity(2, Some((1, 1)), 2).str().unwrap().is_zero());
        let a = M::unit(2, Some((1, 1)), 2, 2, th(2, 1));
        assert_eq!(a.degree().unwrap(), Some(1));
        assert_eq!(a.str().unwrap(), th(2, 1));
        assert_eq!(M::unit(2, Some((1, 1)), 1, 1, G::one(2)).str().unwrap(), G::one(2));
        assert_eq!(M::zeros(2, None, 1).str(), Err(Error::Ungraded));
    }

    #[test]
    fn scalar_action_examples() {
        let e22 = M::unit(2, Some((1, 1)), 2, 2, G::one(3));
        assert_eq!(e22.act(&th(3, 1)).unwrap(), M::unit(2, Some((1, 1)), 2, 2, -&th(3, 1)));
        let t12 = &th(3, 1) * &th(3, 2);
        assert_eq!(e22.act(&t12).unwrap(), M::unit(2, Some((1, 1)), 2, 2, t12.clone()));
        assert_eq!(e22.act(&G::one(3)).unwrap(), e22);
        assert!(e22.act(&G::one(2)).is_err());
    }

    #[test]
    fn j_examples() {
        let j = M::j(1, 1);
        let mut expect = M::unit(2, Some((1, 1)), 1, 2, G::one(1));
        expect.set(1, 0, G::one(1));
        assert_eq!(j, expect);
        assert_eq!(j.try_mul(&j).unwrap(), M::identity(2, Some((1, 1)), 1));
        assert_eq!(j.degree().unwrap(), Some(1));
        assert!(M::j(2, 1).str().unwrap().is_zero());
    }

    #[test]
    fn queer_trace_examples() {
        let a = M::from_rows(None, vec![vec![&G::scalar(2, q(3)) + &th(2, 1)]]).unwrap();
        assert_eq!(a.qtr(), th(2, 1));
        let mut d = M::zeros(2, None, 2);
        d.set(0, 0, th(2, 1));
        d.set(1, 1, th(2, 2));
        assert_eq!(d.qtr(), &th(2, 1) + &th(2, 2));
        let even = M::from_rows(None, vec![vec![&th(2, 1) * &th(2, 2)]]).unwrap();
        assert!(even.qtr().is_zero());
    }

    #[test]
    fn qtr_tilde_examples_and_readings() {
        let i2 = M::identity(2, Some((1, 1)), 1);
        assert!(i2.qtr_tilde().unwrap().is_zero());
        // B = 1 (a degree-1 element): ½str(J·J) = 0 while tr(B) = 1
        let j = M::j(1, 1);
        assert!(j.qtr_tilde().unwrap().is_zero());
        assert_eq!(j.qtr_tilde_block_trace().unwrap(), G::one(1));
        // B = θ1 (degree 0): both readings give θ1
        let mut b = M::zeros(2, Some((1, 1)), 1);
        b.set(0, 1, th(1, 1));
        b.set(1, 0, th(1, 1));
        assert_eq!(b.qtr_tilde().unwrap(), th(1, 1));
        assert_eq!(b.qtr_tilde_block_trace().unwrap(), th(1, 1));
        let not_sym = M::unit(2, Some((1, 1)), 1, 1, G::one(1));
        assert_eq!(not_sym.qtr_tilde(), Err(Error::NotInCentralizer));
    }

    #[test]
    fn iso_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = rand_grassmann(&mut rng, 3, Some(false));
        let mut diag = M::zeros(2, Some((1, 1)), 3);
        diag.set(0, 0, a.clone());
        diag.set(1, 1, a.clone());
        assert_eq!(diag.iso().unwrap(), M::from_rows(None, vec![vec![a]]).unwrap());
        let b = th(3, 2);
        let mut off = M::zeros(2, Some((1, 1)), 3);
        off.set(0, 1, b.clone());
        off.set(1, 0, b.clone());
        assert_eq!(off.iso().unwrap(), M::from_rows(None, vec![vec![b]]).unwrap());
        assert_eq!(M::unit(2, Some((1, 1)), 1, 2, G::one(3)).iso(), Err(Error::NotSymmetricBlock));
    }

    #[test]
    fn spanning_set_shape() {
        let s1 = spanning_set::<Rational>(1, 1, 1).unwrap();
        assert_eq!(s1.len(), 4);
        assert_eq!(s1[1], M::unit(2, Some((1, 1)), 1, 2, th(1, 1)));
        assert_eq!(spanning_set::<Rational>(2, 3, 4).unwrap().len(), 16);
        for m in spanning_set::<Rational>(2, 2, 2).unwrap() {
            assert_eq!(m.degree().unwrap(), Some(0));
        }
        assert!(spanning_set::<Rational>(1, 3, 2).is_err());
    }

    #[test]
    fn supertrace_is_supersymmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let (da, db) = (rng.gen_range(0..2u8), rng.gen_range(0..2u8));
            let n = rng.gen_range(1..=2);
            let a = rand_graded(&mut rng, n, 4, da);
            let b = rand_graded(&mut rng, n, 4, db);
            let ab = a.try_mul(&b).unwrap().str().unwrap();
            let ba = b.try_mul(&a).unwrap().str().unwrap();
            let expect = if da * db == 1 { -&ba } else { ba };
            assert_eq!(ab, expect);
        }
    }

    #[test]
    fn supertrace_is_e_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..40 {
            let deg = rng.gen_range(0..2);
            let a = rand_graded(&mut rng, 1, 4, deg);
            let e = rand_grassmann(&mut rng, 4, None);
            assert_eq!(a.act(&e).unwrap().str().unwrap(), &e * &a.str().unwrap());
        }
    }

    #[test]
    fn centralizer_elements_have_zero_supertrace() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..40 {
            let n = rng.gen_range(1..=2);
            let s = rand_sym(&mut rng, n, 4);
            assert!(s.commutes_with(&M::j(s.size() / 2, 4)).unwrap());
            assert!(s.str().unwrap().is_zero());
        }
    }

    #[test]
    fn iso_is_multiplicative_and_preserves_queer_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..50 {
            let a = rand_sym(&mut rng, 1, 4);
            let b = rand_sym(&mut rng, 1, 4);
            let ab = a.try_mul(&b).unwrap();
            assert_eq!(ab.iso().unwrap(), a.iso().unwrap().try_mul(&b.iso().unwrap()).unwrap());
            assert_eq!(a.qtr_tilde().unwrap(), a.iso().unwrap().qtr());
            assert_eq!(a.iso().unwrap().iso_inverse(), a);
        }
    }

    #[test]
    fn queer_trace_is_a_trace_with_anticommuting_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..50 {
            let n = rng.gen_range(1..=2);
            let mut a = M::zeros(n, None, 4);
            let mut b = M::zeros(n, None, 4);
            for i in 0..n {
                for j in 0..n {
                    a.set(i, j, rand_grassmann(&mut rng, 4, None));
                    b.set(i, j, rand_grassmann(&mut rng, 4, None));
                }
            }
            assert_eq!(a.try_mul(&b).unwrap().qtr(), b.try_mul(&a).unwrap().qtr());
            assert_eq!(&a.qtr() * &b.qtr(), -&(&b.qtr() * &a.qtr()));
        }
    }
}
