//! Evaluation of J-trace expressions and of `jtr_w` on supermatrices.

use crate::error::{Error, Result};
use crate::grassmann::{Blade, GrassmannElement, MAX_CAPACITY};
use crate::scalar::Scalar;
use crate::sergeev::{Monomial, SergeevElement};
use crate::supermatrix::SuperMatrix;

use super::{Factor, JTraceExpr, Letter, Word};

/// Result of evaluating an expression: pure expressions give a scalar,
/// mixed ones a matrix.
#[derive(Clone, PartialEq)]
pub enum Value<T> {
    Scalar(GrassmannElement<T>),
    Matrix(SuperMatrix<T>),
}

impl<T: Scalar> std::fmt::Debug for Value<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s:?}"),
            Value::Matrix(m) => write!(f, "{m:?}"),
        }
    }
}

impl<T: Scalar> Value<T> {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Scalar(s) => s.is_zero(),
            Value::Matrix(m) => m.is_zero(),
        }
    }
}

/// Shape shared by all substituted matrices.
struct Frame<'a, T> {
    xs: &'a [SuperMatrix<T>],
    j: Option<SuperMatrix<T>>,
    size: usize,
    grading: Option<(usize, usize)>,
    capacity: usize,
}

impl<'a, T: Scalar> Frame<'a, T> {
    fn new(xs: &'a [SuperMatrix<T>], needs_j: bool) -> Result<Self> {
        let first = xs.first().ok_or_else(|| Error::Shape("no matrices substituted".into()))?;
        let (size, grading, capacity) = (first.size(), first.grading(), first.capacity());
        for x in xs {
            if x.size() != size {
                return Err(Error::Shape(format!("{} vs {}", size, x.size())));
            }
            if x.grading() != grading {
                return Err(Error::GradingMismatch(format!("{:?} vs {:?}", grading, x.grading())));
            }
            if x.capacity() != capacity {
                return Err(Error::CapacityMismatch(capacity, x.capacity()));
            }
            if grading.is_some() && x.degree()? != Some(0) {
                return Err(Error::GradingMismatch("substituted matrix is not of degree 0".into()));
            }
        }
        let j = match grading {
            Some((k, l)) if k == l => Some(SuperMatrix::j(k, capacity)),
            _ if needs_j => {
                return Err(Error::GradingMismatch("J needs matrices graded (n, n)".into()));
            }
            _ => None,
        };
        Ok(Frame { xs, j, size, grading, capacity })
    }

    fn identity(&self) -> SuperMatrix<T> {
        SuperMatrix::identity(self.size, self.grading, self.capacity)
    }

    fn word(&self, w: &Word) -> Result<SuperMatrix<T>> {
        let mut acc: Option<SuperMatrix<T>> = None;
        for l in w.letters() {
            let m = match l {
                Letter::X(i) => self.xs.get(i - 1).ok_or(Error::UnassignedVariable(*i))?,
                Letter::J => self.j.as_ref().ok_or(Error::GradingMismatch("J needs a grading (n, n)".into()))?,
            };
            acc = Some(match acc {
                None => m.clone(),
                Some(a) => a.try_mul(m)?,
            });
        }
        Ok(acc.unwrap_or_else(|| self.identity()))
    }

    /// `(scalar, matrix)`; the matrix is `None` for a pure term.
    fn term(&self, factors: &[Factor]) -> Result<(GrassmannElement<T>, Option<SuperMatrix<T>>)> {
        let mut scalar = GrassmannElement::one(self.capacity);
        let mut matrix: Option<SuperMatrix<T>> = None;
        for f in factors {
            match f {
                Factor::Str(w) | Factor::Qtr(w) => {
                    let m = self.word(w)?;
                    let t = if matches!(f, Factor::Str(_)) { m.str()? } else { m.qtr() };
                    match &mut matrix {
                        None => scalar = scalar.try_mul(&t)?,
                        Some(acc) => *acc = acc.act_right(&t)?,
                    }
                }
                Factor::Word(w) => {
                    let m = self.word(w)?;
                    matrix = Some(match matrix {
                        None => m.act(&scalar)?,
                        Some(acc) => acc.try_mul(&m)?,
                    });
                }
            }
        }
        Ok((scalar, matrix))
    }
}

impl<T: Scalar> JTraceExpr<T> {
    /// Evaluates with `x_i` replaced by `xs[i - 1]`. Supertrace expressions
    /// need matrices graded `(n, n)`; queer ones take ungraded matrices.
    pub fn eval(&self, xs: &[SuperMatrix<T>]) -> Result<Value<T>> {
        if self.is_pure() {
            self.eval_scalar(xs).map(Value::Scalar)
        } else {
            self.eval_matrix(xs).map(Value::Matrix)
        }
    }

    pub fn eval_scalar(&self, xs: &[SuperMatrix<T>]) -> Result<GrassmannElement<T>> {
        if !self.is_pure() {
            return Err(Error::MixedExpression);
        }
        let frame = Frame::new(xs, self.uses_j())?;
        let mut out = GrassmannElement::zero(frame.capacity);
        for (fs, c) in self.terms() {
            let (s, _) = frame.term(fs)?;
            out = &out + &s.scale(c);
        }
        Ok(out)
    }

    /// Evaluates as a matrix; pure terms contribute `s · I`.
    pub fn eval_matrix(&self, xs: &[SuperMatrix<T>]) -> Result<SuperMatrix<T>> {
        let frame = Frame::new(xs, self.uses_j())?;
        let mut out = SuperMatrix::zeros(frame.size, frame.grading, frame.capacity);
        for (fs, c) in self.terms() {
            let m = match frame.term(fs)? {
                (_, Some(m)) => m,
                (s, None) => frame.identity().act(&s)?,
            };
            out = out.try_add(&m.scale(c))?;
        }
        Ok(out)
    }
}

/// Evaluates `jtr_w` on degree-0 matrices of `M(n, n)` through the
/// fresh-generator identity `e_d ⋯ e_1 jtr_w(A) = tr_σ(e_1 J^{ε_1} A_1, …)`.
/// Prepared slot matrices are cached, so one evaluator serves all monomials
/// of `W(d)°` on a fixed tuple.
pub struct SergeevEvaluator<T> {
    d: usize,
    capacity: usize,
    /// `plain[i] = A_i`, `twisted[i] = e_i · J A_i`, both at capacity `N + d`
    plain: Vec<SuperMatrix<T>>,
    twisted: Vec<SuperMatrix<T>>,
}

impl<T: Scalar> SergeevEvaluator<T> {
    pub fn new(xs: &[SuperMatrix<T>]) -> Result<Self> {
        let d = xs.len();
        let frame = Frame::new(xs, true)?;
        let n = match frame.grading {
            Some((k, l)) if k == l => k,
            other => return Err(Error::GradingMismatch(format!("expected (n, n), found {other:?}"))),
        };
        let capacity = frame.capacity;
        let wide = capacity + d;
        if wide > MAX_CAPACITY {
            return Err(Error::CapacityExhausted { needed: wide, available: MAX_CAPACITY });
        }
        let j = SuperMatrix::j(n, wide);
        let mut plain = Vec::with_capacity(d);
        let mut twisted = Vec::with_capacity(d);
        for (i, x) in xs.iter().enumerate() {
            let a = x.with_capacity(wide)?;
            let e = GrassmannElement::generator(wide, capacity + i + 1)?;
            twisted.push(j.try_mul(&a)?.act(&e)?);
            plain.push(a);
        }
        Ok(SergeevEvaluator { d, capacity, plain, twisted })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn monomial(&self, m: &Monomial) -> Result<GrassmannElement<T>> {
        if m.d() != self.d {
            return Err(Error::ArityMismatch(self.d, m.d()));
        }
        let wide = self.capacity + self.d;
        let slot = |i: usize| if m.eps_at(i + 1) { &self.twisted[i] } else { &self.plain[i] };
        let mut total = GrassmannElement::one(wide);
        for cycle in m.perm.cycles() {
            let mut prod = slot(cycle[0]).clone();
            for &i in &cycle[1..] {
                prod = prod.try_mul(slot(i))?;
            }
            total = total.try_mul(&prod.str()?)?;
            if total.is_zero() {
                return Ok(GrassmannElement::zero(self.capacity));
            }
        }
        self.extract(m, &total)
    }

    /// Divides out the prefix `e_d ⋯ e_1` of the fresh generators in use.
    fn extract(&self, m: &Monomial, total: &GrassmannElement<T>) -> Result<GrassmannElement<T>> {
        let fresh_all = ((1u64 << self.d) - 1) << self.capacity;
        let fresh_used = (m.eps as u64) << self.capacity;
        // e_d ⋯ e_1 as a signed blade
        let mut prefix = (Blade::ONE, false);
        for i in (1..=self.d).rev().filter(|&i| m.eps_at(i)) {
            let (b, neg) = prefix.0.mul(Blade::generator(self.capacity + i)).expect("distinct generators");
            prefix = (b, prefix.1 ^ neg);
        }
        let mut out = GrassmannElement::zero(self.capacity);
        for (blade, c) in total.terms() {
            let fresh = blade.bits() & fresh_all;
            if fresh != fresh_used {
                let missing = (fresh_used & !fresh).trailing_zeros() as usize + 1;
                return Err(Error::FreshGeneratorDropped(missing));
            }
            let rest = Blade::from_bits(blade.bits() & !fresh_all);
            let (_, neg) = prefix.0.mul(rest).expect("disjoint blades");
            let c = if prefix.1 ^ neg { -c.clone() } else { c.clone() };
            out.add_term(rest, c);
        }
        Ok(out)
    }

    pub fn element(&self, w: &SergeevElement<T>) -> Result<GrassmannElement<T>> {
        if w.d() != self.d {
            return Err(Error::ArityMismatch(self.d, w.d()));
        }
        let mut out = GrassmannElement::zero(self.capacity);
        for (m, c) in w.terms() {
            out = &out + &self.monomial(m)?.scale(c);
        }
        Ok(out)
    }
}

pub fn eval_sergeev<T: Scalar>(w: &SergeevElement<T>, xs: &[SuperMatrix<T>]) -> Result<GrassmannElement<T>> {
    if w.d() != xs.len() {
        return Err(Error::ArityMismatch(w.d(), xs.len()));
    }
    SergeevEvaluator::new(xs)?.element(w)
}

pub fn eval_sergeev_monomial<T: Scalar>(m: &Monomial, xs: &[SuperMatrix<T>]) -> Result<GrassmannElement<T>> {
    if m.d() != xs.len() {
        return Err(Error::ArityMismatch(m.d(), xs.len()));
    }
    SergeevEvaluator::new(xs)?.monomial(m)
}
