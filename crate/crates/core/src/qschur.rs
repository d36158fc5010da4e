//! Strict partitions and Schur Q-functions in finitely many variables.
//!
//! `Q_λ` is built from `q_r` (the coefficients of `Π (1 + x_i t)/(1 - x_i t)`)
//! via the two-row rule and the Pfaffian expansion. Products are expanded
//! back into the `Q_μ` basis by peeling off lex-leading monomials, which for
//! `Q_μ` sit at `x^μ`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct StrictPartition(Vec<usize>);

impl StrictPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let strict = parts.windows(2).all(|w| w[0] > w[1]);
        if !strict || parts.last() == Some(&0) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(StrictPartition(parts))
    }

    pub fn empty() -> Self {
        StrictPartition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// `ℓ(λ)`, the number of parts.
    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// `self ⊇ other`: every part of `self` dominates the matching part of
    /// `other`, padding with zeros.
    pub fn contains(&self, other: &StrictPartition) -> bool {
        (0..self.height().max(other.height())).all(|i| self.part(i) >= other.part(i))
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All strict partitions of `d`, in reverse lexicographic order.
pub fn dp(d: usize) -> Vec<StrictPartition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<StrictPartition>) {
        if rest == 0 {
            out.push(StrictPartition(prefix.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

/// `δ_n = (n+1, n, …, 1)`.
pub fn staircase(n: usize) -> StrictPartition {
    StrictPartition((1..=n + 1).rev().collect())
}

/// Least degree of a pure (`C(n+2, 2)`) or mixed (`C(n+2, 2) - 1`) J-trace
/// identity of `M(n, n)`.
pub fn min_degree(n: usize, mixed: bool) -> usize {
    let pure = (n + 2) * (n + 1) / 2;
    if mixed {
        pure - 1
    } else {
        pure
    }
}

/// A polynomial in `m` commuting variables, keyed by exponent vectors.
#[derive(Clone, PartialEq)]
pub struct SymPoly<T> {
    m: usize,
    terms: BTreeMap<Vec<u8>, T>,
}

impl<T: Scalar> SymPoly<T> {
    pub fn zero(m: usize) -> Self {
        SymPoly { m, terms: BTreeMap::new() }
    }

    pub fn one(m: usize) -> Self {
        let mut p = Self::zero(m);
        p.add_term(vec![0; m], T::one());
        p
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &T)> {
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

    pub fn coeff(&self, exps: &[u8]) -> T {
        self.terms.get(exps).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u8>, c: T) {
        debug_assert_eq!(exps.len(), self.m);
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&exps) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(exps, sum);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.m);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-T::one()))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.m);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let e: Vec<u8> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// The lexicographically largest exponent vector and its coefficient.
    pub fn leading(&self) -> Option<(&Vec<u8>, &T)> {
        self.terms.iter().next_back()
    }

    /// Swaps two variables (0-based).
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.m);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.swap(i, j);
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (1..self.m).all(|i| self.swap_vars(i - 1, i) == *self)
    }
}

impl<T: Scalar> fmt::Debug for SymPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Scalar> fmt::Display for SymPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", c.to_text())?;
            } else {
                write!(f, "{}*{}", c.to_text(), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Monomials `x^e` of total degree `deg` in `m` variables with each
/// exponent at most `cap`.
fn monomials(m: usize, deg: usize, cap: usize) -> Vec<Vec<u8>> {
    fn go(i: usize, m: usize, rest: usize, cap: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == m {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=rest.min(cap) {
            cur.push(k as u8);
            go(i + 1, m, rest - k, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, deg, cap, &mut Vec::new(), &mut out);
    out
}

/// Memoized `q_r` and `Q_λ` in a fixed number of variables.
pub struct QFunctions<T> {
    m: usize,
    q: Vec<SymPoly<T>>,
    cache: BTreeMap<Vec<usize>, SymPoly<T>>,
}

impl<T: Scalar> QFunctions<T> {
    pub fn new(m: usize) -> Self {
        QFunctions { m, q: Vec::new(), cache: BTreeMap::new() }
    }

    pub fn vars(&self) -> usize {
        self.m
    }

    /// `q_r = Σ_{a+b=r} e_a h_b`.
    pub fn q(&mut self, r: usize) -> SymPoly<T> {
        while self.q.len() <= r {
            let k = self.q.len();
            let mut out = SymPoly::zero(self.m);
            for a in 0..=k.min(self.m) {
                let mut e = SymPoly::zero(self.m);
                for x in monomials(self.m, a, 1) {
                    e.add_term(x, T::one());
                }
                let mut h = SymPoly::zero(self.m);
                for x in monomials(self.m, k - a, k - a) {
                    h.add_term(x, T::one());
                }
                out = out.add(&e.mul(&h));
            }
            self.q.push(out);
        }
        self.q[r].clone()
    }

    /// `Q_(r,s) = q_r q_s + 2 Σ_{i=1}^{s} (-1)^i q_{r+i} q_{s-i}`.
    fn two_row(&mut self, r: usize, s: usize) -> SymPoly<T> {
        let mut out = self.q(r).mul(&self.q(s));
        let two = T::from_int(2);
        for i in 1..=s {
            let term = self.q(r + i).mul(&self.q(s - i)).scale(&two);
            out = if i % 2 == 1 { out.sub(&term) } else { out.add(&term) };
        }
        out
    }

    /// `Q_λ` by Pfaffian expansion along the first row.
    pub fn qpoly(&mut self, lambda: &StrictPartition) -> Result<SymPoly<T>> {
        if self.m < lambda.height() {
            return Err(Error::BasisExpansion(format!("{} variables cannot separate {lambda}", self.m)));
        }
        Ok(self.pfaffian(lambda.parts()))
    }

    fn pfaffian(&mut self, parts: &[usize]) -> SymPoly<T> {
        if let Some(p) = self.cache.get(parts) {
            return p.clone();
        }
        let out = match parts {
            [] => SymPoly::one(self.m),
            [r] => self.q(*r),
            [r, s] => self.two_row(*r, *s),
            _ => {
                let mut padded = parts.to_vec();
                if padded.len() % 2 == 1 {
                    padded.push(0);
                }
                let mut out = SymPoly::zero(self.m);
                for j in 1..padded.len() {
                    let pair = if padded[j] == 0 { self.q(padded[0]) } else { self.two_row(padded[0], padded[j]) };
                    let rest: Vec<usize> = padded[1..]
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| k + 1 != j)
                        .map(|(_, &p)| p)
                        .filter(|&p| p > 0)
                        .collect();
                    let term = pair.mul(&self.pfaffian(&rest));
                    // sign (-1)^j for the 1-based column index j + 1
                    out = if j % 2 == 1 { out.add(&term) } else { out.sub(&term) };
                }
                out
            }
        };
        self.cache.insert(parts.to_vec(), out.clone());
        out
    }

    /// Coefficients of `p` in the basis `{Q_μ}`, found by repeatedly
    /// cancelling the lex-leading monomial.
    pub fn expand(&mut self, p: &SymPoly<T>) -> Result<Vec<(StrictPartition, T)>> {
        let mut rest = p.clone();
        let mut out = Vec::new();
        while let Some((lead, c)) = rest.leading() {
            let parts: Vec<usize> = lead.iter().map(|&k| k as usize).take_while(|&k| k > 0).collect();
            let tail_zero = lead[parts.len()..].iter().all(|&k| k == 0);
            let mu = match StrictPartition::new(parts.clone()) {
                Ok(mu) if tail_zero => mu,
                _ => return Err(Error::BasisExpansion(format!("leading exponent {lead:?} is not a strict partition"))),
            };
            let q_mu = self.qpoly(&mu)?;
            let lc = q_mu.coeff(lead);
            if lc.is_zero() {
                return Err(Error::BasisExpansion(format!("Q{mu} does not lead with x^{mu}")));
            }
            let k = c.clone() / lc;
            rest = rest.sub(&q_mu.scale(&k));
            out.push((mu, k));
        }
        Ok(out)
    }

    /// `μ` with nonzero coefficient in `Q_λ · Q_(1)`.
    pub fn pieri_support(&mut self, lambda: &StrictPartition) -> Result<Vec<StrictPartition>> {
        if self.m < lambda.height() + 1 {
            return Err(Error::BasisExpansion(format!("{} variables are too few for {lambda} times Q(1)", self.m)));
        }
        let one = StrictPartition(vec![1]);
        let prod = self.qpoly(lambda)?.mul(&self.qpoly(&one)?);
        let mut support: Vec<StrictPartition> = self.expand(&prod)?.into_iter().map(|(mu, _)| mu).collect();
        support.sort_by(|a, b| b.cmp(a));
        Ok(support)
    }
}

/// `Q_λ` in `m` variables.
pub fn qpoly<T: Scalar>(lambda: &StrictPartition, m: usize) -> Result<SymPoly<T>> {
    QFunctions::new(m).qpoly(lambda)
}

/// Support of `Q_λ Q_(1)` using `m` variables.
pub fn pieri_support<T: Scalar>(lambda: &StrictPartition, m: usize) -> Result<Vec<StrictPartition>> {
    QFunctions::<T>::new(m).pieri_support(lambda)
}

/// Applies the Pieri support map `steps` times to `start`, using
/// `|λ| + 1` variables at each step.
pub fn iterate_support<T: Scalar>(start: &[StrictPartition], steps: usize) -> Result<BTreeSet<StrictPartition>> {
    let mut current: BTreeSet<StrictPartition> = start.iter().cloned().collect();
    for _ in 0..steps {
        let mut next = BTreeSet::new();
        let m = current.iter().map(|l| l.weight() + 1).max().unwrap_or(1);
        let mut qf = QFunctions::<T>::new(m);
        for lambda in &current {
            next.extend(qf.pieri_support(lambda)?);
        }
        current = next;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn sp(parts: &[usize]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    /// Number of partitions of `d` into distinct parts, by subset sums.
    fn brute_count(d: usize) -> usize {
        (0u32..1 << d).filter(|s| (0..d).filter(|i| s >> i & 1 == 1).map(|i| i + 1).sum::<usize>() == d).count()
    }

    #[test]
    fn dp_examples() {
        assert_eq!(dp(2), vec![sp(&[2])]);
        assert_eq!(dp(3), vec![sp(&[3]), sp(&[2, 1])]);
        assert_eq!(dp(4), vec![sp(&[4]), sp(&[3, 1])]);
        assert_eq!(dp(0), vec![StrictPartition::empty()]);
        let sizes: Vec<usize> = (0..=7).map(|d| dp(d).len()).collect();
        assert_eq!(sizes, vec![1, 1, 1, 2, 2, 3, 4, 5]);
        for d in 0..=12 {
            assert_eq!(dp(d).len(), brute_count(d));
        }
    }

    #[test]
    fn partition_validation() {
        assert!(StrictPartition::new(vec![2, 2]).is_err());
        assert!(StrictPartition::new(vec![1, 2]).is_err());
        assert!(StrictPartition::new(vec![3, 0]).is_err());
        assert_eq!(sp(&[3, 1]).to_string(), "(3,1)");
    }

    #[test]
    fn containment() {
        assert!(sp(&[3, 1]).contains(&sp(&[2, 1])));
        assert!(!sp(&[4]).contains(&sp(&[2, 1])));
        for n in 0..=3 {
            let delta = staircase(n);
            for w in 0..=8 {
                for lambda in dp(w) {
                    assert_eq!(lambda.height() > n, lambda.contains(&delta), "{lambda} vs {delta}");
                }
            }
        }
    }

    #[test]
    fn staircase_and_degrees() {
        assert_eq!(staircase(1), sp(&[2, 1]));
        assert_eq!(staircase(2), sp(&[3, 2, 1]));
        for n in 0..=6 {
            assert_eq!(staircase(n).weight(), (n + 2) * (n + 1) / 2);
        }
        assert_eq!(min_degree(1, false), 3);
        assert_eq!(min_degree(1, true), 2);
        assert_eq!(min_degree(2, true), 5);
    }

    #[test]
    fn q_function_examples() {
        let q1 = qpoly::<Q>(&sp(&[1]), 2).unwrap();
        let mut expect = SymPoly::zero(2);
        expect.add_term(vec![1, 0], Q::from_int(2));
        expect.add_term(vec![0, 1], Q::from_int(2));
        assert_eq!(q1, expect);
        let mut qf = QFunctions::<Q>::new(2);
        let q21 = qf.qpoly(&sp(&[2, 1])).unwrap();
        let by_rule = qf.q(2).mul(&qf.q(1)).sub(&qf.q(3).scale(&Q::from_int(2)));
        assert_eq!(q21, by_rule);
        assert!(q21.is_symmetric());
        assert_eq!(q21.leading().unwrap(), (&vec![2, 1], &Q::from_int(4)));
        assert!(matches!(qpoly::<Q>(&sp(&[3, 2, 1]), 2), Err(Error::BasisExpansion(_))));
    }

    #[test]
    fn q_functions_are_symmetric_with_expected_leaders() {
        let mut qf = QFunctions::<Q>::new(5);
        for w in 1..=5 {
            for mu in dp(w) {
                let p = qf.qpoly(&mu).unwrap();
                assert!(p.is_symmetric(), "{mu}");
                let lead: Vec<u8> = (0..5).map(|i| mu.part(i) as u8).collect();
                assert_eq!(p.leading().unwrap(), (&lead, &Q::from_int(1 << mu.height())));
            }
        }
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri_support::<Q>(&sp(&[2, 1]), 4).unwrap(), vec![sp(&[3, 1])]);
        assert_eq!(pieri_support::<Q>(&sp(&[2]), 3).unwrap(), vec![sp(&[3]), sp(&[2, 1])]);
        assert!(matches!(pieri_support::<Q>(&sp(&[2, 1]), 2), Err(Error::BasisExpansion(_))));
        let mut qf = QFunctions::<Q>::new(3);
        let sq = qf.qpoly(&sp(&[1])).unwrap();
        let expansion = qf.expand(&sq.mul(&sq)).unwrap();
        assert_eq!(expansion, vec![(sp(&[2]), Q::from_int(2))]);
    }

    #[test]
    fn pieri_support_is_containment() {
        for w in 0..=4 {
            let mut qf = QFunctions::<Q>::new(w + 1);
            for lambda in dp(w) {
                let expect: Vec<StrictPartition> = dp(w + 1).into_iter().filter(|mu| mu.contains(&lambda)).collect();
                assert_eq!(qf.pieri_support(&lambda).unwrap(), expect, "{lambda}");
            }
        }
    }
}
