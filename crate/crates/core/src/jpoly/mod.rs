//! Formal J-trace expressions.
//!
//! A term is a coefficient times an ordered list of factors: supertraces
//! `str(w)`, queer traces `qtr(w)` and at most one bare word `[w]`, where a
//! word is a product of variables `x_i` and `J`. Variables stand for
//! degree-0 matrices, so the parity of a word is its number of `J` letters.
//!
//! Terms are kept in a normal form: `J J` cancelled, each trace rotated to
//! a canonical starting point (with the supersymmetry sign for `str`), trace
//! factors moved before the word and sorted, like terms combined. Evaluation
//! on matrices is the ground truth; the normal form only has to agree with it.

mod eval;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use eval::{eval_sergeev, eval_sergeev_monomial, SergeevEvaluator, Value};
pub use parse::parse;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::scalar::Scalar;
use crate::sergeev::{Monomial, SergeevElement};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    /// The variable `x_i`, 1-based.
    X(usize),
    J,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X(i) => write!(f, "x{i}"),
            Letter::J => write!(f, "J"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn var(i: usize) -> Self {
        Word(vec![Letter::X(i)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        odd_j(&self.0)
    }

    pub fn j_count(&self) -> usize {
        self.0.iter().filter(|l| **l == Letter::J).count()
    }

    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().filter_map(|l| match l {
            Letter::X(i) => Some(*i),
            Letter::J => None,
        })
    }

    pub fn min_var(&self) -> Option<usize> {
        self.vars().min()
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        Word(self.0.iter().chain(&rhs.0).copied().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn odd_j(letters: &[Letter]) -> bool {
    letters.iter().filter(|l| **l == Letter::J).count() % 2 == 1
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Factor {
    Str(Word),
    Qtr(Word),
    Word(Word),
}

impl Factor {
    pub fn word(&self) -> &Word {
        match self {
            Factor::Str(w) | Factor::Qtr(w) | Factor::Word(w) => w,
        }
    }

    pub fn is_trace(&self) -> bool {
        !matches!(self, Factor::Word(_))
    }

    /// Parity of the factor's value under an all-even substitution.
    pub fn is_odd(&self) -> bool {
        match self {
            Factor::Qtr(_) => true,
            Factor::Str(w) | Factor::Word(w) => w.is_odd(),
        }
    }

    fn sort_key(&self) -> (usize, u8, &Word) {
        let kind = match self {
            Factor::Str(_) => 0,
            Factor::Qtr(_) => 1,
            Factor::Word(_) => 2,
        };
        (self.word().min_var().unwrap_or(usize::MAX), kind, self.word())
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Str(w) => write!(f, "str({w})"),
            Factor::Qtr(w) => write!(f, "qtr({w})"),
            Factor::Word(w) => write!(f, "[{w}]"),
        }
    }
}

/// Removes adjacent `J J` pairs.
fn cancel_jj(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if l == Letter::J && out.last() == Some(&Letter::J) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// The least rotation of a cyclic word among those starting at `starts`,
/// with the supersymmetry sign `(-1)^{|a||b|}` for `ab -> ba` when `signed`.
/// `None` if the same rotation is reached with both signs.
fn least_rotation(letters: &[Letter], starts: &[usize], signed: bool) -> Option<(Vec<Letter>, bool)> {
    let mut best: Option<(Vec<Letter>, bool)> = None;
    let mut conflict = false;
    for &k in starts {
        let (a, b) = letters.split_at(k);
        let neg = signed && odd_j(a) && odd_j(b);
        let rotated: Vec<Letter> = b.iter().chain(a).copied().collect();
        match &best {
            Some((w, s)) if *w == rotated => conflict |= *s != neg,
            Some((w, _)) if *w < rotated => {}
            _ => {
                best = Some((rotated, neg));
                conflict = false;
            }
        }
    }
    if conflict {
        None
    } else {
        best
    }
}

/// Canonical form of `str(w)`: `Some((negated, word))`, or `None` when the
/// factor vanishes identically.
fn canonical_str(word: &Word) -> Option<(bool, Word)> {
    let mut neg = false;
    let mut w = cancel_jj(&word.0);
    // str(J u J) = (-1)^{|u|+1} str(u)
    while w.len() >= 2 && w[0] == Letter::J && w[w.len() - 1] == Letter::J {
        let u = cancel_jj(&w[1..w.len() - 1]);
        neg ^= !odd_j(&u);
        w = u;
    }
    // str(1) = str(J) = 0 on M(n, n)
    let min = w.iter().filter_map(|l| if let Letter::X(i) = l { Some(*i) } else { None }).min()?;
    let starts: Vec<usize> = (0..w.len())
        .filter(|&p| w[p] == Letter::X(min))
        .map(|p| {
            let prev = (p + w.len() - 1) % w.len();
            if w[prev] == Letter::J {
                prev
            } else {
                p
            }
        })
        .collect();
    let (rotated, n) = least_rotation(&w, &starts, true)?;
    Some((neg ^ n, Word(rotated)))
}

/// Canonical form of `qtr(w)`: the least rotation. `None` for `qtr(1) = 0`.
fn canonical_qtr(word: &Word) -> Option<Word> {
    if word.is_empty() {
        return None;
    }
    let starts: Vec<usize> = (0..word.len()).collect();
    least_rotation(&word.0, &starts, false).map(|(w, _)| Word(w))
}

/// Normal form of a factor list: `Some((negated, factors))` or `None` if
/// the term vanishes.
pub(crate) fn normalize_term(factors: Vec<Factor>) -> Option<(bool, Vec<Factor>)> {
    let queer = factors.iter().any(|f| matches!(f, Factor::Qtr(_)));
    let mut neg = false;
    let mut fs = Vec::with_capacity(factors.len());
    for f in factors {
        match f {
            Factor::Str(w) => {
                let (n, w) = canonical_str(&w)?;
                neg ^= n;
                fs.push(Factor::Str(w));
            }
            Factor::Qtr(w) => fs.push(Factor::Qtr(canonical_qtr(&w)?)),
            Factor::Word(w) => {
                let w = Word(cancel_jj(&w.0));
                if !w.is_empty() {
                    fs.push(Factor::Word(w));
                }
            }
        }
    }
    let has_word = fs.iter().any(|f| !f.is_trace());
    if queer && has_word {
        // traces and matrices do not commute in M_n(E); only merge words
        let mut out: Vec<Factor> = Vec::with_capacity(fs.len());
        for f in fs {
            match (out.last_mut(), f) {
                (Some(Factor::Word(prev)), Factor::Word(w)) => *prev = Word(cancel_jj(&prev.concat(&w).0)),
                (_, f) => out.push(f),
            }
        }
        out.retain(|f| !matches!(f, Factor::Word(w) if w.is_empty()));
        return Some((neg, out));
    }
    // supercentral trace values move in front of the word part
    let mut traces = Vec::new();
    let mut word = Word::default();
    for f in fs {
        if f.is_trace() {
            neg ^= f.is_odd() && word.is_odd();
            traces.push(f);
        } else {
            word = word.concat(f.word());
        }
    }
    // sort traces, anticommuting odd ones
    for i in 1..traces.len() {
        let mut j = i;
        while j > 0 && traces[j - 1].sort_key() >= traces[j].sort_key() {
            let odd = traces[j - 1].is_odd() && traces[j].is_odd();
            if traces[j - 1] == traces[j] {
                if odd {
                    return None;
                }
                break;
            }
            neg ^= odd;
            traces.swap(j - 1, j);
            j -= 1;
        }
    }
    let word = Word(cancel_jj(&word.0));
    if !word.is_empty() {
        traces.push(Factor::Word(word));
    }
    Some((neg, traces))
}

/// A linear combination of normalized terms.
#[derive(Clone, PartialEq)]
pub struct JTraceExpr<T> {
    terms: BTreeMap<Vec<Factor>, T>,
}

impl<T: Scalar> Default for JTraceExpr<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> JTraceExpr<T> {
    pub fn zero() -> Self {
        JTraceExpr { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::term(c, Vec::new())
    }

    pub fn term(c: T, factors: Vec<Factor>) -> Self {
        let mut out = Self::zero();
        out.add_term(c, factors);
        out
    }

    pub fn str(w: Word) -> Self {
        Self::term(T::one(), vec![Factor::Str(w)])
    }

    pub fn qtr(w: Word) -> Self {
        Self::term(T::one(), vec![Factor::Qtr(w)])
    }

    pub fn word(w: Word) -> Self {
        Self::term(T::one(), vec![Factor::Word(w)])
    }

    pub fn add_term(&mut self, c: T, factors: Vec<Factor>) {
        if c.is_zero() {
            return;
        }
        let Some((neg, factors)) = normalize_term(factors) else {
            return;
        };
        let c = if neg { -c } else { c };
        let sum = match self.terms.remove(&factors) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(factors, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Factor>, &T)> {
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

    /// No bare word factor in any term.
    pub fn is_pure(&self) -> bool {
        self.terms.keys().all(|fs| fs.iter().all(Factor::is_trace))
    }

    /// Uses queer traces rather than supertraces.
    pub fn is_queer(&self) -> bool {
        self.terms.keys().flatten().any(|f| matches!(f, Factor::Qtr(_)))
    }

    pub fn uses_j(&self) -> bool {
        self.terms.keys().flatten().any(|f| f.word().j_count() > 0)
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        self.terms.keys().flatten().flat_map(|f| f.word().vars().collect::<Vec<_>>()).collect()
    }

    /// Largest variable index used, 0 for constants.
    pub fn arity(&self) -> usize {
        self.variables().into_iter().max().unwrap_or(0)
    }

    /// Every term uses each of `x_1..x_d` exactly once.
    pub fn is_multilinear(&self, d: usize) -> bool {
        self.terms.keys().all(|fs| {
            let mut vars: Vec<usize> = fs.iter().flat_map(|f| f.word().vars().collect::<Vec<_>>()).collect();
            vars.sort_unstable();
            vars == (1..=d).collect::<Vec<_>>()
        })
    }

    pub fn check_multilinear(&self) -> Result<usize> {
        let d = self.arity();
        if self.is_multilinear(d) {
            Ok(d)
        } else {
            Err(Error::NotMultilinear(self.to_string()))
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (fs, c) in &rhs.terms {
            out.add_term(c.clone(), fs.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-T::one()))
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero();
        for (fs, v) in &self.terms {
            out.add_term(v.clone() * c.clone(), fs.clone());
        }
        out
    }

    /// Product with factor lists concatenated in order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (fa, ca) in &self.terms {
            for (fb, cb) in &rhs.terms {
                out.add_term(ca.clone() * cb.clone(), [fa.clone(), fb.clone()].concat());
            }
        }
        out
    }

    /// Applies `f` to every factor list, expanding the returned sums.
    fn flat_map_terms(&self, f: impl Fn(&[Factor]) -> Vec<(T, Vec<Factor>)>) -> Self {
        let mut out = Self::zero();
        for (fs, c) in &self.terms {
            for (k, g) in f(fs) {
                out.add_term(c.clone() * k, g);
            }
        }
        out
    }

    /// Passage to queer traces: `str(w)` with an odd number of `J` letters
    /// becomes `2 qtr(w without J)`, and terms with an even supertrace
    /// factor vanish.
    pub fn qtransform(&self) -> Result<Self> {
        if !self.is_pure() {
            return Err(Error::MixedExpression);
        }
        Ok(self.flat_map_terms(|fs| {
            let mut coef = T::one();
            let mut out = Vec::with_capacity(fs.len());
            for f in fs {
                match f {
                    Factor::Str(w) if w.is_odd() => {
                        coef = coef * T::from_int(2);
                        out.push(Factor::Qtr(Word(w.vars().map(Letter::X).collect())));
                    }
                    Factor::Str(_) => return Vec::new(),
                    other => out.push(other.clone()),
                }
            }
            vec![(coef, out)]
        }))
    }

    /// Substitutes `x_i -> x_i + J x_i J` for every variable.
    pub fn symmetrize(&self) -> Self {
        self.flat_map_terms(|fs| {
            let mut acc: Vec<Vec<Factor>> = vec![Vec::new()];
            for f in fs {
                let mut variants: Vec<Vec<Letter>> = vec![Vec::new()];
                for &l in f.word().letters() {
                    variants = match l {
                        Letter::X(_) => variants
                            .into_iter()
                            .flat_map(|v| {
                                let plain = [v.clone(), vec![l]].concat();
                                let twisted = [v, vec![Letter::J, l, Letter::J]].concat();
                                [plain, twisted]
                            })
                            .collect(),
                        Letter::J => variants.into_iter().map(|v| [v, vec![l]].concat()).collect(),
                    };
                }
                let rebuilt: Vec<Factor> = variants
                    .into_iter()
                    .map(|v| match f {
                        Factor::Str(_) => Factor::Str(Word(v)),
                        Factor::Qtr(_) => Factor::Qtr(Word(v)),
                        Factor::Word(_) => Factor::Word(Word(v)),
                    })
                    .collect();
                acc = acc
                    .into_iter()
                    .flat_map(|prefix| rebuilt.iter().map(move |g| [prefix.clone(), vec![g.clone()]].concat()))
                    .collect();
            }
            acc.into_iter().map(|g| (T::one(), g)).collect()
        })
    }

    /// Writes a pure expression as `str(v · G)` and returns the mixed `G`.
    /// Every term must contain `v` exactly once, inside a supertrace.
    pub fn strip(&self, v: usize) -> Result<Self> {
        if !self.is_pure() {
            return Err(Error::MixedExpression);
        }
        let mut out = Self::zero();
        for (fs, c) in &self.terms {
            let hits: Vec<(usize, usize)> = fs
                .iter()
                .enumerate()
                .flat_map(|(k, f)| {
                    f.word().letters().iter().enumerate().filter(|(_, l)| **l == Letter::X(v)).map(move |(p, _)| (k, p))
                })
                .collect();
            let (k, p) = match hits.as_slice() {
                [one] => *one,
                [] => return Err(Error::Strip { var: v, reason: "variable absent from a term".into() }),
                _ => return Err(Error::Strip { var: v, reason: "variable occurs more than once in a term".into() }),
            };
            let Factor::Str(w) = &fs[k] else {
                return Err(Error::Strip { var: v, reason: "variable is not inside a supertrace".into() });
            };
            // str(w1 v w2) = (-1)^{|w1||w2|} str(v w2 w1)
            let (w1, rest) = w.letters().split_at(p);
            let w2 = &rest[1..];
            let mut neg = odd_j(w1) && odd_j(w2);
            // bring the stripped trace to the front
            neg ^=
                fs[k].is_odd() && odd_j(&fs[..k].iter().flat_map(|f| f.word().letters().to_vec()).collect::<Vec<_>>());
            let mut g = vec![Factor::Word(Word([w2, w1].concat()))];
            g.extend(fs.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, f)| f.clone()));
            out.add_term(if neg { -c.clone() } else { c.clone() }, g);
        }
        Ok(out)
    }

    /// Multiplies every term by `str(x_{d+1}) ⋯ str(x_e)`.
    pub fn embed(&self, d: usize, e: usize) -> Result<Self> {
        if e < d {
            return Err(Error::EmbedTooSmall { from: d, to: e });
        }
        let extra: Vec<Factor> = (d + 1..=e).map(|i| Factor::Str(Word::var(i))).collect();
        Ok(self.flat_map_terms(|fs| vec![(T::one(), [fs.to_vec(), extra.clone()].concat())]))
    }

    /// The symbolic J-trace polynomial `jtr_w`.
    pub fn from_sergeev(w: &SergeevElement<T>) -> Self {
        let mut out = Self::zero();
        for (m, c) in w.terms() {
            let (neg, factors) = monomial_factors(m);
            out.add_term(if neg { -c.clone() } else { c.clone() }, factors);
        }
        out
    }

    /// Renames `x_i` to `x_{σ(i)}`.
    pub fn relabel(&self, sigma: &Perm) -> Self {
        self.flat_map_terms(|fs| {
            let g = fs
                .iter()
                .map(|f| {
                    let w = Word(
                        f.word()
                            .letters()
                            .iter()
                            .map(|l| match l {
                                Letter::X(i) if *i <= sigma.len() => Letter::X(sigma.apply(i - 1) + 1),
                                other => *other,
                            })
                            .collect(),
                    );
                    match f {
                        Factor::Str(_) => Factor::Str(w),
                        Factor::Qtr(_) => Factor::Qtr(w),
                        Factor::Word(_) => Factor::Word(w),
                    }
                })
                .collect();
            vec![(T::one(), g)]
        })
    }
}

/// `jtr` of a single monomial: one supertrace per cycle of `σ`, letters
/// `J^{ε_i} x_i` along the cycle, and the sign collected while pulling the
/// fresh odd scalars `e_i` out to the prefix `e_d ⋯ e_1`.
fn monomial_factors(m: &Monomial) -> (bool, Vec<Factor>) {
    let mut neg = false;
    let mut factors = Vec::new();
    // fresh scalars in the order they are pulled out
    let mut pulled: Vec<usize> = Vec::new();
    // parity of the trace values already emitted
    let mut traces_odd = false;
    for cycle in m.perm.cycles() {
        let mut letters = Vec::new();
        let mut cycle_pulled = Vec::new();
        let mut prefix_odd = false;
        for &i in &cycle {
            if m.eps_at(i + 1) {
                // e_i passes the letters before it in this cycle
                neg ^= prefix_odd;
                cycle_pulled.push(i);
                letters.push(Letter::J);
                prefix_odd = !prefix_odd;
            }
            letters.push(Letter::X(i + 1));
        }
        // the cycle's scalars pass the earlier trace values
        neg ^= traces_odd && cycle_pulled.len() % 2 == 1;
        traces_odd ^= prefix_odd;
        pulled.extend(cycle_pulled);
        factors.push(Factor::Str(Word(letters)));
    }
    // reorder e_{L_1} ⋯ e_{L_m} into e_d ⋯ e_1
    for a in 0..pulled.len() {
        for b in a + 1..pulled.len() {
            neg ^= pulled[a] < pulled[b];
        }
    }
    (neg, factors)
}

impl<T: Scalar> fmt::Debug for JTraceExpr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Scalar> fmt::Display for JTraceExpr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (fs, c)) in self.terms.iter().enumerate() {
            let text = c.to_text();
            let (negative, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let body: Vec<String> = fs.iter().map(|x| x.to_string()).collect();
            if body.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", body.join(" "))?;
            } else {
                write!(f, "{mag}*{}", body.join(" "))?;
            }
        }
        Ok(())
    }
}
