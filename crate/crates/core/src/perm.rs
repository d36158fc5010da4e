//! Permutations of `{1..d}`.
//!
//! Stored 0-based in one-line form. Composition follows
//! `(σ ∘ τ)(i) = σ(τ(i))`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(d: usize) -> Self {
        Perm((0..d).collect())
    }

    /// From a 1-based one-line form such as `[2, 1, 3]`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in images {
            if x == 0 || x > d || seen[x - 1] {
                return Err(Error::InvalidPermutation(images.to_vec()));
            }
            seen[x - 1] = true;
        }
        Ok(Perm(images.iter().map(|x| x - 1).collect()))
    }

    /// From 1-based cycles, e.g. `&[&[1, 2]]` for the transposition (12).
    pub fn from_cycles(d: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut p: Vec<usize> = (0..d).collect();
        let mut seen = vec![false; d];
        for cyc in cycles {
            for (k, &x) in cyc.iter().enumerate() {
                if x == 0 || x > d || seen[x - 1] {
                    return Err(Error::InvalidPermutation(cyc.to_vec()));
                }
                seen[x - 1] = true;
                p[x - 1] = cyc[(k + 1) % cyc.len()] - 1;
            }
        }
        Ok(Perm(p))
    }

    /// The transposition of the 1-based points `i` and `j`.
    pub fn transposition(d: usize, i: usize, j: usize) -> Self {
        let mut p: Vec<usize> = (0..d).collect();
        p.swap(i - 1, j - 1);
        Perm(p)
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Image of a 0-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ rhs`: apply `rhs` first.
    pub fn compose(&self, rhs: &Perm) -> Perm {
        assert_eq!(self.len(), rhs.len(), "composing permutations of different degree");
        Perm(rhs.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    /// Extends to `{1..e}` by fixing the new points.
    pub fn embed(&self, e: usize) -> Perm {
        let mut p = self.0.clone();
        p.extend(self.len()..e);
        Perm(p)
    }

    /// 0-based cycles `(i, σ(i), σ²(i), …)`, each starting at its smallest
    /// point, ordered by that point. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.0[i];
            }
            out.push(cyc);
        }
        out
    }

    /// Position in the lexicographic order of one-line forms.
    pub fn rank(&self) -> usize {
        let d = self.len();
        let mut rank = 0;
        let mut fact = vec![1usize; d + 1];
        for k in 1..=d {
            fact[k] = fact[k - 1] * k;
        }
        for i in 0..d {
            let smaller = self.0[i + 1..].iter().filter(|&&x| x < self.0[i]).count();
            rank += smaller * fact[d - 1 - i];
        }
        rank
    }

    pub fn unrank(d: usize, mut rank: usize) -> Perm {
        let mut pool: Vec<usize> = (0..d).collect();
        let mut fact = vec![1usize; d + 1];
        for k in 1..=d {
            fact[k] = fact[k - 1] * k;
        }
        let mut out = Vec::with_capacity(d);
        for i in 0..d {
            let f = fact[d - 1 - i];
            out.push(pool.remove(rank / f));
            rank %= f;
        }
        Perm(out)
    }

    /// All permutations of degree `d` in lexicographic order.
    pub fn all(d: usize) -> Vec<Perm> {
        (0..factorial(d)).map(|r| Perm::unrank(d, r)).collect()
    }
}

pub fn factorial(d: usize) -> usize {
    (1..=d).product()
}

/// Parity of the number of inversions of a sequence of distinct values.
pub fn inversion_parity(seq: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                odd = !odd;
            }
        }
    }
    odd
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "id");
        }
        for c in nontrivial {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}
