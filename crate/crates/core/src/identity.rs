//! Identity detection by evaluation on spanning substitutions.
//!
//! A multilinear expression of arity `d` is an identity of `M(n, n)` iff it
//! vanishes on every tuple of graded matrix units, where the off-diagonal
//! units carry a fresh odd generator `θ_i` private to slot `i`. Kernels of
//! `w ↦ jtr_w` are exact nullspaces of the resulting evaluation matrix.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grassmann::{Blade, GrassmannElement};
use crate::jpoly::{JTraceExpr, SergeevEvaluator};
use crate::linalg::{EchelonBasis, SparseVec};
use crate::perm::Perm;
use crate::scalar::{ExactScalar, Scalar};
use crate::sergeev::{basis, dimension, Monomial, SergeevElement};
use crate::supermatrix::{spanning_set, SuperMatrix};

/// Upper bounds on arity and matrix size accepted by the exhaustive routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub d_max: usize,
    pub n_max: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { d_max: 5, n_max: 2 }
    }
}

impl Caps {
    pub fn unlimited() -> Self {
        Caps { d_max: usize::MAX, n_max: usize::MAX }
    }

    pub fn check(&self, d: usize, n: usize) -> Result<()> {
        if d > self.d_max {
            return Err(Error::ResourceCap(format!("arity {d} exceeds the cap {}", self.d_max)));
        }
        if n > self.n_max {
            return Err(Error::ResourceCap(format!("matrix size n = {n} exceeds the cap {}", self.n_max)));
        }
        Ok(())
    }
}

/// How the Grassmann coefficients of substituted matrix units are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// `1` on the diagonal blocks, `θ_i` off them, one generator per slot.
    Restricted,
    /// Every Grassmann monomial of degree at most 2 in `θ_1..θ_pool` of the
    /// parity the position demands, shared by all slots.
    Exhaustive { pool: usize },
}

/// Candidate matrices for each substitution slot.
pub fn substitutions<T: Scalar>(d: usize, n: usize, scheme: Scheme) -> Result<Vec<Vec<SuperMatrix<T>>>> {
    match scheme {
        Scheme::Restricted => (1..=d).map(|i| spanning_set(n, i, d)).collect(),
        Scheme::Exhaustive { pool } => {
            let mut even = vec![Blade::ONE];
            let mut odd = Vec::new();
            for a in 1..=pool {
                odd.push(Blade::generator(a));
                for b in a + 1..=pool {
                    even.push(Blade::from_gens(&[a, b]).expect("ascending"));
                }
            }
            let size = 2 * n;
            let mut slot = Vec::new();
            for a in 0..size {
                for b in 0..size {
                    let coefs = if (a < n) == (b < n) { &even } else { &odd };
                    for &c in coefs {
                        let g = GrassmannElement::monomial(pool, c, T::one());
                        slot.push(SuperMatrix::unit(size, Some((n, n)), a + 1, b + 1, g));
                    }
                }
            }
            Ok(vec![slot; d])
        }
    }
}

/// Mixed-radix enumeration of substitution tuples, last slot fastest.
struct Tuples<'a, T> {
    slots: &'a [Vec<SuperMatrix<T>>],
    total: usize,
}

impl<'a, T: Scalar> Tuples<'a, T> {
    fn new(slots: &'a [Vec<SuperMatrix<T>>]) -> Result<Self> {
        let mut total: usize = 1;
        for s in slots {
            total =
                total.checked_mul(s.len()).ok_or_else(|| Error::ResourceCap("too many substitution tuples".into()))?;
        }
        Ok(Tuples { slots, total })
    }

    fn get(&self, mut index: usize) -> Vec<SuperMatrix<T>> {
        let mut out = vec![None; self.slots.len()];
        for (i, s) in self.slots.iter().enumerate().rev() {
            out[i] = Some(s[index % s.len()].clone());
            index /= s.len();
        }
        out.into_iter().map(|m| m.expect("filled")).collect()
    }
}

/// Indices of the first substitution tuple on which `eval` is nonzero.
fn first_witness<T, F>(slots: &[Vec<SuperMatrix<T>>], eval: F) -> Result<Option<Vec<usize>>>
where
    T: Scalar,
    F: Fn(&[SuperMatrix<T>]) -> Result<bool> + Sync,
{
    let tuples = Tuples::new(slots)?;
    let hit = (0..tuples.total)
        .into_par_iter()
        .map(|k| eval(&tuples.get(k)).map(|nonzero| nonzero.then_some(k)))
        .find_first(|r| !matches!(r, Ok(None)));
    match hit {
        None => Ok(None),
        Some(Err(e)) => Err(e),
        Some(Ok(k)) => {
            let mut digits = vec![0; slots.len()];
            let mut k = k.expect("hit");
            for (i, s) in slots.iter().enumerate().rev() {
                digits[i] = k % s.len();
                k /= s.len();
            }
            Ok(Some(digits))
        }
    }
}

/// A substitution on which a J-trace expression does not vanish, given as
/// indices into each slot's candidate list, or `None` for an identity of
/// `M(n, n)`.
pub fn witness_expr<T: Scalar>(f: &JTraceExpr<T>, n: usize, caps: Caps) -> Result<Option<Vec<usize>>> {
    let d = f.check_multilinear()?;
    caps.check(d, n)?;
    if d == 0 {
        return Ok((!f.is_zero()).then(Vec::new));
    }
    let slots = substitutions::<T>(d, n, Scheme::Restricted)?;
    first_witness(&slots, |xs| Ok(!f.eval(xs)?.is_zero()))
}

pub fn is_identity_expr<T: Scalar>(f: &JTraceExpr<T>, n: usize, caps: Caps) -> Result<bool> {
    Ok(witness_expr(f, n, caps)?.is_none())
}

pub fn is_identity_sergeev<T: Scalar>(w: &SergeevElement<T>, n: usize, caps: Caps) -> Result<bool> {
    is_identity_sergeev_with(w, n, Scheme::Restricted, caps)
}

pub fn is_identity_sergeev_with<T: Scalar>(
    w: &SergeevElement<T>,
    n: usize,
    scheme: Scheme,
    caps: Caps,
) -> Result<bool> {
    let d = w.d();
    caps.check(d, n)?;
    if d == 0 {
        return Ok(w.is_zero());
    }
    let slots = substitutions::<T>(d, n, scheme)?;
    Ok(first_witness(&slots, |xs| Ok(!SergeevEvaluator::new(xs)?.element(w)?.is_zero()))?.is_none())
}

/// `{w ∈ W(d)° : jtr_w is an identity of M(n, n)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpace<T: Scalar> {
    pub d: usize,
    pub n: usize,
    pub dim: usize,
    pub basis: Vec<SergeevElement<T>>,
}

impl<T: ExactScalar> KernelSpace<T> {
    pub fn zero(d: usize, n: usize) -> Self {
        KernelSpace { d, n, dim: 0, basis: Vec::new() }
    }

    pub fn echelon(&self) -> EchelonBasis<T> {
        span(self.d, &self.basis)
    }

    pub fn contains(&self, w: &SergeevElement<T>) -> bool {
        w.d() == self.d && self.echelon().contains(&w.coords())
    }
}

/// Tuples evaluated per parallel batch before their rows are reduced.
const BATCH: usize = 256;

pub fn kernel<T: ExactScalar>(d: usize, n: usize, caps: Caps) -> Result<KernelSpace<T>> {
    kernel_with(d, n, Scheme::Restricted, caps)
}

/// Exact nullspace of the evaluation matrix. Each tuple contributes one
/// linear condition per Grassmann monomial of its values.
pub fn kernel_with<T: ExactScalar>(d: usize, n: usize, scheme: Scheme, caps: Caps) -> Result<KernelSpace<T>> {
    caps.check(d, n)?;
    let monomials = basis(d);
    let dim = monomials.len();
    let mut rows = EchelonBasis::<T>::new(dim);
    if d == 0 {
        // jtr of the unit of W(0)° is the constant 1
        rows.insert(&[(0, T::one())]);
    } else {
        let slots = substitutions::<T>(d, n, scheme)?;
        let tuples = Tuples::new(&slots)?;
        let mut start = 0;
        while start < tuples.total && !rows.is_full() {
            let end = (start + BATCH).min(tuples.total);
            let batch: Vec<Vec<SparseVec<T>>> =
                (start..end).into_par_iter().map(|k| conditions(&monomials, &tuples.get(k))).collect::<Result<_>>()?;
            for r in batch.iter().flatten() {
                rows.insert(r);
            }
            start = end;
        }
    }
    let basis: Vec<SergeevElement<T>> = rows.complement().iter().map(|v| SergeevElement::from_coords(d, v)).collect();
    Ok(KernelSpace { d, n, dim: basis.len(), basis })
}

/// Coefficient-of-monomial conditions `Σ_m c_m [θ^S] jtr_m(xs) = 0`.
fn conditions<T: ExactScalar>(monomials: &[Monomial], xs: &[SuperMatrix<T>]) -> Result<Vec<SparseVec<T>>> {
    let ev = SergeevEvaluator::new(xs)?;
    let mut by_blade: std::collections::BTreeMap<Blade, SparseVec<T>> = std::collections::BTreeMap::new();
    for (idx, m) in monomials.iter().enumerate() {
        for (b, c) in ev.monomial(m)?.terms() {
            by_blade.entry(*b).or_default().push((idx, c.clone()));
        }
    }
    Ok(by_blade.into_values().collect())
}

pub fn span<T: ExactScalar>(d: usize, elems: &[SergeevElement<T>]) -> EchelonBasis<T> {
    let mut e = EchelonBasis::new(dimension(d));
    for w in elems {
        e.insert(&w.coords());
    }
    e
}

/// Generators of `W(e)°` as an algebra: adjacent transpositions and `C_1`.
fn algebra_generators<T: ExactScalar>(e: usize) -> Vec<SergeevElement<T>> {
    let mut gens: Vec<SergeevElement<T>> =
        (1..e).map(|k| SergeevElement::perm(Perm::transposition(e, k, k + 1))).collect();
    if e >= 1 {
        gens.push(SergeevElement::clifford(e, 1).expect("e >= 1"));
    }
    gens
}

/// Basis of the two-sided ideal `W(e)° · K · W(e)°` for `K` embedded from
/// `W(d)°`. Grows the span breadth-first under left and right multiplication
/// by algebra generators, inserting only vectors that raise the rank.
pub fn closure<T: ExactScalar>(k: &KernelSpace<T>, e: usize, caps: Caps) -> Result<Vec<SergeevElement<T>>> {
    if e < k.d {
        return Err(Error::EmbedTooSmall { from: k.d, to: e });
    }
    caps.check(e, k.n)?;
    let seeds = k.basis.iter().map(|w| w.embed(e)).collect::<Result<Vec<_>>>()?;
    Ok(ideal_closure(e, &seeds, &algebra_generators(e)))
}

fn ideal_closure<T: ExactScalar>(
    e: usize,
    seeds: &[SergeevElement<T>],
    gens: &[SergeevElement<T>],
) -> Vec<SergeevElement<T>> {
    let mut space = EchelonBasis::new(dimension(e));
    let mut queue = std::collections::VecDeque::new();
    for s in seeds {
        if space.insert(&s.coords()) {
            queue.push_back(s.clone());
        }
    }
    while let Some(u) = queue.pop_front() {
        if space.is_full() {
            break;
        }
        for g in gens {
            for v in [g.try_mul(&u), u.try_mul(g)] {
                let v = v.expect("same arity");
                if space.insert(&v.coords()) {
                    queue.push_back(v);
                }
            }
        }
    }
    space.rows().iter().map(|r| SergeevElement::from_coords(e, r)).collect()
}

/// Comparison of the closure of the degree-`d` identities with the
/// degree-`e` identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub d: usize,
    pub e: usize,
    pub n: usize,
    pub kernel_d_dim: usize,
    pub closure_dim: usize,
    pub kernel_e_dim: usize,
    pub closure_in_kernel: bool,
    pub kernel_in_closure: bool,
}

impl ClosureReport {
    pub fn equal(&self) -> bool {
        self.closure_in_kernel && self.kernel_in_closure
    }
}

pub fn compare_closure<T: ExactScalar>(d: usize, e: usize, n: usize, caps: Caps) -> Result<ClosureReport> {
    caps.check(e.max(d), n)?;
    let kd = kernel::<T>(d, n, caps)?;
    let cl = closure(&kd, e, caps)?;
    let ke = kernel::<T>(e, n, caps)?;
    let cl_span = span(e, &cl);
    let ke_span = ke.echelon();
    Ok(ClosureReport {
        d,
        e,
        n,
        kernel_d_dim: kd.dim,
        closure_dim: cl_span.rank(),
        kernel_e_dim: ke.dim,
        closure_in_kernel: cl_span.rows().iter().all(|r| ke_span.contains(r)),
        kernel_in_closure: ke_span.rows().iter().all(|r| cl_span.contains(r)),
    })
}

/// Whether a queer-trace expression vanishes on `M_n(E)` for all
/// substitutions `x_i = g E_ab` with `g ∈ {1, θ_i}`.
pub fn check_queer<T: Scalar>(f: &JTraceExpr<T>, n: usize, capacity: usize, caps: Caps) -> Result<bool> {
    Ok(witness_queer(f, n, capacity, caps)?.is_none())
}

pub fn witness_queer<T: Scalar>(
    f: &JTraceExpr<T>,
    n: usize,
    capacity: usize,
    caps: Caps,
) -> Result<Option<Vec<usize>>> {
    if f.uses_j() {
        return Err(Error::GradingMismatch("queer expressions cannot contain J".into()));
    }
    let d = f.check_multilinear()?;
    caps.check(d, n)?;
    if capacity < d {
        return Err(Error::CapacityExhausted { needed: d, available: capacity });
    }
    if d == 0 {
        return Ok((!f.is_zero()).then(Vec::new));
    }
    let slots: Vec<Vec<SuperMatrix<T>>> = (1..=d)
        .map(|i| -> Result<Vec<SuperMatrix<T>>> {
            let theta = GrassmannElement::generator(capacity, i)?;
            let mut out = Vec::new();
            for g in [GrassmannElement::one(capacity), theta] {
                for a in 1..=n {
                    for b in 1..=n {
                        out.push(SuperMatrix::unit(n, None, a, b, g.clone()));
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    first_witness(&slots, |xs| Ok(!f.eval(xs)?.is_zero()))
}
