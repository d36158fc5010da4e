//! JSON wire formats.
//!
//! Coefficients travel as strings (`"-2/3"`) so exact values survive.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value as Json};

use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::identity::{ClosureReport, KernelSpace};
use crate::jpoly::{Factor, JTraceExpr, Letter, Word};
use crate::perm::Perm;
use crate::qschur::{StrictPartition, SymPoly};
use crate::scalar::Scalar;
use crate::sergeev::{Monomial, SergeevElement};
use crate::supermatrix::SuperMatrix;

fn json_err(e: impl std::fmt::Display) -> Error {
    Error::Json(e.to_string())
}

fn coef<T: Scalar>(text: &str) -> Result<T> {
    T::parse_text(text).ok_or_else(|| Error::Json(format!("bad coefficient '{text}'")))
}

#[derive(Serialize, Deserialize)]
struct GrassmannWire {
    capacity: usize,
    terms: Vec<GrassmannTermWire>,
}

#[derive(Serialize, Deserialize)]
struct GrassmannTermWire {
    gens: Vec<usize>,
    coef: String,
}

fn grassmann_wire<T: Scalar>(e: &GrassmannElement<T>) -> GrassmannWire {
    GrassmannWire {
        capacity: e.capacity(),
        terms: e.terms().map(|(b, c)| GrassmannTermWire { gens: b.gens(), coef: c.to_text() }).collect(),
    }
}

fn grassmann_unwire<T: Scalar>(w: GrassmannWire) -> Result<GrassmannElement<T>> {
    let terms = w.terms.into_iter().map(|t| Ok((t.gens, coef(&t.coef)?))).collect::<Result<Vec<_>>>()?;
    GrassmannElement::from_terms(w.capacity, terms)
}

pub fn grassmann_to_json<T: Scalar>(e: &GrassmannElement<T>) -> Json {
    serde_json::to_value(grassmann_wire(e)).expect("serializable")
}

pub fn grassmann_from_json<T: Scalar>(v: &Json) -> Result<GrassmannElement<T>> {
    grassmann_unwire(serde_json::from_value(v.clone()).map_err(json_err)?)
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    grading: Option<(usize, usize)>,
    entries: Vec<Vec<GrassmannWire>>,
}

pub fn matrix_to_json<T: Scalar>(m: &SuperMatrix<T>) -> Json {
    let wire = MatrixWire {
        grading: m.grading(),
        entries: m.rows().iter().map(|r| r.iter().map(grassmann_wire).collect()).collect(),
    };
    serde_json::to_value(wire).expect("serializable")
}

pub fn matrix_from_json<T: Scalar>(v: &Json) -> Result<SuperMatrix<T>> {
    let wire: MatrixWire = serde_json::from_value(v.clone()).map_err(json_err)?;
    let rows = wire
        .entries
        .into_iter()
        .map(|r| r.into_iter().map(grassmann_unwire).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    SuperMatrix::from_rows(wire.grading, rows)
}

#[derive(Serialize, Deserialize)]
struct SergeevWire {
    d: usize,
    terms: Vec<SergeevTermWire>,
}

#[derive(Serialize, Deserialize)]
struct SergeevTermWire {
    perm: Vec<usize>,
    eps: Vec<u8>,
    coef: String,
}

fn sergeev_wire<T: Scalar>(w: &SergeevElement<T>) -> SergeevWire {
    SergeevWire {
        d: w.d(),
        terms: w
            .terms()
            .map(|(m, c)| SergeevTermWire { perm: m.perm.one_line(), eps: m.eps_vec(), coef: c.to_text() })
            .collect(),
    }
}

fn sergeev_unwire<T: Scalar>(w: SergeevWire) -> Result<SergeevElement<T>> {
    let mut terms = Vec::new();
    for t in w.terms {
        if t.eps.len() != t.perm.len() || t.eps.iter().any(|&e| e > 1) {
            return Err(Error::Json(format!("bad eps vector {:?}", t.eps)));
        }
        let eps = t.eps.iter().enumerate().fold(0u32, |acc, (i, &e)| acc | (e as u32) << i);
        terms.push((Monomial::new(Perm::from_one_line(&t.perm)?, eps), coef(&t.coef)?));
    }
    SergeevElement::from_terms(w.d, terms)
}

pub fn sergeev_to_json<T: Scalar>(w: &SergeevElement<T>) -> Json {
    serde_json::to_value(sergeev_wire(w)).expect("serializable")
}

pub fn sergeev_from_json<T: Scalar>(v: &Json) -> Result<SergeevElement<T>> {
    sergeev_unwire(serde_json::from_value(v.clone()).map_err(json_err)?)
}

pub fn kernel_to_json<T: Scalar>(k: &KernelSpace<T>) -> Json {
    json!({
        "d": k.d,
        "n": k.n,
        "dim": k.dim,
        "basis": k.basis.iter().map(sergeev_to_json).collect::<Vec<_>>(),
    })
}

pub fn kernel_from_json<T: Scalar>(v: &Json) -> Result<KernelSpace<T>> {
    let field = |name: &str| v.get(name).and_then(Json::as_u64).map(|x| x as usize);
    let (Some(d), Some(n), Some(dim)) = (field("d"), field("n"), field("dim")) else {
        return Err(Error::Json("kernel needs integer fields d, n, dim".into()));
    };
    let basis = v
        .get("basis")
        .and_then(Json::as_array)
        .ok_or_else(|| Error::Json("kernel needs a basis array".into()))?
        .iter()
        .map(sergeev_from_json)
        .collect::<Result<Vec<_>>>()?;
    if basis.len() != dim || basis.iter().any(|w| w.d() != d) {
        return Err(Error::Json("kernel basis does not match d and dim".into()));
    }
    Ok(KernelSpace { d, n, dim, basis })
}

pub fn closure_report_to_json(r: &ClosureReport) -> Json {
    json!({
        "d": r.d,
        "e": r.e,
        "n": r.n,
        "kernel_d_dim": r.kernel_d_dim,
        "closure_dim": r.closure_dim,
        "kernel_e_dim": r.kernel_e_dim,
        "closure_in_kernel": r.closure_in_kernel,
        "kernel_in_closure": r.kernel_in_closure,
        "equal": r.equal(),
    })
}

#[derive(Serialize, Deserialize)]
struct ExprWire {
    terms: Vec<ExprTermWire>,
}

#[derive(Serialize, Deserialize)]
struct ExprTermWire {
    coef: String,
    factors: Vec<FactorWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", content = "word", rename_all = "lowercase")]
enum FactorWire {
    Str(Vec<String>),
    Qtr(Vec<String>),
    Word(Vec<String>),
}

fn letters_out(w: &Word) -> Vec<String> {
    w.letters().iter().map(|l| l.to_string()).collect()
}

fn letters_in(ls: &[String]) -> Result<Word> {
    ls.iter()
        .map(|s| match s.as_str() {
            "J" => Ok(Letter::J),
            _ => s
                .strip_prefix('x')
                .and_then(|i| i.parse::<usize>().ok())
                .filter(|&i| i > 0)
                .map(Letter::X)
                .ok_or_else(|| Error::Json(format!("bad letter '{s}'"))),
        })
        .collect::<Result<Vec<_>>>()
        .map(Word)
}

pub fn expr_to_json<T: Scalar>(f: &JTraceExpr<T>) -> Json {
    let wire = ExprWire {
        terms: f
            .terms()
            .map(|(fs, c)| ExprTermWire {
                coef: c.to_text(),
                factors: fs
                    .iter()
                    .map(|x| match x {
                        Factor::Str(w) => FactorWire::Str(letters_out(w)),
                        Factor::Qtr(w) => FactorWire::Qtr(letters_out(w)),
                        Factor::Word(w) => FactorWire::Word(letters_out(w)),
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_value(wire).expect("serializable")
}

pub fn expr_from_json<T: Scalar>(v: &Json) -> Result<JTraceExpr<T>> {
    let wire: ExprWire = serde_json::from_value(v.clone()).map_err(json_err)?;
    let mut out = JTraceExpr::zero();
    for t in wire.terms {
        let factors = t
            .factors
            .iter()
            .map(|f| {
                Ok(match f {
                    FactorWire::Str(ls) => Factor::Str(letters_in(ls)?),
                    FactorWire::Qtr(ls) => Factor::Qtr(letters_in(ls)?),
                    FactorWire::Word(ls) => Factor::Word(letters_in(ls)?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.add_term(coef(&t.coef)?, factors);
    }
    Ok(out)
}

pub fn partition_to_json(p: &StrictPartition) -> Json {
    json!(p.parts())
}

pub fn partitions_to_json(ps: &[StrictPartition]) -> Json {
    Json::Array(ps.iter().map(partition_to_json).collect())
}

pub fn partition_from_json(v: &Json) -> Result<StrictPartition> {
    let parts: Vec<usize> = serde_json::from_value(v.clone()).map_err(json_err)?;
    StrictPartition::new(parts)
}

/// Monomial text such as `"x1^2*x2"` (`"1"` for the constant) mapped to
/// its coefficient.
pub fn sympoly_to_json<T: Scalar>(p: &SymPoly<T>) -> Json {
    let mut map = Map::new();
    for (e, c) in p.terms() {
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
            .collect();
        let key = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
        map.insert(key, Json::String(c.to_text()));
    }
    Json::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jpoly::parse;
    use crate::random;
    use crate::scalar::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = Rational;

    #[test]
    fn grassmann_wire_format() {
        let v: Json = serde_json::from_str(r#"{"capacity":4,"terms":[{"gens":[1,3],"coef":"-2/3"}]}"#).unwrap();
        let e = grassmann_from_json::<Q>(&v).unwrap();
        assert_eq!(e.to_string(), "(-2/3)·θ1θ3");
        assert_eq!(grassmann_to_json(&e), v);
        let bad: Json = serde_json::from_str(r#"{"capacity":2,"terms":[{"gens":[3],"coef":"1"}]}"#).unwrap();
        assert!(grassmann_from_json::<Q>(&bad).is_err());
    }

    #[test]
    fn sergeev_wire_format() {
        let v: Json = serde_json::from_str(r#"{"d":3,"terms":[{"perm":[2,1,3],"eps":[1,0,0],"coef":"1"}]}"#).unwrap();
        let w = sergeev_from_json::<Q>(&v).unwrap();
        assert_eq!(w.to_string(), "(1 2)C1");
        assert_eq!(sergeev_to_json(&w), v);
    }

    #[test]
    fn round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(70);
        for _ in 0..20 {
            let m = random::matrix::<Q, _>(&mut rng, 1, 3);
            assert_eq!(matrix_from_json::<Q>(&matrix_to_json(&m)).unwrap(), m);
            let w = random::sergeev::<Q, _>(&mut rng, 3);
            assert_eq!(sergeev_from_json::<Q>(&sergeev_to_json(&w)).unwrap(), w);
            let f = JTraceExpr::from_sergeev(&w);
            assert_eq!(expr_from_json::<Q>(&expr_to_json(&f)).unwrap(), f);
        }
        let g = parse::<Q>("2*[J x1 + x1 J, J x2 + x2 J] - qtr(x1)").unwrap();
        assert_eq!(expr_from_json::<Q>(&expr_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn partitions_and_polynomials() {
        let p = StrictPartition::new(vec![3, 1]).unwrap();
        assert_eq!(partition_to_json(&p), json!([3, 1]));
        assert_eq!(partition_from_json(&json!([3, 1])).unwrap(), p);
        assert!(partition_from_json(&json!([1, 1])).is_err());
        let q1 = crate::qschur::qpoly::<Q>(&StrictPartition::new(vec![1]).unwrap(), 2).unwrap();
        assert_eq!(sympoly_to_json(&q1), json!({"x1": "2", "x2": "2"}));
    }
}
