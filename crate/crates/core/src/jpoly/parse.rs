//! Text syntax for J-trace expressions.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := item (['*'] item)*
//! item   := number | 'str' '(' expr ')' | 'qtr' '(' expr ')'
//!         | '[' expr ',' expr ']' | '[' expr ']' | '(' expr ')' | 'J' | 'x'N
//! ```
//!
//! `[a, b]` is the commutator `ab - ba`; `[w]` and juxtaposition multiply.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Factor, JTraceExpr, Letter, Word};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Var(usize),
    J,
    Str,
    Qtr,
    Open,
    Close,
    OpenBracket,
    CloseBracket,
    Comma,
    Plus,
    Minus,
    Star,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
    while k < chars.len() {
        let (pos, c) = chars[k];
        let digits_from = |mut j: usize| {
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            j
        };
        let tok = match c {
            c if c.is_whitespace() => {
                k += 1;
                continue;
            }
            '(' => Tok::Open,
            ')' => Tok::Close,
            '[' => Tok::OpenBracket,
            ']' => Tok::CloseBracket,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' | '\u{2212}' => Tok::Minus,
            '*' | '\u{b7}' => Tok::Star,
            'J' => Tok::J,
            'x' => {
                let end = digits_from(k + 1);
                if end == k + 1 {
                    return Err(err(pos, "expected a variable index after 'x'"));
                }
                let text: String = chars[k + 1..end].iter().map(|(_, c)| c).collect();
                let i: usize = text.parse().map_err(|_| err(pos, "variable index too large"))?;
                if i == 0 {
                    return Err(err(pos, "variables are numbered from 1"));
                }
                out.push((pos, Tok::Var(i)));
                k = end;
                continue;
            }
            c if c.is_ascii_digit() => {
                let mut end = digits_from(k);
                if end + 1 < chars.len() && chars[end].1 == '/' && chars[end + 1].1.is_ascii_digit() {
                    end = digits_from(end + 1);
                }
                let text: String = chars[k..end].iter().map(|(_, c)| c).collect();
                out.push((pos, Tok::Num(text)));
                k = end;
                continue;
            }
            _ => {
                let rest: String = chars[k..].iter().take(3).map(|(_, c)| c).collect();
                let tok = match rest.as_str() {
                    "str" => Tok::Str,
                    "qtr" => Tok::Qtr,
                    _ => return Err(err(pos, &format!("unexpected character '{c}'"))),
                };
                out.push((pos, tok));
                k += 3;
                continue;
            }
        };
        out.push((pos, tok));
        k += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn fail<R>(&self, msg: &str) -> Result<R> {
        Err(Error::Parse { pos: self.pos(), msg: msg.to_string() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.at += 1;
            Ok(())
        } else {
            self.fail(&format!("expected {what}"))
        }
    }

    fn expr<T: Scalar>(&mut self) -> Result<JTraceExpr<T>> {
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                true
            }
            Some(Tok::Plus) => {
                self.at += 1;
                false
            }
            _ => false,
        };
        let mut out = JTraceExpr::zero();
        loop {
            let t = self.term::<T>()?;
            out = if negate { out.sub(&t) } else { out.add(&t) };
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Ok(out),
            }
            self.at += 1;
        }
    }

    fn starts_item(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_) | Tok::Var(_) | Tok::J | Tok::Str | Tok::Qtr | Tok::Open | Tok::OpenBracket)
        )
    }

    fn term<T: Scalar>(&mut self) -> Result<JTraceExpr<T>> {
        if !self.starts_item() {
            return self.fail("expected a term");
        }
        let mut out = self.item::<T>()?;
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.at += 1;
                if !self.starts_item() {
                    return self.fail("expected a factor after '*'");
                }
            } else if !self.starts_item() {
                return Ok(out);
            }
            let next = self.item::<T>()?;
            out = out.mul(&next);
        }
    }

    fn item<T: Scalar>(&mut self) -> Result<JTraceExpr<T>> {
        let tok = self.peek().cloned();
        let start = self.pos();
        self.at += 1;
        match tok {
            Some(Tok::Num(text)) => match T::parse_text(&text) {
                Some(c) => Ok(JTraceExpr::constant(c)),
                None => Err(Error::Parse { pos: start, msg: format!("bad number '{text}'") }),
            },
            Some(Tok::Var(i)) => Ok(JTraceExpr::word(Word::var(i))),
            Some(Tok::J) => Ok(JTraceExpr::word(Word(vec![Letter::J]))),
            Some(t @ (Tok::Str | Tok::Qtr)) => {
                self.expect(Tok::Open, "'('")?;
                let inner = self.expr::<T>()?;
                self.expect(Tok::Close, "')'")?;
                trace_of(&inner, t == Tok::Str).map_err(|msg| Error::Parse { pos: start, msg })
            }
            Some(Tok::Open) => {
                let inner = self.expr::<T>()?;
                self.expect(Tok::Close, "')'")?;
                Ok(inner)
            }
            Some(Tok::OpenBracket) => {
                let a = self.expr::<T>()?;
                let out = if self.peek() == Some(&Tok::Comma) {
                    self.at += 1;
                    let b = self.expr::<T>()?;
                    a.mul(&b).sub(&b.mul(&a))
                } else {
                    a
                };
                self.expect(Tok::CloseBracket, "']'")?;
                Ok(out)
            }
            _ => {
                self.at -= 1;
                self.fail("expected a factor")
            }
        }
    }
}

/// `str(·)` or `qtr(·)` applied linearly to each term of `inner`.
fn trace_of<T: Scalar>(inner: &JTraceExpr<T>, supertrace: bool) -> std::result::Result<JTraceExpr<T>, String> {
    let mut out = JTraceExpr::zero();
    for (fs, c) in inner.terms() {
        let (word, scalars): (Vec<&Factor>, Vec<&Factor>) = fs.iter().partition(|f| !f.is_trace());
        if !supertrace && !scalars.is_empty() {
            return Err("qtr of a product with traces is not supported".into());
        }
        let w = match word.as_slice() {
            [] => continue, // trace of a scalar multiple of the identity vanishes
            [Factor::Word(w)] => w.clone(),
            _ => return Err("expected a single word inside a trace".into()),
        };
        let mut g: Vec<Factor> = scalars.into_iter().cloned().collect();
        g.push(if supertrace { Factor::Str(w) } else { Factor::Qtr(w) });
        out.add_term(c.clone(), g);
    }
    Ok(out)
}

pub fn parse<T: Scalar>(src: &str) -> Result<JTraceExpr<T>> {
    let mut p = Parser { toks: lex(src)?, at: 0, end: src.len() };
    if p.toks.is_empty() {
        return p.fail("empty expression");
    }
    let out = p.expr::<T>()?;
    if p.at != p.toks.len() {
        return p.fail("unexpected trailing input");
    }
    Ok(out)
}
