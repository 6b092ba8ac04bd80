//! Curve-input documents and the expression grammar.
//!
//! A document is a sequence of `key = value` statements separated by
//! semicolons or newlines, with `#` comments. Keys: `p` (prime), `n`
//! (extension degree, default 1), `field_modulus` (optional, a polynomial
//! in `g` over F_p), and `a = [a1, a2, a3, a4, a6]`.
//!
//! Expressions follow
//!   expr   := term (('+'|'-') term)*
//!   term   := factor (('*'|'/') factor)*
//!   factor := base ('^' uint)?
//!   base   := uint | 't' | '(' expr ')' | '-' factor
//! with integers reduced mod p, whitespace insignificant, and `g` admitted
//! as the field generator when n > 1. Kernel-polynomial arguments also
//! admit the variable `x`.

use crate::curve::{Curve, GlobalCurve};
use crate::error::{Error, Result};
use crate::funcfield::{Polynomial, RatFn, RatFnField, XPoly};
use crate::gf::FiniteField;
use crate::ring::{Field, Ring};

#[derive(Clone, Debug)]
pub enum Expr {
    Int(u64),
    Var(char),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Copy, PartialEq, Debug)]
enum Tok {
    Int(u64),
    Ident(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Equals,
}

#[derive(Clone, Copy)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer {
    toks: Vec<Spanned>,
    pos: usize,
    end_line: usize,
    end_col: usize,
}

fn err_at(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

impl Lexer {
    fn new(text: &str) -> Result<Self> {
        let mut toks = Vec::new();
        let mut line = 1usize;
        let mut col = 1usize;
        let mut chars = text.chars().peekable();
        while let Some(&ch) = chars.peek() {
            let (l, c) = (line, col);
            let mut advance = |chars: &mut std::iter::Peekable<std::str::Chars>| {
                let ch = chars.next().unwrap();
                if ch == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
                ch
            };
            match ch {
                '#' => {
                    while let Some(&c2) = chars.peek() {
                        if c2 == '\n' {
                            break;
                        }
                        advance(&mut chars);
                    }
                }
                '\n' => {
                    advance(&mut chars);
                    toks.push(Spanned {
                        tok: Tok::Semi,
                        line: l,
                        col: c,
                    });
                }
                ch if ch.is_whitespace() => {
                    advance(&mut chars);
                }
                ch if ch.is_ascii_digit() => {
                    let mut v: u64 = 0;
                    while let Some(&c2) = chars.peek() {
                        if !c2.is_ascii_digit() {
                            break;
                        }
                        let d = advance(&mut chars) as u64 - '0' as u64;
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(d))
                            .ok_or_else(|| err_at(l, c, "integer literal overflows"))?;
                    }
                    toks.push(Spanned {
                        tok: Tok::Int(v),
                        line: l,
                        col: c,
                    });
                }
                ch if ch.is_ascii_alphabetic() => {
                    advance(&mut chars);
                    // multi-letter identifiers are only valid as keywords,
                    // which the statement parser handles; single letters
                    // reach the expression grammar
                    let mut word = String::from(ch);
                    while let Some(&c2) = chars.peek() {
                        if c2.is_ascii_alphanumeric() || c2 == '_' {
                            word.push(advance(&mut chars));
                        } else {
                            break;
                        }
                    }
                    if word.len() == 1 {
                        toks.push(Spanned {
                            tok: Tok::Ident(ch),
                            line: l,
                            col: c,
                        });
                    } else {
                        // encode keywords as a sequence of Ident tokens is
                        // lossy; reject here with a useful message unless it
                        // is a known keyword handled by the caller
                        match word.as_str() {
                            "field_modulus" => toks.push(Spanned {
                                tok: Tok::Ident('F'),
                                line: l,
                                col: c,
                            }),
                            "inf" => toks.push(Spanned {
                                tok: Tok::Ident('I'),
                                line: l,
                                col: c,
                            }),
                            _ => return Err(err_at(l, c, format!("unknown identifier `{word}`"))),
                        }
                    }
                }
                '+' => {
                    advance(&mut chars);
                    toks.push(Spanned {
                        tok: Tok::Plus,
                        line: l,
                        col: c,
                    });
                }
                '-' => {
                    advance(&mut chars);
                    toks.push(Spanned {
                        tok: Tok::Minus,
                        line: l,
                        col: c,
                    });
                }
                '*' => {
                    advance(&mut chars);
                    toks.push(Spanned {
                        tok: Tok::Star,
                        line: l,
                        col: c,
                    });
                }
                '/' => {
                    advance(&mut chars);
                    toks.push(Spanned {
                        tok: Tok::Slash,
                        line: l,
                        col: c,
                    });
                }
                '^' => {
                    advance(&mut chars);
                    toks.push(Spanned {
                        tok: Tok::Caret,
                        line: l,
                        col: c,
                    });
                }
                '(' => {
                    advance(&mut chars);
                    toks.push(Spanned {
                        tok: Tok::LParen,
                        line: l,
                        col: c,
                    });
                }
                ')' => {
                    advance(&mut chars);
                    toks.push(Spanned {
                        tok: Tok::RParen,
                        line: l,
                        col: c,
                    });
                }
                '[' => {
                    advance(&mut chars);
                    toks.push(Spanned {
                        tok: Tok::LBracket,
                        line: l,
                        col: c,
                    });
                }
                ']' => {
                    advance(&mut chars);
                    toks.push(Spanned {
                        tok: Tok::RBracket,
                        line: l,
                        col: c,
                    });
                }
                ',' => {
                    advance(&mut chars);
                    toks.push(Spanned {
                        tok: Tok::Comma,
                        line: l,
                        col: c,
                    });
                }
                ';' => {
                    advance(&mut chars);
                    toks.push(Spanned {
                        tok: Tok::Semi,
                        line: l,
                        col: c,
                    });
                }
                '=' => {
                    advance(&mut chars);
                    toks.push(Spanned {
                        tok: Tok::Equals,
                        line: l,
                        col: c,
                    });
                }
                other => return Err(err_at(l, c, format!("unexpected character `{other}`"))),
            }
        }
        Ok(Lexer {
            toks,
            pos: 0,
            end_line: line,
            end_col: col,
        })
    }

    fn peek(&self) -> Option<Spanned> {
        self.toks.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.peek()
            .map(|s| (s.line, s.col))
            .unwrap_or((self.end_line, self.end_col))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Spanned> {
        let (l, c) = self.here();
        match self.next() {
            Some(s) if s.tok == tok => Ok(s),
            _ => Err(err_at(l, c, format!("expected {what}"))),
        }
    }
}

fn parse_expr(lx: &mut Lexer) -> Result<Expr> {
    let mut acc = parse_term(lx)?;
    while let Some(s) = lx.peek() {
        match s.tok {
            Tok::Plus => {
                lx.next();
                acc = Expr::Add(Box::new(acc), Box::new(parse_term(lx)?));
            }
            Tok::Minus => {
                lx.next();
                acc = Expr::Sub(Box::new(acc), Box::new(parse_term(lx)?));
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_term(lx: &mut Lexer) -> Result<Expr> {
    let mut acc = parse_factor(lx)?;
    while let Some(s) = lx.peek() {
        match s.tok {
            Tok::Star => {
                lx.next();
                acc = Expr::Mul(Box::new(acc), Box::new(parse_factor(lx)?));
            }
            Tok::Slash => {
                lx.next();
                acc = Expr::Div(Box::new(acc), Box::new(parse_factor(lx)?));
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_factor(lx: &mut Lexer) -> Result<Expr> {
    let base = parse_base(lx)?;
    if let Some(s) = lx.peek() {
        if s.tok == Tok::Caret {
            lx.next();
            let (l, c) = lx.here();
            match lx.next() {
                Some(Spanned {
                    tok: Tok::Int(e), ..
                }) => {
                    let e = u32::try_from(e).map_err(|_| err_at(l, c, "exponent too large"))?;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(err_at(l, c, "expected an integer exponent after `^`")),
            }
        }
    }
    Ok(base)
}

fn parse_base(lx: &mut Lexer) -> Result<Expr> {
    let (l, c) = lx.here();
    match lx.next() {
        Some(Spanned {
            tok: Tok::Int(v), ..
        }) => Ok(Expr::Int(v)),
        Some(Spanned {
            tok: Tok::Ident(ch),
            ..
        }) if ch == 't' || ch == 'g' || ch == 'x' => Ok(Expr::Var(ch)),
        Some(Spanned {
            tok: Tok::LParen, ..
        }) => {
            let e = parse_expr(lx)?;
            lx.expect(Tok::RParen, "`)`")?;
            Ok(e)
        }
        Some(Spanned {
            tok: Tok::Minus, ..
        }) => Ok(Expr::Neg(Box::new(parse_factor(lx)?))),
        _ => Err(err_at(l, c, "expected a number, variable, `(` or `-`")),
    }
}

/// Parse a standalone expression string.
pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut lx = Lexer::new(text)?;
    // skip leading statement separators
    while matches!(lx.peek().map(|s| s.tok), Some(Tok::Semi)) {
        lx.next();
    }
    let e = parse_expr(&mut lx)?;
    while matches!(lx.peek().map(|s| s.tok), Some(Tok::Semi)) {
        lx.next();
    }
    let (l, c) = lx.here();
    if lx.peek().is_some() {
        return Err(err_at(l, c, "trailing input after expression"));
    }
    Ok(e)
}

/// A parsed curve-input document.
#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub p: u64,
    pub n: usize,
    pub field_modulus: Option<Expr>,
    pub a: [Expr; 5],
}

pub fn parse_curve_spec(text: &str) -> Result<CurveSpec> {
    let mut lx = Lexer::new(text)?;
    let mut p: Option<u64> = None;
    let mut n: Option<u64> = None;
    let mut modulus: Option<Expr> = None;
    let mut a: Option<[Expr; 5]> = None;
    loop {
        while matches!(lx.peek().map(|s| s.tok), Some(Tok::Semi)) {
            lx.next();
        }
        let Some(s) = lx.peek() else { break };
        let (l, c) = (s.line, s.col);
        let key = match s.tok {
            Tok::Ident(ch) => ch,
            _ => return Err(err_at(l, c, "expected a statement `key = value`")),
        };
        lx.next();
        lx.expect(Tok::Equals, "`=` after the key")?;
        match key {
            'p' => {
                let (l2, c2) = lx.here();
                match lx.next() {
                    Some(Spanned {
                        tok: Tok::Int(v), ..
                    }) => p = Some(v),
                    _ => return Err(err_at(l2, c2, "expected a prime number")),
                }
            }
            'n' => {
                let (l2, c2) = lx.here();
                match lx.next() {
                    Some(Spanned {
                        tok: Tok::Int(v), ..
                    }) => n = Some(v),
                    _ => return Err(err_at(l2, c2, "expected an extension degree")),
                }
            }
            'F' => {
                modulus = Some(parse_expr(&mut lx)?);
            }
            'a' => {
                lx.expect(Tok::LBracket, "`[`")?;
                let mut list = Vec::new();
                loop {
                    list.push(parse_expr(&mut lx)?);
                    let (l2, c2) = lx.here();
                    match lx.next() {
                        Some(Spanned {
                            tok: Tok::Comma, ..
                        }) => continue,
                        Some(Spanned {
                            tok: Tok::RBracket, ..
                        }) => break,
                        _ => return Err(err_at(l2, c2, "expected `,` or `]`")),
                    }
                }
                if list.len() != 5 {
                    return Err(err_at(
                        l,
                        c,
                        format!(
                            "`a` needs exactly five entries [a1, a2, a3, a4, a6], got {}",
                            list.len()
                        ),
                    ));
                }
                let mut it = list.into_iter();
                a = Some([
                    it.next().unwrap(),
                    it.next().unwrap(),
                    it.next().unwrap(),
                    it.next().unwrap(),
                    it.next().unwrap(),
                ]);
            }
            other => return Err(err_at(l, c, format!("unknown key `{other}`"))),
        }
    }
    let p = p.ok_or_else(|| err_at(1, 1, "missing required key `p`"))?;
    let n = n.unwrap_or(1);
    let a = a.ok_or_else(|| err_at(1, 1, "missing required key `a`"))?;
    if n == 0 || n > 20 {
        return Err(err_at(1, 1, "extension degree n must be between 1 and 20"));
    }
    Ok(CurveSpec {
        p,
        n: n as usize,
        field_modulus: modulus,
        a,
    })
}

/// Evaluate an expression to a rational function over F_q(t). `g` is the
/// field generator (n > 1 only); `x` is rejected here.
pub fn eval_ratfn(expr: &Expr, k: &RatFnField) -> Result<RatFn> {
    Ok(match expr {
        Expr::Int(v) => k.from_int(*v as i64),
        Expr::Var('t') => k.var(),
        Expr::Var('g') => {
            let g = k
                .base()
                .generator()
                .map_err(|_| err_at(1, 1, "`g` needs n > 1"))?;
            RatFn::from_poly(Polynomial::constant(k.base(), g))
        }
        Expr::Var(v) => return Err(err_at(1, 1, format!("variable `{v}` not allowed here"))),
        Expr::Neg(e) => eval_ratfn(e, k)?.neg(),
        Expr::Add(a, b) => eval_ratfn(a, k)?.add(&eval_ratfn(b, k)?),
        Expr::Sub(a, b) => eval_ratfn(a, k)?.sub(&eval_ratfn(b, k)?),
        Expr::Mul(a, b) => eval_ratfn(a, k)?.mul(&eval_ratfn(b, k)?),
        Expr::Div(a, b) => eval_ratfn(a, k)?.div(&eval_ratfn(b, k)?)?,
        Expr::Pow(e, n) => eval_ratfn(e, k)?.pow(*n as i64)?,
    })
}

/// Evaluate an expression in `g` to a polynomial over F_p (for the field
/// modulus).
fn eval_fp_poly(expr: &Expr, fp: &FiniteField) -> Result<Polynomial<FiniteField>> {
    Ok(match expr {
        Expr::Int(v) => Polynomial::constant(fp, fp.from_i64(*v as i64)),
        Expr::Var('g') => Polynomial::gen(fp),
        Expr::Var(v) => {
            return Err(err_at(
                1,
                1,
                format!("variable `{v}` not allowed in a field modulus"),
            ))
        }
        Expr::Neg(e) => eval_fp_poly(e, fp)?.neg(),
        Expr::Add(a, b) => eval_fp_poly(a, fp)?.add(&eval_fp_poly(b, fp)?),
        Expr::Sub(a, b) => eval_fp_poly(a, fp)?.sub(&eval_fp_poly(b, fp)?),
        Expr::Mul(a, b) => eval_fp_poly(a, fp)?.mul(&eval_fp_poly(b, fp)?),
        Expr::Div(_, _) => return Err(err_at(1, 1, "division not allowed in a field modulus")),
        Expr::Pow(e, n) => eval_fp_poly(e, fp)?.pow(*n as u64),
    })
}

/// Evaluate a kernel-polynomial expression in `x` with coefficients in
/// F_q(t).
pub fn eval_xpoly(expr: &Expr, k: &RatFnField) -> Result<XPoly> {
    Ok(match expr {
        Expr::Var('x') => Polynomial::gen(k),
        Expr::Neg(e) => eval_xpoly(e, k)?.neg(),
        Expr::Add(a, b) => eval_xpoly(a, k)?.add(&eval_xpoly(b, k)?),
        Expr::Sub(a, b) => eval_xpoly(a, k)?.sub(&eval_xpoly(b, k)?),
        Expr::Mul(a, b) => eval_xpoly(a, k)?.mul(&eval_xpoly(b, k)?),
        Expr::Pow(e, n) => eval_xpoly(e, k)?.pow(*n as u64),
        Expr::Div(a, b) => {
            let d = eval_ratfn(b, k)?;
            eval_xpoly(a, k)?.scale(&d.inv()?)
        }
        other => Polynomial::constant(k, eval_ratfn(other, k)?),
    })
}

/// Build the base field and the curve from a parsed document.
pub fn curve_from_spec(spec: &CurveSpec) -> Result<(RatFnField, GlobalCurve)> {
    let field = match (&spec.field_modulus, spec.n) {
        (None, 1) => FiniteField::prime(spec.p)?,
        (None, n) => FiniteField::extension(spec.p, n)?,
        (Some(expr), n) => {
            let fp = FiniteField::prime(spec.p)?;
            let poly = eval_fp_poly(expr, &fp)?;
            if poly.degree() != Some(n) {
                return Err(err_at(
                    1,
                    1,
                    format!("field modulus must have degree n = {n}"),
                ));
            }
            let coeffs: Vec<u64> = poly.coeffs().iter().map(|c| fp.index_of(c)).collect();
            FiniteField::with_modulus(spec.p, coeffs)?
        }
    };
    let k = RatFnField(field);
    let mut coeffs = Vec::with_capacity(5);
    for e in &spec.a {
        coeffs.push(eval_ratfn(e, &k)?);
    }
    let c = Curve::new(
        &k,
        [
            coeffs[0].clone(),
            coeffs[1].clone(),
            coeffs[2].clone(),
            coeffs[3].clone(),
            coeffs[4].clone(),
        ],
    )?;
    Ok((k, c))
}

/// Parse a whole document into a curve.
pub fn parse_curve(text: &str) -> Result<(RatFnField, GlobalCurve)> {
    curve_from_spec(&parse_curve_spec(text)?)
}

/// A place argument: a monic irreducible polynomial expression, or `inf`.
pub fn parse_place(text: &str, k: &RatFnField) -> Result<crate::funcfield::Place> {
    if text.trim() == "inf" {
        return Ok(crate::funcfield::Place::infinity(k.base()));
    }
    let expr = parse_expression(text)?;
    let r = eval_ratfn(&expr, k)?;
    if !r.is_polynomial() {
        return Err(Error::InvalidPlace(
            "a place must be a polynomial in t".into(),
        ));
    }
    let poly = r.num().clone();
    if !poly.is_monic() {
        return Err(Error::InvalidPlace("a place must be monic".into()));
    }
    crate::funcfield::Place::finite(poly).map_err(|e| match e {
        Error::NotIrreducible => Error::InvalidPlace("the polynomial is not irreducible".into()),
        other => other,
    })
}
