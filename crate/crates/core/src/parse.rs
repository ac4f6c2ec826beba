//! Text syntax for polynomials and monomial ideals.
//!
//! Polynomials: `x^3 + x*y + y^4`, `3/2*x^2 - y`, `2x(y+1)^2`, optionally
//! followed by `@p` for F_p or `@units` for abstract unit coefficients.
//! Ideals: `[x^3, x*y, y^4]` (parentheses also accepted).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::newton::{minimalize, Monomial, MonomialIdeal};
use crate::poly::{sort_vars, Field, Polynomial};

/// A monomial ideal together with its variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedIdeal {
    pub vars: Vec<String>,
    pub ideal: MonomialIdeal,
}

impl NamedIdeal {
    pub fn render(&self) -> String {
        self.ideal.render(&self.vars)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    At(String),
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map(|s| s.chars().count()).unwrap_or(0) + 1;
    (line, column)
}

fn err_at(src: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, column) = position(src, offset);
    Error::Parse { line, column, message: message.into() }
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let bytes: Vec<(usize, char)> = src.char_indices().collect();
        let mut i = 0;
        while i < bytes.len() {
            let (off, c) = bytes[i];
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                    i += 1;
                }
                let end = if i < bytes.len() { bytes[i].0 } else { src.len() };
                let n: BigInt = src[bytes[start].0..end].parse().expect("digits");
                lx.toks.push((Tok::Num(n), off));
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < bytes.len() && (bytes[i].1.is_ascii_alphanumeric() || bytes[i].1 == '_') {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].1 == '\'' {
                    i += 1;
                }
                let end = if i < bytes.len() { bytes[i].0 } else { src.len() };
                lx.toks.push((Tok::Ident(src[bytes[start].0..end].to_string()), off));
            } else if c == '@' {
                i += 1;
                while i < bytes.len() && bytes[i].1.is_whitespace() {
                    i += 1;
                }
                let start = i;
                while i < bytes.len() && bytes[i].1.is_ascii_alphanumeric() {
                    i += 1;
                }
                let s = if start < bytes.len() {
                    let end = if i < bytes.len() { bytes[i].0 } else { src.len() };
                    src[bytes[start].0..end].to_string()
                } else {
                    String::new()
                };
                lx.toks.push((Tok::At(s), off));
            } else if "+-*/^(),[]".contains(c) {
                lx.toks.push((Tok::Sym(c), off));
                i += 1;
            } else {
                return Err(err_at(lx.src, off, format!("unexpected character '{c}'")));
            }
        }
        Ok(lx.toks)
    }
}

/// Expression tree; variables are resolved once all names are known.
#[derive(Clone, Debug)]
enum Expr {
    Num(BigRational),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => out.push(v.clone()),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b, _) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
        }
    }

    fn eval(&self, vars: &[String], src: &str) -> Result<Polynomial> {
        let f = Field::Rational;
        Ok(match self {
            Expr::Num(c) => Polynomial::constant(vars.to_vec(), f, c.clone())?,
            Expr::Var(v) => {
                let i = vars.iter().position(|w| w == v).expect("collected variable");
                Polynomial::variable(vars.to_vec(), f, i)
            }
            Expr::Add(a, b) => a.eval(vars, src)?.add(&b.eval(vars, src)?),
            Expr::Sub(a, b) => a.eval(vars, src)?.sub(&b.eval(vars, src)?),
            Expr::Mul(a, b) => a.eval(vars, src)?.mul(&b.eval(vars, src)?),
            Expr::Div(a, b, off) => {
                let d = b.eval(vars, src)?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => a.eval(vars, src)?.scale(&c.recip()),
                    Some(_) => return Err(err_at(src, *off, "division by zero")),
                    None => return Err(err_at(src, *off, "division by a non-constant")),
                }
            }
            Expr::Neg(a) => a.eval(vars, src)?.neg(),
            Expr::Pow(a, k) => a.eval(vars, src)?.pow(*k),
        })
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self> {
        Ok(Parser { src, toks: Lexer::run(src)?, pos: 0 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.src.len())
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        err_at(self.src, self.offset(), msg)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_sym('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let off = self.offset();
                self.pos += 1;
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), off);
            } else if self.starts_factor() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_sym('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat_sym('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat_sym('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let k = n.to_u32().ok_or_else(|| self.error("exponent too large"))?;
                    self.pos += 1;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                _ => Err(self.error("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Some(_) => Err(self.error("expected a number, variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn field_suffix(&mut self) -> Result<Field> {
        match self.peek().cloned() {
            Some(Tok::At(s)) => {
                let off = self.offset();
                self.pos += 1;
                if s == "units" {
                    return Ok(Field::Units);
                }
                let p: u64 = s.parse().map_err(|_| err_at(self.src, off, "expected a prime or 'units' after '@'"))?;
                if !crate::poly::is_prime(p) {
                    return Err(err_at(self.src, off, format!("{p} is not prime")));
                }
                if p > (1 << 31) {
                    return Err(err_at(self.src, off, "prime too large"));
                }
                Ok(Field::Prime(p))
            }
            _ => Ok(Field::Rational),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            Err(self.error("unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

fn build(exprs: &[Expr], extra: &[String], src: &str) -> Result<(Vec<String>, Vec<Polynomial>)> {
    let mut vars: Vec<String> = extra.to_vec();
    for e in exprs {
        e.collect_vars(&mut vars);
    }
    if extra.is_empty() {
        sort_vars(&mut vars);
    } else {
        let mut seen = Vec::new();
        for v in vars {
            if !seen.contains(&v) {
                seen.push(v);
            }
        }
        vars = seen;
    }
    let polys = exprs.iter().map(|e| e.eval(&vars, src)).collect::<Result<Vec<_>>>()?;
    Ok((vars, polys))
}

/// Parse a polynomial; variables are ordered naturally by name.
pub fn parse_poly(src: &str) -> Result<Polynomial> {
    parse_poly_with_vars(src, &[])
}

/// Parse a polynomial whose variables start with `vars` in the given order;
/// names not listed are appended.
pub fn parse_poly_with_vars(src: &str, vars: &[String]) -> Result<Polynomial> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    let field = p.field_suffix()?;
    p.finish()?;
    let (_, mut polys) = build(&[e], vars, src)?;
    let f = polys.pop().unwrap();
    if field == Field::Rational {
        Ok(f)
    } else {
        f.with_field(field).map_err(|e| err_at(src, src.len(), e.to_string()))
    }
}

/// Parse a bracketed list of monomials.
pub fn parse_ideal(src: &str) -> Result<NamedIdeal> {
    parse_ideal_with_vars(src, &[])
}

pub fn parse_ideal_with_vars(src: &str, vars: &[String]) -> Result<NamedIdeal> {
    let mut p = Parser::new(src)?;
    let close = if p.eat_sym('[') {
        ']'
    } else if p.eat_sym('(') {
        ')'
    } else {
        return Err(p.error("expected '[' to start an ideal"));
    };
    let mut exprs = Vec::new();
    let mut offsets = Vec::new();
    loop {
        offsets.push(p.offset());
        exprs.push(p.expr()?);
        if p.eat_sym(',') {
            continue;
        }
        p.expect_sym(close)?;
        break;
    }
    p.finish()?;
    let (vars, polys) = build(&exprs, vars, src)?;
    let mut gens = Vec::new();
    for (f, off) in polys.iter().zip(offsets) {
        if f.num_terms() != 1 {
            return Err(err_at(src, off, format!("generator {f} is not a monomial")));
        }
        gens.push(Monomial(f.terms().next().unwrap().0.clone()));
    }
    Ok(NamedIdeal { ideal: minimalize(&gens)?, vars })
}

/// Split a comma-separated list of integers.
pub fn parse_int_list(src: &str) -> Result<Vec<BigInt>> {
    src.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<BigInt>().map_err(|_| Error::InvalidInput(format!("'{s}' is not an integer"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_polys() {
        let f = parse_poly("x^3 + x*y + y^4").unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.to_string(), "x^3 + x*y + y^4");
        let g = parse_poly("x^2 + 2*x*y @5").unwrap();
        assert_eq!(g.field(), Field::Prime(5));
        assert_eq!(parse_poly("2x(y+1)^2").unwrap().to_string(), "2*x*y^2 + 4*x*y + 2*x");
        assert_eq!(parse_poly("3/2*x - x/2").unwrap().to_string(), "x");
        assert_eq!(parse_poly("x'^2 + s1*y'").unwrap().vars(), &["s1".to_string(), "x'".into(), "y'".into()]);
    }

    #[test]
    fn ideals() {
        let i = parse_ideal("[x^3, x*y, y^4]").unwrap();
        assert_eq!(i.render(), "[x^3, x*y, y^4]");
        assert!(parse_ideal("[x + y]").is_err());
        assert_eq!(parse_ideal("(x1*x2, x3)").unwrap().vars, vec!["x1", "x2", "x3"]);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly("x +\n  * y") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("x @4").is_err());
        assert!(parse_poly("x / y").is_err());
        assert!(parse_poly("x ^ y").is_err());
        assert!(parse_poly("x $").is_err());
    }
}
