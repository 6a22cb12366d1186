//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | power
//! power  := atom ('^' int)?
//! atom   := int ('/' int)? | ident | '(' expr ')'
//! ```
//!
//! `/` only forms rational literals and juxtaposition is rejected, so `2x`
//! and `x/2` are syntax errors.

use num::{BigInt, Zero};

use super::poly::{Poly, Q, VarSet};
use crate::error::AlgebraError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> AlgebraError {
    AlgebraError::Syntax {
        position,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, AlgebraError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => return Err(syntax(start, format!("unexpected character '{other}'"))),
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a VarSet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc += &rhs;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc -= &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, AlgebraError> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            let rhs = self.factor()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, AlgebraError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(-self.factor()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, AlgebraError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| syntax(at, "exponent too large"))?;
                    return Ok(base.pow(e));
                }
                Some(Tok::Minus) => return Err(AlgebraError::NegativeExponent { position: at }),
                Some(t) => return Err(syntax(at, format!("expected exponent, found {}", t.describe()))),
                None => return Err(syntax(at, "expected exponent, found end of input")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, AlgebraError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let dat = self.offset();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d.is_zero() {
                                return Err(syntax(dat, "zero denominator in rational literal"));
                            }
                            Ok(Poly::constant(self.vars, Q::new(n, d)))
                        }
                        _ => Err(syntax(dat, "'/' is only allowed between integer literals")),
                    }
                } else {
                    Ok(Poly::constant(self.vars, Q::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => match self.vars.index_of(&name) {
                Some(i) => Ok(Poly::var(self.vars, i)),
                None => Err(AlgebraError::UnknownVariable(name)),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let cat = self.offset();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax(cat, "expected ')'")),
                }
            }
            Some(t) => Err(syntax(at, format!("unexpected {}", t.describe()))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses `text` into its canonical expanded polynomial over `vars`.
pub fn parse_expr(text: &str, vars: &VarSet) -> Result<Poly, AlgebraError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        vars,
    };
    let out = p.expr()?;
    if let Some(t) = p.peek() {
        let at = p.offset();
        let msg = match t {
            Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                format!("unexpected {} (implicit multiplication is not allowed)", t.describe())
            }
            Tok::Slash => "'/' is only allowed between integer literals".to_string(),
            _ => format!("unexpected {}", t.describe()),
        };
        return Err(syntax(at, msg));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::poly::{q, qr, Monomial};

    fn parse(s: &str) -> Result<Poly, AlgebraError> {
        parse_expr(s, &VarSet::txyz())
    }

    #[test]
    fn zero() {
        assert!(parse("0").unwrap().is_zero());
    }

    #[test]
    fn fold_quadric() {
        let p = parse("-x^2+y^2+z^2").unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.coeff(&Monomial::from_exponents(&[0, 2, 0, 0])), q(-1));
        assert_eq!(p.coeff(&Monomial::from_exponents(&[0, 0, 2, 0])), q(1));
        assert_eq!(p.coeff(&Monomial::from_exponents(&[0, 0, 0, 2])), q(1));
    }

    #[test]
    fn expansion_matches_distribution() {
        // t*(x+1)^2 distributed by hand: t*x*x + t*x + t*x + t
        let p = parse("t*(x+1)^2").unwrap();
        let by_hand = parse("t*x*x + t*x + t*x + t").unwrap();
        assert_eq!(p, by_hand);
        assert_eq!(p.to_string(), "t*x^2 + 2*t*x + t");
    }

    #[test]
    fn rational_literals() {
        let p = parse("3/6*x - 1/3").unwrap();
        assert_eq!(p.coeff(&Monomial::var(4, 1)), qr(1, 2));
        assert_eq!(p.constant_term(), qr(-1, 3));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("2x"), Err(AlgebraError::Syntax { position: 1, .. })));
        assert!(matches!(parse("x/2"), Err(AlgebraError::Syntax { position: 1, .. })));
        assert!(matches!(parse("x^-1"), Err(AlgebraError::NegativeExponent { position: 2 })));
        assert!(matches!(parse("w+1"), Err(AlgebraError::UnknownVariable(_))));
        assert!(matches!(parse("(x+1"), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(parse(""), Err(AlgebraError::Syntax { position: 0, .. })));
        assert!(matches!(parse("1/0"), Err(AlgebraError::Syntax { .. })));
        assert!(matches!(parse("x $ y"), Err(AlgebraError::Syntax { position: 2, .. })));
        assert!(matches!(parse("+x"), Err(AlgebraError::Syntax { .. })));
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(parse("-x^2").unwrap(), -parse("x^2").unwrap());
        assert_eq!(parse("(-x)^2").unwrap(), parse("x^2").unwrap());
    }
}
