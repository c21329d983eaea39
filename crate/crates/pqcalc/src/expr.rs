//! Tiny expression grammar for CLI-supplied integrands.
//!
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?          right-associative
//! atom   := number | 't' | name '(' expr (',' expr)? ')' | '(' expr ')'
//!
//! Names: pow(x, y), exp_q(x) for the small q-exponential, Exp_q(x) or
//! Eq(x) for the big one. The deformation parameter q comes from the
//! evaluation context, not the expression.

use crate::error::{Error, Result};
use crate::precision::PrecisionPolicy;
use crate::q_series::{q_exp_big, q_exp_small};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    ExpSmall(Box<Expr>),
    ExpBig(Box<Expr>),
}

impl Expr {
    /// Evaluate at t. q and the policy feed the q-exponentials.
    pub fn eval(&self, t: f64, q: f64, policy: &PrecisionPolicy) -> Result<f64> {
        Ok(match self {
            Expr::Const(c) => *c,
            Expr::Var => t,
            Expr::Neg(e) => -e.eval(t, q, policy)?,
            Expr::Add(a, b) => a.eval(t, q, policy)? + b.eval(t, q, policy)?,
            Expr::Sub(a, b) => a.eval(t, q, policy)? - b.eval(t, q, policy)?,
            Expr::Mul(a, b) => a.eval(t, q, policy)? * b.eval(t, q, policy)?,
            Expr::Div(a, b) => a.eval(t, q, policy)? / b.eval(t, q, policy)?,
            Expr::Pow(a, b) => a.eval(t, q, policy)?.powf(b.eval(t, q, policy)?),
            Expr::ExpSmall(e) => q_exp_small(e.eval(t, q, policy)?, q, policy)?.value,
            Expr::ExpBig(e) => q_exp_big(e.eval(t, q, policy)?, q, policy)?.value,
        })
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { chars: src.char_indices().peekable(), src };
    let e = p.expr()?;
    p.skip_ws();
    if let Some(&(i, c)) = p.chars.peek() {
        return Err(p.error(i, &format!("unexpected '{c}'")));
    }
    Ok(e)
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn error(&self, pos: usize, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {pos} in expression '{}'", self.src))
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(&(_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if matches!(self.chars.peek(), Some(&(_, c)) if c == want) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            // right-associative, exponent may carry a sign
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        let &(start, c) = match self.chars.peek() {
            Some(pc) => pc,
            None => return Err(self.error(self.src.len(), "unexpected end of expression")),
        };
        if c.is_ascii_digit() || c == '.' {
            return self.number(start);
        }
        if c == '(' {
            self.chars.next();
            let e = self.expr()?;
            if !self.eat(')') {
                return Err(self.error(start, "unclosed parenthesis"));
            }
            return Ok(e);
        }
        if c.is_alphabetic() || c == '_' {
            return self.name(start);
        }
        Err(self.error(start, &format!("unexpected '{c}'")))
    }

    fn number(&mut self, start: usize) -> Result<Expr> {
        let mut end = start;
        while let Some(&(i, c)) = self.chars.peek() {
            if c.is_ascii_digit() || c == '.' {
                end = i + c.len_utf8();
                self.chars.next();
            } else if c == 'e' || c == 'E' {
                // exponent marker only when followed by a digit or sign
                let mut ahead = self.chars.clone();
                ahead.next();
                match ahead.peek() {
                    Some(&(_, d)) if d.is_ascii_digit() || d == '+' || d == '-' => {
                        self.chars.next();
                        let &(i2, s) = self.chars.peek().unwrap();
                        end = i2 + s.len_utf8();
                        self.chars.next();
                        while let Some(&(i3, d2)) = self.chars.peek() {
                            if d2.is_ascii_digit() {
                                end = i3 + d2.len_utf8();
                                self.chars.next();
                            } else {
                                break;
                            }
                        }
                        break;
                    }
                    _ => break,
                }
            } else {
                break;
            }
        }
        self.src[start..end]
            .parse::<f64>()
            .map(Expr::Const)
            .map_err(|_| self.error(start, &format!("bad number '{}'", &self.src[start..end])))
    }

    fn name(&mut self, start: usize) -> Result<Expr> {
        let mut end = start;
        while let Some(&(i, c)) = self.chars.peek() {
            if c.is_alphanumeric() || c == '_' {
                end = i + c.len_utf8();
                self.chars.next();
            } else {
                break;
            }
        }
        let word = &self.src[start..end];
        if word == "t" {
            return Ok(Expr::Var);
        }
        if !self.eat('(') {
            return Err(self.error(start, &format!("unknown name '{word}' (only 't' stands alone)")));
        }
        let first = self.expr()?;
        let node = match word {
            "pow" => {
                if !self.eat(',') {
                    return Err(self.error(start, "pow takes two arguments"));
                }
                let second = self.expr()?;
                Expr::Pow(Box::new(first), Box::new(second))
            }
            "exp_q" => Expr::ExpSmall(Box::new(first)),
            "Exp_q" | "Eq" => Expr::ExpBig(Box::new(first)),
            other => return Err(self.error(start, &format!("unknown function '{other}'"))),
        };
        if !self.eat(')') {
            return Err(self.error(start, "unclosed argument list"));
        }
        Ok(node)
    }
}
