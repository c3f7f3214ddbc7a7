use std::fmt;

use super::CausalModel;
use crate::error::{Error, Result};

/// Boolean combination of primitive events `X = x`, over endogenous
/// variables (stored as range indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventFormula {
    True,
    False,
    Is(usize, usize),
    Not(Box<EventFormula>),
    And(Box<EventFormula>, Box<EventFormula>),
    Or(Box<EventFormula>, Box<EventFormula>),
}

impl EventFormula {
    pub fn eval(&self, values: &[usize]) -> bool {
        match self {
            EventFormula::True => true,
            EventFormula::False => false,
            EventFormula::Is(x, v) => values[*x] == *v,
            EventFormula::Not(a) => !a.eval(values),
            EventFormula::And(a, b) => a.eval(values) && b.eval(values),
            EventFormula::Or(a, b) => a.eval(values) || b.eval(values),
        }
    }

    pub fn negate(self) -> EventFormula {
        EventFormula::Not(Box::new(self))
    }

    pub fn check(&self, m: &CausalModel) -> Result<()> {
        match self {
            EventFormula::True | EventFormula::False => Ok(()),
            EventFormula::Is(x, v) => {
                if *x < m.endogenous.len() && *v < m.endogenous[*x].range.len() {
                    Ok(())
                } else {
                    Err(Error::Formula("primitive event out of range".into()))
                }
            }
            EventFormula::Not(a) => a.check(m),
            EventFormula::And(a, b) | EventFormula::Or(a, b) => {
                a.check(m)?;
                b.check(m)
            }
        }
    }

    /// Parses `X=x`, `!φ`, `φ & ψ`, `φ | ψ`, parentheses, `true` and
    /// `false`. `!` binds tightest, then `&`, then `|`.
    pub fn parse(m: &CausalModel, text: &str) -> Result<EventFormula> {
        let tokens = tokenize(text);
        let mut p = Parser { m, tokens, pos: 0 };
        let f = p.or()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Formula(format!("unexpected {:?} in {text:?}", p.tokens[p.pos])));
        }
        Ok(f)
    }

    pub fn display<'a>(&'a self, m: &'a CausalModel) -> impl fmt::Display + 'a {
        Shown(self, m)
    }
}

struct Shown<'a>(&'a EventFormula, &'a CausalModel);

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.1;
        match self.0 {
            EventFormula::True => f.write_str("true"),
            EventFormula::False => f.write_str("false"),
            EventFormula::Is(x, v) => write!(f, "{}={}", m.endogenous[*x].name, m.endogenous[*x].range[*v]),
            EventFormula::Not(a) => write!(f, "!({})", Shown(a, m)),
            EventFormula::And(a, b) => write!(f, "({} & {})", Shown(a, m), Shown(b, m)),
            EventFormula::Or(a, b) => write!(f, "({} | {})", Shown(a, m), Shown(b, m)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Word(String),
    Eq,
    Not,
    And,
    Or,
    Open,
    Close,
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '=' | '!' | '&' | '|' | '(' | ')' => {
                chars.next();
                // Tolerate doubled operators such as `&&` and `==`.
                if matches!(c, '=' | '&' | '|') && chars.peek() == Some(&c) {
                    chars.next();
                }
                out.push(match c {
                    '=' => Token::Eq,
                    '!' => Token::Not,
                    '&' => Token::And,
                    '|' => Token::Or,
                    '(' => Token::Open,
                    _ => Token::Close,
                });
            }
            _ => {
                let mut w = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_whitespace() || "=!&|()".contains(d) {
                        break;
                    }
                    w.push(d);
                    chars.next();
                }
                out.push(Token::Word(w));
            }
        }
    }
    out
}

struct Parser<'a> {
    m: &'a CausalModel,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn or(&mut self) -> Result<EventFormula> {
        let mut f = self.and()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            f = EventFormula::Or(Box::new(f), Box::new(self.and()?));
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<EventFormula> {
        let mut f = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            f = EventFormula::And(Box::new(f), Box::new(self.unary()?));
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<EventFormula> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(self.unary()?.negate())
            }
            Some(Token::Open) => {
                self.pos += 1;
                let f = self.or()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(Error::Formula("missing closing parenthesis".into()));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(Token::Word(w)) => {
                self.pos += 1;
                if self.peek() != Some(&Token::Eq) {
                    return match w.as_str() {
                        "true" => Ok(EventFormula::True),
                        "false" => Ok(EventFormula::False),
                        _ => Err(Error::Formula(format!("expected `=` after {w:?}"))),
                    };
                }
                self.pos += 1;
                let Some(Token::Word(v)) = self.tokens.get(self.pos).cloned() else {
                    return Err(Error::Formula(format!("expected a value after `{w}=`")));
                };
                self.pos += 1;
                let x = self.m.endo_index(&w).map_err(|_| Error::Formula(format!("unknown variable {w:?}")))?;
                let val = self.m.endogenous[x]
                    .value_index(&v)
                    .ok_or_else(|| Error::Formula(format!("{v:?} is not a value of {w}")))?;
                Ok(EventFormula::Is(x, val))
            }
            other => Err(Error::Formula(format!("unexpected {other:?}"))),
        }
    }
}
