//! Recursive-descent parser for the surface syntax.
//!
//! ```text
//! term    := term "(+)" term | term "||" term | term "|" term | factor
//! factor  := lit | lit "*" factor | act "." factor | "lin" act "." factor
//!          | "new" name+ "." factor | "@" factor | "(" term ")"
//! act     := name pol "(" name ")" | name | "~" name     pol := "+" | "-" | (empty)
//! lit     := [0-9]+ | "w"
//! ```
//!
//! `(+)` binds loosest, then `||`, then `|`; all are left-associative.
//! `--` starts a comment running to the end of the line.

use std::str::FromStr;

use num_bigint::BigUint;

use super::{normalize, Action, Name, Polarity, Term};
use crate::error::{Error, Result};
use crate::semiring::Value;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Omega,
    Lin,
    New,
    SumOp,
    ParNi,
    Par,
    Star,
    Dot,
    At,
    LParen,
    RParen,
    Tilde,
    Plus,
    Minus,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("name `{s}`"),
            Tok::Num(s) => format!("literal `{s}`"),
            Tok::Omega => "literal `w`".into(),
            Tok::Lin => "`lin`".into(),
            Tok::New => "`new`".into(),
            Tok::SumOp => "`(+)`".into(),
            Tok::ParNi => "`||`".into(),
            Tok::Par => "`|`".into(),
            Tok::Star => "`*`".into(),
            Tok::Dot => "`.`".into(),
            Tok::At => "`@`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, internal: bool) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, column, message: String| Error::Parse {
        line,
        column,
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok, n: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned {
                tok,
                line: l0,
                column: c0,
            });
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '-' if chars.get(i + 1) == Some(&'-') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' if chars.get(i + 1) == Some(&'+') && chars.get(i + 2) == Some(&')') => {
                push(Tok::SumOp, 3, &mut i, &mut col)
            }
            '|' if chars.get(i + 1) == Some(&'|') => push(Tok::ParNi, 2, &mut i, &mut col),
            '|' => push(Tok::Par, 1, &mut i, &mut col),
            '*' => push(Tok::Star, 1, &mut i, &mut col),
            '.' => push(Tok::Dot, 1, &mut i, &mut col),
            '@' => push(Tok::At, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '~' => push(Tok::Tilde, 1, &mut i, &mut col),
            '+' => push(Tok::Plus, 1, &mut i, &mut col),
            '-' => push(Tok::Minus, 1, &mut i, &mut col),
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                out.push(Spanned {
                    tok: Tok::Num(s),
                    line: l0,
                    column: c0,
                });
            }
            c if c.is_ascii_lowercase() || (c == '#' && internal) => {
                let start = i;
                i += 1;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                let tok = match s.as_str() {
                    "w" => Tok::Omega,
                    "lin" => Tok::Lin,
                    "new" => Tok::New,
                    "#" => return Err(err(l0, c0, "empty internal name".into())),
                    _ => Tok::Ident(s),
                };
                out.push(Spanned {
                    tok,
                    line: l0,
                    column: c0,
                });
            }
            '#' => {
                return Err(err(
                    l0,
                    c0,
                    "names starting with `#` are reserved for generated names".into(),
                ))
            }
            other => return Err(err(l0, c0, format!("unexpected character `{other}`"))),
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    next_sugar: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let s = &self.toks[self.pos];
        Err(Error::Parse {
            line: s.line,
            column: s.column,
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                tok.describe(),
                self.peek().describe()
            ))
        }
    }

    fn name(&mut self) -> Result<Name> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(Name::new(&s))
            }
            Tok::Omega => self.error("`w` is the outcome ω and cannot be used as a name"),
            other => self.error(format!("expected a name, found {}", other.describe())),
        }
    }

    fn sugar_name(&mut self) -> Name {
        let n = Name::new(&format!("#{}", self.next_sugar));
        self.next_sugar += 1;
        n
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = self.ni()?;
        while *self.peek() == Tok::SumOp {
            self.bump();
            t = Term::sum(t, self.ni()?);
        }
        Ok(t)
    }

    fn ni(&mut self) -> Result<Term> {
        let mut t = self.par()?;
        while *self.peek() == Tok::ParNi {
            self.bump();
            t = Term::par_ni(t, self.par()?);
        }
        Ok(t)
    }

    fn par(&mut self) -> Result<Term> {
        let mut t = self.factor()?;
        while *self.peek() == Tok::Par {
            self.bump();
            t = Term::par(t, self.factor()?);
        }
        Ok(t)
    }

    fn literal(&mut self) -> Result<Value> {
        match self.bump() {
            Tok::Num(s) => Ok(Value::Int(BigUint::from_str(&s).expect("digits"))),
            Tok::Omega => Ok(Value::Omega),
            _ => unreachable!(),
        }
    }

    fn action(&mut self) -> Result<Action> {
        if *self.peek() == Tok::Tilde {
            self.bump();
            let subject = self.name()?;
            let bound = self.sugar_name();
            return Ok(Action {
                subject,
                polarity: Polarity::Neg,
                bound,
            });
        }
        let subject = self.name()?;
        // `a(x)` is accepted as shorthand for `a+(x)`.
        let pol = match (self.peek(), self.peek_at(1)) {
            (Tok::Plus, Tok::LParen) => Some((Polarity::Pos, 2)),
            (Tok::Minus, Tok::LParen) => Some((Polarity::Neg, 2)),
            (Tok::LParen, _) => Some((Polarity::Pos, 1)),
            _ => None,
        };
        match pol {
            Some((polarity, skip)) => {
                for _ in 0..skip {
                    self.bump();
                }
                let bound = self.name()?;
                self.expect(Tok::RParen)?;
                Ok(Action {
                    subject,
                    polarity,
                    bound,
                })
            }
            None => {
                let bound = self.sugar_name();
                Ok(Action {
                    subject,
                    polarity: Polarity::Pos,
                    bound,
                })
            }
        }
    }

    fn factor(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Num(_) | Tok::Omega => {
                let k = self.literal()?;
                if *self.peek() == Tok::Star {
                    self.bump();
                    Ok(Term::scalar(k, self.factor()?))
                } else {
                    Ok(Term::Lit(k))
                }
            }
            Tok::Lin => {
                self.bump();
                let a = self.action()?;
                self.expect(Tok::Dot)?;
                Ok(Term::lin(a, self.factor()?))
            }
            Tok::New => {
                self.bump();
                let mut names = vec![self.name()?];
                while matches!(self.peek(), Tok::Ident(_)) {
                    names.push(self.name()?);
                }
                self.expect(Tok::Dot)?;
                let mut body = self.factor()?;
                for n in names.into_iter().rev() {
                    body = Term::nu(n, body);
                }
                Ok(body)
            }
            Tok::At => {
                self.bump();
                Ok(Term::place(self.factor()?))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(_) | Tok::Tilde => {
                let a = self.action()?;
                self.expect(Tok::Dot)?;
                Ok(Term::prefix(a, self.factor()?))
            }
            other => self.error(format!("expected a term, found {}", other.describe())),
        }
    }
}

fn run(text: &str, internal: bool) -> Result<Term> {
    let toks = lex(text, internal)?;
    // Sugar binders get `#k` names above every `#k` already present.
    let next_sugar = toks
        .iter()
        .filter_map(|s| match &s.tok {
            Tok::Ident(n) => n.strip_prefix('#').and_then(|d| d.parse::<usize>().ok()),
            _ => None,
        })
        .max()
        .map_or(1, |m| m + 1);
    let mut p = Parser {
        toks,
        pos: 0,
        next_sugar,
    };
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return p.error(format!("unexpected {}", p.peek().describe()));
    }
    Ok(normalize(&t))
}

/// Parses source text. Names beginning with `#` are rejected.
pub fn parse_term(text: &str) -> Result<Term> {
    run(text, false)
}

/// Parses text that may contain generated `#` names, as produced by
/// [`print_term`](super::print_term) on elaborated or reduced terms.
pub fn parse_term_internal(text: &str) -> Result<Term> {
    run(text, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn act(s: &str, p: Polarity, x: &str) -> Action {
        Action::new(s, p, x)
    }

    #[test]
    fn explicit_prefix() {
        let t = parse_term("a(x).1").unwrap();
        assert_eq!(t, Term::prefix(act("a", Polarity::Pos, "x"), Term::one()));
        assert_eq!(parse_term("a+(x).1").unwrap(), t);
        let t = parse_term("a-(x).1").unwrap();
        assert_eq!(t, Term::prefix(act("a", Polarity::Neg, "x"), Term::one()));
    }

    #[test]
    fn restriction_and_sugar() {
        let t = parse_term("new u. (u.1 | ~u.1)").unwrap();
        match &t {
            Term::Nu(u, body) => {
                assert_eq!(u.as_str(), "u");
                match &**body {
                    Term::Par(l, r) => {
                        assert!(matches!(&**l, Term::Prefix(a, _) if a.polarity == Polarity::Pos));
                        assert!(matches!(&**r, Term::Prefix(a, _) if a.polarity == Polarity::Neg));
                    }
                    other => panic!("unexpected {other:?}"),
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sum_of_prefixes() {
        let t = parse_term("a.1 (+) b.1").unwrap();
        match t {
            Term::Sum(l, r) => {
                assert!(matches!(*l, Term::Prefix(ref a, _) if a.subject.as_str() == "a"));
                assert!(matches!(*r, Term::Prefix(ref a, _) if a.subject.as_str() == "b"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn precedence_and_associativity() {
        let t = parse_term("1 | 2 || 3 (+) 4 | 5").unwrap();
        let expect = Term::sum(
            Term::par_ni(Term::par(Term::int(1), Term::int(2)), Term::int(3)),
            Term::par(Term::int(4), Term::int(5)),
        );
        assert_eq!(t, expect);
        let t = parse_term("1 | 2 | 3").unwrap();
        assert_eq!(
            t,
            Term::par(Term::par(Term::int(1), Term::int(2)), Term::int(3))
        );
        let t = parse_term("2 * a.1 | 3").unwrap();
        assert!(matches!(t, Term::Par(ref l, _) if matches!(**l, Term::Scalar(..))));
    }

    #[test]
    fn comments_and_whitespace() {
        let t = parse_term("-- leading comment\n a.1 -- trailing\n | 0").unwrap();
        assert!(matches!(t, Term::Par(..)));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_term("a.1 |\n  | b.1") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_term("#1.1").is_err());
        assert!(parse_term("w.1").is_err());
        assert!(parse_term("a.1)").is_err());
        assert!(parse_term("").is_err());
    }

    #[test]
    fn duplicate_binders_are_renamed_not_rejected() {
        let t = parse_term("a+(x).1 | b+(x).1").unwrap();
        match t {
            Term::Par(l, r) => match (*l, *r) {
                (Term::Prefix(a, _), Term::Prefix(b, _)) => assert_ne!(a.bound, b.bound),
                _ => panic!(),
            },
            _ => panic!(),
        }
    }

    #[test]
    fn internal_names() {
        let t = parse_term_internal("new #1. (#1+(#2).1 | #1-(#3).1)").unwrap();
        assert!(t.all_names().iter().all(|n| n.is_internal()));
        // sugar binders avoid existing generated names
        let t = parse_term_internal("new #4. #4.1").unwrap();
        assert_eq!(t.all_names().len(), 2);
    }
}
