//! Recursive-descent parser for prenex sentences.
//!
//! ```text
//! sentence    := quant* iff
//! quant       := ("forall" | "exists") IDENT
//! iff         := implies ("<->" implies)*
//! implies     := disjunction ("->" implies)?
//! disjunction := conjunction ("|" conjunction)*
//! conjunction := unary ("&" unary)*
//! unary       := "~" unary | primary
//! primary     := "(" iff ")" | "true" | "false"
//!              | IDENT "(" IDENT ("," IDENT)* ")"
//!              | IDENT "=" IDENT | IDENT "!=" IDENT | IDENT "~" IDENT
//! ```
//!
//! `x ~ y` is sugar for `E(x,y)`.

use crate::error::{Error, Result};
use crate::logic::formula::{Formula, Matrix, Quantifier};
use crate::logic::structure::EDGE;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Eq,
    Neq,
    Tilde,
    And,
    Or,
    Arrow,
    DoubleArrow,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        loop {
            let (tok, at) = lx.next()?;
            let end = tok == Tok::End;
            out.push((tok, at));
            if end {
                return Ok(out);
            }
        }
    }

    fn next(&mut self) -> Result<(Tok, usize)> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        let start = self.pos;
        let mut chars = trimmed.chars();
        let Some(c) = chars.next() else {
            return Ok((Tok::End, start));
        };
        let two = trimmed.get(..2).unwrap_or("");
        let three = trimmed.get(..3).unwrap_or("");
        let (tok, len) = if three == "<->" {
            (Tok::DoubleArrow, 3)
        } else if two == "->" {
            (Tok::Arrow, 2)
        } else if two == "!=" {
            (Tok::Neq, 2)
        } else {
            match c {
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                ',' => (Tok::Comma, 1),
                '=' => (Tok::Eq, 1),
                '~' => (Tok::Tilde, 1),
                '&' => (Tok::And, 1),
                '|' => (Tok::Or, 1),
                c if c.is_alphabetic() || c == '_' => {
                    let len = trimmed
                        .char_indices()
                        .find(|&(_, ch)| !(ch.is_alphanumeric() || ch == '_' || ch == '\''))
                        .map_or(trimmed.len(), |(i, _)| i);
                    (Tok::Ident(trimmed[..len].to_string()), len)
                }
                other => {
                    return Err(Error::syntax(
                        start,
                        format!("unexpected character `{other}`"),
                    ))
                }
            }
        };
        self.pos += len;
        Ok((tok, start))
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(Error::syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(name) if !is_keyword(&name) => {
                self.bump();
                Ok(name)
            }
            _ => Err(Error::syntax(self.pos(), format!("expected {what}"))),
        }
    }

    fn quantifier_here(&self) -> Option<Quantifier> {
        match self.peek() {
            Tok::Ident(w) if w == "forall" => Some(Quantifier::Forall),
            Tok::Ident(w) if w == "exists" => Some(Quantifier::Exists),
            _ => None,
        }
    }

    fn iff(&mut self) -> Result<Matrix> {
        let mut lhs = self.implies()?;
        while *self.peek() == Tok::DoubleArrow {
            self.bump();
            let rhs = self.implies()?;
            lhs = Matrix::And(vec![
                Matrix::implies(lhs.clone(), rhs.clone()),
                Matrix::implies(rhs, lhs),
            ]);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Matrix> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Matrix::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Matrix> {
        let mut parts = vec![self.conjunction()?];
        while *self.peek() == Tok::Or {
            self.bump();
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Matrix::Or(parts)
        })
    }

    fn conjunction(&mut self) -> Result<Matrix> {
        let mut parts = vec![self.unary()?];
        while *self.peek() == Tok::And {
            self.bump();
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Matrix::And(parts)
        })
    }

    fn unary(&mut self) -> Result<Matrix> {
        if *self.peek() == Tok::Tilde {
            self.bump();
            return Ok(Matrix::not(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Matrix> {
        if let Some(q) = self.quantifier_here() {
            return Err(Error::NonPrenex {
                quantifier: q.keyword().to_string(),
                position: self.pos(),
            });
        }
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let inner = self.iff()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(w) if w == "true" || w == "false" => {
                self.bump();
                Ok(Matrix::Const(w == "true"))
            }
            Tok::Ident(_) => {
                let name = self.ident("identifier")?;
                match self.peek() {
                    Tok::LParen => {
                        self.bump();
                        let mut args = vec![self.ident("variable")?];
                        while *self.peek() == Tok::Comma {
                            self.bump();
                            args.push(self.ident("variable")?);
                        }
                        self.expect(Tok::RParen, "`)` closing the argument list")?;
                        Ok(Matrix::Atom { symbol: name, args })
                    }
                    Tok::Eq => {
                        self.bump();
                        let rhs = self.ident("variable after `=`")?;
                        Ok(Matrix::Eq(name, rhs))
                    }
                    Tok::Neq => {
                        self.bump();
                        let rhs = self.ident("variable after `!=`")?;
                        Ok(Matrix::not(Matrix::Eq(name, rhs)))
                    }
                    Tok::Tilde => {
                        self.bump();
                        let rhs = self.ident("variable after `~`")?;
                        Ok(Matrix::Atom {
                            symbol: EDGE.to_string(),
                            args: vec![name, rhs],
                        })
                    }
                    _ => Err(Error::syntax(
                        self.pos(),
                        format!("expected `(`, `=`, `!=` or `~` after `{name}`"),
                    )),
                }
            }
            Tok::End => Err(Error::syntax(self.pos(), "unexpected end of input")),
            _ => Err(Error::syntax(self.pos(), "expected an atom or `(`")),
        }
    }
}

fn is_keyword(w: &str) -> bool {
    matches!(w, "forall" | "exists" | "true" | "false")
}

/// Parses a prenex sentence.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: Lexer::tokens(text)?,
        at: 0,
    };
    let mut prefix = Vec::new();
    while let Some(q) = p.quantifier_here() {
        p.bump();
        let v = p.ident("a variable after the quantifier")?;
        prefix.push((q, v));
    }
    let matrix = p.iff()?;
    if *p.peek() != Tok::End {
        return Err(Error::syntax(p.pos(), "trailing input"));
    }
    Formula::new(prefix, matrix)
}

/// Parses a quantifier-free matrix whose variables are left unchecked.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut p = Parser {
        toks: Lexer::tokens(text)?,
        at: 0,
    };
    let m = p.iff()?;
    if *p.peek() != Tok::End {
        return Err(Error::syntax(p.pos(), "trailing input"));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_negated_loop() {
        let f = parse_formula("forall x ~E(x,x)").unwrap();
        assert_eq!(f.prefix(), &[(Quantifier::Forall, "x".to_string())]);
        assert_eq!(f.matrix(), &Matrix::not(Matrix::adj("x", "x")));
    }

    #[test]
    fn parses_existential_atom() {
        let f = parse_formula("exists x E(x,x)").unwrap();
        assert_eq!(f.pattern().as_str(), "e");
        assert_eq!(f.matrix(), &Matrix::adj("x", "x"));
    }

    #[test]
    fn unbound_variable_is_rejected() {
        assert!(matches!(
            parse_formula("forall x (E(x,y))"),
            Err(Error::UnboundVariable(v)) if v == "y"
        ));
    }

    #[test]
    fn nested_quantifier_is_rejected() {
        assert!(matches!(
            parse_formula("forall x (E(x,x) & exists y E(x,y))"),
            Err(Error::NonPrenex { .. })
        ));
    }

    #[test]
    fn shadowing_is_rejected() {
        assert!(matches!(
            parse_formula("forall x exists x E(x,x)"),
            Err(Error::ShadowedVariable(_))
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_formula("forall x (E(x,x)") {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 16),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_formula("forall x E(x,x) $"),
            Err(Error::Syntax { position: 16, .. })
        ));
    }

    #[test]
    fn graph_sugar_and_implication() {
        let f = parse_formula("forall x forall y (x ~ y -> (y ~ x & x != y))").unwrap();
        let want = Matrix::implies(
            Matrix::adj("x", "y"),
            Matrix::and([Matrix::adj("y", "x"), Matrix::not(Matrix::eq("x", "y"))]),
        );
        assert_eq!(f.matrix(), &want);
        assert_eq!(f.pattern().as_str(), "aa");
    }

    #[test]
    fn implication_is_right_associative() {
        let m = parse_matrix("a ~ b -> b ~ c -> a ~ c").unwrap();
        let want = Matrix::implies(
            Matrix::adj("a", "b"),
            Matrix::implies(Matrix::adj("b", "c"), Matrix::adj("a", "c")),
        );
        assert_eq!(m, want);
    }

    #[test]
    fn biconditional_desugars() {
        let m = parse_matrix("P(x) <-> Q(x)").unwrap();
        let p = Matrix::atom("P", &["x"]);
        let q = Matrix::atom("Q", &["x"]);
        assert_eq!(
            m,
            Matrix::and([Matrix::implies(p.clone(), q.clone()), Matrix::implies(q, p)])
        );
    }

    #[test]
    fn primes_are_identifier_characters() {
        let f = parse_formula("forall x forall x' exists y (x ~ x' -> (x ~ y & x' ~ y))").unwrap();
        assert_eq!(f.pattern().as_str(), "aae");
    }

    #[test]
    fn print_then_parse_is_identity() {
        for text in [
            "forall x ~E(x,x)",
            "exists c forall x exists y (x = c | x ~ c | (x ~ y & y ~ c))",
            "forall x forall y ((x ~ y & ~(x = y)) -> ~(P(x) <-> P(y)))",
            "true",
            "forall x (~~R(x) | false)",
        ] {
            let f = parse_formula(text).unwrap();
            let again = parse_formula(&f.to_string()).unwrap();
            assert_eq!(f, again, "{text} printed as {f}");
        }
    }
}
