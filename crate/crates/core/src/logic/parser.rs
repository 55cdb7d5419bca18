//! Recursive-descent parser for the ASCII proposition syntax.

use super::Proposition;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    Xor,
    Implies,
    Possibly,
    Necessarily,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> &'static str {
        match self {
            Token::Ident(_) => "atom",
            Token::Not => "`~`",
            Token::And => "`&`",
            Token::Or => "`|`",
            Token::Xor => "`^`",
            Token::Implies => "`->`",
            Token::Possibly => "`<>`",
            Token::Necessarily => "`[]`",
            Token::LParen => "`(`",
            Token::RParen => "`)`",
        }
    }
}

/// Tokens paired with their 1-based starting column.
fn lex(text: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let col = i + 1;
        match bytes[i] {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'~' => {
                tokens.push((Token::Not, col));
                i += 1;
            }
            b'&' => {
                tokens.push((Token::And, col));
                i += 1;
            }
            b'|' => {
                tokens.push((Token::Or, col));
                i += 1;
            }
            b'^' => {
                tokens.push((Token::Xor, col));
                i += 1;
            }
            b'(' => {
                tokens.push((Token::LParen, col));
                i += 1;
            }
            b')' => {
                tokens.push((Token::RParen, col));
                i += 1;
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    tokens.push((Token::Implies, col));
                    i += 2;
                } else {
                    return Err(Error::Syntax {
                        column: col,
                        message: "expected `->`".into(),
                    });
                }
            }
            b'<' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    tokens.push((Token::Possibly, col));
                    i += 2;
                } else {
                    return Err(Error::Syntax {
                        column: col,
                        message: "expected `<>`".into(),
                    });
                }
            }
            b'[' => {
                if bytes.get(i + 1) == Some(&b']') {
                    tokens.push((Token::Necessarily, col));
                    i += 2;
                } else {
                    return Err(Error::Syntax {
                        column: col,
                        message: "expected `[]`".into(),
                    });
                }
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                tokens.push((Token::Ident(text[start..i].to_string()), col));
            }
            c => {
                return Err(Error::Syntax {
                    column: col,
                    message: format!("unexpected character `{}`", c as char),
                });
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|&(_, c)| c)
            .unwrap_or(self.end_column)
    }

    fn advance(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &str) -> Error {
        let message = match self.peek() {
            Some(tok) => format!("expected {expected}, found {}", tok.describe()),
            None => format!("expected {expected}, found end of input"),
        };
        Error::Syntax {
            column: self.column(),
            message,
        }
    }

    // implies is right-associative and binds loosest
    fn implies(&mut self) -> Result<Proposition> {
        let lhs = self.or()?;
        if self.peek() == Some(&Token::Implies) {
            self.advance();
            let rhs = self.implies()?;
            return Ok(super::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Proposition> {
        let mut lhs = self.xor()?;
        while self.peek() == Some(&Token::Or) {
            self.advance();
            lhs = super::or(lhs, self.xor()?);
        }
        Ok(lhs)
    }

    fn xor(&mut self) -> Result<Proposition> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Token::Xor) {
            self.advance();
            lhs = super::xor(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Proposition> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Token::And) {
            self.advance();
            lhs = super::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Proposition> {
        match self.peek() {
            Some(Token::Not) => {
                self.advance();
                Ok(super::not(self.unary()?))
            }
            Some(Token::Possibly) => {
                self.advance();
                Ok(super::possibly(self.unary()?))
            }
            Some(Token::Necessarily) => {
                self.advance();
                Ok(super::necessarily(self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Proposition> {
        match self.peek() {
            Some(Token::Ident(_)) => {
                let Some(Token::Ident(label)) = self.advance() else {
                    unreachable!()
                };
                Ok(Proposition::Atom(label))
            }
            Some(Token::LParen) => {
                self.advance();
                let inner = self.implies()?;
                if self.peek() == Some(&Token::RParen) {
                    self.advance();
                    Ok(inner)
                } else {
                    Err(self.error("`)`"))
                }
            }
            _ => Err(self.error("an atom, `(`, or a unary operator")),
        }
    }
}

/// Parse a proposition. Every identifier becomes a plain `Atom`; binding
/// identifiers to a frame's declared (and undecided) atoms happens when the
/// formula is evaluated against a model.
pub fn parse(text: &str) -> Result<Proposition> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end_column: text.len() + 1,
    };
    let prop = parser.implies()?;
    if parser.peek().is_some() {
        return Err(parser.error("end of input"));
    }
    Ok(prop)
}

#[cfg(test)]
mod tests {
    use super::super::{and, atom, implies, necessarily, not, or, possibly, xor};
    use super::*;

    #[test]
    fn parses_xor() {
        assert_eq!(parse("a1 ^ a2").unwrap(), xor(atom("a1"), atom("a2")));
    }

    #[test]
    fn parses_exclusive_disjunction_expansion() {
        let expected = and(
            or(atom("a1"), atom("a2")),
            or(not(atom("a1")), not(atom("a2"))),
        );
        assert_eq!(parse("(a1 | a2) & (~a1 | ~a2)").unwrap(), expected);
    }

    #[test]
    fn reports_missing_operand_column() {
        let err = parse("a1 |").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                column: 5,
                message: "expected an atom, `(`, or a unary operator, found end of input".into()
            }
        );
    }

    #[test]
    fn precedence_orders_binary_operators() {
        // loosest to tightest: -> | ^ &
        assert_eq!(
            parse("a -> b | c ^ d & e").unwrap(),
            implies(
                atom("a"),
                or(atom("b"), xor(atom("c"), and(atom("d"), atom("e"))))
            )
        );
    }

    #[test]
    fn or_chain_is_left_associative() {
        assert_eq!(
            parse("a | b | c").unwrap(),
            or(or(atom("a"), atom("b")), atom("c"))
        );
    }

    #[test]
    fn implies_chain_is_right_associative() {
        assert_eq!(
            parse("a -> b -> c").unwrap(),
            implies(atom("a"), implies(atom("b"), atom("c")))
        );
    }

    #[test]
    fn modal_prefixes_stack() {
        assert_eq!(
            parse("[]<>~a").unwrap(),
            necessarily(possibly(not(atom("a"))))
        );
        assert_eq!(parse("<> pi_hc").unwrap(), possibly(atom("pi_hc")));
    }

    #[test]
    fn rejects_bad_characters_with_position() {
        let err = parse("a1 ? a2").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                column: 4,
                message: "unexpected character `?`".into()
            }
        );
    }

    #[test]
    fn rejects_unbalanced_parens() {
        let err = parse("(a1 | a2").unwrap_err();
        assert!(matches!(err, Error::Syntax { column: 9, .. }));
    }

    #[test]
    fn rejects_trailing_tokens() {
        let err = parse("a1 a2").unwrap_err();
        assert!(matches!(err, Error::Syntax { column: 4, .. }));
    }

    #[test]
    fn rejects_lone_dash_and_bracket() {
        assert!(matches!(parse("a - b"), Err(Error::Syntax { column: 3, .. })));
        assert!(matches!(parse("[a]"), Err(Error::Syntax { column: 1, .. })));
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(parse("a1^a2").unwrap(), parse("  a1   ^\ta2 ").unwrap());
    }
}
