//! Recursive descent over `imp := or ("->" imp)?`, `or := and ("|" and)*`,
//! `and := unary ("&" unary)*`, `unary := ("box" | "dia") unary | atom`.

use serde::Serialize;
use thiserror::Error;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("syntax error at {line}:{col}: expected {expected}, found {found}")]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Box,
    Dia,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Box => "`box`".into(),
            Tok::Dia => "`dia`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>, SyntaxError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let ch = chars.next();
            if ch == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            ch
        };
        let tok = match c {
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            '&' => {
                bump(&mut chars);
                Tok::And
            }
            '|' => {
                bump(&mut chars);
                Tok::Or
            }
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            '-' => {
                bump(&mut chars);
                if chars.peek() != Some(&'>') {
                    let found = chars.peek().map_or("end of input".into(), |c| format!("`{c}`"));
                    return Err(SyntaxError { line, col, expected: "`>`".into(), found });
                }
                bump(&mut chars);
                Tok::Arrow
            }
            'a'..='z' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' {
                        word.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                match word.as_str() {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "box" => Tok::Box,
                    "dia" => Tok::Dia,
                    _ => Tok::Ident(word),
                }
            }
            other => {
                return Err(SyntaxError {
                    line,
                    col,
                    expected: "a formula token".into(),
                    found: format!("`{other}`"),
                })
            }
        };
        out.push(Lexed { tok, line: l0, col: c0 });
    }
    out.push(Lexed { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error(&self, expected: &str) -> SyntaxError {
        let t = &self.toks[self.pos];
        SyntaxError { line: t.line, col: t.col, expected: expected.into(), found: t.tok.describe() }
    }

    fn imp(&mut self) -> Result<Formula, SyntaxError> {
        let left = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.pos += 1;
            let right = self.imp()?;
            return Ok(Formula::imp(left, right));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Formula, SyntaxError> {
        let mut left = self.and()?;
        while *self.peek() == Tok::Or {
            self.pos += 1;
            left = Formula::or(left, self.and()?);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula, SyntaxError> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::And {
            self.pos += 1;
            left = Formula::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        let tok = self.peek().clone();
        self.pos += 1;
        match tok {
            Tok::Box => Ok(Formula::boxed(self.unary()?)),
            Tok::Dia => Ok(Formula::dia(self.unary()?)),
            Tok::True => Ok(Formula::Top),
            Tok::False => Ok(Formula::Bot),
            Tok::Ident(v) => Ok(Formula::Var(v)),
            Tok::LParen => {
                let inner = self.imp()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => {
                self.pos -= 1;
                Err(self.error("a variable, `true`, `false`, `box`, `dia` or `(`"))
            }
        }
    }
}

pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.imp()?;
    if *p.peek() != Tok::End {
        return Err(p.error("an operator or end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Formula {
        Formula::var(s)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse("box p & dia q").unwrap(), Formula::and(Formula::boxed(v("p")), Formula::dia(v("q"))));
        assert_eq!(parse("box (p | q)").unwrap(), Formula::boxed(Formula::or(v("p"), v("q"))));
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::imp(v("p"), Formula::imp(v("q"), v("r")))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("a | b & c -> d").unwrap(),
            Formula::imp(Formula::or(v("a"), Formula::and(v("b"), v("c"))), v("d"))
        );
        assert_eq!(parse("a & b & c").unwrap(), Formula::and(Formula::and(v("a"), v("b")), v("c")));
        assert_eq!(parse("dia box x_1").unwrap(), Formula::dia(Formula::boxed(v("x_1"))));
        assert_eq!(parse(" true|false ").unwrap(), Formula::or(Formula::Top, Formula::Bot));
        assert_eq!(parse("boxy").unwrap(), v("boxy"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("p &\n  & q").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        let e = parse("(p | q").unwrap_err();
        assert_eq!(e.expected, "`)`");
        assert_eq!(e.found, "end of input");
        assert_eq!(parse("p - q").unwrap_err().col, 4);
        assert_eq!(parse("P").unwrap_err().col, 1);
        assert!(parse("p q").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["box p & dia q", "(p -> q) -> r", "p -> q -> r", "box (p | q) & r", "a & (b | c)", "(a & b) & c"] {
            let f = parse(text).unwrap();
            assert_eq!(parse(&f.to_string()).unwrap(), f, "{text} printed as {f}");
        }
        assert_eq!(parse("(a & b) & c").unwrap().to_string(), "a & b & c");
    }
}
