//! Text grammar for knot expressions:
//!
//! ```text
//! expr := "unknot"
//!       | "pretzel" "(" int ("," int)* ")"
//!       | "torus" "(" "2" "," int ")"
//!       | "twist" "(" int ")"
//!       | "matrix" "(" "[" [row ("," row)*] "]" ")"    row := "[" [int ("," int)*] "]"
//!       | "sum" "(" expr "," expr ")"
//!       | "rev" "(" expr ")" | "inv" "(" expr ")" | "mirror" "(" expr ")"
//! ```
//!
//! Whitespace-insensitive; integers may be negative. Constructor
//! parameters are validated during parsing, so a returned tree always
//! evaluates to a valid Seifert matrix.

use crate::expr::KnotExpr;
use crate::seifert::SeifertMatrix;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken { expected: Vec<String>, found: String },
    Semantic(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at {}:{}: ", self.line, self.col)?;
        match &self.kind {
            ParseErrorKind::UnexpectedToken { expected, found } => {
                write!(f, "expected {}, found {found}", expected.join(" or "))
            }
            ParseErrorKind::Semantic(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

struct Lexer {
    tokens: Vec<(Tok, usize, usize)>,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let bump = |chars: &mut std::iter::Peekable<std::str::Chars>, line: &mut usize, col: &mut usize| {
            let c = chars.next().unwrap();
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars, &mut line, &mut col);
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut ident = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    ident.push(bump(&mut chars, &mut line, &mut col));
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(ident), tline, tcol));
            continue;
        }
        if c.is_ascii_digit() || c == '-' {
            let mut digits = String::new();
            digits.push(bump(&mut chars, &mut line, &mut col));
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    digits.push(bump(&mut chars, &mut line, &mut col));
                } else {
                    break;
                }
            }
            let n: i64 = digits.parse().map_err(|_| ParseError {
                line: tline,
                col: tcol,
                kind: ParseErrorKind::Semantic(format!("bad integer `{digits}`")),
            })?;
            out.push((Tok::Int(n), tline, tcol));
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    kind: ParseErrorKind::UnexpectedToken {
                        expected: vec!["a token".to_string()],
                        found: format!("`{other}`"),
                    },
                })
            }
        };
        bump(&mut chars, &mut line, &mut col);
        out.push((tok, tline, tcol));
    }
    out.push((Tok::Eof, line, col));
    Ok(out)
}

impl Lexer {
    fn peek(&self) -> &(Tok, usize, usize) {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn next(&mut self) -> (Tok, usize, usize) {
        let t = self.tokens[self.pos.min(self.tokens.len() - 1)].clone();
        if self.pos < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok, name: &str) -> Result<(usize, usize), ParseError> {
        let (tok, line, col) = self.next();
        if &tok == want {
            Ok((line, col))
        } else {
            Err(ParseError {
                line,
                col,
                kind: ParseErrorKind::UnexpectedToken {
                    expected: vec![name.to_string()],
                    found: tok.to_string(),
                },
            })
        }
    }

    fn expect_int(&mut self) -> Result<(i64, usize, usize), ParseError> {
        let (tok, line, col) = self.next();
        match tok {
            Tok::Int(n) => Ok((n, line, col)),
            other => Err(ParseError {
                line,
                col,
                kind: ParseErrorKind::UnexpectedToken {
                    expected: vec!["an integer".to_string()],
                    found: other.to_string(),
                },
            }),
        }
    }
}

/// Parse a knot expression; errors carry line/column positions and either
/// the expected-token set or the constructor validation message.
pub fn parse_expr(text: &str) -> Result<KnotExpr, ParseError> {
    let mut lex = Lexer {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let expr = parse_node(&mut lex)?;
    let (tok, line, col) = lex.next();
    if tok != Tok::Eof {
        return Err(ParseError {
            line,
            col,
            kind: ParseErrorKind::UnexpectedToken {
                expected: vec!["end of input".to_string()],
                found: tok.to_string(),
            },
        });
    }
    Ok(expr)
}

fn semantic(line: usize, col: usize, msg: impl fmt::Display) -> ParseError {
    ParseError {
        line,
        col,
        kind: ParseErrorKind::Semantic(msg.to_string()),
    }
}

fn parse_node(lex: &mut Lexer) -> Result<KnotExpr, ParseError> {
    let (tok, line, col) = lex.next();
    let name = match tok {
        Tok::Ident(s) => s,
        other => {
            return Err(ParseError {
                line,
                col,
                kind: ParseErrorKind::UnexpectedToken {
                    expected: vec![
                        "`unknot`".to_string(),
                        "`pretzel`".to_string(),
                        "`torus`".to_string(),
                        "`twist`".to_string(),
                        "`matrix`".to_string(),
                        "`sum`".to_string(),
                        "`rev`".to_string(),
                        "`inv`".to_string(),
                        "`mirror`".to_string(),
                    ],
                    found: other.to_string(),
                },
            })
        }
    };
    match name.as_str() {
        "unknot" => Ok(KnotExpr::Unknot),
        "pretzel" => {
            lex.expect(&Tok::LParen, "`(`")?;
            let mut params = vec![lex.expect_int()?.0];
            while lex.peek().0 == Tok::Comma {
                lex.next();
                params.push(lex.expect_int()?.0);
            }
            lex.expect(&Tok::RParen, "`)`")?;
            SeifertMatrix::pretzel(&params).map_err(|e| semantic(line, col, e))?;
            Ok(KnotExpr::Pretzel(params))
        }
        "torus" => {
            lex.expect(&Tok::LParen, "`(`")?;
            let (two, l2, c2) = lex.expect_int()?;
            if two != 2 {
                return Err(semantic(l2, c2, "only torus(2, q) is supported"));
            }
            lex.expect(&Tok::Comma, "`,`")?;
            let (q, _, _) = lex.expect_int()?;
            lex.expect(&Tok::RParen, "`)`")?;
            SeifertMatrix::torus2(q).map_err(|e| semantic(line, col, e))?;
            Ok(KnotExpr::Torus2(q))
        }
        "twist" => {
            lex.expect(&Tok::LParen, "`(`")?;
            let (m, _, _) = lex.expect_int()?;
            lex.expect(&Tok::RParen, "`)`")?;
            SeifertMatrix::twist(m).map_err(|e| semantic(line, col, e))?;
            Ok(KnotExpr::Twist(m))
        }
        "matrix" => {
            lex.expect(&Tok::LParen, "`(`")?;
            lex.expect(&Tok::LBracket, "`[`")?;
            let mut rows: Vec<Vec<i64>> = Vec::new();
            if lex.peek().0 == Tok::RBracket {
                lex.next();
            } else {
                loop {
                    lex.expect(&Tok::LBracket, "`[`")?;
                    let mut row = Vec::new();
                    if lex.peek().0 == Tok::RBracket {
                        lex.next();
                    } else {
                        loop {
                            row.push(lex.expect_int()?.0);
                            let (tok, l, c) = lex.next();
                            match tok {
                                Tok::Comma => continue,
                                Tok::RBracket => break,
                                other => {
                                    return Err(ParseError {
                                        line: l,
                                        col: c,
                                        kind: ParseErrorKind::UnexpectedToken {
                                            expected: vec!["`,`".to_string(), "`]`".to_string()],
                                            found: other.to_string(),
                                        },
                                    })
                                }
                            }
                        }
                    }
                    rows.push(row);
                    let (tok, l, c) = lex.next();
                    match tok {
                        Tok::Comma => continue,
                        Tok::RBracket => break,
                        other => {
                            return Err(ParseError {
                                line: l,
                                col: c,
                                kind: ParseErrorKind::UnexpectedToken {
                                    expected: vec!["`,`".to_string(), "`]`".to_string()],
                                    found: other.to_string(),
                                },
                            })
                        }
                    }
                }
            }
            lex.expect(&Tok::RParen, "`)`")?;
            let m = SeifertMatrix::validate(rows).map_err(|e| semantic(line, col, e))?;
            Ok(KnotExpr::Matrix(m))
        }
        "sum" => {
            lex.expect(&Tok::LParen, "`(`")?;
            let a = parse_node(lex)?;
            lex.expect(&Tok::Comma, "`,`")?;
            let b = parse_node(lex)?;
            lex.expect(&Tok::RParen, "`)`")?;
            Ok(KnotExpr::sum(a, b))
        }
        "rev" | "inv" | "mirror" => {
            lex.expect(&Tok::LParen, "`(`")?;
            let inner = parse_node(lex)?;
            lex.expect(&Tok::RParen, "`)`")?;
            Ok(match name.as_str() {
                "rev" => KnotExpr::reverse(inner),
                "inv" => KnotExpr::inverse(inner),
                _ => KnotExpr::mirror(inner),
            })
        }
        other => Err(ParseError {
            line,
            col,
            kind: ParseErrorKind::UnexpectedToken {
                expected: vec![
                    "`unknot`".to_string(),
                    "`pretzel`".to_string(),
                    "`torus`".to_string(),
                    "`twist`".to_string(),
                    "`matrix`".to_string(),
                    "`sum`".to_string(),
                    "`rev`".to_string(),
                    "`inv`".to_string(),
                    "`mirror`".to_string(),
                ],
                found: format!("`{other}`"),
            },
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{random_expr, SmallRng};

    #[test]
    fn parse_examples() {
        assert_eq!(parse_expr("pretzel(3,5,7)").unwrap(), KnotExpr::Pretzel(vec![3, 5, 7]));
        assert_eq!(
            parse_expr("sum(pretzel(1,1,1), inv(rev(pretzel(1,1,1))))").unwrap(),
            KnotExpr::Pretzel(vec![1, 1, 1]).sum_with_inverse_reverse()
        );
        assert_eq!(parse_expr("  unknot  ").unwrap(), KnotExpr::Unknot);
        assert_eq!(parse_expr("torus( 2 , 7 )").unwrap(), KnotExpr::Torus2(7));
        assert_eq!(
            parse_expr("matrix([[-1,1],[0,-1]])").unwrap(),
            KnotExpr::Matrix(SeifertMatrix::torus2(3).unwrap())
        );
        assert_eq!(parse_expr("matrix([])").unwrap().eval().unwrap().dim(), 0);
    }

    #[test]
    fn semantic_errors_carry_positions() {
        let err = parse_expr("pretzel(2,3)").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Semantic(_)));
        assert_eq!((err.line, err.col), (1, 1));

        let err = parse_expr("sum(unknot,\n  torus(2,4))").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Semantic(_)));
        assert_eq!(err.line, 2);

        let err = parse_expr("twist(0)").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Semantic(_)));
    }

    #[test]
    fn token_errors_report_expectations() {
        let err = parse_expr("pretzel(3,5").unwrap_err();
        match err.kind {
            ParseErrorKind::UnexpectedToken { expected, found } => {
                assert!(expected.iter().any(|e| e.contains(')')));
                assert_eq!(found, "end of input");
            }
            other => panic!("expected token error, got {other:?}"),
        }
        assert!(parse_expr("pretzel(3,5,7) trailing").is_err());
        assert!(parse_expr("spiral(3)").is_err());
        assert!(parse_expr("").is_err());
    }

    #[test]
    fn print_parse_roundtrip() {
        let mut rng = SmallRng::new(314159);
        for _ in 0..60 {
            let expr = random_expr(&mut rng, 4);
            let text = expr.to_string();
            assert_eq!(parse_expr(&text).unwrap(), expr, "roundtrip failed on {text}");
        }
    }
}
