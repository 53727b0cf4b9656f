//! The ring-construction DSL: a recursive-descent parser with single-token
//! lookahead, a canonical printer, and evaluation into built rings.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr := term { "x" term }                         left-associative product
//! term := "Z(" int ")" | "GF(" int ")"
//!       | "M(" int "," expr [ "," "s=" int ] ")"
//!       | "T(" int "," expr ")" | "D(" int "," expr ")"
//!       | "Triv(" expr ")" | "FT(" expr "," expr ")"
//!       | "K(" expr "," "s=" int ")"
//!       | "PolyQuot(" expr "," poly ")"
//!       | "JQuot(" expr ")" | "(" expr ")"
//! poly := sum of int | int "x" ["^" int] | "x" ["^" int]
//! ```
//!
//! Error offsets are 1-based byte positions into the input.

use std::fmt;

use crate::construct::{build_with, format_int_poly, BuildOptions, ConstructionSpec};
use crate::error::RingError;
use crate::ring::FiniteRing;

/// Parsed node of the construction DSL, carrying its source span
/// (0-based byte offsets, end exclusive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingExpr {
    pub node: ExprNode,
    pub span: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprNode {
    ZMod(u64),
    GF(u64),
    Prod(Box<RingExpr>, Box<RingExpr>),
    Mat(u64, Box<RingExpr>),
    MatS(u64, Box<RingExpr>, u64),
    Tri(u64, Box<RingExpr>),
    DiagConst(u64, Box<RingExpr>),
    Triv(Box<RingExpr>),
    FTri(Box<RingExpr>, Box<RingExpr>),
    K(Box<RingExpr>, u64),
    PolyQ(Box<RingExpr>, Vec<u64>),
    JQuot(Box<RingExpr>),
}

impl fmt::Display for ExprNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprNode::ZMod(n) => write!(f, "ZMod({n})"),
            ExprNode::GF(q) => write!(f, "GF({q})"),
            ExprNode::Prod(l, r) => write!(f, "Prod({}, {})", l.node, r.node),
            ExprNode::Mat(n, e) => write!(f, "Mat({n}, {})", e.node),
            ExprNode::MatS(n, e, s) => write!(f, "MatS({n}, {}, {s})", e.node),
            ExprNode::Tri(n, e) => write!(f, "Tri({n}, {})", e.node),
            ExprNode::DiagConst(n, e) => write!(f, "DiagConst({n}, {})", e.node),
            ExprNode::Triv(e) => write!(f, "Triv({})", e.node),
            ExprNode::FTri(a, b) => write!(f, "FTri({}, {})", a.node, b.node),
            ExprNode::K(e, s) => write!(f, "K({}, {s})", e.node),
            ExprNode::PolyQ(e, p) => write!(f, "PolyQ({}, {})", e.node, format_int_poly(p)),
            ExprNode::JQuot(e) => write!(f, "JQuot({})", e.node),
        }
    }
}

impl RingExpr {
    /// Canonical DSL form; reparsing it yields an identical AST, and the
    /// built ring adopts it as its name.
    pub fn print(&self) -> String {
        match &self.node {
            ExprNode::ZMod(n) => format!("Z({n})"),
            ExprNode::GF(q) => format!("GF({q})"),
            ExprNode::Prod(l, r) => {
                let left = l.print();
                let right = match r.node {
                    ExprNode::Prod(..) => format!("({})", r.print()),
                    _ => r.print(),
                };
                format!("{left} x {right}")
            }
            ExprNode::Mat(n, e) => format!("M({n}, {})", e.print()),
            ExprNode::MatS(n, e, s) => format!("M({n}, {}, s={s})", e.print()),
            ExprNode::Tri(n, e) => format!("T({n}, {})", e.print()),
            ExprNode::DiagConst(n, e) => format!("D({n}, {})", e.print()),
            ExprNode::Triv(e) => format!("Triv({})", e.print()),
            ExprNode::FTri(a, b) => format!("FT({}, {})", a.print(), b.print()),
            ExprNode::K(e, s) => format!("K({}, s={s})", e.print()),
            ExprNode::PolyQ(e, p) => {
                format!("PolyQuot({}, {})", e.print(), format_int_poly(p))
            }
            ExprNode::JQuot(e) => format!("JQuot({})", e.print()),
        }
    }

    /// Lowers the AST to a construction description. Left-leaning product
    /// chains flatten into one n-ary product so the canonical names agree.
    pub fn to_spec(&self) -> Result<ConstructionSpec, RingError> {
        let int = |v: u64| -> Result<usize, RingError> {
            usize::try_from(v).map_err(|_| RingError::OrderTooLarge {
                order: v,
                limit: crate::ring::MAX_RING_ORDER,
            })
        };
        Ok(match &self.node {
            ExprNode::ZMod(n) => ConstructionSpec::Zmod(int(*n)?),
            ExprNode::GF(q) => ConstructionSpec::Gf(int(*q)?),
            ExprNode::Prod(l, r) => {
                let left = l.to_spec()?;
                let right = r.to_spec()?;
                let mut parts = match (&l.node, left) {
                    (ExprNode::Prod(..), ConstructionSpec::Product(parts)) => parts,
                    (_, other) => vec![other],
                };
                parts.push(right);
                ConstructionSpec::Product(parts)
            }
            ExprNode::Mat(n, e) => ConstructionSpec::Matrix {
                n: int(*n)?,
                base: Box::new(e.to_spec()?),
            },
            ExprNode::MatS(n, e, s) => ConstructionSpec::MatrixS {
                n: int(*n)?,
                base: Box::new(e.to_spec()?),
                s: int(*s)?,
            },
            ExprNode::Tri(n, e) => ConstructionSpec::Triangular {
                n: int(*n)?,
                base: Box::new(e.to_spec()?),
            },
            ExprNode::DiagConst(n, e) => ConstructionSpec::ConstDiag {
                n: int(*n)?,
                base: Box::new(e.to_spec()?),
            },
            ExprNode::Triv(e) => ConstructionSpec::TrivExt(Box::new(e.to_spec()?)),
            ExprNode::FTri(a, b) => {
                ConstructionSpec::FormalTri(Box::new(a.to_spec()?), Box::new(b.to_spec()?))
            }
            ExprNode::K(e, s) => ConstructionSpec::Ks {
                base: Box::new(e.to_spec()?),
                s: int(*s)?,
            },
            ExprNode::PolyQ(e, p) => ConstructionSpec::PolyQuot {
                base: Box::new(e.to_spec()?),
                modulus: p.clone(),
            },
            ExprNode::JQuot(e) => ConstructionSpec::JQuot(Box::new(e.to_spec()?)),
        })
    }
}

/// Syntax error with a 1-based byte offset into the input.
#[derive(Debug, Clone, thiserror::Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok<'a> {
    Kw(&'a str),
    Int(u64),
    Punct(char),
    Eof,
}

impl fmt::Display for Tok<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Kw(k) => write!(f, "'{k}'"),
            Tok::Int(v) => write!(f, "integer {v}"),
            Tok::Punct(c) => write!(f, "'{c}'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

const KEYWORDS: [&str; 12] = [
    "PolyQuot", "JQuot", "Triv", "GF", "FT", "Z", "M", "T", "D", "K", "s", "x",
];

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
    }

    /// Next token, its 0-based start offset, and its byte length, without
    /// consuming.
    fn peek_full(&mut self) -> Result<(Tok<'a>, usize, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let Some(c) = rest.chars().next() else {
            return Ok((Tok::Eof, start, 0));
        };
        if c.is_ascii_digit() {
            let len = rest.chars().take_while(|c| c.is_ascii_digit()).count();
            let value = rest[..len].parse::<u64>().map_err(|_| ParseError {
                offset: start + 1,
                message: format!("integer literal '{}' is out of range", &rest[..len]),
            })?;
            return Ok((Tok::Int(value), start, len));
        }
        if "(),=^+".contains(c) {
            return Ok((Tok::Punct(c), start, 1));
        }
        if c.is_ascii_alphabetic() {
            for kw in KEYWORDS {
                if rest.starts_with(kw) {
                    return Ok((Tok::Kw(kw), start, kw.len()));
                }
            }
        }
        Err(ParseError {
            offset: start + 1,
            message: format!("unexpected character '{c}'"),
        })
    }

    fn peek(&mut self) -> Result<(Tok<'a>, usize), ParseError> {
        let (tok, at, _) = self.peek_full()?;
        Ok((tok, at))
    }

    /// Consumes the token most recently returned by `peek`/`peek_full`.
    fn bump(&mut self) {
        if let Ok((_, at, len)) = self.peek_full() {
            self.pos = at + len;
        }
    }

    fn next(&mut self) -> Result<(Tok<'a>, usize), ParseError> {
        let (tok, at, len) = self.peek_full()?;
        self.pos = at + len;
        Ok((tok, at))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
}

impl<'a> Parser<'a> {
    fn err(&self, at: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: at + 1,
            message: message.into(),
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<usize, ParseError> {
        let (tok, at) = self.lexer.next()?;
        if tok == Tok::Punct(c) {
            Ok(at)
        } else {
            Err(self.err(at, format!("expected '{c}', found {tok}")))
        }
    }

    fn expect_int(&mut self) -> Result<u64, ParseError> {
        let (tok, at) = self.lexer.next()?;
        match tok {
            Tok::Int(v) => Ok(v),
            other => Err(self.err(at, format!("expected an integer, found {other}"))),
        }
    }

    fn expect_s_literal(&mut self) -> Result<u64, ParseError> {
        let (tok, at) = self.lexer.next()?;
        if tok != Tok::Kw("s") {
            return Err(self.err(at, format!("expected 's=', found {tok}")));
        }
        self.expect_punct('=')?;
        self.expect_int()
    }

    fn parse_expr(&mut self) -> Result<RingExpr, ParseError> {
        let mut left = self.parse_term()?;
        loop {
            let (tok, _) = self.lexer.peek()?;
            if tok != Tok::Kw("x") {
                return Ok(left);
            }
            self.lexer.bump();
            let right = self.parse_term()?;
            let span = (left.span.0, right.span.1);
            left = RingExpr {
                node: ExprNode::Prod(Box::new(left), Box::new(right)),
                span,
            };
        }
    }

    fn parse_term(&mut self) -> Result<RingExpr, ParseError> {
        let (tok, start) = self.lexer.next()?;
        let node = match tok {
            Tok::Punct('(') => {
                let inner = self.parse_expr()?;
                self.expect_punct(')')?;
                return Ok(RingExpr {
                    span: (start, self.lexer.pos),
                    node: inner.node,
                });
            }
            Tok::Kw("Z") => {
                self.expect_punct('(')?;
                let n = self.expect_int()?;
                self.expect_punct(')')?;
                ExprNode::ZMod(n)
            }
            Tok::Kw("GF") => {
                self.expect_punct('(')?;
                let q = self.expect_int()?;
                self.expect_punct(')')?;
                ExprNode::GF(q)
            }
            Tok::Kw("M") => {
                self.expect_punct('(')?;
                let n = self.expect_int()?;
                self.expect_punct(',')?;
                let base = self.parse_expr()?;
                let (next, at) = self.lexer.next()?;
                match next {
                    Tok::Punct(')') => ExprNode::Mat(n, Box::new(base)),
                    Tok::Punct(',') => {
                        let s = self.expect_s_literal()?;
                        self.expect_punct(')')?;
                        ExprNode::MatS(n, Box::new(base), s)
                    }
                    other => return Err(self.err(at, format!("expected ',' or ')', found {other}"))),
                }
            }
            Tok::Kw("T") | Tok::Kw("D") => {
                self.expect_punct('(')?;
                let n = self.expect_int()?;
                self.expect_punct(',')?;
                let base = self.parse_expr()?;
                self.expect_punct(')')?;
                if tok == Tok::Kw("T") {
                    ExprNode::Tri(n, Box::new(base))
                } else {
                    ExprNode::DiagConst(n, Box::new(base))
                }
            }
            Tok::Kw("Triv") => {
                self.expect_punct('(')?;
                let base = self.parse_expr()?;
                self.expect_punct(')')?;
                ExprNode::Triv(Box::new(base))
            }
            Tok::Kw("FT") => {
                self.expect_punct('(')?;
                let a = self.parse_expr()?;
                self.expect_punct(',')?;
                let b = self.parse_expr()?;
                self.expect_punct(')')?;
                ExprNode::FTri(Box::new(a), Box::new(b))
            }
            Tok::Kw("K") => {
                self.expect_punct('(')?;
                let base = self.parse_expr()?;
                self.expect_punct(',')?;
                let s = self.expect_s_literal()?;
                self.expect_punct(')')?;
                ExprNode::K(Box::new(base), s)
            }
            Tok::Kw("PolyQuot") => {
                self.expect_punct('(')?;
                let base = self.parse_expr()?;
                self.expect_punct(',')?;
                let poly = self.parse_poly()?;
                self.expect_punct(')')?;
                ExprNode::PolyQ(Box::new(base), poly)
            }
            Tok::Kw("JQuot") => {
                self.expect_punct('(')?;
                let base = self.parse_expr()?;
                self.expect_punct(')')?;
                ExprNode::JQuot(Box::new(base))
            }
            other => {
                return Err(self.err(start, format!("expected a ring expression, found {other}")))
            }
        };
        Ok(RingExpr {
            node,
            span: (start, self.lexer.pos),
        })
    }

    /// A sum of monomials in x with nonnegative integer coefficients;
    /// repeated degrees accumulate.
    fn parse_poly(&mut self) -> Result<Vec<u64>, ParseError> {
        const MAX_DEGREE: u64 = 64;
        let mut coeffs: Vec<u64> = Vec::new();
        loop {
            let (tok, at) = self.lexer.next()?;
            let (coeff, has_x) = match tok {
                Tok::Int(c) => {
                    let (next, _) = self.lexer.peek()?;
                    if next == Tok::Kw("x") {
                        self.lexer.bump();
                        (c, true)
                    } else {
                        (c, false)
                    }
                }
                Tok::Kw("x") => (1, true),
                other => {
                    return Err(self.err(at, format!("expected a polynomial term, found {other}")))
                }
            };
            let degree = if has_x {
                let (next, _) = self.lexer.peek()?;
                if next == Tok::Punct('^') {
                    self.lexer.bump();
                    let (dtok, dat) = self.lexer.next()?;
                    match dtok {
                        Tok::Int(d) if d <= MAX_DEGREE => d,
                        Tok::Int(d) => {
                            return Err(
                                self.err(dat, format!("polynomial degree {d} is unreasonably large"))
                            )
                        }
                        other => {
                            return Err(self.err(dat, format!("expected an exponent, found {other}")))
                        }
                    }
                } else {
                    1
                }
            } else {
                0
            };
            let degree = degree as usize;
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, 0);
            }
            coeffs[degree] = coeffs[degree].saturating_add(coeff);
            let (next, _) = self.lexer.peek()?;
            if next == Tok::Punct('+') {
                self.lexer.bump();
            } else {
                return Ok(coeffs);
            }
        }
    }
}

/// Parses a DSL expression, requiring the whole input to be consumed.
pub fn parse(text: &str) -> Result<RingExpr, ParseError> {
    let mut parser = Parser {
        lexer: Lexer::new(text),
    };
    let expr = parser.parse_expr()?;
    let (tok, at) = parser.lexer.peek()?;
    if tok != Tok::Eof {
        return Err(parser.err(at, format!("unexpected trailing {tok}")));
    }
    Ok(expr)
}

/// Evaluates a parsed expression under the given limits. The ring's name is
/// the canonical printed form of the expression.
pub fn eval_with(expr: &RingExpr, opts: &BuildOptions) -> Result<FiniteRing, RingError> {
    let spec = expr.to_spec()?;
    let ring = build_with(&spec, opts)?;
    debug_assert_eq!(ring.name(), expr.print());
    Ok(ring)
}

/// Evaluates under the default library limits.
pub fn eval(expr: &RingExpr) -> Result<FiniteRing, RingError> {
    eval_with(expr, &BuildOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radicals::jacobson_radical;

    fn parse_ok(text: &str) -> RingExpr {
        parse(text).unwrap_or_else(|e| panic!("parse of {text:?} failed: {e}"))
    }

    #[test]
    fn parses_matrix_expression() {
        let e = parse_ok("M(2, Z(2))");
        assert_eq!(e.node.to_string(), "Mat(2, ZMod(2))");
    }

    #[test]
    fn product_is_left_associative() {
        let e = parse_ok("Z(4) x Z(2) x Z(2)");
        assert_eq!(
            e.node.to_string(),
            "Prod(Prod(ZMod(4), ZMod(2)), ZMod(2))"
        );
        // whitespace is insignificant
        let tight = parse_ok("Z(4)xZ(2)xZ(2)");
        assert_eq!(tight.node, e.node);
    }

    #[test]
    fn parses_multiplier_forms() {
        assert_eq!(parse_ok("K(Z(4), s=2)").node.to_string(), "K(ZMod(4), 2)");
        assert_eq!(
            parse_ok("M(2, Z(4), s=2)").node.to_string(),
            "MatS(2, ZMod(4), 2)"
        );
    }

    #[test]
    fn zero_arity_matrix_parses_but_fails_eval() {
        let e = parse_ok("M(0, Z(2))");
        assert!(matches!(eval(&e), Err(RingError::BadArity(0))));
    }

    #[test]
    fn error_offset_matches_spec_example() {
        let err = parse("M(2 Z(2))").unwrap_err();
        assert_eq!(err.offset, 5);
    }

    #[test]
    fn poly_literals() {
        let e = parse_ok("PolyQuot(Z(2), x^2+x+1)");
        match &e.node {
            ExprNode::PolyQ(_, coeffs) => assert_eq!(coeffs, &vec![1, 1, 1]),
            other => panic!("unexpected node {other}"),
        }
        let e = parse_ok("PolyQuot(Z(3), x^2+2x+2)");
        match &e.node {
            ExprNode::PolyQ(_, coeffs) => assert_eq!(coeffs, &vec![2, 2, 1]),
            other => panic!("unexpected node {other}"),
        }
    }

    #[test]
    fn print_reparses_identically() {
        for text in [
            "Z(4)",
            "GF(9)",
            "Z(4) x Z(2) x Z(2)",
            "M(2, Z(4), s=2)",
            "K(Z(8), s=2)",
            "T(3, Z(2))",
            "D(4, Z(2))",
            "Triv(Z(9))",
            "FT(Z(2), Z(3))",
            "PolyQuot(Z(4), x^2)",
            "JQuot(M(2, Z(4)))",
            "(Z(2) x Z(3)) x Z(4)",
            "Z(2) x (Z(3) x Z(4))",
        ] {
            let e = parse_ok(text);
            let printed = e.print();
            let reparsed = parse_ok(&printed);
            assert_eq!(reparsed.node, e.node, "round trip of {text:?} via {printed:?}");
        }
    }

    #[test]
    fn eval_examples() {
        let gf4 = eval(&parse_ok("GF(4)")).unwrap();
        assert_eq!(gf4.order(), 4);
        assert_eq!(jacobson_radical(&gf4).members(), &[0]);

        let q = eval(&parse_ok("JQuot(Z(9))")).unwrap();
        assert_eq!(q.order(), 3);
        assert_eq!(q.name(), "JQuot(Z(9))");

        assert!(matches!(
            eval(&parse_ok("Z(1)")),
            Err(RingError::OrderTooSmall(1))
        ));
    }

    #[test]
    fn eval_names_are_canonical_prints() {
        for text in ["M(2,GF(2))", "Z(2) x Z(9)", "K(Z(4),s=2)"] {
            let e = parse_ok(text);
            let ring = eval(&e).unwrap();
            assert_eq!(ring.name(), e.print());
        }
    }
}
