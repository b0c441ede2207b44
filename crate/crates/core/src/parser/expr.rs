use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::multivector::CoordinateChart;
use crate::poly::Polynomial;
use crate::Rational;

pub const MAX_DEPTH: usize = 256;
pub const MAX_EXPONENT: u32 = 64;
pub const MAX_TERMS: usize = 20_000;
pub const MAX_DEGREE: u32 = 128;
/// Upper bound on term pairs visited by a single product.
const MAX_PRODUCT_WORK: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownIdentifier(String),
    DivisionByZero,
    DivisionByNonLiteral,
    MalformedRational(String),
    UnbalancedParenthesis,
    UnexpectedToken(String),
    UnexpectedEnd,
    LimitExceeded(String),
}

impl ParseErrorKind {
    /// Stable snake_case name used in fixtures and machine output.
    pub fn class(&self) -> &'static str {
        match self {
            ParseErrorKind::UnknownIdentifier(_) => "unknown_identifier",
            ParseErrorKind::DivisionByZero => "division_by_zero",
            ParseErrorKind::DivisionByNonLiteral => "division_by_non_literal",
            ParseErrorKind::MalformedRational(_) => "malformed_rational",
            ParseErrorKind::UnbalancedParenthesis => "unbalanced_parenthesis",
            ParseErrorKind::UnexpectedToken(_) => "unexpected_token",
            ParseErrorKind::UnexpectedEnd => "unexpected_end",
            ParseErrorKind::LimitExceeded(_) => "limit_exceeded",
        }
    }
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnknownIdentifier(name) => write!(f, "unknown identifier '{name}'"),
            ParseErrorKind::DivisionByZero => f.write_str("division by zero"),
            ParseErrorKind::DivisionByNonLiteral => {
                f.write_str("division by non-literal (only constant divisors are allowed)")
            }
            ParseErrorKind::MalformedRational(text) => write!(f, "malformed rational '{text}'"),
            ParseErrorKind::UnbalancedParenthesis => f.write_str("unbalanced parenthesis"),
            ParseErrorKind::UnexpectedToken(tok) => write!(f, "unexpected token '{tok}'"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of expression"),
            ParseErrorKind::LimitExceeded(what) => write!(f, "limit exceeded: {what}"),
        }
    }
}

/// Error with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.kind)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
    End,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Num(s) | Tok::Ident(s) => s.clone(),
            Tok::Op(c) => c.to_string(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn tokenize(text: &str, line0: usize, col0: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (line0, col0);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (is_ident_char(chars[i]) || chars[i] == '.') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            if !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseError { kind: ParseErrorKind::MalformedRational(s), line: tl, column: tc });
            }
            out.push(Token { tok: Tok::Num(s), line: tl, column: tc });
            continue;
        }
        if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            col += i - start;
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: tl, column: tc });
            continue;
        }
        if "+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Op(c), line: tl, column: tc });
            col += 1;
            i += 1;
            continue;
        }
        return Err(ParseError { kind: ParseErrorKind::UnexpectedToken(c.to_string()), line: tl, column: tc });
    }
    out.push(Token { tok: Tok::End, line, column: col });
    Ok(out)
}

type P = Polynomial<Rational>;

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    chart: &'a CoordinateChart,
    depth: usize,
    open_parens: Vec<(usize, usize)>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_at(&self, t: &Token, kind: ParseErrorKind) -> ParseError {
        ParseError { kind, line: t.line, column: t.column }
    }

    fn unexpected(&self, t: &Token) -> ParseError {
        let kind = match &t.tok {
            Tok::End if !self.open_parens.is_empty() => {
                let (line, column) = *self.open_parens.last().unwrap();
                return ParseError { kind: ParseErrorKind::UnbalancedParenthesis, line, column };
            }
            Tok::End => ParseErrorKind::UnexpectedEnd,
            Tok::Op(')') => ParseErrorKind::UnbalancedParenthesis,
            other => ParseErrorKind::UnexpectedToken(other.text()),
        };
        self.err_at(t, kind)
    }

    fn check_size(&self, p: &P, at: &Token) -> Result<(), ParseError> {
        if p.len() > MAX_TERMS {
            return Err(self.err_at(at, ParseErrorKind::LimitExceeded(format!("more than {MAX_TERMS} terms"))));
        }
        Ok(())
    }

    fn mul(&self, a: &P, b: &P, at: &Token) -> Result<P, ParseError> {
        if a.degree() + b.degree() > MAX_DEGREE {
            return Err(self.err_at(at, ParseErrorKind::LimitExceeded(format!("degree above {MAX_DEGREE}"))));
        }
        if a.len().saturating_mul(b.len()) > MAX_PRODUCT_WORK {
            return Err(self.err_at(at, ParseErrorKind::LimitExceeded("product too large".into())));
        }
        let p = a * b;
        self.check_size(&p, at)?;
        Ok(p)
    }

    fn expr(&mut self) -> Result<P, ParseError> {
        let mut acc = self.term()?;
        loop {
            let t = self.peek().clone();
            match t.tok {
                Tok::Op('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
            self.check_size(&acc, &t)?;
        }
    }

    fn term(&mut self) -> Result<P, ParseError> {
        let mut acc = self.factor()?;
        loop {
            let t = self.peek().clone();
            match t.tok {
                Tok::Op('*') => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = self.mul(&acc, &rhs, &t)?;
                }
                Tok::Op('/') => {
                    self.bump();
                    let start = self.peek().clone();
                    let rhs = self.factor()?;
                    match rhs.constant_value() {
                        Some(c) if c.is_zero() => return Err(self.err_at(&start, ParseErrorKind::DivisionByZero)),
                        Some(c) => acc = acc.scale(&(Rational::from_integer(BigInt::from(1)) / c)),
                        None if rhs.is_zero() => return Err(self.err_at(&start, ParseErrorKind::DivisionByZero)),
                        None => return Err(self.err_at(&start, ParseErrorKind::DivisionByNonLiteral)),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<P, ParseError> {
        let base = self.atom()?;
        let t = self.peek().clone();
        if t.tok != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let e = self.bump();
        let exp: u32 = match &e.tok {
            Tok::Num(s) => match s.parse::<u32>() {
                Ok(v) if v <= MAX_EXPONENT => v,
                _ => {
                    return Err(self.err_at(&e, ParseErrorKind::LimitExceeded(format!("exponent above {MAX_EXPONENT}"))))
                }
            },
            _ => return Err(self.unexpected(&e)),
        };
        if (base.degree() as u64) * (exp as u64) > MAX_DEGREE as u64 {
            return Err(self.err_at(&t, ParseErrorKind::LimitExceeded(format!("degree above {MAX_DEGREE}"))));
        }
        let mut out = P::one(base.nvars());
        let mut sq = base;
        let mut k = exp;
        while k > 0 {
            if k & 1 == 1 {
                out = self.mul(&out, &sq, &t)?;
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq, &t)?;
            }
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<P, ParseError> {
        let t = self.bump();
        let n = self.chart.dim();
        match &t.tok {
            Tok::Num(s) => {
                let v: BigInt = s.parse().map_err(|_| self.err_at(&t, ParseErrorKind::MalformedRational(s.clone())))?;
                Ok(P::constant(n, Rational::from_integer(v)))
            }
            Tok::Ident(name) => match self.chart.index_of(name) {
                Some(i) => Ok(self.chart.coordinate(i)),
                None => Err(self.err_at(&t, ParseErrorKind::UnknownIdentifier(name.clone()))),
            },
            Tok::Op('(') => {
                self.enter(&t)?;
                self.open_parens.push((t.line, t.column));
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::Op(')') {
                    return Err(self.unexpected(&close));
                }
                self.open_parens.pop();
                self.depth -= 1;
                Ok(inner)
            }
            Tok::Op('-') => {
                self.enter(&t)?;
                let inner = self.factor()?;
                self.depth -= 1;
                Ok(-inner)
            }
            _ => Err(self.unexpected(&t)),
        }
    }

    fn enter(&mut self, t: &Token) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err_at(t, ParseErrorKind::LimitExceeded(format!("nesting deeper than {MAX_DEPTH}"))));
        }
        Ok(())
    }
}

/// Expression text together with the chart its identifiers refer to.
#[derive(Debug, Clone)]
pub struct ExpressionSource<'a> {
    pub text: &'a str,
    pub chart: &'a CoordinateChart,
}

impl ExpressionSource<'_> {
    pub fn parse(&self) -> Result<P, ParseError> {
        parse_expression(self.text, self.chart)
    }
}

/// Parses a polynomial expression over `chart`.
///
/// ```text
/// expr   := term (('+' | '-') term)*
/// term   := factor (('*' | '/') factor)*
/// factor := atom ('^' uint)?
/// atom   := integer | identifier | '(' expr ')' | '-' factor
/// ```
///
/// Divisors must be nonzero constants, so `p1/2` and `(p1^2+p2^2)/(1+1)`
/// parse but `p1/p2` does not.
pub fn parse_expression(text: &str, chart: &CoordinateChart) -> Result<P, ParseError> {
    parse_expression_at(text, chart, 1, 1)
}

/// As [`parse_expression`], reporting positions relative to `(line, column)`.
pub fn parse_expression_at(text: &str, chart: &CoordinateChart, line: usize, column: usize) -> Result<P, ParseError> {
    let toks = tokenize(text, line, column)?;
    let mut parser = Parser { toks, pos: 0, chart, depth: 0, open_parens: Vec::new() };
    let p = parser.expr()?;
    let t = parser.peek().clone();
    if t.tok != Tok::End {
        return Err(parser.unexpected(&t));
    }
    Ok(p)
}
