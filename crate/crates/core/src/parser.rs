//! Text syntax for elements, group words and scalars.
//!
//! ```text
//! element := ('+'|'-')? term (('+'|'-') term)*
//! term    := scalar? factor+ | scalar
//! factor  := atom "'"*
//! atom    := gen | macro | '(' element ')'
//! gen     := ('s'|'t') digits
//! macro   := 'p' | 'q' | '1' | 'S' | 'T' | 'R' | ('p'|'q') digits | 'r[' digits ',' digits ']'
//! scalar  := rational root* | root+
//! root    := 'sqrt(' int ')' | '1/sqrt(' int ')'
//! ```
//!
//! A `*` may separate the pieces of a scalar. A scalar standing alone means
//! that multiple of the unit.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::context::Context;
use crate::elements::Element;
use crate::error::{Error, Result};
use crate::freegroup::{Family, GroupLetter, GroupWord};
use crate::scalars::{QuadField, Scalar};
use crate::words::{Letter, Monomial};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    /// A letter immediately followed by digits, e.g. `s12`, `p1`, `a2`.
    Indexed(char, String),
    Ident(char),
    Sqrt,
    Plus,
    Minus,
    Star,
    Slash,
    Apos,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        let mut take = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '0'..='9' => {
                let digits: String = chars[i..].iter().take_while(|d| d.is_ascii_digit()).collect();
                take = digits.len();
                Some(Tok::Int(digits))
            }
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '\'' => Some(Tok::Apos),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBrack),
            ']' => Some(Tok::RBrack),
            ',' => Some(Tok::Comma),
            c if c.is_ascii_alphabetic() => {
                if chars[i..].starts_with(&['s', 'q', 'r', 't']) {
                    take = 4;
                    Some(Tok::Sqrt)
                } else {
                    let digits: String = chars[i + 1..].iter().take_while(|d| d.is_ascii_digit()).collect();
                    if digits.is_empty() {
                        Some(Tok::Ident(c))
                    } else {
                        take = 1 + digits.len();
                        Some(Tok::Indexed(c, digits))
                    }
                }
            }
            other => {
                return Err(Error::Parse { line, col, msg: format!("unexpected character {other:?}") });
            }
        };
        if let Some(tok) = tok {
            out.push(Token { tok, line: start.0, col: start.1 });
        }
        i += take;
        col += take;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
    ctx: &'a Context,
}

impl<'a> Parser<'a> {
    fn new(text: &str, ctx: &'a Context) -> Result<Self> {
        let toks = lex(text)?;
        let line = text.lines().count().max(1);
        let col = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
        Ok(Parser { toks, pos: 0, end: (line, col), ctx })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.col));
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }

    fn index(&self, digits: &str) -> Result<u32> {
        match digits.parse::<u32>() {
            Ok(v) => Ok(v),
            Err(_) => self.err(format!("index {digits} is too large")),
        }
    }

    fn int_u64(&self, digits: &str) -> Result<u64> {
        match digits.parse::<u64>() {
            Ok(v) => Ok(v),
            Err(_) => self.err(format!("integer {digits} is too large")),
        }
    }

    fn field(&self) -> QuadField {
        self.ctx.field()
    }

    fn element(&mut self) -> Result<Element> {
        let mut acc = Element::zero(*self.ctx);
        let mut negate = match self.peek() {
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if negate { acc.try_sub(&t)? } else { acc.try_add(&t)? };
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn starts_scalar(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Sqrt))
    }

    fn starts_factor(&self) -> bool {
        match self.peek() {
            Some(Tok::Indexed(c, _)) => matches!(c, 's' | 't' | 'p' | 'q'),
            Some(Tok::Ident(c)) => matches!(c, 'p' | 'q' | 'S' | 'T' | 'R' | 'r'),
            Some(Tok::Int(d)) => d == "1",
            Some(Tok::LParen) => true,
            _ => false,
        }
    }

    fn term(&mut self) -> Result<Element> {
        let coef = if self.starts_scalar() { Some(self.scalar()?) } else { None };
        let mut product: Option<Element> = None;
        while self.starts_factor() {
            let f = self.factor()?;
            product = Some(match product {
                None => f,
                Some(p) => p.try_mul(&f)?,
            });
        }
        match (coef, product) {
            (Some(c), Some(p)) => p.try_scale(&c),
            (Some(c), None) => Ok(Element::scalar(c, *self.ctx)),
            (None, Some(p)) => Ok(p),
            (None, None) => self.err("expected a term"),
        }
    }

    /// `rational root* | root+`, with optional `*` separators.
    fn scalar(&mut self) -> Result<Scalar> {
        let mut value = Scalar::one(self.field());
        let mut seen_rational = false;
        let mut first = true;
        loop {
            if !first {
                if self.peek() == Some(&Tok::Star) {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Sqrt)) {
                        return self.err("expected a scalar after '*'");
                    }
                } else if !matches!(self.peek(), Some(Tok::Sqrt)) && !self.at_inv_sqrt() {
                    return Ok(value);
                }
            }
            first = false;
            match self.peek().cloned() {
                Some(Tok::Sqrt) => {
                    let start = self.pos;
                    let k = self.sqrt_arg()?;
                    let r = Scalar::sqrt(self.field(), k).or_else(|e| {
                        self.pos = start;
                        self.err(e.to_string())
                    })?;
                    value = value.try_mul(&r)?;
                }
                Some(Tok::Int(d)) => {
                    if self.at_inv_sqrt() {
                        let start = self.pos;
                        self.pos += 2;
                        let k = self.sqrt_arg()?;
                        let r = Scalar::inv_sqrt(self.field(), k).or_else(|e| {
                            self.pos = start;
                            self.err(e.to_string())
                        })?;
                        value = value.try_mul(&r)?;
                        continue;
                    }
                    if seen_rational {
                        return self.err("only one rational factor is allowed in a scalar");
                    }
                    seen_rational = true;
                    self.pos += 1;
                    let num: BigInt = d.parse().expect("digits");
                    let mut r = BigRational::from_integer(num);
                    if self.peek() == Some(&Tok::Slash) {
                        self.pos += 1;
                        match self.bump() {
                            Some(Tok::Int(den)) => {
                                let den: BigInt = den.parse().expect("digits");
                                if den == BigInt::from(0) {
                                    self.pos -= 1;
                                    return self.err("division by zero");
                                }
                                r /= BigRational::from_integer(den);
                            }
                            _ => {
                                self.pos -= 1;
                                return self.err("expected a denominator");
                            }
                        }
                    }
                    value = value.scale_rational(&r);
                }
                _ => return self.err("expected a scalar"),
            }
        }
    }

    fn at_inv_sqrt(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(d)) if d == "1") && self.peek_at(1) == Some(&Tok::Slash) && self.peek_at(2) == Some(&Tok::Sqrt)
    }

    fn sqrt_arg(&mut self) -> Result<u64> {
        self.expect(Tok::Sqrt, "sqrt")?;
        self.expect(Tok::LParen, "'('")?;
        let k = match self.peek().cloned() {
            Some(Tok::Int(d)) => self.int_u64(&d)?,
            _ => return self.err("expected an integer radicand"),
        };
        self.pos += 1;
        self.expect(Tok::RParen, "')'")?;
        Ok(k)
    }

    fn factor(&mut self) -> Result<Element> {
        let mut x = self.atom()?;
        while self.peek() == Some(&Tok::Apos) {
            self.pos += 1;
            x = x.adjoint();
        }
        Ok(x)
    }

    fn generator(&self, family: Family, digits: &str) -> Result<Element> {
        let i = self.index(digits)?;
        self.ctx.check_index(family, i).or_else(|e| self.err(e.to_string()))?;
        Element::generator(*self.ctx, family, i)
    }

    fn atom(&mut self) -> Result<Element> {
        let ctx = *self.ctx;
        let start = self.pos;
        let tok = self.bump();
        match tok {
            Some(Tok::Indexed(c, d)) => {
                self.pos = start;
                let x = match c {
                    's' => self.generator(Family::S, &d)?,
                    't' => self.generator(Family::T, &d)?,
                    'p' | 'q' => {
                        let g = self.generator(if c == 'p' { Family::S } else { Family::T }, &d)?;
                        &g * &g.adjoint()
                    }
                    _ => return self.err(format!("unknown token {c}{d}")),
                };
                self.pos = start + 1;
                Ok(x)
            }
            Some(Tok::Ident(c)) => match c {
                'p' => Ok(Element::p(ctx)),
                'q' => Ok(Element::q(ctx)),
                'S' => Ok(covariant_s(ctx, Family::S)),
                'T' => Ok(covariant_s(ctx, Family::T)),
                'R' => Ok(covariant_r(ctx)),
                'r' => {
                    self.expect(Tok::LBrack, "'['")?;
                    let i = self.bracket_index(Family::S)?;
                    self.expect(Tok::Comma, "','")?;
                    let j = self.bracket_index(Family::T)?;
                    self.expect(Tok::RBrack, "']'")?;
                    Ok(r_macro(ctx, i, j))
                }
                _ => {
                    self.pos = start;
                    self.err(format!("unknown identifier {c}"))
                }
            },
            Some(Tok::Int(d)) if d == "1" => Ok(Element::one(ctx)),
            Some(Tok::LParen) => {
                let x = self.element()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(x)
            }
            _ => {
                self.pos = start;
                self.err("expected a factor")
            }
        }
    }

    fn bracket_index(&mut self, family: Family) -> Result<u32> {
        match self.peek().cloned() {
            Some(Tok::Int(d)) => {
                let i = self.index(&d)?;
                self.ctx.check_index(family, i).or_else(|e| self.err(e.to_string()))?;
                self.pos += 1;
                Ok(i)
            }
            _ => self.err("expected an index"),
        }
    }

    fn groupword(&mut self) -> Result<GroupWord> {
        if self.peek() == Some(&Tok::Ident('e')) {
            self.pos += 1;
            return Ok(GroupWord::identity());
        }
        let mut letters = Vec::new();
        while let Some(Tok::Indexed(c, d)) = self.peek().cloned() {
            let family = match c {
                'a' => Family::S,
                'b' => Family::T,
                _ => return self.err(format!("unknown group letter {c}")),
            };
            let i = self.index(&d)?;
            self.ctx.check_index(family, i).or_else(|e| self.err(e.to_string()))?;
            self.pos += 1;
            let mut inverse = false;
            if self.peek() == Some(&Tok::Caret) {
                self.pos += 1;
                self.expect(Tok::Minus, "'-'")?;
                match self.peek() {
                    Some(Tok::Int(one)) if one == "1" => self.pos += 1,
                    _ => return self.err("expected 1 after ^-"),
                }
                inverse = true;
            }
            letters.push(GroupLetter::new(family, i, inverse));
        }
        if letters.is_empty() {
            return self.err("expected a group word");
        }
        Ok(GroupWord::from_letters(letters))
    }

    fn scalar_sum(&mut self) -> Result<Scalar> {
        let mut acc = Scalar::zero(self.field());
        let mut negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let s = self.scalar()?;
            acc = if negate { acc.try_sub(&s)? } else { acc.try_add(&s)? };
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }
}

fn covariant_s(ctx: Context, family: Family) -> Element {
    let size = ctx.size(family);
    let terms = (1..=size).map(|i| Element::generator(ctx, family, i).expect("index in range"));
    let total = crate::elements::sum(ctx, terms);
    total.scale(&Scalar::inv_sqrt(ctx.field(), size as u64).expect("radicand in field"))
}

fn covariant_r(ctx: Context) -> Element {
    &covariant_s(ctx, Family::S) * &covariant_s(ctx, Family::T).adjoint()
}

fn r_macro(ctx: Context, i: u32, j: u32) -> Element {
    let nm = (ctx.n() as u64) * (ctx.m() as u64);
    let pi = Element::from_monomial(ctx, Monomial::from_reduced_unchecked(vec![Letter::S(i), Letter::SStar(i)]));
    let qj = Element::from_monomial(ctx, Monomial::from_reduced_unchecked(vec![Letter::T(j), Letter::TStar(j)]));
    let core = &(&pi * &covariant_r(ctx)) * &qj;
    core.scale(&Scalar::sqrt(ctx.field(), nm).expect("radicand in field"))
}

pub fn parse_element(text: &str, ctx: &Context) -> Result<Element> {
    let mut p = Parser::new(text, ctx)?;
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let x = p.element()?;
    p.finish()?;
    Ok(x)
}

pub fn parse_groupword(text: &str, ctx: &Context) -> Result<GroupWord> {
    let mut p = Parser::new(text, ctx)?;
    let g = p.groupword()?;
    p.finish()?;
    Ok(g)
}

/// Parses a sum of scalars such as `1/2 - sqrt(2) + 3/4*sqrt(6)`.
pub fn parse_scalar(text: &str, ctx: &Context) -> Result<Scalar> {
    let mut p = Parser::new(text, ctx)?;
    let s = p.scalar_sum()?;
    p.finish()?;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32, m: u32) -> Context {
        Context::new(n, m).unwrap()
    }

    #[test]
    fn basic_examples() {
        let c = ctx(2, 2);
        assert_eq!(parse_element("s1' s1", &c).unwrap(), Element::q(c));
        assert_eq!(parse_element("1/2 p + 1/2 p", &c).unwrap(), Element::p(c));
        assert_eq!(parse_element("1", &c).unwrap(), Element::one(c));
        assert_eq!(parse_element("p q", &c).unwrap().to_string(), "0");
        assert_eq!(parse_element("s1t1'", &c).unwrap().to_string(), "s1 t1'");
    }

    #[test]
    fn r_expands() {
        let c = ctx(2, 3);
        let r = parse_element("R", &c).unwrap();
        assert_eq!(r.len(), 6);
        let manual = parse_element("1/sqrt(6) (s1 t1' + s1 t2' + s1 t3' + s2 t1' + s2 t2' + s2 t3')", &c).unwrap();
        assert_eq!(r, manual);
        assert_eq!(parse_element("r[2,3]", &c).unwrap(), parse_element("s2 t3'", &c).unwrap());
    }

    #[test]
    fn groupwords() {
        let c = ctx(2, 2);
        assert_eq!(parse_groupword("a1 a2^-1 b1 b2^-1", &c).unwrap().to_string(), "a1 a2^-1 b1 b2^-1");
        assert!(parse_groupword("a1 a1^-1", &c).unwrap().is_identity());
        assert!(parse_groupword("e", &c).unwrap().is_identity());
        assert!(parse_groupword("a3", &c).is_err());
    }

    #[test]
    fn scalars() {
        let c = ctx(2, 3);
        let s = parse_scalar("1/2 - sqrt(2) + 3/4*sqrt(6)", &c).unwrap();
        assert_eq!(s.to_string(), "1/2 - sqrt(2) + 3/4*sqrt(6)");
        let t = parse_scalar("1/sqrt(2) sqrt(2)", &c).unwrap();
        assert!(t.is_one());
    }

    #[test]
    fn errors_have_positions() {
        let c = ctx(2, 2);
        match parse_element("s1 + s3", &c) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (1, 6)),
            other => panic!("{other:?}"),
        }
        match parse_element("s1 +\n  ?", &c) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse_element("", &c).is_err());
        assert!(parse_element("(s1", &c).is_err());
        assert!(parse_element("s1 )", &c).is_err());
        assert!(parse_element("1/0 p", &c).is_err());
        assert!(parse_element("sqrt(5) p", &c).is_err());
    }

    #[test]
    fn render_round_trip() {
        let c = ctx(2, 3);
        for text in ["R", "S S' T T' - T T' S S'", "r[1,2] + 1/3 q2", "p1 + sqrt(6) q - 2 s1 s2'"] {
            let x = parse_element(text, &c).unwrap();
            assert_eq!(parse_element(&x.to_string(), &c).unwrap(), x, "{text}");
        }
    }
}
