//! Recursive-descent parser for ring expressions.
//!
//! ```text
//! expr   := "Z(" num ")"
//!         | "prod(" expr ("," expr)* ")"
//!         | "M" num "(" expr ")" | "T" num "(" expr ")" | "eqdiag" num "(" expr ")"
//!         | "idealize(" expr "," module ")"
//!         | "corner(" expr "," num ")"
//!         | "quot(" expr ",[" [num ("," num)*] "])"
//!         | "skew(" expr "," endo "," num ")"
//! module := "self" | "Z(" num ")"
//! endo   := "id" | "swap(" num "," num ")" | "perm(" num ("," num)* ")"
//! ```
//!
//! Keywords are case-insensitive and whitespace is ignored between tokens.
//! Only syntax is checked here; sizes, divisibility and idempotency are
//! checked when the expression is built.

use super::expr::{EndoSpec, ModuleSpec, RingExpr};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(usize),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'(' | b')' | b'[' | b']' | b',' => {
                out.push((
                    start,
                    match c {
                        b'(' => Tok::LParen,
                        b')' => Tok::RParen,
                        b'[' => Tok::LBracket,
                        b']' => Tok::RBracket,
                        _ => Tok::Comma,
                    },
                ));
                i += 1;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: "number too large".into(),
                })?;
                out.push((start, Tok::Num(n)));
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_ascii_lowercase())));
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
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

    fn num(&mut self) -> Result<usize> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => self.err("expected a number"),
        }
    }

    fn expr(&mut self) -> Result<RingExpr> {
        let at = self.pos;
        let name = match self.next() {
            Some(Tok::Ident(s)) => s,
            _ => {
                self.pos = at;
                return self.err("expected a ring expression");
            }
        };
        match name.as_str() {
            "z" => {
                self.expect(Tok::LParen, "`(`")?;
                let n = self.num()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(RingExpr::Zn(n))
            }
            "prod" => {
                self.expect(Tok::LParen, "`(`")?;
                let mut items = vec![self.expr()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    items.push(self.expr()?);
                }
                self.expect(Tok::RParen, "`,` or `)`")?;
                Ok(RingExpr::Prod(items))
            }
            "m" | "t" | "eqdiag" => {
                let k = self.num()?;
                self.expect(Tok::LParen, "`(`")?;
                let inner = Box::new(self.expr()?);
                self.expect(Tok::RParen, "`)`")?;
                Ok(match name.as_str() {
                    "m" => RingExpr::Mat(k, inner),
                    "t" => RingExpr::Tri(k, inner),
                    _ => RingExpr::EqDiag(k, inner),
                })
            }
            "idealize" => {
                self.expect(Tok::LParen, "`(`")?;
                let inner = Box::new(self.expr()?);
                self.expect(Tok::Comma, "`,`")?;
                let module = match self.next() {
                    Some(Tok::Ident(s)) if s == "self" => ModuleSpec::SelfModule,
                    Some(Tok::Ident(s)) if s == "z" => {
                        self.expect(Tok::LParen, "`(`")?;
                        let m = self.num()?;
                        self.expect(Tok::RParen, "`)`")?;
                        ModuleSpec::CyclicModule(m)
                    }
                    _ => {
                        self.pos -= 1;
                        return self.err("expected `self` or `Z(m)`");
                    }
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(RingExpr::Idealize(inner, module))
            }
            "corner" => {
                self.expect(Tok::LParen, "`(`")?;
                let inner = Box::new(self.expr()?);
                self.expect(Tok::Comma, "`,`")?;
                let f = self.num()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(RingExpr::Corner(inner, f))
            }
            "quot" => {
                self.expect(Tok::LParen, "`(`")?;
                let inner = Box::new(self.expr()?);
                self.expect(Tok::Comma, "`,`")?;
                self.expect(Tok::LBracket, "`[`")?;
                let mut gens = Vec::new();
                if self.peek() != Some(&Tok::RBracket) {
                    gens.push(self.num()?);
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        gens.push(self.num()?);
                    }
                }
                self.expect(Tok::RBracket, "`,` or `]`")?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(RingExpr::Quot(inner, gens))
            }
            "skew" => {
                self.expect(Tok::LParen, "`(`")?;
                let inner = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let factors = match &inner {
                    RingExpr::Prod(items) => items.len(),
                    _ => 0,
                };
                let endo = self.endo(factors)?;
                self.expect(Tok::Comma, "`,`")?;
                let n = self.num()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(RingExpr::SkewPolyQuot(Box::new(inner), endo, n))
            }
            _ => {
                self.pos = at;
                self.err(format!("unknown constructor `{name}`"))
            }
        }
    }

    fn endo(&mut self, factors: usize) -> Result<EndoSpec> {
        let at = self.pos;
        match self.next() {
            Some(Tok::Ident(s)) if s == "id" => Ok(EndoSpec::Identity),
            Some(Tok::Ident(s)) if s == "swap" => {
                self.expect(Tok::LParen, "`(`")?;
                let i = self.num()?;
                self.expect(Tok::Comma, "`,`")?;
                let j = self.num()?;
                if i == 0 || j == 0 {
                    self.pos -= 1;
                    return self.err("factor positions are 1-based");
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(EndoSpec::swap(i, j, factors))
            }
            Some(Tok::Ident(s)) if s == "perm" => {
                self.expect(Tok::LParen, "`(`")?;
                let mut p = vec![self.num()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    p.push(self.num()?);
                }
                self.expect(Tok::RParen, "`)`")?;
                if p.contains(&0) {
                    self.pos = at;
                    return self.err("factor positions are 1-based");
                }
                Ok(EndoSpec::FactorPermutation(
                    p.into_iter().map(|i| i - 1).collect(),
                ))
            }
            _ => {
                self.pos = at;
                self.err("expected `id`, `swap(i,j)` or `perm(...)`")
            }
        }
    }
}

pub fn parse_ring_expr(text: &str) -> Result<RingExpr> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_forms() {
        assert_eq!(parse_ring_expr("Z(12)").unwrap(), RingExpr::Zn(12));
        assert_eq!(
            parse_ring_expr("T2(Z(3))").unwrap(),
            RingExpr::Tri(2, Box::new(RingExpr::Zn(3)))
        );
        assert_eq!(
            parse_ring_expr("idealize(Z(6), self)").unwrap(),
            RingExpr::Idealize(Box::new(RingExpr::Zn(6)), ModuleSpec::SelfModule)
        );
        assert_eq!(
            parse_ring_expr(" IDEALIZE ( z ( 6 ) , Z(3) ) ").unwrap(),
            RingExpr::Idealize(Box::new(RingExpr::Zn(6)), ModuleSpec::CyclicModule(3))
        );
        assert_eq!(
            parse_ring_expr("quot(Z(36), [6])").unwrap(),
            RingExpr::Quot(Box::new(RingExpr::Zn(36)), vec![6])
        );
        assert_eq!(
            parse_ring_expr("quot(Z(4),[])").unwrap(),
            RingExpr::Quot(Box::new(RingExpr::Zn(4)), vec![])
        );
        assert_eq!(
            parse_ring_expr("skew(prod(Z(3),Z(3)), swap(1,2), 2)").unwrap(),
            RingExpr::SkewPolyQuot(
                Box::new(RingExpr::Prod(vec![RingExpr::Zn(3), RingExpr::Zn(3)])),
                EndoSpec::FactorPermutation(vec![1, 0]),
                2
            )
        );
        assert_eq!(
            parse_ring_expr("m 2 (eqdiag3(Z(2)))").unwrap(),
            RingExpr::Mat(2, Box::new(RingExpr::EqDiag(3, Box::new(RingExpr::Zn(2)))))
        );
    }

    #[test]
    fn errors_carry_positions() {
        match parse_ring_expr("prod(Z(2),,Z(3))") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 10),
            other => panic!("{other:?}"),
        }
        match parse_ring_expr("Z(6) extra") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        match parse_ring_expr("Q(6)") {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 0);
                assert!(msg.contains("unknown"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_ring_expr("Z(6"),
            Err(Error::Parse { pos: 3, .. })
        ));
        assert!(matches!(
            parse_ring_expr("Z(#)"),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(parse_ring_expr("").is_err());
        assert!(parse_ring_expr("skew(prod(Z(2),Z(2)),swap(0,1),2)").is_err());
    }

    #[test]
    fn semantic_errors_are_not_parse_errors() {
        assert_eq!(parse_ring_expr("Z(0)").unwrap(), RingExpr::Zn(0));
        assert!(parse_ring_expr("idealize(Z(6),Z(4))").is_ok());
    }

    fn arb_expr() -> impl Strategy<Value = RingExpr> {
        let leaf = (1usize..50).prop_map(RingExpr::Zn);
        leaf.prop_recursive(3, 16, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 1..4).prop_map(RingExpr::Prod),
                (1usize..4, inner.clone()).prop_map(|(k, e)| RingExpr::Mat(k, Box::new(e))),
                (1usize..4, inner.clone()).prop_map(|(k, e)| RingExpr::Tri(k, Box::new(e))),
                (1usize..4, inner.clone()).prop_map(|(k, e)| RingExpr::EqDiag(k, Box::new(e))),
                (inner.clone(), prop::option::of(1usize..20)).prop_map(|(e, m)| {
                    RingExpr::Idealize(
                        Box::new(e),
                        m.map_or(ModuleSpec::SelfModule, ModuleSpec::CyclicModule),
                    )
                }),
                (inner.clone(), 0usize..100).prop_map(|(e, f)| RingExpr::Corner(Box::new(e), f)),
                (inner.clone(), prop::collection::vec(0usize..100, 0..4))
                    .prop_map(|(e, g)| RingExpr::Quot(Box::new(e), g)),
                (
                    prop::collection::vec(inner.clone(), 2..4),
                    1usize..4,
                    any::<bool>()
                )
                    .prop_map(|(items, n, swap)| {
                        let k = items.len();
                        let endo = if swap {
                            EndoSpec::swap(1, k, k)
                        } else {
                            EndoSpec::Identity
                        };
                        RingExpr::SkewPolyQuot(Box::new(RingExpr::Prod(items)), endo, n)
                    }),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_then_parse_is_identity(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse_ring_expr(&text).unwrap(), e.clone());
            // whitespace and case do not matter
            let noisy = text.replace(',', " , ").replace('(', " ( ").to_uppercase();
            prop_assert_eq!(parse_ring_expr(&noisy).unwrap(), e);
        }
    }
}
