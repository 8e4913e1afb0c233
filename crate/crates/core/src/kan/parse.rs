//! Parser for the textual expression syntax printed by `Display`.
//!
//! ```text
//! expr  := I | D[n] | S[n] | L[n] | Schur[parts] | Weyl[parts]
//!        | SchurFk[parts; k; i]
//!        | Tensor(expr, ...) | Twist(expr, n) | Param(expr, space)
//!        | Compose(expr, expr) | KanR(expr, expr) | KanL(expr, expr)
//!        | Dual(expr) | Shift(expr, shift) | Ext(expr, expr) | SymExt(expr, n)
//! space := (k | A_n | S_n | name | App(expr, space)) [^(n)] [*]
//! shift := term ((+|-) term)*      term := [n] h(i,k) | n
//! ```

use std::fmt;

use thiserror::Error;

use crate::graded::{a_space, dual_space, s_space, twist_grading, GradedSpace, ShiftSpec};
use crate::partition::{f_k_iterated_with, Partition};

use super::expr::{FunctorExpr, Space};
use super::RewriteContext;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.position + 1, self.message)
    }
}

/// Parses `input` with the default abacus convention.
pub fn parse_expr(input: &str, p: u32) -> Result<FunctorExpr, ParseError> {
    parse_expr_with(input, &RewriteContext::new(p))
}

pub fn parse_expr_with(input: &str, ctx: &RewriteContext) -> Result<FunctorExpr, ParseError> {
    let mut parser = Parser {
        src: input,
        pos: 0,
        ctx,
    };
    let e = parser.expr()?;
    parser.skip_ws();
    if parser.pos != input.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ctx: &'a RewriteContext,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|&(n, c)| !(c.is_ascii_alphabetic() || (n > 0 && (c.is_ascii_digit() || c == '_'))))
            .map_or(rest.len(), |(n, _)| n);
        if len == 0 {
            return Err(self.error("expected a name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        let n = rest[..len].parse().map_err(|_| self.error("number too large"))?;
        self.pos += len;
        Ok(n)
    }

    fn small(&mut self) -> Result<u32, ParseError> {
        let n = self.number()?;
        u32::try_from(n).map_err(|_| self.error("number too large"))
    }

    fn size(&mut self) -> Result<usize, ParseError> {
        let n = self.number()?;
        usize::try_from(n).map_err(|_| self.error("number too large"))
    }

    fn bracketed_size(&mut self) -> Result<usize, ParseError> {
        self.expect('[')?;
        let n = self.size()?;
        self.expect(']')?;
        Ok(n)
    }

    fn parts_until(&mut self, stop: char) -> Result<Partition, ParseError> {
        let mut parts = Vec::new();
        if self.peek() != Some(stop) {
            loop {
                parts.push(self.size()?);
                if !self.eat(',') {
                    break;
                }
            }
        }
        let at = self.pos;
        Partition::new(parts).map_err(|e| ParseError {
            position: at,
            message: e.to_string(),
        })
    }

    fn bracketed_partition(&mut self) -> Result<Partition, ParseError> {
        self.expect('[')?;
        let l = self.parts_until(']')?;
        self.expect(']')?;
        Ok(l)
    }

    fn args<const N: usize>(&mut self) -> Result<[FunctorExpr; N], ParseError> {
        self.expect('(')?;
        let mut out = Vec::with_capacity(N);
        for n in 0..N {
            if n > 0 {
                self.expect(',')?;
            }
            out.push(self.expr()?);
        }
        self.expect(')')?;
        Ok(out.try_into().unwrap_or_else(|_| unreachable!()))
    }

    fn expr_then<T>(
        &mut self,
        tail: impl FnOnce(&mut Self) -> Result<T, ParseError>,
    ) -> Result<(FunctorExpr, T), ParseError> {
        self.expect('(')?;
        let e = self.expr()?;
        self.expect(',')?;
        let t = tail(self)?;
        self.expect(')')?;
        Ok((e, t))
    }

    fn expr(&mut self) -> Result<FunctorExpr, ParseError> {
        use FunctorExpr::*;
        self.skip_ws();
        let start = self.pos;
        let name = self.ident()?;
        Ok(match name {
            "I" => Identity,
            "D" => Divided(self.bracketed_size()?),
            "S" => Sym(self.bracketed_size()?),
            "L" => Exterior(self.bracketed_size()?),
            "Schur" => Schur(self.bracketed_partition()?),
            "Weyl" => Weyl(self.bracketed_partition()?),
            "SchurFk" => {
                self.expect('[')?;
                let lambda = self.parts_until(';')?;
                self.expect(';')?;
                let k = self.small()?;
                self.expect(';')?;
                let i = self.small()?;
                self.expect(']')?;
                let nu = f_k_iterated_with(&lambda, self.ctx.p, k, i, self.ctx.convention)
                    .map_err(|e| self.error(e.to_string()))?;
                Schur(nu)
            }
            "Tensor" => {
                self.expect('(')?;
                let mut cs = Vec::new();
                if self.peek() != Some(')') {
                    loop {
                        cs.push(self.expr()?);
                        if !self.eat(',') {
                            break;
                        }
                    }
                }
                self.expect(')')?;
                Tensor(cs)
            }
            "Twist" => {
                let (e, i) = self.expr_then(Self::small)?;
                FunctorExpr::twist(e, i)
            }
            "SymExt" => {
                let (e, i) = self.expr_then(Self::small)?;
                SymmetrizedExt(Box::new(e), i)
            }
            "Param" => {
                let (e, u) = self.expr_then(Self::space)?;
                FunctorExpr::param(e, u)
            }
            "Shift" => {
                let (e, h) = self.expr_then(Self::shift)?;
                FunctorExpr::shift(e, h)
            }
            "Dual" => {
                let [e] = self.args()?;
                FunctorExpr::dual(e)
            }
            "Compose" => {
                let [f, a] = self.args()?;
                FunctorExpr::precompose(f, a)
            }
            "KanR" => {
                let [f, a] = self.args()?;
                FunctorExpr::kan_right(f, a)
            }
            "KanL" => {
                let [f, a] = self.args()?;
                FunctorExpr::kan_left(f, a)
            }
            "Ext" => {
                let [l, r] = self.args()?;
                FunctorExpr::ext(l, r)
            }
            other => {
                self.pos = start;
                return Err(self.error(format!("unknown functor '{other}'")));
            }
        })
    }

    fn space(&mut self) -> Result<Space, ParseError> {
        let name = self.ident()?;
        let p = self.ctx.p;
        let indexed = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<u32>().ok());
        let mut space = if name == "k" {
            Space::Graded(GradedSpace::trivial())
        } else if name == "App" {
            let (f, u) = self.expr_then(Self::space)?;
            Space::Applied {
                functor: Box::new(f),
                space: Box::new(u),
                twist: 0,
                dual: false,
            }
        } else if let Some(i) = indexed("A_") {
            Space::Graded(a_space(p, i))
        } else if let Some(i) = indexed("S_") {
            Space::Graded(s_space(p, i))
        } else {
            Space::named(name)
        };
        if self.rest().starts_with("^(") {
            self.pos += 2;
            let n = self.small()?;
            self.expect(')')?;
            space = match space {
                Space::Graded(u) if u.base != "k" => Space::Graded(twist_grading(&u, p, n)),
                other => other.twisted(p, n),
            };
        }
        if self.rest().starts_with('*') {
            self.pos += 1;
            space = match space {
                Space::Graded(u) if u.base != "k" => Space::Graded(dual_space(&u)),
                other => other.dual(),
            };
        }
        Ok(space)
    }

    fn shift(&mut self) -> Result<ShiftSpec, ParseError> {
        let mut total = ShiftSpec::none();
        let mut negative = self.eat('-');
        loop {
            let coeff = match self.peek() {
                Some(c) if c.is_ascii_digit() => Some(self.number()?),
                _ => None,
            };
            let term = if self.peek() == Some('h') {
                self.pos += 1;
                self.expect('(')?;
                let i = self.small()?;
                self.expect(',')?;
                let k = self.small()?;
                self.expect(')')?;
                let c = coeff.unwrap_or(1);
                let mut t = ShiftSpec::none();
                for _ in 0..c {
                    t = t.compose(&ShiftSpec::symbolic(i, k));
                }
                t
            } else {
                let c = coeff.ok_or_else(|| self.error("expected a shift term"))?;
                ShiftSpec::value(i64::try_from(c).map_err(|_| self.error("shift too large"))?)
            };
            total = total.compose(&if negative { term.negate() } else { term });
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::f_k_iterated;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn cli_example() {
        let e = parse_expr("Ext(Twist(Weyl[2,1],1), Twist(Schur[2,1],1))", 3).unwrap();
        assert_eq!(
            e,
            FunctorExpr::ext(
                FunctorExpr::twist(FunctorExpr::Weyl(p(&[2, 1])), 1),
                FunctorExpr::twist(FunctorExpr::Schur(p(&[2, 1])), 1),
            )
        );
    }

    #[test]
    fn spaces() {
        let e = parse_expr("Param(S[2], A_1^(2)*)", 2).unwrap();
        let u = dual_space(&twist_grading(&a_space(2, 1), 2, 2));
        assert_eq!(e, FunctorExpr::param(FunctorExpr::Sym(2), Space::Graded(u)));
        let e = parse_expr("Param(D[2], App(L[2], U^(1))*)", 2).unwrap();
        assert_eq!(e.to_string(), "Param(D[2], App(L[2], U^(1))*)");
        assert_eq!(
            parse_expr("Param(I, k)", 2).unwrap(),
            FunctorExpr::param(FunctorExpr::Identity, Space::trivial())
        );
    }

    #[test]
    fn shifts() {
        let e = parse_expr("Shift(I, 2h(1,0)-h(2,1)+3)", 2).unwrap();
        let h = ShiftSpec::symbolic(1, 0)
            .compose(&ShiftSpec::symbolic(1, 0))
            .compose(&ShiftSpec::symbolic(2, 1).negate())
            .compose(&ShiftSpec::value(3));
        assert_eq!(e, FunctorExpr::shift(FunctorExpr::Identity, h.clone()));
        assert_eq!(h.to_string(), "2h(1,0)-h(2,1)+3");
        assert_eq!(
            parse_expr("Shift(I, -4)", 2).unwrap(),
            FunctorExpr::shift(FunctorExpr::Identity, ShiftSpec::value(-4))
        );
    }

    #[test]
    fn fk_sugar() {
        let e = parse_expr("SchurFk[2,1; 1; 2]", 3).unwrap();
        assert_eq!(e, FunctorExpr::Schur(f_k_iterated(&p(&[2, 1]), 3, 1, 2).unwrap()));
        assert!(parse_expr("SchurFk[1; 3; 1]", 3).is_err());
    }

    #[test]
    fn errors() {
        for bad in [
            "",
            "Foo",
            "S[",
            "Schur[1,2]",
            "Twist(I)",
            "Ext(I, I) x",
            "Shift(I, )",
            "Param(I, )",
        ] {
            assert!(parse_expr(bad, 2).is_err(), "{bad}");
        }
        let err = parse_expr("Tensor(I, Bogus)", 2).unwrap_err();
        assert_eq!(err.position, 10);
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1usize..4, 0..3).prop_map(Partition::from_unsorted)
    }

    fn arb_shift() -> impl Strategy<Value = ShiftSpec> {
        (prop::collection::vec((1u32..3, 0u32..3, -2i64..3), 0..3), -3i64..4).prop_map(|(terms, c)| {
            let mut h = ShiftSpec::value(c);
            for (i, k, n) in terms {
                let t = ShiftSpec::symbolic(i, k);
                for _ in 0..n.unsigned_abs() {
                    h = h.compose(&if n < 0 { t.negate() } else { t.clone() });
                }
            }
            h
        })
    }

    fn arb_space(p: u32) -> impl Strategy<Value = Space> {
        let leaf = prop_oneof![
            Just(Space::trivial()),
            (0u32..3).prop_map(move |i| Space::a(p, i)),
            (0u32..3).prop_map(move |i| Space::s(p, i)),
            prop_oneof![Just("U"), Just("V"), Just("W")].prop_map(Space::named),
        ];
        (leaf, 0u32..3, any::<bool>()).prop_map(move |(u, n, d)| {
            let u = u.twisted(p, n);
            if d {
                u.dual()
            } else {
                u
            }
        })
    }

    fn arb_expr() -> impl Strategy<Value = FunctorExpr> {
        use FunctorExpr::*;
        let leaf = prop_oneof![
            Just(Identity),
            (0usize..5).prop_map(Divided),
            (0usize..5).prop_map(Sym),
            (0usize..5).prop_map(Exterior),
            arb_partition().prop_map(Schur),
            arb_partition().prop_map(Weyl),
        ];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 0..3).prop_map(Tensor),
                (inner.clone(), 0u32..3).prop_map(|(e, i)| FunctorExpr::twist(e, i)),
                (inner.clone(), arb_space(2)).prop_map(|(e, u)| FunctorExpr::param(e, u)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| FunctorExpr::precompose(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| FunctorExpr::kan_right(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| FunctorExpr::kan_left(a, b)),
                inner.clone().prop_map(FunctorExpr::dual),
                (inner.clone(), arb_shift()).prop_map(|(e, h)| FunctorExpr::shift(e, h)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| FunctorExpr::ext(a, b)),
                (inner.clone(), 1u32..3).prop_map(|(e, i)| SymmetrizedExt(Box::new(e), i)),
                (inner.clone(), inner, arb_space(2)).prop_map(|(f, a, u)| FunctorExpr::param(
                    f,
                    Space::Applied {
                        functor: Box::new(a),
                        space: Box::new(u),
                        twist: 1,
                        dual: true,
                    }
                )),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_roundtrip(e in arb_expr()) {
            let text = e.to_string();
            prop_assert_eq!(parse_expr(&text, 2).unwrap(), e);
        }
    }
}
