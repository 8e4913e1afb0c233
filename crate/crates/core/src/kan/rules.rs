//! Directed rewrite rules.
//!
//! Each rule looks only at the root of the term it is given; the engine in
//! the parent module walks subterms. Rules are tried in the order of
//! [`Rule::ALL`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graded::ShiftSpec;
use crate::partition::recognize_f_k_iterated;

use super::expr::{FunctorExpr, Space};
use super::RewriteContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    DualInvolution,
    KuhnDual,
    LeftKanViaDual,
    TwistZero,
    TwistMerge,
    PrecomposeTwist,
    KanIdentity,
    KanOnCogenerator,
    KanCommutesWithParameter,
    TwistCollapse,
    FkSchurKan,
    Adjunction,
    TrivialParameter,
    TensorFlatten,
    ShiftZero,
    ShiftMerge,
    ShiftLift,
}

impl Rule {
    pub const ALL: [Rule; 17] = [
        Rule::DualInvolution,
        Rule::KuhnDual,
        Rule::LeftKanViaDual,
        Rule::TwistZero,
        Rule::TwistMerge,
        Rule::PrecomposeTwist,
        Rule::KanIdentity,
        Rule::KanOnCogenerator,
        Rule::KanCommutesWithParameter,
        Rule::TwistCollapse,
        Rule::FkSchurKan,
        Rule::Adjunction,
        Rule::TrivialParameter,
        Rule::TensorFlatten,
        Rule::ShiftZero,
        Rule::ShiftMerge,
        Rule::ShiftLift,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::DualInvolution => "dual-involution",
            Rule::KuhnDual => "kuhn-dual",
            Rule::LeftKanViaDual => "left-kan-via-dual",
            Rule::TwistZero => "twist-zero",
            Rule::TwistMerge => "twist-merge",
            Rule::PrecomposeTwist => "precompose-twist",
            Rule::KanIdentity => "kan-identity",
            Rule::KanOnCogenerator => "kan-on-cogenerator",
            Rule::KanCommutesWithParameter => "kan-commutes-with-parameter",
            Rule::TwistCollapse => "twist-collapse",
            Rule::FkSchurKan => "fk-schur-kan",
            Rule::Adjunction => "adjunction",
            Rule::TrivialParameter => "trivial-parameter",
            Rule::TensorFlatten => "tensor-flatten",
            Rule::ShiftZero => "shift-zero",
            Rule::ShiftMerge => "shift-merge",
            Rule::ShiftLift => "shift-lift",
        }
    }

    /// The isomorphism the rule applies.
    pub fn statement(self) -> &'static str {
        match self {
            Rule::DualInvolution => "F## = F",
            Rule::KuhnDual => "D^a# = S^a, L^a# = L^a, S_λ# = W_λ, (F_U)# = (F#)_U*, (F∘A)# = F#∘A#",
            Rule::LeftKanViaDual => "K^l_A(F) = K^r_A(F#)#",
            Rule::TwistZero => "F^(0) = F",
            Rule::TwistMerge => "(F^(a))^(b) = F^(a+b)",
            Rule::PrecomposeTwist => "C_{I^(n)}(F) = F^(n)",
            Rule::KanIdentity => "K_I(F) = F",
            Rule::KanOnCogenerator => "K^r_A(S^{ds}_U) = S^d_{A(U)}",
            Rule::KanCommutesWithParameter => "K^r_A(F_U) = K^r_A(F)_{A(U)} for monoidal A",
            Rule::TwistCollapse => "K_i(F^(i)) = F_{A_i}",
            Rule::FkSchurKan => "K_i(S_{F_k^i(λ)}) = S_λ[h^i_k]",
            Rule::Adjunction => "Ext(C_A F, G) = Ext(F, K^r_A G)",
            Rule::TrivialParameter => "F_k = F",
            Rule::TensorFlatten => "Tensor(F) = F, nested tensors flatten",
            Rule::ShiftZero => "F[0] = F",
            Rule::ShiftMerge => "F[a][b] = F[a+b]",
            Rule::ShiftLift => "shifts commute with every functor operation",
        }
    }

    /// Applies the rule at the root of `e`, if it matches.
    pub fn apply(self, e: &FunctorExpr, ctx: &RewriteContext) -> Option<FunctorExpr> {
        use FunctorExpr::*;
        match self {
            Rule::DualInvolution => match e {
                Dual(inner) => match inner.as_ref() {
                    Dual(x) => Some((**x).clone()),
                    _ => None,
                },
                _ => None,
            },
            Rule::KuhnDual => match e {
                Dual(inner) => kuhn_dual(inner),
                _ => None,
            },
            Rule::LeftKanViaDual => match e {
                KanLeft(f, a) => Some(FunctorExpr::dual(FunctorExpr::KanRight(
                    Box::new(FunctorExpr::Dual(f.clone())),
                    a.clone(),
                ))),
                _ => None,
            },
            Rule::TwistZero => match e {
                Twist(f, 0) => Some((**f).clone()),
                _ => None,
            },
            Rule::TwistMerge => match e {
                Twist(f, b) => match f.as_ref() {
                    Twist(g, a) => Some(FunctorExpr::Twist(g.clone(), a + b)),
                    _ => None,
                },
                _ => None,
            },
            Rule::PrecomposeTwist => match e {
                Precompose(f, a) => match a.as_twist()? {
                    0 => Some((**f).clone()),
                    n => Some(FunctorExpr::Twist(f.clone(), n)),
                },
                _ => None,
            },
            Rule::KanIdentity => match e {
                KanRight(f, a) if a.as_twist() == Some(0) => Some((**f).clone()),
                _ => None,
            },
            Rule::KanOnCogenerator => match e {
                KanRight(f, a) => {
                    let (n, u) = match f.as_ref() {
                        Sym(n) => (*n, Space::trivial()),
                        Param(g, u) => match g.as_ref() {
                            Sym(n) => (*n, u.clone()),
                            _ => return None,
                        },
                        _ => return None,
                    };
                    let s = a.degree(ctx.p).ok()?;
                    if s == 0 || n % s != 0 {
                        return None;
                    }
                    let a_normal = ctx.normal_form_quiet(a);
                    Some(FunctorExpr::param(Sym(n / s), u.apply(&a_normal, ctx.p)))
                }
                _ => None,
            },
            Rule::KanCommutesWithParameter => match e {
                KanRight(f, a) => {
                    let n = a.as_twist().filter(|&n| n > 0)?;
                    match f.as_ref() {
                        Param(g, u) => Some(FunctorExpr::param(
                            FunctorExpr::KanRight(g.clone(), a.clone()),
                            u.twisted(ctx.p, n),
                        )),
                        _ => None,
                    }
                }
                _ => None,
            },
            Rule::TwistCollapse => match e {
                KanRight(f, a) => {
                    let n = a.as_twist().filter(|&n| n > 0)?;
                    let (h, j) = match f.as_ref() {
                        Twist(h, j) if *j > 0 && !hides_twist(h) => (h, *j),
                        _ => return None,
                    };
                    let m = j.min(n);
                    let base = if j == m {
                        (**h).clone()
                    } else {
                        FunctorExpr::Twist(h.clone(), j - m)
                    };
                    let collapsed = FunctorExpr::param(base, Space::a(ctx.p, m));
                    Some(if n == m {
                        collapsed
                    } else {
                        FunctorExpr::kan_right(collapsed, FunctorExpr::twist_functor(n - m))
                    })
                }
                _ => None,
            },
            Rule::FkSchurKan => match e {
                KanRight(f, a) => {
                    let i = a.as_twist().filter(|&n| n > 0)?;
                    let Schur(nu) = f.as_ref() else {
                        return None;
                    };
                    let (lambda, k) = recognize_f_k_iterated(nu, ctx.p, i, ctx.convention)?;
                    if lambda.is_empty() {
                        return Some(Schur(lambda));
                    }
                    Some(FunctorExpr::shift(Schur(lambda), ShiftSpec::symbolic(i, k)))
                }
                _ => None,
            },
            Rule::Adjunction => match e {
                ExtQuery(l, g) => match l.as_ref() {
                    Twist(f, n) if *n > 0 && !hides_twist(f) => Some(FunctorExpr::ext(
                        (**f).clone(),
                        FunctorExpr::kan_right((**g).clone(), FunctorExpr::twist_functor(*n)),
                    )),
                    Precompose(f, a) if a.as_twist().is_none() => Some(FunctorExpr::ext(
                        (**f).clone(),
                        FunctorExpr::KanRight(g.clone(), a.clone()),
                    )),
                    _ => None,
                },
                _ => None,
            },
            Rule::TrivialParameter => match e {
                Param(f, u) if u.is_trivial() => Some((**f).clone()),
                _ => None,
            },
            Rule::TensorFlatten => match e {
                Tensor(cs) if cs.len() == 1 => Some(cs[0].clone()),
                Tensor(cs) if cs.iter().any(|c| matches!(c, Tensor(_))) => Some(Tensor(
                    cs.iter()
                        .flat_map(|c| match c {
                            Tensor(inner) => inner.clone(),
                            other => vec![other.clone()],
                        })
                        .collect(),
                )),
                _ => None,
            },
            Rule::ShiftZero => match e {
                Shift(f, h) if h.is_zero() => Some((**f).clone()),
                _ => None,
            },
            Rule::ShiftMerge => match e {
                Shift(f, b) => match f.as_ref() {
                    Shift(g, a) => Some(FunctorExpr::Shift(g.clone(), a.compose(b))),
                    _ => None,
                },
                _ => None,
            },
            Rule::ShiftLift => shift_lift(e),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// True when other rules can still turn `e` into a twist, so a rule that
/// peels twists must wait for them to merge first.
fn hides_twist(e: &FunctorExpr) -> bool {
    use FunctorExpr::*;
    match e {
        Twist(..) => true,
        Precompose(_, a) => a.as_twist().is_some(),
        Shift(g, _) | Dual(g) => hides_twist(g),
        Tensor(cs) => cs.len() == 1 && hides_twist(&cs[0]),
        _ => false,
    }
}

fn kuhn_dual(inner: &FunctorExpr) -> Option<FunctorExpr> {
    use FunctorExpr::*;
    Some(match inner {
        Identity => Identity,
        Divided(a) => Sym(*a),
        Sym(a) => Divided(*a),
        Exterior(a) => Exterior(*a),
        Schur(l) => Weyl(l.clone()),
        Weyl(l) => Schur(l.clone()),
        Tensor(cs) => Tensor(cs.iter().map(|c| FunctorExpr::dual(c.clone())).collect()),
        Twist(f, i) => FunctorExpr::Twist(Box::new(FunctorExpr::Dual(f.clone())), *i),
        Param(f, u) => FunctorExpr::Param(Box::new(FunctorExpr::Dual(f.clone())), u.dual()),
        Precompose(f, a) => FunctorExpr::precompose(FunctorExpr::Dual(f.clone()), FunctorExpr::Dual(a.clone())),
        Shift(f, h) => FunctorExpr::Shift(Box::new(FunctorExpr::Dual(f.clone())), h.negate()),
        Dual(_) | KanRight(..) | KanLeft(..) | ExtQuery(..) | SymmetrizedExt(..) => return None,
    })
}

fn shift_lift(e: &FunctorExpr) -> Option<FunctorExpr> {
    use FunctorExpr::*;
    fn unshift(x: &FunctorExpr) -> Option<(&FunctorExpr, &ShiftSpec)> {
        match x {
            Shift(f, h) => Some((f.as_ref(), h)),
            _ => None,
        }
    }
    let (body, h) = match e {
        Twist(f, i) => {
            let (g, h) = unshift(f)?;
            (FunctorExpr::twist(g.clone(), *i), h.clone())
        }
        Param(f, u) => {
            let (g, h) = unshift(f)?;
            (FunctorExpr::param(g.clone(), u.clone()), h.clone())
        }
        KanRight(f, a) => {
            let (g, h) = unshift(f)?;
            (FunctorExpr::KanRight(Box::new(g.clone()), a.clone()), h.clone())
        }
        Precompose(f, a) => {
            let (g, h) = unshift(f)?;
            (FunctorExpr::Precompose(Box::new(g.clone()), a.clone()), h.clone())
        }
        Tensor(cs) => {
            let idx = cs.iter().position(|c| matches!(c, Shift(..)))?;
            let (g, h) = unshift(&cs[idx])?;
            let mut children = cs.clone();
            children[idx] = g.clone();
            (Tensor(children), h.clone())
        }
        ExtQuery(l, r) => {
            if let Some((g, h)) = unshift(r) {
                (FunctorExpr::ExtQuery(l.clone(), Box::new(g.clone())), h.clone())
            } else {
                let (g, h) = unshift(l)?;
                (FunctorExpr::ExtQuery(Box::new(g.clone()), r.clone()), h.negate())
            }
        }
        _ => return None,
    };
    Some(FunctorExpr::shift(body, h))
}
