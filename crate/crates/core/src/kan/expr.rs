//! Functor expressions and the parameter spaces they mention.

use std::fmt;

use crate::graded::{a_space, dual_space, prime_power, s_space, twist_grading, GradedSpace, ShiftSpec};
use crate::partition::Partition;

use super::KanError;

/// Expression tree over functor combinators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FunctorExpr {
    Identity,
    Divided(usize),
    Sym(usize),
    Exterior(usize),
    Schur(Partition),
    Weyl(Partition),
    Tensor(Vec<FunctorExpr>),
    /// Precomposition with the `i`-th Frobenius twist.
    Twist(Box<FunctorExpr>, u32),
    /// `F_U(V) = F(U^* ⊗ V)`.
    Param(Box<FunctorExpr>, Space),
    /// `C_A(F) = F ∘ A`.
    Precompose(Box<FunctorExpr>, Box<FunctorExpr>),
    KanRight(Box<FunctorExpr>, Box<FunctorExpr>),
    KanLeft(Box<FunctorExpr>, Box<FunctorExpr>),
    /// Kuhn dual `F^#(V) = F(V^*)^*`.
    Dual(Box<FunctorExpr>),
    Shift(Box<FunctorExpr>, ShiftSpec),
    /// `Ext^*(left, right)`, a graded space rather than a functor.
    ExtQuery(Box<FunctorExpr>, Box<FunctorExpr>),
    /// `I^d ⊗_{Σ_d} Ext^*(I^{d(i)}, F)`, the value of `K_i(F)` under the
    /// coinvariance hypothesis.
    SymmetrizedExt(Box<FunctorExpr>, u32),
}

impl FunctorExpr {
    pub fn twist(f: FunctorExpr, i: u32) -> Self {
        FunctorExpr::Twist(Box::new(f), i)
    }

    /// The functor `I^{(i)}`.
    pub fn twist_functor(i: u32) -> Self {
        Self::twist(FunctorExpr::Identity, i)
    }

    pub fn param(f: FunctorExpr, u: Space) -> Self {
        FunctorExpr::Param(Box::new(f), u)
    }

    pub fn precompose(f: FunctorExpr, a: FunctorExpr) -> Self {
        FunctorExpr::Precompose(Box::new(f), Box::new(a))
    }

    pub fn kan_right(f: FunctorExpr, a: FunctorExpr) -> Self {
        FunctorExpr::KanRight(Box::new(f), Box::new(a))
    }

    pub fn kan_left(f: FunctorExpr, a: FunctorExpr) -> Self {
        FunctorExpr::KanLeft(Box::new(f), Box::new(a))
    }

    pub fn dual(f: FunctorExpr) -> Self {
        FunctorExpr::Dual(Box::new(f))
    }

    pub fn shift(f: FunctorExpr, h: ShiftSpec) -> Self {
        FunctorExpr::Shift(Box::new(f), h)
    }

    pub fn ext(left: FunctorExpr, right: FunctorExpr) -> Self {
        FunctorExpr::ExtQuery(Box::new(left), Box::new(right))
    }

    /// `D^λ = D^{λ_1} ⊗ ... ⊗ D^{λ_n}`.
    pub fn divided_product(lambda: &Partition) -> Self {
        match lambda.parts() {
            [a] => FunctorExpr::Divided(*a),
            parts => FunctorExpr::Tensor(parts.iter().map(|&a| FunctorExpr::Divided(a)).collect()),
        }
    }

    /// Homogeneous degree. Ext queries are graded spaces and count as degree 0.
    pub fn degree(&self, p: u32) -> Result<usize, KanError> {
        use FunctorExpr::*;
        Ok(match self {
            Identity => 1,
            Divided(a) | Sym(a) | Exterior(a) => *a,
            Schur(l) | Weyl(l) => l.weight(),
            Tensor(cs) => cs.iter().map(|c| c.degree(p)).sum::<Result<usize, _>>()?,
            Twist(f, i) => f.degree(p)? * prime_power(p, *i),
            Param(f, _) | Dual(f) | Shift(f, _) => f.degree(p)?,
            Precompose(f, a) => f.degree(p)? * a.degree(p)?,
            KanRight(f, a) | KanLeft(f, a) => {
                let (n, s) = (f.degree(p)?, a.degree(p)?);
                if s == 0 || n % s != 0 {
                    return Err(KanError::NonDivisibleKan {
                        expr: self.to_string(),
                        degree: n,
                        divisor: s,
                    });
                }
                n / s
            }
            SymmetrizedExt(f, i) => {
                let (n, s) = (f.degree(p)?, prime_power(p, *i));
                if n % s != 0 {
                    return Err(KanError::NonDivisibleKan {
                        expr: self.to_string(),
                        degree: n,
                        divisor: s,
                    });
                }
                n / s
            }
            ExtQuery(l, r) => {
                let (dl, dr) = (l.degree(p)?, r.degree(p)?);
                if dl != dr {
                    return Err(KanError::DegreeMismatch {
                        expr: self.to_string(),
                        left: dl,
                        right: dr,
                    });
                }
                0
            }
        })
    }

    /// `Some(n)` when the expression is the functor `I^{(n)}` (with `n = 0` for `I`).
    pub fn as_twist(&self) -> Option<u32> {
        use FunctorExpr::*;
        match self {
            Identity => Some(0),
            Twist(f, i) => f.as_twist().map(|n| n + i),
            Precompose(f, a) => Some(f.as_twist()? + a.as_twist()?),
            Dual(f) => f.as_twist(),
            Tensor(cs) if cs.len() == 1 => cs[0].as_twist(),
            _ => None,
        }
    }

    pub fn node_count(&self) -> usize {
        use FunctorExpr::*;
        1 + match self {
            Identity | Divided(_) | Sym(_) | Exterior(_) | Schur(_) | Weyl(_) => 0,
            Tensor(cs) => cs.iter().map(FunctorExpr::node_count).sum(),
            Twist(f, _) | Param(f, _) | Dual(f) | Shift(f, _) | SymmetrizedExt(f, _) => f.node_count(),
            Precompose(a, b) | KanRight(a, b) | KanLeft(a, b) | ExtQuery(a, b) => a.node_count() + b.node_count(),
        }
    }
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FunctorExpr::*;
        match self {
            Identity => f.write_str("I"),
            Divided(a) => write!(f, "D[{a}]"),
            Sym(a) => write!(f, "S[{a}]"),
            Exterior(a) => write!(f, "L[{a}]"),
            Schur(l) => write!(f, "Schur[{}]", bracketless(l)),
            Weyl(l) => write!(f, "Weyl[{}]", bracketless(l)),
            Tensor(cs) => {
                f.write_str("Tensor(")?;
                for (n, c) in cs.iter().enumerate() {
                    if n > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
            Twist(x, i) => write!(f, "Twist({x}, {i})"),
            Param(x, u) => write!(f, "Param({x}, {u})"),
            Precompose(x, a) => write!(f, "Compose({x}, {a})"),
            KanRight(x, a) => write!(f, "KanR({x}, {a})"),
            KanLeft(x, a) => write!(f, "KanL({x}, {a})"),
            Dual(x) => write!(f, "Dual({x})"),
            Shift(x, h) => write!(f, "Shift({x}, {h})"),
            ExtQuery(l, r) => write!(f, "Ext({l}, {r})"),
            SymmetrizedExt(x, i) => write!(f, "SymExt({x}, {i})"),
        }
    }
}

fn bracketless(l: &Partition) -> String {
    if l.is_empty() {
        String::new()
    } else {
        l.to_string()
    }
}

/// Parameter space of a `Param` node.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Space {
    /// A concrete graded space, known by its Poincaré polynomial.
    Graded(GradedSpace),
    /// A named, otherwise unknown space.
    Named { name: String, twist: u32, dual: bool },
    /// `A(U)` for a functor `A` that is not a Frobenius twist.
    Applied {
        functor: Box<FunctorExpr>,
        space: Box<Space>,
        twist: u32,
        dual: bool,
    },
}

impl Space {
    pub fn named(name: impl Into<String>) -> Self {
        Space::Named {
            name: name.into(),
            twist: 0,
            dual: false,
        }
    }

    pub fn a(p: u32, i: u32) -> Self {
        Space::Graded(a_space(p, i))
    }

    pub fn s(p: u32, i: u32) -> Self {
        Space::Graded(s_space(p, i))
    }

    pub fn trivial() -> Self {
        Space::Graded(GradedSpace::trivial())
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Space::Graded(u) if u.is_trivial())
    }

    pub fn dual(&self) -> Self {
        match self {
            Space::Graded(u) if u.is_trivial() && u.base == "k" => self.clone(),
            Space::Graded(u) => Space::Graded(dual_space(u)),
            Space::Named { name, twist, dual } => Space::Named {
                name: name.clone(),
                twist: *twist,
                dual: !dual,
            },
            Space::Applied {
                functor,
                space,
                twist,
                dual,
            } => Space::Applied {
                functor: functor.clone(),
                space: space.clone(),
                twist: *twist,
                dual: !dual,
            },
        }
    }

    /// `U^{(i)}`: degrees scale by `p^i`.
    pub fn twisted(&self, p: u32, i: u32) -> Self {
        if i == 0 {
            return self.clone();
        }
        match self {
            Space::Graded(u) if u.is_trivial() && u.base == "k" => self.clone(),
            Space::Graded(u) => Space::Graded(twist_grading(u, p, i)),
            Space::Named { name, twist, dual } => Space::Named {
                name: name.clone(),
                twist: twist + i,
                dual: *dual,
            },
            Space::Applied {
                functor,
                space,
                twist,
                dual,
            } => Space::Applied {
                functor: functor.clone(),
                space: space.clone(),
                twist: twist + i,
                dual: *dual,
            },
        }
    }

    /// `A(U)`; Frobenius twists act on the grading, anything else stays symbolic.
    /// `a` is expected in normal form.
    pub fn apply(&self, a: &FunctorExpr, p: u32) -> Self {
        match a.as_twist() {
            Some(n) => self.twisted(p, n),
            None => Space::Applied {
                functor: Box::new(a.clone()),
                space: Box::new(self.clone()),
                twist: 0,
                dual: false,
            },
        }
    }
}

fn write_flags(f: &mut fmt::Formatter<'_>, twist: u32, dual: bool) -> fmt::Result {
    if twist > 0 {
        write!(f, "^({twist})")?;
    }
    if dual {
        f.write_str("*")?;
    }
    Ok(())
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Graded(u) => f.write_str(&u.label()),
            Space::Named { name, twist, dual } => {
                f.write_str(name)?;
                write_flags(f, *twist, *dual)
            }
            Space::Applied {
                functor,
                space,
                twist,
                dual,
            } => {
                write!(f, "App({functor}, {space})")?;
                write_flags(f, *twist, *dual)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn degrees() {
        let e = FunctorExpr::twist(FunctorExpr::Weyl(p(&[2, 1])), 2);
        assert_eq!(e.degree(2).unwrap(), 12);
        let c = FunctorExpr::precompose(FunctorExpr::Sym(3), FunctorExpr::Exterior(2));
        assert_eq!(c.degree(3).unwrap(), 6);
        let k = FunctorExpr::kan_right(FunctorExpr::Sym(6), FunctorExpr::twist_functor(1));
        assert_eq!(k.degree(3).unwrap(), 2);
        let bad = FunctorExpr::kan_right(FunctorExpr::Sym(5), FunctorExpr::twist_functor(1));
        assert!(matches!(bad.degree(2), Err(KanError::NonDivisibleKan { .. })));
        let q = FunctorExpr::ext(FunctorExpr::Sym(2), FunctorExpr::Identity);
        assert!(matches!(q.degree(2), Err(KanError::DegreeMismatch { .. })));
        assert_eq!(FunctorExpr::Tensor(vec![]).degree(2).unwrap(), 0);
    }

    #[test]
    fn twist_recognition() {
        assert_eq!(FunctorExpr::Identity.as_twist(), Some(0));
        assert_eq!(FunctorExpr::twist_functor(2).as_twist(), Some(2));
        let composed = FunctorExpr::precompose(FunctorExpr::twist_functor(1), FunctorExpr::twist_functor(2));
        assert_eq!(composed.as_twist(), Some(3));
        assert_eq!(FunctorExpr::Sym(1).as_twist(), None);
    }

    #[test]
    fn space_flags_commute() {
        let a = Space::a(2, 1);
        assert_eq!(a.dual().twisted(2, 1), a.twisted(2, 1).dual());
        assert_eq!(a.dual().dual(), a);
        assert_eq!(Space::trivial().twisted(3, 2), Space::trivial());
        let u = Space::named("U");
        assert_eq!(u.twisted(2, 1).dual().to_string(), "U^(1)*");
        let app = u.apply(&FunctorExpr::Sym(2), 2);
        assert_eq!(app.to_string(), "App(S[2], U)");
        assert_eq!(u.apply(&FunctorExpr::twist_functor(1), 2), u.twisted(2, 1));
    }

    #[test]
    fn display() {
        let e = FunctorExpr::ext(
            FunctorExpr::twist(FunctorExpr::Weyl(p(&[2, 1])), 1),
            FunctorExpr::twist(FunctorExpr::Schur(p(&[2, 1])), 1),
        );
        assert_eq!(e.to_string(), "Ext(Twist(Weyl[2,1], 1), Twist(Schur[2,1], 1))");
        assert_eq!(FunctorExpr::Schur(Partition::empty()).to_string(), "Schur[]");
    }
}
