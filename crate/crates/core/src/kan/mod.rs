//! Rewrite calculus for precomposition, its Kan extensions and Frobenius twists.
//!
//! Expressions are rewritten with the directed rules in [`rules`] until no
//! rule applies. [`normalize`] follows a fixed strategy (outermost-leftmost
//! redex, rules in declaration order) and records every step;
//! [`all_normal_forms`] explores every rewrite order and is used to check
//! confluence. [`evaluate_ext_query`] hands a normal form to [`crate::extcalc`].

pub mod corpus;
mod expr;
mod parse;
pub mod rules;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::extcalc::{divided_multidegree, weyl_schur_parameterized, ExtAnswer, ExtError, Provenance};
use crate::graded::{prime_power, GradedSpace, ShiftSpec};
use crate::partition::{recognize_f_k_iterated, Partition, QuotientConvention};

pub use expr::{FunctorExpr, Space};
pub use parse::{parse_expr, parse_expr_with, ParseError};
pub use rules::Rule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KanError {
    #[error("degree mismatch in {expr}: left side has degree {left}, right side {right}")]
    DegreeMismatch { expr: String, left: usize, right: usize },
    #[error("Kan extension {expr} is ill-formed: degree {degree} is not divisible by {divisor}")]
    NonDivisibleKan {
        expr: String,
        degree: usize,
        divisor: usize,
    },
    #[error("rewriting did not terminate within {0} steps")]
    StepLimit(usize),
    #[error("normal form {0} is not an Ext query the calculator can evaluate")]
    UnsupportedNormalForm(String),
    #[error("the coinvariance hypothesis is not established for {0}; pass it explicitly to assert it")]
    HypothesisRequired(String),
    #[error("twist index must be positive")]
    ZeroTwist,
    #[error(transparent)]
    Ext(#[from] ExtError),
}

/// Parameters shared by every rule application.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RewriteContext {
    pub p: u32,
    pub convention: QuotientConvention,
    pub max_steps: usize,
}

impl RewriteContext {
    pub fn new(p: u32) -> Self {
        RewriteContext {
            p,
            convention: QuotientConvention::default(),
            max_steps: 10_000,
        }
    }

    pub fn with_convention(mut self, convention: QuotientConvention) -> Self {
        self.convention = convention;
        self
    }

    /// Normal form without a trace, for rules that need a canonical subterm.
    pub(crate) fn normal_form_quiet(&self, e: &FunctorExpr) -> FunctorExpr {
        let mut current = e.clone();
        for _ in 0..self.max_steps {
            match first_redex(&current, self) {
                Some((path, _, replacement)) => current = replace_at(&current, &path, replacement),
                None => break,
            }
        }
        current
    }
}

/// One rule application: `before` was replaced by `after` at `path`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub path: Vec<usize>,
    pub before: FunctorExpr,
    pub after: FunctorExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub input: FunctorExpr,
    pub normal_form: FunctorExpr,
    pub trace: Vec<TraceStep>,
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "   {}", self.input)?;
        for (n, step) in self.trace.iter().enumerate() {
            writeln!(f, "{:>2}. [{}] {}", n + 1, step.rule, step.rule.statement())?;
            writeln!(f, "      {}  ~>  {}", step.before, step.after)?;
        }
        write!(f, "   = {}", self.normal_form)
    }
}

fn children(e: &FunctorExpr) -> Vec<&FunctorExpr> {
    use FunctorExpr::*;
    match e {
        Identity | Divided(_) | Sym(_) | Exterior(_) | Schur(_) | Weyl(_) => vec![],
        Tensor(cs) => cs.iter().collect(),
        Twist(f, _) | Param(f, _) | Dual(f) | Shift(f, _) | SymmetrizedExt(f, _) => vec![f.as_ref()],
        Precompose(a, b) | KanRight(a, b) | KanLeft(a, b) | ExtQuery(a, b) => vec![a.as_ref(), b.as_ref()],
    }
}

fn replace_at(e: &FunctorExpr, path: &[usize], new: FunctorExpr) -> FunctorExpr {
    use FunctorExpr::*;
    let Some((&idx, rest)) = path.split_first() else {
        return new;
    };
    let sub = |x: &FunctorExpr| Box::new(replace_at(x, rest, new.clone()));
    match e {
        Tensor(cs) => {
            let mut cs = cs.clone();
            cs[idx] = replace_at(&cs[idx], rest, new);
            Tensor(cs)
        }
        Twist(f, i) => Twist(sub(f), *i),
        Param(f, u) => Param(sub(f), u.clone()),
        Dual(f) => Dual(sub(f)),
        Shift(f, h) => Shift(sub(f), h.clone()),
        SymmetrizedExt(f, i) => SymmetrizedExt(sub(f), *i),
        Precompose(a, b) | KanRight(a, b) | KanLeft(a, b) | ExtQuery(a, b) => {
            let (a, b) = if idx == 0 {
                (sub(a), b.clone())
            } else {
                (a.clone(), sub(b))
            };
            match e {
                Precompose(..) => Precompose(a, b),
                KanRight(..) => KanRight(a, b),
                KanLeft(..) => KanLeft(a, b),
                _ => ExtQuery(a, b),
            }
        }
        leaf => panic!("path descends into leaf {leaf}"),
    }
}

/// Every `(path, rule, replacement)` applicable anywhere in `e`, in pre-order.
pub fn redexes(e: &FunctorExpr, ctx: &RewriteContext) -> Vec<(Vec<usize>, Rule, FunctorExpr)> {
    let mut out = Vec::new();
    collect_redexes(e, ctx, &mut Vec::new(), &mut out, false);
    out
}

fn collect_redexes(
    e: &FunctorExpr,
    ctx: &RewriteContext,
    path: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Rule, FunctorExpr)>,
    first_only: bool,
) {
    for rule in Rule::ALL {
        if let Some(r) = rule.apply(e, ctx) {
            out.push((path.clone(), rule, r));
            if first_only {
                return;
            }
        }
    }
    for (n, c) in children(e).into_iter().enumerate() {
        path.push(n);
        collect_redexes(c, ctx, path, out, first_only);
        path.pop();
        if first_only && !out.is_empty() {
            return;
        }
    }
}

fn first_redex(e: &FunctorExpr, ctx: &RewriteContext) -> Option<(Vec<usize>, Rule, FunctorExpr)> {
    let mut out = Vec::new();
    collect_redexes(e, ctx, &mut Vec::new(), &mut out, true);
    out.pop()
}

fn subterm<'a>(e: &'a FunctorExpr, path: &[usize]) -> &'a FunctorExpr {
    path.iter().fold(e, |acc, &i| children(acc)[i])
}

/// Rewrites `e` to normal form, outermost-leftmost first, recording each step.
pub fn normalize(e: &FunctorExpr, p: u32) -> Result<Derivation, KanError> {
    normalize_with(e, &RewriteContext::new(p))
}

pub fn normalize_with(e: &FunctorExpr, ctx: &RewriteContext) -> Result<Derivation, KanError> {
    e.degree(ctx.p)?;
    let mut current = e.clone();
    let mut trace = Vec::new();
    while let Some((path, rule, replacement)) = first_redex(&current, ctx) {
        if trace.len() >= ctx.max_steps {
            return Err(KanError::StepLimit(ctx.max_steps));
        }
        let before = subterm(&current, &path).clone();
        let next = replace_at(&current, &path, replacement.clone());
        debug_assert_eq!(next.degree(ctx.p).ok(), current.degree(ctx.p).ok());
        trace.push(TraceStep {
            rule,
            path,
            before,
            after: replacement,
        });
        current = next;
    }
    Ok(Derivation {
        input: e.clone(),
        normal_form: current,
        trace,
    })
}

/// Normal forms reachable by every rewrite order. A confluent input yields exactly one.
pub fn all_normal_forms(e: &FunctorExpr, ctx: &RewriteContext) -> Result<BTreeSet<String>, KanError> {
    e.degree(ctx.p)?;
    let mut seen: HashSet<FunctorExpr> = HashSet::new();
    let mut stack = vec![e.clone()];
    let mut forms = BTreeSet::new();
    while let Some(current) = stack.pop() {
        if !seen.insert(current.clone()) {
            continue;
        }
        if seen.len() > ctx.max_steps {
            return Err(KanError::StepLimit(ctx.max_steps));
        }
        let next = redexes(&current, ctx);
        if next.is_empty() {
            forms.insert(current.to_string());
        }
        for (path, _, replacement) in next {
            stack.push(replace_at(&current, &path, replacement));
        }
    }
    Ok(forms)
}

/// Reads a product of divided powers `D^{λ_1} ⊗ ... ⊗ D^{λ_n}` (with `I = D^1`
/// and `W_(a) = D^a`) as the partition `λ`.
fn as_divided_product(e: &FunctorExpr) -> Option<Partition> {
    use FunctorExpr::*;
    match e {
        Identity => Some(Partition::row(1)),
        Divided(a) => Some(Partition::row(*a)),
        Weyl(l) if l.len() <= 1 => Some(l.clone()),
        Tensor(cs) => {
            let mut parts = Vec::new();
            for c in cs {
                parts.extend_from_slice(as_divided_product(c)?.parts());
            }
            Some(Partition::from_unsorted(parts))
        }
        _ => None,
    }
}

/// Normalizes an Ext query and evaluates its normal form.
pub fn evaluate_ext_query(e: &FunctorExpr, p: u32) -> Result<ExtAnswer, KanError> {
    evaluate_ext_query_with(e, &RewriteContext::new(p))
}

pub fn evaluate_ext_query_with(e: &FunctorExpr, ctx: &RewriteContext) -> Result<ExtAnswer, KanError> {
    let derivation = normalize_with(e, ctx)?;
    evaluate_normal_form(&derivation.normal_form)
}

/// Evaluates `[Shift(] Ext(L, [Param(] G [, U)]) [, h)]` when `L` and `G` are in a
/// supported family.
pub fn evaluate_normal_form(nf: &FunctorExpr) -> Result<ExtAnswer, KanError> {
    use FunctorExpr::*;
    let unsupported = || KanError::UnsupportedNormalForm(nf.to_string());
    let (query, shift) = match nf {
        Shift(q, h) => (q.as_ref(), h.clone()),
        q => (q, ShiftSpec::none()),
    };
    let ExtQuery(left, right) = query else {
        return Err(unsupported());
    };
    let (target, space) = match right.as_ref() {
        Param(g, Space::Graded(u)) => (g.as_ref(), u.clone()),
        Param(..) => return Err(unsupported()),
        g => (g, GradedSpace::trivial()),
    };
    let (poincare, provenance) = match (left.as_ref(), target) {
        (Weyl(mu), Schur(lambda)) => {
            let poly = weyl_schur_parameterized(mu, lambda, &space)?;
            let prov = if shift.is_zero() {
                Provenance::WeylSchurTwisted
            } else {
                Provenance::WeylVsFkSchur
            };
            (poly, prov)
        }
        (l, g) => {
            let lambda = as_divided_product(l).ok_or_else(unsupported)?;
            let poly = divided_multidegree(&lambda, g, &space).map_err(|err| match err {
                ExtError::Unsupported(_) => unsupported(),
                other => other.into(),
            })?;
            (poly, Provenance::DividedTwisted)
        }
    };
    Ok(ExtAnswer {
        poincare,
        shift,
        module_label: None,
        provenance,
    })
}

/// Value of `K_i(F)` when the coinvariance hypothesis holds:
/// `I^d ⊗_{Σ_d} Ext^*(I^{d(i)}, F)`. For Schur functors indexed by
/// `F_k^i(λ)` the hypothesis is known to hold and the value is `S_λ[h^i_k]`;
/// any other input needs `hypothesis = true`.
pub fn kan_value_conditional(
    f: &FunctorExpr,
    i: u32,
    hypothesis: bool,
    ctx: &RewriteContext,
) -> Result<FunctorExpr, KanError> {
    if i == 0 {
        return Err(KanError::ZeroTwist);
    }
    let n = f.degree(ctx.p)?;
    let q = prime_power(ctx.p, i);
    if n % q != 0 {
        return Err(KanError::NonDivisibleKan {
            expr: f.to_string(),
            degree: n,
            divisor: q,
        });
    }
    if let FunctorExpr::Schur(nu) = f {
        if let Some((lambda, k)) = recognize_f_k_iterated(nu, ctx.p, i, ctx.convention) {
            if lambda.is_empty() {
                return Ok(FunctorExpr::Schur(lambda));
            }
            return Ok(FunctorExpr::shift(
                FunctorExpr::Schur(lambda),
                ShiftSpec::symbolic(i, k),
            ));
        }
    }
    if !hypothesis {
        return Err(KanError::HypothesisRequired(f.to_string()));
    }
    Ok(FunctorExpr::SymmetrizedExt(Box::new(f.clone()), i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::a_space;
    use crate::partition::f_k_iterated;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn nf(e: &FunctorExpr, prime: u32) -> FunctorExpr {
        normalize(e, prime).unwrap().normal_form
    }

    #[test]
    fn cogenerator() {
        let u = Space::named("U");
        let a = FunctorExpr::Exterior(2);
        let e = FunctorExpr::kan_right(FunctorExpr::param(FunctorExpr::Sym(6), u.clone()), a.clone());
        let d = normalize(&e, 2).unwrap();
        assert_eq!(d.normal_form, FunctorExpr::param(FunctorExpr::Sym(3), u.apply(&a, 2)));
        assert_eq!(d.trace[0].rule, Rule::KanOnCogenerator);
        assert_eq!(d.normal_form.to_string(), "Param(S[3], App(L[2], U))");
    }

    #[test]
    fn twist_collapse_example() {
        let e = FunctorExpr::kan_right(
            FunctorExpr::twist(FunctorExpr::Sym(2), 1),
            FunctorExpr::twist_functor(1),
        );
        assert_eq!(nf(&e, 2), FunctorExpr::param(FunctorExpr::Sym(2), Space::a(2, 1)));
    }

    #[test]
    fn collapsing_route() {
        let (mu, lambda) = (p(&[2, 1]), p(&[2, 1]));
        for i in 1..=2 {
            let e = FunctorExpr::ext(
                FunctorExpr::twist(FunctorExpr::Weyl(mu.clone()), i),
                FunctorExpr::twist(FunctorExpr::Schur(lambda.clone()), i),
            );
            let d = normalize(&e, 3).unwrap();
            assert_eq!(
                d.normal_form,
                FunctorExpr::ext(
                    FunctorExpr::Weyl(mu.clone()),
                    FunctorExpr::param(FunctorExpr::Schur(lambda.clone()), Space::a(3, i))
                )
            );
            let rules: Vec<Rule> = d.trace.iter().map(|s| s.rule).collect();
            assert_eq!(rules, vec![Rule::Adjunction, Rule::TwistCollapse]);
        }
    }

    #[test]
    fn fk_route() {
        let lambda = p(&[2, 1]);
        let (prime, i, j, k) = (2, 1, 1, 1);
        let nu = f_k_iterated(&lambda, prime, k, i).unwrap();
        let e = FunctorExpr::ext(
            FunctorExpr::twist(FunctorExpr::Weyl(p(&[3])), i + j),
            FunctorExpr::twist(FunctorExpr::Schur(nu), j),
        );
        let got = nf(&e, prime);
        let space = Space::a(prime, j).twisted(prime, i);
        let expect = FunctorExpr::shift(
            FunctorExpr::ext(
                FunctorExpr::Weyl(p(&[3])),
                FunctorExpr::param(FunctorExpr::Schur(lambda), space),
            ),
            ShiftSpec::symbolic(i, k),
        );
        assert_eq!(got, expect);
    }

    #[test]
    fn left_kan_on_divided() {
        let u = Space::named("U");
        let e = FunctorExpr::kan_left(
            FunctorExpr::param(FunctorExpr::Divided(4), u.clone()),
            FunctorExpr::twist_functor(1),
        );
        assert_eq!(nf(&e, 2), FunctorExpr::param(FunctorExpr::Divided(2), u.twisted(2, 1)));
    }

    #[test]
    fn dual_involution_on_normal_forms() {
        let e = FunctorExpr::kan_right(
            FunctorExpr::param(FunctorExpr::twist(FunctorExpr::Weyl(p(&[2])), 1), Space::named("U")),
            FunctorExpr::twist_functor(1),
        );
        let dd = FunctorExpr::dual(FunctorExpr::dual(e.clone()));
        assert_eq!(nf(&dd, 3), nf(&e, 3));
    }

    #[test]
    fn degree_errors() {
        let bad = FunctorExpr::ext(FunctorExpr::twist(FunctorExpr::Sym(2), 1), FunctorExpr::Sym(2));
        assert!(matches!(normalize(&bad, 2), Err(KanError::DegreeMismatch { .. })));
        let bad = FunctorExpr::kan_right(FunctorExpr::Sym(3), FunctorExpr::twist_functor(1));
        assert!(matches!(normalize(&bad, 2), Err(KanError::NonDivisibleKan { .. })));
    }

    #[test]
    fn conditional_kan_value() {
        let ctx = RewriteContext::new(3);
        let lambda = p(&[2, 1]);
        let nu = f_k_iterated(&lambda, 3, 2, 1).unwrap();
        let v = kan_value_conditional(&FunctorExpr::Schur(nu.clone()), 1, false, &ctx).unwrap();
        assert_eq!(
            v,
            FunctorExpr::shift(FunctorExpr::Schur(lambda), ShiftSpec::symbolic(1, 2))
        );
        let other = FunctorExpr::Schur(p(&[4, 2]));
        assert!(matches!(
            kan_value_conditional(&other, 1, false, &ctx),
            Err(KanError::HypothesisRequired(_))
        ));
        let asserted = kan_value_conditional(&FunctorExpr::Schur(p(&[4, 2])), 1, true, &ctx).unwrap();
        assert_eq!(asserted.degree(3).unwrap(), 2);
        let empty = kan_value_conditional(&FunctorExpr::Schur(Partition::empty()), 1, false, &ctx).unwrap();
        assert_eq!(empty, FunctorExpr::Schur(Partition::empty()));
        assert!(matches!(
            kan_value_conditional(&FunctorExpr::Sym(4), 1, true, &ctx),
            Err(KanError::NonDivisibleKan { .. })
        ));
    }

    #[test]
    fn evaluation_routes() {
        let e = FunctorExpr::ext(
            FunctorExpr::twist(FunctorExpr::Identity, 1),
            FunctorExpr::twist(FunctorExpr::Identity, 1),
        );
        let ans = evaluate_ext_query(&e, 3).unwrap();
        assert_eq!(ans.poincare, a_space(3, 1).poincare);

        let e = FunctorExpr::ext(FunctorExpr::Weyl(p(&[2])), FunctorExpr::Sym(2));
        assert_eq!(evaluate_ext_query(&e, 2).unwrap().poincare.dimension(), 1);

        let e = FunctorExpr::ext(
            FunctorExpr::twist(FunctorExpr::Sym(2), 1),
            FunctorExpr::twist(FunctorExpr::Sym(2), 1),
        );
        assert!(matches!(
            evaluate_ext_query(&e, 2),
            Err(KanError::UnsupportedNormalForm(_))
        ));
    }

    #[test]
    fn single_normal_form_for_mixed_twists() {
        let ctx = RewriteContext::new(2);
        let w = FunctorExpr::Weyl(p(&[2]));
        let left = FunctorExpr::twist(
            FunctorExpr::precompose(FunctorExpr::twist(w, 1), FunctorExpr::twist_functor(1)),
            0,
        );
        let right = FunctorExpr::twist(
            FunctorExpr::shift(
                FunctorExpr::twist(FunctorExpr::Schur(p(&[1, 1])), 1),
                ShiftSpec::value(2),
            ),
            1,
        );
        let e = FunctorExpr::ext(left, right);
        let forms = all_normal_forms(&e, &ctx).unwrap();
        assert_eq!(forms.len(), 1, "{forms:?}");
    }
}
