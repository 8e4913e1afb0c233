//! Fixed expression corpus for route-equivalence and confluence checks.

use crate::extcalc::{ext_divided_vs_twisted, ext_weyl_schur_twisted, ext_weyl_vs_fk_schur, ExtAnswer, ExtError};
use crate::graded::ShiftSpec;
use crate::partition::{f_k_iterated, partitions_of, Partition};

use super::expr::{FunctorExpr, Space};

/// The closed-formula evaluation an expression must agree with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DirectCall {
    DividedTwisted {
        lambda: Partition,
        functor: FunctorExpr,
        i: u32,
    },
    WeylSchurTwisted {
        mu: Partition,
        lambda: Partition,
        i: u32,
    },
    WeylVsFkSchur {
        mu: Partition,
        lambda: Partition,
        i: u32,
        j: u32,
        k: u32,
    },
}

impl DirectCall {
    pub fn evaluate(&self, p: u32) -> Result<ExtAnswer, ExtError> {
        match self {
            DirectCall::DividedTwisted { lambda, functor, i } => ext_divided_vs_twisted(lambda, functor, p, *i),
            DirectCall::WeylSchurTwisted { mu, lambda, i } => ext_weyl_schur_twisted(mu, lambda, p, *i),
            DirectCall::WeylVsFkSchur { mu, lambda, i, j, k } => ext_weyl_vs_fk_schur(mu, lambda, p, *i, *j, *k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub p: u32,
    pub expr: FunctorExpr,
    /// `None` for expressions whose normal form is only checked for confluence.
    pub direct: Option<DirectCall>,
    /// Extra shift carried by the expression on top of the direct answer.
    pub extra_shift: ShiftSpec,
}

impl CorpusEntry {
    fn routed(p: u32, expr: FunctorExpr, direct: DirectCall) -> Self {
        CorpusEntry {
            p,
            expr,
            direct: Some(direct),
            extra_shift: ShiftSpec::none(),
        }
    }

    fn shape_only(p: u32, expr: FunctorExpr) -> Self {
        CorpusEntry {
            p,
            expr,
            direct: None,
            extra_shift: ShiftSpec::none(),
        }
    }

    /// The direct answer with the extra shift applied.
    pub fn expected(&self) -> Option<Result<ExtAnswer, ExtError>> {
        let direct = self.direct.as_ref()?;
        Some(direct.evaluate(self.p).map(|mut a| {
            a.shift = a.shift.compose(&self.extra_shift);
            a
        }))
    }
}

const TWISTS: [(u32, u32); 4] = [(2, 1), (2, 2), (3, 1), (3, 2)];

fn twisted_pair(left: FunctorExpr, right: FunctorExpr, i: u32) -> FunctorExpr {
    FunctorExpr::ext(FunctorExpr::twist(left, i), FunctorExpr::twist(right, i))
}

fn identity_routes(out: &mut Vec<CorpusEntry>) {
    for (p, i) in TWISTS {
        let direct = DirectCall::DividedTwisted {
            lambda: Partition::row(1),
            functor: FunctorExpr::Identity,
            i,
        };
        out.push(CorpusEntry::routed(
            p,
            twisted_pair(FunctorExpr::Identity, FunctorExpr::Identity, i),
            direct.clone(),
        ));
        let composed = FunctorExpr::ext(
            FunctorExpr::precompose(FunctorExpr::Identity, FunctorExpr::twist_functor(i)),
            FunctorExpr::twist_functor(i),
        );
        out.push(CorpusEntry::routed(p, composed, direct));
    }
}

fn divided_routes(out: &mut Vec<CorpusEntry>) {
    for (p, i) in TWISTS {
        let max_d = if (p, i) == (2, 1) { 4 } else { 3 };
        for d in 2..=max_d {
            let mut targets = vec![FunctorExpr::Sym(d), FunctorExpr::Exterior(d)];
            targets.extend(partitions_of(d).into_iter().map(FunctorExpr::Schur));
            targets.push(FunctorExpr::Tensor(vec![
                FunctorExpr::Identity,
                FunctorExpr::Exterior(d - 1),
            ]));
            for lambda in partitions_of(d) {
                for f in &targets {
                    let expr = twisted_pair(FunctorExpr::divided_product(&lambda), f.clone(), i);
                    let direct = DirectCall::DividedTwisted {
                        lambda: lambda.clone(),
                        functor: f.clone(),
                        i,
                    };
                    out.push(CorpusEntry::routed(p, expr, direct));
                }
            }
        }
    }
}

fn weyl_schur_routes(out: &mut Vec<CorpusEntry>) {
    for (p, i) in TWISTS {
        for d in 1..=3 {
            for mu in partitions_of(d) {
                for lambda in partitions_of(d) {
                    let expr = twisted_pair(FunctorExpr::Weyl(mu.clone()), FunctorExpr::Schur(lambda.clone()), i);
                    let direct = DirectCall::WeylSchurTwisted {
                        mu: mu.clone(),
                        lambda: lambda.clone(),
                        i,
                    };
                    out.push(CorpusEntry::routed(p, expr, direct));
                }
            }
        }
    }
}

fn fk_routes(out: &mut Vec<CorpusEntry>) {
    for (p, i) in TWISTS {
        for j in 0..=1 {
            for k in 0..p {
                for d in 1..=2 {
                    for lambda in partitions_of(d) {
                        let nu = f_k_iterated(&lambda, p, k, i).expect("k < p and i > 0");
                        for mu in partitions_of(d) {
                            let expr = FunctorExpr::ext(
                                FunctorExpr::twist(FunctorExpr::Weyl(mu.clone()), i + j),
                                FunctorExpr::twist(FunctorExpr::Schur(nu.clone()), j),
                            );
                            let direct = DirectCall::WeylVsFkSchur {
                                mu,
                                lambda: lambda.clone(),
                                i,
                                j,
                                k,
                            };
                            out.push(CorpusEntry::routed(p, expr, direct));
                        }
                    }
                }
            }
        }
    }
}

/// Rewrites of routed queries that exercise duals, explicit precomposition and shifts.
fn disguised_routes(out: &mut Vec<CorpusEntry>) {
    let l21 = Partition::new(vec![2, 1]).expect("valid");
    let l2 = Partition::row(2);
    for (p, i) in TWISTS {
        let direct = DirectCall::WeylSchurTwisted {
            mu: l21.clone(),
            lambda: l21.clone(),
            i,
        };
        let dual_left = FunctorExpr::ext(
            FunctorExpr::dual(FunctorExpr::twist(FunctorExpr::Schur(l21.clone()), i)),
            FunctorExpr::twist(FunctorExpr::Schur(l21.clone()), i),
        );
        out.push(CorpusEntry::routed(p, dual_left, direct.clone()));

        let double_dual = FunctorExpr::ext(
            FunctorExpr::twist(FunctorExpr::Weyl(l21.clone()), i),
            FunctorExpr::dual(FunctorExpr::dual(FunctorExpr::twist(
                FunctorExpr::Schur(l21.clone()),
                i,
            ))),
        );
        out.push(CorpusEntry::routed(p, double_dual, direct.clone()));

        let composed = FunctorExpr::ext(
            FunctorExpr::precompose(FunctorExpr::Weyl(l21.clone()), FunctorExpr::twist_functor(i)),
            FunctorExpr::precompose(FunctorExpr::Schur(l21.clone()), FunctorExpr::twist_functor(i)),
        );
        out.push(CorpusEntry::routed(p, composed, direct.clone()));

        if i == 2 {
            let split = FunctorExpr::ext(
                FunctorExpr::twist(FunctorExpr::twist(FunctorExpr::Weyl(l21.clone()), 1), 1),
                FunctorExpr::twist(FunctorExpr::Schur(l21.clone()), 2),
            );
            out.push(CorpusEntry::routed(p, split, direct.clone()));
        }

        let mut shifted = CorpusEntry::routed(
            p,
            FunctorExpr::ext(
                FunctorExpr::twist(FunctorExpr::Weyl(l21.clone()), i),
                FunctorExpr::shift(
                    FunctorExpr::twist(FunctorExpr::Schur(l21.clone()), i),
                    ShiftSpec::value(3),
                ),
            ),
            direct.clone(),
        );
        shifted.extra_shift = ShiftSpec::value(3);
        out.push(shifted);

        let mut left_shift = CorpusEntry::routed(
            p,
            FunctorExpr::ext(
                FunctorExpr::shift(
                    FunctorExpr::twist(FunctorExpr::Weyl(l21.clone()), i),
                    ShiftSpec::value(2),
                ),
                FunctorExpr::twist(FunctorExpr::Schur(l21.clone()), i),
            ),
            direct,
        );
        left_shift.extra_shift = ShiftSpec::value(-2);
        out.push(left_shift);

        let divided_dual = FunctorExpr::ext(
            FunctorExpr::twist(FunctorExpr::dual(FunctorExpr::Sym(2)), i),
            FunctorExpr::twist(
                FunctorExpr::Tensor(vec![
                    FunctorExpr::Tensor(vec![FunctorExpr::Identity]),
                    FunctorExpr::Identity,
                ]),
                i,
            ),
        );
        out.push(CorpusEntry::routed(
            p,
            divided_dual,
            DirectCall::DividedTwisted {
                lambda: l2.clone(),
                functor: FunctorExpr::Tensor(vec![FunctorExpr::Identity, FunctorExpr::Identity]),
                i,
            },
        ));
    }
}

/// Expressions with no closed-form evaluation, kept for the confluence check.
fn unevaluated_shapes(out: &mut Vec<CorpusEntry>) {
    let u = Space::named("U");
    let l2 = Partition::row(2);
    for (p, i) in TWISTS {
        let q = crate::graded::prime_power(p, i);
        out.push(CorpusEntry::shape_only(
            p,
            FunctorExpr::kan_right(
                FunctorExpr::param(FunctorExpr::Sym(2 * q), u.clone()),
                FunctorExpr::twist_functor(i),
            ),
        ));
        out.push(CorpusEntry::shape_only(
            p,
            FunctorExpr::kan_left(
                FunctorExpr::param(FunctorExpr::Divided(q), u.clone()),
                FunctorExpr::twist_functor(i),
            ),
        ));
        out.push(CorpusEntry::shape_only(
            p,
            FunctorExpr::kan_left(
                FunctorExpr::twist(FunctorExpr::Weyl(l2.clone()), i),
                FunctorExpr::twist_functor(i),
            ),
        ));
        out.push(CorpusEntry::shape_only(
            p,
            FunctorExpr::kan_right(
                FunctorExpr::param(FunctorExpr::twist(FunctorExpr::Schur(l2.clone()), i), u.clone()),
                FunctorExpr::twist_functor(i),
            ),
        ));
        out.push(CorpusEntry::shape_only(
            p,
            FunctorExpr::kan_right(FunctorExpr::Sym(2 * p as usize), FunctorExpr::Sym(p as usize)),
        ));
        out.push(CorpusEntry::shape_only(
            p,
            FunctorExpr::ext(
                FunctorExpr::precompose(FunctorExpr::Sym(2), FunctorExpr::Exterior(2)),
                FunctorExpr::Tensor(vec![FunctorExpr::Exterior(2), FunctorExpr::Sym(2)]),
            ),
        ));
        out.push(CorpusEntry::shape_only(
            p,
            FunctorExpr::dual(FunctorExpr::shift(
                FunctorExpr::twist(FunctorExpr::Param(Box::new(FunctorExpr::Exterior(2)), u.dual()), i),
                ShiftSpec::symbolic(i, 0),
            )),
        ));
    }
}

/// The corpus: identity, divided-power, Weyl–Schur and `F_k` routes for
/// `p ∈ {2, 3}` and `i ≤ 2`, plus disguised variants and unevaluated shapes.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    identity_routes(&mut out);
    divided_routes(&mut out);
    weyl_schur_routes(&mut out);
    fk_routes(&mut out);
    disguised_routes(&mut out);
    unevaluated_shapes(&mut out);
    out
}
