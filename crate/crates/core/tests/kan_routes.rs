use twistext::graded::ShiftSpec;
use twistext::kan::corpus::corpus;
use twistext::kan::{
    evaluate_ext_query, evaluate_ext_query_with, kan_value_conditional, normalize, normalize_with, parse_expr,
    parse_expr_with, redexes, FunctorExpr, KanError, RewriteContext, Rule, Space,
};
use twistext::partition::{f_k_iterated, partitions_of, Partition, QuotientConvention};

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

#[test]
fn every_step_preserves_degree() {
    for entry in corpus() {
        let d = normalize(&entry.expr, entry.p).unwrap();
        for step in &d.trace {
            assert_eq!(
                step.before.degree(entry.p).unwrap(),
                step.after.degree(entry.p).unwrap(),
                "{} at {:?} in {}",
                step.rule,
                step.path,
                entry.expr
            );
        }
        assert_eq!(d.input.degree(entry.p).unwrap(), d.normal_form.degree(entry.p).unwrap());
    }
}

#[test]
fn normal_forms_are_irreducible_and_idempotent() {
    for entry in corpus() {
        let ctx = RewriteContext::new(entry.p);
        let nf = normalize_with(&entry.expr, &ctx).unwrap().normal_form;
        assert!(redexes(&nf, &ctx).is_empty(), "{nf}");
        let again = normalize_with(&nf, &ctx).unwrap();
        assert!(again.trace.is_empty());
        assert_eq!(again.normal_form, nf);
    }
}

#[test]
fn double_dual_is_invisible() {
    for entry in corpus() {
        let dd = FunctorExpr::dual(FunctorExpr::dual(entry.expr.clone()));
        assert_eq!(
            normalize(&dd, entry.p).unwrap().normal_form,
            normalize(&entry.expr, entry.p).unwrap().normal_form,
            "{}",
            entry.expr
        );
    }
}

#[test]
fn corpus_survives_display_and_parse() {
    for entry in corpus() {
        let text = entry.expr.to_string();
        assert_eq!(parse_expr(&text, entry.p).unwrap(), entry.expr, "{text}");
    }
}

#[test]
fn textual_queries() {
    let e = parse_expr("Ext(Twist(I,2), Twist(I,2))", 2).unwrap();
    let ans = evaluate_ext_query(&e, 2).unwrap();
    assert_eq!(ans.poincare.pairs(), vec![(0, 1), (2, 1), (4, 1), (6, 1)]);

    let e = parse_expr("KanR(Twist(S[2],1), Twist(I,1))", 2).unwrap();
    assert_eq!(normalize(&e, 2).unwrap().normal_form.to_string(), "Param(S[2], A_1)");

    let e = parse_expr("KanR(Param(S[6], U), L[2])", 2).unwrap();
    let d = normalize(&e, 2).unwrap();
    assert_eq!(d.trace[0].rule, Rule::KanOnCogenerator);
    assert_eq!(d.normal_form.to_string(), "Param(S[3], App(L[2], U))");
}

#[test]
fn fk_sugar_follows_runner_convention() {
    for offset in 0..2 {
        let ctx = RewriteContext::new(2).with_convention(QuotientConvention::with_offset(offset));
        let e = parse_expr_with("Ext(Twist(Weyl[2],2), Twist(SchurFk[2; 1; 1], 1))", &ctx).unwrap();
        let ans = evaluate_ext_query_with(&e, &ctx).unwrap();
        assert_eq!(ans.shift, ShiftSpec::symbolic(1, 1), "offset {offset}");
    }
}

#[test]
fn conditional_values_on_fk_schur() {
    for prime in [2u32, 3] {
        let ctx = RewriteContext::new(prime);
        for i in 1..=2 {
            for d in 1..=3 {
                for lambda in partitions_of(d) {
                    for k in 0..prime {
                        let nu = f_k_iterated(&lambda, prime, k, i).unwrap();
                        let v = kan_value_conditional(&FunctorExpr::Schur(nu), i, false, &ctx).unwrap();
                        assert_eq!(
                            v,
                            FunctorExpr::shift(FunctorExpr::Schur(lambda.clone()), ShiftSpec::symbolic(i, k))
                        );
                    }
                }
            }
        }
    }
    let ctx = RewriteContext::new(2);
    let not_fk = FunctorExpr::Schur(p(&[2, 2]));
    assert!(matches!(
        kan_value_conditional(&not_fk, 1, false, &ctx),
        Err(KanError::HypothesisRequired(_))
    ));
    assert!(matches!(
        kan_value_conditional(&not_fk, 0, true, &ctx),
        Err(KanError::ZeroTwist)
    ));
}

#[test]
fn unevaluated_shapes_report_unsupported() {
    let e = FunctorExpr::ext(
        FunctorExpr::twist(FunctorExpr::Sym(2), 1),
        FunctorExpr::twist(FunctorExpr::Sym(2), 1),
    );
    assert!(matches!(
        evaluate_ext_query(&e, 2),
        Err(KanError::UnsupportedNormalForm(_))
    ));
    let u = Space::named("U");
    let e = FunctorExpr::kan_right(
        FunctorExpr::param(FunctorExpr::Sym(3), u),
        FunctorExpr::twist_functor(1),
    );
    assert!(matches!(normalize(&e, 2), Err(KanError::NonDivisibleKan { .. })));
}
