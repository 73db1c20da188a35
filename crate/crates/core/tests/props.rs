//! Property suite: structural invariants beyond the acceptance criteria.

mod common;

use common::gen::arb_expr;
use currycomb::ir::{alpha_eq, Expr};
use currycomb::strategy::{new_var, replay, sub_exp_of, StrategyKind};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn expr_json_round_trips(e in arb_expr()) {
        let text = serde_json::to_string(&*e).unwrap();
        let back: Expr = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &*e);
    }

    #[test]
    fn alpha_eq_is_reflexive(e in arb_expr()) {
        prop_assert!(alpha_eq(&e, &e));
    }

    #[test]
    fn fresh_variable_scan_matches_the_oracle(e in arb_expr()) {
        prop_assert_eq!(new_var(&e), common::naive_fresh(&e, 0));
    }

    #[test]
    fn subexpression_enumeration_is_repeatable_and_complete(e in arb_expr()) {
        let first: Vec<_> = sub_exp_of(&e).iter().collect();
        let second: Vec<_> = sub_exp_of(&e).iter().collect();
        prop_assert_eq!(&first, &second, "re-enumeration must not drift");
        prop_assert_eq!(first.len(), e.node_count());
        prop_assert!(first[0].0.is_empty(), "pre-order starts at the root");
        prop_assert_eq!(&first[0].1, &e);
    }
}

/// Every pipeline output still satisfies the loader invariants.
#[test]
fn pipeline_outputs_stay_valid_programs() {
    for p in common::full_corpus() {
        for stages in [common::SIMPLIFY_STAGES, common::ANF_STAGES] {
            for strategy in
                [StrategyKind::Chaotic, StrategyKind::Mixed, StrategyKind::Deterministic]
            {
                let engine = common::engine_stages(stages, strategy);
                let (out, _) =
                    currycomb::strategy::apply_pipeline(&engine, &p, 1_000_000).unwrap();
                out.validate().unwrap_or_else(|e| {
                    panic!("{} under {strategy:?} {stages:?}: {e}", p.module_name)
                });
                let text = currycomb::ir::encode_program(&out);
                assert_eq!(currycomb::ir::decode_program(&text).unwrap(), out);
            }
        }
    }
}

/// A recorded derivation replays to the exact engine output, step indices
/// strictly increasing from one.
#[test]
fn traces_replay_to_the_exact_output() {
    for p in common::full_corpus() {
        for stages in [common::SIMPLIFY_STAGES, common::ANF_STAGES] {
            for strategy in
                [StrategyKind::Chaotic, StrategyKind::Mixed, StrategyKind::Deterministic]
            {
                let engine = common::engine_stages(stages, strategy);
                let (out, report) =
                    currycomb::strategy::apply_pipeline(&engine, &p, 1_000_000).unwrap();
                for (i, step) in report.trace.iter().enumerate() {
                    assert_eq!(step.step_index, i + 1);
                }
                let replayed = replay(&p, &report.trace).unwrap_or_else(|e| {
                    panic!("{} under {strategy:?}: {e}", p.module_name)
                });
                assert_eq!(replayed, out, "{}: replay drifted", p.module_name);
            }
        }
    }
}
