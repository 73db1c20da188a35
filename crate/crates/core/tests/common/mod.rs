//! Shared test oracles, written independently of the engine: their own
//! child indexing, their own redex matching, breadth-first (not pre-order,
//! not bottom-up) search, and a plain find-and-rewrite fixpoint loop.

// Each test target includes this module separately and uses its own slice.
#![allow(dead_code)]

use std::collections::VecDeque;
use std::sync::Arc;

use currycomb::eval::{eval_values, Value};
use currycomb::ir::{CombKind, Expr, Program};
use currycomb::strategy::{Stage, StrategyKind};
use currycomb::transforms::rule;

/// The two stages of the default simplification pipeline, as rule names.
pub const SIMPLIFY_STAGES: &[&[&str]] = &[&["orFloat"], &["unDollar", "caseCancel"]];
/// The single-stage normalization pipeline.
pub const ANF_STAGES: &[&[&str]] = &[&["anf"]];

/// Build engine stages from rule names under one strategy.
pub fn engine_stages(stages: &[&[&str]], strategy: StrategyKind) -> Vec<Stage> {
    stages
        .iter()
        .map(|names| Stage {
            strategy,
            rules: names.iter().map(|n| rule(n).expect("known rule")).collect(),
        })
        .collect()
}

/// Child list of a node, restating the indexing contract from scratch:
/// combination arguments count from 0; `Or` is 0/1; `Free` exposes only
/// its body, at index 1; `Let` is bound 0, body 1; `Case` is scrutinee 0,
/// then branch bodies from 1.
fn children(e: &Arc<Expr>) -> Vec<(usize, Arc<Expr>)> {
    match &**e {
        Expr::Var { .. } => vec![],
        Expr::Comb { args, .. } => args.iter().cloned().enumerate().collect(),
        Expr::Or { lhs, rhs } => vec![(0, Arc::clone(lhs)), (1, Arc::clone(rhs))],
        Expr::Free { body, .. } => vec![(1, Arc::clone(body))],
        Expr::Let { bound, body, .. } => vec![(0, Arc::clone(bound)), (1, Arc::clone(body))],
        Expr::Case { scrutinee, branches } => {
            let mut v = vec![(0, Arc::clone(scrutinee))];
            v.extend(branches.iter().enumerate().map(|(i, b)| (i + 1, Arc::clone(&b.body))));
            v
        }
    }
}

fn rebuild(e: &Arc<Expr>, idx: usize, new: Arc<Expr>) -> Arc<Expr> {
    match &**e {
        Expr::Var { .. } => unreachable!("variables have no children"),
        Expr::Comb { kind, name, args } => {
            let mut args = args.clone();
            args[idx] = new;
            Arc::new(Expr::Comb { kind: *kind, name: name.clone(), args })
        }
        Expr::Or { lhs, rhs } => match idx {
            0 => Arc::new(Expr::Or { lhs: new, rhs: Arc::clone(rhs) }),
            1 => Arc::new(Expr::Or { lhs: Arc::clone(lhs), rhs: new }),
            _ => unreachable!(),
        },
        Expr::Free { vars, .. } => {
            assert_eq!(idx, 1, "free blocks expose only their body");
            Arc::new(Expr::Free { vars: vars.clone(), body: new })
        }
        Expr::Let { var, bound, body } => match idx {
            0 => Arc::new(Expr::Let { var: *var, bound: new, body: Arc::clone(body) }),
            1 => Arc::new(Expr::Let { var: *var, bound: Arc::clone(bound), body: new }),
            _ => unreachable!(),
        },
        Expr::Case { scrutinee, branches } => {
            if idx == 0 {
                Arc::new(Expr::Case { scrutinee: new, branches: branches.clone() })
            } else {
                let mut branches = branches.clone();
                branches[idx - 1].body = new;
                Arc::new(Expr::Case { scrutinee: Arc::clone(scrutinee), branches })
            }
        }
    }
}

fn rebuild_along(e: &Arc<Expr>, path: &[usize], new: Arc<Expr>) -> Arc<Expr> {
    match path.split_first() {
        None => new,
        Some((&i, rest)) => {
            let child = children(e)
                .into_iter()
                .find(|(idx, _)| *idx == i)
                .map(|(_, c)| c)
                .expect("path exists");
            rebuild(e, i, rebuild_along(&child, rest, new))
        }
    }
}

fn is_var(e: &Expr) -> bool {
    matches!(e, Expr::Var { .. })
}

/// Try one named rule at one node. Returns the replacement and the number
/// of fresh variables consumed.
fn try_rule(name: &str, e: &Arc<Expr>, next_var: usize) -> Option<(Arc<Expr>, usize)> {
    match name {
        "orFloat" => {
            let Expr::Or { lhs, rhs } = &**e else { return None };
            if let Expr::Let { var, bound, body } = &**lhs {
                let or = Arc::new(Expr::Or { lhs: Arc::clone(body), rhs: Arc::clone(rhs) });
                return Some((
                    Arc::new(Expr::Let { var: *var, bound: Arc::clone(bound), body: or }),
                    0,
                ));
            }
            if let Expr::Let { var, bound, body } = &**rhs {
                let or = Arc::new(Expr::Or { lhs: Arc::clone(lhs), rhs: Arc::clone(body) });
                return Some((
                    Arc::new(Expr::Let { var: *var, bound: Arc::clone(bound), body: or }),
                    0,
                ));
            }
            None
        }
        "unDollar" => {
            let Expr::Comb { kind: CombKind::FuncCall, name, args } = &**e else { return None };
            if name != "$" || args.len() != 2 {
                return None;
            }
            let Expr::Comb { kind: CombKind::FuncPartCall(missing), name: f, args: given } =
                &*args[0]
            else {
                return None;
            };
            let mut all = given.clone();
            all.push(Arc::clone(&args[1]));
            let kind = match *missing {
                0 => return None,
                1 => CombKind::FuncCall,
                m => CombKind::FuncPartCall(m - 1),
            };
            Some((Arc::new(Expr::Comb { kind, name: f.clone(), args: all }), 0))
        }
        "caseCancel" => {
            let Expr::Case { scrutinee, branches } = &**e else { return None };
            let Expr::Comb { kind: CombKind::ConsCall, name: c, args } = &**scrutinee else {
                return None;
            };
            if !args.is_empty() {
                return None;
            }
            branches
                .iter()
                .find(|b| b.pattern.name == *c && b.pattern.vars.is_empty())
                .map(|b| (Arc::clone(&b.body), 0))
        }
        "anf" => {
            let Expr::Comb { kind, name, args } = &**e else { return None };
            let i = args.iter().position(|a| !is_var(a))?;
            let hoisted = Arc::clone(&args[i]);
            let mut args = args.clone();
            args[i] = Arc::new(Expr::Var { idx: next_var });
            let call = Arc::new(Expr::Comb { kind: *kind, name: name.clone(), args });
            Some((
                Arc::new(Expr::Let { var: next_var, bound: hoisted, body: call }),
                1,
            ))
        }
        other => panic!("oracle knows no rule `{other}`"),
    }
}

/// Breadth-first search for the first node where any of the rules (tried
/// in the given order) applies; rewrite it in place.
fn bfs_rewrite(
    rules: &[&str],
    root: &Arc<Expr>,
    next_var: usize,
) -> Option<(Arc<Expr>, usize)> {
    let mut queue: VecDeque<(Vec<usize>, Arc<Expr>)> =
        VecDeque::from([(Vec::new(), Arc::clone(root))]);
    while let Some((path, node)) = queue.pop_front() {
        for rule_name in rules {
            if let Some((replacement, used)) = try_rule(rule_name, &node, next_var) {
                return Some((rebuild_along(root, &path, replacement), used));
            }
        }
        for (i, child) in children(&node) {
            let mut p = path.clone();
            p.push(i);
            queue.push_back((p, child));
        }
    }
    None
}

/// Independent fresh-variable start: one past the largest index appearing
/// anywhere (uses, let/free binders, pattern variables), at least `arity`.
pub fn naive_fresh(body: &Arc<Expr>, arity: usize) -> usize {
    fn see(v: usize, max: &mut usize) {
        if v + 1 > *max {
            *max = v + 1;
        }
    }
    fn scan(e: &Expr, max: &mut usize) {
        match e {
            Expr::Var { idx } => see(*idx, max),
            Expr::Comb { args, .. } => args.iter().for_each(|a| scan(a, max)),
            Expr::Or { lhs, rhs } => {
                scan(lhs, max);
                scan(rhs, max);
            }
            Expr::Free { vars, body } => {
                vars.iter().for_each(|v| see(*v, max));
                scan(body, max);
            }
            Expr::Let { var, bound, body } => {
                see(*var, max);
                scan(bound, max);
                scan(body, max);
            }
            Expr::Case { scrutinee, branches } => {
                scan(scrutinee, max);
                for b in branches {
                    b.pattern.vars.iter().for_each(|v| see(*v, max));
                    scan(&b.body, max);
                }
            }
        }
    }
    let mut max = 0usize;
    scan(body, &mut max);
    max.max(arity)
}

/// Rewrite to fixpoint with one rule set; returns the normal form and the
/// number of rewrites.
pub fn naive_stage(
    rules: &[&str],
    body: &Arc<Expr>,
    next_var: &mut usize,
) -> (Arc<Expr>, usize) {
    let mut current = Arc::clone(body);
    let mut count = 0usize;
    while let Some((next, used)) = bfs_rewrite(rules, &current, *next_var) {
        current = next;
        *next_var += used;
        count += 1;
        assert!(count <= 1_000_000, "oracle did not terminate");
    }
    (current, count)
}

/// Per-function rewrite counts of a staged pipeline, by brute force.
pub fn naive_pipeline_counts(stages: &[&[&str]], p: &Program) -> Vec<usize> {
    p.functions
        .iter()
        .map(|f| {
            let mut next_var = naive_fresh(&f.body, f.arity);
            let mut body = Arc::clone(&f.body);
            let mut total = 0usize;
            for rules in stages {
                let (next, count) = naive_stage(rules, &body, &mut next_var);
                body = next;
                total += count;
            }
            total
        })
        .collect()
}

/// Per-function count of non-variable argument positions: the exact number
/// of bindings normalization must introduce.
pub fn static_anf_counts(p: &Program) -> Vec<usize> {
    fn count(e: &Expr) -> usize {
        let mut here = 0usize;
        if let Expr::Comb { args, .. } = e {
            here += args.iter().filter(|a| !is_var(a)).count();
        }
        let mut below = 0usize;
        match e {
            Expr::Var { .. } => {}
            Expr::Comb { args, .. } => below = args.iter().map(|a| count(a)).sum(),
            Expr::Or { lhs, rhs } => below = count(lhs) + count(rhs),
            Expr::Free { body, .. } => below = count(body),
            Expr::Let { bound, body, .. } => below = count(bound) + count(body),
            Expr::Case { scrutinee, branches } => {
                below = count(scrutinee) + branches.iter().map(|b| count(&b.body)).sum::<usize>();
            }
        }
        here + below
    }
    p.functions.iter().map(|f| count(&f.body)).collect()
}

/// Values of a closed call, sorted for multiset comparison.
pub fn sorted_values(p: &Program, call: &Arc<Expr>) -> Vec<Value> {
    let mut v = eval_values(p, call)
        .unwrap_or_else(|e| panic!("{}: evaluation failed: {e}", p.module_name));
    v.sort();
    v
}

/// Everything the agreement and idempotence criteria run over: the hand
/// fixtures plus the generated suite.
pub fn full_corpus() -> Vec<Program> {
    let mut all = currycomb::corpus::fixtures();
    all.extend(currycomb::corpus::generated_suite());
    all
}

/// Proptest strategies shared by the property and acceptance suites.
pub mod gen {
    use std::sync::Arc;

    use currycomb::ir::{Branch, Expr};
    use currycomb::Choices;
    use proptest::prelude::*;

    const CONS_NAMES: &[&str] = &["True", "False", "Z", "S", ":", "[]", "Pair"];
    const FUNC_NAMES: &[&str] = &["f", "g", "not", "insert"];
    const CANCEL_NAMES: &[&str] = &["True", "Z", "[]"];

    fn cons_name() -> impl Strategy<Value = String> {
        prop::sample::select(CONS_NAMES).prop_map(str::to_string)
    }

    fn func_name() -> impl Strategy<Value = String> {
        prop::sample::select(FUNC_NAMES).prop_map(str::to_string)
    }

    fn leaf() -> impl Strategy<Value = Arc<Expr>> {
        prop_oneof![
            (0usize..12).prop_map(Expr::var),
            cons_name().prop_map(|n| Expr::cons_call(n, vec![])),
        ]
    }

    /// Arbitrary structurally valid expressions: every node type, any
    /// nesting, binders drawn from a disjoint index range.
    pub fn arb_expr() -> impl Strategy<Value = Arc<Expr>> {
        leaf().prop_recursive(5, 48, 4, |inner| {
            prop_oneof![
                (cons_name(), prop::collection::vec(inner.clone(), 0..4))
                    .prop_map(|(n, a)| Expr::cons_call(n, a)),
                (func_name(), prop::collection::vec(inner.clone(), 0..4))
                    .prop_map(|(n, a)| Expr::func_call(n, a)),
                (func_name(), prop::collection::vec(inner.clone(), 0..3), 1usize..3)
                    .prop_map(|(n, a, m)| Expr::func_part(n, a, m)),
                (cons_name(), prop::collection::vec(inner.clone(), 0..3), 1usize..3)
                    .prop_map(|(n, a, m)| Expr::cons_part(n, a, m)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::or(l, r)),
                (12usize..24, inner.clone(), inner.clone())
                    .prop_map(|(v, b, e)| Expr::let_in(v, b, e)),
                (prop::collection::vec(12usize..24, 1..3), inner.clone())
                    .prop_map(|(vs, b)| Expr::free(vs, b)),
                (inner.clone(), prop::collection::vec((cons_name(), inner.clone()), 1..4))
                    .prop_map(|(scrut, arms)| {
                        let branches = arms
                            .into_iter()
                            .map(|(n, b)| Branch::new(n, vec![], b))
                            .collect();
                        Expr::case(scrut, branches)
                    }),
            ]
        })
    }

    /// Expressions biased toward rule redexes at the root, so agreement
    /// properties exercise the applying case, not just mutual failure.
    pub fn redex_expr() -> impl Strategy<Value = Arc<Expr>> {
        let plain = arb_expr();
        prop_oneof![
            // apply-operator redex
            (func_name(), prop::collection::vec(leaf(), 0..3), 1usize..4, leaf()).prop_map(
                |(f, given, missing, x)| Expr::func_call(
                    "$",
                    vec![Expr::func_part(f, given, missing), x],
                )
            ),
            // let under a disjunction, either or both sides
            (12usize..20, leaf(), arb_expr(), arb_expr(), any::<bool>()).prop_map(
                |(v, b, e1, e2, left)| {
                    let l = Expr::let_in(v, b, e1);
                    if left {
                        Expr::or(l, e2)
                    } else {
                        Expr::or(e2, l)
                    }
                }
            ),
            // cancelable case: scrutinee constructor present among branches
            (prop::sample::select(CANCEL_NAMES), arb_expr(), arb_expr()).prop_map(
                |(c, body, other)| Expr::case(
                    Expr::cons_call(c, vec![]),
                    vec![
                        Branch::new(c, vec![], body),
                        Branch::new("Other", vec![], other),
                    ],
                )
            ),
            // combination with a non-variable argument
            (cons_name(), arb_expr(), prop::collection::vec(leaf(), 0..3)).prop_map(
                |(n, fat, mut rest)| {
                    rest.insert(0, fat);
                    Expr::cons_call(n, rest)
                }
            ),
            plain,
        ]
    }

    /// A first-order recipe for a nondeterministic computation, so shapes
    /// are generated data and laws run over the reconstructed engine.
    #[derive(Debug, Clone)]
    pub enum Tree {
        Leaf(Vec<i32>),
        Choose(Box<Tree>, Box<Tree>),
        Bind(Box<Tree>, u8),
        Map(Box<Tree>, i32),
        Filter(Box<Tree>, i32),
    }

    /// Indexed function table for bind laws.
    pub fn table(idx: u8) -> impl Fn(i32) -> Choices<i32> + Clone {
        move |x| match idx % 4 {
            0 => Choices::pure(x),
            1 => Choices::fail(),
            2 => Choices::from_vec(vec![x, x + 1]),
            _ => {
                if x % 2 == 0 {
                    Choices::pure(x / 2)
                } else {
                    Choices::fail()
                }
            }
        }
    }

    pub fn to_choices(t: &Tree) -> Choices<i32> {
        match t {
            Tree::Leaf(items) => Choices::from_vec(items.clone()),
            Tree::Choose(a, b) => to_choices(a).choose(&to_choices(b)),
            Tree::Bind(a, idx) => {
                let f = table(*idx);
                to_choices(a).bind(f)
            }
            Tree::Map(a, k) => {
                let k = *k;
                to_choices(a).map(move |x| x.wrapping_add(k))
            }
            Tree::Filter(a, k) => {
                let k = *k;
                to_choices(a).filter(move |x| x.wrapping_rem(3) != k.wrapping_rem(3))
            }
        }
    }

    pub fn arb_tree() -> impl Strategy<Value = Tree> {
        let leaf = prop::collection::vec(-8i32..8, 0..4).prop_map(Tree::Leaf);
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Tree::Choose(Box::new(a), Box::new(b))),
                (inner.clone(), any::<u8>()).prop_map(|(a, i)| Tree::Bind(Box::new(a), i)),
                (inner.clone(), -4i32..4).prop_map(|(a, k)| Tree::Map(Box::new(a), k)),
                (inner.clone(), 0i32..3).prop_map(|(a, k)| Tree::Filter(Box::new(a), k)),
            ]
        })
    }
}

/// Closed calls for a generated deterministic module: each function is
/// applied to uniform leaves of each constructor family, so at least one
/// call per function selects matching case branches.
pub fn generated_calls(p: &Program) -> Vec<Arc<Expr>> {
    let mut calls = Vec::new();
    for f in &p.functions {
        for leaf in ["Z", "True", "[]"] {
            let args = (0..f.arity)
                .map(|_| Arc::new(Expr::Comb {
                    kind: CombKind::ConsCall,
                    name: leaf.to_string(),
                    args: vec![],
                }))
                .collect();
            calls.push(Arc::new(Expr::Comb {
                kind: CombKind::FuncCall,
                name: f.name.clone(),
                args,
            }));
        }
    }
    calls
}
