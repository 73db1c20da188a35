//! Bundled corpus: hand-written fixture modules (also shipped as JSON under
//! `corpus/`) plus a seeded generator for larger programs.
//!
//! Generated programs obey a discipline that keeps the test oracles exact:
//!
//! * Call graphs are acyclic (function `i` only calls functions before it),
//!   so evaluation terminates without leaning on the depth limit.
//! * Branches of a case over a known constructor that cannot be selected
//!   contain no redex of any rule. Bottom-up strategies rewrite below a
//!   node before canceling it, root-first search cancels first; dead
//!   branches must not make those orders observable in rewrite counts.
//! * The body of the branch a cancelable case selects is never a let at
//!   its root: canceling would otherwise expose a new let-under-or redex
//!   after the floating stage already finished, breaking idempotence.
//! * Let-bound expressions are deterministic, matching the evaluator's
//!   no-sharing semantics.
//! * Deterministic-only programs (the differential-testing subset) never
//!   build partial-application values that could flow into a case
//!   scrutinee: apply-operator redexes saturate in one step.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ir::{Branch, Expr, Function, Program};

// ── hand fixtures ───────────────────────────────────────────────────

fn one() -> Arc<Expr> {
    Expr::cons_call("1", vec![])
}

fn not_function() -> Function {
    Function {
        name: "not".into(),
        arity: 1,
        body: Expr::case(
            Expr::var(0),
            vec![
                Branch::new("False", vec![], Expr::cons_call("True", vec![])),
                Branch::new("True", vec![], Expr::cons_call("False", vec![])),
            ],
        ),
    }
}

/// Boolean negation.
pub fn not_program() -> Program {
    Program { module_name: "Not".into(), functions: vec![not_function()] }
}

/// Non-deterministic list insertion: `x : xs` or insert into the tail.
pub fn insert_program() -> Program {
    Program {
        module_name: "Insert".into(),
        functions: vec![Function {
            name: "insert".into(),
            arity: 2,
            body: Expr::or(
                Expr::cons_call(":", vec![Expr::var(0), Expr::var(1)]),
                Expr::case(
                    Expr::var(1),
                    vec![Branch::new(
                        ":",
                        vec![2, 3],
                        Expr::cons_call(
                            ":",
                            vec![
                                Expr::var(2),
                                Expr::func_call("insert", vec![Expr::var(0), Expr::var(3)]),
                            ],
                        ),
                    )],
                ),
            ),
        }],
    }
}

/// `main = not $ not True`, with `not` defined alongside.
pub fn dollar_program() -> Program {
    Program {
        module_name: "Dollar".into(),
        functions: vec![
            not_function(),
            Function {
                name: "main".into(),
                arity: 0,
                body: Expr::func_call(
                    "$",
                    vec![
                        Expr::func_part("not", vec![], 1),
                        Expr::func_call("not", vec![Expr::cons_call("True", vec![])]),
                    ],
                ),
            },
        ],
    }
}

/// One single-sided float redex and the two-sided overlapping one.
pub fn or_float_program() -> Program {
    Program {
        module_name: "OrFloat".into(),
        functions: vec![
            Function {
                name: "floatL".into(),
                arity: 1,
                body: Expr::or(Expr::let_in(3, one(), Expr::var(3)), Expr::var(0)),
            },
            Function {
                name: "overlap".into(),
                arity: 0,
                body: Expr::or(
                    Expr::let_in(0, one(), Expr::var(0)),
                    Expr::let_in(1, one(), Expr::var(1)),
                ),
            },
        ],
    }
}

/// A body exercising the two-stage composition: float the let first, then
/// remove the apply operator and cancel the case.
pub fn compose_program() -> Program {
    Program {
        module_name: "Compose".into(),
        functions: vec![
            not_function(),
            Function {
                name: "g".into(),
                arity: 1,
                body: Expr::or(
                    Expr::let_in(
                        2,
                        Expr::func_call(
                            "$",
                            vec![Expr::func_part("not", vec![], 1), Expr::var(0)],
                        ),
                        Expr::var(2),
                    ),
                    Expr::case(
                        Expr::cons_call("True", vec![]),
                        vec![
                            Branch::new("False", vec![], Expr::cons_call("True", vec![])),
                            Branch::new("True", vec![], Expr::var(0)),
                        ],
                    ),
                ),
            },
        ],
    }
}

/// Three non-variable argument positions across one body.
pub fn anf_multi_program() -> Program {
    Program {
        module_name: "AnfMulti".into(),
        functions: vec![
            Function {
                name: "f".into(),
                arity: 3,
                body: Expr::cons_call("T3", vec![Expr::var(0), Expr::var(1), Expr::var(2)]),
            },
            Function {
                name: "g".into(),
                arity: 1,
                body: Expr::cons_call("S", vec![Expr::var(0)]),
            },
            Function {
                name: "h".into(),
                arity: 1,
                body: Expr::func_call(
                    "f",
                    vec![
                        Expr::func_call("g", vec![Expr::var(0)]),
                        Expr::var(0),
                        Expr::cons_call("S", vec![Expr::cons_call("Z", vec![])]),
                    ],
                ),
            },
        ],
    }
}

/// A free-variable block with a rewrite inside its body. Not evaluable;
/// exercises traversal through the body-only child of `Free`.
pub fn free_program() -> Program {
    Program {
        module_name: "FreeVars".into(),
        functions: vec![Function {
            name: "known".into(),
            arity: 1,
            body: Expr::free(
                vec![1, 2],
                Expr::cons_call(
                    "Pair",
                    vec![Expr::var(1), Expr::cons_call("S", vec![Expr::var(0)])],
                ),
            ),
        }],
    }
}

/// Peano addition: recursive, terminating, one application to normalize.
pub fn peano_program() -> Program {
    Program {
        module_name: "Peano".into(),
        functions: vec![Function {
            name: "add".into(),
            arity: 2,
            body: Expr::case(
                Expr::var(0),
                vec![
                    Branch::new("Z", vec![], Expr::var(1)),
                    Branch::new(
                        "S",
                        vec![2],
                        Expr::cons_call(
                            "S",
                            vec![Expr::func_call("add", vec![Expr::var(2), Expr::var(1)])],
                        ),
                    ),
                ],
            ),
        }],
    }
}

/// List append.
pub fn append_program() -> Program {
    Program {
        module_name: "Append".into(),
        functions: vec![Function {
            name: "app".into(),
            arity: 2,
            body: Expr::case(
                Expr::var(0),
                vec![
                    Branch::new("[]", vec![], Expr::var(1)),
                    Branch::new(
                        ":",
                        vec![2, 3],
                        Expr::cons_call(
                            ":",
                            vec![
                                Expr::var(2),
                                Expr::func_call("app", vec![Expr::var(3), Expr::var(1)]),
                            ],
                        ),
                    ),
                ],
            ),
        }],
    }
}

/// Nested apply operators: `f $ (g $ x)`.
pub fn deep_dollar_program() -> Program {
    Program {
        module_name: "DeepDollar".into(),
        functions: vec![
            Function {
                name: "f".into(),
                arity: 1,
                body: Expr::cons_call("F", vec![Expr::var(0)]),
            },
            Function {
                name: "g".into(),
                arity: 1,
                body: Expr::cons_call("G", vec![Expr::var(0)]),
            },
            Function {
                name: "run".into(),
                arity: 1,
                body: Expr::func_call(
                    "$",
                    vec![
                        Expr::func_part("f", vec![], 1),
                        Expr::func_call(
                            "$",
                            vec![Expr::func_part("g", vec![], 1), Expr::var(0)],
                        ),
                    ],
                ),
            },
        ],
    }
}

/// Two cancelable cases, the second selecting a call to the first.
pub fn cancel_program() -> Program {
    Program {
        module_name: "Cancel".into(),
        functions: vec![
            Function {
                name: "c0".into(),
                arity: 0,
                body: Expr::case(
                    Expr::cons_call("True", vec![]),
                    vec![
                        Branch::new("False", vec![], Expr::cons_call("Z", vec![])),
                        Branch::new(
                            "True",
                            vec![],
                            Expr::cons_call("S", vec![Expr::cons_call("Z", vec![])]),
                        ),
                    ],
                ),
            },
            Function {
                name: "c1".into(),
                arity: 0,
                body: Expr::case(
                    Expr::cons_call("False", vec![]),
                    vec![
                        Branch::new("False", vec![], Expr::func_call("c0", vec![])),
                        Branch::new("True", vec![], Expr::cons_call("Z", vec![])),
                    ],
                ),
            },
        ],
    }
}

/// Every redex kind in one body.
pub fn mixed_program() -> Program {
    Program {
        module_name: "Mixed".into(),
        functions: vec![
            not_function(),
            Function {
                name: "m".into(),
                arity: 1,
                body: Expr::or(
                    Expr::let_in(
                        2,
                        Expr::func_call("not", vec![Expr::var(0)]),
                        Expr::case(
                            Expr::cons_call("False", vec![]),
                            vec![
                                Branch::new(
                                    "False",
                                    vec![],
                                    Expr::cons_call(
                                        ":",
                                        vec![Expr::var(2), Expr::cons_call("[]", vec![])],
                                    ),
                                ),
                                Branch::new("True", vec![], Expr::var(0)),
                            ],
                        ),
                    ),
                    Expr::func_call(
                        "$",
                        vec![Expr::func_part("not", vec![], 1), Expr::var(0)],
                    ),
                ),
            },
        ],
    }
}

/// All hand fixtures, in a stable order.
pub fn fixtures() -> Vec<Program> {
    vec![
        not_program(),
        insert_program(),
        dollar_program(),
        or_float_program(),
        compose_program(),
        anf_multi_program(),
        free_program(),
        peano_program(),
        append_program(),
        deep_dollar_program(),
        cancel_program(),
        mixed_program(),
    ]
}

/// File name a fixture is shipped under in the corpus directory.
pub fn fixture_file_name(p: &Program) -> String {
    format!("{}.json", p.module_name.to_lowercase())
}

/// Closed calls suitable for differential testing of a fixture, empty for
/// modules the evaluator cannot run (free variables) or that define no
/// evaluable entry point.
pub fn differential_calls(module_name: &str) -> Vec<Arc<Expr>> {
    fn lit(name: &str) -> Arc<Expr> {
        Expr::cons_call(name, vec![])
    }
    fn lst(items: &[&str]) -> Arc<Expr> {
        items.iter().rev().fold(lit("[]"), |acc, x| Expr::cons_call(":", vec![lit(x), acc]))
    }
    match module_name {
        "Not" => vec![
            Expr::func_call("not", vec![lit("True")]),
            Expr::func_call("not", vec![lit("False")]),
        ],
        "Insert" => vec![
            Expr::func_call("insert", vec![lit("0"), lst(&["1"])]),
            Expr::func_call("insert", vec![lit("0"), lst(&["1", "2"])]),
        ],
        "Dollar" => vec![Expr::func_call("main", vec![])],
        "OrFloat" => vec![
            Expr::func_call("floatL", vec![lit("True")]),
            Expr::func_call("overlap", vec![]),
        ],
        "Compose" => vec![
            Expr::func_call("g", vec![lit("True")]),
            Expr::func_call("g", vec![lit("False")]),
        ],
        "AnfMulti" => vec![Expr::func_call("h", vec![lit("Z")])],
        "Peano" => vec![Expr::func_call(
            "add",
            vec![
                Expr::cons_call("S", vec![lit("Z")]),
                Expr::cons_call("S", vec![Expr::cons_call("S", vec![lit("Z")])]),
            ],
        )],
        "Append" => vec![Expr::func_call("app", vec![lst(&["1"]), lst(&["2", "3"])])],
        "DeepDollar" => vec![Expr::func_call("run", vec![lit("Z")])],
        "Cancel" => vec![Expr::func_call("c1", vec![]), Expr::func_call("c0", vec![])],
        "Mixed" => vec![
            Expr::func_call("m", vec![lit("True")]),
            Expr::func_call("m", vec![lit("False")]),
        ],
        _ => vec![],
    }
}

// ── seeded generator ────────────────────────────────────────────────

/// Shape of a generated program.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub seed: u64,
    pub functions: usize,
    /// Approximate node budget per function body.
    pub nodes_per_function: usize,
    /// Restrict to the deterministic subset: no disjunctions anywhere and
    /// no unsaturated partial applications, so every generated function is
    /// safe for differential evaluation.
    pub det_only: bool,
}

impl GenConfig {
    pub fn new(seed: u64) -> GenConfig {
        GenConfig { seed, functions: 8, nodes_per_function: 60, det_only: false }
    }
}

const BOOL_FAMILY: &[(&str, usize)] = &[("False", 0), ("True", 0)];
const PEANO_FAMILY: &[(&str, usize)] = &[("Z", 0), ("S", 1)];
const LIST_FAMILY: &[(&str, usize)] = &[("[]", 0), (":", 2)];
const FAMILIES: &[&[(&str, usize)]] = &[BOOL_FAMILY, PEANO_FAMILY, LIST_FAMILY];

const MAX_DEPTH: usize = 8;

#[derive(Clone)]
struct FnSig {
    name: String,
    arity: usize,
    deterministic: bool,
}

struct Gen {
    rng: ChaCha8Rng,
    budget: i64,
    next_binder: usize,
    callable: Vec<FnSig>,
    det_only: bool,
}

/// Generate a program from a fixed seed. Equal configs yield equal
/// programs on every platform.
pub fn generate_program(cfg: &GenConfig) -> Program {
    let mut gen = Gen {
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        budget: 0,
        next_binder: 0,
        callable: Vec::new(),
        det_only: cfg.det_only,
    };
    let mut functions = Vec::with_capacity(cfg.functions);
    for i in 0..cfg.functions {
        let arity = gen.rng.gen_range(1..=3);
        let deterministic = cfg.det_only || gen.rng.gen_bool(0.6);
        let name = format!("f{i}");
        gen.budget = cfg.nodes_per_function as i64;
        gen.next_binder = arity;
        let scope: Vec<usize> = (0..arity).collect();
        let mut body = gen.expr(&scope, 0, deterministic, false);
        // The depth cap keeps single trees small; meet the node target by
        // growing a spine of unused let bindings (and, for functions
        // allowed to branch, occasional disjunctions) around the body.
        let target = cfg.nodes_per_function;
        let mut size = body.node_count();
        while size + 2 < target {
            gen.budget = (target - size).min(40) as i64;
            if !deterministic && gen.rng.gen_bool(0.25) {
                let chunk = gen.expr(&scope, 2, deterministic, true);
                size += chunk.node_count() + 1;
                body = Expr::or(chunk, body);
            } else {
                let binder = gen.fresh_binder();
                let bound = gen.expr(&scope, 2, true, false);
                size += bound.node_count() + 1;
                body = Expr::let_in(binder, bound, body);
            }
        }
        functions.push(Function { name: name.clone(), arity, body });
        gen.callable.push(FnSig { name, arity, deterministic });
    }
    let module_name = format!(
        "Gen{}{}",
        if cfg.det_only { "Det" } else { "" },
        cfg.seed
    );
    Program { module_name, functions }
}

impl Gen {
    fn expr(&mut self, scope: &[usize], depth: usize, det: bool, no_let_root: bool) -> Arc<Expr> {
        if depth >= MAX_DEPTH || self.budget <= 0 {
            return self.leaf(scope);
        }
        // Weighted template choice; unavailable templates re-roll as leaves.
        let roll = self.rng.gen_range(0..100);
        match roll {
            0..=14 => self.leaf(scope),
            15..=38 => self.cons_node(scope, depth, det),
            39..=50 => self.call_node(scope, depth, det),
            51..=60 => self.dollar_redex(scope, depth, det),
            61..=70 => {
                if no_let_root {
                    self.cons_node(scope, depth, det)
                } else {
                    self.let_node(scope, depth, det)
                }
            }
            71..=78 => {
                if det || self.det_only {
                    self.cons_node(scope, depth, det)
                } else {
                    self.budget -= 1;
                    let lhs = self.expr(scope, depth + 1, det, false);
                    let rhs = self.expr(scope, depth + 1, det, false);
                    Expr::or(lhs, rhs)
                }
            }
            79..=86 => {
                if det || self.det_only || no_let_root {
                    self.case_on_var(scope, depth, det)
                } else {
                    self.or_let_redex(scope, depth, det)
                }
            }
            87..=93 => self.case_on_var(scope, depth, det),
            _ => self.cancelable_case(scope, depth, det),
        }
    }

    /// A variable from scope, or a 0-ary constructor if none is in scope.
    fn leaf(&mut self, scope: &[usize]) -> Arc<Expr> {
        self.budget -= 1;
        if !scope.is_empty() && self.rng.gen_bool(0.6) {
            let idx = scope[self.rng.gen_range(0..scope.len())];
            Expr::var(idx)
        } else {
            let family = FAMILIES[self.rng.gen_range(0..FAMILIES.len())];
            let zero: Vec<&str> =
                family.iter().filter(|(_, a)| *a == 0).map(|(n, _)| *n).collect();
            Expr::cons_call(zero[self.rng.gen_range(0..zero.len())], vec![])
        }
    }

    /// A tree of constructors and variables only: no redex of any rule.
    fn pure_tree(&mut self, scope: &[usize], depth: usize) -> Arc<Expr> {
        if depth >= MAX_DEPTH || self.budget <= 0 || self.rng.gen_bool(0.4) {
            return self.leaf(scope);
        }
        self.budget -= 1;
        let family = FAMILIES[self.rng.gen_range(0..FAMILIES.len())];
        let (name, arity) = family[self.rng.gen_range(0..family.len())];
        let args = (0..arity).map(|_| self.pure_tree(scope, depth + 1)).collect();
        Expr::cons_call(name, args)
    }

    fn cons_node(&mut self, scope: &[usize], depth: usize, det: bool) -> Arc<Expr> {
        self.budget -= 1;
        let family = FAMILIES[self.rng.gen_range(0..FAMILIES.len())];
        let (name, arity) = family[self.rng.gen_range(0..family.len())];
        let args = (0..arity).map(|_| self.expr(scope, depth + 1, det, false)).collect();
        Expr::cons_call(name, args)
    }

    fn call_node(&mut self, scope: &[usize], depth: usize, det: bool) -> Arc<Expr> {
        let Some(callee) = self.pick_function(det) else {
            return self.cons_node(scope, depth, det);
        };
        self.budget -= 1;
        let args = (0..callee.arity).map(|_| self.expr(scope, depth + 1, det, false)).collect();
        Expr::func_call(callee.name, args)
    }

    /// `f $ x`, with the partial application in operator position. In the
    /// deterministic subset the application always saturates (missing = 1).
    fn dollar_redex(&mut self, scope: &[usize], depth: usize, det: bool) -> Arc<Expr> {
        let Some(callee) = self.pick_function(det) else {
            return self.cons_node(scope, depth, det);
        };
        self.budget -= 2;
        let missing = if det || self.det_only {
            1
        } else {
            self.rng.gen_range(1..=callee.arity)
        };
        let given = callee.arity - missing;
        let args = (0..given).map(|_| self.expr(scope, depth + 1, det, false)).collect();
        let x = self.expr(scope, depth + 1, det, false);
        Expr::func_call("$", vec![Expr::func_part(callee.name, args, missing), x])
    }

    fn let_node(&mut self, scope: &[usize], depth: usize, det: bool) -> Arc<Expr> {
        self.budget -= 1;
        let binder = self.fresh_binder();
        // Bound expressions stay deterministic regardless of context.
        let bound = self.expr(scope, depth + 1, true, false);
        let mut inner = scope.to_vec();
        inner.push(binder);
        let body = self.expr(&inner, depth + 1, det, false);
        Expr::let_in(binder, bound, body)
    }

    /// A let directly under a disjunction, sometimes on both sides.
    fn or_let_redex(&mut self, scope: &[usize], depth: usize, det: bool) -> Arc<Expr> {
        self.budget -= 1;
        let left_let = self.rng.gen_bool(0.7);
        let both = self.rng.gen_bool(0.3);
        let lhs = if left_let || both {
            self.let_node(scope, depth + 1, det)
        } else {
            self.expr(scope, depth + 1, det, true)
        };
        let rhs = if !left_let || both {
            self.let_node(scope, depth + 1, det)
        } else {
            self.expr(scope, depth + 1, det, true)
        };
        Expr::or(lhs, rhs)
    }

    fn case_on_var(&mut self, scope: &[usize], depth: usize, det: bool) -> Arc<Expr> {
        if scope.is_empty() {
            return self.cons_node(scope, depth, det);
        }
        self.budget -= 1;
        let scrutinee = Expr::var(scope[self.rng.gen_range(0..scope.len())]);
        let family = FAMILIES[self.rng.gen_range(0..FAMILIES.len())];
        let branches = family
            .iter()
            .map(|(name, arity)| {
                let vars: Vec<usize> = (0..*arity).map(|_| self.fresh_binder()).collect();
                let mut inner = scope.to_vec();
                inner.extend_from_slice(&vars);
                let body = self.expr(&inner, depth + 1, det, false);
                Branch::new(*name, vars, body)
            })
            .collect();
        Expr::case(scrutinee, branches)
    }

    /// A case over a known 0-ary constructor: exactly one branch is live.
    /// Dead branches are redex-free trees; the live body is not let-rooted.
    fn cancelable_case(&mut self, scope: &[usize], depth: usize, det: bool) -> Arc<Expr> {
        self.budget -= 2;
        let family = FAMILIES[self.rng.gen_range(0..FAMILIES.len())];
        let zero: Vec<&str> = family.iter().filter(|(_, a)| *a == 0).map(|(n, _)| *n).collect();
        let selected = zero[self.rng.gen_range(0..zero.len())];
        let branches = family
            .iter()
            .map(|(name, arity)| {
                if *name == selected {
                    let body = self.expr(scope, depth + 1, det, true);
                    Branch::new(*name, vec![], body)
                } else {
                    let vars: Vec<usize> = (0..*arity).map(|_| self.fresh_binder()).collect();
                    let mut inner = scope.to_vec();
                    inner.extend_from_slice(&vars);
                    let body = self.pure_tree(&inner, depth + 1);
                    Branch::new(*name, vars, body)
                }
            })
            .collect();
        Expr::case(Expr::cons_call(selected, vec![]), branches)
    }

    fn pick_function(&mut self, det: bool) -> Option<FnSig> {
        let pool: Vec<FnSig> = self
            .callable
            .iter()
            .filter(|f| !det || f.deterministic)
            .cloned()
            .collect();
        if pool.is_empty() {
            return None;
        }
        Some(pool[self.rng.gen_range(0..pool.len())].clone())
    }

    fn fresh_binder(&mut self) -> usize {
        let b = self.next_binder;
        self.next_binder += 1;
        b
    }
}

/// The large program used by the scaling benchmarks: at least ten
/// thousand nodes, every rule represented.
pub fn scale_program() -> Program {
    generate_program(&GenConfig {
        seed: 2024,
        functions: 40,
        nodes_per_function: 260,
        det_only: false,
    })
}

/// The default generated complement of the hand fixtures: a mix of general
/// and deterministic-only modules.
pub fn generated_suite() -> Vec<Program> {
    let mut out = Vec::new();
    for seed in 0..12 {
        out.push(generate_program(&GenConfig::new(seed)));
    }
    for seed in 100..108 {
        let mut cfg = GenConfig::new(seed);
        cfg.det_only = true;
        out.push(generate_program(&cfg));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{decode_program, encode_program, CombKind};

    #[test]
    fn fixtures_are_valid_and_round_trip() {
        let all = fixtures();
        assert_eq!(all.len(), 12);
        for p in &all {
            p.validate().unwrap_or_else(|e| panic!("{}: {e}", p.module_name));
            assert_eq!(decode_program(&encode_program(p)).unwrap(), *p);
        }
    }

    #[test]
    fn fixture_names_are_unique() {
        let mut names: Vec<String> = fixtures().iter().map(fixture_file_name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 12);
    }

    #[test]
    fn generation_is_reproducible() {
        let cfg = GenConfig::new(7);
        assert_eq!(generate_program(&cfg), generate_program(&cfg));
        let other = GenConfig::new(8);
        assert_ne!(generate_program(&cfg), generate_program(&other));
    }

    #[test]
    fn generated_programs_are_valid() {
        for p in generated_suite() {
            p.validate().unwrap_or_else(|e| panic!("{}: {e}", p.module_name));
            assert!(!p.functions.is_empty());
        }
    }

    #[test]
    fn generated_size_tracks_budget() {
        let p = scale_program();
        assert!(p.node_count() >= 10_000, "got {}", p.node_count());
        p.validate().unwrap();
    }

    #[test]
    fn det_only_programs_have_no_disjunction() {
        let mut cfg = GenConfig::new(42);
        cfg.det_only = true;
        let p = generate_program(&cfg);
        for f in &p.functions {
            let mut stack = vec![&*f.body];
            while let Some(e) = stack.pop() {
                assert!(
                    !matches!(e, Expr::Or { .. }),
                    "{} contains a disjunction",
                    f.name
                );
                if let Expr::Comb { kind: CombKind::FuncPartCall(m), name, args } = e {
                    // Partial applications only appear in saturating
                    // apply-operator position.
                    assert_eq!(*m + args.len(), lookup_arity(&p, name));
                    assert_eq!(*m, 1);
                }
                e.for_each_child(|_, c| stack.push(c));
            }
        }
    }

    fn lookup_arity(p: &Program, name: &str) -> usize {
        p.functions.iter().find(|f| f.name == name).map(|f| f.arity).unwrap()
    }

    #[test]
    fn differential_calls_cover_evaluable_fixtures() {
        for p in fixtures() {
            let calls = differential_calls(&p.module_name);
            if p.module_name == "FreeVars" {
                assert!(calls.is_empty());
            } else {
                assert!(!calls.is_empty(), "{} has no calls", p.module_name);
            }
        }
    }
}
