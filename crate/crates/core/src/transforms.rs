//! Rewrite rules in two styles: enumerating (partial, possibly multi-result)
//! and total deterministic. Rules match one redex shape at the root of the
//! expression they are given and never recurse; traversal belongs to the
//! strategies.
//!
//! A rule yielding a result that introduces binders must use exactly the
//! indices `next_var .. next_var + fresh_used - 1` and report `fresh_used`.

use std::rc::Rc;
use std::sync::Arc;

use crate::ir::{CombKind, Expr, Path};
use crate::nondet::Choices;
use crate::patterns::{match_dollar, with_branch};

/// Context handed to a rule: the first unused variable index and the
/// location of the expression under consideration within its body.
#[derive(Debug, Clone)]
pub struct TransContext {
    pub next_var: usize,
    pub path: Path,
}

/// A rewritten expression plus the number of fresh variables it consumed.
pub type TransResult = (Arc<Expr>, usize);

type TransFn = dyn Fn(&TransContext, &Expr) -> Choices<TransResult>;
type DetTransFn = dyn Fn(&TransContext, &Expr) -> Option<TransResult>;

/// An enumerating transformation: zero or more alternative rewrites.
#[derive(Clone)]
pub struct Transformation(Rc<TransFn>);

/// A total transformation: at most one rewrite.
#[derive(Clone)]
pub struct DetTransformation(Rc<DetTransFn>);

impl Transformation {
    pub fn new(f: impl Fn(&TransContext, &Expr) -> Choices<TransResult> + 'static) -> Self {
        Transformation(Rc::new(f))
    }

    pub fn apply(&self, ctx: &TransContext, e: &Expr) -> Choices<TransResult> {
        (self.0)(ctx, e)
    }
}

impl DetTransformation {
    pub fn new(f: impl Fn(&TransContext, &Expr) -> Option<TransResult> + 'static) -> Self {
        DetTransformation(Rc::new(f))
    }

    pub fn apply(&self, ctx: &TransContext, e: &Expr) -> Option<TransResult> {
        (self.0)(ctx, e)
    }
}

/// Lift a context-free rewrite; every result reports `fresh_used = 0`.
pub fn make_t(f: impl Fn(&Expr) -> Choices<Arc<Expr>> + 'static) -> Transformation {
    Transformation::new(move |_ctx, e| f(e).map(|out| (out, 0)))
}

/// Deterministic counterpart of [`make_t`].
pub fn make_t_det(f: impl Fn(&Expr) -> Option<Arc<Expr>> + 'static) -> DetTransformation {
    DetTransformation::new(move |_ctx, e| f(e).map(|out| (out, 0)))
}

/// Parallel composition: all of `t1`'s rewrites, then all of `t2`'s.
pub fn par(t1: Transformation, t2: Transformation) -> Transformation {
    Transformation::new(move |ctx, e| t1.apply(ctx, e).choose(&t2.apply(ctx, e)))
}

/// Parallel composition with first-success commitment.
pub fn par_det(t1: DetTransformation, t2: DetTransformation) -> DetTransformation {
    DetTransformation::new(move |ctx, e| t1.apply(ctx, e).or_else(|| t2.apply(ctx, e)))
}

// ── let floating ────────────────────────────────────────────────────
//
//   (let x = e in e1) ? e2  =>  let x = e in (e1 ? e2)
//   e1 ? (let x = e in e2)  =>  let x = e in (e1 ? e2)
//
// Sound because binders are unique within a body, so hoisting the binding
// over the other alternative cannot capture anything.

/// Float a let binding out of a disjunction. Two overlapping rules; the
/// left-let rule enumerates first.
pub fn or_float(e: &Expr) -> Choices<Arc<Expr>> {
    let mut out = Vec::new();
    if let Expr::Or { lhs, rhs } = e {
        if let Expr::Let { var, bound, body } = &**lhs {
            out.push(Expr::let_in(*var, bound.clone(), Expr::or(body.clone(), rhs.clone())));
        }
        if let Expr::Let { var, bound, body } = &**rhs {
            out.push(Expr::let_in(*var, bound.clone(), Expr::or(lhs.clone(), body.clone())));
        }
    }
    Choices::from_vec(out)
}

/// Sequential-match version of [`or_float`]: left rule wins ties.
pub fn or_float_det(e: &Expr) -> Option<Arc<Expr>> {
    let Expr::Or { lhs, rhs } = e else { return None };
    if let Expr::Let { var, bound, body } = &**lhs {
        return Some(Expr::let_in(*var, bound.clone(), Expr::or(body.clone(), rhs.clone())));
    }
    if let Expr::Let { var, bound, body } = &**rhs {
        return Some(Expr::let_in(*var, bound.clone(), Expr::or(lhs.clone(), body.clone())));
    }
    None
}

// ── apply-operator removal ──────────────────────────────────────────
//
//   f $ x  =>  f x
//
// There is no rule for missing = 0: such a term cannot be rewritten to a
// partial call expecting -1 arguments, and the loader rejects it anyway.

/// Remove one application of the `$` operator.
pub fn un_dollar(e: &Expr) -> Choices<Arc<Expr>> {
    match_dollar(e).bind(|(f, mut args, missing, x)| {
        args.push(x);
        match missing {
            1 => Choices::pure(Expr::func_call(f, args)),
            m if m > 1 => Choices::pure(Expr::func_part(f, args, m - 1)),
            _ => Choices::fail(),
        }
    })
}

/// Total version of [`un_dollar`], matched by explicit case analysis.
pub fn un_dollar_det(e: &Expr) -> Option<Arc<Expr>> {
    let Expr::Comb { kind: CombKind::FuncCall, name, args } = e else { return None };
    if name != "$" || args.len() != 2 {
        return None;
    }
    let Expr::Comb { kind: CombKind::FuncPartCall(missing), name: f, args: fargs } = &*args[0]
    else {
        return None;
    };
    let mut full = fargs.clone();
    full.push(args[1].clone());
    match missing {
        1 => Some(Expr::func_call(f.clone(), full)),
        m if *m > 1 => Some(Expr::func_part(f.clone(), full, m - 1)),
        _ => None,
    }
}

// ── case canceling ──────────────────────────────────────────────────
//
//   case C of {...; C -> e; ...}  =>  e     (0-ary constructors only)

/// Cancel a case whose scrutinee is a known 0-ary constructor.
pub fn case_cancel(e: &Expr) -> Choices<Arc<Expr>> {
    if let Expr::Case { scrutinee, branches } = e {
        if let Expr::Comb { kind: CombKind::ConsCall, name, args } = &**scrutinee {
            if args.is_empty() {
                return with_branch(Rc::new(branches.clone()), name.clone());
            }
        }
    }
    Choices::fail()
}

/// Total version of [`case_cancel`]: sequential search through the
/// branch list.
pub fn case_cancel_det(e: &Expr) -> Option<Arc<Expr>> {
    let Expr::Case { scrutinee, branches } = e else { return None };
    let Expr::Comb { kind: CombKind::ConsCall, name, args } = &**scrutinee else { return None };
    if !args.is_empty() {
        return None;
    }
    branches
        .iter()
        .find(|b| b.pattern.name == *name && b.pattern.vars.is_empty())
        .map(|b| b.body.clone())
}

// ── A-normal form step ──────────────────────────────────────────────
//
//   f(.., e, ..)  =>  let v = e in f(.., v, ..)     (e not a variable)
//
// One argument per application; exhaustive normalization emerges from
// strategy iteration. Each application strictly decreases the number of
// non-variable argument positions in the body, so iteration terminates.

/// Bind one non-variable argument of an application to a fresh variable.
/// One alternative per such argument, left to right, each consuming
/// exactly one fresh index.
pub fn anf_step(ctx: &TransContext, e: &Expr) -> Choices<TransResult> {
    let Expr::Comb { kind, name, args } = e else { return Choices::fail() };
    let fresh = ctx.next_var;
    let mut out = Vec::new();
    for (i, a) in args.iter().enumerate() {
        if !matches!(&**a, Expr::Var { .. }) {
            let mut hole = args.clone();
            hole[i] = Expr::var(fresh);
            let app = Expr::comb(*kind, name.clone(), hole);
            out.push((Expr::let_in(fresh, a.clone(), app), 1));
        }
    }
    Choices::from_vec(out)
}

/// Total version of [`anf_step`]: binds the leftmost non-variable argument.
pub fn anf_step_det(ctx: &TransContext, e: &Expr) -> Option<TransResult> {
    let Expr::Comb { kind, name, args } = e else { return None };
    let i = args.iter().position(|a| !matches!(&**a, Expr::Var { .. }))?;
    let fresh = ctx.next_var;
    let mut hole = args.clone();
    hole[i] = Expr::var(fresh);
    let app = Expr::comb(*kind, name.clone(), hole);
    Some((Expr::let_in(fresh, args[i].clone(), app), 1))
}

// ── registry ────────────────────────────────────────────────────────

/// A named rule in both styles, addressable from pipelines and traces.
#[derive(Clone)]
pub struct Rule {
    pub name: &'static str,
    pub nondet: Transformation,
    pub det: DetTransformation,
}

impl std::fmt::Debug for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Rule").field("name", &self.name).finish_non_exhaustive()
    }
}

/// Look up a built-in rule by its registry name.
pub fn rule(name: &str) -> Option<Rule> {
    let r = match name {
        "orFloat" => Rule {
            name: "orFloat",
            nondet: make_t(or_float),
            det: make_t_det(or_float_det),
        },
        "unDollar" => Rule {
            name: "unDollar",
            nondet: make_t(un_dollar),
            det: make_t_det(un_dollar_det),
        },
        "caseCancel" => Rule {
            name: "caseCancel",
            nondet: make_t(case_cancel),
            det: make_t_det(case_cancel_det),
        },
        "anf" => Rule {
            name: "anf",
            nondet: Transformation::new(anf_step),
            det: DetTransformation::new(anf_step_det),
        },
        _ => return None,
    };
    Some(r)
}

/// Registry names, in a stable order.
pub fn rule_names() -> &'static [&'static str] {
    &["orFloat", "unDollar", "caseCancel", "anf"]
}
