//! A small reference evaluator used as a differential-testing oracle:
//! transformations must preserve the multiset of values a call can reach.
//!
//! Semantics: call-by-name without sharing. A variable bound to a
//! non-deterministic expression re-enumerates its alternatives at every
//! use, so this evaluator is only a faithful oracle for programs whose
//! let-bound expressions are deterministic. Pattern-match failure is an
//! empty result set, not an error.

use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;

use crate::ir::{CombKind, Expr, Function, Program};
use crate::nondet::Choices;

/// Default recursion budget: decremented per function call.
pub const DEFAULT_DEPTH: usize = 256;

/// A fully evaluated constructor term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value {
    pub name: String,
    pub args: Vec<Value>,
}

impl Value {
    pub fn leaf(name: impl Into<String>) -> Value {
        Value { name: name.into(), args: vec![] }
    }
}

impl std::fmt::Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        if self.args.is_empty() {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}(", self.name)?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("unbound variable {0}")]
    UnboundVariable(usize),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("recursion depth limit exceeded")]
    DepthLimit,
    #[error("bad application: {0}")]
    BadApplication(String),
    #[error("free variables are not supported by the evaluator")]
    FreeUnsupported,
}

// ── internal machinery ──────────────────────────────────────────────

type Index = HashMap<String, Function>;

#[derive(Clone)]
enum Thunk {
    /// An unevaluated expression closed over its environment. Re-evaluated
    /// at every use: no sharing.
    Suspend(Arc<Expr>, Env),
    /// An already-computed value (case pattern bindings).
    Ready(Val),
}

#[derive(Clone)]
struct Env(Option<Rc<EnvNode>>);

struct EnvNode {
    var: usize,
    thunk: Thunk,
    rest: Env,
}

impl Env {
    fn empty() -> Env {
        Env(None)
    }

    fn bind(&self, var: usize, thunk: Thunk) -> Env {
        Env(Some(Rc::new(EnvNode { var, thunk, rest: self.clone() })))
    }

    fn lookup(&self, var: usize) -> Option<Thunk> {
        let mut cur = self;
        while let Some(node) = &cur.0 {
            if node.var == var {
                return Some(node.thunk.clone());
            }
            cur = &node.rest;
        }
        None
    }
}

#[derive(Clone)]
enum Val {
    Con(String, Vec<Val>),
    Partial { cons: bool, name: String, args: Vec<Thunk>, missing: usize },
}

type EvalChoices = Choices<Result<Val, EvalError>>;

fn err(e: EvalError) -> EvalChoices {
    Choices::pure(Err(e))
}

fn eval_expr(prog: Rc<Index>, e: Arc<Expr>, env: Env, depth: usize) -> EvalChoices {
    match &*e {
        Expr::Var { idx } => match env.lookup(*idx) {
            None => err(EvalError::UnboundVariable(*idx)),
            Some(Thunk::Ready(v)) => Choices::pure(Ok(v)),
            Some(Thunk::Suspend(e2, env2)) => {
                Choices::defer(move || eval_expr(prog.clone(), e2.clone(), env2.clone(), depth))
            }
        },
        Expr::Comb { kind, name, args } => match kind {
            CombKind::FuncCall if name == "$" && args.len() == 2 => {
                let x = Thunk::Suspend(args[1].clone(), env.clone());
                let f = eval_expr(Rc::clone(&prog), args[0].clone(), env, depth);
                f.bind(move |r| match r {
                    Err(e) => Choices::pure(Err(e)),
                    Ok(v) => apply_one(prog.clone(), v, x.clone(), depth),
                })
            }
            CombKind::FuncCall => call_function(prog, name.clone(), to_thunks(args, &env), depth),
            CombKind::ConsCall => {
                let name = name.to_owned();
                eval_each(Rc::clone(&prog), Rc::new(args.clone()), 0, env, depth)
                    .map(move |r| r.map(|vals| Val::Con(name.clone(), vals)))
            }
            CombKind::FuncPartCall(m) => Choices::pure(Ok(Val::Partial {
                cons: false,
                name: name.clone(),
                args: to_thunks(args, &env),
                missing: *m,
            })),
            CombKind::ConsPartCall(m) => Choices::pure(Ok(Val::Partial {
                cons: true,
                name: name.clone(),
                args: to_thunks(args, &env),
                missing: *m,
            })),
        },
        Expr::Or { lhs, rhs } => {
            let left = eval_expr(Rc::clone(&prog), Arc::clone(lhs), env.clone(), depth);
            let right = eval_expr(prog, Arc::clone(rhs), env, depth);
            left.choose(&right)
        }
        Expr::Free { .. } => err(EvalError::FreeUnsupported),
        Expr::Let { var, bound, body } => {
            let env2 = env.bind(*var, Thunk::Suspend(Arc::clone(bound), env.clone()));
            eval_expr(prog, Arc::clone(body), env2, depth)
        }
        Expr::Case { scrutinee, branches } => {
            let branches = branches.clone();
            let outer = env.clone();
            let scrutinee = eval_expr(Rc::clone(&prog), Arc::clone(scrutinee), env, depth);
            scrutinee.bind(move |r| {
                let con = match r {
                    Err(e) => return err(e),
                    Ok(Val::Con(name, args)) => (name, args),
                    Ok(Val::Partial { .. }) => {
                        return err(EvalError::BadApplication(
                            "case scrutinee evaluated to a partial application".into(),
                        ))
                    }
                };
                let Some(branch) = branches.iter().find(|b| b.pattern.name == con.0) else {
                    // No branch for this constructor: failure, not an error.
                    return Choices::fail();
                };
                if branch.pattern.vars.len() != con.1.len() {
                    return err(EvalError::BadApplication(format!(
                        "pattern `{}` arity mismatch",
                        branch.pattern.name
                    )));
                }
                let mut env2 = outer.clone();
                for (v, val) in branch.pattern.vars.iter().zip(con.1) {
                    env2 = env2.bind(*v, Thunk::Ready(val));
                }
                eval_expr(prog.clone(), Arc::clone(&branch.body), env2, depth)
            })
        }
    }
}

fn to_thunks(args: &[Arc<Expr>], env: &Env) -> Vec<Thunk> {
    args.iter().map(|a| Thunk::Suspend(Arc::clone(a), env.clone())).collect()
}

fn call_function(prog: Rc<Index>, name: String, args: Vec<Thunk>, depth: usize) -> EvalChoices {
    let Some(func) = prog.get(&name) else {
        return err(EvalError::UnknownFunction(name));
    };
    if func.arity != args.len() {
        return err(EvalError::BadApplication(format!(
            "`{name}` called with {} arguments, arity is {}",
            args.len(),
            func.arity
        )));
    }
    if depth == 0 {
        return err(EvalError::DepthLimit);
    }
    let mut env = Env::empty();
    for (i, t) in args.into_iter().enumerate() {
        env = env.bind(i, t);
    }
    let body = Arc::clone(&func.body);
    Choices::defer(move || eval_expr(prog.clone(), body.clone(), env.clone(), depth - 1))
}

/// Apply an evaluated callee to one argument thunk (the `$` semantics).
fn apply_one(prog: Rc<Index>, f: Val, x: Thunk, depth: usize) -> EvalChoices {
    match f {
        Val::Partial { cons, name, mut args, missing } => {
            args.push(x);
            match missing {
                0 => err(EvalError::BadApplication(format!(
                    "partial application of `{name}` with no missing arguments"
                ))),
                1 if cons => force_each(Rc::clone(&prog), Rc::new(args), 0, depth)
                    .map(move |r| r.map(|vals| Val::Con(name.clone(), vals))),
                1 => call_function(prog, name, args, depth),
                m => Choices::pure(Ok(Val::Partial { cons, name, args, missing: m - 1 })),
            }
        }
        Val::Con(name, _) => err(EvalError::BadApplication(format!(
            "constructor value `{name}` applied as a function"
        ))),
    }
}

fn eval_each(
    prog: Rc<Index>,
    exprs: Rc<Vec<Arc<Expr>>>,
    from: usize,
    env: Env,
    depth: usize,
) -> Choices<Result<Vec<Val>, EvalError>> {
    if from == exprs.len() {
        return Choices::pure(Ok(Vec::new()));
    }
    let head = eval_expr(Rc::clone(&prog), exprs[from].clone(), env.clone(), depth);
    head.bind(move |r| match r {
        Err(e) => Choices::pure(Err(e)),
        Ok(v) => {
            let rest = eval_each(prog.clone(), Rc::clone(&exprs), from + 1, env.clone(), depth);
            rest.map(move |r2| {
                r2.map(|mut vals| {
                    vals.insert(0, v.clone());
                    vals
                })
            })
        }
    })
}

fn force_each(
    prog: Rc<Index>,
    thunks: Rc<Vec<Thunk>>,
    from: usize,
    depth: usize,
) -> Choices<Result<Vec<Val>, EvalError>> {
    if from == thunks.len() {
        return Choices::pure(Ok(Vec::new()));
    }
    let head = match thunks[from].clone() {
        Thunk::Ready(v) => Choices::pure(Ok(v)),
        Thunk::Suspend(e, env) => eval_expr(Rc::clone(&prog), e, env, depth),
    };
    head.bind(move |r| match r {
        Err(e) => Choices::pure(Err(e)),
        Ok(v) => {
            let rest = force_each(prog.clone(), Rc::clone(&thunks), from + 1, depth);
            rest.map(move |r2| {
                r2.map(|mut vals| {
                    vals.insert(0, v.clone());
                    vals
                })
            })
        }
    })
}

fn to_value(v: Val) -> Value {
    match v {
        Val::Con(name, args) => Value { name, args: args.into_iter().map(to_value).collect() },
        Val::Partial { cons, name, args, missing } => Value {
            name: format!(
                "<partial-{}:{}/{}+{}>",
                if cons { "cons" } else { "func" },
                name,
                missing,
                args.len()
            ),
            args: vec![],
        },
    }
}

// ── public interface ────────────────────────────────────────────────

fn index(prog: &Program) -> Rc<Index> {
    Rc::new(prog.functions.iter().map(|f| (f.name.clone(), f.clone())).collect())
}

/// Enumerate the values of `e` under `prog`, alternatives of `Or` left
/// first. `env` supplies closed expressions for free variables of `e`.
/// Errors are in-band: enumeration continues past them only if the caller
/// chooses to.
pub fn eval(
    prog: &Program,
    e: &Arc<Expr>,
    env: &HashMap<usize, Arc<Expr>>,
    depth_limit: usize,
) -> Choices<Result<Value, EvalError>> {
    let mut bound = Env::empty();
    for (v, expr) in env {
        bound = bound.bind(*v, Thunk::Suspend(Arc::clone(expr), Env::empty()));
    }
    eval_expr(index(prog), Arc::clone(e), bound, depth_limit).map(|r| r.map(to_value))
}

/// All values of a closed call, in enumeration order. The first in-band
/// error aborts the run.
pub fn eval_values(prog: &Program, call: &Arc<Expr>) -> Result<Vec<Value>, EvalError> {
    eval(prog, call, &HashMap::new(), DEFAULT_DEPTH).iter().collect()
}

/// True iff every call reaches the same multiset of values under both
/// programs.
pub fn values_preserved(
    before: &Program,
    after: &Program,
    calls: &[Arc<Expr>],
) -> Result<bool, EvalError> {
    for call in calls {
        let mut a = eval_values(before, call)?;
        let mut b = eval_values(after, call)?;
        a.sort();
        b.sort();
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}
