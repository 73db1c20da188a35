//! Strategies that drive rules over whole function bodies.
//!
//! Three engines share one contract: apply rules until no subexpression
//! admits a rewrite, thread the next fresh variable index through every
//! step, and record each step for traces. Tie-breaking is fully
//! deterministic everywhere: subexpression enumeration order, then rule
//! order, then each rule's own alternative order.

use std::rc::Rc;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::ir::{Branch, Expr, Path, Program};
use crate::nondet::Choices;
use crate::transforms::{Rule, TransContext};

/// Default rewrite budget per function body.
pub const DEFAULT_FUEL: usize = 1_000_000;

/// How a stage applies its rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    /// Re-enumerate subexpressions from the root after every rewrite.
    Chaotic,
    /// Bottom-up with enumerating rules forced to their first result.
    Mixed,
    /// Bottom-up with the total rule forms.
    Deterministic,
}

impl StrategyKind {
    pub fn label(&self) -> &'static str {
        match self {
            StrategyKind::Chaotic => "cs",
            StrategyKind::Mixed => "ms",
            StrategyKind::Deterministic => "ds",
        }
    }
}

/// One pipeline stage: a strategy plus the rules it applies in parallel.
#[derive(Debug, Clone)]
pub struct Stage {
    pub strategy: StrategyKind,
    pub rules: Vec<Rule>,
}

/// One recorded rewrite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub step_index: usize,
    pub function_name: String,
    pub rule_name: String,
    pub path: Path,
}

/// Per-function outcome of a whole pipeline run.
#[derive(Debug, Clone)]
pub struct FunctionReport {
    pub name: String,
    pub rewrites: usize,
    pub next_var: usize,
}

/// Aggregate outcome of a pipeline run.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub functions: Vec<FunctionReport>,
    pub total_rewrites: usize,
    pub elapsed: Duration,
    pub trace: Vec<TraceStep>,
}

/// Result of running one strategy over one body.
#[derive(Debug, Clone)]
pub struct BodyOutcome {
    pub body: Arc<Expr>,
    pub next_var: usize,
    /// Rule name and path per rewrite, in application order.
    pub steps: Vec<(&'static str, Path)>,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum StrategyError {
    #[error("fuel exhausted after {limit} rewrites")]
    FuelExhausted { limit: usize },
}

#[derive(Debug, Clone, thiserror::Error)]
#[error("no child at index {index} (depth {depth})")]
pub struct PathError {
    pub depth: usize,
    pub index: usize,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum PipelineError {
    #[error("function `{function}`: {source}")]
    Strategy {
        function: String,
        #[source]
        source: StrategyError,
    },
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum ReplayError {
    #[error("step {step}: unknown rule `{rule}`")]
    UnknownRule { step: usize, rule: String },
    #[error("step {step}: unknown function `{function}`")]
    UnknownFunction { step: usize, function: String },
    #[error("step {step}: {source}")]
    BadPath {
        step: usize,
        #[source]
        source: PathError,
    },
    #[error("step {step}: rule `{rule}` does not apply at the recorded path")]
    NotApplicable { step: usize, rule: String },
}

// ── subexpression enumeration and path operations ───────────────────

/// Enumerate every subexpression with its path: the whole expression first,
/// then each child's subexpressions in child-index order, depth first.
pub fn sub_exp_of(e: &Arc<Expr>) -> Choices<(Path, Arc<Expr>)> {
    let root = Arc::clone(e);
    Choices::from_factory(move || {
        let mut stack: Vec<(Path, Arc<Expr>)> = vec![(Vec::new(), Arc::clone(&root))];
        Box::new(std::iter::from_fn(move || {
            let (path, node) = stack.pop()?;
            let mut children: Vec<(usize, Arc<Expr>)> = Vec::new();
            node.for_each_child(|i, c| children.push((i, Arc::clone(c))));
            for (i, child) in children.into_iter().rev() {
                let mut p = path.clone();
                p.push(i);
                stack.push((p, child));
            }
            Some((path, node))
        }))
    })
}

/// The subexpression of `e` at `path`.
pub fn sub_expr_at(e: &Arc<Expr>, path: &[usize]) -> Result<Arc<Expr>, PathError> {
    let mut cur = e;
    for (depth, &index) in path.iter().enumerate() {
        cur = cur.child(index).ok_or(PathError { depth, index })?;
    }
    Ok(Arc::clone(cur))
}

/// Rebuild `e` with the subexpression at `path` replaced by `new`. Nodes
/// off the path are shared, not copied.
pub fn replace(e: &Arc<Expr>, path: &[usize], new: Arc<Expr>) -> Result<Arc<Expr>, PathError> {
    fn go(
        e: &Arc<Expr>,
        path: &[usize],
        depth: usize,
        new: Arc<Expr>,
    ) -> Result<Arc<Expr>, PathError> {
        match path.split_first() {
            None => Ok(new),
            Some((&index, rest)) => {
                let child = e.child(index).ok_or(PathError { depth, index })?;
                let replaced = go(child, rest, depth + 1, new)?;
                Ok(Arc::new(e.with_child(index, replaced).expect("child index checked")))
            }
        }
    }
    go(e, path, 0, new)
}

/// The next variable index not occurring in `e`: 1 + the maximum index
/// used or bound anywhere, 0 when `e` mentions no variable.
pub fn new_var(e: &Expr) -> usize {
    let mut max: Option<usize> = None;
    let mut bump = |v: usize| {
        max = Some(max.map_or(v, |m| m.max(v)));
    };
    let mut stack: Vec<&Expr> = vec![e];
    while let Some(node) = stack.pop() {
        match node {
            Expr::Var { idx } => bump(*idx),
            Expr::Comb { .. } | Expr::Or { .. } => {}
            Expr::Free { vars, .. } => vars.iter().for_each(|&v| bump(v)),
            Expr::Let { var, .. } => bump(*var),
            Expr::Case { branches, .. } => {
                for b in branches {
                    b.pattern.vars.iter().for_each(|&v| bump(v));
                }
            }
        }
        node.for_each_child(|_, c| stack.push(c));
    }
    max.map_or(0, |m| m + 1)
}

/// Starting fresh-variable index for a function body: above every index in
/// the body and above every parameter, including parameters the body does
/// not mention.
pub fn start_var(body: &Expr, arity: usize) -> usize {
    new_var(body).max(arity)
}

// ── rule application at a node ──────────────────────────────────────

type Found = (&'static str, Path, Arc<Expr>, usize);

/// All rewrites the rule set offers at one subexpression, rules in order,
/// each rule's alternatives in its own order.
fn rules_at(rules: &Rc<Vec<Rule>>, next_var: usize, path: Path, sub: Arc<Expr>) -> Choices<Found> {
    let mut acc: Choices<Found> = Choices::fail();
    for idx in 0..rules.len() {
        let rules = Rc::clone(rules);
        let path = path.clone();
        let sub = Arc::clone(&sub);
        let alt = Choices::defer(move || {
            let ctx = TransContext { next_var, path: path.clone() };
            let name = rules[idx].name;
            let path = path.clone();
            rules[idx]
                .nondet
                .apply(&ctx, &sub)
                .map(move |(out, fresh)| (name, path.clone(), out, fresh))
        });
        acc = acc.choose(&alt);
    }
    acc
}

/// First rewrite the rule set offers at one node (enumerating forms).
fn rules_once(rules: &[Rule], ctx: &TransContext, e: &Expr) -> Option<(&'static str, Arc<Expr>, usize)> {
    rules
        .iter()
        .find_map(|r| r.nondet.apply(ctx, e).one_value().map(|(out, fresh)| (r.name, out, fresh)))
}

/// First rewrite the rule set offers at one node (total forms).
fn rules_once_det(rules: &[Rule], ctx: &TransContext, e: &Expr) -> Option<(&'static str, Arc<Expr>, usize)> {
    rules
        .iter()
        .find_map(|r| r.det.apply(ctx, e).map(|(out, fresh)| (r.name, out, fresh)))
}

/// The leftmost redex in `body` under the rule set: the first subexpression
/// (in [`sub_exp_of`] order) where any rule applies. `None` means `body` is
/// in normal form.
pub fn find_redex(rules: &[Rule], body: &Arc<Expr>, next_var: usize) -> Option<(&'static str, Path)> {
    find_redex_full(&Rc::new(rules.to_vec()), body, next_var).map(|(name, path, _, _)| (name, path))
}

fn find_redex_full(rules: &Rc<Vec<Rule>>, body: &Arc<Expr>, next_var: usize) -> Option<Found> {
    let rules = Rc::clone(rules);
    sub_exp_of(body).bind(move |(path, sub)| rules_at(&rules, next_var, path, sub)).one_value()
}

// ── strategy engines ────────────────────────────────────────────────

struct RunState {
    next_var: usize,
    steps: Vec<(&'static str, Path)>,
    fuel: usize,
}

impl RunState {
    fn record(&mut self, name: &'static str, path: Path, fresh: usize) -> Result<(), StrategyError> {
        if self.steps.len() >= self.fuel {
            return Err(StrategyError::FuelExhausted { limit: self.fuel });
        }
        self.steps.push((name, path));
        self.next_var += fresh;
        Ok(())
    }
}

/// Chaotic strategy: repeatedly take the first rewrite anywhere in the
/// body, replace, and start the search over from the root.
pub fn transform_chaotic(
    rules: &[Rule],
    body: &Arc<Expr>,
    start_var: usize,
    fuel: usize,
) -> Result<BodyOutcome, StrategyError> {
    let rules = Rc::new(rules.to_vec());
    let mut e = Arc::clone(body);
    let mut st = RunState { next_var: start_var, steps: Vec::new(), fuel };
    while let Some((name, path, out, fresh)) = find_redex_full(&rules, &e, st.next_var) {
        st.record(name, path.clone(), fresh)?;
        e = replace(&e, &path, out).expect("path from sub_exp_of is valid");
    }
    Ok(BodyOutcome { body: e, next_var: st.next_var, steps: st.steps })
}

/// Mixed strategy: bottom-up traversal forcing each rule set application
/// to its first result.
pub fn transform_mixed(
    rules: &[Rule],
    body: &Arc<Expr>,
    start_var: usize,
    fuel: usize,
) -> Result<BodyOutcome, StrategyError> {
    run_bottom_up(&|ctx, e| rules_once(rules, ctx, e), body, start_var, fuel)
}

/// Deterministic strategy: bottom-up traversal of the total rule forms.
pub fn transform_det(
    rules: &[Rule],
    body: &Arc<Expr>,
    start_var: usize,
    fuel: usize,
) -> Result<BodyOutcome, StrategyError> {
    run_bottom_up(&|ctx, e| rules_once_det(rules, ctx, e), body, start_var, fuel)
}

type ApplyAt<'a> = dyn Fn(&TransContext, &Expr) -> Option<(&'static str, Arc<Expr>, usize)> + 'a;

/// Shared engine for the bottom-up strategies: post-order passes with
/// retry-at-node, repeated until a pass performs no rewrite. A single pass
/// is not enough on its own: a rewrite can create a redex above the node
/// the traversal already left (a floated let, a canceled case body).
fn run_bottom_up(
    apply: &ApplyAt,
    body: &Arc<Expr>,
    start_var: usize,
    fuel: usize,
) -> Result<BodyOutcome, StrategyError> {
    let mut e = Arc::clone(body);
    let mut st = RunState { next_var: start_var, steps: Vec::new(), fuel };
    loop {
        let before = st.steps.len();
        let mut path = Vec::new();
        e = pass(apply, &e, &mut path, &mut st)?;
        if st.steps.len() == before {
            break;
        }
    }
    Ok(BodyOutcome { body: e, next_var: st.next_var, steps: st.steps })
}

fn pass(
    apply: &ApplyAt,
    node: &Arc<Expr>,
    path: &mut Path,
    st: &mut RunState,
) -> Result<Arc<Expr>, StrategyError> {
    let mut cur = map_children(node, &mut |i, child| {
        path.push(i);
        let out = pass(apply, child, path, st);
        path.pop();
        out
    })?;
    loop {
        let ctx = TransContext { next_var: st.next_var, path: path.clone() };
        match apply(&ctx, &cur) {
            None => break,
            Some((name, out, fresh)) => {
                st.record(name, path.clone(), fresh)?;
                cur = out;
            }
        }
    }
    Ok(cur)
}

/// Rebuild a node applying `f` to every child in index order.
fn map_children<E>(
    node: &Arc<Expr>,
    f: &mut impl FnMut(usize, &Arc<Expr>) -> Result<Arc<Expr>, E>,
) -> Result<Arc<Expr>, E> {
    Ok(match &**node {
        Expr::Var { .. } => Arc::clone(node),
        Expr::Comb { kind, name, args } => {
            let mut out = Vec::with_capacity(args.len());
            for (i, a) in args.iter().enumerate() {
                out.push(f(i, a)?);
            }
            Expr::comb(*kind, name.clone(), out)
        }
        Expr::Or { lhs, rhs } => Expr::or(f(0, lhs)?, f(1, rhs)?),
        Expr::Free { vars, body } => Expr::free(vars.clone(), f(1, body)?),
        Expr::Let { var, bound, body } => Expr::let_in(*var, f(0, bound)?, f(1, body)?),
        Expr::Case { scrutinee, branches } => {
            let s = f(0, scrutinee)?;
            let mut out = Vec::with_capacity(branches.len());
            for (i, b) in branches.iter().enumerate() {
                out.push(Branch { pattern: b.pattern.clone(), body: f(i + 1, &b.body)? });
            }
            Expr::case(s, out)
        }
    })
}

// ── pipelines ───────────────────────────────────────────────────────

/// Run the stages in order over every function of the program.
///
/// The fresh-variable index for each function starts at [`start_var`] and
/// only grows across stages, so a recorded trace replays exactly.
pub fn apply_pipeline(
    stages: &[Stage],
    program: &Program,
    fuel: usize,
) -> Result<(Program, RunReport), PipelineError> {
    let started = Instant::now();
    let mut bodies: Vec<Arc<Expr>> = program.functions.iter().map(|f| Arc::clone(&f.body)).collect();
    let mut next_vars: Vec<usize> = program
        .functions
        .iter()
        .map(|f| start_var(&f.body, f.arity))
        .collect();
    let mut rewrites = vec![0usize; bodies.len()];
    let mut trace = Vec::new();

    for stage in stages {
        for (i, f) in program.functions.iter().enumerate() {
            let run = match stage.strategy {
                StrategyKind::Chaotic => transform_chaotic(&stage.rules, &bodies[i], next_vars[i], fuel),
                StrategyKind::Mixed => transform_mixed(&stage.rules, &bodies[i], next_vars[i], fuel),
                StrategyKind::Deterministic => transform_det(&stage.rules, &bodies[i], next_vars[i], fuel),
            }
            .map_err(|source| PipelineError::Strategy { function: f.name.clone(), source })?;
            bodies[i] = run.body;
            next_vars[i] = run.next_var;
            rewrites[i] += run.steps.len();
            for (rule_name, path) in run.steps {
                trace.push(TraceStep {
                    step_index: trace.len() + 1,
                    function_name: f.name.clone(),
                    rule_name: rule_name.to_string(),
                    path,
                });
            }
        }
    }

    let out = Program {
        module_name: program.module_name.clone(),
        functions: program
            .functions
            .iter()
            .zip(&bodies)
            .map(|(f, body)| crate::ir::Function {
                name: f.name.clone(),
                arity: f.arity,
                body: Arc::clone(body),
            })
            .collect(),
    };
    let report = RunReport {
        functions: program
            .functions
            .iter()
            .enumerate()
            .map(|(i, f)| FunctionReport {
                name: f.name.clone(),
                rewrites: rewrites[i],
                next_var: next_vars[i],
            })
            .collect(),
        total_rewrites: rewrites.iter().sum(),
        elapsed: started.elapsed(),
        trace,
    };
    Ok((out, report))
}

/// Render a trace in the line format `step<TAB>function<TAB>rule<TAB>path`,
/// the path as comma-joined child indices (empty for the root).
pub fn format_trace(trace: &[TraceStep]) -> String {
    let mut out = String::new();
    for step in trace {
        let path: Vec<String> = step.path.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            step.step_index,
            step.function_name,
            step.rule_name,
            path.join(",")
        ));
    }
    out
}

/// Re-apply a recorded trace to the program it was recorded from. Each
/// step applies the named rule's first alternative at the recorded path.
pub fn replay(program: &Program, trace: &[TraceStep]) -> Result<Program, ReplayError> {
    let mut out = program.clone();
    let mut next_vars: Vec<usize> =
        out.functions.iter().map(|f| start_var(&f.body, f.arity)).collect();
    for step in trace {
        let rule = crate::transforms::rule(&step.rule_name).ok_or_else(|| {
            ReplayError::UnknownRule { step: step.step_index, rule: step.rule_name.clone() }
        })?;
        let i = out
            .functions
            .iter()
            .position(|f| f.name == step.function_name)
            .ok_or_else(|| ReplayError::UnknownFunction {
                step: step.step_index,
                function: step.function_name.clone(),
            })?;
        let body = &out.functions[i].body;
        let sub = sub_expr_at(body, &step.path)
            .map_err(|source| ReplayError::BadPath { step: step.step_index, source })?;
        let ctx = TransContext { next_var: next_vars[i], path: step.path.clone() };
        let (new_sub, fresh) = rule.nondet.apply(&ctx, &sub).one_value().ok_or_else(|| {
            ReplayError::NotApplicable { step: step.step_index, rule: step.rule_name.clone() }
        })?;
        out.functions[i].body = replace(body, &step.path, new_sub)
            .map_err(|source| ReplayError::BadPath { step: step.step_index, source })?;
        next_vars[i] += fresh;
    }
    Ok(out)
}
