//! The FlatCurry-style IR: expression trees, programs, and their JSON codec.
//!
//! Expressions use `Arc` for child links so that subtrees can be shared and
//! yielded by enumerators without deep copies. Values are immutable after
//! construction; rewrites build new spines and reuse unchanged children.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Child-index path addressing a subexpression; the root is the empty path.
///
/// Indexing scheme: `Comb` arguments at `0..n-1`; `Let` bound at 0, body
/// at 1; `Free` body at 1 (there is no index 0); `Or` left at 0, right at 1;
/// `Case` scrutinee at 0, branch `i` body at `i + 1`.
pub type Path = Vec<usize>;

/// Kind of an application node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CombKind {
    /// Fully applied function.
    FuncCall,
    /// Fully applied constructor.
    ConsCall,
    /// Partial function application; the payload is the number of missing
    /// arguments, which must be at least 1.
    FuncPartCall(usize),
    /// Partial constructor application, same `missing >= 1` requirement.
    ConsPartCall(usize),
}

impl CombKind {
    pub fn missing(&self) -> Option<usize> {
        match self {
            CombKind::FuncPartCall(m) | CombKind::ConsPartCall(m) => Some(*m),
            _ => None,
        }
    }
}

/// A FlatCurry expression.
///
/// Variables are plain non-negative integers; literals are not modeled
/// (numerals in the corpus are 0-ary constructors such as `"1"`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum Expr {
    Var {
        idx: usize,
    },
    Comb {
        kind: CombKind,
        name: String,
        args: Vec<Arc<Expr>>,
    },
    Or {
        lhs: Arc<Expr>,
        rhs: Arc<Expr>,
    },
    Free {
        vars: Vec<usize>,
        body: Arc<Expr>,
    },
    Let {
        var: usize,
        bound: Arc<Expr>,
        body: Arc<Expr>,
    },
    Case {
        scrutinee: Arc<Expr>,
        branches: Vec<Branch>,
    },
}

/// One branch of a case expression.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub pattern: Pattern,
    pub body: Arc<Expr>,
}

/// A constructor pattern: name plus the variables it binds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pattern {
    pub name: String,
    pub vars: Vec<usize>,
}

/// A named function: `arity` parameters with indices `0..arity-1`, one body.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Function {
    pub name: String,
    pub arity: usize,
    pub body: Arc<Expr>,
}

/// A module: named functions over a shared constructor vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Program {
    #[serde(rename = "module")]
    pub module_name: String,
    pub functions: Vec<Function>,
}

// ── constructor helpers ─────────────────────────────────────────────

impl Expr {
    pub fn var(idx: usize) -> Arc<Expr> {
        Arc::new(Expr::Var { idx })
    }

    pub fn comb(kind: CombKind, name: impl Into<String>, args: Vec<Arc<Expr>>) -> Arc<Expr> {
        Arc::new(Expr::Comb { kind, name: name.into(), args })
    }

    pub fn func_call(name: impl Into<String>, args: Vec<Arc<Expr>>) -> Arc<Expr> {
        Expr::comb(CombKind::FuncCall, name, args)
    }

    pub fn cons_call(name: impl Into<String>, args: Vec<Arc<Expr>>) -> Arc<Expr> {
        Expr::comb(CombKind::ConsCall, name, args)
    }

    pub fn func_part(name: impl Into<String>, args: Vec<Arc<Expr>>, missing: usize) -> Arc<Expr> {
        Expr::comb(CombKind::FuncPartCall(missing), name, args)
    }

    pub fn cons_part(name: impl Into<String>, args: Vec<Arc<Expr>>, missing: usize) -> Arc<Expr> {
        Expr::comb(CombKind::ConsPartCall(missing), name, args)
    }

    pub fn or(lhs: Arc<Expr>, rhs: Arc<Expr>) -> Arc<Expr> {
        Arc::new(Expr::Or { lhs, rhs })
    }

    pub fn free(vars: Vec<usize>, body: Arc<Expr>) -> Arc<Expr> {
        Arc::new(Expr::Free { vars, body })
    }

    pub fn let_in(var: usize, bound: Arc<Expr>, body: Arc<Expr>) -> Arc<Expr> {
        Arc::new(Expr::Let { var, bound, body })
    }

    pub fn case(scrutinee: Arc<Expr>, branches: Vec<Branch>) -> Arc<Expr> {
        Arc::new(Expr::Case { scrutinee, branches })
    }
}

impl Branch {
    pub fn new(name: impl Into<String>, vars: Vec<usize>, body: Arc<Expr>) -> Branch {
        Branch { pattern: Pattern { name: name.into(), vars }, body }
    }
}

// ── child access under the Path indexing scheme ─────────────────────

impl Expr {
    /// The child at `idx`, or `None` when the index is not populated.
    pub fn child(&self, idx: usize) -> Option<&Arc<Expr>> {
        match self {
            Expr::Var { .. } => None,
            Expr::Comb { args, .. } => args.get(idx),
            Expr::Or { lhs, rhs } => match idx {
                0 => Some(lhs),
                1 => Some(rhs),
                _ => None,
            },
            // Free has no child 0; its body sits at index 1.
            Expr::Free { body, .. } => (idx == 1).then_some(body),
            Expr::Let { bound, body, .. } => match idx {
                0 => Some(bound),
                1 => Some(body),
                _ => None,
            },
            Expr::Case { scrutinee, branches } => {
                if idx == 0 {
                    Some(scrutinee)
                } else {
                    branches.get(idx - 1).map(|b| &b.body)
                }
            }
        }
    }

    /// Visit every populated child index in ascending order.
    pub fn for_each_child<'s>(&'s self, mut f: impl FnMut(usize, &'s Arc<Expr>)) {
        match self {
            Expr::Var { .. } => {}
            Expr::Comb { args, .. } => {
                for (i, a) in args.iter().enumerate() {
                    f(i, a);
                }
            }
            Expr::Or { lhs, rhs } => {
                f(0, lhs);
                f(1, rhs);
            }
            Expr::Free { body, .. } => f(1, body),
            Expr::Let { bound, body, .. } => {
                f(0, bound);
                f(1, body);
            }
            Expr::Case { scrutinee, branches } => {
                f(0, scrutinee);
                for (i, b) in branches.iter().enumerate() {
                    f(i + 1, &b.body);
                }
            }
        }
    }

    /// A copy of this node with the child at `idx` swapped out.
    pub fn with_child(&self, idx: usize, new: Arc<Expr>) -> Option<Expr> {
        match self {
            Expr::Var { .. } => None,
            Expr::Comb { kind, name, args } => {
                if idx >= args.len() {
                    return None;
                }
                let mut args = args.clone();
                args[idx] = new;
                Some(Expr::Comb { kind: *kind, name: name.clone(), args })
            }
            Expr::Or { lhs, rhs } => match idx {
                0 => Some(Expr::Or { lhs: new, rhs: rhs.clone() }),
                1 => Some(Expr::Or { lhs: lhs.clone(), rhs: new }),
                _ => None,
            },
            Expr::Free { vars, .. } => {
                (idx == 1).then(|| Expr::Free { vars: vars.clone(), body: new })
            }
            Expr::Let { var, bound, body } => match idx {
                0 => Some(Expr::Let { var: *var, bound: new, body: body.clone() }),
                1 => Some(Expr::Let { var: *var, bound: bound.clone(), body: new }),
                _ => None,
            },
            Expr::Case { scrutinee, branches } => {
                if idx == 0 {
                    Some(Expr::Case { scrutinee: new, branches: branches.clone() })
                } else if idx - 1 < branches.len() {
                    let mut branches = branches.clone();
                    branches[idx - 1].body = new;
                    Some(Expr::Case { scrutinee: scrutinee.clone(), branches })
                } else {
                    None
                }
            }
        }
    }

    /// Number of nodes in the tree, this one included.
    pub fn node_count(&self) -> usize {
        let mut n = 0;
        let mut stack: Vec<&Expr> = vec![self];
        while let Some(e) = stack.pop() {
            n += 1;
            e.for_each_child(|_, c| stack.push(c));
        }
        n
    }
}

impl Program {
    pub fn node_count(&self) -> usize {
        self.functions.iter().map(|f| f.body.node_count()).sum()
    }
}

// ── CombKind wire format ────────────────────────────────────────────
//
// Full calls serialize as bare strings, partial calls as
// `{"part":"Func"|"Cons","missing":N}`.

impl Serialize for CombKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CombKind::FuncCall => s.serialize_str("FuncCall"),
            CombKind::ConsCall => s.serialize_str("ConsCall"),
            CombKind::FuncPartCall(m) => {
                let mut map = s.serialize_map(Some(2))?;
                map.serialize_entry("part", "Func")?;
                map.serialize_entry("missing", m)?;
                map.end()
            }
            CombKind::ConsPartCall(m) => {
                let mut map = s.serialize_map(Some(2))?;
                map.serialize_entry("part", "Cons")?;
                map.serialize_entry("missing", m)?;
                map.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for CombKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct KindVisitor;

        impl<'de> Visitor<'de> for KindVisitor {
            type Value = CombKind;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str(
                    "\"FuncCall\", \"ConsCall\", or {\"part\":\"Func\"|\"Cons\",\"missing\":N}",
                )
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<CombKind, E> {
                match v {
                    "FuncCall" => Ok(CombKind::FuncCall),
                    "ConsCall" => Ok(CombKind::ConsCall),
                    other => Err(E::unknown_variant(other, &["FuncCall", "ConsCall"])),
                }
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<CombKind, A::Error> {
                let mut part: Option<String> = None;
                let mut missing: Option<usize> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "part" => part = Some(map.next_value()?),
                        "missing" => missing = Some(map.next_value()?),
                        other => return Err(de::Error::unknown_field(other, &["part", "missing"])),
                    }
                }
                let part = part.ok_or_else(|| de::Error::missing_field("part"))?;
                let missing = missing.ok_or_else(|| de::Error::missing_field("missing"))?;
                match part.as_str() {
                    "Func" => Ok(CombKind::FuncPartCall(missing)),
                    "Cons" => Ok(CombKind::ConsPartCall(missing)),
                    other => Err(de::Error::unknown_variant(other, &["Func", "Cons"])),
                }
            }
        }

        d.deserialize_any(KindVisitor)
    }
}

// ── decode / encode ─────────────────────────────────────────────────

/// Why a document was rejected.
#[derive(Debug, Clone, thiserror::Error)]
pub enum DecodeError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// A structurally well-formed document that violates an IR invariant.
#[derive(Debug, Clone, thiserror::Error)]
pub enum InvariantError {
    #[error("function `{function}`: binder {var} introduced more than once")]
    DuplicateBinder { function: String, var: usize },
    #[error("function `{function}`: binder {var} collides with a parameter index")]
    BinderIsParam { function: String, var: usize },
    #[error("function `{function}`: case has two branches for constructor `{name}`")]
    OverlappingBranches { function: String, name: String },
    #[error("function `{function}`: branch pattern `{name}` repeats variable {var}")]
    DuplicatePatternVar { function: String, name: String, var: usize },
    #[error("function `{function}`: partial call `{name}` has missing < 1")]
    ZeroMissing { function: String, name: String },
    #[error("function `{function}`: case with no branches")]
    EmptyCase { function: String },
    #[error("duplicate function name `{0}`")]
    DuplicateFunction(String),
}

/// Parse a JSON document into a validated [`Program`].
///
/// Deep documents are handled by growing the stack instead of overflowing
/// it, so nesting depth is bounded by memory, not by a fixed limit.
pub fn decode_program(text: &str) -> Result<Program, DecodeError> {
    let mut de = serde_json::Deserializer::from_str(text);
    de.disable_recursion_limit();
    let program = {
        let stacked = serde_stacker::Deserializer::new(&mut de);
        Program::deserialize(stacked).map_err(classify)?
    };
    de.end().map_err(classify)?;
    program.validate()?;
    Ok(program)
}

fn classify(e: serde_json::Error) -> DecodeError {
    match e.classify() {
        serde_json::error::Category::Data => DecodeError::Schema(e.to_string()),
        _ => DecodeError::Syntax(e.to_string()),
    }
}

/// Canonical encoding: compact JSON with the documented field order.
///
/// `decode_program(encode_program(p))` reproduces `p` for every valid `p`.
pub fn encode_program(p: &Program) -> String {
    serde_json::to_string(p).expect("program serialization cannot fail")
}

impl Program {
    /// Check every invariant the loader guarantees.
    pub fn validate(&self) -> Result<(), InvariantError> {
        let mut names = HashSet::new();
        for f in &self.functions {
            if !names.insert(f.name.as_str()) {
                return Err(InvariantError::DuplicateFunction(f.name.clone()));
            }
            validate_body(&f.name, f.arity, &f.body)?;
        }
        Ok(())
    }
}

fn validate_body(function: &str, arity: usize, body: &Expr) -> Result<(), InvariantError> {
    let mut binders: HashSet<usize> = HashSet::new();
    let claim = |var: usize, binders: &mut HashSet<usize>| {
        if var < arity {
            return Err(InvariantError::BinderIsParam { function: function.into(), var });
        }
        if !binders.insert(var) {
            return Err(InvariantError::DuplicateBinder { function: function.into(), var });
        }
        Ok(())
    };

    let mut stack: Vec<&Expr> = vec![body];
    while let Some(e) = stack.pop() {
        match e {
            Expr::Var { .. } => {}
            Expr::Comb { kind, name, .. } => {
                if kind.missing() == Some(0) {
                    return Err(InvariantError::ZeroMissing {
                        function: function.into(),
                        name: name.clone(),
                    });
                }
            }
            Expr::Or { .. } => {}
            Expr::Free { vars, .. } => {
                for &v in vars {
                    claim(v, &mut binders)?;
                }
            }
            Expr::Let { var, .. } => claim(*var, &mut binders)?,
            Expr::Case { branches, .. } => {
                if branches.is_empty() {
                    return Err(InvariantError::EmptyCase { function: function.into() });
                }
                let mut seen = HashSet::new();
                for b in branches {
                    if !seen.insert(b.pattern.name.as_str()) {
                        return Err(InvariantError::OverlappingBranches {
                            function: function.into(),
                            name: b.pattern.name.clone(),
                        });
                    }
                    let mut pat_vars = HashSet::new();
                    for &v in &b.pattern.vars {
                        if !pat_vars.insert(v) {
                            return Err(InvariantError::DuplicatePatternVar {
                                function: function.into(),
                                name: b.pattern.name.clone(),
                                var: v,
                            });
                        }
                        claim(v, &mut binders)?;
                    }
                }
            }
        }
        e.for_each_child(|_, c| stack.push(c));
    }
    Ok(())
}

// ── ANF predicate ───────────────────────────────────────────────────

/// True iff every application in `e` has only variable arguments.
pub fn is_anf(e: &Expr) -> bool {
    let mut stack: Vec<&Expr> = vec![e];
    while let Some(node) = stack.pop() {
        if let Expr::Comb { args, .. } = node {
            if args.iter().any(|a| !matches!(&**a, Expr::Var { .. })) {
                return false;
            }
        }
        node.for_each_child(|_, c| stack.push(c));
    }
    true
}

// ── alpha-equivalence ───────────────────────────────────────────────

/// Structural equality modulo a bijective renaming of bound variables.
///
/// Unbound indices (function parameters) must match exactly.
pub fn alpha_eq(a: &Expr, b: &Expr) -> bool {
    let mut fwd = std::collections::HashMap::new();
    let mut bwd = std::collections::HashMap::new();
    alpha_eq_in(a, b, &mut fwd, &mut bwd)
}

type VarMap = std::collections::HashMap<usize, usize>;

fn alpha_eq_in(a: &Expr, b: &Expr, fwd: &mut VarMap, bwd: &mut VarMap) -> bool {
    match (a, b) {
        (Expr::Var { idx: x }, Expr::Var { idx: y }) => match fwd.get(x) {
            Some(mapped) => mapped == y,
            None => !bwd.contains_key(y) && x == y,
        },
        (
            Expr::Comb { kind: k1, name: n1, args: a1 },
            Expr::Comb { kind: k2, name: n2, args: a2 },
        ) => {
            k1 == k2
                && n1 == n2
                && a1.len() == a2.len()
                && a1.iter().zip(a2).all(|(x, y)| alpha_eq_in(x, y, fwd, bwd))
        }
        (Expr::Or { lhs: l1, rhs: r1 }, Expr::Or { lhs: l2, rhs: r2 }) => {
            alpha_eq_in(l1, l2, fwd, bwd) && alpha_eq_in(r1, r2, fwd, bwd)
        }
        (Expr::Free { vars: v1, body: b1 }, Expr::Free { vars: v2, body: b2 }) => {
            if v1.len() != v2.len() {
                return false;
            }
            with_bindings(v1, v2, fwd, bwd, |fwd, bwd| alpha_eq_in(b1, b2, fwd, bwd))
        }
        (
            Expr::Let { var: v1, bound: e1, body: b1 },
            Expr::Let { var: v2, bound: e2, body: b2 },
        ) => {
            // Bindings are non-recursive: the bound expression is compared
            // outside the binder's scope.
            alpha_eq_in(e1, e2, fwd, bwd)
                && with_bindings(&[*v1], &[*v2], fwd, bwd, |fwd, bwd| {
                    alpha_eq_in(b1, b2, fwd, bwd)
                })
        }
        (
            Expr::Case { scrutinee: s1, branches: bs1 },
            Expr::Case { scrutinee: s2, branches: bs2 },
        ) => {
            alpha_eq_in(s1, s2, fwd, bwd)
                && bs1.len() == bs2.len()
                && bs1.iter().zip(bs2).all(|(b1, b2)| {
                    b1.pattern.name == b2.pattern.name
                        && b1.pattern.vars.len() == b2.pattern.vars.len()
                        && with_bindings(&b1.pattern.vars, &b2.pattern.vars, fwd, bwd, |f, w| {
                            alpha_eq_in(&b1.body, &b2.body, f, w)
                        })
                })
        }
        _ => false,
    }
}

fn with_bindings(
    xs: &[usize],
    ys: &[usize],
    fwd: &mut VarMap,
    bwd: &mut VarMap,
    f: impl FnOnce(&mut VarMap, &mut VarMap) -> bool,
) -> bool {
    let saved_fwd: Vec<_> = xs.iter().map(|x| (*x, fwd.insert(*x, 0))).collect();
    let saved_bwd: Vec<_> = ys.iter().map(|y| (*y, bwd.insert(*y, 0))).collect();
    for (x, y) in xs.iter().zip(ys) {
        fwd.insert(*x, *y);
        bwd.insert(*y, *x);
    }
    let result = f(fwd, bwd);
    for (x, old) in saved_fwd {
        match old {
            Some(v) => fwd.insert(x, v),
            None => fwd.remove(&x),
        };
    }
    for (y, old) in saved_bwd {
        match old {
            Some(v) => bwd.insert(y, v),
            None => bwd.remove(&y),
        };
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The case term of the Boolean negation function, scrutinizing
    /// parameter 0.
    pub fn not_body() -> Arc<Expr> {
        Expr::case(
            Expr::var(0),
            vec![
                Branch::new("False", vec![], Expr::cons_call("True", vec![])),
                Branch::new("True", vec![], Expr::cons_call("False", vec![])),
            ],
        )
    }

    /// `not $ not True` as an application of the `$` operator.
    pub fn dollar_term() -> Arc<Expr> {
        Expr::func_call(
            "$",
            vec![
                Expr::func_part("not", vec![], 1),
                Expr::func_call("not", vec![Expr::cons_call("True", vec![])]),
            ],
        )
    }

    fn program_with_body(body: Arc<Expr>, arity: usize) -> Program {
        Program {
            module_name: "T".into(),
            functions: vec![Function { name: "f".into(), arity, body }],
        }
    }

    #[test]
    fn decode_smallest_term() {
        let p = decode_program(r#"{"module":"M","functions":[{"name":"f","arity":1,"body":{"tag":"Var","idx":0}}]}"#)
            .unwrap();
        assert_eq!(p.functions[0].body, Expr::var(0));
    }

    #[test]
    fn decode_not_body() {
        let text = r#"{"module":"M","functions":[{"name":"not","arity":1,"body":
            {"tag":"Case","scrutinee":{"tag":"Var","idx":0},"branches":[
                {"pattern":{"name":"False","vars":[]},"body":{"tag":"Comb","kind":"ConsCall","name":"True","args":[]}},
                {"pattern":{"name":"True","vars":[]},"body":{"tag":"Comb","kind":"ConsCall","name":"False","args":[]}}
            ]}}]}"#;
        let p = decode_program(text).unwrap();
        assert_eq!(p.functions[0].body, not_body());
    }

    #[test]
    fn decode_rejects_duplicate_binder() {
        // Two lets binding index 3 in one body.
        let body = Expr::let_in(
            3,
            Expr::cons_call("1", vec![]),
            Expr::let_in(3, Expr::cons_call("2", vec![]), Expr::var(3)),
        );
        let text = encode_program(&program_with_body(body, 0));
        match decode_program(&text) {
            Err(DecodeError::Invariant(InvariantError::DuplicateBinder { var: 3, .. })) => {}
            other => panic!("expected duplicate-binder error, got {other:?}"),
        }
    }

    #[test]
    fn decode_rejects_overlapping_branches() {
        let body = Expr::case(
            Expr::var(0),
            vec![
                Branch::new("C", vec![], Expr::var(0)),
                Branch::new("C", vec![], Expr::var(0)),
            ],
        );
        let text = encode_program(&program_with_body(body, 1));
        assert!(matches!(
            decode_program(&text),
            Err(DecodeError::Invariant(InvariantError::OverlappingBranches { .. }))
        ));
    }

    #[test]
    fn decode_rejects_zero_missing() {
        let text = r#"{"module":"M","functions":[{"name":"f","arity":0,"body":
            {"tag":"Comb","kind":{"part":"Func","missing":0},"name":"g","args":[]}}]}"#;
        assert!(matches!(
            decode_program(text),
            Err(DecodeError::Invariant(InvariantError::ZeroMissing { .. }))
        ));
    }

    #[test]
    fn decode_rejects_unknown_tag() {
        let text = r#"{"module":"M","functions":[{"name":"f","arity":0,"body":{"tag":"Lambda"}}]}"#;
        assert!(matches!(decode_program(text), Err(DecodeError::Schema(_))));
    }

    #[test]
    fn decode_rejects_malformed_json() {
        assert!(matches!(decode_program("{"), Err(DecodeError::Syntax(_))));
    }

    #[test]
    fn decode_accepts_any_field_order() {
        let text = r#"{"functions":[{"body":{"idx":0,"tag":"Var"},"arity":1,"name":"f"}],"module":"M"}"#;
        let p = decode_program(text).unwrap();
        assert_eq!(p.functions[0].body, Expr::var(0));
    }

    #[test]
    fn encode_var_is_bit_exact() {
        assert_eq!(serde_json::to_string(&*Expr::var(0)).unwrap(), r#"{"tag":"Var","idx":0}"#);
    }

    #[test]
    fn encode_partial_kind_is_bit_exact() {
        assert_eq!(
            serde_json::to_string(&*Expr::func_part("not", vec![], 1)).unwrap(),
            r#"{"tag":"Comb","kind":{"part":"Func","missing":1},"name":"not","args":[]}"#
        );
    }

    #[test]
    fn round_trip_dollar_term() {
        let p = program_with_body(dollar_term(), 0);
        assert_eq!(decode_program(&encode_program(&p)).unwrap(), p);
    }

    #[test]
    fn is_anf_accepts_variable_arguments() {
        assert!(is_anf(&Expr::func_call("f", vec![Expr::var(1)])));
    }

    #[test]
    fn is_anf_rejects_nested_call() {
        let e = Expr::func_call(
            "insert",
            vec![Expr::var(0), Expr::func_call("g", vec![Expr::var(1)])],
        );
        assert!(!is_anf(&e));
    }

    #[test]
    fn is_anf_accepts_anf_insert_branch() {
        // let z = insert(x, ys) in y : z
        let e = Expr::let_in(
            4,
            Expr::func_call("insert", vec![Expr::var(0), Expr::var(3)]),
            Expr::cons_call(":", vec![Expr::var(2), Expr::var(4)]),
        );
        assert!(is_anf(&e));
    }

    #[test]
    fn alpha_eq_renames_binders_not_params() {
        let a = Expr::let_in(4, Expr::var(0), Expr::var(4));
        let b = Expr::let_in(7, Expr::var(0), Expr::var(7));
        assert!(alpha_eq(&a, &b));
        let c = Expr::let_in(7, Expr::var(1), Expr::var(7));
        assert!(!alpha_eq(&a, &c));
    }

    #[test]
    fn alpha_eq_requires_bijection() {
        // Both sides bind two variables; mapping them to a single one is not
        // a bijection.
        let a = Expr::let_in(
            4,
            Expr::cons_call("1", vec![]),
            Expr::let_in(5, Expr::cons_call("1", vec![]), Expr::cons_call("P", vec![Expr::var(4), Expr::var(5)])),
        );
        let b = Expr::let_in(
            4,
            Expr::cons_call("1", vec![]),
            Expr::let_in(5, Expr::cons_call("1", vec![]), Expr::cons_call("P", vec![Expr::var(5), Expr::var(5)])),
        );
        assert!(!alpha_eq(&a, &b));
    }
}
