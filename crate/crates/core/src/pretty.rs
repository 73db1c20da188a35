//! Human-readable rendering of programs and expressions.
//!
//! The layout is fully parenthesized prefix notation. Small subtrees stay
//! on one line; anything wider than the wrap column breaks into an
//! indented block. Missing arguments of partial applications render as
//! `_` placeholders, one per missing argument.

use crate::ir::{CombKind, Expr, Program};

const WRAP: usize = 80;
const INDENT: &str = "  ";

/// Render a whole program, one function per paragraph.
pub fn pretty_program(p: &Program) -> String {
    let mut out = format!("module {}\n", p.module_name);
    for f in &p.functions {
        out.push('\n');
        out.push_str(&format!("{}/{} =\n", f.name, f.arity));
        let mut body = String::new();
        block(&f.body, 1, &mut body);
        out.push_str(&body);
        out.push('\n');
    }
    out
}

/// Render one expression, wrapped at the default column.
pub fn pretty_expr(e: &Expr) -> String {
    let mut out = String::new();
    block(e, 0, &mut out);
    out
}

fn inline(e: &Expr) -> String {
    match e {
        Expr::Var { idx } => format!("v{idx}"),
        Expr::Comb { kind, name, args } => {
            let mut parts: Vec<String> = vec![name.clone()];
            parts.extend(args.iter().map(|a| inline(a)));
            match kind {
                CombKind::FuncCall | CombKind::ConsCall => {}
                CombKind::FuncPartCall(m) | CombKind::ConsPartCall(m) => {
                    parts.extend(std::iter::repeat_n("_".to_string(), *m));
                }
            }
            if parts.len() == 1 && matches!(kind, CombKind::ConsCall | CombKind::FuncCall) {
                if matches!(kind, CombKind::ConsCall) {
                    parts.remove(0)
                } else {
                    format!("({})", parts.remove(0))
                }
            } else {
                format!("({})", parts.join(" "))
            }
        }
        Expr::Or { lhs, rhs } => format!("(? {} {})", inline(lhs), inline(rhs)),
        Expr::Free { vars, body } => {
            let vs: Vec<String> = vars.iter().map(|v| format!("v{v}")).collect();
            format!("(free {} in {})", vs.join(" "), inline(body))
        }
        Expr::Let { var, bound, body } => {
            format!("(let v{var} = {} in {})", inline(bound), inline(body))
        }
        Expr::Case { scrutinee, branches } => {
            let mut parts = vec![format!("(case {} of", inline(scrutinee))];
            for b in branches {
                parts.push(branch_inline(b));
            }
            format!("{})", parts.join(" "))
        }
    }
}

fn branch_inline(b: &crate::ir::Branch) -> String {
    format!("({} -> {})", pattern_inline(b), inline(&b.body))
}

fn pattern_inline(b: &crate::ir::Branch) -> String {
    if b.pattern.vars.is_empty() {
        b.pattern.name.clone()
    } else {
        let vs: Vec<String> = b.pattern.vars.iter().map(|v| format!("v{v}")).collect();
        format!("({} {})", b.pattern.name, vs.join(" "))
    }
}

fn block(e: &Expr, depth: usize, out: &mut String) {
    let pad = INDENT.repeat(depth);
    let flat = inline(e);
    if pad.len() + flat.len() <= WRAP {
        out.push_str(&pad);
        out.push_str(&flat);
        return;
    }
    match e {
        Expr::Var { .. } => {
            out.push_str(&pad);
            out.push_str(&flat);
        }
        Expr::Comb { kind, name, args } => {
            out.push_str(&pad);
            out.push('(');
            out.push_str(name);
            for a in args {
                out.push('\n');
                block(a, depth + 1, out);
            }
            if let CombKind::FuncPartCall(m) | CombKind::ConsPartCall(m) = kind {
                for _ in 0..*m {
                    out.push('\n');
                    out.push_str(&INDENT.repeat(depth + 1));
                    out.push('_');
                }
            }
            out.push(')');
        }
        Expr::Or { lhs, rhs } => {
            out.push_str(&pad);
            out.push_str("(?\n");
            block(lhs, depth + 1, out);
            out.push('\n');
            block(rhs, depth + 1, out);
            out.push(')');
        }
        Expr::Free { vars, body } => {
            let vs: Vec<String> = vars.iter().map(|v| format!("v{v}")).collect();
            out.push_str(&pad);
            out.push_str(&format!("(free {} in\n", vs.join(" ")));
            block(body, depth + 1, out);
            out.push(')');
        }
        Expr::Let { var, bound, body } => {
            out.push_str(&pad);
            out.push_str(&format!("(let v{var} =\n"));
            block(bound, depth + 1, out);
            out.push('\n');
            out.push_str(&pad);
            out.push_str(" in\n");
            block(body, depth + 1, out);
            out.push(')');
        }
        Expr::Case { scrutinee, branches } => {
            out.push_str(&pad);
            out.push_str("(case\n");
            block(scrutinee, depth + 1, out);
            out.push('\n');
            out.push_str(&pad);
            out.push_str(" of");
            for b in branches {
                out.push('\n');
                out.push_str(&INDENT.repeat(depth + 1));
                out.push_str(&format!("({} ->\n", pattern_inline(b)));
                block(&b.body, depth + 2, out);
                out.push(')');
            }
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::ir::Expr;

    #[test]
    fn small_expressions_stay_inline() {
        let e = Expr::func_call("$", vec![Expr::func_part("not", vec![], 1), Expr::var(0)]);
        assert_eq!(pretty_expr(&e), "($ (not _) v0)");
    }

    #[test]
    fn zero_arity_constructor_renders_bare() {
        assert_eq!(pretty_expr(&Expr::cons_call("True", vec![])), "True");
        assert_eq!(pretty_expr(&Expr::func_call("main", vec![])), "(main)");
    }

    #[test]
    fn program_rendering_names_every_function() {
        let text = pretty_program(&corpus::insert_program());
        assert!(text.starts_with("module Insert\n"));
        assert!(text.contains("insert/2 ="));
        assert!(text.contains("(case v1 of ((: v2 v3) -> (: v2 (insert v0 v3))))"));
    }

    #[test]
    fn wide_expressions_break_into_blocks() {
        let wide = Expr::cons_call(
            "T",
            (0..30).map(|_| Expr::cons_call("SomeLongConstructor", vec![])).collect(),
        );
        let text = pretty_expr(&wide);
        assert!(text.lines().count() > 1);
        assert!(text.lines().all(|l| l.len() <= 100));
    }

    #[test]
    fn let_and_free_blocks_render_binders() {
        let e = Expr::let_in(
            9,
            Expr::cons_call("VeryLongConstructorName", (0..8).map(|_| Expr::var(1)).collect()),
            Expr::free(vec![4], Expr::cons_call("AnotherQuiteLongName", vec![Expr::var(4), Expr::var(9), Expr::var(9), Expr::var(9), Expr::var(9), Expr::var(9), Expr::var(9), Expr::var(9)])),
        );
        let text = pretty_expr(&e);
        assert!(text.contains("(let v9 ="));
        assert!(text.contains("free v4 in"));
    }
}
