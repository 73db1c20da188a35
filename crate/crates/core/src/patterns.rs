//! Pattern matching by enumeration.
//!
//! The matchers here invert data constructors the way functional patterns
//! do: instead of destructuring one fixed shape, they enumerate every way a
//! value could have been built by the pattern and emit one alternative per
//! way. Callers compose them with [`Choices`] combinators.

use std::rc::Rc;
use std::sync::Arc;

use crate::ir::{Branch, Expr};
use crate::nondet::Choices;

/// Every decomposition of `items` into `prefix ++ suffix`, ordered by
/// prefix length from 0 to `items.len()`.
pub fn splits<T: Clone + 'static>(items: Rc<Vec<T>>) -> Choices<(Vec<T>, Vec<T>)> {
    Choices::from_factory(move || {
        let items = Rc::clone(&items);
        Box::new((0..=items.len()).map(move |k| (items[..k].to_vec(), items[k..].to_vec())))
    })
}

/// Elements that occur twice in a row, one alternative per adjacent pair,
/// in left-to-right order.
///
/// Matches `prefix ++ [x, x] ++ rest` for every choice of `prefix`.
pub fn adjacent_dup<T: Clone + PartialEq + 'static>(items: &[T]) -> Choices<T> {
    splits(Rc::new(items.to_vec()))
        .filter(|(_, suffix)| suffix.len() >= 2 && suffix[0] == suffix[1])
        .map(|(_, suffix)| suffix.into_iter().next().expect("suffix checked non-empty"))
}

/// The body of the branch for 0-ary constructor `name`, if present.
///
/// Matches `pre ++ [Branch (Pattern name []) body] ++ post`; branch names
/// are unique within a case, so at most one alternative is produced.
pub fn with_branch(branches: Rc<Vec<Branch>>, name: String) -> Choices<Arc<Expr>> {
    splits(branches)
        .filter(move |(_, suffix)| {
            suffix
                .first()
                .is_some_and(|b| b.pattern.name == name && b.pattern.vars.is_empty())
        })
        .map(|(_, suffix)| suffix.into_iter().next().expect("suffix checked non-empty").body)
}

/// Pieces of a matched apply operator: the partially applied function's
/// name, its held arguments, its missing count, and the supplied argument.
pub type DollarParts = (String, Vec<Arc<Expr>>, usize, Arc<Expr>);

/// Decompose an application of the apply operator.
///
/// Matches `Comb FuncCall "$" [Comb (FuncPartCall missing) f args, x]`,
/// yielding `(f, args, missing, x)`. Partial constructor applications in
/// the first position are not matched.
pub fn match_dollar(e: &Expr) -> Choices<DollarParts> {
    use crate::ir::CombKind;
    if let Expr::Comb { kind: CombKind::FuncCall, name, args } = e {
        if name == "$" && args.len() == 2 {
            if let Expr::Comb { kind: CombKind::FuncPartCall(missing), name: f, args: fargs } =
                &*args[0]
            {
                return Choices::pure((f.clone(), fargs.clone(), *missing, args[1].clone()));
            }
        }
    }
    Choices::fail()
}
