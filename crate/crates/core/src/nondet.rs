//! Non-determinism as lazily enumerable alternative sets.
//!
//! [`Choices`] is a re-enumerable description of a computation with zero or
//! more results, ordered left to right. Enumeration is lazy: alternatives
//! are produced on demand, so a computation may have infinitely many
//! results and still answer [`Choices::one_value`] in finite time whenever
//! the leftmost result exists at finite depth.

use std::rc::Rc;

type MakeIter<T> = Rc<dyn Fn() -> Box<dyn Iterator<Item = T>>>;

/// A lazily enumerated, ordered collection of alternatives.
///
/// Cloning is cheap and enumeration never consumes the value: `iter` can be
/// called any number of times, each time replaying the alternatives in the
/// same order.
pub struct Choices<T> {
    make: MakeIter<T>,
}

impl<T> Clone for Choices<T> {
    fn clone(&self) -> Self {
        Choices { make: Rc::clone(&self.make) }
    }
}

/// An iterator that builds its inner iterator on first use.
///
/// `Iterator::chain` and `flat_map` evaluate their arguments eagerly; this
/// wrapper keeps the right-hand sides of `choose` and the continuations of
/// `bind` unevaluated until enumeration actually reaches them.
struct Deferred<T> {
    state: DeferredState<T>,
}

enum DeferredState<T> {
    Pending(MakeIter<T>),
    Running(Box<dyn Iterator<Item = T>>),
}

impl<T> Iterator for Deferred<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        if let DeferredState::Pending(make) = &self.state {
            self.state = DeferredState::Running(make());
        }
        match &mut self.state {
            DeferredState::Running(it) => it.next(),
            DeferredState::Pending(_) => unreachable!(),
        }
    }
}

impl<T: 'static> Choices<T> {
    /// No alternatives.
    pub fn fail() -> Choices<T> {
        Choices { make: Rc::new(|| Box::new(std::iter::empty())) }
    }

    /// Exactly one alternative.
    pub fn pure(value: T) -> Choices<T>
    where
        T: Clone,
    {
        Choices { make: Rc::new(move || Box::new(std::iter::once(value.clone()))) }
    }

    /// All alternatives of `self`, then all alternatives of `other`.
    pub fn choose(&self, other: &Choices<T>) -> Choices<T> {
        let lhs = Rc::clone(&self.make);
        let rhs = Rc::clone(&other.make);
        Choices {
            make: Rc::new(move || {
                let left = Deferred { state: DeferredState::Pending(Rc::clone(&lhs)) };
                let right = Deferred { state: DeferredState::Pending(Rc::clone(&rhs)) };
                Box::new(left.chain(right))
            }),
        }
    }

    /// Feed every alternative through `f`, concatenating the results in
    /// order. `f` runs only for alternatives enumeration reaches.
    pub fn bind<U: 'static>(&self, f: impl Fn(T) -> Choices<U> + 'static) -> Choices<U> {
        let make = Rc::clone(&self.make);
        let f = Rc::new(f);
        Choices {
            make: Rc::new(move || {
                let f = Rc::clone(&f);
                Box::new(make().flat_map(move |x| {
                    let inner = f(x);
                    Deferred { state: DeferredState::Pending(inner.make) }
                }))
            }),
        }
    }

    /// Transform every alternative, preserving order and count.
    pub fn map<U: 'static>(&self, f: impl Fn(T) -> U + 'static) -> Choices<U> {
        let make = Rc::clone(&self.make);
        let f = Rc::new(f);
        Choices {
            make: Rc::new(move || {
                let f = Rc::clone(&f);
                Box::new(make().map(move |x| f(x)))
            }),
        }
    }

    /// Keep only alternatives satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&T) -> bool + 'static) -> Choices<T> {
        let make = Rc::clone(&self.make);
        let keep = Rc::new(keep);
        Choices {
            make: Rc::new(move || {
                let keep = Rc::clone(&keep);
                Box::new(make().filter(move |x| keep(x)))
            }),
        }
    }

    /// Defer construction of a computation until it is enumerated.
    ///
    /// Required for corecursive definitions: `f` may mention the value being
    /// defined without forcing it.
    pub fn defer(f: impl Fn() -> Choices<T> + 'static) -> Choices<T> {
        let f = Rc::new(f);
        Choices {
            make: Rc::new(move || {
                let inner = f();
                Box::new(Deferred { state: DeferredState::Pending(inner.make) })
            }),
        }
    }

    /// Alternatives taken from a vector, in vector order.
    pub fn from_vec(items: Vec<T>) -> Choices<T>
    where
        T: Clone,
    {
        let items = Rc::new(items);
        Choices {
            make: Rc::new(move || {
                let items = Rc::clone(&items);
                Box::new((0..items.len()).map(move |i| items[i].clone()))
            }),
        }
    }

    /// Alternatives produced by a fresh iterator per enumeration.
    pub fn from_factory(make: impl Fn() -> Box<dyn Iterator<Item = T>> + 'static) -> Choices<T> {
        Choices { make: Rc::new(make) }
    }

    /// Enumerate the alternatives from the left.
    pub fn iter(&self) -> impl Iterator<Item = T> {
        (self.make)()
    }

    /// The leftmost alternative, if any. Forces only as much of the
    /// computation as that alternative needs.
    pub fn one_value(&self) -> Option<T> {
        self.iter().next()
    }

    /// Every alternative, left to right. Diverges if there are infinitely
    /// many.
    pub fn all_values(&self) -> Vec<T> {
        self.iter().collect()
    }
}
