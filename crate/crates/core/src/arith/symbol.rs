use std::fmt;
use std::sync::Arc;

/// A named indeterminate.
///
/// The derived ordering is the variable order used everywhere in the crate:
/// `t` first, then `alpha`, then `eps`, then user symbols alphabetically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    T,
    Alpha,
    Epsilon,
    User(Arc<str>),
}

impl Symbol {
    /// Resolves a symbol name, accepting the ASCII and Greek spellings of the
    /// built-in parameters.
    pub fn from_name(name: &str) -> Symbol {
        match name {
            "t" => Symbol::T,
            "alpha" | "a" | "α" => Symbol::Alpha,
            "eps" | "epsilon" | "ε" => Symbol::Epsilon,
            other => Symbol::User(Arc::from(other)),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Symbol::T => "t",
            Symbol::Alpha => "alpha",
            Symbol::Epsilon => "eps",
            Symbol::User(s) => s,
        }
    }

    pub fn is_t(&self) -> bool {
        matches!(self, Symbol::T)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
