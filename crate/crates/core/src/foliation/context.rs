use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{Field, Poly};

/// Ordered variable names of one computation, with the variables allowed to
/// carry negative exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyContext {
    names: Vec<String>,
    laurent: Vec<bool>,
}

impl PolyContext {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let laurent = vec![false; names.len()];
        Self::with_laurent(names, laurent)
    }

    pub fn with_laurent(names: Vec<String>, laurent: Vec<bool>) -> Result<Arc<Self>> {
        if names.len() != laurent.len() {
            return Err(Error::Invalid("one Laurent flag per variable".into()));
        }
        if names.is_empty() {
            return Err(Error::Invalid("a context needs at least one variable".into()));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if n.is_empty() || !n.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(Error::Invalid(format!("bad variable name {n:?}")));
            }
            if !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Invalid(format!("bad variable name {n:?}")));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::Invalid(format!("duplicate variable {n}")));
            }
        }
        Ok(Arc::new(Self { names, laurent }))
    }

    /// This context followed by further variables.
    pub fn extend(&self, names: &[String], laurent: &[bool]) -> Result<Arc<Self>> {
        let mut n = self.names.clone();
        n.extend_from_slice(names);
        let mut l = self.laurent.clone();
        l.extend_from_slice(laurent);
        Self::with_laurent(n, l)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.laurent[i]
    }

    pub fn var<K: Field>(&self, field: K, i: usize) -> Poly<K> {
        Poly::var(field, self.nvars(), i)
    }

    /// Checks the variable count and that negative powers only sit on Laurent variables.
    pub fn admits<K: Field>(&self, f: &Poly<K>) -> Result<()> {
        if f.nvars() != self.nvars() {
            return Err(Error::VariableCountMismatch(self.nvars(), f.nvars()));
        }
        for (e, _) in f.terms() {
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k < 0 && !self.laurent[i] {
                    return Err(Error::LaurentNotAllowed(self.names[i].clone()));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn same(a: &Arc<PolyContext>, b: &Arc<PolyContext>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}
