//! Name-keyed registries of strategy constructors.

use std::fmt;

use crate::error::{Error, Result};

type Factory<T, A> = Box<dyn Fn(&A) -> Box<T> + Send + Sync>;

struct Entry<T: ?Sized, A> {
    name: &'static str,
    summary: &'static str,
    build: Factory<T, A>,
}

/// Ordered map from a strategy name to a constructor taking options `A`.
pub struct Registry<T: ?Sized, A = ()> {
    kind: &'static str,
    entries: Vec<Entry<T, A>>,
}

impl<T: ?Sized, A> Registry<T, A> {
    pub fn new(kind: &'static str) -> Self {
        Self {
            kind,
            entries: Vec::new(),
        }
    }

    /// Registers `build` under `name`, replacing any previous entry.
    pub fn register<F>(&mut self, name: &'static str, summary: &'static str, build: F) -> &mut Self
    where
        F: Fn(&A) -> Box<T> + Send + Sync + 'static,
    {
        self.entries.retain(|e| e.name != name);
        self.entries.push(Entry {
            name,
            summary,
            build: Box::new(build),
        });
        self
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.iter().any(|e| e.name == name)
    }

    pub fn build(&self, name: &str, options: &A) -> Result<Box<T>> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| (e.build)(options))
            .ok_or_else(|| {
                Error::invalid(format!(
                    "unknown {} '{name}' (available: {})",
                    self.kind,
                    self.names().join(", ")
                ))
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name).collect()
    }

    /// `(name, summary)` pairs in registration order.
    pub fn describe(&self) -> Vec<(&'static str, &'static str)> {
        self.entries.iter().map(|e| (e.name, e.summary)).collect()
    }

    pub fn kind(&self) -> &'static str {
        self.kind
    }
}

impl<T: ?Sized> Registry<T, ()> {
    pub fn build_default(&self, name: &str) -> Result<Box<T>> {
        self.build(name, &())
    }
}

impl<T: ?Sized, A> fmt::Debug for Registry<T, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Registry")
            .field("kind", &self.kind)
            .field("names", &self.names())
            .finish()
    }
}
