use crate::transforms::{H1Kind, H2Kind};

use super::theorems::{
    ClosedFormTheorem, CompleteOnEdges, CompleteOnVertices, ComplementOnVertices, PlainSubdivision,
};
use super::TheoremId;

/// Closed-form strategies keyed by name ("T32", ...).
pub struct TheoremRegistry {
    theorems: Vec<Box<dyn ClosedFormTheorem>>,
}

impl TheoremRegistry {
    pub fn empty() -> Self {
        TheoremRegistry { theorems: Vec::new() }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(PlainSubdivision));
        r.register(Box::new(ComplementOnVertices));
        r.register(Box::new(CompleteOnEdges));
        r.register(Box::new(CompleteOnVertices));
        r
    }

    /// Adds `theorem`, replacing any entry with the same name.
    pub fn register(&mut self, theorem: Box<dyn ClosedFormTheorem>) {
        self.theorems.retain(|t| t.name() != theorem.name());
        self.theorems.push(theorem);
    }

    /// Lookup by name; accepts anything [`TheoremId`] parses ("T33", "t33", "3.3").
    pub fn get(&self, name: &str) -> Option<&dyn ClosedFormTheorem> {
        let wanted = name
            .parse::<TheoremId>()
            .map(|id| id.as_str().to_string())
            .unwrap_or_else(|_| name.to_string());
        self.theorems
            .iter()
            .find(|t| t.name() == wanted)
            .map(|t| t.as_ref())
    }

    pub fn by_id(&self, id: TheoremId) -> Option<&dyn ClosedFormTheorem> {
        self.get(id.as_str())
    }

    /// First registered theorem covering the kind pair.
    pub fn for_kinds(&self, h1: H1Kind, h2: H2Kind) -> Option<&dyn ClosedFormTheorem> {
        self.theorems
            .iter()
            .find(|t| t.covers(h1, h2))
            .map(|t| t.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.theorems.iter().map(|t| t.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn ClosedFormTheorem> {
        self.theorems.iter().map(|t| t.as_ref())
    }
}

impl Default for TheoremRegistry {
    fn default() -> Self {
        Self::standard()
    }
}
