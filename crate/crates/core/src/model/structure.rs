use std::collections::BTreeMap;
use std::fmt;

use super::domain::Domain;
use super::quantifier::Quantifier;
use super::relation::Relation;
use crate::error::{Error, Result};

/// A first- or second-order relation; the two kinds of object a structure holds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Object {
    Relation(Relation),
    Quantifier(Quantifier),
}

impl Object {
    pub fn size(&self) -> usize {
        match self {
            Object::Relation(r) => r.size(),
            Object::Quantifier(q) => q.size(),
        }
    }
}

impl From<Relation> for Object {
    fn from(r: Relation) -> Self {
        Object::Relation(r)
    }
}

impl From<Quantifier> for Object {
    fn from(q: Quantifier) -> Self {
        Object::Quantifier(q)
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Relation(r) => write!(f, "{r}"),
            Object::Quantifier(q) => write!(f, "{q}"),
        }
    }
}

/// Names are bare tokens so that formulas render unambiguously.
pub fn validate_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
        && !name.chars().next().is_some_and(|c| c.is_ascii_digit());
    if !ok {
        return Err(Error::Invalid(format!(
            "name `{name}` must start with a letter, `_`, `-` or `.` and contain only [A-Za-z0-9_.-]"
        )));
    }
    Ok(())
}

/// A second-order structure: a domain with named relations and quantifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    domain: Domain,
    relations: BTreeMap<String, Relation>,
    quantifiers: BTreeMap<String, Quantifier>,
}

impl Structure {
    pub fn new(domain: Domain) -> Self {
        Structure {
            domain,
            relations: BTreeMap::new(),
            quantifiers: BTreeMap::new(),
        }
    }

    pub fn empty(size: usize) -> Result<Self> {
        Ok(Structure::new(Domain::new(size)?))
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn size(&self) -> usize {
        self.domain.size()
    }

    fn check_fresh(&self, name: &str, size: usize) -> Result<()> {
        validate_name(name)?;
        if size != self.size() {
            return Err(Error::DomainMismatch {
                expected: self.size(),
                found: size,
            });
        }
        if self.relations.contains_key(name) || self.quantifiers.contains_key(name) {
            return Err(Error::Invalid(format!("duplicate name `{name}`")));
        }
        Ok(())
    }

    pub fn add_relation(&mut self, name: impl Into<String>, r: Relation) -> Result<()> {
        let name = name.into();
        self.check_fresh(&name, r.size())?;
        self.relations.insert(name, r);
        Ok(())
    }

    pub fn add_quantifier(&mut self, name: impl Into<String>, q: Quantifier) -> Result<()> {
        let name = name.into();
        self.check_fresh(&name, q.size())?;
        self.quantifiers.insert(name, q);
        Ok(())
    }

    pub fn add_object(&mut self, name: impl Into<String>, obj: Object) -> Result<()> {
        match obj {
            Object::Relation(r) => self.add_relation(name, r),
            Object::Quantifier(q) => self.add_quantifier(name, q),
        }
    }

    pub fn with_relation(mut self, name: impl Into<String>, r: Relation) -> Result<Self> {
        self.add_relation(name, r)?;
        Ok(self)
    }

    pub fn with_quantifier(mut self, name: impl Into<String>, q: Quantifier) -> Result<Self> {
        self.add_quantifier(name, q)?;
        Ok(self)
    }

    /// Adds or replaces a relation without name validation; used for
    /// reserved symbols such as the candidate symbols of definitions.
    pub(crate) fn set_relation_unchecked(&mut self, name: &str, r: Relation) {
        self.relations.insert(name.to_string(), r);
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.get(name)
    }

    pub fn quantifier(&self, name: &str) -> Option<&Quantifier> {
        self.quantifiers.get(name)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&String, &Relation)> {
        self.relations.iter()
    }

    pub fn quantifiers(&self) -> impl Iterator<Item = (&String, &Quantifier)> {
        self.quantifiers.iter()
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn quantifier_count(&self) -> usize {
        self.quantifiers.len()
    }

    pub fn is_first_order(&self) -> bool {
        self.quantifiers.is_empty()
    }

    pub fn max_relation_arity(&self) -> usize {
        self.relations.values().map(Relation::arity).max().unwrap_or(0)
    }

    pub fn max_slot_arity(&self) -> usize {
        self.quantifiers
            .values()
            .map(|q| q.qtype().max_slot())
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_across_kinds() {
        let mut s = Structure::empty(2).unwrap();
        s.add_relation("P", Relation::unary(2, &[0]).unwrap()).unwrap();
        let q = Quantifier::monadic(2, &[&[0]]).unwrap();
        assert!(s.add_quantifier("P", q.clone()).is_err());
        s.add_quantifier("Q", q).unwrap();
        assert!(s.add_relation("bad name", Relation::empty(2, 1)).is_err());
        assert!(s.add_relation("R", Relation::empty(3, 1)).is_err());
    }
}
