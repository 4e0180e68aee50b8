use std::collections::BTreeSet;
use std::fmt;

use super::relation::Relation;
use crate::error::{Error, Result};

/// Slot arities `(i_1, …, i_k)` of a second-order relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantifierType(Vec<usize>);

impl QuantifierType {
    pub fn new(slots: Vec<usize>) -> Result<Self> {
        if slots.is_empty() {
            return Err(Error::Invalid("quantifier type needs at least one slot".into()));
        }
        if slots.contains(&0) {
            return Err(Error::Invalid("quantifier slot arities must be positive".into()));
        }
        Ok(QuantifierType(slots))
    }

    /// Type `(1, …, 1)` with `m` slots.
    pub fn monadic(m: usize) -> Result<Self> {
        QuantifierType::new(vec![1; m])
    }

    pub fn slots(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_slot(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for QuantifierType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A second-order relation: a set of relation sequences matching a type.
///
/// Members are kept in a sorted set, so two quantifiers are equal exactly
/// when they have the same members.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quantifier {
    size: usize,
    qtype: QuantifierType,
    members: BTreeSet<Vec<Relation>>,
}

impl Quantifier {
    pub fn new(size: usize, qtype: QuantifierType) -> Self {
        Quantifier {
            size,
            qtype,
            members: BTreeSet::new(),
        }
    }

    pub fn from_members(
        size: usize,
        qtype: QuantifierType,
        members: impl IntoIterator<Item = Vec<Relation>>,
    ) -> Result<Self> {
        let mut q = Quantifier::new(size, qtype);
        for m in members {
            q.insert(m)?;
        }
        Ok(q)
    }

    /// Type-(1) quantifier whose members are the given subsets.
    pub fn monadic(size: usize, sets: &[&[usize]]) -> Result<Self> {
        let mut q = Quantifier::new(size, QuantifierType::monadic(1)?);
        for s in sets {
            q.insert(vec![Relation::unary(size, s)?])?;
        }
        Ok(q)
    }

    pub fn check_member(&self, member: &[Relation]) -> Result<()> {
        if member.len() != self.qtype.len() {
            return Err(Error::ArityMismatch {
                name: "quantifier member".into(),
                expected: self.qtype.len(),
                found: member.len(),
            });
        }
        for (r, &arity) in member.iter().zip(self.qtype.slots()) {
            if r.size() != self.size {
                return Err(Error::DomainMismatch {
                    expected: self.size,
                    found: r.size(),
                });
            }
            if r.arity() != arity {
                return Err(Error::ArityMismatch {
                    name: "quantifier slot".into(),
                    expected: arity,
                    found: r.arity(),
                });
            }
        }
        Ok(())
    }

    pub fn insert(&mut self, member: Vec<Relation>) -> Result<bool> {
        self.check_member(&member)?;
        Ok(self.members.insert(member))
    }

    pub(crate) fn insert_unchecked(&mut self, member: Vec<Relation>) {
        self.members.insert(member);
    }

    pub fn contains(&self, member: &[Relation]) -> bool {
        self.members.contains(member)
    }

    pub fn members(&self) -> impl Iterator<Item = &Vec<Relation>> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn qtype(&self) -> &QuantifierType {
        &self.qtype
    }
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .members
            .iter()
            .map(|m| {
                let slots: Vec<String> = m.iter().map(|r| r.to_string()).collect();
                format!("<{}>", slots.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quantifier{}{}", self.qtype, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_validation() {
        assert!(QuantifierType::new(vec![]).is_err());
        assert!(QuantifierType::new(vec![1, 0]).is_err());
        assert_eq!(QuantifierType::new(vec![2, 1]).unwrap().to_string(), "(2,1)");
    }

    #[test]
    fn members_must_match_type() {
        let mut q = Quantifier::new(3, QuantifierType::new(vec![1]).unwrap());
        assert!(q.insert(vec![Relation::empty(3, 2)]).is_err());
        assert!(q.insert(vec![Relation::empty(2, 1)]).is_err());
        assert!(q.insert(vec![Relation::empty(3, 1)]).unwrap());
        assert!(!q.insert(vec![Relation::empty(3, 1)]).unwrap());
        assert_eq!(q.len(), 1);
    }
}
