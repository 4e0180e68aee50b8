//! JSON documents for structures and transformation sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Permutation, Quantifier, QuantifierType, Relation, Structure};
use crate::similarity::Similarity;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDocument {
    pub name: String,
    pub arity: usize,
    pub tuples: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArgumentDocument {
    pub tuples: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantifierDocument {
    pub name: String,
    #[serde(rename = "type")]
    pub qtype: Vec<usize>,
    pub members: Vec<Vec<ArgumentDocument>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDocument {
    pub domain_size: usize,
    #[serde(default)]
    pub relations: Vec<RelationDocument>,
    #[serde(default)]
    pub quantifiers: Vec<QuantifierDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformDocument {
    pub domain_size: usize,
    #[serde(default)]
    pub permutations: Vec<Vec<usize>>,
    #[serde(default)]
    pub similarities: Vec<Vec<(usize, usize)>>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn context(what: String) -> impl FnOnce(Error) -> Error {
    move |e| Error::Invalid(format!("{what}: {e}"))
}

fn relation_from(n: usize, arity: usize, tuples: &[Vec<usize>]) -> Result<Relation> {
    Relation::from_tuples(n, arity, tuples)
}

fn tuples_of(r: &Relation) -> Vec<Vec<usize>> {
    r.tuples().collect()
}

impl StructureDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(parse_error)
    }

    pub fn to_structure(&self) -> Result<Structure> {
        let n = self.domain_size;
        let mut s = Structure::empty(n)?;
        for (i, r) in self.relations.iter().enumerate() {
            let what = format!("relations[{i}] `{}`", r.name);
            let rel = relation_from(n, r.arity, &r.tuples).map_err(context(what.clone()))?;
            s.add_relation(r.name.clone(), rel).map_err(context(what))?;
        }
        for (i, q) in self.quantifiers.iter().enumerate() {
            let what = format!("quantifiers[{i}] `{}`", q.name);
            let quant = self.quantifier(q).map_err(context(what.clone()))?;
            s.add_quantifier(q.name.clone(), quant).map_err(context(what))?;
        }
        Ok(s)
    }

    fn quantifier(&self, q: &QuantifierDocument) -> Result<Quantifier> {
        let qtype = QuantifierType::new(q.qtype.clone())?;
        let mut out = Quantifier::new(self.domain_size, qtype.clone());
        for (m, member) in q.members.iter().enumerate() {
            if member.len() != qtype.len() {
                return Err(Error::Invalid(format!(
                    "member {m} has {} arguments, type {qtype} needs {}",
                    member.len(),
                    qtype.len()
                )));
            }
            let args = member
                .iter()
                .zip(qtype.slots())
                .map(|(a, &i)| relation_from(self.domain_size, i, &a.tuples))
                .collect::<Result<Vec<_>>>()
                .map_err(context(format!("member {m}")))?;
            out.insert(args)?;
        }
        Ok(out)
    }

    /// Canonical document: names sorted, tuples and members lexicographic.
    pub fn from_structure(s: &Structure) -> Self {
        let relations = s
            .relations()
            .map(|(name, r)| RelationDocument {
                name: name.clone(),
                arity: r.arity(),
                tuples: tuples_of(r),
            })
            .collect();
        let quantifiers = s
            .quantifiers()
            .map(|(name, q)| QuantifierDocument {
                name: name.clone(),
                qtype: q.qtype().slots().to_vec(),
                members: quantifier_members(q),
            })
            .collect();
        StructureDocument {
            domain_size: s.size(),
            relations,
            quantifiers,
        }
    }

    pub fn to_canonical_json(&self) -> Result<String> {
        let s = self.to_structure()?;
        Ok(serde_json::to_string_pretty(&StructureDocument::from_structure(&s)).expect("documents serialize"))
    }
}

fn quantifier_members(q: &Quantifier) -> Vec<Vec<ArgumentDocument>> {
    let mut members: Vec<Vec<Vec<Vec<usize>>>> = q.members().map(|m| m.iter().map(tuples_of).collect()).collect();
    members.sort();
    members
        .into_iter()
        .map(|m| m.into_iter().map(|tuples| ArgumentDocument { tuples }).collect())
        .collect()
}

/// Validated contents of a [`TransformDocument`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transforms {
    pub size: usize,
    pub permutations: Vec<Permutation>,
    pub similarities: Vec<Similarity>,
}

impl TransformDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(parse_error)
    }

    pub fn to_transforms(&self) -> Result<Transforms> {
        let n = self.domain_size;
        let permutations = self
            .permutations
            .iter()
            .enumerate()
            .map(|(i, images)| {
                let g = Permutation::new(images.clone()).map_err(context(format!("permutations[{i}]")))?;
                if g.degree() != n {
                    return Err(Error::Invalid(format!(
                        "permutations[{i}]: {}",
                        Error::DomainMismatch {
                            expected: n,
                            found: g.degree()
                        }
                    )));
                }
                Ok(g)
            })
            .collect::<Result<Vec<_>>>()?;
        let similarities = self
            .similarities
            .iter()
            .enumerate()
            .map(|(i, pairs)| Similarity::new(n, pairs.iter().copied()).map_err(context(format!("similarities[{i}]"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Transforms {
            size: n,
            permutations,
            similarities,
        })
    }

    /// Canonical document: permutations in the given order, similarities sorted.
    pub fn from_transforms(t: &Transforms) -> Self {
        let mut similarities: Vec<Vec<(usize, usize)>> = t.similarities.iter().map(|p| p.pairs()).collect();
        similarities.sort();
        similarities.dedup();
        TransformDocument {
            domain_size: t.size,
            permutations: t.permutations.iter().map(|g| g.images().to_vec()).collect(),
            similarities,
        }
    }

    pub fn to_canonical_json(&self) -> Result<String> {
        let t = self.to_transforms()?;
        Ok(serde_json::to_string_pretty(&TransformDocument::from_transforms(&t)).expect("documents serialize"))
    }
}

/// Either kind of input document, told apart by its fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Structure(StructureDocument),
    Transform(TransformDocument),
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(parse_error)?;
        let is_transform = value
            .as_object()
            .is_some_and(|o| o.contains_key("permutations") || o.contains_key("similarities"));
        if is_transform {
            TransformDocument::parse(text).map(Document::Transform)
        } else {
            StructureDocument::parse(text).map(Document::Structure)
        }
    }

    pub fn to_canonical_json(&self) -> Result<String> {
        match self {
            Document::Structure(d) => d.to_canonical_json(),
            Document::Transform(d) => d.to_canonical_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_round_trip_is_canonical() {
        let text = r#"{"domain_size": 3,
            "relations": [{"name": "R", "arity": 2, "tuples": [[2, 0], [0, 1], [0, 1]]},
                          {"name": "A", "arity": 1, "tuples": [[1]]}],
            "quantifiers": [{"name": "Q", "type": [1], "members": [[{"tuples": [[2]]}], [{"tuples": []}]]}]}"#;
        let doc = StructureDocument::parse(text).unwrap();
        let canonical = doc.to_canonical_json().unwrap();
        let again = StructureDocument::parse(&canonical).unwrap();
        assert_eq!(again.to_canonical_json().unwrap(), canonical);
        assert_eq!(again.to_structure().unwrap(), doc.to_structure().unwrap());
        assert_eq!(again.relations[0].name, "A");
        assert_eq!(again.relations[1].tuples, vec![vec![0, 1], vec![2, 0]]);
    }

    #[test]
    fn rejects_unknown_fields_with_position() {
        let err = StructureDocument::parse("{\"domain_size\": 2,\n \"extra\": 1}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn validates_contents() {
        let doc = StructureDocument::parse(r#"{"domain_size": 2, "relations": [{"name": "P", "arity": 1, "tuples": [[2]]}]}"#)
            .unwrap();
        assert!(doc.to_structure().unwrap_err().to_string().contains("relations[0]"));
        let doc = TransformDocument::parse(r#"{"domain_size": 2, "similarities": [[[0, 0]]]}"#).unwrap();
        assert!(doc.to_transforms().is_err());
        let doc = TransformDocument::parse(r#"{"domain_size": 2, "permutations": [[0, 0]]}"#).unwrap();
        assert!(doc.to_transforms().is_err());
    }

    #[test]
    fn documents_are_told_apart() {
        assert!(matches!(
            Document::parse(r#"{"domain_size": 2, "permutations": []}"#).unwrap(),
            Document::Transform(_)
        ));
        assert!(matches!(Document::parse(r#"{"domain_size": 2}"#).unwrap(), Document::Structure(_)));
    }
}
