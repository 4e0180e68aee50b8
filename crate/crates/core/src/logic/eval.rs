use std::collections::BTreeMap;

use super::formula::{Formula, Var};
use crate::error::{Error, Result};
use crate::model::{Quantifier, Relation, Structure};

/// A partial map from variables to domain elements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<Var, usize>);

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    /// `x_i ↦ i` for `i < n`.
    pub fn canonical(n: usize) -> Self {
        Assignment((0..n).map(|i| (i, i)).collect())
    }

    pub fn with(mut self, v: Var, a: usize) -> Self {
        self.0.insert(v, a);
        self
    }

    pub fn set(&mut self, v: Var, a: usize) {
        self.0.insert(v, a);
    }

    pub fn get(&self, v: Var) -> Option<usize> {
        self.0.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, usize)> + '_ {
        self.0.iter().map(|(&v, &a)| (v, a))
    }
}

impl FromIterator<(Var, usize)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (Var, usize)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

enum Node {
    Pred(usize, Vec<Var>),
    Eq(Var, Var),
    Quant(usize, Vec<(Vec<Var>, Node)>),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Exists(Vec<Var>, Box<Node>),
    Forall(Vec<Var>, Box<Node>),
}

/// A formula with names resolved against a structure, ready for repeated
/// evaluation. Relation symbols may be rebound between evaluations, which is
/// how candidate arguments of definitions are tested.
pub struct Compiled<'s> {
    n: usize,
    rel_names: Vec<String>,
    relations: Vec<Relation>,
    quantifiers: Vec<&'s Quantifier>,
    root: Node,
    env_len: usize,
    free: Vec<Var>,
}

struct Resolver<'s> {
    structure: &'s Structure,
    extra: &'s [(&'s str, usize)],
    rel_names: Vec<String>,
    rel_arities: Vec<usize>,
    relations: Vec<Relation>,
    q_names: Vec<String>,
    quantifiers: Vec<&'s Quantifier>,
}

fn check_distinct(vars: &[Var]) -> Result<()> {
    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) {
            return Err(Error::Invalid(format!("variable x{v} bound twice in one block")));
        }
    }
    Ok(())
}

impl<'s> Resolver<'s> {
    fn relation(&mut self, name: &str, arity: usize) -> Result<usize> {
        if let Some(i) = self.rel_names.iter().position(|n| n == name) {
            if self.rel_arities[i] != arity {
                return Err(Error::ArityMismatch {
                    name: name.into(),
                    expected: self.rel_arities[i],
                    found: arity,
                });
            }
            return Ok(i);
        }
        let (expected, rel) = if let Some(&(_, k)) = self.extra.iter().find(|(n, _)| *n == name) {
            (k, Relation::empty(self.structure.size(), k))
        } else if let Some(r) = self.structure.relation(name) {
            (r.arity(), r.clone())
        } else {
            return Err(Error::UnresolvedName(name.into()));
        };
        if expected != arity {
            return Err(Error::ArityMismatch {
                name: name.into(),
                expected,
                found: arity,
            });
        }
        self.rel_names.push(name.into());
        self.rel_arities.push(arity);
        self.relations.push(rel);
        Ok(self.relations.len() - 1)
    }

    fn quantifier(&mut self, name: &str, slot_arities: &[usize]) -> Result<usize> {
        let i = match self.q_names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                let q = self.structure.quantifier(name).ok_or_else(|| Error::UnresolvedName(name.into()))?;
                self.q_names.push(name.into());
                self.quantifiers.push(q);
                self.quantifiers.len() - 1
            }
        };
        let qt = self.quantifiers[i].qtype().slots();
        if qt.len() != slot_arities.len() {
            return Err(Error::ArityMismatch {
                name: name.into(),
                expected: qt.len(),
                found: slot_arities.len(),
            });
        }
        for (&want, &got) in qt.iter().zip(slot_arities) {
            if want != got {
                return Err(Error::ArityMismatch {
                    name: name.into(),
                    expected: want,
                    found: got,
                });
            }
        }
        Ok(i)
    }

    fn compile(&mut self, f: &Formula) -> Result<Node> {
        Ok(match f {
            Formula::Pred(name, args) => Node::Pred(self.relation(name, args.len())?, args.clone()),
            Formula::Eq(a, b) => Node::Eq(*a, *b),
            Formula::Quant(name, slots) => {
                let arities: Vec<usize> = slots.iter().map(|s| s.vars.len()).collect();
                let q = self.quantifier(name, &arities)?;
                let compiled = slots
                    .iter()
                    .map(|s| {
                        check_distinct(&s.vars)?;
                        Ok((s.vars.clone(), self.compile(&s.body)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Node::Quant(q, compiled)
            }
            Formula::Not(g) => Node::Not(Box::new(self.compile(g)?)),
            Formula::And(gs) => Node::And(gs.iter().map(|g| self.compile(g)).collect::<Result<_>>()?),
            Formula::Or(gs) => Node::Or(gs.iter().map(|g| self.compile(g)).collect::<Result<_>>()?),
            Formula::Exists(vs, g) => {
                check_distinct(vs)?;
                Node::Exists(vs.clone(), Box::new(self.compile(g)?))
            }
            Formula::Forall(vs, g) => {
                check_distinct(vs)?;
                Node::Forall(vs.clone(), Box::new(self.compile(g)?))
            }
        })
    }
}

impl<'s> Compiled<'s> {
    /// Resolves `phi` against `s`. Names listed in `extra` (with arities) are
    /// free relation symbols, initially empty, to be bound with
    /// [`Compiled::bind`].
    pub fn new(s: &'s Structure, phi: &Formula, extra: &'s [(&'s str, usize)]) -> Result<Self> {
        let mut r = Resolver {
            structure: s,
            extra,
            rel_names: Vec::new(),
            rel_arities: Vec::new(),
            relations: Vec::new(),
            q_names: Vec::new(),
            quantifiers: Vec::new(),
        };
        let root = r.compile(phi)?;
        Ok(Compiled {
            n: s.size(),
            rel_names: r.rel_names,
            relations: r.relations,
            quantifiers: r.quantifiers,
            root,
            env_len: phi.max_var().map_or(0, |v| v + 1),
            free: phi.free_vars().into_iter().collect(),
        })
    }

    /// Rebinds a relation symbol; symbols the formula does not mention are ignored.
    pub fn bind(&mut self, name: &str, r: Relation) -> Result<()> {
        if let Some(i) = self.rel_names.iter().position(|n| n == name) {
            let old = &self.relations[i];
            if old.arity() != r.arity() || old.size() != r.size() {
                return Err(Error::ArityMismatch {
                    name: name.into(),
                    expected: old.arity(),
                    found: r.arity(),
                });
            }
            self.relations[i] = r;
        }
        Ok(())
    }

    fn env(&self, sigma: &Assignment, skip: &[Var]) -> Result<Vec<usize>> {
        let mut env = vec![0; self.env_len.max(sigma.iter().map(|(v, _)| v + 1).max().unwrap_or(0))];
        for (v, a) in sigma.iter() {
            if a >= self.n {
                return Err(Error::OutOfDomain {
                    element: a,
                    size: self.n,
                });
            }
            env[v] = a;
        }
        for &v in &self.free {
            if !skip.contains(&v) && sigma.get(v).is_none() {
                return Err(Error::UnboundVariable(v));
            }
        }
        Ok(env)
    }

    pub fn eval(&self, sigma: &Assignment) -> Result<bool> {
        let mut env = self.env(sigma, &[])?;
        Ok(self.node(&self.root, &mut env))
    }

    /// The tuples over `vars` satisfying the formula, other variables fixed by `sigma`.
    pub fn extension(&self, vars: &[Var], sigma: &Assignment) -> Result<Relation> {
        check_distinct(vars)?;
        let mut env = self.env(sigma, vars)?;
        let need = vars.iter().map(|v| v + 1).max().unwrap_or(0);
        if env.len() < need {
            env.resize(need, 0);
        }
        Ok(self.slot_extension(vars, &self.root, &mut env))
    }

    fn slot_extension(&self, vars: &[Var], body: &Node, env: &mut [usize]) -> Relation {
        let n = self.n;
        let saved: Vec<usize> = vars.iter().map(|&v| env[v]).collect();
        let mut r = Relation::empty(n, vars.len());
        let count = n.pow(vars.len() as u32);
        for code in 0..count {
            let mut c = code;
            for &v in vars.iter().rev() {
                env[v] = c % n;
                c /= n;
            }
            if self.node(body, env) {
                r.insert_code(code);
            }
        }
        for (&v, a) in vars.iter().zip(saved) {
            env[v] = a;
        }
        r
    }

    /// Whether some assignment to `vars` gives `body` the value `want`.
    fn block(&self, vars: &[Var], body: &Node, env: &mut [usize], want: bool) -> bool {
        let n = self.n;
        let saved: Vec<usize> = vars.iter().map(|&v| env[v]).collect();
        vars.iter().for_each(|&v| env[v] = 0);
        let mut result = false;
        'outer: loop {
            if self.node(body, env) == want {
                result = true;
                break;
            }
            for &v in vars.iter().rev() {
                env[v] += 1;
                if env[v] < n {
                    continue 'outer;
                }
                env[v] = 0;
            }
            break;
        }
        for (&v, a) in vars.iter().zip(saved) {
            env[v] = a;
        }
        result
    }

    fn node(&self, node: &Node, env: &mut [usize]) -> bool {
        match node {
            Node::Pred(r, args) => {
                let rel = &self.relations[*r];
                rel.contains_code(args.iter().fold(0, |acc, &v| acc * self.n + env[v]))
            }
            Node::Eq(a, b) => env[*a] == env[*b],
            Node::Quant(q, slots) => {
                let member: Vec<Relation> = slots
                    .iter()
                    .map(|(vars, body)| self.slot_extension(vars, body, env))
                    .collect();
                self.quantifiers[*q].contains(&member)
            }
            Node::Not(g) => !self.node(g, env),
            Node::And(gs) => gs.iter().all(|g| self.node(g, env)),
            Node::Or(gs) => gs.iter().any(|g| self.node(g, env)),
            Node::Exists(vs, g) => self.block(vs, g, env, true),
            Node::Forall(vs, g) => !self.block(vs, g, env, false),
        }
    }
}

/// Truth of `phi` in `s` under `sigma`.
pub fn eval(s: &Structure, phi: &Formula, sigma: &Assignment) -> Result<bool> {
    Compiled::new(s, phi, &[])?.eval(sigma)
}

/// `||phi||` over `vars`, the remaining free variables fixed by `sigma`.
pub fn extension(s: &Structure, phi: &Formula, vars: &[Var], sigma: &Assignment) -> Result<Relation> {
    Compiled::new(s, phi, &[])?.extension(vars, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::formula::Slot;

    fn p_structure() -> Structure {
        Structure::empty(2)
            .unwrap()
            .with_relation("P", Relation::unary(2, &[0]).unwrap())
            .unwrap()
    }

    #[test]
    fn eval_examples() {
        let s = p_structure();
        let px = Formula::pred("P", vec![0]);
        assert!(eval(&s, &px, &Assignment::new().with(0, 0)).unwrap());
        let empty = Structure::empty(2)
            .unwrap()
            .with_relation("P", Relation::empty(2, 1))
            .unwrap();
        assert!(!eval(&empty, &Formula::exists(vec![0], px.clone()), &Assignment::new()).unwrap());
    }

    #[test]
    fn eval_quantifier_node() {
        let s = Structure::empty(4)
            .unwrap()
            .with_quantifier("QE", Quantifier::monadic(4, &[&[0, 2]]).unwrap())
            .unwrap()
            .with_relation("R", Relation::unary(4, &[0, 2]).unwrap())
            .unwrap();
        let phi = Formula::Quant(
            "QE".into(),
            vec![Slot {
                vars: vec![0],
                body: Formula::pred("R", vec![0]),
            }],
        );
        assert!(eval(&s, &phi, &Assignment::new()).unwrap());
    }

    #[test]
    fn extension_examples() {
        let s = p_structure();
        assert!(extension(&s, &Formula::top(), &[0], &Assignment::new()).unwrap().is_full());
        assert_eq!(
            extension(&s, &Formula::pred("P", vec![0]), &[0], &Assignment::new()).unwrap(),
            Relation::unary(2, &[0]).unwrap()
        );
        let phi = Formula::And(vec![
            Formula::pred("P", vec![0]),
            Formula::not(Formula::pred("P", vec![1])),
        ]);
        assert_eq!(
            extension(&s, &phi, &[0, 1], &Assignment::new()).unwrap(),
            Relation::from_tuples(2, 2, [[0, 1]]).unwrap()
        );
    }

    #[test]
    fn errors() {
        let s = p_structure();
        assert!(matches!(
            eval(&s, &Formula::pred("Z", vec![0]), &Assignment::new().with(0, 0)),
            Err(Error::UnresolvedName(_))
        ));
        assert!(matches!(
            eval(&s, &Formula::pred("P", vec![0, 1]), &Assignment::new()),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            eval(&s, &Formula::pred("P", vec![3]), &Assignment::new()),
            Err(Error::UnboundVariable(3))
        ));
    }

    #[test]
    fn shadowing_restores_outer_values() {
        let s = p_structure();
        let phi = Formula::And(vec![
            Formula::exists(vec![0], Formula::not(Formula::pred("P", vec![0]))),
            Formula::pred("P", vec![0]),
        ]);
        assert!(eval(&s, &phi, &Assignment::new().with(0, 0)).unwrap());
    }
}
