use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Variable index; rendered as `x{i}`.
pub type Var = usize;

/// One argument of a quantifier application: bound variables and a body.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slot {
    pub vars: Vec<Var>,
    pub body: Formula,
}

/// Formulas of the finitary fragment: finite conjunctions and disjunctions,
/// quantifier blocks, optional equality, and generalized-quantifier nodes.
///
/// `And(vec![])` is truth and `Or(vec![])` is falsity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Pred(String, Vec<Var>),
    Eq(Var, Var),
    Quant(String, Vec<Slot>),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(Vec<Var>, Box<Formula>),
    Forall(Vec<Var>, Box<Formula>),
}

impl Formula {
    pub fn top() -> Formula {
        Formula::And(Vec::new())
    }

    pub fn bottom() -> Formula {
        Formula::Or(Vec::new())
    }

    pub fn pred(name: impl Into<String>, args: Vec<Var>) -> Formula {
        Formula::Pred(name.into(), args)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// Conjunction; a single conjunct is returned as is.
    pub fn and(mut parts: Vec<Formula>) -> Formula {
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::And(parts)
        }
    }

    /// Disjunction; a single disjunct is returned as is.
    pub fn or(mut parts: Vec<Formula>) -> Formula {
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::Or(parts)
        }
    }

    /// `¬a ∨ b`.
    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Or(vec![Formula::not(a), b])
    }

    pub fn exists(vars: Vec<Var>, body: Formula) -> Formula {
        Formula::Exists(vars, Box::new(body))
    }

    pub fn forall(vars: Vec<Var>, body: Formula) -> Formula {
        Formula::Forall(vars, Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut note = |v: Var, bound: &Vec<Var>| {
            if !bound.contains(&v) {
                out.insert(v);
            }
        };
        match self {
            Formula::Pred(_, args) => args.iter().for_each(|&v| note(v, bound)),
            Formula::Eq(a, b) => {
                note(*a, bound);
                note(*b, bound);
            }
            Formula::Quant(_, slots) => {
                for s in slots {
                    let depth = bound.len();
                    bound.extend(&s.vars);
                    s.body.collect_free(bound, out);
                    bound.truncate(depth);
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_free(bound, out)),
            Formula::Exists(vs, f) | Formula::Forall(vs, f) => {
                let depth = bound.len();
                bound.extend(vs);
                f.collect_free(bound, out);
                bound.truncate(depth);
            }
        }
    }

    /// Largest variable index mentioned anywhere, bound or free.
    pub fn max_var(&self) -> Option<Var> {
        match self {
            Formula::Pred(_, args) => args.iter().copied().max(),
            Formula::Eq(a, b) => Some(*a.max(b)),
            Formula::Quant(_, slots) => slots
                .iter()
                .flat_map(|s| s.vars.iter().copied().max().into_iter().chain(s.body.max_var()))
                .max(),
            Formula::Not(f) => f.max_var(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().filter_map(Formula::max_var).max(),
            Formula::Exists(vs, f) | Formula::Forall(vs, f) => vs.iter().copied().max().max(f.max_var()),
        }
    }

    pub fn has_equality(&self) -> bool {
        match self {
            Formula::Eq(..) => true,
            Formula::Pred(..) => false,
            Formula::Quant(_, slots) => slots.iter().any(|s| s.body.has_equality()),
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.has_equality(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().any(Formula::has_equality),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + match self {
            Formula::Pred(..) | Formula::Eq(..) => 0,
            Formula::Quant(_, slots) => slots.iter().map(|s| s.body.size()).sum(),
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.size(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(Formula::size).sum(),
        }
    }

    /// Replaces every equality atom `v = w` by `name(v, w)`.
    pub fn replace_equality(&self, name: &str) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Pred(name.to_string(), vec![*a, *b]),
            Formula::Pred(..) => self.clone(),
            Formula::Quant(q, slots) => Formula::Quant(
                q.clone(),
                slots
                    .iter()
                    .map(|s| Slot {
                        vars: s.vars.clone(),
                        body: s.body.replace_equality(name),
                    })
                    .collect(),
            ),
            Formula::Not(f) => Formula::not(f.replace_equality(name)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.replace_equality(name)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.replace_equality(name)).collect()),
            Formula::Exists(vs, f) => Formula::exists(vs.clone(), f.replace_equality(name)),
            Formula::Forall(vs, f) => Formula::forall(vs.clone(), f.replace_equality(name)),
        }
    }
}

fn write_vars(f: &mut fmt::Formatter<'_>, vars: &[Var]) -> fmt::Result {
    let parts: Vec<String> = vars.iter().map(|v| format!("x{v}")).collect();
    write!(f, "({})", parts.join(" "))
}

/// Canonical prefix rendering, e.g. `(forall (x0) (or (not (rel P x0)) (= x0 x1)))`.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Pred(name, args) => {
                write!(f, "(rel {name}")?;
                for v in args {
                    write!(f, " x{v}")?;
                }
                f.write_str(")")
            }
            Formula::Eq(a, b) => write!(f, "(= x{a} x{b})"),
            Formula::Quant(name, slots) => {
                write!(f, "(q {name}")?;
                for s in slots {
                    f.write_str(" (")?;
                    write_vars(f, &s.vars)?;
                    write!(f, " {})", s.body)?;
                }
                f.write_str(")")
            }
            Formula::Not(g) => write!(f, "(not {g})"),
            Formula::And(gs) | Formula::Or(gs) => {
                f.write_str(if matches!(self, Formula::And(_)) { "(and" } else { "(or" })?;
                for g in gs {
                    write!(f, " {g}")?;
                }
                f.write_str(")")
            }
            Formula::Exists(vs, g) | Formula::Forall(vs, g) => {
                f.write_str(if matches!(self, Formula::Exists(..)) { "(exists " } else { "(forall " })?;
                write_vars(f, vs)?;
                write!(f, " {g})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Sexp {
    Atom(String, usize, usize),
    List(Vec<Sexp>, usize, usize),
}

impl Sexp {
    fn pos(&self) -> (usize, usize) {
        match self {
            Sexp::Atom(_, l, c) | Sexp::List(_, l, c) => (*l, *c),
        }
    }
}

fn parse_error(pos: (usize, usize), message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.0,
        column: pos.1,
        message: message.into(),
    }
}

fn read_sexps(text: &str) -> Result<Vec<Sexp>> {
    let mut stack: Vec<(Vec<Sexp>, usize, usize)> = vec![(Vec::new(), 1, 1)];
    let mut atom: Option<(String, usize, usize)> = None;
    let (mut line, mut col) = (1, 0);
    let flush = |atom: &mut Option<(String, usize, usize)>, stack: &mut Vec<(Vec<Sexp>, usize, usize)>| {
        if let Some((s, l, c)) = atom.take() {
            stack.last_mut().unwrap().0.push(Sexp::Atom(s, l, c));
        }
    };
    for ch in text.chars() {
        if ch == '\n' {
            line += 1;
            col = 0;
        } else {
            col += 1;
        }
        match ch {
            '(' => {
                flush(&mut atom, &mut stack);
                stack.push((Vec::new(), line, col));
            }
            ')' => {
                flush(&mut atom, &mut stack);
                if stack.len() == 1 {
                    return Err(parse_error((line, col), "unbalanced `)`"));
                }
                let (items, l, c) = stack.pop().unwrap();
                stack.last_mut().unwrap().0.push(Sexp::List(items, l, c));
            }
            c if c.is_whitespace() => flush(&mut atom, &mut stack),
            c => match &mut atom {
                Some((s, _, _)) => s.push(c),
                None => atom = Some((c.to_string(), line, col)),
            },
        }
    }
    flush(&mut atom, &mut stack);
    if stack.len() != 1 {
        let (_, l, c) = stack.pop().unwrap();
        return Err(parse_error((l, c), "unclosed `(`"));
    }
    Ok(stack.pop().unwrap().0)
}

fn parse_var(e: &Sexp) -> Result<Var> {
    match e {
        Sexp::Atom(s, ..) => s
            .strip_prefix('x')
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| parse_error(e.pos(), format!("expected a variable like x0, found `{s}`"))),
        Sexp::List(..) => Err(parse_error(e.pos(), "expected a variable, found a list")),
    }
}

fn parse_var_list(e: &Sexp) -> Result<Vec<Var>> {
    match e {
        Sexp::List(items, ..) => items.iter().map(parse_var).collect(),
        Sexp::Atom(..) => Err(parse_error(e.pos(), "expected a variable list")),
    }
}

fn parse_name(e: &Sexp) -> Result<String> {
    match e {
        Sexp::Atom(s, ..) => Ok(s.clone()),
        Sexp::List(..) => Err(parse_error(e.pos(), "expected a symbol name")),
    }
}

fn from_sexp(e: &Sexp) -> Result<Formula> {
    let Sexp::List(items, ..) = e else {
        return Err(parse_error(e.pos(), "expected a parenthesized formula"));
    };
    let Some(head) = items.first() else {
        return Err(parse_error(e.pos(), "empty formula"));
    };
    let head_name = parse_name(head)?;
    let args = &items[1..];
    let arity = |want: usize| -> Result<()> {
        if args.len() != want {
            return Err(parse_error(e.pos(), format!("`{head_name}` takes {want} arguments")));
        }
        Ok(())
    };
    Ok(match head_name.as_str() {
        "rel" => {
            let Some((name, vars)) = args.split_first() else {
                return Err(parse_error(e.pos(), "`rel` needs a relation name"));
            };
            Formula::Pred(parse_name(name)?, vars.iter().map(parse_var).collect::<Result<_>>()?)
        }
        "=" => {
            arity(2)?;
            Formula::Eq(parse_var(&args[0])?, parse_var(&args[1])?)
        }
        "not" => {
            arity(1)?;
            Formula::not(from_sexp(&args[0])?)
        }
        "and" => Formula::And(args.iter().map(from_sexp).collect::<Result<_>>()?),
        "or" => Formula::Or(args.iter().map(from_sexp).collect::<Result<_>>()?),
        "exists" | "forall" => {
            arity(2)?;
            let vars = parse_var_list(&args[0])?;
            let body = from_sexp(&args[1])?;
            if head_name == "exists" {
                Formula::exists(vars, body)
            } else {
                Formula::forall(vars, body)
            }
        }
        "q" => {
            let Some((name, slots)) = args.split_first() else {
                return Err(parse_error(e.pos(), "`q` needs a quantifier name"));
            };
            let slots = slots
                .iter()
                .map(|s| match s {
                    Sexp::List(parts, ..) if parts.len() == 2 => Ok(Slot {
                        vars: parse_var_list(&parts[0])?,
                        body: from_sexp(&parts[1])?,
                    }),
                    _ => Err(parse_error(s.pos(), "quantifier slot must be `((vars…) body)`")),
                })
                .collect::<Result<_>>()?;
            Formula::Quant(parse_name(name)?, slots)
        }
        other => return Err(parse_error(head.pos(), format!("unknown head `{other}`"))),
    })
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(text: &str) -> Result<Formula> {
        let exprs = read_sexps(text)?;
        match exprs.as_slice() {
            [one] => from_sexp(one),
            [] => Err(parse_error((1, 1), "no formula")),
            [_, second, ..] => Err(parse_error(second.pos(), "trailing input after formula")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse_round_trip() {
        let f = Formula::forall(
            vec![0, 1],
            Formula::Or(vec![
                Formula::not(Formula::pred("P", vec![0])),
                Formula::Eq(0, 1),
                Formula::Quant(
                    "Q".into(),
                    vec![Slot {
                        vars: vec![3],
                        body: Formula::pred("?R0", vec![3]),
                    }],
                ),
                Formula::top(),
                Formula::bottom(),
            ]),
        );
        let text = f.to_string();
        assert_eq!(
            text,
            "(forall (x0 x1) (or (not (rel P x0)) (= x0 x1) (q Q ((x3) (rel ?R0 x3))) (and) (or)))"
        );
        assert_eq!(text.parse::<Formula>().unwrap(), f);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match "(and\n  (foo x0))".parse::<Formula>() {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 4)),
            other => panic!("unexpected {other:?}"),
        }
        assert!("(and".parse::<Formula>().is_err());
        assert!("(rel P y0)".parse::<Formula>().is_err());
    }

    #[test]
    fn free_variables() {
        let f = Formula::exists(vec![1], Formula::And(vec![Formula::pred("P", vec![0, 1]), Formula::Eq(1, 2)]));
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(f.max_var(), Some(2));
    }

    #[test]
    fn equality_replacement() {
        assert_eq!(Formula::Eq(0, 1).replace_equality("~"), Formula::pred("~", vec![0, 1]));
        let g = Formula::pred("P", vec![0]);
        assert_eq!(g.replace_equality("~"), g);
    }
}
