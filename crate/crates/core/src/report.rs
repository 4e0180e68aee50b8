//! Outcome of a law check, independent of how it is rendered.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawOutcome {
    pub law: String,
    pub pass: bool,
    pub witness: Option<String>,
    pub counterexample: Option<String>,
    pub details: Vec<(String, String)>,
}

impl LawOutcome {
    pub fn new(law: impl Into<String>, pass: bool) -> Self {
        LawOutcome {
            law: law.into(),
            pass,
            witness: None,
            counterexample: None,
            details: Vec::new(),
        }
    }

    pub fn detail(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.details.push((key.into(), value.to_string()));
        self
    }

    pub fn witness(mut self, w: impl ToString) -> Self {
        self.witness = Some(w.to_string());
        self
    }

    pub fn counterexample(mut self, c: impl ToString) -> Self {
        self.counterexample = Some(c.to_string());
        self
    }

    /// Conjunction of several outcomes under one law name.
    pub fn all(law: impl Into<String>, parts: Vec<LawOutcome>) -> Self {
        let pass = parts.iter().all(|p| p.pass);
        let mut out = LawOutcome::new(law, pass);
        for p in parts {
            out.details.push((p.law.clone(), if p.pass { "pass" } else { "fail" }.to_string()));
            for (k, v) in p.details {
                out.details.push((format!("{}.{k}", p.law), v));
            }
            if out.counterexample.is_none() && !p.pass {
                out.counterexample = p.counterexample.map(|c| format!("{}: {c}", p.law));
            }
            if out.witness.is_none() {
                out.witness = p.witness;
            }
        }
        out
    }
}

impl fmt::Display for LawOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.law, if self.pass { "pass" } else { "FAIL" })?;
        for (k, v) in &self.details {
            writeln!(f, "  {k}: {v}")?;
        }
        if let Some(w) = &self.witness {
            writeln!(f, "  witness: {w}")?;
        }
        if let Some(c) = &self.counterexample {
            writeln!(f, "  counterexample: {c}")?;
        }
        Ok(())
    }
}
