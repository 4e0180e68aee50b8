//! Machine-readable command reports.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::report::LawOutcome;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub law: String,
    pub instance_digest: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub timing_ms: f64,
    #[serde(serialize_with = "ordered_map")]
    pub details: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<serde_json::Value>,
}

fn ordered_map<S: Serializer>(pairs: &[(String, String)], serializer: S) -> Result<S::Ok, S::Error> {
    let mut map = serializer.serialize_map(Some(pairs.len()))?;
    for (k, v) in pairs {
        map.serialize_entry(k, v)?;
    }
    map.end()
}

/// Hex SHA-256 of an instance description.
pub fn digest(instance: &str) -> String {
    let hash = Sha256::digest(instance.as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

impl Report {
    pub fn from_outcome(outcome: LawOutcome, instance: &str) -> Self {
        Report {
            law: outcome.law,
            instance_digest: digest(instance),
            verdict: if outcome.pass { "pass" } else { "fail" }.into(),
            witness: outcome.witness,
            counterexample: outcome.counterexample,
            timing_ms: 0.0,
            details: outcome.details,
            output: None,
        }
    }

    pub fn pass(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn with_output(mut self, output: serde_json::Value) -> Self {
        self.output = Some(output);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.law, self.verdict);
        out += &format!("  instance: {}\n", self.instance_digest);
        for (k, v) in &self.details {
            out += &format!("  {k}: {v}\n");
        }
        if let Some(w) = &self.witness {
            out += &format!("  witness: {w}\n");
        }
        if let Some(c) = &self.counterexample {
            out += &format!("  counterexample: {c}\n");
        }
        if let Some(o) = &self.output {
            out += &format!("  output: {}\n", serde_json::to_string(o).expect("values serialize"));
        }
        out += &format!("  time: {:.3} ms\n", self.timing_ms);
        out
    }
}

/// Folds per-instance outcomes into one, keeping every detail under an
/// `#i` prefix and the first failure as the counterexample.
pub fn aggregate(law: &str, outcomes: Vec<LawOutcome>) -> LawOutcome {
    let total = outcomes.len();
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let mut out = LawOutcome::new(law, passed == total)
        .detail("instances", total)
        .detail("passed", passed);
    for (i, o) in outcomes.into_iter().enumerate() {
        out.details.push((format!("#{i}"), if o.pass { "pass" } else { "fail" }.into()));
        for (k, v) in o.details {
            out.details.push((format!("#{i} {k}"), v));
        }
        if out.counterexample.is_none() && !o.pass {
            out.counterexample = Some(format!(
                "instance {i}: {}",
                o.counterexample.unwrap_or_else(|| "law failed".into())
            ));
        }
        if out.witness.is_none() {
            out.witness = o.witness.map(|w| format!("instance {i}: {w}"));
        }
    }
    out
}
