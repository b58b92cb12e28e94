use equitau::gradedring::GradedSeries;
use equitau::reprring::RepRingElement;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

/// What every subcommand prints. Field order is alphabetical so that a
/// parsed-and-reserialized document matches the original byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub checks: Vec<Check>,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Value,
    pub truncation: usize,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl OutputDocument {
    pub fn new(command: &str, truncation: usize) -> Self {
        OutputDocument {
            checks: Vec::new(),
            command: command.to_string(),
            inputs: Map::new(),
            results: Value::Object(Map::new()),
            truncation,
            text: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            pass,
        });
        self
    }

    pub fn line(&mut self, line: impl Into<String>) -> &mut Self {
        self.text.push(line.into());
        self
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = vec![format!("command: {}", self.command)];
        if !self.inputs.is_empty() {
            let inputs: Vec<String> = self
                .inputs
                .iter()
                .map(|(k, v)| format!("{k}={}", plain(v)))
                .collect();
            out.push(format!("inputs: {}", inputs.join(" ")));
        }
        out.push(format!("truncation: {}", self.truncation));
        out.extend(self.text.iter().cloned());
        for c in &self.checks {
            out.push(format!(
                "check {}: {}",
                c.name,
                if c.pass { "pass" } else { "fail" }
            ));
        }
        out.join("\n")
    }
}

/// Values without JSON quoting; arrays become comma lists.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(plain).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

/// `[{degree, monomials: [{coeff, exponents}]}]`, degree ascending and
/// exponents in ascending lexicographic order within a degree.
pub fn series_json(s: &GradedSeries) -> Value {
    let mut out = Vec::new();
    for d in 0..=s.truncation() {
        let component = s.component(d);
        if component.is_empty() {
            continue;
        }
        let monomials: Vec<Value> = component
            .iter()
            .map(|(e, c)| json!({ "coeff": c.to_string(), "exponents": e }))
            .collect();
        out.push(json!({ "degree": d, "monomials": monomials }));
    }
    Value::Array(out)
}

pub fn character_json(a: &RepRingElement) -> Value {
    let terms: Vec<Value> = a
        .terms()
        .iter()
        .map(|(w, c)| json!({ "coeff": c.to_string(), "weight": w.coords() }))
        .collect();
    json!({ "terms": terms, "text": a.render() })
}
