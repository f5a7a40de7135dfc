use serde::Serialize;
use serde_json::Value;

/// Provenance of one invocation, embedded in everything it writes.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    pub outputs: Vec<String>,
    pub version: String,
}

impl RunManifest {
    pub fn new(command: &str, parameters: &impl Serialize) -> Self {
        RunManifest {
            command: command.into(),
            parameters: serde_json::to_value(parameters).unwrap_or(Value::Null),
            seed: None,
            budget: None,
            outputs: Vec::new(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("manifest serializes")
    }
}
