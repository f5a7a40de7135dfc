//! Verified, serializable records of colorings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coloring::{Color, EdgeColoring, HostGraph};
use crate::detect::{find_monochromatic, find_rainbow_triangle};
use crate::error::{Error, Result};
use crate::target::TargetGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub rainbow_free: bool,
    /// Entry `i` is true when color `i + 1` avoids its target.
    pub target_free: Vec<bool>,
}

impl Verdicts {
    pub fn compute(g: &EdgeColoring, targets: &[TargetGraph]) -> Self {
        let rainbow_free = find_rainbow_triangle(g).is_none();
        let target_free = (1..=g.k())
            .map(|c| {
                let h = &targets[(c as usize - 1).min(targets.len() - 1)];
                find_monochromatic(g, h, c).is_none()
            })
            .collect();
        Verdicts {
            rainbow_free,
            target_free,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.rainbow_free && self.target_free.iter().all(|&t| t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub expected_vertices: usize,
    pub actual_vertices: usize,
    pub expected_star: Option<usize>,
    pub actual_star: usize,
}

impl Counts {
    pub fn consistent(&self) -> bool {
        self.expected_vertices == self.actual_vertices
            && self.expected_star.is_none_or(|s| s == self.actual_star)
    }
}

/// A construction's coloring together with its recomputed verdicts. Only
/// colorings passing every verdict and count check are issued.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub construction: String,
    pub params: BTreeMap<String, Value>,
    pub coloring: EdgeColoring,
    /// One target per color; a single entry applies to every color.
    pub targets: Vec<TargetGraph>,
    pub verdicts: Verdicts,
    pub counts: Counts,
    pub notes: Vec<String>,
    pub manifest: Option<Value>,
}

#[derive(Serialize, Deserialize)]
struct CertificateDoc {
    construction: String,
    params: BTreeMap<String, Value>,
    host: String,
    k: Color,
    labels: Vec<String>,
    edges: Vec<(usize, usize, Color)>,
    targets: Vec<TargetGraph>,
    verdicts: Verdicts,
    counts: Counts,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    manifest: Option<Value>,
}

/// `v1, v2, ...` for clique vertices and `v` for the star center.
pub fn vertex_labels(host: &HostGraph) -> Vec<String> {
    let mut labels: Vec<String> = (1..=host.clique_order()).map(|i| format!("v{i}")).collect();
    if host.center().is_some() {
        labels.push("v".into());
    }
    labels
}

impl Certificate {
    /// Recomputes verdicts and counts; fails unless everything passes.
    pub fn issue(
        construction: &str,
        params: BTreeMap<String, Value>,
        coloring: EdgeColoring,
        targets: Vec<TargetGraph>,
        expected_vertices: usize,
        expected_star: Option<usize>,
    ) -> Result<Self> {
        if targets.is_empty() {
            return Err(Error::BadParameter("certificate without targets".into()));
        }
        let verdicts = Verdicts::compute(&coloring, &targets);
        let counts = Counts {
            expected_vertices,
            actual_vertices: coloring.host().clique_order(),
            expected_star,
            actual_star: coloring.host().star_size(),
        };
        if !verdicts.all_pass() {
            return Err(Error::VerdictFailed(format!(
                "{construction}: {verdicts:?}"
            )));
        }
        if !counts.consistent() {
            return Err(Error::VerdictFailed(format!("{construction}: {counts:?}")));
        }
        Ok(Certificate {
            construction: construction.into(),
            params,
            coloring,
            targets,
            verdicts,
            counts,
            notes: Vec::new(),
            manifest: None,
        })
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn reverify(&self) -> Verdicts {
        Verdicts::compute(&self.coloring, &self.targets)
    }

    pub fn to_json(&self) -> String {
        let doc = CertificateDoc {
            construction: self.construction.clone(),
            params: self.params.clone(),
            host: self.coloring.host().to_string(),
            k: self.coloring.k(),
            labels: vertex_labels(self.coloring.host()),
            edges: self.coloring.edges(),
            targets: self.targets.clone(),
            verdicts: self.verdicts.clone(),
            counts: self.counts.clone(),
            notes: self.notes.clone(),
            manifest: self.manifest.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("certificate serializes")
    }

    /// Parses a certificate document; verdicts are taken as recorded, use
    /// [`Certificate::reverify`] to recheck them.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CertificateDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let host: HostGraph = doc.host.parse()?;
        let coloring = EdgeColoring::new(host, doc.k, &doc.edges)?;
        Ok(Certificate {
            construction: doc.construction,
            params: doc.params,
            coloring,
            targets: doc.targets,
            verdicts: doc.verdicts,
            counts: doc.counts,
            notes: doc.notes,
            manifest: doc.manifest,
        })
    }
}

const PALETTE: [&str; 10] = [
    "red",
    "blue",
    "forestgreen",
    "orange",
    "purple",
    "brown",
    "deeppink",
    "gray40",
    "gold",
    "cyan",
];

/// Graphviz rendering with edges colored by palette index.
pub fn to_dot(g: &EdgeColoring) -> String {
    let labels = vertex_labels(g.host());
    let mut out = String::from("graph coloring {\n  node [shape=circle];\n");
    for (i, l) in labels.iter().enumerate() {
        out.push_str(&format!("  {i} [label=\"{l}\"];\n"));
    }
    for (u, v, c) in g.edges() {
        let color = PALETTE[(c as usize - 1) % PALETTE.len()];
        out.push_str(&format!("  {u} -- {v} [color={color}, label=\"{c}\"];\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn issue_rejects_failing_verdicts() {
        let g = EdgeColoring::monochromatic(5, 1, 1).unwrap();
        let err = Certificate::issue(
            "mono",
            BTreeMap::new(),
            g,
            vec![TargetGraph::cycle(4)],
            5,
            None,
        );
        assert!(matches!(err, Err(Error::VerdictFailed(_))));
    }

    #[test]
    fn json_round_trip() {
        let g = EdgeColoring::monochromatic(3, 1, 1).unwrap();
        let cert = Certificate::issue(
            "k3",
            BTreeMap::new(),
            g,
            vec![TargetGraph::path(4)],
            3,
            None,
        )
        .unwrap();
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        assert_eq!(back.reverify(), cert.verdicts);
        assert!(to_dot(&cert.coloring).contains("0 -- 1 [color=red"));
    }
}
