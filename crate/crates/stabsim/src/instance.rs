//! Service/demand instances for the generalized dominating-set problem.
//!
//! Every node carries a finite set of service tokens it can offer to its
//! neighbours and a finite set of demand tokens it needs covered. A node
//! outside the dominating set is dominated only if each of its demands is
//! offered by some neighbour inside the set; a node inside the set covers
//! all of its own demands. With a single shared token on every node this
//! degenerates to the plain minimal dominating set problem.
//!
//! Tokens are interned to dense `u32` ids; the JSON document format keeps
//! them as strings.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

use crate::graph::{Graph, GraphError, NodeId};

pub type Token = u32;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("malformed instance document: {0}")]
    Malformed(String),
    #[error("unknown node id {id} in {section} map (graph has 1..={n})")]
    UnknownNode {
        section: &'static str,
        id: String,
        n: u32,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    n: u32,
    edges: Vec<(NodeId, NodeId)>,
    #[serde(default)]
    services: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    demands: BTreeMap<String, Vec<String>>,
}

/// A graph plus per-node service and demand token sets.
#[derive(Debug, Clone)]
pub struct SdmdsInstance {
    graph: Graph,
    services: Vec<BTreeSet<Token>>,
    demands: Vec<BTreeSet<Token>>,
    /// Interned token names, indexed by token id.
    tokens: Vec<String>,
}

impl SdmdsInstance {
    pub fn new(
        graph: Graph,
        services: BTreeMap<NodeId, BTreeSet<String>>,
        demands: BTreeMap<NodeId, BTreeSet<String>>,
    ) -> Result<Self, InstanceError> {
        let n = graph.n();
        let mut inst = SdmdsInstance {
            graph,
            services: vec![BTreeSet::new(); n as usize],
            demands: vec![BTreeSet::new(); n as usize],
            tokens: Vec::new(),
        };
        let mut interned: BTreeMap<String, Token> = BTreeMap::new();
        for (map, own, section) in [(&services, false, "services"), (&demands, true, "demands")] {
            for (&id, toks) in map {
                if id == 0 || id > n {
                    return Err(InstanceError::UnknownNode {
                        section,
                        id: id.to_string(),
                        n,
                    });
                }
                for t in toks {
                    let tok = *interned.entry(t.clone()).or_insert_with(|| {
                        inst.tokens.push(t.clone());
                        (inst.tokens.len() - 1) as Token
                    });
                    if own {
                        inst.demands[(id - 1) as usize].insert(tok);
                    } else {
                        inst.services[(id - 1) as usize].insert(tok);
                    }
                }
            }
        }
        Ok(inst)
    }

    /// Parses the JSON document format:
    /// `{"n": 4, "edges": [[1,2],[3,4]], "services": {"1": ["x"]}, "demands": {...}}`.
    /// Nodes absent from the maps get empty sets.
    pub fn parse_json(text: &str) -> Result<Self, InstanceError> {
        let doc: InstanceDoc =
            serde_json::from_str(text).map_err(|e| InstanceError::Malformed(e.to_string()))?;
        let graph = Graph::new(doc.n, &doc.edges)?;
        let conv = |m: &BTreeMap<String, Vec<String>>,
                    section: &'static str|
         -> Result<BTreeMap<NodeId, BTreeSet<String>>, InstanceError> {
            let mut out = BTreeMap::new();
            for (k, v) in m {
                let id: NodeId = k.parse().map_err(|_| InstanceError::UnknownNode {
                    section,
                    id: k.clone(),
                    n: doc.n,
                })?;
                if id == 0 || id > doc.n {
                    return Err(InstanceError::UnknownNode {
                        section,
                        id: k.clone(),
                        n: doc.n,
                    });
                }
                out.insert(id, v.iter().cloned().collect());
            }
            Ok(out)
        };
        let services = conv(&doc.services, "services")?;
        let demands = conv(&doc.demands, "demands")?;
        SdmdsInstance::new(graph, services, demands)
    }

    pub fn to_json(&self) -> String {
        let name = |set: &BTreeSet<Token>| -> Vec<String> {
            set.iter()
                .map(|&t| self.tokens[t as usize].clone())
                .collect()
        };
        let mut services = BTreeMap::new();
        let mut demands = BTreeMap::new();
        for i in self.graph.ids() {
            if !self.services(i).is_empty() {
                services.insert(i.to_string(), name(self.services(i)));
            }
            if !self.demands(i).is_empty() {
                demands.insert(i.to_string(), name(self.demands(i)));
            }
        }
        let doc = InstanceDoc {
            n: self.graph.n(),
            edges: self.graph.edges().to_vec(),
            services,
            demands,
        };
        serde_json::to_string_pretty(&doc).expect("instance serialises")
    }

    /// The plain minimal-dominating-set reduction: every node offers and
    /// demands the same single token.
    pub fn uniform(graph: Graph) -> Self {
        let n = graph.n();
        let all: BTreeSet<Token> = [0].into_iter().collect();
        SdmdsInstance {
            graph,
            services: vec![all.clone(); n as usize],
            demands: vec![all; n as usize],
            tokens: vec!["x".to_string()],
        }
    }

    /// A seeded random instance over a small token alphabet; each node picks
    /// each token independently for its service and demand sets.
    pub fn random(graph: Graph, alphabet: &[&str], seed: u64) -> Self {
        let n = graph.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut services = vec![BTreeSet::new(); n as usize];
        let mut demands = vec![BTreeSet::new(); n as usize];
        for idx in 0..n as usize {
            for (t, _) in alphabet.iter().enumerate() {
                if rng.gen_bool(0.5) {
                    services[idx].insert(t as Token);
                }
                if rng.gen_bool(0.5) {
                    demands[idx].insert(t as Token);
                }
            }
        }
        SdmdsInstance {
            graph,
            services,
            demands,
            tokens: alphabet.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn services(&self, i: NodeId) -> &BTreeSet<Token> {
        &self.services[(i - 1) as usize]
    }

    pub fn demands(&self, i: NodeId) -> &BTreeSet<Token> {
        &self.demands[(i - 1) as usize]
    }

    pub fn serves(&self, j: NodeId, d: Token) -> bool {
        self.services(j).contains(&d)
    }

    /// Number of distinct demand tokens across all nodes.
    pub fn max_d(&self) -> usize {
        let mut all = BTreeSet::new();
        for set in &self.demands {
            all.extend(set.iter().copied());
        }
        all.len()
    }

    pub fn token_name(&self, t: Token) -> &str {
        &self.tokens[t as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_uniform_reduction_document() {
        let text = r#"{
            "n": 4,
            "edges": [[1,2],[3,4]],
            "services": {"1":["x"],"2":["x"],"3":["x"],"4":["x"]},
            "demands":  {"1":["x"],"2":["x"],"3":["x"],"4":["x"]}
        }"#;
        let inst = SdmdsInstance::parse_json(text).unwrap();
        let uni = SdmdsInstance::uniform(inst.graph().clone());
        for i in inst.graph().ids() {
            assert_eq!(inst.services(i).len(), 1);
            assert_eq!(inst.demands(i), uni.demands(i));
        }
        assert_eq!(inst.max_d(), 1);
    }

    #[test]
    fn missing_nodes_default_to_empty_sets() {
        let inst =
            SdmdsInstance::parse_json(r#"{"n": 2, "edges": [[1,2]], "demands": {"1": ["a"]}}"#)
                .unwrap();
        assert!(inst.services(1).is_empty());
        assert!(inst.demands(2).is_empty());
        assert_eq!(inst.demands(1).len(), 1);
    }

    #[test]
    fn rejects_unknown_node_ids() {
        let err = SdmdsInstance::parse_json(r#"{"n": 2, "edges": [], "services": {"5": ["a"]}}"#)
            .unwrap_err();
        assert!(matches!(err, InstanceError::UnknownNode { .. }));
        let err = SdmdsInstance::parse_json(r#"{"n": 2, "edges": [], "demands": {"zero": []}}"#)
            .unwrap_err();
        assert!(matches!(err, InstanceError::UnknownNode { .. }));
    }

    #[test]
    fn rejects_malformed_documents() {
        assert!(matches!(
            SdmdsInstance::parse_json("not json"),
            Err(InstanceError::Malformed(_))
        ));
        // Graph invariants still apply.
        assert!(matches!(
            SdmdsInstance::parse_json(r#"{"n": 2, "edges": [[1,1]]}"#),
            Err(InstanceError::Graph(_))
        ));
    }

    #[test]
    fn json_round_trips() {
        let g = Graph::gen_gnm(5, 6, 3).unwrap();
        let inst = SdmdsInstance::random(g, &["a", "b", "c"], 11);
        let back = SdmdsInstance::parse_json(&inst.to_json()).unwrap();
        for i in inst.graph().ids() {
            let names = |x: &SdmdsInstance, set: &BTreeSet<Token>| -> BTreeSet<String> {
                set.iter().map(|&t| x.token_name(t).to_string()).collect()
            };
            assert_eq!(
                names(&inst, inst.services(i)),
                names(&back, back.services(i))
            );
            assert_eq!(names(&inst, inst.demands(i)), names(&back, back.demands(i)));
        }
    }
}
