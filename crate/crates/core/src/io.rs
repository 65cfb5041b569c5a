//! JSON interchange documents for graphs, matroids, game instances and
//! imputations. Every scalar is written as a canonical rational string.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::games::{AssignmentGame, GameInstance, Imputation, PackingGame};
use crate::graphs::{Graph, WeightedGraph};
use crate::matroids::{verify_rank_axioms, Matroid, MatroidKind, WeightedMatroid};
use crate::scalar::Scalar;
use crate::subset::Subset;

/// A scalar as written in a file: a rational string, or a bare integer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Text(String),
    Int(i64),
}

impl ScalarText {
    fn parse<T: Scalar>(&self) -> Result<T> {
        match self {
            ScalarText::Text(s) => Ok(T::parse_repr(s)?),
            ScalarText::Int(v) => Ok(T::from_int(*v)),
        }
    }

    fn of<T: Scalar>(v: &T) -> Self {
        ScalarText::Text(v.to_repr())
    }
}

fn parse_all<T: Scalar>(v: &[ScalarText]) -> Result<Vec<T>> {
    v.iter().map(ScalarText::parse).collect()
}

fn texts<T: Scalar>(v: &[T]) -> Vec<ScalarText> {
    v.iter().map(ScalarText::of).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<ScalarText>>,
}

impl GraphDoc {
    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edges(self.n, &edges)
    }

    pub fn of(g: &Graph) -> Self {
        GraphDoc { n: g.vertex_count(), edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(), weights: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatroidDoc {
    Uniform { n: usize, k: usize },
    Graphic { graph: GraphDoc },
    Partition { blocks: Vec<Vec<usize>>, capacities: Vec<usize> },
    Explicit { n: usize, independent: Vec<Vec<usize>> },
}

impl MatroidDoc {
    /// Builds the matroid without checking its axioms.
    pub fn to_matroid(&self) -> Result<Matroid> {
        match self {
            MatroidDoc::Uniform { n, k } => Matroid::uniform(*n, *k),
            MatroidDoc::Graphic { graph } => Matroid::graphic(graph.to_graph()?),
            MatroidDoc::Partition { blocks, capacities } => {
                let n = blocks.iter().map(Vec::len).sum();
                Matroid::partition(n, blocks, capacities.clone())
            }
            MatroidDoc::Explicit { n, independent } => Matroid::explicit(*n, independent),
        }
    }

    pub fn of(m: &Matroid) -> Self {
        match m.kind() {
            MatroidKind::Uniform { k } => MatroidDoc::Uniform { n: m.ground_size(), k: *k },
            MatroidKind::Graphic { graph, .. } => MatroidDoc::Graphic { graph: GraphDoc::of(graph) },
            MatroidKind::Partition { blocks, capacities } => MatroidDoc::Partition {
                blocks: blocks.iter().map(|b| b.to_vec()).collect(),
                capacities: capacities.clone(),
            },
            MatroidKind::Explicit { independent } => MatroidDoc::Explicit {
                n: m.ground_size(),
                independent: independent.iter().map(|s| s.to_vec()).collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartsDoc {
    #[serde(rename = "U")]
    pub u: Vec<usize>,
    #[serde(rename = "V")]
    pub v: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDoc {
    pub game: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matroid: Option<MatroidDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    /// Per edge (assignment), vertex (stable set, clique), element
    /// (matroid) or column (generic packing). Defaults to all ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<ScalarText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<PartsDoc>,
}

fn missing(game: &str, field: &str) -> Error {
    Error::Malformed(format!("a {game} game needs a \"{field}\" field"))
}

fn weights_or_ones<T: Scalar>(weights: Option<&Vec<ScalarText>>, len: usize) -> Result<Vec<T>> {
    match weights {
        Some(w) => parse_all(w),
        None => Ok(vec![T::one(); len]),
    }
}

impl GameDoc {
    /// Validates and builds the instance. Explicit matroids with at most
    /// `bound` elements must satisfy the matroid axioms.
    pub fn to_instance<T: Scalar>(&self, bound: usize) -> Result<GameInstance<T>> {
        let g = self.game.as_str();
        match g {
            "assignment" => {
                let doc = self.graph.as_ref().ok_or_else(|| missing(g, "graph"))?;
                let parts = self.parts.as_ref().ok_or_else(|| missing(g, "parts"))?;
                let graph = doc.to_graph()?;
                let in_file: Vec<T> = weights_or_ones(self.weights.as_ref(), doc.edges.len())?;
                if in_file.len() != doc.edges.len() {
                    return Err(Error::Malformed(format!(
                        "{} weights for {} edges",
                        in_file.len(),
                        doc.edges.len()
                    )));
                }
                // Reorder from file order to the graph's sorted edge order.
                let mut keyed: Vec<((usize, usize), T)> =
                    doc.edges.iter().map(|&[u, v]| (u.min(v), u.max(v))).zip(in_file).collect();
                keyed.sort_by_key(|(e, _)| *e);
                let weights = keyed.into_iter().map(|(_, w)| w).collect();
                let side = |v: &[usize]| -> Result<Subset> {
                    let mut s = Subset::EMPTY;
                    for &x in v {
                        if x >= graph.vertex_count() || s.contains(x) {
                            return Err(Error::NotBipartite(format!("part entry {x} is out of range or repeated")));
                        }
                        s.insert(x);
                    }
                    Ok(s)
                };
                let (u, v) = (side(&parts.u)?, side(&parts.v)?);
                Ok(GameInstance::Assignment(AssignmentGame::new(graph, u, v, weights)?))
            }
            "stable_set" | "clique" => {
                let doc = self.graph.as_ref().ok_or_else(|| missing(g, "graph"))?;
                let graph = doc.to_graph()?;
                let weights = weights_or_ones(self.weights.as_ref().or(doc.weights.as_ref()), graph.vertex_count())?;
                let wg = WeightedGraph::new(graph, weights)?;
                Ok(if g == "clique" { GameInstance::Clique(wg) } else { GameInstance::StableSet(wg) })
            }
            "matroid" => {
                let doc = self.matroid.as_ref().ok_or_else(|| missing(g, "matroid"))?;
                let m = doc.to_matroid()?;
                if matches!(m.kind(), MatroidKind::Explicit { .. }) && m.ground_size() <= bound {
                    if let Some(v) = verify_rank_axioms(&m, bound)?.violation {
                        return Err(Error::MatroidAxioms(v));
                    }
                }
                let weights = weights_or_ones(self.weights.as_ref(), m.ground_size())?;
                Ok(GameInstance::Matroid(WeightedMatroid::new(m, weights)?))
            }
            "generic_packing" => {
                let matrix = self.matrix.as_ref().ok_or_else(|| missing(g, "matrix"))?;
                let cols = matrix.first().map_or(0, Vec::len);
                let weights = weights_or_ones(self.weights.as_ref(), cols)?;
                Ok(GameInstance::GenericPacking(PackingGame::new(matrix, weights)?))
            }
            other => Err(Error::Malformed(format!("unknown game kind {other:?}"))),
        }
    }

    pub fn of<T: Scalar>(game: &GameInstance<T>) -> Self {
        let mut doc = GameDoc {
            game: game.kind_name().to_string(),
            graph: None,
            matroid: None,
            matrix: None,
            weights: Some(texts(game.weights())),
            parts: None,
        };
        match game {
            GameInstance::Assignment(a) => {
                doc.graph = Some(GraphDoc::of(a.graph()));
                doc.parts = Some(PartsDoc { u: a.left().to_vec(), v: a.right().to_vec() });
            }
            GameInstance::StableSet(wg) | GameInstance::Clique(wg) => doc.graph = Some(GraphDoc::of(&wg.graph)),
            GameInstance::Matroid(wm) => doc.matroid = Some(MatroidDoc::of(&wm.matroid)),
            GameInstance::GenericPacking(p) => doc.matrix = Some(p.matrix()),
        }
        doc
    }
}

/// Parses and validates a game instance document.
pub fn parse_instance<T: Scalar>(document: &[u8], bound: usize) -> Result<GameInstance<T>> {
    let doc: GameDoc = serde_json::from_slice(document)?;
    doc.to_instance(bound)
}

/// Canonical JSON for `game`; [`parse_instance`] reads it back unchanged.
pub fn emit_instance<T: Scalar>(game: &GameInstance<T>) -> String {
    serde_json::to_string_pretty(&GameDoc::of(game)).expect("documents always serialize")
}

/// Parses `{"type": "agent"|"satisfaction", "values": {...}}`.
pub fn parse_imputation<T: Scalar>(document: &[u8]) -> Result<Imputation<T>> {
    let value: Value = serde_json::from_slice(document)?;
    // Surface bad rationals with their own error codes before serde sees them.
    if let Some(values) = value.get("values").and_then(Value::as_object) {
        for v in values.values() {
            if let Some(s) = v.as_str() {
                T::parse_repr(s)?;
            }
        }
    }
    Ok(serde_json::from_value(value)?)
}

/// A graph from either a bare graph document or a graph-based game file.
pub fn parse_graph(document: &[u8]) -> Result<Graph> {
    let value: Value = serde_json::from_slice(document)?;
    if value.get("game").is_some() {
        let doc: GameDoc = serde_json::from_value(value)?;
        return doc.graph.ok_or_else(|| missing(&doc.game, "graph"))?.to_graph();
    }
    serde_json::from_value::<GraphDoc>(value)?.to_graph()
}

/// A matroid, unchecked, from either a bare matroid document or a matroid
/// game file.
pub fn parse_matroid(document: &[u8]) -> Result<Matroid> {
    let value: Value = serde_json::from_slice(document)?;
    if value.get("game").is_some() {
        let doc: GameDoc = serde_json::from_value(value)?;
        return doc.matroid.ok_or_else(|| missing(&doc.game, "matroid"))?.to_matroid();
    }
    serde_json::from_value::<MatroidDoc>(value)?.to_matroid()
}
