use serde::{Deserialize, Serialize};

use super::FiberError;

/// On-disk form: `{"vertices": m, "edges": [[u, v], ...]}`, loops as `[u, u]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

/// One end of an edge: the vertex and the index of the boundary component of
/// that vertex's block it is glued along.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeEnd {
    pub vertex: usize,
    pub slot: usize,
}

/// A connected multigraph; loops and parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiberSumGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl FiberSumGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, FiberError> {
        if vertices == 0 {
            return Err(FiberError::EmptyVertexSet);
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= vertices {
                    return Err(FiberError::VertexOutOfRange {
                        edge: i,
                        vertex: w,
                        vertices,
                    });
                }
            }
        }
        let g = Self { vertices, edges };
        let unreached = g.unreached_vertex();
        if let Some(vertex) = unreached {
            return Err(FiberError::Disconnected { vertex });
        }
        Ok(g)
    }

    pub fn from_document(doc: &GraphDocument) -> Result<Self, FiberError> {
        Self::new(doc.vertices, doc.edges.iter().map(|e| (e[0], e[1])).collect())
    }

    pub fn from_json(text: &str) -> Result<Self, FiberError> {
        let doc: GraphDocument = serde_json::from_str(text).map_err(|e| FiberError::Json(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self.vertices,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    /// `m`.
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// `e`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `c = e − m + 1`.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of edge ends at `v`; a loop contributes two.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
            .sum()
    }

    pub fn loop_count(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v && b == v).count()
    }

    /// Ends of every edge, numbering each vertex's boundary slots in edge order.
    pub fn pairing(&self) -> Vec<[EdgeEnd; 2]> {
        let mut next = vec![0; self.vertices];
        self.edges
            .iter()
            .map(|&(u, v)| {
                let a = EdgeEnd {
                    vertex: u,
                    slot: next[u],
                };
                next[u] += 1;
                let b = EdgeEnd {
                    vertex: v,
                    slot: next[v],
                };
                next[v] += 1;
                [a, b]
            })
            .collect()
    }

    fn unreached_vertex(&self) -> Option<usize> {
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        seen.iter().position(|s| !s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_examples() {
        let g = FiberSumGraph::from_json(r#"{"vertices": 1, "edges": []}"#).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.cycle_rank()), (1, 0, 0));
        let g = FiberSumGraph::from_json(r#"{"vertices": 2, "edges": [[0, 1]]}"#).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.cycle_rank()), (2, 1, 0));
        let g = FiberSumGraph::from_json(r#"{"vertices": 2, "edges": [[0,1],[1,0],[0,1]]}"#).unwrap();
        assert_eq!(g.cycle_rank(), 2);
    }

    #[test]
    fn load_errors() {
        assert_eq!(
            FiberSumGraph::from_json(r#"{"vertices": 0, "edges": []}"#),
            Err(FiberError::EmptyVertexSet)
        );
        assert_eq!(
            FiberSumGraph::from_json(r#"{"vertices": 2, "edges": [[0, 2]]}"#),
            Err(FiberError::VertexOutOfRange {
                edge: 0,
                vertex: 2,
                vertices: 2
            })
        );
        assert_eq!(
            FiberSumGraph::from_json(r#"{"vertices": 3, "edges": [[0, 1], [2, 2]]}"#),
            Err(FiberError::Disconnected { vertex: 2 })
        );
        assert!(matches!(FiberSumGraph::from_json("{"), Err(FiberError::Json(_))));
    }

    #[test]
    fn loops_count_twice() {
        let g = FiberSumGraph::new(2, vec![(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.valence(0), 3);
        assert_eq!(g.valence(1), 1);
        let p = g.pairing();
        assert_eq!(p[0], [EdgeEnd { vertex: 0, slot: 0 }, EdgeEnd { vertex: 0, slot: 1 }]);
        assert_eq!(p[1][0], EdgeEnd { vertex: 0, slot: 2 });
    }
}
