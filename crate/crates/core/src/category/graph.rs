use std::collections::HashMap;

use super::{is_valid_identifier, Arrow, CategoryError, FinCat, DEFAULT_ARROW_CAP};

/// A finite directed graph, possibly with parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    pub name: String,
    vertices: Vec<String>,
    /// `(edge id, source, target)`
    edges: Vec<(String, usize, usize)>,
}

impl DirectedGraph {
    pub fn new(
        name: impl Into<String>,
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
    ) -> Result<DirectedGraph, CategoryError> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if !is_valid_identifier(v) {
                return Err(CategoryError::InvalidGraph(format!("invalid vertex id {v:?}")));
            }
            if index.insert(v.clone(), i).is_some() {
                return Err(CategoryError::InvalidGraph(format!("duplicate vertex {v}")));
            }
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (id, s, t) in edges {
            if !is_valid_identifier(&id) || !seen.insert(id.clone()) {
                return Err(CategoryError::InvalidGraph(format!("invalid or duplicate edge id {id:?}")));
            }
            let lookup = |v: &String| {
                index
                    .get(v)
                    .copied()
                    .ok_or_else(|| CategoryError::InvalidGraph(format!("edge {id} has unknown endpoint {v}")))
            };
            let (s, t) = (lookup(&s)?, lookup(&t)?);
            out.push((id, s, t));
        }
        Ok(DirectedGraph {
            name: name.into(),
            vertices,
            edges: out,
        })
    }

    /// Builds a graph on vertices `0..n` with edges `e0, e1, …`.
    pub fn from_pairs(name: impl Into<String>, n: usize, edges: &[(usize, usize)]) -> DirectedGraph {
        DirectedGraph::new(
            name,
            (0..n).map(|i| i.to_string()).collect(),
            edges
                .iter()
                .enumerate()
                .map(|(i, &(s, t))| (format!("e{i}"), s.to_string(), t.to_string()))
                .collect(),
        )
        .expect("well-formed pairs")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(String, usize, usize)] {
        &self.edges
    }

    /// A directed cycle (as vertex ids, first repeated at the end), if any.
    pub fn find_cycle(&self) -> Option<Vec<String>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(_, s, t) in &self.edges {
            adj[s].push(t);
        }
        let mut mark = vec![Mark::New; n];
        let mut stack: Vec<usize> = Vec::new();
        fn visit(v: usize, adj: &[Vec<usize>], mark: &mut [Mark], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
            mark[v] = Mark::Active;
            stack.push(v);
            for &w in &adj[v] {
                match mark[w] {
                    Mark::Active => {
                        let start = stack.iter().position(|&x| x == w).expect("on stack");
                        let mut cyc = stack[start..].to_vec();
                        cyc.push(w);
                        return Some(cyc);
                    }
                    Mark::New => {
                        if let Some(c) = visit(w, adj, mark, stack) {
                            return Some(c);
                        }
                    }
                    Mark::Done => {}
                }
            }
            stack.pop();
            mark[v] = Mark::Done;
            None
        }
        for v in 0..n {
            if mark[v] == Mark::New {
                if let Some(c) = visit(v, &adj, &mut mark, &mut stack) {
                    return Some(c.into_iter().map(|i| self.vertices[i].clone()).collect());
                }
            }
        }
        None
    }

    /// Edge-count matrix entry: number of edges `a -> b`.
    pub fn edge_count(&self, a: usize, b: usize) -> usize {
        self.edges.iter().filter(|&&(_, s, t)| s == a && t == b).count()
    }
}

pub fn free_category(g: &DirectedGraph) -> Result<FinCat, CategoryError> {
    free_category_capped(g, DEFAULT_ARROW_CAP)
}

/// The free category on a circuit-free graph: arrows are directed paths,
/// written `e1/e2/…` in order of traversal; empty paths are identities.
pub fn free_category_capped(g: &DirectedGraph, cap: usize) -> Result<FinCat, CategoryError> {
    if let Some(cycle) = g.find_cycle() {
        return Err(CategoryError::CyclicGraph { cycle });
    }
    let n = g.vertices.len();
    // paths as edge-index sequences; identities first, one per vertex
    let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|v| (v, v, Vec::new())).collect();
    let mut frontier: Vec<usize> = Vec::new();
    for (e, &(_, s, t)) in g.edges.iter().enumerate() {
        frontier.push(paths.len());
        paths.push((s, t, vec![e]));
    }
    while !frontier.is_empty() {
        if paths.len() > cap {
            return Err(CategoryError::SizeOverflow {
                arrows: paths.len(),
                cap,
            });
        }
        let mut next = Vec::new();
        for p in frontier {
            let (s, t, seq) = paths[p].clone();
            for (e, &(_, es, et)) in g.edges.iter().enumerate() {
                if es == t {
                    let mut longer = seq.clone();
                    longer.push(e);
                    next.push(paths.len());
                    paths.push((s, et, longer));
                }
            }
        }
        frontier = next;
    }
    if paths.len() > cap {
        return Err(CategoryError::SizeOverflow {
            arrows: paths.len(),
            cap,
        });
    }
    let index: HashMap<Vec<usize>, usize> = paths
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.2.is_empty())
        .map(|(i, p)| (p.2.clone(), i))
        .collect();
    let arrows: Vec<Arrow> = paths
        .iter()
        .map(|(s, t, seq)| Arrow {
            id: if seq.is_empty() {
                format!("id_{}", g.vertices[*s])
            } else {
                seq.iter().map(|&e| g.edges[e].0.as_str()).collect::<Vec<_>>().join("/")
            },
            source: *s,
            target: *t,
        })
        .collect();
    let cat = FinCat::from_table(
        format!("F({})", g.name),
        g.vertices.clone(),
        arrows,
        (0..n).collect(),
        |gi, fi| {
            let (f, gg) = (&paths[fi].2, &paths[gi].2);
            if f.is_empty() {
                return Some(gi);
            }
            if gg.is_empty() {
                return Some(fi);
            }
            let mut cat = f.clone();
            cat.extend_from_slice(gg);
            index.get(&cat).copied()
        },
    )?;
    Ok(cat)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_gives_arrow_category() {
        let c = free_category(&DirectedGraph::from_pairs("g", 2, &[(0, 1)])).unwrap();
        assert_eq!(c.arrow_count(), 3);
    }

    #[test]
    fn parallel_edges() {
        let c = free_category(&DirectedGraph::from_pairs("g", 2, &[(0, 1), (0, 1)])).unwrap();
        assert_eq!(c.arrow_count(), 4);
        assert_eq!(c.hom(0, 1).len(), 2);
    }

    #[test]
    fn triangle_has_two_paths() {
        let c = free_category(&DirectedGraph::from_pairs("g", 3, &[(0, 1), (1, 2), (0, 2)])).unwrap();
        assert_eq!(c.hom(0, 2).len(), 2);
        let ab = c.arrow_index("e0").unwrap();
        let bc = c.arrow_index("e1").unwrap();
        assert_eq!(c.compose(bc, ab), c.arrow_index("e0/e1"));
    }

    #[test]
    fn cycle_is_rejected() {
        let g = DirectedGraph::from_pairs("g", 3, &[(0, 1), (1, 2), (2, 0)]);
        match free_category(&g) {
            Err(CategoryError::CyclicGraph { cycle }) => {
                assert_eq!(cycle.first(), cycle.last());
                assert_eq!(cycle.len(), 4);
            }
            other => panic!("expected a cycle, got {other:?}"),
        }
        let loop_graph = DirectedGraph::from_pairs("l", 1, &[(0, 0)]);
        assert!(matches!(free_category(&loop_graph), Err(CategoryError::CyclicGraph { .. })));
    }
}
