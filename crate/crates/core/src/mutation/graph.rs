//! Mutation graph on complete τ-exceptional sequences and its DOT form.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::tilting::Ctx;

use super::{enumerate_complete, phi, seq_name, MutationError, Seq};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationGraph {
    /// Vertex labels `(name_1,...,name_n)`, sorted.
    pub labels: Vec<String>,
    pub vertices: Vec<Seq>,
    /// (from, i, to): φ_i sends vertex `from` to vertex `to`.
    pub edges: Vec<(usize, usize, usize)>,
}

pub fn mutation_graph(top: &Ctx) -> Result<MutationGraph, MutationError> {
    let vertices = enumerate_complete(top)?;
    let labels: Vec<String> = vertices.iter().map(|s| seq_name(top, s)).collect();
    let n = top.n();
    let jobs: Vec<(usize, usize)> = (0..vertices.len()).flat_map(|v| (1..n).map(move |i| (v, i))).collect();
    let results: Vec<Result<(usize, usize, usize), MutationError>> = jobs
        .par_iter()
        .map(|&(v, i)| {
            let image = phi(top, &vertices[v], i)?;
            let to = vertices.iter().position(|s| *s == image).unwrap_or_else(|| {
                panic!("φ_{i}{} = {} is not a listed vertex", labels[v], seq_name(top, &image))
            });
            Ok((v, i, to))
        })
        .collect();
    let mut edges = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    edges.sort();
    for i in 1..n {
        let targets: BTreeSet<usize> = edges.iter().filter(|e| e.1 == i).map(|e| e.2).collect();
        assert_eq!(targets.len(), vertices.len(), "φ_{i} must permute the vertices");
    }
    Ok(MutationGraph { labels, vertices, edges })
}

impl MutationGraph {
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, _, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Edge list as `phi_i <from> <to>` lines, sorted.
    pub fn edge_lines(&self) -> Vec<String> {
        let mut out: Vec<String> =
            self.edges.iter().map(|&(a, i, b)| format!("phi_{i} {} {}", self.labels[a], self.labels[b])).collect();
        out.sort();
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph mutation {\n");
        for l in &self.labels {
            let _ = writeln!(s, "  \"{l}\";");
        }
        for &(a, i, b) in &self.edges {
            let style = match i {
                1 => "style=solid".to_string(),
                2 => "style=dashed".to_string(),
                _ => format!("label=\"phi_{i}\""),
            };
            let _ = writeln!(s, "  \"{}\" -> \"{}\" [{style}];", self.labels[a], self.labels[b]);
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{path_algebra, Quiver};

    #[test]
    fn a2_is_a_three_cycle() {
        let c = Ctx::hereditary(Arc::new(path_algebra("kA2", Quiver::type_a(2)).unwrap())).unwrap();
        let g = mutation_graph(&c).unwrap();
        assert_eq!(g.vertices.len(), 3);
        assert_eq!(g.edges.len(), 3);
        assert!(g.is_connected());
        let mut v = 0;
        for _ in 0..3 {
            v = g.edges.iter().find(|e| e.0 == v).unwrap().2;
        }
        assert_eq!(v, 0);
        assert!(g.edges.iter().all(|e| e.0 != e.2));
        assert_eq!(g.to_dot().matches("->").count(), 3);
    }
}
