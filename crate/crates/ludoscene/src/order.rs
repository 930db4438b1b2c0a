//! Linearization of sibling ordering graphs.

use crate::model::{Identifier, OrderingGraph};
use thiserror::Error;

/// The ordering graph contains a cycle, so no linear order exists.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("ordering cycle among: {}", .nodes.iter().map(|n| n.as_str()).collect::<Vec<_>>().join(", "))]
pub struct CycleError {
    /// Nodes that could not be ordered, in document order.
    pub nodes: Vec<Identifier>,
}

/// Topologically sorts `nodes` (given in document order) under the precedence
/// edges of `graph`. Ties break by document order, so the result is unique.
///
/// Edges or branch groups naming ids outside `nodes` are ignored here; the
/// validator reports them as dangling references.
pub fn linear_order(
    nodes: &[&Identifier],
    graph: &OrderingGraph,
) -> Result<Vec<Identifier>, CycleError> {
    let position = |id: &Identifier| nodes.iter().position(|n| *n == id);

    // predecessor counts and adjacency over node positions
    let mut pending = vec![0usize; nodes.len()];
    let mut successors: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (before, after) in &graph.edges {
        if let (Some(b), Some(a)) = (position(before), position(after)) {
            pending[a] += 1;
            successors[b].push(a);
        }
    }

    let mut ready: Vec<usize> = (0..nodes.len()).filter(|&i| pending[i] == 0).collect();
    let mut out = Vec::with_capacity(nodes.len());
    while let Some(&next) = ready.iter().min() {
        ready.retain(|&i| i != next);
        out.push(nodes[next].clone());
        for &succ in &successors[next] {
            pending[succ] -= 1;
            if pending[succ] == 0 {
                ready.push(succ);
            }
        }
    }

    if out.len() != nodes.len() {
        let ordered: Vec<&Identifier> = out.iter().collect();
        let nodes = nodes
            .iter()
            .filter(|n| !ordered.contains(n))
            .map(|n| (*n).clone())
            .collect();
        return Err(CycleError { nodes });
    }
    Ok(out)
}

/// First node of the linear order, if the group is non-empty.
pub fn first(nodes: &[&Identifier], graph: &OrderingGraph) -> Result<Option<Identifier>, CycleError> {
    Ok(linear_order(nodes, graph)?.into_iter().next())
}

/// Last node of the linear order, if the group is non-empty.
pub fn last(nodes: &[&Identifier], graph: &OrderingGraph) -> Result<Option<Identifier>, CycleError> {
    Ok(linear_order(nodes, graph)?.into_iter().last())
}
