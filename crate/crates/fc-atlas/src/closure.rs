//! Facial closure: join every pair of distinct vertices sharing a face.
//!
//! The closure is an abstract graph; a plane graph is facially complete when
//! the closure is a complete graph. q is the maximum number of distinct
//! vertices on a face, and W(q) = floor(3q/2) bounds the order of any
//! facially complete graph.

use crate::embed::PlaneGraph;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    pub q: usize,
    pub w: usize,
    pub complete: bool,
    pub added: Vec<(usize, usize)>,
    #[serde(skip)]
    pub closure_edges: Vec<(usize, usize)>,
    #[serde(skip)]
    pub n: usize,
}

pub fn w_bound(q: usize) -> usize {
    3 * q / 2
}

pub fn facial_closure(g: &PlaneGraph) -> ClosureReport {
    let n = g.vertex_count();
    let mut closure: BTreeSet<(usize, usize)> = g.edges().into_iter().collect();
    let mut added = BTreeSet::new();
    for face in g.faces() {
        let vs = face.vertices();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                if closure.insert((u, v)) {
                    added.insert((u, v));
                }
            }
        }
    }
    let q = g.max_face_size();
    let complete = closure.len() == n * (n - 1) / 2;
    ClosureReport {
        q,
        w: w_bound(q),
        complete,
        added: added.into_iter().collect(),
        closure_edges: closure.into_iter().collect(),
        n,
    }
}

pub fn is_facially_complete(g: &PlaneGraph) -> bool {
    facial_closure(g).complete
}
