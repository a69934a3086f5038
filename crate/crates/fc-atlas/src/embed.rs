//! Sphere embeddings as rotation systems, face tracing, and embedding search.
//!
//! A plane graph is stored as one clockwise neighbor cycle per vertex. Faces
//! are traced with darts: the dart after (u, v) is (v, w) where w precedes u
//! in the rotation at v. No outer face is distinguished; everything downstream
//! (facial closure, q, classification) is outer-face independent.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use thiserror::Error;

pub type Dart = (usize, usize);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("asymmetric adjacency: {u} lists {v} but {v} does not list {u}")]
    AsymmetricAdjacency { u: usize, v: usize },
    #[error("loop or repeated neighbor at vertex {v}")]
    LoopOrMultiEdge { v: usize },
    #[error("vertex id {v} out of range (n = {n})")]
    VertexOutOfRange { v: usize, n: usize },
    #[error(
        "not a sphere embedding on component {component:?}: {walks} face walks, expected {expected}"
    )]
    SphereViolation {
        component: Vec<usize>,
        walks: usize,
        expected: usize,
    },
    #[error("input graph is not planar")]
    NonplanarInput,
    #[error("input exceeds supported scale: {0}")]
    ScaleLimit(String),
}

/// One closed dart walk. An isolated vertex yields a degenerate walk with no
/// darts and a single visited vertex, so every vertex lies on some walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    darts: Vec<Dart>,
    vertices: Vec<usize>,
    distinct: Vec<usize>,
}

impl FaceWalk {
    fn new(darts: Vec<Dart>, vertices: Vec<usize>) -> Self {
        let mut distinct = vertices.clone();
        distinct.sort_unstable();
        distinct.dedup();
        FaceWalk {
            darts,
            vertices,
            distinct,
        }
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    /// Vertices in visit order; repeated vertices appear repeatedly.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn distinct_vertices(&self) -> &[usize] {
        &self.distinct
    }

    /// Number of distinct vertices on the walk (this is what q maximizes).
    pub fn size(&self) -> usize {
        self.distinct.len()
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    fn sort_key(&self) -> Dart {
        if self.darts.is_empty() {
            (self.vertices[0], self.vertices[0])
        } else {
            self.darts[0]
        }
    }
}

/// A face of the sphere embedding. For a connected graph every face is a
/// single walk. For C >= 2 components one shared face absorbs each
/// component's largest walk (ties: first in walk order): the components are
/// drawn side by side, which is the only drawing that can be facially
/// complete. All remaining walks are faces of their own, so the global count
/// satisfies V - E + F = 1 + C.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    walk_indices: Vec<usize>,
    vertices: Vec<usize>,
}

impl Face {
    pub fn walk_indices(&self) -> &[usize] {
        &self.walk_indices
    }

    /// Sorted distinct vertices over all member walks.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Debug, Clone)]
pub struct PlaneGraph {
    rotations: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    edge_count: usize,
    walks: Vec<FaceWalk>,
    faces: Vec<Face>,
    components: Vec<Vec<usize>>,
}

impl PlaneGraph {
    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Option<Vec<String>>) {
        self.labels = labels;
    }

    pub fn walks(&self) -> &[FaceWalk] {
        &self.walks
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// q: the maximum number of distinct vertices on any face.
    pub fn max_face_size(&self) -> usize {
        self.faces.iter().map(Face::size).max().unwrap_or(0)
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, rot) in self.rotations.iter().enumerate() {
            for &v in rot {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.rotations.len() && self.rotations[u].contains(&v)
    }
}

/// Validate a rotation system and trace its faces. Fails unless every
/// component satisfies the sphere condition V - E + F = 2.
pub fn build_plane_graph(rotations: Vec<Vec<usize>>) -> Result<PlaneGraph, EmbedError> {
    let n = rotations.len();
    for (u, rot) in rotations.iter().enumerate() {
        let mut seen = BTreeSet::new();
        for &v in rot {
            if v >= n {
                return Err(EmbedError::VertexOutOfRange { v, n });
            }
            if v == u || !seen.insert(v) {
                return Err(EmbedError::LoopOrMultiEdge { v: u });
            }
        }
        for &v in rot {
            if !rotations[v].contains(&u) {
                return Err(EmbedError::AsymmetricAdjacency { u, v });
            }
        }
    }
    let edge_count = rotations.iter().map(Vec::len).sum::<usize>() / 2;
    let walks = trace_walks(&rotations);
    let components = find_components(&rotations);

    for comp in &components {
        let vs = comp.len();
        let es = comp.iter().map(|&v| rotations[v].len()).sum::<usize>() / 2;
        let fs = walks
            .iter()
            .filter(|w| comp.binary_search(&w.vertices[0]).is_ok())
            .count();
        let expected = 2 + es - vs; // genus 0
        if fs != expected {
            return Err(EmbedError::SphereViolation {
                component: comp.clone(),
                walks: fs,
                expected,
            });
        }
    }

    let faces = assemble_faces(&walks, &components);
    Ok(PlaneGraph {
        rotations,
        labels: None,
        edge_count,
        walks,
        faces,
        components,
    })
}

/// Trace all closed dart walks of a rotation system, in deterministic order
/// (each walk rotated to start at its smallest dart; walks sorted by that
/// dart). Isolated vertices produce degenerate single-vertex walks.
pub fn trace_walks(rotations: &[Vec<usize>]) -> Vec<FaceWalk> {
    let n = rotations.len();
    // pos[v] maps neighbor -> index in rotations[v]
    let pos: Vec<HashMap<usize, usize>> = rotations
        .iter()
        .map(|rot| rot.iter().enumerate().map(|(i, &w)| (w, i)).collect())
        .collect();

    let mut used = vec![Vec::new(); n];
    for v in 0..n {
        used[v] = vec![false; rotations[v].len()];
    }
    let mut walks = Vec::new();
    for u in 0..n {
        if rotations[u].is_empty() {
            walks.push(FaceWalk::new(Vec::new(), vec![u]));
            continue;
        }
        for start in 0..rotations[u].len() {
            if used[u][start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut verts = Vec::new();
            let (mut cu, mut ci) = (u, start);
            loop {
                used[cu][ci] = true;
                let cv = rotations[cu][ci];
                darts.push((cu, cv));
                verts.push(cu);
                // next dart: (cv, predecessor of cu in rot[cv])
                let j = pos[cv][&cu];
                let d = rotations[cv].len();
                let nj = (j + d - 1) % d;
                cu = cv;
                ci = nj;
                if cu == u && ci == start {
                    break;
                }
            }
            // rotate so the smallest dart leads
            let k = darts
                .iter()
                .enumerate()
                .min_by_key(|(_, d)| **d)
                .map(|(i, _)| i)
                .unwrap();
            darts.rotate_left(k);
            verts.rotate_left(k);
            walks.push(FaceWalk::new(darts, verts));
        }
    }
    walks.sort_by_key(FaceWalk::sort_key);
    walks
}

fn assemble_faces(walks: &[FaceWalk], components: &[Vec<usize>]) -> Vec<Face> {
    let single = |idx: usize| {
        let w: &FaceWalk = &walks[idx];
        Face {
            walk_indices: vec![idx],
            vertices: w.distinct.clone(),
        }
    };
    if components.len() <= 1 {
        return (0..walks.len()).map(single).collect();
    }
    // pick each component's largest walk (first on ties) into the shared face
    let mut merged: Vec<usize> = Vec::new();
    for comp in components {
        let best = walks
            .iter()
            .enumerate()
            .filter(|(_, w)| comp.binary_search(&w.vertices[0]).is_ok())
            .max_by(|(i, a), (j, b)| a.size().cmp(&b.size()).then(j.cmp(i)))
            .map(|(i, _)| i)
            .unwrap();
        merged.push(best);
    }
    merged.sort_unstable();
    let mut faces = Vec::new();
    let mut verts: Vec<usize> = merged
        .iter()
        .flat_map(|&i| walks[i].distinct.iter().copied())
        .collect();
    verts.sort_unstable();
    verts.dedup();
    let shared = Face {
        walk_indices: merged.clone(),
        vertices: verts,
    };
    let mut placed = false;
    for idx in 0..walks.len() {
        if merged.contains(&idx) {
            if !placed {
                faces.push(shared.clone());
                placed = true;
            }
        } else {
            faces.push(single(idx));
        }
    }
    faces
}

fn find_components(rotations: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = rotations.len();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in &rotations[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Connectivity {
    Disconnected,
    OneConnected,
    TwoPlusConnected,
}

/// Bucket by vertex connectivity: disconnected, connected but not
/// 2-connected (K1 and K2 land here), or 2-connected.
pub fn classify_connectivity(g: &PlaneGraph) -> Connectivity {
    if g.components().len() > 1 {
        return Connectivity::Disconnected;
    }
    let n = g.vertex_count();
    if n >= 3 && !has_cut_vertex(g.rotations()) {
        Connectivity::TwoPlusConnected
    } else {
        Connectivity::OneConnected
    }
}

pub fn is_two_connected(g: &PlaneGraph) -> bool {
    classify_connectivity(g) == Connectivity::TwoPlusConnected
}

fn has_cut_vertex(rotations: &[Vec<usize>]) -> bool {
    let n = rotations.len();
    (0..n).any(|v| {
        let mut seen = vec![false; n];
        seen[v] = true;
        let Some(start) = (0..n).find(|&u| u != v) else {
            return false;
        };
        let mut stack = vec![start];
        seen[start] = true;
        let mut cnt = 1;
        while let Some(u) = stack.pop() {
            for &w in &rotations[u] {
                if !seen[w] {
                    seen[w] = true;
                    cnt += 1;
                    stack.push(w);
                }
            }
        }
        cnt < n - 1
    })
}

/// Exact vertex connectivity by exhaustive cut search; diagnostic use only.
pub fn exact_kappa(g: &PlaneGraph) -> usize {
    let n = g.vertex_count();
    if g.components().len() > 1 || n == 0 {
        return 0;
    }
    if g.edge_count() == n * (n - 1) / 2 {
        return n - 1; // complete graph convention
    }
    let verts: Vec<usize> = (0..n).collect();
    for k in 1..n {
        let mut chosen = vec![0usize; k];
        if cut_exists(g.rotations(), &verts, &mut chosen, 0, 0) {
            return k;
        }
    }
    n - 1
}

fn cut_exists(
    rotations: &[Vec<usize>],
    verts: &[usize],
    chosen: &mut [usize],
    depth: usize,
    from: usize,
) -> bool {
    if depth == chosen.len() {
        let n = rotations.len();
        let removed: BTreeSet<usize> = chosen.iter().copied().collect();
        let mut seen = vec![false; n];
        for &v in &removed {
            seen[v] = true;
        }
        let Some(start) = (0..n).find(|v| !seen[*v]) else {
            return false;
        };
        let mut stack = vec![start];
        seen[start] = true;
        let mut cnt = 1;
        while let Some(u) = stack.pop() {
            for &w in &rotations[u] {
                if !seen[w] {
                    seen[w] = true;
                    cnt += 1;
                    stack.push(w);
                }
            }
        }
        return cnt < n - removed.len();
    }
    for i in from..verts.len() {
        chosen[depth] = verts[i];
        if cut_exists(rotations, verts, chosen, depth + 1, i + 1) {
            return true;
        }
    }
    false
}

/// True iff some face touches every vertex.
pub fn is_outerplanar_embedding(g: &PlaneGraph) -> bool {
    let n = g.vertex_count();
    g.faces().iter().any(|f| f.size() == n)
}

/// Total order on embeddings: equal codes iff the embeddings are equivalent
/// under relabeling, rerooting of rotations, and reflection.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u32>);

impl CanonicalCode {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

pub fn canonical_code(g: &PlaneGraph) -> CanonicalCode {
    let mut comp_codes: Vec<Vec<u32>> = g
        .components()
        .iter()
        .map(|comp| component_code(g.rotations(), comp))
        .collect();
    comp_codes.sort();
    let mut out = vec![g.components().len() as u32];
    for c in comp_codes {
        out.extend(c);
    }
    CanonicalCode(out)
}

fn component_code(rotations: &[Vec<usize>], comp: &[usize]) -> Vec<u32> {
    if comp.len() == 1 && rotations[comp[0]].is_empty() {
        return vec![1, 0];
    }
    let mut best: Option<Vec<u32>> = None;
    for &u in comp {
        for &v in &rotations[u] {
            for mirror in [false, true] {
                let code = traversal_code(rotations, comp.len(), (u, v), mirror);
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
    }
    best.unwrap()
}

/// Breadth-first code: label vertices in discovery order from a start dart,
/// emitting each vertex's rotation (4 = degree prefix sentinel free format:
/// [n, deg v0, labels.., deg v1, labels..]). Rotation is read from the entry
/// neighbor, reversed when mirror is set.
fn traversal_code(
    rotations: &[Vec<usize>],
    comp_size: usize,
    start: Dart,
    mirror: bool,
) -> Vec<u32> {
    let (root, first) = start;
    let mut label: HashMap<usize, u32> = HashMap::new();
    label.insert(root, 0);
    let mut queue = VecDeque::new();
    queue.push_back((root, first));
    let mut next_label = 1u32;
    let mut code = vec![comp_size as u32];
    while let Some((x, entry)) = queue.pop_front() {
        let rot = &rotations[x];
        let d = rot.len();
        let at = rot.iter().position(|&w| w == entry).unwrap();
        code.push(d as u32);
        for step in 0..d {
            let idx = if mirror {
                (at + d - step % d) % d
            } else {
                (at + step) % d
            };
            let w = rot[idx];
            let lw = *label.entry(w).or_insert_with(|| {
                let l = next_label;
                next_label += 1;
                queue.push_back((w, x));
                l
            });
            code.push(lw);
        }
    }
    code
}

/// Compute any sphere embedding of an abstract simple graph, or report that
/// none exists. Face-insertion method: embed a cycle of each biconnected
/// block, then repeatedly place a path of some unembedded fragment into an
/// admissible face (a fragment whose attachments fit only one face goes
/// first). Blocks are glued at cut vertices by splicing rotation arcs.
pub fn embed_abstract(n: usize, edges: &[(usize, usize)]) -> Result<PlaneGraph, EmbedError> {
    let adj = adjacency(n, edges)?;
    // cheap necessary condition; keeps dense closures fast
    for comp in find_components(&adj) {
        let vs = comp.len();
        if vs >= 3 {
            let es = comp.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
            if es > 3 * vs - 6 {
                return Err(EmbedError::NonplanarInput);
            }
        }
    }

    let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in biconnected_blocks(&adj) {
        let block_rot = if block.len() == 1 {
            let (u, v) = block[0];
            vec![(u, vec![v]), (v, vec![u])]
        } else {
            embed_block(&block)?
        };
        for (v, arc) in block_rot {
            rotations[v].extend(arc);
        }
    }
    build_plane_graph(rotations)
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>, EmbedError> {
    let mut adj = vec![Vec::new(); n];
    let mut seen = BTreeSet::new();
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(EmbedError::VertexOutOfRange { v: u.max(v), n });
        }
        if u == v {
            return Err(EmbedError::LoopOrMultiEdge { v: u });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(EmbedError::LoopOrMultiEdge { v: u });
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    Ok(adj)
}

/// Biconnected components as edge lists (standard DFS edge-stacking),
/// deterministic given sorted adjacency.
pub(crate) fn biconnected_blocks(adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut disc = vec![0usize; n];
    let mut low = vec![0usize; n];
    let mut timer = 1usize;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();

    // iterative DFS to keep recursion shallow
    for root in 0..n {
        if disc[root] != 0 {
            continue;
        }
        let mut call: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, parent, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == 0 {
                    stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    call.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                call.pop();
                if let Some(&mut (p, _, _)) = call.last_mut() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(&(a, b)) = stack.last() {
                            if disc[a] >= disc[v] || (a == p && b == v) {
                                block.push((a, b));
                                stack.pop();
                                if a == p && b == v {
                                    break;
                                }
                            } else {
                                break;
                            }
                        }
                        block.reverse();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

type BlockRotations = Vec<(usize, Vec<usize>)>;

/// Demoucron-style planar embedding of one 2-connected block, returned as
/// rotation arcs per vertex.
fn embed_block(block_edges: &[(usize, usize)]) -> Result<BlockRotations, EmbedError> {
    let mut verts: Vec<usize> = block_edges
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    verts.sort_unstable();
    let index: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let mut adj = vec![Vec::new(); n];
    let mut edge_set = BTreeSet::new();
    for &(a, b) in block_edges {
        let (u, v) = (index[&a], index[&b]);
        adj[u].push(v);
        adj[v].push(u);
        edge_set.insert((u.min(v), u.max(v)));
    }
    for a in &mut adj {
        a.sort_unstable();
    }

    let cycle = find_cycle(&adj);
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let mut in_h = vec![false; n];
    for &v in &cycle {
        in_h[v] = true;
    }
    let mut embedded: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        embedded.insert((a.min(b), a.max(b)));
    }

    while embedded.len() < edge_set.len() {
        let fragments = find_fragments(&adj, &in_h, &embedded);
        // admissible faces per fragment
        let mut choice: Option<(usize, usize)> = None; // (fragment, face)
        let mut fallback: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attach.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            if admissible.is_empty() {
                return Err(EmbedError::NonplanarInput);
            }
            if admissible.len() == 1 && choice.is_none() {
                choice = Some((fi, admissible[0]));
            }
            if fallback.is_none() {
                fallback = Some((fi, admissible[0]));
            }
        }
        let (fi, face_idx) = choice.or(fallback).expect("fragments exist");
        let frag = &fragments[fi];
        let path = fragment_path(&adj, &in_h, frag);

        // split the face along the path
        let face = faces.swap_remove(face_idx);
        let i = face.iter().position(|&x| x == path[0]).unwrap();
        let j = face.iter().position(|&x| x == *path.last().unwrap()).unwrap();
        let len = face.len();
        let mut seg1 = Vec::new(); // path[0] .. path[last] along the face
        let mut k = i;
        loop {
            seg1.push(face[k]);
            if k == j {
                break;
            }
            k = (k + 1) % len;
        }
        let mut seg2 = Vec::new(); // path[last] .. path[0] along the face
        let mut k = j;
        loop {
            seg2.push(face[k]);
            if k == i {
                break;
            }
            k = (k + 1) % len;
        }
        let interior = &path[1..path.len() - 1];
        let mut f1 = seg1;
        f1.extend(interior.iter().rev());
        let mut f2 = seg2;
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);

        for w in path.windows(2) {
            embedded.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in interior {
            in_h[v] = true;
        }
    }

    // recover rotations from oriented faces: in face ... u, v, w ... the
    // rotation at v has u immediately after w
    let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for face in &faces {
        let len = face.len();
        for idx in 0..len {
            let u = face[(idx + len - 1) % len];
            let v = face[idx];
            let w = face[(idx + 1) % len];
            succ[v].insert(w, u);
        }
    }
    let mut out = Vec::with_capacity(n);
    for v in 0..n {
        let d = adj[v].len();
        let mut arc = Vec::with_capacity(d);
        let mut cur = *adj[v].iter().min().unwrap();
        for _ in 0..d {
            arc.push(verts[cur]);
            cur = succ[v][&cur];
        }
        debug_assert_eq!(verts[cur], arc[0]);
        out.push((verts[v], arc));
    }
    Ok(out)
}

fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    // DFS from vertex 0; first back edge closes a cycle
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, usize::MAX)];
    while let Some((v, p)) = stack.pop() {
        if depth[v] != usize::MAX {
            continue;
        }
        parent[v] = p;
        depth[v] = if p == usize::MAX { 0 } else { depth[p] + 1 };
        for &w in adj[v].iter().rev() {
            if w == p {
                continue;
            }
            if depth[w] != usize::MAX {
                if depth[w] < depth[v] {
                    // back edge v -> w
                    let mut cyc = vec![v];
                    let mut cur = v;
                    while cur != w {
                        cur = parent[cur];
                        cyc.push(cur);
                    }
                    return cyc;
                }
            } else {
                stack.push((w, v));
            }
        }
    }
    unreachable!("2-connected block has a cycle")
}

struct Fragment {
    attach: Vec<usize>,
    kernel: Vec<usize>, // empty for a chord between embedded vertices
    chord: Option<(usize, usize)>,
}

fn find_fragments(
    adj: &[Vec<usize>],
    in_h: &[bool],
    embedded: &BTreeSet<(usize, usize)>,
) -> Vec<Fragment> {
    let n = adj.len();
    let mut frags = Vec::new();
    // chords: unembedded edges between embedded vertices
    for u in 0..n {
        if !in_h[u] {
            continue;
        }
        for &v in &adj[u] {
            if u < v && in_h[v] && !embedded.contains(&(u, v)) {
                frags.push(Fragment {
                    attach: vec![u, v],
                    kernel: Vec::new(),
                    chord: Some((u, v)),
                });
            }
        }
    }
    // components of G - H with their attachments
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        let mut kernel = Vec::new();
        let mut attach = BTreeSet::new();
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            kernel.push(v);
            for &w in &adj[v] {
                if in_h[w] {
                    attach.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        kernel.sort_unstable();
        frags.push(Fragment {
            attach: attach.into_iter().collect(),
            kernel,
            chord: None,
        });
    }
    frags.sort_by(|a, b| a.attach.cmp(&b.attach).then(a.kernel.cmp(&b.kernel)));
    frags
}

fn fragment_path(adj: &[Vec<usize>], in_h: &[bool], frag: &Fragment) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    // BFS from the smallest attachment through the kernel to another attachment
    let start = frag.attach[0];
    let targets: BTreeSet<usize> = frag.attach[1..].iter().copied().collect();
    let in_kernel: BTreeSet<usize> = frag.kernel.iter().copied().collect();
    let n = adj.len();
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if seen[w] {
                continue;
            }
            if v == start && in_h[w] {
                continue; // must leave through the kernel
            }
            if targets.contains(&w) && in_kernel.contains(&v) {
                let mut path = vec![w, v];
                let mut cur = v;
                while prev[cur] != usize::MAX {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return path;
            }
            if in_kernel.contains(&w) {
                seen[w] = true;
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment of a 2-connected graph attaches twice")
}

/// Planarity check via the embedding attempt.
pub fn is_planar(n: usize, edges: &[(usize, usize)]) -> Result<bool, EmbedError> {
    match embed_abstract(n, edges) {
        Ok(_) => Ok(true),
        Err(EmbedError::NonplanarInput) => Ok(false),
        Err(e) => Err(e),
    }
}

const ENUM_MAX_N: usize = 10;
const ENUM_MAX_DEG: usize = 8;

/// All sphere embeddings of an abstract graph up to relabeling and
/// reflection. Rotation systems are generated vertex by vertex with the
/// first neighbor pinned, pruned by the Euler condition on the induced
/// subsystem (deleting edges never raises genus, so a partial system of
/// positive genus cannot complete to a sphere embedding), then deduplicated
/// by canonical code.
pub fn enumerate_embeddings(
    n: usize,
    edges: &[(usize, usize)],
) -> Result<Vec<PlaneGraph>, EmbedError> {
    if n > ENUM_MAX_N {
        return Err(EmbedError::ScaleLimit(format!(
            "enumerate_embeddings supports n <= {ENUM_MAX_N}, got {n}"
        )));
    }
    let adj = adjacency(n, edges)?;
    if let Some(d) = adj.iter().map(Vec::len).max() {
        if d > ENUM_MAX_DEG {
            return Err(EmbedError::ScaleLimit(format!(
                "enumerate_embeddings supports max degree <= {ENUM_MAX_DEG}, got {d}"
            )));
        }
    }

    // assignment order: min-degree start, then maximize edges into the
    // already-assigned prefix so the genus prune bites early
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    if n > 0 {
        let first = (0..n)
            .min_by_key(|&v| (adj[v].len(), v))
            .expect("nonempty");
        order.push(first);
        placed[first] = true;
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let back = adj[v].iter().filter(|&&w| placed[w]).count();
                    (back, usize::MAX - adj[v].len(), usize::MAX - v)
                })
                .unwrap();
            order.push(next);
            placed[next] = true;
        }
    }

    // candidate rotations per vertex: cyclic orders pinned at the smallest
    // neighbor, i.e. permutations of the remaining neighbors
    let candidates: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|v| {
            if adj[v].is_empty() {
                return vec![Vec::new()];
            }
            let pin = adj[v][0];
            let rest: Vec<usize> = adj[v][1..].to_vec();
            permutations(&rest)
                .into_iter()
                .map(|perm| {
                    let mut rot = Vec::with_capacity(adj[v].len());
                    rot.push(pin);
                    rot.extend(perm);
                    rot
                })
                .collect()
        })
        .collect();

    let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut found: BTreeMap<CanonicalCode, PlaneGraph> = BTreeMap::new();
    search_embeddings(&order, &candidates, 0, &mut rotations, &mut found);
    Ok(found.into_values().collect())
}

fn search_embeddings(
    order: &[usize],
    candidates: &[Vec<Vec<usize>>],
    depth: usize,
    rotations: &mut Vec<Vec<usize>>,
    found: &mut BTreeMap<CanonicalCode, PlaneGraph>,
) {
    if depth == order.len() {
        if let Ok(g) = build_plane_graph(rotations.clone()) {
            found.entry(canonical_code(&g)).or_insert(g);
        }
        return;
    }
    let v = order[depth];
    let assigned: Vec<usize> = order[..=depth].to_vec();
    for cand in &candidates[v] {
        rotations[v] = cand.clone();
        if induced_genus_zero(rotations, &assigned) {
            search_embeddings(order, candidates, depth + 1, rotations, found);
        }
    }
    rotations[v] = Vec::new();
}

/// Euler check on the subsystem induced by `assigned`; components are
/// computed within the induced subgraph.
fn induced_genus_zero(rotations: &[Vec<usize>], assigned: &[usize]) -> bool {
    let mut mark = vec![false; rotations.len()];
    for &v in assigned {
        mark[v] = true;
    }
    let induced: Vec<Vec<usize>> = (0..rotations.len())
        .map(|v| {
            if mark[v] {
                rotations[v].iter().copied().filter(|&w| mark[w]).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    let walks = trace_walks(&induced);
    // walks include degenerate ones for unassigned vertices; restrict
    let comps = find_components(&induced);
    for comp in comps {
        if comp.len() == 1 && !mark[comp[0]] {
            continue;
        }
        let vs = comp.len();
        let es = comp.iter().map(|&v| induced[v].len()).sum::<usize>() / 2;
        let fs = walks
            .iter()
            .filter(|w| comp.binary_search(&w.vertices[0]).is_ok())
            .count();
        if vs + fs != es + 2 {
            return false;
        }
    }
    true
}

/// Lexicographic permutations of a sorted slice.
fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = items.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation(arr: &mut [usize]) -> bool {
    let n = arr.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}
