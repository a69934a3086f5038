//! The seven-family catalog of facially complete plane graphs: generators,
//! the total classifier, extremal detection, and the interior-path search.
//!
//! Families: (1) prism with subdivided connectors, (2) tetrahedron with all
//! spokes subdivided, (3) K_{2,3} with every path carrying >= 2 internal
//! vertices, (4) wheels with some radii removed, still non-outerplanar,
//! (5) cycles with noncrossing interior diagonals, (6) connected outerplanar
//! embeddings with a cut vertex (or K1/K2), (7) disjoint unions of
//! outerplanar components.

use crate::closure::is_facially_complete;
use crate::embed::{
    build_plane_graph, classify_connectivity, is_outerplanar_embedding, Connectivity, PlaneGraph,
};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("subdivider triple {triple:?} is below the floor for {base:?}")]
    FloorViolation {
        base: SubdividedBase,
        triple: (usize, usize, usize),
    },
    #[error("radii {radii:?} on a {rim}-rim leave an outerplanar graph")]
    OuterplanarResult { rim: usize, radii: Vec<usize> },
    #[error("diagonals {0:?} and {1:?} cross")]
    CrossingDiagonals((usize, usize), (usize, usize)),
    #[error("duplicate diagonal {0:?}")]
    DuplicateChord((usize, usize)),
    #[error("invalid diagonal {chord:?}: {reason}")]
    InvalidChord {
        chord: (usize, usize),
        reason: String,
    },
    #[error("spec does not describe a type-6/7 outerplanar graph: {0}")]
    NotOuterplanar(String),
    #[error("graph is not facially complete")]
    NotFaciallyComplete,
    #[error("FC graph matches no catalog type ({0}); this falsifies the completeness theorem")]
    CatalogGap(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no interior path exists ({0}); this falsifies the path lemma")]
    NoPathFound(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubdividedBase {
    Prism,
    Tetrahedron,
    K23,
}

/// Nondecreasing subdivider counts; the constructor sorts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubdividerTriple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl SubdividerTriple {
    pub fn new(x: usize, y: usize, z: usize) -> Self {
        let mut v = [x, y, z];
        v.sort_unstable();
        SubdividerTriple {
            a: v[0],
            b: v[1],
            c: v[2],
        }
    }

    pub fn sum(&self) -> usize {
        self.a + self.b + self.c
    }

    fn as_tuple(&self) -> (usize, usize, usize) {
        (self.a, self.b, self.c)
    }
}

/// One connected piece of a type-6/7 spec, over local ids 0..k-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentSpec {
    /// K1.
    Single,
    /// A 2-connected outerplanar component: cycle positions 0..size-1 with
    /// noncrossing diagonals (position pairs). Valid only inside type 7.
    Cycle {
        size: usize,
        diagonals: Vec<(usize, usize)>,
    },
    /// A block tree: every block an edge or a chorded polygon, blocks
    /// sharing at most one vertex, the union connected with a cut vertex
    /// (or being a single edge).
    Blocks(Vec<BlockSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockSpec {
    Edge(usize, usize),
    Polygon {
        cycle: Vec<usize>,
        chords: Vec<(usize, usize)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogClass {
    Type1(SubdividerTriple),
    Type2(SubdividerTriple),
    Type3(SubdividerTriple),
    Type4 {
        rim: usize,
        radii: Vec<usize>,
    },
    Type5 {
        cycle: usize,
        diagonals: Vec<(usize, usize)>,
    },
    Type6(ComponentSpec),
    Type7(Vec<ComponentSpec>),
}

impl CatalogClass {
    pub fn type_number(&self) -> u8 {
        match self {
            CatalogClass::Type1(_) => 1,
            CatalogClass::Type2(_) => 2,
            CatalogClass::Type3(_) => 3,
            CatalogClass::Type4 { .. } => 4,
            CatalogClass::Type5 { .. } => 5,
            CatalogClass::Type6(_) => 6,
            CatalogClass::Type7(_) => 7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremalTag {
    PrismAaa,
    PrismAaa1,
    TetraAaa,
    K4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InteriorPath {
    pub alpha0: usize,
    pub alpha1: usize,
    pub interior: Vec<usize>,
}

// ---------------------------------------------------------------------------
// generators

/// Types 1-3: prism / tetrahedron / K_{2,3} with subdivided connectors.
pub fn gen_subdivided(
    base: SubdividedBase,
    t: SubdividerTriple,
) -> Result<PlaneGraph, CatalogError> {
    let floor = match base {
        SubdividedBase::Prism => 0,
        SubdividedBase::Tetrahedron => 1,
        SubdividedBase::K23 => 2,
    };
    if t.a < floor {
        return Err(CatalogError::FloorViolation {
            base,
            triple: t.as_tuple(),
        });
    }
    let s = [t.a, t.b, t.c];
    let g = match base {
        SubdividedBase::Prism => {
            // inner triangle 0,1,2; outer triangle 3,4,5; connector i joins
            // i to i+3 through s[i] degree-2 vertices
            let n = 6 + t.sum();
            let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
            let mut next_id = 6;
            for i in 0..3 {
                let chain: Vec<usize> = (0..s[i]).map(|k| next_id + k).collect();
                next_id += s[i];
                let inner_nbr = *chain.first().unwrap_or(&(i + 3));
                let outer_nbr = *chain.last().unwrap_or(&i);
                rot[i] = vec![inner_nbr, (i + 1) % 3, (i + 2) % 3];
                rot[i + 3] = vec![(i + 1) % 3 + 3, outer_nbr, (i + 2) % 3 + 3];
                let mut prev = i;
                for (k, &v) in chain.iter().enumerate() {
                    let nxt = *chain.get(k + 1).unwrap_or(&(i + 3));
                    rot[v] = vec![prev, nxt];
                    prev = v;
                }
            }
            build_plane_graph(rot)
        }
        SubdividedBase::Tetrahedron => {
            // triangle 0,1,2 kept intact; hub 3; spoke i runs hub -> ... -> i
            let n = 4 + t.sum();
            let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
            let mut hub_rot = Vec::new();
            let mut next_id = 4;
            for i in 0..3 {
                let chain: Vec<usize> = (0..s[i]).map(|k| next_id + k).collect();
                next_id += s[i];
                hub_rot.push(chain[0]);
                rot[i] = vec![(i + 1) % 3, *chain.last().unwrap(), (i + 2) % 3];
                let mut prev = 3;
                for (k, &v) in chain.iter().enumerate() {
                    let nxt = *chain.get(k + 1).unwrap_or(&i);
                    rot[v] = vec![prev, nxt];
                    prev = v;
                }
            }
            rot[3] = hub_rot;
            build_plane_graph(rot)
        }
        SubdividedBase::K23 => {
            // poles 0 and 1 joined by three paths with s[i] internal vertices
            let n = 2 + t.sum();
            let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
            let mut first = Vec::new();
            let mut last = Vec::new();
            let mut next_id = 2;
            for &len in &s {
                let chain: Vec<usize> = (0..len).map(|k| next_id + k).collect();
                next_id += len;
                first.push(chain[0]);
                last.push(*chain.last().unwrap());
                let mut prev = 0;
                for (k, &v) in chain.iter().enumerate() {
                    let nxt = *chain.get(k + 1).unwrap_or(&1);
                    rot[v] = vec![prev, nxt];
                    prev = v;
                }
            }
            rot[0] = first;
            rot[1] = vec![last[2], last[1], last[0]];
            build_plane_graph(rot)
        }
    };
    Ok(g.expect("generator rotation systems satisfy the sphere condition"))
}

/// Type 4: rim cycle 0..rim-1, hub `rim`, radial edges at the given rim
/// positions. Rejects parameter sets whose result is outerplanar.
pub fn gen_type4(rim: usize, radii: &[usize]) -> Result<PlaneGraph, CatalogError> {
    if rim < 3 {
        return Err(CatalogError::PreconditionViolated(format!(
            "rim size must be >= 3, got {rim}"
        )));
    }
    let set: BTreeSet<usize> = radii.iter().copied().collect();
    if set.len() != radii.len() {
        return Err(CatalogError::PreconditionViolated(
            "repeated radius position".into(),
        ));
    }
    if let Some(&p) = set.iter().find(|&&p| p >= rim) {
        return Err(CatalogError::PreconditionViolated(format!(
            "radius position {p} out of range for rim {rim}"
        )));
    }
    let outerplanar = match set.len() {
        0 | 1 => true,
        2 => {
            let v: Vec<usize> = set.iter().copied().collect();
            let d = v[1] - v[0];
            d == 1 || d == rim - 1
        }
        _ => false,
    };
    if outerplanar {
        return Err(CatalogError::OuterplanarResult {
            rim,
            radii: set.into_iter().collect(),
        });
    }
    let hub = rim;
    let mut rot: Vec<Vec<usize>> = Vec::with_capacity(rim + 1);
    for i in 0..rim {
        let mut r = vec![(i + 1) % rim];
        if set.contains(&i) {
            r.push(hub);
        }
        r.push((i + rim - 1) % rim);
        rot.push(r);
    }
    rot.push(set.iter().copied().collect());
    Ok(build_plane_graph(rot).expect("wheel rotations satisfy the sphere condition"))
}

/// Type 5: cycle positions 0..cycle-1 with noncrossing interior diagonals.
/// Degenerate sizes are allowed for completeness: 1 -> K1, 2 -> K2.
pub fn gen_type5(cycle: usize, diagonals: &[(usize, usize)]) -> Result<PlaneGraph, CatalogError> {
    validate_diagonals(cycle, diagonals)?;
    match cycle {
        0 => Err(CatalogError::PreconditionViolated("empty cycle".into())),
        1 => Ok(build_plane_graph(vec![vec![]]).unwrap()),
        2 => Ok(build_plane_graph(vec![vec![1], vec![0]]).unwrap()),
        m => {
            let mut nbrs: Vec<Vec<usize>> = (0..m).map(|i| vec![(i + 1) % m, (i + m - 1) % m]).collect();
            for &(a, b) in diagonals {
                nbrs[a].push(b);
                nbrs[b].push(a);
            }
            let rot = cycle_rotations_from(m, nbrs);
            Ok(build_plane_graph(rot)
                .expect("noncrossing diagonals keep the cycle system planar"))
        }
    }
}

/// Orient each position's neighbors by cyclic distance, which draws all
/// chords inside the cycle.
fn cycle_rotations_from(m: usize, nbrs: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    nbrs.into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.sort_unstable_by_key(|&w| (w + m - i) % m);
            r
        })
        .collect()
}

fn validate_diagonals(m: usize, diagonals: &[(usize, usize)]) -> Result<(), CatalogError> {
    let mut seen = BTreeSet::new();
    let mut norm = Vec::new();
    for &(x, y) in diagonals {
        let chord = (x.min(y), x.max(y));
        if chord.0 == chord.1 || chord.1 >= m {
            return Err(CatalogError::InvalidChord {
                chord,
                reason: format!("positions must be distinct and < {m}"),
            });
        }
        let d = chord.1 - chord.0;
        if d == 1 || d == m - 1 {
            return Err(CatalogError::InvalidChord {
                chord,
                reason: "endpoints are adjacent on the cycle".into(),
            });
        }
        if !seen.insert(chord) {
            return Err(CatalogError::DuplicateChord(chord));
        }
        norm.push(chord);
    }
    for (i, &(a, b)) in norm.iter().enumerate() {
        for &(c, d) in &norm[i + 1..] {
            let crossing = (a < c && c < b && b < d) || (c < a && a < d && d < b);
            if crossing {
                return Err(CatalogError::CrossingDiagonals((a, b), (c, d)));
            }
        }
    }
    Ok(())
}

/// Types 6 and 7: one κ<=1 connected outerplanar component, or a disjoint
/// union of outerplanar components. Component specs use local ids; the
/// result numbers components consecutively in order.
pub fn gen_outerplanar(components: &[ComponentSpec]) -> Result<PlaneGraph, CatalogError> {
    if components.is_empty() {
        return Err(CatalogError::NotOuterplanar("empty spec".into()));
    }
    if components.len() == 1 {
        if let ComponentSpec::Cycle { .. } = components[0] {
            return Err(CatalogError::NotOuterplanar(
                "a lone 2-connected component belongs to the cycle-with-diagonals family".into(),
            ));
        }
    }
    let mut rot: Vec<Vec<usize>> = Vec::new();
    for spec in components {
        let local = component_rotations(spec, components.len() > 1)?;
        let offset = rot.len();
        rot.extend(
            local
                .into_iter()
                .map(|r| r.into_iter().map(|v| v + offset).collect::<Vec<_>>()),
        );
    }
    let g = build_plane_graph(rot)
        .expect("outerplanar component gluing satisfies the sphere condition");
    debug_assert!(is_outerplanar_embedding(&g));
    Ok(g)
}

fn component_rotations(
    spec: &ComponentSpec,
    in_union: bool,
) -> Result<Vec<Vec<usize>>, CatalogError> {
    match spec {
        ComponentSpec::Single => Ok(vec![vec![]]),
        ComponentSpec::Cycle { size, diagonals } => {
            if !in_union {
                return Err(CatalogError::NotOuterplanar(
                    "lone cycle component".into(),
                ));
            }
            if *size < 3 {
                return Err(CatalogError::NotOuterplanar(format!(
                    "cycle component needs size >= 3, got {size} (use single or an edge block)"
                )));
            }
            validate_diagonals(*size, diagonals)?;
            let m = *size;
            let mut nbrs: Vec<Vec<usize>> =
                (0..m).map(|i| vec![(i + 1) % m, (i + m - 1) % m]).collect();
            for &(a, b) in diagonals {
                nbrs[a].push(b);
                nbrs[b].push(a);
            }
            Ok(cycle_rotations_from(m, nbrs))
        }
        ComponentSpec::Blocks(blocks) => blocks_rotations(blocks),
    }
}

fn blocks_rotations(blocks: &[BlockSpec]) -> Result<Vec<Vec<usize>>, CatalogError> {
    if blocks.is_empty() {
        return Err(CatalogError::NotOuterplanar("empty block list".into()));
    }
    if blocks.len() == 1 {
        if let BlockSpec::Polygon { .. } = blocks[0] {
            return Err(CatalogError::NotOuterplanar(
                "a single polygon block is 2-connected".into(),
            ));
        }
    }
    // collect and validate vertex sets
    let mut vsets: Vec<BTreeSet<usize>> = Vec::new();
    for b in blocks {
        let set: BTreeSet<usize> = match b {
            BlockSpec::Edge(u, v) => {
                if u == v {
                    return Err(CatalogError::NotOuterplanar(format!(
                        "edge block ({u},{v}) is a loop"
                    )));
                }
                [*u, *v].into_iter().collect()
            }
            BlockSpec::Polygon { cycle, chords } => {
                if cycle.len() < 3 {
                    return Err(CatalogError::NotOuterplanar(
                        "polygon block needs >= 3 vertices".into(),
                    ));
                }
                let set: BTreeSet<usize> = cycle.iter().copied().collect();
                if set.len() != cycle.len() {
                    return Err(CatalogError::NotOuterplanar(
                        "polygon cycle repeats a vertex".into(),
                    ));
                }
                // chords are id pairs; map to positions for validation
                let pos: BTreeMap<usize, usize> =
                    cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                let chord_pos: Vec<(usize, usize)> = chords
                    .iter()
                    .map(|&(u, v)| {
                        let (a, b) = (pos.get(&u), pos.get(&v));
                        match (a, b) {
                            (Some(&a), Some(&b)) => Ok((a, b)),
                            _ => Err(CatalogError::NotOuterplanar(format!(
                                "chord ({u},{v}) uses a vertex off its polygon"
                            ))),
                        }
                    })
                    .collect::<Result<_, _>>()?;
                validate_diagonals(cycle.len(), &chord_pos)?;
                set
            }
        };
        vsets.push(set);
    }
    for i in 0..vsets.len() {
        for j in (i + 1)..vsets.len() {
            if vsets[i].intersection(&vsets[j]).count() > 1 {
                return Err(CatalogError::NotOuterplanar(
                    "blocks share more than one vertex".into(),
                ));
            }
        }
    }
    let all: BTreeSet<usize> = vsets.iter().flatten().copied().collect();
    let n = all.len();
    if *all.iter().next_back().unwrap() != n - 1 {
        return Err(CatalogError::NotOuterplanar(
            "component vertex ids must cover 0..k-1".into(),
        ));
    }
    // tree condition over the block-cut structure
    let total: usize = vsets.iter().map(BTreeSet::len).sum();
    if total != n + blocks.len() - 1 {
        return Err(CatalogError::NotOuterplanar(
            "blocks do not form a tree".into(),
        ));
    }
    // connectivity via union-find on shared vertices
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for set in &vsets {
        let mut it = set.iter();
        let first = *it.next().unwrap();
        for &v in it {
            let (a, b) = (find(&mut parent, first), find(&mut parent, v));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    if (0..n).any(|v| find(&mut parent, v) != root) {
        return Err(CatalogError::NotOuterplanar(
            "block tree is not connected".into(),
        ));
    }

    // glue: append each block's rotation arcs; the wrap corner of every arc
    // stays on the outer face, so the union remains outerplanar
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    for b in blocks {
        match b {
            BlockSpec::Edge(u, v) => {
                rot[*u].push(*v);
                rot[*v].push(*u);
            }
            BlockSpec::Polygon { cycle, chords } => {
                let m = cycle.len();
                let pos: BTreeMap<usize, usize> =
                    cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                let mut nbrs: Vec<Vec<usize>> =
                    (0..m).map(|i| vec![(i + 1) % m, (i + m - 1) % m]).collect();
                for &(u, v) in chords {
                    nbrs[pos[&u]].push(pos[&v]);
                    nbrs[pos[&v]].push(pos[&u]);
                }
                for (i, arc) in cycle_rotations_from(m, nbrs).into_iter().enumerate() {
                    rot[cycle[i]].extend(arc.into_iter().map(|p| cycle[p]));
                }
            }
        }
    }
    Ok(rot)
}

/// Build the graph a CatalogClass describes.
pub fn generate(class: &CatalogClass) -> Result<PlaneGraph, CatalogError> {
    match class {
        CatalogClass::Type1(t) => gen_subdivided(SubdividedBase::Prism, *t),
        CatalogClass::Type2(t) => gen_subdivided(SubdividedBase::Tetrahedron, *t),
        CatalogClass::Type3(t) => gen_subdivided(SubdividedBase::K23, *t),
        CatalogClass::Type4 { rim, radii } => gen_type4(*rim, radii),
        CatalogClass::Type5 { cycle, diagonals } => gen_type5(*cycle, diagonals),
        CatalogClass::Type6(spec) => gen_outerplanar(std::slice::from_ref(spec)),
        CatalogClass::Type7(specs) => {
            if specs.len() < 2 {
                return Err(CatalogError::NotOuterplanar(
                    "type 7 needs >= 2 components".into(),
                ));
            }
            gen_outerplanar(specs)
        }
    }
}

// ---------------------------------------------------------------------------
// dihedral canonicalization

/// Least representative of a position subset under the dihedral group of Z_m.
pub(crate) fn canon_subset(m: usize, positions: &[usize]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for refl in [false, true] {
        for r in 0..m {
            let mut img: Vec<usize> = positions
                .iter()
                .map(|&p| {
                    let p = if refl { (m - p) % m } else { p };
                    (p + r) % m
                })
                .collect();
            img.sort_unstable();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
    }
    best.unwrap_or_default()
}

/// Least representative of a chord set under the dihedral group of Z_m.
pub(crate) fn canon_chords(m: usize, chords: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut best: Option<Vec<(usize, usize)>> = None;
    for refl in [false, true] {
        for r in 0..m {
            let mut img: Vec<(usize, usize)> = chords
                .iter()
                .map(|&(x, y)| {
                    let map = |p: usize| {
                        let p = if refl { (m - p) % m } else { p };
                        (p + r) % m
                    };
                    let (a, b) = (map(x), map(y));
                    (a.min(b), a.max(b))
                })
                .collect();
            img.sort_unstable();
            if best.as_ref().is_none_or(|b| img < *b) {
                best = Some(img);
            }
        }
    }
    best.unwrap_or_default()
}

// ---------------------------------------------------------------------------
// classifier

/// Classify a facially complete plane graph into its unique catalog type.
/// All seven matchers run; anything other than exactly one hit is reported
/// as a CatalogGap (which would falsify the completeness theorem).
pub fn classify(g: &PlaneGraph) -> Result<CatalogClass, CatalogError> {
    if !is_facially_complete(g) {
        return Err(CatalogError::NotFaciallyComplete);
    }
    let mut hits: Vec<CatalogClass> = Vec::new();
    if let Some(t) = match_type1(g) {
        hits.push(CatalogClass::Type1(t));
    }
    if let Some(t) = match_type2(g) {
        hits.push(CatalogClass::Type2(t));
    }
    if let Some(t) = match_type3(g) {
        hits.push(CatalogClass::Type3(t));
    }
    if let Some((rim, radii)) = match_type4(g) {
        hits.push(CatalogClass::Type4 { rim, radii });
    }
    if let Some((cycle, diagonals)) = match_type5(g) {
        hits.push(CatalogClass::Type5 { cycle, diagonals });
    }
    if let Some(spec) = match_type6(g) {
        hits.push(CatalogClass::Type6(spec));
    }
    if let Some(specs) = match_type7(g) {
        hits.push(CatalogClass::Type7(specs));
    }
    match hits.len() {
        1 => Ok(hits.pop().unwrap()),
        0 => Err(CatalogError::CatalogGap(format!(
            "no type matches n={} E={}",
            g.vertex_count(),
            g.edge_count()
        ))),
        _ => Err(CatalogError::CatalogGap(format!(
            "exclusivity violated: types {:?} all match",
            hits.iter().map(CatalogClass::type_number).collect::<Vec<_>>()
        ))),
    }
}

fn is_2conn_nonouter(g: &PlaneGraph) -> bool {
    classify_connectivity(g) == Connectivity::TwoPlusConnected && !is_outerplanar_embedding(g)
}

/// Degree test: every vertex has degree 3 or 2, with exactly `k` threes.
/// Returns the degree-3 vertices.
fn degree_3_2_profile(g: &PlaneGraph, k: usize) -> Option<Vec<usize>> {
    let mut d3 = Vec::new();
    for v in 0..g.vertex_count() {
        match g.degree(v) {
            3 => d3.push(v),
            2 => {}
            _ => return None,
        }
    }
    (d3.len() == k).then_some(d3)
}

/// Starting along the dart branch -> first, walk through degree-2 vertices
/// until hitting one of degree != 2. Returns (endpoint, internal vertices).
fn follow_chain(g: &PlaneGraph, branch: usize, first: usize) -> (usize, Vec<usize>) {
    let mut internal = Vec::new();
    let (mut prev, mut cur) = (branch, first);
    while g.degree(cur) == 2 {
        internal.push(cur);
        let nbrs = g.neighbors(cur);
        let nxt = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
        prev = cur;
        cur = nxt;
    }
    (cur, internal)
}

fn match_type1(g: &PlaneGraph) -> Option<SubdividerTriple> {
    if !is_2conn_nonouter(g) {
        return None;
    }
    let d3 = degree_3_2_profile(g, 6)?;
    let adj = |u: usize, v: usize| g.has_edge(u, v);
    // split the six into two disjoint triangles with a chain matching
    for mask in 0u32..(1 << 6) {
        if mask.count_ones() != 3 || (mask & 1) == 0 {
            continue; // fix d3[0] in t1 to halve the search
        }
        let t1: Vec<usize> = (0..6).filter(|i| mask >> i & 1 == 1).map(|i| d3[i]).collect();
        let t2: Vec<usize> = (0..6).filter(|i| mask >> i & 1 == 0).map(|i| d3[i]).collect();
        let tri = |t: &[usize]| adj(t[0], t[1]) && adj(t[0], t[2]) && adj(t[1], t[2]);
        if !tri(&t1) || !tri(&t2) {
            continue;
        }
        let mut used = vec![false; g.vertex_count()];
        let mut hit = [false; 3];
        let mut lens = Vec::new();
        let mut ok = true;
        for &v in &t1 {
            let out = *g
                .neighbors(v)
                .iter()
                .find(|w| !t1.contains(w))
                .expect("degree-3 vertex has a non-triangle neighbor");
            let (end, internal) = follow_chain(g, v, out);
            match t2.iter().position(|&u| u == end) {
                Some(j) if !hit[j] => hit[j] = true,
                _ => {
                    ok = false;
                    break;
                }
            }
            for &w in &internal {
                if used[w] {
                    ok = false;
                    break;
                }
                used[w] = true;
            }
            if !ok {
                break;
            }
            lens.push(internal.len());
        }
        if !ok || lens.len() != 3 {
            continue;
        }
        // all degree-2 vertices must lie on the three connectors
        let covered = used.iter().filter(|&&b| b).count();
        if covered + 6 != g.vertex_count() {
            continue;
        }
        return Some(SubdividerTriple::new(lens[0], lens[1], lens[2]));
    }
    None
}

fn match_type2(g: &PlaneGraph) -> Option<SubdividerTriple> {
    if !is_2conn_nonouter(g) {
        return None;
    }
    let d3 = degree_3_2_profile(g, 4)?;
    // the hub is the degree-3 vertex with no degree-3 neighbor; the corners
    // must be pairwise adjacent (the intact triangle)
    let hub = *d3
        .iter()
        .find(|&&v| d3.iter().all(|&u| u == v || !g.has_edge(u, v)))?;
    let corners: Vec<usize> = d3.iter().copied().filter(|&v| v != hub).collect();
    for i in 0..3 {
        for j in (i + 1)..3 {
            if !g.has_edge(corners[i], corners[j]) {
                return None;
            }
        }
    }
    let mut used = vec![false; g.vertex_count()];
    let mut hit = [false; 3];
    let mut lens = Vec::new();
    for &w in g.neighbors(hub) {
        let (end, internal) = follow_chain(g, hub, w);
        if internal.is_empty() {
            return None; // unsubdivided spoke: that shape is a wheel
        }
        let j = corners.iter().position(|&c| c == end)?;
        if hit[j] {
            return None;
        }
        hit[j] = true;
        for &x in &internal {
            if used[x] {
                return None;
            }
            used[x] = true;
        }
        lens.push(internal.len());
    }
    let covered = used.iter().filter(|&&b| b).count();
    if covered + 4 != g.vertex_count() {
        return None;
    }
    Some(SubdividerTriple::new(lens[0], lens[1], lens[2]))
}

fn match_type3(g: &PlaneGraph) -> Option<SubdividerTriple> {
    if !is_2conn_nonouter(g) {
        return None;
    }
    let d3 = degree_3_2_profile(g, 2)?;
    let (a0, a1) = (d3[0], d3[1]);
    let mut used = vec![false; g.vertex_count()];
    let mut lens = Vec::new();
    for &w in g.neighbors(a0) {
        let (end, internal) = follow_chain(g, a0, w);
        if end != a1 || internal.len() < 2 {
            return None; // short paths belong to type 4 (or outerplanar shapes)
        }
        for &x in &internal {
            if used[x] {
                return None;
            }
            used[x] = true;
        }
        lens.push(internal.len());
    }
    let covered = used.iter().filter(|&&b| b).count();
    if covered + 2 != g.vertex_count() {
        return None;
    }
    Some(SubdividerTriple::new(lens[0], lens[1], lens[2]))
}

fn match_type4(g: &PlaneGraph) -> Option<(usize, Vec<usize>)> {
    if !is_2conn_nonouter(g) {
        return None;
    }
    let n = g.vertex_count();
    for h in 0..n {
        if g.degree(h) < 2 || n - 1 < 3 {
            continue;
        }
        // G - h must be a single cycle through all remaining vertices
        if (0..n).any(|v| {
            v != h && g.degree(v) - usize::from(g.has_edge(v, h)) != 2
        }) {
            continue;
        }
        // walk the rim from the smallest vertex toward its smaller neighbor
        let start = (0..n).find(|&v| v != h).unwrap();
        let rim_nbrs = |v: usize| -> Vec<usize> {
            g.neighbors(v).iter().copied().filter(|&w| w != h).collect()
        };
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = *rim_nbrs(start).iter().min().unwrap();
        while cur != start {
            order.push(cur);
            let nb = rim_nbrs(cur);
            let nxt = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = nxt;
        }
        if order.len() != n - 1 {
            continue; // G - h splits into several cycles
        }
        let m = n - 1;
        let posn: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let radii: Vec<usize> = g.neighbors(h).iter().map(|w| posn[w]).collect();
        return Some((m, canon_subset(m, &radii)));
    }
    None
}

fn match_type5(g: &PlaneGraph) -> Option<(usize, Vec<(usize, usize)>)> {
    if classify_connectivity(g) != Connectivity::TwoPlusConnected || !is_outerplanar_embedding(g) {
        return None;
    }
    let n = g.vertex_count();
    // the full face of a 2-connected outerplanar embedding is a Hamilton cycle
    let full = g.faces().iter().find(|f| f.size() == n).unwrap();
    let walk = &g.walks()[full.walk_indices()[0]];
    let order = walk.vertices();
    let posn: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut diagonals = Vec::new();
    for (u, v) in g.edges() {
        let (a, b) = (posn[&u], posn[&v]);
        let d = a.abs_diff(b);
        if d != 1 && d != n - 1 {
            diagonals.push((a.min(b), a.max(b)));
        }
    }
    Some((n, canon_chords(n, &diagonals)))
}

fn match_type6(g: &PlaneGraph) -> Option<ComponentSpec> {
    if classify_connectivity(g) != Connectivity::OneConnected || !is_outerplanar_embedding(g) {
        return None;
    }
    Some(component_descriptor(g, &(0..g.vertex_count()).collect::<Vec<_>>()))
}

fn match_type7(g: &PlaneGraph) -> Option<Vec<ComponentSpec>> {
    if g.components().len() < 2 || !is_outerplanar_embedding(g) {
        return None;
    }
    // every component must itself be outerplanar (guaranteed when FC)
    let mut specs = Vec::new();
    for comp in g.components() {
        let sub = induced_embedding(g, comp);
        if !is_outerplanar_embedding(&sub) {
            return None;
        }
        let spec = match classify_connectivity(&sub) {
            Connectivity::TwoPlusConnected => {
                let (size, diagonals) = match_type5(&sub).expect("2-connected outerplanar");
                ComponentSpec::Cycle { size, diagonals }
            }
            _ => component_descriptor(&sub, &(0..sub.vertex_count()).collect::<Vec<_>>()),
        };
        specs.push(spec);
    }
    specs.sort_by_key(component_sort_key);
    Some(specs)
}

fn component_sort_key(spec: &ComponentSpec) -> (usize, String) {
    match spec {
        ComponentSpec::Single => (0, String::new()),
        ComponentSpec::Cycle { size, diagonals } => (1, format!("{size:08}{diagonals:?}")),
        ComponentSpec::Blocks(blocks) => (2, format!("{blocks:?}")),
    }
}

/// Rotation system induced on a sorted vertex subset, relabeled 0..k-1.
fn induced_embedding(g: &PlaneGraph, verts: &[usize]) -> PlaneGraph {
    let posn: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let rot: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter_map(|w| posn.get(w).copied())
                .collect()
        })
        .collect();
    build_plane_graph(rot).expect("induced subsystem of a sphere embedding stays genus 0")
}

/// Canonical block-tree descriptor of a connected κ<=1 outerplanar embedding
/// over its own vertex ids (assumed 0..n-1).
fn component_descriptor(g: &PlaneGraph, verts: &[usize]) -> ComponentSpec {
    debug_assert_eq!(verts.len(), g.vertex_count());
    let n = g.vertex_count();
    if n == 1 {
        return ComponentSpec::Single;
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut a = g.neighbors(v).to_vec();
            a.sort_unstable();
            a
        })
        .collect();
    let mut blocks = Vec::new();
    for edges in crate::embed::biconnected_blocks(&adj) {
        if edges.len() == 1 {
            let (u, v) = edges[0];
            blocks.push(BlockSpec::Edge(u.min(v), u.max(v)));
            continue;
        }
        let mut bverts: Vec<usize> = edges
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        bverts.sort_unstable();
        // restrict the embedding to this block; its full face is the
        // block's boundary cycle
        let posn: BTreeMap<usize, usize> =
            bverts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let eset: BTreeSet<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        let rot: Vec<Vec<usize>> = bverts
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&w| eset.contains(&(v.min(w), v.max(w))))
                    .map(|w| posn[w])
                    .collect()
            })
            .collect();
        let sub = build_plane_graph(rot).expect("block subsystem stays genus 0");
        let k = sub.vertex_count();
        let full = sub
            .faces()
            .iter()
            .find(|f| f.size() == k)
            .expect("blocks of an outerplanar embedding are outerplanar");
        let cyc_local = sub.walks()[full.walk_indices()[0]].vertices();
        let cycle: Vec<usize> = cyc_local.iter().map(|&i| bverts[i]).collect();
        let cycle = canonical_cycle(&cycle);
        let cpos: BTreeMap<usize, usize> = cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut chords: Vec<(usize, usize)> = eset
            .iter()
            .copied()
            .filter(|&(u, v)| {
                let d = cpos[&u].abs_diff(cpos[&v]);
                d != 1 && d != k - 1
            })
            .collect();
        chords.sort_unstable();
        blocks.push(BlockSpec::Polygon { cycle, chords });
    }
    blocks.sort_by_key(|b| match b {
        BlockSpec::Edge(u, v) => (*u, 0, *v, Vec::new()),
        BlockSpec::Polygon { cycle, .. } => {
            (*cycle.iter().min().unwrap(), 1, cycle.len(), cycle.clone())
        }
    });
    ComponentSpec::Blocks(blocks)
}

/// Rotate to put the smallest vertex first, then pick the direction whose
/// second vertex is smaller.
fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let k = cycle.len();
    let at = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .map(|(i, _)| i)
        .unwrap();
    let fwd: Vec<usize> = (0..k).map(|i| cycle[(at + i) % k]).collect();
    let bwd: Vec<usize> = (0..k).map(|i| cycle[(at + k - i) % k]).collect();
    if fwd[1] <= bwd[1] {
        fwd
    } else {
        bwd
    }
}

// ---------------------------------------------------------------------------
// extremal detection

/// Tag instances meeting n = W(q); these are exactly the shapes listed.
pub fn is_extremal(g: &PlaneGraph) -> Result<Option<ExtremalTag>, CatalogError> {
    let class = classify(g)?;
    Ok(extremal_tag(&class))
}

pub fn extremal_tag(class: &CatalogClass) -> Option<ExtremalTag> {
    match class {
        CatalogClass::Type1(t) if t.a == t.b && t.b == t.c => Some(ExtremalTag::PrismAaa),
        CatalogClass::Type1(t) if t.a == t.b && t.c == t.a + 1 => Some(ExtremalTag::PrismAaa1),
        CatalogClass::Type2(t) if t.a == t.b && t.b == t.c => Some(ExtremalTag::TetraAaa),
        CatalogClass::Type4 { rim: 3, radii } if radii.len() == 3 => Some(ExtremalTag::K4),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// interior path

/// Exhibit a path between two non-consecutive vertices of a maximum face
/// whose interior avoids that face entirely.
pub fn find_interior_path(g: &PlaneGraph, face_index: usize) -> Result<InteriorPath, CatalogError> {
    if classify_connectivity(g) != Connectivity::TwoPlusConnected {
        return Err(CatalogError::PreconditionViolated(
            "graph must be 2-connected".into(),
        ));
    }
    if face_index >= g.faces().len() {
        return Err(CatalogError::PreconditionViolated(format!(
            "face index {face_index} out of range"
        )));
    }
    let q = g.max_face_size();
    let face = &g.faces()[face_index];
    if face.size() != q {
        return Err(CatalogError::PreconditionViolated(format!(
            "exterior face has {} vertices but the maximum face size is {q}",
            face.size()
        )));
    }
    if q < 4 {
        return Err(CatalogError::PreconditionViolated(format!(
            "exterior face size {q} < 4"
        )));
    }
    let n = g.vertex_count();
    if n < q + 2 {
        return Err(CatalogError::PreconditionViolated(format!(
            "n = {n} < q + 2 = {}",
            q + 2
        )));
    }

    // 2-connected, so the exterior walk is a cycle
    let ext_cycle = g.walks()[face.walk_indices()[0]].vertices().to_vec();
    let on_ext = |v: usize| face.contains(v);
    let extpos: BTreeMap<usize, usize> = ext_cycle
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let consecutive = |u: usize, v: usize| {
        let d = extpos[&u].abs_diff(extpos[&v]);
        d == 1 || d == q - 1
    };

    // components of G - exterior, with their attachments
    let mut seen = vec![false; n];
    for s in 0..n {
        if on_ext(s) || seen[s] {
            continue;
        }
        let mut kernel = Vec::new();
        let mut attach = BTreeSet::new();
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            kernel.push(v);
            for &w in g.neighbors(v) {
                if on_ext(w) {
                    attach.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        let attach: Vec<usize> = attach.into_iter().collect();
        let pair = attach.iter().enumerate().find_map(|(i, &a)| {
            attach[i + 1..]
                .iter()
                .find(|&&b| !consecutive(a, b))
                .map(|&b| (a, b))
        });
        let Some((alpha0, alpha1)) = pair else {
            continue;
        };
        // BFS from alpha0 through the kernel to alpha1
        let kernel_set: BTreeSet<usize> = kernel.iter().copied().collect();
        let mut prev = vec![usize::MAX; n];
        let mut vis = vec![false; n];
        vis[alpha0] = true;
        let mut queue = VecDeque::new();
        queue.push_back(alpha0);
        'bfs: while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if vis[w] {
                    continue;
                }
                if w == alpha1 && kernel_set.contains(&v) {
                    prev[w] = v;
                    break 'bfs;
                }
                if kernel_set.contains(&w) {
                    vis[w] = true;
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![alpha1];
        let mut cur = alpha1;
        while prev[cur] != usize::MAX {
            cur = prev[cur];
            path.push(cur);
        }
        debug_assert_eq!(cur, alpha0);
        path.reverse();
        let interior = path[1..path.len() - 1].to_vec();
        debug_assert!(!interior.is_empty());
        return Ok(InteriorPath {
            alpha0,
            alpha1,
            interior,
        });
    }
    // Degenerate case: a chord of the exterior cycle is a path with no
    // interior vertices. When every interior component attaches only to
    // consecutive pairs, the region left between the exterior and those
    // components would be a face larger than q unless a chord splits it,
    // so a chord must exist.
    for (i, &u) in ext_cycle.iter().enumerate() {
        for &v in &ext_cycle[i + 1..] {
            if !consecutive(u, v) && g.has_edge(u, v) {
                return Ok(InteriorPath {
                    alpha0: u,
                    alpha1: v,
                    interior: Vec::new(),
                });
            }
        }
    }
    Err(CatalogError::NoPathFound(format!(
        "no interior component attaches to non-consecutive vertices of face {face_index}, and the face has no chord"
    )))
}

// ---------------------------------------------------------------------------
// serialization: {"type": k, "params": {...}}

impl Serialize for CatalogClass {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let params = match self {
            CatalogClass::Type1(t) | CatalogClass::Type2(t) | CatalogClass::Type3(t) => {
                serde_json::json!({ "subdividers": [t.a, t.b, t.c] })
            }
            CatalogClass::Type4 { rim, radii } => {
                serde_json::json!({ "rim": rim, "radii": radii })
            }
            CatalogClass::Type5 { cycle, diagonals } => {
                serde_json::json!({ "cycle": cycle, "diagonals": diagonals })
            }
            CatalogClass::Type6(spec) => component_to_json(spec),
            CatalogClass::Type7(specs) => {
                serde_json::json!({
                    "components": specs.iter().map(component_to_json).collect::<Vec<_>>()
                })
            }
        };
        let doc = serde_json::json!({ "type": self.type_number(), "params": params });
        doc.serialize(ser)
    }
}

fn component_to_json(spec: &ComponentSpec) -> serde_json::Value {
    match spec {
        ComponentSpec::Single => serde_json::json!({ "single": true }),
        ComponentSpec::Cycle { size, diagonals } => {
            serde_json::json!({ "cycle": size, "diagonals": diagonals })
        }
        ComponentSpec::Blocks(blocks) => {
            let bs: Vec<serde_json::Value> = blocks
                .iter()
                .map(|b| match b {
                    BlockSpec::Edge(u, v) => serde_json::json!({ "edge": [u, v] }),
                    BlockSpec::Polygon { cycle, chords } => {
                        serde_json::json!({ "cycle": cycle, "chords": chords })
                    }
                })
                .collect();
            serde_json::json!({ "blocks": bs })
        }
    }
}

impl<'de> Deserialize<'de> for CatalogClass {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(de)?;
        class_from_json(&v).map_err(D::Error::custom)
    }
}

fn class_from_json(v: &serde_json::Value) -> Result<CatalogClass, String> {
    let t = v
        .get("type")
        .and_then(serde_json::Value::as_u64)
        .ok_or("missing numeric \"type\"")?;
    let params = v.get("params").ok_or("missing \"params\"")?;
    let triple = |p: &serde_json::Value| -> Result<SubdividerTriple, String> {
        let arr = p
            .get("subdividers")
            .and_then(serde_json::Value::as_array)
            .ok_or("missing \"subdividers\" array")?;
        if arr.len() != 3 {
            return Err("\"subdividers\" must have 3 entries".into());
        }
        let g = |i: usize| {
            arr[i]
                .as_u64()
                .map(|x| x as usize)
                .ok_or_else(|| "subdivider counts must be nonnegative integers".to_string())
        };
        Ok(SubdividerTriple::new(g(0)?, g(1)?, g(2)?))
    };
    match t {
        1 => Ok(CatalogClass::Type1(triple(params)?)),
        2 => Ok(CatalogClass::Type2(triple(params)?)),
        3 => Ok(CatalogClass::Type3(triple(params)?)),
        4 => {
            let rim = params
                .get("rim")
                .and_then(serde_json::Value::as_u64)
                .ok_or("missing \"rim\"")? as usize;
            let radii = usize_list(params.get("radii").ok_or("missing \"radii\"")?)?;
            Ok(CatalogClass::Type4 { rim, radii })
        }
        5 => {
            let cycle = params
                .get("cycle")
                .and_then(serde_json::Value::as_u64)
                .ok_or("missing \"cycle\"")? as usize;
            let diagonals = pair_list(params.get("diagonals").ok_or("missing \"diagonals\"")?)?;
            Ok(CatalogClass::Type5 { cycle, diagonals })
        }
        6 => Ok(CatalogClass::Type6(component_from_json(params)?)),
        7 => {
            let comps = params
                .get("components")
                .and_then(serde_json::Value::as_array)
                .ok_or("missing \"components\" array")?;
            Ok(CatalogClass::Type7(
                comps
                    .iter()
                    .map(component_from_json)
                    .collect::<Result<_, _>>()?,
            ))
        }
        other => Err(format!("type must be 1..7, got {other}")),
    }
}

fn component_from_json(v: &serde_json::Value) -> Result<ComponentSpec, String> {
    if v.get("single").is_some() {
        return Ok(ComponentSpec::Single);
    }
    if let Some(blocks) = v.get("blocks").and_then(serde_json::Value::as_array) {
        let bs = blocks
            .iter()
            .map(|b| {
                if let Some(e) = b.get("edge") {
                    let e = usize_list(e)?;
                    if e.len() != 2 {
                        return Err("\"edge\" must have 2 entries".to_string());
                    }
                    Ok(BlockSpec::Edge(e[0], e[1]))
                } else if let Some(c) = b.get("cycle") {
                    let cycle = usize_list(c)?;
                    let chords = match b.get("chords") {
                        Some(ch) => pair_list(ch)?,
                        None => Vec::new(),
                    };
                    Ok(BlockSpec::Polygon { cycle, chords })
                } else {
                    Err("block must have \"edge\" or \"cycle\"".to_string())
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(ComponentSpec::Blocks(bs));
    }
    if let Some(size) = v.get("cycle").and_then(serde_json::Value::as_u64) {
        let diagonals = match v.get("diagonals") {
            Some(d) => pair_list(d)?,
            None => Vec::new(),
        };
        return Ok(ComponentSpec::Cycle {
            size: size as usize,
            diagonals,
        });
    }
    Err("component must be {\"single\":true}, {\"cycle\":…,\"diagonals\":…} or {\"blocks\":[…]}".into())
}

fn usize_list(v: &serde_json::Value) -> Result<Vec<usize>, String> {
    v.as_array()
        .ok_or("expected an array")?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|u| u as usize)
                .ok_or_else(|| "expected nonnegative integers".to_string())
        })
        .collect()
}

fn pair_list(v: &serde_json::Value) -> Result<Vec<(usize, usize)>, String> {
    v.as_array()
        .ok_or("expected an array of pairs")?
        .iter()
        .map(|p| {
            let l = usize_list(p)?;
            if l.len() != 2 {
                return Err("pairs must have exactly 2 entries".to_string());
            }
            Ok((l[0], l[1]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{facial_closure, w_bound};

    fn triple(a: usize, b: usize, c: usize) -> SubdividerTriple {
        SubdividerTriple::new(a, b, c)
    }

    #[test]
    fn prism_family_relations() {
        for (a, b, c) in [(0, 0, 0), (1, 1, 1), (0, 1, 2), (2, 3, 5)] {
            let t = triple(a, b, c);
            let g = gen_subdivided(SubdividedBase::Prism, t).unwrap();
            assert_eq!(g.vertex_count(), 6 + t.sum());
            assert_eq!(g.max_face_size(), 4 + t.b + t.c);
            assert!(is_facially_complete(&g), "prism {t:?}");
            assert_eq!(classify(&g).unwrap(), CatalogClass::Type1(t));
        }
    }

    #[test]
    fn tetra_family_relations() {
        for (a, b, c) in [(1, 1, 1), (1, 2, 3), (4, 4, 4), (2, 2, 5)] {
            let t = triple(a, b, c);
            let g = gen_subdivided(SubdividedBase::Tetrahedron, t).unwrap();
            assert_eq!(g.vertex_count(), 4 + t.sum());
            assert_eq!(g.max_face_size(), 3 + t.b + t.c);
            assert!(is_facially_complete(&g), "tetra {t:?}");
            assert_eq!(classify(&g).unwrap(), CatalogClass::Type2(t));
        }
    }

    #[test]
    fn k23_family_relations() {
        for (a, b, c) in [(2, 2, 2), (2, 3, 4), (3, 3, 3), (2, 2, 6)] {
            let t = triple(a, b, c);
            let g = gen_subdivided(SubdividedBase::K23, t).unwrap();
            assert_eq!(g.vertex_count(), 2 + t.sum());
            assert_eq!(g.max_face_size(), 2 + t.b + t.c);
            assert!(is_facially_complete(&g), "k23 {t:?}");
            assert_eq!(classify(&g).unwrap(), CatalogClass::Type3(t));
        }
    }

    #[test]
    fn floors_enforced() {
        assert!(matches!(
            gen_subdivided(SubdividedBase::Tetrahedron, triple(0, 1, 1)),
            Err(CatalogError::FloorViolation { .. })
        ));
        assert!(matches!(
            gen_subdivided(SubdividedBase::K23, triple(1, 2, 2)),
            Err(CatalogError::FloorViolation { .. })
        ));
        assert!(gen_subdivided(SubdividedBase::Prism, triple(0, 0, 0)).is_ok());
    }

    #[test]
    fn type4_generation_and_rejection() {
        let k4 = gen_type4(3, &[0, 1, 2]).unwrap();
        assert_eq!(k4.vertex_count(), 4);
        assert_eq!(k4.max_face_size(), 3);
        assert!(is_facially_complete(&k4));

        let g = gen_type4(4, &[0, 2]).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.max_face_size(), 4);
        assert!(is_facially_complete(&g));

        assert!(matches!(
            gen_type4(4, &[0, 1]),
            Err(CatalogError::OuterplanarResult { .. })
        ));
        assert!(matches!(
            gen_type4(5, &[2]),
            Err(CatalogError::OuterplanarResult { .. })
        ));
        assert!(matches!(
            gen_type4(5, &[0, 4]),
            Err(CatalogError::OuterplanarResult { .. })
        ));
        assert!(matches!(
            gen_type4(3, &[0, 1]),
            Err(CatalogError::OuterplanarResult { .. })
        ));
    }

    #[test]
    fn type5_generation_and_chord_errors() {
        let c4 = gen_type5(4, &[]).unwrap();
        assert_eq!(c4.max_face_size(), 4);
        assert!(is_facially_complete(&c4));

        let tri_hex = gen_type5(6, &[(0, 2), (2, 4), (4, 0)]).unwrap();
        assert_eq!(tri_hex.max_face_size(), 6);
        assert!(is_facially_complete(&tri_hex));
        assert!(crate::embed::is_outerplanar_embedding(&tri_hex));

        assert!(matches!(
            gen_type5(5, &[(0, 2), (1, 3)]),
            Err(CatalogError::CrossingDiagonals(..))
        ));
        assert!(matches!(
            gen_type5(5, &[(0, 2), (2, 0)]),
            Err(CatalogError::DuplicateChord(..))
        ));
        assert!(matches!(
            gen_type5(5, &[(0, 1)]),
            Err(CatalogError::InvalidChord { .. })
        ));
        assert!(matches!(
            gen_type5(5, &[(0, 7)]),
            Err(CatalogError::InvalidChord { .. })
        ));

        assert_eq!(gen_type5(1, &[]).unwrap().vertex_count(), 1);
        assert_eq!(gen_type5(2, &[]).unwrap().edge_count(), 1);
    }

    #[test]
    fn outerplanar_specs() {
        // bowtie: two triangles glued at a cut vertex
        let bowtie = ComponentSpec::Blocks(vec![
            BlockSpec::Polygon {
                cycle: vec![0, 1, 2],
                chords: vec![],
            },
            BlockSpec::Polygon {
                cycle: vec![2, 3, 4],
                chords: vec![],
            },
        ]);
        let g = gen_outerplanar(std::slice::from_ref(&bowtie)).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert!(is_facially_complete(&g));
        assert_eq!(classify(&g).unwrap(), CatalogClass::Type6(bowtie));

        // K1
        let k1 = gen_outerplanar(&[ComponentSpec::Single]).unwrap();
        assert_eq!(
            classify(&k1).unwrap(),
            CatalogClass::Type6(ComponentSpec::Single)
        );

        // two disjoint triangles: type 7
        let two_tri = vec![
            ComponentSpec::Cycle {
                size: 3,
                diagonals: vec![],
            },
            ComponentSpec::Cycle {
                size: 3,
                diagonals: vec![],
            },
        ];
        let g = gen_outerplanar(&two_tri).unwrap();
        assert!(is_facially_complete(&g));
        assert_eq!(classify(&g).unwrap(), CatalogClass::Type7(two_tri));

        // invalid specs
        assert!(gen_outerplanar(&[ComponentSpec::Cycle {
            size: 4,
            diagonals: vec![]
        }])
        .is_err());
        assert!(gen_outerplanar(&[ComponentSpec::Blocks(vec![BlockSpec::Polygon {
            cycle: vec![0, 1, 2, 3],
            chords: vec![]
        }])])
        .is_err());
        // two blocks sharing two vertices
        assert!(gen_outerplanar(&[ComponentSpec::Blocks(vec![
            BlockSpec::Polygon {
                cycle: vec![0, 1, 2],
                chords: vec![]
            },
            BlockSpec::Polygon {
                cycle: vec![1, 2, 3],
                chords: vec![]
            },
        ])])
        .is_err());
        // disconnected block list
        assert!(gen_outerplanar(&[ComponentSpec::Blocks(vec![
            BlockSpec::Edge(0, 1),
            BlockSpec::Edge(2, 3),
        ])])
        .is_err());
    }

    #[test]
    fn classify_basics() {
        let k3 = gen_type5(3, &[]).unwrap();
        assert_eq!(
            classify(&k3).unwrap(),
            CatalogClass::Type5 {
                cycle: 3,
                diagonals: vec![]
            }
        );

        let k4 = gen_type4(3, &[0, 1, 2]).unwrap();
        assert_eq!(
            classify(&k4).unwrap(),
            CatalogClass::Type4 {
                rim: 3,
                radii: vec![0, 1, 2]
            }
        );

        // path P3: outerplanar, one cut vertex
        let p3 = build_plane_graph(vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        assert_eq!(
            classify(&p3).unwrap(),
            CatalogClass::Type6(ComponentSpec::Blocks(vec![
                BlockSpec::Edge(0, 1),
                BlockSpec::Edge(1, 2),
            ]))
        );

        // cube is not FC
        let cube = crate::embed::embed_abstract(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
            ],
        )
        .unwrap();
        assert_eq!(classify(&cube), Err(CatalogError::NotFaciallyComplete));
    }

    #[test]
    fn theta_with_short_path_is_a_wheel() {
        // poles 0,1; paths through 2 | 3 | 4,5 — subdivider counts (1,1,2)
        let g = crate::embed::embed_abstract(
            6,
            &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 5), (5, 1)],
        )
        .unwrap();
        assert!(is_facially_complete(&g));
        let class = classify(&g).unwrap();
        match class {
            CatalogClass::Type4 { rim, radii } => {
                assert_eq!(rim, 5);
                assert_eq!(radii, canon_subset(5, &[0, 2]));
            }
            other => panic!("expected type 4, got {other:?}"),
        }
    }

    #[test]
    fn k23_is_a_wheel_not_type3() {
        let g = gen_subdivided(SubdividedBase::K23, triple(2, 2, 2)).unwrap();
        assert_eq!(classify(&g).unwrap(), CatalogClass::Type3(triple(2, 2, 2)));

        // the unsubdivided K_{2,3} digresses to type 4 (rim 4, opposite radii)
        let k23 = crate::embed::embed_abstract(
            5,
            &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
        )
        .unwrap();
        assert_eq!(
            classify(&k23).unwrap(),
            CatalogClass::Type4 {
                rim: 4,
                radii: canon_subset(4, &[0, 2])
            }
        );
    }

    #[test]
    fn full_wheels_classify_type4_all_radii() {
        for m in 3..8 {
            let all: Vec<usize> = (0..m).collect();
            let g = gen_type4(m, &all).unwrap();
            assert_eq!(
                classify(&g).unwrap(),
                CatalogClass::Type4 {
                    rim: m,
                    radii: all
                },
                "wheel rim {m}"
            );
        }
    }

    #[test]
    fn type5_round_trip_with_canonical_diagonals() {
        let cases: Vec<(usize, Vec<(usize, usize)>)> = vec![
            (5, vec![(1, 3)]),
            (6, vec![(1, 3), (3, 5)]),
            (7, vec![(0, 2), (2, 4), (4, 6)]),
            (8, vec![(0, 4)]),
        ];
        for (m, diags) in cases {
            let g = gen_type5(m, &diags).unwrap();
            let got = classify(&g).unwrap();
            assert_eq!(
                got,
                CatalogClass::Type5 {
                    cycle: m,
                    diagonals: canon_chords(m, &diags)
                }
            );
        }
    }

    #[test]
    fn generate_dispatch_round_trip() {
        let classes = vec![
            CatalogClass::Type1(triple(0, 1, 1)),
            CatalogClass::Type2(triple(1, 1, 2)),
            CatalogClass::Type3(triple(2, 2, 3)),
            CatalogClass::Type4 {
                rim: 6,
                radii: canon_subset(6, &[0, 2, 4]),
            },
            CatalogClass::Type5 {
                cycle: 6,
                diagonals: canon_chords(6, &[(0, 2)]),
            },
            CatalogClass::Type6(ComponentSpec::Blocks(vec![
                BlockSpec::Polygon {
                    cycle: vec![0, 1, 2, 3],
                    chords: vec![(0, 2)],
                },
                BlockSpec::Edge(3, 4),
            ])),
            CatalogClass::Type7(vec![
                ComponentSpec::Single,
                ComponentSpec::Cycle {
                    size: 4,
                    diagonals: vec![],
                },
            ]),
        ];
        for class in classes {
            let g = generate(&class).unwrap();
            assert!(is_facially_complete(&g), "{class:?}");
            let back = classify(&g).unwrap();
            assert_eq!(back, class, "round trip");
            // the regenerated graph is the same embedding
            let g2 = generate(&back).unwrap();
            assert_eq!(
                crate::embed::canonical_code(&g2),
                crate::embed::canonical_code(&g)
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let classes = vec![
            CatalogClass::Type1(triple(1, 2, 3)),
            CatalogClass::Type4 {
                rim: 5,
                radii: vec![0, 2],
            },
            CatalogClass::Type5 {
                cycle: 7,
                diagonals: vec![(0, 2), (2, 4)],
            },
            CatalogClass::Type6(ComponentSpec::Blocks(vec![
                BlockSpec::Edge(0, 1),
                BlockSpec::Polygon {
                    cycle: vec![1, 2, 3],
                    chords: vec![],
                },
            ])),
            CatalogClass::Type7(vec![
                ComponentSpec::Single,
                ComponentSpec::Cycle {
                    size: 5,
                    diagonals: vec![(0, 2)],
                },
            ]),
        ];
        for class in classes {
            let json = serde_json::to_string(&class).unwrap();
            let back: CatalogClass = serde_json::from_str(&json).unwrap();
            assert_eq!(back, class);
        }
        let v: serde_json::Value =
            serde_json::to_value(CatalogClass::Type1(triple(1, 2, 3))).unwrap();
        assert_eq!(v["type"], 1);
        assert_eq!(v["params"]["subdividers"], serde_json::json!([1, 2, 3]));
    }

    #[test]
    fn extremal_tags() {
        let cases = [
            (CatalogClass::Type1(triple(1, 1, 1)), Some(ExtremalTag::PrismAaa)),
            (CatalogClass::Type1(triple(2, 2, 3)), Some(ExtremalTag::PrismAaa1)),
            (CatalogClass::Type1(triple(1, 2, 3)), None),
            (CatalogClass::Type2(triple(4, 4, 4)), Some(ExtremalTag::TetraAaa)),
            (CatalogClass::Type2(triple(1, 1, 2)), None),
            (
                CatalogClass::Type4 {
                    rim: 3,
                    radii: vec![0, 1, 2],
                },
                Some(ExtremalTag::K4),
            ),
            (
                CatalogClass::Type4 {
                    rim: 4,
                    radii: vec![0, 2],
                },
                None,
            ),
        ];
        for (class, want) in cases {
            assert_eq!(extremal_tag(&class), want, "{class:?}");
        }

        // extremal instances meet the bound with equality
        let g = gen_subdivided(SubdividedBase::Prism, triple(1, 1, 1)).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(w_bound(g.max_face_size()), 9);
        assert_eq!(is_extremal(&g).unwrap(), Some(ExtremalTag::PrismAaa));

        let g = gen_subdivided(SubdividedBase::Tetrahedron, triple(4, 4, 4)).unwrap();
        assert_eq!(g.vertex_count(), 16);
        assert_eq!(w_bound(g.max_face_size()), 16);
        assert_eq!(is_extremal(&g).unwrap(), Some(ExtremalTag::TetraAaa));

        let c5 = gen_type5(5, &[]).unwrap();
        assert_eq!(is_extremal(&c5).unwrap(), None);
    }

    #[test]
    fn interior_path_on_cube_and_prism() {
        let cube = crate::embed::embed_abstract(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
            ],
        )
        .unwrap();
        for fi in 0..cube.faces().len() {
            let p = find_interior_path(&cube, fi).unwrap();
            assert!(!p.interior.is_empty());
            check_interior_path(&cube, fi, &p);
        }

        let prism = gen_subdivided(SubdividedBase::Prism, triple(1, 1, 1)).unwrap();
        let q = prism.max_face_size();
        for (fi, f) in prism.faces().iter().enumerate() {
            if f.size() == q {
                let p = find_interior_path(&prism, fi).unwrap();
                assert!(!p.interior.is_empty());
                check_interior_path(&prism, fi, &p);
            }
        }
    }

    fn check_interior_path(g: &PlaneGraph, fi: usize, p: &InteriorPath) {
        let face = &g.faces()[fi];
        assert!(face.contains(p.alpha0) && face.contains(p.alpha1));
        for &v in &p.interior {
            assert!(!face.contains(v), "interior vertex {v} is on the face");
        }
        let walk = g.walks()[face.walk_indices()[0]].vertices();
        let q = walk.len();
        let pos = |v: usize| walk.iter().position(|&x| x == v).unwrap();
        let d = pos(p.alpha0).abs_diff(pos(p.alpha1));
        assert!(d != 1 && d != q - 1, "endpoints consecutive on the face");
        let mut full = vec![p.alpha0];
        full.extend(&p.interior);
        full.push(p.alpha1);
        for w in full.windows(2) {
            assert!(g.has_edge(w[0], w[1]), "path edge {w:?} missing");
        }
    }

    #[test]
    fn interior_path_falls_back_to_chords() {
        // Every interior component of every maximum face attaches to a
        // consecutive pair here, so only chords qualify as paths: the two
        // interior vertices hang on triangles off chords of each 4-face.
        let g = build_plane_graph(vec![
            vec![2, 3, 1, 4],
            vec![2, 0, 5, 3],
            vec![0, 4, 1],
            vec![0, 1, 5],
            vec![0, 2],
            vec![1, 3],
        ])
        .unwrap();
        assert_eq!(g.max_face_size(), 4);
        let mut checked = 0;
        for (fi, f) in g.faces().iter().enumerate() {
            if f.size() == 4 {
                let p = find_interior_path(&g, fi).unwrap();
                assert!(p.interior.is_empty(), "face {fi} has no interior path");
                check_interior_path(&g, fi, &p);
                checked += 1;
            }
        }
        assert_eq!(checked, 3);
    }

    #[test]
    fn interior_path_preconditions() {
        let c5 = gen_type5(5, &[]).unwrap();
        assert!(matches!(
            find_interior_path(&c5, 0),
            Err(CatalogError::PreconditionViolated(_))
        ));
        let p3 = build_plane_graph(vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        assert!(matches!(
            find_interior_path(&p3, 0),
            Err(CatalogError::PreconditionViolated(_))
        ));
        // octahedron: q = 3, every face fails the q >= 4 clause
        let octa = crate::embed::embed_abstract(
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 1),
                (5, 1),
                (5, 2),
                (5, 3),
                (5, 4),
            ],
        )
        .unwrap();
        assert!(matches!(
            find_interior_path(&octa, 0),
            Err(CatalogError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn exclusivity_over_generated_instances() {
        let mut graphs: Vec<PlaneGraph> = Vec::new();
        for (a, b, c) in [(0, 0, 0), (1, 2, 3)] {
            graphs.push(gen_subdivided(SubdividedBase::Prism, triple(a, b, c)).unwrap());
        }
        for (a, b, c) in [(1, 1, 1), (2, 3, 4)] {
            graphs.push(gen_subdivided(SubdividedBase::Tetrahedron, triple(a, b, c)).unwrap());
        }
        for (a, b, c) in [(2, 2, 2), (2, 4, 5)] {
            graphs.push(gen_subdivided(SubdividedBase::K23, triple(a, b, c)).unwrap());
        }
        graphs.push(gen_type4(3, &[0, 1, 2]).unwrap());
        graphs.push(gen_type4(6, &[0, 2, 4]).unwrap());
        graphs.push(gen_type5(7, &[(0, 3)]).unwrap());
        graphs.push(gen_outerplanar(&[ComponentSpec::Blocks(vec![
            BlockSpec::Polygon {
                cycle: vec![0, 1, 2],
                chords: vec![],
            },
            BlockSpec::Edge(2, 3),
        ])])
        .unwrap());
        graphs.push(
            gen_outerplanar(&[
                ComponentSpec::Single,
                ComponentSpec::Cycle {
                    size: 5,
                    diagonals: vec![(0, 2)],
                },
            ])
            .unwrap(),
        );
        for g in &graphs {
            let mut hits = 0;
            hits += usize::from(match_type1(g).is_some());
            hits += usize::from(match_type2(g).is_some());
            hits += usize::from(match_type3(g).is_some());
            hits += usize::from(match_type4(g).is_some());
            hits += usize::from(match_type5(g).is_some());
            hits += usize::from(match_type6(g).is_some());
            hits += usize::from(match_type7(g).is_some());
            assert_eq!(hits, 1, "n={} e={}", g.vertex_count(), g.edge_count());
        }
    }

    #[test]
    fn fc_bound_over_samples() {
        let mut graphs: Vec<PlaneGraph> = Vec::new();
        for s in 0..5 {
            graphs.push(gen_subdivided(SubdividedBase::Prism, triple(s, s, s + 1)).unwrap());
            graphs.push(gen_subdivided(SubdividedBase::Tetrahedron, triple(s + 1, s + 1, s + 2)).unwrap());
            graphs.push(gen_subdivided(SubdividedBase::K23, triple(s + 2, s + 2, s + 3)).unwrap());
        }
        for g in &graphs {
            let rep = facial_closure(g);
            assert!(rep.complete);
            assert!(g.vertex_count() <= rep.w);
        }
    }
}
