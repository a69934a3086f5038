//! Exact chromatic numbers at desk scale, cyclic chromatic numbers via the
//! facial closure, and the constructive five-coloring for plane graphs with
//! at most two quadrilateral faces.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::CatalogClass;
use crate::closure::facial_closure;
use crate::embed::{build_plane_graph, is_planar, PlaneGraph};

/// Largest instance the exact solver accepts (dense closures stay cheap).
pub const COLOR_MAX_N: usize = 30;

#[derive(Debug, Error)]
pub enum ColorError {
    #[error("coloring instance too large: {0}")]
    ScaleLimit(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    /// The quad construction failed to produce a proper 5-coloring. This
    /// must never fire; if it does, the offending instance is attached.
    #[error("five-coloring construction failed: {0}")]
    ProofGap(String),
}

/// A proper coloring witness. Colors are contiguous integers from 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexColoring {
    pub assignment: Vec<usize>,
    pub color_count: usize,
}

impl VertexColoring {
    /// Remap raw solver colors to 1..=k in order of first appearance.
    fn from_raw(raw: &[usize]) -> Self {
        let mut map: Vec<Option<usize>> = vec![None; raw.len() + 8];
        let mut next = 0;
        let assignment = raw
            .iter()
            .map(|&c| {
                *map[c].get_or_insert_with(|| {
                    next += 1;
                    next
                })
            })
            .collect();
        VertexColoring {
            assignment,
            color_count: next,
        }
    }

    /// No edge of the target set is monochromatic.
    pub fn is_proper(&self, edges: &[(usize, usize)]) -> bool {
        edges
            .iter()
            .all(|&(u, v)| self.assignment[u] != self.assignment[v])
    }
}

/// Bitmask-adjacency exact solver: clique lower bound, DSATUR upper bound,
/// then k-colorability search with a fresh-color symmetry rule.
struct Solver {
    n: usize,
    adj: Vec<u64>,
}

impl Solver {
    fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Solver { n, adj }
    }

    fn greedy_clique(&self) -> usize {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| usize::MAX - self.adj[v].count_ones() as usize);
        let mut best = 0;
        for &start in &order {
            let mut clique = 1u64 << start;
            for &v in &order {
                if clique & (1 << v) == 0 && clique & self.adj[v] == clique {
                    clique |= 1 << v;
                }
            }
            best = best.max(clique.count_ones() as usize);
        }
        best
    }

    fn dsatur(&self) -> Vec<usize> {
        let mut color = vec![usize::MAX; self.n];
        let mut neighbor_colors: Vec<u64> = vec![0; self.n];
        for _ in 0..self.n {
            let v = (0..self.n)
                .filter(|&v| color[v] == usize::MAX)
                .max_by_key(|&v| {
                    (
                        neighbor_colors[v].count_ones(),
                        self.adj[v].count_ones(),
                        usize::MAX - v,
                    )
                })
                .unwrap();
            let c = (0..).find(|&c| neighbor_colors[v] & (1 << c) == 0).unwrap();
            color[v] = c;
            let mut nb = self.adj[v];
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                neighbor_colors[u] |= 1 << c;
            }
        }
        color
    }

    fn k_colorable(&self, k: usize) -> Option<Vec<usize>> {
        let mut color = vec![usize::MAX; self.n];
        let mut neighbor_colors: Vec<u64> = vec![0; self.n];
        if self.rec(k, 0, &mut color, &mut neighbor_colors) {
            Some(color)
        } else {
            None
        }
    }

    fn rec(&self, k: usize, max_used: usize, color: &mut [usize], nc: &mut [u64]) -> bool {
        let next = (0..self.n).filter(|&v| color[v] == usize::MAX).max_by_key(|&v| {
            (
                nc[v].count_ones(),
                self.adj[v].count_ones(),
                usize::MAX - v,
            )
        });
        let Some(v) = next else { return true };
        // a fresh color may only be the single next unused one
        let limit = k.min(max_used + 1);
        for c in 0..limit {
            if nc[v] & (1 << c) != 0 {
                continue;
            }
            color[v] = c;
            let mut touched = 0u64;
            let mut nb = self.adj[v];
            while nb != 0 {
                let u = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if nc[u] & (1 << c) == 0 {
                    nc[u] |= 1 << c;
                    touched |= 1 << u;
                }
            }
            if self.rec(k, max_used.max(c + 1), color, nc) {
                return true;
            }
            color[v] = usize::MAX;
            let mut tb = touched;
            while tb != 0 {
                let u = tb.trailing_zeros() as usize;
                tb &= tb - 1;
                nc[u] &= !(1 << c);
            }
        }
        false
    }
}

fn validate_edges(n: usize, edges: &[(usize, usize)]) -> Result<Vec<(usize, usize)>, ColorError> {
    let mut set = BTreeSet::new();
    for &(u, v) in edges {
        if u == v || u >= n || v >= n {
            return Err(ColorError::PreconditionViolated(format!(
                "edge ({u}, {v}) is not a simple edge on {n} vertices"
            )));
        }
        set.insert((u.min(v), u.max(v)));
    }
    Ok(set.into_iter().collect())
}

/// Exact chromatic number with an independently verified witness.
pub fn chromatic_number_exact(
    n: usize,
    edges: &[(usize, usize)],
) -> Result<(usize, VertexColoring), ColorError> {
    if n > COLOR_MAX_N {
        return Err(ColorError::ScaleLimit(format!(
            "exact coloring supports n <= {COLOR_MAX_N}, got {n}"
        )));
    }
    let edges = validate_edges(n, edges)?;
    if n == 0 {
        return Ok((
            0,
            VertexColoring {
                assignment: Vec::new(),
                color_count: 0,
            },
        ));
    }
    let solver = Solver::new(n, &edges);
    let upper_raw = solver.dsatur();
    let upper = upper_raw.iter().max().unwrap() + 1;
    let lower = solver.greedy_clique().max(1);
    let mut best = VertexColoring::from_raw(&upper_raw);
    let mut chi = upper;
    for k in lower..upper {
        if let Some(raw) = solver.k_colorable(k) {
            best = VertexColoring::from_raw(&raw);
            chi = k;
            break;
        }
    }
    assert!(best.is_proper(&edges), "witness coloring must be proper");
    assert_eq!(best.color_count, chi);
    Ok((chi, best))
}

/// Chromatic number of the facial closure (the cyclic chromatic number).
pub fn cyclic_chromatic(g: &PlaneGraph) -> Result<(usize, VertexColoring), ColorError> {
    let rep = facial_closure(g);
    chromatic_number_exact(rep.n, &rep.closure_edges)
}

/// Is the facial closure's edge set planar?
pub fn closure_is_planar(g: &PlaneGraph) -> bool {
    let rep = facial_closure(g);
    is_planar(rep.n, &rep.closure_edges).expect("closure edges are simple and in range")
}

fn pairs_of(vs: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            out.push((u.min(v), u.max(v)));
        }
    }
    out
}

/// Proper closure coloring with at most five colors for a plane graph with
/// q <= 4 and at most two quadrilateral faces.
///
/// Strategy: faces on at most three vertices force their pairs outright and
/// keep the augmented graph planar. Each quad contributes a chosen subset of
/// its missing pairs; whatever is left out must share a vertex, which can be
/// pushed to color 5 after the planar 4-coloring. All subset/recolor choices
/// are enumerated deterministically and the first verified coloring wins.
pub fn color_quad5(g: &PlaneGraph) -> Result<VertexColoring, ColorError> {
    let n = g.vertex_count();
    if n > COLOR_MAX_N {
        return Err(ColorError::ScaleLimit(format!(
            "quad coloring supports n <= {COLOR_MAX_N}, got {n}"
        )));
    }
    let rep = facial_closure(g);
    if rep.q > 4 {
        return Err(ColorError::PreconditionViolated(format!(
            "largest face has {} distinct vertices, need q <= 4",
            rep.q
        )));
    }
    let quads: Vec<&crate::embed::Face> =
        g.faces().iter().filter(|f| f.size() == 4).collect();
    if quads.len() > 2 {
        return Err(ColorError::PreconditionViolated(format!(
            "{} quadrilateral faces, need at most two",
            quads.len()
        )));
    }

    // pairs forced by small faces are always planar to add (an inscribed
    // triangle inside the face never crosses itself)
    let mut base: BTreeSet<(usize, usize)> = g.edges().into_iter().collect();
    for face in g.faces() {
        if face.size() <= 3 {
            base.extend(pairs_of(face.vertices()));
        }
    }

    // per quad: missing pairs, and every (added subset, recolor target) choice
    type QuadChoice = (Vec<(usize, usize)>, Vec<(usize, usize)>, Option<usize>);
    let missing: Vec<Vec<(usize, usize)>> = quads
        .iter()
        .map(|f| {
            pairs_of(f.vertices())
                .into_iter()
                .filter(|p| !base.contains(p))
                .collect()
        })
        .collect();
    let mut options: Vec<Vec<QuadChoice>> = Vec::new();
    for m in &missing {
        let mut opts = Vec::new();
        let mut masks: Vec<usize> = (0..1usize << m.len()).collect();
        masks.sort_by_key(|&s| (m.len() - s.count_ones() as usize, s));
        for mask in masks {
            let added: Vec<(usize, usize)> = m
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let deferred: Vec<(usize, usize)> = m
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 0)
                .map(|(_, &p)| p)
                .collect();
            if deferred.is_empty() {
                opts.push((added, deferred, None));
                continue;
            }
            // deferred pairs must share the vertex that may take color 5
            let (a0, b0) = deferred[0];
            for x in [a0, b0] {
                if deferred.iter().all(|&(a, b)| a == x || b == x) {
                    opts.push((added.clone(), deferred.clone(), Some(x)));
                }
            }
        }
        options.push(opts);
    }

    let base_edges: Vec<(usize, usize)> = base.iter().copied().collect();
    let combos: Vec<Vec<usize>> = match options.len() {
        0 => vec![Vec::new()],
        1 => (0..options[0].len()).map(|i| vec![i]).collect(),
        _ => {
            let mut cs = Vec::new();
            for i in 0..options[0].len() {
                for j in 0..options[1].len() {
                    cs.push(vec![i, j]);
                }
            }
            cs
        }
    };

    for combo in combos {
        let mut plus = base_edges.clone();
        for (qi, &oi) in combo.iter().enumerate() {
            plus.extend(options[qi][oi].0.iter().copied());
        }
        plus.sort_unstable();
        plus.dedup();
        if !matches!(is_planar(n, &plus), Ok(true)) {
            continue;
        }
        let solver = Solver::new(n, &plus);
        let Some(mut raw) = solver.k_colorable(4) else {
            continue;
        };
        for (qi, &oi) in combo.iter().enumerate() {
            let (_, deferred, target) = &options[qi][oi];
            if let Some(x) = target {
                if deferred.iter().any(|&(a, b)| raw[a] == raw[b]) {
                    raw[*x] = 4;
                }
            }
        }
        let witness = VertexColoring::from_raw(&raw);
        if witness.color_count <= 5 && witness.is_proper(&rep.closure_edges) {
            return Ok(witness);
        }
    }
    Err(ColorError::ProofGap(format!(
        "no diagonal/recolor choice yielded a proper 5-coloring; rotations = {:?}",
        g.rotations()
    )))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChromaticCheck {
    /// K4 and full wheels on an even vertex count need four colors;
    /// everything else in the catalog needs at most three.
    pub expected_four: bool,
    pub actual: usize,
    pub ok: bool,
}

pub fn catalog_chromatic_check(
    c: &CatalogClass,
    g: &PlaneGraph,
) -> Result<ChromaticCheck, ColorError> {
    let expected_four = matches!(
        c,
        CatalogClass::Type4 { rim, radii } if radii.len() == *rim && (*rim + 1) % 2 == 0
    );
    let (actual, _) = chromatic_number_exact(g.vertex_count(), &g.edges())?;
    let ok = if expected_four {
        actual == 4
    } else {
        actual <= 3
    };
    Ok(ChromaticCheck {
        expected_four,
        actual,
        ok,
    })
}

/// Random plane graph with all faces triangles except `quads` quadrilaterals
/// (0, 1, or 2): grow a random stacked triangulation from K4, then delete
/// edges whose two incident faces are still distinct triangles.
pub fn random_quad_instance(seed: u64, n: usize, quads: usize) -> PlaneGraph {
    assert!((4..=16).contains(&n), "instance size must be in 4..=16");
    assert!(quads <= 2, "at most two quads");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rot: Vec<Vec<usize>> = vec![
        vec![1, 2, 3],
        vec![0, 3, 2],
        vec![0, 1, 3],
        vec![0, 2, 1],
    ];
    let mut g = build_plane_graph(rot.clone()).expect("K4 system is valid");
    while g.vertex_count() < n {
        let fi = rng.gen_range(0..g.faces().len());
        let wi = g.faces()[fi].walk_indices()[0];
        let w: Vec<usize> = g.walks()[wi].vertices().to_vec();
        let v = rot.len();
        rot.push(w.clone());
        for i in 0..3 {
            let at = w[i];
            let before = w[(i + 2) % 3];
            let pos = rot[at].iter().position(|&x| x == before).unwrap();
            rot[at].insert(pos, v);
        }
        g = build_plane_graph(rot.clone()).expect("face split keeps the sphere");
        debug_assert!(g.faces().iter().all(|f| f.size() == 3));
    }
    for _ in 0..quads {
        // edge -> incident face indices
        let mut candidates = Vec::new();
        for (u, v) in g.edges() {
            let touching: Vec<&crate::embed::Face> = g
                .faces()
                .iter()
                .filter(|f| {
                    f.walk_indices().iter().any(|&wi| {
                        g.walks()[wi]
                            .darts()
                            .iter()
                            .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
                    })
                })
                .collect();
            if touching.len() == 2
                && touching.iter().all(|f| f.size() == 3)
                && touching[0].vertices() != touching[1].vertices()
            {
                candidates.push((u, v));
            }
        }
        let (u, v) = candidates[rng.gen_range(0..candidates.len())];
        rot[u].retain(|&x| x != v);
        rot[v].retain(|&x| x != u);
        g = build_plane_graph(rot.clone()).expect("face merge keeps the sphere");
    }
    debug_assert_eq!(g.faces().iter().filter(|f| f.size() == 4).count(), quads);
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{gen_subdivided, gen_type4, gen_type5, SubdividedBase, SubdividerTriple};
    use crate::closure::{is_facially_complete, w_bound};
    use crate::embed::embed_abstract;

    fn complete_edges(n: usize) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        e
    }

    fn icosahedron() -> PlaneGraph {
        let mut edges = Vec::new();
        for i in 1..=5 {
            edges.push((0, i));
            edges.push((11, 5 + i));
            edges.push((i, 1 + i % 5));
            edges.push((5 + i, 6 + i % 5));
            edges.push((i, 5 + i));
            edges.push((i, 6 + i % 5));
        }
        let g = embed_abstract(12, &edges).unwrap();
        assert_eq!(g.edge_count(), 30);
        assert!(g.faces().iter().all(|f| f.size() == 3));
        g
    }

    #[test]
    fn chromatic_small_cases() {
        assert_eq!(chromatic_number_exact(4, &complete_edges(4)).unwrap().0, 4);
        assert_eq!(chromatic_number_exact(8, &complete_edges(8)).unwrap().0, 8);
        let c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
        assert_eq!(chromatic_number_exact(5, &c5).unwrap().0, 3);
        let c6 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)];
        assert_eq!(chromatic_number_exact(6, &c6).unwrap().0, 2);
        let k33 = [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)];
        assert_eq!(chromatic_number_exact(6, &k33).unwrap().0, 2);
        assert_eq!(chromatic_number_exact(5, &[]).unwrap().0, 1);
        assert_eq!(chromatic_number_exact(0, &[]).unwrap().0, 0);
    }

    #[test]
    fn witness_is_proper_and_contiguous() {
        let edges = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)];
        let (chi, w) = chromatic_number_exact(5, &edges).unwrap();
        assert_eq!(chi, 3);
        assert!(w.is_proper(&edges));
        let mut seen: Vec<usize> = w.assignment.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen, (1..=w.color_count).collect::<Vec<_>>());
    }

    #[test]
    fn scale_limit_and_bad_edges() {
        assert!(matches!(
            chromatic_number_exact(31, &[]),
            Err(ColorError::ScaleLimit(_))
        ));
        assert!(matches!(
            chromatic_number_exact(3, &[(0, 0)]),
            Err(ColorError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn cyclic_chromatic_known_values() {
        let prism = gen_subdivided(SubdividedBase::Prism, SubdividerTriple::new(0, 0, 0)).unwrap();
        assert_eq!(cyclic_chromatic(&prism).unwrap().0, 6);
        let c4 = gen_type5(4, &[]).unwrap();
        assert_eq!(cyclic_chromatic(&c4).unwrap().0, 4);
        let ico = icosahedron();
        assert_eq!(cyclic_chromatic(&ico).unwrap().0, 4);
    }

    #[test]
    fn subdivided_prism_closure_is_k9() {
        let g = gen_subdivided(SubdividedBase::Prism, SubdividerTriple::new(1, 1, 1)).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.vertex_count(), w_bound(6));
        assert!(is_facially_complete(&g));
        assert_eq!(cyclic_chromatic(&g).unwrap().0, 9);
    }

    #[test]
    fn quad5_icosahedron_uses_four() {
        let w = color_quad5(&icosahedron()).unwrap();
        assert_eq!(w.color_count, 4);
    }

    #[test]
    fn quad5_wheel_needs_exactly_five() {
        let wheel5 = gen_type4(4, &[0, 1, 2, 3]).unwrap();
        let rep = facial_closure(&wheel5);
        assert!(rep.complete); // closure is K5
        let w = color_quad5(&wheel5).unwrap();
        assert_eq!(w.color_count, 5);
        assert!(w.is_proper(&rep.closure_edges));
    }

    #[test]
    fn quad5_rejects_cube_and_prism_and_big_faces() {
        let cube = embed_abstract(
            8,
            &[
                (0, 1), (1, 2), (2, 3), (3, 0),
                (4, 5), (5, 6), (6, 7), (7, 4),
                (0, 4), (1, 5), (2, 6), (3, 7),
            ],
        )
        .unwrap();
        assert!(matches!(
            color_quad5(&cube),
            Err(ColorError::PreconditionViolated(_))
        ));
        let prism = gen_subdivided(SubdividedBase::Prism, SubdividerTriple::new(0, 0, 0)).unwrap();
        assert!(matches!(
            color_quad5(&prism),
            Err(ColorError::PreconditionViolated(_))
        ));
        let c5 = gen_type5(5, &[]).unwrap();
        assert!(matches!(
            color_quad5(&c5),
            Err(ColorError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn quad5_random_sweep_small() {
        for seed in 0..40 {
            for quads in 0..=2 {
                let g = random_quad_instance(seed, 4 + (seed as usize % 7), quads);
                assert_eq!(
                    g.faces().iter().filter(|f| f.size() == 4).count(),
                    quads,
                    "seed {seed} quads {quads}"
                );
                let rep = facial_closure(&g);
                assert!(rep.q <= 4);
                let w = color_quad5(&g).unwrap();
                assert!(w.color_count <= 5, "seed {seed} quads {quads}");
                assert!(w.is_proper(&rep.closure_edges), "seed {seed} quads {quads}");
                // the proved q = 4 bound
                assert!(cyclic_chromatic(&g).unwrap().0 <= 6);
            }
        }
    }

    #[test]
    fn random_instances_are_deterministic() {
        let a = random_quad_instance(7, 12, 2);
        let b = random_quad_instance(7, 12, 2);
        assert_eq!(a.rotations(), b.rotations());
        let c = random_quad_instance(8, 12, 2);
        assert!(a.rotations() != c.rotations() || a.edges() != c.edges());
    }

    #[test]
    fn chromatic_check_catalog_rules() {
        let k4 = gen_type4(3, &[0, 1, 2]).unwrap();
        let chk = catalog_chromatic_check(
            &CatalogClass::Type4 { rim: 3, radii: vec![0, 1, 2] },
            &k4,
        )
        .unwrap();
        assert!(chk.expected_four && chk.actual == 4 && chk.ok);

        // full wheel on six vertices: rim C5 plus hub
        let w6 = gen_type4(5, &[0, 1, 2, 3, 4]).unwrap();
        let chk = catalog_chromatic_check(
            &CatalogClass::Type4 { rim: 5, radii: vec![0, 1, 2, 3, 4] },
            &w6,
        )
        .unwrap();
        assert!(chk.expected_four && chk.actual == 4 && chk.ok);

        // odd vertex count full wheel is 3-chromatic
        let w5 = gen_type4(4, &[0, 1, 2, 3]).unwrap();
        let chk = catalog_chromatic_check(
            &CatalogClass::Type4 { rim: 4, radii: vec![0, 1, 2, 3] },
            &w5,
        )
        .unwrap();
        assert!(!chk.expected_four && chk.actual == 3 && chk.ok);

        // triangulated polygon: three colors suffice
        let tri = gen_type5(6, &[(0, 2), (2, 4), (0, 4)]).unwrap();
        let chk = catalog_chromatic_check(
            &CatalogClass::Type5 { cycle: 6, diagonals: vec![(0, 2), (0, 4), (2, 4)] },
            &tri,
        )
        .unwrap();
        assert!(!chk.expected_four && chk.actual == 3 && chk.ok);
    }

    #[test]
    fn closure_planarity() {
        let c4 = gen_type5(4, &[]).unwrap();
        assert!(closure_is_planar(&c4)); // closure is K4
        let prism = gen_subdivided(SubdividedBase::Prism, SubdividerTriple::new(0, 0, 0)).unwrap();
        assert!(!closure_is_planar(&prism)); // closure is K6
        let ico = icosahedron();
        assert!(closure_is_planar(&ico)); // q = 3, closure equals the graph
    }
}
