//! Exhaustive desk-scale verification: isomorph-free generation of all
//! simple graphs on up to eight vertices, a census of facially complete
//! embeddings checked against the classifier and the counting formulas,
//! and a sweep of the interior-path lemma.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{classify, find_interior_path, CatalogClass};
use crate::closure::is_facially_complete;
use crate::counting::count_totals;
use crate::embed::{
    canonical_code, classify_connectivity, embed_abstract, enumerate_embeddings, Connectivity,
    PlaneGraph,
};
use crate::io::to_graph6;

pub const CENSUS_MAX_N: usize = 8;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("verification pass too large: {0}")]
    ScaleLimit(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusConnectivity {
    TwoConnected,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusMismatch {
    /// graph6 of the base graph plus the embedding's canonical code, when
    /// the problem is tied to one embedding; otherwise a summary label.
    pub context: String,
    pub problem: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub connectivity: CensusConnectivity,
    pub base_graphs: u64,
    pub embeddings_examined: u64,
    pub fc_found: u64,
    /// Counts per catalog type, index 0 = type 1.
    pub histogram: [u64; 7],
    pub mismatches: Vec<CensusMismatch>,
}

impl CensusReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// All simple graphs on n vertices up to isomorphism, as sorted edge lists.
///
/// Orderly generation: a labeled graph is the class representative iff its
/// column-major upper-triangle bitstring is lexicographically maximal over
/// all relabelings. Removing the last vertex of a representative leaves a
/// representative, so extending each representative by one new last vertex
/// with every neighborhood, keeping the canonical results, is exhaustive
/// and isomorph-free.
pub fn generate_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!((1..=16).contains(&n), "generation supports 1..=16 vertices");
    let mut layer: Vec<Vec<u16>> = vec![vec![0u16]];
    for k in 2..=n {
        let mut next = Vec::new();
        for parent in &layer {
            for subset in 0u16..(1 << (k - 1)) {
                let mut adj = parent.clone();
                adj.push(subset);
                for (i, row) in adj.iter_mut().enumerate().take(k - 1) {
                    if subset >> i & 1 == 1 {
                        *row |= 1 << (k - 1);
                    }
                }
                if is_canonical(&adj, k) {
                    next.push(adj);
                }
            }
        }
        layer = next;
    }
    layer
        .into_iter()
        .map(|adj| {
            let mut edges = Vec::new();
            for (u, &row) in adj.iter().enumerate() {
                for v in u + 1..n {
                    if row >> v & 1 == 1 {
                        edges.push((u, v));
                    }
                }
            }
            edges
        })
        .collect()
}

fn is_canonical(adj: &[u16], k: usize) -> bool {
    let ident: Vec<u32> = (0..k)
        .map(|j| {
            let mut c = 0;
            for &row in &adj[..j] {
                c = c << 1 | (row >> j & 1) as u32;
            }
            c
        })
        .collect();
    let mut perm = Vec::with_capacity(k);
    canon_dfs(adj, k, &ident, &mut perm, 0)
}

/// True iff no permutation extending `perm` beats the identity bitstring.
fn canon_dfs(adj: &[u16], k: usize, ident: &[u32], perm: &mut Vec<usize>, used: u16) -> bool {
    let j = perm.len();
    if j == k {
        return true;
    }
    for v in 0..k {
        if used >> v & 1 == 1 {
            continue;
        }
        let mut col = 0u32;
        for &p in perm.iter() {
            col = col << 1 | (adj[p] >> v & 1) as u32;
        }
        if col > ident[j] {
            return false;
        }
        if col == ident[j] {
            perm.push(v);
            if !canon_dfs(adj, k, ident, perm, used | 1 << v) {
                perm.pop();
                return false;
            }
            perm.pop();
        }
    }
    true
}

fn type_index(c: &CatalogClass) -> usize {
    match c {
        CatalogClass::Type1(_) => 0,
        CatalogClass::Type2(_) => 1,
        CatalogClass::Type3(_) => 2,
        CatalogClass::Type4 { .. } => 3,
        CatalogClass::Type5 { .. } => 4,
        CatalogClass::Type6(_) => 5,
        CatalogClass::Type7(_) => 6,
    }
}

/// Worker pool capped by FC_ATLAS_THREADS when set.
pub(crate) fn worker_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = std::env::var("FC_ATLAS_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t >= 1)
    {
        builder = builder.num_threads(t);
    }
    builder.build().expect("worker pool")
}

struct GraphTally {
    examined: u64,
    fc: u64,
    histogram: [u64; 7],
    mismatches: Vec<CensusMismatch>,
}

fn all_components_on_one_walk(g: &PlaneGraph) -> bool {
    g.components().iter().all(|comp| {
        g.walks()
            .iter()
            .any(|w| comp.iter().all(|&v| w.distinct_vertices().contains(&v)))
    })
}

fn census_one(n: usize, edges: &[(usize, usize)], mode: CensusConnectivity) -> Option<GraphTally> {
    let probe = embed_abstract(n, edges).ok()?;
    let conn = classify_connectivity(&probe);
    if mode == CensusConnectivity::TwoConnected && conn != Connectivity::TwoPlusConnected {
        return None;
    }
    let embeddings =
        enumerate_embeddings(n, edges).expect("census scale is within enumeration guards");
    let g6 = to_graph6(n, edges);
    let mut tally = GraphTally {
        examined: 0,
        fc: 0,
        histogram: [0; 7],
        mismatches: Vec::new(),
    };
    for emb in &embeddings {
        tally.examined += 1;
        let fc = is_facially_complete(emb);
        let context = || format!("{} / {:?}", g6, canonical_code(emb));
        if fc {
            tally.fc += 1;
            match classify(emb) {
                Ok(class) => tally.histogram[type_index(&class)] += 1,
                Err(e) => tally.mismatches.push(CensusMismatch {
                    context: context(),
                    problem: e.to_string(),
                }),
            }
        }
        match conn {
            Connectivity::OneConnected => {
                // FC at connectivity one must coincide with outerplanarity
                let outer = crate::embed::is_outerplanar_embedding(emb);
                if fc != outer {
                    tally.mismatches.push(CensusMismatch {
                        context: context(),
                        problem: format!(
                            "one-connected embedding: facially complete = {fc} but outerplanar = {outer}"
                        ),
                    });
                }
            }
            Connectivity::Disconnected => {
                let outer = all_components_on_one_walk(emb);
                if fc != outer {
                    tally.mismatches.push(CensusMismatch {
                        context: context(),
                        problem: format!(
                            "disconnected embedding: facially complete = {fc} but components all outerplanar = {outer}"
                        ),
                    });
                }
            }
            Connectivity::TwoPlusConnected => {}
        }
    }
    Some(tally)
}

/// Enumerate every embedding of every n-vertex graph with the requested
/// connectivity, filter the facially complete ones, classify them, and in
/// two-connected mode reconcile the tallies with the counting formulas.
pub fn fc_census(n: usize, connectivity: CensusConnectivity) -> Result<CensusReport, VerifyError> {
    if !(3..=CENSUS_MAX_N).contains(&n) {
        return Err(VerifyError::ScaleLimit(format!(
            "census supports 3 <= n <= {CENSUS_MAX_N}, got {n}"
        )));
    }
    fc_census_from(n, connectivity, &generate_graphs(n))
}

/// Census over a caller-supplied isomorph-free base-graph list (for
/// vendored graph6 files instead of in-process generation).
pub fn fc_census_from(
    n: usize,
    connectivity: CensusConnectivity,
    graphs: &[Vec<(usize, usize)>],
) -> Result<CensusReport, VerifyError> {
    if !(3..=CENSUS_MAX_N).contains(&n) {
        return Err(VerifyError::ScaleLimit(format!(
            "census supports 3 <= n <= {CENSUS_MAX_N}, got {n}"
        )));
    }
    let tallies: Vec<Option<GraphTally>> = worker_pool().install(|| {
        graphs
            .par_iter()
            .map(|edges| census_one(n, edges, connectivity))
            .collect()
    });
    let mut report = CensusReport {
        n,
        connectivity,
        base_graphs: 0,
        embeddings_examined: 0,
        fc_found: 0,
        histogram: [0; 7],
        mismatches: Vec::new(),
    };
    for tally in tallies.into_iter().flatten() {
        report.base_graphs += 1;
        report.embeddings_examined += tally.examined;
        report.fc_found += tally.fc;
        for (h, t) in report.histogram.iter_mut().zip(tally.histogram) {
            *h += t;
        }
        report.mismatches.extend(tally.mismatches);
    }
    if connectivity == CensusConnectivity::TwoConnected {
        let table = count_totals(n).expect("counting formulas cover census sizes");
        let expected = [table.type1, table.type2, table.type3, table.type4, table.type5, 0, 0];
        for (t, (&got, &want)) in report.histogram.iter().zip(&expected).enumerate() {
            if u128::from(got) != want {
                report.mismatches.push(CensusMismatch {
                    context: format!("type {} at n = {n}", t + 1),
                    problem: format!("census found {got}, formula predicts {want}"),
                });
            }
        }
        if u128::from(report.fc_found) != table.total_2connected {
            report.mismatches.push(CensusMismatch {
                context: format!("total at n = {n}"),
                problem: format!(
                    "census found {}, formula predicts {}",
                    report.fc_found, table.total_2connected
                ),
            });
        }
    }
    report.mismatches.sort_by(|a, b| (&a.context, &a.problem).cmp(&(&b.context, &b.problem)));
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub n: usize,
    pub embeddings_checked: u64,
    pub faces_checked: u64,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every 2-connected embedding on 4..=n vertices and every maximum face
/// with q >= 4 and n >= q + 2, an interior path must exist.
pub fn lemma_sweep(n: usize) -> Result<LemmaReport, VerifyError> {
    if !(4..=CENSUS_MAX_N).contains(&n) {
        return Err(VerifyError::ScaleLimit(format!(
            "lemma sweep supports 4 <= n <= {CENSUS_MAX_N}, got {n}"
        )));
    }
    let mut report = LemmaReport {
        n,
        embeddings_checked: 0,
        faces_checked: 0,
        failures: Vec::new(),
    };
    for k in 4..=n {
        let graphs = generate_graphs(k);
        let partials: Vec<(u64, u64, Vec<String>)> = worker_pool().install(|| {
            graphs
                .par_iter()
                .map(|edges| {
                    let mut checked = (0u64, 0u64, Vec::new());
                    let Ok(probe) = embed_abstract(k, edges) else {
                        return checked;
                    };
                    if classify_connectivity(&probe) != Connectivity::TwoPlusConnected {
                        return checked;
                    }
                    let embeddings = enumerate_embeddings(k, edges)
                        .expect("sweep scale is within enumeration guards");
                    for emb in &embeddings {
                        checked.0 += 1;
                        let q = emb.max_face_size();
                        if q < 4 || k < q + 2 {
                            continue;
                        }
                        for fi in 0..emb.faces().len() {
                            if emb.faces()[fi].size() != q {
                                continue;
                            }
                            checked.1 += 1;
                            if let Err(e) = find_interior_path(emb, fi) {
                                checked.2.push(format!(
                                    "{} / {:?} face {fi}: {e}",
                                    to_graph6(k, edges),
                                    canonical_code(emb)
                                ));
                            }
                        }
                    }
                    checked
                })
                .collect()
        });
        for (embs, faces, fails) in partials {
            report.embeddings_checked += embs;
            report.faces_checked += faces;
            report.failures.extend(fails);
        }
    }
    report.failures.sort();
    Ok(report)
}
