//! Plane graphs whose facial closure is complete: embeddings, the facial
//! closure operator, a seven-family catalog with classification, exact
//! counting, cyclic coloring, and exhaustive cross-checks.

pub mod catalog;
pub mod closure;
pub mod coloring;
pub mod counting;
pub mod embed;
pub mod io;
pub mod verify;

pub use catalog::{
    classify, extremal_tag, find_interior_path, gen_outerplanar, gen_subdivided, gen_type4,
    gen_type5, generate, is_extremal, BlockSpec, CatalogClass, CatalogError, ComponentSpec,
    ExtremalTag, InteriorPath, SubdividedBase, SubdividerTriple,
};
pub use closure::{facial_closure, is_facially_complete, w_bound, ClosureReport};
pub use coloring::{
    catalog_chromatic_check, chromatic_number_exact, closure_is_planar, color_quad5,
    cyclic_chromatic, random_quad_instance, ChromaticCheck, ColorError, VertexColoring,
    COLOR_MAX_N,
};
pub use counting::{
    bracelets, count_by_type, count_totals, dissections_brute, dissections_up_to_symmetry,
    partitions_at_most3, CountError, CountTable,
};
pub use embed::{
    build_plane_graph, canonical_code, classify_connectivity, embed_abstract,
    enumerate_embeddings, exact_kappa, is_outerplanar_embedding, is_planar, CanonicalCode,
    Connectivity, EmbedError, Face, FaceWalk, PlaneGraph,
};
pub use verify::{
    fc_census, fc_census_from, generate_graphs, lemma_sweep, CensusConnectivity, CensusMismatch,
    CensusReport, LemmaReport, VerifyError, CENSUS_MAX_N,
};
