//! Generalized bound path algebras `k(Γ,𝒜,I)` and their module theory over ℚ and GF(p).

pub mod error;
pub mod functors;
pub mod gbp;
pub mod linalg;
pub mod quiver;
pub mod reps;
pub mod structure;
pub mod vertexalg;

pub use error::{Error, Result};
pub use functors::{cone, cone_full, cone_map, dual_cone, inclusion, opposite_algebra, Cone, Opposite};
pub use gbp::{enumerate_free_basis, APath, GbpAlgebra};
pub use linalg::{Field, Matrix, Scalar};
pub use quiver::{Path, Quiver, RelationCombo};
pub use reps::{
    find_isomorphism, find_isomorphism_with, functor_f, functor_g, functor_g_with_frames, hom_space, IsoSearch,
    IsoSearchOptions, LambdaModule, RepMorphism, Representation,
};
pub use structure::{
    arrow_display, injective_direct, injective_rep, projective_direct, projective_rep, radical_of_projective,
    simple_rep, ArrowDisplay,
};
pub use vertexalg::{build_vertex_algebra, VertexAlgebra, VertexModule, DEFAULT_MAX_PATH_LEN};
