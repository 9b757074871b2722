//! Exact products of Kazhdan-Lusztig basis elements in the type-BC
//! Iwahori-Hecke algebra, computed by Hecke recursion, by defect-weighted
//! path families on star networks, and by subexpressions of generator words.
//!
//! ```
//! use hecke_bc::{graphical_expansion, product_of_reversal_kls, StarNetwork};
//!
//! let net = StarNetwork::parse("[-2,2] o [1,2] o [-1,1]", 2).unwrap();
//! assert_eq!(
//!     graphical_expansion(&net).unwrap(),
//!     product_of_reversal_kls(2, &net.intervals()).unwrap(),
//! );
//! ```

pub mod deodhar;
pub mod error;
pub mod group;
pub mod hecke;
pub mod network;
pub mod parabolic;
pub mod paths;
pub mod poly;
pub mod verify;

pub use deodhar::deodhar_expand;
pub use error::{Error, Result};
pub use group::{matches_pattern, PairRule, Pattern, SignedPermutation};
pub use hecke::{coset_expansion, douglass_action, kl_reversal, product_of_reversal_kls, CosetSum, HeckeElement};
pub use network::{builtin_network, Edge, Join, MergedEdge, Side, Stage, StarNetwork, Vertex};
pub use parabolic::{bruhat_leq, Interval, IntervalKind, ParabolicSubgroup};
pub use paths::{
    enumerate, enumerate_generalized, extend_family, families, generalized_families, graphical_expansion,
    kl_poly_extract, truncate_family, CountRecord, DefectTriple, FamilyCounts, PathFamily,
};
pub use poly::{q_factorial, q_int, r_of_v, QPoly};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/signed-permutations.md")]
    mod signed_permutations {}
    #[doc = include_str!("../../../book/src/parabolic.md")]
    mod parabolic {}
    #[doc = include_str!("../../../book/src/hecke.md")]
    mod hecke {}
    #[doc = include_str!("../../../book/src/star-networks.md")]
    mod star_networks {}
    #[doc = include_str!("../../../book/src/path-families.md")]
    mod path_families {}
    #[doc = include_str!("../../../book/src/subexpressions.md")]
    mod subexpressions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
