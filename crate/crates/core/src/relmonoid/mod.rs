//! Monoids of boolean relations: enumeration, Green's relations, idempotents,
//! H-class groups and their permutation representations.

mod eggbox;
mod full;
mod green;
mod group;
mod idempotent;
mod monoid;
mod rank;
mod relation;

pub use eggbox::{eggbox, minimal_eggbox, Eggbox, EggboxCell};
pub use full::{FullRelationMonoid, FULL_MONOID_LIMIT};
pub use green::{green_relations, GreenClasses};
pub use group::{
    compose, gamma_representation, groups_equivalent, h_class_group, inverse, is_transitive,
    minimal_idempotents, minimal_rank, GammaRepresentation, HClassGroup, MinimalRank, Permutation,
    PermutationGroupRep, EQUIVALENCE_DOMAIN_LIMIT, RANK_CROSS_CHECK_LIMIT,
};
pub use idempotent::{idempotent_structure, IdempotentStructure};
pub use monoid::{
    enumerate_monoid, max_elements, RelationMonoid, TransitionMonoid, DEFAULT_MAX_ELEMENTS,
};
pub use rank::{boolean_rank, RANK_DIMENSION_LIMIT};
pub use relation::BooleanRelation;
