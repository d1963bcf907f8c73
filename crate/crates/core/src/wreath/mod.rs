//! Finite groups, wreath products `G ≀ S_n`, their character tables for
//! abelian `G`, the induction product and the characteristic map.

mod characters;
pub mod group;
mod product;

pub use characters::{
    character_label_names, check_ch_multiplicative, induced_product_character, induction_product, irreducible_dim,
    symmetric_character, wreath_character_table, CharacterTable, ChFailure, ChVerdict, OrthogonalityVerdict,
    TableCache,
};
pub use group::{CayleyTable, FiniteGroup};
#[cfg(test)]
pub(crate) use group::parity;
pub use product::{build_wreath, class_label_names, wreath_class_label, WreathElement, WreathProduct, WREATH_BUDGET};
