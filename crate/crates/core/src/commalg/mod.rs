//! Commutative monoid objects in the supported bases, their morphisms,
//! pushouts, and the epimorphism and finite-type predicates.

mod enumerate;
mod object;
mod pushout;
mod table;

pub use enumerate::{
    cmon0_up_to, comm_monoids_of_order, comm_monoids_up_to, generators, monoid_homs,
    monoid_isomorphism, monoid_morphisms,
};
pub use object::{check_comm_monoid, Base, CommMonoid, MonoidMorphism};
pub use pushout::{
    congruence_closure, is_epi, is_finite_type, pushout, quotient_monoid, Pushout, Tagged,
};
pub use table::{MonoidHom, MonoidTable};
