pub mod acceptance;
pub mod bernoulli;
pub mod charclass;
pub mod error;
pub mod finitestab;
pub mod gradedring;
pub mod lattice;
pub mod reprring;
pub mod riemannroch;
