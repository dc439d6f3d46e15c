//! Instance generators: random tree models and the two hardness gadgets,
//! each with a certificate builder for the forward direction.

pub mod maxcut;
pub mod mcc;
pub mod random;

pub use maxcut::{cut_size, maxcut_certificate, maxcut_edges_direct, maxcut_gadget, MaxCutGadget, MaxCutLayout, Role};
pub use mcc::{mcc_certificate, mcc_gadget, MccGadget, MccInstance};
pub use random::{gen_random_instance, gen_random_model, gen_random_model_with, RandomModelParams};
