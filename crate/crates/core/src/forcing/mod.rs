//! Forcing with finite posets over ord-transitive ε-models.

pub mod extension;
pub mod frame;
pub mod generic;
pub mod names;
pub mod poset;
pub mod theorem;
pub mod transfer;

pub use extension::{eval_name_m, extend_model, forces_semantic, CollapsedExtension, ForcingFrame};
pub use frame::{all_frame_specs, build_frame, Frame, FrameSpec};
pub use generic::{all_generic_filters, enumerate_generics, is_generic, DenseKind, GenericityContext};
pub use names::{eval_name_v, generic_name, is_name, is_name_in, std_name};
pub use poset::{condition_term, preorder_shapes, OrderedModel, Poset, PosetView};
pub use transfer::{
    antichain_showcase, divergence_witness, eval_absoluteness_check, genericity_transfer,
    incompatibility_witness, model_dependence,
};
