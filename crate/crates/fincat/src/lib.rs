//! Finite categories as explicit composition tables.
//!
//! The data model keeps every table dense and validated up front, so the
//! algorithms on top (morphism classification, limit search, factorization
//! and nodal decomposition, envelopes and imprints, nets of epimorphisms)
//! can be written as plain exhaustive enumerations whose correctness rests
//! only on the category laws. Dual notions are computed literally on the
//! opposite category rather than re-derived.
//!
//! Enumeration cores run in parallel by default (feature `parallel`) with
//! order-preserving collection, so parallel and sequential runs produce
//! identical results.

pub mod classify;
pub mod core;
pub mod envelope;
pub mod exec;
pub mod factor;
pub mod limits;
pub mod net;

pub use crate::core::{
    validate_category, validate_category_with_caps, BuiltinPredicate, CategoryError, Diagram,
    DiagramError, FinCategory, MorId, MorphismClassSpec, ObjId, RawCategory, SizeCaps,
};
pub use crate::classify::{
    classify_all, classify_all_in, evaluate_class_spec, ClassSpecError, MorphismClassification,
    QuotientSystem, SubobjectSystem,
};
pub use crate::envelope::{
    check_envelope_properties, envelope, envelope_functor_in_class, envelope_sepi_wrt_single,
    envelope_wrt_set, envelope_wrt_single, extensions, imprint, EnvelopeFunctor,
    EnvelopeFunctorError, EnvelopePropertyReport, EnvelopeResult, EnvelopeSetError,
    ExtensionWitness, ImprintResult, PropertyCheck,
};
pub use crate::factor::{
    has_nodal_decompositions, nodal_from_envelope_imprint, Factorization, NodalAssemblyError,
    NodalDecomposition, StrongDecomposition,
};
pub use crate::limits::{Cone, ConeDirection, LimitResult};
pub use crate::net::{
    binding_morphism, counterfort_fill, counterfort_is_relatively_split, envelope_via_net,
    imprint_via_net, induced_morphism, local_limit, mono_induced_morphism, mono_local_limit,
    relative_splitting_violation, validate_mono_net, validate_net, LocalLimit, Net,
    NetEnvelopeError, NetEnvelopes, NetIssue, NetValidationReport,
};
