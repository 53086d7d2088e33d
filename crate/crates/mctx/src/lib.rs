//! Monoidal contexts, monoidal lenses, and session-typed protocol
//! composition over concrete finite monoidal theories.
//!
//! The crate builds up in layers:
//!
//! * [`theory`] — finite functions, exact-rational stochastic maps and free
//!   symmetric-monoidal terms behind one morphism type;
//! * [`splice`] / [`duosplice`] — spliced arrows with sequential and
//!   parallel holes, their coherence maps and laxators;
//! * [`context`] — monoidal contexts: two-sided residuals, the full action
//!   algebra, normalization from spliced arrows, and dinaturality rewriting;
//! * [`lens`] — monoidal lenses: one-sided residuals, send/receive functors,
//!   symmetric normalization and the cartesian get/put form;
//! * [`session`] — polarized session types and multi-party composition;
//! * [`contour`] — generators-and-relations presentations traced from
//!   decomposition data, with an executable relation checker;
//! * [`laws`] — the deterministic law suites behind `mctx laws`.

pub mod codec;
pub mod context;
pub mod contour;
pub mod duosplice;
pub mod error;
pub mod handshake;
pub mod laws;
pub mod lens;
pub mod object;
pub mod rational;
pub mod session;
pub mod splice;
pub mod theory;

pub use error::{Error, Result};
pub use object::{Atom, ObjectList};
pub use theory::{Morphism, TheoryKind};

#[cfg(test)]
mod concurrency {
    // all values are immutable after construction and shareable across
    // threads; operations are pure
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn values_are_send_and_sync() {
        assert_send_sync::<crate::ObjectList>();
        assert_send_sync::<crate::Morphism>();
        assert_send_sync::<crate::splice::NHoleSplice>();
        assert_send_sync::<crate::duosplice::ParSplit>();
        assert_send_sync::<crate::duosplice::Elem>();
        assert_send_sync::<crate::context::Context>();
        assert_send_sync::<crate::lens::Lens>();
        assert_send_sync::<crate::session::Party>();
        assert_send_sync::<crate::contour::Presentation>();
    }
}
