//! Parameter words and the structures they encode.
//!
//! The crate covers
//!
//! * parameter words, substitution and parameter spaces ([`words`]);
//! * minimal envelopes and embedding types ([`envelope`]);
//! * brute-force finite relational structures ([`structure`]);
//! * the word-encoded universal triangle-free graph and partial order ([`encoding`]);
//! * finite Ramsey embeddings built from Katětov and downset functions ([`grn`]);
//! * upper bounds on big Ramsey degrees by enumerating canonical types ([`degrees`]);
//! * interpretations of other structures inside partial orders ([`interpret`]);
//! * exhaustive checks of the finite Graham–Rothschild statement ([`gr`]).
//!
//! Everything operates on finite, desk-scale instances and self-verifies where
//! a construction is claimed to satisfy a property.

pub mod degrees;
pub mod encoding;
pub mod envelope;
pub mod error;
pub mod gr;
pub mod grn;
pub mod interpret;
pub mod structure;
pub mod words;

#[cfg(test)]
mod properties;

pub use envelope::{
    dim_bound, embedding_type, is_canonical_type, is_envelope, minimal_envelope, minimal_envelopes_exhaustive, tau,
    EmbeddingType, Envelope,
};
pub use error::{Error, Result};
pub use structure::{Kind, Structure};
pub use words::{
    random_word, substitute, substitute_set, validate, Alphabet, LengthBound, Letter, ParameterWord, Space,
};
