//! Machinery for t-spread principal Borel ideals: generator enumeration,
//! Stanley-Reisner facets and Alexander duals with a linear-quotients
//! certifier, sorted tuples and the Rees-presentation Groebner basis, and
//! depth/projective dimension of powers — each structural computation
//! cross-checked by an independent brute-force oracle.

pub mod borel;
pub mod dual;
pub mod error;
pub mod monomial;
pub mod oracle;
pub mod powers;
pub mod rees;
pub mod sorting;

#[cfg(feature = "cli")]
pub mod cli;

mod par;

pub use borel::BorelInstance;
pub use error::{Error, Result};
pub use monomial::{IndexSet, Monomial};
pub use powers::Guards;

/// Serde adapter: a [`Monomial`] as its text form (`"x2*x4*x9"`). Ambient
/// size is recovered from the highest index on read, which is enough for
/// the report types that use it.
pub mod monomial_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::monomial::Monomial;

    pub fn serialize<S: Serializer>(
        m: &Monomial,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&m.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Monomial, D::Error> {
        let text = String::deserialize(deserializer)?;
        let n = Monomial::max_index_in_text(&text).map_err(serde::de::Error::custom)?;
        Monomial::parse(&text, n).map_err(serde::de::Error::custom)
    }
}
