//! Gold-type codes of relative dimension `k` over GF(2) ⊂ GF(2^e) ⊂ GF(2^m).
//!
//! The crate builds the codes from their trace description, enumerates the
//! DC-component distribution of every codeword and the rank distribution of
//! the associated alternating bilinear forms, and evaluates the matching
//! closed-form counts with exact integers so the two can be compared bin by
//! bin.
//!
//! ```
//! use goldcode::{closed, code, field::FieldCtx, forms::{CodeParams, Family}};
//!
//! let params = CodeParams::new(5, 1, 1, 2, Family::A).unwrap();
//! let ctx = FieldCtx::new(5, None).unwrap();
//! let enumerated = code::survey(&params, &ctx, code::DEFAULT_BUDGET).unwrap();
//! assert!(enumerated.table.same_counts(&closed::closed_table(&params)));
//! ```

pub mod cli;
pub mod closed;
pub mod code;
pub mod error;
pub mod field;
pub mod forms;
pub mod seq;
pub mod veq;

pub use error::{Error, Result};
