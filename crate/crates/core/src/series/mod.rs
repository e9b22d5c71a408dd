//! Analytic germs in plumbing coordinates and domination certificates.

pub mod certify;
pub mod exact;
pub mod germ;
pub mod index;
pub mod parse;
pub mod tail;

pub use certify::{certify, CertFlag, CertRow, CertifyOptions, DominationCertificate};
pub use exact::{eval_exact, ExactValue, Sign};
pub use germ::{AnalyticGerm, CauchyEnvelope, LeadingTerm};
pub use index::MultiIndex;
pub use parse::{parse_germ, ParseError};
pub use tail::{envelope_block_logs, eval_log_abs_monomial, tail_bound};
