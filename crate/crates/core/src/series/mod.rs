//! Series evaluators: terminating balanced 4F3 sums and their multivariate
//! rectangular/triangular extensions (exact rationals), terminating balanced
//! elliptic series in one and several dimensions (complex doubles), and the
//! symmetric truncated 3F2 form at unit argument.

pub mod elliptic;
pub mod hardy;
pub mod ordinary;

pub use elliptic::{eval_10e9, eval_e1d, eval_enm, eval_enm_with_budget, EnmTermination, SeriesEnm};
pub use hardy::{eval_hardy_3f2, HardyVector};
pub use ordinary::{eval_4f3_terminating, eval_an_4f3, F4Kind, Series4F3An};
