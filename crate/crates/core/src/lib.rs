pub mod cfinite;
pub mod certify;
pub mod convolve;
pub mod error;
pub mod field;
pub mod fixedpoint;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod scalar;
pub mod seqcore;

pub use error::{Error, Result};
pub use certify::{Certificate, CertificateKind, TraceEntry};
pub use convolve::{ProbeEntry, ProbeOutcome, SweepRow};
pub use field::{Field, Fp61, ModP};
pub use par::Parallelism;
pub use poly::Poly;
pub use scalar::{ArithOp, CyclotomicReal, QuadraticNumber, Rational, Scalar, Tower};
pub use seqcore::{DepthResult, RBound, SeqKind, Sequence, Witness};
