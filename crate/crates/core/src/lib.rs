pub mod audit;
pub mod corpus;
pub mod equivalence;
pub mod error;
pub mod homotopy;
pub mod io;
pub mod mult_alg;
pub mod oracle;
pub mod report;
pub mod ring;
pub mod two_cat;
pub mod xmod;

pub use error::{Error, Result};
pub use report::{Report, ReportEntry, Witness};
