//! Cardinals, closed-form sequences, cell models and passports.

mod cardinal;
mod cell_model;
mod closed_form;
mod merge;
mod passport;
mod sequence;

pub use cardinal::Cardinal;
pub use cell_model::{Cell, CellModel, CellTail};
pub use closed_form::{ClosedForm, ClosedFormSum};
pub use merge::merge_passports;
pub use passport::{AffineTail, Passport, PassportLine, ValidationReport, Violation};
pub use sequence::{doubling_witness, ratio_bounded, RatioDecision, SeqSpec, WITNESS_THRESHOLD};
