//! Translations of intuitionistic logics into set-theoretic Kripke models and
//! the equivalence checks behind them.

pub mod buttons;
pub mod defs;
pub mod mimic;
pub mod prop_check;
pub mod relative;
pub mod report;
pub mod sweep;
pub mod translation;

pub use buttons::{button_sentence, realize_code, MonotoneCode};
pub use mimic::{encode_coded_model, mimic_build, CodedModel, Mimic, MimicMaps};
pub use prop_check::dejongh_prop_check;
pub use relative::{dejongh_relative_check, fo_code};
pub use report::{EquivReport, EquivRow};
pub use sweep::{mimic_check, mimic_check_formula, MimicReport};
pub use translation::{Translation, TranslationKind};
