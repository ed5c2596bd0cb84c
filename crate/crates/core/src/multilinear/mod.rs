pub mod complex;
pub mod element;
pub mod word;

pub use complex::{apply_f, delta, delta_complex, delta_f, exactness_at_point, ExactnessLevel, RankReport};
pub use element::GradedElement;
pub use word::{BasisWord, QSlot};
