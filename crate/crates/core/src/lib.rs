//! Exact computations around the first Grigorchuk group: its action on the
//! orbit of `1^inf`, sequence properties of the points `0^i 1^inf`,
//! permutational wreath products over it, growth of balls, and limit groups
//! of wreath products with sparse functions.

pub mod grig;
pub mod group;
pub mod growth;
pub mod imbed;
pub mod schreier;
pub mod seqprop;
pub mod wlimit;
pub mod wreath;

pub use grig::{GrigElement, Letter, TailBehavior, TailKind};
pub use schreier::OrbitPoint;
