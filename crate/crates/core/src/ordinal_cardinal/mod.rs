//! Ordinals below epsilon-zero in Cantor normal form, cardinals indexed by
//! them, and counting and summation over cardinal intervals.

mod cardinal;
mod interval;
mod literal;
mod ordinal;

pub use cardinal::Cardinal;
pub use interval::{count_cardinals_in, sum_of_cardinals_in, Interval};
pub use literal::{parse_cardinal, parse_ordinal};
pub use ordinal::Ordinal;
