//! Exact two-player zero-sum solving: a rational simplex, the sequence
//! form, and decision procedures for "value = 1".

mod guarantee;
pub mod lp;
mod sequence;
mod value;

pub use guarantee::{
    brute_force_can_guarantee, brute_force_from, can_guarantee, can_guarantee_lp, sure_win_from, DEFAULT_ORACLE_LIMIT,
};
pub(crate) use guarantee::{pure_strategies, sure_win_unchecked, wins_with};
pub use sequence::{build_sequence_form, Sequence, SequenceForm, SideSequences};
pub use value::{game_value, GameValue, RealizationPlan};
