//! Exact arithmetic over rationals and radical numbers `γ·q^(1/c)`.

mod factor;
mod radical;
mod rational;

pub use factor::{cfree_decompose, factorize, is_cfree, Factorization, MAX_FACTOR_INPUT, TRIAL_DIVISION_BOUND};
pub use radical::{radical_add, radical_sum_is_zero, RadicalNumber, RadicalSum};
pub use rational::Rational;
