//! Exact scalars: arbitrary-precision rationals and cyclotomic fields Q(ζ_L).

mod cyclotomic;
mod qpoly;
mod rational;

pub use cyclotomic::{
    cyclotomic_polynomial, root_power_sum, totient, zeta_pow, CyclotomicField, CyclotomicNumber,
};
pub use rational::{binomial, factorial, rat, BigInt, BigRational};
