//! Exact algebra for checking automorphism groups of curves of genus 4, 5 and 6.

pub mod algebra;
pub mod chars;
pub mod cremona;
pub mod curves;
pub mod ffprobe;
pub mod groebner;
pub mod quadnet;
pub mod ramify;
pub mod symmetry;

pub use algebra::{AlgebraError, CycNum, CycloField, Field, Matrix, Poly, Rational, UPoly};
