//! Objects of the category generated by the two simples at k = 1, as finite-dimensional
//! dg modules over the two-cycle dg algebra; mutation and twist functors; the
//! homological-length reduction and the spherical classifier; a cohomology-level
//! shadow of the reduction for k > 1.

pub mod category;
pub mod gamma;
pub mod module;
pub mod ops;
pub mod shadow;
pub mod tilt;
pub mod word;

use thiserror::Error;

use crate::fdrep::FdError;
use crate::linalg::LinalgError;

pub use category::{Category, Fingerprint};
pub use module::CObject;
pub use ops::{
    act, classify_spherical, homological_length, mutation, reduce, reduce_with, twist, Classification, Reduction,
    ReductionStep, ReductionTrace, TwistTarget,
};
pub use shadow::{parse_shadow, shadow_reduce, Shadow, ShadowReduction, ShadowStatus};
pub use tilt::{build_tilt, Functor, Tilt};
pub use word::{GroupoidWord, Letter};

#[derive(Debug, Error)]
pub enum DerivedError {
    #[error(transparent)]
    Fd(#[from] FdError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("bad module: {0}")]
    BadModule(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("zero object")]
    ZeroObject,
    #[error("not a brick object: {0}")]
    NotBrick(String),
    #[error("negative self-extensions: {0}")]
    NegativeExt(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, DerivedError>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    fn labels(c: &Category, x: &CObject) -> Vec<(i64, Vec<String>)> {
        c.cohomology_labels(x).unwrap().into_iter().collect()
    }

    fn one(n: i64, s: &str) -> Vec<(i64, Vec<String>)> {
        vec![(n, vec![s.to_string()])]
    }

    #[test]
    fn rhom_of_simples() {
        let c = Category::new(Field::Rational).unwrap();
        let s1 = c.simple(1).unwrap();
        let s2 = c.simple(2).unwrap();
        let r = c.rhom(&s1, &s1);
        assert_eq!(r.into_iter().collect::<Vec<_>>(), vec![(0, 1), (3, 1)]);
        let r = c.rhom(&s1, &s2);
        assert_eq!(r.into_iter().collect::<Vec<_>>(), vec![(1, 1), (2, 1)]);
        assert!(s1.resolution().d_squared_zero(Field::Rational));
    }

    #[test]
    fn pinned_mutations() {
        let c = Category::new(Field::Rational).unwrap();
        let m = |name: &str| c.module(name).unwrap();
        let phi = |v: usize, x: &CObject| c.apply(Functor::Mutation(v, true), x).unwrap();
        assert_eq!(labels(&c, &phi(0, &m("S1"))), one(1, "S1"));
        assert_eq!(labels(&c, &phi(0, &m("S2"))), one(0, "M1"));
        assert_eq!(labels(&c, &phi(0, &m("M2"))), one(0, "S2"));
        assert_eq!(labels(&c, &phi(1, &m("S2"))), one(1, "S2"));
        assert_eq!(labels(&c, &phi(1, &m("S1"))), one(0, "M2"));
        assert_eq!(labels(&c, &phi(1, &m("M1"))), one(0, "S1"));
    }

    #[test]
    fn all_tilts_admit_strict_actions() {
        for f in [Field::Rational, Field::Prime(2), Field::Prime(5)] {
            for v in 0..2 {
                for fwd in [true, false] {
                    for which in [Functor::Mutation(v, fwd), Functor::Twist(v, fwd)] {
                        let t = build_tilt(f, which).unwrap();
                        assert!(t.verify(f), "{}", t.name);
                    }
                }
            }
        }
    }
}
