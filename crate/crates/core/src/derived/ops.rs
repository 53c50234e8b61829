//! Functor API on objects, homological length, the length-reduction algorithm and the
//! spherical classifier.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::word::{GroupoidWord, Letter};
use super::{CObject, Category, DerivedError, Functor, Result};
use crate::fdrep::{hom_dim, Rep};

/// Objects up to this total dimension get the negative self-Ext check in `reduce`.
pub const PRECHECK_MAX_DIM: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TwistTarget {
    S1,
    S2,
    M1,
}

impl FromStr for TwistTarget {
    type Err = DerivedError;

    fn from_str(s: &str) -> Result<TwistTarget> {
        match s {
            "1" | "S1" => Ok(TwistTarget::S1),
            "2" | "S2" => Ok(TwistTarget::S2),
            "M1" => Ok(TwistTarget::M1),
            _ => Err(DerivedError::Range(format!("no twist around {s:?}"))),
        }
    }
}

impl fmt::Display for TwistTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn check_vertex(i: usize) -> Result<usize> {
    match i {
        1 | 2 => Ok(i - 1),
        _ => Err(DerivedError::Range(format!("no vertex {i}"))),
    }
}

/// `Φ_i` for `dir > 0`, `Φ_i^{-1}` otherwise.
pub fn mutation(c: &Category, i: usize, x: &CObject, dir: i8) -> Result<CObject> {
    c.apply(Functor::Mutation(check_vertex(i)?, dir > 0), x)
}

/// Spherical twist around `S1`, `S2` or `M1`, or its inverse for `dir < 0`.
/// The `M1` twist is the conjugate `Φ2^{-1} T_{S1} Φ2`, since `Φ2(M1) = S1`.
pub fn twist(c: &Category, target: TwistTarget, x: &CObject, dir: i8) -> Result<CObject> {
    let fwd = dir > 0;
    match target {
        TwistTarget::S1 => c.apply(Functor::Twist(0, fwd), x),
        TwistTarget::S2 => c.apply(Functor::Twist(1, fwd), x),
        TwistTarget::M1 => {
            let y = mutation(c, 2, x, 1)?;
            let y = c.apply(Functor::Twist(0, fwd), &y)?;
            mutation(c, 2, &y, -1)
        }
    }
}

/// Applies the letters left to right.
pub fn act(c: &Category, w: &GroupoidWord, x: &CObject) -> Result<CObject> {
    let mut cur = x.clone();
    for l in &w.letters {
        cur = match *l {
            Letter::Phi(i, e) => mutation(c, i as usize, &cur, e)?,
            Letter::Shift(k) => cur.shift(k),
        };
    }
    Ok(cur)
}

/// Bottom and top degrees of nonzero cohomology.
pub fn cohomology_range(c: &Category, x: &CObject) -> Result<(i64, i64)> {
    let coh = c.cohomology(x)?;
    match (coh.first_key_value(), coh.last_key_value()) {
        (Some((&b, _)), Some((&t, _))) => Ok((b, t)),
        _ => Err(DerivedError::ZeroObject),
    }
}

/// `ℓ = t - b`.
pub fn homological_length(c: &Category, x: &CObject) -> Result<usize> {
    let (b, t) = cohomology_range(c, x)?;
    Ok((t - b) as usize)
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionStep {
    /// `"b"`, `"t"`, or `"shift"` for the final normalization.
    pub end: String,
    pub simple: Option<u8>,
    pub letters: Vec<Letter>,
    pub ell_before: usize,
    pub ell_after: usize,
    /// Dimension vectors of the cohomology after the step.
    pub dims: BTreeMap<i64, Vec<usize>>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    /// Whether `Hom(x, x[i]) = 0` for `i < 0` was verified on the input.
    pub precondition_checked: bool,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub word: GroupoidWord,
    /// The terminal module, placed in degree `degree`.
    pub terminal: Rep,
    pub degree: i64,
    pub labels: Vec<String>,
    pub trace: ReductionTrace,
}

/// The vertex `i` if `m` is a sum of copies of `S_i`.
fn pure_simple(m: &Rep) -> Option<u8> {
    match m.dims.as_slice() {
        [p, 0] if *p > 0 => Some(1),
        [0, q] if *q > 0 => Some(2),
        _ => None,
    }
}

fn dims_of(c: &Category, x: &CObject) -> Result<BTreeMap<i64, Vec<usize>>> {
    Ok(c.cohomology(x)?.into_iter().map(|(n, r)| (n, r.dims)).collect())
}

fn check_no_negative_ext(c: &Category, x: &CObject) -> Result<bool> {
    if x.total_dim() > PRECHECK_MAX_DIM {
        return Ok(false);
    }
    let bad: Vec<(i64, usize)> = c.rhom(x, x).into_iter().filter(|&(n, d)| n < 0 && d > 0).collect();
    if !bad.is_empty() {
        return Err(DerivedError::NegativeExt(format!("Ext dims {bad:?}")));
    }
    Ok(true)
}

/// Lowers `ℓ` to zero with mutation functors, then (if `normalize`) moves the
/// remaining module to degree 0 with powers of `Φ1 Φ2 Φ1` and a lone `M1` or `M2` to a simple.
pub fn reduce_with(c: &Category, x: &CObject, normalize: bool) -> Result<Reduction> {
    let mut cur = c.minimalize(x)?;
    let mut trace = ReductionTrace {
        precondition_checked: check_no_negative_ext(c, &cur)?,
        ..Default::default()
    };
    let mut word = GroupoidWord::new();
    loop {
        let coh = c.cohomology(&cur)?;
        let (b, t) = match (coh.first_key_value(), coh.last_key_value()) {
            (Some((&b, _)), Some((&t, _))) => (b, t),
            _ => return Err(DerivedError::ZeroObject),
        };
        let ell = (t - b) as usize;
        if ell == 0 {
            break;
        }
        let (hb, ht) = (&coh[&b], &coh[&t]);
        if hom_dim(&c.alg, ht, hb)? != 0 {
            return Err(DerivedError::NegativeExt(format!("Hom(H^{t}, H^{b}) is nonzero")));
        }
        let (end, i, e) = if let Some(i) = pure_simple(hb) {
            ("b", i, 1)
        } else if let Some(i) = pure_simple(ht) {
            ("t", i, -1)
        } else {
            return Err(DerivedError::Internal(format!(
                "neither end is a sum of one simple: H^{b} {:?}, H^{t} {:?}",
                hb.dims, ht.dims
            )));
        };
        let next = mutation(c, i as usize, &cur, e)?;
        let after = homological_length(c, &next)?;
        if after >= ell {
            return Err(DerivedError::Internal(format!(
                "length did not drop ({ell} -> {after}) applying {} to an object with cohomology {:?}",
                Letter::Phi(i, e),
                dims_of(c, &cur)?
            )));
        }
        word.push(Letter::Phi(i, e));
        trace.steps.push(ReductionStep {
            end: end.into(),
            simple: Some(i),
            letters: vec![Letter::Phi(i, e)],
            ell_before: ell,
            ell_after: after,
            dims: dims_of(c, &next)?,
        });
        cur = next;
    }
    let (mut degree, _) = cohomology_range(c, &cur)?;
    if normalize {
        // Φ1 Φ2 Φ1 raises the degree of a module by one
        while degree != 0 {
            let e: i8 = if degree < 0 { 1 } else { -1 };
            let letters = vec![Letter::Phi(1, e), Letter::Phi(2, e), Letter::Phi(1, e)];
            for &l in &letters {
                word.push(l);
            }
            cur = act(c, &GroupoidWord::from_letters(letters.clone()), &cur)?;
            let (nb, nt) = cohomology_range(c, &cur)?;
            if nb != nt || nb != degree + e as i64 {
                return Err(DerivedError::Internal(format!("shift normalization moved {degree} to {nb}..{nt}")));
            }
            degree = nb;
            trace.steps.push(ReductionStep {
                end: "shift".into(),
                simple: None,
                letters,
                ell_before: 0,
                ell_after: 0,
                dims: dims_of(c, &cur)?,
            });
        }
    }
    let coh = c.cohomology(&cur)?;
    let mut terminal = coh[&degree].clone();
    let mut labels = c.labels(&terminal)?;
    if normalize {
        // a lone M_j goes to the simple it is paired with: Φ1(M2) = S2, Φ2(M1) = S1
        let i = match labels.as_slice() {
            [m] if m == "M2" => Some(1),
            [m] if m == "M1" => Some(2),
            _ => None,
        };
        if let Some(i) = i {
            cur = mutation(c, i, &cur, 1)?;
            word.push(Letter::Phi(i as u8, 1));
            trace.steps.push(ReductionStep {
                end: "brick".into(),
                simple: None,
                letters: vec![Letter::Phi(i as u8, 1)],
                ell_before: 0,
                ell_after: homological_length(c, &cur)?,
                dims: dims_of(c, &cur)?,
            });
            let coh = c.cohomology(&cur)?;
            terminal = coh[&degree].clone();
            labels = c.labels(&terminal)?;
        }
    }
    Ok(Reduction {
        word,
        terminal,
        degree,
        labels,
        trace,
    })
}

pub fn reduce(c: &Category, x: &CObject) -> Result<Reduction> {
    reduce_with(c, x, true)
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    /// `S1` or `S2`.
    pub simple: String,
    /// `act(simple_word, x) ≅ simple[shift]`.
    pub simple_word: GroupoidWord,
    /// One of `S1`, `S2`, `M1`.
    pub normal_form: String,
    /// `act(normal_word, x) ≅ normal_form[shift]`.
    pub normal_word: GroupoidWord,
    pub shift: i64,
    pub trace: ReductionTrace,
}

/// Classifies a brick object with no negative self-extensions.
pub fn classify_spherical(c: &Category, x: &CObject) -> Result<Classification> {
    let x = c.minimalize(x)?;
    if x.is_zero() {
        return Err(DerivedError::ZeroObject);
    }
    let end = c.rhom(&x, &x).get(&0).copied().unwrap_or(0);
    if end != 1 {
        return Err(DerivedError::NotBrick(format!("dim End = {end}")));
    }
    let r = reduce_with(c, &x, false)?;
    let label = match r.labels.as_slice() {
        [l] => l.clone(),
        _ => return Err(DerivedError::Internal(format!("terminal module {:?} is not a brick", r.labels))),
    };
    let mut simple_word = r.word.clone();
    let mut normal_word = r.word.clone();
    let (simple, normal) = match label.as_str() {
        "S1" | "S2" => (label.clone(), label.clone()),
        "M1" => {
            simple_word.push(Letter::Phi(2, 1));
            ("S1".to_string(), "M1".to_string())
        }
        "M2" => {
            simple_word.push(Letter::Phi(1, 1));
            normal_word.push(Letter::Phi(1, 1));
            ("S2".to_string(), "S2".to_string())
        }
        other => return Err(DerivedError::Internal(format!("unexpected terminal brick {other}"))),
    };
    Ok(Classification {
        simple,
        simple_word,
        normal_form: normal,
        normal_word,
        shift: -r.degree,
        trace: r.trace,
    })
}
