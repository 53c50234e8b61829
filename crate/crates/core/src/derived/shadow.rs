//! Cohomology-level shadow of the length reduction, for any `k`.
//!
//! An object is recorded only by the indecomposable summands of its cohomology in
//! each degree. A mutation acts on each summand through a fixed table; summands
//! without a table entry, or degrees receiving contributions from two source
//! degrees (an unresolved extension), are flagged rather than guessed.

use std::collections::BTreeMap;

use serde::Serialize;

use super::word::{chamber_parity, GroupoidWord, Letter};

/// Cohomology summands by degree.
pub type Shadow = BTreeMap<i64, Vec<String>>;

/// Dimension vector of a labelled module, where known.
fn dims(label: &str) -> Option<[usize; 2]> {
    match label {
        "S1" => Some([1, 0]),
        "S2" => Some([0, 1]),
        "M1" | "M2" => Some([1, 1]),
        _ => None,
    }
}

/// `Φ_i^{e}(m)` as `(degree offset, summand)` pairs. These values hold for every `k`
/// and in every chamber.
fn table(i: u8, e: i8, m: &str) -> Option<Vec<(i64, &'static str)>> {
    let out: Vec<(i64, &'static str)> = match (i, e, m) {
        (1, 1, "S1") => vec![(1, "S1")],
        (1, 1, "S2") => vec![(0, "M1")],
        (1, 1, "M2") => vec![(0, "S2")],
        (2, 1, "S2") => vec![(1, "S2")],
        (2, 1, "S1") => vec![(0, "M2")],
        (2, 1, "M1") => vec![(0, "S1")],
        (1, -1, "S1") => vec![(-1, "S1")],
        (1, -1, "M1") => vec![(0, "S2")],
        (1, -1, "S2") => vec![(0, "M2")],
        (2, -1, "S2") => vec![(-1, "S2")],
        (2, -1, "M2") => vec![(0, "S1")],
        (2, -1, "S1") => vec![(0, "M1")],
        _ => return None,
    };
    Some(out)
}

/// A degree whose cohomology is only known up to an extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ambiguity {
    pub degree: i64,
    /// Split bound: the direct sum of all pieces.
    pub split: Vec<String>,
    /// Filtration bound: sub then quotient, as produced by the two source degrees.
    pub sub: Vec<String>,
    pub quotient: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShadowStep {
    pub end: String,
    pub letter: Letter,
    /// Chamber parity after the step: 0 for the base algebra type, 1 for its mutation.
    pub chamber_type: u8,
    pub ell_before: usize,
    pub ell_after: usize,
    pub cohomology: Shadow,
    pub ambiguous: Vec<Ambiguity>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ShadowStatus {
    /// `ℓ = 0` reached.
    Terminal,
    /// A summand has no table entry.
    Unknown(String),
    /// Neither end is a sum of copies of one simple.
    NoPureEnd,
    /// The next step would act on a degree whose extension is unresolved, and the
    /// image could have cancellation; stopped rather than guessed.
    Ambiguous,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShadowReduction {
    pub k: usize,
    pub word: GroupoidWord,
    pub terminal: Shadow,
    pub status: ShadowStatus,
    pub steps: Vec<ShadowStep>,
}

fn pure(pieces: &[String]) -> Option<u8> {
    let mut v = None;
    for p in pieces {
        let i = match p.as_str() {
            "S1" => 1,
            "S2" => 2,
            _ => return None,
        };
        if v.is_some_and(|w| w != i) {
            return None;
        }
        v = Some(i);
    }
    v
}

fn normalize(x: &Shadow) -> Shadow {
    x.iter()
        .filter(|(_, v)| !v.is_empty())
        .map(|(&n, v)| {
            let mut v = v.clone();
            v.sort();
            (n, v)
        })
        .collect()
}

fn ell(x: &Shadow) -> usize {
    match (x.first_key_value(), x.last_key_value()) {
        (Some((&b, _)), Some((&t, _))) => (t - b) as usize,
        _ => 0,
    }
}

/// Image of a shadow under one letter, with the degrees where pieces from two
/// source degrees meet.
fn step(x: &Shadow, i: u8, e: i8) -> Result<(Shadow, Vec<Ambiguity>), String> {
    let mut parts: BTreeMap<i64, BTreeMap<i64, Vec<String>>> = BTreeMap::new();
    for (&n, pieces) in x {
        for p in pieces {
            let img = table(i, e, p).ok_or_else(|| p.clone())?;
            for (off, q) in img {
                parts.entry(n + off).or_default().entry(n).or_default().push(q.to_string());
            }
        }
    }
    let mut out = Shadow::new();
    let mut amb = Vec::new();
    for (deg, by_src) in parts {
        let all: Vec<String> = by_src.values().flatten().cloned().collect();
        if by_src.len() > 1 {
            let mut srcs = by_src.into_values();
            // pieces from the lower source degree come from the truncation below, so form the submodule
            let lo = srcs.next().unwrap_or_default();
            let hi: Vec<String> = srcs.flatten().collect();
            let mut split = all.clone();
            split.sort();
            amb.push(Ambiguity {
                degree: deg,
                split,
                sub: lo,
                quotient: hi,
            });
        }
        out.insert(deg, all);
    }
    Ok((normalize(&out), amb))
}

/// Runs end detection and functor selection on cohomology data alone.
pub fn shadow_reduce(k: usize, x: &Shadow) -> ShadowReduction {
    let mut cur = normalize(x);
    let mut word = GroupoidWord::new();
    let mut steps: Vec<ShadowStep> = Vec::new();
    let mut pending: Vec<i64> = Vec::new();
    let status = loop {
        let l = ell(&cur);
        if l == 0 {
            // a lone M_j is carried to the simple it is paired with
            let single = match cur.values().next().map(Vec::as_slice) {
                Some([m]) if m == "M2" => Some(1),
                Some([m]) if m == "M1" => Some(2),
                _ => None,
            };
            if let Some(i) = single {
                if let Ok((next, amb)) = step(&cur, i, 1) {
                    word.push(Letter::Phi(i, 1));
                    steps.push(ShadowStep {
                        end: "brick".into(),
                        letter: Letter::Phi(i, 1),
                        chamber_type: chamber_parity(word.end()),
                        ell_before: 0,
                        ell_after: 0,
                        cohomology: next.clone(),
                        ambiguous: amb,
                    });
                    cur = next;
                }
            }
            break ShadowStatus::Terminal;
        }
        if cur.values().flatten().any(|p| dims(p).is_none()) {
            let bad = cur.values().flatten().find(|p| dims(p).is_none()).cloned().unwrap_or_default();
            break ShadowStatus::Unknown(bad);
        }
        let hb = cur.first_key_value().expect("nonempty").1;
        let ht = cur.last_key_value().expect("nonempty").1;
        let (end, i, e) = if let Some(i) = pure(hb) {
            ("b", i, 1)
        } else if let Some(i) = pure(ht) {
            ("t", i, -1)
        } else {
            break ShadowStatus::NoPureEnd;
        };
        // acting on an unresolved extension could produce cancellation
        if !pending.is_empty() {
            break ShadowStatus::Ambiguous;
        }
        let (next, amb) = match step(&cur, i, e) {
            Ok(r) => r,
            Err(p) => break ShadowStatus::Unknown(p),
        };
        word.push(Letter::Phi(i, e));
        pending = amb.iter().map(|a| a.degree).collect();
        steps.push(ShadowStep {
            end: end.into(),
            letter: Letter::Phi(i, e),
            chamber_type: chamber_parity(word.end()),
            ell_before: l,
            ell_after: ell(&next),
            cohomology: next.clone(),
            ambiguous: amb,
        });
        cur = next;
    };
    ShadowReduction {
        k,
        word,
        terminal: cur,
        status,
        steps,
    }
}

/// Parses `0:S1,S1;1:S2` into a shadow.
pub fn parse_shadow(s: &str) -> Result<Shadow, String> {
    let mut out = Shadow::new();
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (deg, mods) = part.split_once(':').ok_or_else(|| format!("missing ':' in {part:?}"))?;
        let deg: i64 = deg.trim().parse().map_err(|_| format!("bad degree {deg:?}"))?;
        let entry = out.entry(deg).or_insert_with(Vec::new);
        for m in mods.split(',').map(str::trim).filter(|m| !m.is_empty()) {
            entry.push(m.to_string());
        }
    }
    Ok(normalize(&out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_simple_is_terminal() {
        let r = shadow_reduce(3, &parse_shadow("0:S1").unwrap());
        assert_eq!(r.status, ShadowStatus::Terminal);
        assert!(r.word.is_empty());
    }

    #[test]
    fn m2_reaches_s2_in_one_step() {
        let r = shadow_reduce(2, &parse_shadow("0:M2").unwrap());
        assert_eq!(r.status, ShadowStatus::Terminal);
        assert_eq!(r.word.letters, vec![Letter::Phi(1, 1)]);
        assert_eq!(r.terminal, parse_shadow("0:S2").unwrap());
    }

    #[test]
    fn pure_bottom_selects_phi1() {
        let x = parse_shadow("0:S1,S1;1:S2").unwrap();
        let r = shadow_reduce(2, &x);
        assert_eq!(r.steps[0].letter, Letter::Phi(1, 1));
        assert!(r.steps[0].ell_after < r.steps[0].ell_before);
        assert_eq!(r.status, ShadowStatus::Terminal);
        assert_eq!(r.steps[0].ambiguous.len(), 1);
        let a = &r.steps[0].ambiguous[0];
        assert_eq!(a.split, vec!["M1", "S1", "S1"]);
        assert_eq!(a.sub, vec!["S1", "S1"]);
        assert_eq!(a.quotient, vec!["M1"]);
    }

    #[test]
    fn lengths_drop() {
        let x = parse_shadow("-2:S2;0:S1").unwrap();
        let r = shadow_reduce(4, &x);
        for s in &r.steps {
            assert!(s.ell_after < s.ell_before);
        }
    }
}
