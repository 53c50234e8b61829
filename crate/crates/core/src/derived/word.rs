//! Words in the mutation functors and shifts, with a pointer into the six chambers.

use std::fmt;

use serde::Serialize;

use super::{DerivedError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Letter {
    /// `Φ_i` (i = 1, 2) with exponent ±1.
    Phi(u8, i8),
    /// `[k]`.
    Shift(i64),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Phi(i, 1) => write!(f, "Phi{i}"),
            Letter::Phi(i, _) => write!(f, "Phi{i}^-1"),
            Letter::Shift(k) => write!(f, "[{k}]"),
        }
    }
}

/// A chamber is a permutation of three lines; `Φ_i^{±1}` crosses the wall `i`.
pub type Chamber = [u8; 3];

pub const BASE_CHAMBER: Chamber = [0, 1, 2];

fn cross(c: Chamber, i: u8) -> Chamber {
    let mut c = c;
    c.swap(i as usize - 1, i as usize);
    c
}

/// Even chambers carry the contraction algebra of the base, odd ones its mutation.
pub fn chamber_parity(c: Chamber) -> u8 {
    let mut inv = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            if c[i] > c[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupoidWord {
    pub start: Chamber,
    pub letters: Vec<Letter>,
}

impl Default for GroupoidWord {
    fn default() -> Self {
        GroupoidWord::new()
    }
}

impl GroupoidWord {
    pub fn new() -> GroupoidWord {
        GroupoidWord {
            start: BASE_CHAMBER,
            letters: Vec::new(),
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> GroupoidWord {
        GroupoidWord {
            start: BASE_CHAMBER,
            letters,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    pub fn extend(&mut self, other: &GroupoidWord) {
        self.letters.extend_from_slice(&other.letters);
    }

    /// Chambers visited, starting with `start`.
    pub fn chambers(&self) -> Vec<Chamber> {
        let mut out = vec![self.start];
        let mut c = self.start;
        for l in &self.letters {
            if let Letter::Phi(i, _) = l {
                c = cross(c, *i);
                out.push(c);
            }
        }
        out
    }

    pub fn end(&self) -> Chamber {
        *self.chambers().last().expect("start is always present")
    }

    pub fn closes(&self) -> bool {
        self.end() == self.start
    }

    /// Net shift carried by the shift letters.
    pub fn net_shift(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| if let Letter::Shift(k) = l { *k } else { 0 })
            .sum()
    }

    /// Inverse word: reversed, exponents and shifts negated.
    pub fn inverse(&self) -> GroupoidWord {
        GroupoidWord {
            start: self.end(),
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| match *l {
                    Letter::Phi(i, e) => Letter::Phi(i, -e),
                    Letter::Shift(k) => Letter::Shift(-k),
                })
                .collect(),
        }
    }

    /// Mutation letters after free cancellation, shifts dropped.
    pub fn reduced_phis(&self) -> Vec<(u8, i8)> {
        let mut out: Vec<(u8, i8)> = Vec::new();
        for l in &self.letters {
            if let Letter::Phi(i, e) = *l {
                if out.last() == Some(&(i, -e)) {
                    out.pop();
                } else {
                    out.push((i, e));
                }
            }
        }
        out
    }

    /// Rewrites a closed word in the letters `a^{±2} = Φ1^{±2}`, `b^{±2} = Φ2^{±2}`
    /// when its reduced form splits into such squares.
    pub fn pure_braid(&self) -> Option<String> {
        if !self.closes() {
            return None;
        }
        let r = self.reduced_phis();
        if r.len() % 2 == 1 {
            return None;
        }
        let mut parts = Vec::new();
        for pair in r.chunks(2) {
            if pair[0] != pair[1] {
                return None;
            }
            let (i, e) = pair[0];
            let name = if i == 1 { "a" } else { "b" };
            parts.push(if e > 0 { format!("{name}^2") } else { format!("{name}^-2") });
        }
        if parts.is_empty() {
            return Some("1".into());
        }
        Some(parts.join(" "))
    }

    /// Parses letters such as `Phi1 Phi2^-1 [1] a^2 b^-2`.
    pub fn parse(s: &str) -> Result<GroupoidWord> {
        let mut w = GroupoidWord::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',' || c == '*').filter(|t| !t.is_empty()) {
            let bad = || DerivedError::Range(format!("bad word letter {tok:?}"));
            if let Some(inner) = tok.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                w.push(Letter::Shift(inner.parse().map_err(|_| bad())?));
                continue;
            }
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let i = match base {
                "Phi1" | "P1" => 1,
                "Phi2" | "P2" => 2,
                "a" => {
                    if exp.abs() != 2 {
                        return Err(bad());
                    }
                    1
                }
                "b" => {
                    if exp.abs() != 2 {
                        return Err(bad());
                    }
                    2
                }
                _ => return Err(bad()),
            };
            if exp == 0 {
                return Err(bad());
            }
            for _ in 0..exp.abs() {
                w.push(Letter::Phi(i, exp.signum() as i8));
            }
        }
        Ok(w)
    }
}

impl fmt::Display for GroupoidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chambers_and_pure_braids() {
        let w = GroupoidWord::parse("Phi1 Phi2 Phi1").unwrap();
        assert_eq!(w.end(), [2, 1, 0]);
        assert!(!w.closes());
        let v = GroupoidWord::parse("Phi1 Phi2 Phi1 Phi2 Phi1 Phi2").unwrap();
        assert!(v.closes());
        let p = GroupoidWord::parse("a^2 b^-2 [3]").unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.pure_braid().as_deref(), Some("a^2 b^-2"));
        assert_eq!(p.net_shift(), 3);
        assert_eq!(p.inverse().inverse(), p);
        assert!(GroupoidWord::parse("Phi3").is_err());
        assert_eq!(chamber_parity(w.end()), 1);
    }
}
