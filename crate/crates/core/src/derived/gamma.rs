//! The dg path algebra on the two-cycle that models the category at k = 1.
//!
//! Generators: `a: 1 -> 2`, `b: 2 -> 1` in degree 0, `as: 2 -> 1`, `bs: 1 -> 2` in
//! degree -1, loops `t1`, `t2` in degree -2. Differential:
//! `d(as) = b a b`, `d(bs) = a b a`, `d(t1) = a as - bs b`, `d(t2) = as a - b bs`.
//! Paths compose left to right. Degree-zero cohomology is the contraction algebra
//! with `aba = bab = 0`.

use std::collections::BTreeMap;

use crate::linalg::{Field, Matrix, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    A,
    B,
    As,
    Bs,
    T1,
    T2,
}

pub const GENS: [Gen; 6] = [Gen::A, Gen::B, Gen::As, Gen::Bs, Gen::T1, Gen::T2];

impl Gen {
    pub fn index(self) -> usize {
        self as usize
    }

    /// Source vertex, 0 for vertex 1 and 1 for vertex 2.
    pub fn source(self) -> usize {
        match self {
            Gen::A | Gen::Bs | Gen::T1 => 0,
            Gen::B | Gen::As | Gen::T2 => 1,
        }
    }

    pub fn target(self) -> usize {
        match self {
            Gen::B | Gen::As | Gen::T1 => 0,
            Gen::A | Gen::Bs | Gen::T2 => 1,
        }
    }

    pub fn degree(self) -> i64 {
        match self {
            Gen::A | Gen::B => 0,
            Gen::As | Gen::Bs => -1,
            Gen::T1 | Gen::T2 => -2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Gen::A => "a",
            Gen::B => "b",
            Gen::As => "as",
            Gen::Bs => "bs",
            Gen::T1 => "t1",
            Gen::T2 => "t2",
        }
    }

    pub fn differential(self) -> Vec<(i64, Vec<Gen>)> {
        use Gen::*;
        match self {
            A | B => vec![],
            As => vec![(1, vec![B, A, B])],
            Bs => vec![(1, vec![A, B, A])],
            T1 => vec![(1, vec![A, As]), (-1, vec![Bs, B])],
            T2 => vec![(1, vec![As, A]), (-1, vec![B, Bs])],
        }
    }
}

pub type Word = Vec<Gen>;

pub fn word_degree(w: &[Gen]) -> i64 {
    w.iter().map(|g| g.degree()).sum()
}

pub fn word_label(w: &[Gen]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|g| g.label()).collect::<Vec<_>>().join(" ")
}

/// Words from `u` to `v` of the given degree and length at most `max_len`.
pub fn enumerate_words(u: usize, v: usize, degree: i64, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, i64, Word)> = vec![(u, 0, Vec::new())];
    while let Some((at, deg, w)) = stack.pop() {
        if at == v && deg == degree {
            out.push(w.clone());
        }
        if w.len() == max_len {
            continue;
        }
        for g in GENS {
            // degrees only decrease along a word
            if g.source() == at && deg + g.degree() >= degree {
                let mut w2 = w.clone();
                w2.push(g);
                stack.push((g.target(), deg + g.degree(), w2));
            }
        }
    }
    out.sort();
    out
}

/// A linear combination of words sharing endpoints; the empty word is the idempotent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GElem(pub BTreeMap<Word, Scalar>);

impl GElem {
    pub fn zero() -> GElem {
        GElem(BTreeMap::new())
    }

    pub fn word(f: Field, w: Word) -> GElem {
        let mut e = GElem::zero();
        e.add_term(f, w, &f.one());
        e
    }

    pub fn from_terms(f: Field, terms: &[(i64, &[Gen])]) -> GElem {
        let mut e = GElem::zero();
        for (c, w) in terms {
            e.add_term(f, w.to_vec(), &f.from_i64(*c));
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, f: Field, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let cancelled = {
            let e = self.0.entry(w.clone()).or_insert_with(|| f.zero());
            *e = f.add(e, c);
            e.is_zero()
        };
        if cancelled {
            self.0.remove(&w);
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, f: Field, c: &Scalar, other: &GElem) {
        for (w, v) in &other.0 {
            self.add_term(f, w.clone(), &f.mul(c, v));
        }
    }

    pub fn scaled(&self, f: Field, c: &Scalar) -> GElem {
        let mut e = GElem::zero();
        e.axpy(f, c, self);
        e
    }

    pub fn mul(&self, f: Field, other: &GElem) -> GElem {
        let mut e = GElem::zero();
        for (w1, c1) in &self.0 {
            for (w2, c2) in &other.0 {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                e.add_term(f, w, &f.mul(c1, c2));
            }
        }
        e
    }

    /// Graded Leibniz rule.
    pub fn d(&self, f: Field) -> GElem {
        let mut e = GElem::zero();
        for (w, c) in &self.0 {
            let mut pre = 0;
            for (j, g) in w.iter().enumerate() {
                let sign = if pre % 2 == 0 { 1 } else { -1 };
                for (k, dw) in g.differential() {
                    let mut nw = w[..j].to_vec();
                    nw.extend_from_slice(&dw);
                    nw.extend_from_slice(&w[j + 1..]);
                    e.add_term(f, nw, &f.mul(c, &f.from_i64(sign * k)));
                }
                pre += g.degree();
            }
        }
        e
    }

    pub fn display(&self) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        self.0
            .iter()
            .map(|(w, c)| format!("{c}*({})", word_label(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Module element `sum_l gen_l * coeffs[l]`.
pub type SfElem = Vec<GElem>;

/// Semi-free right module with finitely many generators `(vertex, degree)`;
/// `diff[k]` is `d(gen_k)`.
#[derive(Debug, Clone)]
pub struct SemiFree {
    pub gens: Vec<(usize, i64)>,
    pub diff: Vec<SfElem>,
}

impl SemiFree {
    pub fn free(vertex: usize) -> SemiFree {
        SemiFree {
            gens: vec![(vertex, 0)],
            diff: vec![vec![GElem::zero()]],
        }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn zero_elem(&self) -> SfElem {
        vec![GElem::zero(); self.gens.len()]
    }

    /// `d(sum gen_l γ_l) = sum d(gen_l) γ_l + (-1)^{|gen_l|} gen_l dγ_l`.
    pub fn apply_d(&self, f: Field, x: &[GElem]) -> SfElem {
        let mut out = self.zero_elem();
        for (l, g) in x.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            for (m, c) in self.diff[l].iter().enumerate() {
                if !c.is_zero() {
                    let t = c.mul(f, g);
                    out[m].axpy(f, &f.one(), &t);
                }
            }
            let sign = if self.gens[l].1 % 2 == 0 { f.one() } else { f.from_i64(-1) };
            out[l].axpy(f, &sign, &g.d(f));
        }
        out
    }

    pub fn d_squared_zero(&self, f: Field) -> bool {
        self.diff.iter().all(|x| self.apply_d(f, x).iter().all(GElem::is_zero))
    }
}

/// Right-linear map of semi-free modules; `cols[k]` is the image of source generator `k`.
#[derive(Debug, Clone)]
pub struct SfMap {
    pub degree: i64,
    pub cols: Vec<SfElem>,
}

impl SfMap {
    pub fn zero(src: &SemiFree, tgt: &SemiFree, degree: i64) -> SfMap {
        SfMap {
            degree,
            cols: vec![tgt.zero_elem(); src.len()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(GElem::is_zero))
    }

    /// Image of an element of the source.
    pub fn apply(&self, f: Field, tgt_len: usize, x: &[GElem]) -> SfElem {
        let mut out = vec![GElem::zero(); tgt_len];
        for (k, g) in x.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            for (m, c) in self.cols[k].iter().enumerate() {
                if !c.is_zero() {
                    out[m].axpy(f, &f.one(), &c.mul(f, g));
                }
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, f: Field, tgt_len: usize, other: &SfMap) -> SfMap {
        SfMap {
            degree: self.degree + other.degree,
            cols: other.cols.iter().map(|c| self.apply(f, tgt_len, c)).collect(),
        }
    }

    pub fn axpy(&mut self, f: Field, c: &Scalar, other: &SfMap) {
        for (x, y) in self.cols.iter_mut().zip(&other.cols) {
            for (u, v) in x.iter_mut().zip(y) {
                u.axpy(f, c, v);
            }
        }
    }

    /// `δF = d∘F - (-1)^|F| F∘d`.
    pub fn boundary(&self, f: Field, src: &SemiFree, tgt: &SemiFree) -> SfMap {
        let sign = if self.degree % 2 == 0 { f.from_i64(-1) } else { f.one() };
        let cols = (0..src.len())
            .map(|k| {
                let mut x = tgt.apply_d(f, &self.cols[k]);
                let y = self.apply(f, tgt.len(), &src.diff[k]);
                for (u, v) in x.iter_mut().zip(&y) {
                    u.axpy(f, &sign, v);
                }
                x
            })
            .collect();
        SfMap {
            degree: self.degree + 1,
            cols,
        }
    }
}

/// Sparse coordinates `(source gen, target gen, word) -> coefficient` of a map.
pub(crate) fn coordinates(m: &SfMap) -> BTreeMap<(usize, usize, Word), Scalar> {
    let mut out = BTreeMap::new();
    for (k, col) in m.cols.iter().enumerate() {
        for (l, e) in col.iter().enumerate() {
            for (w, c) in &e.0 {
                out.insert((k, l, w.clone()), c.clone());
            }
        }
    }
    out
}

/// Dense solve of `sum_j x_j v_j = target` over sparse vectors.
pub(crate) fn solve_sparse<K: Ord + Clone>(
    f: Field,
    columns: &[BTreeMap<K, Scalar>],
    target: &BTreeMap<K, Scalar>,
) -> Option<Vec<Scalar>> {
    let mut keys: BTreeMap<K, usize> = BTreeMap::new();
    for c in columns.iter().chain(std::iter::once(target)) {
        for k in c.keys() {
            let n = keys.len();
            keys.entry(k.clone()).or_insert(n);
        }
    }
    let mut a = Matrix::zeros(f, keys.len(), columns.len());
    for (j, c) in columns.iter().enumerate() {
        for (k, v) in c {
            a.set(keys[k], j, v.clone());
        }
    }
    let mut b = Matrix::zeros(f, keys.len(), 1);
    for (k, v) in target {
        b.set(keys[k], 0, v.clone());
    }
    let x = a.solve(&b).ok()??;
    Some((0..columns.len()).map(|j| x.get(j, 0).clone()).collect())
}
