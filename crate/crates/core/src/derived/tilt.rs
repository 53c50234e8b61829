//! Two-summand semi-free objects with a strict action of the dg algebra, and the
//! functors `Hom(T, -)` they define. Images of `a` and `b` are given; the images of
//! `as`, `bs`, `t1`, `t2` are solved for by linear algebra over bounded-length words.

use std::collections::BTreeMap;

use super::gamma::{coordinates, enumerate_words, solve_sparse, GElem, Gen, SemiFree, SfElem, SfMap, Word, GENS};
use super::DerivedError;
use crate::linalg::{Field, Scalar};

/// Longest word tried when solving for the higher images.
pub const MAX_WORD: usize = 6;

#[derive(Debug, Clone)]
pub struct Tilt {
    pub name: String,
    /// `summands[v]` represents the new vertex `v`.
    pub summands: [SemiFree; 2],
    /// `images[g]` maps `summands[g.target()]` to `summands[g.source()]`.
    pub images: Vec<SfMap>,
}

impl Tilt {
    fn map_between(&self, g: Gen) -> (&SemiFree, &SemiFree) {
        (&self.summands[g.target()], &self.summands[g.source()])
    }

    /// Image of a word `g1 … gk`, i.e. `img(g1) ∘ … ∘ img(gk)`.
    pub fn word_image(&self, f: Field, w: &[Gen]) -> SfMap {
        let mut acc: Option<SfMap> = None;
        for &g in w.iter().rev() {
            let tgt_len = self.summands[g.source()].len();
            acc = Some(match acc {
                None => self.images[g.index()].clone(),
                Some(m) => self.images[g.index()].compose(f, tgt_len, &m),
            });
        }
        acc.expect("non-empty word")
    }

    /// Checks `d² = 0` on the summands and `δ img(g) = img(dg)` for every generator.
    pub fn verify(&self, f: Field) -> bool {
        if !self.summands.iter().all(|s| s.d_squared_zero(f)) {
            return false;
        }
        GENS.iter().all(|&g| {
            let (src, tgt) = self.map_between(g);
            let mut lhs = self.images[g.index()].boundary(f, src, tgt);
            for (c, w) in g.differential() {
                lhs.axpy(f, &f.from_i64(-c), &self.word_image(f, &w));
            }
            lhs.is_zero()
        })
    }

    /// Fills in the images of `as`, `bs`, `t1`, `t2` given those of `a` and `b`.
    pub fn complete(
        f: Field,
        name: &str,
        summands: [SemiFree; 2],
        img_a: SfMap,
        img_b: SfMap,
    ) -> Result<Tilt, DerivedError> {
        let unknowns = [Gen::As, Gen::Bs, Gen::T1, Gen::T2];
        let mut partial = Tilt {
            name: name.into(),
            images: GENS
                .iter()
                .map(|&g| SfMap::zero(&summands[g.target()], &summands[g.source()], g.degree()))
                .collect(),
            summands,
        };
        partial.images[Gen::A.index()] = img_a;
        partial.images[Gen::B.index()] = img_b;
        let ia = partial.images[Gen::A.index()].clone();
        let ib = partial.images[Gen::B.index()].clone();
        let s0 = partial.summands[0].len();
        let s1 = partial.summands[1].len();

        type Key = (usize, usize, usize, Word);
        let tag = |eq: usize, m: &SfMap| -> BTreeMap<Key, Scalar> {
            coordinates(m).into_iter().map(|((k, l, w), c)| ((eq, k, l, w), c)).collect()
        };
        let mut vars: Vec<(Gen, usize, usize, Word)> = Vec::new();
        let mut columns: Vec<BTreeMap<Key, Scalar>> = Vec::new();
        for (ui, &u) in unknowns.iter().enumerate() {
            let (src, tgt) = partial.map_between(u);
            for (k, &(kv, kd)) in src.gens.iter().enumerate() {
                for (l, &(lv, ld)) in tgt.gens.iter().enumerate() {
                    for w in enumerate_words(lv, kv, u.degree() + kd - ld, MAX_WORD) {
                        let mut x = SfMap::zero(src, tgt, u.degree());
                        x.cols[k][l] = GElem::word(f, w.clone());
                        let mut col = tag(ui, &x.boundary(f, src, tgt));
                        let mut extra = |eq: usize, m: SfMap, sign: i64| {
                            for (key, c) in tag(eq, &m) {
                                let e = col.entry(key).or_insert_with(|| f.zero());
                                *e = f.add(e, &f.mul(&c, &f.from_i64(sign)));
                            }
                        };
                        match u {
                            Gen::As => {
                                extra(2, ia.compose(f, s0, &x), -1);
                                extra(3, x.compose(f, s1, &ia), -1);
                            }
                            Gen::Bs => {
                                extra(2, x.compose(f, s0, &ib), 1);
                                extra(3, ib.compose(f, s1, &x), 1);
                            }
                            _ => {}
                        }
                        col.retain(|_, c| !c.is_zero());
                        vars.push((u, k, l, w));
                        columns.push(col);
                    }
                }
            }
        }
        // constants: -img(bab) and -img(aba) in the first two equations
        let mut target: BTreeMap<Key, Scalar> = BTreeMap::new();
        for (eq, w) in [(0, vec![Gen::B, Gen::A, Gen::B]), (1, vec![Gen::A, Gen::B, Gen::A])] {
            target.extend(tag(eq, &partial.word_image(f, &w)));
        }
        let sol = solve_sparse(f, &columns, &target)
            .ok_or_else(|| DerivedError::Internal(format!("no strict action for {name}")))?;
        for ((u, k, l, w), c) in vars.into_iter().zip(sol) {
            if !c.is_zero() {
                partial.images[u.index()].cols[k][l].add_term(f, w, &c);
            }
        }
        if !partial.verify(f) {
            return Err(DerivedError::Internal(format!("action check failed for {name}")));
        }
        Ok(partial)
    }
}

/// Swap of the two vertices: `a <-> b`, `as <-> bs`, `t1 -> -t2`, `t2 -> -t1`.
fn sigma_gen(g: Gen) -> (Gen, i64) {
    match g {
        Gen::A => (Gen::B, 1),
        Gen::B => (Gen::A, 1),
        Gen::As => (Gen::Bs, 1),
        Gen::Bs => (Gen::As, 1),
        Gen::T1 => (Gen::T2, -1),
        Gen::T2 => (Gen::T1, -1),
    }
}

fn sigma_elem(f: Field, e: &GElem) -> GElem {
    let mut out = GElem::zero();
    for (w, c) in &e.0 {
        let mut sign = 1;
        let nw: Word = w
            .iter()
            .map(|&g| {
                let (h, s) = sigma_gen(g);
                sign *= s;
                h
            })
            .collect();
        out.add_term(f, nw, &f.mul(c, &f.from_i64(sign)));
    }
    out
}

fn sigma_sf(f: Field, s: &SemiFree) -> SemiFree {
    SemiFree {
        gens: s.gens.iter().map(|&(v, d)| (1 - v, d)).collect(),
        diff: s.diff.iter().map(|x| sigma_col(f, x)).collect(),
    }
}

fn sigma_col(f: Field, x: &SfElem) -> SfElem {
    x.iter().map(|e| sigma_elem(f, e)).collect()
}

fn sigma_map(f: Field, m: &SfMap) -> SfMap {
    SfMap {
        degree: m.degree,
        cols: m.cols.iter().map(|c| sigma_col(f, c)).collect(),
    }
}

fn el(f: Field, terms: &[(i64, &[Gen])]) -> GElem {
    GElem::from_terms(f, terms)
}

fn one(f: Field) -> GElem {
    GElem::word(f, Vec::new())
}

/// Which functor a tilt realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Functor {
    /// Mutation at a vertex (0 or 1), forwards or backwards.
    Mutation(usize, bool),
    /// Spherical twist around a simple, forwards or backwards.
    Twist(usize, bool),
}

/// Data at vertex 1 (index 0): summand for the changed vertex, images of the two arrows.
fn vertex_one_data(f: Field, which: Functor) -> (SemiFree, SfMap, SfMap) {
    use Gen::*;
    let z = GElem::zero;
    let map = |cols: Vec<SfElem>| SfMap { degree: 0, cols };
    match which {
        Functor::Mutation(_, true) => {
            // η (v2, 0), θ (v1, -1), dθ = η b
            let s = SemiFree {
                gens: vec![(1, 0), (0, -1)],
                diff: vec![vec![z(), z()], vec![el(f, &[(1, &[B])]), z()]],
            };
            let a = map(vec![vec![one(f), z()]]);
            let b = map(vec![vec![el(f, &[(1, &[B, A])])], vec![el(f, &[(1, &[As])])]]);
            (s, a, b)
        }
        Functor::Mutation(_, false) => {
            // κ (v1, 1), ζ0 (v2, 0), dζ0 = κ a
            let s = SemiFree {
                gens: vec![(0, 1), (1, 0)],
                diff: vec![vec![z(), z()], vec![el(f, &[(1, &[A])]), z()]],
            };
            let a = map(vec![vec![el(f, &[(1, &[Bs])]), el(f, &[(1, &[B, A])])]]);
            let b = map(vec![vec![z()], vec![one(f)]]);
            (s, a, b)
        }
        Functor::Twist(_, true) => {
            // ζ0 (v2, 0), ζ1 (v2, -1), ζ2 (v1, -2)
            let s = SemiFree {
                gens: vec![(1, 0), (1, -1), (0, -2)],
                diff: vec![
                    vec![z(), z(), z()],
                    vec![el(f, &[(-1, &[B, A])]), z(), z()],
                    vec![el(f, &[(-1, &[As])]), el(f, &[(-1, &[B])]), z()],
                ],
            };
            let a = map(vec![vec![one(f), z(), z()]]);
            let b = map(vec![
                vec![el(f, &[(1, &[B, A])])],
                vec![el(f, &[(-1, &[As, A])])],
                vec![el(f, &[(1, &[T2, B]), (-1, &[B, T1])])],
            ]);
            (s, a, b)
        }
        Functor::Twist(_, false) => {
            // κ2 (v1, 2), κ1 (v2, 1), κ0 (v2, 0)
            let s = SemiFree {
                gens: vec![(0, 2), (1, 1), (1, 0)],
                diff: vec![
                    vec![z(), z(), z()],
                    vec![el(f, &[(1, &[A])]), z(), z()],
                    vec![el(f, &[(-1, &[Bs])]), el(f, &[(1, &[B, A])]), z()],
                ],
            };
            let a = map(vec![vec![
                el(f, &[(-1, &[T1, A])]),
                el(f, &[(1, &[As, A])]),
                el(f, &[(1, &[B, A])]),
            ]]);
            let b = map(vec![vec![z()], vec![z()], vec![one(f)]]);
            (s, a, b)
        }
    }
}

/// The tilt realizing a functor, for the given field.
pub fn build_tilt(f: Field, which: Functor) -> Result<Tilt, DerivedError> {
    let (vertex, name) = match which {
        Functor::Mutation(v, fwd) => (v, format!("Phi{}{}", v + 1, if fwd { "" } else { "^-1" })),
        Functor::Twist(v, fwd) => (v, format!("T_S{}{}", v + 1, if fwd { "" } else { "^-1" })),
    };
    if vertex > 1 {
        return Err(DerivedError::Range(format!("no vertex {}", vertex + 1)));
    }
    let (s, a, b) = vertex_one_data(f, which);
    if vertex == 0 {
        Tilt::complete(f, &name, [s, SemiFree::free(1)], a, b)
    } else {
        let s2 = sigma_sf(f, &s);
        let (a2, b2) = (sigma_map(f, &b), sigma_map(f, &a));
        Tilt::complete(f, &name, [SemiFree::free(0), s2], a2, b2)
    }
}
