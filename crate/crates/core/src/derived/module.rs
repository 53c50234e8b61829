//! Finite-dimensional dg modules over the two-cycle dg algebra.
//!
//! A module stores, per vertex, a homogeneous basis with degrees, the differential,
//! and one matrix per generator acting on column vectors (`v·g = ops[g] v`). Right
//! module sign rule: `d(v·g) = dv·g + (-1)^|v| v·dg`.

use std::collections::BTreeMap;

use super::gamma::{GElem, Gen, SemiFree, GENS};
use super::tilt::Tilt;
use super::DerivedError;
use crate::fdrep::Rep;
use crate::linalg::{Field, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CObject {
    pub field: Field,
    pub degs: [Vec<i64>; 2],
    pub d: [Matrix; 2],
    pub ops: Vec<Matrix>,
}

fn sign(f: Field, n: i64) -> crate::linalg::Scalar {
    if n.rem_euclid(2) == 0 {
        f.one()
    } else {
        f.from_i64(-1)
    }
}

impl CObject {
    pub fn zero(f: Field) -> CObject {
        CObject::from_parts(f, [Vec::new(), Vec::new()])
    }

    /// All maps zero on the given graded basis.
    pub fn from_parts(f: Field, degs: [Vec<i64>; 2]) -> CObject {
        let n = [degs[0].len(), degs[1].len()];
        CObject {
            field: f,
            d: [Matrix::zeros(f, n[0], n[0]), Matrix::zeros(f, n[1], n[1])],
            ops: GENS.iter().map(|g| Matrix::zeros(f, n[g.target()], n[g.source()])).collect(),
            degs,
        }
    }

    /// A contraction-algebra module placed in one degree.
    pub fn from_rep(rep: &Rep, degree: i64) -> CObject {
        let f = rep.maps.first().map(|m| m.field()).unwrap_or(Field::Rational);
        CObject::from_rep_in(f, rep, degree)
    }

    pub fn from_rep_in(f: Field, rep: &Rep, degree: i64) -> CObject {
        let mut m = CObject::from_parts(f, [vec![degree; rep.dims[0]], vec![degree; rep.dims[1]]]);
        m.ops[Gen::A.index()] = rep.maps[0].clone();
        m.ops[Gen::B.index()] = rep.maps[1].clone();
        m
    }

    pub fn dim(&self, v: usize) -> usize {
        self.degs[v].len()
    }

    pub fn total_dim(&self) -> usize {
        self.dim(0) + self.dim(1)
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Whether the differential vanishes.
    pub fn is_minimal(&self) -> bool {
        self.d.iter().all(Matrix::is_zero)
    }

    /// Operator of a word `g1 … gk`, i.e. `ops[gk] ⋯ ops[g1]`; `None` for the empty word.
    pub fn word_op(&self, w: &[Gen]) -> Option<Matrix> {
        let mut acc: Option<Matrix> = None;
        for g in w {
            let m = &self.ops[g.index()];
            acc = Some(match acc {
                None => m.clone(),
                Some(a) => m.mul(&a),
            });
        }
        acc
    }

    /// Operator of an element with endpoints `u -> v`.
    pub fn elem_op(&self, e: &GElem, u: usize, v: usize) -> Matrix {
        let f = self.field;
        let mut out = Matrix::zeros(f, self.dim(v), self.dim(u));
        for (w, c) in &e.0 {
            let m = match self.word_op(w) {
                Some(m) => m,
                None => Matrix::identity(f, self.dim(u)),
            };
            out = out.add(&m.scale(c));
        }
        out
    }

    fn parity(&self, v: usize) -> Matrix {
        let f = self.field;
        let n = self.dim(v);
        let mut s = Matrix::zeros(f, n, n);
        for (i, &d) in self.degs[v].iter().enumerate() {
            s.set(i, i, sign(f, d));
        }
        s
    }

    /// Checks homogeneity, `d² = 0` and the Leibniz rule for every generator.
    pub fn validate(&self) -> Result<(), DerivedError> {
        let bad = |m: &str| Err(DerivedError::BadModule(m.into()));
        for v in 0..2 {
            if !self.d[v].mul(&self.d[v]).is_zero() {
                return bad("d² is not zero");
            }
            if !self.homogeneous(&self.d[v], v, v, 1) {
                return bad("d is not of degree 1");
            }
        }
        for g in GENS {
            let (s, t) = (g.source(), g.target());
            let x = &self.ops[g.index()];
            if !self.homogeneous(x, s, t, g.degree()) {
                return bad(&format!("{} has the wrong degree", g.label()));
            }
            let mut dg = GElem::zero();
            for (c, w) in g.differential() {
                dg.add_term(self.field, w, &self.field.from_i64(c));
            }
            let lhs = self.d[t].mul(x);
            let rhs = x.mul(&self.d[s]).add(&self.elem_op(&dg, s, t).mul(&self.parity(s)));
            if lhs != rhs {
                return bad(&format!("Leibniz rule fails for {}", g.label()));
            }
        }
        Ok(())
    }

    fn homogeneous(&self, m: &Matrix, s: usize, t: usize, deg: i64) -> bool {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !m.get(r, c).is_zero() && self.degs[t][r] != self.degs[s][c] + deg {
                    return false;
                }
            }
        }
        true
    }

    /// `X[k]`: degrees drop by `k`, the differential picks up `(-1)^k`.
    pub fn shift(&self, k: i64) -> CObject {
        let f = self.field;
        let mut m = self.clone();
        for v in 0..2 {
            m.degs[v] = self.degs[v].iter().map(|d| d - k).collect();
            m.d[v] = self.d[v].scale(&sign(f, k));
        }
        m
    }

    pub fn direct_sum(&self, other: &CObject) -> CObject {
        let f = self.field;
        let degs = [0, 1].map(|v| {
            let mut d = self.degs[v].clone();
            d.extend_from_slice(&other.degs[v]);
            d
        });
        CObject {
            field: f,
            d: [0, 1].map(|v| self.d[v].direct_sum(&other.d[v])),
            ops: GENS.iter().map(|g| self.ops[g.index()].direct_sum(&other.ops[g.index()])).collect(),
            degs,
        }
    }

    /// Lowest and highest degree carrying a basis vector.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let all = self.degs[0].iter().chain(&self.degs[1]);
        Some((*all.clone().min()?, *all.max()?))
    }

    /// `Hom(T, self)` as a dg module, one summand of `T` per new vertex.
    pub fn apply_tilt(&self, t: &Tilt) -> CObject {
        let f = self.field;
        let layouts = [0, 1].map(|u| HomLayout::new(&t.summands[u], self));
        let d = [0, 1].map(|u| layouts[u].differential(&t.summands[u], self));
        let ops = GENS
            .iter()
            .map(|&g| {
                let (src, tgt) = (&layouts[g.source()], &layouts[g.target()]);
                let img = &t.images[g.index()];
                let mut m = Matrix::zeros(f, tgt.len(), src.len());
                for (kp, col) in img.cols.iter().enumerate() {
                    for (l, gamma) in col.iter().enumerate() {
                        if gamma.is_zero() {
                            continue;
                        }
                        let (vl, vk) = (src.vertex[l], tgt.vertex[kp]);
                        m.paste(tgt.offset[kp], src.offset[l], &self.elem_op(gamma, vl, vk));
                    }
                }
                m
            })
            .collect();
        CObject {
            field: f,
            degs: [layouts[0].degs.clone(), layouts[1].degs.clone()],
            d,
            ops,
        }
    }

    /// Semi-free resolution: generators `[x]` and `[x|g]` for `g` leaving the vertex of `x`.
    pub fn resolution(&self) -> SemiFree {
        let f = self.field;
        let mut gens = Vec::new();
        let mut base = [Vec::new(), Vec::new()];
        for v in 0..2 {
            for &d in &self.degs[v] {
                base[v].push(gens.len());
                gens.push((v, d));
            }
        }
        let mut bar: BTreeMap<(usize, usize, Gen), usize> = BTreeMap::new();
        for v in 0..2 {
            for (i, &d) in self.degs[v].iter().enumerate() {
                for g in GENS.iter().filter(|g| g.source() == v) {
                    bar.insert((v, i, *g), gens.len());
                    gens.push((g.target(), d + g.degree() - 1));
                }
            }
        }
        let n = gens.len();
        let mut diff = vec![vec![GElem::zero(); n]; n];
        let idem = GElem::word(f, Vec::new());
        for v in 0..2 {
            for i in 0..self.dim(v) {
                let k = base[v][i];
                for j in 0..self.dim(v) {
                    let c = self.d[v].get(j, i);
                    diff[k][base[v][j]].axpy(f, c, &idem);
                }
            }
        }
        // d[x|g] = [x]g - [xg] - [dx|g] - (-1)^|x| Fox(x, dg)
        for (&(v, i, g), &k) in &bar {
            let x_deg = self.degs[v][i];
            diff[k][base[v][i]].add_term(f, vec![g], &f.one());
            let t = g.target();
            for j in 0..self.dim(t) {
                let c = self.ops[g.index()].get(j, i);
                diff[k][base[t][j]].axpy(f, &f.neg(c), &idem);
            }
            for j in 0..self.dim(v) {
                let c = self.d[v].get(j, i);
                if !c.is_zero() {
                    diff[k][bar[&(v, j, g)]].axpy(f, &f.neg(c), &idem);
                }
            }
            let s = f.neg(&sign(f, x_deg));
            for (c, w) in g.differential() {
                let cs = f.mul(&s, &f.from_i64(c));
                // Fox expansion along the word
                let mut vec = Matrix::zeros(f, self.dim(v), 1);
                vec.set(i, 0, f.one());
                let mut at = v;
                for (p, &h) in w.iter().enumerate() {
                    let rest = GElem::word(f, w[p + 1..].to_vec());
                    for j in 0..self.dim(at) {
                        let c2 = vec.get(j, 0);
                        if !c2.is_zero() {
                            diff[k][bar[&(at, j, h)]].axpy(f, &f.mul(&cs, c2), &rest);
                        }
                    }
                    vec = self.ops[h.index()].mul(&vec);
                    at = h.target();
                }
            }
        }
        SemiFree { gens, diff }
    }

    /// Per-degree dimensions of the cohomology of `Hom(R, self)`.
    pub fn hom_cohomology(&self, r: &SemiFree) -> BTreeMap<i64, usize> {
        let lay = HomLayout::new(r, self);
        let d = lay.differential(r, self);
        complex_cohomology(&lay.degs, &d)
    }
}

/// Dimensions of the cohomology of a complex with a homogeneous basis.
pub fn complex_cohomology(degs: &[i64], d: &Matrix) -> BTreeMap<i64, usize> {
    let mut by: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &n) in degs.iter().enumerate() {
        by.entry(n).or_default().push(i);
    }
    let rank_from = |n: i64| -> usize {
        match (by.get(&n), by.get(&(n + 1))) {
            (Some(c), Some(r)) => d.submatrix(r, c).rank(),
            _ => 0,
        }
    };
    let mut out = BTreeMap::new();
    for (&n, idx) in &by {
        let h = idx.len() - rank_from(n) - rank_from(n - 1);
        if h > 0 {
            out.insert(n, h);
        }
    }
    out
}

/// Basis of `Hom(R, X)`: pairs (generator `k`, basis vector of `X` at its vertex).
pub(crate) struct HomLayout {
    pub degs: Vec<i64>,
    pub offset: Vec<usize>,
    pub vertex: Vec<usize>,
}

impl HomLayout {
    pub fn new(r: &SemiFree, x: &CObject) -> HomLayout {
        let mut degs = Vec::new();
        let mut offset = Vec::new();
        let mut vertex = Vec::new();
        for &(v, dk) in &r.gens {
            offset.push(degs.len());
            vertex.push(v);
            degs.extend(x.degs[v].iter().map(|d| d - dk));
        }
        HomLayout { degs, offset, vertex }
    }

    pub fn len(&self) -> usize {
        self.degs.len()
    }

    /// `(δφ)(k) = d φ(k) - (-1)^|φ| φ(dk)`.
    pub fn differential(&self, r: &SemiFree, x: &CObject) -> Matrix {
        let f = x.field;
        let mut m = Matrix::zeros(f, self.len(), self.len());
        for (k0, &v0) in self.vertex.iter().enumerate() {
            m.paste(self.offset[k0], self.offset[k0], &x.d[v0]);
        }
        for (k, dk) in r.diff.iter().enumerate() {
            for (l, gamma) in dk.iter().enumerate() {
                if gamma.is_zero() {
                    continue;
                }
                let (vl, vk) = (self.vertex[l], self.vertex[k]);
                let op = x.elem_op(gamma, vl, vk);
                for c in 0..x.dim(vl) {
                    let col = self.offset[l] + c;
                    let s = f.neg(&sign(f, self.degs[col]));
                    for row in 0..x.dim(vk) {
                        let val = op.get(row, c);
                        if !val.is_zero() {
                            m.add_at(self.offset[k] + row, col, &f.mul(&s, val));
                        }
                    }
                }
            }
        }
        m
    }
}
