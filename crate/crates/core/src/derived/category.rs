//! Cohomology, RHom, minimal models and fingerprints for objects at k = 1.

use std::collections::BTreeMap;

use serde::Serialize;

use super::gamma::GENS;
use super::module::CObject;
use super::tilt::{build_tilt, Functor, Tilt};
use super::{DerivedError, Result};
use crate::fdrep::{decompose, is_isomorphic, lambda_con, named_modules, FDAlgebra, Rep};
use crate::linalg::{Field, Matrix};

/// Homogeneous subspace of an object: columns per (vertex, degree).
type Graded = [BTreeMap<i64, Matrix>; 2];

/// Linear operator on an object: matrix, source vertex, target vertex, degree shift.
type Op = (Matrix, usize, usize, i64);

/// The category at k = 1 over a fixed field, with its functors prebuilt.
pub struct Category {
    pub field: Field,
    pub alg: FDAlgebra,
    named: Vec<(String, Rep)>,
    tilts: BTreeMap<Functor, Tilt>,
}

/// Invariants used to compare objects up to quasi-isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    /// Indecomposable summands of each cohomology module.
    pub cohomology: BTreeMap<i64, Vec<String>>,
    /// `RHom(m, x)` dimensions for each indecomposable module `m`.
    pub rhom: BTreeMap<String, BTreeMap<i64, usize>>,
}

impl Category {
    pub fn new(field: Field) -> Result<Category> {
        let alg = lambda_con(1, field)?;
        let named = named_modules(&alg)?;
        let mut tilts = BTreeMap::new();
        for v in 0..2 {
            for fwd in [true, false] {
                for which in [Functor::Mutation(v, fwd), Functor::Twist(v, fwd)] {
                    tilts.insert(which, build_tilt(field, which)?);
                }
            }
        }
        Ok(Category { field, alg, named, tilts })
    }

    pub fn module_names(&self) -> Vec<String> {
        self.named.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn named_rep(&self, name: &str) -> Result<&Rep> {
        self.named
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| r)
            .ok_or_else(|| DerivedError::Range(format!("no module named {name}")))
    }

    /// A named indecomposable (`Q1 Q2 M1 M2 S1 S2`) in degree 0.
    pub fn module(&self, name: &str) -> Result<CObject> {
        Ok(CObject::from_rep_in(self.field, self.named_rep(name)?, 0))
    }

    pub fn simple(&self, i: usize) -> Result<CObject> {
        match i {
            1 => self.module("S1"),
            2 => self.module("S2"),
            _ => Err(DerivedError::Range(format!("no simple S{i}"))),
        }
    }

    pub fn tilt(&self, which: Functor) -> &Tilt {
        &self.tilts[&which]
    }

    /// Applies a functor and minimalizes the result.
    pub fn apply(&self, which: Functor, x: &CObject) -> Result<CObject> {
        self.minimalize(&x.apply_tilt(self.tilt(which)))
    }

    /// Cohomology modules, zero degrees omitted.
    pub fn cohomology(&self, x: &CObject) -> Result<BTreeMap<i64, Rep>> {
        let pieces = Pieces::new(x);
        let mut out = BTreeMap::new();
        let degrees: std::collections::BTreeSet<i64> =
            pieces.h[0].keys().chain(pieces.h[1].keys()).copied().collect();
        for n in degrees {
            let dims = [0, 1].map(|v| pieces.h_dim(v, n));
            if dims == [0, 0] {
                continue;
            }
            let maps = vec![pieces.induced(x, 0, n), pieces.induced(x, 1, n)];
            out.insert(n, Rep::new(&self.alg, dims.to_vec(), maps)?);
        }
        Ok(out)
    }

    /// Names of the indecomposable summands of a module, sorted.
    pub fn labels(&self, m: &Rep) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for p in decompose(&self.alg, m)?.pieces {
            let mut name = None;
            for (n, r) in &self.named {
                if r.dims == p.dims && is_isomorphic(&self.alg, r, &p)? {
                    name = Some(n.clone());
                    break;
                }
            }
            out.push(name.unwrap_or_else(|| format!("{p}")));
        }
        out.sort();
        Ok(out)
    }

    pub fn cohomology_labels(&self, x: &CObject) -> Result<BTreeMap<i64, Vec<String>>> {
        self.cohomology(x)?.iter().map(|(&n, r)| Ok((n, self.labels(r)?))).collect()
    }

    /// Dimensions of `Ext^n(x, y)`.
    pub fn rhom(&self, x: &CObject, y: &CObject) -> BTreeMap<i64, usize> {
        y.hom_cohomology(&x.resolution())
    }

    /// Dimensions of `Ext^n(S_i, x)`.
    pub fn rhom_simple(&self, i: usize, x: &CObject) -> Result<BTreeMap<i64, usize>> {
        Ok(self.rhom(&self.simple(i)?, x))
    }

    pub fn fingerprint(&self, x: &CObject) -> Result<Fingerprint> {
        let mut rhom = BTreeMap::new();
        for (n, r) in &self.named {
            let m = CObject::from_rep_in(self.field, r, 0);
            rhom.insert(n.clone(), self.rhom(&m, x));
        }
        Ok(Fingerprint {
            cohomology: self.cohomology_labels(x)?,
            rhom,
        })
    }

    /// Quasi-isomorphism test by fingerprint.
    pub fn equivalent(&self, x: &CObject, y: &CObject) -> Result<bool> {
        Ok(self.fingerprint(x)? == self.fingerprint(y)?)
    }

    /// Strips contractible parts. Every step is a strict quasi-isomorphism: formality
    /// when the cohomology sits in one degree, truncation to the cohomological
    /// range, then repeated removal of acyclic submodules and acyclic quotients.
    pub fn minimalize(&self, x: &CObject) -> Result<CObject> {
        let coh = self.cohomology(x)?;
        let (Some((&b, _)), Some((&t, _))) = (coh.first_key_value(), coh.last_key_value()) else {
            return Ok(CObject::zero(self.field));
        };
        if b == t {
            return Ok(CObject::from_rep_in(self.field, &coh[&b], b));
        }
        let mut cur = truncate(x, b, t);
        loop {
            if cur.is_minimal() {
                return Ok(cur);
            }
            match eliminate_once(&cur) {
                Some(next) => cur = next,
                None => return Ok(cur),
            }
        }
    }
}

/// Cycles, boundaries and a complement per (vertex, degree), in local coordinates.
struct Pieces {
    idx: [BTreeMap<i64, Vec<usize>>; 2],
    /// `[boundaries | complement]` columns, and the boundary count.
    h: [BTreeMap<i64, (Matrix, usize)>; 2],
}

impl Pieces {
    fn new(x: &CObject) -> Pieces {
        let idx = [0, 1].map(|v| by_degree(&x.degs[v]));
        let h = [0, 1].map(|v| {
            let mut out = BTreeMap::new();
            for (&n, ii) in &idx[v] {
                let f = x.field;
                let z = match idx[v].get(&(n + 1)) {
                    Some(jj) => x.d[v].submatrix(jj, ii).kernel_basis(),
                    None => Matrix::identity(f, ii.len()),
                };
                let b = match idx[v].get(&(n - 1)) {
                    Some(kk) => x.d[v].submatrix(ii, kk).image_basis(),
                    None => Matrix::zeros(f, ii.len(), 0),
                };
                let nb = b.cols();
                let all = b.hstack(&z);
                let keep = all.independent_columns();
                out.insert(n, (all.select_cols(&keep), nb));
            }
            out
        });
        Pieces { idx, h }
    }

    fn h_dim(&self, v: usize, n: i64) -> usize {
        self.h[v].get(&n).map(|(m, nb)| m.cols() - nb).unwrap_or(0)
    }

    /// Matrix of the degree-zero arrow leaving `v` on `H^n`.
    fn induced(&self, x: &CObject, v: usize, n: i64) -> Matrix {
        let f = x.field;
        let w = 1 - v;
        let g = if v == 0 { super::gamma::Gen::A } else { super::gamma::Gen::B };
        let (hs, ht) = (self.h_dim(v, n), self.h_dim(w, n));
        let mut out = Matrix::zeros(f, ht, hs);
        if hs == 0 || ht == 0 {
            return out;
        }
        let (src, nbs) = &self.h[v][&n];
        let (tgt, nbt) = &self.h[w][&n];
        let op = x.ops[g.index()].submatrix(&self.idx[w][&n], &self.idx[v][&n]);
        let img = op.mul(&src.select_cols(&(*nbs..src.cols()).collect::<Vec<_>>()));
        let coords = tgt.solve(&img).ok().flatten().expect("cycles map to cycles");
        for r in 0..ht {
            for c in 0..hs {
                out.set(r, c, coords.get(nbt + r, c).clone());
            }
        }
        out
    }
}

fn by_degree(degs: &[i64]) -> BTreeMap<i64, Vec<usize>> {
    let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &n) in degs.iter().enumerate() {
        out.entry(n).or_default().push(i);
    }
    out
}

/// Embeds local columns at the given indices into the full space of size `n`.
fn embed(f: Field, n: usize, idx: &[usize], local: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(f, n, local.cols());
    for (r, &i) in idx.iter().enumerate() {
        for c in 0..local.cols() {
            m.set(i, c, local.get(r, c).clone());
        }
    }
    m
}

/// `W/N` for homogeneous subspaces `N ⊂ W` closed under `d` and the action.
fn subquotient(x: &CObject, w: &Graded, n: &Graded) -> CObject {
    let f = x.field;
    // complement basis per (vertex, degree) and the combined [N | C] basis
    let mut comp: [BTreeMap<i64, Matrix>; 2] = [BTreeMap::new(), BTreeMap::new()];
    let mut full: [BTreeMap<i64, (Matrix, usize)>; 2] = [BTreeMap::new(), BTreeMap::new()];
    let mut degs: [Vec<i64>; 2] = [Vec::new(), Vec::new()];
    let mut offs: [BTreeMap<i64, usize>; 2] = [BTreeMap::new(), BTreeMap::new()];
    for v in 0..2 {
        for (&deg, wm) in &w[v] {
            let nm = n[v].get(&deg).cloned().unwrap_or_else(|| Matrix::zeros(f, x.dim(v), 0));
            let nb = nm.image_basis();
            let all = nb.hstack(wm);
            let keep: Vec<usize> = all.independent_columns();
            let cols: Vec<usize> = keep.iter().copied().filter(|&c| c >= nb.cols()).collect();
            let c = all.select_cols(&cols);
            if c.cols() == 0 {
                continue;
            }
            offs[v].insert(deg, degs[v].len());
            degs[v].extend(std::iter::repeat(deg).take(c.cols()));
            full[v].insert(deg, (nb.hstack(&c), nb.cols()));
            comp[v].insert(deg, c);
        }
    }
    let mut out = CObject::from_parts(f, degs);
    let fill = |m: &Matrix, s: usize, t: usize, shift: i64, target: &mut Matrix| {
        for (&deg, c) in &comp[s] {
            let Some((basis, nb)) = full[t].get(&(deg + shift)) else {
                continue;
            };
            let img = m.mul(c);
            let coords = basis.solve(&img).ok().flatten().expect("subspace is closed");
            let (r0, c0) = (offs[t][&(deg + shift)], offs[s][&deg]);
            for r in 0..basis.cols() - nb {
                for cc in 0..c.cols() {
                    target.set(r0 + r, c0 + cc, coords.get(nb + r, cc).clone());
                }
            }
        }
    };
    for v in 0..2 {
        let mut d = out.d[v].clone();
        fill(&x.d[v], v, v, 1, &mut d);
        out.d[v] = d;
    }
    for g in GENS {
        let mut m = out.ops[g.index()].clone();
        fill(&x.ops[g.index()], g.source(), g.target(), g.degree(), &mut m);
        out.ops[g.index()] = m;
    }
    out
}

fn whole(x: &CObject) -> Graded {
    let f = x.field;
    [0, 1].map(|v| {
        by_degree(&x.degs[v])
            .into_iter()
            .map(|(n, ii)| (n, embed(f, x.dim(v), &ii, &Matrix::identity(f, ii.len()))))
            .collect()
    })
}

/// `τ≥b τ≤t`: drops everything above `t` and below `b`, keeping cohomology in `[b, t]`.
fn truncate(x: &CObject, b: i64, t: i64) -> CObject {
    let f = x.field;
    let pieces = Pieces::new(x);
    let mut w = whole(x);
    let mut n: Graded = [BTreeMap::new(), BTreeMap::new()];
    for v in 0..2 {
        let idx = &pieces.idx[v];
        w[v].retain(|&deg, _| deg <= t);
        if let Some(ii) = idx.get(&t) {
            let z = match idx.get(&(t + 1)) {
                Some(jj) => x.d[v].submatrix(jj, ii).kernel_basis(),
                None => Matrix::identity(f, ii.len()),
            };
            w[v].insert(t, embed(f, x.dim(v), ii, &z));
        }
        for (&deg, m) in &w[v] {
            if deg < b {
                n[v].insert(deg, m.clone());
            }
        }
        if let (Some(ii), Some(kk)) = (idx.get(&b), idx.get(&(b - 1))) {
            let bd = x.d[v].submatrix(ii, kk).image_basis();
            n[v].insert(b, embed(f, x.dim(v), ii, &bd));
        }
    }
    subquotient(x, &w, &n)
}

fn ops_of(x: &CObject, transpose: bool) -> Vec<Op> {
    let mut out: Vec<Op> = Vec::new();
    for v in 0..2 {
        if transpose {
            out.push((x.d[v].transpose(), v, v, -1));
        } else {
            out.push((x.d[v].clone(), v, v, 1));
        }
    }
    for g in GENS {
        let m = &x.ops[g.index()];
        if transpose {
            out.push((m.transpose(), g.target(), g.source(), -g.degree()));
        } else {
            out.push((m.clone(), g.source(), g.target(), g.degree()));
        }
    }
    out
}

/// Smallest homogeneous subspace containing the basis vector `(v, i)` and stable under `ops`.
fn closure(x: &CObject, ops: &[Op], v: usize, i: usize) -> Graded {
    let f = x.field;
    let mut sub: Graded = [BTreeMap::new(), BTreeMap::new()];
    let mut e = Matrix::zeros(f, x.dim(v), 1);
    e.set(i, 0, f.one());
    let mut queue = vec![(v, x.degs[v][i], e)];
    while let Some((u, n, vec)) = queue.pop() {
        let cur = sub[u].entry(n).or_insert_with(|| Matrix::zeros(f, x.dim(u), 0));
        let r = cur.rank();
        let cand = cur.hstack(&vec);
        if cand.rank() == r {
            continue;
        }
        *cur = cand;
        for (m, s, t, shift) in ops {
            if *s == u {
                let img = m.mul(&vec);
                if !img.is_zero() {
                    queue.push((*t, n + shift, img));
                }
            }
        }
    }
    sub
}

fn acyclic(x: &CObject, sub: &Graded, d_index_transposed: bool) -> bool {
    let mut dim = 0;
    let mut rank = 0;
    for v in 0..2 {
        let d = if d_index_transposed { x.d[v].transpose() } else { x.d[v].clone() };
        for m in sub[v].values() {
            dim += m.cols();
            rank += d.mul(m).rank();
        }
    }
    dim == 2 * rank
}

/// Removes one acyclic submodule or acyclic quotient generated by a basis vector.
fn eliminate_once(x: &CObject) -> Option<CObject> {
    let f = x.field;
    let fwd = ops_of(x, false);
    let bwd = ops_of(x, true);
    for v in 0..2 {
        for i in 0..x.dim(v) {
            let mut e = Matrix::zeros(f, x.dim(v), 1);
            e.set(i, 0, f.one());
            if !x.d[v].mul(&e).is_zero() {
                let c = closure(x, &fwd, v, i);
                if acyclic(x, &c, false) {
                    return Some(subquotient(x, &whole(x), &c));
                }
            }
            if !x.d[v].transpose().mul(&e).is_zero() {
                let c = closure(x, &bwd, v, i);
                if acyclic(x, &c, true) {
                    let mut w: Graded = [BTreeMap::new(), BTreeMap::new()];
                    for u in 0..2 {
                        for (&n, ii) in &by_degree(&x.degs[u]) {
                            let local = match c[u].get(&n) {
                                Some(m) => m.submatrix(ii, &(0..m.cols()).collect::<Vec<_>>()).transpose().kernel_basis(),
                                None => Matrix::identity(f, ii.len()),
                            };
                            w[u].insert(n, embed(f, x.dim(u), ii, &local));
                        }
                    }
                    return Some(subquotient(x, &w, &[BTreeMap::new(), BTreeMap::new()]));
                }
            }
        }
    }
    None
}
