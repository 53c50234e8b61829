//! Finite-dimensional quotients of path algebras and their representations:
//! contraction algebras, Hom spaces, Krull-Schmidt decomposition, knitting of
//! the Auslander-Reiten quiver, bricks and the orthogonality check.
//!
//! A representation assigns to each arrow `a: s -> t` a `dim(t) x dim(s)`
//! matrix; a path acts as the product of its arrow matrices in reverse order.
//! These are right modules, so the projective at `v` is `e_v A`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Field, LinalgError, Matrix, Scalar};
use crate::quiver::{GradedAlgebra, Grading, Path, Presentation, Quiver, QuiverError, Relation};

#[derive(Debug, Error)]
pub enum FdError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{0} is not finite-dimensional within the computed range")]
    InfiniteDimensional(String),
    #[error("invalid representation: {0}")]
    BadRep(String),
    #[error("splitting requires a field extension (End/rad has dimension > 1 over {0})")]
    NeedsFieldExtension(Field),
    #[error("node cap {0} exceeded: possibly infinite type")]
    NodeCap(usize),
    #[error("{0}")]
    Range(String),
}

pub type Result<T> = std::result::Result<T, FdError>;

/// A finite-dimensional algebra given by a graded presentation whose pieces
/// vanish above `top`.
#[derive(Debug)]
pub struct FDAlgebra {
    pub name: String,
    alg: GradedAlgebra,
    top: usize,
}

impl FDAlgebra {
    /// Fails unless every graded piece above `top` vanishes.
    pub fn new(name: &str, pres: Presentation, field: Field, top: usize) -> Result<FDAlgebra> {
        let w = pres.grading.weights.iter().copied().max().unwrap_or(1);
        let alg = GradedAlgebra::new(pres, field, top + w)?;
        if !alg.vanishes_above(top) {
            return Err(FdError::InfiniteDimensional(name.into()));
        }
        let top = (0..=top)
            .rev()
            .find(|&d| {
                let n = alg.quiver().num_vertices();
                (0..n).any(|i| (0..n).any(|j| alg.dim(d, i, j).map(|x| x > 0).unwrap_or(false)))
            })
            .unwrap_or(0);
        Ok(FDAlgebra {
            name: name.into(),
            alg,
            top,
        })
    }

    pub fn graded(&self) -> &GradedAlgebra {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn quiver(&self) -> &Quiver {
        self.alg.quiver()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver().num_vertices()
    }

    /// Highest degree with a nonzero piece.
    pub fn top(&self) -> usize {
        self.top
    }

    fn piece(&self, d: usize, i: usize, j: usize) -> usize {
        self.alg.dim(d, i, j).expect("degree within range")
    }

    /// Basis paths ordered by degree, source, target, then position.
    pub fn basis(&self) -> Vec<Path> {
        let n = self.num_vertices();
        let mut out = Vec::new();
        for d in 0..=self.top {
            for i in 0..n {
                for j in 0..n {
                    let c = self.alg.component(d, i, j).expect("degree within range");
                    out.extend(c.basis.iter().cloned());
                }
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.basis().len()
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.basis().iter().map(|p| self.quiver().path_label(p)).collect()
    }

    /// `dim e_i A e_j`.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        (0..n)
            .map(|i| (0..n).map(|j| (0..=self.top).map(|d| self.piece(d, i, j)).sum()).collect())
            .collect()
    }

    /// Structure constants in the basis of [`FDAlgebra::basis`]: entry `x * dim + y`
    /// lists the nonzero coordinates of `b_x · b_y`.
    pub fn structure_constants(&self) -> Result<Vec<Vec<(usize, Scalar)>>> {
        let basis = self.basis();
        let g = self.alg.grading();
        let n = self.num_vertices();
        // Offset of each piece in the global basis.
        let mut offset = HashMap::new();
        let mut k = 0;
        for d in 0..=self.top {
            for i in 0..n {
                for j in 0..n {
                    offset.insert((d, i, j), k);
                    k += self.piece(d, i, j);
                }
            }
        }
        let mut out = Vec::with_capacity(basis.len() * basis.len());
        for x in &basis {
            for y in &basis {
                let d = g.degree(x) + g.degree(y);
                if x.target != y.source || d > self.top {
                    out.push(Vec::new());
                    continue;
                }
                let p = self.alg.path_elem(&x.then(y).expect("composable"))?;
                let base = offset[&(d, x.source, y.target)];
                out.push(
                    p.coeffs
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| (base + i, c))
                        .collect(),
                );
            }
        }
        Ok(out)
    }

    /// The indecomposable projective `e_v A`.
    pub fn projective(&self, v: usize) -> Result<Rep> {
        let n = self.num_vertices();
        let f = self.field();
        // offsets[j][d]: position of the degree-d block inside vertex j.
        let mut offsets = vec![vec![0; self.top + 2]; n];
        let mut dims = vec![0; n];
        for j in 0..n {
            for d in 0..=self.top {
                offsets[j][d] = dims[j];
                dims[j] += self.piece(d, v, j);
            }
        }
        let g = self.alg.grading();
        let mut maps = Vec::new();
        for (a, arr) in self.quiver().arrows().iter().enumerate() {
            let mut m = Matrix::zeros(f, dims[arr.target], dims[arr.source]);
            let w = g.weights[a];
            for d in 0..=self.top {
                if d + w > self.top || self.piece(d, v, arr.source) == 0 {
                    continue;
                }
                let block = self.alg.right_action(d, v, a)?;
                m.paste(offsets[arr.target][d + w], offsets[arr.source][d], &block);
            }
            maps.push(m);
        }
        Rep::new(self, dims, maps)
    }

    pub fn simple(&self, v: usize) -> Rep {
        let n = self.num_vertices();
        let mut dims = vec![0; n];
        dims[v] = 1;
        Rep::zero_maps(self, dims)
    }

    /// `A` as a right module over itself.
    pub fn regular(&self) -> Result<Rep> {
        let mut r = self.projective(0)?;
        for v in 1..self.num_vertices() {
            r = r.direct_sum(&self.projective(v)?);
        }
        Ok(r)
    }
}

fn two_cycle_quiver() -> Quiver {
    Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).expect("valid quiver")
}

fn alternating(start_a: bool, len: usize) -> String {
    (0..len)
        .map(|i| if (i % 2 == 0) == start_a { "a" } else { "b" })
        .collect::<Vec<_>>()
        .join(" ")
}

/// The two-cycle with relations `(ab)^k a = 0 = b(ab)^k`.
pub fn lambda_con(k: usize, field: Field) -> Result<FDAlgebra> {
    if k == 0 {
        return Err(FdError::Range("k must be at least 1".into()));
    }
    let q = two_cycle_quiver();
    let rels = vec![
        Relation::parse(&q, &alternating(true, 2 * k + 1))?,
        Relation::parse(&q, &alternating(false, 2 * k + 1))?,
    ];
    let pres = Presentation {
        grading: Grading::unit(&q),
        quiver: q,
        relations: rels,
    };
    FDAlgebra::new(&format!("Lambda_con({k})"), pres, field, 2 * k)
}

/// Arrows `a: 1 -> 2`, `b: 2 -> 1`, loop `y` at 2, relations `y^k = ba`, `ay = 0 = yb`.
pub fn gamma_con(k: usize, field: Field) -> Result<FDAlgebra> {
    if k == 0 {
        return Err(FdError::Range("k must be at least 1".into()));
    }
    let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1"), ("y", "2", "2")])?;
    let yk = vec!["y"; k].join(" ");
    let rels = vec![
        Relation::parse(&q, &format!("{yk} - b a"))?,
        Relation::parse(&q, "a y")?,
        Relation::parse(&q, "y b")?,
    ];
    let pres = Presentation {
        quiver: q,
        grading: Grading { weights: vec![k, k, 2] },
        relations: rels,
    };
    FDAlgebra::new(&format!("Gamma_con({k})"), pres, field, 2 * k)
}

/// The two-cycle modulo all paths of length `2k + 1`.
pub fn truncated_two_cycle(k: usize, field: Field) -> Result<FDAlgebra> {
    if k == 0 {
        return Err(FdError::Range("k must be at least 1".into()));
    }
    let q = two_cycle_quiver();
    let g = Grading::unit(&q);
    let rels = [0, 1]
        .iter()
        .flat_map(|&i| crate::quiver::enumerate_paths(&q, &g, 2 * k + 1, i, 1 - i))
        .map(|p| Relation::new(vec![(1, p)]))
        .collect();
    let pres = Presentation {
        quiver: q,
        grading: g,
        relations: rels,
    };
    FDAlgebra::new(&format!("TwoCycle({k})"), pres, field, 2 * k)
}

/// Which family an algebra belongs to, for the CLI and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    LambdaCon,
    GammaCon,
    TwoCycle,
}

pub fn build(family: Family, k: usize, field: Field) -> Result<FDAlgebra> {
    match family {
        Family::LambdaCon => lambda_con(k, field),
        Family::GammaCon => gamma_con(k, field),
        Family::TwoCycle => truncated_two_cycle(k, field),
    }
}

/// A finite-dimensional representation: a vector space per vertex and a
/// `dim(t) x dim(s)` matrix per arrow `s -> t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep {
    field: Field,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

/// A morphism of representations, one matrix per vertex.
pub type RepMap = Vec<Matrix>;

impl Rep {
    /// Checks shapes and that every relation acts as zero.
    pub fn new(alg: &FDAlgebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Rep> {
        let q = alg.quiver();
        if dims.len() != q.num_vertices() || maps.len() != q.arrows().len() {
            return Err(FdError::BadRep("wrong number of vertices or arrows".into()));
        }
        for (m, arr) in maps.iter().zip(q.arrows()) {
            if m.rows() != dims[arr.target] || m.cols() != dims[arr.source] || m.field() != alg.field() {
                return Err(FdError::BadRep(format!("arrow {} has the wrong shape", arr.label)));
            }
        }
        let r = Rep {
            field: alg.field(),
            dims,
            maps,
        };
        for rel in alg.graded().relations() {
            if !r.eval_relation(rel).is_zero() {
                return Err(FdError::BadRep(format!("relation {} fails", rel.display(q))));
            }
        }
        Ok(r)
    }

    pub fn zero_maps(alg: &FDAlgebra, dims: Vec<usize>) -> Rep {
        let f = alg.field();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(f, dims[a.target], dims[a.source]))
            .collect();
        Rep { field: f, dims, maps }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Matrix by which a path acts.
    pub fn eval_path(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field, self.dims[p.source]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    fn eval_relation(&self, r: &Relation) -> Matrix {
        let Some((_, p0)) = r.terms.first() else {
            return Matrix::zeros(self.field, 0, 0);
        };
        let mut acc = Matrix::zeros(self.field, self.dims[p0.target], self.dims[p0.source]);
        for (c, p) in &r.terms {
            acc = acc.add(&self.eval_path(p).scale(&self.field.from_i64(*c)));
        }
        acc
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        Rep {
            field: self.field,
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.direct_sum(b)).collect(),
        }
    }

    /// The subrepresentation spanned by the columns of `basis[v]`, which must be invariant.
    pub fn sub(&self, alg: &FDAlgebra, basis: &[Matrix]) -> Result<Rep> {
        let mut maps = Vec::new();
        for (a, arr) in alg.quiver().arrows().iter().enumerate() {
            let img = self.maps[a].mul(&basis[arr.source]);
            let y = if basis[arr.source].cols() == 0 {
                Matrix::zeros(self.field, basis[arr.target].cols(), 0)
            } else if basis[arr.target].cols() == 0 {
                if !img.is_zero() {
                    return Err(FdError::BadRep("subspace is not invariant".into()));
                }
                Matrix::zeros(self.field, 0, basis[arr.source].cols())
            } else {
                basis[arr.target]
                    .solve(&img)?
                    .ok_or_else(|| FdError::BadRep("subspace is not invariant".into()))?
            };
            maps.push(y);
        }
        Rep::new(alg, basis.iter().map(Matrix::cols).collect(), maps)
    }

    /// Quotient by an invariant subspace, with the projection.
    pub fn quotient(&self, alg: &FDAlgebra, basis: &[Matrix]) -> Result<(Rep, RepMap)> {
        let f = self.field;
        // Complete each basis to the whole space; the new vectors span the quotient.
        let mut proj = Vec::new();
        let mut change = Vec::new();
        for (v, b) in basis.iter().enumerate() {
            let full = b.hstack(&Matrix::identity(f, self.dims[v]));
            let cols = full.independent_columns();
            let t = full.select_cols(&cols);
            let inv = t.inverse().expect("completed basis is invertible");
            let k = b.cols();
            let rows: Vec<usize> = (k..self.dims[v]).collect();
            proj.push(inv.select_rows(&rows));
            change.push(t);
        }
        let mut maps = Vec::new();
        for (a, arr) in alg.quiver().arrows().iter().enumerate() {
            let k = basis[arr.source].cols();
            let cols: Vec<usize> = (k..self.dims[arr.source]).collect();
            let lift = change[arr.source].select_cols(&cols);
            maps.push(proj[arr.target].mul(&self.maps[a]).mul(&lift));
        }
        let dims = proj.iter().map(Matrix::rows).collect();
        Ok((Rep::new(alg, dims, maps)?, proj))
    }

    /// Transports the structure along invertible matrices `g_v`: new maps `g_t M_a g_s^{-1}`.
    pub fn conjugate(&self, alg: &FDAlgebra, g: &[Matrix]) -> Result<Rep> {
        let mut maps = Vec::new();
        for (a, arr) in alg.quiver().arrows().iter().enumerate() {
            let inv = g[arr.source]
                .inverse()
                .ok_or_else(|| FdError::BadRep("change of basis is singular".into()))?;
            maps.push(g[arr.target].mul(&self.maps[a]).mul(&inv));
        }
        Rep::new(alg, self.dims.clone(), maps)
    }
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.dims.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", d.join(","))
    }
}

/// Basis of `Hom(m, n)`.
pub fn hom_space(alg: &FDAlgebra, m: &Rep, n: &Rep) -> Result<Vec<RepMap>> {
    let f = alg.field();
    if m.field != f || n.field != f || m.dims.len() != n.dims.len() {
        return Err(FdError::BadRep("representations over different algebras".into()));
    }
    let nv = m.dims.len();
    let mut offset = vec![0; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[nv];
    let var = |v: usize, r: usize, c: usize| offset[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (a, arr) in alg.quiver().arrows().iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        let (na, ma) = (&n.maps[a], &m.maps[a]);
        // (N_a φ_s - φ_t M_a)[r][c] = 0
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..n.dims[s] {
                    let x = na.get(r, k);
                    if !x.is_zero() {
                        let i = var(s, k, c);
                        row[i] = f.add(&row[i], x);
                    }
                }
                for k in 0..m.dims[t] {
                    let x = ma.get(k, c);
                    if !x.is_zero() {
                        let i = var(t, r, k);
                        row[i] = f.sub(&row[i], x);
                    }
                }
                rows.push(row);
            }
        }
    }
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let nrows = rows.len();
    let sys = Matrix::from_rows(f, nrows, unknowns, rows.into_iter().flatten().collect());
    let ker = sys.kernel_basis();
    let mut out = Vec::new();
    for j in 0..ker.cols() {
        let mut phi = Vec::new();
        for v in 0..nv {
            let mut p = Matrix::zeros(f, n.dims[v], m.dims[v]);
            for r in 0..n.dims[v] {
                for c in 0..m.dims[v] {
                    p.set(r, c, ker.get(var(v, r, c), j).clone());
                }
            }
            phi.push(p);
        }
        out.push(phi);
    }
    Ok(out)
}

pub fn hom_dim(alg: &FDAlgebra, m: &Rep, n: &Rep) -> Result<usize> {
    Ok(hom_space(alg, m, n)?.len())
}

/// `g∘f`.
pub fn compose(g: &RepMap, f: &RepMap) -> RepMap {
    g.iter().zip(f).map(|(a, b)| a.mul(b)).collect()
}

fn combine(field: Field, basis: &[RepMap], coeffs: &[Scalar], like: &RepMap) -> RepMap {
    let mut out: RepMap = like.iter().map(|m| Matrix::zeros(field, m.rows(), m.cols())).collect();
    for (phi, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, p) in out.iter_mut().zip(phi) {
            *o = o.add(&p.scale(c));
        }
    }
    out
}

fn is_invertible(phi: &RepMap) -> bool {
    phi.iter().all(|m| m.rows() == m.cols() && m.rank() == m.rows())
}

/// An isomorphism `m -> n`, if one exists.
pub fn find_iso(alg: &FDAlgebra, m: &Rep, n: &Rep) -> Result<Option<RepMap>> {
    if m.dims != n.dims {
        return Ok(None);
    }
    let basis = hom_space(alg, m, n)?;
    if basis.is_empty() {
        return Ok(if m.is_zero() { Some(Vec::new()) } else { None });
    }
    let f = alg.field();
    for phi in &basis {
        if is_invertible(phi) {
            return Ok(Some(phi.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..64 {
        let coeffs: Vec<Scalar> = (0..basis.len()).map(|_| f.random(&mut rng, 5)).collect();
        let phi = combine(f, &basis, &coeffs, &basis[0]);
        if is_invertible(&phi) {
            return Ok(Some(phi));
        }
    }
    // Exhaustive search over small prime fields.
    if let Field::Prime(p) = f {
        let total = (p as f64).powi(basis.len() as i32);
        if total <= 65536.0 {
            let elems = f.elements().expect("finite field");
            let mut idx = vec![0usize; basis.len()];
            loop {
                let coeffs: Vec<Scalar> = idx.iter().map(|&i| elems[i].clone()).collect();
                let phi = combine(f, &basis, &coeffs, &basis[0]);
                if is_invertible(&phi) {
                    return Ok(Some(phi));
                }
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < elems.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
        }
    }
    Ok(None)
}

pub fn is_isomorphic(alg: &FDAlgebra, m: &Rep, n: &Rep) -> Result<bool> {
    Ok(find_iso(alg, m, n)?.is_some())
}

fn flatten(phi: &RepMap) -> Vec<Scalar> {
    phi.iter().flat_map(|m| m.entries().to_vec()).collect()
}

fn identity_map(field: Field, dims: &[usize]) -> RepMap {
    dims.iter().map(|&d| Matrix::identity(field, d)).collect()
}

fn shift(field: Field, phi: &RepMap, lambda: &Scalar) -> RepMap {
    phi.iter()
        .map(|m| m.sub(&Matrix::identity(field, m.rows()).scale(lambda)))
        .collect()
}

fn power(phi: &RepMap, e: usize) -> RepMap {
    let mut out = phi.clone();
    for _ in 1..e {
        out = compose(&out, phi);
    }
    out
}

fn is_nilpotent(phi: &RepMap) -> bool {
    let n: usize = phi.iter().map(Matrix::rows).sum();
    n == 0 || power(phi, n).iter().all(Matrix::is_zero)
}

const BRUTE_FORCE_PRIME: u64 = 1000;

/// The scalar `λ` with `phi - λ` nilpotent, if there is one.
fn scalar_part(field: Field, phi: &RepMap) -> Option<Scalar> {
    let n: usize = phi.iter().map(Matrix::rows).sum();
    if n == 0 {
        return Some(field.zero());
    }
    let trace = phi
        .iter()
        .flat_map(|m| (0..m.rows()).map(move |i| m.get(i, i).clone()))
        .fold(field.zero(), |a, b| field.add(&a, &b));
    let candidates: Vec<Scalar> = match field {
        Field::Prime(p) if (n as u64) % p == 0 => {
            if p > BRUTE_FORCE_PRIME {
                return None;
            }
            field.elements().expect("finite field")
        }
        _ => vec![field.div(&trace, &field.from_i64(n as i64))],
    };
    candidates.into_iter().find(|l| is_nilpotent(&shift(field, phi, l)))
}

/// Basis of the radical of `End(m)` when `End(m)` is local with residue field
/// the base field; `None` otherwise.
pub fn local_radical(alg: &FDAlgebra, m: &Rep) -> Result<Option<Vec<RepMap>>> {
    let f = alg.field();
    let basis = hom_space(alg, m, m)?;
    let mut nil = Vec::new();
    for e in &basis {
        let Some(l) = scalar_part(f, e) else {
            return Ok(None);
        };
        nil.push(shift(f, e, &l));
    }
    let span = |v: &[RepMap]| -> Matrix {
        let cols: Vec<Vec<Scalar>> = v.iter().map(flatten).collect();
        let len = cols.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(f, len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    };
    let vm = span(&nil);
    let r = vm.rank();
    if r + 1 != basis.len() {
        return Ok(None);
    }
    let rad: Vec<RepMap> = vm.independent_columns().into_iter().map(|j| nil[j].clone()).collect();
    // Closed under products and nilpotent as an algebra.
    let mut layer = rad.clone();
    for _ in 0..=m.total_dim() {
        let prods: Vec<RepMap> = layer
            .iter()
            .flat_map(|x| rad.iter().map(move |y| compose(x, y)))
            .filter(|p| p.iter().any(|b| !b.is_zero()))
            .collect();
        if prods.is_empty() {
            return Ok(Some(rad));
        }
        let joint: Vec<RepMap> = rad.iter().cloned().chain(prods.iter().cloned()).collect();
        if span(&joint).rank() != r {
            return Ok(None);
        }
        let pm = span(&prods);
        layer = pm.independent_columns().into_iter().map(|j| prods[j].clone()).collect();
    }
    Ok(None)
}

/// Characteristic polynomial coefficients `c_0 .. c_n` (monic) over Q.
fn char_poly(field: Field, a: &Matrix) -> Vec<Scalar> {
    let n = a.rows();
    let mut c = vec![field.zero(); n + 1];
    c[n] = field.one();
    let mut mk = Matrix::zeros(field, n, n);
    for k in 1..=n {
        mk = a.mul(&mk).add(&Matrix::identity(field, n).scale(&c[n - k + 1]));
        let am = a.mul(&mk);
        let tr = (0..n).fold(field.zero(), |s, i| field.add(&s, am.get(i, i)));
        c[n - k] = field.neg(&field.div(&tr, &field.from_i64(k as i64)));
    }
    c
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            out.push(i);
            out.push(n / i);
        }
        i += 1;
    }
    out
}

/// Rational roots of a polynomial with rational coefficients, when the
/// cleared coefficients are small enough to enumerate divisors.
fn rational_roots(field: Field, c: &[Scalar]) -> Vec<Scalar> {
    use num_traits::{Signed, ToPrimitive, Zero};
    let mut c: Vec<num_rational::BigRational> = c
        .iter()
        .map(|x| match x {
            Scalar::Q(q) => q.clone(),
            Scalar::P(_) => unreachable!("rational field"),
        })
        .collect();
    let mut roots = Vec::new();
    while c.len() > 1 && c[0].is_zero() {
        roots.push(field.zero());
        c.remove(0);
    }
    let lcm = c.iter().fold(num_bigint::BigInt::from(1), |l, x| {
        let d = x.denom().clone();
        num_integer::Integer::lcm(&l, &d)
    });
    let ints: Vec<num_bigint::BigInt> = c.iter().map(|x| (x * &lcm).to_integer()).collect();
    let (Some(a0), Some(an)) = (ints[0].abs().to_u64(), ints[ints.len() - 1].abs().to_u64()) else {
        return roots;
    };
    if a0 > 1_000_000_000_000 || an > 1_000_000_000_000 || c.len() == 1 {
        return roots;
    }
    let eval = |x: &Scalar| {
        let mut acc = field.zero();
        for k in (0..c.len()).rev() {
            acc = field.add(&field.mul(&acc, x), &Scalar::Q(c[k].clone()));
        }
        acc
    };
    for p in divisors(a0) {
        for q in divisors(an) {
            for s in [1i64, -1] {
                let Some(x) = field.from_frac(s * p as i64, q as i64) else {
                    continue;
                };
                if eval(&x).is_zero() && !roots.contains(&x) {
                    roots.push(x);
                }
            }
        }
    }
    roots
}

fn eigenvalues(field: Field, phi: &RepMap) -> Vec<Scalar> {
    match field {
        Field::Prime(p) if p <= BRUTE_FORCE_PRIME => field
            .elements()
            .expect("finite field")
            .into_iter()
            .filter(|l| shift(field, phi, l).iter().any(|m| m.rank() < m.rows()))
            .collect(),
        Field::Prime(_) => Vec::new(),
        Field::Rational => {
            let mut out: Vec<Scalar> = Vec::new();
            for m in phi {
                for r in rational_roots(field, &char_poly(field, m)) {
                    if !out.contains(&r) {
                        out.push(r);
                    }
                }
            }
            out
        }
    }
}

/// Fitting splitting `m = ker ψ^N ⊕ im ψ^N` for some `ψ = φ - λ`, as subspace bases.
fn fitting_split(alg: &FDAlgebra, m: &Rep, attempts: usize) -> Result<Option<(Vec<Matrix>, Vec<Matrix>)>> {
    let f = alg.field();
    let basis = hom_space(alg, m, m)?;
    let n = m.total_dim();
    let mut cands: Vec<RepMap> = basis.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0xf17_7196);
    for _ in 0..attempts {
        let coeffs: Vec<Scalar> = (0..basis.len()).map(|_| f.random(&mut rng, 3)).collect();
        cands.push(combine(f, &basis, &coeffs, &basis[0]));
    }
    for phi in &cands {
        for l in eigenvalues(f, phi) {
            let psi = power(&shift(f, phi, &l), n);
            let ker: Vec<Matrix> = psi.iter().map(Matrix::kernel_basis).collect();
            let k: usize = ker.iter().map(Matrix::cols).sum();
            if k > 0 && k < n {
                let img: Vec<Matrix> = psi.iter().map(Matrix::image_basis).collect();
                return Ok(Some((ker, img)));
            }
        }
    }
    Ok(None)
}

/// Indecomposable summands together with the change of basis `g` such that
/// `m.conjugate(g)` is their direct sum.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub pieces: Vec<Rep>,
    pub change: Vec<Matrix>,
}

/// Splits `m` into indecomposables.
pub fn decompose(alg: &FDAlgebra, m: &Rep) -> Result<Decomposition> {
    let f = alg.field();
    let nv = m.dims.len();
    // Work list of (ambient basis, rep on it).
    let mut todo = vec![(identity_map(f, &m.dims), m.clone())];
    let mut done: Vec<(RepMap, Rep)> = Vec::new();
    while let Some((b, r)) = todo.pop() {
        if r.is_zero() {
            continue;
        }
        if hom_dim(alg, &r, &r)? == 1 {
            done.push((b, r));
            continue;
        }
        match fitting_split(alg, &r, 24)? {
            Some((k, i)) => {
                for part in [k, i] {
                    let sub = r.sub(alg, &part)?;
                    let amb: RepMap = (0..nv).map(|v| b[v].mul(&part[v])).collect();
                    todo.push((amb, sub));
                }
            }
            None => {
                if local_radical(alg, &r)?.is_none() {
                    return Err(FdError::NeedsFieldExtension(f));
                }
                done.push((b, r));
            }
        }
    }
    done.sort_by_key(|(_, r)| (r.total_dim(), r.dims.clone()));
    let mut change = Vec::new();
    for v in 0..nv {
        let mut full = Matrix::zeros(f, m.dims[v], 0);
        for (b, _) in &done {
            full = full.hstack(&b[v]);
        }
        change.push(full.inverse().ok_or_else(|| FdError::BadRep("summands do not span".into()))?);
    }
    Ok(Decomposition {
        pieces: done.into_iter().map(|(_, r)| r).collect(),
        change,
    })
}

/// Whether the decomposition's change of basis carries `m` onto the sum of pieces.
pub fn check_decomposition(alg: &FDAlgebra, m: &Rep, d: &Decomposition) -> Result<bool> {
    let conj = m.conjugate(alg, &d.change)?;
    let mut sum = Rep::zero_maps(alg, vec![0; m.dims.len()]);
    for p in &d.pieces {
        sum = sum.direct_sum(p);
    }
    Ok(conj == sum)
}

pub fn is_indecomposable(alg: &FDAlgebra, m: &Rep) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(decompose(alg, m)?.pieces.len() == 1)
}

impl FDAlgebra {
    /// Basis paths of `e_v A` at each vertex, in the order used by [`FDAlgebra::projective`].
    fn projective_basis(&self, v: usize) -> Vec<Vec<Path>> {
        let n = self.num_vertices();
        (0..n)
            .map(|j| {
                (0..=self.top)
                    .flat_map(|d| self.alg.component(d, v, j).expect("in range").basis.clone())
                    .collect()
            })
            .collect()
    }
}

/// Column basis of the radical `Σ im(arrows)` at each vertex.
pub fn radical(alg: &FDAlgebra, m: &Rep) -> Vec<Matrix> {
    let f = alg.field();
    (0..m.dims.len())
        .map(|v| {
            let mut all = Matrix::zeros(f, m.dims[v], 0);
            for (a, arr) in alg.quiver().arrows().iter().enumerate() {
                if arr.target == v {
                    all = all.hstack(&m.maps[a]);
                }
            }
            all.image_basis()
        })
        .collect()
}

/// Projective cover `π: P -> m`.
pub fn projective_cover(alg: &FDAlgebra, m: &Rep) -> Result<(Rep, RepMap)> {
    let f = alg.field();
    let n = m.dims.len();
    let rad = radical(alg, m);
    let mut p = Rep::zero_maps(alg, vec![0; n]);
    let mut pi: RepMap = (0..n).map(|v| Matrix::zeros(f, m.dims[v], 0)).collect();
    for v in 0..n {
        let full = rad[v].hstack(&Matrix::identity(f, m.dims[v]));
        let tops: Vec<usize> = full.independent_columns().into_iter().filter(|&c| c >= rad[v].cols()).collect();
        let pb = alg.projective_basis(v);
        let pv = alg.projective(v)?;
        for c in tops {
            let x = full.select_cols(&[c]);
            p = p.direct_sum(&pv);
            for (j, paths) in pb.iter().enumerate() {
                let mut block = Matrix::zeros(f, m.dims[j], 0);
                for path in paths {
                    block = block.hstack(&m.eval_path(path).mul(&x));
                }
                pi[j] = pi[j].hstack(&block);
            }
        }
    }
    Ok((p, pi))
}

/// The syzygy `Ω m` with its inclusion into the projective cover.
#[derive(Debug, Clone)]
pub struct Syzygy {
    pub omega: Rep,
    pub iota: RepMap,
    pub cover: Rep,
    pub pi: RepMap,
}

pub fn syzygy(alg: &FDAlgebra, m: &Rep) -> Result<Syzygy> {
    let (cover, pi) = projective_cover(alg, m)?;
    let iota: Vec<Matrix> = pi.iter().map(Matrix::kernel_basis).collect();
    let omega = cover.sub(alg, &iota)?;
    Ok(Syzygy { omega, iota, cover, pi })
}

/// `τ = Ω²`, valid for the symmetric algebras in scope.
pub fn tau(alg: &FDAlgebra, m: &Rep) -> Result<Rep> {
    let s = syzygy(alg, m)?;
    Ok(syzygy(alg, &s.omega)?.omega)
}

fn columns(field: Field, vecs: &[Vec<Scalar>], len: usize) -> Matrix {
    let mut m = Matrix::zeros(field, len, vecs.len());
    for (j, c) in vecs.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

/// Rows annihilating exactly the column span of `b`.
fn annihilator(b: &Matrix) -> Matrix {
    b.transpose().kernel_basis().transpose()
}

/// Middle term of the almost split sequence ending at the non-projective indecomposable `z`,
/// together with `τz`.
pub fn almost_split_middle(alg: &FDAlgebra, z: &Rep) -> Result<(Rep, Rep)> {
    let f = alg.field();
    let s = syzygy(alg, z)?;
    let y = syzygy(alg, &s.omega)?.omega;
    let h = hom_space(alg, &s.omega, &y)?;
    let len: usize = (0..z.dims.len()).map(|v| y.dims[v] * s.omega.dims[v]).sum();
    let restricted: Vec<Vec<Scalar>> = hom_space(alg, &s.cover, &y)?
        .iter()
        .map(|g| flatten(&compose(g, &s.iota)))
        .collect();
    let ann = annihilator(&columns(f, &restricted, len));
    let rad = local_radical(alg, z)?.ok_or(FdError::NeedsFieldExtension(f))?;
    let pb = hom_space(alg, &s.cover, &s.cover)?;
    // Condition matrix: for each radical endomorphism, η∘f_Ω must vanish in Ext.
    let mut cond = Matrix::zeros(f, 0, h.len());
    for r in &rad {
        let target = flatten(&compose(r, &s.pi));
        let opts: Vec<Vec<Scalar>> = pb.iter().map(|g| flatten(&compose(&s.pi, g))).collect();
        let sys = columns(f, &opts, target.len());
        let c = sys
            .solve(&Matrix::column(f, target))?
            .ok_or_else(|| FdError::BadRep("radical endomorphism does not lift".into()))?;
        let coeffs: Vec<Scalar> = (0..c.rows()).map(|i| c.get(i, 0).clone()).collect();
        let g = combine(f, &pb, &coeffs, &pb[0]);
        let f_omega: RepMap = (0..z.dims.len())
            .map(|v| {
                let rhs = g[v].mul(&s.iota[v]);
                if s.iota[v].cols() == 0 {
                    Ok(Matrix::zeros(f, 0, 0))
                } else {
                    s.iota[v]
                        .solve(&rhs)?
                        .ok_or_else(|| FdError::BadRep("lift does not preserve the syzygy".into()))
                }
            })
            .collect::<Result<_>>()?;
        let cols: Vec<Vec<Scalar>> = h.iter().map(|eta| flatten(&compose(eta, &f_omega))).collect();
        cond = cond.vstack(&ann.mul(&columns(f, &cols, len)));
    }
    let w = if cond.rows() == 0 {
        Matrix::identity(f, h.len())
    } else {
        cond.kernel_basis()
    };
    let eta = (0..w.cols())
        .map(|j| {
            let coeffs: Vec<Scalar> = (0..w.rows()).map(|i| w.get(i, j).clone()).collect();
            combine(f, &h, &coeffs, &h[0])
        })
        .find(|eta| !ann.mul(&Matrix::column(f, flatten(eta))).is_zero())
        .ok_or_else(|| FdError::BadRep("no almost split extension found".into()))?;
    // Pushout of Ω -> P along η.
    let sum = y.direct_sum(&s.cover);
    let basis: Vec<Matrix> = (0..z.dims.len())
        .map(|v| eta[v].vstack(&s.iota[v].scale(&f.from_i64(-1))))
        .collect();
    let (e, _) = sum.quotient(alg, &basis)?;
    Ok((e, y))
}

/// Auslander-Reiten quiver found by knitting.
#[derive(Debug, Clone)]
pub struct ARQuiver {
    pub nodes: Vec<Rep>,
    pub projective: Vec<bool>,
    /// `(from, to, multiplicity)` of irreducible maps.
    pub arrows: Vec<(usize, usize, usize)>,
    /// `tau[z]` for non-projective `z`.
    pub tau: Vec<Option<usize>>,
}

/// Default bound on the number of knitted nodes.
pub const NODE_CAP: usize = 200;

fn find_node(alg: &FDAlgebra, nodes: &[Rep], x: &Rep) -> Result<Option<usize>> {
    for (i, n) in nodes.iter().enumerate() {
        if n.dims == x.dims && is_isomorphic(alg, n, x)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Knits the AR quiver backwards from the projectives and simples.
pub fn ar_quiver(alg: &FDAlgebra, cap: usize) -> Result<ARQuiver> {
    let n = alg.num_vertices();
    let projs: Vec<Rep> = (0..n).map(|v| alg.projective(v)).collect::<Result<_>>()?;
    let mut nodes: Vec<Rep> = Vec::new();
    let mut queue = VecDeque::new();
    let add = |nodes: &mut Vec<Rep>, queue: &mut VecDeque<usize>, x: Rep| -> Result<usize> {
        if let Some(i) = find_node(alg, nodes, &x)? {
            return Ok(i);
        }
        if nodes.len() >= cap {
            return Err(FdError::NodeCap(cap));
        }
        nodes.push(x);
        queue.push_back(nodes.len() - 1);
        Ok(nodes.len() - 1)
    };
    for p in &projs {
        add(&mut nodes, &mut queue, p.clone())?;
    }
    for v in 0..n {
        add(&mut nodes, &mut queue, alg.simple(v))?;
    }
    let mut arrows: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut taus: HashMap<usize, usize> = HashMap::new();
    let mut proj_set = HashSet::new();
    while let Some(z) = queue.pop_front() {
        let zr = nodes[z].clone();
        let is_proj = find_node(alg, &projs, &zr)?.is_some();
        let preds = if is_proj {
            proj_set.insert(z);
            let rad = radical(alg, &zr);
            let r = zr.sub(alg, &rad)?;
            decompose(alg, &r)?.pieces
        } else {
            let (e, t) = almost_split_middle(alg, &zr)?;
            let ti = add(&mut nodes, &mut queue, t)?;
            taus.insert(z, ti);
            decompose(alg, &e)?.pieces
        };
        for p in preds {
            let i = add(&mut nodes, &mut queue, p)?;
            *arrows.entry((i, z)).or_insert(0) += 1;
        }
    }
    let projective = (0..nodes.len()).map(|i| proj_set.contains(&i)).collect();
    let tau = (0..nodes.len()).map(|i| taus.get(&i).copied()).collect();
    Ok(ARQuiver {
        nodes,
        projective,
        arrows: arrows.into_iter().map(|((a, b), m)| (a, b, m)).collect(),
        tau,
    })
}

impl ARQuiver {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn into_node(&self, z: usize) -> Vec<(usize, usize)> {
        self.arrows.iter().filter(|a| a.1 == z).map(|a| (a.0, a.2)).collect()
    }

    /// Mesh relations: the middle term at each non-projective `z` has dimension
    /// `dim z + dim τz`, and every arrow `x -> z` is matched by an arrow `τz -> x`.
    pub fn mesh_ok(&self) -> bool {
        (0..self.len()).all(|z| {
            let Some(t) = self.tau[z] else {
                return self.projective[z];
            };
            let preds = self.into_node(z);
            let nv = self.nodes[z].dims.len();
            let mid: Vec<usize> = (0..nv)
                .map(|v| preds.iter().map(|(x, m)| m * self.nodes[*x].dims[v]).sum())
                .collect();
            let want: Vec<usize> = (0..nv).map(|v| self.nodes[z].dims[v] + self.nodes[t].dims[v]).collect();
            mid == want
                && preds.iter().all(|(x, m)| {
                    self.arrows.iter().any(|a| a.0 == t && a.1 == *x && a.2 == *m)
                })
        })
    }

    /// Whether τ permutes the non-projective nodes.
    pub fn tau_is_bijective(&self) -> bool {
        let mut seen = HashSet::new();
        for (z, t) in self.tau.iter().enumerate() {
            match t {
                Some(t) => {
                    if self.projective[*t] || !seen.insert(*t) {
                        return false;
                    }
                }
                None => {
                    if !self.projective[z] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Length of the τ-orbit through each non-projective node.
    pub fn tau_periods(&self) -> Vec<Option<usize>> {
        (0..self.len())
            .map(|z| {
                let mut cur = self.tau[z]?;
                let mut k = 1;
                while cur != z {
                    cur = self.tau[cur]?;
                    k += 1;
                    if k > self.len() {
                        return None;
                    }
                }
                Some(k)
            })
            .collect()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let shape = if self.projective[i] { "box" } else { "ellipse" };
            out.push_str(&format!("  n{i} [label=\"{n}\", shape={shape}];\n"));
        }
        for (a, b, m) in &self.arrows {
            let label = if *m > 1 { format!(" [label=\"{m}\"]") } else { String::new() };
            out.push_str(&format!("  n{a} -> n{b}{label};\n"));
        }
        for (z, t) in self.tau.iter().enumerate() {
            if let Some(t) = t {
                out.push_str(&format!("  n{z} -> n{t} [style=dashed, constraint=false];\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// All indecomposables, by knitting.
pub fn enumerate_indecomposables(alg: &FDAlgebra) -> Result<Vec<Rep>> {
    Ok(ar_quiver(alg, NODE_CAP)?.nodes)
}

/// Indecomposables with one-dimensional endomorphism ring.
pub fn bricks(alg: &FDAlgebra) -> Result<Vec<Rep>> {
    let mut out = Vec::new();
    for m in enumerate_indecomposables(alg)? {
        if hom_dim(alg, &m, &m)? == 1 {
            out.push(m);
        }
    }
    Ok(out)
}

/// Every representation over a small prime field with total dimension at most
/// `max_total`, up to isomorphism, keeping the indecomposable ones.
pub fn brute_force_indecomposables(alg: &FDAlgebra, max_total: usize) -> Result<Vec<Rep>> {
    let f = alg.field();
    let elems = f
        .elements()
        .ok_or_else(|| FdError::Range("brute force needs a finite field".into()))?;
    let q = alg.quiver();
    let nv = q.num_vertices();
    let mut found: Vec<Rep> = Vec::new();
    let mut dims = vec![0usize; nv];
    loop {
        // Next dimension vector in lexicographic order with bounded total.
        let mut k = 0;
        loop {
            if k == nv {
                return Ok(found);
            }
            dims[k] += 1;
            if dims.iter().sum::<usize>() <= max_total {
                break;
            }
            dims[k] = 0;
            k += 1;
        }
        let shapes: Vec<(usize, usize)> = q.arrows().iter().map(|a| (dims[a.target], dims[a.source])).collect();
        let slots: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let total = (elems.len() as f64).powi(slots as i32);
        if total > 2e6 {
            return Err(FdError::Range(format!("too many representations at dimension {dims:?}")));
        }
        let mut idx = vec![0usize; slots];
        loop {
            let mut maps = Vec::new();
            let mut pos = 0;
            for &(r, c) in &shapes {
                let data = idx[pos..pos + r * c].iter().map(|&i| elems[i].clone()).collect();
                maps.push(Matrix::from_rows(f, r, c, data));
                pos += r * c;
            }
            if let Ok(rep) = Rep::new(alg, dims.clone(), maps) {
                if find_node(alg, &found, &rep)?.is_none() && is_indecomposable(alg, &rep)? {
                    found.push(rep);
                }
            }
            let mut j = 0;
            while j < slots {
                idx[j] += 1;
                if idx[j] < elems.len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == slots {
                break;
            }
        }
    }
}

/// Outcome of the orthogonality check over all pairs of sets of indecomposables.
#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityReport {
    pub algebra: String,
    pub indecomposables: usize,
    pub pairs_checked: usize,
    pub passed: bool,
    /// Dimension vectors of a counterexample `(A, B)`, if any.
    pub counterexample: Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)>,
}

/// The vertex whose simple filters `m`, if `m` is supported at one vertex.
pub fn pure_vertex(m: &Rep) -> Option<usize> {
    let support: Vec<usize> = (0..m.dims.len()).filter(|&v| m.dims[v] > 0).collect();
    (support.len() == 1).then(|| support[0])
}

fn set_is_pure(ms: &[&Rep]) -> bool {
    let vs: Option<HashSet<usize>> = ms.iter().map(|m| pure_vertex(m)).collect();
    vs.is_some_and(|s| s.len() <= 1)
}

/// Checks that whenever `Hom(A, B) = 0`, one of `A`, `B` is filtered by a single simple.
/// A failing pair contains a failing pair with at most two members on each side,
/// so subsets of size one and two are exhaustive.
pub fn orthogonality_report(alg: &FDAlgebra) -> Result<OrthogonalityReport> {
    let inds = enumerate_indecomposables(alg)?;
    let n = inds.len();
    let mut zero = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            zero[i][j] = hom_dim(alg, &inds[i], &inds[j])? == 0;
        }
    }
    let mut subsets: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for i in 0..n {
        for j in i + 1..n {
            subsets.push(vec![i, j]);
        }
    }
    let mut pairs = 0;
    for a in &subsets {
        for b in &subsets {
            if !a.iter().all(|&i| b.iter().all(|&j| zero[i][j])) {
                continue;
            }
            pairs += 1;
            let ra: Vec<&Rep> = a.iter().map(|&i| &inds[i]).collect();
            let rb: Vec<&Rep> = b.iter().map(|&j| &inds[j]).collect();
            if !set_is_pure(&ra) && !set_is_pure(&rb) {
                return Ok(OrthogonalityReport {
                    algebra: alg.name.clone(),
                    indecomposables: n,
                    pairs_checked: pairs,
                    passed: false,
                    counterexample: Some((
                        ra.iter().map(|m| m.dims.clone()).collect(),
                        rb.iter().map(|m| m.dims.clone()).collect(),
                    )),
                });
            }
        }
    }
    Ok(OrthogonalityReport {
        algebra: alg.name.clone(),
        indecomposables: n,
        pairs_checked: pairs,
        passed: true,
        counterexample: None,
    })
}

/// The named modules `Q1, Q2, M1, M2, S1, S2` for the two-vertex algebras:
/// `M1` is the extension of `S1` by `S2` (top `S1`), `M2` the reverse.
pub fn named_modules(alg: &FDAlgebra) -> Result<Vec<(String, Rep)>> {
    let f = alg.field();
    let q = alg.quiver();
    let a = q.arrow_index("a").ok_or_else(|| FdError::Range("no arrow a".into()))?;
    let b = q.arrow_index("b").ok_or_else(|| FdError::Range("no arrow b".into()))?;
    let mk = |arrow: usize| -> Result<Rep> {
        let mut r = Rep::zero_maps(alg, vec![1, 1]);
        r.maps[arrow] = Matrix::identity(f, 1);
        Rep::new(alg, r.dims, r.maps)
    };
    Ok(vec![
        ("Q1".into(), alg.projective(0)?),
        ("Q2".into(), alg.projective(1)?),
        ("M1".into(), mk(a)?),
        ("M2".into(), mk(b)?),
        ("S1".into(), alg.simple(0)),
        ("S2".into(), alg.simple(1)),
    ])
}

/// Hom dimensions between the named modules, rows = source.
#[derive(Debug, Clone, Serialize)]
pub struct HomTable {
    pub labels: Vec<String>,
    pub dims: Vec<Vec<usize>>,
}

impl HomTable {
    pub fn to_text(&self) -> String {
        let mut out = format!("{:>4}", "");
        for l in &self.labels {
            out.push_str(&format!("{l:>4}"));
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.dims) {
            out.push_str(&format!("{l:>4}"));
            for d in row {
                out.push_str(&format!("{d:>4}"));
            }
            out.push('\n');
        }
        out
    }
}

pub fn hom_table(alg: &FDAlgebra) -> Result<HomTable> {
    let named = named_modules(alg)?;
    let mut dims = Vec::new();
    for (_, x) in &named {
        let mut row = Vec::new();
        for (_, y) in &named {
            row.push(hom_dim(alg, x, y)?);
        }
        dims.push(row);
    }
    Ok(HomTable {
        labels: named.into_iter().map(|(l, _)| l).collect(),
        dims,
    })
}

/// Checks that `a ↦ a, b ↦ b, y ↦ ba` is an isomorphism `Γ_con(1) -> Λ_con(1)`.
pub fn gamma_lambda_iso_k1(field: Field) -> Result<bool> {
    let g = gamma_con(1, field)?;
    let l = lambda_con(1, field)?;
    if g.cartan() != l.cartan() {
        return Ok(false);
    }
    let la = l.graded();
    let image = |p: &Path| -> Result<Option<crate::quiver::Elem>> {
        let mut labels = Vec::new();
        for &a in &p.arrows {
            match g.quiver().arrows()[a].label.as_str() {
                "y" => labels.extend(["b", "a"]),
                other => labels.push(other),
            }
        }
        if labels.len() > l.top() {
            return Ok(None);
        }
        let s = if labels.is_empty() {
            format!("id_{}", g.quiver().vertices()[p.source])
        } else {
            labels.join(" ")
        };
        Ok(Some(la.parse_elem(&s)?))
    };
    // Relations map to zero.
    for r in g.graded().relations() {
        let mut acc: Option<crate::quiver::Elem> = None;
        for (c, p) in &r.terms {
            let Some(x) = image(p)? else { continue };
            let x = la.scale(&x, &field.from_i64(*c));
            acc = Some(match acc {
                None => x,
                Some(y) => la.add(&y, &x)?,
            });
        }
        if acc.is_some_and(|x| !x.is_zero()) {
            return Ok(false);
        }
    }
    // Basis maps to a basis: group by component and compare ranks.
    let mut by_piece: BTreeMap<(usize, usize, usize), Vec<Vec<Scalar>>> = BTreeMap::new();
    for p in g.basis() {
        let Some(x) = image(&p)? else { return Ok(false) };
        by_piece.entry((x.degree, x.source, x.target)).or_default().push(x.coeffs);
    }
    let mut total = 0;
    for ((d, i, j), vecs) in by_piece {
        let len = la.dim(d, i, j)?;
        total += columns(field, &vecs, len).rank();
    }
    Ok(total == l.dim() && g.dim() == l.dim())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> Vec<Field> {
        vec![Field::Rational, Field::prime(2).unwrap(), Field::prime(3).unwrap(), Field::prime(5).unwrap()]
    }

    #[test]
    fn dimensions() {
        for f in fields() {
            for k in 1..=4 {
                assert_eq!(lambda_con(k, f).unwrap().dim(), 2 + 4 * k);
                assert_eq!(gamma_con(k, f).unwrap().dim(), k + 5);
                assert_eq!(truncated_two_cycle(k, f).unwrap().dim(), 4 * k + 2);
            }
        }
        assert!(lambda_con(0, Field::Rational).is_err());
    }

    #[test]
    fn decompose_regular_and_sums() {
        for f in fields() {
            let a = lambda_con(1, f).unwrap();
            let reg = a.regular().unwrap();
            let d = decompose(&a, &reg).unwrap();
            assert_eq!(d.pieces.len(), 2);
            assert!(check_decomposition(&a, &reg, &d).unwrap());
            let s = a.simple(0);
            let ss = s.direct_sum(&s);
            let d = decompose(&a, &ss).unwrap();
            assert_eq!(d.pieces.len(), 2);
            assert!(d.pieces.iter().all(|p| p == &s));
        }
    }

    #[test]
    fn two_cycle_basis_lengths() {
        let a = lambda_con(2, Field::Rational).unwrap();
        let mut by_len = BTreeMap::new();
        for p in a.basis() {
            *by_len.entry(p.len()).or_insert(0) += 1;
        }
        let want: BTreeMap<usize, usize> = (0..=4).map(|l| (l, 2)).collect();
        assert_eq!(by_len, want);
        let t = truncated_two_cycle(3, Field::Rational).unwrap();
        let count: u128 = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| t.graded().path_count(7, i, j)).sum();
        assert_eq!(count, 2);
    }

    #[test]
    fn truncated_cycle_matches_lambda_con() {
        for k in 1..=3 {
            let f = Field::prime(3).unwrap();
            let a = lambda_con(k, f).unwrap();
            let b = truncated_two_cycle(k, f).unwrap();
            assert_eq!(a.basis_labels(), b.basis_labels());
            assert_eq!(a.structure_constants().unwrap(), b.structure_constants().unwrap());
        }
    }

    #[test]
    fn gamma_loop_is_nilpotent() {
        for k in 1..=4 {
            let g = gamma_con(k, Field::Rational).unwrap();
            let reg = g.regular().unwrap();
            let y = g.quiver().arrow_index("y").unwrap();
            let p = g.quiver().path_from_arrows(&vec![y; k + 1]).unwrap();
            assert!(reg.eval_path(&p).is_zero());
            let p = g.quiver().path_from_arrows(&vec![y; k]).unwrap();
            assert!(!reg.eval_path(&p).is_zero());
        }
        assert!(gamma_lambda_iso_k1(Field::Rational).unwrap());
    }

    #[test]
    fn hom_examples() {
        let a = lambda_con(1, Field::Rational).unwrap();
        let named: HashMap<String, Rep> = named_modules(&a).unwrap().into_iter().collect();
        assert_eq!(hom_dim(&a, &named["M1"], &named["M2"]).unwrap(), 1);
        assert_eq!(hom_dim(&a, &named["S1"], &named["S2"]).unwrap(), 0);
        assert_eq!(hom_dim(&a, &named["S1"], &named["S1"]).unwrap(), 1);
        assert_eq!(hom_dim(&a, &named["Q1"], &named["S2"]).unwrap(), 0);
        assert_eq!(pure_vertex(&named["S2"]), Some(1));
        assert!(is_indecomposable(&a, &named["M1"]).unwrap());
        let d = decompose(&a, &a.regular().unwrap()).unwrap();
        assert_eq!(d.pieces.len(), 2);
        for q in [&named["Q1"], &named["Q2"]] {
            assert!(d.pieces.iter().any(|p| is_isomorphic(&a, p, q).unwrap()));
        }
    }

    #[test]
    fn bricks_are_simples_and_the_two_extensions() {
        for k in 1..=3 {
            for a in [lambda_con(k, Field::prime(2).unwrap()).unwrap(), gamma_con(k, Field::prime(5).unwrap()).unwrap()] {
                let mut dims: Vec<Vec<usize>> = bricks(&a).unwrap().into_iter().map(|b| b.dims).collect();
                dims.sort();
                assert_eq!(dims, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 1]]);
            }
        }
    }

    #[test]
    fn knitting_agrees_with_brute_force() {
        for k in 1..=2 {
            for a in [lambda_con(k, Field::prime(2).unwrap()).unwrap(), gamma_con(k, Field::prime(2).unwrap()).unwrap()] {
                let knit: Vec<Rep> = enumerate_indecomposables(&a).unwrap().into_iter().filter(|m| m.total_dim() <= 3).collect();
                let brute = brute_force_indecomposables(&a, 3).unwrap();
                assert_eq!(knit.len(), brute.len(), "{}", a.name);
                for m in &brute {
                    assert!(find_node(&a, &knit, m).unwrap().is_some());
                }
            }
        }
    }

    #[test]
    fn ar_quiver_shape() {
        let a = lambda_con(1, Field::Rational).unwrap();
        let q = ar_quiver(&a, NODE_CAP).unwrap();
        assert_eq!(q.len(), 6);
        assert!(q.mesh_ok() && q.tau_is_bijective());
        assert!(q.arrows.iter().all(|x| x.2 == 1));
        assert!(q.to_dot("x").contains("->"));
        assert!(matches!(ar_quiver(&a, 3), Err(FdError::NodeCap(3))));
        let reg = a.regular().unwrap();
        for n in &q.nodes {
            assert!(n.dims.iter().zip(&reg.dims).all(|(x, y)| x <= y));
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(16))]
        #[test]
        fn decomposition_recovers_summands(picks in proptest::collection::vec(0usize..6, 1..4), seed in 0u64..1000, fi in 0usize..3) {
            let f = [Field::Rational, Field::prime(2).unwrap(), Field::prime(3).unwrap()][fi];
            let a = lambda_con(1, f).unwrap();
            let named = named_modules(&a).unwrap();
            let mut sum = Rep::zero_maps(&a, vec![0, 0]);
            for &i in &picks {
                sum = sum.direct_sum(&named[i].1);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g: Vec<Matrix> = sum.dims.iter().map(|&d| loop {
                let m = Matrix::random(f, d, d, &mut rng);
                if m.rank() == d { break m; }
            }).collect();
            let twisted = sum.conjugate(&a, &g).unwrap();
            let d = decompose(&a, &twisted).unwrap();
            proptest::prop_assert!(check_decomposition(&a, &twisted, &d).unwrap());
            proptest::prop_assert_eq!(d.pieces.len(), picks.len());
            let mut want: Vec<usize> = picks.clone();
            let mut got: Vec<usize> = d.pieces.iter().map(|p| named.iter().position(|(_, n)| is_isomorphic(&a, n, p).unwrap()).unwrap()).collect();
            want.sort();
            got.sort();
            proptest::prop_assert_eq!(got, want);
        }

        #[test]
        fn hom_dimension_is_field_independent(i in 0usize..6, j in 0usize..6, k in 1usize..3) {
            let dims: Vec<usize> = [Field::Rational, Field::prime(2).unwrap(), Field::prime(5).unwrap()]
                .iter()
                .map(|&f| {
                    let a = lambda_con(k, f).unwrap();
                    let named = named_modules(&a).unwrap();
                    hom_dim(&a, &named[i].1, &named[j].1).unwrap()
                })
                .collect();
            proptest::prop_assert!(dims.iter().all(|&d| d == dims[0]));
        }
    }
}
