//! Quivers with weighted gradings and homogeneous relations, and a graded
//! path-algebra engine.
//!
//! Paths compose left to right: `x·y` is `x` followed by `y`, so it needs
//! `target(x) = source(y)`. This is the only reading under which the NCCR
//! relations (e.g. `e f a1 = a1 l`) are composable.
//!
//! Each graded piece `A_d(i, j)` (paths from `i` to `j` of weight `d`,
//! modulo the ideal) is computed from lower pieces: every path of positive
//! length is uniquely `p·a` for an arrow `a`, so
//! `A_d(i,j) = (⊕_a A_{d-w(a)}(i, s(a))·a) / span{p·r}` where `r` runs over
//! relations ending at `j`. Representatives are path monomials; the pivots of
//! a lexicographically ordered echelon form are eliminated.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{Field, Matrix, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("arrow `{0}` has an endpoint outside the vertex set")]
    BadEndpoint(String),
    #[error("unknown arrow or vertex `{0}`")]
    UnknownLabel(String),
    #[error("arrow `{0}` has weight 0")]
    ZeroWeight(String),
    #[error("degree {degree} exceeds max_degree {max}")]
    DegreeOverflow { degree: usize, max: usize },
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("relations are not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("elements live in different components")]
    ComponentMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver, QuiverError> {
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(QuiverError::DuplicateLabel(v.clone()));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for a in &arrows {
            if !seen.insert(a.label.clone()) {
                return Err(QuiverError::DuplicateLabel(a.label.clone()));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(QuiverError::BadEndpoint(a.label.clone()));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Convenience constructor from `(label, source, target)` with vertex labels.
    pub fn from_labels(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver, QuiverError> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |l: &str| {
            vs.iter()
                .position(|v| v == l)
                .ok_or_else(|| QuiverError::UnknownLabel(l.to_string()))
        };
        let mut out = Vec::new();
        for (l, s, t) in arrows {
            out.push(Arrow {
                label: l.to_string(),
                source: find(s)?,
                target: find(t)?,
            });
        }
        Quiver::new(vs, out)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    /// Path from a whitespace-separated list of arrow labels, or `id_<v>`.
    pub fn parse_path(&self, s: &str) -> Result<Path, QuiverError> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        if toks.len() == 1 {
            if let Some(v) = toks[0].strip_prefix("id_") {
                let v = self
                    .vertex_index(v)
                    .ok_or_else(|| QuiverError::UnknownLabel(v.to_string()))?;
                return Ok(Path::trivial(v));
            }
        }
        let mut arrows = Vec::new();
        for t in toks {
            arrows.push(
                self.arrow_index(t)
                    .ok_or_else(|| QuiverError::UnknownLabel(t.to_string()))?,
            );
        }
        self.path_from_arrows(&arrows)
    }

    pub fn path_from_arrows(&self, arrows: &[usize]) -> Result<Path, QuiverError> {
        let Some(&first) = arrows.first() else {
            return Err(QuiverError::NotComposable("empty path needs a vertex".into()));
        };
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(QuiverError::NotComposable(format!(
                    "{} then {}",
                    self.arrows[w[0]].label, self.arrows[w[1]].label
                )));
            }
        }
        Ok(Path {
            source: self.arrows[first].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            arrows: arrows.to_vec(),
        })
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("id_{}", self.vertices[p.source]);
        }
        let ls: Vec<&str> = p.arrows.iter().map(|&a| self.arrows[a].label.as_str()).collect();
        ls.join(" ")
    }

    fn label_key(&self, p: &Path) -> Vec<String> {
        p.arrows.iter().map(|&a| self.arrows[a].label.clone()).collect()
    }
}

/// A path, stored as arrow indices in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }
}

/// Positive weight per arrow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    pub weights: Vec<usize>,
}

impl Grading {
    pub fn unit(q: &Quiver) -> Grading {
        Grading {
            weights: vec![1; q.arrows.len()],
        }
    }

    pub fn degree(&self, p: &Path) -> usize {
        p.arrows.iter().map(|&a| self.weights[a]).sum()
    }
}

/// Integer linear combination of paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub terms: Vec<(i64, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(i64, Path)>) -> Relation {
        Relation { terms }
    }

    /// Parses e.g. `e f a1 - a1 l` or `2 a b + id_1`.
    pub fn parse(q: &Quiver, s: &str) -> Result<Relation, QuiverError> {
        let mut terms = Vec::new();
        let mut sign = 1i64;
        let mut coeff: Option<i64> = None;
        let mut cur: Vec<&str> = Vec::new();
        let mut flush = |sign: i64, coeff: Option<i64>, cur: &mut Vec<&str>| -> Result<(), QuiverError> {
            if cur.is_empty() {
                if coeff.is_some() {
                    return Err(QuiverError::Parse {
                        line: 0,
                        msg: "coefficient without a path".into(),
                    });
                }
                return Ok(());
            }
            let p = q.parse_path(&cur.join(" "))?;
            terms.push((sign * coeff.unwrap_or(1), p));
            cur.clear();
            Ok(())
        };
        for tok in s.split_whitespace() {
            match tok {
                "+" | "-" => {
                    flush(sign, coeff, &mut cur)?;
                    sign = if tok == "-" { -1 } else { 1 };
                    coeff = None;
                }
                _ => {
                    if let Ok(c) = tok.parse::<i64>() {
                        if !cur.is_empty() {
                            return Err(QuiverError::Parse {
                                line: 0,
                                msg: format!("misplaced coefficient `{tok}`"),
                            });
                        }
                        coeff = Some(c);
                    } else {
                        cur.push(tok);
                    }
                }
            }
        }
        flush(sign, coeff, &mut cur)?;
        Ok(Relation { terms })
    }

    pub fn display(&self, q: &Quiver) -> String {
        let mut out = String::new();
        for (k, (c, p)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else { "+" };
            if k > 0 || *c < 0 {
                out.push_str(sign);
                out.push(' ');
            }
            if c.abs() != 1 {
                out.push_str(&format!("{} ", c.abs()));
            }
            out.push_str(&q.path_label(p));
            out.push(' ');
        }
        out.trim_end().to_string()
    }
}

/// Result of a homogeneity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomogeneityReport {
    pub homogeneous: bool,
    pub violations: Vec<String>,
}

/// True iff every relation's paths share endpoints and degree.
pub fn check_homogeneous(q: &Quiver, relations: &[Relation], g: &Grading) -> HomogeneityReport {
    let mut violations = Vec::new();
    for (k, r) in relations.iter().enumerate() {
        let Some((_, p0)) = r.terms.first() else {
            continue;
        };
        let d0 = g.degree(p0);
        for (_, p) in &r.terms[1..] {
            if (p.source, p.target) != (p0.source, p0.target) {
                violations.push(format!(
                    "relation {k} ({}): endpoints of `{}` differ from `{}`",
                    r.display(q),
                    q.path_label(p),
                    q.path_label(p0)
                ));
            }
            let d = g.degree(p);
            if d != d0 {
                violations.push(format!(
                    "relation {k} ({}): `{}` has degree {d}, `{}` has degree {d0}",
                    r.display(q),
                    q.path_label(p),
                    q.path_label(p0)
                ));
            }
        }
    }
    HomogeneityReport {
        homogeneous: violations.is_empty(),
        violations,
    }
}

/// All paths from `i` to `j` of total weight `d`, lexicographic in arrow labels.
pub fn enumerate_paths(q: &Quiver, g: &Grading, d: usize, i: usize, j: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut stack = vec![(Path::trivial(i), 0usize)];
    while let Some((p, w)) = stack.pop() {
        if w == d {
            if p.target == j {
                out.push(p);
            }
            continue;
        }
        for (k, a) in q.arrows.iter().enumerate() {
            if a.source == p.target && w + g.weights[k] <= d {
                let mut arrows = p.arrows.clone();
                arrows.push(k);
                stack.push((
                    Path {
                        source: i,
                        target: a.target,
                        arrows,
                    },
                    w + g.weights[k],
                ));
            }
        }
    }
    out.sort_by_key(|p| q.label_key(p));
    out
}

/// Text description of a graded quiver with relations.
///
/// ```text
/// vertex 1
/// vertex 2
/// arrow a 1 2 1
/// arrow b 2 1 1
/// relation a b a
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub quiver: Quiver,
    pub grading: Grading,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn to_text(&self) -> String {
        let q = &self.quiver;
        let mut s = String::new();
        for v in &q.vertices {
            s.push_str(&format!("vertex {v}\n"));
        }
        for (k, a) in q.arrows.iter().enumerate() {
            s.push_str(&format!(
                "arrow {} {} {} {}\n",
                a.label, q.vertices[a.source], q.vertices[a.target], self.grading.weights[k]
            ));
        }
        for r in &self.relations {
            s.push_str(&format!("relation {}\n", r.display(q)));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Presentation, QuiverError> {
        let mut vertices: Vec<String> = Vec::new();
        let mut arrows = Vec::new();
        let mut weights = Vec::new();
        let mut rel_lines = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: &str| QuiverError::Parse {
                line: ln + 1,
                msg: msg.to_string(),
            };
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match kw {
                "vertex" => vertices.push(rest.trim().to_string()),
                "arrow" => {
                    let t: Vec<&str> = rest.split_whitespace().collect();
                    if t.len() != 4 {
                        return Err(perr("expected `arrow <label> <source> <target> <weight>`"));
                    }
                    let find = |l: &str| {
                        vertices
                            .iter()
                            .position(|v| v == l)
                            .ok_or_else(|| perr(&format!("unknown vertex `{l}`")))
                    };
                    arrows.push(Arrow {
                        label: t[0].to_string(),
                        source: find(t[1])?,
                        target: find(t[2])?,
                    });
                    weights.push(t[3].parse::<usize>().map_err(|_| perr("bad weight"))?);
                }
                "relation" => rel_lines.push((ln + 1, rest.to_string())),
                _ => return Err(perr(&format!("unknown keyword `{kw}`"))),
            }
        }
        let quiver = Quiver::new(vertices, arrows)?;
        let mut relations = Vec::new();
        for (ln, r) in rel_lines {
            relations.push(Relation::parse(&quiver, &r).map_err(|e| QuiverError::Parse {
                line: ln,
                msg: e.to_string(),
            })?);
        }
        Ok(Presentation {
            quiver,
            grading: Grading { weights },
            relations,
        })
    }
}

/// One graded piece `A_d(i, j)`.
#[derive(Debug)]
pub struct Component {
    pub degree: usize,
    pub source: usize,
    pub target: usize,
    /// Path representatives of the basis, lexicographically ordered.
    pub basis: Vec<Path>,
    /// `(last arrow, index in the lower piece)` of each basis path; empty in degree 0.
    pub parent: Vec<(usize, usize)>,
    /// For each arrow `a` into `target` with `w(a) <= degree`: the matrix of
    /// `A_{d-w(a)}(source, s(a)) -> A_d(source, target)`, `x ↦ x·a`.
    right: HashMap<usize, Matrix>,
}

impl Component {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Homogeneous element of a graded piece, in the piece's basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elem {
    pub source: usize,
    pub target: usize,
    pub degree: usize,
    pub coeffs: Vec<Scalar>,
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
}

type Key = (usize, usize, usize);

/// Quiver algebra with a positive grading, computed piece by piece.
#[derive(Debug)]
pub struct GradedAlgebra {
    pres: Presentation,
    field: Field,
    max_degree: usize,
    max_weight: usize,
    cache: RwLock<HashMap<Key, Arc<Component>>>,
}

impl GradedAlgebra {
    pub fn new(pres: Presentation, field: Field, max_degree: usize) -> Result<GradedAlgebra, QuiverError> {
        let q = &pres.quiver;
        if pres.grading.weights.len() != q.arrows.len() {
            return Err(QuiverError::Parse {
                line: 0,
                msg: "one weight per arrow required".into(),
            });
        }
        if let Some(k) = pres.grading.weights.iter().position(|&w| w == 0) {
            return Err(QuiverError::ZeroWeight(q.arrows[k].label.clone()));
        }
        let rep = check_homogeneous(q, &pres.relations, &pres.grading);
        if !rep.homogeneous {
            return Err(QuiverError::Inhomogeneous(rep.violations.join("; ")));
        }
        let max_weight = pres.grading.weights.iter().copied().max().unwrap_or(1);
        Ok(GradedAlgebra {
            pres,
            field,
            max_degree,
            max_weight,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn quiver(&self) -> &Quiver {
        &self.pres.quiver
    }
    pub fn grading(&self) -> &Grading {
        &self.pres.grading
    }
    pub fn relations(&self) -> &[Relation] {
        &self.pres.relations
    }
    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }
    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    /// `A_d(i, j)`: paths from `i` to `j` of degree `d` modulo the ideal.
    pub fn component(&self, d: usize, i: usize, j: usize) -> Result<Arc<Component>, QuiverError> {
        if d > self.max_degree {
            return Err(QuiverError::DegreeOverflow {
                degree: d,
                max: self.max_degree,
            });
        }
        Ok(self.comp(d, i, j))
    }

    pub fn dim(&self, d: usize, i: usize, j: usize) -> Result<usize, QuiverError> {
        Ok(self.component(d, i, j)?.dim())
    }

    fn comp(&self, d: usize, i: usize, j: usize) -> Arc<Component> {
        if let Some(c) = self.cache.read().unwrap().get(&(d, i, j)) {
            return c.clone();
        }
        let c = Arc::new(self.build(d, i, j));
        self.cache
            .write()
            .unwrap()
            .entry((d, i, j))
            .or_insert(c)
            .clone()
    }

    fn build(&self, d: usize, i: usize, j: usize) -> Component {
        let f = self.field;
        let q = &self.pres.quiver;
        if d == 0 {
            let basis = if i == j { vec![Path::trivial(i)] } else { vec![] };
            return Component {
                degree: 0,
                source: i,
                target: j,
                basis,
                parent: Vec::new(),
                right: HashMap::new(),
            };
        }
        // Columns: (arrow, lower basis index) with the path lower·arrow.
        let mut cols: Vec<(usize, usize, Path)> = Vec::new();
        let mut lower: HashMap<usize, Arc<Component>> = HashMap::new();
        for (a, arr) in q.arrows.iter().enumerate() {
            let w = self.pres.grading.weights[a];
            if arr.target != j || w > d {
                continue;
            }
            let lc = self.comp(d - w, i, arr.source);
            for (b, p) in lc.basis.iter().enumerate() {
                let mut path = p.clone();
                path.arrows.push(a);
                path.target = j;
                cols.push((a, b, path));
            }
            lower.insert(a, lc);
        }
        cols.sort_by_key(|c| q.label_key(&c.2));
        let col_of: HashMap<(usize, usize), usize> =
            cols.iter().enumerate().map(|(k, c)| ((c.0, c.1), k)).collect();
        let ncols = cols.len();

        // Rows: p·r for relations r ending at j and basis p of A_{d-deg r}(i, s(r)).
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for r in &self.pres.relations {
            let Some((_, p0)) = r.terms.first() else {
                continue;
            };
            let dr = self.pres.grading.degree(p0);
            if p0.target != j || dr > d {
                continue;
            }
            let pc = self.comp(d - dr, i, p0.source);
            for b in 0..pc.dim() {
                let mut row = vec![f.zero(); ncols];
                for (c, t) in &r.terms {
                    let coef = f.from_i64(*c);
                    if t.is_trivial() {
                        // Only possible when d == 0, handled above.
                        continue;
                    }
                    let (last, init) = t.arrows.split_last().unwrap();
                    let mut v = unit_vec(f, pc.dim(), b);
                    let mut deg = d - dr;
                    for &a in init {
                        v = self.right_mul_arrow(&v, deg, i, a);
                        deg += self.pres.grading.weights[a];
                    }
                    for (k, x) in v.iter().enumerate() {
                        if !x.is_zero() {
                            let col = col_of[&(*last, k)];
                            row[col] = f.add(&row[col], &f.mul(&coef, x));
                        }
                    }
                }
                rows.push(row);
            }
        }
        let m = if ncols == 0 {
            Matrix::zeros(f, 0, 0)
        } else {
            let nrows = rows.len();
            Matrix::from_rows(f, nrows, ncols, rows.into_iter().flatten().collect())
        };
        let ech = m.echelon();
        let pivots = ech.pivots;
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        let free_pos: HashMap<usize, usize> = free.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let dim = free.len();
        // Normal form of each column as a vector over the free columns.
        let mut nf: Vec<Vec<Scalar>> = vec![vec![f.zero(); dim]; ncols];
        for (&c, &k) in &free_pos {
            nf[c][k] = f.one();
        }
        for (r, &pc) in pivots.iter().enumerate() {
            for (&c, &k) in &free_pos {
                let x = ech.rref.get(r, c);
                if !x.is_zero() {
                    nf[pc][k] = f.neg(x);
                }
            }
        }
        let mut right = HashMap::new();
        for (&a, lc) in &lower {
            let mut mat = Matrix::zeros(f, dim, lc.dim());
            for b in 0..lc.dim() {
                let col = col_of[&(a, b)];
                for k in 0..dim {
                    mat.set(k, b, nf[col][k].clone());
                }
            }
            right.insert(a, mat);
        }
        Component {
            degree: d,
            source: i,
            target: j,
            basis: free.iter().map(|&c| cols[c].2.clone()).collect(),
            parent: free.iter().map(|&c| (cols[c].0, cols[c].1)).collect(),
            right,
        }
    }

    /// Matrix of `A_d(i, s(a)) -> A_{d+w(a)}(i, t(a))`, `x ↦ x·a`.
    pub fn right_action(&self, d: usize, i: usize, a: usize) -> Result<Matrix, QuiverError> {
        let arr = &self.pres.quiver.arrows[a];
        let top = d + self.pres.grading.weights[a];
        if top > self.max_degree {
            return Err(QuiverError::DegreeOverflow {
                degree: top,
                max: self.max_degree,
            });
        }
        Ok(self.comp(top, i, arr.target).right[&a].clone())
    }

    /// `v·a` for `v` in `A_d(i, s(a))`.
    fn right_mul_arrow(&self, v: &[Scalar], d: usize, i: usize, a: usize) -> Vec<Scalar> {
        let arr = &self.pres.quiver.arrows[a];
        let w = self.pres.grading.weights[a];
        let c = self.comp(d + w, i, arr.target);
        let m = &c.right[&a];
        matvec(self.field, m, v)
    }

    pub fn zero(&self, d: usize, i: usize, j: usize) -> Result<Elem, QuiverError> {
        let n = self.dim(d, i, j)?;
        Ok(Elem {
            source: i,
            target: j,
            degree: d,
            coeffs: vec![self.field.zero(); n],
        })
    }

    /// Idempotent at vertex `v`.
    pub fn idempotent(&self, v: usize) -> Elem {
        Elem {
            source: v,
            target: v,
            degree: 0,
            coeffs: vec![self.field.one()],
        }
    }

    /// Normal form of a path.
    pub fn path_elem(&self, p: &Path) -> Result<Elem, QuiverError> {
        let d = self.pres.grading.degree(p);
        if d > self.max_degree {
            return Err(QuiverError::DegreeOverflow {
                degree: d,
                max: self.max_degree,
            });
        }
        let mut v = vec![self.field.one()];
        let mut deg = 0;
        let mut cur = p.source;
        for &a in &p.arrows {
            v = self.right_mul_arrow(&v, deg, p.source, a);
            deg += self.pres.grading.weights[a];
            cur = self.pres.quiver.arrows[a].target;
        }
        Ok(Elem {
            source: p.source,
            target: cur,
            degree: d,
            coeffs: v,
        })
    }

    /// Parses a homogeneous element such as `e f a1 - a1 l`.
    pub fn parse_elem(&self, s: &str) -> Result<Elem, QuiverError> {
        let r = Relation::parse(&self.pres.quiver, s)?;
        let mut acc: Option<Elem> = None;
        for (c, p) in &r.terms {
            let e = self.scale(&self.path_elem(p)?, &self.field.from_i64(*c));
            acc = Some(match acc {
                None => e,
                Some(x) => self.add(&x, &e)?,
            });
        }
        acc.ok_or_else(|| QuiverError::Parse {
            line: 0,
            msg: "empty element".into(),
        })
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Result<Elem, QuiverError> {
        if (x.source, x.target, x.degree) != (y.source, y.target, y.degree) {
            return Err(QuiverError::ComponentMismatch);
        }
        let f = self.field;
        Ok(Elem {
            coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| f.add(a, b)).collect(),
            ..x.clone()
        })
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Result<Elem, QuiverError> {
        self.add(x, &self.scale(y, &self.field.from_i64(-1)))
    }

    pub fn scale(&self, x: &Elem, s: &Scalar) -> Elem {
        let f = self.field;
        Elem {
            coeffs: x.coeffs.iter().map(|a| f.mul(a, s)).collect(),
            ..x.clone()
        }
    }

    /// `x·y`: first `x`, then `y`.
    pub fn multiply(&self, x: &Elem, y: &Elem) -> Result<Elem, QuiverError> {
        if x.target != y.source {
            return Err(QuiverError::NotComposable(format!(
                "target {} vs source {}",
                self.pres.quiver.vertices[x.target], self.pres.quiver.vertices[y.source]
            )));
        }
        let d = x.degree + y.degree;
        if d > self.max_degree {
            return Err(QuiverError::DegreeOverflow {
                degree: d,
                max: self.max_degree,
            });
        }
        let f = self.field;
        let yc = self.comp(y.degree, y.source, y.target);
        let mut out = vec![f.zero(); self.comp(d, x.source, y.target).dim()];
        for (k, p) in yc.basis.iter().enumerate() {
            let c = &y.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let mut v = x.coeffs.clone();
            let mut deg = x.degree;
            let mut vanished = false;
            for &a in &p.arrows {
                if v.iter().all(Scalar::is_zero) {
                    vanished = true;
                    break;
                }
                v = self.right_mul_arrow(&v, deg, x.source, a);
                deg += self.pres.grading.weights[a];
            }
            if vanished {
                continue;
            }
            for (o, vi) in out.iter_mut().zip(&v) {
                if !vi.is_zero() {
                    *o = f.add(o, &f.mul(c, vi));
                }
            }
        }
        Ok(Elem {
            source: x.source,
            target: y.target,
            degree: d,
            coeffs: out,
        })
    }

    pub fn display(&self, x: &Elem) -> String {
        let c = self.comp(x.degree, x.source, x.target);
        let mut terms = Vec::new();
        for (k, p) in c.basis.iter().enumerate() {
            let s = &x.coeffs[k];
            if s.is_zero() {
                continue;
            }
            let label = self.pres.quiver.path_label(p);
            if s.is_one() {
                terms.push(label);
            } else {
                terms.push(format!("{s}*{label}"));
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Raw number of paths of degree `d` from `i` to `j`.
    pub fn path_count(&self, d: usize, i: usize, j: usize) -> u128 {
        let q = &self.pres.quiver;
        let n = q.num_vertices();
        // counts[e][v]: paths from i to v of degree e.
        let mut counts = vec![vec![0u128; n]; d + 1];
        counts[0][i] = 1;
        for e in 1..=d {
            for (a, arr) in q.arrows.iter().enumerate() {
                let w = self.pres.grading.weights[a];
                if w <= e {
                    counts[e][arr.target] += counts[e - w][arr.source];
                }
            }
        }
        counts[d][j]
    }

    /// Dimension of `A_d(i, j)` from the explicit spanning set `p·r·q` of the
    /// ideal over enumerated paths. Exponential; intended as a cross-check.
    pub fn naive_dim(&self, d: usize, i: usize, j: usize) -> usize {
        let q = &self.pres.quiver;
        let g = &self.pres.grading;
        let f = self.field;
        let paths = enumerate_paths(q, g, d, i, j);
        let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let mut rows = Vec::new();
        for r in &self.pres.relations {
            let Some((_, p0)) = r.terms.first() else {
                continue;
            };
            let dr = g.degree(p0);
            if dr > d {
                continue;
            }
            for dl in 0..=(d - dr) {
                let lefts = enumerate_paths(q, g, dl, i, p0.source);
                let rights = enumerate_paths(q, g, d - dr - dl, p0.target, j);
                for l in &lefts {
                    for rt in &rights {
                        let mut row = vec![f.zero(); paths.len()];
                        for (c, t) in &r.terms {
                            let full = l.then(t).unwrap().then(rt).unwrap();
                            let k = index[&full];
                            row[k] = f.add(&row[k], &f.from_i64(*c));
                        }
                        rows.push(row);
                    }
                }
            }
        }
        if paths.is_empty() {
            return 0;
        }
        let nrows = rows.len();
        let m = Matrix::from_rows(f, nrows, paths.len(), rows.into_iter().flatten().collect());
        paths.len() - m.rank()
    }

    /// Whether every piece vanishes in degrees `d0+1 ..= d0+max_weight`,
    /// which forces vanishing in all degrees above `d0`.
    pub fn vanishes_above(&self, d0: usize) -> bool {
        let n = self.pres.quiver.num_vertices();
        (d0 + 1..=d0 + self.max_weight).all(|d| {
            d <= self.max_degree
                && (0..n).all(|i| (0..n).all(|j| self.comp(d, i, j).dim() == 0))
        })
    }
}

/// Memoized matrices of `y ↦ x·y` on the pieces `A_e(t(x), v)`.
#[derive(Debug)]
pub struct LeftMul<'a> {
    alg: &'a GradedAlgebra,
    x: Elem,
    memo: HashMap<(usize, usize), Matrix>,
}

impl<'a> LeftMul<'a> {
    pub fn new(alg: &'a GradedAlgebra, x: Elem) -> LeftMul<'a> {
        LeftMul {
            alg,
            x,
            memo: HashMap::new(),
        }
    }

    /// Matrix of `A_e(t(x), v) -> A_{e+|x|}(s(x), v)`.
    pub fn matrix(&mut self, e: usize, v: usize) -> Result<Matrix, QuiverError> {
        let top = e + self.x.degree;
        if top > self.alg.max_degree {
            return Err(QuiverError::DegreeOverflow {
                degree: top,
                max: self.alg.max_degree,
            });
        }
        if let Some(m) = self.memo.get(&(e, v)) {
            return Ok(m.clone());
        }
        let f = self.alg.field;
        let src = self.alg.comp(e, self.x.target, v);
        let rows = self.alg.comp(top, self.x.source, v).dim();
        let mut m = Matrix::zeros(f, rows, src.dim());
        if e == 0 {
            if src.dim() == 1 {
                for (r, c) in self.x.coeffs.iter().enumerate() {
                    m.set(r, 0, c.clone());
                }
            }
        } else {
            for (b, &(a, lb)) in src.parent.iter().enumerate() {
                let w = self.alg.pres.grading.weights[a];
                let s = self.alg.pres.quiver.arrows[a].source;
                let lower = self.matrix(e - w, s)?;
                let col = lower.col(lb);
                let out = self.alg.right_mul_arrow(&col, top - w, self.x.source, a);
                for (r, c) in out.into_iter().enumerate() {
                    m.set(r, b, c);
                }
            }
        }
        self.memo.insert((e, v), m.clone());
        Ok(m)
    }
}

/// Memoized matrices of `y ↦ y·x` on the pieces `A_e(u, s(x))`.
#[derive(Debug)]
pub struct RightMul<'a> {
    alg: &'a GradedAlgebra,
    x: Elem,
    memo: HashMap<(usize, usize), Matrix>,
}

impl<'a> RightMul<'a> {
    pub fn new(alg: &'a GradedAlgebra, x: Elem) -> RightMul<'a> {
        RightMul {
            alg,
            x,
            memo: HashMap::new(),
        }
    }

    /// Matrix of `A_e(u, s(x)) -> A_{e+|x|}(u, t(x))`.
    pub fn matrix(&mut self, e: usize, u: usize) -> Result<Matrix, QuiverError> {
        let top = e + self.x.degree;
        if top > self.alg.max_degree {
            return Err(QuiverError::DegreeOverflow {
                degree: top,
                max: self.alg.max_degree,
            });
        }
        if let Some(m) = self.memo.get(&(e, u)) {
            return Ok(m.clone());
        }
        let alg = self.alg;
        let f = alg.field;
        let n = alg.comp(e, u, self.x.source).dim();
        let rows = alg.comp(top, u, self.x.target).dim();
        let xc = alg.comp(self.x.degree, self.x.source, self.x.target);
        let mut m = Matrix::zeros(f, rows, n);
        for (k, p) in xc.basis.iter().enumerate() {
            let c = &self.x.coeffs[k];
            if c.is_zero() {
                continue;
            }
            // Product of the arrow matrices along the basis path.
            let mut acc = Matrix::identity(f, n);
            let mut deg = e;
            for &a in &p.arrows {
                deg += alg.pres.grading.weights[a];
                let t = alg.pres.quiver.arrows[a].target;
                acc = alg.comp(deg, u, t).right[&a].mul(&acc);
            }
            m = m.add(&acc.scale(c));
        }
        self.memo.insert((e, u), m.clone());
        Ok(m)
    }
}

fn unit_vec(f: Field, n: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![f.zero(); n];
    v[k] = f.one();
    v
}

pub(crate) fn matvec(f: Field, m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![f.zero(); m.rows()];
    for (c, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (r, o) in out.iter_mut().enumerate() {
            let a = m.get(r, c);
            if !a.is_zero() {
                *o = f.add(o, &f.mul(a, x));
            }
        }
    }
    out
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle() -> (Quiver, Grading) {
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let g = Grading::unit(&q);
        (q, g)
    }

    #[test]
    fn trivial_path_in_degree_zero() {
        let (q, g) = two_cycle();
        let ps = enumerate_paths(&q, &g, 0, 0, 0);
        assert_eq!(ps, vec![Path::trivial(0)]);
        assert!(enumerate_paths(&q, &g, 0, 0, 1).is_empty());
    }

    #[test]
    fn unique_alternating_loop() {
        let (q, g) = two_cycle();
        let ps = enumerate_paths(&q, &g, 2, 0, 0);
        assert_eq!(ps.len(), 1);
        assert_eq!(q.path_label(&ps[0]), "a b");
    }

    #[test]
    fn lexicographic_order() {
        let q = Quiver::from_labels(&["x"], &[("u", "x", "x"), ("t", "x", "x")]).unwrap();
        let g = Grading::unit(&q);
        let labels: Vec<String> = enumerate_paths(&q, &g, 2, 0, 0)
            .iter()
            .map(|p| q.path_label(p))
            .collect();
        assert_eq!(labels, vec!["t t", "t u", "u t", "u u"]);
    }

    #[test]
    fn homogeneity_violation_reported() {
        let q = Quiver::from_labels(&["0"], &[("e", "0", "0"), ("l", "0", "0")]).unwrap();
        let g = Grading { weights: vec![1, 2] };
        let r = Relation::parse(&q, "e - l").unwrap();
        let rep = check_homogeneous(&q, &[r], &g);
        assert!(!rep.homogeneous);
        assert_eq!(rep.violations.len(), 1);
    }

    #[test]
    fn monomial_relations_homogeneous() {
        let (q, g) = two_cycle();
        let rs = vec![
            Relation::parse(&q, "a b a").unwrap(),
            Relation::parse(&q, "b a b").unwrap(),
        ];
        assert!(check_homogeneous(&q, &rs, &g).homogeneous);
    }

    #[test]
    fn quiver_validation() {
        assert!(matches!(
            Quiver::from_labels(&["1", "1"], &[]),
            Err(QuiverError::DuplicateLabel(_))
        ));
        let bad = Quiver::new(
            vec!["1".into()],
            vec![Arrow {
                label: "a".into(),
                source: 0,
                target: 3,
            }],
        );
        assert!(matches!(bad, Err(QuiverError::BadEndpoint(_))));
    }

    #[test]
    fn truncated_two_cycle_dims() {
        let (q, g) = two_cycle();
        let rels = vec![
            Relation::parse(&q, "a b a").unwrap(),
            Relation::parse(&q, "b a b").unwrap(),
        ];
        let pres = Presentation {
            quiver: q,
            grading: g,
            relations: rels,
        };
        let alg = GradedAlgebra::new(pres, Field::Rational, 6).unwrap();
        let total: usize = (0..=6)
            .map(|d| (0..2).map(|i| (0..2).map(|j| alg.dim(d, i, j).unwrap()).sum::<usize>()).sum::<usize>())
            .sum();
        // e1, e2, a, b, ab, ba
        assert_eq!(total, 6);
        assert!(alg.vanishes_above(2));
        for d in 0..=4 {
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(alg.dim(d, i, j).unwrap(), alg.naive_dim(d, i, j));
                }
            }
        }
    }

    #[test]
    fn presentation_round_trip() {
        let text = "vertex 1\nvertex 2\narrow a 1 2 1\narrow b 2 1 1\nrelation a b a\nrelation b a b\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.to_text(), text);
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn relation_parse_signs() {
        let (q, _) = two_cycle();
        let r = Relation::parse(&q, "a b - 2 a b + id_1").unwrap();
        assert_eq!(r.terms.len(), 3);
        assert_eq!(r.terms[1].0, -2);
        assert!(r.terms[2].1.is_trivial());
    }

    #[test]
    fn left_and_right_mul_match_multiply() {
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1"), ("x", "1", "1")]).unwrap();
        let g = Grading::unit(&q);
        let rels = vec![Relation::parse(&q, "x x - a b").unwrap(), Relation::parse(&q, "b x a").unwrap()];
        let pres = Presentation {
            quiver: q,
            grading: g,
            relations: rels,
        };
        let f = Field::prime(7).unwrap();
        let alg = GradedAlgebra::new(pres, f, 8).unwrap();
        let x = alg.parse_elem("x x a + 3 a b a").unwrap();
        let mut lm = LeftMul::new(&alg, x.clone());
        let mut rm = RightMul::new(&alg, x.clone());
        for e in 0..=4 {
            for v in 0..2 {
                let c = alg.component(e, 1, v).unwrap();
                let m = lm.matrix(e, v).unwrap();
                for k in 0..c.dim() {
                    let y = alg.path_elem(&c.basis[k]).unwrap();
                    assert_eq!(m.col(k), alg.multiply(&x, &y).unwrap().coeffs);
                }
                let c = alg.component(e, v, 0).unwrap();
                let m = rm.matrix(e, v).unwrap();
                for k in 0..c.dim() {
                    let y = alg.path_elem(&c.basis[k]).unwrap();
                    assert_eq!(m.col(k), alg.multiply(&y, &x).unwrap().coeffs);
                }
            }
        }
    }
}
