//! Graded homological algebra over the three-vertex algebra Λₙ: projective
//! resolutions of the simples at vertices 1 and 2, the standard chain maps
//! and homotopies between them, and the Ext algebra.
//!
//! Conventions. Paths compose left to right. A map between sums of shifted
//! projectives `P_a(s) = e_a Λ` is a matrix whose `(r, c)` entry lies in
//! `e_{b_r} Λ e_{a_c}` and acts by left multiplication, so composition is the
//! matrix product with entries multiplied in the algebra. An entry of a map
//! of Adams degree `D` from `P_a(s)` to `P_b(t)` has weight `t - s - D`.
//! The differential on morphism spaces is `δf = d∘f - (-1)^|f| f∘d`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Field, LinalgError, Matrix, Scalar};
use crate::quiver::{Elem, GradedAlgebra, LeftMul, Presentation, Quiver, QuiverError, Relation, RightMul};

#[derive(Debug, Error)]
pub enum NccrError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("not composable: {0}")]
    Composability(String),
    #[error("entry ({row}, {col}) has the wrong shape: {msg}")]
    BadEntry { row: usize, col: usize, msg: String },
    #[error("{0}")]
    Range(String),
    #[error("{0} is not a chain map")]
    NotChainMap(String),
}

pub type Result<T> = std::result::Result<T, NccrError>;

/// `P_v` with its Adams grading shifted by `adams_shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GradedProjective {
    pub vertex: usize,
    pub adams_shift: i64,
}

impl GradedProjective {
    pub fn new(vertex: usize, adams_shift: i64) -> GradedProjective {
        GradedProjective { vertex, adams_shift }
    }
}

impl fmt::Display for GradedProjective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.adams_shift == 0 {
            write!(f, "P{}", self.vertex)
        } else {
            write!(f, "P{}({})", self.vertex, self.adams_shift)
        }
    }
}

/// Λₙ together with its graded engine.
#[derive(Debug)]
pub struct LambdaN {
    pub n: usize,
    alg: GradedAlgebra,
}

/// Weight of the arrows between vertex 0 and the two-cycle.
fn arm_weight(n: usize) -> usize {
    n.max(1)
}

fn repeat(word: &str, k: usize) -> String {
    vec![word; k].join(" ")
}

/// Text presentation of Λₙ. At `n = 0` the terms carrying a power `n` are dropped.
pub fn lambda_n_presentation(n: usize) -> std::result::Result<Presentation, QuiverError> {
    let w = arm_weight(n);
    let quiver = Quiver::from_labels(
        &["0", "1", "2"],
        &[
            ("e", "1", "2"),
            ("f", "2", "1"),
            ("a1", "1", "0"),
            ("c1", "0", "1"),
            ("a2", "0", "2"),
            ("c2", "2", "0"),
            ("l", "0", "0"),
        ],
    )?;
    let weights = vec![1, 1, w, w, w, w, 2];
    let fe = repeat("f e", n);
    let mut rels = vec![
        "e f a1 - a1 l".to_string(),
        "l c1 - c1 e f".to_string(),
        "f e c2 - c2 l".to_string(),
        "l a2 - a2 f e".to_string(),
    ];
    if n == 0 {
        rels.push("a1 c1 e - e c2 a2".into());
        rels.push("f a1 c1 - c2 a2 f".into());
        rels.push("a2 c2 - c1 a1".into());
    } else {
        rels.push(format!("a1 c1 e - e c2 a2 + e {fe}"));
        rels.push(format!("f a1 c1 - c2 a2 f + {fe} f"));
        rels.push(format!("{} - a2 c2 + c1 a1", repeat("l", n)));
    }
    let relations = rels
        .iter()
        .map(|r| Relation::parse(&quiver, r))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Presentation {
        quiver,
        grading: crate::quiver::Grading { weights },
        relations,
    })
}

/// Λₙ over `field`, computed up to `max_degree`.
pub fn lambda_n(n: usize, field: Field, max_degree: usize) -> Result<LambdaN> {
    let alg = GradedAlgebra::new(lambda_n_presentation(n)?, field, max_degree)?;
    Ok(LambdaN { n, alg })
}

/// Default degree bound used by the checks: enough for every entry and for
/// the Ext window of the two resolutions.
pub fn default_max_degree(n: usize) -> usize {
    4 * n + 10
}

/// A matrix of homogeneous elements between sums of shifted projectives.
#[derive(Debug, Clone)]
pub struct PMap {
    pub source: Vec<GradedProjective>,
    pub target: Vec<GradedProjective>,
    pub adams: i64,
    entries: Vec<Option<Elem>>,
}

impl PMap {
    pub fn zero(source: &[GradedProjective], target: &[GradedProjective], adams: i64) -> PMap {
        PMap {
            source: source.to_vec(),
            target: target.to_vec(),
            adams,
            entries: vec![None; source.len() * target.len()],
        }
    }

    pub fn rows(&self) -> usize {
        self.target.len()
    }

    pub fn cols(&self) -> usize {
        self.source.len()
    }

    /// Weight an entry at `(r, c)` must have; negative means the entry is forced to vanish.
    pub fn entry_weight(&self, r: usize, c: usize) -> i64 {
        self.target[r].adams_shift - self.source[c].adams_shift - self.adams
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&Elem> {
        self.entries[r * self.cols() + c].as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Option::is_none)
    }

    fn set(&mut self, r: usize, c: usize, x: Option<Elem>) -> Result<()> {
        if let Some(e) = &x {
            let w = self.entry_weight(r, c);
            if e.source != self.target[r].vertex || e.target != self.source[c].vertex {
                return Err(NccrError::BadEntry {
                    row: r,
                    col: c,
                    msg: "endpoints do not match the projectives".into(),
                });
            }
            if w < 0 || e.degree as i64 != w {
                return Err(NccrError::BadEntry {
                    row: r,
                    col: c,
                    msg: format!("degree {} where {} is forced", e.degree, w),
                });
            }
        }
        let k = r * self.cols() + c;
        self.entries[k] = x.filter(|e| !e.is_zero());
        Ok(())
    }
}

/// A bounded complex of sums of shifted projectives, in cohomological degrees
/// `lo .. lo + terms.len()`.
#[derive(Debug, Clone)]
pub struct PComplex {
    pub name: String,
    pub lo: i64,
    pub terms: Vec<Vec<GradedProjective>>,
    /// `diffs[k]` maps `terms[k]` to `terms[k + 1]`.
    pub diffs: Vec<PMap>,
}

impl PComplex {
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, q: i64) -> &[GradedProjective] {
        if q < self.lo || q > self.hi() {
            return &[];
        }
        &self.terms[(q - self.lo) as usize]
    }

    /// The differential leaving degree `q`, zero outside the range.
    pub fn diff(&self, q: i64) -> PMap {
        if q >= self.lo && q < self.hi() {
            self.diffs[(q - self.lo) as usize].clone()
        } else {
            PMap::zero(self.term(q), self.term(q + 1), 0)
        }
    }

    /// Blockwise sum of two complexes.
    pub fn direct_sum(&self, other: &PComplex) -> PComplex {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let terms: Vec<Vec<GradedProjective>> = (lo..=hi)
            .map(|q| [self.term(q), other.term(q)].concat())
            .collect();
        let mut diffs = Vec::new();
        for q in lo..hi {
            let a = self.diff(q);
            let b = other.diff(q);
            let mut m = PMap::zero(&terms[(q - lo) as usize], &terms[(q - lo + 1) as usize], 0);
            let w = m.cols();
            for r in 0..a.rows() {
                for c in 0..a.cols() {
                    m.entries[r * w + c] = a.entry(r, c).cloned();
                }
            }
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    m.entries[(r + a.rows()) * w + c + a.cols()] = b.entry(r, c).cloned();
                }
            }
            diffs.push(m);
        }
        PComplex {
            name: format!("{} + {}", self.name, other.name),
            lo,
            terms,
            diffs,
        }
    }
}

impl fmt::Display for PComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                if t.is_empty() {
                    "0".to_string()
                } else {
                    t.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" + ")
                }
            })
            .collect();
        write!(f, "{}: {}", self.name, parts.join(" -> "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MorphKind {
    Chain,
    Homotopy,
}

/// A degree-`degree` morphism of complexes of projectives: component `q`
/// maps `source^q` to `target^{q + degree}`.
#[derive(Debug, Clone)]
pub struct PMorphism {
    pub name: String,
    pub source: Arc<PComplex>,
    pub target: Arc<PComplex>,
    pub degree: i64,
    pub adams: i64,
    pub kind: MorphKind,
    comps: BTreeMap<i64, PMap>,
}

impl PMorphism {
    pub fn zero(source: &Arc<PComplex>, target: &Arc<PComplex>, degree: i64, adams: i64) -> PMorphism {
        PMorphism {
            name: "0".into(),
            source: source.clone(),
            target: target.clone(),
            degree,
            adams,
            kind: MorphKind::Homotopy,
            comps: BTreeMap::new(),
        }
    }

    pub fn component(&self, q: i64) -> PMap {
        self.comps.get(&q).cloned().unwrap_or_else(|| {
            PMap::zero(self.source.term(q), self.target.term(q + self.degree), self.adams)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(PMap::is_zero)
    }

    fn range(&self) -> std::ops::RangeInclusive<i64> {
        self.source.lo..=self.source.hi()
    }
}

/// `word^k` followed by `tail`, or the idempotent at `at` when empty.
fn power(word: &str, k: usize, tail: &str, at: usize) -> String {
    let s = format!("{} {}", repeat(word, k), tail);
    let s = s.trim();
    if s.is_empty() {
        format!("id_{at}")
    } else {
        s.to_string()
    }
}

fn gp(vertex: usize, adams_shift: i64) -> GradedProjective {
    GradedProjective::new(vertex, adams_shift)
}

impl LambdaN {
    pub fn algebra(&self) -> &GradedAlgebra {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    fn w(&self) -> i64 {
        arm_weight(self.n) as i64
    }

    /// Builds a map from entry strings; `0` is zero and `1`/`-1` are ± the idempotent.
    pub fn pmap(
        &self,
        source: &[GradedProjective],
        target: &[GradedProjective],
        adams: i64,
        rows: &[Vec<String>],
    ) -> Result<PMap> {
        let mut m = PMap::zero(source, target, adams);
        if rows.len() != target.len() || rows.iter().any(|r| r.len() != source.len()) {
            return Err(NccrError::Range("matrix shape does not match the projectives".into()));
        }
        for (r, row) in rows.iter().enumerate() {
            for (c, s) in row.iter().enumerate() {
                let s = s.trim();
                let x = match s {
                    "0" => None,
                    "1" => Some(self.alg.idempotent(target[r].vertex)),
                    "-1" => Some(self.alg.scale(&self.alg.idempotent(target[r].vertex), &self.field().from_i64(-1))),
                    _ => Some(self.alg.parse_elem(s)?),
                };
                m.set(r, c, x)?;
            }
        }
        Ok(m)
    }

    fn add_entry(&self, a: Option<&Elem>, b: Option<&Elem>) -> Result<Option<Elem>> {
        Ok(match (a, b) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (Some(x), Some(y)) => Some(self.alg.add(x, y)?).filter(|e| !e.is_zero()),
        })
    }

    /// `g∘f` for maps `f: X -> Y`, `g: Y -> Z`.
    pub fn compose_maps(&self, g: &PMap, f: &PMap) -> Result<PMap> {
        if g.source != f.target {
            return Err(NccrError::Composability("middle terms differ".into()));
        }
        let mut out = PMap::zero(&f.source, &g.target, f.adams + g.adams);
        for r in 0..g.rows() {
            for c in 0..f.cols() {
                let mut acc: Option<Elem> = None;
                for m in 0..g.cols() {
                    if let (Some(x), Some(y)) = (g.entry(r, m), f.entry(m, c)) {
                        let p = self.alg.multiply(x, y)?;
                        acc = self.add_entry(acc.as_ref(), Some(&p))?;
                    }
                }
                out.set(r, c, acc)?;
            }
        }
        Ok(out)
    }

    pub fn add_maps(&self, a: &PMap, b: &PMap) -> Result<PMap> {
        if a.source != b.source || a.target != b.target || a.adams != b.adams {
            return Err(NccrError::Composability("summands live in different spaces".into()));
        }
        let mut out = a.clone();
        for k in 0..out.entries.len() {
            out.entries[k] = self.add_entry(a.entries[k].as_ref(), b.entries[k].as_ref())?;
        }
        Ok(out)
    }

    pub fn scale_map(&self, a: &PMap, s: &Scalar) -> PMap {
        let mut out = a.clone();
        for e in out.entries.iter_mut() {
            *e = e.take().map(|x| self.alg.scale(&x, s)).filter(|x| !x.is_zero());
        }
        out
    }

    /// The projective resolution of the simple at vertex `i ∈ {1, 2}`, in degrees -3..0.
    pub fn simple_resolution(&self, i: usize) -> Result<PComplex> {
        let (j, w, n) = match i {
            1 => (2, self.w(), self.n),
            2 => (1, self.w(), self.n),
            _ => return Err(NccrError::Range(format!("no simple resolution at vertex {i}"))),
        };
        let terms = vec![
            vec![gp(i, -2 * w - 2)],
            vec![gp(0, -w - 2), gp(j, -2 * w - 1)],
            vec![gp(0, -w), gp(j, -1)],
            vec![gp(i, 0)],
        ];
        // Mirror dictionary: vertex 1 uses (a1, c1, e, f), vertex 2 uses (c2, a2, f, e).
        let rows: [Vec<Vec<String>>; 3] = if i == 1 {
            let corner = if n == 0 {
                "c2 a2".to_string()
            } else {
                format!("c2 a2 - {}", repeat("f e", n))
            };
            [
                vec![vec!["c1".into()], vec!["f".into()]],
                vec![vec!["l".into(), "- c1 e".into()], vec!["- f a1".into(), corner]],
                vec![vec!["a1".into(), "e".into()]],
            ]
        } else {
            let corner = if n == 0 {
                "a1 c1".to_string()
            } else {
                format!("a1 c1 + {}", repeat("e f", n))
            };
            [
                vec![vec!["a2".into()], vec!["e".into()]],
                vec![vec!["l".into(), "- a2 f".into()], vec!["- e c2".into(), corner]],
                vec![vec!["c2".into(), "f".into()]],
            ]
        };
        let mut diffs = Vec::new();
        for (k, r) in rows.iter().enumerate() {
            diffs.push(self.pmap(&terms[k], &terms[k + 1], 0, r)?);
        }
        Ok(PComplex {
            name: format!("R{i}"),
            lo: -3,
            terms,
            diffs,
        })
    }

    /// Whether `d∘d = 0` holds exactly.
    pub fn d_squared_zero(&self, c: &PComplex) -> Result<bool> {
        for k in 1..c.diffs.len() {
            if !self.compose_maps(&c.diffs[k], &c.diffs[k - 1])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// One Adams degree and vertex of the exactness check.
#[derive(Debug, Clone, Serialize)]
pub struct ResolutionRow {
    pub adams: usize,
    pub vertex: usize,
    /// Dimensions of the graded pieces, lowest cohomological degree first.
    pub dims: Vec<usize>,
    /// Ranks of the differentials between them.
    pub ranks: Vec<usize>,
    pub cokernel: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolutionReport {
    pub complex: String,
    pub up_to_adams: usize,
    pub d_squared_zero: bool,
    pub rows: Vec<ResolutionRow>,
    pub passed: bool,
}

type LeftCache<'a> = HashMap<(usize, usize), LeftMul<'a>>;

impl LambdaN {
    fn piece_dim(&self, p: &GradedProjective, d: i64, v: usize) -> Result<usize> {
        let e = d + p.adams_shift;
        if e < 0 {
            return Ok(0);
        }
        Ok(self.alg.dim(e as usize, p.vertex, v)?)
    }

    /// Matrix of a degree-0 map on the Adams-degree-`d` pieces at vertex `v`.
    fn piece_matrix<'a>(&'a self, m: &PMap, cache: &mut LeftCache<'a>, d: i64, v: usize) -> Result<Matrix> {
        let f = self.field();
        let rdims = m.target.iter().map(|p| self.piece_dim(p, d, v)).collect::<Result<Vec<_>>>()?;
        let cdims = m.source.iter().map(|p| self.piece_dim(p, d, v)).collect::<Result<Vec<_>>>()?;
        let mut out = Matrix::zeros(f, rdims.iter().sum(), cdims.iter().sum());
        let mut r0 = 0;
        for r in 0..m.rows() {
            let mut c0 = 0;
            for c in 0..m.cols() {
                if let Some(x) = m.entry(r, c) {
                    if cdims[c] > 0 && rdims[r] > 0 {
                        let lm = cache.entry((r, c)).or_insert_with(|| LeftMul::new(&self.alg, x.clone()));
                        let e = (d + m.source[c].adams_shift) as usize;
                        out.paste(r0, c0, &lm.matrix(e, v)?);
                    }
                }
                c0 += cdims[c];
            }
            r0 += rdims[r];
        }
        Ok(out)
    }

    /// Checks exactness of a resolution degreewise up to `up_to_adams`.
    pub fn verify_resolution(&self, c: &PComplex, up_to_adams: usize) -> Result<ResolutionReport> {
        if up_to_adams > self.alg.max_degree() {
            return Err(NccrError::Range(format!(
                "Adams bound {up_to_adams} exceeds the algebra bound {}",
                self.alg.max_degree()
            )));
        }
        let top = c.terms.last().and_then(|t| t.first()).copied();
        let mut caches: Vec<LeftCache> = c.diffs.iter().map(|_| HashMap::new()).collect();
        let mut rows = Vec::new();
        for d in 0..=up_to_adams {
            for v in 0..3 {
                let dims = c
                    .terms
                    .iter()
                    .map(|t| t.iter().map(|p| self.piece_dim(p, d as i64, v)).sum::<Result<usize>>())
                    .collect::<Result<Vec<_>>>()?;
                let mut ranks = Vec::new();
                for (k, m) in c.diffs.iter().enumerate() {
                    ranks.push(self.piece_matrix(m, &mut caches[k], d as i64, v)?.rank());
                }
                let mut ok = true;
                for k in 0..dims.len() - 1 {
                    let incoming = if k == 0 { 0 } else { ranks[k - 1] };
                    if dims[k] - ranks[k] != incoming {
                        ok = false;
                    }
                }
                let last = dims.len() - 1;
                let cokernel = dims[last] - if last == 0 { 0 } else { ranks[last - 1] };
                let expected = match top {
                    Some(p) if p.adams_shift == 0 && d == 0 && v == p.vertex => 1,
                    _ => 0,
                };
                ok &= cokernel == expected;
                rows.push(ResolutionRow {
                    adams: d,
                    vertex: v,
                    dims,
                    ranks,
                    cokernel,
                    ok,
                });
            }
        }
        let d_squared_zero = self.d_squared_zero(c)?;
        let passed = d_squared_zero && rows.iter().all(|r| r.ok);
        Ok(ResolutionReport {
            complex: c.name.clone(),
            up_to_adams,
            d_squared_zero,
            rows,
            passed,
        })
    }
}

impl LambdaN {
    fn check_pair(&self, a: &PMorphism, b: &PMorphism) -> Result<()> {
        if a.source.name != b.source.name || a.target.name != b.target.name || a.degree != b.degree || a.adams != b.adams {
            return Err(NccrError::Composability(format!("{} and {} live in different spaces", a.name, b.name)));
        }
        Ok(())
    }

    pub fn add(&self, a: &PMorphism, b: &PMorphism) -> Result<PMorphism> {
        self.check_pair(a, b)?;
        let mut comps = BTreeMap::new();
        for q in a.range() {
            let m = self.add_maps(&a.component(q), &b.component(q))?;
            if !m.is_zero() {
                comps.insert(q, m);
            }
        }
        Ok(PMorphism {
            name: format!("{} + {}", a.name, b.name),
            kind: if a.kind == MorphKind::Chain && b.kind == MorphKind::Chain {
                MorphKind::Chain
            } else {
                MorphKind::Homotopy
            },
            comps,
            ..a.clone()
        })
    }

    pub fn scale(&self, a: &PMorphism, s: i64) -> PMorphism {
        let s = self.field().from_i64(s);
        let comps = a
            .comps
            .iter()
            .map(|(q, m)| (*q, self.scale_map(m, &s)))
            .filter(|(_, m)| !m.is_zero())
            .collect();
        PMorphism {
            name: format!("{s}*{}", a.name),
            comps,
            ..a.clone()
        }
    }

    pub fn sub(&self, a: &PMorphism, b: &PMorphism) -> Result<PMorphism> {
        let mut out = self.add(a, &self.scale(b, -1))?;
        out.name = format!("{} - {}", a.name, b.name);
        Ok(out)
    }

    /// Exact equality of two morphisms in the same space.
    pub fn equal(&self, a: &PMorphism, b: &PMorphism) -> Result<bool> {
        Ok(self.sub(a, b)?.is_zero())
    }

    /// `g∘f`, with `(g∘f)^q = g^{q+|f|} ∘ f^q`.
    pub fn compose(&self, g: &PMorphism, f: &PMorphism) -> Result<PMorphism> {
        if f.target.name != g.source.name {
            return Err(NccrError::Composability(format!(
                "{} ends at {} but {} starts at {}",
                f.name, f.target.name, g.name, g.source.name
            )));
        }
        let mut comps = BTreeMap::new();
        for q in f.range() {
            let m = self.compose_maps(&g.component(q + f.degree), &f.component(q))?;
            if !m.is_zero() {
                comps.insert(q, m);
            }
        }
        Ok(PMorphism {
            name: format!("{}∘{}", g.name, f.name),
            source: f.source.clone(),
            target: g.target.clone(),
            degree: f.degree + g.degree,
            adams: f.adams + g.adams,
            kind: if f.kind == MorphKind::Chain && g.kind == MorphKind::Chain {
                MorphKind::Chain
            } else {
                MorphKind::Homotopy
            },
            comps,
        })
    }

    /// `δf = d∘f - (-1)^|f| f∘d`.
    pub fn boundary(&self, f: &PMorphism) -> Result<PMorphism> {
        let sign = self.field().from_i64(if f.degree % 2 == 0 { -1 } else { 1 });
        let mut comps = BTreeMap::new();
        for q in f.range() {
            let left = self.compose_maps(&f.target.diff(q + f.degree), &f.component(q))?;
            let right = self.compose_maps(&f.component(q + 1), &f.source.diff(q))?;
            let m = self.add_maps(&left, &self.scale_map(&right, &sign))?;
            if !m.is_zero() {
                comps.insert(q, m);
            }
        }
        Ok(PMorphism {
            name: format!("δ({})", f.name),
            source: f.source.clone(),
            target: f.target.clone(),
            degree: f.degree + 1,
            adams: f.adams,
            kind: MorphKind::Chain,
            comps,
        })
    }

    pub fn is_chain_map(&self, f: &PMorphism) -> Result<bool> {
        Ok(self.boundary(f)?.is_zero())
    }

    /// Identity chain map of a complex.
    pub fn identity(&self, c: &Arc<PComplex>) -> Result<PMorphism> {
        let mut comps = BTreeMap::new();
        for q in c.lo..=c.hi() {
            let t = c.term(q);
            let rows: Vec<Vec<String>> = (0..t.len())
                .map(|r| (0..t.len()).map(|k| if k == r { "1".into() } else { "0".into() }).collect())
                .collect();
            comps.insert(q, self.pmap(t, t, 0, &rows)?);
        }
        Ok(PMorphism {
            name: format!("id_{}", c.name),
            source: c.clone(),
            target: c.clone(),
            degree: 0,
            adams: 0,
            kind: MorphKind::Chain,
            comps,
        })
    }

    /// Morphism from matrices given per source degree.
    #[allow(clippy::too_many_arguments)]
    pub fn morphism(
        &self,
        name: &str,
        source: &Arc<PComplex>,
        target: &Arc<PComplex>,
        degree: i64,
        adams: i64,
        kind: MorphKind,
        comps: &[(i64, Vec<Vec<String>>)],
    ) -> Result<PMorphism> {
        let mut out = BTreeMap::new();
        for (q, rows) in comps {
            let m = self.pmap(source.term(*q), target.term(q + degree), adams, rows)?;
            out.insert(*q, m);
        }
        let f = PMorphism {
            name: name.into(),
            source: source.clone(),
            target: target.clone(),
            degree,
            adams,
            kind,
            comps: out,
        };
        if kind == MorphKind::Chain && !self.is_chain_map(&f)? {
            return Err(NccrError::NotChainMap(name.into()));
        }
        Ok(f)
    }
}

/// The chain maps ξ, ζ and homotopies h, g, k between the two resolutions.
#[derive(Debug, Clone)]
pub struct StandardMaps {
    pub r1: Arc<PComplex>,
    pub r2: Arc<PComplex>,
    pub xi12: PMorphism,
    pub xi21: PMorphism,
    pub zeta12: PMorphism,
    pub zeta21: PMorphism,
    pub h11: PMorphism,
    pub h22: PMorphism,
    /// Indexed by `j` in `0..=n-2`.
    pub g11: Vec<PMorphism>,
    pub g22: Vec<PMorphism>,
    pub k12: Vec<PMorphism>,
    pub k21: Vec<PMorphism>,
}

impl StandardMaps {
    /// Every map, in a fixed order.
    pub fn all(&self) -> Vec<&PMorphism> {
        let mut v = vec![&self.xi12, &self.xi21, &self.zeta12, &self.zeta21, &self.h11, &self.h22];
        for fam in [&self.g11, &self.g22, &self.k12, &self.k21] {
            v.extend(fam.iter());
        }
        v
    }

    /// Looks a map up by name, e.g. `xi12`, `h22`, `g11^0`, `k21^1`.
    pub fn get(&self, name: &str) -> Option<&PMorphism> {
        self.all().into_iter().find(|m| m.name == name)
    }

    /// The homotopies h, g, k.
    pub fn homotopies(&self) -> Vec<&PMorphism> {
        self.all().into_iter().filter(|m| m.kind == MorphKind::Homotopy).collect()
    }
}

fn strs(rows: &[&[&str]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

fn corner(x: String) -> Vec<Vec<String>> {
    vec![vec!["0".into(), "0".into()], vec!["0".into(), x]]
}

impl LambdaN {
    /// Builds ξ, ζ (checked to be chain maps) and the homotopies h, g, k. Requires `n >= 1`.
    pub fn standard_maps(&self) -> Result<StandardMaps> {
        let n = self.n;
        if n == 0 {
            return Err(NccrError::Range("the standard maps need n >= 1".into()));
        }
        let r1 = Arc::new(self.simple_resolution(1)?);
        let r2 = Arc::new(self.simple_resolution(2)?);
        let na = n as i64;
        let (ch, ho) = (MorphKind::Chain, MorphKind::Homotopy);
        let xi = |name: &str, s: &Arc<PComplex>, t: &Arc<PComplex>, mid: Vec<Vec<String>>| {
            self.morphism(
                name,
                s,
                t,
                1,
                1,
                ch,
                &[(-3, strs(&[&["0"], &["1"]])), (-2, mid), (-1, strs(&[&["0", "-1"]]))],
            )
        };
        let xi12 = xi(
            "xi12",
            &r1,
            &r2,
            vec![
                vec!["0".into(), "a2".into()],
                vec!["- a1".into(), format!("- {}", power("e f", n - 1, "e", 1))],
            ],
        )?;
        let xi21 = xi(
            "xi21",
            &r2,
            &r1,
            vec![
                vec!["0".into(), "c1".into()],
                vec!["- c2".into(), power("f e", n - 1, "f", 2)],
            ],
        )?;
        let zeta = |name: &str, s: &Arc<PComplex>, t: &Arc<PComplex>| {
            self.morphism(
                name,
                s,
                t,
                2,
                2 * na + 1,
                ch,
                &[(-3, strs(&[&["0"], &["1"]])), (-2, strs(&[&["0", "1"]]))],
            )
        };
        let zeta12 = zeta("zeta12", &r1, &r2)?;
        let zeta21 = zeta("zeta21", &r2, &r1)?;
        let mid = |name: String, s: &Arc<PComplex>, t: &Arc<PComplex>, adams: i64, m: Vec<Vec<String>>| {
            self.morphism(&name, s, t, 1, adams, ho, &[(-2, m)])
        };
        let h11 = mid(
            "h11".into(),
            &r1,
            &r1,
            2,
            vec![vec!["1".into(), "0".into()], vec!["0".into(), power("f e", n - 1, "", 2)]],
        )?;
        let h22 = mid(
            "h22".into(),
            &r2,
            &r2,
            2,
            vec![
                vec!["1".into(), "0".into()],
                vec!["0".into(), format!("- {}", power("e f", n - 1, "", 1))],
            ],
        )?;
        let (mut g11, mut g22, mut k12, mut k21) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for j in 0..n.saturating_sub(1) {
            let e = n - 2 - j;
            let ja = j as i64;
            g11.push(mid(format!("g11^{j}"), &r1, &r1, 4 + 2 * ja, corner(power("f e", e, "", 2)))?);
            g22.push(mid(
                format!("g22^{j}"),
                &r2,
                &r2,
                4 + 2 * ja,
                corner(format!("- {}", power("e f", e, "", 1))),
            )?);
            k12.push(mid(
                format!("k12^{j}"),
                &r1,
                &r2,
                3 + 2 * ja,
                corner(format!("- {}", power("e f", e, "e", 1))),
            )?);
            k21.push(mid(format!("k21^{j}"), &r2, &r1, 3 + 2 * ja, corner(power("f e", e, "f", 2)))?);
        }
        Ok(StandardMaps {
            r1,
            r2,
            xi12,
            xi21,
            zeta12,
            zeta21,
            h11,
            h22,
            g11,
            g22,
            k12,
            k21,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MasseyReport {
    pub n: usize,
    pub field: String,
    pub sign_convention: String,
    pub checks: Vec<IdentityCheck>,
    pub passed: bool,
}

pub const SIGN_CONVENTION: &str = "δf = d∘f - (-1)^|f| f∘d; (g∘f)^q = g^(q+|f|) ∘ f^q";

impl LambdaN {
    fn check(&self, name: String, lhs: &PMorphism, rhs: &PMorphism) -> Result<IdentityCheck> {
        let passed = self.equal(lhs, rhs)?;
        let detail = format!("Adams {}, degree {}", lhs.adams, lhs.degree);
        Ok(IdentityCheck { name, passed, detail })
    }

    fn top_identity(&self, c: &Arc<PComplex>, sign: i64) -> Result<PMorphism> {
        let one = if sign > 0 { "1" } else { "-1" };
        let adams = -c.term(c.lo)[0].adams_shift;
        self.morphism(
            &format!("{one}·id_P"),
            c,
            c,
            c.hi() - c.lo,
            adams,
            MorphKind::Homotopy,
            &[(c.lo, strs(&[&[one]]))],
        )
    }

    /// Checks every identity used to compute the higher products, exactly.
    pub fn verify_massey_prep(&self) -> Result<MasseyReport> {
        let s = self.standard_maps()?;
        let n = self.n;
        let mut checks = Vec::new();
        let sum = |a: &PMorphism, b: &PMorphism, c: &PMorphism, d: &PMorphism| -> Result<PMorphism> {
            self.add(&self.compose(a, b)?, &self.compose(c, d)?)
        };
        for (name, m) in [("xi12", &s.xi12), ("xi21", &s.xi21), ("zeta12", &s.zeta12), ("zeta21", &s.zeta21)] {
            checks.push(IdentityCheck {
                name: format!("{name} is a chain map"),
                passed: self.is_chain_map(m)?,
                detail: format!("Adams {}", m.adams),
            });
        }
        checks.push(self.check("δh11 = xi21∘xi12".into(), &self.boundary(&s.h11)?, &self.compose(&s.xi21, &s.xi12)?)?);
        checks.push(self.check("δh22 = xi12∘xi21".into(), &self.boundary(&s.h22)?, &self.compose(&s.xi12, &s.xi21)?)?);

        let (rhs12, rhs21, label12, label21) = if n == 1 {
            (self.scale(&s.zeta12, -1), s.zeta21.clone(), "-zeta12".to_string(), "zeta21".to_string())
        } else {
            (self.boundary(&s.k12[0])?, self.boundary(&s.k21[0])?, "δk12^0".into(), "δk21^0".into())
        };
        let lhs = sum(&s.xi12, &s.h11, &s.h22, &s.xi12)?;
        checks.push(self.check(format!("xi12∘h11 + h22∘xi12 = {label12}"), &lhs, &rhs12)?);
        let lhs = sum(&s.xi21, &s.h22, &s.h11, &s.xi21)?;
        checks.push(self.check(format!("xi21∘h22 + h11∘xi21 = {label21}"), &lhs, &rhs21)?);

        for t in 0..n.saturating_sub(1) {
            let terminal = t == n - 2;
            let (rhs12, rhs21, l12, l21) = if terminal {
                (self.scale(&s.zeta12, -1), s.zeta21.clone(), "-zeta12".to_string(), "zeta21".to_string())
            } else {
                (
                    self.boundary(&s.k12[t + 1])?,
                    self.boundary(&s.k21[t + 1])?,
                    format!("δk12^{}", t + 1),
                    format!("δk21^{}", t + 1),
                )
            };
            let lhs = sum(&s.xi12, &s.g11[t], &s.g22[t], &s.xi12)?;
            checks.push(self.check(format!("xi12∘g11^{t} + g22^{t}∘xi12 = {l12}"), &lhs, &rhs12)?);
            let lhs = sum(&s.xi21, &s.g22[t], &s.g11[t], &s.xi21)?;
            checks.push(self.check(format!("xi21∘g22^{t} + g11^{t}∘xi21 = {l21}"), &lhs, &rhs21)?);
        }

        // Composites of two homotopies vanish one by one.
        let hs = s.homotopies();
        for u in &hs {
            for v in &hs {
                if v.target.name == u.source.name {
                    let c = self.compose(u, v)?;
                    checks.push(IdentityCheck {
                        name: format!("{}∘{} = 0", u.name, v.name),
                        passed: c.is_zero(),
                        detail: format!("Adams {}", c.adams),
                    });
                }
            }
        }

        let id1 = self.top_identity(&s.r1, 1)?;
        let mid1 = self.top_identity(&s.r1, -1)?;
        let id2 = self.top_identity(&s.r2, 1)?;
        let mid2 = self.top_identity(&s.r2, -1)?;
        checks.push(self.check("zeta21∘xi12 = id on P1".into(), &self.compose(&s.zeta21, &s.xi12)?, &id1)?);
        checks.push(self.check("xi21∘zeta12 = -id on P1".into(), &self.compose(&s.xi21, &s.zeta12)?, &mid1)?);
        checks.push(self.check("zeta12∘xi21 = id on P2".into(), &self.compose(&s.zeta12, &s.xi21)?, &id2)?);
        checks.push(self.check("xi12∘zeta21 = -id on P2".into(), &self.compose(&s.xi12, &s.zeta21)?, &mid2)?);
        let pairing = sum(&s.zeta21, &s.xi12, &s.xi21, &s.zeta12)?;
        checks.push(IdentityCheck {
            name: "zeta21∘xi12 + xi21∘zeta12 = 0".into(),
            passed: pairing.is_zero(),
            detail: format!("Adams {}", pairing.adams),
        });

        for m in [&s.xi12, &s.xi21, &s.zeta12, &s.zeta21] {
            let mut hom = HomComplex::new(self, m.source.clone(), m.target.clone());
            checks.push(IdentityCheck {
                name: format!("{} is not a boundary", m.name),
                passed: !hom.is_boundary(m)?,
                detail: format!("Adams {}, degree {}", m.adams, m.degree),
            });
        }

        let passed = checks.iter().all(|c| c.passed);
        Ok(MasseyReport {
            n,
            field: self.field().to_string(),
            sign_convention: SIGN_CONVENTION.into(),
            checks,
            passed,
        })
    }
}

/// Placement of one matrix-entry block inside a graded piece of a morphism complex.
#[derive(Debug, Clone, Copy)]
struct Block {
    q: i64,
    row: usize,
    col: usize,
    weight: usize,
    offset: usize,
    dim: usize,
}

#[derive(Debug, Default)]
struct Blocks {
    list: Vec<Block>,
    index: HashMap<(i64, usize, usize), Block>,
    dim: usize,
}

/// The complex `Hom(X, Y)` between complexes of projectives, one Adams degree at a time.
#[derive(Debug)]
pub struct HomComplex<'a> {
    lam: &'a LambdaN,
    x: Arc<PComplex>,
    y: Arc<PComplex>,
    left: HashMap<(i64, usize, usize), LeftMul<'a>>,
    right: HashMap<(i64, usize, usize), RightMul<'a>>,
    ranks: HashMap<(i64, i64), usize>,
}

impl<'a> HomComplex<'a> {
    pub fn new(lam: &'a LambdaN, x: Arc<PComplex>, y: Arc<PComplex>) -> HomComplex<'a> {
        HomComplex {
            lam,
            x,
            y,
            left: HashMap::new(),
            right: HashMap::new(),
            ranks: HashMap::new(),
        }
    }

    fn blocks(&self, p: i64, adams: i64) -> Result<Blocks> {
        let alg = &self.lam.alg;
        let mut out = Blocks::default();
        for q in self.x.lo..=self.x.hi() {
            let (src, tgt) = (self.x.term(q), self.y.term(q + p));
            for (row, t) in tgt.iter().enumerate() {
                for (col, s) in src.iter().enumerate() {
                    let w = t.adams_shift - s.adams_shift - adams;
                    if w < 0 {
                        continue;
                    }
                    if w as usize > alg.max_degree() {
                        return Err(NccrError::Range(format!(
                            "Hom^{p} in Adams degree {adams} needs degree {w} > {}",
                            alg.max_degree()
                        )));
                    }
                    let dim = alg.dim(w as usize, t.vertex, s.vertex)?;
                    let b = Block {
                        q,
                        row,
                        col,
                        weight: w as usize,
                        offset: out.dim,
                        dim,
                    };
                    out.dim += dim;
                    out.list.push(b);
                    out.index.insert((q, row, col), b);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `δ: Hom^p -> Hom^{p+1}` in Adams degree `adams`.
    fn delta(&mut self, p: i64, adams: i64) -> Result<Matrix> {
        let lam: &'a LambdaN = self.lam;
        let f = lam.field();
        let dom = self.blocks(p, adams)?;
        let cod = self.blocks(p + 1, adams)?;
        let mut m = Matrix::zeros(f, cod.dim, dom.dim);
        let sign = f.from_i64(if p % 2 == 0 { -1 } else { 1 });
        for b in &dom.list {
            if b.dim == 0 {
                continue;
            }
            let a_c = self.x.term(b.q)[b.col].vertex;
            let b_m = self.y.term(b.q + p)[b.row].vertex;
            // d∘F: left multiplication by the entries of d_Y.
            let dy = self.y.diff(b.q + p);
            for r in 0..dy.rows() {
                let (Some(x), Some(t)) = (dy.entry(r, b.row), cod.index.get(&(b.q, r, b.col))) else {
                    continue;
                };
                let lm = self
                    .left
                    .entry((b.q + p, r, b.row))
                    .or_insert_with(|| LeftMul::new(&lam.alg, x.clone()));
                m.paste(t.offset, b.offset, &lm.matrix(b.weight, a_c)?);
            }
            // F∘d: right multiplication by the entries of d_X.
            let dx = self.x.diff(b.q - 1);
            for c in 0..dx.cols() {
                let (Some(x), Some(t)) = (dx.entry(b.col, c), cod.index.get(&(b.q - 1, b.row, c))) else {
                    continue;
                };
                let rm = self
                    .right
                    .entry((b.q - 1, b.col, c))
                    .or_insert_with(|| RightMul::new(&lam.alg, x.clone()));
                m.paste(t.offset, b.offset, &rm.matrix(b.weight, b_m)?.scale(&sign));
            }
        }
        Ok(m)
    }

    fn rank(&mut self, p: i64, adams: i64) -> Result<usize> {
        if let Some(r) = self.ranks.get(&(p, adams)) {
            return Ok(*r);
        }
        let r = self.delta(p, adams)?.rank();
        self.ranks.insert((p, adams), r);
        Ok(r)
    }

    pub fn dim(&self, p: i64, adams: i64) -> Result<usize> {
        Ok(self.blocks(p, adams)?.dim)
    }

    /// `dim H^p` in Adams degree `adams`.
    pub fn cohomology(&mut self, p: i64, adams: i64) -> Result<usize> {
        let d = self.dim(p, adams)?;
        Ok(d - self.rank(p, adams)? - self.rank(p - 1, adams)?)
    }

    fn vectorize(&self, f: &PMorphism, blocks: &Blocks) -> Vec<Scalar> {
        let field = self.lam.field();
        let mut v = vec![field.zero(); blocks.dim];
        for b in &blocks.list {
            if let Some(e) = f.component(b.q).entry(b.row, b.col) {
                v[b.offset..b.offset + b.dim].clone_from_slice(&e.coeffs);
            }
        }
        v
    }

    /// Whether `f = δh` for some `h` of one lower degree.
    pub fn is_boundary(&mut self, f: &PMorphism) -> Result<bool> {
        let target = self.blocks(f.degree, f.adams)?;
        let rhs = self.vectorize(f, &target);
        let d = self.delta(f.degree - 1, f.adams)?;
        if d.cols() == 0 {
            return Ok(rhs.iter().all(Scalar::is_zero));
        }
        let b = Matrix::column(self.lam.field(), rhs);
        Ok(d.solve(&b)?.is_some())
    }

    /// Checks the assembled `δ` against `boundary` on the basis of `Hom^p`.
    pub fn delta_agrees_with_boundary(&mut self, p: i64, adams: i64) -> Result<bool> {
        let lam = self.lam;
        let dom = self.blocks(p, adams)?;
        let cod = self.blocks(p + 1, adams)?;
        let m = self.delta(p, adams)?;
        for b in &dom.list {
            let comp = lam.alg.component(b.weight, self.y.term(b.q + p)[b.row].vertex, self.x.term(b.q)[b.col].vertex)?;
            for k in 0..b.dim {
                let mut f = PMorphism::zero(&self.x, &self.y, p, adams);
                let mut pm = f.component(b.q);
                pm.set(b.row, b.col, Some(lam.alg.path_elem(&comp.basis[k])?))?;
                f.comps.insert(b.q, pm);
                let got = self.vectorize(&lam.boundary(&f)?, &cod);
                if got != m.col(b.offset + k) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Cohomology dimensions of `End(R1 ⊕ R2)` in degrees 0..=3, per Adams degree and summed.
#[derive(Debug, Clone, Serialize)]
pub struct ExtHilbert {
    pub n: usize,
    pub field: String,
    pub adams_window: (i64, i64),
    pub by_adams: Vec<(i64, [usize; 4])>,
    pub coefficients: Vec<usize>,
}

impl LambdaN {
    pub fn ext_hilbert(&self) -> Result<ExtHilbert> {
        let r1 = self.simple_resolution(1)?;
        let r2 = self.simple_resolution(2)?;
        let sum = Arc::new(r1.direct_sum(&r2));
        // Shifts span at most 2w + 2, so Hom vanishes above that Adams degree.
        let top = 2 * self.w() + 2;
        let lo = top - self.alg.max_degree() as i64;
        let mut hom = HomComplex::new(self, sum.clone(), sum);
        let mut coefficients = vec![0; 4];
        let mut by_adams = Vec::new();
        for d in lo..=top {
            let mut row = [0; 4];
            for p in 0..4 {
                row[p] = hom.cohomology(p as i64, d)?;
                coefficients[p] += row[p];
            }
            if row.iter().any(|&x| x > 0) {
                by_adams.push((d, row));
            }
        }
        Ok(ExtHilbert {
            n: self.n,
            field: self.field().to_string(),
            adams_window: (lo, top),
            by_adams,
            coefficients,
        })
    }
}

/// `ext_hilbert` on a fresh Λₙ with the default degree bound.
pub fn ext_hilbert(n: usize, field: Field) -> Result<ExtHilbert> {
    lambda_n(n, field, default_max_degree(n))?.ext_hilbert()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(n: usize, f: Field) -> LambdaN {
        lambda_n(n, f, default_max_degree(n)).unwrap()
    }

    #[test]
    fn degree_zero_pieces_are_one_dimensional() {
        let l = lam(1, Field::Rational);
        for v in 0..3 {
            assert_eq!(l.algebra().dim(0, v, v).unwrap(), 1);
        }
    }

    #[test]
    fn resolutions_are_exact() {
        for n in 0..=2 {
            let l = lam(n, Field::Rational);
            for i in 1..=2 {
                let r = l.simple_resolution(i).unwrap();
                let rep = l.verify_resolution(&r, 4 * n + 8).unwrap();
                let bad: Vec<_> = rep.rows.iter().filter(|r| !r.ok).take(3).collect();
                assert!(rep.passed, "n={n} i={i} d2={} {:?}", rep.d_squared_zero, bad);
            }
        }
    }

    #[test]
    fn standard_maps_and_first_identities() {
        for n in 1..=3 {
            let l = lam(n, Field::Rational);
            let s = l.standard_maps().unwrap();
            let x = l.compose(&s.xi21, &s.xi12).unwrap();
            let b = l.boundary(&s.h11).unwrap();
            assert!(l.equal(&b, &x).unwrap(), "n={n}");
            let x = l.compose(&s.xi12, &s.xi21).unwrap();
            let b = l.boundary(&s.h22).unwrap();
            assert!(l.equal(&b, &x).unwrap(), "n={n}");
        }
    }

    #[test]
    fn equality_detects_wrong_scalars() {
        let l = lam(2, Field::Rational);
        let s = l.standard_maps().unwrap();
        let x = l.compose(&s.xi21, &s.xi12).unwrap();
        assert!(!x.is_zero());
        assert!(!l.equal(&x, &l.scale(&x, 2)).unwrap());
        let top = l.compose(&s.zeta21, &s.xi12).unwrap();
        assert!(!l.equal(&top, &l.scale(&top, -1)).unwrap());
    }

    #[test]
    fn massey_prep_report() {
        for n in 1..=3 {
            let l = lam(n, Field::Rational);
            let rep = l.verify_massey_prep().unwrap();
            let bad: Vec<_> = rep.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
            assert!(rep.passed, "n={n}: {bad:?}");
        }
    }

    #[test]
    fn hilbert_series() {
        let h = ext_hilbert(1, Field::Rational).unwrap();
        assert_eq!(h.coefficients, vec![2, 2, 2, 2], "{:?}", h.by_adams);
    }

    #[test]
    fn assembled_delta_matches_boundary() {
        let l = lam(1, Field::prime(3).unwrap());
        let s = l.standard_maps().unwrap();
        let mut hom = HomComplex::new(&l, s.r1.clone(), s.r2.clone());
        for p in -1..=2 {
            for d in -2..=3 {
                assert!(hom.delta_agrees_with_boundary(p, d).unwrap(), "p={p} D={d}");
            }
        }
    }

    #[test]
    fn presentation_examples() {
        let p1 = lambda_n_presentation(1).unwrap();
        let text1: Vec<String> = p1.relations.iter().map(|r| r.display(&p1.quiver)).collect();
        assert!(text1.iter().any(|r| r.replace(' ', "") == "l-a2c2+c1a1"), "{text1:?}");
        let p0 = lambda_n_presentation(0).unwrap();
        let text0: Vec<String> = p0.relations.iter().map(|r| r.display(&p0.quiver)).collect();
        assert!(text0.iter().any(|r| r.replace(' ', "") == "a1c1e-ec2a2"), "{text0:?}");
    }

    #[test]
    fn resolution_end_maps() {
        let l = lam(2, Field::Rational);
        let r1 = l.simple_resolution(1).unwrap();
        let last = r1.diffs.last().unwrap();
        assert_eq!(l.algebra().display(last.entry(0, 0).unwrap()), "a1");
        assert_eq!(l.algebra().display(last.entry(0, 1).unwrap()), "e");
        let r2 = l.simple_resolution(2).unwrap();
        assert_eq!(l.algebra().display(r2.diffs[0].entry(0, 0).unwrap()), "a2");
        assert_eq!(l.algebra().display(r2.diffs[0].entry(1, 0).unwrap()), "e");
        assert!(l.simple_resolution(0).is_err());
    }

    #[test]
    fn entries_have_degree_zero_after_shifts() {
        // Independent bookkeeping: sum of arrow weights along each basis path.
        for n in 0..=3 {
            let l = lam(n, Field::Rational);
            let g = &l.algebra().presentation().grading;
            for i in 1..=2 {
                let r = l.simple_resolution(i).unwrap();
                for m in &r.diffs {
                    for row in 0..m.rows() {
                        for col in 0..m.cols() {
                            if let Some(x) = m.entry(row, col) {
                                let c = l.algebra().component(x.degree, x.source, x.target).unwrap();
                                for p in &c.basis {
                                    let w = p.arrows.iter().map(|&a| g.weights[a] as i64).sum::<i64>();
                                    assert_eq!(w, m.target[row].adams_shift - m.source[col].adams_shift);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn grades_and_trivial_compositions() {
        let n = 2;
        let l = lam(n, Field::prime(5).unwrap());
        let s = l.standard_maps().unwrap();
        assert_eq!((s.xi12.adams, s.xi21.adams), (1, 1));
        assert_eq!((s.zeta12.adams, s.zeta21.adams), (2 * n as i64 + 1, 2 * n as i64 + 1));
        let id = l.identity(&s.r2).unwrap();
        assert!(l.equal(&l.compose(&id, &s.xi12).unwrap(), &s.xi12).unwrap());
        let c = l.compose(&s.xi21, &s.xi12).unwrap();
        assert_eq!(c.adams, 2);
        assert!(l.boundary(&s.xi12).unwrap().is_zero());
        let z = PMorphism::zero(&s.r1, &s.r2, 1, 3);
        assert!(l.boundary(&z).unwrap().is_zero());
        assert!(l.compose(&s.xi12, &s.xi12).is_err());
        assert!(lam(0, Field::Rational).standard_maps().is_err());
        assert_eq!(s.g11.len(), n - 1);
        assert!(s.get("k21^0").is_some() && s.get("k21^1").is_none());
    }

    #[test]
    fn massey_prep_counts() {
        let l = lam(3, Field::Rational);
        let rep = l.verify_massey_prep().unwrap();
        let part3 = rep.checks.iter().filter(|c| c.name.starts_with("xi") && c.name.contains("∘g")).count();
        assert_eq!(part3, 4);
        let l = lam(2, Field::Rational);
        let rep = l.verify_massey_prep().unwrap();
        assert!(rep.checks.iter().any(|c| c.passed && c.name == "xi12∘g11^0 + g22^0∘xi12 = -zeta12"));
    }

    #[test]
    fn identity_is_a_cocycle_not_boundary() {
        let l = lam(1, Field::Rational);
        let r = Arc::new(l.simple_resolution(1).unwrap());
        let id = l.identity(&r).unwrap();
        let mut hom = HomComplex::new(&l, r.clone(), r);
        assert!(!hom.is_boundary(&id).unwrap());
        assert_eq!(hom.cohomology(0, 0).unwrap(), 1);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        #[test]
        fn delta_squares_to_zero(n in 1usize..=3, p in -2i64..=2, d in -4i64..=6, fi in 0usize..3) {
            let f = [Field::Rational, Field::prime(2).unwrap(), Field::prime(3).unwrap()][fi];
            let l = lam(n, f);
            let r = Arc::new(l.simple_resolution(1).unwrap().direct_sum(&l.simple_resolution(2).unwrap()));
            let mut hom = HomComplex::new(&l, r.clone(), r);
            let a = hom.delta(p, d).unwrap();
            let b = hom.delta(p + 1, d).unwrap();
            if a.cols() > 0 && b.rows() > 0 {
                proptest::prop_assert!(b.mul(&a).is_zero());
            }
        }
    }
}
