//! Quivers, paths, and finite-dimensional quotients of path algebras.
//!
//! Paths are stored in traversal order. Products follow composition order:
//! `u * v` means "first `v`, then `u`", so representations are left modules.

pub mod abstract_alg;
pub mod coeff;
pub mod config;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::linalg::{axpy, is_zero_vec, unit_vec, zero_vec, Echelon, Scalar, Vector};

pub use abstract_alg::{AbstractAlgebra, Presentation};
pub use coeff::{tensor_abstract, tensor_algebra, LocalAlgebra, TensorData};

pub const DEFAULT_PATH_CAP: usize = 64;
const PATH_LIMIT: usize = 200_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("relations are not admissible within path length {0}")]
    NotAdmissible(usize),
    #[error("quiver has an oriented cycle or loop")]
    NotAcyclic,
    #[error("invalid relation: {0}")]
    BadRelation(String),
    #[error("algebra is not basic")]
    NotBasic,
    #[error("coefficient algebra rejected: {0}")]
    BadCoefficients(String),
    #[error("config error on line {line}: {msg}")]
    Config { line: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quiver {
    pub n: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(n: usize) -> Self {
        Quiver { n, arrows: Vec::new() }
    }

    pub fn with_arrows(n: usize, arrows: &[(&str, usize, usize)]) -> Self {
        let mut q = Quiver::new(n);
        for &(name, s, t) in arrows {
            q.add_arrow(name, s, t);
        }
        q
    }

    /// Linearly oriented A_n: 1 -> 2 -> ... -> n with arrows a, b, c, ...
    pub fn type_a(n: usize) -> Self {
        let mut q = Quiver::new(n);
        for i in 0..n.saturating_sub(1) {
            q.add_arrow(&((b'a' + i as u8) as char).to_string(), i, i + 1);
        }
        q
    }

    /// D_4 with all arrows pointing at the branch vertex 2.
    pub fn type_d4() -> Self {
        Quiver::with_arrows(4, &[("a", 0, 1), ("b", 2, 1), ("c", 3, 1)])
    }

    pub fn add_arrow(&mut self, name: &str, source: usize, target: usize) -> usize {
        assert!(source < self.n && target < self.n, "arrow endpoint out of range");
        self.arrows.push(Arrow { name: name.to_string(), source, target });
        self.arrows.len() - 1
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.iter().any(|a| a.source == a.target)
    }

    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen == self.n
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            n: self.n,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    /// Tits form (x, x) = sum x_i^2 - sum over arrows x_s x_t, as a symmetric matrix.
    pub fn tits_form(&self) -> crate::linalg::Matrix {
        let mut m = crate::linalg::Matrix::identity(self.n);
        for a in &self.arrows {
            let (s, t) = (a.source, a.target);
            if s == t {
                m.set(s, s, m.get(s, s) - &Scalar::one());
            } else {
                let half = Scalar::frac(-1, 2);
                m.set(s, t, m.get(s, t) + &half);
                m.set(t, s, m.get(t, s) + &half);
            }
        }
        m
    }

    /// Positive definite Tits form, tested by leading principal minors.
    pub fn is_dynkin(&self) -> bool {
        if !self.is_acyclic() {
            return false;
        }
        let m = self.tits_form();
        (1..=self.n).all(|k| determinant(&m.block(0, 0, k, k)) > Scalar::zero())
    }
}

fn determinant(m: &crate::linalg::Matrix) -> Scalar {
    let n = m.rows();
    let mut rows: Vec<Vector> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut det = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            rows.swap(p, c);
            det = -det;
        }
        det = &det * &rows[c][c];
        let inv = rows[c][c].inv();
        let pivot = rows[c].clone();
        for row in rows.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = -(&row[c] * &inv);
                axpy(row, &f, &pivot);
            }
        }
    }
    det
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { start: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        Path { start: q.arrows[a].source, arrows: vec![a] }
    }

    /// Path from traversal-order arrow names.
    pub fn from_names(q: &Quiver, names: &[&str]) -> Option<Self> {
        let first = q.arrow_index(names.first()?)?;
        let mut p = Path::arrow(q, first);
        for n in &names[1..] {
            p = p.then(&Path::arrow(q, q.arrow_index(n)?), q)?;
        }
        Some(p)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> usize {
        self.start
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows.last().map_or(self.start, |&a| q.arrows[a].target)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if self.target(q) != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { start: self.start, arrows })
    }

    /// The same arrows traversed backwards, as a path of the opposite quiver.
    pub fn reversed(&self, q: &Quiver) -> Path {
        Path { start: self.target(q), arrows: self.arrows.iter().rev().copied().collect() }
    }

    /// Composition notation, last arrow first: `b*a` for "a then b".
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.start + 1);
        }
        self.arrows.iter().rev().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("*")
    }
}

/// A linear combination of parallel paths.
pub type PathComb = Vec<(Scalar, Path)>;

fn paths_up_to(q: &Quiver, max_len: usize) -> Option<Vec<Path>> {
    let mut all: Vec<Path> = (0..q.n).map(Path::trivial).collect();
    let mut frontier = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            let t = p.target(q);
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == t {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { start: p.start, arrows });
                }
            }
        }
        if all.len() + next.len() > PATH_LIMIT {
            return None;
        }
        all.extend(next.iter().cloned());
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Some(all)
}

/// A finite-dimensional algebra kQ/I with a basis of normal-form paths.
#[derive(Debug)]
pub struct Algebra {
    pub id: String,
    pub quiver: Quiver,
    pub relations: Vec<PathComb>,
    basis: Vec<Path>,
    normal: HashMap<Path, Vector>,
    bound: usize,
    by_ends: Vec<Vec<Vec<usize>>>,
    opposite: OnceLock<Arc<Algebra>>,
}

impl Algebra {
    pub fn n(&self) -> usize {
        self.quiver.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Every path of length at least this is zero.
    pub fn vanishing_length(&self) -> usize {
        self.bound
    }

    /// Basis indices of paths from `src` to `tgt`, i.e. a basis of e_tgt A e_src.
    pub fn paths_between(&self, src: usize, tgt: usize) -> &[usize] {
        &self.by_ends[src][tgt]
    }

    pub fn source_of(&self, b: usize) -> usize {
        self.basis[b].start
    }

    pub fn target_of(&self, b: usize) -> usize {
        self.basis[b].target(&self.quiver)
    }

    /// Normal form of an arbitrary path in basis coordinates.
    pub fn normal_form(&self, p: &Path) -> Vector {
        if p.len() >= self.bound {
            return zero_vec(self.dim());
        }
        self.normal.get(p).cloned().unwrap_or_else(|| zero_vec(self.dim()))
    }

    pub fn comb_element(&self, c: &PathComb) -> Vector {
        let mut v = zero_vec(self.dim());
        for (s, p) in c {
            axpy(&mut v, s, &self.normal_form(p));
        }
        v
    }

    pub fn idempotent(&self, v: usize) -> Vector {
        self.normal_form(&Path::trivial(v))
    }

    pub fn arrow_element(&self, a: usize) -> Vector {
        self.normal_form(&Path::arrow(&self.quiver, a))
    }

    /// Basis product: first `basis[j]`, then `basis[i]`.
    pub fn mul_basis(&self, i: usize, j: usize) -> Vector {
        match self.basis[j].then(&self.basis[i], &self.quiver) {
            Some(p) => self.normal_form(&p),
            None => zero_vec(self.dim()),
        }
    }

    pub fn mul(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = zero_vec(self.dim());
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                axpy(&mut out, &(a * b), &self.mul_basis(i, j));
            }
        }
        out
    }

    /// Cartan matrix, entry (i, j) = dim e_i A e_j.
    pub fn cartan(&self) -> Vec<Vec<usize>> {
        (0..self.n()).map(|i| (0..self.n()).map(|j| self.paths_between(j, i).len()).collect()).collect()
    }

    /// dim rad^k for k = 0, 1, ... until zero, with rad the arrow ideal.
    pub fn radical_series_dims(&self) -> Vec<usize> {
        let mut dims = Vec::new();
        for k in 0..=self.bound {
            let mut e = Echelon::new(self.dim());
            for (p, v) in &self.normal {
                if p.len() >= k {
                    e.insert(v);
                }
            }
            dims.push(e.rank());
            if e.rank() == 0 {
                break;
            }
        }
        dims
    }

    pub fn opposite(&self) -> Arc<Algebra> {
        self.opposite
            .get_or_init(|| {
                let q = self.quiver.opposite();
                let rels = self
                    .relations
                    .iter()
                    .map(|r| r.iter().map(|(c, p)| (c.clone(), p.reversed(&self.quiver))).collect())
                    .collect();
                Arc::new(
                    build_path_algebra(&format!("{}^op", self.id), q, rels, self.bound.max(1) + 1)
                        .expect("opposite of an admissible algebra is admissible"),
                )
            })
            .clone()
    }

    pub fn to_abstract(&self) -> AbstractAlgebra {
        let d = self.dim();
        let table = (0..d).map(|i| (0..d).map(|j| self.mul_basis(i, j)).collect()).collect();
        let labels = self.basis.iter().map(|p| p.display(&self.quiver)).collect();
        let idem = (0..self.n()).map(|v| self.idempotent(v)).collect();
        AbstractAlgebra::new(labels, table, idem)
    }

    pub fn describe_relations(&self) -> Vec<String> {
        self.relations.iter().map(|r| comb_display(r, &self.quiver)).collect()
    }
}

pub fn comb_display(r: &PathComb, q: &Quiver) -> String {
    let mut s = String::new();
    for (i, (c, p)) in r.iter().enumerate() {
        let neg = c < &Scalar::zero();
        let mag = if neg { -c } else { c.clone() };
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            s.push_str(&format!("{mag}*"));
        }
        s.push_str(&p.display(q));
    }
    s
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {}, {} vertices, {} arrows)", self.id, self.dim(), self.n(), self.arrow_count())
    }
}

/// Quotient of the path algebra by the ideal generated by `relations`.
pub fn build_path_algebra(
    id: &str,
    q: Quiver,
    relations: Vec<PathComb>,
    cap: usize,
) -> Result<Algebra, AlgebraError> {
    for r in &relations {
        let Some((_, first)) = r.first() else {
            return Err(AlgebraError::BadRelation("empty relation".into()));
        };
        let (s, t) = (first.source(), first.target(&q));
        for (_, p) in r {
            if p.arrows.iter().any(|&a| a >= q.arrows.len()) {
                return Err(AlgebraError::BadRelation("unknown arrow".into()));
            }
            if p.source() != s || p.target(&q) != t {
                return Err(AlgebraError::BadRelation(comb_display(r, &q)));
            }
            for w in p.arrows.windows(2) {
                if q.arrows[w[0]].target != q.arrows[w[1]].source {
                    return Err(AlgebraError::BadRelation(format!("{} is not a path", p.display(&q))));
                }
            }
        }
    }
    for bound in 1..=cap {
        let Some(mut paths) = paths_up_to(&q, bound) else {
            return Err(AlgebraError::NotAdmissible(bound));
        };
        paths.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let col: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut ending: Vec<Vec<&Path>> = vec![Vec::new(); q.n];
        let mut starting: Vec<Vec<&Path>> = vec![Vec::new(); q.n];
        for p in &paths {
            ending[p.target(&q)].push(p);
            starting[p.start].push(p);
        }
        let mut ideal = Echelon::new(paths.len());
        for r in &relations {
            let s = r[0].1.source();
            let t = r[0].1.target(&q);
            let min_len = r.iter().map(|(_, p)| p.len()).min().unwrap_or(0);
            for pre in &ending[s] {
                for post in &starting[t] {
                    if pre.len() + min_len + post.len() > bound {
                        continue;
                    }
                    let mut v = zero_vec(paths.len());
                    for (c, p) in r {
                        if pre.len() + p.len() + post.len() > bound {
                            continue;
                        }
                        let full = pre.then(p, &q).and_then(|x| x.then(post, &q)).expect("composable");
                        let i = col[&full];
                        v[i] = &v[i] + c;
                    }
                    if !is_zero_vec(&v) {
                        ideal.insert(&v);
                    }
                }
            }
        }
        let top_vanishes =
            paths.iter().filter(|p| p.len() == bound).all(|p| ideal.contains(&unit_vec(paths.len(), col[p])));
        if !top_vanishes {
            continue;
        }
        let pivots: std::collections::HashSet<usize> = ideal.pivots().iter().copied().collect();
        let mut basis: Vec<Path> =
            paths.iter().enumerate().filter(|(i, p)| p.len() < bound && !pivots.contains(i)).map(|(_, p)| p.clone()).collect();
        basis.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let bidx: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut normal = HashMap::new();
        for (i, p) in paths.iter().enumerate() {
            if p.len() >= bound {
                continue;
            }
            let red = ideal.reduce(&unit_vec(paths.len(), i));
            let mut v = zero_vec(basis.len());
            for (j, x) in red.iter().enumerate() {
                if !x.is_zero() {
                    v[bidx[&paths[j]]] = x.clone();
                }
            }
            normal.insert(p.clone(), v);
        }
        let mut by_ends = vec![vec![Vec::new(); q.n]; q.n];
        for (i, p) in basis.iter().enumerate() {
            by_ends[p.start][p.target(&q)].push(i);
        }
        return Ok(Algebra {
            id: id.to_string(),
            quiver: q,
            relations,
            basis,
            normal,
            bound,
            by_ends,
            opposite: OnceLock::new(),
        });
    }
    Err(AlgebraError::NotAdmissible(cap))
}

/// The path algebra kQ of an acyclic quiver.
pub fn path_algebra(id: &str, q: Quiver) -> Result<Algebra, AlgebraError> {
    if !q.is_acyclic() {
        return Err(AlgebraError::NotAcyclic);
    }
    let cap = q.n + 1;
    build_path_algebra(id, q, Vec::new(), cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comb(q: &Quiver, terms: &[(i64, &[&str])]) -> PathComb {
        terms.iter().map(|(c, names)| (Scalar::int(*c), Path::from_names(q, names).unwrap())).collect()
    }

    #[test]
    fn path_counts_for_type_a() {
        assert_eq!(path_algebra("kA2", Quiver::type_a(2)).unwrap().dim(), 3);
        assert_eq!(path_algebra("kA3", Quiver::type_a(3)).unwrap().dim(), 6);
    }

    #[test]
    fn tensor_presentation_for_a3_has_dimension_12() {
        let mut q = Quiver::type_a(3);
        for v in 0..3 {
            q.add_arrow(&format!("x{}", v + 1), v, v);
        }
        let rels = vec![
            comb(&q, &[(1, &["x1", "x1"])]),
            comb(&q, &[(1, &["x2", "x2"])]),
            comb(&q, &[(1, &["x3", "x3"])]),
            comb(&q, &[(1, &["a", "x2"]), (-1, &["x1", "a"])]),
            comb(&q, &[(1, &["b", "x3"]), (-1, &["x2", "b"])]),
        ];
        let a = build_path_algebra("L", q, rels, DEFAULT_PATH_CAP).unwrap();
        assert_eq!(a.dim(), 12);
        assert_eq!(a.cartan(), vec![vec![2, 0, 0], vec![2, 2, 0], vec![2, 2, 2]]);
    }

    #[test]
    fn cycle_without_relations_is_rejected() {
        let q = Quiver::with_arrows(1, &[("x", 0, 0)]);
        assert_eq!(build_path_algebra("c", q, vec![], 8).unwrap_err(), AlgebraError::NotAdmissible(8));
    }

    #[test]
    fn products_follow_composition_order() {
        let a = path_algebra("kA3", Quiver::type_a(3)).unwrap();
        let pa = a.arrow_element(0);
        let pb = a.arrow_element(1);
        let ba = a.mul(&pb, &pa);
        assert!(!is_zero_vec(&ba));
        assert!(is_zero_vec(&a.mul(&pa, &pb)));
    }

    #[test]
    fn dynkin_detection() {
        assert!(Quiver::type_a(3).is_dynkin());
        assert!(Quiver::type_d4().is_dynkin());
        let affine = Quiver::with_arrows(2, &[("a", 0, 1), ("b", 0, 1)]);
        assert!(!affine.is_dynkin());
    }

    #[test]
    fn opposite_has_same_dimension() {
        let a = path_algebra("kA3", Quiver::type_a(3)).unwrap();
        assert_eq!(a.opposite().dim(), 6);
    }
}
