//! Modules as matrix representations of bound quivers.

pub mod catalog;
pub mod decomp;
pub mod induce;

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{Algebra, Path};
use crate::linalg::{kernel_basis, unit_vec, Coords, Echelon, Matrix, Vector};

pub use catalog::{knit_hereditary_catalog, Catalog, CatalogEntry};
pub use decomp::{decompose, end_algebra, is_indecomposable, is_isomorphic, Summand};
pub use induce::{induce, restrict};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuleError {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("relations do not hold")]
    RelationsFail,
    #[error("zero module")]
    ZeroModule,
    #[error("decomposition sweep exhausted without splitting")]
    SweepExhausted,
    #[error("quiver is not of Dynkin type")]
    NotDynkin,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Module {
    pub dims: Vec<usize>,
    /// One matrix per arrow, of size dims[target] x dims[source].
    pub act: Vec<Matrix>,
}

/// Per-vertex linear maps between two modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub blocks: Vec<Matrix>,
}

impl Module {
    pub fn zero(alg: &Algebra) -> Self {
        Module { dims: vec![0; alg.n()], act: vec![Matrix::zeros(0, 0); alg.arrow_count()] }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut off = vec![0];
        for d in &self.dims {
            off.push(off.last().unwrap() + d);
        }
        off
    }

    /// Action of a path, composed in traversal order.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.dims[p.start]);
        for &a in &p.arrows {
            m = self.act[a].mul(&m);
        }
        m
    }

    /// Action of the element `x` of e_t A e_s as a map from vertex s to vertex t.
    pub fn element_block(&self, alg: &Algebra, x: &[crate::linalg::Scalar], s: usize, t: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dims[t], self.dims[s]);
        for &b in alg.paths_between(s, t) {
            if !x[b].is_zero() {
                m = m.add(&self.path_matrix(&alg.basis()[b]).scale(&x[b]));
            }
        }
        m
    }

    pub fn satisfies_relations(&self, alg: &Algebra) -> bool {
        if self.dims.len() != alg.n() || self.act.len() != alg.arrow_count() {
            return false;
        }
        for (a, arr) in alg.quiver.arrows.iter().enumerate() {
            if self.act[a].rows() != self.dims[arr.target] || self.act[a].cols() != self.dims[arr.source] {
                return false;
            }
        }
        alg.relations.iter().all(|r| {
            let (s, t) = (r[0].1.source(), r[0].1.target(&alg.quiver));
            let mut m = Matrix::zeros(self.dims[t], self.dims[s]);
            for (c, p) in r {
                m = m.add(&self.path_matrix(p).scale(c));
            }
            m.is_zero()
        })
    }

    pub fn direct_sum(alg: &Algebra, parts: &[&Module]) -> Module {
        let n = alg.n();
        let dims = (0..n).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
        let act = (0..alg.arrow_count()).map(|a| Matrix::block_diag(&parts.iter().map(|m| &m.act[a]).collect::<Vec<_>>())).collect();
        Module { dims, act }
    }

    /// The dual module over the opposite algebra.
    pub fn dual(&self) -> Module {
        Module { dims: self.dims.clone(), act: self.act.iter().map(Matrix::transpose).collect() }
    }

    pub fn to_text(&self, name: &str, alg: &Algebra) -> String {
        let mut s = format!("module {name} over {}\n", alg.id);
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(s, "dims = [{}]", dims.join(","));
        for (a, arr) in alg.quiver.arrows.iter().enumerate() {
            let _ = writeln!(s, "act {} = {}", arr.name, self.act[a].serialize());
        }
        s
    }

    /// Parses the text form; returns the module name and the module.
    pub fn from_text(alg: &Algebra, text: &str) -> Result<(String, Module), ModuleError> {
        let perr = |line: usize, msg: &str| ModuleError::Parse { line, msg: msg.to_string() };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
        let rest = header.trim().strip_prefix("module ").ok_or_else(|| perr(1, "expected `module <name> over <id>`"))?;
        let (name, id) = rest.rsplit_once(" over ").ok_or_else(|| perr(1, "expected `over`"))?;
        if id.trim() != alg.id {
            return Err(perr(1, "algebra id mismatch"));
        }
        let (ln, dl) = lines.next().ok_or_else(|| perr(2, "missing dims"))?;
        let inner = dl
            .trim()
            .strip_prefix("dims = [")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| perr(ln + 1, "expected `dims = [..]`"))?;
        let dims: Vec<usize> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(|x| x.trim().parse().map_err(|_| perr(ln + 1, "bad dimension"))).collect::<Result<_, _>>()?
        };
        if dims.len() != alg.n() {
            return Err(perr(ln + 1, "wrong number of vertices"));
        }
        let mut act: Vec<Option<Matrix>> = vec![None; alg.arrow_count()];
        for (ln, l) in lines {
            let r = l.trim().strip_prefix("act ").ok_or_else(|| perr(ln + 1, "expected `act <gen> = <matrix>`"))?;
            let (g, m) = r.split_once('=').ok_or_else(|| perr(ln + 1, "expected `=`"))?;
            let a = alg.quiver.arrow_index(g.trim()).ok_or_else(|| perr(ln + 1, "unknown generator"))?;
            let arr = &alg.quiver.arrows[a];
            let mat = Matrix::parse(m.trim(), dims[arr.target], dims[arr.source]).map_err(|e| perr(ln + 1, &e.to_string()))?;
            act[a] = Some(mat);
        }
        let act = act
            .into_iter()
            .enumerate()
            .map(|(a, m)| m.ok_or_else(|| perr(0, &format!("missing action of {}", alg.quiver.arrows[a].name))))
            .collect::<Result<Vec<_>, _>>()?;
        let m = Module { dims, act };
        if !m.satisfies_relations(alg) {
            return Err(ModuleError::RelationsFail);
        }
        Ok((name.trim().to_string(), m))
    }
}

impl Morphism {
    pub fn zero(src: &Module, tgt: &Module) -> Self {
        Morphism { blocks: src.dims.iter().zip(&tgt.dims).map(|(&s, &t)| Matrix::zeros(t, s)).collect() }
    }

    pub fn identity(m: &Module) -> Self {
        Morphism { blocks: m.dims.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        Morphism { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism { blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &crate::linalg::Scalar) -> Morphism {
        Morphism { blocks: self.blocks.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.is_square() && b.rank() == b.rows())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn flatten(&self) -> Vector {
        self.blocks.iter().flat_map(|b| b.entries().iter().cloned()).collect()
    }

    pub fn is_morphism(&self, alg: &Algebra, src: &Module, tgt: &Module) -> bool {
        alg.quiver.arrows.iter().enumerate().all(|(a, arr)| {
            self.blocks[arr.target].mul(&src.act[a]) == tgt.act[a].mul(&self.blocks[arr.source])
        })
    }

    pub fn transpose(&self) -> Morphism {
        Morphism { blocks: self.blocks.iter().map(Matrix::transpose).collect() }
    }

    /// Block matrix from a direct sum of sources into a direct sum of targets.
    pub fn from_grid(grid: &[Vec<Morphism>], srcs: &[&Module], tgts: &[&Module]) -> Morphism {
        let n = srcs.first().or(tgts.first()).map_or(0, |m| m.dims.len());
        let blocks = (0..n)
            .map(|v| {
                let rows: usize = tgts.iter().map(|m| m.dims[v]).sum();
                let cols: usize = srcs.iter().map(|m| m.dims[v]).sum();
                let mut out = Matrix::zeros(rows, cols);
                let mut r0 = 0;
                for (i, t) in tgts.iter().enumerate() {
                    let mut c0 = 0;
                    for (j, s) in srcs.iter().enumerate() {
                        out.put_block(r0, c0, &grid[i][j].blocks[v]);
                        c0 += s.dims[v];
                    }
                    r0 += t.dims[v];
                }
                out
            })
            .collect();
        Morphism { blocks }
    }
}

/// Basis of Hom(m, n) from one kernel computation.
pub fn hom_space(alg: &Algebra, m: &Module, n: &Module) -> Vec<Morphism> {
    let nv = alg.n();
    let mut off = vec![0usize; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + n.dims[v] * m.dims[v];
    }
    let rows: usize = alg.quiver.arrows.iter().map(|a| n.dims[a.target] * m.dims[a.source]).sum();
    let mut mat = Matrix::zeros(rows, off[nv]);
    let mut r0 = 0;
    for (ai, a) in alg.quiver.arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ms, mt, ns, nt) = (m.dims[s], m.dims[t], n.dims[s], n.dims[t]);
        let (ma, na) = (&m.act[ai], &n.act[ai]);
        for i in 0..nt {
            for j in 0..ms {
                let row = r0 + i * ms + j;
                for k in 0..mt {
                    let c = off[t] + i * mt + k;
                    let v = mat.get(row, c) + ma.get(k, j);
                    mat.set(row, c, v);
                }
                for k in 0..ns {
                    let c = off[s] + k * ms + j;
                    let v = mat.get(row, c) - na.get(i, k);
                    mat.set(row, c, v);
                }
            }
        }
        r0 += nt * ms;
    }
    kernel_basis(&mat)
        .into_iter()
        .map(|x| Morphism {
            blocks: (0..nv)
                .map(|v| Matrix::new(n.dims[v], m.dims[v], x[off[v]..off[v + 1]].to_vec()).expect("block shape"))
                .collect(),
        })
        .collect()
}

pub fn hom_dim(alg: &Algebra, m: &Module, n: &Module) -> usize {
    if m.is_zero() || n.is_zero() {
        return 0;
    }
    hom_space(alg, m, n).len()
}

/// P_i = A e_i.
pub fn projective(alg: &Algebra, i: usize) -> Module {
    let n = alg.n();
    let dims: Vec<usize> = (0..n).map(|j| alg.paths_between(i, j).len()).collect();
    let act = alg
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let src = alg.paths_between(i, arr.source);
            let tgt = alg.paths_between(i, arr.target);
            let ae = alg.arrow_element(a);
            let cols: Vec<Vector> = src
                .iter()
                .map(|&p| {
                    let prod = alg.mul(&ae, &unit_vec(alg.dim(), p));
                    tgt.iter().map(|&q| prod[q].clone()).collect()
                })
                .collect();
            Matrix::from_columns(&cols, tgt.len())
        })
        .collect();
    Module { dims, act }
}

/// I_i = D(e_i A).
pub fn injective(alg: &Algebra, i: usize) -> Module {
    let n = alg.n();
    let dims: Vec<usize> = (0..n).map(|v| alg.paths_between(v, i).len()).collect();
    let act = alg
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let into_v = alg.paths_between(arr.source, i);
            let into_w = alg.paths_between(arr.target, i);
            let ae = alg.arrow_element(a);
            let cols: Vec<Vector> = into_w
                .iter()
                .map(|&q| {
                    let prod = alg.mul(&unit_vec(alg.dim(), q), &ae);
                    into_v.iter().map(|&p| prod[p].clone()).collect()
                })
                .collect();
            Matrix::from_columns(&cols, into_v.len()).transpose()
        })
        .collect();
    Module { dims, act }
}

pub fn simple(alg: &Algebra, i: usize) -> Module {
    let dims: Vec<usize> = (0..alg.n()).map(|v| usize::from(v == i)).collect();
    let act = alg.quiver.arrows.iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
    Module { dims, act }
}

/// Submodule spanned at each vertex by the given vectors, with its inclusion.
pub fn submodule(alg: &Algebra, m: &Module, span: &[Vec<Vector>]) -> (Module, Morphism) {
    let bases: Vec<Vec<Vector>> = span
        .iter()
        .map(|vs| {
            let mut e = Echelon::new(0);
            let mut out = Vec::new();
            for v in vs {
                if e.dim() == 0 {
                    e = Echelon::new(v.len());
                }
                if e.insert(v) {
                    out.push(v.clone());
                }
            }
            out
        })
        .collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let coords: Vec<Coords> = bases.iter().enumerate().map(|(v, b)| Coords::new(b, m.dims[v])).collect();
    let act = alg
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let cols: Vec<Vector> = bases[arr.source].iter().map(|u| coords[arr.target].of(&m.act[a].mul_vec(u))).collect();
            Matrix::from_columns(&cols, dims[arr.target])
        })
        .collect();
    let incl = Morphism { blocks: bases.iter().enumerate().map(|(v, b)| Matrix::from_columns(b, m.dims[v])).collect() };
    (Module { dims, act }, incl)
}

/// Quotient by the submodule spanned at each vertex by the given vectors, with its projection.
pub fn quotient(alg: &Algebra, m: &Module, span: &[Vec<Vector>]) -> (Module, Morphism) {
    let (q, p, _) = quotient_with_section(alg, m, span);
    (q, p)
}

/// As `quotient`, plus a linear (not module) section of the projection at each vertex.
pub fn quotient_with_section(alg: &Algebra, m: &Module, span: &[Vec<Vector>]) -> (Module, Morphism, Vec<Matrix>) {
    let mut sub_rank = Vec::new();
    let mut full: Vec<Vec<Vector>> = Vec::new();
    for (v, vs) in span.iter().enumerate() {
        let d = m.dims[v];
        let mut e = Echelon::new(d);
        let mut basis = Vec::new();
        for x in vs {
            if e.insert(x) {
                basis.push(x.clone());
            }
        }
        sub_rank.push(basis.len());
        for k in 0..d {
            let u = unit_vec(d, k);
            if e.insert(&u) {
                basis.push(u);
            }
        }
        full.push(basis);
    }
    let dims: Vec<usize> = (0..m.dims.len()).map(|v| m.dims[v] - sub_rank[v]).collect();
    let proj_blocks: Vec<Matrix> = full
        .iter()
        .enumerate()
        .map(|(v, b)| {
            let inv = Matrix::from_columns(b, m.dims[v]).inverse().expect("completed basis");
            inv.block(sub_rank[v], 0, dims[v], m.dims[v])
        })
        .collect();
    let section: Vec<Matrix> =
        full.iter().enumerate().map(|(v, b)| Matrix::from_columns(&b[sub_rank[v]..], m.dims[v])).collect();
    let act = alg
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| proj_blocks[arr.target].mul(&m.act[a]).mul(&section[arr.source]))
        .collect();
    (Module { dims, act }, Morphism { blocks: proj_blocks }, section)
}

pub fn kernel(alg: &Algebra, f: &Morphism, src: &Module) -> (Module, Morphism) {
    let span: Vec<Vec<Vector>> = f.blocks.iter().map(kernel_basis).collect();
    submodule(alg, src, &span)
}

pub fn image_span(f: &Morphism) -> Vec<Vec<Vector>> {
    f.blocks.iter().map(Matrix::columns).collect()
}

pub fn image(alg: &Algebra, f: &Morphism, tgt: &Module) -> (Module, Morphism) {
    submodule(alg, tgt, &image_span(f))
}

pub fn cokernel(alg: &Algebra, f: &Morphism, tgt: &Module) -> (Module, Morphism) {
    quotient(alg, tgt, &image_span(f))
}

/// Radical of m: the images of all arrows.
pub fn radical_span(alg: &Algebra, m: &Module) -> Vec<Vec<Vector>> {
    let mut span: Vec<Vec<Vector>> = vec![Vec::new(); alg.n()];
    for (a, arr) in alg.quiver.arrows.iter().enumerate() {
        span[arr.target].extend(m.act[a].columns());
    }
    span
}

/// dim of top(m) at each vertex.
pub fn top_dims(alg: &Algebra, m: &Module) -> Vec<usize> {
    let span = radical_span(alg, m);
    (0..alg.n())
        .map(|v| {
            let mut e = Echelon::new(m.dims[v]);
            for x in &span[v] {
                e.insert(x);
            }
            m.dims[v] - e.rank()
        })
        .collect()
}

/// Socle dimensions: common kernel of all outgoing arrows.
pub fn socle_dims(alg: &Algebra, m: &Module) -> Vec<usize> {
    (0..alg.n())
        .map(|v| {
            let outs: Vec<&Matrix> =
                alg.quiver.arrows.iter().enumerate().filter(|(_, a)| a.source == v).map(|(i, _)| &m.act[i]).collect();
            if outs.is_empty() {
                return m.dims[v];
            }
            let stacked = Matrix::vstack(&outs, m.dims[v]);
            m.dims[v] - stacked.rank()
        })
        .collect()
}

pub fn is_projective(alg: &Algebra, m: &Module) -> bool {
    let top = top_dims(alg, m);
    let mut dims = vec![0usize; alg.n()];
    for (i, &k) in top.iter().enumerate() {
        for (v, d) in dims.iter_mut().enumerate() {
            *d += k * alg.paths_between(i, v).len();
        }
    }
    dims == m.dims
}

pub fn is_injective(alg: &Algebra, m: &Module) -> bool {
    let soc = socle_dims(alg, m);
    let mut dims = vec![0usize; alg.n()];
    for (i, &k) in soc.iter().enumerate() {
        for (v, d) in dims.iter_mut().enumerate() {
            *d += k * alg.paths_between(v, i).len();
        }
    }
    dims == m.dims
}

/// Evaluation vector of `x` in P_i at vertex v, indexed by paths i -> v.
pub fn projective_coords(alg: &Algebra, i: usize, v: usize, x: &[crate::linalg::Scalar]) -> Vector {
    alg.paths_between(i, v).iter().map(|&p| x[p].clone()).collect()
}

/// The morphism P_i -> m sending e_i to `u` in m_i.
pub fn from_projective(alg: &Algebra, i: usize, m: &Module, u: &[crate::linalg::Scalar]) -> Morphism {
    let blocks = (0..alg.n())
        .map(|v| {
            let cols: Vec<Vector> =
                alg.paths_between(i, v).iter().map(|&p| m.path_matrix(&alg.basis()[p]).mul_vec(u)).collect();
            Matrix::from_columns(&cols, m.dims[v])
        })
        .collect();
    Morphism { blocks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, Quiver};

    fn ka3() -> Algebra {
        path_algebra("kA3", Quiver::type_a(3)).unwrap()
    }

    #[test]
    fn standard_modules_of_a3() {
        let a = ka3();
        let p1 = projective(&a, 0);
        assert_eq!(p1.dims, vec![1, 1, 1]);
        assert!(p1.act.iter().all(|m| *m == Matrix::identity(1)));
        assert_eq!(injective(&a, 0).dims, vec![1, 0, 0]);
        assert_eq!(injective(&a, 2).dims, vec![1, 1, 1]);
        for i in 0..3 {
            assert!(projective(&a, i).satisfies_relations(&a));
            assert!(injective(&a, i).satisfies_relations(&a));
            assert!(is_projective(&a, &projective(&a, i)));
            assert!(is_injective(&a, &injective(&a, i)));
        }
        assert!(!is_projective(&a, &simple(&a, 0)));
    }

    #[test]
    fn hom_dimensions() {
        let a = ka3();
        assert_eq!(hom_dim(&a, &projective(&a, 0), &projective(&a, 2)), 0);
        assert_eq!(hom_dim(&a, &projective(&a, 2), &projective(&a, 0)), 1);
        for f in hom_space(&a, &projective(&a, 1), &injective(&a, 2)) {
            assert!(f.is_morphism(&a, &projective(&a, 1), &injective(&a, 2)));
        }
    }

    #[test]
    fn text_round_trip() {
        let a = ka3();
        let m = Module::direct_sum(&a, &[&projective(&a, 0), &simple(&a, 1)]);
        let text = m.to_text("X", &a);
        let (name, back) = Module::from_text(&a, &text).unwrap();
        assert_eq!(name, "X");
        assert_eq!(back, m);
        assert_eq!(back.to_text("X", &a), text);
    }

    #[test]
    fn quotient_and_kernel() {
        let a = ka3();
        let p2 = projective(&a, 1);
        let (q, pr) = quotient(&a, &p2, &radical_span(&a, &p2));
        assert_eq!(q.dims, vec![0, 1, 0]);
        assert!(pr.is_morphism(&a, &p2, &q));
        let (k, inc) = kernel(&a, &pr, &p2);
        assert_eq!(k.dims, vec![0, 0, 1]);
        assert!(inc.is_morphism(&a, &k, &p2));
    }
}
