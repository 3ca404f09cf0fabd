//! Projective presentations, Ext¹, the Auslander-Reiten translate, traces and Gen membership.

use crate::algebra::{Algebra, Quiver};
use crate::linalg::{solve_all, unit_vec, Coords, Echelon, Matrix, Scalar, Vector};
use crate::module::{
    end_algebra, from_projective, hom_space, injective, is_projective, kernel, projective, quotient, radical_span,
    submodule, Module, Morphism,
};

/// A projective cover P0 = ⊕ P_{tops[k]} -> m.
#[derive(Clone, Debug)]
pub struct Cover {
    pub tops: Vec<usize>,
    pub p0: Module,
    pub cover: Morphism,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub c0: Cover,
    /// Ω = ker(cover) with its inclusion into P0.
    pub omega: Module,
    pub iota: Morphism,
    pub c1: Cover,
    /// P1 -> P0.
    pub d: Morphism,
}

pub fn projective_cover(alg: &Algebra, m: &Module) -> Cover {
    let span = radical_span(alg, m);
    let mut tops = Vec::new();
    let mut maps = Vec::new();
    let mut parts = Vec::new();
    for v in 0..alg.n() {
        let mut e = Echelon::new(m.dims[v]);
        for x in &span[v] {
            e.insert(x);
        }
        for k in 0..m.dims[v] {
            let u = unit_vec(m.dims[v], k);
            if e.insert(&u) {
                tops.push(v);
                maps.push(from_projective(alg, v, m, &u));
                parts.push(projective(alg, v));
            }
        }
    }
    let refs: Vec<&Module> = parts.iter().collect();
    let p0 = Module::direct_sum(alg, &refs);
    let blocks = (0..alg.n())
        .map(|v| Matrix::hstack(&maps.iter().map(|f| &f.blocks[v]).collect::<Vec<_>>(), m.dims[v]))
        .collect();
    Cover { tops, p0, cover: Morphism { blocks } }
}

pub fn min_proj_presentation(alg: &Algebra, m: &Module) -> Presentation {
    let c0 = projective_cover(alg, m);
    let (omega, iota) = kernel(alg, &c0.cover, &c0.p0);
    let c1 = projective_cover(alg, &omega);
    let d = iota.compose(&c1.cover);
    Presentation { c0, omega, iota, c1, d }
}

/// Offsets of the summand vertex spaces of ⊕ P_{tops[k]} at vertex v.
fn summand_offsets(alg: &Algebra, tops: &[usize], v: usize) -> Vec<usize> {
    let mut off = vec![0];
    for &t in tops {
        off.push(off.last().unwrap() + alg.paths_between(t, v).len());
    }
    off
}

/// Generator of the l-th cover summand of Ω, as the element c_kl of e_{a_l} A e_{b_k} for each k.
pub fn presentation_coefficients(alg: &Algebra, pres: &Presentation) -> Vec<Vec<Vector>> {
    let dim = alg.dim();
    let mut coeffs = Vec::new();
    for (l, &a) in pres.c1.tops.iter().enumerate() {
        let off1 = summand_offsets(alg, &pres.c1.tops, a);
        let pos = off1[l] + alg.paths_between(a, a).iter().position(|&p| alg.basis()[p].is_empty()).expect("trivial path");
        let gen = pres.d.blocks[a].col(pos);
        let off0 = summand_offsets(alg, &pres.c0.tops, a);
        let row: Vec<Vector> = pres
            .c0
            .tops
            .iter()
            .enumerate()
            .map(|(k, &b)| {
                let mut x = vec![Scalar::zero(); dim];
                for (i, &p) in alg.paths_between(b, a).iter().enumerate() {
                    x[p] = gen[off0[k] + i].clone();
                }
                x
            })
            .collect();
        coeffs.push(row);
    }
    coeffs
}

/// τm as the kernel of the Nakayama functor applied to the minimal presentation.
pub fn tau(alg: &Algebra, m: &Module) -> Module {
    if m.is_zero() {
        return Module::zero(alg);
    }
    let pres = min_proj_presentation(alg, m);
    if pres.c1.tops.is_empty() {
        return Module::zero(alg);
    }
    let coeffs = presentation_coefficients(alg, &pres);
    let src_parts: Vec<Module> = pres.c1.tops.iter().map(|&a| injective(alg, a)).collect();
    let tgt_parts: Vec<Module> = pres.c0.tops.iter().map(|&b| injective(alg, b)).collect();
    let src = Module::direct_sum(alg, &src_parts.iter().collect::<Vec<_>>());
    let tgt = Module::direct_sum(alg, &tgt_parts.iter().collect::<Vec<_>>());
    let blocks = (0..alg.n())
        .map(|v| {
            let mut out = Matrix::zeros(tgt.dims[v], src.dims[v]);
            let mut r0 = 0;
            for (k, &b) in pres.c0.tops.iter().enumerate() {
                let into_b = alg.paths_between(v, b);
                let mut c0 = 0;
                for (l, &a) in pres.c1.tops.iter().enumerate() {
                    let into_a = alg.paths_between(v, a);
                    let c = &coeffs[l][k];
                    for (j, &y) in into_b.iter().enumerate() {
                        let prod = alg.mul(c, &unit_vec(alg.dim(), y));
                        for (i, &p) in into_a.iter().enumerate() {
                            if !prod[p].is_zero() {
                                out.set(r0 + j, c0 + i, prod[p].clone());
                            }
                        }
                    }
                    c0 += into_a.len();
                }
                r0 += into_b.len();
            }
            out
        })
        .collect();
    let nu_d = Morphism { blocks };
    debug_assert!(nu_d.is_morphism(alg, &src, &tgt));
    kernel(alg, &nu_d, &src).0
}

pub fn tau_inverse(alg: &Algebra, m: &Module) -> Module {
    let op = alg.opposite();
    tau(&op, &m.dual()).dual()
}

pub fn syzygy(alg: &Algebra, m: &Module) -> Module {
    let c = projective_cover(alg, m);
    kernel(alg, &c.cover, &c.p0).0
}

/// Length of a minimal projective resolution, or None beyond `cap`.
pub fn proj_dimension(alg: &Algebra, m: &Module, cap: usize) -> Option<usize> {
    let mut cur = m.clone();
    for k in 0..=cap {
        if cur.is_zero() || is_projective(alg, &cur) {
            return Some(k);
        }
        cur = syzygy(alg, &cur);
    }
    None
}

/// Σ d_i e_i − Σ_a d_{s(a)} e_{t(a)}.
pub fn euler_form(q: &Quiver, d: &[usize], e: &[usize]) -> i64 {
    let diag: i64 = d.iter().zip(e).map(|(&x, &y)| (x * y) as i64).sum();
    let off: i64 = q.arrows.iter().map(|a| (d[a.source] * e[a.target]) as i64).sum();
    diag - off
}

/// Ext¹(b, n) = Hom(Ω b, n) / restrictions of Hom(P0, n).
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub pres: Presentation,
    /// Representatives in Hom(Ω, n) of a basis of Ext¹.
    pub cocycles: Vec<Morphism>,
    boundaries: Vec<Vector>,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.cocycles.len()
    }

    /// Coordinates of the class of ξ in the cocycle basis.
    pub fn class_of(&self, xi: &Morphism) -> Vector {
        let mut basis = self.boundaries.clone();
        basis.extend(self.cocycles.iter().map(Morphism::flatten));
        let flat = xi.flatten();
        let c = Coords::new(&basis, flat.len());
        let all = c.of(&flat);
        all[self.boundaries.len()..].to_vec()
    }
}

pub fn ext1(alg: &Algebra, b: &Module, n: &Module) -> ExtSpace {
    let pres = min_proj_presentation(alg, b);
    ext1_with(alg, pres, n)
}

pub fn ext1_with(alg: &Algebra, pres: Presentation, n: &Module) -> ExtSpace {
    let homs = if pres.omega.is_zero() || n.is_zero() { Vec::new() } else { hom_space(alg, &pres.omega, n) };
    let len = homs.first().map_or(0, |h| h.flatten().len());
    let mut ech = Echelon::new(len);
    let mut boundaries = Vec::new();
    if !homs.is_empty() {
        for g in hom_space(alg, &pres.c0.p0, n) {
            let r = g.compose(&pres.iota).flatten();
            if ech.insert(&r) {
                boundaries.push(r);
            }
        }
    }
    let mut cocycles = Vec::new();
    for h in homs {
        if ech.insert(&h.flatten()) {
            cocycles.push(h);
        }
    }
    ExtSpace { pres, cocycles, boundaries }
}

pub fn ext1_dim(alg: &Algebra, b: &Module, n: &Module) -> usize {
    if b.is_zero() || n.is_zero() {
        return 0;
    }
    ext1(alg, b, n).dim()
}

/// An extension 0 -> n -> E -> B -> 0 together with its two maps.
#[derive(Clone, Debug)]
pub struct Extension {
    pub middle: Module,
    pub incl: Morphism,
    pub proj: Morphism,
}

/// Pushout of P0^r ⊃ Ω^r along (ξ_1, ..., ξ_r): Ω^r -> n, for 0 -> n -> E -> b^r -> 0.
pub fn extension_from_cocycles(alg: &Algebra, b: &Module, pres: &Presentation, xis: &[Morphism], n: &Module) -> Extension {
    let r = xis.len();
    let p0s: Vec<&Module> = std::iter::repeat_n(&pres.c0.p0, r).collect();
    let mut parts = p0s.clone();
    parts.push(n);
    let total = Module::direct_sum(alg, &parts);
    let span: Vec<Vec<Vector>> = (0..alg.n())
        .map(|v| {
            let od = pres.omega.dims[v];
            let pd = pres.c0.p0.dims[v];
            let mut vs = Vec::new();
            for i in 0..r {
                for k in 0..od {
                    let w = unit_vec(od, k);
                    let mut x = vec![Scalar::zero(); total.dims[v]];
                    for (j, val) in pres.iota.blocks[v].mul_vec(&w).into_iter().enumerate() {
                        x[i * pd + j] = val;
                    }
                    for (j, val) in xis[i].blocks[v].mul_vec(&w).into_iter().enumerate() {
                        x[r * pd + j] = -val;
                    }
                    vs.push(x);
                }
            }
            vs
        })
        .collect();
    let (middle, pr, section) = crate::module::quotient_with_section(alg, &total, &span);
    let incl = Morphism {
        blocks: (0..alg.n())
            .map(|v| {
                let pd = pres.c0.p0.dims[v];
                let emb = Matrix::vstack(&[&Matrix::zeros(r * pd, n.dims[v]), &Matrix::identity(n.dims[v])], n.dims[v]);
                pr.blocks[v].mul(&emb)
            })
            .collect(),
    };
    let proj = Morphism {
        blocks: (0..alg.n())
            .map(|v| {
                let covers: Vec<&Matrix> = std::iter::repeat_n(&pres.c0.cover.blocks[v], r).collect();
                let diag = Matrix::block_diag(&covers);
                let full = Matrix::hstack(&[&diag, &Matrix::zeros(r * b.dims[v], n.dims[v])], r * b.dims[v]);
                full.mul(&section[v])
            })
            .collect(),
    };
    Extension { middle, incl, proj }
}

/// Lift of φ ∈ End(b) to Ω via the cover, as an endomorphism of Ω.
fn lift_to_omega(alg: &Algebra, pres: &Presentation, phi: &Morphism) -> Morphism {
    let p0 = &pres.c0.p0;
    let mut maps = Vec::new();
    for (k, &t) in pres.c0.tops.iter().enumerate() {
        let off = summand_offsets(alg, &pres.c0.tops, t);
        let pos = off[k] + alg.paths_between(t, t).iter().position(|&p| alg.basis()[p].is_empty()).expect("trivial path");
        let image = pres.c0.cover.blocks[t].col(pos);
        let target = phi.blocks[t].mul_vec(&image);
        let sol = solve_all(&pres.c0.cover.blocks[t], &[target]).expect("shape");
        let x = sol.particular[0].clone().expect("cover is surjective");
        maps.push(from_projective(alg, t, p0, &x));
    }
    let phi0 = Morphism {
        blocks: (0..alg.n())
            .map(|v| Matrix::hstack(&maps.iter().map(|f| &f.blocks[v]).collect::<Vec<_>>(), p0.dims[v]))
            .collect(),
    };
    debug_assert!(pres.c0.cover.compose(&phi0) == phi.compose(&pres.c0.cover));
    Morphism {
        blocks: (0..alg.n())
            .map(|v| {
                let inc = &pres.iota.blocks[v];
                let c = Coords::new(&inc.columns(), p0.dims[v]);
                let cols: Vec<Vector> = phi0.blocks[v].mul(inc).columns().iter().map(|x| c.of(x)).collect();
                Matrix::from_columns(&cols, pres.omega.dims[v])
            })
            .collect(),
    }
}

/// Classes of Ext¹(b, n) generating it as a module over End(b), minimal in number.
fn end_source_generators(alg: &Algebra, b: &Module, ext: &ExtSpace) -> Vec<Morphism> {
    let (ends, e) = end_algebra(alg, b);
    let rad: Vec<Morphism> = e
        .radical()
        .iter()
        .map(|c| {
            c.iter()
                .zip(&ends)
                .fold(Morphism::zero(b, b), |acc, (x, f)| if x.is_zero() { acc } else { acc.add(&f.scale(x)) })
        })
        .collect();
    let lifts: Vec<Morphism> = rad.iter().map(|r| lift_to_omega(alg, &ext.pres, r)).collect();
    let mut ech = Echelon::new(ext.dim());
    for xi in &ext.cocycles {
        for l in &lifts {
            ech.insert(&ext.class_of(&xi.compose(l)));
        }
    }
    let mut gens = Vec::new();
    for (i, xi) in ext.cocycles.iter().enumerate() {
        if ech.insert(&unit_vec(ext.dim(), i)) {
            gens.push(xi.clone());
        }
    }
    gens
}

/// Classes of Ext¹(b, n) generating it as a module over End(n), minimal in number.
fn end_target_generators(alg: &Algebra, n: &Module, ext: &ExtSpace) -> Vec<Morphism> {
    let (ends, e) = end_algebra(alg, n);
    let rad: Vec<Morphism> = e
        .radical()
        .iter()
        .map(|c| {
            c.iter()
                .zip(&ends)
                .fold(Morphism::zero(n, n), |acc, (x, f)| if x.is_zero() { acc } else { acc.add(&f.scale(x)) })
        })
        .collect();
    let mut ech = Echelon::new(ext.dim());
    for xi in &ext.cocycles {
        for r in &rad {
            ech.insert(&ext.class_of(&r.compose(xi)));
        }
    }
    let mut gens = Vec::new();
    for (i, xi) in ext.cocycles.iter().enumerate() {
        if ech.insert(&unit_vec(ext.dim(), i)) {
            gens.push(xi.clone());
        }
    }
    gens
}

/// 0 -> c -> E -> b^r -> 0 with r the minimal number of End(b)-generators of Ext¹(b, c).
pub fn universal_extension(alg: &Algebra, b: &Module, c: &Module) -> Option<(Extension, usize)> {
    let ext = ext1(alg, b, c);
    if ext.dim() == 0 {
        return None;
    }
    let gens = end_source_generators(alg, b, &ext);
    let e = extension_from_cocycles(alg, b, &ext.pres, &gens, c);
    Some((e, gens.len()))
}

/// 0 -> c^l -> E' -> b -> 0 with l the minimal number of End(c)-generators of Ext¹(b, c).
pub fn universal_coextension(alg: &Algebra, b: &Module, c: &Module) -> Option<(Extension, usize)> {
    let ext = ext1(alg, b, c);
    if ext.dim() == 0 {
        return None;
    }
    let gens = end_target_generators(alg, c, &ext);
    let l = gens.len();
    let cs: Vec<&Module> = std::iter::repeat_n(c, l).collect();
    let c_l = Module::direct_sum(alg, &cs);
    let stacked = Morphism {
        blocks: (0..alg.n())
            .map(|v| Matrix::vstack(&gens.iter().map(|g| &g.blocks[v]).collect::<Vec<_>>(), ext.pres.omega.dims[v]))
            .collect(),
    };
    let e = extension_from_cocycles(alg, b, &ext.pres, &[stacked], &c_l);
    Some((e, l))
}

/// Per-vertex span of the images of all maps m -> v.
pub fn trace_span(alg: &Algebra, m: &Module, v: &Module) -> Vec<Vec<Vector>> {
    let mut span: Vec<Vec<Vector>> = vec![Vec::new(); alg.n()];
    if m.is_zero() || v.is_zero() {
        return span;
    }
    for f in hom_space(alg, m, v) {
        for (x, b) in f.blocks.iter().enumerate() {
            span[x].extend(b.columns());
        }
    }
    span
}

/// (t_m(v), f_m(v)) with inclusion and projection.
pub fn trace_quotient(alg: &Algebra, m: &Module, v: &Module) -> ((Module, Morphism), (Module, Morphism)) {
    let span = trace_span(alg, m, v);
    (submodule(alg, v, &span), quotient(alg, v, &span))
}

pub fn torsion_free_part(alg: &Algebra, m: &Module, v: &Module) -> Module {
    trace_quotient(alg, m, v).1 .0
}

/// x ∈ Gen m: the evaluation map from copies of m onto x is surjective.
pub fn gen_membership(alg: &Algebra, x: &Module, m: &Module) -> bool {
    if x.is_zero() {
        return true;
    }
    let span = trace_span(alg, m, x);
    (0..alg.n()).all(|v| {
        let mut e = Echelon::new(x.dims[v]);
        for s in &span[v] {
            e.insert(s);
        }
        e.rank() == x.dims[v]
    })
}

/// x ∈ Cogen m: maps x -> m jointly injective.
pub fn cogen_membership(alg: &Algebra, x: &Module, m: &Module) -> bool {
    if x.is_zero() {
        return true;
    }
    if m.is_zero() {
        return false;
    }
    let homs = hom_space(alg, x, m);
    (0..alg.n()).all(|v| {
        if x.dims[v] == 0 {
            return true;
        }
        let rows: Vec<&Matrix> = homs.iter().map(|f| &f.blocks[v]).collect();
        if rows.is_empty() {
            return false;
        }
        Matrix::vstack(&rows, x.dims[v]).rank() == x.dims[v]
    })
}

pub fn is_tau_rigid(alg: &Algebra, m: &Module) -> bool {
    let t = tau(alg, m);
    t.is_zero() || m.is_zero() || hom_space(alg, m, &t).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::path_algebra;
    use crate::module::{is_isomorphic, simple};

    fn ka3() -> Algebra {
        path_algebra("kA3", Quiver::type_a(3)).unwrap()
    }

    #[test]
    fn presentation_of_s2() {
        let a = ka3();
        let p = min_proj_presentation(&a, &simple(&a, 1));
        assert_eq!(p.c0.tops, vec![1]);
        assert_eq!(p.c1.tops, vec![2]);
        let p1 = min_proj_presentation(&a, &projective(&a, 0));
        assert!(p1.c1.tops.is_empty());
    }

    #[test]
    fn tau_examples() {
        let a = ka3();
        assert!(is_isomorphic(&a, &tau(&a, &simple(&a, 1)), &simple(&a, 2)).is_some());
        assert!(tau(&a, &projective(&a, 0)).is_zero());
        assert!(is_isomorphic(&a, &tau_inverse(&a, &simple(&a, 2)), &simple(&a, 1)).is_some());
    }

    #[test]
    fn ext_examples() {
        let a = ka3();
        assert_eq!(ext1_dim(&a, &simple(&a, 1), &simple(&a, 2)), 1);
        assert_eq!(ext1_dim(&a, &simple(&a, 0), &simple(&a, 1)), 1);
        assert_eq!(ext1_dim(&a, &projective(&a, 1), &simple(&a, 2)), 0);
        assert_eq!(ext1_dim(&a, &simple(&a, 2), &simple(&a, 1)), 0);
    }

    #[test]
    fn universal_extensions() {
        let a = ka3();
        let (e, r) = universal_extension(&a, &simple(&a, 0), &simple(&a, 1)).unwrap();
        assert_eq!(r, 1);
        assert!(is_isomorphic(&a, &e.middle, &injective(&a, 1)).is_some());
        assert!(e.incl.is_morphism(&a, &simple(&a, 1), &e.middle));
        assert!(e.proj.is_morphism(&a, &e.middle, &simple(&a, 0)));
        assert!(e.incl.is_injective() && e.proj.is_surjective());
        let (e2, _) = universal_extension(&a, &simple(&a, 1), &simple(&a, 2)).unwrap();
        assert!(is_isomorphic(&a, &e2.middle, &projective(&a, 1)).is_some());
        let (c, l) = universal_coextension(&a, &simple(&a, 0), &simple(&a, 1)).unwrap();
        assert_eq!(l, 1);
        assert!(is_isomorphic(&a, &c.middle, &injective(&a, 1)).is_some());
    }

    #[test]
    fn traces_and_gen() {
        let a = ka3();
        let f = torsion_free_part(&a, &simple(&a, 1), &injective(&a, 1));
        assert!(is_isomorphic(&a, &f, &simple(&a, 0)).is_some());
        assert!(gen_membership(&a, &simple(&a, 0), &injective(&a, 1)));
        assert!(!gen_membership(&a, &simple(&a, 2), &simple(&a, 1)));
        assert!(torsion_free_part(&a, &simple(&a, 1), &simple(&a, 1)).is_zero());
    }

    #[test]
    fn projective_dimension_and_euler() {
        let a = ka3();
        assert_eq!(proj_dimension(&a, &projective(&a, 0), 3), Some(0));
        assert_eq!(proj_dimension(&a, &simple(&a, 1), 3), Some(1));
        assert_eq!(euler_form(&a.quiver, &[0, 1, 0], &[0, 0, 1]), -1);
        assert_eq!(euler_form(&a.quiver, &[1, 1, 1], &[0, 0, 1]), 0);
    }
}
