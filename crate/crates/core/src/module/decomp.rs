//! Endomorphism algebras, isomorphism tests and Krull-Schmidt decomposition.

use crate::algebra::{AbstractAlgebra, Algebra};
use crate::linalg::{kernel_basis, Coords, Matrix, Scalar};

use super::{hom_space, submodule, Module, ModuleError, Morphism};

#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    pub incl: Morphism,
    pub proj: Morphism,
}

/// End(m) on a Hom basis; the product is composition.
pub fn end_algebra(alg: &Algebra, m: &Module) -> (Vec<Morphism>, AbstractAlgebra) {
    let basis = hom_space(alg, m, m);
    let flats: Vec<_> = basis.iter().map(Morphism::flatten).collect();
    let len = flats.first().map_or(0, Vec::len);
    let coords = Coords::new(&flats, len);
    let table = basis.iter().map(|f| basis.iter().map(|g| coords.of(&f.compose(g).flatten())).collect()).collect();
    let one = coords.of(&Morphism::identity(m).flatten());
    let labels = (0..basis.len()).map(|i| format!("f{}", i + 1)).collect();
    (basis, AbstractAlgebra::new(labels, table, vec![one]))
}

pub fn is_indecomposable(alg: &Algebra, m: &Module) -> Result<bool, ModuleError> {
    if m.is_zero() {
        return Err(ModuleError::ZeroModule);
    }
    let (_, e) = end_algebra(alg, m);
    Ok(e.dim() - e.radical().len() == 1)
}

const SWEEP_COEFFS: [i64; 3] = [1, -1, 2];

/// Visits basis elements, then sums of two and three of them with small coefficients.
fn sweep<F: FnMut(&Morphism) -> bool>(basis: &[Morphism], reversed: bool, mut f: F) -> Option<Morphism> {
    let order: Vec<usize> = if reversed { (0..basis.len()).rev().collect() } else { (0..basis.len()).collect() };
    for &i in &order {
        if f(&basis[i]) {
            return Some(basis[i].clone());
        }
    }
    let k = order.len();
    for a in 0..k {
        for b in a + 1..k {
            for &ca in &SWEEP_COEFFS {
                for &cb in &SWEEP_COEFFS {
                    let g = basis[order[a]].scale(&Scalar::int(ca)).add(&basis[order[b]].scale(&Scalar::int(cb)));
                    if f(&g) {
                        return Some(g);
                    }
                }
            }
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                for &ca in &SWEEP_COEFFS {
                    for &cb in &SWEEP_COEFFS {
                        for &cc in &SWEEP_COEFFS {
                            let g = basis[order[a]]
                                .scale(&Scalar::int(ca))
                                .add(&basis[order[b]].scale(&Scalar::int(cb)))
                                .add(&basis[order[c]].scale(&Scalar::int(cc)));
                            if f(&g) {
                                return Some(g);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn generic_combination(basis: &[Morphism], seed: i64) -> Option<Morphism> {
    let mut it = basis.iter().enumerate();
    let (_, first) = it.next()?;
    let mut g = first.scale(&Scalar::int(seed));
    for (i, b) in it {
        g = g.add(&b.scale(&Scalar::int(seed + 2 * i as i64 + 1)));
    }
    Some(g)
}

/// Returns an isomorphism witness when `m` and `n` are isomorphic.
pub fn is_isomorphic(alg: &Algebra, m: &Module, n: &Module) -> Option<Morphism> {
    if m.dims != n.dims {
        return None;
    }
    if m.is_zero() {
        return Some(Morphism::zero(m, n));
    }
    let h = hom_space(alg, m, n);
    if h.is_empty() {
        return None;
    }
    if hom_space(alg, n, m).len() != h.len() || hom_space(alg, m, m).len() != h.len() || hom_space(alg, n, n).len() != h.len() {
        return None;
    }
    for seed in [1, 3, 7] {
        if let Some(g) = generic_combination(&h, seed) {
            if g.is_iso() {
                return Some(g);
            }
        }
    }
    let w = sweep(&h, false, Morphism::is_iso)?;
    debug_assert!(w.is_morphism(alg, m, n) && w.is_iso());
    Some(w)
}

fn fitting_power(f: &Morphism) -> Morphism {
    Morphism { blocks: f.blocks.iter().map(|b| b.pow(b.rows())).collect() }
}

fn splits(f: &Morphism) -> bool {
    let p = fitting_power(f);
    !p.is_zero() && !p.is_iso()
}

pub fn decompose(alg: &Algebra, m: &Module) -> Result<Vec<Summand>, ModuleError> {
    decompose_with(alg, m, false)
}

/// Fitting-lemma decomposition; `reversed` flips the sweep order.
pub fn decompose_with(alg: &Algebra, m: &Module, reversed: bool) -> Result<Vec<Summand>, ModuleError> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    if is_indecomposable(alg, m)? {
        let id = Morphism::identity(m);
        return Ok(vec![Summand { module: m.clone(), incl: id.clone(), proj: id }]);
    }
    let ends = hom_space(alg, m, m);
    let id = Morphism::identity(m);
    let shifted: Vec<Morphism> = [1, -1, 2, -2]
        .iter()
        .flat_map(|&c| ends.iter().map(move |f| (c, f)))
        .map(|(c, f)| f.add(&id.scale(&Scalar::int(-c))))
        .collect();
    let phi = sweep(&ends, reversed, splits)
        .or_else(|| shifted.iter().find(|f| splits(f)).cloned())
        .ok_or(ModuleError::SweepExhausted)?;
    let psi = fitting_power(&phi);
    let ker_span: Vec<_> = psi.blocks.iter().map(kernel_basis).collect();
    let im_span: Vec<_> = psi.blocks.iter().map(Matrix::columns).collect();
    let (mk, inc_k) = submodule(alg, m, &ker_span);
    let (mi, inc_i) = submodule(alg, m, &im_span);
    let mut proj_k = Vec::new();
    let mut proj_i = Vec::new();
    for v in 0..m.dims.len() {
        let b = Matrix::hstack(&[&inc_k.blocks[v], &inc_i.blocks[v]], m.dims[v]);
        let inv = b.inverse().expect("Fitting decomposition is direct");
        proj_k.push(inv.block(0, 0, mk.dims[v], m.dims[v]));
        proj_i.push(inv.block(mk.dims[v], 0, mi.dims[v], m.dims[v]));
    }
    let mut out = Vec::new();
    for (sub, inc, proj) in [(mk, inc_k, Morphism { blocks: proj_k }), (mi, inc_i, Morphism { blocks: proj_i })] {
        for s in decompose_with(alg, &sub, reversed)? {
            out.push(Summand { module: s.module, incl: inc.compose(&s.incl), proj: s.proj.compose(&proj) });
        }
    }
    Ok(out)
}

/// Groups summands into isomorphism classes: (representative, multiplicity).
pub fn multiplicities(alg: &Algebra, summands: &[Summand]) -> Vec<(Module, usize)> {
    let mut out: Vec<(Module, usize)> = Vec::new();
    for s in summands {
        match out.iter_mut().find(|(r, _)| is_isomorphic(alg, r, &s.module).is_some()) {
            Some(entry) => entry.1 += 1,
            None => out.push((s.module.clone(), 1)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, Quiver};
    use crate::module::{injective, projective, simple};

    #[test]
    fn decomposes_semisimple_and_mixed() {
        let a = path_algebra("kA3", Quiver::type_a(3)).unwrap();
        let s1 = simple(&a, 0);
        let m = Module::direct_sum(&a, &[&s1, &s1]);
        let parts = decompose(&a, &m).unwrap();
        assert_eq!(parts.len(), 2);
        let mult = multiplicities(&a, &parts);
        assert_eq!(mult.len(), 1);
        assert_eq!(mult[0].1, 2);
        let mixed = Module::direct_sum(&a, &[&projective(&a, 0), &injective(&a, 1), &simple(&a, 1)]);
        let parts = decompose(&a, &mixed).unwrap();
        assert_eq!(parts.len(), 3);
        for p in &parts {
            assert!(p.incl.is_morphism(&a, &p.module, &mixed));
            assert!(p.proj.is_morphism(&a, &mixed, &p.module));
            assert!(p.proj.compose(&p.incl).is_iso());
        }
    }

    #[test]
    fn indecomposability() {
        let a = path_algebra("kA3", Quiver::type_a(3)).unwrap();
        assert!(is_indecomposable(&a, &simple(&a, 0)).unwrap());
        assert!(!is_indecomposable(&a, &Module::direct_sum(&a, &[&simple(&a, 0), &simple(&a, 1)])).unwrap());
        assert_eq!(is_indecomposable(&a, &Module::zero(&a)), Err(ModuleError::ZeroModule));
    }

    #[test]
    fn isomorphism_witnesses() {
        let a = path_algebra("kA3", Quiver::type_a(3)).unwrap();
        let p1 = projective(&a, 0);
        assert!(is_isomorphic(&a, &p1, &injective(&a, 2)).is_some());
        assert!(is_isomorphic(&a, &simple(&a, 0), &simple(&a, 1)).is_none());
    }
}
