//! Braid group mutation of exceptional sequences over a hereditary algebra.

use crate::homology::{universal_coextension, universal_extension};
use crate::module::{cokernel, hom_space, is_isomorphic, kernel, Module, Morphism};
use crate::tilting::Ctx;

use super::{seq_name, validate_exceptional, MutationError, Seq};

/// σ_i (1-based): (X_i, X_{i+1}) ↦ (Y, X_i), or (X_{i+1}, Z) when `right`.
pub fn sigma(top: &Ctx, seq: &[usize], i: usize, right: bool) -> Result<Seq, MutationError> {
    if !top.complete || !top.alg.relations.is_empty() {
        return Err(MutationError::NotHereditary);
    }
    if i == 0 || i >= seq.len() {
        return Err(MutationError::BadIndex { i, len: seq.len() });
    }
    if !validate_exceptional(top, seq) {
        return Err(MutationError::NotExceptional(seq_name(top, seq)));
    }
    let (e, f) = (seq[i - 1], seq[i]);
    let span = right_perp(top, &[e, f]);
    let candidates: Vec<Seq> = (0..top.len())
        .map(|y| {
            let mut out = seq.to_vec();
            if right {
                out[i - 1] = f;
                out[i] = y;
            } else {
                out[i - 1] = y;
                out[i] = e;
            }
            out
        })
        .filter(|s| validate_exceptional(top, s) && right_perp(top, &s[i - 1..=i]) == span)
        .collect();
    let [found] = candidates.as_slice() else {
        return Err(MutationError::NotUnique { what: format!("σ_{i} of {}", seq_name(top, seq)), count: candidates.len() });
    };
    let built = if right { right_mutation(top, e, f) } else { left_mutation(top, e, f) };
    let slot = if right { i } else { i - 1 };
    let y = top.module(found[slot]);
    assert!(
        y.dims == built.dims && is_isomorphic(&top.alg, y, &built).is_some(),
        "constructive mutation disagrees with the completion search for {}",
        seq_name(top, seq)
    );
    Ok(found.clone())
}

/// Indecomposables X with Hom(x, X) = Ext¹(x, X) = 0 for every x in `xs`.
fn right_perp(top: &Ctx, xs: &[usize]) -> Vec<usize> {
    (0..top.len()).filter(|&y| xs.iter().all(|&x| top.hom(x, y) == 0 && top.ext(x, y) == 0)).collect()
}

fn evaluation(top: &Ctx, e: usize, f: usize) -> (Module, Morphism) {
    let homs = hom_space(&top.alg, top.module(e), top.module(f));
    let copies: Vec<&Module> = std::iter::repeat_n(top.module(e), homs.len()).collect();
    let sum = Module::direct_sum(&top.alg, &copies);
    let ev = Morphism::from_grid(std::slice::from_ref(&homs), &copies, &[top.module(f)]);
    (sum, ev)
}

/// L_E F for an exceptional pair (E, F).
fn left_mutation(top: &Ctx, e: usize, f: usize) -> Module {
    let alg = &top.alg;
    if top.hom(e, f) > 0 {
        let (sum, ev) = evaluation(top, e, f);
        if ev.is_surjective() {
            return kernel(alg, &ev, &sum).0;
        }
        assert!(ev.is_injective(), "evaluation map of an exceptional pair is mono or epi");
        return cokernel(alg, &ev, top.module(f)).0;
    }
    if top.ext(e, f) > 0 {
        return universal_extension(alg, top.module(e), top.module(f)).expect("Ext¹ ≠ 0").0.middle;
    }
    top.module(f).clone()
}

/// R_F E for an exceptional pair (E, F).
fn right_mutation(top: &Ctx, e: usize, f: usize) -> Module {
    let alg = &top.alg;
    if top.hom(e, f) > 0 {
        let homs = hom_space(alg, top.module(e), top.module(f));
        let copies: Vec<&Module> = std::iter::repeat_n(top.module(f), homs.len()).collect();
        let sum = Module::direct_sum(alg, &copies);
        let grid: Vec<Vec<Morphism>> = homs.into_iter().map(|h| vec![h]).collect();
        let coev = Morphism::from_grid(&grid, &[top.module(e)], &copies);
        if coev.is_injective() {
            return cokernel(alg, &coev, &sum).0;
        }
        assert!(coev.is_surjective(), "coevaluation map of an exceptional pair is mono or epi");
        return kernel(alg, &coev, top.module(e)).0;
    }
    if top.ext(e, f) > 0 {
        return universal_coextension(alg, top.module(e), top.module(f)).expect("Ext¹ ≠ 0").0.middle;
    }
    top.module(e).clone()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{path_algebra, Quiver};

    fn a3() -> Ctx {
        Ctx::hereditary(Arc::new(path_algebra("kA3", Quiver::type_a(3)).unwrap())).unwrap()
    }

    fn run(c: &Ctx, s: &str, i: usize, right: bool) -> String {
        seq_name(c, &sigma(c, &super::super::parse_seq(c, s).unwrap(), i, right).unwrap())
    }

    #[test]
    fn left_mutations() {
        let c = a3();
        assert_eq!(run(&c, "(P_3,P_2,P_1)", 1, false), "(S_2,P_3,P_1)");
        assert_eq!(run(&c, "(P_3,P_2,P_1)", 2, false), "(P_3,I_1,P_2)");
        assert_eq!(run(&c, "(I_1,S_2)", 1, false), "(I_2,I_1)");
    }

    #[test]
    fn right_inverts_left() {
        let c = a3();
        for s in super::super::enumerate_complete(&c).unwrap() {
            for i in 1..s.len() {
                let l = sigma(&c, &s, i, false).unwrap();
                assert_eq!(sigma(&c, &l, i, true).unwrap(), s);
            }
        }
    }
}
