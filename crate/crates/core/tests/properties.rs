use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use taumut::algebra::{path_algebra, tensor_algebra, LocalAlgebra, Quiver, TensorData};
use taumut::homology::{euler_form, proj_dimension, tau};
use taumut::module::decomp::{decompose_with, multiplicities};
use taumut::module::{decompose, induce, is_isomorphic, top_dims, Module};
use taumut::mutation::{enumerate_complete, mutation_graph, phi, phi_inverse, sigma, Seq};
use taumut::tilting::Ctx;

struct Family {
    td: TensorData,
    base: Ctx,
    top: Ctx,
    seqs: Vec<Seq>,
}

fn family(q: Quiver, r: LocalAlgebra) -> Family {
    let td = tensor_algebra(&r, &q).unwrap();
    let base = Ctx::hereditary(td.base.clone()).unwrap();
    let top = Ctx::lambda(&td).unwrap();
    let seqs = enumerate_complete(&top).unwrap();
    Family { td, base, top, seqs }
}

fn d4() -> Quiver {
    Quiver::with_arrows(4, &[("a", 0, 1), ("b", 2, 1), ("c", 3, 1)])
}

fn a3t2() -> &'static Family {
    static F: OnceLock<Family> = OnceLock::new();
    F.get_or_init(|| family(Quiver::type_a(3), LocalAlgebra::truncated(2)))
}

fn a3t3() -> &'static Family {
    static F: OnceLock<Family> = OnceLock::new();
    F.get_or_init(|| family(Quiver::type_a(3), LocalAlgebra::truncated(3)))
}

fn d4plane() -> &'static Family {
    static F: OnceLock<Family> = OnceLock::new();
    F.get_or_init(|| family(d4(), LocalAlgebra::square_zero_plane()))
}

fn families() -> [&'static Family; 3] {
    [a3t2(), a3t3(), d4plane()]
}

fn base_ctx(q: Quiver) -> Ctx {
    Ctx::hereditary(Arc::new(path_algebra("kQ", q).unwrap())).unwrap()
}

#[test]
fn euler_form_counts_hom_minus_ext() {
    for q in [Quiver::type_a(2), Quiver::type_a(3), d4()] {
        let c = base_ctx(q.clone());
        for x in 0..c.len() {
            for y in 0..c.len() {
                let e = euler_form(&q, &c.module(x).dims, &c.module(y).dims);
                assert_eq!(e, c.hom(x, y) as i64 - c.ext(x, y) as i64, "{} {}", c.objs[x].name, c.objs[y].name);
            }
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let f = a3t2();
    let g1 = mutation_graph(&f.top).unwrap();
    let g2 = mutation_graph(&f.top).unwrap();
    assert_eq!(g1, g2);
    assert_eq!(g1.to_dot(), g2.to_dot());
    assert_eq!(enumerate_complete(&f.top).unwrap(), f.seqs);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ar_duality_for_pd_at_most_one(fi in 0usize..3, x in 0usize..12, y in 0usize..12) {
        let f = families()[fi];
        let (x, y) = (x % f.top.len(), y % f.top.len());
        prop_assume!(proj_dimension(&f.top.alg, f.top.module(x), 1).is_some());
        prop_assert_eq!(f.top.ext(x, y), f.top.hom_tau(y, x));
    }

    #[test]
    fn induction_scales_hom_and_ext(fi in 0usize..3, x in 0usize..12, y in 0usize..12) {
        let f = families()[fi];
        let (x, y) = (x % f.top.len(), y % f.top.len());
        let r = f.td.r.dim();
        prop_assert_eq!(f.top.hom(x, y), r * f.base.hom(x, y));
        prop_assert_eq!(f.top.ext(x, y), r * f.base.ext(x, y));
    }

    #[test]
    fn induction_commutes_with_tau_for_truncated_r(fi in 0usize..2, x in 0usize..12) {
        let f = families()[fi];
        let x = x % f.base.len();
        let lhs = tau(&f.top.alg, &induce(&f.td, f.base.module(x)));
        let rhs = induce(&f.td, &tau(&f.base.alg, f.base.module(x)));
        prop_assert!(lhs.dims == rhs.dims && is_isomorphic(&f.top.alg, &lhs, &rhs).is_some());
    }

    /// R = k[x,y]/(x,y)² is not self-injective: τ(Λ⊗X) is DR ⊗ τX, whose top is twice that of R ⊗ τX.
    #[test]
    fn tau_of_induced_over_plane_has_doubled_top(x in 0usize..12) {
        let f = d4plane();
        let x = x % f.base.len();
        let lhs = tau(&f.top.alg, &induce(&f.td, f.base.module(x)));
        let rhs = induce(&f.td, &tau(&f.base.alg, f.base.module(x)));
        prop_assert_eq!(&lhs.dims, &rhs.dims);
        let doubled: Vec<usize> = top_dims(&f.top.alg, &rhs).iter().map(|d| 2 * d).collect();
        prop_assert_eq!(top_dims(&f.top.alg, &lhs), doubled);
    }

    #[test]
    fn induction_preserves_pd(fi in 0usize..3, x in 0usize..12) {
        let f = families()[fi];
        let x = x % f.base.len();
        let pd_base = proj_dimension(&f.base.alg, f.base.module(x), 2);
        prop_assert_eq!(proj_dimension(&f.top.alg, f.top.module(x), 2), pd_base);
    }

    #[test]
    fn decomposition_ignores_order(picks in proptest::collection::vec(0usize..6, 1..4)) {
        let f = a3t2();
        let parts: Vec<&Module> = picks.iter().map(|&p| f.base.module(p)).collect();
        let m = Module::direct_sum(&f.base.alg, &parts);
        let a = multiplicities(&f.base.alg, &decompose(&f.base.alg, &m).unwrap());
        let b = multiplicities(&f.base.alg, &decompose_with(&f.base.alg, &m, true).unwrap());
        prop_assert_eq!(a.len(), b.len());
        prop_assert_eq!(a.len(), {
            let mut u = picks.clone();
            u.sort();
            u.dedup();
            u.len()
        });
        for (x, k) in &a {
            let matched = b.iter().find(|(y, _)| y.dims == x.dims && is_isomorphic(&f.base.alg, x, y).is_some());
            prop_assert_eq!(matched.map(|(_, j)| *j), Some(*k));
        }
    }

    #[test]
    fn induction_preserves_gen_minimality(mask in 1u32..64) {
        let f = a3t2();
        let set: Vec<usize> = (0..6).filter(|k| mask & (1 << k) != 0).collect();
        prop_assert_eq!(f.top.is_tau_rigid(&set), f.base.is_tau_rigid(&set));
        prop_assume!(f.base.is_tau_rigid(&set));
        prop_assert_eq!(f.top.is_gen_minimal(&set), f.base.is_gen_minimal(&set));
        prop_assert_eq!(f.top.split_projectives(&set), f.base.split_projectives(&set));
    }

    #[test]
    fn phi_inverse_undoes_phi(fi in 0usize..3, v in 0usize..200, i in 1usize..4) {
        let f = families()[fi];
        let s = &f.seqs[v % f.seqs.len()];
        let i = 1 + (i - 1) % (s.len() - 1);
        let m = phi(&f.top, s, i).unwrap();
        prop_assert_eq!(&phi_inverse(&f.top, &m, i).unwrap(), s);
        prop_assert_eq!(&phi(&f.top, &phi_inverse(&f.top, s, i).unwrap(), i).unwrap(), s);
    }

    #[test]
    fn phi_is_sigma_over_path_algebras(v in 0usize..200, i in 1usize..4, d in proptest::bool::ANY) {
        let c = if d { &d4plane().base } else { &a3t2().base };
        let seqs = enumerate_complete(c).unwrap();
        let s = &seqs[v % seqs.len()];
        let i = 1 + (i - 1) % (s.len() - 1);
        prop_assert_eq!(phi(c, s, i).unwrap(), sigma(c, s, i, false).unwrap());
        prop_assert_eq!(phi_inverse(c, s, i).unwrap(), sigma(c, s, i, true).unwrap());
    }

    #[test]
    fn complete_sequences_agreeing_off_one_slot_agree(fi in 0usize..3, a in 0usize..200, b in 0usize..200) {
        let f = families()[fi];
        let (x, y) = (&f.seqs[a % f.seqs.len()], &f.seqs[b % f.seqs.len()]);
        let differing = x.iter().zip(y).filter(|(p, q)| p != q).count();
        prop_assert_ne!(differing, 1);
    }

    #[test]
    fn module_text_round_trips(fi in 0usize..3, x in 0usize..12) {
        let f = families()[fi];
        let x = x % f.top.len();
        let text = f.top.module(x).to_text(&f.top.objs[x].name, &f.top.alg);
        let (name, back) = Module::from_text(&f.top.alg, &text).unwrap();
        prop_assert_eq!(&name, &f.top.objs[x].name);
        prop_assert_eq!(back.to_text(&name, &f.top.alg), text);
    }
}
