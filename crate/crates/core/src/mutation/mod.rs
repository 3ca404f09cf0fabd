//! τ-exceptional sequences and their mutations.
//!
//! A sequence is a list of indices into the top-level [`Ctx`], leftmost entry first. Nested
//! contexts keep top-level names, so entries are located in J(M_{k+1}, ..., M_t) by name.

pub mod graph;
pub mod sigma;
pub mod verify;

use std::sync::Arc;

use thiserror::Error;

use crate::homology::universal_extension;
use crate::module::is_isomorphic;
use crate::tilting::{Child, Ctx, Strict, TiltError};

pub use graph::{mutation_graph, MutationGraph};
pub use sigma::sigma;
pub use verify::{verify_suite, CheckResult, Setup, CHECK_NAMES};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MutationError {
    #[error("{0} is not a τ-exceptional sequence")]
    NotTauExceptional(String),
    #[error("{0} is not an exceptional sequence")]
    NotExceptional(String),
    #[error("index {i} out of range for a sequence of length {len}")]
    BadIndex { i: usize, len: usize },
    #[error("mutation needs a hereditary ambient category with every indecomposable listed")]
    NotHereditary,
    #[error("{what} has {count} solutions, expected exactly one")]
    NotUnique { what: String, count: usize },
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error(transparent)]
    Tilt(#[from] TiltError),
}

pub type Seq = Vec<usize>;

pub fn seq_name(top: &Ctx, seq: &[usize]) -> String {
    format!("({})", seq.iter().map(|&i| top.objs[i].name.as_str()).collect::<Vec<_>>().join(","))
}

/// Parses `(A,B,C)` against top-level names.
pub fn parse_seq(top: &Ctx, s: &str) -> Result<Seq, TiltError> {
    let t = s.trim();
    let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|n| top.find(n.trim())).collect()
}

/// Nested contexts J(M_t), J(M_{t−1}, M_t), ... for the entries of `suffix`, innermost last.
pub fn chain(top: &Ctx, suffix: &[usize]) -> Result<Vec<Arc<Child>>, MutationError> {
    let mut out: Vec<Arc<Child>> = Vec::new();
    for &m in suffix.iter().rev() {
        let cur: &Ctx = out.last().map_or(top, |c| &c.ctx);
        let bad = || MutationError::NotTauExceptional(seq_name(top, suffix));
        let x = cur.find(&top.objs[m].name).map_err(|_| bad())?;
        if cur.hom_tau(x, x) != 0 {
            return Err(bad());
        }
        let next = cur.child(&[Strict::module(x)])?;
        out.push(next);
    }
    Ok(out)
}

pub fn validate_tau_exceptional(top: &Ctx, seq: &[usize]) -> bool {
    chain(top, seq).is_ok()
}

/// End = k, no self-extensions, and Hom and Ext¹ vanish from right to left.
pub fn validate_exceptional(top: &Ctx, seq: &[usize]) -> bool {
    seq.iter().all(|&x| top.hom(x, x) == 1 && top.ext(x, x) == 0)
        && (0..seq.len()).all(|i| (i + 1..seq.len()).all(|j| top.hom(seq[j], seq[i]) == 0 && top.ext(seq[j], seq[i]) == 0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairClassification {
    pub left_regular: bool,
    pub right_regular: bool,
    pub left_mutable: bool,
    pub right_mutable: bool,
}

/// Result of φ on a pair (B, C) of a context: the pair (C′, B′) and how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairMutation {
    pub c_new: usize,
    pub b_new: usize,
    pub left_regular: bool,
    pub right_regular: bool,
}

fn member(child: &Child, ctx: &Ctx, x: usize) -> Result<usize, MutationError> {
    child.local(x).ok_or_else(|| MutationError::Tilt(TiltError::NotMember(ctx.objs[x].name.clone())))
}

/// φ(B, C) for a τ-exceptional pair of `ctx`: B ∈ J(C), both given as indices of `ctx`.
pub fn phi_pair(ctx: &Ctx, b: usize, c: usize) -> Result<PairMutation, MutationError> {
    let cs = Strict::module(c);
    if ctx.hom_tau(c, c) != 0 {
        return Err(MutationError::NotTauExceptional(format!("({},{})", ctx.objs[b].name, ctx.objs[c].name)));
    }
    let jc = ctx.child(&[cs])?;
    let b_loc = member(&jc, ctx, b)?;
    if jc.ctx.hom_tau(b_loc, b_loc) != 0 {
        return Err(MutationError::NotTauExceptional(format!("({},{})", ctx.objs[b].name, ctx.objs[c].name)));
    }
    let v = ctx.e_map_inverse(&[cs], Strict::module(b_loc))?;
    let c_proj = ctx.is_projective(c);
    let left_regular = c_proj || !ctx.bongartz(&[v])?.contains(&cs);
    let right_regular = v.shifted || ctx.bongartz(&[cs])?.contains(&v) || !ctx.in_gen(c, &[v.obj]);
    let (c_new, b_new) = if left_regular {
        let cplus = if c_proj { Strict::shift(c) } else { cs };
        let jcp = ctx.child(&[cplus])?;
        let bup = ctx.e_map_inverse(&[cplus], Strict::module(member(&jcp, ctx, b)?))?;
        assert_eq!(bup, Strict::module(b), "B_(C↑) must be B in {}", ctx.name);
        let w = ctx.e_map(&[bup], cplus)?;
        let jb = ctx.child(&[bup])?;
        (jb.members[w.obj], b)
    } else {
        let (ext, _) = universal_extension(&ctx.alg, ctx.module(b), ctx.module(c))
            .expect("a left irregular pair has Ext¹(B, C) ≠ 0");
        let e = (0..ctx.len())
            .find(|&x| ctx.module(x).dims == ext.middle.dims && is_isomorphic(&ctx.alg, ctx.module(x), &ext.middle).is_some())
            .unwrap_or_else(|| panic!("universal extension of {} by {} is not a candidate", ctx.objs[b].name, ctx.objs[c].name));
        assert!(ctx.in_gen(b, &[e]), "B must be generated by the universal extension");
        if ctx.complete {
            torsion_cross_check(ctx, v, cs, b, e)?;
        }
        let bs = Strict::module(b);
        let w = ctx.e_map(&[bs], Strict::module(e))?;
        assert!(!w.shifted, "E_B(E) must be a module");
        let jb = ctx.child(&[bs])?;
        (jb.members[w.obj], b)
    };
    let jb = ctx.child(&[Strict::module(b_new)])?;
    let before = jc.perp_in_parent(&[Strict::module(b_loc)]);
    let after = jb.perp_in_parent(&[Strict::module(member(&jb, ctx, c_new)?)]);
    assert_eq!(before, after, "J(φ(B,C)) must equal J(B,C) in {}", ctx.name);
    Ok(PairMutation { c_new, b_new, left_regular, right_regular })
}

/// P_ns(T(J(L))) = {B, E} and P_s(Gen P_ns) = {E}, with L = E_C⁻¹(B) ⊕ C.
fn torsion_cross_check(ctx: &Ctx, v: Strict, c: Strict, b: usize, e: usize) -> Result<(), MutationError> {
    let jl = ctx.child(&[v, c])?;
    let t = ctx.torsion_closure(&jl.members);
    let (_, mut pns) = ctx.split_projectives_of(&t);
    pns.sort();
    let mut want = vec![b, e];
    want.sort();
    assert_eq!(pns, want, "non-split projectives of T(J(L)) in {}", ctx.name);
    let (xs, _) = ctx.split_projectives(&pns);
    assert_eq!(xs, vec![e], "split projectives of Gen P_ns in {}", ctx.name);
    Ok(())
}

pub fn classify_pair(ctx: &Ctx, b: usize, c: usize) -> Result<PairClassification, MutationError> {
    let m = phi_pair(ctx, b, c)?;
    let right_mutable = phi_pair_inverse(ctx, b, c).is_ok();
    Ok(PairClassification { left_regular: m.left_regular, right_regular: m.right_regular, left_mutable: true, right_mutable })
}

/// All τ-exceptional pairs (B, C) of `ctx`.
pub fn tau_exceptional_pairs(ctx: &Ctx) -> Result<Vec<(usize, usize)>, MutationError> {
    let mut out = Vec::new();
    for c in 0..ctx.len() {
        if ctx.hom_tau(c, c) != 0 {
            continue;
        }
        let jc = ctx.child(&[Strict::module(c)])?;
        for (k, &b) in jc.members.iter().enumerate() {
            if jc.ctx.hom_tau(k, k) == 0 {
                out.push((b, c));
            }
        }
    }
    Ok(out)
}

/// The unique pair (B, C) with φ(B, C) = (x, y).
pub fn phi_pair_inverse(ctx: &Ctx, x: usize, y: usize) -> Result<(usize, usize), MutationError> {
    let mut hits = Vec::new();
    for (b, c) in tau_exceptional_pairs(ctx)? {
        let m = phi_pair(ctx, b, c)?;
        if (m.c_new, m.b_new) == (x, y) {
            hits.push((b, c));
        }
    }
    match hits.as_slice() {
        [p] => Ok(*p),
        _ => Err(MutationError::NotUnique { what: format!("φ⁻¹({},{}) in {}", ctx.objs[x].name, ctx.objs[y].name, ctx.name), count: hits.len() }),
    }
}

fn pair_context<'a>(top: &'a Ctx, seq: &[usize], i: usize, chain_: &'a [Arc<Child>]) -> Result<(&'a Ctx, usize, usize), MutationError> {
    let ctx: &Ctx = chain_.last().map_or(top, |c| &c.ctx);
    let b = ctx.find(&top.objs[seq[i - 1]].name)?;
    let c = ctx.find(&top.objs[seq[i]].name)?;
    Ok((ctx, b, c))
}

fn check_index(seq: &[usize], i: usize) -> Result<(), MutationError> {
    if i == 0 || i >= seq.len() {
        return Err(MutationError::BadIndex { i, len: seq.len() });
    }
    Ok(())
}

/// φ_i: mutates the entries i and i+1 (1-based) inside J(M_{i+2}, ..., M_t).
pub fn phi(top: &Ctx, seq: &[usize], i: usize) -> Result<Seq, MutationError> {
    check_index(seq, i)?;
    let ch = chain(top, &seq[i + 1..])?;
    let (ctx, b, c) = pair_context(top, seq, i, &ch)?;
    let m = phi_pair(ctx, b, c)?;
    let mut out = seq.to_vec();
    out[i - 1] = top.find(&ctx.objs[m.c_new].name)?;
    out[i] = top.find(&ctx.objs[m.b_new].name)?;
    Ok(out)
}

/// φ_i⁻¹ by exhausting the τ-exceptional pairs of the same context.
pub fn phi_inverse(top: &Ctx, seq: &[usize], i: usize) -> Result<Seq, MutationError> {
    check_index(seq, i)?;
    let ch = chain(top, &seq[i + 1..])?;
    let (ctx, x, y) = pair_context(top, seq, i, &ch)?;
    let (b, c) = phi_pair_inverse(ctx, x, y)?;
    let mut out = seq.to_vec();
    out[i - 1] = top.find(&ctx.objs[b].name)?;
    out[i] = top.find(&ctx.objs[c].name)?;
    Ok(out)
}

/// Complete τ-exceptional sequences, sorted by their names.
pub fn enumerate_complete(top: &Ctx) -> Result<Vec<Seq>, MutationError> {
    fn dfs(top: &Ctx, ctx: &Ctx, suffix: &[usize], out: &mut Vec<Seq>) -> Result<(), MutationError> {
        if ctx.n() == 0 {
            out.push(suffix.to_vec());
            return Ok(());
        }
        for x in 0..ctx.len() {
            if ctx.hom_tau(x, x) != 0 {
                continue;
            }
            let child = ctx.child(&[Strict::module(x)])?;
            let mut next = vec![top.find(&ctx.objs[x].name)?];
            next.extend_from_slice(suffix);
            dfs(top, &child.ctx, &next, out)?;
        }
        Ok(())
    }
    let mut out = Vec::new();
    dfs(top, top, &[], &mut out)?;
    out.sort_by_key(|s| seq_name(top, s));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, tensor_algebra, LocalAlgebra, Quiver};

    fn a3() -> Ctx {
        Ctx::hereditary(Arc::new(path_algebra("kA3", Quiver::type_a(3)).unwrap())).unwrap()
    }

    fn s(c: &Ctx, names: &[&str]) -> Seq {
        names.iter().map(|n| c.find(n).unwrap()).collect()
    }

    #[test]
    fn validation() {
        let c = a3();
        assert!(validate_exceptional(&c, &s(&c, &["P_3", "P_2", "P_1"])));
        assert!(validate_tau_exceptional(&c, &s(&c, &["P_3", "P_2", "P_1"])));
        assert!(validate_exceptional(&c, &s(&c, &["I_1", "S_2"])));
        assert!(validate_tau_exceptional(&c, &s(&c, &["I_1", "S_2"])));
        assert!(!validate_tau_exceptional(&c, &s(&c, &["S_2", "I_1"])));
    }

    #[test]
    fn irregular_pair() {
        let c = a3();
        let [s1, s2, i2] = [c.find("I_1").unwrap(), c.find("S_2").unwrap(), c.find("I_2").unwrap()];
        let m = phi_pair(&c, s1, s2).unwrap();
        assert!(!m.left_regular);
        assert_eq!((m.c_new, m.b_new), (i2, s1));
    }

    #[test]
    fn regular_pair_with_projective() {
        let a2 = Ctx::hereditary(Arc::new(path_algebra("kA2", Quiver::type_a(2)).unwrap())).unwrap();
        let [s1, p2, p1] = [a2.find("I_1").unwrap(), a2.find("P_2").unwrap(), a2.find("P_1").unwrap()];
        let m = phi_pair(&a2, s1, p2).unwrap();
        assert!(m.left_regular);
        assert_eq!((m.c_new, m.b_new), (p1, s1));
    }

    #[test]
    fn counts() {
        let a2 = Ctx::hereditary(Arc::new(path_algebra("kA2", Quiver::type_a(2)).unwrap())).unwrap();
        let all = enumerate_complete(&a2).unwrap();
        let names: Vec<String> = all.iter().map(|x| seq_name(&a2, x)).collect();
        assert_eq!(names, ["(I_1,P_2)", "(P_1,I_1)", "(P_2,P_1)"]);
        assert_eq!(enumerate_complete(&a3()).unwrap().len(), 16);
    }

    #[test]
    fn figure_edges_over_lambda() {
        let td = tensor_algebra(&LocalAlgebra::truncated(2), &Quiver::type_a(3)).unwrap();
        let c = Ctx::lambda(&td).unwrap();
        let x = parse_seq(&c, "(Ind(P_3),Ind(P_2),Ind(P_1))").unwrap();
        assert_eq!(seq_name(&c, &phi(&c, &x, 1).unwrap()), "(Ind(S_2),Ind(P_3),Ind(P_1))");
        assert_eq!(seq_name(&c, &phi(&c, &x, 2).unwrap()), "(Ind(P_3),Ind(I_1),Ind(P_2))");
        let y = parse_seq(&c, "(Ind(I_1),Ind(S_2),Ind(P_3))").unwrap();
        assert_eq!(seq_name(&c, &phi(&c, &y, 1).unwrap()), "(Ind(I_2),Ind(I_1),Ind(P_3))");
        assert_eq!(phi_inverse(&c, &phi(&c, &y, 1).unwrap(), 1).unwrap(), y);
    }
}
