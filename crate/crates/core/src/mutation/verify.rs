//! Named verification checks over Λ = R ⊗ kQ and its hereditary factor.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::algebra::config::Config;
use crate::algebra::{tensor_algebra, LocalAlgebra, Quiver, TensorData};
use crate::homology::proj_dimension;
use crate::tilting::{is_r_exceptional, Child, Ctx, Strict, TiltError};

use super::{
    classify_pair, enumerate_complete, mutation_graph, phi, phi_inverse, seq_name, sigma, tau_exceptional_pairs,
    MutationError, Seq,
};

pub const CHECK_NAMES: [&str; 8] =
    ["main-theorem", "braid", "transitivity", "uniqueness", "r-exceptional", "e-square", "mutation-complete", "figure1"];

const FIGURE1: &str = include_str!("../../data/figure1.txt");

/// Λ, its hereditary factor kQ, and both candidate contexts; index k is Ind(X_k) over Λ and X_k over kQ.
pub struct Setup {
    pub td: TensorData,
    pub base: Ctx,
    pub top: Ctx,
    /// Top-level names before aliases were applied.
    pub canonical: Vec<String>,
}

impl Setup {
    pub fn new(r: &LocalAlgebra, q: &Quiver, aliases: &[(String, String)]) -> Result<Setup, TiltError> {
        let td = tensor_algebra(r, q)?;
        let base = Ctx::hereditary(td.base.clone())?;
        let mut top = Ctx::lambda(&td)?;
        let canonical = top.objs.iter().map(|o| o.name.clone()).collect();
        top.rename(aliases);
        Ok(Setup { td, base, top, canonical })
    }

    pub fn from_config(cfg: &Config) -> Result<Setup, TiltError> {
        Setup::new(&cfg.coefficients, &cfg.quiver, &cfg.names)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CHECK {} {} {}", self.name, if self.pass { "PASS" } else { "FAIL" }, self.details)
    }
}

fn result(name: &str, failure: Option<String>, summary: String) -> CheckResult {
    match failure {
        None => CheckResult { name: name.into(), pass: true, details: summary },
        Some(f) => CheckResult { name: name.into(), pass: false, details: f },
    }
}

pub fn verify_suite(setup: &Setup, checks: &[&str]) -> Result<Vec<CheckResult>, MutationError> {
    if let Some(bad) = checks.iter().find(|c| !CHECK_NAMES.contains(c)) {
        return Err(MutationError::UnknownCheck(bad.to_string()));
    }
    let seqs = enumerate_complete(&setup.top)?;
    let mut out = Vec::new();
    for &c in checks {
        let r = match c {
            "main-theorem" => main_theorem(setup, &seqs),
            "braid" => braid(setup, &seqs),
            "transitivity" => transitivity(setup),
            "uniqueness" => Ok(uniqueness(setup, &seqs)),
            "r-exceptional" => Ok(r_exceptional(setup, &seqs)),
            "e-square" => e_square(setup),
            "mutation-complete" => mutation_complete(setup, &seqs),
            _ => figure1(setup),
        };
        out.push(r.unwrap_or_else(|e| CheckResult { name: c.into(), pass: false, details: format!("error: {e}") }));
    }
    Ok(out)
}

fn main_theorem(s: &Setup, seqs: &[Seq]) -> Result<CheckResult, MutationError> {
    let base_seqs = enumerate_complete(&s.base)?;
    let a: BTreeSet<&Seq> = seqs.iter().collect();
    let b: BTreeSet<&Seq> = base_seqs.iter().collect();
    if a != b {
        return Ok(result("main-theorem", Some(format!("{} sequences over Λ vs {} induced from kQ", a.len(), b.len())), String::new()));
    }
    let mut count = 0;
    for x in seqs {
        for i in 1..x.len() {
            let native = phi(&s.top, x, i)?;
            let classical = sigma(&s.base, x, i, false)?;
            if native != classical {
                let f = format!(
                    "phi_{i}{} = {} but induced sigma_{i} gives {}",
                    seq_name(&s.top, x),
                    seq_name(&s.top, &native),
                    seq_name(&s.top, &classical)
                );
                return Ok(result("main-theorem", Some(f), String::new()));
            }
            count += 1;
        }
    }
    Ok(result("main-theorem", None, format!("{count} comparisons over {} sequences", seqs.len())))
}

fn braid(s: &Setup, seqs: &[Seq]) -> Result<CheckResult, MutationError> {
    let mut count = 0;
    for x in seqs {
        for i in 1..x.len().saturating_sub(1) {
            let lhs = phi(&s.top, &phi(&s.top, &phi(&s.top, x, i)?, i + 1)?, i)?;
            let rhs = phi(&s.top, &phi(&s.top, &phi(&s.top, x, i + 1)?, i)?, i + 1)?;
            if lhs != rhs {
                let f = format!("{}: {} vs {}", seq_name(&s.top, x), seq_name(&s.top, &lhs), seq_name(&s.top, &rhs));
                return Ok(result("braid", Some(f), String::new()));
            }
            count += 1;
        }
        for i in 1..x.len() {
            for j in i + 2..x.len() {
                let lhs = phi(&s.top, &phi(&s.top, x, i)?, j)?;
                let rhs = phi(&s.top, &phi(&s.top, x, j)?, i)?;
                if lhs != rhs {
                    let f = format!("phi_{i} and phi_{j} do not commute on {}", seq_name(&s.top, x));
                    return Ok(result("braid", Some(f), String::new()));
                }
                count += 1;
            }
        }
    }
    Ok(result("braid", None, format!("{count} relations on {} sequences", seqs.len())))
}

fn transitivity(s: &Setup) -> Result<CheckResult, MutationError> {
    let g = mutation_graph(&s.top)?;
    let ok = g.is_connected();
    let summary = format!("{} vertices, {} edges, connected", g.vertices.len(), g.edges.len());
    Ok(result("transitivity", (!ok).then(|| format!("{} vertices, graph is disconnected", g.vertices.len())), summary))
}

fn uniqueness(s: &Setup, seqs: &[Seq]) -> CheckResult {
    let mut pairs = 0;
    for (a, x) in seqs.iter().enumerate() {
        for y in &seqs[a + 1..] {
            pairs += 1;
            if x.iter().zip(y).filter(|(p, q)| p != q).count() == 1 {
                let f = format!("{} and {} differ in exactly one entry", seq_name(&s.top, x), seq_name(&s.top, y));
                return result("uniqueness", Some(f), String::new());
            }
        }
    }
    result("uniqueness", None, format!("{pairs} pairs"))
}

fn r_exceptional(s: &Setup, seqs: &[Seq]) -> CheckResult {
    let top = &s.top;
    let mut entries = BTreeSet::new();
    for x in seqs {
        for (i, &a) in x.iter().enumerate() {
            entries.insert(a);
            for &b in &x[..i] {
                if top.hom(a, b) != 0 || top.ext(a, b) != 0 {
                    let f = format!("{}: Hom/Ext from {} to {}", seq_name(top, x), top.objs[a].name, top.objs[b].name);
                    return result("r-exceptional", Some(f), String::new());
                }
            }
        }
    }
    for &a in &entries {
        let m = top.module(a);
        if !is_r_exceptional(&s.td, m) || proj_dimension(&top.alg, m, 1).is_none() {
            let f = format!("{} is not R-exceptional with pd ≤ 1", top.objs[a].name);
            return result("r-exceptional", Some(f), String::new());
        }
    }
    result("r-exceptional", None, format!("{} entries, {} sequences", entries.len(), seqs.len()))
}

/// Basic support τ-rigid objects of size 1..n−1.
pub fn support_tau_rigid_sets(ctx: &Ctx) -> Vec<Vec<Strict>> {
    let all = ctx.stricts();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<Strict>, usize)> = vec![(Vec::new(), 0)];
    while let Some((cur, start)) = stack.pop() {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() + 1 >= ctx.n() {
            continue;
        }
        for k in start..all.len() {
            let mut next = cur.clone();
            next.push(all[k]);
            if ctx.is_support_tau_rigid(&next) {
                stack.push((next, k + 1));
            }
        }
    }
    out.sort();
    out
}

fn e_square(s: &Setup) -> Result<CheckResult, MutationError> {
    let mut count = 0;
    for u in support_tau_rigid_sets(&s.top) {
        let name = s.top.names(&u);
        let top_t = s.top.e_table(&u)?;
        let base_t = s.base.e_table(&u)?;
        let top_c = s.top.child(&u)?;
        let base_c = s.base.child(&u)?;
        let lift = |c: &Child, w: Strict| (c.members[w.obj], w.shifted);
        let a: Vec<(Strict, (usize, bool))> = top_t.iter().map(|&(v, w)| (v, lift(&top_c, w))).collect();
        let b: Vec<(Strict, (usize, bool))> = base_t.iter().map(|&(v, w)| (v, lift(&base_c, w))).collect();
        if a != b {
            return Ok(result("e-square", Some(format!("E_U over Λ differs from induced E_U over kQ for U = {name}")), String::new()));
        }
        let images: BTreeSet<Strict> = top_t.iter().map(|&(_, w)| w).collect();
        let targets: BTreeSet<Strict> = top_c
            .ctx
            .stricts()
            .into_iter()
            .filter(|w| w.shifted || top_c.ctx.hom_tau(w.obj, w.obj) == 0)
            .collect();
        if images.len() != top_t.len() || images != targets {
            return Ok(result("e-square", Some(format!("E_U is not a bijection for U = {name}")), String::new()));
        }
        for &(v, w) in top_t.iter() {
            if s.top.e_map_inverse(&u, w)? != v {
                return Ok(result("e-square", Some(format!("E_U⁻¹ ∘ E_U ≠ id for U = {name}")), String::new()));
            }
            count += 1;
        }
    }
    Ok(result("e-square", None, format!("{count} pairs (U,V)")))
}

fn contexts(s: &Setup, seqs: &[Seq]) -> Result<Vec<Arc<Child>>, MutationError> {
    let mut seen: BTreeMap<String, Arc<Child>> = BTreeMap::new();
    for x in seqs {
        for k in 1..x.len() {
            for c in super::chain(&s.top, &x[k..])? {
                seen.entry(c.ctx.name.clone()).or_insert(c);
            }
        }
    }
    Ok(seen.into_values().collect())
}

fn mutation_complete(s: &Setup, seqs: &[Seq]) -> Result<CheckResult, MutationError> {
    let kids = contexts(s, seqs)?;
    let mut ctxs: Vec<&Ctx> = vec![&s.top];
    ctxs.extend(kids.iter().map(|c| &c.ctx).filter(|c| c.n() >= 2));
    let mut pairs = 0;
    let mut irregular = 0;
    for ctx in &ctxs {
        for (b, c) in tau_exceptional_pairs(ctx)? {
            let cl = classify_pair(ctx, b, c)?;
            if !(cl.left_mutable && cl.right_mutable) {
                let f = format!("({},{}) in {} is not mutable", ctx.objs[b].name, ctx.objs[c].name, ctx.name);
                return Ok(result("mutation-complete", Some(f), String::new()));
            }
            pairs += 1;
            irregular += usize::from(!cl.left_regular);
        }
    }
    for x in seqs {
        for i in 1..x.len() {
            if phi_inverse(&s.top, &phi(&s.top, x, i)?, i)? != *x {
                let f = format!("phi_{i}⁻¹ ∘ phi_{i} ≠ id on {}", seq_name(&s.top, x));
                return Ok(result("mutation-complete", Some(f), String::new()));
            }
        }
    }
    Ok(result(
        "mutation-complete",
        None,
        format!("{pairs} pairs in {} contexts, {irregular} left irregular", ctxs.len()),
    ))
}

/// Parsed golden file: alias table and edge lines `phi_i <from> <to>` with labels.
pub struct Figure {
    pub names: HashMap<String, String>,
    pub positions: Vec<(String, String)>,
    pub edges: Vec<(usize, String, String)>,
}

pub fn parse_figure(text: &str) -> Figure {
    let mut names = HashMap::new();
    let mut positions = Vec::new();
    let mut edges = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["name", a, "=", c] => {
                names.insert(a.to_string(), c.to_string());
            }
            ["vertex", p, label] => positions.push((p.to_string(), label.to_string())),
            ["edge", phi, a, b] => {
                let i = phi.trim_start_matches("phi_").parse().expect("edge index");
                let at = |p: &str| positions.iter().find(|(q, _)| q == p).map(|(_, l)| l.clone()).expect("declared vertex");
                edges.push((i, at(a), at(b)));
            }
            _ => panic!("malformed figure line `{line}`"),
        }
    }
    Figure { names, positions, edges }
}

fn figure1(s: &Setup) -> Result<CheckResult, MutationError> {
    let fig = parse_figure(FIGURE1);
    let is_a3 = s.td.base.quiver == Quiver::type_a(3) && s.td.r.truncation == Some(2);
    if !is_a3 {
        return Ok(result("figure1", Some("the figure describes A3 with t = 2".into()), String::new()));
    }
    let g = mutation_graph(&s.top)?;
    let canon = |label: &str| -> String {
        let inner = label.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(label);
        let parts: Vec<String> = inner.split(',').map(|n| fig.names.get(n).cloned().unwrap_or_else(|| n.to_string())).collect();
        format!("({})", parts.join(","))
    };
    let want: BTreeSet<(usize, String, String)> = fig.edges.iter().map(|(i, a, b)| (*i, canon(a), canon(b))).collect();
    let label = |v: usize| -> String {
        format!("({})", g.vertices[v].iter().map(|&k| s.canonical[k].as_str()).collect::<Vec<_>>().join(","))
    };
    let got: BTreeSet<(usize, String, String)> = g.edges.iter().map(|&(a, i, b)| (i, label(a), label(b))).collect();
    let drawn: BTreeSet<String> = fig.positions.iter().map(|(_, l)| canon(l)).collect();
    let summary = format!(
        "{} drawn positions identified to {} vertices, {} edges match",
        fig.positions.len(),
        drawn.len(),
        got.len()
    );
    let missing: Vec<String> = want.difference(&got).map(|(i, a, b)| format!("phi_{i} {a} {b}")).collect();
    let extra: Vec<String> = got.difference(&want).map(|(i, a, b)| format!("phi_{i} {a} {b}")).collect();
    let failure = (!missing.is_empty() || !extra.is_empty() || drawn.len() != g.vertices.len())
        .then(|| format!("missing [{}] unexpected [{}]", missing.join("; "), extra.join("; ")));
    Ok(result("figure1", failure, summary))
}
