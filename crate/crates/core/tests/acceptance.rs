//! Acceptance suite: one line per criterion, then a single assertion over all of them.

use std::sync::Arc;
use std::time::{Duration, Instant};

use taumut::algebra::config::parse_config;
use taumut::algebra::{path_algebra, Quiver};
use taumut::homology::{euler_form, proj_dimension, tau};
use taumut::module::{hom_dim, induce, is_isomorphic, knit_hereditary_catalog};
use taumut::mutation::{enumerate_complete, mutation_graph, parse_seq, phi, seq_name, verify_suite, Setup, CHECK_NAMES};
use taumut::tilting::Ctx;

const CATALOG_LIMIT: Duration = Duration::from_secs(1);
const TAU_RIGID_LIMIT: Duration = Duration::from_secs(5);
const FIGURE_LIMIT: Duration = Duration::from_secs(60);

const A2_T2: &str = include_str!("../../../configs/a2_t2.cfg");
const A3_T2: &str = include_str!("../../../configs/a3_t2.cfg");
const A3_T3: &str = include_str!("../../../configs/a3_t3.cfg");

struct Line {
    n: usize,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn setup(text: &str) -> Setup {
    Setup::from_config(&parse_config(text).unwrap()).unwrap()
}

fn d4() -> Quiver {
    Quiver::with_arrows(4, &[("a", 0, 1), ("b", 2, 1), ("c", 3, 1)])
}

fn kq(q: Quiver) -> Ctx {
    Ctx::hereditary(Arc::new(path_algebra("kQ", q).unwrap())).unwrap()
}

fn check(s: &Setup, name: &str) -> (bool, String) {
    let r = verify_suite(s, &[name]).unwrap().remove(0);
    (r.pass, r.details)
}

fn run(n: usize, limit: Option<Duration>, f: impl FnOnce() -> (bool, String)) -> Line {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let detail = match limit {
        Some(l) if !in_time => format!("{detail}; over the {l:?} limit"),
        _ => detail,
    };
    Line { n, pass: ok && in_time, detail, elapsed }
}

fn catalog_counts() -> (bool, String) {
    let counts: Vec<usize> = [Quiver::type_a(2), Quiver::type_a(3), d4()]
        .into_iter()
        .map(|q| knit_hereditary_catalog(&path_algebra("kQ", q).unwrap()).unwrap().len())
        .collect();
    (counts == [3, 6, 12], format!("A2/A3/D4 = {counts:?}"))
}

fn tau_rigid() -> (bool, String) {
    let s = setup(A3_T2);
    let c = &s.top;
    let mut names = Vec::new();
    for x in 0..c.len() {
        let direct = hom_dim(&c.alg, c.module(x), &tau(&c.alg, c.module(x)));
        if direct != c.hom_tau(x, x) {
            return (false, format!("Hom(X, τX) disagrees for {}", s.canonical[x]));
        }
        if direct == 0 {
            names.push(s.canonical[x].clone());
        }
    }
    let ok = names.len() == 6 && names.iter().any(|n| n == "Ind(S_2)") && names.iter().all(|n| n.starts_with("Ind("));
    (ok, format!("{} τ-rigid: {}", names.len(), names.join(" ")))
}

fn tau_induction() -> (bool, String) {
    let mut witnesses = 0;
    for text in [A3_T2, A3_T3] {
        let s = setup(text);
        for x in 0..s.base.len() {
            let lhs = tau(&s.td.lambda, &induce(&s.td, s.base.module(x)));
            let rhs = induce(&s.td, &tau(&s.base.alg, s.base.module(x)));
            match is_isomorphic(&s.td.lambda, &lhs, &rhs) {
                Some(w) if w.is_iso() && w.is_morphism(&s.td.lambda, &lhs, &rhs) => witnesses += 1,
                _ => return (false, format!("τ(Λ⊗{0}) ≇ Λ⊗τ{0} in {1}", s.canonical[x], s.top.name)),
            }
        }
    }
    (witnesses == 12, format!("{witnesses} isomorphism witnesses for t = 2, 3"))
}

fn sequence_counts() -> (bool, String) {
    let top = enumerate_complete(&setup(A3_T2).top).unwrap().len();
    let base = enumerate_complete(&kq(Quiver::type_a(3))).unwrap().len();
    let a2 = enumerate_complete(&kq(Quiver::type_a(2))).unwrap().len();
    ((top, base, a2) == (16, 16, 3), format!("Λ(A3,t=2) {top}, kA3 {base}, kA2 {a2}"))
}

fn figure() -> (bool, String) {
    let s = setup(A3_T2);
    let (ok, detail) = check(&s, "figure1");
    let edges = [("(I1,M,P3)", 1, "(I2,I1,P3)"), ("(P3,P2,P1)", 1, "(M,P3,P1)"), ("(P3,P2,P1)", 2, "(P3,I1,P2)")];
    let g = mutation_graph(&s.top).unwrap();
    let lines = g.edge_lines();
    for (from, i, to) in edges {
        let line = format!("phi_{i} {from} {to}");
        let direct = seq_name(&s.top, &phi(&s.top, &parse_seq(&s.top, from).unwrap(), i).unwrap());
        if direct != to || !lines.contains(&line) {
            return (false, format!("edge `{line}` absent (φ gives {direct})"));
        }
    }
    (ok, format!("{detail}; 3 named edges present"))
}

fn on_both_truncations(name: &str) -> (bool, String) {
    let a = check(&setup(A3_T2), name);
    let b = check(&setup(A3_T3), name);
    (a.0 && b.0, format!("t=2: {}; t=3: {}", a.1, b.1))
}

fn e_maps() -> (bool, String) {
    let a2 = check(&setup(A2_T2), "e-square");
    let a3 = check(&setup(A3_T2), "e-square");
    (a2.0 && a3.0, format!("A2: {}; A3: {}", a2.1, a3.1))
}

fn properties() -> (bool, String) {
    let mut euler = 0;
    for q in [Quiver::type_a(2), Quiver::type_a(3), d4()] {
        let c = kq(q.clone());
        for x in 0..c.len() {
            for y in 0..c.len() {
                if euler_form(&q, &c.module(x).dims, &c.module(y).dims) != c.hom(x, y) as i64 - c.ext(x, y) as i64 {
                    return (false, format!("Euler form fails at ({}, {})", c.objs[x].name, c.objs[y].name));
                }
                euler += 1;
            }
        }
    }
    let mut duality = 0;
    for c in [kq(Quiver::type_a(2)), kq(Quiver::type_a(3)), kq(d4()), setup(A3_T2).top, setup(A3_T3).top] {
        for x in (0..c.len()).filter(|&x| proj_dimension(&c.alg, c.module(x), 1).is_some()) {
            for y in 0..c.len() {
                if c.ext(x, y) != c.hom_tau(y, x) {
                    return (false, format!("Ext¹({0},{1}) ≠ D Hom({1}, τ{0}) in {2}", c.objs[x].name, c.objs[y].name, c.name));
                }
                duality += 1;
            }
        }
    }
    let mut subsets = 0;
    for text in [A2_T2, A3_T2] {
        let s = setup(text);
        let n = s.base.len();
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
            if s.top.is_tau_rigid(&set) != s.base.is_tau_rigid(&set) {
                return (false, format!("τ-rigidity not preserved on subset {mask:b}"));
            }
            if !s.base.is_tau_rigid(&set) {
                continue;
            }
            if s.top.is_gen_minimal(&set) != s.base.is_gen_minimal(&set)
                || s.top.split_projectives(&set) != s.base.split_projectives(&set)
            {
                return (false, format!("gen-minimality not preserved on subset {mask:b}"));
            }
            subsets += 1;
        }
    }
    let (uniq, detail) = check(&setup(A3_T2), "uniqueness");
    (
        uniq,
        format!("Euler {euler} pairs, AR duality {duality} pairs, gen-minimal {subsets} subsets, uniqueness {detail}"),
    )
}

fn determinism() -> (bool, String) {
    let report = |threads: usize| {
        let s = setup(A3_T2);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let lines: Vec<String> = verify_suite(&s, &CHECK_NAMES).unwrap().iter().map(|r| r.to_string()).collect();
            (lines.join("\n"), mutation_graph(&s.top).unwrap().to_dot())
        })
    };
    let (r1, d1) = report(1);
    let (r4, d4) = report(4);
    (r1 == r4 && d1 == d4, format!("reports {} bytes, DOT {} bytes, identical across 1 and 4 threads", r1.len(), d1.len()))
}

fn main() {
    let lines = vec![
        run(1, Some(CATALOG_LIMIT), catalog_counts),
        run(2, Some(TAU_RIGID_LIMIT), tau_rigid),
        run(3, None, tau_induction),
        run(4, None, sequence_counts),
        run(5, Some(FIGURE_LIMIT), figure),
        run(6, None, || check(&setup(A3_T2), "main-theorem")),
        run(7, None, || on_both_truncations("braid")),
        run(8, None, || check(&setup(A3_T2), "transitivity")),
        run(9, None, e_maps),
        run(10, None, || check(&setup(A3_T2), "r-exceptional")),
        run(11, None, || on_both_truncations("mutation-complete")),
        run(12, None, properties),
        run(13, None, determinism),
    ];
    for l in &lines {
        println!("criterion {:>2} {} {} [{:.3}s]", l.n, if l.pass { "PASS" } else { "FAIL" }, l.detail, l.elapsed.as_secs_f64());
    }
    let failed: Vec<usize> = lines.iter().filter(|l| !l.pass).map(|l| l.n).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
