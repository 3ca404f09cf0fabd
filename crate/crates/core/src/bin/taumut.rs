use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use taumut::algebra::config::load_config;
use taumut::linalg::set_cross_check_prime;
use taumut::mutation::{enumerate_complete, mutation_graph, parse_seq, phi, phi_inverse, seq_name, verify_suite, Setup, CHECK_NAMES};

#[derive(Parser)]
#[command(name = "taumut", about = "Mutation of τ-exceptional sequences over R ⊗ kQ")]
struct Cli {
    #[arg(long)]
    config: PathBuf,
    /// Cross-check every rank computation modulo this prime.
    #[arg(long)]
    prime: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Indecomposable Λ-modules induced from the kQ catalog.
    Catalog,
    /// τ-rigid indecomposables over Λ.
    Taurigid,
    /// Complete τ-exceptional sequences.
    Sequences,
    Mutate {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        i: usize,
        /// Apply φ_i⁻¹ instead of φ_i.
        #[arg(long)]
        right: bool,
    },
    Graph {
        #[arg(long)]
        dot: PathBuf,
    },
    Verify {
        /// Comma separated, or `all`.
        #[arg(long)]
        checks: String,
    },
    Module {
        #[arg(long)]
        dump: String,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(p) = cli.prime {
        set_cross_check_prime(Some(p));
    }
    let cfg = match load_config(&cli.config) {
        Ok(c) => c,
        Err(e) => return usage(format!("{}: {e}", cli.config.display())),
    };
    let setup = match Setup::from_config(&cfg) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let top = &setup.top;
    match cli.command {
        Command::Catalog => {
            for (k, o) in top.objs.iter().enumerate() {
                let base = &setup.base.objs[k];
                println!("{} {} base_dims={:?} dims={:?}", o.name, setup.canonical[k], base.module.dims, o.module.dims);
            }
        }
        Command::Taurigid => {
            for (k, o) in top.objs.iter().enumerate() {
                if top.hom_tau(k, k) == 0 {
                    println!("{}", o.name);
                }
            }
        }
        Command::Sequences => match enumerate_complete(top) {
            Ok(all) => all.iter().for_each(|s| println!("{}", seq_name(top, s))),
            Err(e) => return usage(e),
        },
        Command::Mutate { seq, i, right } => {
            let s = match parse_seq(top, &seq) {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let out = if right { phi_inverse(top, &s, i) } else { phi(top, &s, i) };
            match out {
                Ok(r) => println!("{}", seq_name(top, &r)),
                Err(e) => return usage(e),
            }
        }
        Command::Graph { dot } => {
            let g = match mutation_graph(top) {
                Ok(g) => g,
                Err(e) => return usage(e),
            };
            if let Err(e) = std::fs::write(&dot, g.to_dot()) {
                return usage(format!("{}: {e}", dot.display()));
            }
            println!("{} vertices, {} edges", g.vertices.len(), g.edges.len());
        }
        Command::Verify { checks } => {
            let names: Vec<&str> = if checks.trim() == "all" {
                CHECK_NAMES.to_vec()
            } else {
                checks.split(',').map(str::trim).filter(|c| !c.is_empty()).collect()
            };
            if names.is_empty() {
                return usage("empty check list");
            }
            let report = match verify_suite(&setup, &names) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            for r in &report {
                println!("{r}");
            }
            if report.iter().any(|r| !r.pass) {
                return ExitCode::from(1);
            }
        }
        Command::Module { dump } => match top.find(&dump) {
            Ok(k) => print!("{}", top.module(k).to_text(&top.objs[k].name, &top.alg)),
            Err(e) => return usage(e),
        },
    }
    ExitCode::SUCCESS
}
