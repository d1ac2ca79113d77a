//! Command line interface for the ladder decomposition engine.
//!
//! Exit codes: 0 on success, 2 on rejected input, 3 on an internal
//! consistency failure (an identity the theory guarantees failed to hold;
//! always a bug report).

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use laddec::error::{Error, Result};
use laddec::gadgets::{enumerate_sets, f_map, prec_sorted, x_max, GadgetContext};
use laddec::{
    c_membership_oracle, catalan_config, d_otimes, d_otimes_via_shuffle, decompose,
    enumerate_321_avoiding, ladder_character, modified_rs, pi_max, qshuffle, regular_pair_data,
    shuffle, solve_cmatrix, wbar_and_rows, DecompositionResult, Multisegment, Permutation, Word,
};

#[derive(Parser)]
#[command(
    name = "laddec",
    about = "Exact decomposition of products of two ladder representations",
    long_about = "Multisegments are written \"[a,b]+[c,d]\" (or as JSON \
                  {\"segments\": [[a,b],[c,d]]}); \"0\" is the empty one. \
                  Permutations are one-line images \"2,1,3\". Words are \
                  \"e3.e2.e1\" with \"1\" for the empty word."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the product of two ladder multisegments
    Decompose {
        m1: String,
        m2: String,
        /// Print the result as JSON
        #[arg(long)]
        json: bool,
        /// Include the certificate matrices
        #[arg(long)]
        certificates: bool,
        /// Re-check every candidate against the character oracle
        #[arg(long)]
        oracle_check: bool,
    },
    /// The maximal factor alone, through the fast gadget route
    Pimax { m1: String, m2: String },
    /// Decompose the interleaved configuration with the given factor sizes
    Catalan {
        m1_count: usize,
        m2_count: usize,
        #[arg(long, default_value_t = 16)]
        gap: i32,
    },
    /// Interval order, f map, J tilde, the L family and the maximal
    /// permutation of combinatorial data (w, J1, J2)
    Gadgets {
        /// Permutation w in one-line notation, e.g. "2,1,3"
        w: String,
        /// Members of J1, e.g. "1,3"; the rest form J2
        #[arg(long, value_delimiter = ',')]
        j1: Vec<usize>,
    },
    /// Modified Robinson-Schensted data of a 321-avoiding permutation
    Rs { w: String },
    /// Shuffle product of two words
    Shuffle { w1: String, w2: String },
    /// Quantum shuffle product of two words
    Qshuffle { w1: String, w2: String },
    /// Character of a ladder multisegment as a sum of words
    Character { m: String },
    /// Certificate matrix, statistics and degree of one candidate
    Invariants {
        m1: String,
        m2: String,
        /// Candidate permutation x in one-line notation
        x: String,
    },
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes, like other line tools
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Decompose {
            m1,
            m2,
            json,
            certificates,
            oracle_check,
        } => {
            let m1 = Multisegment::parse(&m1)?;
            let m2 = Multisegment::parse(&m2)?;
            let result = decompose(&m1, &m2)?;
            if oracle_check {
                run_oracle_check(&result)?;
            }
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&decomposition_json(&result, certificates))
                        .expect("serializable")
                );
            } else {
                print_decomposition(&result, certificates);
                if oracle_check {
                    println!("oracle check: all candidates agree");
                }
            }
            Ok(())
        }
        Command::Pimax { m1, m2 } => {
            let m1 = Multisegment::parse(&m1)?;
            let m2 = Multisegment::parse(&m2)?;
            let (m, degree) = pi_max(&m1, &m2)?;
            println!("pi_max = {m}");
            println!("d = {degree}");
            println!("note: conjecturally the unique irreducible sub-representation of the product");
            Ok(())
        }
        Command::Catalan {
            m1_count,
            m2_count,
            gap,
        } => {
            let (m1, m2) = catalan_config(m1_count, m2_count, gap)?;
            println!("m1 = {m1}");
            println!("m2 = {m2}");
            let result = decompose(&m1, &m2)?;
            println!("factors: {}", result.factors.len());
            print_decomposition(&result, false);
            Ok(())
        }
        Command::Gadgets { w, j1 } => {
            let w = Permutation::parse(&w)?;
            let ctx = GadgetContext::new(w, BTreeSet::from_iter(j1))?;
            print_gadgets(&ctx)
        }
        Command::Rs { w } => {
            let w = Permutation::parse(&w)?;
            let (p, q) = modified_rs(&w)?;
            let (wbar, j1, j2) = wbar_and_rows(&w)?;
            println!("P = {p}");
            println!("Q = {q}");
            println!("wbar = {wbar}");
            println!("J1 = {}", render_set(&j1));
            println!("J2 = {}", render_set(&j2));
            Ok(())
        }
        Command::Shuffle { w1, w2 } => {
            let w1 = Word::parse(&w1)?;
            let w2 = Word::parse(&w2)?;
            println!("{}", shuffle(&w1, &w2));
            Ok(())
        }
        Command::Qshuffle { w1, w2 } => {
            let w1 = Word::parse(&w1)?;
            let w2 = Word::parse(&w2)?;
            println!("{}", qshuffle(&w1, &w2));
            Ok(())
        }
        Command::Character { m } => {
            let m = Multisegment::parse(&m)?;
            let (normalized, shift) = m.normalize_shift();
            if shift != 0 {
                println!("note: input shifted by {shift} to positive coordinates");
            }
            println!("{}", ladder_character(&normalized)?);
            Ok(())
        }
        Command::Invariants { m1, m2, x } => {
            let m1 = Multisegment::parse(&m1)?;
            let m2 = Multisegment::parse(&m2)?;
            let x = Permutation::parse(&x)?;
            let data = regular_pair_data(&m1, &m2)?;
            if x.n() != data.n() {
                return Err(Error::Argument(format!(
                    "candidate size {} does not match the pair size {}",
                    x.n(),
                    data.n()
                )));
            }
            match solve_cmatrix(&data, &x) {
                None => println!("matrix exists: no"),
                Some(c) => {
                    println!("matrix exists: yes");
                    println!("c =");
                    for line in c.to_string().lines() {
                        println!("  {line}");
                    }
                    let (a1, a2) = c.alpha_stats();
                    println!("alpha = ({a1}, {a2})");
                    println!("d_otimes = {}", d_otimes(&data, &x).expect("matrix exists"));
                    println!(
                        "d_otimes_via_shuffle = {}",
                        d_otimes_via_shuffle(&data, &x)?.expect("matrix exists")
                    );
                }
            }
            Ok(())
        }
    }
}

fn run_oracle_check(result: &DecompositionResult) -> Result<()> {
    let found: BTreeSet<&Permutation> = result.factors.iter().map(|f| &f.x).collect();
    for x in enumerate_321_avoiding(result.pair.n())? {
        let candidate = laddec::make_msegment(result.pair.lambda(), result.pair.mu(), &x)?;
        let via_oracle = c_membership_oracle(&result.m1, &result.m2, &candidate)?;
        if via_oracle != found.contains(&x) {
            return Err(Error::Internal(format!(
                "oracle and solver disagree on candidate {x} of {} x {}",
                result.m1, result.m2
            )));
        }
    }
    Ok(())
}

fn print_decomposition(result: &DecompositionResult, certificates: bool) {
    let data = &result.pair;
    println!("pair: m1 = {}, m2 = {}", result.m1, result.m2);
    println!(
        "data: lambda = {}, mu = {}, w = {}, J1 = {}, J2 = {}",
        data.lambda(),
        data.mu(),
        data.w(),
        render_set(data.j1()),
        render_set(data.j2())
    );
    println!("factors ({}):", result.factors.len());
    for factor in &result.factors {
        let flag = if factor.is_max { "  [max]" } else { "" };
        println!(
            "  x = {:<12} d_otimes = {:>3}{flag}  {}",
            factor.x.to_string(),
            factor.degree,
            factor.multisegment
        );
        if certificates {
            for line in factor.certificate.to_string().lines() {
                println!("      {line}");
            }
        }
    }
}

fn decomposition_json(result: &DecompositionResult, certificates: bool) -> serde_json::Value {
    let data = &result.pair;
    let factors: Vec<serde_json::Value> = result
        .factors
        .iter()
        .map(|f| {
            let mut obj = serde_json::json!({
                "x": f.x.images(),
                "segments": f.multisegment.to_json_value(),
                "d_otimes": f.degree,
                "is_max": f.is_max,
            });
            if certificates {
                obj["certificate"] = serde_json::json!(f.certificate.rows());
                obj["alpha"] = serde_json::json!([f.alpha.0, f.alpha.1]);
            }
            obj
        })
        .collect();
    serde_json::json!({
        "pair": {
            "m1": result.m1.to_json_value(),
            "m2": result.m2.to_json_value(),
            "lambda": data.lambda().values(),
            "mu": data.mu().values(),
            "w": data.w().images(),
            "j1": data.j1(),
            "j2": data.j2(),
        },
        "factors": factors,
    })
}

fn print_gadgets(ctx: &GadgetContext) -> Result<()> {
    println!("{ctx}");
    let order = prec_sorted(ctx);
    let rendered: Vec<String> = order.iter().map(|v| v.to_string()).collect();
    println!("prec order: {}", rendered.join(" < "));
    let fdata = f_map(ctx);
    for (j, fj) in &fdata.f {
        if *fj == 0 {
            println!("f({j}) = 0");
        } else {
            let interval: Vec<String> =
                fdata.f_intervals[j].iter().map(|v| v.to_string()).collect();
            println!("f({j}) = {fj}   F({j}) = {{{}}}", interval.join(","));
        }
    }
    println!("J_tilde = {}", render_set(&fdata.j_tilde));
    let sets = enumerate_sets(ctx)?;
    println!("|A| = {}, |S| = {}, |L| = {}", sets.a_family.len(), sets.s_perms.len(), sets.l_perms.len());
    for sigma in &sets.l_perms {
        println!("  L member: {sigma}");
    }
    println!("x_max = {}", x_max(ctx));
    Ok(())
}

fn render_set(s: &BTreeSet<usize>) -> String {
    let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}
