//! Command-line front end: solve `x^2 + d*y^2 = m` with per-root traces,
//! plus direct access to the supporting machinery (modular square roots,
//! factorization, continued fractions, Smith's two-squares construction).
//!
//! Exit codes: 0 when at least one solution (or result) was printed,
//! 1 when the search came up empty, 2 on invalid input.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::One;
use quadrep::cornacchia::{root_attempts, RootAttempt};
use quadrep::factor::{factorize_with_effort, Factorization, DEFAULT_FACTOR_EFFORT};
use quadrep::modsqrt::sqrt_mod;
use quadrep::{compose, oracle, Antenaresis, Int, Nat, ProblemSpec, Representation};

#[derive(Parser)]
#[command(
    name = "quadrep",
    version,
    about = "Solve x^2 + d*y^2 = m over the integers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find representations x^2 + d*y^2 = m
    Solve(SolveArgs),
    /// Square roots of a (possibly negative) residue modulo m
    Sqrtmod {
        #[arg(allow_hyphen_values = true)]
        a: String,
        m: String,
    },
    /// Certified prime factorization of m
    Factor { m: String },
    /// Continued-fraction expansion of a/b with remainders and convergents
    Cf { a: String, b: String },
    /// Two-squares decomposition of a prime p = 1 (mod 4) by Smith's
    /// palindromic-expansion search
    Smith { p: String },
}

#[derive(Args)]
struct SolveArgs {
    m: String,
    /// Coefficient d >= 1 of the form x^2 + d*y^2
    #[arg(long, default_value = "1")]
    d: String,
    /// Report proper solutions only (gcd(x, y) = 1)
    #[arg(long, conflicts_with = "improper")]
    proper_only: bool,
    /// Also report improper solutions (composition and scaling)
    #[arg(long)]
    improper: bool,
    /// Replace the solver with the brute-force enumerator
    #[arg(long)]
    brute: bool,
    /// Emit a JSON report instead of text
    #[arg(long)]
    json: bool,
    /// Also print the factorization and the root set
    #[arg(long, short)]
    verbose: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Sqrtmod { a, m } => cmd_sqrtmod(&a, &m),
        Command::Factor { m } => cmd_factor(&m),
        Command::Cf { a, b } => cmd_cf(&a, &b),
        Command::Smith { p } => cmd_smith(&p),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn parse_nat(text: &str, what: &str) -> Result<Nat, String> {
    text.trim()
        .parse()
        .map_err(|_| format!("{what} must be a non-negative integer, got '{text}'"))
}

fn parse_int(text: &str, what: &str) -> Result<Int, String> {
    text.trim()
        .parse()
        .map_err(|_| format!("{what} must be an integer, got '{text}'"))
}

fn factor_effort() -> Result<u64, String> {
    match std::env::var("QUADREP_FACTOR_EFFORT") {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| format!("invalid QUADREP_FACTOR_EFFORT value '{value}'")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_FACTOR_EFFORT),
        Err(err) => Err(err.to_string()),
    }
}

fn solution_line(rep: &Representation) -> String {
    let tag = if rep.proper() { "proper" } else { "improper" };
    format!("{rep} ({tag})")
}

fn attempt_line(attempt: &RootAttempt, spec: &ProblemSpec) -> String {
    let (d, m) = (spec.d(), spec.m());
    let head = if d.is_one() {
        format!("w={} t={} D={}", attempt.w, attempt.x, attempt.y)
    } else {
        format!(
            "w={} t_nu={} t={} D={}",
            attempt.w, attempt.t_stop, attempt.x, attempt.y
        )
    };
    match &attempt.rep {
        Some(rep) => format!("{head} -> {rep}"),
        None => format!(
            "{head} -> rejected ({}^2 + {}*{}^2 != {})",
            attempt.x, d, attempt.y, m
        ),
    }
}

fn json_report(
    spec: &ProblemSpec,
    roots: &[Nat],
    solutions: &[(Nat, Representation)],
) -> serde_json::Value {
    serde_json::json!({
        "m": spec.m().to_string(),
        "d": spec.d().to_string(),
        "solutions": solutions
            .iter()
            .map(|(w, rep)| {
                serde_json::json!({
                    "x": rep.x().to_string(),
                    "y": rep.y().to_string(),
                    "proper": rep.proper(),
                    "w": w.to_string(),
                })
            })
            .collect::<Vec<_>>(),
        "roots": roots.iter().map(Nat::to_string).collect::<Vec<_>>(),
    })
}

fn render_factorization(f: &Factorization) -> String {
    let parts: Vec<String> = f
        .factors()
        .iter()
        .map(|(p, e)| {
            if *e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect();
    format!("{} = {}", f.n(), parts.join(" * "))
}

fn finish_solve(
    args: &SolveArgs,
    spec: &ProblemSpec,
    roots: &[Nat],
    attempts: &[RootAttempt],
    solutions: &[(Nat, Representation)],
) -> u8 {
    if args.json {
        println!("{}", json_report(spec, roots, solutions));
        return u8::from(solutions.is_empty());
    }
    for attempt in attempts {
        println!("{}", attempt_line(attempt, spec));
    }
    for (_, rep) in solutions {
        println!("{}", solution_line(rep));
    }
    if solutions.is_empty() {
        if args.improper {
            println!("no solution");
        } else {
            println!("no proper solution");
        }
        return 1;
    }
    0
}

fn cmd_solve(args: &SolveArgs) -> Result<u8, String> {
    let m = parse_nat(&args.m, "m")?;
    let d = parse_nat(&args.d, "d")?;
    let spec = ProblemSpec::new(d.clone(), m.clone()).map_err(|e| e.to_string())?;

    if args.brute {
        let solutions: Vec<(Nat, Representation)> = oracle::brute_solutions(&d, &m)
            .into_iter()
            .filter(|rep| rep.proper() || args.improper)
            .map(|rep| (Nat::from(0u32), rep))
            .collect();
        return Ok(finish_solve(args, &spec, &[], &[], &solutions));
    }

    let effort = factor_effort()?;
    let f = factorize_with_effort(&m, effort).map_err(|e| e.to_string())?;
    let roots = quadrep::sqrt_minus_d_mod_m(&d, &m, &f).map_err(|e| e.to_string())?;
    let attempts = root_attempts(&spec, &f).map_err(|e| e.to_string())?;

    let mut seen = std::collections::BTreeSet::new();
    let mut solutions: Vec<(Nat, Representation)> = Vec::new();
    for attempt in &attempts {
        if let Some(rep) = &attempt.rep {
            if seen.insert(rep.class_key()) {
                solutions.push((attempt.w.clone(), rep.clone()));
            }
        }
    }
    if args.improper {
        for rep in compose::solve_general_factored(&spec, &f).map_err(|e| e.to_string())? {
            if !rep.proper() && seen.insert(rep.class_key()) {
                solutions.push((Nat::from(0u32), rep));
            }
        }
    }

    if args.verbose && !args.json {
        println!("factorization: {}", render_factorization(&f));
        let listed: Vec<String> = roots.roots().iter().map(Nat::to_string).collect();
        println!("roots of -{d} mod {m}: {}", listed.join(" "));
    }
    Ok(finish_solve(
        args,
        &spec,
        roots.roots(),
        &attempts,
        &solutions,
    ))
}

fn cmd_sqrtmod(a: &str, m: &str) -> Result<u8, String> {
    let a = parse_int(a, "a")?;
    let m = parse_nat(m, "m")?;
    let effort = factor_effort()?;
    let f = factorize_with_effort(&m, effort).map_err(|e| e.to_string())?;
    let roots = sqrt_mod(&a, &f).map_err(|e| e.to_string())?;
    if roots.is_empty() {
        eprintln!("no square root of {a} mod {m}");
        return Ok(1);
    }
    for w in roots.roots() {
        println!("{w}");
    }
    Ok(0)
}

fn cmd_factor(m: &str) -> Result<u8, String> {
    let m = parse_nat(m, "m")?;
    let effort = factor_effort()?;
    let f = factorize_with_effort(&m, effort).map_err(|e| e.to_string())?;
    println!("{}", render_factorization(&f));
    Ok(0)
}

fn cmd_cf(a: &str, b: &str) -> Result<u8, String> {
    let a = parse_nat(a, "a")?;
    let b = parse_nat(b, "b")?;
    let exp = Antenaresis::expand(&a, &b).map_err(|e| e.to_string())?;
    let join = |items: Vec<String>| items.join(" ");
    println!(
        "quotients: {}",
        join(exp.quotients().iter().map(Nat::to_string).collect())
    );
    println!(
        "remainders: {}",
        join(exp.remainders().iter().map(Nat::to_string).collect())
    );
    let convergents: Vec<String> = (0..=exp.k() as isize)
        .map(|j| format!("{}/{}", exp.conv_num(j), exp.conv_den(j)))
        .collect();
    println!("convergents: {}", join(convergents));
    println!("gcd: {}", exp.gcd());
    Ok(0)
}

fn cmd_smith(p: &str) -> Result<u8, String> {
    let p = parse_nat(p, "p")?;
    let (h, x, y) = compose::smith_two_squares(&p).map_err(|e| e.to_string())?;
    println!("h = {h}");
    println!("{p} = {x}^2 + {y}^2");
    Ok(0)
}
