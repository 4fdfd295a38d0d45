use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use wound_core::corpus::{selftest, CorpusOptions};
use wound_core::groups::{classify, IdentityCheck, Space};
use wound_core::homs::{
    derive_hom_constraints, relative_frobenius_map, solve_homs_bounded, verify_mutual_inverse, AnsatzCaps, Domain,
    SolveOptions,
};
use wound_core::poly::OracleOptions;
use wound_core::ppoly::{reduce_mod, DecideOptions, Verdict};
use wound_core::report::{check_line, classification, holds_string, Report};
use wound_core::session::{parse_poly, Session};
use wound_core::{Error, Execution, RelationSet};

#[derive(Parser, Debug)]
#[command(
    name = "wound",
    version,
    about = "Certificates for wound unipotent groups over F_q(a)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Coefficient degree bound of the witness search
    #[arg(long, global = true, default_value_t = 3)]
    search_bound: u32,
    /// Random point oracle trials per identity
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Seed of the random point oracle
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest assignment space `solve` will enumerate
    #[arg(long, global = true, default_value_t = 10_000_000)]
    max_enum: u128,
    /// Append the elapsed time (output then differs between runs)
    #[arg(long, global = true)]
    timing: bool,
    /// Run on the calling thread only
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smoothness, connectedness and woundness of a group
    Classify { file: PathBuf, group: String },
    /// Reduce a polynomial in the group's variables modulo its equation
    Reduce {
        file: PathBuf,
        group: String,
        poly: String,
        /// Variable to divide by (defaults to the group's pivot)
        #[arg(long)]
        pivot: Option<String>,
    },
    /// Check that a map is a homomorphism
    VerifyHom { file: PathBuf, map: String },
    /// Coefficient constraints for homomorphisms SOURCE -> TARGET
    Derive {
        file: PathBuf,
        source: String,
        target: String,
        /// Exponent cap COORD:VAR=N or COORD:VAR=none, repeatable
        #[arg(long = "cap")]
        caps: Vec<String>,
    },
    /// Enumerate homomorphisms with coefficients of bounded degree
    Solve {
        file: PathBuf,
        source: String,
        target: String,
        /// Coefficients range over F_q-polynomials in the generator of this degree
        #[arg(long, default_value_t = 0)]
        degree: u32,
        /// Exponent cap COORD:VAR=N or COORD:VAR=none, repeatable
        #[arg(long = "cap")]
        caps: Vec<String>,
    },
    /// Group axioms of a cocycle extension
    CheckExtension { file: PathBuf, extension: String },
    /// Frobenius twist of a group and the relative Frobenius
    Twist { file: PathBuf, group: String, n: u32 },
    /// Check that two maps are mutually inverse isomorphisms
    VerifyIso { file: PathBuf, f: String, g: String },
    /// Replay the worked examples for p = 2, 3 or 5
    SelftestPaper { p: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Verified,
    Refuted,
    Unknown,
}

impl Outcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Verified
        } else {
            Outcome::Refuted
        }
    }

    fn code(self) -> u8 {
        match self {
            Outcome::Verified => 0,
            Outcome::Refuted => 1,
            Outcome::Unknown => 2,
        }
    }
}

struct Ctx {
    decide: DecideOptions,
    oracle: OracleOptions,
    solve: SolveOptions,
    exec: Execution,
}

impl Ctx {
    fn new(cli: &Cli) -> Self {
        let exec = if cli.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        };
        Ctx {
            decide: DecideOptions {
                search_bound: cli.search_bound,
                exec,
                ..DecideOptions::default()
            },
            oracle: OracleOptions {
                trials: cli.trials,
                seed: cli.seed,
                exec,
                ..OracleOptions::default()
            },
            solve: SolveOptions {
                max_enum: cli.max_enum,
                exec,
            },
            exec,
        }
    }
}

fn load(path: &Path) -> Result<Session> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Session::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn echo(report: &mut Report, session: &Session) {
    for line in session.serialize().lines() {
        report.push("input", line);
    }
}

/// Symbolic verdicts followed by the oracle's; false if any claim fails or the oracle disagrees.
fn push_checks(report: &mut Report, checks: &[IdentityCheck], ctx: &Ctx) -> Result<bool> {
    let mut ok = true;
    for c in checks {
        check_line(report, c);
        let sampled = c.oracle(&ctx.oracle)?;
        let verdict = match (c.holds, sampled) {
            (_, true) => format!("vanishes at {} random points", ctx.oracle.trials),
            (false, false) => "nonzero at a random point".to_string(),
            (true, false) => "DISAGREES".to_string(),
        };
        report.push(format!("{} (oracle)", c.label), verdict);
        ok &= c.holds && sampled;
    }
    Ok(ok)
}

fn parse_caps(source: &Space, target: &Space, specs: &[String]) -> Result<AnsatzCaps> {
    let mut caps = AnsatzCaps::default_for(source, target);
    let (src, tgt) = (source.var_names(), target.var_names());
    for spec in specs {
        let (pos, value) = spec
            .split_once('=')
            .ok_or_else(|| anyhow!("cap {spec:?} is not COORD:VAR=N"))?;
        let (coord, var) = pos
            .split_once(':')
            .ok_or_else(|| anyhow!("cap {spec:?} is not COORD:VAR=N"))?;
        let coord = tgt
            .iter()
            .position(|v| v == coord)
            .ok_or_else(|| anyhow!("{coord} is not a coordinate of {}", target.name()))?;
        let var = src
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| anyhow!("{var} is not a variable of {}", source.name()))?;
        let cap = match value {
            "none" => None,
            n => Some(n.parse().with_context(|| format!("cap {spec:?}"))?),
        };
        caps.set(coord, var, cap);
    }
    Ok(caps)
}

fn run(cli: &Cli, ctx: &Ctx, report: &mut Report) -> Result<Outcome> {
    match &cli.command {
        Command::Classify { file, group } => {
            let s = load(file)?;
            report.push("command", format!("classify {group}"));
            echo(report, &s);
            let g = s.group(group)?;
            let r = classify(g, &ctx.decide)?;
            report.extend(classification(g, &r));
            Ok(match r.wound_verdict() {
                Verdict::NoZero => Outcome::Verified,
                Verdict::Zero => Outcome::Refuted,
                Verdict::Unknown => Outcome::Unknown,
            })
        }
        Command::Reduce {
            file,
            group,
            poly,
            pivot,
        } => {
            let s = load(file)?;
            report.push("command", format!("reduce {group}"));
            echo(report, &s);
            let g = s.group(group)?;
            let vars = g.vars();
            let pivot = match pivot {
                Some(v) => vars
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| anyhow!("{v} is not a variable of {group}"))?,
                None => g.pivot(),
            };
            let h = parse_poly(g.field(), vars, poly).map_err(Error::Input)?;
            report.push("pivot", &vars[pivot]);
            match h.to_ppoly() {
                Some(hp) => {
                    report.push("dividend", hp.display_with(vars));
                    let trace = reduce_mod(&hp, g.poly(), pivot)?;
                    report.push("divisor", trace.divisor.display_with(vars));
                    for step in &trace.steps {
                        report.push("step", format!("subtract ({})*F^(p^{})", step.coeff, step.frobenius));
                    }
                    report.push("remainder", trace.remainder.display_with(vars));
                    report.push("replay", holds_string(trace.replay() == hp));
                }
                None => {
                    report.push("dividend", h.display_with(vars));
                    let rels = RelationSet::new(g.field(), g.nvars()).with(g.poly().clone(), pivot)?;
                    report.push("remainder", rels.normal_form(&h)?.display_with(vars));
                }
            }
            Ok(Outcome::Verified)
        }
        Command::VerifyHom { file, map } => {
            let s = load(file)?;
            report.push("command", format!("verify-hom {map}"));
            echo(report, &s);
            let m = s.map(map)?;
            report.push("canonical", m.canonical_form()?.statement());
            let ok = push_checks(report, &[m.verify_hom()?], ctx)?;
            report.push("homomorphism", ok);
            Ok(Outcome::from_bool(ok))
        }
        Command::Derive {
            file,
            source,
            target,
            caps,
        } => {
            let s = load(file)?;
            report.push("command", format!("derive {source} {target}"));
            echo(report, &s);
            let (src, tgt) = (s.space(source)?, s.space(target)?);
            let caps = parse_caps(&src, &tgt, caps)?;
            let cs = derive_hom_constraints(s.field(), &src, &tgt, &caps)?;
            report.push("ansatz", cs.generic_map()?.statement());
            report.push("unknowns", cs.unknown_names().join(", "));
            report.push("constraints", cs.constraints.len());
            let names = cs.unknown_names();
            let vars = src.var_names();
            for (&(v, e), c) in cs.positions.iter().zip(cs.normalized().iter()) {
                report.push(format!("coefficient of {}^(p^{e})", vars[v]), c.display_with(&names));
            }
            Ok(Outcome::Verified)
        }
        Command::Solve {
            file,
            source,
            target,
            degree,
            caps,
        } => {
            let s = load(file)?;
            report.push("command", format!("solve {source} {target} degree={degree}"));
            echo(report, &s);
            let (src, tgt) = (s.space(source)?, s.space(target)?);
            let caps = parse_caps(&src, &tgt, caps)?;
            let cs = derive_hom_constraints(s.field(), &src, &tgt, &caps)?;
            let domain = Domain::polynomials(s.field(), *degree)?;
            report.push("unknowns", cs.unknown_names().join(", "));
            report.push("domain", &domain.description);
            let res = solve_homs_bounded(&cs, &domain, &ctx.solve)?;
            report.push("space", res.space);
            report.push("solutions", res.maps.len());
            let mut ok = true;
            for (i, m) in res.maps.iter().enumerate() {
                let m = m.clone().with_name(&format!("hom{i}"));
                ok &= m.verify_hom()?.holds;
                report.push("solution", m.statement());
            }
            report.push("solutions verified", ok);
            report.push("completeness", "complete within bound");
            Ok(Outcome::from_bool(ok))
        }
        Command::CheckExtension { file, extension } => {
            let s = load(file)?;
            report.push("command", format!("check-extension {extension}"));
            echo(report, &s);
            let ext = s.extension(extension)?;
            let mut checks = ext.check_biadditive()?;
            checks.push(ext.check_lands_in()?);
            checks.extend(ext.check_group_axioms()?.checks);
            let ok = push_checks(report, &checks, ctx)?;
            report.push("alternating", ext.is_alternating()?.holds);
            report.push("commutative", ext.is_commutative()?.holds);
            report.push("group", ok);
            Ok(Outcome::from_bool(ok))
        }
        Command::Twist { file, group, n } => {
            let s = load(file)?;
            report.push("command", format!("twist {group} {n}"));
            echo(report, &s);
            let g = s.group(group)?;
            let t = g.twist(*n);
            report.push("twisted", t.statement());
            let r = classify(&t, &ctx.decide)?;
            report.extend(classification(&t, &r));
            let frob = relative_frobenius_map(g, *n);
            report.push("map", frob.statement());
            let ok = push_checks(report, &[frob.verify_hom()?], ctx)?;
            if !ok {
                return Ok(Outcome::Refuted);
            }
            Ok(match r.wound_verdict() {
                Verdict::NoZero => Outcome::Verified,
                Verdict::Zero => Outcome::Refuted,
                Verdict::Unknown => Outcome::Unknown,
            })
        }
        Command::VerifyIso { file, f, g } => {
            let s = load(file)?;
            report.push("command", format!("verify-iso {f} {g}"));
            echo(report, &s);
            let inv = verify_mutual_inverse(s.map(f)?, s.map(g)?)?;
            let ok = push_checks(report, &inv.checks, ctx)?;
            report.push("isomorphism", ok);
            Ok(Outcome::from_bool(ok))
        }
        Command::SelftestPaper { p } => {
            let opts = CorpusOptions {
                decide: ctx.decide,
                exec: ctx.exec,
            };
            let r = selftest(*p, &opts)?;
            report.extend(r.to_report());
            let checks: Vec<&IdentityCheck> = r.checks().collect();
            let mut agree = true;
            for c in &checks {
                agree &= c.oracle_agrees(&ctx.oracle)?;
            }
            report.push(
                "oracle",
                format!(
                    "{} on {} identities",
                    if agree { "agrees" } else { "DISAGREES" },
                    checks.len()
                ),
            );
            Ok(Outcome::from_bool(r.passed() && agree))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let ctx = Ctx::new(&cli);
    let start = Instant::now();
    let mut report = Report::new();
    let result = run(&cli, &ctx, &mut report);
    if cli.timing {
        report.push("time-ms", start.elapsed().as_millis());
    }
    match result {
        Ok(outcome) => {
            print!("{report}");
            ExitCode::from(outcome.code())
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let incomplete = matches!(e.downcast_ref::<Error>(), Some(Error::EnumerationTooLarge { .. }));
            ExitCode::from(if incomplete { 2 } else { 3 })
        }
    }
}
