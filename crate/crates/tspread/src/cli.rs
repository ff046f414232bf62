//! Command-line front end: instance parsing, JSON/text reports, guard
//! overrides, and the `reproduce` suite that re-runs every headline check
//! on its original instance.
//!
//! Exit codes: 0 success, 1 a mathematical claim failed to verify,
//! 2 usage error, 3 guard refusal.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::borel::{self, BorelInstance, SampleOptions};
use crate::dual::{self, DualGenerator, QuotientOutcome};
use crate::error::{Error, Result};
use crate::monomial::{IndexSet, Monomial};
use crate::oracle;
use crate::powers::{self, Guards};
use crate::rees::{self, Family, GbVerdict, PresMonomial, Presentation, ToricBinomial};
use crate::sorting;

#[derive(Parser)]
#[command(
    name = "tspread",
    version,
    about = "t-spread principal Borel ideal toolkit"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    /// Ambient variable count.
    #[arg(long)]
    n: usize,
    /// Spread parameter (>= 1).
    #[arg(long)]
    t: usize,
    /// Borel generator as 1-based indices, e.g. 2,4,9.
    #[arg(long, value_delimiter = ',')]
    u: Vec<usize>,
}

impl InstanceArgs {
    fn instance(&self) -> Result<BorelInstance> {
        BorelInstance::new(self.n, self.t, self.u.clone())
    }
}

#[derive(Args, Clone, Default)]
struct GuardArgs {
    /// Cap on |G(I^k)| enumerations (env: TSPREAD_MAX_POWER_GENS).
    #[arg(long)]
    max_power_gens: Option<usize>,
    /// Cap on intermediate decomposition components (env: TSPREAD_MAX_COMPONENTS).
    #[arg(long)]
    max_components: Option<usize>,
    /// Cap on decomposition variables (env: TSPREAD_MAX_DECOMP_VARS).
    #[arg(long)]
    max_decomp_vars: Option<usize>,
}

impl GuardArgs {
    fn guards(&self) -> Guards {
        let env = |key: &str| std::env::var(key).ok().and_then(|v| v.parse().ok());
        let mut g = Guards::default();
        if let Some(v) = env("TSPREAD_MAX_POWER_GENS") {
            g.max_power_generators = v;
        }
        if let Some(v) = env("TSPREAD_MAX_COMPONENTS") {
            g.max_decomposition_components = v;
        }
        if let Some(v) = env("TSPREAD_MAX_DECOMP_VARS") {
            g.max_decomposition_vars = v;
        }
        if let Some(v) = self.max_power_gens {
            g.max_power_generators = v;
        }
        if let Some(v) = self.max_components {
            g.max_decomposition_components = v;
        }
        if let Some(v) = self.max_decomp_vars {
            g.max_decomposition_vars = v;
        }
        g
    }
}

#[derive(Subcommand)]
enum Command {
    /// Minimal generators of B_t(u), in decreasing pure lex order.
    Gens(InstanceArgs),
    /// Alexander-dual generators in the quotient-certifying order.
    Dual(InstanceArgs),
    /// Facets of the associated simplicial complex, classified by shape.
    Facets(InstanceArgs),
    /// Certify linear quotients of the dual (hence sequential CM-ness).
    ScmCheck(InstanceArgs),
    /// Sort a tuple of equal-degree monomials.
    Sort {
        /// Comma-separated monomials, e.g. "x2*x4*x6,x1*x3*x9".
        #[arg(long)]
        monomials: String,
        /// Ambient; inferred from the largest index when omitted.
        #[arg(long)]
        n: Option<usize>,
    },
    /// The marked Groebner basis of the Rees presentation ideal.
    ReesGb {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Also run kernel, reducedness, x-condition and S-pair checks.
        #[arg(long)]
        verify: bool,
    },
    /// Exchange property over all standard monomials of the given t-degree.
    EllExchange {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long = "N")]
        degree: usize,
        #[command(flatten)]
        guards: GuardArgs,
    },
    /// Show that no quadratic lex-initial divides the given cubic t-monomial.
    LexWitness {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Three comma-separated generators; defaults to the classic triple
        /// on the instance n=10, t=2, u=6,8,10.
        #[arg(long)]
        cubic: Option<String>,
    },
    /// Krull dimension of the fiber ring (rank of the exponent matrix).
    FiberDim(InstanceArgs),
    /// Depth and projective dimension of S/I^k via linear quotients.
    PowerDepth {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        guards: GuardArgs,
    },
    /// The witness generator of I^k whose colon needs n-1 variables.
    LimdepthWitness {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        guards: GuardArgs,
    },
    /// Associated primes of S/I^k via irreducible decomposition.
    Ass {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        guards: GuardArgs,
    },
    /// Check Ass(I^k) is contained in Ass(I^{k+1}) for k < kmax.
    Persistence {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        kmax: usize,
        #[command(flatten)]
        guards: GuardArgs,
    },
    /// Brute-force engines, exposed for debugging.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCommand,
    },
    /// Re-run every headline check on its original instance.
    Reproduce {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corrupt the dual generator list first; the run must then fail.
        #[arg(long)]
        inject_fault: bool,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Irredundant irreducible decomposition of a monomial ideal.
    Decompose {
        #[arg(long)]
        n: usize,
        /// Comma-separated generators, e.g. "x1^2*x2,x3".
        #[arg(long)]
        gens: String,
        #[command(flatten)]
        guards: GuardArgs,
    },
}

/// Whether the command's mathematical claim held.
enum Outcome {
    Pass,
    ClaimFailed,
}

pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::ClaimFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::GuardExceeded { .. } => ExitCode::from(3),
                Error::VerificationFailed(_) | Error::Inconclusive => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn emit<T: Serialize>(json: bool, report: &T, text: impl FnOnce()) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("serializable")
        );
    } else {
        text();
    }
}

/// Parses a monomial list given either as comma-separated text forms
/// (`"x2*x4*x6,x1*x3*x9"`) or as a JSON array whose entries are text forms
/// or exponent lists (`'["x2*x4*x9", [0,1,0,1,0,0,0,0,1]]'`). A flat JSON
/// number array is a single monomial. The ambient is `n` when given,
/// otherwise inferred from exponent-list lengths and the largest index.
fn parse_monomial_list(text: &str, n: Option<usize>) -> Result<Vec<Monomial>> {
    let s = text.trim();
    enum Piece {
        Text(String),
        Exponents(Vec<u32>),
    }
    let pieces: Vec<Piece> = if s.starts_with('[') {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("JSON input: {e}")))?;
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("expected a JSON array".into()))?;
        if arr.iter().all(|e| e.is_u64()) {
            vec![Piece::Exponents(
                arr.iter().map(|e| e.as_u64().unwrap() as u32).collect(),
            )]
        } else {
            arr.iter()
                .map(|e| match e {
                    serde_json::Value::String(t) => Ok(Piece::Text(t.clone())),
                    serde_json::Value::Array(inner) => inner
                        .iter()
                        .map(|x| {
                            x.as_u64()
                                .map(|v| v as u32)
                                .ok_or_else(|| Error::Parse("exponent must be an integer".into()))
                        })
                        .collect::<Result<Vec<u32>>>()
                        .map(Piece::Exponents),
                    other => Err(Error::Parse(format!("unsupported entry {other}"))),
                })
                .collect::<Result<_>>()?
        }
    } else {
        s.split(',')
            .map(|p| Piece::Text(p.trim().to_string()))
            .collect()
    };
    if pieces.is_empty() {
        return Err(Error::Parse("no monomials given".into()));
    }
    let ambient = match n {
        Some(n) => n,
        None => {
            let mut inferred = 0usize;
            for p in &pieces {
                inferred = inferred.max(match p {
                    Piece::Text(t) => Monomial::max_index_in_text(t)?,
                    Piece::Exponents(e) => e.len(),
                });
            }
            inferred
        }
    };
    pieces
        .into_iter()
        .map(|p| match p {
            Piece::Text(t) => Monomial::parse(&t, ambient),
            Piece::Exponents(e) => {
                if e.len() != ambient {
                    Err(Error::Parse(format!(
                        "exponent list has {} entries, ambient is {ambient}",
                        e.len()
                    )))
                } else {
                    Ok(Monomial::from_exponents(e))
                }
            }
        })
        .collect()
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Gens(args) => cmd_gens(cli.json, args),
        Command::Dual(args) => cmd_dual(cli.json, args),
        Command::Facets(args) => cmd_facets(cli.json, args),
        Command::ScmCheck(args) => cmd_scm_check(cli.json, args),
        Command::Sort { monomials, n } => cmd_sort(cli.json, monomials, *n),
        Command::ReesGb { inst, verify } => cmd_rees_gb(cli.json, inst, *verify),
        Command::EllExchange {
            inst,
            degree,
            guards,
        } => cmd_ell_exchange(cli.json, inst, *degree, &guards.guards()),
        Command::LexWitness { inst, cubic } => cmd_lex_witness(cli.json, inst, cubic.as_deref()),
        Command::FiberDim(args) => cmd_fiber_dim(cli.json, args),
        Command::PowerDepth { inst, k, guards } => {
            cmd_power_depth(cli.json, inst, *k, &guards.guards())
        }
        Command::LimdepthWitness { inst, k, guards } => {
            cmd_limdepth(cli.json, inst, *k, &guards.guards())
        }
        Command::Ass { inst, k, guards } => cmd_ass(cli.json, inst, *k, &guards.guards()),
        Command::Persistence { inst, kmax, guards } => {
            cmd_persistence(cli.json, inst, *kmax, &guards.guards())
        }
        Command::Oracle { cmd } => match cmd {
            OracleCommand::Decompose { n, gens, guards } => {
                cmd_decompose(cli.json, *n, gens, &guards.guards())
            }
        },
        Command::Reproduce { seed, inject_fault } => reproduce(cli.json, *seed, *inject_fault),
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct GensReport {
    pub n: usize,
    pub t: usize,
    pub u: Vec<usize>,
    pub count: usize,
    pub generators: Vec<String>,
}

fn cmd_gens(json: bool, args: &InstanceArgs) -> Result<Outcome> {
    let inst = args.instance()?;
    let gens = inst.generators();
    let report = GensReport {
        n: args.n,
        t: args.t,
        u: args.u.clone(),
        count: gens.len(),
        generators: gens.iter().map(|g| g.to_string()).collect(),
    };
    emit(json, &report, || {
        for g in &report.generators {
            println!("{g}");
        }
    });
    Ok(Outcome::Pass)
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct DualEntry {
    pub monomial: String,
    pub form: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct DualReport {
    pub ambient: usize,
    pub reduced_from: Option<usize>,
    pub generators: Vec<DualEntry>,
}

fn dual_entries(ordered: &[DualGenerator]) -> Vec<DualEntry> {
    ordered
        .iter()
        .map(|g| DualEntry {
            monomial: g.monomial.to_string(),
            form: g.form.tag().to_string(),
        })
        .collect()
}

fn cmd_dual(json: bool, args: &InstanceArgs) -> Result<Outcome> {
    let inst = args.instance()?;
    let data = dual::facets(&inst)?;
    let ordered = dual::scm_order(&dual::dual_generators(&inst)?);
    let report = DualReport {
        ambient: data.ambient,
        reduced_from: data.reduced_from,
        generators: dual_entries(&ordered),
    };
    emit(json, &report, || {
        if let Some(from) = report.reduced_from {
            println!("# restricted from {from} to {} variables", report.ambient);
        }
        for e in &report.generators {
            println!("{}", e.monomial);
        }
    });
    Ok(Outcome::Pass)
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct FacetsReport {
    pub ambient: usize,
    pub reduced_from: Option<usize>,
    pub facets: Vec<dual::Facet>,
}

fn cmd_facets(json: bool, args: &InstanceArgs) -> Result<Outcome> {
    let inst = args.instance()?;
    let data = dual::facets(&inst)?;
    let report = FacetsReport {
        ambient: data.ambient,
        reduced_from: data.reduced_from,
        facets: data.facets,
    };
    emit(json, &report, || {
        if let Some(from) = report.reduced_from {
            println!("# restricted from {from} to {} variables", report.ambient);
        }
        for f in &report.facets {
            println!("{}  {}", f.members, f.kind.form().tag());
        }
    });
    Ok(Outcome::Pass)
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct ScmStep {
    pub index: usize,
    pub monomial: String,
    pub r: usize,
    pub vars: Vec<usize>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct ScmReport {
    pub order: Vec<DualEntry>,
    pub linear: bool,
    pub steps: Vec<ScmStep>,
    pub failure: Option<(usize, usize)>,
}

fn scm_report(ordered: &[DualGenerator]) -> ScmReport {
    let monomials: Vec<Monomial> = ordered.iter().map(|g| g.monomial.clone()).collect();
    match dual::linear_quotients_check(&monomials) {
        QuotientOutcome::Linear(profiles) => ScmReport {
            order: dual_entries(ordered),
            linear: true,
            steps: profiles
                .iter()
                .map(|p| ScmStep {
                    index: p.index,
                    monomial: p.generator.to_string(),
                    r: p.r(),
                    vars: p.vars.indices().to_vec(),
                })
                .collect(),
            failure: None,
        },
        QuotientOutcome::Fails { index, against } => ScmReport {
            order: dual_entries(ordered),
            linear: false,
            steps: Vec::new(),
            failure: Some((index, against)),
        },
    }
}

fn print_scm(report: &ScmReport) {
    for e in &report.order {
        println!("{}  [{}]", e.monomial, e.form);
    }
    if report.linear {
        for s in &report.steps {
            println!(
                "step {}: r = {}  V = {:?}  {}",
                s.index, s.r, s.vars, s.monomial
            );
        }
        println!("linear quotients: PASS");
    } else {
        let (index, against) = report.failure.expect("failure recorded");
        println!("linear quotients: FAIL at step {index} against {against}");
    }
}

fn cmd_scm_check(json: bool, args: &InstanceArgs) -> Result<Outcome> {
    let inst = args.instance()?;
    let ordered = dual::scm_order(&dual::dual_generators(&inst)?);
    let report = scm_report(&ordered);
    emit(json, &report, || print_scm(&report));
    Ok(if report.linear {
        Outcome::Pass
    } else {
        Outcome::ClaimFailed
    })
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct SortReport {
    pub input: Vec<String>,
    pub sorted: Vec<String>,
}

fn cmd_sort(json: bool, monomials: &str, n: Option<usize>) -> Result<Outcome> {
    let tuple = parse_monomial_list(monomials, n)?;
    let sorted = sorting::sort_tuple(&tuple)?;
    let report = SortReport {
        input: tuple.iter().map(|m| m.to_string()).collect(),
        sorted: sorted.monomials().iter().map(|m| m.to_string()).collect(),
    };
    emit(json, &report, || {
        println!("{}", report.sorted.join(","));
    });
    Ok(Outcome::Pass)
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct PresEntry {
    pub x: String,
    pub t: Vec<String>,
}

fn pres_entry(m: &PresMonomial, pres: &Presentation) -> PresEntry {
    PresEntry {
        x: m.xpart.to_string(),
        t: m.tpart
            .iter()
            .map(|&v| pres.generator(v).to_string())
            .collect(),
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct BinomialEntry {
    pub lhs: PresEntry,
    pub rhs: PresEntry,
    pub marked: String,
    pub family: Family,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct GbVerifyEntry {
    pub kernel: bool,
    pub x_condition: bool,
    pub reduced: bool,
    pub buchberger: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct ReesGbReport {
    pub n: usize,
    pub t: usize,
    pub u: Vec<usize>,
    pub count: usize,
    pub binomials: Vec<BinomialEntry>,
    pub verify: Option<GbVerifyEntry>,
}

fn binomial_entries(gb: &[ToricBinomial], pres: &Presentation) -> Vec<BinomialEntry> {
    gb.iter()
        .map(|b| BinomialEntry {
            lhs: pres_entry(&b.lhs, pres),
            rhs: pres_entry(&b.rhs, pres),
            marked: "lhs".into(),
            family: b.family,
        })
        .collect()
}

fn cmd_rees_gb(json: bool, args: &InstanceArgs, verify: bool) -> Result<Outcome> {
    let pres = Presentation::new(args.instance()?);
    let gb = rees::reduced_gb(&pres);
    let verify_entry = verify.then(|| {
        let verdict = rees::buchberger_verify(&gb);
        GbVerifyEntry {
            kernel: gb.iter().all(|b| rees::verify_kernel(b, &pres)),
            x_condition: rees::x_condition_check(&gb),
            reduced: rees::check_reduced(&gb),
            buchberger: match verdict {
                GbVerdict::Verified => "verified".into(),
                GbVerdict::Failed { f, g } => format!("failed at pair ({f}, {g})"),
                GbVerdict::Inconclusive { f, g } => format!("inconclusive at pair ({f}, {g})"),
            },
        }
    });
    let ok = verify_entry
        .as_ref()
        .map(|v| v.kernel && v.x_condition && v.reduced && v.buchberger == "verified");
    let report = ReesGbReport {
        n: args.n,
        t: args.t,
        u: args.u.clone(),
        count: gb.len(),
        binomials: binomial_entries(&gb, &pres),
        verify: verify_entry,
    };
    emit(json, &report, || {
        for (b, e) in gb.iter().zip(&report.binomials) {
            println!(
                "{} - {}  [{}]",
                b.lhs.display_with(&pres),
                b.rhs.display_with(&pres),
                match e.family {
                    Family::Sorting => "sorting",
                    Family::X => "x",
                }
            );
        }
        if let Some(v) = &report.verify {
            println!(
                "kernel: {}  x-condition: {}  reduced: {}  buchberger: {}",
                v.kernel, v.x_condition, v.reduced, v.buchberger
            );
        }
    });
    Ok(match ok {
        Some(false) => Outcome::ClaimFailed,
        _ => Outcome::Pass,
    })
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct EllExchangeReport {
    pub degree: usize,
    pub holds: bool,
    pub pairs_checked: usize,
    pub counterexample: Option<EllCounterexample>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct EllCounterexample {
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub q: usize,
}

fn cmd_ell_exchange(
    json: bool,
    args: &InstanceArgs,
    degree: usize,
    guards: &Guards,
) -> Result<Outcome> {
    if degree > guards.max_standard_degree {
        return Err(Error::GuardExceeded {
            what: "standard monomial degree",
            limit: guards.max_standard_degree,
        });
    }
    let pres = Presentation::new(args.instance()?);
    let outcome = rees::ell_exchange_check(&pres, degree, guards.max_power_generators)?;
    let report = match &outcome {
        rees::EllExchangeOutcome::Holds { pairs_checked } => EllExchangeReport {
            degree,
            holds: true,
            pairs_checked: *pairs_checked,
            counterexample: None,
        },
        rees::EllExchangeOutcome::Counterexample { first, second, q } => EllExchangeReport {
            degree,
            holds: false,
            pairs_checked: 0,
            counterexample: Some(EllCounterexample {
                first: first
                    .iter()
                    .map(|&c| pres.generator(c).to_string())
                    .collect(),
                second: second
                    .iter()
                    .map(|&c| pres.generator(c).to_string())
                    .collect(),
                q: *q,
            }),
        },
    };
    emit(json, &report, || {
        if report.holds {
            println!(
                "exchange property holds at degree {degree} ({} ordered pairs)",
                report.pairs_checked
            );
        } else {
            let c = report.counterexample.as_ref().expect("present");
            println!(
                "counterexample at q = {}: [{}] vs [{}]",
                c.q,
                c.first.join(", "),
                c.second.join(", ")
            );
        }
    });
    Ok(if report.holds {
        Outcome::Pass
    } else {
        Outcome::ClaimFailed
    })
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct LexWitnessCliReport {
    pub cubic: Vec<String>,
    pub quadratic_initials: usize,
    pub divisor: Option<Vec<String>>,
    pub sorting_reducible: bool,
    pub lex_irreducible: bool,
}

const CLASSIC_CUBIC: &str = "x1*x3*x8,x1*x7*x9,x2*x4*x6";

fn cmd_lex_witness(json: bool, args: &InstanceArgs, cubic: Option<&str>) -> Result<Outcome> {
    let inst = args.instance()?;
    let is_classic_instance = args.n == 10 && args.t == 2 && args.u == [6, 8, 10];
    let cubic_text = match cubic {
        Some(c) => c.to_string(),
        None if is_classic_instance => CLASSIC_CUBIC.to_string(),
        None => {
            return Err(Error::Precondition(
                "--cubic is required for this instance".into(),
            ))
        }
    };
    let pieces = parse_monomial_list(&cubic_text, Some(args.n))?;
    let triple: [Monomial; 3] = pieces
        .try_into()
        .map_err(|_| Error::Parse("cubic needs exactly three monomials".into()))?;
    let pres = Presentation::new(inst);
    let report = rees::lex_quadratic_witness(&pres, &triple)?;
    let cli_report = LexWitnessCliReport {
        cubic: triple.iter().map(|m| m.to_string()).collect(),
        quadratic_initials: report.quadratic_initials,
        divisor: report
            .divisor
            .map(|(p, q)| vec![pres.generator(p).to_string(), pres.generator(q).to_string()]),
        sorting_reducible: report.sorting_reducible,
        lex_irreducible: report.divisor.is_none(),
    };
    emit(json, &cli_report, || {
        println!(
            "quadratic lex-initials: {}; divisor of the cubic: {}; unsorted pair present: {}",
            cli_report.quadratic_initials,
            cli_report
                .divisor
                .as_ref()
                .map(|d| d.join(" * "))
                .unwrap_or_else(|| "none".into()),
            cli_report.sorting_reducible
        );
    });
    Ok(if cli_report.lex_irreducible {
        Outcome::Pass
    } else {
        Outcome::ClaimFailed
    })
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct FiberDimReport {
    pub dimension: usize,
}

fn cmd_fiber_dim(json: bool, args: &InstanceArgs) -> Result<Outcome> {
    let report = FiberDimReport {
        dimension: rees::fiber_dimension(&args.instance()?),
    };
    emit(json, &report, || println!("{}", report.dimension));
    Ok(Outcome::Pass)
}

fn cmd_power_depth(json: bool, args: &InstanceArgs, k: usize, guards: &Guards) -> Result<Outcome> {
    let report = powers::depth_report(&args.instance()?, k, guards)?;
    emit(json, &report, || {
        println!(
            "k={} projdim={} depth={} witness={}",
            report.k,
            report.projdim,
            report.depth,
            report.witness.as_deref().unwrap_or("-")
        );
    });
    Ok(Outcome::Pass)
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct LimdepthReport {
    pub k: usize,
    #[serde(flatten)]
    pub witness: powers::LimDepthWitness,
}

fn cmd_limdepth(json: bool, args: &InstanceArgs, k: usize, guards: &Guards) -> Result<Outcome> {
    let witness = powers::limdepth_witness(&args.instance()?, k, guards)?;
    let report = LimdepthReport { k, witness };
    emit(json, &report, || {
        println!("witness: {}", report.witness.witness);
        for s in &report.witness.steps {
            println!(
                "x{}: slot {} replaces {} by {} giving {}",
                s.var, s.slot, s.replaced, s.replacement, s.larger
            );
        }
    });
    Ok(Outcome::Pass)
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct AssReport {
    pub k: usize,
    pub primes: Vec<IndexSet>,
}

fn cmd_ass(json: bool, args: &InstanceArgs, k: usize, guards: &Guards) -> Result<Outcome> {
    let inst = args.instance()?;
    let gens = powers::power_generators(&inst, k, guards)?;
    let report = AssReport {
        k,
        primes: powers::associated_primes(&gens, inst.ambient(), guards)?,
    };
    emit(json, &report, || {
        for p in &report.primes {
            println!("{p}");
        }
    });
    Ok(Outcome::Pass)
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct PersistenceReport {
    pub kmax: usize,
    pub holds: bool,
    pub violated_at: Option<usize>,
}

fn cmd_persistence(
    json: bool,
    args: &InstanceArgs,
    kmax: usize,
    guards: &Guards,
) -> Result<Outcome> {
    let outcome = powers::persistence_check(&args.instance()?, kmax, guards)?;
    let report = match outcome {
        powers::PersistenceOutcome::Holds => PersistenceReport {
            kmax,
            holds: true,
            violated_at: None,
        },
        powers::PersistenceOutcome::ViolatedAt { k, .. } => PersistenceReport {
            kmax,
            holds: false,
            violated_at: Some(k),
        },
    };
    emit(json, &report, || {
        if report.holds {
            println!("ascending up to k = {kmax}");
        } else {
            println!("violated at k = {}", report.violated_at.expect("recorded"));
        }
    });
    Ok(if report.holds {
        Outcome::Pass
    } else {
        Outcome::ClaimFailed
    })
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct DecomposeReport {
    pub components: Vec<Vec<String>>,
}

fn cmd_decompose(json: bool, n: usize, gens: &str, guards: &Guards) -> Result<Outcome> {
    let parsed = parse_monomial_list(gens, Some(n))?;
    let comps = oracle::irreducible_decomposition(&parsed, n, guards)?;
    let report = DecomposeReport {
        components: comps
            .iter()
            .map(|c| c.generators(n).iter().map(|g| g.to_string()).collect())
            .collect(),
    };
    emit(json, &report, || {
        for c in &comps {
            println!("{c}");
        }
    });
    Ok(Outcome::Pass)
}

// ---------------------------------------------------------------------------
// reproduce: the headline checks on their original instances
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct ReproduceReport {
    pub seed: u64,
    pub fault_injected: bool,
    pub checks: Vec<CheckEntry>,
    pub all_pass: bool,
}

struct Checks {
    entries: Vec<CheckEntry>,
}

impl Checks {
    fn record(&mut self, name: &str, outcome: std::result::Result<String, String>) {
        let (pass, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.entries.push(CheckEntry {
            name: name.to_string(),
            pass,
            detail,
        });
    }
}

fn reproduce(json: bool, seed: u64, inject_fault: bool) -> Result<Outcome> {
    let mut checks = Checks {
        entries: Vec::new(),
    };
    let guards = Guards::default();

    // Dual example: exact generator list, exact order, linear quotients.
    {
        let inst = BorelInstance::new(9, 2, vec![2, 4, 9])?;
        let mut ordered = dual::scm_order(&dual::dual_generators(&inst)?);
        if inject_fault {
            // Simulated enumeration bug: one dual generator goes missing.
            ordered.remove(1);
        }
        let got: Vec<String> = ordered.iter().map(|g| g.monomial.to_string()).collect();
        let expect = [
            "x1*x2",
            "x1*x4",
            "x3*x4",
            "x1*x6*x7*x8*x9",
            "x3*x6*x7*x8*x9",
            "x5*x6*x7*x8*x9",
        ];
        let monomials: Vec<Monomial> = ordered.iter().map(|g| g.monomial.clone()).collect();
        let linear = dual::linear_quotients_check(&monomials).is_linear();
        checks.record(
            "dual-example-order",
            if got == expect && linear {
                Ok("six dual generators in the certifying order; quotients linear".into())
            } else {
                Err(format!("got [{}], linear = {linear}", got.join(", ")))
            },
        );
    }

    // Sequential CM across a seeded random family.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let opts = SampleOptions::default();
        let mut failures = 0usize;
        for _ in 0..100 {
            let inst = borel::random_instance(&mut rng, &opts);
            let ordered = dual::scm_order(&dual::dual_generators(&inst)?);
            let monomials: Vec<Monomial> = ordered.iter().map(|g| g.monomial.clone()).collect();
            if !dual::linear_quotients_check(&monomials).is_linear() {
                failures += 1;
            }
        }
        checks.record(
            "scm-random-suite",
            if failures == 0 {
                Ok("100 seeded instances (n <= 12, d <= 4) all certify".into())
            } else {
                Err(format!("{failures} of 100 instances failed"))
            },
        );
    }

    // Rees basis soundness on the running example.
    {
        let pres = Presentation::new(BorelInstance::new(9, 2, vec![2, 4, 9])?);
        let gb = rees::reduced_gb(&pres);
        let kernel = gb.iter().all(|b| rees::verify_kernel(b, &pres));
        let xcond = rees::x_condition_check(&gb);
        let reduced = rees::check_reduced(&gb);
        let verdict = rees::buchberger_verify(&gb);
        checks.record(
            "rees-gb-running-example",
            if kernel && xcond && reduced && verdict.is_verified() {
                Ok(format!("{} marked binomials verify", gb.len()))
            } else {
                Err(format!(
                    "kernel={kernel} x_condition={xcond} reduced={reduced} verdict={verdict:?}"
                ))
            },
        );
    }

    // Exchange property at degree 2.
    {
        let mut ok = true;
        let mut detail = String::new();
        for (n, t, u) in [(4, 1, vec![2, 4]), (9, 2, vec![2, 4, 9])] {
            let pres = Presentation::new(BorelInstance::new(n, t, u.clone())?);
            let outcome = rees::ell_exchange_check(&pres, 2, guards.max_power_generators)?;
            if !outcome.holds() {
                ok = false;
                detail = format!("failed on n={n} t={t} u={u:?}");
            }
        }
        checks.record(
            "ell-exchange",
            if ok {
                Ok("holds at degree 2 on both instances".into())
            } else {
                Err(detail)
            },
        );
    }

    // Depth collapse at k >= d.
    {
        let inst = BorelInstance::new(8, 2, vec![3, 5, 8])?;
        let mut ok = true;
        let mut detail = String::new();
        for k in [3usize, 4] {
            let r = powers::depth_report(&inst, k, &guards)?;
            if r.depth != 0 || r.projdim != 8 {
                ok = false;
                detail = format!("k={k}: projdim={} depth={}", r.projdim, r.depth);
            }
        }
        let witness = powers::limdepth_witness(&inst, 3, &guards)?;
        if witness.steps.len() != 7 {
            ok = false;
            detail = format!("witness verified {} of 7 variables", witness.steps.len());
        }
        checks.record(
            "depth-limit",
            if ok {
                Ok("depth 0 and projdim 8 at k = 3, 4; witness absorbs x1..x7".into())
            } else {
                Err(detail)
            },
        );
    }

    // Spread-tight family keeps depth d - 1.
    {
        let inst = BorelInstance::new(4, 2, vec![2, 4])?;
        let mut ok = true;
        let mut detail = String::new();
        for k in [2usize, 3, 4] {
            let r = powers::depth_report(&inst, k, &guards)?;
            if r.depth != 1 {
                ok = false;
                detail = format!("k={k}: depth={}", r.depth);
            }
        }
        for k in [2usize, 3] {
            if !powers::veronese_support_obstruction(&inst, k, &guards)? {
                ok = false;
                detail = format!("support obstruction failed at k={k}");
            }
        }
        if rees::fiber_dimension(&inst) != 3 {
            ok = false;
            detail = "fiber dimension != 3".into();
        }
        checks.record(
            "veronese-family",
            if ok {
                Ok(
                    "depth 1 at k = 2..4; generator variables never enter colons; fiber dim 3"
                        .into(),
                )
            } else {
                Err(detail)
            },
        );
    }

    // Full fiber dimension away from the spread-tight case.
    {
        let dim = rees::fiber_dimension(&BorelInstance::new(8, 2, vec![3, 5, 8])?);
        checks.record(
            "fiber-dimension",
            if dim == 8 {
                Ok("exponent matrix has full rank 8".into())
            } else {
                Err(format!("rank {dim} != 8"))
            },
        );
    }

    // Lex order does not keep the fiber basis quadratic.
    {
        let pres = Presentation::new(BorelInstance::new(10, 2, vec![6, 8, 10])?);
        let cubic = [
            Monomial::parse("x1*x3*x8", 10)?,
            Monomial::parse("x1*x7*x9", 10)?,
            Monomial::parse("x2*x4*x6", 10)?,
        ];
        let sorted = sorting::sort_tuple(&cubic)?;
        let lhs = PresMonomial::t_only(
            10,
            cubic
                .iter()
                .map(|m| pres.index_of(m).expect("generator"))
                .collect(),
        );
        let rhs = PresMonomial::t_only(
            10,
            sorted
                .monomials()
                .iter()
                .map(|m| pres.index_of(m).expect("generator"))
                .collect(),
        );
        let kernel = rees::verify_kernel_parts(&lhs, &rhs, &pres);
        let report = rees::lex_quadratic_witness(&pres, &cubic)?;
        checks.record(
            "lex-witness",
            if kernel && report.divisor.is_none() && report.sorting_reducible {
                Ok(format!(
                    "cubic kernel binomial confirmed; {} quadratic lex-initials, none divides it",
                    report.quadratic_initials
                ))
            } else {
                Err(format!(
                    "kernel={kernel} divisor={:?} sorting_reducible={}",
                    report.divisor, report.sorting_reducible
                ))
            },
        );
    }

    // Ascending associated primes, with both oracles agreeing.
    {
        let mut ok = true;
        let mut detail = String::new();
        for (n, t, u) in [(3usize, 1usize, vec![2, 3]), (4, 2, vec![2, 4])] {
            let inst = BorelInstance::new(n, t, u.clone())?;
            if !powers::persistence_check(&inst, 3, &guards)?.holds() {
                ok = false;
                detail = format!("chain broken on n={n} t={t}");
            }
            for k in 1..=3usize {
                let gens = powers::power_generators(&inst, k, &guards)?;
                let ass = powers::associated_primes(&gens, n, &guards)?;
                for mask in 1u32..(1 << n) {
                    let p = IndexSet::new((1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect())
                        .expect("increasing");
                    let witness = powers::ass_witness_oracle(&gens, n, &p, &guards)?;
                    if witness.is_some() != ass.contains(&p) {
                        ok = false;
                        detail = format!("oracles disagree at n={n} k={k} P={p}");
                    }
                }
            }
        }
        checks.record(
            "persistence",
            if ok {
                Ok("Ass chains ascend to k = 3; witness oracle agrees on every prime".into())
            } else {
                Err(detail)
            },
        );
    }

    // The prefix prime is always minimal.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let opts = SampleOptions::default();
        let mut ok = true;
        let mut detail = String::new();
        let mut pool: Vec<BorelInstance> = vec![
            BorelInstance::new(9, 2, vec![2, 4, 9])?,
            BorelInstance::new(8, 2, vec![3, 5, 8])?,
            BorelInstance::new(4, 2, vec![2, 4])?,
            BorelInstance::new(3, 1, vec![2, 3])?,
        ];
        for _ in 0..10 {
            pool.push(borel::random_instance(&mut rng, &opts));
        }
        for inst in &pool {
            let prefix = IndexSet::new((1..=inst.bound(1)).collect()).expect("increasing");
            if !dual::minimal_primes(inst)?.contains(&prefix) {
                ok = false;
                detail = format!("missing prefix prime on {:?}", inst.generator_indices());
            }
        }
        checks.record(
            "min-prime-prefix",
            if ok {
                Ok("(x_1, ..., x_{i_1}) minimal on all 14 instances".into())
            } else {
                Err(detail)
            },
        );
    }

    // Cohen-Macaulay exactly for the full t-spread families.
    {
        let mut ok = true;
        let mut detail = String::new();
        for (inst, expect_cm) in [
            (BorelInstance::new(4, 2, vec![2, 4])?, true),
            (BorelInstance::new(6, 2, vec![2, 4, 6])?, true),
            (BorelInstance::new(9, 2, vec![2, 4, 9])?, false),
            (BorelInstance::new(8, 2, vec![3, 5, 8])?, false),
        ] {
            let depth = powers::depth_report(&inst, 1, &guards)?.depth;
            let data = dual::facets(&inst)?;
            let dim = data
                .facets
                .iter()
                .map(|f| f.members.len())
                .max()
                .unwrap_or(0);
            if (depth == dim) != expect_cm {
                ok = false;
                detail = format!(
                    "u={:?}: depth={depth} dim={dim}, expected CM={expect_cm}",
                    inst.generator_indices()
                );
            }
        }
        checks.record(
            "cm-veronese",
            if ok {
                Ok("depth = dim exactly on the full-family instances".into())
            } else {
                Err(detail)
            },
        );
    }

    let all_pass = checks.entries.iter().all(|c| c.pass);
    let report = ReproduceReport {
        seed,
        fault_injected: inject_fault,
        checks: checks.entries,
        all_pass,
    };
    emit(json, &report, || {
        println!("seed: {}", report.seed);
        for c in &report.checks {
            println!(
                "[{}] {} — {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        println!(
            "{} of {} checks pass",
            report.checks.iter().filter(|c| c.pass).count(),
            report.checks.len()
        );
    });
    Ok(if all_pass {
        Outcome::Pass
    } else {
        Outcome::ClaimFailed
    })
}
