//! Command-line front end for the finite loop workbench.
//!
//! Reports are line-oriented `key=value` text; the first line is always
//! `status=pass|fail|error`. Exit codes: 0 all checks passed, 1 a
//! property check failed, 2 malformed input or precondition violation.

use std::fs;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use loopcore::construct::{
    bruck_from_gamma, bruck_from_group, gamma_from_bruck, gamma_from_group, round_trip_report,
    LoopKind,
};
use loopcore::groups::{abelian, cyclic, g375, heisenberg, is_metabelian, semidirect_cyclic};
use loopcore::ident::parse_identity_file;
use loopcore::perm::is_twisted_subset;
use loopcore::search::{search_loops, SearchSpec};
use loopcore::structure::{
    center, derived_series, enumerate_subloops, find_subloop_of_order, hall_subloop,
    lagrange_cauchy_audit, sub_table, sylow_subloop, upper_central_series,
};
use loopcore::table::{is_isomorphic, order6_gamma_table, parse_loop_file, render_loop_file};
use loopcore::varieties::{
    check_aip, check_automorphic, check_basic, check_bol_bruck, check_gamma,
    check_left_power_alternative, check_moufang_commutative, check_power_associative,
    check_two_sided_inverses, BasicLaw, BolKind,
};
use loopcore::{Error, LoopTable, Report};

#[derive(Parser)]
#[command(name = "loopcli", version, about = "finite loop workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cyclic,
    AbelianProduct,
    Semidirect,
    Heisenberg,
    G375,
}

#[derive(Clone, Copy, ValueEnum)]
enum AsKind {
    Gamma,
    Bruck,
}

#[derive(Clone, Copy, ValueEnum)]
enum GammaSource {
    Group,
    Bruck,
}

#[derive(Clone, Copy, ValueEnum)]
enum BruckSource {
    Group,
    Gamma,
}

#[derive(Args)]
struct InputArgs {
    /// Loop file to read; `-` reads standard input.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Relabel so the identity element sits at index 0.
    #[arg(long)]
    normalize: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build a corpus group and emit it in the loop file format.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// Family parameters: cyclic n; abelian-product n1,n2,...;
        /// semidirect n,m,k (C_n by C_m, a -> a^k); heisenberg p.
        #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "")]
        params: Vec<String>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Produce the commutative loop of a group or of a Bruck loop.
    Gamma {
        #[arg(long, value_enum)]
        from: GammaSource,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Produce the Bruck loop of a group or of a commutative loop.
    Bruck {
        #[arg(long, value_enum)]
        from: BruckSource,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Verify that the two functors invert each other on the input.
    Roundtrip {
        #[arg(long = "as", value_enum)]
        kind: AsKind,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Run variety checks; exit 0 only if all pass.
    Check {
        /// Comma-separated: gamma,bruck,bol,moufang,automorphic,
        /// power-assoc,lpa,commutative,associative,aip,inverses.
        #[arg(long, value_delimiter = ',')]
        variety: Vec<String>,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Structure-theory reports on a loop.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        center: bool,
        #[arg(long)]
        series: bool,
        #[arg(long)]
        derived: bool,
        #[arg(long)]
        subloops: bool,
        #[arg(long, value_name = "P")]
        sylow: Option<usize>,
        #[arg(long, value_delimiter = ',', value_name = "P,Q")]
        hall: Vec<usize>,
        #[arg(long)]
        audit: bool,
    },
    /// Exhaustive loop search under an identity file.
    Search {
        #[arg(long)]
        order: usize,
        /// One identity per line; omit for an unrestricted loop search.
        #[arg(long, value_name = "FILE")]
        identities: Option<PathBuf>,
        #[arg(long)]
        commutative: bool,
        #[arg(long)]
        up_to_iso: bool,
        #[arg(long, value_name = "K")]
        max_solutions: Option<usize>,
        #[arg(long, value_name = "MS")]
        budget_ms: Option<u64>,
    },
    /// Decide isomorphism of two loop files.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        normalize: bool,
    },
    /// Named reproducible experiment bundles.
    Experiment {
        /// example-2.8 | baer-trick | g375 | roundtrip-corpus |
        /// sylow-hall | metabelian-conjecture
        name: String,
    },
}

fn read_input(args: &InputArgs) -> Result<LoopTable, Error> {
    let text = if args.input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(&args.input)?
    };
    parse_loop_file(&text, args.normalize)
}

fn write_output(out: &Option<PathBuf>, t: &LoopTable) -> Result<(), Error> {
    let text = render_loop_file(t);
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Prints the reports under one status line; false means some check
/// failed.
fn emit(reports: &[Report]) -> bool {
    let all = reports.iter().all(|r| r.pass);
    println!("status={}", if all { "pass" } else { "fail" });
    for r in reports {
        println!("{}={}", r.name, if r.pass { "pass" } else { "fail" });
        if let Some(w) = &r.witness {
            println!("{}.witness={w}", r.name);
        }
        for (k, v) in &r.details {
            println!("{}.{k}={v}", r.name);
        }
    }
    all
}

fn check_one(t: &LoopTable, name: &str) -> Result<Report, Error> {
    Ok(match name {
        "gamma" => check_gamma(t),
        "bruck" => check_bol_bruck(t, BolKind::Bruck),
        "bol" => check_bol_bruck(t, BolKind::Bol),
        "moufang" => check_moufang_commutative(t),
        "automorphic" => check_automorphic(t),
        "power-assoc" => check_power_associative(t),
        "lpa" => check_left_power_alternative(t)?,
        "commutative" => check_basic(t, BasicLaw::Commutative),
        "associative" => check_basic(t, BasicLaw::Associative),
        "aip" => check_aip(t),
        "inverses" => check_two_sided_inverses(t),
        other => {
            return Err(Error::Precondition(format!("unknown variety {other:?}")));
        }
    })
}

fn parse_usize(s: &str, what: &str) -> Result<usize, Error> {
    s.trim()
        .parse()
        .map_err(|_| Error::Precondition(format!("{what}: expected a number, got {s:?}")))
}

fn construct(family: Family, params: &[String]) -> Result<LoopTable, Error> {
    let nums: Vec<usize> = params
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_usize(s, "--params"))
        .collect::<Result<_, _>>()?;
    match family {
        Family::Cyclic => match nums[..] {
            [n] => cyclic(n),
            _ => Err(Error::Precondition("cyclic takes one parameter".into())),
        },
        Family::AbelianProduct => {
            if nums.is_empty() {
                return Err(Error::Precondition(
                    "abelian-product needs at least one modulus".into(),
                ));
            }
            abelian(&nums)
        }
        Family::Semidirect => match nums[..] {
            [n, m, k] => semidirect_cyclic(n, m, k),
            _ => Err(Error::Precondition(
                "semidirect takes parameters n,m,k".into(),
            )),
        },
        Family::Heisenberg => match nums[..] {
            [p] => heisenberg(p),
            _ => Err(Error::Precondition("heisenberg takes one prime".into())),
        },
        Family::G375 => {
            if !nums.is_empty() {
                return Err(Error::Precondition("g375 takes no parameters".into()));
            }
            g375()
        }
    }
}

/// The named group corpus used by the experiment bundles.
fn corpus() -> Result<Vec<(&'static str, LoopTable)>, Error> {
    Ok(vec![
        ("c3", cyclic(3)?),
        ("c5", cyclic(5)?),
        ("c7", cyclic(7)?),
        ("c9", cyclic(9)?),
        ("c15", cyclic(15)?),
        ("c3xc3", abelian(&[3, 3])?),
        ("c7:c3", semidirect_cyclic(7, 3, 2)?),
        ("heis3", heisenberg(3)?),
        ("heis5", heisenberg(5)?),
        ("g375", g375()?),
    ])
}

fn experiment(name: &str) -> Result<bool, Error> {
    match name {
        "example-2.8" => {
            let t = order6_gamma_table();
            let gamma = check_gamma(&t);
            let automorphic = check_automorphic(&t);
            let ok = gamma.pass && !automorphic.pass;
            println!("status={}", if ok { "pass" } else { "fail" });
            println!("order={}", t.n());
            println!("gamma={}", if gamma.pass { "pass" } else { "fail" });
            println!(
                "automorphic={}",
                if automorphic.pass { "pass" } else { "fail" }
            );
            Ok(ok)
        }
        "baer-trick" => {
            // Nilpotency class <= 2: the commutative loop collapses to
            // an abelian group equal to the Bruck loop.
            let mut ok = true;
            let mut lines = Vec::new();
            for (name, g) in corpus()? {
                if matches!(name, "c7:c3" | "g375") {
                    continue;
                }
                let gamma = gamma_from_group(&g)?;
                let bruck = bruck_from_group(&g)?;
                let collapse = check_basic(&gamma, BasicLaw::Associative).pass
                    && check_basic(&gamma, BasicLaw::Commutative).pass
                    && gamma.same_table(&bruck);
                ok &= collapse;
                lines.push(format!(
                    "{name}={}",
                    if collapse { "abelian" } else { "FAIL" }
                ));
            }
            println!("status={}", if ok { "pass" } else { "fail" });
            for l in lines {
                println!("{l}");
            }
            Ok(ok)
        }
        "g375" => {
            let g = g375()?;
            let meta = is_metabelian(&g)?;
            let gamma = gamma_from_group(&g)?;
            let gamma_ok = check_gamma(&gamma);
            let same_bruck = bruck_from_group(&g)?.same_table(&bruck_from_gamma(&gamma)?);
            let mut ok = g.n() == 375 && !meta.pass && gamma_ok.pass && same_bruck;
            println!("order={}", g.n());
            println!("metabelian={}", if meta.pass { "pass" } else { "fail" });
            println!("gamma={}", if gamma_ok.pass { "pass" } else { "fail" });
            println!("samebruck={}", if same_bruck { "pass" } else { "fail" });
            let deadline = Instant::now() + Duration::from_secs(300);
            match find_subloop_of_order(&gamma, 75, Some(deadline))? {
                Some(h) => {
                    let twisted = is_twisted_subset(&g, &h.carrier)?;
                    let sub = sub_table(&gamma, &h)?;
                    let auto = check_automorphic(&sub);
                    ok &= twisted.pass && !auto.pass;
                    println!("subloop75=found");
                    println!("twisted={}", if twisted.pass { "pass" } else { "fail" });
                    println!(
                        "subloop-automorphic={}",
                        if auto.pass { "pass" } else { "fail" }
                    );
                }
                None => {
                    println!("subloop75=not-found-within-budget");
                }
            }
            println!("status={}", if ok { "pass" } else { "fail" });
            Ok(ok)
        }
        "roundtrip-corpus" => {
            let mut ok = true;
            let mut lines = Vec::new();
            for (name, g) in corpus()? {
                let gamma = gamma_from_group(&g)?;
                let bruck = bruck_from_group(&g)?;
                let a = round_trip_report(&gamma, LoopKind::Gamma)?;
                let b = round_trip_report(&bruck, LoopKind::Bruck)?;
                ok &= a.pass && b.pass;
                lines.push(format!(
                    "{name}=gamma:{}/bruck:{}",
                    if a.pass { "pass" } else { "fail" },
                    if b.pass { "pass" } else { "fail" }
                ));
            }
            println!("status={}", if ok { "pass" } else { "fail" });
            for l in lines {
                println!("{l}");
            }
            Ok(ok)
        }
        "sylow-hall" => {
            let gamma21 = gamma_from_group(&semidirect_cyclic(7, 3, 2)?)?;
            let s3 = sylow_subloop(&gamma21, 3)?;
            let s7 = sylow_subloop(&gamma21, 7)?;
            let h37 = hall_subloop(&gamma21, &[3, 7])?;
            let c15 = cyclic(15)?;
            let t3 = sylow_subloop(&c15, 3)?;
            let t5 = sylow_subloop(&c15, 5)?;
            let ok = s3.order() == 3
                && s7.order() == 7
                && h37.order() == 21
                && t3.order() == 3
                && t5.order() == 5;
            println!("status={}", if ok { "pass" } else { "fail" });
            println!("gamma21-sylow3={}", s3.order());
            println!("gamma21-sylow7={}", s7.order());
            println!("gamma21-hall37={}", h37.order());
            println!("c15-sylow3={}", t3.order());
            println!("c15-sylow5={}", t5.order());
            Ok(ok)
        }
        "metabelian-conjecture" => {
            // Is the commutative loop of a metabelian group always
            // automorphic?  Observations only; nothing is asserted.
            println!("status=pass");
            for (name, g) in corpus()? {
                let meta = is_metabelian(&g)?;
                if !meta.pass {
                    println!("{name}=skipped-not-metabelian");
                    continue;
                }
                let gamma = gamma_from_group(&g)?;
                let auto = check_automorphic(&gamma);
                println!(
                    "{name}=automorphic:{}",
                    if auto.pass { "yes" } else { "no" }
                );
            }
            Ok(true)
        }
        other => Err(Error::Precondition(format!("unknown experiment {other:?}"))),
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Construct { family, params, out } => {
            let t = construct(family, &params)?;
            write_output(&out, &t)?;
            Ok(true)
        }
        Command::Gamma { from, input, out } => {
            let t = read_input(&input)?;
            let result = match from {
                GammaSource::Group => gamma_from_group(&t)?,
                GammaSource::Bruck => gamma_from_bruck(&t)?,
            };
            write_output(&out, &result)?;
            Ok(true)
        }
        Command::Bruck { from, input, out } => {
            let t = read_input(&input)?;
            let result = match from {
                BruckSource::Group => bruck_from_group(&t)?,
                BruckSource::Gamma => bruck_from_gamma(&t)?,
            };
            write_output(&out, &result)?;
            Ok(true)
        }
        Command::Roundtrip { kind, input } => {
            let t = read_input(&input)?;
            let kind = match kind {
                AsKind::Gamma => LoopKind::Gamma,
                AsKind::Bruck => LoopKind::Bruck,
            };
            let report = round_trip_report(&t, kind)?;
            Ok(emit(&[report]))
        }
        Command::Check { variety, input } => {
            if variety.is_empty() {
                return Err(Error::Precondition("no varieties requested".into()));
            }
            let t = read_input(&input)?;
            let reports = variety
                .iter()
                .map(|v| check_one(&t, v))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(emit(&reports))
        }
        Command::Analyze {
            input,
            center: want_center,
            series,
            derived,
            subloops,
            sylow,
            hall,
            audit,
        } => {
            let t = read_input(&input)?;
            let mut lines = vec![format!("order={}", t.n())];
            let mut ok = true;
            if want_center {
                let z = center(&t);
                lines.push(format!("center-order={}", z.order()));
                lines.push(format!(
                    "center={}",
                    z.carrier
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ));
            }
            if series {
                let s = upper_central_series(&t)?;
                lines.push(format!(
                    "central-series={}",
                    s.steps
                        .iter()
                        .map(|h| h.order().to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ));
                lines.push(format!(
                    "nilpotency-class={}",
                    s.class.map_or("none".into(), |c| c.to_string())
                ));
            }
            if derived {
                let s = derived_series(&t)?;
                lines.push(format!(
                    "derived-series={}",
                    s.steps
                        .iter()
                        .map(|h| h.order().to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ));
                lines.push(format!(
                    "solvable={}",
                    if s.terminated { "yes" } else { "no" }
                ));
            }
            if subloops {
                let e = enumerate_subloops(&t, 1_000_000);
                let orders: Vec<String> = e
                    .subloops
                    .iter()
                    .map(|h| h.order().to_string())
                    .collect();
                lines.push(format!("subloop-count={}", e.subloops.len()));
                lines.push(format!("subloop-orders={}", orders.join(",")));
                lines.push(format!(
                    "subloop-enumeration-complete={}",
                    if e.complete { "yes" } else { "no" }
                ));
            }
            if let Some(p) = sylow {
                let h = sylow_subloop(&t, p)?;
                lines.push(format!("sylow{}-order={}", p, h.order()));
            }
            if !hall.is_empty() {
                let h = hall_subloop(&t, &hall)?;
                let tag: Vec<String> = hall.iter().map(|p| p.to_string()).collect();
                lines.push(format!("hall{}-order={}", tag.join("_"), h.order()));
            }
            if audit {
                let r = lagrange_cauchy_audit(&t, 1_000_000);
                ok &= r.pass;
                lines.push(format!(
                    "lagrange-cauchy={}",
                    if r.pass { "pass" } else { "fail" }
                ));
            }
            println!("status={}", if ok { "pass" } else { "fail" });
            for l in lines {
                println!("{l}");
            }
            Ok(ok)
        }
        Command::Search {
            order,
            identities,
            commutative,
            up_to_iso,
            max_solutions,
            budget_ms,
        } => {
            let ids = match identities {
                Some(path) => {
                    let text = fs::read_to_string(&path)?;
                    parse_identity_file(&text)?
                }
                None => Vec::new(),
            };
            let mut spec = SearchSpec::new(order, ids);
            spec.commutative = commutative;
            spec.up_to_iso = up_to_iso;
            spec.max_solutions = max_solutions;
            spec.wall_budget = budget_ms.map(Duration::from_millis);
            let outcome = search_loops(&spec)?;
            println!("status=pass");
            println!("solutions={}", outcome.solutions.len());
            println!(
                "complete={}",
                if outcome.complete { "yes" } else { "no" }
            );
            println!("nodes={}", outcome.nodes);
            for t in &outcome.solutions {
                print!("{}", render_loop_file(t));
            }
            Ok(true)
        }
        Command::Iso { a, b, normalize } => {
            let ta = parse_loop_file(&fs::read_to_string(&a)?, normalize)?;
            let tb = parse_loop_file(&fs::read_to_string(&b)?, normalize)?;
            match is_isomorphic(&ta, &tb) {
                Some(f) => {
                    println!("status=pass");
                    println!("isomorphic=yes");
                    println!("witness={f}");
                    Ok(true)
                }
                None => {
                    println!("status=fail");
                    println!("isomorphic=no");
                    Ok(false)
                }
            }
        }
        Command::Experiment { name } => experiment(&name),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            println!("status=error");
            println!("error={e}");
            ExitCode::from(2)
        }
    }
}
