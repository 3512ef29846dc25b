//! Command-line front end: evaluate a space expression, run one of the
//! analyses, print text or JSON. Exit codes: 0 success, 2 precondition
//! refusal or bad input, 1 internal soundness error.

use clap::{Args, Parser, Subcommand, ValueEnum};

use c2max::borel::{barcode, borel_module, e2_page, spectral_pages, BarLength};
use c2max::classify::{budgets, classify, Method};
use c2max::cohomology::betti;
use c2max::errors::Result;
use c2max::expr::{eval, parse, EvalOptions};
use c2max::sset::build::fixed_subobject;
use c2max::sset::C2SimplicialSet;
use c2max::tower::{splitting_check, stability_check, verify_main_theorem};

#[derive(Parser)]
#[command(
    name = "c2max",
    version,
    about = "Maximal / Galois-Maximal classification of finite C2-spaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Definition,
    Borel,
    Degeneration,
    All,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Definition => Method::Definition,
            MethodArg::Borel => Method::Borel,
            MethodArg::Degeneration => Method::Degeneration,
            MethodArg::All => Method::All,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Space expression, e.g. "wedge(lind(circle), sphere(1,1))".
    expr: String,
    /// Level count for tower commands, page bound for `pages`.
    #[arg(long)]
    n: Option<usize>,
    /// Truncation acknowledgment for symmetric products (also read from
    /// C2MAX_TRUNCATE).
    #[arg(long)]
    truncate: Option<usize>,
    /// Classification route.
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    method: MethodArg,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Betti numbers over F2.
    Betti(Common),
    /// Betti numbers and cell counts of the fixed subobject.
    Fixed(Common),
    /// Maximal / Galois-Maximal / Neither, with budgets and barcode.
    Classify(Common),
    /// Interval decomposition of the Borel F2[z]-module.
    Barcode(Common),
    /// The E2 page rows H^p(C2, H^q).
    E2(Common),
    /// Spectral sequence page tables (CSV by default).
    Pages(Common),
    /// Smith-Thom and Harnack-Krasnov budget sums.
    Budgets(Common),
    /// Steenrod-range stability of the symmetric-product tower.
    VerifyStability(Common),
    /// Equivariant splitting of the restriction maps in the tower.
    VerifySplitting(Common),
    /// Classify every symmetric power of a maximal input.
    VerifyMain(Common),
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}

fn evaluate(common: &Common) -> Result<C2SimplicialSet> {
    let expr = parse(&common.expr)?;
    let truncate = common.truncate.or_else(|| {
        std::env::var("C2MAX_TRUNCATE")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    let opts = EvalOptions { truncate };
    eval(&expr, &opts)?.into_set()
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn bar_text(b: &c2max::borel::Bar) -> String {
    match b.length {
        BarLength::Infinite => format!("({}, inf)", b.birth),
        BarLength::Finite(l) => format!("({}, {})", b.birth, l),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Betti(c) => {
            let set = evaluate(&c)?;
            let b = betti(&set)?;
            if c.json {
                print_json(&serde_json::json!({ "betti": b }))?;
            } else {
                println!("betti: {b:?}");
            }
        }
        Cmd::Fixed(c) => {
            let set = evaluate(&c)?;
            let fixed = fixed_subobject(&set)?;
            let b = betti(&fixed)?;
            if c.json {
                print_json(&serde_json::json!({
                    "counts": fixed.counts(),
                    "betti": b,
                }))?;
            } else {
                println!("fixed subobject cells: {:?}", fixed.counts());
                println!("fixed subobject betti: {b:?}");
            }
        }
        Cmd::Classify(c) => {
            let set = evaluate(&c)?;
            let report = classify(&set, c.method.into())?;
            if c.json {
                print_json(&report)?;
            } else {
                println!("verdict: {:?}", report.verdict);
                if let Some(b) = &report.budgets {
                    println!(
                        "budgets: fixed={} <= hk={} <= st={}",
                        b.fixed_sum, b.hk_sum, b.st_sum
                    );
                }
                if let Some(code) = &report.barcode {
                    let bars: Vec<String> = code.bars.iter().map(bar_text).collect();
                    println!("barcode: {}", bars.join(" "));
                }
                if let Some((deg, witness)) = report.degeneration {
                    match witness {
                        Some(n) => println!("degenerates at E2: {deg} (witness degree {n})"),
                        None => println!("degenerates at E2: {deg}"),
                    }
                }
                println!("trivial action: {}", report.trivial_action);
                println!(
                    "routes: {:?}, agreement: {}",
                    report.routes_used, report.agreement
                );
            }
        }
        Cmd::Barcode(c) => {
            let set = evaluate(&c)?;
            let module = borel_module(&set, set.dim() + 2)?;
            let code = barcode(&module);
            if c.json {
                print_json(&code.bars)?;
            } else {
                let bars: Vec<String> = code.bars.iter().map(bar_text).collect();
                println!("barcode: {}", bars.join(" "));
            }
        }
        Cmd::E2(c) => {
            let set = evaluate(&c)?;
            let q_max = c.n.unwrap_or_else(|| set.dim());
            let page = e2_page(&set, q_max)?;
            if c.json {
                print_json(&page)?;
            } else {
                println!("q: (p=0, p>=1)");
                for row in &page.rows {
                    println!("{}: ({}, {})", row.q, row.invariants, row.positive);
                }
            }
        }
        Cmd::Pages(c) => {
            let set = evaluate(&c)?;
            let r_max = c.n.unwrap_or_else(|| set.dim() + 2).max(2);
            let pages = spectral_pages(&set, r_max)?;
            if c.json {
                print_json(&pages)?;
            } else {
                print!("{}", pages.to_csv());
            }
        }
        Cmd::Budgets(c) => {
            let set = evaluate(&c)?;
            let b = budgets(&set)?;
            if c.json {
                print_json(&b)?;
            } else {
                println!(
                    "fixed={} <= hk={} <= st={}",
                    b.fixed_sum, b.hk_sum, b.st_sum
                );
            }
        }
        Cmd::VerifyStability(c) => {
            let set = evaluate(&c)?;
            let n_max = c.n.unwrap_or_else(|| default_levels(&set));
            let report = stability_check(&set, n_max)?;
            if c.json {
                print_json(&report)?;
            } else {
                println!(
                    "stability through n_max={}: {}",
                    report.n_max,
                    if report.ok { "ok" } else { "FAILED" }
                );
                for f in &report.failures {
                    println!("  failure at (n={}, q={})", f.n, f.q);
                }
            }
        }
        Cmd::VerifySplitting(c) => {
            let set = evaluate(&c)?;
            let n_max = c.n.unwrap_or_else(|| default_levels(&set));
            let report = splitting_check(&set, n_max)?;
            if c.json {
                print_json(&report)?;
            } else {
                println!(
                    "splitting through n_max={}: {}",
                    report.n_max,
                    if report.ok { "ok" } else { "FAILED" }
                );
                for l in &report.levels {
                    println!("  n={}: split={} ({} ms)", l.n, l.split_ok, l.millis);
                }
            }
        }
        Cmd::VerifyMain(c) => {
            let set = evaluate(&c)?;
            let n_max = c.n.unwrap_or_else(|| default_levels(&set));
            let report = verify_main_theorem(&set, n_max)?;
            if c.json {
                print_json(&report)?;
            } else {
                println!("input verdict: {:?}", report.input_verdict);
                for l in &report.levels {
                    let bars: Vec<String> = l.barcode.bars.iter().map(bar_text).collect();
                    println!(
                        "  n={}: {:?} trivial_action={} barcode: {} ({} ms)",
                        l.n,
                        l.verdict,
                        l.trivial_action,
                        bars.join(" "),
                        l.millis
                    );
                }
                println!("tower ok: {}", report.ok);
            }
        }
    }
    Ok(())
}

/// Default tower depth: 3 for surfaces and higher, 4 for graphs.
fn default_levels(set: &C2SimplicialSet) -> usize {
    if set.dim() >= 2 {
        3
    } else {
        4
    }
}
