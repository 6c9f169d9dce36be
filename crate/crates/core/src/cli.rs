//! Command-line front end.
//!
//! Every command takes an instance, either a path to a JSON instance file or
//! `@name` for a bundled fixture, and prints one report. With `--format json`
//! the report is a single object:
//!
//! ```text
//! { "command": ..., "instance": { "name": ..., "digest": ... },
//!   "holds": true | false | null, "result": { ... } }
//! ```
//!
//! Rationals in JSON are always `"num/den"` strings and item, seller and
//! buyer indices are 1-based. `holds` is the verdict of commands that decide
//! a property; a `false` verdict exits with status 2. Errors exit with 1.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::budget::decide_mc_pne;
use crate::characterize::{eliminate_costs, unique_mc_pricing, uniqueness_condition};
use crate::epsne::{construct_eps_ne, with_costs, EpsNeOutcome};
use crate::equilibrium::{
    enumerate_grid_equilibria, enumerate_preference_equilibria, grid_axes, verify, verify_preference_game,
    EquilibriumVerdict, GridOptions, DEFAULT_MAX_GRID,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::instance::{digest, parse_instance, parse_instance_str, to_json};
use crate::market::{MarketInstance, PriceVector, Supply};
use crate::setfn::ItemSet;
use crate::value::{with_fraction_strings, Value};
use crate::welfare::{hm_bound_audit, opt_welfare, poa_pos, social_welfare, Ratio};

#[derive(Debug, Parser)]
#[command(
    name = "postedprice",
    version,
    about = "Exact equilibrium analysis for posted-price markets"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct InstanceArg {
    /// Instance file, or `@name` for a bundled fixture.
    pub instance: String,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Tolerance ε, an integer or "num/den".
    #[arg(long, default_value = "0")]
    pub eps: String,
    /// Refuse grids with more points than this.
    #[arg(long, default_value_t = DEFAULT_MAX_GRID)]
    pub max_grid: u128,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and classify an instance.
    Validate(InstanceArg),
    /// A buyer's chosen bundle at given prices.
    BestResponse {
        #[command(flatten)]
        inst: InstanceArg,
        /// 1-based buyer index.
        #[arg(long)]
        buyer: usize,
        #[arg(long)]
        prices: String,
        /// Items on offer, 1-based and comma-separated; all items by default.
        #[arg(long)]
        available: Option<String>,
    },
    /// Bundles, sales, profits and welfare at given prices.
    Allocate {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long)]
        prices: String,
    },
    /// Decide whether prices form an ε-equilibrium.
    Verify {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long)]
        prices: String,
        #[arg(long, default_value = "0")]
        eps: String,
    },
    /// Per-item market-clearing inequalities and the uniqueness test.
    Characterize(InstanceArg),
    /// The unique market-clearing equilibrium pricing, when the condition holds.
    UniquePricing(InstanceArg),
    /// Run the price ascent to a market-clearing ε-equilibrium.
    ConstructEpsNe {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long)]
        eps: String,
    },
    /// Enumerate equilibria over the breakpoint grid.
    GridEquilibria {
        #[command(flatten)]
        inst: InstanceArg,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Welfare at given prices against the optimum.
    Welfare {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long)]
        prices: String,
    },
    /// Price of anarchy and stability over grid equilibria.
    Poa {
        #[command(flatten)]
        inst: InstanceArg,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Audit the harmonic welfare bound at an equilibrium.
    HmAudit {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long)]
        prices: String,
    },
    /// Decide whether a budgeted two-buyer market has a market-clearing equilibrium.
    BudgetCheck(InstanceArg),
    /// Write the cost-free equivalent of a market with production costs.
    ReduceCosts {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify a price and preference profile, or sweep the grid when none is given.
    PreferenceGame {
        #[command(flatten)]
        inst: InstanceArg,
        #[arg(long, requires = "prefs")]
        prices: Option<String>,
        /// Preferred buyer per seller, 1-based.
        #[arg(long, requires = "prices")]
        prefs: Option<String>,
        #[command(flatten)]
        grid: GridArgs,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::BestResponse { .. } => "best-response",
            Command::Allocate { .. } => "allocate",
            Command::Verify { .. } => "verify",
            Command::Characterize(_) => "characterize",
            Command::UniquePricing(_) => "unique-pricing",
            Command::ConstructEpsNe { .. } => "construct-eps-ne",
            Command::GridEquilibria { .. } => "grid-equilibria",
            Command::Welfare { .. } => "welfare",
            Command::Poa { .. } => "poa",
            Command::HmAudit { .. } => "hm-audit",
            Command::BudgetCheck(_) => "budget-check",
            Command::ReduceCosts { .. } => "reduce-costs",
            Command::PreferenceGame { .. } => "preference-game",
        }
    }

    fn instance(&self) -> &str {
        match self {
            Command::Validate(a) | Command::Characterize(a) | Command::UniquePricing(a) | Command::BudgetCheck(a) => {
                &a.instance
            }
            Command::BestResponse { inst, .. }
            | Command::Allocate { inst, .. }
            | Command::Verify { inst, .. }
            | Command::ConstructEpsNe { inst, .. }
            | Command::GridEquilibria { inst, .. }
            | Command::Welfare { inst, .. }
            | Command::Poa { inst, .. }
            | Command::HmAudit { inst, .. }
            | Command::ReduceCosts { inst, .. }
            | Command::PreferenceGame { inst, .. } => &inst.instance,
        }
    }
}

/// Outcome of one command.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub name: Option<String>,
    pub digest: String,
    pub holds: Option<bool>,
    pub warnings: Vec<String>,
    pub result: serde_json::Value,
    pub text: String,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.holds == Some(false) {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let doc = json!({
            "command": self.command,
            "instance": { "name": self.name, "digest": self.digest },
            "holds": self.holds,
            "result": self.result,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {}", self.command, self.name.as_deref().unwrap_or("(unnamed)"));
        let _ = writeln!(s, " [sha256 {}]", &self.digest[..16]);
        s.push_str(&self.text);
        if let Some(h) = self.holds {
            let _ = writeln!(s, "verdict: {}", if h { "holds" } else { "does not hold" });
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> serde_json::Value {
    with_fraction_strings(|| serde_json::to_value(x)).expect("serializable")
}

/// `7/3 (≈2.333333)` for fractions, plain digits for integers.
fn num(v: &Value) -> String {
    if v.is_integer() {
        v.to_canonical()
    } else {
        format!("{} (≈{:.6})", v.to_canonical(), v.to_f64())
    }
}

fn ratio(r: &Ratio) -> String {
    match r {
        Ratio::Finite(v) => num(v),
        Ratio::Infinite => "infinite".into(),
    }
}

fn prices_text(p: &PriceVector) -> String {
    let parts: Vec<String> = p.as_slice().iter().map(num).collect();
    format!("({})", parts.join(", "))
}

fn parse_prices(s: &str) -> Result<PriceVector> {
    s.parse()
}

fn parse_eps(s: &str) -> Result<Value> {
    let eps: Value = s.parse()?;
    if eps.is_negative() {
        return Err(Error::BadEpsilon("nonnegative"));
    }
    Ok(eps)
}

fn parse_labels(s: &str, len: usize, what: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            let k: usize = t
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{what} {t:?} is not a positive integer")))?;
            if k == 0 || k > len {
                return Err(Error::Parse(format!("{what} {k} is outside 1..={len}")));
            }
            Ok(k - 1)
        })
        .collect()
}

struct Loaded {
    name: Option<String>,
    inst: MarketInstance,
    warnings: Vec<String>,
}

fn load(spec: &str) -> Result<Loaded> {
    let loaded = match spec.strip_prefix('@') {
        Some(name) => {
            let src = fixtures::source(name).ok_or_else(|| {
                let known: Vec<&str> = fixtures::names().collect();
                Error::InvalidInstance(format!("no bundled instance {name:?}; known: {}", known.join(", ")))
            })?;
            parse_instance_str(src)?
        }
        None => parse_instance(spec)?,
    };
    Ok(Loaded {
        name: loaded.name,
        inst: loaded.instance,
        warnings: loaded.warnings,
    })
}

fn verdict_text(v: &EquilibriumVerdict) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "prices {}  ε = {}", prices_text(&v.prices), num(&v.epsilon));
    if let Some(prefs) = &v.preferences {
        let labels: Vec<String> = prefs.iter().map(|j| (j + 1).to_string()).collect();
        let _ = writeln!(s, "preferred buyers {}", labels.join(", "));
    }
    s.push_str(&allocation_text(
        &v.allocation.bundles,
        &v.allocation.sold,
        &v.allocation.welfare,
    ));
    for c in &v.sellers {
        let mark = if c.best.profit > &c.current_profit + &v.epsilon {
            "  <- deviates"
        } else {
            ""
        };
        let _ = writeln!(
            s,
            "seller {}: profit {}, best deviation {} at price {}{}{}",
            c.seller + 1,
            num(&c.current_profit),
            num(&c.best.profit),
            num(&c.best.price),
            if c.best.attained {
                ""
            } else {
                " (supremum, not attained)"
            },
            mark
        );
    }
    let _ = writeln!(
        s,
        "equilibrium: {}, market clearing: {}",
        v.is_equilibrium, v.market_clearing
    );
    s
}

fn allocation_text(bundles: &[ItemSet], sold: &[usize], welfare: &Value) -> String {
    let mut s = String::new();
    for (j, b) in bundles.iter().enumerate() {
        let _ = writeln!(s, "buyer {}: {b}", j + 1);
    }
    let sold: Vec<String> = sold.iter().map(|a| a.to_string()).collect();
    let _ = writeln!(s, "copies sold: {}  welfare: {}", sold.join(", "), num(welfare));
    s
}

fn grid_list_text(eqs: &[EquilibriumVerdict]) -> String {
    let mut s = format!("{} equilibria\n", eqs.len());
    for v in eqs {
        let prefs = v
            .preferences
            .as_ref()
            .map(|p| {
                let l: Vec<String> = p.iter().map(|j| (j + 1).to_string()).collect();
                format!(" prefs [{}]", l.join(", "))
            })
            .unwrap_or_default();
        let _ = writeln!(
            s,
            "  {}{}  welfare {}  clearing {}",
            prices_text(&v.prices),
            prefs,
            num(&v.allocation.welfare),
            v.market_clearing
        );
    }
    s
}

fn supply_text(inst: &MarketInstance) -> String {
    match inst.supply() {
        Supply::Unlimited => "unlimited".into(),
        Supply::SingleCopy { arrival_order } => {
            let o: Vec<String> = arrival_order.iter().map(|j| (j + 1).to_string()).collect();
            format!("single copy, arrival order {}", o.join(", "))
        }
    }
}

fn eps_text(out: &EpsNeOutcome) -> String {
    let t = &out.trace;
    let mut s = format!(
        "ε = {}\nstart {}\n{} raises (bound {})\n",
        num(&t.epsilon),
        prices_text(&t.initial),
        t.raises.len(),
        t.raise_bound
    );
    for r in &t.raises {
        let _ = writeln!(s, "  seller {}: {} -> {}", r.seller + 1, num(&r.from), num(&r.to));
    }
    let _ = writeln!(s, "stopped: {}", t.termination);
    let _ = writeln!(
        s,
        "final {}  market clearing: {}",
        prices_text(&out.prices),
        out.market_clearing
    );
    s
}

/// Runs a parsed command and builds its report. Files named by
/// `reduce-costs --out` are written here.
pub fn run(cmd: &Command) -> Result<Report> {
    let Loaded { name, inst, warnings } = load(cmd.instance())?;
    let mut holds = None;
    let (result, text) = match cmd {
        Command::Validate(_) => {
            let buyers: Vec<serde_json::Value> = inst
                .buyers()
                .iter()
                .map(|b| {
                    json!({
                        "class": b.class().name(),
                        "classification": b.classification(),
                        "budget": b.budget().map(to_value),
                    })
                })
                .collect();
            let mut s = format!(
                "{} items, {} buyers, supply {}\n",
                inst.n(),
                inst.m(),
                supply_text(&inst)
            );
            if inst.has_costs() {
                let c: Vec<String> = inst.costs().iter().map(num).collect();
                let _ = writeln!(s, "costs {}", c.join(", "));
            }
            for (j, b) in inst.buyers().iter().enumerate() {
                let c = b.classification();
                let _ = write!(
                    s,
                    "buyer {}: {} (monotone {}, submodular {}, subadditive {}, additive {})",
                    j + 1,
                    b.class().name(),
                    c.monotone,
                    c.submodular,
                    c.subadditive,
                    c.additive
                );
                if let Some(bud) = b.budget() {
                    let _ = write!(s, ", budget {}", num(bud));
                }
                s.push('\n');
            }
            let result = json!({
                "n": inst.n(),
                "m": inst.m(),
                "supply": match inst.supply() { Supply::Unlimited => "unlimited", _ => "single-copy" },
                "arrival_order": inst.arrival_order().iter().map(|j| j + 1).collect::<Vec<_>>(),
                "costs": to_value(&inst.costs()),
                "buyers": buyers,
            });
            (result, s)
        }
        Command::BestResponse {
            buyer,
            prices,
            available,
            ..
        } => {
            let p = parse_prices(prices)?;
            let j = parse_labels(&buyer.to_string(), inst.m(), "buyer")?[0];
            let avail = match available {
                Some(a) => ItemSet::from_items(inst.n(), parse_labels(a, inst.n(), "item")?)?,
                None => ItemSet::full(inst.n()),
            };
            let bundle = inst.best_response(j, avail, &p)?;
            let utility = inst.buyer(j).utility(&bundle, &p);
            let result = json!({
                "buyer": j + 1,
                "prices": to_value(&p),
                "available": avail,
                "bundle": bundle,
                "utility": to_value(&utility),
            });
            let text = format!(
                "buyer {} facing {} on {avail} buys {bundle} with utility {}\n",
                j + 1,
                prices_text(&p),
                num(&utility)
            );
            (result, text)
        }
        Command::Allocate { prices, .. } => {
            let p = parse_prices(prices)?;
            let a = inst.allocate(&p)?;
            let clearing = a.is_market_clearing(&inst);
            let mut result = to_value(&a);
            result["market_clearing"] = json!(clearing);
            let mut text = format!("prices {}\n", prices_text(&p));
            text.push_str(&allocation_text(&a.bundles, &a.sold, &a.welfare));
            let pr: Vec<String> = a.profits.iter().map(num).collect();
            let _ = writeln!(text, "profits {}\nmarket clearing: {clearing}", pr.join(", "));
            (result, text)
        }
        Command::Verify { prices, eps, .. } => {
            let v = verify(&inst, &parse_prices(prices)?, &parse_eps(eps)?)?;
            holds = Some(v.is_equilibrium);
            (to_value(&v), verdict_text(&v))
        }
        Command::Characterize(_) => {
            let u = uniqueness_condition(&inst)?;
            holds = Some(u.report.passes);
            let mut s = String::new();
            for c in &u.report.items {
                let _ = writeln!(
                    s,
                    "item {}: {}{}, floor slack {}",
                    c.item + 1,
                    if c.passes { "passes" } else { "fails" },
                    if c.strict { " strictly" } else { "" },
                    num(&c.floor_slack)
                );
                for q in &c.ratio_checks {
                    let _ = writeln!(
                        s,
                        "  position {} (buyer {}): {} <= {}  slack {}",
                        q.position,
                        q.buyer + 1,
                        num(&q.lhs),
                        num(&q.rhs),
                        num(&q.slack)
                    );
                }
            }
            let _ = writeln!(
                s,
                "market-clearing equilibrium exists: {}\nbuyer classes allow uniqueness: {}\nunique: {}",
                u.report.passes, u.classes_ok, u.applies
            );
            (to_value(&u), s)
        }
        Command::UniquePricing(_) => match unique_mc_pricing(&inst) {
            Ok(p) => {
                let u = uniqueness_condition(&inst)?;
                let v = verify(&inst, &p, &Value::zero())?;
                holds = Some(true);
                let mut text = format!("pricing {}\nunique: {}\n", prices_text(&p), u.applies);
                text.push_str(&verdict_text(&v));
                let result = json!({ "pricing": to_value(&p), "unique": u.applies, "verdict": to_value(&v) });
                (result, text)
            }
            Err(Error::ConditionFails(why)) => {
                holds = Some(false);
                (
                    json!({ "failure": why }),
                    format!("no market-clearing equilibrium: {why}\n"),
                )
            }
            Err(e) => return Err(e),
        },
        Command::ConstructEpsNe { eps, .. } => {
            let eps = parse_eps(eps)?;
            let out = if inst.has_costs() {
                with_costs(&inst, &eps)?
            } else {
                construct_eps_ne(&inst, &eps)?
            };
            holds = Some(true);
            (to_value(&out), eps_text(&out))
        }
        Command::GridEquilibria { grid, .. } => {
            let eps = parse_eps(&grid.eps)?;
            let opts = GridOptions {
                max_points: grid.max_grid,
            };
            let eqs = enumerate_grid_equilibria(&inst, &eps, &opts)?;
            holds = Some(!eqs.is_empty());
            let result = json!({
                "epsilon": to_value(&eps),
                "axes": to_value(&grid_axes(&inst)),
                "count": eqs.len(),
                "equilibria": to_value(&eqs),
            });
            (result, grid_list_text(&eqs))
        }
        Command::Welfare { prices, .. } => {
            let p = parse_prices(prices)?;
            let sw = social_welfare(&inst, &p)?;
            let opt = opt_welfare(&inst)?;
            let r = match sw.recip() {
                Some(inv) => Ratio::Finite(&opt * &inv),
                None if opt.is_zero() => Ratio::Finite(Value::one()),
                None => Ratio::Infinite,
            };
            let text = format!(
                "welfare {} at {}\noptimum {}\nratio {}\n",
                num(&sw),
                prices_text(&p),
                num(&opt),
                ratio(&r)
            );
            let result = json!({ "prices": to_value(&p), "welfare": to_value(&sw), "opt": to_value(&opt), "ratio": to_value(&r) });
            (result, text)
        }
        Command::Poa { grid, .. } => {
            let eps = parse_eps(&grid.eps)?;
            let eqs = enumerate_grid_equilibria(
                &inst,
                &eps,
                &GridOptions {
                    max_points: grid.max_grid,
                },
            )?;
            let r = poa_pos(&inst, &eqs)?;
            holds = Some(r.equilibria > 0);
            let mut text = format!("optimum {}\n{} grid equilibria\n", num(&r.opt), r.equilibria);
            if let (Some(poa), Some(pos), Some(w), Some(b)) = (&r.poa, &r.pos, &r.worst_welfare, &r.best_welfare) {
                let _ = writeln!(
                    text,
                    "worst welfare {}, price of anarchy {}\nbest welfare {}, price of stability {}",
                    num(w),
                    ratio(poa),
                    num(b),
                    ratio(pos)
                );
            }
            (to_value(&r), text)
        }
        Command::HmAudit { prices, .. } => {
            let a = hm_bound_audit(&inst, &parse_prices(prices)?)?;
            holds = Some(a.holds);
            let text = format!(
                "sum of full-set values {}\nH_m times realized value {} (H_m = {})\nbound holds: {}, tight: {}\nrevenue {} <= realized value {}: {}\nper-item deviation bounds hold: {}\n",
                num(&a.lhs),
                num(&a.rhs),
                num(&a.harmonic),
                a.holds,
                a.tight,
                num(&a.revenue),
                num(&a.realized_value),
                a.revenue_bound_holds,
                a.deviation_bounds_hold
            );
            (to_value(&a), text)
        }
        Command::BudgetCheck(_) => {
            let r = decide_mc_pne(&inst)?;
            holds = Some(r.exists);
            let order: Vec<String> = r.sorted_order.iter().map(|i| (i + 1).to_string()).collect();
            let mut text = format!("items by v1 - v2: {}\n", order.join(", "));
            let bullets = |s: &mut String, bs: &[crate::budget::Bullet]| {
                for b in bs {
                    let _ = writeln!(
                        s,
                        "  {}: {}{}",
                        b.name,
                        b.holds,
                        if b.decided {
                            ""
                        } else {
                            " (undecided, subset cap reached)"
                        }
                    );
                }
            };
            let _ = writeln!(
                text,
                "budget unspent, boundary {}: pricing {} passes {}",
                r.unspent.boundary,
                prices_text(&r.unspent.pricing),
                r.unspent.passes
            );
            bullets(&mut text, &r.unspent.bullets);
            for sp in &r.spent {
                let pr: Vec<String> = sp.pricing.iter().map(num).collect();
                let _ = writeln!(
                    text,
                    "budget spent, k = {}: pricing ({}) passes {}",
                    sp.k,
                    pr.join(", "),
                    sp.passes
                );
                bullets(&mut text, &sp.bullets);
            }
            let _ = writeln!(
                text,
                "exists: {}{}",
                r.exists,
                if r.decided { "" } else { " (not fully decided)" }
            );
            for p in &r.equilibria {
                let _ = writeln!(text, "equilibrium {}", prices_text(p));
            }
            (to_value(&r), text)
        }
        Command::ReduceCosts { out, .. } => {
            let reduced = eliminate_costs(&inst)?;
            let reduced_name = name.as_ref().map(|n| format!("{n}_cost_free"));
            std::fs::write(out, to_json(&reduced, reduced_name.as_deref()))?;
            let d = digest(&reduced);
            let text = format!(
                "wrote {} ({} buyers, zero costs, sha256 {})\n",
                out.display(),
                reduced.m(),
                &d[..16]
            );
            (
                json!({ "out": out.display().to_string(), "m": reduced.m(), "digest": d }),
                text,
            )
        }
        Command::PreferenceGame {
            prices, prefs, grid, ..
        } => {
            let eps = parse_eps(&grid.eps)?;
            match (prices, prefs) {
                (Some(p), Some(pr)) => {
                    let p = parse_prices(p)?;
                    let prefs = parse_labels(pr, inst.m(), "buyer")?;
                    let v = verify_preference_game(&inst, &p, &prefs, &eps)?;
                    holds = Some(v.is_equilibrium);
                    (to_value(&v), verdict_text(&v))
                }
                _ => {
                    let eqs = enumerate_preference_equilibria(
                        &inst,
                        &eps,
                        &GridOptions {
                            max_points: grid.max_grid,
                        },
                    )?;
                    holds = Some(!eqs.is_empty());
                    let result = json!({ "epsilon": to_value(&eps), "count": eqs.len(), "equilibria": to_value(&eqs) });
                    (result, grid_list_text(&eqs))
                }
            }
        }
    };
    Ok(Report {
        command: cmd.name(),
        name,
        digest: digest(&inst),
        holds,
        warnings,
        result,
        text,
    })
}

/// Parses `args`, runs the command, prints the report and returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(&cli.command) {
        Ok(report) => {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", report.render(cli.format));
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

pub fn main() -> i32 {
    main_with(std::env::args_os())
}
