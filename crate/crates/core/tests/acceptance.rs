//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` still run and still print FAIL; the
//! process only fails when the observed outcomes differ from that list.

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use postedprice::budget::{budgeted_verify, decide_mc_pne};
use postedprice::characterize::{cost_correspondence, mc_condition, unique_mc_pricing, uniqueness_condition};
use postedprice::cli::{run, Cli, Report};
use postedprice::epsne::construct_eps_ne;
use postedprice::equilibrium::{enumerate_grid_equilibria, verify, GridOptions};
use postedprice::welfare::{hm_bound_audit, opt_welfare, poa_pos, social_welfare, Ratio};
use postedprice::{fixtures, generate, Buyer, ItemSet, MarketInstance, PriceVector, Value};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;

/// Criteria whose expected outcome cannot be met, with the reason.
const KNOWN_FAILURES: &[(usize, &str)] = &[(
    2,
    "at (10,10,20) seller 3 earns 20 but 21 at price 21/2, where both buyers take {2,3}; the stated equilibrium does not exist",
)];

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn cli(args: &[&str]) -> Report {
    let cli = Cli::try_parse_from(std::iter::once("postedprice").chain(args.iter().copied())).expect("valid args");
    run(&cli.command).expect("command runs")
}

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fractions(p: &[i64]) -> serde_json::Value {
    json!(p.iter().map(|x| format!("{x}/1")).collect::<Vec<_>>())
}

fn grid(inst: &MarketInstance, eps: &Value) -> Vec<postedprice::equilibrium::EquilibriumVerdict> {
    enumerate_grid_equilibria(inst, eps, &GridOptions::default()).expect("grid fits")
}

fn unique_equilibrium() -> Check {
    let v = cli(&[
        "verify",
        "@submodular_then_additive",
        "--prices",
        "10,12,14",
        "--eps",
        "0",
    ]);
    ensure(v.holds == Some(true), "(10,12,14) is not a pure equilibrium")?;
    ensure(v.result["market_clearing"] == json!(true), "(10,12,14) does not clear")?;
    let g = cli(&["grid-equilibria", "@submodular_then_additive", "--eps", "0"]);
    ensure(
        g.result["count"] == json!(1),
        format!("{} grid equilibria", g.result["count"]),
    )?;
    ensure(
        g.result["equilibria"][0]["prices"] == fractions(&[10, 12, 14]),
        "the grid equilibrium is not (10,12,14)",
    )?;
    Ok("verify holds and clears; grid has exactly (10,12,14)".into())
}

fn non_clearing_equilibrium() -> Check {
    let mut notes = Vec::new();
    let c = cli(&["characterize", "@submodular_pair"]);
    notes.push(format!("characterize passes: {}", c.holds == Some(true)));
    let u = cli(&["unique-pricing", "@submodular_pair"]);
    let pricing_ok = u.result["pricing"] == fractions(&[5, 10, 10])
        && u.result["verdict"]["is_equilibrium"] == json!(true)
        && u.result["verdict"]["market_clearing"] == json!(true);
    notes.push(format!(
        "unique-pricing (5,10,10) clears as a pure equilibrium: {pricing_ok}"
    ));
    let v = cli(&["verify", "@submodular_pair", "--prices", "10,10,20"]);
    let ne = v.holds == Some(true);
    let clearing = v.result["market_clearing"] == json!(true);
    notes.push(format!("(10,10,20) pure equilibrium: {ne}, clearing: {clearing}"));
    if !ne {
        for s in v.result["sellers"].as_array().unwrap() {
            if s["best"]["profit"] != s["current_profit"] {
                notes.push(format!(
                    "seller {} gains from {} to {} at price {}",
                    s["seller"], s["current_profit"], s["best"]["profit"], s["best"]["price"]
                ));
            }
        }
    }
    let joined = notes.join("; ");
    ensure(c.holds == Some(true) && pricing_ok && ne && !clearing, joined.clone())?;
    Ok(joined)
}

fn empty_grid(fixture: &str, eps: &str) -> Check {
    let g = cli(&["grid-equilibria", fixture, "--eps", eps]);
    ensure(
        g.result["count"] == json!(0),
        format!("{} equilibria on the grid", g.result["count"]),
    )?;
    ensure(g.exit_code() == 2, "empty grid should exit with status 2")?;
    Ok(format!("no grid equilibrium at ε = {eps}"))
}

fn tie_priority_empty() -> Check {
    empty_grid("@tie_priority_no_equilibrium", "0")
}

fn additive_first_empty() -> Check {
    empty_grid("@additive_first_no_eps_ne", "69/10")
}

fn condition_fails() -> Check {
    let c = cli(&["characterize", "@clearing_condition_fails"]);
    ensure(c.holds == Some(false), "condition unexpectedly passes")?;
    let item1 = &c.result["report"]["items"][0];
    ensure(item1["passes"] == json!(false), "item 1 passes")?;
    let broken = item1["ratio_checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|q| q["lhs"] == json!("70/1") && q["rhs"] == json!("20/1"));
    ensure(broken, "item 1 does not fail with 70 > 2·10")?;
    empty_grid("@clearing_condition_fails", "49/10")?;
    Ok("item 1 fails with 70 > 20; no grid equilibrium at ε = 49/10".into())
}

fn preference_game_empty() -> Check {
    let r = cli(&["preference-game", "@preference_game_no_equilibrium"]);
    ensure(
        r.result["count"] == json!(0),
        format!("{} equilibria", r.result["count"]),
    )?;
    Ok("no profile of grid prices and preferences is an equilibrium".into())
}

fn harmonic_tight() -> Check {
    let inst = fixtures::load("harmonic_m5").unwrap();
    // every buyer takes the free item
    let opt_direct: Value = inst.buyers().iter().map(|b| b.top_marginal(0)).sum();
    let h5 = Value::ratio(137, 60);
    ensure(opt_direct == h5, "oracle optimum differs from 137/60")?;
    ensure(opt_welfare(&inst).unwrap() == h5, "opt_welfare differs from 137/60")?;
    let p = PriceVector::from_ints(&[1]).unwrap();
    let v = verify(&inst, &p, &Value::zero()).unwrap();
    ensure(v.is_equilibrium, "p = 1 is not an equilibrium")?;
    ensure(
        social_welfare(&inst, &p).unwrap() == Value::one(),
        "welfare at p = 1 is not 1",
    )?;
    let a = hm_bound_audit(&inst, &p).unwrap();
    ensure(a.holds && a.tight, "audit is not tight")?;
    ensure(a.harmonic == h5, "harmonic number is not H_5")?;
    let w = cli(&["welfare", "@harmonic_m5", "--prices", "1"]);
    ensure(w.result["ratio"] == json!("137/60"), "welfare ratio is not H_5")?;
    Ok("OPT = 137/60, SW(1) = 1, bound tight".into())
}

fn harmonic_bound_sweep() -> Check {
    let mut rng = StdRng::seed_from_u64(8);
    let (mut eqs, mut violations) = (0usize, Vec::new());
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let inst = generate::unlimited_submodular(&mut rng, n, m, 20);
        let h = Value::harmonic(m);
        for v in grid(&inst, &Value::zero()) {
            eqs += 1;
            let full = ItemSet::full(n);
            let lhs: Value = inst.buyers().iter().map(|b| b.valuation().eval(&full).unwrap()).sum();
            let realized: Value = inst
                .buyers()
                .iter()
                .zip(&v.allocation.bundles)
                .map(|(b, s)| b.valuation().eval(s).unwrap())
                .sum();
            let audit = hm_bound_audit(&inst, &v.prices).unwrap();
            if lhs > &h * &realized || !audit.holds {
                violations.push(format!("{} at {}", lhs, v.prices));
            }
        }
    }
    ensure(violations.is_empty(), format!("violations: {violations:?}"))?;
    Ok(format!("{eqs} grid equilibria, zero violations"))
}

fn condition_sweep() -> Check {
    let mut rng = StdRng::seed_from_u64(9);
    let (mut pass, mut fail) = (0, 0);
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let mut inst = generate::unlimited_submodular(&mut rng, n, m, 20);
        if rng.gen_bool(0.3) {
            inst = inst.with_costs(generate::costs(&mut rng, n, 4)).unwrap();
        }
        if mc_condition(&inst).unwrap().passes {
            pass += 1;
            let p = unique_mc_pricing(&inst).unwrap();
            let v = verify(&inst, &p, &Value::zero()).unwrap();
            ensure(v.is_equilibrium && v.market_clearing, format!("{p} fails on {inst:?}"))?;
        } else {
            fail += 1;
            ensure(
                !grid(&inst, &Value::zero()).iter().any(|v| v.market_clearing),
                format!("clearing equilibrium despite failing condition: {inst:?}"),
            )?;
        }
    }
    Ok(format!(
        "{pass} passing instances verified, {fail} failing without clearing equilibria"
    ))
}

fn uniqueness_sweep() -> Check {
    let mut rng = StdRng::seed_from_u64(10);
    let (mut got, mut tries) = (0, 0);
    while got < 100 {
        tries += 1;
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let inst = generate::unlimited_mostly_additive(&mut rng, n, m, 20);
        if !uniqueness_condition(&inst).unwrap().applies {
            continue;
        }
        got += 1;
        let eqs = grid(&inst, &Value::zero());
        let p = unique_mc_pricing(&inst).unwrap();
        ensure(
            eqs.len() == 1 && eqs[0].prices == p,
            format!("{} equilibria, expected only {p}: {inst:?}", eqs.len()),
        )?;
        let r = poa_pos(&inst, &eqs).unwrap();
        ensure(
            r.poa == Some(Ratio::Finite(Value::one())),
            format!("POA {:?} on {inst:?}", r.poa),
        )?;
    }
    Ok(format!(
        "100 instances ({tries} drawn), each with one equilibrium and POA 1"
    ))
}

fn ascent_sweep() -> Check {
    let eps = Value::ratio(1, 8);
    let mut rng = StdRng::seed_from_u64(11);
    let mut raises = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let inst = generate::single_copy_submodular_first(&mut rng, n, 2, 20);
        let out = construct_eps_ne(&inst, &eps).map_err(|e| format!("{e} on {inst:?}"))?;
        raises += out.trace.raises.len();
        let v = verify(&inst, &out.prices, &eps).unwrap();
        ensure(v.is_equilibrium, format!("{} is not an ε-equilibrium", out.prices))?;
        ensure(
            inst.is_market_clearing(&out.prices).unwrap(),
            format!("{} does not clear", out.prices),
        )?;
    }
    let fixed = construct_eps_ne(&fixtures::load("submodular_then_additive").unwrap(), &eps).unwrap();
    ensure(
        fixed.prices == PriceVector::from_ints(&[10, 12, 14]).unwrap(),
        format!("fixture gives {}", fixed.prices),
    )?;
    Ok(format!(
        "100 instances, {raises} raises, all verified; fixture gives (10,12,14)"
    ))
}

fn cost_sweep() -> Check {
    let mut rng = StdRng::seed_from_u64(12);
    let mut nonempty = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=2);
        let inst = generate::single_copy(&mut rng, n, m, 12);
        let inst = inst.with_costs(generate::costs(&mut rng, n, 8)).unwrap();
        let eps = [Value::zero(), Value::ratio(1, 2), Value::from_int(2)][rng.gen_range(0..3)].clone();
        let r = cost_correspondence(&inst, &eps, &GridOptions::default()).unwrap();
        ensure(r.original.len() == r.reduced.len(), "sets differ in size")?;
        ensure(r.matches, format!("{:?} vs {:?} on {inst:?}", r.original, r.reduced))?;
        nonempty += usize::from(!r.original.is_empty());
    }
    Ok(format!("100 instances correspond, {nonempty} with equilibria"))
}

fn lcm_upto(n: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    (1..=n).fold(1, |a, b| a / gcd(a, b) * b)
}

/// Market-clearing pure equilibria on the lattice of step `1/step` inside
/// `p <= min(v1, v2)`, either leaving budget unspent at the top corner or
/// spending it exactly.
fn lattice_oracle(inst: &MarketInstance, v1: &[i64], v2: &[i64], budget: i64, step: i64) -> Vec<PriceVector> {
    let n = v1.len();
    let hi: Vec<i64> = (0..n).map(|i| v1[i].min(v2[i]) * step).collect();
    let mut cands: Vec<Vec<i64>> = Vec::new();
    if hi.iter().sum::<i64>() < budget * step {
        cands.push(hi.clone());
    }
    let mut idx = vec![0i64; n - 1];
    'face: loop {
        let last = budget * step - idx.iter().sum::<i64>();
        if (0..=hi[n - 1]).contains(&last) {
            let mut c = idx.clone();
            c.push(last);
            cands.push(c);
        }
        for k in 0..n - 1 {
            idx[k] += 1;
            if idx[k] <= hi[k] {
                continue 'face;
            }
            idx[k] = 0;
        }
        break;
    }
    cands
        .into_iter()
        // a seller charging under half of buyer 2's value gains by selling to buyer 2 alone
        .filter(|c| (0..n).all(|i| v2[i] * step <= 2 * c[i]))
        .map(|c| PriceVector::new(c.iter().map(|&x| Value::ratio(x, step)).collect()).unwrap())
        .filter(|p| {
            let v = budgeted_verify(inst, p, &Value::zero()).unwrap();
            v.is_equilibrium && v.market_clearing
        })
        .collect()
}

fn budget_sweep() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    let mut exists = 0;
    for t in 0..100 {
        let n = if t % 2 == 0 { 2 } else { 3 };
        let v1: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=8)).collect();
        let v2: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=8)).collect();
        let b = rng.gen_range(1..=v1.iter().sum::<i64>() + 2);
        let ints = |v: &[i64]| v.iter().map(|&x| Value::from_int(x)).collect::<Vec<_>>();
        let inst = MarketInstance::unlimited(vec![
            Buyer::additive(ints(&v1)).unwrap().with_budget(b.into()).unwrap(),
            Buyer::additive(ints(&v2)).unwrap(),
        ])
        .unwrap();
        let r = decide_mc_pne(&inst).unwrap();
        let o = lattice_oracle(&inst, &v1, &v2, b, 2 * lcm_upto(n as i64));
        let agree = r.decided && r.exists == !o.is_empty() && r.equilibria.iter().all(|p| o.contains(p));
        ensure(
            agree,
            format!("v1={v1:?} v2={v2:?} B={b}: conditions {:?}, oracle {o:?}", r.equilibria),
        )?;
        exists += usize::from(r.exists);
    }
    for (fixture, want) in [("@budget_unspent", [6, 7]), ("@budget_spent", [6, 6])] {
        let r = cli(&["budget-check", fixture]);
        ensure(r.holds == Some(true), format!("{fixture}: no equilibrium"))?;
        ensure(
            r.result["equilibria"][0] == fractions(&want),
            format!("{fixture}: {}", r.result["equilibria"]),
        )?;
    }
    Ok(format!(
        "100 instances agree ({exists} with equilibria); fixtures give (6,7) and (6,6)"
    ))
}

fn subadditive_response() -> Check {
    let r = cli(&[
        "best-response",
        "@subadditive_not_submodular",
        "--buyer",
        "1",
        "--prices",
        "9,9,9",
    ]);
    ensure(
        r.result["bundle"] == json!([3]),
        format!("bundle {}", r.result["bundle"]),
    )?;
    Ok("buyer takes {3}, items 1 and 2 stay unsold".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        (
            "unique equilibrium of submodular-then-additive market",
            unique_equilibrium,
        ),
        (
            "non-clearing equilibrium beside the clearing pricing",
            non_clearing_equilibrium,
        ),
        ("tie priority market has no grid equilibrium", tie_priority_empty),
        (
            "additive-first market has no grid ε-equilibrium below 7",
            additive_first_empty,
        ),
        ("condition fails and no grid ε-equilibrium below 5", condition_fails),
        ("preference game has no equilibrium", preference_game_empty),
        ("harmonic market meets the welfare bound with equality", harmonic_tight),
        ("welfare bound over random grid equilibria", harmonic_bound_sweep),
        ("clearing condition decides clearing equilibria", condition_sweep),
        ("strict conditions give a unique equilibrium", uniqueness_sweep),
        ("price ascent reaches a clearing ε-equilibrium", ascent_sweep),
        ("costs correspond to an extra buyer", cost_sweep),
        ("budget conditions agree with the lattice oracle", budget_sweep),
        ("subadditive buyer leaves items unsold", subadditive_response),
    ];
    let mut surprises = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let id = k + 1;
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_FAILURES.iter().find(|(n, _)| *n == id).map(|(_, why)| *why);
        match (&outcome, known) {
            (Ok(detail), None) => println!("criterion {id}: {title}: PASS ({detail}) [{secs:.2}s]"),
            (Err(why), Some(reason)) => {
                println!("criterion {id}: {title}: FAIL ({why}) [{secs:.2}s]");
                println!("    known failure: {reason}");
            }
            (Err(why), None) => {
                surprises += 1;
                println!("criterion {id}: {title}: FAIL ({why}) [{secs:.2}s]");
            }
            (Ok(detail), Some(_)) => {
                surprises += 1;
                println!("criterion {id}: {title}: PASS ({detail}) [{secs:.2}s], listed as a known failure");
            }
        }
    }
    if surprises == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
