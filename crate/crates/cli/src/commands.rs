use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use serde_json::{json, Value};

use etalab::arith::{checked_pow, is_prime};
use etalab::bounds::{class_bound, g_p};
use etalab::cyclic::check_cyclic_cover;
use etalab::harness::{default_catalog, oracle_eta, run_all, run_suite, Report, Suite};
use etalab::series::{center, exponent};
use etalab::{
    eta, lower_central_series, maximal_cyclic_classes, realize_with_limit, Error, FiniteGroup, GroupSpec, Result,
};

use crate::{Cli, Command, Family, Format, Output};

pub fn run(cli: &Cli) -> Result<Output> {
    validate(cli)?;
    match &cli.command {
        Command::Eta { spec } => cmd_eta(cli, spec),
        Command::Invariants { spec } => cmd_invariants(cli, spec),
        Command::Cover { spec } => cmd_cover(cli, spec),
        Command::Verify { suite, timestamp } => cmd_verify(cli, suite, *timestamp),
        Command::Table {
            family,
            p,
            amax,
            nmax,
            lmax,
        } => match family {
            Family::Pxp => cmd_table_pxp(cli, *p, *amax),
            Family::BoundGrid => cmd_table_bounds(cli, *p, *nmax, *lmax),
        },
    }
}

fn validate(cli: &Cli) -> Result<()> {
    if cli.max_order < 2 {
        return Err(Error::Config(format!("--max-order must be at least 2, got {}", cli.max_order)));
    }
    if cli.primes.is_empty() {
        return Err(Error::Config("--primes is empty".into()));
    }
    if let Some(q) = cli.primes.iter().find(|&&q| !is_prime(q)) {
        return Err(Error::Config(format!("--primes: {q} is not prime")));
    }
    Ok(())
}

fn load(cli: &Cli, text: &str) -> Result<(GroupSpec, FiniteGroup)> {
    let spec = GroupSpec::parse(text)?;
    let group = realize_with_limit(&spec, cli.max_order)?;
    Ok((spec, group))
}

fn ok(text: String) -> Result<Output> {
    Ok(Output { text, ok: true })
}

fn json_text(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    text
}

fn cmd_eta(cli: &Cli, text: &str) -> Result<Output> {
    let (spec, g) = load(cli, text)?;
    let cyclic = g.is_cyclic();
    let classes = cli.verbose.then(|| maximal_cyclic_classes(&g));
    let e = match &classes {
        Some(c) => c.eta(),
        None => eta(&g),
    };
    match cli.format {
        Format::Human => {
            let mut out = format!("eta = {e}");
            if cyclic {
                out.push_str(" (cyclic; covering degenerate)");
            }
            out.push('\n');
            for (i, class) in classes.iter().flat_map(|c| &c.classes).enumerate() {
                writeln!(
                    out,
                    "class {}: generator {} of order {}, {} conjugate subgroup(s)",
                    i + 1,
                    class.generator,
                    class.subgroup_order,
                    class.members.len()
                )
                .unwrap();
            }
            ok(out)
        }
        Format::Structured => {
            let mut value = json!({ "spec": spec.to_string(), "order": g.order(), "eta": e, "cyclic": cyclic });
            if let Some(c) = &classes {
                value["classes"] = c
                    .classes
                    .iter()
                    .map(|class| {
                        json!({
                            "generator": class.generator.0,
                            "order": class.subgroup_order,
                            "conjugates": class.members.len(),
                        })
                    })
                    .collect();
            }
            ok(json_text(&value))
        }
        Format::Csv => {
            let mut out = String::from("spec,order,eta,cyclic\n");
            writeln!(out, "\"{spec}\",{},{e},{cyclic}", g.order()).unwrap();
            ok(out)
        }
    }
}

fn cmd_invariants(cli: &Cli, text: &str) -> Result<Output> {
    let (spec, g) = load(cli, text)?;
    let prime_power = g.prime_power_order();
    let series = lower_central_series(&g).ok();
    let z = center(&g);
    let last_exp = series.as_ref().map(|s| exponent(&g, s.last_nontrivial()));

    let mut records: Vec<(&str, Value)> = vec![
        ("order", json!(g.order())),
        ("p", json!(prime_power.map(|(p, _)| p))),
        ("n", json!(prime_power.map(|(_, n)| n))),
        ("nilpotent", json!(series.is_some())),
        ("class", json!(series.as_ref().map(|s| s.class))),
        ("series_orders", json!(series.as_ref().map(|s| s.orders()))),
        ("center_order", json!(z.len())),
        ("exponent_last_term", json!(last_exp)),
    ];
    match cli.format {
        Format::Structured => {
            records.insert(0, ("spec", json!(spec.to_string())));
            let map: serde_json::Map<String, Value> = records.into_iter().map(|(k, v)| (k.to_owned(), v)).collect();
            ok(json_text(&Value::Object(map)))
        }
        Format::Human | Format::Csv => {
            let human = cli.format == Format::Human;
            let mut out = if human { String::new() } else { String::from("invariant,value\n") };
            for (key, value) in records {
                if human && key == "nilpotent" {
                    continue;
                }
                let shown = match (&value, key) {
                    (Value::Null, "p" | "n") => "not a prime power".to_owned(),
                    (Value::Null, _) => "not nilpotent".to_owned(),
                    (Value::Array(items), _) => items.iter().map(Value::to_string).collect::<Vec<_>>().join(","),
                    _ => value.to_string(),
                };
                if human {
                    let label = match key {
                        "series_orders" => "series orders",
                        "center_order" => "center order",
                        "exponent_last_term" => "exponent(G^l)",
                        k => k,
                    };
                    writeln!(out, "{label} = {shown}").unwrap();
                } else if shown.contains(',') || shown.contains(' ') {
                    writeln!(out, "{key},\"{shown}\"").unwrap();
                } else {
                    writeln!(out, "{key},{shown}").unwrap();
                }
            }
            ok(out)
        }
    }
}

fn cmd_cover(cli: &Cli, text: &str) -> Result<Output> {
    let (spec, g) = load(cli, text)?;
    let report = check_cyclic_cover(&g);
    let good = report.degenerate || (report.is_cover && report.is_irredundant);
    let text = match cli.format {
        Format::Structured => json_text(&json!({
            "spec": spec.to_string(),
            "components": report.components.len(),
            "degenerate": report.degenerate,
            "cover": report.is_cover,
            "irredundant": report.is_irredundant,
            "component_orders": report.components.iter().map(|c| c.len()).collect::<Vec<_>>(),
            "witnesses": report.witnesses.iter().map(|w| w.map(|x| x.0)).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("component,order,witness\n");
            for (i, (c, w)) in report.components.iter().zip(&report.witnesses).enumerate() {
                let w = w.map(|x| x.to_string()).unwrap_or_default();
                writeln!(out, "{i},{},{w}", c.len()).unwrap();
            }
            out
        }
        Format::Human => {
            let mut out = format!(
                "components = {}\ncover = {}\nirredundant = {}\n",
                report.components.len(),
                report.is_cover,
                report.is_irredundant
            );
            if report.degenerate {
                out.push_str("cyclic: the only maximal cyclic subgroup is the group itself\n");
            }
            if cli.verbose {
                for (c, w) in report.components.iter().zip(&report.witnesses) {
                    let w = w.map(|x| x.to_string()).unwrap_or_else(|| "none".into());
                    writeln!(out, "order {} witness {w}", c.len()).unwrap();
                }
            }
            out
        }
    };
    Ok(Output { text, ok: good })
}

fn cmd_verify(cli: &Cli, suite: &str, timestamp: bool) -> Result<Output> {
    let suites: Option<Suite> = if suite == "all" { None } else { Some(suite.parse()?) };
    let catalog = default_catalog(cli.max_order, &cli.primes)?;
    let mut reports: Vec<Report> = match suites {
        Some(s) => vec![run_suite(s, &catalog)?],
        None => run_all(&catalog)?,
    };
    if timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        for r in &mut reports {
            r.timestamp = Some(secs.to_string());
        }
    }
    let passed = reports.iter().all(Report::passed);
    let text = match cli.format {
        Format::Human => {
            let mut out = format!("catalog: {} groups, max order {}, primes {:?}\n", catalog.len(), cli.max_order, cli.primes);
            for r in &reports {
                out.push_str(&r.summary());
            }
            out
        }
        Format::Structured => match reports.as_slice() {
            [one] => one.to_json()?,
            many => {
                let mut text = serde_json::to_string_pretty(many).map_err(|e| Error::Serialize(e.to_string()))?;
                text.push('\n');
                text
            }
        },
        Format::Csv => {
            let mut out = String::new();
            for (i, r) in reports.iter().enumerate() {
                let csv = r.to_csv()?;
                let body = if i == 0 { csv.as_str() } else { csv.split_once('\n').map_or("", |(_, rest)| rest) };
                out.push_str(body);
            }
            out
        }
    };
    Ok(Output { text, ok: passed })
}

fn bigint_json(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(small) => json!(small),
        Err(_) => json!(v.to_string()),
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Config(format!("--p: {p} is not prime")))
    }
}

fn cmd_table_pxp(cli: &Cli, p: u64, amax: u32) -> Result<Output> {
    require_prime(p)?;
    let mut rows = Vec::new();
    let mut all_match = true;
    for a in 1..=amax {
        for b in 1..=a {
            let formula = g_p::<BigInt>(p, a, b);
            let fits = checked_pow(p, a + b).is_some_and(|o| o <= cli.max_order);
            let brute = if fits {
                let spec = GroupSpec::Product(vec![GroupSpec::Cyclic(p.pow(a)), GroupSpec::Cyclic(p.pow(b))]);
                Some(oracle_eta(&realize_with_limit(&spec, cli.max_order)?))
            } else {
                None
            };
            let matched = brute.map(|e| BigInt::from(e) == formula);
            all_match &= matched.unwrap_or(true);
            rows.push((a, b, brute, formula, matched));
        }
    }
    let text = match cli.format {
        Format::Structured => json_text(&Value::Array(
            rows.iter()
                .map(|(a, b, brute, formula, matched)| {
                    json!({
                        "p": p, "a": a, "b": b,
                        "eta_bruteforce": brute,
                        "g_p": bigint_json(formula),
                        "match": matched.map_or(json!("skipped"), |m| json!(m)),
                    })
                })
                .collect(),
        )),
        Format::Human | Format::Csv => {
            let mut out = String::from("p,a,b,eta_bruteforce,g_p,match\n");
            for (a, b, brute, formula, matched) in &rows {
                match (brute, matched) {
                    (Some(e), Some(m)) => writeln!(out, "{p},{a},{b},{e},{formula},{m}").unwrap(),
                    _ => writeln!(out, "{p},{a},{b},skipped,{formula},skipped").unwrap(),
                }
            }
            out
        }
    };
    Ok(Output { text, ok: all_match })
}

/// Rows for `2 <= n <= nmax` and `1 <= l <= min(lmax, n - 1)`: a group of
/// order `p^n` has class at most `n - 1`.
fn cmd_table_bounds(cli: &Cli, p: u64, nmax: u32, lmax: u32) -> Result<Output> {
    require_prime(p)?;
    let mut rows = Vec::new();
    for n in 2..=nmax {
        for l in 1..=lmax.min(n - 1) {
            rows.push((n, l, class_bound::<BigInt>(p, n, l)?));
        }
    }
    let text = match cli.format {
        Format::Structured => json_text(&Value::Array(
            rows.iter()
                .map(|(n, l, b)| {
                    json!({ "p": p, "n": n, "l": l, "bound_num": bigint_json(b.numer()), "bound_den": bigint_json(b.denom()) })
                })
                .collect(),
        )),
        Format::Human | Format::Csv => {
            let mut out = String::from("p,n,l,bound_num,bound_den\n");
            for (n, l, b) in &rows {
                writeln!(out, "{p},{n},{l},{},{}", b.numer(), b.denom()).unwrap();
            }
            out
        }
    };
    ok(text)
}
