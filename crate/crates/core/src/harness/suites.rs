use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::arith::{prime_power, primes_up_to};
use crate::bounds::{
    abelian_bound, check_gp_minimum, critical_point_positivity, g_p, main_theorem_check,
    odd_abelian_bound, product_bound, size_bound_from_eta, BoundCheck, Context, Relation,
};
use crate::builders::GroupSpec;
use crate::cyclic::{check_cyclic_cover, eta, maximal_generator_flags, maximal_generator_flags_by_powers};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::series::{center, check_lemma_orders_with, lower_central_series, LowerCentralSeries};

use super::catalog::{Catalog, CatalogEntry};
use super::oracle::{oracle_eta, sample_normal_subgroups};
use super::report::Report;

/// Largest `n` scanned by the gp-minimum suite.
pub const GP_MAX_N: u32 = 20;
/// Primes up to this bound get a critical-point positivity check.
pub const CRITICAL_PRIME_LIMIT: u64 = 10_000;

const EXTERNAL_NOTE: &str =
    "fact cited from companion work without proof; verified empirically on the catalog";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    OracleCross,
    FormulaAbelian,
    EtaFamilies,
    GpMinimum,
    ProductBound,
    AbelianBound,
    OddBound,
    LemmaOrders,
    MainTheorem,
    SizeRewrite,
    QuotientMonotone,
    CenterBound,
    CoverIrredundant,
}

impl Suite {
    /// Every suite, in run order; oracle-cross comes first.
    pub const ALL: [Suite; 13] = [
        Suite::OracleCross,
        Suite::FormulaAbelian,
        Suite::EtaFamilies,
        Suite::GpMinimum,
        Suite::ProductBound,
        Suite::AbelianBound,
        Suite::OddBound,
        Suite::LemmaOrders,
        Suite::MainTheorem,
        Suite::SizeRewrite,
        Suite::QuotientMonotone,
        Suite::CenterBound,
        Suite::CoverIrredundant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OracleCross => "oracle-cross",
            Suite::FormulaAbelian => "formula-abelian",
            Suite::EtaFamilies => "eta-families",
            Suite::GpMinimum => "gp-minimum",
            Suite::ProductBound => "product-bound",
            Suite::AbelianBound => "abelian-bound",
            Suite::OddBound => "odd-bound",
            Suite::LemmaOrders => "lemma-orders",
            Suite::MainTheorem => "main-theorem",
            Suite::SizeRewrite => "size-rewrite",
            Suite::QuotientMonotone => "quotient-monotone",
            Suite::CenterBound => "center-bound",
            Suite::CoverIrredundant => "cover-irredundant",
        }
    }

    /// Comma-separated list of all names.
    pub fn valid_names() -> String {
        Suite::ALL.map(Suite::name).join(", ")
    }

    /// Whether the suite consumes `eta` values of catalog groups.
    pub fn uses_eta(self) -> bool {
        !matches!(self, Suite::OracleCross | Suite::GpMinimum | Suite::LemmaOrders | Suite::CoverIrredundant)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite {
                name: s.to_owned(),
                valid: Suite::valid_names(),
            })
    }
}

/// A realized catalog entry with its invariants computed on first use.
struct Subject<'a> {
    entry: &'a CatalogEntry,
    group: FiniteGroup,
    prime_power: Option<(u64, u32)>,
    eta: Option<usize>,
    series: Option<Result<LowerCentralSeries>>,
}

impl<'a> Subject<'a> {
    fn new(entry: &'a CatalogEntry) -> Result<Self> {
        let group = entry.realize()?;
        Ok(Subject {
            entry,
            prime_power: group.prime_power_order(),
            group,
            eta: None,
            series: None,
        })
    }

    fn spec(&self) -> &str {
        &self.entry.text
    }

    fn eta(&mut self) -> usize {
        *self.eta.get_or_insert_with(|| eta(&self.group))
    }

    fn series(&mut self) -> Result<&LowerCentralSeries> {
        let group = &self.group;
        match self.series.get_or_insert_with(|| lower_central_series(group)) {
            Ok(s) => Ok(s),
            Err(_) => Err(Error::NotNilpotent),
        }
    }
}

fn int(v: impl Into<BigInt>) -> Ratio<BigInt> {
    Ratio::from_integer(v.into())
}

/// `(p, k)` if `spec` is `cyclic(p^k)` with `k >= 1`.
fn cyclic_prime_power(spec: &GroupSpec) -> Option<(u64, u32)> {
    match spec {
        GroupSpec::Cyclic(m) => prime_power(*m),
        _ => None,
    }
}

/// For an abelian product of cyclic p-power factors: `(p, exponents)`.
fn abelian_factors(spec: &GroupSpec) -> Option<(u64, Vec<u32>)> {
    if !matches!(spec, GroupSpec::Product(_)) {
        return None;
    }
    let parts: Option<Vec<(u64, u32)>> = spec.factors().into_iter().map(cyclic_prime_power).collect();
    let parts = parts?;
    let p = parts.first()?.0;
    parts
        .iter()
        .all(|&(q, _)| q == p)
        .then(|| (p, parts.iter().map(|&(_, k)| k).collect()))
}

fn new_report(suite: Suite) -> Report {
    let mut report = Report::new(suite.name());
    if matches!(suite, Suite::QuotientMonotone | Suite::CenterBound) {
        report.note = Some(EXTERNAL_NOTE.to_owned());
    }
    report
}

pub fn run_suite(suite: Suite, catalog: &Catalog) -> Result<Report> {
    Ok(run_suites(&[suite], catalog)?.pop().expect("one report per suite"))
}

/// Runs several suites in one pass over the catalog, realizing each entry
/// once. Reports come back in the order of `suites`.
pub fn run_suites(suites: &[Suite], catalog: &Catalog) -> Result<Vec<Report>> {
    let mut reports: Vec<Report> = suites.iter().map(|&s| new_report(s)).collect();
    for (&suite, report) in suites.iter().zip(&mut reports) {
        if suite == Suite::GpMinimum {
            gp_minimum(catalog, report)?;
        }
    }
    if suites.iter().all(|&s| s == Suite::GpMinimum) {
        return Ok(reports);
    }
    for entry in &catalog.entries {
        let mut subject = Subject::new(entry)?;
        for (&suite, report) in suites.iter().zip(&mut reports) {
            run_entry(suite, &mut subject, catalog, report)?;
        }
    }
    Ok(reports)
}

fn run_entry(suite: Suite, s: &mut Subject, catalog: &Catalog, report: &mut Report) -> Result<()> {
    match suite {
        Suite::GpMinimum => {}
        Suite::OracleCross => oracle_cross(s, report),
        Suite::FormulaAbelian => formula_abelian(s, report),
        Suite::EtaFamilies => eta_families(s, report),
        Suite::ProductBound => product_bound_suite(s, catalog, report)?,
        Suite::AbelianBound => abelian_bound_suite(s, report, false)?,
        Suite::OddBound => abelian_bound_suite(s, report, true)?,
        Suite::LemmaOrders => lemma_orders(s, report)?,
        Suite::MainTheorem => main_theorem(s, report)?,
        Suite::SizeRewrite => size_rewrite(s, report)?,
        Suite::QuotientMonotone => quotient_monotone(s, report)?,
        Suite::CenterBound => center_bound(s, report),
        Suite::CoverIrredundant => cover_irredundant(s, report),
    }
    Ok(())
}

/// Runs a suite given by name; unknown names are a usage error.
pub fn run_suite_named(name: &str, catalog: &Catalog) -> Result<Report> {
    run_suite(name.parse()?, catalog)
}

/// Runs every suite, oracle-cross first. If oracle-cross fails, suites that
/// rely on `eta` are reported as skipped instead of run.
pub fn run_all(catalog: &Catalog) -> Result<Vec<Report>> {
    let oracle = run_suite(Suite::OracleCross, catalog)?;
    let trusted = oracle.passed();
    let rest: Vec<Suite> = Suite::ALL[1..]
        .iter()
        .copied()
        .filter(|s| trusted || !s.uses_eta())
        .collect();
    let mut ran = run_suites(&rest, catalog)?.into_iter();
    let mut reports = vec![oracle];
    for suite in &Suite::ALL[1..] {
        if rest.contains(suite) {
            reports.push(ran.next().expect("one report per suite"));
        } else {
            let mut report = new_report(*suite);
            for entry in &catalog.entries {
                report.push_skip(&entry.text, suite.name(), "oracle-cross failed; eta values untrusted");
            }
            reports.push(report);
        }
    }
    Ok(reports)
}

fn oracle_cross(s: &mut Subject, report: &mut Report) {
    let fast = s.eta();
    let slow = oracle_eta(&s.group);
    let check = BoundCheck::new(
        "eta = oracle_eta",
        int(fast),
        Relation::Eq,
        int(slow),
        Context::new().with("eta", fast).with("order", s.group.order()),
    );
    report.push_check(s.spec(), &check);

    let label = "p-th power shortcut agrees with containment test";
    match s.prime_power {
        Some((p, n)) => {
            let generic = maximal_generator_flags(&s.group);
            let shortcut = maximal_generator_flags_by_powers(&s.group, p);
            let agree = generic.iter().zip(&shortcut).filter(|(a, b)| a == b).count();
            let check = BoundCheck::new(
                label,
                int(agree),
                Relation::Eq,
                int(s.group.order()),
                Context::new().with("p", p).with("n", n),
            );
            report.push_check(s.spec(), &check);
        }
        None => report.push_skip(s.spec(), label, "order is not a prime power"),
    }
}

fn formula_abelian(s: &mut Subject, report: &mut Report) {
    let label = "eta = g_p(a,b)";
    match abelian_factors(&s.entry.spec) {
        Some((p, ks)) if ks.len() == 2 => {
            let (a, b) = (ks[0].max(ks[1]), ks[0].min(ks[1]));
            let e = s.eta();
            let check = BoundCheck::new(
                label,
                int(e),
                Relation::Eq,
                int(g_p::<BigInt>(p, a, b)),
                Context::new().with("p", p).with("a", a).with("b", b).with("n", a + b).with("eta", e),
            );
            report.push_check(s.spec(), &check);
        }
        _ => report.push_skip(s.spec(), label, "not C_{p^a} x C_{p^b}"),
    }
}

fn eta_families(s: &mut Subject, report: &mut Report) {
    let label = "eta = 3";
    let two_group = s.prime_power.is_some_and(|(p, _)| p == 2);
    match s.entry.spec {
        GroupSpec::Dihedral(_) | GroupSpec::Quaternion(_) | GroupSpec::Semidihedral(_) if two_group => {
            let e = s.eta();
            let n = s.prime_power.unwrap().1;
            let check = BoundCheck::new(label, int(e), Relation::Eq, int(3), Context::new().with("p", 2).with("n", n).with("eta", e));
            report.push_check(s.spec(), &check);
        }
        _ => report.push_skip(s.spec(), label, "not a dihedral, quaternion or semidihedral 2-group"),
    }
}

fn gp_minimum(catalog: &Catalog, report: &mut Report) -> Result<()> {
    for &p in &catalog.primes {
        for n in 2..=GP_MAX_N {
            let m = check_gp_minimum::<BigInt>(p, n)?;
            let spec = format!("grid(p={p},n={n})");
            report.push_check(&spec, &m.check);
            let b_min = m.values.iter().find(|(_, v)| *v == m.minimum).map(|(b, _)| *b).unwrap();
            report.push_outcome(
                &spec,
                "minimum of g_p(n-b,b) attained at b = 1",
                Context::new().with("p", p).with("n", n).with("b_min", b_min),
                m.attained_at_one,
                (!m.attained_at_one).then(|| format!("minimum at b = {b_min}")),
            );
        }
    }
    for p in primes_up_to(CRITICAL_PRIME_LIMIT) {
        let ok = critical_point_positivity::<f64>(p);
        report.push_outcome(
            &format!("critical(p={p})"),
            "(p+1)/(2(p-1)) - 1/ln p > 0",
            Context::new().with("p", p),
            ok,
            (!ok).then(|| "positivity not certified".to_owned()),
        );
    }
    Ok(())
}

fn product_bound_suite(s: &mut Subject, catalog: &Catalog, report: &mut Report) -> Result<()> {
    let label = "eta(H x C_{p^a}) >= (a+1)eta(H)+1";
    let (p, ks) = match abelian_factors(&s.entry.spec) {
        Some((p, ks)) if ks.len() >= 3 => (p, ks),
        _ => {
            report.push_skip(s.spec(), label, "not H x C_{p^a} with H a noncyclic abelian p-group");
            return Ok(());
        }
    };
    let e = s.eta();
    let mut split_off: Vec<u32> = ks.clone();
    split_off.sort_unstable();
    split_off.dedup();
    for &a in &split_off {
        let pos = ks.iter().position(|&k| k == a).unwrap();
        let rest: Vec<GroupSpec> = ks
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, &k)| GroupSpec::Cyclic(p.pow(k)))
            .collect();
        let h_spec = GroupSpec::Product(rest);
        let h = crate::builders::realize_with_limit(&h_spec, catalog.max_order.max(s.entry.order))?;
        let eta_h = eta(&h);
        let check = BoundCheck::new(
            format!("{label} with H = {h_spec}"),
            int(e),
            Relation::Ge,
            int(product_bound::<BigInt>(a, eta_h as u64)),
            Context::new().with("p", p).with("a", a).with("eta", e).with("eta_h", eta_h),
        );
        report.push_check(s.spec(), &check);
    }
    Ok(())
}

fn abelian_bound_suite(s: &mut Subject, report: &mut Report, odd: bool) -> Result<()> {
    let label = if odd { "eta >= (p+1)n/2" } else { "eta >= (p-1)(n-2)+p+1" };
    let Some((p, n)) = s.prime_power else {
        report.push_skip(s.spec(), label, "order is not a prime power");
        return Ok(());
    };
    if !s.group.is_abelian() {
        report.push_skip(s.spec(), label, "nonabelian");
        return Ok(());
    }
    if s.group.is_cyclic() {
        report.push_skip(s.spec(), label, "cyclic");
        return Ok(());
    }
    if odd && p == 2 {
        report.push_skip(s.spec(), label, "p = 2");
        return Ok(());
    }
    let e = s.eta();
    let rhs = if odd {
        odd_abelian_bound::<BigInt>(p, n)?
    } else {
        int(abelian_bound::<BigInt>(p, n))
    };
    let check = BoundCheck::new(label, int(e), Relation::Ge, rhs, Context::new().with("p", p).with("n", n).with("eta", e));
    report.push_check(s.spec(), &check);
    Ok(())
}

fn lemma_orders(s: &mut Subject, report: &mut Report) -> Result<()> {
    let label = "exponent(G^l) divides p^floor(n/(l+1))";
    let Some((p, n)) = s.prime_power else {
        report.push_skip(s.spec(), label, "order is not a prime power");
        return Ok(());
    };
    let series = s.series()?.clone();
    if series.class < 2 {
        report.push_skip(s.spec(), label, format!("class {} < 2", series.class));
        return Ok(());
    }
    let check = check_lemma_orders_with(&s.group, p, n, &series)?;
    report.push_check(s.spec(), &check);
    Ok(())
}

/// `(p, n, l)` for a noncyclic p-group, or a skip reason.
fn noncyclic_p_group(s: &mut Subject) -> Result<std::result::Result<(u64, u32, u32), &'static str>> {
    let Some((p, n)) = s.prime_power else {
        return Ok(Err("order is not a prime power"));
    };
    if s.group.is_cyclic() {
        return Ok(Err("cyclic"));
    }
    let l = s.series()?.class;
    Ok(Ok((p, n, l)))
}

fn main_theorem(s: &mut Subject, report: &mut Report) -> Result<()> {
    let label = "l(eta-p-1) >= (p-1)(n-2l)";
    match noncyclic_p_group(s)? {
        Ok((p, n, l)) => {
            let e = s.eta() as u64;
            let check = main_theorem_check::<BigInt>(p, n, l, e)?;
            report.push_check(s.spec(), &check);
        }
        Err(reason) => report.push_skip(s.spec(), label, reason),
    }
    Ok(())
}

fn size_rewrite(s: &mut Subject, report: &mut Report) -> Result<()> {
    let label = "n <= ((eta-p-1)/(p-1)+2)l";
    match noncyclic_p_group(s)? {
        Ok((p, n, l)) => {
            let e = s.eta();
            let check = BoundCheck::new(
                label,
                int(n),
                Relation::Le,
                size_bound_from_eta::<BigInt>(p, e as u64, l),
                Context::new().with("p", p).with("n", n).with("l", l).with("eta", e),
            );
            report.push_check(s.spec(), &check);
        }
        Err(reason) => report.push_skip(s.spec(), label, reason),
    }
    Ok(())
}

fn quotient_monotone(s: &mut Subject, report: &mut Report) -> Result<()> {
    let e = s.eta();
    for normal in sample_normal_subgroups(&s.group) {
        let label = format!("eta(G/N) <= eta(G) with |N| = {}", normal.len());
        if normal.len() == s.group.order() {
            report.push_skip(s.spec(), &label, "N = G gives the trivial quotient");
            continue;
        }
        let quotient = s.group.quotient(&normal)?;
        let eq = eta(&quotient.group);
        let mut params = Context::new().with("eta", e).with("normal_order", normal.len());
        if let Some((p, n)) = s.prime_power {
            params = params.with("p", p).with("n", n);
        }
        let check = BoundCheck::new(label, int(eq), Relation::Le, int(e), params);
        report.push_check(s.spec(), &check);
    }
    Ok(())
}

fn center_bound(s: &mut Subject, report: &mut Report) {
    let label = "eta(Z(G)) <= eta(G)";
    let z = center(&s.group);
    if z.is_trivial() {
        report.push_skip(s.spec(), label, "trivial center");
        return;
    }
    let e = s.eta();
    let ez = eta(&s.group.subgroup_as_group(&z));
    let mut params = Context::new().with("eta", e).with("center_order", z.len());
    if let Some((p, n)) = s.prime_power {
        params = params.with("p", p).with("n", n);
    }
    report.push_check(s.spec(), &BoundCheck::new(label, int(ez), Relation::Le, int(e), params));
}

fn cover_irredundant(s: &mut Subject, report: &mut Report) {
    let label = "maximal cyclic subgroups form an irredundant cover";
    let cover = check_cyclic_cover(&s.group);
    if cover.degenerate {
        report.push_skip(s.spec(), label, "cyclic: the only maximal cyclic subgroup is G");
        return;
    }
    let witnessed = cover.witnesses.iter().filter(|w| w.is_some()).count();
    let reason = match (cover.is_cover, cover.is_irredundant) {
        (false, _) => Some("some element lies in no maximal cyclic subgroup".to_owned()),
        (true, false) => Some("a component has no private element".to_owned()),
        _ => None,
    };
    report.push_outcome(
        s.spec(),
        label,
        Context::new()
            .with("components", cover.components.len())
            .with("witnessed", witnessed),
        cover.is_cover && cover.is_irredundant,
        reason,
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::catalog::default_catalog;
    use crate::harness::report::Status;

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        match "bogus".parse::<Suite>() {
            Err(Error::UnknownSuite { name, valid }) => {
                assert_eq!(name, "bogus");
                assert!(valid.contains("main-theorem"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn every_suite_passes_on_a_small_catalog() {
        let cat = default_catalog(64, &[2, 3]).unwrap();
        for report in run_all(&cat).unwrap() {
            assert!(report.passed(), "{}", report.summary());
            assert!(report.is_consistent());
            assert!(report.totals.pass > 0, "{} ran nothing", report.suite);
        }
    }

    #[test]
    fn skips_carry_reasons() {
        let cat = default_catalog(32, &[2]).unwrap();
        let report = run_suite(Suite::MainTheorem, &cat).unwrap();
        let skip = report.entries.iter().find(|e| e.spec == "cyclic(8)").unwrap();
        assert_eq!(skip.status, Status::Skip);
        assert_eq!(skip.reason.as_deref(), Some("cyclic"));
        assert_eq!(report.entries.len(), cat.len());
    }

    #[test]
    fn eta_families_values() {
        let cat = default_catalog(64, &[2]).unwrap();
        let report = run_suite(Suite::EtaFamilies, &cat).unwrap();
        assert_eq!(report.totals.pass, 4 + 4 + 3);
        assert_eq!(report.totals.fail, 0);
    }

    #[test]
    fn product_bound_splits_each_factor() {
        let cat = Catalog::from_specs([GroupSpec::parse("product(cyclic(4),cyclic(2),cyclic(2))").unwrap()], vec![2]).unwrap();
        let report = run_suite(Suite::ProductBound, &cat).unwrap();
        assert_eq!(report.totals.pass, 2);
    }
}
