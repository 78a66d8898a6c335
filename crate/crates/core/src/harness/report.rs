use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundCheck, Context, Relation};
use crate::error::{Error, Result};
use crate::scalar::ExactInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub spec: String,
    pub check: String,
    pub parameters: Context,
    /// Exact rationals as `num/den` or integers.
    pub lhs: Option<String>,
    pub relation: Option<Relation>,
    pub rhs: Option<String>,
    pub status: Status,
    pub reason: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    /// Set by callers that want it; never part of determinism comparisons.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub entries: Vec<ReportEntry>,
    pub totals: Totals,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            timestamp: None,
            note: None,
            entries: Vec::new(),
            totals: Totals::default(),
        }
    }

    fn push(&mut self, entry: ReportEntry) {
        match entry.status {
            Status::Pass => self.totals.pass += 1,
            Status::Fail => self.totals.fail += 1,
            Status::Skip => self.totals.skip += 1,
        }
        self.entries.push(entry);
    }

    pub fn push_check<T: ExactInt>(&mut self, spec: &str, check: &BoundCheck<T>) {
        self.push(ReportEntry {
            spec: spec.to_owned(),
            check: check.label.clone(),
            parameters: check.context.clone(),
            lhs: Some(check.lhs.to_string()),
            relation: Some(check.relation),
            rhs: Some(check.rhs.to_string()),
            status: if check.pass { Status::Pass } else { Status::Fail },
            reason: None,
        });
    }

    /// A yes/no property with no numeric sides.
    pub fn push_outcome(&mut self, spec: &str, check: &str, parameters: Context, pass: bool, reason: Option<String>) {
        self.push(ReportEntry {
            spec: spec.to_owned(),
            check: check.to_owned(),
            parameters,
            lhs: None,
            relation: None,
            rhs: None,
            status: if pass { Status::Pass } else { Status::Fail },
            reason,
        });
    }

    pub fn push_skip(&mut self, spec: &str, check: &str, reason: impl Into<String>) {
        self.push(ReportEntry {
            spec: spec.to_owned(),
            check: check.to_owned(),
            parameters: Context::new(),
            lhs: None,
            relation: None,
            rhs: None,
            status: Status::Skip,
            reason: Some(reason.into()),
        });
    }

    /// Whether `totals` matches the entry statuses.
    pub fn is_consistent(&self) -> bool {
        let count = |s| self.entries.iter().filter(|e| e.status == s).count();
        self.totals
            == Totals {
                pass: count(Status::Pass),
                fail: count(Status::Fail),
                skip: count(Status::Skip),
            }
    }

    pub fn passed(&self) -> bool {
        self.totals.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self).map_err(|e| Error::Serialize(e.to_string()))?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: Report = serde_json::from_str(text).map_err(|e| Error::Serialize(e.to_string()))?;
        if !report.is_consistent() {
            return Err(Error::Serialize("totals do not match entries".into()));
        }
        Ok(report)
    }

    /// Flat table `spec,p,n,l,eta,bound_num,bound_den,pass`; the bound is the
    /// right-hand side. Missing values are empty cells.
    pub fn to_csv(&self) -> Result<String> {
        let err = |e: csv::Error| Error::Serialize(e.to_string());
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["spec", "p", "n", "l", "eta", "bound_num", "bound_den", "pass"])
            .map_err(err)?;
        for e in &self.entries {
            let param = |k: &str| e.parameters.get(k).map(|v| v.to_string()).unwrap_or_default();
            let (num, den) = match e.rhs.as_deref().map(Ratio::<BigInt>::from_str) {
                Some(Ok(r)) => (r.numer().to_string(), r.denom().to_string()),
                _ => (String::new(), String::new()),
            };
            let pass = match e.status {
                Status::Pass => "true",
                Status::Fail => "false",
                Status::Skip => "skip",
            };
            w.write_record([
                e.spec.as_str(),
                &param("p"),
                &param("n"),
                &param("l"),
                &param("eta"),
                &num,
                &den,
                pass,
            ])
            .map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Serialize(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Serialize(e.to_string()))
    }

    /// One line per suite plus one per failure.
    pub fn summary(&self) -> String {
        let t = self.totals;
        let mut out = format!("{}: {} pass, {} fail, {} skip\n", self.suite, t.pass, t.fail, t.skip);
        if let Some(note) = &self.note {
            out.push_str(&format!("  note: {note}\n"));
        }
        for f in self.failures() {
            out.push_str(&format!("  FAIL {} [{}]", f.spec, f.check));
            if let (Some(l), Some(r), Some(rel)) = (&f.lhs, &f.rhs, f.relation) {
                out.push_str(&format!(": {l} {rel} {r}"));
            }
            if !f.parameters.0.is_empty() {
                let params: Vec<String> = f.parameters.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out.push_str(&format!(" ({})", params.join(", ")));
            }
            if let Some(reason) = &f.reason {
                out.push_str(&format!(" {reason}"));
            }
            out.push('\n');
        }
        out
    }
}
