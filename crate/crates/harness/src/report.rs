//! Reading and summarizing JSONL reports.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::verify::VerificationRecord;
use crate::HarnessError;

pub struct LoadedReport {
    pub header: Option<String>,
    pub records: Vec<VerificationRecord>,
}

pub fn read_report(path: &Path) -> Result<LoadedReport, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let mut header = None;
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.starts_with('#') {
            if header.is_none() {
                header = Some(line.to_string());
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let rec: VerificationRecord =
            serde_json::from_str(line).map_err(|e| HarnessError::Parse {
                path: format!("{}:{}", path.display(), i + 1),
                message: e.to_string(),
            })?;
        records.push(rec);
    }
    Ok(LoadedReport { header, records })
}

#[derive(Debug, Default, Clone, Serialize)]
pub struct CheckSummary {
    pub records: usize,
    pub hypotheses_satisfied: usize,
    pub conclusion_true: usize,
    pub vacuous: usize,
    pub violations: usize,
}

pub fn summarize(records: &[VerificationRecord]) -> BTreeMap<String, CheckSummary> {
    let mut out: BTreeMap<String, CheckSummary> = BTreeMap::new();
    for rec in records {
        let s = out.entry(rec.check.clone()).or_default();
        s.records += 1;
        let hyps = rec.hypotheses.values().all(|&v| v);
        if hyps {
            s.hypotheses_satisfied += 1;
        }
        match rec.conclusion {
            Some(true) => s.conclusion_true += 1,
            Some(false) => {
                if hyps {
                    s.violations += 1;
                }
            }
            None => s.vacuous += 1,
        }
    }
    out
}

pub fn render_table(summary: &BTreeMap<String, CheckSummary>) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<12} {:>8} {:>10} {:>10} {:>8} {:>10}\n",
        "check", "records", "hyps-ok", "concl-ok", "vacuous", "VIOLATIONS"
    ));
    for (check, s) in summary {
        out.push_str(&format!(
            "{:<12} {:>8} {:>10} {:>10} {:>8} {:>10}\n",
            check, s.records, s.hypotheses_satisfied, s.conclusion_true, s.vacuous, s.violations
        ));
    }
    let totals = summary.values().fold(CheckSummary::default(), |mut acc, s| {
        acc.records += s.records;
        acc.hypotheses_satisfied += s.hypotheses_satisfied;
        acc.conclusion_true += s.conclusion_true;
        acc.vacuous += s.vacuous;
        acc.violations += s.violations;
        acc
    });
    out.push_str(&format!(
        "{:<12} {:>8} {:>10} {:>10} {:>8} {:>10}\n",
        "TOTAL",
        totals.records,
        totals.hypotheses_satisfied,
        totals.conclusion_true,
        totals.vacuous,
        totals.violations
    ));
    out
}
