//! Survey reports: per-prime verdict rows plus recomputable summaries, with
//! diff-able CSV and JSON serializations.
//!
//! The CSV schema is fixed: a `#`-prefixed metadata block, the exact header
//! `p,split,h_flag,gold,lambda,prational_L,prational_K0,hK_source,verdict,notes`,
//! then one lowercase-token row per prime with `?` for unknowns. Summaries
//! are not stored in CSV; they are recomputed from the rows on parse, which
//! keeps serialize -> parse -> serialize byte-identical.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReportError {
    #[error("malformed report: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanKind {
    Lambda,
    Artin,
}

impl ScanKind {
    fn token(self) -> &'static str {
        match self {
            ScanKind::Lambda => "lambda",
            ScanKind::Artin => "artin",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMeta {
    pub tool: String,
    pub version: String,
    pub kind: ScanKind,
    pub descriptor: String,
    pub pmax: u64,
    pub assume_h: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRow {
    pub p: u64,
    pub split: String,
    pub h_flag: String,
    pub gold: String,
    pub lambda: String,
    pub prational_l: String,
    pub prational_k0: String,
    pub hk_source: String,
    pub verdict: String,
    pub notes: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Summary {
    Lambda {
        count_zero: u64,
        count_one: u64,
        count_gt1: u64,
        count_unknown: u64,
        /// M(X): split primes with lambda > 1.
        m_x: u64,
        half_loglog_x: f64,
        /// Sum of 1/p - 1/p^2 over the split rows.
        split_sum: f64,
        /// The counting function M(x) sampled on a log grid.
        samples: Vec<(u64, u64)>,
    },
    Artin {
        prime_count: u64,
        s_count: u64,
        certified_t: u64,
        undetermined: u64,
        chebotarev_ratio: f64,
        /// Least-squares c for N_T(x) ~ c log x over the sample grid
        /// (reported, never asserted).
        fitted_c: f64,
        /// The certified-T counting function sampled on a log grid.
        samples: Vec<(u64, u64)>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub meta: ReportMeta,
    pub rows: Vec<PrimeRow>,
    pub summary: Summary,
}

pub(crate) fn sample_grid(pmax: u64) -> Vec<u64> {
    let mut grid = Vec::new();
    let mut x = 10u64;
    while x < pmax {
        grid.push(x);
        x = x.saturating_mul(10);
    }
    grid.push(pmax);
    grid
}

/// Rebuild the summary block from rows and metadata (every summary value is
/// a function of them).
pub fn summarize(meta: &ReportMeta, rows: &[PrimeRow]) -> Summary {
    match meta.kind {
        ScanKind::Lambda => {
            let count = |v: &str| rows.iter().filter(|r| r.verdict == v).count() as u64;
            let split_sum: f64 = rows
                .iter()
                .filter(|r| r.split == "split")
                .map(|r| 1.0 / r.p as f64 - 1.0 / (r.p as f64 * r.p as f64))
                .sum();
            let samples = sample_grid(meta.pmax)
                .into_iter()
                .map(|x| {
                    let m = rows
                        .iter()
                        .filter(|r| r.p <= x && r.verdict == "gt1")
                        .count() as u64;
                    (x, m)
                })
                .collect();
            let loglog = if meta.pmax >= 3 {
                0.5 * (meta.pmax as f64).ln().ln()
            } else {
                0.0
            };
            Summary::Lambda {
                count_zero: count("zero"),
                count_one: count("one"),
                count_gt1: count("gt1"),
                count_unknown: count("unknown"),
                m_x: count("gt1"),
                half_loglog_x: loglog,
                split_sum,
                samples,
            }
        }
        ScanKind::Artin => {
            let s_count = rows.iter().filter(|r| r.verdict != "not_in_s").count() as u64;
            let certified = rows.iter().filter(|r| r.verdict == "in_t").count() as u64;
            let undetermined = rows.iter().filter(|r| r.verdict == "undetermined").count() as u64;
            let samples: Vec<(u64, u64)> = sample_grid(meta.pmax)
                .into_iter()
                .map(|x| {
                    let n = rows
                        .iter()
                        .filter(|r| r.p <= x && r.verdict == "in_t")
                        .count() as u64;
                    (x, n)
                })
                .collect();
            // Least squares N(x_j) ≈ c log x_j.
            let (mut num, mut den) = (0.0f64, 0.0f64);
            for (x, n) in &samples {
                let l = (*x as f64).ln();
                num += *n as f64 * l;
                den += l * l;
            }
            let fitted_c = if den > 0.0 { num / den } else { 0.0 };
            Summary::Artin {
                prime_count: rows.len() as u64,
                s_count,
                certified_t: certified,
                undetermined,
                chebotarev_ratio: if rows.is_empty() {
                    0.0
                } else {
                    s_count as f64 / rows.len() as f64
                },
                fitted_c,
                samples,
            }
        }
    }
}

pub const CSV_HEADER: &str =
    "p,split,h_flag,gold,lambda,prational_L,prational_K0,hK_source,verdict,notes";

fn sanitize(token: &str) -> String {
    token
        .chars()
        .map(|c| if c == ',' || c == '\n' { ';' } else { c })
        .collect()
}

impl SurveyReport {
    pub fn new(meta: ReportMeta, rows: Vec<PrimeRow>) -> SurveyReport {
        let summary = summarize(&meta, &rows);
        SurveyReport { meta, rows, summary }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {} v{}\n", self.meta.tool, self.meta.version));
        out.push_str(&format!("# kind,{}\n", self.meta.kind.token()));
        out.push_str(&format!("# descriptor,{}\n", sanitize_meta(&self.meta.descriptor)));
        out.push_str(&format!("# pmax,{}\n", self.meta.pmax));
        out.push_str(&format!("# assume_h,{}\n", self.meta.assume_h));
        for n in &self.meta.notes {
            out.push_str(&format!("# note,{}\n", sanitize_meta(n)));
        }
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                r.p,
                sanitize(&r.split),
                sanitize(&r.h_flag),
                sanitize(&r.gold),
                sanitize(&r.lambda),
                sanitize(&r.prational_l),
                sanitize(&r.prational_k0),
                sanitize(&r.hk_source),
                sanitize(&r.verdict),
                sanitize(&r.notes),
            ));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<SurveyReport, ReportError> {
        let mut tool = String::new();
        let mut version = String::new();
        let mut kind = None;
        let mut descriptor = String::new();
        let mut pmax = 0u64;
        let mut assume_h = false;
        let mut notes = Vec::new();
        let mut rows = Vec::new();
        let mut seen_header = false;
        for line in text.lines() {
            if let Some(meta) = line.strip_prefix("# ") {
                if let Some((key, value)) = meta.split_once(',') {
                    match key {
                        "kind" => {
                            kind = Some(match value {
                                "lambda" => ScanKind::Lambda,
                                "artin" => ScanKind::Artin,
                                other => {
                                    return Err(ReportError::Malformed(format!(
                                        "unknown scan kind {other}"
                                    )))
                                }
                            });
                        }
                        "descriptor" => descriptor = value.to_string(),
                        "pmax" => {
                            pmax = value
                                .parse()
                                .map_err(|e| ReportError::Malformed(format!("pmax: {e}")))?
                        }
                        "assume_h" => {
                            assume_h = value
                                .parse()
                                .map_err(|e| ReportError::Malformed(format!("assume_h: {e}")))?
                        }
                        "note" => notes.push(value.to_string()),
                        _ => return Err(ReportError::Malformed(format!("unknown key {key}"))),
                    }
                } else {
                    // Tool banner line: "<tool> v<version>".
                    let banner = meta;
                    if let Some((t, v)) = banner.rsplit_once(" v") {
                        tool = t.to_string();
                        version = v.to_string();
                    } else {
                        return Err(ReportError::Malformed("bad banner line".into()));
                    }
                }
                continue;
            }
            if !seen_header {
                if line != CSV_HEADER {
                    return Err(ReportError::Malformed(format!("unexpected header: {line}")));
                }
                seen_header = true;
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 10 {
                return Err(ReportError::Malformed(format!(
                    "row has {} fields: {line}",
                    fields.len()
                )));
            }
            rows.push(PrimeRow {
                p: fields[0]
                    .parse()
                    .map_err(|e| ReportError::Malformed(format!("p: {e}")))?,
                split: fields[1].to_string(),
                h_flag: fields[2].to_string(),
                gold: fields[3].to_string(),
                lambda: fields[4].to_string(),
                prational_l: fields[5].to_string(),
                prational_k0: fields[6].to_string(),
                hk_source: fields[7].to_string(),
                verdict: fields[8].to_string(),
                notes: fields[9].to_string(),
            });
        }
        let kind = kind.ok_or_else(|| ReportError::Malformed("missing kind".into()))?;
        let meta = ReportMeta { tool, version, kind, descriptor, pmax, assume_h, notes };
        Ok(SurveyReport::new(meta, rows))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<SurveyReport, ReportError> {
        serde_json::from_str(text).map_err(|e| ReportError::Malformed(e.to_string()))
    }
}

fn sanitize_meta(s: &str) -> String {
    s.chars().map(|c| if c == '\n' { ' ' } else { c }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_token() -> impl Strategy<Value = String> {
        proptest::string::string_regex("[a-z0-9_?;,. ]{0,10}").unwrap()
    }

    fn arb_row() -> impl Strategy<Value = PrimeRow> {
        (
            2u64..100_000,
            arb_token(),
            arb_token(),
            arb_token(),
            arb_token(),
            arb_token(),
            arb_token(),
            arb_token(),
            arb_token(),
            arb_token(),
        )
            .prop_map(
                |(p, split, h_flag, gold, lambda, prational_l, prational_k0, hk, verdict, notes)| {
                    PrimeRow {
                        p,
                        split,
                        h_flag,
                        gold,
                        lambda,
                        prational_l,
                        prational_k0,
                        hk_source: hk,
                        verdict,
                        notes,
                    }
                },
            )
    }

    proptest! {
        #[test]
        fn serialized_reports_roundtrip_for_arbitrary_rows(
            rows in proptest::collection::vec(arb_row(), 0..24),
            artin in proptest::bool::ANY,
            pmax in 2u64..1_000_000,
        ) {
            let meta = ReportMeta {
                tool: "iwasawa-survey".into(),
                version: "0.1.0".into(),
                kind: if artin { ScanKind::Artin } else { ScanKind::Lambda },
                descriptor: "prop".into(),
                pmax,
                assume_h: artin,
                notes: vec!["note with, a comma".into()],
            };
            let report = SurveyReport::new(meta, rows);
            // Tokens may contain commas; the first serialization sanitizes
            // them and every later pass is a fixed point.
            let csv = report.to_csv();
            let parsed = SurveyReport::from_csv(&csv).unwrap();
            prop_assert_eq!(parsed.to_csv(), csv);
            let json = parsed.to_json();
            let back = SurveyReport::from_json(&json).unwrap();
            prop_assert_eq!(back.to_json(), json);
        }
    }

    fn sample_report() -> SurveyReport {
        let meta = ReportMeta {
            tool: "iwasawa-survey".into(),
            version: "0.1.0".into(),
            kind: ScanKind::Lambda,
            descriptor: "disc:-4".into(),
            pmax: 100,
            assume_h: false,
            notes: vec!["convention: r=1 for split p".into()],
        };
        let rows = vec![
            PrimeRow {
                p: 3,
                split: "inert".into(),
                h_flag: "coprime".into(),
                gold: "?".into(),
                lambda: "?".into(),
                prational_l: "?".into(),
                prational_k0: "?".into(),
                hk_source: "exact".into(),
                verdict: "unknown".into(),
                notes: "p_lt_5".into(),
            },
            PrimeRow {
                p: 5,
                split: "split".into(),
                h_flag: "coprime".into(),
                gold: "eq1".into(),
                lambda: "1".into(),
                prational_l: "?".into(),
                prational_k0: "?".into(),
                hk_source: "exact".into(),
                verdict: "one".into(),
                notes: "".into(),
            },
            PrimeRow {
                p: 13,
                split: "split".into(),
                h_flag: "coprime".into(),
                gold: "gt1".into(),
                lambda: "gt1".into(),
                prational_l: "?".into(),
                prational_k0: "?".into(),
                hk_source: "exact".into(),
                verdict: "gt1".into(),
                notes: "".into(),
            },
        ];
        SurveyReport::new(meta, rows)
    }

    #[test]
    fn csv_roundtrip_is_byte_identical() {
        let report = sample_report();
        let csv = report.to_csv();
        let parsed = SurveyReport::from_csv(&csv).unwrap();
        assert_eq!(parsed.to_csv(), csv);
        assert_eq!(parsed, report);
    }

    #[test]
    fn json_roundtrip_is_byte_identical() {
        let report = sample_report();
        let json = report.to_json();
        let parsed = SurveyReport::from_json(&json).unwrap();
        assert_eq!(parsed.to_json(), json);
        assert_eq!(parsed, report);
    }

    #[test]
    fn summaries_recompute_from_rows() {
        let report = sample_report();
        match &report.summary {
            Summary::Lambda { count_one, count_gt1, count_unknown, m_x, split_sum, samples, .. } => {
                assert_eq!((*count_one, *count_gt1, *count_unknown), (1, 1, 1));
                assert_eq!(*m_x, 1);
                let expect = (1.0 / 5.0 - 1.0 / 25.0) + (1.0 / 13.0 - 1.0 / 169.0);
                assert!((split_sum - expect).abs() < 1e-15);
                assert_eq!(samples, &vec![(10, 0), (100, 1)]);
            }
            _ => panic!("wrong summary kind"),
        }
    }

    #[test]
    fn csv_header_is_pinned() {
        assert_eq!(
            CSV_HEADER,
            "p,split,h_flag,gold,lambda,prational_L,prational_K0,hK_source,verdict,notes"
        );
        let report = sample_report();
        let csv = report.to_csv();
        assert!(csv.contains("\np,split,h_flag,gold,lambda,prational_L,prational_K0,hK_source,verdict,notes\n"));
        assert!(csv.contains("5,split,coprime,eq1,1,?,?,exact,one,\n"));
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(SurveyReport::from_csv("p,split\n1,2\n").is_err());
        let report = sample_report();
        let bad = report.to_csv().replace("# kind,lambda", "# kind,mystery");
        assert!(SurveyReport::from_csv(&bad).is_err());
    }
}
