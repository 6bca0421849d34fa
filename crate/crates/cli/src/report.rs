//! Fixed output schemas.

use serde::Serialize;
use ssy_closure::minimal::f_bound;
use ssy_closure::{CmcConstantBundle, ConstantBundle, ParamPoint};

/// First line of every sweep file.
pub const SWEEP_SCHEMA_LINE: &str = "# schema_version=ssy-sweep/1";

pub const SWEEP_COLUMNS: [&str; 17] = [
    "n", "q", "A", "C1", "C3", "CY", "C3H", "CH", "ratio", "ratio_root", "f_bound", "delta", "C0", "B0",
    "calC1", "calC2", "status",
];

/// 17 significant digits, enough for binary64 to round-trip.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    DomainError,
}

/// One sweep row. Every numeric field is `None` on a domain error;
/// `f_bound` is also `None` outside `0 < q < 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub n: u32,
    pub q: f64,
    #[serde(rename = "A")]
    pub gap: Option<f64>,
    #[serde(rename = "C1")]
    pub c1: Option<f64>,
    #[serde(rename = "C3")]
    pub c3: Option<f64>,
    #[serde(rename = "CY")]
    pub c_young: Option<f64>,
    #[serde(rename = "C3H")]
    pub c3_holder: Option<f64>,
    #[serde(rename = "CH")]
    pub c_holder: Option<f64>,
    pub ratio: Option<f64>,
    pub ratio_root: Option<f64>,
    pub f_bound: Option<f64>,
    pub delta: Option<f64>,
    #[serde(rename = "C0")]
    pub c0: Option<f64>,
    #[serde(rename = "B0")]
    pub b0: Option<f64>,
    #[serde(rename = "calC1")]
    pub cal_c1: Option<f64>,
    #[serde(rename = "calC2")]
    pub cal_c2: Option<f64>,
    pub status: RowStatus,
}

impl ReportRow {
    pub fn compute(n: u32, q: f64) -> Self {
        let bundles = ParamPoint::new(n, q)
            .and_then(|p| Ok((ConstantBundle::new(p)?, CmcConstantBundle::new(p)?)));
        match bundles {
            Ok((m, c)) => ReportRow {
                n,
                q,
                gap: Some(m.gap),
                c1: Some(m.c1),
                c3: Some(m.c3),
                c_young: Some(m.c_young),
                c3_holder: Some(m.c3_holder),
                c_holder: Some(m.c_holder),
                ratio: Some(m.ratio),
                ratio_root: Some(m.ratio_root),
                f_bound: f_bound(q).ok(),
                delta: Some(c.delta),
                c0: Some(c.c0),
                b0: Some(c.b0),
                cal_c1: Some(c.cal_c1),
                cal_c2: Some(c.cal_c2),
                status: RowStatus::Ok,
            },
            Err(_) => ReportRow {
                n,
                q,
                gap: None,
                c1: None,
                c3: None,
                c_young: None,
                c3_holder: None,
                c_holder: None,
                ratio: None,
                ratio_root: None,
                f_bound: None,
                delta: None,
                c0: None,
                b0: None,
                cal_c1: None,
                cal_c2: None,
                status: RowStatus::DomainError,
            },
        }
    }

    fn numeric(&self) -> [Option<f64>; 14] {
        [
            self.gap,
            self.c1,
            self.c3,
            self.c_young,
            self.c3_holder,
            self.c_holder,
            self.ratio,
            self.ratio_root,
            self.f_bound,
            self.delta,
            self.c0,
            self.b0,
            self.cal_c1,
            self.cal_c2,
        ]
    }

    pub fn csv_line(&self) -> String {
        let mut cells = vec![self.n.to_string(), num(self.q)];
        cells.extend(self.numeric().iter().map(|v| v.map(num).unwrap_or_default()));
        cells.push(
            match self.status {
                RowStatus::Ok => "ok",
                RowStatus::DomainError => "domain_error",
            }
            .to_string(),
        );
        cells.join(",")
    }
}

/// Accumulates `key: value` lines.
#[derive(Debug, Default)]
pub struct KeyValue {
    text: String,
}

impl KeyValue {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        self.text.push_str(key);
        self.text.push_str(": ");
        self.text.push_str(&value.to_string());
        self.text.push('\n');
        self
    }

    pub fn num(&mut self, key: &str, value: f64) -> &mut Self {
        self.put(key, num(value))
    }

    pub fn blank(&mut self) -> &mut Self {
        self.text.push('\n');
        self
    }

    pub fn finish(self) -> String {
        self.text
    }
}
