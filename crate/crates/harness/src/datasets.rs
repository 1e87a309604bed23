//! The two embedded case-study series.

use greyfrac_core::Series;

use crate::error::{HarnessError, Result};

pub const WUHAN_LABELS: [i64; 5] = [2011, 2012, 2013, 2014, 2015];
/// Wuhan Port container throughput, TEU.
pub const WUHAN_VALUES: [f64; 5] = [714700.0, 765000.0, 860412.0, 1005200.0, 1061400.0];

pub const ZHEJIANG_LABELS: [i64; 7] = [2007, 2008, 2009, 2010, 2011, 2012, 2013];
/// Zhejiang Province marine capture production, tonnes.
pub const ZHEJIANG_VALUES: [f64; 7] = [
    3210300.0, 3272300.0, 3152300.0, 3279100.0, 3411200.0, 3474600.0, 3606700.0,
];

pub const NAMES: [&str; 2] = ["wuhan", "zhejiang"];

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub series: Series,
    pub source: String,
}

pub fn wuhan() -> Dataset {
    Dataset {
        name: "wuhan".into(),
        series: Series::new(WUHAN_LABELS.to_vec(), WUHAN_VALUES.to_vec()).expect("valid series"),
        source: "Wuhan Port container throughput (TEU), 2011-2015".into(),
    }
}

pub fn zhejiang() -> Dataset {
    Dataset {
        name: "zhejiang".into(),
        series: Series::new(ZHEJIANG_LABELS.to_vec(), ZHEJIANG_VALUES.to_vec())
            .expect("valid series"),
        source: "Zhejiang Province marine capture production (t), 2007-2013".into(),
    }
}

pub fn by_name(name: &str) -> Result<Dataset> {
    match name.to_ascii_lowercase().as_str() {
        "wuhan" => Ok(wuhan()),
        "zhejiang" => Ok(zhejiang()),
        other => Err(HarnessError::Usage(format!(
            "unknown dataset '{other}' (expected one of {})",
            NAMES.join(", ")
        ))),
    }
}
