//! CSV rendering and unit conversion.

use std::f64::consts::LN_2;

use crate::error::Result;

/// Reporting units: nats (default) or bits, optionally with the half-duplex
/// pre-log 1/2 applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Units {
    pub bits: bool,
    pub half_duplex: bool,
}

impl Units {
    pub fn label(&self) -> &'static str {
        if self.bits {
            "bits"
        } else {
            "nats"
        }
    }

    /// Multiplier applied to a mutual-information value.
    pub fn factor(&self) -> f64 {
        let pre_log = if self.half_duplex { 0.5 } else { 1.0 };
        if self.bits {
            pre_log / LN_2
        } else {
            pre_log
        }
    }

    /// Scales a `p`-th order cumulant (or its standard error).
    pub fn scale(&self, value: f64, order: i32) -> f64 {
        value * self.factor().powi(order)
    }

    /// Column name carrying the unit, e.g. `variance_nats2`.
    pub fn column(&self, stem: &str, order: i32) -> String {
        if order == 1 {
            format!("{stem}_{}", self.label())
        } else {
            format!("{stem}_{}{order}", self.label())
        }
    }
}

/// 16 significant digits in scientific notation.
pub fn num(x: f64) -> String {
    format!("{x:.15e}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn render(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(row)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
