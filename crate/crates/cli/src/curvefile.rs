//! Curve JSON schema:
//! `{"type":"support_fourier","a0":1.0,"cos":[...],"sin":[...]}` or
//! `{"type":"ellipse","a":2.0,"b":1.0}`. Lengths are abstract units, angles
//! radians.

use oscint_core::SupportCurve;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(tag = "type")]
pub enum CurveFile {
    #[serde(rename = "support_fourier")]
    SupportFourier {
        a0: f64,
        #[serde(default)]
        cos: Vec<f64>,
        #[serde(default)]
        sin: Vec<f64>,
    },
    #[serde(rename = "ellipse")]
    Ellipse { a: f64, b: f64 },
}

impl CurveFile {
    pub fn into_curve(self) -> Result<SupportCurve, String> {
        match self {
            CurveFile::SupportFourier { a0, cos, sin } => {
                SupportCurve::fourier(a0, cos, sin).map_err(|e| e.to_string())
            }
            CurveFile::Ellipse { a, b } => SupportCurve::ellipse(a, b).map_err(|e| e.to_string()),
        }
    }
}

pub fn load_curve(path: &Path) -> Result<SupportCurve, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read curve file {}: {e}", path.display()))?;
    let parsed: CurveFile = serde_json::from_str(&text)
        .map_err(|e| format!("cannot parse curve file {}: {e}", path.display()))?;
    parsed.into_curve()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_both_kinds() {
        let f: CurveFile =
            serde_json::from_str(r#"{"type":"support_fourier","a0":1.0,"cos":[0.0,0.0,0.05]}"#)
                .unwrap();
        assert!(f.into_curve().is_ok());
        let e: CurveFile = serde_json::from_str(r#"{"type":"ellipse","a":2.0,"b":1.0}"#).unwrap();
        assert!(e.into_curve().is_ok());
    }

    #[test]
    fn nonconvex_is_reported() {
        let f: CurveFile =
            serde_json::from_str(r#"{"type":"support_fourier","a0":1.0,"cos":[0.0,0.6]}"#).unwrap();
        assert!(f.into_curve().unwrap_err().contains("convex"));
    }
}
