//! JSON forms of hyperplanes, certificates and solver results.
//!
//! Rationals are strings `"p/q"` (always with a denominator on output; a bare
//! integer is accepted on input). Points are bit strings, coordinate 1 first.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::affine::{Hyperplane, Rational};
use crate::cube::{Dim, PointSet};
use crate::error::{Error, Result};
use crate::solver::{CoverCertificate, SolveResult};

pub const FORMAT_VERSION: u32 = 1;

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct HyperplaneRepr {
    coeffs: Vec<Rational>,
    offset: Rational,
}

impl Serialize for Hyperplane {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HyperplaneRepr { coeffs: self.coeffs().to_vec(), offset: self.offset().clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Hyperplane {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = HyperplaneRepr::deserialize(d)?;
        let dim = Dim::new(r.coeffs.len()).map_err(D::Error::custom)?;
        Hyperplane::new(dim, r.coeffs, r.offset).map_err(D::Error::custom)
    }
}

/// Parses a list of hyperplanes, checking they all live in `dim`.
pub fn hyperplanes_from_value(dim: Dim, v: &Value) -> Result<Vec<Hyperplane>> {
    let hs: Vec<Hyperplane> = serde_json::from_value(v.clone()).map_err(|e| Error::Format(e.to_string()))?;
    for h in &hs {
        dim.check(h.dim())?;
    }
    Ok(hs)
}

/// Reads hyperplanes from either a bare JSON array or an object with a
/// `"hyperplanes"` field (as written by `certificate_json` and `solve_json`).
pub fn parse_cover(dim: Dim, text: &str) -> Result<Vec<Hyperplane>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    match &v {
        Value::Array(_) => hyperplanes_from_value(dim, &v),
        Value::Object(m) => match m.get("hyperplanes") {
            Some(h) => hyperplanes_from_value(dim, h),
            None => Err(Error::Format("missing \"hyperplanes\" field".into())),
        },
        _ => Err(Error::Format("expected an array or object".into())),
    }
}

pub fn certificate_json(c: &CoverCertificate) -> Value {
    let mut v = json!({
        "v": FORMAT_VERSION,
        "n": c.dim.n(),
        "S": c.avoided.to_strings(),
        "size": c.size(),
        "verified": c.verified,
        "hyperplanes": c.hyperplanes,
    });
    if let Some(i) = c.layer {
        v["layer"] = json!(i);
    }
    if !c.verified {
        v["covered_avoided"] = json!(c.report.covered_avoided.iter().map(|p| p.to_bits(c.dim)).collect::<Vec<_>>());
        v["uncovered"] = json!(c.report.uncovered.iter().map(|p| p.to_bits(c.dim)).collect::<Vec<_>>());
    }
    v
}

pub fn solve_json(r: &SolveResult) -> Value {
    json!({
        "v": FORMAT_VERSION,
        "n": r.certificate.dim.n(),
        "S": r.certificate.avoided.to_strings(),
        "size": r.size,
        "optimal": r.optimal,
        "lower_bound": r.lower_bound_used,
        "nodes": r.nodes,
        "hyperplanes": r.certificate.hyperplanes,
    })
}

/// Parses point strings into a set; an empty list needs an explicit `dim`.
pub fn parse_points<S: AsRef<str>>(dim: Option<Dim>, items: &[S]) -> Result<PointSet> {
    if items.is_empty() {
        return match dim {
            Some(d) => Ok(PointSet::empty(d)),
            None => Err(Error::EmptySet),
        };
    }
    PointSet::parse_strs(dim, items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::verify_exact_cover;

    #[test]
    fn hyperplane_round_trip() {
        let dim = Dim::new(3).unwrap();
        let h = Hyperplane::new(
            dim,
            vec![Rational::new(1, 2).unwrap(), Rational::from_int(3), Rational::zero()],
            Rational::from_int(-1),
        )
        .unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"coeffs":["1/2","3/1","0/1"],"offset":"-1/1"}"#);
        let back: Hyperplane = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
        let bare: Hyperplane = serde_json::from_str(r#"{"coeffs":["1","2/4","0"],"offset":"1"}"#).unwrap();
        assert_eq!(bare.coeffs()[1], Rational::new(1, 2).unwrap());
        assert!(serde_json::from_str::<Hyperplane>(r#"{"coeffs":["0","0"],"offset":"1"}"#).is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let dim = Dim::new(3).unwrap();
        let hs: Vec<Hyperplane> = (0..3).map(|i| Hyperplane::facet(dim, i, true)).collect();
        let s = PointSet::parse_strs(Some(dim), &["000"]).unwrap();
        let cert = verify_exact_cover(&hs, &s).unwrap();
        let text = certificate_json(&cert).to_string();
        assert_eq!(parse_cover(dim, &text).unwrap(), hs);
        assert!(parse_cover(Dim::new(4).unwrap(), &text).is_err());
    }
}
