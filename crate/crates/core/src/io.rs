//! JSON and CSV formats.
//!
//! * element: `{"flavor":"int","terms":[[k,l,m,c],...]}` or
//!   `{"flavor":"complex","terms":[[k,l,m,re,im],...]}`
//! * Laurent polynomial: `{"terms":[[a,b,c],...]}`
//! * twisted element: `{"theta": x or [p,q], "terms":[[k,l,re,im],...]}`
//! * sweep report: records as `[p,q,s,t,sigma_min]`
//!
//! Terms are written sorted with no zero coefficients. Floats are written
//! with 17 significant digits.

use std::io::Write;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::angle::Angle;
use crate::group_ring::{AnyElement, ComplexElement, IntElement, Monomial};
use crate::laurent::LaurentPoly2;
use crate::linear::orbit::CurvePoint;
use crate::representations::RepPoint;
use crate::spectral::SweepRecord;
use crate::twisted::TwistedElement;

/// A JSON input that could not be read.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

/// Deserializes `text`, reporting failures by byte offset.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError {
        offset: byte_offset(text, e.line(), e.column()),
        message: e.to_string(),
    })
}

/// Writes floats as `{:.16e}`, which round-trips every finite `f64`.
struct FixedDigits<F>(F);

impl<F: serde_json::ser::Formatter> serde_json::ser::Formatter for FixedDigits<F> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> std::io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.0.end_object_value(w)
    }
}

fn write_with<T: Serialize, F: serde_json::ser::Formatter>(value: &T, fmt: F) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits(fmt));
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

/// Compact JSON.
pub fn to_json<T: Serialize>(value: &T) -> String {
    write_with(value, serde_json::ser::CompactFormatter)
}

/// Indented JSON with a trailing newline.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = write_with(value, serde_json::ser::PrettyFormatter::new());
    s.push('\n');
    s
}

/// `{:.16e}` outside JSON.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "flavor", rename_all = "lowercase", deny_unknown_fields)]
enum ElementDoc {
    Int { terms: Vec<(i64, i64, i64, i64)> },
    Complex { terms: Vec<(i64, i64, i64, f64, f64)> },
}

impl Serialize for AnyElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let doc = match self {
            AnyElement::Int(f) => ElementDoc::Int { terms: f.terms().map(|(m, c)| (m.k, m.l, m.m, c)).collect() },
            AnyElement::Complex(f) => {
                ElementDoc::Complex { terms: f.terms().map(|(m, c)| (m.k, m.l, m.m, c.re, c.im)).collect() }
            }
        };
        doc.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AnyElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let err = D::Error::custom;
        match ElementDoc::deserialize(d)? {
            ElementDoc::Int { terms } => IntElement::from_terms(terms.into_iter().map(|(k, l, m, c)| (Monomial::new(k, l, m), c)))
                .map(AnyElement::Int)
                .map_err(err),
            ElementDoc::Complex { terms } => {
                if terms.iter().any(|t| !t.3.is_finite() || !t.4.is_finite()) {
                    return Err(D::Error::custom("coefficients must be finite"));
                }
                ComplexElement::from_terms(
                    terms.into_iter().map(|(k, l, m, re, im)| (Monomial::new(k, l, m), Complex64::new(re, im))),
                )
                .map(AnyElement::Complex)
                .map_err(err)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LaurentDoc {
    terms: Vec<(i64, i64, i64)>,
}

impl Serialize for LaurentPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LaurentDoc { terms: self.terms().map(|((a, b), c)| (a, b, c)).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = LaurentDoc::deserialize(d)?;
        LaurentPoly2::from_terms(doc.terms.into_iter().map(|(a, b, c)| ((a, b), c))).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwistedDoc {
    theta: Angle,
    terms: Vec<(i64, i64, f64, f64)>,
}

impl Serialize for TwistedElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TwistedDoc { theta: self.theta(), terms: self.terms().map(|((k, l), c)| (k, l, c.re, c.im)).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwistedElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = TwistedDoc::deserialize(d)?;
        if doc.terms.iter().any(|t| !t.2.is_finite() || !t.3.is_finite()) {
            return Err(serde::de::Error::custom("coefficients must be finite"));
        }
        Ok(TwistedElement::from_terms(
            doc.theta,
            doc.terms.into_iter().map(|(k, l, re, im)| ((k, l), Complex64::new(re, im))),
        ))
    }
}

impl Serialize for SweepRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pt = &self.point;
        (pt.p(), pt.q(), pt.s(), pt.t(), self.sigma_min).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SweepRecord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (p, q, s, t, sigma_min) = <(i64, i64, f64, f64, f64)>::deserialize(d)?;
        let point = RepPoint::new(p, q, s, t).map_err(serde::de::Error::custom)?;
        Ok(SweepRecord { point, sigma_min })
    }
}

/// CSV with header `t,curve,branch,s`.
pub fn curves_to_csv(rows: &[CurvePoint]) -> String {
    let mut out = String::from("t,curve,branch,s\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", fmt_f64(r.t), r.curve, r.branch, fmt_f64(r.s)));
    }
    out
}
