use std::io::{self, Write};

use quatfn::currents::CurrentEstimate;
use quatfn::Quat64;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Value};

#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    /// Arguments as given, without the program name.
    pub args: Vec<String>,
    pub inputs: Value,
    pub result: Value,
    pub diagnostics: Diagnostics,
    /// True when the result was decided symbolically.
    pub exact: bool,
}

#[derive(Serialize, Debug, Default)]
pub struct Diagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Row>>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct Row {
    pub eps: f64,
    pub value: [f64; 4],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<f64>,
}

#[derive(Serialize, Debug)]
pub struct ErrorReport {
    pub command: String,
    pub args: Vec<String>,
    pub error: ErrorBody,
}

#[derive(Serialize, Debug)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

pub fn quat(q: &Quat64) -> Value {
    json!(q.to_parts())
}

impl Diagnostics {
    pub fn from_estimate(est: &CurrentEstimate) -> Self {
        let table = est
            .eps
            .iter()
            .zip(&est.values)
            .enumerate()
            .map(|(k, (&eps, v))| Row {
                eps,
                value: v.to_parts(),
                difference: k.checked_sub(1).map(|i| est.differences[i]),
            })
            .collect();
        Self {
            converged: Some(est.converged),
            table: Some(table),
            ..Self::default()
        }
    }
}

/// Pretty JSON with every float written to 17 significant digits.
struct Precise<'a>(PrettyFormatter<'a>);

impl Formatter for Precise<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        if v.is_finite() {
            write!(w, "{v:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(v))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Precise(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("reports serialize");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}
