//! Model serialization: CPLEX LP, fixed-layout MPS, and JSON.
//!
//! Output is a pure function of the model. Numbers are written in the
//! shortest decimal form that parses back to the same `f64`.

use std::fmt::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{MilpModel, RowSense, Term, VarKind};
use crate::error::Error;
use crate::problem::Sense;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Lp,
    Mps,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "lp" => Ok(Format::Lp),
            "mps" => Ok(Format::Mps),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse(format!("unknown model format `{other}`"))),
        }
    }
}

pub fn emit(model: &MilpModel, format: Format) -> String {
    match format {
        Format::Lp => emit_lp(model),
        Format::Mps => emit_mps(model),
        Format::Json => emit_json(model),
    }
}

fn num(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else {
        format!("{v}")
    }
}

const TERMS_PER_LINE: usize = 6;

fn write_terms(out: &mut String, terms: &[Term]) {
    for (k, t) in terms.iter().enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if t.coef < 0.0 { '-' } else { '+' };
        let _ = write!(out, " {sign} {} {}", num(t.coef.abs()), t.var);
    }
}

pub fn emit_lp(model: &MilpModel) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "\\ tree characterization model: n = {}, formulation = {}, objective = {}",
        model.n,
        model.formulation.name(),
        model.objective.kind
    );
    out.push_str(match model.objective.sense {
        Sense::Minimize => "Minimize\n",
        Sense::Maximize => "Maximize\n",
    });
    out.push_str(" obj:");
    write_terms(&mut out, &model.objective.terms);
    out.push_str("\nSubject To\n");
    for c in &model.constraints {
        let _ = write!(out, " {}:", c.name);
        write_terms(&mut out, &c.terms);
        let _ = writeln!(out, " {} {}", c.sense.symbol(), num(c.rhs));
    }
    out.push_str("Bounds\n");
    for v in model.variables.iter().filter(|v| v.kind == VarKind::Continuous) {
        let _ = writeln!(out, " {} <= {} <= {}", num(v.lower), v.name, num(v.upper));
    }
    out.push_str("Binaries\n");
    for v in model.variables.iter().filter(|v| v.kind == VarKind::Binary) {
        let _ = writeln!(out, " {}", v.name);
    }
    out.push_str("End\n");
    out
}

/// Fields start at columns 2, 5, 15, 25, 40 and 50. Names longer than eight
/// characters push later fields right; every field stays whitespace-separated.
fn mps_line(out: &mut String, f1: &str, f2: &str, f3: &str, f4: &str, f5: &str, f6: &str) {
    let mut line = format!(" {f1:<2} {f2:<8}  {f3:<8}  {f4:<12}");
    if !f5.is_empty() {
        let _ = write!(line, "   {f5:<8}  {f6:<12}");
    }
    out.push_str(line.trim_end());
    out.push('\n');
}

pub fn emit_mps(model: &MilpModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "NAME          TREECHAR");
    if model.objective.sense == Sense::Maximize {
        out.push_str("OBJSENSE\n    MAX\n");
    }
    out.push_str("ROWS\n");
    mps_line(&mut out, "N", "obj", "", "", "", "");
    for c in &model.constraints {
        let kind = match c.sense {
            RowSense::Le => "L",
            RowSense::Eq => "E",
            RowSense::Ge => "G",
        };
        mps_line(&mut out, kind, &c.name, "", "", "", "");
    }

    let index = model.variable_index();
    let mut entries: Vec<Vec<(&str, f64)>> = vec![Vec::new(); model.variables.len()];
    for t in &model.objective.terms {
        entries[index[t.var.as_str()]].push(("obj", t.coef));
    }
    for c in &model.constraints {
        for t in &c.terms {
            entries[index[t.var.as_str()]].push((c.name.as_str(), t.coef));
        }
    }

    out.push_str("COLUMNS\n");
    let mut in_int = false;
    let mut marker = 0;
    for (v, col) in model.variables.iter().zip(&entries) {
        let is_int = v.kind == VarKind::Binary;
        if is_int != in_int {
            let tag = if is_int { "'INTORG'" } else { "'INTEND'" };
            mps_line(&mut out, "", &format!("MARKER{marker}"), "'MARKER'", "", tag, "");
            marker += 1;
            in_int = is_int;
        }
        let fallback = [("obj", 0.0)];
        let col: &[(&str, f64)] = if col.is_empty() { &fallback } else { col };
        for chunk in col.chunks(2) {
            let (r1, a1) = chunk[0];
            match chunk.get(1) {
                Some(&(r2, a2)) => mps_line(&mut out, "", &v.name, r1, &num(a1), r2, &num(a2)),
                None => mps_line(&mut out, "", &v.name, r1, &num(a1), "", ""),
            }
        }
    }
    if in_int {
        mps_line(&mut out, "", &format!("MARKER{marker}"), "'MARKER'", "", "'INTEND'", "");
    }

    out.push_str("RHS\n");
    let rhs: Vec<_> = model.constraints.iter().filter(|c| c.rhs != 0.0).collect();
    for chunk in rhs.chunks(2) {
        match chunk.get(1) {
            Some(c2) => mps_line(&mut out, "", "RHS", &chunk[0].name, &num(chunk[0].rhs), &c2.name, &num(c2.rhs)),
            None => mps_line(&mut out, "", "RHS", &chunk[0].name, &num(chunk[0].rhs), "", ""),
        }
    }

    out.push_str("BOUNDS\n");
    for v in &model.variables {
        match v.kind {
            VarKind::Binary => mps_line(&mut out, "BV", "BND", &v.name, "", "", ""),
            VarKind::Continuous => {
                if v.lower != 0.0 {
                    mps_line(&mut out, "LO", "BND", &v.name, &num(v.lower), "", "");
                }
                mps_line(&mut out, "UP", "BND", &v.name, &num(v.upper), "", "");
            }
        }
    }
    out.push_str("ENDATA\n");
    out
}

pub fn emit_json(model: &MilpModel) -> String {
    let mut s = serde_json::to_string_pretty(model).expect("model serializes");
    s.push('\n');
    s
}
