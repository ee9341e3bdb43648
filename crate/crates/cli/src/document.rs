//! Model documents: JSON text in, validated library values out, and back.

use std::collections::BTreeMap;
use std::fmt;

use logalg_core::iso::{AlgebraDescriptor, Block};
use logalg_core::measure::{
    AffineTail, Cardinal, Cell, CellModel, CellTail, ClosedForm, ClosedFormSum, Passport, PassportLine,
    SeqSpec,
};
use logalg_core::rearrangement::{MatrixCell, MatrixStepFunction, SquareMatrix, StepCell, StepFunction};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

pub const VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    Scalar(StepFunction),
    Matrix(MatrixStepFunction),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellModelDoc {
    pub model: CellModel,
    pub elements: BTreeMap<String, Element>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    CellModel(Box<CellModelDoc>),
    Passport(Passport),
    Algebra(AlgebraDescriptor),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::CellModel(_) => "cell-model",
            Document::Passport(_) => "passport",
            Document::Algebra(_) => "algebra",
        }
    }
}

/// A semantic problem at a JSON-pointer location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub path: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DocumentError {
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    Semantic(Vec<Issue>),
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocumentError::Syntax {
                line,
                column,
                message,
            } => {
                write!(f, "syntax error at line {line}, column {column}: {message}")
            }
            DocumentError::Semantic(issues) => {
                for (i, issue) in issues.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "{}: {}", issue.path, issue.message)?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for DocumentError {}

type Parsed<T> = Result<T, Issue>;

fn issue(path: &str, message: impl Into<String>) -> Issue {
    Issue {
        path: path.to_string(),
        message: message.into(),
    }
}

impl From<Issue> for DocumentError {
    fn from(i: Issue) -> Self {
        DocumentError::Semantic(vec![i])
    }
}

pub fn parse(text: &str) -> Result<Document, DocumentError> {
    let value: Value = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let top = object(&value, "")?;
    allow_keys(top, "", &["version", "kind", "body"])?;
    let version = field(top, "", "version")?;
    if version.as_u64() != Some(VERSION) {
        return Err(issue("/version", format!("unsupported version, expected {VERSION}")).into());
    }
    let kind = field(top, "", "kind")?
        .as_str()
        .ok_or_else(|| issue("/kind", "expected a string"))?;
    let body = field(top, "", "body")?;
    match kind {
        "cell-model" => Ok(Document::CellModel(Box::new(cell_model(body, "/body")?))),
        "passport" => {
            let p = passport(body, "/body")?;
            check_report(p.validate().nest("/body"))?;
            Ok(Document::Passport(p))
        }
        "algebra" => {
            let blocks = algebra_blocks(body, "/body")?;
            check_report(AlgebraDescriptor::validate_blocks(&blocks).nest("/body"))?;
            let d = AlgebraDescriptor::new(blocks).map_err(|e| issue("/body", e.to_string()))?;
            Ok(Document::Algebra(d))
        }
        other => Err(issue(
            "/kind",
            format!("unknown kind {other:?}, expected cell-model, passport or algebra"),
        )
        .into()),
    }
}

fn report_issues(report: logalg_core::measure::ValidationReport) -> Vec<Issue> {
    report
        .violations
        .into_iter()
        .map(|v| Issue {
            path: v.path,
            message: v.message,
        })
        .collect()
}

fn check_report(report: logalg_core::measure::ValidationReport) -> Result<(), DocumentError> {
    let issues = report_issues(report);
    if issues.is_empty() {
        Ok(())
    } else {
        Err(DocumentError::Semantic(issues))
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Parsed<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| issue(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Parsed<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| issue(path, "expected an array"))
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Parsed<&'a Value> {
    obj.get(key)
        .ok_or_else(|| issue(&format!("{path}/{key}"), "missing field"))
}

fn allow_keys(obj: &Map<String, Value>, path: &str, keys: &[&str]) -> Parsed<()> {
    match obj.keys().find(|k| !keys.contains(&k.as_str())) {
        Some(k) => Err(issue(&format!("{path}/{k}"), "unknown field")),
        None => Ok(()),
    }
}

fn integer(v: &Value, path: &str) -> Parsed<i64> {
    v.as_i64().ok_or_else(|| issue(path, "expected an integer"))
}

fn real(v: &Value, path: &str) -> Parsed<f64> {
    let x = match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => parse_rational(s).map(|r| logalg_core::numeric::rational_to_f64(&r)),
        _ => None,
    };
    x.filter(|x| x.is_finite())
        .ok_or_else(|| issue(path, "expected a finite number"))
}

/// Parses `"p/q"`, an integer, or a decimal such as `"-1.25e-3"`, exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut r = BigRational::from_integer(all);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -r } else { r })
}

fn rational(v: &Value, path: &str) -> Parsed<BigRational> {
    let parsed = match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => None,
    };
    parsed.ok_or_else(|| issue(path, "expected a rational (\"p/q\" or decimal string)"))
}

fn closed_form(v: &Value, path: &str) -> Parsed<ClosedForm> {
    let obj = object(v, path)?;
    allow_keys(obj, path, &["c", "p", "q"])?;
    let c = rational(field(obj, path, "c")?, &format!("{path}/c"))?;
    let p = rational(field(obj, path, "p")?, &format!("{path}/p"))?;
    let q = rational(field(obj, path, "q")?, &format!("{path}/q"))?;
    if !c.is_positive() {
        return Err(issue(&format!("{path}/c"), "must be positive"));
    }
    if !q.is_positive() {
        return Err(issue(&format!("{path}/q"), "must be positive"));
    }
    ClosedForm::new(c, p, q).map_err(|e| issue(path, e.to_string()))
}

fn closed_form_sum(v: &Value, path: &str) -> Parsed<ClosedFormSum> {
    match v {
        Value::Array(items) => {
            if items.is_empty() {
                return Err(issue(path, "a tail needs at least one term"));
            }
            let terms = items
                .iter()
                .enumerate()
                .map(|(i, t)| closed_form(t, &format!("{path}/{i}")))
                .collect::<Parsed<Vec<_>>>()?;
            ClosedFormSum::new(terms).map_err(|e| issue(path, e.to_string()))
        }
        other => Ok(ClosedFormSum::single(closed_form(other, path)?)),
    }
}

fn cell_model(v: &Value, path: &str) -> Parsed<CellModelDoc> {
    let obj = object(v, path)?;
    allow_keys(obj, path, &["prefixCells", "tailMass", "tailH", "elements"])?;
    let mut prefix = Vec::new();
    if let Some(cells) = obj.get("prefixCells") {
        let cells_path = format!("{path}/prefixCells");
        for (i, c) in array(cells, &cells_path)?.iter().enumerate() {
            let cp = format!("{cells_path}/{i}");
            let co = object(c, &cp)?;
            allow_keys(co, &cp, &["mass", "h"])?;
            let mass = rational(field(co, &cp, "mass")?, &format!("{cp}/mass"))?;
            let h = rational(field(co, &cp, "h")?, &format!("{cp}/h"))?;
            if !mass.is_positive() {
                return Err(issue(&format!("{cp}/mass"), "must be positive"));
            }
            if !h.is_positive() {
                return Err(issue(&format!("{cp}/h"), "must be positive"));
            }
            prefix.push(Cell { mass, h });
        }
    }
    let tail = match (obj.get("tailMass"), obj.get("tailH")) {
        (None, None) => None,
        (Some(m), Some(h)) => Some(CellTail {
            mass: closed_form(m, &format!("{path}/tailMass"))?,
            h: closed_form(h, &format!("{path}/tailH"))?,
        }),
        (Some(_), None) => return Err(issue(&format!("{path}/tailH"), "required with tailMass")),
        (None, Some(_)) => return Err(issue(&format!("{path}/tailMass"), "required with tailH")),
    };
    let model = CellModel::new(prefix, tail).map_err(|e| issue(path, e.to_string()))?;
    let mut elements = BTreeMap::new();
    if let Some(els) = obj.get("elements") {
        let els_path = format!("{path}/elements");
        for (name, e) in object(els, &els_path)? {
            let ep = format!("{els_path}/{}", escape_pointer(name));
            elements.insert(name.clone(), element(e, &ep)?);
        }
    }
    Ok(CellModelDoc { model, elements })
}

fn escape_pointer(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

fn complex(v: &Value, path: &str) -> Parsed<Complex64> {
    match v {
        Value::Array(pair) if pair.len() == 2 => Ok(Complex64::new(
            real(&pair[0], &format!("{path}/0"))?,
            real(&pair[1], &format!("{path}/1"))?,
        )),
        Value::Array(_) => Err(issue(path, "expected a [re, im] pair")),
        other => Ok(Complex64::new(real(other, path)?, 0.0)),
    }
}

fn element(v: &Value, path: &str) -> Parsed<Element> {
    let obj = object(v, path)?;
    allow_keys(obj, path, &["type", "n", "cells"])?;
    let kind = field(obj, path, "type")?
        .as_str()
        .ok_or_else(|| issue(&format!("{path}/type"), "expected a string"))?;
    let cells_path = format!("{path}/cells");
    let cells = array(field(obj, path, "cells")?, &cells_path)?;
    let cell_parts = |i: usize, c: &Value| -> Parsed<(String, f64, Value)> {
        let cp = format!("{cells_path}/{i}");
        let co = object(c, &cp)?;
        allow_keys(co, &cp, &["mass", "value"])?;
        let mass = real(field(co, &cp, "mass")?, &format!("{cp}/mass"))?;
        if mass <= 0.0 {
            return Err(issue(&format!("{cp}/mass"), "must be positive"));
        }
        let value = field(co, &cp, "value")?.clone();
        Ok((cp, mass, value))
    };
    match kind {
        "scalar-step" => {
            if obj.contains_key("n") {
                return Err(issue(
                    &format!("{path}/n"),
                    "only matrix-step elements have a size",
                ));
            }
            let mut out = Vec::with_capacity(cells.len());
            for (i, c) in cells.iter().enumerate() {
                let (cp, mass, value) = cell_parts(i, c)?;
                out.push(StepCell {
                    mass,
                    value: complex(&value, &format!("{cp}/value"))?,
                });
            }
            StepFunction::new(out)
                .map(Element::Scalar)
                .map_err(|e| issue(path, e.to_string()))
        }
        "matrix-step" => {
            let n = integer(field(obj, path, "n")?, &format!("{path}/n"))?;
            if !(1..=64).contains(&n) {
                return Err(issue(
                    &format!("{path}/n"),
                    "matrix size must be between 1 and 64",
                ));
            }
            let n = n as usize;
            let mut out = Vec::with_capacity(cells.len());
            for (i, c) in cells.iter().enumerate() {
                let (cp, mass, value) = cell_parts(i, c)?;
                let vp = format!("{cp}/value");
                let entries = array(&value, &vp)?;
                if entries.len() != n * n {
                    return Err(issue(
                        &vp,
                        format!("expected {} entries in row-major order", n * n),
                    ));
                }
                let data = entries
                    .iter()
                    .enumerate()
                    .map(|(j, e)| complex(e, &format!("{vp}/{j}")))
                    .collect::<Parsed<Vec<_>>>()?;
                let value = SquareMatrix::new(n, data).map_err(|e| issue(&vp, e.to_string()))?;
                out.push(MatrixCell { mass, value });
            }
            MatrixStepFunction::new(n, out)
                .map(Element::Matrix)
                .map_err(|e| issue(path, e.to_string()))
        }
        other => Err(issue(
            &format!("{path}/type"),
            format!("unknown element type {other:?}, expected scalar-step or matrix-step"),
        )),
    }
}

fn line(v: &Value, path: &str) -> Parsed<PassportLine> {
    let obj = object(v, path)?;
    allow_keys(obj, path, &["prefix", "tail"])?;
    let mut prefix = Vec::new();
    if let Some(p) = obj.get("prefix") {
        let pp = format!("{path}/prefix");
        for (i, w) in array(p, &pp)?.iter().enumerate() {
            let wp = format!("{pp}/{i}");
            let k = integer(w, &wp)?;
            let k = u32::try_from(k).map_err(|_| issue(&wp, "aleph index must be a non-negative integer"))?;
            prefix.push(Cardinal::aleph(k));
        }
    }
    let tail = match obj.get("tail") {
        None | Some(Value::Null) => None,
        Some(t) => {
            let tp = format!("{path}/tail");
            let to = object(t, &tp)?;
            allow_keys(to, &tp, &["b0", "b1"])?;
            let b0 = integer(field(to, &tp, "b0")?, &format!("{tp}/b0"))?;
            let b1 = integer(field(to, &tp, "b1")?, &format!("{tp}/b1"))?;
            Some(AffineTail::new(b0, b1))
        }
    };
    Ok(PassportLine { prefix, tail })
}

fn passport(v: &Value, path: &str) -> Parsed<Passport> {
    let obj = object(v, path)?;
    allow_keys(obj, path, &["sLine", "uLine", "uMeasures"])?;
    let s_line = line(field(obj, path, "sLine")?, &format!("{path}/sLine"))?;
    let u_line = line(field(obj, path, "uLine")?, &format!("{path}/uLine"))?;
    let mp = format!("{path}/uMeasures");
    let mo = object(field(obj, path, "uMeasures")?, &mp)?;
    allow_keys(mo, &mp, &["prefix", "tail"])?;
    let mut prefix = Vec::new();
    if let Some(p) = mo.get("prefix") {
        let pp = format!("{mp}/prefix");
        for (i, m) in array(p, &pp)?.iter().enumerate() {
            prefix.push(rational(m, &format!("{pp}/{i}"))?);
        }
    }
    let tail = match mo.get("tail") {
        None | Some(Value::Null) => None,
        Some(t) => Some(closed_form_sum(t, &format!("{mp}/tail"))?),
    };
    Ok(Passport::new(s_line, u_line, SeqSpec { prefix, tail }))
}

fn algebra_blocks(v: &Value, path: &str) -> Parsed<Vec<Block>> {
    let obj = object(v, path)?;
    allow_keys(obj, path, &["blocks"])?;
    let bp = format!("{path}/blocks");
    let mut blocks = Vec::new();
    for (i, b) in array(field(obj, path, "blocks")?, &bp)?.iter().enumerate() {
        let p = format!("{bp}/{i}");
        let o = object(b, &p)?;
        allow_keys(o, &p, &["n", "center"])?;
        let n = integer(field(o, &p, "n")?, &format!("{p}/n"))?;
        let n = usize::try_from(n).map_err(|_| issue(&format!("{p}/n"), "matrix size must be positive"))?;
        let center = passport(field(o, &p, "center")?, &format!("{p}/center"))?;
        blocks.push(Block { n, center });
    }
    Ok(blocks)
}

pub fn rational_to_json(r: &BigRational) -> Value {
    if r.denom().is_one() {
        Value::String(r.numer().to_string())
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

fn closed_form_json(f: &ClosedForm) -> Value {
    json!({
        "c": rational_to_json(f.c()),
        "p": rational_to_json(f.p()),
        "q": rational_to_json(f.q()),
    })
}

fn line_json(l: &PassportLine) -> Value {
    let mut obj = Map::new();
    obj.insert(
        "prefix".into(),
        Value::Array(l.prefix.iter().map(|c| json!(c.aleph_index())).collect()),
    );
    if let Some(t) = l.tail {
        obj.insert("tail".into(), json!({ "b0": t.b0, "b1": t.b1 }));
    }
    Value::Object(obj)
}

pub fn passport_json(p: &Passport) -> Value {
    let mut measures = Map::new();
    measures.insert(
        "prefix".into(),
        Value::Array(p.u_measures.prefix.iter().map(rational_to_json).collect()),
    );
    if let Some(t) = &p.u_measures.tail {
        let tail = match t.as_single() {
            Some(f) => closed_form_json(f),
            None => Value::Array(t.terms().iter().map(closed_form_json).collect()),
        };
        measures.insert("tail".into(), tail);
    }
    json!({
        "sLine": line_json(&p.s_line),
        "uLine": line_json(&p.u_line),
        "uMeasures": Value::Object(measures),
    })
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn element_json(e: &Element) -> Value {
    match e {
        Element::Scalar(f) => json!({
            "type": "scalar-step",
            "cells": f.cells().iter().map(|c| json!({
                "mass": c.mass,
                "value": complex_json(c.value),
            })).collect::<Vec<_>>(),
        }),
        Element::Matrix(f) => json!({
            "type": "matrix-step",
            "n": f.size(),
            "cells": f.cells().iter().map(|c| json!({
                "mass": c.mass,
                "value": c.value.entries().iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
    }
}

fn body_json(doc: &Document) -> Value {
    match doc {
        Document::CellModel(cm) => {
            let mut obj = Map::new();
            obj.insert(
                "prefixCells".into(),
                Value::Array(
                    cm.model
                        .prefix()
                        .iter()
                        .map(|c| json!({ "mass": rational_to_json(&c.mass), "h": rational_to_json(&c.h) }))
                        .collect(),
                ),
            );
            if let Some(t) = cm.model.tail() {
                obj.insert("tailMass".into(), closed_form_json(&t.mass));
                obj.insert("tailH".into(), closed_form_json(&t.h));
            }
            if !cm.elements.is_empty() {
                obj.insert(
                    "elements".into(),
                    Value::Object(
                        cm.elements
                            .iter()
                            .map(|(k, e)| (k.clone(), element_json(e)))
                            .collect(),
                    ),
                );
            }
            Value::Object(obj)
        }
        Document::Passport(p) => passport_json(p),
        Document::Algebra(d) => json!({
            "blocks": d.blocks().iter().map(|b| json!({
                "n": b.n,
                "center": passport_json(&b.center),
            })).collect::<Vec<_>>(),
        }),
    }
}

/// Pretty-printed JSON with sorted keys.
pub fn serialize(doc: &Document) -> String {
    let value = json!({
        "version": VERSION,
        "kind": doc.kind(),
        "body": body_json(doc),
    });
    let mut text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    const PASSPORT: &str = r#"{
        "version": 1,
        "kind": "passport",
        "body": {
            "sLine": {"prefix": [0]},
            "uLine": {"prefix": [1, 2]},
            "uMeasures": {"prefix": ["1/3", "0.25"]}
        }
    }"#;

    #[test]
    fn minimal_passport() {
        let Document::Passport(p) = parse(PASSPORT).unwrap() else {
            panic!()
        };
        assert_eq!(p.u_measures.prefix, [r(1, 3), r(1, 4)]);
        assert_eq!(p.s_line, PassportLine::finite(&[0]));
    }

    #[test]
    fn rationals_are_exact() {
        assert_eq!(parse_rational("1/3"), Some(r(1, 3)));
        assert_eq!(parse_rational("-0.125"), Some(r(-1, 8)));
        assert_eq!(parse_rational("2.5e-1"), Some(r(1, 4)));
        assert_eq!(parse_rational("12e2"), Some(r(1200, 1)));
        assert_eq!(parse_rational("0.1"), Some(r(1, 10)));
        assert_eq!(parse_rational(".5"), Some(r(1, 2)));
        for bad in ["", "1/0", "a", "1.2.3", "-", "1e", "1/2/3"] {
            assert_eq!(parse_rational(bad), None, "{bad}");
        }
    }

    #[test]
    fn length_mismatch_points_at_measures() {
        let text = PASSPORT.replace(r#"["1/3", "0.25"]"#, r#"["1/3"]"#);
        let Err(DocumentError::Semantic(issues)) = parse(&text) else {
            panic!()
        };
        assert_eq!(issues[0].path, "/body/uMeasures");
    }

    #[test]
    fn syntax_errors_have_positions() {
        let Err(DocumentError::Syntax { line, column, .. }) = parse("{\n  \"version\": 1,\n  oops\n}") else {
            panic!()
        };
        assert_eq!((line, column), (3, 3));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = PASSPORT.replace("\"sLine\"", "\"sline\"");
        let Err(DocumentError::Semantic(issues)) = parse(&text) else {
            panic!()
        };
        assert_eq!(issues[0].path, "/body/sline");
    }

    #[test]
    fn cell_model_with_elements_round_trips() {
        let text = r#"{
            "version": 1, "kind": "cell-model",
            "body": {
                "prefixCells": [{"mass": "1/2", "h": "3"}],
                "tailMass": {"c": "1", "p": "0", "q": "1/2"},
                "tailH": {"c": "1", "p": "1", "q": "1"},
                "elements": {
                    "f": {"type": "scalar-step", "cells": [{"mass": 1, "value": [3, 0]}]},
                    "T": {"type": "matrix-step", "n": 2,
                          "cells": [{"mass": 0.5, "value": [[1,0],[1,0],[0,0],[1,0]]}]}
                }
            }
        }"#;
        let doc = parse(text).unwrap();
        assert_eq!(parse(&serialize(&doc)).unwrap(), doc);
    }

    #[test]
    fn matrix_entries_must_fill_the_square() {
        let text = r#"{"version": 1, "kind": "cell-model", "body": {"elements": {
            "T": {"type": "matrix-step", "n": 2, "cells": [{"mass": 1, "value": [[1,0]]}]}}}}"#;
        let Err(DocumentError::Semantic(issues)) = parse(text) else {
            panic!()
        };
        assert_eq!(issues[0].path, "/body/elements/T/cells/0/value");
    }

    #[test]
    fn algebra_reports_block_paths() {
        let text = r#"{"version": 1, "kind": "algebra", "body": {"blocks": [
            {"n": 0, "center": {"sLine": {}, "uLine": {"prefix": [0]}, "uMeasures": {"prefix": ["-1"]}}}
        ]}}"#;
        let Err(DocumentError::Semantic(issues)) = parse(text) else {
            panic!()
        };
        let paths: Vec<&str> = issues.iter().map(|i| i.path.as_str()).collect();
        assert_eq!(
            paths,
            ["/body/blocks/0/n", "/body/blocks/0/center/uMeasures/prefix/0"]
        );
    }

    #[test]
    fn wrong_version_is_rejected() {
        let Err(DocumentError::Semantic(issues)) =
            parse(&PASSPORT.replace("\"version\": 1", "\"version\": 2"))
        else {
            panic!()
        };
        assert_eq!(issues[0].path, "/version");
    }
}
