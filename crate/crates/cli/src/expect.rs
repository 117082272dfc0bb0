//! Exact comparison of expected values against report fields.
//!
//! Fields that hold rational functions are compared as functions, so any
//! equivalent literal is accepted. `undefined` and `null` both match a
//! missing value. Maps only constrain the keys they mention.

use serde_json::{json, Value as Json};

use gradinv::exact::parse_rational_function;

use crate::syntax::{Diagnostic, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub field: String,
    pub expected: String,
    pub actual: Json,
}

impl Mismatch {
    pub fn to_json(&self) -> Json {
        json!({ "field": self.field, "expected": self.expected, "actual": self.actual })
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn strings_match(expected: &str, actual: &str, pos: crate::syntax::Pos) -> Result<bool, Diagnostic> {
    if expected == actual {
        return Ok(true);
    }
    match parse_rational_function(actual) {
        Ok(a) => {
            let e = parse_rational_function(expected)
                .map_err(|e| Diagnostic::new(pos, format!("expected value `{expected}` is not a rational function: {e}")))?;
            Ok(a == e)
        }
        Err(_) => Ok(false),
    }
}

/// Records every difference between `expected` and `actual` under `path`.
/// Errors are reserved for malformed expectations, such as unknown fields.
pub fn compare(expected: &Value, actual: &Json, path: &str, out: &mut Vec<Mismatch>) -> Result<(), Diagnostic> {
    let mut mismatch = || {
        out.push(Mismatch { field: path.to_string(), expected: expected.to_string(), actual: actual.clone() });
    };
    match (expected, actual) {
        (Value::Atom { text, .. }, Json::Null) => {
            if text != "undefined" && text != "null" {
                mismatch();
            }
        }
        (Value::Atom { text, .. }, _) if text == "undefined" || text == "null" => mismatch(),
        (Value::Atom { text, pos }, Json::Bool(b)) => match text.as_str() {
            "true" | "false" => {
                if (text == "true") != *b {
                    mismatch();
                }
            }
            _ => return Err(Diagnostic::new(*pos, format!("`{}` is a boolean, expected `true` or `false`", path))),
        },
        (Value::Atom { text, pos }, Json::Number(n)) => {
            let same = if let Some(i) = n.as_i64() {
                text.parse::<i64>().ok().map(|e| e == i)
            } else {
                text.parse::<f64>().ok().map(|e| Some(e) == n.as_f64())
            };
            match same {
                Some(true) => {}
                Some(false) => mismatch(),
                None => return Err(Diagnostic::new(*pos, format!("`{path}` is a number, found `{text}`"))),
            }
        }
        (Value::Atom { text, pos }, Json::String(s)) => {
            if !strings_match(text, s, *pos)? {
                mismatch();
            }
        }
        (Value::List { items, .. }, Json::Array(arr)) => {
            if items.len() != arr.len() {
                mismatch();
            } else {
                for (i, (e, a)) in items.iter().zip(arr).enumerate() {
                    compare(e, a, &format!("{path}[{i}]"), out)?;
                }
            }
        }
        (Value::Map { entries, .. }, Json::Object(obj)) => {
            for e in entries {
                match obj.get(&e.key) {
                    Some(a) => compare(&e.value, a, &join(path, &e.key), out)?,
                    None => {
                        let known: Vec<&str> = obj.keys().map(String::as_str).collect();
                        return Err(Diagnostic::new(
                            e.pos,
                            format!("unknown report field `{}` (fields: {})", join(path, &e.key), known.join(", ")),
                        ));
                    }
                }
            }
        }
        _ => mismatch(),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_value;

    fn check(expected: &str, actual: Json) -> Result<Vec<Mismatch>, Diagnostic> {
        let mut out = Vec::new();
        compare(&parse_value(expected).unwrap(), &actual, "", &mut out)?;
        Ok(out)
    }

    #[test]
    fn series_compare_as_functions() {
        let actual = json!({ "hilbertSeries": "(1 + t^9)/(1 - 2*t^3 + 2*t^9 - t^12)" });
        assert!(check("{ hilbertSeries: (1-t^18)/((1-t^3)^2(1-t^6)(1-t^9)) }", actual.clone()).unwrap().is_empty());
        let m = check("{ hilbertSeries: 1/(1-t)^3 }", actual).unwrap();
        assert_eq!(m[0].field, "hilbertSeries");
    }

    #[test]
    fn scalars_lists_and_nulls() {
        let actual = json!({ "a": true, "b": 3, "c": [1, 2], "d": null, "e": { "x": "full", "y": 1 } });
        assert!(check("{ a: true, b: 3, c: [1, 2], d: undefined, e: { x: full } }", actual.clone()).unwrap().is_empty());
        let m = check("{ a: false, b: 4, c: [1], d: 0, e: { x: neither } }", actual.clone()).unwrap();
        let fields: Vec<_> = m.iter().map(|m| m.field.as_str()).collect();
        assert_eq!(fields, ["a", "b", "c", "d", "e.x"]);
        assert!(check("{ zz: 1 }", actual.clone()).unwrap_err().message.contains("unknown report field"));
        assert!(check("{ a: yes }", actual).is_err());
    }
}
