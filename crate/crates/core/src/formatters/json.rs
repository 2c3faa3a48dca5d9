use serde_json::Value;

use super::StyleConfig;
use crate::doc::{Arena, Doc};
use crate::error::ParseError;

/// Builds a document for a JSON text.
///
/// Every non-empty object and array is a group that is either on one line,
/// `[1, 2]`, or has one member per line indented by `indent_width`:
///
/// ```text
/// [
///   1,
///   2
/// ]
/// ```
pub fn json_to_doc<C: Clone>(src: &str, style: &StyleConfig, arena: &mut Arena<C>) -> Result<Doc, ParseError> {
    let value: Value = serde_json::from_str(src).map_err(|e| ParseError::Json(e.to_string()))?;
    Ok(value_to_doc(&value, style, arena))
}

pub fn value_to_doc<C: Clone>(value: &Value, style: &StyleConfig, arena: &mut Arena<C>) -> Doc {
    stacker::maybe_grow(64 * 1024, 1024 * 1024, || match value {
        Value::Array(items) if !items.is_empty() => {
            let members: Vec<Doc> = items.iter().map(|v| value_to_doc(v, style, arena)).collect();
            container("[", members, "]", style, arena)
        }
        Value::Object(fields) if !fields.is_empty() => {
            let members: Vec<Doc> = fields
                .iter()
                .map(|(k, v)| {
                    let key = text(arena, format!("{}: ", scalar(&Value::String(k.clone()))));
                    let v = value_to_doc(v, style, arena);
                    arena.concat(key, v)
                })
                .collect();
            container("{", members, "}", style, arena)
        }
        Value::Array(_) => text(arena, "[]".to_owned()),
        Value::Object(_) => text(arena, "{}".to_owned()),
        scalar_value => text(arena, scalar(scalar_value)),
    })
}

fn container<C: Clone>(open: &str, members: Vec<Doc>, close: &str, style: &StyleConfig, arena: &mut Arena<C>) -> Doc {
    let mut members = members.into_iter();
    let mut body = members.next().expect("non-empty container");
    for m in members {
        let comma = text(arena, ",".to_owned());
        let nl = arena.nl();
        let sep = arena.concat(comma, nl);
        let with_sep = arena.concat(body, sep);
        body = arena.concat(with_sep, m);
    }
    let open = text(arena, open.to_owned());
    let first_break = arena.brk();
    let inner = arena.concat(first_break, body);
    let nested = arena.nest(style.indent_width, inner);
    let last_break = arena.brk();
    let close = text(arena, close.to_owned());
    let d = arena.concat_all([open, nested, last_break, close]).expect("non-empty");
    arena.group(d)
}

fn text<C>(arena: &mut Arena<C>, s: String) -> Doc {
    arena.text(s).expect("serialized JSON has no raw line breaks")
}

fn scalar(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

/// The one-line rendering the JSON documents produce when everything fits.
pub fn json_one_line(value: &Value) -> String {
    match value {
        Value::Array(items) => {
            format!("[{}]", items.iter().map(json_one_line).collect::<Vec<_>>().join(", "))
        }
        Value::Object(fields) => format!(
            "{{{}}}",
            fields
                .iter()
                .map(|(k, v)| format!("{}: {}", scalar(&Value::String(k.clone())), json_one_line(v)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        v => scalar(v),
    }
}
