//! JSON form of the model format.
//!
//! ```json
//! {"order": 2,
//!  "ops": {"add": {"kind": "hyper", "table": [[[0],[1]],[[1],[0,1]]]},
//!          "mul": {"kind": "composition", "table": [[[0],[0]],[[0],[1]]]}},
//!  "constants": {"zero": 0, "one": 1}}
//! ```
//!
//! Operation order follows key order. A hypermodule adds `"module"` (an
//! object with `order`, `ops` and `constants.zero` for the additive
//! structure) and `"action"` (a `p x m` array of module elements).

use serde_json::{json, Map, Value};

use super::{HyperTable, HypermoduleModel, Kind, Model, TwoOpModel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("json model: {0}")]
pub struct JsonModelError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, JsonModelError> {
    Err(JsonModelError(msg.into()))
}

fn op_value(table: &HyperTable) -> Value {
    json!({ "kind": table.kind().as_str(), "table": table.to_rows() })
}

fn ops_value(ops: &[(&str, &HyperTable)]) -> Value {
    let mut m = Map::new();
    for (name, t) in ops {
        m.insert((*name).to_string(), op_value(t));
    }
    Value::Object(m)
}

fn two_op_value(names: [&str; 2], model: &TwoOpModel) -> Map<String, Value> {
    let mut constants = Map::new();
    constants.insert("zero".into(), json!(model.zero()));
    if let Some(one) = model.one() {
        constants.insert("one".into(), json!(one));
    }
    let mut obj = Map::new();
    obj.insert("order".into(), json!(model.order()));
    obj.insert(
        "ops".into(),
        ops_value(&[(names[0], model.add()), (names[1], model.mul())]),
    );
    obj.insert("constants".into(), Value::Object(constants));
    obj
}

pub fn to_json(model: &Model) -> Value {
    match model {
        Model::Table { name, table } => json!({
            "order": table.order(),
            "ops": ops_value(&[(name.as_str(), table)]),
            "constants": {},
        }),
        Model::TwoOp { names, model } => Value::Object(two_op_value([&names[0], &names[1]], model)),
        Model::Hypermodule { names, model } => {
            let mut obj = two_op_value([&names[0], &names[1]], model.scalars());
            let m = model.madd().order();
            obj.insert(
                "module".into(),
                json!({
                    "order": m,
                    "ops": ops_value(&[(names[2].as_str(), model.madd())]),
                    "constants": { "zero": model.zero_m() },
                }),
            );
            let rows: Vec<Vec<usize>> = model.action().chunks(m).map(|r| r.to_vec()).collect();
            obj.insert("action".into(), json!(rows));
            Value::Object(obj)
        }
    }
}

fn get_usize(obj: &Map<String, Value>, key: &str) -> Result<Option<usize>, JsonModelError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_u64()
            .map(|x| Some(x as usize))
            .ok_or_else(|| JsonModelError(format!("`{key}` must be a non-negative integer"))),
    }
}

fn parse_ops(
    obj: &Map<String, Value>,
) -> Result<(usize, Vec<(String, HyperTable)>), JsonModelError> {
    let order = get_usize(obj, "order")?.ok_or_else(|| JsonModelError("missing `order`".into()))?;
    let Some(Value::Object(ops)) = obj.get("ops") else {
        return err("missing `ops` object");
    };
    let mut out = Vec::new();
    for (name, op) in ops {
        let kind: Kind = op
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| JsonModelError(format!("op `{name}` lacks `kind`")))?
            .parse()
            .map_err(JsonModelError)?;
        let rows: Vec<Vec<Vec<usize>>> =
            serde_json::from_value(op.get("table").cloned().unwrap_or(Value::Null))
                .map_err(|e| JsonModelError(format!("op `{name}` table: {e}")))?;
        if rows.len() != order {
            return err(format!(
                "op `{name}` has {} rows, expected {order}",
                rows.len()
            ));
        }
        for row in &rows {
            for cell in row {
                if cell.windows(2).any(|w| w[0] >= w[1]) {
                    return err(format!(
                        "op `{name}`: cell {cell:?} is not strictly ascending"
                    ));
                }
            }
        }
        let table = HyperTable::from_rows(kind, &rows)
            .map_err(|e| JsonModelError(format!("op `{name}`: {e}")))?;
        out.push((name.clone(), table));
    }
    Ok((order, out))
}

pub fn from_json(value: &Value) -> Result<Model, JsonModelError> {
    let Value::Object(obj) = value else {
        return err("expected an object");
    };
    let (_, mut ops) = parse_ops(obj)?;
    let constants = match obj.get("constants") {
        Some(Value::Object(c)) => c.clone(),
        None => Map::new(),
        Some(_) => return err("`constants` must be an object"),
    };
    match ops.len() {
        1 => {
            if !constants.is_empty() {
                return err("constants require two operations");
            }
            let (name, table) = ops.remove(0);
            Ok(Model::Table { name, table })
        }
        2 => {
            let (mul_name, mul) = ops.remove(1);
            let (add_name, add) = ops.remove(0);
            let zero = get_usize(&constants, "zero")?
                .ok_or_else(|| JsonModelError("missing `constants.zero`".into()))?;
            let one = get_usize(&constants, "one")?;
            let scalars =
                TwoOpModel::new(add, mul, zero, one).map_err(|e| JsonModelError(e.to_string()))?;
            let Some(module) = obj.get("module") else {
                return Ok(Model::TwoOp {
                    names: [add_name, mul_name],
                    model: scalars,
                });
            };
            let Value::Object(module) = module else {
                return err("`module` must be an object");
            };
            let (_, mut mops) = parse_ops(module)?;
            if mops.len() != 1 {
                return err("`module` must hold exactly one operation");
            }
            let (madd_name, madd) = mops.remove(0);
            let mconst = match module.get("constants") {
                Some(Value::Object(c)) => c.clone(),
                _ => return err("`module.constants` missing"),
            };
            let zero_m = get_usize(&mconst, "zero")?
                .ok_or_else(|| JsonModelError("missing `module.constants.zero`".into()))?;
            let rows: Vec<Vec<usize>> =
                serde_json::from_value(obj.get("action").cloned().unwrap_or(Value::Null))
                    .map_err(|e| JsonModelError(format!("action: {e}")))?;
            if rows.iter().any(|r| r.len() != madd.order()) {
                return err("action rows must have one entry per module element");
            }
            let action = rows.into_iter().flatten().collect();
            let model = HypermoduleModel::new(scalars, madd, zero_m, action)
                .map_err(|e| JsonModelError(e.to_string()))?;
            Ok(Model::Hypermodule {
                names: [add_name, mul_name, madd_name],
                model,
            })
        }
        n => err(format!("expected 1 or 2 operations, found {n}")),
    }
}

pub fn parse_json(text: &str) -> Result<Model, JsonModelError> {
    let v: Value = serde_json::from_str(text).map_err(|e| JsonModelError(e.to_string()))?;
    from_json(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::format;

    #[test]
    fn json_matches_text() {
        let text = "order 2\nop add hyper\n{0} {1}\n{1} {0,1}\nop mul composition\n0 0\n0 1\nzero 0\none 1\norder 2\nop madd hyper\n{0} {1}\n{1} {0,1}\nzero 0\naction 2 2\n0 0\n0 1\n";
        let m = format::parse(text).unwrap();
        let v = to_json(&m);
        assert_eq!(from_json(&v).unwrap(), m);
        assert_eq!(v["ops"]["add"]["table"][1][1], json!([0, 1]));
    }

    #[test]
    fn rejects_bad_json() {
        assert!(parse_json(
            r#"{"order":2,"ops":{"m":{"kind":"hyper","table":[[[0,2],[0]],[[1],[1]]]}}}"#
        )
        .is_err());
        assert!(parse_json(
            r#"{"order":1,"ops":{"m":{"kind":"hyper","table":[[[]]]}},"constants":{"zero":0}}"#
        )
        .is_err());
    }
}
