//! Model descriptor JSON. Errors name the offending field, e.g.
//! `inputs[2].range`.

use oak_core::model::Task;
use oak_core::wrapper::{EvaluationSpec, InputSpec, ModelDescriptor, OutputSpec, SchemaError, StateSpec};
use serde_json::{json, Map, Value};

type Object = Map<String, Value>;

fn object<'a>(value: &'a Value, field: &str) -> Result<&'a Object, SchemaError> {
    value.as_object().ok_or_else(|| SchemaError::new(field, "expected an object"))
}

fn only_known(obj: &Object, path: &str, known: &[&str]) -> Result<(), SchemaError> {
    match obj.keys().find(|k| !known.contains(&k.as_str())) {
        Some(k) => Err(SchemaError::new(join(path, k), "unknown field")),
        None => Ok(()),
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn string(obj: &Object, path: &str, key: &str) -> Result<String, SchemaError> {
    match obj.get(key) {
        Some(Value::String(s)) => Ok(s.clone()),
        Some(_) => Err(SchemaError::new(join(path, key), "expected a string")),
        None => Err(SchemaError::new(join(path, key), "missing")),
    }
}

fn optional_string(obj: &Object, path: &str, key: &str) -> Result<Option<String>, SchemaError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(_) => string(obj, path, key).map(Some),
    }
}

fn number(value: &Value, field: &str) -> Result<f64, SchemaError> {
    value.as_f64().ok_or_else(|| SchemaError::new(field, "expected a number"))
}

fn array<'a>(obj: &'a Object, key: &str, required: bool) -> Result<&'a [Value], SchemaError> {
    match obj.get(key) {
        Some(Value::Array(items)) => Ok(items),
        None | Some(Value::Null) if !required => Ok(&[]),
        None => Err(SchemaError::new(key, "missing")),
        Some(_) => Err(SchemaError::new(key, "expected an array")),
    }
}

fn input(value: &Value, path: &str) -> Result<InputSpec, SchemaError> {
    let obj = object(value, path)?;
    only_known(obj, path, &["concept", "transformation", "unit", "range"])?;
    let range = match obj.get("range") {
        None | Some(Value::Null) => None,
        Some(Value::Array(bounds)) if bounds.len() == 2 => {
            let field = join(path, "range");
            Some((number(&bounds[0], &field)?, number(&bounds[1], &field)?))
        }
        Some(_) => return Err(SchemaError::new(join(path, "range"), "expected [lower, upper]")),
    };
    Ok(InputSpec {
        concept: string(obj, path, "concept")?,
        transformation: string(obj, path, "transformation")?,
        unit: optional_string(obj, path, "unit")?,
        range,
    })
}

/// Parses and checks a descriptor.
pub fn parse_descriptor(text: &str) -> Result<ModelDescriptor, SchemaError> {
    let value: Value = serde_json::from_str(text).map_err(|e| SchemaError::new("$", e.to_string()))?;
    from_value(&value)
}

pub fn from_value(value: &Value) -> Result<ModelDescriptor, SchemaError> {
    let obj = object(value, "$")?;
    only_known(
        obj,
        "",
        &["model_id", "task", "algorithm", "inputs", "output", "states", "evaluation", "source"],
    )?;
    let task_name = string(obj, "", "task")?;
    let task: Task = task_name.parse().map_err(|e: String| SchemaError::new("task", e))?;

    let inputs = array(obj, "inputs", true)?
        .iter()
        .enumerate()
        .map(|(i, v)| input(v, &format!("inputs[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;

    let output = match obj.get("output") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let o = object(v, "output")?;
            only_known(o, "output", &["concept", "transformation"])?;
            Some(OutputSpec {
                concept: string(o, "output", "concept")?,
                transformation: string(o, "output", "transformation")?,
            })
        }
    };

    let states = array(obj, "states", false)?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let path = format!("states[{i}]");
            let s = object(v, &path)?;
            only_known(s, &path, &["concept", "value"])?;
            Ok(StateSpec { concept: string(s, &path, "concept")?, value: string(s, &path, "value")? })
        })
        .collect::<Result<Vec<_>, SchemaError>>()?;

    let evaluation = match obj.get("evaluation") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let e = object(v, "evaluation")?;
            only_known(e, "evaluation", &["metric", "value"])?;
            let value = e.get("value").ok_or_else(|| SchemaError::new("evaluation.value", "missing"))?;
            Some(EvaluationSpec { metric: string(e, "evaluation", "metric")?, value: number(value, "evaluation.value")? })
        }
    };

    let descriptor = ModelDescriptor {
        model_id: string(obj, "", "model_id")?,
        task,
        algorithm: string(obj, "", "algorithm")?,
        inputs,
        output,
        states,
        evaluation,
        source: optional_string(obj, "", "source")?,
    };
    descriptor.check()?;
    Ok(descriptor)
}

pub fn to_value(d: &ModelDescriptor) -> Value {
    let inputs: Vec<Value> = d
        .inputs
        .iter()
        .map(|i| {
            let mut v = json!({ "concept": i.concept, "transformation": i.transformation });
            if let Some(unit) = &i.unit {
                v["unit"] = json!(unit);
            }
            if let Some((lo, hi)) = i.range {
                v["range"] = json!([lo, hi]);
            }
            v
        })
        .collect();
    let mut v = json!({
        "model_id": d.model_id,
        "task": d.task.name(),
        "algorithm": d.algorithm,
        "inputs": inputs,
    });
    if let Some(o) = &d.output {
        v["output"] = json!({ "concept": o.concept, "transformation": o.transformation });
    }
    if !d.states.is_empty() {
        v["states"] = d.states.iter().map(|s| json!({ "concept": s.concept, "value": s.value })).collect();
    }
    if let Some(e) = &d.evaluation {
        v["evaluation"] = json!({ "metric": e.metric, "value": e.value });
    }
    if let Some(s) = &d.source {
        v["source"] = json!(s);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    const REGRESSOR: &str = r#"{
        "model_id": "Regressor_004",
        "task": "regression",
        "algorithm": "kNN-regression",
        "inputs": [
            {"concept": "SoilPH", "transformation": "min", "unit": "pH", "range": [3.5, 9.0]},
            {"concept": "SoilPH", "transformation": "max"},
            {"concept": "SoilPH", "transformation": "avg"}
        ],
        "output": {"concept": "SoilPH", "transformation": "identity"}
    }"#;

    fn field(text: &str) -> String {
        parse_descriptor(text).unwrap_err().field
    }

    #[test]
    fn parses_a_regressor() {
        let d = parse_descriptor(REGRESSOR).unwrap();
        assert_eq!(d.task, Task::Regression);
        assert_eq!(d.inputs.len(), 3);
        assert_eq!(d.inputs[0].range, Some((3.5, 9.0)));
        assert_eq!(d.inputs[0].unit.as_deref(), Some("pH"));
        assert_eq!(d.output.unwrap().concept, "SoilPH");
    }

    #[test]
    fn value_round_trip() {
        let d = parse_descriptor(REGRESSOR).unwrap();
        assert_eq!(from_value(&to_value(&d)).unwrap(), d);
        for d in oak_core::fixtures::example_models() {
            assert_eq!(from_value(&to_value(&d)).unwrap(), d);
        }
    }

    #[test]
    fn errors_name_the_field() {
        let without_output = REGRESSOR.replace(r#""output": {"concept": "SoilPH", "transformation": "identity"}"#, r#""source": "x""#);
        assert_eq!(field(&without_output), "output");
        assert_eq!(field(&REGRESSOR.replace("regression", "regresion")), "task");
        assert_eq!(field(&REGRESSOR.replace("[3.5, 9.0]", "[9.0, 3.5]")), "inputs[0].range");
        assert_eq!(field(&REGRESSOR.replace("[3.5, 9.0]", "[\"a\", 3.5]")), "inputs[0].range");
        assert_eq!(field(&REGRESSOR.replace("\"unit\"", "\"units\"")), "inputs[0].units");
        assert_eq!(field(&REGRESSOR.replace("\"Regressor_004\"", "4")), "model_id");
        assert_eq!(field("[1, 2]"), "$");
        assert_eq!(field("{"), "$");
    }
}
