use std::str::FromStr;

use serde_json::{json, Map, Number, Value};

use crate::exactalg::{Int, Rational};
use crate::homology::{ChernClassData, HomologyGroup};
use crate::invariants::D3Result;
use crate::surgery::ContactSurgeryDiagram;

use super::print::coefficient_string;

fn int_value(n: &Int) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

/// Rationals are exact: integers print as plain numbers, everything else
/// as a `{"num", "den"}` pair.
fn rational_value(r: &Rational) -> Value {
    if r.is_integer() {
        int_value(r.numer())
    } else {
        json!({ "num": int_value(r.numer()), "den": int_value(r.denom()) })
    }
}

/// `{"components": [{"tb", "rot", "coefficient", "label"?}], "lk": [[..]]}`
pub fn diagram_to_json(diagram: &ContactSurgeryDiagram) -> Value {
    let data = diagram.abstract_link();
    let t = data.component_count();
    let components: Vec<Value> = (0..t)
        .map(|i| {
            let mut obj = Map::new();
            obj.insert("tb".into(), int_value(&data.tb[i]));
            obj.insert("rot".into(), int_value(&data.rot[i]));
            obj.insert(
                "coefficient".into(),
                Value::String(coefficient_string(diagram.coefficient(i))),
            );
            if let Some(label) = &data.labels[i] {
                obj.insert("label".into(), Value::String(label.clone()));
            }
            Value::Object(obj)
        })
        .collect();
    let lk: Vec<Value> = (0..t)
        .map(|i| Value::Array((0..t).map(|j| int_value(&data.lk[i][j])).collect()))
        .collect();
    // The link layer leaves the diagonal unused; it prints as zero.
    json!({ "components": components, "lk": lk })
}

/// `{"h1": {"free_rank", "torsion"}}`
pub fn homology_to_json(h: &HomologyGroup) -> Value {
    json!({
        "h1": {
            "free_rank": h.free_rank,
            "torsion": h.torsion.iter().map(int_value).collect::<Vec<_>>(),
        }
    })
}

/// `{"c1": {"coords", "torsion", "divisibility"}}`
pub fn chern_to_json(c: &ChernClassData) -> Value {
    json!({
        "c1": {
            "coords": c.pd_c1.iter().map(int_value).collect::<Vec<_>>(),
            "torsion": c.is_torsion,
            "divisibility": int_value(&c.divisibility),
        }
    })
}

/// `{"d3": {"num", "den", "c2", "sigma", "chi", "q"}}`
pub fn d3_to_json(d: &D3Result) -> Value {
    json!({
        "d3": {
            "num": int_value(d.value.numer()),
            "den": int_value(d.value.denom()),
            "c2": rational_value(&d.c_squared),
            "sigma": d.sigma,
            "chi": d.chi,
            "q": d.q,
        }
    })
}

/// Deterministic serialization (object keys are sorted).
pub fn to_json_string(value: &Value) -> String {
    serde_json::to_string(value).expect("serializable value")
}
