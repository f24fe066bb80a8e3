use std::fmt::Write;

use num_traits::{One, Zero};

use crate::front::LinkData;
use crate::surgery::{ContactSurgeryDiagram, SurgeryCoefficient};

/// Canonical text form of a coefficient: `+1`, `-1`, `inf`, an integer,
/// or `p/q`.
pub fn coefficient_string(c: &SurgeryCoefficient) -> String {
    match c {
        SurgeryCoefficient::Infinity => "inf".to_string(),
        SurgeryCoefficient::Finite(r) => {
            if r.is_one() {
                "+1".to_string()
            } else if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
    }
}

/// Deterministic names for abstract components: the stored label when
/// present, otherwise `K{i}` (made unique against user labels).
pub(crate) fn component_names(labels: &[Option<String>]) -> Vec<String> {
    let taken: Vec<&str> = labels.iter().flatten().map(String::as_str).collect();
    labels
        .iter()
        .enumerate()
        .map(|(i, label)| match label {
            Some(name) => name.clone(),
            None => {
                let mut name = format!("K{}", i + 1);
                while taken.contains(&name.as_str()) {
                    name.push('_');
                }
                name
            }
        })
        .collect()
}

/// Prints a diagram in canonical form; `parse(print(d))` is semantically
/// identical to `d`.
pub fn print(diagram: &ContactSurgeryDiagram) -> String {
    let mut out = String::new();
    match diagram.link() {
        LinkData::Front(front) => {
            if !front.events().is_empty() {
                out.push_str("front {\n");
                for chunk in front.events().chunks(12) {
                    out.push_str("  ");
                    for event in chunk {
                        let _ = write!(out, "{event}; ");
                    }
                    out.pop();
                    out.push('\n');
                }
                out.push_str("}\n");
            }
            for (i, label) in front.labels().iter().enumerate() {
                if let Some(name) = label {
                    let _ = writeln!(out, "label {} {}", i + 1, name);
                }
            }
            for (i, &seed) in front.seeds().iter().enumerate() {
                if !seed {
                    let _ = writeln!(out, "orient {} -", i + 1);
                }
            }
            for (i, c) in diagram.coefficients().iter().enumerate() {
                let _ = writeln!(out, "surgery {} = {}", i + 1, coefficient_string(c));
            }
        }
        LinkData::Abstract(data) => {
            let t = data.component_count();
            if t == 0 {
                return out;
            }
            out.push_str("abstract\n");
            let names = component_names(&data.labels);
            for i in 0..t {
                let _ = writeln!(out, "knot {} tb={} rot={};", names[i], data.tb[i], data.rot[i]);
            }
            for i in 0..t {
                for j in (i + 1)..t {
                    if !data.lk[i][j].is_zero() {
                        let _ =
                            writeln!(out, "lk {} {} = {};", names[i], names[j], data.lk[i][j]);
                    }
                }
            }
            for (i, c) in diagram.coefficients().iter().enumerate() {
                let _ = writeln!(out, "surgery {} = {}", names[i], coefficient_string(c));
            }
        }
    }
    out
}
