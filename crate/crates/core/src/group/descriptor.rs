//! JSON group descriptors.
//!
//! ```json
//! "S3"
//! {"type": "permutation", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]}
//! {"type": "matrix", "cyclotomic_order": 4, "generators": [[[{"order":4,"coeffs":["0","1"]}, 0], [0, 1]]]}
//! ```
//!
//! Permutations are 0-based image lists. Matrix entries are cyclotomic
//! objects, integers, or rational strings.

use serde_json::Value;

use super::{builtin, Element, FiniteGroup};
use crate::error::{Error, Result};
use crate::exact::{rational_from_str, CycNumber, Matrix};

fn field<'a>(v: &'a Value, key: &str, pointer: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::descriptor(pointer, format!("missing field {key:?}")))
}

fn as_array<'a>(v: &'a Value, pointer: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::descriptor(pointer, "expected an array"))
}

fn as_usize(v: &Value, pointer: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::descriptor(pointer, "expected a non-negative integer"))
}

pub fn parse_cyc(v: &Value, pointer: &str) -> Result<CycNumber> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(CycNumber::from_int)
            .ok_or_else(|| Error::descriptor(pointer, "expected an integer")),
        Value::String(s) => rational_from_str(s)
            .map(CycNumber::from_rational)
            .ok_or_else(|| Error::descriptor(pointer, format!("bad rational {s:?}"))),
        Value::Object(_) => serde_json::from_value(v.clone()).map_err(|e| Error::descriptor(pointer, e.to_string())),
        _ => Err(Error::descriptor(
            pointer,
            "expected a number, rational string or cyclotomic object",
        )),
    }
}

pub fn parse_matrix(v: &Value, pointer: &str) -> Result<Matrix> {
    let rows = as_array(v, pointer)?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let rp = format!("{pointer}/{i}");
        let row = as_array(r, &rp)?;
        let mut cells = Vec::with_capacity(row.len());
        for (j, c) in row.iter().enumerate() {
            cells.push(parse_cyc(c, &format!("{rp}/{j}"))?);
        }
        out.push(cells);
    }
    let m = Matrix::from_rows(out).map_err(|e| Error::descriptor(pointer, e.to_string()))?;
    if !m.is_square() {
        return Err(Error::descriptor(pointer, "matrix must be square"));
    }
    Ok(m)
}

/// Parses a group descriptor located at `pointer` within the enclosing document.
pub fn parse_group(v: &Value, pointer: &str, cap: usize) -> Result<FiniteGroup> {
    if let Some(name) = v.as_str() {
        return builtin(name).map_err(|e| Error::descriptor(pointer, e.to_string()));
    }
    let kind = field(v, "type", pointer)?
        .as_str()
        .ok_or_else(|| Error::descriptor(format!("{pointer}/type"), "expected a string"))?;
    let gens_ptr = format!("{pointer}/generators");
    let gens = as_array(field(v, "generators", pointer)?, &gens_ptr)?;
    if gens.is_empty() {
        return Err(Error::descriptor(gens_ptr, "at least one generator is required"));
    }
    let mut elements = Vec::with_capacity(gens.len());
    match kind {
        "permutation" => {
            let degree = as_usize(field(v, "degree", pointer)?, &format!("{pointer}/degree"))?;
            for (i, gv) in gens.iter().enumerate() {
                let gp = format!("{gens_ptr}/{i}");
                let images = as_array(gv, &gp)?;
                if images.len() != degree {
                    return Err(Error::descriptor(gp, format!("expected {degree} images")));
                }
                let mut perm = Vec::with_capacity(degree);
                let mut seen = vec![false; degree];
                for (j, x) in images.iter().enumerate() {
                    let xp = format!("{gp}/{j}");
                    let x = as_usize(x, &xp)?;
                    if x >= degree || std::mem::replace(&mut seen[x], true) {
                        return Err(Error::descriptor(xp, "not a permutation"));
                    }
                    perm.push(x as u32);
                }
                elements.push(Element::Perm(perm));
            }
        }
        "matrix" => {
            let n = as_usize(
                field(v, "cyclotomic_order", pointer)?,
                &format!("{pointer}/cyclotomic_order"),
            )?;
            let mut dim = None;
            for (i, gv) in gens.iter().enumerate() {
                let gp = format!("{gens_ptr}/{i}");
                let m = parse_matrix(gv, &gp)?;
                if *dim.get_or_insert(m.rows()) != m.rows() {
                    return Err(Error::descriptor(gp, "generators must have equal size"));
                }
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        let o = m.get(r, c).order() as usize;
                        if n == 0 || n % o != 0 {
                            return Err(Error::descriptor(
                                format!("{gp}/{r}/{c}"),
                                format!("entry lies outside Q(zeta_{n})"),
                            ));
                        }
                    }
                }
                if m.inverse().is_err() {
                    return Err(Error::descriptor(gp, "matrix is not invertible"));
                }
                elements.push(Element::Matrix(m));
            }
        }
        other => {
            return Err(Error::descriptor(
                format!("{pointer}/type"),
                format!("unknown group type {other:?}"),
            ))
        }
    }
    let name = v.get("name").and_then(Value::as_str).unwrap_or(kind).to_string();
    FiniteGroup::generate(name, elements, cap).map_err(|e| match e {
        Error::CapExceeded { .. } => e,
        other => Error::descriptor(pointer, other.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn builtin_and_permutation() {
        assert_eq!(parse_group(&json!("A4"), "", 2000).unwrap().order(), 12);
        let g = parse_group(
            &json!({"type":"permutation","degree":3,"generators":[[1,0,2],[1,2,0]]}),
            "",
            2000,
        )
        .unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn matrix_group() {
        let i = json!({"order":4,"coeffs":["0","1"]});
        let mi = json!({"order":4,"coeffs":["0","-1"]});
        let d = json!({"type":"matrix","cyclotomic_order":4,"generators":[[[i, 0],[0, mi]], [[0,1],[-1,0]]]});
        assert_eq!(parse_group(&d, "", 2000).unwrap().order(), 8);
    }

    #[test]
    fn errors_carry_pointers() {
        let bad = json!({"type":"permutation","degree":3,"generators":[[1,0,2],[1,1,0]]});
        match parse_group(&bad, "/group", 2000).unwrap_err() {
            Error::Descriptor { pointer, .. } => assert_eq!(pointer, "/group/generators/1/1"),
            e => panic!("{e}"),
        }
        match parse_group(
            &json!({"type":"matrix","cyclotomic_order":3,"generators":[[[{"order":4,"coeffs":["0","1"]}]]]}),
            "",
            10,
        )
        .unwrap_err()
        {
            Error::Descriptor { pointer, .. } => assert_eq!(pointer, "/generators/0/0/0"),
            e => panic!("{e}"),
        }
        assert!(matches!(
            parse_group(&json!({"type":"lie"}), "", 10).unwrap_err(),
            Error::Descriptor { .. }
        ));
        let big = json!({"type":"permutation","degree":5,"generators":[[1,2,3,4,0],[1,0,2,3,4]]});
        assert!(matches!(
            parse_group(&big, "", 100).unwrap_err(),
            Error::CapExceeded { .. }
        ));
    }
}
