//! The fan interchange format:
//!
//! ```json
//! {"dim":3,"rays":[[1,0,0],[0,1,0]],"max_cones":[[0,1]]}
//! ```
//!
//! Ray indices are 0-based and each cone's index list is strictly ascending.
//! Emission is compact with keys in the order above, so emit → parse → emit is
//! byte-identical.

use std::fmt::Write;

use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::linalg::LatticeVector;

use super::{ConeIndices, Fan};

impl Fan {
    pub fn to_json(&self) -> String {
        let mut s = String::new();
        write!(s, "{{\"dim\":{},\"rays\":[", self.dim).unwrap();
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            write!(s, "[{r}]").unwrap();
        }
        s.push_str("],\"max_cones\":[");
        for (i, c) in self.max_cones.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push('[');
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    s.push(',');
                }
                write!(s, "{x}").unwrap();
            }
            s.push(']');
        }
        s.push_str("]}");
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let obj = value.as_object().ok_or_else(|| json_err("top level must be an object"))?;
        if let Some(key) = obj.keys().find(|k| !matches!(k.as_str(), "dim" | "rays" | "max_cones")) {
            return Err(json_err(&format!("unknown key \"{key}\"")));
        }
        let dim = field(obj, "dim")?.as_u64().ok_or_else(|| json_err("\"dim\" must be a non-negative integer"))?;
        let dim = usize::try_from(dim).map_err(|_| json_err("\"dim\" too large"))?;
        let rays = array(field(obj, "rays")?, "rays")?
            .iter()
            .enumerate()
            .map(|(i, r)| {
                array(r, &format!("rays[{i}]"))?
                    .iter()
                    .map(|x| integer(x, &format!("rays[{i}]")))
                    .collect::<Result<Vec<BigInt>>>()
                    .map(LatticeVector::new)
            })
            .collect::<Result<Vec<_>>>()?;
        let cones = array(field(obj, "max_cones")?, "max_cones")?
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let idx = array(c, &format!("max_cones[{i}]"))?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .and_then(|v| usize::try_from(v).ok())
                            .ok_or_else(|| json_err(&format!("max_cones[{i}] entries must be ray indices")))
                    })
                    .collect::<Result<ConeIndices>>()?;
                if idx.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(json_err(&format!("max_cones[{i}] must be strictly ascending")));
                }
                Ok(idx)
            })
            .collect::<Result<Vec<_>>>()?;
        Fan::new(dim, rays, cones)
    }
}

fn json_err(msg: &str) -> Error {
    Error::Json(msg.to_string())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| json_err(&format!("missing \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| json_err(&format!("\"{what}\" must be an array")))
}

fn integer(v: &Value, what: &str) -> Result<BigInt> {
    let Value::Number(n) = v else {
        return Err(json_err(&format!("{what}: coordinates must be integers")));
    };
    n.to_string().parse::<BigInt>().map_err(|_| json_err(&format!("{what}: coordinates must be integers, got {n}")))
}
