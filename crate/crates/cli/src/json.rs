//! Deterministic JSON encodings of exact values.

use serde_json::{json, Map, Value};
use wres_core::symbolic::gauss::fmt_q;
use wres_core::symbolic::{GaussianRational, Quantity, Q};

/// `"num/den"` for real values, `{"re", "im"}` otherwise.
pub fn coefficient(c: &GaussianRational) -> Value {
    if c.is_real() {
        Value::String(fmt_q(&c.re))
    } else {
        json!({ "re": fmt_q(&c.re), "im": fmt_q(&c.im) })
    }
}

pub fn rational(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

/// A float, or `null` when it is not finite.
pub fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

fn numeric(q: &Quantity) -> Value {
    match q.to_f64() {
        Some((re, 0.0)) => number(re),
        Some((re, im)) => json!({ "re": number(re), "im": number(im) }),
        None => Value::Null,
    }
}

/// An exact value: one `{coef, unit}` term (or a `terms` list when the value
/// is a sum of several units) plus its floating value under `numeric` when
/// every unit is a numeric constant.
pub fn quantity(q: &Quantity) -> Value {
    let terms: Vec<Value> = q.terms().map(|(u, c)| json!({ "coef": coefficient(c), "unit": u.labels() })).collect();
    let mut m = Map::new();
    match terms.len() {
        0 => {
            m.insert("coef".into(), Value::String("0".into()));
            m.insert("unit".into(), Value::Array(vec![]));
        }
        1 => {
            if let Value::Object(t) = terms.into_iter().next().expect("one term") {
                m.extend(t);
            }
        }
        _ => {
            m.insert("terms".into(), Value::Array(terms));
        }
    }
    m.insert("numeric".into(), numeric(q));
    Value::Object(m)
}

/// Pretty-printed JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable value");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use wres_core::symbolic::{q, Symbol, Unit};

    #[test]
    fn single_term_layout() {
        let v = (&(&Quantity::pi() * &Quantity::unit(Unit::Sym(Symbol::HPrime))) * &Quantity::omega(3)).scale_q(&q(-3, 4));
        let j = quantity(&v);
        assert_eq!(j["coef"], "-3/4");
        assert_eq!(j["numeric"], Value::Null);
        assert_eq!(j["unit"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn zero_and_complex() {
        assert_eq!(quantity(&Quantity::zero())["coef"], "0");
        let i = Quantity::constant(GaussianRational::new(q(0, 1), q(2, 1)));
        assert_eq!(quantity(&i)["coef"], json!({"re": "0", "im": "2"}));
        assert_eq!(quantity(&i)["numeric"], json!({"re": 0.0, "im": 2.0}));
    }
}
