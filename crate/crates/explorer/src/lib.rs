//! Browser bindings for the explorer page.
//!
//! Each export takes a JSON request body and returns the JSON response body.
//! Domain and parse errors are thrown as JS strings carrying the error JSON.

use qdilog::service;
use wasm_bindgen::prelude::*;

/// Runs one request through the service router. Kept free of JS types so
/// native tests can drive it.
pub fn call(path: &str, body: &str) -> Result<String, String> {
    let r = service::handle("POST", path, body);
    if r.status == 200 {
        Ok(r.body)
    } else {
        Err(r.body)
    }
}

fn js(path: &str, body: &str) -> Result<String, JsValue> {
    call(path, body).map_err(|e| JsValue::from_str(&e))
}

/// `{quiver}` to the framed quiver state.
#[wasm_bindgen]
pub fn frame(body: &str) -> Result<String, JsValue> {
    js("/frame", body)
}

/// `{framed, k}` to the mutated state with the c-vector and its sign.
#[wasm_bindgen]
pub fn mutate(body: &str) -> Result<String, JsValue> {
    js("/mutate", body)
}

/// `{quiver, seq, D}` to the tropical word and its truncated series.
#[wasm_bindgen]
pub fn eval(body: &str) -> Result<String, JsValue> {
    js("/eval", body)
}

/// `{quiver, seq1, seq2, D}` to the frozen isomorphism and series verdict.
#[wasm_bindgen]
pub fn compare(body: &str) -> Result<String, JsValue> {
    js("/compare", body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    const A2: &str = r#"{"n":2,"arrows":[[1,2,1]]}"#;

    #[test]
    fn frame_mutate_round() {
        let f: Value = serde_json::from_str(&call("/frame", &format!(r#"{{"quiver":{A2}}}"#)).unwrap()).unwrap();
        let body = serde_json::json!({"framed": f["framed"], "k": 2}).to_string();
        let m: Value = serde_json::from_str(&call("/mutate", &body).unwrap()).unwrap();
        assert_eq!(m["beta"], serde_json::json!([0, 1]));
        assert_eq!(m["eps"], 1);
    }

    #[test]
    fn compare_pentagon() {
        let body = format!(r#"{{"quiver":{A2},"seq1":[1,2],"seq2":[2,1,2],"D":6}}"#);
        let v: Value = serde_json::from_str(&call("/compare", &body).unwrap()).unwrap();
        assert_eq!(v["equal_series"], true);
        assert_eq!(v["frozen_iso"], true);
    }

    #[test]
    fn exported_history_matches_core() {
        use qdilog::quiver::{FramedQuiver, GreenSeq, GreenSeqJson, Quiver, QuiverJson, StepJson};

        let f: Value = serde_json::from_str(&call("/frame", &format!(r#"{{"quiver":{A2}}}"#)).unwrap()).unwrap();
        let mut framed = f["framed"].clone();
        let mut steps = Vec::new();
        let mut display = vec![f["display"].clone()];
        for k in [1, 2] {
            let body = serde_json::json!({"framed": framed, "k": k}).to_string();
            let m: Value = serde_json::from_str(&call("/mutate", &body).unwrap()).unwrap();
            steps.push(StepJson { beta: serde_json::from_value(m["beta"].clone()).unwrap(), eps: m["eps"].as_i64().unwrap() as i8 });
            framed = m["framed"].clone();
            display.push(m["display"].clone());
            assert_eq!(m["maximal"], k == 2);
        }
        let exported = GreenSeqJson { seq: vec![1, 2], steps };
        let q = Quiver::from_json(&serde_json::from_str::<QuiverJson>(A2).unwrap()).unwrap();
        let start = FramedQuiver::frame(&q).unwrap();
        assert_eq!(GreenSeq::run(&start, &[0, 1]).unwrap().to_json(), exported);
        assert_eq!(display[1], "{2->1, 2->2', 1'->1}");
    }

    #[test]
    fn errors_carry_codes() {
        let e = call("/eval", "{").unwrap_err();
        assert!(e.contains("bad_request"));
        let body = format!(r#"{{"quiver":{A2},"seq":[3],"D":2}}"#);
        assert!(call("/eval", &body).unwrap_err().contains("vertex_out_of_range"));
    }
}
