//! Stateless JSON request handling for the mutation explorer.
//!
//! Every request carries the whole state, so a response depends only on the
//! request. The HTTP server and the browser build both call [`handle`].

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::qtorus::{SeriesError, SeriesJson};
use crate::quiver::{
    frozen_iso, green_search, tropical_e, tropical_word, Color, FramedJson, FramedQuiver, GreenSeq, Quiver, QuiverError,
    QuiverJson,
};

/// Largest truncation degree served.
pub const MAX_DEPTH: u32 = 10;
/// Longest sequence a search may explore.
pub const MAX_SEARCH_LEN: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Response {
    pub status: u16,
    pub body: String,
}

impl Response {
    fn ok(v: Value) -> Self {
        Self { status: 200, body: v.to_string() }
    }

    fn error(status: u16, code: &str, message: impl Into<String>) -> Self {
        let v = json!({ "error": { "code": code, "message": message.into() } });
        Self { status, body: v.to_string() }
    }
}

struct Failure(Response);

impl From<QuiverError> for Failure {
    fn from(e: QuiverError) -> Self {
        let code = match e {
            QuiverError::VertexOutOfRange { .. } => "vertex_out_of_range",
            QuiverError::Loop { .. } => "loop",
            QuiverError::TwoCycle { .. } => "two_cycle",
            QuiverError::FrozenVertex { .. } => "frozen_vertex",
            QuiverError::SignCoherence { .. } => "sign_coherence",
            QuiverError::BadMatrix(_) => "bad_matrix",
            QuiverError::Cyclic => "cyclic",
            QuiverError::NoMaximalGreen { .. } => "no_maximal_green",
        };
        Failure(Response::error(422, code, e.to_string()))
    }
}

impl From<SeriesError> for Failure {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::Quiver(q) => q.into(),
            SeriesError::DepthTooLarge { .. } => Failure(Response::error(422, "depth_too_large", e.to_string())),
            SeriesError::VertexOutOfRange { .. } => Failure(Response::error(422, "vertex_out_of_range", e.to_string())),
            other => Failure(Response::error(422, "series", other.to_string())),
        }
    }
}

fn parse<T: DeserializeOwned>(body: &str) -> Result<T, Failure> {
    serde_json::from_str(body).map_err(|e| Failure(Response::error(400, "bad_request", e.to_string())))
}

fn check_depth(d: u32) -> Result<u32, Failure> {
    if d > MAX_DEPTH {
        return Err(Failure(Response::error(
            422,
            "depth_too_large",
            format!("truncation degree {d} exceeds the server limit {MAX_DEPTH}"),
        )));
    }
    Ok(d)
}

fn quiver_from(j: &QuiverJson) -> Result<Quiver, Failure> {
    let q = Quiver::from_json(j)?;
    q.check_loop_free()?;
    for k in 0..q.n() {
        q.check_no_two_cycle_at(k)?;
    }
    Ok(q)
}

/// 1-based vertices in, 0-based out.
fn zero_based(seq: &[usize], n: usize) -> Result<Vec<usize>, Failure> {
    seq.iter()
        .map(|&k| if k == 0 || k > n { Err(QuiverError::VertexOutOfRange { vertex: k, n }.into()) } else { Ok(k - 1) })
        .collect()
}

#[derive(Serialize)]
struct FramedState {
    framed: FramedJson,
    display: String,
    colors: Vec<Color>,
    maximal: bool,
}

impl FramedState {
    fn of(f: &FramedQuiver) -> Self {
        Self { framed: f.to_json(), display: f.to_string(), colors: f.colors(), maximal: f.is_maximal() }
    }
}

#[derive(Deserialize)]
struct FrameReq {
    quiver: QuiverJson,
}

#[derive(Deserialize)]
struct MutateReq {
    framed: FramedJson,
    k: usize,
}

#[derive(Serialize)]
struct MutateResp {
    #[serde(flatten)]
    state: FramedState,
    beta: Vec<i64>,
    eps: i8,
}

#[derive(Deserialize)]
struct EvalReq {
    quiver: QuiverJson,
    seq: Vec<usize>,
    #[serde(rename = "D")]
    depth: u32,
}

#[derive(Serialize)]
struct StepOut {
    k: usize,
    beta: Vec<i64>,
    eps: i8,
}

fn steps_out(g: &GreenSeq) -> Vec<StepOut> {
    g.steps.iter().map(|s| StepOut { k: s.vertex + 1, beta: s.beta.0.clone(), eps: s.eps }).collect()
}

#[derive(Serialize)]
struct EvalResp {
    word: String,
    steps: Vec<StepOut>,
    green_only: bool,
    maximal: bool,
    series: SeriesJson,
}

#[derive(Deserialize)]
struct CompareReq {
    quiver: QuiverJson,
    seq1: Vec<usize>,
    seq2: Vec<usize>,
    #[serde(rename = "D")]
    depth: u32,
}

#[derive(Serialize)]
struct FirstDiff {
    monomial: Vec<i64>,
    left: String,
    right: String,
}

#[derive(Serialize)]
struct CompareResp {
    frozen_iso: bool,
    permutation: Option<Vec<usize>>,
    equal_series: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_diff: Option<FirstDiff>,
    word1: String,
    word2: String,
}

#[derive(Deserialize)]
struct SearchReq {
    framed: FramedJson,
    max_len: usize,
    #[serde(default)]
    maximal_only: bool,
}

fn frame(body: &str) -> Result<Value, Failure> {
    let req: FrameReq = parse(body)?;
    let f = FramedQuiver::frame(&quiver_from(&req.quiver)?)?;
    Ok(serde_json::to_value(FramedState::of(&f)).expect("serializable"))
}

fn mutate(body: &str) -> Result<Value, Failure> {
    let req: MutateReq = parse(body)?;
    let f = FramedQuiver::from_json(&req.framed)?;
    let n = f.n();
    if req.k == 0 || req.k > 2 * n {
        return Err(QuiverError::VertexOutOfRange { vertex: req.k, n: 2 * n }.into());
    }
    let k = req.k - 1;
    if k >= n {
        return Err(QuiverError::FrozenVertex { vertex: req.k }.into());
    }
    let (beta, eps) = f.c_vector(k)?;
    let g = f.mutate(k)?;
    let resp = MutateResp { state: FramedState::of(&g), beta: beta.0, eps };
    Ok(serde_json::to_value(resp).expect("serializable"))
}

fn eval(body: &str) -> Result<Value, Failure> {
    let req: EvalReq = parse(body)?;
    let depth = check_depth(req.depth)?;
    let q = quiver_from(&req.quiver)?;
    let f = FramedQuiver::frame(&q)?;
    let seq = zero_based(&req.seq, q.n())?;
    let (g, s) = tropical_e(&f, &seq, depth)?;
    let resp = EvalResp {
        word: tropical_word(&g).to_string(),
        steps: steps_out(&g),
        green_only: g.is_green_only(),
        maximal: g.is_maximal(),
        series: s.to_json(),
    };
    Ok(serde_json::to_value(resp).expect("serializable"))
}

fn compare(body: &str) -> Result<Value, Failure> {
    let req: CompareReq = parse(body)?;
    let depth = check_depth(req.depth)?;
    let q = quiver_from(&req.quiver)?;
    let f = FramedQuiver::frame(&q)?;
    let (s1, s2) = (zero_based(&req.seq1, q.n())?, zero_based(&req.seq2, q.n())?);
    let (g1, e1) = tropical_e(&f, &s1, depth)?;
    let (g2, e2) = tropical_e(&f, &s2, depth)?;
    let iso = frozen_iso(&g1.end, &g2.end);
    let verdict = e1.compare(&e2)?;
    let first_diff = verdict.mismatch().map(|m| FirstDiff {
        monomial: m.monomial().0,
        left: m.left.to_string(),
        right: m.right.to_string(),
    });
    let resp = CompareResp {
        frozen_iso: iso.is_some(),
        permutation: iso.map(|p| p.into_iter().map(|v| v + 1).collect()),
        equal_series: verdict.holds(),
        first_diff,
        word1: tropical_word(&g1).to_string(),
        word2: tropical_word(&g2).to_string(),
    };
    Ok(serde_json::to_value(resp).expect("serializable"))
}

fn search(body: &str) -> Result<Value, Failure> {
    let req: SearchReq = parse(body)?;
    if req.max_len > MAX_SEARCH_LEN {
        return Err(Failure(Response::error(
            422,
            "guard",
            format!("search length {} exceeds the server limit {MAX_SEARCH_LEN}", req.max_len),
        )));
    }
    let f = FramedQuiver::from_json(&req.framed)?;
    let found = green_search(&f, req.max_len, req.maximal_only)?;
    let seqs: Vec<Vec<usize>> = found.iter().map(|g| g.seq().into_iter().map(|k| k + 1).collect()).collect();
    Ok(json!({ "sequences": seqs }))
}

/// Routes one request. Only `POST` is accepted, plus `OPTIONS` for CORS
/// preflight, which answers with an empty body.
pub fn handle(method: &str, path: &str, body: &str) -> Response {
    let route: fn(&str) -> Result<Value, Failure> = match path {
        "/frame" => frame,
        "/mutate" => mutate,
        "/eval" => eval,
        "/compare" => compare,
        "/search" => search,
        _ => return Response::error(404, "not_found", format!("no endpoint {path}")),
    };
    match method {
        "OPTIONS" => return Response { status: 204, body: String::new() },
        "POST" => {}
        _ => return Response::error(405, "method_not_allowed", format!("{method} is not allowed, use POST")),
    }
    match route(body) {
        Ok(v) => Response::ok(v),
        Err(Failure(r)) => r,
    }
}
