use anyhow::{anyhow, Result};
use qdilog::service::handle;
use serde_json::json;
use tiny_http::{Header, Response, Server};

fn header(k: &str, v: &str) -> Header {
    Header::from_bytes(k.as_bytes(), v.as_bytes()).expect("valid header")
}

/// Serves the explorer endpoints on localhost until the process is stopped.
pub fn serve(port: u16) -> Result<()> {
    let server = Server::http(("127.0.0.1", port)).map_err(|e| anyhow!("cannot bind port {port}: {e}"))?;
    eprintln!("listening on http://127.0.0.1:{port}");
    for mut req in server.incoming_requests() {
        let mut body = String::new();
        let resp = match req.as_reader().read_to_string(&mut body) {
            Ok(_) => handle(req.method().as_str(), req.url(), &body),
            Err(e) => qdilog::service::Response {
                status: 400,
                body: json!({ "error": { "code": "bad_request", "message": e.to_string() } }).to_string(),
            },
        };
        let out = Response::from_string(resp.body)
            .with_status_code(resp.status)
            .with_header(header("Content-Type", "application/json"))
            .with_header(header("Access-Control-Allow-Origin", "*"))
            .with_header(header("Access-Control-Allow-Methods", "POST, OPTIONS"))
            .with_header(header("Access-Control-Allow-Headers", "Content-Type"));
        let _ = req.respond(out);
    }
    Ok(())
}
