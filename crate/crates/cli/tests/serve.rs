use std::io::{Read, Write};
use std::net::{TcpListener, TcpStream};
use std::process::{Child, Command, Stdio};
use std::thread::sleep;
use std::time::Duration;

struct Server(Child);

impl Drop for Server {
    fn drop(&mut self) {
        let _ = self.0.kill();
        let _ = self.0.wait();
    }
}

fn free_port() -> u16 {
    TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port()
}

fn post(port: u16, path: &str, body: &str) -> Option<String> {
    let mut s = TcpStream::connect(("127.0.0.1", port)).ok()?;
    let req = format!(
        "POST {path} HTTP/1.1\r\nHost: localhost\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    );
    s.write_all(req.as_bytes()).ok()?;
    let mut out = String::new();
    s.read_to_string(&mut out).ok()?;
    Some(out)
}

#[test]
fn serves_compare_over_http() {
    let port = free_port();
    let child = Command::new(env!("CARGO_BIN_EXE_qdilog"))
        .args(["serve", "--port", &port.to_string()])
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let _guard = Server(child);
    let body = r#"{"quiver":{"n":2,"arrows":[[1,2,1]]},"seq1":[1,2],"seq2":[2,1,2],"D":6}"#;
    let mut resp = None;
    for _ in 0..50 {
        resp = post(port, "/compare", body);
        if resp.is_some() {
            break;
        }
        sleep(Duration::from_millis(100));
    }
    let resp = resp.expect("server answered");
    assert!(resp.starts_with("HTTP/1.1 200"), "{resp}");
    assert!(resp.contains("Access-Control-Allow-Origin: *"));
    let json: serde_json::Value = serde_json::from_str(resp.split("\r\n\r\n").nth(1).unwrap()).unwrap();
    assert_eq!(json["frozen_iso"], true);
    assert_eq!(json["equal_series"], true);

    let bad = post(port, "/nowhere", "{}").unwrap();
    assert!(bad.starts_with("HTTP/1.1 404"));
}
