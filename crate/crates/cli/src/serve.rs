//! Single-endpoint HTTP query service.
//!
//! `POST /query?k=N[&chain=C]` with a coordinate file as the body answers
//! with `rank\tid\tdistance` rows. `GET /health` answers `ok`. Errors are
//! reported per request with a 4xx status and an `error: ...` body.

use std::io::Read;
use std::net::SocketAddr;
use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::thread;

use anyhow::{anyhow, Result};
use tiny_http::{Header, Request, Response, Server};

use comograd_core::FeatureDb;

use crate::{format_hits, query_bytes};

pub const DEFAULT_K: usize = 50;
const MAX_BODY: usize = 16 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reply {
    pub status: u16,
    pub body: String,
}

impl Reply {
    fn ok(body: String) -> Self {
        Self { status: 200, body }
    }

    fn error(status: u16, message: impl std::fmt::Display) -> Self {
        Self { status, body: format!("error: {message}\n") }
    }
}

fn parse_params(query: &str) -> Result<(usize, Option<char>), String> {
    let mut k = DEFAULT_K;
    let mut chain = None;
    for pair in query.split('&').filter(|p| !p.is_empty()) {
        let (key, value) = pair.split_once('=').unwrap_or((pair, ""));
        match key {
            "k" => {
                k = value.parse().map_err(|_| format!("invalid k '{value}'"))?;
                if k == 0 {
                    return Err("k must be at least 1".into());
                }
            }
            "chain" => {
                let mut chars = value.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => chain = Some(c),
                    _ => return Err(format!("invalid chain '{value}'")),
                }
            }
            other => return Err(format!("unknown parameter '{other}'")),
        }
    }
    Ok((k, chain))
}

/// Answers one request. Pure apart from reading `db`.
pub fn handle(db: &FeatureDb, method: &str, url: &str, body: &[u8]) -> Reply {
    let (path, query) = url.split_once('?').unwrap_or((url, ""));
    match (method, path) {
        ("GET", "/health") => Reply::ok("ok\n".into()),
        ("POST", "/query") => {
            let (k, chain) = match parse_params(query) {
                Ok(p) => p,
                Err(e) => return Reply::error(400, e),
            };
            if body.is_empty() {
                return Reply::error(400, "empty request body");
            }
            match query_bytes(db, body, "query", chain, k) {
                Ok(hits) => Reply::ok(format!("rank\tid\tdistance\n{}", format_hits(&hits))),
                Err(e) => Reply::error(422, format!("{e:#}")),
            }
        }
        (_, "/query") | (_, "/health") => Reply::error(405, "method not allowed"),
        _ => Reply::error(404, format!("no such endpoint '{path}'")),
    }
}

fn respond(db: &FeatureDb, mut request: Request) {
    let mut body = Vec::new();
    let reply = match request.as_reader().take(MAX_BODY as u64 + 1).read_to_end(&mut body) {
        Err(e) => Reply::error(400, format!("reading body: {e}")),
        Ok(n) if n > MAX_BODY => Reply::error(413, "request body too large"),
        Ok(_) => {
            let method = request.method().as_str().to_string();
            let url = request.url().to_string();
            panic::catch_unwind(AssertUnwindSafe(|| handle(db, &method, &url, &body)))
                .unwrap_or_else(|_| Reply::error(500, "internal error"))
        }
    };
    let header = Header::from_bytes(&b"Content-Type"[..], &b"text/tab-separated-values; charset=utf-8"[..]).unwrap();
    let response = Response::from_string(reply.body).with_status_code(reply.status).with_header(header);
    // a client hanging up mid-response only affects that request
    let _ = request.respond(response);
}

/// A bound listener holding the database for its lifetime.
pub struct Service {
    server: Arc<Server>,
    db: Arc<FeatureDb>,
}

impl Service {
    pub fn bind(db: FeatureDb, listen: &str) -> Result<Self> {
        let server = Server::http(listen).map_err(|e| anyhow!("binding {listen}: {e}"))?;
        Ok(Self { server: Arc::new(server), db: Arc::new(db) })
    }

    pub fn local_addr(&self) -> Option<SocketAddr> {
        self.server.server_addr().to_ip()
    }

    /// Blocks, answering requests on `workers` threads.
    pub fn run(self, workers: usize) {
        let handles: Vec<_> = (0..workers.max(1))
            .map(|_| {
                let server = Arc::clone(&self.server);
                let db = Arc::clone(&self.db);
                thread::spawn(move || {
                    for request in server.incoming_requests() {
                        respond(&db, request);
                    }
                })
            })
            .collect();
        for h in handles {
            let _ = h.join();
        }
    }

    /// Runs in the background; the service lives until the process exits.
    pub fn spawn(self, workers: usize) -> thread::JoinHandle<()> {
        thread::spawn(move || self.run(workers))
    }
}
