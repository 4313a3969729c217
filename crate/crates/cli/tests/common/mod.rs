#![allow(dead_code)]

use std::fs;
use std::io::{Read, Write};
use std::net::{SocketAddr, TcpStream};
use std::path::{Path, PathBuf};

use comograd_core::structure::to_pdb;
use comograd_core::synth::{SyntheticFold, Topology, Variation};
use comograd_core::CaTrace;
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Writes `count` distinct single-chain coordinate files, cycling topologies.
pub fn write_corpus(dir: &Path, count: usize, seed: u64) -> Vec<PathBuf> {
    let mut rng = StdRng::seed_from_u64(seed);
    let topologies = [Topology::Alpha, Topology::Beta, Topology::AlphaBeta];
    (0..count)
        .map(|i| {
            let fold = SyntheticFold::random(&mut rng, topologies[i % 3]);
            let trace = CaTrace::new("x", fold.sample(&mut rng, &Variation::default())).unwrap();
            let path = dir.join(format!("s{i:03}.pdb"));
            fs::write(&path, to_pdb(&[trace])).unwrap();
            path
        })
        .collect()
}

pub fn write_trace(path: &Path, trace: &CaTrace) {
    fs::write(path, to_pdb(std::slice::from_ref(trace))).unwrap();
}

/// Minimal HTTP/1.1 exchange; returns (status, body).
pub fn http(addr: SocketAddr, method: &str, target: &str, body: &[u8]) -> (u16, String) {
    let mut stream = TcpStream::connect(addr).unwrap();
    let head = format!(
        "{method} {target} HTTP/1.1\r\nHost: localhost\r\nContent-Length: {}\r\nConnection: close\r\n\r\n",
        body.len()
    );
    stream.write_all(head.as_bytes()).unwrap();
    stream.write_all(body).unwrap();
    let mut raw = String::new();
    stream.read_to_string(&mut raw).unwrap();
    let status = raw.split_whitespace().nth(1).unwrap().parse().unwrap();
    let body = raw.split_once("\r\n\r\n").map(|(_, b)| b.to_string()).unwrap_or_default();
    (status, body)
}
