//! Report files. Every write goes through one writer thread.

use std::fs::{self, OpenOptions};
use std::io::{self, ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc::{channel, Sender};
use std::thread::{self, JoinHandle};

use starclean::format::sha256_hex;

struct Job {
    name: String,
    body: String,
}

/// Files are named `<kind>-<hash>.json` and never overwritten: an existing
/// file with the same name already holds the same content.
pub struct ReportWriter {
    tx: Option<Sender<Job>>,
    handle: Option<JoinHandle<io::Result<Vec<PathBuf>>>>,
}

impl ReportWriter {
    pub fn new(dir: Option<PathBuf>) -> io::Result<Self> {
        let Some(dir) = dir else {
            return Ok(ReportWriter { tx: None, handle: None });
        };
        fs::create_dir_all(&dir)?;
        let (tx, rx) = channel::<Job>();
        let handle = thread::spawn(move || {
            let mut written = Vec::new();
            for job in rx {
                written.push(write_once(&dir, &job.name, &job.body)?);
            }
            Ok(written)
        });
        Ok(ReportWriter {
            tx: Some(tx),
            handle: Some(handle),
        })
    }

    /// Queues `body` under `<kind>-<hash>.json`.
    pub fn submit(&self, kind: &str, hash: &str, body: String) -> Option<PathBuf> {
        let tx = self.tx.as_ref()?;
        let name = format!("{kind}-{hash}.json");
        let path = PathBuf::from(&name);
        // the receiver only disappears after an I/O error, surfaced by finish()
        let _ = tx.send(Job { name, body });
        Some(path)
    }

    /// Same, hashing `body` itself.
    pub fn submit_hashed(&self, kind: &str, body: String) -> Option<PathBuf> {
        let hash = sha256_hex(body.as_bytes());
        self.submit(kind, &hash, body)
    }

    /// Waits for pending writes; returns the paths touched.
    pub fn finish(mut self) -> io::Result<Vec<PathBuf>> {
        drop(self.tx.take());
        match self.handle.take() {
            Some(h) => h.join().expect("writer thread panicked"),
            None => Ok(Vec::new()),
        }
    }
}

fn write_once(dir: &Path, name: &str, body: &str) -> io::Result<PathBuf> {
    let path = dir.join(name);
    match OpenOptions::new().write(true).create_new(true).open(&path) {
        Ok(mut f) => {
            f.write_all(body.as_bytes())?;
            f.write_all(b"\n")?;
        }
        Err(e) if e.kind() == ErrorKind::AlreadyExists => {}
        Err(e) => return Err(e),
    }
    Ok(path)
}
