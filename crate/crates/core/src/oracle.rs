//! Evaluation oracles for the interpolation pipeline.
//!
//! An oracle answers `I(graph; point)` exactly. The internal oracle is the
//! definitional branching evaluator. An external oracle is any process that
//! speaks the line protocol below on stdin/stdout:
//!
//! ```text
//! -> {"id": 3, "graph": {"n": 2, "edges": [[0, 1]]}, "point": "2/1"}
//! <- {"id": 3, "value": "5/1"}
//! ```
//!
//! One request line, one response line. `id` in the response is optional,
//! but if present it must match the request.

use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, ChildStdout, Command, Stdio};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::arith::{Rational, RationalStr};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphJson};
use crate::isp::{isp_eval_with, Limits};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleRequest {
    pub id: usize,
    pub graph: GraphJson,
    pub point: RationalStr,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleResponse {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<usize>,
    pub value: RationalStr,
}

#[derive(Debug)]
pub enum OracleKind {
    /// Definitional branching evaluator.
    Internal(Limits),
    External(ExternalOracle),
}

#[derive(Debug)]
pub struct OracleHandle {
    pub kind: OracleKind,
    /// Largest graph the oracle is expected to handle, if known.
    pub max_vertices: Option<usize>,
}

impl OracleHandle {
    pub fn internal() -> Self {
        OracleHandle {
            kind: OracleKind::Internal(Limits::default()),
            max_vertices: None,
        }
    }

    pub fn internal_with(limits: Limits) -> Self {
        OracleHandle {
            kind: OracleKind::Internal(limits),
            max_vertices: None,
        }
    }

    pub fn with_max_vertices(mut self, max: usize) -> Self {
        self.max_vertices = Some(max);
        self
    }

    /// Whether distinct queries may run at the same time.
    pub fn is_reentrant(&self) -> bool {
        matches!(self.kind, OracleKind::Internal(_))
    }

    pub fn evaluate(&self, g: &Graph, x: &Rational, id: usize) -> Result<Rational> {
        if let Some(max) = self.max_vertices {
            if g.vertex_count() > max {
                return Err(Error::Capacity {
                    what: "oracle graph size",
                    actual: g.vertex_count(),
                    limit: max,
                });
            }
        }
        match &self.kind {
            OracleKind::Internal(limits) => isp_eval_with(g, x, limits),
            OracleKind::External(ext) => ext.query(g, x, id),
        }
    }
}

/// Spawns `command` through `sh -c` on first use and keeps it alive for
/// further queries. Queries are serialized.
pub fn external_oracle(command: &str) -> OracleHandle {
    OracleHandle {
        kind: OracleKind::External(ExternalOracle {
            command: command.to_string(),
            session: Mutex::new(None),
        }),
        max_vertices: None,
    }
}

#[derive(Debug)]
pub struct ExternalOracle {
    command: String,
    session: Mutex<Option<Session>>,
}

#[derive(Debug)]
struct Session {
    child: Child,
    stdin: ChildStdin,
    stdout: BufReader<ChildStdout>,
}

impl Session {
    fn spawn(command: &str) -> Result<Session> {
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(command)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = BufReader::new(child.stdout.take().expect("piped stdout"));
        Ok(Session {
            child,
            stdin,
            stdout,
        })
    }
}

impl Drop for Session {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

impl ExternalOracle {
    pub fn command(&self) -> &str {
        &self.command
    }

    fn query(&self, g: &Graph, x: &Rational, id: usize) -> Result<Rational> {
        let mut guard = self.session.lock().unwrap_or_else(|e| e.into_inner());
        if guard.is_none() {
            *guard = Some(Session::spawn(&self.command)?);
        }
        let session = guard.as_mut().expect("session just created");
        let request = OracleRequest {
            id,
            graph: GraphJson::from(g),
            point: RationalStr(x.clone()),
        };
        let mut line = serde_json::to_string(&request).expect("request serialization");
        line.push('\n');
        if let Err(e) = session
            .stdin
            .write_all(line.as_bytes())
            .and_then(|_| session.stdin.flush())
        {
            *guard = None;
            return Err(e.into());
        }
        let mut reply = String::new();
        let read = session.stdout.read_line(&mut reply);
        match read {
            Ok(0) => {
                *guard = None;
                Err(Error::Protocol {
                    message: "oracle closed its output".into(),
                    line: String::new(),
                })
            }
            Ok(_) => parse_response(reply.trim_end(), id),
            Err(e) => {
                *guard = None;
                Err(e.into())
            }
        }
    }
}

fn parse_response(line: &str, id: usize) -> Result<Rational> {
    let protocol = |message: String| Error::Protocol {
        message,
        line: line.to_string(),
    };
    let response: OracleResponse =
        serde_json::from_str(line).map_err(|e| protocol(format!("malformed response: {e}")))?;
    if let Some(got) = response.id {
        if got != id {
            return Err(protocol(format!(
                "response id {got} does not match request {id}"
            )));
        }
    }
    Ok(response.value.0)
}

/// Serves the line protocol with the internal evaluator until EOF.
///
/// Malformed requests get an `{"error": ...}` line and the loop goes on.
pub fn serve(input: impl BufRead, mut output: impl Write, limits: &Limits) -> Result<()> {
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let answer = serde_json::from_str::<OracleRequest>(&line)
            .map_err(|e| Error::Protocol {
                message: format!("malformed request: {e}"),
                line: line.clone(),
            })
            .and_then(|req| {
                let g = Graph::try_from(req.graph)?;
                let value = isp_eval_with(&g, &req.point.0, limits)?;
                Ok(OracleResponse {
                    id: Some(req.id),
                    value: RationalStr(value),
                })
            });
        let text = match answer {
            Ok(resp) => serde_json::to_string(&resp).expect("response serialization"),
            Err(e) => serde_json::json!({ "error": e.to_string() }).to_string(),
        };
        writeln!(output, "{text}")?;
        output.flush()?;
    }
    Ok(())
}
