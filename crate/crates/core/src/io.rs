//! JSON Lines formats: trajectories `{"t", "q"}` and event logs
//! `{"t", "cell", "pos"}`.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::EatEvent;
use crate::quat::UnitQuaternion;
use crate::scalar::Real;
use crate::trajectory::TrajectorySample;

#[derive(Debug, Error)]
pub enum ReadError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
}

impl ReadError {
    /// 1-based line of a format error.
    pub fn line(&self) -> Option<usize> {
        match self {
            Self::Format { line, .. } => Some(*line),
            Self::Io(_) => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleLine {
    t: f64,
    q: [f64; 4],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EventLine {
    t: f64,
    cell: usize,
    pos: [f64; 4],
}

pub fn write_trajectory<T: Real, W: Write>(mut w: W, samples: &[TrajectorySample<T>]) -> io::Result<()> {
    for s in samples {
        let line = SampleLine {
            t: s.t,
            q: s.q.to_f64_array(),
        };
        serde_json::to_writer(&mut w, &line)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

/// Reads a trajectory, rejecting bad JSON, non-finite or out-of-window
/// quaternions and decreasing timestamps. Blank lines are skipped.
pub fn read_trajectory<T: Real, R: BufRead>(r: R) -> Result<Vec<TrajectorySample<T>>, ReadError> {
    let mut out: Vec<TrajectorySample<T>> = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fail = |reason: String| ReadError::Format { line: i + 1, reason };
        let parsed: SampleLine = serde_json::from_str(&line).map_err(|e| fail(e.to_string()))?;
        if !parsed.t.is_finite() {
            return Err(fail("non-finite time".into()));
        }
        if let Some(prev) = out.last() {
            if parsed.t < prev.t {
                return Err(fail(format!("time {} precedes {}", parsed.t, prev.t)));
            }
        }
        let q = UnitQuaternion::from_wire(parsed.q).map_err(|e| fail(e.to_string()))?;
        out.push(TrajectorySample { t: parsed.t, q });
    }
    Ok(out)
}

pub fn write_event_log<T: Real, W: Write>(mut w: W, events: &[EatEvent<T>]) -> io::Result<()> {
    for e in events {
        serde_json::to_writer(&mut w, &event_line(e))?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

pub fn event_log_string<T: Real>(events: &[EatEvent<T>]) -> String {
    let mut buf = Vec::new();
    write_event_log(&mut buf, events).expect("writing to memory");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

fn event_line<T: Real>(e: &EatEvent<T>) -> EventLine {
    EventLine {
        t: e.t,
        cell: e.cell,
        pos: e.position.to_f64_array(),
    }
}

pub fn read_event_log<R: BufRead>(r: R) -> Result<Vec<EatEvent<f64>>, ReadError> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fail = |reason: String| ReadError::Format { line: i + 1, reason };
        let parsed: EventLine = serde_json::from_str(&line).map_err(|e| fail(e.to_string()))?;
        let position = UnitQuaternion::from_wire(parsed.pos).map_err(|e| fail(e.to_string()))?;
        out.push(EatEvent {
            t: parsed.t,
            cell: parsed.cell,
            position,
        });
    }
    Ok(out)
}
