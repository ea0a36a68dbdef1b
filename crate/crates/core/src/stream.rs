//! Edge streams: insertion-only and insertion-deletion (turnstile).
//!
//! A stream fixes `n` and directedness up front and then lists signed edge
//! events.  Multiplicities are tracked per edge (normalized for undirected
//! graphs) and must stay non-negative at every prefix; the final graph
//! contains exactly the edges with final multiplicity at least 1.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::rng;

#[derive(Debug, Error)]
pub enum StreamError {
    #[error("event {index}: deleting edge ({u},{v}) would make its multiplicity negative")]
    NegativeMultiplicity { index: usize, u: usize, v: usize },
    #[error("event {index}: edge ({u},{v}) multiplicity exceeds the bound {bound}")]
    MultiplicityBound {
        index: usize,
        u: usize,
        v: usize,
        bound: u128,
    },
    #[error("event {index}: vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },
    #[error("event {index}: self-loop at vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamOp {
    Insert,
    Delete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamEvent {
    pub op: StreamOp,
    pub edge: (usize, usize),
}

impl StreamEvent {
    pub fn insert(u: usize, v: usize) -> Self {
        StreamEvent {
            op: StreamOp::Insert,
            edge: (u, v),
        }
    }

    pub fn delete(u: usize, v: usize) -> Self {
        StreamEvent {
            op: StreamOp::Delete,
            edge: (u, v),
        }
    }
}

/// How [`EventStream::from_graph`] orders the insertions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderPolicy {
    /// Sorted edge order, as stored in the graph.
    Natural,
    /// Seeded uniform shuffle.
    Random(u64),
}

/// A finite sequence of edge events over a fixed vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventStream {
    pub n: usize,
    pub directed: bool,
    pub events: Vec<StreamEvent>,
}

impl EventStream {
    pub fn new(n: usize, directed: bool, events: Vec<StreamEvent>) -> Self {
        EventStream {
            n,
            directed,
            events,
        }
    }

    /// Insertion-only stream carrying exactly the graph's edges.
    pub fn from_graph(g: &Graph, order: OrderPolicy) -> EventStream {
        let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
        if let OrderPolicy::Random(seed) = order {
            edges.shuffle(&mut rng::component_rng(seed, "stream-order", 0));
        }
        EventStream {
            n: g.n(),
            directed: g.is_directed(),
            events: edges
                .into_iter()
                .map(|(u, v)| StreamEvent::insert(u, v))
                .collect(),
        }
    }

    pub fn has_deletions(&self) -> bool {
        self.events.iter().any(|e| e.op == StreamOp::Delete)
    }

    fn normalize(&self, u: usize, v: usize) -> (usize, usize) {
        if self.directed || u < v {
            (u, v)
        } else {
            (v, u)
        }
    }

    fn check_endpoints(&self, index: usize, u: usize, v: usize) -> Result<(), StreamError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(StreamError::VertexOutOfRange {
                    index,
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(StreamError::SelfLoop { index, vertex: u });
        }
        Ok(())
    }

    /// Final per-edge multiplicities.  Fails on the first event that takes
    /// any multiplicity negative (or is otherwise malformed).
    pub fn multiplicities(&self) -> Result<HashMap<(usize, usize), u64>, StreamError> {
        let mut mult: HashMap<(usize, usize), u64> = HashMap::new();
        for (index, ev) in self.events.iter().enumerate() {
            let (u, v) = ev.edge;
            self.check_endpoints(index, u, v)?;
            let key = self.normalize(u, v);
            let entry = mult.entry(key).or_insert(0);
            match ev.op {
                StreamOp::Insert => *entry += 1,
                StreamOp::Delete => {
                    if *entry == 0 {
                        return Err(StreamError::NegativeMultiplicity { index, u, v });
                    }
                    *entry -= 1;
                }
            }
        }
        Ok(mult)
    }

    /// Materialize the final graph: edges with final multiplicity >= 1.
    pub fn apply(&self) -> Result<Graph, StreamError> {
        let mult = self.multiplicities()?;
        let edges: Vec<(usize, usize)> = mult
            .into_iter()
            .filter(|&(_, c)| c >= 1)
            .map(|(e, _)| e)
            .collect();
        Ok(Graph::new(self.n, self.directed, &edges)?)
    }

    /// Check the stream model invariants with multiplicity bound `n^c`:
    /// no prefix takes a multiplicity negative or above the bound.  The
    /// first offending event index is reported.
    pub fn validate(&self, c: u32) -> Result<(), StreamError> {
        let bound = (self.n as u128).saturating_pow(c);
        let mut mult: HashMap<(usize, usize), u128> = HashMap::new();
        for (index, ev) in self.events.iter().enumerate() {
            let (u, v) = ev.edge;
            self.check_endpoints(index, u, v)?;
            let entry = mult.entry(self.normalize(u, v)).or_insert(0);
            match ev.op {
                StreamOp::Insert => {
                    *entry += 1;
                    if *entry > bound {
                        return Err(StreamError::MultiplicityBound {
                            index,
                            u,
                            v,
                            bound,
                        });
                    }
                }
                StreamOp::Delete => {
                    if *entry == 0 {
                        return Err(StreamError::NegativeMultiplicity { index, u, v });
                    }
                    *entry -= 1;
                }
            }
        }
        Ok(())
    }

    /// Write the line-oriented format: a `# stream directed=<0|1> n=<n>`
    /// header, then one `+ u v` or `- u v` line per event.
    pub fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(
            w,
            "# stream directed={} n={}",
            if self.directed { 1 } else { 0 },
            self.n
        )?;
        for ev in &self.events {
            let sign = match ev.op {
                StreamOp::Insert => '+',
                StreamOp::Delete => '-',
            };
            writeln!(w, "{} {} {}", sign, ev.edge.0, ev.edge.1)?;
        }
        Ok(())
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> std::io::Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_to(&mut f)
    }

    /// Parse the line-oriented format; failures carry the 1-based line
    /// number.
    pub fn read_from(r: impl std::io::Read) -> Result<EventStream, StreamError> {
        let reader = BufReader::new(r);
        let mut header: Option<(bool, usize)> = None;
        let mut events = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if t.starts_with('#') {
                if header.is_none() {
                    header = Some(parse_stream_header(t, lineno)?);
                }
                continue;
            }
            events.push(parse_event_line(t, lineno)?);
        }
        let (directed, n) = header.ok_or_else(|| StreamError::Parse {
            line: 1,
            reason: "missing `# stream directed=<0|1> n=<n>` header".into(),
        })?;
        Ok(EventStream {
            n,
            directed,
            events,
        })
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<EventStream, StreamError> {
        EventStream::read_from(std::fs::File::open(path)?)
    }
}

fn parse_stream_header(line: &str, lineno: usize) -> Result<(bool, usize), StreamError> {
    let err = |reason: &str| StreamError::Parse {
        line: lineno,
        reason: reason.to_string(),
    };
    let rest = line
        .trim_start_matches('#')
        .trim()
        .strip_prefix("stream")
        .ok_or_else(|| err("header must start with `# stream`"))?;
    let mut directed = None;
    let mut n = None;
    for field in rest.split_whitespace() {
        match field.split_once('=') {
            Some(("directed", val)) => {
                directed = Some(match val {
                    "0" => false,
                    "1" => true,
                    _ => return Err(err("directed must be 0 or 1")),
                })
            }
            Some(("n", val)) => n = Some(val.parse::<usize>().map_err(|_| err("bad n value"))?),
            _ => return Err(err("unknown header field")),
        }
    }
    match (directed, n) {
        (Some(d), Some(n)) => Ok((d, n)),
        _ => Err(err("header needs directed= and n=")),
    }
}

fn parse_event_line(line: &str, lineno: usize) -> Result<StreamEvent, StreamError> {
    let bad = |reason: String| StreamError::Parse {
        line: lineno,
        reason,
    };
    let mut it = line.split_whitespace();
    let op = match it.next() {
        Some("+") => StreamOp::Insert,
        Some("-") => StreamOp::Delete,
        _ => return Err(bad(format!("expected `+ u v` or `- u v`, got `{line}`"))),
    };
    let parse = |tok: Option<&str>| -> Result<usize, StreamError> {
        tok.and_then(|t| t.parse::<usize>().ok())
            .ok_or_else(|| bad(format!("expected `+ u v` or `- u v`, got `{line}`")))
    };
    let u = parse(it.next())?;
    let v = parse(it.next())?;
    if it.next().is_some() {
        return Err(bad(format!("trailing tokens in `{line}`")));
    }
    Ok(StreamEvent { op, edge: (u, v) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn insert_then_delete_cancels() {
        let s = EventStream::new(
            3,
            false,
            vec![StreamEvent::insert(0, 1), StreamEvent::delete(1, 0)],
        );
        // Reversed endpoint order still cancels for undirected streams.
        let g = s.apply().unwrap();
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn double_insert_single_delete_survives() {
        let s = EventStream::new(
            3,
            false,
            vec![
                StreamEvent::insert(0, 1),
                StreamEvent::insert(0, 1),
                StreamEvent::delete(0, 1),
            ],
        );
        let g = s.apply().unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn delete_before_insert_reports_index() {
        let s = EventStream::new(
            3,
            false,
            vec![StreamEvent::insert(1, 2), StreamEvent::delete(0, 1)],
        );
        assert!(matches!(
            s.apply(),
            Err(StreamError::NegativeMultiplicity { index: 1, u: 0, v: 1 })
        ));
    }

    #[test]
    fn directed_deletion_respects_orientation() {
        let s = EventStream::new(
            3,
            true,
            vec![StreamEvent::insert(0, 1), StreamEvent::delete(1, 0)],
        );
        assert!(matches!(
            s.apply(),
            Err(StreamError::NegativeMultiplicity { index: 1, .. })
        ));
    }

    #[test]
    fn validate_flags_multiplicity_bound() {
        // n=4, c=2: bound 16, so the 17th insert of one edge violates.
        let mut events = vec![StreamEvent::insert(0, 1); 17];
        events.push(StreamEvent::insert(2, 3));
        let s = EventStream::new(4, false, events);
        match s.validate(2) {
            Err(StreamError::MultiplicityBound { index, bound, .. }) => {
                assert_eq!(index, 16);
                assert_eq!(bound, 16);
            }
            other => panic!("expected bound violation, got {other:?}"),
        }
        let ok = EventStream::new(4, false, vec![StreamEvent::insert(0, 1); 16]);
        ok.validate(2).unwrap();
    }

    #[test]
    fn stream_file_roundtrip() {
        let s = EventStream::new(
            5,
            true,
            vec![
                StreamEvent::insert(0, 4),
                StreamEvent::delete(0, 4),
                StreamEvent::insert(2, 3),
            ],
        );
        let mut buf = Vec::new();
        s.write_to(&mut buf).unwrap();
        assert_eq!(EventStream::read_from(&buf[..]).unwrap(), s);
    }

    #[test]
    fn stream_parse_errors_carry_line_numbers() {
        let text = "# stream directed=1 n=3\n+ 0 1\n* 1 2\n";
        match EventStream::read_from(text.as_bytes()) {
            Err(StreamError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    /// Small arbitrary graphs for the order-insensitivity properties.
    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..10, any::<bool>())
            .prop_flat_map(|(n, directed)| {
                let edges = proptest::collection::vec((0..n, 0..n), 0..25);
                (Just(n), Just(directed), edges)
            })
            .prop_map(|(n, directed, raw)| {
                let edges: Vec<_> = raw.into_iter().filter(|(u, v)| u != v).collect();
                Graph::new(n, directed, &edges).unwrap()
            })
    }

    proptest! {
        #[test]
        fn apply_is_order_insensitive(g in arb_graph(), seed in any::<u64>()) {
            let natural = EventStream::from_graph(&g, OrderPolicy::Natural);
            let shuffled = EventStream::from_graph(&g, OrderPolicy::Random(seed));
            prop_assert_eq!(natural.apply().unwrap(), g.clone());
            prop_assert_eq!(shuffled.apply().unwrap(), g);
        }

        #[test]
        fn inserted_then_deleted_decoys_leave_graph_unchanged(
            g in arb_graph(),
            decoys in proptest::collection::vec((0usize..10, 0usize..10), 0..10)
        ) {
            let mut events: Vec<StreamEvent> = EventStream::from_graph(&g, OrderPolicy::Natural).events;
            // Interleave decoy inserts up front, matching deletes at the end.
            let decoys: Vec<(usize, usize)> = decoys
                .into_iter()
                .filter(|&(u, v)| u != v && u < g.n() && v < g.n())
                .collect();
            for &(u, v) in &decoys {
                events.insert(0, StreamEvent::insert(u, v));
            }
            for &(u, v) in &decoys {
                events.push(StreamEvent::delete(u, v));
            }
            let s = EventStream::new(g.n(), g.is_directed(), events);
            prop_assert_eq!(s.apply().unwrap(), g);
        }
    }
}
