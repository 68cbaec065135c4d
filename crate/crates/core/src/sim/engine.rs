use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{Request, RequestRecord, SatisfiedBy, SimMetrics};
use crate::error::{Error, Result};
use crate::forwarding::ForwardingContext;
use crate::grid::GridSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Face {
    Local(usize),
    Node(usize),
}

struct PitEntry {
    faces: Vec<Face>,
    created: f64,
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    Interest {
        node: usize,
        from: Face,
        req: usize,
        hops: u32,
    },
    Data {
        node: usize,
    },
}

struct Event {
    time: f64,
    seq: u64,
    kind: Kind,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Event {}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Event {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .time
            .total_cmp(&self.time)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Per-node forwarding tables, computed once per run.
struct Tables {
    producer: usize,
    designated: Vec<bool>,
    /// Next hop of a fresh Interest; `None` where forwarding stops.
    next: Vec<Option<usize>>,
    /// Next hop out of a designated cache that misses.
    miss: Vec<Option<usize>>,
}

impl Tables {
    fn build(ctx: &ForwardingContext) -> Result<Self> {
        let g = ctx.grid();
        let n = g.node_count();
        let mut t = Tables {
            producer: g.index(ctx.producer()),
            designated: vec![false; n],
            next: vec![None; n],
            miss: vec![None; n],
        };
        for c in g.nodes() {
            let i = g.index(c);
            let o = ctx.offset_of(c);
            if i == t.producer {
                continue;
            }
            if ctx.is_designated(o) {
                t.designated[i] = true;
                t.miss[i] = Some(g.index(ctx.coord_of(ctx.miss_hop(o)?)));
            } else {
                t.next[i] = Some(g.index(ctx.coord_of(ctx.next_hop(o)?)));
            }
        }
        Ok(t)
    }
}

struct Engine<'a> {
    grid: GridSpec,
    tables: Tables,
    latency: f64,
    queue: BinaryHeap<Event>,
    seq: u64,
    pit: Vec<Option<PitEntry>>,
    holds: Vec<bool>,
    outcome: Vec<Option<(u32, SatisfiedBy, usize)>>,
    delivered: Vec<Option<f64>>,
    metrics: SimMetrics,
    requests: &'a [Request],
}

impl Engine<'_> {
    fn push(&mut self, time: f64, kind: Kind) {
        self.queue.push(Event {
            time,
            seq: self.seq,
            kind,
        });
        self.seq += 1;
    }

    fn invariant(msg: String) -> Error {
        Error::SimInvariant(msg)
    }

    fn resolve(&mut self, req: usize, hops: u32, by: SatisfiedBy, node: usize) -> Result<()> {
        if self.outcome[req].replace((hops, by, node)).is_some() {
            return Err(Self::invariant(format!("request {req} stopped twice")));
        }
        match by {
            SatisfiedBy::Producer => self.metrics.producer_hits += 1,
            SatisfiedBy::Cache => self.metrics.cache_hits += 1,
            SatisfiedBy::Coalesced => self.metrics.coalesced_requests += 1,
        }
        Ok(())
    }

    fn send_data(&mut self, at: usize, face: Face, time: f64) -> Result<()> {
        match face {
            Face::Local(req) => {
                if self.delivered[req].replace(time).is_some() {
                    return Err(Self::invariant(format!("request {req} delivered twice")));
                }
            }
            Face::Node(next) => {
                self.metrics.per_node_tx[at] += 1;
                self.metrics.data_tx += 1;
                self.push(time + self.latency, Kind::Data { node: next });
            }
        }
        Ok(())
    }

    fn on_interest(&mut self, time: f64, node: usize, from: Face, req: usize, hops: u32) -> Result<()> {
        if self.holds[node] {
            let by = if node == self.tables.producer {
                SatisfiedBy::Producer
            } else if self.tables.designated[node] {
                SatisfiedBy::Cache
            } else {
                return Err(Self::invariant(format!(
                    "non-designated node {node} served from storage"
                )));
            };
            self.resolve(req, hops, by, node)?;
            return self.send_data(node, from, time);
        }
        if let Some(entry) = self.pit[node].as_mut() {
            if !entry.faces.contains(&from) {
                entry.faces.push(from);
            }
            return self.resolve(req, hops, SatisfiedBy::Coalesced, node);
        }
        let next = if self.tables.designated[node] {
            self.tables.miss[node]
        } else {
            self.tables.next[node]
        };
        let next = next.ok_or_else(|| Self::invariant(format!("no next hop at node {node}")))?;
        self.pit[node] = Some(PitEntry {
            faces: vec![from],
            created: time,
        });
        self.metrics.per_node_tx[node] += 1;
        self.metrics.interest_tx += 1;
        self.push(
            time + self.latency,
            Kind::Interest {
                node: next,
                from: Face::Node(node),
                req,
                hops: hops + 1,
            },
        );
        Ok(())
    }

    fn on_data(&mut self, time: f64, node: usize) -> Result<()> {
        if self.tables.designated[node] {
            self.holds[node] = true;
        }
        let entry = self.pit[node]
            .take()
            .ok_or_else(|| Self::invariant(format!("Data reached node {node} without a PIT entry")))?;
        if time < entry.created {
            return Err(Self::invariant(format!(
                "Data at node {node} predates its PIT entry"
            )));
        }
        for face in entry.faces {
            self.send_data(node, face, time)?;
        }
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        for (req, r) in self.requests.iter().enumerate() {
            let node = self.grid.index(r.consumer);
            self.push(
                r.time,
                Kind::Interest {
                    node,
                    from: Face::Local(req),
                    req,
                    hops: 0,
                },
            );
        }
        while let Some(ev) = self.queue.pop() {
            match ev.kind {
                Kind::Interest {
                    node,
                    from,
                    req,
                    hops,
                } => self.on_interest(ev.time, node, from, req, hops)?,
                Kind::Data { node } => self.on_data(ev.time, node)?,
            }
        }
        Ok(())
    }

    fn check_quiescence(&self) -> Result<()> {
        if let Some(i) = self.pit.iter().position(Option::is_some) {
            return Err(Self::invariant(format!(
                "PIT entry left at node {i} after quiescence"
            )));
        }
        if let Some(i) = self.delivered.iter().position(Option::is_none) {
            return Err(Self::invariant(format!("request {i} never received Data")));
        }
        let m = &self.metrics;
        if m.interest_tx != m.data_tx {
            return Err(Self::invariant(format!(
                "{} Interest transmissions but {} Data transmissions",
                m.interest_tx, m.data_tx
            )));
        }
        let hops: u64 = self
            .outcome
            .iter()
            .map(|o| o.map_or(0, |(h, _, _)| h as u64))
            .sum();
        if hops != m.interest_tx {
            return Err(Self::invariant(format!(
                "request hops sum to {hops}, Interest transmissions are {}",
                m.interest_tx
            )));
        }
        let tx: u64 = m.per_node_tx.iter().sum();
        if tx != m.interest_tx + m.data_tx {
            return Err(Self::invariant("per-node counts disagree with totals".into()));
        }
        Ok(())
    }
}

/// Plays `requests` through the network and checks the bookkeeping
/// invariants once the event queue drains.
pub fn simulate_requests(
    ctx: &ForwardingContext,
    hop_latency: f64,
    requests: &[Request],
) -> Result<SimMetrics> {
    let g = *ctx.grid();
    let n = g.node_count();
    if let Some(r) = requests
        .iter()
        .find(|r| !g.contains(r.consumer) || !(r.time.is_finite() && r.time >= 0.0))
    {
        return Err(Error::InvalidConfig(format!(
            "bad request at {} t={}",
            r.consumer, r.time
        )));
    }
    let tables = Tables::build(ctx)?;
    let mut holds = vec![false; n];
    holds[tables.producer] = true;
    let mut e = Engine {
        grid: g,
        tables,
        latency: hop_latency,
        queue: BinaryHeap::with_capacity(requests.len()),
        seq: 0,
        pit: (0..n).map(|_| None).collect(),
        holds,
        outcome: vec![None; requests.len()],
        delivered: vec![None; requests.len()],
        metrics: SimMetrics {
            replication: 0,
            per_node_tx: vec![0; n],
            requests: Vec::new(),
            cache_hits: 0,
            producer_hits: 0,
            coalesced_requests: 0,
            interest_tx: 0,
            data_tx: 0,
        },
        requests,
    };
    e.run()?;
    e.check_quiescence()?;
    let records = requests
        .iter()
        .zip(e.outcome.iter().zip(&e.delivered))
        .map(|(r, (o, d))| {
            let (path_len, satisfied_by, stop) = o.expect("checked by quiescence");
            RequestRecord {
                consumer: r.consumer,
                stopped_at: g.from_index(stop),
                t_request: r.time,
                path_len,
                satisfied_by,
                t_delivered: d.expect("checked by quiescence"),
            }
        })
        .collect();
    e.metrics.requests = records;
    Ok(e.metrics)
}
