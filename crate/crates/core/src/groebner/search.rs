//! Searching for strong elimination orders.
//!
//! For a quadratic defining ideal, an order is strong as soon as every
//! 4-circuit is a MAT-circuit, so both permutation searches test only
//! 4-circuits and then certify the order they find against all circuits.

use std::str::FromStr;

use rayon::prelude::*;
use serde_json::json;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::gma::is_quadratic;
use crate::graph::{strong_edge_elimination_order, Graph};
use crate::matroid::Matroid;

use super::{certify_order, ElementOrder};

/// Exhaustive search is refused above this ground set size.
pub const EXHAUSTIVE_MAX_ELEMENTS: usize = 10;

const UNPLACED: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive,
    DfsPruned,
    GraphicMat,
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "dfs_pruned" | "dfs-pruned" => Ok(Strategy::DfsPruned),
            "graphic_mat" | "graphic-mat" => Ok(Strategy::GraphicMat),
            _ => Err(Error::Parse(format!("unknown strategy '{s}'"))),
        }
    }
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Exhaustive => "exhaustive",
            Strategy::DfsPruned => "dfs_pruned",
            Strategy::GraphicMat => "graphic_mat",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub strategy: Strategy,
    /// Stop with `TimedOut` once one first-element subtree visits more than
    /// this many nodes. The limit is per subtree so the outcome does not
    /// depend on thread scheduling.
    pub node_limit: Option<u64>,
}

impl SearchOptions {
    pub fn new(strategy: Strategy) -> Self {
        SearchOptions {
            strategy,
            node_limit: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(ElementOrder),
    ExhaustedNone,
    TimedOut,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub strategy: Strategy,
    pub outcome: SearchOutcome,
    /// Complete orders tested.
    pub orders_examined: u64,
    /// Prefixes visited, complete orders included.
    pub nodes_visited: u64,
    /// Prefixes cut off by a decided 4-circuit.
    pub pruned: u64,
    /// For a failed search: the 4-circuit most often responsible.
    pub witness_circuit: Option<ElementSet>,
    pub note: Option<String>,
}

impl SearchReport {
    fn empty(strategy: Strategy) -> Self {
        SearchReport {
            strategy,
            outcome: SearchOutcome::ExhaustedNone,
            orders_examined: 0,
            nodes_visited: 0,
            pruned: 0,
            witness_circuit: None,
            note: None,
        }
    }

    pub fn found(&self) -> Option<&ElementOrder> {
        match &self.outcome {
            SearchOutcome::Found(o) => Some(o),
            _ => None,
        }
    }

    pub fn outcome_name(&self) -> &'static str {
        match self.outcome {
            SearchOutcome::Found(_) => "Found",
            SearchOutcome::ExhaustedNone => "ExhaustedNone",
            SearchOutcome::TimedOut => "TimedOut",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "outcome": self.outcome_name(),
            "strategy": self.strategy.name(),
            "order": self.found().map(|o| o.elements().to_vec()),
            "orders_examined": self.orders_examined,
            "nodes_visited": self.nodes_visited,
            "pruned": self.pruned,
            "witness_circuit": self.witness_circuit,
            "note": self.note,
        })
    }
}

/// A 4-circuit and, for each of its elements `i`, the 3-circuits meeting
/// `C \ i` in two elements, split as `(u, v, w)` with `w ∉ C \ i`.
struct Constraint {
    circuit: ElementSet,
    elements: [usize; 4],
    triples: [Vec<[usize; 3]>; 4],
}

impl Constraint {
    /// Exact evaluation on a complete order.
    fn holds(&self, pos: &[usize]) -> bool {
        let m = self.elements.iter().copied().min_by_key(|&e| pos[e]).unwrap();
        self.elements.iter().enumerate().all(|(k, &i)| {
            i == m
                || self.triples[k]
                    .iter()
                    .any(|&[u, v, w]| pos[w] > pos[u].min(pos[v]))
        })
    }

    /// Whether the constraint already fails for every completion of the
    /// prefix encoded in `pos` (unplaced elements come after all placed
    /// ones).
    fn decided_false(&self, pos: &[usize]) -> bool {
        let m = self.elements.iter().copied().min_by_key(|&e| pos[e]).unwrap();
        if pos[m] == UNPLACED {
            return false;
        }
        self.elements.iter().enumerate().any(|(k, &i)| {
            i != m
                && self.triples[k]
                    .iter()
                    .all(|&[u, v, w]| pos[w] != UNPLACED && pos[w] < pos[u].min(pos[v]))
        })
    }

    fn involved(&self) -> ElementSet {
        let mut s = self.circuit;
        for list in &self.triples {
            for t in list {
                s = s.with(t[2]);
            }
        }
        s
    }
}

fn constraints(m: &Matroid) -> Vec<Constraint> {
    let triangles: Vec<ElementSet> = m.circuits().iter().copied().filter(|c| c.len() == 3).collect();
    m.circuits()
        .iter()
        .filter(|c| c.len() == 4)
        .map(|&c| {
            let elements: [usize; 4] = c.to_vec().try_into().unwrap();
            let triples = elements.map(|i| {
                let rest = c.without(i);
                triangles
                    .iter()
                    .filter(|t| t.intersection(rest).len() == 2)
                    .map(|&t| {
                        let uv = t.intersection(rest).to_vec();
                        let w = t.difference(rest).first().unwrap();
                        [uv[0], uv[1], w]
                    })
                    .collect()
            });
            Constraint {
                circuit: c,
                elements,
                triples,
            }
        })
        .collect()
}

pub fn search_strong_elimination_order(
    m: &Matroid,
    options: &SearchOptions,
    graph: Option<&Graph>,
) -> Result<SearchReport> {
    m.require_simple()?;
    let strategy = options.strategy;
    let mut report = SearchReport::empty(strategy);
    match strategy {
        Strategy::GraphicMat => {
            let g = graph.ok_or_else(|| {
                Error::BadArgument("graphic_mat needs the underlying graph".into())
            })?;
            if g.edge_count() != m.ground_size() {
                return Err(Error::BadArgument("graph does not match the matroid".into()));
            }
            match strong_edge_elimination_order(g) {
                Some(order) => {
                    let order = ElementOrder::new(order)?;
                    report.orders_examined = 1;
                    report.nodes_visited = 1;
                    if !certify_order(m, &order)? {
                        return Err(Error::MismatchBug(
                            "order from a MAT-labeling is not a strong elimination order".into(),
                        ));
                    }
                    report.outcome = SearchOutcome::Found(order);
                }
                None => {
                    report.note = Some("graph is not strongly chordal; no MAT-labeling".into());
                }
            }
            return Ok(report);
        }
        Strategy::Exhaustive if m.ground_size() > EXHAUSTIVE_MAX_ELEMENTS => {
            return Err(Error::SizeLimit(format!(
                "exhaustive search is capped at {EXHAUSTIVE_MAX_ELEMENTS} elements"
            )));
        }
        _ => {}
    }
    if !is_quadratic(m)? {
        report.note = Some("not quadratic, so no order has a quadratic initial ideal".into());
        return Ok(report);
    }
    let cons = constraints(m);
    let n = m.ground_size();
    if n == 0 {
        report.outcome = SearchOutcome::Found(ElementOrder::identity(0));
        report.orders_examined = 1;
        return Ok(report);
    }
    let mut by_element: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, c) in cons.iter().enumerate() {
        for e in c.involved().iter() {
            by_element[e].push(k);
        }
    }
    let ctx = Ctx {
        n,
        cons: &cons,
        by_element: &by_element,
        prune: strategy == Strategy::DfsPruned,
        node_limit: options.node_limit,
    };
    // one subtree per first element; merged in first-element order so the
    // result does not depend on scheduling
    let subtrees: Vec<Subtree> = (0..n).into_par_iter().map(|first| ctx.run(first)).collect();
    let mut failures = vec![0u64; cons.len()];
    let mut timed_out = false;
    for sub in subtrees {
        report.orders_examined += sub.leaves;
        report.nodes_visited += sub.nodes;
        report.pruned += sub.pruned;
        for (f, s) in failures.iter_mut().zip(&sub.failures) {
            *f += s;
        }
        if let Some(order) = sub.found {
            let order = ElementOrder::new(order)?;
            if !certify_order(m, &order)? {
                return Err(Error::MismatchBug(
                    "order passing all 4-circuits fails certification on a quadratic matroid".into(),
                ));
            }
            report.outcome = SearchOutcome::Found(order);
            return Ok(report);
        }
        timed_out |= sub.timed_out;
    }
    if timed_out {
        report.outcome = SearchOutcome::TimedOut;
    }
    report.witness_circuit = failures
        .iter()
        .enumerate()
        .filter(|(_, &f)| f > 0)
        .max_by_key(|&(k, &f)| (f, std::cmp::Reverse(k)))
        .map(|(k, _)| cons[k].circuit);
    Ok(report)
}

struct Ctx<'a> {
    n: usize,
    cons: &'a [Constraint],
    by_element: &'a [Vec<usize>],
    prune: bool,
    node_limit: Option<u64>,
}

#[derive(Default)]
struct Subtree {
    found: Option<Vec<usize>>,
    leaves: u64,
    nodes: u64,
    pruned: u64,
    failures: Vec<u64>,
    timed_out: bool,
}

impl Ctx<'_> {
    fn run(&self, first: usize) -> Subtree {
        let mut sub = Subtree {
            failures: vec![0; self.cons.len()],
            ..Default::default()
        };
        let mut pos = vec![UNPLACED; self.n];
        let mut prefix = Vec::with_capacity(self.n);
        self.place(first, &mut pos, &mut prefix, &mut sub);
        sub
    }

    /// Places `e` next and recurses. Returns true to stop the search.
    fn place(&self, e: usize, pos: &mut [usize], prefix: &mut Vec<usize>, sub: &mut Subtree) -> bool {
        sub.nodes += 1;
        if let Some(limit) = self.node_limit {
            if sub.nodes > limit {
                sub.timed_out = true;
                return true;
            }
        }
        pos[e] = prefix.len();
        prefix.push(e);
        let stop = if prefix.len() == self.n {
            sub.leaves += 1;
            match self.cons.iter().position(|c| !c.holds(pos)) {
                None => {
                    sub.found = Some(prefix.clone());
                    true
                }
                Some(k) => {
                    sub.failures[k] += 1;
                    false
                }
            }
        } else if let Some(k) = self.prune_hit(e, pos) {
            sub.pruned += 1;
            sub.failures[k] += 1;
            false
        } else {
            let mut stop = false;
            for next in 0..self.n {
                if pos[next] == UNPLACED && self.place(next, pos, prefix, sub) {
                    stop = true;
                    break;
                }
            }
            stop
        };
        prefix.pop();
        pos[e] = UNPLACED;
        stop
    }

    fn prune_hit(&self, e: usize, pos: &[usize]) -> Option<usize> {
        if !self.prune {
            return None;
        }
        self.by_element[e]
            .iter()
            .copied()
            .find(|&k| self.cons[k].decided_false(pos))
    }
}
