//! DIMACS `.gr` input and the immutable bi-objective graph.
//!
//! State ids are 0-based in memory and 1-based in every file format.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::cost::CostPair;
use crate::error::{Error, Result};

pub type StateId = u32;
pub type ArcId = u32;

/// Marker for "no arc" in parent tables.
pub const NO_ARC: ArcId = ArcId::MAX;

/// A single-objective graph as read from one DIMACS `.gr` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimacsGraph {
    pub n: usize,
    /// `(from, to, weight)` with 0-based ids, in file order.
    pub arcs: Vec<(StateId, StateId, u32)>,
}

/// Parses a DIMACS 9th-challenge shortest-path graph.
pub fn parse_dimacs_gr<R: BufRead>(reader: R) -> Result<DimacsGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut arcs = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let mut fields = line.split_ascii_whitespace();
        let Some(tag) = fields.next() else { continue };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(parse_err(lineno, "duplicate problem line"));
                }
                if fields.next() != Some("sp") {
                    return Err(parse_err(lineno, "expected `p sp <n> <m>`"));
                }
                let n = parse_field::<usize>(fields.next(), lineno, "state count")?;
                let m = parse_field::<usize>(fields.next(), lineno, "arc count")?;
                expect_end(fields, lineno)?;
                header = Some((n, m));
                arcs.reserve(m);
            }
            "a" => {
                let Some((n, _)) = header else {
                    return Err(Error::MissingProblemLine);
                };
                let u = parse_field::<u64>(fields.next(), lineno, "arc tail")?;
                let v = parse_field::<u64>(fields.next(), lineno, "arc head")?;
                let w = parse_field::<u32>(fields.next(), lineno, "arc weight")?;
                expect_end(fields, lineno)?;
                for id in [u, v] {
                    if id == 0 || id > n as u64 {
                        return Err(Error::StateRange { line: lineno, id, n });
                    }
                }
                arcs.push(((u - 1) as StateId, (v - 1) as StateId, w));
            }
            other => {
                return Err(parse_err(lineno, &format!("unknown line tag `{other}`")));
            }
        }
    }

    let (n, m) = header.ok_or(Error::MissingProblemLine)?;
    if arcs.len() != m {
        return Err(Error::ArcCount { declared: m, found: arcs.len() });
    }
    Ok(DimacsGraph { n, arcs })
}

pub fn read_dimacs_gr(path: impl AsRef<Path>) -> Result<DimacsGraph> {
    let file = File::open(path)?;
    parse_dimacs_gr(BufReader::new(file))
}

/// Writes a graph back in DIMACS `.gr` format.
pub fn write_dimacs_gr<W: Write>(mut out: W, graph: &DimacsGraph) -> Result<()> {
    writeln!(out, "p sp {} {}", graph.n, graph.arcs.len())?;
    for &(u, v, w) in &graph.arcs {
        writeln!(out, "a {} {} {}", u + 1, v + 1, w)?;
    }
    Ok(())
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse { line, message: message.to_string() }
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, line: usize, what: &str) -> Result<T> {
    let field = field.ok_or_else(|| parse_err(line, &format!("missing {what}")))?;
    field.parse().map_err(|_| parse_err(line, &format!("invalid {what} `{field}`")))
}

fn expect_end<'a>(mut fields: impl Iterator<Item = &'a str>, line: usize) -> Result<()> {
    match fields.next() {
        None => Ok(()),
        Some(extra) => Err(parse_err(line, &format!("unexpected trailing field `{extra}`"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub from: StateId,
    pub to: StateId,
    pub cost: CostPair,
}

/// Directed graph with a cost pair per arc and both adjacency directions.
///
/// Arcs are stored sorted by tail (stable w.r.t. input order); an [`ArcId`]
/// is an index into that order and is shared by both adjacency views.
#[derive(Clone, Debug)]
pub struct BiGraph {
    n: usize,
    tail: Vec<StateId>,
    head: Vec<StateId>,
    cost: Vec<CostPair>,
    out_offsets: Vec<usize>,
    in_offsets: Vec<usize>,
    in_arcs: Vec<ArcId>,
}

impl BiGraph {
    /// Builds a graph from `(from, to, cost)` triples. Self-loops are dropped.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<BiGraph>
    where
        I: IntoIterator<Item = (StateId, StateId, CostPair)>,
    {
        if n >= NO_ARC as usize {
            return Err(Error::InvalidArgument(format!("{n} states exceed the id width")));
        }
        let mut list: Vec<(StateId, StateId, CostPair)> = Vec::new();
        for (u, v, c) in arcs {
            for s in [u, v] {
                if s as usize >= n {
                    return Err(Error::InvalidState { state: s as usize, n });
                }
            }
            if u != v {
                list.push((u, v, c));
            }
        }
        if list.len() >= NO_ARC as usize {
            return Err(Error::InvalidArgument("too many arcs".into()));
        }
        list.sort_by_key(|&(u, _, _)| u);

        let m = list.len();
        let mut out_offsets = vec![0usize; n + 1];
        let mut in_offsets = vec![0usize; n + 1];
        for &(u, v, _) in &list {
            out_offsets[u as usize + 1] += 1;
            in_offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
            in_offsets[i + 1] += in_offsets[i];
        }
        let mut fill = in_offsets.clone();
        let mut in_arcs = vec![0 as ArcId; m];
        for (id, &(_, v, _)) in list.iter().enumerate() {
            let slot = &mut fill[v as usize];
            in_arcs[*slot] = id as ArcId;
            *slot += 1;
        }

        Ok(BiGraph {
            n,
            tail: list.iter().map(|a| a.0).collect(),
            head: list.iter().map(|a| a.1).collect(),
            cost: list.iter().map(|a| a.2).collect(),
            out_offsets,
            in_offsets,
            in_arcs,
        })
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    pub fn num_arcs(&self) -> usize {
        self.tail.len()
    }

    pub fn arc(&self, id: ArcId) -> Arc {
        let i = id as usize;
        Arc { from: self.tail[i], to: self.head[i], cost: self.cost[i] }
    }

    pub fn arcs(&self) -> impl Iterator<Item = (ArcId, Arc)> + '_ {
        (0..self.num_arcs() as ArcId).map(move |id| (id, self.arc(id)))
    }

    pub fn out_arcs(&self, s: StateId) -> std::ops::Range<ArcId> {
        let s = s as usize;
        self.out_offsets[s] as ArcId..self.out_offsets[s + 1] as ArcId
    }

    pub fn in_arcs(&self, s: StateId) -> &[ArcId] {
        let s = s as usize;
        &self.in_arcs[self.in_offsets[s]..self.in_offsets[s + 1]]
    }

    pub fn forward(&self) -> GraphView<'_> {
        GraphView { graph: self, reversed: false }
    }

    pub fn reversed(&self) -> GraphView<'_> {
        GraphView { graph: self, reversed: true }
    }

    pub fn check_state(&self, s: usize) -> Result<StateId> {
        if s < self.n {
            Ok(s as StateId)
        } else {
            Err(Error::InvalidState { state: s, n: self.n })
        }
    }

    /// Sums the arc costs along a state sequence, picking the cheapest
    /// parallel arc in lexicographic order. `None` if some step has no arc.
    pub fn walk_cost(&self, path: &[StateId]) -> Option<CostPair> {
        let mut total = CostPair::ZERO;
        for pair in path.windows(2) {
            let step =
                self.out_arcs(pair[0]).map(|id| self.arc(id)).filter(|a| a.to == pair[1]).map(|a| a.cost).min()?;
            total = total + step;
        }
        Some(total)
    }

    /// Whether some choice among parallel arcs along `path` sums exactly to
    /// `cost`.
    pub fn path_admits_cost(&self, path: &[StateId], cost: CostPair) -> bool {
        if path.is_empty() {
            return false;
        }
        let mut sums = HashSet::from([CostPair::ZERO]);
        for pair in path.windows(2) {
            let mut next = HashSet::new();
            for id in self.out_arcs(pair[0]) {
                let a = self.arc(id);
                if a.to != pair[1] {
                    continue;
                }
                next.extend(sums.iter().map(|&s| s + a.cost).filter(|s| s.c1 <= cost.c1 && s.c2 <= cost.c2));
            }
            if next.is_empty() {
                return false;
            }
            sums = next;
        }
        sums.contains(&cost)
    }
}

/// Pairs a distance file and a time file over the same arc sequence.
pub fn build_bigraph(first: &DimacsGraph, second: &DimacsGraph) -> Result<BiGraph> {
    if first.n != second.n {
        return Err(Error::TopologyMismatch(format!("state counts {} and {}", first.n, second.n)));
    }
    if first.arcs.len() != second.arcs.len() {
        return Err(Error::TopologyMismatch(format!("arc counts {} and {}", first.arcs.len(), second.arcs.len())));
    }
    let mut arcs = Vec::with_capacity(first.arcs.len());
    for (i, (a, b)) in first.arcs.iter().zip(&second.arcs).enumerate() {
        if (a.0, a.1) != (b.0, b.1) {
            return Err(Error::TopologyMismatch(format!(
                "arc {} is {}->{} in the first file and {}->{} in the second",
                i + 1,
                a.0 + 1,
                a.1 + 1,
                b.0 + 1,
                b.1 + 1
            )));
        }
        arcs.push((a.0, a.1, CostPair::new(a.2 as u64, b.2 as u64)));
    }
    BiGraph::from_arcs(first.n, arcs)
}

/// A direction-tagged view of a [`BiGraph`].
///
/// In a reversed view every arc `u -> v` appears as `v -> u` with the same
/// cost and the same [`ArcId`].
#[derive(Clone, Copy, Debug)]
pub struct GraphView<'a> {
    graph: &'a BiGraph,
    reversed: bool,
}

impl<'a> GraphView<'a> {
    pub fn graph(&self) -> &'a BiGraph {
        self.graph
    }

    pub fn is_reversed(&self) -> bool {
        self.reversed
    }

    pub fn reverse(&self) -> GraphView<'a> {
        GraphView { graph: self.graph, reversed: !self.reversed }
    }

    pub fn num_states(&self) -> usize {
        self.graph.n
    }

    /// Tail of `arc` as seen in this view.
    #[inline]
    pub fn source(&self, arc: ArcId) -> StateId {
        if self.reversed {
            self.graph.head[arc as usize]
        } else {
            self.graph.tail[arc as usize]
        }
    }

    /// Head of `arc` as seen in this view.
    #[inline]
    pub fn target(&self, arc: ArcId) -> StateId {
        if self.reversed {
            self.graph.tail[arc as usize]
        } else {
            self.graph.head[arc as usize]
        }
    }

    #[inline]
    pub fn cost(&self, arc: ArcId) -> CostPair {
        self.graph.cost[arc as usize]
    }

    /// Outgoing arcs of `s` in this view as `(arc, successor, cost)`.
    pub fn successors(&self, s: StateId) -> Successors<'a> {
        if self.reversed {
            Successors::Reverse { view: *self, ids: self.graph.in_arcs(s).iter() }
        } else {
            Successors::Forward { view: *self, ids: self.graph.out_arcs(s) }
        }
    }
}

pub enum Successors<'a> {
    Forward { view: GraphView<'a>, ids: std::ops::Range<ArcId> },
    Reverse { view: GraphView<'a>, ids: std::slice::Iter<'a, ArcId> },
}

impl Iterator for Successors<'_> {
    type Item = (ArcId, StateId, CostPair);

    #[inline]
    fn next(&mut self) -> Option<Self::Item> {
        let (view, id) = match self {
            Successors::Forward { view, ids } => (*view, ids.next()?),
            Successors::Reverse { view, ids } => (*view, *ids.next()?),
        };
        Some((id, view.target(id), view.cost(id)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_graph, S1, S2, S3, SG, SS};

    fn parse(text: &str) -> Result<DimacsGraph> {
        parse_dimacs_gr(text.as_bytes())
    }

    #[test]
    fn parses_single_arc() {
        let g = parse("p sp 2 1\na 1 2 803").unwrap();
        assert_eq!(g, DimacsGraph { n: 2, arcs: vec![(0, 1, 803)] });
    }

    #[test]
    fn parses_empty_graph_with_comment() {
        let g = parse("c comment\np sp 1 0").unwrap();
        assert_eq!(g.n, 1);
        assert!(g.arcs.is_empty());
    }

    #[test]
    fn rejects_out_of_range_state() {
        let err = parse("p sp 2 1\na 1 3 5").unwrap_err();
        assert!(matches!(err, Error::StateRange { line: 2, id: 3, n: 2 }), "{err}");
    }

    #[test]
    fn rejects_missing_problem_line() {
        assert!(matches!(parse("c nothing\n").unwrap_err(), Error::MissingProblemLine));
        assert!(matches!(parse("a 1 2 3\n").unwrap_err(), Error::MissingProblemLine));
    }

    #[test]
    fn reports_malformed_line_number() {
        let err = parse("c x\np sp 2 1\na 1 two 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse("p sp 2 1\na 1 2 -5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = parse("p sp 2 2\na 1 2 5\n").unwrap_err();
        assert!(matches!(err, Error::ArcCount { declared: 2, found: 1 }), "{err}");
    }

    #[test]
    fn pairs_two_files() {
        let g1 = DimacsGraph { n: 2, arcs: vec![(0, 1, 4)] };
        let g2 = DimacsGraph { n: 2, arcs: vec![(0, 1, 3)] };
        let g = build_bigraph(&g1, &g2).unwrap();
        assert_eq!(g.num_arcs(), 1);
        assert_eq!(g.arc(0), Arc { from: 0, to: 1, cost: CostPair::new(4, 3) });
    }

    #[test]
    fn rejects_topology_mismatch() {
        let g1 = DimacsGraph { n: 2, arcs: vec![(0, 1, 4)] };
        let g2 = DimacsGraph { n: 2, arcs: vec![(1, 0, 3)] };
        assert!(matches!(build_bigraph(&g1, &g2), Err(Error::TopologyMismatch(_))));
        let g3 = DimacsGraph { n: 3, arcs: vec![(0, 1, 3)] };
        assert!(matches!(build_bigraph(&g1, &g3), Err(Error::TopologyMismatch(_))));
    }

    #[test]
    fn drops_self_loops_keeps_parallel_arcs() {
        let g = BiGraph::from_arcs(
            2,
            [(0, 0, CostPair::new(1, 1)), (0, 1, CostPair::new(1, 9)), (0, 1, CostPair::new(9, 1))],
        )
        .unwrap();
        assert_eq!(g.num_arcs(), 2);
        assert_eq!(g.reversed().successors(1).count(), 2);
    }

    #[test]
    fn example_shape() {
        let g = example_graph();
        assert_eq!((g.num_states(), g.num_arcs()), (5, 7));
        let mut succ: Vec<_> = g.reversed().successors(SG).map(|(_, s, c)| (s, c)).collect();
        succ.sort();
        assert_eq!(succ, vec![(S2, CostPair::new(2, 1)), (S3, CostPair::new(3, 4))]);
        assert_eq!(g.walk_cost(&[SS, S1, S2, SG]), Some(CostPair::new(4, 6)));
        assert_eq!(g.walk_cost(&[SS, SG]), None);
    }

    #[test]
    fn empty_graph_views() {
        let g = BiGraph::from_arcs(0, []).unwrap();
        assert_eq!(g.reversed().num_states(), 0);
        assert_eq!(g.reversed().reverse().num_states(), 0);
    }

    #[test]
    fn double_reverse_is_identity() {
        let g = example_graph();
        let rr = g.forward().reverse().reverse();
        for s in 0..g.num_states() as StateId {
            let a: Vec<_> = g.forward().successors(s).collect();
            let b: Vec<_> = rr.successors(s).collect();
            assert_eq!(a, b);
        }
    }
}
