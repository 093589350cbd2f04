//! Undirected simple graphs on dense vertex indices `0..n`, with the
//! structural queries the rest of the crate builds on: connectivity, induced
//! subgraphs, maximum-cardinality search, perfect-elimination-order
//! verification and chordality with witness extraction.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.vertex_count(), self.m)
    }
}

/// Old-to-new and new-to-old index maps returned by [`Graph::induced_subgraph`].
#[derive(Clone, Debug)]
pub struct SubgraphMap {
    /// `to_old[new] = old`
    pub to_old: Vec<usize>,
    /// `to_new[old] = new`
    pub to_new: BTreeMap<usize, usize>,
}

/// A vertex order intended as a perfect elimination order. The constructor
/// only checks that it is a permutation; PEO-ness is established separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder(Vec<usize>);

impl EliminationOrder {
    pub fn new(n: usize, order: Vec<usize>) -> Result<Self> {
        if order.len() != n {
            return Err(Error::input(format!(
                "elimination order has {} entries for {} vertices",
                order.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::input("elimination order is not a permutation"));
            }
            seen[v] = true;
        }
        Ok(EliminationOrder(order))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }
}

/// Witness that an order is not a PEO: the two later neighbors `u`, `v` of
/// `pivot` are non-adjacent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeoViolation {
    pub pivot: usize,
    pub u: usize,
    pub v: usize,
}

/// Outcome of the chordality test.
#[derive(Clone, Debug)]
pub enum Chordality {
    Chordal {
        peo: EliminationOrder,
    },
    /// `cycle` is a chordless cycle of length >= 4 in cyclic order.
    NotChordal {
        cycle: Vec<usize>,
    },
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal { .. })
    }
}

impl Graph {
    /// Builds a graph from an edge list; edges are deduplicated, self-loops
    /// and out-of-range endpoints are input errors.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph {
            adj: vec![BTreeSet::new(); n],
            m: 0,
        };
        for &(u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
            m: 0,
        }
    }

    fn add_edge_checked(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return Err(Error::input(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::input(format!("self-loop at vertex {u}")));
        }
        if self.adj[u].insert(v) {
            self.adj[v].insert(u);
            self.m += 1;
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// All edges as ordered pairs `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_clique(&self, set: &BTreeSet<usize>) -> bool {
        let items: Vec<usize> = set.iter().copied().collect();
        for (i, &u) in items.iter().enumerate() {
            for &v in &items[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Maximal connected vertex sets, ordered by smallest contained index,
    /// each internally sorted.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Connected components of `self` after deleting `removed`.
    pub fn components_avoiding(&self, removed: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        for &v in removed {
            seen[v] = true;
        }
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// The subgraph induced by `s`, with vertices renumbered in ascending
    /// order of their old indices.
    pub fn induced_subgraph(&self, s: &BTreeSet<usize>) -> Result<(Graph, SubgraphMap)> {
        let n = self.vertex_count();
        if let Some(&bad) = s.iter().find(|&&v| v >= n) {
            return Err(Error::input(format!(
                "vertex {bad} out of range for {n} vertices"
            )));
        }
        let to_old: Vec<usize> = s.iter().copied().collect();
        let to_new: BTreeMap<usize, usize> =
            to_old.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut sub = Graph::empty(to_old.len());
        for (new_u, &old_u) in to_old.iter().enumerate() {
            for &old_v in &self.adj[old_u] {
                if old_v > old_u {
                    if let Some(&new_v) = to_new.get(&old_v) {
                        sub.adj[new_u].insert(new_v);
                        sub.adj[new_v].insert(new_u);
                        sub.m += 1;
                    }
                }
            }
        }
        Ok((sub, SubgraphMap { to_old, to_new }))
    }

    /// Vertices whose neighborhood induces a clique.
    pub fn simplicial_vertices(&self) -> BTreeSet<usize> {
        self.vertices()
            .filter(|&v| self.is_clique(&self.adj[v]))
            .collect()
    }

    /// Maximum-cardinality search visit order (first visited first). Ties are
    /// broken toward the smallest index, so the order is deterministic.
    pub fn mcs_order(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut weight = vec![0usize; n];
        let mut visited = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !visited[v])
                .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
                .expect("unvisited vertex exists");
            visited[v] = true;
            order.push(v);
            for &w in &self.adj[v] {
                if !visited[w] {
                    weight[w] += 1;
                }
            }
        }
        order
    }

    /// Checks the defining property of a perfect elimination order: for every
    /// vertex, its neighbors later in the order form a clique. Returns the
    /// first violating triple otherwise.
    pub fn verify_peo(&self, order: &EliminationOrder) -> std::result::Result<(), PeoViolation> {
        let n = self.vertex_count();
        let mut pos = vec![0usize; n];
        for (i, &v) in order.as_slice().iter().enumerate() {
            pos[v] = i;
        }
        for &v in order.as_slice() {
            let later: Vec<usize> = self.adj[v]
                .iter()
                .copied()
                .filter(|&w| pos[w] > pos[v])
                .collect();
            for (i, &x) in later.iter().enumerate() {
                for &y in &later[i + 1..] {
                    if !self.has_edge(x, y) {
                        let (u, w) = if pos[x] < pos[y] { (x, y) } else { (y, x) };
                        return Err(PeoViolation { pivot: v, u, v: w });
                    }
                }
            }
        }
        Ok(())
    }

    /// Chordality test: run MCS, reverse it, verify the PEO. On failure the
    /// violating triple seeds a chordless-cycle search; a full scan backs it
    /// up so a witness is always produced.
    pub fn chordality(&self) -> Chordality {
        let n = self.vertex_count();
        let mut rev = self.mcs_order();
        rev.reverse();
        let order = EliminationOrder::new(n, rev).expect("mcs order is a permutation");
        match self.verify_peo(&order) {
            Ok(()) => Chordality::Chordal { peo: order },
            Err(viol) => {
                if let Some(cycle) = self.chordless_cycle_through(viol.pivot, viol.u, viol.v) {
                    return Chordality::NotChordal { cycle };
                }
                let cycle = self
                    .find_chordless_cycle()
                    .expect("non-chordal graph has a chordless cycle");
                Chordality::NotChordal { cycle }
            }
        }
    }

    /// Convenient boolean/witness form of [`Graph::chordality`].
    pub fn is_chordal(&self) -> bool {
        self.chordality().is_chordal()
    }

    /// Tries to complete the path `u - pivot - v` (u, v non-adjacent) into a
    /// chordless cycle with a shortest u-v path avoiding the closed
    /// neighborhood of `pivot` except at the endpoints.
    fn chordless_cycle_through(&self, pivot: usize, u: usize, v: usize) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut blocked = vec![false; n];
        blocked[pivot] = true;
        for &w in &self.adj[pivot] {
            blocked[w] = true;
        }
        blocked[u] = false;
        blocked[v] = false;

        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::from([u]);
        let mut seen = vec![false; n];
        seen[u] = true;
        while let Some(x) = queue.pop_front() {
            if x == v {
                let mut path = vec![v];
                let mut cur = v;
                while cur != u {
                    cur = parent[cur];
                    path.push(cur);
                }
                // path is v..u; cycle order: pivot, u, ..., v
                path.reverse();
                let mut cycle = vec![pivot];
                cycle.extend(path);
                debug_assert!(self.cycle_is_chordless(&cycle));
                return Some(cycle);
            }
            for &w in &self.adj[x] {
                if !seen[w] && !blocked[w] {
                    seen[w] = true;
                    parent[w] = x;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Scans every vertex with a non-adjacent neighbor pair; if the graph has
    /// any chordless cycle of length >= 4, some triple completes.
    fn find_chordless_cycle(&self) -> Option<Vec<usize>> {
        for pivot in self.vertices() {
            let nbrs: Vec<usize> = self.adj[pivot].iter().copied().collect();
            for (i, &u) in nbrs.iter().enumerate() {
                for &v in &nbrs[i + 1..] {
                    if !self.has_edge(u, v) {
                        if let Some(c) = self.chordless_cycle_through(pivot, u, v) {
                            return Some(c);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn cycle_is_chordless(&self, cycle: &[usize]) -> bool {
        let len = cycle.len();
        if len < 4 {
            return false;
        }
        let set: BTreeSet<usize> = cycle.iter().copied().collect();
        if set.len() != len {
            return false;
        }
        for i in 0..len {
            for j in i + 1..len {
                let consecutive = j == i + 1 || (i == 0 && j == len - 1);
                if self.has_edge(cycle[i], cycle[j]) != consecutive {
                    return false;
                }
            }
        }
        true
    }
}

/// Writes the graph text format: a `p tpw <n> <m>` header, one `e <u> <v>`
/// line per edge with 1-based endpoints, preceded by the given comment lines.
pub fn write_graph(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p tpw {} {}", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

/// Parses the graph text format; returns the graph and all comment payloads
/// (text after `c `) in file order.
pub fn parse_graph(text: &str) -> Result<(Graph, Vec<String>)> {
    let mut comments = Vec::new();
    let mut graph: Option<Graph> = None;
    let mut declared_m = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_ascii_whitespace();
        match it.next() {
            Some("c") => {
                comments.push(line[1..].trim_start().to_string());
            }
            Some("p") => {
                if graph.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "duplicate p line".into(),
                    });
                }
                let kind = it.next().unwrap_or("");
                if kind != "tpw" {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("expected `p tpw`, got `p {kind}`"),
                    });
                }
                let n = parse_field(it.next(), lineno, "vertex count")?;
                declared_m = parse_field(it.next(), lineno, "edge count")?;
                graph = Some(Graph::empty(n));
            }
            Some("e") => {
                let g = graph.as_mut().ok_or(Error::Parse {
                    line: lineno,
                    msg: "edge before p line".into(),
                })?;
                let u: usize = parse_field(it.next(), lineno, "edge endpoint")?;
                let v: usize = parse_field(it.next(), lineno, "edge endpoint")?;
                if u == 0 || v == 0 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "edge endpoints are 1-based".into(),
                    });
                }
                g.add_edge_checked(u - 1, v - 1).map_err(|e| Error::Parse {
                    line: lineno,
                    msg: e.to_string(),
                })?;
            }
            Some(other) => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unknown line type `{other}`"),
                });
            }
            None => {}
        }
    }
    let g = graph.ok_or_else(|| Error::input("no p line in graph input"))?;
    if g.edge_count() != declared_m {
        // duplicate edges in the input collapse; tolerate but only downward
        if g.edge_count() > declared_m {
            return Err(Error::input(format!(
                "header declares {} edges but {} distinct edges given",
                declared_m,
                g.edge_count()
            )));
        }
    }
    Ok((g, comments))
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, line: usize, what: &str) -> Result<T> {
    field
        .ok_or(Error::Parse {
            line,
            msg: format!("missing {what}"),
        })?
        .parse()
        .map_err(|_| Error::Parse {
            line,
            msg: format!("bad {what}"),
        })
}

/// DOT rendering, optionally with vertex labels.
pub fn to_dot(g: &Graph, labels: Option<&[String]>) -> String {
    let mut out = String::from("graph g {\n");
    for v in g.vertices() {
        match labels.and_then(|l| l.get(v)) {
            Some(label) => {
                let _ = writeln!(out, "  {v} [label=\"{label}\"];");
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
