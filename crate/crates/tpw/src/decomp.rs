//! Tree decompositions: verification of the three axioms, clique trees from
//! perfect elimination orders, exact tree-width for chordal or small graphs,
//! a min-fill heuristic, and the balanced separator that splits a graph into
//! two edge-disjoint halves, each keeping at least a third of a given vertex
//! set outside the shared boundary.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{EliminationOrder, Graph};

/// Bags plus tree edges over bag indices. Width is max bag size minus one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<BTreeSet<usize>>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<BTreeSet<usize>>, tree_edges: Vec<(usize, usize)>) -> Self {
        let mut td = TreeDecomposition { bags, tree_edges };
        td.normalize_edges();
        td
    }

    fn normalize_edges(&mut self) {
        let set: BTreeSet<(usize, usize)> = self
            .tree_edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        self.tree_edges = set.into_iter().collect();
    }

    pub fn bag_count(&self) -> usize {
        self.bags.len()
    }

    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Bag adjacency lists.
    pub fn tree_adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.bags.len()];
        for &(a, b) in &self.tree_edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    /// Restriction to `keep`: intersect every bag with `keep`, then contract
    /// away empty bags (each merges into its smallest live neighbor). The
    /// result is a valid decomposition of any subgraph on `keep` whose edges
    /// come from the original graph.
    pub fn restrict_to(&self, keep: &BTreeSet<usize>) -> TreeDecomposition {
        let b = self.bags.len();
        let mut bags: Vec<Option<BTreeSet<usize>>> = self
            .bags
            .iter()
            .map(|bag| Some(bag.intersection(keep).copied().collect()))
            .collect();
        let mut adj = self.tree_adjacency();

        loop {
            let empty = (0..b).find(|&i| matches!(&bags[i], Some(s) if s.is_empty()));
            let Some(i) = empty else { break };
            if let Some(&j) = adj[i].iter().next() {
                // contract i into j
                let nbrs: Vec<usize> = adj[i].iter().copied().collect();
                for x in nbrs {
                    adj[x].remove(&i);
                    if x != j {
                        adj[x].insert(j);
                        adj[j].insert(x);
                    }
                }
                adj[i].clear();
            }
            bags[i] = None;
        }

        let mut remap = vec![usize::MAX; b];
        let mut new_bags = Vec::new();
        for (i, bag) in bags.iter().enumerate() {
            if let Some(bag) = bag {
                remap[i] = new_bags.len();
                new_bags.push(bag.clone());
            }
        }
        let mut new_edges = BTreeSet::new();
        for i in 0..b {
            if remap[i] == usize::MAX {
                continue;
            }
            for &j in &adj[i] {
                if remap[j] != usize::MAX && remap[i] < remap[j] {
                    new_edges.insert((remap[i], remap[j]));
                }
            }
        }
        TreeDecomposition {
            bags: new_bags,
            tree_edges: new_edges.into_iter().collect(),
        }
    }
}

/// First violated tree-decomposition axiom, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TdViolation {
    BagVertexOutOfRange { bag: usize, vertex: usize },
    InvalidTreeEdge { a: usize, b: usize },
    NotAForest { a: usize, b: usize },
    VertexUncovered { vertex: usize },
    EdgeUncovered { u: usize, v: usize },
    VertexBagsDisconnected { vertex: usize },
}

impl fmt::Display for TdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TdViolation::BagVertexOutOfRange { bag, vertex } => {
                write!(f, "bag {bag} contains out-of-range vertex {vertex}")
            }
            TdViolation::InvalidTreeEdge { a, b } => write!(f, "invalid tree edge ({a}, {b})"),
            TdViolation::NotAForest { a, b } => {
                write!(f, "tree edge ({a}, {b}) closes a cycle among bags")
            }
            TdViolation::VertexUncovered { vertex } => {
                write!(f, "vertex {vertex} appears in no bag")
            }
            TdViolation::EdgeUncovered { u, v } => {
                write!(f, "edge ({u}, {v}) is contained in no bag")
            }
            TdViolation::VertexBagsDisconnected { vertex } => {
                write!(f, "bags containing vertex {vertex} do not form a subtree")
            }
        }
    }
}

/// Checks all tree-decomposition axioms; returns the width on success.
pub fn verify_tree_decomposition(
    g: &Graph,
    td: &TreeDecomposition,
) -> std::result::Result<usize, TdViolation> {
    let n = g.vertex_count();
    let b = td.bags.len();

    for (i, bag) in td.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| v >= n) {
            return Err(TdViolation::BagVertexOutOfRange { bag: i, vertex: v });
        }
    }

    let mut dsu = DisjointSets::new(b);
    for &(a, c) in &td.tree_edges {
        if a >= b || c >= b || a == c {
            return Err(TdViolation::InvalidTreeEdge { a, b: c });
        }
        if !dsu.union(a, c) {
            return Err(TdViolation::NotAForest { a, b: c });
        }
    }

    let mut covered = vec![false; n];
    for bag in &td.bags {
        for &v in bag {
            covered[v] = true;
        }
    }
    if let Some(v) = (0..n).find(|&v| !covered[v]) {
        return Err(TdViolation::VertexUncovered { vertex: v });
    }

    for (u, v) in g.edges() {
        if !td
            .bags
            .iter()
            .any(|bag| bag.contains(&u) && bag.contains(&v))
        {
            return Err(TdViolation::EdgeUncovered { u, v });
        }
    }

    let adj = td.tree_adjacency();
    for v in 0..n {
        let holding: Vec<usize> = (0..b).filter(|&i| td.bags[i].contains(&v)).collect();
        if holding.len() > 1 {
            let inside: BTreeSet<usize> = holding.iter().copied().collect();
            let mut seen = BTreeSet::from([holding[0]]);
            let mut stack = vec![holding[0]];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if inside.contains(&y) && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            if seen.len() != holding.len() {
                return Err(TdViolation::VertexBagsDisconnected { vertex: v });
            }
        }
    }

    Ok(td.width())
}

/// Builds a tree decomposition by eliminating vertices in the given order:
/// the bag of `v` is `v` plus its neighbors in the fill graph at elimination
/// time, attached to the bag of the earliest-eliminated such neighbor.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.vertex_count();
    debug_assert_eq!(order.len(), n);
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).clone()).collect();
    let mut bags: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
    let mut edges = Vec::new();

    for (i, &v) in order.iter().enumerate() {
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        let mut bag: BTreeSet<usize> = nbrs.iter().copied().collect();
        bag.insert(v);
        if let Some(&parent) = nbrs.iter().min_by_key(|&&u| pos[u]) {
            edges.push((i, pos[parent]));
        }
        bags.push(bag);
        for &u in &nbrs {
            adj[u].remove(&v);
        }
        for (ai, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[ai + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
    }
    TreeDecomposition::new(bags, edges)
}

/// Clique tree of a chordal graph from a verified perfect elimination order.
/// Its width equals the clique number minus one.
pub fn clique_tree_from_peo(g: &Graph, peo: &EliminationOrder) -> Result<TreeDecomposition> {
    if peo.as_slice().len() != g.vertex_count() {
        return Err(Error::input("elimination order length mismatch"));
    }
    if let Err(v) = g.verify_peo(peo) {
        return Err(Error::input(format!(
            "order is not a perfect elimination order: later neighbors {} and {} of {} are non-adjacent",
            v.u, v.v, v.pivot
        )));
    }
    let td = decomposition_from_order(g, peo.as_slice());
    debug_assert!(verify_tree_decomposition(g, &td).is_ok());
    Ok(td)
}

/// Hard cap for the subset dynamic program.
pub const EXACT_TW_MAX_N: usize = 16;

/// Exact tree-width with a witness decomposition. Chordal graphs of any size
/// go through the clique tree; otherwise a subset dynamic program over
/// elimination prefixes handles up to [`EXACT_TW_MAX_N`] vertices.
pub fn treewidth_exact(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok((0, TreeDecomposition::new(vec![], vec![])));
    }
    match g.chordality() {
        crate::graph::Chordality::Chordal { peo } => {
            let td = clique_tree_from_peo(g, &peo)?;
            Ok((td.width(), td))
        }
        crate::graph::Chordality::NotChordal { .. } => {
            if n > EXACT_TW_MAX_N {
                return Err(Error::capacity(format!(
                    "exact tree-width of non-chordal graphs is limited to {EXACT_TW_MAX_N} vertices, got {n}"
                )));
            }
            let order = optimal_elimination_order(g);
            let td = decomposition_from_order(g, &order);
            debug_assert!(verify_tree_decomposition(g, &td).is_ok());
            Ok((td.width(), td))
        }
    }
}

/// Subset DP over elimination prefixes: `tw(S)` is the best width achievable
/// eliminating exactly `S` first, and the fill degree of the next vertex is
/// the number of vertices outside reachable through the prefix.
fn optimal_elimination_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    debug_assert!(n <= EXACT_TW_MAX_N && n > 0);
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };

    // number of vertices outside x∪{v} reachable from v through x
    let reach_degree = |x: u32, v: usize| -> u32 {
        let mut seen = adj[v];
        let mut frontier = seen & x;
        while frontier != 0 {
            let mut next = 0u32;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[u];
            }
            next &= !seen;
            seen |= next;
            frontier = next & x;
        }
        (seen & !x & !(1 << v)).count_ones()
    };

    let size = 1usize << n;
    let mut best = vec![u8::MAX; size];
    let mut choice = vec![0u8; size];
    best[0] = 0;
    for s in 1..size as u32 {
        let mut s_bits = s;
        while s_bits != 0 {
            let v = s_bits.trailing_zeros() as usize;
            s_bits &= s_bits - 1;
            let prev = s & !(1 << v);
            let cand = best[prev as usize].max(reach_degree(prev, v) as u8);
            if cand < best[s as usize] {
                best[s as usize] = cand;
                choice[s as usize] = v as u8;
            }
        }
    }

    let mut order_rev = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        order_rev.push(v);
        s &= !(1 << v);
    }
    order_rev.reverse();
    order_rev
}

/// Valid decomposition without tightness guarantees: chordal graphs dispatch
/// to the exact clique tree, everything else gets greedy min-fill.
pub fn treewidth_heuristic(g: &Graph) -> TreeDecomposition {
    match g.chordality() {
        crate::graph::Chordality::Chordal { peo } => {
            clique_tree_from_peo(g, &peo).expect("verified peo")
        }
        crate::graph::Chordality::NotChordal { .. } => {
            let order = min_fill_order(g);
            let td = decomposition_from_order(g, &order);
            debug_assert!(verify_tree_decomposition(g, &td).is_ok());
            td
        }
    }
}

fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).clone()).collect();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    while !alive.is_empty() {
        let mut pick = usize::MAX;
        let mut pick_fill = usize::MAX;
        for &v in &alive {
            let nbrs: Vec<usize> = adj[v].iter().copied().collect();
            let mut fill = 0;
            for (i, &x) in nbrs.iter().enumerate() {
                for &y in &nbrs[i + 1..] {
                    if !adj[x].contains(&y) {
                        fill += 1;
                    }
                }
            }
            if fill < pick_fill {
                pick_fill = fill;
                pick = v;
            }
        }
        let v = pick;
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for &u in &nbrs {
            adj[u].remove(&v);
        }
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        adj[v].clear();
        alive.remove(&v);
        order.push(v);
    }
    order
}

/// Side tag for the edge partition of a separator result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    One,
    Two,
}

/// Separation of a graph into edge-disjoint halves `G1`, `G2` overlapping in
/// `y = v1 ∩ v2`, such that each half misses at most two thirds of the target
/// set outside `y`.
#[derive(Clone, Debug)]
pub struct SeparatorResult {
    pub y: BTreeSet<usize>,
    pub v1: BTreeSet<usize>,
    pub v2: BTreeSet<usize>,
    pub edge_side: BTreeMap<(usize, usize), Side>,
}

impl SeparatorResult {
    /// Edge-subset graph for the requested side, on the full vertex range of
    /// `g` (callers typically induce on `v1`/`v2` afterwards).
    pub fn side_edges(&self, side: Side) -> Vec<(usize, usize)> {
        self.edge_side
            .iter()
            .filter(|&(_, &s)| s == side)
            .map(|(&e, _)| e)
            .collect()
    }
}

const SUBSET_SEARCH_CAP: u128 = 5_000_000;

/// Balanced separator relative to `s`, derived from a valid width-`k` tree
/// decomposition. Postconditions: `|y| <= k+1`, the two sides are
/// edge-disjoint and cover all edges, and `|s - v_i| <= (2/3)|s - y|`.
///
/// Candidates are tried in a deterministic order: every bag by index (the
/// centroid argument guarantees a hit whenever `|s| >= 4(k+1)`), then `y = s`
/// itself when `s` is small enough, then all vertex subsets of size at most
/// `k+1` in lexicographic order.
pub fn balanced_separator(
    g: &Graph,
    td: &TreeDecomposition,
    s: &BTreeSet<usize>,
) -> Result<SeparatorResult> {
    if let Err(v) = verify_tree_decomposition(g, td) {
        return Err(Error::input(format!("invalid tree decomposition: {v}")));
    }
    let n = g.vertex_count();
    if let Some(&bad) = s.iter().find(|&&v| v >= n) {
        return Err(Error::input(format!("target vertex {bad} out of range")));
    }
    let k = td.width();

    for bag in &td.bags {
        if let Some(r) = try_separator(g, s, bag) {
            return Ok(r);
        }
    }

    if s.len() <= k + 1 {
        if let Some(r) = try_separator(g, s, s) {
            return Ok(r);
        }
    }

    // exhaustive fallback over candidate sets of size <= k+1
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for i in 0..=(k + 1).min(n) {
        total += binom;
        binom = binom * (n - i) as u128 / (i + 1) as u128;
        if total > SUBSET_SEARCH_CAP {
            return Err(Error::capacity(format!(
                "separator fallback would enumerate more than {SUBSET_SEARCH_CAP} candidate sets (n={n}, k={k})"
            )));
        }
    }
    for size in 0..=(k + 1).min(n) {
        let mut found = None;
        for_each_combination(n, size, &mut |subset| {
            if found.is_some() {
                return;
            }
            let y: BTreeSet<usize> = subset.iter().copied().collect();
            if let Some(r) = try_separator(g, s, &y) {
                found = Some(r);
            }
        });
        if let Some(r) = found {
            return Ok(r);
        }
    }

    Err(Error::contract(
        "no balanced separator found; a valid decomposition always admits one",
    ))
}

/// Greedy component packing for a candidate separator `y`. Components are
/// sorted by target weight descending and assigned to the currently lighter
/// side; this balances within the required two thirds exactly when the
/// heaviest component carries at most two thirds of the weight outside `y`.
fn try_separator(g: &Graph, s: &BTreeSet<usize>, y: &BTreeSet<usize>) -> Option<SeparatorResult> {
    let comps = g.components_avoiding(y);
    let mut weighted: Vec<(usize, usize)> = comps
        .iter()
        .enumerate()
        .map(|(i, c)| (i, c.iter().filter(|v| s.contains(v)).count()))
        .collect();
    let total: usize = weighted.iter().map(|&(_, w)| w).sum();
    // descending weight; ties by smallest contained vertex, i.e. comp order
    weighted.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));

    let mut side_of = vec![Side::One; comps.len()];
    let (mut w1, mut w2) = (0usize, 0usize);
    for &(idx, w) in &weighted {
        if w2 < w1 {
            side_of[idx] = Side::Two;
            w2 += w;
        } else {
            side_of[idx] = Side::One;
            w1 += w;
        }
    }
    // |s - v1| = total - w1 must be <= (2/3) total, same for side two
    if 3 * (total - w1) > 2 * total || 3 * (total - w2) > 2 * total {
        return None;
    }

    let mut v1: BTreeSet<usize> = y.clone();
    let mut v2: BTreeSet<usize> = y.clone();
    let mut comp_of = vec![usize::MAX; g.vertex_count()];
    for (i, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
        match side_of[i] {
            Side::One => v1.extend(comp.iter().copied()),
            Side::Two => v2.extend(comp.iter().copied()),
        }
    }
    let mut edge_side = BTreeMap::new();
    for (u, v) in g.edges() {
        let side = match (y.contains(&u), y.contains(&v)) {
            (true, true) => Side::One,
            (false, _) => side_of[comp_of[u]],
            (_, false) => side_of[comp_of[v]],
        };
        edge_side.insert((u, v), side);
    }
    Some(SeparatorResult {
        y: y.clone(),
        v1,
        v2,
        edge_side,
    })
}

fn for_each_combination(n: usize, size: usize, f: &mut dyn FnMut(&[usize])) {
    let mut current = Vec::with_capacity(size);
    fn rec(
        n: usize,
        size: usize,
        start: usize,
        current: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if current.len() == size {
            f(current);
            return;
        }
        let remaining = size - current.len();
        for v in start..=(n - remaining) {
            current.push(v);
            rec(n, size, v + 1, current, f);
            current.pop();
        }
    }
    if size == 0 {
        f(&[]);
    } else if size <= n {
        rec(n, size, 0, &mut current, f);
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }
}

/// Writes the decomposition text format: `s td <#bags> <width+1> <n>`, one
/// `b <id> <v...>` line per bag, then tree edges, all 1-based.
pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = String::new();
    let max_bag = td.bags.iter().map(|b| b.len()).max().unwrap_or(0);
    let _ = writeln!(out, "s td {} {} {}", td.bag_count(), max_bag, n);
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for &v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        let _ = writeln!(out);
    }
    for &(a, b) in &td.tree_edges {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

/// Parses the decomposition text format; returns the decomposition and the
/// declared vertex count.
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut bags: Vec<BTreeSet<usize>> = Vec::new();
    let mut edges = Vec::new();
    let mut header: Option<(usize, usize)> = None; // (#bags, n)
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        match fields[0] {
            "s" => {
                if fields.len() != 5 || fields[1] != "td" {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected `s td <#bags> <width+1> <n>`".into(),
                    });
                }
                let nb: usize = fields[2].parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: "bad bag count".into(),
                })?;
                let n: usize = fields[4].parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: "bad vertex count".into(),
                })?;
                header = Some((nb, n));
                bags = vec![BTreeSet::new(); nb];
            }
            "b" => {
                let (nb, n) = header.ok_or(Error::Parse {
                    line: lineno,
                    msg: "bag line before s line".into(),
                })?;
                let id: usize = fields
                    .get(1)
                    .and_then(|x| x.parse().ok())
                    .ok_or(Error::Parse {
                        line: lineno,
                        msg: "bad bag id".into(),
                    })?;
                if id == 0 || id > nb {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("bag id {id} out of range"),
                    });
                }
                for f in &fields[2..] {
                    let v: usize = f.parse().map_err(|_| Error::Parse {
                        line: lineno,
                        msg: "bad bag vertex".into(),
                    })?;
                    if v == 0 || v > n {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("bag vertex {v} out of range"),
                        });
                    }
                    bags[id - 1].insert(v - 1);
                }
            }
            _ => {
                let (nb, _) = header.ok_or(Error::Parse {
                    line: lineno,
                    msg: "edge line before s line".into(),
                })?;
                if fields.len() != 2 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected `<bag> <bag>` tree edge".into(),
                    });
                }
                let a: usize = fields[0].parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: "bad tree edge".into(),
                })?;
                let b: usize = fields[1].parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: "bad tree edge".into(),
                })?;
                if a == 0 || b == 0 || a > nb || b > nb {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "tree edge endpoint out of range".into(),
                    });
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let (_, n) = header.ok_or_else(|| Error::input("no s line in decomposition input"))?;
    Ok((TreeDecomposition::new(bags, edges), n))
}
