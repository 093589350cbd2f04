//! Tree-partitions: a partition of the vertex set whose quotient graph is a
//! forest. Provides quotient construction, verification with cycle
//! witnesses, the connected-bag refinement valid on chordal graphs, and an
//! exact width oracle via width-capped canonical partition search.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::decomp;
use crate::error::{Error, Result};
use crate::graph::{Chordality, Graph};

/// Vertex-to-bag assignment plus the derived bag list. Invariants: every
/// vertex is in exactly one bag and no bag is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePartition {
    bag_of: Vec<usize>,
    bags: Vec<BTreeSet<usize>>,
}

impl TreePartition {
    /// Builds from an explicit assignment; bag ids are relabeled in order of
    /// first use so equal partitions get equal representations.
    pub fn from_assignment(bag_of: Vec<usize>) -> Self {
        let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
        let mut normalized = Vec::with_capacity(bag_of.len());
        for &b in &bag_of {
            let next = remap.len();
            let id = *remap.entry(b).or_insert(next);
            normalized.push(id);
        }
        let mut bags = vec![BTreeSet::new(); remap.len()];
        for (v, &b) in normalized.iter().enumerate() {
            bags[b].insert(v);
        }
        TreePartition {
            bag_of: normalized,
            bags,
        }
    }

    /// Builds from explicit bags over vertices `0..n`; they must be disjoint,
    /// non-empty, and cover everything.
    pub fn from_bags(n: usize, bags: Vec<BTreeSet<usize>>) -> Result<Self> {
        let mut bag_of = vec![usize::MAX; n];
        for (i, bag) in bags.iter().enumerate() {
            if bag.is_empty() {
                return Err(Error::input(format!("bag {i} is empty")));
            }
            for &v in bag {
                if v >= n {
                    return Err(Error::input(format!("bag vertex {v} out of range")));
                }
                if bag_of[v] != usize::MAX {
                    return Err(Error::input(format!("vertex {v} appears in two bags")));
                }
                bag_of[v] = i;
            }
        }
        if let Some(v) = bag_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::input(format!("vertex {v} is not in any bag")));
        }
        Ok(TreePartition { bag_of, bags })
    }

    pub fn singletons(n: usize) -> Self {
        TreePartition {
            bag_of: (0..n).collect(),
            bags: (0..n).map(|v| BTreeSet::from([v])).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.bag_of.len()
    }

    pub fn bag_count(&self) -> usize {
        self.bags.len()
    }

    pub fn bag_of(&self, v: usize) -> usize {
        self.bag_of[v]
    }

    pub fn bags(&self) -> &[BTreeSet<usize>] {
        &self.bags
    }

    pub fn bag(&self, i: usize) -> &BTreeSet<usize> {
        &self.bags[i]
    }

    /// Width of the partition: the largest bag size.
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0)
    }
}

/// Quotient graph of a partition: one vertex per bag, bags adjacent exactly
/// when some graph edge crosses between them.
pub fn quotient_graph(g: &Graph, bags: &[BTreeSet<usize>]) -> Result<Graph> {
    let n = g.vertex_count();
    let mut bag_of = vec![usize::MAX; n];
    for (i, bag) in bags.iter().enumerate() {
        if bag.is_empty() {
            return Err(Error::input(format!("bag {i} is empty")));
        }
        for &v in bag {
            if v >= n {
                return Err(Error::input(format!("bag vertex {v} out of range")));
            }
            if bag_of[v] != usize::MAX {
                return Err(Error::input(format!("vertex {v} appears in two bags")));
            }
            bag_of[v] = i;
        }
    }
    if let Some(v) = bag_of.iter().position(|&b| b == usize::MAX) {
        return Err(Error::input(format!("vertex {v} is not in any bag")));
    }
    let mut edges = BTreeSet::new();
    for (u, v) in g.edges() {
        let (a, b) = (bag_of[u], bag_of[v]);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let edge_list: Vec<(usize, usize)> = edges.into_iter().collect();
    Graph::new(bags.len(), &edge_list)
}

/// Verification outcome for a tree-partition candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TpVerification {
    Valid {
        width: usize,
    },
    NotPartition {
        reason: String,
    },
    /// Bag ids forming a cycle in the quotient graph, in cyclic order.
    QuotientCycle {
        cycle: Vec<usize>,
    },
}

impl TpVerification {
    pub fn is_valid(&self) -> bool {
        matches!(self, TpVerification::Valid { .. })
    }
}

/// Checks that `p` partitions the vertices of `g` and that its quotient is a
/// forest; reports the width on success and a quotient cycle otherwise.
pub fn verify_tree_partition(g: &Graph, p: &TreePartition) -> TpVerification {
    if p.vertex_count() != g.vertex_count() {
        return TpVerification::NotPartition {
            reason: format!(
                "partition covers {} vertices, graph has {}",
                p.vertex_count(),
                g.vertex_count()
            ),
        };
    }
    let quotient = match quotient_graph(g, p.bags()) {
        Ok(q) => q,
        Err(e) => {
            return TpVerification::NotPartition {
                reason: e.to_string(),
            }
        }
    };
    if let Some(cycle) = find_cycle(&quotient) {
        return TpVerification::QuotientCycle { cycle };
    }
    TpVerification::Valid { width: p.width() }
}

/// Any cycle in `g`, as a vertex sequence in cyclic order: add edges to a
/// union-find until one closes a cycle, then recover the tree path between
/// its endpoints.
fn find_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut taken: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (u, v) in g.edges() {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            // u and v are connected through taken edges; that path plus the
            // edge (u, v) is the cycle
            let mut pred = vec![usize::MAX; n];
            let mut queue = VecDeque::from([u]);
            let mut seen = vec![false; n];
            seen[u] = true;
            while let Some(x) = queue.pop_front() {
                if x == v {
                    break;
                }
                for &w in &taken[x] {
                    if !seen[w] {
                        seen[w] = true;
                        pred[w] = x;
                        queue.push_back(w);
                    }
                }
            }
            let mut cycle = vec![v];
            let mut cur = v;
            while cur != u {
                cur = pred[cur];
                cycle.push(cur);
            }
            return Some(cycle);
        }
        parent[ru] = rv;
        taken[u].push(v);
        taken[v].push(u);
    }
    None
}

/// Splits every bag into the connected components it induces. For chordal
/// graphs the quotient stays a forest and the width never grows; afterwards
/// every bag is connected, and for any independent set `set` of simplicial
/// vertices each bag is either a singleton inside `set` or stays connected
/// after removing `set`.
pub fn refine_connected(g: &Graph, p: &TreePartition) -> Result<TreePartition> {
    if !g.is_chordal() {
        return Err(Error::input(
            "connected-bag refinement requires a chordal graph",
        ));
    }
    match verify_tree_partition(g, p) {
        TpVerification::Valid { .. } => {}
        bad => {
            return Err(Error::input(format!(
                "refinement input is not a tree-partition: {bad:?}"
            )))
        }
    }
    let mut new_bags = Vec::new();
    for bag in p.bags() {
        let (sub, map) = g.induced_subgraph(bag)?;
        for comp in sub.connected_components() {
            new_bags.push(comp.iter().map(|&v| map.to_old[v]).collect::<BTreeSet<_>>());
        }
    }
    let refined = TreePartition::from_bags(g.vertex_count(), new_bags)?;
    match verify_tree_partition(g, &refined) {
        TpVerification::Valid { .. } => Ok(refined),
        bad => Err(Error::contract(format!(
            "refinement broke the forest property on a chordal graph: {bad:?}"
        ))),
    }
}

/// Options for the exact width search.
#[derive(Clone, Debug)]
pub struct TpwOptions {
    /// Hard size limit for a complete search when no budget is given.
    pub max_n: usize,
    /// Deterministic node budget; `None` means unbounded.
    pub node_budget: Option<u64>,
    /// Restrict the search to partitions whose bags induce connected
    /// subgraphs. Only applied when the graph is chordal, where it is
    /// optimality-preserving.
    pub chordal_pruning: bool,
}

impl Default for TpwOptions {
    fn default() -> Self {
        TpwOptions {
            max_n: 12,
            node_budget: None,
            chordal_pruning: false,
        }
    }
}

/// Result of [`exact_tpw`]: either the exact width with a witness, or the
/// deepest certified lower bound when the budget ran out, plus the best
/// valid partition found by cheap fallbacks.
#[derive(Clone, Debug)]
pub enum TpwOutcome {
    Exact {
        width: usize,
        partition: TreePartition,
    },
    LowerBound {
        certified: usize,
        best: TreePartition,
        nodes_used: u64,
    },
}

impl TpwOutcome {
    pub fn exact_width(&self) -> Option<usize> {
        match self {
            TpwOutcome::Exact { width, .. } => Some(*width),
            TpwOutcome::LowerBound { .. } => None,
        }
    }
}

/// Hard vertex limit of the search state (bags and vertices live in `u128`
/// masks).
pub const SEARCH_MAX_N: usize = 128;

/// Minimum tree-partition width of a connected graph by iterative deepening
/// from the classical lower bound `ceil((tw+1)/2)` upward; each level is a
/// canonical width-capped partition search with an incrementally maintained
/// quotient forest.
pub fn exact_tpw(g: &Graph, opts: &TpwOptions) -> Result<TpwOutcome> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::input("empty graph"));
    }
    if !g.is_connected() {
        return Err(Error::input(
            "exact width search requires a connected graph; solve per component",
        ));
    }
    if n > SEARCH_MAX_N {
        return Err(Error::capacity(format!(
            "width search supports at most {SEARCH_MAX_N} vertices, got {n}"
        )));
    }
    if n > opts.max_n && opts.node_budget.is_none() {
        return Err(Error::capacity(format!(
            "graph has {n} vertices, search cap is {}; supply a node budget for a partial lower bound",
            opts.max_n
        )));
    }

    let chordality = g.chordality();
    let tw = match &chordality {
        Chordality::Chordal { peo } => Some(decomp::clique_tree_from_peo(g, peo)?.width()),
        Chordality::NotChordal { .. } if n <= decomp::EXACT_TW_MAX_N => {
            Some(decomp::treewidth_exact(g)?.0)
        }
        Chordality::NotChordal { .. } => None,
    };
    let lower = tw.map(|t| (t + 2) / 2).unwrap_or(1).max(1);
    let pruned = opts.chordal_pruning && chordality.is_chordal();

    let mut ctx = SearchCtx {
        nodes: 0,
        limit: opts.node_budget,
    };
    for w in lower..=n {
        let outcome = if pruned {
            connected_bag_search(g, w, &mut ctx)
        } else {
            rgs_search(g, w, &mut ctx)
        };
        match outcome {
            LevelOutcome::Found(p) => {
                debug_assert!(verify_tree_partition(g, &p).is_valid());
                return Ok(TpwOutcome::Exact {
                    width: w,
                    partition: p,
                });
            }
            LevelOutcome::Refuted => continue,
            LevelOutcome::Budget => {
                return Ok(TpwOutcome::LowerBound {
                    certified: w,
                    best: fallback_partition(g),
                    nodes_used: ctx.nodes,
                });
            }
        }
    }
    Err(Error::contract(
        "width search exhausted all levels without finding the trivial partition",
    ))
}

/// Cheapest valid witnesses: one bag, or breadth-first layers from vertex 0
/// (layer quotient is a path). Returns the narrower of the two.
fn fallback_partition(g: &Graph) -> TreePartition {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    dist[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    let mut max_d = 0;
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                max_d = max_d.max(dist[w]);
                queue.push_back(w);
            }
        }
    }
    let mut layers = vec![BTreeSet::new(); max_d + 1];
    for v in 0..n {
        layers[dist[v]].insert(v);
    }
    let layered = TreePartition::from_bags(n, layers).expect("layers partition the graph");
    if layered.width() < n {
        layered
    } else {
        TreePartition::from_bags(n, vec![(0..n).collect()]).expect("single bag")
    }
}

struct SearchCtx {
    nodes: u64,
    limit: Option<u64>,
}

impl SearchCtx {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        match self.limit {
            Some(l) => self.nodes <= l,
            None => true,
        }
    }
}

enum LevelOutcome {
    Found(TreePartition),
    Refuted,
    Budget,
}

/// Union-find with an undo log (no path compression) for backtracking.
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    log: Vec<(usize, usize)>,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            log: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

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
        self.log.push((small, big));
        true
    }

    fn rollback(&mut self, count: usize) {
        for _ in 0..count {
            let (small, big) = self.log.pop().expect("rollback past log");
            self.parent[small] = small;
            self.size[big] -= self.size[small];
        }
    }
}

/// Quotient-forest bookkeeping shared by both search modes: records which
/// bag pairs already carry a crossing edge and keeps them acyclic.
struct ForestState {
    dsu: RollbackDsu,
    edges: BTreeSet<(usize, usize)>,
}

impl ForestState {
    fn new(max_bags: usize) -> Self {
        ForestState {
            dsu: RollbackDsu::new(max_bags),
            edges: BTreeSet::new(),
        }
    }

    /// Tries to add quotient edges from `bag` to each of `others` (entries
    /// equal to `bag` are skipped); on cycle, undoes everything done here
    /// and reports failure. On success returns the undo token (added pairs,
    /// union count).
    fn connect(
        &mut self,
        bag: usize,
        others: &[usize],
    ) -> std::result::Result<(Vec<(usize, usize)>, usize), ()> {
        let mut added = Vec::new();
        let mut unions = 0;
        for &x in others {
            if x == bag {
                continue;
            }
            let key = (bag.min(x), bag.max(x));
            if self.edges.contains(&key) {
                continue;
            }
            if !self.dsu.union(bag, x) {
                self.undo(&added, unions);
                return Err(());
            }
            unions += 1;
            self.edges.insert(key);
            added.push(key);
        }
        Ok((added, unions))
    }

    fn undo(&mut self, added: &[(usize, usize)], unions: usize) {
        for key in added {
            self.edges.remove(key);
        }
        self.dsu.rollback(unions);
    }
}

fn adjacency_masks(g: &Graph) -> Vec<u128> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u128, |m, &w| m | 1 << w))
        .collect()
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Canonical restricted-growth search: vertex `v` may join any existing bag
/// below the width cap or open the next fresh bag id. The budget counts
/// every attempted placement.
fn rgs_search(g: &Graph, w: usize, ctx: &mut SearchCtx) -> LevelOutcome {
    let n = g.vertex_count();
    let lower: Vec<Vec<usize>> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().copied().filter(|&u| u < v).collect())
        .collect();
    let mut state = RgsState {
        w,
        lower,
        bag_of: vec![usize::MAX; n],
        bag_size: vec![0; n],
        used: 0,
        forest: ForestState::new(n),
        scratch: Vec::new(),
    };
    state.assign(0, n, ctx)
}

struct RgsState {
    w: usize,
    lower: Vec<Vec<usize>>,
    bag_of: Vec<usize>,
    bag_size: Vec<usize>,
    used: usize,
    forest: ForestState,
    scratch: Vec<usize>,
}

impl RgsState {
    fn assign(&mut self, v: usize, n: usize, ctx: &mut SearchCtx) -> LevelOutcome {
        if v == n {
            let p = TreePartition::from_assignment(self.bag_of.clone());
            return LevelOutcome::Found(p);
        }
        // distinct bags holding earlier neighbors of v; shared by all
        // candidate placements of v
        self.scratch.clear();
        self.scratch
            .extend(self.lower[v].iter().map(|&u| self.bag_of[u]));
        self.scratch.sort_unstable();
        self.scratch.dedup();
        let neighbor_bags = std::mem::take(&mut self.scratch);

        let mut outcome = LevelOutcome::Refuted;
        for b in 0..=self.used {
            if !ctx.tick() {
                outcome = LevelOutcome::Budget;
                break;
            }
            if b < self.used && self.bag_size[b] == self.w {
                continue;
            }
            let Ok((added, unions)) = self.forest.connect(b, &neighbor_bags) else {
                continue;
            };
            self.bag_of[v] = b;
            self.bag_size[b] += 1;
            let opened = b == self.used;
            if opened {
                self.used += 1;
            }
            let sub = self.assign(v + 1, n, ctx);
            if opened {
                self.used -= 1;
            }
            self.bag_size[b] -= 1;
            self.bag_of[v] = usize::MAX;
            self.forest.undo(&added, unions);
            match sub {
                LevelOutcome::Refuted => {}
                other => {
                    outcome = other;
                    break;
                }
            }
        }
        self.scratch = neighbor_bags;
        outcome
    }
}

/// Connected-bag search: bags are built as connected vertex sets rooted at
/// the smallest unassigned vertex, enumerated canonically by frontier
/// extension. Complete over partitions into connected bags, which suffices
/// for optimality on chordal graphs.
fn connected_bag_search(g: &Graph, w: usize, ctx: &mut SearchCtx) -> LevelOutcome {
    let n = g.vertex_count();
    let full: u128 = if n == 128 { u128::MAX } else { (1 << n) - 1 };
    let mut state = ConnState {
        w,
        adj: adjacency_masks(g),
        bag_of: vec![usize::MAX; n],
        unassigned: full,
        bag_count: 0,
        forest: ForestState::new(n),
    };
    state.next_bag(ctx)
}

struct ConnState {
    w: usize,
    adj: Vec<u128>,
    bag_of: Vec<usize>,
    unassigned: u128,
    bag_count: usize,
    forest: ForestState,
}

impl ConnState {
    fn next_bag(&mut self, ctx: &mut SearchCtx) -> LevelOutcome {
        if self.unassigned == 0 {
            let p = TreePartition::from_assignment(self.bag_of.clone());
            return LevelOutcome::Found(p);
        }
        let root = self.unassigned.trailing_zeros() as usize;
        let root_bit = 1u128 << root;

        // connected subsets of the unassigned vertices containing the root,
        // each enumerated exactly once by frontier extension
        let mut candidates: Vec<u128> = Vec::new();
        self.enumerate_connected(
            root_bit,
            self.adj[root] & self.unassigned & !root_bit,
            &mut candidates,
        );

        let bag_id = self.bag_count;
        let mut outcome = LevelOutcome::Refuted;
        for bag in candidates {
            if !ctx.tick() {
                outcome = LevelOutcome::Budget;
                break;
            }
            // distinct assigned bags adjacent to this candidate
            let mut hood = 0u128;
            for v in bits(bag) {
                hood |= self.adj[v];
            }
            let mut neighbor_bags: Vec<usize> = bits(hood & !self.unassigned & !bag)
                .map(|u| self.bag_of[u])
                .collect();
            neighbor_bags.sort_unstable();
            neighbor_bags.dedup();
            let Ok((added, unions)) = self.forest.connect(bag_id, &neighbor_bags) else {
                continue;
            };
            for v in bits(bag) {
                self.bag_of[v] = bag_id;
            }
            self.unassigned &= !bag;
            self.bag_count += 1;
            let sub = self.next_bag(ctx);
            self.bag_count -= 1;
            self.unassigned |= bag;
            for v in bits(bag) {
                self.bag_of[v] = usize::MAX;
            }
            self.forest.undo(&added, unions);
            match sub {
                LevelOutcome::Refuted => {}
                other => {
                    outcome = other;
                    break;
                }
            }
        }
        outcome
    }

    /// Frontier-extension enumeration: every connected subset of the
    /// unassigned vertices that contains the fixed root appears exactly
    /// once. `ext` holds the unprocessed frontier; extending by `v` adds the
    /// neighbors of `v` that are neither dominated by the current set nor
    /// already in the frontier.
    fn enumerate_connected(&self, set: u128, ext: u128, out: &mut Vec<u128>) {
        out.push(set);
        if set.count_ones() as usize == self.w {
            return;
        }
        let closed = set | self.closed_neighborhood(set);
        let mut work = ext;
        while work != 0 {
            let vbit = work & work.wrapping_neg();
            work &= work - 1;
            let v = vbit.trailing_zeros() as usize;
            let fresh = self.adj[v] & self.unassigned & !closed & !ext;
            self.enumerate_connected(set | vbit, work | fresh, out);
        }
    }

    fn closed_neighborhood(&self, set: u128) -> u128 {
        let mut hood = 0u128;
        for v in bits(set) {
            hood |= self.adj[v];
        }
        hood
    }
}

/// Writes the tree-partition text format: `s tp <#bags> <width> <n>` and one
/// `b <id> <v...>` line per bag, 1-based; quotient edges are derived, never
/// stored.
pub fn write_tp(p: &TreePartition) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "s tp {} {} {}",
        p.bag_count(),
        p.width(),
        p.vertex_count()
    );
    for (i, bag) in p.bags().iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for &v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        let _ = writeln!(out);
    }
    out
}

pub fn parse_tp(text: &str) -> Result<TreePartition> {
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<BTreeSet<usize>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        match fields[0] {
            "s" => {
                if fields.len() != 5 || fields[1] != "tp" {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected `s tp <#bags> <width> <n>`".into(),
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
                for fld in &fields[2..] {
                    let v: usize = fld.parse().map_err(|_| Error::Parse {
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
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unknown line type `{other}`"),
                });
            }
        }
    }
    let (_, n) = header.ok_or_else(|| Error::input("no s line in tree-partition input"))?;
    TreePartition::from_bags(n, bags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_util::{clique, cycle, path};
    use crate::rng::SplitMix64;

    fn bagset(vs: &[usize]) -> BTreeSet<usize> {
        vs.iter().copied().collect()
    }

    /// Independent oracle: enumerate every set partition, build the quotient
    /// from scratch, keep the minimum width whose quotient is a forest.
    fn naive_tpw(g: &Graph) -> Option<usize> {
        let n = g.vertex_count();
        assert!(n <= 8, "naive oracle is exponential");
        let mut bag_of = vec![0usize; n];
        let mut best: Option<usize> = None;
        enumerate(g, &mut bag_of, 1, &mut best);
        best
    }

    fn enumerate(g: &Graph, bag_of: &mut Vec<usize>, v: usize, best: &mut Option<usize>) {
        let n = g.vertex_count();
        if v == n {
            let bags_n = bag_of.iter().max().unwrap() + 1;
            let mut bags = vec![BTreeSet::new(); bags_n];
            for (u, &b) in bag_of.iter().enumerate() {
                bags[b].insert(u);
            }
            let q = quotient_graph(g, &bags).unwrap();
            // forest iff m = n - #components
            let comps = q.connected_components().len();
            if q.vertex_count() == q.edge_count() + comps {
                let width = bags.iter().map(|b| b.len()).max().unwrap();
                *best = Some(best.map_or(width, |b: usize| b.min(width)));
            }
            return;
        }
        let max_used = *bag_of[..v].iter().max().unwrap();
        for b in 0..=max_used + 1 {
            bag_of[v] = b;
            enumerate(g, bag_of, v + 1, best);
        }
    }

    #[test]
    fn quotient_examples() {
        let c4 = cycle(4);
        let singles: Vec<BTreeSet<usize>> = (0..4).map(|v| bagset(&[v])).collect();
        let q = quotient_graph(&c4, &singles).unwrap();
        assert_eq!(q.edges(), c4.edges());

        let q2 = quotient_graph(&c4, &[bagset(&[0, 1]), bagset(&[2, 3])]).unwrap();
        assert_eq!(q2.vertex_count(), 2);
        assert_eq!(q2.edge_count(), 1);

        let k5 = clique(5);
        let q3 = quotient_graph(&k5, &[bagset(&[0, 1, 2]), bagset(&[3, 4])]).unwrap();
        assert_eq!(q3.edge_count(), 1);

        assert!(quotient_graph(&c4, &[bagset(&[0, 1])]).is_err());
        assert!(quotient_graph(&c4, &[bagset(&[0, 1]), bagset(&[1, 2, 3])]).is_err());
    }

    #[test]
    fn verification_and_cycle_witness() {
        let tree = Graph::new(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let singles = TreePartition::singletons(5);
        assert_eq!(
            verify_tree_partition(&tree, &singles),
            TpVerification::Valid { width: 1 }
        );

        let c4 = cycle(4);
        match verify_tree_partition(&c4, &TreePartition::singletons(4)) {
            TpVerification::QuotientCycle { cycle } => assert_eq!(cycle.len(), 4),
            other => panic!("expected cycle, got {other:?}"),
        }

        let halves = TreePartition::from_bags(4, vec![bagset(&[0, 1]), bagset(&[2, 3])]).unwrap();
        assert_eq!(
            verify_tree_partition(&c4, &halves),
            TpVerification::Valid { width: 2 }
        );
    }

    #[test]
    fn refinement_splits_disconnected_bags() {
        let p3 = path(3);
        let p = TreePartition::from_bags(3, vec![bagset(&[0, 2]), bagset(&[1])]).unwrap();
        let refined = refine_connected(&p3, &p).unwrap();
        assert_eq!(refined.width(), 1);
        assert_eq!(refined.bag_count(), 3);

        // already-connected bags are a fixpoint
        let q = TreePartition::from_bags(3, vec![bagset(&[0, 1]), bagset(&[2])]).unwrap();
        let same = refine_connected(&p3, &q).unwrap();
        assert_eq!(same.bags(), q.bags());

        // non-chordal input is rejected
        let c4 = cycle(4);
        let p = TreePartition::from_bags(4, vec![bagset(&[0, 1]), bagset(&[2, 3])]).unwrap();
        assert!(refine_connected(&c4, &p).is_err());
    }

    #[test]
    fn exact_widths_on_small_families() {
        let opts = TpwOptions::default();
        assert_eq!(exact_tpw(&path(5), &opts).unwrap().exact_width(), Some(1));
        assert_eq!(exact_tpw(&cycle(4), &opts).unwrap().exact_width(), Some(2));
        for n in 2..=7 {
            let got = exact_tpw(&clique(n), &opts).unwrap().exact_width().unwrap();
            assert_eq!(got, n.div_ceil(2), "K_{n}");
            assert_eq!(got, naive_tpw(&clique(n)).unwrap());
        }
        assert_eq!(naive_tpw(&cycle(4)), Some(2));
    }

    #[test]
    fn exact_matches_naive_on_random_connected_graphs() {
        let mut rng = SplitMix64::new(31);
        let opts = TpwOptions::default();
        for trial in 0..40 {
            let n = 3 + rng.gen_range(5); // 3..=7
            let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(v), v)).collect();
            for _ in 0..n {
                let u = rng.gen_range(n);
                let v = rng.gen_range(n);
                if u != v {
                    edges.push((u.min(v), u.max(v)));
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            let fast = exact_tpw(&g, &opts).unwrap().exact_width().unwrap();
            assert_eq!(fast, naive_tpw(&g).unwrap(), "trial {trial}");
        }
    }

    #[test]
    fn pruned_and_unpruned_agree_on_chordal_graphs() {
        let mut rng = SplitMix64::new(77);
        let plain = TpwOptions::default();
        let pruned = TpwOptions {
            chordal_pruning: true,
            ..TpwOptions::default()
        };
        for _ in 0..25 {
            let n = 3 + rng.gen_range(6);
            let mut edges = Vec::new();
            for v in 1..n {
                let lo = rng.gen_range(v);
                for u in lo..v {
                    edges.push((u, v));
                }
            }
            let g = Graph::new(n, &edges).unwrap();
            assert!(g.is_chordal());
            let a = exact_tpw(&g, &plain).unwrap().exact_width().unwrap();
            let b = exact_tpw(&g, &pruned).unwrap().exact_width().unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            exact_tpw(&g, &TpwOptions::default()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn budget_exhaustion_returns_certified_bound() {
        let g = clique(8);
        let opts = TpwOptions {
            node_budget: Some(5),
            ..TpwOptions::default()
        };
        match exact_tpw(&g, &opts).unwrap() {
            TpwOutcome::LowerBound {
                certified, best, ..
            } => {
                // analytic start level for K8 is ceil((7+1)/2) = 4
                assert_eq!(certified, 4);
                assert!(verify_tree_partition(&g, &best).is_valid());
            }
            TpwOutcome::Exact { .. } => panic!("budget of 5 nodes cannot finish K8"),
        }
    }

    #[test]
    fn oversized_graph_without_budget_is_capacity_error() {
        let g = path(40);
        assert!(matches!(
            exact_tpw(&g, &TpwOptions::default()),
            Err(Error::Capacity(_))
        ));
        // with a budget the same call degrades to a certified bound or solves
        let opts = TpwOptions {
            node_budget: Some(100_000),
            ..TpwOptions::default()
        };
        assert!(exact_tpw(&g, &opts).is_ok());
    }

    #[test]
    fn format_roundtrip() {
        let p = TreePartition::from_bags(4, vec![bagset(&[0, 3]), bagset(&[1, 2])]).unwrap();
        let text = write_tp(&p);
        let back = parse_tp(&text).unwrap();
        assert_eq!(back, p);
        assert!(parse_tp("s tp 1 1 2\nb 1 9\n").is_err());
    }
}
