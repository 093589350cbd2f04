//! Recursive construction of tree-partitions of width at most
//! `gamma*(k+1)*(3*gamma*delta - 1)` for graphs with a width-`k` tree
//! decomposition and maximum degree at most `delta`, where `gamma = 1+sqrt(2)`
//! and `alpha = 1+1/sqrt(2)`.
//!
//! The recursion maintains an anchor set `S` that must end up inside a single
//! bag of size at most `alpha*|S| - gamma*(k+1)`. Depending on exact
//! comparisons against irrational thresholds it either stops with one or two
//! bags, peels `S` off as a leaf bag anchored at its neighborhood, or splits
//! the graph with a balanced separator and glues the two anchor bags. All
//! threshold comparisons are exact in `Q(sqrt 2)`; `delta` is the degree
//! bound of the original input graph and is never recomputed on subgraphs.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::decomp::{balanced_separator, verify_tree_decomposition, Side, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{verify_tree_partition, TpVerification, TreePartition};
use crate::quad::QuadNum;

/// The guaranteed width bound `gamma*(k+1)*(3*gamma*delta - 1)`.
pub fn lemma3_width_bound(k: usize, delta: usize) -> QuadNum {
    let gamma = QuadNum::gamma();
    let inner = gamma.mul_int(3 * delta as i128) - QuadNum::from_int(1);
    gamma.mul_int((k + 1) as i128) * inner
}

/// `ceil((gamma+1)*(k+1))`: the smallest legal anchor size, and the vertex
/// count below which everything fits into a single bag.
pub fn entry_anchor_size(k: usize) -> usize {
    threshold_low(k).ceil_int() as usize
}

/// The legal integer anchor window `[ceil((gamma+1)(k+1)), floor(3(gamma+1)(k+1)delta)]`.
pub fn anchor_window(k: usize, delta: usize) -> (usize, usize) {
    (
        threshold_low(k).ceil_int() as usize,
        threshold_high(k, delta).floor_int() as usize,
    )
}

fn threshold_low(k: usize) -> QuadNum {
    // (gamma + 1)(k + 1)
    (QuadNum::gamma() + QuadNum::from_int(1)).mul_int((k + 1) as i128)
}

fn threshold_case3(k: usize) -> QuadNum {
    threshold_low(k).mul_int(3)
}

fn threshold_high(k: usize, delta: usize) -> QuadNum {
    threshold_case3(k).mul_int(delta as i128)
}

/// One recursion node of the construction, emitted when tracing is on.
#[derive(Clone, Debug, Serialize)]
pub struct TraceEvent {
    pub depth: usize,
    pub case: u8,
    pub vertices: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchor: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchor_bag: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separator: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub private_left: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub private_right: Option<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct ConstructStats {
    pub nodes: usize,
    pub case1: usize,
    pub case2: usize,
    pub case3: usize,
    pub case4: usize,
    pub max_depth: usize,
}

#[derive(Clone, Debug)]
pub struct ConstructReport {
    pub partition: TreePartition,
    pub stats: ConstructStats,
    pub trace: Vec<TraceEvent>,
}

/// Builds a tree-partition of `g` of width at most
/// [`lemma3_width_bound`]`(k, delta)` where `k` is the width of the supplied
/// decomposition. Disconnected inputs are handled per component; the final
/// pattern is the disjoint union of the per-component forests.
pub fn construct_tree_partition(
    g: &Graph,
    td: &TreeDecomposition,
    delta: usize,
) -> Result<TreePartition> {
    construct_with_report(g, td, delta, false).map(|r| r.partition)
}

/// Same as [`construct_tree_partition`] but also returns per-case statistics
/// and, when requested, a full recursion trace.
pub fn construct_with_report(
    g: &Graph,
    td: &TreeDecomposition,
    delta: usize,
    record_trace: bool,
) -> Result<ConstructReport> {
    let max_deg = g.max_degree();
    if max_deg == 0 {
        return Err(Error::input(
            "the construction requires maximum degree at least 1 (graph has no edges)",
        ));
    }
    if delta < max_deg {
        return Err(Error::input(format!(
            "degree bound {delta} is below the actual maximum degree {max_deg}"
        )));
    }
    if let Err(v) = verify_tree_decomposition(g, td) {
        return Err(Error::input(format!("invalid tree decomposition: {v}")));
    }
    let k = td.width();
    if k == 0 {
        return Err(Error::input(
            "tree decomposition has width 0 but the graph has edges",
        ));
    }

    let mut ctx = Ctx::new(k, delta, record_trace);

    let mut all_bags: Vec<BTreeSet<usize>> = Vec::new();
    for comp in g.connected_components() {
        let comp_set: BTreeSet<usize> = comp.iter().copied().collect();
        let (sub, map) = g.induced_subgraph(&comp_set).expect("component in range");
        let sub_td = reindex_td(&td.restrict_to(&comp_set), &map.to_new);
        let anchor = if QuadNum::from_int(sub.vertex_count() as i128) < ctx.thr_low {
            None
        } else {
            Some((0..ctx.entry_size).collect::<BTreeSet<usize>>())
        };
        let (bags, _) = ctx.anchored(&sub, &map.to_old, &sub_td, anchor, 0)?;
        all_bags.extend(bags);
    }

    let partition = TreePartition::from_bags(g.vertex_count(), all_bags)
        .map_err(|e| Error::contract(format!("construction produced a non-partition: {e}")))?;
    match verify_tree_partition(g, &partition) {
        TpVerification::Valid { .. } => {}
        bad => {
            return Err(Error::contract(format!(
                "constructed pattern is not a forest: {bad:?}"
            )))
        }
    }
    for bag in partition.bags() {
        ensure(
            QuadNum::from_int(bag.len() as i128) <= ctx.width_bound,
            "bag exceeds the guaranteed width bound",
        )?;
    }

    Ok(ConstructReport {
        partition,
        stats: ctx.stats,
        trace: ctx.trace,
    })
}

/// Tree-partition with a designated anchor bag returned by
/// [`anchored_construct`].
#[derive(Clone, Debug)]
pub struct AnchoredPartition {
    pub partition: TreePartition,
    /// Index of the bag that contains the whole anchor set; its size is at
    /// most `alpha*|anchor| - gamma*(k+1)`.
    pub anchor_bag: usize,
}

/// Entry point with a caller-chosen anchor set: produces a tree-partition of
/// width at most [`lemma3_width_bound`]`(k, delta)` in which `anchor` lies
/// inside a single bag of at most `alpha*|anchor| - gamma*(k+1)` vertices.
/// The anchor size must lie in [`anchor_window`]`(k, delta)`; anything else
/// is a caller bug and reported as a contract error.
pub fn anchored_construct(
    g: &Graph,
    td: &TreeDecomposition,
    delta: usize,
    anchor: &BTreeSet<usize>,
) -> Result<AnchoredPartition> {
    let max_deg = g.max_degree();
    if max_deg == 0 || delta < max_deg {
        return Err(Error::input(format!(
            "degree bound {delta} invalid for maximum degree {max_deg}"
        )));
    }
    if let Err(v) = verify_tree_decomposition(g, td) {
        return Err(Error::input(format!("invalid tree decomposition: {v}")));
    }
    let k = td.width();
    if k == 0 {
        return Err(Error::input(
            "tree decomposition has width 0 but the graph has edges",
        ));
    }
    if let Some(&bad) = anchor.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::input(format!("anchor vertex {bad} out of range")));
    }
    let mut ctx = Ctx::new(k, delta, false);
    let ids: Vec<usize> = g.vertices().collect();
    let (bags, anchor_bag) = ctx.anchored(g, &ids, td, Some(anchor.clone()), 0)?;
    let partition = TreePartition::from_bags(g.vertex_count(), bags)
        .map_err(|e| Error::contract(format!("construction produced a non-partition: {e}")))?;
    match verify_tree_partition(g, &partition) {
        TpVerification::Valid { .. } => {}
        bad => {
            return Err(Error::contract(format!(
                "constructed pattern is not a forest: {bad:?}"
            )))
        }
    }
    Ok(AnchoredPartition {
        partition,
        anchor_bag,
    })
}

fn ensure(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::contract(msg.to_string()))
    }
}

fn reindex_td(td: &TreeDecomposition, to_new: &BTreeMap<usize, usize>) -> TreeDecomposition {
    TreeDecomposition::new(
        td.bags
            .iter()
            .map(|bag| bag.iter().map(|v| to_new[v]).collect())
            .collect(),
        td.tree_edges.clone(),
    )
}

struct Ctx {
    thr_low: QuadNum,
    thr_case3: QuadNum,
    thr_high: QuadNum,
    width_bound: QuadNum,
    entry_size: usize,
    alpha: QuadNum,
    gamma_k1: QuadNum,
    stats: ConstructStats,
    trace: Vec<TraceEvent>,
    record_trace: bool,
}

impl Ctx {
    fn new(k: usize, delta: usize, record_trace: bool) -> Self {
        Ctx {
            thr_low: threshold_low(k),
            thr_case3: threshold_case3(k),
            thr_high: threshold_high(k, delta),
            width_bound: lemma3_width_bound(k, delta),
            entry_size: entry_anchor_size(k),
            alpha: QuadNum::alpha(),
            gamma_k1: QuadNum::gamma().mul_int((k + 1) as i128),
            stats: ConstructStats::default(),
            trace: Vec::new(),
            record_trace,
        }
    }

    /// Upper bound `alpha*|s| - gamma*(k+1)` on the anchor bag size.
    fn anchor_cap(&self, s_len: usize) -> QuadNum {
        self.alpha.mul_int(s_len as i128) - self.gamma_k1
    }

    fn emit(&mut self, event: TraceEvent) {
        if self.record_trace {
            self.trace.push(event);
        }
    }

    /// Core recursion. `g` is the current (sub)graph in local indices, `ids`
    /// maps local to original indices, `td` is a valid decomposition of `g`
    /// in local indices, `anchor` is the local anchor set (present whenever
    /// the graph is at least the single-bag threshold). Returns bags in
    /// original indices plus the index of the anchor bag.
    fn anchored(
        &mut self,
        g: &Graph,
        ids: &[usize],
        td: &TreeDecomposition,
        anchor: Option<BTreeSet<usize>>,
        depth: usize,
    ) -> Result<(Vec<BTreeSet<usize>>, usize)> {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let n = g.vertex_count();
        let n_quad = QuadNum::from_int(n as i128);

        // Case 1: everything fits in one bag.
        if n_quad < self.thr_low {
            ensure(
                anchor.is_none(),
                "anchor supplied below the single-bag threshold",
            )?;
            self.stats.case1 += 1;
            self.emit(TraceEvent {
                depth,
                case: 1,
                vertices: n,
                anchor: None,
                anchor_bag: Some(n),
                separator: None,
                private_left: None,
                private_right: None,
            });
            let bag: BTreeSet<usize> = ids.iter().copied().collect();
            return Ok((vec![bag], 0));
        }

        let s = anchor.ok_or_else(|| {
            Error::contract("anchor must be supplied at or above the single-bag threshold")
        })?;
        let s_quad = QuadNum::from_int(s.len() as i128);
        ensure(
            self.thr_low <= s_quad && s_quad <= self.thr_high,
            "anchor outside the legal size window",
        )?;

        // Case 2: the rest fits beside the anchor bag.
        let rest: BTreeSet<usize> = (0..n).filter(|v| !s.contains(v)).collect();
        if QuadNum::from_int(rest.len() as i128) < self.thr_low {
            self.stats.case2 += 1;
            let cap = self.anchor_cap(s.len());
            ensure(
                QuadNum::from_int(s.len() as i128) <= cap,
                "anchor bag exceeds its size cap in the two-bag case",
            )?;
            let s_global: BTreeSet<usize> = s.iter().map(|&v| ids[v]).collect();
            let mut bags = vec![s_global];
            if !rest.is_empty() {
                bags.push(rest.iter().map(|&v| ids[v]).collect());
            }
            self.emit(TraceEvent {
                depth,
                case: 2,
                vertices: n,
                anchor: Some(s.len()),
                anchor_bag: Some(s.len()),
                separator: None,
                private_left: None,
                private_right: None,
            });
            return Ok((bags, 0));
        }

        ensure(
            s_quad != self.thr_case3,
            "integer anchor size cannot equal an irrational threshold",
        )?;
        if s_quad < self.thr_case3 {
            self.case3(g, ids, td, &s, depth)
        } else {
            self.case4(g, ids, td, &s, depth)
        }
    }

    /// Peel the anchor off as a leaf bag: recurse on `g - s` anchored at the
    /// external neighborhood of `s`, padded up to the minimum legal size.
    fn case3(
        &mut self,
        g: &Graph,
        ids: &[usize],
        td: &TreeDecomposition,
        s: &BTreeSet<usize>,
        depth: usize,
    ) -> Result<(Vec<BTreeSet<usize>>, usize)> {
        self.stats.case3 += 1;
        let n = g.vertex_count();
        let mut hood: BTreeSet<usize> = s
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().copied())
            .filter(|v| !s.contains(v))
            .collect();
        for v in 0..n {
            if hood.len() >= self.entry_size {
                break;
            }
            if !s.contains(&v) {
                hood.insert(v);
            }
        }
        ensure(
            hood.len() >= self.entry_size,
            "padding pool too small for the anchor neighborhood",
        )?;
        ensure(
            QuadNum::from_int(hood.len() as i128) <= self.thr_high,
            "anchor neighborhood exceeds the legal window",
        )?;

        let rest: BTreeSet<usize> = (0..n).filter(|v| !s.contains(v)).collect();
        ensure(rest.len() < n, "anchor removal must shrink the graph")?;
        let (sub, map) = g.induced_subgraph(&rest).expect("rest in range");
        let sub_ids: Vec<usize> = map.to_old.iter().map(|&v| ids[v]).collect();
        let sub_td = reindex_td(&td.restrict_to(&rest), &map.to_new);
        let sub_anchor: BTreeSet<usize> = hood.iter().map(|v| map.to_new[v]).collect();

        let (mut bags, _) = self.anchored(&sub, &sub_ids, &sub_td, Some(sub_anchor), depth + 1)?;

        let cap = self.anchor_cap(s.len());
        ensure(
            QuadNum::from_int(s.len() as i128) <= cap,
            "anchor bag exceeds its size cap in the leaf case",
        )?;
        ensure(
            QuadNum::from_int(s.len() as i128) <= self.width_bound,
            "leaf bag exceeds the width bound",
        )?;
        let s_global: BTreeSet<usize> = s.iter().map(|&v| ids[v]).collect();
        bags.push(s_global);
        let idx = bags.len() - 1;
        self.emit(TraceEvent {
            depth,
            case: 3,
            vertices: n,
            anchor: Some(s.len()),
            anchor_bag: Some(s.len()),
            separator: None,
            private_left: None,
            private_right: None,
        });
        Ok((bags, idx))
    }

    /// Split along a balanced separator, recurse on the two edge-disjoint
    /// sides with anchors `(s ∩ v_i) ∪ y`, and unite the two anchor bags.
    fn case4(
        &mut self,
        g: &Graph,
        ids: &[usize],
        td: &TreeDecomposition,
        s: &BTreeSet<usize>,
        depth: usize,
    ) -> Result<(Vec<BTreeSet<usize>>, usize)> {
        self.stats.case4 += 1;
        let n = g.vertex_count();
        let sep = balanced_separator(g, td, s)?;

        let p1 = s
            .iter()
            .filter(|v| sep.v1.contains(v) && !sep.y.contains(v))
            .count();
        let p2 = s
            .iter()
            .filter(|v| sep.v2.contains(v) && !sep.y.contains(v))
            .count();
        ensure(
            p1 > 0 && p2 > 0,
            "split sides must both own private anchor vertices",
        )?;
        ensure(
            sep.v1.len() < n && sep.v2.len() < n,
            "split sides must be strictly smaller",
        )?;

        let mut side_results = Vec::with_capacity(2);
        for (side, verts) in [(Side::One, &sep.v1), (Side::Two, &sep.v2)] {
            let order: Vec<usize> = verts.iter().copied().collect();
            let to_new: BTreeMap<usize, usize> =
                order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let edges: Vec<(usize, usize)> = sep
                .side_edges(side)
                .into_iter()
                .map(|(u, v)| (to_new[&u], to_new[&v]))
                .collect();
            let side_graph = Graph::new(order.len(), &edges)
                .map_err(|e| Error::contract(format!("side graph construction failed: {e}")))?;
            let side_ids: Vec<usize> = order.iter().map(|&v| ids[v]).collect();
            let side_td = reindex_td(&td.restrict_to(verts), &to_new);
            let side_anchor: BTreeSet<usize> = s
                .intersection(verts)
                .chain(sep.y.iter())
                .map(|v| to_new[v])
                .collect();
            let anchor_len = side_anchor.len();
            let aq = QuadNum::from_int(anchor_len as i128);
            ensure(
                self.thr_low <= aq && aq < self.thr_high,
                "side anchor outside the legal window",
            )?;
            let (bags, anchor_idx) = self.anchored(
                &side_graph,
                &side_ids,
                &side_td,
                Some(side_anchor),
                depth + 1,
            )?;
            // child anchor bag must respect its own cap
            let cap = self.anchor_cap(anchor_len);
            ensure(
                QuadNum::from_int(bags[anchor_idx].len() as i128) <= cap,
                "child anchor bag exceeds its size cap",
            )?;
            side_results.push((bags, anchor_idx));
        }

        let (bags2, a2) = side_results.pop().expect("two sides");
        let (bags1, a1) = side_results.pop().expect("two sides");
        let y_global: BTreeSet<usize> = sep.y.iter().map(|&v| ids[v]).collect();
        let t1 = &bags1[a1];
        let t2 = &bags2[a2];
        let overlap: BTreeSet<usize> = t1.intersection(t2).copied().collect();
        ensure(
            overlap == y_global,
            "anchor bags must overlap exactly in the separator",
        )?;
        let merged: BTreeSet<usize> = t1.union(t2).copied().collect();
        let cap = self.anchor_cap(s.len());
        ensure(
            QuadNum::from_int(merged.len() as i128) <= cap,
            "united anchor bag exceeds its size cap",
        )?;

        let mut bags: Vec<BTreeSet<usize>> = Vec::with_capacity(bags1.len() + bags2.len() - 1);
        for (i, bag) in bags1.into_iter().enumerate() {
            if i != a1 {
                bags.push(bag);
            }
        }
        for (i, bag) in bags2.into_iter().enumerate() {
            if i != a2 {
                bags.push(bag);
            }
        }
        bags.push(merged);
        let idx = bags.len() - 1;
        self.emit(TraceEvent {
            depth,
            case: 4,
            vertices: n,
            anchor: Some(s.len()),
            anchor_bag: Some(bags[idx].len()),
            separator: Some(sep.y.len()),
            private_left: Some(p1),
            private_right: Some(p2),
        });
        Ok((bags, idx))
    }
}
