//! Instance families with analytic metadata: the column-clique strip graph,
//! the two lower-bound constructions (gadget-subdivided strips and the
//! fan-with-simplicial-covers family for tree-width 2), plus everyday
//! families (paths, cycles, cliques, wheels, random k-trees). Generators are
//! deterministic given parameters and seed, and every claim they attach is
//! checkable by the oracles in this crate.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::quad::Rat;
use crate::rng::SplitMix64;

/// Claimed lower bound on tree-partition-width; `strict` distinguishes
/// `tpw > value` from `tpw >= value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TpwLowerClaim {
    pub value: Rat,
    pub strict: bool,
}

impl TpwLowerClaim {
    /// Smallest integer width consistent with the claim.
    pub fn integer_bound(&self) -> i128 {
        if self.strict {
            self.value.floor() + 1
        } else {
            self.value.ceil()
        }
    }
}

/// Generator provenance and analytic facts attached to an instance.
#[derive(Clone, Debug, Default)]
pub struct InstanceMeta {
    pub family: String,
    pub params: BTreeMap<String, i64>,
    pub chordal: Option<bool>,
    pub claimed_tw: Option<usize>,
    pub claimed_maxdeg_bound: Option<usize>,
    pub claimed_tpw_lower: Option<TpwLowerClaim>,
    pub claimed_tpw_upper: Option<Rat>,
    pub vertex_labels: Vec<String>,
}

impl InstanceMeta {
    fn new(family: &str) -> Self {
        InstanceMeta {
            family: family.to_string(),
            ..InstanceMeta::default()
        }
    }

    pub fn param(&self, key: &str) -> Option<i64> {
        self.params.get(key).copied()
    }
}

/// Strip graph on `[n] x [k]`: vertices `(x, y)` with `(x1,y1) ~ (x2,y2)`
/// exactly when `|x1 - x2| <= 1`. Every column induces a k-clique, every row
/// an n-path, consecutive column pairs are maximum cliques. Index layout is
/// column-major: `(x, y) -> (x-1)*k + (y-1)`.
pub fn gen_grid_h(n: usize, k: usize) -> Result<(Graph, InstanceMeta)> {
    if n < 1 || k < 1 {
        return Err(Error::input("strip graph requires n >= 1 and k >= 1"));
    }
    let idx = |x: usize, y: usize| (x - 1) * k + (y - 1);
    let mut edges = Vec::new();
    for x in 1..=n {
        for y1 in 1..=k {
            // same column
            for y2 in y1 + 1..=k {
                edges.push((idx(x, y1), idx(x, y2)));
            }
            // next column, all pairs
            if x < n {
                for y2 in 1..=k {
                    edges.push((idx(x, y1), idx(x + 1, y2)));
                }
            }
        }
    }
    let g = Graph::new(n * k, &edges)?;
    let mut meta = InstanceMeta::new("grid_h");
    meta.params.insert("n".into(), n as i64);
    meta.params.insert("k".into(), k as i64);
    meta.chordal = Some(true);
    meta.claimed_tw = Some(if n >= 2 { 2 * k - 1 } else { k - 1 });
    meta.claimed_maxdeg_bound = Some(match n {
        1 => k - 1,
        2 => 2 * k - 1,
        _ => 3 * k - 1,
    });
    meta.vertex_labels = (1..=n)
        .flat_map(|x| (1..=k).map(move |y| format!("({x},{y})")))
        .collect();
    Ok((g, meta))
}

/// Number of cover vertices attached to each horizontal strip edge.
pub fn gadget_size(k: usize, delta: usize) -> usize {
    (delta - 3 * k).div_ceil(2)
}

/// Lower-bound family: the strip graph plus `ceil((delta-3k)/2)` simplicial
/// cover vertices on every horizontal edge. Chordal, tree-width `2k-1`,
/// maximum degree at most `delta`, and tree-partition-width strictly above
/// `k*(delta-3k)/4`. Gadget vertices are appended after all strip vertices,
/// grouped per horizontal edge in `(x, y, l)` lexicographic order.
pub fn gen_lower_general(k: usize, delta: usize, n: usize) -> Result<(Graph, InstanceMeta)> {
    if k < 2 || delta < 3 * k + 1 || n <= 2 || 2 * n <= k * (delta - 3 * k) {
        return Err(Error::input(format!(
            "lower_general requires k >= 2, delta >= 3k+1, and n > max(k*(delta-3k)/2, 2); got k={k}, delta={delta}, n={n}"
        )));
    }
    let (h, h_meta) = gen_grid_h(n, k)?;
    let c = gadget_size(k, delta);
    let idx = |x: usize, y: usize| (x - 1) * k + (y - 1);
    let base = n * k;
    let mut edges: Vec<(usize, usize)> = h.edges();
    let mut labels = h_meta.vertex_labels.clone();
    let mut gadget = base;
    for x in 1..=n - 1 {
        for y in 1..=k {
            for l in 1..=c {
                edges.push((idx(x, y), gadget));
                edges.push((idx(x + 1, y), gadget));
                labels.push(format!("g({x},{y},{l})"));
                gadget += 1;
            }
        }
    }
    let g = Graph::new(gadget, &edges)?;
    let mut meta = InstanceMeta::new("lower_general");
    meta.params.insert("k".into(), k as i64);
    meta.params.insert("delta".into(), delta as i64);
    meta.params.insert("n".into(), n as i64);
    meta.chordal = Some(true);
    meta.claimed_tw = Some(2 * k - 1);
    meta.claimed_maxdeg_bound = Some(delta);
    meta.claimed_tpw_lower = Some(TpwLowerClaim {
        value: Rat::new((k * (delta - 3 * k)) as i128, 4),
        strict: true,
    });
    meta.vertex_labels = labels;
    Ok((g, meta))
}

/// Tree-width-2 lower-bound family for odd `delta`: a root adjacent to a
/// path `v_1 .. v_delta`, with `(delta-3)/2` simplicial cover vertices on
/// every path edge. Chordal, no 4-clique, maximum degree `delta`; for
/// `delta >= 11` the tree-partition-width is at least `2(delta-1)/3` and the
/// claim is attached, below that the construction is still produced but the
/// claim is withheld. Index layout: root 0, then `v_i = i`, then `w_(i,l)`
/// in `(i, l)` lexicographic order.
pub fn gen_lower_tw2(delta: usize) -> Result<(Graph, InstanceMeta)> {
    if delta.is_multiple_of(2) {
        return Err(Error::input(format!(
            "lower_tw2 requires odd delta, got {delta}"
        )));
    }
    if delta < 5 {
        return Err(Error::input(format!(
            "lower_tw2 requires delta >= 5, got {delta}"
        )));
    }
    let per_edge = (delta - 3) / 2;
    let n = 1 + delta + (delta - 1) * per_edge;
    let v = |i: usize| i; // v_i, 1-based
    let w = |i: usize, l: usize| 1 + delta + (i - 1) * per_edge + (l - 1);
    let mut edges = Vec::new();
    let mut labels = vec!["r".to_string()];
    for i in 1..=delta {
        edges.push((0, v(i)));
        labels.push(format!("v{i}"));
    }
    for i in 1..delta {
        edges.push((v(i), v(i + 1)));
    }
    for i in 1..delta {
        for l in 1..=per_edge {
            edges.push((v(i), w(i, l)));
            edges.push((v(i + 1), w(i, l)));
        }
    }
    for i in 1..delta {
        for l in 1..=per_edge {
            labels.push(format!("w({i},{l})"));
        }
    }
    let g = Graph::new(n, &edges)?;
    let mut meta = InstanceMeta::new("lower_tw2");
    meta.params.insert("delta".into(), delta as i64);
    meta.chordal = Some(true);
    meta.claimed_tw = Some(2);
    meta.claimed_maxdeg_bound = Some(delta);
    if delta >= 11 {
        meta.claimed_tpw_lower = Some(TpwLowerClaim {
            value: Rat::new(2 * (delta as i128 - 1), 3),
            strict: false,
        });
    }
    meta.vertex_labels = labels;
    Ok((g, meta))
}

pub fn gen_path(n: usize) -> Result<(Graph, InstanceMeta)> {
    if n < 1 {
        return Err(Error::input("path requires n >= 1"));
    }
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    let g = Graph::new(n, &edges)?;
    let mut meta = InstanceMeta::new("path");
    meta.params.insert("n".into(), n as i64);
    meta.chordal = Some(true);
    meta.claimed_tw = Some(if n >= 2 { 1 } else { 0 });
    meta.claimed_maxdeg_bound = Some(if n >= 3 { 2 } else { n - 1 });
    meta.claimed_tpw_lower = Some(TpwLowerClaim {
        value: Rat::ONE,
        strict: false,
    });
    meta.claimed_tpw_upper = Some(Rat::ONE);
    meta.vertex_labels = (0..n).map(|v| v.to_string()).collect();
    Ok((g, meta))
}

pub fn gen_cycle(n: usize) -> Result<(Graph, InstanceMeta)> {
    if n < 3 {
        return Err(Error::input("cycle requires n >= 3"));
    }
    let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 1, 0));
    let g = Graph::new(n, &edges)?;
    let mut meta = InstanceMeta::new("cycle");
    meta.params.insert("n".into(), n as i64);
    meta.chordal = Some(n == 3);
    meta.claimed_tw = Some(2);
    meta.claimed_maxdeg_bound = Some(2);
    meta.claimed_tpw_lower = Some(TpwLowerClaim {
        value: Rat::from_int(2),
        strict: false,
    });
    meta.claimed_tpw_upper = Some(Rat::from_int(2));
    meta.vertex_labels = (0..n).map(|v| v.to_string()).collect();
    Ok((g, meta))
}

pub fn gen_clique(n: usize) -> Result<(Graph, InstanceMeta)> {
    if n < 1 {
        return Err(Error::input("clique requires n >= 1"));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    let g = Graph::new(n, &edges)?;
    let mut meta = InstanceMeta::new("clique");
    meta.params.insert("n".into(), n as i64);
    meta.chordal = Some(true);
    meta.claimed_tw = Some(n - 1);
    meta.claimed_maxdeg_bound = Some(n - 1);
    // a quotient of a complete graph is complete, so a forest pattern has at
    // most two bags: the width is exactly ceil(n/2)
    meta.claimed_tpw_lower = Some(TpwLowerClaim {
        value: Rat::from_int(n.div_ceil(2) as i128),
        strict: false,
    });
    meta.claimed_tpw_upper = Some(Rat::from_int(n.div_ceil(2) as i128));
    meta.vertex_labels = (0..n).map(|v| v.to_string()).collect();
    Ok((g, meta))
}

/// Wheel with `rim` outer vertices: hub 0 adjacent to everything, rim cycle
/// `1..=rim`.
pub fn gen_wheel(rim: usize) -> Result<(Graph, InstanceMeta)> {
    if rim < 3 {
        return Err(Error::input("wheel requires rim >= 3"));
    }
    let mut edges: Vec<(usize, usize)> = (1..=rim).map(|v| (0, v)).collect();
    for v in 1..rim {
        edges.push((v, v + 1));
    }
    edges.push((rim, 1));
    let g = Graph::new(rim + 1, &edges)?;
    let mut meta = InstanceMeta::new("wheel");
    meta.params.insert("n".into(), rim as i64);
    meta.chordal = Some(rim == 3);
    meta.claimed_tw = Some(3);
    meta.claimed_maxdeg_bound = Some(rim);
    meta.vertex_labels = std::iter::once("hub".to_string())
        .chain((1..=rim).map(|v| format!("r{v}")))
        .collect();
    Ok((g, meta))
}

/// Random k-tree by seeded leaf attachment: start from `K_{k+1}`, then each
/// new vertex picks a uniformly random existing k-clique and joins it.
pub fn gen_random_ktree(n: usize, k: usize, seed: u64) -> Result<(Graph, InstanceMeta)> {
    if k < 1 || n < k + 1 {
        return Err(Error::input(format!(
            "random_ktree requires k >= 1 and n >= k+1; got n={n}, k={k}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for u in 0..=k {
        for v in u + 1..=k {
            edges.push((u, v));
        }
    }
    // all k-subsets of the base clique
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for skip in 0..=k {
        cliques.push((0..=k).filter(|&v| v != skip).collect());
    }
    for v in k + 1..n {
        let pick = rng.gen_range(cliques.len());
        let base = cliques[pick].clone();
        for &u in &base {
            edges.push((u, v));
        }
        for skip in 0..k {
            let mut next = base.clone();
            next[skip] = v;
            next.sort_unstable();
            cliques.push(next);
        }
    }
    let g = Graph::new(n, &edges)?;
    let mut meta = InstanceMeta::new("random_ktree");
    meta.params.insert("n".into(), n as i64);
    meta.params.insert("k".into(), k as i64);
    meta.params.insert("seed".into(), seed as i64);
    meta.chordal = Some(true);
    meta.claimed_tw = Some(k);
    meta.claimed_maxdeg_bound = None;
    meta.vertex_labels = (0..n).map(|v| v.to_string()).collect();
    Ok((g, meta))
}

/// Dispatch by family name with a parameter map; used by the CLI and the
/// experiment runner.
pub fn gen_by_name(
    family: &str,
    params: &BTreeMap<String, i64>,
    seed: u64,
) -> Result<(Graph, InstanceMeta)> {
    let need = |key: &str| -> Result<usize> {
        let raw = params
            .get(key)
            .copied()
            .ok_or_else(|| Error::input(format!("family `{family}` needs parameter `{key}`")))?;
        usize::try_from(raw)
            .map_err(|_| Error::input(format!("parameter `{key}` must be non-negative")))
    };
    match family {
        "path" => gen_path(need("n")?),
        "cycle" => gen_cycle(need("n")?),
        "clique" => gen_clique(need("n")?),
        "wheel" => gen_wheel(need("n")?),
        "random_ktree" => gen_random_ktree(need("n")?, need("k")?, seed),
        "grid_h" => gen_grid_h(need("n")?, need("k")?),
        "lower_general" => gen_lower_general(need("k")?, need("delta")?, need("n")?),
        "lower_tw2" => gen_lower_tw2(need("delta")?),
        other => Err(Error::input(format!("unknown family `{other}`"))),
    }
}

/// Serializes an instance to graph text with `c meta`/`c label` comment
/// lines carrying the metadata.
pub fn write_instance(g: &Graph, meta: &InstanceMeta) -> String {
    let mut comments = vec![format!("meta family={}", meta.family)];
    for (key, value) in &meta.params {
        comments.push(format!("meta param {key}={value}"));
    }
    if let Some(c) = meta.chordal {
        comments.push(format!("meta chordal={c}"));
    }
    if let Some(tw) = meta.claimed_tw {
        comments.push(format!("meta tw={tw}"));
    }
    if let Some(d) = meta.claimed_maxdeg_bound {
        comments.push(format!("meta maxdeg_bound={d}"));
    }
    if let Some(lb) = meta.claimed_tpw_lower {
        comments.push(format!("meta tpw_lower={} strict={}", lb.value, lb.strict));
    }
    if let Some(ub) = meta.claimed_tpw_upper {
        comments.push(format!("meta tpw_upper={ub}"));
    }
    for (i, label) in meta.vertex_labels.iter().enumerate() {
        comments.push(format!("label {} {label}", i + 1));
    }
    crate::graph::write_graph(g, &comments)
}

/// Parses an instance file; missing metadata fields stay `None` and labels
/// default to vertex indices.
pub fn parse_instance(text: &str) -> Result<(Graph, InstanceMeta)> {
    let (g, comments) = crate::graph::parse_graph(text)?;
    let mut meta = InstanceMeta::new("unknown");
    let mut labels: BTreeMap<usize, String> = BTreeMap::new();
    for line in &comments {
        let fields: Vec<&str> = line.split_ascii_whitespace().collect();
        match fields.first() {
            Some(&"meta") => {
                for field in &fields[1..] {
                    if field == &"param" {
                        continue;
                    }
                    let Some((key, value)) = field.split_once('=') else {
                        continue;
                    };
                    match key {
                        "family" => meta.family = value.to_string(),
                        "chordal" => meta.chordal = value.parse().ok(),
                        "tw" => meta.claimed_tw = value.parse().ok(),
                        "maxdeg_bound" => meta.claimed_maxdeg_bound = value.parse().ok(),
                        "tpw_lower" => {
                            if let Some(v) = parse_rat(value) {
                                meta.claimed_tpw_lower = Some(TpwLowerClaim {
                                    value: v,
                                    strict: false,
                                });
                            }
                        }
                        "strict" => {
                            if let Some(lb) = meta.claimed_tpw_lower.as_mut() {
                                lb.strict = value == "true";
                            }
                        }
                        "tpw_upper" => meta.claimed_tpw_upper = parse_rat(value),
                        _ => {
                            if fields.get(1) == Some(&"param") {
                                if let Ok(v) = value.parse() {
                                    meta.params.insert(key.to_string(), v);
                                }
                            }
                        }
                    }
                }
            }
            Some(&"label") => {
                if let Some(idx) = fields.get(1).and_then(|f| f.parse::<usize>().ok()) {
                    let mut parts = line.splitn(3, char::is_whitespace);
                    parts.next();
                    parts.next();
                    if let (Some(rest), true) = (parts.next(), idx >= 1) {
                        labels.insert(idx - 1, rest.trim().to_string());
                    }
                }
            }
            _ => {}
        }
    }
    meta.vertex_labels = (0..g.vertex_count())
        .map(|v| labels.get(&v).cloned().unwrap_or_else(|| v.to_string()))
        .collect();
    Ok((g, meta))
}

fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((num, den)) => {
            let d: i128 = den.parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rat::new(num.parse().ok()?, d))
        }
        None => Some(Rat::from_int(s.parse().ok()?)),
    }
}

/// True when the graph has no 4-clique; checked per edge over common
/// neighborhoods.
pub fn has_no_k4(g: &Graph) -> bool {
    for (u, v) in g.edges() {
        let common: Vec<usize> = g
            .neighbors(u)
            .intersection(g.neighbors(v))
            .copied()
            .collect();
        for (i, &a) in common.iter().enumerate() {
            for &b in &common[i + 1..] {
                if g.has_edge(a, b) {
                    return false;
                }
            }
        }
    }
    true
}
