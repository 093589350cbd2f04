//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Expected values come from independent oracles computed in this file
//! (exhaustive partition enumeration, permutation tree-width, floating
//! references) or from closed forms verified against them.

use std::collections::BTreeSet;

use tpw::bounds::{AuditBudget, ExactStatus};
use tpw::construct::{anchor_window, construct_with_report, entry_anchor_size, lemma3_width_bound};
use tpw::decomp::{
    balanced_separator, clique_tree_from_peo, treewidth_exact, treewidth_heuristic,
    verify_tree_decomposition, Side, TreeDecomposition,
};
use tpw::experiment::{builtin_suite, run_experiment};
use tpw::generators::{gen_lower_general, gen_lower_tw2, gen_random_ktree, has_no_k4};
use tpw::graph::{Chordality, Graph};
use tpw::partition::{
    exact_tpw, quotient_graph, refine_connected, verify_tree_partition, TpVerification, TpwOptions,
    TpwOutcome, TreePartition,
};
use tpw::quad::{QuadNum, Rat};
use tpw::rng::SplitMix64;

// ---------------------------------------------------------------- oracles

/// Independent width oracle: enumerate every set partition in restricted
/// growth order, rebuild the quotient from scratch, and test forestness by
/// edge counting. Shares no code with the search under test.
fn naive_tpw(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 8, "oracle is exponential");
    let mut bag_of = vec![0usize; n];
    let mut best = usize::MAX;
    fn rec(g: &Graph, bag_of: &mut Vec<usize>, v: usize, best: &mut usize) {
        let n = g.vertex_count();
        if v == n {
            let bags_n = bag_of.iter().max().unwrap() + 1;
            let mut bags = vec![BTreeSet::new(); bags_n];
            for (u, &b) in bag_of.iter().enumerate() {
                bags[b].insert(u);
            }
            let q = quotient_graph(g, &bags).unwrap();
            let comps = q.connected_components().len();
            if q.vertex_count() == q.edge_count() + comps {
                *best = (*best).min(bags.iter().map(|b| b.len()).max().unwrap());
            }
            return;
        }
        let cap = bag_of[..v].iter().max().unwrap() + 1;
        for b in 0..=cap {
            bag_of[v] = b;
            rec(g, bag_of, v + 1, best);
        }
    }
    rec(g, &mut bag_of, 1, &mut best);
    best
}

fn exact_width(g: &Graph) -> usize {
    exact_tpw(g, &TpwOptions::default())
        .unwrap()
        .exact_width()
        .expect("instance within oracle range")
}

fn clique(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn cycle(n: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 1, 0));
    Graph::new(n, &edges).unwrap()
}

fn path(n: usize) -> Graph {
    Graph::new(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
}

fn random_tree(n: usize, rng: &mut SplitMix64) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(v), v)).collect();
    Graph::new(n, &edges).unwrap()
}

fn random_connected(n: usize, extra: usize, rng: &mut SplitMix64) -> Graph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(v), v)).collect();
    for _ in 0..extra {
        let u = rng.gen_range(n);
        let v = rng.gen_range(n);
        if u != v {
            edges.push((u.min(v), u.max(v)));
        }
    }
    Graph::new(n, &edges).unwrap()
}

// ------------------------------------------------------------- criterion 1

#[test]
fn criterion_1_oracle_correctness() {
    let started = std::time::Instant::now();
    // cliques: the quotient of a complete graph is complete, so a forest
    // pattern has at most two bags and the width is exactly ceil(n/2)
    for n in 2..=8 {
        let g = clique(n);
        let got = exact_width(&g);
        assert_eq!(got, n.div_ceil(2), "K_{n}");
        assert_eq!(got, naive_tpw(&g), "K_{n} vs enumeration oracle");
    }

    // twenty seeded random trees: width 1, singleton bags
    let mut rng = SplitMix64::new(101);
    for trial in 0..20 {
        let n = 2 + rng.gen_range(9); // 2..=10
        let g = random_tree(n, &mut rng);
        assert_eq!(exact_width(&g), 1, "tree trial {trial}");
    }

    // cycles: width 2 for n = 4..8, matching the enumeration oracle
    for n in 4..=8 {
        let g = cycle(n);
        let got = exact_width(&g);
        assert_eq!(got, 2, "C_{n}");
        assert_eq!(got, naive_tpw(&g), "C_{n} vs enumeration oracle");
    }

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 300, "oracle checks took {elapsed:?}");
    println!("acceptance 1 (oracle correctness on cliques, trees, cycles, {elapsed:?}): PASS");
}

// ------------------------------------------------------------- criterion 2

#[test]
#[allow(clippy::int_plus_one)] // keep the bound in its stated form
fn criterion_2_halving_lower_bound() {
    let mut rng = SplitMix64::new(202);
    let mut checked = 0;
    while checked < 110 {
        let n = 3 + rng.gen_range(7); // 3..=9
        let extra = rng.gen_range(n);
        let g = random_connected(n, extra, &mut rng);
        let (tw, _) = treewidth_exact(&g).unwrap();
        let w = exact_width(&g);
        assert!(
            2 * w >= tw + 1,
            "halving bound violated: n={n}, tw={tw}, tpw={w}"
        );
        checked += 1;
    }
    println!("acceptance 2 (2*tpw >= tw+1 on {checked} random graphs): PASS");
}

// ------------------------------------------------------------- criterion 3

#[test]
fn criterion_3_chordal_upper_bound() {
    let mut rng = SplitMix64::new(303);
    let mut checked = 0;
    let mut seed = 1u64;
    while checked < 110 {
        let k = 1 + rng.gen_range(3); // 1..=3
        let n = (k + 2) + rng.gen_range(9 - (k + 2) + 1); // k+2 ..= 9
        let (g, _) = gen_random_ktree(n, k, seed).unwrap();
        seed += 1;
        let delta = g.max_degree();
        assert!(delta >= 2);
        let (tw, _) = treewidth_exact(&g).unwrap();
        assert_eq!(tw, k);
        let w = exact_width(&g);
        assert!(
            w <= tw * (delta - 1),
            "chordal bound violated: k={k}, n={n}, delta={delta}, tpw={w}"
        );
        checked += 1;
    }
    println!("acceptance 3 (tpw <= tw*(delta-1) on {checked} random k-trees): PASS");
}

// ------------------------------------------------------------- criterion 4

#[test]
fn criterion_4_construction_guarantee() {
    let started = std::time::Instant::now();
    let mut case4_total = 0usize;
    let mut instances = 0usize;

    let mut check = |g: &Graph, td: &TreeDecomposition| {
        let k = td.width();
        let delta = g.max_degree();
        let report = construct_with_report(g, td, delta, false)
            .expect("construction with per-node assertions enabled");
        assert!(verify_tree_partition(g, &report.partition).is_valid());
        let bound = lemma3_width_bound(k, delta);
        assert!(
            QuadNum::from_int(report.partition.width() as i128) <= bound,
            "width {} exceeds bound {bound} (k={k}, delta={delta})",
            report.partition.width()
        );
        case4_total += report.stats.case4;
        instances += 1;
    };

    for n in [9, 20, 50] {
        let g = path(n);
        let (_, td) = treewidth_exact(&g).unwrap();
        check(&g, &td);
    }
    for n in [8, 17, 30] {
        let g = cycle(n);
        let td = treewidth_heuristic(&g);
        assert_eq!(td.width(), 2);
        check(&g, &td);
    }
    let mut rng = SplitMix64::new(404);
    for seed in 0..50u64 {
        let k = 1 + (seed % 3) as usize;
        let n = (k + 2).max(10 + rng.gen_range(51)); // up to 60
        let (g, _) = gen_random_ktree(n, k, seed + 1).unwrap();
        let (_, td) = treewidth_exact(&g).unwrap();
        check(&g, &td);
    }
    for (k, delta, n) in [(2usize, 7usize, 3usize), (4, 15, 9)] {
        let (g, _) = gen_lower_general(k, delta, n).unwrap();
        let (_, td) = treewidth_exact(&g).unwrap();
        check(&g, &td);
    }
    for delta in [11, 13] {
        let (g, _) = gen_lower_tw2(delta).unwrap();
        let (_, td) = treewidth_exact(&g).unwrap();
        check(&g, &td);
    }

    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 120,
        "construction suite took {elapsed:?}, limit is 2 minutes"
    );
    println!(
        "acceptance 4 (construction guarantee on {instances} instances, {case4_total} splits, {elapsed:?}): PASS"
    );
}

/// The fixed suite above resolves every anchor by the single-bag, two-bag,
/// or leaf case; these engineered instances force the separator-split case
/// so its per-node assertions run on real inputs too.
#[test]
fn criterion_4_split_case_coverage() {
    // depth-two star: center 0, children 1..=30, one grandchild each. The
    // entry anchor takes the center plus six children, its neighborhood is
    // large but far from covering the rest, which forces a split one level
    // down.
    let mut edges: Vec<(usize, usize)> = (1..=30).map(|c| (0, c)).collect();
    edges.extend((1..=30).map(|c| (c, 30 + c)));
    let g = Graph::new(61, &edges).unwrap();
    let (k, td) = treewidth_exact(&g).unwrap();
    assert_eq!(k, 1);
    let report = construct_with_report(&g, &td, g.max_degree(), false).unwrap();
    assert!(verify_tree_partition(&g, &report.partition).is_valid());
    assert!(report.stats.case4 > 0, "deep star must split");
    assert!(
        QuadNum::from_int(report.partition.width() as i128)
            <= lemma3_width_bound(1, g.max_degree())
    );

    // wider member of the tree-width-2 family: the anchor neighborhood
    // passes the split threshold while plenty of graph remains
    let (g, _) = gen_lower_tw2(15).unwrap();
    let (_, td) = treewidth_exact(&g).unwrap();
    let report = construct_with_report(&g, &td, 15, false).unwrap();
    assert!(verify_tree_partition(&g, &report.partition).is_valid());
    assert!(report.stats.case4 > 0, "wide fan must split");
    assert!(
        QuadNum::from_int(report.partition.width() as i128) <= lemma3_width_bound(td.width(), 15)
    );

    println!("acceptance 4b (split case exercised with all per-node assertions): PASS");
}

// ------------------------------------------------------------- criterion 5

fn check_separator(g: &Graph, td: &TreeDecomposition, s: &BTreeSet<usize>) {
    let k = td.width();
    let r = balanced_separator(g, td, s).unwrap();
    assert!(r.y.len() <= k + 1, "|y| exceeds k+1");
    let inter: BTreeSet<usize> = r.v1.intersection(&r.v2).copied().collect();
    assert_eq!(inter, r.y, "y must be the side intersection");
    let union: BTreeSet<usize> = r.v1.union(&r.v2).copied().collect();
    assert_eq!(
        union,
        g.vertices().collect(),
        "sides must cover all vertices"
    );
    assert_eq!(
        r.edge_side.len(),
        g.edge_count(),
        "edge cover must be exact"
    );
    for (&(u, v), &side) in &r.edge_side {
        let inside = match side {
            Side::One => &r.v1,
            Side::Two => &r.v2,
        };
        assert!(inside.contains(&u) && inside.contains(&v));
    }
    for (u, v) in g.edges() {
        let priv1 = |x: usize| r.v1.contains(&x) && !r.y.contains(&x);
        let priv2 = |x: usize| r.v2.contains(&x) && !r.y.contains(&x);
        assert!(
            !(priv1(u) && priv2(v)) && !(priv2(u) && priv1(v)),
            "edge ({u},{v}) joins the two private sides"
        );
    }
    let t = s.difference(&r.y).count();
    for side in [&r.v1, &r.v2] {
        let missed = s.iter().filter(|v| !side.contains(v)).count();
        assert!(
            3 * missed <= 2 * t,
            "balance violated: missed {missed} of {t}"
        );
    }
}

#[test]
fn criterion_5_separator_contract() {
    let mut rng = SplitMix64::new(505);
    let mut checked = 0;

    // seeded 2-trees with their clique trees
    for seed in 0..120u64 {
        let n = 4 + rng.gen_range(17); // 4..=20
        let (g, _) = gen_random_ktree(n, 2, seed + 1000).unwrap();
        let (_, td) = treewidth_exact(&g).unwrap();
        let s: BTreeSet<usize> = match seed % 4 {
            0 => g.vertices().collect(),
            1 => g.vertices().filter(|_| rng.chance(1, 2)).collect(),
            2 => g.vertices().filter(|_| rng.chance(1, 4)).collect(),
            _ => BTreeSet::from([rng.gen_range(n)]),
        };
        check_separator(&g, &td, &s);
        checked += 1;
    }

    // random connected graphs with exact decompositions
    for _ in 0..80 {
        let n = 3 + rng.gen_range(10); // 3..=12
        let g = random_connected(n, rng.gen_range(n), &mut rng);
        let (_, td) = treewidth_exact(&g).unwrap();
        let s: BTreeSet<usize> = g.vertices().filter(|_| rng.chance(2, 3)).collect();
        check_separator(&g, &td, &s);
        checked += 1;
    }

    // adversarial small targets, including the empty set
    for n in [3usize, 5, 9] {
        let g = path(n);
        let (_, td) = treewidth_exact(&g).unwrap();
        check_separator(&g, &td, &BTreeSet::new());
        check_separator(&g, &td, &BTreeSet::from([0, n - 1]));
        check_separator(&g, &td, &g.vertices().collect());
        checked += 3;
    }
    for n in [4usize, 6, 8] {
        let g = clique(n);
        let (_, td) = treewidth_exact(&g).unwrap();
        check_separator(&g, &td, &(0..n / 2).collect());
        checked += 1;
    }

    assert!(checked >= 200);
    println!("acceptance 5 (separator contract on {checked} triples): PASS");
}

// ------------------------------------------------------------- criterion 6

/// Random valid tree-partition: breadth-first layers from a random root,
/// with occasional merges of adjacent layers (the quotient stays a path).
fn random_layer_partition(g: &Graph, rng: &mut SplitMix64) -> TreePartition {
    let n = g.vertex_count();
    let root = rng.gen_range(n);
    let mut dist = vec![usize::MAX; n];
    dist[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
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
    // group consecutive layers randomly
    let mut group = vec![0usize; max_d + 1];
    let mut gid = 0;
    for slot in group.iter_mut().skip(1) {
        if rng.chance(1, 3) {
            *slot = gid; // merge into previous
        } else {
            gid += 1;
            *slot = gid;
        }
    }
    let mut bags = vec![BTreeSet::new(); gid + 1];
    for v in 0..n {
        bags[group[dist[v]]].insert(v);
    }
    TreePartition::from_bags(n, bags).unwrap()
}

/// Greedy maximal independent subset of the simplicial vertices, scanning in
/// a seeded random order.
fn sample_simplicial_independent(g: &Graph, rng: &mut SplitMix64) -> BTreeSet<usize> {
    let mut simp: Vec<usize> = g.simplicial_vertices().into_iter().collect();
    rng.shuffle(&mut simp);
    let mut chosen: BTreeSet<usize> = BTreeSet::new();
    for v in simp {
        if g.neighbors(v).iter().all(|u| !chosen.contains(u)) {
            chosen.insert(v);
        }
    }
    chosen
}

#[test]
fn criterion_6_chordal_refinement() {
    let mut rng = SplitMix64::new(606);
    let mut checked = 0;
    for seed in 0..210u64 {
        let k = 1 + (seed % 3) as usize;
        let n = (k + 2) + rng.gen_range(11 - k); // up to 12
        let (g, _) = gen_random_ktree(n, k, seed + 7000).unwrap();
        let p = random_layer_partition(&g, &mut rng);
        assert!(verify_tree_partition(&g, &p).is_valid());

        let refined = refine_connected(&g, &p).unwrap();
        assert!(verify_tree_partition(&g, &refined).is_valid());
        assert!(refined.width() <= p.width(), "refinement must not widen");

        for bag in refined.bags() {
            let (sub, _) = g.induced_subgraph(bag).unwrap();
            assert!(
                sub.is_connected(),
                "refined bag must induce a connected subgraph"
            );
        }

        // both guarantees, for several sampled independent simplicial sets
        for _ in 0..3 {
            let set = sample_simplicial_independent(&g, &mut rng);
            for bag in refined.bags() {
                let outside: BTreeSet<usize> = bag.difference(&set).copied().collect();
                if outside.is_empty() {
                    assert_eq!(
                        bag.len(),
                        1,
                        "a bag inside the simplicial set must be a singleton"
                    );
                } else {
                    let (sub, _) = g.induced_subgraph(&outside).unwrap();
                    assert!(
                        sub.is_connected(),
                        "bag minus simplicial set must stay connected"
                    );
                }
            }
        }
        checked += 1;
    }
    assert!(checked >= 200);
    println!("acceptance 6 (connected-bag refinement on {checked} chordal instances): PASS");
}

// ------------------------------------------------------------- criterion 7

#[test]
fn criterion_7_generator_fidelity() {
    let (g, _) = gen_lower_general(4, 15, 9).unwrap();
    assert_eq!(g.vertex_count(), 100);
    assert!(g.max_degree() <= 15);
    let peo = match g.chordality() {
        Chordality::Chordal { peo } => peo,
        Chordality::NotChordal { .. } => panic!("lower_general must be chordal"),
    };
    let td = clique_tree_from_peo(&g, &peo).unwrap();
    assert_eq!(verify_tree_decomposition(&g, &td), Ok(7));

    let (g2, _) = gen_lower_tw2(13).unwrap();
    assert_eq!(g2.vertex_count(), 74);
    assert_eq!(g2.max_degree(), 13);
    assert!(g2.is_chordal());
    assert!(has_no_k4(&g2));
    let (tw2, _) = treewidth_exact(&g2).unwrap();
    assert_eq!(tw2, 2);

    println!("acceptance 7 (generator fidelity): PASS");
}

// ------------------------------------------------------------- criterion 8

#[test]
fn criterion_8_exact_threshold_arithmetic() {
    let gamma = QuadNum::gamma();
    let alpha = QuadNum::alpha();
    let one = QuadNum::from_int(1);
    assert_eq!(QuadNum::from_int(2) * alpha - one, gamma);
    assert_eq!((alpha - one) * (gamma + one), gamma);
    assert_eq!(
        QuadNum::from_int(3) * gamma * gamma,
        QuadNum::new(Rat::from_int(9), Rat::from_int(6))
    );

    // integer windows match a floating reference away from integers
    let sqrt2 = std::f64::consts::SQRT_2;
    for k in 1..=10usize {
        for delta in 1..=10usize {
            let (lo, hi) = anchor_window(k, delta);
            let lo_f = (2.0 + sqrt2) * (k as f64 + 1.0);
            let hi_f = 3.0 * (2.0 + sqrt2) * (k as f64 + 1.0) * delta as f64;
            if (lo_f - lo_f.round()).abs() > 1e-9 {
                assert_eq!(lo, lo_f.ceil() as usize, "k={k}");
            }
            if (hi_f - hi_f.round()).abs() > 1e-9 {
                assert_eq!(hi, hi_f.floor() as usize, "k={k}, delta={delta}");
            }
            assert_eq!(entry_anchor_size(k), lo);
        }
    }
    println!("acceptance 8 (exact threshold arithmetic): PASS");
}

// --------------------------------------------------------- criteria 9 + 10

#[test]
fn criterion_9_and_10_experiment_report_and_determinism() {
    let plan = builtin_suite();
    let first = run_experiment(&plan).expect("suite must run");
    let header = first.csv.lines().next().unwrap();
    assert!(header.split(',').any(|c| c == "theorem1_ok"));
    assert_eq!(first.csv.lines().count(), plan.instances.len() + 1);
    // exit status (empty violation list) must not depend on the report-only
    // column; everything asserted must hold on this suite
    assert!(
        first.violations.is_empty(),
        "asserted inequalities failed: {:?}",
        first.violations
    );
    println!("acceptance 9 (report-only column present, run clean): PASS");

    let second = run_experiment(&plan).expect("suite must rerun");
    assert_eq!(first.csv, second.csv, "reruns must be byte-identical");
    println!("acceptance 10 (byte-identical rerun): PASS");
}

// ------------------------------------------------- sandwich audit, at scale

/// The large lower-bound instances exceed the exact oracle; the audit covers
/// them with certified partial bounds inside the sandwich instead.
#[test]
fn sandwich_audit_on_oversized_instances() {
    for delta in [11usize, 13] {
        let (g, meta) = gen_lower_tw2(delta).unwrap();
        let report = tpw::bounds::audit(&g, &meta, &AuditBudget::default());
        match report.exact {
            Some(ExactStatus::LowerBound(lb)) => {
                assert!(lb >= 2);
                assert!(lb <= report.constructed_width.unwrap());
            }
            other => panic!("expected certified lower bound, got {other:?}"),
        }
        assert_eq!(report.sandwich_ok, Some(true));
        assert!(report.violations.is_empty(), "{:?}", report.violations);
    }
    println!("acceptance extra (sandwich audit on oversized instances): PASS");
}

// -------------------------------------------- spot checks from the formulas

#[test]
fn formula_spot_values() {
    let f = tpw::bounds::bound_formulas(3, 10, true).unwrap();
    assert_eq!(f.referee_upper, Some(720));
    assert_eq!(f.theorem1_upper, Rat::from_int(340));
    assert_eq!(f.chordal_upper, Some(27));

    let b = lemma3_width_bound(1, 2);
    assert_eq!(b, QuadNum::new(Rat::from_int(34), Rat::from_int(22)));
    assert_eq!(b.ceil_int(), 66);

    let p = tpw::bounds::theorem2_params(3, Rat::new(1, 16)).unwrap();
    assert_eq!((p.ell, p.delta_threshold), (2, Rat::from_int(12)));
    println!("acceptance extra (formula spot values): PASS");
}

// --------------------------------------- exact search option equivalence

#[test]
fn pruned_search_equals_plain_search_on_chordal_graphs() {
    let mut rng = SplitMix64::new(909);
    let plain = TpwOptions::default();
    let pruned = TpwOptions {
        chordal_pruning: true,
        ..TpwOptions::default()
    };
    for seed in 0..30u64 {
        let k = 1 + (seed % 3) as usize;
        let n = (k + 2) + rng.gen_range(8 - k);
        let (g, _) = gen_random_ktree(n, k, seed + 400).unwrap();
        let a = exact_tpw(&g, &plain).unwrap().exact_width().unwrap();
        let b = exact_tpw(&g, &pruned).unwrap().exact_width().unwrap();
        assert_eq!(a, b, "pruning changed the optimum on a chordal graph");
    }
    println!("acceptance extra (pruning equivalence): PASS");
}

// ------------------------------------------------------- budgeted honesty

#[test]
fn budgeted_search_reports_incomplete() {
    let g = clique(8);
    let opts = TpwOptions {
        node_budget: Some(3),
        ..TpwOptions::default()
    };
    match exact_tpw(&g, &opts).unwrap() {
        TpwOutcome::LowerBound {
            certified, best, ..
        } => {
            assert_eq!(certified, 4);
            assert!(matches!(
                verify_tree_partition(&g, &best),
                TpVerification::Valid { .. }
            ));
        }
        TpwOutcome::Exact { .. } => panic!("three nodes cannot finish K8"),
    }
    println!("acceptance extra (budget honesty): PASS");
}
