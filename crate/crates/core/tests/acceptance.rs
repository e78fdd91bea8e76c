//! End-to-end acceptance suite. Each test covers one headline guarantee and
//! prints a single `ACCEPTANCE PASS` line on success (visible with
//! `cargo test --test acceptance -- --nocapture`).

use std::time::Instant;

use antimagic::alternating;
use antimagic::clique::{check_preconditions, find_dominating_cliques, DominatingClique, DEFAULT_SUBSET_BUDGET};
use antimagic::generate::{
    barrus, enumerate_connected, precondition_instance, BarrusSpec, PrecondSpec, Target,
};
use antimagic::graph::Graph;
use antimagic::labelling::{format_report, is_c_antimagic_labelling, vertex_sums};
use antimagic::oracle::{brute_force_antimagic, min_c, DEFAULT_EDGE_CAP};
use antimagic::spaced;

fn instance(n: usize, k: usize, p: f64, target: Target, seed: u64) -> (Graph, DominatingClique) {
    let spec = PrecondSpec { n, k, extra_edge_prob: p, target };
    let inst = precondition_instance(&spec, seed)
        .unwrap_or_else(|e| panic!("generator failed for n={n} k={k} p={p} seed={seed}: {e}"));
    let kq = DominatingClique::new(&inst.graph, inst.clique.clone()).unwrap();
    (inst.graph, kq)
}

/// The alternating labeller, over hundreds of generated instances up to 40
/// vertices: bijective labels, pairwise distinct sums confirmed by the
/// independent checker, and a strictly positive clique/outside separation.
#[test]
fn alternating_labeller_at_scale() {
    let started = Instant::now();
    let mut count = 0usize;
    for k in 4..=8usize {
        for dn in [0, 1, 3, 6, 10, 15, 20, 25, 30] {
            for p in [0.0, 0.4, 0.8] {
                for seed in 0..3u64 {
                    let n = k + dn;
                    assert!(n <= 40);
                    let (g, kq) = instance(n, k, p, Target::T4, seed);
                    let out = alternating::label(&g, &kq, true)
                        .unwrap_or_else(|e| panic!("labeller failed on n={n} k={k} p={p} seed={seed}: {e}"));
                    assert!(out.labelling.is_bijection_on(&g));
                    assert!(is_c_antimagic_labelling(&g, &out.labelling, 0).unwrap());
                    assert_eq!(vertex_sums(&g, &out.labelling, false).unwrap().0, out.sums.0);
                    assert!(
                        out.certificate.gamma > 0,
                        "gamma = {} on n={n} k={k} p={p} seed={seed}",
                        out.certificate.gamma
                    );
                    count += 1;
                }
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(count >= 300, "only {count} instances");
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!("ACCEPTANCE PASS: alternating labeller antimagic on {count} instances in {elapsed:?}");
}

/// The spaced-pool labeller over hundreds of instances, including many
/// sitting exactly on the edge-count bound: injective labels within
/// `1..=m+3`, at most one above `m`, distinct sums, slack at most 3.
#[test]
fn spaced_labeller_at_scale() {
    let started = Instant::now();
    let mut count = 0usize;
    let mut at_bound = 0usize;
    for k in 3..=8usize {
        for dn in [0, 1, 2, 4, 7, 11, 16, 22, 29] {
            for p in [0.0, 0.4, 0.8] {
                for seed in 0..2u64 {
                    let n = k + dn;
                    assert!(n <= 40);
                    let (g, kq) = instance(n, k, p, Target::T5, seed);
                    let bound = 3 * (n as i64 - k as i64) - 2 + (k * (k - 1) / 2) as i64;
                    if g.m() as i64 == bound {
                        at_bound += 1;
                    }
                    let out = spaced::label(&g, &kq)
                        .unwrap_or_else(|e| panic!("labeller failed on n={n} k={k} p={p} seed={seed}: {e}"));
                    let m = g.m() as u64;
                    assert!(out.labelling.is_total_on(&g));
                    assert!(out.labelling.max_label() <= m + 3);
                    let over: Vec<u64> =
                        out.labelling.iter().map(|(_, l)| l).filter(|&l| l > m).collect();
                    assert!(over.len() <= 1, "{over:?} labels above m on n={n} k={k} p={p} seed={seed}");
                    assert!(out.c_used <= 3);
                    assert!(is_c_antimagic_labelling(&g, &out.labelling, out.c_used).unwrap());
                    count += 1;
                }
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(count >= 300, "only {count} instances");
    assert!(at_bound >= 20, "only {at_bound} instances at the edge bound");
    println!(
        "ACCEPTANCE PASS: spaced labeller injective with slack <= 3 on {count} instances ({at_bound} at the edge bound) in {elapsed:?}"
    );
}

/// After the dealing stages and before any post-processing, outside sums are
/// pairwise at least 3 apart and clique sums, walked in dealing order, climb
/// by at least k-2 per step.
#[test]
fn dealt_sums_are_spaced() {
    let mut checked = 0usize;
    for k in 3..=8usize {
        for dn in [0, 1, 2, 4, 7, 11, 16] {
            for p in [0.0, 0.4, 0.8] {
                for seed in 0..2u64 {
                    let (g, kq) = instance(k + dn, k, p, Target::T5, seed);
                    let steps = spaced::label_steps(&g, &kq).unwrap();
                    let outside = &steps.outside_order;
                    for (i, &v) in outside.iter().enumerate() {
                        for &w in &outside[i + 1..] {
                            let gap = steps.sums.get(v).abs_diff(steps.sums.get(w));
                            assert!(gap >= 3, "outside gap {gap} on k={k} dn={dn} p={p} seed={seed}");
                        }
                    }
                    let order = &steps.clique_order;
                    for pair in order.windows(2) {
                        let (a, b) = (steps.sums.get(pair[0]), steps.sums.get(pair[1]));
                        assert!(
                            b >= a + (k as u64 - 2).max(1),
                            "clique climb {a} -> {b} on k={k} dn={dn} p={p} seed={seed}"
                        );
                    }
                    checked += 1;
                }
            }
        }
    }
    println!("ACCEPTANCE PASS: dealt sums spaced as required on {checked} instances");
}

/// The exhaustive oracle over every connected graph with up to 5 vertices
/// and up to 8 edges: a plain antimagic labelling exists for all of them
/// except the single edge.
#[test]
fn oracle_covers_the_small_corpus() {
    let started = Instant::now();
    let mut total = 0usize;
    let mut found = 0usize;
    for n in 2..=5usize {
        for g in enumerate_connected(n, 8).unwrap() {
            total += 1;
            let r = brute_force_antimagic(&g, 0, DEFAULT_EDGE_CAP).unwrap();
            let is_single_edge = g.n() == 2 && g.m() == 1;
            assert_eq!(
                r.found, !is_single_edge,
                "n={} edges={:?}",
                g.n(),
                g.edges()
            );
            if let Some(w) = &r.witness {
                assert!(is_c_antimagic_labelling(&g, w, 0).unwrap());
                found += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    assert_eq!(total, 760);
    assert_eq!(found, 759);
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}");
    println!("ACCEPTANCE PASS: oracle witnessed {found}/{total} corpus graphs in {elapsed:?}");
}

/// On every corpus graph where a labeller's preconditions hold, its output
/// passes the checker and the oracle independently confirms a labelling
/// exists within the same slack.
#[test]
fn constructive_and_oracle_agree() {
    let started = Instant::now();
    let mut spaced_checked = 0usize;
    let mut alternating_checked = 0usize;
    for n in 3..=5usize {
        for g in enumerate_connected(n, 9).unwrap() {
            let cliques = match find_dominating_cliques(&g, 3, g.n(), DEFAULT_SUBSET_BUDGET) {
                Ok(cs) => cs,
                Err(_) => continue,
            };
            if let Some(kq) = cliques
                .iter()
                .find(|kq| check_preconditions(&g, kq).unwrap().t5_ok)
            {
                let out = spaced::label(&g, kq).unwrap();
                assert!(is_c_antimagic_labelling(&g, &out.labelling, out.c_used).unwrap());
                let r = min_c(&g, 3, DEFAULT_EDGE_CAP).unwrap();
                assert!(r.found);
                assert!(
                    r.c_used.unwrap() <= out.c_used,
                    "oracle needed more slack than the labeller on {:?}",
                    g.edges()
                );
                spaced_checked += 1;
            }
            if let Some(kq) = cliques
                .iter()
                .find(|kq| check_preconditions(&g, kq).unwrap().t4_ok)
            {
                let out = alternating::label(&g, kq, true).unwrap();
                assert!(is_c_antimagic_labelling(&g, &out.labelling, 0).unwrap());
                let r = brute_force_antimagic(&g, 0, DEFAULT_EDGE_CAP).unwrap();
                assert!(r.found, "oracle disagrees on {:?}", g.edges());
                alternating_checked += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(spaced_checked >= 100, "only {spaced_checked} spaced-eligible graphs");
    assert!(alternating_checked >= 5, "only {alternating_checked} alternating-eligible graphs");
    println!(
        "ACCEPTANCE PASS: labellers and oracle agree on {spaced_checked} spaced and {alternating_checked} alternating corpus graphs in {elapsed:?}"
    );
}

/// Everything observable is reproducible: generators, labellers and oracle
/// give byte-identical output across repeated runs.
#[test]
fn byte_identical_reruns() {
    let mut transcripts = Vec::new();
    for _ in 0..3 {
        let mut text = String::new();
        for seed in [0u64, 9, 42] {
            let spec = BarrusSpec { b_size: 5, a_size: 4, c_size: 3, a_edge_prob: 0.4, c_edge_prob: 0.6 };
            let inst = barrus(&spec, seed).unwrap();
            text.push_str(&inst.graph.to_edge_list());
            for target in [Target::T4, Target::T5] {
                let spec = PrecondSpec { n: 12, k: 5, extra_edge_prob: 0.5, target };
                let inst = precondition_instance(&spec, seed).unwrap();
                text.push_str(&inst.graph.to_edge_list());
                let kq = DominatingClique::new(&inst.graph, inst.clique.clone()).unwrap();
                match target {
                    Target::T4 => {
                        let out = alternating::label(&inst.graph, &kq, true).unwrap();
                        text.push_str(&out.labelling.to_lines());
                        text.push_str(&format_report(&out.sums, true, 0));
                    }
                    Target::T5 => {
                        let out = spaced::label(&inst.graph, &kq).unwrap();
                        text.push_str(&out.labelling.to_lines());
                        text.push_str(&format_report(&out.sums, true, out.c_used));
                        for s in &out.trace.swaps {
                            text.push_str(&format!("{s:?}\n"));
                        }
                    }
                }
            }
        }
        let g = Graph::parse("4 4\n0 1\n1 2\n2 3\n0 3").unwrap();
        let r = brute_force_antimagic(&g, 1, DEFAULT_EDGE_CAP).unwrap();
        text.push_str(&r.witness.unwrap().to_lines());
        transcripts.push(text);
    }
    assert_eq!(transcripts[0], transcripts[1]);
    assert_eq!(transcripts[1], transcripts[2]);
    println!(
        "ACCEPTANCE PASS: three reruns produced byte-identical transcripts ({} bytes)",
        transcripts[0].len()
    );
}

/// The repair passes actually run on realistic inputs, and their whole
/// effect is confined to clique sums: replaying the label deltas on the
/// dealt sums reproduces the final sums, and outside sums never move.
#[test]
fn post_processing_is_exercised() {
    let mut swap_instances = 0usize;
    let mut overflow_instances = 0usize;
    let mut checked = 0usize;
    let mut grid: Vec<(usize, usize)> = Vec::new();
    for k in 4..=6usize {
        for dn in [3, 4, 5, 6, 7, 8] {
            grid.push((k + dn, k));
        }
    }
    for dn in [1, 2, 3, 4, 5, 6, 7, 8] {
        grid.push((3 + dn, 3));
    }
    for &(n, k) in &grid {
        for p in [0.2, 0.5, 0.8] {
            for seed in 0..10u64 {
                let (g, kq) = instance(n, k, p, Target::T5, seed);
                let out = spaced::label(&g, &kq).unwrap();
                if !out.trace.swaps.is_empty() {
                    swap_instances += 1;
                }
                if out.trace.chosen_overflow.is_some() {
                    overflow_instances += 1;
                }

                // Every swap exchanged a consecutive pair of dealt labels.
                for s in &out.trace.swaps {
                    let up = out.steps.labels[&s.up_edge];
                    let down = out.steps.labels[&s.down_edge];
                    assert_eq!(down, up + 1, "swap at position {} on n={n} k={k}", s.position);
                }

                // Replay: dealt sums plus per-edge label deltas must equal
                // the final sums exactly.
                let mut replayed = out.trace.pre_sums.0.clone();
                for ((u, v), final_label) in out.labelling.iter() {
                    let dealt = out.steps.labels[&(u, v)];
                    for x in [u, v] {
                        replayed[x] = replayed[x] + final_label - dealt;
                    }
                }
                assert_eq!(replayed, out.sums.0, "n={n} k={k} p={p} seed={seed}");

                // Outside sums never change after dealing.
                for v in kq.outside(&g) {
                    assert_eq!(
                        out.trace.pre_sums.get(v),
                        out.sums.get(v),
                        "outside vertex {v} moved on n={n} k={k} p={p} seed={seed}"
                    );
                }
                checked += 1;
            }
        }
    }
    assert!(swap_instances >= 20, "only {swap_instances} instances exercised the swap pass");
    assert!(overflow_instances >= 5, "only {overflow_instances} instances chose an overflow label");
    println!(
        "ACCEPTANCE PASS: {swap_instances} swap-pass and {overflow_instances} overflow instances among {checked}, deltas all accounted for"
    );
}
