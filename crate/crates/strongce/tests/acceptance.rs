//! End-to-end acceptance checks, one test per criterion. Each prints a
//! single pass/fail line (visible with `--nocapture`) and asserts it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strongce::coloring::{verify_strong_complete, ColorId};
use strongce::engine::strong_list_color;
use strongce::gen;
use strongce::graph::MultiGraph;
use strongce::hall;
use strongce::nullstellensatz::{
    cn_find_assignment, expand_product, paper_certificate, uncapped, ConflictSystem,
    FIVE_CYCLE_FACTOR_PAIRS, FIVE_CYCLE_TARGET,
};
use strongce::oracle;
use strongce::ordering::{color_all_but_cycle, color_all_but_vertex};

fn report(criterion: usize, name: &str, pass: bool) {
    println!(
        "criterion {criterion} ({name}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} ({name}) failed");
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent coefficient oracle: iterated finite differences at 0.
/// For a polynomial of total degree sum(k), the k-th mixed difference
/// equals k! times the coefficient of x^k, because every other monomial
/// has some exponent strictly below its k_i and is annihilated.
fn finite_difference_coefficient(pairs: &[(usize, usize)], k: &[u16]) -> i128 {
    fn binom(n: u16, r: u16) -> i128 {
        let mut out: i128 = 1;
        for i in 0..r {
            out = out * (n - i) as i128 / (i + 1) as i128;
        }
        out
    }
    let n = k.len();
    let mut a = vec![0u16; n];
    let mut total: i128 = 0;
    'grid: loop {
        let mut p: i128 = 1;
        for &(i, j) in pairs {
            p *= a[i] as i128 - a[j] as i128;
            if p == 0 {
                break;
            }
        }
        if p != 0 {
            let mut w: i128 = 1;
            let mut sign: i128 = 1;
            for i in 0..n {
                w *= binom(k[i], a[i]);
                if (k[i] - a[i]) % 2 == 1 {
                    sign = -sign;
                }
            }
            total += sign * w * p;
        }
        let mut i = 0;
        loop {
            if i == n {
                break 'grid;
            }
            if a[i] < k[i] {
                a[i] += 1;
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
    let fact: i128 = k
        .iter()
        .map(|&ki| (1..=ki as i128).product::<i128>())
        .product();
    assert_eq!(total % fact, 0, "difference sum must be divisible by k!");
    total / fact
}

#[test]
fn criterion_1_certificate() {
    let coefficient = paper_certificate().unwrap();
    let independent = finite_difference_coefficient(
        &FIVE_CYCLE_FACTOR_PAIRS,
        &FIVE_CYCLE_TARGET,
    );
    let degree: usize = FIVE_CYCLE_TARGET.iter().map(|&k| k as usize).sum();
    let pass = coefficient == -1
        && independent == -1
        && FIVE_CYCLE_FACTOR_PAIRS.len() == 29
        && degree == 29;
    report(1, "five-cycle coefficient is -1", pass);
}

/// Random tree with maximum degree 4.
fn random_tree<R: Rng>(n: usize, rng: &mut R) -> MultiGraph {
    let mut degrees = vec![0usize; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let parent = loop {
            let p = rng.gen_range(0..v);
            if degrees[p] < 4 {
                break p;
            }
        };
        degrees[parent] += 1;
        degrees[v] += 1;
        edges.push((parent, v));
    }
    MultiGraph::build(n, &edges).unwrap()
}

#[test]
fn criterion_2_theorem_property_suite() {
    let mut r = rng(2024);
    let mut graphs: Vec<MultiGraph> = Vec::new();

    for _ in 0..120 {
        let n = r.gen_range(4..=64);
        graphs.push(gen::random_maxdeg4(n, &mut r).unwrap());
    }
    for _ in 0..60 {
        let n = r.gen_range(2..=48);
        graphs.push(random_tree(n, &mut r));
    }
    for _ in 0..140 {
        let n = r.gen_range(10..=64);
        graphs.push(gen::random_regular4(n, &mut r).unwrap());
    }
    // Girth-controlled graphs are costly to anneal; generate a few of each
    // and reuse them with independently drawn lists.
    let girth4: Vec<MultiGraph> = (0..8)
        .map(|i| gen::regular4_girth(16 + 2 * i, 4, &mut r).unwrap())
        .collect();
    let girth5: Vec<MultiGraph> = (0..6)
        .map(|i| gen::regular4_girth(19 + i, 5, &mut r).unwrap())
        .collect();
    let girth6: Vec<MultiGraph> = (0..6)
        .map(|i| gen::regular4_girth(26 + 2 * i, 6, &mut r).unwrap())
        .collect();
    for i in 0..40 {
        graphs.push(girth4[i % girth4.len()].clone());
    }
    for i in 0..40 {
        graphs.push(girth5[i % girth5.len()].clone());
    }
    for i in 0..40 {
        graphs.push(girth6[i % girth6.len()].clone());
    }
    let fixtures: Vec<MultiGraph> = gen::FIXTURE_NAMES
        .iter()
        .map(|name| gen::fixture(name).unwrap())
        .collect();
    for i in 0..60 {
        graphs.push(fixtures[i % fixtures.len()].clone());
    }
    assert_eq!(graphs.len(), 500);

    let mut depth_counts = [0usize; 3];
    for (idx, g) in graphs.iter().enumerate() {
        let lists = gen::random_lists(g.edge_count(), 22, 66, &mut r).unwrap();
        let outcome = strong_list_color(g, &lists)
            .unwrap_or_else(|e| panic!("instance {idx} failed: {e}"));
        assert!(
            verify_strong_complete(g, &lists, &outcome.colors).is_ok(),
            "instance {idx} failed verification"
        );
        depth_counts[outcome.fallback_depth as usize] += 1;
        assert!(
            outcome.fallback_depth <= 1,
            "instance {idx} needed fallback depth {}",
            outcome.fallback_depth
        );
    }
    println!(
        "  fallback depth distribution: {} at depth 0, {} at depth 1",
        depth_counts[0], depth_counts[1]
    );
    report(2, "500-instance theorem suite, fallback depth <= 1", true);
}

#[test]
fn criterion_3_greedy_phase_suite() {
    let mut r = rng(3003);
    for case in 0..200 {
        let n = r.gen_range(8..=64);
        let g = gen::random_regular4(n, &mut r).unwrap();
        let cg = g.conflict_graph();
        let lists = gen::random_lists(g.edge_count(), 21, 60, &mut r).unwrap();

        let v = r.gen_range(0..n);
        let pc = color_all_but_vertex(&g, &cg, &lists, v)
            .unwrap_or_else(|e| panic!("case {case}: vertex phase failed: {e}"));
        for e in 0..g.edge_count() {
            let incident = {
                let (a, b) = g.endpoints(e);
                a == v || b == v
            };
            assert_eq!(pc.is_colored(e), !incident, "case {case} edge {e}");
        }

        let cycle = (3..=8)
            .find_map(|k| g.find_cycle_of_length(k))
            .expect("4-regular graphs contain short cycles");
        let pc = color_all_but_cycle(&g, &cg, &lists, &cycle.edges)
            .unwrap_or_else(|e| panic!("case {case}: cycle phase failed: {e}"));
        for &e in &cycle.edges {
            assert!(!pc.is_colored(e));
        }
    }
    report(3, "21-list greedy phases with the step bound", true);
}

#[test]
fn criterion_4_neighborhood_bounds() {
    let mut r = rng(4004);
    let mut graphs: Vec<MultiGraph> = Vec::new();
    for _ in 0..50 {
        graphs.push(gen::random_maxdeg4(r.gen_range(4..=60), &mut r).unwrap());
    }
    for _ in 0..50 {
        graphs.push(gen::random_regular4(r.gen_range(8..=60), &mut r).unwrap());
    }
    for name in gen::FIXTURE_NAMES {
        graphs.push(gen::fixture(name).unwrap());
    }
    for (idx, g) in graphs.iter().enumerate() {
        for e in 0..g.edge_count() {
            let size = g.neighborhood(e).len();
            assert!(size <= 24, "graph {idx} edge {e} has |N(e)| = {size}");
            // An edge on a triangle has a tighter bound.
            let (u, v) = g.endpoints(e);
            let on_triangle = !g.is_loop(e)
                && g.incident_edges(u).iter().any(|&f| {
                    f != e && !g.is_loop(f) && {
                        let w = g.other_endpoint(f, u);
                        w != v && g.has_edge_between(w, v)
                    }
                });
            if on_triangle {
                assert!(size <= 23, "triangle edge {e} in graph {idx} has |N(e)| = {size}");
            }
        }
    }
    let witness = gen::fig1_witness();
    let attained = witness.neighborhood(0).len();
    report(4, "|N(e)| <= 24 with the bound attained", attained == 24);
}

#[test]
fn criterion_5_discrepancy_exactness() {
    let mut r = rng(5005);
    for case in 0..1000 {
        let t = r.gen_range(1..=12);
        let palette = r.gen_range(1..=10u32);
        let lists: Vec<Vec<ColorId>> = (0..t)
            .map(|_| {
                let size = r.gen_range(0..=5).min(palette as usize);
                let mut l = rand::seq::index::sample(&mut r, palette as usize, size)
                    .into_iter()
                    .map(|c| c as ColorId)
                    .collect::<Vec<_>>();
                l.sort_unstable();
                l
            })
            .collect();
        let exact = hall::max_discrepancy_set(&lists).unwrap().disc;
        let brute = hall::brute_force_max_discrepancy(&lists);
        assert_eq!(exact, brute, "case {case}: {lists:?}");
        let sdr = hall::sdr_completion(&lists);
        assert_eq!(
            sdr.is_none(),
            brute > 0,
            "case {case}: SDR existence must match Hall's condition"
        );
        if let Some(reps) = sdr {
            let mut sorted = reps.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), reps.len());
            for (i, c) in reps.iter().enumerate() {
                assert!(lists[i].contains(c));
            }
        }
    }
    report(5, "discrepancy matches exhaustive search, SDR iff Hall", true);
}

/// Plain enumeration over colors in fixed edge-id order, independent of
/// the branch-and-bound machinery (no ordering heuristics, no bounds).
/// Colors are introduced canonically (each edge may use at most one color
/// beyond those already present), which discards only relabelings.
fn plain_colorable(
    adj: &[Vec<usize>],
    colors: &mut Vec<Option<u32>>,
    e: usize,
    k: u32,
    used: u32,
) -> bool {
    if e == adj.len() {
        return true;
    }
    for c in 0..(used + 1).min(k) {
        if adj[e].iter().all(|&f| colors[f] != Some(c)) {
            colors[e] = Some(c);
            if plain_colorable(adj, colors, e + 1, k, used.max(c + 1)) {
                return true;
            }
            colors[e] = None;
        }
    }
    false
}

fn plain_chi(g: &MultiGraph) -> u32 {
    let adj: Vec<Vec<usize>> = (0..g.edge_count()).map(|e| g.neighborhood(e)).collect();
    (1..)
        .find(|&k| plain_colorable(&adj, &mut vec![None; adj.len()], 0, k, 0))
        .unwrap()
}

#[test]
fn criterion_6_exact_oracle_agreement() {
    let cfg = oracle::SearchConfig::default();
    for n in 3..=12usize {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = MultiGraph::build(n, &edges).unwrap();
        let expected = if n % 3 == 0 {
            3
        } else if n == 5 {
            5
        } else {
            4
        };
        assert_eq!(plain_chi(&g), expected, "C_{n} enumeration");
        assert_eq!(
            oracle::exact_strong_chromatic_index(&g, cfg).unwrap(),
            expected,
            "C_{n} branch and bound"
        );
    }
    let p4 = MultiGraph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(oracle::exact_strong_chromatic_index(&p4, cfg).unwrap(), 3);
    let star = MultiGraph::build(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
    assert_eq!(oracle::exact_strong_chromatic_index(&star, cfg).unwrap(), 4);

    let mut r = rng(6006);
    for case in 0..100 {
        let n = r.gen_range(5..=9);
        let g = gen::random_maxdeg4(n, &mut r).unwrap();
        assert!(g.edge_count() <= 14, "case {case} too large");
        if g.edge_count() == 0 {
            continue;
        }
        assert_eq!(
            oracle::exact_strong_chromatic_index(&g, cfg).unwrap(),
            plain_chi(&g),
            "case {case}"
        );
    }
    report(6, "branch-and-bound agrees with plain enumeration", true);
}

#[test]
fn criterion_7_cn_solvability() {
    let mut r = rng(7007);
    let mut done = 0;
    while done < 200 {
        let vars = r.gen_range(3..=9usize);
        let nf = r.gen_range(5..=30usize);
        let pairs: Vec<(usize, usize)> = (0..nf)
            .map(|_| {
                let i = r.gen_range(0..vars);
                let j = loop {
                    let j = r.gen_range(0..vars);
                    if j != i {
                        break j;
                    }
                };
                (i.min(j), i.max(j))
            })
            .collect();
        // Propose a target by orienting each factor to one of its two
        // variables; the richer-side bias keeps the capped expansion small.
        let mut target: Option<Vec<u16>> = None;
        for proposal in 0..10 {
            let mut k = vec![0u16; vars];
            for &(i, j) in &pairs {
                let pick = if proposal == 0 || r.gen_bool(0.3) {
                    if r.gen_bool(0.5) {
                        i
                    } else {
                        j
                    }
                } else if k[i] >= k[j] {
                    i
                } else {
                    j
                };
                k[pick] += 1;
            }
            let grid: u64 = k.iter().map(|&x| x as u64 + 1).product();
            if grid > 30_000 {
                continue;
            }
            let p = expand_product(vars, &pairs, &k).unwrap();
            if p.coefficient_of(&k) != 0 {
                target = Some(k);
                break;
            }
        }
        let Some(targets) = target else { continue };

        let lists: Vec<Vec<ColorId>> = targets
            .iter()
            .map(|&k| {
                let mut l = rand::seq::index::sample(&mut r, 50, k as usize + 1)
                    .into_iter()
                    .map(|c| c as ColorId)
                    .collect::<Vec<_>>();
                l.sort_unstable();
                l
            })
            .collect();
        let sys = ConflictSystem {
            vars,
            factor_pairs: pairs.clone(),
            lists,
            targets,
        };
        let solution = cn_find_assignment(&sys)
            .expect("certified system with |S_i| = k_i + 1 must be solvable");
        for &(i, j) in &pairs {
            assert_ne!(solution[i], solution[j]);
        }
        for (v, c) in solution.iter().enumerate() {
            assert!(sys.lists[v].contains(c));
        }
        done += 1;
    }
    report(7, "200 certified conflict systems all solvable", true);
}

#[test]
fn criterion_8_capping_soundness() {
    let mut r = rng(8008);
    for case in 0..100 {
        let size = r.gen_range(1..=15usize);
        let mut pool = FIVE_CYCLE_FACTOR_PAIRS.to_vec();
        let mut pairs = Vec::with_capacity(size);
        for _ in 0..size {
            let idx = r.gen_range(0..pool.len());
            pairs.push(pool.swap_remove(idx));
        }
        let full = expand_product(9, &pairs, &uncapped(9)).unwrap();
        let monomials: Vec<Vec<u16>> = full.terms().map(|(m, _)| m.clone()).collect();
        let m = &monomials[r.gen_range(0..monomials.len())];
        let capped = expand_product(9, &pairs, m).unwrap();
        assert_eq!(
            full.coefficient_of(m),
            capped.coefficient_of(m),
            "case {case}: capped and uncapped disagree on {m:?}"
        );
    }
    report(8, "capped expansion preserves the target coefficient", true);
}

#[test]
fn criterion_9_cli_contract() {
    use std::process::Command;
    let bin = env!("CARGO_BIN_EXE_strongce");
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path();

    // Build a small corpus with per-instance lists.
    let specs: [(&str, &[&str]); 3] = [
        ("a", &["--model", "regular4", "--n", "18", "--seed", "11"]),
        ("b", &["--model", "random-maxdeg4", "--n", "24", "--seed", "12"]),
        ("c", &["--model", "fixture:cage-4-6"]),
    ];
    for (name, args) in specs {
        let graph = corpus.join(format!("{name}.graph"));
        let lists = corpus.join(format!("{name}.lists"));
        let status = Command::new(bin)
            .arg("gen")
            .args(args)
            .args(["--lists", "random:22:66"])
            .arg("--out")
            .arg(&graph)
            .arg("--lists-out")
            .arg(&lists)
            .status()
            .unwrap();
        assert!(status.success(), "gen {name}");
    }

    // Byte-exact round trip on every corpus file.
    for entry in std::fs::read_dir(corpus).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        if path.extension().is_some_and(|x| x == "graph") {
            let gf = strongce::io::GraphFile::parse(&text).unwrap();
            assert_eq!(gf.serialize(), text, "{}", path.display());
        } else {
            let gf_text =
                std::fs::read_to_string(path.with_extension("graph")).unwrap();
            let edge_count = strongce::io::GraphFile::parse(&gf_text).unwrap().edges.len();
            let lists = strongce::io::parse_lists(&text, edge_count).unwrap();
            assert_eq!(strongce::io::serialize_lists(&lists), text, "{}", path.display());
        }
    }

    // color -> verify pipeline on each instance.
    for (name, _) in specs {
        let graph = corpus.join(format!("{name}.graph"));
        let lists = corpus.join(format!("{name}.lists"));
        let colors = corpus.join(format!("{name}.colors"));
        let status = Command::new(bin)
            .arg("color")
            .arg(&graph)
            .arg("--lists")
            .arg(&lists)
            .arg("--out")
            .arg(&colors)
            .status()
            .unwrap();
        assert!(status.success(), "color {name}");
        let text = std::fs::read_to_string(&colors).unwrap();
        let gf_text = std::fs::read_to_string(&graph).unwrap();
        let edge_count = strongce::io::GraphFile::parse(&gf_text).unwrap().edges.len();
        let parsed = strongce::io::parse_coloring(&text, edge_count).unwrap();
        assert_eq!(strongce::io::serialize_coloring(&parsed), text);
        let status = Command::new(bin)
            .arg("verify")
            .arg(&graph)
            .arg(&lists)
            .arg(&colors)
            .status()
            .unwrap();
        assert!(status.success(), "verify {name}");
    }

    // Same seed, same bytes.
    let out = |seed: &str| {
        Command::new(bin)
            .args(["gen", "--model", "regular4", "--n", "20", "--seed", seed])
            .args(["--lists", "random:22:66"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(out("42"), out("42"));
    assert_ne!(out("42"), out("43"));

    report(9, "CLI round trip, pipeline, and determinism", true);
}
