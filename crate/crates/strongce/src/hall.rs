//! Systems of distinct representatives, maximum-discrepancy sets and the
//! extension workflow used by the 4-cycle case analysis.
//!
//! The discrepancy of a nonempty set S of uncolored edges is
//! disc(S) = |S| - |union of their available lists|. Hall's condition says
//! an SDR (one distinct color per edge) exists iff no subset has positive
//! discrepancy. A maximum-discrepancy set S has the extension property: any
//! valid coloring of S leaves the rest completable by an SDR.

use crate::coloring::{ColorId, PartialColoring};
use crate::graph::EdgeId;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HallError {
    #[error("subset colorer failed: {0}")]
    SubsetColorer(String),
    #[error("extension failed: no SDR for the residual edges")]
    ExtensionFailed,
}

/// Kuhn's augmenting-path maximum bipartite matching. `adj[l]` lists the
/// right vertices available to left vertex `l`. Returns the right match of
/// each left vertex. Deterministic given input order.
pub fn max_bipartite_matching(adj: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    let mut left_of_right: Vec<Option<usize>> = vec![None; right_count];
    let mut right_of_left: Vec<Option<usize>> = vec![None; adj.len()];

    fn try_augment(
        l: usize,
        adj: &[Vec<usize>],
        visited: &mut [bool],
        left_of_right: &mut [Option<usize>],
        right_of_left: &mut [Option<usize>],
    ) -> bool {
        for &r in &adj[l] {
            if visited[r] {
                continue;
            }
            visited[r] = true;
            let take = match left_of_right[r] {
                None => true,
                Some(l2) => try_augment(l2, adj, visited, left_of_right, right_of_left),
            };
            if take {
                left_of_right[r] = Some(l);
                right_of_left[l] = Some(r);
                return true;
            }
        }
        false
    }

    for l in 0..adj.len() {
        let mut visited = vec![false; right_count];
        try_augment(l, adj, &mut visited, &mut left_of_right, &mut right_of_left);
    }
    right_of_left
}

/// Maps color lists to a bipartite instance over the union of the lists.
/// Returns (adjacency, color universe ascending).
fn lists_to_instance(lists: &[Vec<ColorId>]) -> (Vec<Vec<usize>>, Vec<ColorId>) {
    let mut universe: Vec<ColorId> = lists.iter().flatten().copied().collect();
    universe.sort_unstable();
    universe.dedup();
    let index = |c: ColorId| universe.binary_search(&c).unwrap();
    let adj = lists
        .iter()
        .map(|l| l.iter().map(|&c| index(c)).collect())
        .collect();
    (adj, universe)
}

/// Pairwise-distinct colors, one per list, or `None` if Hall's condition
/// fails for some subset.
pub fn sdr_completion(lists: &[Vec<ColorId>]) -> Option<Vec<ColorId>> {
    let (adj, universe) = lists_to_instance(lists);
    let matching = max_bipartite_matching(&adj, universe.len());
    matching
        .into_iter()
        .map(|r| r.map(|r| universe[r]))
        .collect()
}

/// A nonempty subset of maximum discrepancy, with its union size and value.
/// `subset` holds indices into the list slice it was computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyReport {
    pub subset: Vec<usize>,
    pub union_size: usize,
    pub disc: i64,
}

/// Exact maximum of disc(S) over nonempty subsets, via matching duality:
/// forcing element e into S reduces the problem to the defect formula
/// max |S'| - |N(S')| = |left| - (max matching) on the instance with e's
/// colors removed, witnessed Koenig-style by the left vertices reachable
/// along alternating paths from the unmatched ones.
pub fn max_discrepancy_set(lists: &[Vec<ColorId>]) -> Option<DiscrepancyReport> {
    if lists.is_empty() {
        return None;
    }
    let mut best: Option<DiscrepancyReport> = None;
    for forced in 0..lists.len() {
        let forced_list: std::collections::HashSet<ColorId> =
            lists[forced].iter().copied().collect();
        // Reduced instance: all other edges, colors outside L'(forced).
        let others: Vec<usize> = (0..lists.len()).filter(|&i| i != forced).collect();
        let reduced: Vec<Vec<ColorId>> = others
            .iter()
            .map(|&i| {
                lists[i]
                    .iter()
                    .copied()
                    .filter(|c| !forced_list.contains(c))
                    .collect()
            })
            .collect();
        let (adj, universe) = lists_to_instance(&reduced);
        let matching = max_bipartite_matching(&adj, universe.len());
        let matched = matching.iter().filter(|m| m.is_some()).count();

        // Koenig witness: left vertices reachable by alternating paths from
        // unmatched left vertices (including those) maximize |S'| - |N(S')|.
        let mut left_of_right: Vec<Option<usize>> = vec![None; universe.len()];
        for (l, m) in matching.iter().enumerate() {
            if let Some(r) = m {
                left_of_right[*r] = Some(l);
            }
        }
        let mut left_seen = vec![false; reduced.len()];
        let mut right_seen = vec![false; universe.len()];
        let mut stack: Vec<usize> = (0..reduced.len())
            .filter(|&l| matching[l].is_none())
            .collect();
        for &l in &stack {
            left_seen[l] = true;
        }
        while let Some(l) = stack.pop() {
            for &r in &adj[l] {
                if right_seen[r] {
                    continue;
                }
                right_seen[r] = true;
                if let Some(l2) = left_of_right[r] {
                    if !left_seen[l2] {
                        left_seen[l2] = true;
                        stack.push(l2);
                    }
                }
            }
        }
        let s_prime: Vec<usize> = (0..reduced.len()).filter(|&l| left_seen[l]).collect();
        debug_assert_eq!(
            s_prime.len() as i64 - right_seen.iter().filter(|&&b| b).count() as i64,
            reduced.len() as i64 - matched as i64
        );

        let disc = 1 - lists[forced].len() as i64 + (reduced.len() as i64 - matched as i64);
        if best.as_ref().map_or(true, |b| disc > b.disc) {
            let mut subset: Vec<usize> = s_prime.iter().map(|&l| others[l]).collect();
            subset.push(forced);
            subset.sort_unstable();
            let mut union: Vec<ColorId> = subset
                .iter()
                .flat_map(|&i| lists[i].iter().copied())
                .collect();
            union.sort_unstable();
            union.dedup();
            debug_assert_eq!(subset.len() as i64 - union.len() as i64, disc);
            best = Some(DiscrepancyReport {
                subset,
                union_size: union.len(),
                disc,
            });
        }
    }

    #[cfg(debug_assertions)]
    if lists.len() <= 12 {
        let brute = brute_force_max_discrepancy(lists);
        debug_assert_eq!(best.as_ref().unwrap().disc, brute);
    }
    best
}

/// 2^n oracle for the maximum nonempty-subset discrepancy; test/debug use.
pub fn brute_force_max_discrepancy(lists: &[Vec<ColorId>]) -> i64 {
    let n = lists.len();
    assert!(n <= 20, "brute force limited to small instances");
    let mut best = i64::MIN;
    for mask in 1u32..(1 << n) {
        let mut union: Vec<ColorId> = Vec::new();
        let mut size = 0i64;
        for (i, list) in lists.iter().enumerate() {
            if mask & (1 << i) != 0 {
                size += 1;
                union.extend(list.iter().copied());
            }
        }
        union.sort_unstable();
        union.dedup();
        best = best.max(size - union.len() as i64);
    }
    best
}

/// Colors the uncolored edges `t` of `pc`: computes the maximum-discrepancy
/// subset S of `t`; when disc(S) <= 0 a plain SDR finishes everything,
/// otherwise `subset_colorer` must validly color S, after which the rest is
/// completed by an SDR over the refreshed lists (guaranteed to exist when S
/// really had maximum discrepancy).
pub fn color_max_disc_then_extend<F>(
    pc: &mut PartialColoring,
    t: &[EdgeId],
    subset_colorer: F,
) -> Result<(), HallError>
where
    F: FnOnce(&mut PartialColoring, &[EdgeId]) -> Result<(), String>,
{
    let lists: Vec<Vec<ColorId>> = t
        .iter()
        .map(|&e| pc.available_colors_unchecked(e))
        .collect();
    let report = match max_discrepancy_set(&lists) {
        Some(r) => r,
        None => return Ok(()),
    };
    if report.disc <= 0 {
        let sdr = sdr_completion(&lists).ok_or(HallError::ExtensionFailed)?;
        for (&e, c) in t.iter().zip(sdr) {
            pc.assign(e, c)
                .map_err(|err| HallError::SubsetColorer(err.to_string()))?;
        }
        return Ok(());
    }
    let s: Vec<EdgeId> = report.subset.iter().map(|&i| t[i]).collect();
    subset_colorer(pc, &s).map_err(HallError::SubsetColorer)?;
    for &e in &s {
        if !pc.is_colored(e) {
            return Err(HallError::SubsetColorer(format!(
                "subset colorer left edge {e} uncolored"
            )));
        }
    }
    extend_by_sdr(pc, t)
}

/// Completes the remaining uncolored edges among `t` by an SDR over their
/// current available lists.
pub fn extend_by_sdr(pc: &mut PartialColoring, t: &[EdgeId]) -> Result<(), HallError> {
    let rest: Vec<EdgeId> = t.iter().copied().filter(|&e| !pc.is_colored(e)).collect();
    if rest.is_empty() {
        return Ok(());
    }
    let lists: Vec<Vec<ColorId>> = rest
        .iter()
        .map(|&e| pc.available_colors_unchecked(e))
        .collect();
    let sdr = sdr_completion(&lists).ok_or(HallError::ExtensionFailed)?;
    for (&e, c) in rest.iter().zip(sdr) {
        pc.assign(e, c)
            .map_err(|err| HallError::SubsetColorer(err.to_string()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{ListAssignment, PartialColoring};
    use crate::graph::MultiGraph;

    #[test]
    fn perfect_matching_on_three_lists() {
        let lists = vec![vec![1, 2], vec![2, 3], vec![1, 3]];
        let sdr = sdr_completion(&lists).unwrap();
        let mut sorted = sdr.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 3);
        for (list, c) in lists.iter().zip(&sdr) {
            assert!(list.contains(c));
        }
    }

    #[test]
    fn shared_singleton_fails() {
        assert_eq!(sdr_completion(&[vec![1], vec![1]]), None);
    }

    #[test]
    fn empty_instance() {
        assert_eq!(sdr_completion(&[]), Some(vec![]));
        let adj: Vec<Vec<usize>> = vec![];
        assert!(max_bipartite_matching(&adj, 0).is_empty());
    }

    #[test]
    fn matching_size_with_conflicting_lists() {
        let (adj, right) = super::lists_to_instance(&[vec![1], vec![1]]);
        let m = max_bipartite_matching(&adj, right.len());
        assert_eq!(m.iter().filter(|x| x.is_some()).count(), 1);
    }

    #[test]
    fn discrepancy_simple_cases() {
        // Three edges, all lists {1,2}: S = all three, disc = 1.
        let r = max_discrepancy_set(&[vec![1, 2], vec![1, 2], vec![1, 2]]).unwrap();
        assert_eq!(r.disc, 1);
        assert_eq!(r.subset, vec![0, 1, 2]);

        // Two singletons {1},{1}: disc = 1.
        let r = max_discrepancy_set(&[vec![1], vec![1]]).unwrap();
        assert_eq!(r.disc, 1);
        assert_eq!(r.subset, vec![0, 1]);
    }

    #[test]
    fn discrepancy_matches_brute_force_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=9);
            let palette = rng.gen_range(1..=8u32);
            let lists: Vec<Vec<ColorId>> = (0..n)
                .map(|_| {
                    let len = rng.gen_range(1..=palette);
                    let mut l: Vec<ColorId> = (0..palette).collect();
                    for i in (1..l.len()).rev() {
                        let j = rng.gen_range(0..=i);
                        l.swap(i, j);
                    }
                    l.truncate(len as usize);
                    l.sort_unstable();
                    l
                })
                .collect();
            let exact = max_discrepancy_set(&lists).unwrap();
            let brute = brute_force_max_discrepancy(&lists);
            assert_eq!(exact.disc, brute);
            // The reported subset attains the reported value.
            let mut union: Vec<ColorId> = exact
                .subset
                .iter()
                .flat_map(|&i| lists[i].iter().copied())
                .collect();
            union.sort_unstable();
            union.dedup();
            assert_eq!(exact.subset.len() as i64 - union.len() as i64, exact.disc);

            // Hall: SDR exists iff no positive discrepancy.
            assert_eq!(sdr_completion(&lists).is_some(), brute <= 0);
        }
    }

    #[test]
    fn extend_plain_sdr_when_disc_nonpositive() {
        let g = MultiGraph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let cg = g.conflict_graph();
        let lists =
            ListAssignment::new(vec![vec![1, 2, 3], vec![1, 2, 3], vec![1, 2, 3]]).unwrap();
        let mut pc = PartialColoring::new(&g, &cg, &lists).unwrap();
        color_max_disc_then_extend(&mut pc, &[0, 1, 2], |_, _| {
            Err("callback must not be called".into())
        })
        .unwrap();
        assert!(pc.is_complete());
    }

    #[test]
    fn adversarial_callback_surfaces_failure() {
        let g = MultiGraph::build(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let cg = g.conflict_graph();
        // Positive discrepancy forces the callback path.
        let lists = ListAssignment::new(vec![vec![1], vec![1], vec![1, 2, 3]]).unwrap();
        let mut pc = PartialColoring::new(&g, &cg, &lists).unwrap();
        let r = color_max_disc_then_extend(&mut pc, &[0, 1, 2], |_, _| Err("miscolor".into()));
        assert!(matches!(r, Err(HallError::SubsetColorer(_))));
    }
}
