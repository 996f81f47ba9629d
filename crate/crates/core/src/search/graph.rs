use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::dispersion::{DispersionLaw, WaveVector};
use crate::error::Result;

use super::{brute_force_search, class_based_search, ResonanceCondition, ResonantSet, SearchDomain};

/// Undirected edge between two modes that share at least one solution.
/// `sets` lists the indices of those solutions in the input slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: WaveVector,
    pub b: WaveVector,
    pub sets: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct InteractionGraph {
    pub nodes: Vec<WaveVector>,
    pub edges: Vec<Edge>,
    /// Connected components, largest first, each sorted.
    pub clusters: Vec<Vec<WaveVector>>,
}

impl InteractionGraph {
    pub fn isolated(&self) -> Vec<WaveVector> {
        self.clusters.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect()
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        self.clusters.iter().map(Vec::len).collect()
    }
}

/// Graph over `universe` plus every mode that occurs in `sets`.
pub fn build_interaction_graph(sets: &[ResonantSet], universe: &[WaveVector]) -> InteractionGraph {
    let mut nodes: BTreeSet<WaveVector> = universe.iter().copied().collect();
    let mut edges: BTreeMap<(WaveVector, WaveVector), Vec<u32>> = BTreeMap::new();
    for (s, set) in sets.iter().enumerate() {
        let modes = set.modes();
        nodes.extend(modes.iter().copied());
        for (i, &a) in modes.iter().enumerate() {
            for &b in &modes[i + 1..] {
                if a == b {
                    continue;
                }
                let key = if a < b { (a, b) } else { (b, a) };
                let tags = edges.entry(key).or_default();
                if tags.last() != Some(&(s as u32)) {
                    tags.push(s as u32);
                }
            }
        }
    }
    let nodes: Vec<WaveVector> = nodes.into_iter().collect();
    let position = |k: &WaveVector| nodes.binary_search(k).expect("node present");
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for &(a, b) in edges.keys() {
        let (i, j) = (position(&a), position(&b));
        adjacency[i].push(j);
        adjacency[j].push(i);
    }
    let mut seen = vec![false; nodes.len()];
    let mut clusters = Vec::new();
    for start in 0..nodes.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut cluster = Vec::new();
        while let Some(i) = queue.pop_front() {
            cluster.push(nodes[i]);
            for &j in &adjacency[i] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        cluster.sort();
        clusters.push(cluster);
    }
    clusters.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
    let edges = edges.into_iter().map(|((a, b), sets)| Edge { a, b, sets }).collect();
    InteractionGraph { nodes, edges, clusters }
}

/// Domain modes that take part in no solution of the given conditions.
pub fn nonresonant_census(
    law: &DispersionLaw,
    condition: &ResonanceCondition,
    domain: &SearchDomain,
) -> Result<Vec<WaveVector>> {
    let sets = if law.is_exact() {
        class_based_search(law, condition, domain)?
    } else {
        brute_force_search(law, condition, domain)?
    };
    let active: BTreeSet<WaveVector> = sets.iter().flat_map(|s| s.modes().iter().copied()).collect();
    Ok(domain.modes(law).into_iter().filter(|k| !active.contains(k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{certify, Signs};

    fn wv(m: i32, n: i32) -> WaveVector {
        WaveVector::new(m, n)
    }

    #[test]
    fn empty_input_isolates_everything() {
        let universe = [wv(1, 1), wv(1, 2), wv(2, 2)];
        let g = build_interaction_graph(&[], &universe);
        assert_eq!(g.nodes.len(), 3);
        assert!(g.edges.is_empty());
        assert_eq!(g.cluster_sizes(), vec![1, 1, 1]);
    }

    #[test]
    fn one_triad_one_cluster() {
        let law = DispersionLaw::RossbySphere;
        let t = certify(&law, &[wv(4, 12), wv(5, 14), wv(9, 13)], Signs::triad()).unwrap();
        let g = build_interaction_graph(&[t], &[wv(1, 1)]);
        assert_eq!(g.edges.len(), 3);
        assert_eq!(g.cluster_sizes(), vec![3, 1]);
        assert_eq!(g.isolated(), vec![wv(1, 1)]);
        assert!(g.edges.iter().all(|e| e.sets == vec![0]));
    }

    #[test]
    fn capillary_modes_are_all_nonresonant() {
        let law = DispersionLaw::CapillaryScalar;
        let cond = ResonanceCondition::default_for(&law, 3).unwrap();
        let domain = SearchDomain::new(100).unwrap();
        assert_eq!(nonresonant_census(&law, &cond, &domain).unwrap(), domain.modes(&law));
    }
}
