mod common;

use std::collections::{BTreeMap, BTreeSet};

use lamina_core::dispersion::{DispersionLaw, WaveVector};
use lamina_core::search::{
    build_interaction_graph, class_based_search, nonresonant_census, ResonanceCondition, SearchDomain,
};

use common::{rossby_triads, UnionFind};

fn wv(m: i64, n: i64) -> WaveVector {
    WaveVector::new(m as i32, n as i32)
}

#[test]
fn rossby_clusters_match_union_find() {
    let law = DispersionLaw::RossbySphere;
    let domain = SearchDomain::new(21).unwrap();
    let cond = ResonanceCondition::default_for(&law, 3).unwrap();
    let sets = class_based_search(&law, &cond, &domain).unwrap();
    let universe = domain.modes(&law);
    let graph = build_interaction_graph(sets.as_slice(), &universe);

    let index: BTreeMap<WaveVector, usize> = universe.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut uf = UnionFind::new(universe.len());
    let mut pairs = BTreeSet::new();
    for t in rossby_triads(21) {
        let ks: Vec<WaveVector> = t.iter().map(|&(m, n)| wv(m, n)).collect();
        for i in 0..3 {
            for j in i + 1..3 {
                uf.union(index[&ks[i]], index[&ks[j]]);
                pairs.insert((ks[i].min(ks[j]), ks[i].max(ks[j])));
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<WaveVector>> = BTreeMap::new();
    for (i, &k) in universe.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(k);
    }
    let expected: BTreeSet<Vec<WaveVector>> = groups.into_values().collect();
    let got: BTreeSet<Vec<WaveVector>> = graph.clusters.iter().cloned().collect();
    assert_eq!(got, expected);
    assert!(graph.cluster_sizes().windows(2).all(|w| w[0] >= w[1]));

    let edges: BTreeSet<(WaveVector, WaveVector)> = graph.edges.iter().map(|e| (e.a, e.b)).collect();
    assert_eq!(edges, pairs);
    for e in &graph.edges {
        for &s in &e.sets {
            let modes = sets.as_slice()[s as usize].modes();
            assert!(modes.contains(&e.a) && modes.contains(&e.b));
        }
    }
}

#[test]
fn census_is_domain_minus_active_modes() {
    for (law, arity, bound) in [
        (DispersionLaw::RossbySphere, 3, 15),
        (DispersionLaw::DriftInverseNorm, 3, 12),
        (DispersionLaw::GravityNormRoot, 4, 6),
        (DispersionLaw::CapillaryScalar, 3, 200),
    ] {
        let domain = SearchDomain::new(bound).unwrap();
        let cond = ResonanceCondition::default_for(&law, arity).unwrap();
        let census = nonresonant_census(&law, &cond, &domain).unwrap();
        let sets = class_based_search(&law, &cond, &domain).unwrap();
        let graph = build_interaction_graph(sets.as_slice(), &domain.modes(&law));
        let mut isolated = graph.isolated();
        isolated.sort();
        assert_eq!(census, isolated, "{law}");
        let active: BTreeSet<WaveVector> = sets.iter().flat_map(|s| s.modes().iter().copied()).collect();
        assert_eq!(census.len() + active.len(), domain.modes(&law).len(), "{law}");
    }
}
