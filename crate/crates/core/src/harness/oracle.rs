//! Brute-force `eta` and normal-subgroup sampling.
//!
//! [`oracle_eta`] shares nothing with [`crate::cyclic::eta`] beyond the group
//! table: it lists every cyclic subgroup as an element set, discards those
//! strictly contained in another, and counts conjugation orbits of whole sets.

use std::collections::BTreeSet;

use crate::cyclic::{cyclic_keys, subgroup_conjugacy_classes};
use crate::group::{FiniteGroup, Subgroup};
use crate::series::{center, lower_central_series, normal_closure};

pub fn oracle_eta(group: &FiniteGroup) -> usize {
    let cyclic: BTreeSet<Subgroup> = group.elements().map(|g| group.cyclic_subgroup(g)).collect();
    let mut by_size: Vec<&Subgroup> = cyclic.iter().collect();
    by_size.sort_by_key(|s| std::cmp::Reverse(s.len()));

    let survivors: Vec<Subgroup> = cyclic
        .iter()
        .filter(|c| {
            !by_size
                .iter()
                .take_while(|d| d.len() > c.len())
                .any(|d| d.len() % c.len() == 0 && c.is_subset_of(d))
        })
        .cloned()
        .collect();
    subgroup_conjugacy_classes(group, &survivors)
        .expect("maximal cyclic subgroups are permuted by conjugation")
        .len()
}

/// Normal subgroups to test quotients against: the trivial subgroup, the
/// lower central terms, the center, and the normal closure of every cyclic
/// subgroup. Sorted canonically, without duplicates.
pub fn sample_normal_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let mut out = BTreeSet::new();
    out.insert(group.trivial_subgroup());
    if let Ok(series) = lower_central_series(group) {
        out.extend(series.terms);
    }
    out.insert(center(group));

    // the closure of <g> depends only on the conjugacy class of <g>
    let keys = cyclic_keys(group, &group.element_orders());
    let mut done = vec![false; group.order()];
    for g in group.elements() {
        let key = keys[g.index()];
        if done[key.index()] {
            continue;
        }
        for t in group.elements() {
            done[keys[group.conjugate(key, t).index()].index()] = true;
        }
        out.insert(normal_closure(group, &[key]));
    }
    out.into_iter().collect()
}
