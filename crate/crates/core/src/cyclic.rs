//! Maximal cyclic subgroups, their conjugacy classes, and `eta(G)`, the number
//! of those classes.
//!
//! Maximality is decided two ways. The generic route asks whether `<g>` sits
//! strictly inside some other cyclic subgroup. In a p-group `<g>` is maximal
//! cyclic exactly when `g` is not a p-th power, which gives the shortcut route.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{ElementId, FiniteGroup, Subgroup};

/// The image of `g -> g^p`, ascending.
pub fn pth_power_set(group: &FiniteGroup, p: u64) -> Vec<ElementId> {
    let mut hit = vec![false; group.order()];
    for g in group.elements() {
        hit[group.power(g, p as i64).index()] = true;
    }
    mask_to_elements(&hit)
}

fn mask_to_elements(mask: &[bool]) -> Vec<ElementId> {
    mask.iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(i, _)| ElementId(i as u32))
        .collect()
}

/// Generic test: `<g>` is maximal cyclic iff no `h` has `<g>` strictly inside `<h>`.
///
/// Scans every `h`, so this is quadratic; use [`maximal_generator_flags`] for
/// whole-group work.
pub fn is_maximal_cyclic(group: &FiniteGroup, g: ElementId) -> bool {
    if g.is_identity() {
        return group.order() == 1;
    }
    let og = group.element_order(g);
    group.elements().all(|h| {
        if group.element_order(h) <= og {
            return true;
        }
        let mut y = h;
        while !y.is_identity() {
            if y == g {
                return false;
            }
            y = group.mul(y, h);
        }
        true
    })
}

/// p-group test: `<g>` is maximal cyclic iff `g` is not a p-th power.
pub fn is_maximal_cyclic_by_powers(group: &FiniteGroup, p: u64, g: ElementId) -> bool {
    pth_power_set(group, p).binary_search(&g).is_err()
}

/// For every element, whether it generates a maximal cyclic subgroup.
///
/// Same criterion as [`is_maximal_cyclic`], evaluated in one sweep: walking the
/// powers of each `h` marks every power of strictly smaller order.
pub fn maximal_generator_flags(group: &FiniteGroup) -> Vec<bool> {
    let orders = group.element_orders();
    let mut maximal = vec![true; group.order()];
    for h in group.elements() {
        let oh = orders[h.index()];
        let mut y = h;
        while !y.is_identity() {
            if orders[y.index()] < oh {
                maximal[y.index()] = false;
            }
            y = group.mul(y, h);
        }
    }
    if group.order() > 1 {
        maximal[0] = false;
    }
    maximal
}

/// Shortcut flags for a p-group: complement of the p-th power set.
pub fn maximal_generator_flags_by_powers(group: &FiniteGroup, p: u64) -> Vec<bool> {
    let mut flags = vec![true; group.order()];
    for g in group.elements() {
        flags[group.power(g, p as i64).index()] = false;
    }
    flags
}

/// Maps every element to the least-index generator of `<x>`, which serves as
/// the key of that cyclic subgroup.
pub(crate) fn cyclic_keys(group: &FiniteGroup, orders: &[u64]) -> Vec<ElementId> {
    let n = group.order();
    let mut key = vec![ElementId(u32::MAX); n];
    for g in group.elements() {
        if key[g.index()].0 != u32::MAX {
            continue;
        }
        let og = orders[g.index()];
        let mut y = g;
        let mut k = 1u64;
        loop {
            if num_integer::gcd(k, og) == 1 {
                key[y.index()] = g;
            }
            if k == og {
                break;
            }
            y = group.mul(y, g);
            k += 1;
        }
    }
    key
}

/// All maximal cyclic subgroups in canonical order.
pub fn maximal_cyclic_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let flags = maximal_generator_flags(group);
    let keys = cyclic_keys(group, &group.element_orders());
    let mut subs: Vec<Subgroup> = group
        .elements()
        .filter(|&g| flags[g.index()] && keys[g.index()] == g)
        .map(|g| group.cyclic_subgroup(g))
        .collect();
    subs.sort();
    subs
}

/// Partitions `subs` into orbits under `H -> t^-1 H t`.
///
/// Each class is sorted canonically, and classes are ordered by their least
/// member. Fails if a conjugate of some member is missing from `subs`.
pub fn subgroup_conjugacy_classes(group: &FiniteGroup, subs: &[Subgroup]) -> Result<Vec<Vec<Subgroup>>> {
    let index: HashMap<&Subgroup, usize> = subs.iter().enumerate().map(|(i, s)| (s, i)).collect();
    // orbits under <gens> are orbits under G
    let gens = group.generating_set();
    let mut class_of = vec![usize::MAX; subs.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..subs.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut members = vec![start];
        let mut next = 0;
        while next < members.len() {
            let current = &subs[members[next]];
            next += 1;
            for &t in &gens {
                let conj = current.conjugate_by(group, t);
                let j = *index.get(&conj).ok_or_else(|| {
                    Error::Inconsistent("subgroup list is not closed under conjugation".into())
                })?;
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    members.push(j);
                }
            }
        }
        classes.push(members);
    }
    let mut out: Vec<Vec<Subgroup>> = classes
        .into_iter()
        .map(|members| {
            let mut c: Vec<Subgroup> = members.into_iter().map(|i| subs[i].clone()).collect();
            c.sort();
            c
        })
        .collect();
    out.sort_by(|a, b| a[0].cmp(&b[0]));
    Ok(out)
}

/// One conjugacy class of maximal cyclic subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicClass {
    /// Canonically sorted; the first member is the representative.
    pub members: Vec<Subgroup>,
    /// Least-index generator of the representative.
    pub generator: ElementId,
    /// Order of the representative.
    pub subgroup_order: usize,
}

impl CyclicClass {
    pub fn representative(&self) -> &Subgroup {
        &self.members[0]
    }
}

#[derive(Clone, Debug)]
pub struct MaximalCyclicClasses {
    pub classes: Vec<CyclicClass>,
}

impl MaximalCyclicClasses {
    pub fn eta(&self) -> usize {
        self.classes.len()
    }
}

/// The classes of maximal cyclic subgroups, fully materialized.
pub fn maximal_cyclic_classes(group: &FiniteGroup) -> MaximalCyclicClasses {
    let subs = maximal_cyclic_subgroups(group);
    let orders = group.element_orders();
    let classes = subgroup_conjugacy_classes(group, &subs)
        .expect("maximal cyclic subgroups are permuted by conjugation")
        .into_iter()
        .map(|members| {
            let rep = &members[0];
            let generator = rep
                .elements()
                .iter()
                .copied()
                .find(|g| orders[g.index()] == rep.len() as u64)
                .expect("cyclic subgroup has a generator");
            CyclicClass {
                generator,
                subgroup_order: rep.len(),
                members,
            }
        })
        .collect();
    MaximalCyclicClasses { classes }
}

/// Number of conjugacy classes of maximal cyclic subgroups.
///
/// Uses the generic maximality sweep; a cyclic group gives 1.
pub fn eta(group: &FiniteGroup) -> usize {
    count_classes(group, &maximal_generator_flags(group))
}

/// `eta` via the p-th power shortcut. Only meaningful for p-groups.
pub fn eta_by_powers(group: &FiniteGroup, p: u64) -> usize {
    count_classes(group, &maximal_generator_flags_by_powers(group, p))
}

/// Counts conjugation orbits on the cyclic subgroups generated by flagged
/// elements. Conjugation maps generators to generators, so the orbit of a
/// subgroup is read off from the keys of the conjugates of one generator.
fn count_classes(group: &FiniteGroup, flags: &[bool]) -> usize {
    if group.order() == 1 {
        return 1;
    }
    let keys = cyclic_keys(group, &group.element_orders());
    let mut seen = vec![false; group.order()];
    let mut classes = 0;
    for g in group.elements() {
        if !flags[g.index()] || keys[g.index()] != g || seen[g.index()] {
            continue;
        }
        classes += 1;
        for t in group.elements() {
            seen[keys[group.conjugate(g, t).index()].index()] = true;
        }
    }
    classes
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    /// The group is cyclic: its only maximal cyclic subgroup is itself, which
    /// is not a proper subgroup.
    pub degenerate: bool,
    pub is_cover: bool,
    pub is_irredundant: bool,
    pub components: Vec<Subgroup>,
    /// For each component, its least element lying in no other component.
    pub witnesses: Vec<Option<ElementId>>,
}

/// Checks that the maximal cyclic subgroups cover the group and that none of
/// them can be dropped.
pub fn check_cyclic_cover(group: &FiniteGroup) -> CoverReport {
    let components = maximal_cyclic_subgroups(group);
    let mut multiplicity = vec![0u32; group.order()];
    for c in &components {
        for &x in c.elements() {
            multiplicity[x.index()] += 1;
        }
    }
    let is_cover = multiplicity.iter().all(|&m| m > 0);
    let witnesses: Vec<Option<ElementId>> = components
        .iter()
        .map(|c| c.elements().iter().copied().find(|x| multiplicity[x.index()] == 1))
        .collect();
    let is_irredundant = witnesses.iter().all(Option::is_some);
    CoverReport {
        degenerate: components.len() == 1 && components[0].len() == group.order(),
        is_cover,
        is_irredundant,
        components,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{realize, GroupSpec};

    fn r(text: &str) -> FiniteGroup {
        realize(&GroupSpec::parse(text).unwrap()).unwrap()
    }

    fn ids(v: &[u32]) -> Vec<ElementId> {
        v.iter().map(|&i| ElementId(i)).collect()
    }

    #[test]
    fn power_sets() {
        assert_eq!(pth_power_set(&r("cyclic(4)"), 2), ids(&[0, 2]));
        assert_eq!(pth_power_set(&r("product(cyclic(2),cyclic(2))"), 2), ids(&[0]));
        assert_eq!(pth_power_set(&r("heisenberg(3)"), 3), ids(&[0]));
    }

    #[test]
    fn maximality_examples() {
        let c8 = r("cyclic(8)");
        assert!(is_maximal_cyclic(&c8, ElementId(1)));
        assert!(!is_maximal_cyclic(&c8, ElementId(2)));
        assert!(is_maximal_cyclic_by_powers(&c8, 2, ElementId(1)));
        assert!(!is_maximal_cyclic_by_powers(&c8, 2, ElementId(2)));
        let d8 = r("dihedral(8)");
        for s in 4..8 {
            assert!(is_maximal_cyclic(&d8, ElementId(s)));
            assert!(is_maximal_cyclic_by_powers(&d8, 2, ElementId(s)));
        }
    }

    #[test]
    fn sweep_matches_per_element_test() {
        for text in ["dihedral(16)", "quaternion(16)", "product(cyclic(4),cyclic(2))", "cyclic(6)", "modular(3,3)"] {
            let g = r(text);
            let flags = maximal_generator_flags(&g);
            for x in g.elements() {
                assert_eq!(flags[x.index()], is_maximal_cyclic(&g, x), "{text} at {x}");
            }
        }
    }

    #[test]
    fn maximal_subgroup_lists() {
        let c9 = r("cyclic(9)");
        assert_eq!(maximal_cyclic_subgroups(&c9), vec![c9.whole()]);
        let v4 = maximal_cyclic_subgroups(&r("product(cyclic(2),cyclic(2))"));
        assert_eq!(v4.len(), 3);
        assert!(v4.iter().all(|s| s.len() == 2));
        let q8 = r("quaternion(8)");
        let subs = maximal_cyclic_subgroups(&q8);
        assert_eq!(subs.len(), 3);
        assert!(subs.iter().all(|s| s.len() == 4 && q8.is_normal(s)));
    }

    #[test]
    fn conjugacy_classes_of_subgroups() {
        let d8 = r("dihedral(8)");
        let refl: Vec<Subgroup> = (4..8).map(|s| d8.cyclic_subgroup(ElementId(s))).collect();
        let classes = subgroup_conjugacy_classes(&d8, &refl).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.len() == 2));

        let q8 = r("quaternion(8)");
        let classes = subgroup_conjugacy_classes(&q8, &maximal_cyclic_subgroups(&q8)).unwrap();
        assert_eq!(classes.len(), 3);

        let ab = r("product(cyclic(4),cyclic(2))");
        let classes = subgroup_conjugacy_classes(&ab, &maximal_cyclic_subgroups(&ab)).unwrap();
        assert!(classes.iter().all(|c| c.len() == 1));

        // a single reflection subgroup is not conjugation-closed
        assert!(matches!(
            subgroup_conjugacy_classes(&d8, &refl[..1]),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(&r("cyclic(27)")), 1);
        assert_eq!(eta(&r("dihedral(8)")), 3);
        assert_eq!(eta(&r("quaternion(8)")), 3);
        assert_eq!(eta(&r("product(cyclic(4),cyclic(2))")), 4);
        assert_eq!(eta(&r("heisenberg(3)")), 5);
        assert_eq!(eta_by_powers(&r("heisenberg(3)"), 3), 5);
        let classes = maximal_cyclic_classes(&r("heisenberg(3)"));
        assert_eq!(classes.eta(), 5);
        let mut sizes: Vec<usize> = classes.classes.iter().map(|c| c.members.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 3, 3, 3]);
        assert_eq!(eta(&FiniteGroup::trivial()), 1);
    }

    #[test]
    fn covers() {
        let v4 = check_cyclic_cover(&r("product(cyclic(2),cyclic(2))"));
        assert!(v4.is_cover && v4.is_irredundant && !v4.degenerate);
        let d16 = check_cyclic_cover(&r("dihedral(16)"));
        assert!(d16.is_cover && d16.is_irredundant && !d16.degenerate);
        assert_eq!(d16.components.len(), 9);
        let c8 = check_cyclic_cover(&r("cyclic(8)"));
        assert!(c8.degenerate && c8.is_cover);
    }
}
