//! Lower central series, nilpotence class, center and exponents.

use num_bigint::BigInt;

use crate::arith;
use crate::bounds::{BoundCheck, Context, Relation};
use crate::error::{Error, Result};
use crate::group::{ElementId, FiniteGroup, Subgroup};

/// `[H, K]`: the subgroup generated by all `[h, k]`.
pub fn commutator_subgroup(group: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let mut hit = vec![false; group.order()];
    for &x in h.elements() {
        for &y in k.elements() {
            hit[group.commutator(x, y).index()] = true;
        }
    }
    group.generated_subgroup(
        group
            .elements()
            .filter(|c| hit[c.index()] && !c.is_identity()),
    )
}

/// Smallest normal subgroup containing `gens`.
pub fn normal_closure(group: &FiniteGroup, gens: &[ElementId]) -> Subgroup {
    let mut hit = vec![false; group.order()];
    for &g in gens {
        for t in group.elements() {
            hit[group.conjugate(g, t).index()] = true;
        }
    }
    group.generated_subgroup(group.elements().filter(|x| hit[x.index()] && !x.is_identity()))
}

/// Greedy generators of `sub`, in ascending element order.
fn subgroup_generators(group: &FiniteGroup, sub: &Subgroup) -> Vec<ElementId> {
    let mut gens = Vec::new();
    let mut span = group.trivial_subgroup();
    for &x in sub.elements() {
        if span.len() == sub.len() {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = group.generated_subgroup(gens.iter().copied());
        }
    }
    gens
}

/// `[H, G]` for normal `H`: the normal closure of the commutators of
/// generators, which avoids touching all `|H| |G|` pairs.
fn commutator_with_whole(group: &FiniteGroup, h: &Subgroup, whole_gens: &[ElementId]) -> Subgroup {
    let mut comms: Vec<ElementId> = subgroup_generators(group, h)
        .into_iter()
        .flat_map(|x| whole_gens.iter().map(move |&y| (x, y)))
        .map(|(x, y)| group.commutator(x, y))
        .filter(|c| !c.is_identity())
        .collect();
    comms.sort_unstable();
    comms.dedup();
    normal_closure(group, &comms)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerCentralSeries {
    /// `G^1 = G, G^2, ..., G^(l+1) = 1`.
    pub terms: Vec<Subgroup>,
    /// Nilpotence class `l`, the number of nontrivial terms.
    pub class: u32,
}

impl LowerCentralSeries {
    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::len).collect()
    }

    /// `G^l`, the last nontrivial term (the trivial group for class 0).
    pub fn last_nontrivial(&self) -> &Subgroup {
        &self.terms[self.terms.len().saturating_sub(2)]
    }
}

/// Iterates `G^(i+1) = [G^i, G]` down to the trivial subgroup.
///
/// A descent that stalls on a nontrivial term means the group is not nilpotent.
pub fn lower_central_series(group: &FiniteGroup) -> Result<LowerCentralSeries> {
    let whole_gens = group.generating_set();
    let mut terms = vec![group.whole()];
    while !terms.last().unwrap().is_trivial() {
        let next = commutator_with_whole(group, terms.last().unwrap(), &whole_gens);
        if &next == terms.last().unwrap() {
            return Err(Error::NotNilpotent);
        }
        terms.push(next);
    }
    let class = (terms.len() - 1) as u32;
    Ok(LowerCentralSeries { terms, class })
}

pub fn center(group: &FiniteGroup) -> Subgroup {
    let gens = group.generating_set();
    let elems = group
        .elements()
        .filter(|&z| gens.iter().all(|&x| group.mul(z, x) == group.mul(x, z)))
        .collect();
    Subgroup::from_elements(group.order(), elems)
}

/// Least common multiple of the element orders of `sub`.
pub fn exponent(group: &FiniteGroup, sub: &Subgroup) -> u64 {
    sub.elements()
        .iter()
        .fold(1, |acc, &x| arith::lcm(acc, group.element_order(x)))
}

/// Checks that `exponent(G^l)` divides `p^floor(n / (l + 1))` for a p-group
/// of order `p^n` and class `l >= 2`.
pub fn check_lemma_orders(group: &FiniteGroup) -> Result<BoundCheck<BigInt>> {
    let (p, n) = group
        .prime_power_order()
        .ok_or_else(|| Error::Precondition(format!("order {} is not a prime power", group.order())))?;
    let series = lower_central_series(group)?;
    check_lemma_orders_with(group, p, n, &series)
}

pub(crate) fn check_lemma_orders_with(
    group: &FiniteGroup,
    p: u64,
    n: u32,
    series: &LowerCentralSeries,
) -> Result<BoundCheck<BigInt>> {
    let l = series.class;
    if l < 2 {
        return Err(Error::Precondition(format!("class {l} < 2")));
    }
    let exp = exponent(group, series.last_nontrivial());
    let bound = BigInt::from(p).pow(n / (l + 1));
    Ok(BoundCheck::new(
        "exponent(G^l) divides p^floor(n/(l+1))",
        BigInt::from(exp).into(),
        Relation::Divides,
        bound.into(),
        Context::new().with("p", p).with("n", n).with("l", l),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{realize, GroupSpec};

    fn r(text: &str) -> FiniteGroup {
        realize(&GroupSpec::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn derived_subgroups() {
        let ab = r("product(cyclic(4),cyclic(2))");
        assert!(commutator_subgroup(&ab, &ab.whole(), &ab.whole()).is_trivial());
        let d8 = r("dihedral(8)");
        let d = commutator_subgroup(&d8, &d8.whole(), &d8.whole());
        assert_eq!(d, d8.cyclic_subgroup(crate::group::ElementId(2)));
        let q8 = r("quaternion(8)");
        assert_eq!(commutator_subgroup(&q8, &q8.whole(), &q8.whole()).len(), 2);
    }

    #[test]
    fn generator_commutators_match_all_pairs() {
        for text in ["dihedral(32)", "heisenberg(5)", "product(quaternion(16),cyclic(4))", "modular(3,4)", "dihedral(6)"] {
            let g = r(text);
            let whole = g.whole();
            let gens = g.generating_set();
            let mut term = whole.clone();
            for _ in 0..5 {
                let slow = commutator_subgroup(&g, &term, &whole);
                assert_eq!(commutator_with_whole(&g, &term, &gens), slow, "{text}");
                term = slow;
            }
        }
    }

    #[test]
    fn series_examples() {
        let c8 = lower_central_series(&r("cyclic(8)")).unwrap();
        assert_eq!((c8.class, c8.orders()), (1, vec![8, 1]));
        let d16 = lower_central_series(&r("dihedral(16)")).unwrap();
        assert_eq!((d16.class, d16.orders()), (3, vec![16, 4, 2, 1]));
        let h3 = lower_central_series(&r("heisenberg(3)")).unwrap();
        assert_eq!((h3.class, h3.orders()), (2, vec![27, 3, 1]));
        let triv = lower_central_series(&FiniteGroup::trivial()).unwrap();
        assert_eq!(triv.class, 0);
    }

    #[test]
    fn non_nilpotent_is_detected() {
        // S3 = dihedral(6): the series stalls at the rotations
        assert!(matches!(lower_central_series(&r("dihedral(6)")), Err(Error::NotNilpotent)));
    }

    #[test]
    fn centers_and_exponents() {
        let ab = r("product(cyclic(4),cyclic(2))");
        assert_eq!(center(&ab), ab.whole());
        assert_eq!(exponent(&ab, &ab.whole()), 4);
        assert_eq!(exponent(&ab, &ab.trivial_subgroup()), 1);
        let d8 = r("dihedral(8)");
        assert_eq!(center(&d8).len(), 2);
        assert_eq!(center(&r("heisenberg(3)")).len(), 3);
        let d16 = r("dihedral(16)");
        let series = lower_central_series(&d16).unwrap();
        assert_eq!(exponent(&d16, &series.terms[1]), 4);
    }

    #[test]
    fn lemma_orders_examples() {
        for (text, exp, bound) in [("dihedral(16)", 2, 2), ("heisenberg(3)", 3, 3), ("quaternion(8)", 2, 2)] {
            let check = check_lemma_orders(&r(text)).unwrap();
            assert!(check.pass, "{text}");
            assert_eq!(check.lhs, BigInt::from(exp).into());
            assert_eq!(check.rhs, BigInt::from(bound).into());
        }
        assert!(matches!(
            check_lemma_orders(&r("product(cyclic(4),cyclic(2))")),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(check_lemma_orders(&r("dihedral(6)")), Err(Error::Precondition(_))));
    }
}
