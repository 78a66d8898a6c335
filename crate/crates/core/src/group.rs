//! Finite groups given by explicit multiplication tables.
//!
//! Elements are dense indices `0..order`; index 0 is always the identity.
//! Every [`FiniteGroup`] is validated on construction and immutable afterwards.

use std::collections::VecDeque;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::arith;
use crate::error::{Error, LawError, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for ElementId {
    fn from(v: u32) -> Self {
        ElementId(v)
    }
}

/// How thoroughly associativity is checked when a table is accepted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LawCheck {
    /// Orders up to this value are checked on every triple.
    pub exhaustive_limit: usize,
    /// Number of random triples checked above the limit.
    pub samples: usize,
    pub seed: u64,
}

impl Default for LawCheck {
    fn default() -> Self {
        LawCheck {
            exhaustive_limit: 512,
            samples: 10_000,
            seed: 0x5eed_e7a1,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<ElementId>,
    inverse: Vec<ElementId>,
    label: String,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major `order x order` table, checking the
    /// group laws with the default [`LawCheck`].
    pub fn from_table(label: impl Into<String>, order: usize, table: Vec<u32>) -> Result<Self, LawError> {
        Self::from_table_with(label, order, table, LawCheck::default())
    }

    pub fn from_table_with(
        label: impl Into<String>,
        order: usize,
        table: Vec<u32>,
        check: LawCheck,
    ) -> Result<Self, LawError> {
        assert!(order >= 1, "a group has at least one element");
        assert_eq!(table.len(), order * order, "table must be order x order");
        assert!(
            table.iter().all(|&v| (v as usize) < order),
            "table entries must lie in 0..order"
        );
        let table: Vec<ElementId> = table.into_iter().map(ElementId).collect();

        for x in 0..order {
            if table[x].index() != x || table[x * order].index() != x {
                return Err(LawError::NotIdentity);
            }
        }

        let mut inverse = vec![ElementId::IDENTITY; order];
        for x in 0..order {
            let row = &table[x * order..(x + 1) * order];
            let y = row
                .iter()
                .position(|e| e.is_identity())
                .ok_or(LawError::MissingInverse(x as u32))?;
            if !table[y * order + x].is_identity() {
                return Err(LawError::MissingInverse(x as u32));
            }
            inverse[x] = ElementId(y as u32);
        }

        let group = FiniteGroup {
            order,
            table,
            inverse,
            label: label.into(),
        };
        group.check_associativity(check)?;
        Ok(group)
    }

    fn check_associativity(&self, check: LawCheck) -> Result<(), LawError> {
        let n = self.order;
        let assoc = |x: usize, y: usize, z: usize| -> Result<(), LawError> {
            let (x, y, z) = (ElementId(x as u32), ElementId(y as u32), ElementId(z as u32));
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                Err(LawError::NotAssociative(x.0, y.0, z.0))
            } else {
                Ok(())
            }
        };
        if n <= check.exhaustive_limit {
            let t = &self.table;
            for x in 1..n {
                let row_x = &t[x * n..(x + 1) * n];
                for y in 1..n {
                    let row_y = &t[y * n..(y + 1) * n];
                    let xy = row_x[y].index();
                    let row_xy = &t[xy * n..(xy + 1) * n];
                    if let Some(z) = (0..n).find(|&z| row_xy[z] != row_x[row_y[z].index()]) {
                        assoc(x, y, z)?;
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(check.seed);
            for _ in 0..check.samples {
                assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            table: vec![ElementId::IDENTITY],
            inverse: vec![ElementId::IDENTITY],
            label: "cyclic(1)".into(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Row-major multiplication table.
    pub fn table(&self) -> &[ElementId] {
        &self.table
    }

    /// Validates a raw index against this group.
    pub fn element(&self, index: usize) -> Result<ElementId> {
        if index < self.order {
            Ok(ElementId(index as u32))
        } else {
            Err(Error::OutOfRange {
                index,
                order: self.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.order as u32).map(ElementId)
    }

    /// `x * y`. Panics if either index is out of range; see [`Self::try_mul`].
    #[inline]
    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        self.table[x.index() * self.order + y.index()]
    }

    pub fn try_mul(&self, x: ElementId, y: ElementId) -> Result<ElementId> {
        self.element(x.index())?;
        self.element(y.index())?;
        Ok(self.mul(x, y))
    }

    #[inline]
    pub fn inverse(&self, x: ElementId) -> ElementId {
        self.inverse[x.index()]
    }

    /// `x^k` by square-and-multiply; negative exponents go through the inverse.
    pub fn power(&self, x: ElementId, k: i64) -> ElementId {
        let mut base = if k < 0 { self.inverse(x) } else { x };
        let mut e = k.unsigned_abs();
        let mut acc = ElementId::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: ElementId) -> u64 {
        let mut k = 1;
        let mut y = x;
        while !y.is_identity() {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Orders of all elements, indexed by element.
    ///
    /// One power walk of `x` settles every power: `|x^k| = |x| / gcd(k, |x|)`.
    pub fn element_orders(&self) -> Vec<u64> {
        let mut orders = vec![0u64; self.order];
        let mut powers = Vec::new();
        for x in self.elements() {
            if orders[x.index()] != 0 {
                continue;
            }
            powers.clear();
            let mut y = x;
            loop {
                powers.push(y);
                if y.is_identity() {
                    break;
                }
                y = self.mul(y, x);
            }
            let m = powers.len() as u64;
            for (k, y) in (1..=m).zip(&powers) {
                orders[y.index()] = m / arith::gcd(k, m);
            }
        }
        orders
    }

    /// `t^-1 x t`.
    #[inline]
    pub fn conjugate(&self, x: ElementId, t: ElementId) -> ElementId {
        self.mul(self.mul(self.inverse(t), x), t)
    }

    /// `a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: ElementId, b: ElementId) -> ElementId {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inverse(ba), ab)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| (x + 1..n).all(|y| self.table[x * n + y] == self.table[y * n + x]))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order as u64;
        self.element_orders().contains(&n)
    }

    /// `(p, n)` with `|G| = p^n`, when the order is a nontrivial prime power.
    pub fn prime_power_order(&self) -> Option<(u64, u32)> {
        arith::prime_power(self.order as u64)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: self.elements().collect(),
            parent_order: self.order,
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            elements: vec![ElementId::IDENTITY],
            parent_order: self.order,
        }
    }

    /// Smallest subgroup containing `gens`.
    ///
    /// Only generators not already in the running closure are kept, so the
    /// working generating set stays logarithmic in the order.
    pub fn generated_subgroup<I>(&self, gens: I) -> Subgroup
    where
        I: IntoIterator<Item = ElementId>,
    {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut elems = vec![ElementId::IDENTITY];
        let mut essential: Vec<ElementId> = Vec::new();
        for g in gens {
            if member[g.index()] {
                continue;
            }
            essential.push(g);
            let mut queue: VecDeque<ElementId> = elems.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for &s in &essential {
                    let y = self.mul(x, s);
                    if !member[y.index()] {
                        member[y.index()] = true;
                        elems.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        elems.sort_unstable();
        Subgroup {
            elements: elems,
            parent_order: self.order,
        }
    }

    /// The cyclic subgroup `<x>`, listed by walking powers.
    pub fn cyclic_subgroup(&self, x: ElementId) -> Subgroup {
        let mut elems = vec![ElementId::IDENTITY];
        let mut y = x;
        while !y.is_identity() {
            elems.push(y);
            y = self.mul(y, x);
        }
        elems.sort_unstable();
        Subgroup {
            elements: elems,
            parent_order: self.order,
        }
    }

    /// True iff `t^-1 h t` lies in `h`'s subgroup for every `h` in `sub` and
    /// every `t` in the group.
    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        let mask = sub.mask();
        self.elements().all(|t| {
            sub.elements()
                .iter()
                .all(|&h| mask[self.conjugate(h, t).index()])
        })
    }

    /// Coset group `G/N` together with the natural projection.
    ///
    /// Cosets are numbered by their minimal member, so the identity coset is 0.
    pub fn quotient(&self, normal: &Subgroup) -> Result<Quotient> {
        if normal.parent_order() != self.order || !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let n = self.order;
        let mut projection = vec![u32::MAX; n];
        let mut reps: Vec<ElementId> = Vec::with_capacity(n / normal.len());
        for x in self.elements() {
            if projection[x.index()] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            for &k in normal.elements() {
                projection[self.mul(x, k).index()] = idx;
            }
            reps.push(x);
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(projection[self.mul(a, b).index()]);
            }
        }
        let label = format!("{}/N{}", self.label, normal.len());
        let group = FiniteGroup::from_table(label, m, table)?;
        Ok(Quotient {
            group,
            projection: projection.into_iter().map(ElementId).collect(),
        })
    }

    /// Re-indexes a subgroup as a standalone group; element `i` of the result
    /// is the `i`-th smallest member of `sub`.
    pub fn subgroup_as_group(&self, sub: &Subgroup) -> FiniteGroup {
        let m = sub.len();
        let mut position = vec![u32::MAX; self.order];
        for (i, &h) in sub.elements().iter().enumerate() {
            position[h.index()] = i as u32;
        }
        let mut table = Vec::with_capacity(m * m);
        let mut inverse = Vec::with_capacity(m);
        for &a in sub.elements() {
            for &b in sub.elements() {
                table.push(ElementId(position[self.mul(a, b).index()]));
            }
            inverse.push(ElementId(position[self.inverse(a).index()]));
        }
        debug_assert!(table.iter().all(|e| e.0 != u32::MAX), "subgroup not closed");
        FiniteGroup {
            order: m,
            table,
            inverse,
            label: format!("sub({}, {})", self.label, m),
        }
    }

    /// A small generating set, built greedily in index order.
    pub fn generating_set(&self) -> Vec<ElementId> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for x in self.elements() {
            if current.len() == self.order {
                break;
            }
            if !current.contains(x) {
                gens.push(x);
                current = self.generated_subgroup(gens.iter().copied());
            }
        }
        gens
    }
}

/// A subgroup in canonical form: ascending element ids of its parent group.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subgroup {
    elements: Vec<ElementId>,
    parent_order: usize,
}

impl Subgroup {
    /// Wraps an element list, sorting and deduplicating it. Closure is the
    /// caller's responsibility; see [`FiniteGroup::generated_subgroup`].
    pub fn from_elements(parent_order: usize, mut elements: Vec<ElementId>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Subgroup {
            elements,
            parent_order,
        }
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.len() <= other.len() && self.elements.iter().all(|&x| other.contains(x))
    }

    /// Membership bitmap over the parent's elements.
    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.parent_order];
        for &x in &self.elements {
            mask[x.index()] = true;
        }
        mask
    }

    /// `t^-1 S t` in canonical form.
    pub fn conjugate_by(&self, group: &FiniteGroup, t: ElementId) -> Subgroup {
        Subgroup::from_elements(
            self.parent_order,
            self.elements.iter().map(|&h| group.conjugate(h, t)).collect(),
        )
    }
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// Image of each parent element in `group`.
    pub projection: Vec<ElementId>,
}

impl Quotient {
    pub fn project(&self, x: ElementId) -> ElementId {
        self.projection[x.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(m: usize) -> FiniteGroup {
        let table = (0..m).flat_map(|i| (0..m).map(move |j| ((i + j) % m) as u32)).collect();
        FiniteGroup::from_table(format!("cyclic({m})"), m, table).unwrap()
    }

    // r^i s^j at index j*m + i
    fn dihedral(order: usize) -> FiniteGroup {
        let m = order / 2;
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            let (i, j) = (x % m, x / m);
            for y in 0..order {
                let (k, l) = (y % m, y / m);
                let rot = if j == 0 { (i + k) % m } else { (i + m - k) % m };
                table.push((((j + l) % 2) * m + rot) as u32);
            }
        }
        FiniteGroup::from_table(format!("dihedral({order})"), order, table).unwrap()
    }

    #[test]
    fn element_orders_match_single_walks() {
        for g in [cyclic(12), dihedral(16), dihedral(12)] {
            let direct: Vec<u64> = g.elements().map(|x| g.element_order(x)).collect();
            assert_eq!(g.element_orders(), direct, "{}", g.label());
        }
    }

    #[test]
    fn cyclic_products_and_powers() {
        let c4 = cyclic(4);
        assert_eq!(c4.mul(ElementId(1), ElementId(1)), ElementId(2));
        assert_eq!(c4.mul(ElementId(3), ElementId(2)), ElementId(1));
        let c8 = cyclic(8);
        assert_eq!(c8.power(ElementId(1), 2), ElementId(2));
        assert_eq!(c8.power(ElementId(3), -1), ElementId(5));
        assert_eq!(c8.power(ElementId(5), 0), ElementId(0));
        assert_eq!(cyclic(9).element_order(ElementId(1)), 9);
        assert_eq!(c8.element_order(ElementId(0)), 1);
        for x in c8.elements() {
            assert_eq!(c8.mul(ElementId(0), x), x);
        }
    }

    #[test]
    fn out_of_range_is_usage_error() {
        let c4 = cyclic(4);
        assert!(matches!(
            c4.try_mul(ElementId(4), ElementId(0)),
            Err(Error::OutOfRange { index: 4, order: 4 })
        ));
        assert!(c4.element(4).is_err());
    }

    #[test]
    fn dihedral_conventions() {
        let d8 = dihedral(8);
        let r = ElementId(1);
        let s = ElementId(4);
        assert_eq!(d8.element_order(r), 4);
        // r^-1 s r = s r^2 = r^2 s, index 4 + 2
        assert_eq!(d8.conjugate(s, r), ElementId(6));
        assert_eq!(d8.mul(s, d8.power(r, 2)), ElementId(6));
        assert_eq!(d8.generated_subgroup([ElementId(2), s]).len(), 4);
        assert!(!d8.is_normal(&d8.cyclic_subgroup(s)));
        assert!(d8.is_normal(&d8.trivial_subgroup()));
        assert!(d8.is_normal(&d8.whole()));
    }

    #[test]
    fn generated_subgroup_edges() {
        let c8 = cyclic(8);
        assert_eq!(c8.generated_subgroup([]).elements(), &[ElementId(0)]);
        let sub = c8.generated_subgroup([ElementId(2)]);
        assert_eq!(sub.elements(), &[0, 2, 4, 6].map(ElementId));
        assert_eq!(sub, c8.cyclic_subgroup(ElementId(6)));
    }

    #[test]
    fn commutators_and_conjugates_in_abelian_groups() {
        let c6 = cyclic(6);
        for a in c6.elements() {
            assert!(c6.commutator(a, a).is_identity());
            for b in c6.elements() {
                assert!(c6.commutator(a, b).is_identity());
                assert_eq!(c6.conjugate(a, b), a);
            }
            assert_eq!(c6.conjugate(a, ElementId(0)), a);
        }
    }

    #[test]
    fn quotients() {
        let d8 = dihedral(8);
        let id = d8.quotient(&d8.trivial_subgroup()).unwrap();
        assert_eq!(id.group.order(), 8);
        let mut images: Vec<_> = id.projection.clone();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 8);

        let top = d8.quotient(&d8.whole()).unwrap();
        assert_eq!(top.group.order(), 1);

        let center = d8.generated_subgroup([ElementId(2)]);
        let q = d8.quotient(&center).unwrap();
        assert_eq!(q.group.order(), 4);
        assert_eq!(q.project(ElementId(0)), ElementId(0));
        for x in q.group.elements().skip(1) {
            assert_eq!(q.group.element_order(x), 2);
        }

        let refl = d8.cyclic_subgroup(ElementId(4));
        assert!(matches!(d8.quotient(&refl), Err(Error::NotNormal)));
    }

    #[test]
    fn broken_tables_are_rejected() {
        // row 0 permuted
        let bad = vec![1, 0, 0, 1];
        assert_eq!(FiniteGroup::from_table("x", 2, bad).unwrap_err(), LawError::NotIdentity);
        // identity row/column fine, but row 1 never reaches the identity
        let bad = vec![0, 1, 2, 1, 1, 2, 2, 2, 0];
        assert_eq!(FiniteGroup::from_table("x", 3, bad).unwrap_err(), LawError::MissingInverse(1));
        // a non-associative loop of order 5 with identity and inverses
        let loop5 = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(matches!(
            FiniteGroup::from_table("x", 5, loop5),
            Err(LawError::NotAssociative(..))
        ));
    }

    #[test]
    fn subgroup_as_group_and_generators() {
        let d8 = dihedral(8);
        let rot = d8.cyclic_subgroup(ElementId(1));
        let g = d8.subgroup_as_group(&rot);
        assert_eq!(g.order(), 4);
        assert!(g.is_cyclic());
        let gens = d8.generating_set();
        assert_eq!(d8.generated_subgroup(gens.iter().copied()).len(), 8);
        assert!(gens.len() <= 3);
    }
}
