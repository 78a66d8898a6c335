//! Turns a [`GroupSpec`] into an explicit multiplication table.
//!
//! Indexing conventions (fixed, so element ids are reproducible):
//!
//! - `cyclic(m)`: element `i` is `g^i`.
//! - `product(A, B, ...)`: lexicographic tuples, `(a, b)` at `a * |B| + b`.
//! - `dihedral(2m)`: `r^i s^j` at `j * m + i`, with `r^m = s^2 = 1`, `s r s = r^-1`.
//! - `quaternion(2^k)`: `a^i b^j` at `j * 2^(k-1) + i`, with `b^2 = a^(2^(k-2))`,
//!   `b^-1 a b = a^-1`.
//! - `semidihedral(2^k)`: same indexing, `b^2 = 1`, `b^-1 a b = a^(2^(k-2) - 1)`.
//! - `heisenberg(p)`: unitriangular matrices `[[1, x, z], [0, 1, y], [0, 0, 1]]`
//!   over `F_p`, at `x p^2 + y p + z`.
//! - `modular(p, k)`: `a^i b^j` at `j * p^(k-1) + i`, with `b^p = 1`,
//!   `b^-1 a b = a^(1 + p^(k-2))`.

use std::path::Path;

use super::gtbl;
use super::spec::GroupSpec;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub const DEFAULT_MAX_ORDER: u64 = 5000;

pub fn realize(spec: &GroupSpec) -> Result<FiniteGroup> {
    realize_with_limit(spec, DEFAULT_MAX_ORDER)
}

/// Realizes `spec`, refusing anything whose order exceeds `max_order`.
pub fn realize_with_limit(spec: &GroupSpec, max_order: u64) -> Result<FiniteGroup> {
    spec.validate()?;
    if let Some(order) = spec.order() {
        if order > max_order as u128 {
            return Err(Error::OrderTooLarge {
                order,
                max: max_order,
            });
        }
    }
    let group = build(spec, max_order)?;
    let label = spec.to_string();
    Ok(group.with_label(label))
}

fn build(spec: &GroupSpec, max_order: u64) -> Result<FiniteGroup> {
    Ok(match *spec {
        GroupSpec::Cyclic(m) => cyclic(m as usize),
        GroupSpec::Dihedral(order) => {
            let m = order / 2;
            metacyclic(m, 2, m - 1, 0)
        }
        GroupSpec::Quaternion(order) => {
            let m = order / 2;
            metacyclic(m, 2, m - 1, m / 2)
        }
        GroupSpec::Semidihedral(order) => {
            let m = order / 2;
            metacyclic(m, 2, m / 2 - 1, 0)
        }
        GroupSpec::Modular { p, k } => {
            let m = p.pow(k - 1);
            metacyclic(m, p, 1 + p.pow(k - 2), 0)
        }
        GroupSpec::Heisenberg(p) => heisenberg(p as usize),
        GroupSpec::Product(ref parts) => {
            let groups = parts
                .iter()
                .map(|s| build(s, max_order))
                .collect::<Result<Vec<_>>>()?;
            direct_product(&groups)
        }
        GroupSpec::Table(ref path) => gtbl::read_table_limited(Path::new(path), max_order)?,
    })
}

fn from_builder_table(order: usize, table: Vec<u32>) -> FiniteGroup {
    FiniteGroup::from_table("", order, table).expect("builder tables satisfy the group laws")
}

pub fn cyclic(m: usize) -> FiniteGroup {
    let mut table = Vec::with_capacity(m * m);
    for i in 0..m {
        table.extend((0..m).map(|j| ((i + j) % m) as u32));
    }
    from_builder_table(m, table)
}

/// Direct product with lexicographic indexing.
pub fn direct_product(factors: &[FiniteGroup]) -> FiniteGroup {
    match factors {
        [] => FiniteGroup::trivial(),
        [only] => only.clone(),
        [first, rest @ ..] => {
            // intermediate products stay raw so only the result is validated
            let raw = |g: &FiniteGroup| g.table().iter().map(|e| e.0).collect::<Vec<u32>>();
            let (table, n) = rest
                .iter()
                .fold((raw(first), first.order()), |(t, n), g| pair_product(&t, n, g));
            from_builder_table(n, table)
        }
    }
}

/// Table of `A x B` from the raw table of `A`.
fn pair_product(a: &[u32], na: usize, b: &FiniteGroup) -> (Vec<u32>, usize) {
    let nb = b.order();
    let bt = b.table();
    let n = na * nb;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..n {
            let (ya, yb) = (y / nb, y % nb);
            let za = a[xa * na + ya] as usize;
            let zb = bt[xb * nb + yb].index();
            table.push((za * nb + zb) as u32);
        }
    }
    (table, n)
}

/// The group of pairs `a^i b^j` (`i mod m`, `j mod q`) with `b^-1 a b = a^r`
/// and `b^q = a^c`, stored at `j * m + i`.
///
/// Requires `r^q = 1` and `c r = c` modulo `m`.
fn metacyclic(m: u64, q: u64, r: u64, c: u64) -> FiniteGroup {
    let n = (m * q) as usize;
    debug_assert_eq!(mod_pow(r, q, m), 1 % m);
    debug_assert_eq!((c * r) % m, c % m);
    // b^j a^k = a^(k r^-j) b^j, and r^-j = r^(q - j) since r^q = 1
    let r_inv_pow: Vec<u64> = (0..q).map(|j| mod_pow(r, (q - j) % q, m)).collect();
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n as u64 {
        let (i, j) = (x % m, x / m);
        for y in 0..n as u64 {
            let (k, l) = (y % m, y / m);
            let mut exp = i + k * r_inv_pow[j as usize] % m;
            let mut jb = j + l;
            if jb >= q {
                jb -= q;
                exp += c;
            }
            table.push((jb * m + exp % m) as u32);
        }
    }
    from_builder_table(n, table)
}

fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc
}

pub fn heisenberg(p: usize) -> FiniteGroup {
    let n = p * p * p;
    let split = |v: usize| (v / (p * p), (v / p) % p, v % p);
    let mut table = Vec::with_capacity(n * n);
    for u in 0..n {
        let (x, y, z) = split(u);
        for v in 0..n {
            let (x2, y2, z2) = split(v);
            let (x3, y3, z3) = ((x + x2) % p, (y + y2) % p, (z + z2 + x * y2) % p);
            table.push((x3 * p * p + y3 * p + z3) as u32);
        }
    }
    from_builder_table(n, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ElementId;

    fn spec(text: &str) -> GroupSpec {
        GroupSpec::parse(text).unwrap()
    }

    fn r(text: &str) -> FiniteGroup {
        realize(&spec(text)).unwrap()
    }

    #[test]
    fn cyclic_realization() {
        let c8 = r("cyclic(8)");
        assert_eq!(c8.order(), 8);
        assert_eq!(c8.element_order(ElementId(1)), 8);
        assert_eq!(c8.label(), "cyclic(8)");
    }

    // a^i b^j at j*m + i
    fn check_metacyclic_relations(g: &FiniteGroup, m: usize, q: usize, r: i64, b_pow: ElementId) {
        let a = ElementId(1);
        let b = ElementId(m as u32);
        assert_eq!(g.element_order(a), m as u64);
        assert_eq!(g.power(b, q as i64), b_pow);
        assert_eq!(g.conjugate(a, b), g.power(a, r));
        for j in 0..q {
            for i in 0..m {
                let x = g.mul(g.power(a, i as i64), g.power(b, j as i64));
                assert_eq!(x, ElementId((j * m + i) as u32));
            }
        }
    }

    #[test]
    fn family_relations_hold() {
        for order in [8usize, 16, 32, 64] {
            let m = order / 2;
            let d = r(&format!("dihedral({order})"));
            check_metacyclic_relations(&d, m, 2, -1, ElementId(0));
            let q = r(&format!("quaternion({order})"));
            check_metacyclic_relations(&q, m, 2, -1, ElementId((m / 2) as u32));
            if order >= 16 {
                let sd = r(&format!("semidihedral({order})"));
                check_metacyclic_relations(&sd, m, 2, (m / 2 - 1) as i64, ElementId(0));
            }
        }
        for (p, k) in [(2u64, 4u32), (2, 5), (3, 3), (3, 4), (5, 3)] {
            let g = r(&format!("modular({p},{k})"));
            let m = p.pow(k - 1) as usize;
            check_metacyclic_relations(&g, m, p as usize, 1 + p.pow(k - 2) as i64, ElementId(0));
            assert!(!g.is_abelian());
        }
    }

    #[test]
    fn dihedral_and_quaternion_of_order_8() {
        for text in ["dihedral(8)", "quaternion(8)"] {
            let g = r(text);
            assert_eq!(g.order(), 8);
            assert!(!g.is_abelian());
        }
        // Q8 has a single involution, D8 has five
        let inv = |g: &FiniteGroup| g.elements().filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(inv(&r("quaternion(8)")), 1);
        assert_eq!(inv(&r("dihedral(8)")), 5);
    }

    #[test]
    fn heisenberg_structure() {
        let h = r("heisenberg(3)");
        assert_eq!(h.order(), 27);
        assert!(h.elements().skip(1).all(|x| h.element_order(x) == 3));
        let center: Vec<_> = h
            .elements()
            .filter(|&z| h.elements().all(|x| h.mul(z, x) == h.mul(x, z)))
            .collect();
        assert_eq!(center.len(), 3);
        let x = ElementId(9);
        let y = ElementId(3);
        assert_eq!(h.commutator(x, y), ElementId(1));
        assert!(center.contains(&ElementId(1)));
    }

    #[test]
    fn product_indexing_and_order() {
        let g = r("product(cyclic(4),cyclic(2),cyclic(3))");
        assert_eq!(g.order(), 24);
        // (1,1,1) at (1*2 + 1)*3 + 1 = 10, and (1,1,1)^2 = (2,0,2) at (2*2+0)*3+2 = 14
        assert_eq!(g.power(ElementId(10), 2), ElementId(14));
        let d = r("product(dihedral(8),cyclic(2))");
        assert_eq!(d.order(), 16);
        assert!(!d.is_abelian());
    }

    #[test]
    fn order_cap_is_a_resource_error() {
        let err = realize_with_limit(&spec("product(cyclic(64),cyclic(64))"), 1000).unwrap_err();
        assert!(matches!(err, Error::OrderTooLarge { order: 4096, max: 1000 }));
        assert!(realize(&spec("cyclic(5001)")).is_err());
        assert!(realize(&spec("cyclic(5000)")).is_ok());
    }
}
