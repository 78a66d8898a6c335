use std::collections::BTreeMap;

use crate::arith::is_prime;
use crate::builders::{realize_with_limit, GroupSpec};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub spec: GroupSpec,
    /// Canonical spec text; the sort key.
    pub text: String,
    pub order: u64,
}

impl CatalogEntry {
    fn new(spec: GroupSpec) -> Self {
        let order = spec.order().expect("catalog specs have known order") as u64;
        CatalogEntry {
            text: spec.to_string(),
            spec,
            order,
        }
    }

    pub fn realize(&self) -> Result<FiniteGroup> {
        realize_with_limit(&self.spec, self.order)
    }
}

/// Groups to verify against, sorted by spec text. Entries are realized on
/// demand.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub max_order: u64,
    pub primes: Vec<u64>,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// A catalog over explicit specs, e.g. for ad hoc runs.
    pub fn from_specs(specs: impl IntoIterator<Item = GroupSpec>, primes: Vec<u64>) -> Result<Self> {
        let mut by_text = BTreeMap::new();
        for spec in specs {
            spec.validate()?;
            if spec.order().is_none() {
                return Err(Error::Config(format!("{spec}: catalog specs need a known order")));
            }
            let entry = CatalogEntry::new(spec);
            if entry.order < 2 {
                continue;
            }
            by_text.insert(entry.text.clone(), entry);
        }
        let entries: Vec<CatalogEntry> = by_text.into_values().collect();
        let max_order = entries.iter().map(|e| e.order).max().unwrap_or(0);
        Ok(Catalog {
            max_order,
            primes,
            entries,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, text: &str) -> Option<&CatalogEntry> {
        self.entries
            .binary_search_by(|e| e.text.as_str().cmp(text))
            .ok()
            .map(|i| &self.entries[i])
    }

    /// Keeps entries of order at most `max_order`.
    pub fn restricted(&self, max_order: u64) -> Catalog {
        Catalog {
            max_order: max_order.min(self.max_order),
            primes: self.primes.clone(),
            entries: self.entries.iter().filter(|e| e.order <= max_order).cloned().collect(),
        }
    }
}

fn pow(p: u64, k: u32) -> Option<u64> {
    p.checked_pow(k)
}

/// The standard catalog of p-groups of order at most `max_order` for the
/// given primes: cyclic groups, abelian products of two or three cyclic
/// factors, the dihedral, generalized quaternion and semidihedral 2-groups,
/// Heisenberg groups, modular groups, and each nonabelian family member times
/// one cyclic factor.
pub fn default_catalog(max_order: u64, primes: &[u64]) -> Result<Catalog> {
    if max_order < 4 {
        return Err(Error::Config(format!("max_order must be at least 4, got {max_order}")));
    }
    if primes.is_empty() {
        return Err(Error::Config("no primes given".into()));
    }
    if let Some(bad) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::Config(format!("{bad} is not prime")));
    }
    let fits = |k: u32, p: u64| pow(p, k).is_some_and(|o| o <= max_order);
    let cyc = |p: u64, k: u32| GroupSpec::Cyclic(p.pow(k));

    let mut specs = Vec::new();
    for &p in primes {
        let mut nonabelian = Vec::new();
        for a in 1..64u32 {
            if !fits(a, p) {
                break;
            }
            specs.push(cyc(p, a));
            for b in 1..=a {
                if !fits(a + b, p) {
                    break;
                }
                specs.push(GroupSpec::Product(vec![cyc(p, a), cyc(p, b)]));
                for c in 1..=b {
                    if !fits(a + b + c, p) {
                        break;
                    }
                    specs.push(GroupSpec::Product(vec![cyc(p, a), cyc(p, b), cyc(p, c)]));
                }
            }
        }
        for k in 3..64u32 {
            if !fits(k, p) {
                break;
            }
            if p == 2 {
                nonabelian.push(GroupSpec::Dihedral(1 << k));
                nonabelian.push(GroupSpec::Quaternion(1 << k));
                if k >= 4 {
                    nonabelian.push(GroupSpec::Semidihedral(1 << k));
                    nonabelian.push(GroupSpec::Modular { p, k });
                }
            } else {
                if k == 3 {
                    nonabelian.push(GroupSpec::Heisenberg(p));
                }
                nonabelian.push(GroupSpec::Modular { p, k });
            }
        }
        for base in &nonabelian {
            let order = base.order().unwrap() as u64;
            for a in 1..64u32 {
                match pow(p, a).and_then(|c| c.checked_mul(order)) {
                    Some(total) if total <= max_order => {
                        specs.push(GroupSpec::Product(vec![base.clone(), cyc(p, a)]))
                    }
                    _ => break,
                }
            }
        }
        specs.extend(nonabelian);
    }
    let mut catalog = Catalog::from_specs(specs, primes.to_vec())?;
    catalog.max_order = max_order;
    if catalog.is_empty() {
        return Err(Error::Config(format!(
            "no catalog groups of order <= {max_order} for primes {primes:?}"
        )));
    }
    Ok(catalog)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_two_group_catalog() {
        let cat = default_catalog(16, &[2]).unwrap();
        for text in [
            "cyclic(8)",
            "product(cyclic(4),cyclic(2))",
            "product(cyclic(2),cyclic(2),cyclic(2))",
            "dihedral(8)",
            "quaternion(8)",
            "dihedral(16)",
            "quaternion(16)",
            "semidihedral(16)",
            "modular(2,4)",
            "product(dihedral(8),cyclic(2))",
        ] {
            assert!(cat.get(text).is_some(), "missing {text}");
        }
        assert!(cat.get("cyclic(32)").is_none());
        let texts: Vec<&str> = cat.entries.iter().map(|e| e.text.as_str()).collect();
        let mut sorted = texts.clone();
        sorted.sort();
        assert_eq!(texts, sorted);
        assert!(cat.entries.iter().all(|e| e.order >= 2 && e.order <= 16));
    }

    #[test]
    fn odd_catalog_and_errors() {
        let cat = default_catalog(27, &[3]).unwrap();
        assert!(cat.get("heisenberg(3)").is_some());
        assert!(cat.get("modular(3,3)").is_some());
        assert!(matches!(default_catalog(4, &[5]), Err(Error::Config(_))));
        assert!(matches!(default_catalog(3, &[2]), Err(Error::Config(_))));
        assert!(matches!(default_catalog(100, &[4]), Err(Error::Config(_))));
    }

    #[test]
    fn entries_realize_at_their_order() {
        let cat = default_catalog(64, &[2, 3]).unwrap();
        for e in &cat.entries {
            assert_eq!(e.realize().unwrap().order() as u64, e.order, "{}", e.text);
        }
    }
}
