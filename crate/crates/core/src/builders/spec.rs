//! The group-spec expression language.
//!
//! ```text
//! expr := "cyclic(" int ")" | "dihedral(" int ")" | "quaternion(" int ")"
//!       | "semidihedral(" int ")" | "heisenberg(" int ")"
//!       | "modular(" int "," int ")" | "product(" expr {"," expr} ")"
//!       | "table(" path ")"
//! ```
//!
//! Whitespace is allowed between tokens. [`GroupSpec`]'s `Display` prints the
//! canonical form without whitespace, and parsing that form gives back the
//! same tree.

use std::fmt;
use std::str::FromStr;

use crate::arith::{is_prime, prime_power};
use crate::error::SpecError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u64),
    Product(Vec<GroupSpec>),
    /// Dihedral group of the given order `2m`.
    Dihedral(u64),
    /// Generalized quaternion group of order `2^k`.
    Quaternion(u64),
    /// Semidihedral group of order `2^k`.
    Semidihedral(u64),
    /// Extraspecial group of order `p^3` and exponent `p`.
    Heisenberg(u64),
    /// Modular p-group `M(p^k)`.
    Modular { p: u64, k: u32 },
    /// A GTBL file.
    Table(String),
}

impl GroupSpec {
    /// Checks the per-family parameter constraints.
    pub fn validate(&self) -> Result<(), SpecError> {
        let fail = |msg: String| Err(SpecError::Constraint(msg));
        match *self {
            GroupSpec::Cyclic(m) if m < 1 => fail("cyclic requires m >= 1".into()),
            GroupSpec::Product(ref parts) => {
                if parts.is_empty() {
                    return fail("product requires at least one factor".into());
                }
                parts.iter().try_for_each(GroupSpec::validate)
            }
            GroupSpec::Dihedral(order) if order < 4 || order % 2 != 0 => {
                fail(format!("dihedral requires an even order >= 4, got {order}"))
            }
            GroupSpec::Quaternion(order) if !matches!(prime_power(order), Some((2, k)) if k >= 3) => {
                fail(format!("quaternion requires order 2^k with k >= 3, got {order}"))
            }
            GroupSpec::Semidihedral(order)
                if !matches!(prime_power(order), Some((2, k)) if k >= 4) =>
            {
                fail(format!("semidihedral requires order 2^k with k >= 4, got {order}"))
            }
            GroupSpec::Heisenberg(p) if p == 2 || !is_prime(p) => {
                fail("heisenberg requires an odd prime".into())
            }
            GroupSpec::Modular { p, k } => {
                if !is_prime(p) {
                    fail(format!("modular requires a prime, got {p}"))
                } else if k < 3 {
                    fail(format!("modular requires k >= 3, got {k}"))
                } else if p == 2 && k == 3 {
                    fail("modular(2,3) is dihedral(8); use dihedral(8)".into())
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Group order implied by the spec; `None` for tables (unknown until read)
    /// or on overflow.
    pub fn order(&self) -> Option<u128> {
        match self {
            GroupSpec::Cyclic(m) => Some(*m as u128),
            GroupSpec::Dihedral(o) | GroupSpec::Quaternion(o) | GroupSpec::Semidihedral(o) => {
                Some(*o as u128)
            }
            GroupSpec::Heisenberg(p) => (*p as u128).checked_pow(3),
            GroupSpec::Modular { p, k } => (*p as u128).checked_pow(*k),
            GroupSpec::Product(parts) => parts
                .iter()
                .try_fold(1u128, |acc, s| s.order().and_then(|o| acc.checked_mul(o))),
            GroupSpec::Table(_) => None,
        }
    }

    /// Flattens nested products into their non-product factors.
    pub fn factors(&self) -> Vec<&GroupSpec> {
        match self {
            GroupSpec::Product(parts) => parts.iter().flat_map(|p| p.factors()).collect(),
            other => vec![other],
        }
    }

    pub fn parse(text: &str) -> Result<GroupSpec, SpecError> {
        let mut parser = Parser {
            src: text,
            pos: 0,
        };
        let spec = parser.expr()?;
        parser.skip_ws();
        if parser.pos != text.len() {
            return Err(parser.error("trailing input"));
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GroupSpec::parse(s)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(m) => write!(f, "cyclic({m})"),
            GroupSpec::Dihedral(o) => write!(f, "dihedral({o})"),
            GroupSpec::Quaternion(o) => write!(f, "quaternion({o})"),
            GroupSpec::Semidihedral(o) => write!(f, "semidihedral({o})"),
            GroupSpec::Heisenberg(p) => write!(f, "heisenberg({p})"),
            GroupSpec::Modular { p, k } => write!(f, "modular({p},{k})"),
            GroupSpec::Table(path) => write!(f, "table({path})"),
            GroupSpec::Product(parts) => {
                f.write_str("product(")?;
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{part}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> SpecError {
        SpecError::Syntax {
            pos: self.pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn expect(&mut self, c: char) -> Result<(), SpecError> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<&str, SpecError> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a family name"));
        }
        let start = self.pos;
        self.pos += len;
        Ok(&self.src[start..self.pos])
    }

    fn int(&mut self) -> Result<u64, SpecError> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a decimal integer"));
        }
        let digits = &self.rest()[..len];
        let value = digits
            .parse()
            .map_err(|_| self.error(format!("integer {digits} is too large")))?;
        self.pos += len;
        Ok(value)
    }

    fn single_int(&mut self) -> Result<u64, SpecError> {
        self.expect('(')?;
        let v = self.int()?;
        self.expect(')')?;
        Ok(v)
    }

    fn expr(&mut self) -> Result<GroupSpec, SpecError> {
        let start = self.pos;
        let name = self.ident()?.to_owned();
        match name.as_str() {
            "cyclic" => Ok(GroupSpec::Cyclic(self.single_int()?)),
            "dihedral" => Ok(GroupSpec::Dihedral(self.single_int()?)),
            "quaternion" => Ok(GroupSpec::Quaternion(self.single_int()?)),
            "semidihedral" => Ok(GroupSpec::Semidihedral(self.single_int()?)),
            "heisenberg" => Ok(GroupSpec::Heisenberg(self.single_int()?)),
            "modular" => {
                self.expect('(')?;
                let p = self.int()?;
                self.expect(',')?;
                let k = self.int()?;
                self.expect(')')?;
                let k = u32::try_from(k).map_err(|_| self.error("exponent too large"))?;
                Ok(GroupSpec::Modular { p, k })
            }
            "product" => {
                self.expect('(')?;
                let mut parts = vec![self.expr()?];
                loop {
                    self.skip_ws();
                    if self.rest().starts_with(',') {
                        self.pos += 1;
                        parts.push(self.expr()?);
                    } else {
                        break;
                    }
                }
                self.expect(')')?;
                Ok(GroupSpec::Product(parts))
            }
            "table" => {
                self.expect('(')?;
                let close = self
                    .rest()
                    .find(')')
                    .ok_or_else(|| self.error("unterminated table path"))?;
                let path = self.rest()[..close].trim().to_owned();
                if path.is_empty() {
                    return Err(self.error("empty table path"));
                }
                self.pos += close + 1;
                Ok(GroupSpec::Table(path))
            }
            _ => {
                self.pos = start;
                self.skip_ws();
                Err(self.error(format!("unknown family {name:?}")))
            }
        }
    }
}
