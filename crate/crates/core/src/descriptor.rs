//! Group family descriptors.
//!
//! Grammar:
//!
//! ```text
//! desc := "cyclic:" n | "dihedral:" n | "symmetric:" n
//!       | "sl2:" p | "psl2:" p | "product:" desc "," desc
//! ```
//!
//! Nested products parse left to right: `product:product:cyclic:2,cyclic:2,cyclic:3`
//! is `(C2 x C2) x C3`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use crate::Error;

/// Largest group order any constructor will produce.
pub const MAX_ORDER: u64 = 2_000_000;
pub const MAX_SYMMETRIC_DEGREE: u32 = 8;
pub const MAX_SL2_PRIME: u32 = 101;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic(u32),
    Dihedral(u32),
    Symmetric(u32),
    Sl2(u32),
    Psl2(u32),
    Product(Box<Family>, Box<Family>),
    /// A group given directly by its multiplication table.
    Custom,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Family {
    /// Group order, or `None` for [`Family::Custom`] or on overflow.
    pub fn order(&self) -> Option<u64> {
        let o = match *self {
            Family::Cyclic(n) => u64::from(n),
            Family::Dihedral(n) => 2 * u64::from(n),
            Family::Symmetric(n) => (1..=u64::from(n)).product(),
            Family::Sl2(p) => {
                let p = u64::from(p);
                p * (p * p - 1)
            }
            Family::Psl2(p) => {
                let p = u64::from(p);
                p * (p * p - 1) / 2
            }
            Family::Product(ref a, ref b) => a.order()?.checked_mul(b.order()?)?,
            Family::Custom => return None,
        };
        Some(o)
    }

    /// Checks family parameters and the global order cap.
    pub fn validate(&self) -> Result<(), Error> {
        let err = |m: String| Err(Error::Construction(m));
        match *self {
            Family::Cyclic(0) | Family::Dihedral(0) => {
                return err(format!("{self}: parameter must be at least 1"))
            }
            Family::Symmetric(n) if n == 0 || n > MAX_SYMMETRIC_DEGREE => {
                return err(format!("{self}: degree must lie in 1..={MAX_SYMMETRIC_DEGREE}"))
            }
            Family::Sl2(p) | Family::Psl2(p) => {
                if !is_prime(u64::from(p)) || p == 2 {
                    return err(format!("{self}: {p} is not an odd prime"));
                }
                if p > MAX_SL2_PRIME {
                    return err(format!("{self}: prime exceeds {MAX_SL2_PRIME}"));
                }
            }
            Family::Product(ref a, ref b) => {
                a.validate()?;
                b.validate()?;
            }
            Family::Custom => return err("custom groups have no descriptor".to_string()),
            _ => {}
        }
        match self.order() {
            Some(o) if o <= MAX_ORDER => Ok(()),
            _ => err(format!("{self}: order exceeds the cap {MAX_ORDER}")),
        }
    }

    fn parse_prefix(input: &str) -> Result<(Family, &str), String> {
        let (name, rest) = input
            .split_once(':')
            .ok_or_else(|| format!("expected '<family>:' at {input:?}"))?;
        if name == "product" {
            let (left, rest) = Self::parse_prefix(rest)?;
            let rest = rest
                .strip_prefix(',')
                .ok_or_else(|| format!("expected ',' between product factors at {rest:?}"))?;
            let (right, rest) = Self::parse_prefix(rest)?;
            return Ok((Family::Product(Box::new(left), Box::new(right)), rest));
        }
        let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(format!("expected an integer parameter after '{name}:'"));
        }
        let n: u32 = rest[..digits]
            .parse()
            .map_err(|_| format!("parameter {:?} out of range", &rest[..digits]))?;
        let family = match name {
            "cyclic" => Family::Cyclic(n),
            "dihedral" => Family::Dihedral(n),
            "symmetric" => Family::Symmetric(n),
            "sl2" => Family::Sl2(n),
            "psl2" => Family::Psl2(n),
            other => return Err(format!("unsupported family {other:?}")),
        };
        Ok((family, &rest[digits..]))
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses a descriptor. Only syntax is checked here; see [`Family::validate`].
    fn from_str(s: &str) -> Result<Self, Error> {
        let fail = |reason: String| Error::Descriptor { input: s.to_string(), reason };
        let (family, rest) = Family::parse_prefix(s.trim()).map_err(fail)?;
        if !rest.is_empty() {
            return Err(fail(format!("trailing input {rest:?}")));
        }
        Ok(family)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "cyclic:{n}"),
            Family::Dihedral(n) => write!(f, "dihedral:{n}"),
            Family::Symmetric(n) => write!(f, "symmetric:{n}"),
            Family::Sl2(p) => write!(f, "sl2:{p}"),
            Family::Psl2(p) => write!(f, "psl2:{p}"),
            Family::Product(a, b) => write!(f, "product:{a},{b}"),
            Family::Custom => f.write_str("custom"),
        }
    }
}
