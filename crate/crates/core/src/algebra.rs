//! Compact simple Lie algebras by name.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A compact simple Lie algebra, named by its classical matrix form.
///
/// Low-rank coincidences are normalised on construction via [`SimpleAlgebra::canonical`]:
/// `so(3) = sp(1) = su(2)`, `so(5) = sp(2)`, `so(6) = su(4)`; `so(4)` is not simple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SimpleAlgebra {
    Su(u32),
    So(u32),
    Sp(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl SimpleAlgebra {
    /// Folds the low-rank isomorphisms into one representative and rejects
    /// parameters for which the algebra is not simple.
    pub fn canonical(self) -> Result<Self> {
        use SimpleAlgebra::*;
        match self {
            Su(n) if n < 2 => Err(Error::OutOfRange(format!("su({n}) is not simple"))),
            So(n) if n < 3 => Err(Error::OutOfRange(format!("so({n}) is not simple"))),
            So(4) => Err(Error::OutOfRange("so(4) = su(2) ⊕ su(2) is not simple".into())),
            Sp(0) => Err(Error::OutOfRange("sp(0) is trivial".into())),
            So(3) | Sp(1) => Ok(Su(2)),
            So(5) => Ok(Sp(2)),
            So(6) => Ok(Su(4)),
            other => Ok(other),
        }
    }

    pub fn dim(self) -> u64 {
        use SimpleAlgebra::*;
        match self {
            Su(n) => u64::from(n) * u64::from(n) - 1,
            So(n) => u64::from(n) * (u64::from(n) - 1) / 2,
            Sp(n) => u64::from(n) * (2 * u64::from(n) + 1),
            E6 => 78,
            E7 => 133,
            E8 => 248,
            F4 => 52,
            G2 => 14,
        }
    }

    pub fn rank(self) -> u64 {
        use SimpleAlgebra::*;
        match self {
            Su(n) => u64::from(n) - 1,
            So(n) => u64::from(n) / 2,
            Sp(n) => u64::from(n),
            E6 => 6,
            E7 => 7,
            E8 => 8,
            F4 => 4,
            G2 => 2,
        }
    }
}

impl SimpleAlgebra {
    /// Dual Coxeter number `h∨`, so that `Kil_g = 2h∨ · (normalised trace form)`.
    pub fn dual_coxeter(self) -> Result<u64> {
        use SimpleAlgebra::*;
        Ok(match self.canonical()? {
            Su(n) => u64::from(n),
            So(n) => u64::from(n) - 2,
            Sp(n) => u64::from(n) + 1,
            E6 => 12,
            E7 => 18,
            E8 => 30,
            F4 => 9,
            G2 => 4,
        })
    }
}

impl fmt::Display for SimpleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SimpleAlgebra::*;
        match self {
            Su(n) => write!(f, "su({n})"),
            So(n) => write!(f, "so({n})"),
            Sp(n) => write!(f, "sp({n})"),
            E6 => f.write_str("e6"),
            E7 => f.write_str("e7"),
            E8 => f.write_str("e8"),
            F4 => f.write_str("f4"),
            G2 => f.write_str("g2"),
        }
    }
}

impl FromStr for SimpleAlgebra {
    type Err = Error;

    /// Accepts `su(5)`, `so(10)`, `spin(9)`, `sp(3)`, `e6`…`e8`, `f4`, `g2`
    /// (case-insensitive). The result is not canonicalised.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "e6" => return Ok(SimpleAlgebra::E6),
            "e7" => return Ok(SimpleAlgebra::E7),
            "e8" => return Ok(SimpleAlgebra::E8),
            "f4" => return Ok(SimpleAlgebra::F4),
            "g2" => return Ok(SimpleAlgebra::G2),
            _ => {}
        }
        let (name, rest) = t
            .split_once('(')
            .ok_or_else(|| Error::Parse(format!("unknown algebra `{s}`")))?;
        let arg = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("missing `)` in `{s}`")))?;
        let n: u32 = arg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank parameter in `{s}`")))?;
        match name.trim() {
            "su" => Ok(SimpleAlgebra::Su(n)),
            "so" | "spin" => Ok(SimpleAlgebra::So(n)),
            "sp" => Ok(SimpleAlgebra::Sp(n)),
            _ => Err(Error::Parse(format!("unknown algebra `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_dims() {
        let a: SimpleAlgebra = "su(5)".parse().unwrap();
        assert_eq!(a.dim(), 24);
        assert_eq!("SO(16)".parse::<SimpleAlgebra>().unwrap().dim(), 120);
        assert_eq!("sp(5)".parse::<SimpleAlgebra>().unwrap().dim(), 55);
        assert_eq!(SimpleAlgebra::E8.dim(), 248);
        assert!("xx(3)".parse::<SimpleAlgebra>().is_err());
    }

    #[test]
    fn low_rank_coincidences() {
        assert_eq!(SimpleAlgebra::So(3).canonical().unwrap(), SimpleAlgebra::Su(2));
        assert_eq!(SimpleAlgebra::So(5).canonical().unwrap(), SimpleAlgebra::Sp(2));
        assert_eq!(SimpleAlgebra::So(6).canonical().unwrap(), SimpleAlgebra::Su(4));
        assert!(SimpleAlgebra::So(4).canonical().is_err());
        // dimensions agree across each coincidence
        assert_eq!(SimpleAlgebra::So(5).dim(), SimpleAlgebra::Sp(2).dim());
        assert_eq!(SimpleAlgebra::So(6).dim(), SimpleAlgebra::Su(4).dim());
    }
}
