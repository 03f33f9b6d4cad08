//! Space specifications and their string grammar.
//!
//! ```text
//! spec     := family [":" args]
//! family   := "flag" | "grassmann-square" | "grassmann-square-sp" | "su-triple"
//!           | "sp-chain" | "so-chain" | "som" | "group" | "gen-wallach" | named
//! flag     := "flag:" algebra                      flag:e7, flag:su(5), flag:so(10)
//! params   := key "=" uint ("," key "=" uint)*     grassmann-square:n=3, su-triple:p=2,q=5,l=3
//! som      := "som:" item ("+" item)*              som:sphere(3)x3, som:adj(su(3))+adj(g2)
//! item     := symspace ["x" count]
//! symspace := "grass-so(n)" | "grass-sp(n)" | "sphere(n)" | "su/so(n)" | "su/sp(n)"
//!           | "e6/sp4" | "e6/f4" | "e7/su8" | "e8/spin16" | "f4/spin9" | "adj(" algebra ")"
//! group    := "group:" algebra
//! ```
//!
//! Every family lists its keys exactly; unknown, repeated or missing keys are
//! errors, never defaulted.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::SimpleAlgebra;
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Isolated spaces with a fixed name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedSpace {
    So26,
    So8G2,
    E6Su2So6,
    E8Spin9,
    E8Su5Su5,
    E8Su3x4,
    E7Su2x7,
    E8Su2x8,
    // three equal summands with a single nonzero constant [123]
    F4Spin8,
    E6Spin8R2,
    E7So8,
    E7Spin8Su2x3,
    E8Spin8x2,
    // known only through the Killing ratios of k
    E6So3x3,
    E8So5,
    E8So9,
    E8So3x4,
    E8So5x2,
    E8Su3x2,
}

impl NamedSpace {
    pub const ALL: [NamedSpace; 19] = [
        NamedSpace::So26,
        NamedSpace::So8G2,
        NamedSpace::E6Su2So6,
        NamedSpace::E8Spin9,
        NamedSpace::E8Su5Su5,
        NamedSpace::E8Su3x4,
        NamedSpace::E7Su2x7,
        NamedSpace::E8Su2x8,
        NamedSpace::F4Spin8,
        NamedSpace::E6Spin8R2,
        NamedSpace::E7So8,
        NamedSpace::E7Spin8Su2x3,
        NamedSpace::E8Spin8x2,
        NamedSpace::E6So3x3,
        NamedSpace::E8So5,
        NamedSpace::E8So9,
        NamedSpace::E8So3x4,
        NamedSpace::E8So5x2,
        NamedSpace::E8Su3x2,
    ];

    pub fn name(self) -> &'static str {
        use NamedSpace::*;
        match self {
            So26 => "so26",
            So8G2 => "so8-g2",
            E6Su2So6 => "e6-su2-so6",
            E8Spin9 => "e8-spin9",
            E8Su5Su5 => "e8-su5su5",
            E8Su3x4 => "e8-su3x4",
            E7Su2x7 => "e7-su2x7",
            E8Su2x8 => "e8-su2x8",
            F4Spin8 => "f4-spin8",
            E6Spin8R2 => "e6-spin8-r2",
            E7So8 => "e7-so8",
            E7Spin8Su2x3 => "e7-spin8-su2x3",
            E8Spin8x2 => "e8-spin8x2",
            E6So3x3 => "e6-so3x3",
            E8So5 => "e8-so5",
            E8So9 => "e8-so9",
            E8So3x4 => "e8-so3x4",
            E8So5x2 => "e8-so5x2",
            E8Su3x2 => "e8-su3x2",
        }
    }

    /// Human-readable `G/K`.
    pub fn title(self) -> &'static str {
        use NamedSpace::*;
        match self {
            So26 => "SO(26)/Sp(1)×Sp(5)×SO(6)",
            So8G2 => "SO(8)/G2",
            E6Su2So6 => "E6/SU(2)×SO(6)",
            E8Spin9 => "E8/Spin(9)",
            E8Su5Su5 => "E8/SU(5)×SU(5)",
            E8Su3x4 => "E8/SU(3)^4",
            E7Su2x7 => "E7/SU(2)^7",
            E8Su2x8 => "E8/SU(2)^8",
            F4Spin8 => "F4/Spin(8)",
            E6Spin8R2 => "E6/Spin(8)×T^2",
            E7So8 => "E7/SO(8)",
            E7Spin8Su2x3 => "E7/Spin(8)×SU(2)^3",
            E8Spin8x2 => "E8/Spin(8)×Spin(8)",
            E6So3x3 => "E6/SO(3)^3",
            E8So5 => "E8/SO(5)",
            E8So9 => "E8/SO(9)",
            E8So3x4 => "E8/SO(3)^4",
            E8So5x2 => "E8/SO(5)×SO(5)",
            E8Su3x2 => "E8/SU(3)×SU(3)",
        }
    }

    /// The three-summand spaces addressed as `gen-wallach:<name>`.
    pub fn is_generalized_wallach(self) -> bool {
        use NamedSpace::*;
        matches!(self, F4Spin8 | E6Spin8R2 | E7So8 | E7Spin8Su2x3 | E8Spin8x2)
    }
}

impl FromStr for NamedSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedSpace::ALL
            .iter()
            .copied()
            .find(|n| n.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown space `{s}`")))
    }
}

/// Irreducible symmetric spaces `G_i/K_i` whose isotropy representation
/// embeds `K_i` in `SO(m_i)` for the `SO(m)/K₁×⋯×K_l` construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymSpaceId {
    /// `SO(2n)/SO(n)×SO(n)`, `n ≥ 3`.
    GrassSo(u32),
    /// `Sp(2n)/Sp(n)×Sp(n)`, `n ≥ 2`.
    GrassSp(u32),
    /// `SO(n+1)/SO(n)`, `n ≥ 2`.
    Sphere(u32),
    /// `SU(n)/SO(n)`, `n ≥ 3`, `n ≠ 4`.
    SuSo(u32),
    /// `SU(2n)/Sp(n)`, `n ≥ 3`.
    SuSp(u32),
    E6Sp4,
    E6F4,
    E7Su8,
    E8Spin16,
    F4Spin9,
    /// `(H×H)/ΔH` with `dim H > 3`.
    Adjoint(SimpleAlgebra),
}

/// How a factor's complement `V_i = so(m_i) ⊖ k_i` decomposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorClass {
    /// `V_i` splits into two inequivalent halves.
    Grassmannian,
    /// `V_i = 0`.
    Sphere,
    /// `V_i` is irreducible.
    Other,
}

impl SymSpaceId {
    pub fn validate(self) -> Result<Self> {
        use SymSpaceId::*;
        let bad = |cond: &str| Err(Error::InvalidParameters(format!("{self}: requires {cond}")));
        match self {
            GrassSo(n) if n < 3 => bad("n ≥ 3"),
            GrassSp(n) if n < 2 => bad("n ≥ 2"),
            Sphere(n) if n < 2 => bad("n ≥ 2"),
            SuSo(n) if n < 3 || n == 4 => bad("n ≥ 3 and n ≠ 4"),
            SuSp(n) if n < 3 => bad("n ≥ 3"),
            Adjoint(h) => {
                let h = h.canonical()?;
                if h.dim() <= 3 {
                    bad("dim H > 3")
                } else {
                    Ok(Adjoint(h))
                }
            }
            other => Ok(other),
        }
    }

    /// `dim k_i`.
    pub fn dim_k(self) -> u64 {
        use SymSpaceId::*;
        match self {
            GrassSo(n) => u64::from(n) * (u64::from(n) - 1),
            GrassSp(n) => 2 * u64::from(n) * (2 * u64::from(n) + 1),
            Sphere(n) => u64::from(n) * (u64::from(n) - 1) / 2,
            SuSo(n) => u64::from(n) * (u64::from(n) - 1) / 2,
            SuSp(n) => u64::from(n) * (2 * u64::from(n) + 1),
            E6Sp4 => 36,
            E6F4 => 52,
            E7Su8 => 63,
            E8Spin16 => 120,
            F4Spin9 => 36,
            Adjoint(h) => h.dim(),
        }
    }

    /// `m_i = dim G_i/K_i`.
    pub fn m(self) -> u64 {
        use SymSpaceId::*;
        match self {
            GrassSo(n) => u64::from(n) * u64::from(n),
            GrassSp(n) => 4 * u64::from(n) * u64::from(n),
            Sphere(n) => u64::from(n),
            SuSo(n) => (u64::from(n) - 1) * (u64::from(n) + 2) / 2,
            SuSp(n) => (u64::from(n) - 1) * (2 * u64::from(n) + 1),
            E6Sp4 => 42,
            E6F4 => 26,
            E7Su8 => 70,
            E8Spin16 => 128,
            F4Spin9 => 16,
            Adjoint(h) => h.dim(),
        }
    }

    /// `dim k_i / m_i`, which must be common to all factors.
    pub fn kappa(self) -> Rational {
        Rational::new(self.dim_k() as i64, self.m() as i64)
    }

    /// `d_(ii) = m_i(m_i − 1)/2 − dim k_i`.
    pub fn d_complement(self) -> u64 {
        self.m() * (self.m() - 1) / 2 - self.dim_k()
    }

    pub fn class(self) -> FactorClass {
        match self {
            SymSpaceId::GrassSo(_) | SymSpaceId::GrassSp(_) => FactorClass::Grassmannian,
            _ if self.d_complement() == 0 => FactorClass::Sphere,
            _ => FactorClass::Other,
        }
    }
}

impl fmt::Display for SymSpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SymSpaceId::*;
        match self {
            GrassSo(n) => write!(f, "grass-so({n})"),
            GrassSp(n) => write!(f, "grass-sp({n})"),
            Sphere(n) => write!(f, "sphere({n})"),
            SuSo(n) => write!(f, "su/so({n})"),
            SuSp(n) => write!(f, "su/sp({n})"),
            E6Sp4 => f.write_str("e6/sp4"),
            E6F4 => f.write_str("e6/f4"),
            E7Su8 => f.write_str("e7/su8"),
            E8Spin16 => f.write_str("e8/spin16"),
            F4Spin9 => f.write_str("f4/spin9"),
            Adjoint(h) => write!(f, "adj({h})"),
        }
    }
}

fn paren_arg<'a>(s: &'a str, prefix: &str) -> Option<&'a str> {
    s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')
}

fn parse_uint(s: &str, what: &str) -> Result<u32> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not a nonnegative integer ({what})")))
}

impl FromStr for SymSpaceId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use SymSpaceId::*;
        let t = s.trim();
        let fixed = match t {
            "e6/sp4" => Some(E6Sp4),
            "e6/f4" => Some(E6F4),
            "e7/su8" => Some(E7Su8),
            "e8/spin16" => Some(E8Spin16),
            "f4/spin9" => Some(F4Spin9),
            _ => None,
        };
        if let Some(f) = fixed {
            return Ok(f);
        }
        if let Some(a) = paren_arg(t, "adj") {
            return Ok(Adjoint(a.parse()?));
        }
        type Ctor = fn(u32) -> SymSpaceId;
        let ctors: [(&str, Ctor); 5] = [
            ("grass-so", GrassSo),
            ("grass-sp", GrassSp),
            ("sphere", Sphere),
            ("su/so", SuSo),
            ("su/sp", SuSp),
        ];
        for (prefix, ctor) in ctors {
            if let Some(a) = paren_arg(t, prefix) {
                return Ok(ctor(parse_uint(a, prefix)?));
            }
        }
        Err(Error::Parse(format!("unknown symmetric-space factor `{s}`")))
    }
}

/// A space in the catalogue, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceSpec {
    /// Full flag manifold `G/T`.
    Flag(SimpleAlgebra),
    /// `SO(n²)/SO(n)×SO(n)`.
    GrassmannSquare { n: u32 },
    /// `SO(4n²)/Sp(n)×Sp(n)`.
    GrassmannSquareSp { n: u32 },
    /// `SU(pq+l)/SU(p)×SU(q)×U(l)` with `pql = p² + q² + 1`.
    SuTriple { p: u32, q: u32, l: u32 },
    /// `Sp(3n−1)/Sp(n)×U(2n−1)`.
    SpChain { n: u32 },
    /// `SO(3n+2)/SO(n)×U(n+1)`.
    SoChain { n: u32 },
    Named(NamedSpace),
    /// `SO(m)/K₁×⋯×K_l` built from symmetric-space isotropy representations.
    Som(Vec<SymSpaceId>),
    /// The group `G` itself with its bi-invariant metric.
    Group(SimpleAlgebra),
}

/// Parses `k1=v1,k2=v2` requiring exactly the keys in `keys`.
fn parse_params(family: &str, args: &str, keys: &[&str]) -> Result<BTreeMap<String, u32>> {
    let mut out = BTreeMap::new();
    for part in args.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("{family}: expected key=value, got `{part}`")))?;
        let k = k.trim();
        if !keys.contains(&k) {
            return Err(Error::Parse(format!(
                "{family}: unknown key `{k}` (expected {})",
                keys.join(", ")
            )));
        }
        if out.insert(k.to_string(), parse_uint(v, k)?).is_some() {
            return Err(Error::Parse(format!("{family}: key `{k}` given twice")));
        }
    }
    for k in keys {
        if !out.contains_key(*k) {
            return Err(Error::Parse(format!("{family}: missing key `{k}`")));
        }
    }
    Ok(out)
}

fn parse_som_items(args: &str) -> Result<Vec<SymSpaceId>> {
    let mut out = Vec::new();
    for item in args.split('+') {
        let item = item.trim();
        if item.is_empty() {
            return Err(Error::Parse("som: empty factor".into()));
        }
        if let Ok(id) = item.parse::<SymSpaceId>() {
            out.push(id);
            continue;
        }
        let (base, count) = item
            .rsplit_once('x')
            .ok_or_else(|| Error::Parse(format!("unknown symmetric-space factor `{item}`")))?;
        let id: SymSpaceId = base.parse()?;
        let count = parse_uint(count, "repeat count")?;
        if count == 0 {
            return Err(Error::Parse(format!("som: zero repeat count in `{item}`")));
        }
        out.extend(std::iter::repeat(id).take(count as usize));
    }
    Ok(out)
}

impl FromStr for SpaceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, args) = match s.split_once(':') {
            Some((f, a)) => (f.trim(), Some(a.trim())),
            None => (s, None),
        };
        let need_args = || args.ok_or_else(|| Error::Parse(format!("{family}: missing arguments")));
        let n_only = |a: &str| parse_params(family, a, &["n"]).map(|m| m["n"]);
        match family {
            "flag" => Ok(SpaceSpec::Flag(need_args()?.parse()?)),
            "group" => Ok(SpaceSpec::Group(need_args()?.parse()?)),
            "grassmann-square" => Ok(SpaceSpec::GrassmannSquare { n: n_only(need_args()?)? }),
            "grassmann-square-sp" => Ok(SpaceSpec::GrassmannSquareSp { n: n_only(need_args()?)? }),
            "sp-chain" => Ok(SpaceSpec::SpChain { n: n_only(need_args()?)? }),
            "so-chain" => Ok(SpaceSpec::SoChain { n: n_only(need_args()?)? }),
            "su-triple" => {
                let m = parse_params(family, need_args()?, &["p", "q", "l"])?;
                Ok(SpaceSpec::SuTriple { p: m["p"], q: m["q"], l: m["l"] })
            }
            "som" => Ok(SpaceSpec::Som(parse_som_items(need_args()?)?)),
            "gen-wallach" => {
                let name: NamedSpace = need_args()?.parse()?;
                if !name.is_generalized_wallach() {
                    return Err(Error::Parse(format!(
                        "gen-wallach: `{}` is not a three-summand space",
                        name.name()
                    )));
                }
                Ok(SpaceSpec::Named(name))
            }
            _ => {
                if args.is_some() {
                    return Err(Error::Parse(format!("unknown family `{family}`")));
                }
                let name: NamedSpace = family.parse()?;
                Ok(SpaceSpec::Named(name))
            }
        }
    }
}

impl fmt::Display for SpaceSpec {
    /// The canonical spec string; parsing it gives back an equal spec.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::Flag(g) => write!(f, "flag:{g}"),
            SpaceSpec::Group(g) => write!(f, "group:{g}"),
            SpaceSpec::GrassmannSquare { n } => write!(f, "grassmann-square:n={n}"),
            SpaceSpec::GrassmannSquareSp { n } => write!(f, "grassmann-square-sp:n={n}"),
            SpaceSpec::SuTriple { p, q, l } => write!(f, "su-triple:p={p},q={q},l={l}"),
            SpaceSpec::SpChain { n } => write!(f, "sp-chain:n={n}"),
            SpaceSpec::SoChain { n } => write!(f, "so-chain:n={n}"),
            SpaceSpec::Named(n) if n.is_generalized_wallach() => write!(f, "gen-wallach:{}", n.name()),
            SpaceSpec::Named(n) => f.write_str(n.name()),
            SpaceSpec::Som(ids) => {
                f.write_str("som:")?;
                let mut runs: Vec<(SymSpaceId, usize)> = Vec::new();
                for id in ids {
                    match runs.last_mut() {
                        Some((last, c)) if last == id => *c += 1,
                        _ => runs.push((*id, 1)),
                    }
                }
                let parts: Vec<String> = runs
                    .iter()
                    .map(|(id, c)| if *c == 1 { id.to_string() } else { format!("{id}x{c}") })
                    .collect();
                f.write_str(&parts.join("+"))
            }
        }
    }
}

impl SpaceSpec {
    /// Human-readable `G/K`.
    pub fn title(&self) -> String {
        match self {
            SpaceSpec::Flag(g) => format!("{}/T", upper(&g.to_string())),
            SpaceSpec::Group(g) => upper(&g.to_string()),
            SpaceSpec::GrassmannSquare { n } => format!("SO({})/SO({n})×SO({n})", n * n),
            SpaceSpec::GrassmannSquareSp { n } => format!("SO({})/Sp({n})×Sp({n})", 4 * n * n),
            SpaceSpec::SuTriple { p, q, l } => format!("SU({})/SU({p})×SU({q})×U({l})", p * q + l),
            SpaceSpec::SpChain { n } => format!("Sp({})/Sp({n})×U({})", 3 * n - 1, 2 * n - 1),
            SpaceSpec::SoChain { n } => format!("SO({})/SO({n})×U({})", 3 * n + 2, n + 1),
            SpaceSpec::Named(n) => n.title().to_string(),
            SpaceSpec::Som(ids) => {
                let m: u64 = ids.iter().map(|i| i.m()).sum();
                let ks: Vec<String> = ids.iter().map(|i| format!("K[{i}]")).collect();
                format!("SO({m})/{}", ks.join("×"))
            }
        }
    }
}

fn upper(s: &str) -> String {
    s.to_ascii_uppercase()
}

impl Serialize for SpaceSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SpaceSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in [
            "flag:e7",
            "flag:su(5)",
            "flag:so(10)",
            "grassmann-square:n=3",
            "grassmann-square-sp:n=2",
            "su-triple:p=2,q=5,l=3",
            "sp-chain:n=2",
            "so-chain:n=3",
            "so26",
            "e8-su2x8",
            "gen-wallach:f4-spin8",
            "e8-so5",
            "som:sphere(3)x3",
            "som:adj(su(3))+adj(g2)",
            "som:grass-so(3)x2",
            "som:e6/f4+su/sp(5)",
            "group:e8",
        ] {
            let spec: SpaceSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn som_repeat_expands() {
        let spec: SpaceSpec = "som:sphere(3)x3".parse().unwrap();
        assert_eq!(spec, SpaceSpec::Som(vec![SymSpaceId::Sphere(3); 3]));
        let spec: SpaceSpec = "som:e6/sp4x2".parse().unwrap();
        assert_eq!(spec, SpaceSpec::Som(vec![SymSpaceId::E6Sp4; 2]));
    }

    #[test]
    fn key_errors() {
        for bad in [
            "grassmann-square:m=3",
            "grassmann-square:n=3,n=4",
            "su-triple:p=2,q=5",
            "grassmann-square",
            "flag",
            "nope",
            "so26:n=1",
            "gen-wallach:so26",
            "som:sphere(3)x0",
            "som:torus(3)",
        ] {
            assert!(matches!(bad.parse::<SpaceSpec>(), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn giki_dimensions() {
        use SymSpaceId::*;
        for id in [GrassSo(3), GrassSp(2), Sphere(5), SuSo(5), SuSp(3), E6Sp4, E6F4, E7Su8, E8Spin16, F4Spin9] {
            assert_eq!(id.dim_k() + id.d_complement(), id.m() * (id.m() - 1) / 2, "{id}");
        }
        assert_eq!(Sphere(4).class(), FactorClass::Sphere);
        assert_eq!(GrassSo(3).class(), FactorClass::Grassmannian);
        assert_eq!(Adjoint(SimpleAlgebra::Su(3)).class(), FactorClass::Other);
        assert!(Adjoint(SimpleAlgebra::So(3)).validate().is_err());
        assert!(SuSo(4).validate().is_err());
    }
}
