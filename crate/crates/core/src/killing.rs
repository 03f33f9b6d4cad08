//! Killing-form restriction ratios and the Einstein constant of a standard
//! metric.
//!
//! For a simple or abelian ideal `k_i ⊂ k ⊂ g` one has
//! `Kil_{k_i} = c_i · Kil_g|_{k_i}` with `0 ≤ c_i ≤ 1`, and the standard
//! metric on `G/K` (if Einstein) has
//!
//! ```text
//! ρ = 1/4 + (1/2d) Σ (1 − c_i) dim k_i,     d = dim g − dim k.
//! ```
//!
//! Ratios for concrete embeddings live in a curated registry file
//! (`data/killing_ratios.txt`, embedded at build time, overridable through the
//! `EINSTAB_REGISTRY` environment variable). Every record carries the Dynkin
//! index `j` of the embedding, so that `c = h∨(k)/(j·h∨(g))` can be audited.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::SimpleAlgebra;
use crate::error::{Error, Result};
use crate::exact::{q, Rational};

/// Environment variable naming a replacement registry file.
pub const REGISTRY_ENV: &str = "EINSTAB_REGISTRY";

const BUILTIN: &str = include_str!("../data/killing_ratios.txt");
const FORMAT_MARKER: &str = "format version 1";

/// One registry record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KillingRatio {
    pub subalgebra: String,
    pub ambient: String,
    pub embedding_tag: String,
    pub c: Rational,
    pub dynkin_index: u32,
    pub citation: String,
}

impl KillingRatio {
    /// `h∨(k) / (j · h∨(g))` for the recorded Dynkin index `j`.
    pub fn index_prediction(&self) -> Result<Rational> {
        let k: SimpleAlgebra = self.subalgebra.parse()?;
        let g: SimpleAlgebra = self.ambient.parse()?;
        let hk = k.dual_coxeter()? as i64;
        let hg = g.dual_coxeter()? as i64;
        Ok(Rational::new(hk, i64::from(self.dynkin_index) * hg))
    }
}

/// Two identifiers name the same algebra (up to the low-rank coincidences).
fn same_algebra(a: &str, b: &str) -> bool {
    match (a.parse::<SimpleAlgebra>(), b.parse::<SimpleAlgebra>()) {
        (Ok(x), Ok(y)) => match (x.canonical(), y.canonical()) {
            (Ok(x), Ok(y)) => x == y,
            _ => a == b,
        },
        _ => a == b,
    }
}

/// The loaded registry; immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Registry {
    entries: Vec<KillingRatio>,
}

impl Registry {
    /// Parses the text format: a header comment containing the format
    /// version, then `sub | ambient | tag | c | index | citation` per line.
    pub fn parse(text: &str) -> Result<Self> {
        if !text
            .lines()
            .take_while(|l| l.trim_start().starts_with('#') || l.trim().is_empty())
            .any(|l| l.contains(FORMAT_MARKER))
        {
            return Err(Error::Registry(format!("missing `{FORMAT_MARKER}` header")));
        }
        let mut entries: Vec<KillingRatio> = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('|').map(str::trim).collect();
            let [sub, amb, tag, c, index, citation] = fields[..] else {
                return Err(Error::Registry(format!(
                    "line {}: expected 6 `|`-separated fields, found {}",
                    no + 1,
                    fields.len()
                )));
            };
            let c: Rational = c
                .parse()
                .map_err(|_| Error::Registry(format!("line {}: bad ratio `{c}`", no + 1)))?;
            if c.is_negative() || c > 1 {
                return Err(Error::Registry(format!("line {}: ratio {c} outside [0, 1]", no + 1)));
            }
            let dynkin_index: u32 = index
                .parse()
                .map_err(|_| Error::Registry(format!("line {}: bad Dynkin index `{index}`", no + 1)))?;
            if citation.is_empty() || tag.is_empty() {
                return Err(Error::Registry(format!("line {}: empty tag or citation", no + 1)));
            }
            let entry = KillingRatio {
                subalgebra: sub.to_ascii_lowercase(),
                ambient: amb.to_ascii_lowercase(),
                embedding_tag: tag.to_string(),
                c,
                dynkin_index,
                citation: citation.to_string(),
            };
            if entries.iter().any(|e| {
                e.subalgebra == entry.subalgebra && e.ambient == entry.ambient && e.embedding_tag == entry.embedding_tag
            }) {
                return Err(Error::Registry(format!(
                    "line {}: duplicate record {} ⊂ {} [{}]",
                    no + 1,
                    entry.subalgebra,
                    entry.ambient,
                    entry.embedding_tag
                )));
            }
            entries.push(entry);
        }
        Ok(Registry { entries })
    }

    /// The registry compiled into the library.
    pub fn builtin() -> Result<Self> {
        Self::parse(BUILTIN)
    }

    /// The file named by `EINSTAB_REGISTRY`, or the built-in table.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(REGISTRY_ENV) {
            Some(path) => {
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    Error::Registry(format!("cannot read {}: {e}", std::path::Path::new(&path).display()))
                })?;
                Self::parse(&text)
            }
            None => Self::builtin(),
        }
    }

    /// Process-wide registry, loaded on first use.
    pub fn global() -> Result<&'static Registry> {
        static CELL: OnceLock<Result<Registry>> = OnceLock::new();
        CELL.get_or_init(Registry::from_env).as_ref().map_err(Clone::clone)
    }

    pub fn entries(&self) -> &[KillingRatio] {
        &self.entries
    }

    pub fn lookup(&self, subalgebra: &str, ambient: &str, tag: &str) -> Result<&KillingRatio> {
        self.entries
            .iter()
            .find(|e| e.embedding_tag == tag && same_algebra(&e.subalgebra, subalgebra) && same_algebra(&e.ambient, ambient))
            .ok_or_else(|| Error::Registry(format!("no ratio for {subalgebra} ⊂ {ambient} [{tag}]")))
    }

    pub fn c(&self, subalgebra: &str, ambient: &str, tag: &str) -> Result<Rational> {
        Ok(self.lookup(subalgebra, ambient, tag)?.c.clone())
    }
}

/// Product of the ratios along a chain `k = k₀ ⊂ k₁ ⊂ ⋯ ⊂ g`.
///
/// The links may be listed innermost-first (`ambient` of each link is the
/// `subalgebra` of the next) or outermost-first (the reverse); a mixture is
/// rejected.
pub fn compose_ratio(chain: &[KillingRatio]) -> Result<Rational> {
    if chain.is_empty() {
        return Err(Error::NonComposable("empty chain".into()));
    }
    let inner_first = chain.windows(2).all(|w| same_algebra(&w[0].ambient, &w[1].subalgebra));
    let outer_first = chain.windows(2).all(|w| same_algebra(&w[0].subalgebra, &w[1].ambient));
    if !inner_first && !outer_first {
        let names: Vec<String> = chain.iter().map(|l| format!("{} ⊂ {}", l.subalgebra, l.ambient)).collect();
        return Err(Error::NonComposable(names.join(", ")));
    }
    Ok(chain.iter().map(|l| l.c.clone()).product())
}

/// `ρ = 1/4 + (1/2d) Σ (1 − c_i) dim k_i`, rejecting results outside
/// `[1/4, 1/2]`.
pub fn einstein_constant(d: u64, components: &[(Rational, u64)]) -> Result<Rational> {
    if d == 0 {
        return Err(Error::InvalidParameters("d = dim g − dim k must be positive".into()));
    }
    let sum: Rational = components
        .iter()
        .map(|(c, k)| (Rational::one() - c) * Rational::int(*k as i64))
        .sum();
    let rho = q(1, 4) + sum / Rational::int(2 * d as i64);
    if rho < q(1, 4) || rho > q(1, 2) {
        return Err(Error::OutOfBracket(rho));
    }
    Ok(rho)
}

/// `ρ = 1/4 + a/2` for a Casimir constant `a` of the isotropy representation.
pub fn rho_from_casimir(a: &Rational) -> Rational {
    q(1, 4) + a / Rational::int(2)
}

/// `c = (2 dim k − d)/(2 dim k)` for an irreducible symmetric pair with
/// `k` simple.
pub fn symmetric_pair_ratio(dim_k: u64, d: u64) -> Rational {
    Rational::new(2 * dim_k as i64 - d as i64, 2 * dim_k as i64)
}

/// `so(a) ⊂ so(b)` as a diagonal block: `(a − 2)/(b − 2)`.
pub fn so_block_ratio(a: u64, b: u64) -> Rational {
    Rational::new(a as i64 - 2, b as i64 - 2)
}

/// A factor `k_i` of the `SO(m)/K₁×⋯×K_l` construction whose symmetric space
/// has `dim k_i = κ m_i`: `c_i = (2κ − 1)/(m − 2)`.
pub fn som_factor_ratio(kappa: &Rational, m: u64) -> Rational {
    (Rational::int(2) * kappa - Rational::one()) / Rational::int(m as i64 - 2)
}

/// `su(p), su(q), su(l) ⊂ su(pq + l)` through `(C^p ⊗ C^q) ⊕ C^l`.
pub fn su_tensor_ratios(p: u64, qq: u64, l: u64) -> (Rational, Rational, Rational) {
    let n = (p * qq + l) as i64;
    let (p, qq, l) = (p as i64, qq as i64, l as i64);
    (Rational::new(p, qq * n), Rational::new(qq, p * n), Rational::new(l, n))
}

/// `sp(n), su(2n−1) ⊂ sp(3n−1)` through `sp(n) ⊕ sp(2n−1)`.
pub fn sp_chain_ratios(n: u64) -> (Rational, Rational) {
    let n = n as i64;
    (Rational::new(n + 1, 3 * n), Rational::new(2 * n - 1, 6 * n))
}

/// `so(n), su(n+1) ⊂ so(3n+2)` through `so(n) ⊕ so(2n+2)`.
pub fn so_chain_ratios(n: u64) -> (Rational, Rational) {
    let n = n as i64;
    (Rational::new(n - 2, 3 * n), Rational::new(n + 1, 3 * n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses_and_is_index_consistent() {
        let reg = Registry::builtin().unwrap();
        assert!(reg.entries().len() >= 30);
        for e in reg.entries() {
            assert!(!e.citation.is_empty());
            assert_eq!(e.index_prediction().unwrap(), e.c, "{} ⊂ {} [{}]", e.subalgebra, e.ambient, e.embedding_tag);
        }
    }

    #[test]
    fn composite_records_match_their_chains() {
        let reg = Registry::builtin().unwrap();
        let link = |s: &str, a: &str, t: &str| reg.lookup(s, a, t).unwrap().clone();
        let cases = [
            (vec![link("so(12)", "e7", "maximal"), link("e7", "e8", "maximal")], ("so(12)", "e8", "via-e7")),
            (vec![link("so(9)", "su(9)", "vector"), link("su(9)", "e8", "maximal")], ("so(9)", "e8", "via-su9")),
            (vec![link("so(6)", "su(6)", "vector"), link("su(6)", "e6", "maximal")], ("so(6)", "e6", "via-su6")),
            (vec![link("so(3)", "su(3)", "vector"), link("su(3)", "e8", "e6+su3")], ("so(3)", "e8", "via-4su3")),
            (vec![link("so(5)", "so(16)", "diagonal"), link("so(16)", "e8", "maximal")], ("so(5)", "e8", "via-so16")),
            (vec![link("su(3)", "su(9)", "tensor"), link("su(9)", "e8", "maximal")], ("su(3)", "e8", "via-su9")),
            (vec![link("so(8)", "su(8)", "vector"), link("su(8)", "e7", "maximal")], ("so(8)", "e7", "via-su8")),
            (vec![link("su(2)", "so(12)", "so4-factor"), link("so(12)", "e8", "via-e7")], ("su(2)", "e8", "root")),
        ];
        for (chain, (s, a, t)) in cases {
            assert_eq!(compose_ratio(&chain).unwrap(), reg.c(s, a, t).unwrap(), "{s} ⊂ {a}");
        }
    }

    #[test]
    fn compose_orders_and_errors() {
        let reg = Registry::builtin().unwrap();
        let a = reg.lookup("so(12)", "e7", "maximal").unwrap().clone();
        let b = reg.lookup("e7", "e8", "maximal").unwrap().clone();
        assert_eq!(compose_ratio(&[a.clone(), b.clone()]).unwrap(), q(1, 3));
        assert_eq!(compose_ratio(&[b.clone(), a.clone()]).unwrap(), q(1, 3));
        assert_eq!(compose_ratio(std::slice::from_ref(&a)).unwrap(), q(5, 9));
        let bad = reg.lookup("su(5)", "e8", "maximal").unwrap().clone();
        assert!(matches!(compose_ratio(&[a, bad]), Err(Error::NonComposable(_))));
    }

    #[test]
    fn einstein_constants() {
        assert_eq!(einstein_constant(240, &[(Rational::zero(), 8)]).unwrap(), q(4, 15));
        assert_eq!(einstein_constant(212, &[(q(7, 60), 36)]).unwrap(), q(13, 40));
        assert_eq!(
            einstein_constant(252, &[(q(1, 60), 3), (q(1, 4), 55), (q(1, 6), 15)]).unwrap(),
            q(29, 80)
        );
        assert!(matches!(einstein_constant(2, &[(Rational::zero(), 8)]), Err(Error::OutOfBracket(_))));
        assert!(einstein_constant(0, &[]).is_err());
    }

    #[test]
    fn casimir_route() {
        assert_eq!(rho_from_casimir(&Rational::zero()), q(1, 4));
        assert_eq!(rho_from_casimir(&q(1, 6)), q(1, 3));
        // SO(9)/SO(3)³: a = 2·dim k_i/(m_i(m − 2)) with dim k_i = m_i = 3
        assert_eq!(rho_from_casimir(&q(2, 7)), q(11, 28));
    }

    #[test]
    fn symmetric_pairs_have_rho_one_half() {
        // (dim g, dim k) for a few irreducible symmetric pairs with k simple
        for (g, k) in [(36u64, 28u64), (133, 63), (248, 120), (78, 52), (52, 36), (35, 20)] {
            let d = g - k;
            let c = symmetric_pair_ratio(k, d);
            assert_eq!(einstein_constant(d, &[(c, k)]).unwrap(), q(1, 2));
        }
    }

    #[test]
    fn parse_errors() {
        assert!(Registry::parse("su(2) | e7 | root | 1/9 | 1 | x").is_err());
        let hdr = "# format version 1\n";
        assert!(Registry::parse(&format!("{hdr}su(2) | e7 | root | 1/9 | 1")).is_err());
        assert!(Registry::parse(&format!("{hdr}su(2) | e7 | root | 3/2 | 1 | x")).is_err());
        assert!(Registry::parse(&format!("{hdr}su(2) | e7 | root | 1/9 | 1 | x\nsu(2) | e7 | root | 1/9 | 1 | y")).is_err());
        let ok = Registry::parse(&format!("{hdr}su(2) | e7 | root | 1/9 | 1 | x")).unwrap();
        assert_eq!(ok.c("so(3)", "e7", "root").unwrap(), q(1, 9));
    }

    #[test]
    fn parametric_ratios() {
        // SU(pq+l)/SU(p)SU(q)U(l) with p = q = 2, l = 3
        let (cp, cq, cl) = su_tensor_ratios(2, 2, 3);
        assert_eq!((cp.clone(), cq, cl.clone()), (q(1, 7), q(1, 7), q(3, 7)));
        assert_eq!(sp_chain_ratios(2), (q(1, 2), q(1, 4)));
        assert_eq!(so_chain_ratios(3), (q(1, 9), q(4, 9)));
        assert_eq!(so_block_ratio(4, 12), q(1, 5));
        assert_eq!(som_factor_ratio(&Rational::one(), 16), q(1, 14));
    }
}
