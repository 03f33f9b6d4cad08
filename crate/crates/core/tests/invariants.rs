use std::collections::BTreeSet;

use einstab::exact::{rational_spectrum, Rational, Spectrum};
use einstab::lich::{assemble_lich_matrix, VerdictKind};
use einstab::rootsys::{adjacency_matrix, kappa, RootSystemId};
use einstab::spaces::{analyze_bare, build, expected_table, Constants, Report, SpaceModel, SpaceSpec, TableId};
use einstab::Error;
use proptest::prelude::*;

/// Every catalogue space with a generator, from the published tables.
fn catalogue() -> Vec<String> {
    let mut specs: BTreeSet<String> = TableId::ALL
        .into_iter()
        .flat_map(expected_table)
        .filter_map(|row| row.spec.map(|s| s.to_string()))
        .collect();
    for f in ["flag:su(3)", "flag:su(5)", "flag:so(8)", "flag:so(12)", "flag:e6"] {
        specs.insert(f.to_string());
    }
    specs.into_iter().collect()
}

/// κ = 1 factors: `dim k_i = m_i`.
const KAPPA_ONE: [&str; 5] = ["sphere(3)", "adj(su(3))", "adj(so(5))", "adj(g2)", "adj(su(4))"];

fn som_kappa_one() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(KAPPA_ONE.to_vec()), 2..=4).prop_map(|v| format!("som:{}", v.join("+")))
}

fn families() -> impl Strategy<Value = String> {
    prop_oneof![
        (3u32..=7).prop_map(|n| format!("grassmann-square:n={n}")),
        (3u32..=8).prop_map(|n| format!("flag:su({n})")),
        (3u32..=6).prop_map(|n| format!("flag:so({})", 2 * n)),
        (2u32..=6, 3usize..=4).prop_map(|(k, l)| format!("som:sphere({k})x{l}")),
        (1u32..=4).prop_map(|n| format!("sp-chain:n={n}")),
        (3u32..=6).prop_map(|n| format!("so-chain:n={n}")),
        som_kappa_one(),
    ]
}

fn any_space() -> impl Strategy<Value = String> {
    prop_oneof![prop::sample::select(catalogue()), families()]
}

fn numeric(model: &SpaceModel) -> Option<(&einstab::lich::SummandSet, &einstab::lich::StructuralConstants)> {
    match (&model.summands, &model.constants) {
        (Some(s), Constants::Numeric(sc)) => Some((s, sc)),
        _ => None,
    }
}

fn spectrum_of(model: &SpaceModel) -> Option<Spectrum> {
    let (s, sc) = numeric(model)?;
    match rational_spectrum(&assemble_lich_matrix(s, sc).unwrap()) {
        Ok(spec) => Some(spec),
        Err(Error::NonRationalSpectrum { .. }) => None,
        Err(e) => panic!("{}: {e}", model.spec),
    }
}

/// `Σ_{i,j} [ijk]` over ordered pairs.
fn bracket_sums(model: &SpaceModel) -> Option<Vec<Rational>> {
    let (s, sc) = numeric(model)?;
    let mut out = vec![Rational::zero(); s.len()];
    for (t, v) in sc.iter() {
        let idx: Vec<usize> = t.iter().map(|l| s.index_of(l).unwrap()).collect();
        let mut perms = vec![
            [idx[0], idx[1], idx[2]],
            [idx[0], idx[2], idx[1]],
            [idx[1], idx[0], idx[2]],
            [idx[1], idx[2], idx[0]],
            [idx[2], idx[0], idx[1]],
            [idx[2], idx[1], idx[0]],
        ];
        perms.sort();
        perms.dedup();
        for p in perms {
            out[p[2]] += v;
        }
    }
    Some(out)
}

/// `None` for isotropy-irreducible spaces (two spheres), which have no
/// trace-free directions to analyse.
fn analyzed(spec: &str) -> Option<Report> {
    match analyze_bare(&spec.parse().unwrap()) {
        Err(Error::InvalidCase(_)) => None,
        other => Some(other.unwrap_or_else(|e| panic!("{spec}: {e}"))),
    }
}

fn model(spec: &str) -> SpaceModel {
    build(&spec.parse::<SpaceSpec>().unwrap()).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn all_ones_is_in_the_kernel(spec in any_space()) {
        let m = model(&spec);
        if let Some((s, sc)) = numeric(&m) {
            let image = assemble_lich_matrix(s, sc).unwrap().mul_vec(&vec![Rational::one(); s.len()]);
            prop_assert!(image.iter().all(Rational::is_zero), "{spec}: S·1 = {image:?}");
        }
    }

    #[test]
    fn trace_is_the_weighted_eigenvalue_sum(spec in any_space()) {
        let m = model(&spec);
        if let (Some((s, sc)), Some(spectrum)) = (numeric(&m), spectrum_of(&m)) {
            let trace = assemble_lich_matrix(s, sc).unwrap().trace();
            prop_assert_eq!(spectrum.weighted_sum(), trace);
            prop_assert_eq!(spectrum.order(), s.len());
        }
    }

    #[test]
    fn zero_is_a_simple_eigenvalue(spec in any_space()) {
        let m = model(&spec);
        if let Some(spectrum) = spectrum_of(&m) {
            prop_assert_eq!(spectrum.multiplicity(&Rational::zero()), 1, "{}", spec);
        }
    }

    #[test]
    fn bracket_sums_follow_the_casimir(spec in any_space()) {
        let m = model(&spec);
        if let (Some(a), Some(sums)) = (&m.casimir, bracket_sums(&m)) {
            let s = m.summands.as_ref().unwrap();
            for (k, total) in sums.iter().enumerate() {
                let d = Rational::int(s.dim(k) as i64);
                prop_assert_eq!(total, &(&d * &(Rational::one() - Rational::int(2) * a)), "{} summand {}", spec, k);
            }
        }
    }

    #[test]
    fn criterion_interval_encloses_the_spectrum(spec in any_space()) {
        let Some(report) = analyzed(&spec) else { return Ok(()) };
        let interval = report.criteria.as_ref().and_then(|c| c.c1.as_ref()).and_then(|c| c.bound_interval.clone());
        let lo = report.lambda_p.as_ref().and_then(|v| v.exact().cloned());
        let hi = report.lambda_p_max.as_ref().and_then(|v| v.exact().cloned());
        if let (Some((a, b)), Some(lo), Some(hi)) = (interval, lo, hi) {
            prop_assert!(a <= lo && lo <= hi && hi <= b, "{spec}: [{lo}, {hi}] ⊄ [{a}, {b}]");
        }
    }

    #[test]
    fn flag_adjacency_is_regular(id in prop_oneof![
        (3u32..=9).prop_map(RootSystemId::A),
        (4u32..=8).prop_map(RootSystemId::D),
        Just(RootSystemId::E6),
        Just(RootSystemId::E7),
        Just(RootSystemId::E8),
    ]) {
        let a = adjacency_matrix(id).unwrap();
        let k = kappa(&a);
        prop_assert_eq!(k, id.kappa_closed_form());
        for i in 0..a.order() {
            let row = a.row(i).iter().filter(|v| !v.is_zero()).count() as u64;
            prop_assert_eq!(row, k, "{:?} row {}", id, i);
        }
    }

    #[test]
    fn som_coindex_bound_and_saddle(spec in som_kappa_one()) {
        let Some(report) = analyzed(&spec) else { return Ok(()) };
        let som = report.som.as_ref().unwrap();
        let verdict = report.verdict.as_ref().unwrap();
        if let Some(coindex) = verdict.coindex {
            prop_assert!(coindex >= som.coindex_bound, "{spec}: coindex {coindex} < {}", som.coindex_bound);
        }
        if som.l1 + som.l - som.l2 >= 2 {
            prop_assert_eq!(verdict.kind, VerdictKind::UnstableSaddle, "{}", spec);
        }
    }

    #[test]
    fn som_spectrum_shape_without_spheres(factors in prop::collection::vec(prop::sample::select(KAPPA_ONE[1..].to_vec()), 2..=4)) {
        let spec = format!("som:{}", factors.join("+"));
        let report = analyze_bare(&spec.parse().unwrap()).unwrap();
        let som = report.som.as_ref().unwrap();
        prop_assert_eq!((som.l1, som.l2), (0, 0));
        let (l, m) = (som.l, som.m as i64);
        let lambda_p = Rational::new(m, 2 * (m - 2));
        let lambda_max = (Rational::int(m - 1) - Rational::int(2) * &som.kappa) / Rational::int(m - 2);
        let expected = vec![(lambda_p, l - 1), (lambda_max, l * (l - 1) / 2)];
        prop_assert_eq!(report.trace_free_pairs().unwrap(), expected, "{}", spec);
    }
}

/// `SO(2n)/SO(2)ⁿ` seen through the block decomposition and through the
/// root planes: the coarse spectrum is part of the fine one, with the same
/// largest value.
#[test]
fn block_and_root_plane_flags_agree() {
    for n in 3..=6 {
        let coarse = spectrum_of(&model(&format!("som:sphere(2)x{n}"))).unwrap();
        let fine = spectrum_of(&model(&format!("flag:so({})", 2 * n))).unwrap();
        let c: BTreeSet<Rational> = coarse.nonzero_values().into_iter().collect();
        let f: BTreeSet<Rational> = fine.nonzero_values().into_iter().collect();
        assert!(c.is_subset(&f), "n = {n}: {c:?} ⊄ {f:?}");
        assert_eq!(c.last(), f.last(), "n = {n}");
        if n == 4 {
            assert_eq!(c, f);
        }
    }
}
