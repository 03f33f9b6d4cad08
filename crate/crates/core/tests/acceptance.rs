//! One PASS/FAIL line per acceptance criterion. Exact criteria use rational
//! equality; the floating-point tolerances are pinned below.

use std::collections::BTreeSet;
use std::io::Write as _;

use einstab::algebra::SimpleAlgebra;
use einstab::criteria::{casimir_row, criterion_structural, CriterionPart};
use einstab::exact::{q, rational_spectrum, Rational};
use einstab::lich::{assemble_lich_matrix, VerdictKind};
use einstab::oracle::{self, OracleReport, OracleTarget};
use einstab::rootsys::{adjacency_matrix, kappa, RootSystemId};
use einstab::spaces::{
    all_expected_rows, analyze_bare, build, regenerate_table, Constants, Field, FieldStatus, Report, RowStatus,
    SpaceSpec, TableId,
};
use einstab::Error;

/// Relative error allowed between brute-force and closed-form constants, and
/// residual allowed in every Casimir identity.
const CONSTANT_TOL: f64 = 1e-9;
/// Absolute error allowed between brute-force and exact eigenvalues.
const SPECTRUM_TOL: f64 = 1e-8;
/// Orthonormality of the oracle's bases.
const ORTHONORMAL_TOL: f64 = 1e-12;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

/// A spectrum as `(value, multiplicity)` pairs.
type Pairs = Vec<(Rational, usize)>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report(spec: &str) -> Result<Report, String> {
    let s: SpaceSpec = spec.parse().map_err(|e: Error| format!("{spec}: {e}"))?;
    analyze_bare(&s).map_err(|e| format!("{spec}: {e}"))
}

fn r(n: i64, d: i64) -> Rational {
    q(n, d)
}

fn trace_free(rep: &Report) -> Result<Vec<(Rational, usize)>, String> {
    rep.trace_free_pairs().ok_or_else(|| format!("{}: spectrum not rational", rep.spec))
}

fn rows_pass(tables: &[TableId]) -> Result<(usize, usize), String> {
    let (mut matched, mut adjusted) = (0, 0);
    for &t in tables {
        for row in regenerate_table(t).map_err(|e| format!("table {t}: {e}"))? {
            match row.status {
                RowStatus::Match => matched += 1,
                RowStatus::ErratumAdjusted => adjusted += 1,
                RowStatus::DataOnly => {}
                RowStatus::Mismatch => {
                    let bad: Vec<String> = row
                        .checks
                        .iter()
                        .filter(|c| c.status == FieldStatus::Mismatch)
                        .map(|c| format!("{:?}: expected {} got {:?}", c.field, c.expected, c.computed))
                        .collect();
                    return Err(format!("{t} row {}: {}", row.id, bad.join("; ")));
                }
            }
        }
    }
    Ok((matched, adjusted))
}

fn criterion_1() -> Outcome {
    let (matched, adjusted) = rows_pass(&[TableId::IB1, TableId::IB2, TableId::IB3])?;
    let spot: [(&str, Rational, Pairs); 8] = [
        ("e7-su2x7", r(1, 3), vec![(r(7, 9), 6)]),
        ("e8-su2x8", r(3, 10), vec![(r(4, 5), 7), (r(14, 15), 6)]),
        ("e8-su3x4", r(19, 60), vec![(r(4, 5), 3)]),
        ("e8-spin9", r(13, 40), vec![(r(53, 60), 1)]),
        ("e8-su5su5", r(7, 20), vec![(r(4, 5), 1)]),
        ("flag:e6", r(7, 24), vec![(r(3, 4), 20), (Rational::one(), 15)]),
        ("flag:e7", r(5, 18), vec![(r(7, 9), 27), (Rational::one(), 35)]),
        ("flag:e8", r(4, 15), vec![(r(4, 5), 35), (Rational::one(), 84)]),
    ];
    for (spec, rho, spectrum) in spot {
        let rep = report(spec)?;
        ensure(rep.rho.as_ref() == Some(&rho), || format!("{spec}: ρ = {:?}, expected {rho}", rep.rho))?;
        let tf = trace_free(&rep)?;
        ensure(tf == spectrum, || format!("{spec}: spectrum {tf:?}, expected {spectrum:?}"))?;
        ensure(rep.verdict.is_some(), || format!("{spec}: no verdict"))?;
    }
    Ok(format!("{matched} rows exact, {adjusted} erratum-adjusted; 8 spot values exact"))
}

fn criterion_2() -> Outcome {
    let (matched, adjusted) = rows_pass(&[TableId::IA, TableId::IAA])?;
    // λ_p^max of the adjoint and mixed som rows must equal the corrected
    // closed form; the printed value is carried as an erratum
    let mut lambda_max_rows = 0;
    for row in regenerate_table(TableId::IAA).map_err(|e| e.to_string())? {
        if !(row.id.starts_with("4 ") || row.id.starts_with("5 ")) {
            continue;
        }
        if let Some(c) = row.checks.iter().find(|c| c.field == Field::LambdaPMax) {
            ensure(matches!(c.status, FieldStatus::Match | FieldStatus::ErratumAdjusted), || {
                format!("IAA row {}: λ_p^max {:?} matches neither closed form ({:?})", row.id, c.computed, c.status)
            })?;
            lambda_max_rows += 1;
        }
    }
    ensure(lambda_max_rows >= 5, || format!("only {lambda_max_rows} λ_p^max rows compared"))?;
    Ok(format!("{matched} rows exact, {adjusted} erratum-adjusted; {lambda_max_rows} λ_p^max values on the corrected form"))
}

fn criterion_3() -> Outcome {
    let mut compared = 0;
    for t in [TableId::IB1, TableId::IB2, TableId::IB3, TableId::IAA] {
        for row in regenerate_table(t).map_err(|e| e.to_string())? {
            for c in row.checks.iter().filter(|c| matches!(c.field, Field::C1 | Field::C2)) {
                ensure(c.status != FieldStatus::Mismatch, || {
                    format!("{t} row {} {:?}: expected {} got {:?}", row.id, c.field, c.expected, c.computed)
                })?;
                compared += 1;
            }
        }
    }
    // the dimension-only criterion on E8/SU(2)⁸: dim k = 24 below 36
    let e8 = casimir_row(SimpleAlgebra::E8).map_err(|e| e.to_string())?;
    let c = criterion_structural(248, 24, &e8).map_err(|e| e.to_string())?;
    ensure(c.applied == CriterionPart::Sc2I, || format!("e8, dim k 24: {:?}", c.applied))?;
    let (t1, _) = c.thresholds.clone().unwrap();
    ensure(t1 == Rational::int(36), || format!("e8 threshold {t1}"))?;
    Ok(format!("{compared} C1/C2 flags reproduced"))
}

fn criterion_4() -> Outcome {
    let mut errors = Vec::new();
    let mut check = |spec: &str, kind: Option<VerdictKind>, coindex: Option<usize>, nullity: Option<usize>| {
        let rep = match report(spec) {
            Ok(r) => r,
            Err(e) => return errors.push(e),
        };
        let Some(v) = rep.verdict.as_ref() else { return errors.push(format!("{spec}: no verdict")) };
        if kind.is_some_and(|k| v.kind != k) {
            errors.push(format!("{spec}: {} ≠ {}", v.kind, kind.unwrap()));
        }
        if coindex.is_some() && v.coindex != coindex {
            errors.push(format!("{spec}: coindex {:?} ≠ {coindex:?}", v.coindex));
        }
        if nullity.is_some() && v.nullity != nullity {
            errors.push(format!("{spec}: nullity {:?} ≠ {nullity:?}", v.nullity));
        }
    };
    check("flag:su(4)", None, Some(3), Some(2));
    check("flag:so(6)", None, Some(3), Some(2));
    for n in 4..=8 {
        check(&format!("flag:so({})", 2 * n), Some(VerdictKind::NeutrallyStable), None, Some(n - 1));
    }
    for n in 5..=9 {
        check(&format!("flag:su({n})"), None, Some(n - 1), None);
    }
    if errors.is_empty() {
        Ok("su(4), so(6), so(2n) n=4..8, su(n) n=5..9".into())
    } else {
        Err(errors.join("; "))
    }
}

fn criterion_5() -> Outcome {
    let specs: BTreeSet<String> = all_expected_rows()
        .into_iter()
        .filter_map(|row| row.spec.map(|s| s.to_string()))
        .collect();
    let mut agreeing = Vec::new();
    for spec in &specs {
        let model = build(&spec.parse().unwrap()).map_err(|e| format!("{spec}: {e}"))?;
        let routes = model.rho_routes().map_err(|e| format!("{spec}: {e}"))?;
        let agreed = routes.agreed().map_err(|e| format!("{spec}: routes disagree: {e}"))?;
        if routes.count() == 3 && agreed.is_some() {
            agreeing.push(spec.clone());
        }
    }
    ensure(agreeing.len() >= 12, || format!("only {} spaces with three agreeing routes", agreeing.len()))?;
    Ok(format!("{} spaces with three exact routes, none disagreeing", agreeing.len()))
}

fn run(target: &str) -> Result<OracleReport, String> {
    let t: OracleTarget = target.parse().map_err(|e: Error| e.to_string())?;
    oracle::run_target(&t).map_err(|e| format!("{target}: {e}"))
}

fn within(rep: &OracleReport, name: &str, tol: f64) -> Result<(), String> {
    let c = rep.check(name).ok_or_else(|| format!("{}: no check {name}", rep.target))?;
    ensure(c.deviation <= tol, || format!("{}: {name} deviates by {:e} (> {tol:e})", rep.target, c.deviation))
}

fn criterion_6() -> Outcome {
    let sphere = run("som:sphere(3)x3")?;
    within(&sphere, "constants-vs-exact", CONSTANT_TOL)?;
    within(&sphere, "[(1,2)(1,3)(2,3)]", CONSTANT_TOL)?;
    let grass = run("grassmann:n=3")?;
    within(&grass, "constants-vs-exact", CONSTANT_TOL)?;
    within(&grass, "[112]", CONSTANT_TOL)?;
    for n in [3, 4] {
        let flag = run(&format!("flag:so({})", 2 * n))?;
        within(&flag, "constants-vs-exact", CONSTANT_TOL)?;
        within(&flag, "nonzero-constants", CONSTANT_TOL)?;
    }
    let mut spectra = 0;
    for t in oracle::default_targets().iter().chain(oracle::extended_targets().iter()) {
        let rep = oracle::run_target(t).map_err(|e| e.to_string())?;
        if rep.check("spectrum-vs-exact").is_some() {
            within(&rep, "spectrum-vs-exact", SPECTRUM_TOL)?;
            spectra += 1;
        }
    }
    let lm = run("resolve-lambda-max")?;
    within(&lm, "lambda-max-corrected", SPECTRUM_TOL)?;
    Ok(format!("constants within {CONSTANT_TOL:e}, {spectra} spectra within {SPECTRUM_TOL:e}; {}", lm.conclusion.unwrap_or_default()))
}

fn criterion_7() -> Outcome {
    let identities = [
        "killing-restriction",
        "casimir-from-brackets",
        "casimir-trace",
        "mixed-brackets-vanish",
        "casimir-vs-p-brackets",
        "ricci-from-casimir",
    ];
    let mut targets = 0;
    for t in oracle::default_targets().iter().chain(oracle::extended_targets().iter()) {
        let rep = oracle::run_target(t).map_err(|e| e.to_string())?;
        within(&rep, "orthonormality", ORTHONORMAL_TOL)?;
        for name in identities {
            within(&rep, name, CONSTANT_TOL)?;
        }
        let failed: Vec<&str> = rep.failures().map(|c| c.name.as_str()).collect();
        ensure(failed.is_empty(), || format!("{}: failed {failed:?}", rep.target))?;
        targets += 1;
    }
    Ok(format!("{} identities on {targets} targets within {CONSTANT_TOL:e}", identities.len()))
}

fn criterion_8() -> Outcome {
    let mut specs: BTreeSet<String> = all_expected_rows()
        .into_iter()
        .filter_map(|row| row.spec.map(|s| s.to_string()))
        .collect();
    for n in 3..=8 {
        specs.insert(format!("flag:su({n})"));
    }
    for n in 3..=8 {
        specs.insert(format!("flag:so({})", 2 * n));
    }
    specs.extend(["flag:e6", "flag:e7", "flag:e8"].map(String::from));
    let (mut matrices, mut intervals, mut sums) = (0, 0, 0);
    for spec in &specs {
        let model = build(&spec.parse().unwrap()).map_err(|e| format!("{spec}: {e}"))?;
        let (Some(s), Constants::Numeric(sc)) = (&model.summands, &model.constants) else { continue };
        let m = assemble_lich_matrix(s, sc).map_err(|e| e.to_string())?;
        let image = m.mul_vec(&vec![Rational::one(); s.len()]);
        ensure(image.iter().all(Rational::is_zero), || format!("{spec}: all-ones not in the kernel"))?;
        if let Ok(spectrum) = rational_spectrum(&m) {
            ensure(spectrum.weighted_sum() == m.trace(), || format!("{spec}: trace ≠ Σ value·mult"))?;
        }
        matrices += 1;
        if let Some(a) = &model.casimir {
            let mut totals = vec![Rational::zero(); s.len()];
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
                    totals[p[2]] += v;
                }
            }
            for (k, total) in totals.iter().enumerate() {
                let want = Rational::int(s.dim(k) as i64) * (Rational::one() - Rational::int(2) * a);
                ensure(*total == want, || format!("{spec}: Σ[ij{k}] = {total} ≠ {want}"))?;
            }
            sums += 1;
        }
        let rep = analyze_bare(&spec.parse().unwrap()).map_err(|e| format!("{spec}: {e}"))?;
        let interval = rep.criteria.as_ref().and_then(|c| c.c1.as_ref()).and_then(|c| c.bound_interval.clone());
        let lo = rep.lambda_p.as_ref().and_then(|v| v.exact().cloned());
        let hi = rep.lambda_p_max.as_ref().and_then(|v| v.exact().cloned());
        if let (Some((a, b)), Some(lo), Some(hi)) = (interval, lo, hi) {
            ensure(a <= lo && hi <= b, || format!("{spec}: [{lo}, {hi}] ⊄ [{a}, {b}]"))?;
            intervals += 1;
        }
    }
    let types = [RootSystemId::A(5), RootSystemId::D(6), RootSystemId::E6, RootSystemId::E7, RootSystemId::E8];
    for id in types {
        let a = adjacency_matrix(id).map_err(|e| e.to_string())?;
        let k = kappa(&a);
        ensure(k == id.kappa_closed_form(), || format!("{id:?}: κ = {k}"))?;
        for i in 0..a.order() {
            let row = a.row(i).iter().filter(|v| !v.is_zero()).count() as u64;
            ensure(row == k, || format!("{id:?}: row {i} has {row} neighbours, κ = {k}"))?;
        }
    }
    Ok(format!(
        "{matrices} matrices (kernel, trace), {intervals} enclosures, {sums} bracket-sum identities, {} root types regular",
        types.len()
    ))
}

fn criterion_9() -> Outcome {
    let saddles = [
        "som:adj(su(3))x2",
        "som:adj(su(3))x3",
        "som:adj(su(3))x4",
        "som:adj(su(3))+adj(so(5))+adj(g2)",
        "som:su/so(5)x3",
        "som:grass-so(4)+su/so(6)",
        "som:sphere(3)+adj(su(3))+adj(g2)",
    ];
    for spec in saddles {
        let rep = report(spec)?;
        let som = rep.som.as_ref().ok_or_else(|| format!("{spec}: no som data"))?;
        let v = rep.verdict.as_ref().ok_or_else(|| format!("{spec}: no verdict"))?;
        if let Some(ci) = v.coindex {
            ensure(ci >= som.coindex_bound, || format!("{spec}: coindex {ci} < {}", som.coindex_bound))?;
        }
        if som.l1 + som.l - som.l2 >= 2 {
            ensure(v.kind == VerdictKind::UnstableSaddle, || format!("{spec}: {} is not a saddle", v.kind))?;
        }
    }
    let shapes = ["som:adj(su(3))x2", "som:adj(su(3))x3", "som:adj(su(3))x4", "som:adj(su(3))+adj(so(5))+adj(g2)", "som:su/so(5)x2", "som:su/sp(3)x3"];
    for spec in shapes {
        let rep = report(spec)?;
        let som = rep.som.as_ref().unwrap();
        ensure(som.l1 == 0 && som.l2 == 0, || format!("{spec}: has Grassmannian or sphere factors"))?;
        let (l, m) = (som.l, som.m as i64);
        let lp = Rational::new(m, 2 * (m - 2));
        let lmax = (Rational::int(m - 1) - Rational::int(2) * &som.kappa) / Rational::int(m - 2);
        let want = vec![(lp, l - 1), (lmax, l * (l - 1) / 2)];
        let got = trace_free(&rep)?;
        ensure(got == want, || format!("{spec}: {got:?} ≠ {want:?}"))?;
        ensure(som.eigenvectors_verified == Some(true), || format!("{spec}: eigenvector equations fail"))?;
    }
    Ok(format!("{} coindex/saddle instances, {} spectrum shapes with eigenvectors", saddles.len(), shapes.len()))
}

fn criterion_10() -> Outcome {
    for n in [2, 3] {
        let spec = format!("grassmann-square-sp:n={n}");
        let rep = report(&spec)?;
        let d = rep.dichotomy.as_ref().ok_or_else(|| format!("{spec}: no dichotomy"))?;
        ensure(d.statement.starts_with("a ≤ 9b ⟺"), || format!("{spec}: statement `{}`", d.statement))?;
        ensure(d.statement.contains("unique") && d.statement.contains("global maximum"), || {
            format!("{spec}: statement `{}`", d.statement)
        })?;
        ensure(rep.lambda_p.is_none() && rep.spectrum.is_none(), || format!("{spec}: numeric spectrum emitted"))?;
        let numeric = rep.verdict.as_ref().is_some_and(|v| v.coindex.is_some() || v.nullity.is_some());
        ensure(!numeric, || format!("{spec}: numeric verdict emitted"))?;
    }
    let d = report("grassmann-square-sp:n=2")?.dichotomy.unwrap();
    ensure(d.threshold == r(475, 56) && d.upper == r(75, 7), || format!("n = 2: threshold {}, upper {}", d.threshold, d.upper))?;
    Ok(format!("symbolic threshold on n = 2, 3; n = 2: unique and global max iff [112] ≥ {} (range ≤ {})", d.threshold, d.upper))
}

/// Criteria that cannot hold as stated, with the exact failure they produce.
/// Any other failure, or a different message, fails the test.
const KNOWN_RED: [(usize, &str, &str); 1] = [(
    4,
    "flag:so(8): nullity Some(9) ≠ Some(3)",
    "at n = 4 the middle eigenvalue (n−2)/(n−1) equals λ_p = 2ρ = 2/3, so the nullity is 3 + 6 = 9; \
     the oracle confirms 2/3 with multiplicity 9",
)];

#[test]
fn acceptance() {
    let criteria: [(&str, Criterion); 10] = [
        ("isolated-space tables reproduce exactly", criterion_1),
        ("family tables reproduce exactly", criterion_2),
        ("criteria columns", criterion_3),
        ("coindex and nullity spot checks", criterion_4),
        ("three-route Einstein constant", criterion_5),
        ("oracle constants and spectra", criterion_6),
        ("Casimir identities on oracle targets", criterion_7),
        ("property suite", criterion_8),
        ("som construction", criterion_9),
        ("open two-summand case", criterion_10),
    ];
    // Written straight to the process stdout so the ledger shows up even
    // when the test harness captures output.
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => writeln!(out, "criterion {:>2}: PASS  {name}: {detail}", i + 1).unwrap(),
            Err(why) => {
                writeln!(out, "criterion {:>2}: FAIL  {name}: {why}", i + 1).unwrap();
                match KNOWN_RED.iter().find(|(n, msg, _)| *n == i + 1 && *msg == why) {
                    Some((_, _, reason)) => writeln!(out, "              known: {reason}").unwrap(),
                    None => failed.push(i + 1),
                }
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
