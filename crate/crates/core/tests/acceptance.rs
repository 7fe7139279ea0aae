//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rbj_core::constructions::{
    build_example4, build_example5, build_j3, match_j3_family, solve_example4_params, Example5Params, J3Params,
};
use rbj_core::quadform::{isotropic_vector, represent};
use rbj_core::rbindex::{census, rb_index_bruteforce, rb_index_table, Certification, SearchConfig};
use rbj_core::rbop::{extend_by_zero, lemma_diagnostics, Flag};
use rbj_core::{
    check_rb, is_rb_zero, nilpotency_index, BilinearForm, CliffordAlgebra, DiagonalForm, FieldCtx, LinOperator,
    Scalar, Solution,
};

type Outcome = Result<String, String>;

/// Every operator produced along the way, checked for `R^3 = 0` and the
/// structural diagnostics.
#[derive(Default)]
struct Audit {
    operators: u64,
    cube_violations: Vec<String>,
    lemma_violations: Vec<String>,
    skew_checked: u64,
}

impl Audit {
    fn record(&mut self, r: &LinOperator, origin: &str) {
        self.operators += 1;
        if !r.power(3).is_zero() {
            self.cube_violations.push(format!("{origin}: {}", r.to_file_string()));
        }
        let flags = lemma_diagnostics(r);
        if !flags.all_pass() {
            let failed: Vec<_> = flags.iter().filter(|(_, f)| f.is_fail()).map(|(n, _)| n).collect();
            self.lemma_violations.push(format!("{origin} {failed:?}: {}", r.to_file_string()));
        }
        if flags.skew_block == Flag::Pass {
            self.skew_checked += 1;
        }
    }
}

fn zp(p: u64) -> FieldCtx {
    FieldCtx::prime(p).unwrap()
}

fn algebra(ctx: &FieldCtx, d: &[i64]) -> CliffordAlgebra {
    CliffordAlgebra::from_ints(ctx, d).unwrap()
}

fn ints(ctx: &FieldCtx, xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| ctx.from_i64(x)).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {t:.1?}, limit {limit:?}"))
}

fn golden_operator(audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    let ctx = zp(7);
    let j = algebra(&ctx, &[-1, -1, -1]);
    let fixture =
        LinOperator::from_int_rows(&j, &[&[0, 1, 2, 3], &[1, 0, 3, 5], &[2, 4, 0, 1], &[3, 2, 6, 0]]).unwrap();
    let report = check_rb(&fixture, &ctx.zero());
    ensure(report.is_rb, || format!("failing pairs {:?}", report.failing_pairs))?;
    ensure(report.nilpotency_index == Some(3), || format!("index {:?}", report.nilpotency_index))?;
    let params = Example5Params { k: [ctx.from_i64(1), ctx.from_i64(2), ctx.from_i64(3)], x0: ctx.one() };
    let built = build_example5(&j, &params).map_err(|e| e.to_string())?;
    ensure(built == fixture, || format!("constructed\n{}", built.to_file_string()))?;
    audit.record(&fixture, "golden_z7");
    within(start, Duration::from_secs(1))?;
    Ok("fixture is RB with index 3 and equals the k = (1,2,3), x0 = 1 construction".into())
}

fn j3_max_index_two(audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    let mut forms = 0;
    for p in [3u64, 5] {
        let ctx = zp(p);
        for d1 in 1..p as i64 {
            for d2 in 1..p as i64 {
                let f = BilinearForm::new(&ctx, ints(&ctx, &[d1, d2])).unwrap();
                let naive = census(&ctx, &f, &SearchConfig::naive().collecting()).map_err(|e| e.to_string())?;
                ensure(naive.certification == Certification::Naive && naive.complete, || "not naive".into())?;
                ensure(naive.max_index() == Some(2), || format!("p={p} f=({d1},{d2}): {:?}", naive.by_index))?;
                ensure(naive.count(2) > 0, || format!("p={p} f=({d1},{d2}): no nonzero operator"))?;
                if p == 3 {
                    let pruned = census(&ctx, &f, &SearchConfig::pruned()).map_err(|e| e.to_string())?;
                    ensure(pruned.by_index == naive.by_index, || format!("pruned differs at f=({d1},{d2})"))?;
                }
                for r in &naive.operators {
                    audit.record(r, &format!("J3 census p={p} f=({d1},{d2})"));
                }
                forms += 1;
            }
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("{forms} forms over Z_3 and Z_5: max index 2, nonzero operators present"))
}

fn j3_family_complete(_audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    let ctx = zp(3);
    let mut matched = 0;
    for d in [[1, 1], [1, 2], [2, 1], [2, 2]] {
        let j = algebra(&ctx, &d);
        let f = j.form().clone();
        let c = census(&ctx, &f, &SearchConfig::naive().collecting()).map_err(|e| e.to_string())?;
        for r in &c.operators {
            let params = match_j3_family(r).ok_or_else(|| format!("f={d:?}: no parameters for\n{}", r.to_file_string()))?;
            let rebuilt = build_j3(&j, &params).map_err(|e| e.to_string())?;
            ensure(&rebuilt == r, || format!("f={d:?}: parameters {params:?} rebuild a different operator"))?;
            matched += 1;
        }
        // the family enumerated directly over all parameters gives the same set
        let found: BTreeSet<String> = c.operators.iter().map(LinOperator::to_file_string).collect();
        let mut family = BTreeSet::new();
        let elems: Vec<Scalar> = ctx.elements().unwrap().collect();
        for a in &elems {
            for b in &elems {
                for cc in &elems {
                    for k in &elems {
                        for l in &elems {
                            let params = J3Params { a: a.clone(), b: b.clone(), c: cc.clone(), k: k.clone(), l: l.clone() };
                            if let Ok(r) = build_j3(&j, &params) {
                                family.insert(r.to_file_string());
                            }
                        }
                    }
                }
            }
        }
        ensure(family == found, || format!("f={d:?}: family {} operators, census {}", family.len(), found.len()))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{matched} operators over Z_3 all rebuilt from family parameters; family = census as sets"))
}

/// Every residue pattern of `(d_1, d_2, d_3)`, using `1` for residues and
/// `nonresidue` otherwise.
fn pattern_rows(p: u64, nonresidue: i64, audit: &mut Audit, even_value: usize) -> Result<Vec<String>, String> {
    let ctx = zp(p);
    let mut rows = Vec::new();
    for mask in 0..8u32 {
        let d: Vec<i64> = (0..3).map(|i| if mask & (1 << i) != 0 { 1 } else { nonresidue }).collect();
        let residues = mask.count_ones();
        let expected = if residues % 2 == 0 { even_value } else { 5 - even_value };
        let f = BilinearForm::new(&ctx, ints(&ctx, &d)).unwrap();
        let table = rb_index_table(&ctx, &f).map_err(|e| e.to_string())?;
        let brute = rb_index_bruteforce(&ctx, &f, &SearchConfig::pruned().collecting()).map_err(|e| e.to_string())?;
        let c = brute.census.as_ref().unwrap();
        ensure(c.complete && c.certification == Certification::Pruned, || "search not complete".into())?;
        ensure(table.value == expected && brute.value == expected, || {
            format!("f={d:?}: expected {expected}, table {}, search {}", table.value, brute.value)
        })?;
        if expected == 3 {
            let w = table.witness.as_ref().ok_or_else(|| format!("f={d:?}: no witness"))?;
            ensure(is_rb_zero(w) && nilpotency_index(w) == Some(3), || format!("f={d:?}: witness fails"))?;
            audit.record(w, &format!("table witness p={p} f={d:?}"));
        }
        for r in &c.operators {
            audit.record(r, &format!("census p={p} f={d:?}"));
        }
        rows.push(format!("{d:?}->{expected} ({} ops)", c.total()));
    }
    Ok(rows)
}

fn z5_k4(audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    let rows = pattern_rows(5, 2, audit, 2)?;
    within(start, Duration::from_secs(600))?;
    Ok(format!("table = complete pruned search on all 8 patterns: {}", rows.join(", ")))
}

fn z7_k4(audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    let rows = pattern_rows(7, 3, audit, 3)?;
    within(start, Duration::from_secs(1800))?;
    Ok(format!("table = complete pruned search on all 8 patterns: {}", rows.join(", ")))
}

fn split_construction_k6(audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    let mut done = Vec::new();
    for p in [3u64, 5] {
        let ctx = zp(p);
        for d in [[1, 1, 1, 1, 1], [1, 2, 1, 2, 2], [2, 2, 2, 2, 2]] {
            let j = algebra(&ctx, &d);
            let mut built = None;
            for split in 1..j.n() {
                if let Solution::Found(params) = solve_example4_params(&j, split).map_err(|e| e.to_string())? {
                    built = Some(build_example4(&j, &params).map_err(|e| e.to_string())?);
                    break;
                }
            }
            let r = built.ok_or_else(|| format!("p={p} f={d:?}: no split parameters"))?;
            ensure(is_rb_zero(&r) && !r.power(2).is_zero(), || format!("p={p} f={d:?}: bad operator"))?;
            let mut wider = d.to_vec();
            wider.push(1);
            let big = algebra(&ctx, &wider);
            let lifted = extend_by_zero(&r, &big, &[1, 2, 3, 4, 5]).map_err(|e| e.to_string())?;
            ensure(check_rb(&lifted, &ctx.zero()).is_rb, || format!("p={p} f={d:?}: lift fails"))?;
            audit.record(&r, "split construction k=6");
            audit.record(&lifted, "split construction lifted to k=7");
            done.push(format!("Z_{p} {d:?}"));
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("R^2 != 0 on k = 6 and lifted to k = 7 for {}", done.join(", ")))
}

fn cube_vanishes(audit: &Audit) -> Outcome {
    ensure(audit.cube_violations.is_empty(), || audit.cube_violations.join("\n"))?;
    Ok(format!("R^3 = 0 on all {} operators", audit.operators))
}

fn lemma_suite(audit: &Audit) -> Outcome {
    ensure(audit.lemma_violations.is_empty(), || audit.lemma_violations.join("\n"))?;
    ensure(audit.skew_checked > 0, || "skew-symmetry never applicable".into())?;
    Ok(format!(
        "all diagnostics pass on {} operators; skew block verified on {}",
        audit.operators, audit.skew_checked
    ))
}

fn quadform_oracles(_audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    let mut checks = 0u64;
    for p in [3u64, 5, 7] {
        let ctx = zp(p);
        let pi = p as i64;
        let nonzero: Vec<i64> = (1..pi).collect();
        for &a in &nonzero {
            for &b in &nonzero {
                // binary forms: isotropic iff -ab is a square
                let binary = DiagonalForm::new(ctx.clone(), ints(&ctx, &[a, b])).unwrap();
                let enumerated = (1..pi).any(|y| (0..pi).any(|x| (a * x * x + b * y * y) % pi == 0));
                let legendre = ctx.legendre(&ctx.from_i64(-a * b)).unwrap() == 1;
                let solver = isotropic_vector(&binary).unwrap().is_found();
                ensure(enumerated == legendre && legendre == solver, || format!("p={p} ({a},{b})"))?;

                for &c in &nonzero {
                    let got = represent(&ctx.from_i64(a), &ctx.from_i64(b), &ctx.from_i64(c), &ctx).unwrap();
                    let (x, y) = got.ok_or_else(|| format!("p={p}: {a}x^2+{b}y^2={c} absent"))?;
                    let want = (0..pi)
                        .flat_map(|x| (0..pi).map(move |y| (x, y)))
                        .find(|(x, y)| (a * x * x + b * y * y - c).rem_euclid(pi) == 0)
                        .unwrap();
                    ensure((x.residue().unwrap() as i64, y.residue().unwrap() as i64) == want, || {
                        format!("p={p}: {a}x^2+{b}y^2={c} gave ({x},{y}), smallest {want:?}")
                    })?;
                    checks += 1;
                }

                for &c in &nonzero {
                    let form = DiagonalForm::new(ctx.clone(), ints(&ctx, &[a, b, c])).unwrap();
                    let x = match isotropic_vector(&form).unwrap() {
                        Solution::Found(x) => x,
                        other => return Err(format!("p={p} ({a},{b},{c}): {other:?}")),
                    };
                    let got: Vec<i64> = x.iter().map(|s| s.residue().unwrap() as i64).collect();
                    let want = (1..pi.pow(3))
                        .map(|code| vec![code / (pi * pi), code / pi % pi, code % pi])
                        .find(|v| (a * v[0] * v[0] + b * v[1] * v[1] + c * v[2] * v[2]) % pi == 0)
                        .unwrap();
                    ensure(got == want, || format!("p={p} ({a},{b},{c}): got {got:?}, smallest {want:?}"))?;
                    checks += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{checks} ternary and representation cases match enumeration; binary criterion exact"))
}

fn definite_j3_witness(audit: &mut Audit) -> Outcome {
    let q = FieldCtx::rationals();
    let j = algebra(&q, &[1, 1]);
    let params = J3Params { a: q.from_i64(1), b: q.from_i64(1), c: q.zero(), k: q.zero(), l: q.one() };
    let r = build_j3(&j, &params).map_err(|e| e.to_string())?;
    ensure(!r.is_zero(), || "zero operator".into())?;
    ensure(check_rb(&r, &q.zero()).is_rb, || "not RB".into())?;
    ensure(r.power(2).is_zero(), || "R^2 != 0".into())?;
    audit.record(&r, "definite J3 over Q");
    let real = FieldCtx::real_symbolic();
    let verdict = rb_index_table(&real, &BilinearForm::new(&real, ints(&real, &[1, 1])).unwrap())
        .map_err(|e| e.to_string())?;
    ensure(verdict.value == 2 && verdict.note.is_some(), || format!("table says {}", verdict.value))?;
    Ok("nonzero square-zero RB-operator on J_3(1,1) over Q, so rb >= 2 (the value 1 is not attained)".into())
}

fn main() -> ExitCode {
    let mut audit = Audit::default();
    let mut results: Vec<(u32, &str, Outcome, Duration)> = Vec::new();
    let mut run = |id, name, f: &dyn Fn(&mut Audit) -> Outcome, audit: &mut Audit| {
        let start = Instant::now();
        let out = f(audit);
        results.push((id, name, out, start.elapsed()));
    };
    run(1, "golden operator over Z_7", &golden_operator, &mut audit);
    run(2, "J_3 over Z_3, Z_5 has index 2", &j3_max_index_two, &mut audit);
    run(3, "J_3 census equals the square-zero family", &j3_family_complete, &mut audit);
    run(4, "Z_5, k = 4 residue patterns", &z5_k4, &mut audit);
    run(5, "Z_7, k = 4 residue patterns", &z7_k4, &mut audit);
    run(6, "split construction at k = 6, lifted to k = 7", &split_construction_k6, &mut audit);
    run(9, "quadratic form solvers vs enumeration", &quadform_oracles, &mut audit);
    run(10, "definite J_3 over Q has a square-zero witness", &definite_j3_witness, &mut audit);
    run(7, "R^3 = 0 on every operator", &|a: &mut Audit| cube_vanishes(a), &mut audit);
    run(8, "structural diagnostics on every operator", &|a: &mut Audit| lemma_suite(a), &mut audit);

    results.sort_by_key(|r| r.0);
    let mut failed = 0;
    for (id, name, out, t) in &results {
        match out {
            Ok(detail) => println!("criterion {id:>2} PASS [{t:.2?}] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL [{t:.2?}] {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
