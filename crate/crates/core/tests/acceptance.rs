//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use meridian::catalog::{
    self, three_cuspidal_quartic, zariski_sextic_conic, zariski_sextic_generic,
};
use meridian::coset::{
    enumerate_cosets, group_order, CosetTable, Enumeration, EnumerationLimits, GroupOrder,
};
use meridian::intlinalg::{abelianization, smith_normal_form, AbelianInvariants, IntMatrix};
use meridian::quotient::{
    certify, count_homs, default_targets, separation_report, FiniteTarget, Verdict,
};
use meridian::schreier::{schreier_transversal, subgroup_presentation_raw};
use meridian::zariski::{
    affine_group, extended_group, kernel_coset_table, pullback_group, torus_curve_group,
};
use meridian::{Presentation, Word};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(label: &str, start: Instant, bound: Duration) -> std::result::Result<(), String> {
    let t = start.elapsed();
    ensure(t < bound, || format!("{label} took {t:?}, bound {bound:?}"))
}

fn limits() -> EnumerationLimits {
    EnumerationLimits::default()
}

/// Homomorphism count into S3 by exhaustive search over all generator
/// images, composing permutations directly.
fn brute_force_s3(p: &Presentation) -> u64 {
    let elems: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let inverse = |a: [usize; 3]| {
        let mut r = [0; 3];
        for i in 0..3 {
            r[a[i]] = i;
        }
        r
    };
    let g = p.generator_count();
    let mut count = 0;
    for code in 0..6u64.pow(g as u32) {
        let mut c = code;
        let images: Vec<[usize; 3]> = (0..g)
            .map(|_| {
                let e = elems[(c % 6) as usize];
                c /= 6;
                e
            })
            .collect();
        let ok = p.relators().iter().all(|r| {
            let mut x = [0, 1, 2];
            for l in r.letters() {
                let m = if l.inverse {
                    inverse(images[l.gen])
                } else {
                    images[l.gen]
                };
                x = [m[x[0]], m[x[1]], m[x[2]]];
            }
            x == [0, 1, 2]
        });
        count += ok as u64;
    }
    count
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let order = group_order(three_cuspidal_quartic().presentation(), &limits());
    within("quartic order", start, Duration::from_secs(1))?;
    ensure(order == GroupOrder::Finite(12), || format!("got {order}"))?;
    Ok(format!("quartic order {order}"))
}

fn criterion_2() -> Check {
    let quartic = three_cuspidal_quartic();
    let mut seen = Vec::new();
    for k in 1..=4 {
        let start = Instant::now();
        let pb = pullback_group(&quartic, k).map_err(|e| e.to_string())?;
        let order = group_order(pb.presentation(), &limits());
        within(&format!("k={k}"), start, Duration::from_secs(10))?;
        ensure(order == GroupOrder::Finite(12 * k), || {
            format!("k={k}: got {order}")
        })?;
        seen.push(order.finite().unwrap_or_default().to_string());
    }
    Ok(format!("pull-back orders {}", seen.join(", ")))
}

fn criterion_3() -> Check {
    let generic = zariski_sextic_generic();
    for k in 1..=3 {
        let start = Instant::now();
        let pb = pullback_group(&generic, k).map_err(|e| e.to_string())?;
        let p = pb.presentation();
        let order = group_order(p, &limits());
        let ab = abelianization(p);
        let verdict = certify(p, &limits(), &default_targets()).verdict();
        within(&format!("k={k}"), start, Duration::from_secs(5))?;
        ensure(order == GroupOrder::Finite(6 * k), || {
            format!("k={k}: order {order}")
        })?;
        ensure(ab == AbelianInvariants::cyclic(6 * k), || {
            format!("k={k}: abelianization {ab}")
        })?;
        ensure(verdict == Verdict::Abelian, || {
            format!("k={k}: verdict {verdict:?}")
        })?;
    }
    Ok("orders 6, 12, 18; cyclic abelianizations; all Abelian".into())
}

fn criterion_4() -> Check {
    let conic = zariski_sextic_conic();
    let generic = zariski_sextic_generic();
    let rows = separation_report(&conic, &generic, &[1, 2, 3], &limits(), &default_targets())
        .map_err(|e| e.to_string())?;
    ensure(rows.len() == 3, || format!("{} rows", rows.len()))?;
    for row in &rows {
        ensure(row.separated, || format!("k={} not separated", row.k))?;
    }
    let first = &rows[0];
    let (c1, c2) = (
        first.group1.homcounts.get("S3").copied(),
        first.group2.homcounts.get("S3").copied(),
    );
    ensure(c1 == Some(12) && c2 == Some(6), || {
        format!("k=1 S3 counts {c1:?} vs {c2:?}")
    })?;
    ensure(first.separators().contains(&"homcount:S3"), || {
        format!("k=1 separator `{}`", first.separator)
    })?;
    let oracle1 = brute_force_s3(
        pullback_group(&conic, 1)
            .map_err(|e| e.to_string())?
            .presentation(),
    );
    let oracle2 = brute_force_s3(
        pullback_group(&generic, 1)
            .map_err(|e| e.to_string())?
            .presentation(),
    );
    ensure(oracle1 == 12 && oracle2 == 6, || {
        format!("brute-force S3 counts {oracle1} vs {oracle2}")
    })?;
    for row in &rows[1..] {
        ensure(
            row.group1.verdict == Verdict::NonAbelian && row.group2.verdict == Verdict::Abelian,
            || {
                format!(
                    "k={}: verdicts {:?} vs {:?}",
                    row.k, row.group1.verdict, row.group2.verdict
                )
            },
        )?;
        ensure(row.separators().contains(&"verdict"), || {
            format!("k={} separator `{}`", row.k, row.separator)
        })?;
    }
    Ok("separated at k=1,2,3; S3 counts 12 vs 6 at k=1; NonAbelian vs Abelian at k=2,3".into())
}

fn criterion_5() -> Check {
    let s3 = FiniteTarget::symmetric(3);
    let s4 = FiniteTarget::symmetric(4);
    let entries = catalog::entries();
    for e in &entries {
        let p = e.group.presentation();
        let pb = pullback_group(&e.group, 1).map_err(|err| err.to_string())?;
        let q = pb.presentation();
        ensure(abelianization(p) == abelianization(q), || {
            format!("{}: abelianization differs", e.name)
        })?;
        for t in [&s3, &s4] {
            let (a, b) = (
                count_homs(p, t).map_err(|e| e.to_string())?,
                count_homs(q, t).map_err(|e| e.to_string())?,
            );
            ensure(a == b, || {
                format!("{}: {} counts {a} vs {b}", e.name, t.name())
            })?;
        }
    }
    Ok(format!(
        "{} catalog entries unchanged at k=1",
        entries.len()
    ))
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let s3 = FiniteTarget::symmetric(3);
    let s4 = FiniteTarget::symmetric(4);
    let base = torus_curve_group(2, 3, 1).map_err(|e| e.to_string())?;
    for k in 1..=3 {
        let direct = torus_curve_group(2, 3, k).map_err(|e| e.to_string())?;
        let pulled = pullback_group(&base, k).map_err(|e| e.to_string())?;
        let (p, q) = (direct.presentation(), pulled.presentation());
        let expected = AbelianInvariants::cyclic(6 * k);
        ensure(abelianization(p) == expected, || {
            format!("k={k}: direct abelianization {}", abelianization(p))
        })?;
        ensure(abelianization(q) == expected, || {
            format!("k={k}: pulled abelianization {}", abelianization(q))
        })?;
        for t in [&s3, &s4] {
            let (a, b) = (
                count_homs(p, t).map_err(|e| e.to_string())?,
                count_homs(q, t).map_err(|e| e.to_string())?,
            );
            ensure(a == b, || format!("k={k}: {} counts {a} vs {b}", t.name()))?;
        }
    }
    within("torus comparison", start, Duration::from_secs(30))?;
    Ok("torus(2,3,k) matches pull-back of torus(2,3,1) for k=1,2,3".into())
}

fn criterion_7() -> Check {
    let generic = affine_group(&zariski_sextic_generic()).map_err(|e| e.to_string())?;
    let ab = abelianization(&generic);
    ensure(ab.free_rank == 1 && ab.torsion.is_empty(), || {
        format!("generic affine abelianization {ab}")
    })?;
    let conic = affine_group(&zariski_sextic_conic()).map_err(|e| e.to_string())?;
    let verdict = certify(&conic, &limits(), &default_targets()).verdict();
    ensure(verdict == Verdict::NonAbelian, || {
        format!("conic affine verdict {verdict:?}")
    })?;
    Ok("affine generic sextic has abelianization Z; affine conic sextic NonAbelian".into())
}

fn random_matrix(rng: &mut StdRng) -> IntMatrix {
    let rows = rng.gen_range(1..=5);
    let cols = rng.gen_range(1..=5);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
        .collect();
    IntMatrix::from_rows(&data)
}

fn snf_suite() -> std::result::Result<usize, String> {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let n = 1200;
    for case in 0..n {
        let a = random_matrix(&mut rng);
        let r = smith_normal_form(&a);
        ensure(r.u.mul(&a).mul(&r.v) == r.d, || {
            format!("case {case}: U·A·V != D for\n{a}")
        })?;
        ensure(
            r.u.determinant().abs().is_one() && r.v.determinant().abs().is_one(),
            || format!("case {case}: U or V not unimodular for\n{a}"),
        )?;
        ensure(r.d.is_diagonal(), || {
            format!("case {case}: D not diagonal for\n{a}")
        })?;
        let diag: Vec<BigInt> = r.d.diagonal();
        ensure(diag.iter().all(|x| !x.is_negative()), || {
            format!("case {case}: negative divisor")
        })?;
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() {
                w[1].is_zero()
            } else {
                (&w[1] % &w[0]).is_zero()
            };
            ensure(ok, || {
                format!("case {case}: divisibility fails in {diag:?}")
            })?;
        }
    }
    Ok(n)
}

fn random_relators(rng: &mut StdRng, gens: usize) -> Vec<Word> {
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=6);
            let syl: Vec<(usize, i64)> = (0..len)
                .map(|_| {
                    (
                        rng.gen_range(0..gens),
                        [-2, -1, 1, 2, 3][rng.gen_range(0..5)],
                    )
                })
                .collect();
            Word::from_syllables(&syl)
        })
        .collect()
}

fn coset_checker_suite() -> std::result::Result<usize, String> {
    let mut rng = StdRng::seed_from_u64(0xc05e7);
    let small = EnumerationLimits::new(5_000, 2_000_000).map_err(|e| e.to_string())?;
    let mut checked = 0;
    // Random presentations, with and without a subgroup generator.
    for case in 0..300 {
        let gens = rng.gen_range(1..=2);
        let names: Vec<String> = ["a", "b"][..gens].iter().map(|s| s.to_string()).collect();
        let p =
            Presentation::new(names, random_relators(&mut rng, gens)).map_err(|e| e.to_string())?;
        let subgroup: Vec<Word> = if case % 2 == 0 {
            vec![]
        } else {
            random_relators(&mut rng, gens)[..1].to_vec()
        };
        if let Enumeration::Complete(t) =
            enumerate_cosets(&p, &subgroup, &small).map_err(|e| e.to_string())?
        {
            t.verify(&p, &subgroup)
                .map_err(|e| format!("case {case}: {e}"))?;
            checked += 1;
        }
    }
    // Every finite pull-back in the pipeline.
    for cg in [three_cuspidal_quartic(), zariski_sextic_generic()] {
        for k in 1..=4 {
            let pb = pullback_group(&cg, k).map_err(|e| e.to_string())?;
            match enumerate_cosets(pb.presentation(), &[], &limits()).map_err(|e| e.to_string())? {
                Enumeration::Complete(t) => t
                    .verify(pb.presentation(), &[])
                    .map_err(|e| format!("k={k}: {e}"))?,
                Enumeration::Exhausted(x) => return Err(format!("k={k}: exhausted {}", x.limit)),
            }
            checked += 1;
        }
    }
    ensure(checked >= 100, || {
        format!("only {checked} enumerations completed")
    })?;
    Ok(checked)
}

/// A transitive action of the free group of rank `r` on `i` points, given
/// as a coset table.
fn random_transitive_table(rng: &mut StdRng, r: usize, i: usize) -> CosetTable {
    loop {
        let perms: Vec<Vec<usize>> = (0..r)
            .map(|_| {
                let mut v: Vec<usize> = (0..i).collect();
                for j in (1..i).rev() {
                    v.swap(j, rng.gen_range(0..=j));
                }
                v
            })
            .collect();
        let rows: Vec<Vec<usize>> = (0..i)
            .map(|c| {
                perms
                    .iter()
                    .flat_map(|p| [p[c], p.iter().position(|&x| x == c).expect("permutation")])
                    .collect()
            })
            .collect();
        let t = CosetTable::from_rows(r, &rows).expect("permutation table");
        if t.standardize().n_cosets() == i {
            return t;
        }
    }
}

fn nielsen_schreier_suite() -> std::result::Result<usize, String> {
    let mut rng = StdRng::seed_from_u64(0x5c4e);
    let mut checked = 0;
    for r in 1..=3usize {
        let names: Vec<String> = (0..r).map(|g| format!("x{g}")).collect();
        let free = Presentation::new(names, vec![]).map_err(|e| e.to_string())?;
        for i in 1..=6usize {
            for _ in 0..4 {
                let t = random_transitive_table(&mut rng, r, i).standardize();
                let data = schreier_transversal(&t);
                let expected = i * (r - 1) + 1;
                ensure(data.sgen_count() == expected, || {
                    format!(
                        "r={r} i={i}: {} Schreier generators, expected {expected}",
                        data.sgen_count()
                    )
                })?;
                let sub = subgroup_presentation_raw(&free, &t, &data);
                ensure(
                    sub.generator_count() == expected && sub.relators().is_empty(),
                    || format!("r={r} i={i}: subgroup presentation {sub}"),
                )?;
                // Todd–Coxeter on the Schreier generators recovers the action.
                let words: Vec<Word> = (0..data.sgen_count())
                    .map(|s| data.sgen_word(&t, s))
                    .collect();
                let e = enumerate_cosets(&free, &words, &limits()).map_err(|e| e.to_string())?;
                let tc = e
                    .table()
                    .ok_or_else(|| format!("r={r} i={i}: enumeration exhausted"))?;
                ensure(tc.standardize() == t, || {
                    format!("r={r} i={i}: enumerated table differs")
                })?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn kernel_table_suite() -> std::result::Result<usize, String> {
    let entries = catalog::entries();
    for e in &entries {
        let eg = extended_group(&e.group).map_err(|err| err.to_string())?;
        let kt = kernel_coset_table(&eg).standardize();
        let data = schreier_transversal(&kt);
        let words: Vec<Word> = (0..data.sgen_count())
            .map(|s| data.sgen_word(&kt, s))
            .collect();
        kt.verify(eg.presentation(), &words)
            .map_err(|err| format!("{}: {err}", e.name))?;
        let en = enumerate_cosets(eg.presentation(), &words, &limits())
            .map_err(|err| err.to_string())?;
        let tc = en
            .table()
            .ok_or_else(|| format!("{}: enumeration exhausted", e.name))?;
        tc.verify(eg.presentation(), &words)
            .map_err(|err| format!("{}: {err}", e.name))?;
        ensure(tc.n_cosets() as u64 == e.group.degree(), || {
            format!("{}: index {}", e.name, tc.n_cosets())
        })?;
        ensure(tc.standardize() == kt, || {
            format!("{}: tables differ", e.name)
        })?;
    }
    Ok(entries.len())
}

fn criterion_8() -> Check {
    let start = Instant::now();
    let snf = snf_suite()?;
    let cosets = coset_checker_suite()?;
    let ns = nielsen_schreier_suite()?;
    let kernel = kernel_table_suite()?;
    within("property suites", start, Duration::from_secs(60))?;
    Ok(format!(
        "{snf} SNF cases, {cosets} verified coset tables, {ns} Nielsen–Schreier cases, {kernel} kernel tables"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("quartic order", criterion_1),
        ("order multiplication", criterion_2),
        ("generic sextic series", criterion_3),
        ("Zariski-pair separation", criterion_4),
        ("k=1 round trip", criterion_5),
        ("torus-curve consistency", criterion_6),
        ("affine groups", criterion_7),
        ("property suites", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {} PASS {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
