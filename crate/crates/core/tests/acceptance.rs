//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach the output; any FAIL exits nonzero.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;

use homideal_core::brauer::{algebra_dimension, build_quiver, center_dimension, special_cycles};
use homideal_core::fib::{
    admissible_k, d_array, expanded_even_sum, expanded_odd_sum, fib_partition, fib_partition_with,
    fib_ringel_fahr_with, fibonacci, hook_check, weight_closed, weight_literal,
};
use homideal_core::messages::{
    gamma_message_closed_form, gamma_n, specialized_message, Fold, SpecializationRule,
};
use homideal_core::nakayama::{
    classify_subset, count_homological, count_non_homological, diagonal_sums, hit_row, nhit_row,
    row_sum, Direction, Method, NakayamaPresentation, SubsetSpec,
};
use homideal_core::oracle::{
    ext_dims, is_idempotent_oracle, quotient, ExtFrom, OracleContext, OracleVerdict,
};
use homideal_core::sequences::{builtin_fixture, compare, Alignment};

struct Criterion {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Criterion {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn report(n: usize, title: &str, c: Criterion) -> bool {
    let ok = c.failures.is_empty();
    let mut line = format!(
        "criterion {n}: {} {title}",
        if ok { "PASS" } else { "FAIL" }
    );
    for s in &c.notes {
        line.push_str(" | ");
        line.push_str(s);
    }
    println!("{line}");
    for f in c.failures.iter().take(10) {
        println!("    {f}");
    }
    if c.failures.len() > 10 {
        println!("    ... {} more", c.failures.len() - 10);
    }
    ok
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

struct Run {
    presentation: NakayamaPresentation,
    ctx: OracleContext,
    verdicts: Vec<OracleVerdict>,
}

fn sweep_all() -> Vec<Run> {
    let mut runs = Vec::new();
    for n in 3..=7 {
        for p in NakayamaPresentation::all_with(n) {
            let ctx = OracleContext::new(&p);
            let verdicts = ctx.sweep().expect("oracle sweep");
            runs.push(Run {
                presentation: p,
                ctx,
                verdicts,
            });
        }
    }
    runs
}

fn criterion_1(runs: &[Run], secs: f64) -> Criterion {
    let mut c = Criterion::new();
    let mut evaluated = 0;
    let mut disagreements = 0;
    for run in runs {
        for v in &run.verdicts {
            evaluated += 1;
            let classifier = classify_subset(&run.presentation, v.subset);
            c.check(
                v.is_homological(ExtFrom::Zero) == classifier.is_homological(),
                || {
                    format!(
                        "{} {}: oracle {:?} vs {classifier}",
                        run.presentation, v.subset, v.ext
                    )
                },
            );
            if v.variants_disagree() {
                disagreements += 1;
                c.check(false, || {
                    format!(
                        "{} {}: Hom-degree variants disagree",
                        run.presentation, v.subset
                    )
                });
            }
        }
    }
    c.note(format!("{} algebras, {evaluated} subsets", runs.len()));
    c.note(format!("Ext from 0 vs 1 disagreements: {disagreements}"));
    c.note(format!("{secs:.1}s on one thread"));
    c
}

fn criterion_2(runs: &[Run]) -> Criterion {
    let mut c = Criterion::new();
    for run in runs {
        let p = run.presentation;
        let nh = run
            .verdicts
            .iter()
            .filter(|v| !v.is_homological(ExtFrom::Zero))
            .count() as u64;
        let h = run.verdicts.len() as u64 - nh;
        let want_nh = (1u64 << (p.n() - 2)) - (1u64 << (p.n() - p.k() - 1));
        let want_h = 3 * (1u64 << (p.n() - 2)) + (1u64 << (p.n() - p.k() - 1));
        c.check(
            nh == want_nh && count_non_homological(p.n(), p.k()) == Ok(want_nh),
            || format!("{p}: {nh} non-homological, formula {want_nh}"),
        );
        c.check(
            h == want_h && count_homological(p.n(), p.k()) == Ok(want_h),
            || format!("{p}: {h} homological, formula {want_h}"),
        );
    }
    let nhit: [&[u64]; 5] = [
        &[1],
        &[2, 3],
        &[4, 6, 7],
        &[8, 12, 14, 15],
        &[16, 24, 28, 30, 31],
    ];
    let hit: [&[u64]; 5] = [
        &[7],
        &[14, 13],
        &[28, 26, 25],
        &[56, 52, 50, 49],
        &[112, 104, 100, 98, 97],
    ];
    for (idx, n) in (3..=7).enumerate() {
        let got = nhit_row(n, Method::ClosedForm).unwrap().values;
        c.check(got == nhit[idx], || format!("NHIT row {n}: {got:?}"));
        let got = hit_row(n).unwrap().values;
        c.check(got == hit[idx], || format!("HIT row {n}: {got:?}"));
    }
    c.note("closed forms match brute force; NHIT/HIT rows 3-7 match");
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::new();
    for n in 3..=30 {
        let closed = nhit_row(n, Method::ClosedForm).unwrap();
        let rec = nhit_row(n, Method::Recurrence).unwrap();
        c.check(closed == rec, || {
            format!(
                "row {n}: recurrence {:?} vs {:?}",
                rec.values, closed.values
            )
        });
        let sum = row_sum(n).unwrap();
        let msg = if n == 3 {
            gamma_message_closed_form(3).unwrap()
        } else {
            let g = gamma_n(n).unwrap();
            let rule = SpecializationRule::pow2(&g, Fold::OrderedDifference).unwrap();
            specialized_message(&g, &rule).unwrap()
        };
        c.check(sum == msg, || {
            format!("n = {n}: row sum {sum}, message {msg}")
        });
        c.check(msg == gamma_message_closed_form(n).unwrap(), || {
            format!("n = {n}: message {msg} differs from closed form")
        });
    }
    let fixture = builtin_fixture("A000337").unwrap();
    let expected_prefix = ints(&[1, 5, 17, 49, 129, 321, 769, 1793, 4097, 9217]);
    c.check(fixture.terms.starts_with(&expected_prefix), || {
        "A000337 fixture prefix".to_string()
    });
    let sums: Vec<BigInt> = (3..=30).map(|n| row_sum(n).unwrap()).collect();
    let r = compare(&sums, &fixture, Alignment::Fixed(0));
    c.check(
        r.is_full_match() && r.compared == fixture.terms.len(),
        || r.to_string(),
    );
    c.note("n = 3..30; n = 3 message from the closed form");
    c.note(format!(
        "A000337: {}/{} terms",
        r.matched,
        fixture.terms.len()
    ));
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::new();
    for n in 4..=30usize {
        let g = gamma_n(n).unwrap();
        let dim = algebra_dimension(&g).unwrap();
        c.check(dim == 2 * ((n - 2) as u64).pow(2), || {
            format!("n = {n}: dimension {dim}")
        });
        let center = center_dimension(&g).unwrap();
        let want = (n * n) as i64 - 4 * n as i64 + 5;
        c.check(center == want, || {
            format!("n = {n}: center {center}, want {want}")
        });
        let q = build_quiver(&g).unwrap();
        c.check(
            q.num_vertices == n - 2 && q.arrows.len() == 2 * (n - 2),
            || {
                format!(
                    "n = {n}: quiver {} vertices, {} arrows",
                    q.num_vertices,
                    q.arrows.len()
                )
            },
        );
        let classes = special_cycles(&g, &q).len();
        c.check(classes == n - 1, || {
            format!("n = {n}: {classes} special-cycle classes")
        });
    }
    c.note("n = 4..30");
    c
}

fn criterion_5(runs: &[Run]) -> Criterion {
    let mut c = Criterion::new();
    let mut checked = 0;
    for run in runs {
        let alg = run.ctx.algebra();
        for s in SubsetSpec::all(run.presentation.n()) {
            checked += 1;
            c.check(is_idempotent_oracle(alg, s), || {
                format!("{} {s}: I^2 != I", run.presentation)
            });
        }
    }
    c.note(format!("{checked} ideals"));
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::new();
    let arr = d_array(60);
    for i in 0..=30 {
        let r = fib_partition_with(&arr, i).unwrap();
        c.check(r.matches() && r.value == fibonacci(2 * i + 2), || {
            format!("i = {i}: {} vs f_{} = {}", r.value, 2 * i + 2, r.reference)
        });
    }
    let f8 = fib_partition(3).unwrap().breakdown();
    c.check(f8 == "f_8 = 21 = 0*0 + 3*3 + 0*0 + 1*12", || f8.clone());
    let f10 = fib_partition(4).unwrap().breakdown();
    c.check(f10 == "f_10 = 55 = 7*1 + 0*0 + 4*6 + 0*0 + 1*24", || {
        f10.clone()
    });
    for i in 4..=15 {
        c.check(hook_check(&arr, i) == Ok(true), || {
            format!("hook rule at i = {i}")
        });
    }
    for t in 0..=15 {
        let rf = fib_ringel_fahr_with(&arr, t).unwrap();
        c.check(rf.f_4t_plus_2 == fibonacci(4 * t + 2), || {
            format!("t = {t}: f_{}", 4 * t + 2)
        });
        c.check(expanded_even_sum(&arr, t) == fibonacci(4 * t + 2), || {
            format!("t = {t}: expanded even sum")
        });
        if t >= 1 {
            c.check(rf.f_4t.as_ref() == Some(&fibonacci(4 * t)), || {
                format!("t = {t}: f_{}", 4 * t)
            });
            c.check(expanded_odd_sum(&arr, t, 0) == fibonacci(4 * t), || {
                format!("t = {t}: expanded odd sum")
            });
        }
    }
    let fig: [&[i64]; 6] = [
        &[1, 2, 7, 29],
        &[1, 3, 12, 53],
        &[1, 4, 18],
        &[1, 5, 25],
        &[1, 6],
        &[1, 7],
    ];
    let small = d_array(7);
    for (col, want) in fig.iter().enumerate() {
        let got = small.column(col);
        c.check(got == ints(want), || format!("column {col}: {got:?}"));
    }
    c.note("i = 0..30, hooks 4..15, bridge t = 0..15, 21 and 55 term by term");
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::new();
    let mut evaluations = 0;
    for i in 0..=30 {
        for col in 0..=i {
            let closed = weight_closed(i, col);
            let ks = admissible_k(i, col);
            if ks.is_empty() {
                evaluations += 1;
                let v = weight_literal(i, col, 0).unwrap();
                c.check(v == closed, || format!("({i},{col}): {v} vs {closed}"));
            }
            for k in ks {
                evaluations += 1;
                let v = weight_literal(i, col, k).unwrap();
                c.check(v == closed, || {
                    format!("({i},{col}) k = {k}: {v} vs {closed}")
                });
            }
        }
    }
    c.note(format!("{evaluations} (i, c, k) evaluations, i <= 30"));
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::new();
    let arr = d_array(40);
    for (id, col) in [("A132262", 0), ("A110122", 1)] {
        let f = builtin_fixture(id).unwrap();
        let r = compare(&arr.column(col), &f, Alignment::Fixed(0));
        c.check(r.is_full_match() && r.compared == f.terms.len(), || {
            r.to_string()
        });
        c.note(format!("{id}: {}/{}", r.matched, f.terms.len()));
    }
    let f = builtin_fixture("A274868").unwrap();
    let mut reports = BTreeMap::new();
    for dir in [Direction::AntiDiagonal, Direction::Diagonal] {
        let sums = diagonal_sums(20, dir).unwrap();
        let r = compare(&sums, &f, Alignment::Auto);
        c.check(r.compared > 0, || {
            format!("{}: nothing compared", dir.label())
        });
        reports.insert(dir.label(), r);
    }
    for (label, r) in reports {
        c.note(format!(
            "A274868 {label}: shift {}, {}/{}",
            r.shift, r.matched, r.compared
        ));
    }
    c
}

fn criterion_9(runs: &[Run]) -> Criterion {
    let mut c = Criterion::new();
    let mut longest = 0;
    for run in runs {
        let p = run.presentation;
        for s in SubsetSpec::all(p.n()) {
            for sub in run.ctx.trace_ideal(s) {
                for m in [&sub.module, &quotient(&sub).0] {
                    let len = run.ctx.resolve(m).unwrap().length();
                    longest = longest.max(len);
                    c.check(len <= 2, || format!("{p} {s}: resolution of length {len}"));
                }
            }
        }
        for res in run.ctx.resolutions() {
            c.check(res.check_exact().is_ok(), || {
                format!("{p}: inexact resolution")
            });
        }
        let pj = run.ctx.projective(p.j());
        for t in p.i() + 1..p.j() {
            let l = run
                .ctx
                .trace_in_projective(SubsetSpec::from_members([t]), p.i());
            let res = run.ctx.resolve(&l.module).unwrap();
            let ext = ext_dims(&res, pj, 1);
            c.check(ext[1] == 1, || {
                format!("{p}: Ext^1(L_{t}, P({})) = {}", p.j(), ext[1])
            });
        }
    }
    let built: usize = runs.iter().map(|r| r.ctx.stats().built).sum();
    c.note(format!("{built} resolutions checked, max length {longest}"));
    c
}

fn main() -> ExitCode {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let start = Instant::now();
    let runs = pool.install(sweep_all);
    let secs = start.elapsed().as_secs_f64();

    let results = [
        report(
            1,
            "classifier matches oracle, n <= 7",
            criterion_1(&runs, secs),
        ),
        report(
            2,
            "counting formulas and printed tables",
            criterion_2(&runs),
        ),
        report(
            3,
            "NHIT recurrence, row sums, messages, A000337",
            criterion_3(),
        ),
        report(4, "Gamma_n invariants", criterion_4()),
        report(5, "trace ideals are idempotent", criterion_5(&runs)),
        report(6, "even-index Fibonacci partitions", criterion_6()),
        report(7, "piecewise weights equal 3*2^(c-1)", criterion_7()),
        report(8, "OEIS fixtures", criterion_8()),
        report(
            9,
            "resolutions exact, Ext^1(L_t, P(j)) = 1",
            criterion_9(&runs),
        ),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
