//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use goldcode::closed;
use goldcode::code::{self, DistTable, Survey};
use goldcode::field::{primitive_polys, FieldCtx};
use goldcode::forms::{CodeParams, Family};
use goldcode::veq;
use num_bigint::{BigInt, BigUint};

const BUDGET: u64 = 1 << 30;
const TUPLE_BUDGET: u64 = 1 << 20;

struct Gate {
    failed: Vec<u32>,
}

impl Gate {
    fn report(&mut self, id: u32, title: &str, problems: Vec<String>, elapsed: Option<Duration>) {
        let time = elapsed.map(|d| format!(" [{:.3}s]", d.as_secs_f64())).unwrap_or_default();
        if problems.is_empty() {
            println!("PASS criterion {id:>2}: {title}{time}");
        } else {
            println!("FAIL criterion {id:>2}: {title}{time}");
            for p in &problems {
                println!("      - {p}");
            }
            self.failed.push(id);
        }
    }
}

fn params(m: u32, d: u32, e: u32, k: u32, f: Family) -> CodeParams {
    CodeParams::new(m, d, e, k, f).expect("valid parameters")
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t0 = Instant::now();
    let out = f();
    (out, t0.elapsed())
}

fn alpha(t: &DistTable, r: u32, eps: i8) -> BigUint {
    t.alpha.get(&(r, eps)).cloned().unwrap_or_default()
}

fn beta(t: &DistTable, r: u32) -> BigUint {
    t.beta.get(&r).cloned().unwrap_or_default()
}

/// Checks `table` against expected alpha bins, beta bins and balanced count.
fn expect(
    label: &str,
    t: &DistTable,
    alphas: &[(u32, i8, u64)],
    betas: &[(u32, u64)],
    balanced: u64,
    out: &mut Vec<String>,
) {
    for &(r, eps, want) in alphas {
        let got = alpha(t, r, eps);
        if got != BigUint::from(want) {
            out.push(format!("{label}: alpha[{r},{eps:+}] = {got}, expected {want}"));
        }
    }
    if t.alpha.len() != alphas.len() {
        out.push(format!("{label}: {} alpha bins, expected {}", t.alpha.len(), alphas.len()));
    }
    for &(r, want) in betas {
        let got = beta(t, r);
        if got != BigUint::from(want) {
            out.push(format!("{label}: beta[{r}] = {got}, expected {want}"));
        }
    }
    let got = t.balanced.clone().unwrap_or_default();
    if got != BigUint::from(balanced) {
        out.push(format!("{label}: balanced = {got}, expected {balanced}"));
    }
    let total = (BigUint::from(1u8) << (t.params.m * t.params.k) as usize) - 1u8;
    if t.nonzero_total() != total {
        out.push(format!("{label}: total {} != {total}", t.nonzero_total()));
    }
}

/// Enumeration and every closed-form spelling must agree bin by bin.
fn cross(label: &str, enumerated: &DistTable, p: &CodeParams, out: &mut Vec<String>) {
    let closed = closed::closed_table(p);
    if !enumerated.same_counts(&closed) {
        out.push(format!("{label}: enumeration and closed form differ"));
    }
    let b = closed::balanced_closed(p);
    if Some(BigUint::try_from(b.exact.clone()).unwrap_or_default()) != enumerated.balanced {
        out.push(format!("{label}: balanced formula {} disagrees with enumeration", b.exact));
    }
    let beta_only = closed::beta_closed(p);
    if beta_only.beta != enumerated.beta {
        out.push(format!("{label}: rank-distribution formula disagrees with enumeration"));
    }
    let alpha_only = closed::alpha_closed(p);
    if alpha_only.alpha != enumerated.alpha {
        out.push(format!("{label}: DC-distribution formula disagrees with enumeration"));
    }
}

fn survey(p: &CodeParams, threads: usize) -> Survey {
    let ctx = FieldCtx::new(p.m, None).expect("field");
    pool(threads).install(|| code::survey(p, &ctx, BUDGET)).expect("within budget")
}

fn main() {
    let mut gate = Gate { failed: Vec::new() };
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let mut surveys: Vec<(String, Survey)> = Vec::new();

    // 1
    let p1 = params(5, 1, 1, 2, Family::A);
    let (s1, t1) = timed(|| survey(&p1, threads));
    let mut out = Vec::new();
    expect("m=5 k=2", &s1.table, &[(4, 1, 310), (4, -1, 186)], &[(4, 31)], 527, &mut out);
    cross("m=5 k=2", &s1.table, &p1, &mut out);
    let weights: std::collections::BTreeSet<usize> = {
        let ctx = FieldCtx::new(5, None).unwrap();
        (1..1u64 << 10)
            .map(|i| code::codeword(&p1, &ctx, &goldcode::forms::CoeffVec::from_index(i, 5, 2)).weight())
            .collect()
    };
    if weights != [12, 16, 20].into_iter().collect() {
        out.push(format!("nonzero codeword weights {weights:?}, expected {{12, 16, 20}}"));
    }
    if t1 >= Duration::from_secs(1) {
        out.push(format!("runtime {t1:?} >= 1s"));
    }
    gate.report(1, "Gold baseline m=5 k=2", out, Some(t1));
    surveys.push(("case 1".into(), s1));

    // 2
    let mut out = Vec::new();
    let t0 = Instant::now();
    let mut first: Option<DistTable> = None;
    for f in Family::ALL {
        let p = params(5, 1, 1, 3, f);
        let s = survey(&p, threads);
        let label = format!("m=5 k=3 family {f}");
        expect(
            &label,
            &s.table,
            &[(4, 1, 8680), (4, -1, 5208), (2, 1, 465), (2, -1, 155)],
            &[(4, 868), (2, 155)],
            18259,
            &mut out,
        );
        cross(&label, &s.table, &p, &mut out);
        match &first {
            None => first = Some(s.table.clone()),
            Some(t) if !t.same_counts(&s.table) => out.push(format!("family {f} differs from family A")),
            Some(_) => {}
        }
        surveys.push((format!("case 2 family {f}"), s));
    }
    let t2 = t0.elapsed();
    if t2 >= Duration::from_secs(10) {
        out.push(format!("runtime {t2:?} >= 10s"));
    }
    gate.report(2, "relative dimension 3, families A/B/C", out, Some(t2));

    // 3
    let p3 = params(3, 1, 1, 2, Family::A);
    let (s3, t3) = timed(|| survey(&p3, threads));
    let mut out = Vec::new();
    expect("m=3 k=2", &s3.table, &[(2, 1, 21), (2, -1, 7)], &[(2, 7)], 35, &mut out);
    cross("m=3 k=2", &s3.table, &p3, &mut out);
    if t3 >= Duration::from_millis(100) {
        out.push(format!("runtime {t3:?} >= 0.1s"));
    }
    gate.report(3, "smallest case m=3 k=2", out, Some(t3));
    surveys.push(("case 3".into(), s3));

    // 4
    let p4 = params(9, 3, 3, 2, Family::A);
    let mut out = Vec::new();
    let (s4, t4_single) = timed(|| survey(&p4, 1));
    let (s4_par, t4_par) = timed(|| survey(&p4, 8));
    expect("m=9 e=3", &s4.table, &[(2, 1, 18396), (2, -1, 14308)], &[], 229439, &mut out);
    cross("m=9 e=3", &s4.table, &p4, &mut out);
    if s4.table != s4_par.table {
        out.push("1-worker and 8-worker tables differ".into());
    }
    let b = closed::balanced_closed(&p4);
    let rel = b.relative_error_f64(&p4);
    let expected_approx = num_rational::BigRational::new(BigInt::from(7 * (1 << 18)), BigInt::from(8));
    if b.approx != expected_approx {
        out.push(format!("approximation {} != 0.875*2^18", b.approx));
    }
    if rel >= 0.01 {
        out.push(format!("approximation relative error {rel} >= 1%"));
    }
    if t4_single >= Duration::from_secs(60) {
        out.push(format!("single-threaded runtime {t4_single:?} >= 60s"));
    }
    if t4_par >= Duration::from_secs(15) {
        out.push(format!("8-worker runtime {t4_par:?} >= 15s"));
    }
    println!(
        "      m=9: 1 worker {:.3}s, 8 workers {:.3}s, approximation error {}",
        t4_single.as_secs_f64(),
        t4_par.as_secs_f64(),
        b.relative_error(&p4)
    );
    gate.report(4, "nontrivial subfield m=9 e=3", out, Some(t4_single + t4_par));
    surveys.push(("case 4".into(), s4));

    // 5
    let mut out = Vec::new();
    for (label, s) in &surveys {
        if s.rank_bound_violations != 0 || s.odd_ranks != 0 {
            out.push(format!(
                "{label}: {} below bound, {} odd",
                s.rank_bound_violations, s.odd_ranks
            ));
        }
        if s.min_rank.is_none_or(|r| r < s.table.params.rank_lower_bound()) {
            out.push(format!("{label}: minimum rank {:?}", s.min_rank));
        }
    }
    gate.report(5, "rank lower bound and even rank", out, None);

    // 6
    let mut out = Vec::new();
    for (label, s) in &surveys {
        if s.dc_support_violations() != 0 || !s.unbinned.is_empty() || s.magnitude_violations != 0 {
            out.push(format!(
                "{label}: outside support {:?}, unbinned {:?}",
                s.dc_outside_support, s.unbinned
            ));
        }
    }
    gate.report(6, "DC values inside predicted support", out, None);

    // 7
    let mut out = Vec::new();
    for (label, s) in &surveys {
        let bad = closed::sign_split_violations(&s.table);
        if !bad.is_empty() {
            out.push(format!("{label}: bins {bad:?}"));
        }
    }
    gate.report(7, "sign splitting of each rank class", out, None);

    // 8
    let mut out = Vec::new();
    let t0 = Instant::now();
    let ctx5 = FieldCtx::new(5, None).unwrap();
    for f in Family::ALL {
        let p = params(5, 1, 1, 3, f);
        for u in 1..=2 {
            for s in 1..=2 {
                if s >= u && !veq::v_set_equal(&p, &ctx5, s, u, TUPLE_BUDGET).unwrap() {
                    out.push(format!("family {f}: V sets differ at s={s} u={u}"));
                }
                if !veq::elimination_equiv_check(&p, &ctx5, s, u, TUPLE_BUDGET).unwrap() {
                    out.push(format!("family {f}: elimination fails at s={s} u={u}"));
                }
            }
        }
        for u in 0..=2 {
            let mc = veq::moment_identity_check(&p, &ctx5, u, TUPLE_BUDGET).unwrap();
            if !mc.holds {
                out.push(format!("family {f}: moment u={u}: {} != {}", mc.lhs, mc.rhs));
            }
        }
    }
    let t8 = t0.elapsed();
    if t8 >= Duration::from_secs(120) {
        out.push(format!("runtime {t8:?} >= 120s"));
    }
    gate.report(8, "V-system suite m=5 k=3", out, Some(t8));

    // 9
    let mut out = Vec::new();
    for q in [2i64, 4, 16, 64].map(BigInt::from) {
        for n in 1..=10u64 {
            for i in 0..=n {
                let g = closed::gauss_binom(n, i, &q);
                if g != closed::gauss_binom(n, n - i, &q) {
                    out.push(format!("symmetry n={n} i={i} q={q}"));
                }
                if i > 0 {
                    let rhs = closed::gauss_binom(n - 1, i - 1, &q)
                        + num_traits::pow(q.clone(), i as usize) * closed::gauss_binom(n - 1, i, &q);
                    if g != rhs {
                        out.push(format!("q-Pascal n={n} i={i} q={q}"));
                    }
                }
            }
        }
    }
    for q in [4i64, 16, 64].map(BigInt::from) {
        for u in 0..=5 {
            for t in [-3i64, 1, 2, 7].map(BigInt::from) {
                if !closed::qbinom_theorem_check(u, &q, &t) {
                    out.push(format!("q-binomial theorem u={u} q={q} t={t}"));
                }
            }
        }
        for n in 0..=6 {
            if !closed::moebius_check(n, &q) {
                out.push(format!("Moebius n={n} q={q}"));
            }
        }
    }
    let p9 = params(5, 1, 1, 3, Family::A);
    for u in 1..=2 {
        let rc = veq::recursion_check(&p9, &ctx5, u, TUPLE_BUDGET).unwrap();
        for r in &rc.readings {
            println!(
                "      recursion u={u} lhs={} reading {}: rhs={} holds={}",
                rc.lhs, r.name, r.rhs, r.holds
            );
        }
        if rc.holds(veq::READING_CONSTANT_BASE) != Some(true) {
            out.push(format!("recursion fails at u={u} under the u-1 product reading"));
        }
    }
    gate.report(9, "q-analogue identities and V recursion", out, None);

    // 10
    let mut out = Vec::new();
    let p10 = params(5, 1, 1, 3, Family::A);
    let polys: Vec<u32> = primitive_polys(5).take(2).collect();
    let rendered: Vec<String> = polys
        .iter()
        .map(|&poly| {
            let ctx = FieldCtx::new(5, Some(poly)).unwrap();
            let t = code::survey(&p10, &ctx, BUDGET).unwrap().table;
            format!("{}\n{}", t.counts_json(), t.csv_rows().join("\n"))
        })
        .collect();
    if rendered.len() != 2 || rendered[0] != rendered[1] {
        out.push(format!("tables differ between polynomials {polys:?}"));
    }
    let by_threads: Vec<String> = [1, 2, 8]
        .iter()
        .map(|&n| survey(&p10, n).table.counts_json().to_string())
        .collect();
    if by_threads.windows(2).any(|w| w[0] != w[1]) {
        out.push("tables depend on worker count".into());
    }
    let cli = |threads: &str| {
        goldcode::cli::run_from(["goldcode", "dist", "-m", "5", "-k", "3", "--threads", threads])
    };
    let (a, b) = (cli("1"), cli("4"));
    if a != b || a.code != 0 {
        out.push("CLI output depends on --threads".into());
    }
    gate.report(10, "independence of polynomial and worker count", out, None);

    if gate.failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
    } else {
        println!("acceptance: failing criteria {:?}", gate.failed);
        std::process::exit(1);
    }
}
