//! Acceptance run: one pass/fail line per criterion.
//!
//! Every criterion also produces a digest of the values it computed; the
//! whole run is repeated on pools of 1, 4 and 8 worker threads and the
//! digests must agree byte for byte.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use jspairs::equivariant::{check_square_root, SplitGeometry};
use jspairs::localcurve::{
    conjectured_value, enumerate_fixed_points, full_obstruction_general, half_obstruction_general,
    js_invariant_closed_form, js_invariant_enumerated, residue_vanishing_check, Orientation,
};
use jspairs::ratfun::{RatFun, Rational, NVARS};
use jspairs::series::{
    gv0_from_gw, gw0_from_gv0, gw1_assemble, gw1_extract, pt_coeff_from_gv, pt_series_from_gv,
    telescoping_check, wall_jump_check, walls, Class, ClassLattice, ClassMap, GVTable, MeetingMap, Side,
    StabilityParam,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CONIFOLD: SplitGeometry = SplitGeometry::RESOLVED_CONIFOLD_TIMES_LINE;

struct Outcome {
    pass: bool,
    detail: String,
    digest: String,
    elapsed: Duration,
    limit: Duration,
}

impl Outcome {
    fn within_time(&self) -> bool {
        self.elapsed <= self.limit
    }
}

/// Values checked for homogeneity in criterion 6: `(n, value)`.
type Seen = Vec<(i64, RatFun)>;

fn enumerated(n: i64, d: i64, g: &SplitGeometry) -> RatFun {
    js_invariant_enumerated(n, d, g, Orientation::default(), false)
        .unwrap_or_else(|e| panic!("P({n},{d}) on {g}: {e}"))
        .value
}

fn criterion_1(seen: &mut Seen) -> (bool, String, String) {
    let mut ok = true;
    let mut digest = String::new();
    let mut bad = Vec::new();
    for (l1, l2, l3) in [(-1, -1, 0), (0, -1, -1), (1, -1, -2), (3, -2, -3)] {
        let g = SplitGeometry::new(l1, l2, l3).unwrap();
        let mut expect = RatFun::one(NVARS);
        for (i, l) in [l1, l2, l3].into_iter().enumerate() {
            expect = &expect * &RatFun::var(NVARS, i + 1).pow(-(l as i32 + 1)).unwrap();
        }
        for n in 1..=12 {
            let v = enumerated(n, 1, &g);
            let want = if n == 1 { expect.clone() } else { RatFun::zero(NVARS) };
            if v != want {
                ok = false;
                bad.push(format!("{g} n={n}"));
            }
            writeln!(digest, "{g} {n} {v}").unwrap();
            seen.push((n, v));
        }
    }
    (ok, bad.join(" "), digest)
}

fn criterion_2() -> (bool, String, String) {
    let mut digest = String::new();
    let mut bad = Vec::new();
    for d in 1..=4 {
        for ratio in 1..=5 {
            let n = d * ratio;
            let closed = js_invariant_closed_form(n, d).unwrap().value;
            let enumr = enumerated(n, d, &CONIFOLD);
            if closed != enumr {
                bad.push(format!("({n},{d})"));
            }
            writeln!(digest, "{n} {d} {closed} {enumr}").unwrap();
        }
    }
    (bad.is_empty(), bad.join(" "), digest)
}

/// Families of the conjecture sweep; `(name, cases)`.
fn sweep_families() -> Vec<(&'static str, Vec<(i64, i64)>)> {
    // n = d is its own family, the rest must vanish
    let ratio = |d: i64, max: i64| (2..=max).map(move |r| (d * r, d)).collect::<Vec<_>>();
    vec![
        ("n=d,d<=6", (1..=6).map(|d| (d, d)).collect()),
        ("d=1,n/d<=30", ratio(1, 30)),
        ("d=2,n/d<=15", ratio(2, 15)),
        ("d=3,n/d<=10", ratio(3, 10)),
        ("d=4,n/d<=6", ratio(4, 6)),
        ("n=2d,d<=12", (1..=12).map(|d| (2 * d, d)).collect()),
        ("n=3d,d<=8", (1..=8).map(|d| (3 * d, d)).collect()),
    ]
}

fn criterion_3(seen: &mut Seen) -> (bool, String, String, bool) {
    let mut digest = String::new();
    let mut notes = Vec::new();
    let mut all_ok = true;
    let mut all_fast = true;
    for (name, cases) in sweep_families() {
        let start = Instant::now();
        let mut failures = Vec::new();
        for (n, d) in cases {
            let v = enumerated(n, d, &CONIFOLD);
            if v != conjectured_value(n, d) {
                failures.push(format!("({n},{d})={v}"));
            }
            writeln!(digest, "{n} {d} {v}").unwrap();
            seen.push((n, v));
        }
        let t = start.elapsed();
        all_fast &= t <= Duration::from_secs(600);
        if failures.is_empty() {
            notes.push(format!("{name} ok {:.1}s", t.as_secs_f64()));
        } else {
            all_ok = false;
            notes.push(format!("{name} FAIL {:.1}s [{}]", t.as_secs_f64(), failures.join(" ")));
            if name.starts_with("n=d") {
                notes.push("diagonal carries the closed formula's (-1)^(d+1), off by the orientation sign".into());
            }
        }
    }
    (all_ok, notes.join("; "), digest, all_fast)
}

fn criterion_4() -> (bool, String, String) {
    let mut digest = String::new();
    let mut bad = Vec::new();
    for d in 1..=20 {
        match residue_vanishing_check(d) {
            Ok(r) => {
                if !r.passed() {
                    bad.push(format!("d={d}"));
                }
                let residues: Vec<String> = r.poles.iter().map(|p| p.residue.to_string()).collect();
                writeln!(digest, "{d} {} {}", r.phi_is_zero, residues.join(",")).unwrap();
            }
            Err(e) => bad.push(format!("d={d}: {e}")),
        }
    }
    (bad.is_empty(), bad.join(" "), digest)
}

fn criterion_5() -> (bool, String, String) {
    let mut digest = String::new();
    let mut bad = Vec::new();
    let mut count = 0;
    for d in 1..=4 {
        for ratio in 1..=5 {
            for c in enumerate_fixed_points(d * ratio, d).unwrap() {
                let half = half_obstruction_general(&c);
                let ok = check_square_root(&full_obstruction_general(&c), &half);
                if !ok {
                    bad.push(c.to_string());
                }
                count += 1;
                writeln!(digest, "{c} {half}").unwrap();
            }
        }
    }
    (bad.is_empty(), format!("{count} fixed points {}", bad.join(" ")), digest)
}

fn criterion_6(seen: &Seen) -> (bool, String, String) {
    let bad: Vec<String> = seen
        .iter()
        .filter(|(n, v)| !v.is_homogeneous_of_degree(-n))
        .map(|(n, v)| format!("n={n}:{v}"))
        .collect();
    (bad.is_empty(), format!("{} values {}", seen.len(), bad.join(" ")), String::new())
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let v = r(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        if v != r(0, 1) {
            return v;
        }
    }
}

fn random_map(rng: &mut ChaCha8Rng, classes: &[Class], max: usize) -> ClassMap {
    let mut m = ClassMap::new();
    for _ in 0..rng.gen_range(0..=max) {
        let c = classes[rng.gen_range(0..classes.len())].clone();
        m.insert(c, random_rational(rng));
    }
    m
}

/// Random table with rank at most 2, truncation degree at most 6, `y` power at most 4.
fn random_table(rng: &mut ChaCha8Rng) -> (GVTable, ClassLattice, u32) {
    let rank = rng.gen_range(1..=2usize);
    let omega: Vec<u64> = (0..rank).map(|_| rng.gen_range(1..=2)).collect();
    let lattice = ClassLattice::new(omega.clone(), rng.gen_range(2..=6)).unwrap();
    let n_max = rng.gen_range(1..=4);
    let classes: Vec<Class> = lattice.classes().into_iter().filter(|c| !c.is_zero()).collect();
    let mut gv = GVTable::new(omega);
    gv.n0 = random_map(rng, &classes, 4);
    gv.n1 = random_map(rng, &classes, 2);
    if rng.gen_bool(0.5) {
        let mut p0 = random_map(rng, &classes, 2);
        p0.insert(Class::zero(rank), r(1, 1));
        gv.p0 = Some(p0);
    }
    (gv, lattice, n_max)
}

fn factorial(n: u32) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::from(1), |a, k| a * k))
}

fn criterion_7() -> (bool, String, String) {
    let mut digest = String::new();
    let mut bad = Vec::new();

    let mut gv = GVTable::new(vec![1]);
    gv.n0.insert(Class(vec![1]), r(1, 1));
    gv.n0.insert(Class(vec![4]), r(2, 1));
    gv.p0 = Some([(Class(vec![0]), r(1, 1)), (Class(vec![3]), r(1, 1))].into_iter().collect());
    let lat = ClassLattice::new(vec![1], 4).unwrap();
    let four = Class(vec![4]);
    let above = StabilityParam::finite(r(3, 2), Side::Exact).unwrap();
    let below = StabilityParam::finite(r(1, 2), Side::Exact).unwrap();
    let p_above = pt_coeff_from_gv(&above, 1, &four, &gv, &lat).unwrap();
    let p_below = pt_coeff_from_gv(&below, 1, &four, &gv, &lat).unwrap();
    let wall = wall_jump_check(&r(1, 1), &gv, &lat, 2).unwrap();
    let row = wall.checks.iter().find(|c| c.n == 1 && c.beta == four).unwrap();
    let fixture_ok = p_above == r(3, 1)
        && p_below == r(2, 1)
        && wall.passed()
        && row.simple
        && row.simple_rhs == Some(r(1, 1));
    if !fixture_ok {
        bad.push(format!("local P2: above={p_above} below={p_below} wall={}", wall.passed()));
    }
    writeln!(digest, "fixture {p_above} {p_below} {}", row.jump()).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut simple_walls = 0;
    for i in 0..50 {
        let (gv, lat, n_max) = random_table(&mut rng);
        let params = {
            let mut ps = vec![StabilityParam::ZeroLimit, StabilityParam::Infinity];
            for w in walls(&gv, &lat) {
                ps.push(StabilityParam::finite(w.clone(), Side::Plus).unwrap());
                ps.push(StabilityParam::finite(w, Side::Minus).unwrap());
            }
            ps
        };
        for p in &params {
            let s = pt_series_from_gv(p, &gv, &lat, n_max).unwrap();
            for n in 0..=n_max {
                for beta in lat.classes() {
                    let direct = pt_coeff_from_gv(p, n, &beta, &gv, &lat).unwrap();
                    if s.coeff(n, &beta) * factorial(n) != direct {
                        bad.push(format!("table {i}: dual at {p} n={n} beta={beta}"));
                    }
                }
            }
            for ((n, c), v) in s.terms() {
                writeln!(digest, "{i} {p} {n} {c} {v}").unwrap();
            }
        }
        if !telescoping_check(&gv, &lat, n_max).unwrap().passed() {
            bad.push(format!("table {i}: telescoping"));
        }
        for w in walls(&gv, &lat) {
            let rep = wall_jump_check(&w, &gv, &lat, n_max).unwrap();
            simple_walls += rep.simple_walls();
            if !rep.passed() {
                bad.push(format!("table {i}: wall {w}"));
            }
        }
    }
    (
        bad.is_empty(),
        format!("50 tables, {simple_walls} simple-wall coefficients {}", bad.join(" ")),
        digest,
    )
}

fn criterion_8() -> (bool, String, String) {
    let mut digest = String::new();
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..100 {
        let (gv, lat, _) = random_table(&mut rng);
        let classes: Vec<Class> = lat.classes().into_iter().filter(|c| !c.is_zero()).collect();
        let gw = random_map(&mut rng, &classes, 5);
        let n0 = gv0_from_gw(&gw, &lat);
        if gw0_from_gv0(&n0, &lat) != gw || gv0_from_gw(&gw0_from_gv0(&gv.n0, &lat), &lat) != gv.n0 {
            bad.push(format!("table {i}: genus 0"));
        }
        let mut meeting = MeetingMap::new();
        for _ in 0..rng.gen_range(0..=2) {
            let a = classes[rng.gen_range(0..classes.len())].clone();
            let b = classes[rng.gen_range(0..classes.len())].clone();
            meeting.insert((a, b), random_rational(&mut rng));
        }
        let gw1 = gw1_assemble(&gv.n1, &gv.n0, &meeting, &lat);
        if gw1_extract(&gw1, &gv.n0, &meeting, &lat) != gv.n1 {
            bad.push(format!("table {i}: genus 1"));
        }
        for (c, v) in n0.iter().chain(gw1.iter()) {
            writeln!(digest, "{i} {c} {v}").unwrap();
        }
    }
    (bad.is_empty(), format!("100 tables {}", bad.join(" ")), digest)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn run_all() -> Vec<Outcome> {
    let mut seen = Seen::new();
    let mut out = Vec::new();
    let mut push = |(pass, detail, digest): (bool, String, String), elapsed, limit_s: u64| {
        out.push(Outcome {
            pass,
            detail,
            digest,
            elapsed,
            limit: Duration::from_secs(limit_s),
        });
    };
    let (c1, t) = timed(|| criterion_1(&mut seen));
    push(c1, t, 1);
    let (c2, t) = timed(criterion_2);
    push(c2, t, 60);
    let ((ok, detail, digest, fast), t) = timed(|| criterion_3(&mut seen));
    // each family has its own limit; the aggregate limit is their sum
    push((ok && fast, detail, digest), t, 7 * 600);
    let (c4, t) = timed(criterion_4);
    push(c4, t, 60);
    let (c5, t) = timed(criterion_5);
    push(c5, t, 60);
    let (c6, t) = timed(|| criterion_6(&seen));
    push(c6, t, 60);
    let (c7, t) = timed(criterion_7);
    push(c7, t, 120);
    let (c8, t) = timed(criterion_8);
    push(c8, t, 10);
    out
}

fn in_pool(threads: usize) -> Vec<Outcome> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(run_all)
}

fn main() -> ExitCode {
    let main_run = in_pool(8);
    let mut failed = 0;
    for (i, o) in main_run.iter().enumerate() {
        let ok = o.pass && o.within_time();
        failed += usize::from(!ok);
        let timing = if o.within_time() {
            String::new()
        } else {
            format!(" over the {}s limit", o.limit.as_secs())
        };
        println!(
            "criterion {}: {} ({:.2}s{timing}) {}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            o.elapsed.as_secs_f64(),
            o.detail.trim()
        );
    }
    let reference: Vec<&str> = main_run.iter().map(|o| o.digest.as_str()).collect();
    let mut differing = Vec::new();
    for threads in [1, 4] {
        let other = in_pool(threads);
        for (i, o) in other.iter().enumerate() {
            if o.digest != reference[i] {
                differing.push(format!("criterion {} with {threads} threads", i + 1));
            }
        }
    }
    let det_ok = differing.is_empty();
    failed += usize::from(!det_ok);
    println!(
        "criterion 9: {} (1, 4, 8 workers) {}",
        if det_ok { "PASS" } else { "FAIL" },
        differing.join(" ")
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion line(s) failed");
        ExitCode::FAILURE
    }
}
