//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cominimal::constructions::{Base, FamilySpec};
use cominimal::lattice_lift::{
    LatticePairReport, build_pair_for_automorphism, build_quadrant_pair, eight_matrices,
    is_in_quadrant, verify_corollary_pairs,
};
use cominimal::oracle::{brute_is_cominimal, naive_sumset};
use cominimal::refinement::{base_prefix, refine_greedy, removal_is_certified_safe};
use cominimal::sumset::{TailKind, representations, sumset};
use cominimal::verifiers::{
    Certification, Truncation, check_claims_st_with, check_claims_uv, check_self_cominimal_cyclic,
    check_uv_finiteness, residue_window, verify_complement_truncated, verify_complement_window,
    verify_element_necessity_a, verify_minimality,
};
use cominimal::window::{IntegerWindow, LatticeSet, LatticeWindow, WindowedSet};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Pinned scales and limits.
const COVER_HALF_WIDTH: i64 = 4096;
const COVER_MAX_INDEX: u32 = 16;
const COVER_TIME: Duration = Duration::from_secs(1);
const CLAIM_N_HI: u32 = 10;
const ST_TRUNCATION: u32 = 14;
const ST_TRUNCATION_RERUN: u32 = 22;
const CLAIM_TIME: Duration = Duration::from_secs(10);
const FINITENESS_N: (u32, u32) = (4, 10);
const REPS_WINDOW: (i64, i64) = (-256, 255);
const REPS_HORIZONS: (u32, u32) = (14, 22);
const WITNESS_WINDOW: i64 = 4096;
const WITNESS_N: (u32, u32) = (3, 8);
const TAIL_THRESHOLD_MAX: u32 = 8;
const TAIL_HORIZON: u32 = 16;
const REFINE_BUDGET: usize = 200;
const REFINE_COVER_HALF_WIDTH: i64 = 2048;
const CYCLIC_MAX_M: usize = 12;
const CYCLIC_TIME: Duration = Duration::from_secs(60);
const LATTICE_HALF_WIDTH: i64 = 64;
const ORACLE_CASES: usize = 1000;
const PERF_SIZE: usize = 4096;
const PERF_WINDOW_BITS: u32 = 16;
const PERF_MIN_RATIO: f64 = 50.0;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn window(lo: i64, hi: i64) -> IntegerWindow {
    IntegerWindow::new(lo, hi).unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn within(limit: Duration, took: Duration) -> Result<(), String> {
    if took <= limit {
        Ok(())
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

fn powers(max_exp: u32, signed: bool) -> Vec<i64> {
    (0..=max_exp)
        .flat_map(|k| {
            if signed {
                vec![1i64 << k, -(1i64 << k)]
            } else {
                vec![1i64 << k]
            }
        })
        .collect()
}

fn c1_s_t_truncated_cover() -> Outcome {
    let blocks: Vec<FamilySpec> = (0..=COVER_MAX_INDEX).map(FamilySpec::I).collect();
    let w = window(-COVER_HALF_WIDTH, COVER_HALF_WIDTH);
    let (r, took) =
        timed(|| verify_complement_truncated(&blocks, &powers(COVER_MAX_INDEX, false), w));
    let r = r.map_err(|e| e.to_string())?;
    if !r.holds {
        return Err(format!("first gap {:?}", r.counterexample));
    }
    within(COVER_TIME, took)?;
    Ok(format!(
        "I_0..I_{COVER_MAX_INDEX} + 2^0..2^{COVER_MAX_INDEX} covers {w} in {took:?}"
    ))
}

fn c2_u_v_truncated_cover() -> Outcome {
    let blocks: Vec<FamilySpec> = (0..=COVER_MAX_INDEX).map(FamilySpec::U).collect();
    let w = window(-COVER_HALF_WIDTH, COVER_HALF_WIDTH);
    let (r, took) =
        timed(|| verify_complement_truncated(&blocks, &powers(COVER_MAX_INDEX, true), w));
    let r = r.map_err(|e| e.to_string())?;
    if !r.holds {
        return Err(format!("first gap {:?}", r.counterexample));
    }
    within(COVER_TIME, took)?;
    Ok(format!(
        "U_0..U_{COVER_MAX_INDEX} + ±2^0..±2^{COVER_MAX_INDEX} covers {w} in {took:?}"
    ))
}

fn c3_st_claims_stable() -> Outcome {
    let run = |k| {
        check_claims_st_with(
            2,
            CLAIM_N_HI,
            Truncation {
                max_index: k,
                max_exp: k,
            },
        )
    };
    let ((a, b), took) = timed(|| (run(ST_TRUNCATION), run(ST_TRUNCATION_RERUN)));
    let (a, b) = (a.map_err(|e| e.to_string())?, b.map_err(|e| e.to_string())?);
    let verdicts = |v: &[cominimal::verifiers::ClaimResult]| {
        v.iter()
            .map(|c| (c.claim.clone(), c.n, c.holds))
            .collect::<Vec<_>>()
    };
    if let Some(bad) = a.iter().find(|c| !c.holds) {
        return Err(format!(
            "{} fails at n = {:?}: {:?}",
            bad.claim, bad.n, bad.counterexample
        ));
    }
    if verdicts(&a) != verdicts(&b) {
        return Err(format!(
            "verdicts differ between truncations {ST_TRUNCATION} and {ST_TRUNCATION_RERUN}"
        ));
    }
    within(CLAIM_TIME, took)?;
    let ids: BTreeSet<&str> = a.iter().map(|c| c.claim.as_str()).collect();
    Ok(format!(
        "{} results over {} claims for n <= {CLAIM_N_HI}, identical at {ST_TRUNCATION} and {ST_TRUNCATION_RERUN}, {took:?}",
        a.len(),
        ids.len()
    ))
}

fn c4_uv_claims() -> Outcome {
    let (r, took) = timed(|| check_claims_uv(2, CLAIM_N_HI));
    let r = r.map_err(|e| e.to_string())?;
    let named = [
        ("uv.one_forced", -39),
        ("uv.minus_one_forced", -40),
        ("uv.minus_two_forced", -4),
        ("uv.minus_four_forced", -6),
    ];
    for (id, _) in named {
        if !r.iter().any(|c| c.claim == id && c.holds) {
            return Err(format!("{id} does not hold"));
        }
    }
    let bad: Vec<String> = r
        .iter()
        .filter(|c| !c.holds)
        .map(|c| {
            format!(
                "{} at n = {:?}: {:?} ({})",
                c.claim, c.n, c.counterexample, c.detail
            )
        })
        .collect();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    within(CLAIM_TIME, took)?;
    Ok(format!(
        "{} results hold, including the named values -39, -40, -4, -6",
        r.len()
    ))
}

fn c5_finiteness_and_horizons() -> Outcome {
    let f = check_uv_finiteness(FINITENESS_N.0, FINITENESS_N.1).map_err(|e| e.to_string())?;
    if let Some(bad) = f.iter().find(|c| !c.holds) {
        return Err(format!("finiteness fails at n = {:?}", bad.n));
    }
    for y in REPS_WINDOW.0..=REPS_WINDOW.1 {
        let lo = representations(y, &FamilySpec::UAll, &FamilySpec::V, REPS_HORIZONS.0)
            .map_err(|e| e.to_string())?;
        let hi = representations(y, &FamilySpec::UAll, &FamilySpec::V, REPS_HORIZONS.1)
            .map_err(|e| e.to_string())?;
        if lo.pairs != hi.pairs || lo.tail.kind != hi.tail.kind {
            return Err(format!("representations of {y} differ between horizons"));
        }
    }
    Ok(format!(
        "disjointness for n = {}..{}; lists for y in [{}, {}] agree at horizons {} and {}",
        FINITENESS_N.0,
        FINITENESS_N.1,
        REPS_WINDOW.0,
        REPS_WINDOW.1,
        REPS_HORIZONS.0,
        REPS_HORIZONS.1
    ))
}

/// True when every representation of `y` under `(S, T)` uses `b` (or `a`), with a tail verdict.
fn lost_with(
    y: i64,
    uses: impl Fn(&cominimal::sumset::RepresentationReport) -> bool,
) -> Result<bool, String> {
    let r = representations(
        y,
        &FamilySpec::S,
        &FamilySpec::T,
        cominimal::sumset::default_horizon(y),
    )
    .map_err(|e| e.to_string())?;
    Ok(uses(&r))
}

fn c6_minimality_witnesses() -> Outcome {
    let w = window(-WITNESS_WINDOW, WITNESS_WINDOW);
    let mut problems = Vec::new();
    for (b, y) in [(1i64, -1i64), (2, -38)] {
        if !lost_with(y, |r| r.all_use_b(b))? {
            let found = verify_minimality(&FamilySpec::S, &FamilySpec::T, &[b], w)
                .map_err(|e| e.to_string())?
                .entries
                .get(&b)
                .map(|x| x.target);
            problems.push(format!(
                "removing {b} from T does not lose {y} (a lost target is {found:?})"
            ));
        }
    }
    for (a, y) in [(-2i64, -1i64), (-4, -3)] {
        if !lost_with(y, |r| r.all_use_a(a))? {
            problems.push(format!("removing {a} from S does not lose {y}"));
        }
        let wit = verify_element_necessity_a(&FamilySpec::S, &FamilySpec::T, a, w)
            .map_err(|e| e.to_string())?;
        if wit.as_ref().map(|x| x.target) != Some(y) {
            problems.push(format!("necessity scan for {a} found {wit:?}"));
        }
    }
    let bs: Vec<i64> = (WITNESS_N.0..=WITNESS_N.1)
        .map(|n| 1i64 << (n - 1))
        .collect();
    let rep =
        verify_minimality(&FamilySpec::S, &FamilySpec::T, &bs, w).map_err(|e| e.to_string())?;
    if rep.certification != Certification::WindowTail {
        problems.push("minimality report is not window+tail".into());
    }
    for n in WITNESS_N.0..=WITNESS_N.1 {
        let h = 1i64 << (n - 1);
        let q2 = residue_window(n, h + h / 4 + 1, h + h / 2).map_err(|e| e.to_string())?;
        match rep.entries.get(&h) {
            Some(x) if q2.contains(x.target) => {}
            other => problems.push(format!("removing {h} loses {other:?}, not a point of {q2}")),
        }
    }
    if problems.is_empty() {
        Ok(format!(
            "named targets -1, -38, -1, -3 and second-quarter targets for n = {}..{}",
            WITNESS_N.0, WITNESS_N.1
        ))
    } else {
        Err(problems.join("; "))
    }
}

fn c7_tails() -> Outcome {
    let r2 = representations(-2, &FamilySpec::S, &FamilySpec::T, TAIL_HORIZON)
        .map_err(|e| e.to_string())?;
    let r1 = representations(-1, &FamilySpec::S, &FamilySpec::T, TAIL_HORIZON)
        .map_err(|e| e.to_string())?;
    if r2.tail.kind != TailKind::Infinite || r2.tail.k0 > TAIL_THRESHOLD_MAX {
        return Err(format!("tail of -2 is {:?}", r2.tail));
    }
    if r1.tail.kind != TailKind::None {
        return Err(format!("tail of -1 is {:?}", r1.tail));
    }
    Ok(format!(
        "-2 has an infinite tail from k0 = {}; -1 has none",
        r2.tail.k0
    ))
}

fn c8_refinement() -> Outcome {
    let prefix = base_prefix(Base::S, REFINE_BUDGET).map_err(|e| e.to_string())?;
    let reach = prefix.last().unwrap().abs();
    let run = || {
        refine_greedy(
            &FamilySpec::S,
            &FamilySpec::T,
            REFINE_BUDGET,
            window(-reach, reach),
        )
    };
    let (a, b) = (
        run().map_err(|e| e.to_string())?,
        run().map_err(|e| e.to_string())?,
    );
    if a != b {
        return Err("two runs differ".into());
    }
    let in_prefix: BTreeSet<i64> = prefix.iter().copied().collect();
    let retained: BTreeSet<i64> = a.retained.iter().copied().collect();
    let mut required = vec![-2i64, -4];
    // Blocks beyond the prefix hold nothing in range.
    for n in (3..).take_while(|&n| -(1i64 << n) >= -reach) {
        let h = 1i64 << (n - 1);
        let (Ok(left), Ok(upper)) = (
            residue_window(n, h / 4 + 1, h / 2),
            residue_window(n + 1, 3 * h + 1, 3 * h + h / 4),
        ) else {
            break;
        };
        for x in left.iter().chain(upper.iter()) {
            if in_prefix.contains(&x) && FamilySpec::S.member(x) {
                required.push(x);
            }
        }
    }
    let dropped: Vec<i64> = required
        .iter()
        .copied()
        .filter(|x| !retained.contains(x))
        .collect();
    if !dropped.is_empty() {
        return Err(format!("cluster elements removed: {dropped:?}"));
    }
    // -135 is certified against S itself; the greedy pass keeps it because -132 went first.
    let safe = removal_is_certified_safe(&|x: i64| FamilySpec::S.member(x), -135, &FamilySpec::T)
        .map_err(|e| e.to_string())?;
    if !safe {
        return Err("-135 is not certified removable".into());
    }
    let spec = a.family().map_err(|e| e.to_string())?;
    let cov = verify_complement_window(
        &spec,
        &FamilySpec::T,
        window(-REFINE_COVER_HALF_WIDTH, REFINE_COVER_HALF_WIDTH),
    )
    .map_err(|e| e.to_string())?;
    if !cov.holds {
        return Err(format!("refined set leaves gap {:?}", cov.counterexample));
    }
    Ok(format!(
        "deterministic; {} removed; {} cluster elements and -2, -4 retained; -135 certified removable from S; covers ±{REFINE_COVER_HALF_WIDTH}",
        a.removed.len(),
        required.len() - 2
    ))
}

fn c9_cyclic() -> Outcome {
    let (r, took) = timed(|| -> Result<usize, String> {
        let mut count = 0;
        for m in 1..=CYCLIC_MAX_M {
            for mask in 0u32..(1 << m) {
                let a: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
                let fast = check_self_cominimal_cyclic(&a, m).map_err(|e| e.to_string())?;
                if fast != brute_is_cominimal(&a, &a, m) {
                    return Err(format!("m = {m}, A = {a:?}"));
                }
                count += 1;
            }
        }
        Ok(count)
    });
    let count = r?;
    within(CYCLIC_TIME, took)?;
    Ok(format!(
        "{count} subsets for m <= {CYCLIC_MAX_M} agree, {took:?}"
    ))
}

fn lattice_ok(r: &LatticePairReport) -> Result<(), String> {
    if r.passes() {
        Ok(())
    } else {
        Err(format!(
            "uncovered {:?}, missing {:?} / {:?}",
            r.first_uncovered, r.a_missing, r.b_missing
        ))
    }
}

fn c10_lattice() -> Outcome {
    let w = LatticeWindow::cube(2, -LATTICE_HALF_WIDTH, LATTICE_HALF_WIDTH).unwrap();
    let zeros = vec![0i64; 1024];
    for r in verify_corollary_pairs(&zeros, &zeros, &w).map_err(|e| e.to_string())? {
        lattice_ok(&r).map_err(|e| format!("row-shifted pair: {e}"))?;
    }
    for m in eight_matrices() {
        let r = build_pair_for_automorphism(&m, &w).map_err(|e| e.to_string())?;
        lattice_ok(&r).map_err(|e| format!("{m}: {e}"))?;
    }
    for d in 1..=2 {
        let wd = LatticeWindow::cube(2 * d, -LATTICE_HALF_WIDTH, LATTICE_HALF_WIDTH).unwrap();
        let r = build_quadrant_pair(d, &wd).map_err(|e| e.to_string())?;
        lattice_ok(&r).map_err(|e| format!("quadrant d = {d}: {e}"))?;
        let a = LatticeSet::new(r.a.dims.clone(), &r.a.points).map_err(|e| e.to_string())?;
        if !is_in_quadrant(&a).map_err(|e| e.to_string())? {
            return Err(format!("quadrant d = {d} leaves the quadrant"));
        }
    }
    Ok(format!(
        "row-shifted product pairs, eight automorphism pairs and quadrant pairs d = 1, 2 pass on {w}"
    ))
}

fn c11_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..ORACLE_CASES {
        let span = rng.random_range(1..2000i64);
        let w = window(-span, span);
        let mut draw = || -> Vec<i64> {
            let k = rng.random_range(0..200usize);
            (0..k).map(|_| rng.random_range(-span..=span)).collect()
        };
        let (a, b) = (draw(), draw());
        let t = window(-2 * span - 3, 2 * span + 3);
        let fast = sumset(
            &WindowedSet::from_elements(w, a.clone()).unwrap(),
            &WindowedSet::from_elements(w, b.clone()).unwrap(),
            t,
        );
        if !fast.same_members(&naive_sumset(&a, &b, t)) {
            return Err(format!("random case {case} differs"));
        }
    }
    let w = window(-4096, 4096);
    let t = window(-8192, 8192);
    let structured: Vec<(FamilySpec, FamilySpec)> = vec![
        (FamilySpec::S, FamilySpec::T),
        (FamilySpec::UAll, FamilySpec::V),
        (FamilySpec::I(9), FamilySpec::T),
        (FamilySpec::U(9), FamilySpec::V),
        (
            FamilySpec::refined(Base::S, REFINE_BUDGET).map_err(|e| e.to_string())?,
            FamilySpec::T,
        ),
        (
            FamilySpec::w_greedy(window(-512, 512)).map_err(|e| e.to_string())?,
            FamilySpec::S,
        ),
    ];
    for (fa, fb) in &structured {
        let a = fa.materialize(w).map_err(|e| e.to_string())?;
        let b = fb.materialize(w).map_err(|e| e.to_string())?;
        if !sumset(&a, &b, t).same_members(&naive_sumset(&a.elements(), &b.elements(), t)) {
            return Err(format!("{fa} + {fb} differs"));
        }
    }
    Ok(format!(
        "{ORACLE_CASES} random cases and {} structured pairs agree",
        structured.len()
    ))
}

fn c12_performance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let half = 1i64 << (PERF_WINDOW_BITS - 1);
    let w = window(-half, half - 1);
    let mut pick = || -> Vec<i64> {
        let mut s = BTreeSet::new();
        while s.len() < PERF_SIZE {
            s.insert(rng.random_range(-half..half));
        }
        s.into_iter().collect()
    };
    let (a, b) = (pick(), pick());
    let t = window(-2 * half, 2 * half);
    let (sa, sb) = (
        WindowedSet::from_elements(w, a.clone()).unwrap(),
        WindowedSet::from_elements(w, b.clone()).unwrap(),
    );
    let (naive, slow) = timed(|| naive_sumset(&a, &b, t));
    let mut best = Duration::MAX;
    let mut fast = None;
    for _ in 0..3 {
        let (f, took) = timed(|| sumset(&sa, &sb, t));
        best = best.min(took);
        fast = Some(f);
    }
    if !fast.unwrap().same_members(&naive) {
        return Err("results differ".into());
    }
    let ratio = slow.as_secs_f64() / best.as_secs_f64().max(1e-9);
    if ratio < PERF_MIN_RATIO {
        return Err(format!("speedup {ratio:.1}x is below {PERF_MIN_RATIO}x"));
    }
    Ok(format!("shift-or {best:?} vs naive {slow:?}: {ratio:.0}x"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("S + T truncated cover", c1_s_t_truncated_cover),
        ("U + V truncated cover", c2_u_v_truncated_cover),
        (
            "S/T structural claims, stable under truncation",
            c3_st_claims_stable,
        ),
        ("U/V claims 1-9", c4_uv_claims),
        (
            "U/V finiteness and horizon stability",
            c5_finiteness_and_horizons,
        ),
        ("minimality witnesses", c6_minimality_witnesses),
        ("infinite-tail detection", c7_tails),
        ("greedy refinement of S", c8_refinement),
        ("cyclic characterization", c9_cyclic),
        ("lattice pairs", c10_lattice),
        ("oracle equivalence", c11_oracle),
        ("shift-or performance", c12_performance),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(d) => println!("PASS {:>2} {name}: {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {d}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
