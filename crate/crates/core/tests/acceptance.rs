mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use polycrystal::crystal::{
    axiom_check, from_tensor_window, tensor_window, window_width, Crystal, ElementaryCrystal,
    TensorCrystal,
};
use polycrystal::monster::{monster_member, MonsterConfig};
use polycrystal::oracle::{bfs_image, character};
use polycrystal::polyhedral::{
    check_positivity, gamma_member_all_imaginary, gamma_member_single_real, generate_theta,
    rank2_member, rank3_member, s_j_coordinate, s_k, GammaTester, LinearForm, ThetaLimits,
};
use polycrystal::presets::{self, RANK3_TUPLES};
use polycrystal::{PathVector, SequenceCrystal};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{box_universe, histogram, ids, random_vector};

type Criterion = (&'static str, fn() -> Outcome);

const TIME_LIMIT: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    lines: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            pass: true,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.pass &= ok;
        self.lines.push(format!("{} {line}", if ok { "ok  " } else { "FAIL" }));
    }
}

fn filter(universe: &[PathVector], f: impl Fn(&PathVector) -> bool + Sync) -> HashSet<PathVector> {
    universe.par_iter().filter(|x| f(x)).cloned().collect()
}

fn image(z: &SequenceCrystal, depth: u64, window: usize) -> HashSet<PathVector> {
    bfs_image(z, depth, window).nodes.into_iter().collect()
}

fn diff(a: &HashSet<PathVector>, b: &HashSet<PathVector>) -> String {
    format!("{} missing, {} extra", a.difference(b).count(), b.difference(a).count())
}

fn c1() -> Outcome {
    let mut out = Outcome::new();
    let (depth, window) = (8, 12);
    let universe = box_universe(depth, window);
    for ((a, b, c), bound) in [((0, 0, 0), None), ((2, 1, 1), None), ((4, 2, 3), None), ((2, 0, 1), Some(6))] {
        let start = Instant::now();
        let z = presets::rank2(a, b, c).unwrap();
        let img = image(&z, depth, window);
        let closed = filter(&universe, |x| rank2_member(x, a, b, c));
        let single = filter(&universe, |x| gamma_member_single_real(&z, x).unwrap());
        let tester = GammaTester::new(&z, ThetaLimits::new(window).with_max_coeff(bound)).unwrap();
        let general = filter(&universe, |x| tester.verdict(x).is_in());
        let elapsed = start.elapsed();
        let stats = tester.stats();
        let ok = img == closed && img == single && img == general && elapsed < TIME_LIMIT;
        out.check(
            ok,
            format!(
                "({a},{b},{c}): image {} | closed form {} | single-real {} | general {} | forms {} saturated {}{} | {:.2?}",
                img.len(),
                diff(&img, &closed),
                diff(&img, &single),
                diff(&img, &general),
                stats.theta_forms,
                stats.theta_saturated && stats.excluded_saturated,
                bound.map(|b| format!(" (coefficient bound {b})")).unwrap_or_default(),
                elapsed
            ),
        );
    }
    out
}

fn c2() -> Outcome {
    let mut out = Outcome::new();
    let (depth, window) = (6, 15);
    let universe = box_universe(depth, window);
    for p in RANK3_TUPLES {
        let start = Instant::now();
        let z = presets::rank3(p).unwrap();
        let img = image(&z, depth, window);
        let closed = filter(&universe, |x| rank3_member(x, p));
        let single = filter(&universe, |x| gamma_member_single_real(&z, x).unwrap());
        out.check(
            img == closed && img == single,
            format!(
                "{p:?}: image {} | closed form {} | single-real {} | {:.2?}",
                img.len(),
                diff(&img, &closed),
                diff(&img, &single),
                start.elapsed()
            ),
        );
    }
    out
}

fn c3() -> Outcome {
    let mut out = Outcome::new();
    let (depth, window) = (7, 12);
    let universe = box_universe(depth, window);
    for a12 in [0, -1] {
        let z = presets::all_imaginary(a12).unwrap();
        let img = image(&z, depth, window);
        let test = filter(&universe, |x| gamma_member_all_imaginary(&z, x).unwrap());
        out.check(
            img == test,
            format!("a12 = {a12}: image {} | all-imaginary test {}", img.len(), diff(&img, &test)),
        );
    }
    out
}

fn c4() -> Outcome {
    let mut out = Outcome::new();
    let cfg = MonsterConfig::toy();
    let z = presets::monster(cfg.clone());
    for (window, bound) in [(22, Some(6)), (14, None)] {
        let depth = 6;
        let start = Instant::now();
        let universe = box_universe(depth, window);
        let img = image(&z, depth, window);
        let closed = filter(&universe, |x| monster_member(x, &cfg).unwrap());
        let tester = GammaTester::new(&z, ThetaLimits::new(window).with_max_coeff(bound)).unwrap();
        let general = filter(&universe, |x| tester.verdict(x).is_in());
        let stats = tester.stats();
        out.check(
            img == closed && img == general,
            format!(
                "window {window}: image {} | closed form {} | general {} | forms {} saturated {}{} | {:.2?}",
                img.len(),
                diff(&img, &closed),
                diff(&img, &general),
                stats.theta_forms,
                stats.theta_saturated && stats.excluded_saturated,
                bound.map(|b| format!(" (coefficient bound {b})")).unwrap_or_default(),
                start.elapsed()
            ),
        );
    }
    out
}

fn c5() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, z) in presets::named() {
        let window = 12;
        let sample: Vec<PathVector> = (0..10_000).map(|_| random_vector(&mut rng, window, 6, 4)).collect();
        let indices = ids(&z, window);
        let report = sample
            .par_chunks(500)
            .map(|chunk| axiom_check(&z, chunk, &indices))
            .reduce(Default::default, |mut a, b| {
                a.checked += b.checked;
                a.violations.extend(b.violations);
                a
            });
        let first = report.violations.first().map(|v| format!(" first: {} for {} at {}", v.axiom, v.i, v.elem));
        out.check(
            report.is_ok(),
            format!(
                "{name}: {} vectors, {} checks, {} violations{}",
                sample.len(),
                report.checked,
                report.violations.len(),
                first.unwrap_or_default()
            ),
        );
    }
    out
}

fn c6() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (name, z) in presets::named() {
        let n = 10;
        let tensor = TensorCrystal::new(ElementaryCrystal::new(z.datum_arc()));
        let indices = ids(&z, n);
        let mut checks = 0;
        let mut mismatches = Vec::new();
        for _ in 0..2_000 {
            let x = random_vector(&mut rng, n, 5, 3);
            let w = window_width(z.iota(), &x, &indices).max(n);
            let t = tensor_window(z.iota(), &x, w);
            for &i in &indices {
                checks += 2;
                let f_seq = Some(z.f_tilde(&x, i));
                let f_ten = tensor.f_tilde(&t, i).map(|t| from_tensor_window(&t));
                let e_seq = z.e_tilde(&x, i);
                let e_ten = tensor.e_tilde(&t, i).map(|t| from_tensor_window(&t));
                if f_seq != f_ten || e_seq != e_ten {
                    mismatches.push(format!("{x} at {i}"));
                }
            }
        }
        out.check(
            mismatches.is_empty(),
            format!(
                "{name}: {checks} operator checks, {} mismatches{}",
                mismatches.len(),
                mismatches.first().map(|m| format!(" first: {m}")).unwrap_or_default()
            ),
        );
    }
    out
}

fn c7() -> Outcome {
    let mut out = Outcome::new();
    let window = 15;
    let cap = 200_000;
    for (name, z) in presets::named() {
        let start = Instant::now();
        let full = generate_theta(&z, &ThetaLimits::new(window).with_max_forms(cap));
        let mut v = check_positivity(&z, &full).len();
        let mut line = format!(
            "{name}: {} forms, saturated {}",
            full.len(),
            full.saturated()
        );
        if !full.saturated() {
            let bounded = generate_theta(
                &z,
                &ThetaLimits::new(window).with_max_forms(cap).with_max_coeff(Some(3)),
            );
            v += check_positivity(&z, &bounded).len();
            line += &format!(
                "; coefficient bound 3: {} forms, fixpoint {}",
                bounded.len(),
                bounded.fixpoint
            );
        }
        out.check(v == 0, format!("{line}; {v} violations | {:.2?}", start.elapsed()));
    }
    out
}

fn c8() -> Outcome {
    let mut out = Outcome::new();
    for (name, z) in presets::named() {
        let depth = 6;
        let g = bfs_image(&z, depth, 3 * depth as usize);
        let ch = character(&z, &g, false);
        let independent = histogram(&z, &g.nodes);
        let total: u64 = ch.values().flat_map(|m| m.values()).sum();
        out.check(
            ch == independent && total as usize == g.nodes.len(),
            format!("{name}: {} nodes, {} weights", g.nodes.len(), ch.values().map(|m| m.len()).sum::<usize>()),
        );
    }
    out
}

fn c9() -> Outcome {
    let mut out = Outcome::new();
    let mut presets_: Vec<(String, SequenceCrystal)> = [(0, 0, 0), (2, 1, 1), (4, 2, 3), (2, 0, 1)]
        .into_iter()
        .map(|(a, b, c)| (format!("rank2({a},{b},{c})"), presets::rank2(a, b, c).unwrap()))
        .collect();
    presets_.extend(RANK3_TUPLES.map(|p| (format!("rank3({p:?})"), presets::rank3(p).unwrap())));
    for (name, z) in presets_ {
        let real: Vec<usize> = (1..=40).filter(|&j| z.is_real_pos(j)).collect();
        let bad: Vec<usize> = real
            .iter()
            .copied()
            .filter(|&j| s_k(&z, &s_j_coordinate(&z, j), z.iota().kplus(j)) != LinearForm::coordinate(j))
            .collect();
        out.check(
            bad.is_empty(),
            format!("{name}: {} real positions, {} failures {bad:?}", real.len(), bad.len()),
        );
    }
    out
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("C1 rank-2 agreement (bfs, closed form, single-real, general)", c1),
        ("C2 rank-3 agreement (bfs, closed form, single-real)", c2),
        ("C3 all-imaginary agreement", c3),
        ("C4 toy Monster agreement (bfs, closed form, general)", c4),
        ("C5 crystal axioms on random vectors", c5),
        ("C6 sequence operators match the tensor rule", c6),
        ("C7 positivity within window 15", c7),
        ("C8 character matches an independent histogram", c8),
        ("C9 S_{j+} S_j x_j = x_j on real positions", c9),
    ];
    let mut failed = 0;
    for (title, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        println!(
            "{} {title} [{:.2?}]",
            if outcome.pass { "PASS" } else { "FAIL" },
            start.elapsed()
        );
        for line in &outcome.lines {
            println!("    {line}");
        }
        failed += usize::from(!outcome.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
