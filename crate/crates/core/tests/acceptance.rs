//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

mod common;

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use iaa_core::step::grid;
use iaa_core::{
    build_t1, build_zgt2, centroid, gamma_gt2, gamma_t1, height, ingest_csv, run_report, support, IngestOptions,
    Interval, Mode, RunConfig, StepFunction, Type1FuzzySet, ZGT2FuzzySet,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type Expected<'a> = (&'a str, &'a [(f64, f64)], Interval, f64);
type Row<'a> = (&'a str, &'a [(f64, f64)], f64, &'a str);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if $cond {
        } else {
            return Err(format!($($msg)+));
        }
    };
}

const SCALE: (f64, f64) = (0.0, 10.0);

fn scale() -> Interval {
    Interval::new(SCALE.0, SCALE.1).unwrap()
}

fn t1(pairs: &[(f64, f64)]) -> Type1FuzzySet {
    build_t1(&intervals(pairs)).unwrap()
}

fn gt2(groups: &[&[(f64, f64)]]) -> ZGT2FuzzySet {
    build_zgt2(&groups.iter().map(|g| t1(g)).collect::<Vec<_>>()).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn within_time(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure!(took < limit, "took {took:?}, limit {limit:?}");
    Ok(())
}

fn cli_gamma_t1(spec: &str) -> Result<String, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_iaa"))
        .args(["gamma-t1", "--intervals", spec])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(
        o.status.success(),
        "gamma-t1 {spec} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())?;
    let text = String::from_utf8(o.stdout).unwrap();
    let line = text
        .lines()
        .find(|l| l.contains("\"gamma_t1\""))
        .ok_or("no gamma_t1 in output")?;
    ensure!(v["gamma_t1"].is_number(), "gamma_t1 is not a number");
    Ok(line
        .trim()
        .trim_end_matches(',')
        .trim_start_matches("\"gamma_t1\": ")
        .to_string())
}

fn inline(pairs: &[(f64, f64)]) -> String {
    pairs
        .iter()
        .map(|(a, b)| format!("{a},{b}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn ac1_type1_rows() -> Outcome {
    let start = Instant::now();
    let rows: [Row; 5] = [
        ("T1", &T1, 0.5, "0.5000"),
        ("N1", &N1, 5.0 / 7.0, "0.7143"),
        ("N2", &N2, 0.25, "0.2500"),
        ("M1", &M1, 0.5, "0.5000"),
        ("M2", &M2, 0.16, "0.1600"),
    ];
    for (name, pairs, expected, printed) in rows {
        let g = gamma_t1(&t1(pairs), Mode::Exact).map_err(|e| e.to_string())?.gamma;
        ensure!((g - expected).abs() < 1e-9, "{name}: gamma {g} != {expected}");
        let cli = cli_gamma_t1(&inline(pairs))?;
        ensure!(cli == printed, "{name}: CLI printed {cli}, expected {printed}");
    }
    let m3 = gamma_t1(&t1(&M3), Mode::Exact).map_err(|e| e.to_string())?.gamma;
    ensure!((m3 - 0.08).abs() < 1e-9, "M3: gamma {m3} != 0.08");
    ensure!((m3 - 0.16).abs() > 1e-3, "M3 unexpectedly matches the printed 0.16");
    ensure!(cli_gamma_t1(&inline(&M3))? == "0.0800", "M3 CLI output");
    within_time(start, Duration::from_secs(1))?;
    Ok(format!("T1 N1 N2 M1 M2 reproduced; M3 = {m3:.4}"))
}

fn ac2_gt2_cases() -> Outcome {
    let start = Instant::now();
    let total = gamma_gt2(&gt2(&[&T1, &T1]), Mode::Exact).unwrap().gamma;
    ensure!(total == 1.0, "total agreement gamma {total}");
    let null = gamma_gt2(&gt2(&[&N1, &N2]), Mode::Exact).unwrap().gamma;
    ensure!(null == 0.0, "null agreement gamma {null}");
    let m = gt2(&[&M1, &M2, &M3]);
    let exact = gamma_gt2(&m, Mode::Exact).unwrap().gamma;
    ensure!((exact - 23.0 / 30.0).abs() < 1e-9, "moderate exact gamma {exact}");
    let mut best: Option<(f64, f64)> = None;
    for k in 1..=50 {
        let step = k as f64 * 0.01;
        let mode = Mode::discretized(scale(), step).unwrap();
        let g = gamma_gt2(&m, mode).unwrap().gamma;
        if best.is_none_or(|(_, b)| (g - 0.772).abs() < (b - 0.772).abs()) {
            best = Some((step, g));
        }
    }
    let (step, g) = best.unwrap();
    ensure!(
        (g - 0.772).abs() <= 0.006,
        "closest discretized gamma {g} at step {step}"
    );
    within_time(start, Duration::from_secs(1))?;
    Ok(format!("1, 0, exact {exact:.6}; discretized {g:.4} at step {step:.2}"))
}

fn ac3_split() -> Outcome {
    let set = t1(&SPLIT);
    let lengths: Vec<f64> = (1..=4)
        .map(|k| set.mf().alpha_cut_length(k as f64 / 4.0).unwrap())
        .collect();
    ensure!(lengths == [6.0, 3.0, 2.0, 0.0], "cut lengths {lengths:?}");
    let g = gamma_t1(&set, Mode::Exact).unwrap().gamma;
    ensure!((g - 1.0 / 3.0).abs() < 1e-9, "gamma {g}");
    let cut = set.mf().alpha_cut(0.5).unwrap();
    ensure!(cut.len() == 2 && cut[0].hi() < cut[1].lo(), "alpha 0.5 cut {cut:?}");
    Ok(format!(
        "lengths {lengths:?}, gamma {g:.6}, cut(0.5) = {} + {}",
        cut[0], cut[1]
    ))
}

struct Instance {
    groups: Vec<Vec<Interval>>,
}

fn random_instances(count: usize) -> Vec<Instance> {
    let mut rng = rng(20_240_601);
    (0..count)
        .map(|_| {
            use rand::Rng;
            let n_groups = rng.random_range(1..=4);
            let groups = (0..n_groups)
                .map(|_| {
                    let n = rng.random_range(1..=5);
                    random_intervals(&mut rng, n)
                })
                .collect();
            Instance { groups }
        })
        .collect()
}

fn ac4_oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let instances = random_instances(200);
    for (i, inst) in instances.iter().enumerate() {
        let sets: Vec<_> = inst.groups.iter().map(|g| build_t1(g).unwrap()).collect();
        for (g, set) in inst.groups.iter().zip(&sets) {
            ensure!(set.mf() == &t1_by_subsets(g), "instance {i}: type-1 mismatch for {g:?}");
        }
        let built = build_zgt2(&sets).unwrap();
        let mfs: Vec<StepFunction> = sets.iter().map(|s| s.mf().clone()).collect();
        for (j, expected) in zslices_by_subsets(&mfs).iter().enumerate() {
            ensure!(
                built.zslice(j + 1).unwrap().mf() == expected,
                "instance {i}: zslice {} mismatch",
                j + 1
            );
        }
    }
    within_time(start, Duration::from_secs(30))?;
    Ok(format!("200 instances equal in {:?}", start.elapsed()))
}

fn ac5_properties() -> Outcome {
    let instances = random_instances(200);
    let mut checked = 0usize;
    for (i, inst) in instances.iter().enumerate() {
        let sets: Vec<_> = inst.groups.iter().map(|g| build_t1(g).unwrap()).collect();
        for s in &sets {
            let g = gamma_t1(s, Mode::Exact).unwrap().gamma;
            ensure!((0.0..=1.0).contains(&g), "instance {i}: gamma_t1 {g}");
        }
        let model = build_zgt2(&sets).unwrap();
        let g = gamma_gt2(&model, Mode::Exact).unwrap().gamma;
        ensure!((0.0..=1.0).contains(&g), "instance {i}: gamma_gt2 {g}");
        for w in model.zslices().windows(2) {
            ensure!(
                w[1].mf().max_excess_over(w[0].mf()).is_none(),
                "instance {i}: zslices not nested"
            );
        }
        checked += 1;
    }

    let mut rng = rng(77);
    for (t, inst) in instances.iter().take(50).enumerate() {
        use rand::Rng;
        let s: f64 = rng.random_range(0.1..10.0);
        let c: f64 = rng.random_range(-100.0..100.0);
        let moved: Vec<Vec<Interval>> = inst
            .groups
            .iter()
            .map(|g| g.iter().map(|iv| iv.affine(s, c).unwrap()).collect())
            .collect();
        let a: Vec<_> = inst.groups.iter().map(|g| build_t1(g).unwrap()).collect();
        let b: Vec<_> = moved.iter().map(|g| build_t1(g).unwrap()).collect();
        for (x, y) in a.iter().zip(&b) {
            let d = (gamma_t1(x, Mode::Exact).unwrap().gamma - gamma_t1(y, Mode::Exact).unwrap().gamma).abs();
            ensure!(d < 1e-9, "transform {t}: gamma_t1 moved by {d}");
        }
        let d = (gamma_gt2(&build_zgt2(&a).unwrap(), Mode::Exact).unwrap().gamma
            - gamma_gt2(&build_zgt2(&b).unwrap(), Mode::Exact).unwrap().gamma)
            .abs();
        ensure!(d < 1e-9, "transform {t}: gamma_gt2 moved by {d}");
    }

    let mut fixtures: Vec<(String, StepFunction, usize)> = [
        ("T1", &T1[..]),
        ("N1", &N1[..]),
        ("N2", &N2[..]),
        ("M1", &M1[..]),
        ("M2", &M2[..]),
        ("M3", &M3[..]),
        ("split", &SPLIT[..]),
    ]
    .iter()
    .map(|(name, p)| (name.to_string(), t1(p).mf().clone(), p.len()))
    .collect();
    for (j, z) in gt2(&[&M1, &M2, &M3]).zslices().iter().enumerate() {
        fixtures.push((format!("M~ zslice {}", j + 1), z.mf().clone(), 3));
    }
    let steps = [0.5, 0.3, 0.25, 0.2, 0.1, 0.07, 0.05, 0.03, 0.01];
    let mut worst = 0.0f64;
    for (name, mf, n) in &fixtures {
        for k in 1..=*n {
            let alpha = k as f64 / *n as f64;
            let cuts = mf.alpha_cut(alpha).unwrap().len();
            let exact = mf.alpha_cut_length(alpha).unwrap();
            for &h in &steps {
                let approx = mf
                    .discretized_cut_length(alpha, &grid(SCALE.0, SCALE.1, h).unwrap())
                    .unwrap();
                let err = (exact - approx).abs();
                let bound = (cuts + 1) as f64 * h;
                ensure!(
                    err <= bound + 1e-12,
                    "{name} alpha {alpha:.3} step {h}: error {err} > {bound}"
                );
                worst = worst.max(err / bound);
            }
        }
    }
    Ok(format!(
        "{checked} instances in [0,1] and nested; 50 affine maps invariant; cut error <= (cuts+1)h (worst {:.0}% of bound)",
        worst * 100.0
    ))
}

fn ac6_statistics() -> Outcome {
    let symmetric: [(&str, Type1FuzzySet, f64); 4] = [
        ("box [2,5]", t1(&[(2.0, 5.0)]), 3.5),
        ("nested about 5", t1(&[(2.0, 8.0), (3.0, 7.0), (4.0, 6.0)]), 5.0),
        ("mirrored pair", t1(&[(1.0, 3.0), (7.0, 9.0), (4.0, 6.0)]), 5.0),
        (
            "M1 reflected about 4",
            t1(&[(2.0, 5.0), (3.0, 6.0), (2.5, 5.5), (3.5, 4.5)]),
            4.0,
        ),
    ];
    for (name, set, axis) in &symmetric {
        let c = centroid(set).unwrap();
        ensure!((c - axis).abs() < 1e-9, "{name}: centroid {c} != {axis}");
    }
    let mirror = |p: &[(f64, f64)]| -> Vec<(f64, f64)> { p.iter().map(|&(a, b)| (10.0 - b, 10.0 - a)).collect() };
    let m2_mirror = mirror(&M2);
    let sym_gt2 = gt2(&[&M2, &m2_mirror]);
    for z in sym_gt2.zslices() {
        let c = centroid(z).unwrap();
        ensure!((c - 5.0).abs() < 1e-9, "mirrored type-2 zslice centroid {c}");
    }

    let iv = |a: f64, b: f64| Interval::new(a, b).unwrap();
    let t1_expect: [Expected; 6] = [
        ("T1", &T1, iv(2.0, 6.0), 1.0),
        ("N1", &N1, iv(2.0, 5.5), 1.0),
        ("N2", &N2, iv(6.0, 10.0), 1.0),
        ("M1", &M1, iv(2.0, 6.0), 1.0),
        ("M2", &M2, iv(1.0, 6.0), 1.0),
        ("M3", &M3, iv(2.0, 7.0), 1.0),
    ];
    for (name, p, sup, h) in t1_expect {
        let set = t1(p);
        ensure!(
            support(&set).unwrap() == sup,
            "{name}: support {}",
            support(&set).unwrap()
        );
        ensure!(height(&set) == h, "{name}: height {}", height(&set));
    }
    let m = gt2(&[&M1, &M2, &M3]);
    let z_expect = [(iv(1.0, 7.0), 1.0), (iv(2.0, 6.0), 1.0), (iv(2.0, 6.0), 1.0)];
    for (j, (sup, h)) in z_expect.iter().enumerate() {
        let z = m.zslice(j + 1).unwrap();
        ensure!(support(z).unwrap() == *sup && height(z) == *h, "M~ zslice {}", j + 1);
    }
    let n = gt2(&[&N1, &N2]);
    ensure!(
        support(n.zslice(1).unwrap()).unwrap() == iv(2.0, 10.0),
        "N~ base support"
    );
    ensure!(
        support(n.zslice(2).unwrap()).is_err() && height(n.zslice(2).unwrap()) == 0.0,
        "N~ top zslice"
    );

    let data = ingest_csv(fixture("moderate.csv"), &IngestOptions::default())
        .unwrap()
        .dataset;
    let text = run_report(&data, &RunConfig::exact(scale())).unwrap();
    let report: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let schema_text =
        std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json"))
            .map_err(|e| e.to_string())?;
    let schema: serde_json::Value = serde_json::from_str(&schema_text).map_err(|e| e.to_string())?;
    let validator = jsonschema::validator_for(&schema).map_err(|e| e.to_string())?;
    let errors: Vec<String> = validator.iter_errors(&report).map(|e| e.to_string()).collect();
    ensure!(errors.is_empty(), "schema violations: {errors:?}");
    ensure!(report[0]["gamma_intergroup"].as_f64() == Some(0.7667), "report gamma");
    Ok("symmetric centroids, reference supports/heights, M-fixture report matches schema".into())
}

fn ac7_determinism() -> Outcome {
    let path = fixture("cases.csv");
    let run = |threads: &str| -> Result<Vec<u8>, String> {
        let o = Command::new(env!("CARGO_BIN_EXE_iaa"))
            .args(["--threads", threads, "report", path.to_str().unwrap()])
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(
            o.status.success(),
            "report failed: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        Ok(o.stdout)
    };
    let first = run("1")?;
    for threads in ["1", "2", "4", "8"] {
        ensure!(run(threads)? == first, "output differs with {threads} threads");
    }
    Ok(format!(
        "{} bytes identical across 5 runs (1, 1, 2, 4, 8 threads)",
        first.len()
    ))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("AC1 reference type-1 agreement ratios", ac1_type1_rows),
        ("AC2 total / null / moderate type-2 cases", ac2_gt2_cases),
        ("AC3 non-convex four-interval set", ac3_split),
        ("AC4 subset-enumeration oracle equivalence", ac4_oracle_equivalence),
        ("AC5 property suites", ac5_properties),
        ("AC6 statistics and report schema", ac6_statistics),
        ("AC7 end-to-end determinism", ac7_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all {} acceptance criteria passed", criteria.len());
}
