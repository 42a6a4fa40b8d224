//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines reach the terminal even when
//! everything passes. Exits nonzero if any criterion fails.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use baire::constructions::{
    base_alphabet, dense_family_point, disagreement_witness, sbt_scrambled_point, sbt_seed, sft_scrambled_point,
    SelectorStream,
};
use baire::hat;
use baire::stats::{
    checkpoint_verify, first_disagreement_runs, xi_count, xi_count_runs, CheckpointKind, CheckpointReport, VerifyParams,
    XiQuery,
};
use baire::{Lcp, PointStream, ScrambledPoint, SubshiftSpec, Symbol, Word};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn golden() -> SubshiftSpec {
    SubshiftSpec::from_words([Word::from(&[0u64, 1][..])]).unwrap()
}

fn w(v: &[u64]) -> Word {
    Word::from(v)
}

fn per(v: &[u64]) -> PointStream {
    PointStream::periodic(&w(v)).unwrap()
}

fn random_stream(rng: &mut StdRng) -> PointStream {
    match rng.random_range(0..4) {
        0 => PointStream::constant(rng.random_range(0u64..3)),
        1 => {
            let len = rng.random_range(1..9);
            per(&(0..len).map(|_| rng.random_range(0u64..3)).collect::<Vec<_>>())
        }
        2 => {
            let pre: Vec<u64> = (0..rng.random_range(0..12)).map(|_| rng.random_range(0u64..3)).collect();
            let cyc: Vec<u64> = (0..rng.random_range(1..6)).map(|_| rng.random_range(0u64..3)).collect();
            PointStream::eventually_periodic(&w(&pre), &w(&cyc), baire::StreamKind::Periodic).unwrap()
        }
        _ => PointStream::random_binary(rng.random(), rng.random_range(0..8), Symbol(0), Symbol(1)),
    }
}

/// Double loop over the materialized prefix.
fn oracle(x: &[Symbol], y: &[Symbol], t: usize, n: usize) -> u64 {
    (0..n).filter(|&i| (i..i + t).all(|k| x[k] == y[k])).count() as u64
}

fn criterion_1() -> Verdict {
    let mut rng = StdRng::seed_from_u64(1);
    let mut mismatches = 0;
    for _ in 0..500 {
        let (x, y) = (random_stream(&mut rng), random_stream(&mut rng));
        let n = rng.random_range(1..=1000usize);
        let t = rng.random_range(0..=8usize);
        let expect = BigUint::from(oracle(&x.prefix(n + t), &y.prefix(n + t), t, n));
        let q = XiQuery::new(t as u64, n);
        if xi_count(&x, &y, &q) != expect || xi_count_runs(&x, &y, &q, u64::MAX).unwrap().count != expect {
            mismatches += 1;
        }
    }
    verdict(mismatches == 0, format!("500 cases, {mismatches} mismatches (streaming and runs engines)"))
}

fn sft_point(base: &PointStream) -> baire::constructions::SftPoint {
    sft_scrambled_point(&golden(), &w(&[0]), base).unwrap()
}

fn criterion_2() -> Verdict {
    let spec = golden();
    let mut failures = 0;
    let mut m5 = BigUint::default();
    for i in 0..50 {
        let x = sft_point(&PointStream::random_binary(2, i, Symbol(2), Symbol(3)));
        m5 = x.schedule().m(5);
        let n: u64 = (&m5).try_into().unwrap();
        if !spec.prefix_in_shift(x.stream(), n) {
            failures += 1;
        }
    }
    verdict(failures == 0, format!("50 bases, prefixes of length m_5 = {m5}, {failures} outside the shift"))
}

fn sft_reports() -> Vec<Vec<CheckpointReport>> {
    let params = VerifyParams::default();
    (0..10)
        .map(|i| {
            let x = sft_point(&PointStream::random_binary(3, 2 * i, Symbol(2), Symbol(3)));
            let y = sft_point(&PointStream::random_binary(3, 2 * i + 1, Symbol(2), Symbol(3)));
            checkpoint_verify(&x.into(), &y.into(), &[3, 4, 5, 6], &params).unwrap()
        })
        .collect()
}

fn to_f64(r: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap()
}

fn sft_checks(reports: &[Vec<CheckpointReport>], kind: CheckpointKind, limit: f64) -> Verdict {
    let mut bad = 0;
    let mut extreme_ok = true;
    let mut worst: f64 = if kind == CheckpointKind::LowerAtNu { 1.0 } else { 0.0 };
    for pair in reports {
        for r in pair.iter().filter(|r| r.kind == kind) {
            bad += !r.satisfied as usize;
            if r.j == 6 {
                let v = to_f64(&r.ratio);
                let ok = match kind {
                    CheckpointKind::LowerAtNu => v > limit && to_f64(&r.bound) > limit,
                    CheckpointKind::UpperAtMu => v < limit,
                };
                extreme_ok &= ok;
                worst = if kind == CheckpointKind::LowerAtNu { worst.min(v) } else { worst.max(v) };
            }
        }
    }
    verdict(
        bad == 0 && extreme_ok,
        format!("10 pairs × j ∈ {{3..6}}: {bad} violated; worst ratio at j = 6: {worst:.3e} (limit {limit})"),
    )
}

fn criterion_5() -> Verdict {
    let spec = golden();
    let k = spec.safe_symbol();
    let configs: Vec<(usize, u64)> = (1..=3).flat_map(|p| (0..3).map(move |g| (p, g))).collect();
    let point = |p: usize, g: u64, stream: u64| {
        let ab = base_alphabet(k, g, p as u64).unwrap();
        dense_family_point(&spec, p, g, &PointStream::random_binary(5, stream, ab.0, ab.1)).unwrap()
    };

    // (a) prefixes
    let mut bad_a = 0;
    for (i, &(p, g)) in configs.iter().enumerate() {
        let x = point(p, g, i as u64);
        let prefix = x.stream().prefix(p + 1);
        if prefix.subword(0, p) != spec.allowed_word(p, g) || prefix[p] != k {
            bad_a += 1;
        }
    }

    // (b) density against periodic points of the shift
    let corpus: Vec<PointStream> = [&[0u64][..], &[1], &[1, 0, 2], &[2, 0, 3], &[1, 1, 0, 3], &[4, 0, 0, 2], &[3]]
        .iter()
        .map(|c| per(c))
        .collect();
    let mut bad_b = 0;
    let mut checked_b = 0;
    for (zi, z) in corpus.iter().enumerate() {
        assert!(spec.prefix_in_shift(z, 64));
        for p in 1..=3usize {
            let g = spec.allowed_word_index(&z.prefix(p)).unwrap();
            let member = point(p, g, 100 + zi as u64);
            checked_b += 1;
            match member.stream().lcp_length(z, 1 << 12) {
                Lcp::DiffersAt(i) if (i as usize) < p => bad_b += 1,
                _ => {}
            }
        }
    }

    // (c) checkpoints across mixed pairs
    let params = VerifyParams::default();
    let mut bad_c = 0;
    let mut reports = 0;
    let mut stream = 1000;
    for (i, &(p, g)) in configs.iter().enumerate() {
        for &(q, h) in &configs[i..] {
            let x: ScrambledPoint = point(p, g, stream).into();
            let y: ScrambledPoint = point(q, h, stream + 1).into();
            stream += 2;
            for r in checkpoint_verify(&x, &y, &[3, 4, 5], &params).unwrap() {
                reports += 1;
                bad_c += !r.satisfied as usize;
            }
        }
    }
    verdict(
        bad_a + bad_b + bad_c == 0,
        format!(
            "(a) {} configs, {bad_a} bad prefixes; (b) {checked_b} members, {bad_b} farther than 2^-p; \
             (c) {reports} reports over 45 pairs, {bad_c} violated",
            configs.len()
        ),
    )
}

fn criterion_6() -> Verdict {
    let spec = golden();
    let k = spec.safe_symbol();
    let point = |p: usize, g: u64, stream: u64| {
        let ab = base_alphabet(k, g, p as u64).unwrap();
        dense_family_point(&spec, p, g, &PointStream::random_binary(6, stream, ab.0, ab.1))
            .unwrap()
            .stream()
            .clone()
    };
    let mut found = [0; 2];
    for i in 0..1000u64 {
        if disagreement_witness(&point(1, 0, 2 * i), &point(1, 1, 2 * i + 1), 1 << 20).is_some() {
            found[0] += 1;
        }
        if disagreement_witness(&point(1, 0, 5000 + 2 * i), &point(2, 0, 5001 + 2 * i), 1 << 20).is_some() {
            found[1] += 1;
        }
    }
    verdict(found == [1000, 1000], format!("g ≠ h: {}/1000, p ≠ q: {}/1000", found[0], found[1]))
}

fn criterion_7() -> Verdict {
    let spec = SubshiftSpec::full_shift().with_gluing_constant(1);
    let seed = match sbt_seed(&spec, &per(&[0, 1]), &per(&[0, 1, 2]), &per(&[0, 1, 2, 3, 4])) {
        Ok(s) => s,
        Err(e) => return verdict(false, format!("seed rejected: {e}")),
    };
    let derived = seed.a().symbols() == w(&[0, 1]).symbols()
        && seed.block_len() == 30
        && seed.multipliers() == (15, 5, 3)
        && seed.k() == 1;
    let (i0, i1) = (seed.block(0), seed.block(1));
    let theta = (0..30).find(|&i| i0[i] != i1[i]);
    let theta_ok = theta == Some(seed.theta());

    let params = VerifyParams {
        lower_window: 4,
        ..VerifyParams::default()
    };
    let (mut witnesses, mut bad) = (0, 0);
    for i in 0..10 {
        let a = sbt_scrambled_point(&seed, &SelectorStream::random(7, 2 * i));
        let b = sbt_scrambled_point(&seed, &SelectorStream::random(7, 2 * i + 1));
        if let Some(pred) = a.predicted_witness(&b, 1 << 16) {
            let found = first_disagreement_runs(a.stream(), b.stream(), &(&pred + 1u32), u64::MAX).unwrap();
            witnesses += (found == Some(pred)) as usize;
        }
        for r in checkpoint_verify(&a.into(), &b.into(), &[1, 2], &params).unwrap() {
            bad += !r.satisfied as usize;
        }
    }
    verdict(
        derived && theta_ok && witnesses == 10 && bad == 0,
        format!(
            "a = 0 1, M = 30, (A, B, C) = (15, 5, 3): {derived}; θ = {theta:?}; \
             {witnesses}/10 witnesses; 40 checkpoint reports, {bad} violated"
        ),
    )
}

fn criterion_8() -> Verdict {
    let mut found = 0;
    let mut max_cap = BigUint::default();
    for i in 0..1000u64 {
        let bx = PointStream::random_binary(8, 2 * i, Symbol(2), Symbol(3));
        let by = PointStream::random_binary(8, 2 * i + 1, Symbol(2), Symbol(3));
        let Some(first) = disagreement_witness(&bx, &by, 1 << 16) else {
            continue;
        };
        let (x, y) = (sft_point(&bx), sft_point(&by));
        // base index `first` first enters the hat at this position; the
        // points must differ by the end of that segment
        let h = hat::block_start(first) + first;
        let cap = x.schedule().m(h as usize);
        if first_disagreement_runs(x.stream(), y.stream(), &cap, u64::MAX).unwrap().is_some() {
            found += 1;
        }
        max_cap = max_cap.max(cap);
    }
    verdict(found == 1000, format!("{found}/1000 pairs separated; largest cap {} digits", max_cap.to_string().len()))
}

fn criterion_9() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("basis.txt"), "0 1\n").unwrap();
    std::fs::write(dir.path().join("full.txt"), "N 1\n").unwrap();
    std::fs::write(dir.path().join("seed.txt"), "z 0 1\nx 0 1 2\ny 0 1 2 3 4\n").unwrap();
    let runs: [&[&str]; 3] = [
        &["verify-sft", "--basis", "basis.txt", "--trials", "5", "--rng-seed", "42"],
        &["verify-dense", "--basis", "basis.txt", "--p", "1", "--q", "3", "--h", "2", "--trials", "5", "--rng-seed", "42"],
        &["verify-sbt", "--basis", "full.txt", "--seed-config", "seed.txt", "--trials", "5", "--rng-seed", "42"],
    ];
    let mut identical = 0;
    for args in runs {
        let outputs: Vec<Vec<u8>> = ["a.csv", "b.csv"]
            .iter()
            .map(|out| {
                let status = Command::new(env!("CARGO_BIN_EXE_baire"))
                    .current_dir(dir.path())
                    .args(args)
                    .args(["--out", out])
                    .output()
                    .unwrap();
                assert!(status.status.success());
                std::fs::read(dir.path().join(out)).unwrap()
            })
            .collect();
        identical += (outputs[0] == outputs[1] && !outputs[0].is_empty()) as usize;
    }
    verdict(identical == 3, format!("{identical}/3 verify commands byte-identical across two runs"))
}

fn main() {
    let started = Instant::now();
    let mut failed = Vec::new();
    let mut report = |id: &str, limit: Duration, run: &dyn Fn() -> Verdict| {
        let t = Instant::now();
        let v = run();
        let took = t.elapsed();
        let pass = v.pass && took <= limit;
        let line = format!(
            "criterion {id}: {} — {} [{:.2}s, limit {}s]\n",
            if pass { "PASS" } else { "FAIL" },
            v.detail,
            took.as_secs_f64(),
            limit.as_secs()
        );
        let _ = std::io::stdout().write_all(line.as_bytes());
        if !pass {
            failed.push(id.to_string());
        }
    };
    let sft = std::cell::OnceCell::new();
    let sft_reports = || sft.get_or_init(sft_reports).clone();

    report("1 (ξ oracle equivalence)", Duration::from_secs(10), &criterion_1);
    report("2 (SFT containment)", Duration::from_secs(10), &criterion_2);
    report("3 (SFT lower checkpoints)", Duration::from_secs(600), &|| {
        sft_checks(&sft_reports(), CheckpointKind::LowerAtNu, 0.95)
    });
    report("4 (SFT upper checkpoints)", Duration::from_secs(600), &|| {
        sft_checks(&sft_reports(), CheckpointKind::UpperAtMu, 0.05)
    });
    report("5 (dense family)", Duration::from_secs(600), &criterion_5);
    report("6 (distinctness lemmas)", Duration::from_secs(5), &criterion_6);
    report("7 (SBT pipeline)", Duration::from_secs(600), &criterion_7);
    report("8 (SFT injectivity)", Duration::from_secs(30), &criterion_8);
    report("9 (reproducibility)", Duration::from_secs(120), &criterion_9);

    println!(
        "acceptance: {} of 9 criteria passed in {:.1}s",
        9 - failed.len(),
        started.elapsed().as_secs_f64()
    );
    if !failed.is_empty() {
        eprintln!("failed: {}", failed.join(", "));
        std::process::exit(1);
    }
}
