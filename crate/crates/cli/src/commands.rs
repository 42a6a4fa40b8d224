use std::fmt::Write as _;

use anyhow::{bail, ensure, Context, Result};
use num_bigint::BigUint;
use rayon::prelude::*;

use baire::constructions::{
    base_alphabet, dense_family_point, disagreement_witness, sbt_scrambled_point, sft_scrambled_point, SeedConfig,
    SelectorStream,
};
use baire::stats::{
    bound_dense_lower, bound_dense_upper, bound_sbt_lower, bound_sbt_upper, bound_sft_lower, bound_sft_upper,
    checkpoint_verify, first_disagreement_runs, write_pair_reports_csv, write_trajectory_csv, xi_trajectory,
    CheckpointReport, VerifyParams,
};
use baire::{Error, PointStream, Schedule, ScrambledPoint, SubshiftSpec, Symbol, Word};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::output::Sink;
use crate::{load_basis, read_text, BoundsArgs, CheckArgs, DenseArgs, GenArgs, LemmaArgs, SbtArgs, SftArgs, Variant, XiArgs};

type Pair = (ScrambledPoint, ScrambledPoint);

fn binary_base(seed: u64, stream: u64, (low, high): (Symbol, Symbol)) -> PointStream {
    PointStream::random_binary(seed, stream, low, high)
}

fn safe_pair(spec: &SubshiftSpec) -> Result<(Symbol, Symbol)> {
    let k = spec.safe_symbol();
    Ok((k, k.checked_add(1)?))
}

fn parse_word(text: &str) -> Result<Word> {
    text.parse::<Word>().with_context(|| format!("parsing --word {text:?}"))
}

fn load_seed_config(path: &std::path::Path) -> Result<SeedConfig> {
    SeedConfig::parse(&read_text(path)?).with_context(|| format!("parsing seed config {}", path.display()))
}

fn f64_of(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

struct PairOutcome {
    pair: usize,
    reports: Vec<CheckpointReport>,
    warnings: Vec<String>,
    note: Option<String>,
}

/// Verifies one pair; a budget overrun is downgraded to a warning and the
/// checkpoints that fit are kept.
fn verify_pair(pair: usize, x: &ScrambledPoint, y: &ScrambledPoint, js: &[usize], params: &VerifyParams) -> Result<PairOutcome> {
    let mut warnings = Vec::new();
    let reports = match checkpoint_verify(x, y, js, params) {
        Ok(r) => r,
        Err(Error::BudgetExceeded {
            j,
            needed,
            budget,
            largest_feasible,
        }) => {
            warnings.push(format!(
                "pair {pair}: checkpoint j = {j} needs {needed} symbol reads, budget is {budget}; largest feasible j: {}",
                largest_feasible.map_or("none".into(), |j| j.to_string())
            ));
            match largest_feasible {
                Some(lf) => {
                    let kept: Vec<usize> = js.iter().copied().filter(|&j| j <= lf).collect();
                    checkpoint_verify(x, y, &kept, params)?
                }
                None => Vec::new(),
            }
        }
        Err(e) => return Err(e).with_context(|| format!("pair {pair}")),
    };
    Ok(PairOutcome {
        pair,
        reports,
        warnings,
        note: None,
    })
}

fn run_pairs(
    trials: usize,
    js: &[usize],
    params: &VerifyParams,
    make: impl Fn(u64) -> Result<Pair> + Sync,
    note: impl Fn(&Pair) -> Option<String> + Sync,
) -> Result<Vec<PairOutcome>> {
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let pair = make(i as u64).with_context(|| format!("building pair {i}"))?;
            let mut out = verify_pair(i, &pair.0, &pair.1, js, params)?;
            out.note = note(&pair);
            Ok(out)
        })
        .collect()
}

fn summarize(outcomes: &[PairOutcome]) -> (String, bool) {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>4}  {:>2}  {:<12}  {:>6}  {:>10}  {:>10}  ok",
        "pair", "j", "kind", "index", "ratio", "bound"
    );
    let (mut total, mut good) = (0usize, 0usize);
    for o in outcomes {
        for r in &o.reports {
            total += 1;
            good += r.satisfied as usize;
            let _ = writeln!(
                s,
                "{:>4}  {:>2}  {:<12}  {:>6}  {:>10.6}  {:>10.6}  {}",
                o.pair,
                r.j,
                r.kind.name(),
                r.index,
                f64_of(&r.ratio),
                f64_of(&r.bound),
                if r.satisfied { "yes" } else { "NO" }
            );
        }
        if let Some(n) = &o.note {
            let _ = writeln!(s, "pair {}: {n}", o.pair);
        }
    }
    let _ = writeln!(s, "{good}/{total} reports satisfied");
    (s, good == total)
}

fn finish(sink: &Sink, command: &str, rng_seed: u64, args: &impl std::fmt::Debug, outcomes: Vec<PairOutcome>) -> Result<bool> {
    for o in &outcomes {
        for w in &o.warnings {
            eprintln!("warning: {w}");
        }
    }
    let (summary, ok) = summarize(&outcomes);
    let rows: Vec<(usize, Vec<CheckpointReport>)> = outcomes.into_iter().map(|o| (o.pair, o.reports)).collect();
    sink.write(|w| write_pair_reports_csv(&rows, w))?;
    sink.meta(command, rng_seed, args)?;
    sink.summary(&summary);
    Ok(ok)
}

fn params(check: &CheckArgs, lower_window: u64) -> VerifyParams {
    VerifyParams {
        lower_window,
        budget: check.budget,
        engine: check.engine,
        mode: check.predicate,
        ..VerifyParams::default()
    }
}

pub fn verify_sft(args: &SftArgs) -> Result<bool> {
    let spec = load_basis(&args.basis)?;
    let word = parse_word(&args.word)?;
    let alphabet = safe_pair(&spec)?;
    let js = args.check.js(3, 6)?;
    let seed = args.common.rng_seed;
    let make = |i: u64| -> Result<Pair> {
        let x = sft_scrambled_point(&spec, &word, &binary_base(seed, 2 * i, alphabet))?;
        let y = sft_scrambled_point(&spec, &word, &binary_base(seed, 2 * i + 1, alphabet))?;
        Ok((x.into(), y.into()))
    };
    let outcomes = run_pairs(args.check.trials, &js, &params(&args.check, args.q), make, |_| None)?;
    finish(&Sink::new(args.common.out.as_ref()), "verify-sft", seed, args, outcomes)
}

pub fn verify_dense(args: &DenseArgs) -> Result<bool> {
    let spec = load_basis(&args.basis)?;
    let k = spec.safe_symbol();
    let (q, h) = (args.q.unwrap_or(args.p), args.h.unwrap_or(args.g));
    let ax = base_alphabet(k, args.g, args.p as u64)?;
    let ay = base_alphabet(k, h, q as u64)?;
    let js = args.check.js(3, 5)?;
    let seed = args.common.rng_seed;
    let make = |i: u64| -> Result<Pair> {
        let x = dense_family_point(&spec, args.p, args.g, &binary_base(seed, 2 * i, ax))?;
        let y = dense_family_point(&spec, q, h, &binary_base(seed, 2 * i + 1, ay))?;
        Ok((x.into(), y.into()))
    };
    let outcomes = run_pairs(args.check.trials, &js, &params(&args.check, args.window), make, |_| None)?;
    finish(&Sink::new(args.common.out.as_ref()), "verify-dense", seed, args, outcomes)
}

pub fn verify_sbt(args: &SbtArgs) -> Result<bool> {
    let spec = load_basis(&args.basis)?;
    let config = load_seed_config(&args.seed_config)?;
    let seed = config.seed(&spec).context("validating the seed")?;
    let rng = args.common.rng_seed;
    let fixed = match (&config.alpha, &config.beta) {
        (Some(a), Some(b)) => {
            if args.check.trials > 1 {
                eprintln!("warning: seed config fixes alpha and beta; running a single pair");
            }
            Some((a.build(0)?, b.build(1)?))
        }
        (None, None) => None,
        _ => bail!("seed config must give both alpha and beta, or neither"),
    };
    let trials = if fixed.is_some() { 1 } else { args.check.trials };
    let js = args.check.js(1, 2)?;
    let make = |i: u64| -> Result<Pair> {
        let (a, b) = match &fixed {
            Some(pair) => pair.clone(),
            None => (SelectorStream::random(rng, 2 * i), SelectorStream::random(rng, 2 * i + 1)),
        };
        Ok((sbt_scrambled_point(&seed, &a).into(), sbt_scrambled_point(&seed, &b).into()))
    };
    let note = |(x, y): &Pair| {
        let (ScrambledPoint::Sbt(a), ScrambledPoint::Sbt(b)) = (x, y) else {
            return None;
        };
        let predicted = a.predicted_witness(b, 1 << 16)?;
        let found = first_disagreement_runs(a.stream(), b.stream(), &(&predicted + 1u32), u64::MAX).ok()?;
        Some(match found {
            Some(f) => format!("injectivity witness {f} (predicted {predicted})"),
            None => format!("no disagreement up to predicted witness {predicted}"),
        })
    };
    let outcomes = run_pairs(trials, &js, &params(&args.check, args.window), make, note)?;
    finish(&Sink::new(args.common.out.as_ref()), "verify-sbt", rng, args, outcomes)
}

pub fn gen(args: &GenArgs) -> Result<bool> {
    let seed = args.common.rng_seed;
    let spec = match &args.basis {
        Some(p) => load_basis(p)?,
        None => SubshiftSpec::full_shift(),
    };
    let stream = match args.variant {
        Variant::Sft => {
            let word = parse_word(&args.word)?;
            let base = binary_base(seed, 0, safe_pair(&spec)?);
            sft_scrambled_point(&spec, &word, &base)?.stream().clone()
        }
        Variant::Dense => {
            let ab = base_alphabet(spec.safe_symbol(), args.g, args.p as u64)?;
            dense_family_point(&spec, args.p, args.g, &binary_base(seed, 0, ab))?.stream().clone()
        }
        Variant::Sbt => {
            let path = args.seed_config.as_ref().context("--seed-config is required for sbt")?;
            let config = load_seed_config(path)?;
            let sbt = config.seed(&spec).context("validating the seed")?;
            let alpha = match &config.alpha {
                Some(a) => a.build(0)?,
                None => SelectorStream::random(seed, 0),
            };
            sbt_scrambled_point(&sbt, &alpha).stream().clone()
        }
    };
    let sink = Sink::new(args.common.out.as_ref());
    sink.write(|w| {
        writeln!(w, "# {:?} point, {} symbols", args.variant, args.length)?;
        stream.write_prefix_dump(args.length, w)
    })?;
    sink.meta("gen", seed, args)?;
    Ok(true)
}

pub fn xi(args: &XiArgs) -> Result<bool> {
    let load = |p: &std::path::Path| -> Result<PointStream> {
        PointStream::from_prefix_dump(&read_text(p)?).with_context(|| format!("parsing prefix dump {}", p.display()))
    };
    let (x, y) = (load(&args.x)?, load(&args.y)?);
    ensure!(args.points >= 1 && args.length >= 1, "--length and --points must be positive");
    let needed = args.length.saturating_add(args.window);
    if needed > args.budget {
        bail!("trajectory needs {needed} symbol reads per stream, budget is {}", args.budget);
    }
    let mut ns: Vec<u64> = (1..=args.points)
        .map(|k| ((args.length as u128 * k as u128).div_ceil(args.points as u128)) as u64)
        .collect();
    ns.dedup();
    let points = xi_trajectory(&x, &y, args.window, args.predicate, &ns)?;
    let sink = Sink::new(args.common.out.as_ref());
    sink.write(|w| write_trajectory_csv(&points, w))?;
    sink.meta("xi", args.common.rng_seed, args)?;
    if let Some(last) = points.last() {
        sink.summary(&format!("ξ / n at n = {}: {} ≈ {:.6}\n", last.n, last.ratio, f64_of(&last.ratio)));
    }
    Ok(true)
}

pub fn lemmas(args: &LemmaArgs) -> Result<bool> {
    ensure!(args.g != args.h, "--g and --h must differ");
    ensure!(args.p != args.q, "--p and --q must differ");
    let spec = match &args.basis {
        Some(p) => load_basis(p)?,
        None => {
            // the basis {0 (k-1)} has safe symbol k; k = 2 is the basis {0 1}
            ensure!(args.k >= 1, "--k must be at least 1");
            SubshiftSpec::from_words([Word::from(&[0, args.k - 1][..])])?
        }
    };
    let k = spec.safe_symbol();
    let seed = args.common.rng_seed;
    // (name, (p, g), (q, h)) per lemma
    let cases = [("g_ne_h", (args.p, args.g), (args.p, args.h)), ("p_ne_q", (args.p, args.g), (args.q, args.g))];
    let mut rows: Vec<(&str, usize, Option<u64>)> = Vec::new();
    for (li, (name, (p1, g1), (p2, g2))) in cases.into_iter().enumerate() {
        let found: Vec<Result<Option<u64>>> = (0..args.trials)
            .into_par_iter()
            .map(|i| {
                let stream = (li * args.trials + i) as u64 * 2;
                let point = |p: usize, g: u64, s: u64| -> Result<PointStream> {
                    let base = binary_base(seed, s, base_alphabet(k, g, p as u64)?);
                    Ok(dense_family_point(&spec, p, g, &base)?.stream().clone())
                };
                let x = point(p1, g1, stream)?;
                let y = point(p2, g2, stream + 1)?;
                Ok(disagreement_witness(&x, &y, args.cap))
            })
            .collect();
        for (i, w) in found.into_iter().enumerate() {
            rows.push((name, i, w.with_context(|| format!("{name} trial {i}"))?));
        }
    }
    let sink = Sink::new(args.common.out.as_ref());
    sink.write(|w| {
        writeln!(w, "lemma,trial,witness")?;
        for (name, i, wit) in &rows {
            writeln!(w, "{name},{i},{}", wit.map_or(String::new(), |v| v.to_string()))?;
        }
        Ok(())
    })?;
    sink.meta("lemmas", seed, args)?;
    let mut summary = String::new();
    let mut ok = true;
    for (name, ..) in cases {
        let hits = rows.iter().filter(|r| r.0 == name && r.2.is_some()).count();
        ok &= hits == args.trials;
        let _ = writeln!(summary, "{name}: {hits}/{} witnesses found (cap {})", args.trials, args.cap);
    }
    sink.summary(&summary);
    Ok(ok)
}

pub fn bounds(args: &BoundsArgs) -> Result<bool> {
    ensure!(args.max_j >= 1, "--max-j must be at least 1");
    let rows: Vec<(usize, BigUint, BigRational, BigRational)> = match args.variant {
        Variant::Sft => {
            let w_len = parse_word(&args.word)?.len() as u64;
            let s = Schedule::sft_cylinder(w_len);
            (1..=args.max_j)
                .map(|j| Ok((j, s.m(j), bound_sft_lower(j, args.window, &s)?, bound_sft_upper(j, w_len, &s)?)))
                .collect::<baire::Result<_>>()?
        }
        Variant::Dense => {
            let q = args.q.unwrap_or(args.p);
            let (big, a) = (args.p.max(q) as u64, args.p.abs_diff(q) as u64);
            let s = Schedule::dense();
            (1..=args.max_j)
                .map(|j| {
                    Ok((
                        j,
                        s.m(j) + big + 1u32,
                        bound_dense_lower(j, args.window, big, a, &s)?,
                        bound_dense_upper(j, big, a, &s)?,
                    ))
                })
                .collect::<baire::Result<_>>()?
        }
        Variant::Sbt => {
            let s = Schedule::sbt(args.block_len)?;
            (1..=args.max_j)
                .map(|j| Ok((j, s.m(j), bound_sbt_lower(j, args.window, &s)?, bound_sbt_upper(j, &s)?)))
                .collect::<baire::Result<_>>()?
        }
    };
    let sink = Sink::new(args.common.out.as_ref());
    sink.write(|w| {
        writeln!(w, "j,n,lower_num,lower_den,lower_float64,upper_num,upper_den,upper_float64")?;
        for (j, n, lo, up) in &rows {
            writeln!(
                w,
                "{j},{n},{},{},{},{},{},{}",
                lo.numer(),
                lo.denom(),
                f64_of(lo),
                up.numer(),
                up.denom(),
                f64_of(up)
            )?;
        }
        Ok(())
    })?;
    sink.meta("bounds", args.common.rng_seed, args)?;
    Ok(true)
}
