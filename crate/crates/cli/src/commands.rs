use std::collections::HashMap;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

use serde::Serialize;

use crate::output::{record, sample_header, sample_record};
use crate::{BenchArgs, Common, CountArgs, Failure, Method, SampleArgs, VerifyArgs};
use bicircular::counting::{
    anneal_run, configuration_weights, count_exact, enumerate_bases, exact_expected_resamples,
    median_of, telescope_run,
};
use bicircular::sampler::{sample_sign_blind, sample_gibbs};
use bicircular::stats::{chi_square, chi_square_uniform, Summary};
use bicircular::table::derive_seed;
use bicircular::{
    parse_edge_list, sample_basis, sample_lerw, sample_parallel, validate_bicircular_instance,
    Basis, Execution, GibbsParams, Graph, ResamplingTable, Variant,
};

const CHUNK: u64 = 4096;

fn io_failure(e: io::Error) -> Failure {
    Failure { code: 2, message: format!("output error: {e}") }
}

fn load(common: &Common) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(&common.graph).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {}: {e}", common.graph.display()),
    })?;
    let g = parse_edge_list(&text)?;
    validate_bicircular_instance(&g)?;
    Ok(g)
}

fn master_seed(common: &Common) -> u64 {
    common.seed.unwrap_or_else(rand::random)
}

/// Runs `job` with `workers` threads; results never depend on `workers`.
fn with_workers<T: Send>(workers: u64, job: impl FnOnce(Execution) -> T + Send) -> T {
    if workers <= 1 {
        return job(Execution::Sequential);
    }
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers as usize)
            .build()
            .expect("thread pool");
        pool.install(|| job(Execution::Parallel))
    }
    #[cfg(not(feature = "parallel"))]
    job(Execution::Sequential)
}

pub fn sample(args: &SampleArgs) -> Result<u8, Failure> {
    let g = load(&args.common)?;
    let params = GibbsParams::new(args.gamma2, args.gamma)?;
    // the default weights (0, 1/2) select the orientation rule
    let gibbs = (args.gamma2, args.gamma) != (0.0, 0.5);
    let seed = master_seed(&args.common);
    let format = args.common.format;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    sample_header(&mut out, format, gibbs).map_err(io_failure)?;
    let mut start = 0;
    while start < args.samples {
        let len = CHUNK.min(args.samples - start);
        let reports = with_workers(args.common.parallel, |exec| {
            exec.map(len as usize, |i| {
                let s = derive_seed(seed, &[start + i as u64]);
                if gibbs {
                    sample_gibbs(&g, params, s)
                } else {
                    sample_basis(&g, s)
                }
            })
        });
        for r in reports {
            sample_record(&mut out, format, &r?).map_err(io_failure)?;
        }
        start += len;
    }
    out.flush().map_err(io_failure)?;
    Ok(0)
}

pub fn count(args: &CountArgs) -> Result<u8, Failure> {
    let g = load(&args.common)?;
    let estimate = match args.method {
        Method::Exact => count_exact(&g)?,
        Method::Telescope | Method::Anneal => {
            let seed = master_seed(&args.common);
            with_workers(args.common.parallel, |exec| {
                median_of(args.median_of, seed, |s| match args.method {
                    Method::Telescope => telescope_run(&g, args.epsilon, s, exec).map(|r| r.estimate),
                    _ => anneal_run(&g, args.epsilon, s, exec).map(|r| r.estimate),
                })
            })?
        }
    };
    let mut out = io::stdout().lock();
    record(&mut out, args.common.format, &estimate, true).map_err(io_failure)?;
    Ok(0)
}

#[derive(Serialize)]
struct BenchSummary {
    n: usize,
    m: usize,
    trials: u64,
    seed: u64,
    resampled_mean: f64,
    resampled_std: f64,
    resampled_se: f64,
    steps_mean: f64,
    steps_std: f64,
    bound: u64,
}

pub fn bench(args: &BenchArgs) -> Result<u8, Failure> {
    let g = load(&args.common)?;
    let seed = master_seed(&args.common);
    let timer = Instant::now();
    let reports = with_workers(args.common.parallel, |exec| {
        exec.map(args.trials as usize, |i| sample_basis(&g, derive_seed(seed, &[i as u64])))
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let elapsed = timer.elapsed();
    let resampled = Summary::of(reports.iter().map(|r| r.resampled as f64));
    let steps = Summary::of(reports.iter().map(|r| r.steps as f64));
    let n = g.n() as u64;
    let summary = BenchSummary {
        n: g.n(),
        m: g.m(),
        trials: args.trials,
        seed,
        resampled_mean: resampled.mean,
        resampled_std: resampled.std_dev(),
        resampled_se: resampled.std_err(),
        steps_mean: steps.mean,
        steps_std: steps.std_dev(),
        bound: 2 * n * n - n,
    };
    record(&mut io::stdout().lock(), args.common.format, &summary, true).map_err(io_failure)?;
    eprintln!("elapsed {:.3}s ({:.1} us/sample)", elapsed.as_secs_f64(),
        elapsed.as_secs_f64() * 1e6 / args.trials.max(1) as f64);
    Ok(0)
}

#[derive(Serialize)]
struct Check {
    check: String,
    statistic: f64,
    threshold: f64,
    pass: bool,
}

fn uniformity(g: &Graph, samples: u64, seed: u64, biased: bool, exec: Execution) -> Result<Check, Failure> {
    let bases = enumerate_bases(g)?;
    let index: HashMap<&Basis, usize> = bases.iter().zip(0..).collect();
    let drawn = exec.map(samples as usize, |i| {
        let s = derive_seed(seed, &[i as u64]);
        let r = if biased { sample_sign_blind(g, s) } else { sample_basis(g, s) };
        r.ok().and_then(|r| r.basis().and_then(|b| index.get(b).copied()))
    });
    let mut counts = vec![0u64; bases.len()];
    let mut invalid = 0u64;
    for d in drawn {
        match d {
            Some(i) => counts[i] += 1,
            None => invalid += 1,
        }
    }
    let c = chi_square_uniform(&counts);
    Ok(Check {
        check: format!("uniformity over {} bases", bases.len()),
        statistic: c.statistic,
        threshold: c.critical,
        pass: invalid == 0 && c.passes(),
    })
}

fn gibbs(g: &Graph, params: GibbsParams, samples: u64, seed: u64, exec: Execution) -> Result<Check, Failure> {
    let weights = configuration_weights(g, params)?;
    let drawn = exec.map(samples as usize, |i| {
        sample_gibbs(g, params, derive_seed(seed, &[i as u64])).map(|r| r.arrows.enumeration_index(g))
    });
    let mut counts = vec![0u64; weights.len()];
    for d in drawn {
        counts[d?] += 1;
    }
    let c = chi_square(&counts, &weights);
    Ok(Check {
        check: format!("gibbs({}, {})", params.gamma2(), params.gamma()),
        statistic: c.statistic,
        threshold: c.critical,
        pass: c.passes(),
    })
}

fn resample_mean(g: &Graph, trials: u64, seed: u64, exec: Execution) -> Result<Check, Failure> {
    let exact = exact_expected_resamples(g)?;
    let runs = exec.map(trials as usize, |i| sample_basis(g, derive_seed(seed, &[i as u64])));
    let s = Summary::of(runs.into_iter().map(|r| r.map(|r| r.resampled as f64).unwrap_or(f64::NAN)));
    let z = if s.std_err() > 0.0 { (s.mean - exact).abs() / s.std_err() } else { (s.mean - exact).abs() * f64::INFINITY };
    let z = if z.is_nan() { 0.0 } else { z };
    Ok(Check { check: format!("mean resamples vs exact {exact:.4}"), statistic: z, threshold: 3.0, pass: z <= 3.0 })
}

fn order_invariance(g: &Graph, trials: u64, seed: u64, exec: Execution) -> Check {
    let mismatches = exec
        .map(trials as usize, |i| {
            let s = derive_seed(seed, &[i as u64]);
            let mut a = ResamplingTable::new(s, g.n());
            let mut b = ResamplingTable::new(s, g.n());
            let p = sample_parallel(g, &mut a, Variant::Orientation);
            let q = sample_lerw(g, &mut b, Variant::Orientation);
            match (p, q) {
                (Ok(p), Ok(q)) => p.outcome != q.outcome || p.resampled != q.resampled,
                _ => true,
            }
        })
        .into_iter()
        .filter(|&m| m)
        .count();
    Check {
        check: "parallel vs walk order invariance".into(),
        statistic: mismatches as f64,
        threshold: 0.0,
        pass: mismatches == 0,
    }
}

pub fn verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let g = load(&args.common)?;
    let seed = master_seed(&args.common);
    // guards first so an oversized instance exits 3 before any sampling
    enumerate_bases(&g)?;
    exact_expected_resamples(&g)?;
    let checks = with_workers(args.common.parallel, |exec| -> Result<Vec<Check>, Failure> {
        let mut checks = vec![uniformity(&g, args.samples, derive_seed(seed, &[0]), args.biased_stub, exec)?];
        for (k, (g2, gm)) in [(1.0, 1.0), (0.5, 1.0), (0.0, 0.5), (0.0, 1.0)].into_iter().enumerate() {
            let params = GibbsParams::new(g2, gm)?;
            checks.push(gibbs(&g, params, args.samples, derive_seed(seed, &[1, k as u64]), exec)?);
        }
        checks.push(resample_mean(&g, args.trials, derive_seed(seed, &[2]), exec)?);
        checks.push(order_invariance(&g, args.trials, derive_seed(seed, &[3]), exec));
        Ok(checks)
    })?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for (i, c) in checks.iter().enumerate() {
        record(&mut out, args.common.format, c, i == 0).map_err(io_failure)?;
    }
    Ok(if checks.iter().all(|c| c.pass) { 0 } else { 1 })
}
