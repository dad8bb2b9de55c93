use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use pbc_dbscan::datagen::{
    generate_blobs, generate_uniform, preset, random_instance, BlobSpec, PRESET_NAMES,
};
use pbc_dbscan::scaling::{fit_power_law, median};
use pbc_dbscan::{
    cluster_periodic, compare_clusterings, dbscan_bruteforce, dbscan_periodic, DbscanParams, Domain, PointSet,
};

use crate::boundary::{describe, BoundaryFlags};
use crate::error::{CliError, Result};
use crate::io::{create_output, read_points, write_labels, write_points};
use crate::{BenchArgs, ClusterArgs, GenerateArgs, VerifyArgs};

/// Version tag of the `cluster` summary line.
pub const SUMMARY_VERSION: &str = "v1";

const VERIFY_WARN_POINTS: usize = 5_000;

fn load(path: &Path, flags: &BoundaryFlags) -> Result<(PointSet, Domain)> {
    let (dim, coords) = read_points(path)?;
    let dim = dim.or(flags.explicit_dim()).unwrap_or(1);
    let domain = flags.domain(dim)?;
    Ok((PointSet::new(dim, coords)?, domain))
}

fn params(eps: f64, min_points: usize, domain: &Domain) -> Result<DbscanParams> {
    let p = DbscanParams::new(eps, min_points)?;
    domain.check_radius(eps)?;
    Ok(p)
}

fn write_to(
    path: Option<&Path>,
    what: &str,
    f: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<()> {
    let mut out = create_output(path)?;
    f(&mut out).map_err(|e| CliError::io(format!("writing {what}"), e))
}

pub fn cluster(args: ClusterArgs) -> Result<ExitCode> {
    let flags = BoundaryFlags::from(args.boundaries);
    let (points, domain) = load(&args.input, &flags)?;
    let params = params(args.eps, args.min_points, &domain)?;

    let start = Instant::now();
    let run = cluster_periodic(&points, &domain, &params)?;
    let seconds = start.elapsed().as_secs_f64();

    let to_stdout = args.output.as_deref().map_or(true, |p| p == Path::new("-"));
    write_to(args.output.as_deref(), "labels", |out| {
        write_labels(out, &run.labels)
    })?;

    let summary = format!(
        "pbc-dbscan-summary {SUMMARY_VERSION} n={} dim={} clusters={} noise={} padded={} seconds={seconds:.6}",
        points.len(),
        points.dim(),
        run.labels.n_clusters(),
        run.labels.n_noise(),
        run.n_padded,
    );
    if to_stdout {
        eprintln!("{summary}");
    } else {
        println!("{summary}");
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(serde::Deserialize)]
struct BlobFile {
    blobs: Vec<BlobSpec>,
}

pub fn generate(args: GenerateArgs) -> Result<ExitCode> {
    if args.list {
        for name in PRESET_NAMES {
            let p = preset(name).expect("listed preset exists");
            println!("{name}\t{}", p.description);
        }
        return Ok(ExitCode::SUCCESS);
    }

    let (points, domain, hint) = match (&args.preset, &args.blobs) {
        (Some(name), _) => {
            let p = preset(name).ok_or_else(|| {
                CliError::usage(format!(
                    "unknown preset {name:?}; available: {}",
                    PRESET_NAMES.join(", ")
                ))
            })?;
            let points = p.generate_with_seed(args.seed.unwrap_or(p.seed))?;
            let hint = format!("--eps {} --min-points {}", p.params.epsilon, p.params.min_points);
            (points, p.domain, hint)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::io(format!("cannot read {}", path.display()), e))?;
            let file: BlobFile = serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            let dim = file
                .blobs
                .first()
                .map(|b| b.center.len())
                .or(BoundaryFlags::from(args.boundaries.clone()).explicit_dim())
                .ok_or_else(|| CliError::usage("blob file has no blobs and no --dim flags were given"))?;
            let domain = BoundaryFlags::from(args.boundaries).domain(dim)?;
            let points = generate_blobs(&file.blobs, &domain, args.seed.unwrap_or(0))?;
            (points, domain, String::new())
        }
        (None, None) => {
            return Err(CliError::usage(format!(
                "give --preset NAME or --blobs FILE; presets: {}",
                PRESET_NAMES.join(", ")
            )))
        }
    };

    write_to(args.output.as_deref(), "points", |out| write_points(out, &points))?;
    eprintln!(
        "generated n={} dim={} {} {hint}",
        points.len(),
        points.dim(),
        describe(&domain)
    );
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: VerifyArgs) -> Result<ExitCode> {
    if let Some(count) = args.sweep {
        let mut failures = 0u64;
        for seed in args.seed..args.seed + count {
            let inst = random_instance(seed);
            let fast = dbscan_periodic(&inst.points, &inst.domain, &inst.params)?;
            let slow = dbscan_bruteforce(&inst.points, &inst.domain, &inst.params)?;
            let cmp = compare_clusterings(&fast, &slow, &inst.points, &inst.domain, &inst.params)?;
            if !cmp.equivalent() {
                failures += 1;
                println!("seed {seed}: not equivalent\n{cmp}");
            }
        }
        println!("sweep: {}/{count} equivalent", count - failures);
        return Ok(if failures == 0 {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        });
    }

    let input = args
        .input
        .as_deref()
        .expect("clap requires --input without --sweep");
    let flags = BoundaryFlags::from(args.boundaries);
    let (points, domain) = load(input, &flags)?;
    let eps = args.eps.expect("clap requires --eps without --sweep");
    let params = params(eps, args.min_points, &domain)?;
    let oracle_params = params_or(args.oracle_eps, args.min_points, &domain, params)?;
    if points.len() > VERIFY_WARN_POINTS {
        eprintln!(
            "warning: {} points; the reference is quadratic and may be slow",
            points.len()
        );
    }

    let fast = dbscan_periodic(&points, &domain, &params)?;
    let slow = dbscan_bruteforce(&points, &domain, &oracle_params)?;
    let cmp = compare_clusterings(&fast, &slow, &points, &domain, &params)?;
    if domain.is_all_open() {
        let exact = fast == pbc_dbscan::dbscan(&points, &params)?;
        println!("open-domain reduction exact: {exact}");
        if !exact {
            return Ok(ExitCode::from(1));
        }
    }
    println!("{cmp}");
    Ok(if cmp.equivalent() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn params_or(
    eps: Option<f64>,
    min_points: usize,
    domain: &Domain,
    default: DbscanParams,
) -> Result<DbscanParams> {
    match eps {
        Some(e) => params(e, min_points, domain),
        None => Ok(default),
    }
}

pub fn bench(args: BenchArgs) -> Result<ExitCode> {
    if args.sizes.is_empty() {
        return Err(CliError::usage("--sizes needs at least one value"));
    }
    if args.sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::usage("--sizes must be strictly ascending"));
    }
    if args.repetitions == 0 {
        return Err(CliError::usage("--repetitions must be at least 1"));
    }
    let domain = Domain::periodic(args.dims, 0.0, 1.0)?;
    let params = params(args.eps, args.min_points, &domain)?;

    let mut rows = Vec::with_capacity(args.sizes.len());
    for &n in &args.sizes {
        let points = generate_uniform(n, &domain, args.seed)?;
        let mut times = Vec::with_capacity(args.repetitions);
        let mut padded = 0;
        for _ in 0..args.repetitions {
            let start = Instant::now();
            let run = cluster_periodic(&points, &domain, &params)?;
            times.push(start.elapsed().as_secs_f64());
            padded = run.n_padded;
        }
        let seconds = median(&mut times).expect("at least one repetition");
        let fraction = if n == 0 { 0.0 } else { padded as f64 / n as f64 };
        rows.push((n, seconds, fraction));
    }

    write_to(args.output.as_deref(), "benchmark table", |out| {
        writeln!(out, "n,seconds,padded_fraction")?;
        for (n, s, f) in &rows {
            writeln!(out, "{n},{s:.6},{f:.6}")?;
        }
        out.flush()
    })?;

    let samples: Vec<(usize, f64)> = rows.iter().map(|&(n, s, _)| (n, s)).collect();
    match fit_power_law(&samples) {
        Some(k) => eprintln!("fitted_exponent={k:.4}"),
        None => eprintln!("fitted_exponent=none"),
    }
    Ok(ExitCode::SUCCESS)
}
