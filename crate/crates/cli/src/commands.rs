use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use mobm::algorithms::{
    run_mobm_pd, run_mobvc, run_obvc, run_random_arrival_greedy, Algorithm, Preferences, RunTrace,
};
use mobm::instances::{self, ArrivalModel, Instance};
use mobm::verify::{
    audit_charging, audit_greedy, offline_opt, verify_random_arrival_lemmas, verify_trace,
    AuditReport, OPT_LIMIT,
};
use rayon::prelude::*;

use crate::fmt::sig;
use crate::{
    fspec, ArrivalKind, AuditArgs, CheckArgs, GenerateKind, RunArgs, SuiteKind, SweepArgs,
};

pub const CSV_HEADER: &str = "algorithm,instance,seed,primal,dual,opt,ratio,ms";
const DIGITS: usize = 12;

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    Instance::load(path).with_context(|| format!("loading instance {}", path.display()))
}

fn load_trace(path: &Path) -> Result<RunTrace> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    RunTrace::from_json(&text).with_context(|| format!("parsing trace {}", path.display()))
}

fn load_prefs(path: Option<&Path>) -> Result<Preferences> {
    let Some(path) = path else {
        return Ok(Preferences::Canonical);
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let lists =
        serde_json::from_str(&text).context("preferences must be a JSON array of arrays")?;
    Ok(Preferences::Explicit(lists))
}

fn arrival_model(kind: Option<ArrivalKind>, algorithm: Algorithm, seed: u64) -> ArrivalModel {
    let kind = kind.unwrap_or(if algorithm == Algorithm::GreedyRa {
        ArrivalKind::Timestamps
    } else {
        ArrivalKind::Adversarial
    });
    match kind {
        ArrivalKind::Adversarial => ArrivalModel::Adversarial,
        ArrivalKind::Permutation => ArrivalModel::RandomPermutation { seed },
        ArrivalKind::Timestamps => ArrivalModel::RandomTimestamps { seed },
    }
}

/// Runs `algorithm`; waterfilling algorithms see the arrivals in the order
/// drawn from `model`, on a reordered copy of the instance.
fn run_algorithm(
    algorithm: Algorithm,
    instance: &Instance,
    model: ArrivalModel,
    prefs: &Preferences,
) -> Result<RunTrace> {
    if algorithm == Algorithm::GreedyRa {
        return Ok(run_random_arrival_greedy(instance, model, prefs)?);
    }
    let reordered;
    let instance = if model == ArrivalModel::Adversarial {
        instance
    } else {
        reordered = instance.reordered(&model.schedule(instance).order);
        &reordered
    };
    Ok(match algorithm {
        Algorithm::Obvc => run_obvc(instance)?,
        Algorithm::Mobvc => run_mobvc(instance)?,
        Algorithm::MobmPd => run_mobm_pd(instance)?,
        Algorithm::GreedyRa => unreachable!("handled above"),
    })
}

fn opt_value(instance: &Instance) -> Result<Option<f64>> {
    if instance.n_offline > OPT_LIMIT {
        return Ok(None);
    }
    Ok(Some(offline_opt(instance)?.value))
}

/// Matching value for matching algorithms, cover cost otherwise.
fn objective(trace: &RunTrace) -> f64 {
    if trace.algorithm.has_primal() {
        trace.primal
    } else {
        trace.dual
    }
}

fn ratio(value: f64, opt: Option<f64>) -> Option<f64> {
    let opt = opt?;
    Some(if opt > 0.0 {
        value / opt
    } else if value.abs() <= mobm::TOL {
        1.0
    } else {
        f64::INFINITY
    })
}

fn cell(x: Option<f64>) -> String {
    x.map(|v| sig(v, DIGITS)).unwrap_or_default()
}

pub fn generate(kind: GenerateKind) -> Result<bool> {
    match kind {
        GenerateKind::Triangular { n, out } => {
            ensure!(n >= 1, "triangular instances need n >= 1");
            write_or_print(out.as_deref(), &instances::upper_triangular(n).to_json())?;
        }
        GenerateKind::Random {
            n,
            m,
            p,
            f,
            seed,
            out,
        } => {
            let spec = fspec::parse(&f, n).context("--f")?;
            let inst = instances::random(n, m, p, spec, seed)?;
            write_or_print(out.as_deref(), &inst.to_json())?;
        }
        GenerateKind::Suite {
            kind,
            count,
            seed,
            out_dir,
        } => {
            let suite = match kind {
                SuiteKind::Vc => instances::vc_suite(count, seed),
                SuiteKind::Matroid => instances::matroid_suite(count, seed),
            };
            fs::create_dir_all(&out_dir)
                .with_context(|| format!("creating {}", out_dir.display()))?;
            for inst in &suite {
                inst.save(out_dir.join(format!("{}.json", inst.name)))?;
            }
        }
    }
    Ok(true)
}

pub fn run(args: RunArgs) -> Result<bool> {
    ensure!(args.trials >= 1, "--trials must be at least 1");
    let inst = load_instance(&args.instance)?;
    if args.algorithm != Algorithm::GreedyRa {
        ensure!(
            matches!(args.arrival, None | Some(ArrivalKind::Adversarial)),
            "{} runs the instance in file order; reorder the file for other arrival orders",
            args.algorithm
        );
    }
    let prefs = load_prefs(args.prefs.as_deref())?;
    let opt = opt_value(&inst)?;
    let traces = (0..args.trials as u64)
        .map(|k| {
            let model = arrival_model(args.arrival, args.algorithm, args.seed.wrapping_add(k));
            run_algorithm(args.algorithm, &inst, model, &prefs)
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(out) = &args.out {
        fs::write(out, traces[0].to_json())
            .with_context(|| format!("writing {}", out.display()))?;
    }

    let name = &inst.name;
    if let [t] = traces.as_slice() {
        println!(
            "{},{name},{},{},{},{}",
            args.algorithm,
            sig(t.primal, DIGITS),
            sig(t.dual, DIGITS),
            cell(opt),
            cell(ratio(objective(t), opt))
        );
    } else {
        let n = traces.len() as f64;
        let mean_primal = traces.iter().map(|t| t.primal).sum::<f64>() / n;
        let mean_dual = traces.iter().map(|t| t.dual).sum::<f64>() / n;
        let ratios: Vec<f64> = traces
            .iter()
            .filter_map(|t| ratio(objective(t), opt))
            .collect();
        let (mean, min, max) = if ratios.is_empty() {
            (None, None, None)
        } else {
            (
                Some(ratios.iter().sum::<f64>() / n),
                ratios.iter().copied().reduce(f64::min),
                ratios.iter().copied().reduce(f64::max),
            )
        };
        println!(
            "{},{name},trials={},{},{},{},mean={},min={},max={}",
            args.algorithm,
            traces.len(),
            sig(mean_primal, DIGITS),
            sig(mean_dual, DIGITS),
            cell(opt),
            cell(mean),
            cell(min),
            cell(max)
        );
    }
    Ok(true)
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn save_report(path: Option<&Path>, report: &impl serde::Serialize) -> Result<()> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(report)? + "\n";
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

pub fn verify(args: CheckArgs) -> Result<bool> {
    let trace = load_trace(&args.trace)?;
    let inst = load_instance(&args.instance)?;
    let report = verify_trace(&trace, &inst, args.tol.get())?;
    let width = report
        .checks
        .iter()
        .map(|c| c.name.len())
        .max()
        .unwrap_or(0);
    for c in &report.checks {
        println!("{}  {:width$}  {}", status(c.passed), c.name, c.detail);
    }
    println!(
        "{}: {} trace of {}",
        status(report.passed()),
        trace.algorithm,
        inst.name
    );
    save_report(args.json.as_deref(), &report)?;
    Ok(report.passed())
}

fn print_audit(report: &AuditReport) {
    let failed: Vec<_> = report.failures().collect();
    let min_slack = report.rounds.iter().map(|r| r.slack()).reduce(f64::min);
    println!(
        "{}  rounds: {} checked ({}), {} failed, min slack {}",
        status(failed.is_empty()),
        report.rounds.len(),
        report.round_check,
        failed.len(),
        min_slack
            .map(|s| sig(s, 6))
            .unwrap_or_else(|| "-".to_owned())
    );
    for r in failed {
        println!(
            "FAIL  round {} (v={}): {} vs {}, slack {}",
            r.round,
            r.v,
            sig(r.lhs, DIGITS),
            sig(r.rhs, DIGITS),
            sig(r.slack(), 6)
        );
    }
    for b in &report.bounds {
        println!(
            "{}  {}: {} <= {}",
            status(b.passed),
            b.name,
            sig(b.lhs, DIGITS),
            sig(b.rhs, DIGITS)
        );
    }
}

pub fn audit(args: AuditArgs) -> Result<bool> {
    let check = &args.check;
    let trace = load_trace(&check.trace)?;
    let inst = load_instance(&check.instance)?;
    let tol = check.tol.get().tol;
    let report = if trace.algorithm.is_waterfilling() {
        let cert = offline_opt(&inst)?;
        audit_charging(&trace, &cert, &inst, tol)?
    } else {
        audit_greedy(&trace, &inst, tol)?
    };
    print_audit(&report);
    let mut passed = report.passed();

    if let Some(trials) = args.trials {
        if trace.algorithm != Algorithm::GreedyRa {
            bail!("--trials applies to greedy-ra traces only");
        }
        let prefs = load_prefs(args.prefs.as_deref())?;
        let lemmas = verify_random_arrival_lemmas(&inst, trials, args.seed, &prefs, tol)?;
        println!(
            "{}  dominance: {} violations in {} events",
            status(lemmas.dominance_violations == 0),
            lemmas.dominance_violations,
            lemmas.dominance_checked
        );
        println!(
            "{}  monotonicity: {} violations, worst shortfall {}",
            status(lemmas.monotonicity_violations == 0),
            lemmas.monotonicity_violations,
            sig(lemmas.monotonicity_worst, 6)
        );
        let weak = lemmas.edges.iter().filter(|e| !e.passed).count();
        println!(
            "{}  E[y_w + z_v] >= 1 - 3 SE: {} of {} edges fail",
            status(lemmas.feasibility_passed()),
            weak,
            lemmas.edges.len()
        );
        println!(
            "info  E[matching] = {} over {trials} draws, OPT = {}",
            sig(lemmas.mean_matching, DIGITS),
            sig(lemmas.offline_opt, DIGITS)
        );
        passed &= lemmas.passed();
        save_report(
            check.json.as_deref(),
            &serde_json::json!({ "audit": report, "random_arrival": lemmas }),
        )?;
    } else {
        save_report(check.json.as_deref(), &report)?;
    }
    println!(
        "{}: audit of {} trace of {}",
        status(passed),
        trace.algorithm,
        inst.name
    );
    Ok(passed)
}

fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    let text = text.trim();
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a
            .trim()
            .parse()
            .with_context(|| format!("bad seed range {text:?}"))?;
        let b: u64 = b
            .trim()
            .parse()
            .with_context(|| format!("bad seed range {text:?}"))?;
        ensure!(a <= b, "empty seed range {text:?}");
        return Ok((a..=b).collect());
    }
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().with_context(|| format!("bad seed {s:?}")))
        .collect()
}

fn parse_algorithms(text: &str) -> Result<Vec<Algorithm>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Ok(s.parse()?))
        .collect()
}

fn sweep_instances(args: &SweepArgs) -> Result<Vec<Instance>> {
    if let Some(dir) = &args.dir {
        let mut paths: Vec<_> = fs::read_dir(dir)
            .with_context(|| format!("reading {}", dir.display()))?
            .map(|e| e.map(|e| e.path()))
            .collect::<std::io::Result<_>>()?;
        paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
        paths.sort();
        return paths.iter().map(|p| load_instance(p)).collect();
    }
    let Some(spec) = &args.generator else {
        bail!("sweep needs --generator or --dir");
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let num =
        |s: &str| -> Result<usize> { s.parse().with_context(|| format!("bad size in {spec:?}")) };
    Ok(match parts.as_slice() {
        ["triangular", n] => {
            let n = num(n)?;
            ensure!(n >= 1, "triangular instances need n >= 1");
            vec![instances::upper_triangular(n)]
        }
        ["random", n, m, p] => {
            let (n, m) = (num(n)?, num(m)?);
            let p: f64 = p.parse().with_context(|| format!("bad probability in {spec:?}"))?;
            let f = fspec::parse(&args.f, n).context("--f")?;
            (0..args.count as u64)
                .map(|i| Ok(instances::random(n, m, p, f.clone(), args.gen_seed.wrapping_add(i))?))
                .collect::<Result<_>>()?
        }
        ["vc-suite"] => instances::vc_suite(args.count, args.gen_seed),
        ["matroid-suite"] => instances::matroid_suite(args.count, args.gen_seed),
        _ => bail!(
            "unknown generator {spec:?}; expected triangular:N, random:N:M:P, vc-suite or matroid-suite"
        ),
    })
}

pub fn sweep(args: SweepArgs) -> Result<bool> {
    let algorithms = parse_algorithms(&args.algorithms)?;
    let seeds = parse_seeds(&args.seeds)?;
    let insts = if algorithms.is_empty() {
        Vec::new()
    } else {
        sweep_instances(&args)?
    };
    let opts = insts
        .par_iter()
        .map(opt_value)
        .collect::<Result<Vec<_>>>()?;

    let cells: Vec<(usize, Algorithm, u64)> = (0..insts.len())
        .flat_map(|i| {
            let seeds = &seeds;
            algorithms
                .iter()
                .flat_map(move |&a| seeds.iter().map(move |&s| (i, a, s)))
        })
        .collect();
    // `collect` on an indexed parallel iterator keeps input order.
    let rows = cells
        .par_iter()
        .map(|&(i, algorithm, seed)| {
            let inst = &insts[i];
            let start = Instant::now();
            let model = arrival_model(args.arrival, algorithm, seed);
            let trace = run_algorithm(algorithm, inst, model, &Preferences::Canonical)
                .with_context(|| format!("{algorithm} on {}", inst.name))?;
            let ms = if args.timing {
                sig(start.elapsed().as_secs_f64() * 1e3, 6)
            } else {
                "0".to_owned()
            };
            Ok(format!(
                "{algorithm},{},{seed},{},{},{},{},{ms}",
                inst.name,
                sig(trace.primal, DIGITS),
                sig(trace.dual, DIGITS),
                cell(opts[i]),
                cell(ratio(objective(&trace), opts[i]))
            ))
        })
        .collect::<Result<Vec<String>>>()?;

    let mut csv = String::new();
    writeln!(csv, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(csv, "{row}")?;
    }
    write_or_print(args.out.as_deref(), &csv)?;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_lists() {
        assert_eq!(parse_seeds("1..3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_seeds("4, 9").unwrap(), vec![4, 9]);
        assert!(parse_seeds("3..1").is_err());
        assert!(parse_seeds("x").is_err());
    }

    #[test]
    fn algorithm_lists() {
        assert!(parse_algorithms("").unwrap().is_empty());
        assert_eq!(
            parse_algorithms("obvc, greedy-ra").unwrap(),
            vec![Algorithm::Obvc, Algorithm::GreedyRa]
        );
        assert!(parse_algorithms("obvc,nope").is_err());
    }

    #[test]
    fn ratios() {
        assert_eq!(ratio(3.0, Some(2.0)), Some(1.5));
        assert_eq!(ratio(0.0, Some(0.0)), Some(1.0));
        assert_eq!(ratio(1.0, None), None);
    }
}
