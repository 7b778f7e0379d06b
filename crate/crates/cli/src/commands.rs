use std::ops::RangeInclusive;
use std::path::Path;

use heis_core::io::{curves_to_csv, parse};
use heis_core::linear::{
    check_mahler_mismatch, check_one_empty, check_orbit_intersection, emit_curves, laurent_roots, ls2_criterion,
    mahler_1d, mahler_2d_with, swapped, unit_circle_roots, Ls2Options, OrbitReport, UnitCircleRootSet,
};
use heis_core::parallel::{default_workers, Execution};
use heis_core::spectral::{sweep_with, WindowProbe};
use heis_core::{
    evaluate, fixtures, localize, sigma_min, AnyElement, Angle, Complex64, LaurentPoly2, RepPoint, SweepConfig,
    TwistedElement,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{Cli, Command, EvalArgs, LinearCommand, OptionalPair, Pair, SweepArgs, TwistedArgs, Workers};
use crate::manifest::{write_text, Run};
use crate::CliError;

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval(args) => eval(args),
        Command::Sweep(args) => sweep(args),
        Command::Linear(sub) => linear(sub),
        Command::Twisted(args) => twisted(args),
    }
}

fn read_json<T: DeserializeOwned>(run: &mut Run, path: &Path) -> Result<T, CliError> {
    let text = run.read(path)?;
    parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn execution(workers: Workers) -> Result<Execution, CliError> {
    match workers.workers {
        Some(0) => Err(CliError::Invalid("--workers must be at least 1".into())),
        Some(n) => Ok(Execution::with_workers(n)),
        None => Ok(Execution::with_workers(default_workers())),
    }
}

#[derive(Serialize)]
struct EvalReport {
    point: RepPoint,
    dim: usize,
    sigma_min: f64,
    /// `1 / sigma_min`, absent when `sigma_min` is zero.
    inverse_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<Complex64>>>,
}

fn eval(args: EvalArgs) -> Result<(), CliError> {
    let mut run = Run::new("eval");
    let f: AnyElement = read_json(&mut run, &args.f)?;
    let point = RepPoint::new(args.p, args.q, args.s, args.t)?;
    run.config(json!({ "p": args.p, "q": args.q, "s": args.s, "t": args.t, "matrix": args.matrix }));

    let pi = match &f {
        AnyElement::Int(f) => evaluate(f, &point),
        AnyElement::Complex(f) => evaluate(f, &point),
    };
    let sigma = sigma_min(&pi.entries)?;
    let matrix = args.matrix.then(|| {
        pi.entries.row_iter().map(|row| row.iter().copied().collect()).collect()
    });
    let report = EvalReport {
        point,
        dim: point.dim(),
        sigma_min: sigma,
        inverse_norm: (sigma > 0.0).then(|| 1.0 / sigma),
        matrix,
    };
    run.emit(&report, &args.output)
}

fn sweep(args: SweepArgs) -> Result<(), CliError> {
    let mut run = Run::new("sweep");
    let f: AnyElement = read_json(&mut run, &args.f)?;
    let exec = execution(args.workers)?;
    let config = SweepConfig {
        q_max: args.q_max,
        grid_s: args.grid_s,
        grid_t: args.grid_t,
        threshold: args.threshold,
        inconclusive_band: args.band,
        probes: if args.no_probes { Vec::new() } else { vec![WindowProbe::default()] },
    };
    // the worker count is deliberately left out: it never changes the report
    run.config(serde_json::to_value(&config).map_err(heis_core::Error::from)?);
    let report = match &f {
        AnyElement::Int(f) => sweep_with(f, &config, exec),
        AnyElement::Complex(f) => sweep_with(f, &config, exec),
    }?;
    run.emit(&report, &args.output)
}

fn read_pair(run: &mut Run, pair: &Pair) -> Result<(LaurentPoly2, LaurentPoly2), CliError> {
    Ok((read_json(run, &pair.g0)?, read_json(run, &pair.g1)?))
}

fn read_optional_pair(run: &mut Run, pair: &OptionalPair) -> Result<(LaurentPoly2, LaurentPoly2), CliError> {
    let g0 = match &pair.g0 {
        Some(path) => read_json(run, path)?,
        None => fixtures::example_g0(),
    };
    let g1 = match &pair.g1 {
        Some(path) => read_json(run, path)?,
        None => fixtures::example_g1(),
    };
    Ok((g0, g1))
}

/// `a..b` (exclusive), `a..=b`, or `a`.
fn parse_shears(text: &str) -> Result<RangeInclusive<i64>, CliError> {
    let bad = || CliError::Usage(format!("invalid shear range `{text}`: expected a..b, a..=b or an integer"));
    let int = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
    let range = if let Some((a, b)) = text.split_once("..=") {
        int(a)?..=int(b)?
    } else if let Some((a, b)) = text.split_once("..") {
        let end = int(b)?.checked_sub(1).ok_or_else(bad)?;
        int(a)?..=end
    } else {
        let m = int(text)?;
        m..=m
    };
    if range.is_empty() {
        return Err(CliError::Invalid(format!("shear range `{text}` is empty")));
    }
    Ok(range)
}

#[derive(Serialize)]
struct JensenReport {
    chi: Angle,
    value: f64,
}

#[derive(Serialize)]
struct RootsReport {
    chi: Angle,
    /// All roots of the specialization; absent when it vanishes identically.
    roots: Option<Vec<Complex64>>,
    circle: UnitCircleRootSet,
    tol: f64,
}

#[derive(Serialize)]
struct OrbitOutput {
    #[serde(flatten)]
    direct: OrbitReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    swapped: Option<OrbitReport>,
}

fn linear(sub: LinearCommand) -> Result<(), CliError> {
    match sub {
        LinearCommand::Mahler { g0, chi, nodes, output } => {
            let mut run = Run::new("linear mahler");
            let g0: LaurentPoly2 = read_json(&mut run, &g0)?;
            match chi {
                Some(chi) => {
                    run.config(json!({ "chi": chi }));
                    let value = mahler_1d(&g0.specialize_at(chi))?;
                    run.emit(&JensenReport { chi, value }, &output)
                }
                None => {
                    run.config(json!({ "nodes": nodes }));
                    run.emit(&mahler_2d_with(&g0, nodes)?, &output)
                }
            }
        }
        LinearCommand::Roots { g0, chi, tol, output } => {
            let mut run = Run::new("linear roots");
            let g0: LaurentPoly2 = read_json(&mut run, &g0)?;
            if !(tol >= 0.0 && tol.is_finite()) {
                return Err(CliError::Invalid("--tol must be finite and non-negative".into()));
            }
            run.config(json!({ "chi": chi, "tol": tol }));
            let h = g0.specialize_at(chi);
            let report = RootsReport { chi, roots: laurent_roots(&h), circle: unit_circle_roots(&h, tol), tol };
            run.emit(&report, &output)
        }
        LinearCommand::OneEmpty { pair, chi, output } => {
            let mut run = Run::new("linear one-empty");
            let (g0, g1) = read_pair(&mut run, &pair)?;
            run.config(json!({ "chi": chi }));
            run.emit(&check_one_empty(&g0, &g1, chi)?, &output)
        }
        LinearCommand::Orbit { pair, m, tol, samples, swapped: with_swapped, workers, output } => {
            let mut run = Run::new("linear orbit");
            let (g0, g1) = read_optional_pair(&mut run, &pair)?;
            let shears = parse_shears(&m)?;
            if !(tol > 0.0 && tol.is_finite()) || samples < 2 {
                return Err(CliError::Invalid("--tol must be positive and --samples at least 2".into()));
            }
            let exec = execution(workers)?;
            run.config(json!({
                "m": [shears.start(), shears.end()],
                "tol": tol,
                "samples": samples,
                "swapped": with_swapped,
            }));
            let direct = check_orbit_intersection(&g0, &g1, shears, tol, samples, exec)?;
            let swapped = with_swapped.then(|| swapped(&direct));
            run.emit(&OrbitOutput { direct, swapped }, &output)
        }
        LinearCommand::Mismatch { pair, chi, margin, output } => {
            let mut run = Run::new("linear mismatch");
            let (g0, g1) = read_pair(&mut run, &pair)?;
            run.config(json!({ "chi": chi, "margin": margin }));
            run.emit(&check_mahler_mismatch(&g0, &g1, chi, margin), &output)
        }
        LinearCommand::Ls2 { pair, margin, chi_samples, nodes, output } => {
            let mut run = Run::new("linear ls2");
            let (g0, g1) = read_pair(&mut run, &pair)?;
            let opts = Ls2Options { chi_samples, margin, nodes };
            run.config(serde_json::to_value(&opts).map_err(heis_core::Error::from)?);
            run.emit(&ls2_criterion(&g0, &g1, &opts)?, &output)
        }
        LinearCommand::Curves { pair, m, samples, out } => {
            let mut run = Run::new("linear curves");
            let (g0, g1) = read_optional_pair(&mut run, &pair)?;
            if samples == 0 {
                return Err(CliError::Invalid("--samples must be at least 1".into()));
            }
            let rows = emit_curves(&g0, &g1, m, samples)?;
            write_text(&curves_to_csv(&rows), out.as_deref())
        }
    }
}

/// A twisted-algebra input: either already twisted, or a group-ring element
/// to be localized.
enum TwistedInput {
    Twisted(TwistedElement),
    GroupRing(AnyElement),
}

fn read_twisted_input(run: &mut Run, path: &Path) -> Result<TwistedInput, CliError> {
    let doc: Value = read_json(run, path)?;
    let decoded = if doc.get("flavor").is_some() {
        serde_json::from_value(doc).map(TwistedInput::GroupRing)
    } else {
        serde_json::from_value(doc).map(TwistedInput::Twisted)
    };
    decoded.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Group-ring elements land in the twisted algebra at `theta` through
/// localization at `-theta`.
fn to_twisted(input: &TwistedInput, theta: Angle) -> Result<TwistedElement, CliError> {
    match input {
        TwistedInput::Twisted(t) if t.theta() == theta => Ok(t.clone()),
        TwistedInput::Twisted(t) => Err(heis_core::Error::ThetaMismatch(t.theta(), theta).into()),
        TwistedInput::GroupRing(AnyElement::Int(f)) => Ok(localize(f, theta.neg())),
        TwistedInput::GroupRing(AnyElement::Complex(f)) => Ok(localize(f, theta.neg())),
    }
}

#[derive(Serialize)]
struct TwistedReport {
    theta: Angle,
    product: TwistedElement,
    /// Largest coefficient gap between the product and the localized
    /// group-ring product.
    #[serde(skip_serializing_if = "Option::is_none")]
    localize_residual: Option<f64>,
}

fn twisted(args: TwistedArgs) -> Result<(), CliError> {
    let mut run = Run::new("twisted");
    let f = read_twisted_input(&mut run, &args.f)?;
    let g = read_twisted_input(&mut run, &args.g)?;
    let theta = args.theta;
    run.config(json!({ "theta": theta, "check_localize": args.check_localize }));

    let product = to_twisted(&f, theta)?.twisted_multiply(&to_twisted(&g, theta)?)?;
    let localize_residual = if args.check_localize {
        let (TwistedInput::GroupRing(a), TwistedInput::GroupRing(b)) = (&f, &g) else {
            return Err(CliError::Invalid("--check-localize needs group-ring inputs".into()));
        };
        let direct = to_twisted(&TwistedInput::GroupRing(a.multiply(b)?), theta)?;
        Some(direct.max_abs_diff(&product))
    } else {
        None
    };
    run.emit(&TwistedReport { theta, product, localize_residual }, &args.output)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shear_ranges() {
        assert_eq!(parse_shears("0..=4").unwrap(), 0..=4);
        assert_eq!(parse_shears("0..4").unwrap(), 0..=3);
        assert_eq!(parse_shears("-2..=2").unwrap(), -2..=2);
        assert_eq!(parse_shears("3").unwrap(), 3..=3);
        assert!(matches!(parse_shears("2..2"), Err(CliError::Invalid(_))));
        assert!(matches!(parse_shears("a..b"), Err(CliError::Usage(_))));
    }

    #[test]
    fn localized_inputs_carry_the_requested_angle() {
        let theta = Angle::rational(1, 5).unwrap();
        let f: AnyElement = parse(r#"{"flavor":"int","terms":[[1,0,0,1]]}"#).unwrap();
        let t = to_twisted(&TwistedInput::GroupRing(f), theta).unwrap();
        assert_eq!(t.theta(), theta);
    }

    #[test]
    fn mismatched_twisted_input_is_rejected() {
        let t = TwistedElement::delta(Angle::rational(1, 3).unwrap(), 1, 0);
        let err = to_twisted(&TwistedInput::Twisted(t), Angle::rational(1, 5).unwrap()).unwrap_err();
        assert!(matches!(err, CliError::Invalid(_)));
    }
}
