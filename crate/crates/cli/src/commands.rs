use std::fmt;
use std::io::Read;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};
use slice_series::algebra::{algebra_constants, AlgebraConstants};
use slice_series::expansion::{
    coefficient_residual, coefficients, power_remainder, spherical_remainder, ContourOptions, ExpandOptions, Kind, Method,
};
use slice_series::geometry::{cassini_boundary, delta_complex, sigma, tau, BoundaryLoop, SigmaBall};
use slice_series::io::{algebra_from_config, parse_algebra_kind, points_from_json, series_from_json, stem_from_json};
use slice_series::series::SeriesValue;
use slice_series::verify::{self, Context};
use slice_series::{AlgebraSpec, ConePoint, Element, Exec, NormKind};

use crate::output::{coords, fmt_f64, num, to_json_string};
use crate::{BoundaryArgs, Cli, CoeffsArgs, Command, EvalArgs};

const CONSTANT_SAMPLES: usize = 2000;
const VERIFY_SAMPLES: usize = 1000;
const BOUNDARY_POINTS: usize = 256;
const COEFF_ORDER: usize = 10;

#[derive(Debug)]
pub enum Failure {
    Input(String),
    NonConvergence(String),
    Verify(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::NonConvergence(m) | Failure::Verify(m) => f.write_str(m),
        }
    }
}

impl From<slice_series::Error> for Failure {
    fn from(e: slice_series::Error) -> Self {
        match e {
            slice_series::Error::NonConvergence(_) => Failure::NonConvergence(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

/// File contents, stdin for `-`, or the argument itself.
fn read_input(arg: &str) -> Outcome<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    let path = Path::new(arg);
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{arg}: {e}")));
    }
    Ok(arg.to_string())
}

fn algebra(cli: &Cli) -> Outcome<&'static AlgebraSpec> {
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        return Ok(algebra_from_config(&text)?);
    }
    Ok(AlgebraSpec::get(parse_algebra_kind(&cli.algebra)?, NormKind::Euclidean)?)
}

fn exec(cli: &Cli) -> Exec {
    if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn constants(cli: &Cli, spec: &'static AlgebraSpec) -> AlgebraConstants {
    algebra_constants(spec, cli.samples.unwrap_or(CONSTANT_SAMPLES), cli.seed, exec(cli))
}

fn emit(cli: &Cli, text: &str) -> Outcome<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn run(cli: &Cli) -> Outcome<()> {
    match &cli.command {
        Command::EvalPower(args) => eval(cli, args, Kind::Power),
        Command::EvalSpherical(args) => eval(cli, args, Kind::Spherical),
        Command::Radius { series } => radius(cli, series),
        Command::Coeffs(args) => coeffs(cli, args),
        Command::Boundary(args) => boundary(cli, args),
        Command::Metric { x, y } => metric(cli, x, y),
        Command::Verify { only, json } => run_verify(cli, only, *json),
    }
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::Power => "power",
        Kind::Spherical => "spherical",
    }
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Derivative => "derivative",
        Method::System => "system",
        Method::Contour => "contour",
    }
}

fn series_value(x: &ConePoint, v: &SeriesValue) -> Value {
    let divergence = match &v.divergence {
        Some(d) => json!({"outside_radius": d.outside_radius, "growth": d.growth, "assured": d.assured}),
        None => Value::Null,
    };
    json!({
        "point": coords(x.element()),
        "value": coords(&v.value),
        "terms": v.terms,
        "distance": num(v.distance),
        "tail_bound": num(v.tail_bound),
        "tail_extrapolated": num(v.tail_extrapolated),
        "divergence": divergence,
    })
}

fn eval(cli: &Cli, args: &EvalArgs, kind: Kind) -> Outcome<()> {
    let spec = algebra(cli)?;
    let mut input = series_from_json(spec, &read_input(&args.series)?)?;
    if let Some(order) = cli.order {
        input.order = order;
    }
    let points = points_from_json(spec, &read_input(&args.at)?)?;
    let c = constants(cli, spec).c_upper;
    let (values, radius) = match kind {
        Kind::Power => {
            let s = input.power()?;
            (s.eval_batch(&points, c, exec(cli)), s.radius().radius)
        }
        Kind::Spherical => {
            let s = input.spherical()?;
            (s.eval_batch(&points, c, exec(cli)), s.radius().radius)
        }
    };
    for (x, v) in points.iter().zip(&values) {
        if let Some(d) = v.divergence.filter(|d| d.outside_radius || d.growth) {
            log::warn!(
                "{} series diverges at {} (distance {} vs radius {radius}; assured: {})",
                kind_name(kind),
                x.element(),
                v.distance,
                d.assured
            );
        }
    }
    let out = json!({
        "kind": kind_name(kind),
        "algebra": spec.kind().to_string(),
        "center": coords(input.center.element()),
        "order": input.order,
        "radius": num(radius),
        "results": points.iter().zip(&values).map(|(x, v)| series_value(x, v)).collect::<Vec<_>>(),
    });
    emit(cli, &to_json_string(&out))
}

fn radius(cli: &Cli, series: &str) -> Outcome<()> {
    let spec = algebra(cli)?;
    let input = series_from_json(spec, &read_input(series)?)?;
    let est = input.power()?.radius();
    let out = json!({
        "algebra": spec.kind().to_string(),
        "center": coords(input.center.element()),
        "coefficients": input.coeffs.len(),
        "radius": num(est.radius),
        "window": [est.window.0, est.window.1],
        "roots": est.roots.iter().map(|&(n, r)| json!([n, num(r)])).collect::<Vec<_>>(),
    });
    emit(cli, &to_json_string(&out))
}

fn parse_kind(s: &str) -> Outcome<Kind> {
    match s {
        "power" => Ok(Kind::Power),
        "spherical" => Ok(Kind::Spherical),
        other => Err(Failure::Input(format!("unknown kind '{other}' (power, spherical)"))),
    }
}

fn coeffs(cli: &Cli, args: &CoeffsArgs) -> Outcome<()> {
    let spec = algebra(cli)?;
    let kind = parse_kind(&args.kind)?;
    let method = Method::parse(&args.method)?;
    let (stem, stored_center) = stem_from_json(spec, &read_input(&args.stem)?)?;
    let center = match (&args.center, stored_center) {
        (Some(c), _) => slice_series::io::point_from_value(spec, &Value::String(read_input(c)?))?,
        (None, Some(c)) => c,
        (None, None) => return Err(Failure::Input("coeffs needs --center or a stem file with a center".into())),
    };
    let order = cli.order.unwrap_or(COEFF_ORDER);
    let contour = ContourOptions {
        nodes: cli.points.unwrap_or(ContourOptions::default().nodes),
        tol: args.tol,
        exec: exec(cli),
    };
    let opts = ExpandOptions { radius: args.radius, contour };
    let primary = coefficients(&stem, &center, order, kind, method, &opts)?;

    let residuals: Vec<Value> = Method::ALL
        .into_iter()
        .filter(|&m| m != method)
        .map(|other| match coefficients(&stem, &center, order, kind, other, &opts) {
            Ok(theirs) => json!({"against": method_name(other), "value": num(coefficient_residual(&primary, &theirs))}),
            Err(e) => json!({"against": method_name(other), "error": e.to_string()}),
        })
        .collect();

    let mut out = json!({
        "kind": kind_name(kind),
        "method": method_name(method),
        "algebra": spec.kind().to_string(),
        "center": coords(center.element()),
        "order": order,
        "coefficients": primary.iter().map(coords).collect::<Vec<_>>(),
        "residuals": residuals,
    });
    if let Some(at) = &args.at {
        let consts = constants(cli, spec);
        let points = points_from_json(spec, &read_input(at)?)?;
        let mut rows = Vec::new();
        for x in &points {
            let rem = match kind {
                Kind::Power => power_remainder(&stem, &center, args.radius, order, x, &consts, contour)?,
                Kind::Spherical => spherical_remainder(&stem, &center, args.radius, order, x, &consts, contour)?,
            };
            rows.push(json!({
                "point": coords(x.element()),
                "remainder": coords(&rem.direct),
                "kernel_remainder": coords(&rem.kernel),
                "agreement": num(rem.agreement()),
                "bound": num(rem.bound),
                "distance": num(rem.distance),
            }));
        }
        out["remainders"] = Value::Array(rows);
    }
    emit(cli, &to_json_string(&out))
}

// w=<complex> r=<radius>
fn center_and_radius(parts: &[String]) -> Outcome<(Complex64, f64)> {
    let mut w = None;
    let mut r = None;
    for p in parts {
        let (key, value) = p.split_once('=').ok_or_else(|| Failure::Input(format!("expected key=value, got `{p}`")))?;
        match key {
            "w" => {
                let e = Element::parse(AlgebraSpec::complex(), value)?;
                w = Some(Complex64::new(e.coords()[0], e.coords()[1]));
            }
            "r" => r = Some(value.parse::<f64>().map_err(|e| Failure::Input(format!("radius `{value}`: {e}")))?),
            other => return Err(Failure::Input(format!("unknown boundary parameter `{other}` (w, r)"))),
        }
    }
    match (w, r) {
        (Some(w), Some(r)) if r > 0.0 => Ok((w, r)),
        _ => Err(Failure::Input("boundary needs w=<complex> and r=<positive radius>".into())),
    }
}

fn csv(loops: &[BoundaryLoop]) -> String {
    let mut s = String::from("loop,phi,re,im\n");
    for lp in loops {
        for n in &lp.nodes {
            s.push_str(&format!("{},{},{},{}\n", lp.label, fmt_f64(n.param), fmt_f64(n.z.re), fmt_f64(n.z.im)));
        }
    }
    s
}

fn boundary(cli: &Cli, args: &BoundaryArgs) -> Outcome<()> {
    let n = cli.points.unwrap_or(BOUNDARY_POINTS);
    if n == 0 {
        return Err(Failure::Input("--points must be positive".into()));
    }
    let loops = if let Some(parts) = &args.cassini {
        let (w, r) = center_and_radius(parts)?;
        let loops = cassini_boundary(w, r, n)?;
        let worst = loops.iter().flat_map(|l| &l.nodes).map(|p| (delta_complex(w, p.z).norm() - r * r).abs()).fold(0.0, f64::max);
        log::info!("largest |Δ_w(z)| − r² on the emitted points: {worst:e}");
        loops
    } else {
        let (w, r) = center_and_radius(args.ball.as_deref().unwrap_or_default())?;
        let j = Element::basis(AlgebraSpec::complex(), 1);
        SigmaBall::new(ConePoint::on_plane(&j, w)?, r)?.boundary(n)
    };
    emit(cli, &csv(&loops))
}

fn metric(cli: &Cli, x: &str, y: &str) -> Outcome<()> {
    let spec = algebra(cli)?;
    let strip = |s: &str, key: &str| s.strip_prefix(key).map(str::to_string).unwrap_or_else(|| s.to_string());
    let read = |s: String| -> Outcome<ConePoint> { Ok(slice_series::io::point_from_value(spec, &Value::String(s))?) };
    let (x, y) = (read(strip(x, "x="))?, read(strip(y, "y="))?);
    let out = json!({
        "algebra": spec.kind().to_string(),
        "x": coords(x.element()),
        "y": coords(y.element()),
        "sigma": num(sigma(&x, &y)),
        "tau": num(tau(&x, &y)),
        "distance": num(x.element().dist(y.element())),
    });
    emit(cli, &to_json_string(&out))
}

fn run_verify(cli: &Cli, only: &[String], as_json: bool) -> Outcome<()> {
    let ctx = Context { samples: cli.samples.unwrap_or(VERIFY_SAMPLES), seed: cli.seed, exec: exec(cli) };
    let props = verify::properties();
    for name in only {
        if !props.iter().any(|p| p.name == name) {
            return Err(Failure::Input(format!("unknown property `{name}`")));
        }
    }
    let results: Vec<_> = props.iter().filter(|p| only.is_empty() || only.iter().any(|n| n == p.name)).map(|p| p.run(&ctx)).collect();
    let failed = results.iter().filter(|r| !r.passed()).count();
    let text = if as_json {
        let rows: Vec<Value> = results
            .iter()
            .map(|r| {
                json!({
                    "module": r.module,
                    "name": r.name,
                    "passed": r.passed(),
                    "checks": r.checks,
                    "failures": r.failures,
                    "worst_margin": num(r.worst_margin),
                })
            })
            .collect();
        to_json_string(&json!({"seed": cli.seed, "samples": ctx.samples, "properties": rows, "failed": failed}))
    } else {
        let mut s = String::new();
        for r in &results {
            s.push_str(&format!(
                "{} {}/{} checks={} failures={} worst_margin={}\n",
                if r.passed() { "PASS" } else { "FAIL" },
                r.module,
                r.name,
                r.checks,
                r.failures,
                fmt_f64(r.worst_margin)
            ));
        }
        s.push_str(&format!("{} properties, {} passed, {} failed\n", results.len(), results.len() - failed, failed));
        s
    };
    emit(cli, &text)?;
    if failed > 0 {
        return Err(Failure::Verify(format!("{failed} properties failed")));
    }
    Ok(())
}
