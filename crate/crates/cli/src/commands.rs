use std::fs;
use std::path::Path;

use fueter::axial::{beta_pointwise_odd, dirac_axial};
use fueter::clifford::{Multivector, Paravector};
use fueter::fueter::{beta_from_jet, beta_monomial, beta_series, BetaImage, MonogenicMonomial};
use fueter::intrinsic::LaurentSeries;
use fueter::inverse::{laurent_expand, roundtrip_check, BetaSampler, ContourSpec, SampledContour};
use fueter::kernels::{k_kernel, QuadratureSpec, SeriesTruncation, Which};
use fueter::FueterError;
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{Map, Value};

use crate::output::{self, cell, csv_text, document, json_text, num, nums, reformat, Format};
use crate::{Cli, CliError, Command};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum WhichArg {
    Plus,
    Minus,
}

impl From<WhichArg> for Which {
    fn from(w: WhichArg) -> Self {
        match w {
            WhichArg::Plus => Which::Plus,
            WhichArg::Minus => Which::Minus,
        }
    }
}

pub struct Report {
    json: Map<String, Value>,
    csv: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    default_format: Format,
    pub passed: bool,
}

impl Report {
    fn json(json: Map<String, Value>) -> Self {
        Self {
            json,
            csv: None,
            default_format: Format::Json,
            passed: true,
        }
    }

    pub fn render(&self, format: Option<Format>) -> Result<String, CliError> {
        match format.unwrap_or(self.default_format) {
            Format::Json => Ok(json_text(&Value::Object(self.json.clone()))),
            Format::Csv => match &self.csv {
                Some((header, rows)) => csv_text(header, rows),
                None => Err(CliError::Usage(format!(
                    "csv output is not available for `{}`",
                    self.json["command"].as_str().unwrap_or("?")
                ))),
            },
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Eval { series, n, point } => eval(series, *n, point),
        Command::Verify { l, n, tol } => verify(*l, *n, *tol),
        Command::Table { n, lmin, lmax } => table(*n, *lmin, lmax.unwrap_or(*n as i64 + 4)),
        Command::Kernel { which, n, x0, r, quad } => kernel((*which).into(), *n, *x0, *r, *quad),
        Command::Inverse {
            config,
            series,
            n,
            point,
            lmin,
            lmax,
            expand_center,
            expand_radius,
        } => inverse(
            config,
            series,
            *n,
            point,
            Expansion {
                l_range: (*lmin, *lmax),
                center: *expand_center,
                radius: *expand_radius,
            },
            truncation(cli.series_tol)?,
        ),
        Command::Roundtrip {
            config,
            series,
            n,
            point,
            tol,
        } => roundtrip(config, series, *n, point, *tol, truncation(cli.series_tol)?),
    }
}

fn truncation(tol: f64) -> Result<SeriesTruncation, CliError> {
    Ok(SeriesTruncation::with_tol(tol)?)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_series(path: &Path) -> Result<LaurentSeries, CliError> {
    Ok(LaurentSeries::from_json(&read(path)?)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ContourJson {
    center: [f64; 2],
    radius: f64,
    samples: usize,
}

fn load_contour(path: &Path) -> Result<ContourSpec, CliError> {
    let raw: ContourJson =
        serde_json::from_str(&read(path)?).map_err(|e| FueterError::Parse(format!("contour config: {e}")))?;
    Ok(ContourSpec::new((raw.center[0], raw.center[1]), raw.radius, raw.samples)?)
}

fn parse_point(text: &str, n: usize) -> Result<Paravector<f64>, CliError> {
    let comps = text
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| FueterError::Parse(format!("bad point component {c:?}")))
        })
        .collect::<Result<Vec<f64>, _>>()?;
    if comps.len() != n + 1 {
        return Err(FueterError::Parse(format!(
            "point has {} components, expected n + 1 = {}",
            comps.len(),
            n + 1
        ))
        .into());
    }
    Ok(Paravector::from_components(&comps)?)
}

fn require_n(n: usize, min: usize, command: &str) -> Result<(), CliError> {
    if n < min {
        return Err(CliError::Usage(format!("`{command}` needs n >= {min}, got {n}")));
    }
    Ok(())
}

fn eval(series: &Path, n: usize, point: &str) -> Result<Report, CliError> {
    require_n(n, 1, "eval")?;
    let f = load_series(series)?;
    let x = parse_point(point, n)?;
    let v = beta_series(&f, n, &x)?.to_vec();
    let mut doc = document("eval");
    doc.insert("n".into(), n.into());
    doc.insert("point".into(), nums(&x.to_vec()));
    doc.insert("value".into(), nums(&v));
    let rows = v
        .iter()
        .zip(x.to_vec())
        .enumerate()
        .map(|(i, (vi, xi))| vec![i.to_string(), cell(&num(xi)), cell(&num(*vi))])
        .collect();
    let mut report = Report::json(doc);
    report.csv = Some((vec!["component", "point", "value"], rows));
    Ok(report)
}

/// Deterministic sample points with moduli between 0.8 and 1.5.
fn sample_points(n: usize, count: usize) -> Vec<Paravector<f64>> {
    (0..count)
        .map(|j| {
            let raw: Vec<f64> = (0..=n).map(|i| (1.3 + 0.7 * j as f64 + 1.9 * i as f64).cos()).collect();
            let norm = raw.iter().map(|c| c * c).sum::<f64>().sqrt();
            let modulus = 0.8 + 0.7 * j as f64 / count.max(2) as f64;
            Paravector::from_components(&raw.iter().map(|c| c * modulus / norm).collect::<Vec<_>>())
                .expect("n >= 1")
        })
        .collect()
}

/// `|sum_i e_i d_i f| / max_i |d_i f|` with sixth-order central differences.
fn dirac_residual(m: &MonogenicMonomial, x: &Paravector<f64>) -> Result<f64, CliError> {
    let n = x.dim();
    let h = 1e-3 * x.norm();
    let base = x.to_vec();
    let stencil = [(-3.0, -1.0), (-2.0, 9.0), (-1.0, -45.0), (1.0, 45.0), (2.0, -9.0), (3.0, 1.0)];
    let mut total = Multivector::zero(n)?;
    let mut scale = 0.0f64;
    for i in 0..=n {
        let mut d = Paravector::real(n, 0.0)?;
        for (step, w) in stencil {
            let mut y = base.clone();
            y[i] += step * h;
            let v = m.eval(&Paravector::from_components(&y)?)?;
            d = d.checked_add(&v.scale(&(w / (60.0 * h))))?;
        }
        scale = scale.max(d.norm());
        let dm = d.to_multivector();
        let term = if i == 0 { dm } else { Multivector::basis(n, i)?.checked_mul(&dm)? };
        total = total.checked_add(&term)?;
    }
    Ok(if scale > 0.0 { total.norm() / scale } else { total.norm() })
}

fn verify(l: i64, n: usize, tol: f64) -> Result<Report, CliError> {
    require_n(n, 1, "verify")?;
    let image = beta_monomial(l, n)?;
    let mut doc = document("verify");
    doc.insert("n".into(), n.into());
    doc.insert("l".into(), l.into());
    let passed = match &image {
        BetaImage::Zero => {
            doc.insert("image".into(), "zero".into());
            doc.insert("in_kernel".into(), true.into());
            doc.insert("exact_zero".into(), true.into());
            doc.insert("max_residual".into(), Value::Null);
            true
        }
        BetaImage::Monomial(m) => {
            doc.insert("image".into(), format!("P^({})", m.index).into());
            doc.insert("in_kernel".into(), false.into());
            let mut exact = m.is_monogenic();
            if n % 2 == 1 {
                // the same image through the pointwise Laplacian route
                let pointwise = beta_pointwise_odd(l, n)?;
                exact &= dirac_axial(&pointwise, n).is_zero();
                let agrees = m.value.exact_pair().map(|p| p == pointwise).unwrap_or(false);
                doc.insert("matches_pointwise".into(), agrees.into());
                exact &= agrees;
            }
            doc.insert("exact_zero".into(), exact.into());
            let residual = if n.is_multiple_of(2) {
                let mut worst = 0.0f64;
                for x in sample_points(n, 8) {
                    worst = worst.max(dirac_residual(m, &x)?);
                }
                doc.insert("max_residual".into(), num(worst));
                Some(worst)
            } else {
                doc.insert("max_residual".into(), Value::Null);
                None
            };
            exact && residual.is_none_or(|r| r < tol)
        }
    };
    doc.insert("tol".into(), num(tol));
    doc.insert("passed".into(), passed.into());
    let mut report = Report::json(doc);
    report.passed = passed;
    Ok(report)
}

fn table(n: usize, lmin: i64, lmax: i64) -> Result<Report, CliError> {
    require_n(n, 1, "table")?;
    if lmin > lmax {
        return Err(CliError::Usage(format!("empty range: lmin = {lmin} > lmax = {lmax}")));
    }
    let mut rows = Vec::new();
    let mut items = Vec::new();
    for l in lmin..=lmax {
        let (class, coeff, exact, exponent) = match beta_monomial(l, n)? {
            BetaImage::Zero => ("zero".to_string(), 0.0, "0".to_string(), None),
            BetaImage::Monomial(m) => {
                let (c, e) = m.axis_restriction()?;
                (format!("P^({})", m.index), c.to_f64(), c.to_string(), Some(e))
            }
        };
        rows.push(vec![
            output::SCHEMA.to_string(),
            n.to_string(),
            l.to_string(),
            class.clone(),
            cell(&num(coeff)),
            exact.clone(),
            exponent.map(|e| e.to_string()).unwrap_or_default(),
        ]);
        let mut item = Map::new();
        item.insert("l".into(), l.into());
        item.insert("class".into(), class.into());
        item.insert("axis_coefficient".into(), num(coeff));
        item.insert("axis_coefficient_exact".into(), exact.into());
        item.insert("axis_exponent".into(), exponent.map(Value::from).unwrap_or(Value::Null));
        items.push(Value::Object(item));
    }
    let mut doc = document("table");
    doc.insert("n".into(), n.into());
    doc.insert("rows".into(), Value::Array(items));
    Ok(Report {
        json: doc,
        csv: Some((
            vec!["schema", "n", "l", "class", "axis_coefficient", "axis_coefficient_exact", "axis_exponent"],
            rows,
        )),
        default_format: Format::Csv,
        passed: true,
    })
}

fn kernel(which: Which, n: usize, x0: f64, r: f64, quad: usize) -> Result<Report, CliError> {
    require_n(n, 2, "kernel")?;
    if !(x0.is_finite() && r.is_finite() && r >= 0.0) {
        return Err(CliError::Usage(format!("need finite x0 and r >= 0, got x0 = {x0}, r = {r}")));
    }
    let q = QuadratureSpec::new(quad)?;
    let x = Paravector::axial(n, x0, r)?;
    let k = k_kernel(which, n, &x, q)?;
    let name = match which {
        Which::Plus => "plus",
        Which::Minus => "minus",
    };
    let mut doc = document("kernel");
    doc.insert("which".into(), name.into());
    doc.insert("n".into(), n.into());
    doc.insert("x0".into(), num(x0));
    doc.insert("r".into(), num(r));
    doc.insert("quad".into(), quad.into());
    doc.insert("a".into(), num(k.x0));
    doc.insert("b".into(), num(k.vec[0]));
    doc.insert("value".into(), nums(&k.to_vec()));
    let row = vec![
        name.to_string(),
        n.to_string(),
        cell(&num(x0)),
        cell(&num(r)),
        quad.to_string(),
        cell(&num(k.x0)),
        cell(&num(k.vec[0])),
    ];
    let mut report = Report::json(doc);
    report.csv = Some((vec!["which", "n", "x0", "r", "quad", "a", "b"], vec![row]));
    Ok(report)
}

fn contour_json(c: &ContourSpec) -> Value {
    let mut m = Map::new();
    m.insert("center".into(), nums(&[c.center().0, c.center().1]));
    m.insert("radius".into(), num(c.radius()));
    m.insert("samples".into(), c.samples().into());
    Value::Object(m)
}

pub struct Expansion {
    l_range: (i64, i64),
    center: Option<f64>,
    radius: Option<f64>,
}

fn inverse(
    config: &Path,
    series: &Path,
    n: usize,
    points: &[String],
    expansion: Expansion,
    t: SeriesTruncation,
) -> Result<Report, CliError> {
    require_n(n, 2, "inverse")?;
    let (lmin, lmax) = expansion.l_range;
    if lmin > lmax {
        return Err(CliError::Usage(format!("empty range: lmin = {lmin} > lmax = {lmax}")));
    }
    let c = load_contour(config)?;
    let f0 = load_series(series)?;
    let points = points.iter().map(|p| parse_point(p, n)).collect::<Result<Vec<_>, _>>()?;
    let contour = SampledContour::new(&BetaSampler { series: &f0, n }, c)?;
    let (u0, r0) = c.center();
    let center = expansion.center.unwrap_or(u0);
    let rho = expansion.radius.unwrap_or(r0 + c.radius() + 1.0);
    let g = |z: Complex64| contour.eval(n, z, &t);
    let expansion = laurent_expand(&g, center, rho, (lmin, lmax))?;
    let mut coeffs = Map::new();
    for (l, v) in expansion.coeffs() {
        coeffs.insert(l.to_string(), num(*v));
    }
    let mut exp = Map::new();
    exp.insert("center".into(), num(center));
    exp.insert("radius".into(), num(rho));
    exp.insert("coeffs".into(), Value::Object(coeffs));
    let mut values = Vec::new();
    for x in &points {
        let (x0, r, _) = x.axial_coordinates();
        let jet = contour.derivatives(n, Complex64::new(x0, r), n - 1, &t)?;
        let mut item = Map::new();
        item.insert("point".into(), nums(&x.to_vec()));
        item.insert("z".into(), nums(&[x0, r]));
        item.insert("value".into(), nums(&[jet[0].re, jet[0].im]));
        // beta of the reconstruction as (A, B); local only for odd n
        let beta = if n % 2 == 1 {
            let (a, b) = beta_from_jet(n, &jet, r)?;
            nums(&[a, b])
        } else {
            Value::Null
        };
        item.insert("beta".into(), beta);
        values.push(Value::Object(item));
    }
    let mut doc = document("inverse");
    doc.insert("n".into(), n.into());
    doc.insert("contour".into(), contour_json(&c));
    doc.insert("expansion".into(), Value::Object(exp));
    doc.insert("values".into(), Value::Array(values));
    Ok(Report::json(doc))
}

fn roundtrip(
    config: &Path,
    series: &Path,
    n: usize,
    points: &[String],
    tol: f64,
    t: SeriesTruncation,
) -> Result<Report, CliError> {
    let c = load_contour(config)?;
    let f0 = load_series(series)?;
    let points = if points.is_empty() {
        let (u0, r0) = c.center();
        let rad = 0.5 * c.radius();
        (0..8)
            .map(|j| {
                let th = std::f64::consts::TAU * j as f64 / 8.0;
                Paravector::axial(n.max(1), u0 + rad * th.cos(), r0 + rad * th.sin())
            })
            .collect::<Result<Vec<_>, _>>()?
    } else {
        points.iter().map(|p| parse_point(p, n)).collect::<Result<Vec<_>, _>>()?
    };
    let rep = roundtrip_check(&f0, n, c, &points, &t)?;
    let passed = match rep.spread {
        Some(s) => s < tol,
        None => rep.max_deviation < tol,
    };
    let mut doc = document("roundtrip");
    doc.insert("contour".into(), contour_json(&c));
    let body = serde_json::to_value(&rep).map_err(|e| CliError::Usage(e.to_string()))?;
    if let Value::Object(m) = reformat(body) {
        doc.extend(m);
    }
    doc.insert("tol".into(), num(tol));
    doc.insert("passed".into(), passed.into());
    let mut report = Report::json(doc);
    report.passed = passed;
    Ok(report)
}
