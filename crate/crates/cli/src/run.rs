use finsler_core::autodiff::{fd_partial, jet_of, Coord, Squared, DEFAULT_FD_STEP};
use finsler_core::distributions::{
    compare, cyclic_sum_check, integrability_check, isotropy_check, kernel_space,
    nullity_obstruction_check, nullity_space,
};
use finsler_core::jet::JetSpace;
use finsler_core::{FinslerFunction, GeometryError, PointGeometry, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::report::{
    CoincideReport, Conditions, Diagnostics, FdCheck, PointReport, Report, ScanSummary,
    SpaceReport, Tensors,
};
use crate::CliError;

/// Relative tolerance of the optional finite-difference check.
pub const FD_CHECK_REL: f64 = 1e-6;

/// Evaluates single points; shared immutably across scan workers.
#[derive(Debug, Clone)]
pub struct Evaluator {
    function: FinslerFunction,
    tolerances: Tolerances,
    fd_check: bool,
}

impl Evaluator {
    pub fn new(config: &RunConfig) -> Result<Self, CliError> {
        let source = config.source.text();
        let function = FinslerFunction::parse(&source, config.dim).map_err(|e| CliError::Parse {
            source_text: source.clone(),
            error: e,
        })?;
        Ok(Evaluator {
            function,
            tolerances: config.tolerances,
            fd_check: config.fd_check,
        })
    }

    pub fn function(&self) -> &FinslerFunction {
        &self.function
    }

    pub fn point(&self, x: Vec<f64>, y: Vec<f64>) -> PointReport {
        match self.function.at(x.clone(), y.clone()) {
            Ok(geo) => self.report(&geo),
            Err(e) => PointReport::skipped(x, y, self.skip_reason(&e)),
        }
    }

    fn skip_reason(&self, e: &GeometryError) -> String {
        match e {
            GeometryError::Eval(inner) => inner.describe(self.function.source()),
            other => other.to_string(),
        }
    }

    fn report(&self, geo: &PointGeometry) -> PointReport {
        let tol = &self.tolerances;
        let nullity = nullity_space(geo, tol);
        let kernel = kernel_space(geo, tol);
        let verdict = compare(&nullity, &kernel, tol);
        let obstruction = nullity
            .basis_vectors()
            .iter()
            .map(|v| nullity_obstruction_check(geo, v, tol))
            .collect::<Result<Vec<_>, _>>()
            .ok()
            .filter(|r| !r.is_empty());
        let z = geo.point();
        PointReport {
            x: z.x().to_vec(),
            y: z.y().to_vec(),
            f: Some(geo.finsler_value()),
            tensors: Some(Tensors {
                labels: Tensors::labels(),
                g: geo.fundamental_tensor().to_matrix(),
                n: geo.barthel_connection().to_matrix(),
                gamma: geo.cartan_horizontal_coeffs().to_rank3(),
                r: geo.h_curvature().to_rank4(),
                rhat: geo.contracted_curvature().to_rank3(),
            }),
            nullity: Some(SpaceReport {
                dim: nullity.dim(),
                basis: nullity.basis_vectors(),
            }),
            kernel: Some(SpaceReport {
                dim: kernel.dim(),
                basis: kernel.basis_vectors(),
            }),
            coincide: Some(CoincideReport {
                verdict: verdict.coincide,
                angles: verdict.principal_angles,
            }),
            conditions: Some(Conditions {
                cyclic: cyclic_sum_check(geo, tol),
                integrability: integrability_check(geo, tol),
                isotropy: isotropy_check(geo, tol),
            }),
            obstruction,
            diagnostics: Some(Diagnostics {
                det_g: geo.det_g(),
                max_abs_r: geo.h_curvature().max_abs(),
                fd_check: self.fd_check.then(|| self.fd_check_at(geo)),
            }),
            skipped: None,
        }
    }

    /// Normwise relative error per derivative order of the jet partials of
    /// `F²` against central differences; the worst order is reported.
    fn fd_check_at(&self, geo: &PointGeometry) -> FdCheck {
        let (x, y) = (geo.point().x(), geo.point().y());
        let f2 = Squared(self.function.expression());
        let jet = jet_of(&f2, x, y, 2).expect("F² is defined at a valid point");
        let space = JetSpace::shared(2 * x.len());
        let mut err = [0.0f64; 3];
        let mut size = [0.0f64; 3];
        let count = space.len(2);
        for idx in 0..count {
            let alpha = space.monomial(idx);
            let exact = jet.partial(alpha).expect("order 2");
            // a point whose neighbourhood leaves the domain gets an infinite error
            let approx = fd_partial(&f2, alpha, x, y, DEFAULT_FD_STEP).unwrap_or(f64::INFINITY);
            err[alpha.order()] = err[alpha.order()].max((exact - approx).abs());
            size[alpha.order()] = size[alpha.order()].max(exact.abs());
        }
        // orders at rounding level vanish identically and are compared absolutely
        let scale = size.iter().fold(0.0f64, |m, s| m.max(*s));
        let worst = (0..3)
            .map(|k| if size[k] > 1e-12 * scale.max(1.0) { err[k] / size[k] } else { err[k] })
            .fold(0.0f64, f64::max);
        let max_rel_error = if worst.is_finite() { worst } else { f64::MAX };
        FdCheck {
            derivatives: count,
            max_rel_error,
            passes: max_rel_error <= FD_CHECK_REL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub report: Report,
    pub exit_code: i32,
}

/// Evaluates the explicit points of `config`. Exit code 0 when every point
/// produced a report, 2 when some were skipped.
pub fn run(config: &RunConfig) -> Result<RunOutcome, CliError> {
    config.validate()?;
    let eval = Evaluator::new(config)?;
    let points: Vec<PointReport> = config
        .points
        .par_iter()
        .map(|(x, y)| eval.point(x.clone(), y.clone()))
        .collect();
    let exit_code = if points.iter().any(PointReport::is_skipped) { 2 } else { 0 };
    Ok(RunOutcome {
        report: Report {
            function: eval.function().source().to_owned(),
            dim: config.dim,
            summary: None,
            points,
        },
        exit_code,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanOutcome {
    pub report: Report,
    pub csv: String,
}

/// Evaluates every grid point of the scan spec. Skipped points are recorded,
/// never fatal.
pub fn scan(config: &RunConfig) -> Result<ScanOutcome, CliError> {
    config.validate()?;
    let spec = config
        .scan
        .as_ref()
        .ok_or_else(|| CliError::Config("no scan spec".into()))?;
    let eval = Evaluator::new(config)?;
    let (bx, by) = config.scan_base();
    let points: Vec<PointReport> = (0..spec.len())
        .into_par_iter()
        .map(|index| {
            let (mut x, mut y) = spec.point(index, &bx, &by);
            if config.jitter > 0.0 {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(index as u64);
                for axis in &spec.axes {
                    let delta = config.jitter * axis.step() * rng.gen_range(-1.0..=1.0);
                    match axis.coord {
                        Coord::X(c) => x[c] += delta,
                        Coord::Y(c) => y[c] += delta,
                    }
                }
            }
            eval.point(x, y)
        })
        .collect();
    let summary = summarize(&points);
    let csv = to_csv(config.dim, &points)?;
    Ok(ScanOutcome {
        report: Report {
            function: eval.function().source().to_owned(),
            dim: config.dim,
            summary: Some(summary),
            points,
        },
        csv,
    })
}

pub fn summarize(points: &[PointReport]) -> ScanSummary {
    let mut s = ScanSummary {
        points_total: points.len(),
        ..ScanSummary::default()
    };
    for p in points.iter().filter(|p| !p.is_skipped()) {
        s.points_valid += 1;
        if p.coincide.as_ref().is_some_and(|c| c.verdict) {
            s.coincide_count += 1;
        }
        if let Some(c) = &p.conditions {
            s.cyclic_pass += usize::from(c.cyclic.passes);
            s.integrability_pass += usize::from(c.integrability.passes);
            s.isotropy_pass += usize::from(c.isotropy.passes);
        }
    }
    s
}

fn to_csv(dim: usize, points: &[PointReport]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = vec!["index".into()];
    header.extend((1..=dim).map(|i| format!("x{i}")));
    header.extend((1..=dim).map(|i| format!("y{i}")));
    header.extend(
        [
            "valid",
            "F",
            "dim_nullity",
            "dim_kernel",
            "coincide",
            "max_angle",
            "cyclic",
            "integrability",
            "isotropy",
            "lambda",
            "skip_reason",
        ]
        .map(String::from),
    );
    w.write_record(&header)?;
    for (i, p) in points.iter().enumerate() {
        let mut row: Vec<String> = vec![i.to_string()];
        row.extend(p.x.iter().chain(&p.y).map(|v| crate::format::g17(*v)));
        match &p.skipped {
            Some(skip) => {
                row.push("false".into());
                row.extend(std::iter::repeat_n(String::new(), 9));
                row.push(skip.reason.clone());
            }
            None => {
                let c = p.conditions.as_ref().expect("valid point has conditions");
                let v = p.coincide.as_ref().expect("valid point has verdict");
                let max_angle = v.angles.iter().fold(0.0f64, |m, a| m.max(*a));
                row.push("true".into());
                row.push(crate::format::g17(p.f.expect("valid point has F")));
                row.push(p.nullity.as_ref().map_or(0, |s| s.dim).to_string());
                row.push(p.kernel.as_ref().map_or(0, |s| s.dim).to_string());
                row.push(v.verdict.to_string());
                row.push(crate::format::g17(max_angle));
                row.push(c.cyclic.passes.to_string());
                row.push(c.integrability.passes.to_string());
                row.push(c.isotropy.passes.to_string());
                row.push(c.isotropy.lambda.map(crate::format::g17).unwrap_or_default());
                row.push(String::new());
            }
        }
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV is UTF-8"))
}
