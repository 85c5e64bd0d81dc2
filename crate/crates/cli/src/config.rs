use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use finsler_core::autodiff::Coord;
use finsler_core::{Preset, Tolerances};

use crate::args::Args;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSource {
    Dsl(String),
    Preset(Preset),
}

impl FunctionSource {
    pub fn text(&self) -> String {
        match self {
            FunctionSource::Dsl(s) => s.clone(),
            FunctionSource::Preset(p) => p.source(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanAxis {
    pub coord: Coord,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl ScanAxis {
    pub fn step(&self) -> f64 {
        if self.count > 1 {
            (self.hi - self.lo) / (self.count - 1) as f64
        } else {
            0.0
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.hi
        } else {
            self.lo + self.step() * i as f64
        }
    }
}

/// Cartesian grid over some coordinates; the first axis varies slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanSpec {
    pub axes: Vec<ScanAxis>,
}

impl ScanSpec {
    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid position of a flat index, one entry per axis.
    pub fn position(&self, mut index: usize) -> Vec<usize> {
        let mut pos = vec![0; self.axes.len()];
        for (slot, axis) in self.axes.iter().enumerate().rev() {
            pos[slot] = index % axis.count;
            index /= axis.count;
        }
        pos
    }

    /// The `index`-th grid point, starting from the base point `(x, y)`.
    pub fn point(&self, index: usize, x: &[f64], y: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let (mut x, mut y) = (x.to_vec(), y.to_vec());
        for (axis, i) in self.axes.iter().zip(self.position(index)) {
            match axis.coord {
                Coord::X(c) => x[c] = axis.value(i),
                Coord::Y(c) => y[c] = axis.value(i),
            }
        }
        (x, y)
    }
}

impl FromStr for ScanSpec {
    type Err = CliError;

    /// `y1=1:2:5,y2=-1:1:3`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: String| CliError::Config(format!("invalid scan spec '{s}': {msg}"));
        let mut axes = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, range) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("'{part}' is not <coord>=<lo>:<hi>:<count>")))?;
            let coord = parse_coord(name.trim()).ok_or_else(|| bad(format!("unknown coordinate '{name}'")))?;
            let fields: Vec<&str> = range.split(':').map(str::trim).collect();
            let [lo, hi, count] = fields[..] else {
                return Err(bad(format!("'{range}' is not <lo>:<hi>:<count>")));
            };
            let lo: f64 = lo.parse().map_err(|_| bad(format!("bad bound '{lo}'")))?;
            let hi: f64 = hi.parse().map_err(|_| bad(format!("bad bound '{hi}'")))?;
            let count: usize = count.parse().map_err(|_| bad(format!("bad count '{count}'")))?;
            if !lo.is_finite() || !hi.is_finite() {
                return Err(bad("bounds must be finite".into()));
            }
            if axes.iter().any(|a: &ScanAxis| a.coord == coord) {
                return Err(bad(format!("coordinate '{name}' given twice")));
            }
            axes.push(ScanAxis { coord, lo, hi, count });
        }
        if axes.is_empty() {
            return Err(bad("no coordinates".into()));
        }
        Ok(ScanSpec { axes })
    }
}

fn parse_coord(name: &str) -> Option<Coord> {
    let (kind, idx) = name.split_at(1.min(name.len()));
    let i: usize = idx.parse().ok()?;
    if i == 0 {
        return None;
    }
    match kind {
        "x" => Some(Coord::X(i - 1)),
        "y" => Some(Coord::Y(i - 1)),
        _ => None,
    }
}

/// `"x1,..,xn;y1,..,yn"`
pub fn parse_point(s: &str) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let bad = |msg: &str| CliError::Config(format!("invalid point '{s}': {msg}"));
    let (xs, ys) = s.split_once(';').ok_or_else(|| bad("expected 'x1,..,xn;y1,..,yn'"))?;
    let list = |part: &str| -> Result<Vec<f64>, CliError> {
        part.split(',')
            .map(|v| {
                let v: f64 = v.trim().parse().map_err(|_| bad(&format!("'{}' is not a number", v.trim())))?;
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(bad("coordinates must be finite"))
                }
            })
            .collect()
    };
    Ok((list(xs)?, list(ys)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub dim: usize,
    pub source: FunctionSource,
    pub points: Vec<(Vec<f64>, Vec<f64>)>,
    pub scan: Option<ScanSpec>,
    pub tolerances: Tolerances,
    pub format: OutputFormat,
    pub fd_check: bool,
    pub seed: u64,
    /// Scan jitter as a fraction of the grid step; 0 disables it.
    pub jitter: f64,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(source: FunctionSource, dim: usize) -> Self {
        RunConfig {
            dim,
            source,
            points: Vec::new(),
            scan: None,
            tolerances: Tolerances::default(),
            format: OutputFormat::Json,
            fd_check: false,
            seed: 0,
            jitter: 0.0,
            out: None,
            csv: None,
        }
    }

    /// Configuration evaluating the preset at its default point.
    pub fn from_preset(preset: Preset) -> Self {
        let dim = preset.dim();
        let point = preset.default_point();
        let mut config = RunConfig::new(FunctionSource::Preset(preset), dim);
        config.points.push(point);
        config
    }

    pub fn from_args(args: &Args) -> Result<Self, CliError> {
        let (source, dim) = match (&args.func, &args.preset) {
            (Some(f), None) => {
                let dim = args
                    .dim
                    .ok_or_else(|| CliError::Config("--func requires --dim".into()))?;
                (FunctionSource::Dsl(f.clone()), dim)
            }
            (None, Some(name)) => {
                let preset = Preset::from_name(name, args.curvature)?;
                let dim = preset.dim();
                if let Some(d) = args.dim.filter(|d| *d != dim) {
                    return Err(CliError::Config(format!(
                        "preset '{name}' has dimension {dim}, --dim says {d}"
                    )));
                }
                (FunctionSource::Preset(preset), dim)
            }
            _ => return Err(CliError::Config("give exactly one of --func or --preset".into())),
        };
        if args.curvature.is_some() && !matches!(source, FunctionSource::Preset(Preset::RiemannConstantCurvature { .. })) {
            return Err(CliError::Config("--curvature only applies to riemann-constant-curvature".into()));
        }
        let mut config = RunConfig::new(source, dim);
        config.points = args.points.iter().map(|p| parse_point(p)).collect::<Result<_, _>>()?;
        config.scan = args.scan.as_deref().map(str::parse).transpose()?;
        if let Some(t) = args.tol {
            config.tolerances.rank_rel = t;
        }
        config.format = args.format;
        config.fd_check = args.fd_check;
        config.seed = args.seed;
        config.jitter = args.jitter;
        config.out = args.out.clone();
        config.csv = args.csv.clone();
        if config.points.is_empty() && config.scan.is_none() {
            if let FunctionSource::Preset(p) = &config.source {
                config.points.push(p.default_point());
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let err = |m: String| Err(CliError::Config(m));
        if self.dim < 2 {
            return err(format!("dimension must be at least 2, got {}", self.dim));
        }
        if self.points.is_empty() && self.scan.is_none() {
            return err("no points: give --point or --scan".into());
        }
        for (x, y) in &self.points {
            if x.len() != self.dim || y.len() != self.dim {
                return err(format!(
                    "point has {} x and {} y coordinates, expected {}",
                    x.len(),
                    y.len(),
                    self.dim
                ));
            }
        }
        if let Some(scan) = &self.scan {
            for a in &scan.axes {
                let (Coord::X(i) | Coord::Y(i)) = a.coord;
                if i >= self.dim {
                    return err(format!("scan coordinate index {} exceeds dimension {}", i + 1, self.dim));
                }
            }
        }
        let t = &self.tolerances;
        if !(t.rank_rel.is_finite() && t.rank_rel > 0.0) {
            return err(format!("tolerance must be positive, got {}", t.rank_rel));
        }
        if !(self.jitter.is_finite() && (0.0..=0.5).contains(&self.jitter)) {
            return err(format!("jitter must lie in [0, 0.5], got {}", self.jitter));
        }
        Ok(())
    }

    /// Base point of a scan: the first `--point`, else the preset default,
    /// else the origin with `y` zero.
    pub fn scan_base(&self) -> (Vec<f64>, Vec<f64>) {
        if let Some(p) = self.points.first() {
            return p.clone();
        }
        match &self.source {
            FunctionSource::Preset(p) => p.default_point(),
            FunctionSource::Dsl(_) => (vec![0.0; self.dim], vec![0.0; self.dim]),
        }
    }
}
