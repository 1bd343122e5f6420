//! Longitude sweeps over the class angle `theta`, written as CSV.

use std::f64::consts::PI;
use std::io;

use rayon::prelude::*;
use serde::Serialize;
use suknot_core::coloring::{
    self, fig8_betas, fig8_coloring, solve_colorings, star_polygon_signed,
};
use suknot_core::longitude::{eval_sphere, LongitudeError};
use suknot_core::quandle::Spherical;
use suknot_core::quaternion::SpherePoint;
use suknot_core::tangle::{self, TangleDiagram};

use crate::knot::Knot;

#[derive(Clone, Debug, PartialEq)]
pub enum Branches {
    All,
    Only(Vec<u32>),
}

impl Branches {
    fn keeps(&self, b: u32) -> bool {
        match self {
            Branches::All => true,
            Branches::Only(list) => list.contains(&b),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub knot: Knot,
    pub theta_min: f64,
    pub theta_max: f64,
    pub steps: usize,
    pub branches: Branches,
    /// Grid size for the seed solver on user diagrams.
    pub grid: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("invalid sweep: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Coloring(#[from] coloring::ColoringError),
    #[error(transparent)]
    Longitude(#[from] LongitudeError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// One CSV row. Uncolorable `theta` values produce a row with every other
/// field empty.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub branch: Option<u32>,
    pub beta: Option<f64>,
    #[serde(rename = "L_re")]
    pub l_re: Option<f64>,
    #[serde(rename = "L_im")]
    pub l_im: Option<f64>,
    pub phi: Option<f64>,
}

impl SweepSpec {
    fn validate(&self) -> Result<(), SweepError> {
        if self.theta_min.is_nan() || self.theta_max.is_nan() || self.theta_min >= self.theta_max {
            return Err(SweepError::BadSpec(format!(
                "theta_min {} must be below theta_max {}",
                self.theta_min, self.theta_max
            )));
        }
        if self.steps < 2 {
            return Err(SweepError::BadSpec(format!(
                "need at least 2 steps, got {}",
                self.steps
            )));
        }
        Ok(())
    }

    /// `steps` evenly spaced angles including both ends.
    pub fn thetas(&self) -> Vec<f64> {
        let h = (self.theta_max - self.theta_min) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|j| {
                if j + 1 == self.steps {
                    self.theta_max
                } else {
                    self.theta_min + j as f64 * h
                }
            })
            .collect()
    }
}

fn row(
    theta: f64,
    branch: u32,
    beta: f64,
    d: &TangleDiagram,
    c: &coloring::Coloring<Spherical>,
) -> Result<SweepRow, SweepError> {
    let l = eval_sphere(d, c)?;
    Ok(SweepRow {
        theta,
        branch: Some(branch),
        beta: Some(beta),
        l_re: Some(l.q().a()),
        l_im: Some(l.q().b()),
        phi: Some(l.phi()),
    })
}

fn empty(theta: f64) -> SweepRow {
    SweepRow {
        theta,
        branch: None,
        beta: None,
        l_re: None,
        l_im: None,
        phi: None,
    }
}

/// Rows for one angle, ordered by branch.
pub fn rows_at(spec: &SweepSpec, theta: f64) -> Result<Vec<SweepRow>, SweepError> {
    let psi = 2.0 * PI - 2.0 * theta;
    let mut rows = Vec::new();
    if psi > 0.0 && psi < 2.0 * PI {
        match &spec.knot {
            Knot::Torus { n, sign } => {
                let d = tangle::torus(*n, *sign).map_err(|e| SweepError::BadSpec(e.to_string()))?;
                for h in coloring::admissible_steps(*n, psi)? {
                    let b = h as u32;
                    if !spec.branches.keeps(b) {
                        continue;
                    }
                    let c = star_polygon_signed(*n, h, psi, 0.0, *sign)?;
                    let beta = SpherePoint::I.distance(&c.colors()[tangle::torus_arc_of(*n, 1)]);
                    rows.push(row(theta, b, beta, &d, &c)?);
                }
            }
            Knot::Fig8 => {
                if let Ok(betas) = fig8_betas(psi) {
                    let d = tangle::figure_eight();
                    for (b, beta) in [(1u32, betas.0), (2, betas.1)] {
                        if spec.branches.keeps(b) {
                            let c = fig8_coloring(psi, b as u8, 0.0)?;
                            rows.push(row(theta, b, beta, &d, &c)?);
                        }
                    }
                }
            }
            Knot::Diagram(d) => {
                let report = solve_colorings(d, psi, spec.grid)?;
                for (i, s) in report.seeds.iter().enumerate() {
                    let b = i as u32 + 1;
                    if spec.branches.keeps(b) {
                        rows.push(row(theta, b, s.seed.beta, d, &s.coloring)?);
                    }
                }
            }
        }
    }
    if rows.is_empty() {
        rows.push(empty(theta));
    }
    Ok(rows)
}

/// Evaluates the sweep. Rows are ordered by `(theta, branch)` whether or not
/// the angles are processed in parallel.
pub fn run(spec: &SweepSpec, parallel: bool) -> Result<Vec<SweepRow>, SweepError> {
    spec.validate()?;
    let thetas = spec.thetas();
    let per_theta: Vec<Vec<SweepRow>> = if parallel {
        thetas
            .par_iter()
            .map(|&t| rows_at(spec, t))
            .collect::<Result<_, _>>()?
    } else {
        thetas
            .iter()
            .map(|&t| rows_at(spec, t))
            .collect::<Result<_, _>>()?
    };
    Ok(per_theta.into_iter().flatten().collect())
}

fn number(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

/// Writes rows with 17 significant digits per number.
pub fn write_csv<W: io::Write>(rows: &[SweepRow], out: W) -> Result<(), SweepError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["theta", "branch", "beta", "L_re", "L_im", "phi"])?;
    for r in rows {
        w.write_record([
            number(Some(r.theta)),
            r.branch.map(|b| b.to_string()).unwrap_or_default(),
            number(r.beta),
            number(r.l_re),
            number(r.l_im),
            number(r.phi),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// The default `theta` range over which the knot has nontrivial colorings.
pub fn default_range(knot: &Knot) -> (f64, f64) {
    match knot {
        Knot::Torus { n, .. } => {
            let k = (n.max(&3) - 1) / 2;
            coloring::torus_theta_interval(*n, k).unwrap_or((0.0, PI))
        }
        Knot::Fig8 => (PI / 3.0, 2.0 * PI / 3.0),
        Knot::Diagram(_) => (0.0, PI),
    }
}
