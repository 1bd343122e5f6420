//! Quandle colorings of tangle diagrams.
//!
//! Spherical colorings are basepointed: arc 0 always carries `i = (1,0,0)`.
//! Rotating a coloring about `i` gives another coloring, so the colorings of a
//! 2-bridge diagram form circles, each meeting the half-equator
//! `E = {(cos b, sin b, 0) : 0 <= b <= pi}` once in the color of the second
//! bridge. [`solve_colorings`] scans `E` for those seeds.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{acos, cos, sin, sqrt};

use crate::quandle::{Dihedral, Quandle, QuandleError, Spherical};
use crate::quaternion::{directed_angle, SpherePoint};
use crate::tangle::{self, Sign, TangleDiagram, WirtingerCode};
use crate::tol;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ColoringError {
    #[error("coloring has {got} colors but the diagram has {expected} arcs")]
    ArityMismatch { expected: usize, got: usize },
    #[error("{value} is outside the admissible interval ({lo}, {hi})")]
    OutOfInterval { value: f64, lo: f64, hi: f64 },
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("root search did not converge: {0}")]
    NoConvergence(&'static str),
    #[error("constructed coloring has residual {0}")]
    ResidualTooLarge(f64),
    #[error("diagram has no propagation schedule")]
    NoSchedule,
    #[error("solver needs exactly two bridges, the diagram has {0}")]
    NotTwoBridge(usize),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
}

/// Colors of arcs `0..=n` in a quandle.
#[derive(Clone, Debug, PartialEq)]
pub struct Coloring<Q: Quandle> {
    quandle: Q,
    colors: Vec<Q::Element>,
}

impl<Q: Quandle> Coloring<Q> {
    pub fn new(quandle: Q, colors: Vec<Q::Element>) -> Self {
        Self { quandle, colors }
    }

    pub fn quandle(&self) -> &Q {
        &self.quandle
    }

    pub fn colors(&self) -> &[Q::Element] {
        &self.colors
    }

    pub fn into_colors(self) -> Vec<Q::Element> {
        self.colors
    }

    /// Largest distance between two colors.
    pub fn spread(&self) -> f64 {
        let mut best: f64 = 0.0;
        for (i, a) in self.colors.iter().enumerate() {
            for b in &self.colors[i + 1..] {
                best = best.max(self.quandle.distance(a, b));
            }
        }
        best
    }

    /// Constant colorings are always valid and carry no information.
    pub fn is_trivial(&self) -> bool {
        self.spread() <= tol::MIN_SPREAD
    }
}

/// Angle of the second bridge color on the half-equator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ColoringSeed {
    pub beta: f64,
}

/// Largest crossing defect `d(color(i), color(i-1) *^eps color(kappa i))`.
pub fn residual<Q: Quandle>(c: &Coloring<Q>, code: &WirtingerCode) -> Result<f64, ColoringError> {
    if c.colors.len() != code.arcs() {
        return Err(ColoringError::ArityMismatch {
            expected: code.arcs(),
            got: c.colors.len(),
        });
    }
    Ok((1..=code.crossings())
        .map(|i| {
            let expected = code.expected_color(&c.quandle, &c.colors, i);
            c.quandle.distance(&c.colors[i], &expected)
        })
        .fold(0.0, f64::max))
}

/// Rotates every color about `i` by `phi`.
pub fn rotate_coloring(c: &Coloring<Spherical>, phi: f64) -> Coloring<Spherical> {
    Coloring::new(
        c.quandle,
        c.colors
            .iter()
            .map(|u| u.rotate(phi, &SpherePoint::I))
            .collect(),
    )
}

/// Image of a Fox coloring on the equator of `S^2_pi`, residue `a` going to
/// angle `2 pi a / m`.
pub fn fox_to_sphere(c: &Coloring<Dihedral>) -> Coloring<Spherical> {
    let q = c.quandle;
    Coloring::new(
        Spherical::new(PI).expect("pi is admissible"),
        c.colors.iter().map(|&a| q.equatorial(a)).collect(),
    )
}

fn check_torus(n: usize, h: usize) -> Result<usize, ColoringError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(ColoringError::BadParameter(alloc::format!(
            "n must be odd and >= 3, got {n}"
        )));
    }
    let k = (n - 1) / 2;
    if h == 0 || h > k {
        return Err(ColoringError::BadParameter(alloc::format!(
            "h must lie in 1..={k}, got {h}"
        )));
    }
    Ok(k)
}

/// Open interval of `psi` for which the step-`h` star `n`-gon colors
/// `T(2,n)`: `((n - 2h) pi / n, (n + 2h) pi / n)`.
pub fn torus_interval(n: usize, h: usize) -> Result<(f64, f64), ColoringError> {
    check_torus(n, h)?;
    let (n, h) = (n as f64, h as f64);
    Ok(((n - 2.0 * h) * PI / n, (n + 2.0 * h) * PI / n))
}

/// The same interval for the conjugation class angle `theta = pi - psi / 2`.
pub fn torus_theta_interval(n: usize, h: usize) -> Result<(f64, f64), ColoringError> {
    let (lo, hi) = torus_interval(n, h)?;
    Ok((PI - hi / 2.0, PI - lo / 2.0))
}

/// Steps `h` whose star polygon colors `T(2,n)` at this `psi`.
pub fn admissible_steps(n: usize, psi: f64) -> Result<Vec<usize>, ColoringError> {
    check_torus(n, 1)?;
    let k = (n - 1) / 2;
    Ok((1..=k)
        .filter(|&h| {
            let (lo, hi) = torus_interval(n, h).expect("h in range");
            lo < psi && psi < hi
        })
        .collect())
}

fn star_vertex(n: usize, latitude: f64, i: usize) -> SpherePoint {
    let a = 2.0 * PI * (i % n) as f64 / n as f64;
    let rho = cos(latitude);
    SpherePoint::new(rho * cos(a), rho * sin(a), sin(latitude)).expect("unit vector")
}

/// Vertex angle of the step-`h` star polygon at the given latitude.
fn star_angle(n: usize, h: usize, latitude: f64) -> f64 {
    let p0 = star_vertex(n, latitude, 0);
    let p1 = star_vertex(n, latitude, h);
    let p2 = star_vertex(n, latitude, 2 * h);
    directed_angle(&p0, &p1, &p2)
}

/// Latitude of the regular star polygon with vertex angle `psi`, by
/// bisection over `(-pi/2, pi/2)` where the angle is monotone.
fn star_latitude(n: usize, h: usize, psi: f64) -> Result<f64, ColoringError> {
    // the polygon is planar up to O(margin^2) at the ends of the bracket
    const MARGIN: f64 = 1e-5;
    let mut lo = -PI / 2.0 + MARGIN;
    let mut hi = PI / 2.0 - MARGIN;
    let f = |lat: f64| star_angle(n, h, lat) - psi;
    let (f_lo, f_hi) = (f(lo), f(hi));
    if f_lo.signum() == f_hi.signum() {
        return Err(ColoringError::NoConvergence(
            "star polygon angle is not bracketed",
        ));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid).signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Rotation taking `p0` to `i` and `p1` into the closed upper half of the
/// xy-plane, as a map on points.
fn basepoint_frame(p0: SpherePoint, p1: SpherePoint) -> impl Fn(&SpherePoint) -> SpherePoint {
    let t = p1.dot(&p0);
    let e2 = SpherePoint::new(
        p1.x() - t * p0.x(),
        p1.y() - t * p0.y(),
        p1.z() - t * p0.z(),
    )
    .unwrap_or_else(|_| {
        // p1 = +-p0: any orthogonal direction works
        let c = p0.cross(&SpherePoint::K);
        SpherePoint::new(c[0], c[1], c[2])
            .or_else(|_| SpherePoint::new(0.0, 1.0, 0.0))
            .expect("unit vector")
    });
    let c = p0.cross(&e2);
    let e3 = SpherePoint::new(c[0], c[1], c[2]).expect("orthonormal frame");
    move |v: &SpherePoint| {
        SpherePoint::new(v.dot(&p0), v.dot(&e2), v.dot(&e3)).expect("unit vector")
    }
}

/// Star polygon coloring of `T(2,n)` by `S^2_psi`: `q_i` gets the vertex
/// `p_{h i}` of a regular spherical `n`-gon with vertex angle `psi`.
///
/// The polygon is moved so that arc 0 is colored `i` and `q_1` lies on the
/// half-equator, then rotated about `i` by `base_rotation`.
pub fn star_polygon(
    n: usize,
    h: usize,
    psi: f64,
    base_rotation: f64,
) -> Result<Coloring<Spherical>, ColoringError> {
    star_polygon_signed(n, h, psi, base_rotation, Sign::Positive)
}

/// [`star_polygon`] for the diagram [`tangle::torus`]`(n, sign)`. For the
/// negative diagram the polygon is built with vertex angle `2 pi - psi`,
/// which turns `*` into `*bar`.
pub fn star_polygon_signed(
    n: usize,
    h: usize,
    psi: f64,
    base_rotation: f64,
    sign: Sign,
) -> Result<Coloring<Spherical>, ColoringError> {
    let (lo, hi) = torus_interval(n, h)?;
    if !(lo < psi && psi < hi) {
        return Err(ColoringError::OutOfInterval { value: psi, lo, hi });
    }
    let quandle = Spherical::new(psi)?;
    let angle = match sign {
        Sign::Positive => psi,
        Sign::Negative => 2.0 * PI - psi,
    };
    let latitude = star_latitude(n, h, angle)?;
    let vertex = |i: usize| star_vertex(n, latitude, h * i);
    let frame = basepoint_frame(vertex(0), vertex(1));
    let colors: Vec<SpherePoint> = (0..=n)
        .map(|arc| {
            frame(&vertex(tangle::torus_q_of(n, arc))).rotate(base_rotation, &SpherePoint::I)
        })
        .collect();
    let coloring = Coloring::new(quandle, colors);
    let diagram =
        tangle::torus(n, sign).map_err(|e| ColoringError::BadParameter(alloc::format!("{e}")))?;
    let r = residual(&coloring, diagram.code())?;
    if r > tol::COLORING {
        return Err(ColoringError::ResidualTooLarge(r));
    }
    Ok(coloring)
}

/// The two seed angles of the figure-eight knot at `psi` in
/// `[2 pi / 3, 4 pi / 3]`.
///
/// With `c = cos psi` and `s = sqrt(4c^2 - 4c - 3)`:
/// `beta_1 = pi - acos((s - 1) / (2 (c - 1)))` and
/// `beta_2 = acos((s + 1) / (2 (c - 1)))`. Both equal `acos(-1/3)` at the
/// ends of the interval.
pub fn fig8_betas(psi: f64) -> Result<(f64, f64), ColoringError> {
    let (lo, hi) = (2.0 * PI / 3.0, 4.0 * PI / 3.0);
    if !(psi >= lo - 1e-12 && psi <= hi + 1e-12) {
        return Err(ColoringError::OutOfInterval { value: psi, lo, hi });
    }
    let c = cos(psi);
    let disc = (2.0 * c - 3.0) * (2.0 * c + 1.0);
    let s = if disc <= tol::DISCRIMINANT {
        0.0
    } else {
        sqrt(disc)
    };
    let clamp = |x: f64| x.clamp(-1.0, 1.0);
    let beta1 = PI - acos(clamp((s - 1.0) / (2.0 * (c - 1.0))));
    let beta2 = acos(clamp((s + 1.0) / (2.0 * (c - 1.0))));
    Ok((beta1, beta2))
}

/// Closed-form figure-eight coloring: `u_0 = i`, `u_2` on the equator at
/// `beta_branch`, `u_1 = u_0 * u_2`, `u_3 = u_0 * u_1`, terminal arc `u_0`.
pub fn fig8_coloring(
    psi: f64,
    branch: u8,
    base_rotation: f64,
) -> Result<Coloring<Spherical>, ColoringError> {
    let (b1, b2) = fig8_betas(psi)?;
    let beta = match branch {
        1 => b1,
        2 => b2,
        _ => {
            return Err(ColoringError::BadParameter(alloc::format!(
                "branch must be 1 or 2, got {branch}"
            )))
        }
    };
    let q = Spherical::new(psi)?;
    let u0 = SpherePoint::I;
    let u2 = SpherePoint::equatorial(beta);
    let u1 = q.op(&u0, &u2);
    let u3 = q.op(&u0, &u1);
    let colors = [u0, u1, u2, u3, u0]
        .iter()
        .map(|u| u.rotate(base_rotation, &SpherePoint::I))
        .collect();
    let coloring = Coloring::new(q, colors);
    let r = residual(&coloring, tangle::figure_eight().code())?;
    if r > tol::COLORING {
        return Err(ColoringError::ResidualTooLarge(r));
    }
    Ok(coloring)
}

/// A seed found by [`solve_colorings`] with its coloring.
#[derive(Clone, Debug)]
pub struct SolvedSeed {
    pub seed: ColoringSeed,
    pub residual: f64,
    pub coloring: Coloring<Spherical>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolverWarning {
    /// Two seeds less than one grid cell apart; a finer grid may reveal
    /// roots that were merged or missed.
    GridTooCoarse { beta_a: f64, beta_b: f64 },
}

#[derive(Clone, Debug, Default)]
pub struct SolveReport {
    pub seeds: Vec<SolvedSeed>,
    pub warnings: Vec<SolverWarning>,
}

impl SolveReport {
    pub fn betas(&self) -> Vec<f64> {
        self.seeds.iter().map(|s| s.seed.beta).collect()
    }
}

/// Propagates the coloring with bridge colors `i` and `(cos b, sin b, 0)`.
pub fn seed_coloring(
    d: &TangleDiagram,
    q: Spherical,
    beta: f64,
) -> Result<Coloring<Spherical>, ColoringError> {
    let s = two_bridge(d)?;
    let colors = s.propagate(
        d.code(),
        &q,
        &[SpherePoint::I, SpherePoint::equatorial(beta)],
    );
    Ok(Coloring::new(q, colors))
}

fn two_bridge(d: &TangleDiagram) -> Result<&tangle::Schedule, ColoringError> {
    let s = d.schedule().ok_or(ColoringError::NoSchedule)?;
    if s.bridges().len() != 2 {
        return Err(ColoringError::NotTwoBridge(s.bridges().len()));
    }
    Ok(s)
}

/// Defect of the residual crossings for the seed `beta`.
fn seed_defect(d: &TangleDiagram, q: &Spherical, beta: f64) -> f64 {
    let s = d.schedule().expect("checked by caller");
    let colors = s.propagate(
        d.code(),
        q,
        &[SpherePoint::I, SpherePoint::equatorial(beta)],
    );
    s.residual_crossings()
        .iter()
        .map(|&c| colors[c].distance(&d.code().expected_color(q, &colors, c)))
        .fold(0.0, f64::max)
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a minimum of `f` on `[a, b]`.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    [(x, fx), (c, fc), (d, fd)].into_iter().fold(
        (x, fx),
        |best, cand| if cand.1 < best.1 { cand } else { best },
    )
}

/// Finds the nontrivial seeds of a 2-bridge diagram colored by `S^2_psi`.
///
/// Samples the residual-crossing defect at `grid` points of `[0, pi]`,
/// refines every local minimum by golden-section search and keeps those
/// whose defect is below the coloring tolerance. The trivial seed `beta = 0`
/// and duplicates are dropped.
pub fn solve_colorings(
    d: &TangleDiagram,
    psi: f64,
    grid: usize,
) -> Result<SolveReport, ColoringError> {
    two_bridge(d)?;
    if grid < 3 {
        return Err(ColoringError::BadParameter(alloc::format!(
            "grid must be at least 3, got {grid}"
        )));
    }
    let q = Spherical::new(psi)?;
    let step = PI / (grid - 1) as f64;
    let betas: Vec<f64> = (0..grid).map(|j| j as f64 * step).collect();
    let values: Vec<f64> = betas.iter().map(|&b| seed_defect(d, &q, b)).collect();

    let mut report = SolveReport::default();
    for j in 1..grid {
        let left = values[j] <= values[j - 1];
        let right = j + 1 == grid || values[j] <= values[j + 1];
        if !(left && right) {
            continue;
        }
        let lo = betas[j - 1];
        let hi = if j + 1 == grid { PI } else { betas[j + 1] };
        let (beta, defect) = golden_min(|b| seed_defect(d, &q, b), lo, hi, 1e-13);
        if beta < tol::SEED_DEDUP || defect > tol::COLORING {
            continue;
        }
        let coloring = seed_coloring(d, q, beta)?;
        if coloring.is_trivial() {
            continue;
        }
        if let Some(prev) = report
            .seeds
            .iter_mut()
            .find(|s| (s.seed.beta - beta).abs() < tol::SEED_DEDUP)
        {
            if defect < prev.residual {
                *prev = SolvedSeed {
                    seed: ColoringSeed { beta },
                    residual: defect,
                    coloring,
                };
            }
            continue;
        }
        report.seeds.push(SolvedSeed {
            seed: ColoringSeed { beta },
            residual: defect,
            coloring,
        });
    }
    for pair in report.seeds.windows(2) {
        let (a, b) = (pair[0].seed.beta, pair[1].seed.beta);
        if (b - a).abs() < step {
            report.warnings.push(SolverWarning::GridTooCoarse {
                beta_a: a,
                beta_b: b,
            });
        }
    }
    Ok(report)
}

/// All colorings by `R_m` with arc 0 colored `0`, by enumerating the colors
/// of the remaining bridges. Includes the trivial coloring.
pub fn fox_colorings(d: &TangleDiagram, m: u64) -> Result<Vec<Coloring<Dihedral>>, ColoringError> {
    if m < 3 {
        return Err(ColoringError::BadParameter(alloc::format!(
            "dihedral order must be >= 3, got {m}"
        )));
    }
    let s = d.schedule().ok_or(ColoringError::NoSchedule)?;
    let q = Dihedral::new(m)?;
    let free = s.bridges().len() - 1;
    let total = m
        .checked_pow(free as u32)
        .ok_or(ColoringError::BadParameter(
            "too many bridge assignments".into(),
        ))?;
    let mut out = Vec::new();
    let mut bridge_colors = alloc::vec![0u64; free + 1];
    for index in 0..total {
        let mut rest = index;
        for slot in bridge_colors.iter_mut().skip(1) {
            *slot = rest % m;
            rest /= m;
        }
        let colors = s.propagate(d.code(), &q, &bridge_colors);
        let coloring = Coloring::new(q, colors);
        if residual(&coloring, d.code())? == 0.0 {
            out.push(coloring);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::{figure_eight, torus};

    #[test]
    fn intervals() {
        let (lo, hi) = torus_interval(7, 1).unwrap();
        assert!((lo - 5.0 * PI / 7.0).abs() < 1e-15 && (hi - 9.0 * PI / 7.0).abs() < 1e-15);
        let (lo, hi) = torus_interval(7, 3).unwrap();
        assert!((lo - PI / 7.0).abs() < 1e-15 && (hi - 13.0 * PI / 7.0).abs() < 1e-15);
        let (lo, hi) = torus_theta_interval(3, 1).unwrap();
        assert!((lo - PI / 6.0).abs() < 1e-15 && (hi - 5.0 * PI / 6.0).abs() < 1e-15);
        assert!(torus_interval(7, 4).is_err());
        assert!(torus_interval(6, 1).is_err());
        assert!(torus_interval(7, 0).is_err());
    }

    #[test]
    fn admissible() {
        assert_eq!(admissible_steps(7, 0.9 * PI).unwrap(), alloc::vec![1, 2, 3]);
        assert_eq!(admissible_steps(7, 0.5 * PI).unwrap(), alloc::vec![2, 3]);
        assert!(admissible_steps(7, 0.1 * PI).unwrap().is_empty());
    }

    #[test]
    fn star_polygon_out_of_interval() {
        assert!(matches!(
            star_polygon(7, 1, 0.7 * PI, 0.0),
            Err(ColoringError::OutOfInterval { .. })
        ));
        assert!(star_polygon(7, 1, 0.72 * PI, 0.0).is_ok());
        assert!(matches!(
            star_polygon(7, 1, 1.3 * PI, 0.0),
            Err(ColoringError::OutOfInterval { .. })
        ));
    }

    #[test]
    fn star_polygon_is_basepointed() {
        let c = star_polygon(5, 2, 0.8 * PI, 0.0).unwrap();
        assert!(c.colors()[0].distance(&SpherePoint::I) < 1e-15);
        let q1 = c.colors()[3];
        assert!(q1.z().abs() < 1e-15 && q1.y() >= 0.0);
        assert!(residual(&c, torus(5, Sign::Positive).unwrap().code()).unwrap() < 1e-12);
    }

    #[test]
    fn star_polygon_near_lower_bound() {
        // the polygon shrinks toward a point as psi approaches pi/3
        for eps in [1e-3, 1e-5] {
            let c = star_polygon(3, 1, PI / 3.0 + eps, 0.0).unwrap();
            let r = residual(&c, torus(3, Sign::Positive).unwrap().code()).unwrap();
            assert!(r <= tol::COLORING, "eps {eps}: {r}");
        }
    }

    #[test]
    fn star_polygon_at_pi_is_equatorial() {
        for n in [3, 5, 7] {
            for h in 1..=(n - 1) / 2 {
                let c = star_polygon(n, h, PI, 0.0).unwrap();
                assert!(c.colors().iter().all(|u| u.z().abs() < 1e-9), "n={n} h={h}");
            }
        }
    }

    #[test]
    fn betas_closed_form() {
        let t = acos(-1.0 / 3.0);
        let (a, b) = fig8_betas(2.0 * PI / 3.0).unwrap();
        assert!((a - t).abs() < 1e-12 && (b - t).abs() < 1e-12);
        let (a, b) = fig8_betas(4.0 * PI / 3.0).unwrap();
        assert!((a - t).abs() < 1e-12 && (b - t).abs() < 1e-12);
        let (a, b) = fig8_betas(PI).unwrap();
        assert!((a - 2.0 * PI / 5.0).abs() < 1e-14);
        assert!((b - 4.0 * PI / 5.0).abs() < 1e-14);
        assert!(matches!(
            fig8_betas(0.6 * PI),
            Err(ColoringError::OutOfInterval { .. })
        ));
    }

    #[test]
    fn fig8_tetrahedron() {
        for branch in [1, 2] {
            let c = fig8_coloring(2.0 * PI / 3.0, branch, 0.0).unwrap();
            let u = &c.colors()[..4];
            for i in 0..4 {
                for j in i + 1..4 {
                    assert!((u[i].dot(&u[j]) + 1.0 / 3.0).abs() < 1e-9);
                }
            }
        }
        assert!(matches!(
            fig8_coloring(0.5 * PI, 1, 0.0),
            Err(ColoringError::OutOfInterval { .. })
        ));
        assert!(matches!(
            fig8_coloring(PI, 3, 0.0),
            Err(ColoringError::BadParameter(_))
        ));
    }

    #[test]
    fn rotation_preserves_colorings() {
        let c = fig8_coloring(0.9 * PI, 1, 0.0).unwrap();
        let code = figure_eight().code().clone();
        let r0 = residual(&c, &code).unwrap();
        assert_eq!(rotate_coloring(&c, 0.0), c);
        let full = rotate_coloring(&c, 2.0 * PI);
        for (a, b) in full.colors().iter().zip(c.colors()) {
            assert!(a.distance(b) < 1e-12);
        }
        for k in 0..16 {
            let rc = rotate_coloring(&c, k as f64 * 0.41);
            assert!(residual(&rc, &code).unwrap() <= r0 + 1e-12);
            assert!(rc.colors()[0].distance(&SpherePoint::I) < 1e-15);
        }
    }

    #[test]
    fn residual_edge_cases() {
        let code = torus(5, Sign::Positive).unwrap().code().clone();
        let q = Spherical::new(1.0).unwrap();
        let u = SpherePoint::new(0.3, 0.2, 0.1).unwrap();
        let constant = Coloring::new(q, alloc::vec![u; 6]);
        assert!(residual(&constant, &code).unwrap() < 1e-15);
        assert!(constant.is_trivial());
        let short = Coloring::new(q, alloc::vec![u; 5]);
        assert_eq!(
            residual(&short, &code),
            Err(ColoringError::ArityMismatch {
                expected: 6,
                got: 5
            })
        );

        let c = star_polygon(5, 1, 0.9 * PI, 0.0).unwrap();
        let mut colors = c.colors().to_vec();
        colors[2] = colors[2].rotate(1e-3, &SpherePoint::K);
        let nudged = Coloring::new(*c.quandle(), colors);
        assert!(residual(&nudged, &code).unwrap() >= 1e-4);
    }

    #[test]
    fn fox_counts() {
        let nontrivial = |d: &TangleDiagram, m| {
            fox_colorings(d, m)
                .unwrap()
                .into_iter()
                .filter(|c| !c.is_trivial())
                .count()
        };
        assert_eq!(nontrivial(&figure_eight(), 5), 4);
        assert_eq!(nontrivial(&figure_eight(), 7), 0);
        assert_eq!(nontrivial(&torus(3, Sign::Positive).unwrap(), 3), 2);
        assert_eq!(nontrivial(&torus(5, Sign::Positive).unwrap(), 5), 4);
        assert_eq!(nontrivial(&torus(5, Sign::Positive).unwrap(), 3), 0);
        assert!(fox_colorings(&figure_eight(), 2).is_err());
    }

    #[test]
    fn solver_requires_schedule() {
        let d = TangleDiagram::unscheduled(figure_eight().code().clone());
        assert!(matches!(
            solve_colorings(&d, PI, 100),
            Err(ColoringError::NoSchedule)
        ));
        assert!(matches!(
            fox_colorings(&d, 5),
            Err(ColoringError::NoSchedule)
        ));
    }

    #[test]
    fn golden_section_finds_v_minimum() {
        let (x, fx) = golden_min(|x| (x - 0.3).abs(), 0.0, 1.0, 1e-13);
        assert!((x - 0.3).abs() < 1e-12 && fx < 1e-12);
    }
}
