//! Numerical verification suites run by `suknot verify`.

use std::f64::consts::PI;

use serde::Serialize;
use suknot_core::coloring::{
    self, fig8_coloring, rotate_coloring, solve_colorings, star_polygon_signed, Coloring,
};
use suknot_core::longitude::{
    eval_sphere, eval_word, fig8_closed_form, galex_lift, qn_check, t2n_closed_form,
    to_conjugation, LongitudeError,
};
use suknot_core::quandle::{
    axiom_check, eis_to_galex, iso_sphere_to_conj, ConjugationClass, Eisermann,
    GeneralizedAlexander, Quandle, QuandleInstance, Spherical,
};
use suknot_core::quaternion::{Rotation, UnitQuaternion};
use suknot_core::sample;
use suknot_core::tangle::{figure_eight, torus, Sign, TangleDiagram};
use suknot_core::tol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Axioms,
    Torus,
    Fig8,
    Lift,
    Mirror,
    All,
}

/// Largest deviation observed for one property.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub samples: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// One line of the torus table.
#[derive(Clone, Debug, Serialize)]
pub struct TorusRow {
    pub n: usize,
    pub h: usize,
    pub theta: f64,
    pub error: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub torus_table: Vec<TorusRow>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Running maximum of a deviation; errors count as infinite deviation.
struct Tracker {
    suite: &'static str,
    name: String,
    tolerance: f64,
    samples: usize,
    max: f64,
}

impl Tracker {
    fn new(suite: &'static str, name: impl Into<String>, tolerance: f64) -> Self {
        Self {
            suite,
            name: name.into(),
            tolerance,
            samples: 0,
            max: 0.0,
        }
    }

    fn add(&mut self, value: f64) {
        self.samples += 1;
        if value.is_nan() || value > self.max {
            self.max = if value.is_nan() { f64::INFINITY } else { value };
        }
    }

    fn add_result(&mut self, value: Result<f64, LongitudeError>) {
        self.add(value.unwrap_or(f64::INFINITY));
    }

    fn finish(self) -> Check {
        Check {
            suite: self.suite,
            name: self.name,
            samples: self.samples,
            passed: self.max <= self.tolerance,
            max_deviation: self.max,
            tolerance: self.tolerance,
        }
    }
}

/// `count` points evenly spread over `(lo + margin, hi - margin)`.
pub fn interior_grid(lo: f64, hi: f64, margin: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo + margin, hi - margin);
    (0..count)
        .map(|j| a + (b - a) * (j as f64 + 0.5) / count as f64)
        .collect()
}

const SEED: u64 = 0x5eed;

pub fn axioms() -> Report {
    let mut rng = sample::rng(SEED);
    let x = sample::unit_quaternion(&mut rng);
    let instances = [
        (
            "sphere(psi=2)",
            QuandleInstance::sphere(2.0).expect("valid"),
        ),
        (
            "conj(theta=1.1)",
            QuandleInstance::conj_class(1.1).expect("valid"),
        ),
        ("dihedral(7)", QuandleInstance::dihedral(7).expect("valid")),
        ("galex(x)", QuandleInstance::galex(x)),
        ("eis(x)", QuandleInstance::eis(x)),
    ];
    let mut checks = Vec::new();
    for (i, (name, q)) in instances.iter().enumerate() {
        let r = axiom_check(q, 500, SEED + i as u64);
        checks.push(Check {
            suite: "axioms",
            name: format!("quandle axioms {name}"),
            samples: r.triples,
            max_deviation: r.max_violation(),
            tolerance: 1e-10,
            passed: r.max_violation() <= 1e-10,
        });
    }

    let mut t = Tracker::new(
        "axioms",
        "conjugation moves the axis by the rotation of p",
        1e-10,
    );
    for _ in 0..1000 {
        let theta = sample::uniform(&mut rng, 0.0, PI);
        let u = sample::sphere_point(&mut rng);
        let p = sample::unit_quaternion(&mut rng);
        let lhs = UnitQuaternion::exp(theta, &u).conj(&p);
        let rhs = UnitQuaternion::exp(theta, &Rotation::from_quaternion(&p).apply(&u));
        t.add(lhs.distance(&rhs));
    }
    checks.push(t.finish());

    let mut t = Tracker::new("axioms", "sphere to conjugation class isomorphism", 1e-10);
    for _ in 0..500 {
        let theta = sample::uniform(&mut rng, 0.01, PI - 0.01);
        let s = Spherical::new(2.0 * PI - 2.0 * theta).expect("valid");
        let c = ConjugationClass::new(theta).expect("valid");
        let (u, v) = (
            sample::sphere_point(&mut rng),
            sample::sphere_point(&mut rng),
        );
        let f = |w| iso_sphere_to_conj(&w, theta).expect("valid");
        t.add(f(s.op(&u, &v)).distance(&c.op(&f(u), &f(v))));
    }
    checks.push(t.finish());

    let mut t = Tracker::new(
        "axioms",
        "Eisermann to generalized Alexander isomorphism",
        1e-10,
    );
    let (eis, galex) = (Eisermann::new(x), GeneralizedAlexander::new(x));
    for _ in 0..500 {
        let (g, h) = (
            sample::unit_quaternion(&mut rng),
            sample::unit_quaternion(&mut rng),
        );
        let (a, b) = (eis.element(g), eis.element(h));
        t.add(eis_to_galex(&eis.op(&a, &b)).distance(&galex.op(&g, &h)));
        t.add(eis_to_galex(&eis.op_inv(&a, &b)).distance(&galex.op_inv(&g, &h)));
    }
    checks.push(t.finish());
    Report {
        checks,
        torus_table: Vec::new(),
    }
}

/// Star colorings of `T(2,n)` for every admissible step on a grid inside
/// each coloring interval.
fn torus_cases(
    n: usize,
    samples: usize,
    sign: Sign,
) -> Vec<(usize, f64, Result<Coloring<Spherical>, LongitudeError>)> {
    let mut out = Vec::new();
    for h in 1..=(n - 1) / 2 {
        let (lo, hi) = coloring::torus_theta_interval(n, h).expect("valid");
        for theta in interior_grid(lo, hi, 0.02, samples) {
            let c = star_polygon_signed(n, h, 2.0 * PI - 2.0 * theta, 0.0, sign)
                .map_err(LongitudeError::from);
            out.push((h, theta, c));
        }
    }
    out
}

pub fn torus_suite() -> Report {
    let mut report = Report::default();
    let mut closed = Tracker::new("torus", "|L - (-cos 2n theta + sin 2n theta i)|", 1e-8);
    let mut qn = Tracker::new("torus", "|(q0 q1)^n + 1| and the q0^-2n q^n identity", 1e-9);
    let mut lambda = Tracker::new("torus", "longitude commutes with the meridian", 1e-9);
    let mut rotation = Tracker::new("torus", "longitude is fixed by rotations about i", 1e-8);
    for n in [3, 5, 7, 9] {
        let d = torus(n, Sign::Positive).expect("valid");
        for (h, theta, sphere) in torus_cases(n, 25, Sign::Positive) {
            let Ok((sphere, c)) = sphere.and_then(|s| Ok((s.clone(), to_conjugation(&s)?))) else {
                closed.add(f64::INFINITY);
                continue;
            };
            let err = eval_word(&d, &c)
                .and_then(|l| Ok(l.q().distance(&t2n_closed_form(n, theta, false)?.q())));
            report.torus_table.push(TorusRow {
                n,
                h,
                theta,
                error: err.clone().unwrap_or(f64::INFINITY),
            });
            closed.add_result(err);
            qn.add_result(qn_check(&d, &c).map(|r| {
                r.q_n
                    .distance(&UnitQuaternion::MINUS_ONE)
                    .max(r.identity_error)
            }));
            lambda.add_result(eval_word(&d, &c).map(|l| l.q().commutator_defect(&c.colors()[0])));
            rotation.add_result((|| {
                let l0 = eval_word(&d, &c)?;
                let l1 = eval_word(&d, &to_conjugation(&rotate_coloring(&sphere, 1.234))?)?;
                Ok(l0.q().distance(&l1.q()))
            })());
        }
    }
    report.checks = vec![
        closed.finish(),
        qn.finish(),
        lambda.finish(),
        rotation.finish(),
    ];
    report
}

pub fn fig8_suite() -> Report {
    let d = figure_eight();
    let mut closed = Tracker::new("fig8", "|L - fig8 closed form|", 1e-8);
    let mut right = Tracker::new("fig8", "L = 1 at theta = pi/2", 1e-9);
    let mut conj = Tracker::new("fig8", "branches are complex conjugate", 1e-8);
    for theta in interior_grid(PI / 3.0, 2.0 * PI / 3.0, 0.02, 100) {
        let psi = 2.0 * PI - 2.0 * theta;
        let mut values = Vec::new();
        for branch in [1, 2] {
            let l = fig8_coloring(psi, branch, 0.0)
                .map_err(LongitudeError::from)
                .and_then(|c| eval_word(&d, &to_conjugation(&c)?));
            closed.add_result(
                l.clone()
                    .and_then(|l| Ok(l.q().distance(&fig8_closed_form(theta, branch)?.q()))),
            );
            values.push(l);
        }
        if let [Ok(a), Ok(b)] = values.as_slice() {
            conj.add(a.q().distance(&b.q().inverse()));
        } else {
            conj.add(f64::INFINITY);
        }
    }
    for branch in [1, 2] {
        let l = fig8_coloring(PI, branch, 0.0)
            .map_err(LongitudeError::from)
            .and_then(|c| eval_word(&d, &to_conjugation(&c)?));
        right.add_result(l.map(|l| l.q().distance(&UnitQuaternion::ONE)));
        right.add_result(
            fig8_closed_form(PI / 2.0, branch).map(|l| l.q().distance(&UnitQuaternion::ONE)),
        );
    }
    Report {
        checks: vec![closed.finish(), right.finish(), conj.finish()],
        torus_table: Vec::new(),
    }
}

fn lift_error(d: &TangleDiagram, c: &Coloring<ConjugationClass>) -> Result<f64, LongitudeError> {
    Ok(galex_lift(d, c)?.distance(&eval_word(d, c)?.q()))
}

pub fn lift_suite() -> Report {
    let mut t = Tracker::new("lift", "|galex lift - longitude word|", 1e-9);
    for sign in [Sign::Positive, Sign::Negative] {
        for n in [3, 5, 7, 9] {
            let d = torus(n, sign).expect("valid");
            for (_, _, c) in torus_cases(n, 5, sign) {
                t.add_result(c.and_then(|c| lift_error(&d, &to_conjugation(&c)?)));
            }
        }
    }
    let fig8 = figure_eight();
    for theta in interior_grid(PI / 3.0, 2.0 * PI / 3.0, 0.02, 20) {
        for branch in [1, 2] {
            let c =
                fig8_coloring(2.0 * PI - 2.0 * theta, branch, 0.0).map_err(LongitudeError::from);
            t.add_result(c.and_then(|c| lift_error(&fig8, &to_conjugation(&c)?)));
        }
    }
    for (d, psi) in [
        (fig8.clone(), 0.9 * PI),
        (torus(7, Sign::Positive).expect("valid"), 0.8 * PI),
    ] {
        match solve_colorings(&d, psi, tol::DEFAULT_GRID) {
            Ok(r) => {
                for s in r.seeds {
                    t.add_result(to_conjugation(&s.coloring).and_then(|c| lift_error(&d, &c)));
                }
            }
            Err(_) => t.add(f64::INFINITY),
        }
    }
    Report {
        checks: vec![t.finish()],
        torus_table: Vec::new(),
    }
}

pub fn mirror_suite() -> Report {
    let mut t = Tracker::new("mirror", "|L(mirror) - L^-1|", 1e-8);
    let mut closed = Tracker::new(
        "mirror",
        "|L(mirror) - (-cos 2n theta - sin 2n theta i)|",
        1e-8,
    );
    for n in [3, 5, 7] {
        let (dp, dn) = (
            torus(n, Sign::Positive).expect("valid"),
            torus(n, Sign::Negative).expect("valid"),
        );
        let pos = torus_cases(n, 10, Sign::Positive);
        let neg = torus_cases(n, 10, Sign::Negative);
        for ((_, theta, cp), (_, _, cn)) in pos.iter().zip(&neg) {
            let ln = cn.clone().and_then(|c| eval_sphere(&dn, &c));
            let lp = cp.clone().and_then(|c| eval_sphere(&dp, &c));
            t.add_result((|| Ok(ln.clone()?.q().distance(&lp?.q().inverse())))());
            closed.add_result((|| {
                Ok(ln
                    .clone()?
                    .q()
                    .distance(&t2n_closed_form(n, *theta, true)?.q()))
            })());
        }
    }
    Report {
        checks: vec![t.finish(), closed.finish()],
        torus_table: Vec::new(),
    }
}

pub fn run(suite: Suite) -> Report {
    match suite {
        Suite::Axioms => axioms(),
        Suite::Torus => torus_suite(),
        Suite::Fig8 => fig8_suite(),
        Suite::Lift => lift_suite(),
        Suite::Mirror => mirror_suite(),
        Suite::All => {
            let mut all = Report::default();
            for s in [
                Suite::Axioms,
                Suite::Torus,
                Suite::Fig8,
                Suite::Lift,
                Suite::Mirror,
            ] {
                let r = run(s);
                all.checks.extend(r.checks);
                all.torus_table.extend(r.torus_table);
            }
            all
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_stays_inside() {
        let g = interior_grid(0.0, 1.0, 0.1, 4);
        assert_eq!(g.len(), 4);
        assert!(g.iter().all(|&x| x > 0.1 && x < 0.9));
    }

    #[test]
    fn tracker_counts_errors_as_failures() {
        let mut t = Tracker::new("x", "y", 1.0);
        t.add(0.5);
        t.add_result(Err(LongitudeError::NegativeDiscriminant(-1.0)));
        let c = t.finish();
        assert!(!c.passed);
        assert_eq!(c.samples, 2);
    }
}
