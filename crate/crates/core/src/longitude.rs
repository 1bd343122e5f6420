//! The longitudinal mapping: the image of the longitude under the
//! representation given by a coloring.
//!
//! Colorings are evaluated in the conjugation class `C_theta`, where the
//! longitude word is a product of group elements. Spherical colorings are
//! converted with [`to_conjugation`].

use alloc::string::String;
use core::f64::consts::PI;

use libm::{atan2, cos, sin, sqrt};

use crate::coloring::{self, Coloring, ColoringError};
use crate::quandle::{ConjugationClass, Eisermann, QuandleError, Spherical};
use crate::quaternion::{wrap_angle, SpherePoint, UnitQuaternion};
use crate::tangle::{self, TangleDiagram};
use crate::tol;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum LongitudeError {
    #[error("value does not commute with the basepoint (defect {defect})")]
    NotInLambda { defect: f64 },
    #[error("coloring has {got} colors but the diagram has {expected} arcs")]
    ArityMismatch { expected: usize, got: usize },
    #[error("{value} is outside the admissible interval ({lo}, {hi})")]
    OutOfInterval { value: f64, lo: f64, hi: f64 },
    #[error("discriminant {0} is negative")]
    NegativeDiscriminant(f64),
    #[error("q^n is {distance} away from -1")]
    NotMinusOne { distance: f64 },
    #[error("longitude identity off by {0}")]
    IdentityMismatch(f64),
    #[error("coloring residual {0} exceeds the tolerance")]
    ResidualTooLarge(f64),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
}

impl From<ColoringError> for LongitudeError {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::ArityMismatch { expected, got } => Self::ArityMismatch { expected, got },
            ColoringError::OutOfInterval { value, lo, hi } => Self::OutOfInterval { value, lo, hi },
            ColoringError::ResidualTooLarge(r) => Self::ResidualTooLarge(r),
            ColoringError::Quandle(q) => Self::Quandle(q),
            other => Self::BadParameter(alloc::format!("{other}")),
        }
    }
}

/// A value of the longitudinal mapping, `q = exp(phi, axis)` where `axis` is
/// the axis of the basepoint (`i` for basepointed colorings).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LongitudeValue {
    q: UnitQuaternion,
    phi: f64,
}

impl LongitudeValue {
    /// `exp(phi, i)`.
    pub fn from_angle(phi: f64) -> Self {
        let phi = wrap_angle(phi);
        Self {
            q: UnitQuaternion::exp(phi, &SpherePoint::I),
            phi,
        }
    }

    /// Checks that `q` commutes with `x` and reads off its angle about the
    /// axis of `x`.
    pub fn new(q: UnitQuaternion, x: &UnitQuaternion) -> Result<Self, LongitudeError> {
        let defect = q.commutator_defect(x);
        if defect > tol::LAMBDA {
            return Err(LongitudeError::NotInLambda { defect });
        }
        let axis = x.log().map(|l| l.axis).unwrap_or(SpherePoint::I);
        let along = q.b() * axis.x() + q.c() * axis.y() + q.d() * axis.z();
        Ok(Self {
            q,
            phi: wrap_angle(atan2(along, q.a())),
        })
    }

    pub fn q(&self) -> UnitQuaternion {
        self.q
    }

    /// Angle in `(-pi, pi]`.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn inverse(&self) -> Self {
        Self {
            q: self.q.inverse(),
            phi: wrap_angle(-self.phi),
        }
    }
}

/// Sends a spherical coloring through `u -> exp(theta, u)`,
/// `theta = pi - psi / 2`.
pub fn to_conjugation(
    c: &Coloring<Spherical>,
) -> Result<Coloring<ConjugationClass>, LongitudeError> {
    let q = ConjugationClass::new(c.quandle().theta())?;
    Ok(Coloring::new(
        q,
        c.colors().iter().map(|u| q.from_axis(u)).collect(),
    ))
}

fn checked(d: &TangleDiagram, c: &Coloring<ConjugationClass>) -> Result<(), LongitudeError> {
    let r = coloring::residual(c, d.code())?;
    if r > tol::COLORING {
        return Err(LongitudeError::ResidualTooLarge(r));
    }
    Ok(())
}

/// Evaluates the longitude word `x_0^-w x_{kappa 1}^{eps 1} ... x_{kappa n}^{eps n}`.
pub fn eval_word(
    d: &TangleDiagram,
    c: &Coloring<ConjugationClass>,
) -> Result<LongitudeValue, LongitudeError> {
    checked(d, c)?;
    let code = d.code();
    let colors = c.colors();
    let x = colors[0];
    let mut q = x.pow(-code.writhe());
    for i in 1..=code.crossings() {
        q = q * colors[code.over_arc(i)].signed_power(code.sign(i).value() as i8);
    }
    LongitudeValue::new(q, &x)
}

/// Spherical convenience wrapper around [`eval_word`].
pub fn eval_sphere(
    d: &TangleDiagram,
    c: &Coloring<Spherical>,
) -> Result<LongitudeValue, LongitudeError> {
    eval_word(d, &to_conjugation(c)?)
}

/// Lifts the coloring to the Eisermann quandle starting from `(x, 1)` on
/// arc 0 and returns the second coordinate on the last arc.
///
/// The lift of a closed 1-tangle ends at `(x, L)`, so this recomputes the
/// longitude without ever forming the longitude word.
pub fn galex_lift(
    d: &TangleDiagram,
    c: &Coloring<ConjugationClass>,
) -> Result<UnitQuaternion, LongitudeError> {
    let code = d.code();
    if c.colors().len() != code.arcs() {
        return Err(LongitudeError::ArityMismatch {
            expected: code.arcs(),
            got: c.colors().len(),
        });
    }
    checked(d, c)?;
    let colors = c.colors();
    let eis = Eisermann::new(colors[0]);
    let mut e = eis.basepoint();
    for i in 1..=code.crossings() {
        e = eis.act_by(&e, &colors[code.over_arc(i)], code.sign(i));
    }
    Ok(e.g)
}

fn check_theta_for_torus(n: usize, theta: f64) -> Result<(), LongitudeError> {
    let k = (n.max(3) - 1) / 2;
    // the widest interval is the one for the largest step
    let (lo, hi) = coloring::torus_theta_interval(n, k)?;
    if !(lo < theta && theta < hi) {
        return Err(LongitudeError::OutOfInterval {
            value: theta,
            lo,
            hi,
        });
    }
    Ok(())
}

/// `-cos(2 n theta) + sin(2 n theta) i`, or its inverse for the mirror.
pub fn t2n_closed_form(
    n: usize,
    theta: f64,
    mirror: bool,
) -> Result<LongitudeValue, LongitudeError> {
    check_theta_for_torus(n, theta)?;
    let t = 2.0 * n as f64 * theta;
    let s = if mirror { -sin(t) } else { sin(t) };
    let q = UnitQuaternion::new(-cos(t), s, 0.0, 0.0).expect("unit");
    Ok(LongitudeValue {
        q,
        phi: wrap_angle(atan2(s, -cos(t))),
    })
}

/// `(cos 4t - cos 2t - 1) + s sqrt(-1 + 2 cos 4t - 4 cos 2t) sin 2t i`, with
/// `s = -1` for branch 1 and `s = +1` for branch 2 of
/// [`coloring::fig8_coloring`].
///
/// Defined on the closed interval `[pi/3, 2pi/3]`; the value is real at the
/// ends.
pub fn fig8_closed_form(theta: f64, branch: u8) -> Result<LongitudeValue, LongitudeError> {
    let sign = match branch {
        1 => -1.0,
        2 => 1.0,
        _ => {
            return Err(LongitudeError::BadParameter(alloc::format!(
                "branch must be 1 or 2, got {branch}"
            )))
        }
    };
    let (lo, hi) = (PI / 3.0, 2.0 * PI / 3.0);
    if !(theta >= lo - 1e-12 && theta <= hi + 1e-12) {
        return Err(LongitudeError::OutOfInterval {
            value: theta,
            lo,
            hi,
        });
    }
    let (c2, c4) = (cos(2.0 * theta), cos(4.0 * theta));
    let disc = -1.0 + 2.0 * c4 - 4.0 * c2;
    if disc < -tol::DISCRIMINANT {
        return Err(LongitudeError::NegativeDiscriminant(disc));
    }
    let re = c4 - c2 - 1.0;
    let root = if disc <= tol::DISCRIMINANT {
        0.0
    } else {
        sqrt(disc)
    };
    let im = sign * root * sin(2.0 * theta);
    let q = UnitQuaternion::new(re, im, 0.0, 0.0).expect("unit");
    Ok(LongitudeValue {
        q,
        phi: wrap_angle(atan2(im, re)),
    })
}

/// Angle of `L = exp(phi, i)` in `(-pi, pi]`.
pub fn longitude_angle(l: &UnitQuaternion) -> Result<f64, LongitudeError> {
    Ok(LongitudeValue::new(*l, &UnitQuaternion::I)?.phi())
}

/// Result of [`qn_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QnReport {
    /// `(q_0 q_1)^n`.
    pub q_n: UnitQuaternion,
    /// `|q_0^{-2n} q^n - L|` with `L` from [`eval_word`].
    pub identity_error: f64,
}

/// Checks `(q_0 q_1)^n = -1` for a nontrivial coloring of `T(2,n)` and the
/// identity `L = q_0^{-2n} (q_0 q_1)^n`.
pub fn qn_check(
    d: &TangleDiagram,
    c: &Coloring<ConjugationClass>,
) -> Result<QnReport, LongitudeError> {
    let n = d.code().crossings();
    if n < 3 || n.is_multiple_of(2) || d.code().writhe() != n as i64 {
        return Err(LongitudeError::BadParameter(
            "expected the positive T(2,n) diagram".into(),
        ));
    }
    if c.is_trivial() {
        return Err(LongitudeError::BadParameter("coloring is trivial".into()));
    }
    let l = eval_word(d, c)?;
    let q0 = c.colors()[tangle::torus_arc_of(n, 0)];
    let q1 = c.colors()[tangle::torus_arc_of(n, 1)];
    let q_n = (q0 * q1).pow(n as i64);
    let distance = q_n.distance(&UnitQuaternion::MINUS_ONE);
    if distance > tol::DERIVED {
        return Err(LongitudeError::NotMinusOne { distance });
    }
    let identity_error = (q0.pow(-2 * n as i64) * q_n).distance(&l.q());
    if identity_error > tol::DERIVED {
        return Err(LongitudeError::IdentityMismatch(identity_error));
    }
    Ok(QnReport {
        q_n,
        identity_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{fig8_coloring, fox_colorings, star_polygon};
    use crate::tangle::{figure_eight, torus, Sign};
    use core::f64::consts::FRAC_PI_2;

    fn close(a: &UnitQuaternion, b: &UnitQuaternion, eps: f64) -> bool {
        a.distance(b) <= eps
    }

    #[test]
    fn trivial_coloring_has_trivial_longitude() {
        let d = torus(5, Sign::Positive).unwrap();
        let q = ConjugationClass::new(0.7).unwrap();
        let c = Coloring::new(q, alloc::vec![q.basepoint(); 6]);
        assert!(close(
            &eval_word(&d, &c).unwrap().q(),
            &UnitQuaternion::ONE,
            1e-12
        ));
        assert!(close(
            &galex_lift(&d, &c).unwrap(),
            &UnitQuaternion::ONE,
            1e-12
        ));
    }

    #[test]
    fn values_at_right_angle() {
        let d = torus(3, Sign::Positive).unwrap();
        let c = to_conjugation(&star_polygon(3, 1, PI, 0.0).unwrap()).unwrap();
        assert!(close(
            &eval_word(&d, &c).unwrap().q(),
            &UnitQuaternion::ONE,
            1e-9
        ));

        let f = to_conjugation(&fig8_coloring(PI, 1, 0.0).unwrap()).unwrap();
        assert!(close(
            &eval_word(&figure_eight(), &f).unwrap().q(),
            &UnitQuaternion::ONE,
            1e-9
        ));
    }

    #[test]
    fn lift_matches_word_for_fig8() {
        for branch in [1, 2] {
            let c = to_conjugation(&fig8_coloring(PI, branch, 0.0).unwrap()).unwrap();
            let d = figure_eight();
            let w = eval_word(&d, &c).unwrap().q();
            assert!(close(&galex_lift(&d, &c).unwrap(), &w, 1e-10));
        }
    }

    #[test]
    fn closed_form_examples() {
        assert!(close(
            &t2n_closed_form(3, FRAC_PI_2, false).unwrap().q(),
            &UnitQuaternion::ONE,
            1e-15
        ));
        assert!(close(
            &t2n_closed_form(3, PI / 3.0, false).unwrap().q(),
            &UnitQuaternion::MINUS_ONE,
            1e-15
        ));
        assert!(close(
            &t2n_closed_form(3, PI / 3.0, true).unwrap().q(),
            &UnitQuaternion::MINUS_ONE,
            1e-15
        ));
        assert!(matches!(
            t2n_closed_form(3, 0.1, false),
            Err(LongitudeError::OutOfInterval { .. })
        ));

        let l = fig8_closed_form(FRAC_PI_2, 1).unwrap();
        assert!(close(&l.q(), &UnitQuaternion::ONE, 1e-15));
        assert!(l.phi().abs() < 1e-15);
        for theta in [PI / 3.0, 2.0 * PI / 3.0] {
            let end = fig8_closed_form(theta, 2).unwrap();
            assert_eq!(end.q().b(), 0.0);
            assert!(close(&end.q(), &UnitQuaternion::MINUS_ONE, 1e-15));
        }
        assert!(matches!(
            fig8_closed_form(0.3, 1),
            Err(LongitudeError::OutOfInterval { .. })
        ));
        assert!(matches!(
            fig8_closed_form(FRAC_PI_2, 0),
            Err(LongitudeError::BadParameter(_))
        ));
    }

    #[test]
    fn fig8_branches_are_conjugate() {
        let a = fig8_closed_form(0.45 * PI, 1).unwrap().q();
        let b = fig8_closed_form(0.45 * PI, 2).unwrap().q();
        assert!((a.a() - b.a()).abs() < 1e-15 && (a.b() + b.b()).abs() < 1e-15);
        assert!(a.b().abs() > 1e-3);
    }

    #[test]
    fn fig8_branch_signs() {
        let theta = 0.45 * PI;
        for branch in [1, 2] {
            let c = to_conjugation(&fig8_coloring(2.0 * PI - 2.0 * theta, branch, 0.0).unwrap())
                .unwrap();
            let l = eval_word(&figure_eight(), &c).unwrap();
            let expected = fig8_closed_form(theta, branch).unwrap();
            assert!(
                close(&l.q(), &expected.q(), 1e-8),
                "branch {branch}: {:?} vs {:?}",
                l.q(),
                expected.q()
            );
        }
    }

    #[test]
    fn angles() {
        assert_eq!(longitude_angle(&UnitQuaternion::ONE).unwrap(), 0.0);
        assert!((longitude_angle(&UnitQuaternion::MINUS_ONE).unwrap() - PI).abs() < 1e-15);
        assert!((longitude_angle(&UnitQuaternion::I).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!(matches!(
            longitude_angle(&UnitQuaternion::J),
            Err(LongitudeError::NotInLambda { .. })
        ));
        let v = LongitudeValue::from_angle(2.5);
        assert!(close(
            &v.q(),
            &UnitQuaternion::exp(2.5, &SpherePoint::I),
            1e-15
        ));
    }

    #[test]
    fn qn_on_fox_coloring() {
        let d = torus(3, Sign::Positive).unwrap();
        let fox = fox_colorings(&d, 3).unwrap();
        let c = fox.iter().find(|c| !c.is_trivial()).unwrap();
        let conj = to_conjugation(&coloring::fox_to_sphere(c)).unwrap();
        let r = qn_check(&d, &conj).unwrap();
        assert!(close(&r.q_n, &UnitQuaternion::MINUS_ONE, 1e-9));
    }

    #[test]
    fn qn_on_star_coloring() {
        let d = torus(5, Sign::Positive).unwrap();
        for h in [1, 2] {
            let c = to_conjugation(&star_polygon(5, h, 2.0 * PI - 0.9 * PI, 0.3).unwrap()).unwrap();
            let r = qn_check(&d, &c).unwrap();
            assert!(close(&r.q_n, &UnitQuaternion::MINUS_ONE, 1e-9));
            assert!(r.identity_error < 1e-9);
        }
    }

    #[test]
    fn qn_rejects_trivial_and_wrong_diagram() {
        let d = torus(3, Sign::Positive).unwrap();
        let q = ConjugationClass::new(1.0).unwrap();
        let trivial = Coloring::new(q, alloc::vec![q.basepoint(); 4]);
        assert!(qn_check(&d, &trivial).is_err());
        assert!(qn_check(&figure_eight(), &trivial).is_err());
    }

    #[test]
    fn broken_coloring_is_rejected() {
        let d = torus(3, Sign::Positive).unwrap();
        let c = to_conjugation(&star_polygon(3, 1, 0.9 * PI, 0.0).unwrap()).unwrap();
        let mut colors = c.colors().to_vec();
        colors[1] = colors[1] * UnitQuaternion::exp(0.01, &SpherePoint::I);
        let bad = Coloring::new(*c.quandle(), colors);
        assert!(matches!(
            eval_word(&d, &bad),
            Err(LongitudeError::ResidualTooLarge(_))
        ));
        let short = Coloring::new(*c.quandle(), c.colors()[..3].to_vec());
        assert!(matches!(
            eval_word(&d, &short),
            Err(LongitudeError::ArityMismatch { .. })
        ));
    }
}
