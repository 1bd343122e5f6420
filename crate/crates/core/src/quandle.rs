//! Quandles over SU(2) and the sphere.
//!
//! Each concrete quandle implements [`Quandle`] with a typed element. The
//! [`QuandleInstance`] / [`QElement`] pair wraps all of them behind one
//! dynamically checked interface, used for axiom checks and by callers that
//! pick the quandle at run time.

use core::f64::consts::PI;

use rand::Rng;

use crate::quaternion::{SpherePoint, UnitQuaternion};
use crate::sample;
use crate::tangle::Sign;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum QuandleError {
    #[error("elements do not belong to the same quandle instance")]
    MixedQuandle,
    #[error("invalid quandle parameter: {0}")]
    BadParameter(&'static str),
    #[error("quaternion is not in the conjugacy class (angle {angle}, expected {theta})")]
    NotInClass { angle: f64, theta: f64 },
    #[error("pair (a, g) violates a = g^-1 x g by {defect}")]
    NotEisermannPair { defect: f64 },
}

/// A set with a right-distributive, idempotent operation whose right
/// translations are bijections.
pub trait Quandle {
    type Element: Clone + core::fmt::Debug;

    /// `a * b`.
    fn op(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    /// `a *bar b`, the inverse of the right translation by `b`.
    fn op_inv(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;

    /// Metric used to measure crossing defects.
    fn distance(&self, a: &Self::Element, b: &Self::Element) -> f64;

    /// `a *^sign b`: `op` at positive crossings, `op_inv` at negative ones.
    fn act(&self, a: &Self::Element, b: &Self::Element, sign: Sign) -> Self::Element {
        match sign {
            Sign::Positive => self.op(a, b),
            Sign::Negative => self.op_inv(a, b),
        }
    }
}

/// Spherical quandle: `u * v` rotates `u` about `v` by `psi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spherical {
    psi: f64,
}

impl Spherical {
    /// `psi` must lie in `(0, 2 pi)`.
    pub fn new(psi: f64) -> Result<Self, QuandleError> {
        if !(psi > 0.0 && psi < 2.0 * PI) {
            return Err(QuandleError::BadParameter(
                "sphere angle psi must lie in (0, 2pi)",
            ));
        }
        Ok(Self { psi })
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    /// The conjugation class angle `theta = pi - psi / 2` this quandle is
    /// isomorphic to.
    pub fn theta(&self) -> f64 {
        PI - self.psi / 2.0
    }
}

impl Quandle for Spherical {
    type Element = SpherePoint;

    fn op(&self, a: &SpherePoint, b: &SpherePoint) -> SpherePoint {
        a.rotate(self.psi, b)
    }

    fn op_inv(&self, a: &SpherePoint, b: &SpherePoint) -> SpherePoint {
        a.rotate(-self.psi, b)
    }

    fn distance(&self, a: &SpherePoint, b: &SpherePoint) -> f64 {
        a.distance(b)
    }
}

/// Conjugacy class `{exp(theta, u)}` of SU(2) under `a * b = b^-1 a b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConjugationClass {
    theta: f64,
}

impl ConjugationClass {
    /// `theta` must lie in `(0, pi)`; the classes of `+-1` are single points.
    pub fn new(theta: f64) -> Result<Self, QuandleError> {
        if !(theta > 0.0 && theta < PI) {
            return Err(QuandleError::BadParameter(
                "class angle theta must lie in (0, pi)",
            ));
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The spherical quandle angle `psi = 2 pi - 2 theta`.
    pub fn psi(&self) -> f64 {
        2.0 * PI - 2.0 * self.theta
    }

    pub fn from_axis(&self, u: &SpherePoint) -> UnitQuaternion {
        UnitQuaternion::exp(self.theta, u)
    }

    /// Checks that `q` has rotation angle `theta`.
    pub fn element(&self, q: UnitQuaternion) -> Result<UnitQuaternion, QuandleError> {
        let angle = q.angle();
        if (angle - self.theta).abs() > tol::DERIVED {
            return Err(QuandleError::NotInClass {
                angle,
                theta: self.theta,
            });
        }
        Ok(q)
    }

    /// The basepoint `exp(theta, i)`.
    pub fn basepoint(&self) -> UnitQuaternion {
        self.from_axis(&SpherePoint::I)
    }
}

impl Quandle for ConjugationClass {
    type Element = UnitQuaternion;

    fn op(&self, a: &UnitQuaternion, b: &UnitQuaternion) -> UnitQuaternion {
        a.conj(b)
    }

    fn op_inv(&self, a: &UnitQuaternion, b: &UnitQuaternion) -> UnitQuaternion {
        a.conj(&b.inverse())
    }

    fn distance(&self, a: &UnitQuaternion, b: &UnitQuaternion) -> f64 {
        a.distance(b)
    }
}

/// Dihedral quandle `R_m`: `i * j = 2j - i (mod m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dihedral {
    m: u64,
}

impl Dihedral {
    pub fn new(m: u64) -> Result<Self, QuandleError> {
        if m == 0 {
            return Err(QuandleError::BadParameter(
                "dihedral order must be positive",
            ));
        }
        Ok(Self { m })
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    /// Equatorial point at angle `2 pi a / m`, the image of `a` in the
    /// spherical quandle with `psi = pi`.
    pub fn equatorial(&self, a: u64) -> SpherePoint {
        SpherePoint::equatorial(2.0 * PI * (a % self.m) as f64 / self.m as f64)
    }
}

impl Quandle for Dihedral {
    type Element = u64;

    fn op(&self, a: &u64, b: &u64) -> u64 {
        (2 * (b % self.m) + self.m - a % self.m) % self.m
    }

    fn op_inv(&self, a: &u64, b: &u64) -> u64 {
        self.op(a, b)
    }

    fn distance(&self, a: &u64, b: &u64) -> f64 {
        if a % self.m == b % self.m {
            0.0
        } else {
            1.0
        }
    }
}

/// Generalized Alexander quandle on SU(2) with `f(g) = x^-1 g x`:
/// `a * b = f(a b^-1) b`.
///
/// SU(2) is perfect, so this is the quandle on the commutator subgroup.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneralizedAlexander {
    x: UnitQuaternion,
}

impl GeneralizedAlexander {
    pub fn new(x: UnitQuaternion) -> Self {
        Self { x }
    }

    pub fn x(&self) -> UnitQuaternion {
        self.x
    }
}

impl Quandle for GeneralizedAlexander {
    type Element = UnitQuaternion;

    fn op(&self, a: &UnitQuaternion, b: &UnitQuaternion) -> UnitQuaternion {
        (*a * b.inverse()).conj(&self.x) * *b
    }

    fn op_inv(&self, a: &UnitQuaternion, b: &UnitQuaternion) -> UnitQuaternion {
        (*a * b.inverse()).conj(&self.x.inverse()) * *b
    }

    fn distance(&self, a: &UnitQuaternion, b: &UnitQuaternion) -> f64 {
        a.distance(b)
    }
}

/// Element `(a, g)` of an Eisermann quandle, `a = g^-1 x g`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EisElement {
    pub a: UnitQuaternion,
    pub g: UnitQuaternion,
}

/// Eisermann quandle of the pointed group `(SU(2), x)`:
/// `(a, g) * (b, h) = (b^-1 a b, x^-1 g b)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Eisermann {
    x: UnitQuaternion,
}

impl Eisermann {
    pub fn new(x: UnitQuaternion) -> Self {
        Self { x }
    }

    pub fn x(&self) -> UnitQuaternion {
        self.x
    }

    /// `(g^-1 x g, g)`.
    pub fn element(&self, g: UnitQuaternion) -> EisElement {
        EisElement {
            a: self.x.conj(&g),
            g,
        }
    }

    /// The basepoint `(x, 1)`.
    pub fn basepoint(&self) -> EisElement {
        EisElement {
            a: self.x,
            g: UnitQuaternion::ONE,
        }
    }

    pub fn validate(&self, e: EisElement) -> Result<EisElement, QuandleError> {
        let defect = self.pair_defect(&e);
        if defect > tol::DERIVED {
            return Err(QuandleError::NotEisermannPair { defect });
        }
        Ok(e)
    }

    pub fn pair_defect(&self, e: &EisElement) -> f64 {
        e.a.distance(&self.x.conj(&e.g))
    }

    /// `e *^sign (b, h)`. The product only reads the first coordinate `b` of
    /// the right factor, so colorings can be lifted arc by arc.
    pub fn act_by(&self, e: &EisElement, b: &UnitQuaternion, sign: Sign) -> EisElement {
        match sign {
            Sign::Positive => EisElement {
                a: e.a.conj(b),
                g: self.x.inverse() * e.g * *b,
            },
            Sign::Negative => EisElement {
                a: e.a.conj(&b.inverse()),
                g: self.x * e.g * b.inverse(),
            },
        }
    }
}

impl Quandle for Eisermann {
    type Element = EisElement;

    fn op(&self, a: &EisElement, b: &EisElement) -> EisElement {
        self.act_by(a, &b.a, Sign::Positive)
    }

    fn op_inv(&self, a: &EisElement, b: &EisElement) -> EisElement {
        self.act_by(a, &b.a, Sign::Negative)
    }

    fn distance(&self, a: &EisElement, b: &EisElement) -> f64 {
        a.a.distance(&b.a).max(a.g.distance(&b.g))
    }
}

/// The isomorphism `S^2_psi -> C_theta`, `u -> exp(theta, u)`, where
/// `psi = 2 pi - 2 theta`.
pub fn iso_sphere_to_conj(u: &SpherePoint, theta: f64) -> Result<UnitQuaternion, QuandleError> {
    Ok(ConjugationClass::new(theta)?.from_axis(u))
}

/// The isomorphism `Eis(SU(2), x) -> GAlex(SU(2), f_x)`, `(a, g) -> g`.
pub fn eis_to_galex(e: &EisElement) -> UnitQuaternion {
    e.g
}

/// Whether `l` lies in the centralizer of `x`, i.e. in the circle
/// `{exp(beta, axis(x))}` when `x != +-1`.
pub fn centralizer_angle_check(l: &UnitQuaternion, x: &UnitQuaternion) -> bool {
    l.commutator_defect(x) <= tol::LAMBDA
}

/// Run-time choice of one of the quandles above.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QuandleInstance {
    Sphere(Spherical),
    ConjClass(ConjugationClass),
    Dihedral(Dihedral),
    GAlex(GeneralizedAlexander),
    Eis(Eisermann),
}

/// Element of a [`QuandleInstance`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QElement {
    Point(SpherePoint),
    Quaternion(UnitQuaternion),
    Residue(u64),
    Pair(EisElement),
}

impl QuandleInstance {
    pub fn sphere(psi: f64) -> Result<Self, QuandleError> {
        Spherical::new(psi).map(Self::Sphere)
    }

    pub fn conj_class(theta: f64) -> Result<Self, QuandleError> {
        ConjugationClass::new(theta).map(Self::ConjClass)
    }

    pub fn dihedral(m: u64) -> Result<Self, QuandleError> {
        Dihedral::new(m).map(Self::Dihedral)
    }

    pub fn galex(x: UnitQuaternion) -> Self {
        Self::GAlex(GeneralizedAlexander::new(x))
    }

    pub fn eis(x: UnitQuaternion) -> Self {
        Self::Eis(Eisermann::new(x))
    }

    /// Whether `e` is an element of this instance.
    pub fn contains(&self, e: &QElement) -> bool {
        match (self, e) {
            (Self::Sphere(_), QElement::Point(_)) => true,
            (Self::ConjClass(q), QElement::Quaternion(p)) => q.element(*p).is_ok(),
            (Self::Dihedral(q), QElement::Residue(r)) => *r < q.order(),
            (Self::GAlex(_), QElement::Quaternion(_)) => true,
            (Self::Eis(q), QElement::Pair(p)) => q.validate(*p).is_ok(),
            _ => false,
        }
    }

    pub fn op(&self, a: &QElement, b: &QElement) -> Result<QElement, QuandleError> {
        self.act(a, b, Sign::Positive)
    }

    pub fn op_inv(&self, a: &QElement, b: &QElement) -> Result<QElement, QuandleError> {
        self.act(a, b, Sign::Negative)
    }

    pub fn act(&self, a: &QElement, b: &QElement, sign: Sign) -> Result<QElement, QuandleError> {
        if !self.contains(a) || !self.contains(b) {
            return Err(QuandleError::MixedQuandle);
        }
        Ok(match (self, a, b) {
            (Self::Sphere(q), QElement::Point(a), QElement::Point(b)) => {
                QElement::Point(q.act(a, b, sign))
            }
            (Self::ConjClass(q), QElement::Quaternion(a), QElement::Quaternion(b)) => {
                QElement::Quaternion(q.act(a, b, sign))
            }
            (Self::Dihedral(q), QElement::Residue(a), QElement::Residue(b)) => {
                QElement::Residue(q.act(a, b, sign))
            }
            (Self::GAlex(q), QElement::Quaternion(a), QElement::Quaternion(b)) => {
                QElement::Quaternion(q.act(a, b, sign))
            }
            (Self::Eis(q), QElement::Pair(a), QElement::Pair(b)) => {
                QElement::Pair(q.act(a, b, sign))
            }
            _ => return Err(QuandleError::MixedQuandle),
        })
    }

    pub fn distance(&self, a: &QElement, b: &QElement) -> Result<f64, QuandleError> {
        Ok(match (self, a, b) {
            (Self::Sphere(q), QElement::Point(a), QElement::Point(b)) => q.distance(a, b),
            (Self::ConjClass(q), QElement::Quaternion(a), QElement::Quaternion(b)) => {
                q.distance(a, b)
            }
            (Self::Dihedral(q), QElement::Residue(a), QElement::Residue(b)) => q.distance(a, b),
            (Self::GAlex(q), QElement::Quaternion(a), QElement::Quaternion(b)) => q.distance(a, b),
            (Self::Eis(q), QElement::Pair(a), QElement::Pair(b)) => q.distance(a, b),
            _ => return Err(QuandleError::MixedQuandle),
        })
    }

    /// Draws a random element.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> QElement {
        match self {
            Self::Sphere(_) => QElement::Point(sample::sphere_point(rng)),
            Self::ConjClass(q) => QElement::Quaternion(q.from_axis(&sample::sphere_point(rng))),
            Self::Dihedral(q) => QElement::Residue(rng.random_range(0..q.order())),
            Self::GAlex(_) => QElement::Quaternion(sample::unit_quaternion(rng)),
            Self::Eis(q) => QElement::Pair(q.element(sample::unit_quaternion(rng))),
        }
    }
}

/// Largest observed violation of each quandle axiom.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AxiomReport {
    /// Number of `(a, b, c)` triples examined.
    pub triples: usize,
    /// Whether every triple of the carrier was examined.
    pub exhaustive: bool,
    /// `max d(a * a, a)`.
    pub idempotence: f64,
    /// `max d((a * b) * c, (a * c) * (b * c))`.
    pub right_distributivity: f64,
    /// `max` over `d((a *bar b) * b, a)` and `d((a * b) *bar b, a)`.
    pub cancellation: f64,
}

impl AxiomReport {
    pub fn max_violation(&self) -> f64 {
        self.idempotence
            .max(self.right_distributivity)
            .max(self.cancellation)
    }

    fn record(&mut self, q: &QuandleInstance, a: &QElement, b: &QElement, c: &QElement) {
        // elements come from q itself, so the unwraps cannot fire
        let d = |x: &QElement, y: &QElement| q.distance(x, y).unwrap();
        let op = |x: &QElement, y: &QElement| q.op(x, y).unwrap();
        let inv = |x: &QElement, y: &QElement| q.op_inv(x, y).unwrap();

        self.triples += 1;
        self.idempotence = self.idempotence.max(d(&op(a, a), a));
        let lhs = op(&op(a, b), c);
        let rhs = op(&op(a, c), &op(b, c));
        self.right_distributivity = self.right_distributivity.max(d(&lhs, &rhs));
        self.cancellation = self
            .cancellation
            .max(d(&op(&inv(a, b), b), a))
            .max(d(&inv(&op(a, b), b), a));
    }
}

/// Dihedral quandles up to this order are checked exhaustively.
const EXHAUSTIVE_DIHEDRAL: u64 = 64;

/// Checks the quandle axioms on `samples` random triples drawn with a
/// ChaCha stream seeded by `seed`. Small dihedral quandles are checked on
/// every triple instead.
pub fn axiom_check(q: &QuandleInstance, samples: usize, seed: u64) -> AxiomReport {
    let mut report = AxiomReport::default();
    if let QuandleInstance::Dihedral(d) = q {
        if d.order() <= EXHAUSTIVE_DIHEDRAL {
            report.exhaustive = true;
            let m = d.order();
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        let (a, b, c) = (
                            QElement::Residue(a),
                            QElement::Residue(b),
                            QElement::Residue(c),
                        );
                        report.record(q, &a, &b, &c);
                    }
                }
            }
            return report;
        }
    }
    let mut rng = sample::rng(seed);
    for _ in 0..samples {
        let a = q.sample(&mut rng);
        let b = q.sample(&mut rng);
        let c = q.sample(&mut rng);
        report.record(q, &a, &b, &c);
    }
    report
}
