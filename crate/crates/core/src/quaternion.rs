//! Unit quaternions, points of the 2-sphere and rotations.
//!
//! SU(2) is represented by unit quaternions `a + bi + cj + dk` and the sphere
//! by pure unit quaternions. Every unit quaternion can be written as
//! `exp(theta, u) = cos(theta) + sin(theta) u` for an axis `u` on the sphere.
//!
//! Rotations act on the *right* of their argument: `u.rotate(angle, v)` is
//! the point obtained by turning `u` about `v` by `angle` radians with the
//! right-hand rule. With this convention the double cover sends
//! `q = exp(theta, u)` to the rotation by `-2 theta` about `u`, i.e.
//! `q^-1 v q = v.rotate(-2 theta, u)`.

use core::f64::consts::PI;
use core::fmt;
use core::ops::{Mul, Neg};

use libm::{atan2, cos, sin, sqrt};

use crate::tol;

/// Element of SU(2) as a unit quaternion `a + b i + c j + d k`.
#[derive(Clone, Copy, PartialEq)]
pub struct UnitQuaternion {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

/// Unit vector of R^3, identified with the pure quaternion
/// `x i + y j + z k`.
#[derive(Clone, Copy, PartialEq)]
pub struct SpherePoint {
    x: f64,
    y: f64,
    z: f64,
}

/// `exp(theta, axis)` in polar form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisAngle {
    pub theta: f64,
    pub axis: SpherePoint,
}

/// Right-hand rotation by `angle` about `axis`, applied on the right.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation {
    pub angle: f64,
    pub axis: SpherePoint,
}

/// Returned by [`UnitQuaternion::log`] for `q = +-1`, where the rotation axis
/// is undefined.
///
/// `theta` is 0 or pi. `fallback` carries the axis `i` so callers that do not
/// care about the axis can still proceed, but they have to opt into it.
#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
#[error("axis of a unit quaternion is undefined at +-1 (theta = {theta})")]
pub struct PoleError {
    pub theta: f64,
    pub fallback: AxisAngle,
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
#[error("cannot normalize the zero vector")]
pub struct ZeroVector;

fn norm4(a: f64, b: f64, c: f64, d: f64) -> f64 {
    sqrt(a * a + b * b + c * c + d * d)
}

impl UnitQuaternion {
    pub const ONE: Self = Self::raw(1.0, 0.0, 0.0, 0.0);
    pub const MINUS_ONE: Self = Self::raw(-1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::raw(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::raw(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::raw(0.0, 0.0, 0.0, 1.0);

    const fn raw(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    /// Normalizes `(a, b, c, d)` onto the unit 3-sphere.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, ZeroVector> {
        let n = norm4(a, b, c, d);
        if !n.is_finite() || n <= 0.0 {
            return Err(ZeroVector);
        }
        Ok(Self::raw(a / n, b / n, c / n, d / n))
    }

    fn renormalized(a: f64, b: f64, c: f64, d: f64) -> Self {
        let n = norm4(a, b, c, d);
        Self::raw(a / n, b / n, c / n, d / n)
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn components(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn scalar(&self) -> f64 {
        self.a
    }

    pub fn vector(&self) -> [f64; 3] {
        [self.b, self.c, self.d]
    }

    /// `cos(theta) + sin(theta) u`.
    pub fn exp(theta: f64, u: &SpherePoint) -> Self {
        let (s, c) = (sin(theta), cos(theta));
        Self::renormalized(c, s * u.x, s * u.y, s * u.z)
    }

    /// Canonical polar form with `theta` in `[0, pi]`.
    ///
    /// Fails at `+-1`, where any axis works.
    pub fn log(&self) -> Result<AxisAngle, PoleError> {
        let [x, y, z] = self.vector();
        let v = sqrt(x * x + y * y + z * z);
        if v <= tol::POLE {
            let theta = if self.a > 0.0 { 0.0 } else { PI };
            return Err(PoleError {
                theta,
                fallback: AxisAngle {
                    theta,
                    axis: SpherePoint::I,
                },
            });
        }
        Ok(AxisAngle {
            theta: atan2(v, self.a),
            axis: SpherePoint::raw(x / v, y / v, z / v),
        })
    }

    /// Rotation angle `theta` in `[0, pi]` of `exp(theta, u)`, defined
    /// everywhere including the poles.
    pub fn angle(&self) -> f64 {
        let [x, y, z] = self.vector();
        atan2(sqrt(x * x + y * y + z * z), self.a)
    }

    /// Integer power through the polar form.
    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::ONE;
        }
        match self.log() {
            Ok(AxisAngle { theta, axis }) => Self::exp(k as f64 * theta, &axis),
            Err(_) => {
                if self.a < 0.0 && k % 2 != 0 {
                    Self::MINUS_ONE
                } else {
                    Self::ONE
                }
            }
        }
    }

    pub fn inverse(&self) -> Self {
        Self::raw(self.a, -self.b, -self.c, -self.d)
    }

    /// `q^-1 self q`.
    pub fn conj(&self, q: &Self) -> Self {
        q.inverse() * *self * *q
    }

    /// `self^sign` for `sign = +-1`.
    pub fn signed_power(&self, sign: i8) -> Self {
        if sign >= 0 {
            *self
        } else {
            self.inverse()
        }
    }

    /// Euclidean distance in R^4.
    pub fn distance(&self, other: &Self) -> f64 {
        norm4(
            self.a - other.a,
            self.b - other.b,
            self.c - other.c,
            self.d - other.d,
        )
    }

    /// `|self * other - other * self|`.
    pub fn commutator_defect(&self, other: &Self) -> f64 {
        let p = *self * *other;
        let q = *other * *self;
        p.distance(&q)
    }

    pub fn norm_defect(&self) -> f64 {
        (norm4(self.a, self.b, self.c, self.d) - 1.0).abs()
    }
}

impl Mul for UnitQuaternion {
    type Output = Self;

    /// Hamilton product, renormalized.
    fn mul(self, q: Self) -> Self {
        let p = self;
        Self::renormalized(
            p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
            p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
            p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
            p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a,
        )
    }
}

impl Neg for UnitQuaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::raw(-self.a, -self.b, -self.c, -self.d)
    }
}

impl fmt::Debug for UnitQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i + {}j + {}k)", self.a, self.b, self.c, self.d)
    }
}

impl SpherePoint {
    pub const I: Self = Self::raw(1.0, 0.0, 0.0);
    pub const J: Self = Self::raw(0.0, 1.0, 0.0);
    pub const K: Self = Self::raw(0.0, 0.0, 1.0);

    const fn raw(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, ZeroVector> {
        let n = sqrt(x * x + y * y + z * z);
        if !n.is_finite() || n <= 0.0 {
            return Err(ZeroVector);
        }
        Ok(Self::raw(x / n, y / n, z / n))
    }

    fn renormalized(x: f64, y: f64, z: f64) -> Self {
        let n = sqrt(x * x + y * y + z * z);
        Self::raw(x / n, y / n, z / n)
    }

    /// `(cos phi, sin phi, 0)`, a point of the equator.
    pub fn equatorial(phi: f64) -> Self {
        Self::raw(cos(phi), sin(phi), 0.0)
    }

    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn y(&self) -> f64 {
        self.y
    }
    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, o: &Self) -> [f64; 3] {
        [
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        ]
    }

    /// Great-circle distance, accurate for nearby and antipodal points.
    pub fn distance(&self, other: &Self) -> f64 {
        let [cx, cy, cz] = self.cross(other);
        atan2(sqrt(cx * cx + cy * cy + cz * cz), self.dot(other))
    }

    /// Rodrigues rotation of `self` about `axis` by `angle`, right-hand rule.
    pub fn rotate(&self, angle: f64, axis: &SpherePoint) -> Self {
        let (s, c) = (sin(angle), cos(angle));
        let k = axis;
        let [kx, ky, kz] = k.cross(self);
        let kd = k.dot(self) * (1.0 - c);
        Self::renormalized(
            self.x * c + kx * s + k.x * kd,
            self.y * c + ky * s + k.y * kd,
            self.z * c + kz * s + k.z * kd,
        )
    }

    /// `q^-1 u q` computed as a quaternion product.
    pub fn conjugate_by(&self, q: &UnitQuaternion) -> Self {
        let p = q.inverse() * self.as_pure() * *q;
        Self::renormalized(p.b, p.c, p.d)
    }

    /// The pure unit quaternion `x i + y j + z k`.
    pub fn as_pure(&self) -> UnitQuaternion {
        UnitQuaternion::raw(0.0, self.x, self.y, self.z)
    }

    pub fn norm_defect(&self) -> f64 {
        (sqrt(self.dot(self)) - 1.0).abs()
    }
}

impl Neg for SpherePoint {
    type Output = Self;
    fn neg(self) -> Self {
        Self::raw(-self.x, -self.y, -self.z)
    }
}

impl fmt::Debug for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl AxisAngle {
    pub fn to_quaternion(&self) -> UnitQuaternion {
        UnitQuaternion::exp(self.theta, &self.axis)
    }
}

impl Rotation {
    pub fn new(angle: f64, axis: SpherePoint) -> Self {
        Self { angle, axis }
    }

    pub fn apply(&self, u: &SpherePoint) -> SpherePoint {
        u.rotate(self.angle, &self.axis)
    }

    /// Image of `q` under the double cover SU(2) -> SO(3), `v -> q^-1 v q`.
    pub fn from_quaternion(q: &UnitQuaternion) -> Self {
        match q.log() {
            Ok(AxisAngle { theta, axis }) => Self::new(-2.0 * theta, axis),
            Err(e) => Self::new(0.0, e.fallback.axis),
        }
    }
}

/// Directed angle in `[0, 2 pi)` of the rotation about `axis` taking `from`
/// to `to`. Both points are projected onto the plane orthogonal to `axis`.
pub fn directed_angle(from: &SpherePoint, axis: &SpherePoint, to: &SpherePoint) -> f64 {
    let project = |p: &SpherePoint| {
        let t = p.dot(axis);
        [p.x - t * axis.x, p.y - t * axis.y, p.z - t * axis.z]
    };
    let a = project(from);
    let b = project(to);
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let sin_part = cross[0] * axis.x + cross[1] * axis.y + cross[2] * axis.z;
    let cos_part = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let angle = atan2(sin_part, cos_part);
    if angle < 0.0 {
        angle + 2.0 * PI
    } else {
        angle
    }
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(phi: f64) -> f64 {
    let mut t = libm::fmod(phi, 2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    } else if t <= -PI {
        t += 2.0 * PI;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_2;

    fn close(p: &UnitQuaternion, q: &UnitQuaternion, eps: f64) -> bool {
        p.distance(q) < eps
    }

    #[test]
    fn basis_products() {
        use UnitQuaternion as Q;
        assert!(close(&(Q::I * Q::J), &Q::K, 1e-15));
        assert!(close(&(Q::J * Q::K), &Q::I, 1e-15));
        assert!(close(&(Q::K * Q::I), &Q::J, 1e-15));
        assert!(close(&(Q::I * Q::I), &Q::MINUS_ONE, 1e-15));
        let q = Q::new(0.3, -0.1, 0.7, 0.2).unwrap();
        assert!(close(&(q * Q::ONE), &q, 1e-15));
    }

    #[test]
    fn same_axis_exponents_add() {
        let (t, p) = (0.4, 1.9);
        let lhs = UnitQuaternion::exp(t, &SpherePoint::I) * UnitQuaternion::exp(p, &SpherePoint::I);
        assert!(close(
            &lhs,
            &UnitQuaternion::exp(t + p, &SpherePoint::I),
            1e-14
        ));
    }

    #[test]
    fn exp_values() {
        let u = SpherePoint::new(1.0, 2.0, -2.0).unwrap();
        assert!(close(
            &UnitQuaternion::exp(0.0, &u),
            &UnitQuaternion::ONE,
            1e-15
        ));
        assert!(close(
            &UnitQuaternion::exp(PI, &u),
            &UnitQuaternion::MINUS_ONE,
            1e-15
        ));
        assert!(close(
            &UnitQuaternion::exp(FRAC_PI_2, &SpherePoint::I),
            &UnitQuaternion::I,
            1e-15
        ));
    }

    #[test]
    fn log_values() {
        let l = UnitQuaternion::K.log().unwrap();
        assert!((l.theta - FRAC_PI_2).abs() < 1e-15);
        assert!(l.axis.distance(&SpherePoint::K) < 1e-15);

        let e = UnitQuaternion::MINUS_ONE.log().unwrap_err();
        assert_eq!(e.theta, PI);
        assert_eq!(e.fallback.axis, SpherePoint::I);
        assert_eq!(UnitQuaternion::ONE.log().unwrap_err().theta, 0.0);

        let q = UnitQuaternion::exp(1.2, &SpherePoint::J);
        let l = q.log().unwrap();
        assert!((l.theta - 1.2).abs() < 1e-14);
        assert!(l.axis.distance(&SpherePoint::J) < 1e-14);
    }

    #[test]
    fn log_flips_axis_for_large_angles() {
        // exp(4, u) = exp(2 pi - 4, -u)
        let u = SpherePoint::new(0.2, 0.3, 0.9).unwrap();
        let l = UnitQuaternion::exp(4.0, &u).log().unwrap();
        assert!((l.theta - (2.0 * PI - 4.0)).abs() < 1e-13);
        assert!(l.axis.distance(&-u) < 1e-13);
    }

    #[test]
    fn powers() {
        assert!(close(
            &UnitQuaternion::I.pow(-2),
            &UnitQuaternion::MINUS_ONE,
            1e-15
        ));
        let u = SpherePoint::new(-1.0, 0.5, 0.25).unwrap();
        let q = UnitQuaternion::exp(0.37, &u);
        assert!(close(
            &q.pow(7),
            &UnitQuaternion::exp(7.0 * 0.37, &u),
            1e-14
        ));
        assert_eq!(q.pow(0), UnitQuaternion::ONE);
        assert_eq!(UnitQuaternion::MINUS_ONE.pow(3), UnitQuaternion::MINUS_ONE);
        assert_eq!(UnitQuaternion::MINUS_ONE.pow(-4), UnitQuaternion::ONE);
        // agrees with repeated products
        let mut r = UnitQuaternion::ONE;
        for _ in 0..5 {
            r = r * q.inverse();
        }
        assert!(close(&q.pow(-5), &r, 1e-14));
    }

    #[test]
    fn rotate_values() {
        let v = SpherePoint::new(0.3, -0.4, 0.5).unwrap();
        assert!(v.rotate(2.1, &v).distance(&v) < 1e-15);
        assert!(
            SpherePoint::I
                .rotate(FRAC_PI_2, &SpherePoint::K)
                .distance(&SpherePoint::J)
                < 1e-15
        );
        let beta: f64 = 0.35;
        let r = SpherePoint::I.rotate(-2.0 * beta, &SpherePoint::K);
        let expected =
            SpherePoint::new(libm::cos(2.0 * beta), -libm::sin(2.0 * beta), 0.0).unwrap();
        assert!(r.distance(&expected) < 1e-15);
        // same thing through conjugation q^-1 i q with q = exp(beta, k)
        let q = UnitQuaternion::exp(beta, &SpherePoint::K);
        assert!(SpherePoint::I.conjugate_by(&q).distance(&expected) < 1e-15);
    }

    #[test]
    fn conj_values() {
        let p = UnitQuaternion::new(0.1, 0.2, 0.3, 0.4).unwrap();
        assert!(close(&p.conj(&UnitQuaternion::ONE), &p, 1e-15));
        // j^-1 i j = -(j i) j = k j = -i
        assert!(close(
            &UnitQuaternion::I.conj(&UnitQuaternion::J),
            &-UnitQuaternion::I,
            1e-15
        ));
    }

    #[test]
    fn pure_quaternion_squares_to_minus_one() {
        let u = SpherePoint::new(0.6, -0.1, 2.0).unwrap();
        let p = u.as_pure();
        assert!(close(&(p * p), &UnitQuaternion::MINUS_ONE, 1e-15));
    }

    #[test]
    fn directed_angle_right_hand() {
        let a = directed_angle(&SpherePoint::I, &SpherePoint::K, &SpherePoint::J);
        assert!((a - FRAC_PI_2).abs() < 1e-15);
        let a = directed_angle(&SpherePoint::J, &SpherePoint::K, &SpherePoint::I);
        assert!((a - 3.0 * FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn wrap_angle_range() {
        assert!((wrap_angle(PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(3.0 * PI + 0.5) - (-PI + 0.5)).abs() < 1e-12);
        assert!((wrap_angle(-0.25) + 0.25).abs() < 1e-15);
    }

    #[test]
    fn zero_vector_rejected() {
        assert!(SpherePoint::new(0.0, 0.0, 0.0).is_err());
        assert!(UnitQuaternion::new(0.0, 0.0, 0.0, 0.0).is_err());
        assert!(SpherePoint::new(f64::NAN, 0.0, 1.0).is_err());
    }
}
