//! 1-tangle diagrams given by Wirtinger codes.
//!
//! Arcs are numbered `0..=n` in the order they are met when travelling
//! along the tangle. At the end of arc `i - 1` the strand passes under arc
//! `kappa(i)` at crossing `i` and continues as arc `i`; `eps(i)` is the sign
//! of that crossing. Crossing indices run over `1..=n`.
//!
//! Colors obey `color(i) = color(i - 1) *^eps(i) color(kappa(i))`, which is
//! the Wirtinger relation `x_i = x_k^-eps x_{i-1} x_k^eps` read in a
//! conjugation quandle.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::quandle::Quandle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TangleError {
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("invalid tangle: {0}")]
    Validation(#[from] ValidationError),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error("a tangle needs at least one crossing")]
    NoCrossings,
    #[error("kappa has {kappa} entries but eps has {eps}")]
    LengthMismatch { kappa: usize, eps: usize },
    #[error("declared n = {declared} but the code has {actual} crossings")]
    CrossingCount { declared: usize, actual: usize },
    #[error("crossing {crossing}: over-arc {arc} is outside 0..={max}")]
    OverArcOutOfRange {
        crossing: usize,
        arc: usize,
        max: usize,
    },
    #[error("first bridge must be arc 0, got {0:?}")]
    BasepointNotBridge(Option<usize>),
    #[error("bridge arc {0} is out of range or repeated")]
    BadBridge(usize),
    #[error("schedule step {target}:{crossing} does not describe an arc at that crossing")]
    BadStep { target: usize, crossing: usize },
    #[error("schedule step {target}:{crossing} uses arc {arc} before it is known")]
    UnknownDependency {
        target: usize,
        crossing: usize,
        arc: usize,
    },
    #[error("arc {0} is scheduled more than once or is a bridge")]
    ArcScheduledTwice(usize),
    #[error("arc {0} is neither a bridge nor a schedule target")]
    ArcUnscheduled(usize),
    #[error("crossing {0} is used by more than one schedule step")]
    CrossingReused(usize),
}

/// The pair `(kappa, eps)` of a 1-tangle diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerCode {
    kappa: Vec<usize>,
    signs: Vec<Sign>,
}

impl WirtingerCode {
    /// `kappa[i - 1]` and `signs[i - 1]` describe crossing `i`.
    pub fn new(kappa: Vec<usize>, signs: Vec<Sign>) -> Result<Self, ValidationError> {
        if kappa.len() != signs.len() {
            return Err(ValidationError::LengthMismatch {
                kappa: kappa.len(),
                eps: signs.len(),
            });
        }
        let n = kappa.len();
        if n == 0 {
            return Err(ValidationError::NoCrossings);
        }
        if let Some((i, &arc)) = kappa.iter().enumerate().find(|(_, &a)| a > n) {
            return Err(ValidationError::OverArcOutOfRange {
                crossing: i + 1,
                arc,
                max: n,
            });
        }
        Ok(Self { kappa, signs })
    }

    pub fn crossings(&self) -> usize {
        self.kappa.len()
    }

    /// Number of arcs, `n + 1`.
    pub fn arcs(&self) -> usize {
        self.kappa.len() + 1
    }

    pub fn kappa(&self) -> &[usize] {
        &self.kappa
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Over-arc of crossing `i` (1-based).
    pub fn over_arc(&self, crossing: usize) -> usize {
        self.kappa[crossing - 1]
    }

    /// Sign of crossing `i` (1-based).
    pub fn sign(&self, crossing: usize) -> Sign {
        self.signs[crossing - 1]
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|s| s.value()).sum()
    }

    /// The same diagram reflected in a line of the projection plane: arcs and
    /// over-arcs are kept, every sign flips. This is a diagram of the mirror
    /// image.
    pub fn mirrored(&self) -> Self {
        Self {
            kappa: self.kappa.clone(),
            signs: self.signs.iter().map(|s| s.flip()).collect(),
        }
    }

    /// `x_0^-w x_{kappa 1}^{eps 1} ... x_{kappa n}^{eps n}`.
    pub fn longitude_word(&self) -> LongitudeWord {
        LongitudeWord {
            meridian_exponent: -self.writhe(),
            factors: self
                .kappa
                .iter()
                .copied()
                .zip(self.signs.iter().copied())
                .collect(),
        }
    }

    /// Expected color of arc `crossing` given the colors of the arcs before
    /// it.
    pub fn expected_color<Q: Quandle>(
        &self,
        q: &Q,
        colors: &[Q::Element],
        crossing: usize,
    ) -> Q::Element {
        q.act(
            &colors[crossing - 1],
            &colors[self.over_arc(crossing)],
            self.sign(crossing),
        )
    }
}

/// Symbolic longitude: arc 0 raised to `meridian_exponent`, followed by the
/// over-arc factors in crossing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongitudeWord {
    pub meridian_exponent: i64,
    pub factors: Vec<(usize, Sign)>,
}

impl LongitudeWord {
    /// Number of factors including the leading meridian power.
    pub fn len(&self) -> usize {
        self.factors.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for LongitudeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x0^{}", self.meridian_exponent)?;
        for (arc, sign) in &self.factors {
            write!(f, " x{}^{}", arc, sign.value())?;
        }
        Ok(())
    }
}

/// Arc `target` is defined through `crossing`. `target == crossing` reads the
/// crossing forwards from arc `crossing - 1`; `target == crossing - 1` reads
/// it backwards from arc `crossing`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScheduleStep {
    pub target: usize,
    pub crossing: usize,
}

/// Propagation order for a diagram whose colors are determined by a few
/// bridge arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    bridges: Vec<usize>,
    steps: Vec<ScheduleStep>,
    residual: Vec<usize>,
}

impl Schedule {
    pub fn bridges(&self) -> &[usize] {
        &self.bridges
    }

    pub fn steps(&self) -> &[ScheduleStep] {
        &self.steps
    }

    /// Crossings not used by any step; they constrain the bridge colors.
    pub fn residual_crossings(&self) -> &[usize] {
        &self.residual
    }

    fn build(
        code: &WirtingerCode,
        bridges: Vec<usize>,
        steps: Vec<ScheduleStep>,
    ) -> Result<Self, ValidationError> {
        let n = code.crossings();
        if bridges.first() != Some(&0) {
            return Err(ValidationError::BasepointNotBridge(
                bridges.first().copied(),
            ));
        }
        let mut known = alloc::vec![false; n + 1];
        for &b in &bridges {
            if b > n || known[b] {
                return Err(ValidationError::BadBridge(b));
            }
            known[b] = true;
        }
        let mut used = alloc::vec![false; n + 1];
        for step in &steps {
            let ScheduleStep { target, crossing } = *step;
            if crossing == 0 || crossing > n {
                return Err(ValidationError::BadStep { target, crossing });
            }
            let source = if target == crossing {
                crossing - 1
            } else if target + 1 == crossing {
                crossing
            } else {
                return Err(ValidationError::BadStep { target, crossing });
            };
            let over = code.over_arc(crossing);
            if over == target {
                return Err(ValidationError::BadStep { target, crossing });
            }
            if used[crossing] {
                return Err(ValidationError::CrossingReused(crossing));
            }
            if known[target] {
                return Err(ValidationError::ArcScheduledTwice(target));
            }
            for arc in [source, over] {
                if !known[arc] {
                    return Err(ValidationError::UnknownDependency {
                        target,
                        crossing,
                        arc,
                    });
                }
            }
            used[crossing] = true;
            known[target] = true;
        }
        if let Some(arc) = known.iter().position(|k| !k) {
            return Err(ValidationError::ArcUnscheduled(arc));
        }
        let residual = (1..=n).filter(|&c| !used[c]).collect();
        Ok(Self {
            bridges,
            steps,
            residual,
        })
    }

    /// Colors every arc from the bridge colors, in schedule order.
    ///
    /// `bridge_colors` must have one entry per bridge.
    pub fn propagate<Q: Quandle>(
        &self,
        code: &WirtingerCode,
        q: &Q,
        bridge_colors: &[Q::Element],
    ) -> Vec<Q::Element> {
        assert_eq!(bridge_colors.len(), self.bridges.len());
        let mut colors: Vec<Option<Q::Element>> = alloc::vec![None; code.arcs()];
        for (&arc, c) in self.bridges.iter().zip(bridge_colors) {
            colors[arc] = Some(c.clone());
        }
        for step in &self.steps {
            let c = step.crossing;
            let over = colors[code.over_arc(c)]
                .clone()
                .expect("validated schedule");
            let value = if step.target == c {
                let prev = colors[c - 1].as_ref().expect("validated schedule");
                q.act(prev, &over, code.sign(c))
            } else {
                let next = colors[c].as_ref().expect("validated schedule");
                q.act(next, &over, code.sign(c).flip())
            };
            colors[step.target] = Some(value);
        }
        colors
            .into_iter()
            .map(|c| c.expect("validated schedule"))
            .collect()
    }
}

/// A Wirtinger code together with an optional propagation schedule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleDiagram {
    code: WirtingerCode,
    schedule: Option<Schedule>,
}

impl TangleDiagram {
    pub fn new(
        code: WirtingerCode,
        bridges: Vec<usize>,
        steps: Vec<ScheduleStep>,
    ) -> Result<Self, ValidationError> {
        let schedule = Schedule::build(&code, bridges, steps)?;
        Ok(Self {
            code,
            schedule: Some(schedule),
        })
    }

    /// A diagram without a schedule; it can be evaluated but not solved.
    pub fn unscheduled(code: WirtingerCode) -> Self {
        Self {
            code,
            schedule: None,
        }
    }

    pub fn code(&self) -> &WirtingerCode {
        &self.code
    }

    pub fn schedule(&self) -> Option<&Schedule> {
        self.schedule.as_ref()
    }
}

fn torus_k(n: usize) -> Result<usize, TangleError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(TangleError::BadParameter(alloc::format!(
            "torus knot T(2,n) needs odd n >= 3, got {n}"
        )));
    }
    Ok((n - 1) / 2)
}

/// Arc of `T(2,n)` carrying the color `q_i` (indices mod `n`).
///
/// Arcs `0..=k` carry `q_0, q_2, ..., q_2k`, arcs `k+1..=2k` carry
/// `q_1, q_3, ..., q_{2k-1}`, and the terminal arc `n` carries `q_0` again.
pub fn torus_arc_of(n: usize, i: usize) -> usize {
    let k = (n - 1) / 2;
    let i = i % n;
    if i.is_multiple_of(2) {
        i / 2
    } else {
        k + i.div_ceil(2)
    }
}

/// Index `i` of the color `q_i` carried by `arc` in `T(2,n)`.
pub fn torus_q_of(n: usize, arc: usize) -> usize {
    let k = (n - 1) / 2;
    if arc == n {
        0
    } else if arc <= k {
        2 * arc
    } else {
        2 * (arc - k) - 1
    }
}

/// The closed 2-braid `T(2,n)` as a 1-tangle with all crossings of the given
/// sign.
///
/// Colors satisfy `q_{i+1} = q_{i-1} *^sign q_i` with indices mod `n`. The
/// bridges are the arcs of `q_0` and `q_1`; the schedule produces
/// `q_2, q_3, ...` in order and leaves the crossing that closes the cycle,
/// `q_1 = q_{n-1} * q_0`, as the single residual constraint.
pub fn torus(n: usize, sign: Sign) -> Result<TangleDiagram, TangleError> {
    let k = torus_k(n)?;
    // crossing i lies at the end of arc i - 1 and passes under the arc of
    // the following q-color
    let kappa: Vec<usize> = (1..=n)
        .map(|i| if i <= k { k + i } else { i - k - 1 })
        .collect();
    let code = WirtingerCode::new(kappa, alloc::vec![sign; n])?;

    let mut steps = Vec::with_capacity(n - 1);
    for i in 2..=n {
        let arc = if i == n { n } else { torus_arc_of(n, i) };
        steps.push(ScheduleStep {
            target: arc,
            crossing: arc,
        });
    }
    Ok(TangleDiagram::new(code, alloc::vec![0, k + 1], steps)?)
}

/// The figure-eight knot as a 4-crossing 1-tangle.
///
/// Arcs `0..=3` carry `u_0..u_3` and the terminal arc 4 closes up on `u_0`:
/// `u_0 * u_2 = u_1`, `u_2 * u_3 = u_1`, `u_2 * u_0 = u_3`, `u_0 * u_1 = u_3`.
/// Bridges are arcs 0 and 2.
pub fn figure_eight() -> TangleDiagram {
    use Sign::{Negative, Positive};
    let code = WirtingerCode::new(
        alloc::vec![2, 3, 0, 1],
        alloc::vec![Positive, Negative, Positive, Negative],
    )
    .expect("static code");
    let steps = alloc::vec![
        ScheduleStep {
            target: 1,
            crossing: 1
        },
        ScheduleStep {
            target: 3,
            crossing: 3
        },
        ScheduleStep {
            target: 4,
            crossing: 4
        },
    ];
    TangleDiagram::new(code, alloc::vec![0, 2], steps).expect("static schedule")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    /// Free-group words over arc generators, freely reduced.
    #[derive(Clone, Debug, PartialEq, Eq)]
    struct Word(Vec<(usize, i8)>);

    impl Word {
        fn gen(g: usize) -> Self {
            Word(vec![(g, 1)])
        }
        fn inv(&self) -> Self {
            Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
        }
        fn mul(&self, o: &Self) -> Self {
            let mut out = self.0.clone();
            for &(g, e) in &o.0 {
                if out.last() == Some(&(g, -e)) {
                    out.pop();
                } else {
                    out.push((g, e));
                }
            }
            Word(out)
        }
    }

    /// Conjugation quandle on free-group words.
    struct FreeConj;
    impl Quandle for FreeConj {
        type Element = Word;
        fn op(&self, a: &Word, b: &Word) -> Word {
            b.inv().mul(a).mul(b)
        }
        fn op_inv(&self, a: &Word, b: &Word) -> Word {
            b.mul(a).mul(&b.inv())
        }
        fn distance(&self, a: &Word, b: &Word) -> f64 {
            if a == b {
                0.0
            } else {
                1.0
            }
        }
    }

    #[test]
    fn torus_counts() {
        let d = torus(3, Sign::Positive).unwrap();
        assert_eq!(d.code().crossings(), 3);
        assert_eq!(d.code().writhe(), 3);
        assert_eq!(torus(3, Sign::Negative).unwrap().code().writhe(), -3);
        let d = torus(7, Sign::Positive).unwrap();
        assert_eq!(d.code().writhe(), 7);
        assert_eq!(d.code().arcs(), 8);
        assert_eq!(d.schedule().unwrap().residual_crossings().len(), 1);
    }

    #[test]
    fn torus_rejects_bad_n() {
        for n in [0, 1, 2, 4, 10] {
            assert!(matches!(
                torus(n, Sign::Positive),
                Err(TangleError::BadParameter(_))
            ));
        }
    }

    #[test]
    fn torus_relations_are_the_recurrence() {
        // Rewrite every crossing relation in q-labels and compare with
        // q_{j+1} = q_{j-1} * q_j (indices mod n): each j must appear once.
        for n in [3, 5, 7, 9, 11] {
            let code = torus(n, Sign::Positive).unwrap().code().clone();
            let mut seen = vec![false; n];
            for c in 1..=n {
                let prev = torus_q_of(n, c - 1);
                let over = torus_q_of(n, code.over_arc(c));
                let out = torus_q_of(n, c);
                assert_eq!(prev, (over + n - 1) % n, "n={n} crossing {c}");
                assert_eq!(out, (over + 1) % n, "n={n} crossing {c}");
                assert!(!seen[over]);
                seen[over] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn torus_symbolic_propagation() {
        // Free generators for q_0, q_1; propagation must agree with iterating
        // q_{i+1} = q_i^-1 q_{i-1} q_i directly.
        for n in [3, 5, 7, 9] {
            let d = torus(n, Sign::Positive).unwrap();
            let s = d.schedule().unwrap();
            assert_eq!(s.bridges(), &[torus_arc_of(n, 0), torus_arc_of(n, 1)]);
            let colors = s.propagate(d.code(), &FreeConj, &[Word::gen(0), Word::gen(1)]);
            let mut q = vec![Word::gen(0), Word::gen(1)];
            for i in 1..n {
                let next = q[i].inv().mul(&q[i - 1]).mul(&q[i]);
                q.push(next);
            }
            for arc in 0..n {
                assert_eq!(colors[arc], q[torus_q_of(n, arc)], "n={n} arc {arc}");
            }
            // the terminal arc is q_n, which equals q_0 only modulo the
            // residual relation
            assert_eq!(colors[n], q[n]);
        }
    }

    #[test]
    fn mirrored_torus_uses_dual_operation() {
        let d = torus(5, Sign::Negative).unwrap();
        let s = d.schedule().unwrap();
        let colors = s.propagate(d.code(), &FreeConj, &[Word::gen(0), Word::gen(1)]);
        // q_2 = q_1 q_0 q_1^-1
        let q2 = Word::gen(1).mul(&Word::gen(0)).mul(&Word::gen(1).inv());
        assert_eq!(colors[torus_arc_of(5, 2)], q2);
    }

    #[test]
    fn fig8_structure() {
        let d = figure_eight();
        assert_eq!(d.code().writhe(), 0);
        assert_eq!(d.code().arcs(), 5);
        let s = d.schedule().unwrap();
        assert_eq!(s.residual_crossings(), &[2]);
    }

    #[test]
    fn fig8_symbolic_relations() {
        // With u_4 identified with u_0 the four relations are the crossings.
        let code = figure_eight().code().clone();
        let rel = |c: usize| {
            let arc = |a: usize| if a == 4 { 0 } else { a };
            (arc(c - 1), arc(code.over_arc(c)), arc(c), code.sign(c))
        };
        // (in, over, out, sign); a negative crossing out = in *bar over means
        // in = out * over
        assert_eq!(rel(1), (0, 2, 1, Sign::Positive)); // u0 * u2 = u1
        assert_eq!(rel(2), (1, 3, 2, Sign::Negative)); // u2 * u3 = u1
        assert_eq!(rel(3), (2, 0, 3, Sign::Positive)); // u2 * u0 = u3
        assert_eq!(rel(4), (3, 1, 0, Sign::Negative)); // u0 * u1 = u3

        let s = figure_eight();
        let colors =
            s.schedule()
                .unwrap()
                .propagate(s.code(), &FreeConj, &[Word::gen(0), Word::gen(2)]);
        let (u0, u2) = (Word::gen(0), Word::gen(2));
        let u1 = FreeConj.op(&u0, &u2);
        let u3 = FreeConj.op(&u2, &u0);
        assert_eq!(colors[1], u1);
        assert_eq!(colors[3], u3);
        assert_eq!(colors[4], FreeConj.op_inv(&u3, &u1));
    }

    #[test]
    fn longitude_words() {
        let w = torus(3, Sign::Positive).unwrap().code().longitude_word();
        assert_eq!(w.meridian_exponent, -3);
        assert_eq!(w.len(), 4);
        assert!(w.factors.iter().all(|&(_, s)| s == Sign::Positive));

        let w = figure_eight().code().longitude_word();
        assert_eq!(w.meridian_exponent, 0);
        let signs: Vec<_> = w.factors.iter().map(|f| f.1).collect();
        assert_eq!(
            signs,
            vec![
                Sign::Positive,
                Sign::Negative,
                Sign::Positive,
                Sign::Negative
            ]
        );
        // u2 u3^-1 u0 u1^-1
        let arcs: Vec<_> = w.factors.iter().map(|f| f.0).collect();
        assert_eq!(arcs, vec![2, 3, 0, 1]);
        assert_eq!(alloc::format!("{w}"), "x0^0 x2^1 x3^-1 x0^1 x1^-1");
    }

    #[test]
    fn torus_longitude_word_matches_closed_product() {
        // x0^-n (q1 q3 ... q_{2k-1}) (q0 q2 ... q_2k)
        for n in [3, 5, 7] {
            let k = (n - 1) / 2;
            let w = torus(n, Sign::Positive).unwrap().code().longitude_word();
            let q: Vec<_> = w.factors.iter().map(|&(a, _)| torus_q_of(n, a)).collect();
            let expected: Vec<_> = (1..=k)
                .map(|j| 2 * j - 1)
                .chain((0..=k).map(|j| 2 * j))
                .collect();
            assert_eq!(q, expected);
        }
    }

    #[test]
    fn code_validation() {
        use Sign::Positive as P;
        assert!(matches!(
            WirtingerCode::new(vec![1, 2], vec![P]),
            Err(ValidationError::LengthMismatch { .. })
        ));
        assert!(matches!(
            WirtingerCode::new(vec![1, 4, 0], vec![P, P, P]),
            Err(ValidationError::OverArcOutOfRange {
                crossing: 2,
                arc: 4,
                max: 3
            })
        ));
        assert_eq!(
            WirtingerCode::new(vec![], vec![]),
            Err(ValidationError::NoCrossings)
        );
    }

    #[test]
    fn schedule_validation() {
        let code = figure_eight().code().clone();
        let step = |t, c| ScheduleStep {
            target: t,
            crossing: c,
        };
        // arc 3 missing
        assert_eq!(
            TangleDiagram::new(code.clone(), vec![0, 2], vec![step(1, 1), step(4, 4)]),
            Err(ValidationError::UnknownDependency {
                target: 4,
                crossing: 4,
                arc: 3
            })
        );
        assert_eq!(
            TangleDiagram::new(code.clone(), vec![0, 2], vec![step(1, 1), step(3, 3)]),
            Err(ValidationError::ArcUnscheduled(4))
        );
        assert_eq!(
            TangleDiagram::new(code.clone(), vec![2, 0], vec![]),
            Err(ValidationError::BasepointNotBridge(Some(2)))
        );
        assert_eq!(
            TangleDiagram::new(code.clone(), vec![0, 2], vec![step(1, 3)]),
            Err(ValidationError::BadStep {
                target: 1,
                crossing: 3
            })
        );
        assert_eq!(
            TangleDiagram::new(code.clone(), vec![0, 2], vec![step(1, 1), step(1, 2)]),
            Err(ValidationError::ArcScheduledTwice(1))
        );
        // backwards reading of crossing 2 defines arc 1 from arc 2
        let d =
            TangleDiagram::new(code, vec![0, 2], vec![step(3, 3), step(1, 2), step(4, 4)]).unwrap();
        assert_eq!(d.schedule().unwrap().residual_crossings(), &[1]);
    }
}
