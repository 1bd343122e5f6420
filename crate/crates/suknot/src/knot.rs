//! Knot selection shared by the commands: built-in families or a user
//! diagram.

use std::str::FromStr;

use suknot_core::tangle::{self, Sign, TangleDiagram};

#[derive(Clone, Debug, PartialEq)]
pub enum Knot {
    Torus { n: usize, sign: Sign },
    Fig8,
    Diagram(TangleDiagram),
}

impl Knot {
    pub fn diagram(&self) -> TangleDiagram {
        match self {
            Knot::Torus { n, sign } => tangle::torus(*n, *sign).expect("validated when parsed"),
            Knot::Fig8 => tangle::figure_eight(),
            Knot::Diagram(d) => d.clone(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Knot::Torus { n, sign } => format!("torus:{n}:{}", sign.as_char()),
            Knot::Fig8 => "fig8".into(),
            Knot::Diagram(d) => format!("diagram with {} crossings", d.code().crossings()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("bad knot {0:?}: expected `torus:<n>[:+|-]` or `fig8`")]
pub struct KnotSpecError(pub String);

impl FromStr for Knot {
    type Err = KnotSpecError;

    /// `torus:<n>`, `torus:<n>:+`, `torus:<n>:-` or `fig8`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || KnotSpecError(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["fig8"] | ["figure-eight"] => Ok(Knot::Fig8),
            ["torus", n, rest @ ..] if rest.len() <= 1 => {
                let n: usize = n.parse().map_err(|_| bad())?;
                let sign = match rest.first().copied() {
                    None | Some("+") | Some("+1") => Sign::Positive,
                    Some("-") | Some("-1") => Sign::Negative,
                    Some(_) => return Err(bad()),
                };
                tangle::torus(n, sign).map_err(|_| bad())?;
                Ok(Knot::Torus { n, sign })
            }
            _ => Err(bad()),
        }
    }
}
