//! Distance modes and the value types paths may take.

use std::fmt;
use std::str::FromStr;

use skorodist_core::betweenness::{Betweenness, BetweennessKind, Coordinates, Interpolation, Linear, OrderBetweenness, Trivial};
use skorodist_core::metric::{Euclidean, MetricSpace, RealLine};

use crate::error::{CliError, CliResult};
use crate::registry;

/// Path values the tool understands: reals and real vectors.
pub trait Value: Coordinates + fmt::Debug + Send + Sync + 'static {
    type Space: MetricSpace<Point = Self> + Default + Sync;

    fn order_sample(b: &OrderBetweenness, x: &Self, z: &Self) -> Vec<Self>;

    fn order_distance<M: MetricSpace<Point = Self>>(b: &OrderBetweenness, space: &M, y: &Self, x: &Self, z: &Self)
        -> f64;
}

impl Value for f64 {
    type Space = RealLine;

    fn order_sample(b: &OrderBetweenness, x: &f64, z: &f64) -> Vec<f64> {
        b.sample(x, z, 0)
    }

    fn order_distance<M: MetricSpace<Point = f64>>(b: &OrderBetweenness, space: &M, y: &f64, x: &f64, z: &f64) -> f64 {
        b.distance_to_segment(space, y, x, z)
    }
}

impl Value for Vec<f64> {
    type Space = Euclidean;

    fn order_sample(b: &OrderBetweenness, x: &Vec<f64>, z: &Vec<f64>) -> Vec<Vec<f64>> {
        b.sample(x, z, 0)
    }

    fn order_distance<M: MetricSpace<Point = Vec<f64>>>(
        b: &OrderBetweenness,
        space: &M,
        y: &Vec<f64>,
        x: &Vec<f64>,
        z: &Vec<f64>,
    ) -> f64 {
        b.distance_to_segment(space, y, x, z)
    }
}

/// How jumps are filled in: `j1` (trivial), `m1` (linear), `order` (the
/// order of the values seen in the inputs) or `interp:NAME`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    J1,
    M1,
    Order,
    Interp(String),
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "j1" => Ok(Mode::J1),
            "m1" => Ok(Mode::M1),
            "order" => Ok(Mode::Order),
            _ => match s.strip_prefix("interp:") {
                Some(name) if registry::NAMES.contains(&name) => Ok(Mode::Interp(name.to_string())),
                _ => Err(format!(
                    "unknown mode {s:?}; expected j1, m1, order or interp:NAME with NAME one of {}",
                    registry::NAMES.join(", ")
                )),
            },
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::J1 => f.write_str("j1"),
            Mode::M1 => f.write_str("m1"),
            Mode::Order => f.write_str("order"),
            Mode::Interp(name) => write!(f, "interp:{name}"),
        }
    }
}

/// A betweenness picked at run time.
#[derive(Debug, Clone)]
pub enum AnyBetweenness<P> {
    Trivial,
    Linear,
    Order(OrderBetweenness),
    Interp(Interpolation<P>),
}

impl<P: Value> AnyBetweenness<P> {
    /// The betweenness for `mode`. The order mode lives on the set of all
    /// coordinates in `values`, which must be one-dimensional.
    pub fn for_mode<'a>(mode: &Mode, values: impl IntoIterator<Item = &'a P>) -> CliResult<Self> {
        Ok(match mode {
            Mode::J1 => AnyBetweenness::Trivial,
            Mode::M1 => AnyBetweenness::Linear,
            Mode::Order => {
                let mut xs = Vec::new();
                for v in values {
                    match v.coords() {
                        [x] => xs.push(*x),
                        c => {
                            return Err(CliError::input(format!(
                                "order mode needs one-dimensional values, got dimension {}",
                                c.len()
                            )))
                        }
                    }
                }
                AnyBetweenness::Order(OrderBetweenness::new(xs)?)
            }
            Mode::Interp(name) => {
                for v in values {
                    if !registry::admits(name, v.coords()) {
                        return Err(CliError::input(format!("interpolation {name} is undefined at {v:?}")));
                    }
                }
                AnyBetweenness::Interp(registry::interpolation(name).expect("mode names are registered"))
            }
        })
    }
}

impl<P: Value> Betweenness<P> for AnyBetweenness<P> {
    fn kind(&self) -> BetweennessKind {
        match self {
            AnyBetweenness::Trivial => BetweennessKind::Trivial,
            AnyBetweenness::Linear => BetweennessKind::Linear,
            AnyBetweenness::Order(_) => BetweennessKind::Order,
            AnyBetweenness::Interp(_) => BetweennessKind::Interpolation,
        }
    }

    fn sample(&self, x: &P, z: &P, n: usize) -> Vec<P> {
        match self {
            AnyBetweenness::Trivial => Trivial.sample(x, z, n),
            AnyBetweenness::Linear => Linear.sample(x, z, n),
            AnyBetweenness::Order(b) => P::order_sample(b, x, z),
            AnyBetweenness::Interp(b) => b.sample(x, z, n),
        }
    }

    fn is_exact(&self) -> bool {
        match self {
            AnyBetweenness::Trivial => Betweenness::<P>::is_exact(&Trivial),
            AnyBetweenness::Linear => Betweenness::<P>::is_exact(&Linear),
            AnyBetweenness::Order(_) => true,
            AnyBetweenness::Interp(b) => b.is_exact(),
        }
    }

    fn distance_to_segment<M: MetricSpace<Point = P>>(&self, space: &M, y: &P, x: &P, z: &P) -> f64 {
        match self {
            AnyBetweenness::Trivial => Trivial.distance_to_segment(space, y, x, z),
            AnyBetweenness::Linear => Linear.distance_to_segment(space, y, x, z),
            AnyBetweenness::Order(b) => P::order_distance(b, space, y, x, z),
            AnyBetweenness::Interp(b) => b.distance_to_segment(space, y, x, z),
        }
    }
}
