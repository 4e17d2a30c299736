//! The split real line.
//!
//! Every real time `t` is split into `t-` and `t+`, with `t- < t+` and both
//! below any split time with a larger real part. A cadlag function `f`
//! becomes continuous on the split line by reading `f(t-)` at `t-` and
//! `f(t)` at `t+`. The two infinities carry the signs `-inf+` and `+inf-`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// The sign of a split time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

/// A point `t-` or `t+` of the split line, or one of its two infinities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitTime {
    real: f64,
    sign: Sign,
}

impl SplitTime {
    /// The point `-inf+`.
    pub const NEG_INF: SplitTime = SplitTime { real: f64::NEG_INFINITY, sign: Sign::Plus };
    /// The point `+inf-`.
    pub const POS_INF: SplitTime = SplitTime { real: f64::INFINITY, sign: Sign::Minus };

    /// Builds a split time. Infinite real parts must carry the sign that
    /// keeps them inside the split line.
    pub fn new(real: f64, sign: Sign) -> Result<Self> {
        if real.is_nan() {
            return Err(Error::OutOfRange("split time is NaN".to_string()));
        }
        if (real == f64::NEG_INFINITY && sign != Sign::Plus)
            || (real == f64::INFINITY && sign != Sign::Minus)
        {
            return Err(Error::OutOfRange("sign at infinity".to_string()));
        }
        Ok(Self { real, sign })
    }

    /// `t-` for finite `t`.
    pub fn minus(t: f64) -> Self {
        assert!(t.is_finite(), "minus() needs a finite time");
        Self { real: t, sign: Sign::Minus }
    }

    /// `t+` for finite `t`.
    pub fn plus(t: f64) -> Self {
        assert!(t.is_finite(), "plus() needs a finite time");
        Self { real: t, sign: Sign::Plus }
    }

    pub fn real(&self) -> f64 {
        self.real
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_finite(&self) -> bool {
        self.real.is_finite()
    }
}

impl Eq for SplitTime {}

impl Ord for SplitTime {
    fn cmp(&self, other: &Self) -> Ordering {
        // NaN is excluded at construction.
        self.real
            .partial_cmp(&other.real)
            .unwrap_or(Ordering::Equal)
            .then(self.sign.cmp(&other.sign))
    }
}

impl PartialOrd for SplitTime {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SplitTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.real == f64::NEG_INFINITY {
            return f.write_str("-inf");
        }
        if self.real == f64::INFINITY {
            return f.write_str("+inf");
        }
        let s = match self.sign {
            Sign::Minus => '-',
            Sign::Plus => '+',
        };
        write!(f, "{}{}", self.real, s)
    }
}

impl FromStr for SplitTime {
    type Err = Error;

    /// Parses `"1.5-"`, `"1.5+"`, `"-inf"` or `"+inf"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "-inf" => return Ok(Self::NEG_INF),
            "+inf" | "inf" => return Ok(Self::POS_INF),
            _ => {}
        }
        let bad = || Error::ParseSplitTime(String::from(s));
        let (num, sign) = match s.as_bytes().last() {
            Some(b'-') => (&s[..s.len() - 1], Sign::Minus),
            Some(b'+') => (&s[..s.len() - 1], Sign::Plus),
            _ => return Err(bad()),
        };
        let t: f64 = num.parse().map_err(|_| bad())?;
        if !t.is_finite() {
            return Err(bad());
        }
        Ok(Self { real: t, sign })
    }
}

/// An interval of the split line with open or closed ends.
///
/// Because the split line has no points strictly between `t-` and `t+`,
/// open and closed intervals coincide in pairs, e.g. `(s-, t+) = [s+, t-]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitInterval {
    pub lo: SplitTime,
    pub hi: SplitTime,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl SplitInterval {
    fn build(lo: SplitTime, hi: SplitTime, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        if lo > hi {
            return Err(Error::OutOfRange(alloc::format!("interval bounds {lo} > {hi}")));
        }
        Ok(Self { lo, hi, lo_closed, hi_closed })
    }

    /// `[lo, hi]`.
    pub fn closed(lo: SplitTime, hi: SplitTime) -> Result<Self> {
        Self::build(lo, hi, true, true)
    }

    /// `(lo, hi)`.
    pub fn open(lo: SplitTime, hi: SplitTime) -> Result<Self> {
        Self::build(lo, hi, false, false)
    }

    /// `[lo, hi)`.
    pub fn closed_open(lo: SplitTime, hi: SplitTime) -> Result<Self> {
        Self::build(lo, hi, true, false)
    }

    /// `(lo, hi]`.
    pub fn open_closed(lo: SplitTime, hi: SplitTime) -> Result<Self> {
        Self::build(lo, hi, false, true)
    }

    pub fn contains(&self, tau: SplitTime) -> bool {
        let above = if self.lo_closed { tau >= self.lo } else { tau > self.lo };
        let below = if self.hi_closed { tau <= self.hi } else { tau < self.hi };
        above && below
    }
}

/// The split domain `{t-, t+ : t in times}` in increasing order.
///
/// `times` must be finite, sorted and free of duplicates.
pub fn split_domain(times: &[f64]) -> Result<Vec<SplitTime>> {
    for w in times.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::InvalidDomain(alloc::format!(
                "times must be strictly increasing ({} then {})",
                w[0],
                w[1]
            )));
        }
    }
    let mut out = Vec::with_capacity(2 * times.len());
    for &t in times {
        if !t.is_finite() {
            return Err(Error::InvalidDomain(alloc::format!("time {t} is not finite")));
        }
        out.push(SplitTime::minus(t));
        out.push(SplitTime::plus(t));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn order_examples() {
        assert!(SplitTime::minus(1.0) < SplitTime::plus(1.0));
        assert!(SplitTime::plus(0.0) < SplitTime::minus(1.0));
        assert_eq!(SplitTime::plus(2.0).cmp(&SplitTime::plus(2.0)), Ordering::Equal);
        assert!(SplitTime::NEG_INF < SplitTime::minus(-1e300));
        assert!(SplitTime::plus(1e300) < SplitTime::POS_INF);
    }

    #[test]
    fn infinity_signs() {
        assert!(SplitTime::new(f64::NEG_INFINITY, Sign::Minus).is_err());
        assert!(SplitTime::new(f64::INFINITY, Sign::Plus).is_err());
        assert!(SplitTime::new(f64::NAN, Sign::Plus).is_err());
        assert_eq!(SplitTime::new(f64::INFINITY, Sign::Minus).unwrap(), SplitTime::POS_INF);
    }

    #[test]
    fn domains() {
        assert_eq!(
            split_domain(&[0.0, 1.0]).unwrap(),
            vec![
                SplitTime::minus(0.0),
                SplitTime::plus(0.0),
                SplitTime::minus(1.0),
                SplitTime::plus(1.0)
            ]
        );
        assert!(split_domain(&[]).unwrap().is_empty());
        assert_eq!(split_domain(&[3.0]).unwrap(), vec![SplitTime::minus(3.0), SplitTime::plus(3.0)]);
        assert!(split_domain(&[1.0, 1.0]).is_err());
        assert!(split_domain(&[2.0, 1.0]).is_err());
    }

    #[test]
    fn interval_examples() {
        let c = SplitInterval::closed(SplitTime::plus(0.0), SplitTime::minus(1.0)).unwrap();
        assert!(c.contains(SplitTime::minus(0.5)));
        assert!(!c.contains(SplitTime::plus(1.0)));
        let o = SplitInterval::open(SplitTime::minus(0.0), SplitTime::plus(1.0)).unwrap();
        assert!(o.contains(SplitTime::plus(0.0)));
        for tau in [SplitTime::minus(0.0), SplitTime::plus(0.0), SplitTime::minus(1.0), SplitTime::plus(1.0)] {
            assert_eq!(o.contains(tau), c.contains(tau));
        }
        assert!(SplitInterval::closed(SplitTime::plus(1.0), SplitTime::minus(1.0)).is_err());
        let half = SplitInterval::closed(SplitTime::plus(0.0), SplitTime::POS_INF).unwrap();
        assert!(half.contains(SplitTime::plus(1e9)));
    }

    #[test]
    fn text_round_trip() {
        for s in ["1.5-", "1.5+", "-inf", "+inf", "-2+", "0-"] {
            let t: SplitTime = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        for s in ["1.5", "abc+", "", "inf+", "nan-"] {
            assert!(s.parse::<SplitTime>().is_err(), "{s}");
        }
    }

    fn arb_split() -> impl Strategy<Value = SplitTime> {
        prop_oneof![
            1 => Just(SplitTime::NEG_INF),
            1 => Just(SplitTime::POS_INF),
            10 => ((-4i32..4), any::<bool>()).prop_map(|(t, s)| {
                let t = f64::from(t) / 2.0;
                if s { SplitTime::plus(t) } else { SplitTime::minus(t) }
            }),
        ]
    }

    proptest! {
        #[test]
        fn cmp_is_total_order(a in arb_split(), b in arb_split(), c in arb_split()) {
            let n = [a < b, a == b, a > b].iter().filter(|&&x| x).count();
            prop_assert_eq!(n, 1);
            if a <= b && b <= c { prop_assert!(a <= c); }
        }

        #[test]
        fn split_domain_increasing(mut ts in proptest::collection::vec(-100.0f64..100.0, 0..20)) {
            ts.sort_by(f64::total_cmp);
            ts.dedup();
            let d = split_domain(&ts).unwrap();
            prop_assert_eq!(d.len() % 2, 0);
            prop_assert!(d.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn interval_identity(s in -4i32..4, len in 1i32..4, tau in arb_split()) {
            let (s, t) = (f64::from(s), f64::from(s + len));
            let o = SplitInterval::open(SplitTime::minus(s), SplitTime::plus(t)).unwrap();
            let c = SplitInterval::closed(SplitTime::plus(s), SplitTime::minus(t)).unwrap();
            prop_assert_eq!(o.contains(tau), c.contains(tau));
        }
    }
}
