//! Simple root systems and their Weyl groups.
//!
//! Classical types live on signed-permutation carriers; G2 and E6 act by
//! integer matrices in the simple-root basis; F4 acts by (doubled) exact
//! matrices on Euclidean 4-space, where its long/short geometry is plainest.
//! E7 and E8 parse and report static facts but refuse full enumeration.

mod construct;
mod roots;

pub use construct::{
    delta_subgroup, even_sign_subgroup, minus_identity, sign_subgroup, weyl_group,
};
pub use roots::{reflection_in_root, roots, simple_reflections, RootCoords, RootSystem};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::finite_group::SimpleFactor;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simple root-system type, e.g. `B_4`. Validity of the rank for the
/// series is enforced at construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TypeParseError {
    #[error("`{0}` is not a Cartan type (expected e.g. A2, B_4, f4, E6)")]
    Malformed(String),
    #[error("rank {rank} is not valid for series {series:?}")]
    BadRank { series: Series, rank: usize },
}

#[derive(Debug, Error)]
pub enum WeylError {
    #[error("{t} has order {order}, beyond full enumeration; static facts remain available")]
    EnumerationUnsupported { t: CartanType, order: u64 },
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self, TypeParseError> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(CartanType { series, rank })
        } else {
            Err(TypeParseError::BadRank { series, rank })
        }
    }

    /// B_n and C_n have identical Weyl groups; group-level caches key on the
    /// B form.
    pub fn group_key(self) -> CartanType {
        match self.series {
            Series::C => CartanType { series: Series::B, rank: self.rank },
            _ => self,
        }
    }

    /// True when the two types have isomorphic Weyl groups for the trivial
    /// reason of being the same or B/C partners.
    pub fn isogenous(self, other: CartanType) -> bool {
        self.group_key() == other.group_key()
    }

    pub fn order(self) -> u64 {
        let f = |k: u64| (1..=k).product::<u64>();
        let n = self.rank as u64;
        match self.series {
            Series::A => f(n + 1),
            Series::B | Series::C => (1 << n) * f(n),
            Series::D => (1 << (n - 1)) * f(n),
            Series::G => 12,
            Series::F => 1152,
            Series::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
        }
    }

    /// Whether this crate will enumerate the full Weyl group. The threshold
    /// is memory/time, not principle: W(B_8) (about 10.3M elements) is the
    /// largest group in the supported range.
    pub fn enumerable(self) -> bool {
        match self.series {
            Series::A => self.rank <= 9,
            Series::B | Series::C | Series::D => self.rank <= 8,
            Series::G | Series::F => true,
            Series::E => self.rank == 6,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}_{}", self.series, self.rank)
    }
}

impl fmt::Debug for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}_{}", self.series, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = TypeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let mut chars = t.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(TypeParseError::Malformed(t.to_string())),
        };
        let rest = chars.as_str().strip_prefix('_').unwrap_or(chars.as_str());
        let rank: usize =
            rest.parse().map_err(|_| TypeParseError::Malformed(t.to_string()))?;
        CartanType::new(series, rank)
    }
}

/// Invariants known without enumeration. `exponent` is `None` where neither
/// a closed form nor a stored value is available (E7, E8 keep their orders
/// and composition-factor sets only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylFacts {
    pub order: u64,
    pub exponent: Option<u64>,
    /// Distinct composition factors.
    pub jh: Vec<SimpleFactor>,
}

pub fn static_facts(t: CartanType) -> WeylFacts {
    let n = t.rank as u64;
    let ab = |order: u64| SimpleFactor { order, abelian: true };
    let simple = |order: u64| SimpleFactor { order, abelian: false };
    let half_fact = |k: u64| (1..=k).product::<u64>() / 2;
    let (exponent, jh) = match t.series {
        Series::A => {
            let e = lcm_to(n + 1);
            let jh = match t.rank {
                1 => vec![ab(2)],
                2 | 3 => vec![ab(2), ab(3)],
                _ => vec![ab(2), simple(half_fact(n + 1))],
            };
            (Some(e), jh)
        }
        Series::B | Series::C => {
            let jh = match t.rank {
                2 => vec![ab(2)],
                3 | 4 => vec![ab(2), ab(3)],
                _ => vec![ab(2), simple(half_fact(n))],
            };
            (Some(2 * lcm_to(n)), jh)
        }
        Series::D => {
            let e = if n.is_power_of_two() { lcm_to(n) } else { 2 * lcm_to(n) };
            let jh = match t.rank {
                3 | 4 => vec![ab(2), ab(3)],
                _ => vec![ab(2), simple(half_fact(n))],
            };
            (Some(e), jh)
        }
        Series::G => (Some(6), vec![ab(2), ab(3)]),
        Series::F => (Some(24), vec![ab(2), ab(3)]),
        Series::E => match t.rank {
            6 => (Some(360), vec![ab(2), simple(25_920)]),
            7 => (None, vec![ab(2), simple(1_451_520)]),
            _ => (None, vec![ab(2), simple(174_182_400)]),
        },
    };
    WeylFacts { order: t.order(), exponent, jh }
}

/// lcm(1..=k).
pub(crate) fn lcm_to(k: u64) -> u64 {
    (1..=k).fold(1, crate::finite_group::group::lcm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("B4".parse::<CartanType>().unwrap(), CartanType::new(Series::B, 4).unwrap());
        assert_eq!("b_4".parse::<CartanType>().unwrap(), CartanType::new(Series::B, 4).unwrap());
        assert_eq!(" f4 ".parse::<CartanType>().unwrap(), CartanType::new(Series::F, 4).unwrap());
        assert!("F5".parse::<CartanType>().is_err());
        assert!("H3".parse::<CartanType>().is_err());
        assert!("D2".parse::<CartanType>().is_err());
        assert!("A0".parse::<CartanType>().is_err());
        assert_eq!("E7".parse::<CartanType>().unwrap().to_string(), "E_7");
    }

    #[test]
    fn orders_match_closed_forms() {
        let cases = [
            ("A_3", 24),
            ("B_4", 384),
            ("C_4", 384),
            ("D_4", 192),
            ("D_3", 24),
            ("G_2", 12),
            ("F_4", 1152),
            ("E_6", 51_840),
            ("E_7", 2_903_040),
            ("E_8", 696_729_600),
            ("B_8", 10_321_920),
            ("A_9", 3_628_800),
        ];
        for (name, order) in cases {
            assert_eq!(name.parse::<CartanType>().unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn isogeny_is_bc_only() {
        let b3: CartanType = "B3".parse().unwrap();
        let c3: CartanType = "C3".parse().unwrap();
        let d3: CartanType = "D3".parse().unwrap();
        assert!(b3.isogenous(c3));
        assert!(b3.isogenous(b3));
        assert!(!b3.isogenous(d3));
    }

    #[test]
    fn exponents_from_closed_forms() {
        let e = |s: &str| static_facts(s.parse().unwrap()).exponent;
        assert_eq!(e("A_1"), Some(2));
        assert_eq!(e("A_2"), Some(6));
        assert_eq!(e("A_3"), Some(12)); // lcm(1..4)
        assert_eq!(e("B_2"), Some(4));
        assert_eq!(e("B_3"), Some(12));
        assert_eq!(e("B_4"), Some(24));
        assert_eq!(e("D_4"), Some(12)); // rank a power of two
        assert_eq!(e("D_6"), Some(120)); // 2 * lcm(1..6)
        assert_eq!(e("D_8"), Some(840)); // rank 8 = 2^3: lcm(1..8)
        assert_eq!(e("G_2"), Some(6));
        assert_eq!(e("F_4"), Some(24));
        assert_eq!(e("E_6"), Some(360));
        assert_eq!(e("E_7"), None);
    }

    #[test]
    fn jh_sets() {
        let jh = |s: &str| static_facts(s.parse().unwrap()).jh;
        let ab = |o| SimpleFactor { order: o, abelian: true };
        let simple = |o| SimpleFactor { order: o, abelian: false };
        assert_eq!(jh("A_1"), vec![ab(2)]);
        assert_eq!(jh("B_2"), vec![ab(2)]);
        assert_eq!(jh("A_3"), vec![ab(2), ab(3)]);
        assert_eq!(jh("B_4"), vec![ab(2), ab(3)]);
        assert_eq!(jh("F_4"), vec![ab(2), ab(3)]);
        assert_eq!(jh("A_4"), vec![ab(2), simple(60)]);
        assert_eq!(jh("B_5"), vec![ab(2), simple(60)]);
        assert_eq!(jh("D_8"), vec![ab(2), simple(20_160)]);
        assert_eq!(jh("E_6"), vec![ab(2), simple(25_920)]);
        assert_eq!(jh("E_8"), vec![ab(2), simple(174_182_400)]);
    }
}
