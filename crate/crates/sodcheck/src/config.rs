//! Hypersurface configuration.
//!
//! Everything downstream is parameterized by a triple (m, n, d): the
//! hypersurface X = V(f + g) in P^{m+n-1}, where f is a degree-d form in m
//! variables of weight 0 and g a degree-d form in n variables of weight -1
//! under the mu_d-action.  Smoothness and nonemptiness of both fixed loci
//! demand 2 <= m <= n <= d for the full decomposition; m = 1 is admitted
//! separately for the cyclic-cover case, where X -> P^{n-1} is the
//! quotient by mu_d.

use crate::chars::{Character, WeightedSpace};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Config {
    m: u32,
    n: u32,
    d: u32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConfigError {
    /// Parameters violate 1 <= m <= n <= d.
    OutOfRange { m: u32, n: u32, d: u32 },
    /// m = 1 requested outside cyclic mode.
    NeedsCyclicMode { n: u32, d: u32 },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::OutOfRange { m, n, d } => {
                write!(f, "parameters ({m},{n},{d}) violate 1 <= m <= n <= d")
            }
            ConfigError::NeedsCyclicMode { n, d } => {
                write!(f, "(1,{n},{d}) is a cyclic cover; use the cyclic constructor")
            }
        }
    }
}

impl std::error::Error for ConfigError {}

impl Config {
    /// A configuration for the five-part decomposition; requires
    /// 2 <= m <= n <= d.
    pub fn new(m: u32, n: u32, d: u32) -> Result<Config, ConfigError> {
        if m < 1 || m > n || n > d {
            return Err(ConfigError::OutOfRange { m, n, d });
        }
        if m < 2 {
            return Err(ConfigError::NeedsCyclicMode { n, d });
        }
        Ok(Config { m, n, d })
    }

    /// A cyclic-cover configuration (1, n, d) with 1 <= n <= d.
    pub fn cyclic(n: u32, d: u32) -> Result<Config, ConfigError> {
        if n < 1 || n > d {
            return Err(ConfigError::OutOfRange { m: 1, n, d });
        }
        Ok(Config { m: 1, n, d })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_cyclic(&self) -> bool {
        self.m == 1
    }

    /// Dimension of the ambient projective space, m + n - 1.
    pub fn ambient_dim(&self) -> i64 {
        self.m as i64 + self.n as i64 - 1
    }

    /// Dimension of the hypersurface X itself.
    pub fn dim_x(&self) -> i64 {
        self.m as i64 + self.n as i64 - 2
    }

    pub fn chi(&self, j: i64) -> Character {
        Character::new(self.d, j)
    }

    /// Ambient coordinate weights: m coordinates of weight 0, then n of
    /// weight -1.
    pub fn ambient_weights(&self) -> WeightedSpace {
        let mut w = vec![0i64; self.m as usize];
        w.extend(std::iter::repeat(-1).take(self.n as usize));
        WeightedSpace::new(self.d, w)
    }

    /// The Serre functor of the quotient stack of X is tensoring by
    /// O(d - m - n) chi^{-n} followed by a shift by dim X; this returns
    /// the line-bundle twist.
    pub fn serre_twist(&self) -> (i64, Character) {
        (
            self.d as i64 - self.m as i64 - self.n as i64,
            self.chi(-(self.n as i64)),
        )
    }

    /// Homological shift of the Serre functor, dim X = m + n - 2.
    pub fn serre_shift(&self) -> i64 {
        self.dim_x()
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m, self.n, self.d)
    }
}
