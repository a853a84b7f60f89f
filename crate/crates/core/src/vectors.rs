//! Integer vectors attached to flags: type vectors, best friend vectors and
//! distance vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numth::{gcd_all, lcm_all};

/// Dimensions `(t_1, ..., t_r)` of a flag, strictly increasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TypeVector(Vec<usize>);

impl TypeVector {
    pub fn new(t: Vec<usize>) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::InvalidType("type vector is empty".into()));
        }
        if t[0] == 0 {
            return Err(Error::InvalidType("dimensions must be positive".into()));
        }
        if t.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidType(format!("{t:?} is not strictly increasing")));
        }
        Ok(Self(t))
    }

    /// Also checks `t_r < n`.
    pub fn for_field(t: Vec<usize>, n: usize) -> Result<Self> {
        let t = Self::new(t)?;
        t.check_proper(n)?;
        Ok(t)
    }

    pub fn check_proper(&self, n: usize) -> Result<()> {
        if *self.0.last().unwrap() >= n {
            return Err(Error::InvalidType(format!("last dimension {} is not below n = {n}", self.0.last().unwrap())));
        }
        Ok(())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Best friend exponents `(m_1, ..., m_r)` of a flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BestFriendVector(Vec<usize>);

impl BestFriendVector {
    pub fn new(m: Vec<usize>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::InvalidBestFriendVector("vector is empty".into()));
        }
        if m.contains(&0) {
            return Err(Error::InvalidBestFriendVector("entries must be positive".into()));
        }
        Ok(Self(m))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `m = gcd(m_1, ..., m_r)`, the best friend exponent of the flag.
    pub fn gcd(&self) -> usize {
        gcd_all(&self.0)
    }

    pub fn lcm(&self) -> usize {
        lcm_all(&self.0)
    }

    /// Number of entries equal to the gcd.
    pub fn j(&self) -> usize {
        let m = self.gcd();
        self.0.iter().filter(|&&x| x == m).count()
    }

    pub fn min(&self) -> usize {
        *self.0.iter().min().unwrap()
    }
}

/// Componentwise subspace distances `(d_1, ..., d_r)` of a flag pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DistanceVector(Vec<usize>);

impl DistanceVector {
    pub fn new(d: Vec<usize>) -> Self {
        Self(d)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

macro_rules! display_tuple {
    ($($t:ty),*) => {$(
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    )*};
}

display_tuple!(TypeVector, BestFriendVector, DistanceVector);
