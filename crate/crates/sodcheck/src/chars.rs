//! Characters of the cyclic group mu_d and representation bookkeeping.
//!
//! A `Character` is a residue class j mod d, standing for the character
//! chi^j sending the chosen generator to a fixed primitive d-th root of
//! unity raised to the j-th power.  All representation-theoretic data in
//! this crate is a formal sum of such characters; `CharVector` records the
//! multiplicities (possibly infinite, for power-series factors of local
//! Ext modules) and `ExtTable` collects one `CharVector` per cohomological
//! degree.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A character chi^r of mu_d, stored as the canonical residue r in [0, d).
///
/// The modulus travels with the value so that characters belonging to
/// different groups cannot be combined by accident.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Character {
    r: u32,
    d: u32,
}

impl Character {
    pub fn new(d: u32, value: i64) -> Self {
        assert!(d >= 1, "character modulus must be positive");
        Character {
            r: value.rem_euclid(d as i64) as u32,
            d,
        }
    }

    pub fn zero(d: u32) -> Self {
        Character::new(d, 0)
    }

    pub fn residue(self) -> u32 {
        self.r
    }

    pub fn modulus(self) -> u32 {
        self.d
    }

    pub fn is_trivial(self) -> bool {
        self.r == 0
    }

    /// Scalar multiple j * chi (repeated addition in the character group).
    pub fn scale(self, j: i64) -> Self {
        Character::new(self.d, self.r as i64 * j)
    }
}

impl Add for Character {
    type Output = Character;
    fn add(self, rhs: Character) -> Character {
        assert_eq!(self.d, rhs.d, "character modulus mismatch");
        Character::new(self.d, self.r as i64 + rhs.r as i64)
    }
}

impl Sub for Character {
    type Output = Character;
    fn sub(self, rhs: Character) -> Character {
        assert_eq!(self.d, rhs.d, "character modulus mismatch");
        Character::new(self.d, self.r as i64 - rhs.r as i64)
    }
}

impl Neg for Character {
    type Output = Character;
    fn neg(self) -> Character {
        Character::new(self.d, -(self.r as i64))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi^{}", self.r)
    }
}

/// A multiplicity: a finite count or the symbol for countably infinite.
///
/// Infinite multiplicities arise from free power-series factors in local
/// Ext computations and are absorbing under addition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mult {
    Finite(u64),
    Infinite,
}

impl Mult {
    pub fn is_zero(self) -> bool {
        self == Mult::Finite(0)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Mult::Finite(v) => Some(v),
            Mult::Infinite => None,
        }
    }
}

impl Add for Mult {
    type Output = Mult;
    fn add(self, rhs: Mult) -> Mult {
        match (self, rhs) {
            (Mult::Finite(a), Mult::Finite(b)) => Mult::Finite(a.checked_add(b).expect("multiplicity overflow")),
            _ => Mult::Infinite,
        }
    }
}

impl std::ops::Mul for Mult {
    type Output = Mult;
    fn mul(self, rhs: Mult) -> Mult {
        match (self, rhs) {
            (Mult::Finite(0), _) | (_, Mult::Finite(0)) => Mult::Finite(0),
            (Mult::Finite(a), Mult::Finite(b)) => Mult::Finite(a.checked_mul(b).expect("multiplicity overflow")),
            _ => Mult::Infinite,
        }
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Finite(v) => write!(f, "{v}"),
            Mult::Infinite => write!(f, "inf"),
        }
    }
}

impl serde::Serialize for Mult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Mult::Finite(v) => s.serialize_u64(*v),
            Mult::Infinite => s.serialize_str("inf"),
        }
    }
}

/// A formal non-negative sum of characters of mu_d.  Zero entries are not
/// stored, so two vectors are equal iff they agree as representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharVector {
    d: u32,
    mult: BTreeMap<u32, Mult>,
}

impl CharVector {
    pub fn zero(d: u32) -> Self {
        CharVector { d, mult: BTreeMap::new() }
    }

    /// The regular representation: every character once.
    pub fn regular(d: u32) -> Self {
        let mut v = CharVector::zero(d);
        for r in 0..d {
            v.add_char(Character::new(d, r as i64), Mult::Finite(1));
        }
        v
    }

    pub fn single(ch: Character, m: Mult) -> Self {
        let mut v = CharVector::zero(ch.modulus());
        v.add_char(ch, m);
        v
    }

    pub fn modulus(&self) -> u32 {
        self.d
    }

    pub fn add_char(&mut self, ch: Character, m: Mult) {
        assert_eq!(ch.modulus(), self.d, "character modulus mismatch");
        if m.is_zero() {
            return;
        }
        let e = self.mult.entry(ch.residue()).or_insert(Mult::Finite(0));
        *e = *e + m;
    }

    pub fn add_assign(&mut self, other: &CharVector) {
        assert_eq!(self.d, other.d);
        for (&r, &m) in &other.mult {
            self.add_char(Character::new(self.d, r as i64), m);
        }
    }

    pub fn get(&self, ch: Character) -> Mult {
        assert_eq!(ch.modulus(), self.d);
        self.mult.get(&ch.residue()).copied().unwrap_or(Mult::Finite(0))
    }

    /// Multiplicity of the trivial character (the mu_d-invariant part).
    pub fn invariant(&self) -> Mult {
        self.get(Character::zero(self.d))
    }

    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }

    /// Tensor with a single character: shifts every entry by `ch`.
    pub fn tensor_char(&self, ch: Character) -> CharVector {
        let mut out = CharVector::zero(self.d);
        for (&r, &m) in &self.mult {
            out.add_char(Character::new(self.d, r as i64) + ch, m);
        }
        out
    }

    /// The dual representation: chi^r becomes chi^{-r}.
    pub fn dual(&self) -> CharVector {
        let mut out = CharVector::zero(self.d);
        for (&r, &m) in &self.mult {
            out.add_char(-Character::new(self.d, r as i64), m);
        }
        out
    }

    /// Tensor product of representations (convolution of multiplicities).
    pub fn tensor(&self, other: &CharVector) -> CharVector {
        assert_eq!(self.d, other.d);
        let mut out = CharVector::zero(self.d);
        for (&r, &m) in &self.mult {
            for (&s, &k) in &other.mult {
                out.add_char(Character::new(self.d, r as i64 + s as i64), m * k);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (Character, Mult)> + '_ {
        self.mult.iter().map(move |(&r, &m)| (Character::new(self.d, r as i64), m))
    }

    /// Total dimension, if every entry is finite.
    pub fn total(&self) -> Option<u64> {
        let mut t = 0u64;
        for (_, m) in self.iter() {
            t = t.checked_add(m.finite()?)?;
        }
        Some(t)
    }
}

impl serde::Serialize for CharVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.mult.len()))?;
        for (&r, m) in &self.mult {
            map.serialize_entry(&r.to_string(), m)?;
        }
        map.end()
    }
}

/// Graded representation data: one `CharVector` per cohomological degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtTable {
    d: u32,
    rows: BTreeMap<i32, CharVector>,
}

impl ExtTable {
    pub fn zero(d: u32) -> Self {
        ExtTable { d, rows: BTreeMap::new() }
    }

    pub fn modulus(&self) -> u32 {
        self.d
    }

    pub fn add_entry(&mut self, degree: i32, ch: Character, m: Mult) {
        assert_eq!(ch.modulus(), self.d);
        if m.is_zero() {
            return;
        }
        self.rows
            .entry(degree)
            .or_insert_with(|| CharVector::zero(self.d))
            .add_char(ch, m);
    }

    pub fn add_row(&mut self, degree: i32, v: &CharVector) {
        assert_eq!(v.modulus(), self.d);
        if v.is_zero() {
            return;
        }
        self.rows
            .entry(degree)
            .or_insert_with(|| CharVector::zero(self.d))
            .add_assign(v);
    }

    pub fn row(&self, degree: i32) -> CharVector {
        self.rows.get(&degree).cloned().unwrap_or_else(|| CharVector::zero(self.d))
    }

    pub fn rows(&self) -> impl Iterator<Item = (i32, &CharVector)> + '_ {
        self.rows.iter().map(|(&deg, v)| (deg, v))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.values().all(|v| v.is_zero())
    }

    /// True when the invariant part vanishes in every degree.
    pub fn invariant_is_zero(&self) -> bool {
        self.rows.values().all(|v| v.invariant().is_zero())
    }

    /// Degrees carrying a nonzero invariant multiplicity, with the values.
    pub fn invariant_rows(&self) -> BTreeMap<i32, Mult> {
        self.rows
            .iter()
            .filter_map(|(&deg, v)| {
                let inv = v.invariant();
                (!inv.is_zero()).then_some((deg, inv))
            })
            .collect()
    }

    pub fn tensor_char(&self, ch: Character) -> ExtTable {
        let mut out = ExtTable::zero(self.d);
        for (deg, v) in self.rows() {
            out.add_row(deg, &v.tensor_char(ch));
        }
        out
    }

    pub fn shift(&self, by: i32) -> ExtTable {
        let mut out = ExtTable::zero(self.d);
        for (deg, v) in self.rows() {
            out.add_row(deg + by, v);
        }
        out
    }

    /// Serre-dual table on a space of dimension `dim`: degree i becomes
    /// dim - i and every representation is replaced by its dual.
    pub fn serre_dual(&self, dim: i32) -> ExtTable {
        let mut out = ExtTable::zero(self.d);
        for (deg, v) in self.rows() {
            out.add_row(dim - deg, &v.dual());
        }
        out
    }
}

impl serde::Serialize for ExtTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let nonzero: Vec<_> = self.rows.iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut map = s.serialize_map(Some(nonzero.len()))?;
        for (deg, v) in nonzero {
            map.serialize_entry(&deg.to_string(), v)?;
        }
        map.end()
    }
}

/// A list of coordinate weights: the mu_d-characters of the homogeneous
/// coordinates of a (weighted) projective space or of a local variable set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedSpace {
    d: u32,
    weights: Vec<Character>,
}

impl WeightedSpace {
    pub fn new(d: u32, weights: Vec<i64>) -> Self {
        WeightedSpace {
            d,
            weights: weights.into_iter().map(|w| Character::new(d, w)).collect(),
        }
    }

    /// The coordinate line P^1 through one weight-0 and one weight -1
    /// coordinate; every join line carries this equivariant structure.
    pub fn join_line(d: u32) -> Self {
        WeightedSpace::new(d, vec![0, -1])
    }

    pub fn modulus(&self) -> u32 {
        self.d
    }

    pub fn weights(&self) -> &[Character] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Projective dimension of the space (#coordinates - 1).
    pub fn dim(&self) -> i64 {
        self.weights.len() as i64 - 1
    }

    /// Sum of all coordinate weights; the canonical bundle of the space is
    /// O(-#coords) twisted by this character.
    pub fn weight_determinant(&self) -> Character {
        self.weights
            .iter()
            .fold(Character::zero(self.d), |acc, &w| acc + w)
    }
}
