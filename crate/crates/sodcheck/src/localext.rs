//! Local Ext between cyclic modules over an equivariant power-series ring.
//!
//! The inputs are a list of local variables with mu_d-weights, two subsets
//! S and T of the variables, and a character twist; the output is
//! Ext^*_R(R/(S), R/(T) tensor chi^twist) for R = k[[variables]].
//!
//! The Koszul resolution of R/(S) is the tensor product over v in S of the
//! factors (R e_v tensor chi^{w_v} -> R).  Applying Hom(-, R/(T)) factors
//! the answer:
//!   * v in both S and T: the differential dies, leaving an exterior
//!     generator of degree 1 and character -w_v;
//!   * v in S only: multiplication by v is injective on R/(T), leaving a
//!     single cohomology class that shifts the degree by one, contributes
//!     character -w_v, and kills v in the residual module;
//!   * v in neither: a free power-series variable of the residual module,
//!     contributing infinitely many monomials in each reachable character.
//!
//! Tangent-space exterior algebras (point self-Exts) are the special case
//! S = T = all variables, exposed directly as `point_ext`.

use crate::chars::{CharVector, Character, ExtTable, Mult};
use std::collections::BTreeSet;

/// A named local variable with its mu_d-weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Variable {
    pub name: String,
    pub weight: Character,
}

/// Ext computation input: variables, the two cutting sets (as indices into
/// `vars`), and an overall character twist on the target module.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalModel {
    vars: Vec<Variable>,
    source: BTreeSet<usize>,
    target: BTreeSet<usize>,
    twist: Character,
}

impl LocalModel {
    pub fn new(
        d: u32,
        vars: Vec<(&str, i64)>,
        source: &[usize],
        target: &[usize],
        twist: i64,
    ) -> LocalModel {
        let vars: Vec<Variable> = vars
            .into_iter()
            .map(|(name, w)| Variable {
                name: name.to_string(),
                weight: Character::new(d, w),
            })
            .collect();
        let check = |set: &[usize]| {
            for &i in set {
                assert!(i < vars.len(), "variable index {i} out of range");
            }
        };
        check(source);
        check(target);
        LocalModel {
            vars,
            source: source.iter().copied().collect(),
            target: target.iter().copied().collect(),
            twist: Character::new(d, twist),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.twist.modulus()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn source_set(&self) -> impl Iterator<Item = usize> + '_ {
        self.source.iter().copied()
    }

    pub fn target_set(&self) -> impl Iterator<Item = usize> + '_ {
        self.target.iter().copied()
    }

    pub fn twist(&self) -> Character {
        self.twist
    }
}

/// Characters reachable as weights of monomials in the given variables,
/// i.e. the closure of {0} under adding variable weights.
fn reachable_residues(d: u32, weights: &[Character]) -> Vec<u32> {
    let mut seen = vec![false; d as usize];
    let mut stack = vec![0u32];
    seen[0] = true;
    while let Some(r) = stack.pop() {
        for w in weights {
            let nr = (r + w.residue()) % d;
            if !seen[nr as usize] {
                seen[nr as usize] = true;
                stack.push(nr);
            }
        }
    }
    (0..d).filter(|&r| seen[r as usize]).collect()
}

/// Character distribution of the exterior powers of a weight multiset:
/// entry s of the result is the character vector of Lambda^s.
fn exterior_powers(d: u32, weights: &[Character]) -> Vec<CharVector> {
    let mut rows: Vec<CharVector> = vec![CharVector::zero(d); weights.len() + 1];
    rows[0].add_char(Character::zero(d), Mult::Finite(1));
    for (i, &w) in weights.iter().enumerate() {
        // Fold in one generator: iterate s downward so each generator is
        // used at most once.
        for s in (0..=i).rev() {
            let bumped = rows[s].tensor_char(w);
            rows[s + 1].add_assign(&bumped);
        }
    }
    rows
}

/// Ext^*_R(R/(S), R/(T) tensor chi^twist), as a table of character vectors
/// indexed by cohomological degree.  Degrees range over
/// [|S \ T|, |S|]; free variables outside S and T contribute an infinite
/// multiplicity in every reachable character.
pub fn koszul_ext(model: &LocalModel) -> ExtTable {
    let d = model.modulus();

    let mut exterior_weights = Vec::new(); // -w_v for v in S and T
    let mut shift = 0i32; // |S \ T|
    let mut base_char = model.twist();
    let mut free_weights = Vec::new();
    for (i, v) in model.vars.iter().enumerate() {
        let in_s = model.source.contains(&i);
        let in_t = model.target.contains(&i);
        match (in_s, in_t) {
            (true, true) => exterior_weights.push(-v.weight),
            (true, false) => {
                shift += 1;
                base_char = base_char + (-v.weight);
            }
            (false, false) => free_weights.push(v.weight),
            // v only in T: already dead in the target module.
            (false, true) => {}
        }
    }

    let free_factor = if free_weights.is_empty() {
        CharVector::single(Character::zero(d), Mult::Finite(1))
    } else {
        let mut v = CharVector::zero(d);
        for r in reachable_residues(d, &free_weights) {
            v.add_char(Character::new(d, r as i64), Mult::Infinite);
        }
        v
    };

    let mut table = ExtTable::zero(d);
    for (s, lam) in exterior_powers(d, &exterior_weights).into_iter().enumerate() {
        let row = lam.tensor_char(base_char).tensor(&free_factor);
        table.add_row(shift + s as i32, &row);
    }
    table
}

/// Tangent data at a fixed point: the mu_d-weights of the tangent space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TangentModel {
    weights: Vec<Character>,
}

impl TangentModel {
    pub fn new(d: u32, weights: Vec<i64>) -> TangentModel {
        TangentModel {
            weights: weights.into_iter().map(|w| Character::new(d, w)).collect(),
        }
    }

    pub fn weights(&self) -> &[Character] {
        &self.weights
    }

    pub fn modulus(&self) -> u32 {
        self.weights.first().map(|w| w.modulus()).unwrap_or(1)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }
}

/// Self-Ext of a point with a character offset:
/// Ext^s = Lambda^s(tangent weights) tensor chi^delta in degree s.
pub fn point_ext(tm: &TangentModel, delta: Character) -> ExtTable {
    let d = delta.modulus();
    assert!(tm.weights().iter().all(|w| w.modulus() == d));
    let mut table = ExtTable::zero(d);
    for (s, lam) in exterior_powers(d, tm.weights()).into_iter().enumerate() {
        table.add_row(s as i32, &lam.tensor_char(delta));
    }
    table
}
