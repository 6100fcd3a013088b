//! Shared brute-force oracles for the integration tests.
//!
//! Everything here recomputes cohomology and local Ext from first
//! principles: enumerate monomials, build the actual matrices, and take
//! exact ranks over the rationals.  None of the closed-form shortcuts from
//! the library are used, so agreement is meaningful.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use sodcheck::chars::{CharVector, Character, Mult};
use sodcheck::config::Config;
use sodcheck::localext::{koszul_ext, LocalModel};
use std::collections::BTreeMap;

/// Exact rank of an integer matrix via Gaussian elimination over Q.
pub fn rank_exact(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&e| BigRational::from(BigInt::from(e))).collect())
        .collect();
    let nrows = m.len();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        // Partial pivoting keeps the entries from collapsing to zero rows
        // early; with exact arithmetic any nonzero pivot works.
        let pivot = (rank..nrows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].clone();
        for r in rank + 1..nrows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &inv;
            for c in col..ncols {
                let sub = &factor * &m[rank][c];
                m[r][c] -= sub;
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// All exponent vectors of the given total degree in `vars` variables.
pub fn monomials(vars: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; vars];
    fn rec(current: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == current.len() {
            current[pos] = left;
            out.push(current.clone());
            return;
        }
        for e in 0..=left {
            current[pos] = e;
            rec(current, pos + 1, left - e, out);
        }
    }
    if vars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut current, 0, degree, &mut out);
    out
}

fn weight_of(mono: &[u32], weights: &[i64]) -> i64 {
    mono.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum()
}

/// Degree-k monomials on the ambient space of `cfg` whose section character
/// (monomial weight plus the twist c) is `e` mod d.
fn ambient_slice(cfg: &Config, k: i64, c: i64, e: i64) -> Vec<Vec<u32>> {
    if k < 0 {
        return Vec::new();
    }
    let d = cfg.d() as i64;
    let weights: Vec<i64> = std::iter::repeat(0i64)
        .take(cfg.m() as usize)
        .chain(std::iter::repeat(-1i64).take(cfg.n() as usize))
        .collect();
    monomials(weights.len(), k as u32)
        .into_iter()
        .filter(|m| (weight_of(m, &weights) + c - e).rem_euclid(d) == 0)
        .collect()
}

/// Sections of O_X(k) chi^c in character e on the Fermat hypersurface
/// f + g = sum x_i^d + sum y_j^d, computed as the corank of literal
/// multiplication by f + g from degree k - d into degree k.
pub fn fermat_h0(cfg: &Config, k: i64, c: i64, e: i64) -> u64 {
    let target = ambient_slice(cfg, k, c, e);
    if target.is_empty() {
        return 0;
    }
    let source = ambient_slice(cfg, k - cfg.d() as i64, c, e);
    let index: BTreeMap<Vec<u32>, usize> =
        target.iter().cloned().zip(0..).collect();
    // Matrix of multiplication by f + g: column per source monomial, one
    // +1 entry for each product mu * v^d that survives in the slice.
    let mut cols: Vec<Vec<i64>> = Vec::new();
    for mu in &source {
        let mut col = vec![0i64; target.len()];
        for v in 0..mu.len() {
            let mut prod = mu.clone();
            prod[v] += cfg.d();
            let row = index[&prod];
            col[row] += 1;
        }
        cols.push(col);
    }
    let rows: Vec<Vec<i64>> = (0..target.len())
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    target.len() as u64 - rank_exact(&rows) as u64
}

/// Top cohomology of O_X(k) chi^c in character e on the Fermat model via
/// the duality pairing with sections of O(d-m-n-k) chi^{-n-c}.
pub fn fermat_htop(cfg: &Config, k: i64, c: i64, e: i64) -> u64 {
    let (tk, tc) = cfg.serre_twist();
    fermat_h0(cfg, tk - k, tc.residue() as i64 - c, -e)
}

/// Full brute-force character vector for one cohomological row.
pub fn fermat_row(cfg: &Config, k: i64, c: i64, top: bool) -> CharVector {
    let d = cfg.d();
    let mut v = CharVector::zero(d);
    for e in 0..d as i64 {
        let h = if top { fermat_htop(cfg, k, c, e) } else { fermat_h0(cfg, k, c, e) };
        if h > 0 {
            v.add_char(Character::new(d, e), Mult::Finite(h));
        }
    }
    v
}

/// A deterministic random local-Ext model for the Koszul oracle.
pub struct RandomModel {
    pub d: u32,
    pub weights: Vec<i64>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub twist: i64,
}

impl RandomModel {
    pub fn build(&self) -> LocalModel {
        let names = ["a", "b", "c", "e", "f"];
        let vars: Vec<(&str, i64)> =
            self.weights.iter().enumerate().map(|(i, &w)| (names[i], w)).collect();
        LocalModel::new(self.d, vars, &self.source, &self.target, self.twist)
    }
}

/// Draw a model from a splitmix-style generator so the suite is frozen.
pub fn random_model(seed: &mut u64) -> RandomModel {
    let mut next = || {
        *seed = seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = *seed;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    let d = 2 + (next() % 5) as u32; // modulus 2..=6
    let nvars = 1 + (next() % 5) as usize; // 1..=5 variables
    let weights: Vec<i64> = (0..nvars).map(|_| (next() % 7) as i64 - 3).collect();
    let mut source = Vec::new();
    let mut target = Vec::new();
    for i in 0..nvars {
        if next() % 2 == 0 {
            source.push(i);
        }
        if next() % 2 == 0 {
            target.push(i);
        }
    }
    // An empty source set means Ext(R, -): keep at least one generator so
    // the Koszul complex is nontrivial.
    if source.is_empty() {
        source.push((next() % nvars as u64) as usize);
    }
    let twist = (next() % (d as u64)) as i64;
    RandomModel { d, weights, source, target, twist }
}

/// Matrix-level check of `koszul_ext` against the literal truncated Koszul
/// complex Hom(K(S), R/(T) chi^t), with monomials cut at total degree
/// `cutoff`.
///
/// The complex splits into blocks indexed by the multidegree
/// beta = mdeg(mu) - mdeg(I) of a basis element e_I^* tensor mu, which the
/// differential preserves; a block carries the single internal degree
/// |beta| and a single character, and its slice of the complex is complete
/// (untouched by the truncation) whenever |beta| <= cutoff - |S|.  Per
/// cohomological degree and character, the block cohomologies summed over
/// internal degree a = |beta| + s must match the factored answer: the
/// finite core on the variables in S and T, convolved with the monomial
/// count of the leftover free variables in degree a.
pub fn koszul_matrix_check(model: &RandomModel, cutoff: i64) -> bool {
    let lm = model.build();
    let d = model.d as i64;
    let nvars = model.weights.len();
    let in_s: Vec<bool> = (0..nvars).map(|i| model.source.contains(&i)).collect();
    let in_t: Vec<bool> = (0..nvars).map(|i| model.target.contains(&i)).collect();
    let s_size = model.source.len() as i64;

    // Brute cohomology dimensions: (degree, character residue, a) -> dim,
    // where a is the monomial degree deg(mu) at that cohomological degree.
    let mut brute: BTreeMap<(i32, u32, i64), i64> = BTreeMap::new();

    // Enumerate the block multidegrees: beta_v >= -1 on S, beta_v = 0 on
    // T \ S and on S cap T unless v is in I, >= 0 on free variables.
    let mut stack: Vec<(usize, Vec<i64>, i64)> = vec![(0, Vec::new(), 0)];
    while let Some((pos, beta, total)) = stack.pop() {
        if pos == nvars {
            if total > cutoff - s_size {
                continue;
            }
            check_block(&beta, &in_s, &in_t, model, &mut brute);
            continue;
        }
        let lo = if in_s[pos] { -1 } else { 0 };
        // Upper bound from |beta| <= cutoff - |S|, crediting the remaining
        // S-coordinates, which can still contribute -1 each.
        let remaining_s = (pos + 1..nvars).filter(|&v| in_s[v]).count() as i64;
        let hi = if in_t[pos] {
            // mu_v must vanish on T: beta_v is 0, or -1 when also in S.
            0
        } else {
            cutoff - s_size - total + remaining_s
        };
        if hi < lo {
            continue;
        }
        for b in lo..=hi {
            let mut nb = beta.clone();
            nb.push(b);
            stack.push((pos + 1, nb, total + b));
        }
    }

    // Factored side: finite core on S cup T, free monomial counts outside.
    let core_vars: Vec<usize> = (0..nvars).filter(|&i| in_s[i] || in_t[i]).collect();
    let names = ["a", "b", "c", "e", "f"];
    let core_model = LocalModel::new(
        model.d as u32,
        core_vars.iter().map(|&i| (names[i], model.weights[i])).collect(),
        &model
            .source
            .iter()
            .map(|v| core_vars.iter().position(|&i| i == *v).unwrap())
            .collect::<Vec<_>>(),
        &model
            .target
            .iter()
            .map(|v| core_vars.iter().position(|&i| i == *v).unwrap())
            .collect::<Vec<_>>(),
        model.twist,
    );
    let core = koszul_ext(&core_model);
    let free_weights: Vec<i64> =
        (0..nvars).filter(|&i| !in_s[i] && !in_t[i]).map(|i| model.weights[i]).collect();

    // free_count[a][r]: monomials of degree a in the free variables with
    // weight r mod d.  Classes at block degree |beta| <= cutoff - |S| and
    // cohomological degree <= |S| never need more than degree `cutoff`.
    let max_a = cutoff.max(0);
    let mut free_count: Vec<BTreeMap<u32, i64>> = Vec::new();
    for a in 0..=max_a as u32 {
        let mut slice = BTreeMap::new();
        for mono in monomials(free_weights.len(), a) {
            let r = weight_of(&mono, &free_weights).rem_euclid(d) as u32;
            *slice.entry(r).or_insert(0) += 1;
        }
        free_count.push(slice);
    }

    // Expected dimension at (degree s, character e, monomial degree a):
    // core classes at degree s all sit at monomial degree 0, so the free
    // part supplies the whole degree a.
    let mut ok = true;
    let mut expected: BTreeMap<(i32, u32, i64), i64> = BTreeMap::new();
    for (deg, row) in core.rows() {
        for (ch, mult) in row.iter() {
            let Mult::Finite(count) = mult else { return false };
            if count == 0 {
                continue;
            }
            for (a, slice) in free_count.iter().enumerate() {
                let a = a as i64;
                for (&r, &fc) in slice {
                    let e = (ch.residue() as i64 + r as i64).rem_euclid(d) as u32;
                    // Internal bound: the block holding this class has
                    // |beta| = a - deg (core classes use deg exterior
                    // generators), and only blocks with |beta| <= cutoff-|S|
                    // were enumerated.
                    if a - deg as i64 > cutoff - s_size {
                        continue;
                    }
                    *expected.entry((deg, e, a)).or_insert(0) += count as i64 * fc;
                }
            }
        }
    }
    expected.retain(|_, v| *v != 0);
    let mut got = brute;
    got.retain(|_, v| *v != 0);
    if expected != got {
        ok = false;
    }

    // Consistency of the full-model table with the core tensor free part.
    let full = koszul_ext(&lm);
    let mut rebuilt = sodcheck::chars::ExtTable::zero(model.d as u32);
    let free_factor = brute_free_factor(model.d, &free_weights);
    for (deg, row) in core.rows() {
        rebuilt.add_row(deg, &row.tensor(&free_factor));
    }
    if full != rebuilt {
        ok = false;
    }
    ok
}

/// The free-variable character factor by brute reachability: characters of
/// monomials in the free variables, infinite multiplicity each, or the
/// trivial one-dimensional factor when there are none.
fn brute_free_factor(d: u32, free_weights: &[i64]) -> CharVector {
    if free_weights.is_empty() {
        return CharVector::single(Character::zero(d), Mult::Finite(1));
    }
    let mut seen = vec![false; d as usize];
    seen[0] = true;
    loop {
        let mut changed = false;
        for r in 0..d as usize {
            if !seen[r] {
                continue;
            }
            for &w in free_weights {
                let nr = (r as i64 + w).rem_euclid(d as i64) as usize;
                if !seen[nr] {
                    seen[nr] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut v = CharVector::zero(d);
    for r in 0..d as usize {
        if seen[r] {
            v.add_char(Character::new(d, r as i64), Mult::Infinite);
        }
    }
    v
}

/// Cohomology of one multidegree block of the truncated Hom complex.
fn check_block(
    beta: &[i64],
    in_s: &[bool],
    in_t: &[bool],
    model: &RandomModel,
    out: &mut BTreeMap<(i32, u32, i64), i64>,
) {
    let nvars = beta.len();
    let d = model.d as i64;
    // The block basis: subsets I of S with mu = beta + chi_I >= 0 and
    // mu_v = 0 on T.  Forced/forbidden memberships leave free choices only
    // on S-variables where both values of mu_v are legal.
    let mut forced: Vec<usize> = Vec::new();
    let mut optional: Vec<usize> = Vec::new();
    for v in 0..nvars {
        if !in_s[v] {
            if in_t[v] && beta[v] != 0 {
                return; // no basis element: mu_v would be nonzero on T
            }
            continue;
        }
        let can_out = beta[v] >= 0 && !(in_t[v] && beta[v] != 0);
        let can_in = !(in_t[v] && beta[v] != -1);
        match (can_out, can_in) {
            (false, false) => return,
            (true, false) => {}
            (false, true) => forced.push(v),
            (true, true) => optional.push(v),
        }
    }
    // Character of the block: twist + sum beta_v * w_v.
    let ch = (model.twist + beta.iter().zip(&model.weights).map(|(&b, &w)| b * w).sum::<i64>())
        .rem_euclid(d) as u32;
    let a0 = beta.iter().sum::<i64>(); // deg(mu) - |I|

    // Basis per cohomological degree s = |forced| + (chosen optionals).
    let base = forced.len();
    let k = optional.len();
    let mut basis: Vec<Vec<Vec<usize>>> = vec![Vec::new(); k + 1];
    for mask in 0u32..(1 << k) {
        let mut set: Vec<usize> = forced.clone();
        for (bit, &v) in optional.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                set.push(v);
            }
        }
        set.sort_unstable();
        basis[mask.count_ones() as usize].push(set);
    }

    // Differential d_s: C^s -> C^{s+1}, e_I^* mu -> sum over addable v of
    // sign * e_{I+v}^* (v mu); within the block, addable v are exactly the
    // optional variables missing from I.
    let mut ranks = vec![0usize; k + 1];
    for s in 0..k {
        let target_index: BTreeMap<&Vec<usize>, usize> =
            basis[s + 1].iter().zip(0..).collect();
        let mut rows = vec![vec![0i64; basis[s].len()]; basis[s + 1].len()];
        for (col, set) in basis[s].iter().enumerate() {
            for &v in &optional {
                if set.contains(&v) {
                    continue;
                }
                let mut bigger = set.clone();
                let pos = bigger.iter().position(|&w| w > v).unwrap_or(bigger.len());
                bigger.insert(pos, v);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                rows[target_index[&bigger]][col] = sign;
            }
        }
        ranks[s] = rank_exact(&rows);
    }
    for s in 0..=k {
        let dim = basis[s].len() as i64;
        let out_rank = if s < k { ranks[s] as i64 } else { 0 };
        let in_rank = if s > 0 { ranks[s - 1] as i64 } else { 0 };
        let h = dim - out_rank - in_rank;
        debug_assert!(h >= 0);
        if h > 0 {
            let deg = (base + s) as i32;
            let a = a0 + (base + s) as i64; // deg(mu) at this column
            *out.entry((deg, ch, a)).or_insert(0) += h;
        }
    }
}

/// Silence the unused warning for `BigRational::one` style imports in
/// targets that only use part of this module.
fn _touch() {
    let _ = BigRational::one().abs();
}
