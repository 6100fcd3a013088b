//! Ext tables between the spanning objects of the decomposition.
//!
//! The objects are equivariant line bundles on X, structure sheaves of
//! points on the two fixed loci (X_f where the y-coordinates vanish, X_g
//! where the x-coordinates vanish), and twisted structure sheaves of join
//! lines l(p, q) connecting the loci.  All points and lines stand for
//! generic representatives; the small `rep` indices only distinguish
//! "same representative" from "different representative".
//!
//! Fiber-weight rule: O(k) chi^c restricted to a point of X_f has
//! character c, and at a point of X_g character c - k (the x-chart
//! trivialization is invariant, the y-chart one has weight -1 per degree).
//!
//! `hom_table` dispatches on the pair of objects; pairs with a torsion
//! source and a "larger" target are reduced once through Serre duality
//!     Ext^i(A, B) = Ext^{m+n-2-i}(B, A(d-m-n) chi^{-n})^dual
//! and then resolved directly.

use crate::chars::{Character, ExtTable, Mult, WeightedSpace};
use crate::cohomology::{cohomology_hypersurface, cohomology_projective, CohomologyError};
use crate::config::Config;
use crate::localext::{koszul_ext, point_ext, LocalModel, TangentModel};
use std::fmt;

/// A spanning object of one of the admissible components.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpanObject {
    /// O_X(k) tensor chi^c.
    LineBundle { k: i64, c: i64 },
    /// A point of X_f twisted by chi^c.
    PointF { c: i64, rep: u8 },
    /// A point of X_g twisted by chi^c.
    PointG { c: i64, rep: u8 },
    /// O_l(k) tensor chi^c on the join line l(p, q).
    LineOnJoin { k: i64, c: i64, p_rep: u8, q_rep: u8 },
}

impl SpanObject {
    pub fn line_bundle(k: i64, c: i64) -> Self {
        SpanObject::LineBundle { k, c }
    }

    pub fn point_f(c: i64) -> Self {
        SpanObject::PointF { c, rep: 0 }
    }

    pub fn point_g(c: i64) -> Self {
        SpanObject::PointG { c, rep: 0 }
    }

    pub fn line_on_join(k: i64, c: i64) -> Self {
        SpanObject::LineOnJoin { k, c, p_rep: 0, q_rep: 0 }
    }

    /// Compact label for reports, e.g. "O(-2)chi^-1" or "O_p(chi^2)".
    pub fn label(&self) -> String {
        match *self {
            SpanObject::LineBundle { k, c } => format!("O({k})chi^{c}"),
            SpanObject::PointF { c, rep } if rep == 0 => format!("O_p(chi^{c})"),
            SpanObject::PointF { c, rep } => format!("O_p{rep}(chi^{c})"),
            SpanObject::PointG { c, rep } if rep == 0 => format!("O_q(chi^{c})"),
            SpanObject::PointG { c, rep } => format!("O_q{rep}(chi^{c})"),
            SpanObject::LineOnJoin { k, c, p_rep, q_rep } if p_rep == 0 && q_rep == 0 => {
                format!("O_l({k})chi^{c}")
            }
            SpanObject::LineOnJoin { k, c, p_rep, q_rep } => {
                format!("O_l[p{p_rep},q{q_rep}]({k})chi^{c}")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HomError {
    Cohomology(CohomologyError),
    /// The object does not exist for this configuration (e.g. X_f-side
    /// objects of a cyclic cover with m = 1).
    InvalidObject { object: String, cfg: String },
    /// No dispatch rule decides this pair.
    Undecided { later: String, earlier: String },
}

impl fmt::Display for HomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomError::Cohomology(e) => write!(f, "{e}"),
            HomError::InvalidObject { object, cfg } => {
                write!(f, "object {object} is not defined for configuration {cfg}")
            }
            HomError::Undecided { later, earlier } => {
                write!(f, "UNDECIDED: no rule for Ext({later}, {earlier})")
            }
        }
    }
}

impl std::error::Error for HomError {}

impl From<CohomologyError> for HomError {
    fn from(e: CohomologyError) -> Self {
        HomError::Cohomology(e)
    }
}

/// Tangent weights at a point of X_f: m - 2 trivial directions along X_f
/// and n directions of weight +1 towards the g-coordinates.
pub fn tangent_f(cfg: &Config) -> TangentModel {
    let mut w = vec![0i64; cfg.m() as usize - 2];
    w.extend(std::iter::repeat(1).take(cfg.n() as usize));
    TangentModel::new(cfg.d(), w)
}

/// Tangent weights at a point of X_g: n - 2 trivial directions and m of
/// weight -1.  For cyclic covers (m = 1) this is {0 x (n-2), -1}.
pub fn tangent_g(cfg: &Config) -> TangentModel {
    let mut w = vec![0i64; cfg.n() as usize - 2];
    w.extend(std::iter::repeat(-1).take(cfg.m() as usize));
    TangentModel::new(cfg.d(), w)
}

/// Local coordinate weights (functions) at an X_f point: dual to
/// `tangent_f`.  The first weight -1 slot is the join-line direction.
fn local_vars_f(cfg: &Config) -> Vec<(String, i64)> {
    let mut v: Vec<(String, i64)> = (0..cfg.m() - 2).map(|i| (format!("x{}", i + 1), 0)).collect();
    v.extend((0..cfg.n()).map(|j| (format!("y{}", j + 1), -1)));
    v
}

/// Local coordinate weights at an X_g point; the first weight +1 slot is
/// the join-line direction.
fn local_vars_g(cfg: &Config) -> Vec<(String, i64)> {
    let mut v: Vec<(String, i64)> = (0..cfg.n() - 2).map(|i| (format!("u{}", i + 1), 0)).collect();
    v.extend((0..cfg.m()).map(|j| (format!("v{}", j + 1), 1)));
    v
}

fn model(cfg: &Config, vars: Vec<(String, i64)>, source: &[usize], target: &[usize], twist: i64) -> LocalModel {
    let borrowed: Vec<(&str, i64)> = vars.iter().map(|(n, w)| (n.as_str(), *w)).collect();
    LocalModel::new(cfg.d(), borrowed, source, target, twist)
}

/// The normal bundle of a join line splits equivariantly as
/// O(1)^{m-2} + (O(1) chi)^{n-2} + O(2-d) chi, written on the line's
/// intrinsic coordinates (weight 0 towards p, weight -1 towards q).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalSplitting {
    summands: Vec<(i64, Character)>,
}

impl NormalSplitting {
    pub fn summands(&self) -> &[(i64, Character)] {
        &self.summands
    }
}

pub fn normal_bundle_line(cfg: &Config) -> Result<NormalSplitting, HomError> {
    if cfg.m() < 2 {
        return Err(HomError::InvalidObject {
            object: "join line".into(),
            cfg: cfg.to_string(),
        });
    }
    let d = cfg.d();
    let mut summands = Vec::new();
    for _ in 0..cfg.m() - 2 {
        summands.push((1, Character::new(d, 0)));
    }
    for _ in 0..cfg.n() - 2 {
        summands.push((1, Character::new(d, 1)));
    }
    summands.push((2 - d as i64, Character::new(d, 1)));
    Ok(NormalSplitting { summands })
}

/// Character decomposition of H^0 and H^1 of O(a) chi^c on a join line.
fn line_cohomology(d: u32, a: i64, c: Character) -> ExtTable {
    cohomology_projective(&WeightedSpace::join_line(d), a, c)
}

/// Invariant upper bound for Ext^*(O_l, O_l(dk) chi^dc) on a single join
/// line, from the local-to-global spectral sequence: row r + s accumulates
/// the invariant part of H^r(Lambda^s N tensor O(dk) chi^dc).
pub fn line_self_ext_bound(cfg: &Config, dk: i64, dc: i64) -> Result<ExtTable, HomError> {
    let d = cfg.d();
    let normal = normal_bundle_line(cfg)?;
    // Lambda^s of the normal bundle as a multiset of line-bundle summands.
    let mut powers: Vec<Vec<(i64, Character, u64)>> = vec![Vec::new(); normal.summands().len() + 1];
    powers[0].push((0, Character::zero(d), 1));
    for &(deg, ch) in normal.summands() {
        for s in (0..powers.len() - 1).rev() {
            let bumped: Vec<(i64, Character, u64)> = powers[s]
                .iter()
                .map(|&(a, b, m)| (a + deg, b + ch, m))
                .collect();
            for (a, b, m) in bumped {
                match powers[s + 1].iter_mut().find(|(x, y, _)| *x == a && *y == b) {
                    Some(entry) => entry.2 += m,
                    None => powers[s + 1].push((a, b, m)),
                }
            }
        }
    }
    let dch = Character::new(d, dc);
    let mut table = ExtTable::zero(d);
    for (s, summands) in powers.iter().enumerate() {
        for &(a, ch, mult) in summands {
            let coh = line_cohomology(d, a + dk, ch + dch);
            for r in 0..=1 {
                if let Mult::Finite(h) = coh.row(r).invariant() {
                    if h > 0 {
                        table.add_entry(r + s as i32, Character::zero(d), Mult::Finite(h * mult));
                    }
                } else {
                    unreachable!("line cohomology is finite");
                }
            }
        }
    }
    Ok(table)
}

/// Invariant self-Ext bound of the untwisted join line.
pub fn self_ext_line(cfg: &Config) -> Result<ExtTable, HomError> {
    line_self_ext_bound(cfg, 0, 0)
}

fn chi(cfg: &Config, v: i64) -> Character {
    Character::new(cfg.d(), v)
}

/// Character of the fiber of O(k) chi^c at a point of the given locus.
fn fiber_char(cfg: &Config, k: i64, c: i64, on_g: bool) -> Character {
    if on_g {
        chi(cfg, c - k)
    } else {
        chi(cfg, c)
    }
}

fn skyscraper_hom(cfg: &Config, ch: Character) -> ExtTable {
    let mut t = ExtTable::zero(cfg.d());
    t.add_entry(0, ch, Mult::Finite(1));
    t
}

/// Twist an object by the Serre line bundle O(d - m - n) chi^{-n}; for
/// torsion objects this only moves the character by the fiber weight.
fn serre_twisted(cfg: &Config, obj: SpanObject) -> SpanObject {
    let (tk, _) = cfg.serre_twist();
    let tc = -(cfg.n() as i64);
    match obj {
        SpanObject::LineBundle { k, c } => SpanObject::LineBundle { k: k + tk, c: c + tc },
        SpanObject::PointF { c, rep } => SpanObject::PointF { c: c + tc, rep },
        SpanObject::PointG { c, rep } => SpanObject::PointG { c: c + tc - tk, rep },
        SpanObject::LineOnJoin { k, c, p_rep, q_rep } => SpanObject::LineOnJoin {
            k: k + tk,
            c: c + tc,
            p_rep,
            q_rep,
        },
    }
}

fn validate(cfg: &Config, obj: SpanObject) -> Result<(), HomError> {
    let needs_f = matches!(obj, SpanObject::PointF { .. } | SpanObject::LineOnJoin { .. });
    if needs_f && cfg.m() < 2 {
        return Err(HomError::InvalidObject {
            object: obj.label(),
            cfg: cfg.to_string(),
        });
    }
    Ok(())
}

/// Full character table of Ext^*(later, earlier) between spanning
/// objects.  For a pair of identical join lines the table is the
/// invariant spectral-sequence bound; every other case is exact.
pub fn hom_table(cfg: &Config, later: SpanObject, earlier: SpanObject) -> Result<ExtTable, HomError> {
    validate(cfg, later)?;
    validate(cfg, earlier)?;
    use SpanObject::*;
    let d = cfg.d();
    match (later, earlier) {
        (LineBundle { k: k1, c: c1 }, LineBundle { k: k2, c: c2 }) => {
            Ok(cohomology_hypersurface(cfg, k2 - k1, chi(cfg, c2 - c1))?)
        }
        (LineBundle { k, c }, PointF { c: cp, .. }) => {
            Ok(skyscraper_hom(cfg, chi(cfg, cp) - fiber_char(cfg, k, c, false)))
        }
        (LineBundle { k, c }, PointG { c: cq, .. }) => {
            Ok(skyscraper_hom(cfg, chi(cfg, cq) - fiber_char(cfg, k, c, true)))
        }
        (LineBundle { k: k1, c: c1 }, LineOnJoin { k: k2, c: c2, .. }) => {
            Ok(line_cohomology(d, k2 - k1, chi(cfg, c2 - c1)))
        }
        (PointF { c: c1, rep: r1 }, PointF { c: c2, rep: r2 }) => {
            if r1 == r2 {
                Ok(point_ext(&tangent_f(cfg), chi(cfg, c2 - c1)))
            } else {
                Ok(ExtTable::zero(d))
            }
        }
        (PointG { c: c1, rep: r1 }, PointG { c: c2, rep: r2 }) => {
            if r1 == r2 {
                Ok(point_ext(&tangent_g(cfg), chi(cfg, c2 - c1)))
            } else {
                Ok(ExtTable::zero(d))
            }
        }
        // The fixed loci are disjoint.
        (PointF { .. }, PointG { .. }) | (PointG { .. }, PointF { .. }) => Ok(ExtTable::zero(d)),
        (PointF { c: c1, rep }, LineOnJoin { k, c, p_rep, .. }) => {
            if rep != p_rep {
                return Ok(ExtTable::zero(d)); // point not on the line
            }
            let vars = local_vars_f(cfg);
            let all: Vec<usize> = (0..vars.len()).collect();
            // Target kills everything except the line direction (the
            // first weight -1 variable).
            let line_dir = cfg.m() as usize - 2;
            let target: Vec<usize> = all.iter().copied().filter(|&i| i != line_dir).collect();
            let twist = (fiber_char(cfg, k, c, false) - chi(cfg, c1)).residue() as i64;
            Ok(koszul_ext(&model(cfg, vars, &all, &target, twist)))
        }
        (PointG { c: c1, rep }, LineOnJoin { k, c, q_rep, .. }) => {
            if rep != q_rep {
                return Ok(ExtTable::zero(d));
            }
            let vars = local_vars_g(cfg);
            let all: Vec<usize> = (0..vars.len()).collect();
            let line_dir = cfg.n() as usize - 2;
            let target: Vec<usize> = all.iter().copied().filter(|&i| i != line_dir).collect();
            let twist = (fiber_char(cfg, k, c, true) - chi(cfg, c1)).residue() as i64;
            Ok(koszul_ext(&model(cfg, vars, &all, &target, twist)))
        }
        (
            LineOnJoin { k: k1, c: c1, p_rep: p1, q_rep: q1 },
            LineOnJoin { k: k2, c: c2, p_rep: p2, q_rep: q2 },
        ) => {
            if p1 == p2 && q1 == q2 {
                line_self_ext_bound(cfg, k2 - k1, c2 - c1)
            } else if p1 == p2 {
                // Shared X_f point: resolve the first line's module and
                // map into the second line's module at the common chart.
                let vars = local_vars_f(cfg);
                let dir1 = cfg.m() as usize - 2;
                let dir2 = dir1 + 1;
                let source: Vec<usize> = (0..vars.len()).filter(|&i| i != dir1).collect();
                let target: Vec<usize> = (0..vars.len()).filter(|&i| i != dir2).collect();
                let twist = (fiber_char(cfg, k2, c2, false) - fiber_char(cfg, k1, c1, false)).residue() as i64;
                Ok(koszul_ext(&model(cfg, vars, &source, &target, twist)))
            } else if q1 == q2 {
                // Shared X_g point, by the symmetric chart.
                let vars = local_vars_g(cfg);
                let dir1 = cfg.n() as usize - 2;
                let dir2 = dir1 + 1;
                let source: Vec<usize> = (0..vars.len()).filter(|&i| i != dir1).collect();
                let target: Vec<usize> = (0..vars.len()).filter(|&i| i != dir2).collect();
                let twist = (fiber_char(cfg, k2, c2, true) - fiber_char(cfg, k1, c1, true)).residue() as i64;
                Ok(koszul_ext(&model(cfg, vars, &source, &target, twist)))
            } else {
                Ok(ExtTable::zero(d))
            }
        }
        // Torsion source against a locally-free (or farther) target:
        // reduce once through Serre duality and dispatch again.
        (PointF { .. } | PointG { .. } | LineOnJoin { .. }, LineBundle { .. })
        | (LineOnJoin { .. }, PointF { .. } | PointG { .. }) => {
            let reduced = hom_table(cfg, earlier, serre_twisted(cfg, later))?;
            Ok(reduced.serre_dual(cfg.dim_x() as i32))
        }
    }
}
