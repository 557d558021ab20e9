//! Equi-arrows, cancellable objects, and division.
//!
//! Every uniqueness construction downstream reduces to one of two division
//! problems on a finite model: find the unique `d` with `I ⊗ d = c` for a
//! cancellable object `I` ([`divide_tensor`]), or the unique `d` with
//! `e # d = c` for an equi-arrow `e` ([`divide_whisker`]).  Both are solved by
//! exhaustive search; zero or multiple solutions are hard errors, because they
//! falsify the cancellability/equi-ness hypothesis and must be surfaced, never
//! papered over by a tie-break.
//!
//! Deterministic tie-breaking (smallest id first) is used only where genuine
//! choice is allowed, i.e. when picking a pseudo-inverse witness.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use serde::Serialize;

use crate::kernel::{ObjId, OneId, StructuralError, TwoCategoryModel, TwoId};

/// Which side of the tensor an object is cancelled from.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Which end of `#` an equi-arrow is cancelled from.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum WhiskerEnd {
    /// `c = e # d`
    Pre,
    /// `c = d # e`
    Post,
}

/// A chosen pseudo-inverse for an equi-arrow, upgraded to an adjoint
/// equivalence: `eta : id ⇒ f # g` and `eps : g # f ⇒ id` are invertible and
/// satisfy both triangle equations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AdjointEquivalenceWitness {
    pub f: OneId,
    pub g: OneId,
    pub eta: TwoId,
    pub eps: TwoId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionError {
    /// No preimage exists; falsifies cancellability/equi-ness of the divisor.
    NoPreimage {
        divisor: u32,
        cell: TwoId,
    },
    /// At least two preimages exist; the two smallest witnesses are named.
    MultiplePreimages {
        divisor: u32,
        cell: TwoId,
        first: TwoId,
        second: TwoId,
    },
    Structural(StructuralError),
}

impl fmt::Display for DivisionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisionError::NoPreimage { divisor, cell } => {
                write!(f, "no preimage of {cell} under divisor {divisor}")
            }
            DivisionError::MultiplePreimages {
                divisor,
                cell,
                first,
                second,
            } => {
                write!(
                    f,
                    "preimage of {cell} under divisor {divisor} not unique: {first} and {second}"
                )
            }
            DivisionError::Structural(e) => write!(f, "structural error during division: {e}"),
        }
    }
}

impl From<StructuralError> for DivisionError {
    fn from(e: StructuralError) -> Self {
        DivisionError::Structural(e)
    }
}

/// Search for a pseudo-inverse of `f`, upgraded to an adjoint equivalence.
///
/// Deterministic: candidates are scanned in id order and the first witness
/// wins, so re-runs pick the same inverse.  `None` is a valid answer.
pub fn find_pseudo_inverse(m: &TwoCategoryModel, f: OneId) -> Option<AdjointEquivalenceWitness> {
    let x = m.src1(f);
    let y = m.dst1(f);
    let id_x = m.id1of(x);
    let id_y = m.id1of(y);
    for g in m.hom1(y, x) {
        let fg = match m.c1(f, g) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let gf = match m.c1(g, f) {
            Ok(c) => c,
            Err(_) => continue,
        };
        for eta in m.hom2(id_x, fg) {
            if !m.is_invertible2(eta) {
                continue;
            }
            for eps in m.hom2(gf, id_y) {
                if !m.is_invertible2(eps) {
                    continue;
                }
                let w = AdjointEquivalenceWitness { f, g, eta, eps };
                if triangle_equations_hold(m, &w) {
                    return Some(w);
                }
            }
        }
    }
    None
}

/// Both triangle equations for an adjunction candidate.
pub fn triangle_equations_hold(m: &TwoCategoryModel, w: &AdjointEquivalenceWitness) -> bool {
    // (eta # f) . (f # eps) = id2(f)
    let t1 = m
        .hc(w.eta, m.id2of(w.f))
        .and_then(|a| m.hc(m.id2of(w.f), w.eps).and_then(|b| m.vc(a, b)));
    if t1.ok() != Some(m.id2of(w.f)) {
        return false;
    }
    // (g # eta) . (eps # g) = id2(g)
    let t2 = m
        .hc(m.id2of(w.g), w.eta)
        .and_then(|a| m.hc(w.eps, m.id2of(w.g)).and_then(|b| m.vc(a, b)));
    t2.ok() == Some(m.id2of(w.g))
}

pub fn is_equi_arrow(m: &TwoCategoryModel, f: OneId) -> bool {
    find_pseudo_inverse(m, f).is_some()
}

/// A finite functor between two hom-categories, as explicit maps.
#[derive(Clone, Debug, Serialize)]
pub struct HomFunctorTable {
    pub src_hom: (ObjId, ObjId),
    pub dst_hom: (ObjId, ObjId),
    /// object map: 1-cells of the source hom to 1-cells of the target hom
    pub one_map: BTreeMap<OneId, OneId>,
    /// arrow map: 2-cells of the source hom to 2-cells of the target hom
    pub two_map: BTreeMap<TwoId, TwoId>,
}

impl HomFunctorTable {
    /// Preserves identities and vertical composition.
    pub fn is_well_formed(&self, m: &TwoCategoryModel) -> bool {
        for (&f, &ff) in &self.one_map {
            if self.two_map.get(&m.id2of(f)) != Some(&m.id2of(ff)) {
                return false;
            }
        }
        for (&a, &fa) in &self.two_map {
            for (&b, &fb) in &self.two_map {
                if m.dst2(a) != m.src2(b) {
                    continue;
                }
                let lhs = m
                    .vc(a, b)
                    .ok()
                    .and_then(|ab| self.two_map.get(&ab).copied());
                let rhs = m.vc(fa, fb).ok();
                if lhs != rhs || lhs.is_none() {
                    return false;
                }
            }
        }
        true
    }
}

/// The functor `hom(X,Y) → hom(IX,IY)` (or the right-sided variant) induced
/// by tensoring with the object `I`.
pub fn tensor_hom_functor(
    m: &TwoCategoryModel,
    i: ObjId,
    side: Side,
    x: ObjId,
    y: ObjId,
) -> HomFunctorTable {
    let (sx, sy) = match side {
        Side::Left => (m.tob(i, x), m.tob(i, y)),
        Side::Right => (m.tob(x, i), m.tob(y, i)),
    };
    let mut one_map = BTreeMap::new();
    let mut two_map = BTreeMap::new();
    for f in m.hom1(x, y) {
        let t = match side {
            Side::Left => m.tl1(i, f),
            Side::Right => m.tr1(f, i),
        };
        one_map.insert(f, t);
        for g in m.hom1(x, y) {
            for c in m.hom2(f, g) {
                let tc = match side {
                    Side::Left => m.tl_obj(i, c),
                    Side::Right => m.tr_obj(c, i),
                };
                two_map.insert(c, tc);
            }
        }
    }
    HomFunctorTable {
        src_hom: (x, y),
        dst_hom: (sx, sy),
        one_map,
        two_map,
    }
}

/// Full and faithful: bijective on each 2-cell hom-set.
pub fn is_fully_faithful(m: &TwoCategoryModel, table: &HomFunctorTable) -> bool {
    for (&f, &ff) in &table.one_map {
        for (&g, &fg) in &table.one_map {
            let src_cells = m.hom2(f, g);
            let dst_cells = m.hom2(ff, fg);
            // faithful: distinct cells stay distinct
            let mut images: Vec<TwoId> = src_cells
                .iter()
                .filter_map(|c| table.two_map.get(c).copied())
                .collect();
            if images.len() != src_cells.len() {
                return false;
            }
            images.sort_unstable();
            images.dedup();
            if images.len() != src_cells.len() {
                return false;
            }
            // full: every cell between the images is hit
            if images.len() != dst_cells.len() {
                return false;
            }
        }
    }
    true
}

/// Fully faithful and essentially surjective.
pub fn is_equivalence(m: &TwoCategoryModel, table: &HomFunctorTable) -> bool {
    if !is_fully_faithful(m, table) {
        return false;
    }
    let (dx, dy) = table.dst_hom;
    for h in m.hom1(dx, dy) {
        let hit = table
            .one_map
            .values()
            .any(|&ff| ff == h || m.hom2(ff, h).iter().any(|&c| m.is_invertible2(c)));
        if !hit {
            return false;
        }
    }
    true
}

/// Tensoring with `I` on either side is an equivalence on every
/// hom-category.  (Essential surjectivity matters: an empty hom mapping into
/// a non-empty one is vacuously full and faithful but must not count, or
/// absorbing objects in chaotic models would pass as units.)
pub fn is_cancellable(m: &TwoCategoryModel, i: ObjId) -> bool {
    for x in m.objects() {
        for y in m.objects() {
            if !is_equivalence(m, &tensor_hom_functor(m, i, Side::Left, x, y)) {
                return false;
            }
            if !is_equivalence(m, &tensor_hom_functor(m, i, Side::Right, x, y)) {
                return false;
            }
        }
    }
    true
}

/// The unique `d` with `I ⊗ d = c` (left) or `d ⊗ I = c` (right).
pub fn divide_tensor(
    m: &TwoCategoryModel,
    i: ObjId,
    side: Side,
    c: TwoId,
) -> Result<TwoId, DivisionError> {
    divide_tensor_by_cell(m, m.id1of(i), side, c)
}

/// The unique `d` with `id2(u) ⊗ d = c` (left) or `d ⊗ id2(u) = c` (right),
/// for a fixed 1-cell `u`.  [`divide_tensor`] is the case `u = id1(I)`.
pub fn divide_tensor_by_cell(
    m: &TwoCategoryModel,
    u: OneId,
    side: Side,
    c: TwoId,
) -> Result<TwoId, DivisionError> {
    let iu = m.id2of(u);
    let mut found: Option<TwoId> = None;
    for d in m.two_cells() {
        let t = match side {
            Side::Left => m.t2(iu, d),
            Side::Right => m.t2(d, iu),
        };
        if t == c {
            if let Some(first) = found {
                return Err(DivisionError::MultiplePreimages {
                    divisor: u.0,
                    cell: c,
                    first,
                    second: d,
                });
            }
            found = Some(d);
        }
    }
    found.ok_or(DivisionError::NoPreimage {
        divisor: u.0,
        cell: c,
    })
}

/// The unique `d` with `e # d = c` (Pre) or `d # e = c` (Post), where
/// whiskering means horizontal composition with `id2(e)`.
pub fn divide_whisker(
    m: &TwoCategoryModel,
    e: OneId,
    end: WhiskerEnd,
    c: TwoId,
) -> Result<TwoId, DivisionError> {
    let ie = m.id2of(e);
    let mut found: Option<TwoId> = None;
    for d in m.two_cells() {
        let t = match end {
            WhiskerEnd::Pre => m.hc(ie, d),
            WhiskerEnd::Post => m.hc(d, ie),
        };
        if t.ok() == Some(c) {
            if let Some(first) = found {
                return Err(DivisionError::MultiplePreimages {
                    divisor: e.0,
                    cell: c,
                    first,
                    second: d,
                });
            }
            found = Some(d);
        }
    }
    found.ok_or(DivisionError::NoPreimage {
        divisor: e.0,
        cell: c,
    })
}

#[derive(Clone, Debug)]
pub enum MateError {
    Structural(StructuralError),
    NotInvertible(TwoId),
    /// The mate was computed but fails the compatibility (cube) equation
    /// against the supplied associators.
    CubeFailed {
        g: OneId,
        cell: TwoId,
        detail: String,
    },
}

impl fmt::Display for MateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MateError::Structural(e) => write!(f, "structural error during mate: {e}"),
            MateError::NotInvertible(c) => write!(f, "square fill {c} is not invertible"),
            MateError::CubeFailed { g, cell, detail } => {
                write!(f, "mate ({g},{cell}) fails its cube equation: {detail}")
            }
        }
    }
}

impl From<StructuralError> for MateError {
    fn from(e: StructuralError) -> Self {
        MateError::Structural(e)
    }
}

/// Mate of a multiplication square along a chosen adjoint equivalence.
///
/// Input: `fill : alpha # f ⇒ (f⊗f) # beta` (an invertible square over the
/// multiplications `alpha : XX → X`, `beta : YY → Y`) and a witness for `f`.
/// Output: the square `beta # g ⇒ (g⊗g) # alpha` for the chosen
/// pseudo-inverse `g`, obtained by conjugating the inverted fill with the
/// unit and counit.
pub fn mate_square(
    m: &TwoCategoryModel,
    w: &AdjointEquivalenceWitness,
    alpha: OneId,
    beta: OneId,
    fill: TwoId,
) -> Result<(OneId, TwoId), MateError> {
    let fill_inv = m.inverse2(fill).ok_or(MateError::NotInvertible(fill))?;
    let g = w.g;
    let gg = m.t1(g, g);
    let eps_inv = m
        .inverse2(m.t2(w.eps, w.eps))
        .ok_or(MateError::NotInvertible(w.eps))?;
    let eta_inv = m.inverse2(w.eta).ok_or(MateError::NotInvertible(w.eta))?;
    // beta#g ⇒ (gg#ff)#(beta#g) ⇒ gg#(alpha#f)#g ⇒ gg#alpha
    let step1 = m.hc(eps_inv, m.id2of(m.c1(beta, g)?))?;
    let step2 = m.hc(m.hc(m.id2of(gg), fill_inv)?, m.id2of(g))?;
    let step3 = m.hc(m.id2of(m.c1(gg, alpha)?), eta_inv)?;
    let mate = m.vcn(&[step1, step2, step3])?;
    Ok((g, mate))
}

/// Lemma-style mate: compute the mate square and check the cube equation for
/// the result against the given square-form associators
/// (`assoc_sq : (X⊗alpha)#alpha ⇒ (alpha⊗X)#alpha`).  A cube failure is
/// reported, never ignored.
#[allow(clippy::too_many_arguments)]
pub fn mate(
    m: &TwoCategoryModel,
    w: &AdjointEquivalenceWitness,
    alpha: OneId,
    assoc_sq_alpha: TwoId,
    beta: OneId,
    assoc_sq_beta: TwoId,
    fill: TwoId,
) -> Result<(OneId, TwoId), MateError> {
    let (g, mate) = mate_square(m, w, alpha, beta, fill)?;
    // the mate is a multiplication square (beta, g) → (alpha, ·)
    let src = crate::units::SemiMonoid {
        obj: m.dst1(beta),
        mult: beta,
        assoc: assoc_sq_beta,
    };
    let dst = crate::units::SemiMonoid {
        obj: m.dst1(alpha),
        mult: alpha,
        assoc: assoc_sq_alpha,
    };
    let map = crate::units::SemiMonoidMap {
        arrow: g,
        square: mate,
    };
    match crate::units::check_semimonoid_map(m, &src, &dst, &map) {
        Ok(true) => Ok((g, mate)),
        Ok(false) => Err(MateError::CubeFailed {
            g,
            cell: mate,
            detail: String::from("cube equation is false"),
        }),
        Err(e) => Err(MateError::CubeFailed {
            g,
            cell: mate,
            detail: format!("{e}"),
        }),
    }
}
