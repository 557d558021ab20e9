//! Units in monoidal 1-categories.
//!
//! Runs on models whose 2-cells are all identities (`is_discrete`), where a
//! hom-category is just a hom-set and "equi-arrow" degenerates to strict
//! isomorphism.  The 2-dimensional synthesis must degenerate to this module
//! on such models, which makes it an independent oracle.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use serde::Serialize;

use crate::kernel::{ObjId, OneId, TwoCategoryModel};

/// A unit in the 1-dimensional sense: a cancellable object with an
/// isomorphism `alpha : II → I`, together with the induced constraint
/// families.
#[derive(Clone, Debug, Serialize)]
pub struct Unit1 {
    pub obj: ObjId,
    pub alpha: OneId,
    /// `lambda[X] : IX → X`, the unique solution of `I⊗lambda_X = alpha⊗X`
    pub lambda: Vec<OneId>,
    /// `rho[X] : XI → X`, the unique solution of `rho_X⊗I = X⊗alpha`
    pub rho: Vec<OneId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dim1Error {
    NotDiscrete,
    NoPreimage {
        obj: ObjId,
        side: &'static str,
    },
    MultiplePreimages {
        obj: ObjId,
        side: &'static str,
        first: OneId,
        second: OneId,
    },
    NotInvertible(OneId),
}

impl fmt::Display for Dim1Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim1Error::NotDiscrete => write!(f, "model has non-identity 2-cells"),
            Dim1Error::NoPreimage { obj, side } => write!(f, "no {side} constraint at {obj}"),
            Dim1Error::MultiplePreimages {
                obj,
                side,
                first,
                second,
            } => {
                write!(
                    f,
                    "{side} constraint at {obj} not unique: {first}, {second}"
                )
            }
            Dim1Error::NotInvertible(v) => write!(f, "1-cell {v} is not invertible"),
        }
    }
}

/// Cancellability at the 1-dimensional level: tensoring with `I` on either
/// side is injective and hom-set bijective.
pub fn is_cancellable_1(m: &TwoCategoryModel, i: ObjId) -> bool {
    for x in m.objects() {
        for y in m.objects() {
            let hom = m.hom1(x, y);
            for side in 0..2 {
                let mut images: Vec<OneId> = hom
                    .iter()
                    .map(|&f| if side == 0 { m.tl1(i, f) } else { m.tr1(f, i) })
                    .collect();
                images.sort_unstable();
                images.dedup();
                if images.len() != hom.len() {
                    return false;
                }
                let target = if side == 0 {
                    m.hom1(m.tob(i, x), m.tob(i, y))
                } else {
                    m.hom1(m.tob(x, i), m.tob(y, i))
                };
                if images.len() != target.len() {
                    return false;
                }
            }
        }
    }
    true
}

/// All pairs `(I, alpha)` with `I` cancellable and `alpha : II → I` a strict
/// isomorphism.
pub fn find_units_1(m: &TwoCategoryModel) -> Result<Vec<(ObjId, OneId)>, Dim1Error> {
    if !m.is_discrete() {
        return Err(Dim1Error::NotDiscrete);
    }
    let mut out = Vec::new();
    for i in m.objects() {
        if !is_cancellable_1(m, i) {
            continue;
        }
        let ii = m.tob(i, i);
        for alpha in m.hom1(ii, i) {
            if m.inverse1(alpha).is_some() {
                out.push((i, alpha));
            }
        }
    }
    Ok(out)
}

/// Solve `I⊗lambda_X = alpha⊗X` and `rho_X⊗I = X⊗alpha` for every object,
/// asserting uniqueness of each solution.
pub fn construct_lr_1(m: &TwoCategoryModel, i: ObjId, alpha: OneId) -> Result<Unit1, Dim1Error> {
    if !m.is_discrete() {
        return Err(Dim1Error::NotDiscrete);
    }
    let mut lambda = Vec::new();
    let mut rho = Vec::new();
    for x in m.objects() {
        let want_l = m.tr1(alpha, x);
        let sol_l = unique_solution(m, m.tob(i, x), x, |f| m.tl1(i, f) == want_l)
            .map_err(|e| expand(e, x, "left"))?;
        lambda.push(sol_l);
        let want_r = m.tl1(x, alpha);
        let sol_r = unique_solution(m, m.tob(x, i), x, |f| m.tr1(f, i) == want_r)
            .map_err(|e| expand(e, x, "right"))?;
        rho.push(sol_r);
    }
    Ok(Unit1 {
        obj: i,
        alpha,
        lambda,
        rho,
    })
}

fn unique_solution(
    m: &TwoCategoryModel,
    src: ObjId,
    dst: ObjId,
    pred: impl Fn(OneId) -> bool,
) -> Result<OneId, (Option<OneId>, Option<OneId>)> {
    let mut found = None;
    for f in m.hom1(src, dst) {
        if pred(f) {
            if let Some(first) = found {
                return Err((Some(first), Some(f)));
            }
            found = Some(f);
        }
    }
    found.ok_or((None, None))
}

fn expand(e: (Option<OneId>, Option<OneId>), x: ObjId, side: &'static str) -> Dim1Error {
    match e {
        (Some(a), Some(b)) => Dim1Error::MultiplePreimages {
            obj: x,
            side,
            first: a,
            second: b,
        },
        _ => Dim1Error::NoPreimage { obj: x, side },
    }
}

/// One failed 1-dimensional axiom instance.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Axiom1Failure {
    pub axiom: String,
    pub objects: Vec<u32>,
}

/// Check the classical unit axioms for a constructed [`Unit1`]:
/// the constraints agree on the unit, are multiplicative in each slot, obey
/// the Kelly axiom, and satisfy the two naturality identities.
pub fn verify_kelly_1(m: &TwoCategoryModel, u: &Unit1) -> Vec<Axiom1Failure> {
    let mut failures = Vec::new();
    let i = u.obj;
    let lam = |x: ObjId| u.lambda[x.0 as usize];
    let rho = |x: ObjId| u.rho[x.0 as usize];
    if lam(i) != rho(i) {
        failures.push(Axiom1Failure {
            axiom: String::from("lambda_I=rho_I"),
            objects: Vec::new(),
        });
    }
    for x in m.objects() {
        for y in m.objects() {
            let xy = m.tob(x, y);
            if lam(xy) != m.tr1(lam(x), y) {
                failures.push(Axiom1Failure {
                    axiom: String::from("lambda_XY=lambda_X.Y"),
                    objects: [x.0, y.0].to_vec(),
                });
            }
            if rho(xy) != m.tl1(x, rho(y)) {
                failures.push(Axiom1Failure {
                    axiom: String::from("rho_XY=X.rho_Y"),
                    objects: [x.0, y.0].to_vec(),
                });
            }
            if m.tl1(x, lam(y)) != m.tr1(rho(x), y) {
                failures.push(Axiom1Failure {
                    axiom: String::from("kelly"),
                    objects: [x.0, y.0].to_vec(),
                });
            }
        }
        // naturality identities, independent of the axioms above
        if lam(m.tob(i, x)) != m.tl1(i, lam(x)) {
            failures.push(Axiom1Failure {
                axiom: String::from("lambda_IX=I.lambda_X"),
                objects: [x.0].to_vec(),
            });
        }
        if rho(m.tob(x, i)) != m.tr1(rho(x), i) {
            failures.push(Axiom1Failure {
                axiom: String::from("rho_XI=rho_X.I"),
                objects: [x.0].to_vec(),
            });
        }
    }
    failures
}

/// `I⊗alpha = alpha⊗I`: associativity of the multiplication.
pub fn verify_assoc_1(m: &TwoCategoryModel, u: &Unit1) -> bool {
    m.tl1(u.obj, u.alpha) == m.tr1(u.alpha, u.obj)
}

/// The canonical isomorphism between two units: `rho'_I^{-1} # lambda_J`,
/// where `rho'` is the right constraint of the target and `lambda` the left
/// constraint of the source.
pub fn canonical_unit_iso_1(
    m: &TwoCategoryModel,
    from: &Unit1,
    to: &Unit1,
) -> Result<OneId, Dim1Error> {
    let r = to.rho[from.obj.0 as usize]; // IJ → I
    let r_inv = m.inverse1(r).ok_or(Dim1Error::NotInvertible(r))?;
    let lam = from.lambda[to.obj.0 as usize]; // IJ → J
    m.c1(r_inv, lam)
        .map_err(|_| Dim1Error::NotInvertible(r_inv))
}
