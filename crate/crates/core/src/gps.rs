//! Tricategory-style unit structure and the comparison with
//! cancellable-pseudo-idempotent units.
//!
//! A GPS unit is `(I, λ, ρ, K)`: pseudo-natural constraint families with
//! equi-arrow components and an invertible Kelly cell
//! `K[X,Y] : X⊗λ_Y ⇒ ρ_X⊗Y`, natural in both slots, subject to the two
//! triangle axioms (`ta2`, `ta3`) for the derived cells
//! `K^λ[X,Y] : λ_{XY} ⇒ λ_X⊗Y` and `K^ρ[X,Y] : X⊗ρ_Y ⇒ ρ_{XY}`.
//!
//! Note the `ρ_X : XI → X` orientation: the constraints point *out of* the
//! tensored object on both sides.  The derived normalization cells are
//! `N^λ[X] : I⊗λ_X ⇒ λ_{IX}` and `N^ρ[X] : ρ_{XI} ⇒ ρ_X⊗I`, obtained by
//! cancelling an equi-arrow from a naturality square.
//!
//! Conversions: a unit object with a constraint pack induces a GPS unit
//! (`ci_to_gps`, with `K` defined by dividing a pasting by `X⊗α⊗Y`); a GPS
//! unit induces a unit object with `α := λ_I` (`gps_to_ci`).  The comparison
//! 2-category of septuples `(I, α, λ, ρ, L, R, K)` ties the two together and
//! `verify_theorem_e` checks, at desk scale, that both forgetful projections
//! are surjective on objects and bijective on hom-categories.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use serde::Serialize;

use crate::equivalence::{
    divide_tensor, divide_whisker, is_cancellable, is_equi_arrow, DivisionError, Side, WhiskerEnd,
};
use crate::kernel::{
    check_equation, CheckRun, Equation, EvalError, ExprBuilder, ObjId, OneId, StructuralError,
    TwoCategoryModel, TwoId,
};
use crate::units::{
    self, eq_unitmap_left, eq_unitmap_right, ConstraintPack, UnitMorphism, UnitObject, UnitsError,
};

/// The input data of a GPS unit (derived cells not yet computed).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GpsInput {
    pub obj: ObjId,
    /// `lambda[X] : IX → X`
    pub lambda: Vec<OneId>,
    /// `lambda_nat[f] : (I⊗f)#λ_Y ⇒ λ_X#f`
    pub lambda_nat: Vec<TwoId>,
    pub rho: Vec<OneId>,
    pub rho_nat: Vec<TwoId>,
    /// `kelly[X*n+Y] : X⊗λ_Y ⇒ ρ_X⊗Y`
    pub kelly: Vec<TwoId>,
}

/// A fully derived GPS unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GpsUnit {
    pub input: GpsInput,
    /// `k_lambda[X*n+Y] : λ_{XY} ⇒ λ_X⊗Y`
    pub k_lambda: Vec<TwoId>,
    /// `k_rho[X*n+Y] : X⊗ρ_Y ⇒ ρ_{XY}`
    pub k_rho: Vec<TwoId>,
    /// `n_lambda[X] : I⊗λ_X ⇒ λ_{IX}`
    pub n_lambda: Vec<TwoId>,
    /// `n_rho[X] : ρ_{XI} ⇒ ρ_X⊗I`
    pub n_rho: Vec<TwoId>,
    /// `p : ρ_I ⇒ λ_I`, via the left-hand chain
    pub p_cell: TwoId,
    /// `q : ρ_I ⇒ λ_I`, via the right-hand chain
    pub q_cell: TwoId,
}

/// A morphism of GPS units: comparison families subject to the Kelly-cell
/// compatibility equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GpsMorphism {
    pub arrow: OneId,
    /// `uleft[X] : λ_X ⇒ (u⊗X)#ℓ_X`
    pub uleft: Vec<TwoId>,
    /// `uright[X] : ρ_X ⇒ (X⊗u)#r_X`
    pub uright: Vec<TwoId>,
}

#[derive(Clone, Debug)]
pub enum GpsError {
    Units(UnitsError),
    Division {
        context: &'static str,
        source: DivisionError,
    },
    Eval(EvalError),
    Certification(String),
    EnumerationTooLarge {
        cap: usize,
    },
}

impl fmt::Display for GpsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GpsError::Units(e) => write!(f, "{e}"),
            GpsError::Division { context, source } => write!(f, "{context}: {source}"),
            GpsError::Eval(e) => write!(f, "{e}"),
            GpsError::Certification(s) => write!(f, "certification failed: {s}"),
            GpsError::EnumerationTooLarge { cap } => write!(f, "enumeration exceeds cap {cap}"),
        }
    }
}

impl From<UnitsError> for GpsError {
    fn from(e: UnitsError) -> Self {
        GpsError::Units(e)
    }
}
impl From<EvalError> for GpsError {
    fn from(e: EvalError) -> Self {
        GpsError::Eval(e)
    }
}
impl From<StructuralError> for GpsError {
    fn from(e: StructuralError) -> Self {
        GpsError::Eval(EvalError::Structural(e))
    }
}

fn div(context: &'static str) -> impl FnOnce(DivisionError) -> GpsError {
    move |source| GpsError::Division { context, source }
}

fn pair(n: u32, x: ObjId, y: ObjId) -> usize {
    (x.0 * n + y.0) as usize
}

// ---------------------------------------------------------------------------
// derivations

/// Cancellability of the GPS object, established the way the theory does it:
/// all `λ_f` invertible plus the exhaustive hom-functor check.
pub fn verify_icanc(m: &TwoCategoryModel, g: &GpsInput) -> bool {
    g.lambda_nat
        .iter()
        .chain(g.rho_nat.iter())
        .all(|&c| m.is_invertible2(c))
        && is_cancellable(m, g.obj)
}

/// Unique `K^λ`/`K^ρ` from the Kelly cell via the unit-slot triangles:
/// `I⊗K^λ[Y,Z] = K[I,YZ] . (K[I,Y]⊗Z)⁻¹` and
/// `K^ρ[X,Y]⊗I = (X⊗K[Y,I])⁻¹ . K[XY,I]`.
pub fn derive_kl_kr(
    m: &TwoCategoryModel,
    g: &GpsInput,
) -> Result<(Vec<TwoId>, Vec<TwoId>), GpsError> {
    if !verify_icanc(m, g) {
        return Err(GpsError::Certification(format!(
            "object {} is not cancellable",
            g.obj
        )));
    }
    let n = m.object_count();
    let i = g.obj;
    let inv = |c: TwoId| {
        m.inverse2(c)
            .ok_or_else(|| GpsError::Certification(String::from("Kelly cell not invertible")))
    };
    let mut k_lambda = Vec::with_capacity((n * n) as usize);
    let mut k_rho = Vec::with_capacity((n * n) as usize);
    for x in m.objects() {
        for y in m.objects() {
            let xy = m.tob(x, y);
            let lhs = m.vc(
                g.kelly[pair(n, i, xy)],
                inv(m.tr_obj(g.kelly[pair(n, i, x)], y))?,
            )?;
            k_lambda.push(divide_tensor(m, i, Side::Left, lhs).map_err(div("K-lambda from KKK"))?);
            let rhs = m.vc(
                inv(m.tl_obj(x, g.kelly[pair(n, y, i)]))?,
                g.kelly[pair(n, xy, i)],
            )?;
            k_rho.push(divide_tensor(m, i, Side::Right, rhs).map_err(div("K-rho from KKK"))?);
        }
    }
    Ok((k_lambda, k_rho))
}

/// `N^λ[X]` and `N^ρ[X]` by cancelling an equi-arrow out of the naturality
/// squares of `λ` at `λ_X` and of `ρ` at `ρ_X`.
pub fn derive_n_cells(
    m: &TwoCategoryModel,
    g: &GpsInput,
) -> Result<(Vec<TwoId>, Vec<TwoId>), GpsError> {
    let mut n_lambda = Vec::new();
    let mut n_rho = Vec::new();
    for x in m.objects() {
        let lam = g.lambda[x.0 as usize];
        let nat = g.lambda_nat[lam.0 as usize]; // (I⊗λ_X)#λ_X ⇒ λ_{IX}#λ_X
        n_lambda.push(divide_whisker(m, lam, WhiskerEnd::Post, nat).map_err(div("N-lambda"))?);
        let rho = g.rho[x.0 as usize];
        let nat = g.rho_nat[rho.0 as usize]; // (ρ_X⊗I)#ρ_X ⇒ ρ_{XI}#ρ_X
        let inv = m.inverse2(nat).ok_or_else(|| {
            GpsError::Certification(String::from("rho naturality cell not invertible"))
        })?;
        n_rho.push(divide_whisker(m, rho, WhiskerEnd::Post, inv).map_err(div("N-rho"))?);
    }
    Ok((n_lambda, n_rho))
}

/// The two comparison cells `ρ_I ⇒ λ_I`:
/// `P⊗I = K[I,I]⁻¹ . N^λ[I] . K^λ[I,I]` and
/// `I⊗Q = K^ρ[I,I] . N^ρ[I] . K[I,I]⁻¹`.
pub fn derive_pq(
    m: &TwoCategoryModel,
    g: &GpsInput,
    k_lambda: &[TwoId],
    k_rho: &[TwoId],
    n_lambda: &[TwoId],
    n_rho: &[TwoId],
) -> Result<(TwoId, TwoId), GpsError> {
    let n = m.object_count();
    let i = g.obj;
    let k_ii_inv = m
        .inverse2(g.kelly[pair(n, i, i)])
        .ok_or_else(|| GpsError::Certification(String::from("K[I,I] not invertible")))?;
    let p_src = m.vcn(&[k_ii_inv, n_lambda[i.0 as usize], k_lambda[pair(n, i, i)]])?;
    let p = divide_tensor(m, i, Side::Right, p_src).map_err(div("P cell"))?;
    let q_src = m.vcn(&[k_rho[pair(n, i, i)], n_rho[i.0 as usize], k_ii_inv])?;
    let q = divide_tensor(m, i, Side::Left, q_src).map_err(div("Q cell"))?;
    Ok((p, q))
}

/// Assemble the derived cells of a GPS unit from its input data.
pub fn derive_gps_unit(m: &TwoCategoryModel, input: GpsInput) -> Result<GpsUnit, GpsError> {
    let (k_lambda, k_rho) = derive_kl_kr(m, &input)?;
    let (n_lambda, n_rho) = derive_n_cells(m, &input)?;
    let (p_cell, q_cell) = derive_pq(m, &input, &k_lambda, &k_rho, &n_lambda, &n_rho)?;
    Ok(GpsUnit {
        input,
        k_lambda,
        k_rho,
        n_lambda,
        n_rho,
        p_cell,
        q_cell,
    })
}

// ---------------------------------------------------------------------------
// equations on GPS data

fn b(m: &TwoCategoryModel) -> ExprBuilder<'_> {
    ExprBuilder::new(m)
}

/// Triangle `ta2`: `X⊗K^λ[Y,Z] . (K[X,Y]⊗Z) = K[X,YZ]`.
pub fn eq_ta2(
    m: &TwoCategoryModel,
    g: &GpsUnit,
    x: ObjId,
    y: ObjId,
    z: ObjId,
) -> Result<Equation, GpsError> {
    let n = m.object_count();
    let e = b(m);
    let yz = m.tob(y, z);
    let lhs = e.vc(
        e.tl(x, e.lit2(g.k_lambda[pair(n, y, z)]))?,
        e.tr(e.lit2(g.input.kelly[pair(n, x, y)]), z)?,
    )?;
    Ok(Equation {
        lhs,
        rhs: e.lit2(g.input.kelly[pair(n, x, yz)]),
    })
}

/// Triangle `ta3`: `X⊗K[Y,Z] . (K^ρ[X,Y]⊗Z) = K[XY,Z]`.
pub fn eq_ta3(
    m: &TwoCategoryModel,
    g: &GpsUnit,
    x: ObjId,
    y: ObjId,
    z: ObjId,
) -> Result<Equation, GpsError> {
    let n = m.object_count();
    let e = b(m);
    let xy = m.tob(x, y);
    let lhs = e.vc(
        e.tl(x, e.lit2(g.input.kelly[pair(n, y, z)]))?,
        e.tr(e.lit2(g.k_rho[pair(n, x, y)]), z)?,
    )?;
    Ok(Equation {
        lhs,
        rhs: e.lit2(g.input.kelly[pair(n, xy, z)]),
    })
}

/// Both triangle axioms over all object triples.
pub fn verify_ta2_ta3(m: &TwoCategoryModel, g: &GpsUnit) -> Result<(bool, bool), GpsError> {
    let mut ta2 = true;
    let mut ta3 = true;
    for x in m.objects() {
        for y in m.objects() {
            for z in m.objects() {
                if !check_equation(m, &eq_ta2(m, g, x, y, z)?)? {
                    ta2 = false;
                }
                if !check_equation(m, &eq_ta3(m, g, x, y, z)?)? {
                    ta3 = false;
                }
            }
        }
    }
    Ok((ta2, ta3))
}

/// Naturality of the Kelly cell at `(f, g)`:
/// `(f ⊗ λ_g) . (K[X,Y] # f⊗g) = (f⊗I⊗g # K[X',Y']) . (ρ_f ⊗ g)`.
pub fn eq_kelly_natural(
    m: &TwoCategoryModel,
    g: &GpsUnit,
    f1: OneId,
    f2: OneId,
) -> Result<Equation, GpsError> {
    let n = m.object_count();
    let e = b(m);
    let i = g.input.obj;
    let (x, x1) = (m.src1(f1), m.dst1(f1));
    let (y, y1) = (m.src1(f2), m.dst1(f2));
    let fg = m.t1(f1, f2);
    let fig = m.t1(f1, m.tl1(i, f2));
    let lhs = e.vc(
        e.t2(e.id2c(f1), e.lit2(g.input.lambda_nat[f2.0 as usize]))?,
        e.hc(e.lit2(g.input.kelly[pair(n, x, y)]), e.id2c(fg))?,
    )?;
    let rhs = e.vc(
        e.hc(e.id2c(fig), e.lit2(g.input.kelly[pair(n, x1, y1)]))?,
        e.t2(e.lit2(g.input.rho_nat[f1.0 as usize]), e.id2c(f2))?,
    )?;
    Ok(Equation { lhs, rhs })
}

/// The two ways around `XIIY`:
/// `(X⊗N^λ[Y]) . K[X,IY] = (K[XI,Y]) . (N^ρ[X]⊗Y)`.
pub fn eq_nk_kn(
    m: &TwoCategoryModel,
    g: &GpsUnit,
    x: ObjId,
    y: ObjId,
) -> Result<Equation, GpsError> {
    let n = m.object_count();
    let e = b(m);
    let i = g.input.obj;
    let iy = m.tob(i, y);
    let xi = m.tob(x, i);
    let lhs = e.vc(
        e.tl(x, e.lit2(g.n_lambda[y.0 as usize]))?,
        e.lit2(g.input.kelly[pair(n, x, iy)]),
    )?;
    let rhs = e.vc(
        e.lit2(g.input.kelly[pair(n, xi, y)]),
        e.tr(e.lit2(g.n_rho[x.0 as usize]), y)?,
    )?;
    Ok(Equation { lhs, rhs })
}

pub fn verify_nk_kn(m: &TwoCategoryModel, g: &GpsUnit) -> Result<bool, GpsError> {
    for x in m.objects() {
        for y in m.objects() {
            if !check_equation(m, &eq_nk_kn(m, g, x, y)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn verify_p_eq_q(g: &GpsUnit) -> bool {
    g.p_cell == g.q_cell
}

/// Pseudo-naturality axioms for a constraint family (identity components,
/// compatibility with composition, and 2-cell naturality).
fn family_pseudo_natural(
    m: &TwoCategoryModel,
    i: ObjId,
    side: Side,
    comp: &[OneId],
    nat: &[TwoId],
) -> Result<bool, GpsError> {
    let t1_with = |f: OneId| match side {
        Side::Left => m.tl1(i, f),
        Side::Right => m.tr1(f, i),
    };
    let t2_with = |c: TwoId| match side {
        Side::Left => m.tl_obj(i, c),
        Side::Right => m.tr_obj(c, i),
    };
    for x in m.objects() {
        let idx = m.id1of(x);
        if nat[idx.0 as usize] != m.id2of(comp[x.0 as usize]) {
            return Ok(false);
        }
    }
    for f in m.one_cells() {
        for g2 in m.hom_from(m.dst1(f)) {
            let fg = m.c1(f, g2)?;
            let lhs = nat[fg.0 as usize];
            let rhs = m.vc(
                m.hc(m.id2of(t1_with(f)), nat[g2.0 as usize])?,
                m.hc(nat[f.0 as usize], m.id2of(g2))?,
            )?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    for c in m.two_cells() {
        let f = m.src2(c);
        let g2 = m.dst2(c);
        let (x, y) = (m.src1(f), m.dst1(f));
        let lhs = m.vc(
            m.hc(t2_with(c), m.id2of(comp[y.0 as usize]))?,
            nat[g2.0 as usize],
        )?;
        let rhs = m.vc(nat[f.0 as usize], m.hc(m.id2of(comp[x.0 as usize]), c)?)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Certify every GPS-unit invariant: equi components, invertible cells,
/// pseudo-naturality of both families, Kelly naturality, both triangle
/// axioms, the `NK = KN` exchange and `P = Q`.
pub fn certify_gps(m: &TwoCategoryModel, g: &GpsUnit) -> Result<CheckRun, GpsError> {
    let i = g.input.obj;
    for x in m.objects() {
        if !is_equi_arrow(m, g.input.lambda[x.0 as usize])
            || !is_equi_arrow(m, g.input.rho[x.0 as usize])
        {
            return Err(GpsError::Certification(format!(
                "constraint component at {x} is not an equi-arrow"
            )));
        }
    }
    for c in g
        .input
        .kelly
        .iter()
        .chain(g.input.lambda_nat.iter())
        .chain(g.input.rho_nat.iter())
        .chain(g.k_lambda.iter())
        .chain(g.k_rho.iter())
        .chain(g.n_lambda.iter())
        .chain(g.n_rho.iter())
    {
        if !m.is_invertible2(*c) {
            return Err(GpsError::Certification(format!(
                "derived cell {c} is not invertible"
            )));
        }
    }
    let lam_ok = family_pseudo_natural(m, i, Side::Left, &g.input.lambda, &g.input.lambda_nat)?;
    let rho_ok = family_pseudo_natural(m, i, Side::Right, &g.input.rho, &g.input.rho_nat)?;
    if !lam_ok || !rho_ok {
        return Err(GpsError::Certification(String::from(
            "constraint family is not pseudo-natural",
        )));
    }
    let mut run = CheckRun::default();
    for f1 in m.one_cells() {
        for f2 in m.one_cells() {
            let eq = eq_kelly_natural(m, g, f1, f2)?;
            run.check(m, &format!("kelly_natural[{f1},{f2}]"), eq)?;
        }
    }
    for x in m.objects() {
        for y in m.objects() {
            run.check(m, &format!("nk_kn[{x},{y}]"), eq_nk_kn(m, g, x, y)?)?;
            for z in m.objects() {
                run.check(m, &format!("ta2[{x},{y},{z}]"), eq_ta2(m, g, x, y, z)?)?;
                run.check(m, &format!("ta3[{x},{y},{z}]"), eq_ta3(m, g, x, y, z)?)?;
            }
        }
    }
    if !verify_p_eq_q(g) {
        return Err(GpsError::Certification(String::from("P ≠ Q")));
    }
    if !run.ok() {
        return Err(GpsError::Certification(String::from(
            "a GPS axiom instance failed",
        )));
    }
    Ok(run)
}

// ---------------------------------------------------------------------------
// conversions

/// Kelly cell of a constraint pack at `(x, y)`: the unique
/// `K : X⊗λ_Y ⇒ ρ_X⊗Y` with
/// `XαY # K = (R_X⊗Y # Xλ_Y) . (X⊗L_Y # ρ_X⊗Y)`.
pub fn kelly_from_lr(
    m: &TwoCategoryModel,
    u: &UnitObject,
    p: &ConstraintPack,
    x: ObjId,
    y: ObjId,
) -> Result<TwoId, GpsError> {
    let lhs = eval_ryxl_lhs(m, p, x, y)?;
    let xay = m.tl1(x, m.tr1(u.alpha, y));
    divide_whisker(m, xay, WhiskerEnd::Pre, lhs).map_err(div("Kelly cell"))
}

fn eval_ryxl_lhs(
    m: &TwoCategoryModel,
    p: &ConstraintPack,
    x: ObjId,
    y: ObjId,
) -> Result<TwoId, GpsError> {
    let lam_y = p.lambda[y.0 as usize];
    let rho_x = p.rho[x.0 as usize];
    let x_lam = m.tl1(x, lam_y);
    let rho_y1 = m.tr1(rho_x, y);
    let s1 = m.hc(m.tr_obj(p.r_cell[x.0 as usize], y), m.id2of(x_lam))?;
    let s2 = m.hc(m.tl_obj(x, p.l_cell[y.0 as usize]), m.id2of(rho_y1))?;
    Ok(m.vc(s1, s2)?)
}

/// The Kelly-cell compatibility equation of the comparison category:
/// `XαY # K[X,Y] = (R_X⊗Y # X⊗λ_Y) . (X⊗L_Y # ρ_X⊗Y)`.
pub fn eq_ryxl(
    m: &TwoCategoryModel,
    u: &UnitObject,
    p: &ConstraintPack,
    kelly_xy: TwoId,
    x: ObjId,
    y: ObjId,
) -> Result<Equation, GpsError> {
    let e = b(m);
    let lam_y = p.lambda[y.0 as usize];
    let rho_x = p.rho[x.0 as usize];
    let x_lam = m.tl1(x, lam_y);
    let rho_y1 = m.tr1(rho_x, y);
    let xay = m.tl1(x, m.tr1(u.alpha, y));
    let lhs = e.vc(
        e.hc(e.tr(e.lit2(p.r_cell[x.0 as usize]), y)?, e.id2c(x_lam))?,
        e.hc(e.tl(x, e.lit2(p.l_cell[y.0 as usize]))?, e.id2c(rho_y1))?,
    )?;
    let rhs = e.hc(e.id2c(xay), e.lit2(kelly_xy))?;
    Ok(Equation { lhs, rhs })
}

/// Build and certify the GPS unit induced by a unit object and a constraint
/// pack.  `K^λ`/`K^ρ` are built from `L`/`R` directly and cross-checked
/// against the Kelly-cell derivation.
pub fn ci_to_gps(
    m: &TwoCategoryModel,
    u: &UnitObject,
    p: &ConstraintPack,
) -> Result<(GpsUnit, CheckRun), GpsError> {
    let n = m.object_count();
    let mut kelly = Vec::with_capacity((n * n) as usize);
    for x in m.objects() {
        for y in m.objects() {
            kelly.push(kelly_from_lr(m, u, p, x, y)?);
        }
    }
    let input = GpsInput {
        obj: u.obj,
        lambda: p.lambda.clone(),
        lambda_nat: p.lambda_nat.clone(),
        rho: p.rho.clone(),
        rho_nat: p.rho_nat.clone(),
        kelly,
    };
    // K^λ / K^ρ straight from the constraint cells
    let mut k_lambda = Vec::with_capacity((n * n) as usize);
    let mut k_rho = Vec::with_capacity((n * n) as usize);
    for x in m.objects() {
        for y in m.objects() {
            k_lambda.push(units::k_lambda_cell(m, u, p, x, y)?);
            k_rho.push(units::k_rho_cell(m, u, p, x, y)?);
        }
    }
    // cross-check against the KKK derivation from the Kelly cell
    let (kl2, kr2) = derive_kl_kr(m, &input)?;
    if kl2 != k_lambda || kr2 != k_rho {
        return Err(GpsError::Certification(String::from(
            "K^λ/K^ρ derivations disagree",
        )));
    }
    let (n_lambda, n_rho) = derive_n_cells(m, &input)?;
    let (p_cell, q_cell) = derive_pq(m, &input, &k_lambda, &k_rho, &n_lambda, &n_rho)?;
    let unit = GpsUnit {
        input,
        k_lambda,
        k_rho,
        n_lambda,
        n_rho,
        p_cell,
        q_cell,
    };
    let mut run = certify_gps(m, &unit)?;
    // record the defining equations of the Kelly cells
    for x in m.objects() {
        for y in m.objects() {
            let eq = eq_ryxl(m, u, p, unit.input.kelly[pair(n, x, y)], x, y)?;
            run.check(m, &format!("ryxl[{x},{y}]"), eq)?;
        }
    }
    if !run.ok() {
        return Err(GpsError::Certification(String::from(
            "RYXL re-check failed",
        )));
    }
    Ok((unit, run))
}

/// From a certified GPS unit back to a cancellable pseudo-idempotent:
/// `α := λ_I`, `L_X := N^λ[X] . K^λ[I,X]`, `R_X := K[X,I]`.  The returned
/// pack is completed (naturality, associator, `D`/`E`) from those choices,
/// and the Kelly-compatibility equation is re-verified for the induced cells.
pub fn gps_to_ci(
    m: &TwoCategoryModel,
    g: &GpsUnit,
) -> Result<(UnitObject, ConstraintPack), GpsError> {
    let n = m.object_count();
    let i = g.input.obj;
    let alpha = g.input.lambda[i.0 as usize];
    let unit = units::certify_unit(m, i, alpha)?;
    let mut lchoice = Vec::new();
    let mut rchoice = Vec::new();
    for x in m.objects() {
        let l_cell = m.vc(g.n_lambda[x.0 as usize], g.k_lambda[pair(n, i, x)])?;
        lchoice.push((g.input.lambda[x.0 as usize], l_cell));
        rchoice.push((g.input.rho[x.0 as usize], g.input.kelly[pair(n, x, i)]));
    }
    let pack = units::pack_from_choices(m, &unit, &lchoice, &rchoice)?;
    for x in m.objects() {
        for y in m.objects() {
            let eq = eq_ryxl(m, &unit, &pack, g.input.kelly[pair(n, x, y)], x, y)?;
            if !check_equation(m, &eq)? {
                return Err(GpsError::Certification(format!(
                    "induced constraints fail Kelly compatibility at ({x},{y})"
                )));
            }
        }
    }
    Ok((unit, pack))
}

// ---------------------------------------------------------------------------
// morphisms of GPS units

/// Kelly-cell compatibility of a GPS morphism at `(x, y)`:
/// `K[X,Y] . (Uright_X⊗Y) = (X⊗Uleft_Y) . (X⊗u⊗Y # H[X,Y])`.
pub fn eq_pk(
    m: &TwoCategoryModel,
    g: &GpsUnit,
    h: &GpsUnit,
    mor: &GpsMorphism,
    x: ObjId,
    y: ObjId,
) -> Result<Equation, GpsError> {
    let n = m.object_count();
    let e = b(m);
    let xuy = m.tl1(x, m.tr1(mor.arrow, y));
    let lhs = e.vc(
        e.lit2(g.input.kelly[pair(n, x, y)]),
        e.tr(e.lit2(mor.uright[x.0 as usize]), y)?,
    )?;
    let rhs = e.vc(
        e.tl(x, e.lit2(mor.uleft[y.0 as usize]))?,
        e.hc(e.id2c(xuy), e.lit2(h.input.kelly[pair(n, x, y)]))?,
    )?;
    Ok(Equation { lhs, rhs })
}

/// Compatibility with `K^λ`:
/// `K^λ[X,Y] . (Uleft_X⊗Y) = Uleft_{XY} . (u⊗X⊗Y # H^λ[X,Y])`.
pub fn eq_kp_ph(
    m: &TwoCategoryModel,
    g: &GpsUnit,
    h: &GpsUnit,
    mor: &GpsMorphism,
    x: ObjId,
    y: ObjId,
) -> Result<Equation, GpsError> {
    let n = m.object_count();
    let e = b(m);
    let xy = m.tob(x, y);
    let uxy = m.tr1(mor.arrow, xy);
    let lhs = e.vc(
        e.lit2(g.k_lambda[pair(n, x, y)]),
        e.tr(e.lit2(mor.uleft[x.0 as usize]), y)?,
    )?;
    let rhs = e.vc(
        e.lit2(mor.uleft[xy.0 as usize]),
        e.hc(e.id2c(uxy), e.lit2(h.k_lambda[pair(n, x, y)]))?,
    )?;
    Ok(Equation { lhs, rhs })
}

/// Check a GPS morphism: the Kelly compatibility and the derived `K^λ`
/// compatibility, over all pairs.
pub fn check_gps_morphism(
    m: &TwoCategoryModel,
    g: &GpsUnit,
    h: &GpsUnit,
    mor: &GpsMorphism,
) -> Result<CheckRun, GpsError> {
    let mut run = CheckRun::default();
    for x in m.objects() {
        for y in m.objects() {
            run.check(m, &format!("pk[{x},{y}]"), eq_pk(m, g, h, mor, x, y)?)?;
            run.check(m, &format!("kp_ph[{x},{y}]"), eq_kp_ph(m, g, h, mor, x, y)?)?;
        }
    }
    Ok(run)
}

/// The two comparison families of a GPS morphism determine each other through
/// the Kelly compatibility; derive the missing one.
pub fn derive_counterpart(
    m: &TwoCategoryModel,
    g: &GpsUnit,
    h: &GpsUnit,
    arrow: OneId,
    known_left: Option<&[TwoId]>,
    known_right: Option<&[TwoId]>,
) -> Result<Vec<TwoId>, GpsError> {
    let n = m.object_count();
    let i = g.input.obj;
    let inv = |c: TwoId| {
        m.inverse2(c)
            .ok_or_else(|| GpsError::Certification(String::from("cell not invertible")))
    };
    match (known_left, known_right) {
        (Some(uleft), None) => {
            // solve for Uright_X from the pair (X, I)
            let mut urights = Vec::new();
            for x in m.objects() {
                let xui = m.tl1(x, m.tr1(arrow, i));
                let rhs = m.vc(
                    m.tl_obj(x, uleft[i.0 as usize]),
                    m.hc(m.id2of(xui), h.input.kelly[pair(n, x, i)])?,
                )?;
                let val = m.vc(inv(g.input.kelly[pair(n, x, i)])?, rhs)?;
                urights.push(divide_tensor(m, i, Side::Right, val).map_err(div("Uright from PK"))?);
            }
            Ok(urights)
        }
        (None, Some(uright)) => {
            let mut ulefts = Vec::new();
            for y in m.objects() {
                let iuy = m.tl1(i, m.tr1(arrow, y));
                let lhs = m.vc(
                    g.input.kelly[pair(n, i, y)],
                    m.tr_obj(uright[i.0 as usize], y),
                )?;
                let val = m.vc(lhs, inv(m.hc(m.id2of(iuy), h.input.kelly[pair(n, i, y)])?)?)?;
                ulefts.push(divide_tensor(m, i, Side::Left, val).map_err(div("Uleft from PK"))?);
            }
            Ok(ulefts)
        }
        _ => Err(GpsError::Certification(String::from(
            "exactly one family must be given",
        ))),
    }
}

/// The unique pseudo-idempotent square attached to a GPS morphism, recovered
/// through the intermediate family `W_X` (which must be constant under
/// tensoring: `W_{XY} = W_X ⊗ Y`).  The result satisfies the left and right
/// compatibility equations by construction, and both are re-verified.
#[allow(clippy::too_many_arguments)]
pub fn synth_square_from_gps_morphism(
    m: &TwoCategoryModel,
    u_src: &UnitObject,
    p_src: &ConstraintPack,
    u_dst: &UnitObject,
    p_dst: &ConstraintPack,
    mor: &GpsMorphism,
) -> Result<TwoId, GpsError> {
    let inv = |c: TwoId| {
        m.inverse2(c)
            .ok_or_else(|| GpsError::Certification(String::from("cell not invertible")))
    };
    let u = mor.arrow;
    let uu = m.t1(u, u);
    let mut w = Vec::new();
    for x in m.objects() {
        let xi = x.0 as usize;
        let ux = m.tr1(u, x);
        let uux = m.tr1(uu, x);
        let val = m.vcn(&[
            inv(m.hc(p_src.l_cell[xi], m.id2of(ux))?)?,
            m.t2(m.id2of(u), mor.uleft[xi]),
            m.hc(m.id2of(uux), p_dst.l_cell[xi])?,
        ])?;
        w.push(val);
    }
    for x in m.objects() {
        for y in m.objects() {
            let xy = m.tob(x, y);
            if w[xy.0 as usize] != m.tr_obj(w[x.0 as usize], y) {
                return Err(GpsError::Certification(format!(
                    "W family is not tensor-constant at ({x},{y})"
                )));
            }
        }
    }
    let i = u_src.obj;
    let square = divide_tensor(m, i, Side::Right, w[i.0 as usize]).map_err(div("square from W"))?;
    for x in m.objects() {
        if w[x.0 as usize] != m.tr_obj(square, x) {
            return Err(GpsError::Certification(format!(
                "extracted square does not reproduce W at {x}"
            )));
        }
    }
    // re-verify the left/right compatibility equations for the new square
    let umor = UnitMorphism {
        src_obj: u_src.obj,
        src_alpha: u_src.alpha,
        dst_obj: u_dst.obj,
        dst_alpha: u_dst.alpha,
        arrow: u,
        square,
    };
    for x in m.objects() {
        let eq = eq_unitmap_left(m, &umor, p_src, p_dst, x, mor.uleft[x.0 as usize])?;
        if !check_equation(m, &eq)? {
            return Err(GpsError::Certification(String::from(
                "left compatibility fails for extracted square",
            )));
        }
        let eq = eq_unitmap_right(m, &umor, p_src, p_dst, x, mor.uright[x.0 as usize])?;
        if !check_equation(m, &eq)? {
            return Err(GpsError::Certification(String::from(
                "right compatibility fails for extracted square",
            )));
        }
    }
    Ok(square)
}

// ---------------------------------------------------------------------------
// enumeration and the comparison 2-category

/// A septuple of the comparison 2-category: a unit object, a constraint pack
/// and the induced Kelly family (Kelly compatibility holds by construction).
#[derive(Clone, Debug)]
pub struct UObject {
    pub unit: UnitObject,
    pub pack: ConstraintPack,
    pub kelly: Vec<TwoId>,
}

/// Exhaustively enumerate GPS units on a model (bounded by `cap` candidate
/// combinations per object).
pub fn enumerate_gps_units(m: &TwoCategoryModel, cap: usize) -> Result<Vec<GpsUnit>, GpsError> {
    let mut out = Vec::new();
    for i in m.objects() {
        // per-object component candidates
        let mut lambda_slots: Vec<Vec<OneId>> = Vec::new();
        let mut rho_slots: Vec<Vec<OneId>> = Vec::new();
        let mut feasible = true;
        for x in m.objects() {
            let lams: Vec<OneId> = m
                .hom1(m.tob(i, x), x)
                .into_iter()
                .filter(|&f| is_equi_arrow(m, f))
                .collect();
            let rhos: Vec<OneId> = m
                .hom1(m.tob(x, i), x)
                .into_iter()
                .filter(|&f| is_equi_arrow(m, f))
                .collect();
            if lams.is_empty() || rhos.is_empty() {
                feasible = false;
                break;
            }
            lambda_slots.push(lams);
            rho_slots.push(rhos);
        }
        if !feasible {
            continue;
        }
        let lambda_families = natural_families(m, i, Side::Left, &lambda_slots, cap)?;
        let rho_families = natural_families(m, i, Side::Right, &rho_slots, cap)?;
        for (lambda, lambda_nat) in &lambda_families {
            for (rho, rho_nat) in &rho_families {
                // Kelly candidates per pair, filtered by naturality and axioms
                let mut kelly_slots: Vec<Vec<TwoId>> = Vec::new();
                let mut ok = true;
                for x in m.objects() {
                    for y in m.objects() {
                        let src = m.tl1(x, lambda[y.0 as usize]);
                        let dst = m.tr1(rho[x.0 as usize], y);
                        let cands: Vec<TwoId> = m
                            .hom2(src, dst)
                            .into_iter()
                            .filter(|&c| m.is_invertible2(c))
                            .collect();
                        if cands.is_empty() {
                            ok = false;
                            break;
                        }
                        kelly_slots.push(cands);
                    }
                    if !ok {
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                let total: usize = kelly_slots.iter().map(|s| s.len()).product();
                if total > cap {
                    return Err(GpsError::EnumerationTooLarge { cap });
                }
                let mut counters = vec![0usize; kelly_slots.len()];
                'kelly: loop {
                    let kelly: Vec<TwoId> = counters
                        .iter()
                        .zip(&kelly_slots)
                        .map(|(&k, s)| s[k])
                        .collect();
                    let input = GpsInput {
                        obj: i,
                        lambda: lambda.clone(),
                        lambda_nat: lambda_nat.clone(),
                        rho: rho.clone(),
                        rho_nat: rho_nat.clone(),
                        kelly,
                    };
                    if let Ok(unit) = derive_gps_unit(m, input) {
                        if certify_gps(m, &unit).is_ok() {
                            out.push(unit);
                        }
                    }
                    let mut k = 0;
                    loop {
                        if k == counters.len() {
                            break 'kelly;
                        }
                        counters[k] += 1;
                        if counters[k] < kelly_slots[k].len() {
                            break;
                        }
                        counters[k] = 0;
                        k += 1;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All pseudo-natural families over given per-object component candidates.
#[allow(clippy::type_complexity)]
fn natural_families(
    m: &TwoCategoryModel,
    i: ObjId,
    side: Side,
    slots: &[Vec<OneId>],
    cap: usize,
) -> Result<Vec<(Vec<OneId>, Vec<TwoId>)>, GpsError> {
    let total: usize = slots.iter().map(|s| s.len()).product();
    if total > cap {
        return Err(GpsError::EnumerationTooLarge { cap });
    }
    let tensor_with = |f: OneId| match side {
        Side::Left => m.tl1(i, f),
        Side::Right => m.tr1(f, i),
    };
    let mut out: Vec<(Vec<OneId>, Vec<TwoId>)> = Vec::new();
    let mut counters = vec![0usize; slots.len()];
    'outer: loop {
        let comp: Vec<OneId> = counters.iter().zip(slots).map(|(&k, s)| s[k]).collect();
        // naturality cell candidates per 1-cell
        let mut nat_slots: Vec<Vec<TwoId>> = Vec::new();
        let mut ok = true;
        for f in m.one_cells() {
            let (x, y) = (m.src1(f), m.dst1(f));
            let src = match m.c1(tensor_with(f), comp[y.0 as usize]) {
                Ok(s) => s,
                Err(_) => {
                    ok = false;
                    break;
                }
            };
            let dst = match m.c1(comp[x.0 as usize], f) {
                Ok(d) => d,
                Err(_) => {
                    ok = false;
                    break;
                }
            };
            let cands: Vec<TwoId> = m
                .hom2(src, dst)
                .into_iter()
                .filter(|&c| m.is_invertible2(c))
                .collect();
            if cands.is_empty() {
                ok = false;
                break;
            }
            nat_slots.push(cands);
        }
        if ok {
            let nat_total: usize = nat_slots.iter().map(|s| s.len()).product();
            if nat_total > cap {
                return Err(GpsError::EnumerationTooLarge { cap });
            }
            let mut nat_counters = vec![0usize; nat_slots.len()];
            'nats: loop {
                let nat: Vec<TwoId> = nat_counters
                    .iter()
                    .zip(&nat_slots)
                    .map(|(&k, s)| s[k])
                    .collect();
                if family_pseudo_natural(m, i, side, &comp, &nat)? {
                    out.push((comp.clone(), nat.clone()));
                }
                let mut k = 0;
                loop {
                    if k == nat_counters.len() {
                        break 'nats;
                    }
                    nat_counters[k] += 1;
                    if nat_counters[k] < nat_slots[k].len() {
                        break;
                    }
                    nat_counters[k] = 0;
                    k += 1;
                }
            }
        }
        let mut k = 0;
        loop {
            if k == counters.len() {
                break 'outer;
            }
            counters[k] += 1;
            if counters[k] < slots[k].len() {
                break;
            }
            counters[k] = 0;
            k += 1;
        }
    }
    Ok(out)
}

/// Counts and cross-checks for one ordered pair of comparison objects.
#[derive(Clone, Debug, Serialize)]
pub struct HomCount {
    pub from: usize,
    pub to: usize,
    pub idempotent_morphisms: usize,
    pub comparison_morphisms: usize,
    pub gps_morphisms: usize,
    /// total 2-cells between parallel morphisms, counted on each side
    pub cylinder_two_cells: usize,
    pub compatibility_two_cells: usize,
    pub two_cells_match: bool,
}

/// Desk-scale equivalence report for the two forgetful projections.
#[derive(Clone, Debug, Default, Serialize)]
pub struct EquivalenceReport {
    pub e_objects: usize,
    pub u_objects: usize,
    pub g_objects: usize,
    pub phi_surjective: bool,
    pub psi_surjective: bool,
    /// every enumerated comparison object projects into the enumerated GPS set
    pub u_projects_into_g: bool,
    pub hom_counts: Vec<HomCount>,
    pub mismatches: Vec<String>,
}

impl EquivalenceReport {
    pub fn ok(&self) -> bool {
        self.phi_surjective
            && self.psi_surjective
            && self.u_projects_into_g
            && self.mismatches.is_empty()
            && self.hom_counts.iter().all(|h| {
                h.idempotent_morphisms == h.comparison_morphisms
                    && h.comparison_morphisms == h.gps_morphisms
                    && h.two_cells_match
            })
    }
}

/// Enumerate all comparison objects over a model: each unit with each of its
/// constraint packs, with the induced Kelly family.
pub fn enumerate_u_objects(m: &TwoCategoryModel, cap: usize) -> Result<Vec<UObject>, GpsError> {
    let n = m.object_count();
    let mut out = Vec::new();
    for unit in units::find_unit_objects(m) {
        for pack in units::enumerate_constraint_packs(m, &unit, cap)? {
            let mut kelly = Vec::with_capacity((n * n) as usize);
            for x in m.objects() {
                for y in m.objects() {
                    kelly.push(kelly_from_lr(m, &unit, &pack, x, y)?);
                }
            }
            out.push(UObject { unit, pack, kelly });
        }
    }
    Ok(out)
}

/// Theorem-E check at desk scale.
pub fn verify_theorem_e(m: &TwoCategoryModel, cap: usize) -> Result<EquivalenceReport, GpsError> {
    let mut report = EquivalenceReport::default();
    let units_found = units::find_unit_objects(m);
    report.e_objects = units_found.len();
    let u_objects = enumerate_u_objects(m, cap)?;
    report.u_objects = u_objects.len();
    let g_objects = enumerate_gps_units(m, cap)?;
    report.g_objects = g_objects.len();

    // Φ surjective: every unit extends to at least one septuple
    report.phi_surjective = units_found.iter().all(|u| {
        u_objects
            .iter()
            .any(|uo| uo.unit.obj == u.obj && uo.unit.alpha == u.alpha)
    });

    // Ψ surjective: every enumerated GPS unit lifts, and the lift regenerates
    // the Kelly family exactly
    report.psi_surjective = true;
    for g in &g_objects {
        match gps_to_ci(m, g) {
            Ok((unit, pack)) => {
                let mut regenerated = Vec::new();
                for x in m.objects() {
                    for y in m.objects() {
                        regenerated.push(kelly_from_lr(m, &unit, &pack, x, y)?);
                    }
                }
                if regenerated != g.input.kelly {
                    report.psi_surjective = false;
                    report.mismatches.push(String::from(
                        "round trip does not regenerate the Kelly family",
                    ));
                }
            }
            Err(e) => {
                report.psi_surjective = false;
                report
                    .mismatches
                    .push(format!("gps unit fails to lift: {e}"));
            }
        }
    }

    // projections of the comparison enumeration land in the GPS enumeration
    report.u_projects_into_g = u_objects.iter().all(|uo| {
        g_objects.iter().any(|g| {
            g.input.obj == uo.unit.obj
                && g.input.lambda == uo.pack.lambda
                && g.input.lambda_nat == uo.pack.lambda_nat
                && g.input.rho == uo.pack.rho
                && g.input.rho_nat == uo.pack.rho_nat
                && g.input.kelly == uo.kelly
        })
    });

    // hom-category comparison, pairwise over comparison objects
    for (a, ua) in u_objects.iter().enumerate() {
        for (bi, ub) in u_objects.iter().enumerate() {
            let hom = hom_check(m, a, bi, ua, ub, &g_objects, &mut report.mismatches)?;
            report.hom_counts.push(hom);
        }
    }
    Ok(report)
}

fn find_gps<'a>(g_objects: &'a [GpsUnit], uo: &UObject) -> Option<&'a GpsUnit> {
    g_objects.iter().find(|g| {
        g.input.obj == uo.unit.obj
            && g.input.lambda == uo.pack.lambda
            && g.input.lambda_nat == uo.pack.lambda_nat
            && g.input.rho == uo.pack.rho
            && g.input.rho_nat == uo.pack.rho_nat
            && g.input.kelly == uo.kelly
    })
}

fn hom_check(
    m: &TwoCategoryModel,
    a: usize,
    bi: usize,
    ua: &UObject,
    ub: &UObject,
    g_objects: &[GpsUnit],
    mismatches: &mut Vec<String>,
) -> Result<HomCount, GpsError> {
    // idempotent-morphism side
    let e_morphisms = units::enumerate_unit_morphisms(m, &ua.unit, &ub.unit);

    // comparison side: every (u, U) extends uniquely by the induced families,
    // and the extension must satisfy the Kelly compatibility
    let ga = find_gps(g_objects, ua);
    let gb = find_gps(g_objects, ub);
    let mut u_morphisms = Vec::new();
    for mor in &e_morphisms {
        let (uleft, uright) = units::synth_unit_morphism_cells(m, mor, &ua.pack, &ub.pack)?;
        let gmor = GpsMorphism {
            arrow: mor.arrow,
            uleft,
            uright,
        };
        if let (Some(ga), Some(gb)) = (ga, gb) {
            let run = check_gps_morphism(m, ga, gb, &gmor)?;
            if !run.ok() {
                mismatches.push(format!(
                    "induced families of a morphism {a}→{bi} fail Kelly compatibility"
                ));
                continue;
            }
        }
        u_morphisms.push((*mor, gmor));
    }

    // GPS side: enumerate honestly and recover the square through W
    let mut g_morphisms = Vec::new();
    if let (Some(ga), Some(gb)) = (ga, gb) {
        for arrow in m.hom1(ua.unit.obj, ub.unit.obj) {
            // candidate left families (per-object), filtered by naturality
            let mut slots: Vec<Vec<TwoId>> = Vec::new();
            let mut ok = true;
            for x in m.objects() {
                let src = ga.input.lambda[x.0 as usize];
                let dst = match m.c1(m.tr1(arrow, x), gb.input.lambda[x.0 as usize]) {
                    Ok(d) => d,
                    Err(_) => {
                        ok = false;
                        break;
                    }
                };
                let cands: Vec<TwoId> = m
                    .hom2(src, dst)
                    .into_iter()
                    .filter(|&c| m.is_invertible2(c))
                    .collect();
                if cands.is_empty() {
                    ok = false;
                    break;
                }
                slots.push(cands);
            }
            if !ok {
                continue;
            }
            let mut counters = vec![0usize; slots.len()];
            'fam: loop {
                let uleft: Vec<TwoId> = counters.iter().zip(&slots).map(|(&k, s)| s[k]).collect();
                if uleft_family_natural(m, ga, gb, arrow, &uleft)? {
                    if let Ok(uright) = derive_counterpart(m, ga, gb, arrow, Some(&uleft), None) {
                        let gmor = GpsMorphism {
                            arrow,
                            uleft: uleft.clone(),
                            uright,
                        };
                        if check_gps_morphism(m, ga, gb, &gmor)?.ok() {
                            g_morphisms.push(gmor);
                        }
                    }
                }
                let mut k = 0;
                loop {
                    if k == counters.len() {
                        break 'fam;
                    }
                    counters[k] += 1;
                    if counters[k] < slots[k].len() {
                        break;
                    }
                    counters[k] = 0;
                    k += 1;
                }
            }
        }
        // the W-route must reconstruct a pseudo-idempotent square for each
        for gmor in &g_morphisms {
            let square =
                synth_square_from_gps_morphism(m, &ua.unit, &ua.pack, &ub.unit, &ub.pack, gmor)?;
            let found = e_morphisms
                .iter()
                .any(|e| e.arrow == gmor.arrow && e.square == square);
            if !found {
                mismatches.push(format!(
                    "W-reconstructed square of a {a}→{bi} morphism is not in the enumeration"
                ));
            }
        }
    }

    // 2-cells: per parallel pair, the cylinder count must match the
    // compatibility-equation count
    let mut two_cells_match = true;
    let mut total_cylinder = 0;
    let mut total_txp = 0;
    for (mu, gmu) in &u_morphisms {
        for (mv, gmv) in &u_morphisms {
            let mut cylinder_count = 0;
            let mut txp_count = 0;
            for t in m.hom2(mu.arrow, mv.arrow) {
                let eq =
                    units::eq_cylinder(m, mu.src_alpha, mu.dst_alpha, mu.square, mv.square, t)?;
                if m.is_invertible2(t) && check_equation(m, &eq)? {
                    cylinder_count += 1;
                }
                let mut txp_ok = true;
                for x in m.objects() {
                    let eq = units::eq_txp(
                        m,
                        x,
                        &ub.pack,
                        t,
                        gmu.uleft[x.0 as usize],
                        gmv.uleft[x.0 as usize],
                    )?;
                    if !check_equation(m, &eq)? {
                        txp_ok = false;
                        break;
                    }
                    let eq = units::eq_txq(
                        m,
                        x,
                        &ub.pack,
                        t,
                        gmu.uright[x.0 as usize],
                        gmv.uright[x.0 as usize],
                    )?;
                    if !check_equation(m, &eq)? {
                        txp_ok = false;
                        break;
                    }
                }
                if txp_ok {
                    txp_count += 1;
                }
            }
            if cylinder_count != txp_count {
                two_cells_match = false;
            }
            total_cylinder += cylinder_count;
            total_txp += txp_count;
        }
    }

    Ok(HomCount {
        from: a,
        to: bi,
        idempotent_morphisms: e_morphisms.len(),
        comparison_morphisms: u_morphisms.len(),
        gps_morphisms: if ga.is_some() && gb.is_some() {
            g_morphisms.len()
        } else {
            u_morphisms.len()
        },
        cylinder_two_cells: total_cylinder,
        compatibility_two_cells: total_txp,
        two_cells_match,
    })
}

/// Naturality of a candidate left comparison family between two GPS units.
fn uleft_family_natural(
    m: &TwoCategoryModel,
    ga: &GpsUnit,
    gb: &GpsUnit,
    arrow: OneId,
    family: &[TwoId],
) -> Result<bool, GpsError> {
    let i = ga.input.obj;
    for f in m.one_cells() {
        let (x, y) = (m.src1(f), m.dst1(f));
        let lhs = m.vc(
            ga.input.lambda_nat[f.0 as usize],
            m.hc(family[x.0 as usize], m.id2of(f))?,
        )?;
        let i_f = m.tl1(i, f);
        let ux = m.tr1(arrow, x);
        let rhs = m.vc(
            m.hc(m.id2of(i_f), family[y.0 as usize])?,
            m.hc(m.id2of(ux), gb.input.lambda_nat[f.0 as usize])?,
        )?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
