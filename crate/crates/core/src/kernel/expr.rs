//! Formal pasting expressions and their evaluation against a model.
//!
//! Evaluation normalizes nothing: it folds the model's tables.  Whiskering is
//! the derived form `HComp`/`Tensor2` with `Id2` arguments.  Boundaries are
//! checked both by the [`ExprBuilder`] (eagerly, at construction) and again
//! during evaluation, since mis-pasted diagrams are the dominant bug class.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use serde::{Deserialize, Serialize};

use super::{ObjId, OneId, StructuralError, TwoCategoryModel, TwoId};

/// Formal composite of 1-cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PastingExpr1 {
    Id1(ObjId),
    Lit1(OneId),
    Comp1(Box<PastingExpr1>, Box<PastingExpr1>),
    Tensor1(Box<PastingExpr1>, Box<PastingExpr1>),
}

/// Formal composite of 2-cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PastingExpr2 {
    Id2(PastingExpr1),
    Lit2(TwoId),
    VComp(Box<PastingExpr2>, Box<PastingExpr2>),
    HComp(Box<PastingExpr2>, Box<PastingExpr2>),
    Tensor2(Box<PastingExpr2>, Box<PastingExpr2>),
}

/// An equation between two pasted composites, decided by evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub lhs: PastingExpr2,
    pub rhs: PastingExpr2,
}

/// A named, evaluated equation; the raw material of certificates.  Anyone
/// holding the model can re-run the evaluator on `lhs`/`rhs` and must
/// reproduce `result`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedEquation {
    pub name: String,
    pub lhs: PastingExpr2,
    pub rhs: PastingExpr2,
    pub result: bool,
}

/// Accumulated equation checks for one verification run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRun {
    pub checked: Vec<CheckedEquation>,
}

impl CheckRun {
    pub fn ok(&self) -> bool {
        self.checked.iter().all(|c| c.result)
    }
    pub fn failures(&self) -> impl Iterator<Item = &CheckedEquation> {
        self.checked.iter().filter(|c| !c.result)
    }
    /// Evaluate, record, and return the verdict.
    pub fn check(
        &mut self,
        m: &TwoCategoryModel,
        name: &str,
        eq: Equation,
    ) -> Result<bool, EvalError> {
        let result = check_equation(m, &eq)?;
        self.checked.push(CheckedEquation {
            name: String::from(name),
            lhs: eq.lhs,
            rhs: eq.rhs,
            result,
        });
        Ok(result)
    }
    pub fn merge(&mut self, other: CheckRun) {
        self.checked.extend(other.checked);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    Structural(StructuralError),
    /// Boundary mismatch; `node` is a path to the first ill-typed node.
    Boundary {
        node: String,
        detail: String,
    },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Structural(e) => write!(f, "structural: {e}"),
            EvalError::Boundary { node, detail } => {
                write!(f, "boundary mismatch at {node}: {detail}")
            }
        }
    }
}

impl From<StructuralError> for EvalError {
    fn from(e: StructuralError) -> Self {
        EvalError::Structural(e)
    }
}

fn eval1_at(
    m: &TwoCategoryModel,
    e: &PastingExpr1,
    path: &mut Vec<&'static str>,
) -> Result<OneId, EvalError> {
    match e {
        PastingExpr1::Id1(x) => {
            if x.0 >= m.object_count() {
                return Err(StructuralError::BadObj(*x).into());
            }
            Ok(m.id1of(*x))
        }
        PastingExpr1::Lit1(f) => {
            if f.0 >= m.one_cell_count() {
                return Err(StructuralError::BadOne(*f).into());
            }
            Ok(*f)
        }
        PastingExpr1::Comp1(a, b) => {
            path.push("comp1.lhs");
            let fa = eval1_at(m, a, path)?;
            path.pop();
            path.push("comp1.rhs");
            let fb = eval1_at(m, b, path)?;
            path.pop();
            if m.dst1(fa) != m.src1(fb) {
                return Err(EvalError::Boundary {
                    node: path_str(path, "comp1"),
                    detail: format!("dst({fa})={} but src({fb})={}", m.dst1(fa), m.src1(fb)),
                });
            }
            Ok(m.c1(fa, fb)?)
        }
        PastingExpr1::Tensor1(a, b) => {
            path.push("tensor1.lhs");
            let fa = eval1_at(m, a, path)?;
            path.pop();
            path.push("tensor1.rhs");
            let fb = eval1_at(m, b, path)?;
            path.pop();
            Ok(m.t1(fa, fb))
        }
    }
}

fn path_str(path: &[&'static str], here: &str) -> String {
    let mut s = String::new();
    for p in path {
        s.push_str(p);
        s.push('.');
    }
    s.push_str(here);
    s
}

fn eval2_at(
    m: &TwoCategoryModel,
    e: &PastingExpr2,
    path: &mut Vec<&'static str>,
) -> Result<TwoId, EvalError> {
    match e {
        PastingExpr2::Id2(f) => {
            path.push("id2");
            let f = eval1_at(m, f, path)?;
            path.pop();
            Ok(m.id2of(f))
        }
        PastingExpr2::Lit2(c) => {
            if c.0 >= m.two_cell_count() {
                return Err(StructuralError::BadTwo(*c).into());
            }
            Ok(*c)
        }
        PastingExpr2::VComp(a, b) => {
            path.push("vcomp.lhs");
            let ca = eval2_at(m, a, path)?;
            path.pop();
            path.push("vcomp.rhs");
            let cb = eval2_at(m, b, path)?;
            path.pop();
            if m.dst2(ca) != m.src2(cb) {
                return Err(EvalError::Boundary {
                    node: path_str(path, "vcomp"),
                    detail: format!("dst({ca})={} but src({cb})={}", m.dst2(ca), m.src2(cb)),
                });
            }
            Ok(m.vc(ca, cb)?)
        }
        PastingExpr2::HComp(a, b) => {
            path.push("hcomp.lhs");
            let ca = eval2_at(m, a, path)?;
            path.pop();
            path.push("hcomp.rhs");
            let cb = eval2_at(m, b, path)?;
            path.pop();
            if m.dst1(m.src2(ca)) != m.src1(m.src2(cb)) {
                return Err(EvalError::Boundary {
                    node: path_str(path, "hcomp"),
                    detail: format!("cells {ca},{cb} not horizontally composable"),
                });
            }
            Ok(m.hc(ca, cb)?)
        }
        PastingExpr2::Tensor2(a, b) => {
            path.push("tensor2.lhs");
            let ca = eval2_at(m, a, path)?;
            path.pop();
            path.push("tensor2.rhs");
            let cb = eval2_at(m, b, path)?;
            path.pop();
            Ok(m.t2(ca, cb))
        }
    }
}

/// Evaluate a 1-cell expression to its table value.
pub fn eval1(m: &TwoCategoryModel, e: &PastingExpr1) -> Result<OneId, EvalError> {
    eval1_at(m, e, &mut Vec::new())
}

/// Evaluate a 2-cell expression to its table value.
pub fn eval2(m: &TwoCategoryModel, e: &PastingExpr2) -> Result<TwoId, EvalError> {
    eval2_at(m, e, &mut Vec::new())
}

/// Evaluate both sides; true iff they land on the same cell id.
///
/// Errors if either side is ill-typed or if the two sides do not share a
/// boundary (which would make the comparison meaningless).
pub fn check_equation(m: &TwoCategoryModel, eq: &Equation) -> Result<bool, EvalError> {
    let l = eval2(m, &eq.lhs)?;
    let r = eval2(m, &eq.rhs)?;
    if m.src2(l) != m.src2(r) || m.dst2(l) != m.dst2(r) {
        return Err(EvalError::Boundary {
            node: String::from("equation"),
            detail: format!("sides have different boundaries: {l} vs {r}"),
        });
    }
    Ok(l == r)
}

/// Expression factory bound to a model; every constructor checks boundaries
/// eagerly and reports the offending sub-expression.
#[derive(Clone, Copy)]
pub struct ExprBuilder<'m> {
    pub m: &'m TwoCategoryModel,
}

impl<'m> ExprBuilder<'m> {
    pub fn new(m: &'m TwoCategoryModel) -> Self {
        ExprBuilder { m }
    }

    pub fn lit1(&self, f: OneId) -> PastingExpr1 {
        PastingExpr1::Lit1(f)
    }
    pub fn obj(&self, x: ObjId) -> PastingExpr1 {
        PastingExpr1::Id1(x)
    }
    pub fn lit2(&self, c: TwoId) -> PastingExpr2 {
        PastingExpr2::Lit2(c)
    }
    pub fn id2(&self, f: PastingExpr1) -> PastingExpr2 {
        PastingExpr2::Id2(f)
    }
    pub fn id2c(&self, f: OneId) -> PastingExpr2 {
        PastingExpr2::Id2(PastingExpr1::Lit1(f))
    }

    pub fn c1(&self, a: PastingExpr1, b: PastingExpr1) -> Result<PastingExpr1, EvalError> {
        let e = PastingExpr1::Comp1(Box::new(a), Box::new(b));
        eval1(self.m, &e)?;
        Ok(e)
    }
    pub fn t1(&self, a: PastingExpr1, b: PastingExpr1) -> Result<PastingExpr1, EvalError> {
        let e = PastingExpr1::Tensor1(Box::new(a), Box::new(b));
        eval1(self.m, &e)?;
        Ok(e)
    }
    pub fn vc(&self, a: PastingExpr2, b: PastingExpr2) -> Result<PastingExpr2, EvalError> {
        let e = PastingExpr2::VComp(Box::new(a), Box::new(b));
        eval2(self.m, &e)?;
        Ok(e)
    }
    pub fn vcn(&self, cells: Vec<PastingExpr2>) -> Result<PastingExpr2, EvalError> {
        let mut it = cells.into_iter();
        let mut acc = it.next().expect("vcn of empty chain");
        for c in it {
            acc = self.vc(acc, c)?;
        }
        Ok(acc)
    }
    pub fn hc(&self, a: PastingExpr2, b: PastingExpr2) -> Result<PastingExpr2, EvalError> {
        let e = PastingExpr2::HComp(Box::new(a), Box::new(b));
        eval2(self.m, &e)?;
        Ok(e)
    }
    pub fn t2(&self, a: PastingExpr2, b: PastingExpr2) -> Result<PastingExpr2, EvalError> {
        let e = PastingExpr2::Tensor2(Box::new(a), Box::new(b));
        eval2(self.m, &e)?;
        Ok(e)
    }

    /// Left whisker `id2(f) # a`.
    pub fn wl(&self, f: OneId, a: PastingExpr2) -> Result<PastingExpr2, EvalError> {
        self.hc(self.id2c(f), a)
    }
    /// Right whisker `a # id2(f)`.
    pub fn wr(&self, a: PastingExpr2, f: OneId) -> Result<PastingExpr2, EvalError> {
        self.hc(a, self.id2c(f))
    }
    /// Tensor an object on the left: `X ⊗ a`.
    pub fn tl(&self, x: ObjId, a: PastingExpr2) -> Result<PastingExpr2, EvalError> {
        self.t2(self.id2(self.obj(x)), a)
    }
    /// Tensor an object on the right: `a ⊗ X`.
    pub fn tr(&self, a: PastingExpr2, x: ObjId) -> Result<PastingExpr2, EvalError> {
        self.t2(a, self.id2(self.obj(x)))
    }

    pub fn eval(&self, e: &PastingExpr2) -> Result<TwoId, EvalError> {
        eval2(self.m, e)
    }
}
