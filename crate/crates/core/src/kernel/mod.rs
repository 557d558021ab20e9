//! Finite strict semi-monoidal 2-categories as explicit composition tables.
//!
//! A model stores its objects, 1-cells and 2-cells as dense integer ids and
//! every operation (`comp1`, `vcomp`, `hcomp`, the tensor on all three
//! levels) as a lookup table.  Models are immutable once validated; all
//! operations are pure reads, so evaluation may run from many threads.
//!
//! Cell equality is id equality: models are required to be skeletal on the
//! nose, which makes every pasting equation decidable by one evaluation.

mod expr;
mod validate;

pub use expr::{
    check_equation, eval1, eval2, CheckRun, CheckedEquation, Equation, EvalError, ExprBuilder,
    PastingExpr1, PastingExpr2,
};
pub use validate::{validate_model, ValidationReport, Violation};

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use serde::{Deserialize, Serialize};

/// Object index into a model.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct ObjId(pub u32);

/// 1-cell index into a model.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct OneId(pub u32);

/// 2-cell index into a model.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct TwoId(pub u32);

impl fmt::Display for ObjId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "o{}", self.0)
    }
}
impl fmt::Display for OneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}
impl fmt::Display for TwoId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

/// Boundary of a 1-cell.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OneCellData {
    pub src: ObjId,
    pub dst: ObjId,
}

/// Boundary of a 2-cell (a parallel pair of 1-cells).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TwoCellData {
    pub src: OneId,
    pub dst: OneId,
}

/// A partial binary table (entries exist exactly for composable pairs).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialTable {
    stride: usize,
    entries: Vec<Option<u32>>,
}

impl PartialTable {
    fn new(n: usize) -> Self {
        PartialTable {
            stride: n,
            entries: vec![None; n * n],
        }
    }
    pub fn get(&self, a: usize, b: usize) -> Option<u32> {
        self.entries[a * self.stride + b]
    }
    pub fn set(&mut self, a: usize, b: usize, v: u32) {
        self.entries[a * self.stride + b] = Some(v);
    }
    pub fn clear(&mut self, a: usize, b: usize) {
        self.entries[a * self.stride + b] = None;
    }
}

/// A total binary table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalTable {
    stride: usize,
    entries: Vec<u32>,
}

impl TotalTable {
    fn new(n: usize) -> Self {
        TotalTable {
            stride: n,
            entries: vec![u32::MAX; n * n],
        }
    }
    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.entries[a * self.stride + b]
    }
    pub fn set(&mut self, a: usize, b: usize, v: u32) {
        self.entries[a * self.stride + b] = v;
    }
    fn is_total(&self) -> bool {
        self.entries.iter().all(|&v| v != u32::MAX)
    }
}

/// Structural failures: dangling ids, missing or spurious table entries.
///
/// These are distinct from axiom violations: a structurally broken model
/// cannot even be evaluated against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructuralError {
    MissingComp1(OneId, OneId),
    MissingVComp(TwoId, TwoId),
    MissingHComp(TwoId, TwoId),
    NotComposable1(OneId, OneId),
    NotVComposable(TwoId, TwoId),
    NotHComposable(TwoId, TwoId),
    BadObj(ObjId),
    BadOne(OneId),
    BadTwo(TwoId),
}

impl fmt::Display for StructuralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuralError::MissingComp1(a, b) => write!(f, "comp1({a},{b}) missing"),
            StructuralError::MissingVComp(a, b) => write!(f, "vcomp({a},{b}) missing"),
            StructuralError::MissingHComp(a, b) => write!(f, "hcomp({a},{b}) missing"),
            StructuralError::NotComposable1(a, b) => write!(f, "1-cells {a},{b} not composable"),
            StructuralError::NotVComposable(a, b) => {
                write!(f, "2-cells {a},{b} not vertically composable")
            }
            StructuralError::NotHComposable(a, b) => {
                write!(f, "2-cells {a},{b} not horizontally composable")
            }
            StructuralError::BadObj(x) => write!(f, "dangling object id {x}"),
            StructuralError::BadOne(x) => write!(f, "dangling 1-cell id {x}"),
            StructuralError::BadTwo(x) => write!(f, "dangling 2-cell id {x}"),
        }
    }
}

/// A finite strict semi-monoidal 2-category, given by explicit tables.
#[derive(Clone, Debug)]
pub struct TwoCategoryModel {
    pub name: String,
    objects: u32,
    one_cells: Vec<OneCellData>,
    id1: Vec<OneId>,
    comp1: PartialTable,
    two_cells: Vec<TwoCellData>,
    id2: Vec<TwoId>,
    vcomp: PartialTable,
    hcomp: PartialTable,
    tensor_obj: TotalTable,
    tensor1: TotalTable,
    tensor2: TotalTable,
    // strict-inverse caches, rebuilt by `finish`
    inv1: Vec<Option<OneId>>,
    inv2: Vec<Option<TwoId>>,
}

/// Mutable builder; `finish` performs basic shape checks and computes the
/// strict-inverse caches.  Axiom checking is `validate_model`'s job.
pub struct ModelBuilder {
    pub name: String,
    pub objects: u32,
    pub one_cells: Vec<OneCellData>,
    pub id1: Vec<OneId>,
    pub comp1: Vec<(OneId, OneId, OneId)>,
    pub two_cells: Vec<TwoCellData>,
    pub id2: Vec<TwoId>,
    pub vcomp: Vec<(TwoId, TwoId, TwoId)>,
    pub hcomp: Vec<(TwoId, TwoId, TwoId)>,
    pub tensor_obj: Vec<(ObjId, ObjId, ObjId)>,
    pub tensor1: Vec<(OneId, OneId, OneId)>,
    pub tensor2: Vec<(TwoId, TwoId, TwoId)>,
}

/// Shape errors raised by `ModelBuilder::finish`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildError {
    DanglingId(String),
    TableNotTotal(String),
    WrongCount(String),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::DanglingId(s) => write!(f, "dangling id in {s}"),
            BuildError::TableNotTotal(s) => write!(f, "table {s} not total"),
            BuildError::WrongCount(s) => write!(f, "wrong count: {s}"),
        }
    }
}

impl ModelBuilder {
    pub fn new(name: &str) -> Self {
        ModelBuilder {
            name: String::from(name),
            objects: 0,
            one_cells: Vec::new(),
            id1: Vec::new(),
            comp1: Vec::new(),
            two_cells: Vec::new(),
            id2: Vec::new(),
            vcomp: Vec::new(),
            hcomp: Vec::new(),
            tensor_obj: Vec::new(),
            tensor1: Vec::new(),
            tensor2: Vec::new(),
        }
    }

    pub fn finish(self) -> Result<TwoCategoryModel, BuildError> {
        let n_one = self.one_cells.len();
        let n_two = self.two_cells.len();
        if self.id1.len() != self.objects as usize {
            return Err(BuildError::WrongCount(String::from("id1")));
        }
        if self.id2.len() != n_one {
            return Err(BuildError::WrongCount(String::from("id2")));
        }
        for c in &self.one_cells {
            if c.src.0 >= self.objects || c.dst.0 >= self.objects {
                return Err(BuildError::DanglingId(String::from("one_cells")));
            }
        }
        for c in &self.two_cells {
            if c.src.0 as usize >= n_one || c.dst.0 as usize >= n_one {
                return Err(BuildError::DanglingId(String::from("two_cells")));
            }
        }
        let mut comp1 = PartialTable::new(n_one);
        for &(a, b, c) in &self.comp1 {
            if a.0 as usize >= n_one || b.0 as usize >= n_one || c.0 as usize >= n_one {
                return Err(BuildError::DanglingId(String::from("comp1")));
            }
            comp1.set(a.0 as usize, b.0 as usize, c.0);
        }
        let mut vcomp = PartialTable::new(n_two);
        for &(a, b, c) in &self.vcomp {
            if a.0 as usize >= n_two || b.0 as usize >= n_two || c.0 as usize >= n_two {
                return Err(BuildError::DanglingId(String::from("vcomp")));
            }
            vcomp.set(a.0 as usize, b.0 as usize, c.0);
        }
        let mut hcomp = PartialTable::new(n_two);
        for &(a, b, c) in &self.hcomp {
            if a.0 as usize >= n_two || b.0 as usize >= n_two || c.0 as usize >= n_two {
                return Err(BuildError::DanglingId(String::from("hcomp")));
            }
            hcomp.set(a.0 as usize, b.0 as usize, c.0);
        }
        let nobj = self.objects as usize;
        let mut tensor_obj = TotalTable::new(nobj);
        for &(a, b, c) in &self.tensor_obj {
            if a.0 >= self.objects || b.0 >= self.objects || c.0 >= self.objects {
                return Err(BuildError::DanglingId(String::from("tensor_obj")));
            }
            tensor_obj.set(a.0 as usize, b.0 as usize, c.0);
        }
        let mut tensor1 = TotalTable::new(n_one);
        for &(a, b, c) in &self.tensor1 {
            if a.0 as usize >= n_one || b.0 as usize >= n_one || c.0 as usize >= n_one {
                return Err(BuildError::DanglingId(String::from("tensor1")));
            }
            tensor1.set(a.0 as usize, b.0 as usize, c.0);
        }
        let mut tensor2 = TotalTable::new(n_two);
        for &(a, b, c) in &self.tensor2 {
            if a.0 as usize >= n_two || b.0 as usize >= n_two || c.0 as usize >= n_two {
                return Err(BuildError::DanglingId(String::from("tensor2")));
            }
            tensor2.set(a.0 as usize, b.0 as usize, c.0);
        }
        if !tensor_obj.is_total() {
            return Err(BuildError::TableNotTotal(String::from("tensor_obj")));
        }
        if !tensor1.is_total() {
            return Err(BuildError::TableNotTotal(String::from("tensor1")));
        }
        if !tensor2.is_total() {
            return Err(BuildError::TableNotTotal(String::from("tensor2")));
        }
        let mut m = TwoCategoryModel {
            name: self.name,
            objects: self.objects,
            one_cells: self.one_cells,
            id1: self.id1,
            comp1,
            two_cells: self.two_cells,
            id2: self.id2,
            vcomp,
            hcomp,
            tensor_obj,
            tensor1,
            tensor2,
            inv1: Vec::new(),
            inv2: Vec::new(),
        };
        m.rebuild_inverse_caches();
        Ok(m)
    }
}

impl TwoCategoryModel {
    pub fn object_count(&self) -> u32 {
        self.objects
    }
    pub fn one_cell_count(&self) -> u32 {
        self.one_cells.len() as u32
    }
    pub fn two_cell_count(&self) -> u32 {
        self.two_cells.len() as u32
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.objects).map(ObjId)
    }
    pub fn one_cells(&self) -> impl Iterator<Item = OneId> {
        (0..self.one_cells.len() as u32).map(OneId)
    }
    pub fn two_cells(&self) -> impl Iterator<Item = TwoId> {
        (0..self.two_cells.len() as u32).map(TwoId)
    }

    pub fn one_data(&self, f: OneId) -> OneCellData {
        self.one_cells[f.0 as usize]
    }
    pub fn two_data(&self, c: TwoId) -> TwoCellData {
        self.two_cells[c.0 as usize]
    }

    pub fn src1(&self, f: OneId) -> ObjId {
        self.one_cells[f.0 as usize].src
    }
    pub fn dst1(&self, f: OneId) -> ObjId {
        self.one_cells[f.0 as usize].dst
    }
    pub fn src2(&self, c: TwoId) -> OneId {
        self.two_cells[c.0 as usize].src
    }
    pub fn dst2(&self, c: TwoId) -> OneId {
        self.two_cells[c.0 as usize].dst
    }

    pub fn id1of(&self, x: ObjId) -> OneId {
        self.id1[x.0 as usize]
    }
    pub fn id2of(&self, f: OneId) -> TwoId {
        self.id2[f.0 as usize]
    }

    /// 1-cell composition `f # g` (left to right: the source of `g` must be
    /// the target of `f`).
    pub fn c1(&self, f: OneId, g: OneId) -> Result<OneId, StructuralError> {
        if self.dst1(f) != self.src1(g) {
            return Err(StructuralError::NotComposable1(f, g));
        }
        self.comp1
            .get(f.0 as usize, g.0 as usize)
            .map(OneId)
            .ok_or(StructuralError::MissingComp1(f, g))
    }

    /// Vertical composition (first `a`, then `b`).
    pub fn vc(&self, a: TwoId, b: TwoId) -> Result<TwoId, StructuralError> {
        if self.dst2(a) != self.src2(b) {
            return Err(StructuralError::NotVComposable(a, b));
        }
        self.vcomp
            .get(a.0 as usize, b.0 as usize)
            .map(TwoId)
            .ok_or(StructuralError::MissingVComp(a, b))
    }

    /// Horizontal composition `a # b` (source object of `b`'s boundary must
    /// be the target object of `a`'s boundary).
    pub fn hc(&self, a: TwoId, b: TwoId) -> Result<TwoId, StructuralError> {
        if self.dst1(self.src2(a)) != self.src1(self.src2(b)) {
            return Err(StructuralError::NotHComposable(a, b));
        }
        self.hcomp
            .get(a.0 as usize, b.0 as usize)
            .map(TwoId)
            .ok_or(StructuralError::MissingHComp(a, b))
    }

    pub fn tob(&self, x: ObjId, y: ObjId) -> ObjId {
        ObjId(self.tensor_obj.get(x.0 as usize, y.0 as usize))
    }
    pub fn t1(&self, f: OneId, g: OneId) -> OneId {
        OneId(self.tensor1.get(f.0 as usize, g.0 as usize))
    }
    pub fn t2(&self, a: TwoId, b: TwoId) -> TwoId {
        TwoId(self.tensor2.get(a.0 as usize, b.0 as usize))
    }

    /// Chain of vertical compositions, left to right.
    pub fn vcn(&self, cells: &[TwoId]) -> Result<TwoId, StructuralError> {
        let mut acc = cells[0];
        for &c in &cells[1..] {
            acc = self.vc(acc, c)?;
        }
        Ok(acc)
    }

    /// Left whisker: `id2(f) # a`.
    pub fn wl(&self, f: OneId, a: TwoId) -> Result<TwoId, StructuralError> {
        self.hc(self.id2of(f), a)
    }
    /// Right whisker: `a # id2(f)`.
    pub fn wr(&self, a: TwoId, f: OneId) -> Result<TwoId, StructuralError> {
        self.hc(a, self.id2of(f))
    }
    /// Tensor an object on the left of a 2-cell.
    pub fn tl_obj(&self, x: ObjId, a: TwoId) -> TwoId {
        self.t2(self.id2of(self.id1of(x)), a)
    }
    /// Tensor an object on the right of a 2-cell.
    pub fn tr_obj(&self, a: TwoId, x: ObjId) -> TwoId {
        self.t2(a, self.id2of(self.id1of(x)))
    }
    /// Tensor an object on the left of a 1-cell.
    pub fn tl1(&self, x: ObjId, f: OneId) -> OneId {
        self.t1(self.id1of(x), f)
    }
    /// Tensor an object on the right of a 1-cell.
    pub fn tr1(&self, f: OneId, x: ObjId) -> OneId {
        self.t1(f, self.id1of(x))
    }

    /// Strict inverse of a 1-cell under `comp1`, if any.
    pub fn inverse1(&self, f: OneId) -> Option<OneId> {
        self.inv1[f.0 as usize]
    }

    /// Strict inverse of a 2-cell under `vcomp`, if any.
    pub fn inverse2(&self, c: TwoId) -> Option<TwoId> {
        self.inv2[c.0 as usize]
    }

    pub fn is_invertible2(&self, c: TwoId) -> bool {
        self.inv2[c.0 as usize].is_some()
    }

    /// All 2-cells from `f` to `g`.
    pub fn hom2(&self, f: OneId, g: OneId) -> Vec<TwoId> {
        self.two_cells()
            .filter(|&c| self.src2(c) == f && self.dst2(c) == g)
            .collect()
    }

    /// All 1-cells from `x` to `y`.
    pub fn hom1(&self, x: ObjId, y: ObjId) -> Vec<OneId> {
        self.one_cells()
            .filter(|&f| self.src1(f) == x && self.dst1(f) == y)
            .collect()
    }

    /// True when every 2-cell is an identity.
    pub fn is_discrete(&self) -> bool {
        self.two_cells.len() == self.one_cells.len()
            && self.one_cells().all(|f| {
                let c = self.id2of(f);
                self.src2(c) == f && self.dst2(c) == f
            })
    }

    fn rebuild_inverse_caches(&mut self) {
        let n_one = self.one_cells.len();
        let n_two = self.two_cells.len();
        self.inv1 = vec![None; n_one];
        for a in 0..n_one {
            let fa = OneId(a as u32);
            if self.inv1[a].is_some() {
                continue;
            }
            for b in 0..n_one {
                let fb = OneId(b as u32);
                if self.dst1(fa) != self.src1(fb) || self.src1(fa) != self.dst1(fb) {
                    continue;
                }
                let fwd = self.comp1.get(a, b);
                let bwd = self.comp1.get(b, a);
                if fwd == Some(self.id1of(self.src1(fa)).0)
                    && bwd == Some(self.id1of(self.src1(fb)).0)
                {
                    self.inv1[a] = Some(fb);
                    break;
                }
            }
        }
        self.inv2 = vec![None; n_two];
        for a in 0..n_two {
            let ca = TwoId(a as u32);
            if self.inv2[a].is_some() {
                continue;
            }
            for b in 0..n_two {
                let cb = TwoId(b as u32);
                if self.src2(ca) != self.dst2(cb) || self.dst2(ca) != self.src2(cb) {
                    continue;
                }
                let fwd = self.vcomp.get(a, b);
                let bwd = self.vcomp.get(b, a);
                if fwd == Some(self.id2of(self.src2(ca)).0)
                    && bwd == Some(self.id2of(self.src2(cb)).0)
                {
                    self.inv2[a] = Some(cb);
                    break;
                }
            }
        }
    }

    // --- raw table access (validator / serialization) ---

    pub fn comp1_table(&self) -> impl Iterator<Item = (OneId, OneId, OneId)> + '_ {
        let n = self.one_cells.len();
        (0..n).flat_map(move |a| {
            (0..n).filter_map(move |b| {
                self.comp1
                    .get(a, b)
                    .map(|c| (OneId(a as u32), OneId(b as u32), OneId(c)))
            })
        })
    }
    pub fn vcomp_table(&self) -> impl Iterator<Item = (TwoId, TwoId, TwoId)> + '_ {
        let n = self.two_cells.len();
        (0..n).flat_map(move |a| {
            (0..n).filter_map(move |b| {
                self.vcomp
                    .get(a, b)
                    .map(|c| (TwoId(a as u32), TwoId(b as u32), TwoId(c)))
            })
        })
    }
    pub fn hcomp_table(&self) -> impl Iterator<Item = (TwoId, TwoId, TwoId)> + '_ {
        let n = self.two_cells.len();
        (0..n).flat_map(move |a| {
            (0..n).filter_map(move |b| {
                self.hcomp
                    .get(a, b)
                    .map(|c| (TwoId(a as u32), TwoId(b as u32), TwoId(c)))
            })
        })
    }
    pub(crate) fn comp1_raw(&self) -> &PartialTable {
        &self.comp1
    }
    pub(crate) fn vcomp_raw(&self) -> &PartialTable {
        &self.vcomp
    }
    pub(crate) fn hcomp_raw(&self) -> &PartialTable {
        &self.hcomp
    }

    // --- fault injection (testing / negative controls) ---
    //
    // These deliberately bypass the builder so that single table entries can
    // be redirected; the result is in general no longer a valid model and the
    // inverse caches are rebuilt pessimistically.

    pub fn redirect_comp1(&mut self, f: OneId, g: OneId, to: OneId) {
        self.comp1.set(f.0 as usize, g.0 as usize, to.0);
        self.rebuild_inverse_caches();
    }
    pub fn redirect_vcomp(&mut self, a: TwoId, b: TwoId, to: TwoId) {
        self.vcomp.set(a.0 as usize, b.0 as usize, to.0);
        self.rebuild_inverse_caches();
    }
    pub fn redirect_hcomp(&mut self, a: TwoId, b: TwoId, to: TwoId) {
        self.hcomp.set(a.0 as usize, b.0 as usize, to.0);
    }
    pub fn redirect_tensor_obj(&mut self, x: ObjId, y: ObjId, to: ObjId) {
        self.tensor_obj.set(x.0 as usize, y.0 as usize, to.0);
    }
    pub fn redirect_tensor1(&mut self, f: OneId, g: OneId, to: OneId) {
        self.tensor1.set(f.0 as usize, g.0 as usize, to.0);
    }
    pub fn redirect_tensor2(&mut self, a: TwoId, b: TwoId, to: TwoId) {
        self.tensor2.set(a.0 as usize, b.0 as usize, to.0);
    }
    pub fn remove_comp1(&mut self, f: OneId, g: OneId) {
        self.comp1.clear(f.0 as usize, g.0 as usize);
    }
}
