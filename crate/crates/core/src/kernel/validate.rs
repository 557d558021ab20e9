//! Exhaustive strictness validation.
//!
//! The report separates *structural* problems (missing or spurious table
//! entries, dangling ids, non-parallel 2-cell boundaries) from *axiom*
//! violations (associativity, units, interchange, 2-functoriality and strict
//! associativity of the tensor).  An empty report means the tables present a
//! strict semi-monoidal 2-category.
//!
//! Horizontal 2-functoriality of the tensor is checked in the equivalent
//! decomposed form (vertical preservation + whisker preservation + identity
//! preservation + interchange); the direct quantification over pairs of
//! horizontally composable pairs is quartic in hom size and infeasible even
//! at desk scale.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use serde::Serialize;

use super::{ObjId, OneId, TwoCategoryModel, TwoId};

/// One violated axiom instance.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub ids: Vec<u64>,
    pub message: String,
}

/// Validation outcome; `structural` and `violations` are reported distinctly.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct ValidationReport {
    pub structural: Vec<Violation>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.structural.is_empty() && self.violations.is_empty()
    }
    pub fn has_axiom(&self, axiom: &str) -> bool {
        self.structural
            .iter()
            .chain(self.violations.iter())
            .any(|v| v.axiom == axiom)
    }
    fn structural(&mut self, axiom: &str, ids: &[u64], message: String) {
        self.structural.push(Violation {
            axiom: String::from(axiom),
            ids: ids.to_vec(),
            message,
        });
    }
    fn law(&mut self, axiom: &str, ids: &[u64], message: String) {
        self.violations.push(Violation {
            axiom: String::from(axiom),
            ids: ids.to_vec(),
            message,
        });
    }
}

/// Check every strictness axiom instance of a table-given model.
pub fn validate_model(m: &TwoCategoryModel) -> ValidationReport {
    let mut rep = ValidationReport::default();
    structure(m, &mut rep);
    hom_categories(m, &mut rep);
    one_composition(m, &mut rep);
    horizontal(m, &mut rep);
    interchange(m, &mut rep);
    tensor_functor(m, &mut rep);
    tensor_associativity(m, &mut rep);
    rep
}

fn structure(m: &TwoCategoryModel, rep: &mut ValidationReport) {
    for x in m.objects() {
        let i = m.id1of(x);
        if m.src1(i) != x || m.dst1(i) != x {
            rep.structural(
                "id1_boundary",
                &[x.0 as u64, i.0 as u64],
                format!("id1({x})={i} is not an endo-1-cell of {x}"),
            );
        }
    }
    for f in m.one_cells() {
        let i = m.id2of(f);
        if m.src2(i) != f || m.dst2(i) != f {
            rep.structural(
                "id2_boundary",
                &[f.0 as u64, i.0 as u64],
                format!("id2({f})={i} is not an endo-2-cell of {f}"),
            );
        }
    }
    for c in m.two_cells() {
        let d = m.two_data(c);
        if m.src1(d.src) != m.src1(d.dst) || m.dst1(d.src) != m.dst1(d.dst) {
            rep.structural(
                "two_cell_parallel",
                &[c.0 as u64],
                format!("2-cell {c} has non-parallel boundary {}..{}", d.src, d.dst),
            );
        }
    }
    // completeness of the partial tables: present iff composable
    let n1 = m.one_cell_count() as usize;
    for a in 0..n1 {
        for b in 0..n1 {
            let (fa, fb) = (OneId(a as u32), OneId(b as u32));
            let composable = m.dst1(fa) == m.src1(fb);
            match (composable, m.comp1_raw().get(a, b)) {
                (true, None) => rep.structural(
                    "missing_comp1",
                    &[a as u64, b as u64],
                    format!("comp1({fa},{fb}) missing"),
                ),
                (false, Some(_)) => rep.structural(
                    "spurious_comp1",
                    &[a as u64, b as u64],
                    format!("comp1({fa},{fb}) defined on non-composable pair"),
                ),
                _ => {}
            }
        }
    }
    let n2 = m.two_cell_count() as usize;
    for a in 0..n2 {
        for b in 0..n2 {
            let (ca, cb) = (TwoId(a as u32), TwoId(b as u32));
            let vok = m.dst2(ca) == m.src2(cb);
            match (vok, m.vcomp_raw().get(a, b)) {
                (true, None) => rep.structural(
                    "missing_vcomp",
                    &[a as u64, b as u64],
                    format!("vcomp({ca},{cb}) missing"),
                ),
                (false, Some(_)) => rep.structural(
                    "spurious_vcomp",
                    &[a as u64, b as u64],
                    format!("vcomp({ca},{cb}) defined on non-composable pair"),
                ),
                _ => {}
            }
            let hok = m.dst1(m.src2(ca)) == m.src1(m.src2(cb));
            match (hok, m.hcomp_raw().get(a, b)) {
                (true, None) => rep.structural(
                    "missing_hcomp",
                    &[a as u64, b as u64],
                    format!("hcomp({ca},{cb}) missing"),
                ),
                (false, Some(_)) => rep.structural(
                    "spurious_hcomp",
                    &[a as u64, b as u64],
                    format!("hcomp({ca},{cb}) defined on non-composable pair"),
                ),
                _ => {}
            }
        }
    }
}

fn hom_categories(m: &TwoCategoryModel, rep: &mut ValidationReport) {
    // vcomp result boundaries
    for (a, b, c) in m.vcomp_table() {
        if m.dst2(a) != m.src2(b) {
            continue; // already reported as spurious
        }
        if m.src2(c) != m.src2(a) || m.dst2(c) != m.dst2(b) {
            rep.law(
                "vcomp_boundary",
                &[a.0 as u64, b.0 as u64, c.0 as u64],
                format!("vcomp({a},{b})={c} has wrong boundary"),
            );
        }
    }
    // units
    for a in m.two_cells() {
        let l = m.vc(m.id2of(m.src2(a)), a).ok();
        if l != Some(a) {
            rep.law("vcomp_unit", &[a.0 as u64], format!("id2 . {a} != {a}"));
        }
        let r = m.vc(a, m.id2of(m.dst2(a))).ok();
        if r != Some(a) {
            rep.law("vcomp_unit", &[a.0 as u64], format!("{a} . id2 != {a}"));
        }
    }
    // associativity over composable triples
    let pairs = vpairs(m);
    for &(a, b) in &pairs {
        let ab = match m.vc(a, b) {
            Ok(c) => c,
            Err(_) => continue,
        };
        for c in m.two_cells() {
            if m.src2(c) != m.dst2(b) {
                continue;
            }
            let lhs = m.vc(ab, c).ok();
            let rhs = m.vc(b, c).ok().and_then(|bc| m.vc(a, bc).ok());
            if lhs != rhs || lhs.is_none() {
                rep.law(
                    "vcomp_assoc",
                    &[a.0 as u64, b.0 as u64, c.0 as u64],
                    format!("({a}.{b}).{c} != {a}.({b}.{c})"),
                );
            }
        }
    }
}

fn one_composition(m: &TwoCategoryModel, rep: &mut ValidationReport) {
    for (f, g, h) in m.comp1_table() {
        if m.dst1(f) != m.src1(g) {
            continue;
        }
        if m.src1(h) != m.src1(f) || m.dst1(h) != m.dst1(g) {
            rep.law(
                "comp1_boundary",
                &[f.0 as u64, g.0 as u64, h.0 as u64],
                format!("comp1({f},{g})={h} has wrong boundary"),
            );
        }
    }
    for f in m.one_cells() {
        if m.c1(m.id1of(m.src1(f)), f).ok() != Some(f) {
            rep.law("comp1_unit", &[f.0 as u64], format!("id1 # {f} != {f}"));
        }
        if m.c1(f, m.id1of(m.dst1(f))).ok() != Some(f) {
            rep.law("comp1_unit", &[f.0 as u64], format!("{f} # id1 != {f}"));
        }
    }
    for f in m.one_cells() {
        for g in m.hom_from(m.dst1(f)) {
            let fg = match m.c1(f, g) {
                Ok(h) => h,
                Err(_) => continue,
            };
            for h in m.hom_from(m.dst1(g)) {
                let lhs = m.c1(fg, h).ok();
                let rhs = m.c1(g, h).ok().and_then(|gh| m.c1(f, gh).ok());
                if lhs != rhs || lhs.is_none() {
                    rep.law(
                        "comp1_assoc",
                        &[f.0 as u64, g.0 as u64, h.0 as u64],
                        format!("({f}#{g})#{h} != {f}#({g}#{h})"),
                    );
                }
            }
        }
    }
}

fn horizontal(m: &TwoCategoryModel, rep: &mut ValidationReport) {
    for (a, b, c) in m.hcomp_table() {
        if m.dst1(m.src2(a)) != m.src1(m.src2(b)) {
            continue;
        }
        let want_src = m.c1(m.src2(a), m.src2(b)).ok();
        let want_dst = m.c1(m.dst2(a), m.dst2(b)).ok();
        if Some(m.src2(c)) != want_src || Some(m.dst2(c)) != want_dst {
            rep.law(
                "hcomp_boundary",
                &[a.0 as u64, b.0 as u64, c.0 as u64],
                format!("hcomp({a},{b})={c} has wrong boundary"),
            );
        }
    }
    // identity 2-cells of identity 1-cells are hcomp units
    for a in m.two_cells() {
        let x = m.src1(m.src2(a));
        let y = m.dst1(m.src2(a));
        if m.hc(m.id2of(m.id1of(x)), a).ok() != Some(a) {
            rep.law(
                "hcomp_unit",
                &[a.0 as u64],
                format!("id2(id1({x})) # {a} != {a}"),
            );
        }
        if m.hc(a, m.id2of(m.id1of(y))).ok() != Some(a) {
            rep.law(
                "hcomp_unit",
                &[a.0 as u64],
                format!("{a} # id2(id1({y})) != {a}"),
            );
        }
    }
    // hcomp of identities is the identity of the composite
    for f in m.one_cells() {
        for g in m.hom_from(m.dst1(f)) {
            let fg = match m.c1(f, g) {
                Ok(h) => h,
                Err(_) => continue,
            };
            if m.hc(m.id2of(f), m.id2of(g)).ok() != Some(m.id2of(fg)) {
                rep.law(
                    "hcomp_id2",
                    &[f.0 as u64, g.0 as u64],
                    format!("id2({f}) # id2({g}) != id2({f}#{g})"),
                );
            }
        }
    }
    // associativity
    let by_src_obj = cells_by_src_obj(m);
    for a in m.two_cells() {
        let ya = m.dst1(m.src2(a));
        for &b in &by_src_obj[ya.0 as usize] {
            let ab = match m.hc(a, b) {
                Ok(c) => c,
                Err(_) => continue,
            };
            let yb = m.dst1(m.src2(b));
            for &c in &by_src_obj[yb.0 as usize] {
                let lhs = m.hc(ab, c).ok();
                let rhs = m.hc(b, c).ok().and_then(|bc| m.hc(a, bc).ok());
                if lhs != rhs || lhs.is_none() {
                    rep.law(
                        "hcomp_assoc",
                        &[a.0 as u64, b.0 as u64, c.0 as u64],
                        format!("({a}#{b})#{c} != {a}#({b}#{c})"),
                    );
                }
            }
        }
    }
}

fn interchange(m: &TwoCategoryModel, rep: &mut ValidationReport) {
    // group vertically composable pairs by the object boundary of their hom
    let pairs = vpairs(m);
    let nobj = m.object_count() as usize;
    let mut grouped: Vec<Vec<(TwoId, TwoId)>> = vec![Vec::new(); nobj * nobj];
    for &(a, c) in &pairs {
        let x = m.src1(m.src2(a));
        let y = m.dst1(m.src2(a));
        grouped[x.0 as usize * nobj + y.0 as usize].push((a, c));
    }
    for x in 0..nobj {
        for y in 0..nobj {
            let left = &grouped[x * nobj + y];
            if left.is_empty() {
                continue;
            }
            for z in 0..nobj {
                let right = &grouped[y * nobj + z];
                for &(a, c) in left {
                    for &(b, d) in right {
                        let lhs = m
                            .hc(a, b)
                            .ok()
                            .and_then(|ab| m.hc(c, d).ok().and_then(|cd| m.vc(ab, cd).ok()));
                        let rhs = m
                            .vc(a, c)
                            .ok()
                            .and_then(|ac| m.vc(b, d).ok().and_then(|bd| m.hc(ac, bd).ok()));
                        if lhs != rhs || lhs.is_none() {
                            rep.law(
                                "interchange",
                                &[a.0 as u64, b.0 as u64, c.0 as u64, d.0 as u64],
                                format!("({a}#{b}).({c}#{d}) != ({a}.{c})#({b}.{d})"),
                            );
                        }
                    }
                }
            }
        }
    }
}

fn tensor_functor(m: &TwoCategoryModel, rep: &mut ValidationReport) {
    // boundaries
    for f in m.one_cells() {
        for g in m.one_cells() {
            let t = m.t1(f, g);
            if m.src1(t) != m.tob(m.src1(f), m.src1(g)) || m.dst1(t) != m.tob(m.dst1(f), m.dst1(g))
            {
                rep.law(
                    "tensor1_boundary",
                    &[f.0 as u64, g.0 as u64],
                    format!("tensor1({f},{g}) has wrong boundary"),
                );
            }
        }
    }
    for a in m.two_cells() {
        for b in m.two_cells() {
            let t = m.t2(a, b);
            if m.src2(t) != m.t1(m.src2(a), m.src2(b)) || m.dst2(t) != m.t1(m.dst2(a), m.dst2(b)) {
                rep.law(
                    "tensor2_boundary",
                    &[a.0 as u64, b.0 as u64],
                    format!("tensor2({a},{b}) has wrong boundary"),
                );
            }
        }
    }
    // identity preservation
    for x in m.objects() {
        for y in m.objects() {
            if m.t1(m.id1of(x), m.id1of(y)) != m.id1of(m.tob(x, y)) {
                rep.law(
                    "tensor_id1",
                    &[x.0 as u64, y.0 as u64],
                    format!("id1({x}) ⊗ id1({y}) != id1({x}⊗{y})"),
                );
            }
        }
    }
    for f in m.one_cells() {
        for g in m.one_cells() {
            if m.t2(m.id2of(f), m.id2of(g)) != m.id2of(m.t1(f, g)) {
                rep.law(
                    "tensor_id2",
                    &[f.0 as u64, g.0 as u64],
                    format!("id2({f}) ⊗ id2({g}) != id2({f}⊗{g})"),
                );
            }
        }
    }
    // comp1 preservation
    let cpairs: Vec<(OneId, OneId, OneId)> = m
        .one_cells()
        .flat_map(|f| m.hom_from(m.dst1(f)).into_iter().map(move |g| (f, g)))
        .filter_map(|(f, g)| m.c1(f, g).ok().map(|fg| (f, g, fg)))
        .collect();
    for &(f, g, fg) in &cpairs {
        for &(h, k, hk) in &cpairs {
            let lhs = m.t1(fg, hk);
            let rhs = m.c1(m.t1(f, h), m.t1(g, k)).ok();
            if rhs != Some(lhs) {
                rep.law(
                    "tensor1_comp1",
                    &[f.0 as u64, g.0 as u64, h.0 as u64, k.0 as u64],
                    format!("({f}#{g})⊗({h}#{k}) != ({f}⊗{h})#({g}⊗{k})"),
                );
            }
        }
    }
    // vcomp preservation
    let pairs = vpairs(m);
    for &(a, c) in &pairs {
        let ac = match m.vc(a, c) {
            Ok(v) => v,
            Err(_) => continue,
        };
        for &(b, d) in &pairs {
            let bd = match m.vc(b, d) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let lhs = m.t2(ac, bd);
            let rhs = m.vc(m.t2(a, b), m.t2(c, d)).ok();
            if rhs != Some(lhs) {
                rep.law(
                    "tensor2_vcomp",
                    &[a.0 as u64, b.0 as u64, c.0 as u64, d.0 as u64],
                    format!("({a}.{c})⊗({b}.{d}) != ({a}⊗{b}).({c}⊗{d})"),
                );
            }
        }
    }
    // hcomp preservation, whisker form (right and left)
    let wr: Vec<(TwoId, OneId, TwoId)> = m
        .two_cells()
        .flat_map(|a| {
            let y = m.dst1(m.src2(a));
            m.hom_from(y).into_iter().map(move |p| (a, p))
        })
        .filter_map(|(a, p)| m.wr(a, p).ok().map(|w| (a, p, w)))
        .collect();
    for &(a, p, w1) in &wr {
        for &(c, r, w2) in &wr {
            let lhs = m.t2(w1, w2);
            let rhs = m.wr(m.t2(a, c), m.t1(p, r)).ok();
            if rhs != Some(lhs) {
                rep.law(
                    "tensor2_hcomp",
                    &[a.0 as u64, p.0 as u64, c.0 as u64, r.0 as u64],
                    format!("({a}#id({p}))⊗({c}#id({r})) != ({a}⊗{c})#id({p}⊗{r})"),
                );
            }
        }
    }
    let wlist: Vec<(OneId, TwoId, TwoId)> = m
        .two_cells()
        .flat_map(|a| {
            let x = m.src1(m.src2(a));
            m.hom_into(x).into_iter().map(move |p| (p, a))
        })
        .filter_map(|(p, a)| m.wl(p, a).ok().map(|w| (p, a, w)))
        .collect();
    for &(p, a, w1) in &wlist {
        for &(r, c, w2) in &wlist {
            let lhs = m.t2(w1, w2);
            let rhs = m.wl(m.t1(p, r), m.t2(a, c)).ok();
            if rhs != Some(lhs) {
                rep.law(
                    "tensor2_hcomp",
                    &[p.0 as u64, a.0 as u64, r.0 as u64, c.0 as u64],
                    format!("(id({p})#{a})⊗(id({r})#{c}) != id({p}⊗{r})#({a}⊗{c})"),
                );
            }
        }
    }
}

fn tensor_associativity(m: &TwoCategoryModel, rep: &mut ValidationReport) {
    for x in m.objects() {
        for y in m.objects() {
            let xy = m.tob(x, y);
            for z in m.objects() {
                if m.tob(xy, z) != m.tob(x, m.tob(y, z)) {
                    rep.law(
                        "tensor_obj_assoc",
                        &[x.0 as u64, y.0 as u64, z.0 as u64],
                        format!("({x}⊗{y})⊗{z} != {x}⊗({y}⊗{z})"),
                    );
                }
            }
        }
    }
    for f in m.one_cells() {
        for g in m.one_cells() {
            let fg = m.t1(f, g);
            for h in m.one_cells() {
                if m.t1(fg, h) != m.t1(f, m.t1(g, h)) {
                    rep.law(
                        "tensor1_assoc",
                        &[f.0 as u64, g.0 as u64, h.0 as u64],
                        format!("({f}⊗{g})⊗{h} != {f}⊗({g}⊗{h})"),
                    );
                }
            }
        }
    }
    let n = m.two_cell_count();
    for a in 0..n {
        for b in 0..n {
            let ab = m.t2(TwoId(a), TwoId(b));
            for c in 0..n {
                if m.t2(ab, TwoId(c)) != m.t2(TwoId(a), m.t2(TwoId(b), TwoId(c))) {
                    rep.law(
                        "tensor2_assoc",
                        &[a as u64, b as u64, c as u64],
                        format!("({a}⊗{b})⊗{c} != {a}⊗({b}⊗{c}) on 2-cells"),
                    );
                }
            }
        }
    }
}

fn vpairs(m: &TwoCategoryModel) -> Vec<(TwoId, TwoId)> {
    let mut by_src: Vec<Vec<TwoId>> = vec![Vec::new(); m.one_cell_count() as usize];
    for c in m.two_cells() {
        by_src[m.src2(c).0 as usize].push(c);
    }
    let mut out = Vec::new();
    for a in m.two_cells() {
        for &b in &by_src[m.dst2(a).0 as usize] {
            out.push((a, b));
        }
    }
    out
}

fn cells_by_src_obj(m: &TwoCategoryModel) -> Vec<Vec<TwoId>> {
    let mut by: Vec<Vec<TwoId>> = vec![Vec::new(); m.object_count() as usize];
    for c in m.two_cells() {
        by[m.src1(m.src2(c)).0 as usize].push(c);
    }
    by
}

impl TwoCategoryModel {
    /// 1-cells whose source is `x`.
    pub fn hom_from(&self, x: ObjId) -> Vec<OneId> {
        self.one_cells().filter(|&f| self.src1(f) == x).collect()
    }
    /// 1-cells whose target is `x`.
    pub fn hom_into(&self, x: ObjId) -> Vec<OneId> {
        self.one_cells().filter(|&f| self.dst1(f) == x).collect()
    }
}
