//! Built-in model generators.
//!
//! All generators are deterministic table constructions; the same call always
//! yields the same id layout.  The "puff" family lives on two objects `I` and
//! `X` with `I⊗I = I`, `I⊗X = X⊗I = X⊗X = X`, where `hom(I,I)` carries the
//! order-two group `{e, u}` on 1-cells and `hom(X,X)` is trivial.  The
//! variants differ in their 2-cells:
//!
//! * [`z2p`]   — only identity 2-cells;
//! * [`zg`]    — `Hom(a,b)` is a copy of `Z/2` for every ordered pair of
//!   1-cells in `hom(I,I)`; all compositions add labels (see
//!   [`graded_puff`] for the `Z/n` generalization);
//! * [`chp`]   — exactly one 2-cell between every parallel pair in
//!   `hom(I,I)` (a chaotic hom, so every diagram there commutes).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::kernel::{
    ModelBuilder, ObjId, OneCellData, OneId, TwoCategoryModel, TwoCellData, TwoId,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenError {
    /// The provided multiplication table is not associative (or malformed).
    InvalidSpec(String),
    /// Internal: a generated model failed its own build.
    Build(String),
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::InvalidSpec(s) => write!(f, "invalid generator spec: {s}"),
            GenError::Build(s) => write!(f, "generator bug: {s}"),
        }
    }
}

/// Discrete model of `Z/3` under addition; the strict unit is object 0.
pub fn m3() -> TwoCategoryModel {
    discrete_from_table(
        "m3",
        3,
        &(0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b, (a + b) % 3)))
            .collect::<Vec<_>>(),
    )
    .expect("m3 table is associative")
}

/// Discrete semi-monoidal model of an arbitrary associative multiplication
/// table (objects only; all 1- and 2-cells are identities).
pub fn monoid_model(
    name: &str,
    n: usize,
    table: &[(usize, usize, usize)],
) -> Result<TwoCategoryModel, GenError> {
    discrete_from_table(name, n, table)
}

fn discrete_from_table(
    name: &str,
    n: usize,
    table: &[(usize, usize, usize)],
) -> Result<TwoCategoryModel, GenError> {
    let mut t = Vec::new();
    t.resize(n * n, usize::MAX);
    for &(a, b, c) in table {
        if a >= n || b >= n || c >= n {
            return Err(GenError::InvalidSpec(format!(
                "table entry ({a},{b},{c}) out of range"
            )));
        }
        t[a * n + b] = c;
    }
    if t.contains(&usize::MAX) {
        return Err(GenError::InvalidSpec(String::from("table not total")));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t[t[a * n + b] * n + c] != t[a * n + t[b * n + c]] {
                    return Err(GenError::InvalidSpec(format!(
                        "table not associative at ({a},{b},{c})"
                    )));
                }
            }
        }
    }
    let mut b = ModelBuilder::new(name);
    b.objects = n as u32;
    for x in 0..n {
        b.one_cells.push(OneCellData {
            src: ObjId(x as u32),
            dst: ObjId(x as u32),
        });
        b.id1.push(OneId(x as u32));
        b.comp1
            .push((OneId(x as u32), OneId(x as u32), OneId(x as u32)));
        b.two_cells.push(TwoCellData {
            src: OneId(x as u32),
            dst: OneId(x as u32),
        });
        b.id2.push(TwoId(x as u32));
        b.vcomp
            .push((TwoId(x as u32), TwoId(x as u32), TwoId(x as u32)));
        b.hcomp
            .push((TwoId(x as u32), TwoId(x as u32), TwoId(x as u32)));
    }
    for x in 0..n {
        for y in 0..n {
            let z = t[x * n + y];
            b.tensor_obj
                .push((ObjId(x as u32), ObjId(y as u32), ObjId(z as u32)));
            b.tensor1
                .push((OneId(x as u32), OneId(y as u32), OneId(z as u32)));
            b.tensor2
                .push((TwoId(x as u32), TwoId(y as u32), TwoId(z as u32)));
        }
    }
    b.finish().map_err(|e| GenError::Build(format!("{e}")))
}

// Shared layout of the two-object puff models.
//
// Objects: I = 0, X = 1.  1-cells: e = 0 (id_I), u = 1, id_X = 2.
// `comp1` and the tensor on hom(I,I) are both the group Z/2 on {e,u}.
const PUFF_I: ObjId = ObjId(0);
const PUFF_X: ObjId = ObjId(1);
pub const PUFF_E: OneId = OneId(0);
pub const PUFF_U: OneId = OneId(1);
pub const PUFF_IDX: OneId = OneId(2);

fn puff_one_skeleton(b: &mut ModelBuilder) {
    b.objects = 2;
    b.one_cells.push(OneCellData {
        src: PUFF_I,
        dst: PUFF_I,
    }); // e
    b.one_cells.push(OneCellData {
        src: PUFF_I,
        dst: PUFF_I,
    }); // u
    b.one_cells.push(OneCellData {
        src: PUFF_X,
        dst: PUFF_X,
    }); // id_X
    b.id1.push(PUFF_E);
    b.id1.push(PUFF_IDX);
    for a in 0..2u32 {
        for c in 0..2u32 {
            b.comp1.push((OneId(a), OneId(c), OneId(a ^ c)));
        }
    }
    b.comp1.push((PUFF_IDX, PUFF_IDX, PUFF_IDX));
    b.tensor_obj.push((PUFF_I, PUFF_I, PUFF_I));
    b.tensor_obj.push((PUFF_I, PUFF_X, PUFF_X));
    b.tensor_obj.push((PUFF_X, PUFF_I, PUFF_X));
    b.tensor_obj.push((PUFF_X, PUFF_X, PUFF_X));
    for a in 0..2u32 {
        for c in 0..2u32 {
            b.tensor1.push((OneId(a), OneId(c), OneId(a ^ c)));
        }
        b.tensor1.push((OneId(a), PUFF_IDX, PUFF_IDX));
        b.tensor1.push((PUFF_IDX, OneId(a), PUFF_IDX));
    }
    b.tensor1.push((PUFF_IDX, PUFF_IDX, PUFF_IDX));
}

/// The puffed unit: hom(I,I) = {e,u} with `u#u = e`, all 2-cells identities.
pub fn z2p() -> TwoCategoryModel {
    let mut b = ModelBuilder::new("z2p");
    puff_one_skeleton(&mut b);
    for f in 0..3u32 {
        b.two_cells.push(TwoCellData {
            src: OneId(f),
            dst: OneId(f),
        });
        b.id2.push(TwoId(f));
        b.vcomp.push((TwoId(f), TwoId(f), TwoId(f)));
    }
    for a in 0..2u32 {
        for c in 0..2u32 {
            b.hcomp.push((TwoId(a), TwoId(c), TwoId(a ^ c)));
            b.tensor2.push((TwoId(a), TwoId(c), TwoId(a ^ c)));
        }
        b.tensor2.push((TwoId(a), TwoId(2), TwoId(2)));
        b.tensor2.push((TwoId(2), TwoId(a), TwoId(2)));
    }
    b.hcomp.push((TwoId(2), TwoId(2), TwoId(2)));
    b.tensor2.push((TwoId(2), TwoId(2), TwoId(2)));
    b.finish().expect("z2p builds")
}

/// `Z/n`-graded puff: `Hom(a,b) ≅ Z/n` for `a,b ∈ {e,u}`; vertical and
/// horizontal composition and the tensor all add labels.  `graded_puff(2)`
/// is the shipped `zg` model.
pub fn graded_puff(n: u32) -> TwoCategoryModel {
    assert!(n >= 1, "graded_puff needs n >= 1");
    let name = if n == 2 {
        String::from("zg")
    } else {
        format!("zg{n}")
    };
    let mut b = ModelBuilder::new(&name);
    puff_one_skeleton(&mut b);
    // hom(I,I) 2-cells: id (a*2+b)*n + label, then id2(id_X) last
    let cell = |a: u32, c: u32, k: u32| TwoId((a * 2 + c) * n + (k % n));
    let idx_cell = TwoId(4 * n);
    for a in 0..2u32 {
        for c in 0..2u32 {
            for _label in 0..n {
                b.two_cells.push(TwoCellData {
                    src: OneId(a),
                    dst: OneId(c),
                });
            }
        }
    }
    b.two_cells.push(TwoCellData {
        src: PUFF_IDX,
        dst: PUFF_IDX,
    });
    b.id2.push(cell(0, 0, 0));
    b.id2.push(cell(1, 1, 0));
    b.id2.push(idx_cell);
    for a in 0..2u32 {
        for c in 0..2u32 {
            for k in 0..n {
                // vertical: labels add along a1 ⇒ a2 ⇒ a3
                for c2 in 0..2u32 {
                    for l in 0..n {
                        b.vcomp
                            .push((cell(a, c, k), cell(c, c2, l), cell(a, c2, (k + l) % n)));
                    }
                }
                // horizontal and tensor: 1-cell parts multiply, labels add
                for a2 in 0..2u32 {
                    for c2 in 0..2u32 {
                        for l in 0..n {
                            b.hcomp.push((
                                cell(a, c, k),
                                cell(a2, c2, l),
                                cell(a ^ a2, c ^ c2, (k + l) % n),
                            ));
                            b.tensor2.push((
                                cell(a, c, k),
                                cell(a2, c2, l),
                                cell(a ^ a2, c ^ c2, (k + l) % n),
                            ));
                        }
                    }
                }
                b.tensor2.push((cell(a, c, k), idx_cell, idx_cell));
                b.tensor2.push((idx_cell, cell(a, c, k), idx_cell));
            }
        }
    }
    b.vcomp.push((idx_cell, idx_cell, idx_cell));
    b.hcomp.push((idx_cell, idx_cell, idx_cell));
    b.tensor2.push((idx_cell, idx_cell, idx_cell));
    b.finish().expect("graded puff builds")
}

/// The `Z/2`-graded puff.
pub fn zg() -> TwoCategoryModel {
    graded_puff(2)
}

/// Look up a `graded_puff(n)` 2-cell by boundary and label.
pub fn graded_cell(n: u32, src: OneId, dst: OneId, label: u32) -> TwoId {
    assert!(src.0 < 2 && dst.0 < 2, "graded cells live in hom(I,I)");
    TwoId((src.0 * 2 + dst.0) * n + (label % n))
}

/// Label of a `graded_puff(n)` 2-cell in hom(I,I), if it lives there.
pub fn graded_label(n: u32, c: TwoId) -> Option<u32> {
    if c.0 < 4 * n {
        Some(c.0 % n)
    } else {
        None
    }
}

/// Chaotic puff: exactly one 2-cell between every ordered pair of 1-cells in
/// hom(I,I), so every pasting diagram there commutes.
pub fn chp() -> TwoCategoryModel {
    let mut b = ModelBuilder::new("chp");
    puff_one_skeleton(&mut b);
    let cell = |a: u32, c: u32| TwoId(a * 2 + c);
    let idx_cell = TwoId(4);
    for a in 0..2u32 {
        for c in 0..2u32 {
            b.two_cells.push(TwoCellData {
                src: OneId(a),
                dst: OneId(c),
            });
        }
    }
    b.two_cells.push(TwoCellData {
        src: PUFF_IDX,
        dst: PUFF_IDX,
    });
    b.id2.push(cell(0, 0));
    b.id2.push(cell(1, 1));
    b.id2.push(idx_cell);
    for a in 0..2u32 {
        for c in 0..2u32 {
            for c2 in 0..2u32 {
                b.vcomp.push((cell(a, c), cell(c, c2), cell(a, c2)));
            }
            for a2 in 0..2u32 {
                for c2 in 0..2u32 {
                    b.hcomp
                        .push((cell(a, c), cell(a2, c2), cell(a ^ a2, c ^ c2)));
                    b.tensor2
                        .push((cell(a, c), cell(a2, c2), cell(a ^ a2, c ^ c2)));
                }
            }
            b.tensor2.push((cell(a, c), idx_cell, idx_cell));
            b.tensor2.push((idx_cell, cell(a, c), idx_cell));
        }
    }
    b.vcomp.push((idx_cell, idx_cell, idx_cell));
    b.hcomp.push((idx_cell, idx_cell, idx_cell));
    b.tensor2.push((idx_cell, idx_cell, idx_cell));
    b.finish().expect("chp builds")
}

/// Puff extended by an absorbing non-invertible 1-cell `z` in hom(I,I)
/// (`z # anything = z`, only the identity 2-cell on `z`).  Used as a test bed
/// for non-equi-arrow edge cases; `z` is a pseudo-idempotent morphism carrier
/// that fails every cancellability characterization.
pub fn z2p_zero() -> TwoCategoryModel {
    let mut b = ModelBuilder::new("z2p-zero");
    b.objects = 2;
    // 1-cells: e=0, u=1, z=2 in hom(I,I); id_X=3
    for _ in 0..3 {
        b.one_cells.push(OneCellData {
            src: PUFF_I,
            dst: PUFF_I,
        });
    }
    b.one_cells.push(OneCellData {
        src: PUFF_X,
        dst: PUFF_X,
    });
    b.id1.push(OneId(0));
    b.id1.push(OneId(3));
    // {e,u,z}: Z/2 with absorbing zero z
    let mul = |a: u32, c: u32| if a == 2 || c == 2 { 2 } else { a ^ c };
    for a in 0..3u32 {
        for c in 0..3u32 {
            b.comp1.push((OneId(a), OneId(c), OneId(mul(a, c))));
        }
    }
    b.comp1.push((OneId(3), OneId(3), OneId(3)));
    b.tensor_obj.push((PUFF_I, PUFF_I, PUFF_I));
    b.tensor_obj.push((PUFF_I, PUFF_X, PUFF_X));
    b.tensor_obj.push((PUFF_X, PUFF_I, PUFF_X));
    b.tensor_obj.push((PUFF_X, PUFF_X, PUFF_X));
    for a in 0..3u32 {
        for c in 0..3u32 {
            b.tensor1.push((OneId(a), OneId(c), OneId(mul(a, c))));
        }
        b.tensor1.push((OneId(a), OneId(3), OneId(3)));
        b.tensor1.push((OneId(3), OneId(a), OneId(3)));
    }
    b.tensor1.push((OneId(3), OneId(3), OneId(3)));
    for f in 0..4u32 {
        b.two_cells.push(TwoCellData {
            src: OneId(f),
            dst: OneId(f),
        });
        b.id2.push(TwoId(f));
        b.vcomp.push((TwoId(f), TwoId(f), TwoId(f)));
    }
    for a in 0..3u32 {
        for c in 0..3u32 {
            b.hcomp.push((TwoId(a), TwoId(c), TwoId(mul(a, c))));
            b.tensor2.push((TwoId(a), TwoId(c), TwoId(mul(a, c))));
        }
        b.tensor2.push((TwoId(a), TwoId(3), TwoId(3)));
        b.tensor2.push((TwoId(3), TwoId(a), TwoId(3)));
    }
    b.hcomp.push((TwoId(3), TwoId(3), TwoId(3)));
    b.tensor2.push((TwoId(3), TwoId(3), TwoId(3)));
    b.finish().expect("z2p_zero builds")
}

/// Two objects with a constant tensor; has an idempotent object but no
/// cancellable one, hence no units at all.
pub fn no_unit_model() -> TwoCategoryModel {
    discrete_from_table("no-unit", 2, &[(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)])
        .expect("constant table is associative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::validate_model;

    #[test]
    fn z2p_hom_ii_has_two_cells_each_dimension() {
        let m = z2p();
        assert_eq!(m.hom1(ObjId(0), ObjId(0)).len(), 2);
        let two: usize = m
            .two_cells()
            .filter(|&c| m.src1(m.src2(c)) == ObjId(0) && m.dst1(m.src2(c)) == ObjId(0))
            .count();
        assert_eq!(two, 2);
    }

    #[test]
    fn graded_layout_helpers_agree_with_tables() {
        for n in [2, 3, 5] {
            let m = graded_puff(n);
            assert!(validate_model(&m).is_clean());
            for a in 0..2 {
                for b in 0..2 {
                    for k in 0..n {
                        let c = graded_cell(n, OneId(a), OneId(b), k);
                        assert_eq!(m.src2(c), OneId(a));
                        assert_eq!(m.dst2(c), OneId(b));
                        assert_eq!(graded_label(n, c), Some(k));
                    }
                }
            }
            // labels add under vertical composition
            let c = graded_cell(n, PUFF_E, PUFF_U, 1);
            let d = graded_cell(n, PUFF_U, PUFF_E, 1);
            assert_eq!(graded_label(n, m.vc(c, d).unwrap()), Some(2 % n));
        }
    }

    #[test]
    fn monoid_generator_rejects_non_associative_tables() {
        // x*y = min(x+y, 2) is associative; x*y = |x-y| is not
        let ok: Vec<(usize, usize, usize)> = (0..3usize)
            .flat_map(|a| (0..3usize).map(move |b| (a, b, usize::min(a + b, 2))))
            .collect();
        assert!(monoid_model("m", 3, &ok).is_ok());
        let bad: Vec<(usize, usize, usize)> = (0..3usize)
            .flat_map(|a| (0..3usize).map(move |b| (a, b, a.abs_diff(b))))
            .collect();
        assert!(matches!(
            monoid_model("m", 3, &bad),
            Err(GenError::InvalidSpec(_))
        ));
    }

    #[test]
    fn generators_are_deterministic() {
        let a = zg();
        let b = zg();
        assert_eq!(a.one_cells().count(), b.one_cells().count());
        for f in a.one_cells() {
            assert_eq!(a.one_data(f), b.one_data(f));
        }
        for c in a.two_cells() {
            assert_eq!(a.two_data(c), b.two_data(c));
        }
    }
}
