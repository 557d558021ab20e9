//! Equi-arrow detection, cancellability, division, and mates.

use twocat_core::equivalence::{
    divide_tensor, divide_whisker, find_pseudo_inverse, is_cancellable, is_equi_arrow,
    is_fully_faithful, mate, tensor_hom_functor, triangle_equations_hold, DivisionError,
    HomFunctorTable, Side, WhiskerEnd,
};
use twocat_core::models::{self, graded_cell, PUFF_E, PUFF_U};
use twocat_core::units;
use twocat_core::{ObjId, OneId};

const I: ObjId = ObjId(0);
const X: ObjId = ObjId(1);

#[test]
fn identities_are_equi_arrows() {
    let m = models::m3();
    for x in m.objects() {
        let w = find_pseudo_inverse(&m, m.id1of(x)).expect("identity has a pseudo-inverse");
        assert_eq!(w.g, m.id1of(x));
        assert_eq!(w.eta, m.id2of(m.id1of(x)));
        assert_eq!(w.eps, m.id2of(m.id1of(x)));
    }
}

#[test]
fn involution_is_its_own_pseudo_inverse() {
    let m = models::z2p();
    let w = find_pseudo_inverse(&m, PUFF_U).expect("u is equi");
    assert_eq!(w.g, PUFF_U);
    assert!(triangle_equations_hold(&m, &w));
}

#[test]
fn empty_reverse_hom_means_no_inverse() {
    let m = models::z2p_zero();
    // z composes to z with everything, so nothing brings it back to id
    assert!(find_pseudo_inverse(&m, OneId(2)).is_none());
    assert!(!is_equi_arrow(&m, OneId(2)));
}

#[test]
fn witnesses_satisfy_triangles_on_all_shipped_models() {
    for m in [
        models::m3(),
        models::z2p(),
        models::zg(),
        models::chp(),
        models::graded_puff(3),
    ] {
        for f in m.one_cells() {
            if let Some(w) = find_pseudo_inverse(&m, f) {
                assert!(triangle_equations_hold(&m, &w), "{} {f:?}", m.name);
            }
        }
    }
}

#[test]
fn tensor_of_equi_arrows_is_equi() {
    for m in [
        models::z2p(),
        models::zg(),
        models::chp(),
        models::z2p_zero(),
    ] {
        for f in m.one_cells() {
            for g in m.one_cells() {
                if is_equi_arrow(&m, f) && is_equi_arrow(&m, g) {
                    assert!(is_equi_arrow(&m, m.t1(f, g)), "{}: {f:?}⊗{g:?}", m.name);
                }
            }
        }
    }
}

#[test]
fn equi_stable_under_identity_composition_and_unit_lambda_tensor() {
    let m = models::zg();
    let u = units::find_unit_objects(&m).into_iter().next().unwrap();
    let pack = units::synth_constraints(&m, &u, 0).unwrap();
    for f in m.one_cells() {
        let e1 = is_equi_arrow(&m, f);
        assert_eq!(e1, is_equi_arrow(&m, m.c1(m.id1of(m.src1(f)), f).unwrap()));
        if e1 {
            let lam = pack.lambda[m.src1(f).0 as usize];
            assert!(is_equi_arrow(&m, m.t1(lam, f)));
        }
    }
}

#[test]
fn unit_hom_functor_is_identity_table() {
    let m = models::m3();
    let t = tensor_hom_functor(&m, I, Side::Left, ObjId(1), ObjId(1));
    assert!(t.is_well_formed(&m));
    for (&f, &tf) in &t.one_map {
        assert_eq!(f, tf);
    }
    assert!(is_fully_faithful(&m, &t));

    let m = models::z2p();
    let t = tensor_hom_functor(&m, I, Side::Left, X, X);
    for (&f, &tf) in &t.one_map {
        assert_eq!(f, tf);
    }
    assert!(is_fully_faithful(&m, &t));
}

#[test]
fn absorbing_object_collapses_hom_and_fails_fullness() {
    let m = models::z2p();
    let t = tensor_hom_functor(&m, X, Side::Left, I, I);
    // object map {e, u} → {id_X} is not injective
    let mut images: Vec<OneId> = t.one_map.values().copied().collect();
    images.sort_unstable();
    images.dedup();
    assert_eq!(images.len(), 1);
    assert!(!is_fully_faithful(&m, &t));
    assert!(!is_cancellable(&m, X));
}

#[test]
fn label_collapsing_functor_is_not_faithful() {
    let m = models::zg();
    // identity on 1-cells, collapse every label to 0: a functor (labels add),
    // surjective on objects, but two cells per hom-set land on one
    let mut one_map = std::collections::BTreeMap::new();
    let mut two_map = std::collections::BTreeMap::new();
    for f in [PUFF_E, PUFF_U] {
        one_map.insert(f, f);
        for g in [PUFF_E, PUFF_U] {
            for label in 0..2 {
                two_map.insert(graded_cell(2, f, g, label), graded_cell(2, f, g, 0));
            }
        }
    }
    let t = HomFunctorTable {
        src_hom: (I, I),
        dst_hom: (I, I),
        one_map,
        two_map,
    };
    assert!(t.is_well_formed(&m));
    assert!(!is_fully_faithful(&m, &t));
}

#[test]
fn cancellable_objects_of_shipped_models() {
    assert!(is_cancellable(&models::m3(), I));
    assert!(is_cancellable(&models::zg(), I));
    assert!(is_cancellable(&models::chp(), I));
    assert!(!is_cancellable(&models::zg(), X));
    assert!(!is_cancellable(&models::chp(), X));
}

#[test]
fn divide_tensor_round_trips() {
    let m = models::zg();
    for d in m.two_cells() {
        let c = m.tl_obj(I, d);
        assert_eq!(divide_tensor(&m, I, Side::Left, c).unwrap(), d);
        let c = m.tr_obj(d, I);
        assert_eq!(divide_tensor(&m, I, Side::Right, c).unwrap(), d);
    }
}

#[test]
fn divide_tensor_yields_comparison_cell() {
    // dividing L_I . (L'_I)⁻¹ by the unit recovers the comparison cell, which
    // for two constraint choices differing only by label is the label-1 cell
    let m = models::zg();
    let u = units::certify_unit(&m, I, PUFF_U).unwrap();
    let (lefts, _) = units::constraint_candidates(&m, &u, I);
    let with_lambda_u: Vec<_> = lefts.into_iter().filter(|c| c.0 == PUFF_U).collect();
    assert_eq!(with_lambda_u.len(), 2);
    let (l0, l1) = (with_lambda_u[0].1, with_lambda_u[1].1);
    let composite = m.vc(l0, m.inverse2(l1).unwrap()).unwrap();
    let uleft = divide_tensor(&m, I, Side::Left, composite).unwrap();
    assert_eq!(uleft, graded_cell(2, PUFF_U, PUFF_U, 1));
    assert_ne!(uleft, m.id2of(PUFF_U));
}

#[test]
fn divide_by_non_cancellable_object_reports_no_preimage() {
    let m = models::z2p();
    // hom(I,I) has two 1-cells but X⊗- collapses them; a cell between the
    // collapsed pair has no preimage under tensoring a 2-cell from hom(e,u)
    let c = m.id2of(OneId(2)); // id2(id_X) = X⊗(anything in hom(e,u)) has no preimage with that boundary
    let err = divide_tensor(&m, X, Side::Left, c);
    // every preimage candidate d satisfies X⊗d = id2(id_X); uniqueness fails instead
    assert!(matches!(err, Err(DivisionError::MultiplePreimages { .. })));
}

#[test]
fn divide_whisker_round_trips_and_solves_the_associator_equation() {
    let m = models::zg();
    let e = PUFF_U; // an equi-arrow
    for d in m.hom2(PUFF_E, PUFF_U) {
        let c = m.hc(m.id2of(e), d).unwrap();
        assert_eq!(divide_whisker(&m, e, WhiskerEnd::Pre, c).unwrap(), d);
    }
    // division by a non-equi arrow is ambiguous
    let m0 = models::z2p_zero();
    let z = OneId(2);
    let c = m0.hc(m0.id2of(z), m0.id2of(PUFF_E)).unwrap();
    assert!(matches!(
        divide_whisker(&m0, z, WhiskerEnd::Pre, c),
        Err(DivisionError::MultiplePreimages { .. })
    ));
}

#[test]
fn mate_of_identity_square_is_identity_like() {
    let m = models::zg();
    let u = units::certify_unit(&m, I, PUFF_E).unwrap();
    let pack = units::synth_constraints(&m, &u, 0).unwrap();
    let assoc_sq = units::square_assoc(&m, u.alpha, pack.assoc).unwrap();
    let w = find_pseudo_inverse(&m, PUFF_E).unwrap();
    // identity morphism square on (I, e)
    let fill = m.id2of(PUFF_E);
    let (g, mate_cell) = mate(&m, &w, PUFF_E, assoc_sq, PUFF_E, assoc_sq, fill).unwrap();
    assert_eq!(g, PUFF_E);
    assert!(m.is_invertible2(mate_cell));
}

#[test]
fn mate_of_unit_morphism_square_passes_cube_check() {
    let m = models::zg();
    let us = units::find_unit_objects(&m);
    let packs: Vec<_> = us
        .iter()
        .map(|u| units::synth_constraints(&m, u, 0).unwrap())
        .collect();
    let mor = units::enumerate_unit_morphisms(&m, &us[0], &us[1])[0];
    let assoc_sq_0 = units::square_assoc(&m, us[0].alpha, packs[0].assoc).unwrap();
    let assoc_sq_1 = units::square_assoc(&m, us[1].alpha, packs[1].assoc).unwrap();
    let w = find_pseudo_inverse(&m, mor.arrow).unwrap();
    let (_, mate_cell) = mate(
        &m,
        &w,
        us[0].alpha,
        assoc_sq_0,
        us[1].alpha,
        assoc_sq_1,
        mor.square,
    )
    .unwrap();
    assert!(m.is_invertible2(mate_cell));
}
