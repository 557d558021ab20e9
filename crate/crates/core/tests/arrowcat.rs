//! The arrow 2-category: construction, validation, unit lifting, and the
//! two-route semi-monoid-map check.

use twocat_core::arrowcat::{
    build_arrow_model, lift_unit, verify_theorem_b_in, ArrowError, SizeBudget,
};
use twocat_core::kernel::validate_model;
use twocat_core::models::{self};
use twocat_core::units::{self, UnitMorphism};
use twocat_core::{ObjId, OneId};

#[test]
fn m3_arrow_model_is_three_identity_objects() {
    let m = models::m3();
    let am = build_arrow_model(&m, &SizeBudget::default()).unwrap();
    assert_eq!(am.model.object_count(), 3);
    assert_eq!(am.model.one_cell_count(), 3);
    assert_eq!(am.model.two_cell_count(), 3);
    assert!(validate_model(&am.model).is_clean());
}

#[test]
fn arrow_models_validate() {
    for m in [models::z2p(), models::zg(), models::chp()] {
        let am = build_arrow_model(&m, &SizeBudget::default()).unwrap();
        assert!(validate_model(&am.model).is_clean(), "{}", am.model.name);
    }
}

#[test]
fn rebuild_is_deterministic() {
    let m = models::zg();
    let a = build_arrow_model(&m, &SizeBudget::default()).unwrap();
    let b = build_arrow_model(&m, &SizeBudget::default()).unwrap();
    assert_eq!(a.squares, b.squares);
    assert_eq!(a.cylinders, b.cylinders);
}

#[test]
fn budget_is_enforced() {
    let m = models::zg();
    let tight = SizeBudget {
        max_objects: 64,
        max_one_cells: 1024,
        max_two_cells: 100,
    };
    assert!(matches!(
        build_arrow_model(&m, &tight),
        Err(ArrowError::BudgetExceeded {
            dimension: "2-cells",
            ..
        })
    ));
}

#[test]
fn lifted_unit_is_certified_inside_the_arrow_model() {
    let m = models::zg();
    let am = build_arrow_model(&m, &SizeBudget::default()).unwrap();
    let us = units::find_unit_objects(&m);
    for ua in &us {
        for ub in &us {
            for mor in units::enumerate_unit_morphisms(&m, ua, ub) {
                let lifted = lift_unit(&m, &am, &mor).unwrap();
                // cancellability and the structure-map witness were re-proved
                // inside the arrow model; additionally its constraints exist
                let pack = units::synth_constraints(&am.model, &lifted, 0).unwrap();
                assert!(units::verify_theorem_a(&am.model, &lifted, &pack)
                    .unwrap()
                    .ok());
            }
        }
    }
}

#[test]
fn non_equi_component_is_rejected() {
    let m = models::z2p_zero();
    let am = build_arrow_model(&m, &SizeBudget::default()).unwrap();
    let u0 = units::certify_unit(&m, ObjId(0), OneId(0)).unwrap();
    let z = OneId(2);
    let fake = UnitMorphism {
        src_obj: u0.obj,
        src_alpha: u0.alpha,
        dst_obj: u0.obj,
        dst_alpha: u0.alpha,
        arrow: z,
        square: m.id2of(z),
    };
    assert!(lift_unit(&m, &am, &fake).is_err());
}

#[test]
fn theorem_b_both_routes_everywhere() {
    for m in [models::z2p(), models::zg()] {
        let am = build_arrow_model(&m, &SizeBudget::default()).unwrap();
        let us = units::find_unit_objects(&m);
        let packs: Vec<_> = us
            .iter()
            .map(|u| units::synth_constraints(&m, u, 0).unwrap())
            .collect();
        for (a, ua) in us.iter().enumerate() {
            for (b, ub) in us.iter().enumerate() {
                for mor in units::enumerate_unit_morphisms(&m, ua, ub) {
                    let rep = verify_theorem_b_in(&m, &am, &mor, &packs[a], &packs[b], 0).unwrap();
                    assert!(rep.direct && rep.lifted_matches, "{}: {a}→{b}", m.name);
                }
            }
        }
    }
}

#[test]
fn theorem_b_projection_step_is_checked_literally() {
    // the projections of the lifted associator are the base associators
    let m = models::zg();
    let am = build_arrow_model(&m, &SizeBudget::default()).unwrap();
    let us = units::find_unit_objects(&m);
    let packs: Vec<_> = us
        .iter()
        .map(|u| units::synth_constraints(&m, u, 0).unwrap())
        .collect();
    let mor = units::enumerate_unit_morphisms(&m, &us[0], &us[1])[0];
    let lifted = lift_unit(&m, &am, &mor).unwrap();
    let lifted_pack = units::synth_constraints(&am.model, &lifted, 7).unwrap();
    let cyl = am.cylinder_of(lifted_pack.assoc);
    assert_eq!(cyl.m0, packs[0].assoc);
    assert_eq!(cyl.m1, packs[1].assoc);
}

#[test]
fn theorem_b_negative_control_twisted_end_associator() {
    use twocat_core::models::graded_cell;
    let m = models::zg();
    let us = units::find_unit_objects(&m);
    let packs: Vec<_> = us
        .iter()
        .map(|u| units::synth_constraints(&m, u, 0).unwrap())
        .collect();
    let mor = units::enumerate_unit_morphisms(&m, &us[0], &us[1])[0];
    // twist one end's associator only: the direct compatibility equation fails
    let twisted = m
        .vc(
            packs[1].assoc,
            graded_cell(2, m.dst2(packs[1].assoc), m.dst2(packs[1].assoc), 1),
        )
        .unwrap();
    let eq = units::eq_semimonoid_map_short(
        &m,
        mor.src_alpha,
        packs[0].assoc,
        mor.dst_alpha,
        twisted,
        mor.arrow,
        mor.square,
    )
    .unwrap();
    assert!(!twocat_core::kernel::check_equation(&m, &eq).unwrap());
}
