//! The catalog text files and the programmatic builders must define the
//! same presentations and the same morphisms: the ideals must coincide
//! (checked by mutual containment plus equal dimension) and the arrow
//! images must match exactly.

use preproj::catalog;
use preproj::dsl::{self, Params};
use preproj::field::{FieldSpec, Fp, Scalar};
use preproj::morphisms::{catalog_pair, MorphismCase};
use preproj::presentations::a_prime;

const GF3: FieldSpec = FieldSpec::PrimeField(3);

fn theta_values(case: MorphismCase, len: usize) -> Vec<Fp> {
    // nonzero, distinct-ish values; avoid 1+θ = 0 for the degenerate A_3
    let pick = |i: usize| -> i64 {
        if case == MorphismCase::AOdd {
            1
        } else {
            [1i64, 2, 1, 0, 2, 1, 2, 1][i % 8]
        }
    };
    (0..len).map(|i| Fp::from_spec_int(&GF3, pick(i))).collect()
}

#[test]
fn presentation_files_define_the_same_ideals() {
    for e in catalog::entries() {
        let Some(src) = e.presentation else { continue };
        let theta = theta_values(e.case, e.theta_params.len());
        let mut params: Params<Fp> = Params::new();
        for (name, v) in e.theta_params.iter().zip(&theta) {
            params.insert(name.to_string(), v.clone());
        }
        let file = dsl::parse_presentation_file(src, &format!("{:?}-{}", e.case, e.rank))
            .unwrap_or_else(|err| panic!("{:?} rank {}: {err}", e.case, e.rank));
        let from_file = file.bind_over::<Fp>(GF3, &params).unwrap();
        let pc = e.case.proof_case().unwrap();
        let from_code = a_prime(pc, e.rank, &theta, GF3).unwrap();
        let alg_file = from_file.build().unwrap();
        let alg_code = from_code.build().unwrap();
        assert_eq!(
            alg_file.dim(),
            alg_code.dim(),
            "{:?} rank {}: dimensions differ",
            e.case,
            e.rank
        );
        // mutual ideal containment: every relation of one side dies in the
        // other quotient
        for r in &from_code.relations {
            assert!(
                alg_file.normal_form(r).unwrap().is_empty(),
                "{:?} rank {}: code relation not in file ideal",
                e.case,
                e.rank
            );
        }
        for r in &from_file.relations {
            assert!(
                alg_code.normal_form(r).unwrap().is_empty(),
                "{:?} rank {}: file relation not in code ideal",
                e.case,
                e.rank
            );
        }
    }
}

#[test]
fn morphism_files_define_the_same_maps() {
    for e in catalog::entries() {
        let theta = theta_values(e.case, e.theta_params.len());
        let pair = catalog_pair(e.case, e.rank, &theta, GF3)
            .unwrap_or_else(|err| panic!("{:?} rank {}: {err}", e.case, e.rank));
        let mor = dsl::parse_morphism_file(e.morphism)
            .unwrap_or_else(|err| panic!("{:?} rank {}: {err}", e.case, e.rank));
        let mut params: Params<Fp> = Params::new();
        for (name, v) in e.theta_params.iter().zip(&theta) {
            params.insert(name.to_string(), v.clone());
        }
        let quiver = pair.phi.target.quiver().clone();
        assert_eq!(
            mor.arrow_images.len(),
            quiver.arrows.len(),
            "{:?} rank {}: morphism file must give every arrow an image",
            e.case,
            e.rank
        );
        for (arrow_name, expr) in &mor.arrow_images {
            let from_file =
                dsl::parse_element::<Fp>(expr, &quiver, GF3, &params).unwrap_or_else(|err| {
                    panic!("{:?} rank {} arrow {arrow_name}: {err}", e.case, e.rank)
                });
            let id = quiver.arrow_by_name(arrow_name).unwrap().id;
            let from_code = &pair.phi.arrow_images[&id];
            assert_eq!(
                &from_file, from_code,
                "{:?} rank {}: image of {arrow_name} differs",
                e.case, e.rank
            );
        }
    }
}
