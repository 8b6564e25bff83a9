//! The transcription catalog: the θ-parameterized presentations and the
//! explicit morphisms, as versioned text files embedded in the crate. The
//! builders in [`crate::presentations`] and [`crate::morphisms`] generate the
//! same objects programmatically; tests assert file and code agree, so a
//! transcription error in either place shows up as a diff against the other.

use crate::morphisms::MorphismCase;

/// One lemma instance with its presentation and morphism transcriptions.
pub struct CatalogEntry {
    pub case: MorphismCase,
    pub rank: u32,
    /// θ parameter names, in the order of the case's θ vector
    pub theta_params: &'static [&'static str],
    pub presentation: Option<&'static str>,
    pub morphism: &'static str,
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            case: MorphismCase::AOdd,
            rank: 3,
            theta_params: &["t0"],
            presentation: Some(include_str!("../catalog/aprime_a3.qpa")),
            morphism: include_str!("../catalog/phi_a3.mor"),
        },
        CatalogEntry {
            case: MorphismCase::AOdd,
            rank: 5,
            theta_params: &["t0"],
            presentation: Some(include_str!("../catalog/aprime_a5.qpa")),
            morphism: include_str!("../catalog/phi_a5.mor"),
        },
        CatalogEntry {
            case: MorphismCase::DEven,
            rank: 4,
            theta_params: &["t0", "t1", "t2", "t3"],
            presentation: Some(include_str!("../catalog/aprime_d4.qpa")),
            morphism: include_str!("../catalog/phi_d4.mor"),
        },
        CatalogEntry {
            case: MorphismCase::DOdd,
            rank: 5,
            theta_params: &["t2", "t3", "t4"],
            presentation: Some(include_str!("../catalog/aprime_d5.qpa")),
            morphism: include_str!("../catalog/phi_d5.mor"),
        },
        CatalogEntry {
            case: MorphismCase::DEven,
            rank: 6,
            theta_params: &["t0", "t1", "t2", "t3", "t4", "t5"],
            presentation: Some(include_str!("../catalog/aprime_d6.qpa")),
            morphism: include_str!("../catalog/phi_d6.mor"),
        },
        CatalogEntry {
            case: MorphismCase::E6,
            rank: 6,
            theta_params: &["t0", "t3"],
            presentation: Some(include_str!("../catalog/aprime_e6.qpa")),
            morphism: include_str!("../catalog/phi_e6.mor"),
        },
        CatalogEntry {
            case: MorphismCase::E7,
            rank: 7,
            theta_params: &["t0", "t1", "t2", "t3", "t4", "t5", "t6"],
            presentation: Some(include_str!("../catalog/aprime_e7.qpa")),
            morphism: include_str!("../catalog/phi_e7.mor"),
        },
        CatalogEntry {
            case: MorphismCase::E8,
            rank: 8,
            theta_params: &["t0", "t1", "t2", "t3", "t4", "t5", "t6", "t7"],
            presentation: Some(include_str!("../catalog/aprime_e8.qpa")),
            morphism: include_str!("../catalog/phi_e8.mor"),
        },
        CatalogEntry {
            case: MorphismCase::Ln,
            rank: 2,
            theta_params: &["t0", "t1"],
            presentation: Some(include_str!("../catalog/aprime_l2.qpa")),
            morphism: include_str!("../catalog/phi_l2.mor"),
        },
        CatalogEntry {
            case: MorphismCase::Ln,
            rank: 3,
            theta_params: &["t0", "t1", "t2"],
            presentation: Some(include_str!("../catalog/aprime_l3.qpa")),
            morphism: include_str!("../catalog/phi_l3.mor"),
        },
        CatalogEntry {
            case: MorphismCase::DEvenCharNot2,
            rank: 4,
            theta_params: &[],
            presentation: None,
            morphism: include_str!("../catalog/phi_d4_charnot2.mor"),
        },
        CatalogEntry {
            case: MorphismCase::DEvenCharNot2,
            rank: 6,
            theta_params: &[],
            presentation: None,
            morphism: include_str!("../catalog/phi_d6_charnot2.mor"),
        },
        CatalogEntry {
            case: MorphismCase::E7CharNot2,
            rank: 7,
            theta_params: &[],
            presentation: None,
            morphism: include_str!("../catalog/phi_e7_charnot2.mor"),
        },
        CatalogEntry {
            case: MorphismCase::E8CharNot2,
            rank: 8,
            theta_params: &[],
            presentation: None,
            morphism: include_str!("../catalog/phi_e8_charnot2.mor"),
        },
        CatalogEntry {
            case: MorphismCase::LnCharNot2,
            rank: 2,
            theta_params: &[],
            presentation: None,
            morphism: include_str!("../catalog/phi_l2_charnot2.mor"),
        },
        CatalogEntry {
            case: MorphismCase::LnCharNot2,
            rank: 3,
            theta_params: &[],
            presentation: None,
            morphism: include_str!("../catalog/phi_l3_charnot2.mor"),
        },
    ]
}

pub fn entry(case: MorphismCase, rank: u32) -> Option<CatalogEntry> {
    entries().into_iter().find(|e| e.case == case && e.rank == rank)
}
