mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::*;
use cmtorus::classify::{self, ClassifyOptions, SearchFilters, ThreefoldGroup, TupleKey};
use cmtorus::cmtype::{self, CMFactor};
use cmtorus::groups::{self, CentralInvolution, GroupSpec, Subgroup};
use cmtorus::mtgroup::{self, PairInput, ProjectionStatus};
use cmtorus::Error;

fn options(groups: &[ThreefoldGroup]) -> ClassifyOptions {
    ClassifyOptions {
        groups: groups.to_vec(),
        ..ClassifyOptions::default()
    }
}

#[test]
fn small_threefold_groups_have_no_counterexample() {
    let rep = classify::classify_threefolds(&options(&[ThreefoldGroup::Cyclic6, ThreefoldGroup::Dihedral12]));
    let c6 = &rep.groups[0];
    assert_eq!((c6.subgroups, c6.cm_types, c6.tuples, c6.equal_dims), (1, 8, 64, 40));
    let d12 = &rep.groups[1];
    assert_eq!((d12.subgroups, d12.cm_types, d12.tuples, d12.equal_dims), (6, 48, 2304, 288));
    assert_eq!(rep.violations, 0);
    assert!(rep.records.is_empty());
    for g in &rep.groups {
        assert_eq!(g.primitive_single_dims, [4]);
        assert_eq!(g.nonprimitive_single_dims, [2]);
    }
}

#[test]
fn c2_times_a4_has_no_counterexample() {
    let rep = classify::classify_threefolds(&ClassifyOptions {
        jobs: 4,
        ..options(&[ThreefoldGroup::C2TimesA4])
    });
    let g = &rep.groups[0];
    assert_eq!((g.subgroups, g.cm_types, g.tuples, g.equal_dims), (4, 32, 1024, 184));
    assert_eq!(rep.violations, 0);
    assert_eq!(g.primitive_single_dims, [4]);
}

#[test]
fn classification_does_not_depend_on_job_count() {
    let a = classify::classify_threefolds(&ClassifyOptions {
        full_records: true,
        ..options(&[ThreefoldGroup::Dihedral12])
    });
    let b = classify::classify_threefolds(&ClassifyOptions {
        full_records: true,
        jobs: 3,
        ..options(&[ThreefoldGroup::Dihedral12])
    });
    assert_eq!(a.records, b.records);
    assert_eq!(a.groups, b.groups);
}

#[test]
fn records_revalidate_and_match_the_oracle() {
    let rep = classify::classify_threefolds(&ClassifyOptions {
        full_records: true,
        ..options(&[ThreefoldGroup::Cyclic6, ThreefoldGroup::Dihedral12])
    });
    assert_eq!(rep.records.len(), 64 + 2304);
    for (i, rec) in rep.records.iter().enumerate().step_by(17) {
        let which: ThreefoldGroup = rec.group.parse().unwrap();
        let g = Arc::new(groups::make_group(&which.spec()).unwrap());
        let rho = groups::central_involutions(&g)[0];
        assert!(rec.revalidate(&g, rho).unwrap(), "record {i}");
        let (t1, t2) = rec.cm_types(&g, rho).unwrap();
        let (dim, s1, s2) = oracle_pair(&t1, &t2);
        assert_eq!(rec.dim_mt_product, dim, "record {i}");
        assert_eq!(rec.status_pi1.to_string(), s1, "record {i}");
        assert_eq!(rec.status_pi2.to_string(), s2, "record {i}");
        assert_eq!(rec.violation, rec.dims_equal() && !rec.essentially_equal_after_transport);
    }
}

#[test]
fn symmetry_reduction_reproduces_exhaustive_counts() {
    for which in [ThreefoldGroup::Cyclic6, ThreefoldGroup::Dihedral12, ThreefoldGroup::C2TimesA4] {
        let full = classify::classify_threefolds(&options(&[which]));
        let reduced = classify::classify_threefolds(&ClassifyOptions {
            symmetry_reduction: true,
            ..options(&[which])
        });
        let (f, r) = (&full.groups[0], &reduced.groups[0]);
        assert_eq!((f.tuples, f.equal_dims, f.violations), (r.tuples, r.equal_dims, r.violations));
        assert!(r.analyses < f.analyses, "{which}");
    }
}

fn every_tuple(spec: GroupSpec) -> (groups::FiniteGroup, CentralInvolution, Vec<TupleKey>) {
    let g = Arc::new(groups::make_group(&spec).unwrap());
    let rho = groups::central_involutions(&g)[0];
    let s = Setting {
        name: "",
        group: Arc::clone(&g),
        rho,
    };
    let types = all_types(&s);
    let mut keys = Vec::new();
    for a in &types {
        for b in &types {
            keys.push(TupleKey {
                h1: a.subgroup().mask(),
                lift1: cmtype::lift(a),
                h2: b.subgroup().mask(),
                lift2: cmtype::lift(b),
            });
        }
    }
    ((*g).clone(), rho, keys)
}

#[test]
fn reduction_orbits_cover_every_tuple_exactly_once() {
    for spec in [GroupSpec::Cyclic { n: 6 }, GroupSpec::Cyclic { n: 8 }, GroupSpec::Dihedral { n: 4 }] {
        let (g, rho, keys) = every_tuple(spec);
        let reps = classify::reduce_tuples(&g, rho, &keys);
        let total: usize = reps.iter().map(|r| r.1).sum();
        assert_eq!(total, keys.len());
        let mut covered = BTreeSet::new();
        for (rep, size) in &reps {
            let orbit = classify::tuple_orbit(&g, rho, *rep);
            assert_eq!(orbit.len(), *size);
            assert_eq!(orbit.iter().next(), Some(rep), "representative is the orbit minimum");
            for k in orbit {
                assert!(covered.insert(k), "orbits are disjoint");
            }
        }
        let all: BTreeSet<TupleKey> = keys.into_iter().collect();
        assert_eq!(covered, all);
    }
}

fn cyclic_setting(n: usize) -> (Arc<groups::FiniteGroup>, CentralInvolution, Subgroup) {
    let g = Arc::new(groups::make_group(&GroupSpec::Cyclic { n }).unwrap());
    let rho = CentralInvolution::new(&g, n / 2).unwrap();
    let h = Subgroup::trivial(&g);
    (g, rho, h)
}

fn search_finds(n: usize, phi1: &[usize], phi2: &[usize]) {
    let (g, rho, h) = cyclic_setting(n);
    let found = classify::search_pairs(
        &g,
        rho,
        &h,
        &h,
        ProjectionStatus::Iso,
        SearchFilters {
            primitive: true,
            essentially_different: true,
        },
        2,
    )
    .unwrap();
    assert!(!found.is_empty());
    for r in &found {
        assert!(r.primitive1 && r.primitive2);
        assert!(!r.essentially_equal_after_transport);
        assert_eq!((r.status_pi1, r.status_pi2), (ProjectionStatus::Iso, ProjectionStatus::Iso));
    }
    assert!(
        found.iter().any(|r| r.phi1 == phi1 && r.phi2 == phi2),
        "expected pair missing among {} results",
        found.len()
    );
}

#[test]
fn abelian_surfaces_with_iso_projections_exist() {
    search_finds(8, &[2, 3, 4, 5], &[0, 2, 5, 7]);
}

#[test]
fn abelian_threefolds_with_iso_projections_exist() {
    search_finds(12, &[0, 1, 2, 9, 10, 11], &[0, 2, 5, 7, 9, 10]);
}

#[test]
fn search_rejects_subgroup_containing_rho() {
    let (g, rho, _) = cyclic_setting(8);
    let h = Subgroup::new(&g, &[0, 4]).unwrap();
    let err = classify::search_pairs(&g, rho, &h, &h, ProjectionStatus::Iso, SearchFilters::default(), 1);
    assert_eq!(err.unwrap_err(), Error::RhoInSubgroup(4));
}

#[test]
fn search_isogeny_mode_contains_iso_mode() {
    let (g, rho, h) = cyclic_setting(8);
    let run = |mode| classify::search_pairs(&g, rho, &h, &h, mode, SearchFilters::default(), 1).unwrap();
    let iso = run(ProjectionStatus::Iso);
    let isog = run(ProjectionStatus::Isogeny);
    assert!(iso.len() <= isog.len());
    assert!(iso.iter().all(|r| isog.contains(r)));
}

#[test]
fn family_pairs_have_equal_dimensions() {
    for g in [5, 7, 8, 9, 10, 11, 12, 13, 14, 15] {
        let f = classify::family_types(g).unwrap();
        assert!(cmtype::is_primitive(&f.phi1), "g = {g}");
        assert!(cmtype::is_primitive(&f.phi2), "g = {g}");
        assert_eq!(f.phi1.dimension(), g);
        let (witness, same) = classify::isogenous_after_transport(&f.phi1, &f.phi2);
        assert!(witness.is_none() || !same, "g = {g}: essentially equal");
        let p = PairInput::new(CMFactor::new(f.phi1.clone(), "A1"), CMFactor::new(f.phi2.clone(), "A2")).unwrap();
        let a = mtgroup::pair_analysis(&p);
        assert!(a.dims_equal(), "g = {g}: {} {} {}", a.dim_mt_1, a.dim_mt_2, a.dim_mt_product);
        assert_eq!(oracle_pair_dim(&f.phi1, &f.phi2), a.dim_mt_product, "g = {g}");
    }
}

#[test]
fn family_rejects_unsupported_g() {
    for g in [1, 2, 3, 4, 6] {
        assert_eq!(classify::family_types(g).unwrap_err(), Error::UnsupportedG(g));
    }
}

#[test]
fn shioda_pair_against_reference_values() {
    let rep = classify::verify_shioda();
    assert!(rep.all_passed(), "{:#?}", rep.assertions);
    assert_eq!(to_mat(&rep.matrix), classify::SHIODA_MATRIX.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect::<Mat>());
    assert_eq!(rep.reflex_type, ["σ1", "σ5", "σ7"]);
    assert_eq!(rep.status_pi1, ProjectionStatus::Iso);
    assert_eq!(rep.dim_mt_product, 4);
    let input = classify::shioda_input();
    let (dim, s1, _) = oracle_pair(&input.factor1.cm_type, &input.factor2.cm_type);
    assert_eq!((dim, s1), (4, "ISO"));
}
