//! Cross-module properties at oracle scale: the laws the pipeline's
//! correctness rests on, each checked against brute force on small groups.

mod common;

use proptest::prelude::*;

use twoclosure::action::quotient_action;
use twoclosure::certificate::lift_kx;
use twoclosure::closure::two_closure_checked;
use twoclosure::flags::maximal_normal_flag;
use twoclosure::majorant::{build_identification, delta_coordinates, majorant_generators};
use twoclosure::orbitals::{brute_force_closure, same_two_orbits, two_orbits};
use twoclosure::sections::sections_of;
use twoclosure::solver::aut_in_group;
use twoclosure::structure::minimal_normal_subgroup;
use twoclosure::zoo::{agl_subgroup, diagonal, generate_zoo, wreath_tower};
use twoclosure::{EquivRelation, Perm, PermGroup};

use common::{enumerate_by_products, same_group};

/// Restriction of a group to section points, for comparing closed sections.
fn section_group_of(ambient: &PermGroup, section: &twoclosure::Section) -> PermGroup {
    let kernel = quotient_action(ambient, &section.e_section).unwrap().kernel;
    let gens: Vec<Perm> = kernel
        .generators()
        .iter()
        .map(|g| {
            section
                .restrict_full_perm(g)
                .expect("kernel preserves the section")
        })
        .collect();
    PermGroup::from_generators(section.group.degree(), gens).unwrap()
}

/// Certificate dichotomy and the generation laws, on every small zoo entry:
/// X_S is nonempty exactly when the closed section is nonsolvable, and then
/// the certificate generates the closed section over the original one.
#[test]
fn certificate_dichotomy_and_generation_laws() {
    let mut nonsolvable_sections = 0;
    for entry in generate_zoo(10).expect("zoo") {
        let report = two_closure_checked(&entry.group, false)
            .unwrap_or_else(|e| panic!("{}: {e}", entry.name));
        let k_group = &report.relative_closure;
        let flag = &report.extended_flag;
        let ov_k = brute_force_closure(k_group).expect("oracle");
        let sections = sections_of(k_group, flag).expect("sections");
        assert_eq!(sections.len(), report.certificates.len());
        for (section, cert) in sections.iter().zip(&report.certificates) {
            let closed_section = section_group_of(&ov_k, section);
            let nonsolvable = !closed_section.is_solvable();
            assert_eq!(
                !cert.x_s.is_empty(),
                nonsolvable,
                "{} section {}: certificate dichotomy violated",
                entry.name,
                section.index
            );
            if nonsolvable {
                nonsolvable_sections += 1;
                // ⟨S, x̄⟩ equals the closed section.
                let generated = section.group.closure_with(&cert.xbar).unwrap();
                assert!(
                    same_group(&generated, &closed_section),
                    "{} section {}: 3-cycles do not generate the closed section",
                    entry.name,
                    section.index
                );
                // ⟨K_{e_S} ∪ X_S⟩ induces the closed section on Ω_S.
                let kernel = quotient_action(k_group, &section.e_section).unwrap().kernel;
                let with_reps = kernel.closure_with(&cert.x_s).unwrap();
                let induced: Vec<Perm> = with_reps
                    .generators()
                    .iter()
                    .map(|g| {
                        section
                            .restrict_full_perm(g)
                            .expect("preserves the section")
                    })
                    .collect();
                let induced_group =
                    PermGroup::from_generators(section.group.degree(), induced).unwrap();
                assert!(
                    same_group(&induced_group, &closed_section),
                    "{} section {}: representatives do not generate the closed section",
                    entry.name,
                    section.index
                );
            }
        }
    }
    assert!(
        nonsolvable_sections > 0,
        "no nonsolvable sections exercised"
    );
}

/// The relative closure is a fixed point: Aut(coloring) ∩ W_F(K) = K.
#[test]
fn relative_closure_is_fixed_point_of_its_own_majorant() {
    for entry in generate_zoo(10).expect("zoo") {
        let report = two_closure_checked(&entry.group, false).unwrap();
        let k_group = &report.relative_closure;
        let flag = &report.extended_flag;
        let id = build_identification(k_group, flag).unwrap();
        let majorant = majorant_generators(k_group, flag, &id).unwrap();
        let coloring = two_orbits(k_group);
        let fixed = aut_in_group(&coloring, &majorant).unwrap();
        assert!(
            same_group(&fixed, k_group),
            "{}: relative closure moved under its own majorant",
            entry.name
        );
    }
}

/// Quotient compatibility: the induced groups of G and of its closure on a
/// flag member's classes have the same 2-orbits.
#[test]
fn quotient_actions_of_group_and_closure_are_two_equivalent() {
    for entry in generate_zoo(9).expect("zoo") {
        let closure = brute_force_closure(&entry.group).unwrap();
        let flag = maximal_normal_flag(&entry.group).unwrap();
        for member in flag.members() {
            let a = quotient_action(&entry.group, member).unwrap().image;
            let b = quotient_action(&closure, member).unwrap().image;
            assert!(
                same_two_orbits(&two_orbits(&a), &two_orbits(&b)).unwrap(),
                "{}: quotient actions are not 2-equivalent",
                entry.name
            );
        }
    }
}

/// Certificate lifts satisfy the standard-representation laws: trivial on
/// the quotient above the section, the section permutation in the middle,
/// identity coordinates below.
#[test]
fn certificate_lifts_have_identity_lower_coordinates() {
    // A three-level group so the middle section has structure below it.
    let g = wreath_tower(&[2, 2, 2]);
    let flag = maximal_normal_flag(&g).unwrap();
    let id = build_identification(&g, &flag).unwrap();
    let majorant = majorant_generators(&g, &flag, &id).unwrap();
    let sections = sections_of(&g, &flag).unwrap();
    let mut exercised = 0;
    for section in sections.iter().filter(|s| s.index >= 2) {
        for local in section.group.generators() {
            let lifted = lift_kx(local, section, &id).unwrap();
            assert!(majorant.contains(&lifted).unwrap());
            for level in 1..section.index {
                let rep = delta_coordinates(&lifted, level, &majorant, &id).unwrap();
                assert!(
                    rep.coords.iter().all(|(_, p)| p.is_identity()),
                    "lower coordinates must be identities"
                );
            }
            let at_level = delta_coordinates(&lifted, section.index, &majorant, &id).unwrap();
            assert!(at_level.residual.is_identity() || section.index < flag.length());
            exercised += 1;
        }
    }
    assert!(exercised > 0);
}

/// Idempotence: a supersolvable 2-closed output closes to itself; otherwise
/// the oracle agrees that the output is closed.
#[test]
fn closure_is_idempotent_at_oracle_scale() {
    use twoclosure::structure::is_supersolvable;
    for entry in generate_zoo(9).expect("zoo") {
        let report = two_closure_checked(&entry.group, false).unwrap();
        if is_supersolvable(&report.output).unwrap() {
            let again = two_closure_checked(&report.output, false).unwrap();
            assert!(
                same_group(&again.output, &report.output),
                "{}: closure is not idempotent",
                entry.name
            );
        } else {
            let oracle = brute_force_closure(&report.output).unwrap();
            assert!(
                same_group(&oracle, &report.output),
                "{}: output is not 2-closed",
                entry.name
            );
        }
    }
}

/// Minimality witness: for every prime-order element of a minimal normal
/// subgroup, its normal closure is the whole subgroup.
#[test]
fn minimal_normal_subgroups_are_minimal_by_witness() {
    for entry in generate_zoo(9).expect("zoo") {
        if entry.group.is_trivial() || entry.group.order_u64().is_none_or(|o| o > 10_000) {
            continue;
        }
        let minimal = minimal_normal_subgroup(&entry.group).unwrap();
        assert!(minimal.is_normalized_by(&entry.group), "{}", entry.name);
        let elements = minimal.elements(10_000).unwrap();
        for x in elements.iter().filter(|x| !x.is_identity()) {
            let closure = entry.group.normal_closure(std::slice::from_ref(x)).unwrap();
            assert!(
                same_group(&closure, &minimal),
                "{}: minimal normal subgroup has a smaller normal subgroup inside",
                entry.name
            );
        }
    }
}

/// For a plain section with unique bijections, the restrictions of a kernel
/// element to related orbits are conjugate by the plain bijection.
#[test]
fn kernel_restrictions_conjugate_by_plain_bijection() {
    use twoclosure::sections::plain_structure;
    let g = diagonal(&agl_subgroup(5, 4), 2);
    let flag = maximal_normal_flag(&g).unwrap();
    let sections = sections_of(&g, &flag).unwrap();
    let section = &sections[0];
    let plain = plain_structure(section).unwrap();
    assert!(plain.unique);
    let f: std::collections::BTreeMap<usize, usize> =
        plain.bijection(0, 1).unwrap().iter().copied().collect();
    let kernel = quotient_action(&g, &section.e_section).unwrap().kernel;
    for k in kernel.elements(10_000).unwrap() {
        let local = section.restrict_full_perm(&k).unwrap();
        // β^{k_Γ} = f(k_Δ(f⁻¹(β))) for every β in the second orbit.
        let f_inv: std::collections::BTreeMap<usize, usize> =
            f.iter().map(|(&a, &b)| (b, a)).collect();
        for &beta in &section.orbit_list[1] {
            assert_eq!(local.apply(beta), f[&local.apply(f_inv[&beta])]);
        }
    }
}

/// The diagonal affine pair: the worked end-to-end example with a unique
/// plain bijection, a transported 3-cycle, and a nonsolvable closed section.
#[test]
fn diagonal_affine_pair_end_to_end() {
    let g = diagonal(&agl_subgroup(5, 4), 2);
    let report = two_closure_checked(&g, true).unwrap();
    assert_eq!(report.verification.oracle_check, Some(true));
    assert_eq!(report.output.order_u64(), Some(120));
    let cert = &report.certificates[0];
    assert_eq!(cert.xbar.len(), 1);
    assert_eq!(cert.x_s.len(), 1);
    // The representative induces the transported 3-cycle on all ten points.
    assert_eq!(cert.x_s[0].support().len(), 6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Random one- and two-generator groups at small degree: the oracle
    /// closure contains the group, has its 2-orbits, and is idempotent.
    #[test]
    fn oracle_closure_laws_on_random_groups(
        seed in 0u64..1u64 << 48,
        degree in 3usize..7,
        two_gens in proptest::bool::ANY,
    ) {
        let mut rng = common::SplitMix(seed);
        let mut gens = vec![rng.random_perm(degree)];
        if two_gens {
            gens.push(rng.random_perm(degree));
        }
        let group = PermGroup::from_generators(degree, gens).unwrap();
        let closure = brute_force_closure(&group).unwrap();
        prop_assert!(closure.contains_group(&group).unwrap());
        prop_assert!(same_two_orbits(&two_orbits(&group), &two_orbits(&closure)).unwrap());
        let twice = brute_force_closure(&closure).unwrap();
        prop_assert!(same_group(&twice, &closure));
    }

    /// BSGS order equals product-enumeration count on random small groups.
    #[test]
    fn bsgs_order_matches_enumeration(seed in 0u64..1u64 << 48, degree in 3usize..6) {
        let mut rng = common::SplitMix(seed);
        let group = PermGroup::from_generators(
            degree,
            vec![rng.random_perm(degree), rng.random_perm(degree)],
        )
        .unwrap();
        let elements = enumerate_by_products(&group, 721);
        prop_assert_eq!(group.order_u64().unwrap(), elements.len() as u64);
    }

    /// Restrict-then-lift shape laws for random partitions refining a flag
    /// pair: classes of the lift count the inner classes per outer class.
    #[test]
    fn lift_counts_inner_classes(seed in 0u64..1u64 << 48, degree in 2usize..9) {
        let mut rng = common::SplitMix(seed);
        let raw_inner: Vec<usize> = (0..degree).map(|_| rng.below(degree)).collect();
        let inner = EquivRelation::from_class_indices(degree, &raw_inner).unwrap();
        // Coarsen by merging inner classes.
        let merge: Vec<usize> = (0..inner.num_classes()).map(|_| rng.below(3)).collect();
        let raw_outer: Vec<usize> = (0..degree)
            .map(|p| merge[inner.class_index(p)])
            .collect();
        let outer = EquivRelation::from_class_indices(degree, &raw_outer).unwrap();
        prop_assert!(inner.refines(&outer));
        let lifted = outer.lift_to_quotient(&inner).unwrap();
        prop_assert_eq!(lifted.degree(), inner.num_classes());
        prop_assert_eq!(lifted.num_classes(), outer.num_classes());
        for class in lifted.classes() {
            let total: usize = class.iter().map(|&c| inner.classes()[c].len()).sum();
            let outer_class = outer.class_index(inner.classes()[class[0]][0]);
            prop_assert_eq!(total, outer.classes()[outer_class].len());
        }
    }
}
