//! Normal flags: strictly increasing chains of equivalence relations from the
//! identity relation up to the orbit partition, every member normal.
//!
//! A maximal normal flag is built by repeatedly taking orbits of a minimal
//! normal subgroup of the induced group on the current quotient. Extension to
//! a maximal normal flag of an overgroup scans consecutive members for a
//! minimal normal subgroup of the quotient action that fixes one orbit
//! pointwise, and inserts its orbit relation.

use crate::action::{induced_on_classes, quotient_action};
use crate::error::Error;
use crate::group::PermGroup;
use crate::relations::{is_normal_equivalence, EquivRelation};
use crate::structure::{minimal_normal_inside, minimal_normal_subgroup};
use crate::Result;

/// A chain `1_Ω = e_0 ⊂ e_1 ⊂ … ⊂ e_m` with `Ω/e_m` the orbit partition of
/// the group the flag was built for.
#[derive(Clone)]
pub struct Flag {
    degree: usize,
    members: Vec<EquivRelation>,
    /// Informational only; validation always takes the group explicitly,
    /// since one chain can serve a group, its relative closure, and the
    /// closure's overgroups.
    owner_hint: Option<String>,
}

impl Flag {
    pub fn new(degree: usize, members: Vec<EquivRelation>, owner_hint: Option<String>) -> Flag {
        Flag {
            degree,
            members,
            owner_hint,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn members(&self) -> &[EquivRelation] {
        &self.members
    }

    /// Number of members above the identity relation.
    pub fn length(&self) -> usize {
        self.members.len() - 1
    }

    pub fn owner_hint(&self) -> Option<&str> {
        self.owner_hint.as_deref()
    }
}

/// A maximal normal flag of `group`, built from minimal normal subgroups of
/// the successive quotient actions.
pub fn maximal_normal_flag(group: &PermGroup) -> Result<Flag> {
    let n = group.degree();
    let mut members = vec![EquivRelation::identity(n)];
    loop {
        let current = members.last().unwrap().clone();
        let act = quotient_action(group, &current)?;
        if act.image.is_trivial() {
            break;
        }
        let minimal = minimal_normal_subgroup(&act.image)?;
        let merged = minimal.orbits();
        let raw: Vec<usize> = (0..n)
            .map(|pt| merged.class_index(current.class_index(pt)))
            .collect();
        let next = EquivRelation::from_class_indices(n, &raw)?;
        if !current.strictly_refines(&next) {
            return Err(Error::internal(
                "flag construction did not strictly coarsen".to_string(),
            ));
        }
        members.push(next);
    }
    if members.last().unwrap() != &group.orbits() {
        return Err(Error::internal(
            "flag top member is not the orbit partition".to_string(),
        ));
    }
    Ok(Flag {
        degree: n,
        members,
        owner_hint: Some(format!("order {}", group.order())),
    })
}

/// Degree bound for exhaustive maximality verification.
pub const MAXIMALITY_CHECK_DEGREE: usize = 10;

/// Checks chain shape, invariance, and optionally normality of each member
/// and maximality (the latter exhaustively, only at degree ≤ 10; above that
/// maximality is trusted to the construction).
pub fn validate_flag(
    flag: &Flag,
    group: &PermGroup,
    require_normal: bool,
    require_maximal: bool,
) -> Result<bool> {
    if flag.degree != group.degree() {
        return Err(Error::input("degree mismatch in validate_flag".to_string()));
    }
    let members = &flag.members;
    if members.is_empty() || !members[0].is_identity_relation() {
        return Ok(false);
    }
    for pair in members.windows(2) {
        if !pair[0].strictly_refines(&pair[1]) {
            return Ok(false);
        }
    }
    if members.last().unwrap() != &group.orbits() {
        return Ok(false);
    }
    for e in members {
        if !e.is_invariant(group)? {
            return Ok(false);
        }
    }
    if require_normal {
        for e in members {
            if !is_normal_equivalence(e, group)? {
                return Ok(false);
            }
        }
    }
    if require_maximal && flag.degree <= MAXIMALITY_CHECK_DEGREE {
        for pair in members.windows(2) {
            if insertable_member_exists(&pair[0], &pair[1], group)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether some normal invariant relation lies strictly between the two.
fn insertable_member_exists(
    finer: &EquivRelation,
    coarser: &EquivRelation,
    group: &PermGroup,
) -> Result<bool> {
    // Candidates merge finer-classes within coarser-classes: the product of
    // set partitions of each coarser class's list of finer classes.
    let n = finer.degree();
    let units_per_block: Vec<Vec<usize>> = coarser
        .classes()
        .iter()
        .map(|class| {
            let mut ids: Vec<usize> = class.iter().map(|&p| finer.class_index(p)).collect();
            ids.sort_unstable();
            ids.dedup();
            ids
        })
        .collect();
    let partition_choices: Vec<Vec<Vec<usize>>> = units_per_block
        .iter()
        .map(|units| set_partitions(units.len()))
        .collect();
    let mut choice: Vec<usize> = vec![0; partition_choices.len()];
    loop {
        // Assemble the candidate relation.
        let mut raw = vec![0usize; n];
        let mut next_class = 0usize;
        for (b, units) in units_per_block.iter().enumerate() {
            let assignment = &partition_choices[b][choice[b]];
            let blocks = assignment.iter().max().map_or(0, |&m| m + 1);
            for pt in coarser.classes()[b].iter() {
                let unit_pos = units.binary_search(&finer.class_index(*pt)).unwrap();
                raw[*pt] = next_class + assignment[unit_pos];
            }
            next_class += blocks;
        }
        let candidate = EquivRelation::from_class_indices(n, &raw)?;
        if finer.strictly_refines(&candidate)
            && candidate.strictly_refines(coarser)
            && candidate.is_invariant(group)?
            && is_normal_equivalence(&candidate, group)?
        {
            return Ok(true);
        }
        // Next choice tuple.
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(false);
            }
            choice[pos] += 1;
            if choice[pos] < partition_choices[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// All set partitions of `{0..k-1}` as restricted-growth assignment arrays.
fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut assignment = vec![0usize; k];
    fn rec(assignment: &mut Vec<usize>, pos: usize, max_used: usize, out: &mut Vec<Vec<usize>>) {
        if pos == assignment.len() {
            out.push(assignment.clone());
            return;
        }
        for c in 0..=max_used + 1 {
            assignment[pos] = c;
            rec(assignment, pos + 1, max_used.max(c), out);
        }
    }
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    assignment[0] = 0;
    rec(&mut assignment, 1, 0, &mut out);
    out
}

/// The flag `{e_Δ : e ∈ F}` on `delta`, duplicates collapsed. Intended for
/// invariant sets and for single classes of a member (where the deeper
/// members restrict cleanly by construction).
pub fn induced_flag_on_set(flag: &Flag, delta: &[usize]) -> Result<Flag> {
    let mut pts: Vec<usize> = delta.to_vec();
    pts.sort_unstable();
    pts.dedup();
    for &p in &pts {
        if p >= flag.degree {
            return Err(Error::input(format!("point {p} out of range")));
        }
    }
    let mut members: Vec<EquivRelation> = Vec::new();
    for e in &flag.members {
        let restricted = e.restrict(&pts);
        if members.last() != Some(&restricted) {
            members.push(restricted);
        }
    }
    Ok(Flag {
        degree: pts.len(),
        members,
        owner_hint: flag.owner_hint.clone(),
    })
}

/// The flag `{e'_{Ω/e} : e' ∈ F, e' ⊇ e}` on the class set of member `e`.
pub fn induced_flag_on_quotient(flag: &Flag, member_index: usize) -> Result<Flag> {
    if member_index >= flag.members.len() {
        return Err(Error::precondition(
            "quotient member index out of range".to_string(),
        ));
    }
    let e = &flag.members[member_index];
    let mut members = Vec::new();
    for e_prime in &flag.members[member_index..] {
        members.push(e_prime.lift_to_quotient(e)?);
    }
    Ok(Flag {
        degree: e.num_classes(),
        members,
        owner_hint: flag.owner_hint.clone(),
    })
}

/// Extends a normal `K`-flag to a maximal one: while some consecutive pair
/// `(e, ē)` and non-singleton orbit `Λ` of `K^{Ω/e}` admit a minimal normal
/// subgroup of `K^{Ω/e}` inside the `Λ`-pointwise stabilizer of the image of
/// `K_ē`, insert the relation whose classes on `Ω/e` are its orbits. Scan
/// order is deterministic: members by index, orbits by least point.
pub fn extend_to_maximal_k_flag(k_group: &PermGroup, flag: &Flag) -> Result<Flag> {
    let mut cache = crate::action::KernelCache::new();
    extend_to_maximal_k_flag_cached(k_group, flag, &mut cache)
}

pub(crate) fn extend_to_maximal_k_flag_cached(
    k_group: &PermGroup,
    flag: &Flag,
    cache: &mut crate::action::KernelCache,
) -> Result<Flag> {
    // The input must be a normal flag of the group; checked with the shared
    // kernel cache so the scan below reuses the same kernels.
    if !validate_flag_shape(flag, k_group)? {
        return Err(Error::precondition(
            "extend_to_maximal_k_flag requires a flag of the group".to_string(),
        ));
    }
    for e in &flag.members {
        let kernel = cache.kernel(k_group, e)?;
        if kernel.orbits() != *e {
            return Err(Error::precondition(
                "extend_to_maximal_k_flag requires a normal flag of the group".to_string(),
            ));
        }
    }
    let n = flag.degree;
    let mut members = flag.members.clone();
    let mut inserts = 0usize;
    'scan: loop {
        for i in 0..members.len() - 1 {
            let e = members[i].clone();
            let cover = members[i + 1].clone();
            let q = crate::action::quotient_image(k_group, &e)?;
            if q.is_trivial() {
                continue;
            }
            // Image on Ω/e of the kernel K_ē.
            let kernel_cover = cache.kernel(k_group, &cover)?;
            let image_gens: Vec<_> = kernel_cover
                .generators()
                .iter()
                .map(|g| {
                    induced_on_classes(g, &e).ok_or_else(|| {
                        Error::internal("kernel does not preserve a finer member".to_string())
                    })
                })
                .collect::<Result<_>>()?;
            let m_image = PermGroup::from_generators_reduced(e.num_classes(), &image_gens, &[])?;
            if m_image.is_trivial() {
                continue;
            }
            for lambda in q.orbits().classes() {
                if lambda.len() < 2 {
                    continue;
                }
                let pointwise = m_image.pointwise_stabilizer(lambda)?;
                if pointwise.is_trivial() {
                    continue;
                }
                let minimal = minimal_normal_inside(&q, &pointwise)?;
                let merged = minimal.orbits();
                let raw: Vec<usize> = (0..n)
                    .map(|pt| merged.class_index(e.class_index(pt)))
                    .collect();
                let candidate = EquivRelation::from_class_indices(n, &raw)?;
                if e.strictly_refines(&candidate) && candidate.strictly_refines(&cover) {
                    members.insert(i + 1, candidate);
                    inserts += 1;
                    if inserts > n {
                        return Err(Error::internal(
                            "flag extension exceeded the insertion bound".to_string(),
                        ));
                    }
                    continue 'scan;
                }
            }
        }
        break;
    }
    let extended = Flag {
        degree: n,
        members,
        owner_hint: flag.owner_hint.clone(),
    };
    // Inserted members are normal by construction (orbit relations of
    // normal subgroups of the quotient); re-check only the chain shape.
    if !validate_flag_shape(&extended, k_group)? {
        return Err(Error::internal(
            "extended flag failed shape validation".to_string(),
        ));
    }
    Ok(extended)
}

/// Chain shape and invariance only — no kernel computations.
pub(crate) fn validate_flag_shape(flag: &Flag, group: &PermGroup) -> Result<bool> {
    if flag.degree != group.degree() {
        return Err(Error::input("degree mismatch in validate_flag".to_string()));
    }
    let members = &flag.members;
    if members.is_empty() || !members[0].is_identity_relation() {
        return Ok(false);
    }
    for pair in members.windows(2) {
        if !pair[0].strictly_refines(&pair[1]) {
            return Ok(false);
        }
    }
    if members.last().unwrap() != &group.orbits() {
        return Ok(false);
    }
    for e in members {
        if !e.is_invariant(group)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn cyclic(n: usize) -> PermGroup {
        let rot = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        PermGroup::from_generators(n, vec![rot]).unwrap()
    }

    fn agl1_5() -> PermGroup {
        let add = Perm::from_images(vec![1, 2, 3, 4, 0]).unwrap();
        let mul = Perm::from_images(vec![0, 2, 4, 1, 3]).unwrap();
        PermGroup::from_generators(5, vec![add, mul]).unwrap()
    }

    #[test]
    fn flag_of_c4_has_antipodal_middle_member() {
        let flag = maximal_normal_flag(&cyclic(4)).unwrap();
        assert_eq!(flag.length(), 2);
        assert_eq!(flag.members()[1].to_text(), "{0,2} {1,3}");
        assert!(validate_flag(&flag, &cyclic(4), true, true).unwrap());
    }

    #[test]
    fn flag_of_trivial_group_is_identity_only() {
        let g = PermGroup::trivial(3);
        let flag = maximal_normal_flag(&g).unwrap();
        assert_eq!(flag.length(), 0);
        assert!(validate_flag(&flag, &g, true, true).unwrap());
    }

    #[test]
    fn flag_of_agl_is_identity_then_full() {
        let flag = maximal_normal_flag(&agl1_5()).unwrap();
        assert_eq!(flag.length(), 1);
        assert_eq!(flag.members()[1].num_classes(), 1);
        assert!(validate_flag(&flag, &agl1_5(), true, true).unwrap());
    }

    #[test]
    fn skipping_a_member_fails_maximality() {
        let c4 = cyclic(4);
        let skipped = Flag::new(
            4,
            vec![EquivRelation::identity(4), EquivRelation::full(4)],
            None,
        );
        assert!(validate_flag(&skipped, &c4, true, false).unwrap());
        assert!(!validate_flag(&skipped, &c4, true, true).unwrap());
    }

    #[test]
    fn flag_remains_valid_for_two_equivalent_overgroup() {
        // The AGL₁(5) flag is also a flag for Sym(5) (a 2-equivalent
        // overgroup of its closure).
        let flag = maximal_normal_flag(&agl1_5()).unwrap();
        let sym5 = {
            let t = Perm::from_cycles(5, &[vec![0, 1]]).unwrap();
            let c = Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
            PermGroup::from_generators(5, vec![t, c]).unwrap()
        };
        assert!(validate_flag(&flag, &sym5, true, false).unwrap());
    }

    #[test]
    fn induced_flag_on_class() {
        let c4 = cyclic(4);
        let flag = maximal_normal_flag(&c4).unwrap();
        let induced = induced_flag_on_set(&flag, &[0, 2]).unwrap();
        assert_eq!(induced.length(), 1);
        assert_eq!(induced.members()[1].num_classes(), 1);

        let full = induced_flag_on_set(&flag, &[0, 1, 2, 3]).unwrap();
        assert_eq!(full.length(), flag.length());

        let singleton = induced_flag_on_set(&flag, &[1]).unwrap();
        assert_eq!(singleton.length(), 0);
    }

    #[test]
    fn induced_flag_on_quotient() {
        let c4 = cyclic(4);
        let flag = maximal_normal_flag(&c4).unwrap();
        let by_identity = super::induced_flag_on_quotient(&flag, 0).unwrap();
        assert_eq!(by_identity.length(), flag.length());
        let by_top = super::induced_flag_on_quotient(&flag, 2).unwrap();
        assert_eq!(by_top.length(), 0);
        let by_middle = super::induced_flag_on_quotient(&flag, 1).unwrap();
        assert_eq!(by_middle.length(), 1);
        assert_eq!(by_middle.degree(), 2);
        assert!(super::induced_flag_on_quotient(&flag, 3).is_err());
    }

    #[test]
    fn extension_separates_independent_orbits() {
        // C3 × C3 acting independently on 3+3 points: the diagonal flag
        // [1, orbits] is normal but not maximal; extension must insert a
        // member splitting one orbit into singletons.
        let a = Perm::from_cycles(6, &[vec![0, 1, 2]]).unwrap();
        let b = Perm::from_cycles(6, &[vec![3, 4, 5]]).unwrap();
        let g = PermGroup::from_generators(6, vec![a, b]).unwrap();
        let start = Flag::new(6, vec![EquivRelation::identity(6), g.orbits()], None);
        assert!(validate_flag(&start, &g, true, false).unwrap());
        assert!(!validate_flag(&start, &g, true, true).unwrap());
        let extended = extend_to_maximal_k_flag(&g, &start).unwrap();
        assert!(validate_flag(&extended, &g, true, true).unwrap());
        assert!(extended.length() > start.length());
    }

    #[test]
    fn extension_handles_several_independent_orbits() {
        // Three independent C3 factors: the coarse flag needs two inserts
        // before it is maximal.
        let g = PermGroup::from_generators(
            9,
            vec![
                Perm::from_cycles(9, &[vec![0, 1, 2]]).unwrap(),
                Perm::from_cycles(9, &[vec![3, 4, 5]]).unwrap(),
                Perm::from_cycles(9, &[vec![6, 7, 8]]).unwrap(),
            ],
        )
        .unwrap();
        let start = Flag::new(9, vec![EquivRelation::identity(9), g.orbits()], None);
        let extended = extend_to_maximal_k_flag(&g, &start).unwrap();
        assert_eq!(extended.length(), 3);
        assert!(validate_flag(&extended, &g, true, true).unwrap());
    }

    #[test]
    fn extension_keeps_maximal_flag_unchanged() {
        let g = agl1_5();
        let flag = maximal_normal_flag(&g).unwrap();
        let extended = extend_to_maximal_k_flag(&g, &flag).unwrap();
        assert_eq!(extended.length(), flag.length());
    }

    #[test]
    fn extension_of_trivial_group_flag() {
        let g = PermGroup::trivial(4);
        let flag = maximal_normal_flag(&g).unwrap();
        let extended = extend_to_maximal_k_flag(&g, &flag).unwrap();
        assert_eq!(extended.length(), 0);
    }
}
