//! Color-preserving subgroups and subcosets of a solvable group: the coset
//! intersection engine behind relative closures and certificates.
//!
//! `aut_in_group` computes `{w ∈ W : w preserves every color}` by the
//! group-restricted partition backtrack; `aut_in_coset` reduces the coset
//! case to one witness search plus the subgroup case. Both enforce the
//! solvability precondition so the module's scope matches its uses: the
//! searches are exact and deterministic, with no polynomial-time claim.

use crate::backtrack;
use crate::error::Error;
use crate::group::PermGroup;
use crate::orbitals::OrbitalColoring;
use crate::perm::Perm;
use crate::Result;

/// A right coset `subgroup · representative`. The empty case is represented
/// by `Option<GroupCoset>` at the API boundary, never by a sentinel.
#[derive(Clone)]
pub struct GroupCoset {
    pub subgroup: PermGroup,
    pub representative: Perm,
}

impl GroupCoset {
    pub fn new(subgroup: PermGroup, representative: Perm) -> Result<GroupCoset> {
        if subgroup.degree() != representative.degree() {
            return Err(Error::input("degree mismatch in coset".to_string()));
        }
        Ok(GroupCoset {
            subgroup,
            representative,
        })
    }

    pub fn degree(&self) -> usize {
        self.subgroup.degree()
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        self.subgroup
            .contains(&p.then(&self.representative.inverse()))
    }

    /// Whether two cosets have the same element set.
    pub fn same_coset(&self, other: &GroupCoset) -> Result<bool> {
        Ok(self.subgroup.same_group(&other.subgroup)? && self.contains(&other.representative)?)
    }
}

/// `{w ∈ W : w preserves every color class}`, as a group.
pub fn aut_in_group(coloring: &OrbitalColoring, w: &PermGroup) -> Result<PermGroup> {
    aut_in_group_seeded(coloring, w, &[])
}

/// Same, with known color-preserving elements of `W` as a head start.
pub(crate) fn aut_in_group_seeded(
    coloring: &OrbitalColoring,
    w: &PermGroup,
    seed: &[Perm],
) -> Result<PermGroup> {
    if coloring.degree() != w.degree() {
        return Err(Error::input("degree mismatch in aut_in_group".to_string()));
    }
    if !w.is_solvable() {
        return Err(Error::precondition(
            "aut_in_group refused: ambient group is not solvable".to_string(),
        ));
    }
    for s in seed {
        if !w.contains(s)? || !coloring.is_preserved_by(s) {
            return Err(Error::internal(
                "seed element is not a color-preserving member of W".to_string(),
            ));
        }
    }
    backtrack::subgroup_search(
        w,
        &|a, b| coloring.color(a, a) == coloring.color(b, b),
        &|a, ia, b, ib| coloring.color(a, b) == coloring.color(ia, ib),
        &|g: &Perm| coloring.is_preserved_by(g),
        seed.to_vec(),
    )
}

/// The color-preserving subset of a solvable-group coset, as a coset of
/// `aut_in_group(coloring, subgroup)`, or None if empty.
pub fn aut_in_coset(coloring: &OrbitalColoring, coset: &GroupCoset) -> Result<Option<GroupCoset>> {
    if coloring.degree() != coset.degree() {
        return Err(Error::input("degree mismatch in aut_in_coset".to_string()));
    }
    let sub = &coset.subgroup;
    let rep = &coset.representative;
    let preserving = aut_in_group(coloring, sub)?;
    // Search for v ∈ subgroup with rep⁻¹·v color-preserving; then
    // y = v⁻¹·rep is a color-preserving element of subgroup·rep.
    let rep_inv = rep.inverse();
    let witness = backtrack::coset_search(
        sub,
        &preserving,
        &|bp, img| {
            let src = rep.apply(bp);
            coloring.color(src, src) == coloring.color(img, img)
        },
        &|bp_i, img_i, bp_j, img_j| {
            coloring.color(rep.apply(bp_i), rep.apply(bp_j)) == coloring.color(img_i, img_j)
        },
        &|v: &Perm| coloring.is_preserved_by(&rep_inv.then(v)),
    );
    match witness {
        None => Ok(None),
        Some(v) => {
            let y = v.inverse().then(rep);
            if !coloring.is_preserved_by(&y) || !coset.contains(&y)? {
                return Err(Error::internal(
                    "coset witness failed verification".to_string(),
                ));
            }
            Ok(Some(GroupCoset {
                subgroup: preserving,
                representative: y,
            }))
        }
    }
}

/// Size guard for the enumeration oracle.
pub const COSET_ORACLE_LIMIT: u64 = 1_000_000;

/// Oracle with the same contract as `aut_in_coset`, by full enumeration.
pub fn brute_force_in_coset(
    coloring: &OrbitalColoring,
    coset: &GroupCoset,
) -> Result<Option<GroupCoset>> {
    if coloring.degree() != coset.degree() {
        return Err(Error::input(
            "degree mismatch in brute_force_in_coset".to_string(),
        ));
    }
    if coset.subgroup.order() > &num_bigint::BigUint::from(COSET_ORACLE_LIMIT) {
        return Err(Error::precondition(format!(
            "brute_force_in_coset refused: subgroup order {} exceeds guard {}",
            coset.subgroup.order(),
            COSET_ORACLE_LIMIT
        )));
    }
    let elements = coset.subgroup.elements(COSET_ORACLE_LIMIT as usize)?;
    let mut found: Vec<Perm> = Vec::new();
    for u in &elements {
        let candidate = u.then(&coset.representative);
        if coloring.is_preserved_by(&candidate) {
            found.push(candidate);
        }
    }
    let Some(first) = found.first().cloned() else {
        return Ok(None);
    };
    let first_inv = first.inverse();
    let diffs: Vec<Perm> = found.iter().map(|y| y.then(&first_inv)).collect();
    let subgroup = PermGroup::from_generators_reduced(coset.degree(), &diffs, &[])?;
    if subgroup.order() != &num_bigint::BigUint::from(found.len()) {
        return Err(Error::internal(
            "color-preserving subset of a coset is not a coset".to_string(),
        ));
    }
    Ok(Some(GroupCoset {
        subgroup,
        representative: first,
    }))
}
