//! Nonsolvability certificates: transported 3-cycles on a section, their
//! lifts to the full domain, and the coset intersections that decide
//! whether the closed section is nonsolvable.

use crate::error::Error;
use crate::flags::Flag;
use crate::group::PermGroup;
use crate::majorant::{majorant_generators, Identification};
use crate::orbitals::OrbitalColoring;
use crate::perm::Perm;
use crate::sections::{
    feasibility, is_plain, plain_structure, Feasibility, PlainStructure, Section,
};
use crate::solver::{aut_in_coset, GroupCoset};
use crate::Result;

/// Why a certificate came back empty.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EmptyReason {
    /// Some constituent has composite degree or degree below 5.
    NotFeasible,
    /// Constituent degrees are fine but one is regular, so the closed
    /// section is solvable outright.
    SolvableByConstruction,
    /// The section is not plain.
    NotPlain,
    /// Some transported 3-cycle has an empty coset intersection.
    EmptyIntersection,
}

impl EmptyReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            EmptyReason::NotFeasible => "not-feasible",
            EmptyReason::SolvableByConstruction => "solvable-by-construction",
            EmptyReason::NotPlain => "not-plain",
            EmptyReason::EmptyIntersection => "empty-intersection",
        }
    }
}

/// The certificate data for one section: the transported 3-cycles `x`, their
/// lifts `k_x`, and one representative of each nonempty intersection.
#[derive(Clone)]
pub struct Certificate {
    pub section_index: usize,
    /// One permutation of the section points per ∼-class.
    pub xbar: Vec<Perm>,
    /// The lifts `k_x` on the full domain, aligned with `xbar`.
    pub lifted: Vec<Perm>,
    /// Representatives of the intersections, aligned with `xbar`; empty iff
    /// `empty_reason` is set.
    pub x_s: Vec<Perm>,
    pub empty_reason: Option<EmptyReason>,
}

/// One permutation per ∼-class: a 3-cycle on the three least points of the
/// class's least orbit, transported to the other orbits by the unique plain
/// bijections, identity elsewhere.
pub fn build_xbar(section: &Section, plain: &PlainStructure) -> Result<Vec<Perm>> {
    if feasibility(section) != Feasibility::Feasible {
        return Err(Error::precondition(
            "certificate 3-cycles require a feasible section".to_string(),
        ));
    }
    if !plain.unique {
        return Err(Error::precondition(
            "certificate 3-cycles require unique plain bijections".to_string(),
        ));
    }
    let degree = section.group.degree();
    let mut out = Vec::new();
    for class in &plain.orbit_classes {
        let rep_orbit = class[0];
        let mut images: Vec<usize> = (0..degree).collect();
        // 3-cycle a → b → c → a on the three least points of the
        // representative orbit.
        let pts = &section.orbit_list[rep_orbit];
        let (a, b, c) = (pts[0], pts[1], pts[2]);
        images[a] = b;
        images[b] = c;
        images[c] = a;
        // Transport x^Γ = f⁻¹ x^Δ f through each plain bijection.
        for &other in &class[1..] {
            let f = plain.bijection(rep_orbit, other).ok_or_else(|| {
                Error::internal("missing plain bijection inside a ∼-class".to_string())
            })?;
            let forward: std::collections::BTreeMap<usize, usize> = f.iter().copied().collect();
            let backward: std::collections::BTreeMap<usize, usize> =
                f.iter().map(|&(x, y)| (y, x)).collect();
            for &beta in &section.orbit_list[other] {
                let through = forward[&images[backward[&beta]]];
                images[beta] = through;
            }
        }
        out.push(Perm::from_images(images)?);
    }
    Ok(out)
}

/// Lifts a section permutation to the full domain: trivial on the level
/// quotient, inducing `x` on the section points, identity coordinates at
/// every lower level. Realized by mapping each class to its image class
/// through the identification's canonical bijections.
pub fn lift_kx(x: &Perm, section: &Section, id: &Identification) -> Result<Perm> {
    if x.degree() != section.group.degree() {
        return Err(Error::input(
            "lift_kx: permutation degree must match the section".to_string(),
        ));
    }
    let level = section.index;
    let e_prev = &section.e_prev;
    let n = e_prev.degree();
    let mut images: Vec<usize> = (0..n).collect();
    for (local, &cid) in section.omega_classes.iter().enumerate() {
        if x.apply(local) == local {
            continue;
        }
        let target_cid = section.omega_classes[x.apply(local)];
        for (src, dst) in id.canonical_bijection(level - 1, cid, target_cid)? {
            images[src] = dst;
        }
    }
    let lifted = Perm::from_images(images)
        .map_err(|_| Error::internal("certificate lift is not a bijection".to_string()))?;
    // Trivial on Ω/e_S, inducing x on the section points.
    let on_e_s =
        crate::action::induced_on_classes(&lifted, &section.e_section).ok_or_else(|| {
            Error::internal("certificate lift does not preserve the member".to_string())
        })?;
    if !on_e_s.is_identity() {
        return Err(Error::internal(
            "certificate lift moves classes of the section member".to_string(),
        ));
    }
    match section.restrict_full_perm(&lifted) {
        Some(induced) if &induced == x => {}
        _ => {
            return Err(Error::internal(
                "certificate lift does not induce the section permutation".to_string(),
            ))
        }
    }
    Ok(lifted)
}

/// Runs the certificate search for one section of `k_group` with respect to
/// the maximal normal flag: feasibility gate, plainness gate, transported
/// 3-cycles, and one solvable coset intersection per 3-cycle, aborting on
/// the first empty intersection.
pub fn find_certificate(
    k_group: &PermGroup,
    flag: &Flag,
    section: &Section,
    id: &Identification,
    coloring: &OrbitalColoring,
) -> Result<Certificate> {
    let majorant = majorant_generators(k_group, flag, id)?;
    find_certificate_with_majorant(k_group, flag, section, id, coloring, &majorant)
}

/// Same, with the majorant precomputed (it does not depend on the section).
pub(crate) fn find_certificate_with_majorant(
    k_group: &PermGroup,
    flag: &Flag,
    section: &Section,
    id: &Identification,
    coloring: &OrbitalColoring,
    majorant: &PermGroup,
) -> Result<Certificate> {
    if coloring.degree() != k_group.degree() {
        return Err(Error::input(
            "degree mismatch in find_certificate".to_string(),
        ));
    }
    let empty = |reason: EmptyReason| Certificate {
        section_index: section.index,
        xbar: Vec::new(),
        lifted: Vec::new(),
        x_s: Vec::new(),
        empty_reason: Some(reason),
    };
    match feasibility(section) {
        Feasibility::BadDegree => return Ok(empty(EmptyReason::NotFeasible)),
        Feasibility::Regular => return Ok(empty(EmptyReason::SolvableByConstruction)),
        Feasibility::Feasible => {}
    }
    if !is_plain(section) {
        return Ok(empty(EmptyReason::NotPlain));
    }
    let plain = plain_structure(section)?;
    let xbar = build_xbar(section, &plain)?;
    if !majorant.is_solvable() {
        return Err(Error::internal(
            "majorant of the relative closure must be solvable".to_string(),
        ));
    }
    let e_prev = &flag.members()[section.index - 1];
    let w_e = crate::action::quotient_action(majorant, e_prev)?.kernel;
    let mut lifted = Vec::new();
    let mut x_s = Vec::new();
    for x in &xbar {
        let kx = lift_kx(x, section, id)?;
        lifted.push(kx.clone());
        let coset = GroupCoset::new(w_e.clone(), kx)?;
        match aut_in_coset(coloring, &coset)? {
            None => {
                return Ok(Certificate {
                    section_index: section.index,
                    xbar,
                    lifted,
                    x_s: Vec::new(),
                    empty_reason: Some(EmptyReason::EmptyIntersection),
                })
            }
            Some(found) => {
                let y = found.representative;
                // Every element of the intersection induces exactly x.
                match section.restrict_full_perm(&y) {
                    Some(induced) if &induced == x => {}
                    _ => {
                        return Err(Error::internal(
                            "certificate representative does not restrict to its 3-cycle"
                                .to_string(),
                        ))
                    }
                }
                x_s.push(y);
            }
        }
    }
    Ok(Certificate {
        section_index: section.index,
        xbar,
        lifted,
        x_s,
        empty_reason: None,
    })
}
