//! Sections of a group with respect to a normal flag, plainness, the
//! standard equivalence relation with its plain bijections, and feasibility.
//!
//! The section at flag position `i` is the action of the kernel `G_{e_i}` on
//! the union `Ω_i` of its non-singleton orbits inside `Ω/e_{i-1}`.

use std::collections::BTreeMap;

use crate::action::{induced_on_classes, restricted_action, split_action, PointMap};
use crate::error::Error;
use crate::flags::{validate_flag, Flag};
use crate::group::PermGroup;
use crate::orbitals::{two_orbits, OrbitalColoring};
use crate::perm::Perm;
use crate::Result;

/// A section `S = (G_{e_i})^{Ω_i}`, relabelled to `{0..|Ω_i|-1}`.
#[derive(Clone)]
pub struct Section {
    /// The flag position `i(S)`.
    pub index: usize,
    /// `e_S = e_i` on the original domain.
    pub e_section: crate::relations::EquivRelation,
    /// `e_{i-1}` on the original domain.
    pub e_prev: crate::relations::EquivRelation,
    /// Sorted class indices of `e_{i-1}` making up `Ω_S`.
    pub omega_classes: Vec<usize>,
    /// The section group on local points `0..|Ω_S|-1`.
    pub group: PermGroup,
    /// Kernel of `G_{e_i} → Sym(Ω_S)`, on the original domain.
    pub kernel: PermGroup,
    /// Orbits of `group`, each sorted, ordered by least point.
    pub orbit_list: Vec<Vec<usize>>,
}

impl Section {
    /// Local label of an `e_{i-1}`-class id, if it lies in `Ω_S`.
    pub fn local_of_class(&self, class_id: usize) -> Option<usize> {
        self.omega_classes.binary_search(&class_id).ok()
    }

    /// Restriction of a full-domain permutation to the section points, if it
    /// permutes the classes of `e_{i-1}` and preserves `Ω_S`.
    pub fn restrict_full_perm(&self, p: &Perm) -> Option<Perm> {
        let on_classes = induced_on_classes(p, &self.e_prev)?;
        let images: Option<Vec<usize>> = self
            .omega_classes
            .iter()
            .map(|&cid| self.local_of_class(on_classes.apply(cid)))
            .collect();
        Perm::from_images(images?).ok()
    }
}

/// The sections of `group` with respect to the normal flag `flag`, in
/// increasing flag position.
pub fn sections_of(group: &PermGroup, flag: &Flag) -> Result<Vec<Section>> {
    if !validate_flag(flag, group, true, false)? {
        return Err(Error::precondition(
            "sections_of requires a normal flag of the group".to_string(),
        ));
    }
    sections_of_trusted(group, flag)
}

/// Same, for flags whose normality the caller has already established.
pub(crate) fn sections_of_trusted(group: &PermGroup, flag: &Flag) -> Result<Vec<Section>> {
    let mut cache = crate::action::KernelCache::new();
    sections_of_cached(group, flag, &mut cache)
}

pub(crate) fn sections_of_cached(
    group: &PermGroup,
    flag: &Flag,
    cache: &mut crate::action::KernelCache,
) -> Result<Vec<Section>> {
    let mut out = Vec::new();
    for i in 1..=flag.length() {
        let e_i = flag.members()[i].clone();
        let e_prev = flag.members()[i - 1].clone();
        let kernel_i = cache.kernel(group, &e_i)?;
        // Action of G_{e_i} on Ω/e_{i-1}.
        let class_gens: Vec<Perm> = kernel_i
            .generators()
            .iter()
            .map(|g| {
                induced_on_classes(g, &e_prev).ok_or_else(|| {
                    Error::internal("kernel does not preserve the finer member".to_string())
                })
            })
            .collect::<Result<_>>()?;
        let on_classes = PermGroup::from_generators(e_prev.num_classes(), class_gens.clone())?;
        let omega_classes: Vec<usize> = on_classes
            .orbits()
            .classes()
            .iter()
            .filter(|c| c.len() >= 2)
            .flatten()
            .copied()
            .collect();
        let mut omega_classes = omega_classes;
        omega_classes.sort_unstable();
        if omega_classes.is_empty() {
            return Err(Error::internal(
                "section of a normal flag has no non-singleton orbit".to_string(),
            ));
        }
        // Relabel the action of the kernel onto the section points.
        let local_gens: Vec<Perm> = class_gens
            .iter()
            .map(|g| {
                let images: Vec<usize> = omega_classes
                    .iter()
                    .map(|&cid| {
                        omega_classes
                            .binary_search(&g.apply(cid))
                            .expect("section set is invariant")
                    })
                    .collect();
                Perm::from_images(images).expect("restriction is a bijection")
            })
            .collect();
        let act = split_action(
            &kernel_i,
            omega_classes.len(),
            &local_gens,
            PointMap::Restriction(omega_classes.clone()),
        )?;
        let orbit_list: Vec<Vec<usize>> = act.image.orbits().classes().to_vec();
        out.push(Section {
            index: i,
            e_section: e_i,
            e_prev,
            omega_classes,
            group: act.image,
            kernel: act.kernel,
            orbit_list,
        });
    }
    Ok(out)
}

/// A plain bijection between two orbits, as sorted (source, image) pairs.
pub type PairMap = Vec<(usize, usize)>;

/// The standard equivalence relation of a plain section group, with the
/// plain bijections realizing it.
#[derive(Clone)]
pub struct PlainStructure {
    /// Orbit indices grouped into ∼-classes, each class sorted, classes
    /// ordered by least member.
    pub orbit_classes: Vec<Vec<usize>>,
    /// For each related ordered pair of distinct orbits, all bijection
    /// colors realizing the relation.
    pub bijections: BTreeMap<(usize, usize), Vec<PairMap>>,
    /// Whether every related pair has exactly one plain bijection.
    pub unique: bool,
}

impl PlainStructure {
    pub fn bijection(&self, from_orbit: usize, to_orbit: usize) -> Option<&PairMap> {
        self.bijections
            .get(&(from_orbit, to_orbit))
            .and_then(|v| v.first())
    }
}

enum PairKind {
    ProductOrbit,
    Bijections(Vec<PairMap>),
    Neither,
}

fn classify_pair(coloring: &OrbitalColoring, delta: &[usize], gamma: &[usize]) -> PairKind {
    // Group the cells of Δ×Γ by color.
    let mut by_color: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for &a in delta {
        for &b in gamma {
            by_color
                .entry(coloring.color(a, b))
                .or_default()
                .push((a, b));
        }
    }
    if by_color.len() == 1 {
        return PairKind::ProductOrbit;
    }
    let mut bijections = Vec::new();
    for cells in by_color.values() {
        if cells.len() != delta.len() || delta.len() != gamma.len() {
            continue;
        }
        let mut seen_src = vec![false; cells.len()];
        let mut seen_dst = vec![false; cells.len()];
        let mut ok = true;
        for &(a, b) in cells {
            let ia = delta.binary_search(&a).unwrap();
            let ib = gamma.binary_search(&b).unwrap();
            if seen_src[ia] || seen_dst[ib] {
                ok = false;
                break;
            }
            seen_src[ia] = true;
            seen_dst[ib] = true;
        }
        if ok {
            let mut map = cells.clone();
            map.sort_unstable();
            bijections.push(map);
        }
    }
    if bijections.is_empty() {
        PairKind::Neither
    } else {
        PairKind::Bijections(bijections)
    }
}

/// Whether for every ordered pair of distinct orbits, either their product
/// is a single 2-orbit or some 2-orbit inside it is a bijection.
pub fn is_plain(section: &Section) -> bool {
    let coloring = two_orbits(&section.group);
    for (i, delta) in section.orbit_list.iter().enumerate() {
        for (j, gamma) in section.orbit_list.iter().enumerate() {
            if i == j {
                continue;
            }
            match classify_pair(&coloring, delta, gamma) {
                PairKind::Neither => return false,
                PairKind::Bijections(maps) => {
                    // The commuting law holds for any invariant bijection;
                    // check it anyway.
                    for map in &maps {
                        if !commuting_law_holds(&section.group, map) {
                            return false;
                        }
                    }
                }
                PairKind::ProductOrbit => {}
            }
        }
    }
    true
}

/// `α^{gf} = α^{fg}` for all generators `g` and all `α` in the source.
pub fn commuting_law_holds(group: &PermGroup, map: &PairMap) -> bool {
    let lookup: BTreeMap<usize, usize> = map.iter().copied().collect();
    for g in group.generators() {
        for &(a, b) in map {
            let via_g_first = lookup.get(&g.apply(a));
            let via_f_first = g.apply(b);
            if via_g_first != Some(&via_f_first) {
                return false;
            }
        }
    }
    true
}

/// The ∼-classes and plain bijections of a plain section.
pub fn plain_structure(section: &Section) -> Result<PlainStructure> {
    if !is_plain(section) {
        return Err(Error::precondition("section is not plain".to_string()));
    }
    let coloring = two_orbits(&section.group);
    let k = section.orbit_list.len();
    let mut related = vec![vec![false; k]; k];
    let mut bijections: BTreeMap<(usize, usize), Vec<PairMap>> = BTreeMap::new();
    #[allow(clippy::needless_range_loop)]
    for i in 0..k {
        related[i][i] = true;
        for j in 0..k {
            if i == j {
                continue;
            }
            if let PairKind::Bijections(maps) =
                classify_pair(&coloring, &section.orbit_list[i], &section.orbit_list[j])
            {
                related[i][j] = true;
                bijections.insert((i, j), maps);
            }
        }
    }
    // ∼ must be symmetric and transitive; these hold for 2-orbit bijections,
    // so violations are internal errors.
    for i in 0..k {
        for j in 0..k {
            if related[i][j] != related[j][i] {
                return Err(Error::internal(
                    "standard relation is not symmetric".to_string(),
                ));
            }
            for l in 0..k {
                if related[i][j] && related[j][l] && !related[i][l] {
                    return Err(Error::internal(
                        "standard relation is not transitive".to_string(),
                    ));
                }
            }
        }
    }
    let mut assigned = vec![usize::MAX; k];
    let mut orbit_classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..k {
        if assigned[i] != usize::MAX {
            continue;
        }
        let id = orbit_classes.len();
        let class: Vec<usize> = (i..k).filter(|&j| related[i][j]).collect();
        for &j in &class {
            assigned[j] = id;
        }
        orbit_classes.push(class);
    }
    let unique = bijections.values().all(|v| v.len() == 1);
    Ok(PlainStructure {
        orbit_classes,
        bijections,
        unique,
    })
}

/// Whether every transitive constituent is nonregular of prime degree ≥ 5.
pub fn is_feasible(section: &Section) -> bool {
    feasibility(section) == Feasibility::Feasible
}

/// Finer-grained feasibility verdict, used to label empty certificates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Feasibility {
    Feasible,
    /// Some orbit has composite size or size below 5.
    BadDegree,
    /// Degrees are fine but some constituent is regular (hence 2-closed and
    /// solvable, so no certificate can exist).
    Regular,
}

pub fn feasibility(section: &Section) -> Feasibility {
    for orbit in &section.orbit_list {
        let d = orbit.len();
        if d < 5 || !is_prime_usize(d) {
            return Feasibility::BadDegree;
        }
    }
    for orbit in &section.orbit_list {
        let constituent =
            restricted_action(&section.group, orbit).expect("orbit restriction cannot fail");
        if constituent.image.order() == &num_bigint::BigUint::from(orbit.len()) {
            return Feasibility::Regular;
        }
    }
    Feasibility::Feasible
}

fn is_prime_usize(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Whether all orbits share one prime size.
pub fn section_orbit_sizes_prime(section: &Section) -> bool {
    let Some(first) = section.orbit_list.first() else {
        return true;
    };
    let d = first.len();
    is_prime_usize(d) && section.orbit_list.iter().all(|o| o.len() == d)
}
