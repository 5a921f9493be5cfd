//! Orbit identification with an iterated Cartesian product, wreath-product
//! majorants, Δ-coordinates of the standard representation, and the relative
//! closure.
//!
//! The identification is not canonical; it is pinned here so every derived
//! object is reproducible: chain classes contain the least point of their
//! orbit, transversals come from BFS over class actions in generator order,
//! and a class's internal structure is the pullback of the canonical chain
//! class's structure through its transversal element. Canonical bijections
//! between classes of one parent therefore preserve all deeper labels.

use crate::action::{block_stabilizer, induced_on_classes, quotient_image};
use crate::error::Error;
use crate::flags::{validate_flag, Flag};
use crate::group::PermGroup;
use crate::orbitals::two_orbits;
use crate::perm::Perm;
use crate::relations::EquivRelation;
use crate::solver::aut_in_group_seeded;
use crate::Result;

/// Per-orbit, per-level data for the canonical chain class.
struct OrbitLevel {
    /// Level-(l-1) class ids inside the chain class, canonical order
    /// (chain child first, then ascending).
    canonical_children: Vec<usize>,
    /// `v[j]` maps the chain class at level l-1 onto `canonical_children[j]`.
    v: Vec<Perm>,
    /// Generators of the induced group on the child labels.
    local_gens: Vec<Perm>,
}

struct OrbitIdent {
    /// `chain[l]`: class id of the chain class at level l.
    chain: Vec<usize>,
    /// `levels[l-1]`: data for level l ≥ 1.
    levels: Vec<OrbitLevel>,
}

/// The pinned identification of each orbit with a product of quotient
/// layers, with enough structure to build majorants, extract coordinates,
/// and transport points between sibling classes.
pub struct Identification {
    degree: usize,
    members: Vec<EquivRelation>,
    /// `label[l][cid]`: index of class `cid` (level l) within its parent.
    label: Vec<Vec<usize>>,
    /// `to_class[l][cid]`: group element mapping the chain class onto `cid`.
    to_class: Vec<Vec<Perm>>,
    /// `children[l][cid][j]`: level-(l-1) class with label `j` inside `cid`.
    children: Vec<Vec<Vec<usize>>>,
    orbits: Vec<OrbitIdent>,
}

impl Identification {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_levels(&self) -> usize {
        self.members.len() - 1
    }

    pub fn members(&self) -> &[EquivRelation] {
        &self.members
    }

    /// The canonical point-to-point bijection from class `from` to class
    /// `to` (both level-l classes of one parent), as (source, image) pairs.
    pub fn canonical_bijection(
        &self,
        level: usize,
        from: usize,
        to: usize,
    ) -> Result<Vec<(usize, usize)>> {
        let t_from = &self.to_class[level][from];
        let t_to = &self.to_class[level][to];
        let back = t_from.inverse();
        let mut out = Vec::new();
        for &pt in &self.members[level].classes()[from] {
            out.push((pt, t_to.apply(back.apply(pt))));
        }
        Ok(out)
    }

    /// Label of a class within its parent.
    pub fn label_of(&self, level: usize, class_id: usize) -> usize {
        self.label[level][class_id]
    }

    /// Children class ids of a level-l class (l ≥ 1), indexed by label.
    pub fn children_of(&self, level: usize, class_id: usize) -> &[usize] {
        &self.children[level][class_id]
    }
}

/// Builds the identification for a normal flag of `group`.
pub fn build_identification(group: &PermGroup, flag: &Flag) -> Result<Identification> {
    if !validate_flag(flag, group, true, false)? {
        return Err(Error::precondition(
            "identification requires a normal flag of the group".to_string(),
        ));
    }
    build_identification_trusted(group, flag)
}

/// Same, for flags whose normality the caller has already established.
pub(crate) fn build_identification_trusted(
    group: &PermGroup,
    flag: &Flag,
) -> Result<Identification> {
    let n = group.degree();
    let members: Vec<EquivRelation> = flag.members().to_vec();
    let m = members.len() - 1;
    let mut label: Vec<Vec<usize>> = members.iter().map(|e| vec![0; e.num_classes()]).collect();
    let mut to_class: Vec<Vec<Perm>> = members
        .iter()
        .map(|e| vec![Perm::identity(n); e.num_classes()])
        .collect();
    let mut children: Vec<Vec<Vec<usize>>> = members
        .iter()
        .map(|e| vec![Vec::new(); e.num_classes()])
        .collect();
    // Class actions of the generators at every level, for BFS transversals.
    let class_actions: Vec<Vec<Perm>> = members
        .iter()
        .map(|e| {
            group
                .generators()
                .iter()
                .map(|g| {
                    induced_on_classes(g, e)
                        .ok_or_else(|| Error::internal("flag member not invariant".to_string()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut orbits = Vec::new();
    for top in members[m].classes() {
        let min_point = top[0];
        let chain: Vec<usize> = (0..=m).map(|l| members[l].class_index(min_point)).collect();
        let mut levels = Vec::new();
        for l in 1..=m {
            // Canonical children of the chain class at level l.
            let mut ids: Vec<usize> = members[l].classes()[chain[l]]
                .iter()
                .map(|&p| members[l - 1].class_index(p))
                .collect();
            ids.sort_unstable();
            ids.dedup();
            let mut canonical_children = vec![chain[l - 1]];
            canonical_children.extend(ids.iter().copied().filter(|&c| c != chain[l - 1]));
            // BFS transversal over level-(l-1) classes from the chain child.
            let reps = class_bfs_transversal(
                group,
                &class_actions[l - 1],
                members[l - 1].num_classes(),
                chain[l - 1],
            );
            let v: Vec<Perm> = canonical_children
                .iter()
                .map(|&cid| {
                    reps[cid].clone().ok_or_else(|| {
                        Error::internal("sibling class not reachable in the orbit".to_string())
                    })
                })
                .collect::<Result<_>>()?;
            // Local quotient group on the child labels. Computed on the
            // finer quotient domain, where block stabilizers are cheap;
            // degenerate levels (one child) have a trivial local group.
            let width = canonical_children.len();
            let local_gens = if width == 1 {
                Vec::new()
            } else {
                let finer = quotient_image(group, &members[l - 1])?;
                let coarse = members[l].lift_to_quotient(&members[l - 1])?;
                let stab = block_stabilizer(&finer, &coarse, coarse.class_index(chain[l - 1]))?;
                let pos_of: std::collections::HashMap<usize, usize> = canonical_children
                    .iter()
                    .enumerate()
                    .map(|(j, &cid)| (cid, j))
                    .collect();
                let local: Vec<Perm> = stab
                    .generators()
                    .iter()
                    .map(|h| {
                        let images: Vec<usize> = canonical_children
                            .iter()
                            .map(|&cid| pos_of[&h.apply(cid)])
                            .collect();
                        Perm::from_images(images)
                            .expect("block stabilizer permutes the child classes")
                    })
                    .collect();
                let local_group = PermGroup::from_generators_reduced(width, &local, &[])?;
                local_group.generators().to_vec()
            };
            levels.push(OrbitLevel {
                canonical_children,
                v,
                local_gens,
            });
        }
        orbits.push(OrbitIdent { chain, levels });
    }

    // Assign labels and transversal elements to every class, top down.
    for orbit in &orbits {
        let m = orbits_levels_len(orbit);
        let top_cid = orbit.chain[m];
        label[m][top_cid] = 0;
        to_class[m][top_cid] = Perm::identity(n);
        let mut stack: Vec<(usize, usize)> = vec![(m, top_cid)];
        while let Some((l, cid)) = stack.pop() {
            if l == 0 {
                continue;
            }
            let level = &orbit.levels[l - 1];
            let t = to_class[l][cid].clone();
            let mut kids = Vec::with_capacity(level.canonical_children.len());
            for (j, &canon_cid) in level.canonical_children.iter().enumerate() {
                let probe = members[l - 1].classes()[canon_cid][0];
                let image_cid = members[l - 1].class_index(t.apply(probe));
                label[l - 1][image_cid] = j;
                to_class[l - 1][image_cid] = level.v[j].then(&t);
                kids.push(image_cid);
                stack.push((l - 1, image_cid));
            }
            children[l][cid] = kids;
        }
    }

    let id = Identification {
        degree: n,
        members,
        label,
        to_class,
        children,
        orbits,
    };
    // The induced coordinates must identify each orbit with the product of
    // its layers: decode every point and check addresses are distinct.
    for top in id.members[m].classes() {
        let mut seen = std::collections::HashSet::new();
        for &pt in top {
            let address: Vec<usize> = (0..m)
                .map(|l| id.label[l][id.members[l].class_index(pt)])
                .collect();
            if !seen.insert(address) {
                return Err(Error::internal(
                    "identification addresses are not distinct".to_string(),
                ));
            }
        }
    }
    Ok(id)
}

fn orbits_levels_len(orbit: &OrbitIdent) -> usize {
    orbit.levels.len()
}

/// BFS transversal over the classes of one level: `reps[cid]` maps the start
/// class onto `cid` (None outside the start's orbit).
fn class_bfs_transversal(
    group: &PermGroup,
    class_actions: &[Perm],
    num_classes: usize,
    start: usize,
) -> Vec<Option<Perm>> {
    let mut reps: Vec<Option<Perm>> = vec![None; num_classes];
    reps[start] = Some(Perm::identity(group.degree()));
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let cid = queue[head];
        head += 1;
        let rep = reps[cid].clone().unwrap();
        for (g, action) in group.generators().iter().zip(class_actions) {
            let img = action.apply(cid);
            if reps[img].is_none() {
                reps[img] = Some(rep.then(g));
                queue.push(img);
            }
        }
    }
    reps
}

/// Generators of the majorant `W_F(G)`: for every orbit and level, the local
/// quotient group implanted at the canonical chain class (transported to the
/// sibling classes through the pinned transversals), all orbits combined by
/// direct product.
pub fn majorant_generators(
    group: &PermGroup,
    flag: &Flag,
    id: &Identification,
) -> Result<PermGroup> {
    let n = group.degree();
    if flag.degree() != n || id.degree != n {
        return Err(Error::input(
            "degree mismatch in majorant_generators".to_string(),
        ));
    }
    let mut gens: Vec<Perm> = Vec::new();
    for orbit in &id.orbits {
        for (lm1, level) in orbit.levels.iter().enumerate() {
            let l = lm1 + 1;
            if level.canonical_children.len() == 1 {
                continue;
            }
            for local in &level.local_gens {
                let mut images: Vec<usize> = (0..n).collect();
                for (j, &cid) in level.canonical_children.iter().enumerate() {
                    let back = level.v[j].inverse();
                    let fwd = &level.v[local.apply(j)];
                    for &pt in &id.members[l - 1].classes()[cid] {
                        images[pt] = fwd.apply(back.apply(pt));
                    }
                }
                gens.push(Perm::from_images(images)?);
            }
        }
    }
    let w = PermGroup::from_generators_reduced(n, &gens, &[])?;
    // G embeds in its own majorant.
    for g in group.generators() {
        if !w.contains_unchecked(g) {
            return Err(Error::internal(
                "group is not contained in its majorant".to_string(),
            ));
        }
    }
    Ok(w)
}

/// The Δ-coordinates of `k` at one flag level, plus the residual action on
/// the level's quotient.
pub struct StandardRep {
    pub level: usize,
    /// For each class `D` of the level member (by class id): the label
    /// permutation induced on `D`'s children.
    pub coords: Vec<(usize, Perm)>,
    /// Action of `k` on the classes of the level member.
    pub residual: Perm,
}

/// Extracts the standard representation of `k ∈ W` at `level`.
pub fn delta_coordinates(
    k: &Perm,
    level: usize,
    majorant: &PermGroup,
    id: &Identification,
) -> Result<StandardRep> {
    if level == 0 || level > id.num_levels() {
        return Err(Error::input("coordinate level out of range".to_string()));
    }
    if !majorant.contains(k)? {
        return Err(Error::precondition(
            "permutation lies outside the majorant".to_string(),
        ));
    }
    let e = &id.members[level];
    let e_prev = &id.members[level - 1];
    let residual = induced_on_classes(k, e).ok_or_else(|| {
        Error::internal("majorant element does not preserve the flag".to_string())
    })?;
    let mut coords = Vec::with_capacity(e.num_classes());
    for cid in 0..e.num_classes() {
        let kids = &id.children[level][cid];
        let images: Vec<usize> = kids
            .iter()
            .map(|&child| {
                let probe = e_prev.classes()[child][0];
                id.label[level - 1][e_prev.class_index(k.apply(probe))]
            })
            .collect();
        let local = Perm::from_images(images)
            .map_err(|_| Error::internal("coordinate is not a label permutation".to_string()))?;
        coords.push((cid, local));
    }
    Ok(StandardRep {
        level,
        coords,
        residual,
    })
}

/// Rebuilds a permutation from its coordinates at every level; the result
/// must equal the original for any majorant element.
pub fn recompose(id: &Identification, reps: &[StandardRep]) -> Result<Perm> {
    let m = id.num_levels();
    if reps.len() != m {
        return Err(Error::input(
            "recompose needs one representation per level".to_string(),
        ));
    }
    for (l, rep) in reps.iter().enumerate() {
        if rep.level != l + 1 {
            return Err(Error::input(
                "representations must be ordered by level".to_string(),
            ));
        }
    }
    let n = id.degree;
    let mut images = Vec::with_capacity(n);
    for pt in 0..n {
        if m == 0 {
            images.push(pt);
            continue;
        }
        // Walk down the class chain, rewriting labels level by level.
        let mut image_class = id.members[m].class_index(pt); // orbits are fixed setwise
        for l in (1..=m).rev() {
            let source_class = id.members[l].class_index(pt);
            let source_label = id.label[l - 1][id.members[l - 1].class_index(pt)];
            let coord = &reps[l - 1].coords[source_class].1;
            let image_label = coord.apply(source_label);
            image_class = id.children[l][image_class][image_label];
        }
        let class = &id.members[0].classes()[image_class];
        images.push(class[0]);
    }
    Perm::from_images(images)
        .map_err(|_| Error::internal("recomposition is not a bijection".to_string()))
}

/// The relative closure `K = Aut(two_orbits(G)) ∩ W_F(G)` of a solvable
/// group with respect to a normal flag.
pub fn relative_closure(group: &PermGroup, flag: &Flag) -> Result<PermGroup> {
    if !group.is_solvable() {
        return Err(Error::precondition(
            "relative closure requires a solvable group".to_string(),
        ));
    }
    let id = build_identification(group, flag)?;
    let w = majorant_generators(group, flag, &id)?;
    if !w.is_solvable() {
        return Err(Error::internal(
            "majorant of a solvable group must be solvable".to_string(),
        ));
    }
    let coloring = two_orbits(group);
    aut_in_group_seeded(&coloring, &w, group.generators())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::maximal_normal_flag;
    use num_bigint::BigUint;

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
    fn majorant_of_c2_is_c2() {
        let c2 = cyclic(2);
        let flag = maximal_normal_flag(&c2).unwrap();
        let id = build_identification(&c2, &flag).unwrap();
        let w = majorant_generators(&c2, &flag, &id).unwrap();
        assert_eq!(w.order_u64(), Some(2));
    }

    #[test]
    fn majorant_of_c4_is_dihedral_of_order_8() {
        let c4 = cyclic(4);
        let flag = maximal_normal_flag(&c4).unwrap();
        let id = build_identification(&c4, &flag).unwrap();
        let w = majorant_generators(&c4, &flag, &id).unwrap();
        assert_eq!(w.order_u64(), Some(8));
        assert!(w.contains_group(&c4).unwrap());
    }

    #[test]
    fn majorant_of_agl_is_agl() {
        let g = agl1_5();
        let flag = maximal_normal_flag(&g).unwrap();
        let id = build_identification(&g, &flag).unwrap();
        let w = majorant_generators(&g, &flag, &id).unwrap();
        assert!(w.same_group(&g).unwrap());
    }

    #[test]
    fn majorant_order_is_product_of_slice_powers() {
        // order(W) = Π over orbits, levels |local|^(number of level classes
        // inside the orbit).
        let c4 = cyclic(4);
        let flag = maximal_normal_flag(&c4).unwrap();
        let id = build_identification(&c4, &flag).unwrap();
        let w = majorant_generators(&c4, &flag, &id).unwrap();
        let mut expected = BigUint::from(1u32);
        for orbit in &id.orbits {
            for (lm1, level) in orbit.levels.iter().enumerate() {
                let local = PermGroup::from_generators(
                    level.canonical_children.len(),
                    level.local_gens.clone(),
                )
                .unwrap();
                let orbit_points =
                    id.members[id.num_levels()].classes()[orbit.chain[id.num_levels()]].len();
                let class_size = id.members[lm1 + 1].classes()[orbit.chain[lm1 + 1]].len();
                let slices = orbit_points / class_size;
                let mut power = BigUint::from(1u32);
                for _ in 0..slices {
                    power *= local.order();
                }
                expected *= power;
            }
        }
        assert_eq!(w.order(), &expected);
    }

    #[test]
    fn majorant_is_idempotent_at_small_scale() {
        let c4 = cyclic(4);
        let flag = maximal_normal_flag(&c4).unwrap();
        let id = build_identification(&c4, &flag).unwrap();
        let w = majorant_generators(&c4, &flag, &id).unwrap();
        let id_w = build_identification(&w, &flag).unwrap();
        let w2 = majorant_generators(&w, &flag, &id_w).unwrap();
        assert!(w.same_group(&w2).unwrap());
    }

    #[test]
    fn delta_coordinates_of_identity_and_top_swap() {
        let c4 = cyclic(4);
        let flag = maximal_normal_flag(&c4).unwrap();
        let id = build_identification(&c4, &flag).unwrap();
        let w = majorant_generators(&c4, &flag, &id).unwrap();

        let idy = Perm::identity(4);
        for level in 1..=2 {
            let rep = delta_coordinates(&idy, level, &w, &id).unwrap();
            assert!(rep.residual.is_identity());
            assert!(rep.coords.iter().all(|(_, p)| p.is_identity()));
        }

        // Top swap: exchanges the two classes of the middle member via the
        // canonical transversal; its level-1 coordinates are identities.
        let swap = Perm::from_cycles(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(w.contains(&swap).unwrap());
        let rep1 = delta_coordinates(&swap, 1, &w, &id).unwrap();
        assert!(rep1.coords.iter().all(|(_, p)| p.is_identity()));
        let rep2 = delta_coordinates(&swap, 2, &w, &id).unwrap();
        assert!(!rep2.residual.is_identity() || !rep2.coords.iter().all(|(_, p)| p.is_identity()));
    }

    #[test]
    fn recomposition_reproduces_every_element() {
        let c4 = cyclic(4);
        let flag = maximal_normal_flag(&c4).unwrap();
        let id = build_identification(&c4, &flag).unwrap();
        let w = majorant_generators(&c4, &flag, &id).unwrap();
        for k in w.elements(64).unwrap() {
            let reps: Vec<StandardRep> = (1..=2)
                .map(|l| delta_coordinates(&k, l, &w, &id).unwrap())
                .collect();
            assert_eq!(recompose(&id, &reps).unwrap(), k);
        }
    }

    #[test]
    fn coordinate_product_law_for_quotient_trivial_left_factor() {
        // (l·k) coordinates are l's times k's when l acts trivially on the
        // level quotient.
        let c4 = cyclic(4);
        let flag = maximal_normal_flag(&c4).unwrap();
        let id = build_identification(&c4, &flag).unwrap();
        let w = majorant_generators(&c4, &flag, &id).unwrap();
        let elems = w.elements(64).unwrap();
        for l in &elems {
            for k in &elems {
                let rep_l = delta_coordinates(l, 1, &w, &id).unwrap();
                if !rep_l.residual.is_identity() {
                    continue;
                }
                let rep_k = delta_coordinates(k, 1, &w, &id).unwrap();
                let rep_lk = delta_coordinates(&l.then(k), 1, &w, &id).unwrap();
                assert_eq!(rep_lk.residual, rep_k.residual);
                for (cid, coord) in &rep_lk.coords {
                    // D maps to itself under l, so labels compose in order.
                    let l_coord = &rep_l.coords[*cid].1;
                    let k_class = rep_l.residual.apply(*cid);
                    let k_coord = &rep_k.coords[k_class].1;
                    assert_eq!(coord, &l_coord.then(k_coord));
                }
            }
        }
    }

    #[test]
    fn canonical_bijections_compose_coherently() {
        let w = wreath_222();
        let flag = maximal_normal_flag(&w).unwrap();
        let id = build_identification(&w, &flag).unwrap();
        // Level-1 classes: pairs inside one level-2 class compose through a
        // third sibling exactly as the direct bijection.
        for level in 1..=2usize {
            let classes = id.members()[level - 1].num_classes();
            for a in 0..classes {
                for b in 0..classes {
                    for c in 0..classes {
                        let same_parent = id.members()[level]
                            .class_index(id.members()[level - 1].classes()[a][0])
                            == id.members()[level]
                                .class_index(id.members()[level - 1].classes()[b][0])
                            && id.members()[level]
                                .class_index(id.members()[level - 1].classes()[b][0])
                                == id.members()[level]
                                    .class_index(id.members()[level - 1].classes()[c][0]);
                        if !same_parent {
                            continue;
                        }
                        let ab: std::collections::BTreeMap<usize, usize> = id
                            .canonical_bijection(level - 1, a, b)
                            .unwrap()
                            .into_iter()
                            .collect();
                        let bc: std::collections::BTreeMap<usize, usize> = id
                            .canonical_bijection(level - 1, b, c)
                            .unwrap()
                            .into_iter()
                            .collect();
                        let ac = id.canonical_bijection(level - 1, a, c).unwrap();
                        for (src, dst) in ac {
                            assert_eq!(bc[&ab[&src]], dst);
                        }
                    }
                }
            }
        }
    }

    fn wreath_222() -> PermGroup {
        let bottom = Perm::from_cycles(8, &[vec![0, 1]]).unwrap();
        let mid = Perm::from_cycles(8, &[vec![0, 2], vec![1, 3]]).unwrap();
        let top = Perm::from_cycles(8, &[vec![0, 4], vec![1, 5], vec![2, 6], vec![3, 7]]).unwrap();
        PermGroup::from_generators(8, vec![bottom, mid, top]).unwrap()
    }

    #[test]
    fn identification_of_trivial_group_is_singleton_products() {
        let g = PermGroup::trivial(3);
        let flag = maximal_normal_flag(&g).unwrap();
        let id = build_identification(&g, &flag).unwrap();
        assert_eq!(id.num_levels(), 0);
        let w = majorant_generators(&g, &flag, &id).unwrap();
        assert!(w.is_trivial());
    }

    #[test]
    fn relative_closure_examples() {
        let g = agl1_5();
        let flag = maximal_normal_flag(&g).unwrap();
        let k = relative_closure(&g, &flag).unwrap();
        assert!(k.same_group(&g).unwrap());

        let c5 = cyclic(5);
        let flag5 = maximal_normal_flag(&c5).unwrap();
        let k5 = relative_closure(&c5, &flag5).unwrap();
        assert!(k5.same_group(&c5).unwrap());
    }

    #[test]
    fn relative_closure_of_diagonal_c3() {
        // Diagonal C3 on 6 points: K must be 2-equivalent to G.
        let g = PermGroup::from_generators(
            6,
            vec![Perm::from_cycles(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap()],
        )
        .unwrap();
        let flag = maximal_normal_flag(&g).unwrap();
        let k = relative_closure(&g, &flag).unwrap();
        assert!(k.contains_group(&g).unwrap());
        let ov_g = crate::orbitals::brute_force_closure(&g).unwrap();
        let ov_k = crate::orbitals::brute_force_closure(&k).unwrap();
        assert!(ov_g.same_group(&ov_k).unwrap());
    }

    #[test]
    fn relative_closure_refuses_nonsolvable_groups() {
        let t = Perm::from_cycles(5, &[vec![0, 1]]).unwrap();
        let c = Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
        let sym5 = PermGroup::from_generators(5, vec![t, c]).unwrap();
        let flag = maximal_normal_flag(&sym5).unwrap();
        assert!(relative_closure(&sym5, &flag).is_err());
    }
}
