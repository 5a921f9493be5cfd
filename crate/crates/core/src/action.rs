//! Induced actions: on the class set of an invariant relation, and on an
//! invariant (or arbitrary, via the setwise stabilizer) subset.
//!
//! Kernels are computed with an extended-domain BSGS: glue the target points
//! in front of the original domain, put them first in the base, and read the
//! kernel off the stabilizer chain at the cut.

use crate::error::Error;
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::relations::EquivRelation;
use crate::Result;

/// How the target points of an induced action arise from the source.
#[derive(Clone, Debug)]
pub enum PointMap {
    /// Target points are the classes of a relation, ordered by least element.
    Quotient(EquivRelation),
    /// Target points are the listed source points, in sorted order.
    Restriction(Vec<usize>),
}

/// An induced action together with its image and kernel.
#[derive(Clone)]
pub struct ActionImage {
    pub point_map: PointMap,
    pub target_degree: usize,
    /// The induced group on the target points.
    pub image: PermGroup,
    /// Elements of the source acting trivially on the target, as a subgroup
    /// of the source (full original degree).
    pub kernel: PermGroup,
}

/// Permutation induced on the classes of `e` by `p`, if classes map to
/// classes.
pub fn induced_on_classes(p: &Perm, e: &EquivRelation) -> Option<Perm> {
    let mut images = vec![usize::MAX; e.num_classes()];
    for (id, class) in e.classes().iter().enumerate() {
        let target = e.class_index(p.apply(class[0]));
        if class.iter().any(|&pt| e.class_index(p.apply(pt)) != target) {
            return None;
        }
        images[id] = target;
    }
    Perm::from_images(images).ok()
}

/// The induced group on `Ω/e` alone, without computing the kernel.
pub fn quotient_image(group: &PermGroup, e: &EquivRelation) -> Result<PermGroup> {
    if group.degree() != e.degree() {
        return Err(Error::input(
            "degree mismatch in quotient_image".to_string(),
        ));
    }
    let mut target_gens = Vec::with_capacity(group.generators().len());
    for g in group.generators() {
        match induced_on_classes(g, e) {
            Some(img) => target_gens.push(img),
            None => {
                return Err(Error::precondition(
                    "relation is not invariant under the group".to_string(),
                ))
            }
        }
    }
    PermGroup::from_generators(e.num_classes(), target_gens)
}

/// Memoized kernels `G_e` for one fixed group. Keys are the relations; the
/// caller must not mix groups within one cache.
#[derive(Default)]
pub(crate) struct KernelCache {
    map: std::collections::HashMap<EquivRelation, PermGroup>,
}

impl KernelCache {
    pub fn new() -> KernelCache {
        KernelCache::default()
    }

    pub fn kernel(&mut self, group: &PermGroup, e: &EquivRelation) -> Result<PermGroup> {
        if let Some(hit) = self.map.get(e) {
            return Ok(hit.clone());
        }
        let kernel = quotient_action(group, e)?.kernel;
        self.map.insert(e.clone(), kernel.clone());
        Ok(kernel)
    }
}

/// The action of `group` on `Ω/e` with its kernel `G_e`.
pub fn quotient_action(group: &PermGroup, e: &EquivRelation) -> Result<ActionImage> {
    if group.degree() != e.degree() {
        return Err(Error::input(
            "degree mismatch in quotient_action".to_string(),
        ));
    }
    let mut target_gens = Vec::with_capacity(group.generators().len());
    for g in group.generators() {
        match induced_on_classes(g, e) {
            Some(img) => target_gens.push(img),
            None => {
                return Err(Error::precondition(
                    "relation is not invariant under the group".to_string(),
                ))
            }
        }
    }
    split_action(
        group,
        e.num_classes(),
        &target_gens,
        PointMap::Quotient(e.clone()),
    )
}

/// The action `G^Δ = (G_{{Δ}})^Δ`: restrict the setwise stabilizer of `delta`
/// to `delta`, relabelled to `{0..|delta|-1}`.
pub fn restricted_action(group: &PermGroup, delta: &[usize]) -> Result<ActionImage> {
    let mut pts: Vec<usize> = delta.to_vec();
    pts.sort_unstable();
    pts.dedup();
    for &pt in &pts {
        if pt >= group.degree() {
            return Err(Error::input(format!(
                "point {pt} out of range for degree {}",
                group.degree()
            )));
        }
    }
    // If delta is a union of orbits the stabilizer is the whole group.
    let is_union_of_orbits = {
        let orbits = group.orbits();
        let mut included = vec![false; group.degree()];
        for &pt in &pts {
            included[pt] = true;
        }
        orbits
            .classes()
            .iter()
            .all(|class| class.iter().all(|&p| included[p]) || class.iter().all(|&p| !included[p]))
    };
    let stab = if is_union_of_orbits {
        group.clone()
    } else {
        group.setwise_stabilizer(&pts)?
    };
    let mut local = vec![usize::MAX; group.degree()];
    for (i, &pt) in pts.iter().enumerate() {
        local[pt] = i;
    }
    let target_gens: Vec<Perm> = stab
        .generators()
        .iter()
        .map(|g| {
            let images: Vec<usize> = pts.iter().map(|&pt| local[g.apply(pt)]).collect();
            Perm::from_images(images).expect("restriction of a stabilizer element is a bijection")
        })
        .collect();
    split_action(&stab, pts.len(), &target_gens, PointMap::Restriction(pts))
}

/// Shared image/kernel computation: `target_gens[i]` is the action of
/// `source.generators()[i]` on the target points.
pub(crate) fn split_action(
    source: &PermGroup,
    target_degree: usize,
    target_gens: &[Perm],
    point_map: PointMap,
) -> Result<ActionImage> {
    let image = PermGroup::from_generators(target_degree, target_gens.to_vec())?;
    let n = source.degree();
    let ext_degree = target_degree + n;
    let mut ext_gens = Vec::with_capacity(target_gens.len());
    for (g, t) in source.generators().iter().zip(target_gens) {
        let mut images = Vec::with_capacity(ext_degree);
        for pt in 0..target_degree {
            images.push(t.apply(pt));
        }
        for pt in 0..n {
            images.push(target_degree + g.apply(pt));
        }
        ext_gens.push(Perm::from_images(images)?);
    }
    let hint: Vec<usize> = (0..target_degree).collect();
    let ext = PermGroup::from_generators_with_hint(ext_degree, ext_gens, &hint)?;
    let kernel_gens: Vec<Perm> = ext
        .level_gens(target_degree)
        .iter()
        .map(|g| {
            let images: Vec<usize> = (0..n)
                .map(|pt| g.apply(target_degree + pt) - target_degree)
                .collect();
            Perm::from_images(images).expect("kernel element restricts to the source domain")
        })
        .collect();
    let kernel = PermGroup::from_generators_reduced(n, &kernel_gens, &[])?;
    // |G| = |image| · |kernel| by orbit counting on the chain.
    if image.order() * kernel.order() != *source.order() {
        return Err(Error::internal(
            "image/kernel order product mismatch".to_string(),
        ));
    }
    Ok(ActionImage {
        point_map,
        target_degree,
        image,
        kernel,
    })
}

/// Setwise stabilizer of one class of an invariant relation, read off an
/// extended-domain stabilizer chain (no backtrack needed for blocks).
pub(crate) fn block_stabilizer(
    group: &PermGroup,
    e: &EquivRelation,
    class_id: usize,
) -> Result<PermGroup> {
    let n = group.degree();
    let classes = e.num_classes();
    let mut ext_gens = Vec::with_capacity(group.generators().len());
    for g in group.generators() {
        let t = induced_on_classes(g, e).ok_or_else(|| {
            Error::precondition("relation is not invariant under the group".to_string())
        })?;
        let mut images = Vec::with_capacity(classes + n);
        for pt in 0..classes {
            images.push(t.apply(pt));
        }
        for pt in 0..n {
            images.push(classes + g.apply(pt));
        }
        ext_gens.push(Perm::from_images(images)?);
    }
    let ext = PermGroup::from_generators_with_hint(classes + n, ext_gens, &[class_id])?;
    let stab_gens: Vec<Perm> = ext
        .level_gens(1)
        .iter()
        .map(|g| {
            let images: Vec<usize> = (0..n).map(|pt| g.apply(classes + pt) - classes).collect();
            Perm::from_images(images).expect("stabilizer element restricts to the domain")
        })
        .collect();
    PermGroup::from_generators_reduced(n, &stab_gens, &[])
}
