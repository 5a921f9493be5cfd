//! Permutation groups with a base and strong generating set.
//!
//! The chain is built by deterministic Schreier–Sims with explicit
//! transversals: base points are chosen as least moved points (after any
//! caller-supplied prefix), orbits are BFS in generator order, and every
//! derived quantity (order, membership, element enumeration) comes from the
//! chain. Determinism matters here: closure outputs and certificates are
//! compared bit-for-bit in tests.

use num_bigint::BigUint;

use crate::backtrack;
use crate::error::Error;
use crate::perm::Perm;
use crate::relations::EquivRelation;
use crate::Result;

#[derive(Clone)]
struct Level {
    point: usize,
    /// Strong generators fixing all earlier base points.
    gens: Vec<Perm>,
    /// Orbit of `point` under `gens`, in BFS discovery order.
    orbit: Vec<usize>,
    /// `transversal[p]` maps `point` to `p`; indexed by point.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(degree: usize, point: usize) -> Level {
        Level {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.transversal = vec![None; degree];
        self.orbit.push(self.point);
        self.transversal[self.point] = Some(Perm::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let pt = self.orbit[head];
            head += 1;
            let rep = self.transversal[pt].clone().unwrap();
            for g in &self.gens {
                let img = g.apply(pt);
                if self.transversal[img].is_none() {
                    self.transversal[img] = Some(rep.then(g));
                    self.orbit.push(img);
                }
            }
        }
    }
}

/// A permutation group given by generators, with a BSGS for queries.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    levels: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            gens: Vec::new(),
            levels: Vec::new(),
            order: BigUint::from(1u32),
        }
    }

    /// Builds a group from generators, keeping the generator list as given.
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        Self::from_generators_with_hint(degree, gens, &[])
    }

    /// Same, but the base starts with the given points (in order). A hint
    /// aligns stabilizer prefixes across groups, which the backtrack engine
    /// relies on.
    pub fn from_generators_with_hint(
        degree: usize,
        gens: Vec<Perm>,
        base_hint: &[usize],
    ) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::input(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        for &pt in base_hint {
            if pt >= degree {
                return Err(Error::input(format!(
                    "base point {pt} out of range for degree {degree}"
                )));
            }
        }
        let mut group = PermGroup {
            degree,
            gens,
            levels: Vec::new(),
            order: BigUint::from(1u32),
        };
        let mut seen = vec![false; degree];
        for &pt in base_hint {
            if !seen[pt] {
                seen[pt] = true;
                group.levels.push(Level::new(degree, pt));
            }
        }
        group.rebuild_chain();
        Ok(group)
    }

    /// Builds a group generator-by-generator, keeping only generators that
    /// enlarge the group. Used internally wherever generator lists would
    /// otherwise pile up (kernels, closures).
    pub fn from_generators_reduced(
        degree: usize,
        gens: &[Perm],
        base_hint: &[usize],
    ) -> Result<PermGroup> {
        let mut group = Self::from_generators_with_hint(degree, Vec::new(), base_hint)?;
        for g in gens {
            if g.degree() != degree {
                return Err(Error::input(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
            if !group.contains_unchecked(g) {
                group.add_generator(g.clone());
            }
        }
        Ok(group)
    }

    fn rebuild_chain(&mut self) {
        let work: Vec<Perm> = {
            let mut seen = std::collections::HashSet::new();
            self.gens
                .iter()
                .filter(|g| !g.is_identity() && seen.insert((*g).clone()))
                .cloned()
                .collect()
        };
        // Every working generator must move some base point.
        for g in &work {
            if !self.levels.iter().any(|l| g.apply(l.point) != l.point) {
                if let Some(pt) = g.min_moved() {
                    self.levels.push(Level::new(self.degree, pt));
                }
            }
        }
        // Level i holds the working generators fixing the first i base points.
        for level in self.levels.iter_mut() {
            level.gens.clear();
        }
        for g in &work {
            for i in 0..self.levels.len() {
                self.levels[i].gens.push(g.clone());
                if g.apply(self.levels[i].point) != self.levels[i].point {
                    break;
                }
            }
        }
        for i in (0..self.levels.len()).rev() {
            self.schreier_sims(i);
        }
        self.recompute_order();
    }

    /// Adds one generator to an already-complete chain and re-completes it.
    fn add_generator(&mut self, g: Perm) {
        if g.is_identity() {
            return;
        }
        if !self.levels.iter().any(|l| g.apply(l.point) != l.point) {
            let pt = g
                .min_moved()
                .expect("non-identity permutation moves a point");
            self.levels.push(Level::new(self.degree, pt));
        }
        self.gens.push(g.clone());
        let mut i = 0;
        loop {
            self.levels[i].gens.push(g.clone());
            if g.apply(self.levels[i].point) != self.levels[i].point || i + 1 >= self.levels.len() {
                break;
            }
            i += 1;
        }
        for k in (0..=i).rev() {
            self.schreier_sims(k);
        }
        self.recompute_order();
    }

    /// Completes the chain from `level` down, in the textbook recursive way.
    fn schreier_sims(&mut self, level: usize) {
        self.levels[level].recompute_orbit(self.degree);
        let mut idx = 0;
        while idx < self.levels[level].orbit.len() {
            let pt = self.levels[level].orbit[idx];
            idx += 1;
            let rep = self.levels[level].transversal[pt].clone().unwrap();
            let gens = self.levels[level].gens.clone();
            for g in &gens {
                let img = g.apply(pt);
                let rep_img = self.levels[level].transversal[img].clone().unwrap();
                let forward = rep.then(g);
                if forward == rep_img {
                    continue;
                }
                let schreier = forward.then(&rep_img.inverse());
                if let Some((residue, fail_level)) = self.strip_from(&schreier, level + 1) {
                    let fail_level = if fail_level == self.levels.len() {
                        let new_pt = residue
                            .min_moved()
                            .expect("non-identity residue moves a point");
                        self.levels.push(Level::new(self.degree, new_pt));
                        self.levels.len() - 1
                    } else {
                        fail_level
                    };
                    for k in level + 1..=fail_level {
                        self.levels[k].gens.push(residue.clone());
                    }
                    for k in (level + 1..=fail_level).rev() {
                        self.schreier_sims(k);
                    }
                }
            }
        }
    }

    /// Sifts `p` through levels `start..`. Returns the residue and the level
    /// where sifting got stuck; `None` means `p` sifted to the identity.
    fn strip_from(&self, p: &Perm, start: usize) -> Option<(Perm, usize)> {
        let mut residue = p.clone();
        for j in start..self.levels.len() {
            let target = residue.apply(self.levels[j].point);
            if target == self.levels[j].point {
                // Transversal entry at the base point is the identity.
                continue;
            }
            match &self.levels[j].transversal[target] {
                None => return Some((residue, j)),
                Some(t) => residue = residue.then(&t.inverse()),
            }
        }
        if residue.is_identity() {
            None
        } else {
            Some((residue, self.levels.len()))
        }
    }

    fn recompute_order(&mut self) {
        let mut order = BigUint::from(1u32);
        for level in &self.levels {
            order *= BigUint::from(level.orbit.len());
        }
        self.order = order;
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The generator list as given at construction.
    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.order).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == BigUint::from(1u32)
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub(crate) fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub(crate) fn level_point(&self, i: usize) -> usize {
        self.levels[i].point
    }

    pub(crate) fn level_orbit(&self, i: usize) -> &[usize] {
        &self.levels[i].orbit
    }

    pub(crate) fn level_transversal(&self, i: usize, pt: usize) -> Option<&Perm> {
        self.levels[i].transversal[pt].as_ref()
    }

    /// Generators of the stabilizer of the first `i` base points.
    pub(crate) fn level_gens(&self, i: usize) -> &[Perm] {
        static EMPTY: &[Perm] = &[];
        if i < self.levels.len() {
            &self.levels[i].gens
        } else {
            EMPTY
        }
    }

    /// Membership test by sifting. Errors on degree mismatch.
    pub fn contains(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::input(format!(
                "permutation degree {} does not match group degree {}",
                p.degree(),
                self.degree
            )));
        }
        Ok(self.contains_unchecked(p))
    }

    pub(crate) fn contains_unchecked(&self, p: &Perm) -> bool {
        self.strip_from(p, 0).is_none()
    }

    /// Orbit of a point under the whole group, sorted.
    pub fn orbit_of(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point] = true;
        let mut head = 0;
        while head < orbit.len() {
            let pt = orbit[head];
            head += 1;
            for g in &self.gens {
                let img = g.apply(pt);
                if !seen[img] {
                    seen[img] = true;
                    orbit.push(img);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// The orbit partition of the group.
    pub fn orbits(&self) -> EquivRelation {
        let mut class_of = vec![usize::MAX; self.degree];
        let mut next = 0;
        for start in 0..self.degree {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = next;
            next += 1;
            let mut stack = vec![start];
            class_of[start] = id;
            while let Some(pt) = stack.pop() {
                for g in &self.gens {
                    let img = g.apply(pt);
                    if class_of[img] == usize::MAX {
                        class_of[img] = id;
                        stack.push(img);
                    }
                }
            }
        }
        EquivRelation::from_class_indices(self.degree, &class_of)
            .expect("orbit partition is a valid partition")
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit_of(0).len() == self.degree
    }

    /// Subgroup fixing every point of `pts`.
    pub fn pointwise_stabilizer(&self, pts: &[usize]) -> Result<PermGroup> {
        let mut hint = Vec::new();
        for &pt in pts {
            if pt >= self.degree {
                return Err(Error::input(format!(
                    "point {pt} out of range for degree {}",
                    self.degree
                )));
            }
            if !hint.contains(&pt) {
                hint.push(pt);
            }
        }
        let aligned = Self::from_generators_with_hint(self.degree, self.strong_gens(), &hint)?;
        let cut = hint.len();
        PermGroup::from_generators_reduced(self.degree, aligned.level_gens(cut), &[])
    }

    /// Subgroup preserving `block` setwise, by backtrack over the chain.
    pub fn setwise_stabilizer(&self, block: &[usize]) -> Result<PermGroup> {
        for &pt in block {
            if pt >= self.degree {
                return Err(Error::input(format!(
                    "point {pt} out of range for degree {}",
                    self.degree
                )));
            }
        }
        let mut in_block = vec![false; self.degree];
        for &pt in block {
            in_block[pt] = true;
        }
        backtrack::subgroup_search(
            self,
            &|a: usize, b: usize| in_block[a] == in_block[b],
            &|_a: usize, _b: usize, _c: usize, _d: usize| true,
            &|g: &Perm| (0..self.degree).all(|p| in_block[p] == in_block[g.apply(p)]),
            Vec::new(),
        )
    }

    /// All strong generators (generators of every chain level).
    pub(crate) fn strong_gens(&self) -> Vec<Perm> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for level in &self.levels {
            for g in &level.gens {
                if seen.insert(g.clone()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Smallest normal subgroup of `self` containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Perm]) -> Result<PermGroup> {
        for s in seeds {
            if !self.contains(s)? {
                return Err(Error::precondition(
                    "normal closure seed lies outside the group".to_string(),
                ));
            }
        }
        Ok(self.normal_closure_unchecked(seeds))
    }

    pub(crate) fn normal_closure_unchecked(&self, seeds: &[Perm]) -> PermGroup {
        let mut closure = PermGroup::from_generators_reduced(self.degree, seeds, &[])
            .expect("seeds have matching degree");
        let mut queue: Vec<Perm> = closure.generators().to_vec();
        while let Some(x) = queue.pop() {
            for g in &self.gens {
                let conj = x.conjugate_by(g);
                if !closure.contains_unchecked(&conj) {
                    closure.add_generator(conj.clone());
                    queue.push(conj);
                }
            }
        }
        closure
    }

    /// The group generated by `self` and `extra`.
    pub fn closure_with(&self, extra: &[Perm]) -> Result<PermGroup> {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(extra);
        let all = gens;
        let mut group = PermGroup::from_generators_with_hint(self.degree, Vec::new(), &[])?;
        for g in &all {
            if g.degree() != self.degree {
                return Err(Error::input("degree mismatch in closure_with".to_string()));
            }
            if !group.contains_unchecked(g) {
                group.add_generator(g.clone());
            }
        }
        Ok(group)
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure_unchecked(&comms)
    }

    /// Derived series down to (and including) the first repeated term.
    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let next = series.last().unwrap().derived_subgroup();
            if next.order() == series.last().unwrap().order() || next.is_trivial() {
                series.push(next);
                return series;
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| {
            self.gens[i + 1..]
                .iter()
                .all(|b| a.commutator(b).is_identity())
        })
    }

    /// Whether `other` is a subgroup of `self` (same degree assumed checked).
    pub fn contains_group(&self, other: &PermGroup) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_group(&self, other: &PermGroup) -> Result<bool> {
        Ok(self.order() == other.order() && self.contains_group(other)?)
    }

    /// Whether every generator of `other` conjugates `self` into itself.
    pub fn is_normalized_by(&self, other: &PermGroup) -> bool {
        self.gens.iter().all(|x| {
            other
                .generators()
                .iter()
                .all(|g| self.contains_unchecked(&x.conjugate_by(g)))
        })
    }

    /// Every element, in a canonical order. Guarded by `limit`.
    pub fn elements(&self, limit: usize) -> Result<Vec<Perm>> {
        if self.order() > &BigUint::from(limit) {
            return Err(Error::precondition(format!(
                "group order {} exceeds enumeration limit {limit}",
                self.order()
            )));
        }
        let mut acc = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut points: Vec<usize> = level.orbit.clone();
            points.sort_unstable();
            let mut next = Vec::with_capacity(acc.len() * points.len());
            for a in &acc {
                for &pt in &points {
                    let t = level.transversal[pt].as_ref().unwrap();
                    next.push(a.then(t));
                }
            }
            acc = next;
        }
        Ok(acc)
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermGroup(degree={}, order={}, gens={:?})",
            self.degree, self.order, self.gens
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn cyclic(n: usize) -> PermGroup {
        let rot = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        PermGroup::from_generators(n, vec![rot]).unwrap()
    }

    /// AGL₁(5) = ⟨x→x+1, x→2x⟩ on 5 points, order 20.
    fn agl1_5() -> PermGroup {
        let add = Perm::from_images(vec![1, 2, 3, 4, 0]).unwrap();
        let mul = Perm::from_images(vec![0, 2, 4, 1, 3]).unwrap();
        PermGroup::from_generators(5, vec![add, mul]).unwrap()
    }

    #[test]
    fn cyclic_regular_group_has_order_n() {
        assert_eq!(cyclic(5).order_u64(), Some(5));
    }

    #[test]
    fn agl1_5_has_order_20() {
        assert_eq!(agl1_5().order_u64(), Some(20));
    }

    #[test]
    fn trivial_group_from_empty_generators() {
        let g = PermGroup::from_generators(4, vec![]).unwrap();
        assert_eq!(g.order_u64(), Some(1));
        assert!(g.contains(&Perm::identity(4)).unwrap());
    }

    #[test]
    fn sym4_from_transposition_and_cycle() {
        let t = Perm::from_cycles(4, &[vec![0, 1]]).unwrap();
        let c = Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        let g = PermGroup::from_generators(4, vec![t, c]).unwrap();
        assert_eq!(g.order_u64(), Some(24));
    }

    #[test]
    fn membership_in_agl() {
        let g = agl1_5();
        // x → 3x + 1 maps 0,1,2,3,4 to 1,4,2,0,3.
        let affine = Perm::from_images(vec![1, 4, 2, 0, 3]).unwrap();
        assert!(g.contains(&affine).unwrap());
        let transposition = Perm::from_cycles(5, &[vec![0, 1]]).unwrap();
        assert!(!g.contains(&transposition).unwrap());
    }

    #[test]
    fn membership_of_random_generator_products() {
        let g = agl1_5();
        let mut w = Perm::identity(5);
        let gens = g.generators().to_vec();
        for i in 0..50 {
            w = w.then(&gens[i % gens.len()]);
            assert!(g.contains(&w).unwrap());
        }
    }

    #[test]
    fn orbit_stabilizer_relation() {
        let g = agl1_5();
        for alpha in 0..5 {
            let stab = g.pointwise_stabilizer(&[alpha]).unwrap();
            let orbit = g.orbit_of(alpha);
            assert_eq!(
                stab.order_u64().unwrap() * orbit.len() as u64,
                g.order_u64().unwrap()
            );
        }
    }

    #[test]
    fn two_point_stabilizer_of_agl_is_trivial() {
        let g = agl1_5();
        assert!(g.pointwise_stabilizer(&[0, 1]).unwrap().is_trivial());
    }

    #[test]
    fn empty_pointwise_stabilizer_is_whole_group() {
        let g = agl1_5();
        let s = g.pointwise_stabilizer(&[]).unwrap();
        assert!(s.same_group(&g).unwrap());
    }

    #[test]
    fn setwise_stabilizer_examples() {
        let t = Perm::from_cycles(4, &[vec![0, 1]]).unwrap();
        let c = Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        let sym4 = PermGroup::from_generators(4, vec![t, c]).unwrap();
        assert_eq!(
            sym4.setwise_stabilizer(&[0, 1]).unwrap().order_u64(),
            Some(4)
        );

        let c4 = cyclic(4);
        assert_eq!(c4.setwise_stabilizer(&[0, 2]).unwrap().order_u64(), Some(2));
        assert!(c4
            .setwise_stabilizer(&[0, 1, 2, 3])
            .unwrap()
            .same_group(&c4)
            .unwrap());
    }

    #[test]
    fn normal_closure_of_three_cycle_in_sym3_is_alt3() {
        let t = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let c = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let sym3 = PermGroup::from_generators(3, vec![t, c.clone()]).unwrap();
        let alt3 = sym3.normal_closure(&[c]).unwrap();
        assert_eq!(alt3.order_u64(), Some(3));
    }

    #[test]
    fn normal_closure_of_translation_in_agl() {
        let g = agl1_5();
        let add = Perm::from_images(vec![1, 2, 3, 4, 0]).unwrap();
        let n = g.normal_closure(&[add]).unwrap();
        assert_eq!(n.order_u64(), Some(5));
    }

    #[test]
    fn normal_closure_of_identity_is_trivial() {
        let g = agl1_5();
        let n = g.normal_closure(&[Perm::identity(5)]).unwrap();
        assert!(n.is_trivial());
    }

    #[test]
    fn normal_closure_rejects_outside_seed() {
        let g = cyclic(4);
        let odd = Perm::from_cycles(4, &[vec![0, 1]]).unwrap();
        assert!(g.normal_closure(&[odd]).is_err());
    }

    #[test]
    fn solvability() {
        assert!(agl1_5().is_solvable());
        let a = Perm::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        let b = Perm::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
        let sym5ish = PermGroup::from_generators(5, vec![a, b]).unwrap();
        assert!(!sym5ish.is_solvable());
    }

    #[test]
    fn element_enumeration_matches_order_and_membership() {
        let g = agl1_5();
        let elems = g.elements(100).unwrap();
        assert_eq!(elems.len(), 20);
        let set: std::collections::HashSet<_> = elems.iter().cloned().collect();
        assert_eq!(set.len(), 20);
        for e in &elems {
            assert!(g.contains(e).unwrap());
        }
    }

    #[test]
    fn orbits_of_product_of_cycles() {
        let g = PermGroup::from_generators(
            6,
            vec![Perm::from_cycles(6, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap()],
        )
        .unwrap();
        let orbits = g.orbits();
        assert_eq!(orbits.classes(), &[vec![0, 1, 2], vec![3, 4, 5]]);
    }
}
