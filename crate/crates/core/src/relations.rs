//! Equivalence relations on `{0..n-1}` and the predicates the flag machinery
//! needs: invariance under a group, normality, restriction, quotient lifting.

use crate::error::Error;
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::Result;

/// A partition of `{0..n-1}`. Classes are sorted internally and indexed in
/// order of their least element, which pins every induced labeling.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EquivRelation {
    degree: usize,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl EquivRelation {
    /// The identity relation (all classes singletons).
    pub fn identity(degree: usize) -> EquivRelation {
        EquivRelation {
            degree,
            class_of: (0..degree).collect(),
            classes: (0..degree).map(|i| vec![i]).collect(),
        }
    }

    /// The full relation (one class).
    pub fn full(degree: usize) -> EquivRelation {
        EquivRelation {
            degree,
            class_of: vec![0; degree],
            classes: vec![(0..degree).collect()],
        }
    }

    /// Builds from an arbitrary class-index array (indices are renumbered
    /// canonically by least element).
    pub fn from_class_indices(degree: usize, raw: &[usize]) -> Result<EquivRelation> {
        if raw.len() != degree {
            return Err(Error::input(format!(
                "class index array has length {}, expected {degree}",
                raw.len()
            )));
        }
        let mut renumber: std::collections::HashMap<usize, usize> =
            std::collections::HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![0; degree];
        for pt in 0..degree {
            let id = *renumber.entry(raw[pt]).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            class_of[pt] = id;
            classes[id].push(pt);
        }
        Ok(EquivRelation {
            degree,
            class_of,
            classes,
        })
    }

    /// Builds from explicit classes, which must partition `{0..degree-1}`.
    pub fn from_classes(degree: usize, classes: &[Vec<usize>]) -> Result<EquivRelation> {
        let mut raw = vec![usize::MAX; degree];
        for (id, class) in classes.iter().enumerate() {
            for &pt in class {
                if pt >= degree {
                    return Err(Error::input(format!("point {pt} out of range")));
                }
                if raw[pt] != usize::MAX {
                    return Err(Error::input(format!("point {pt} in two classes")));
                }
                raw[pt] = id;
            }
        }
        if raw.contains(&usize::MAX) {
            return Err(Error::input("classes do not cover the domain".to_string()));
        }
        Self::from_class_indices(degree, &raw)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn class_index(&self, point: usize) -> usize {
        self.class_of[point]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn is_identity_relation(&self) -> bool {
        self.classes.len() == self.degree
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Whether every class of `self` is contained in a class of `coarser`.
    pub fn refines(&self, coarser: &EquivRelation) -> bool {
        debug_assert_eq!(self.degree, coarser.degree);
        self.classes
            .iter()
            .all(|class| class.iter().all(|&p| coarser.same(class[0], p)))
    }

    pub fn strictly_refines(&self, coarser: &EquivRelation) -> bool {
        self.refines(coarser) && self != coarser
    }

    /// Image partition under a permutation.
    pub fn apply(&self, p: &Perm) -> EquivRelation {
        let mut raw = vec![0; self.degree];
        for pt in 0..self.degree {
            raw[p.apply(pt)] = self.class_of[pt];
        }
        EquivRelation::from_class_indices(self.degree, &raw).unwrap()
    }

    /// Restriction `e ∩ (Δ×Δ)`, relabelled to `{0..|Δ|-1}` with `Δ` sorted.
    pub fn restrict(&self, delta: &[usize]) -> EquivRelation {
        let mut pts: Vec<usize> = delta.to_vec();
        pts.sort_unstable();
        pts.dedup();
        let raw: Vec<usize> = pts.iter().map(|&p| self.class_of[p]).collect();
        EquivRelation::from_class_indices(pts.len(), &raw).unwrap()
    }

    /// Partition of the class-index set of `inner` whose classes collect the
    /// inner classes lying in one class of `self`. Requires `inner ⊆ self`.
    pub fn lift_to_quotient(&self, inner: &EquivRelation) -> Result<EquivRelation> {
        if inner.degree != self.degree {
            return Err(Error::input(
                "degree mismatch in lift_to_quotient".to_string(),
            ));
        }
        if !inner.refines(self) {
            return Err(Error::precondition(
                "inner relation does not refine the outer one".to_string(),
            ));
        }
        let raw: Vec<usize> = inner
            .classes
            .iter()
            .map(|class| self.class_of[class[0]])
            .collect();
        EquivRelation::from_class_indices(inner.num_classes(), &raw)
    }

    /// Whether every generator of `G` maps classes onto classes.
    pub fn is_invariant(&self, group: &PermGroup) -> Result<bool> {
        if group.degree() != self.degree {
            return Err(Error::input("degree mismatch in is_invariant".to_string()));
        }
        for g in group.generators() {
            for class in &self.classes {
                let target = self.class_of[g.apply(class[0])];
                if class.iter().any(|&p| self.class_of[g.apply(p)] != target) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Partition text form: classes as `{a,b,c}` joined by spaces, ordered by
    /// least element.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, class) in self.classes.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push('{');
            for (j, pt) in class.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                out.push_str(&pt.to_string());
            }
            out.push('}');
        }
        out
    }
}

impl std::fmt::Debug for EquivRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Whether `e` is normal for `G`: the kernel of the quotient action must be
/// transitive on every class. Requires `e` to be `G`-invariant.
pub fn is_normal_equivalence(e: &EquivRelation, group: &PermGroup) -> Result<bool> {
    if !e.is_invariant(group)? {
        return Err(Error::precondition(
            "relation is not invariant under the group".to_string(),
        ));
    }
    let kernel = crate::action::quotient_action(group, e)?.kernel;
    Ok(kernel.orbits() == *e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    #[test]
    fn canonical_class_order_is_by_least_element() {
        let e = EquivRelation::from_classes(5, &[vec![3, 4], vec![0, 2], vec![1]]).unwrap();
        assert_eq!(e.classes(), &[vec![0, 2], vec![1], vec![3, 4]]);
        assert_eq!(e.class_index(4), 2);
    }

    #[test]
    fn invariance_examples() {
        let g = PermGroup::from_generators(4, vec![Perm::from_cycles(4, &[vec![1, 2]]).unwrap()])
            .unwrap();
        let e = EquivRelation::from_classes(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(!e.is_invariant(&g).unwrap());
        assert!(EquivRelation::identity(4).is_invariant(&g).unwrap());
        assert!(g.orbits().is_invariant(&g).unwrap());
    }

    #[test]
    fn restriction_examples() {
        let e = EquivRelation::from_classes(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let r = e.restrict(&[0, 2, 3]);
        // Relabelled domain 0↦0, 2↦1, 3↦2.
        assert_eq!(r.classes(), &[vec![0], vec![1, 2]]);
        assert!(EquivRelation::identity(4)
            .restrict(&[1, 3])
            .is_identity_relation());
        assert_eq!(EquivRelation::full(4).restrict(&[1, 3]).num_classes(), 1);
    }

    #[test]
    fn lift_examples() {
        let outer = EquivRelation::full(4);
        let inner = EquivRelation::from_classes(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        let lifted = outer.lift_to_quotient(&inner).unwrap();
        assert_eq!(lifted.classes(), &[vec![0, 1]]);

        let same = inner.lift_to_quotient(&inner).unwrap();
        assert!(same.is_identity_relation());

        let full_over_identity = EquivRelation::full(3)
            .lift_to_quotient(&EquivRelation::identity(3))
            .unwrap();
        assert_eq!(full_over_identity.num_classes(), 1);

        assert!(inner.lift_to_quotient(&outer).is_err());
    }

    #[test]
    fn normality_examples() {
        let c4 =
            PermGroup::from_generators(4, vec![Perm::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap()])
                .unwrap();
        let e = EquivRelation::from_classes(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert!(is_normal_equivalence(&e, &c4).unwrap());
        assert!(is_normal_equivalence(&EquivRelation::identity(4), &c4).unwrap());
        assert!(is_normal_equivalence(&c4.orbits(), &c4).unwrap());

        let non_invariant = EquivRelation::from_classes(4, &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(is_normal_equivalence(&non_invariant, &c4).is_err());
    }

    #[test]
    fn partition_text() {
        let e = EquivRelation::from_classes(5, &[vec![0, 2], vec![1], vec![3, 4]]).unwrap();
        assert_eq!(e.to_text(), "{0,2} {1} {3,4}");
    }
}
