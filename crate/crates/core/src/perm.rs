//! Permutations of `{0..n-1}` stored as image arrays.

use std::fmt;
use std::ops::Mul;

use crate::error::Error;
use crate::Result;

/// A permutation of `{0..n-1}`. `images[i]` is the image of point `i`.
///
/// Products compose left to right: `(p * q)` applies `p` first, then `q`,
/// matching the exponent notation `α^{pq} = (α^p)^q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n {
                return Err(Error::input(format!(
                    "image {img} out of range for degree {n}"
                )));
            }
            if seen[img] {
                return Err(Error::input(format!("image {img} appears twice")));
            }
            seen[img] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt >= degree {
                    return Err(Error::input(format!(
                        "cycle point {pt} out of range for degree {degree}"
                    )));
                }
                if moved[pt] {
                    return Err(Error::input(format!("point {pt} in two cycles")));
                }
                moved[pt] = true;
                images[pt] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `self` followed by `other`; same as `self * other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        let images = self
            .images
            .iter()
            .map(|&x| other.images[x as usize])
            .collect();
        Perm { images }
    }

    /// Conjugate `other⁻¹ · self · other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for i in 0..self.images.len() {
            // (other⁻¹ self other)(other(i)) = other(self(i))
            images[other.images[i] as usize] = other.images[self.images[i] as usize];
        }
        Perm { images }
    }

    /// Commutator `self⁻¹ · other⁻¹ · self · other`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    pub fn pow(&self, e: u128) -> Perm {
        // Raise cycle-by-cycle so huge exponents stay O(n).
        let n = self.degree();
        let mut images = vec![u32::MAX; n];
        let mut cycle = Vec::new();
        for start in 0..n {
            if images[start] != u32::MAX {
                continue;
            }
            cycle.clear();
            let mut pt = start;
            loop {
                cycle.push(pt);
                pt = self.apply(pt);
                if pt == start {
                    break;
                }
            }
            let len = cycle.len();
            let shift = (e % len as u128) as usize;
            for (k, &pt) in cycle.iter().enumerate() {
                images[pt] = cycle[(k + shift) % len] as u32;
            }
        }
        Perm { images }
    }

    /// Order of the permutation (lcm of cycle lengths).
    pub fn order(&self) -> u128 {
        let mut order: u128 = 1;
        for len in self.cycle_lengths() {
            order = lcm(order, len as u128);
        }
        order
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut pt = start;
            while !seen[pt] {
                seen[pt] = true;
                len += 1;
                pt = self.apply(pt);
            }
            lens.push(len);
        }
        lens
    }

    /// Points moved by the permutation.
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i)
            .collect()
    }

    /// Least moved point, if any.
    pub fn min_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i)
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

impl fmt::Display for Perm {
    /// Cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut pt = start;
            let mut first = true;
            while !seen[pt] {
                seen[pt] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{pt}")?;
                first = false;
                pt = self.apply(pt);
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_applies_left_factor_first() {
        let p = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let q = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        // 0 --p--> 1 --q--> 2
        assert_eq!((&p * &q).apply(0), 2);
        assert_eq!((&q * &p).apply(0), 1);
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = Perm::from_images(vec![2, 0, 3, 1, 4]).unwrap();
        assert!((&p * &p.inverse()).is_identity());
        assert!((&p.inverse() * &p).is_identity());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn pow_and_order() {
        let p = Perm::from_cycles(6, &[vec![0, 1, 2], vec![3, 4]]).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.pow(6).is_identity());
        assert_eq!(p.pow(4).apply(0), 1);
    }

    #[test]
    fn conjugate_matches_definition() {
        let p = Perm::from_cycles(4, &[vec![0, 1]]).unwrap();
        let q = Perm::from_cycles(4, &[vec![0, 2, 1, 3]]).unwrap();
        let direct = q.inverse().then(&p).then(&q);
        assert_eq!(p.conjugate_by(&q), direct);
    }
}
