//! 2-orbits of a group as an arc coloring of `Ω × Ω`, and the brute-force
//! 2-closure oracle.
//!
//! The oracle is kept independent of the group-restricted backtrack engine:
//! it computes the automorphism group of the coloring by a plain point-by-
//! point backtrack, building a stabilizer chain with one witness search per
//! (fixed prefix, image) pair.

use crate::error::Error;
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::Result;

/// Degree guard for the brute-force closure oracle.
pub const ORACLE_DEGREE_LIMIT: usize = 12;

/// The partition of `Ω × Ω` into 2-orbits, stored as a dense color matrix.
/// Colors are numbered canonically by the row-major least cell they contain,
/// so equal partitions have equal matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct OrbitalColoring {
    degree: usize,
    color: Vec<u32>,
    num_colors: usize,
}

impl OrbitalColoring {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    #[inline]
    pub fn color(&self, a: usize, b: usize) -> u32 {
        self.color[a * self.degree + b]
    }

    /// Whether `p` maps every cell to a cell of the same color.
    pub fn is_preserved_by(&self, p: &Perm) -> bool {
        let n = self.degree;
        for a in 0..n {
            let pa = p.apply(a);
            for b in 0..n {
                if self.color(a, b) != self.color(pa, p.apply(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// One line of color ids per row.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for a in 0..self.degree {
            for b in 0..self.degree {
                if b > 0 {
                    out.push(' ');
                }
                out.push_str(&self.color(a, b).to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// The 2-orbits of `G`: orbits of the componentwise action on `Ω × Ω`,
/// found by BFS seeded from each unvisited cell in row-major order.
pub fn two_orbits(group: &PermGroup) -> OrbitalColoring {
    let n = group.degree();
    let mut color = vec![u32::MAX; n * n];
    let mut next = 0u32;
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if color[a * n + b] != u32::MAX {
                continue;
            }
            let id = next;
            next += 1;
            color[a * n + b] = id;
            queue.clear();
            queue.push((a, b));
            while let Some((x, y)) = queue.pop() {
                for g in group.generators() {
                    let cell = (g.apply(x), g.apply(y));
                    let idx = cell.0 * n + cell.1;
                    if color[idx] == u32::MAX {
                        color[idx] = id;
                        queue.push(cell);
                    }
                }
            }
        }
    }
    OrbitalColoring {
        degree: n,
        color,
        num_colors: next as usize,
    }
}

/// Whether two colorings define the same cell partition. Both are canonical,
/// so this is matrix equality.
pub fn same_two_orbits(a: &OrbitalColoring, b: &OrbitalColoring) -> Result<bool> {
    if a.degree != b.degree {
        return Err(Error::input(
            "degree mismatch in same_two_orbits".to_string(),
        ));
    }
    Ok(a.color == b.color)
}

/// The 1-closure: the direct product of symmetric groups on the orbits.
pub fn one_closure(group: &PermGroup) -> PermGroup {
    let n = group.degree();
    let mut gens = Vec::new();
    for class in group.orbits().classes() {
        if class.len() >= 2 {
            gens.push(transposition(n, class[0], class[1]));
            if class.len() >= 3 {
                gens.push(cycle_on(n, class));
            }
        }
    }
    PermGroup::from_generators(n, gens).expect("generators constructed with matching degree")
}

fn transposition(n: usize, a: usize, b: usize) -> Perm {
    Perm::from_cycles(n, &[vec![a, b]]).unwrap()
}

fn cycle_on(n: usize, class: &[usize]) -> Perm {
    Perm::from_cycles(n, &[class.to_vec()]).unwrap()
}

/// Brute-force 2-closure oracle: the full color-preserving group of
/// `two_orbits(G)`, by point-by-point backtrack. Guarded by degree.
pub fn brute_force_closure(group: &PermGroup) -> Result<PermGroup> {
    if group.degree() > ORACLE_DEGREE_LIMIT {
        return Err(Error::precondition(format!(
            "brute-force closure refused: degree {} exceeds guard {}",
            group.degree(),
            ORACLE_DEGREE_LIMIT
        )));
    }
    let coloring = two_orbits(group);
    coloring_automorphisms(&coloring)
}

/// Automorphism group of a coloring by stabilizer-chain backtrack on the
/// points `0, 1, 2, …` in order.
pub fn coloring_automorphisms(coloring: &OrbitalColoring) -> Result<PermGroup> {
    let n = coloring.degree();
    let mut gens: Vec<Perm> = Vec::new();
    // Walk prefixes from the deepest: generators mapping i → δ while fixing
    // 0..i-1 pointwise generate the stabilizer chain of Aut.
    for i in (0..n).rev() {
        for delta in 0..n {
            if delta == i {
                continue;
            }
            let mut partial: Vec<Option<usize>> =
                (0..n).map(|p| if p < i { Some(p) } else { None }).collect();
            let mut used = vec![false; n];
            used[..i].fill(true);
            if !assign_ok(coloring, &partial, i, delta) {
                continue;
            }
            partial[i] = Some(delta);
            used[delta] = true;
            if let Some(full) = extend(coloring, &mut partial, &mut used, i + 1) {
                gens.push(full);
            }
        }
    }
    PermGroup::from_generators_reduced(n, &gens, &[])
}

/// Whether mapping `point → image` is color-consistent with what is assigned.
fn assign_ok(
    coloring: &OrbitalColoring,
    partial: &[Option<usize>],
    point: usize,
    image: usize,
) -> bool {
    if coloring.color(point, point) != coloring.color(image, image) {
        return false;
    }
    for (q, iq) in partial.iter().enumerate() {
        if let Some(iq) = iq {
            if coloring.color(point, q) != coloring.color(image, *iq)
                || coloring.color(q, point) != coloring.color(*iq, image)
            {
                return false;
            }
        }
    }
    true
}

/// Completes a partial assignment to a full color-preserving permutation,
/// assigning points `next..` in order. Returns the first completion found.
fn extend(
    coloring: &OrbitalColoring,
    partial: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    next: usize,
) -> Option<Perm> {
    let n = coloring.degree();
    if next == n {
        let images: Vec<usize> = partial.iter().map(|x| x.unwrap()).collect();
        return Some(Perm::from_images(images).expect("assignment is a bijection"));
    }
    for image in 0..n {
        if used[image] || !assign_ok(coloring, partial, next, image) {
            continue;
        }
        partial[next] = Some(image);
        used[image] = true;
        if let Some(found) = extend(coloring, partial, used, next + 1) {
            return Some(found);
        }
        partial[next] = None;
        used[image] = false;
    }
    None
}

/// 2-closure by full enumeration of `Sym(Ω)`; the oracle's own cross-check.
pub fn closure_by_enumeration(group: &PermGroup) -> Result<PermGroup> {
    if group.degree() > 8 {
        return Err(Error::precondition(
            "enumeration closure limited to degree 8".to_string(),
        ));
    }
    let n = group.degree();
    let coloring = two_orbits(group);
    let mut gens = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    loop {
        let p = Perm::from_images(images.clone()).unwrap();
        if coloring.is_preserved_by(&p) {
            gens.push(p);
        }
        if !next_permutation(&mut images) {
            break;
        }
    }
    PermGroup::from_generators_reduced(n, &gens, &[])
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}
