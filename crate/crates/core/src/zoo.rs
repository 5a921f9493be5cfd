//! Deterministic generator of supersolvable test groups with known-answer
//! expectations, used by the acceptance suite and the CLI.

use num_bigint::BigUint;

use crate::error::Error;
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::Result;

/// What the 2-closure of a zoo entry is known to be.
#[derive(Clone, Debug, PartialEq)]
pub enum Expected {
    /// The group is 2-closed.
    SelfClosure,
    /// The closure has this order.
    Order(BigUint),
    /// No closed-form answer; the oracle validates entries of small degree.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Literature,
    Derived,
}

#[derive(Clone)]
pub struct ZooEntry {
    pub name: String,
    pub group: PermGroup,
    pub expected: Expected,
    pub provenance: Provenance,
}

pub fn cyclic_regular(n: usize) -> PermGroup {
    let rot = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
    PermGroup::from_generators(n, vec![rot]).unwrap()
}

pub fn dihedral(n: usize) -> PermGroup {
    let rot = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
    let refl = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
    PermGroup::from_generators(n, vec![rot, refl]).unwrap()
}

/// Least primitive root mod a prime.
fn primitive_root(p: usize) -> usize {
    'outer: for g in 2..p {
        let mut x = 1usize;
        for _ in 0..p - 2 {
            x = x * g % p;
            if x == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    1
}

/// The transitive subgroup of AGL₁(p) of order p·d, for `d | p−1`:
/// translations extended by the index-(p−1)/d power of a primitive root.
pub fn agl_subgroup(p: usize, d: usize) -> PermGroup {
    assert!(d >= 1 && (p - 1).is_multiple_of(d));
    let add = Perm::from_images((0..p).map(|i| (i + 1) % p).collect()).unwrap();
    if d == 1 {
        return PermGroup::from_generators(p, vec![add]).unwrap();
    }
    let g = primitive_root(p);
    let mut s = 1usize;
    for _ in 0..(p - 1) / d {
        s = s * g % p;
    }
    let mul = Perm::from_images((0..p).map(|i| i * s % p).collect()).unwrap();
    PermGroup::from_generators(p, vec![add, mul]).unwrap()
}

/// Iterated imprimitive wreath product of cyclic groups, bottom-up:
/// `wreath_tower(&[a, b])` is `C_a ≀ C_b` on `a·b` points.
pub fn wreath_tower(layers: &[usize]) -> PermGroup {
    assert!(!layers.is_empty());
    let mut degree = layers[0];
    let mut gens: Vec<Perm> = cyclic_regular(degree).generators().to_vec();
    for &b in &layers[1..] {
        let block = degree;
        degree *= b;
        let mut next: Vec<Perm> = gens
            .iter()
            .map(|g| {
                let mut images: Vec<usize> = (0..degree).collect();
                for (pt, img) in images.iter_mut().enumerate().take(block) {
                    *img = g.apply(pt);
                }
                Perm::from_images(images).unwrap()
            })
            .collect();
        let mut images = Vec::with_capacity(degree);
        for i in 0..b {
            for j in 0..block {
                images.push(((i + 1) % b) * block + j);
            }
        }
        next.push(Perm::from_images(images).unwrap());
        gens = next;
    }
    PermGroup::from_generators(degree, gens).unwrap()
}

/// The group acting identically on `copies` disjoint copies of its domain.
pub fn diagonal(group: &PermGroup, copies: usize) -> PermGroup {
    let n = group.degree();
    let gens: Vec<Perm> = group
        .generators()
        .iter()
        .map(|g| {
            let mut images = Vec::with_capacity(n * copies);
            for c in 0..copies {
                for pt in 0..n {
                    images.push(c * n + g.apply(pt));
                }
            }
            Perm::from_images(images).unwrap()
        })
        .collect();
    PermGroup::from_generators(n * copies, gens).unwrap()
}

/// Independent product on disjoint domains.
pub fn direct_sum(left: &PermGroup, right: &PermGroup) -> PermGroup {
    let n = left.degree();
    let m = right.degree();
    let mut gens = Vec::new();
    for g in left.generators() {
        let mut images: Vec<usize> = (0..n + m).collect();
        for (pt, img) in images.iter_mut().enumerate().take(n) {
            *img = g.apply(pt);
        }
        gens.push(Perm::from_images(images).unwrap());
    }
    for g in right.generators() {
        let mut images: Vec<usize> = (0..n + m).collect();
        for pt in 0..m {
            images[n + pt] = n + g.apply(pt);
        }
        gens.push(Perm::from_images(images).unwrap());
    }
    PermGroup::from_generators(n + m, gens).unwrap()
}

/// The group padded with fixed points.
pub fn with_fixed_points(group: &PermGroup, extra: usize) -> PermGroup {
    direct_sum(group, &PermGroup::trivial(extra))
}

fn factorial(n: usize) -> BigUint {
    let mut out = BigUint::from(1u32);
    for k in 2..=n {
        out *= BigUint::from(k);
    }
    out
}

/// The deterministic zoo of supersolvable groups up to the given degree.
pub fn generate_zoo(max_degree: usize) -> Result<Vec<ZooEntry>> {
    if max_degree < 4 {
        return Err(Error::precondition(
            "generate_zoo requires max_degree ≥ 4".to_string(),
        ));
    }
    let mut out: Vec<ZooEntry> = Vec::new();
    let mut push = |name: String, group: PermGroup, expected: Expected, provenance: Provenance| {
        out.push(ZooEntry {
            name,
            group,
            expected,
            provenance,
        });
    };

    // Regular cyclic groups: 2-closed.
    for n in 2..=max_degree.min(13) {
        push(
            format!("C{n}"),
            cyclic_regular(n),
            Expected::SelfClosure,
            Provenance::Literature,
        );
    }

    // Dihedral groups.
    for n in 3..=max_degree.min(10) {
        push(
            format!("D{n}"),
            dihedral(n),
            Expected::Unknown,
            Provenance::Derived,
        );
    }

    // All transitive subgroups of AGL₁(p): 2-closed when proper, full
    // symmetric closure for AGL₁(p) itself.
    for p in [5usize, 7, 11, 13] {
        if p > max_degree {
            continue;
        }
        let mut d = 2;
        while d < p {
            if (p - 1) % d == 0 {
                let group = agl_subgroup(p, d);
                if d == p - 1 {
                    push(
                        format!("AGL1_{p}"),
                        group,
                        Expected::Order(factorial(p)),
                        Provenance::Literature,
                    );
                } else {
                    push(
                        format!("F{}_AGL1_{p}", p * d),
                        group,
                        Expected::SelfClosure,
                        Provenance::Literature,
                    );
                }
            }
            d += 1;
        }
    }

    // Iterated wreath products in imprimitive action.
    let towers: [(&str, &[usize]); 9] = [
        ("C2wrC2", &[2, 2]),
        ("C3wrC2", &[3, 2]),
        ("C2wrC2wrC2", &[2, 2, 2]),
        ("C3wrC3", &[3, 3]),
        ("C5wrC2", &[5, 2]),
        ("C5wrC5", &[5, 5]),
        ("C5wrC5wrC2", &[5, 5, 2]),
        ("C2tower_deg64", &[2, 2, 2, 2, 2, 2]),
        ("C2tower_deg128", &[2, 2, 2, 2, 2, 2, 2]),
    ];
    for (name, layers) in towers {
        let degree: usize = layers.iter().product();
        if degree <= max_degree {
            push(
                name.to_string(),
                wreath_tower(layers),
                Expected::Unknown,
                Provenance::Derived,
            );
        }
    }

    // Diagonal actions on two equivalent orbits.
    if max_degree >= 6 {
        push(
            "diagC3_deg6".to_string(),
            diagonal(&cyclic_regular(3), 2),
            Expected::Unknown,
            Provenance::Derived,
        );
    }
    if max_degree >= 8 {
        push(
            "diagC4_deg8".to_string(),
            diagonal(&cyclic_regular(4), 2),
            Expected::Unknown,
            Provenance::Derived,
        );
    }
    if max_degree >= 10 {
        push(
            "diagC5_deg10".to_string(),
            diagonal(&cyclic_regular(5), 2),
            Expected::Unknown,
            Provenance::Derived,
        );
        push(
            "diagF10_deg10".to_string(),
            diagonal(&agl_subgroup(5, 2), 2),
            Expected::Unknown,
            Provenance::Derived,
        );
        push(
            "diagAGL1_5_deg10".to_string(),
            diagonal(&agl_subgroup(5, 4), 2),
            Expected::Unknown,
            Provenance::Derived,
        );
    }
    if max_degree >= 50 {
        push(
            "diagC5wrC5_deg50".to_string(),
            diagonal(&wreath_tower(&[5, 5]), 2),
            Expected::Unknown,
            Provenance::Derived,
        );
    }

    // Direct products on disjoint orbits and intransitive mixtures.
    if max_degree >= 4 {
        push(
            "C2xC2_deg4".to_string(),
            direct_sum(&cyclic_regular(2), &cyclic_regular(2)),
            Expected::Unknown,
            Provenance::Derived,
        );
    }
    if max_degree >= 5 {
        push(
            "C2xC3_deg5".to_string(),
            direct_sum(&cyclic_regular(2), &cyclic_regular(3)),
            Expected::Unknown,
            Provenance::Derived,
        );
        push(
            "C3fix2_deg5".to_string(),
            with_fixed_points(&cyclic_regular(3), 2),
            Expected::Unknown,
            Provenance::Derived,
        );
    }
    if max_degree >= 6 {
        push(
            "C3xC3_deg6".to_string(),
            direct_sum(&cyclic_regular(3), &cyclic_regular(3)),
            Expected::Unknown,
            Provenance::Derived,
        );
        push(
            "C4_C2_deg6".to_string(),
            direct_sum(&cyclic_regular(4), &cyclic_regular(2)),
            Expected::Unknown,
            Provenance::Derived,
        );
        push(
            "C2_C2_C2_deg6".to_string(),
            direct_sum(
                &direct_sum(&cyclic_regular(2), &cyclic_regular(2)),
                &cyclic_regular(2),
            ),
            Expected::Unknown,
            Provenance::Derived,
        );
    }
    if max_degree >= 7 {
        push(
            "C3xC4_deg7".to_string(),
            direct_sum(&cyclic_regular(3), &cyclic_regular(4)),
            Expected::Unknown,
            Provenance::Derived,
        );
        push(
            "AGL1_5xC2_deg7".to_string(),
            direct_sum(&agl_subgroup(5, 4), &cyclic_regular(2)),
            Expected::Unknown,
            Provenance::Derived,
        );
    }
    if max_degree >= 10 {
        push(
            "C5xC5_deg10".to_string(),
            direct_sum(&cyclic_regular(5), &cyclic_regular(5)),
            Expected::Unknown,
            Provenance::Derived,
        );
        push(
            "AGL1_5xAGL1_5_deg10".to_string(),
            direct_sum(&agl_subgroup(5, 4), &agl_subgroup(5, 4)),
            Expected::Unknown,
            Provenance::Derived,
        );
        push(
            "F10_C5_deg10".to_string(),
            direct_sum(&agl_subgroup(5, 2), &cyclic_regular(5)),
            Expected::Unknown,
            Provenance::Derived,
        );
    }
    if max_degree >= 125 {
        push(
            "C5wrC5wrC5_deg125".to_string(),
            wreath_tower(&[5, 5, 5]),
            Expected::Unknown,
            Provenance::Derived,
        );
    }
    if max_degree >= 200 {
        // Degree-200 stress entry: two equivalent 50-point towers, two
        // 2-towers, and a small cyclic tail.
        let halves = diagonal(&wreath_tower(&[5, 5, 2]), 2);
        let twos = direct_sum(
            &wreath_tower(&[2, 2, 2, 2, 2, 2]),
            &wreath_tower(&[2, 2, 2, 2, 2]),
        );
        let tail = cyclic_regular(4);
        push(
            "bigmix_deg200".to_string(),
            direct_sum(&direct_sum(&halves, &twos), &tail),
            Expected::Unknown,
            Provenance::Derived,
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zoo_has_enough_small_entries() {
        let zoo = generate_zoo(10).unwrap();
        assert!(zoo.len() >= 40, "only {} entries", zoo.len());
        assert!(zoo.iter().all(|e| e.group.degree() <= 10));
    }

    #[test]
    fn zoo_names_are_unique() {
        let zoo = generate_zoo(13).unwrap();
        let mut names: Vec<&str> = zoo.iter().map(|e| e.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), zoo.len());
    }

    #[test]
    fn agl_subgroups_have_expected_orders() {
        assert_eq!(agl_subgroup(5, 4).order_u64(), Some(20));
        assert_eq!(agl_subgroup(5, 2).order_u64(), Some(10));
        assert_eq!(agl_subgroup(7, 3).order_u64(), Some(21));
        assert_eq!(agl_subgroup(13, 12).order_u64(), Some(156));
    }

    #[test]
    fn wreath_tower_orders() {
        assert_eq!(wreath_tower(&[2, 2]).order_u64(), Some(8));
        assert_eq!(wreath_tower(&[5, 2]).order_u64(), Some(50));
        assert_eq!(
            wreath_tower(&[3, 3]).order_u64(),
            Some(3usize.pow(4) as u64 * 3 / 3)
        );
        // C3 ≀ C3: base C3³ and top C3.
        assert_eq!(wreath_tower(&[3, 3]).order_u64(), Some(81));
    }

    #[test]
    fn zoo_rejects_tiny_degrees() {
        assert!(generate_zoo(3).is_err());
    }

    #[test]
    fn small_zoo_entries_are_supersolvable() {
        for entry in generate_zoo(8).unwrap() {
            assert!(
                crate::structure::is_supersolvable(&entry.group).unwrap(),
                "{} is not supersolvable",
                entry.name
            );
        }
    }
}
