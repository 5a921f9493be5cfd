//! Helpers shared by the integration suites: independent brute-force
//! oracles (no BSGS, no chief-series machinery) and a deterministic RNG.
//! Not every suite uses every helper.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use twoclosure::{Perm, PermGroup};

/// Every element by breadth-first closure of generator products. Independent
/// of the stabilizer chain: only permutation multiplication.
pub fn enumerate_by_products(group: &PermGroup, limit: usize) -> Vec<Perm> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue: Vec<Perm> = vec![Perm::identity(group.degree())];
    seen.insert(queue[0].clone());
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        for g in group.generators() {
            let next = current.then(g);
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
        assert!(queue.len() <= limit, "enumeration limit exceeded");
    }
    queue
}

/// Brute-force supersolvability: search for a normal series with cyclic
/// factors by extending normal subgroups one coset generator at a time.
/// Exponential in principle; fine at |G| ≤ 2000.
pub fn supersolvable_by_series_search(group: &PermGroup) -> bool {
    let elements = enumerate_by_products(group, 2001);
    let n = elements.len();
    let index_of: HashMap<Perm, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    // Multiplication and conjugation tables over element indices.
    let mut mul = vec![0usize; n * n];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            mul[i * n + j] = index_of[&a.then(b)];
        }
    }
    let inv: Vec<usize> = elements.iter().map(|p| index_of[&p.inverse()]).collect();

    let closure = |start: &[usize], extra: usize| -> Vec<usize> {
        let mut in_set = vec![false; n];
        let mut members: Vec<usize> = start.to_vec();
        for &m in start {
            in_set[m] = true;
        }
        if !in_set[extra] {
            in_set[extra] = true;
            members.push(extra);
        }
        let mut head = 0;
        while head < members.len() {
            let a = members[head];
            head += 1;
            for k in 0..members.len() {
                for prod in [mul[a * n + members[k]], mul[members[k] * n + a]] {
                    if !in_set[prod] {
                        in_set[prod] = true;
                        members.push(prod);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    };
    let is_normal = |set: &[usize]| -> bool {
        let in_set: HashSet<usize> = set.iter().copied().collect();
        set.iter()
            .all(|&x| (0..n).all(|g| in_set.contains(&mul[mul[inv[g] * n + x] * n + g])))
    };

    let mut failed: HashSet<Vec<usize>> = HashSet::new();
    fn dfs(
        current: Vec<usize>,
        n: usize,
        closure: &dyn Fn(&[usize], usize) -> Vec<usize>,
        is_normal: &dyn Fn(&[usize]) -> bool,
        failed: &mut HashSet<Vec<usize>>,
    ) -> bool {
        if current.len() == n {
            return true;
        }
        if failed.contains(&current) {
            return false;
        }
        let in_cur: HashSet<usize> = current.iter().copied().collect();
        for x in 0..n {
            if in_cur.contains(&x) {
                continue;
            }
            let next = closure(&current, x);
            // The quotient is generated by one coset, hence cyclic.
            if is_normal(&next) && dfs(next, n, closure, is_normal, failed) {
                return true;
            }
        }
        failed.insert(current);
        false
    }
    dfs(vec![0], n, &closure, &is_normal, &mut failed)
}

/// Deterministic splitmix64 for randomized-but-reproducible instances.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: usize) -> usize {
        (self.next() % bound as u64) as usize
    }

    pub fn random_perm(&mut self, degree: usize) -> Perm {
        let mut images: Vec<usize> = (0..degree).collect();
        for i in (1..degree).rev() {
            images.swap(i, self.below(i + 1));
        }
        Perm::from_images(images).unwrap()
    }
}

/// Equality of groups as element sets: same order plus mutual generator
/// membership.
pub fn same_group(a: &PermGroup, b: &PermGroup) -> bool {
    a.order() == b.order()
        && b.generators().iter().all(|g| a.contains(g).unwrap())
        && a.generators().iter().all(|g| b.contains(g).unwrap())
}
