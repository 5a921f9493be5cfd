//! Backtrack searches restricted to a group given by a BSGS.
//!
//! The search walks the stabilizer chain of `W`, choosing an image for each
//! base point among the basic orbits. Pruning:
//!  - caller-supplied unary/pairwise feasibility predicates (necessary
//!    conditions of the leaf property),
//!  - first-in-orbit elimination at the first point where the partial image
//!    diverges from the base, using the stabilizer prefix of the known
//!    subgroup `H` of solutions (whose base is aligned with `W`'s).
//!
//! Subgroup search grows `H` one witness at a time and restarts; a full pass
//! without a witness proves `H` is the entire solution subgroup. Everything
//! is deterministic: candidates are scanned in ascending image order.

use crate::group::PermGroup;
use crate::perm::Perm;
use crate::Result;

/// Computes `{w ∈ W : leaf(w)}` as a group, assuming the property is closed
/// under products and inverses. `seed` must consist of known solutions.
pub fn subgroup_search<U, P, L>(
    w: &PermGroup,
    unary: &U,
    pair: &P,
    leaf: &L,
    seed: Vec<Perm>,
) -> Result<PermGroup>
where
    U: Fn(usize, usize) -> bool,
    P: Fn(usize, usize, usize, usize) -> bool,
    L: Fn(&Perm) -> bool,
{
    let base = w.base();
    let mut h = PermGroup::from_generators_reduced(w.degree(), &seed, &base)?;
    loop {
        let found = search_one(w, &h, true, unary, pair, leaf);
        match found {
            Some(g) => {
                debug_assert!(leaf(&g));
                let mut gens = h.generators().to_vec();
                gens.push(g);
                h = PermGroup::from_generators_reduced(w.degree(), &gens, &base)?;
            }
            None => break,
        }
    }
    Ok(h)
}

/// Finds the first `v ∈ W` (ascending image order) with `leaf(v)`, pruning
/// right-translates by `h`. Requires: `h ≤ W`, `h`'s base aligned with `W`'s,
/// and the witness set closed under right multiplication by `h`.
pub fn coset_search<U, P, L>(
    w: &PermGroup,
    h: &PermGroup,
    unary: &U,
    pair: &P,
    leaf: &L,
) -> Option<Perm>
where
    U: Fn(usize, usize) -> bool,
    P: Fn(usize, usize, usize, usize) -> bool,
    L: Fn(&Perm) -> bool,
{
    search_one(w, h, false, unary, pair, leaf)
}

/// Single DFS pass. With `skip_known` the leaf additionally requires the
/// element to lie outside `h` (subgroup-search mode).
fn search_one<U, P, L>(
    w: &PermGroup,
    h: &PermGroup,
    skip_known: bool,
    unary: &U,
    pair: &P,
    leaf: &L,
) -> Option<Perm>
where
    U: Fn(usize, usize) -> bool,
    P: Fn(usize, usize, usize, usize) -> bool,
    L: Fn(&Perm) -> bool,
{
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    dfs(
        w,
        h,
        skip_known,
        unary,
        pair,
        leaf,
        0,
        &Perm::identity(w.degree()),
        false,
        &mut chosen,
    )
}

#[allow(clippy::too_many_arguments)]
fn dfs<U, P, L>(
    w: &PermGroup,
    h: &PermGroup,
    skip_known: bool,
    unary: &U,
    pair: &P,
    leaf: &L,
    level: usize,
    partial: &Perm,
    diverged: bool,
    chosen: &mut Vec<(usize, usize)>,
) -> Option<Perm>
where
    U: Fn(usize, usize) -> bool,
    P: Fn(usize, usize, usize, usize) -> bool,
    L: Fn(&Perm) -> bool,
{
    if level == w.num_levels() {
        if skip_known && !diverged {
            // The identity: always a known solution.
            return None;
        }
        if leaf(partial) && !(skip_known && h.contains_unchecked(partial)) {
            return Some(partial.clone());
        }
        return None;
    }
    let bp = w.level_point(level);
    let mut candidates: Vec<(usize, usize)> = w
        .level_orbit(level)
        .iter()
        .map(|&delta| (partial.apply(delta), delta))
        .collect();
    candidates.sort_unstable();
    for (img, delta) in candidates {
        if !unary(bp, img) {
            continue;
        }
        if chosen
            .iter()
            .any(|&(bq, jm)| !pair(bp, img, bq, jm) || !pair(bq, jm, bp, img))
        {
            continue;
        }
        if !diverged && img != bp && orbit_min(h.level_gens(level), img) < img {
            continue;
        }
        let now_diverged = diverged || img != bp;
        chosen.push((bp, img));
        let t = w
            .level_transversal(level, delta)
            .expect("orbit point has a transversal element");
        let extended = t.then(partial);
        let found = dfs(
            w,
            h,
            skip_known,
            unary,
            pair,
            leaf,
            level + 1,
            &extended,
            now_diverged,
            chosen,
        );
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Least point in the orbit of `start` under `gens`.
fn orbit_min(gens: &[Perm], start: usize) -> usize {
    if gens.is_empty() {
        return start;
    }
    let degree = gens[0].degree();
    let mut seen = vec![false; degree];
    let mut stack = vec![start];
    seen[start] = true;
    let mut min = start;
    while let Some(pt) = stack.pop() {
        for g in gens {
            let img = g.apply(pt);
            if !seen[img] {
                seen[img] = true;
                if img < min {
                    min = img;
                }
                stack.push(img);
            }
        }
    }
    min
}
