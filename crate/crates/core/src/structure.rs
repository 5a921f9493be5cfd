//! Structural machinery on top of the BSGS kernel: minimal normal subgroups
//! (absolute and relative to a normal subgroup), chief series, solvability,
//! supersolvability, and composition factor orders.
//!
//! Chief steps above a normal subgroup `C` work directly with subgroups of
//! `Sym(Ω)`; quotients are never materialized. The elementary abelian cases
//! reduce to F_p modules (exact); the remaining cases are covered by a
//! quotient-orbit action, coset enumeration at small index, or recognition
//! of an alternating restriction, and anything outside those shapes is an
//! honest internal error rather than a silent wrong answer.

use num_bigint::BigUint;

use crate::action::quotient_action;
use crate::error::Error;
use crate::group::PermGroup;
use crate::linalg::{ElemAbelian, FpMat, GModule, Subspace};
use crate::perm::Perm;
use crate::Result;

/// Index bound for exact coset-representative refinement.
const COSET_ENUM_LIMIT: u64 = 20_000;

/// The group `⟨a.gens ∪ b.gens⟩`, reduced.
fn join(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let mut gens = a.generators().to_vec();
    gens.extend_from_slice(b.generators());
    PermGroup::from_generators_reduced(a.degree(), &gens, &[])
}

/// Last term `A` of the series `D_0 = G`, `D_{j+1} = ⟨[D_j, D_j], C⟩` with
/// `A ≠ C`; the flag says whether the series stabilized above `C`
/// (nonsolvable over `C`) or reached `C` (so `A/C` is abelian).
fn relative_derived_bottom(group: &PermGroup, c: &PermGroup) -> Result<(PermGroup, bool)> {
    let mut current = group.clone();
    loop {
        let derived = current.derived_subgroup();
        let next = join(&derived, c)?;
        if next.order() == current.order() {
            return Ok((current, true));
        }
        if next.order() == c.order() {
            return Ok((current, false));
        }
        current = next;
    }
}

/// Smallest `m ≥ 1` with `g^m ∈ C`.
fn order_mod(g: &Perm, c: &PermGroup) -> u128 {
    let full = g.order();
    let mut divisors = divisors_of(full);
    divisors.sort_unstable();
    for d in divisors {
        if c.contains_unchecked(&g.pow(d)) {
            return d;
        }
    }
    full
}

fn divisors_of(n: u128) -> Vec<u128> {
    let factors = factorize(n);
    let mut divs = vec![1u128];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d in &divs {
            let mut pe = 1u128;
            for _ in 0..=e {
                next.push(d * pe);
                pe *= p;
            }
        }
        divs = next;
    }
    divs
}

/// Trial-division factorization; inputs are lcm's of cycle lengths, so all
/// prime factors are at most the degree.
fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// An element of prime order modulo `C` drawn from the generators of `a`,
/// with its prime: first generator outside `C`, smallest prime factor.
fn prime_order_element_mod(a: &PermGroup, c: &PermGroup) -> Result<(Perm, u64)> {
    for g in a.generators() {
        if c.contains_unchecked(g) {
            continue;
        }
        let m = order_mod(g, c);
        let p = factorize(m)[0].0;
        let y = g.pow(m / p);
        debug_assert!(!c.contains_unchecked(&y));
        return Ok((y, p as u64));
    }
    Err(Error::internal(
        "no generator outside the normal subgroup".to_string(),
    ))
}

/// Coset representatives of `C` in `V` by BFS over `V`'s generators.
/// The identity coset's representative comes first.
fn coset_reps(v: &PermGroup, c: &PermGroup, limit: u64) -> Result<Vec<Perm>> {
    let index = (v.order() / c.order())
        .try_into()
        .map_err(|_| Error::internal("coset index overflow".to_string()))
        .and_then(|i: u64| {
            if i <= limit {
                Ok(i)
            } else {
                Err(Error::internal(
                    "coset index above enumeration limit".to_string(),
                ))
            }
        })?;
    let mut reps: Vec<Perm> = vec![Perm::identity(v.degree())];
    let mut head = 0;
    while head < reps.len() {
        let r = reps[head].clone();
        head += 1;
        for g in v.generators() {
            let cand = r.then(g);
            // cand ∈ C·rep for an existing rep?
            let known = reps
                .iter()
                .any(|s| c.contains_unchecked(&cand.then(&s.inverse())));
            if !known {
                reps.push(cand);
            }
        }
        if reps.len() as u64 > index {
            return Err(Error::internal("coset enumeration overflow".to_string()));
        }
    }
    Ok(reps)
}

/// Exact refinement by coset enumeration: shrinks `v` to a minimal normal
/// subgroup of `group` over `c`. Requires `|v : c| ≤ COSET_ENUM_LIMIT`.
fn refine_by_coset_enum(group: &PermGroup, c: &PermGroup, v: &PermGroup) -> Result<PermGroup> {
    let mut current = v.clone();
    'outer: loop {
        let reps = coset_reps(&current, c, COSET_ENUM_LIMIT)?;
        for z in reps.iter().skip(1) {
            let candidate = join(&group.normal_closure_unchecked(std::slice::from_ref(z)), c)?;
            if candidate.order() < current.order() {
                current = candidate;
                continue 'outer;
            }
        }
        return Ok(current);
    }
}

/// Certifies that `n/c` is simple because `n` restricted to one of its orbits
/// is a full alternating group of prime degree with kernel exactly `c`.
fn certify_alternating_over(n: &PermGroup, c: &PermGroup) -> Result<bool> {
    for class in n.orbits().classes() {
        let d = class.len();
        if d < 5 || !is_prime(d as u64) {
            continue;
        }
        let mut half_fact = BigUint::from(1u32);
        for k in 3..=d {
            half_fact *= BigUint::from(k);
        }
        if n.order() != &(c.order() * &half_fact) {
            continue;
        }
        let fix = n.pointwise_stabilizer(class)?;
        if fix.order() == c.order() && fix.contains_group(c)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn is_prime(n: u64) -> bool {
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

/// Builds the conjugation module of `group` on the span of `ea`'s basis.
fn conjugation_module(group: &PermGroup, ea: &ElemAbelian) -> Result<GModule> {
    let d = ea.dim();
    let mut actions = Vec::with_capacity(group.generators().len());
    for g in group.generators() {
        let mut m = FpMat::zeros(ea.p, d, d);
        for (i, b) in ea.basis.iter().enumerate() {
            let conj = b.conjugate_by(g);
            let coords = ea.coords(&conj).ok_or_else(|| {
                Error::internal("conjugate left the elementary abelian span".to_string())
            })?;
            for (j, &x) in coords.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        actions.push(m);
    }
    Ok(GModule {
        p: ea.p,
        dim: d,
        actions,
    })
}

/// A minimal member of the normal subgroups of `group` that strictly contain
/// `c`. Requires `c ⊴ group` and `c < group`.
pub fn minimal_normal_over(group: &PermGroup, c: &PermGroup) -> Result<PermGroup> {
    if group.order() <= c.order() {
        return Err(Error::precondition(
            "minimal_normal_over requires a strictly larger group".to_string(),
        ));
    }
    debug_assert!(c.is_normalized_by(group));
    let (bottom, nonsolvable_over) = relative_derived_bottom(group, c)?;
    if nonsolvable_over {
        return minimal_normal_over_nonsolvable(group, c, &bottom);
    }
    // bottom/C is abelian and nontrivial.
    let (y, p) = prime_order_element_mod(&bottom, c)?;
    let mut v = join(&group.normal_closure_unchecked(&[y]), c)?;
    loop {
        // Path 1: V elementary abelian outright — exact module computation.
        if v.generators().iter().all(|g| {
            let o = g.order();
            o == 1 || o == p as u128
        }) && v.is_abelian()
        {
            return minimal_over_elementary(group, c, &v, p);
        }
        // Path 2: quotient action on the orbits of C separates V from C.
        if !c.is_trivial() {
            let e_c = c.orbits();
            if !e_c.is_identity_relation() {
                let v_on_classes = quotient_action(&v, &e_c)?;
                let inner = &v_on_classes.kernel;
                if inner.order() == c.order() {
                    if let Some(ladder) = quotient_orbit_ladder(group, c, &v)? {
                        return Ok(ladder.into_iter().next().expect("nonempty ladder"));
                    }
                }
                if inner.order() < v.order() {
                    // Shrink V to the part acting trivially on the classes.
                    v = join(inner, c)?;
                    continue;
                }
            }
        }
        // Path 3: exact coset enumeration at small index.
        let index_ok = (v.order() / c.order()) <= BigUint::from(COSET_ENUM_LIMIT);
        if index_ok {
            return refine_by_coset_enum(group, c, &v);
        }
        return Err(Error::internal(
            "minimal normal subgroup: no exact path at this scale".to_string(),
        ));
    }
}

/// Exact: `v` elementary abelian of exponent `p` containing `c` as a
/// subspace; minimal submodule of the quotient module.
fn minimal_over_elementary(
    group: &PermGroup,
    c: &PermGroup,
    v: &PermGroup,
    p: u64,
) -> Result<PermGroup> {
    let ea = ElemAbelian::build(p, v.degree(), v.generators())?;
    let module = conjugation_module(group, &ea)?;
    let mut c_sub = Subspace::zero(p, ea.dim());
    for g in c.generators() {
        let coords = ea.coords(g).ok_or_else(|| {
            Error::internal("C is not inside the elementary abelian span".to_string())
        })?;
        c_sub.insert(&coords);
    }
    let min = module.minimal_submodule_over(&c_sub)?;
    let mut gens = c.generators().to_vec();
    for row in min.basis() {
        gens.push(ea.elem(row));
    }
    PermGroup::from_generators_reduced(group.degree(), &gens, &[])
}

/// Exact, via the faithful realization of `v / c` on the orbits of `c`:
/// the whole chief ladder from `c` to `v`, or None when the realization or
/// elementarity preconditions fail. Requires `c ≤ v`, both normal in
/// `group`, and `v/c` abelian.
fn quotient_orbit_ladder(
    group: &PermGroup,
    c: &PermGroup,
    v: &PermGroup,
) -> Result<Option<Vec<PermGroup>>> {
    if c.is_trivial() {
        return Ok(None);
    }
    let e_c = c.orbits();
    if e_c.is_identity_relation() {
        return Ok(None);
    }
    let to_classes = |g: &Perm| -> Result<Perm> {
        crate::action::induced_on_classes(g, &e_c)
            .ok_or_else(|| Error::internal("orbit relation not invariant".to_string()))
    };
    // The realization must be faithful: kernel of v on the classes is c.
    if quotient_action(v, &e_c)?.kernel.order() != c.order() {
        return Ok(None);
    }
    // Images of V's generators, paired with lifts.
    let mut lifts: Vec<(Perm, Perm)> = Vec::new();
    for g in v.generators() {
        lifts.push((to_classes(g)?, g.clone()));
    }
    let images: Vec<Perm> = lifts.iter().map(|(i, _)| i.clone()).collect();
    let Some(p) = elementary_prime_of_perms(&images) else {
        return Ok(None);
    };
    let classes = e_c.num_classes();
    let ea = ElemAbelian::build(p, classes, &images)?;
    // G acts on the quotient domain through its own class action.
    let g_images: Vec<Perm> = group
        .generators()
        .iter()
        .map(to_classes)
        .collect::<Result<_>>()?;
    let g_on_classes = PermGroup::from_generators(classes, g_images)?;
    let module = conjugation_module(&g_on_classes, &ea)?;
    let chain = module.composition_chain_over(&Subspace::zero(p, ea.dim()))?;
    // Lift each basis row through the tracked generator sources; preimages
    // differ only by elements of C, which is adjoined anyway.
    let mut out = Vec::new();
    let mut gens = c.generators().to_vec();
    for sub in chain {
        for row in sub.basis() {
            let mut lift = Perm::identity(group.degree());
            for (k, &ck) in row.iter().enumerate() {
                if ck % p != 0 {
                    let src = &lifts[ea.basis_source[k]].1;
                    lift = lift.then(&src.pow((ck % p) as u128));
                }
            }
            gens.push(lift);
        }
        let step = PermGroup::from_generators_reduced(group.degree(), &gens, &[])?;
        gens = step.generators().to_vec();
        out.push(step);
    }
    if out.is_empty() {
        return Ok(None);
    }
    Ok(Some(out))
}

/// The prime `p` when the permutations pairwise commute and all have order
/// dividing a single prime.
fn elementary_prime_of_perms(perms: &[Perm]) -> Option<u64> {
    let mut prime: Option<u64> = None;
    for g in perms {
        let o = g.order();
        if o == 1 {
            continue;
        }
        let o = u64::try_from(o).ok()?;
        if !is_prime(o) {
            return None;
        }
        match prime {
            None => prime = Some(o),
            Some(q) if q == o => {}
            _ => return None,
        }
    }
    for (i, a) in perms.iter().enumerate() {
        for b in &perms[i + 1..] {
            if !a.commutator(b).is_identity() {
                return None;
            }
        }
    }
    prime
}

/// Nonsolvable-over-C branch: closure candidates plus exact refinements.
fn minimal_normal_over_nonsolvable(
    group: &PermGroup,
    c: &PermGroup,
    bottom: &PermGroup,
) -> Result<PermGroup> {
    let mut best: Option<PermGroup> = None;
    for g in bottom.generators() {
        if c.contains_unchecked(g) {
            continue;
        }
        let m = order_mod(g, c);
        let p = factorize(m)[0].0;
        let y = g.pow(m / p);
        let n = join(&group.normal_closure_unchecked(&[y]), c)?;
        if best.as_ref().is_none_or(|b| n.order() < b.order()) {
            best = Some(n);
        }
    }
    let n = best.ok_or_else(|| Error::internal("no candidate for minimal normal".to_string()))?;
    if (n.order() / c.order()) <= BigUint::from(COSET_ENUM_LIMIT) {
        return refine_by_coset_enum(group, c, &n);
    }
    if certify_alternating_over(&n, c)? {
        return Ok(n);
    }
    Err(Error::internal(
        "nonsolvable minimal normal subgroup not certifiable at this scale".to_string(),
    ))
}

/// A minimal normal subgroup of `group`.
pub fn minimal_normal_subgroup(group: &PermGroup) -> Result<PermGroup> {
    if group.is_trivial() {
        return Err(Error::precondition(
            "minimal normal subgroup of the trivial group".to_string(),
        ));
    }
    minimal_normal_over(group, &PermGroup::trivial(group.degree()))
}

/// A minimal normal subgroup of `group` contained in the nontrivial normal
/// subgroup `inside`.
pub fn minimal_normal_inside(group: &PermGroup, inside: &PermGroup) -> Result<PermGroup> {
    if inside.is_trivial() {
        return Err(Error::precondition(
            "minimal_normal_inside requires a nontrivial subgroup".to_string(),
        ));
    }
    debug_assert!(inside.is_normalized_by(group));
    let series = inside.derived_series();
    let bottom = series
        .iter()
        .rev()
        .find(|g| !g.is_trivial())
        .expect("inside is nontrivial");
    if bottom.is_abelian() {
        let (y, p) = prime_order_element_mod(bottom, &PermGroup::trivial(group.degree()))?;
        let v = group.normal_closure_unchecked(&[y]);
        minimal_over_elementary(group, &PermGroup::trivial(group.degree()), &v, p)
    } else {
        minimal_normal_over_nonsolvable(group, &PermGroup::trivial(group.degree()), bottom)
    }
}

/// One factor of a chief series.
#[derive(Clone, Debug)]
pub struct ChiefFactor {
    pub order: BigUint,
    pub abelian: bool,
}

/// The prime `p` when the group is elementary abelian of exponent `p`.
fn elementary_prime(group: &PermGroup) -> Option<u64> {
    if group.is_trivial() || !group.is_abelian() {
        return None;
    }
    let mut prime: Option<u64> = None;
    for g in group.generators() {
        let o = g.order();
        if o == 1 {
            continue;
        }
        let o = u64::try_from(o).ok()?;
        if !is_prime(o) {
            return None;
        }
        match prime {
            None => prime = Some(o),
            Some(q) if q == o => {}
            _ => return None,
        }
    }
    prime
}

/// Chief ladder above `c` from one derived-bottom computation: when the
/// bottom is elementary abelian, its entire module composition series comes
/// out of one linear-algebra pass; otherwise a single chief step.
fn chief_ladder_over(group: &PermGroup, c: &PermGroup) -> Result<Vec<PermGroup>> {
    let (bottom, nonsolvable_over) = relative_derived_bottom(group, c)?;
    if !nonsolvable_over {
        if let Some(p) = elementary_prime(&bottom) {
            let ea = ElemAbelian::build(p, bottom.degree(), bottom.generators())?;
            let module = conjugation_module(group, &ea)?;
            let mut c_sub = Subspace::zero(p, ea.dim());
            let mut c_inside = true;
            for g in c.generators() {
                match ea.coords(g) {
                    Some(coords) => {
                        c_sub.insert(&coords);
                    }
                    None => {
                        c_inside = false;
                        break;
                    }
                }
            }
            if c_inside {
                let chain = module.composition_chain_over(&c_sub)?;
                let mut out = Vec::new();
                let mut gens = c.generators().to_vec();
                for sub in chain {
                    for row in sub.basis() {
                        gens.push(ea.elem(row));
                    }
                    out.push(PermGroup::from_generators_reduced(
                        group.degree(),
                        &gens,
                        &[],
                    )?);
                    gens = out.last().unwrap().generators().to_vec();
                }
                return Ok(out);
            }
        }
        // The bottom may only be elementary modulo C; the realization on
        // C's orbits covers that in one pass when it is faithful.
        if let Some(ladder) = quotient_orbit_ladder(group, c, &bottom)? {
            return Ok(ladder);
        }
    }
    Ok(vec![minimal_normal_over(group, c)?])
}

/// Orders of the factors of a chief series of `group`, bottom up, computed
/// by iterating minimal normal subgroups over the current term.
pub fn chief_factor_orders(group: &PermGroup) -> Result<Vec<ChiefFactor>> {
    let mut current = PermGroup::trivial(group.degree());
    let mut out = Vec::new();
    while current.order() < group.order() {
        for next in chief_ladder_over(group, &current)? {
            let order = next.order() / current.order();
            let abelian = next.generators().iter().enumerate().all(|(i, a)| {
                next.generators()[i..]
                    .iter()
                    .all(|b| current.contains_unchecked(&a.commutator(b)))
            });
            out.push(ChiefFactor { order, abelian });
            current = next;
        }
    }
    Ok(out)
}

/// If a single orbit's support splits off as a direct factor, the two
/// factors restricted faithfully to their supports.
fn split_direct_orbit_factor(group: &PermGroup) -> Result<Option<(PermGroup, PermGroup)>> {
    let orbits = group.orbits();
    if orbits.num_classes() < 2 {
        return Ok(None);
    }
    for class in orbits.classes() {
        if class.len() == group.degree() {
            continue;
        }
        let complement: Vec<usize> = (0..group.degree()).filter(|p| !class.contains(p)).collect();
        let inside = group.pointwise_stabilizer(&complement)?;
        if inside.is_trivial() {
            continue;
        }
        let outside = group.pointwise_stabilizer(class)?;
        if &(inside.order() * outside.order()) == group.order() {
            let a = crate::action::restricted_action(&inside, class)?.image;
            let b = crate::action::restricted_action(&outside, &complement)?.image;
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

/// True iff every chief factor has prime order.
pub fn is_supersolvable(group: &PermGroup) -> Result<bool> {
    if group.is_trivial() {
        return Ok(true);
    }
    // Prime-power order: nilpotent, hence supersolvable.
    if prime_power_split(group.order()).is_some() {
        return Ok(true);
    }
    // Direct factors across orbit supports split the question.
    if let Some((a, b)) = split_direct_orbit_factor(group)? {
        return Ok(is_supersolvable(&a)? && is_supersolvable(&b)?);
    }
    if !group.is_solvable() {
        return Ok(false);
    }
    for factor in chief_factor_orders(group)? {
        if !biguint_is_prime(&factor.order) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The multiset of composition factor orders, ascending.
pub fn composition_factor_orders(group: &PermGroup) -> Result<Vec<BigUint>> {
    if let Some((p, d)) = prime_power_split(group.order()) {
        return Ok(vec![BigUint::from(p); d as usize]);
    }
    if let Some((a, b)) = split_direct_orbit_factor(group)? {
        let mut out = composition_factor_orders(&a)?;
        out.extend(composition_factor_orders(&b)?);
        out.sort();
        return Ok(out);
    }
    let mut out: Vec<BigUint> = Vec::new();
    for factor in chief_factor_orders(group)? {
        if factor.abelian {
            // Elementary abelian p^d: d factors of p.
            let (p, d) = prime_power_split(&factor.order).ok_or_else(|| {
                Error::internal("abelian chief factor of non-prime-power order".to_string())
            })?;
            for _ in 0..d {
                out.push(BigUint::from(p));
            }
        } else {
            // T^k for a nonabelian simple T: largest proper-power split whose
            // root is not a prime power.
            let (t, k) = simple_power_split(&factor.order);
            for _ in 0..k {
                out.push(t.clone());
            }
        }
    }
    out.sort();
    Ok(out)
}

fn biguint_is_prime(n: &BigUint) -> bool {
    match u64::try_from(n) {
        Ok(v) => is_prime(v),
        Err(_) => false, // chief factors of prime order always fit
    }
}

fn prime_power_split(n: &BigUint) -> Option<(u64, u32)> {
    if n <= &BigUint::from(1u32) {
        return None;
    }
    let mut v = n.clone();
    let mut p = 2u64;
    loop {
        if (&v % BigUint::from(p)) == BigUint::from(0u32) {
            let mut d = 0u32;
            while (&v % BigUint::from(p)) == BigUint::from(0u32) {
                v /= BigUint::from(p);
                d += 1;
            }
            return if v == BigUint::from(1u32) {
                Some((p, d))
            } else {
                None
            };
        }
        p += 1;
        if p > 1_000_000 {
            return None;
        }
    }
}

fn simple_power_split(n: &BigUint) -> (BigUint, u32) {
    let bits = n.bits() as u32;
    for k in (2..=bits.max(2)).rev() {
        let root = n.nth_root(k);
        if &root.pow(k) == n && prime_power_split(&root).is_none() && root > BigUint::from(1u32) {
            return (root, k);
        }
    }
    (n.clone(), 1)
}
