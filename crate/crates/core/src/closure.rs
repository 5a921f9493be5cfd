//! The main pipeline: 2-closure of a supersolvable group, with runtime
//! verification of the structural facts the construction relies on.

use num_bigint::BigUint;

use crate::certificate::{find_certificate_with_majorant, Certificate};
use crate::error::Error;
use crate::flags::{
    extend_to_maximal_k_flag_cached, induced_flag_on_set, maximal_normal_flag, Flag,
};
use crate::group::PermGroup;
use crate::majorant::{build_identification_trusted, majorant_generators};
use crate::orbitals::{brute_force_closure, same_two_orbits, two_orbits, ORACLE_DEGREE_LIMIT};
use crate::perm::Perm;
use crate::sections::{section_orbit_sizes_prime, sections_of_cached};
use crate::solver::aut_in_group_seeded;
use crate::structure::{composition_factor_orders, is_supersolvable};
use crate::Result;

/// Verification flags populated on every run.
#[derive(Clone, Debug)]
pub struct Verification {
    /// Output and input have the same 2-orbits (mandatory).
    pub two_equivalent: bool,
    pub contains_input: bool,
    /// Every composition factor order of the output is a prime or `p!/2`.
    pub factor_check: bool,
    /// Agreement with the brute-force oracle, when requested and in range.
    pub oracle_check: Option<bool>,
}

/// Everything the pipeline produced, for reporting and tests.
pub struct ClosureReport {
    pub input: PermGroup,
    pub relative_closure: PermGroup,
    pub flag: Flag,
    pub extended_flag: Flag,
    pub certificates: Vec<Certificate>,
    pub output: PermGroup,
    pub verification: Verification,
}

/// The 2-closure of a supersolvable permutation group.
pub fn two_closure(group: &PermGroup) -> Result<ClosureReport> {
    two_closure_checked(group, false)
}

/// Same, optionally comparing against the brute-force oracle (degree guard
/// applies; out-of-range oracle requests record `None`).
pub fn two_closure_checked(group: &PermGroup, with_oracle: bool) -> Result<ClosureReport> {
    if !is_supersolvable(group)? {
        return Err(Error::precondition(
            "two_closure refused: input group is not supersolvable (a chief factor has composite order)"
                .to_string(),
        ));
    }
    let coloring = two_orbits(group);

    // Step 1: maximal normal flag of the input (normal by construction).
    let flag = maximal_normal_flag(group)?;

    // Step 2: relative closure K = Aut(coloring) ∩ W_F(G).
    let id_input = build_identification_trusted(group, &flag)?;
    let majorant = majorant_generators(group, &flag, &id_input)?;
    if !majorant.is_solvable() {
        return Err(Error::internal(
            "majorant of a supersolvable group must be solvable".to_string(),
        ));
    }
    let k_group = aut_in_group_seeded(&coloring, &majorant, group.generators())?;
    if !same_two_orbits(&coloring, &two_orbits(&k_group))? {
        return Err(Error::internal(
            "relative closure changed the 2-orbits".to_string(),
        ));
    }

    // Step 3: extend to a maximal normal K-flag. The extension validates
    // that the input chain is a normal K-flag (a fact the construction
    // relies on for 2-equivalent overgroups). Kernels of K are shared with
    // the section stage through one cache.
    let mut k_kernels = crate::action::KernelCache::new();
    let extended = extend_to_maximal_k_flag_cached(&k_group, &flag, &mut k_kernels)?;
    // The extension must not refine the flag inside any single orbit.
    for orbit in k_group.orbits().classes() {
        let restricted_old = induced_flag_on_set(&flag, orbit)?;
        let restricted_new = induced_flag_on_set(&extended, orbit)?;
        if restricted_old.members() != restricted_new.members() {
            return Err(Error::internal(
                "flag extension changed a restriction to an orbit".to_string(),
            ));
        }
    }

    // Step 4: one certificate search per section, in flag order.
    let id_k = build_identification_trusted(&k_group, &extended)?;
    let k_majorant = majorant_generators(&k_group, &extended, &id_k)?;
    let sections = sections_of_cached(&k_group, &extended, &mut k_kernels)?;
    let mut certificates = Vec::new();
    let mut witnesses: Vec<Perm> = Vec::new();
    for section in &sections {
        if !section_orbit_sizes_prime(section) {
            return Err(Error::internal(
                "section of the relative closure has non-prime or mixed orbit sizes".to_string(),
            ));
        }
        // The section acts faithfully on every invariant set of the ambient
        // action, equivalently on every K-orbit inside the section points.
        let k_local: Vec<Perm> = k_group
            .generators()
            .iter()
            .map(|g| {
                section.restrict_full_perm(g).ok_or_else(|| {
                    Error::internal("relative closure does not preserve a section".to_string())
                })
            })
            .collect::<Result<_>>()?;
        let k_on_section = PermGroup::from_generators(section.group.degree(), k_local)?;
        for ambient_orbit in k_on_section.orbits().classes() {
            let constituent = crate::action::restricted_action(&section.group, ambient_orbit)?;
            if !constituent.kernel.is_trivial() {
                return Err(Error::internal(
                    "section is unfaithful on an invariant set".to_string(),
                ));
            }
        }
        let certificate = find_certificate_with_majorant(
            &k_group,
            &extended,
            section,
            &id_k,
            &coloring,
            &k_majorant,
        )?;
        witnesses.extend(certificate.x_s.iter().cloned());
        certificates.push(certificate);
    }

    // Step 5: the closure is generated by K and the certificate elements.
    let output = k_group.closure_with(&witnesses)?;

    let two_equivalent = same_two_orbits(&coloring, &two_orbits(&output))?;
    if !two_equivalent {
        return Err(Error::internal(
            "output group is not 2-equivalent to the input".to_string(),
        ));
    }
    let contains_input = output.contains_group(group)?;
    let factor_ok = factor_check(&output)?;
    let oracle_check = if with_oracle && group.degree() <= ORACLE_DEGREE_LIMIT {
        let oracle = brute_force_closure(group)?;
        Some(output.same_group(&oracle)?)
    } else {
        None
    };
    Ok(ClosureReport {
        input: group.clone(),
        relative_closure: k_group,
        flag,
        extended_flag: extended,
        certificates,
        output,
        verification: Verification {
            two_equivalent,
            contains_input,
            factor_check: factor_ok,
            oracle_check,
        },
    })
}

/// Whether two groups have identical 2-orbits.
pub fn verify_two_equivalent(a: &PermGroup, b: &PermGroup) -> Result<bool> {
    if a.degree() != b.degree() {
        return Err(Error::input(
            "degree mismatch in verify_two_equivalent".to_string(),
        ));
    }
    same_two_orbits(&two_orbits(a), &two_orbits(b))
}

/// Whether every composition factor order is a prime or `p!/2` for a prime
/// `p ≥ 5` (the order of an alternating group of prime degree).
pub fn factor_check(group: &PermGroup) -> Result<bool> {
    let factors = composition_factor_orders(group)?;
    Ok(factors.iter().all(order_is_prime_or_alternating))
}

fn order_is_prime_or_alternating(order: &BigUint) -> bool {
    if let Ok(v) = u64::try_from(order) {
        if v >= 2 && is_prime_u64(v) {
            return true;
        }
    }
    // p!/2 for p prime ≥ 5.
    let mut p = 5u64;
    loop {
        let mut half_fact = BigUint::from(1u32);
        for k in 3..=p {
            half_fact *= BigUint::from(k);
        }
        if &half_fact == order {
            return is_prime_u64(p);
        }
        if &half_fact > order {
            return false;
        }
        p += 1;
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> PermGroup {
        let rot = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
        PermGroup::from_generators(n, vec![rot]).unwrap()
    }

    fn agl1(p: usize, primitive_root: usize) -> PermGroup {
        let add = Perm::from_images((0..p).map(|i| (i + 1) % p).collect()).unwrap();
        let mul = Perm::from_images((0..p).map(|i| i * primitive_root % p).collect()).unwrap();
        PermGroup::from_generators(p, vec![add, mul]).unwrap()
    }

    fn sym(n: usize) -> PermGroup {
        let t = Perm::from_cycles(n, &[vec![0, 1]]).unwrap();
        let c = Perm::from_cycles(n, &[(0..n).collect()]).unwrap();
        PermGroup::from_generators(n, vec![t, c]).unwrap()
    }

    #[test]
    fn closure_of_agl5_is_sym5() {
        let report = two_closure_checked(&agl1(5, 2), true).unwrap();
        assert_eq!(report.output.order_u64(), Some(120));
        assert!(report.verification.two_equivalent);
        assert!(report.verification.contains_input);
        assert!(report.verification.factor_check);
        assert_eq!(report.verification.oracle_check, Some(true));
    }

    #[test]
    fn closure_of_regular_cyclic_is_itself() {
        let report = two_closure_checked(&cyclic(7), true).unwrap();
        assert!(report.output.same_group(&cyclic(7)).unwrap());
        assert_eq!(report.verification.oracle_check, Some(true));
    }

    #[test]
    fn closure_of_c2_wr_c2_is_itself() {
        // C2 ≀ C2 on 4 points (dihedral of order 8).
        let a = Perm::from_cycles(4, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        let w = PermGroup::from_generators(4, vec![a, b]).unwrap();
        assert_eq!(w.order_u64(), Some(8));
        let report = two_closure_checked(&w, true).unwrap();
        assert!(report.output.same_group(&w).unwrap());
        assert_eq!(report.verification.oracle_check, Some(true));
    }

    #[test]
    fn closure_refuses_nonsupersolvable_input() {
        match two_closure(&sym(4)) {
            Err(Error::Precondition(_)) => {}
            other => panic!(
                "expected precondition refusal, got {:?}",
                other.map(|r| r.output)
            ),
        }
    }

    #[test]
    fn two_equivalence_checks() {
        assert!(verify_two_equivalent(&agl1(5, 2), &sym(5)).unwrap());
        assert!(!verify_two_equivalent(&cyclic(5), &agl1(5, 2)).unwrap());
        assert!(verify_two_equivalent(&cyclic(5), &cyclic(5)).unwrap());
    }

    #[test]
    fn factor_check_examples() {
        assert!(factor_check(&sym(5)).unwrap());
        // Solvable groups always pass: their composition factors are prime.
        assert!(factor_check(&sym(4)).unwrap());
        // Alt(6) fails: 360 = 6!/2 but 6 is not prime.
        let alt6 = PermGroup::from_generators(
            6,
            vec![
                Perm::from_cycles(6, &[vec![0, 1, 2]]).unwrap(),
                Perm::from_cycles(6, &[vec![1, 2, 3, 4, 5]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(alt6.order_u64(), Some(360));
        assert!(!factor_check(&alt6).unwrap());
        let report = two_closure(&agl1(7, 3)).unwrap();
        assert_eq!(report.output.order_u64(), Some(5040));
        assert!(report.verification.factor_check);
    }
}
