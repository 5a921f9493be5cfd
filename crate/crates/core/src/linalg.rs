//! Small dense linear algebra over F_p (p a small prime), plus coordinates
//! for elementary abelian permutation groups.
//!
//! Used to find minimal invariant subspaces of conjugation modules: chief
//! factors of solvable groups are elementary abelian, so minimal normal
//! subgroups reduce to minimal submodules. The search is exact for the cases
//! the pipeline needs: a complete common-eigenvector enumeration decides
//! whether a 1-dimensional submodule exists, and small spaces are enumerated
//! outright.
//!
//! Index loops are used throughout: the arithmetic reads better row[i]/col[j]
//! style than through iterator chains.
#![allow(clippy::needless_range_loop)]

use crate::error::Error;
use crate::perm::Perm;
use crate::Result;

pub(crate) type FpVec = Vec<u64>;

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a ≠ 0.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

#[derive(Clone, PartialEq, Debug)]
pub(crate) struct FpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<u64>,
}

impl FpMat {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> FpMat {
        FpMat {
            p,
            rows,
            cols,
            a: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> FpMat {
        let mut m = FpMat::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[FpVec]) -> FpMat {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = FpMat::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.a[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> FpVec {
        self.a[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u64]) -> FpVec {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = vec![0u64; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] = (out[j] + vi * self.get(i, j)) % self.p;
            }
        }
        out
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = FpMat::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            let prod = other.apply_row(&row);
            for (j, &x) in prod.iter().enumerate() {
                out.set(i, j, x);
            }
        }
        out
    }

    pub fn sub_scalar_diag(&self, lambda: u64) -> FpMat {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = (out.get(i, i) + self.p - lambda % self.p) % self.p;
            out.set(i, i, v);
        }
        out
    }

    /// Left kernel `{v : v · M = 0}`.
    pub fn kernel_left(&self) -> Vec<FpVec> {
        // Equations indexed by columns: Σ_i v_i M[i][c] = 0.
        let eqs: Vec<FpVec> = (0..self.cols)
            .map(|c| (0..self.rows).map(|i| self.get(i, c)).collect())
            .collect();
        nullspace(self.p, &eqs, self.rows)
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<FpMat> {
        let n = self.rows;
        debug_assert_eq!(n, self.cols);
        let mut work = self.clone();
        let mut inv = FpMat::identity(self.p, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| work.get(r, col) != 0)?;
            for j in 0..n {
                work.a.swap(col * n + j, pivot * n + j);
                inv.a.swap(col * n + j, pivot * n + j);
            }
            let scale = inv_mod(work.get(col, col), self.p);
            for j in 0..n {
                work.set(col, j, work.get(col, j) * scale % self.p);
                inv.set(col, j, inv.get(col, j) * scale % self.p);
            }
            for r in 0..n {
                if r == col || work.get(r, col) == 0 {
                    continue;
                }
                let factor = work.get(r, col);
                for j in 0..n {
                    let w = (work.get(r, j) + (self.p - factor) * work.get(col, j)) % self.p;
                    work.set(r, j, w);
                    let v = (inv.get(r, j) + (self.p - factor) * inv.get(col, j)) % self.p;
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }
}

/// Basis of `{x ∈ F_p^nvars : eq · x = 0 for every equation row}`.
fn nullspace(p: u64, eqs: &[FpVec], nvars: usize) -> Vec<FpVec> {
    let mut rows: Vec<FpVec> = eqs
        .iter()
        .filter(|r| r.iter().any(|&x| x % p != 0))
        .cloned()
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut reduced: Vec<FpVec> = Vec::new();
    for row in rows.iter_mut() {
        let mut r: FpVec = row.iter().map(|&x| x % p).collect();
        for (k, &piv) in pivots.iter().enumerate() {
            let c = r[piv] % p;
            if c != 0 {
                for j in 0..nvars {
                    r[j] = (r[j] + (p - c) * reduced[k][j]) % p;
                }
            }
        }
        if let Some(piv) = (0..nvars).find(|&j| !r[j].is_multiple_of(p)) {
            let scale = inv_mod(r[piv], p);
            for x in r.iter_mut() {
                *x = *x * scale % p;
            }
            // Back-substitute into earlier rows.
            for k in 0..reduced.len() {
                let c = reduced[k][piv];
                if c != 0 {
                    for j in 0..nvars {
                        reduced[k][j] = (reduced[k][j] + (p - c) * r[j]) % p;
                    }
                }
            }
            pivots.push(piv);
            reduced.push(r);
        }
    }
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..nvars {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; nvars];
        v[free] = 1;
        for (k, &piv) in pivots.iter().enumerate() {
            v[piv] = (p - reduced[k][free]) % p;
        }
        basis.push(v);
    }
    basis
}

/// A subspace of F_p^ambient kept in reduced row echelon form.
#[derive(Clone, PartialEq)]
pub(crate) struct Subspace {
    pub p: u64,
    pub ambient: usize,
    rows: Vec<FpVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u64, ambient: usize) -> Subspace {
        Subspace {
            p,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u64, ambient: usize) -> Subspace {
        let mut s = Subspace::zero(p, ambient);
        for i in 0..ambient {
            let mut v = vec![0; ambient];
            v[i] = 1;
            s.insert(&v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[FpVec] {
        &self.rows
    }

    /// Residue of `v` after elimination by the basis.
    pub fn residue(&self, v: &[u64]) -> FpVec {
        let p = self.p;
        let mut r: FpVec = v.iter().map(|&x| x % p).collect();
        for (k, &piv) in self.pivots.iter().enumerate() {
            let c = r[piv];
            if c != 0 {
                for j in 0..self.ambient {
                    r[j] = (r[j] + (p - c) * self.rows[k][j]) % p;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.residue(v).iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut r = self.residue(v);
        let Some(piv) = (0..self.ambient).find(|&j| r[j] != 0) else {
            return false;
        };
        let scale = inv_mod(r[piv], self.p);
        for x in r.iter_mut() {
            *x = *x * scale % self.p;
        }
        for k in 0..self.rows.len() {
            let c = self.rows[k][piv];
            if c != 0 {
                for j in 0..self.ambient {
                    self.rows[k][j] = (self.rows[k][j] + (self.p - c) * r[j]) % self.p;
                }
            }
        }
        let at = self
            .pivots
            .iter()
            .position(|&q| q > piv)
            .unwrap_or(self.pivots.len());
        self.pivots.insert(at, piv);
        self.rows.insert(at, r);
        true
    }

    /// Coefficients of `v` in the basis rows, if `v` lies in the subspace.
    /// Valid because rows are in reduced echelon form.
    pub fn coords_in_basis(&self, v: &[u64]) -> Option<FpVec> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&piv| v[piv] % self.p).collect())
    }

    /// The vector with the given coefficients over the basis rows.
    pub fn combination(&self, c: &[u64]) -> FpVec {
        let mut out = vec![0u64; self.ambient];
        for (k, &ck) in c.iter().enumerate() {
            for j in 0..self.ambient {
                out[j] = (out[j] + ck * self.rows[k][j]) % self.p;
            }
        }
        out
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x = Σ a_k u_k ∈ other ⇔ Σ a_k residue_other(u_k) = 0.
        let residues: Vec<FpVec> = self.rows.iter().map(|u| other.residue(u)).collect();
        let eqs: Vec<FpVec> = (0..self.ambient)
            .map(|j| residues.iter().map(|r| r[j]).collect())
            .collect();
        let sols = nullspace(self.p, &eqs, self.rows.len());
        let mut out = Subspace::zero(self.p, self.ambient);
        for a in sols {
            out.insert(&self.combination(&a));
        }
        out
    }
}

/// A G-module: F_p^dim with one action matrix per group generator
/// (row-vector convention: `v ↦ v · M`).
pub(crate) struct GModule {
    pub p: u64,
    pub dim: usize,
    pub actions: Vec<FpMat>,
}

const ENUM_VECTOR_LIMIT: u64 = 4096;
const EIGEN_NODE_BUDGET: usize = 1_000_000;

impl GModule {
    /// Smallest submodule containing the seed vectors.
    pub fn spin(&self, seeds: &[FpVec]) -> Subspace {
        let mut sub = Subspace::zero(self.p, self.dim);
        let mut queue: Vec<FpVec> = Vec::new();
        for s in seeds {
            if sub.insert(s) {
                queue.push(s.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for m in &self.actions {
                let w = m.apply_row(&v);
                if sub.insert(&w) {
                    queue.push(w);
                }
            }
        }
        sub
    }

    /// Action matrices restricted to an invariant subspace, in its basis.
    fn restrict_to(&self, sub: &Subspace) -> Result<GModule> {
        let mut actions = Vec::with_capacity(self.actions.len());
        for m in &self.actions {
            let mut r = FpMat::zeros(self.p, sub.dim(), sub.dim());
            for (i, u) in sub.basis().iter().enumerate() {
                let w = m.apply_row(u);
                let c = sub.coords_in_basis(&w).ok_or_else(|| {
                    Error::internal("subspace not invariant under module action".to_string())
                })?;
                for (j, &x) in c.iter().enumerate() {
                    r.set(i, j, x);
                }
            }
            actions.push(r);
        }
        Ok(GModule {
            p: self.p,
            dim: sub.dim(),
            actions,
        })
    }

    /// Complete search for a common eigenvector of all action matrices,
    /// enumerating eigenvalue choices generator by generator. A hit spans an
    /// invariant line; exhaustion proves no 1-dimensional submodule exists.
    fn eigen_dfs(
        &self,
        gen_index: usize,
        space: &Subspace,
        budget: &mut usize,
    ) -> Result<Option<FpVec>> {
        if *budget == 0 {
            return Err(Error::internal(
                "eigenvector search budget exceeded".to_string(),
            ));
        }
        *budget -= 1;
        if space.dim() == 0 {
            return Ok(None);
        }
        if gen_index == self.actions.len() {
            return Ok(Some(space.basis()[0].clone()));
        }
        let m = &self.actions[gen_index];
        for lambda in 0..self.p {
            let shifted = m.sub_scalar_diag(lambda);
            let kernel = shifted.kernel_left();
            let mut eigenspace = Subspace::zero(self.p, self.dim);
            for v in kernel {
                eigenspace.insert(&v);
            }
            let next = space.intersect(&eigenspace);
            if next.dim() == 0 {
                continue;
            }
            if let Some(found) = self.eigen_dfs(gen_index + 1, &next, budget)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    /// A minimal nonzero submodule. Exact whenever a 1-dimensional submodule
    /// exists (always, for supersolvable actions) or the space is small
    /// enough to enumerate; otherwise a bounded search with an honest error
    /// if minimality cannot be certified.
    pub fn minimal_submodule(&self) -> Result<Subspace> {
        if self.dim == 0 {
            return Err(Error::internal(
                "minimal submodule of zero module".to_string(),
            ));
        }
        let mut current = Subspace::full(self.p, self.dim);
        'outer: loop {
            if current.dim() == 1 {
                return Ok(current);
            }
            let restricted = self.restrict_to(&current)?;
            let mut budget = EIGEN_NODE_BUDGET;
            let full = Subspace::full(self.p, restricted.dim);
            if let Some(line) = restricted.eigen_dfs(0, &full, &mut budget)? {
                // `line` is in current-basis coordinates.
                let ambient = current.combination(&line);
                let spun = self.spin(std::slice::from_ref(&ambient));
                if spun.dim() != 1 {
                    return Err(Error::internal(
                        "common eigenvector did not span an invariant line".to_string(),
                    ));
                }
                return Ok(spun);
            }
            // No invariant line inside `current`; hunt for a proper submodule.
            let count = (self.p as u128).checked_pow(current.dim() as u32);
            if count.is_some_and(|c| c <= ENUM_VECTOR_LIMIT as u128) {
                let mut coeffs = vec![0u64; current.dim()];
                while increment(&mut coeffs, self.p) {
                    let v = current.combination(&coeffs);
                    let u = self.spin(&[v]);
                    if u.dim() < current.dim() {
                        current = u;
                        continue 'outer;
                    }
                }
                return Ok(current);
            }
            if let Some(smaller) = self.shrink_once(&current)? {
                current = smaller;
                continue 'outer;
            }
            return Err(Error::internal(
                "could not certify a minimal submodule at this scale".to_string(),
            ));
        }
    }

    /// A subspace `U` with `base ⊆ U` and `U/base` an irreducible submodule
    /// of the quotient module. `base` must be invariant.
    pub fn minimal_submodule_over(&self, base: &Subspace) -> Result<Subspace> {
        let (quotient, reps) = self.quotient_by(base)?;
        let min_q = quotient.minimal_submodule()?;
        let mut out = base.clone();
        for qrow in min_q.basis() {
            out.insert(&lift_through(qrow, &reps, self.p, self.dim));
        }
        Ok(out)
    }

    /// An ascending chain `base ⊂ U_1 ⊂ … ⊂ F_p^dim` with irreducible
    /// consecutive quotients.
    pub fn composition_chain_over(&self, base: &Subspace) -> Result<Vec<Subspace>> {
        let mut chain = Vec::new();
        let mut current = base.clone();
        while current.dim() < self.dim {
            current = self.minimal_submodule_over(&current)?;
            chain.push(current.clone());
        }
        Ok(chain)
    }

    /// The quotient module modulo an invariant subspace, together with the
    /// ambient representatives of the quotient basis.
    fn quotient_by(&self, base: &Subspace) -> Result<(GModule, Vec<FpVec>)> {
        let p = self.p;
        let d = self.dim;
        let mut completion = base.clone();
        let mut rows: Vec<FpVec> = base.basis().to_vec();
        let mut reps: Vec<FpVec> = Vec::new();
        for j in 0..d {
            let mut unit = vec![0u64; d];
            unit[j] = 1;
            if completion.insert(&unit) {
                rows.push(unit.clone());
                reps.push(unit);
            }
        }
        let bmat = FpMat::from_rows(p, &rows);
        let binv = bmat
            .inverse()
            .ok_or_else(|| Error::internal("basis completion not invertible".to_string()))?;
        let cdim = base.dim();
        let qdim = reps.len();
        let mut actions = Vec::with_capacity(self.actions.len());
        for m in &self.actions {
            let mut q = FpMat::zeros(p, qdim, qdim);
            for (i, rep) in reps.iter().enumerate() {
                let img = m.apply_row(rep);
                // img = coeff · B; quotient coordinates are the tail.
                let coeff = binv.apply_row(&img);
                for (j, &x) in coeff[cdim..].iter().enumerate() {
                    q.set(i, j, x);
                }
            }
            actions.push(q);
        }
        Ok((
            GModule {
                p,
                dim: qdim,
                actions,
            },
            reps,
        ))
    }

    /// One heuristic shrink attempt: spin eigenvectors of single generators
    /// and of a few short products, restricted to `current`.
    fn shrink_once(&self, current: &Subspace) -> Result<Option<Subspace>> {
        let restricted = self.restrict_to(current)?;
        let mut candidates: Vec<FpVec> = Vec::new();
        let mut mats: Vec<FpMat> = restricted.actions.clone();
        let k = restricted.actions.len().min(4);
        for i in 0..k {
            for j in 0..k {
                mats.push(restricted.actions[i].mul(&restricted.actions[j]));
            }
        }
        for m in &mats {
            for lambda in 0..self.p {
                let kernel = m.sub_scalar_diag(lambda).kernel_left();
                for v in &kernel {
                    candidates.push(v.clone());
                }
                for pair in kernel.windows(2) {
                    let sum: FpVec = pair[0]
                        .iter()
                        .zip(&pair[1])
                        .map(|(&a, &b)| (a + b) % self.p)
                        .collect();
                    candidates.push(sum);
                }
            }
        }
        for cand in candidates {
            if cand.iter().all(|&x| x == 0) {
                continue;
            }
            let ambient = current.combination(&cand);
            let u = self.spin(&[ambient]);
            if u.dim() > 0 && u.dim() < current.dim() {
                return Ok(Some(u));
            }
        }
        Ok(None)
    }
}

fn lift_through(qrow: &[u64], reps: &[FpVec], p: u64, dim: usize) -> FpVec {
    let mut out = vec![0u64; dim];
    for (k, &ck) in qrow.iter().enumerate() {
        for j in 0..dim {
            out[j] = (out[j] + ck * reps[k][j]) % p;
        }
    }
    out
}

/// Odometer increment over coefficient tuples; returns false after the last.
fn increment(coeffs: &mut [u64], p: u64) -> bool {
    for c in coeffs.iter_mut() {
        *c += 1;
        if *c < p {
            return true;
        }
        *c = 0;
    }
    false
}

/// Coordinates for an elementary abelian permutation group of exponent `p`.
///
/// Each group orbit is labelled by a BFS chart; chart labels are exact along
/// tree edges, and the non-tree edges span the per-orbit stabilizer subspace.
/// Expressing an element in the basis is then one linear solve.
pub(crate) struct ElemAbelian {
    pub p: u64,
    pub degree: usize,
    pub basis: Vec<Perm>,
    /// Index (into the generator list given to `build`) of each basis element.
    pub basis_source: Vec<usize>,
    /// Per orbit: base point, chart labels per point, stabilizer subspace.
    charts: Vec<(usize, Vec<Option<FpVec>>, Subspace)>,
    /// Solver for coords: stacked equation columns and their offsets.
    eq_cols: Vec<(usize, FpVec)>,
}

impl ElemAbelian {
    /// Builds coordinates from a generating set. The generators must commute
    /// pairwise and have order dividing `p`.
    pub fn build(p: u64, degree: usize, gens: &[Perm]) -> Result<ElemAbelian> {
        for (i, a) in gens.iter().enumerate() {
            if !a.is_identity() && a.order() != p as u128 {
                return Err(Error::internal(
                    "elementary abelian coordinates: generator order is not p".to_string(),
                ));
            }
            for b in &gens[i + 1..] {
                if !a.commutator(b).is_identity() {
                    return Err(Error::internal(
                        "elementary abelian coordinates: generators do not commute".to_string(),
                    ));
                }
            }
        }
        let mut ea = ElemAbelian {
            p,
            degree,
            basis: Vec::new(),
            basis_source: Vec::new(),
            charts: Vec::new(),
            eq_cols: Vec::new(),
        };
        for (idx, g) in gens.iter().enumerate() {
            if g.is_identity() || ea.coords(g).is_some() {
                continue;
            }
            ea.basis.push(g.clone());
            ea.basis_source.push(idx);
            ea.rebuild();
        }
        Ok(ea)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn rebuild(&mut self) {
        let d = self.basis.len();
        let p = self.p;
        self.charts.clear();
        let mut claimed = vec![false; self.degree];
        for start in 0..self.degree {
            if claimed[start] {
                continue;
            }
            let mut labels: Vec<Option<FpVec>> = vec![None; self.degree];
            labels[start] = Some(vec![0; d]);
            let mut queue = vec![start];
            claimed[start] = true;
            let mut head = 0;
            while head < queue.len() {
                let pt = queue[head];
                head += 1;
                for (i, b) in self.basis.iter().enumerate() {
                    let img = b.apply(pt);
                    if labels[img].is_none() {
                        let mut l = labels[pt].clone().unwrap();
                        l[i] = (l[i] + 1) % p;
                        labels[img] = Some(l);
                        claimed[img] = true;
                        queue.push(img);
                    }
                }
            }
            // Non-tree edges span the stabilizer subspace of this orbit.
            let mut stab = Subspace::zero(p, d);
            for &pt in &queue {
                for (i, b) in self.basis.iter().enumerate() {
                    let img = b.apply(pt);
                    let mut rel = vec![0u64; d];
                    let from = labels[pt].as_ref().unwrap();
                    let to = labels[img].as_ref().unwrap();
                    for j in 0..d {
                        rel[j] = (from[j] + p - to[j]) % p;
                    }
                    rel[i] = (rel[i] + 1) % p;
                    stab.insert(&rel);
                }
            }
            self.charts.push((start, labels, stab));
        }
        // Solver: condition "c ≡ label mod stab" per orbit, expressed as
        // complement coordinates. Precompute the extraction columns.
        self.eq_cols.clear();
        for (idx, (_, _, stab)) in self.charts.iter().enumerate() {
            // Rows of a basis matrix: stab rows then unit completions.
            let mut completion = stab.clone();
            let mut extra_rows: Vec<FpVec> = Vec::new();
            for j in 0..d {
                let mut unit = vec![0u64; d];
                unit[j] = 1;
                if completion.insert(&unit) {
                    extra_rows.push(unit);
                }
            }
            if extra_rows.is_empty() {
                continue;
            }
            let mut rows: Vec<FpVec> = stab.basis().to_vec();
            rows.extend(extra_rows.iter().cloned());
            let bmat = FpMat::from_rows(p, &rows);
            let binv = bmat
                .inverse()
                .expect("basis completion matrix is invertible");
            // c·B⁻¹ tail coordinates must match; store the tail columns.
            for col in stab.dim()..d {
                let column: FpVec = (0..d).map(|r| binv.get(r, col)).collect();
                self.eq_cols.push((idx, column));
            }
        }
    }

    /// The element `∏ basis[i]^{c[i]}`.
    pub fn elem(&self, c: &[u64]) -> Perm {
        let mut out = Perm::identity(self.degree);
        for (i, &ci) in c.iter().enumerate() {
            if ci % self.p != 0 {
                out = out.then(&self.basis[i].pow((ci % self.p) as u128));
            }
        }
        out
    }

    /// Coordinates of `x` in the basis, or None if `x` is not in the span.
    pub fn coords(&self, x: &Perm) -> Option<FpVec> {
        let d = self.basis.len();
        if d == 0 {
            return x.is_identity().then(Vec::new);
        }
        // Solve the stacked affine conditions c·col = label(ω^x)·col.
        let mut eqs: Vec<FpVec> = Vec::new();
        let mut rhs: Vec<u64> = Vec::new();
        for (idx, col) in &self.eq_cols {
            let (start, labels, _) = &self.charts[*idx];
            let target = labels[x.apply(*start)].as_ref()?;
            let mut dot = 0u64;
            for j in 0..d {
                dot = (dot + target[j] * col[j]) % self.p;
            }
            eqs.push(col.clone());
            rhs.push(dot);
        }
        let c = solve_unique(self.p, &eqs, &rhs, d)?;
        // The system is necessary, not sufficient: verify by multiplication.
        (self.elem(&c) == *x).then_some(c)
    }
}

/// Solves `Σ_j c_j eq[i][j] = rhs[i]` for all i; requires a unique solution.
fn solve_unique(p: u64, eqs: &[FpVec], rhs: &[u64], nvars: usize) -> Option<FpVec> {
    let mut aug: Vec<FpVec> = eqs
        .iter()
        .zip(rhs)
        .map(|(e, &r)| {
            let mut row = e.clone();
            row.push(r % p);
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut rank = 0;
    for col in 0..nvars {
        let Some(pr) = (rank..aug.len()).find(|&r| !aug[r][col].is_multiple_of(p)) else {
            continue;
        };
        aug.swap(rank, pr);
        let scale = inv_mod(aug[rank][col] % p, p);
        for x in aug[rank].iter_mut() {
            *x = *x * scale % p;
        }
        for r in 0..aug.len() {
            if r != rank && !aug[r][col].is_multiple_of(p) {
                let f = aug[r][col] % p;
                for j in 0..=nvars {
                    aug[r][j] = (aug[r][j] + (p - f) * aug[rank][j]) % p;
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    // Inconsistent system?
    for r in rank..aug.len() {
        if !aug[r][nvars].is_multiple_of(p) {
            return None;
        }
    }
    if rank < nvars {
        return None; // not unique; callers expect injective coordinates
    }
    let mut c = vec![0u64; nvars];
    for &(r, col) in &pivots {
        c[col] = aug[r][nvars] % p;
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    #[test]
    fn subspace_insert_and_contains() {
        let mut s = Subspace::zero(5, 3);
        assert!(s.insert(&[1, 2, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 3, 1])); // sum of the two
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[2, 4, 0]));
        assert!(!s.contains(&[0, 0, 1]));
    }

    #[test]
    fn matrix_inverse_round_trip() {
        let m = FpMat::from_rows(7, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMat::identity(7, 2));
    }

    #[test]
    fn kernel_left_of_singular_matrix() {
        let m = FpMat::from_rows(3, &[vec![1, 2], vec![2, 1]]);
        // rows sum to (0,0) mod 3: (1,1)·M = 0.
        let k = m.kernel_left();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        let applied = m.apply_row(v);
        assert!(applied.iter().all(|&x| x == 0));
    }

    #[test]
    fn spin_finds_invariant_line_of_rotation_module() {
        // C4 rotation acting on F_2^2 by the permutation matrix swap:
        // invariant line is the diagonal.
        let swap = FpMat::from_rows(2, &[vec![0, 1], vec![1, 0]]);
        let module = GModule {
            p: 2,
            dim: 2,
            actions: vec![swap],
        };
        let min = module.minimal_submodule().unwrap();
        assert_eq!(min.dim(), 1);
        assert!(min.contains(&[1, 1]));
    }

    #[test]
    fn minimal_submodule_of_irreducible_2dim() {
        // D8's 2-dimensional module over F_3: rotation [[0,2],[1,0]],
        // reflection [[1,0],[0,2]]; no invariant line.
        let rot = FpMat::from_rows(3, &[vec![0, 2], vec![1, 0]]);
        let refl = FpMat::from_rows(3, &[vec![1, 0], vec![0, 2]]);
        let module = GModule {
            p: 3,
            dim: 2,
            actions: vec![rot, refl],
        };
        let min = module.minimal_submodule().unwrap();
        assert_eq!(min.dim(), 2);
    }

    #[test]
    fn elem_abelian_coords_round_trip() {
        // V = ⟨(01), (23)⟩ inside Sym(4): elementary abelian of order 4.
        let a = Perm::from_cycles(4, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(4, &[vec![2, 3]]).unwrap();
        let ea = ElemAbelian::build(2, 4, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(ea.dim(), 2);
        let ab = a.then(&b);
        assert_eq!(ea.coords(&ab), Some(vec![1, 1]));
        assert_eq!(ea.coords(&a), Some(vec![1, 0]));
        let outside = Perm::from_cycles(4, &[vec![0, 2]]).unwrap();
        assert_eq!(ea.coords(&outside), None);
        assert_eq!(ea.elem(&[1, 1]), ab);
    }

    #[test]
    fn elem_abelian_with_overlapping_orbits() {
        // Diagonal C3 × rotation C3 on 3 points is just C3; coordinates on a
        // single orbit with a nontrivial stabilizer subspace.
        let r = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let r2 = r.then(&r);
        let ea = ElemAbelian::build(3, 3, &[r.clone(), r2.clone()]).unwrap();
        assert_eq!(ea.dim(), 1);
        assert_eq!(ea.coords(&r2), Some(vec![2]));
    }
}
