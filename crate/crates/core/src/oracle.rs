//! Brute-force verification engine: explicit monomial models of
//! `G(r,p,l)` at desk scale, regular elements found by exact
//! root-of-unity arithmetic, and direct checks of centralizers,
//! conjugacy, and induced characters.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::euler::ClassSpec;
use crate::groups::{classify, GroupId};

/// An exact root of unity `e^(2 pi i a/n)`, stored as the reduced
/// exponent fraction `a/n` in `[0,1)`.  Multiplication is addition of
/// exponents mod 1; equality is fraction equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    /// Reduce `num/den` mod 1 into lowest terms.
    pub fn from_frac(num: i128, den: i128) -> Self {
        assert!(den != 0);
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let num = num.rem_euclid(den);
        if num == 0 {
            return RootOfUnity::one();
        }
        let g = (num as u128).gcd(&(den as u128)) as i128;
        RootOfUnity {
            num: (num / g) as u64,
            den: (den / g) as u64,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        RootOfUnity::from_frac(
            self.num as i128 * other.den as i128 + other.num as i128 * self.den as i128,
            self.den as i128 * other.den as i128,
        )
    }

    pub fn pow(&self, k: i64) -> RootOfUnity {
        RootOfUnity::from_frac(self.num as i128 * k as i128, self.den as i128)
    }

    pub fn inv(&self) -> RootOfUnity {
        self.pow(-1)
    }
}

/// An element of `G(r,p,l)`: a permutation of the coordinates together
/// with per-coordinate phase exponents mod `r`.  Coordinate `j` maps to
/// `zeta_r^exps[j] * e_{perm[j]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialElement {
    pub perm: Vec<u32>,
    pub exps: Vec<u32>,
}

/// One basis vector of an eigenspace, supported on a single permutation
/// cycle, with exact root-of-unity entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleVector {
    pub support: Vec<usize>,
    pub entries: Vec<RootOfUnity>,
}

/// An eigenvalue together with its cycle-vector basis; the eigenspace
/// dimension is the number of cycle vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenspaceDescriptor {
    pub eigenvalue: RootOfUnity,
    pub cycle_vectors: Vec<CycleVector>,
}

impl EigenspaceDescriptor {
    pub fn dimension(&self) -> usize {
        self.cycle_vectors.len()
    }
}

/// A fully enumerated `G(r,p,l)` with an element index for fast lookup.
#[derive(Debug, Clone)]
pub struct MonomialGroup {
    pub r: u64,
    pub p: u64,
    pub l: usize,
    pub elements: Vec<MonomialElement>,
    index: HashMap<MonomialElement, usize>,
}

pub const DEFAULT_CAP: u128 = 20000;

/// Enumerate all `r^l * l! / p` elements of `G(r,p,l)`.
pub fn enumerate_group(r: u64, p: u64, l: usize, cap: u128) -> Result<MonomialGroup> {
    assert!(r >= 1 && p >= 1 && l >= 1 && r % p == 0);
    let factorial: u128 = (1..=l as u128).product();
    let order = (r as u128).pow(l as u32) * factorial / p as u128;
    if order > cap {
        return Err(Error::CapExceeded { order, cap });
    }
    let mut perms: Vec<Vec<u32>> = Vec::new();
    permutations(l as u32, &mut (0..l as u32).collect::<Vec<_>>(), &mut perms);
    let mut phase_vectors: Vec<Vec<u32>> = Vec::new();
    let mut current = vec![0u32; l];
    phases(r as u32, p as u32, 0, &mut current, &mut phase_vectors);
    let mut elements = Vec::with_capacity(order as usize);
    for perm in &perms {
        for exps in &phase_vectors {
            elements.push(MonomialElement {
                perm: perm.clone(),
                exps: exps.clone(),
            });
        }
    }
    debug_assert_eq!(elements.len() as u128, order);
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();
    Ok(MonomialGroup {
        r,
        p,
        l,
        elements,
        index,
    })
}

fn permutations(n: u32, scratch: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    // Heap's algorithm, iterative would do as well.
    fn rec(k: usize, scratch: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k <= 1 {
            out.push(scratch.clone());
            return;
        }
        for i in 0..k {
            rec(k - 1, scratch, out);
            if k % 2 == 0 {
                scratch.swap(i, k - 1);
            } else {
                scratch.swap(0, k - 1);
            }
        }
    }
    rec(n as usize, scratch, out);
}

fn phases(r: u32, p: u32, pos: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos == current.len() {
        let sum: u64 = current.iter().map(|&x| x as u64).sum();
        if sum % p as u64 == 0 {
            out.push(current.clone());
        }
        return;
    }
    for v in 0..r {
        current[pos] = v;
        phases(r, p, pos + 1, current, out);
    }
}

impl MonomialGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> MonomialElement {
        MonomialElement {
            perm: (0..self.l as u32).collect(),
            exps: vec![0; self.l],
        }
    }

    /// Composition `a . b` (apply `b` first).
    pub fn compose(&self, a: &MonomialElement, b: &MonomialElement) -> MonomialElement {
        let l = self.l;
        let mut perm = vec![0u32; l];
        let mut exps = vec![0u32; l];
        for j in 0..l {
            let bj = b.perm[j] as usize;
            perm[j] = a.perm[bj];
            exps[j] = ((b.exps[j] as u64 + a.exps[bj] as u64) % self.r) as u32;
        }
        MonomialElement { perm, exps }
    }

    pub fn inverse(&self, a: &MonomialElement) -> MonomialElement {
        let l = self.l;
        let mut perm = vec![0u32; l];
        let mut exps = vec![0u32; l];
        for j in 0..l {
            let img = a.perm[j] as usize;
            perm[img] = j as u32;
            exps[img] = ((self.r - a.exps[j] as u64 % self.r) % self.r) as u32;
        }
        MonomialElement { perm, exps }
    }

    pub fn conjugate(&self, h: &MonomialElement, g: &MonomialElement) -> MonomialElement {
        self.compose(&self.compose(h, g), &self.inverse(h))
    }

    pub fn index_of(&self, e: &MonomialElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn element_order(&self, g: &MonomialElement) -> u64 {
        let identity = self.identity();
        let mut power = g.clone();
        let mut order = 1u64;
        while power != identity {
            power = self.compose(&power, g);
            order += 1;
        }
        order
    }

    fn cycles(&self, g: &MonomialElement) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.l];
        let mut cycles = Vec::new();
        for start in 0..self.l {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            loop {
                seen[j] = true;
                cycle.push(j);
                j = g.perm[j] as usize;
                if j == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Number of reflecting hyperplanes of the ambient arrangement:
    /// coordinate hyperplanes (present iff `p < r`) plus `x_i = zeta x_j`
    /// for all r-th roots `zeta`.
    pub fn hyperplane_count(&self) -> u64 {
        let coords = if self.p < self.r { self.l as u64 } else { 0 };
        coords + self.r * (self.l as u64) * (self.l as u64 - 1) / 2
    }
}

/// The full eigenvalue decomposition of a monomial element: per cycle of
/// length `c` with phase sum `s`, the `c` eigenvalues with exponents
/// `(s/r + j)/c`, each carrying a cycle basis vector.  Total dimension
/// over all distinct eigenvalues is `l`.
pub fn eigen_spectrum(group: &MonomialGroup, g: &MonomialElement) -> Vec<EigenspaceDescriptor> {
    let r = group.r as i128;
    let mut by_eigenvalue: BTreeMap<RootOfUnity, Vec<CycleVector>> = BTreeMap::new();
    for cycle in group.cycles(g) {
        let c = cycle.len() as i128;
        let s: i128 = cycle.iter().map(|&j| g.exps[j] as i128).sum();
        for j in 0..c {
            let eigenvalue = RootOfUnity::from_frac(s + j * r, r * c);
            // v_{sigma^t(j0)} = (prefix phase product) * lambda^(-t)
            let mut entries = Vec::with_capacity(cycle.len());
            let mut prefix: i128 = 0;
            for (t, _) in cycle.iter().enumerate() {
                let exp = RootOfUnity::from_frac(prefix, r).mul(&eigenvalue.pow(-(t as i64)));
                entries.push(exp);
                prefix += g.exps[cycle[t]] as i128;
            }
            by_eigenvalue
                .entry(eigenvalue)
                .or_default()
                .push(CycleVector {
                    support: cycle.clone(),
                    entries,
                });
        }
    }
    by_eigenvalue
        .into_iter()
        .map(|(eigenvalue, cycle_vectors)| EigenspaceDescriptor {
            eigenvalue,
            cycle_vectors,
        })
        .collect()
}

/// Whether the `lambda`-eigenspace of `g` avoids containment in every
/// reflecting hyperplane.  Containment is decided exactly: a linear form
/// vanishes on the eigenspace iff it vanishes on every cycle basis
/// vector, and each evaluation is a difference of at most two roots of
/// unity.
pub fn is_regular_pair(
    group: &MonomialGroup,
    g: &MonomialElement,
    lambda: RootOfUnity,
) -> Result<bool> {
    let spectrum = eigen_spectrum(group, g);
    let descriptor = spectrum
        .into_iter()
        .find(|d| d.eigenvalue == lambda)
        .ok_or_else(|| Error::Inconsistent(format!("{lambda:?} is not an eigenvalue")))?;
    Ok(descriptor_is_regular(group, &descriptor))
}

fn descriptor_is_regular(group: &MonomialGroup, descriptor: &EigenspaceDescriptor) -> bool {
    let l = group.l;
    let mut owner: Vec<Option<usize>> = vec![None; l];
    let mut entry: Vec<Option<RootOfUnity>> = vec![None; l];
    for (v, cv) in descriptor.cycle_vectors.iter().enumerate() {
        for (pos, &j) in cv.support.iter().enumerate() {
            owner[j] = Some(v);
            entry[j] = Some(cv.entries[pos]);
        }
    }
    // Coordinate hyperplanes x_i, present iff p < r.
    if group.p < group.r && owner.iter().any(|o| o.is_none()) {
        return false;
    }
    // Forms x_i - zeta x_j with zeta^r = 1.
    for i in 0..l {
        for j in i + 1..l {
            match (owner[i], owner[j]) {
                (None, None) => {
                    // x_i - x_j vanishes identically on the eigenspace.
                    return false;
                }
                (Some(vi), Some(vj)) if vi == vj => {
                    // Contained iff x_i/x_j is a fixed r-th root on the vector.
                    let ratio = entry[i].unwrap().mul(&entry[j].unwrap().inv());
                    if group.r % ratio.order() == 0 {
                        return false;
                    }
                }
                // Disjoint supports: the form cannot vanish on both vectors.
                _ => {}
            }
        }
    }
    true
}

/// All regular eigenvalues of `g`.
pub fn regular_eigenvalues(group: &MonomialGroup, g: &MonomialElement) -> Vec<(RootOfUnity, usize)> {
    eigen_spectrum(group, g)
        .into_iter()
        .filter(|d| descriptor_is_regular(group, d))
        .map(|d| (d.eigenvalue, d.dimension()))
        .collect()
}

/// Regular structure read off the explicit group: regular numbers,
/// maximal poset via centres of centralizers, centralizer orders, and
/// eigenspace dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteStructure {
    pub regular: Vec<u64>,
    pub poset: Vec<u64>,
    pub i: BTreeMap<u64, u128>,
    pub a: BTreeMap<u64, usize>,
}

pub fn brute_regular_structure(group: &MonomialGroup) -> Result<BruteStructure> {
    let id = GroupId::infinite(group.r, group.p, group.l as u64)?;
    if !classify(id)?.irreducible {
        return Err(Error::NotIrreducible {
            group: id.to_string(),
            reason: "reducible".to_string(),
        });
    }
    let mut regular_indices: Vec<usize> = Vec::new();
    let mut orders: Vec<u64> = vec![0; group.order()];
    let mut dims: BTreeMap<u64, BTreeSet<usize>> = BTreeMap::new();
    for (idx, g) in group.elements.iter().enumerate() {
        let eigen = regular_eigenvalues(group, g);
        if eigen.is_empty() {
            continue;
        }
        let order = group.element_order(g);
        orders[idx] = order;
        regular_indices.push(idx);
        for (lambda, mut dim) in eigen {
            // Springer: the eigenvalue of a regular pair has the order of
            // the element.
            if lambda.order() != order {
                return Err(Error::Inconsistent(format!(
                    "regular eigenvalue of order {} on element of order {order}",
                    lambda.order()
                )));
            }
            // The permutation model of G(1,1,l) carries an extra trivial
            // summand; discount it from the identity's eigenspace.
            if group.r == 1 && lambda.is_one() {
                dim -= 1;
            }
            dims.entry(order).or_default().insert(dim);
        }
    }
    let mut a = BTreeMap::new();
    for (order, set) in &dims {
        if set.len() != 1 {
            return Err(Error::Inconsistent(format!(
                "eigenspace dimension not constant for regular pairs of order {order}: {set:?}"
            )));
        }
        a.insert(*order, *set.iter().next().unwrap());
    }
    let regular: Vec<u64> = a.keys().copied().collect();

    // Centralizers and their centres, one conjugacy class at a time.
    let mut i_map: BTreeMap<u64, u128> = BTreeMap::new();
    let mut poset: BTreeSet<u64> = BTreeSet::new();
    let mut visited: HashSet<usize> = HashSet::new();
    for &idx in &regular_indices {
        if visited.contains(&idx) {
            continue;
        }
        let g = &group.elements[idx];
        let mut class = HashSet::new();
        for h in &group.elements {
            let conj = group.conjugate(h, g);
            class.insert(group.index_of(&conj).expect("closure"));
        }
        visited.extend(class.iter());
        let centralizer: Vec<usize> = group
            .elements
            .iter()
            .enumerate()
            .filter(|(_, h)| group.compose(h, g) == group.compose(g, h))
            .map(|(i, _)| i)
            .collect();
        if centralizer.len() * class.len() != group.order() {
            return Err(Error::Inconsistent(
                "orbit-stabilizer mismatch for a centralizer".to_string(),
            ));
        }
        let d = orders[idx];
        if let Some(&prev) = i_map.get(&d) {
            if prev != centralizer.len() as u128 {
                return Err(Error::Inconsistent(format!(
                    "centralizer order not constant for regular order {d}"
                )));
            }
        } else {
            i_map.insert(d, centralizer.len() as u128);
        }
        poset.insert(center_order(group, &centralizer));
    }
    Ok(BruteStructure {
        regular,
        poset: poset.into_iter().collect(),
        i: i_map,
        a,
    })
}

/// Order of the centre of the subgroup given by `members` (element
/// indices).  Scans with early exit; the centre is tiny in practice.
fn center_order(group: &MonomialGroup, members: &[usize]) -> u64 {
    let mut count = 0u64;
    for &zi in members {
        let z = &group.elements[zi];
        if members
            .iter()
            .all(|&ci| {
                let c = &group.elements[ci];
                group.compose(z, c) == group.compose(c, z)
            })
        {
            count += 1;
        }
    }
    count
}

/// A cyclic subgroup of `Gamma = G x C_m` as the set of its element
/// pairs `(element index, phase)`.
pub type PairSubgroup = BTreeSet<(usize, RootOfUnity)>;

pub fn pair_subgroup(
    group: &MonomialGroup,
    g: &MonomialElement,
    zeta: RootOfUnity,
    d: u64,
) -> PairSubgroup {
    let mut out = BTreeSet::new();
    let mut power = group.identity();
    let mut phase = RootOfUnity::one();
    for _ in 0..d {
        out.insert((group.index_of(&power).expect("closure"), phase));
        power = group.compose(&power, g);
        phase = phase.mul(&zeta);
    }
    out
}

/// All regular pairs of the group, grouped by order, in one pass.
pub fn regular_pairs(group: &MonomialGroup) -> BTreeMap<u64, Vec<(usize, RootOfUnity)>> {
    let mut by_order: BTreeMap<u64, Vec<(usize, RootOfUnity)>> = BTreeMap::new();
    for (idx, g) in group.elements.iter().enumerate() {
        let eigen = regular_eigenvalues(group, g);
        if eigen.is_empty() {
            continue;
        }
        let order = group.element_order(g);
        for (lambda, _) in eigen {
            if lambda.order() == order {
                by_order.entry(order).or_default().push((idx, lambda));
            }
        }
    }
    by_order
}

fn regular_pairs_of_order(group: &MonomialGroup, d: u64) -> Vec<(usize, RootOfUnity)> {
    regular_pairs(group).remove(&d).unwrap_or_default()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjugacyReport {
    pub conjugate: bool,
    pub normalizer_order: u128,
}

/// Check that all cyclic subgroups of `Gamma` generated by regular
/// `d`-pairs are conjugate, and measure the normalizer of one of them.
pub fn brute_conjugacy_check(group: &MonomialGroup, d: u64, m: u64) -> Result<ConjugacyReport> {
    if m % d != 0 {
        return Err(Error::InvalidAmbientDegree { m, d });
    }
    let pairs = regular_pairs_of_order(group, d);
    if pairs.is_empty() {
        return Err(Error::NotRegular { d });
    }
    let subgroups: BTreeSet<PairSubgroup> = pairs
        .iter()
        .map(|&(idx, zeta)| pair_subgroup(group, &group.elements[idx], zeta, d))
        .collect();

    // Conjugation acts on the G component only; take the orbit of one
    // subgroup and ask whether it covers all of them.
    let first = subgroups.iter().next().unwrap().clone();
    let mut orbit: BTreeSet<PairSubgroup> = BTreeSet::new();
    for h in &group.elements {
        let image: PairSubgroup = first
            .iter()
            .map(|&(idx, phase)| {
                let conj = group.conjugate(h, &group.elements[idx]);
                (group.index_of(&conj).expect("closure"), phase)
            })
            .collect();
        orbit.insert(image);
    }
    let conjugate = subgroups.iter().all(|s| orbit.contains(s));

    let (g_idx, zeta) = pairs[0];
    let g = &group.elements[g_idx];
    let k = pair_subgroup(group, g, zeta, d);
    let stabilizing = group
        .elements
        .iter()
        .filter(|h| {
            let conj = group.conjugate(h, g);
            k.contains(&(group.index_of(&conj).expect("closure"), zeta))
        })
        .count();
    Ok(ConjugacyReport {
        conjugate,
        normalizer_order: stabilizing as u128 * m as u128,
    })
}

/// Evaluate the permutation character induced from a regular `d`-pair's
/// cyclic subgroup at a representative of the given class, by the
/// direct induction sum over `Gamma`.  The result is checked against
/// the closed form `(m/d) * |C(h)|` for regular classes of order
/// dividing `d`, and `0` otherwise.
pub fn brute_induced_character(
    group: &MonomialGroup,
    d: u64,
    m: u64,
    class: ClassSpec,
) -> Result<i128> {
    let reps = representative_pairs(group, class, m)?;
    let (h_idx, xi) = reps[0];
    brute_induced_at(group, d, m, h_idx, xi, class)
}

/// As `brute_induced_character`, at an explicit representative pair.
pub fn brute_induced_at(
    group: &MonomialGroup,
    d: u64,
    m: u64,
    h_idx: usize,
    xi: RootOfUnity,
    class: ClassSpec,
) -> Result<i128> {
    if m % d != 0 {
        return Err(Error::InvalidAmbientDegree { m, d });
    }
    let pairs = regular_pairs_of_order(group, d);
    if pairs.is_empty() {
        return Err(Error::NotRegular { d });
    }
    let (g_idx, zeta) = pairs[0];
    let g = &group.elements[g_idx];
    let k = pair_subgroup(group, g, zeta, d);

    let h = &group.elements[h_idx];
    let count = group
        .elements
        .iter()
        .filter(|u| {
            let conj = group.conjugate(u, h);
            k.contains(&(group.index_of(&conj).expect("closure"), xi))
        })
        .count();
    let total = count as i128 * m as i128;
    if total % d as i128 != 0 {
        return Err(Error::Inconsistent(
            "induction sum not divisible by the subgroup order".to_string(),
        ));
    }
    let value = total / d as i128;

    let expected = match class {
        ClassSpec::Nonregular => 0,
        ClassSpec::Regular { order } => {
            if d % order == 0 {
                let centralizer = group
                    .elements
                    .iter()
                    .filter(|u| group.compose(u, h) == group.compose(h, u))
                    .count();
                (m / d) as i128 * centralizer as i128
            } else {
                0
            }
        }
    };
    if value != expected {
        return Err(Error::Inconsistent(format!(
            "induced character I_{d} at class {class:?}: brute sum {value} != closed form {expected}"
        )));
    }
    Ok(value)
}

/// Representative pairs for a class: every regular pair of the given
/// order, or a single nonregular pair.
pub fn representative_pairs(
    group: &MonomialGroup,
    class: ClassSpec,
    m: u64,
) -> Result<Vec<(usize, RootOfUnity)>> {
    match class {
        ClassSpec::Regular { order } => {
            if m % order != 0 {
                return Err(Error::InvalidAmbientDegree { m, d: order });
            }
            let pairs = regular_pairs_of_order(group, order);
            if pairs.is_empty() {
                return Err(Error::NotRegular { d: order });
            }
            Ok(pairs)
        }
        ClassSpec::Nonregular => {
            for (idx, g) in group.elements.iter().enumerate() {
                let regular: BTreeSet<RootOfUnity> = regular_eigenvalues(group, g)
                    .into_iter()
                    .map(|(lambda, _)| lambda)
                    .collect();
                for a in 0..m {
                    let xi = RootOfUnity::from_frac(a as i128, m as i128);
                    if !regular.contains(&xi) {
                        return Ok(vec![(idx, xi)]);
                    }
                }
            }
            Err(Error::Inconsistent(
                "no nonregular pair exists in this group".to_string(),
            ))
        }
    }
}
