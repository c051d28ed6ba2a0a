//! Regular-element structure derived from a degree profile: the regular
//! numbers, the maximal poset ordered by divisibility, the roundup map,
//! the local invariants `i(d)`, `u(d)`, `a(d)`, the poset Moebius
//! function, and identification of centralizer groups.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{
    classify, degree_profile, exceptional_table, DegreeProfile, GroupId,
};

/// Degrees and codegrees divisible by `d`, with the derived invariants:
/// the eigenspace dimension `a`, the centralizer order `i`, and the Euler
/// characteristic `u` of the centralizer's projective hyperplane
/// complement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalData {
    pub sub_degrees: Vec<u64>,
    pub sub_codegrees: Vec<u64>,
    pub a: usize,
    pub i: u128,
    pub u: i128,
}

/// Regular numbers of a profile: `d` such that the number of degrees
/// divisible by `d` equals the number of codegrees divisible by `d`
/// (the zero codegree counting as divisible by everything).
pub fn regular_numbers(profile: &DegreeProfile) -> Vec<u64> {
    let mut candidates = BTreeSet::new();
    for &deg in &profile.degrees {
        let mut d = 1;
        while d * d <= deg {
            if deg % d == 0 {
                candidates.insert(d);
                candidates.insert(deg / d);
            }
            d += 1;
        }
    }
    candidates
        .into_iter()
        .filter(|&d| {
            let ndeg = profile.degrees.iter().filter(|&&x| x % d == 0).count();
            let ncod = profile.codegrees.iter().filter(|&&x| x % d == 0).count();
            ndeg == ncod
        })
        .collect()
}

fn check_regular(profile: &DegreeProfile, d: u64) -> Result<()> {
    if regular_numbers(profile).contains(&d) {
        Ok(())
    } else {
        Err(Error::NotRegular { d })
    }
}

/// Local data at a regular number `d`.
pub fn local_data(profile: &DegreeProfile, d: u64) -> Result<LocalData> {
    check_regular(profile, d)?;
    let sub_degrees: Vec<u64> = profile.degrees.iter().copied().filter(|x| x % d == 0).collect();
    let sub_codegrees: Vec<u64> = profile
        .codegrees
        .iter()
        .copied()
        .filter(|x| x % d == 0)
        .collect();
    let a = sub_degrees.len();
    let i = sub_degrees.iter().map(|&x| x as u128).product();
    let u = sub_codegrees
        .iter()
        .filter(|&&c| c != 0)
        .map(|&c| -(c as i128))
        .product();
    Ok(LocalData {
        sub_degrees,
        sub_codegrees,
        a,
        i,
        u,
    })
}

/// The maximal poset: orders of regular elements maximal for their
/// centralizer, computed as the image of `d -> gcd(sub_degrees(d))`.
pub fn maximal_poset(profile: &DegreeProfile) -> Vec<u64> {
    let mut poset = BTreeSet::new();
    for d in regular_numbers(profile) {
        let g = profile
            .degrees
            .iter()
            .filter(|&&x| x % d == 0)
            .fold(0u64, |acc, &x| acc.gcd(&x));
        poset.insert(g);
    }
    poset.into_iter().collect()
}

/// Least multiple of the regular number `d` lying in the maximal poset.
pub fn roundup(profile: &DegreeProfile, d: u64) -> Result<u64> {
    check_regular(profile, d)?;
    let g = profile
        .degrees
        .iter()
        .filter(|&&x| x % d == 0)
        .fold(0u64, |acc, &x| acc.gcd(&x));
    let least = maximal_poset(profile)
        .into_iter()
        .filter(|&k| k % d == 0)
        .min()
        .ok_or_else(|| Error::Inconsistent(format!("no multiple of {d} in the maximal poset")))?;
    if least != g {
        return Err(Error::Inconsistent(format!(
            "roundup({d}): least poset multiple {least} != gcd of divisible degrees {g}"
        )));
    }
    Ok(g)
}

/// Moebius function of a finite set of positive integers ordered by
/// divisibility, tabulated on all comparable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusTable {
    values: BTreeMap<(u64, u64), i64>,
}

impl MobiusTable {
    pub fn get(&self, d: u64, k: u64) -> Result<i64> {
        self.values
            .get(&(d, k))
            .copied()
            .ok_or(Error::Incomparable { a: d, b: k })
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u64, u64, i64)> + '_ {
        self.values.iter().map(|(&(d, k), &v)| (d, k, v))
    }
}

/// Tabulate the poset Moebius function of `poset` under divisibility.
pub fn poset_mobius(poset: &[u64]) -> MobiusTable {
    let mut elems: Vec<u64> = poset.to_vec();
    elems.sort_unstable();
    elems.dedup();
    let mut values = BTreeMap::new();
    for &d in &elems {
        values.insert((d, d), 1i64);
        // Ascending order guarantees mu(d,j) is known before mu(d,k) for j|k.
        for &k in elems.iter().filter(|&&k| k != d && k % d == 0) {
            let sum: i64 = elems
                .iter()
                .filter(|&&j| j != k && j % d == 0 && k % j == 0)
                .map(|&j| values[&(d, j)])
                .sum();
            values.insert((d, k), -sum);
        }
    }
    MobiusTable { values }
}

/// Everything the coefficient engine needs about one profile.
#[derive(Debug, Clone)]
pub struct RegularData {
    pub regular: Vec<u64>,
    pub poset: Vec<u64>,
    pub roundup: BTreeMap<u64, u64>,
    pub i: BTreeMap<u64, u128>,
    pub u: BTreeMap<u64, i128>,
    pub a: BTreeMap<u64, usize>,
    pub mu: MobiusTable,
}

/// Compute the full regular structure of a profile.
pub fn regular_data(profile: &DegreeProfile) -> Result<RegularData> {
    let regular = regular_numbers(profile);
    let poset = maximal_poset(profile);
    let mut roundup_map = BTreeMap::new();
    let mut i_map = BTreeMap::new();
    let mut u_map = BTreeMap::new();
    let mut a_map = BTreeMap::new();
    for &d in &regular {
        let local = local_data(profile, d)?;
        roundup_map.insert(d, roundup(profile, d)?);
        i_map.insert(d, local.i);
        u_map.insert(d, local.u);
        a_map.insert(d, local.a);
    }
    // i and u factor through roundup.
    for &d in &regular {
        let up = roundup_map[&d];
        if i_map[&d] != i_map[&up] || u_map[&d] != u_map[&up] {
            return Err(Error::Inconsistent(format!(
                "i/u not constant on roundup fibre of {d}"
            )));
        }
    }
    let mu = poset_mobius(&poset);
    Ok(RegularData {
        regular,
        poset,
        roundup: roundup_map,
        i: i_map,
        u: u_map,
        a: a_map,
        mu,
    })
}

/// Result of identifying the centralizer of a regular element: either a
/// classified group together with its profile, or just the profile when
/// no unique classification entry matches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Centralizer {
    Identified {
        id: GroupId,
        profile: DegreeProfile,
    },
    Unidentified {
        profile: DegreeProfile,
        candidates: Vec<GroupId>,
    },
}

impl Centralizer {
    pub fn profile(&self) -> &DegreeProfile {
        match self {
            Centralizer::Identified { profile, .. } => profile,
            Centralizer::Unidentified { profile, .. } => profile,
        }
    }

    pub fn id(&self) -> Option<GroupId> {
        match self {
            Centralizer::Identified { id, .. } => Some(*id),
            Centralizer::Unidentified { .. } => None,
        }
    }
}

fn sub_profile(profile: &DegreeProfile, d: u64) -> Result<DegreeProfile> {
    let local = local_data(profile, d)?;
    Ok(DegreeProfile::new(local.sub_degrees, local.sub_codegrees))
}

/// Identify the centralizer `G(d)` of a regular element whose order `d`
/// lies in the maximal poset.
///
/// For the infinite family the identification is by explicit parameter
/// formulas; for exceptionals it is by profile lookup against the
/// classification, reporting ties rather than guessing.
pub fn identify_centralizer(g: GroupId, d: u64) -> Result<Centralizer> {
    let profile = degree_profile(g)?;
    let poset = maximal_poset(&profile);
    if !poset.contains(&d) {
        return Err(Error::NotRegular { d });
    }
    let sub = sub_profile(&profile, d)?;
    match g {
        GroupId::Infinite { r, p, l } => {
            let id = if p < r {
                // q > 1: D = {kq : gcd(p,l) | k | l}, G(kq) = G(kr/t, p, lt/k).
                let q = r / p;
                let t = p.gcd(&l);
                let k = d / q;
                if d % q != 0 || k % t != 0 || l % k != 0 {
                    return Err(Error::Inconsistent(format!(
                        "poset element {d} of {g} does not have the expected kq form"
                    )));
                }
                GroupId::infinite(k * r / t, p, l * t / k)?
            } else {
                // p = r: T1 gets G(dr/z, r, lz/d), T2 gets G(kr, 1, (l-1)/k).
                let z = r.gcd(&l);
                if d % z == 0 && l % d == 0 {
                    GroupId::infinite(d * r / z, r, l * z / d)?
                } else if d % r == 0 && (l - 1) % (d / r) == 0 {
                    GroupId::infinite(d, 1, (l - 1) / (d / r))?
                } else {
                    return Err(Error::Inconsistent(format!(
                        "poset element {d} of {g} matches neither branch"
                    )));
                }
            };
            let id_profile = degree_profile(id)?;
            if id_profile != sub {
                return Err(Error::Inconsistent(format!(
                    "identified centralizer {id} of ({g},{d}) has profile {:?} but local data gives {:?}",
                    id_profile, sub
                )));
            }
            Ok(Centralizer::Identified { id, profile: sub })
        }
        GroupId::Exceptional { .. } => {
            let candidates = classification_matches(&sub);
            match candidates.as_slice() {
                [only] => Ok(Centralizer::Identified {
                    id: *only,
                    profile: sub,
                }),
                _ => Ok(Centralizer::Unidentified {
                    profile: sub,
                    candidates,
                }),
            }
        }
    }
}

/// All classification entries whose (degrees, codegrees) multisets equal
/// the given profile.  Rank-one profiles are canonicalized to `G(d,1,1)`.
fn classification_matches(profile: &DegreeProfile) -> Vec<GroupId> {
    let mut matches = Vec::new();
    if profile.rank == 1 {
        return vec![GroupId::Infinite {
            r: profile.degrees[0],
            p: 1,
            l: 1,
        }];
    }
    for n in 4..=37 {
        if exceptional_table().get(n).unwrap() == profile {
            matches.push(GroupId::Exceptional { n });
        }
    }
    let max_degree = *profile.degrees.iter().max().unwrap();
    // Infinite candidates of the same rank (r > 1), and the symmetric group.
    for r in 2..=max_degree {
        for p in (1..=r).filter(|p| r % *p == 0) {
            if let Ok(id) = GroupId::infinite(r, p, profile.rank as u64) {
                if classify(id).map(|c| c.irreducible).unwrap_or(false)
                    && degree_profile(id).as_ref() == Ok(profile)
                {
                    matches.push(id);
                }
            }
        }
    }
    let sym = GroupId::Infinite {
        r: 1,
        p: 1,
        l: profile.rank as u64 + 1,
    };
    if degree_profile(sym).as_ref() == Ok(profile) {
        matches.push(sym);
    }
    matches
}
