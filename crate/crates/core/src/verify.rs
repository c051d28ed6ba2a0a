//! Cross-validation of the formula pipeline against the brute-force
//! monomial-group oracle, producing a structured pass/fail report.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::euler::{chi_character, evaluate_character, ClassSpec};
use crate::groups::{classify, degree_profile, discriminant_degree, GroupId};
use crate::oracle::{
    brute_regular_structure, eigen_spectrum, enumerate_group, pair_subgroup, regular_pairs,
    MonomialGroup, PairSubgroup, RootOfUnity,
};
use crate::springer::{local_data, maximal_poset, regular_numbers};

/// One verified identity: group, what was checked, expected vs computed.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub group: String,
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    fn compare<T: PartialEq + std::fmt::Debug>(
        group: &GroupId,
        name: &str,
        expected: T,
        computed: T,
    ) -> Check {
        Check {
            group: group.to_string(),
            name: name.to_string(),
            expected: format!("{expected:?}"),
            computed: format!("{computed:?}"),
            pass: expected == computed,
        }
    }
}

/// Outcome of a verification sweep.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub groups: Vec<String>,
    pub skipped: Vec<String>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status} {:10} {}: expected {}, computed {}",
                c.group, c.name, c.expected, c.computed
            );
        }
        let _ = writeln!(
            out,
            "checked {} groups ({} skipped over cap), {} checks, {} failures",
            self.groups.len(),
            self.skipped.len(),
            self.checks.len(),
            self.failures()
        );
        out
    }
}

/// Run the oracle suite over every irreducible `G(r,p,l)` with
/// `r <= rmax`, `l <= lmax`, and group order within `cap`.
pub fn verify_family(rmax: u64, lmax: u64, cap: u128) -> Result<VerifyReport> {
    let mut report = VerifyReport {
        checks: Vec::new(),
        groups: Vec::new(),
        skipped: Vec::new(),
    };
    for r in 1..=rmax {
        for p in (1..=r).filter(|p| r % p == 0) {
            for l in 1..=lmax {
                let g = GroupId::Infinite { r, p, l };
                if !classify(g)?.irreducible {
                    continue;
                }
                let factorial: u128 = (1..=l as u128).product();
                let order = (r as u128).pow(l as u32) * factorial / p as u128;
                if order > cap {
                    report.skipped.push(g.to_string());
                    continue;
                }
                report.groups.push(g.to_string());
                verify_group(g, cap, &mut report.checks)?;
            }
        }
    }
    Ok(report)
}

fn verify_group(g: GroupId, cap: u128, checks: &mut Vec<Check>) -> Result<()> {
    let (r, p, l) = match g {
        GroupId::Infinite { r, p, l } => (r, p, l),
        GroupId::Exceptional { .. } => unreachable!("no matrix model for exceptionals"),
    };
    let group = enumerate_group(r, p, l as usize, cap)?;
    let profile = degree_profile(g)?;
    let m = discriminant_degree(g)?;
    let chi = chi_character(g, None)?;

    checks.push(Check::compare(
        &g,
        "enumeration order",
        profile.order(),
        group.order() as u128,
    ));
    checks.push(Check::compare(
        &g,
        "hyperplane count",
        profile.codegrees.iter().map(|c| c + 1).sum::<u64>(),
        group.hyperplane_count(),
    ));

    // Eigenvalue multisets: cardinality l, invariant under conjugation.
    let sample: Vec<usize> = (0..group.order()).step_by(1 + group.order() / 23).collect();
    let mut spectra_ok = true;
    for &idx in &sample {
        let elem = &group.elements[idx];
        let spectrum = eigen_spectrum(&group, elem);
        if spectrum.iter().map(|d| d.dimension()).sum::<usize>() != group.l {
            spectra_ok = false;
        }
        let conj = group.conjugate(&group.elements[sample[0]], elem);
        let eigenvalues: BTreeSet<(RootOfUnity, usize)> = spectrum
            .iter()
            .map(|d| (d.eigenvalue, d.dimension()))
            .collect();
        let conj_eigenvalues: BTreeSet<(RootOfUnity, usize)> = eigen_spectrum(&group, &conj)
            .iter()
            .map(|d| (d.eigenvalue, d.dimension()))
            .collect();
        if eigenvalues != conj_eigenvalues {
            spectra_ok = false;
        }
    }
    checks.push(Check::compare(&g, "eigenvalue multisets", true, spectra_ok));

    let brute = brute_regular_structure(&group)?;
    let formula_regular = regular_numbers(&profile);
    checks.push(Check::compare(
        &g,
        "regular numbers",
        formula_regular.clone(),
        brute.regular.clone(),
    ));
    checks.push(Check::compare(
        &g,
        "maximal poset",
        maximal_poset(&profile),
        brute.poset.clone(),
    ));
    for &d in &formula_regular {
        let local = local_data(&profile, d)?;
        checks.push(Check::compare(
            &g,
            &format!("i({d})"),
            local.i,
            brute.i.get(&d).copied().unwrap_or(0),
        ));
        checks.push(Check::compare(
            &g,
            &format!("a({d})"),
            local.a,
            brute.a.get(&d).copied().unwrap_or(0),
        ));
    }

    // Conjugacy of regular-pair subgroups and their normalizers.
    let pairs_by_order = regular_pairs(&group);
    checks.push(Check::compare(
        &g,
        "regular pair orders",
        formula_regular.clone(),
        pairs_by_order.keys().copied().collect::<Vec<u64>>(),
    ));
    for (&d, pairs) in &pairs_by_order {
        let subgroups: BTreeSet<PairSubgroup> = pairs
            .iter()
            .map(|&(idx, zeta)| pair_subgroup(&group, &group.elements[idx], zeta, d))
            .collect();
        let first = subgroups.iter().next().unwrap().clone();
        let mut orbit: BTreeSet<PairSubgroup> = BTreeSet::new();
        let mut stabilizing = 0u128;
        for h in &group.elements {
            let image: PairSubgroup = first
                .iter()
                .map(|&(idx, phase)| {
                    let conj = group.conjugate(h, &group.elements[idx]);
                    (group.index_of(&conj).expect("closure"), phase)
                })
                .collect();
            if image == first {
                stabilizing += 1;
            }
            orbit.insert(image);
        }
        checks.push(Check::compare(
            &g,
            &format!("conjugacy of {d}-pair subgroups"),
            true,
            subgroups.iter().all(|s| orbit.contains(s)),
        ));
        let i_d = brute.i.get(&d).copied().unwrap_or(0);
        checks.push(Check::compare(
            &g,
            &format!("normalizer order at d={d}"),
            i_d * m as u128,
            stabilizing * m as u128,
        ));
    }

    // Induced characters: brute sum vs closed form, representative
    // independence, and the end-to-end character evaluation.
    let poset = maximal_poset(&profile);
    let mut induced: BTreeMap<(u64, u64), i128> = BTreeMap::new();
    for &d in &poset {
        let Some(d_pairs) = pairs_by_order.get(&d) else {
            continue;
        };
        let (g_idx, zeta) = d_pairs[0];
        let subgroup = pair_subgroup(&group, &group.elements[g_idx], zeta, d);
        for &dp in &formula_regular {
            let reps = &pairs_by_order[&dp];
            let values: BTreeSet<i128> = reps
                .iter()
                .take(3)
                .map(|&(h_idx, xi)| induced_value(&group, &subgroup, h_idx, xi, m, d))
                .collect();
            checks.push(Check::compare(
                &g,
                &format!("I_{d} constant on {dp}-classes"),
                1,
                values.len(),
            ));
            let value = *values.iter().next().unwrap();
            let expected = if d % dp == 0 {
                (m / d) as i128 * brute.i[&dp] as i128
            } else {
                0
            };
            checks.push(Check::compare(&g, &format!("I_{d} at order {dp}"), expected, value));
            induced.insert((d, dp), value);
        }
        // A nonregular pair: an element paired with a phase that is not
        // one of its regular eigenvalues.
        let nonregular =
            crate::oracle::representative_pairs(&group, ClassSpec::Nonregular, m)?[0];
        let value = induced_value(&group, &subgroup, nonregular.0, nonregular.1, m, d);
        checks.push(Check::compare(&g, &format!("I_{d} on nonregular"), 0, value));
    }
    for &dp in &formula_regular {
        let lhs = evaluate_character(&chi, ClassSpec::Regular { order: dp })?;
        let rhs: i128 = chi
            .coeffs
            .iter()
            .map(|(&d, &a)| a as i128 * induced.get(&(d, dp)).copied().unwrap_or(0))
            .sum();
        checks.push(Check::compare(
            &g,
            &format!("chi evaluation at order {dp}"),
            lhs,
            rhs,
        ));
    }
    Ok(())
}

/// Direct induction sum `(1/d) sum_{y in Gamma} [y x y^-1 in C_d]`,
/// collapsed over the `C_m` factor.
fn induced_value(
    group: &MonomialGroup,
    subgroup: &PairSubgroup,
    h_idx: usize,
    xi: RootOfUnity,
    m: u64,
    d: u64,
) -> i128 {
    let h = &group.elements[h_idx];
    let count = group
        .elements
        .iter()
        .filter(|u| {
            let conj = group.conjugate(u, h);
            subgroup.contains(&(group.index_of(&conj).expect("closure"), xi))
        })
        .count();
    debug_assert_eq!(count as u128 * m as u128 % d as u128, 0);
    (count as i128 * m as i128) / d as i128
}
