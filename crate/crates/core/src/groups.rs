//! Classification data for irreducible complex reflection groups.
//!
//! The infinite family `G(r,p,l)` is handled by closed formulas for its
//! degrees and codegrees; the exceptional groups `G4`..`G37` come from an
//! embedded data table.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifies an irreducible complex reflection group: either a member of
/// the infinite family `G(r,p,l)` with `p | r`, or an exceptional group
/// `Gn` with `4 <= n <= 37`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupId {
    Infinite { r: u64, p: u64, l: u64 },
    Exceptional { n: u64 },
}

impl GroupId {
    pub fn infinite(r: u64, p: u64, l: u64) -> Result<Self> {
        if r == 0 || p == 0 || l == 0 || r % p != 0 {
            return Err(Error::InvalidParameters { r, p, l });
        }
        Ok(GroupId::Infinite { r, p, l })
    }

    pub fn exceptional(n: u64) -> Result<Self> {
        if !(4..=37).contains(&n) {
            return Err(Error::ExceptionalIndex(n));
        }
        Ok(GroupId::Exceptional { n })
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Infinite { r, p, l } => write!(f, "G({r},{p},{l})"),
            GroupId::Exceptional { n } => write!(f, "G{n}"),
        }
    }
}

/// Parse a group spec of the form `G(r,p,l)` or `Gn`.
pub fn parse_group(spec: &str) -> Result<GroupId> {
    let s = spec.trim();
    let body = s
        .strip_prefix('G')
        .ok_or_else(|| Error::Parse(spec.to_string()))?;
    if let Some(args) = body.strip_prefix('(') {
        let args = args
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(spec.to_string()))?;
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(spec.to_string()));
        }
        let mut nums = [0u64; 3];
        for (slot, part) in nums.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|_| Error::Parse(spec.to_string()))?;
        }
        GroupId::infinite(nums[0], nums[1], nums[2])
    } else {
        let n: u64 = body.parse().map_err(|_| Error::Parse(spec.to_string()))?;
        GroupId::exceptional(n)
    }
}

/// Degrees and codegrees of an irreducible reflection group, stored as
/// sorted multisets of equal length (the rank).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub rank: usize,
    pub degrees: Vec<u64>,
    pub codegrees: Vec<u64>,
}

impl DegreeProfile {
    pub fn new(mut degrees: Vec<u64>, mut codegrees: Vec<u64>) -> Self {
        degrees.sort_unstable();
        codegrees.sort_unstable();
        assert_eq!(degrees.len(), codegrees.len());
        DegreeProfile {
            rank: degrees.len(),
            degrees,
            codegrees,
        }
    }

    /// Group order, the product of the degrees.
    pub fn order(&self) -> u128 {
        self.degrees.iter().map(|&d| d as u128).product()
    }

    /// Centre order, the gcd of the degrees.
    pub fn center(&self) -> u64 {
        self.degrees.iter().fold(0u64, |a, &d| a.gcd(&d))
    }
}

/// Rank, degrees and codegrees for the exceptional groups `G4`..`G37`.
#[derive(Debug, Clone)]
pub struct ExceptionalTable {
    entries: BTreeMap<u64, DegreeProfile>,
}

impl ExceptionalTable {
    /// Parse a table in the embedded format: one record per line,
    /// `n;rank;d1,d2,...;c1,c2,...`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(';').collect();
            if fields.len() != 4 {
                return Err(Error::BadTable(format!("line {}: expected 4 fields", lineno + 1)));
            }
            let bad = |what: &str| Error::BadTable(format!("line {}: bad {}", lineno + 1, what));
            let n: u64 = fields[0].parse().map_err(|_| bad("index"))?;
            let rank: usize = fields[1].parse().map_err(|_| bad("rank"))?;
            let ints = |s: &str, what: &str| -> Result<Vec<u64>> {
                s.split(',')
                    .map(|x| x.trim().parse::<u64>().map_err(|_| bad(what)))
                    .collect()
            };
            let degrees = ints(fields[2], "degrees")?;
            let codegrees = ints(fields[3], "codegrees")?;
            if degrees.len() != rank || codegrees.len() != rank {
                return Err(bad("length"));
            }
            let profile = DegreeProfile::new(degrees, codegrees);
            if profile.codegrees.iter().filter(|&&c| c == 0).count() != 1 {
                return Err(bad("codegrees: expected exactly one zero"));
            }
            entries.insert(n, profile);
        }
        Ok(ExceptionalTable { entries })
    }

    pub fn get(&self, n: u64) -> Result<&DegreeProfile> {
        self.entries.get(&n).ok_or(Error::ExceptionalIndex(n))
    }
}

const EXCEPTIONAL_DATA: &str = include_str!("data/exceptionals.txt");

/// The built-in exceptional table.
pub fn exceptional_table() -> &'static ExceptionalTable {
    static TABLE: OnceLock<ExceptionalTable> = OnceLock::new();
    TABLE.get_or_init(|| ExceptionalTable::parse(EXCEPTIONAL_DATA).expect("embedded table"))
}

/// Irreducibility and rank of a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub irreducible: bool,
    pub rank: usize,
}

/// Whether the group acts irreducibly on its reflection representation,
/// and its rank.  `G(1,1,l)` is the symmetric group acting on its
/// rank-(l-1) reflection representation.
pub fn classify(g: GroupId) -> Result<Classification> {
    match g {
        GroupId::Infinite { r, p, l } => {
            let irreducible = if r == 1 {
                l >= 2
            } else {
                (r, p, l) != (2, 2, 2) && !(p == r && l == 1)
            };
            let rank = if r == 1 { (l as usize).saturating_sub(1) } else { l as usize };
            Ok(Classification { irreducible, rank })
        }
        GroupId::Exceptional { n } => {
            let profile = exceptional_table().get(n)?;
            Ok(Classification {
                irreducible: true,
                rank: profile.rank,
            })
        }
    }
}

fn require_irreducible(g: GroupId) -> Result<()> {
    let c = classify(g)?;
    if !c.irreducible {
        let reason = match g {
            GroupId::Infinite { r: 1, p: 1, l: 1 } => "trivial".to_string(),
            GroupId::Infinite { r, p, l } if p == r && l == 1 && r > 1 => {
                format!("trivial (G({r},{p},{l}) has order 1)")
            }
            _ => "reducible".to_string(),
        };
        return Err(Error::NotIrreducible {
            group: g.to_string(),
            reason,
        });
    }
    Ok(())
}

/// Degrees and codegrees of an irreducible group.
pub fn degree_profile(g: GroupId) -> Result<DegreeProfile> {
    require_irreducible(g)?;
    match g {
        GroupId::Infinite { r: 1, p: _, l } => {
            // Symmetric group S_l on its (l-1)-dimensional reflection representation.
            let degrees: Vec<u64> = (2..=l).collect();
            let codegrees: Vec<u64> = (0..=l - 2).collect();
            Ok(DegreeProfile::new(degrees, codegrees))
        }
        GroupId::Infinite { r, p, l } => {
            let q = r / p;
            let mut degrees: Vec<u64> = (1..l).map(|i| i * r).collect();
            degrees.push(l * q);
            let codegrees: Vec<u64> = if p < r {
                (0..l).map(|i| i * r).collect()
            } else {
                // p = r > 1, l > 1
                let mut c: Vec<u64> = (0..l - 1).map(|i| i * r).collect();
                c.push((l - 1) * r - l);
                c
            };
            Ok(DegreeProfile::new(degrees, codegrees))
        }
        GroupId::Exceptional { n } => Ok(exceptional_table().get(n)?.clone()),
    }
}

/// Group order and centre order, from the degrees.
pub fn order_and_center(g: GroupId) -> Result<(u128, u64)> {
    let profile = degree_profile(g)?;
    let order = profile.order();
    let center = profile.center();
    if let GroupId::Infinite { r, p, l } = g {
        if r > 1 {
            let factorial: u128 = (1..=l as u128).product();
            let direct = (r as u128).pow(l as u32) * factorial / p as u128;
            if direct != order {
                return Err(Error::Inconsistent(format!(
                    "order of {g}: product of degrees {order} != r^l*l!/p = {direct}"
                )));
            }
        }
    }
    Ok((order, center))
}

/// Degree of the discriminant: sum of degrees plus sum of codegrees, i.e.
/// the number of reflections plus the number of reflecting hyperplanes.
pub fn discriminant_degree(g: GroupId) -> Result<u64> {
    let profile = degree_profile(g)?;
    Ok(profile.degrees.iter().sum::<u64>() + profile.codegrees.iter().sum::<u64>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_valid_specs() {
        assert_eq!(
            parse_group("G(4,2,3)").unwrap(),
            GroupId::Infinite { r: 4, p: 2, l: 3 }
        );
        assert_eq!(parse_group("G29").unwrap(), GroupId::Exceptional { n: 29 });
        assert_eq!(
            parse_group(" G( 4 , 2 , 3 ) ").unwrap(),
            GroupId::Infinite { r: 4, p: 2, l: 3 }
        );
    }

    #[test]
    fn parse_rejects_bad_specs() {
        assert!(matches!(
            parse_group("G(4,3,2)"),
            Err(Error::InvalidParameters { .. })
        ));
        assert!(matches!(parse_group("G38"), Err(Error::ExceptionalIndex(38))));
        assert!(matches!(parse_group("G3"), Err(Error::ExceptionalIndex(3))));
        assert!(matches!(parse_group("H4"), Err(Error::Parse(_))));
        assert!(matches!(parse_group("G(4,2)"), Err(Error::Parse(_))));
    }

    #[test]
    fn classify_cases() {
        let g222 = parse_group("G(2,2,2)").unwrap();
        let c = classify(g222).unwrap();
        assert!(!c.irreducible);
        assert_eq!(c.rank, 2);

        let s4 = parse_group("G(1,1,4)").unwrap();
        let c = classify(s4).unwrap();
        assert!(c.irreducible);
        assert_eq!(c.rank, 3);

        let e8 = parse_group("G37").unwrap();
        let c = classify(e8).unwrap();
        assert!(c.irreducible);
        assert_eq!(c.rank, 8);

        // G(r,r,1) is the trivial group.
        let c = classify(parse_group("G(3,3,1)").unwrap()).unwrap();
        assert!(!c.irreducible);
    }

    #[test]
    fn profiles_of_infinite_family() {
        let p = degree_profile(parse_group("G(4,2,3)").unwrap()).unwrap();
        assert_eq!(p.degrees, vec![4, 6, 8]);
        assert_eq!(p.codegrees, vec![0, 4, 8]);

        let p = degree_profile(parse_group("G(4,4,3)").unwrap()).unwrap();
        assert_eq!(p.degrees, vec![3, 4, 8]);
        assert_eq!(p.codegrees, vec![0, 4, 5]);

        let p = degree_profile(parse_group("G(1,1,4)").unwrap()).unwrap();
        assert_eq!(p.degrees, vec![2, 3, 4]);
        assert_eq!(p.codegrees, vec![0, 1, 2]);
    }

    #[test]
    fn e8_profile() {
        let p = degree_profile(parse_group("G37").unwrap()).unwrap();
        assert_eq!(p.degrees, vec![2, 8, 12, 14, 18, 20, 24, 30]);
    }

    #[test]
    fn reducible_profile_is_an_error() {
        assert!(matches!(
            degree_profile(parse_group("G(2,2,2)").unwrap()),
            Err(Error::NotIrreducible { .. })
        ));
        assert!(matches!(
            degree_profile(parse_group("G(1,1,1)").unwrap()),
            Err(Error::NotIrreducible { .. })
        ));
    }

    #[test]
    fn orders_and_centers() {
        assert_eq!(order_and_center(parse_group("G(4,2,3)").unwrap()).unwrap(), (192, 2));
        assert_eq!(
            order_and_center(parse_group("G37").unwrap()).unwrap(),
            (696729600, 2)
        );
        assert_eq!(order_and_center(parse_group("G(4,4,3)").unwrap()).unwrap().1, 1);
    }

    #[test]
    fn discriminant_degrees() {
        assert_eq!(discriminant_degree(parse_group("G37").unwrap()).unwrap(), 240);
        assert_eq!(discriminant_degree(parse_group("G(3,1,2)").unwrap()).unwrap(), 12);
        assert_eq!(discriminant_degree(parse_group("G(7,1,1)").unwrap()).unwrap(), 7);
    }

    #[test]
    fn exceptional_table_invariants() {
        for n in 4..=37 {
            let p = exceptional_table().get(n).unwrap();
            assert_eq!(p.degrees.len(), p.rank, "G{n}");
            assert_eq!(p.codegrees.len(), p.rank, "G{n}");
            assert_eq!(
                p.codegrees.iter().filter(|&&c| c == 0).count(),
                1,
                "G{n}: exactly one zero codegree"
            );
        }
    }

    #[test]
    fn table_override_loader() {
        let table = ExceptionalTable::parse("4;2;4,6;0,2\n").unwrap();
        assert_eq!(table.get(4).unwrap().degrees, vec![4, 6]);
        assert!(table.get(5).is_err());
        assert!(ExceptionalTable::parse("4;2;4,6").is_err());
        assert!(ExceptionalTable::parse("4;2;4,6;1,2\n").is_err());
    }
}
