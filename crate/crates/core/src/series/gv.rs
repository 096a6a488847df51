use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{parse_rational, Class, ClassLattice};
use crate::error::{Error, Result};
use crate::ratfun::Rational;

pub type ClassMap = BTreeMap<Class, Rational>;

/// Meeting invariants keyed by ordered pairs of classes.
pub type MeetingMap = BTreeMap<(Class, Class), Rational>;

/// Gopakumar-Vafa type input data for a fixed insertion.
///
/// Missing keys mean zero. `p0`, when absent, is synthesized from `n1`
/// through MacMahon products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVTable {
    pub omega: Vec<u64>,
    pub n0: ClassMap,
    pub n1: ClassMap,
    pub p0: Option<ClassMap>,
    pub meeting: Option<MeetingMap>,
    pub insertion: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    rank: usize,
    omega: Vec<u64>,
    #[serde(default)]
    n0: BTreeMap<String, String>,
    #[serde(default)]
    n1: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p0: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meeting: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    insertion: Option<String>,
}

fn rational_str(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn read_map(raw: &BTreeMap<String, String>, rank: usize) -> Result<ClassMap> {
    let mut out = ClassMap::new();
    for (k, v) in raw {
        let c: Class = k.parse()?;
        if c.rank() != rank {
            return Err(Error::Parse(format!("class {k} does not have rank {rank}")));
        }
        let v = parse_rational(v)?;
        if !v.is_zero() {
            out.insert(c, v);
        }
    }
    Ok(out)
}

fn write_map(m: &ClassMap) -> BTreeMap<String, String> {
    m.iter().map(|(c, v)| (c.to_string(), rational_str(v))).collect()
}

impl GVTable {
    pub fn new(omega: Vec<u64>) -> Self {
        GVTable {
            omega,
            n0: ClassMap::new(),
            n1: ClassMap::new(),
            p0: None,
            meeting: None,
            insertion: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.omega.len()
    }

    pub fn lattice(&self, max_degree: u64) -> Result<ClassLattice> {
        ClassLattice::new(self.omega.clone(), max_degree)
    }

    pub fn n0(&self, c: &Class) -> Rational {
        self.n0.get(c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn n1(&self, c: &Class) -> Rational {
        self.n1.get(c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawTable =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("GV table: {e}")))?;
        if raw.omega.len() != raw.rank {
            return Err(Error::Parse(format!(
                "rank {} but {} degree weights",
                raw.rank,
                raw.omega.len()
            )));
        }
        ClassLattice::new(raw.omega.clone(), 0)?;
        let rank = raw.rank;
        let meeting = match &raw.meeting {
            None => None,
            Some(m) => {
                let mut out = BTreeMap::new();
                for (k, v) in m {
                    let (a, b) = k
                        .split_once('|')
                        .ok_or_else(|| Error::Parse(format!("meeting key {k:?} needs the form [..]|[..]")))?;
                    let (a, b): (Class, Class) = (a.parse()?, b.parse()?);
                    if a.rank() != rank || b.rank() != rank {
                        return Err(Error::Parse(format!("meeting key {k} does not have rank {rank}")));
                    }
                    let v = parse_rational(v)?;
                    if !v.is_zero() {
                        out.insert((a, b), v);
                    }
                }
                Some(out)
            }
        };
        Ok(GVTable {
            omega: raw.omega,
            n0: read_map(&raw.n0, rank)?,
            n1: read_map(&raw.n1, rank)?,
            p0: raw.p0.as_ref().map(|m| read_map(m, rank)).transpose()?,
            meeting,
            insertion: raw.insertion,
        })
    }

    pub fn to_json(&self) -> String {
        let raw = RawTable {
            rank: self.rank(),
            omega: self.omega.clone(),
            n0: write_map(&self.n0),
            n1: write_map(&self.n1),
            p0: self.p0.as_ref().map(write_map),
            meeting: self.meeting.as_ref().map(|m| {
                m.iter()
                    .map(|((a, b), v)| (format!("{a}|{b}"), rational_str(v)))
                    .collect()
            }),
            insertion: self.insertion.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }
}

fn get(m: &ClassMap, c: &Class) -> Rational {
    m.get(c).cloned().unwrap_or_else(Rational::zero)
}

fn rat(n: u64, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn sigma(d: u32) -> u64 {
    (1..=d).filter(|i| d.is_multiple_of(*i)).map(u64::from).sum()
}

/// Multiples `k * c` with `k >= 1` inside the truncation.
fn multiples(lattice: &ClassLattice, c: &Class) -> Vec<(u32, Class)> {
    let deg = lattice.degree(c);
    if deg == 0 {
        return Vec::new();
    }
    (1..)
        .map(|k: u32| (k, c.scale(k)))
        .take_while(|(_, m)| lattice.degree(m) <= lattice.max_degree())
        .collect()
}

/// `GW_0(beta) = sum_{k beta' = beta} k^-2 n_0(beta')`.
pub fn gw0_from_gv0(n0: &ClassMap, lattice: &ClassLattice) -> ClassMap {
    let mut out = ClassMap::new();
    for (c, v) in n0 {
        for (k, m) in multiples(lattice, c) {
            *out.entry(m).or_insert_with(Rational::zero) += v * rat(1, (k as u64).pow(2));
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Inverts [`gw0_from_gv0`] by induction on the degree.
pub fn gv0_from_gw(gw0: &ClassMap, lattice: &ClassLattice) -> ClassMap {
    let mut out = ClassMap::new();
    for beta in lattice.classes() {
        if beta.is_zero() {
            continue;
        }
        let mut v = get(gw0, &beta);
        for k in 2..=lattice.degree(&beta) as u32 {
            if let Some(b) = beta.divide(k) {
                v -= get(&out, &b) * rat(1, (k as u64).pow(2));
            }
        }
        if !v.is_zero() {
            out.insert(beta, v);
        }
    }
    out
}

/// The part of `GW_1` coming from `n_0(c2)` and the meeting invariants:
/// `(1/24) sum n_0(c2) log(1 - q^b) - (1/24) sum m log(1 - q^(b1 + b2))`.
fn gw1_correction(
    n0_c2: &ClassMap,
    meeting: &MeetingMap,
    lattice: &ClassLattice,
) -> ClassMap {
    let mut out = ClassMap::new();
    // log(1 - q^b) = -sum_k q^(k b) / k
    for (c, v) in n0_c2 {
        for (k, m) in multiples(lattice, c) {
            *out.entry(m).or_insert_with(Rational::zero) -= v * rat(1, 24 * k as u64);
        }
    }
    for ((a, b), v) in meeting {
        for (k, m) in multiples(lattice, &a.add(b)) {
            *out.entry(m).or_insert_with(Rational::zero) += v * rat(1, 24 * k as u64);
        }
    }
    out
}

/// Genus one Gromov-Witten series from `n_1`, `n_0(c2)` and meeting invariants.
pub fn gw1_assemble(
    n1: &ClassMap,
    n0_c2: &ClassMap,
    meeting: &MeetingMap,
    lattice: &ClassLattice,
) -> ClassMap {
    let mut out = gw1_correction(n0_c2, meeting, lattice);
    for (c, v) in n1 {
        for (k, m) in multiples(lattice, c) {
            *out.entry(m).or_insert_with(Rational::zero) += v * rat(sigma(k), k as u64);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Recovers `n_1` from `GW_1` given the other two inputs.
pub fn gw1_extract(
    gw1: &ClassMap,
    n0_c2: &ClassMap,
    meeting: &MeetingMap,
    lattice: &ClassLattice,
) -> ClassMap {
    let correction = gw1_correction(n0_c2, meeting, lattice);
    let mut out = ClassMap::new();
    for beta in lattice.classes() {
        if beta.is_zero() {
            continue;
        }
        let mut v = get(gw1, &beta) - get(&correction, &beta);
        for k in 2..=lattice.degree(&beta) as u32 {
            if let Some(b) = beta.divide(k) {
                v -= get(&out, &b) * rat(sigma(k), k as u64);
            }
        }
        if !v.is_zero() {
            out.insert(beta, v);
        }
    }
    out
}
