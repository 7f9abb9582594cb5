//! Curve groups with linking data, and the groups derived from them: the
//! extended group `Z x G`, the kernel of the extended linking map (the
//! affine complement group) and its quotient by `t^(kd)` (the group of the
//! pulled-back curve under a generic degree-`k` covering of the plane).

use std::fmt;

use num_integer::Integer;

use crate::coset::CosetTable;
use crate::error::{Error, Result};
use crate::intlinalg::first_inconsistent_relator;
use crate::presentation::Presentation;
use crate::schreier::{schreier_transversal, subgroup_presentation_raw, SchreierData};
use crate::tietze::{tietze_simplify_tracked, DEFAULT_BUDGET};
use crate::word::Word;

/// A presented group `G` together with a degree `d` and a linking value in
/// `Z/d` for each generator, defining a surjection `G -> Z/d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveGroup {
    p: Presentation,
    degree: u64,
    linking: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkingReport {
    Ok,
    WrongLength {
        expected: usize,
        found: usize,
    },
    /// A relator whose weighted exponent sum is not divisible by the degree.
    Relator {
        index: usize,
        relator: String,
        weight: i64,
    },
    /// The linking values do not generate `Z/d`.
    NotSurjective {
        gcd: u64,
    },
}

impl LinkingReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, LinkingReport::Ok)
    }
}

impl fmt::Display for LinkingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkingReport::Ok => f.write_str("ok"),
            LinkingReport::WrongLength { expected, found } => {
                write!(f, "expected {expected} linking values, found {found}")
            }
            LinkingReport::Relator {
                index,
                relator,
                weight,
            } => {
                write!(f, "relator {index} `{relator}` has linking weight {weight}, not divisible by the degree")
            }
            LinkingReport::NotSurjective { gcd } => {
                write!(
                    f,
                    "linking values and degree have common divisor {gcd}; the map is not onto"
                )
            }
        }
    }
}

impl CurveGroup {
    /// Validating constructor; linking values are reduced mod `degree`.
    pub fn new(p: Presentation, degree: u64, linking: Vec<u64>) -> Result<Self> {
        let cg = CurveGroup::unchecked(p, degree, linking)?;
        match validate_linking(&cg) {
            LinkingReport::Ok => Ok(cg),
            report => Err(Error::Linking(report.to_string())),
        }
    }

    /// Builds without checking the homomorphism conditions (for inspection
    /// with [`validate_linking`]). Only the degree must be positive.
    pub fn unchecked(p: Presentation, degree: u64, linking: Vec<u64>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Linking("degree must be positive".into()));
        }
        let linking = linking.into_iter().map(|v| v % degree).collect();
        Ok(CurveGroup { p, degree, linking })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.p
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn linking(&self) -> &[u64] {
        &self.linking
    }
}

impl fmt::Display for CurveGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "group d={}", self.degree)?;
        self.p.write_body(f, Some(&self.linking))
    }
}

pub fn validate_linking(cg: &CurveGroup) -> LinkingReport {
    let n = cg.p.generator_count();
    if cg.linking.len() != n {
        return LinkingReport::WrongLength {
            expected: n,
            found: cg.linking.len(),
        };
    }
    let values: Vec<i64> = cg.linking.iter().map(|&v| v as i64).collect();
    if let Some(index) = first_inconsistent_relator(&cg.p, &values, cg.degree) {
        let r = &cg.p.relators()[index];
        let weight = r.letters().iter().map(|l| l.sign() * values[l.gen]).sum();
        return LinkingReport::Relator {
            index,
            relator: cg.p.display_word(r).to_string(),
            weight,
        };
    }
    let gcd = cg.linking.iter().fold(cg.degree, |g, &v| g.gcd(&v));
    if gcd != 1 {
        return LinkingReport::NotSurjective { gcd };
    }
    LinkingReport::Ok
}

/// `Z x G`, presented on a fresh central generator `t` (index 0) followed by
/// the generators of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedGroup {
    p: Presentation,
    base: CurveGroup,
}

impl ExtendedGroup {
    pub fn presentation(&self) -> &Presentation {
        &self.p
    }

    pub fn base(&self) -> &CurveGroup {
        &self.base
    }

    /// Index of the central generator.
    pub fn t(&self) -> usize {
        0
    }

    /// The extended linking map `(nu, g) -> l(g) - nu` as values in `Z/d`
    /// on the generators: `t -> -1`, `g -> l(g)`.
    pub fn extended_linking(&self) -> Vec<i64> {
        let d = self.base.degree as i64;
        std::iter::once((d - 1) % d)
            .chain(self.base.linking.iter().map(|&v| v as i64))
            .collect()
    }
}

fn fresh_name(taken: &[String], stem: &str) -> String {
    if !taken.iter().any(|n| n == stem) {
        return stem.to_string();
    }
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|c| !taken.iter().any(|n| n == c))
        .expect("some suffix is free")
}

pub fn extended_group(cg: &CurveGroup) -> Result<ExtendedGroup> {
    let report = validate_linking(cg);
    if !report.is_ok() {
        return Err(Error::Linking(report.to_string()));
    }
    let base_names = cg.p.generator_names();
    let mut names = vec![fresh_name(base_names, "t")];
    names.extend(base_names.iter().cloned());
    let shift = |w: &Word| {
        Word::from_letters(
            w.letters()
                .iter()
                .map(|l| crate::word::Letter::new(l.gen + 1, l.inverse)),
        )
    };
    let mut rels: Vec<Word> = cg.p.relators().iter().map(shift).collect();
    for g in 1..names.len() {
        rels.push(Word::from_syllables(&[(0, 1), (g, 1), (0, -1), (g, -1)]));
    }
    Ok(ExtendedGroup {
        p: Presentation::from_parts(names, rels),
        base: cg.clone(),
    })
}

/// Coset table of the kernel of the extended linking map, built directly
/// from its values: coset `j` in `Z/d`, `j.t = j - 1`, `j.g = j + l(g)`.
pub fn kernel_coset_table(eg: &ExtendedGroup) -> CosetTable {
    let d = eg.base.degree as i64;
    let values = eg.extended_linking();
    let rows: Vec<Vec<usize>> = (0..d)
        .map(|j| {
            values
                .iter()
                .flat_map(|&v| {
                    [
                        (j + v).rem_euclid(d) as usize,
                        (j - v).rem_euclid(d) as usize,
                    ]
                })
                .collect()
        })
        .collect();
    CosetTable::from_rows(values.len(), &rows).expect("arithmetic kernel table is well formed")
}

struct Kernel {
    eg: ExtendedGroup,
    table: CosetTable,
    data: SchreierData,
    raw: Presentation,
}

fn kernel(cg: &CurveGroup) -> Result<Kernel> {
    let eg = extended_group(cg)?;
    let table = kernel_coset_table(&eg);
    let data = schreier_transversal(&table);
    let raw = subgroup_presentation_raw(eg.presentation(), &table, &data);
    Ok(Kernel {
        eg,
        table,
        data,
        raw,
    })
}

/// Presentation of the kernel of the extended linking map: the fundamental
/// group of the affine complement (curve plus a general line).
pub fn affine_group(cg: &CurveGroup) -> Result<Presentation> {
    let k = kernel(cg)?;
    Ok(tietze_simplify_tracked(&k.raw, DEFAULT_BUDGET).0)
}

/// The kernel modulo the central element `t^(kd)`, with degree `kd` and the
/// linking value of each generator set to its `t`-exponent sum mod `kd`.
pub fn pullback_group(cg: &CurveGroup, k: u64) -> Result<CurveGroup> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "covering degree k must be at least 1".into(),
        ));
    }
    let kern = kernel(cg)?;
    let t = kern.eg.t();
    let new_degree = k
        .checked_mul(cg.degree)
        .ok_or_else(|| Error::InvalidArgument("k * d overflows".into()))?;
    let exponent =
        i64::try_from(new_degree).map_err(|_| Error::InvalidArgument("k * d too large".into()))?;
    let central = kern.data.rewrite(&kern.table, &Word::power_of(t, exponent));
    let with_central = kern.raw.with_relator(central)?;

    let linking: Vec<u64> = (0..kern.data.sgen_count())
        .map(|s| {
            let nu = kern.data.sgen_word(&kern.table, s).exponent_sum(t);
            nu.rem_euclid(exponent) as u64
        })
        .collect();
    let (p, kept) = tietze_simplify_tracked(&with_central, DEFAULT_BUDGET);
    let linking = kept.iter().map(|&s| linking[s]).collect();
    CurveGroup::new(p, new_degree, linking)
}

/// Quotient of `p` by the normal closure of `w`. When `w` is central this is
/// the cokernel of `<w> -> G`; centrality is the caller's obligation (see
/// [`crate::quotient::central_in_quotients`] for a finite spot check).
pub fn cokernel_of_central(p: &Presentation, w: &Word) -> Result<Presentation> {
    p.with_relator(w.clone())
}

/// `<a, b, c | a^q = b^p = c, c^k = 1>` of degree `pqk` with linking values
/// `a -> p`, `b -> q`, `c -> pq`.
pub fn torus_curve_group(p: u64, q: u64, k: u64) -> Result<CurveGroup> {
    if p == 0 || q == 0 || k == 0 {
        return Err(Error::InvalidArgument("p, q, k must be positive".into()));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidArgument(format!("gcd({p}, {q}) != 1")));
    }
    let (pi, qi, ki) = (p as i64, q as i64, k as i64);
    let pres = Presentation::from_names(
        &["a", "b", "c"],
        vec![
            Word::from_syllables(&[(0, qi), (2, -1)]),
            Word::from_syllables(&[(1, pi), (2, -1)]),
            Word::power_of(2, ki),
        ],
    )?;
    CurveGroup::new(pres, p * q * k, vec![p, q, p * q])
}
