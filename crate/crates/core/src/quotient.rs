//! Homomorphisms into small finite groups: counts, non-abelian witnesses,
//! abelianness certificates and separation reports for pairs of curves.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::ops::ControlFlow;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::coset::{group_order, regular_table, EnumerationLimits, GroupOrder};
use crate::error::{Error, Result};
use crate::intlinalg::{abelianization, AbelianInvariants};
use crate::presentation::Presentation;
use crate::word::Word;
use crate::zariski::{pullback_group, CurveGroup};

/// Largest target order accepted by [`count_homs`].
pub const DEFAULT_TARGET_BOUND: usize = 120;

/// A finite group given by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTarget {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl FiniteTarget {
    /// Checks identity at 0, Latin-square rows, inverses and associativity.
    pub fn from_table(name: &str, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0
            || rows
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(Error::NotAGroup(format!(
                "{name}: table must be square with entries below {n}"
            )));
        }
        let table: Vec<u32> = rows.iter().flatten().map(|&x| x as u32).collect();
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        if (0..n).any(|a| at(0, a) != a || at(a, 0) != a) {
            return Err(Error::NotAGroup(format!(
                "{name}: element 0 is not the identity"
            )));
        }
        let mut inverse = vec![0u32; n];
        for (a, slot) in inverse.iter_mut().enumerate() {
            let Some(b) = (0..n).find(|&b| at(a, b) == 0) else {
                return Err(Error::NotAGroup(format!(
                    "{name}: element {a} has no inverse"
                )));
            };
            if at(b, a) != 0 {
                return Err(Error::NotAGroup(format!(
                    "{name}: left and right inverses of {a} differ"
                )));
            }
            *slot = b as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "{name}: ({a}{b}){c} != {a}({b}{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteTarget {
            name: name.to_string(),
            order: n,
            table,
            inverse,
        })
    }

    /// Closes permutation generators (acting on the right, `x * y` applies
    /// `x` first) into a table. Elements are numbered in breadth-first order
    /// from the identity.
    pub fn from_permutations(name: &str, gens: &[Vec<usize>], max_order: usize) -> Result<Self> {
        let degree = gens.first().map_or(0, Vec::len);
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree
                || g.iter()
                    .any(|&x| x >= degree || std::mem::replace(&mut seen[x], true))
            {
                return Err(Error::NotAGroup(format!(
                    "{name}: generators are not permutations of one set"
                )));
            }
        }
        let compose =
            |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().map(|&i| y[i]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for g in gens {
                let next = compose(&elements[e], g);
                if !index.contains_key(&next) {
                    if elements.len() >= max_order {
                        return Err(Error::TargetTooLarge {
                            name: name.into(),
                            order: elements.len() + 1,
                            bound: max_order,
                        });
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let rows: Vec<Vec<usize>> = elements
            .iter()
            .map(|x| elements.iter().map(|y| index[&compose(x, y)]).collect())
            .collect();
        let n = rows.len();
        let table = rows.iter().flatten().map(|&x| x as u32).collect::<Vec<_>>();
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a * n + b] == 0)
                    .expect("finite permutation group") as u32
            })
            .collect();
        Ok(FiniteTarget {
            name: name.to_string(),
            order: n,
            table,
            inverse,
        })
    }

    /// Index of a permutation among the elements produced by [`Self::from_permutations`]
    /// with the same generators.
    fn closure_index(gens: &[Vec<usize>], target: &[usize]) -> Option<usize> {
        let degree = target.len();
        let compose =
            |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().map(|&i| y[i]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for g in gens {
                let next = compose(&elements[e], g);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        index.get(target).copied()
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = vec![];
        if n >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(swap);
            gens.push(cycle);
        } else {
            gens.push((0..n).collect());
        }
        FiniteTarget::from_permutations(&format!("S{n}"), &gens, usize::MAX)
            .expect("symmetric group")
    }

    pub fn cyclic(n: usize) -> Self {
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteTarget::from_table(&format!("Z{n}"), &rows).expect("cyclic group")
    }

    /// Dicyclic group of order `4n`: `<x, y | x^(2n), x^n = y^2, y^-1 x y = x^-1>`.
    /// Element `2n*j + i` is `x^i y^j`.
    pub fn dicyclic(n: usize) -> Self {
        let m = 2 * n;
        let idx = |i: usize, j: usize| j * m + i;
        let mut rows = vec![vec![0; 2 * m]; 2 * m];
        for (j, l) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for i in 0..m {
                for k in 0..m {
                    // x^i y^j * x^k y^l, using y x^k = x^-k y and y^2 = x^n
                    let (e, s) = match (j, l) {
                        (0, _) => ((i + k) % m, l),
                        (1, 0) => ((i + m - k) % m, 1),
                        _ => ((i + m - k + n) % m, 0),
                    };
                    rows[idx(i, j)][idx(k, l)] = idx(e, s);
                }
            }
        }
        FiniteTarget::from_table(&format!("Dic{}", 4 * n), &rows).expect("dicyclic group")
    }

    pub fn quaternion() -> Self {
        let mut q = FiniteTarget::dicyclic(2);
        q.name = "Q8".into();
        q
    }

    pub fn direct_product(a: &FiniteTarget, b: &FiniteTarget) -> Self {
        let (n, m) = (a.order, b.order);
        let rows: Vec<Vec<usize>> = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        FiniteTarget::from_table(&format!("{}x{}", a.name, b.name), &rows)
            .expect("product of groups")
    }

    /// Built-in targets: `S3`, `S4`, `Q8`, `Dic12`, `Z1`..`Z12`.
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "S3" => Ok(FiniteTarget::symmetric(3)),
            "S4" => Ok(FiniteTarget::symmetric(4)),
            "Q8" => Ok(FiniteTarget::quaternion()),
            "Dic12" => Ok(FiniteTarget::dicyclic(3)),
            _ => match name.strip_prefix('Z').and_then(|n| n.parse::<usize>().ok()) {
                Some(n @ 1..=12) => Ok(FiniteTarget::cyclic(n)),
                _ => Err(Error::InvalidArgument(format!("unknown target `{name}`"))),
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Image of a word under the generator assignment `images`.
    pub fn evaluate(&self, w: &Word, images: &[usize]) -> usize {
        w.letters().iter().fold(0, |acc, l| {
            let x = images[l.gen];
            self.mul(acc, if l.inverse { self.inv(x) } else { x })
        })
    }
}

/// Targets used by default for certificates and reports.
pub fn default_targets() -> Vec<FiniteTarget> {
    ["S3", "S4", "Dic12", "Q8"]
        .iter()
        .map(|n| FiniteTarget::builtin(n).unwrap())
        .collect()
}

/// Depth-first search over generator images in element order, checking each
/// relator as soon as its last generator is assigned.
fn search_homs<F>(p: &Presentation, t: &FiniteTarget, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = p.generator_count();
    let mut by_last: Vec<Vec<&Word>> = vec![Vec::new(); n];
    for r in p.relators() {
        if let Some(g) = r.max_gen() {
            by_last[g].push(r);
        }
    }
    let mut images = vec![0usize; n];
    fn go<F: FnMut(&[usize]) -> ControlFlow<()>>(
        g: usize,
        images: &mut Vec<usize>,
        by_last: &[Vec<&Word>],
        t: &FiniteTarget,
        visit: &mut F,
    ) -> ControlFlow<()> {
        if g == images.len() {
            return visit(images);
        }
        for e in 0..t.order() {
            images[g] = e;
            if by_last[g].iter().all(|r| t.evaluate(r, images) == 0) {
                go(g + 1, images, by_last, t, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
    go(0, &mut images, &by_last, t, &mut visit)
}

/// Number of homomorphisms `G -> t`, including the trivial one.
pub fn count_homs(p: &Presentation, t: &FiniteTarget) -> Result<u64> {
    count_homs_bounded(p, t, DEFAULT_TARGET_BOUND)
}

pub fn count_homs_bounded(p: &Presentation, t: &FiniteTarget, bound: usize) -> Result<u64> {
    if t.order() > bound {
        return Err(Error::TargetTooLarge {
            name: t.name.clone(),
            order: t.order(),
            bound,
        });
    }
    // Generators absent from every relator contribute a free factor.
    let used: Vec<bool> = (0..p.generator_count())
        .map(|g| p.relators().iter().any(|r| r.occurrences(g) > 0))
        .collect();
    let free = used.iter().filter(|&&u| !u).count() as u32;
    let kept: Vec<usize> = (0..used.len()).filter(|&g| used[g]).collect();
    let mut reindex = vec![0usize; used.len()];
    for (i, &g) in kept.iter().enumerate() {
        reindex[g] = i;
    }
    let names = kept
        .iter()
        .map(|&g| p.generator_names()[g].clone())
        .collect();
    let rels = p
        .relators()
        .iter()
        .map(|r| {
            Word::from_letters(
                r.letters()
                    .iter()
                    .map(|l| crate::word::Letter::new(reindex[l.gen], l.inverse)),
            )
        })
        .collect();
    let core = Presentation::from_parts(names, rels);
    let mut count = 0u64;
    let _ = search_homs(&core, t, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    Ok(count * (t.order() as u64).pow(free))
}

/// A homomorphism into a finite group with two non-commuting generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonAbelianWitness {
    pub target: FiniteTarget,
    pub images: Vec<usize>,
    pub pair: (usize, usize),
}

impl NonAbelianWitness {
    /// Re-checks that the images satisfy every relator and that the pair does
    /// not commute.
    pub fn check(&self, p: &Presentation) -> bool {
        self.images.len() == p.generator_count()
            && p.relators()
                .iter()
                .all(|r| self.target.evaluate(r, &self.images) == 0)
            && !self
                .target
                .commute(self.images[self.pair.0], self.images[self.pair.1])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Abelian { order: u64 },
    NonAbelian(NonAbelianWitness),
    Unknown,
}

impl Certificate {
    pub fn verdict(&self) -> Verdict {
        match self {
            Certificate::Abelian { .. } => Verdict::Abelian,
            Certificate::NonAbelian(_) => Verdict::NonAbelian,
            Certificate::Unknown => Verdict::Unknown,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Abelian,
    NonAbelian,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Abelian => "Abelian",
            Verdict::NonAbelian => "NonAbelian",
            Verdict::Unknown => "Unknown",
        })
    }
}

fn non_commuting_pair(t: &FiniteTarget, images: &[usize]) -> Option<(usize, usize)> {
    (0..images.len())
        .flat_map(|i| (i + 1..images.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !t.commute(images[i], images[j]))
}

/// First homomorphism into `t` with non-commuting generator images.
pub fn find_non_abelian_witness(p: &Presentation, t: &FiniteTarget) -> Option<NonAbelianWitness> {
    let mut found = None;
    let _ = search_homs(p, t, |images| match non_commuting_pair(t, images) {
        Some(pair) => {
            found = Some(NonAbelianWitness {
                target: t.clone(),
                images: images.to_vec(),
                pair,
            });
            ControlFlow::Break(())
        }
        None => ControlFlow::Continue(()),
    });
    found
}

/// Largest group order for which a regular-representation witness is built.
const REGULAR_WITNESS_BOUND: usize = 2000;

/// Abelianness certificate. `NonAbelian` carries a checked witness; `Abelian`
/// means the enumerated order equals the order of the abelianization.
pub fn certify(
    p: &Presentation,
    limits: &EnumerationLimits,
    targets: &[FiniteTarget],
) -> Certificate {
    for t in targets {
        if let Some(w) = find_non_abelian_witness(p, t) {
            return Certificate::NonAbelian(w);
        }
    }
    let Ok(table) = regular_table(p, limits) else {
        return Certificate::Unknown;
    };
    let n = table.n_cosets() as u64;
    let ab_order = abelianization(p).order().and_then(|o| o.to_u64());
    if ab_order == Some(n) {
        return Certificate::Abelian { order: n };
    }
    // |G| != |G^ab|: the group acts faithfully on its own cosets, and some
    // pair of generators fails to commute there.
    if table.n_cosets() <= REGULAR_WITNESS_BOUND {
        let perms = table.generator_permutations();
        if let Ok(target) =
            FiniteTarget::from_permutations("regular", &perms, REGULAR_WITNESS_BOUND)
        {
            let images: Vec<usize> = perms
                .iter()
                .map(|g| {
                    FiniteTarget::closure_index(&perms, g).expect("generator lies in its closure")
                })
                .collect();
            if let Some(pair) = non_commuting_pair(&target, &images) {
                return Certificate::NonAbelian(NonAbelianWitness {
                    target,
                    images,
                    pair,
                });
            }
        }
    }
    Certificate::Unknown
}

/// Whether the image of `w` is central in every homomorphic image of `p` in
/// the given targets. A necessary condition for centrality only.
pub fn central_in_quotients(p: &Presentation, w: &Word, targets: &[FiniteTarget]) -> Result<bool> {
    p.check_word(w)?;
    for t in targets {
        let flow = search_homs(p, t, |images| {
            let x = t.evaluate(w, images);
            if images.iter().all(|&g| t.commute(x, g)) {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(())
            }
        });
        if flow.is_break() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Invariants of one group in a separation report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    /// `None` when enumeration exhausted its limits.
    pub order: Option<u64>,
    pub abelianization: AbelianSummary,
    pub homcounts: BTreeMap<String, u64>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianSummary {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl From<&AbelianInvariants> for AbelianSummary {
    fn from(a: &AbelianInvariants) -> Self {
        AbelianSummary {
            free_rank: a.free_rank,
            torsion: a.torsion_u64(),
        }
    }
}

impl fmt::Display for AbelianSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = AbelianInvariants {
            free_rank: self.free_rank,
            torsion: self.torsion.iter().map(|&t| t.into()).collect(),
        };
        inv.fmt(f)
    }
}

pub fn summarize(
    p: &Presentation,
    limits: &EnumerationLimits,
    targets: &[FiniteTarget],
) -> Result<GroupSummary> {
    let mut homcounts = BTreeMap::new();
    for t in targets {
        homcounts.insert(t.name().to_string(), count_homs(p, t)?);
    }
    let order = match group_order(p, limits) {
        GroupOrder::Finite(n) => Some(n),
        GroupOrder::Unknown(_) => None,
    };
    Ok(GroupSummary {
        order,
        abelianization: (&abelianization(p)).into(),
        homcounts,
        verdict: certify(p, limits, targets).verdict(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationRow {
    pub k: u64,
    pub group1: GroupSummary,
    pub group2: GroupSummary,
    pub separated: bool,
    /// Comma-separated names of the differing invariants, empty if none.
    pub separator: String,
}

impl SeparationRow {
    pub fn separators(&self) -> Vec<&str> {
        self.separator
            .split(',')
            .filter(|s| !s.is_empty())
            .collect()
    }
}

/// Invariants that provably differ. Unknown orders and verdicts never count.
fn differing(a: &GroupSummary, b: &GroupSummary) -> Vec<String> {
    let mut out = Vec::new();
    if let (Some(x), Some(y)) = (a.order, b.order) {
        if x != y {
            out.push("order".to_string());
        }
    }
    if a.abelianization != b.abelianization {
        out.push("abelianization".into());
    }
    for (name, count) in &a.homcounts {
        if b.homcounts.get(name).is_some_and(|c| c != count) {
            out.push(format!("homcount:{name}"));
        }
    }
    if a.verdict != Verdict::Unknown && b.verdict != Verdict::Unknown && a.verdict != b.verdict {
        out.push("verdict".into());
    }
    out
}

/// Compares the pull-backs of two curve groups for each `k`.
pub fn separation_report(
    cg1: &CurveGroup,
    cg2: &CurveGroup,
    ks: &[u64],
    limits: &EnumerationLimits,
    targets: &[FiniteTarget],
) -> Result<Vec<SeparationRow>> {
    ks.iter()
        .map(|&k| {
            let group1 = summarize(pullback_group(cg1, k)?.presentation(), limits, targets)?;
            let group2 = summarize(pullback_group(cg2, k)?.presentation(), limits, targets)?;
            let diff = differing(&group1, &group2);
            Ok(SeparationRow {
                k,
                separated: !diff.is_empty(),
                separator: diff.join(","),
                group1,
                group2,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn pres(s: &str) -> Presentation {
        parse_presentation(s).unwrap().presentation().clone()
    }

    /// Oracle: all tuples of generator images, every relator evaluated in full.
    fn brute_force(p: &Presentation, t: &FiniteTarget) -> u64 {
        let n = p.generator_count();
        let total = t.order().pow(n as u32);
        (0..total)
            .filter(|&mut_code| {
                let mut code = mut_code;
                let images: Vec<usize> = (0..n)
                    .map(|_| {
                        let e = code % t.order();
                        code /= t.order();
                        e
                    })
                    .collect();
                p.relators().iter().all(|r| t.evaluate(r, &images) == 0)
            })
            .count() as u64
    }

    #[test]
    fn target_orders() {
        assert_eq!(FiniteTarget::symmetric(3).order(), 6);
        assert_eq!(FiniteTarget::symmetric(4).order(), 24);
        assert_eq!(FiniteTarget::quaternion().order(), 8);
        assert_eq!(FiniteTarget::dicyclic(3).order(), 12);
        assert_eq!(FiniteTarget::builtin("Z12").unwrap().order(), 12);
        assert!(FiniteTarget::builtin("Z13").is_err());
        assert!(FiniteTarget::builtin("A5").is_err());
    }

    #[test]
    fn builtin_tables_are_groups() {
        for t in default_targets() {
            let rows: Vec<Vec<usize>> = (0..t.order())
                .map(|a| (0..t.order()).map(|b| t.mul(a, b)).collect())
                .collect();
            FiniteTarget::from_table(t.name(), &rows).unwrap();
        }
        assert!(FiniteTarget::from_table("bad", &[vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn free_product_into_s3() {
        let p = pres("gens a b\nrel a^2\nrel b^3");
        let s3 = FiniteTarget::symmetric(3);
        assert_eq!(brute_force(&p, &s3), 12);
        assert_eq!(count_homs(&p, &s3).unwrap(), 12);
    }

    #[test]
    fn cyclic_six_into_s3() {
        let p = pres("gens m\nrel m^6");
        let s3 = FiniteTarget::symmetric(3);
        assert_eq!(brute_force(&p, &s3), 6);
        assert_eq!(count_homs(&p, &s3).unwrap(), 6);
    }

    #[test]
    fn trivial_target() {
        let p = pres("gens x y\nrel x^6\nrel x^3 y^-2");
        assert_eq!(count_homs(&p, &FiniteTarget::cyclic(1)).unwrap(), 1);
    }

    #[test]
    fn free_generators_multiply() {
        let p = pres("gens a b c\nrel a^2");
        let s3 = FiniteTarget::symmetric(3);
        assert_eq!(count_homs(&p, &s3).unwrap(), brute_force(&p, &s3));
    }

    #[test]
    fn too_large_target() {
        let p = pres("gens a");
        let s5 = FiniteTarget::symmetric(5);
        assert_eq!(count_homs(&p, &s5).unwrap(), 120);
        assert!(matches!(
            count_homs_bounded(&p, &s5, 100),
            Err(Error::TargetTooLarge { order: 120, .. })
        ));
    }

    #[test]
    fn product_target_multiplies_counts() {
        let s3 = FiniteTarget::symmetric(3);
        let z2 = FiniteTarget::cyclic(2);
        let prod = FiniteTarget::direct_product(&s3, &z2);
        for s in [
            "gens a b\nrel a^2\nrel b^3",
            "gens x y\nrel x^6\nrel x^3 y^-2\nrel y^-1 x y x",
        ] {
            let p = pres(s);
            assert_eq!(
                count_homs(&p, &prod).unwrap(),
                count_homs(&p, &s3).unwrap() * count_homs(&p, &z2).unwrap()
            );
        }
    }

    #[test]
    fn certificates() {
        let limits = EnumerationLimits::default();
        let targets = default_targets();
        let Certificate::NonAbelian(w) =
            certify(&pres("gens a b\nrel a^2\nrel b^3"), &limits, &targets)
        else {
            panic!("expected a witness")
        };
        assert_eq!(w.target.name(), "S3");
        assert!(w.check(&pres("gens a b\nrel a^2\nrel b^3")));
        assert_eq!(
            certify(&pres("gens m\nrel m^6"), &limits, &targets),
            Certificate::Abelian { order: 6 }
        );
        let dic = pres("gens x y\nrel x^6\nrel x^3 y^-2\nrel y^-1 x y x");
        assert_eq!(
            certify(&dic, &limits, &targets).verdict(),
            Verdict::NonAbelian
        );
        assert!(find_non_abelian_witness(&dic, &FiniteTarget::dicyclic(3)).is_some());
    }

    #[test]
    fn regular_witness_when_targets_miss() {
        // S3 with no targets: order 6 but abelianization Z/2.
        let p = pres("gens a b\nrel a^2\nrel b^3\nrel a b a b");
        let Certificate::NonAbelian(w) = certify(&p, &EnumerationLimits::default(), &[]) else {
            panic!("expected regular-representation witness")
        };
        assert_eq!(w.target.order(), 6);
        assert!(w.check(&p));
    }

    #[test]
    fn infinite_abelian_is_unknown() {
        let limits = EnumerationLimits::new(1000, 100_000).unwrap();
        assert_eq!(
            certify(&pres("gens a"), &limits, &default_targets()),
            Certificate::Unknown
        );
    }

    #[test]
    fn centrality_spot_check() {
        let dic = pres("gens x y\nrel x^6\nrel x^3 y^-2\nrel y^-1 x y x");
        let targets = default_targets();
        assert!(central_in_quotients(&dic, &Word::power_of(0, 3), &targets).unwrap());
        assert!(!central_in_quotients(&dic, &Word::power_of(0, 1), &targets).unwrap());
    }

    #[test]
    fn self_comparison_never_separates() {
        let a = summarize(
            &pres("gens a b\nrel a^2\nrel b^3"),
            &EnumerationLimits::new(1000, 100_000).unwrap(),
            &default_targets(),
        )
        .unwrap();
        assert!(differing(&a, &a).is_empty());
    }
}
