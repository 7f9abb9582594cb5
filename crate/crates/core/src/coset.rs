//! Coset enumeration (HLT with immediate coincidence processing).

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_cosets: usize,
    pub max_steps: u64,
}

impl EnumerationLimits {
    pub fn new(max_cosets: usize, max_steps: u64) -> Result<Self> {
        if max_cosets == 0 || max_steps == 0 {
            return Err(Error::InvalidArgument(
                "enumeration limits must be positive".into(),
            ));
        }
        if max_cosets >= NONE as usize {
            return Err(Error::InvalidArgument(format!(
                "max cosets must be below {NONE}"
            )));
        }
        Ok(EnumerationLimits {
            max_cosets,
            max_steps,
        })
    }
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_cosets: 1_000_000,
            max_steps: 100_000_000,
        }
    }
}

/// Complete right action of the generators and their inverses on cosets.
/// Coset 0 is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    gens: usize,
    action: Vec<u32>,
}

impl CosetTable {
    /// Builds a table from rows `[g0, g0^-1, g1, g1^-1, ...]` and checks that
    /// the generator columns are mutually inverse permutations.
    pub fn from_rows(gens: usize, rows: &[Vec<usize>]) -> Result<Self> {
        let cols = 2 * gens;
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "coset table needs at least one coset".into(),
            ));
        }
        let mut action = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols || r.iter().any(|&c| c >= n) {
                return Err(Error::InvalidArgument("malformed coset table row".into()));
            }
            action.extend(r.iter().map(|&c| c as u32));
        }
        let t = CosetTable { gens, action };
        t.check_permutations().map_err(Error::InvalidArgument)?;
        Ok(t)
    }

    pub fn n_cosets(&self) -> usize {
        if self.gens == 0 {
            // A generator-free group has a single coset.
            1
        } else {
            self.action.len() / (2 * self.gens)
        }
    }

    pub fn generator_count(&self) -> usize {
        self.gens
    }

    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.action[coset * 2 * self.gens + l.column()] as usize
    }

    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Row of coset `c`, columns ordered `g0, g0^-1, g1, ...`.
    pub fn row(&self, c: usize) -> Vec<usize> {
        let cols = 2 * self.gens;
        self.action[c * cols..(c + 1) * cols]
            .iter()
            .map(|&x| x as usize)
            .collect()
    }

    /// Permutation of the cosets induced by each generator.
    pub fn generator_permutations(&self) -> Vec<Vec<usize>> {
        (0..self.gens)
            .map(|g| {
                (0..self.n_cosets())
                    .map(|c| self.act(c, Letter::pos(g)))
                    .collect()
            })
            .collect()
    }

    /// Renumbers cosets in breadth-first order from coset 0, scanning columns
    /// left to right.
    pub fn standardize(&self) -> CosetTable {
        let n = self.n_cosets();
        let cols = 2 * self.gens;
        let mut new_of = vec![NONE; n];
        let mut order = Vec::with_capacity(n);
        new_of[0] = 0;
        order.push(0usize);
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for x in 0..cols {
                let d = self.action[c * cols + x] as usize;
                if new_of[d] == NONE {
                    new_of[d] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let mut action = Vec::with_capacity(order.len() * cols);
        for &c in &order {
            action.extend(
                self.action[c * cols..(c + 1) * cols]
                    .iter()
                    .map(|&d| new_of[d as usize]),
            );
        }
        CosetTable {
            gens: self.gens,
            action,
        }
    }

    fn check_permutations(&self) -> std::result::Result<(), String> {
        for c in 0..self.n_cosets() {
            for g in 0..self.gens {
                let d = self.act(c, Letter::pos(g));
                if self.act(d, Letter::neg(g)) != c {
                    return Err(format!(
                        "generator {g} and its inverse are not inverse at coset {c}"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Independent re-check of a finished table: action by each generator and
    /// its inverse are inverse permutations, every relator closes up at every
    /// coset, and every subgroup generator fixes coset 0.
    pub fn verify(&self, p: &Presentation, subgroup: &[Word]) -> std::result::Result<(), String> {
        if self.gens != p.generator_count() {
            return Err("generator count mismatch".into());
        }
        let n = self.n_cosets();
        if self.action.iter().any(|&x| x as usize >= n) {
            return Err("table entry out of range".into());
        }
        self.check_permutations()?;
        for c in 0..n {
            for (i, r) in p.relators().iter().enumerate() {
                if self.trace(c, r) != c {
                    return Err(format!("relator {i} does not close at coset {c}"));
                }
            }
        }
        for (i, h) in subgroup.iter().enumerate() {
            if self.trace(0, h) != 0 {
                return Err(format!("subgroup generator {i} does not fix coset 0"));
            }
        }
        Ok(())
    }

    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        #[derive(Serialize)]
        struct Dump<'a> {
            cosets: usize,
            columns: Vec<String>,
            action: Vec<Vec<usize>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            generators: Option<&'a [String]>,
        }
        let columns = names
            .iter()
            .flat_map(|n| [n.clone(), format!("{n}^-1")])
            .collect();
        serde_json::to_value(Dump {
            cosets: self.n_cosets(),
            columns,
            action: (0..self.n_cosets()).map(|c| self.row(c)).collect(),
            generators: None,
        })
        .expect("coset table serializes")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    pub cosets_defined: usize,
    pub live_cosets: usize,
    pub collapses: u64,
    pub steps: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExhaustedLimit {
    MaxCosets,
    MaxSteps,
}

impl fmt::Display for ExhaustedLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExhaustedLimit::MaxCosets => "max-cosets",
            ExhaustedLimit::MaxSteps => "max-steps",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Exhausted {
    pub limit: ExhaustedLimit,
    pub stats: EnumerationStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Complete(CosetTable),
    Exhausted(Exhausted),
}

impl Enumeration {
    pub fn table(&self) -> Option<&CosetTable> {
        match self {
            Enumeration::Complete(t) => Some(t),
            Enumeration::Exhausted(_) => None,
        }
    }
}

struct Enumerator<'a> {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    stats: EnumerationStats,
    limits: &'a EnumerationLimits,
    queue: Vec<u32>,
}

type Step<T> = std::result::Result<T, ExhaustedLimit>;

#[inline]
fn inv_col(x: usize) -> usize {
    x ^ 1
}

impl Enumerator<'_> {
    #[inline]
    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, d: u32) {
        self.table[c * self.cols + x] = d;
    }

    fn tick(&mut self) -> Step<()> {
        self.stats.steps += 1;
        if self.stats.steps > self.limits.max_steps {
            Err(ExhaustedLimit::MaxSteps)
        } else {
            Ok(())
        }
    }

    fn new_coset(&mut self) -> Step<usize> {
        if self.stats.cosets_defined >= self.limits.max_cosets {
            return Err(ExhaustedLimit::MaxCosets);
        }
        self.tick()?;
        let c = self.stats.cosets_defined;
        self.stats.cosets_defined += 1;
        self.live += 1;
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.parent.push(c as u32);
        Ok(c)
    }

    fn define(&mut self, c: usize, x: usize) -> Step<()> {
        let d = self.new_coset()?;
        self.set(c, x, d as u32);
        self.set(d, inv_col(x), c as u32);
        Ok(())
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut x = c;
        while self.parent[x] as usize != r {
            let next = self.parent[x] as usize;
            self.parent[x] = r as u32;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill] = keep as u32;
        self.live -= 1;
        self.stats.collapses += 1;
        self.queue.push(kill as u32);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i] as usize;
            i += 1;
            for x in 0..self.cols {
                let d = self.get(dead, x);
                if d == NONE {
                    continue;
                }
                let d = d as usize;
                self.set(d, inv_col(x), NONE);
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_x = self.get(mu, x);
                if mu_x != NONE {
                    self.merge(nu, mu_x as usize);
                } else {
                    let nu_inv = self.get(nu, inv_col(x));
                    if nu_inv != NONE {
                        self.merge(mu, nu_inv as usize);
                    } else {
                        self.set(mu, x, nu as u32);
                        self.set(nu, inv_col(x), mu as u32);
                    }
                }
            }
        }
    }

    /// Traces `w` from `c` forwards and backwards, defining new cosets to
    /// close the gap and recording deductions or coincidences.
    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Step<()> {
        self.tick()?;
        if w.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len(); // exclusive end of the unscanned part
        loop {
            while i < j {
                let next = self.get(f, w[i]);
                if next == NONE {
                    break;
                }
                f = next as usize;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let prev = self.get(b, inv_col(w[j - 1]));
                if prev == NONE {
                    break;
                }
                b = prev as usize;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, w[i], b as u32);
                self.set(b, inv_col(w[i]), f as u32);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn run(&mut self, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) -> Step<()> {
        self.new_coset()?;
        for h in subgroup {
            self.scan_and_fill(0, h)?;
        }
        let mut c = 0;
        while c < self.stats.cosets_defined {
            if self.alive(c) {
                for r in relators {
                    self.scan_and_fill(c, r)?;
                    if !self.alive(c) {
                        break;
                    }
                }
                if self.alive(c) {
                    for x in 0..self.cols {
                        if self.get(c, x) == NONE {
                            self.define(c, x)?;
                        }
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn into_table(self, gens: usize) -> CosetTable {
        let n = self.stats.cosets_defined;
        let mut new_of = vec![NONE; n];
        let mut k = 0u32;
        for (c, slot) in new_of.iter_mut().enumerate() {
            if self.parent[c] as usize == c {
                *slot = k;
                k += 1;
            }
        }
        let mut action = Vec::with_capacity(k as usize * self.cols);
        for c in 0..n {
            if new_of[c] != NONE {
                action.extend(
                    self.table[c * self.cols..(c + 1) * self.cols]
                        .iter()
                        .map(|&d| new_of[d as usize]),
                );
            }
        }
        CosetTable { gens, action }.standardize()
    }
}

fn columns(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.column()).collect()
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the group
/// presented by `p`. Exhaustion of either limit is reported as a value.
pub fn enumerate_cosets(
    p: &Presentation,
    subgroup: &[Word],
    limits: &EnumerationLimits,
) -> Result<Enumeration> {
    for h in subgroup {
        p.check_word(h)?;
    }
    let gens = p.generator_count();
    if gens == 0 {
        return Ok(Enumeration::Complete(CosetTable {
            gens: 0,
            action: vec![],
        }));
    }
    let relators: Vec<Vec<usize>> = p.relators().iter().map(columns).collect();
    let subgroup: Vec<Vec<usize>> = subgroup.iter().map(columns).collect();
    let mut e = Enumerator {
        cols: 2 * gens,
        table: Vec::new(),
        parent: Vec::new(),
        live: 0,
        stats: EnumerationStats::default(),
        limits,
        queue: Vec::new(),
    };
    match e.run(&relators, &subgroup) {
        Ok(()) => Ok(Enumeration::Complete(e.into_table(gens))),
        Err(limit) => {
            e.stats.live_cosets = e.live;
            Ok(Enumeration::Exhausted(Exhausted {
                limit,
                stats: e.stats,
            }))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(u64),
    Unknown(Exhausted),
}

impl GroupOrder {
    pub fn finite(&self) -> Option<u64> {
        match self {
            GroupOrder::Finite(n) => Some(*n),
            GroupOrder::Unknown(_) => None,
        }
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "Finite({n})"),
            GroupOrder::Unknown(_) => f.write_str("Unknown"),
        }
    }
}

/// Order of the group, by enumerating cosets of the trivial subgroup. Never
/// claims infiniteness: an exhausted enumeration is `Unknown`.
pub fn group_order(p: &Presentation, limits: &EnumerationLimits) -> GroupOrder {
    regular_table(p, limits).map_or_else(GroupOrder::Unknown, |t| {
        GroupOrder::Finite(t.n_cosets() as u64)
    })
}

/// Coset table of the trivial subgroup, i.e. the regular permutation
/// representation of a finite group.
pub fn regular_table(
    p: &Presentation,
    limits: &EnumerationLimits,
) -> std::result::Result<CosetTable, Exhausted> {
    match enumerate_cosets(p, &[], limits).expect("empty subgroup list is well formed") {
        Enumeration::Complete(t) => Ok(t),
        Enumeration::Exhausted(x) => Err(x),
    }
}

/// Breadth-first spanning tree of a table: the parent edge of each coset.
pub(crate) fn bfs_order(t: &CosetTable, positive_only: bool) -> Vec<Option<(usize, Letter)>> {
    let n = t.n_cosets();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut q = VecDeque::from([0usize]);
    while let Some(c) = q.pop_front() {
        for g in 0..t.generator_count() {
            let letters: &[Letter] = if positive_only {
                &[Letter::pos(g)]
            } else {
                &[Letter::pos(g), Letter::neg(g)]
            };
            for &l in letters {
                let d = t.act(c, l);
                if !seen[d] {
                    seen[d] = true;
                    parent[d] = Some((c, l));
                    q.push_back(d);
                }
            }
        }
    }
    parent
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn pres(s: &str) -> Presentation {
        parse_presentation(s).unwrap().presentation().clone()
    }

    fn complete(p: &Presentation, h: &[Word]) -> CosetTable {
        let t = match enumerate_cosets(p, h, &EnumerationLimits::default()).unwrap() {
            Enumeration::Complete(t) => t,
            Enumeration::Exhausted(x) => panic!("exhausted: {x:?}"),
        };
        t.verify(p, h).unwrap();
        t
    }

    #[test]
    fn cyclic_six() {
        let p = pres("gens a\nrel a^6");
        let t = complete(&p, &[]);
        assert_eq!(t.n_cosets(), 6);
        assert_eq!(
            group_order(&p, &EnumerationLimits::default()),
            GroupOrder::Finite(6)
        );
    }

    #[test]
    fn dicyclic_twelve() {
        let p = pres("gens x y\nrel x^6\nrel x^3 y^-2\nrel y^-1 x y x");
        assert_eq!(complete(&p, &[]).n_cosets(), 12);
    }

    #[test]
    fn free_product_subgroup_exhausts() {
        let p = pres("gens a b\nrel a^2\nrel b^3");
        let limits = EnumerationLimits::new(100_000, 100_000_000).unwrap();
        match enumerate_cosets(&p, &[Word::power_of(0, 1)], &limits).unwrap() {
            Enumeration::Exhausted(x) => {
                assert_eq!(x.limit, ExhaustedLimit::MaxCosets);
                assert_eq!(x.stats.cosets_defined, 100_000);
            }
            Enumeration::Complete(t) => panic!("Z/2*Z/3 enumerated with {} cosets", t.n_cosets()),
        }
    }

    #[test]
    fn infinite_cyclic_is_unknown() {
        let p = pres("gens a");
        let limits = EnumerationLimits::new(1000, 1_000_000).unwrap();
        assert!(matches!(group_order(&p, &limits), GroupOrder::Unknown(_)));
    }

    #[test]
    fn small_groups_match_known_orders() {
        let cases = [
            ("gens a b\nrel a^2\nrel b^3\nrel a b a b", 6),
            ("gens i j\nrel i^4\nrel i^2 j^-2\nrel j^-1 i j i", 8),
            ("gens a\nrel a^11", 11),
            ("gens a b\nrel a^2\nrel b^2\nrel a b a b", 4),
            ("gens a b\nrel a^2\nrel b^3\nrel a b a b a b a b", 24),
            ("gens a b\nrel a b^-1\nrel a^5", 5),
        ];
        for (s, n) in cases {
            let p = pres(s);
            assert_eq!(complete(&p, &[]).n_cosets(), n, "{s}");
        }
    }

    #[test]
    fn index_of_order_two_subgroup_in_s3() {
        let p = pres("gens a b\nrel a^2\nrel b^3\nrel a b a b");
        assert_eq!(complete(&p, &[Word::power_of(0, 1)]).n_cosets(), 3);
    }

    #[test]
    fn output_is_standardized_and_deterministic() {
        let p = pres("gens x y\nrel x^6\nrel x^3 y^-2\nrel y^-1 x y x");
        let t = complete(&p, &[]);
        assert_eq!(t, t.standardize());
        assert_eq!(t, complete(&p, &[]));
    }

    #[test]
    fn trivial_group_and_no_generators() {
        let p = pres("gens a b\nrel a\nrel b");
        assert_eq!(complete(&p, &[]).n_cosets(), 1);
        let q = pres("gens");
        assert_eq!(
            group_order(&q, &EnumerationLimits::default()),
            GroupOrder::Finite(1)
        );
    }

    #[test]
    fn malformed_subgroup_word_is_an_error() {
        let p = pres("gens a\nrel a^2");
        assert!(
            enumerate_cosets(&p, &[Word::power_of(3, 1)], &EnumerationLimits::default()).is_err()
        );
    }

    #[test]
    fn step_limit_is_reported() {
        let p = pres("gens a b\nrel a^2\nrel b^3");
        let limits = EnumerationLimits::new(1_000_000, 500).unwrap();
        match enumerate_cosets(&p, &[], &limits).unwrap() {
            Enumeration::Exhausted(x) => assert_eq!(x.limit, ExhaustedLimit::MaxSteps),
            Enumeration::Complete(_) => panic!("should exhaust"),
        }
    }

    #[test]
    fn verify_rejects_broken_table() {
        let p = pres("gens a\nrel a^3");
        let t = CosetTable::from_rows(1, &[vec![1, 1], vec![0, 0]]).unwrap();
        assert!(t.verify(&p, &[]).is_err());
        assert!(CosetTable::from_rows(1, &[vec![1, 0], vec![0, 0]]).is_err());
    }
}
