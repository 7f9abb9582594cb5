//! Reidemeister–Schreier rewriting: presentations of finite-index subgroups.

use crate::coset::{bfs_order, CosetTable};
use crate::presentation::Presentation;
use crate::tietze::{tietze_simplify_tracked, DEFAULT_BUDGET};
use crate::word::{Letter, Word};

/// A prefix-closed transversal together with the numbering of the
/// nontrivial Schreier generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierData {
    /// `transversal[c]` maps coset 0 to coset `c`.
    pub transversal: Vec<Word>,
    gens: usize,
    /// Indexed by `coset * gens + generator`; `None` marks a tree edge.
    sgen_index: Vec<Option<usize>>,
    /// `(coset, generator)` of each Schreier generator, in numbering order.
    pub sgens: Vec<(usize, usize)>,
}

impl SchreierData {
    pub fn sgen(&self, coset: usize, gen: usize) -> Option<usize> {
        self.sgen_index[coset * self.gens + gen]
    }

    pub fn sgen_count(&self) -> usize {
        self.sgens.len()
    }

    /// The Schreier generator `T(c) g T(c g)^-1` as a word in the ambient generators.
    pub fn sgen_word(&self, t: &CosetTable, s: usize) -> Word {
        let (c, g) = self.sgens[s];
        let d = t.act(c, Letter::pos(g));
        self.transversal[c]
            .concat(&Word::power_of(g, 1))
            .concat(&self.transversal[d].inverse())
    }

    /// Rewrites a word that starts at `coset` into Schreier generators.
    /// Returns the rewritten word and the coset where the trace ends.
    pub fn rewrite_from(&self, t: &CosetTable, coset: usize, w: &Word) -> (Word, usize) {
        let mut out = Vec::new();
        let mut c = coset;
        for &l in w.letters() {
            if l.inverse {
                let prev = t.act(c, l);
                if let Some(s) = self.sgen(prev, l.gen) {
                    out.push(Letter::neg(s));
                }
                c = prev;
            } else {
                if let Some(s) = self.sgen(c, l.gen) {
                    out.push(Letter::pos(s));
                }
                c = t.act(c, l);
            }
        }
        (Word::from_letters(out), c)
    }

    /// Rewrites an element of the subgroup (a word fixing coset 0).
    pub fn rewrite(&self, t: &CosetTable, w: &Word) -> Word {
        self.rewrite_from(t, 0, w).0
    }

    /// Names `<generator>_<coset>` for the Schreier generators.
    pub fn sgen_names(&self, names: &[String]) -> Vec<String> {
        self.sgens
            .iter()
            .map(|&(c, g)| format!("{}_{}", names[g], c))
            .collect()
    }
}

/// Breadth-first transversal over the positive generators in index order.
/// On a finite table positive letters reach every coset, so the result is
/// prefix closed with `transversal[0]` empty.
pub fn schreier_transversal(t: &CosetTable) -> SchreierData {
    let n = t.n_cosets();
    let gens = t.generator_count();
    let parent = bfs_order(t, true);
    let mut order: Vec<usize> = Vec::with_capacity(n);
    // Recover BFS discovery order so each parent is built before its children.
    let mut transversal: Vec<Option<Word>> = vec![None; n];
    transversal[0] = Some(Word::empty());
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        head += 1;
        for g in 0..gens {
            let d = t.act(c, Letter::pos(g));
            if transversal[d].is_none() && parent[d] == Some((c, Letter::pos(g))) {
                transversal[d] = Some(
                    transversal[c]
                        .as_ref()
                        .unwrap()
                        .concat(&Word::power_of(g, 1)),
                );
                order.push(d);
            }
        }
    }
    let transversal: Vec<Word> = transversal
        .into_iter()
        .map(|w| w.expect("positive letters reach every coset of a finite table"))
        .collect();

    let mut sgen_index = vec![None; n * gens];
    let mut sgens = Vec::new();
    for c in 0..n {
        for g in 0..gens {
            let d = t.act(c, Letter::pos(g));
            if parent[d] != Some((c, Letter::pos(g))) {
                sgen_index[c * gens + g] = Some(sgens.len());
                sgens.push((c, g));
            }
        }
    }
    SchreierData {
        transversal,
        gens,
        sgen_index,
        sgens,
    }
}

/// Unsimplified subgroup presentation: one relator per (coset, relator) pair,
/// coset-major.
pub fn subgroup_presentation_raw(
    p: &Presentation,
    t: &CosetTable,
    data: &SchreierData,
) -> Presentation {
    let mut rels = Vec::with_capacity(t.n_cosets() * p.relators().len());
    for c in 0..t.n_cosets() {
        for r in p.relators() {
            rels.push(data.rewrite_from(t, c, r).0);
        }
    }
    Presentation::from_parts(data.sgen_names(p.generator_names()), rels)
}

/// Presentation of the subgroup whose coset table is `t`, simplified.
pub fn subgroup_presentation(p: &Presentation, t: &CosetTable) -> Presentation {
    let data = schreier_transversal(t);
    let raw = subgroup_presentation_raw(p, t, &data);
    tietze_simplify_tracked(&raw, DEFAULT_BUDGET).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::{enumerate_cosets, group_order, Enumeration, EnumerationLimits};
    use crate::intlinalg::abelianization;
    use crate::presentation::parse_presentation;

    fn pres(s: &str) -> Presentation {
        parse_presentation(s).unwrap().presentation().clone()
    }

    fn table(p: &Presentation, h: &[Word]) -> CosetTable {
        match enumerate_cosets(p, h, &EnumerationLimits::default()).unwrap() {
            Enumeration::Complete(t) => t,
            Enumeration::Exhausted(_) => panic!("exhausted"),
        }
    }

    #[test]
    fn cyclic_transversal() {
        let p = pres("gens a\nrel a^6");
        let t = table(&p, &[]);
        let data = schreier_transversal(&t);
        let mut words = data.transversal.clone();
        words.sort_by_key(Word::len);
        let expected: Vec<Word> = (0..6).map(|k| Word::power_of(0, k)).collect();
        assert_eq!(words, expected);
        assert_eq!(data.sgen_count(), 1);
    }

    #[test]
    fn index_one() {
        let p = pres("gens a b\nrel a^2\nrel b^3\nrel a b a b");
        let t = CosetTable::from_rows(2, &[vec![0, 0, 0, 0]]).unwrap();
        let data = schreier_transversal(&t);
        assert_eq!(data.transversal, vec![Word::empty()]);
        assert_eq!(data.sgens, vec![(0, 0), (0, 1)]);
        let sub = subgroup_presentation_raw(&p, &t, &data);
        assert_eq!(abelianization(&sub), abelianization(&p));
    }

    #[test]
    fn kernel_of_z2_in_free_group_has_rank_three() {
        let p = pres("gens a b");
        // a, b both act as the swap on two cosets
        let t = CosetTable::from_rows(2, &[vec![1, 1, 1, 1], vec![0, 0, 0, 0]]).unwrap();
        let sub = subgroup_presentation(&p, &t);
        assert_eq!(sub.generator_count(), 3);
        assert!(sub.relators().is_empty());
    }

    #[test]
    fn index_two_in_cyclic_six() {
        let p = pres("gens a\nrel a^6");
        let t = table(&p, &[Word::power_of(0, 2)]);
        assert_eq!(t.n_cosets(), 2);
        let sub = subgroup_presentation(&p, &t);
        assert_eq!(sub.generator_count(), 1);
        assert_eq!(sub.relators(), &[Word::power_of(0, 3)]);
    }

    #[test]
    fn transversal_is_prefix_closed_and_traces_correctly() {
        let p = pres("gens x y\nrel x^6\nrel x^3 y^-2\nrel y^-1 x y x");
        let t = table(&p, &[Word::power_of(0, 2)]);
        let data = schreier_transversal(&t);
        for (c, w) in data.transversal.iter().enumerate() {
            assert_eq!(t.trace(0, w), c);
            if let Some((_, prefix)) = w.letters().split_last() {
                assert!(data
                    .transversal
                    .contains(&Word::from_letters(prefix.iter().copied())));
            }
        }
        for s in 0..data.sgen_count() {
            let w = data.sgen_word(&t, s);
            assert_eq!(t.trace(0, &w), 0);
            assert_eq!(data.rewrite(&t, &w), Word::power_of(s, 1));
        }
    }

    #[test]
    fn subgroup_orders_divide() {
        // S3 and the dicyclic group of order 12, subgroups generated by one element.
        let cases = [
            (
                "gens a b\nrel a^2\nrel b^3\nrel a b a b",
                vec![Word::power_of(0, 1)],
                6u64,
            ),
            (
                "gens a b\nrel a^2\nrel b^3\nrel a b a b",
                vec![Word::power_of(1, 1)],
                6,
            ),
            (
                "gens x y\nrel x^6\nrel x^3 y^-2\nrel y^-1 x y x",
                vec![Word::power_of(1, 1)],
                12,
            ),
            (
                "gens x y\nrel x^6\nrel x^3 y^-2\nrel y^-1 x y x",
                vec![Word::power_of(0, 2)],
                12,
            ),
        ];
        for (s, h, order) in cases {
            let p = pres(s);
            let t = table(&p, &h);
            let sub = subgroup_presentation(&p, &t);
            let sub_order = group_order(&sub, &EnumerationLimits::default())
                .finite()
                .unwrap();
            assert_eq!(sub_order * t.n_cosets() as u64, order, "{s}");
        }
    }
}
