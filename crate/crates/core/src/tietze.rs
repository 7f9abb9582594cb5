//! Length-nonincreasing Tietze transformations.
//!
//! Moves, applied until none is available or the budget runs out:
//! drop duplicate relators (up to rotation and inversion), eliminate a
//! generator that occurs once in some relator when the total relator length
//! does not grow, and shorten a relator by substituting more than half of
//! another relator.

use std::collections::HashSet;

use crate::presentation::Presentation;
use crate::word::{cyclic_reduce, Letter, Word};

pub const DEFAULT_BUDGET: usize = 10_000;

pub fn tietze_simplify(p: &Presentation, budget: usize) -> Presentation {
    tietze_simplify_tracked(p, budget).0
}

/// Simplifies and also returns, for each surviving generator, its index in
/// the input. Surviving generators are the same group elements as before.
pub fn tietze_simplify_tracked(p: &Presentation, budget: usize) -> (Presentation, Vec<usize>) {
    let n = p.generator_count();
    let mut alive = vec![true; n];
    let mut rels = normalize(p.relators().to_vec());
    let mut budget = budget;

    while budget > 0 {
        if let Some((g, image)) = best_elimination(&rels, &alive) {
            let images: Vec<Word> = (0..n)
                .map(|h| {
                    if h == g {
                        image.clone()
                    } else {
                        Word::power_of(h, 1)
                    }
                })
                .collect();
            alive[g] = false;
            rels = normalize(rels.iter().map(|r| r.substitute(&images)).collect());
            budget -= 1;
            continue;
        }
        if let Some((j, shorter)) = best_substitution(&rels) {
            rels[j] = shorter;
            rels = normalize(rels);
            budget -= 1;
            continue;
        }
        break;
    }

    let kept: Vec<usize> = (0..n).filter(|&g| alive[g]).collect();
    let mut new_index = vec![usize::MAX; n];
    for (i, &g) in kept.iter().enumerate() {
        new_index[g] = i;
    }
    let rels = rels
        .iter()
        .map(|r| {
            Word::from_letters(
                r.letters()
                    .iter()
                    .map(|l| Letter::new(new_index[l.gen], l.inverse)),
            )
        })
        .collect();
    let names = kept
        .iter()
        .map(|&g| p.generator_names()[g].clone())
        .collect();
    (Presentation::from_parts(names, rels), kept)
}

fn total(rels: &[Word]) -> usize {
    rels.iter().map(Word::len).sum()
}

fn normalize(rels: Vec<Word>) -> Vec<Word> {
    let mut seen = HashSet::new();
    rels.into_iter()
        .map(|r| cyclic_reduce(&r))
        .filter(|r| !r.is_empty() && seen.insert(r.relator_key()))
        .collect()
}

/// Cheapest generator elimination that does not increase total length.
fn best_elimination(rels: &[Word], alive: &[bool]) -> Option<(usize, Word)> {
    let current = total(rels);
    let mut best: Option<(usize, usize, Word)> = None;
    for (ri, r) in rels.iter().enumerate() {
        for g in 0..alive.len() {
            if !alive[g] || r.occurrences(g) != 1 {
                continue;
            }
            let pos = r.letters().iter().position(|l| l.gen == g).unwrap();
            // Rotate so the letter comes first: g^e u = 1.
            let rotated: Vec<Letter> = r.letters()[pos..]
                .iter()
                .chain(&r.letters()[..pos])
                .copied()
                .collect();
            let rest = Word::from_letters(rotated[1..].iter().copied());
            let image = if rotated[0].inverse {
                rest
            } else {
                rest.inverse()
            };
            let mut images: Vec<Word> = (0..alive.len()).map(|h| Word::power_of(h, 1)).collect();
            images[g] = image.clone();
            let new_total: usize = rels
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != ri)
                .map(|(_, s)| cyclic_reduce(&s.substitute(&images)).len())
                .sum();
            if new_total <= current && best.as_ref().is_none_or(|(t, _, _)| new_total < *t) {
                best = Some((new_total, g, image));
            }
        }
    }
    best.map(|(_, g, image)| (g, image))
}

/// Largest shortening of one relator by replacing a cyclic subword that
/// covers more than half of another relator (or its inverse).
fn best_substitution(rels: &[Word]) -> Option<(usize, Word)> {
    let mut best: Option<(usize, usize, Word)> = None;
    for (i, r) in rels.iter().enumerate() {
        let m = r.len();
        let forms: Vec<Vec<Letter>> = r
            .rotations()
            .chain(r.inverse().rotations().collect::<Vec<_>>())
            .map(|w| w.letters().to_vec())
            .collect();
        for (j, s) in rels.iter().enumerate() {
            if i == j || s.len() < m / 2 + 1 {
                continue;
            }
            for srot in s.rotations() {
                let sl = srot.letters();
                for q in &forms {
                    let common = sl.iter().zip(q).take_while(|(a, b)| a == b).count();
                    if 2 * common <= m {
                        continue;
                    }
                    // q = u v with u = common prefix, so u = v^-1.
                    let v = Word::from_letters(q[common..].iter().copied());
                    let tail = Word::from_letters(sl[common..].iter().copied());
                    let shorter = cyclic_reduce(&v.inverse().concat(&tail));
                    let gain = s.len() - shorter.len();
                    if shorter.len() < s.len() && best.as_ref().is_none_or(|(g, _, _)| gain > *g) {
                        best = Some((gain, j, shorter));
                    }
                }
            }
        }
    }
    best.map(|(_, j, w)| (j, w))
}
