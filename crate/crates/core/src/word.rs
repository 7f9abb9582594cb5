//! Words in a free group over a numbered generator alphabet.

use std::fmt;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn pos(gen: usize) -> Self {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Column of this letter in a coset table: `2 * gen` for the generator,
    /// `2 * gen + 1` for its inverse.
    pub fn column(self) -> usize {
        2 * self.gen + self.inverse as usize
    }

    pub fn from_column(col: usize) -> Self {
        Letter {
            gen: col / 2,
            inverse: col % 2 == 1,
        }
    }
}

/// A freely reduced word. Every constructor reduces, so two `Word`s are equal
/// exactly when they represent the same element of the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// Builds a word from arbitrary letters, freely reducing them.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    /// `gen^exp` for a single generator; negative exponents give inverse letters.
    pub fn power_of(gen: usize, exp: i64) -> Self {
        let l = Letter::new(gen, exp < 0);
        Word {
            letters: vec![l; exp.unsigned_abs() as usize],
        }
    }

    /// Builds from `(generator, exponent)` syllables, e.g. `[(0, 3), (1, -2)]` is `a^3 b^-2`.
    pub fn from_syllables(syllables: &[(usize, i64)]) -> Self {
        Word::from_letters(syllables.iter().flat_map(|&(g, e)| {
            std::iter::repeat_n(Letter::new(g, e < 0), e.unsigned_abs() as usize)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    pub fn pow(&self, n: u32) -> Word {
        (0..n).fold(Word::empty(), |acc, _| acc.concat(self))
    }

    /// Shortest cyclic conjugate obtained by stripping mutually inverse ends.
    pub fn cyclically_reduced(&self) -> Word {
        cyclic_reduce(self)
    }

    /// Exponent sum of generator `gen`.
    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| l.sign())
            .sum()
    }

    /// Number of letters equal to `gen` or its inverse.
    pub fn occurrences(&self, gen: usize) -> usize {
        self.letters.iter().filter(|l| l.gen == gen).count()
    }

    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Replaces every occurrence of each generator by a word. `images[g]` is
    /// the image of generator `g`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut out = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            let img = &images[l.gen];
            if l.inverse {
                for &m in img.letters.iter().rev() {
                    push_reduced(&mut out, m.inv());
                }
            } else {
                for &m in &img.letters {
                    push_reduced(&mut out, m);
                }
            }
        }
        Word { letters: out }
    }

    /// All cyclic rotations of a cyclically reduced word.
    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        let n = self.letters.len();
        (0..n.max(1)).map(move |i| {
            let mut v = Vec::with_capacity(n);
            v.extend_from_slice(&self.letters[i.min(n)..]);
            v.extend_from_slice(&self.letters[..i.min(n)]);
            Word { letters: v }
        })
    }

    /// Canonical representative of the relator class of this word: the least
    /// rotation of the word or its inverse after cyclic reduction.
    pub fn relator_key(&self) -> Word {
        let r = cyclic_reduce(self);
        let inv = r.inverse();
        r.rotations()
            .chain(inv.rotations().collect::<Vec<_>>())
            .min()
            .unwrap_or_default()
    }

    /// Renders the word with the given generator names, grouping runs into powers.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }

    /// `(generator, exponent)` runs of the word.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((g, e)) if *g == l.gen && (*e < 0) == l.inverse => *e += l.sign(),
                _ => out.push((l.gen, l.sign())),
            }
        }
        out
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inv()) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// Free reduction. `Word` values are always reduced, so this re-reduces the
/// raw letters of `w` and is the identity on any constructed word.
pub fn free_reduce(w: &Word) -> Word {
    Word::from_letters(w.letters.iter().copied())
}

/// Strips matching inverse pairs from the two ends of a freely reduced word.
pub fn cyclic_reduce(w: &Word) -> Word {
    let l = &w.letters;
    let (mut i, mut j) = (0, l.len());
    while j >= i + 2 && l[i] == l[j - 1].inv() {
        i += 1;
        j -= 1;
    }
    Word {
        letters: l[i..j].to_vec(),
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, e)) in self.word.syllables().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let name = &self.names[g];
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}
