//! Words in a finitely generated group, stored freely reduced.

use std::fmt;

/// Single letter: a generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn inv(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inverted(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// Freely reduced word over the generator alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Builds a word, cancelling adjacent inverse pairs.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut reduced: Vec<Letter> = Vec::new();
        for l in letters {
            match reduced.last() {
                Some(&last) if last.gen == l.gen && last.inverse != l.inverse => {
                    reduced.pop();
                }
                _ => reduced.push(l),
            }
        }
        Word { letters: reduced }
    }

    /// Single generator g (or its inverse with `power` = −1), raised to `power`.
    pub fn generator_power(gen: usize, power: i64) -> Self {
        let letter = if power >= 0 {
            Letter::new(gen)
        } else {
            Letter::inv(gen)
        };
        Word {
            letters: vec![letter; power.unsigned_abs() as usize],
        }
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

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.letters.iter().chain(other.letters.iter()).cloned())
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Letter order reversed without inverting (the word read backwards).
    pub fn reversed(&self) -> Word {
        Word::new(self.letters.iter().rev().cloned())
    }

    /// Commutator [u, v] = u v u⁻¹ v⁻¹.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Sum of letter exponents (image in the free abelianization, summed
    /// over all generators).
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.exponent()).sum()
    }

    /// Largest generator index appearing, plus one.
    pub fn alphabet_size(&self) -> usize {
        self.letters.iter().map(|l| l.gen + 1).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            let name = (b'a' + (l.gen as u8 % 26)) as char;
            if l.inverse {
                write!(f, "{name}'")?;
            } else {
                write!(f, "{name}")?;
            }
        }
        Ok(())
    }
}
