//! Random grammar-valid words, for property tests and fixture building.
//!
//! Letters are drawn from the inventory's spellings for the script, so every
//! generated word is NFC and made only of letters the CLS inverse can write.

use rand::seq::IndexedRandom;
use rand::{Rng, RngExt};

use crate::akshara::{self, Akshara, Consonant, VowelSpec};
use crate::cls::ClsInventory;
use crate::script::{self, CommonIndex, ScriptId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenOptions {
    pub min_aksharas: usize,
    pub max_aksharas: usize,
    /// Longest consonant cluster.
    pub max_onset: usize,
    /// Allow anusvara, visarga and candrabindu.
    pub signs: bool,
    /// Allow a virama-final last akshara.
    pub dead_final: bool,
    /// Allow a virama-final akshara directly before an independent vowel.
    /// Such words are valid but their CLS form is shared with the
    /// inherent-vowel spelling.
    pub dead_before_vowel: bool,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions {
            min_aksharas: 1,
            max_aksharas: 4,
            max_onset: 3,
            signs: true,
            dead_final: true,
            dead_before_vowel: false,
        }
    }
}

/// Letters of one script available to the generator.
#[derive(Debug, Clone)]
pub struct Alphabet {
    pub script: ScriptId,
    pub consonants: Vec<Consonant>,
    pub vowels: Vec<CommonIndex>,
    pub matras: Vec<CommonIndex>,
    pub signs: Vec<CommonIndex>,
}

impl Alphabet {
    pub fn new(inv: &ClsInventory, script: ScriptId) -> Self {
        let mut a = Alphabet {
            script,
            consonants: Vec::new(),
            vowels: Vec::new(),
            matras: Vec::new(),
            signs: Vec::new(),
        };
        for (_, r) in inv.readings(script) {
            a.consonants.extend(r.consonant);
            a.vowels.extend(r.independent);
            a.matras.extend(r.matra);
            a.signs.extend(r.sign);
        }
        a
    }

    fn onset<R: Rng + ?Sized>(&self, rng: &mut R, max: usize) -> Vec<Consonant> {
        // mostly single consonants, sometimes clusters
        let len = match rng.random_range(0..10) {
            0..=6 => 1,
            7..=8 => 2,
            _ => 3,
        }
        .min(max.max(1));
        (0..len).map(|_| *self.consonants.choose(rng).unwrap()).collect()
    }

    /// One random akshara: an independent vowel if `vowel_akshara`, else a
    /// consonant cluster whose nucleus may be virama-final when `dead_ok`.
    pub fn akshara<R: Rng + ?Sized>(&self, rng: &mut R, opts: &GenOptions, dead_ok: bool, vowel_akshara: bool) -> Akshara {
        let (onset, nucleus) = if vowel_akshara {
            (Vec::new(), VowelSpec::Independent(*self.vowels.choose(rng).unwrap()))
        } else {
            let onset = self.onset(rng, opts.max_onset);
            let nucleus = match rng.random_range(0..10) {
                0..=3 => VowelSpec::Inherent,
                9 if dead_ok => VowelSpec::NoVowel,
                _ => VowelSpec::Matra(*self.matras.choose(rng).unwrap()),
            };
            (onset, nucleus)
        };
        let mut trailing = Vec::new();
        if opts.signs && !self.signs.is_empty() && rng.random_range(0..6) == 0 {
            trailing.push(*self.signs.choose(rng).unwrap());
        }
        Akshara { onset, nucleus, trailing }
    }

    /// A random word as aksharas.
    pub fn aksharas<R: Rng + ?Sized>(&self, rng: &mut R, opts: &GenOptions) -> Vec<Akshara> {
        let n = rng.random_range(opts.min_aksharas.max(1)..=opts.max_aksharas.max(opts.min_aksharas).max(1));
        let kinds: Vec<bool> = (0..n).map(|_| rng.random_range(0..5) == 0).collect();
        (0..n)
            .map(|k| {
                let last = k + 1 == n;
                let dead_ok = if last {
                    opts.dead_final
                } else {
                    opts.dead_before_vowel && kinds[k + 1]
                };
                self.akshara(rng, opts, dead_ok, kinds[k])
            })
            .collect()
    }

    /// A random word, NFC-normalized.
    pub fn word<R: Rng + ?Sized>(&self, rng: &mut R, opts: &GenOptions) -> String {
        script::normalize(&akshara::render(&self.aksharas(rng, opts), self.script))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::akshara::segment_aksharas;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn words_parse_back_to_their_aksharas() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for script in ScriptId::ALL {
            let alpha = Alphabet::new(ClsInventory::bundled(), script);
            assert!(!alpha.consonants.is_empty() && !alpha.matras.is_empty());
            for _ in 0..300 {
                let a = alpha.aksharas(&mut rng, &GenOptions::default());
                let w = akshara::render(&a, script);
                assert_eq!(script::normalize(&w), w, "{script}: not NFC");
                assert_eq!(segment_aksharas(&w, script).unwrap().aksharas, a);
            }
        }
    }

    #[test]
    fn length_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let alpha = Alphabet::new(ClsInventory::bundled(), ScriptId::Odia);
        let opts = GenOptions {
            min_aksharas: 2,
            max_aksharas: 2,
            ..GenOptions::default()
        };
        for _ in 0..50 {
            assert_eq!(alpha.aksharas(&mut rng, &opts).len(), 2);
        }
    }
}
