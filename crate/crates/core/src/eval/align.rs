//! Levenshtein alignment with unit costs.

/// One step of an alignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EditOp {
    Match { r: usize, h: usize },
    Substitute { r: usize, h: usize },
    Delete { r: usize },
    Insert { h: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Alignment {
    pub ops: Vec<EditOp>,
    pub substitutions: usize,
    pub deletions: usize,
    pub insertions: usize,
    pub matches: usize,
}

impl Alignment {
    /// S + D + I.
    pub fn cost(&self) -> usize {
        self.substitutions + self.deletions + self.insertions
    }

    pub fn ref_len(&self) -> usize {
        self.substitutions + self.deletions + self.matches
    }

    pub fn hyp_len(&self) -> usize {
        self.substitutions + self.insertions + self.matches
    }
}

/// Minimal-cost alignment of `hyp` against `reference`.
///
/// On the backtrace, ties prefer match, then substitution, then deletion,
/// then insertion.
pub fn align<T: PartialEq>(reference: &[T], hyp: &[T]) -> Alignment {
    let (n, m) = (reference.len(), hyp.len());
    let w = m + 1;
    let mut d = vec![0u32; (n + 1) * w];
    for (j, cell) in d[..w].iter_mut().enumerate() {
        *cell = j as u32;
    }
    for i in 1..=n {
        d[i * w] = i as u32;
        for j in 1..=m {
            let diag = d[(i - 1) * w + j - 1] + (reference[i - 1] != hyp[j - 1]) as u32;
            let del = d[(i - 1) * w + j] + 1;
            let ins = d[i * w + j - 1] + 1;
            d[i * w + j] = diag.min(del).min(ins);
        }
    }

    let mut a = Alignment::default();
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let here = d[i * w + j];
        if i > 0 && j > 0 {
            let diag = d[(i - 1) * w + j - 1];
            let same = reference[i - 1] == hyp[j - 1];
            if same && diag == here {
                a.ops.push(EditOp::Match { r: i - 1, h: j - 1 });
                a.matches += 1;
                i -= 1;
                j -= 1;
                continue;
            }
            if !same && diag + 1 == here {
                a.ops.push(EditOp::Substitute { r: i - 1, h: j - 1 });
                a.substitutions += 1;
                i -= 1;
                j -= 1;
                continue;
            }
        }
        if i > 0 && d[(i - 1) * w + j] + 1 == here {
            a.ops.push(EditOp::Delete { r: i - 1 });
            a.deletions += 1;
            i -= 1;
        } else {
            a.ops.push(EditOp::Insert { h: j - 1 });
            a.insertions += 1;
            j -= 1;
        }
    }
    a.ops.reverse();
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity() {
        let a = align(&["a", "b", "c"], &["a", "b", "c"]);
        assert_eq!((a.substitutions, a.deletions, a.insertions, a.matches), (0, 0, 0, 3));
    }

    #[test]
    fn one_substitution() {
        let a = align(&["a", "b", "c"], &["a", "x", "c"]);
        assert_eq!((a.substitutions, a.deletions, a.insertions), (1, 0, 0));
        assert_eq!(a.ops[1], EditOp::Substitute { r: 1, h: 1 });
    }

    #[test]
    fn insertion_only() {
        let a = align::<&str>(&[], &["a"]);
        assert_eq!(a.insertions, 1);
        assert_eq!(a.ops, vec![EditOp::Insert { h: 0 }]);
        assert_eq!(align::<&str>(&[], &[]), Alignment::default());
    }

    #[test]
    fn tie_break_prefers_substitution_over_indels() {
        // "a" vs "x y z": one substitution and two insertions
        let a = align(&["a"], &["x", "y", "z"]);
        assert_eq!((a.substitutions, a.insertions), (1, 2));
        // backtrace runs from the end, so the substitution lands on the last hyp token
        assert_eq!(
            a.ops,
            vec![EditOp::Insert { h: 0 }, EditOp::Insert { h: 1 }, EditOp::Substitute { r: 0, h: 2 }]
        );
        let a = align(&["a", "b"], &["b"]);
        assert_eq!(a.ops, vec![EditOp::Delete { r: 0 }, EditOp::Match { r: 1, h: 0 }]);
    }

    proptest! {
        #[test]
        fn count_identities(r in prop::collection::vec(0u8..4, 0..12), h in prop::collection::vec(0u8..4, 0..12)) {
            let a = align(&r, &h);
            prop_assert_eq!(a.ref_len(), r.len());
            prop_assert_eq!(a.hyp_len(), h.len());
            prop_assert_eq!(a.ops.len(), a.matches + a.cost());
            prop_assert!(a.cost() >= r.len().abs_diff(h.len()));
            prop_assert!(a.cost() <= r.len().max(h.len()));
        }

        #[test]
        fn self_alignment_is_free(r in prop::collection::vec(0u8..4, 0..12)) {
            prop_assert_eq!(align(&r, &r).cost(), 0);
        }
    }
}
