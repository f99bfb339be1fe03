//! Braid-move closures of words in the simple generators.
//!
//! By Tits' solution of the word problem, two reduced words represent the same
//! element exactly when one can be reached from the other by braid moves
//! (replacing an alternating factor `sts…` of length `m(s,t)` by `tst…`), and a
//! word is reduced exactly when no word in its braid closure contains a factor
//! `ss`.

use std::collections::{HashSet, VecDeque};

/// Braid moves available for a Coxeter matrix.
#[derive(Debug, Clone)]
pub struct BraidRules {
    /// `(s, t, m)` for every ordered pair `s != t` with finite `m(s, t)`.
    pairs: Vec<(u8, u8, usize)>,
}

impl BraidRules {
    /// `matrix[s][t]` is `m(s, t)`, with `0` for `∞`.
    pub fn new(matrix: &[Vec<u32>]) -> Self {
        let mut pairs = Vec::new();
        for (s, row) in matrix.iter().enumerate() {
            for (t, &m) in row.iter().enumerate() {
                if s != t && m != 0 {
                    pairs.push((s as u8, t as u8, m as usize));
                }
            }
        }
        BraidRules { pairs }
    }

    /// Words reachable from `word` by a single braid move.
    pub fn neighbors<'a>(&'a self, word: &'a [u8]) -> impl Iterator<Item = Vec<u8>> + 'a {
        self.pairs.iter().flat_map(move |&(s, t, m)| {
            let len = word.len();
            (0..len.saturating_sub(m - 1)).filter_map(move |start| {
                let window = &word[start..start + m];
                let alternating = window
                    .iter()
                    .enumerate()
                    .all(|(k, &g)| g == if k % 2 == 0 { s } else { t });
                alternating.then(|| {
                    let mut next = word.to_vec();
                    for (k, g) in next[start..start + m].iter_mut().enumerate() {
                        *g = if k % 2 == 0 { t } else { s };
                    }
                    next
                })
            })
        })
    }

    /// All words braid-equivalent to `word`, including `word` itself.
    pub fn closure(&self, word: &[u8]) -> HashSet<Vec<u8>> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(word.to_vec());
        queue.push_back(word.to_vec());
        while let Some(current) = queue.pop_front() {
            for next in self.neighbors(&current) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    /// Tits' criterion: reduced iff no braid-equivalent word has a factor `ss`.
    pub fn is_reduced(&self, word: &[u8]) -> bool {
        self.closure(word)
            .iter()
            .all(|w| w.windows(2).all(|pair| pair[0] != pair[1]))
    }

    /// Lexicographically least word in the braid closure.
    pub fn canonical(&self, word: &[u8]) -> Vec<u8> {
        self.closure(word)
            .into_iter()
            .min()
            .expect("closure contains the word itself")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn type_a3() -> BraidRules {
        BraidRules::new(&[vec![1, 3, 2], vec![3, 1, 3], vec![2, 3, 1]])
    }

    #[test]
    fn longest_word_of_a2_has_two_reduced_words() {
        let rules = BraidRules::new(&[vec![1, 3], vec![3, 1]]);
        let closure = rules.closure(&[0, 1, 0]);
        assert_eq!(closure.len(), 2);
        assert!(closure.contains(&vec![1, 0, 1]));
    }

    #[test]
    fn longest_word_of_a3_has_sixteen_reduced_words() {
        // Stanley's count for the reversal in S_4.
        assert_eq!(type_a3().closure(&[0, 1, 0, 2, 1, 0]).len(), 16);
    }

    #[test]
    fn reducedness() {
        let rules = type_a3();
        assert!(rules.is_reduced(&[0, 1, 0]));
        assert!(!rules.is_reduced(&[0, 1, 0, 1]));
        assert!(!rules.is_reduced(&[0, 2, 0]));
        assert!(rules.is_reduced(&[]));
    }

    #[test]
    fn canonical_is_lex_least() {
        let rules = type_a3();
        assert_eq!(rules.canonical(&[2, 0]), vec![0, 2]);
        assert_eq!(rules.canonical(&[1, 0, 1]), vec![0, 1, 0]);
    }

    #[test]
    fn infinite_order_has_no_move() {
        let rules = BraidRules::new(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(rules.closure(&[0, 1, 0, 1, 0]).len(), 1);
    }

    #[test]
    fn dihedral_six() {
        let rules = BraidRules::new(&[vec![1, 6], vec![6, 1]]);
        let closure = rules.closure(&[0, 1, 0, 1, 0, 1]);
        assert_eq!(closure.len(), 2);
        assert!(closure.contains(&vec![1, 0, 1, 0, 1, 0]));
    }
}
