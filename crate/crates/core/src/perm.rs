//! Permutations in one-line notation, words in adjacent transpositions and
//! reduced words.
//!
//! Words multiply left to right: starting from the identity one-line word,
//! the letter `s_i` swaps the entries in positions `i` and `i + 1`. Under this
//! convention `s4 s2 s3 = [13524]`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::boxes::{BoxSet, Cell};
use crate::error::{Error, Result};

/// A permutation of `{1, .., n}` stored in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line.serialize(serializer)
    }
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        if n == 0 {
            return Err(Error::Parse("empty permutation".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n {
                return Err(Error::OutOfRange { value: v, n });
            }
            if seen[v] {
                return Err(Error::NotABijection(one_line));
            }
            seen[v] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            one_line: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    /// `pi(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.one_line[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { one_line: inv }
    }

    /// Appends fixed points up to size `m` (no-op when `m <= n`).
    pub fn extended(&self, m: usize) -> Permutation {
        let mut one_line = self.one_line.clone();
        one_line.extend(self.n() + 1..=m);
        Permutation { one_line }
    }

    /// Drops trailing fixed points, keeping at least one entry.
    pub fn trimmed(&self) -> Permutation {
        let mut one_line = self.one_line.clone();
        while one_line.len() > 1 && *one_line.last().unwrap() == one_line.len() {
            one_line.pop();
        }
        Permutation { one_line }
    }

    /// Equality up to trailing fixed points.
    pub fn stably_eq(&self, other: &Permutation) -> bool {
        let m = self.n().max(other.n());
        self.extended(m) == other.extended(m)
    }

    /// Rank of the upper-left `a x b` block of the permutation matrix, whose
    /// `(i, j)` entry is 1 exactly when `pi(j) = i`.
    pub fn rank(&self, a: usize, b: usize) -> Result<usize> {
        let n = self.n();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::IndexOutOfRange { row: a, col: b, n });
        }
        Ok(self.one_line[..b].iter().filter(|&&v| v <= a).count())
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let p = &self.one_line;
        (0..p.len())
            .map(|i| p[i + 1..].iter().filter(|&&v| v < p[i]).count())
            .sum()
    }

    /// Rothe diagram `{(pi(j), i) : i < j, pi(i) > pi(j)}`; rows are values
    /// and columns are positions.
    pub fn diagram(&self) -> BoxSet {
        let p = &self.one_line;
        let mut d = BoxSet::new(self.n());
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    d.insert(Cell::new(p[j], i + 1));
                }
            }
        }
        d
    }

    pub fn classify(&self) -> Classification {
        let d = self.diagram();
        Classification {
            is_dominant: d.is_partition_at(Cell::new(1, 1)),
            is_one_dominant: self.at(1) == 1 && d.is_partition_at(Cell::new(2, 2)),
        }
    }

    /// All permutations of size `n` in lexicographic order.
    pub fn all(n: usize) -> LexPermutations {
        LexPermutations {
            next: (n > 0).then(|| (1..=n).collect()),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            write!(f, "[")?;
            for v in &self.one_line {
                write!(f, "{v}")?;
            }
            write!(f, "]")
        } else {
            let parts: Vec<String> = self.one_line.iter().map(|v| v.to_string()).collect();
            write!(f, "[{}]", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `[25413]`, `[2,5,4,1,3]`, `2 5 4 1 3` and similar. Without any
    /// separator each digit is one entry.
    fn from_str(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .trim_start_matches(['[', '('])
            .trim_end_matches([']', ')'])
            .trim();
        if inner.is_empty() {
            return Err(Error::Parse(text.to_string()));
        }
        let has_sep = inner.contains([',', ' ', ';']);
        let entries: Vec<usize> = if has_sep {
            inner
                .split([',', ' ', ';'])
                .filter(|t| !t.is_empty())
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(text.to_string()))?
        } else {
            inner
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse(text.to_string()))?
        };
        Permutation::new(entries)
    }
}

/// Parses one-line notation.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    text.parse()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_dominant: bool,
    pub is_one_dominant: bool,
}

/// Iterator over permutations in lexicographic order.
pub struct LexPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if let Some(i) = (0..succ.len().saturating_sub(1)).rev().find(|&i| succ[i] < succ[i + 1]) {
            let j = (i + 1..succ.len()).rev().find(|&j| succ[j] > succ[i]).unwrap();
            succ.swap(i, j);
            succ[i + 1..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation { one_line: current })
    }
}

/// A word in the adjacent transpositions `s_1 .. s_{m-1}`; letter `0` is the
/// blank `-`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<usize>,
    ambient_rank: usize,
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.letters.serialize(serializer)
    }
}

impl Word {
    pub fn new(letters: Vec<usize>, ambient_rank: usize) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l != 0 && l + 1 > ambient_rank) {
            return Err(Error::LetterOutOfRange {
                letter: bad,
                rank: ambient_rank,
            });
        }
        Ok(Word {
            letters,
            ambient_rank,
        })
    }

    /// Smallest ambient rank that accommodates every letter.
    pub fn minimal(letters: Vec<usize>) -> Self {
        let ambient_rank = letters.iter().max().map_or(1, |&m| m + 1);
        Word {
            letters,
            ambient_rank,
        }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Non-blank letter count.
    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&l| l != 0).count()
    }

    /// The subword keeping the given 0-based positions and blanking the rest.
    pub fn keep(&self, positions: &[usize]) -> Word {
        let mut letters = vec![0; self.letters.len()];
        for &p in positions {
            letters[p] = self.letters[p];
        }
        Word {
            letters,
            ambient_rank: self.ambient_rank,
        }
    }

    /// `Q \ J`: blanks where `J` has a letter, `Q`'s letter where `J` is blank.
    pub fn complement_of(&self, sub: &Word) -> Word {
        let letters = self
            .letters
            .iter()
            .zip(&sub.letters)
            .map(|(&q, &j)| if j == 0 { q } else { 0 })
            .collect();
        Word {
            letters,
            ambient_rank: self.ambient_rank,
        }
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word {
            letters,
            ambient_rank: self.ambient_rank,
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            letters,
            ambient_rank: self.ambient_rank.max(other.ambient_rank),
        }
    }
}

/// Left-to-right product of the letters, blanks acting as the identity.
pub fn word_product(word: &Word) -> Permutation {
    let mut w: Vec<usize> = (1..=word.ambient_rank.max(1)).collect();
    for &s in &word.letters {
        if s != 0 {
            w.swap(s - 1, s);
        }
    }
    Permutation { one_line: w }
}

/// All reduced words of `pi`, each with ambient rank `n`, sorted
/// lexicographically. Memoised recursion on the last letter (a descent).
pub fn reduced_words(pi: &Permutation, max_n: usize) -> Result<Vec<Word>> {
    if pi.n() > max_n {
        return Err(Error::SizeLimitExceeded { n: pi.n(), max: max_n });
    }
    let mut memo: HashMap<Vec<usize>, Vec<Vec<usize>>> = HashMap::new();
    let mut words = reduced_words_rec(pi.one_line.clone(), &mut memo);
    words.sort();
    Ok(words
        .into_iter()
        .map(|letters| Word {
            letters,
            ambient_rank: pi.n(),
        })
        .collect())
}

fn reduced_words_rec(
    w: Vec<usize>,
    memo: &mut HashMap<Vec<usize>, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(hit) = memo.get(&w) {
        return hit.clone();
    }
    let mut out = Vec::new();
    let mut any_descent = false;
    for i in 0..w.len().saturating_sub(1) {
        if w[i] > w[i + 1] {
            any_descent = true;
            let mut shorter = w.clone();
            shorter.swap(i, i + 1);
            for mut prefix in reduced_words_rec(shorter, memo) {
                prefix.push(i + 1);
                out.push(prefix);
            }
        }
    }
    if !any_descent {
        out.push(Vec::new());
    }
    memo.insert(w, out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parses_compact_and_delimited() {
        assert_eq!(p("[25413]").one_line(), &[2, 5, 4, 1, 3]);
        assert_eq!(p("[2,5,4,1,3]"), p("[25413]"));
        assert_eq!(p("[1]"), Permutation::identity(1));
        assert_eq!(
            "[2,2,1]".parse::<Permutation>(),
            Err(Error::NotABijection(vec![2, 2, 1]))
        );
        assert_eq!(
            "[4,1,2]".parse::<Permutation>(),
            Err(Error::OutOfRange { value: 4, n: 3 })
        );
        assert!(matches!("[a,b]".parse::<Permutation>(), Err(Error::Parse(_))));
    }

    /// Counts ones in the top-left block of the permutation matrix directly.
    fn rank_by_matrix(pi: &Permutation, a: usize, b: usize) -> usize {
        let n = pi.n();
        let mut m = vec![vec![0u8; n + 1]; n + 1];
        for j in 1..=n {
            m[pi.at(j)][j] = 1;
        }
        (1..=a).map(|i| (1..=b).filter(|&j| m[i][j] == 1).count()).sum()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(p("[14523]").rank(3, 3).unwrap(), 1);
        assert_eq!(rank_by_matrix(&p("[14523]"), 3, 3), 1);
        assert_eq!(p("[25413]").rank(1, 3).unwrap(), 0);
        assert_eq!(rank_by_matrix(&p("[25413]"), 1, 3), 0);
        let id = Permutation::identity(5);
        for a in 1..=5 {
            for b in 1..=5 {
                assert_eq!(id.rank(a, b).unwrap(), a.min(b));
            }
        }
        assert!(matches!(id.rank(0, 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(id.rank(6, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn rank_matches_matrix_count_on_s4() {
        for pi in Permutation::all(4) {
            for a in 1..=4 {
                for b in 1..=4 {
                    assert_eq!(pi.rank(a, b).unwrap(), rank_by_matrix(&pi, a, b));
                }
            }
        }
    }

    #[test]
    fn lengths() {
        assert_eq!(p("[25413]").length(), 6);
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(p("[14523]").length(), 4);
    }

    #[test]
    fn product_convention() {
        let w = Word::new(vec![4, 2, 3], 6).unwrap();
        assert_eq!(word_product(&w), p("[135246]"));
        assert!(word_product(&w).stably_eq(&p("[13524]")));
        assert!(word_product(&Word::new(vec![], 3).unwrap()).is_identity());
        assert!(word_product(&Word::new(vec![1, 1], 3).unwrap()).is_identity());
        assert!(matches!(
            Word::new(vec![3], 3),
            Err(Error::LetterOutOfRange { letter: 3, rank: 3 })
        ));
    }

    #[test]
    fn subword_complement() {
        let q = Word::new(vec![1, 2, 3, 1, 2], 4).unwrap();
        let j = Word::new(vec![1, 0, 3, 0, 2], 4).unwrap();
        assert_eq!(q.complement_of(&j).letters(), &[0, 2, 0, 1, 0]);
        assert_eq!(q.keep(&[0, 2, 4]), j);
    }

    #[test]
    fn reduced_word_examples() {
        let rw = reduced_words(&p("[321]"), 7).unwrap();
        let letters: Vec<&[usize]> = rw.iter().map(|w| w.letters()).collect();
        assert_eq!(letters, vec![&[1, 2, 1][..], &[2, 1, 2][..]]);
        let id = reduced_words(&Permutation::identity(3), 7).unwrap();
        assert_eq!(id.len(), 1);
        assert!(id[0].is_empty());
        let t = reduced_words(&p("[213]"), 7).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].letters(), &[1]);
        assert!(matches!(
            reduced_words(&Permutation::identity(8), 7),
            Err(Error::SizeLimitExceeded { n: 8, max: 7 })
        ));
    }

    /// Exhaustive search over all words of length `len` in `s_1..s_{n-1}`.
    fn words_of_length(n: usize, len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (1..n).map(move |s| {
                        let mut v = w.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn reduced_words_match_exhaustive_search_s4() {
        for pi in Permutation::all(4) {
            let l = pi.length();
            let mut brute: Vec<Vec<usize>> = words_of_length(4, l)
                .into_iter()
                .filter(|w| word_product(&Word::new(w.clone(), 4).unwrap()) == pi)
                .collect();
            brute.sort();
            let fast: Vec<Vec<usize>> = reduced_words(&pi, 7)
                .unwrap()
                .into_iter()
                .map(|w| w.letters().to_vec())
                .collect();
            assert_eq!(fast, brute, "{pi}");
            // nothing shorter reaches pi
            for shorter in 0..l {
                assert!(words_of_length(4, shorter)
                    .into_iter()
                    .all(|w| word_product(&Word::new(w, 4).unwrap()) != pi));
            }
        }
    }

    #[test]
    fn classification() {
        assert!(p("[1432]").classify().is_one_dominant);
        assert!(Permutation::identity(4).classify().is_one_dominant);
        assert!(!p("[25413]").classify().is_one_dominant);
        assert!(p("[321]").classify().is_dominant);
        assert!(!p("[132]").classify().is_dominant);
    }

    #[test]
    fn lexicographic_enumeration() {
        let all: Vec<String> = Permutation::all(3).map(|p| p.to_string()).collect();
        assert_eq!(all, ["[123]", "[132]", "[213]", "[231]", "[312]", "[321]"]);
        assert_eq!(Permutation::all(5).count(), 120);
    }
}
