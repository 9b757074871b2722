//! The hyperoctahedral group `B_n` as signed permutations.
//!
//! An element is stored by its short window `w_1 ... w_n`; the long window
//! `w_{-n} ... w_{-1} w_1 ... w_n` is derived on demand using
//! `w_{-i} = -w_i`.
//!
//! Products use the letters-first convention `(u v)(j) = v(u(j))`, so that
//! applying the generators of a word left to right to the positions of the
//! identity reproduces the one-line notation of the word's product. Right
//! multiplication by `s_i` therefore swaps the letters `i` and `i + 1`
//! (and `-i`, `-(i + 1)`) wherever they sit, and right multiplication by
//! `s_0` swaps the letters `1` and `-1`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported rank. Letters are stored as `i8`.
pub const MAX_RANK: usize = 64;

/// An element of `B_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    window: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Result<Self> {
        check_rank(n)?;
        Ok(Self::identity_unchecked(n))
    }

    pub(crate) fn identity_unchecked(n: usize) -> Self {
        Self { window: (1..=n as i8).collect() }
    }

    /// The Coxeter generator `s_i`: `s_0` negates the letter in position 1,
    /// `s_i` for `i >= 1` swaps positions `i` and `i + 1`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        check_rank(n)?;
        if i >= n {
            return Err(Error::GeneratorOutOfRange { index: i, rank: n });
        }
        let mut w = Self::identity_unchecked(n);
        if i == 0 {
            w.window[0] = -1;
        } else {
            w.window.swap(i - 1, i);
        }
        Ok(w)
    }

    /// Builds an element from its short window, checking that the absolute
    /// values are exactly `1..=n`.
    pub fn from_window<T: Copy + Into<i64>>(window: &[T]) -> Result<Self> {
        let n = window.len();
        check_rank(n)?;
        let mut seen = vec![false; n + 1];
        let mut out = Vec::with_capacity(n);
        for &x in window {
            let x: i64 = x.into();
            let a = x.unsigned_abs() as usize;
            if x == 0 || a > n || seen[a] {
                return Err(Error::NotSignedPermutation(format!(
                    "{:?}",
                    window.iter().map(|&t| t.into()).collect::<Vec<i64>>()
                )));
            }
            seen[a] = true;
            out.push(x as i8);
        }
        Ok(Self { window: out })
    }

    pub(crate) fn from_window_unchecked(window: Vec<i8>) -> Self {
        Self { window }
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    /// The short window `w_1 ... w_n`.
    pub fn window(&self) -> &[i8] {
        &self.window
    }

    /// `w_i` for a signed position `i` in `[-n, n] \ {0}`.
    pub fn at(&self, i: i32) -> i32 {
        debug_assert!(i != 0 && i.unsigned_abs() as usize <= self.rank());
        let x = self.window[i.unsigned_abs() as usize - 1] as i32;
        if i < 0 {
            -x
        } else {
            x
        }
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(k, &x)| x as usize == k + 1)
    }

    /// `self · other`, letters first: `(self · other)(j) = other(self(j))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: other.rank() });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let window = self.window.iter().map(|&x| other.at(x as i32) as i8).collect();
        Self { window }
    }

    /// Entry `i` of the inverse is the signed position of the letter `i`.
    pub fn inverse(&self) -> Self {
        let mut window = vec![0i8; self.rank()];
        for (pos, &x) in self.window.iter().enumerate() {
            let p = pos as i8 + 1;
            window[x.unsigned_abs() as usize - 1] = if x < 0 { -p } else { p };
        }
        Self { window }
    }

    /// `w_{-n} ... w_{-1} w_1 ... w_n`.
    pub fn long_one_line(&self) -> Vec<i32> {
        let neg = self.window.iter().rev().map(|&x| -(x as i32));
        neg.chain(self.window.iter().map(|&x| x as i32)).collect()
    }

    /// Inversions of the short window plus the absolute values of its
    /// negative letters.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let mut len = 0;
        for i in 0..w.len() {
            if w[i] < 0 {
                len += w[i].unsigned_abs() as usize;
            }
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    len += 1;
                }
            }
        }
        len
    }

    /// Counts letter pairs `(i, j)` with `|i| <= j` where `j` appears before
    /// `i` in the long one-line notation.
    pub fn length_via_long(&self) -> usize {
        let long = self.long_one_line();
        let mut len = 0;
        for (p, &later) in long.iter().enumerate() {
            for &earlier in &long[..p] {
                // `earlier` plays j, `later` plays i
                if PairRule::AbsLe.admits(later, earlier) {
                    len += 1;
                }
            }
        }
        len
    }

    /// Whether `self · s_i < self`.
    pub fn is_right_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        if i == 0 {
            inv.at(-1) > inv.at(1)
        } else {
            inv.at(i as i32) > inv.at(i as i32 + 1)
        }
    }

    /// Whether `s_i · self < self`.
    pub fn is_left_descent(&self, i: usize) -> bool {
        if i == 0 {
            self.window[0] < 0
        } else {
            self.window[i - 1] > self.window[i]
        }
    }

    /// Right multiplication by `s_i`, swapping letters.
    pub fn mul_generator(&self, i: usize) -> Self {
        let window = self
            .window
            .iter()
            .map(|&x| {
                let a = x.unsigned_abs() as usize;
                let s = x.signum();
                if i == 0 {
                    if a == 1 {
                        -x
                    } else {
                        x
                    }
                } else if a == i {
                    s * (i as i8 + 1)
                } else if a == i + 1 {
                    s * i as i8
                } else {
                    x
                }
            })
            .collect();
        Self { window }
    }

    /// Left multiplication by `s_i`, acting on positions.
    pub fn generator_mul(&self, i: usize) -> Self {
        let mut window = self.window.clone();
        if i == 0 {
            window[0] = -window[0];
        } else {
            window.swap(i - 1, i);
        }
        Self { window }
    }

    /// A reduced word, found by repeatedly stripping a right descent.
    /// Composing the generators in order gives back `self`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        'outer: while !w.is_identity() {
            for i in 0..w.rank() {
                if w.is_right_descent(i) {
                    w = w.mul_generator(i);
                    word.push(i);
                    continue 'outer;
                }
            }
            unreachable!("non-identity element without a right descent");
        }
        word.reverse();
        word
    }

    /// Product of generators, left to right.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(n)?;
        for &i in word {
            if i >= n {
                return Err(Error::GeneratorOutOfRange { index: i, rank: n });
            }
            w = w.mul_generator(i);
        }
        Ok(w)
    }

    /// Whether the long one-line notation avoids both 3412 and 4231.
    pub fn avoids_3412_4231(&self) -> bool {
        let long = self.long_one_line();
        !matches_pattern(&long, &Pattern::p3412()) && !matches_pattern(&long, &Pattern::p4231())
    }

    /// All `2^n n!` elements of `B_n`, in no particular order.
    pub fn all(n: usize) -> Result<Vec<Self>> {
        check_rank(n)?;
        let mut out = Vec::new();
        let mut perm: Vec<i8> = (1..=n as i8).collect();
        permute(&mut perm, 0, &mut |p| {
            for signs in 0u64..(1 << n) {
                let window = p.iter().enumerate().map(|(k, &x)| if signs >> k & 1 == 1 { -x } else { x }).collect();
                out.push(Self { window });
            }
        });
        Ok(out)
    }
}

fn permute(v: &mut Vec<i8>, k: usize, f: &mut impl FnMut(&[i8])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

pub(crate) fn check_rank(n: usize) -> Result<()> {
    if n == 0 || n > MAX_RANK {
        Err(Error::InvalidRank { rank: n, max: MAX_RANK })
    } else {
        Ok(())
    }
}

impl Mul for &SignedPermutation {
    type Output = SignedPermutation;

    /// Panics on rank mismatch; use [`SignedPermutation::compose`] to get an
    /// error instead.
    fn mul(self, rhs: &SignedPermutation) -> SignedPermutation {
        self.compose(rhs).expect("rank mismatch in product")
    }
}

/// Which index pairs `(i, j)` of the long notation take part in inversion
/// counts. Both readings occur in the literature on these statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairRule {
    /// `|i| <= j`, `i != j`; this is the rule under which pair counts
    /// equal Coxeter length.
    AbsLe,
    /// `|i| < j`.
    AbsLt,
}

impl PairRule {
    pub fn admits(self, i: i32, j: i32) -> bool {
        match self {
            PairRule::AbsLe => i.abs() <= j && i != j,
            PairRule::AbsLt => i.abs() < j,
        }
    }
}

/// A word with pairwise distinct letters, compared by relative order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    letters: Vec<i32>,
}

impl Pattern {
    pub fn p3412() -> Self {
        Self { letters: vec![3, 4, 1, 2] }
    }

    pub fn p4231() -> Self {
        Self { letters: vec![4, 2, 3, 1] }
    }

    pub fn new(letters: Vec<i32>) -> Result<Self> {
        for (k, a) in letters.iter().enumerate() {
            if letters[k + 1..].contains(a) {
                return Err(Error::RepeatedPatternLetter);
            }
        }
        Ok(Self { letters })
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }
}

/// True iff some subword of `word` is order-isomorphic to `p`.
///
/// Brute force over index subsets, which is plenty for patterns of length
/// four in words of length `2n`.
pub fn matches_pattern(word: &[i32], p: &Pattern) -> bool {
    let letters = &p.letters;
    let k = letters.len();
    if k == 0 {
        return true;
    }
    if k > word.len() {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let order_iso = (0..k).all(|h| (h + 1..k).all(|j| (word[idx[h]] < word[idx[j]]) == (letters[h] < letters[j])));
        if order_iso {
            return true;
        }
        // next k-subset in lexicographic order
        let mut t = k;
        loop {
            if t == 0 {
                return false;
            }
            t -= 1;
            if idx[t] < word.len() - k + t {
                break;
            }
        }
        idx[t] += 1;
        for u in t + 1..k {
            idx[u] = idx[u - 1] + 1;
        }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.window.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Parses whitespace-separated letters (`"-2 1 3 4"`). A single token
/// without spaces is read one digit per letter (`"3-12"`), which is only
/// unambiguous below rank 10.
impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let letters: Vec<i64> = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|tok| {
                    tok.parse::<i64>().map_err(|_| Error::Parse {
                        pos: tok.as_ptr() as usize - s.as_ptr() as usize,
                        msg: format!("bad letter {tok:?}"),
                    })
                })
                .collect::<Result<_>>()?
        } else {
            let mut out = Vec::new();
            let mut neg = false;
            for (pos, c) in s.char_indices() {
                match c {
                    '-' if !neg => neg = true,
                    '0'..='9' => {
                        let d = c as i64 - '0' as i64;
                        out.push(if neg { -d } else { d });
                        neg = false;
                    }
                    _ => return Err(Error::Parse { pos, msg: format!("unexpected {c:?}") }),
                }
            }
            if neg {
                return Err(Error::Parse { pos: s.len(), msg: "dangling '-'".into() });
            }
            out
        };
        if letters.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty signed permutation".into() });
        }
        Self::from_window(&letters)
    }
}
