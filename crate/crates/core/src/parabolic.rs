//! Bruhat order, reversals and the interval parabolic subgroups `W_J`.
//!
//! Every parabolic subgroup used in this crate is generated by the set
//! `J_[a,b]` attached to an interval `[a, b]` of `[-n, n] \ {0}`:
//! `{s_0, ..., s_(b-1)}` when `a = -b`, `{s_a, ..., s_(b-1)}` when
//! `0 < a < b`, and nothing when `a = b`. Cosets `w W_J` are keyed by their
//! minimal representative.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{check_rank, SignedPermutation};

/// An interval `[a, b]` of letters in `[-n, n] \ {0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    a: i32,
    b: i32,
    n: usize,
}

/// The three shapes an interval can take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalKind {
    /// `a = b`: the trivial reversal.
    Trivial,
    /// `a = -b`, `b > 0`: one self-reflected star.
    Symmetric,
    /// `0 < a < b`: an upper star and its lower reflection.
    Positive,
}

impl Interval {
    pub fn new(a: i32, b: i32, n: usize) -> Result<Self> {
        check_rank(n)?;
        let bad = || Error::InvalidInterval { a, b, rank: n };
        let fits = |x: i32| x != 0 && x.unsigned_abs() as usize <= n;
        let ok = if a == b {
            fits(b)
        } else if a == -b {
            b > 0 && fits(b)
        } else {
            0 < a && a < b && fits(b)
        };
        if ok {
            Ok(Self { a, b, n })
        } else {
            Err(bad())
        }
    }

    pub fn a(&self) -> i32 {
        self.a
    }

    pub fn b(&self) -> i32 {
        self.b
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> IntervalKind {
        if self.a == self.b {
            IntervalKind::Trivial
        } else if self.a == -self.b {
            IntervalKind::Symmetric
        } else {
            IntervalKind::Positive
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.kind() == IntervalKind::Trivial
    }

    /// Same interval, different ambient rank.
    pub fn with_rank(&self, n: usize) -> Result<Self> {
        Self::new(self.a, self.b, n)
    }

    /// Letters in the interval, in increasing order (zero skipped).
    pub fn letters(&self) -> impl Iterator<Item = i32> + '_ {
        (self.a..=self.b).filter(|&x| x != 0)
    }

    pub fn contains(&self, x: i32) -> bool {
        x != 0 && self.a <= x && x <= self.b
    }

    /// Number of letters covered, counting both sides for a symmetric
    /// interval: `2b` for `[-b, b]`, `b - a + 1` otherwise.
    pub fn cardinality(&self) -> usize {
        self.letters().count()
    }

    /// The generator indices `J_[a,b]`.
    pub fn generator_set(&self) -> Vec<usize> {
        match self.kind() {
            IntervalKind::Trivial => Vec::new(),
            IntervalKind::Symmetric => (0..self.b as usize).collect(),
            IntervalKind::Positive => (self.a as usize..self.b as usize).collect(),
        }
    }

    /// The reversal `s_[a,b]`, the longest element of `W_J`.
    pub fn reversal(&self) -> SignedPermutation {
        let n = self.n as i8;
        let (a, b) = (self.a as i8, self.b as i8);
        let window: Vec<i8> = match self.kind() {
            IntervalKind::Trivial => (1..=n).collect(),
            IntervalKind::Symmetric => (1..=n).map(|x| if x <= b { -x } else { x }).collect(),
            IntervalKind::Positive => (1..=n).map(|x| if a <= x && x <= b { a + b - x } else { x }).collect(),
        };
        SignedPermutation::from_window_unchecked(window)
    }

    /// The reduced word `s_0 (s_1 s_0 s_1) (s_2 s_1 s_0 s_1 s_2) ...` for
    /// `[-b, b]`, or `s_a (s_(a+1) s_a) (s_(a+2) s_(a+1) s_a) ...` for
    /// `0 < a < b`.
    pub fn reversal_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        match self.kind() {
            IntervalKind::Trivial => {}
            IntervalKind::Symmetric => {
                for top in 0..self.b as usize {
                    word.extend((1..=top).rev());
                    word.push(0);
                    word.extend(1..=top);
                }
            }
            IntervalKind::Positive => {
                let a = self.a as usize;
                for top in a..self.b as usize {
                    word.extend((a..=top).rev());
                }
            }
        }
        word
    }

    /// Enumerates `W_J` by breadth-first closure under right
    /// multiplication by the generators in `J`.
    pub fn parabolic(&self) -> ParabolicSubgroup {
        let gens = self.generator_set();
        let e = SignedPermutation::identity_unchecked(self.n);
        let mut seen: HashSet<SignedPermutation> = HashSet::from([e.clone()]);
        let mut queue = VecDeque::from([e]);
        while let Some(w) = queue.pop_front() {
            for &i in &gens {
                let ws = w.mul_generator(i);
                if seen.insert(ws.clone()) {
                    queue.push_back(ws);
                }
            }
        }
        let elements: BTreeSet<_> = seen.into_iter().collect();
        ParabolicSubgroup { interval: *self, elements }
    }

    /// `|W_J|` without enumerating: `(b - a + 1)!` or `2^b b!`.
    pub fn parabolic_order(&self) -> u128 {
        let fact = |m: u128| (1..=m).product::<u128>();
        match self.kind() {
            IntervalKind::Trivial => 1,
            IntervalKind::Symmetric => (1u128 << self.b) * fact(self.b as u128),
            IntervalKind::Positive => fact((self.b - self.a + 1) as u128),
        }
    }

    /// Whether `w` lies in `W_J`: it fixes every letter outside the interval
    /// (and, for a positive interval, never changes sign).
    pub fn contains_element(&self, w: &SignedPermutation) -> bool {
        (1..=self.n as i32).all(|i| {
            let wi = w.at(i);
            match self.kind() {
                IntervalKind::Trivial => wi == i,
                IntervalKind::Symmetric => {
                    if i <= self.b {
                        wi.abs() <= self.b
                    } else {
                        wi == i
                    }
                }
                IntervalKind::Positive => {
                    if self.contains(i) {
                        self.contains(wi)
                    } else {
                        wi == i
                    }
                }
            }
        })
    }

    /// Minimal-representative test through the inverse chain conditions:
    /// `w^-1_a < ... < w^-1_b` for `a > 0`, and
    /// `w^-1_-b < ... < w^-1_-1 < w^-1_1 < ... < w^-1_b` for `a = -b`.
    pub fn is_min_coset_rep(&self, w: &SignedPermutation) -> bool {
        let inv = w.inverse();
        let chain: Vec<i32> = match self.kind() {
            IntervalKind::Trivial => return true,
            // The chain on [-b, -a] is the negated reverse of the one on
            // [a, b], so it holds iff the positive chain does.
            IntervalKind::Positive => (self.a..=self.b).map(|i| inv.at(i)).collect(),
            IntervalKind::Symmetric => self.letters().map(|i| inv.at(i)).collect(),
        };
        chain.windows(2).all(|p| p[0] < p[1])
    }

    /// The defining filter: `w s > w` for every `s` in `J`.
    pub fn is_min_coset_rep_by_definition(&self, w: &SignedPermutation) -> bool {
        let len = w.length();
        self.generator_set().into_iter().all(|i| w.mul_generator(i).length() > len)
    }

    /// Splits `w = rep · tail` with `rep` minimal in `w W_J` and `tail` in
    /// `W_J`; lengths add.
    pub fn coset_decompose(&self, w: &SignedPermutation) -> (SignedPermutation, SignedPermutation) {
        let gens = self.generator_set();
        let mut rep = w.clone();
        let mut tail_word = Vec::new();
        'strip: loop {
            for &i in &gens {
                if rep.is_right_descent(i) {
                    rep = rep.mul_generator(i);
                    tail_word.push(i);
                    continue 'strip;
                }
            }
            break;
        }
        tail_word.reverse();
        let mut tail = SignedPermutation::identity_unchecked(self.n);
        for i in tail_word {
            tail = tail.mul_generator(i);
        }
        (rep, tail)
    }

    /// Minimal representative of `w W_J`.
    pub fn min_rep(&self, w: &SignedPermutation) -> SignedPermutation {
        self.coset_decompose(w).0
    }

    /// Maximal element of `w W_J`: the minimal representative times the
    /// reversal.
    pub fn max_rep(&self, w: &SignedPermutation) -> SignedPermutation {
        self.min_rep(w).compose_unchecked(&self.reversal())
    }

    /// Coset order, comparing minimal representatives.
    pub fn coset_leq(&self, v: &SignedPermutation, w: &SignedPermutation) -> Result<bool> {
        bruhat_leq(&self.min_rep(v), &self.min_rep(w))
    }

    /// Coset order, comparing maximal elements.
    pub fn coset_leq_by_max(&self, v: &SignedPermutation, w: &SignedPermutation) -> Result<bool> {
        bruhat_leq(&self.max_rep(v), &self.max_rep(w))
    }

    /// Coset order: some element of `v W_J` lies below some element of
    /// `w W_J`.
    pub fn coset_leq_by_elements(&self, v: &SignedPermutation, w: &SignedPermutation) -> Result<bool> {
        let group = self.parabolic();
        let (vr, wr) = (self.min_rep(v), self.min_rep(w));
        for x in group.elements() {
            let vx = vr.compose(x)?;
            for y in group.elements() {
                if bruhat_leq(&vx, &wr.compose_unchecked(y))? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// Parses `"[a,b]"` (ASCII hyphen only) without a rank; see
/// [`parse_interval`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RawInterval {
    pub a: i32,
    pub b: i32,
}

impl FromStr for RawInterval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_raw_interval(s, 0)
    }
}

pub(crate) fn parse_raw_interval(s: &str, offset: usize) -> Result<RawInterval> {
    let err = |pos: usize, msg: &str| Error::Parse { pos: offset + pos, msg: msg.to_string() };
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .ok_or_else(|| err(lead, "expected '['"))?
        .strip_suffix(']')
        .ok_or_else(|| err(lead + t.len().saturating_sub(1), "expected ']'"))?;
    let comma = inner.find(',').ok_or_else(|| err(lead + 1, "expected ','"))?;
    let num = |txt: &str, pos: usize| -> Result<i32> {
        let txt = txt.trim();
        if !txt.chars().enumerate().all(|(k, c)| c.is_ascii_digit() || (k == 0 && c == '-')) {
            return Err(err(pos, &format!("bad integer {txt:?}")));
        }
        txt.parse::<i32>().map_err(|_| err(pos, &format!("bad integer {txt:?}")))
    };
    let a = num(&inner[..comma], lead + 1)?;
    let b = num(&inner[comma + 1..], lead + 2 + comma)?;
    Ok(RawInterval { a, b })
}

/// Parses `"[a,b]"` and validates it against rank `n`.
pub fn parse_interval(s: &str, n: usize) -> Result<Interval> {
    let raw = parse_raw_interval(s, 0)?;
    Interval::new(raw.a, raw.b, n)
}

/// `W_J` for an interval, as a sorted set.
#[derive(Clone, Debug)]
pub struct ParabolicSubgroup {
    interval: Interval,
    elements: BTreeSet<SignedPermutation>,
}

impl ParabolicSubgroup {
    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn elements(&self) -> impl Iterator<Item = &SignedPermutation> {
        self.elements.iter()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &SignedPermutation) -> bool {
        self.elements.contains(w)
    }

    /// Element of maximum length.
    pub fn longest(&self) -> &SignedPermutation {
        self.elements.iter().max_by_key(|w| w.length()).expect("subgroup contains the identity")
    }
}

/// Bruhat order `v <= w`.
///
/// Walks a reduced word of `w` from the right: for a right descent `s` of
/// `w`, `v <= w` iff `vs <= ws` when `s` is also a descent of `v`, and iff
/// `v <= ws` otherwise.
pub fn bruhat_leq(v: &SignedPermutation, w: &SignedPermutation) -> Result<bool> {
    if v.rank() != w.rank() {
        return Err(Error::RankMismatch { left: v.rank(), right: w.rank() });
    }
    let mut v = v.clone();
    let mut w = w.clone();
    let mut lv = v.length();
    let mut lw = w.length();
    loop {
        if lv > lw {
            return Ok(false);
        }
        if lv == 0 {
            return Ok(true);
        }
        if lv == lw {
            return Ok(v == w);
        }
        let s = (0..w.rank()).find(|&i| w.is_right_descent(i)).expect("w is not the identity");
        if v.is_right_descent(s) {
            v = v.mul_generator(s);
            lv -= 1;
        }
        w = w.mul_generator(s);
        lw -= 1;
    }
}

/// Every interval of rank `n`, trivial ones first as `[1,1]`, then the
/// symmetric ones, then the positive ones.
pub fn all_intervals(n: usize) -> Vec<Interval> {
    let mut out = vec![Interval { a: 1, b: 1, n }];
    out.extend(nontrivial_intervals(n));
    out
}

/// All intervals `[-b, b]` and `[a, b]` with `0 < a < b <= n`.
pub fn nontrivial_intervals(n: usize) -> Vec<Interval> {
    let mut out = Vec::new();
    for b in 1..=n as i32 {
        out.push(Interval { a: -b, b, n });
    }
    for b in 2..=n as i32 {
        for a in 1..b {
            out.push(Interval { a, b, n });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    fn iv(a: i32, b: i32, n: usize) -> Interval {
        Interval::new(a, b, n).unwrap()
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::new(-2, 2, 2).is_ok());
        assert!(Interval::new(3, 3, 3).is_ok());
        assert!(Interval::new(-2, 3, 3).is_err());
        assert!(Interval::new(2, 1, 3).is_err());
        assert!(Interval::new(1, 4, 3).is_err());
        assert!(Interval::new(0, 0, 3).is_err());
        assert!(Interval::new(-3, -2, 3).is_err());
    }

    #[test]
    fn generator_sets() {
        assert_eq!(iv(-2, 2, 2).generator_set(), vec![0, 1]);
        assert_eq!(iv(1, 3, 3).generator_set(), vec![1, 2]);
        assert!(iv(3, 3, 3).generator_set().is_empty());
    }

    #[test]
    fn reversals() {
        assert_eq!(iv(-2, 2, 3).reversal(), sp("-1 -2 3"));
        assert_eq!(iv(1, 3, 3).reversal(), sp("3 2 1"));
        assert!(iv(2, 2, 3).reversal().is_identity());
        assert_eq!(iv(-2, 2, 2).reversal_word(), vec![0, 1, 0, 1]);
        assert_eq!(iv(1, 3, 3).reversal_word(), vec![1, 2, 1]);
        assert!(iv(1, 1, 3).reversal_word().is_empty());
        assert_eq!(iv(-2, 2, 2).reversal().length(), 4);
    }

    #[test]
    fn reversal_word_multiplies_to_reversal() {
        for n in 1..=4 {
            for i in all_intervals(n) {
                let word = i.reversal_word();
                let w = SignedPermutation::from_word(n, &word).unwrap();
                assert_eq!(w, i.reversal(), "{i}");
                assert_eq!(word.len(), w.length());
                let expected = match i.kind() {
                    IntervalKind::Trivial => 0,
                    IntervalKind::Symmetric => (i.b() * i.b()) as usize,
                    IntervalKind::Positive => {
                        let m = (i.b() - i.a() + 1) as usize;
                        m * (m - 1) / 2
                    }
                };
                assert_eq!(word.len(), expected);
            }
        }
    }

    #[test]
    fn parabolic_sizes() {
        assert_eq!(iv(-1, 1, 1).parabolic().len(), 2);
        assert_eq!(iv(-2, 2, 2).parabolic().len(), 8);
        assert_eq!(iv(1, 2, 2).parabolic().len(), 2);
        for n in 1..=4 {
            for i in all_intervals(n) {
                let g = i.parabolic();
                assert_eq!(g.len() as u128, i.parabolic_order());
                assert_eq!(g.longest(), &i.reversal());
                for w in g.elements() {
                    assert!(i.contains_element(w));
                    for x in g.elements() {
                        assert!(g.contains(&w.compose(x).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn bruhat_small_cases() {
        let s0 = sp("-1 2");
        let s010 = SignedPermutation::from_word(2, &[0, 1, 0]).unwrap();
        assert!(bruhat_leq(&s0, &s010).unwrap());
        let e = SignedPermutation::identity(2).unwrap();
        for w in SignedPermutation::all(2).unwrap() {
            assert!(bruhat_leq(&e, &w).unwrap());
        }
        assert!(bruhat_leq(&e, &sp("1 2 3")).is_err());
    }

    #[test]
    fn min_reps() {
        let i12 = iv(1, 2, 2);
        assert!(i12.is_min_coset_rep(&SignedPermutation::identity(2).unwrap()));
        assert!(!i12.is_min_coset_rep(&sp("2 1")));
        assert!(i12.is_min_coset_rep(&sp("-1 2")));
        for w in SignedPermutation::all(2).unwrap() {
            for i in all_intervals(2) {
                assert!(i.is_min_coset_rep(&SignedPermutation::identity(2).unwrap()));
                assert_eq!(i.is_min_coset_rep(&w), i.is_min_coset_rep_by_definition(&w));
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let i12 = iv(1, 2, 2);
        let w = SignedPermutation::from_word(2, &[1, 0]).unwrap();
        let (rep, tail) = i12.coset_decompose(&w);
        assert_eq!(rep.compose(&tail).unwrap(), w);
        assert_eq!(rep.length() + tail.length(), 2);
        assert!(i12.is_min_coset_rep(&rep));
        assert!(i12.contains_element(&tail));
        let s1 = sp("2 1");
        assert_eq!(i12.coset_decompose(&s1), (SignedPermutation::identity(2).unwrap(), s1.clone()));
        let s0 = sp("-1 2");
        assert_eq!(i12.coset_decompose(&s0), (s0.clone(), SignedPermutation::identity(2).unwrap()));
    }

    #[test]
    fn coset_order_basics() {
        let i12 = iv(1, 2, 2);
        let e = SignedPermutation::identity(2).unwrap();
        for v in SignedPermutation::all(2).unwrap() {
            assert!(i12.coset_leq(&e, &v).unwrap());
            let same = v.compose(&sp("2 1")).unwrap();
            assert!(i12.coset_leq(&v, &same).unwrap());
            assert!(i12.coset_leq(&same, &v).unwrap());
        }
    }

    #[test]
    fn parse_intervals() {
        assert_eq!(parse_interval("[-2,2]", 3).unwrap(), iv(-2, 2, 3));
        assert_eq!(parse_interval(" [1, 3] ", 3).unwrap(), iv(1, 3, 3));
        assert!(parse_interval("[\u{2212}1,1]", 3).is_err());
        assert!(parse_interval("[1,3", 3).is_err());
        assert!(parse_interval("1,3]", 3).is_err());
        assert!(parse_interval("[1 3]", 3).is_err());
        assert!(parse_interval("[+1,3]", 3).is_err());
        assert!(matches!(parse_interval("[1,4]", 3), Err(Error::InvalidInterval { .. })));
        assert_eq!(iv(-2, 2, 3).to_string(), "[-2,2]");
    }

    #[test]
    fn interval_counts() {
        // 1 trivial + n symmetric + C(n, 2) positive
        assert_eq!(all_intervals(3).len(), 1 + 3 + 3);
        assert_eq!(nontrivial_intervals(2).len(), 3);
    }
}
