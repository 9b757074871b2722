//! Exact arithmetic in the type-BC Iwahori-Hecke algebra over `Z[q]`.
//!
//! Elements are finite sums `sum_w a_w T_w` in the natural basis. The only
//! multiplication rule implemented directly is right multiplication by a
//! generator,
//!
//! ```text
//! T_w T_s = q T_ws + (q - 1) T_w   if ws < w
//!         = T_ws                   if ws > w
//! ```
//!
//! and general products are built from it along reduced words. The
//! Kazhdan-Lusztig element of a reversal `s_[a,b]` is the coset sum
//! `T_{W_J}`; products of such elements can also be assembled one coset at a
//! time through Douglass's left action on coset sums.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{check_rank, SignedPermutation};
use crate::parabolic::{bruhat_leq, Interval};
use crate::poly::QPoly;

/// A finite `Z[q]`-combination of natural basis elements `T_w` of `H_n`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    rank: usize,
    terms: HashMap<SignedPermutation, QPoly>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Result<Self> {
        check_rank(n)?;
        Ok(Self { rank: n, terms: HashMap::new() })
    }

    /// The unit `T_e`.
    pub fn one(n: usize) -> Result<Self> {
        Ok(Self::basis(SignedPermutation::identity(n)?))
    }

    /// `T_w`.
    pub fn basis(w: SignedPermutation) -> Self {
        let rank = w.rank();
        Self { rank, terms: HashMap::from([(w, QPoly::one())]) }
    }

    /// `T_{s_i}`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Ok(Self::basis(SignedPermutation::generator(n, i)?))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `T_w` (zero when absent).
    pub fn coeff(&self, w: &SignedPermutation) -> QPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Adds `c T_w`, dropping the term if it cancels.
    pub fn add_term(&mut self, w: SignedPermutation, c: &QPoly) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch { left: self.rank, right: w.rank() });
        }
        self.add_term_unchecked(w, c);
        Ok(())
    }

    pub(crate) fn add_term_unchecked(&mut self, w: SignedPermutation, c: &QPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    /// Terms in canonical order: by length, then by short window.
    pub fn terms(&self) -> Vec<(&SignedPermutation, &QPoly)> {
        let mut out: Vec<_> = self.terms.iter().collect();
        out.sort_by(|x, y| (x.0.length(), x.0).cmp(&(y.0.length(), y.0)));
        out
    }

    pub fn support(&self) -> HashSet<SignedPermutation> {
        self.terms.keys().cloned().collect()
    }

    pub fn scale(&self, c: &QPoly) -> Self {
        let mut out = Self { rank: self.rank, terms: HashMap::new() };
        for (w, a) in &self.terms {
            out.add_term_unchecked(w.clone(), &(a * c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank_of(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term_unchecked(w.clone(), c);
        }
        Ok(out)
    }

    /// `self - other`; empty exactly when the two agree.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&QPoly::constant(-1)))
    }

    /// Whether every coefficient has nonnegative integer coefficients.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(QPoly::is_nonnegative)
    }

    /// Right multiplication by `T_{s_i}`.
    pub fn multiply_by_generator(&self, i: usize) -> Result<Self> {
        if i >= self.rank {
            return Err(Error::GeneratorOutOfRange { index: i, rank: self.rank });
        }
        let q = QPoly::q();
        let q_minus_one = QPoly::from_coeffs(vec![-1, 1]);
        let mut out = Self { rank: self.rank, terms: HashMap::with_capacity(self.terms.len() * 2) };
        for (w, c) in &self.terms {
            let ws = w.mul_generator(i);
            if w.is_right_descent(i) {
                out.add_term_unchecked(ws, &(c * &q));
                out.add_term_unchecked(w.clone(), &(c * &q_minus_one));
            } else {
                out.add_term_unchecked(ws, c);
            }
        }
        Ok(out)
    }

    /// `self · T_w`, multiplying generator by generator along a reduced
    /// word of `w`.
    pub fn multiply_by_basis(&self, w: &SignedPermutation) -> Result<Self> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch { left: self.rank, right: w.rank() });
        }
        let mut out = self.clone();
        for i in w.reduced_word() {
            out = out.multiply_by_generator(i)?;
        }
        Ok(out)
    }

    /// The product `self · other` in `H_n`.
    pub fn natural_product(&self, other: &Self) -> Result<Self> {
        self.check_rank_of(other)?;
        let mut out = Self { rank: self.rank, terms: HashMap::new() };
        for (v, c) in &other.terms {
            let part = self.multiply_by_basis(v)?;
            for (w, a) in part.terms {
                out.add_term_unchecked(w, &(&a * c));
            }
        }
        Ok(out)
    }

    /// Serializable form, canonically ordered.
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms().into_iter().map(|(w, c)| TermRecord { w: w.to_string(), coeffs: c.coeffs().to_vec() }).collect()
    }

    /// Rebuilds an element from records; `n` is needed for the empty sum.
    pub fn from_records(n: usize, records: &[TermRecord]) -> Result<Self> {
        let mut out = Self::zero(n)?;
        for r in records {
            let w: SignedPermutation = r.w.parse()?;
            out.add_term(w, &QPoly::from_coeffs(r.coeffs.clone()))?;
        }
        Ok(out)
    }

    /// JSON array of `{"w": "<window>", "coeffs": [c_0, c_1, ...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_records()).expect("records serialize")
    }

    pub fn from_json(n: usize, json: &str) -> Result<Self> {
        let records: Vec<TermRecord> = serde_json::from_str(json)
            .map_err(|e| Error::Parse { pos: e.column().saturating_sub(1), msg: e.to_string() })?;
        Self::from_records(n, &records)
    }

    fn check_rank_of(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            Err(Error::RankMismatch { left: self.rank, right: other.rank })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElement({self})")
    }
}

/// `(1 + q)T[1 2] + T[-1 2]`; the empty sum prints `0`.
impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms().into_iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "T[{w}]")?;
            } else if c.coeffs().iter().filter(|&&x| x != 0).count() == 1 && c.coeffs().last() > Some(&0) {
                write!(f, "{c}T[{w}]")?;
            } else {
                write!(f, "({c})T[{w}]")?;
            }
        }
        Ok(())
    }
}

/// One term of the JSON form of a [`HeckeElement`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub w: String,
    pub coeffs: Vec<i64>,
}

/// The Kazhdan-Lusztig element of the reversal `s_[a,b]`: the sum of `T_v`
/// over `v` in `W_J`, all coefficients `1`.
pub fn kl_reversal(iv: &Interval) -> HeckeElement {
    let terms = iv.parabolic().elements().map(|v| (v.clone(), QPoly::one())).collect();
    HeckeElement { rank: iv.rank(), terms }
}

/// Left-to-right product of the reversal elements of `ivs`; `T_e` for an
/// empty sequence.
pub fn product_of_reversal_kls(n: usize, ivs: &[Interval]) -> Result<HeckeElement> {
    let mut acc = HeckeElement::one(n)?;
    for iv in ivs {
        if iv.rank() != n {
            return Err(Error::RankMismatch { left: n, right: iv.rank() });
        }
        acc = acc.natural_product(&kl_reversal(iv))?;
    }
    Ok(acc)
}

/// An element of the left module spanned by coset sums `T_{w W_J}`, keyed
/// by minimal coset representative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetSum {
    interval: Interval,
    reps: HashMap<SignedPermutation, QPoly>,
}

impl CosetSum {
    /// The coset sum `T_{W_J}` itself.
    pub fn unit(interval: Interval) -> Self {
        let e = SignedPermutation::identity_unchecked(interval.rank());
        Self { interval, reps: HashMap::from([(e, QPoly::one())]) }
    }

    pub fn zero(interval: Interval) -> Self {
        Self { interval, reps: HashMap::new() }
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn rank(&self) -> usize {
        self.interval.rank()
    }

    /// Coefficient of `T_{w W_J}`; `w` may be any member of the coset.
    pub fn coeff(&self, w: &SignedPermutation) -> QPoly {
        self.reps.get(&self.interval.min_rep(w)).cloned().unwrap_or_default()
    }

    /// Adds `c T_{w W_J}` for any member `w` of the coset.
    pub fn add_term(&mut self, w: &SignedPermutation, c: &QPoly) {
        if c.is_zero() {
            return;
        }
        let rep = self.interval.min_rep(w);
        let slot = self.reps.entry(rep).or_default();
        *slot += c;
        if slot.is_zero() {
            let rep = self.interval.min_rep(w);
            self.reps.remove(&rep);
        }
    }

    /// Terms keyed by minimal representative, in canonical order.
    pub fn terms(&self) -> Vec<(&SignedPermutation, &QPoly)> {
        let mut out: Vec<_> = self.reps.iter().collect();
        out.sort_by(|x, y| (x.0.length(), x.0).cmp(&(y.0.length(), y.0)));
        out
    }

    /// Expands `sum_w c_w T_{w W_J}` as `sum_w sum_{u in W_J} c_w T_{wu}`.
    pub fn flatten(&self) -> HeckeElement {
        let group = self.interval.parabolic();
        let mut out = HeckeElement { rank: self.rank(), terms: HashMap::new() };
        for (w, c) in &self.reps {
            for u in group.elements() {
                out.add_term_unchecked(w.compose_unchecked(u), c);
            }
        }
        out
    }
}

/// Douglass's formula for `T_{s_i} · C`:
///
/// ```text
/// T_s T_{wW_J} = q T_{swW_J} + (q - 1) T_{wW_J}   if swW_J < wW_J
///              = T_{swW_J}                        if swW_J > wW_J
///              = q T_{wW_J}                       if swW_J = wW_J
/// ```
pub fn douglass_action(i: usize, c: &CosetSum) -> Result<CosetSum> {
    let n = c.rank();
    if i >= n {
        return Err(Error::GeneratorOutOfRange { index: i, rank: n });
    }
    let iv = c.interval;
    let q = QPoly::q();
    let q_minus_one = QPoly::from_coeffs(vec![-1, 1]);
    let mut out = CosetSum::zero(iv);
    for (w, a) in &c.reps {
        let sw = iv.min_rep(&w.generator_mul(i));
        if &sw == w {
            out.add_term(w, &(a * &q));
        } else if bruhat_leq(&sw, w)? {
            out.add_term(&sw, &(a * &q));
            out.add_term(w, &(a * &q_minus_one));
        } else {
            out.add_term(&sw, a);
        }
    }
    Ok(out)
}

/// Rewrites `prefix · T_{W_J}` in the coset basis: the coefficient of
/// `T_w T_{W_J}` is `sum_{u in W_J} q^l(u) c_{wu}` where `c_v` are the
/// natural coefficients of `prefix`.
pub fn coset_expansion(prefix: &HeckeElement, iv: &Interval) -> Result<CosetSum> {
    if prefix.rank() != iv.rank() {
        return Err(Error::RankMismatch { left: prefix.rank(), right: iv.rank() });
    }
    let mut out = CosetSum::zero(*iv);
    for (v, c) in &prefix.terms {
        let (w, u) = iv.coset_decompose(v);
        out.add_term(&w, &c.shift(u.length()));
    }
    Ok(out)
}
