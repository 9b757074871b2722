//! Named self-checks comparing the independent computations in this crate.
//!
//! Each suite returns a [`SuiteReport`]; a failing report carries the first
//! counterexample and, where path families are involved, a trace of the
//! families of the offending type.

use std::fmt::{self, Write as _};

use crate::deodhar::deodhar_expand;
use crate::error::{Error, Result};
use crate::group::SignedPermutation;
use crate::hecke::{kl_reversal, product_of_reversal_kls, HeckeElement};
use crate::network::{builtin_network, StarNetwork};
use crate::parabolic::{all_intervals, nontrivial_intervals, Interval};
use crate::paths::{enumerate, enumerate_generalized, generalized_families, graphical_expansion, kl_poly_extract};
use crate::poly::r_of_v;

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    /// Number of individual comparisons made.
    pub checked: usize,
    /// Number of those that agreed.
    pub agreed: usize,
    /// First counterexample, if any.
    pub failure: Option<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self { name: name.to_string(), checked: 0, agreed: 0, failure: None }
    }

    fn record(&mut self, ok: bool, why: impl FnOnce() -> String) {
        self.checked += 1;
        if ok {
            self.agreed += 1;
        } else if self.failure.is_none() {
            self.failure = Some(why());
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.checked > 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{}: {}/{} agree: {verdict}", self.name, self.agreed, self.checked)?;
        if let Some(why) = &self.failure {
            write!(f, "\nfirst counterexample:\n{why}")?;
        }
        Ok(())
    }
}

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "lengths-b1",
    "lengths-b2",
    "lengths-b3",
    "lengths-b4",
    "minreps-b3",
    "main-b2",
    "deodhar-b2",
    "deodhar-b3",
    "collapse-m2",
    "collapse-m3",
    "truncation-b2",
    "smooth-b3",
    "builtins",
];

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    match name {
        "lengths-b1" => lengths(1),
        "lengths-b2" => lengths(2),
        "lengths-b3" => lengths(3),
        "lengths-b4" => lengths(4),
        "minreps-b3" => minreps(3),
        "main-b2" => main_b2(),
        "deodhar-b2" => deodhar(2, 6),
        "deodhar-b3" => deodhar(3, 5),
        "collapse-m2" => collapse(name, &[("[-2,2] o [-1,1] o [1,2] * [-2,2]", 2)]),
        "collapse-m3" => collapse(name, &[("[1,3] * [-3,3]", 3), ("[1,3] * [1,3]", 3), ("[-3,3] * [1,3]", 3)]),
        "truncation-b2" => truncation_b2(),
        "smooth-b3" => smooth(3),
        "builtins" => builtins(),
        _ => Err(Error::UnknownSuite(name.to_string())),
    }
}

/// Families of the given type, one block per family: path rows then
/// defects.
pub fn family_trace(net: &StarNetwork, u: &SignedPermutation, limit: usize) -> Result<String> {
    let mut out = String::new();
    for p in generalized_families(net)?.into_iter().filter(|p| &p.family_type() == u).take(limit) {
        let _ = writeln!(out, "family of type {u}, {} defects", p.defect_count());
        for (i, row) in p.path_rows() {
            let row: Vec<String> = row.iter().map(i32::to_string).collect();
            let _ = writeln!(out, "  path {i:>3}: {}", row.join(" "));
        }
        let defects: Vec<String> = p.defects().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  defects: {}", defects.join(" "));
    }
    Ok(out)
}

/// Describes where two expansions differ, with a family trace for the
/// first differing type when a network is given.
pub fn describe_difference(
    label: &str,
    hecke: &HeckeElement,
    paths: &HeckeElement,
    net: Option<&StarNetwork>,
) -> Result<String> {
    let diff = hecke.sub(paths)?;
    let mut out = format!("{label}\nhecke: {hecke}\npaths: {paths}\ndiff:  {diff}\n");
    if let (Some(net), Some((u, _))) = (net, diff.terms().first()) {
        out.push_str(&family_trace(net, u, 8)?);
    }
    Ok(out)
}

fn lengths(n: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(&format!("lengths-b{n}"));
    for w in SignedPermutation::all(n)? {
        let (a, b) = (w.length(), w.length_via_long());
        r.record(a == b, || format!("{w}: {a} from the window, {b} from the long notation"));
    }
    Ok(r)
}

fn minreps(n: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(&format!("minreps-b{n}"));
    let all = SignedPermutation::all(n)?;
    for iv in all_intervals(n) {
        for w in &all {
            let (a, b) = (iv.is_min_coset_rep(w), iv.is_min_coset_rep_by_definition(w));
            r.record(a == b, || format!("{w} for {iv}: criterion {a}, definition {b}"));
            let (rep, tail) = iv.coset_decompose(w);
            let ok = &rep * &tail == *w && rep.length() + tail.length() == w.length() && iv.is_min_coset_rep(&rep);
            r.record(ok, || format!("{w} for {iv}: bad decomposition {rep} * {tail}"));
        }
    }
    Ok(r)
}

/// All sequences of 1 to `max_len` nontrivial intervals of rank `n`.
pub fn short_sequences(n: usize, max_len: usize) -> Vec<Vec<Interval>> {
    let ivs = nontrivial_intervals(n);
    let mut layer: Vec<Vec<Interval>> = vec![Vec::new()];
    let mut out = Vec::new();
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|s| {
                ivs.iter().map(move |&iv| {
                    let mut t = s.clone();
                    t.push(iv);
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// The Hecke-recursion side of a (possibly condensed) network: the product
/// of its reversal KL elements divided by `r(v)`, the product of
/// `[m]_q!` over merged edges. `None` when the division is not exact.
pub fn network_product(net: &StarNetwork) -> Result<Option<HeckeElement>> {
    let full = product_of_reversal_kls(net.rank(), &net.intervals())?;
    let factor = r_of_v(&net.multiplicities());
    let mut out = HeckeElement::zero(net.rank())?;
    for (w, c) in full.terms() {
        match c.div_exact(&factor) {
            Some(d) => out.add_term(w.clone(), &d)?,
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Compares the path expansion of an ordinary concatenation with the
/// Hecke product of the same reversals.
pub fn compare_methods(n: usize, ivs: &[Interval], budget: Option<u128>) -> Result<Option<String>> {
    let net = StarNetwork::ordinary(n, ivs)?;
    let paths = crate::paths::graphical_expansion_with_budget(&net, budget)?;
    let hecke = product_of_reversal_kls(n, ivs)?;
    if paths == hecke {
        Ok(None)
    } else {
        describe_difference(&net.to_string(), &hecke, &paths, Some(&net)).map(Some)
    }
}

fn main_b2() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("main-b2");
    for seq in short_sequences(2, 3) {
        let diff = compare_methods(2, &seq, None)?;
        r.record(diff.is_none(), || diff.unwrap_or_default());
    }
    Ok(r)
}

/// All words in `0..n` of length at most `max_len`.
pub fn words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..n).map(move |i| {
                    let mut x = w.clone();
                    x.push(i);
                    x
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// `Π (T_e + T_s)` along the word, by Hecke recursion.
pub fn generator_product(n: usize, word: &[usize]) -> Result<HeckeElement> {
    let ivs = word
        .iter()
        .map(|&i| if i == 0 { Interval::new(-1, 1, n) } else { Interval::new(i as i32, i as i32 + 1, n) })
        .collect::<Result<Vec<_>>>()?;
    let mut h = HeckeElement::one(n)?;
    for iv in &ivs {
        h = h.natural_product(&kl_reversal(iv))?;
    }
    Ok(h)
}

fn deodhar(n: usize, max_len: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(&format!("deodhar-b{n}"));
    for word in words(n, max_len) {
        let d = deodhar_expand(&word, n)?;
        let net = StarNetwork::wiring_diagram(n, &word)?;
        let g = graphical_expansion(&net)?;
        let h = generator_product(n, &word)?;
        let ok = d == g && g == h;
        let why = || {
            let mut s = format!("word {word:?}\ndeodhar: {d}\n");
            s.push_str(&describe_difference("wiring diagram", &h, &g, Some(&net)).unwrap_or_default());
            s
        };
        r.record(ok, why);
    }
    Ok(r)
}

/// Checks that the expanded network's tally is `r(v)` times the condensed
/// one, type by type.
pub fn check_collapse(net: &StarNetwork) -> Result<Option<String>> {
    let plain = enumerate(&net.expanded())?;
    let kept = enumerate_generalized(net)?;
    let factor = r_of_v(&net.multiplicities());
    let mut types: Vec<_> = plain.types().union(&kept.types()).cloned().collect();
    types.sort();
    for u in types {
        let (a, b) = (plain.generating_function(&u), kept.generating_function(&u));
        if a != &b * &factor {
            let mut s = format!("{net}, type {u}: expanded {a}, condensed {b}, factor {factor}\n");
            s.push_str(&family_trace(net, &u, 8)?);
            return Ok(Some(s));
        }
    }
    Ok(None)
}

fn collapse(name: &str, nets: &[(&str, usize)]) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(name);
    for &(text, n) in nets {
        let net = StarNetwork::parse(text, n)?;
        let diff = check_collapse(&net)?;
        r.record(diff.is_none(), || diff.unwrap_or_default());
    }
    Ok(r)
}

/// For `F = F' o F_[a,b]` and minimal `w`, the count of families of type
/// `wv` with `d` defects does not depend on `v` in `W_J` and equals
/// `Σ_u count'(wu, d - l(u))`.
pub fn check_truncation(n: usize, ivs: &[Interval]) -> Result<Option<String>> {
    let (last, prefix) = ivs.split_last().ok_or_else(|| Error::InvalidFamily("no stages".into()))?;
    let full = enumerate(&StarNetwork::ordinary(n, ivs)?)?;
    let before = enumerate(&StarNetwork::ordinary(n, prefix)?)?;
    let wj: Vec<SignedPermutation> = last.parabolic().elements().cloned().collect();
    let max_d = ivs.iter().map(|iv| iv.reversal().length()).sum::<usize>();
    for w in SignedPermutation::all(n)?.into_iter().filter(|w| last.is_min_coset_rep(w)) {
        for d in 0..=max_d {
            let expected: u64 =
                wj.iter().filter(|u| u.length() <= d).map(|u| before.get(&(&w * u), d - u.length())).sum();
            for v in &wj {
                let got = full.get(&(&w * v), d);
                if got != expected {
                    let net = StarNetwork::ordinary(n, ivs)?;
                    return Ok(Some(format!("{net}: w = {w}, v = {v}, d = {d}: {got} families, expected {expected}")));
                }
            }
        }
    }
    Ok(None)
}

fn truncation_b2() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("truncation-b2");
    for seq in short_sequences(2, 3).into_iter().filter(|s| s.len() >= 2) {
        let diff = check_truncation(2, &seq)?;
        r.record(diff.is_none(), || diff.unwrap_or_default());
    }
    Ok(r)
}

fn smooth(n: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new(&format!("smooth-b{n}"));
    for iv in all_intervals(n) {
        let net = StarNetwork::simple_star(iv, n)?;
        for u in iv.parabolic().elements() {
            let p = kl_poly_extract(&net, u)?;
            r.record(p.is_one(), || format!("{iv}, u = {u}: got {p}"));
        }
    }
    Ok(r)
}

/// The builtin networks and the reversal factorizations they draw.
pub fn builtin_factorization(name: &str) -> Result<Vec<Interval>> {
    Ok(builtin_network(name)?.intervals())
}

fn builtins() -> Result<SuiteReport> {
    let mut r = SuiteReport::new("builtins");
    for name in ["F3412", "F4231"] {
        let net = builtin_network(name)?;
        let ivs = builtin_factorization(name)?;
        let hecke = product_of_reversal_kls(4, &ivs)?;
        let paths = graphical_expansion(&net)?;
        let why = || describe_difference(name, &hecke, &paths, Some(&net)).unwrap_or_default();
        r.record(hecke == paths, why);
        for (u, _) in hecke.terms() {
            let p = kl_poly_extract(&net, u)?;
            r.record(p.coeff(0) == 1, || format!("{name}, u = {u}: P = {p}"));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass() {
        for name in ["lengths-b3", "minreps-b3", "main-b2", "deodhar-b2", "collapse-m2", "smooth-b3"] {
            let r = run_suite(name).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert_eq!(run_suite("lengths-b3").unwrap().to_string(), "lengths-b3: 48/48 agree: pass");
        assert!(matches!(run_suite("bogus"), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn condensed_product_divides() {
        let net = StarNetwork::parse("[-2,2] o [-1,1] o [1,2] * [-2,2]", 2).unwrap();
        let h = network_product(&net).unwrap().unwrap();
        assert_eq!(h, graphical_expansion(&net).unwrap());
    }

    #[test]
    fn sequence_counts() {
        assert_eq!(short_sequences(2, 3).len(), 39);
        assert_eq!(words(2, 6).len(), 127);
    }

    #[test]
    fn difference_report_shows_trace() {
        let net = StarNetwork::parse("[-1,1]", 1).unwrap();
        let h = HeckeElement::one(1).unwrap();
        let g = graphical_expansion(&net).unwrap();
        let s = describe_difference("x", &h, &g, Some(&net)).unwrap();
        assert!(s.contains("family of type -1, 0 defects"), "{s}");
    }
}
