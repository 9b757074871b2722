//! BC-path families covering star networks and the type-BC defect statistic.
//!
//! A family is stored through its prefix products: `prefix(k)` is the signed
//! permutation sending `i` to the level of path `π_i` after stage `k`, so
//! reflection symmetry holds by construction. At stage `k` the family picks
//! a local element `g_k` of `W_J` for the stage interval and
//! `prefix(k) = prefix(k - 1) · g_k`.
//!
//! A defect `(i, j, k)` with `-j <= i < j` is recorded when `π_i` and `π_j`
//! enter a common star of stage `k` with their source order flipped.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{PairRule, SignedPermutation};
use crate::hecke::HeckeElement;
use crate::network::{Join, StarNetwork};
use crate::parabolic::Interval;
use crate::poly::QPoly;

/// A defect `(π_i, π_j, k)`: paths `i` and `j` meet at a star of stage `k`
/// (numbered from 1) after crossing an odd number of times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DefectTriple {
    pub i: i32,
    pub j: i32,
    pub k: usize,
}

impl fmt::Display for DefectTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// A BC-path family covering an ordinary network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFamily {
    net: StarNetwork,
    prefixes: Vec<SignedPermutation>,
}

impl PathFamily {
    /// Builds a family from a level matrix: `levels[k]` lists the levels of
    /// `π_-n, ..., π_-1, π_1, ..., π_n` after stage `k`, with `levels[0]` the
    /// sources. Rejects collisions, non-reflected families and moves a stage
    /// does not allow.
    pub fn from_levels(net: &StarNetwork, levels: &[Vec<i32>]) -> Result<Self> {
        let n = net.rank() as i32;
        let bad = |msg: String| Err(Error::InvalidFamily(msg));
        if levels.len() != net.num_stages() + 1 {
            return bad(format!("expected {} columns, got {}", net.num_stages() + 1, levels.len()));
        }
        let names = net.levels();
        let idx = |i: i32| if i < 0 { (i + n) as usize } else { (i + n - 1) as usize };
        let mut prefixes = Vec::with_capacity(levels.len());
        for (k, row) in levels.iter().enumerate() {
            if row.len() != names.len() {
                return bad(format!("column {k} has {} entries, expected {}", row.len(), names.len()));
            }
            let mut seen = row.clone();
            seen.sort_unstable();
            if seen != names {
                return bad(format!("paths collide or leave the levels after stage {k}"));
            }
            if k == 0 && *row != names {
                return bad("paths must start at their own sources".into());
            }
            for &i in &names {
                if row[idx(-i)] != -row[idx(i)] {
                    return bad(format!("paths {i} and {} are not reflections after stage {k}", -i));
                }
            }
            if k > 0 {
                let stage = &net.stages()[k - 1];
                for &i in &names {
                    let (old, new) = (levels[k - 1][idx(i)], row[idx(i)]);
                    if stage.star_of(old) != stage.star_of(new) || (stage.star_of(old).is_none() && old != new) {
                        return bad(format!("path {i} cannot move from {old} to {new} at stage {k}"));
                    }
                }
            }
            let window: Vec<i32> = row[n as usize..].to_vec();
            prefixes.push(SignedPermutation::from_window(&window)?);
        }
        Self::from_prefixes(net, prefixes)
    }

    /// Builds a family from the level sequence of each path `π_i`,
    /// `(i, [level after stage 0, level after stage 1, ...])`. Every path
    /// `-n..=n` must appear once.
    pub fn from_paths(net: &StarNetwork, paths: &[(i32, Vec<i32>)]) -> Result<Self> {
        let n = net.rank() as i32;
        let cols = net.num_stages() + 1;
        let mut by_path: BTreeMap<i32, &Vec<i32>> = BTreeMap::new();
        for (i, seq) in paths {
            if *i == 0 || i.abs() > n || seq.len() != cols || by_path.insert(*i, seq).is_some() {
                return Err(Error::InvalidFamily(format!("bad or repeated path {i}")));
            }
        }
        if by_path.len() != 2 * n as usize {
            return Err(Error::InvalidFamily("every path must be given".into()));
        }
        let levels: Vec<Vec<i32>> = (0..cols).map(|k| by_path.values().map(|seq| seq[k]).collect()).collect();
        Self::from_levels(net, &levels)
    }

    /// Builds a family from its local stage elements `g_1, ..., g_m`.
    pub fn from_local_elements(net: &StarNetwork, locals: &[SignedPermutation]) -> Result<Self> {
        if locals.len() != net.num_stages() {
            return Err(Error::InvalidFamily(format!(
                "expected {} local elements, got {}",
                net.num_stages(),
                locals.len()
            )));
        }
        let mut prefixes = vec![SignedPermutation::identity(net.rank())?];
        for (g, stage) in locals.iter().zip(net.stages()) {
            check_local(&stage.interval, g)?;
            let next = prefixes.last().unwrap().compose(g)?;
            prefixes.push(next);
        }
        Self::from_prefixes(net, prefixes)
    }

    fn from_prefixes(net: &StarNetwork, prefixes: Vec<SignedPermutation>) -> Result<Self> {
        if net.has_condensed_joins() {
            return Err(Error::CondensedNetwork);
        }
        Ok(Self { net: net.clone(), prefixes })
    }

    pub fn net(&self) -> &StarNetwork {
        &self.net
    }

    pub fn rank(&self) -> usize {
        self.net.rank()
    }

    pub fn num_stages(&self) -> usize {
        self.net.num_stages()
    }

    /// Level of `π_i` after stage `k`.
    pub fn level(&self, k: usize, i: i32) -> i32 {
        self.prefixes[k].at(i)
    }

    /// The map `i -> level of π_i` after stage `k`.
    pub fn prefix(&self, k: usize) -> &SignedPermutation {
        &self.prefixes[k]
    }

    /// The element of `W_J` chosen at stage `k` (from 1).
    pub fn local_element(&self, k: usize) -> SignedPermutation {
        self.prefixes[k - 1].inverse().compose_unchecked(&self.prefixes[k])
    }

    /// `u` with `u_i = sink(π_i)`.
    pub fn family_type(&self) -> SignedPermutation {
        self.prefixes.last().unwrap().clone()
    }

    pub fn defects(&self) -> Vec<DefectTriple> {
        let mut out = Vec::new();
        for (k, stage) in self.net.stages().iter().enumerate() {
            stage_defects(&stage.interval, &self.prefixes[k], |i, j| out.push(DefectTriple { i, j, k: k + 1 }));
        }
        out.sort();
        out
    }

    pub fn defect_count(&self) -> usize {
        self.net.stages().iter().enumerate().map(|(k, s)| stage_defect_count(&s.interval, &self.prefixes[k])).sum()
    }

    /// Pairs `(i, j)` admitted by `rule` with `sink(π_j) < sink(π_i)`.
    pub fn sink_inversions(&self, rule: PairRule) -> Vec<(i32, i32)> {
        let u = self.family_type();
        let n = self.rank() as i32;
        let mut out = Vec::new();
        for j in 1..=n {
            for i in -n..j {
                if i != 0 && rule.admits(i, j) && u.at(j) < u.at(i) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Levels as a matrix, one row per path `-n..=n`, one column per stage
    /// boundary.
    pub fn path_rows(&self) -> Vec<(i32, Vec<i32>)> {
        self.net.levels().into_iter().map(|i| (i, self.prefixes.iter().map(|p| p.at(i)).collect())).collect()
    }
}

fn check_local(iv: &Interval, g: &SignedPermutation) -> Result<()> {
    if !iv.contains_element(g) {
        return Err(Error::NotInParabolic { element: g.to_string(), interval: iv.to_string() });
    }
    Ok(())
}

/// Calls `hit(i, j)` for every defect at a stage with the given interval,
/// entered with levels `prefix`.
fn stage_defects(iv: &Interval, prefix: &SignedPermutation, mut hit: impl FnMut(i32, i32)) {
    let inv = prefix.inverse();
    let stage = crate::network::Stage { interval: *iv, condensed_join: false };
    for (_, levels) in stage.stars() {
        let paths: Vec<i32> = levels.iter().map(|&l| inv.at(l)).collect();
        for (x, &pi) in paths.iter().enumerate() {
            for &pj in &paths[..x] {
                // pj sits strictly below pi; a defect needs the larger
                // source index below
                if pj > pi && -pj <= pi {
                    hit(pi, pj);
                }
            }
        }
    }
}

fn stage_defect_count(iv: &Interval, prefix: &SignedPermutation) -> usize {
    let mut c = 0;
    stage_defects(iv, prefix, |_, _| c += 1);
    c
}

/// Tally of path families by `(type, defect count)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyCounts {
    counts: BTreeMap<(SignedPermutation, usize), u64>,
}

/// One line of the machine-readable tally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    #[serde(rename = "type")]
    pub family_type: String,
    pub defects: usize,
    pub count: u64,
}

impl FamilyCounts {
    fn bump(&mut self, u: SignedPermutation, d: usize, c: u64) {
        *self.counts.entry((u, d)).or_default() += c;
    }

    fn merge(mut self, other: Self) -> Self {
        for ((u, d), c) in other.counts {
            self.bump(u, d, c);
        }
        self
    }

    pub fn get(&self, u: &SignedPermutation, d: usize) -> u64 {
        self.counts.get(&(u.clone(), d)).copied().unwrap_or(0)
    }

    /// Number of families enumerated.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn types(&self) -> HashSet<SignedPermutation> {
        self.counts.keys().map(|(u, _)| u.clone()).collect()
    }

    /// `Σ_d count(u, d) q^d`.
    pub fn generating_function(&self, u: &SignedPermutation) -> QPoly {
        let mut p = QPoly::zero();
        for ((v, d), c) in &self.counts {
            if v == u {
                p.add_term(*c as i64, *d);
            }
        }
        p
    }

    pub fn to_hecke(&self, n: usize) -> Result<HeckeElement> {
        let mut h = HeckeElement::zero(n)?;
        for ((u, d), c) in &self.counts {
            h.add_term(u.clone(), &QPoly::monomial(*c as i64, *d))?;
        }
        Ok(h)
    }

    /// Records sorted by type length, type window, then defect count.
    pub fn records(&self) -> Vec<CountRecord> {
        let mut keys: Vec<_> = self.counts.iter().collect();
        keys.sort_by(|((u, d), _), ((v, e), _)| (u.length(), u.window(), d).cmp(&(v.length(), v.window(), e)));
        keys.into_iter().map(|((u, d), c)| CountRecord { family_type: u.to_string(), defects: *d, count: *c }).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.records()).expect("records serialize")
    }
}

/// Shared state for a depth-first walk over the stages.
struct Walk {
    stages: Vec<Interval>,
    locals: Vec<Vec<SignedPermutation>>,
    /// Per stage, the level sets of its merged edges (both sides).
    merged: Vec<Vec<Vec<i32>>>,
    /// `reach[k]`: products `g_(k+1) ... g_m`, when pruning for a target.
    reach: Option<(SignedPermutation, Vec<HashSet<SignedPermutation>>)>,
}

impl Walk {
    fn new(net: &StarNetwork, filter_merged: bool, target: Option<&SignedPermutation>) -> Self {
        let stages = net.intervals();
        let locals: Vec<Vec<SignedPermutation>> =
            stages.iter().map(|iv| iv.parabolic().elements().cloned().collect()).collect();
        let mut merged = vec![Vec::new(); stages.len()];
        if filter_merged {
            for e in net.all_merged_edges() {
                merged[e.stage - 1].push(e.levels);
            }
        }
        let reach = target.map(|u| {
            let m = stages.len();
            let mut reach = vec![HashSet::new(); m + 1];
            reach[m].insert(SignedPermutation::identity_unchecked(net.rank()));
            for k in (0..m).rev() {
                let next: HashSet<_> =
                    locals[k].iter().flat_map(|g| reach[k + 1].iter().map(move |r| g.compose_unchecked(r))).collect();
                reach[k] = next;
            }
            (u.clone(), reach)
        });
        Self { stages, locals, merged, reach }
    }

    /// Defects entering stage `k` (0-based) with levels `p`, or `None` when
    /// a defect sits on a single merged edge.
    fn enter(&self, k: usize, p: &SignedPermutation) -> Option<usize> {
        let mut count = 0;
        let mut shared = false;
        let edges = &self.merged[k];
        stage_defects(&self.stages[k], p, |i, j| {
            count += 1;
            if !edges.is_empty() {
                let (li, lj) = (p.at(i), p.at(j));
                shared |= edges.iter().any(|e| e.contains(&li) && e.contains(&lj));
            }
        });
        (!shared).then_some(count)
    }

    fn admits(&self, k: usize, p: &SignedPermutation) -> bool {
        match &self.reach {
            None => true,
            Some((u, reach)) => reach[k].contains(&p.inverse().compose_unchecked(u)),
        }
    }

    fn dfs(
        &self,
        k: usize,
        p: SignedPermutation,
        d: usize,
        trail: &mut Vec<SignedPermutation>,
        visit: &mut dyn FnMut(&[SignedPermutation], usize),
    ) {
        if !self.admits(k, &p) {
            return;
        }
        trail.push(p.clone());
        if k == self.stages.len() {
            visit(trail, d);
        } else if let Some(extra) = self.enter(k, &p) {
            for g in &self.locals[k] {
                self.dfs(k + 1, p.compose_unchecked(g), d + extra, trail, visit);
            }
        }
        trail.pop();
    }

    fn count(&self, n: usize) -> FamilyCounts {
        let start = SignedPermutation::identity_unchecked(n);
        if self.stages.is_empty() {
            let mut c = FamilyCounts::default();
            if self.admits(0, &start) {
                c.bump(start, 0, 1);
            }
            return c;
        }
        let extra = match self.enter(0, &start) {
            Some(e) => e,
            None => return FamilyCounts::default(),
        };
        self.locals[0]
            .par_iter()
            .map(|g| {
                let mut c = FamilyCounts::default();
                let mut trail = vec![start.clone()];
                self.dfs(1, start.compose_unchecked(g), extra, &mut trail, &mut |t, d| {
                    c.bump(t.last().unwrap().clone(), d, 1)
                });
                c
            })
            .reduce(FamilyCounts::default, FamilyCounts::merge)
    }
}

fn check_budget(net: &StarNetwork, budget: Option<u128>) -> Result<()> {
    if let Some(budget) = budget {
        let estimate = net.family_count_estimate();
        if estimate > budget {
            return Err(Error::BudgetExceeded { estimate, budget });
        }
    }
    Ok(())
}

/// Tallies the BC-path families of an ordinary network.
pub fn enumerate(net: &StarNetwork) -> Result<FamilyCounts> {
    enumerate_with_budget(net, None)
}

pub fn enumerate_with_budget(net: &StarNetwork, budget: Option<u128>) -> Result<FamilyCounts> {
    if net.has_condensed_joins() {
        return Err(Error::CondensedNetwork);
    }
    check_budget(net, budget)?;
    Ok(Walk::new(net, false, None).count(net.rank()))
}

/// Tallies the families of a generalized network: families of the
/// expanded network with no defect between two paths sharing a merged edge.
pub fn enumerate_generalized(net: &StarNetwork) -> Result<FamilyCounts> {
    enumerate_generalized_with_budget(net, None)
}

pub fn enumerate_generalized_with_budget(net: &StarNetwork, budget: Option<u128>) -> Result<FamilyCounts> {
    check_budget(net, budget)?;
    Ok(Walk::new(net, true, None).count(net.rank()))
}

/// Every family of an ordinary network, in depth-first order. Meant for
/// small networks and traces.
pub fn families(net: &StarNetwork) -> Result<Vec<PathFamily>> {
    families_filtered(net, false)
}

/// The kept families of a generalized network, as families of its expanded
/// network.
pub fn generalized_families(net: &StarNetwork) -> Result<Vec<PathFamily>> {
    families_filtered(net, true)
}

fn families_filtered(net: &StarNetwork, filter_merged: bool) -> Result<Vec<PathFamily>> {
    if !filter_merged && net.has_condensed_joins() {
        return Err(Error::CondensedNetwork);
    }
    let expanded = net.expanded();
    let walk = Walk::new(net, filter_merged, None);
    let mut out = Vec::new();
    let start = SignedPermutation::identity(net.rank())?;
    let mut trail = Vec::new();
    walk.dfs(0, start, 0, &mut trail, &mut |t, _| out.push(PathFamily { net: expanded.clone(), prefixes: t.to_vec() }));
    Ok(out)
}

/// `Σ_π q^dfct(π) T_type(π)` over the kept families.
pub fn graphical_expansion(net: &StarNetwork) -> Result<HeckeElement> {
    enumerate_generalized(net)?.to_hecke(net.rank())
}

pub fn graphical_expansion_with_budget(net: &StarNetwork, budget: Option<u128>) -> Result<HeckeElement> {
    enumerate_generalized_with_budget(net, budget)?.to_hecke(net.rank())
}

/// `Σ q^dfct(π)` over kept families of type `u`, pruning branches that
/// cannot reach `u`.
pub fn kl_poly_extract(net: &StarNetwork, u: &SignedPermutation) -> Result<QPoly> {
    kl_poly_extract_with_budget(net, u, None)
}

pub fn kl_poly_extract_with_budget(net: &StarNetwork, u: &SignedPermutation, budget: Option<u128>) -> Result<QPoly> {
    if u.rank() != net.rank() {
        return Err(Error::RankMismatch { left: net.rank(), right: u.rank() });
    }
    check_budget(net, budget)?;
    Ok(Walk::new(net, true, Some(u)).count(net.rank()).generating_function(u))
}

/// Drops the last stage of a family.
pub fn truncate_family(f: &PathFamily) -> Result<PathFamily> {
    let net = f.net.truncated().ok_or_else(|| Error::InvalidFamily("no stage to drop".into()))?;
    Ok(PathFamily { net, prefixes: f.prefixes[..f.prefixes.len() - 1].to_vec() })
}

/// Appends an ordinary stage `F_iv` whose local element is `tail`.
pub fn extend_family(f: &PathFamily, iv: Interval, tail: &SignedPermutation) -> Result<PathFamily> {
    if iv.rank() != f.rank() || tail.rank() != f.rank() {
        return Err(Error::RankMismatch { left: f.rank(), right: iv.rank().max(tail.rank()) });
    }
    check_local(&iv, tail)?;
    let mut stages: Vec<(Interval, Join)> = f.net.intervals().into_iter().map(|i| (i, Join::Ordinary)).collect();
    stages.push((iv, Join::Ordinary));
    let net = StarNetwork::concatenate(f.rank(), &stages)?;
    let mut prefixes = f.prefixes.clone();
    prefixes.push(prefixes.last().unwrap().compose_unchecked(tail));
    Ok(PathFamily { net, prefixes })
}
