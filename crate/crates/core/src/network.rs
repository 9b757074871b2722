//! Type-BC star networks.
//!
//! A network on `2n` levels `-n, ..., -1, 1, ..., n` is a sequence of
//! stages, one simple star network `F_[a,b]` per stage:
//!
//! * `[b,b]`: identity wiring, no interior vertex;
//! * `[-b,b]`: one self-reflected center joined to every level of the
//!   interval;
//! * `[a,b]` with `0 < a < b`: an upper star on levels `a..=b` and its
//!   reflection, a lower star on `-b..=-a`.
//!
//! Consecutive stages are glued level by level. A condensed join (`*` in
//! the text grammar) additionally merges every bundle of two or more
//! parallel edges arriving at a star of the next stage from a single earlier
//! star into one edge labeled with the bundle size.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::group::check_rank;
use crate::parabolic::{parse_raw_interval, Interval, IntervalKind};

/// Where a star sits relative to the symmetry line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Lower,
    Center,
    Upper,
}

impl Side {
    pub fn reflect(self) -> Self {
        match self {
            Side::Lower => Side::Upper,
            Side::Center => Side::Center,
            Side::Upper => Side::Lower,
        }
    }
}

/// A vertex of the (expanded) network. Stages are numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Source(i32),
    Star { stage: usize, side: Side },
    Sink(i32),
}

impl Vertex {
    pub fn reflect(self) -> Self {
        match self {
            Vertex::Source(l) => Vertex::Source(-l),
            Vertex::Sink(l) => Vertex::Sink(-l),
            Vertex::Star { stage, side } => Vertex::Star { stage, side: side.reflect() },
        }
    }

    pub fn is_self_reflected(self) -> bool {
        matches!(self, Vertex::Star { side: Side::Center, .. })
    }

    fn dot_id(self) -> String {
        let lvl = |l: i32| if l < 0 { format!("m{}", -l) } else { format!("p{l}") };
        match self {
            Vertex::Source(l) => format!("src_{}", lvl(l)),
            Vertex::Sink(l) => format!("snk_{}", lvl(l)),
            Vertex::Star { stage, side } => {
                let s = match side {
                    Side::Lower => "l",
                    Side::Center => "c",
                    Side::Upper => "u",
                };
                format!("st{stage}_{s}")
            }
        }
    }
}

/// How a stage is attached to the one before it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Join {
    Ordinary,
    Condensed,
}

/// One simple star network inside a concatenation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Stage {
    pub interval: Interval,
    /// `true` when glued to the previous stage by a condensed join.
    pub condensed_join: bool,
}

impl Stage {
    /// The stars of this stage as `(side, levels)`; empty for a trivial
    /// interval.
    pub fn stars(&self) -> Vec<(Side, Vec<i32>)> {
        let iv = self.interval;
        match iv.kind() {
            IntervalKind::Trivial => Vec::new(),
            IntervalKind::Symmetric => vec![(Side::Center, iv.letters().collect())],
            IntervalKind::Positive => {
                vec![(Side::Lower, (-iv.b()..=-iv.a()).collect()), (Side::Upper, (iv.a()..=iv.b()).collect())]
            }
        }
    }

    /// The star containing `level`, if any.
    pub fn star_of(&self, level: i32) -> Option<Side> {
        let iv = self.interval;
        match iv.kind() {
            IntervalKind::Trivial => None,
            IntervalKind::Symmetric => iv.contains(level).then_some(Side::Center),
            IntervalKind::Positive => {
                if iv.contains(level) {
                    Some(Side::Upper)
                } else if iv.contains(-level) {
                    Some(Side::Lower)
                } else {
                    None
                }
            }
        }
    }
}

/// A bundle of parallel edges replaced by one edge with a multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MergedEdge {
    /// The stage (from 1) whose star is the head of the edge.
    pub stage: usize,
    pub from: Vertex,
    pub to: Vertex,
    /// Levels carried by the bundle, increasing.
    pub levels: Vec<i32>,
}

impl MergedEdge {
    pub fn multiplicity(&self) -> usize {
        self.levels.len()
    }

    pub fn head_side(&self) -> Side {
        match self.to {
            Vertex::Star { side, .. } => side,
            _ => unreachable!("merged edges end at stars"),
        }
    }

    pub fn reflect(&self) -> Self {
        let mut levels: Vec<i32> = self.levels.iter().map(|l| -l).collect();
        levels.sort_unstable();
        Self { stage: self.stage, from: self.from.reflect(), to: self.to.reflect(), levels }
    }
}

/// An edge of the drawn network, after condensation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: Vertex,
    pub to: Vertex,
    pub multiplicity: usize,
}

/// A generalized type-BC star network: stages glued by ordinary or
/// condensed joins.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StarNetwork {
    rank: usize,
    stages: Vec<Stage>,
}

impl StarNetwork {
    /// The one-stage network `F_[a,b]`.
    pub fn simple_star(iv: Interval, n: usize) -> Result<Self> {
        let iv = iv.with_rank(n)?;
        Self::concatenate(n, &[(iv, Join::Ordinary)])
    }

    /// Glues stages left to right. The join attached to the first stage is
    /// ignored. Condensed joins are validated eagerly.
    pub fn concatenate(n: usize, stages: &[(Interval, Join)]) -> Result<Self> {
        check_rank(n)?;
        let mut out = Self { rank: n, stages: Vec::with_capacity(stages.len()) };
        for (k, &(iv, join)) in stages.iter().enumerate() {
            if iv.rank() != n {
                return Err(Error::RankMismatch { left: n, right: iv.rank() });
            }
            let condensed = k > 0 && join == Join::Condensed;
            out.stages.push(Stage { interval: iv, condensed_join: condensed });
            if condensed {
                let stage = k + 1;
                let bundles = out.bundles_into(stage);
                if bundles.is_empty() {
                    return Err(Error::NothingToCondense { stage });
                }
                if bundles.iter().any(|b| b.from.is_self_reflected() && b.to.is_self_reflected()) {
                    return Err(Error::SelfReflectedMerge { stage });
                }
            }
        }
        Ok(out)
    }

    /// Ordinary concatenation of the given intervals.
    pub fn ordinary(n: usize, intervals: &[Interval]) -> Result<Self> {
        let stages: Vec<_> = intervals.iter().map(|&iv| (iv, Join::Ordinary)).collect();
        Self::concatenate(n, &stages)
    }

    /// The wiring diagram of a generator word: `s_0` becomes `[-1,1]` and
    /// `s_i` becomes `[i,i+1]`.
    pub fn wiring_diagram(n: usize, gens: &[usize]) -> Result<Self> {
        let ivs = gens
            .iter()
            .map(|&i| {
                if i >= n {
                    Err(Error::GeneratorOutOfRange { index: i, rank: n })
                } else if i == 0 {
                    Interval::new(-1, 1, n)
                } else {
                    Interval::new(i as i32, i as i32 + 1, n)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::ordinary(n, &ivs)
    }

    /// Parses `"[1,3] o [2,3] * [1,2]"`: intervals separated by `o`
    /// (ordinary join) or `*` (condensed join). The names `F3412` and
    /// `F4231` are also accepted for ranks of at least 4.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed == "F3412" || trimmed == "F4231" {
            let net = builtin_network(trimmed)?;
            if n == 4 {
                return Ok(net);
            }
            let stages = net
                .stages
                .iter()
                .map(|s| Ok((s.interval.with_rank(n)?, Join::Ordinary)))
                .collect::<Result<Vec<_>>>()?;
            return Self::concatenate(n, &stages);
        }
        let mut stages = Vec::new();
        let mut join = Join::Ordinary;
        let mut pos = 0;
        let bytes = text.as_bytes();
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                let msg = if stages.is_empty() { "expected a stage" } else { "expected a stage after join" };
                return Err(Error::Parse { pos, msg: msg.into() });
            }
            if bytes[pos] != b'[' {
                return Err(Error::Parse { pos, msg: "expected '['".into() });
            }
            let close = text[pos..]
                .find(']')
                .map(|c| pos + c)
                .ok_or(Error::Parse { pos, msg: "unterminated interval".into() })?;
            let raw = parse_raw_interval(&text[pos..=close], pos)?;
            let iv = Interval::new(raw.a, raw.b, n).map_err(|e| match e {
                Error::InvalidInterval { .. } => {
                    Error::Parse { pos, msg: format!("invalid interval [{},{}] for rank {n}", raw.a, raw.b) }
                }
                other => other,
            })?;
            stages.push((iv, join));
            pos = close + 1;
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                break;
            }
            join = match bytes[pos] {
                b'o' => Join::Ordinary,
                b'*' => Join::Condensed,
                _ => return Err(Error::Parse { pos, msg: "expected 'o' or '*'".into() }),
            };
            pos += 1;
        }
        Self::concatenate(n, &stages)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn num_stages(&self) -> usize {
        self.stages.len()
    }

    pub fn intervals(&self) -> Vec<Interval> {
        self.stages.iter().map(|s| s.interval).collect()
    }

    pub fn has_condensed_joins(&self) -> bool {
        self.stages.iter().any(|s| s.condensed_join)
    }

    /// The underlying ordinary concatenation `G` of the same stages.
    pub fn expanded(&self) -> Self {
        let stages = self.stages.iter().map(|s| Stage { interval: s.interval, condensed_join: false }).collect();
        Self { rank: self.rank, stages }
    }

    /// Drops the last stage.
    pub fn truncated(&self) -> Option<Self> {
        let (_, rest) = self.stages.split_last()?;
        Some(Self { rank: self.rank, stages: rest.to_vec() })
    }

    /// Product of `|W_J|` over stages: the number of path families of the
    /// expanded network.
    pub fn family_count_estimate(&self) -> u128 {
        self.stages.iter().fold(1u128, |acc, s| acc.saturating_mul(s.interval.parabolic_order()))
    }

    /// Levels in `-n..=n` without zero, increasing.
    pub fn levels(&self) -> Vec<i32> {
        let n = self.rank as i32;
        (-n..=n).filter(|&l| l != 0).collect()
    }

    /// The vertex a path on `level` last passed through before entering
    /// stage `stage` (numbered from 1).
    pub fn last_vertex_before(&self, stage: usize, level: i32) -> Vertex {
        self.stages[..stage - 1]
            .iter()
            .enumerate()
            .rev()
            .find_map(|(k, s)| s.star_of(level).map(|side| Vertex::Star { stage: k + 1, side }))
            .unwrap_or(Vertex::Source(level))
    }

    /// Bundles of at least two parallel edges from one earlier star into a
    /// star of `stage`.
    fn bundles_into(&self, stage: usize) -> Vec<MergedEdge> {
        let mut out = Vec::new();
        for (side, levels) in self.stages[stage - 1].stars() {
            let mut groups: BTreeMap<Vertex, Vec<i32>> = BTreeMap::new();
            for l in levels {
                groups.entry(self.last_vertex_before(stage, l)).or_default().push(l);
            }
            for (from, levels) in groups {
                if matches!(from, Vertex::Star { .. }) && levels.len() >= 2 {
                    out.push(MergedEdge { stage, from, to: Vertex::Star { stage, side }, levels });
                }
            }
        }
        out
    }

    /// Every merged edge, both sides of the symmetry line.
    pub fn all_merged_edges(&self) -> Vec<MergedEdge> {
        (1..=self.stages.len())
            .filter(|&k| self.stages[k - 1].condensed_join)
            .flat_map(|k| self.bundles_into(k))
            .collect()
    }

    /// One record per merged edge on or above the symmetry line.
    pub fn merged_edges(&self) -> Vec<MergedEdge> {
        self.all_merged_edges().into_iter().filter(|e| e.levels[0] > 0).collect()
    }

    /// Multiplicities of the merged edges above the symmetry line.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.merged_edges().iter().map(MergedEdge::multiplicity).collect()
    }

    /// Interior vertices, stage by stage.
    pub fn interior_vertices(&self) -> Vec<Vertex> {
        self.stages
            .iter()
            .enumerate()
            .flat_map(|(k, s)| s.stars().into_iter().map(move |(side, _)| Vertex::Star { stage: k + 1, side }))
            .collect()
    }

    /// Edges after condensation, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let merged = self.all_merged_edges();
        let is_merged = |to: Vertex, level: i32| merged.iter().find(|m| m.to == to && m.levels.contains(&level));
        let mut out = Vec::new();
        for level in self.levels() {
            let mut prev = Vertex::Source(level);
            let stops = self
                .stages
                .iter()
                .enumerate()
                .filter_map(|(k, s)| s.star_of(level).map(|side| Vertex::Star { stage: k + 1, side }))
                .chain(std::iter::once(Vertex::Sink(level)));
            for v in stops {
                match is_merged(v, level) {
                    Some(m) if m.levels[0] == level => {
                        out.push(Edge { from: prev, to: v, multiplicity: m.multiplicity() })
                    }
                    Some(_) => {}
                    None => out.push(Edge { from: prev, to: v, multiplicity: 1 }),
                }
                prev = v;
            }
        }
        out.sort();
        out
    }

    /// Whether the reflection map carries the edge multiset onto itself,
    /// multiplicities included.
    pub fn is_reflection_symmetric(&self) -> bool {
        let edges = self.edges();
        let mut reflected: Vec<Edge> = edges
            .iter()
            .map(|e| Edge { from: e.from.reflect(), to: e.to.reflect(), multiplicity: e.multiplicity })
            .collect();
        reflected.sort();
        edges == reflected
    }

    /// Graphviz description: sources and sinks labeled by level, one node
    /// per star, merged edges labeled with their multiplicity. Positions put
    /// stages on the x axis and levels on the y axis.
    pub fn render_dot(&self) -> String {
        let mut out = String::new();
        let m = self.stages.len() + 1;
        out.push_str("digraph star_network {\n  rankdir=LR;\n  node [shape=point];\n");
        for level in self.levels() {
            let _ = writeln!(
                out,
                "  {} [shape=plaintext, label=\"{level}\", pos=\"0,{level}!\"];",
                Vertex::Source(level).dot_id()
            );
            let _ = writeln!(
                out,
                "  {} [shape=plaintext, label=\"{level}\", pos=\"{m},{level}!\"];",
                Vertex::Sink(level).dot_id()
            );
        }
        for (k, stage) in self.stages.iter().enumerate() {
            for (side, levels) in stage.stars() {
                let y = levels.iter().sum::<i32>() as f64 / levels.len() as f64;
                let v = Vertex::Star { stage: k + 1, side };
                let _ = writeln!(out, "  {} [pos=\"{},{}!\"];", v.dot_id(), k + 1, y);
            }
        }
        for e in self.edges() {
            if e.multiplicity > 1 {
                let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", e.from.dot_id(), e.to.dot_id(), e.multiplicity);
            } else {
                let _ = writeln!(out, "  {} -> {};", e.from.dot_id(), e.to.dot_id());
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Stages in the text grammar, e.g. `[1,3] o [2,3] * [1,2]`.
impl fmt::Display for StarNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.stages.iter().enumerate() {
            if k > 0 {
                f.write_str(if s.condensed_join { " * " } else { " o " })?;
            }
            write!(f, "{}", s.interval)?;
        }
        Ok(())
    }
}

/// `F3412 = F[2,3] o F[1,2] o F[3,4] o F[2,3]` and
/// `F4231 = F[1,2] o F[2,4] o F[1,2]`, both of rank 4.
pub fn builtin_network(name: &str) -> Result<StarNetwork> {
    let factors: &[(i32, i32)] = match name {
        "F3412" => &[(2, 3), (1, 2), (3, 4), (2, 3)],
        "F4231" => &[(1, 2), (2, 4), (1, 2)],
        _ => return Err(Error::UnknownNetwork(name.to_string())),
    };
    let ivs = factors.iter().map(|&(a, b)| Interval::new(a, b, 4)).collect::<Result<Vec<_>>>()?;
    StarNetwork::ordinary(4, &ivs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::all_intervals;

    fn iv(a: i32, b: i32, n: usize) -> Interval {
        Interval::new(a, b, n).unwrap()
    }

    #[test]
    fn simple_star_shapes() {
        for n in 1..=4 {
            for i in all_intervals(n) {
                let net = StarNetwork::simple_star(i, n).unwrap();
                let edges = net.edges();
                let interior = net.interior_vertices();
                match i.kind() {
                    IntervalKind::Trivial => {
                        assert!(interior.is_empty());
                        assert_eq!(edges.len(), 2 * n);
                    }
                    IntervalKind::Symmetric => {
                        assert_eq!(interior.len(), 1);
                        let deg = edges.iter().filter(|e| e.from == interior[0] || e.to == interior[0]).count();
                        assert_eq!(deg, 2 * 2 * i.b() as usize);
                    }
                    IntervalKind::Positive => assert_eq!(interior.len(), 2),
                }
                assert!(net.is_reflection_symmetric());
            }
        }
        assert!(StarNetwork::simple_star(iv(1, 3, 3), 2).is_err());
    }

    #[test]
    fn upper_and_lower_stars() {
        let net = StarNetwork::simple_star(iv(2, 3, 3), 3).unwrap();
        let stars = net.stages()[0].stars();
        assert_eq!(stars, vec![(Side::Lower, vec![-3, -2]), (Side::Upper, vec![2, 3])]);
    }

    #[test]
    fn concatenation_example() {
        let net = StarNetwork::parse("[1,3] o [2,3] o [1,2] o [-1,1]", 3).unwrap();
        assert_eq!(net.num_stages(), 4);
        assert_eq!(net.interior_vertices().len(), 7);
        assert!(net.merged_edges().is_empty());
        assert!(net.is_reflection_symmetric());
        assert_eq!(net.to_string(), "[1,3] o [2,3] o [1,2] o [-1,1]");
    }

    #[test]
    fn condensed_example() {
        let net = StarNetwork::parse("[-2,2] o [-1,1] o [1,2] * [-2,2]", 2).unwrap();
        let merged = net.merged_edges();
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].multiplicity(), 2);
        assert_eq!(merged[0].stage, 4);
        assert_eq!(merged[0].from, Vertex::Star { stage: 3, side: Side::Upper });
        assert_eq!(merged[0].to, Vertex::Star { stage: 4, side: Side::Center });
        assert_eq!(net.all_merged_edges().len(), 2);
        assert!(net.is_reflection_symmetric());
        assert_eq!(net.expanded().to_string(), "[-2,2] o [-1,1] o [1,2] o [-2,2]");
        assert!(net.render_dot().contains("st3_u -> st4_c [label=\"2\"];"));
        assert!(net.render_dot().contains("st3_l -> st4_c [label=\"2\"];"));
    }

    #[test]
    fn condensed_join_validation() {
        assert!(matches!(StarNetwork::parse("[1,2] * [3,4]", 4), Err(Error::NothingToCondense { stage: 2 })));
        assert!(matches!(StarNetwork::parse("[-2,2] * [-2,2]", 2), Err(Error::SelfReflectedMerge { stage: 2 })));
        // bundles may skip over stages that leave the levels alone
        let net = StarNetwork::parse("[1,2] o [3,4] * [1,2]", 4).unwrap();
        assert_eq!(net.merged_edges()[0].from, Vertex::Star { stage: 1, side: Side::Upper });
    }

    #[test]
    fn two_merges() {
        let net = StarNetwork::parse("[1,2] * [-3,3] * [1,3]", 3).unwrap();
        assert_eq!(net.multiplicities(), vec![2, 3]);
        assert!(net.is_reflection_symmetric());
    }

    #[test]
    fn builtins() {
        let f = builtin_network("F3412").unwrap();
        assert_eq!(f.num_stages(), 4);
        assert_eq!(f.rank(), 4);
        assert_eq!(builtin_network("F4231").unwrap().num_stages(), 3);
        assert!(matches!(builtin_network("F9999"), Err(Error::UnknownNetwork(_))));
        assert_eq!(StarNetwork::parse("F4231", 4).unwrap(), builtin_network("F4231").unwrap());
        assert_eq!(StarNetwork::parse("F4231", 5).unwrap().rank(), 5);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(StarNetwork::parse("", 2), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(StarNetwork::parse("[1,2] o", 2), Err(Error::Parse { pos: 7, .. })));
        assert!(matches!(StarNetwork::parse("[1,2] x [1,2]", 2), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(StarNetwork::parse("[1,2] o [1,3]", 2), Err(Error::Parse { pos: 8, .. })));
        assert!(StarNetwork::parse("[1,2", 2).is_err());
    }

    #[test]
    fn identity_wiring_dot() {
        let net = StarNetwork::simple_star(iv(1, 1, 1), 1).unwrap();
        let dot = net.render_dot();
        assert!(dot.contains("src_m1 -> snk_m1;"));
        assert!(dot.contains("src_p1 -> snk_p1;"));
        assert_eq!(dot.matches("->").count(), 2);
    }

    #[test]
    fn wiring_diagrams() {
        let net = StarNetwork::wiring_diagram(3, &[0, 1, 2]).unwrap();
        assert_eq!(net.to_string(), "[-1,1] o [1,2] o [2,3]");
        assert!(StarNetwork::wiring_diagram(2, &[2]).is_err());
    }
}
