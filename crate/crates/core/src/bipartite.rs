//! Tree families and packing-number bounds for complete bipartite graphs.
//!
//! Write `z = m1 + s - m2` and `i = |S ∩ X|`. For a mixed terminal set the
//! base family is the I-type trees: `a1 = min(m1-i, m2-(s-i))` trees, each
//! spanning the terminals through one fresh relay per side. Whichever side
//! still has unused vertices afterwards contributes a secondary family —
//! either explicit one-relay trees (I_X / I_Y type) or spanning trees of a
//! complete bipartite subgraph pruned down to the terminals — and the best
//! admissible union realizes the piecewise lower bound `f(i)` evaluated by
//! [`lower_bound_bipartite`]. One-sided terminal sets are served exactly by
//! [`build_star_family`].
//!
//! Constructions assume the index-based terminal layout `x_1..x_i`,
//! `y_1..y_{s-i}`; arbitrary terminal ids are relabeled onto that layout
//! and the finished trees are relabeled back, which the symmetry of
//! `K_{m1,m2}` keeps sound. Every constructor re-verifies its output.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{BipartiteLabeling, Edge, Graph, Side};
use crate::prune::prune_to_subset;
use crate::tree::{SteinerTree, TerminalSet, TreeFamily};
use crate::verify::ensure_independent;
use crate::VertexId;

/// Which side keeps surplus vertices once the I-type family is built.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SurplusSide {
    X,
    Y,
}

/// Regime of the piecewise bound `f(i)`; see [`lower_bound_bipartite`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoundCase {
    /// `S` inside X; the packing number is exactly `m2`.
    StarX,
    /// `S` inside Y; the packing number is exactly `m1`.
    StarY,
    /// `s <= m2 - m1 + 2`; the packing number is exactly `m1`.
    ExactM1,
    /// X surplus, relay trees dominate: `f = m1 - i`.
    XRelay,
    /// X surplus, pruned spanning trees dominate:
    /// `f = m2 - (s-i) + floor((z-i)/2)`.
    XCist,
    /// Y surplus, pruned spanning trees dominate: `f = m1 - i + floor(i/2)`.
    YCist,
    /// Y surplus, relay trees dominate: `f = m2 - s + i`.
    YRelay,
    /// Y surplus saturates the X side: `f = m1`.
    YFull,
}

impl fmt::Display for BoundCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundCase::StarX => "star-X",
            BoundCase::StarY => "star-Y",
            BoundCase::ExactM1 => "exact-m1",
            BoundCase::XRelay => "x-relay",
            BoundCase::XCist => "x-cist",
            BoundCase::YCist => "y-cist",
            BoundCase::YRelay => "y-relay",
            BoundCase::YFull => "y-full",
        };
        f.write_str(s)
    }
}

/// One evaluated point of the bound function.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BoundEntry {
    pub i: usize,
    pub case: BoundCase,
    pub value: usize,
}

/// Evaluation of the bound over every feasible terminal split of a given
/// size, including the one-sided splits, plus the minimum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundReport {
    pub m1: usize,
    pub m2: usize,
    pub s: usize,
    pub per_i: Vec<BoundEntry>,
    pub minimum: usize,
    pub argmin_i: usize,
    /// `m1 - floor((z+2)/3)` when `s >= m2 - m1 + 3`; the integer form of
    /// the closed rational bound.
    pub closed_form_bound: Option<usize>,
}

/// The candidate families for one mixed terminal split. `a1` is the size of
/// the I-type family; exactly the fields of the applicable surplus branch
/// are populated.
#[derive(Clone, Debug)]
pub struct FamilyCatalog {
    pub a1: usize,
    pub i_type: TreeFamily,
    pub ix_type: Option<TreeFamily>,
    pub x_pruned_cists: Option<TreeFamily>,
    pub iy_type: Option<TreeFamily>,
    pub y_pruned_cists: Option<TreeFamily>,
}

/// Canonical-relabeling context: construction happens on the index layout,
/// finished trees are mapped back to the caller's vertex ids.
struct Ctx {
    g: Graph,
    m1: usize,
    m2: usize,
    /// |S ∩ X|
    i: usize,
    /// |S|
    s: usize,
    from_canonical: Vec<VertexId>,
    terminals: TerminalSet,
}

impl Ctx {
    fn new(bl: &BipartiteLabeling, terminals: &TerminalSet) -> Result<Ctx> {
        let (g, _) = Graph::complete_bipartite(bl.m1(), bl.m2())?;
        terminals.validate_against(&g)?;
        let mut sx = Vec::new();
        let mut sy = Vec::new();
        for v in terminals.iter() {
            match bl.side(v) {
                Side::X => sx.push(v),
                Side::Y => sy.push(v),
            }
        }
        let mut from_canonical = Vec::with_capacity(bl.vertex_count());
        from_canonical.extend(&sx);
        from_canonical.extend(bl.x_ids().into_iter().filter(|v| !terminals.contains(*v)));
        from_canonical.extend(&sy);
        from_canonical.extend(bl.y_ids().into_iter().filter(|v| !terminals.contains(*v)));
        Ok(Ctx {
            g,
            m1: bl.m1(),
            m2: bl.m2(),
            i: sx.len(),
            s: sx.len() + sy.len(),
            from_canonical,
            terminals: terminals.clone(),
        })
    }

    /// Canonical id of `x_i`, 1-based.
    fn x(&self, i: usize) -> VertexId {
        debug_assert!(i >= 1 && i <= self.m1);
        (i - 1) as VertexId
    }

    /// Canonical id of `y_j`, 1-based.
    fn y(&self, j: usize) -> VertexId {
        debug_assert!(j >= 1 && j <= self.m2);
        (self.m1 + j - 1) as VertexId
    }

    fn a1(&self) -> usize {
        (self.m1 - self.i).min(self.m2 - (self.s - self.i))
    }

    fn require_mixed(&self) -> Result<()> {
        if self.i >= 1 && self.s - self.i >= 1 {
            Ok(())
        } else {
            Err(Error::TerminalsNotMixed)
        }
    }

    fn map_tree(&self, t: &SteinerTree) -> SteinerTree {
        let map = |v: VertexId| self.from_canonical[v as usize];
        SteinerTree::new(
            t.vertices().map(map),
            t.edges().map(|e| {
                let (a, b) = e.endpoints();
                Edge::new(map(a), map(b)).unwrap()
            }),
        )
    }

    /// Maps canonical trees back to original ids, wraps them into a family,
    /// and refuses to release anything the verifier rejects.
    fn family(&self, canonical_trees: Vec<SteinerTree>) -> Result<TreeFamily> {
        let trees = canonical_trees.iter().map(|t| self.map_tree(t)).collect();
        ensure_independent(TreeFamily::new(
            self.g.clone(),
            self.terminals.clone(),
            trees,
        ))
    }

    /// I-type trees: tree `j` spans the terminals through the fresh pair
    /// `x_{i+j}`, `y_{s-i+j}`.
    fn i_type_trees(&self) -> Vec<SteinerTree> {
        let (i, s) = (self.i, self.s);
        (1..=self.a1())
            .map(|j| {
                let relay_x = self.x(i + j);
                let relay_y = self.y(s - i + j);
                let mut edges = vec![Edge::new(relay_x, relay_y).unwrap()];
                for t in 1..=i {
                    edges.push(Edge::new(relay_y, self.x(t)).unwrap());
                }
                for t in 1..=(s - i) {
                    edges.push(Edge::new(relay_x, self.y(t)).unwrap());
                }
                SteinerTree::from_edges(edges)
            })
            .collect()
    }

    /// I_X-type trees (X surplus): tree `k` uses the fresh `x_{i+a1+k}` to
    /// reach the Y-terminals and the terminal `y_k` to reach the
    /// X-terminals.
    fn ix_trees(&self) -> Vec<SteinerTree> {
        let (i, s, a1) = (self.i, self.s, self.a1());
        let count = (s - i).min((self.m1 as i64 - i as i64 - a1 as i64).max(0) as usize);
        (1..=count)
            .map(|k| {
                let relay_x = self.x(i + a1 + k);
                let hub_y = self.y(k);
                let mut edges = Vec::new();
                for t in 1..=(s - i) {
                    edges.push(Edge::new(relay_x, self.y(t)).unwrap());
                }
                for t in 1..=i {
                    edges.push(Edge::new(hub_y, self.x(t)).unwrap());
                }
                SteinerTree::from_edges(edges)
            })
            .collect()
    }

    /// I_Y-type trees (Y surplus): tree `l` uses the fresh `y_{s-i+a1+l}`
    /// to reach the X-terminals and the terminal `x_l` to reach the
    /// Y-terminals. With `i = 1` the fresh vertex would be a non-terminal
    /// leaf, so no valid tree of this shape exists and the family is empty.
    fn iy_trees(&self) -> Vec<SteinerTree> {
        let (i, s, a1) = (self.i, self.s, self.a1());
        if i < 2 {
            return Vec::new();
        }
        let count = i.min((self.m2 as i64 - (s - i) as i64 - a1 as i64).max(0) as usize);
        (1..=count)
            .map(|l| {
                let relay_y = self.y(s - i + a1 + l);
                let hub_x = self.x(l);
                let mut edges = Vec::new();
                for t in 1..=i {
                    edges.push(Edge::new(relay_y, self.x(t)).unwrap());
                }
                for t in 1..=(s - i) {
                    edges.push(Edge::new(hub_x, self.y(t)).unwrap());
                }
                SteinerTree::from_edges(edges)
            })
            .collect()
    }

    /// The induced tree on `S_1` (one X-terminal): a star rooted at `x_1`.
    fn induced_star_tree(&self) -> SteinerTree {
        debug_assert_eq!(self.i, 1);
        SteinerTree::from_edges(
            (1..=(self.s - 1)).map(|t| Edge::new(self.x(1), self.y(t)).unwrap()),
        )
    }

    /// Spanning trees of the surplus-side complete bipartite subgraph,
    /// pruned down to the terminals.
    fn pruned_cist_trees(&self, side: SurplusSide) -> Result<Vec<SteinerTree>> {
        let (i, s, a1) = (self.i, self.s, self.a1());
        let (xs, ys): (Vec<VertexId>, Vec<VertexId>) = match side {
            SurplusSide::X => (
                (1..=i)
                    .chain((i + a1 + 1)..=self.m1)
                    .map(|t| self.x(t))
                    .collect(),
                (1..=(s - i)).map(|t| self.y(t)).collect(),
            ),
            SurplusSide::Y => (
                (1..=i).map(|t| self.x(t)).collect(),
                (1..=(s - i))
                    .chain((s - i + a1 + 1)..=self.m2)
                    .map(|t| self.y(t))
                    .collect(),
            ),
        };
        if xs.is_empty() || ys.is_empty() {
            return Err(Error::DegenerateSubgraph(
                "the surplus-side subgraph has an empty side",
            ));
        }
        let spanning = if xs.len().min(ys.len()) >= 2 {
            paired_bipartite_cists(&xs, &ys)
        } else {
            vec![double_star(&xs, &ys)]
        };
        let s_old = TerminalSet::new(xs.iter().chain(&ys).copied())?;
        let s_new = TerminalSet::new(
            (1..=i)
                .map(|t| self.x(t))
                .chain((1..=(s - i)).map(|t| self.y(t))),
        )?;
        spanning
            .iter()
            .map(|t| prune_to_subset(t, &s_old, &s_new))
            .collect()
    }
}

/// Pairwise-independent spanning trees of the complete bipartite graph over
/// the given vertex id lists, `floor(min/2)` of them. Pairing runs along
/// the smaller side: tree `t` owns the pairs `(p_{2t-1}, p_{2t})` and
/// `(q_{2t-1}, q_{2t})` joined by the spine `p1-q1-p2-q2`; foreign pairs
/// attach crosswise, surplus vertices attach to `p1` / `q1` and stay leaves
/// everywhere.
fn paired_bipartite_cists(xs: &[VertexId], ys: &[VertexId]) -> Vec<SteinerTree> {
    let (ps, qs) = if xs.len() <= ys.len() {
        (xs, ys)
    } else {
        (ys, xs)
    };
    let t_count = ps.len() / 2;
    debug_assert!(t_count >= 1);
    let all: Vec<VertexId> = xs.iter().chain(ys).copied().collect();
    (0..t_count)
        .map(|t| {
            let (p1, p2) = (ps[2 * t], ps[2 * t + 1]);
            let (q1, q2) = (qs[2 * t], qs[2 * t + 1]);
            let mut edges = vec![
                Edge::new(p1, q1).unwrap(),
                Edge::new(q1, p2).unwrap(),
                Edge::new(p2, q2).unwrap(),
            ];
            for j in 0..t_count {
                if j == t {
                    continue;
                }
                edges.push(Edge::new(qs[2 * j], p1).unwrap());
                edges.push(Edge::new(qs[2 * j + 1], p2).unwrap());
                edges.push(Edge::new(ps[2 * j], q2).unwrap());
                edges.push(Edge::new(ps[2 * j + 1], q1).unwrap());
            }
            for &q in &qs[2 * t_count..] {
                edges.push(Edge::new(q, p1).unwrap());
            }
            for &p in &ps[2 * t_count..] {
                edges.push(Edge::new(p, q1).unwrap());
            }
            SteinerTree::new(all.iter().copied(), edges)
        })
        .collect()
}

/// The unique-convention spanning tree when one side has a single usable
/// pair partner: `xs[0]` reaches every y, `ys[0]` picks up the other x's.
fn double_star(xs: &[VertexId], ys: &[VertexId]) -> SteinerTree {
    let mut edges: Vec<Edge> = ys.iter().map(|&y| Edge::new(xs[0], y).unwrap()).collect();
    for &x in &xs[1..] {
        edges.push(Edge::new(x, ys[0]).unwrap());
    }
    SteinerTree::new(xs.iter().chain(ys).copied(), edges)
}

/// `m2` (resp. `m1`) stars for a terminal set inside X (resp. Y): each tree
/// is one opposite-side vertex joined to every terminal. This realizes the
/// exact packing number for one-sided terminal sets.
pub fn build_star_family(bl: &BipartiteLabeling, terminals: &TerminalSet) -> Result<TreeFamily> {
    let ctx = Ctx::new(bl, terminals)?;
    let trees: Vec<SteinerTree> = if ctx.i == ctx.s {
        (1..=ctx.m2)
            .map(|j| {
                SteinerTree::from_edges((1..=ctx.s).map(|t| Edge::new(ctx.y(j), ctx.x(t)).unwrap()))
            })
            .collect()
    } else if ctx.i == 0 {
        (1..=ctx.m1)
            .map(|l| {
                SteinerTree::from_edges((1..=ctx.s).map(|t| Edge::new(ctx.x(l), ctx.y(t)).unwrap()))
            })
            .collect()
    } else {
        return Err(Error::TerminalsNotOneSided);
    };
    ctx.family(trees)
}

/// The I-type family; empty when no fresh vertex pair exists.
pub fn build_i_type(bl: &BipartiteLabeling, terminals: &TerminalSet) -> Result<TreeFamily> {
    let ctx = Ctx::new(bl, terminals)?;
    ctx.require_mixed()?;
    ctx.family(ctx.i_type_trees())
}

/// The I_X-type family. Requires the X-surplus branch `a1 = m2 - (s - i)`;
/// the returned family is verified both alone and together with the I-type
/// family.
pub fn build_ix_type(bl: &BipartiteLabeling, terminals: &TerminalSet) -> Result<TreeFamily> {
    let ctx = Ctx::new(bl, terminals)?;
    ctx.require_mixed()?;
    if ctx.a1() != ctx.m2 - (ctx.s - ctx.i) {
        return Err(Error::WrongBranch("the X side has no surplus here"));
    }
    let ix = ctx.ix_trees();
    let mut union = ctx.i_type_trees();
    union.extend(ix.iter().cloned());
    ctx.family(union)?;
    ctx.family(ix)
}

/// The I_Y-type family. Requires the Y-surplus branch `a1 = m1 - i`; empty
/// for `i = 1`, where no tree of this shape is well-formed.
pub fn build_iy_type(bl: &BipartiteLabeling, terminals: &TerminalSet) -> Result<TreeFamily> {
    let ctx = Ctx::new(bl, terminals)?;
    ctx.require_mixed()?;
    if ctx.a1() != ctx.m1 - ctx.i {
        return Err(Error::WrongBranch("the Y side has no surplus here"));
    }
    let iy = ctx.iy_trees();
    let mut union = ctx.i_type_trees();
    union.extend(iy.iter().cloned());
    ctx.family(union)?;
    ctx.family(iy)
}

/// `floor(m1/2)` completely independent spanning trees of `K_{m1,m2}`.
pub fn build_cists_bipartite(m1: usize, m2: usize) -> Result<TreeFamily> {
    let (g, bl) = Graph::complete_bipartite(m1, m2)?;
    let trees = paired_bipartite_cists(&bl.x_ids(), &bl.y_ids());
    let terminals = TerminalSet::new(g.vertices())?;
    ensure_independent(TreeFamily::new(g, terminals, trees))
}

/// The pruned-spanning-tree family of the requested surplus branch:
/// spanning trees of the surplus subgraph (a single one when a side cannot
/// be paired), reduced to the terminals by leaf deletion.
pub fn build_pruned_cist_family(
    bl: &BipartiteLabeling,
    terminals: &TerminalSet,
    side: SurplusSide,
) -> Result<TreeFamily> {
    let ctx = Ctx::new(bl, terminals)?;
    ctx.require_mixed()?;
    match side {
        SurplusSide::X if ctx.a1() != ctx.m2 - (ctx.s - ctx.i) => {
            return Err(Error::WrongBranch("the X side has no surplus here"));
        }
        SurplusSide::Y if ctx.a1() != ctx.m1 - ctx.i => {
            return Err(Error::WrongBranch("the Y side has no surplus here"));
        }
        _ => {}
    }
    let pruned = ctx.pruned_cist_trees(side)?;
    let mut union = ctx.i_type_trees();
    union.extend(pruned.iter().cloned());
    ctx.family(union)?;
    ctx.family(pruned)
}

/// Builds every candidate family for a mixed terminal set: the I-type base
/// plus, per applicable surplus branch, the relay family and the pruned
/// spanning-tree family.
pub fn family_catalog(bl: &BipartiteLabeling, terminals: &TerminalSet) -> Result<FamilyCatalog> {
    let ctx = Ctx::new(bl, terminals)?;
    ctx.require_mixed()?;
    let a1 = ctx.a1();
    let x_branch = a1 == ctx.m2 - (ctx.s - ctx.i);
    let y_branch = a1 == ctx.m1 - ctx.i;
    Ok(FamilyCatalog {
        a1,
        i_type: ctx.family(ctx.i_type_trees())?,
        ix_type: x_branch.then(|| build_ix_type(bl, terminals)).transpose()?,
        x_pruned_cists: x_branch
            .then(|| build_pruned_cist_family(bl, terminals, SurplusSide::X))
            .transpose()?,
        iy_type: y_branch.then(|| build_iy_type(bl, terminals)).transpose()?,
        y_pruned_cists: y_branch
            .then(|| build_pruned_cist_family(bl, terminals, SurplusSide::Y))
            .transpose()?,
    })
}

/// The piecewise lower bound `f(i)` on the packing number of a mixed
/// terminal set with `i` X-terminals, together with its regime. All regime
/// boundaries are decided in exact integer arithmetic. In the
/// [`BoundCase::ExactM1`] regime the value is exact, not just a bound.
pub fn lower_bound_bipartite(
    m1: usize,
    m2: usize,
    s: usize,
    i: usize,
) -> Result<(usize, BoundCase)> {
    BipartiteLabeling::new(m1, m2)?;
    if s < 2 || s > m1 + m2 {
        return Err(Error::OutOfRange(format!(
            "terminal count s={s} infeasible for K_{{{m1},{m2}}}"
        )));
    }
    let lo = 1usize.max(s.saturating_sub(m2));
    let hi = m1.min(s - 1);
    if i < lo || i > hi {
        return Err(Error::OutOfRange(format!(
            "i={i} outside the feasible mixed range {lo}..={hi}"
        )));
    }
    if s + m1 <= m2 + 2 {
        return Ok((m1, BoundCase::ExactM1));
    }
    let z = m1 + s - m2; // >= 3 here
    let value_case = if 3 * i <= z {
        (m1 - i, BoundCase::XRelay)
    } else if 2 * i <= z {
        (m2 - (s - i) + (z - i) / 2, BoundCase::XCist)
    } else if 3 * i <= 2 * z {
        (m1 - i + i / 2, BoundCase::YCist)
    } else if i <= z {
        (m2 + i - s, BoundCase::YRelay)
    } else {
        (m1, BoundCase::YFull)
    };
    Ok(value_case)
}

/// Evaluates the bound at every feasible split `i` (the one-sided splits
/// included, valued by the exact star-family numbers) and reports the
/// minimum. The closed-form floor bound is attached when it applies.
pub fn bound_report(m1: usize, m2: usize, s: usize) -> Result<BoundReport> {
    BipartiteLabeling::new(m1, m2)?;
    if s < 2 || s > m1 + m2 {
        return Err(Error::OutOfRange(format!(
            "terminal count s={s} infeasible for K_{{{m1},{m2}}}"
        )));
    }
    let mut per_i = Vec::new();
    if s <= m2 {
        per_i.push(BoundEntry {
            i: 0,
            case: BoundCase::StarY,
            value: m1,
        });
    }
    let lo = 1usize.max(s.saturating_sub(m2));
    let hi = m1.min(s - 1);
    for i in lo..=hi {
        let (value, case) = lower_bound_bipartite(m1, m2, s, i)?;
        per_i.push(BoundEntry { i, case, value });
    }
    if s <= m1 {
        per_i.push(BoundEntry {
            i: s,
            case: BoundCase::StarX,
            value: m2,
        });
    }
    let best = per_i
        .iter()
        .min_by_key(|e| (e.value, e.i))
        .expect("the mixed range is never empty");
    let closed_form_bound = (s + m1 >= m2 + 3).then(|| {
        let z = m1 + s - m2;
        m1 - (z + 2).div_euclid(3)
    });
    Ok(BoundReport {
        m1,
        m2,
        s,
        minimum: best.value,
        argmin_i: best.i,
        per_i,
        closed_form_bound,
    })
}

/// Builds the concrete family realizing `f(i)` for a mixed terminal set:
/// the I-type base plus the larger of the two secondary families on the
/// applicable surplus branch (the relay variant on ties). In the exact
/// `i = 1` regime the induced star on `S_1` is prepended instead.
pub fn assemble_max_family(bl: &BipartiteLabeling, terminals: &TerminalSet) -> Result<TreeFamily> {
    let ctx = Ctx::new(bl, terminals)?;
    ctx.require_mixed()?;
    let (bound, case) = lower_bound_bipartite(ctx.m1, ctx.m2, ctx.s, ctx.i)?;
    let mut trees: Vec<SteinerTree> = Vec::new();
    match case {
        BoundCase::ExactM1 if ctx.i == 1 => {
            trees.push(ctx.induced_star_tree());
            trees.extend(ctx.i_type_trees());
        }
        BoundCase::XRelay | BoundCase::XCist => {
            trees.extend(ctx.i_type_trees());
            let relay = ctx.ix_trees();
            let pruned = ctx.pruned_cist_trees(SurplusSide::X)?;
            trees.extend(if pruned.len() > relay.len() {
                pruned
            } else {
                relay
            });
        }
        _ => {
            // ExactM1 with i >= 2, YCist, YRelay, YFull: the Y side holds
            // the surplus.
            trees.extend(ctx.i_type_trees());
            let relay = ctx.iy_trees();
            let pruned = ctx.pruned_cist_trees(SurplusSide::Y)?;
            trees.extend(if pruned.len() > relay.len() {
                pruned
            } else {
                relay
            });
        }
    }
    let family = ctx.family(trees)?;
    if family.len() < bound {
        return Err(Error::Internal(format!(
            "assembled {} trees, below the bound {bound} (case {case})",
            family.len()
        )));
    }
    Ok(family)
}
