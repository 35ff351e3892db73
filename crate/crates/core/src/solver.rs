//! Exhaustive, symmetry-pruned search for the exact packing number
//! `kappa*` on small hosts. This is the ground truth every formula and
//! bound is checked against.
//!
//! The search runs in two phases. First every S-Steiner tree compatible
//! with a per-vertex internal-allowed mask is enumerated, once, in a
//! canonical order (ascending edge count, then lexicographic edge list).
//! Then a depth-first packing adds trees in strictly increasing canonical
//! position — which removes the `k!` permutation symmetry — while tracking
//! exactly the two facts that characterize complete independence: the set
//! of used edges and the set of vertices already internal somewhere.
//!
//! Pruning uses three sound upper bounds on how many trees can still fit:
//! free edges divided by the minimum tree size, the free degree at each
//! terminal, and (on bipartite hosts) the count of vertices still allowed
//! to serve as the internal relay each tree needs opposite a side holding
//! two or more terminals. Exceeding the node or time budget yields an
//! explicit indeterminate result carrying certified bounds, never a silent
//! wrong answer.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::tree::{SteinerTree, TerminalSet, TreeFamily};
use crate::verify::verify_definitional;
use crate::VertexId;

const MAX_VERTICES: usize = 64;
const MAX_EDGES: usize = 128;
const MAX_RELAYS: usize = 20;

/// Budgets and toggles for the exact search.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Stop deepening once a family of this size is found; the result is
    /// then a certified lower bound rather than an exact value.
    pub max_trees: Option<usize>,
    /// Limit on search nodes (accepted tree extensions plus enumeration
    /// steps). Must be positive.
    pub node_budget: u64,
    /// Collapse symmetric terminal subsets in the all-subsets sweep when
    /// the host is complete or complete bipartite.
    pub use_symmetry: bool,
    /// Optional wall-clock limit, checked periodically.
    pub time_budget: Option<Duration>,
    /// Worker threads for the all-subsets sweep (each subset is searched
    /// sequentially, so results do not depend on this).
    pub jobs: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_trees: None,
            node_budget: 200_000_000,
            use_symmetry: true,
            time_budget: None,
            jobs: 1,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.node_budget == 0
            || self.max_trees == Some(0)
            || self.time_budget == Some(Duration::ZERO)
        {
            return Err(Error::InvalidSearchConfig);
        }
        Ok(())
    }
}

/// Either the exact packing number or certified bounds on it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KappaOutcome {
    Exact(usize),
    Indeterminate { lower: usize, upper: usize },
}

impl KappaOutcome {
    pub fn lower(&self) -> usize {
        match *self {
            KappaOutcome::Exact(v) => v,
            KappaOutcome::Indeterminate { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> usize {
        match *self {
            KappaOutcome::Exact(v) => v,
            KappaOutcome::Indeterminate { upper, .. } => upper,
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match *self {
            KappaOutcome::Exact(v) => Some(v),
            KappaOutcome::Indeterminate { .. } => None,
        }
    }
}

/// Result of one packing-number search.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub outcome: KappaOutcome,
    /// Search nodes consumed.
    pub nodes: u64,
    /// Number of candidate trees enumerated.
    pub candidates: usize,
}

/// Result of an all-subsets sweep.
#[derive(Clone, Debug)]
pub struct GeneralizedReport {
    pub outcome: KappaOutcome,
    pub nodes: u64,
    /// Terminal subsets actually searched (after symmetry reduction).
    pub subsets: usize,
}

struct Budget {
    remaining: u64,
    deadline: Option<Instant>,
    ticks: u64,
    exhausted: bool,
}

impl Budget {
    fn new(cfg: &SearchConfig) -> Budget {
        Budget {
            remaining: cfg.node_budget,
            deadline: cfg.time_budget.map(|d| Instant::now() + d),
            ticks: 0,
            exhausted: false,
        }
    }

    fn unlimited() -> Budget {
        Budget {
            remaining: u64::MAX,
            deadline: None,
            ticks: 0,
            exhausted: false,
        }
    }

    /// Consumes one node; returns false once the budget is gone.
    fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        if self.remaining == 0 {
            self.exhausted = true;
            return false;
        }
        self.remaining -= 1;
        self.ticks += 1;
        if self.ticks.is_multiple_of(8192) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.exhausted = true;
                    return false;
                }
            }
        }
        true
    }
}

struct HostIndex {
    edge_list: Vec<Edge>,
    incident_mask: Vec<u128>,
}

impl HostIndex {
    fn build(g: &Graph) -> Result<HostIndex> {
        if g.vertex_count() > MAX_VERTICES {
            return Err(Error::HostTooLarge(format!(
                "{} vertices exceeds the solver limit of {MAX_VERTICES}",
                g.vertex_count()
            )));
        }
        if g.edge_count() > MAX_EDGES {
            return Err(Error::HostTooLarge(format!(
                "{} edges exceeds the solver limit of {MAX_EDGES}",
                g.edge_count()
            )));
        }
        let edge_list: Vec<Edge> = g.edges().collect();
        let mut incident_mask = vec![0u128; g.vertex_count()];
        for (idx, e) in edge_list.iter().enumerate() {
            let (a, b) = e.endpoints();
            incident_mask[a as usize] |= 1 << idx;
            incident_mask[b as usize] |= 1 << idx;
        }
        Ok(HostIndex {
            edge_list,
            incident_mask,
        })
    }
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    edge_mask: u128,
    internal_mask: u64,
    vertex_mask: u64,
}

fn candidate_order(a: &Candidate, b: &Candidate) -> std::cmp::Ordering {
    let ca = a.edge_mask.count_ones();
    let cb = b.edge_mask.count_ones();
    ca.cmp(&cb).then_with(|| {
        let diff = a.edge_mask ^ b.edge_mask;
        if diff == 0 {
            std::cmp::Ordering::Equal
        } else if a.edge_mask & (diff & diff.wrapping_neg()) != 0 {
            // a owns the lowest differing edge index: lexicographically first
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    })
}

/// Enumerates, for one vertex subset, every spanning tree whose leaves are
/// all terminals and whose internal vertices respect the allowed mask.
/// Classic include/exclude recursion over the subset's edges: an edge is
/// included only if it joins two components, excluded only if the rest can
/// still connect everything, with degree-potential pruning on top.
fn enumerate_trees_on(
    host: &HostIndex,
    verts: &[VertexId],
    terminal_mask: u64,
    internal_cap: &[u8],
    budget: &mut Budget,
    out: &mut Vec<Candidate>,
) {
    let nv = verts.len();
    let target = nv - 1;
    let mut local = [usize::MAX; MAX_VERTICES];
    let mut vertex_mask = 0u64;
    for (k, &v) in verts.iter().enumerate() {
        local[v as usize] = k;
        vertex_mask |= 1 << v;
    }
    let mut edges: Vec<(usize, usize, usize)> = Vec::new(); // (global, la, lb)
    for (idx, e) in host.edge_list.iter().enumerate() {
        let (a, b) = e.endpoints();
        let (la, lb) = (local[a as usize], local[b as usize]);
        if la != usize::MAX && lb != usize::MAX {
            edges.push((idx, la, lb));
        }
    }
    if edges.len() < target {
        return;
    }
    let required: Vec<u8> = verts
        .iter()
        .map(|&v| if terminal_mask >> v & 1 == 1 { 1 } else { 2 })
        .collect();
    let cap: Vec<u8> = verts.iter().map(|&v| internal_cap[v as usize]).collect();
    let mut undecided: Vec<u8> = vec![0; nv];
    for &(_, la, lb) in &edges {
        undecided[la] += 1;
        undecided[lb] += 1;
    }
    // a vertex that cannot possibly reach its required degree kills the
    // whole subset
    if undecided
        .iter()
        .zip(&required)
        .any(|(&have, &need)| have < need)
    {
        return;
    }

    struct State<'a> {
        edges: &'a [(usize, usize, usize)],
        required: &'a [u8],
        cap: &'a [u8],
        undecided: Vec<u8>,
        chosen_deg: Vec<u8>,
        chosen: Vec<usize>,
        target: usize,
        vertex_mask: u64,
        verts: &'a [VertexId],
    }

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    fn connectable(parent: &[usize], edges: &[(usize, usize, usize)], from: usize) -> bool {
        let mut p = parent.to_vec();
        let mut comps = 0;
        for x in 0..p.len() {
            if find(&mut p, x) == x {
                comps += 1;
            }
        }
        for &(_, la, lb) in &edges[from..] {
            let (ra, rb) = (find(&mut p, la), find(&mut p, lb));
            if ra != rb {
                p[ra] = rb;
                comps -= 1;
            }
        }
        comps == 1
    }

    fn recurse(
        st: &mut State<'_>,
        parent: Vec<usize>,
        comps: usize,
        pos: usize,
        budget: &mut Budget,
        out: &mut Vec<Candidate>,
    ) {
        if !budget.tick() {
            return;
        }
        if st.chosen.len() == st.target {
            if comps == 1
                && st
                    .chosen_deg
                    .iter()
                    .zip(st.required)
                    .all(|(&have, &need)| have >= need)
            {
                let mut edge_mask = 0u128;
                for &pos in &st.chosen {
                    edge_mask |= 1 << st.edges[pos].0;
                }
                let mut internal_mask = 0u64;
                for (k, &v) in st.verts.iter().enumerate() {
                    if st.chosen_deg[k] >= 2 {
                        internal_mask |= 1 << v;
                    }
                }
                out.push(Candidate {
                    edge_mask,
                    internal_mask,
                    vertex_mask: st.vertex_mask,
                });
            }
            return;
        }
        if pos == st.edges.len() || st.chosen.len() + (st.edges.len() - pos) < st.target {
            return;
        }
        let (_, la, lb) = st.edges[pos];
        // include
        {
            let mut p = parent.clone();
            let (ra, rb) = (find(&mut p, la), find(&mut p, lb));
            if ra != rb && st.chosen_deg[la] < st.cap[la] && st.chosen_deg[lb] < st.cap[lb] {
                p[ra] = rb;
                st.chosen_deg[la] += 1;
                st.chosen_deg[lb] += 1;
                st.chosen.push(pos);
                recurse(st, p, comps - 1, pos + 1, budget, out);
                st.chosen.pop();
                st.chosen_deg[la] -= 1;
                st.chosen_deg[lb] -= 1;
            }
        }
        // exclude
        st.undecided[la] -= 1;
        st.undecided[lb] -= 1;
        let feasible = st.chosen_deg[la] + st.undecided[la] >= st.required[la]
            && st.chosen_deg[lb] + st.undecided[lb] >= st.required[lb];
        if feasible && connectable(&parent, st.edges, pos + 1) {
            recurse(st, parent.clone(), comps, pos + 1, budget, out);
        }
        st.undecided[la] += 1;
        st.undecided[lb] += 1;
    }

    let mut st = State {
        edges: &edges,
        required: &required,
        cap: &cap,
        undecided,
        chosen_deg: vec![0; nv],
        chosen: Vec::with_capacity(target),
        target,
        vertex_mask,
        verts,
    };
    let parent: Vec<usize> = (0..nv).collect();
    recurse(&mut st, parent, nv, 0, budget, out);
}

/// Enumerates every S-Steiner tree of the host whose internal vertices are
/// allowed, as compact candidates in canonical order.
fn enumerate_candidates(
    g: &Graph,
    host: &HostIndex,
    s: &TerminalSet,
    allow_internal: &[bool],
    budget: &mut Budget,
) -> Result<Vec<Candidate>> {
    let n = g.vertex_count();
    let terminals = s.to_vec();
    let mut terminal_mask = 0u64;
    for &t in &terminals {
        terminal_mask |= 1 << t;
    }
    // relays: non-terminals that may carry internal degree
    let relays: Vec<VertexId> = (0..n as VertexId)
        .filter(|&v| terminal_mask >> v & 1 == 0 && allow_internal[v as usize] && g.degree(v) >= 2)
        .collect();
    if relays.len() > MAX_RELAYS {
        return Err(Error::HostTooLarge(format!(
            "{} candidate relay vertices exceeds the solver limit of {MAX_RELAYS}",
            relays.len()
        )));
    }
    // terminals must already be mutually reachable through allowed vertices
    {
        let mut allowed = terminal_mask;
        for &r in &relays {
            allowed |= 1 << r;
        }
        let mut seen = 1u64 << terminals[0];
        let mut stack = vec![terminals[0]];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if allowed >> w & 1 == 1 && seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
        if terminals.iter().any(|&t| seen >> t & 1 == 0) {
            return Ok(Vec::new());
        }
    }
    let internal_cap: Vec<u8> = (0..n)
        .map(|v| {
            if terminal_mask >> v & 1 == 1 && !allow_internal[v] {
                1
            } else {
                u8::MAX
            }
        })
        .collect();
    let mut out = Vec::new();
    for bits in 0u32..(1u32 << relays.len()) {
        let mut verts = terminals.clone();
        for (k, &r) in relays.iter().enumerate() {
            if bits >> k & 1 == 1 {
                verts.push(r);
            }
        }
        verts.sort_unstable();
        enumerate_trees_on(host, &verts, terminal_mask, &internal_cap, budget, &mut out);
        if budget.exhausted {
            break;
        }
    }
    out.sort_by(candidate_order);
    Ok(out)
}

fn candidate_to_tree(host: &HostIndex, c: &Candidate) -> SteinerTree {
    let mut vertices = Vec::new();
    for v in 0..MAX_VERTICES {
        if c.vertex_mask >> v & 1 == 1 {
            vertices.push(v as VertexId);
        }
    }
    let mut edges = Vec::new();
    for (idx, &e) in host.edge_list.iter().enumerate() {
        if c.edge_mask >> idx & 1 == 1 {
            edges.push(e);
        }
    }
    SteinerTree::new(vertices, edges)
}

/// Yields every S-Steiner tree of `g` whose internal vertices are allowed
/// by `allow_internal` (one flag per vertex), each exactly once, sorted by
/// edge count and then lexicographically by edge list. Terminals that are
/// not allowed to be internal may still appear as leaves. An empty result
/// means no such tree exists (in particular when the terminals are not
/// mutually reachable).
pub fn enumerate_steiner_trees(
    g: &Graph,
    s: &TerminalSet,
    allow_internal: &[bool],
) -> Result<Vec<SteinerTree>> {
    if allow_internal.len() != g.vertex_count() {
        return Err(Error::OutOfRange(format!(
            "degree mask has {} entries for a graph on {} vertices",
            allow_internal.len(),
            g.vertex_count()
        )));
    }
    s.validate_against(g)?;
    let host = HostIndex::build(g)?;
    let mut budget = Budget::unlimited();
    let cands = enumerate_candidates(g, &host, s, allow_internal, &mut budget)?;
    Ok(cands.iter().map(|c| candidate_to_tree(&host, c)).collect())
}

struct Packer<'a> {
    g: &'a Graph,
    s: &'a TerminalSet,
    host: &'a HostIndex,
    cands: &'a [Candidate],
    term_masks: Vec<u128>,
    total_edges: u32,
    tree_min_edges: u32,
    /// Vertices able to serve as the internal relay every tree needs on
    /// this side; zero when the host is not bipartite or the opposite side
    /// holds fewer than two terminals.
    x_cap_mask: u64,
    y_cap_mask: u64,
    max_trees: usize,
    best: usize,
    current: Vec<usize>,
}

impl<'a> Packer<'a> {
    fn bound(&self, used_edges: u128, used_internal: u64) -> usize {
        let mut b = ((self.total_edges - used_edges.count_ones()) / self.tree_min_edges) as usize;
        for m in &self.term_masks {
            b = b.min((m & !used_edges).count_ones() as usize);
        }
        if self.x_cap_mask != 0 {
            b = b.min((self.x_cap_mask & !used_internal).count_ones() as usize);
        }
        if self.y_cap_mask != 0 {
            b = b.min((self.y_cap_mask & !used_internal).count_ones() as usize);
        }
        b
    }

    /// Every improved family is re-checked by the definitional verifier;
    /// the search state encodes only the structural conditions, so this
    /// cross-checks the two routes on every run.
    fn verify_current(&self) -> Result<()> {
        let trees: Vec<SteinerTree> = self
            .current
            .iter()
            .map(|&idx| candidate_to_tree(self.host, &self.cands[idx]))
            .collect();
        let family = TreeFamily::new(self.g.clone(), self.s.clone(), trees);
        match verify_definitional(&family)? {
            crate::verify::Verdict::Independent => Ok(()),
            crate::verify::Verdict::Violated(v) => Err(Error::Internal(format!(
                "search produced a family the definitional verifier rejects: {v}"
            ))),
        }
    }

    fn dfs(
        &mut self,
        start: usize,
        used_edges: u128,
        used_internal: u64,
        depth: usize,
        budget: &mut Budget,
    ) -> Result<()> {
        if depth > self.best {
            self.best = depth;
            self.verify_current()?;
        }
        if depth >= self.max_trees {
            return Ok(());
        }
        for idx in start..self.cands.len() {
            let c = &self.cands[idx];
            if c.edge_mask & used_edges != 0 || c.internal_mask & used_internal != 0 {
                continue;
            }
            if !budget.tick() {
                return Ok(());
            }
            let ue = used_edges | c.edge_mask;
            let ui = used_internal | c.internal_mask;
            if depth + 1 + self.bound(ue, ui) > self.best {
                self.current.push(idx);
                self.dfs(idx + 1, ue, ui, depth + 1, budget)?;
                self.current.pop();
            }
            if budget.exhausted {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// Exact maximum number of completely independent S-Steiner trees in `g`,
/// or certified bounds when a budget binds first.
pub fn exact_kappa_star(g: &Graph, s: &TerminalSet, cfg: &SearchConfig) -> Result<SearchReport> {
    cfg.validate()?;
    s.validate_against(g)?;
    let host = HostIndex::build(g)?;
    let allow = vec![true; g.vertex_count()];
    let mut budget = Budget::new(cfg);
    let cands = enumerate_candidates(g, &host, s, &allow, &mut budget)?;
    let enumeration_complete = !budget.exhausted;

    let terminals = s.to_vec();
    let (mut x_cap_mask, mut y_cap_mask) = (0u64, 0u64);
    if let Some((xs, ys)) = g.bipartition() {
        let side_mask = |list: &[VertexId]| list.iter().fold(0u64, |m, &v| m | 1 << v);
        let (xm, ym) = (side_mask(&xs), side_mask(&ys));
        let terms_on = |m: u64| terminals.iter().filter(|&&t| m >> t & 1 == 1).count();
        if terms_on(ym) >= 2 {
            x_cap_mask = xm; // two Y-terminals force an internal X vertex
        }
        if terms_on(xm) >= 2 {
            y_cap_mask = ym;
        }
    }
    let mut packer = Packer {
        g,
        s,
        host: &host,
        cands: &cands,
        term_masks: terminals
            .iter()
            .map(|&t| host.incident_mask[t as usize])
            .collect(),
        total_edges: g.edge_count() as u32,
        tree_min_edges: (s.len() - 1) as u32,
        x_cap_mask,
        y_cap_mask,
        max_trees: cfg.max_trees.unwrap_or(usize::MAX),
        best: 0,
        current: Vec::new(),
    };
    let mut structural = packer.bound(0, 0);
    if enumeration_complete {
        structural = structural.min(cands.len());
    }

    // greedy first pass seeds the pruning threshold
    {
        let (mut ue, mut ui) = (0u128, 0u64);
        for (idx, c) in cands.iter().enumerate() {
            if c.edge_mask & ue == 0
                && c.internal_mask & ui == 0
                && packer.current.len() < packer.max_trees
            {
                packer.current.push(idx);
                ue |= c.edge_mask;
                ui |= c.internal_mask;
            }
        }
        packer.best = packer.current.len();
        packer.verify_current()?;
        packer.current.clear();
    }

    if !budget.exhausted {
        packer.dfs(0, 0, 0, 0, &mut budget)?;
    }

    let complete_search = !budget.exhausted && packer.best < packer.max_trees;
    let outcome = if complete_search || packer.best >= structural {
        KappaOutcome::Exact(packer.best)
    } else {
        KappaOutcome::Indeterminate {
            lower: packer.best,
            upper: structural,
        }
    };
    Ok(SearchReport {
        outcome,
        nodes: cfg.node_budget - budget.remaining,
        candidates: cands.len(),
    })
}

fn is_complete(g: &Graph) -> bool {
    let n = g.vertex_count();
    g.edge_count() == n * (n - 1) / 2
}

fn complete_bipartite_sides(g: &Graph) -> Option<(Vec<VertexId>, Vec<VertexId>)> {
    if !g.is_connected() {
        return None;
    }
    let (xs, ys) = g.bipartition()?;
    (!xs.is_empty() && !ys.is_empty() && g.edge_count() == xs.len() * ys.len()).then_some((xs, ys))
}

fn all_subsets(n: usize, k: usize) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut current: Vec<VertexId> = Vec::with_capacity(k);
    fn rec(
        n: usize,
        k: usize,
        from: usize,
        current: &mut Vec<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in from..n {
            current.push(v as VertexId);
            rec(n, k, v + 1, current, out);
            current.pop();
        }
    }
    rec(n, k, 0, &mut current, &mut out);
    out
}

/// The terminal subsets that need searching for `kappa*_k`: one orbit
/// representative per symmetry class on complete and complete bipartite
/// hosts, every k-subset otherwise.
fn subset_representatives(g: &Graph, k: usize, use_symmetry: bool) -> Result<Vec<TerminalSet>> {
    let n = g.vertex_count();
    if use_symmetry && is_complete(g) {
        return Ok(vec![TerminalSet::new(0..k as VertexId)?]);
    }
    if use_symmetry {
        if let Some((xs, ys)) = complete_bipartite_sides(g) {
            let lo = k.saturating_sub(ys.len());
            let hi = xs.len().min(k);
            let mut reps = Vec::new();
            for i in lo..=hi {
                reps.push(TerminalSet::new(
                    xs[..i].iter().chain(ys[..k - i].iter()).copied(),
                )?);
            }
            return Ok(reps);
        }
    }
    all_subsets(n, k)
        .into_iter()
        .map(TerminalSet::new)
        .collect()
}

/// `kappa*_k`: the minimum of `kappa*` over all k-element terminal sets,
/// with orbit deduplication on symmetric hosts. Subsets may be searched in
/// parallel; each gets the full per-subset budget and the combination is a
/// deterministic minimum.
pub fn exact_generalized_kappa_star(
    g: &Graph,
    k: usize,
    cfg: &SearchConfig,
) -> Result<GeneralizedReport> {
    cfg.validate()?;
    if k < 2 || k > g.vertex_count() {
        return Err(Error::OutOfRange(format!(
            "k={k} outside 2..={}",
            g.vertex_count()
        )));
    }
    let reps = subset_representatives(g, k, cfg.use_symmetry)?;
    let jobs = cfg.jobs.max(1).min(reps.len().max(1));
    let reports: Vec<Result<SearchReport>> = if jobs <= 1 {
        reps.iter().map(|s| exact_kappa_star(g, s, cfg)).collect()
    } else {
        let chunk = reps.len().div_ceil(jobs);
        std::thread::scope(|scope| {
            let handles: Vec<_> = reps
                .chunks(chunk)
                .map(|chunk| {
                    scope.spawn(move || {
                        chunk
                            .iter()
                            .map(|s| exact_kappa_star(g, s, cfg))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    };
    let mut lower = usize::MAX;
    let mut upper = usize::MAX;
    let mut nodes = 0u64;
    for r in reports {
        let r = r?;
        lower = lower.min(r.outcome.lower());
        upper = upper.min(r.outcome.upper());
        nodes += r.nodes;
    }
    let outcome = if lower == upper {
        KappaOutcome::Exact(lower)
    } else {
        KappaOutcome::Indeterminate { lower, upper }
    };
    Ok(GeneralizedReport {
        outcome,
        nodes,
        subsets: reps.len(),
    })
}
