//! Signed digraphs and the graph machinery behind the constructions: strong
//! components, loop number and primitivity, wheels, good arcs, cycle
//! contraction, spanning forests.
//!
//! Vertices are `1..=n`.  Between any ordered pair there is at most one arc,
//! carrying a sign: positive (monotone increasing influence), negative
//! (monotone decreasing), or null (non-monotone).  Loops are allowed.
//! Values are immutable once built, so they can be shared freely across
//! threads.

use std::collections::BTreeMap;
use thiserror::Error;

pub type Vertex = usize;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Positive,
    Negative,
    Null,
}

impl Sign {
    pub fn as_char(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
            Sign::Null => '0',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Positive),
            '-' => Some(Sign::Negative),
            '0' => Some(Sign::Null),
            _ => None,
        }
    }

    /// True for positive and negative, false for null.
    pub fn is_signed(self) -> bool {
        !matches!(self, Sign::Null)
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DigraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: Vertex, n: usize },
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(Vertex, Vertex),
    #[error("vertex {0} is not reachable from the given roots")]
    Unreachable(Vertex),
    #[error("digraph is not strong (or has no cycle)")]
    NotStrong,
    #[error("no arc ({0}, {1})")]
    NoSuchArc(Vertex, Vertex),
    #[error("vertex list is not a cycle of the digraph")]
    NotACycle,
    #[error("digraph is not symmetric")]
    NotSymmetric,
    #[error("vertex {0} already has a loop")]
    HasLoop(Vertex),
}

/// A wheel: `cycle` is a cycle of the digraph, `center` has an arc to every
/// cycle vertex and does not lie on the cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelWitness {
    pub center: Vertex,
    pub cycle: Vec<Vertex>,
}

/// An arc `(a, b)` validated as good for `for_arc = (v, w)`: removing it
/// keeps `v` reachable from everywhere but possibly `w`, and everything stays
/// reachable from `w`, except through the forced chain of in-degree-one
/// vertices starting at `b` (stored in `degree_one_tail` when it was needed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodArcWitness {
    pub arc: (Vertex, Vertex),
    pub for_arc: (Vertex, Vertex),
    pub degree_one_tail: Option<Vec<Vertex>>,
}

/// Result of collapsing a cycle to the fresh vertex `center`.
///
/// Surviving vertices are renumbered `1..=k` in ascending order of their old
/// labels (`to_old` maps back; index 0 is unused) and `center = k + 1`.
/// `to_new` maps every old vertex to its new label, cycle vertices to
/// `center`.  `back_map` records, for each new arc incident to `center`, the
/// lexicographically smallest original arc that produced it.
#[derive(Clone, Debug)]
pub struct ContractedCycle {
    pub graph: SignedDigraph,
    pub center: Vertex,
    pub to_old: Vec<Vertex>,
    pub to_new: BTreeMap<Vertex, Vertex>,
    pub back_map: BTreeMap<(Vertex, Vertex), (Vertex, Vertex)>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedDigraph {
    n: usize,
    arcs: BTreeMap<(Vertex, Vertex), Sign>,
}

impl SignedDigraph {
    pub fn new(n: usize) -> SignedDigraph {
        assert!(n >= 1, "a digraph needs at least one vertex");
        SignedDigraph { n, arcs: BTreeMap::new() }
    }

    /// Builds a digraph from an arc list; panics on invalid arcs.
    pub fn from_arcs(n: usize, arcs: &[(Vertex, Vertex, Sign)]) -> SignedDigraph {
        let mut g = SignedDigraph::new(n);
        for &(u, v, s) in arcs {
            g.add_arc(u, v, s).unwrap();
        }
        g
    }

    pub fn add_arc(&mut self, u: Vertex, v: Vertex, sign: Sign) -> Result<(), DigraphError> {
        for x in [u, v] {
            if x < 1 || x > self.n {
                return Err(DigraphError::VertexOutOfRange { v: x, n: self.n });
            }
        }
        if self.arcs.contains_key(&(u, v)) {
            return Err(DigraphError::DuplicateArc(u, v));
        }
        self.arcs.insert((u, v), sign);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    /// Arcs in ascending (source, target) order.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex, Sign)> + '_ {
        self.arcs.iter().map(|(&(u, v), &s)| (u, v, s))
    }

    pub fn sign(&self, u: Vertex, v: Vertex) -> Option<Sign> {
        self.arcs.get(&(u, v)).copied()
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.arcs.contains_key(&(u, v))
    }

    pub fn has_loop(&self, v: Vertex) -> bool {
        self.has_arc(v, v)
    }

    pub fn loop_vertices(&self) -> Vec<Vertex> {
        (1..=self.n).filter(|&v| self.has_loop(v)).collect()
    }

    pub fn out_neighbors(&self, u: Vertex) -> Vec<Vertex> {
        self.arcs
            .range((u, 1)..=(u, self.n))
            .map(|(&(_, v), _)| v)
            .collect()
    }

    pub fn out_neighbors_with_sign(&self, u: Vertex) -> Vec<(Vertex, Sign)> {
        self.arcs
            .range((u, 1)..=(u, self.n))
            .map(|(&(_, v), &s)| (v, s))
            .collect()
    }

    pub fn in_neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.arcs
            .keys()
            .filter(|&&(_, t)| t == v)
            .map(|&(u, _)| u)
            .collect()
    }

    pub fn in_neighbors_with_sign(&self, v: Vertex) -> Vec<(Vertex, Sign)> {
        self.arcs
            .iter()
            .filter(|(&(_, t), _)| t == v)
            .map(|(&(u, _), &s)| (u, s))
            .collect()
    }

    /// In-neighbors whose arc carries the given sign, ascending.
    pub fn in_neighbors_signed(&self, v: Vertex, sign: Sign) -> Vec<Vertex> {
        self.in_neighbors_with_sign(v)
            .into_iter()
            .filter(|&(_, s)| s == sign)
            .map(|(u, _)| u)
            .collect()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.arcs.keys().filter(|&&(_, t)| t == v).count()
    }

    pub fn out_degree(&self, u: Vertex) -> usize {
        self.arcs.range((u, 1)..=(u, self.n)).count()
    }

    pub fn sources(&self) -> Vec<Vertex> {
        let mut has_in = vec![false; self.n + 1];
        for &(_, v) in self.arcs.keys() {
            has_in[v] = true;
        }
        (1..=self.n).filter(|&v| !has_in[v]).collect()
    }

    /// Same vertices and arcs, ignoring signs.
    pub fn underlying_equal(&self, other: &SignedDigraph) -> bool {
        self.n == other.n && self.arcs.keys().eq(other.arcs.keys())
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs.keys().all(|&(u, v)| self.has_arc(v, u))
    }

    fn out_adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in self.arcs.keys() {
            adj[u].push(v);
        }
        adj
    }

    fn in_adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in self.arcs.keys() {
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    /// Strongly connected components, each sorted ascending, listed in a
    /// reverse topological order of the condensation: if some arc leaves
    /// component `C` and enters component `D`, then `D` is listed before `C`.
    pub fn strongly_connected_components(&self) -> Vec<Vec<Vertex>> {
        // Iterative Tarjan.  Components complete only after everything they
        // reach has completed, which yields the reverse topological order.
        let adj = self.out_adjacency();
        let n = self.n;
        let mut index = vec![usize::MAX; n + 1];
        let mut low = vec![0usize; n + 1];
        let mut on_stack = vec![false; n + 1];
        let mut stack: Vec<Vertex> = Vec::new();
        let mut next_index = 0usize;
        let mut comps: Vec<Vec<Vertex>> = Vec::new();
        // (vertex, position in its adjacency list)
        let mut call: Vec<(Vertex, usize)> = Vec::new();

        for root in 1..=n {
            if index[root] != usize::MAX {
                continue;
            }
            call.push((root, 0));
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;

            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                if *pos < adj[v].len() {
                    let w = adj[v][*pos];
                    *pos += 1;
                    if index[w] == usize::MAX {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comps.push(comp);
                    }
                }
            }
        }
        comps
    }

    pub fn is_strong(&self) -> bool {
        self.strongly_connected_components().len() == 1
    }

    /// Strong components with no in-arc from outside, ordered by smallest
    /// member.
    pub fn initial_components(&self) -> Vec<Vec<Vertex>> {
        let mut comp_of = vec![0usize; self.n + 1];
        let comps = self.strongly_connected_components();
        for (c, comp) in comps.iter().enumerate() {
            for &v in comp {
                comp_of[v] = c;
            }
        }
        let mut has_external_in = vec![false; comps.len()];
        for &(u, v) in self.arcs.keys() {
            if comp_of[u] != comp_of[v] {
                has_external_in[comp_of[v]] = true;
            }
        }
        let mut initial: Vec<Vec<Vertex>> = comps
            .into_iter()
            .enumerate()
            .filter(|(c, _)| !has_external_in[*c])
            .map(|(_, comp)| comp)
            .collect();
        initial.sort_by_key(|comp| comp[0]);
        initial
    }

    /// BFS spanning forest rooted inside `roots`: every vertex outside
    /// `roots` gets the parent that first discovered it, exploring the queue
    /// in ascending order (roots are seeded ascending).
    pub fn spanning_forest_rooted_at(
        &self,
        roots: &[Vertex],
    ) -> Result<BTreeMap<Vertex, Vertex>, DigraphError> {
        for &r in roots {
            if r < 1 || r > self.n {
                return Err(DigraphError::VertexOutOfRange { v: r, n: self.n });
            }
        }
        let adj = self.out_adjacency();
        let mut sorted_roots: Vec<Vertex> = roots.to_vec();
        sorted_roots.sort_unstable();
        sorted_roots.dedup();
        let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        let mut seen = vec![false; self.n + 1];
        let mut queue = std::collections::VecDeque::new();
        for &r in &sorted_roots {
            seen[r] = true;
            queue.push_back(r);
        }
        while let Some(u) = queue.pop_front() {
            let mut next: Vec<Vertex> = adj[u].clone();
            next.sort_unstable();
            for v in next {
                if !seen[v] {
                    seen[v] = true;
                    parent.insert(v, u);
                    queue.push_back(v);
                }
            }
        }
        if let Some(v) = (1..=self.n).find(|&v| !seen[v]) {
            return Err(DigraphError::Unreachable(v));
        }
        Ok(parent)
    }

    /// Gcd of all cycle lengths of a strong digraph, computed from BFS
    /// levels: every arc (u, v) contributes |level(u) + 1 - level(v)|.
    /// A digraph without arcs has no cycles and is rejected like a
    /// non-strong one.
    pub fn loop_number(&self) -> Result<usize, DigraphError> {
        if self.arcs.is_empty() || !self.is_strong() {
            return Err(DigraphError::NotStrong);
        }
        let adj = self.out_adjacency();
        let mut level = vec![usize::MAX; self.n + 1];
        let mut queue = std::collections::VecDeque::new();
        level[1] = 0;
        queue.push_back(1);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        let mut g = 0usize;
        for &(u, v) in self.arcs.keys() {
            g = gcd(g, (level[u] + 1).abs_diff(level[v]));
        }
        debug_assert!(g >= 1, "a strong digraph with an arc has a cycle");
        Ok(g)
    }

    pub fn is_primitive(&self) -> bool {
        !self.arcs.is_empty() && self.is_strong() && self.loop_number() == Ok(1)
    }

    /// First wheel in ascending center order: a vertex `v` together with a
    /// shortest cycle inside the subgraph induced by `out(v) \ {v}` (a loop
    /// on `v` itself cannot serve, the center must be off the cycle).  Among
    /// equally short cycles the lexicographically smallest canonical rotation
    /// wins.
    pub fn find_wheel(&self) -> Option<WheelWitness> {
        for v in 1..=self.n {
            let allowed: Vec<Vertex> =
                self.out_neighbors(v).into_iter().filter(|&u| u != v).collect();
            if let Some(cycle) = self.shortest_cycle_within(&allowed) {
                return Some(WheelWitness { center: v, cycle });
            }
        }
        None
    }

    /// Shortest cycle of the subgraph induced by `allowed`, canonicalized to
    /// start at its smallest vertex; lexicographic tie-break.
    pub(crate) fn shortest_cycle_within(&self, allowed: &[Vertex]) -> Option<Vec<Vertex>> {
        let mut in_set = vec![false; self.n + 1];
        for &u in allowed {
            in_set[u] = true;
        }
        let mut best: Option<Vec<Vertex>> = None;
        let mut consider = |cand: Vec<Vertex>| {
            let better = match &best {
                None => true,
                Some(b) => (cand.len(), &cand) < (b.len(), b),
            };
            if better {
                best = Some(cand);
            }
        };
        for &s in allowed {
            if self.has_arc(s, s) {
                consider(vec![s]);
                continue;
            }
            // Shortest path s -> t over allowed vertices, then arc (t, s).
            let mut parent = vec![0usize; self.n + 1];
            let mut dist = vec![usize::MAX; self.n + 1];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(s);
            let mut closest: Option<Vertex> = None;
            'bfs: while let Some(u) = queue.pop_front() {
                for v in self.out_neighbors(u) {
                    if !in_set[v] {
                        continue;
                    }
                    if v == s {
                        closest = Some(u);
                        break 'bfs;
                    }
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            if let Some(t) = closest {
                let mut path = vec![t];
                let mut cur = t;
                while cur != s {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                consider(canonical_rotation(path));
            }
        }
        best
    }

    /// Vertices reachable from `start`, optionally with one arc removed.
    fn reach_from(&self, start: Vertex, skip: Option<(Vertex, Vertex)>) -> Vec<bool> {
        let mut seen = vec![false; self.n + 1];
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for v in self.out_neighbors(u) {
                if skip == Some((u, v)) || seen[v] {
                    continue;
                }
                seen[v] = true;
                queue.push_back(v);
            }
        }
        seen
    }

    /// Vertices from which `target` is reachable, optionally minus one arc.
    fn reach_to(&self, target: Vertex, skip: Option<(Vertex, Vertex)>) -> Vec<bool> {
        let radj = self.in_adjacency();
        let mut seen = vec![false; self.n + 1];
        seen[target] = true;
        let mut queue = std::collections::VecDeque::from([target]);
        while let Some(v) = queue.pop_front() {
            for &u in &radj[v] {
                if skip == Some((u, v)) || seen[u] {
                    continue;
                }
                seen[u] = true;
                queue.push_back(u);
            }
        }
        seen
    }

    /// Forced continuation from `b` through in-degree-one vertices: the set
    /// of vertices reachable from `b` along vertices whose unique in-arc is
    /// the one used, never entering `w` or `a` (a path from `w` through
    /// `(a, b)` cannot revisit them).  Empty unless `b` itself has in-degree
    /// one and `a != b`.
    fn degree_one_chain(&self, a: Vertex, b: Vertex, w: Vertex) -> Vec<bool> {
        let mut chain = vec![false; self.n + 1];
        if a == b || self.in_degree(b) != 1 {
            return chain;
        }
        chain[b] = true;
        let mut queue = std::collections::VecDeque::from([b]);
        while let Some(z) = queue.pop_front() {
            for y in self.out_neighbors(z) {
                if y == w || y == a || chain[y] || self.in_degree(y) != 1 {
                    continue;
                }
                chain[y] = true;
                queue.push_back(y);
            }
        }
        chain
    }

    /// Decides whether `ab` is a good arc for `vw`:
    /// (i) `b != w`;
    /// (ii) without `(a, b)`, every vertex except possibly `w` reaches `v`;
    /// (iii) without `(a, b)`, `w` reaches every vertex, except those covered
    /// by a path from `w` through `(a, b)` whose tail from `b` onward runs
    /// through in-degree-one vertices only.
    pub fn is_good_arc(
        &self,
        ab: (Vertex, Vertex),
        vw: (Vertex, Vertex),
    ) -> Result<bool, DigraphError> {
        for (x, y) in [ab, vw] {
            if !self.has_arc(x, y) {
                return Err(DigraphError::NoSuchArc(x, y));
            }
        }
        let (a, b) = ab;
        let (v, w) = vw;
        if b == w {
            return Ok(false);
        }
        let to_v = self.reach_to(v, Some(ab));
        if (1..=self.n).any(|u| u != w && !to_v[u]) {
            return Ok(false);
        }
        let from_w = self.reach_from(w, Some(ab));
        // The chain only helps if the prefix w -> a exists without (a, b).
        let chain = if from_w[a] {
            self.degree_one_chain(a, b, w)
        } else {
            vec![false; self.n + 1]
        };
        Ok((1..=self.n).all(|u| from_w[u] || chain[u]))
    }

    /// Lexicographically smallest good arc for `vw`.  Existence is
    /// guaranteed on strong digraphs with at least two vertices, so running
    /// out of candidates is a bug and panics.
    pub fn find_good_arc(&self, vw: (Vertex, Vertex)) -> Result<GoodArcWitness, DigraphError> {
        if !self.has_arc(vw.0, vw.1) {
            return Err(DigraphError::NoSuchArc(vw.0, vw.1));
        }
        if self.n < 2 || !self.is_strong() {
            return Err(DigraphError::NotStrong);
        }
        let candidates: Vec<(Vertex, Vertex)> = self.arcs.keys().copied().collect();
        for ab in candidates {
            if self.is_good_arc(ab, vw).unwrap() {
                let (a, b) = ab;
                let (_, w) = vw;
                let from_w = self.reach_from(w, Some(ab));
                let tail: Vec<Vertex> = {
                    let chain = self.degree_one_chain(a, b, w);
                    (1..=self.n).filter(|&u| !from_w[u] && chain[u]).collect()
                };
                return Ok(GoodArcWitness {
                    arc: ab,
                    for_arc: vw,
                    degree_one_tail: if tail.is_empty() { None } else { Some(tail) },
                });
            }
        }
        panic!(
            "no good arc for ({}, {}): contradicts the existence guarantee on strong digraphs",
            vw.0, vw.1
        );
    }

    /// Collapses the cycle `cycle` into a fresh vertex.  Arcs replicated by
    /// the merge keep the sign of the lexicographically smallest original
    /// arc; loops on the new vertex are dropped.
    pub fn contract_cycle(&self, cycle: &[Vertex]) -> Result<ContractedCycle, DigraphError> {
        if cycle.is_empty() {
            return Err(DigraphError::NotACycle);
        }
        let mut seen = vec![false; self.n + 1];
        for &c in cycle {
            if c < 1 || c > self.n || seen[c] {
                return Err(DigraphError::NotACycle);
            }
            seen[c] = true;
        }
        for i in 0..cycle.len() {
            let u = cycle[i];
            let v = cycle[(i + 1) % cycle.len()];
            if !self.has_arc(u, v) {
                return Err(DigraphError::NotACycle);
            }
        }

        let survivors: Vec<Vertex> = (1..=self.n).filter(|&v| !seen[v]).collect();
        let center = survivors.len() + 1;
        let mut to_new: BTreeMap<Vertex, Vertex> = BTreeMap::new();
        for (idx, &v) in survivors.iter().enumerate() {
            to_new.insert(v, idx + 1);
        }
        for &c in cycle {
            to_new.insert(c, center);
        }
        let mut to_old = vec![0; center];
        for (idx, &v) in survivors.iter().enumerate() {
            to_old[idx + 1] = v;
        }

        let mut graph = SignedDigraph::new(center);
        let mut back_map = BTreeMap::new();
        for (&(u, v), &s) in &self.arcs {
            let (nu, nv) = (to_new[&u], to_new[&v]);
            if nu == center && nv == center {
                continue;
            }
            if graph.has_arc(nu, nv) {
                continue; // keep the first (lexicographically smallest) original
            }
            graph.add_arc(nu, nv, s).unwrap();
            if nu == center || nv == center {
                back_map.insert((nu, nv), (u, v));
            }
        }
        Ok(ContractedCycle { graph, center, to_old, to_new, back_map })
    }

    /// A boolean function with this exact signed interaction graph exists
    /// iff no vertex has a single null in-arc as its only chance at
    /// non-monotonicity: every `i` with exactly one null in-arc needs at
    /// least two signed in-arcs.
    pub fn admits_boolean_function(&self) -> bool {
        (1..=self.n).all(|i| {
            let ins = self.in_neighbors_with_sign(i);
            let null = ins.iter().filter(|&&(_, s)| s == Sign::Null).count();
            let signed = ins.len() - null;
            null != 1 || signed >= 2
        })
    }

    /// Vertices at distance at most two from `v` in a symmetric digraph,
    /// including `v`.
    pub fn closed_two_ball(&self, v: Vertex) -> Result<Vec<Vertex>, DigraphError> {
        if !self.is_symmetric() {
            return Err(DigraphError::NotSymmetric);
        }
        let mut dist = vec![usize::MAX; self.n + 1];
        dist[v] = 0;
        let mut queue = std::collections::VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            if dist[u] == 2 {
                continue;
            }
            for t in self.out_neighbors(u) {
                if dist[t] == usize::MAX {
                    dist[t] = dist[u] + 1;
                    queue.push_back(t);
                }
            }
        }
        Ok((1..=self.n).filter(|&u| dist[u] <= 2).collect())
    }

    /// Adds a loop with the requested sign on every vertex of a loop-less
    /// digraph.  `loop_signs[i - 1]` is the sign for vertex `i`.
    pub fn add_loops(&self, loop_signs: &[Sign]) -> Result<SignedDigraph, DigraphError> {
        assert_eq!(loop_signs.len(), self.n, "one loop sign per vertex");
        if let Some(&v) = self.loop_vertices().first() {
            return Err(DigraphError::HasLoop(v));
        }
        let mut g = self.clone();
        for v in 1..=self.n {
            g.add_arc(v, v, loop_signs[v - 1]).unwrap();
        }
        Ok(g)
    }

    /// Subgraph induced by `verts`, renumbered 1..=k ascending; returns the
    /// graph and the new-to-old vertex map (index 0 unused).
    pub fn induced_subgraph(&self, verts: &[Vertex]) -> (SignedDigraph, Vec<Vertex>) {
        let mut sorted: Vec<Vertex> = verts.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        assert!(!sorted.is_empty(), "induced subgraph needs at least one vertex");
        let mut to_new = vec![0usize; self.n + 1];
        for (idx, &v) in sorted.iter().enumerate() {
            assert!(v >= 1 && v <= self.n);
            to_new[v] = idx + 1;
        }
        let mut g = SignedDigraph::new(sorted.len());
        for (&(u, v), &s) in &self.arcs {
            if u <= self.n && v <= self.n && to_new[u] != 0 && to_new[v] != 0 {
                g.add_arc(to_new[u], to_new[v], s).unwrap();
            }
        }
        let mut to_old = vec![0; sorted.len() + 1];
        for (idx, &v) in sorted.iter().enumerate() {
            to_old[idx + 1] = v;
        }
        (g, to_old)
    }

    /// Parses the line-oriented text format: an `n <count>` header, then one
    /// `arc <u> <v> <sign>` line per arc with sign in {+, -, 0}.  Lines
    /// starting with `#` and blank lines are skipped.
    pub fn parse(text: &str) -> Result<SignedDigraph, DigraphError> {
        let mut graph: Option<SignedDigraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = t.split_whitespace().collect();
            let fail = |msg: String| DigraphError::Parse { line, msg };
            match toks[0] {
                "n" => {
                    if graph.is_some() {
                        return Err(fail("duplicate 'n' header".into()));
                    }
                    if toks.len() != 2 {
                        return Err(fail("expected 'n <count>'".into()));
                    }
                    let n: usize = toks[1]
                        .parse()
                        .map_err(|_| fail(format!("bad vertex count '{}'", toks[1])))?;
                    if n == 0 {
                        return Err(fail("vertex count must be at least 1".into()));
                    }
                    graph = Some(SignedDigraph::new(n));
                }
                "arc" => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| fail("'arc' before 'n' header".into()))?;
                    if toks.len() != 4 {
                        return Err(fail("expected 'arc <u> <v> <sign>'".into()));
                    }
                    let u: Vertex = toks[1]
                        .parse()
                        .map_err(|_| fail(format!("bad vertex '{}'", toks[1])))?;
                    let v: Vertex = toks[2]
                        .parse()
                        .map_err(|_| fail(format!("bad vertex '{}'", toks[2])))?;
                    let sign = toks[3]
                        .chars()
                        .next()
                        .filter(|_| toks[3].len() == 1)
                        .and_then(Sign::from_char)
                        .ok_or_else(|| fail(format!("bad sign '{}', want +, - or 0", toks[3])))?;
                    g.add_arc(u, v, sign).map_err(|e| fail(e.to_string()))?;
                }
                other => {
                    return Err(fail(format!("unknown directive '{other}'")));
                }
            }
        }
        graph.ok_or(DigraphError::Parse { line: 1, msg: "missing 'n <count>' header".into() })
    }

    /// Canonical serialization: header plus arcs sorted by (source, target).
    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (&(u, v), &sign) in &self.arcs {
            s.push_str(&format!("arc {} {} {}\n", u, v, sign.as_char()));
        }
        s
    }
}

/// Rotates a cycle so that its smallest vertex comes first.
fn canonical_rotation(cycle: Vec<Vertex>) -> Vec<Vertex> {
    let pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, &v)| v)
        .map(|(i, _)| i)
        .unwrap();
    let mut out = Vec::with_capacity(cycle.len());
    out.extend_from_slice(&cycle[pos..]);
    out.extend_from_slice(&cycle[..pos]);
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
