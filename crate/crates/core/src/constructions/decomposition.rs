//! The spanning-structure decomposition behind the logarithmic upper bound
//! over three letters, and the construction built on top of it.
//!
//! For any signed digraph on n vertices this yields a nilpotent function
//! over {0, 1, 2} of class at most ⌊log₂ n⌋ + 2. The decomposition covers
//! the graph by a maximal union of disjoint cycles H and a spanning forest
//! of balanced trees, labels every vertex with a depth-like rank ρ, a target
//! value α and a formula shape β, and the resulting system settles to α
//! within max ρ + 3 steps.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{indicator_net, Construction};
use crate::digraph::{Sign, SignedDigraph, Vertex};
use crate::dynamics::{Alphabet, Analyzer, Fds, LocalFunction};

/// Everything the decomposition produces. Vertex-indexed vectors waste
/// index 0 so that entries line up with 1-based vertex names.
#[derive(Debug, Clone)]
pub struct DecompositionPlan {
    /// Disjoint cycles forming a maximal cycle union H, canonical rotations.
    pub h_cycles: Vec<Vec<Vertex>>,
    /// G' = G minus every arc whose head lies on H.
    pub g_prime: SignedDigraph,
    /// Tree roots r_1..r_q in construction order.
    pub roots: Vec<Vertex>,
    /// The first `p` roots form R, the sources of G'.
    pub p: usize,
    /// For each extra root r_k (k > p), the covered vertex it hangs from.
    pub attach: BTreeMap<Vertex, Vertex>,
    /// Which tree (1-based index into `roots`) each vertex belongs to.
    pub tree_of: Vec<usize>,
    /// Tree arcs, child to parent.
    pub tree_parent: BTreeMap<Vertex, Vertex>,
    /// Tree arcs, parent to sorted children.
    pub tree_children: Vec<Vec<Vertex>>,
    /// i⁻: tree parent, cycle predecessor for H-vertices, or the attachment
    /// vertex for extra roots. Sources of G have none.
    pub pred: BTreeMap<Vertex, Vertex>,
    /// i⁺: cycle successor, H-vertices only.
    pub succ_in_h: BTreeMap<Vertex, Vertex>,
    /// Step toward a leaf, inner tree vertices only: enters the child
    /// class (signed or null) whose subtrees are shallower.
    pub sigma: BTreeMap<Vertex, Vertex>,
    /// Tree depth; the depth sets M_k are its level sets.
    pub depth: Vec<u32>,
    /// The rank ρ driving the settling argument.
    pub rho: Vec<u32>,
    pub max_rho: u32,
    /// Target value of each vertex, in {1, 2}.
    pub alpha: Vec<u8>,
    /// Formula shape of each vertex: 0 for AND, 1 for OR.
    pub beta: Vec<u8>,
    /// Rank-zero vertices needing the inductive β rule.
    pub s_set: BTreeSet<Vertex>,
    /// Vertices whose step arc is unsigned from a vertex settling at 1, the
    /// one value an unsigned literal cannot separate; their form is clamped
    /// to 0 by that input instead of a pure AND or OR.
    pub gated: BTreeSet<Vertex>,
}

impl DecompositionPlan {
    /// R, the sources of G'.
    pub fn r_set(&self) -> &[Vertex] {
        &self.roots[..self.p]
    }

    pub fn is_in_h(&self, v: Vertex) -> bool {
        self.succ_in_h.contains_key(&v)
    }

    /// Arcs of H in cycle order.
    pub fn h_arcs(&self) -> Vec<(Vertex, Vertex)> {
        let mut arcs = Vec::new();
        for cycle in &self.h_cycles {
            for i in 0..cycle.len() {
                arcs.push((cycle[i], cycle[(i + 1) % cycle.len()]));
            }
        }
        arcs
    }

    /// M_k, the vertices at tree depth `k`.
    pub fn depth_set(&self, k: u32) -> Vec<Vertex> {
        (1..self.depth.len()).filter(|&v| self.depth[v] == k).collect()
    }

    /// Checks every structural invariant against the source graph; panics
    /// with a description on the first violation.
    pub fn validate(&self, g: &SignedDigraph) {
        let n = g.n();
        let in_h: Vec<bool> = {
            let mut m = vec![false; n + 1];
            for c in &self.h_cycles {
                for &v in c {
                    assert!(!m[v], "H cycles overlap at {v}");
                    m[v] = true;
                }
            }
            m
        };
        for (u, v) in self.h_arcs() {
            assert!(g.has_arc(u, v), "H arc ({u}, {v}) not in G");
        }
        // G' = G minus arcs into H, and it must be acyclic: a surviving
        // cycle would be disjoint from H, contradicting maximality.
        for (u, v, s) in g.arcs() {
            assert_eq!(self.g_prime.sign(u, v), (!in_h[v]).then_some(s));
        }
        let mut indeg: Vec<usize> = (0..=n).map(|v| self.g_prime.in_degree(v.max(1))).collect();
        indeg[0] = usize::MAX;
        let mut queue: Vec<Vertex> = (1..=n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = queue.len();
        while let Some(u) = queue.pop() {
            for w in self.g_prime.out_neighbors(u) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                    seen += 1;
                }
            }
        }
        assert_eq!(seen, n, "G' has a cycle");

        // R = sources of G', and the trees partition the vertex set.
        let sources: Vec<Vertex> = (1..=n).filter(|&v| self.g_prime.in_degree(v) == 0).collect();
        assert_eq!(self.r_set(), &sources[..], "R is not the source set of G'");
        assert!(self.tree_of[1..].iter().all(|&k| k >= 1 && k <= self.roots.len()));
        for (idx, &r) in self.roots.iter().enumerate() {
            assert_eq!(self.tree_of[r], idx + 1, "root {r} not in its own tree");
            assert!(!self.tree_parent.contains_key(&r), "root {r} has a tree parent");
        }
        for (&c, &p) in &self.tree_parent {
            assert_eq!(self.tree_of[c], self.tree_of[p], "tree arc crosses trees");
            assert!(self.g_prime.has_arc(p, c), "tree arc ({p}, {c}) not in G'");
            assert!(self.tree_children[p].contains(&c));
        }
        for (&r, &l) in &self.attach {
            assert!(self.tree_of[l] < self.tree_of[r], "attachment not to an earlier tree");
            assert!(self.g_prime.has_arc(l, r), "attachment arc ({l}, {r}) not in G'");
        }

        // Balance and greedy maximality. Covered(k) grows with k, so it is
        // enough to compare each tree against the final coverage of its
        // prefix: an inner vertex attached everything available to it, and
        // a leaf never had both a signed and a null arc available.
        for (k, _) in self.roots.iter().enumerate() {
            let k = k + 1;
            let covered = |v: Vertex| self.tree_of[v] <= k;
            for v in 1..=n {
                if self.tree_of[v] != k {
                    continue;
                }
                let children = &self.tree_children[v];
                if !children.is_empty() {
                    assert!(
                        children.iter().any(|&c| g.sign(v, c).unwrap().is_signed())
                            && children.iter().any(|&c| g.sign(v, c) == Some(Sign::Null)),
                        "inner vertex {v} lacks a signed or a null tree arc"
                    );
                    for (w, _) in self.g_prime.out_neighbors_with_sign(v) {
                        assert!(covered(w), "inner vertex {v} left ({v}, {w}) unattached");
                    }
                } else {
                    let open: Vec<Sign> = self
                        .g_prime
                        .out_neighbors_with_sign(v)
                        .into_iter()
                        .filter(|&(w, _)| !covered(w))
                        .map(|(_, s)| s)
                        .collect();
                    assert!(
                        !(open.iter().any(|s| s.is_signed())
                            && open.iter().any(|&s| s == Sign::Null)),
                        "leaf {v} could still grow a balanced extension"
                    );
                }
            }
        }

        // σ policy: recompute ranks bottom-up and check that every σ-step
        // enters the shallower child class (null on ties) and picks the
        // child nearest a leaf inside it, smallest first.
        let mut order: Vec<Vertex> = self.roots.clone();
        let mut idx = 0;
        while idx < order.len() {
            let u = order[idx];
            idx += 1;
            order.extend_from_slice(&self.tree_children[u]);
        }
        let mut to_leaf = vec![0u32; n + 1];
        let mut gamma = vec![0u32; n + 1];
        for &u in order.iter().rev() {
            if self.tree_children[u].is_empty() {
                assert!(!self.sigma.contains_key(&u), "leaf {u} has a σ-step");
                continue;
            }
            let class_max = |null: bool| {
                self.tree_children[u]
                    .iter()
                    .filter(|&&c| (g.sign(u, c) == Some(Sign::Null)) == null)
                    .map(|&c| gamma[c])
                    .max()
                    .unwrap()
            };
            let (gs, gn) = (class_max(false), class_max(true));
            gamma[u] = 1 + gs.min(gn);
            to_leaf[u] =
                self.tree_children[u].iter().map(|&c| to_leaf[c]).min().unwrap() + 1;
            let s = self.sigma[&u];
            assert!(self.tree_children[u].contains(&s), "σ at {u} leaves the tree");
            let in_null = g.sign(u, s) == Some(Sign::Null);
            assert_eq!(in_null, gn <= gs, "σ at {u} enters the deeper class");
            for &c in &self.tree_children[u] {
                if (g.sign(u, c) == Some(Sign::Null)) == in_null {
                    assert!((to_leaf[s], s) <= (to_leaf[c], c), "σ at {u} skips {c}");
                }
            }
        }

        // ρ recurrence and the derived sets.
        for v in 1..=n {
            if self.rho[v] > 0 {
                let p = self.tree_parent[&v];
                assert_eq!(self.rho[v], self.rho[p] + 1, "ρ skips at {v}");
            }
            assert!(self.alpha[v] == 1 || self.alpha[v] == 2);
            assert!(self.beta[v] <= 1);
        }
        assert_eq!(self.max_rho, (1..=n).map(|v| self.rho[v]).max().unwrap());
        for r in self.r_set() {
            assert!(!self.s_set.contains(r), "S meets R at {r}");
        }

        // Gated vertices are exactly the settled-by-induction ones whose step
        // arc is unsigned from a vertex holding the one level such an arc
        // cannot separate.
        for v in 1..=n {
            let inductive = self.rho[v] > 0 || self.s_set.contains(&v);
            let stuck = inductive && {
                let p = self.pred[&v];
                g.sign(p, v) == Some(Sign::Null) && self.alpha[p] * self.beta[p] == 1
            };
            assert_eq!(self.gated.contains(&v), stuck, "gate mismatch at {v}");
            if stuck {
                assert_eq!(self.beta[v], 0, "gated {v} must conjoin");
            }
        }

        // With this σ, rank growth is confined to perfect balanced
        // subtrees, so either the rank certifies the logarithmic bound or
        // the forest is one spanning perfect tree.
        assert!(
            self.max_rho + 1 <= floor_log2(n)
                || (self.roots.len() == 1 && n + 1 == 1usize << (self.max_rho + 1)),
            "rank {} escapes the dichotomy on {n} vertices",
            self.max_rho
        );
    }
}

/// Builds the full decomposition. Deterministic: cycles for H are chosen
/// shortest-first with lexicographic ties, trees grow FIFO attaching every
/// available out-arc, and all enumerations ascend.
pub fn build_decomposition(g: &SignedDigraph) -> DecompositionPlan {
    let n = g.n();
    assert!(n >= 2, "decomposition needs at least two vertices");

    // Step 1: maximal union of disjoint cycles, greedily shortest-first.
    let mut in_h = vec![false; n + 1];
    let mut h_cycles: Vec<Vec<Vertex>> = Vec::new();
    let mut succ_in_h = BTreeMap::new();
    let mut h_pred = BTreeMap::new();
    loop {
        let allowed: Vec<Vertex> = (1..=n).filter(|&v| !in_h[v]).collect();
        match g.shortest_cycle_within(&allowed) {
            None => break,
            Some(cycle) => {
                for i in 0..cycle.len() {
                    let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                    succ_in_h.insert(u, v);
                    h_pred.insert(v, u);
                    in_h[cycle[i]] = true;
                }
                h_cycles.push(cycle);
            }
        }
    }

    // Step 2: drop every arc entering H.
    let mut g_prime = SignedDigraph::new(n);
    for (u, v, s) in g.arcs() {
        if !in_h[v] {
            g_prime.add_arc(u, v, s).unwrap();
        }
    }

    // Step 3: R = sources of G'; one balanced tree per source, then extra
    // trees hung below the coverage until the forest spans.
    let r_set: Vec<Vertex> = (1..=n).filter(|&v| g_prime.in_degree(v) == 0).collect();
    let p = r_set.len();
    let mut tree_of = vec![0usize; n + 1];
    let mut tree_parent = BTreeMap::new();
    let mut tree_children = vec![Vec::new(); n + 1];
    let mut roots = Vec::new();
    let mut attach = BTreeMap::new();

    let grow = |root: Vertex,
                    tree_of: &mut Vec<usize>,
                    tree_parent: &mut BTreeMap<Vertex, Vertex>,
                    tree_children: &mut Vec<Vec<Vertex>>,
                    k: usize| {
        tree_of[root] = k;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let avail: Vec<(Vertex, Sign)> = g_prime
                .out_neighbors_with_sign(u)
                .into_iter()
                .filter(|&(w, _)| tree_of[w] == 0)
                .collect();
            if avail.iter().any(|&(_, s)| s.is_signed())
                && avail.iter().any(|&(_, s)| s == Sign::Null)
            {
                for (w, _) in avail {
                    tree_of[w] = k;
                    tree_parent.insert(w, u);
                    tree_children[u].push(w);
                    queue.push_back(w);
                }
            }
        }
    };

    for &r in &r_set {
        roots.push(r);
        grow(r, &mut tree_of, &mut tree_parent, &mut tree_children, roots.len());
    }
    while let Some(r) = (1..=n).find(|&v| {
        tree_of[v] == 0 && g_prime.in_neighbors(v).iter().any(|&u| tree_of[u] != 0)
    }) {
        let l = g_prime.in_neighbors(r).into_iter().find(|&u| tree_of[u] != 0).unwrap();
        attach.insert(r, l);
        roots.push(r);
        grow(r, &mut tree_of, &mut tree_parent, &mut tree_children, roots.len());
    }
    assert!(tree_of[1..].iter().all(|&k| k != 0), "forest must span (G' is acyclic)");

    // Step 4: i⁻ and i⁺.
    let mut pred = BTreeMap::new();
    for v in 1..=n {
        if let Some(&u) = h_pred.get(&v) {
            pred.insert(v, u);
        } else if let Some(&u) = tree_parent.get(&v) {
            pred.insert(v, u);
        } else if let Some(&l) = attach.get(&v) {
            pred.insert(v, l);
        }
        // Remaining vertices are sources of G (roots that are not on H).
    }

    // Step 5: σ. Rank every vertex by the shallower of its two child
    // classes: leaves rank zero, an inner vertex one above the smaller of
    // the signed and the null class maxima. σ enters a class realizing
    // the rank (null on ties) and picks the child nearest a leaf inside
    // it, smallest first. Entering the shallower class confines long
    // agreeing runs to large subtrees: a run of length d needs a start of
    // rank d, hence a perfect balanced subtree on 2^{d+1} − 1 vertices.
    let mut depth = vec![0u32; n + 1];
    let mut order: Vec<Vertex> = roots.clone();
    let mut idx = 0;
    while idx < order.len() {
        let u = order[idx];
        idx += 1;
        for &c in &tree_children[u] {
            depth[c] = depth[u] + 1;
            order.push(c);
        }
    }
    let mut to_leaf = vec![0u32; n + 1];
    let mut gamma = vec![0u32; n + 1];
    let mut sigma = BTreeMap::new();
    for &u in order.iter().rev() {
        if tree_children[u].is_empty() {
            continue;
        }
        let class_max = |null: bool| {
            tree_children[u]
                .iter()
                .filter(|&&c| (g.sign(u, c) == Some(Sign::Null)) == null)
                .map(|&c| gamma[c])
                .max()
        };
        // Balance gives every inner vertex both a signed and a null child.
        let (gs, gn) = (class_max(false).unwrap(), class_max(true).unwrap());
        gamma[u] = 1 + gs.min(gn);
        to_leaf[u] = tree_children[u].iter().map(|&c| to_leaf[c]).min().unwrap() + 1;
        let step = tree_children[u]
            .iter()
            .copied()
            .filter(|&c| (g.sign(u, c) == Some(Sign::Null)) == (gn <= gs))
            .min_by_key(|&c| (to_leaf[c], c))
            .unwrap();
        sigma.insert(u, step);
    }

    // Step 6: ρ grows along a tree arc iff the arc agrees in signedness
    // with the parent's σ-arc, and resets to zero otherwise.
    let mut rho = vec![0u32; n + 1];
    for &u in &order {
        if let Some(&par) = tree_parent.get(&u) {
            let arc = g.sign(par, u).unwrap();
            let toward_leaf = g.sign(par, sigma[&par]).unwrap();
            rho[u] = if arc.is_signed() == toward_leaf.is_signed() { rho[par] + 1 } else { 0 };
        }
    }
    let max_rho = (1..=n).map(|v| rho[v]).max().unwrap();

    // Step 7: target values α.
    let is_source = |v: Vertex| g.in_degree(v) == 0;
    let mut alpha = vec![0u8; n + 1];
    for v in 1..=n {
        let leaf = tree_children[v].is_empty();
        let in_r = g_prime.in_degree(v) == 0;
        alpha[v] = if is_source(v) {
            1
        } else if let Some(&succ) = succ_in_h.get(&v) {
            if g.sign(v, succ) == Some(Sign::Null) {
                2
            } else {
                1
            }
        } else if leaf && !in_r {
            let feeds_null_attach = attach
                .iter()
                .any(|(&r, &l)| l == v && g.sign(v, r) == Some(Sign::Null));
            if feeds_null_attach {
                2
            } else {
                1
            }
        } else {
            let has_deepening_signed = tree_children[v]
                .iter()
                .any(|&c| g.sign(v, c).unwrap().is_signed() && rho[c] > rho[v]);
            if has_deepening_signed {
                2
            } else {
                1
            }
        };
    }

    // Step 8: S, then β first on rank zero outside S, then over the rest in
    // coverage order (tree by tree, shallower first), which puts every step
    // vertex before the vertices it settles.
    let mut s_set = BTreeSet::new();
    for v in 1..=n {
        if rho[v] == 0 && !is_source(v) {
            let pv = pred[&v];
            let s = g.sign(pv, v).unwrap();
            if (s.is_signed() && alpha[pv] == 2) || (s == Sign::Null && alpha[pv] == 1) {
                s_set.insert(v);
            }
        }
    }
    // On rank zero outside S every arc from the step vertex is decided by the
    // step vertex's range alone. A negative arc reads true on {0,1} and must
    // disjoin; a positive or unsigned arc reads false on the matching range
    // and must conjoin, which also pins the settled value at 0, never at the
    // one level that an unsigned arc further down could not separate.
    let mut beta = vec![0u8; n + 1];
    for v in 1..=n {
        if rho[v] == 0 && !s_set.contains(&v) {
            beta[v] =
                if is_source(v) || g.sign(pred[&v], v) != Some(Sign::Negative) { 0 } else { 1 };
        }
    }
    let inductive: Vec<Vertex> = {
        let mut later: Vec<Vertex> =
            (1..=n).filter(|&v| rho[v] > 0 || s_set.contains(&v)).collect();
        later.sort_by_key(|&v| (tree_of[v], depth[v], v));
        later
    };
    let mut gated = BTreeSet::new();
    for v in inductive {
        let pv = pred[&v];
        let ab = alpha[pv] * beta[pv];
        beta[v] = match g.sign(pv, v).unwrap() {
            Sign::Positive if ab < 2 => 0,
            Sign::Negative if ab == 2 => 0,
            Sign::Null if ab != 1 => 0,
            Sign::Null => {
                gated.insert(v);
                0
            }
            _ => 1,
        };
    }

    DecompositionPlan {
        h_cycles,
        g_prime,
        roots,
        p,
        attach,
        tree_of,
        tree_parent,
        tree_children,
        pred,
        succ_in_h,
        sigma,
        depth,
        rho,
        max_rho,
        alpha,
        beta,
        s_set,
        gated,
    }
}

/// One component of the settling form: constant 0 on sources, otherwise
/// α·(AND of indicators) or α·(OR of indicators) by β. A vertex gated on
/// input `p` instead drops to 0 whenever x_p reads 1 and conjoins the
/// remaining literals otherwise; the gate input stays unsigned, and the
/// vertex settles one step after x_p does.
fn settling_local(
    g: &SignedDigraph,
    i: Vertex,
    alpha: u8,
    beta: u8,
    gate: Option<Vertex>,
) -> LocalFunction {
    if g.in_degree(i) == 0 {
        return LocalFunction::constant(0);
    }
    if let Some(p) = gate {
        let ins = g.in_neighbors_with_sign(i);
        let inputs: Vec<Vertex> = ins.iter().map(|&(j, _)| j).collect();
        return crate::constructions::tabulate(inputs.clone(), 3, move |vals| {
            let mut acc = true;
            for (&(j, s), &v) in ins.iter().zip(vals) {
                if j == p {
                    if v == 1 {
                        return 0;
                    }
                } else {
                    acc &= match s {
                        Sign::Positive => v == 2,
                        Sign::Negative => v < 2,
                        Sign::Null => v == 1,
                    };
                }
            }
            if acc { alpha } else { 0 }
        });
    }
    if beta == 0 {
        indicator_net(g, i, 3, alpha, false, |s, v| match s {
            Sign::Positive => v == 2,
            Sign::Negative => v < 2,
            Sign::Null => v == 1,
        })
    } else {
        indicator_net(g, i, 3, alpha, true, |s, v| match s {
            Sign::Positive => v == 2,
            Sign::Negative => v < 2,
            Sign::Null => v != 1,
        })
    }
}

fn settling_fds(
    g: &SignedDigraph,
    alpha: &[u8],
    beta: &[u8],
    gate_of: impl Fn(Vertex) -> Option<Vertex>,
) -> Fds {
    let locals = g
        .vertices()
        .map(|i| settling_local(g, i, alpha[i], beta[i], gate_of(i)))
        .collect();
    Fds::new(Alphabet::new(3), locals)
}

fn floor_log2(n: usize) -> u32 {
    usize::BITS - 1 - n.leading_zeros()
}

/// A nilpotent function over {0, 1, 2} of class at most ⌊log₂ n⌋ + 2, for
/// any signed digraph.
pub fn nilpotent_3letter(g: &SignedDigraph) -> Construction {
    let n = g.n();
    let bound = floor_log2(n) + 2;
    if n == 1 {
        // A single vertex: constant 0 without a loop, else a unary map of
        // the loop's sign whose square is constant.
        let local = match g.sign(1, 1) {
            None => LocalFunction::constant(0),
            Some(Sign::Positive) => LocalFunction { inputs: vec![1], table: vec![0, 0, 1] },
            Some(Sign::Negative) => LocalFunction { inputs: vec![1], table: vec![1, 1, 0] },
            Some(Sign::Null) => LocalFunction { inputs: vec![1], table: vec![0, 2, 0] },
        };
        let fds = Fds::new(Alphabet::new(3), vec![local]);
        return Construction::new(fds, "nilpotent_3letter", bound, true)
            .with_report(vec!["single vertex".into()]);
    }

    let plan = build_decomposition(g);
    if plan.max_rho + 1 <= floor_log2(n) {
        let fds = settling_fds(g, &plan.alpha, &plan.beta, |v| {
            plan.gated.contains(&v).then(|| plan.pred[&v])
        });
        return Construction::new(fds, "nilpotent_3letter", bound, true).with_report(vec![
            format!("decomposition with max rank {} certifies the bound", plan.max_rho),
        ]);
    }
    special_case(g, &plan)
}

/// The only shape on which the rank certificate can fail: the forest is a
/// single perfect balanced binary tree spanning G, whose root is either the
/// unique source of an acyclic G or carries the only loop. The settling
/// form still works, but α and β need a different schedule.
fn special_case(g: &SignedDigraph, plan: &DecompositionPlan) -> Construction {
    let n = g.n();
    let d = plan.max_rho;
    assert_eq!(plan.roots.len(), 1, "rank overflow outside the perfect-tree shape");
    assert_eq!(n + 1, 1usize << (d + 1), "rank overflow with a non-full vertex count");
    let root = plan.roots[0];
    let bound = d + 2;

    if n <= 7 {
        // Small enough to try every (α, β) assignment; the first one the
        // engine certifies wins. Sources keep the constant-0 component.
        let free: Vec<Vertex> = (1..=n).filter(|&v| g.in_degree(v) > 0).collect();
        let options = [(1u8, 0u8), (1, 1), (2, 0), (2, 1)];
        let mut pick = vec![0usize; free.len()];
        let mut alpha = vec![1u8; n + 1];
        let mut beta = vec![0u8; n + 1];
        let mut analyzer = Analyzer::new();
        loop {
            for (slot, &v) in free.iter().enumerate() {
                alpha[v] = options[pick[slot]].0;
                beta[v] = options[pick[slot]].1;
            }
            let fds = settling_fds(g, &alpha, &beta, |_| None);
            let report = analyzer.analyze(&fds, 1 << 20).unwrap();
            if report.nilpotent && report.class.unwrap() <= bound {
                return Construction::new(fds, "nilpotent_3letter", bound, true).with_report(
                    vec![format!(
                        "spanning perfect tree of depth {d}; parameters found by search"
                    )],
                );
            }
            let mut slot = free.len();
            loop {
                if slot == 0 {
                    panic!(
                        "no settling-form parameters certify the bound on this \
                         perfect-tree graph; this contradicts the upper-bound theorem"
                    );
                }
                slot -= 1;
                pick[slot] += 1;
                if pick[slot] < options.len() {
                    break;
                }
                pick[slot] = 0;
            }
        }
    }

    // Larger instances: give every vertex one dominating literal. With
    // α fixed, every component only ever emits 0 or α, so from step one
    // each vertex's range is known; a literal that is constant on an
    // input's range decides the whole form by step two, and settled
    // values decide the rest one step after their source.
    let mut alpha = vec![2u8; n + 1];
    if g.in_degree(root) > 0
        && !g.in_neighbors_with_sign(root).iter().any(|&(_, s)| s == Sign::Null)
    {
        // No null in-arc to kill the root on range: shrink its range so
        // that its own loop literal becomes constant instead.
        assert!(
            g.has_loop(root),
            "a non-source root of the failing shape carries a loop"
        );
        alpha[root] = 1;
    }

    let and_lit = |s: Sign, v: u8| match s {
        Sign::Positive => v == 2,
        Sign::Negative => v < 2,
        Sign::Null => v == 1,
    };
    // Candidates per vertex, best (lowest time, then kind) wins:
    // an AND form killed by a literal that is false on an input's range
    // or settled value, an OR form satisfied symmetrically, and, when all
    // inputs have settled, a form decided literal by literal.
    let mut beta = vec![0u8; n + 1];
    let mut settled: Vec<Option<(u8, u32)>> = vec![None; n + 1];
    for v in 1..=n {
        if g.in_degree(v) == 0 {
            settled[v] = Some((0, 1));
        }
    }
    let mut remaining: Vec<Vertex> = (1..=n).filter(|&v| settled[v].is_none()).collect();
    while !remaining.is_empty() {
        let mut progressed = false;
        remaining.retain(|&i| {
            let ins = g.in_neighbors_with_sign(i);
            let mut best: Option<(u32, u8, u8, u8)> = None; // (time, kind, form, value)
            let mut offer = |cand: (u32, u8, u8, u8)| {
                if best.is_none() || cand < best.unwrap() {
                    best = Some(cand);
                }
            };
            for &(u, s) in &ins {
                match s {
                    Sign::Positive if alpha[u] == 1 => offer((2, 0, 0, 0)),
                    Sign::Negative if alpha[u] == 1 => offer((2, 1, 1, alpha[i])),
                    Sign::Null if alpha[u] == 2 => offer((2, 0, 0, 0)),
                    _ => {}
                }
                if let Some((vu, tu)) = settled[u] {
                    if !and_lit(s, vu) {
                        offer((tu + 1, 2, 0, 0));
                    } else if s != Sign::Null {
                        // On signed arcs the OR literal agrees with the AND
                        // one; on null arcs they disagree at value 1, which
                        // only the all-literals case below can use.
                        offer((tu + 1, 3, 1, alpha[i]));
                    }
                }
            }
            if ins.iter().all(|&(u, _)| settled[u].is_some()) {
                let t = ins.iter().map(|&(u, _)| settled[u].unwrap().1).max().unwrap();
                if ins.iter().all(|&(u, s)| and_lit(s, settled[u].unwrap().0)) {
                    offer((t + 1, 4, 0, alpha[i]));
                }
            }
            match best {
                Some((time, _, form, value)) => {
                    beta[i] = form;
                    settled[i] = Some((value, time));
                    progressed = true;
                    false
                }
                None => true,
            }
        });
        assert!(progressed, "scheduling stalled: an unsettled cycle avoids the root");
    }
    let worst = (1..=n).map(|v| settled[v].unwrap().1).max().unwrap();
    assert!(
        worst <= bound,
        "the schedule needs {worst} steps, above the bound {bound}; \
         no parameters found for this graph"
    );

    let fds = settling_fds(g, &alpha, &beta, |_| None);
    let c = Construction::new(fds, "nilpotent_3letter", bound, true).with_report(vec![format!(
        "spanning perfect tree of depth {d}; parameters found by scheduling"
    )]);
    // The schedule is a proof, but check the engine's verdict while the
    // state space stays reasonable.
    if 3u128.pow(n as u32) <= 1 << 24 {
        c.verify(1 << 24).unwrap();
    }
    c
}
