//! Boolean constructions whose nilpotency class is a small constant,
//! independent of the number of vertices: and-nets negated on a hub, on a
//! well-spread vertex set of an undirected graph, or on loops added over
//! alternate search layers, plus two class-2 schemes (parity systems and
//! complete graphs with loops).

use super::andnets::andnet_fds;
use super::{tabulate, Construction, ConstructionError};
use crate::digraph::{Sign, SignedDigraph, Vertex};
use crate::dynamics::{Alphabet, Fds, LocalFunction};
use std::collections::VecDeque;

fn require_loopless(g: &SignedDigraph) -> Result<(), ConstructionError> {
    match g.loop_vertices().first() {
        Some(&v) => {
            Err(ConstructionError::HypothesisFailed(format!("vertex {v} has a loop")))
        }
        None => Ok(()),
    }
}

/// On a loop-less digraph with minimum in-degree at least two and a hub
/// linked with every other vertex in both directions, the and-net that
/// negates all in-arcs of the hub is nilpotent of class at most 3.
///
/// Writing h for the hub and e_h for the state that is one exactly at h,
/// e_h is a fixed point and every trajectory reaches it in three steps:
/// once any non-hub component fires, the hub sees it and shuts off, which
/// shuts off every non-hub component in turn (they all watch the hub),
/// and f maps the all-zero state straight to e_h. A hub missing even one
/// in-arc breaks the first step, so out-degree n - 1 alone is not enough.
///
/// Signs of `g` are ignored; the certificate matches the underlying
/// digraph only.
pub fn universal_class3(g: &SignedDigraph) -> Result<Construction, ConstructionError> {
    let n = g.n();
    require_loopless(g)?;
    for v in g.vertices() {
        let d = g.in_degree(v);
        if d < 2 {
            return Err(ConstructionError::HypothesisFailed(format!(
                "vertex {v} has in-degree {d}, need at least two"
            )));
        }
    }
    let hub = match g
        .vertices()
        .find(|&v| g.out_degree(v) == n - 1 && g.in_degree(v) == n - 1)
    {
        Some(v) => v,
        None => {
            return Err(ConstructionError::HypothesisFailed(
                "no vertex is linked with every other vertex in both directions".into(),
            ))
        }
    };
    let negated: Vec<(Vertex, Vertex)> =
        g.in_neighbors(hub).into_iter().map(|j| (j, hub)).collect();
    let fds = andnet_fds(g, &negated);
    Ok(Construction::new(fds, "universal_class3", 3, false)
        .with_report(vec![format!("negated literals on the in-arcs of the hub {hub}")]))
}

/// On a connected loop-less symmetric digraph with at least three
/// vertices, the and-net negated on the in-arcs of a well-spread vertex
/// set is nilpotent of class at most 3.
///
/// The set grows greedily, degree-one vertices first, skipping anything
/// within distance two of an earlier pick. Members end up pairwise at
/// distance at least three while every vertex stays within distance two
/// of a member. Complete graphs are handed to the hub construction, whose
/// nilpotency argument does not need the distance gap.
pub fn undirected_class3(g: &SignedDigraph) -> Result<Construction, ConstructionError> {
    let n = g.n();
    if n < 3 {
        return Err(ConstructionError::HypothesisFailed(
            "need at least three vertices".into(),
        ));
    }
    if !g.is_symmetric() {
        return Err(ConstructionError::HypothesisFailed("digraph is not symmetric".into()));
    }
    require_loopless(g)?;
    if !g.is_strong() {
        return Err(ConstructionError::HypothesisFailed("graph is not connected".into()));
    }
    if g.arc_count() == n * (n - 1) {
        let mut c =
            universal_class3(g).expect("complete graphs satisfy the hub hypotheses");
        c.certificate.method = "undirected_class3".into();
        c.certificate
            .hypothesis_report
            .insert(0, "complete graph, negating a single hub instead".into());
        return Ok(c);
    }
    let mut covered = vec![false; n + 1];
    let mut centers: Vec<Vertex> = Vec::new();
    let degree_one: Vec<Vertex> = g.vertices().filter(|&v| g.out_degree(v) == 1).collect();
    for v in degree_one.into_iter().chain(g.vertices()) {
        if covered[v] {
            continue;
        }
        centers.push(v);
        for u in g.closed_two_ball(v).expect("symmetry was checked") {
            covered[u] = true;
        }
    }
    let negated: Vec<(Vertex, Vertex)> = centers
        .iter()
        .flat_map(|&i| g.in_neighbors(i).into_iter().map(move |j| (j, i)))
        .collect();
    let fds = andnet_fds(g, &negated);
    Ok(Construction::new(fds, "undirected_class3", 3, false).with_report(vec![format!(
        "negated in-arcs on {centers:?}, pairwise at distance three or more"
    )]))
}

/// Adds a loop on every vertex of a loop-less digraph with minimum
/// in-degree at least one, negating the new loop literal on the even
/// layers of a breadth-first search. The output lives on the looped
/// digraph and is nilpotent of class at most 4, improving to 3 when the
/// input is symmetric or some vertex sees all others.
///
/// The search starts from a single all-seeing vertex when one exists
/// (every layer is then 0 or 1), otherwise from the smallest vertex of
/// each initial strong component, which together reach everything.
pub fn loops_added_nilpotent(g: &SignedDigraph) -> Result<Construction, ConstructionError> {
    let n = g.n();
    require_loopless(g)?;
    for v in g.vertices() {
        if g.in_degree(v) == 0 {
            return Err(ConstructionError::HypothesisFailed(format!(
                "vertex {v} has in-degree zero"
            )));
        }
    }
    let hub = g.vertices().find(|&v| g.out_degree(v) == n - 1);
    let sources: Vec<Vertex> = match hub {
        Some(h) => vec![h],
        None => g
            .initial_components()
            .iter()
            .map(|comp| *comp.iter().min().unwrap())
            .collect(),
    };
    let mut dist = vec![usize::MAX; n + 1];
    let mut queue: VecDeque<Vertex> = VecDeque::new();
    for &s in &sources {
        dist[s] = 0;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        for v in g.out_neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    debug_assert!(
        (1..=n).all(|v| dist[v] != usize::MAX),
        "initial components reach every vertex"
    );
    let negated: Vec<(Vertex, Vertex)> =
        (1..=n).filter(|&v| dist[v] % 2 == 0).map(|v| (v, v)).collect();
    let ring = g.add_loops(&vec![Sign::Positive; n]).expect("loop-lessness was checked");
    let fds = andnet_fds(&ring, &negated);
    let bound = if g.is_symmetric() || hub.is_some() { 3 } else { 4 };
    let even: Vec<Vertex> = negated.iter().map(|&(v, _)| v).collect();
    Ok(Construction::new(fds, "loops_added_nilpotent", bound, false).with_report(vec![
        format!("search roots {sources:?}"),
        format!("negated loops on the even layers {even:?}"),
    ]))
}

/// When every in-neighborhood meets every out-neighborhood an even number
/// of times, the system whose components each take the parity of their
/// in-neighbors squares to the all-zero map: substituting f into itself
/// makes x_k appear in component i once per common vertex of in(i) and
/// out(k), an even count, so everything cancels.
pub fn xor_class2(g: &SignedDigraph) -> Result<Construction, ConstructionError> {
    for i in g.vertices() {
        let in_i = g.in_neighbors(i);
        for k in g.vertices() {
            let meet =
                g.out_neighbors(k).iter().filter(|j| in_i.contains(j)).count();
            if meet % 2 == 1 {
                return Err(ConstructionError::HypothesisFailed(format!(
                    "the in-neighborhood of {i} meets the out-neighborhood of {k} an odd number of times"
                )));
            }
        }
    }
    let locals = g
        .vertices()
        .map(|i| {
            tabulate(g.in_neighbors(i), 2, |vals| vals.iter().fold(0u8, |a, &v| a ^ v))
        })
        .collect();
    let fds = Fds::new(Alphabet::new(2), locals);
    Ok(Construction::new(fds, "xor_class2", 2, false)
        .with_report(vec!["componentwise parity of the in-neighbors".into()]))
}

/// A class-2 boolean function on the complete digraph with loops on n ≥ 2
/// vertices. For n ≥ 3 each component turns on exactly when it is the
/// unique zero of the state, so f(x) is zero except on states with a
/// single zero, whose images are unit vectors and die at the next step.
/// That scheme needs two distinct non-loop in-arcs, so the two-vertex
/// case instead hard-codes a parity pair found once by exhaustive search.
pub fn complete_loops_class2(n: usize) -> Result<Construction, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::BadParam(format!(
            "need at least two vertices, got {n}"
        )));
    }
    let (fds, how) = if n == 2 {
        let local = LocalFunction { inputs: vec![1, 2], table: vec![0, 1, 1, 0] };
        let fds = Fds::new(Alphabet::new(2), vec![local.clone(), local]);
        (fds, "parity pair found by exhaustive search".to_string())
    } else {
        let g = super::gen_family(super::Family::CompleteLoops(n))?;
        let negated: Vec<(Vertex, Vertex)> = (1..=n).map(|v| (v, v)).collect();
        (andnet_fds(&g, &negated), "negated loop literal on every component".to_string())
    };
    Ok(Construction::new(fds, "complete_loops_class2", 2, false).with_report(vec![how]))
}
