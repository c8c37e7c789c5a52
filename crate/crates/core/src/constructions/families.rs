//! Generators for the named graph families used throughout the crate.

use super::ConstructionError;
use crate::digraph::{Sign, SignedDigraph, Vertex};

/// A named graph family with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Directed cycle on `n` vertices (a loop when n = 1).
    Cycle(usize),
    /// Two cycles of lengths `l` and `r` sharing vertex 1.
    DoubleCycle(usize, usize),
    /// Cycle on `m` vertices plus a center arcing to every cycle vertex.
    Wheel(usize),
    /// Perfect balanced binary tree of depth `d`, each inner vertex with one
    /// positive and one null child, plus a null arc from every leaf to the
    /// root. Heap numbering: vertex `i` has children `2i` and `2i + 1`.
    TightFull(u32),
    /// The same extremal shape for a vertex count that is not of the form
    /// 2^(d+1) − 1 (delegates to `TightFull` when it is).
    TightGeneral(usize),
    /// Loop-less complete digraph on `n` vertices.
    Complete(usize),
    /// Complete digraph on `n` vertices with a loop on every vertex.
    CompleteLoops(usize),
}

const MAX_VERTICES: usize = 1 << 20;

fn check_n(n: usize) -> Result<(), ConstructionError> {
    if n < 1 {
        Err(ConstructionError::BadParam("vertex count must be at least 1".into()))
    } else if n > MAX_VERTICES {
        Err(ConstructionError::BadParam(format!(
            "vertex count {n} exceeds the generator limit {MAX_VERTICES}"
        )))
    } else {
        Ok(())
    }
}

/// Builds the requested family member.
pub fn gen_family(family: Family) -> Result<SignedDigraph, ConstructionError> {
    match family {
        Family::Cycle(n) => {
            check_n(n)?;
            let mut g = SignedDigraph::new(n);
            for i in 1..=n {
                g.add_arc(i, i % n + 1, Sign::Positive).unwrap();
            }
            Ok(g)
        }
        Family::DoubleCycle(l, r) => double_cycle_graph(l, r),
        Family::Wheel(m) => {
            check_n(m)?;
            check_n(m + 1)?;
            let mut g = SignedDigraph::new(m + 1);
            for i in 1..=m {
                g.add_arc(i, i % m + 1, Sign::Positive).unwrap();
                g.add_arc(m + 1, i, Sign::Positive).unwrap();
            }
            Ok(g)
        }
        Family::TightFull(d) => {
            if d > 19 {
                return Err(ConstructionError::BadParam(format!(
                    "depth {d} exceeds the generator limit 19"
                )));
            }
            Ok(tight_full_graph(d))
        }
        Family::TightGeneral(n) => {
            check_n(n)?;
            let d = (usize::BITS - 1 - n.leading_zeros()) as u32;
            if n == (1 << (d + 1)) - 1 {
                return Ok(tight_full_graph(d));
            }
            // Perfect tree of depth d − 1 on vertices 1..2^d − 1, then w with
            // a positive loop and null arcs to every other vertex.
            let w = 1 << d;
            let mut g = SignedDigraph::new(n);
            for i in 1..w / 2 {
                g.add_arc(i, 2 * i, Sign::Positive).unwrap();
                g.add_arc(i, 2 * i + 1, Sign::Null).unwrap();
            }
            g.add_arc(w, w, Sign::Positive).unwrap();
            for v in (1..w).chain(w + 1..=n) {
                g.add_arc(w, v, Sign::Null).unwrap();
            }
            Ok(g)
        }
        Family::Complete(n) => {
            check_n(n)?;
            let mut g = SignedDigraph::new(n);
            for u in 1..=n {
                for v in 1..=n {
                    if u != v {
                        g.add_arc(u, v, Sign::Positive).unwrap();
                    }
                }
            }
            Ok(g)
        }
        Family::CompleteLoops(n) => {
            check_n(n)?;
            let mut g = SignedDigraph::new(n);
            for u in 1..=n {
                for v in 1..=n {
                    g.add_arc(u, v, Sign::Positive).unwrap();
                }
            }
            Ok(g)
        }
    }
}

/// The double cycle `C_{l,r}`: cycles of lengths `l` and `r` sharing exactly
/// vertex 1, on n = l + r − 1 vertices. Vertices 2..l continue the first
/// cycle, vertices l+1..l+r−1 the second.
pub(crate) fn double_cycle_graph(l: usize, r: usize) -> Result<SignedDigraph, ConstructionError> {
    if l < 1 || r < 1 {
        return Err(ConstructionError::BadParam(
            "double cycle lengths must be at least 1".into(),
        ));
    }
    if l == 1 && r == 1 {
        return Err(ConstructionError::BadParam(
            "double cycle (1, 1) collapses to a single loop".into(),
        ));
    }
    let n = l + r - 1;
    check_n(n)?;
    let mut g = SignedDigraph::new(n);
    let mut add_cycle = |verts: &[Vertex]| {
        for k in 0..verts.len() {
            g.add_arc(verts[k], verts[(k + 1) % verts.len()], Sign::Positive).unwrap();
        }
    };
    let first: Vec<Vertex> = (1..=l).collect();
    add_cycle(&first);
    let second: Vec<Vertex> = std::iter::once(1).chain(l + 1..=n).collect();
    add_cycle(&second);
    Ok(g)
}

pub(crate) fn tight_full_graph(d: u32) -> SignedDigraph {
    let n = (1usize << (d + 1)) - 1;
    let mut g = SignedDigraph::new(n);
    let first_leaf = 1 << d;
    for i in 1..first_leaf {
        g.add_arc(i, 2 * i, Sign::Positive).unwrap();
        g.add_arc(i, 2 * i + 1, Sign::Null).unwrap();
    }
    for leaf in first_leaf..=n {
        g.add_arc(leaf, 1, Sign::Null).unwrap();
    }
    g
}
