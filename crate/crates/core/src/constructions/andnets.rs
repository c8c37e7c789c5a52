//! Boolean and-nets: each component is the conjunction of its inputs with
//! at most one literal negated. Placing the negation on a single
//! well-chosen arc makes the whole net nilpotent on strong digraphs with a
//! loop or a wheel, on primitive digraphs, and on double cycles.

use super::{tabulate, Construction, ConstructionError};
use crate::digraph::{SignedDigraph, Vertex};
use crate::dynamics::{Alphabet, Fds};

/// The and-net on `g` negating exactly the literals of `negated`.
pub(super) fn andnet_fds(g: &SignedDigraph, negated: &[(Vertex, Vertex)]) -> Fds {
    let locals = g
        .vertices()
        .map(|i| {
            let inputs = g.in_neighbors(i);
            let flip: Vec<bool> =
                inputs.iter().map(|&j| negated.contains(&(j, i))).collect();
            tabulate(inputs, 2, move |vals| {
                u8::from(vals.iter().zip(&flip).all(|(&v, &neg)| (v == 1) != neg))
            })
        })
        .collect();
    Fds::new(Alphabet::new(2), locals)
}

/// The and-net with a single negated literal on the arc `(a, b)`: f_b
/// conjoins ¬x_a with the other inputs of b, all other components conjoin
/// their inputs plainly. Signs of `g` are ignored.
pub fn gab_andnet(
    g: &SignedDigraph,
    a: Vertex,
    b: Vertex,
) -> Result<Fds, ConstructionError> {
    if !g.has_arc(a, b) {
        return Err(ConstructionError::NoSuchArc(a, b));
    }
    Ok(andnet_fds(g, &[(a, b)]))
}

/// On a strong digraph with a loop, the and-net negated on a good arc for
/// the smallest loop is nilpotent of class at most 2n − 1.
pub fn strong_loop_nilpotent(
    g: &SignedDigraph,
) -> Result<Construction, ConstructionError> {
    let n = g.n();
    if n < 2 {
        return Err(ConstructionError::HypothesisFailed(
            "need at least two vertices".into(),
        ));
    }
    if !g.is_strong() {
        return Err(ConstructionError::HypothesisFailed("digraph is not strong".into()));
    }
    let v = match g.loop_vertices().first() {
        Some(&v) => v,
        None => {
            return Err(ConstructionError::HypothesisFailed("no vertex has a loop".into()))
        }
    };
    let witness = g.find_good_arc((v, v)).expect("loop arc exists on a strong digraph");
    let (a, b) = witness.arc;
    let fds = gab_andnet(g, a, b).unwrap();
    Ok(Construction::new(fds, "strong_loop_nilpotent", 2 * n as u32 - 1, false)
        .with_report(vec![format!("loop at {v}; negated literal on ({a}, {b})")]))
}

/// On a strong digraph containing a wheel (a center arcing onto a cycle of
/// length m it does not belong to), the and-net negated on the pullback of
/// a good arc for the contracted wheel is nilpotent of class at most
/// 2n − m + 1.
pub fn strong_wheel_nilpotent(
    g: &SignedDigraph,
) -> Result<Construction, ConstructionError> {
    let n = g.n();
    if n < 2 {
        return Err(ConstructionError::HypothesisFailed(
            "need at least two vertices".into(),
        ));
    }
    if !g.is_strong() {
        return Err(ConstructionError::HypothesisFailed("digraph is not strong".into()));
    }
    let wheel = match g.find_wheel() {
        Some(w) => w,
        None => {
            return Err(ConstructionError::HypothesisFailed("digraph has no wheel".into()))
        }
    };
    let m = wheel.cycle.len();
    let contracted = g.contract_cycle(&wheel.cycle).unwrap();
    let c = contracted.center;
    let v_new = contracted.to_new[&wheel.center];
    // The center keeps its arc onto the collapsed cycle, and contraction
    // preserves strongness, so a good arc always exists.
    let witness = contracted
        .graph
        .find_good_arc((v_new, c))
        .expect("contracted wheel keeps the center arc and stays strong");
    let (a_new, b_new) = witness.arc;
    // A good arc never points at the contracted vertex, so only the tail
    // may need pulling back into the cycle.
    let b = contracted.to_old[b_new];
    let a = if a_new == c {
        contracted.back_map[&(c, b_new)].0
    } else {
        contracted.to_old[a_new]
    };
    let fds = gab_andnet(g, a, b).unwrap();
    Ok(Construction::new(
        fds,
        "strong_wheel_nilpotent",
        (2 * n - m + 1) as u32,
        false,
    )
    .with_report(vec![format!(
        "wheel center {} on cycle {:?}; negated literal on ({a}, {b})",
        wheel.center, wheel.cycle
    )]))
}

/// On a digraph with a primitive strict spanning subgraph H, the and-net
/// negating exactly the literals of the dropped arcs is nilpotent of class
/// at most n² − 2n + 3. When `h` is omitted, single-arc removals are tried
/// in ascending order.
pub fn primitive_andnet(
    g: &SignedDigraph,
    h: Option<&SignedDigraph>,
) -> Result<Construction, ConstructionError> {
    let n = g.n();
    let negated: Vec<(Vertex, Vertex)> = match h {
        Some(h) => {
            let sub = h.n() == n
                && h.arcs().all(|(u, v, _)| g.has_arc(u, v))
                && h.arc_count() < g.arc_count();
            if !(sub && h.is_primitive()) {
                return Err(ConstructionError::NoPrimitiveSubgraph(
                    "the given subgraph is not a primitive strict spanning subgraph".into(),
                ));
            }
            g.arcs().map(|(u, v, _)| (u, v)).filter(|&(u, v)| !h.has_arc(u, v)).collect()
        }
        None => {
            let dropped = g.arcs().map(|(u, v, _)| (u, v)).find(|&(u, v)| {
                let mut h = SignedDigraph::new(n);
                for (x, y, s) in g.arcs() {
                    if (x, y) != (u, v) {
                        h.add_arc(x, y, s).unwrap();
                    }
                }
                h.is_primitive()
            });
            match dropped {
                Some(arc) => vec![arc],
                None => {
                    return Err(ConstructionError::NoPrimitiveSubgraph(
                        "no single-arc removal leaves a strong primitive subgraph".into(),
                    ))
                }
            }
        }
    };
    let fds = andnet_fds(g, &negated);
    let bound = (n * n + 3 - 2 * n) as u32;
    Ok(Construction::new(fds, "primitive_andnet", bound, false).with_report(vec![format!(
        "negated literals on dropped arcs {negated:?}"
    )]))
}

/// Output of [`double_cycle_function`]: either a certified construction or
/// the definitive answer that no boolean nilpotent function exists on that
/// double cycle.
#[derive(Debug)]
pub enum DoubleCycleOutcome {
    Function(Construction),
    NoneExists,
}

/// The canonical boolean nilpotent function on the double cycle `C_{l,r}`,
/// of class exactly 2·max(l, r) − 1, when min(l, r) divides max(l, r);
/// otherwise no boolean nilpotent function exists on `C_{l,r}` at all.
pub fn double_cycle_function(
    l: usize,
    r: usize,
) -> Result<DoubleCycleOutcome, ConstructionError> {
    // Parameter validation matches the graph generator, including the
    // rejection of the degenerate (1, 1).
    let g = super::families::double_cycle_graph(l, r)?;
    let (mn, mx) = (l.min(r), l.max(r));
    if mx % mn != 0 {
        return Ok(DoubleCycleOutcome::NoneExists);
    }
    let n = l + r - 1;
    // Predecessors of the shared vertex on each cycle; a length-1 cycle is
    // a loop, making the shared vertex its own predecessor.
    let pred_l = if l == 1 { 1 } else { l };
    let pred_r = if r == 1 { 1 } else { n };
    // Every other component is the identity shift along its cycle; the
    // negation sits on the longer cycle's return arc.
    let negated = if l <= r { (pred_r, 1) } else { (pred_l, 1) };
    let fds = andnet_fds(&g, &[negated]);
    let c = Construction::new(fds, "double_cycle_function", 2 * mx as u32 - 1, false)
        .with_report(vec![format!(
            "shifts with the negated literal on ({}, 1)",
            negated.0
        )]);
    Ok(DoubleCycleOutcome::Function(c))
}
