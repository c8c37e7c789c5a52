//! Constructions over alphabets with three or four letters, where nilpotent
//! dynamics exist far more freely than over booleans.

use super::{indicator_net, tabulate, Construction, ConstructionError};
use crate::digraph::{Sign, SignedDigraph, Vertex};
use crate::dynamics::{Alphabet, Fds, LocalFunction};

/// A nilpotent function of class at most 2 over {0, 1, 2, 3} for any signed
/// digraph. Each component is a conjunction of one indicator per in-arc:
/// [x_j >= 2] for positive, [x_j < 2] for negative, [x_j = 2] for null.
pub fn nilpotent_4letter(g: &SignedDigraph) -> Construction {
    let locals = g
        .vertices()
        .map(|i| {
            indicator_net(g, i, 4, 1, false, |s, v| match s {
                Sign::Positive => v >= 2,
                Sign::Negative => v < 2,
                Sign::Null => v == 2,
            })
        })
        .collect();
    let fds = Fds::new(Alphabet::new(4), locals);
    Construction::new(fds, "nilpotent_4letter", 2, true)
}

/// A nilpotent function of class at most 2 over {0, 1, 2}, available when
/// either no vertex has exactly one null in-arc (an OR/XOR form), or every
/// vertex has at least one (a doubled AND form).
pub fn nilpotent_3letter_class2(
    g: &SignedDigraph,
) -> Result<Construction, ConstructionError> {
    let null_counts: Vec<usize> = g
        .vertices()
        .map(|i| g.in_neighbors_signed(i, Sign::Null).len())
        .collect();

    if null_counts.iter().all(|&c| c != 1) {
        // With zero or >= 2 null in-arcs per vertex, the parity of the null
        // block keeps every null arc essential and non-monotone.
        let locals = g
            .vertices()
            .map(|i| {
                let ins = g.in_neighbors_with_sign(i);
                let inputs: Vec<Vertex> = ins.iter().map(|&(j, _)| j).collect();
                let signs: Vec<Sign> = ins.iter().map(|&(_, s)| s).collect();
                tabulate(inputs, 3, move |vals| {
                    let mut or = false;
                    let mut parity = false;
                    for (&s, &v) in signs.iter().zip(vals) {
                        match s {
                            Sign::Positive => or |= v == 2,
                            Sign::Negative => or |= v < 2,
                            Sign::Null => parity ^= v == 2,
                        }
                    }
                    (or || parity) as u8
                })
            })
            .collect();
        let fds = Fds::new(Alphabet::new(3), locals);
        return Ok(Construction::new(fds, "nilpotent_3letter_class2", 2, true)
            .with_report(vec!["branch: no vertex with a unique null in-arc".into()]));
    }

    if null_counts.iter().all(|&c| c >= 1) {
        let locals = g
            .vertices()
            .map(|i| {
                indicator_net(g, i, 3, 2, false, |s, v| match s {
                    Sign::Positive => v == 2,
                    Sign::Negative => v < 2,
                    Sign::Null => v == 1,
                })
            })
            .collect();
        let fds = Fds::new(Alphabet::new(3), locals);
        return Ok(Construction::new(fds, "nilpotent_3letter_class2", 2, true)
            .with_report(vec!["branch: every vertex has a null in-arc".into()]));
    }

    let unique = g.vertices().find(|&i| null_counts[i - 1] == 1).unwrap();
    let none = g.vertices().find(|&i| null_counts[i - 1] == 0).unwrap();
    Err(ConstructionError::HypothesisFailed(format!(
        "vertex {unique} has exactly one null in-arc while vertex {none} has none; \
         neither branch applies"
    )))
}

/// Reinterprets `f` over a larger alphabet by clamping inputs back into the
/// original one. Nilpotency and class are preserved exactly.
pub fn extend_alphabet(f: &Fds, target: Alphabet) -> Result<Fds, ConstructionError> {
    let old = f.alphabet();
    if target.size() < old.size() {
        return Err(ConstructionError::BadAlphabet(format!(
            "target alphabet of size {} does not contain the source of size {}",
            target.size(),
            old.size()
        )));
    }
    if target.size() == old.size() {
        return Ok(f.clone());
    }
    let locals = (1..=f.n())
        .map(|i| {
            let local = f.local(i).clone();
            let inputs = local.inputs.clone();
            tabulate(inputs, target.size(), move |vals| {
                let clamped: Vec<u8> = vals.iter().map(|&v| v.min(old.max())).collect();
                let mut idx = 0usize;
                for &v in &clamped {
                    idx = idx * old.size() as usize + v as usize;
                }
                local.table[idx]
            })
        })
        .collect();
    Ok(Fds::new(target, locals))
}

/// Extends nilpotent functions on the initial strong components to the whole
/// graph. Vertices outside the components relax toward a target point in a
/// cascade along a spanning forest, giving class at most r + max depth where
/// r is the largest component class.
///
/// `parts` supplies one system per initial component, in order of smallest
/// member, over the component's vertices renumbered ascending. Over a
/// two-letter alphabet every null arc must stay inside a component.
pub fn extend_from_initial(
    g: &SignedDigraph,
    parts: &[Fds],
    state_cap: u64,
) -> Result<Construction, ConstructionError> {
    let components = g.initial_components();
    if parts.len() != components.len() {
        return Err(ConstructionError::HypothesisFailed(format!(
            "expected {} component functions, got {}",
            components.len(),
            parts.len()
        )));
    }
    if parts.is_empty() {
        unreachable!("a digraph always has an initial component");
    }
    let alphabet = parts[0].alphabet();
    let size = alphabet.size();

    let mut in_component = vec![false; g.n() + 1];
    for comp in &components {
        for &v in comp {
            in_component[v] = true;
        }
    }

    if size == 2 {
        for (u, v, s) in g.arcs() {
            if s == Sign::Null {
                let inside = components.iter().any(|c| c.contains(&u) && c.contains(&v));
                if !inside {
                    return Err(ConstructionError::HypothesisFailed(format!(
                        "null arc ({u}, {v}) leaves the initial components, which a \
                         two-letter alphabet cannot absorb"
                    )));
                }
            }
        }
    }

    // Validate each part: right size, right alphabet, exactly the induced
    // interaction graph, and nilpotent; record its class and fixed point.
    let mut alpha = vec![0u8; g.n() + 1];
    let mut r = 0u32;
    for (comp, part) in components.iter().zip(parts) {
        if part.alphabet() != alphabet {
            return Err(ConstructionError::HypothesisFailed(
                "component functions use differing alphabets".into(),
            ));
        }
        if part.n() != comp.len() {
            return Err(ConstructionError::HypothesisFailed(format!(
                "component {:?} has {} vertices but its function has {}",
                comp,
                comp.len(),
                part.n()
            )));
        }
        let (induced, _) = g.induced_subgraph(comp);
        match part.matches_interaction_graph(&induced, true) {
            Ok(true) => {}
            _ => {
                return Err(ConstructionError::HypothesisFailed(format!(
                    "supplied function is not a function of the component {comp:?} \
                     (signed interaction graph differs)"
                )))
            }
        }
        let report = part.analyze(state_cap).map_err(|e| {
            ConstructionError::HypothesisFailed(format!(
                "cannot verify the component function on {comp:?}: {e}"
            ))
        })?;
        if !report.nilpotent {
            return Err(ConstructionError::NotNilpotent(format!(
                "component function on {comp:?} is not nilpotent"
            )));
        }
        r = r.max(report.class.unwrap());
        for (pos, &v) in comp.iter().enumerate() {
            alpha[v] = report.fixed_point.as_ref().unwrap()[pos];
        }
    }

    // Spanning forest rooted at the components, then the target point alpha
    // by increasing depth: a vertex relaxes to 0 exactly when its forest
    // parent's target value falsifies the literal on the parent arc.
    let roots: Vec<Vertex> =
        g.vertices().filter(|&v| in_component[v]).collect();
    let parent = g
        .spanning_forest_rooted_at(&roots)
        .expect("every vertex is reachable from an initial component");
    let mut depth = vec![0u32; g.n() + 1];
    let mut order: Vec<Vertex> = parent.keys().copied().collect();
    // Parent depths are available before children's because depth along a
    // forest path increases; process by repeatedly resolving known parents.
    order.sort_unstable();
    let mut resolved: Vec<Vertex> = Vec::new();
    while !order.is_empty() {
        let before = order.len();
        order.retain(|&v| {
            let p = parent[&v];
            if in_component[p] || resolved.contains(&p) {
                depth[v] = depth[p] + 1;
                resolved.push(v);
                false
            } else {
                true
            }
        });
        assert!(order.len() < before, "cycle in spanning forest");
    }
    resolved.sort_unstable_by_key(|&v| depth[v]);
    for &i in &resolved {
        let p = parent[&i];
        let s = g.sign(p, i).unwrap();
        let zero = match s {
            Sign::Positive => alpha[p] == 0,
            Sign::Negative => alpha[p] > 0,
            Sign::Null => alpha[p] != 1,
        };
        alpha[i] = if zero { 0 } else { 1 };
    }

    // Component vertices keep their own dynamics; the rest get an AND (when
    // relaxing to 0) or OR (to 1) of one indicator per in-arc.
    let mut locals: Vec<LocalFunction> = Vec::with_capacity(g.n());
    for i in g.vertices() {
        if in_component[i] {
            let (comp_idx, comp) = components
                .iter()
                .enumerate()
                .find(|(_, c)| c.contains(&i))
                .unwrap();
            let pos = comp.iter().position(|&v| v == i).unwrap();
            let local = parts[comp_idx].local(pos + 1);
            let inputs = local.inputs.iter().map(|&j| comp[j - 1]).collect();
            locals.push(LocalFunction { inputs, table: local.table.clone() });
        } else {
            locals.push(indicator_net(g, i, size, 1, alpha[i] == 1, |s, v| match s {
                Sign::Positive => v >= 1,
                Sign::Negative => v == 0,
                Sign::Null => v == 1,
            }));
        }
    }
    let max_depth = (1..=g.n()).map(|v| depth[v]).max().unwrap_or(0);
    let fds = Fds::new(alphabet, locals);
    Ok(Construction::new(fds, "extend_from_initial", r + max_depth, true)
        .with_report(vec![format!(
            "component classes at most {r}, forest depth {max_depth}"
        )]))
}
