//! Exhaustive search over systems with a prescribed interaction graph.
//!
//! The candidate space for a graph is the Cartesian product, over its
//! vertices, of every local table that depends essentially on exactly the
//! in-neighbors, with the dependence direction matching each arc's sign in
//! signed mode and unconstrained otherwise. Each candidate is analyzed in
//! full, so the verdicts are ground truth; the space grows doubly
//! exponentially, which confines the tool to tiny instances by design.

use rayon::prelude::*;

use crate::digraph::{Sign, SignedDigraph, Vertex};
use crate::dynamics::{Alphabet, Analyzer, DynamicsError, Fds, LocalFunction};

/// Default cap on how many candidate systems one search may analyze.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Hard cap on the raw table space filtered per vertex. A vertex whose raw
/// space exceeds this cannot even be enumerated, let alone searched.
const LOCAL_SPACE_CAP: u128 = 1 << 26;

/// Result of a search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Outcome {
    /// A nilpotent system exists. The space was exhausted, so `min_class`
    /// is exact and the witness is the lexicographically smallest candidate
    /// attaining it (tables compared vertex by vertex).
    Exists { min_class: u32, witness: Fds },
    /// Exhaustion found no nilpotent candidate. The exhausted product may
    /// be that of an initial component, whose answer decides the graph.
    NoneExists,
    /// The budget ran out first; `partial_min` is the best class seen.
    BudgetExceeded { partial_min: Option<u32> },
}

/// Outcome of a search together with how much work it took.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OracleVerdict {
    pub outcome: Outcome,
    /// Candidates analyzed, including any component-level prescan.
    pub functions_examined: u64,
    /// The cap `functions_examined` was charged against.
    pub budget: u64,
}

impl OracleVerdict {
    /// Three-line summary: `verdict`, `min_class`, `examined`. A budget
    /// verdict reports the best class seen, an upper bound only.
    pub fn to_text(&self) -> String {
        let (verdict, class) = match &self.outcome {
            Outcome::Exists { min_class, .. } => ("exists", Some(*min_class)),
            Outcome::NoneExists => ("none", None),
            Outcome::BudgetExceeded { partial_min } => ("budget", *partial_min),
        };
        let class = class.map_or_else(|| "-".into(), |k| k.to_string());
        format!("verdict {verdict}\nmin_class {class}\nexamined {}\n", self.functions_examined)
    }

    /// The witness system, when the outcome carries one.
    pub fn witness(&self) -> Option<&Fds> {
        match &self.outcome {
            Outcome::Exists { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

/// Answer to the bare existence question.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Admits {
    /// The first nilpotent candidate in enumeration order.
    Yes(Fds),
    /// Certified by exhaustion.
    No,
    /// The budget ran out before a hit or exhaustion.
    Unknown,
}

/// Lazy enumeration of local tables in ascending lexicographic order; every
/// yielded table depends essentially on each input and matches that input's
/// dependence constraint.
pub struct LocalTables {
    probe: LocalFunction,
    size: u8,
    wanted: Vec<Option<Sign>>,
    done: bool,
}

impl LocalTables {
    fn new(wanted: Vec<Option<Sign>>, alphabet: Alphabet) -> LocalTables {
        let len = (alphabet.size() as u128).pow(wanted.len() as u32);
        assert!(len <= 1 << 20, "arity too large to enumerate");
        LocalTables {
            probe: LocalFunction {
                inputs: (1..=wanted.len()).collect(),
                table: vec![0; len as usize],
            },
            size: alphabet.size(),
            wanted,
            done: false,
        }
    }

    fn accepts(&self) -> bool {
        self.wanted.iter().enumerate().all(|(p, want)| {
            let dep = self.probe.dependence(p, self.size);
            match want {
                Some(s) => dep == Some(*s),
                None => dep.is_some(),
            }
        })
    }
}

impl Iterator for LocalTables {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        while !self.done {
            let out = self.accepts().then(|| self.probe.table.clone());
            // Advance the table as a mixed-radix counter, last entry
            // fastest, so successive tables ascend lexicographically.
            self.done = true;
            for d in self.probe.table.iter_mut().rev() {
                *d += 1;
                if *d < self.size {
                    self.done = false;
                    break;
                }
                *d = 0;
            }
            if out.is_some() {
                return out;
            }
        }
        None
    }
}

/// Tables matching the given arc signs: `+` non-decreasing, `-`
/// non-increasing, `0` neither, each essential. With no inputs, the
/// constant tables.
pub fn enumerate_local_functions(signs: &[Sign], alphabet: Alphabet) -> LocalTables {
    LocalTables::new(signs.iter().map(|&s| Some(s)).collect(), alphabet)
}

/// Tables essential in every input, any dependence direction.
pub fn enumerate_essential_functions(k_in: usize, alphabet: Alphabet) -> LocalTables {
    LocalTables::new(vec![None; k_in], alphabet)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SearchMode {
    Minimize,
    FirstHit,
}

/// Per-vertex table lists and input vectors; the product of the lists is
/// the candidate space.
struct Space {
    lists: Vec<Vec<Vec<u8>>>,
    inputs: Vec<Vec<Vertex>>,
}

fn candidate_space(
    g: &SignedDigraph,
    alphabet: Alphabet,
    signed: bool,
) -> Result<Space, DynamicsError> {
    let size = alphabet.size() as u128;
    let mut lists = Vec::with_capacity(g.n());
    let mut inputs = Vec::with_capacity(g.n());
    for v in 1..=g.n() {
        let ins = g.in_neighbors_with_sign(v);
        let len = size.pow(ins.len() as u32);
        let raw = if len <= 1 << 20 { size.checked_pow(len as u32) } else { None };
        match raw {
            Some(r) if r <= LOCAL_SPACE_CAP => {}
            _ => {
                return Err(DynamicsError::CapExceeded {
                    needed: raw.unwrap_or(u128::MAX),
                    cap: LOCAL_SPACE_CAP as u64,
                })
            }
        }
        let tables = if signed {
            let signs: Vec<Sign> = ins.iter().map(|&(_, s)| s).collect();
            enumerate_local_functions(&signs, alphabet).collect()
        } else {
            enumerate_essential_functions(ins.len(), alphabet).collect()
        };
        lists.push(tables);
        inputs.push(ins.into_iter().map(|(j, _)| j).collect());
    }
    Ok(Space { lists, inputs })
}

fn build_candidate(space: &Space, alphabet: Alphabet, idx: &[usize]) -> Fds {
    let locals = idx
        .iter()
        .enumerate()
        .map(|(p, &i)| LocalFunction {
            inputs: space.inputs[p].clone(),
            table: space.lists[p][i].clone(),
        })
        .collect();
    Fds::new(alphabet, locals)
}

struct PartitionScan {
    examined: u64,
    best: Option<(u32, Vec<usize>)>,
    hit: Option<(u32, Vec<usize>)>,
}

/// Scans the sub-product with the first vertex's table fixed to `j`, in
/// lexicographic order over the remaining vertices, analyzing at most
/// `quota` candidates.
fn scan_partition(
    space: &Space,
    template: &Fds,
    j: usize,
    quota: u64,
    state_cap: u64,
    mode: SearchMode,
) -> PartitionScan {
    let n = space.lists.len();
    let mut fds = template.clone();
    let mut analyzer = Analyzer::new();
    let mut idx = vec![0usize; n];
    idx[0] = j;
    for v in 1..=n {
        fds.local_table_mut(v).clone_from(&space.lists[v - 1][idx[v - 1]]);
    }
    let mut out = PartitionScan { examined: 0, best: None, hit: None };
    let mut more = true;
    while more && out.examined < quota {
        let report = analyzer.analyze(&fds, state_cap).expect("state cap pre-checked");
        out.examined += 1;
        if report.nilpotent {
            let class = report.class.unwrap();
            match mode {
                SearchMode::FirstHit => {
                    out.hit = Some((class, idx.clone()));
                    break;
                }
                SearchMode::Minimize => {
                    if out.best.as_ref().map_or(true, |(b, _)| class < *b) {
                        out.best = Some((class, idx.clone()));
                    }
                }
            }
        }
        more = false;
        for p in (1..n).rev() {
            idx[p] += 1;
            if idx[p] < space.lists[p].len() {
                fds.local_table_mut(p + 1).clone_from(&space.lists[p][idx[p]]);
                more = true;
                break;
            }
            idx[p] = 0;
            fds.local_table_mut(p + 1).clone_from(&space.lists[p][0]);
        }
    }
    out
}

/// The search core. In `Minimize` mode `Exists` certifies exhaustion; in
/// `FirstHit` mode any hit yields `Exists` carrying the first witness in
/// enumeration order and its class, whether or not the space was finished.
fn search(
    g: &SignedDigraph,
    alphabet: Alphabet,
    signed: bool,
    budget: u64,
    state_cap: u64,
    mode: SearchMode,
    prune_components: bool,
) -> Result<OracleVerdict, DynamicsError> {
    let n = g.n();
    assert!(n >= 1, "a search needs at least one vertex");
    let needed = (alphabet.size() as u128).pow(n as u32);
    if needed > state_cap.min(u32::MAX as u64 - 2) as u128 {
        return Err(DynamicsError::CapExceeded { needed, cap: state_cap });
    }

    // Over unsigned booleans, the coordinates of an initial strong
    // component evolve on their own, so a nilpotent system on the whole
    // graph restricts to one on each such component. Exhausting one bad
    // component therefore settles the graph far below the full product.
    let mut examined = 0u64;
    if prune_components && !signed && alphabet.size() == 2 {
        let comps = g.initial_components();
        if comps.len() > 1 || comps[0].len() < n {
            for comp in &comps {
                let (sub, _) = g.induced_subgraph(comp);
                let left = budget.saturating_sub(examined);
                let sub_verdict =
                    search(&sub, alphabet, false, left, state_cap, SearchMode::FirstHit, false)?;
                examined += sub_verdict.functions_examined;
                if sub_verdict.outcome == Outcome::NoneExists {
                    return Ok(OracleVerdict {
                        outcome: Outcome::NoneExists,
                        functions_examined: examined,
                        budget,
                    });
                }
            }
        }
    }

    let space = candidate_space(g, alphabet, signed)?;
    let tail: u128 =
        space.lists[1..].iter().fold(1u128, |a, l| a.saturating_mul(l.len() as u128));
    let total = tail.saturating_mul(space.lists[0].len() as u128);
    if total == 0 {
        return Ok(OracleVerdict {
            outcome: Outcome::NoneExists,
            functions_examined: examined,
            budget,
        });
    }
    let left = budget.saturating_sub(examined);
    let exhausted = total <= left as u128;

    // Partitioned by the first vertex's table index. The sequential order
    // is partition-major, so per-partition quotas reproduce the first
    // `left` candidates of that order exactly and every reported answer is
    // independent of scheduling.
    let partitions = (((left as u128) + tail - 1) / tail).min(space.lists[0].len() as u128);
    let template = build_candidate(&space, alphabet, &vec![0; n]);
    let scans: Vec<PartitionScan> = (0..partitions as usize)
        .into_par_iter()
        .map(|j| {
            let quota = tail.min(left as u128 - j as u128 * tail) as u64;
            scan_partition(&space, &template, j, quota, state_cap, mode)
        })
        .collect();
    examined += scans.iter().map(|s| s.examined).sum::<u64>();

    let outcome = match mode {
        SearchMode::FirstHit => match scans.iter().find_map(|s| s.hit.as_ref()) {
            Some((class, idx)) => Outcome::Exists {
                min_class: *class,
                witness: build_candidate(&space, alphabet, idx),
            },
            None if exhausted => Outcome::NoneExists,
            None => Outcome::BudgetExceeded { partial_min: None },
        },
        SearchMode::Minimize => {
            let mut best: Option<(u32, &Vec<usize>)> = None;
            for s in &scans {
                if let Some((c, idx)) = &s.best {
                    if best.map_or(true, |(b, _)| *c < b) {
                        best = Some((*c, idx));
                    }
                }
            }
            if !exhausted {
                Outcome::BudgetExceeded { partial_min: best.map(|(c, _)| c) }
            } else if let Some((c, idx)) = best {
                Outcome::Exists { min_class: c, witness: build_candidate(&space, alphabet, idx) }
            } else {
                Outcome::NoneExists
            }
        }
    };
    Ok(OracleVerdict { outcome, functions_examined: examined, budget })
}

/// Minimal nilpotency class over every system whose interaction graph is
/// exactly `g`, by exhausting the candidate product.
pub fn min_nilpotent_class(
    g: &SignedDigraph,
    alphabet: Alphabet,
    signed: bool,
    budget: u64,
    state_cap: u64,
) -> Result<OracleVerdict, DynamicsError> {
    search(g, alphabet, signed, budget, state_cap, SearchMode::Minimize, true)
}

/// Existence only, stopping at the first nilpotent candidate.
pub fn admits_nilpotent(
    g: &SignedDigraph,
    alphabet: Alphabet,
    signed: bool,
    budget: u64,
    state_cap: u64,
) -> Result<Admits, DynamicsError> {
    let verdict = search(g, alphabet, signed, budget, state_cap, SearchMode::FirstHit, true)?;
    Ok(match verdict.outcome {
        Outcome::Exists { witness, .. } => Admits::Yes(witness),
        Outcome::NoneExists => Admits::No,
        Outcome::BudgetExceeded { .. } => Admits::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gen_family, Family};
    use crate::dynamics::DEFAULT_STATE_CAP;

    fn a2() -> Alphabet {
        Alphabet::new(2)
    }

    fn a3() -> Alphabet {
        Alphabet::new(3)
    }

    fn unsigned_graph(n: usize, arcs: &[(Vertex, Vertex)]) -> SignedDigraph {
        let signed: Vec<_> = arcs.iter().map(|&(u, v)| (u, v, Sign::Null)).collect();
        SignedDigraph::from_arcs(n, &signed)
    }

    fn min_unsigned(g: &SignedDigraph) -> OracleVerdict {
        min_nilpotent_class(g, a2(), false, DEFAULT_BUDGET, DEFAULT_STATE_CAP).unwrap()
    }

    #[test]
    fn no_inputs_yields_the_constants() {
        let tables: Vec<_> = enumerate_essential_functions(0, a3()).collect();
        assert_eq!(tables, vec![vec![0], vec![1], vec![2]]);
        let tables: Vec<_> = enumerate_local_functions(&[], a2()).collect();
        assert_eq!(tables, vec![vec![0], vec![1]]);
    }

    #[test]
    fn unary_boolean_tables() {
        let up: Vec<_> = enumerate_local_functions(&[Sign::Positive], a2()).collect();
        assert_eq!(up, vec![vec![0, 1]]);
        let down: Vec<_> = enumerate_local_functions(&[Sign::Negative], a2()).collect();
        assert_eq!(down, vec![vec![1, 0]]);
        assert_eq!(enumerate_local_functions(&[Sign::Null], a2()).count(), 0);
        let any: Vec<_> = enumerate_essential_functions(1, a2()).collect();
        assert_eq!(any, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn unary_ternary_counts() {
        assert_eq!(enumerate_local_functions(&[Sign::Positive], a3()).count(), 7);
        assert_eq!(enumerate_local_functions(&[Sign::Negative], a3()).count(), 7);
        assert_eq!(enumerate_local_functions(&[Sign::Null], a3()).count(), 10);
        assert_eq!(enumerate_essential_functions(1, a3()).count(), 24);
    }

    #[test]
    fn boolean_essential_counts() {
        assert_eq!(enumerate_essential_functions(1, a2()).count(), 2);
        assert_eq!(enumerate_essential_functions(2, a2()).count(), 10);
        assert_eq!(enumerate_essential_functions(3, a2()).count(), 218);
    }

    /// Checks a table against the constraints by comparing every pair of
    /// values of every input over every assignment of the others, a
    /// deliberately different walk from the enumerator's stride scan.
    fn direct_ok(table: &[u8], size: usize, want: &[Option<Sign>]) -> bool {
        let k = want.len();
        want.iter().enumerate().all(|(p, want)| {
            let stride = size.pow((k - 1 - p) as u32);
            let (mut up, mut down) = (false, false);
            for idx in 0..table.len() {
                let held = (idx / stride) % size;
                for higher in held + 1..size {
                    let jdx = idx + (higher - held) * stride;
                    match table[jdx].cmp(&table[idx]) {
                        std::cmp::Ordering::Greater => up = true,
                        std::cmp::Ordering::Less => down = true,
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            match want {
                Some(Sign::Positive) => up && !down,
                Some(Sign::Negative) => down && !up,
                Some(Sign::Null) => up && down,
                None => up || down,
            }
        })
    }

    #[test]
    fn enumeration_matches_a_direct_filter() {
        let wants: &[&[Option<Sign>]] = &[
            &[],
            &[None],
            &[Some(Sign::Positive)],
            &[Some(Sign::Negative)],
            &[Some(Sign::Null)],
            &[None, None],
            &[Some(Sign::Positive), Some(Sign::Negative)],
            &[Some(Sign::Null), Some(Sign::Null)],
            &[Some(Sign::Positive), Some(Sign::Positive)],
        ];
        for size in 2u8..=3 {
            let alphabet = Alphabet::new(size);
            for want in wants {
                let enumerated: Vec<_> = LocalTables::new(want.to_vec(), alphabet).collect();
                // Raw tables in the same lexicographic order.
                let mut direct = Vec::new();
                let mut table = vec![0u8; (size as usize).pow(want.len() as u32)];
                loop {
                    if direct_ok(&table, size as usize, want) {
                        direct.push(table.clone());
                    }
                    let mut wrapped = true;
                    for d in table.iter_mut().rev() {
                        *d += 1;
                        if *d < size {
                            wrapped = false;
                            break;
                        }
                        *d = 0;
                    }
                    if wrapped {
                        break;
                    }
                }
                assert_eq!(enumerated, direct, "size {size} want {want:?}");
            }
        }
    }

    #[test]
    fn cycles_admit_nothing_over_booleans() {
        for n in 1..=4 {
            let g = gen_family(Family::Cycle(n)).unwrap();
            let verdict = min_unsigned(&g);
            assert_eq!(verdict.outcome, Outcome::NoneExists, "cycle {n}");
            assert_eq!(verdict.functions_examined, 1 << n, "cycle {n}");
        }
    }

    #[test]
    fn signed_two_cycles_admit_nothing() {
        for (s1, s2) in [
            (Sign::Positive, Sign::Positive),
            (Sign::Positive, Sign::Negative),
            (Sign::Negative, Sign::Positive),
            (Sign::Negative, Sign::Negative),
        ] {
            let g = SignedDigraph::from_arcs(2, &[(1, 2, s1), (2, 1, s2)]);
            let verdict =
                min_nilpotent_class(&g, a2(), true, DEFAULT_BUDGET, DEFAULT_STATE_CAP).unwrap();
            assert_eq!(verdict.outcome, Outcome::NoneExists);
            assert_eq!(verdict.functions_examined, 1);
        }
    }

    #[test]
    fn initial_component_prune_settles_early() {
        // The loop forces f_1 into the two essential unary maps, neither of
        // which converges, so the component {1} alone decides the graph.
        let g = unsigned_graph(2, &[(1, 1), (1, 2)]);
        let verdict = min_unsigned(&g);
        assert_eq!(verdict.outcome, Outcome::NoneExists);
        assert_eq!(verdict.functions_examined, 2);
        let full =
            search(&g, a2(), false, DEFAULT_BUDGET, DEFAULT_STATE_CAP, SearchMode::Minimize, false)
                .unwrap();
        assert_eq!(full.outcome, Outcome::NoneExists);
        assert_eq!(full.functions_examined, 4);
    }

    #[test]
    fn prune_agrees_with_the_full_scan() {
        // Every digraph on three vertices with at most three arcs.
        let pairs: Vec<(Vertex, Vertex)> =
            (1..=3).flat_map(|u| (1..=3).map(move |v| (u, v))).collect();
        for mask in 0u16..1 << 9 {
            if mask.count_ones() > 3 {
                continue;
            }
            let arcs: Vec<(Vertex, Vertex)> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let g = unsigned_graph(3, &arcs);
            let pruned = min_unsigned(&g);
            let full = search(
                &g,
                a2(),
                false,
                DEFAULT_BUDGET,
                DEFAULT_STATE_CAP,
                SearchMode::Minimize,
                false,
            )
            .unwrap();
            assert_eq!(pruned.outcome, full.outcome, "arcs {arcs:?}");
        }
    }

    #[test]
    fn nested_cycles_reach_the_exact_class() {
        // Cycles of lengths one and two through a shared vertex: twenty
        // candidates, minimum class three.
        let g = gen_family(Family::DoubleCycle(1, 2)).unwrap();
        let verdict = min_unsigned(&g);
        assert_eq!(verdict.functions_examined, 20);
        match &verdict.outcome {
            Outcome::Exists { min_class, witness } => {
                assert_eq!(*min_class, 3);
                assert!(witness.matches_interaction_graph(&g, false).unwrap());
                let report = witness.analyze(DEFAULT_STATE_CAP).unwrap();
                assert_eq!(report.class, Some(3));
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn smallest_two_level_instance_needs_class_three() {
        let g = gen_family(Family::TightFull(1)).unwrap();
        let verdict =
            min_nilpotent_class(&g, a3(), true, DEFAULT_BUDGET, DEFAULT_STATE_CAP).unwrap();
        let root_tables = {
            let signs = [Sign::Null, Sign::Null];
            enumerate_local_functions(&signs, a3()).count() as u64
        };
        assert_eq!(verdict.functions_examined, root_tables * 7 * 10);
        match &verdict.outcome {
            Outcome::Exists { min_class, witness } => {
                assert_eq!(*min_class, 3);
                assert!(witness.matches_interaction_graph(&g, true).unwrap());
                assert_eq!(witness.analyze(DEFAULT_STATE_CAP).unwrap().class, Some(3));
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn budget_cuts_are_deterministic() {
        let g = gen_family(Family::Cycle(3)).unwrap();
        let cut = |budget| min_nilpotent_class(&g, a2(), false, budget, DEFAULT_STATE_CAP).unwrap();
        let first = cut(5);
        assert_eq!(first.outcome, Outcome::BudgetExceeded { partial_min: None });
        assert_eq!(first.functions_examined, 5);
        assert_eq!(first, cut(5));
        let exact = cut(8);
        assert_eq!(exact.outcome, Outcome::NoneExists);
        assert_eq!(exact.functions_examined, 8);
    }

    #[test]
    fn existence_shortcuts_and_reports() {
        let g = gen_family(Family::DoubleCycle(1, 2)).unwrap();
        match admits_nilpotent(&g, a2(), false, DEFAULT_BUDGET, DEFAULT_STATE_CAP).unwrap() {
            Admits::Yes(witness) => {
                assert!(witness.matches_interaction_graph(&g, false).unwrap());
                assert!(witness.analyze(DEFAULT_STATE_CAP).unwrap().nilpotent);
            }
            other => panic!("unexpected answer {other:?}"),
        }
        let c2 = gen_family(Family::Cycle(2)).unwrap();
        assert_eq!(
            admits_nilpotent(&c2, a2(), false, DEFAULT_BUDGET, DEFAULT_STATE_CAP).unwrap(),
            Admits::No
        );
        let c3 = gen_family(Family::Cycle(3)).unwrap();
        assert_eq!(admits_nilpotent(&c3, a2(), false, 2, DEFAULT_STATE_CAP).unwrap(), Admits::Unknown);
    }

    /// A single in-neighbor of positive in-degree pins the vertex to an
    /// eventually revealing copy of it, so class two is out of reach; with a
    /// constant feed the copy goes quiet in one step and class two appears.
    #[test]
    fn lone_feeds_block_class_two_unless_constant() {
        let path = unsigned_graph(2, &[(1, 2)]);
        match min_unsigned(&path).outcome {
            Outcome::Exists { min_class, .. } => assert_eq!(min_class, 2),
            other => panic!("unexpected outcome {other:?}"),
        }
        let chain = unsigned_graph(3, &[(1, 2), (2, 3)]);
        match min_unsigned(&chain).outcome {
            Outcome::Exists { min_class, .. } => assert_eq!(min_class, 3),
            other => panic!("unexpected outcome {other:?}"),
        }
        // A cycle feeding a pendant vertex: still nothing, decided by the
        // component alone.
        let lollipop = unsigned_graph(3, &[(1, 2), (2, 1), (1, 3)]);
        assert_eq!(min_unsigned(&lollipop).outcome, Outcome::NoneExists);
    }

    #[test]
    fn state_cap_is_enforced() {
        let g = gen_family(Family::Cycle(4)).unwrap();
        let err = min_nilpotent_class(&g, a2(), false, DEFAULT_BUDGET, 8).unwrap_err();
        assert!(matches!(err, DynamicsError::CapExceeded { needed: 16, cap: 8 }));
    }

    #[test]
    fn verdict_text_is_three_lines() {
        let g = gen_family(Family::Cycle(2)).unwrap();
        let verdict = min_unsigned(&g);
        assert_eq!(verdict.to_text(), "verdict none\nmin_class -\nexamined 4\n");
        // Two prescan candidates for the initial component, four for the
        // product itself.
        let path = unsigned_graph(2, &[(1, 2)]);
        assert_eq!(min_unsigned(&path).to_text(), "verdict exists\nmin_class 2\nexamined 6\n");
    }
}
