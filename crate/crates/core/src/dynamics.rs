//! Finite dynamical systems `f : A^n -> A^n` over an alphabet
//! `A = {0, ..., s}`: evaluation, iteration, interaction-graph extraction,
//! and exhaustive nilpotency analysis.
//!
//! `f` is nilpotent when some iterate `f^k` is constant; the smallest such
//! `k` is its class.  A constant map has class 1 (a vacuous class 0 would
//! need n = 0, which the text format rejects).

use crate::digraph::{Sign, SignedDigraph, Vertex};
use thiserror::Error;

/// A state packed as a base-|A| integer, `x_1` most significant.
pub type State = u64;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("state space needs {needed} states, cap is {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("function has {fds_n} components but digraph has {graph_n} vertices")]
    DimensionMismatch { fds_n: usize, graph_n: usize },
}

/// Alphabet `{0, ..., s}` with `size = s + 1 >= 2` letters.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Alphabet(u8);

impl Alphabet {
    pub fn new(size: u8) -> Alphabet {
        assert!(size >= 2, "alphabet needs at least two letters");
        Alphabet(size)
    }

    pub fn size(self) -> u8 {
        self.0
    }

    /// Largest letter s.
    pub fn max(self) -> u8 {
        self.0 - 1
    }
}

/// One component `f_i`, a lookup table over the declared inputs.  The table
/// is indexed by the mixed-radix number of the input values, first declared
/// input most significant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalFunction {
    pub inputs: Vec<Vertex>,
    pub table: Vec<u8>,
}

impl LocalFunction {
    pub fn constant(value: u8) -> LocalFunction {
        LocalFunction { inputs: Vec::new(), table: vec![value] }
    }

    fn eval(&self, x: &[u8], size: u8) -> u8 {
        let mut idx = 0usize;
        for &j in &self.inputs {
            idx = idx * size as usize + x[j - 1] as usize;
        }
        self.table[idx]
    }

    /// Direction of the essential dependence on the declared input at
    /// position `p`: compares table entries across every adjacent pair of
    /// values of that input.  `None` when the input never matters.
    pub(crate) fn dependence(&self, p: usize, size: u8) -> Option<Sign> {
        let size = size as usize;
        let stride = size.pow((self.inputs.len() - 1 - p) as u32);
        let (mut up, mut down) = (false, false);
        for idx in 0..self.table.len() {
            if (idx / stride) % size + 1 < size {
                match self.table[idx + stride].cmp(&self.table[idx]) {
                    std::cmp::Ordering::Greater => up = true,
                    std::cmp::Ordering::Less => down = true,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        match (up, down) {
            (false, false) => None,
            (true, false) => Some(Sign::Positive),
            (false, true) => Some(Sign::Negative),
            (true, true) => Some(Sign::Null),
        }
    }
}

/// States on limit cycles, reported when a system is not nilpotent.  The
/// sample lists at most [`LIMIT_SAMPLE_CAP`] states in ascending packed
/// order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LimitStructure {
    pub cycle_state_count: u64,
    pub sample: Vec<Vec<u8>>,
}

pub const LIMIT_SAMPLE_CAP: usize = 32;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DynamicsReport {
    pub nilpotent: bool,
    pub class: Option<u32>,
    pub fixed_point: Option<Vec<u8>>,
    pub state_count: u64,
    pub limit: Option<LimitStructure>,
}

/// Default cap on the number of packed states `analyze` will enumerate.
pub const DEFAULT_STATE_CAP: u64 = 1 << 27;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fds {
    alphabet: Alphabet,
    locals: Vec<LocalFunction>,
}

impl Fds {
    /// Builds a system from per-vertex locals (`locals[i - 1]` is `f_i`);
    /// panics if an invariant is broken (the parser reports errors instead).
    pub fn new(alphabet: Alphabet, locals: Vec<LocalFunction>) -> Fds {
        let n = locals.len();
        assert!(n >= 1, "a system needs at least one component");
        for (i, l) in locals.iter().enumerate() {
            assert!(
                l.inputs.windows(2).all(|w| w[0] < w[1]),
                "inputs of f_{} must be strictly ascending",
                i + 1
            );
            assert!(
                l.inputs.iter().all(|&j| (1..=n).contains(&j)),
                "inputs of f_{} out of range",
                i + 1
            );
            assert_eq!(
                l.table.len(),
                (alphabet.size() as usize).pow(l.inputs.len() as u32),
                "table length of f_{} does not match its arity",
                i + 1
            );
            assert!(
                l.table.iter().all(|&v| v <= alphabet.max()),
                "table of f_{} contains a value outside the alphabet",
                i + 1
            );
        }
        Fds { alphabet, locals }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn n(&self) -> usize {
        self.locals.len()
    }

    pub fn local(&self, i: Vertex) -> &LocalFunction {
        &self.locals[i - 1]
    }

    /// Mutable access to the table of `f_i`, for bulk scans that rewrite one
    /// candidate in place instead of rebuilding the system. The caller must
    /// keep the length and value range intact.
    pub(crate) fn local_table_mut(&mut self, i: Vertex) -> &mut Vec<u8> {
        &mut self.locals[i - 1].table
    }

    pub fn state_count(&self) -> u128 {
        (self.alphabet.size() as u128).pow(self.n() as u32)
    }

    pub fn evaluate(&self, x: &[u8]) -> Vec<u8> {
        assert_eq!(x.len(), self.n());
        self.locals.iter().map(|l| l.eval(x, self.alphabet.size())).collect()
    }

    pub fn iterate(&self, x: &[u8], k: u64) -> Vec<u8> {
        let mut cur = x.to_vec();
        for _ in 0..k {
            cur = self.evaluate(&cur);
        }
        cur
    }

    pub fn evaluate_packed(&self, s: State) -> State {
        pack(&self.evaluate(&unpack(s, self.n(), self.alphabet.size())), self.alphabet.size())
    }

    /// Signed digraph of essential dependencies: arc (j, i) iff `f_i` really
    /// depends on `x_j`, signed by the direction of the dependence.
    /// Declared-but-inessential inputs produce no arc.
    pub fn interaction_graph(&self) -> SignedDigraph {
        let mut g = SignedDigraph::new(self.n());
        for (i, l) in self.locals.iter().enumerate() {
            for (p, &j) in l.inputs.iter().enumerate() {
                if let Some(sign) = l.dependence(p, self.alphabet.size()) {
                    g.add_arc(j, i + 1, sign).unwrap();
                }
            }
        }
        g
    }

    /// Does this system have `g` as its interaction graph?  In unsigned
    /// mode only the underlying digraphs are compared.
    pub fn matches_interaction_graph(
        &self,
        g: &SignedDigraph,
        signed: bool,
    ) -> Result<bool, DynamicsError> {
        if self.n() != g.n() {
            return Err(DynamicsError::DimensionMismatch { fds_n: self.n(), graph_n: g.n() });
        }
        let ig = self.interaction_graph();
        Ok(if signed { ig == *g } else { ig.underlying_equal(g) })
    }

    pub fn analyze(&self, state_cap: u64) -> Result<DynamicsReport, DynamicsError> {
        Analyzer::new().analyze(self, state_cap)
    }
}

pub fn pack(x: &[u8], size: u8) -> State {
    let mut s = 0u64;
    for &v in x {
        debug_assert!(v < size);
        s = s * size as u64 + v as u64;
    }
    s
}

pub fn unpack(s: State, n: usize, size: u8) -> Vec<u8> {
    let mut x = vec![0u8; n];
    let mut t = s;
    for i in (0..n).rev() {
        x[i] = (t % size as u64) as u8;
        t /= size as u64;
    }
    debug_assert_eq!(t, 0, "state out of range");
    x
}

/// Outcome of classifying a raw successor array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawAnalysis {
    pub nilpotent: bool,
    /// Maximum hitting time of the fixed point; meaningful when nilpotent.
    pub class: u32,
    pub fixed_point: State,
    pub recurrent_count: u64,
}

/// Reusable buffers for successor-map analysis, so that bulk callers (the
/// search oracle) avoid reallocating per candidate function.
pub struct Analyzer {
    succ: Vec<u32>,
    dist: Vec<u32>,
    path: Vec<u32>,
    x: Vec<u8>,
}

const UNSEEN: u32 = u32::MAX;
const PENDING: u32 = u32::MAX - 1;

impl Default for Analyzer {
    fn default() -> Analyzer {
        Analyzer::new()
    }
}

impl Analyzer {
    pub fn new() -> Analyzer {
        Analyzer { succ: Vec::new(), dist: Vec::new(), path: Vec::new(), x: Vec::new() }
    }

    /// The successor buffer, resized for `n_states`; callers may fill it
    /// directly and then call [`Analyzer::classify`].
    pub fn successors(&mut self, n_states: usize) -> &mut [u32] {
        self.succ.clear();
        self.succ.resize(n_states, 0);
        &mut self.succ
    }

    /// Walks the functional graph in the successor buffer: distances to the
    /// recurrent states are found by following each chain and unwinding, so
    /// the whole pass is linear.  Nilpotent means exactly one recurrent
    /// state, necessarily a fixed point; the class is the longest distance
    /// to it.
    pub fn classify(&mut self, n_states: usize) -> RawAnalysis {
        let succ = &self.succ[..n_states];
        self.dist.clear();
        self.dist.resize(n_states, UNSEEN);
        let dist = &mut self.dist;
        let mut cycles = 0u64;
        let mut recurrent = 0u64;
        let mut long_cycle = false;
        let mut fixed_point = 0u32;

        for start in 0..n_states as u32 {
            if dist[start as usize] != UNSEEN {
                continue;
            }
            self.path.clear();
            let mut cur = start;
            while dist[cur as usize] == UNSEEN {
                dist[cur as usize] = PENDING;
                self.path.push(cur);
                cur = succ[cur as usize];
            }
            let base = if dist[cur as usize] == PENDING {
                // The chain closed on itself: everything from the first
                // occurrence of `cur` onward is a new cycle.
                let pos = self.path.iter().position(|&s| s == cur).unwrap();
                let len = self.path.len() - pos;
                cycles += 1;
                recurrent += len as u64;
                if len == 1 {
                    if cycles == 1 {
                        fixed_point = cur;
                    }
                } else {
                    long_cycle = true;
                }
                for &s in &self.path[pos..] {
                    dist[s as usize] = 0;
                }
                self.path.truncate(pos);
                0
            } else {
                dist[cur as usize]
            };
            for (k, &s) in self.path.iter().rev().enumerate() {
                dist[s as usize] = base + 1 + k as u32;
            }
        }

        let nilpotent = cycles == 1 && !long_cycle;
        let class = if nilpotent { dist.iter().copied().max().unwrap_or(0) } else { 0 };
        RawAnalysis { nilpotent, class, fixed_point: fixed_point as State, recurrent_count: recurrent }
    }

    /// States on cycles after [`Analyzer::classify`], ascending, at most
    /// `cap` of them.
    fn recurrent_sample(&self, n_states: usize, cap: usize) -> Vec<State> {
        (0..n_states as u64).filter(|&s| self.dist[s as usize] == 0).take(cap).collect()
    }

    pub fn analyze(&mut self, f: &Fds, state_cap: u64) -> Result<DynamicsReport, DynamicsError> {
        // Successor indices are u32, so the cap can never usefully exceed
        // that range.
        let effective_cap = state_cap.min(u32::MAX as u64 - 2);
        let needed = f.state_count();
        if needed > effective_cap as u128 {
            return Err(DynamicsError::CapExceeded { needed, cap: state_cap });
        }
        let n_states = needed as usize;
        let n = f.n();
        let size = f.alphabet.size();

        self.succ.clear();
        self.succ.resize(n_states, 0);
        self.x.clear();
        self.x.resize(n, 0);
        for s in 0..n_states {
            let mut t = s as u64;
            for i in (0..n).rev() {
                self.x[i] = (t % size as u64) as u8;
                t /= size as u64;
            }
            let mut out = 0u64;
            for l in &f.locals {
                out = out * size as u64 + l.eval(&self.x, size) as u64;
            }
            self.succ[s] = out as u32;
        }

        let raw = self.classify(n_states);
        Ok(DynamicsReport {
            nilpotent: raw.nilpotent,
            class: raw.nilpotent.then_some(raw.class),
            fixed_point: raw.nilpotent.then(|| unpack(raw.fixed_point, n, size)),
            state_count: n_states as u64,
            limit: (!raw.nilpotent).then(|| LimitStructure {
                cycle_state_count: raw.recurrent_count,
                sample: self
                    .recurrent_sample(n_states, LIMIT_SAMPLE_CAP)
                    .into_iter()
                    .map(|s| unpack(s, n, size))
                    .collect(),
            }),
        })
    }
}

/// A parsed function file: the system plus the optional certificate block
/// that construction commands append.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FdsFile {
    pub fds: Fds,
    pub method: Option<String>,
    pub bound: Option<u32>,
    pub signed_match: Option<bool>,
}

impl FdsFile {
    pub fn plain(fds: Fds) -> FdsFile {
        FdsFile { fds, method: None, bound: None, signed_match: None }
    }

    /// Parses the line-oriented function format: `fds`, `alphabet <size>`,
    /// `n <count>`, then `inputs <i> <j...>` and `table <i> <v...>` per
    /// vertex, optionally followed by `method` / `bound` / `signed_match`
    /// certificate lines.  `#` lines and blank lines are skipped.
    pub fn parse(text: &str) -> Result<FdsFile, DynamicsError> {
        let mut saw_header = false;
        let mut alphabet: Option<Alphabet> = None;
        let mut n: Option<usize> = None;
        let mut inputs: Vec<Option<Vec<Vertex>>> = Vec::new();
        let mut tables: Vec<Option<Vec<u8>>> = Vec::new();
        let mut method = None;
        let mut bound = None;
        let mut signed_match = None;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = t.split_whitespace().collect();
            let fail = |msg: String| DynamicsError::Parse { line, msg };
            if !saw_header {
                if toks == ["fds"] {
                    saw_header = true;
                    continue;
                }
                return Err(fail("expected 'fds' header".into()));
            }
            match toks[0] {
                "fds" => return Err(fail("duplicate 'fds' header".into())),
                "alphabet" => {
                    if alphabet.is_some() {
                        return Err(fail("duplicate 'alphabet'".into()));
                    }
                    if toks.len() != 2 {
                        return Err(fail("expected 'alphabet <size>'".into()));
                    }
                    let size: u8 = toks[1]
                        .parse()
                        .map_err(|_| fail(format!("bad alphabet size '{}'", toks[1])))?;
                    if size < 2 {
                        return Err(fail("alphabet size must be at least 2".into()));
                    }
                    alphabet = Some(Alphabet::new(size));
                }
                "n" => {
                    if n.is_some() {
                        return Err(fail("duplicate 'n'".into()));
                    }
                    if toks.len() != 2 {
                        return Err(fail("expected 'n <count>'".into()));
                    }
                    let count: usize = toks[1]
                        .parse()
                        .map_err(|_| fail(format!("bad component count '{}'", toks[1])))?;
                    if count == 0 {
                        return Err(fail("component count must be at least 1".into()));
                    }
                    n = Some(count);
                    inputs = vec![None; count];
                    tables = vec![None; count];
                }
                "inputs" | "table" => {
                    let count = n.ok_or_else(|| fail(format!("'{}' before 'n'", toks[0])))?;
                    let size =
                        alphabet.ok_or_else(|| fail(format!("'{}' before 'alphabet'", toks[0])))?;
                    if toks.len() < 2 {
                        return Err(fail(format!("expected '{} <i> ...'", toks[0])));
                    }
                    let i: usize = toks[1]
                        .parse()
                        .ok()
                        .filter(|&i| (1..=count).contains(&i))
                        .ok_or_else(|| fail(format!("bad vertex '{}'", toks[1])))?;
                    let rest = &toks[2..];
                    if toks[0] == "inputs" {
                        if inputs[i - 1].is_some() {
                            return Err(fail(format!("duplicate 'inputs {i}'")));
                        }
                        let mut js = Vec::with_capacity(rest.len());
                        for tk in rest {
                            let j: usize = tk
                                .parse()
                                .ok()
                                .filter(|&j| (1..=count).contains(&j))
                                .ok_or_else(|| fail(format!("bad input vertex '{tk}'")))?;
                            js.push(j);
                        }
                        if !js.windows(2).all(|w| w[0] < w[1]) {
                            return Err(fail("inputs must be strictly ascending".into()));
                        }
                        inputs[i - 1] = Some(js);
                    } else {
                        let arity = inputs[i - 1]
                            .as_ref()
                            .ok_or_else(|| fail(format!("'table {i}' before 'inputs {i}'")))?
                            .len();
                        if tables[i - 1].is_some() {
                            return Err(fail(format!("duplicate 'table {i}'")));
                        }
                        let want = (size.size() as usize).pow(arity as u32);
                        if rest.len() != want {
                            return Err(fail(format!(
                                "table {i} has {} entries, expected {want}",
                                rest.len()
                            )));
                        }
                        let mut vals = Vec::with_capacity(want);
                        for tk in rest {
                            let v: u8 = tk
                                .parse()
                                .ok()
                                .filter(|&v| v <= size.max())
                                .ok_or_else(|| fail(format!("bad table value '{tk}'")))?;
                            vals.push(v);
                        }
                        tables[i - 1] = Some(vals);
                    }
                }
                "method" => {
                    if toks.len() != 2 {
                        return Err(fail("expected 'method <name>'".into()));
                    }
                    method = Some(toks[1].to_string());
                }
                "bound" => {
                    if toks.len() != 2 {
                        return Err(fail("expected 'bound <k>'".into()));
                    }
                    bound = Some(
                        toks[1].parse().map_err(|_| fail(format!("bad bound '{}'", toks[1])))?,
                    );
                }
                "signed_match" => {
                    if toks.len() != 2 || !matches!(toks[1], "true" | "false") {
                        return Err(fail("expected 'signed_match <true|false>'".into()));
                    }
                    signed_match = Some(toks[1] == "true");
                }
                other => return Err(fail(format!("unknown directive '{other}'"))),
            }
        }

        let fail_end = |msg: String| DynamicsError::Parse { line: text.lines().count(), msg };
        if !saw_header {
            return Err(DynamicsError::Parse { line: 1, msg: "missing 'fds' header".into() });
        }
        let alphabet = alphabet.ok_or_else(|| fail_end("missing 'alphabet'".into()))?;
        let count = n.ok_or_else(|| fail_end("missing 'n'".into()))?;
        let mut locals = Vec::with_capacity(count);
        for i in 1..=count {
            let ins = inputs[i - 1]
                .take()
                .ok_or_else(|| fail_end(format!("missing 'inputs {i}'")))?;
            let table =
                tables[i - 1].take().ok_or_else(|| fail_end(format!("missing 'table {i}'")))?;
            locals.push(LocalFunction { inputs: ins, table });
        }
        Ok(FdsFile { fds: Fds::new(alphabet, locals), method, bound, signed_match })
    }

    /// Canonical serialization; certificate lines come last.
    pub fn to_text(&self) -> String {
        let f = &self.fds;
        let mut s = String::from("fds\n");
        s.push_str(&format!("alphabet {}\n", f.alphabet.size()));
        s.push_str(&format!("n {}\n", f.n()));
        for i in 1..=f.n() {
            let l = f.local(i);
            s.push_str(&format!("inputs {i}"));
            for j in &l.inputs {
                s.push_str(&format!(" {j}"));
            }
            s.push('\n');
            s.push_str(&format!("table {i}"));
            for v in &l.table {
                s.push_str(&format!(" {v}"));
            }
            s.push('\n');
        }
        if let Some(m) = &self.method {
            s.push_str(&format!("method {m}\n"));
        }
        if let Some(b) = self.bound {
            s.push_str(&format!("bound {b}\n"));
        }
        if let Some(sm) = self.signed_match {
            s.push_str(&format!("signed_match {sm}\n"));
        }
        s
    }
}

/// Serializes an analysis report: `nilpotent`, `class`, `fixed_point`,
/// `states` lines, with `-` for absent values.
pub fn report_to_text(r: &DynamicsReport) -> String {
    let mut s = format!("nilpotent {}\n", r.nilpotent);
    match r.class {
        Some(k) => s.push_str(&format!("class {k}\n")),
        None => s.push_str("class -\n"),
    }
    match &r.fixed_point {
        Some(fp) => {
            s.push_str("fixed_point");
            for v in fp {
                s.push_str(&format!(" {v}"));
            }
            s.push('\n');
        }
        None => s.push_str("fixed_point -\n"),
    }
    s.push_str(&format!("states {}\n", r.state_count));
    s
}

/// Parses the output of [`report_to_text`]; the limit structure is not part
/// of the text format and comes back empty.
pub fn parse_report(text: &str) -> Result<DynamicsReport, DynamicsError> {
    let mut nilpotent = None;
    let mut class = None;
    let mut fixed_point = None;
    let mut states = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        let fail = |msg: String| DynamicsError::Parse { line, msg };
        match toks[0] {
            "nilpotent" if toks.len() == 2 && matches!(toks[1], "true" | "false") => {
                nilpotent = Some(toks[1] == "true");
            }
            "class" if toks.len() == 2 => {
                class = Some(if toks[1] == "-" {
                    None
                } else {
                    Some(toks[1].parse().map_err(|_| fail(format!("bad class '{}'", toks[1])))?)
                });
            }
            "fixed_point" => {
                fixed_point = Some(if toks[1..] == ["-"] {
                    None
                } else {
                    let mut vals = Vec::new();
                    for tk in &toks[1..] {
                        vals.push(
                            tk.parse().map_err(|_| fail(format!("bad state value '{tk}'")))?,
                        );
                    }
                    Some(vals)
                });
            }
            "states" if toks.len() == 2 => {
                states =
                    Some(toks[1].parse().map_err(|_| fail(format!("bad count '{}'", toks[1])))?);
            }
            _ => return Err(fail(format!("unrecognized report line '{t}'"))),
        }
    }
    let fail = |msg: &str| DynamicsError::Parse { line: 1, msg: msg.to_string() };
    Ok(DynamicsReport {
        nilpotent: nilpotent.ok_or_else(|| fail("missing 'nilpotent'"))?,
        class: class.ok_or_else(|| fail("missing 'class'"))?,
        fixed_point: fixed_point.ok_or_else(|| fail("missing 'fixed_point'"))?,
        state_count: states.ok_or_else(|| fail("missing 'states'"))?,
        limit: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn boolean(locals: Vec<LocalFunction>) -> Fds {
        Fds::new(Alphabet::new(2), locals)
    }

    fn local(inputs: &[Vertex], table: &[u8]) -> LocalFunction {
        LocalFunction { inputs: inputs.to_vec(), table: table.to_vec() }
    }

    fn identity(n: usize, size: u8) -> Fds {
        let id: Vec<u8> = (0..size).collect();
        Fds::new(
            Alphabet::new(size),
            (1..=n).map(|i| local(&[i], &id)).collect(),
        )
    }

    /// f_i(x) = x_{i-1} on the cycle 1 -> 2 -> ... -> n -> 1.
    fn rotation(n: usize) -> Fds {
        boolean(
            (1..=n)
                .map(|i| {
                    let prev = if i == 1 { n } else { i - 1 };
                    local(&[prev], &[0, 1])
                })
                .collect(),
        )
    }

    // ---- evaluation ----

    #[test]
    fn evaluate_constant() {
        let f = boolean(vec![LocalFunction::constant(1), LocalFunction::constant(0)]);
        for s in 0..4u64 {
            assert_eq!(f.evaluate(&unpack(s, 2, 2)), vec![1, 0]);
        }
    }

    #[test]
    fn evaluate_identity() {
        let f = identity(3, 3);
        for s in 0..27u64 {
            let x = unpack(s, 3, 3);
            assert_eq!(f.evaluate(&x), x);
        }
    }

    #[test]
    fn evaluate_rotation() {
        assert_eq!(rotation(3).evaluate(&[1, 0, 0]), vec![0, 1, 0]);
    }

    #[test]
    fn iterate_conventions() {
        let f = rotation(3);
        assert_eq!(f.iterate(&[1, 0, 0], 0), vec![1, 0, 0]);
        assert_eq!(f.iterate(&[1, 0, 0], 3), vec![1, 0, 0]);
        let c = boolean(vec![LocalFunction::constant(1)]);
        assert_eq!(c.iterate(&[0], 5), vec![1]);
    }

    #[test]
    fn packing_roundtrip() {
        for s in 0..81u64 {
            assert_eq!(pack(&unpack(s, 4, 3), 3), s);
        }
    }

    // ---- interaction graphs ----

    #[test]
    fn interaction_graph_signs() {
        // f_1 = x_2, f_2 = 2 - x_2, f_3 = [x_1 = 1], over {0, 1, 2}.
        let f = Fds::new(
            Alphabet::new(3),
            vec![
                local(&[2], &[0, 1, 2]),
                local(&[2], &[2, 1, 0]),
                local(&[1], &[0, 1, 0]),
            ],
        );
        let g = f.interaction_graph();
        assert_eq!(g.sign(2, 1), Some(Sign::Positive));
        assert_eq!(g.sign(2, 2), Some(Sign::Negative));
        assert_eq!(g.sign(1, 3), Some(Sign::Null));
        assert_eq!(g.arc_count(), 3);
    }

    #[test]
    fn inessential_inputs_produce_no_arc() {
        // Declared on {1, 2} but the table only reads x_1.
        let f = boolean(vec![local(&[1, 2], &[0, 0, 1, 1]), LocalFunction::constant(0)]);
        let g = f.interaction_graph();
        assert_eq!(g.arcs().collect::<Vec<_>>(), vec![(1, 1, Sign::Positive)]);
    }

    #[test]
    fn graph_matching_modes() {
        let f = identity(2, 2);
        let pos_loops = SignedDigraph::from_arcs(2, &[(1, 1, Sign::Positive), (2, 2, Sign::Positive)]);
        let neg_loops = SignedDigraph::from_arcs(2, &[(1, 1, Sign::Negative), (2, 2, Sign::Negative)]);
        assert_eq!(f.matches_interaction_graph(&pos_loops, true), Ok(true));
        assert_eq!(f.matches_interaction_graph(&neg_loops, true), Ok(false));
        assert_eq!(f.matches_interaction_graph(&neg_loops, false), Ok(true));

        let c = boolean(vec![LocalFunction::constant(0), LocalFunction::constant(0)]);
        assert_eq!(c.matches_interaction_graph(&pos_loops, true), Ok(false));
        assert_eq!(c.matches_interaction_graph(&pos_loops, false), Ok(false));

        let small = boolean(vec![LocalFunction::constant(0)]);
        assert_eq!(
            small.matches_interaction_graph(&pos_loops, true),
            Err(DynamicsError::DimensionMismatch { fds_n: 1, graph_n: 2 })
        );
    }

    // ---- analysis ----

    #[test]
    fn analyze_constant_map() {
        let f = boolean(vec![LocalFunction::constant(1), LocalFunction::constant(0)]);
        let r = f.analyze(DEFAULT_STATE_CAP).unwrap();
        assert!(r.nilpotent);
        assert_eq!(r.class, Some(1));
        assert_eq!(r.fixed_point, Some(vec![1, 0]));
        assert_eq!(r.state_count, 4);
        assert_eq!(r.limit, None);
    }

    #[test]
    fn analyze_identity_not_nilpotent() {
        let r = identity(1, 2).analyze(DEFAULT_STATE_CAP).unwrap();
        assert!(!r.nilpotent);
        assert_eq!(r.class, None);
        assert_eq!(r.fixed_point, None);
        let limit = r.limit.unwrap();
        assert_eq!(limit.cycle_state_count, 2);
        assert_eq!(limit.sample, vec![vec![0], vec![1]]);
    }

    #[test]
    fn analyze_rotation_limit_cycles() {
        let r = rotation(3).analyze(DEFAULT_STATE_CAP).unwrap();
        assert!(!r.nilpotent);
        // Two fixed points (000, 111) plus two 3-cycles cover all 8 states.
        assert_eq!(r.limit.unwrap().cycle_state_count, 8);
    }

    #[test]
    fn analyze_and_net_on_loop_cycle() {
        // f_1 = x_1 AND x_3, f_2 = NOT x_1, f_3 = x_2: nilpotent of class 5.
        let f = boolean(vec![
            local(&[1, 3], &[0, 0, 0, 1]),
            local(&[1], &[1, 0]),
            local(&[2], &[0, 1]),
        ]);
        let r = f.analyze(DEFAULT_STATE_CAP).unwrap();
        assert!(r.nilpotent);
        assert_eq!(r.class, Some(5));
        assert_eq!(r.fixed_point, Some(vec![0, 1, 1]));
    }

    #[test]
    fn analyze_respects_cap() {
        let f = identity(4, 3);
        assert_eq!(
            f.analyze(80),
            Err(DynamicsError::CapExceeded { needed: 81, cap: 80 })
        );
        assert!(f.analyze(81).is_ok());
    }

    // ---- text formats ----

    #[test]
    fn fds_roundtrip() {
        let f = Fds::new(
            Alphabet::new(3),
            vec![local(&[1, 2], &[0, 0, 0, 0, 1, 1, 0, 1, 2]), LocalFunction::constant(2)],
        );
        let file = FdsFile {
            fds: f,
            method: Some("example".into()),
            bound: Some(4),
            signed_match: Some(true),
        };
        let text = file.to_text();
        assert_eq!(FdsFile::parse(&text).unwrap(), file);
        assert!(text.ends_with("method example\nbound 4\nsigned_match true\n"));
    }

    #[test]
    fn fds_parse_errors() {
        let ok_prefix = "fds\nalphabet 2\nn 1\n";
        for (text, needle) in [
            ("", "missing 'fds'"),
            ("alphabet 2\n", "expected 'fds' header"),
            ("fds\nn 1\ninputs 1\ntable 1 0\n", "before 'alphabet'"),
            ("fds\nalphabet 1\n", "at least 2"),
            ("fds\nalphabet 2\nn 0\n", "at least 1"),
            (&format!("{ok_prefix}table 1 0\n"), "'table 1' before 'inputs 1'"),
            (&format!("{ok_prefix}inputs 1 1\ntable 1 0\n"), "expected 2"),
            (&format!("{ok_prefix}inputs 1 1\ntable 1 0 2\n"), "bad table value"),
            (&format!("{ok_prefix}inputs 1 2\n"), "bad input vertex"),
            (&format!("{ok_prefix}inputs 1\n"), "missing 'table 1'"),
            ("fds\nalphabet 2\nn 2\ninputs 1 2 1\ntable 1 0 0 0 0\n", "strictly ascending"),
            (&format!("{ok_prefix}bogus\n"), "unknown directive"),
        ] {
            let err = FdsFile::parse(text).unwrap_err();
            assert!(err.to_string().contains(needle), "{text:?} -> {err}");
        }
    }

    #[test]
    fn report_roundtrip() {
        let nil = DynamicsReport {
            nilpotent: true,
            class: Some(5),
            fixed_point: Some(vec![0, 1, 1]),
            state_count: 8,
            limit: None,
        };
        let text = report_to_text(&nil);
        assert_eq!(text, "nilpotent true\nclass 5\nfixed_point 0 1 1\nstates 8\n");
        assert_eq!(parse_report(&text).unwrap(), nil);

        let not = DynamicsReport {
            nilpotent: false,
            class: None,
            fixed_point: None,
            state_count: 4,
            limit: None,
        };
        let text = report_to_text(&not);
        assert_eq!(text, "nilpotent false\nclass -\nfixed_point -\nstates 4\n");
        assert_eq!(parse_report(&text).unwrap(), not);
    }

    // ---- independent oracles ----

    /// Random system: each vertex reads a random subset of `pool(i)` and
    /// gets a random table.
    fn random_fds<F: Fn(usize) -> Vec<Vertex>>(
        seed: u64,
        n: usize,
        size: u8,
        pool: F,
    ) -> Fds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let locals = (1..=n)
            .map(|i| {
                let mut inputs: Vec<Vertex> =
                    pool(i).into_iter().filter(|_| rng.gen_bool(0.6)).collect();
                inputs.sort_unstable();
                let len = (size as usize).pow(inputs.len() as u32);
                let table = (0..len).map(|_| rng.gen_range(0..size)).collect();
                LocalFunction { inputs, table }
            })
            .collect();
        Fds::new(Alphabet::new(size), locals)
    }

    /// Nilpotency straight from the definition: some iterate collapses
    /// every state to one point.
    fn nilpotent_by_saturation(f: &Fds) -> bool {
        let n_states = f.state_count() as u64;
        let k = f.n() as u64 * n_states;
        let size = f.alphabet().size();
        let first = f.iterate(&unpack(0, f.n(), size), k);
        (1..n_states).all(|s| f.iterate(&unpack(s, f.n(), size), k) == first)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn analysis_matches_saturation(seed in 0u64..2000, n in 1usize..=6, size in 2u8..=3) {
            prop_assume!((size as u128).pow(n as u32) <= 729);
            let f = random_fds(seed, n, size, |_| (1..=n).collect());
            let r = f.analyze(DEFAULT_STATE_CAP).unwrap();
            prop_assert_eq!(r.nilpotent, nilpotent_by_saturation(&f));
            if let Some(k) = r.class {
                // f^k is constant, f^(k-1) is not.
                let all: Vec<Vec<u8>> = (0..r.state_count)
                    .map(|s| unpack(s, n, size))
                    .collect();
                let img_k: Vec<Vec<u8>> =
                    all.iter().map(|x| f.iterate(x, k as u64)).collect();
                prop_assert!(img_k.windows(2).all(|w| w[0] == w[1]));
                prop_assert_eq!(img_k[0].as_slice(), r.fixed_point.as_ref().unwrap().as_slice());
                if k > 0 {
                    let img_prev: Vec<Vec<u8>> =
                        all.iter().map(|x| f.iterate(x, (k - 1) as u64)).collect();
                    prop_assert!(img_prev.windows(2).any(|w| w[0] != w[1]));
                }
            }
        }

        #[test]
        fn acyclic_systems_are_nilpotent_within_n_steps(seed in 0u64..2000, n in 1usize..=5, size in 2u8..=3) {
            // Inputs only from strictly smaller vertices: the interaction
            // graph is acyclic, so the system is nilpotent of class <= n.
            let f = random_fds(seed, n, size, |i| (1..i).collect());
            let comps = f.interaction_graph().strongly_connected_components();
            prop_assert!(comps.iter().all(|c| c.len() == 1));
            let r = f.analyze(DEFAULT_STATE_CAP).unwrap();
            prop_assert!(r.nilpotent);
            prop_assert!(r.class.unwrap() as usize <= n);
        }

        #[test]
        fn interaction_graph_inputs_are_essential(seed in 0u64..500, n in 1usize..=4, size in 2u8..=3) {
            // Flipping any arc source's value somewhere changes the target.
            let f = random_fds(seed, n, size, |_| (1..=n).collect());
            let g = f.interaction_graph();
            for (j, i, _) in g.arcs() {
                let mut witnessed = false;
                for s in 0..f.state_count() as u64 {
                    let x = unpack(s, n, size);
                    if x[j - 1] == size - 1 {
                        continue;
                    }
                    let mut y = x.clone();
                    y[j - 1] += 1;
                    if f.evaluate(&x)[i - 1] != f.evaluate(&y)[i - 1] {
                        witnessed = true;
                        break;
                    }
                }
                prop_assert!(witnessed, "arc ({}, {}) not essential", j, i);
            }
        }
    }
}
