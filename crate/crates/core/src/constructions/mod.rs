//! Constructions of nilpotent dynamics on signed digraphs.
//!
//! Each public operation takes a signed digraph (or numeric parameters),
//! checks its hypotheses, and produces a finite dynamical system together
//! with a [`ConstructionCertificate`] stating the claimed nilpotency bound.
//! Certificates claim upper bounds only; exact classes are established by
//! [`crate::dynamics::Fds::analyze`].

use crate::digraph::{Sign, SignedDigraph, Vertex};
use crate::dynamics::Fds;
use crate::dynamics::FdsFile;

mod andnets;
mod constant_class;
mod decomposition;
mod families;
mod nonboolean;

pub use andnets::{
    double_cycle_function, gab_andnet, primitive_andnet, strong_loop_nilpotent,
    strong_wheel_nilpotent, DoubleCycleOutcome,
};
pub use constant_class::{
    complete_loops_class2, loops_added_nilpotent, undirected_class3, universal_class3, xor_class2,
};
pub use decomposition::{build_decomposition, nilpotent_3letter, DecompositionPlan};
pub use families::{gen_family, Family};
pub use nonboolean::{
    extend_alphabet, extend_from_initial, nilpotent_3letter_class2, nilpotent_4letter,
};

/// Why a construction could not be carried out.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    /// The input fails a structural hypothesis of the construction.
    #[error("HYPOTHESIS_FAILED: {0}")]
    HypothesisFailed(String),
    /// The requested system provably cannot be nilpotent.
    #[error("NOT_NILPOTENT: {0}")]
    NotNilpotent(String),
    /// A numeric parameter is out of range.
    #[error("BAD_PARAM: {0}")]
    BadParam(String),
    /// The target alphabet does not contain the source alphabet.
    #[error("BAD_ALPHABET: {0}")]
    BadAlphabet(String),
    /// No spanning strong primitive subgraph reachable by arc removals.
    #[error("NO_PRIMITIVE_SUBGRAPH: {0}")]
    NoPrimitiveSubgraph(String),
    /// An arc named by the caller is absent.
    #[error("NO_SUCH_ARC: no arc ({0}, {1})")]
    NoSuchArc(Vertex, Vertex),
}

/// What a construction claims about its output.
///
/// `claimed_bound` is an upper bound on the nilpotency class, valid whenever
/// the construction returned `Ok`. `signed_match` records whether the output's
/// interaction graph reproduces the input signs exactly or only the underlying
/// digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionCertificate {
    pub method: String,
    pub claimed_bound: u32,
    pub hypothesis_report: Vec<String>,
    pub signed_match: bool,
}

/// A constructed system with its certificate.
#[derive(Debug, Clone)]
pub struct Construction {
    pub fds: Fds,
    pub certificate: ConstructionCertificate,
}

impl Construction {
    fn new(fds: Fds, method: &str, claimed_bound: u32, signed_match: bool) -> Self {
        Construction {
            fds,
            certificate: ConstructionCertificate {
                method: method.to_string(),
                claimed_bound,
                hypothesis_report: Vec::new(),
                signed_match,
            },
        }
    }

    fn with_report(mut self, lines: Vec<String>) -> Self {
        self.certificate.hypothesis_report = lines;
        self
    }

    /// Serializable form carrying the certificate lines.
    pub fn into_file(self) -> FdsFile {
        FdsFile {
            fds: self.fds,
            method: Some(self.certificate.method),
            bound: Some(self.certificate.claimed_bound),
            signed_match: Some(self.certificate.signed_match),
        }
    }

    /// Check the certified bound against the engine.
    ///
    /// Returns the exact class. Panics if the output is not nilpotent or
    /// exceeds the claimed bound; both would disprove the certificate.
    pub fn verify(&self, state_cap: u64) -> Result<u32, crate::dynamics::DynamicsError> {
        let report = self.fds.analyze(state_cap)?;
        assert!(
            report.nilpotent,
            "certificate violated: {} output is not nilpotent",
            self.certificate.method
        );
        let class = report.class.unwrap();
        assert!(
            class <= self.certificate.claimed_bound,
            "certificate violated: {} class {} exceeds bound {}",
            self.certificate.method,
            class,
            self.certificate.claimed_bound
        );
        Ok(class)
    }
}

/// Tabulates a local function over all tuples of input values, first input
/// most significant. The closure sees the values in declared-input order.
pub(crate) fn tabulate(
    inputs: Vec<crate::digraph::Vertex>,
    size: u8,
    f: impl Fn(&[u8]) -> u8,
) -> crate::dynamics::LocalFunction {
    let arity = inputs.len();
    let len = (size as usize).checked_pow(arity as u32).expect("table too large");
    let mut table = Vec::with_capacity(len);
    let mut digits = vec![0u8; arity];
    for mut idx in 0..len {
        for p in (0..arity).rev() {
            digits[p] = (idx % size as usize) as u8;
            idx /= size as usize;
        }
        table.push(f(&digits));
    }
    crate::dynamics::LocalFunction { inputs, table }
}

/// The ubiquitous formula shape: `alpha` times a conjunction (or, with
/// `or_form`, a disjunction) of one literal per in-neighbor of `i`, the
/// literal chosen by the arc sign. An empty conjunction is true, an empty
/// disjunction false.
pub(crate) fn indicator_net(
    g: &SignedDigraph,
    i: crate::digraph::Vertex,
    size: u8,
    alpha: u8,
    or_form: bool,
    lit: impl Fn(Sign, u8) -> bool,
) -> crate::dynamics::LocalFunction {
    let ins = g.in_neighbors_with_sign(i);
    let inputs: Vec<Vertex> = ins.iter().map(|&(j, _)| j).collect();
    let signs: Vec<Sign> = ins.iter().map(|&(_, s)| s).collect();
    tabulate(inputs, size, move |vals| {
        let mut acc = !or_form;
        for (&s, &v) in signs.iter().zip(vals) {
            let t = lit(s, v);
            acc = if or_form { acc || t } else { acc && t };
        }
        if acc {
            alpha
        } else {
            0
        }
    })
}

/// Asserts that the output's interaction graph matches the input.
#[cfg(test)]
pub(crate) fn assert_matches(c: &Construction, g: &SignedDigraph) {
    let mode = c.certificate.signed_match;
    assert!(
        c.fds.matches_interaction_graph(g, mode).unwrap(),
        "{}: interaction graph mismatch (signed={})",
        c.certificate.method,
        mode
    );
}
