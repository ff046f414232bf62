//! Facets of the simplicial complex attached to a t-spread principal Borel
//! ideal, the generators of its Alexander dual, and the ordering that
//! certifies linear quotients (hence sequential Cohen-Macaulayness).
//!
//! Every facet is one of three shapes: a union of `d-1` width-`t` runs
//! `[j_r, j_r + t - 1]` with `j_r <= i_r` and gaps `>= t`; the upper tail
//! `{i_1 + 1, ..., n}`; or `s - 1` such runs followed by the tail
//! `{i_s + 1, ..., n}` for some `2 <= s <= d - 1`. Complementing facets
//! gives the dual generators; putting the tail complement first and the two
//! run-carrying blocks each in decreasing pure lex order yields linear
//! quotients, which the certifier below checks step by step.

use serde::{Deserialize, Serialize};

use crate::borel::BorelInstance;
use crate::error::{Error, Result};
use crate::monomial::{IndexSet, Monomial};
use crate::par;

/// Shape classification of a facet, carrying the run parameters so the
/// quotient ordering can segregate the blocks exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FacetKind {
    /// `d - 1` runs `[j_r, j_r + t - 1]`.
    IntervalRuns { starts: Vec<usize> },
    /// `{i_1 + 1, ..., n}`.
    UpperTail,
    /// `s - 1` runs followed by `{i_s + 1, ..., n}`; `starts.len() = s - 1`.
    RunsWithTail { starts: Vec<usize> },
}

impl FacetKind {
    pub fn form(&self) -> DualForm {
        match self {
            FacetKind::IntervalRuns { .. } => DualForm::FullOverRuns,
            FacetKind::UpperTail => DualForm::Prefix,
            FacetKind::RunsWithTail { .. } => DualForm::PrefixOverRuns,
        }
    }
}

/// Form tag of a dual generator, mirroring the facet shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualForm {
    /// `x_1 ... x_{i_1}` (complement of the upper tail).
    Prefix,
    /// `x_1 ... x_{i_s}` divided by `s - 1` runs.
    PrefixOverRuns,
    /// `x_1 ... x_n` divided by `d - 1` runs.
    FullOverRuns,
}

impl DualForm {
    pub fn tag(self) -> &'static str {
        match self {
            DualForm::Prefix => "prefix",
            DualForm::PrefixOverRuns => "prefix_over_runs",
            DualForm::FullOverRuns => "full_over_runs",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    #[serde(flatten)]
    pub kind: FacetKind,
    pub members: IndexSet,
}

/// Facets of the instance, in the ambient actually used for dualizing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetData {
    /// Ambient of the complex; equals `i_d` after restriction.
    pub ambient: usize,
    /// Original ambient when the instance was restricted to its span.
    pub reduced_from: Option<usize>,
    pub facets: Vec<Facet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGenerator {
    pub monomial: Monomial,
    pub form: DualForm,
}

/// Variables of `[n]` dividing some minimal generator: the union of the
/// intervals `[(k-1)t + 1, i_k]`.
fn covered_variables(inst: &BorelInstance) -> Vec<bool> {
    let n = inst.ambient();
    let t = inst.spread();
    let mut covered = vec![false; n + 1];
    for (k, i_k) in inst.generator_indices().iter().enumerate() {
        covered[k * t + 1..=i_k].fill(true);
    }
    covered
}

fn run_tuples(inst: &BorelInstance, count: usize) -> Vec<Vec<usize>> {
    // Tuples (j_1, ..., j_count) with j_l <= i_l and gaps >= t.
    let t = inst.spread();
    let mut out = Vec::new();
    let mut tuple = Vec::with_capacity(count);
    fn rec(
        inst: &BorelInstance,
        t: usize,
        count: usize,
        tuple: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = tuple.len();
        if k == count {
            out.push(tuple.clone());
            return;
        }
        let lo = if k == 0 { 1 } else { tuple[k - 1] + t };
        for j in lo..=inst.bound(k + 1) {
            tuple.push(j);
            rec(inst, t, count, tuple, out);
            tuple.pop();
        }
    }
    rec(inst, t, count, &mut tuple, &mut out);
    out
}

fn members_of_runs(starts: &[usize], t: usize, tail_from: Option<usize>, n: usize) -> IndexSet {
    let mut v: Vec<usize> = Vec::new();
    for &j in starts {
        v.extend(j..j + t);
    }
    if let Some(lo) = tail_from {
        v.extend(lo..=n);
    }
    IndexSet::new(v).expect("runs are disjoint and increasing")
}

/// All facets of the complex of `inst`.
///
/// When `i_d < n` the instance is first restricted to `n' = i_d`, since the
/// trailing variables are free in every face. If some remaining variable
/// divides no generator (exactly when `i_1 < t`), the classification does
/// not apply and the call reports which variables are uncovered.
pub fn facets(inst: &BorelInstance) -> Result<FacetData> {
    let reduced_from =
        (inst.generator_indices().max_index().unwrap() < inst.ambient()).then(|| inst.ambient());
    let inst = inst.restricted_to_span();
    let n = inst.ambient();
    let t = inst.spread();
    let d = inst.degree();
    let covered = covered_variables(&inst);
    let missing: Vec<usize> = (1..=n).filter(|&j| !covered[j]).collect();
    if !missing.is_empty() {
        return Err(Error::HypothesisViolation { missing });
    }

    let mut ordered: Vec<Facet> = Vec::new();
    ordered.push(Facet {
        kind: FacetKind::UpperTail,
        members: IndexSet::new((inst.bound(1) + 1..=n).collect()).expect("increasing"),
    });
    for s in 2..d {
        for starts in run_tuples(&inst, s - 1) {
            let members = members_of_runs(&starts, t, Some(inst.bound(s) + 1), n);
            ordered.push(Facet {
                kind: FacetKind::RunsWithTail { starts },
                members,
            });
        }
    }
    for starts in run_tuples(&inst, d - 1) {
        let members = members_of_runs(&starts, t, None, n);
        ordered.push(Facet {
            kind: FacetKind::IntervalRuns { starts },
            members,
        });
    }

    // Degenerate parameters can repeat a member set (d = 1 makes both the
    // tail and the empty run set empty); keep the first occurrence.
    let mut seen = std::collections::HashSet::new();
    let facets: Vec<Facet> = ordered
        .into_iter()
        .filter(|f| seen.insert(f.members.clone()))
        .collect();
    Ok(FacetData {
        ambient: n,
        reduced_from,
        facets,
    })
}

/// One dual generator per facet: the product of the complementary
/// variables, tagged with the facet's form.
pub fn dual_generators(inst: &BorelInstance) -> Result<Vec<DualGenerator>> {
    let data = facets(inst)?;
    Ok(data
        .facets
        .iter()
        .map(|f| DualGenerator {
            monomial: Monomial::squarefree(data.ambient, &f.members.complement(data.ambient)),
            form: f.kind.form(),
        })
        .collect())
}

/// The quotient-certifying order: the prefix generator first, then the
/// prefix-over-runs block in decreasing pure lex, then the full-complement
/// block in decreasing pure lex.
pub fn scm_order(duals: &[DualGenerator]) -> Vec<DualGenerator> {
    let mut prefix: Vec<DualGenerator> = Vec::new();
    let mut over_runs: Vec<DualGenerator> = Vec::new();
    let mut full: Vec<DualGenerator> = Vec::new();
    for g in duals {
        match g.form {
            DualForm::Prefix => prefix.push(g.clone()),
            DualForm::PrefixOverRuns => over_runs.push(g.clone()),
            DualForm::FullOverRuns => full.push(g.clone()),
        }
    }
    over_runs.sort_by(|a, b| b.monomial.cmp_purelex(&a.monomial));
    full.sort_by(|a, b| b.monomial.cmp_purelex(&a.monomial));
    prefix.into_iter().chain(over_runs).chain(full).collect()
}

/// Per-step record of a successful linear-quotients run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientProfile {
    /// 1-based position in the run.
    pub index: usize,
    #[serde(with = "crate::monomial_text")]
    pub generator: Monomial,
    /// Variables generating the colon ideal by the earlier generators.
    pub vars: IndexSet,
}

impl QuotientProfile {
    pub fn r(&self) -> usize {
        self.vars.len()
    }
}

/// Result of [`linear_quotients_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientOutcome {
    Linear(Vec<QuotientProfile>),
    /// Colon of generator `against` into generator `index` (1-based) is not
    /// covered by any admissible variable.
    Fails {
        index: usize,
        against: usize,
    },
}

impl QuotientOutcome {
    pub fn is_linear(&self) -> bool {
        matches!(self, QuotientOutcome::Linear(_))
    }

    pub fn profiles(&self) -> Option<&[QuotientProfile]> {
        match self {
            QuotientOutcome::Linear(p) => Some(p),
            QuotientOutcome::Fails { .. } => None,
        }
    }
}

/// Checks linear quotients for an ordered list of pairwise distinct
/// monomials: for each `j`, `V_j` collects the variables `x_l` with
/// `x_l w_j` in `(w_1, ..., w_{j-1})`, and every colon `w_g / gcd(w_g, w_j)`
/// must be divisible by some member of `V_j`.
pub fn linear_quotients_check(ordered: &[Monomial]) -> QuotientOutcome {
    let m = ordered.len();
    let per_step = par::map_indexed(m, |j| {
        let w_j = &ordered[j];
        let n = w_j.ambient();
        let colons: Vec<Monomial> = ordered[..j].iter().map(|w_g| w_g.colon(w_j)).collect();
        // x_l w_j lies in the prefix ideal iff some colon equals x_l.
        let mut in_v = vec![false; n + 1];
        let mut vars: Vec<usize> = Vec::new();
        for c in &colons {
            if c.degree() == 1 {
                let l = c.support().min_index().unwrap();
                if !in_v[l] {
                    in_v[l] = true;
                    vars.push(l);
                }
            }
        }
        for (g, c) in colons.iter().enumerate() {
            if c.is_one() {
                // w_g divides w_j: the list is not minimal.
                return Err((j + 1, g + 1));
            }
            if !c.support().iter().any(|l| in_v[l]) {
                return Err((j + 1, g + 1));
            }
        }
        vars.sort_unstable();
        Ok(QuotientProfile {
            index: j + 1,
            generator: w_j.clone(),
            vars: IndexSet::new(vars).expect("sorted"),
        })
    });
    let mut profiles = Vec::with_capacity(m);
    for step in per_step {
        match step {
            Ok(p) => profiles.push(p),
            Err((index, against)) => return QuotientOutcome::Fails { index, against },
        }
    }
    QuotientOutcome::Linear(profiles)
}

/// Minimal primes: complements of the inclusion-maximal facets, each given
/// by its variable index set, in canonical order.
pub fn minimal_primes(inst: &BorelInstance) -> Result<Vec<IndexSet>> {
    let data = facets(inst)?;
    let mut primes: Vec<IndexSet> = data
        .facets
        .iter()
        .enumerate()
        .filter(|(i, f)| {
            !data.facets.iter().enumerate().any(|(k, other)| {
                k != *i && f.members != other.members && f.members.is_subset_of(&other.members)
            })
        })
        .map(|(_, f)| f.members.complement(data.ambient))
        .collect();
    primes.sort();
    Ok(primes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    fn inst(n: usize, t: usize, u: &[usize]) -> BorelInstance {
        BorelInstance::new(n, t, u.to_vec()).unwrap()
    }

    fn m(text: &str, n: usize) -> Monomial {
        Monomial::parse(text, n).unwrap()
    }

    #[test]
    fn facets_of_the_running_example() {
        let data = facets(&inst(9, 2, &[2, 4, 9])).unwrap();
        assert_eq!(data.ambient, 9);
        assert_eq!(data.reduced_from, None);
        assert_eq!(data.facets.len(), 6);
        let members: Vec<Vec<usize>> = data
            .facets
            .iter()
            .map(|f| f.members.indices().to_vec())
            .collect();
        assert!(members.contains(&vec![3, 4, 5, 6, 7, 8, 9])); // tail
        assert!(members.contains(&vec![1, 2, 5, 6, 7, 8, 9])); // runs+tail, j1 = 1
        assert!(members.contains(&vec![2, 3, 5, 6, 7, 8, 9])); // runs+tail, j1 = 2
        assert!(members.contains(&vec![1, 2, 3, 4])); // runs (1,3)
        assert!(members.contains(&vec![1, 2, 4, 5])); // runs (1,4)
        assert!(members.contains(&vec![2, 3, 4, 5])); // runs (2,4)
    }

    #[test]
    fn facets_of_the_maximal_ideal() {
        // d = 1: the complex is {empty set}; both degenerate shapes collapse.
        let data = facets(&inst(5, 3, &[5])).unwrap();
        assert_eq!(data.facets.len(), 1);
        assert!(data.facets[0].members.is_empty());
        assert_eq!(data.facets[0].kind, FacetKind::UpperTail);
    }

    #[test]
    fn facets_of_three_points() {
        let data = facets(&inst(3, 1, &[2, 3])).unwrap();
        let mut members: Vec<Vec<usize>> = data
            .facets
            .iter()
            .map(|f| f.members.indices().to_vec())
            .collect();
        members.sort();
        assert_eq!(members, vec![vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn restriction_to_span() {
        let data = facets(&inst(9, 2, &[2, 4])).unwrap();
        assert_eq!(data.ambient, 4);
        assert_eq!(data.reduced_from, Some(9));
        assert_eq!(data.facets.len(), 3);
    }

    #[test]
    fn hypothesis_violation_is_flagged() {
        // i_1 = 2 < t = 4: x_3, x_4 divide no generator.
        let err = facets(&inst(8, 4, &[2, 8])).unwrap_err();
        assert_eq!(
            err,
            Error::HypothesisViolation {
                missing: vec![3, 4]
            }
        );
    }

    #[test]
    fn dual_generators_of_the_running_example() {
        let duals = dual_generators(&inst(9, 2, &[2, 4, 9])).unwrap();
        let ordered = scm_order(&duals);
        let expected = [
            "x1*x2",
            "x1*x4",
            "x3*x4",
            "x1*x6*x7*x8*x9",
            "x3*x6*x7*x8*x9",
            "x5*x6*x7*x8*x9",
        ];
        assert_eq!(
            ordered
                .iter()
                .map(|g| g.monomial.to_string())
                .collect::<Vec<_>>(),
            expected
        );
        assert_eq!(ordered[0].form, DualForm::Prefix);
        assert_eq!(ordered[1].form, DualForm::PrefixOverRuns);
        assert_eq!(ordered[2].form, DualForm::PrefixOverRuns);
        assert_eq!(ordered[3].form, DualForm::FullOverRuns);
        // The prefix generator x_1 ... x_{i_1} is always present.
        assert!(duals.iter().any(|g| g.monomial == m("x1*x2", 9)));
    }

    #[test]
    fn dual_of_maximal_ideal_is_the_full_product() {
        let duals = dual_generators(&inst(4, 2, &[4])).unwrap();
        assert_eq!(duals.len(), 1);
        assert_eq!(duals[0].monomial, m("x1*x2*x3*x4", 4));
        let ordered = scm_order(&duals);
        assert_eq!(ordered.len(), 1);
    }

    #[test]
    fn quotient_certifier_on_the_running_example() {
        let duals = dual_generators(&inst(9, 2, &[2, 4, 9])).unwrap();
        let ordered: Vec<Monomial> = scm_order(&duals).into_iter().map(|g| g.monomial).collect();
        match linear_quotients_check(&ordered) {
            QuotientOutcome::Linear(profiles) => {
                let rs: Vec<usize> = profiles.iter().map(|p| p.r()).collect();
                assert_eq!(rs, vec![0, 1, 1, 2, 2, 2]);
            }
            QuotientOutcome::Fails { index, against } => {
                panic!("unexpected failure at {index} against {against}")
            }
        }
    }

    #[test]
    fn quotient_certifier_edge_cases() {
        let single = [m("x1*x2", 4)];
        match linear_quotients_check(&single) {
            QuotientOutcome::Linear(p) => assert_eq!(p[0].r(), 0),
            _ => panic!(),
        }
        assert_eq!(
            linear_quotients_check(&[m("x1*x2", 4), m("x3*x4", 4)]),
            QuotientOutcome::Fails {
                index: 2,
                against: 1
            }
        );
    }

    #[test]
    fn minimal_primes_of_the_running_example() {
        let i = inst(9, 2, &[2, 4, 9]);
        let primes = minimal_primes(&i).unwrap();
        assert_eq!(primes.len(), 6);
        assert!(primes.contains(&IndexSet::new(vec![1, 2]).unwrap()));
        // Supports of the dual generators, as sets.
        let mut dual_supports: Vec<IndexSet> = dual_generators(&i)
            .unwrap()
            .into_iter()
            .map(|g| g.monomial.support())
            .collect();
        dual_supports.sort();
        assert_eq!(primes, dual_supports);

        let primes = minimal_primes(&inst(4, 2, &[4])).unwrap();
        assert_eq!(primes, vec![IndexSet::new(vec![1, 2, 3, 4]).unwrap()]);
    }

    #[test]
    fn facet_oracle_agreement_running_example() {
        let i = inst(9, 2, &[2, 4, 9]);
        let data = facets(&i).unwrap();
        let mut got: Vec<IndexSet> = data.facets.iter().map(|f| f.members.clone()).collect();
        got.sort();
        let mut brute = oracle::brute_force_facets(9, |s| i.contains(&Monomial::squarefree(9, s)));
        brute.sort();
        assert_eq!(got, brute);
    }

    #[test]
    fn every_nonface_cover() {
        // Coverage: every squarefree monomial outside the ideal has its
        // support inside some facet.
        let i = inst(7, 2, &[3, 5, 7]);
        let data = facets(&i).unwrap();
        for mask in 0u32..(1 << 7) {
            let support: Vec<usize> = (1..=7).filter(|k| mask >> (k - 1) & 1 == 1).collect();
            let s = IndexSet::new(support).unwrap();
            let mono = Monomial::squarefree(7, &s);
            if !i.contains(&mono) {
                assert!(
                    data.facets.iter().any(|f| s.is_subset_of(&f.members)),
                    "face {s} not covered"
                );
            }
        }
    }
}
