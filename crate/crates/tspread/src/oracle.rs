//! Brute-force engines used to cross-check the structural computations:
//! irreducible decomposition of monomial ideals, exhaustive facet search,
//! ideal equality, and marked-binomial reduction.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::monomial::{IndexSet, Monomial};
use crate::powers::Guards;
use crate::rees::{PresMonomial, ToricBinomial};

/// An irreducible monomial ideal: pure variable powers `x_i^{a_i}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IrreducibleComponent {
    /// Variable index -> exponent, all exponents >= 1.
    powers: BTreeMap<usize, u32>,
}

impl IrreducibleComponent {
    fn from_pure_powers(gens: &[Monomial]) -> Self {
        let mut powers: BTreeMap<usize, u32> = BTreeMap::new();
        for g in gens {
            let supp = g.support();
            debug_assert_eq!(supp.len(), 1, "pure power expected");
            let i = supp.min_index().unwrap();
            let e = g.exponent(i);
            powers
                .entry(i)
                .and_modify(|cur| *cur = (*cur).min(e))
                .or_insert(e);
        }
        IrreducibleComponent { powers }
    }

    pub fn radical(&self) -> IndexSet {
        IndexSet::new(self.powers.keys().copied().collect()).expect("sorted keys")
    }

    pub fn exponent(&self, i: usize) -> Option<u32> {
        self.powers.get(&i).copied()
    }

    pub fn generators(&self, n: usize) -> Vec<Monomial> {
        self.powers
            .iter()
            .map(|(&i, &e)| {
                let mut exps = vec![0u32; n];
                exps[i - 1] = e;
                Monomial::from_exponents(exps)
            })
            .collect()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.powers.iter().any(|(&i, &e)| m.exponent(i) >= e)
    }
}

impl std::fmt::Display for IrreducibleComponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, (&i, &e)) in self.powers.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        write!(f, ")")
    }
}

/// Drops generators divisible by another generator (and duplicates).
pub fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut kept: Vec<Monomial> = Vec::new();
    let mut sorted: Vec<&Monomial> = gens.iter().collect();
    sorted.sort_by_key(|g| g.degree());
    for g in sorted {
        if !kept.iter().any(|h| h.divides(g)) {
            kept.push(g.clone());
        }
    }
    kept.sort();
    kept
}

/// Does the ideal generated by `gens` contain `m`?
pub fn ideal_contains(gens: &[Monomial], m: &Monomial) -> bool {
    gens.iter().any(|g| g.divides(m))
}

/// Equality of monomial ideals by mutual divisibility of generating sets.
pub fn ideal_equal(a: &[Monomial], b: &[Monomial]) -> bool {
    a.iter().all(|g| ideal_contains(b, g)) && b.iter().all(|g| ideal_contains(a, g))
}

/// Intersection of two monomial ideals: pairwise lcms, minimalized.
pub fn ideal_intersection(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for g in a {
        for h in b {
            out.push(g.lcm(h));
        }
    }
    minimalize(&out)
}

/// Irredundant irreducible decomposition by recursive splitting.
///
/// A generator that is not a pure power splits the ideal along its smallest
/// variable power; leaves, whose generators are all pure powers, are
/// irreducible. Sub-ideals are memoized on their canonical generator set,
/// and a final pass removes components containing the intersection of the
/// others. Exceeding a guard is reported, never silently truncated.
pub fn irreducible_decomposition(
    gens: &[Monomial],
    n: usize,
    guards: &Guards,
) -> Result<Vec<IrreducibleComponent>> {
    if n > guards.max_decomposition_vars {
        return Err(Error::GuardExceeded {
            what: "irreducible decomposition variables",
            limit: guards.max_decomposition_vars,
        });
    }
    if gens.is_empty() {
        return Err(Error::Precondition(
            "irreducible decomposition of the zero ideal".into(),
        ));
    }
    if gens.iter().any(|g| g.is_one()) {
        return Err(Error::Precondition(
            "irreducible decomposition of the unit ideal".into(),
        ));
    }
    let mut memo: HashMap<Vec<Monomial>, Vec<IrreducibleComponent>> = HashMap::new();
    let mut work = 0usize;
    let components = split(minimalize(gens), n, guards, &mut memo, &mut work)?;
    let mut unique: Vec<IrreducibleComponent> = components
        .into_iter()
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    unique.sort();
    Ok(irredundant(unique, n))
}

impl std::hash::Hash for IrreducibleComponent {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (i, e) in &self.powers {
            (i, e).hash(state);
        }
    }
}

fn split(
    gens: Vec<Monomial>,
    n: usize,
    guards: &Guards,
    memo: &mut HashMap<Vec<Monomial>, Vec<IrreducibleComponent>>,
    work: &mut usize,
) -> Result<Vec<IrreducibleComponent>> {
    if let Some(hit) = memo.get(&gens) {
        return Ok(hit.clone());
    }
    *work += 1;
    if *work > guards.max_decomposition_components {
        return Err(Error::GuardExceeded {
            what: "irreducible decomposition components",
            limit: guards.max_decomposition_components,
        });
    }
    // Deterministic pivot: the pure-lex greatest generator with at least two
    // support variables, split at its smallest variable power.
    let pivot = gens
        .iter()
        .filter(|g| g.support().len() >= 2)
        .max_by(|a, b| a.cmp_purelex(b))
        .cloned();
    let result = match pivot {
        None => vec![IrreducibleComponent::from_pure_powers(&gens)],
        Some(g) => {
            let i = g.support().min_index().unwrap();
            let mut head_exps = vec![0u32; n];
            head_exps[i - 1] = g.exponent(i);
            let head = Monomial::from_exponents(head_exps);
            let rest = g.checked_div(&head).expect("head divides");
            let mut left: Vec<Monomial> = gens.iter().filter(|h| **h != g).cloned().collect();
            let mut right = left.clone();
            left.push(head);
            right.push(rest);
            let mut out = split(minimalize(&left), n, guards, memo, work)?;
            out.extend(split(minimalize(&right), n, guards, memo, work)?);
            out
        }
    };
    memo.insert(gens, result.clone());
    Ok(result)
}

fn irredundant(mut components: Vec<IrreducibleComponent>, n: usize) -> Vec<IrreducibleComponent> {
    // Pairwise containment prefilter: a component containing another is
    // redundant in the intersection.
    let contains_component = |big: &IrreducibleComponent, small: &IrreducibleComponent| {
        // small subset big as ideals: every generator of small lies in big.
        small
            .powers
            .iter()
            .all(|(&i, &e)| big.exponent(i).is_some_and(|be| be <= e))
    };
    let mut keep = vec![true; components.len()];
    for i in 0..components.len() {
        for j in 0..components.len() {
            if i != j
                && keep[i]
                && keep[j]
                && components[i] != components[j]
                && contains_component(&components[i], &components[j])
            {
                keep[i] = false;
            }
        }
    }
    let mut filtered: Vec<IrreducibleComponent> = components
        .drain(..)
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(c, _)| c)
        .collect();
    // Full pass: drop any component containing the intersection of the rest.
    loop {
        let mut removed = false;
        'outer: for i in 0..filtered.len() {
            if filtered.len() == 1 {
                break;
            }
            let mut others: Option<Vec<Monomial>> = None;
            for (k, c) in filtered.iter().enumerate() {
                if k == i {
                    continue;
                }
                let gens = c.generators(n);
                others = Some(match others {
                    None => gens,
                    Some(acc) => ideal_intersection(&acc, &gens),
                });
            }
            let others = others.expect("at least two components");
            if others.iter().all(|m| filtered[i].contains(m)) {
                filtered.remove(i);
                removed = true;
                break 'outer;
            }
        }
        if !removed {
            return filtered;
        }
    }
}

/// Maximal subsets of `[n]` whose squarefree product lies outside the ideal,
/// by exhaustive scan. `in_ideal` decides membership of a squarefree
/// monomial given its support.
pub fn brute_force_facets(n: usize, in_ideal: impl Fn(&IndexSet) -> bool) -> Vec<IndexSet> {
    assert!(n <= 20, "exhaustive facet search is capped at 20 variables");
    let mut faces: Vec<u32> = Vec::new();
    let mut face_set: HashSet<u32> = HashSet::new();
    for mask in 0u32..(1 << n) {
        let support: Vec<usize> = (1..=n).filter(|k| mask >> (k - 1) & 1 == 1).collect();
        let s = IndexSet::new(support).expect("increasing");
        if !in_ideal(&s) {
            faces.push(mask);
            face_set.insert(mask);
        }
    }
    faces
        .into_iter()
        .filter(|&mask| {
            (1..=n).all(|j| mask >> (j - 1) & 1 == 1 || !face_set.contains(&(mask | 1 << (j - 1))))
        })
        .map(|mask| {
            IndexSet::new((1..=n).filter(|k| mask >> (k - 1) & 1 == 1).collect())
                .expect("increasing")
        })
        .collect()
}

/// A signed combination of presentation-variable monomials with like terms
/// combined; the zero polynomial is the empty vector.
pub type TermSum = Vec<(i64, PresMonomial)>;

fn combine(terms: Vec<(i64, PresMonomial)>) -> TermSum {
    let mut acc: BTreeMap<PresMonomial, i64> = BTreeMap::new();
    for (c, m) in terms {
        *acc.entry(m).or_insert(0) += c;
    }
    acc.into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(m, c)| (c, m))
        .collect()
}

/// Precomputed divisibility prefilters for a marked basis.
pub(crate) struct RuleSet<'a> {
    rules: &'a [ToricBinomial],
    x_masks: Vec<u64>,
    t_masks: Vec<u64>,
}

impl<'a> RuleSet<'a> {
    pub(crate) fn new(rules: &'a [ToricBinomial]) -> Self {
        let x_masks = rules.iter().map(|r| r.lhs.x_mask()).collect();
        let t_masks = rules.iter().map(|r| r.lhs.t_mask()).collect();
        RuleSet {
            rules,
            x_masks,
            t_masks,
        }
    }

    /// Index of the first rule (in emitted order) whose marked initial
    /// divides `m`.
    fn first_divisor(&self, m: &PresMonomial) -> Option<usize> {
        let xm = m.x_mask();
        let tm = m.t_mask();
        for (k, rule) in self.rules.iter().enumerate() {
            if self.x_masks[k] & !xm != 0 || self.t_masks[k] & !tm != 0 {
                continue;
            }
            if rule.lhs.divides(m) {
                return Some(k);
            }
        }
        None
    }

    pub(crate) fn reduce(&self, poly: &[(i64, PresMonomial)], max_steps: usize) -> Result<TermSum> {
        let mut current = combine(poly.to_vec());
        let mut steps = 0usize;
        loop {
            let hit = current
                .iter()
                .enumerate()
                .find_map(|(ti, (_, m))| self.first_divisor(m).map(|rk| (ti, rk)));
            let Some((ti, rk)) = hit else {
                return Ok(current);
            };
            steps += 1;
            if steps > max_steps {
                return Err(Error::Inconclusive);
            }
            let (c, m) = current[ti].clone();
            let rule = &self.rules[rk];
            let cofactor = m.checked_div(&rule.lhs).expect("divisor found");
            let replacement = cofactor.mul(&rule.rhs);
            let mut terms = current;
            terms.remove(ti);
            terms.push((c, replacement));
            current = combine(terms);
        }
    }
}

/// Reduces a signed combination of presentation monomials by a marked
/// basis: while any term is divisible by a marked initial, the first such
/// term is rewritten by the first matching rule in emitted order. Exceeding
/// `max_steps` reports `Inconclusive` rather than accepting silently.
pub fn marked_reduce(
    poly: &[(i64, PresMonomial)],
    gb: &[ToricBinomial],
    max_steps: usize,
) -> Result<TermSum> {
    RuleSet::new(gb).reduce(poly, max_steps)
}
