//! The sorting operator on pairs and tuples of equal-degree monomials.
//!
//! Merging the exponents of `v w` into a weakly increasing index word and
//! dealing odd positions to `v'` and even ones to `w'` is an involution-free
//! normal form: iterating it over all pairs of a tuple terminates in the
//! unique sorted tuple with the same product.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::par;

fn check_equal_degrees(v: &Monomial, w: &Monomial) -> Result<()> {
    if v.degree() != w.degree() {
        return Err(Error::DegreeMismatch(v.degree(), w.degree()));
    }
    Ok(())
}

/// Sorts a pair: merge the 2d support indices of `v w` and interleave.
/// The output pair has the same product and the same common degree.
pub fn sort_pair(v: &Monomial, w: &Monomial) -> Result<(Monomial, Monomial)> {
    check_equal_degrees(v, w)?;
    let n = v.ambient();
    let merged = v.product(w).indices_with_multiplicity();
    let mut a = vec![0u32; n];
    let mut b = vec![0u32; n];
    for (pos, &i) in merged.iter().enumerate() {
        if pos % 2 == 0 {
            a[i - 1] += 1;
        } else {
            b[i - 1] += 1;
        }
    }
    Ok((Monomial::from_exponents(a), Monomial::from_exponents(b)))
}

/// Is `(v, w)` fixed by the sorting operator, in this order?
pub fn is_sorted_pair(v: &Monomial, w: &Monomial) -> Result<bool> {
    let (a, b) = sort_pair(v, w)?;
    Ok(a == *v && b == *w)
}

/// Is every pair `(tuple[i], tuple[j])` with `i < j` sorted?
pub fn is_sorted_tuple(tuple: &[Monomial]) -> Result<bool> {
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            if !is_sorted_pair(&tuple[i], &tuple[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A tuple of equal-degree monomials in which every pair is sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortedTuple(Vec<Monomial>);

impl SortedTuple {
    pub fn new(tuple: Vec<Monomial>) -> Result<Self> {
        if !is_sorted_tuple(&tuple)? {
            return Err(Error::Precondition("tuple is not sorted".into()));
        }
        Ok(SortedTuple(tuple))
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<Monomial> {
        self.0
    }

    pub fn common_degree(&self) -> usize {
        self.0.first().map(|m| m.degree()).unwrap_or(0)
    }
}

/// Sorts an r-tuple by repeated pairwise sorting passes until no pair
/// changes. The pass bound `r * d * n` is a termination guard only; the
/// straightening provably reaches the unique sorted tuple with the same
/// product, and the round-robin reconstruction in the tests cross-checks
/// the result.
pub fn sort_tuple(tuple: &[Monomial]) -> Result<SortedTuple> {
    for w in tuple.windows(2) {
        check_equal_degrees(&w[0], &w[1])?;
    }
    let mut work = tuple.to_vec();
    let r = work.len();
    if r <= 1 {
        return Ok(SortedTuple(work));
    }
    let d = work[0].degree();
    let n = work[0].ambient();
    let max_passes = r * d * n + 1;
    for _ in 0..max_passes {
        let mut changed = false;
        for i in 0..r {
            for j in i + 1..r {
                let (a, b) = sort_pair(&work[i], &work[j])?;
                if a != work[i] || b != work[j] {
                    work[i] = a;
                    work[j] = b;
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(SortedTuple(work));
        }
    }
    Err(Error::Inconclusive)
}

/// Outcome of [`sortable_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sortability {
    Sortable,
    /// A pair whose sorted image leaves the set, witnessing failure.
    Counterexample {
        pair: (Monomial, Monomial),
        sorted: (Monomial, Monomial),
    },
}

impl Sortability {
    pub fn is_sortable(&self) -> bool {
        matches!(self, Sortability::Sortable)
    }
}

/// Does the sorting operator map `gens x gens` into itself?
pub fn sortable_check(gens: &[Monomial]) -> Result<Sortability> {
    for w in gens.windows(2) {
        check_equal_degrees(&w[0], &w[1])?;
    }
    let set: std::collections::HashSet<&Monomial> = gens.iter().collect();
    let m = gens.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let hit = par::find_map_first_indexed(pairs.len(), |p| {
        let (i, j) = pairs[p];
        let (a, b) = sort_pair(&gens[i], &gens[j]).expect("degrees checked");
        if set.contains(&a) && set.contains(&b) {
            None
        } else {
            Some(Sortability::Counterexample {
                pair: (gens[i].clone(), gens[j].clone()),
                sorted: (a, b),
            })
        }
    });
    Ok(hit.unwrap_or(Sortability::Sortable))
}

/// Enumerates all sorted `k`-tuples with entries drawn from `gens`
/// (repetition allowed), as index tuples into `gens`. Entries must be
/// pairwise distinct monomials. `max_count` guards the output size.
pub fn sorted_tuples(gens: &[Monomial], k: usize, max_count: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut tuple: Vec<usize> = Vec::with_capacity(k);
    sorted_tuples_rec(gens, k, max_count, &mut tuple, &mut out)?;
    Ok(out)
}

fn sorted_tuples_rec(
    gens: &[Monomial],
    k: usize,
    max_count: usize,
    tuple: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    if tuple.len() == k {
        if out.len() >= max_count {
            return Err(Error::GuardExceeded {
                what: "sorted tuple enumeration",
                limit: max_count,
            });
        }
        out.push(tuple.clone());
        return Ok(());
    }
    'next: for c in 0..gens.len() {
        for &p in tuple.iter() {
            if !is_sorted_pair(&gens[p], &gens[c]).expect("equal degrees") {
                continue 'next;
            }
        }
        tuple.push(c);
        sorted_tuples_rec(gens, k, max_count, tuple, out)?;
        tuple.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::borel::BorelInstance;

    fn m(text: &str, n: usize) -> Monomial {
        Monomial::parse(text, n).unwrap()
    }

    /// Independent oracle: the sorted tuple of a product deals the merged
    /// index word round-robin across the r slots.
    fn round_robin_sort(tuple: &[Monomial]) -> Vec<Monomial> {
        let r = tuple.len();
        let n = tuple[0].ambient();
        let mut product = Monomial::one(n);
        for t in tuple {
            product = product.product(t);
        }
        let word = product.indices_with_multiplicity();
        let mut exps = vec![vec![0u32; n]; r];
        for (pos, &i) in word.iter().enumerate() {
            exps[pos % r][i - 1] += 1;
        }
        exps.into_iter().map(Monomial::from_exponents).collect()
    }

    #[test]
    fn sort_pair_examples() {
        let (a, b) = sort_pair(&m("x2*x4*x6", 9), &m("x1*x3*x9", 9)).unwrap();
        assert_eq!((a, b), (m("x1*x3*x6", 9), m("x2*x4*x9", 9)));

        let v = m("x2*x4*x9", 9);
        assert_eq!(sort_pair(&v, &v).unwrap(), (v.clone(), v.clone()));

        // Already sorted pair is fixed.
        let v = m("x1*x3*x8", 10);
        let w = m("x1*x7*x9", 10);
        assert!(is_sorted_pair(&v, &w).unwrap());

        assert!(sort_pair(&m("x1", 3), &m("x1*x2", 3)).is_err());
    }

    #[test]
    fn sort_pair_preserves_product_and_is_idempotent() {
        let v = m("x1^2*x5", 6);
        let w = m("x2*x3*x6", 6);
        let (a, b) = sort_pair(&v, &w).unwrap();
        assert_eq!(a.product(&b), v.product(&w));
        assert_eq!(sort_pair(&a, &b).unwrap(), (a.clone(), b.clone()));
    }

    #[test]
    fn sorted_tuple_predicate() {
        assert!(is_sorted_tuple(&[m("x1*x3", 4), m("x2*x4", 4)]).unwrap());
        assert!(!is_sorted_tuple(&[m("x2*x4", 4), m("x1*x3", 4)]).unwrap());
        assert!(is_sorted_tuple(&[m("x1*x3", 4)]).unwrap());
        // Pairwise-sorted is genuinely stronger than adjacent-sorted.
        assert!(!is_sorted_tuple(&[m("x1*x2", 6), m("x5*x6", 6)]).unwrap());
    }

    #[test]
    fn sort_tuple_examples() {
        let sorted = sort_tuple(&[m("x2*x4*x9", 9), m("x1*x3*x5", 9)]).unwrap();
        assert_eq!(sorted.monomials(), &[m("x1*x3*x5", 9), m("x2*x4*x9", 9)]);

        let already = vec![m("x1*x3", 4), m("x2*x4", 4)];
        assert_eq!(sort_tuple(&already).unwrap().monomials(), &already[..]);
    }

    #[test]
    fn sort_tuple_is_permutation_invariant_and_matches_round_robin() {
        // All orderings of small generator multisets reach the same tuple.
        let inst = BorelInstance::new(9, 2, vec![2, 4, 9]).unwrap();
        let gens = inst.generators();
        let picks: [[usize; 3]; 4] = [[0, 5, 12], [3, 3, 9], [1, 7, 11], [12, 6, 0]];
        for pick in picks {
            let base: Vec<Monomial> = pick.iter().map(|&i| gens[i].clone()).collect();
            let expect = round_robin_sort(&base);
            assert!(is_sorted_tuple(&expect).unwrap());
            // All 6 permutations of the triple.
            let perms = [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ];
            for p in perms {
                let arranged: Vec<Monomial> = p.iter().map(|&i| base[i].clone()).collect();
                assert_eq!(sort_tuple(&arranged).unwrap().monomials(), &expect[..]);
            }
        }
    }

    #[test]
    fn sortable_examples() {
        let inst = BorelInstance::new(9, 2, vec![2, 4, 9]).unwrap();
        assert!(sortable_check(&inst.generators()).unwrap().is_sortable());

        let inst = BorelInstance::new(3, 1, vec![2, 3]).unwrap();
        assert!(sortable_check(&inst.generators()).unwrap().is_sortable());

        let broken = vec![m("x1*x4", 4), m("x2*x3", 4)];
        match sortable_check(&broken).unwrap() {
            Sortability::Counterexample { sorted, .. } => {
                assert_eq!(sorted, (m("x1*x3", 4), m("x2*x4", 4)));
            }
            Sortability::Sortable => panic!("expected counterexample"),
        }
    }

    #[test]
    fn sorted_tuple_enumeration_counts_products() {
        let inst = BorelInstance::new(4, 2, vec![2, 4]).unwrap();
        let gens = inst.generators();
        let tuples = sorted_tuples(&gens, 2, 10_000).unwrap();
        assert_eq!(tuples.len(), 6);
        // Distinct products, exactly one tuple per product.
        let mut products: Vec<Monomial> = tuples
            .iter()
            .map(|t| gens[t[0]].product(&gens[t[1]]))
            .collect();
        products.sort();
        products.dedup();
        assert_eq!(products.len(), 6);
    }

    #[test]
    fn sorted_tuple_guard_trips() {
        let inst = BorelInstance::new(9, 2, vec![2, 4, 9]).unwrap();
        let gens = inst.generators();
        assert!(matches!(
            sorted_tuples(&gens, 3, 5),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
