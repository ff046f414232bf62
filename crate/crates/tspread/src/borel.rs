//! t-spread predicates, principal Borel instances, and the enumeration of
//! their minimal generating sets.
//!
//! An instance is the data `(n, t, u)` with `u = x_{i_1} ... x_{i_d}`
//! t-spread; it defines the smallest t-spread strongly stable ideal
//! containing `u`. A degree-d monomial `x_{j_1} ... x_{j_d}` is a minimal
//! generator exactly when `j_k <= i_k` for all `k` and consecutive `j`s
//! differ by at least `t`; everything here leans on that characterization,
//! with the exchange-move closure kept around as an independent oracle.

use rand::Rng;

use crate::error::{Error, Result};
use crate::monomial::{IndexSet, Monomial};

/// True when the support indices of `m`, listed with multiplicity, have all
/// consecutive gaps `>= t`. For `t >= 1` this forces `m` squarefree; every
/// monomial is 0-spread.
pub fn is_tspread(m: &Monomial, t: usize) -> bool {
    let idx = m.indices_with_multiplicity();
    idx.windows(2).all(|w| w[1] - w[0] >= t)
}

/// The instance data `(n, t, u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelInstance {
    n: usize,
    t: usize,
    u: IndexSet,
}

impl BorelInstance {
    pub fn new(n: usize, t: usize, u: Vec<usize>) -> Result<Self> {
        let u = IndexSet::new(u)?;
        if t == 0 {
            return Err(Error::InvalidInstance("spread t must be >= 1".into()));
        }
        if u.is_empty() {
            return Err(Error::InvalidInstance(
                "the Borel generator must have degree >= 1".into(),
            ));
        }
        let top = u.max_index().unwrap();
        if top > n {
            return Err(Error::InvalidInstance(format!(
                "generator index {top} exceeds ambient n = {n}"
            )));
        }
        let idx = u.indices();
        if let Some(w) = idx.windows(2).find(|w| w[1] - w[0] < t) {
            return Err(Error::InvalidInstance(format!(
                "generator is not {t}-spread: gap {} -> {}",
                w[0], w[1]
            )));
        }
        Ok(BorelInstance { n, t, u })
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn spread(&self) -> usize {
        self.t
    }

    /// Indices `i_1 < ... < i_d` of the Borel generator.
    pub fn generator_indices(&self) -> &IndexSet {
        &self.u
    }

    /// `i_k` for 1-based `k`.
    pub fn bound(&self, k: usize) -> usize {
        self.u.indices()[k - 1]
    }

    pub fn degree(&self) -> usize {
        self.u.len()
    }

    pub fn borel_generator(&self) -> Monomial {
        Monomial::squarefree(self.n, &self.u)
    }

    /// Is `u = x_{n-(d-1)t} ... x_n`, i.e. the ideal of *all* t-spread
    /// degree-d monomials?
    pub fn is_veronese(&self) -> bool {
        let d = self.degree();
        self.u
            .iter()
            .enumerate()
            .all(|(k, i)| i == self.n - (d - (k + 1)) * self.t)
    }

    /// The same generator viewed in ambient `i_d`, dropping variables past
    /// the top index.
    pub fn restricted_to_span(&self) -> BorelInstance {
        BorelInstance {
            n: self.u.max_index().unwrap(),
            t: self.t,
            u: self.u.clone(),
        }
    }

    /// Does `(j_1, ..., j_d)` (strictly increasing) satisfy the generator
    /// characterization?
    pub fn tuple_is_generator(&self, tuple: &[usize]) -> bool {
        tuple.len() == self.degree()
            && tuple
                .iter()
                .zip(self.u.iter())
                .all(|(&j, i)| j >= 1 && j <= i)
            && tuple
                .windows(2)
                .all(|w| w[1] > w[0] && w[1] - w[0] >= self.t)
    }

    /// Index tuples of all minimal generators, in increasing tuple order
    /// (equivalently: the generators in decreasing pure lex order).
    pub fn generator_tuples(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut out = Vec::new();
        let mut tuple = Vec::with_capacity(d);
        self.enumerate_tuples(&mut tuple, &mut out);
        out
    }

    fn enumerate_tuples(&self, tuple: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let k = tuple.len();
        if k == self.degree() {
            out.push(tuple.clone());
            return;
        }
        let lo = if k == 0 { 1 } else { tuple[k - 1] + self.t };
        for j in lo..=self.bound(k + 1) {
            tuple.push(j);
            self.enumerate_tuples(tuple, out);
            tuple.pop();
        }
    }

    /// Minimal generators, in decreasing pure lex order.
    pub fn generators(&self) -> Vec<Monomial> {
        self.generator_tuples()
            .into_iter()
            .map(|tuple| Monomial::squarefree(self.n, &IndexSet::new(tuple).expect("increasing")))
            .collect()
    }

    pub fn generator_count(&self) -> usize {
        self.generator_tuples().len()
    }

    /// Ideal membership: some minimal generator divides `m`.
    ///
    /// Greedy over the support: taking the smallest usable index at each
    /// step succeeds whenever any selection does, which is checked against
    /// the divisibility scan in the tests.
    pub fn contains(&self, m: &Monomial) -> bool {
        if m.ambient() != self.n {
            return false;
        }
        let supp = m.support();
        let idx = supp.indices();
        let mut pos = 0usize;
        let mut prev: Option<usize> = None;
        for k in 1..=self.degree() {
            while pos < idx.len() {
                let j = idx[pos];
                match prev {
                    Some(p) if j < p + self.t => pos += 1,
                    _ => break,
                }
            }
            if pos >= idx.len() || idx[pos] > self.bound(k) {
                return false;
            }
            prev = Some(idx[pos]);
            pos += 1;
        }
        true
    }

    /// Fixpoint of the exchange moves `v -> x_i (v / x_j)` (for `i < j`,
    /// result t-spread) starting from `{u}`. Independent route to the
    /// generating set; must agree with [`Self::generators`].
    pub fn closure_oracle(&self) -> Vec<Monomial> {
        let mut seen = std::collections::BTreeSet::new();
        let mut queue = vec![self.borel_generator()];
        seen.insert(queue[0].clone());
        while let Some(v) = queue.pop() {
            for j in v.support().iter() {
                let stripped = v.div_var(j).expect("j in support");
                for i in 1..j {
                    let w = stripped.times_var(i);
                    if is_tspread(&w, self.t) && seen.insert(w.clone()) {
                        queue.push(w);
                    }
                }
            }
        }
        let mut out: Vec<Monomial> = seen.into_iter().collect();
        crate::monomial::sort_purelex_descending(&mut out);
        out
    }
}

/// Is the given generating set closed under all admissible exchange moves,
/// membership being taken in the ideal the set generates? The monomials
/// need not share a degree.
pub fn is_tspread_strongly_stable(set: &[Monomial], t: usize) -> bool {
    let in_ideal = |m: &Monomial| set.iter().any(|g| g.divides(m));
    set.iter().all(|v| {
        v.support().iter().all(|j| {
            let stripped = v.div_var(j).expect("j in support");
            (1..j).all(|i| {
                let w = stripped.times_var(i);
                !is_tspread(&w, t) || in_ideal(&w)
            })
        })
    })
}

/// Lower bound imposed on `i_1` when sampling random instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FirstIndexBound {
    /// No constraint beyond `i_1 >= 1`.
    Any,
    /// `i_1 >= t`: every variable of the ambient divides some generator,
    /// so the dual machinery applies.
    AtLeastSpread,
    /// `i_1 >= t + 1`, the depth-limit hypothesis.
    AboveSpread,
}

/// Knobs for [`random_instance`].
#[derive(Clone, Debug)]
pub struct SampleOptions {
    pub n_min: usize,
    pub n_max: usize,
    pub d_max: usize,
    pub first_index: FirstIndexBound,
    /// Force `i_d = n`.
    pub top_anchored: bool,
    pub exclude_veronese: bool,
    pub max_generators: Option<usize>,
    /// Force `d >= 2`.
    pub require_degree_two: bool,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            n_min: 2,
            n_max: 12,
            d_max: 4,
            first_index: FirstIndexBound::AtLeastSpread,
            top_anchored: true,
            exclude_veronese: false,
            max_generators: None,
            require_degree_two: false,
        }
    }
}

/// Draws a uniform-ish random instance subject to `opts`, by rejection.
pub fn random_instance(rng: &mut impl Rng, opts: &SampleOptions) -> BorelInstance {
    loop {
        let n = rng.gen_range(opts.n_min..=opts.n_max);
        let d_lo = if opts.require_degree_two { 2 } else { 1 };
        if d_lo > opts.d_max {
            panic!("infeasible sample options: d_max < {d_lo}");
        }
        let d = rng.gen_range(d_lo..=opts.d_max.min(n));
        // Feasible spreads: i_1 can sit in [lo(t), n - (d-1) t].
        let lo = |t: usize| match opts.first_index {
            FirstIndexBound::Any => 1,
            FirstIndexBound::AtLeastSpread => t,
            FirstIndexBound::AboveSpread => t + 1,
        };
        let spreads: Vec<usize> = (1..=n).filter(|&t| lo(t) + (d - 1) * t <= n).collect();
        if spreads.is_empty() {
            continue;
        }
        let t = spreads[rng.gen_range(0..spreads.len())];
        // Build indices from the top down.
        let mut rev = Vec::with_capacity(d);
        let top = if opts.top_anchored {
            n
        } else {
            rng.gen_range(lo(t) + (d - 1) * t..=n)
        };
        rev.push(top);
        for r in (1..d).rev() {
            // Position r (1-based) must leave room for r-1 earlier indices.
            let hi = rev.last().unwrap() - t;
            let lo_r = lo(t) + (r - 1) * t;
            rev.push(rng.gen_range(lo_r..=hi));
        }
        rev.reverse();
        let inst = BorelInstance::new(n, t, rev).expect("sampled instance is valid");
        if opts.exclude_veronese && inst.is_veronese() {
            continue;
        }
        if let Some(cap) = opts.max_generators {
            if inst.generator_count() > cap {
                continue;
            }
        }
        return inst;
    }
}
