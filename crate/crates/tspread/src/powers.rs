//! Powers of the ideal: generator enumeration through sorted tuples,
//! lexicographic linear-quotient profiles, projective dimension and depth,
//! the witness monomial forcing depth zero, and two independent routes to
//! the associated primes.

use serde::{Deserialize, Serialize};

use crate::borel::BorelInstance;
use crate::dual::{linear_quotients_check, QuotientOutcome, QuotientProfile};
use crate::error::{Error, Result};
use crate::monomial::{IndexSet, Monomial};
use crate::oracle;
use crate::sorting;

/// Resource limits for the exhaustive routines. Exceeding a guard is a
/// clean refusal, never silent truncation.
#[derive(Clone, Debug)]
pub struct Guards {
    pub max_power_generators: usize,
    pub max_decomposition_vars: usize,
    pub max_decomposition_components: usize,
    /// Cap on the t-degree of standard-monomial enumerations.
    pub max_standard_degree: usize,
    /// Cap on the exponent-box size scanned by the witness oracle.
    pub max_witness_box: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_power_generators: 200_000,
            max_decomposition_vars: 12,
            max_decomposition_components: 5_000,
            max_standard_degree: 4,
            max_witness_box: 2_000_000,
        }
    }
}

/// Minimal generators of the k-th power, in decreasing pure lex order.
///
/// The ideal is generated in a single degree, so the minimal generators of
/// the power are exactly the distinct k-fold products; each such product is
/// hit once by enumerating sorted k-tuples.
pub fn power_generators(inst: &BorelInstance, k: usize, guards: &Guards) -> Result<Vec<Monomial>> {
    if k == 0 {
        return Err(Error::Precondition("power exponent must be >= 1".into()));
    }
    let gens = inst.generators();
    let tuples = sorting::sorted_tuples(&gens, k, guards.max_power_generators)?;
    let mut out: Vec<Monomial> = tuples
        .into_iter()
        .map(|tuple| {
            let mut acc = Monomial::one(inst.ambient());
            for c in tuple {
                acc = acc.product(&gens[c]);
            }
            acc
        })
        .collect();
    crate::monomial::sort_purelex_descending(&mut out);
    debug_assert!(
        out.windows(2).all(|w| w[0] != w[1]),
        "products are distinct"
    );
    Ok(out)
}

/// Linear-quotient profiles of the power along decreasing pure lex. The
/// construction guarantees success; a failure index therefore surfaces as
/// a hard error.
pub fn lex_quotient_profiles(
    inst: &BorelInstance,
    k: usize,
    guards: &Guards,
) -> Result<Vec<QuotientProfile>> {
    let gens = power_generators(inst, k, guards)?;
    match linear_quotients_check(&gens) {
        QuotientOutcome::Linear(profiles) => Ok(profiles),
        QuotientOutcome::Fails { index, against } => Err(Error::VerificationFailed(format!(
            "power {k} lost linear quotients at step {index} against {against}"
        ))),
    }
}

/// Depth data of `S / I^k` via linear quotients: the projective dimension
/// is `max r_j + 1` and depth is its complement in the ambient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthReport {
    pub k: usize,
    pub projdim: usize,
    pub depth: usize,
    /// Pure-lex earliest generator attaining the maximal `r_j`.
    pub witness: Option<String>,
}

pub fn depth_report(inst: &BorelInstance, k: usize, guards: &Guards) -> Result<DepthReport> {
    let profiles = lex_quotient_profiles(inst, k, guards)?;
    let max_r = profiles.iter().map(|p| p.r()).max().unwrap_or(0);
    let witness = profiles
        .iter()
        .find(|p| p.r() == max_r)
        .map(|p| p.generator.to_string());
    let projdim = max_r + 1;
    Ok(DepthReport {
        k,
        projdim,
        depth: inst.ambient() - projdim,
        witness,
    })
}

/// One verified variable of the colon ideal at the witness monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStep {
    /// The variable `x_j` being absorbed.
    pub var: usize,
    /// Which factor of the witness product gets replaced (1-based slot).
    pub slot: usize,
    #[serde(with = "crate::monomial_text")]
    pub replaced: Monomial,
    #[serde(with = "crate::monomial_text")]
    pub replacement: Monomial,
    /// The lex-larger power generator `w'` with `x_j w = x_{i_s} w'`.
    #[serde(with = "crate::monomial_text")]
    pub larger: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimDepthWitness {
    #[serde(with = "crate::monomial_text")]
    pub witness: Monomial,
    pub steps: Vec<WitnessStep>,
}

/// Builds the witness `w = v_1 v_2 ... v_d u^{k-d}` whose colon by the
/// earlier generators needs all of `x_1, ..., x_{n-1}`, and verifies each
/// variable by exhibiting the factor replacement. Requires `i_1 >= t + 1`,
/// `i_d = n`, and `k >= d`.
pub fn limdepth_witness(
    inst: &BorelInstance,
    k: usize,
    guards: &Guards,
) -> Result<LimDepthWitness> {
    let n = inst.ambient();
    let t = inst.spread();
    let d = inst.degree();
    if inst.bound(1) < t + 1 {
        return Err(Error::Precondition(format!(
            "needs i_1 >= t + 1 (got i_1 = {}, t = {t}); the spread-tight case has positive limit depth",
            inst.bound(1)
        )));
    }
    if inst.generator_indices().max_index().unwrap() != n {
        return Err(Error::Precondition("needs i_d = n".into()));
    }
    if k < d {
        return Err(Error::Precondition(format!("needs k >= d = {d}")));
    }
    let _ = guards;

    // Factor s (1-based, counted from the top): the generator
    //   x_1 x_{t+1} ... x_{(s-2)t+1} x_{i_s} x_{i_{s+1}} ... x_{i_d}.
    let factor = |s: usize| -> Monomial {
        let mut idx: Vec<usize> = (0..s.saturating_sub(1)).map(|r| r * t + 1).collect();
        idx.extend((s..=d).map(|r| inst.bound(r)));
        Monomial::squarefree(n, &IndexSet::new(idx).expect("t-spread increasing"))
    };
    let factors: Vec<Monomial> = (1..=d).map(factor).collect();
    for f in &factors {
        if !inst.contains(f) {
            return Err(Error::VerificationFailed(format!(
                "witness factor {f} is not a generator"
            )));
        }
    }
    let u = inst.borel_generator();
    let mut witness = Monomial::one(n);
    for f in &factors {
        witness = witness.product(f);
    }
    for _ in d..k {
        witness = witness.product(&u);
    }

    let mut steps = Vec::with_capacity(n - 1);
    for j in 1..n {
        let s = (1..=d)
            .find(|&s| j < inst.bound(s))
            .ok_or_else(|| Error::VerificationFailed(format!("no slot for variable x{j}")))?;
        let replaced = factors[s - 1].clone();
        let replacement = replaced
            .times_var(j)
            .div_var(inst.bound(s))
            .expect("i_s divides the factor");
        if !inst.contains(&replacement) {
            return Err(Error::VerificationFailed(format!(
                "replacement {replacement} left the ideal at x{j}"
            )));
        }
        let larger = witness
            .checked_div(&replaced)
            .expect("factor divides witness")
            .product(&replacement);
        if witness.cmp_purelex(&larger) != std::cmp::Ordering::Less {
            return Err(Error::VerificationFailed(format!(
                "replacement at x{j} is not lex-larger"
            )));
        }
        if witness.times_var(j) != larger.times_var(inst.bound(s)) {
            return Err(Error::VerificationFailed(format!(
                "exchange identity failed at x{j}"
            )));
        }
        steps.push(WitnessStep {
            var: j,
            slot: s,
            replaced,
            replacement,
            larger,
        });
    }
    Ok(LimDepthWitness { witness, steps })
}

/// The spread-tight family obstruction: in `n = d t` variables with
/// `u = x_t x_{2t} ... x_{dt}`, no linear-quotient variable of any power
/// ever lies in the support of `u`.
pub fn veronese_support_obstruction(
    inst: &BorelInstance,
    k: usize,
    guards: &Guards,
) -> Result<bool> {
    if !inst.is_veronese() || inst.bound(1) != inst.spread() {
        return Err(Error::Precondition(
            "needs the spread-tight family u = x_t x_{2t} ... x_{dt} with n = dt".into(),
        ));
    }
    let supp = inst.generator_indices().clone();
    let profiles = lex_quotient_profiles(inst, k, guards)?;
    Ok(profiles
        .iter()
        .all(|p| p.vars.iter().all(|v| !supp.contains(v))))
}

/// Associated primes of the quotient by the given monomial ideal, as the
/// radicals of an irredundant irreducible decomposition.
pub fn associated_primes(gens: &[Monomial], n: usize, guards: &Guards) -> Result<Vec<IndexSet>> {
    let comps = oracle::irreducible_decomposition(gens, n, guards)?;
    let mut primes: Vec<IndexSet> = comps.iter().map(|c| c.radical()).collect();
    primes.sort();
    primes.dedup();
    Ok(primes)
}

/// Result of [`persistence_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PersistenceOutcome {
    Holds,
    /// `Ass(I^k)` is not contained in `Ass(I^{k+1})`.
    ViolatedAt {
        k: usize,
        prime: IndexSet,
    },
}

impl PersistenceOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, PersistenceOutcome::Holds)
    }
}

/// Checks `Ass(I^k) ⊆ Ass(I^{k+1})` for `1 <= k < kmax`.
pub fn persistence_check(
    inst: &BorelInstance,
    kmax: usize,
    guards: &Guards,
) -> Result<PersistenceOutcome> {
    let n = inst.ambient();
    let mut prev: Option<Vec<IndexSet>> = None;
    for k in 1..=kmax {
        let gens = power_generators(inst, k, guards)?;
        let ass = associated_primes(&gens, n, guards)?;
        if let Some(before) = prev {
            if let Some(prime) = before.iter().find(|p| !ass.contains(p)) {
                return Ok(PersistenceOutcome::ViolatedAt {
                    k: k - 1,
                    prime: prime.clone(),
                });
            }
        }
        prev = Some(ass);
    }
    Ok(PersistenceOutcome::Holds)
}

/// Second, independent route to `Ass`: a prime `P` is associated iff some
/// monomial `m` has colon ideal exactly `P`. The scan runs over the
/// exponent box bounded componentwise by the generator exponents (colon
/// ideals only depend on the capped exponents). Returns a witness monomial
/// or `None`.
pub fn ass_witness_oracle(
    gens: &[Monomial],
    n: usize,
    prime: &IndexSet,
    guards: &Guards,
) -> Result<Option<Monomial>> {
    if gens.is_empty() {
        return Err(Error::Precondition(
            "zero ideal has no associated primes".into(),
        ));
    }
    let caps: Vec<u32> = (1..=n)
        .map(|i| gens.iter().map(|g| g.exponent(i)).max().unwrap_or(0))
        .collect();
    let box_size: usize = caps
        .iter()
        .map(|&c| c as usize + 1)
        .try_fold(1usize, |acc, f| acc.checked_mul(f))
        .unwrap_or(usize::MAX);
    if box_size > guards.max_witness_box {
        return Err(Error::GuardExceeded {
            what: "associated-prime witness box",
            limit: guards.max_witness_box,
        });
    }
    let target: Vec<Monomial> = prime.iter().map(|i| Monomial::variable(n, i)).collect();
    let mut exps = vec![0u32; n];
    loop {
        let m = Monomial::from_exponents(exps.clone());
        // Colon (I : m), minimalized.
        let colon = oracle::minimalize(&gens.iter().map(|g| g.colon(&m)).collect::<Vec<_>>());
        if !colon.iter().any(|c| c.is_one()) && oracle::ideal_equal(&colon, &target) {
            return Ok(Some(m));
        }
        // Odometer step through the exponent box.
        let mut pos = 0usize;
        loop {
            if pos == n {
                return Ok(None);
            }
            if exps[pos] < caps[pos] {
                exps[pos] += 1;
                break;
            }
            exps[pos] = 0;
            pos += 1;
        }
    }
}
