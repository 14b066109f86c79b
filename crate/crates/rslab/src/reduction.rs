//! The bridge between extension-field elements and decoding instances.
//!
//! For a g-subset A of S, psi(A) = prod_{a in A} (x - a) mod h(x). An element
//! f of F_q[x]/(h(x)) with nonempty preimage gives f + t(x) h(x) = P_A(x) for
//! a monic t of degree g - h, and t - x^(g-h) is a codeword of the
//! [n, g-h]_q code within distance n - g of the received word
//! ( -f(a)/h(a) - a^(g-h) )_{a in S}. The maps here construct those words,
//! pull decoder outputs back to subsets (relations), and census the whole
//! psi fiber structure exactly.
//!
//! Sign convention: factors are (x - a) and the factor base is
//! {alpha - a : a in S} throughout. Relations read i = sum log_b(alpha - a).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{linear_split, ExtElem, ExtField, Poly};
use crate::arith::{binomial, guard_limit};
use crate::error::{Error, Result};
use crate::rscodec::{RSParams, Word};

/// Default ceiling on C(|S|, g) for the exhaustive census.
pub const CENSUS_GUARD: u128 = 10_000_000;

/// A decoding instance derived from a target element f(alpha) of
/// F_q[x]/(h(x)): the code [n, g-h]_q over S with decoding radius n - g.
#[derive(Debug, Clone)]
pub struct InstanceSpec {
    field: ExtField,
    s: Vec<u64>,
    g: usize,
    f: Poly,
}

impl InstanceSpec {
    pub fn new(field: ExtField, s: Vec<u64>, g: usize, f: Poly) -> Result<InstanceSpec> {
        let h = field.degree();
        let q = field.q();
        if s.is_empty() || s.len() > q as usize {
            return Err(Error::Usage("evaluation set must be a nonempty subset of F_q".into()));
        }
        let mut sorted = s.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.iter().any(|&a| a >= q) {
            return Err(Error::Usage("evaluation set must be distinct residues mod q".into()));
        }
        if !(g > h && g <= s.len()) {
            return Err(Error::Usage(format!(
                "agreement g={g} must satisfy h={h} < g <= |S|={}",
                s.len()
            )));
        }
        if f.p() != q {
            return Err(Error::MixedFields { left: f.p(), right: q });
        }
        if f.degree().map_or(false, |d| d >= h) {
            return Err(Error::DegreeBound {
                degree: f.degree().unwrap().to_string(),
                bound: h,
            });
        }
        Ok(InstanceSpec { field, s, g, f })
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn s(&self) -> &[u64] {
        &self.s
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    /// Code dimension g - h.
    pub fn dimension(&self) -> usize {
        self.g - self.field.degree()
    }

    /// Decoding radius n - g.
    pub fn radius(&self) -> usize {
        self.n() - self.g
    }

    /// The derived [n, g-h]_q code over S.
    pub fn code_params(&self) -> RSParams {
        RSParams::new(self.field.q(), self.s.clone(), self.dimension())
            .expect("validated at construction")
    }
}

/// psi(A) = prod_{a in A} (alpha - a), computed in the residue field.
/// The empty product is 1.
pub fn psi_map(field: &ExtField, subset: &BTreeSet<u64>) -> ExtElem {
    let mut acc = field.one();
    for &a in subset {
        acc = field.mul(&acc, &field.alpha_minus(a));
    }
    acc
}

/// The received word ( -f(a)/h(a) - a^(g-h) )_{a in S}. h(a) is never zero:
/// the modulus is irreducible of degree >= 2, so it has no roots in F_q.
pub fn build_received_word(spec: &InstanceSpec) -> Word {
    let q = spec.field.q();
    let base = spec.field.base();
    let modulus = spec.field.modulus();
    let k = spec.dimension() as u64;
    let symbols = spec
        .s
        .iter()
        .map(|&a| {
            let fa = spec.f.eval(base.elem(a));
            let ha = modulus.eval(base.elem(a));
            debug_assert!(!ha.is_zero());
            let ratio = fa.div(&ha).expect("h has no roots in F_q");
            let mono = base.elem(a).pow_u64(k);
            ratio.neg().sub(&mono).expect("same field").value()
        })
        .collect();
    Word::new(q, symbols)
}

/// An index-calculus relation: b^i = prod_{a in A} (alpha - a).
/// Construction verifies psi(A) against the instance's target f.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    /// Exponent, reduced mod N. Serialized as a decimal string.
    #[serde(with = "biguint_str")]
    pub i: BigUint,
    /// The g-subset A of S, ascending. Serialized under the key "A".
    #[serde(rename = "A")]
    pub subset: Vec<u64>,
}

pub(crate) mod biguint_str {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        v.to_string().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Pulls a decoder output m back to a relation: t = m + x^(g-h),
/// P = f + t*h; accepted iff P splits into g distinct linear factors with
/// all roots inside S. Absence is a valid outcome (fiber miss).
pub fn relation_from_codeword(spec: &InstanceSpec, m: &Poly, i: &BigUint) -> Result<Option<Relation>> {
    let k = spec.dimension();
    if m.degree().map_or(false, |d| d >= k) {
        return Err(Error::DegreeBound {
            degree: m.degree().unwrap().to_string(),
            bound: k,
        });
    }
    let q = spec.field.q();
    let t = m.add(&Poly::x_pow(q, k));
    let p_poly = spec.f.add(&t.mul(spec.field.modulus()));
    debug_assert_eq!(p_poly.degree(), Some(spec.g));
    debug_assert!(p_poly.is_monic());

    let Some(roots) = linear_split(&p_poly)? else {
        return Ok(None);
    };
    let s_set: BTreeSet<u64> = spec.s.iter().copied().collect();
    if !roots.is_subset(&s_set) {
        return Ok(None);
    }
    debug_assert_eq!(roots.len(), spec.g);

    // construction invariant: psi(A) = f(alpha)
    let psi = psi_map(&spec.field, &roots);
    let f_elem = spec.field.from_poly(&spec.f);
    if psi != f_elem {
        return Err(Error::Internal(format!(
            "split of {} does not multiply back to the target",
            p_poly.render()
        )));
    }
    Ok(Some(Relation {
        i: i % spec.field.group_order(),
        subset: roots.into_iter().collect(),
    }))
}

/// How a count table was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CensusMode {
    /// Every subset enumerated; totals are exact.
    Exact,
    /// Uniform subset sampling; counts are estimates.
    Sampled { draws: u64 },
}

/// Exact (or sampled) per-element counts over F_q[x]/(h(x)), keyed by the
/// residue coefficient vector.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountTable {
    counts: BTreeMap<Vec<u64>, u128>,
    mode: CensusMode,
    /// Extension degree (key length).
    h: usize,
}

impl CountTable {
    pub(crate) fn new(h: usize, mode: CensusMode) -> CountTable {
        CountTable {
            counts: BTreeMap::new(),
            mode,
            h,
        }
    }

    pub(crate) fn bump(&mut self, key: Vec<u64>, by: u128) {
        debug_assert_eq!(key.len(), self.h);
        *self.counts.entry(key).or_insert(0) += by;
    }

    pub fn mode(&self) -> CensusMode {
        self.mode
    }

    pub fn get(&self, e: &ExtElem) -> u128 {
        self.counts.get(e.coeffs()).copied().unwrap_or(0)
    }

    /// Total of all counts; equals C(n, g) in exact census mode.
    pub fn total(&self) -> BigUint {
        self.counts.values().fold(BigUint::zero(), |acc, &v| acc + v)
    }

    /// Number of elements with a nonzero count.
    pub fn support_size(&self) -> usize {
        self.counts.len()
    }

    pub fn max_count(&self) -> u128 {
        self.counts.values().copied().max().unwrap_or(0)
    }

    /// Minimum count over all q^h - 1 nonzero field elements (zero when some
    /// nonzero element is missing from the support).
    pub fn min_over_nonzero(&self, field: &ExtField) -> u128 {
        let nonzero_domain = field.group_order();
        if BigUint::from(self.counts.len() as u64) < *nonzero_domain {
            return 0;
        }
        self.counts.values().copied().min().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u64>, u128)> + '_ {
        self.counts.iter().map(|(k, &v)| (k, v))
    }
}

/// Exhaustive psi census: |psi^-1(f)| for every f, by enumerating all
/// g-subsets of S. Guarded by C(|S|, g) <= 10^7 by default.
pub fn psi_census(field: &ExtField, s: &[u64], g: usize) -> Result<CountTable> {
    let spec_probe = InstanceSpec::new(field.clone(), s.to_vec(), g, Poly::zero(field.q()))?;
    let n = spec_probe.n() as u64;
    let subsets = binomial(n, g as u64);
    let guard = guard_limit(CENSUS_GUARD);
    if subsets > BigUint::from(guard) {
        return Err(Error::GuardExceeded {
            what: "psi census subset enumeration",
            needed: subsets.to_string(),
            limit: guard.to_string(),
        });
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    let mut table = CountTable::new(field.degree(), CensusMode::Exact);
    // DFS over ascending subsets carrying the partial factor product.
    let mut stack: Vec<(usize, usize, ExtElem)> = vec![(0, 0, field.one())];
    while let Some((start, size, prod)) = stack.pop() {
        if size == g {
            table.bump(prod.coeffs().to_vec(), 1);
            continue;
        }
        let remaining = g - size;
        for idx in start..=sorted.len() - remaining {
            let next = field.mul(&prod, &field.alpha_minus(sorted[idx]));
            stack.push((idx + 1, size + 1, next));
        }
    }
    Ok(table)
}

/// Uniform-sampling census for spaces past the guard: `draws` subsets chosen
/// uniformly with replacement. Always labeled as an estimate.
pub fn psi_census_sample(
    field: &ExtField,
    s: &[u64],
    g: usize,
    draws: u64,
    seed: u64,
) -> Result<CountTable> {
    InstanceSpec::new(field.clone(), s.to_vec(), g, Poly::zero(field.q()))?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut table = CountTable::new(field.degree(), CensusMode::Sampled { draws });
    let mut pool = s.to_vec();
    pool.sort_unstable();
    for _ in 0..draws {
        // partial Fisher-Yates: first g entries become the sample
        for i in 0..g {
            let j = rng.gen_range(i..pool.len());
            pool.swap(i, j);
        }
        let subset: BTreeSet<u64> = pool[..g].iter().copied().collect();
        let e = psi_map(field, &subset);
        table.bump(e.coeffs().to_vec(), 1);
    }
    Ok(table)
}
