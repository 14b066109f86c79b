//! The exhaustive small-field invariant suite behind `rslab selftest`:
//! one fast, deterministic check per core property.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    ext_field_make, interpolate, linear_split, random_irreducible, Poly, PrimeField,
};
use crate::arith::binomial;
use crate::dlog::{self, linalg};
use crate::products;
use crate::radius;
use crate::reduction;
use crate::rscodec;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

pub fn run_all() -> Vec<CheckResult> {
    let checks: Vec<(&str, fn() -> Result<String, String>)> = vec![
        ("field-axioms", check_field_axioms),
        ("extension-field-structure", check_ext_structure),
        ("interpolation-roundtrip", check_interpolation),
        ("linear-split-roundtrip", check_linear_split),
        ("rs-minimum-distance", check_min_distance),
        ("bw-unique-decoding", check_bw),
        ("sudan-vs-bruteforce", check_sudan),
        ("psi-correspondence", check_correspondence),
        ("census-totals", check_census),
        ("nk-dp-vs-bruteforce", check_nk),
        ("group-order-methods", check_group_order),
        ("ghat-boundary", check_ghat),
        ("lemma1-small-box", check_lemma1),
        ("modular-solver-planted", check_solver),
        ("dlog-end-to-end", check_dlog),
    ];
    checks
        .into_iter()
        .map(|(name, f)| match f() {
            Ok(detail) => CheckResult {
                name: name.into(),
                passed: true,
                detail,
            },
            Err(detail) => CheckResult {
                name: name.into(),
                passed: false,
                detail,
            },
        })
        .collect()
}

fn check_field_axioms() -> Result<String, String> {
    let mut rng = ChaCha12Rng::seed_from_u64(1);
    let mut checked = 0u64;
    for p in [5u64, 7, 11] {
        let f = PrimeField::new(p).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let a = f.elem(rng.gen_range(0..p));
            let b = f.elem(rng.gen_range(0..p));
            let c = f.elem(rng.gen_range(0..p));
            let assoc = a.mul(&b).unwrap().mul(&c).unwrap() == a.mul(&b.mul(&c).unwrap()).unwrap();
            let dist = a.mul(&b.add(&c).unwrap()).unwrap()
                == a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            let inv_ok = a.is_zero() || a.mul(&a.inverse().unwrap()).unwrap() == f.one();
            if !(assoc && dist && inv_ok) {
                return Err(format!("axiom failure at p={p}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} random triples over 3 fields"))
}

fn check_ext_structure() -> Result<String, String> {
    let mut fields_checked = 0;
    for (p, h) in [(2u64, 2usize), (3, 2), (5, 2), (7, 2), (2, 4)] {
        let modulus = random_irreducible(p, h, 3).map_err(|e| e.to_string())?;
        let field = ext_field_make(p, &modulus).map_err(|e| e.to_string())?;
        // alpha satisfies the modulus
        let mut acc = field.zero();
        for (i, &c) in modulus.coeffs().iter().enumerate() {
            let term = field.mul(&field.from_base(c), &field.pow_u64(&field.alpha(), i as u64));
            acc = field.add(&acc, &term);
        }
        if !acc.is_zero() {
            return Err(format!("modulus(alpha) != 0 for q={p} h={h}"));
        }
        let n = field.group_order().to_u64().unwrap();
        for e in field.elements().skip(1) {
            let ord = field.element_order(&e).unwrap().to_u64().unwrap();
            if n % ord != 0 || !field.pow_u64(&e, ord).is_one() {
                return Err(format!("order violation for q={p} h={h}"));
            }
        }
        fields_checked += 1;
    }
    Ok(format!("{fields_checked} fields, exhaustive order check"))
}

fn check_interpolation() -> Result<String, String> {
    let mut rng = ChaCha12Rng::seed_from_u64(2);
    let f = PrimeField::new(11).unwrap();
    for _ in 0..300 {
        let deg = rng.gen_range(0..5usize);
        let poly = Poly::new(11, (0..=deg).map(|_| rng.gen_range(0..11)).collect());
        let pts: Vec<_> = (0..deg as u64 + 1)
            .map(|x| (f.elem(x), poly.eval(f.elem(x))))
            .collect();
        if interpolate(&f, &pts).unwrap() != poly {
            return Err("interpolate . evaluate != identity".into());
        }
    }
    Ok("300 random polynomials over F_11".into())
}

fn check_linear_split() -> Result<String, String> {
    let mut cases = 0;
    for p in [2u64, 3, 5, 7] {
        // all subsets of F_p with |A| <= 4
        let mut stack = vec![(0u64, Vec::<u64>::new())];
        while let Some((start, subset)) = stack.pop() {
            if !subset.is_empty() {
                let mut prod = Poly::one(p);
                for &a in &subset {
                    prod = prod.mul(&Poly::linear_root(p, a));
                }
                let got = linear_split(&prod).unwrap();
                let want: BTreeSet<u64> = subset.iter().copied().collect();
                if got != Some(want) {
                    return Err(format!("split mismatch p={p} A={subset:?}"));
                }
                cases += 1;
            }
            if subset.len() < 4 {
                for a in start..p {
                    let mut next = subset.clone();
                    next.push(a);
                    stack.push((a + 1, next));
                }
            }
        }
    }
    Ok(format!("{cases} exhaustive subset products"))
}

fn check_min_distance() -> Result<String, String> {
    for p in [2u64, 3, 5] {
        for k in 1..=2usize {
            let params = rscodec::RSParams::new(p, (0..p).collect(), k).unwrap();
            let msgs: Vec<Poly> = (0..(p as usize).pow(k as u32))
                .map(|idx| {
                    let mut c = vec![0u64; k];
                    let mut v = idx as u64;
                    for slot in c.iter_mut() {
                        *slot = v % p;
                        v /= p;
                    }
                    Poly::new(p, c)
                })
                .collect();
            for i in 0..msgs.len() {
                for j in i + 1..msgs.len() {
                    let wi = rscodec::rs_encode(&params, &msgs[i]).unwrap();
                    let wj = rscodec::rs_encode(&params, &msgs[j]).unwrap();
                    if wi.hamming_distance(&wj) < params.min_distance() {
                        return Err(format!("distance violation q={p} k={k}"));
                    }
                }
            }
        }
    }
    Ok("exhaustive pairs for q <= 5, k <= 2".into())
}

fn check_bw() -> Result<String, String> {
    let mut rng = ChaCha12Rng::seed_from_u64(3);
    for _ in 0..200 {
        let p = [5u64, 7, 11][rng.gen_range(0..3)];
        let k = rng.gen_range(1..=3usize);
        let params = rscodec::RSParams::new(p, (0..p).collect(), k).unwrap();
        let m = Poly::new(p, (0..k).map(|_| rng.gen_range(0..p)).collect());
        let mut symbols = rscodec::rs_encode(&params, &m).unwrap().symbols().to_vec();
        let errs = rng.gen_range(0..=params.unique_radius());
        let mut pos: Vec<usize> = (0..params.n()).collect();
        for i in (1..pos.len()).rev() {
            pos.swap(i, rng.gen_range(0..=i));
        }
        for &i in &pos[..errs] {
            symbols[i] = (symbols[i] + rng.gen_range(1..p)) % p;
        }
        let r = rscodec::Word::new(p, symbols);
        if rscodec::bw_decode(&params, &r).unwrap() != Some(m) {
            return Err(format!("bw failed at p={p} k={k} errors={errs}"));
        }
    }
    Ok("200 random corruptions within the unique radius".into())
}

fn check_sudan() -> Result<String, String> {
    let mut rng = ChaCha12Rng::seed_from_u64(4);
    let mut compared = 0;
    while compared < 50 {
        let p = [3u64, 5, 7][rng.gen_range(0..3)];
        let k = rng.gen_range(1..=3usize).min(p as usize);
        let n = rng.gen_range(k.max(2)..=p as usize);
        let params = rscodec::RSParams::new(p, (0..n as u64).collect(), k).unwrap();
        let radius = rng.gen_range(0..=n);
        let word = rscodec::Word::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        match rscodec::sudan_list_decode(&params, &word, radius) {
            Ok(got) => {
                let want = rscodec::list_decode_bruteforce(&params, &word, radius).unwrap();
                if got != want {
                    return Err(format!("sudan mismatch p={p} n={n} k={k} radius={radius}"));
                }
                compared += 1;
            }
            Err(crate::Error::RadiusUnsupported { .. }) => {}
            Err(e) => return Err(format!("unexpected sudan error: {e}")),
        }
    }
    Ok("50 supported instances, set equality".into())
}

fn check_correspondence() -> Result<String, String> {
    let field = ext_field_make(5, &Poly::new(5, vec![2, 0, 1])).unwrap();
    let s: Vec<u64> = (0..5).collect();
    let census = reduction::psi_census(&field, &s, 3).unwrap();
    if census.total() != BigUint::from(10u32) {
        return Err("census total != C(5,3)".into());
    }
    for f_elem in field.elements() {
        let spec = reduction::InstanceSpec::new(field.clone(), s.clone(), 3, field.to_poly(&f_elem))
            .unwrap();
        let word = reduction::build_received_word(&spec);
        let list = rscodec::list_decode_bruteforce(&spec.code_params(), &word, spec.radius()).unwrap();
        if list.len() as u128 != census.get(&f_elem) {
            return Err(format!("fiber/list mismatch at {f_elem:?}"));
        }
        let mut subsets = BTreeSet::new();
        for m in &list {
            let rel = reduction::relation_from_codeword(&spec, m, &BigUint::zero())
                .map_err(|e| e.to_string())?
                .ok_or("in-radius codeword failed to pull back")?;
            if !subsets.insert(rel.subset.clone()) {
                return Err("pullback collision".into());
            }
        }
    }
    Ok("all 25 fibers in exact bijection".into())
}

fn check_census() -> Result<String, String> {
    let field = ext_field_make(7, &random_irreducible(7, 2, 9).unwrap()).unwrap();
    let s: Vec<u64> = (0..7).collect();
    for g in 3..=5usize {
        let t = reduction::psi_census(&field, &s, g).unwrap();
        if t.total() != binomial(7, g as u64) {
            return Err(format!("census total mismatch at g={g}"));
        }
    }
    Ok("totals equal C(n,g) for g=3..5 over F_49".into())
}

fn check_nk() -> Result<String, String> {
    for q in [3u64, 5, 7] {
        let field = ext_field_make(q, &random_irreducible(q, 2, 1).unwrap()).unwrap();
        for k in 1..=3usize.min(q as usize) {
            let dp = products::nk_count_all(&field, k).unwrap();
            let brute = products::nk_count_bruteforce(&field, k).unwrap();
            for e in field.elements() {
                if dp.get(&e) != brute.get(&e) {
                    return Err(format!("nk mismatch q={q} k={k}"));
                }
            }
            if dp.total() != binomial(q, k as u64) {
                return Err(format!("nk conservation q={q} k={k}"));
            }
        }
    }
    Ok("DP equals enumeration, totals conserved".into())
}

fn check_group_order() -> Result<String, String> {
    let mut rng = ChaCha12Rng::seed_from_u64(5);
    for (q, h) in [(3u64, 2usize), (5, 2), (2, 4)] {
        let field = ext_field_make(q, &random_irreducible(q, h, 2).unwrap()).unwrap();
        for _ in 0..10 {
            let s: Vec<u64> = (0..q).filter(|_| rng.gen_bool(0.5)).collect();
            let r = products::group_order_checked(&field, &s).map_err(|e| e.to_string())?;
            if !(field.group_order() % &r.order).is_zero() {
                return Err(format!("order does not divide N for q={q} h={h}"));
            }
        }
    }
    Ok("closure and dlog-gcd agree on 30 random subsets".into())
}

fn check_ghat() -> Result<String, String> {
    for n in 2..=24u64 {
        for k in 1..n {
            for q in [n, n + 3, 101] {
                let r = radius::ghat(n, k, q).map_err(|e| e.to_string())?;
                if !r.boundary_holds() {
                    return Err(format!("boundary violated at n={n} k={k} q={q}"));
                }
            }
        }
    }
    Ok("definitional boundary exact on the n <= 24 grid".into())
}

fn check_lemma1() -> Result<String, String> {
    let r = radius::lemma1_search(10, 200, 0).map_err(|e| e.to_string())?;
    if !r.solutions.is_empty() {
        return Err(format!("unexpected solutions: {:?}", r.solutions));
    }
    if !radius::lemma1_is_solution(10, 5, 1, 0).unwrap_or(true) {
        Ok(format!("empty box (scanned {})", r.candidates_scanned))
    } else {
        Err("single-triple probe mismatch".into())
    }
}

fn check_solver() -> Result<String, String> {
    let mut rng = ChaCha12Rng::seed_from_u64(6);
    let mut recovered = 0;
    while recovered < 50 {
        let modulus = [48u64, 360, 10080][rng.gen_range(0..3)];
        let n = rng.gen_range(1..6usize);
        let planted: Vec<u64> = (0..n).map(|_| rng.gen_range(0..modulus)).collect();
        let mut sys = linalg::ModSystem::new(modulus, n);
        for _ in 0..n {
            let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..modulus)).collect();
            let rhs = coeffs
                .iter()
                .zip(&planted)
                .fold(0u128, |acc, (&c, &x)| (acc + c as u128 * x as u128) % modulus as u128)
                as u64;
            sys.push_row(coeffs, rhs);
        }
        match linalg::solve_unique(&sys) {
            linalg::SolveOutcome::Unique(x) => {
                if x != planted {
                    return Err("planted solution not recovered".into());
                }
                recovered += 1;
            }
            linalg::SolveOutcome::Underdetermined => {}
            linalg::SolveOutcome::Inconsistent => return Err("planted system inconsistent".into()),
        }
    }
    Ok("50 planted systems recovered exactly".into())
}

fn check_dlog() -> Result<String, String> {
    let field = ext_field_make(7, &Poly::new(7, vec![1, 0, 1])).unwrap();
    let base = field
        .elements()
        .skip(1)
        .find(|e| field.is_primitive(e).unwrap())
        .unwrap();
    let target = field.pow_u64(&base, 29);
    let cfg = dlog::DlogConfig {
        field: field.clone(),
        s: (0..7).collect(),
        g: 4,
        variant: dlog::Variant::ListDecode,
        decoder: dlog::DecoderKind::BruteForce,
        base: base.clone(),
        target: target.clone(),
        seed: 42,
        max_trials: 4000,
    };
    let run = dlog::dlog_via_rs(&cfg).map_err(|e| e.to_string())?;
    let oracle = dlog::bsgs_dlog(&field, &base, &target)
        .map_err(|e| e.to_string())?
        .ok_or("bsgs found nothing")?;
    if run.exponent != oracle {
        return Err(format!("dlog {} != bsgs {}", run.exponent, oracle));
    }
    Ok(format!(
        "q=7 h=2 g=4 pipeline agrees with bsgs (e={})",
        run.exponent
    ))
}
