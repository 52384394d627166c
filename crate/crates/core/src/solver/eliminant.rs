use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Integer;

use super::GroebnerBasis;
use crate::algebra::gmp::{content_gmp, from_gmp};
use crate::algebra::{Monomial, MultiPoly, Rational, UniPoly};
use crate::error::{Error, Result};

/// Size of the quotient ring `Q[x]/I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum QuotientDim {
    Finite(usize),
    Infinite,
}

impl QuotientDim {
    pub fn finite(self) -> Option<usize> {
        match self {
            QuotientDim::Finite(d) => Some(d),
            QuotientDim::Infinite => None,
        }
    }
}

/// Monomials outside the leading-term ideal, or `None` when there are
/// infinitely many.
pub fn standard_monomials(gb: &GroebnerBasis) -> Option<Vec<Monomial>> {
    let n = gb.nvars();
    let lms = gb.leading_monomials();
    if gb.is_unit() {
        return Some(Vec::new());
    }
    let mut bound = vec![u8::MAX; n];
    for m in &lms {
        if let Some(i) = m.pure_power_var() {
            bound[i] = bound[i].min(m.exp(i));
        }
    }
    if bound.contains(&u8::MAX) {
        return None;
    }
    let mut out = Vec::new();
    let mut exps = vec![0u8; n];
    fn rec(
        var: usize,
        exps: &mut Vec<u8>,
        bound: &[u8],
        lms: &[Monomial],
        out: &mut Vec<Monomial>,
    ) {
        if var == exps.len() {
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in 0..bound[var] {
            exps[var] = e;
            let m = Monomial::from_exponents(exps);
            // Divisibility is monotone in each exponent, so stop at the
            // first multiple of a leading monomial.
            if lms.iter().any(|l| l.divides(&m)) {
                break;
            }
            rec(var + 1, exps, bound, lms, out);
        }
        exps[var] = 0;
    }
    rec(0, &mut exps, &bound, &lms, &mut out);
    out.sort();
    Some(out)
}

pub fn quotient_dimension(gb: &GroebnerBasis) -> QuotientDim {
    match standard_monomials(gb) {
        Some(v) => QuotientDim::Finite(v.len()),
        None => QuotientDim::Infinite,
    }
}

/// Multiplication by each variable in the standard-monomial basis.
pub struct MultiplicationTables {
    basis: Vec<Monomial>,
    /// `cols[i][b] = (s, r)` with `x_i · basis[b] ≡ r / s`.
    cols: Vec<Vec<(Integer, Vec<Integer>)>>,
}

impl MultiplicationTables {
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Coordinates of `x_var · basis[b]`.
    pub fn column(&self, var: usize, b: usize) -> Vec<Rational> {
        let (s, r) = &self.cols[var][b];
        let s = from_gmp(s);
        r.iter()
            .map(|x| Rational::new(from_gmp(x), s.clone()))
            .collect()
    }
}

pub fn multiplication_tables(gb: &GroebnerBasis) -> Result<MultiplicationTables> {
    let basis = standard_monomials(gb).ok_or(Error::PositiveDimensional)?;
    let n = gb.nvars();
    let index = |m: &Monomial| basis.binary_search(m).ok();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut col = Vec::with_capacity(basis.len());
        for b in &basis {
            let prod = b.mul(&Monomial::var(i));
            let mut v = vec![Integer::new(); basis.len()];
            let s = if let Some(k) = index(&prod) {
                v[k] = Integer::from(1);
                Integer::from(1)
            } else {
                let (s, r) = gb.normal_form_scaled(vec![(prod, Integer::from(1))]);
                for (m, c) in r {
                    let k = index(&m).expect("normal form lies in the standard span");
                    v[k] = c;
                }
                s
            };
            col.push((s, v));
        }
        cols.push(col);
    }
    Ok(MultiplicationTables { basis, cols })
}

/// Coefficients of a random linear form with small nonzero integers.
pub fn random_form(nvars: usize, seed: u64) -> Vec<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..nvars)
        .map(|_| {
            let v: i64 = rng.gen_range(1..=16);
            if rng.gen_bool(0.5) {
                -v
            } else {
                v
            }
        })
        .collect()
}

/// Minimal polynomial of `λ = Σ form_i x_i` in `Q[x]/I`, from the first
/// linear dependence among the normal forms of `1, λ, λ², ...`.
///
/// Runs over the integers: `λ` is scaled to an integer matrix and every
/// Krylov vector is kept primitive, with its scale tracked separately.
pub fn minimal_polynomial(tables: &MultiplicationTables, form: &[i64]) -> UniPoly {
    let d = tables.basis.len();
    let one_idx = tables
        .basis
        .binary_search(&Monomial::ONE)
        .expect("1 is standard in a proper ideal");
    let (mat, den) = integer_form_matrix(tables, form);
    let den = from_gmp(&den);
    let mut v = vec![Integer::new(); d];
    v[one_idx] = Integer::from(1);
    // v_k = scale_k · λ^k · 1
    let mut scale = Rational::one();
    let mut scales = Vec::new();
    let mut ech = IntEchelon::default();
    loop {
        scales.push(scale.clone());
        if let Some(combo) = ech.insert(v.clone()) {
            let coeffs = combo
                .iter()
                .zip(&scales)
                .map(|(c, s)| Rational::from_integer(from_gmp(c)) * s)
                .collect();
            return UniPoly::new(coeffs).primitive();
        }
        let mut next = vec![Integer::new(); d];
        for (b, vb) in v.iter().enumerate() {
            if vb.is_zero() {
                continue;
            }
            for (o, t) in next.iter_mut().zip(&mat[b]) {
                if !t.is_zero() {
                    *o += vb * t;
                }
            }
        }
        let g = content_gmp(&next);
        if g != 0 && g != 1 {
            next.iter_mut().for_each(|x| x.div_exact_mut(&g));
        }
        scale = scale * Rational::from_integer(den.clone()) / Rational::from_integer(from_gmp(&g));
        v = next;
    }
}

/// Columns of `den · λ` as integer vectors.
fn integer_form_matrix(
    tables: &MultiplicationTables,
    form: &[i64],
) -> (Vec<Vec<Integer>>, Integer) {
    let d = tables.basis.len();
    let used: Vec<usize> = (0..form.len()).filter(|&i| form[i] != 0).collect();
    let mut den = Integer::from(1);
    for &i in &used {
        for (s, _) in &tables.cols[i] {
            den.lcm_mut(s);
        }
    }
    let mut mat = vec![vec![Integer::new(); d]; d];
    for &i in &used {
        for (b, (s, r)) in tables.cols[i].iter().enumerate() {
            let f = Integer::from(den.div_exact_ref(s)) * form[i];
            for (o, x) in mat[b].iter_mut().zip(r) {
                if !x.is_zero() {
                    *o += &f * x;
                }
            }
        }
    }
    (mat, den)
}

/// Fraction-free row echelon form that remembers how each row was built.
#[derive(Default)]
struct IntEchelon {
    rows: Vec<(usize, Vec<Integer>, Vec<Integer>)>,
    inserted: usize,
}

impl IntEchelon {
    /// Returns integer coefficients of a dependence among all inserted
    /// vectors once `v` depends on the earlier ones.
    fn insert(&mut self, mut v: Vec<Integer>) -> Option<Vec<Integer>> {
        let idx = self.inserted;
        self.inserted += 1;
        let mut combo = vec![Integer::new(); idx + 1];
        combo[idx] = Integer::from(1);
        for (pivot, row, rcombo) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let g = Integer::from(row[*pivot].gcd_ref(&v[*pivot]));
            let a = Integer::from(row[*pivot].div_exact_ref(&g));
            let b = Integer::from(v[*pivot].div_exact_ref(&g));
            for (x, r) in v.iter_mut().zip(row) {
                *x *= &a;
                *x -= &b * r;
            }
            for (k, x) in combo.iter_mut().enumerate() {
                *x *= &a;
                if let Some(r) = rcombo.get(k) {
                    *x -= &b * r;
                }
            }
            let g = content_gmp(v.iter().chain(combo.iter()));
            if g != 0 && g != 1 {
                v.iter_mut()
                    .chain(combo.iter_mut())
                    .for_each(|x| x.div_exact_mut(&g));
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, v, combo));
                None
            }
            None => Some(combo),
        }
    }
}

/// The linear form as a polynomial.
pub fn form_poly(nvars: usize, form: &[i64]) -> MultiPoly {
    MultiPoly::from_terms(
        nvars,
        form.iter()
            .enumerate()
            .map(|(i, &c)| (Monomial::var(i), Rational::from_integer(c.into()))),
    )
}

/// Outcome of the eliminant search.
#[derive(Clone, Debug)]
pub struct Eliminant {
    pub poly: UniPoly,
    pub form: Vec<i64>,
    /// True when `deg = dim Q[x]/I`, i.e. the form is in shape position.
    pub full_degree: bool,
    pub attempts: usize,
}

/// Tries up to `retries` random forms (seeds `seed, seed+1, ...`) until the
/// minimal polynomial reaches the quotient dimension.
pub fn eliminant(gb: &GroebnerBasis, seed: u64, retries: usize) -> Result<Eliminant> {
    let tables = multiplication_tables(gb)?;
    eliminant_from_tables(&tables, gb.nvars(), seed, retries)
}

pub fn eliminant_from_tables(
    tables: &MultiplicationTables,
    nvars: usize,
    seed: u64,
    retries: usize,
) -> Result<Eliminant> {
    let d = tables.basis.len();
    if d == 0 {
        return Err(Error::InvalidInstance(
            "empty variety has no eliminant".into(),
        ));
    }
    let mut best: Option<Eliminant> = None;
    for attempt in 0..retries.max(1) {
        let form = random_form(nvars, seed.wrapping_add(attempt as u64));
        let poly = minimal_polynomial(tables, &form);
        let full = poly.degree() == Some(d);
        let better = best
            .as_ref()
            .is_none_or(|b| poly.degree() > b.poly.degree());
        if better {
            best = Some(Eliminant {
                poly,
                form,
                full_degree: full,
                attempts: attempt + 1,
            });
        }
        if full {
            break;
        }
    }
    let mut e = best.unwrap();
    e.attempts = e.attempts.max(1);
    Ok(e)
}
