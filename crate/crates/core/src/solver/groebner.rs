//! Buchberger's algorithm over the rationals, degree-reverse-lexicographic
//! order, normal selection strategy and the Gebauer–Möller criteria.
//!
//! Polynomials are kept with primitive integer coefficients during the
//! computation; reductions are fraction free.

use std::fmt;

use rug::Integer;

use crate::algebra::gmp::{content_gmp as content_of, from_gmp, to_gmp};
use crate::algebra::{Monomial, MultiPoly, Rational};
use crate::error::{Error, Result};

/// Reduction steps allowed before giving up, unless configured otherwise.
pub const DEFAULT_STEP_BUDGET: u64 = 50_000_000;

/// Content is divided out of a partially reduced polynomial this often.
const CONTENT_PERIOD: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetExhausted {
    pub steps: u64,
}

impl fmt::Display for BudgetExhausted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step budget exhausted after {} reductions", self.steps)
    }
}

/// Reduced Gröbner basis, sorted by increasing leading monomial, every
/// element monic.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    nvars: usize,
    generators: Vec<MultiPoly>,
    steps: u64,
    /// The same basis with primitive integer coefficients.
    reducers: Engine,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.generators == other.generators
    }
}

impl Eq for GroebnerBasis {}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    /// Reduction steps spent computing the basis.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| g.leading().unwrap().0)
            .collect()
    }

    /// Normal form with exact rational coefficients.
    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.nvars {
            return Err(Error::VariableMismatch(self.nvars, p.nvars()));
        }
        if p.is_zero() {
            return Ok(p.clone());
        }
        // p = c · P with P primitive, and NF(P) = r / s.
        let prim = p.primitive();
        let c = &p.leading().unwrap().1 / &prim.leading().unwrap().1;
        let terms = IntPoly::from_multipoly(&prim).terms;
        let (s, r) = self.normal_form_scaled(terms);
        let factor = c / Rational::from_integer(from_gmp(&s));
        Ok(MultiPoly::from_terms(
            self.nvars,
            r.iter()
                .map(|(m, x)| (*m, Rational::from_integer(from_gmp(x)) * &factor)),
        ))
    }

    /// Integer normal form: returns `(s, r)` with `NF(p) = r / s`, `s > 0`.
    pub(crate) fn normal_form_scaled(
        &self,
        terms: Vec<(Monomial, Integer)>,
    ) -> (Integer, Vec<(Monomial, Integer)>) {
        let mut steps = 0;
        self.reducers
            .reduce_inner(terms, true, &mut steps)
            .expect("normal forms run without a budget")
    }
}

/// Integer polynomial, terms in descending order.
#[derive(Clone, Debug)]
struct IntPoly {
    terms: Vec<(Monomial, Integer)>,
}

impl IntPoly {
    fn from_multipoly(p: &MultiPoly) -> Self {
        let prim = p.primitive();
        Self {
            terms: prim
                .terms()
                .iter()
                .map(|(m, c)| (*m, to_gmp(&c.to_integer())))
                .collect(),
        }
    }

    fn lm(&self) -> Monomial {
        self.terms[0].0
    }

    fn lc(&self) -> &Integer {
        &self.terms[0].1
    }

    fn to_monic(&self, nvars: usize) -> MultiPoly {
        let lc = Rational::from_integer(from_gmp(self.lc()));
        MultiPoly::from_terms(
            nvars,
            self.terms
                .iter()
                .map(|(m, c)| (*m, Rational::from_integer(from_gmp(c)) / &lc)),
        )
    }
}

/// Divides by the content and makes the leading coefficient positive.
/// `terms` is in descending order.
fn normalize_desc(terms: &mut [(Monomial, Integer)]) {
    if terms.is_empty() {
        return;
    }
    let mut g = content_of(terms.iter().map(|t| &t.1));
    if terms[0].1 < 0 {
        g = -g;
    }
    if g != 1 {
        for t in terms.iter_mut() {
            t.1.div_exact_mut(&g);
        }
    }
}

#[derive(Clone, Debug)]
struct Engine {
    basis: Vec<IntPoly>,
    lms: Vec<Monomial>,
    active: Vec<bool>,
    budget: u64,
}

impl Engine {
    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, lm) in self.lms.iter().enumerate() {
            if self.active[k] && lm.divides(m) {
                match best {
                    Some(b) if self.basis[b].terms.len() <= self.basis[k].terms.len() => {}
                    _ => best = Some(k),
                }
            }
        }
        best
    }

    /// Full fraction-free reduction of a descending term list, normalized.
    fn reduce(
        &self,
        terms: Vec<(Monomial, Integer)>,
        steps: &mut u64,
    ) -> std::result::Result<Vec<(Monomial, Integer)>, BudgetExhausted> {
        let (_, mut done) = self.reduce_inner(terms, false, steps)?;
        normalize_desc(&mut done);
        Ok(done)
    }

    /// Returns `(s, r)` with `r = s·input - (ideal element)`. When `track` is
    /// false the content is divided out along the way and `s` is meaningless.
    fn reduce_inner(
        &self,
        terms: Vec<(Monomial, Integer)>,
        track: bool,
        steps: &mut u64,
    ) -> std::result::Result<(Integer, Vec<(Monomial, Integer)>), BudgetExhausted> {
        // `rest` ascending so the leading term sits at the end.
        let mut rest: Vec<(Monomial, Integer)> = terms.into_iter().rev().collect();
        let mut done: Vec<(Monomial, Integer)> = Vec::new();
        let mut scale = Integer::from(1);
        let mut since_content = 0u32;
        while let Some((m, c)) = rest.pop() {
            let Some(k) = self.find_reducer(&m) else {
                done.push((m, c));
                continue;
            };
            *steps += 1;
            if *steps > self.budget {
                return Err(BudgetExhausted { steps: *steps });
            }
            let g = &self.basis[k];
            let q = g.lm().quotient_of(&m);
            let lg = g.lc();
            let gg = Integer::from(c.gcd_ref(lg));
            let a = Integer::from(lg.div_exact_ref(&gg));
            let b = Integer::from(c.div_exact_ref(&gg));
            if a != 1 {
                for t in rest.iter_mut().chain(done.iter_mut()) {
                    t.1 *= &a;
                }
                if track {
                    scale *= &a;
                }
            }
            rest = sub_scaled_tail(rest, &g.terms[1..], &q, &b);
            since_content += 1;
            if !track && since_content >= CONTENT_PERIOD {
                since_content = 0;
                let g = content_of(rest.iter().chain(done.iter()).map(|t| &t.1));
                if g != 0 && g != 1 {
                    for t in rest.iter_mut().chain(done.iter_mut()) {
                        t.1.div_exact_mut(&g);
                    }
                }
            }
        }
        Ok((scale, done))
    }

    fn push(&mut self, p: IntPoly) -> usize {
        self.lms.push(p.lm());
        self.basis.push(p);
        self.active.push(true);
        self.basis.len() - 1
    }
}

/// `rest - b·q·tail` where `rest` is ascending and `tail` descending; the
/// result is ascending.
fn sub_scaled_tail(
    rest: Vec<(Monomial, Integer)>,
    tail: &[(Monomial, Integer)],
    q: &Monomial,
    b: &Integer,
) -> Vec<(Monomial, Integer)> {
    let mut merged = Vec::with_capacity(rest.len() + tail.len());
    let mut ri = rest.into_iter().peekable();
    let mut ti = tail.iter().rev().map(|(tm, tc)| (tm.mul(q), tc)).peekable();
    loop {
        match (ri.peek(), ti.peek()) {
            (Some(r), Some(t)) => {
                if r.0 < t.0 {
                    merged.push(ri.next().unwrap());
                } else if r.0 > t.0 {
                    let (tm, tc) = ti.next().unwrap();
                    merged.push((tm, -Integer::from(b * tc)));
                } else {
                    let (rm, mut v) = ri.next().unwrap();
                    let (_, tc) = ti.next().unwrap();
                    v -= b * tc;
                    if v != 0 {
                        merged.push((rm, v));
                    }
                }
            }
            (Some(_), None) => merged.push(ri.next().unwrap()),
            (None, Some(_)) => {
                let (tm, tc) = ti.next().unwrap();
                merged.push((tm, -Integer::from(b * tc)));
            }
            (None, None) => break,
        }
    }
    merged
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn s_poly(f: &IntPoly, g: &IntPoly, lcm: &Monomial) -> Vec<(Monomial, Integer)> {
    let qf = f.lm().quotient_of(lcm);
    let qg = g.lm().quotient_of(lcm);
    let gg = Integer::from(f.lc().gcd_ref(g.lc()));
    let a = Integer::from(g.lc().div_exact_ref(&gg));
    let b = Integer::from(f.lc().div_exact_ref(&gg));
    let mut acc: std::collections::BTreeMap<std::cmp::Reverse<Monomial>, Integer> =
        std::collections::BTreeMap::new();
    for (m, c) in &f.terms[1..] {
        *acc.entry(std::cmp::Reverse(m.mul(&qf))).or_default() += &a * c;
    }
    for (m, c) in &g.terms[1..] {
        *acc.entry(std::cmp::Reverse(m.mul(&qg))).or_default() -= &b * c;
    }
    acc.into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(m, c)| (m.0, c))
        .collect()
}

/// Gebauer–Möller update of the pair list after adding basis element `h`.
fn update_pairs(engine: &mut Engine, pairs: &mut Vec<Pair>, h: usize) {
    let lh = engine.lms[h];
    let olds: Vec<usize> = (0..h).filter(|&k| engine.active[k]).collect();
    let cand: Vec<Pair> = olds
        .iter()
        .map(|&g| Pair {
            i: g,
            j: h,
            lcm: engine.lms[g].lcm(&lh),
        })
        .collect();

    // Chain criterion among the new pairs; coprime pairs are kept here and
    // dropped below (product criterion).
    let mut kept: Vec<Pair> = Vec::new();
    for (idx, p) in cand.iter().enumerate() {
        let coprime = engine.lms[p.i].is_coprime(&lh);
        let dominated = cand
            .iter()
            .enumerate()
            .any(|(k, q)| k != idx && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || k < idx));
        if coprime || !dominated {
            kept.push(p.clone());
        }
    }
    kept.retain(|p| !engine.lms[p.i].is_coprime(&lh));

    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && engine.lms[p.i].lcm(&lh) != p.lcm
            && engine.lms[p.j].lcm(&lh) != p.lcm)
    });
    pairs.extend(kept);

    for g in olds {
        if lh.divides(&engine.lms[g]) {
            engine.active[g] = false;
        }
    }
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
pub fn groebner(generators: &[MultiPoly]) -> Result<GroebnerBasis> {
    groebner_with_budget(generators, DEFAULT_STEP_BUDGET)?
        .map_err(|e| Error::InvalidInstance(e.to_string()))
}

/// Like [`groebner`] but aborts after `budget` reduction steps.
pub fn groebner_with_budget(
    generators: &[MultiPoly],
    budget: u64,
) -> Result<std::result::Result<GroebnerBasis, BudgetExhausted>> {
    let nvars = match generators.first() {
        Some(g) => g.nvars(),
        None => return Err(Error::InvalidInstance("no generators".into())),
    };
    if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::VariableMismatch(nvars, g.nvars()));
    }
    Ok(run(generators, nvars, budget))
}

fn run(
    generators: &[MultiPoly],
    nvars: usize,
    budget: u64,
) -> std::result::Result<GroebnerBasis, BudgetExhausted> {
    let mut engine = Engine {
        basis: Vec::new(),
        lms: Vec::new(),
        active: Vec::new(),
        budget,
    };
    let mut steps = 0u64;
    let mut pairs: Vec<Pair> = Vec::new();

    // Smallest inputs first: they make the better reducers.
    let mut inputs: Vec<IntPoly> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(IntPoly::from_multipoly)
        .collect();
    inputs.sort_by(|a, b| a.lm().cmp(&b.lm()).then(a.terms.len().cmp(&b.terms.len())));

    let mut unit = false;
    for p in inputs {
        let r = engine.reduce(p.terms, &mut steps)?;
        if r.is_empty() {
            continue;
        }
        let h = IntPoly { terms: r };
        if h.lm().is_one() {
            unit = true;
            break;
        }
        let k = engine.push(h);
        update_pairs(&mut engine, &mut pairs, k);
        interreduce(&mut engine, k, &mut steps)?;
    }

    while !unit && !pairs.is_empty() {
        let (pos, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .degree()
                    .cmp(&b.lcm.degree())
                    .then(a.lcm.cmp(&b.lcm))
                    .then((a.i, a.j).cmp(&(b.i, b.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(pos);
        let sp = s_poly(&engine.basis[pair.i], &engine.basis[pair.j], &pair.lcm);
        if sp.is_empty() {
            continue;
        }
        let r = engine.reduce(sp, &mut steps)?;
        if r.is_empty() {
            continue;
        }
        let h = IntPoly { terms: r };
        if h.lm().is_one() {
            unit = true;
            break;
        }
        let k = engine.push(h);
        update_pairs(&mut engine, &mut pairs, k);
        interreduce(&mut engine, k, &mut steps)?;
    }

    let finals: Vec<IntPoly> = if unit {
        vec![IntPoly {
            terms: vec![(Monomial::ONE, Integer::from(1))],
        }]
    } else {
        // Minimal basis, then reduce each element by the others.
        let mut minimal: Vec<usize> = Vec::new();
        let mut idx: Vec<usize> = (0..engine.basis.len())
            .filter(|&k| engine.active[k])
            .collect();
        idx.sort_by(|&a, &b| engine.lms[a].cmp(&engine.lms[b]));
        for k in idx {
            if !minimal
                .iter()
                .any(|&j| engine.lms[j].divides(&engine.lms[k]))
            {
                minimal.push(k);
            }
        }
        let mut out = Vec::with_capacity(minimal.len());
        for &k in &minimal {
            for (j, act) in engine.active.iter_mut().enumerate() {
                *act = j != k && minimal.contains(&j);
            }
            let p = engine.basis[k].clone();
            out.push(reduce_tail(&engine, p, &mut steps)?);
        }
        out.sort_by_key(IntPoly::lm);
        out
    };
    let generators = finals.iter().map(|p| p.to_monic(nvars)).collect();
    let reducers = Engine {
        lms: finals.iter().map(IntPoly::lm).collect(),
        active: vec![true; finals.len()],
        basis: finals,
        budget: u64::MAX,
    };
    Ok(GroebnerBasis {
        nvars,
        generators,
        steps,
        reducers,
    })
}

/// Tail-reduces the active elements that have a term divisible by the
/// leading monomial of element `k`.
fn interreduce(
    engine: &mut Engine,
    k: usize,
    steps: &mut u64,
) -> std::result::Result<(), BudgetExhausted> {
    let lk = engine.lms[k];
    for j in 0..engine.basis.len() {
        if j == k || !engine.active[j] {
            continue;
        }
        if engine.basis[j].terms[1..].iter().any(|t| lk.divides(&t.0)) {
            let p = engine.basis[j].clone();
            engine.basis[j] = reduce_tail(engine, p, steps)?;
        }
    }
    Ok(())
}

/// Reduces every non-leading term of `p`, keeping the leading term.
fn reduce_tail(
    engine: &Engine,
    p: IntPoly,
    steps: &mut u64,
) -> std::result::Result<IntPoly, BudgetExhausted> {
    if p.terms.len() == 1 {
        return Ok(p);
    }
    let (lm, lc) = p.terms[0].clone();
    let (scale, reduced) = engine.reduce_inner(p.terms[1..].to_vec(), true, steps)?;
    let mut terms = vec![(lm, lc * scale)];
    terms.extend(reduced);
    normalize_desc(&mut terms);
    Ok(IntPoly { terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn c(n: usize, v: i64) -> MultiPoly {
        MultiPoly::constant(n, rat(v))
    }

    #[test]
    fn univariate_gcd() {
        let p = &(&x(1, 0) * &x(1, 0)) - &c(1, 1);
        let q = &x(1, 0) - &c(1, 1);
        let gb = groebner(&[p, q.clone()]).unwrap();
        assert_eq!(gb.generators(), &[q]);
    }

    #[test]
    fn linear_system() {
        let gb = groebner(&[&x(2, 0) + &x(2, 1), &x(2, 0) - &x(2, 1)]).unwrap();
        assert_eq!(gb.generators(), &[x(2, 1), x(2, 0)]);
    }

    #[test]
    fn inconsistent() {
        let gb = groebner(&[&x(2, 0) - &c(2, 1), x(2, 0)]).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn cyclic_three() {
        let v = |i| x(3, i);
        let g1 = &(&v(0) + &v(1)) + &v(2);
        let g2 = &(&(&v(0) * &v(1)) + &(&v(1) * &v(2))) + &(&v(2) * &v(0));
        let g3 = &(&(&v(0) * &v(1)) * &v(2)) - &c(3, 1);
        let gb = groebner(&[g1.clone(), g2.clone(), g3.clone()]).unwrap();
        // Every input reduces to zero and every pair of the output does too.
        for g in [&g1, &g2, &g3] {
            assert!(gb.normal_form(g).unwrap().is_zero());
        }
        let lms = gb.leading_monomials();
        assert!(lms
            .iter()
            .any(|m| m.pure_power_var() == Some(2) && m.degree() == 3));
        assert_eq!(gb.generators().len(), 3);
    }

    #[test]
    fn budget_is_reported() {
        let v = |i| x(3, i);
        let g1 = &(&v(0) + &v(1)) + &v(2);
        let g2 = &(&(&v(0) * &v(1)) + &(&v(1) * &v(2))) + &(&v(2) * &v(0));
        let g3 = &(&(&v(0) * &v(1)) * &v(2)) - &c(3, 1);
        let r = groebner_with_budget(&[g1, g2, g3], 1).unwrap();
        assert!(r.is_err());
    }
}
