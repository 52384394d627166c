//! One line per acceptance criterion. Pass a substring such as `C4` to run a
//! subset.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;

use schubert_core::algebra::{det_bareiss, det_laplace, rat, MultiPoly, Rational, UniPoly};
use schubert_core::combinatorics::{
    chain_count, enumerate_necklaces, FlagType, Label, Necklace, Permutation, SchubertData,
};
use schubert_core::harness::{
    assign_by_necklace, check_excess_witness, problem_degree, round_rng, run_experiment,
    run_experiment_with, sample_points, ExperimentConfig, FrequencyTable, RunControl,
};
use schubert_core::model::{
    build_instance, build_instance_unchecked, condition_labels, coordinate_pattern,
};
use schubert_core::solver::{
    groebner, solve_instance, QuotientDim, SolveOptions, SolveResult, SolveStatus,
};
use schubert_core::Result;

const B: u64 = 1 << 16;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Result<Verdict> {
    Ok(Verdict {
        pass,
        detail: detail.into(),
    })
}

fn data(ft: &str, sd: &str) -> Result<SchubertData> {
    SchubertData::parse(ft.parse()?, sd)
}

fn solve_at(
    sd: &SchubertData,
    nk: &str,
    seed: u64,
    round: u64,
    bound: u64,
    degree: usize,
) -> Result<SolveResult> {
    let pts = sample_points(sd.len(), bound, &mut round_rng(seed, round))?;
    let inst = assign_by_necklace(&nk.parse::<Necklace>()?, sd, &pts)?;
    solve_instance(
        &inst,
        Some(degree),
        &SolveOptions {
            seed: round,
            ..Default::default()
        },
    )
}

fn tally<K: Ord>(keys: impl IntoIterator<Item = K>) -> BTreeMap<K, usize> {
    let mut m = BTreeMap::new();
    for k in keys {
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

fn c1_monotone_fl235() -> Result<Verdict> {
    let sd = data("2,3;5", "13245^4 12435^4")?;
    let mut bad = Vec::new();
    for r in 0..100 {
        let res = solve_at(&sd, "22223333", 1, r, B, 12)?;
        let ok = res.status == SolveStatus::Solved
            && res.quotient_dimension == Some(QuotientDim::Finite(12))
            && res
                .eliminant
                .as_ref()
                .is_some_and(|e| e.degree() == Some(12) && e.is_squarefree())
            && res.real_count == Some(12);
        if !ok {
            bad.push((r, res.status, res.real_count));
        }
    }
    let detail = if bad.is_empty() {
        "100 monotone instances, all Solved with 12 real".to_string()
    } else {
        format!("100 monotone instances, failures {bad:?}")
    };
    verdict(bad.is_empty(), detail)
}

fn c2_counterexample() -> Result<Verdict> {
    let sd = data("2,3;4", "1324^3 1243^2")?;
    let mut separated = Vec::new();
    for r in 0..100 {
        // Either interval may come first; both give the necklace 22233.
        let mut pts = sample_points(5, B, &mut round_rng(2, r))?;
        if r % 2 == 1 {
            pts.rotate_left(3);
        }
        let inst = build_instance(&sd, &pts)?;
        let res = solve_instance(&inst, Some(2), &SolveOptions::default())?;
        separated.push(if res.is_solved() {
            res.real_count
        } else {
            None
        });
    }
    let sep_ok = separated.iter().all(|c| *c == Some(2));
    let mut found = None;
    let mut seen = Vec::new();
    for r in 0..500 {
        let res = solve_at(&sd, "22323", 3, r, B, 2)?;
        seen.push(res.real_count);
        if res.is_solved() && res.real_count == Some(0) {
            found = Some(r);
            break;
        }
    }
    verdict(
        sep_ok && found.is_some(),
        format!(
            "(a) separated real counts {:?}; (b) 0 real after {} interleaved tries (counts {:?})",
            tally(separated.iter().map(|c| c.map_or(-1, |c| c as i64))),
            found.map_or("none".into(), |r| (r + 1).to_string()),
            tally(seen.iter().map(|c| c.map_or(-1, |c| c as i64))),
        ),
    )
}

fn c3_non_monotone() -> Result<Verdict> {
    let sd = data("2,3;5", "13245^4 12435^4")?;
    let mut counts = Vec::new();
    for r in 0..200 {
        let res = solve_at(&sd, "23232323", 4, r, B, 12)?;
        counts.push(res.real_count);
        if res.is_solved() && res.real_count.is_some_and(|c| c < 12) {
            return verdict(
                true,
                format!(
                    "round {} gave {:?} real (counts {counts:?})",
                    r + 1,
                    res.real_count
                ),
            );
        }
    }
    verdict(false, format!("200 rounds, counts {:?}", tally(counts)))
}

fn c4_full_reality() -> Result<Verdict> {
    let sd = data("2,4;6", "142536^4")?;
    let mut counts = Vec::new();
    let mut dims = BTreeSet::new();
    for r in 0..50 {
        let res = solve_at(&sd, "AAAA", 5, r, B, 6)?;
        dims.insert(res.quotient_dimension.and_then(QuotientDim::finite));
        counts.push(if res.is_solved() {
            res.real_count
        } else {
            None
        });
    }
    verdict(
        counts.iter().all(|c| *c == Some(6)) && dims == BTreeSet::from([Some(6)]),
        format!(
            "50 instances, real counts {:?}, quotient dimensions {dims:?}",
            tally(counts)
        ),
    )
}

fn c5_excess() -> Result<Verdict> {
    let sd = data("1,3;5", "32514 21435^2")?;
    let mut statuses = Vec::new();
    for r in 0..20 {
        let mut pts = sample_points(3, B, &mut round_rng(6, r))?;
        pts.shuffle(&mut round_rng(6, r + 1000));
        let inst = build_instance_unchecked(&sd, &pts)?;
        statuses.push(solve_instance(&inst, None, &SolveOptions::default())?.status);
    }
    let mut rng = round_rng(6, u64::MAX);
    let mut witnessed = 0;
    for _ in 0..10 {
        let mut q = || loop {
            let v = Rational::new(
                rng.gen_range(-999i64..=999).into(),
                rng.gen_range(1i64..=999).into(),
            );
            if v != rat(0) {
                return v;
            }
        };
        let (s, t) = (q(), q());
        witnessed += check_excess_witness(&s, &t)? as usize;
    }
    let statuses = tally(statuses);
    verdict(
        !statuses.contains_key(&SolveStatus::Inconsistent) && witnessed == 10,
        format!("20 triples: {statuses:?}; witness holds for {witnessed}/10 (s, t)"),
    )
}

fn c6_degrees() -> Result<Verdict> {
    let cases = [
        ("2,3;5", "13245^4 12435^4", 12),
        ("2,3;4", "1324^3 1243^2", 2),
        ("2,3;6", "132456^5 125346^3", 14),
        ("1,3,5;6", "312564^2 124356^5", 10),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (ft, sd, expected) in cases {
        let r = problem_degree(&data(ft, sd)?, 0, true)?;
        let qd = r
            .quotient_dimension
            .and_then(QuotientDim::finite)
            .map(|d| d as u128);
        ok &= r.degree() == Some(expected) && qd == Some(expected);
        ok &= r.chain_count.is_none_or(|c| Some(c) == qd);
        parts.push(format!("{sd}: chain {:?} solver {qd:?}", r.chain_count));
    }
    verdict(ok, parts.join("; "))
}

fn c7_gaps() -> Result<Verdict> {
    let sd = data("1,3,5;6", "312564^2 124356^5")?;
    let mut cfg = ExperimentConfig::new(sd.flag_type(), &sd.counts(), 10);
    cfg.iterations = 100;
    cfg.seed = 7;
    let t = run_experiment(&cfg)?;
    print!("{}", indent(&t.to_text()));
    let seen: BTreeSet<usize> = t
        .rows
        .values()
        .flat_map(|r| r.counts.keys().copied())
        .collect();
    let set_aside: u64 = t.rows.values().map(|r| r.set_aside).sum();
    verdict(
        seen.is_subset(&BTreeSet::from([2, 6, 10])) && t.is_conserved() && t.violations.is_empty(),
        format!("100 rounds, real counts seen {seen:?}, {set_aside} set aside"),
    )
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("      {l}\n")).collect()
}

/// Product of `x - r` over `roots`, times `x^2 + 1` when `complex` is set.
fn with_roots(roots: &[i64], complex: bool) -> UniPoly {
    let mut p = UniPoly::from_ints(&[1]);
    for r in roots {
        p = p.mul(&UniPoly::from_ints(&[-r, 1]));
    }
    if complex {
        p = p.mul(&UniPoly::from_ints(&[1, 0, 1]));
    }
    p
}

fn algebra_suite() -> Result<Vec<String>> {
    let mut fails = Vec::new();
    let mut rng = round_rng(8, 0);
    for _ in 0..50 {
        let k = rng.gen_range(1..6);
        let roots: BTreeSet<i64> = (0..k).map(|_| rng.gen_range(-20..=20)).collect();
        let roots: Vec<i64> = roots.into_iter().collect();
        let complex = rng.gen_bool(0.5);
        let p = with_roots(&roots, complex);
        if p.sturm_count()? != roots.len() || !p.is_squarefree() {
            fails.push(format!("sturm/squarefree on roots {roots:?}"));
        }
        let sq = p.mul(&p);
        if sq.is_squarefree()
            || sq.squarefree_part()?.primitive() != p.primitive()
            || sq.sturm_count()? != roots.len()
        {
            fails.push(format!("square-free part on roots {roots:?}"));
        }
    }
    let x = |i| MultiPoly::var(3, i);
    let c = |v| MultiPoly::constant(3, rat(v));
    for _ in 0..10 {
        let mut m: Vec<Vec<MultiPoly>> = (0..4)
            .map(|_| {
                (0..4)
                    .map(|_| {
                        let v = rng.gen_range(0..3);
                        c(rng.gen_range(-3..=3))
                            .try_add(&x(v).scalar_mul(&rat(rng.gen_range(-2..=2))))
                            .unwrap()
                    })
                    .collect()
            })
            .collect();
        let d = det_bareiss(&m)?;
        if d != det_laplace(&m)? {
            fails.push("Bareiss and Laplace disagree".into());
        }
        m.swap(0, 2);
        if det_bareiss(&m)? != d.scalar_mul(&rat(-1)) {
            fails.push("row swap does not negate".into());
        }
    }
    Ok(fails)
}

fn combinatorics_suite() -> Result<Vec<String>> {
    let mut fails = Vec::new();
    for ft in ["2;4", "2,3;5", "1,3;5", "2,4;6", "1,3,5;6"] {
        let ft: FlagType = ft.parse()?;
        for w in ft.enumerate_wa() {
            let m = coordinate_pattern(&w, &ft)?;
            if m.variable_count() + w.length() != ft.dimension() {
                fails.push(format!("pattern of {w} on {ft}"));
            }
            let n = ft.n();
            for i in 0..n {
                for j in 0..n {
                    let r = w.rank(i, j);
                    if w.rank(i + 1, j) < r || w.rank(i, j + 1) < r || w.rank(i + 1, j) > r + 1 {
                        fails.push(format!("rank function of {w} at ({i}, {j})"));
                    }
                }
            }
        }
    }
    for (ft, sd, expected) in [
        ("2,3;5", "13245^4 12435^4", 8),
        ("2,3;6", "132456^5 125346^3", 5),
    ] {
        let sd = data(ft, sd)?;
        let content = tally(condition_labels(&sd));
        let nks = enumerate_necklaces(&content);
        if nks.len() != expected {
            fails.push(format!("{} has {} bracelets", sd.compact(), nks.len()));
        }
        for nk in &nks {
            let mut labels = nk.labels().to_vec();
            labels.rotate_left(3);
            labels.reverse();
            if Necklace::new(labels) != *nk {
                fails.push(format!("{nk} not invariant under the dihedral group"));
            }
        }
        if nks.iter().filter(|n| n.is_monotone()).count() != 1 {
            fails.push(format!(
                "{} should have one monotone bracelet",
                sd.compact()
            ));
        }
    }
    let content: BTreeMap<Label, usize> = [(Label::Descent(2), 4), (Label::Descent(3), 4)]
        .into_iter()
        .collect();
    if enumerate_necklaces(&content).len() != 8 {
        fails.push("4+4 bead multiset".into());
    }
    let w: Permutation = "13245".parse()?;
    if chain_count(&data("2,3;5", "13245^4 12435^4")?)? != Some(12) || w.length() != 1 {
        fails.push("Pieri count of the 8-condition problem".into());
    }
    Ok(fails)
}

fn solver_suite() -> Result<Vec<String>> {
    let mut fails = Vec::new();
    let sd = data("2,3;4", "1324^3 1243^2")?;
    let mut rng = round_rng(9, 0);
    for r in 0..20 {
        let mut pts = sample_points(5, 40, &mut round_rng(9, r))?;
        pts.shuffle(&mut rng);
        let inst = build_instance(&sd, &pts)?;
        let gb = groebner(inst.generators())?;
        let mut gens = inst.generators().to_vec();
        gens.extend_from_slice(&inst.generators()[..2]);
        gens.shuffle(&mut rng);
        if groebner(&gens)?.generators() != gb.generators() {
            fails.push(format!("reduced basis depends on order at {pts:?}"));
        }
        let runs: Vec<SolveResult> = (0..3)
            .map(|s| {
                solve_instance(
                    &inst,
                    Some(2),
                    &SolveOptions {
                        seed: s,
                        ..Default::default()
                    },
                )
            })
            .collect::<Result<_>>()?;
        if runs
            .iter()
            .any(|x| x.status != runs[0].status || x.real_count != runs[0].real_count)
        {
            fails.push(format!("seed-dependent count at {pts:?}"));
        }
        if let (Some(c), true) = (runs[0].real_count, runs[0].is_solved()) {
            if c % 2 != 0 || c > 2 {
                fails.push(format!("parity at {pts:?}"));
            }
        }
    }
    let fl235 = data("2,3;5", "13245^4 12435^4")?;
    for (nk, r) in [("22323233", 0), ("22332233", 1)] {
        let runs: Vec<SolveResult> = (0..3)
            .map(|s| {
                let pts = sample_points(8, 200, &mut round_rng(9, r))?;
                let inst = assign_by_necklace(&nk.parse::<Necklace>()?, &fl235, &pts)?;
                solve_instance(
                    &inst,
                    Some(12),
                    &SolveOptions {
                        seed: s,
                        ..Default::default()
                    },
                )
            })
            .collect::<Result<_>>()?;
        if runs
            .iter()
            .any(|x| !x.is_solved() || x.real_count != runs[0].real_count)
            || runs[0].real_count.is_some_and(|c| c % 2 != 0)
        {
            fails.push(format!(
                "necklace {nk}: {:?}",
                runs.iter().map(|x| x.real_count).collect::<Vec<_>>()
            ));
        }
    }
    Ok(fails)
}

fn harness_suite() -> Result<Vec<String>> {
    let mut fails = Vec::new();
    let dir = std::env::temp_dir().join(format!("schubert-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let sd = data("2,3;4", "1324^3 1243^2")?;
    let mut cfg = ExperimentConfig::new(sd.flag_type(), &sd.counts(), 2);
    cfg.iterations = 20;
    cfg.seed = 10;
    let mut csvs = Vec::new();
    for name in ["a.csv", "b.csv"] {
        cfg.output_path = Some(dir.join(name));
        run_experiment(&cfg)?;
        csvs.push(std::fs::read(dir.join(name))?);
    }
    if csvs[0] != csvs[1] {
        fails.push("repeated runs differ".into());
    }
    cfg.output_path = Some(dir.join("c.csv"));
    let stop = |n| RunControl {
        resume: true,
        stop_after: Some(n),
        ..Default::default()
    };
    run_experiment_with(&cfg, stop(7))?;
    run_experiment_with(&cfg, stop(13))?;
    let resumed: FrequencyTable = run_experiment_with(&cfg, stop(20))?;
    if std::fs::read(dir.join("c.csv"))? != csvs[0]
        || !resumed.is_conserved()
        || !resumed.parity_holds()
    {
        fails.push("resumed run differs".into());
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(fails)
}

fn c8_properties() -> Result<Verdict> {
    let mut parts = Vec::new();
    let mut all = true;
    type Suite = fn() -> Result<Vec<String>>;
    let suites: [(&str, Suite); 4] = [
        ("algebra", algebra_suite),
        ("combinatorics", combinatorics_suite),
        ("solver", solver_suite),
        ("harness", harness_suite),
    ];
    for (name, suite) in suites {
        let fails = suite()?;
        all &= fails.is_empty();
        parts.push(if fails.is_empty() {
            format!("{name} ok")
        } else {
            format!("{name} FAILED {fails:?}")
        });
    }
    verdict(all, parts.join(", "))
}

fn main() -> ExitCode {
    let filters: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    type Criterion = fn() -> Result<Verdict>;
    let criteria: [(&str, &str, Criterion); 8] = [
        (
            "C1",
            "13245^4 12435^4 on Fl(2,3;5), 100 monotone instances all real",
            c1_monotone_fl235,
        ),
        (
            "C2",
            "Fl(2,3;4) separated points real, interleaved points can fail",
            c2_counterexample,
        ),
        (
            "C3",
            "necklace 23232323 drops below 12 within 200 rounds",
            c3_non_monotone,
        ),
        (
            "C4",
            "142536^4 on Fl(2,4;6) transverse with 6 real",
            c4_full_reality,
        ),
        (
            "C5",
            "32514 21435^2 on Fl(1,3;5) nonempty, witness checks",
            c5_excess,
        ),
        (
            "C6",
            "degrees 12, 2, 14, 10 and chain count = quotient dimension",
            c6_degrees,
        ),
        ("C7", "312564^2 124356^5 real counts in {2, 6, 10}", c7_gaps),
        ("C8", "property suites", c8_properties),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        if !filters.is_empty() && !filters.iter().any(|f| id.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let v = run().unwrap_or_else(|e| Verdict {
            pass: false,
            detail: format!("error: {e}"),
        });
        failed += !v.pass as usize;
        println!(
            "[PRIMARY] {id} {name}: {} ({}) [{:.1}s]",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
