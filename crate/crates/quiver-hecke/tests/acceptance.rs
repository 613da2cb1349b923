//! Acceptance suite: one pass/fail line per criterion. Runs without the libtest harness.

use std::collections::HashMap;
use std::process::ExitCode;
use std::thread;
use std::time::{Duration, Instant};

use quiver_hecke::bott_samelson::{spanning_check, GeneratorKind, SpanningOptions, TruncatedBasis};
use quiver_hecke::cellular::{mat_is_symmetric, CellularBasis};
use quiver_hecke::combinatorics::{
    j_tableau, multipartitions_ph, permutation_between, standard_tableaux, t_lambda, tableau_degree, y_move,
    BoxOrder, Multipartition, Node, Tableau, YMove,
};
use quiver_hecke::geometry::{Geometry, Letter};
use quiver_hecke::lightleaves::{branching_coeffs, coordinate_degree, LightLeavesBasis, VectorPolicy};
use quiver_hecke::linalg::{Field, Q};
use quiver_hecke::paths::{flat_path, step_degree, sun_path, Path};
use quiver_hecke::perm;
use quiver_hecke::quotient::QuotientOptions;
use quiver_hecke::relations::{check_cyclotomic, check_relations};
use quiver_hecke::{AlgebraParams, Result};

type Outcome = Result<(bool, String)>;

fn basis(p: &AlgebraParams) -> Result<CellularBasis<Q>> {
    CellularBasis::<Q>::build(p, (), &QuotientOptions::default())
}

fn mp(s: &str) -> Multipartition {
    Multipartition::parse(s).unwrap()
}

/// Partitions of `n` with parts at most `h`, i.e. conjugates of those with at most `h` columns.
fn partitions_bounded(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions_bounded(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Hook length formula.
fn count_standard(lam: &[usize]) -> usize {
    let n: usize = lam.iter().sum();
    let conj: Vec<usize> = (0..lam.first().copied().unwrap_or(0))
        .map(|j| lam.iter().filter(|&&r| r > j).count())
        .collect();
    let mut hooks: u128 = 1;
    for (i, &r) in lam.iter().enumerate() {
        for j in 0..r {
            hooks *= (r - j - 1 + conj[j] - i - 1 + 1) as u128;
        }
    }
    let fact: u128 = (1..=n as u128).product();
    (fact / hooks) as usize
}

fn c1_relations() -> Outcome {
    let mut checked = 0;
    let mut failures = 0;
    for e in [3, 4, 5] {
        for n in 1..=4 {
            let r = check_relations(e, n)?;
            checked += r.checked;
            failures += r.failures.len();
            for (sigma, h) in [(vec![0], vec![1]), (vec![0], vec![2]), (vec![0, 1], vec![1, 1])] {
                let c = check_cyclotomic(&AlgebraParams::new(e, sigma, h, n)?)?;
                checked += c.checked;
                failures += c.failures.len();
            }
        }
    }
    Ok((failures == 0, format!("{checked} identities, {failures} failures")))
}

fn c2_dimensions() -> Outcome {
    let mut ok = true;
    let mut dims = Vec::new();
    for n in 2..=6 {
        let p = AlgebraParams::level_one(4, 2, n)?;
        let want: usize = partitions_bounded(n, 2)
            .iter()
            .map(|l| {
                // Partitions with at most two columns are conjugates of those with parts ≤ 2.
                count_standard(l).pow(2)
            })
            .sum();
        let b = basis(&p)?;
        ok &= b.len() == want && b.is_full_rank() && b.quotient.dim() == want;
        dims.push(format!("n={n}: {}/{want}", b.rank()));
    }
    Ok((ok, dims.join(", ")))
}

fn c3_grading() -> Outcome {
    let mut bad = 0;
    let mut total = 0;
    for (e, h) in [(4, 2), (5, 3)] {
        for n in 1..=6 {
            let p = AlgebraParams::level_one(e, h, n)?;
            let g = Geometry::new(&p)?;
            let b = basis(&p)?;
            for l in &b.labels {
                total += 1;
                if coordinate_degree(&b.quotient, b.element(l))? != Some(Some(b.label_degree(l))) {
                    bad += 1;
                }
            }
            for pol in [VectorPolicy::ReducedTarget, VectorPolicy::Random(1)] {
                let ll = LightLeavesBasis::build(&b, &g, pol)?;
                total += ll.elements.len();
                if !ll.report.homogeneous {
                    bad += 1;
                }
            }
        }
    }
    Ok((bad == 0, format!("{total} elements, {bad} inhomogeneous")))
}

fn c4_path_degrees() -> Outcome {
    let mut checked = 0;
    let mut bad = 0;
    for (e, sigma, h) in [
        (4, vec![0], vec![2]),
        (5, vec![0], vec![3]),
        (7, vec![0, 3], vec![2, 2]),
        (9, vec![0, 3, 6], vec![2, 2, 1]),
    ] {
        let p = AlgebraParams::new(e, sigma, h, 0)?;
        let g = Geometry::new(&p)?;
        for n in 0..=8 {
            for lam in multipartitions_ph(&p, n) {
                for t in standard_tableaux(&lam) {
                    checked += 1;
                    let path = Path::from_tableau(&g, &t)?;
                    if path.degree(&g) != tableau_degree(&t, BoxOrder::Cyl, &p)? {
                        bad += 1;
                    }
                }
            }
        }
    }
    Ok((bad == 0, format!("{checked} tableaux, {bad} mismatches")))
}

fn c5_worked_examples() -> Outcome {
    let mut fails: Vec<&str> = Vec::new();
    let mut expect = |ok: bool, what: &'static str| {
        if !ok {
            fails.push(what);
        }
    };

    let t = t_lambda(&mp("2,1,1|2,2,1|1,1,1"));
    let s = Tableau::from_rows(&[
        vec![vec![1, 6], vec![2], vec![10]],
        vec![vec![3, 5], vec![7, 8], vec![11]],
        vec![vec![4], vec![9], vec![12]],
    ])?;
    let w = permutation_between(&s, &t)?;
    let cycles = perm::cycles(&w);
    expect(cycles == vec![vec![2, 6], vec![4, 5]], "w^s_{t_λ} = (4,5)(2,6)");

    let p = AlgebraParams::level_one(5, 3, 13)?;
    let lam = mp("3,2,2,1,1,1,1,1,1").to_config();
    let base = mp("3,2,1,1,1,1,1,1,1").to_config();
    let y = |a: Node, k: usize| y_move(&lam, &a, k, &p);
    expect(y(Node::new(3, 2, 0), 1)?.config() == Some(&base.with(Node::new(2, 6, 0))), "Y^1 of [3,2]");
    expect(y(Node::new(3, 2, 0), 2)?.config() == Some(&base.with(Node::new(1, 5, 0))), "Y^2 of [3,2]");
    let a = Node::new(4, 1, 0);
    expect(y(a, 1)?.config() == Some(&lam.with(Node::new(3, 5, 0)).without(&a)), "Y^1 of [4,1]");
    expect(y(a, 2)?.config() == Some(&lam.with(Node::new(2, 4, 0)).without(&a)), "Y^2 of [4,1]");
    expect(
        y_move(&mp("1").to_config(), &Node::new(1, 1, 0), 1, &p)? == YMove::Undefined,
        "Y of the first box is undefined",
    );

    let j = [0, 1, 4, 0, 3, 4, 2, 1, 0, 4, 3, 2, 2];
    let jt = j_tableau(&j, &p);
    expect(
        jt.as_ref().is_some_and(|t| t.shape() == lam && t.is_standard() && t.residue_sequence(&p) == j),
        "J-tableau of shape (3,2²,1⁶)",
    );

    let g1 = Geometry::new(&AlgebraParams::level_one(5, 3, 0)?)?;
    let b1: Vec<i64> = (0..3).map(|t| g1.b_distance(Letter::Pi(t))).collect::<Result<_>>()?;
    expect(b1 == vec![1, 1, 3] && g1.b_distance(Letter::Empty)? == 1, "b_α at e=5, h=3");
    let g2 = Geometry::new(&AlgebraParams::new(7, vec![0, 3], vec![2, 2], 0)?)?;
    let b2: Vec<i64> = (0..4).map(|t| g2.b_distance(Letter::Pi(t))).collect::<Result<_>>()?;
    expect(b2 == vec![1, 2, 1, 3] && g2.b_distance(Letter::Empty)? == 1, "b_α at e=7, σ=(0,3), h=(2,2)");

    let sun = sun_path(&g1, 2)?;
    let flat = flat_path(&g1, 2)?;
    let bc = branching_coeffs(&g1, &flat, &sun)?;
    let ds_ok = bc.iter().all(|b| match b.p {
        7 => b.word == perm::w_word(7, 3),
        8 => b.word == perm::w_word(8, 6),
        _ => b.word.is_empty(),
    }) && bc.len() == 9;
    expect(ds_ok, "d₇ = w⁷₃, d₈ = w⁸₆");

    let ok = fails.is_empty();
    let detail = if ok {
        "w^s_t, 5 Y-moves, J-tableau, 2 b_α tables, d_p".to_string()
    } else {
        format!("failed: {}", fails.join("; "))
    };
    Ok((ok, detail))
}

fn c6_light_leaves() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 1..=6 {
        let p = AlgebraParams::level_one(4, 2, n)?;
        let g = Geometry::new(&p)?;
        let b = basis(&p)?;
        let mut distinct = Vec::new();
        for pol in [VectorPolicy::ReducedTarget, VectorPolicy::ReducedEverywhere, VectorPolicy::Random(2024)] {
            let ll = LightLeavesBasis::build(&b, &g, pol)?;
            let r = &ll.report;
            ok &= r.full_rank && r.triangular && r.diagonal_units && r.target_scalars_nonzero && r.homogeneous;
            distinct.push(ll.elements);
        }
        if n == 6 {
            let differ = distinct[0] != distinct[1] || distinct[1] != distinct[2];
            notes.push(format!("n=6 policies give different sets: {differ}"));
        }
    }
    Ok((ok, format!("3 policies, n ≤ 6, unitriangular with k ≠ 0; {}", notes.join(""))))
}

fn c7_truncated() -> Outcome {
    let mut ok = true;
    let mut control_failed = 0;
    let mut lines = Vec::new();
    for (e, h, n) in [(5, 3, 3), (5, 3, 6), (4, 2, 2), (4, 2, 4), (4, 2, 6)] {
        let p = AlgebraParams::level_one(e, h, n)?;
        let g = Geometry::new(&p)?;
        let b = basis(&p)?;
        let full = spanning_check(&b, &g, &SpanningOptions::default())?;
        let tb = TruncatedBasis::build(&b, &g, 100_000)?;
        let cut = spanning_check(
            &b,
            &g,
            &SpanningOptions {
                drop: vec![GeneratorKind::Spot],
                ..Default::default()
            },
        )?;
        ok &= full.saturated && full.span_dim == full.target_dim && tb.report.basis && tb.report.diagonal_units;
        // Without spot the span can only miss what the idempotents do not already give.
        if full.target_dim > full.idempotents {
            ok &= !cut.saturated;
        }
        if !cut.saturated {
            control_failed += 1;
        }
        lines.push(format!("e={e} h={h} n={n}: {}/{} (no spot {})", full.span_dim, full.target_dim, cut.span_dim));
    }
    ok &= control_failed > 0;
    Ok((ok, lines.join(", ")))
}

fn c8_restriction() -> Outcome {
    let mut ok = true;
    let mut layers_checked = 0;
    for (e, sigma, h) in [(4, vec![0], vec![2]), (5, vec![0], vec![3]), (5, vec![0, 2], vec![2, 1])] {
        let base = AlgebraParams::new(e, sigma, h, 0)?;
        let g = Geometry::new(&base)?;
        let mut prev: Option<CellularBasis<Q>> = None;
        for n in 1..=6 {
            let b = basis(&base.with_n(n))?;
            if let Some(small) = &prev {
                for cell in 0..b.cells.len() {
                    ok &= restriction_cell(&b, small, &g, cell, &mut layers_checked)?;
                }
            }
            prev = Some(b);
        }
    }
    Ok((ok, format!("{layers_checked} layers match S(λ−A)⟨deg A⟩")))
}

/// Layer sizes, degree shifts and the quotient action of each layer against the smaller cell module.
fn restriction_cell(b: &CellularBasis<Q>, small: &CellularBasis<Q>, g: &Geometry, cell: usize, count: &mut usize) -> Result<bool> {
    let n = b.params().n;
    let ts = &b.tableaux[cell];
    let layers = b.restriction_filtration(cell)?;
    let big = b.specht_module(cell)?;
    let mut layer_of = vec![usize::MAX; ts.len()];
    for (r, l) in layers.iter().enumerate() {
        for &i in &l.members {
            layer_of[i] = r;
        }
    }
    if layer_of.contains(&usize::MAX) {
        return Ok(false);
    }
    for (r, l) in layers.iter().enumerate() {
        *count += 1;
        let c2 = match small.cell_index(&l.shape) {
            Some(c) => c,
            None => return Ok(false),
        };
        let sub = small.specht_module(c2)?;
        if sub.dim() != l.members.len() || !l.uniform_shift {
            return Ok(false);
        }
        // deg A from the last step of the path of any member.
        let path = Path::from_tableau(g, &ts[l.members[0]])?;
        let pts = path.points(g);
        if step_degree(g, &pts[n - 1], &pts[n]) != l.shift {
            return Ok(false);
        }
        let index: HashMap<&Tableau, usize> = sub.basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let restricted: Vec<usize> = l.members.iter().map(|&i| index[&ts[i].restrict(n - 1)]).collect();
        let mats = big.y[..n - 1].iter().zip(&sub.y).chain(big.psi[..n.saturating_sub(2)].iter().zip(&sub.psi));
        for (m, ms) in mats {
            for (a, &col) in l.members.iter().enumerate() {
                for row in 0..ts.len() {
                    let v = &m[row][col];
                    if v.is_zero() {
                        continue;
                    }
                    // The filtration is by layers y ≥ r.
                    if layer_of[row] < r {
                        return Ok(false);
                    }
                }
                for (bi, &row) in l.members.iter().enumerate() {
                    if m[row][col] != ms[restricted[bi]][restricted[a]] {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn c9_gram() -> Outcome {
    let mut ok = true;
    let mut forms = 0;
    let mut generic_full = true;
    for (e, sigma, h, generic) in [
        (4, vec![0], vec![2], false),
        (5, vec![0], vec![3], false),
        (5, vec![0, 2], vec![2, 1], false),
        (13, vec![0], vec![3], true),
        (13, vec![0, 6], vec![2, 2], true),
    ] {
        for n in 1..=6 {
            let b = basis(&AlgebraParams::new(e, sigma.clone(), h.clone(), n)?)?;
            for cell in 0..b.cells.len() {
                let gm = b.gram_matrix(cell)?;
                forms += 1;
                ok &= mat_is_symmetric(&gm);
                let rank = quiver_hecke::cli_io::export::matrix_rank(&gm);
                // Every cell has a nonzero form; at generic parameters every form is nondegenerate.
                ok &= rank > 0;
                if generic && rank != gm.len() {
                    generic_full = false;
                }
            }
        }
    }
    Ok((ok && generic_full, format!("{forms} forms symmetric and nonzero; generic forms nondegenerate: {generic_full}")))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("relations R1–R5 and cyclotomic", c1_relations),
        ("tableaux basis dimension and rank", c2_dimensions),
        ("homogeneity of both bases", c3_grading),
        ("path degree equals tableau degree", c4_path_degrees),
        ("worked examples", c5_worked_examples),
        ("light leaves bases", c6_light_leaves),
        ("truncated basis and spanning", c7_truncated),
        ("restriction filtration", c8_restriction),
        ("Gram forms", c9_gram),
    ];
    let start = Instant::now();
    let results: Vec<(Outcome, Duration)> = thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    (f(), t.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut all = true;
    for (i, ((name, _), (res, dt))) in criteria.iter().zip(results).enumerate() {
        let (pass, detail) = match res {
            Ok(x) => x,
            Err(e) => (false, format!("error: {e}")),
        };
        all &= pass;
        println!(
            "criterion {}: {} {name} [{detail}] ({:.1?})",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            dt
        );
    }
    println!("acceptance: {} in {:.1?}", if all { "PASS" } else { "FAIL" }, start.elapsed());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
