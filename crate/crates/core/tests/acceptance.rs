//! Acceptance criteria, one line each. Every check is exact; the only
//! tolerance is the wall-clock limit beside each criterion.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use ultrapart::filter::{
    all_filters, is_principal, is_ultrafilter_criterion, is_ultrafilter_maximality,
};
use ultrapart::partition::{
    noncompactness_escape, prime_residue_family, witness_coarse_orthogonal, witness_fine_orthogonal,
};
use ultrapart::sample::{random_ep, random_nontrivial_ep, random_sc, rng};
use ultrapart::semilattice::{all_semilattices, finite_partition_lattice, powerset_lattice};
use ultrapart::stone::PointSet;
use ultrapart::{BottomOrPartition, EpPartition, ScPartition, Side, StoneSpace};

const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn families(seed: u64, count: usize) -> Vec<Vec<EpPartition>> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let k = r.gen_range(1..=4);
            (0..k)
                .map(|_| random_nontrivial_ep(&mut r, 8, 12))
                .collect()
        })
        .collect()
}

fn framework_suite() -> Outcome {
    let corpus: Vec<_> = all_semilattices(5).map_err(|e| e.to_string())?.collect();
    let mut filters = 0;
    for (i, l) in corpus.iter().enumerate() {
        let maximal: BTreeSet<BTreeSet<usize>> = common::maximal_filters(l).into_iter().collect();
        for f in all_filters(l).map_err(|e| e.to_string())? {
            filters += 1;
            let c = is_ultrafilter_criterion(l, &f);
            let set: BTreeSet<usize> = f.members().collect();
            ensure(
                c == is_ultrafilter_maximality(l, &f) && c == maximal.contains(&set),
                || format!("instance {i}: tests disagree on {}", f.render(l)),
            )?;
        }
        if l.len() < 2 {
            continue;
        }
        let pos = StoneSpace::generate(l, Side::Pos).map_err(|e| e.to_string())?;
        let neg = StoneSpace::generate(l, Side::Neg).map_err(|e| e.to_string())?;
        let points: BTreeSet<BTreeSet<usize>> =
            pos.points().iter().map(|p| p.members().collect()).collect();
        ensure(points == maximal, || {
            format!("instance {i}: points are not the maximal filters")
        })?;

        // oracle (x)+ from point membership
        let n = pos.point_count();
        let plus = |x: usize| {
            PointSet(
                pos.points()
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| p.contains(x))
                    .fold(0, |a, (k, _)| a | 1 << k),
            )
        };
        // T1 through the subbase: a subbase set holding p and missing q
        for (s, subbase) in [
            (&pos, l.elements().map(plus).collect::<Vec<_>>()),
            (&neg, l.elements().map(|x| plus(x).complement(n)).collect()),
        ] {
            let t1 = (0..n).all(|p| {
                (0..n).all(|q| p == q || subbase.iter().any(|u| u.contains(p) && !u.contains(q)))
            });
            ensure(t1 && s.is_t1(), || {
                format!("instance {i}: {} not T1", s.side())
            })?;
        }
        for x in l.elements() {
            let union = l
                .elements()
                .filter(|&y| common::glb(l, x, y) == Some(l.zero()))
                .fold(PointSet(0), |a, y| a.union(plus(y)));
            ensure(neg.neg_set(x) == union, || {
                format!("instance {i}: negative identity at {}", l.name(x))
            })?;
            for y in l.elements() {
                let m = common::glb(l, x, y).ok_or("no glb")?;
                ensure(
                    plus(x).intersection(plus(y)) == plus(m) && pos.pos_set(m) == plus(m),
                    || format!("instance {i}: base identity at {},{}", l.name(x), l.name(y)),
                )?;
            }
        }
    }
    Ok(format!("{} semilattices, {filters} filters", corpus.len()))
}

fn complemented_coincidence() -> Outcome {
    for n in 1..=4 {
        let l = powerset_lattice(n).map_err(|e| e.to_string())?;
        ensure(l.complementation().is_present(), || {
            format!("P({n}) not complemented")
        })?;
        let pos = StoneSpace::generate(&l, Side::Pos).map_err(|e| e.to_string())?;
        let neg = StoneSpace::generate(&l, Side::Neg).map_err(|e| e.to_string())?;
        let a: Vec<PointSet> = pos.opens().iter().collect();
        let b: Vec<PointSet> = neg.opens().iter().collect();
        ensure(a == b, || format!("P({n}) open families differ"))?;
        ensure(pos.point_count() == n, || {
            format!("P({n}) has {} points", pos.point_count())
        })?;
        for p in pos.points() {
            let g = is_principal(&l, p).ok_or(format!("P({n}) non-principal point"))?;
            ensure(l.is_atom(g), || {
                format!("P({n}) generator {} not an atom", l.name(g))
            })?;
        }
        ensure(
            (0..n).all(|p| {
                pos.is_open(PointSet::singleton(p)) && neg.is_open(PointSet::singleton(p))
            }),
            || format!("P({n}) not discrete"),
        )?;
    }
    Ok("n = 1..4".into())
}

fn partition_lattice_not_complemented() -> Outcome {
    for n in 3..=4 {
        let l = finite_partition_lattice(n).map_err(|e| e.to_string())?;
        ensure(!l.complementation().is_present(), || {
            format!("Part({n}) reported complemented")
        })?;
        // an involution satisfying (C2) must send x to the maximum of its
        // orthogonal set, so some x without such a maximum rules it out
        let no_max = l.elements().any(|x| {
            let orth: Vec<usize> = l
                .elements()
                .filter(|&y| common::glb(&l, x, y) == Some(l.zero()))
                .collect();
            !orth.iter().any(|&t| orth.iter().all(|&y| l.leq(y, t)))
        });
        let exhaustive = n > 3 || common::complement_maps(&l).is_empty();
        ensure(no_max && exhaustive, || {
            format!("Part({n}) oracle finds a complement")
        })?;
    }
    Ok("n = 3, 4".into())
}

fn partition_oracle_equivalence() -> Outcome {
    let mut r = rng(SEED);
    let mut bottoms = 0;
    for i in 0..200 {
        let (p, q) = (random_ep(&mut r, 8, 12), random_ep(&mut r, 8, 12));
        let h = common::horizon(&[&p, &q]);
        let (lp, lq) = (common::labels(&p, 2 * h), common::labels(&q, 2 * h));
        let fail = |what: &str| format!("pair {i} ({p}, {q}): {what}");

        let m = p.coarse_meet_at(&q, h);
        ensure(m == p.coarse_meet_at(&q, 2 * h), || {
            fail("meet depends on horizon")
        })?;
        ensure(
            common::same_partition(&common::labels(&m, 2 * h), &common::meet_labels(&lp, &lq)),
            || fail("meet differs from union-find"),
        )?;

        let j = p.fine_join_at(&q, h);
        ensure(j == p.fine_join_at(&q, 2 * h), || {
            fail("join depends on horizon")
        })?;
        match (&j, common::join_labels(&lp, &lq, h)) {
            (BottomOrPartition::Bottom, None) => bottoms += 1,
            (BottomOrPartition::Partition(j), Some(o)) => ensure(
                common::same_partition(&common::labels(j, 2 * h), &o),
                || fail("join differs from pair coloring"),
            )?,
            _ => return Err(fail("join bottom disagrees")),
        }

        for (a, b, la, lb) in [(&p, &q, &lp, &lq), (&q, &p, &lq, &lp)] {
            let c = a.is_coarser_at(b, h);
            ensure(
                c == a.is_coarser_at(b, 2 * h) && c == common::coarser(la, lb),
                || fail("coarseness differs"),
            )?;
        }
    }
    Ok(format!("200 pairs, {bottoms} bottom joins"))
}

fn coarse_witnesses() -> Outcome {
    for (i, xs) in families(SEED + 1, 100).iter().enumerate() {
        let y = witness_coarse_orthogonal(xs).map_err(|e| e.to_string())?;
        ensure(common::ep_block_count(&y) == 2, || {
            format!("family {i}: {y} not 2-block")
        })?;
        for x in xs {
            ensure(common::orth_coarse(&y, x), || {
                format!("family {i}: {y} meets {x} nontrivially")
            })?;
        }
    }
    Ok("100 families".into())
}

fn fine_witnesses() -> Outcome {
    let mut certs = 0;
    for (i, xs) in families(SEED + 2, 100).iter().enumerate() {
        let w = witness_fine_orthogonal(xs).map_err(|e| e.to_string())?;
        ensure(w.certificates.len() == xs.len(), || {
            format!("family {i}: missing certificates")
        })?;
        for (c, x) in w.certificates.iter().zip(xs) {
            let h = common::horizon(&[&w.witness, x]);
            let finite = common::finite_pair_classes(
                &common::labels(&w.witness, 2 * h),
                &common::labels(x, 2 * h),
                h,
            );
            ensure(!c.block.is_empty() && finite.contains(&c.block), || {
                format!(
                    "family {i}: {:?} is not a finite block of the join with {x}",
                    c.block
                )
            })?;
            certs += 1;
        }
    }
    Ok(format!("100 families, {certs} certificates"))
}

fn prime_family() -> Outcome {
    let ps = prime_residue_family(6).map_err(|e| e.to_string())?;
    let periods: Vec<usize> = ps.iter().map(|p| p.period().len()).collect();
    ensure(periods == [2, 3, 5, 7, 11, 13], || {
        format!("periods {periods:?}")
    })?;
    let mut pairs = 0;
    for (i, a) in ps.iter().enumerate() {
        for b in &ps[i + 1..] {
            ensure(common::orth_coarse(a, b), || {
                format!("{a} and {b} not orthogonal")
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn noncompactness_core() -> Outcome {
    for (i, xs) in families(SEED + 3, 50).iter().enumerate() {
        let c = noncompactness_escape(xs).map_err(|e| e.to_string())?;
        ensure(c.holds() && common::ep_block_count(&c.witness) >= 2, || {
            format!("family {i}: no escape")
        })?;
        for x in xs {
            ensure(common::orth_coarse(&c.witness, x), || {
                format!("family {i}: escape meets {x}")
            })?;
        }
    }
    Ok("50 subfamilies".into())
}

fn almost_coarser() -> Outcome {
    let lit = |s: &str| s.parse::<ScPartition>().map_err(|e| e.to_string());
    let p0 = lit("sc;runs=;periodic=2")?;
    let p1 = lit("sc;runs=1;periodic=2")?;
    let x = lit("sc;runs=1,3;periodic=2")?;
    let mut suite = vec![
        (x.clone(), p0.clone(), Some(3)),
        (p0.clone(), p1.clone(), None),
    ];
    for s in [&p0, &p1, &x, &ScPartition::columns()] {
        suite.push((s.clone(), s.clone(), Some(1)));
    }
    for (a, b, want) in &suite {
        let got = a.leq_star(b);
        ensure(got == *want && got == common::leq_star_search(a, b), || {
            format!("leq_star({a}, {b}) = {got:?}")
        })?;
    }
    let mut r = rng(SEED + 4);
    for i in 0..100 {
        let (a, b) = (random_sc(&mut r, 3, 3, 4), random_sc(&mut r, 3, 3, 4));
        ensure(a.leq_star(&b) == common::leq_star_search(&a, &b), || {
            format!("instance {i}: leq_star")
        })?;
        let (n, m) = (r.gen_range(1..100u64), r.gen_range(1..100u64));
        let (lo, hi) = (n.min(m), n.max(m));
        let (g, g2) = (a.glue_below(lo), a.glue_below(hi));
        let cuts = |p: &ScPartition| common::cut_set(p, 200);
        ensure(
            g2.is_coarser(&g) && cuts(&g2).is_subset(&cuts(&g)) && g.is_coarser(&a),
            || format!("instance {i}: gluing not monotone at {lo} <= {hi}"),
        )?;
    }
    Ok(format!("{} fixed cases, 100 seeded", suite.len()))
}

fn atom_structure() -> Outcome {
    let mut r = rng(SEED + 5);
    for i in 0..100 {
        let x = random_nontrivial_ep(&mut r, 8, 12);
        let z = x.two_block_coarsening().map_err(|e| e.to_string())?;
        ensure(
            common::ep_block_count(&z) == 2 && common::is_coarser(&z, &x),
            || format!("instance {i}: {z} is not a 2-block coarsening of {x}"),
        )?;
        // coarsenings of z: meets with arbitrary partitions
        for _ in 0..5 {
            let w = z.coarse_meet(&random_ep(&mut r, 8, 12));
            let k = common::ep_block_count(&w);
            ensure(k == 1 || (k == 2 && w == z), || {
                format!("instance {i}: {w} strictly between")
            })?;
        }
    }
    Ok("100 instances".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("framework_suite", 60, framework_suite),
        ("complemented_coincidence", 5, complemented_coincidence),
        (
            "partition_lattice_not_complemented",
            5,
            partition_lattice_not_complemented,
        ),
        (
            "partition_oracle_equivalence",
            10,
            partition_oracle_equivalence,
        ),
        ("coarse_orthogonal_witnesses", 10, coarse_witnesses),
        ("fine_orthogonal_witnesses", 10, fine_witnesses),
        ("prime_family", 1, prime_family),
        ("noncompactness_core", 5, noncompactness_core),
        ("almost_coarser", 5, almost_coarser),
        ("atom_structure", 5, atom_structure),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(limit);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over time limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {name:<36} {status} {:>8.3}s / {limit}s  {detail}",
            i + 1,
            took.as_secs_f64()
        );
    }
    println!("acceptance: {} of 10 passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
