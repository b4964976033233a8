//! Aggregate verification runs: the framework checks over the exhaustive
//! corpus of small semilattices, and the finite-analogue property table.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::partition::{
    noncompactness_escape, prime_residue_family, witness_coarse_orthogonal,
    witness_fine_orthogonal, EpPartition,
};
use crate::report::{Report, Status};
use crate::sample;
use crate::semilattice::{
    all_semilattices, finite_partition_lattice, powerset_lattice, Semilattice,
};
use crate::stone::{framework_report, Side, StoneSpace};

/// Runs [`framework_report`] on every semilattice with at most `max_size`
/// elements and folds the results per property: FAIL if any instance
/// failed, SKIP if every instance skipped, PASS otherwise.
pub fn corpus_report(max_size: usize) -> Result<Report> {
    let corpus: Vec<Semilattice> = all_semilattices(max_size)?.collect();
    Ok(fold_reports(
        corpus.len(),
        corpus.iter().map(framework_report),
    ))
}

fn fold_reports(instances: usize, reports: impl Iterator<Item = Report>) -> Report {
    let mut order: Vec<String> = Vec::new();
    let mut counts: BTreeMap<String, [usize; 3]> = BTreeMap::new();
    let mut first_failure: BTreeMap<String, String> = BTreeMap::new();
    for (i, r) in reports.enumerate() {
        for item in r.items {
            if !counts.contains_key(&item.name) {
                order.push(item.name.clone());
            }
            let c = counts.entry(item.name.clone()).or_default();
            match item.status {
                Status::Pass => c[0] += 1,
                Status::Skip => c[1] += 1,
                Status::Fail => {
                    c[2] += 1;
                    first_failure.entry(item.name.clone()).or_insert_with(|| {
                        format!("instance {i}: {}", item.witness.unwrap_or_default())
                    });
                }
            }
        }
    }
    let mut out = Report::new();
    out.push("instances", Status::Pass, Some(instances.to_string()));
    for name in order {
        let [pass, skip, fail] = counts[&name];
        let status = if fail > 0 {
            Status::Fail
        } else if pass == 0 {
            Status::Skip
        } else {
            Status::Pass
        };
        let mut witness = format!("pass={pass} skip={skip} fail={fail}");
        if let Some(f) = first_failure.get(&name) {
            witness.push_str(&format!(" first {f}"));
        }
        out.push(name, status, Some(witness));
    }
    out
}

/// Number of seeded instances per partition-level row.
pub const TABLE_SAMPLES: usize = 100;

/// The finite-analogue verification table: the properties of the four
/// ultrafilter spaces that reduce to finitely checkable statements, each
/// with the instances it was checked on.
pub fn verification_table(seed: u64) -> Report {
    let mut t = Report::new();

    let mut lattices: Vec<Semilattice> = all_semilattices(5).expect("5 is in range").collect();
    lattices.extend((1..=4).map(|n| powerset_lattice(n).expect("in range")));
    lattices.extend((3..=4).map(|n| finite_partition_lattice(n).expect("in range")));
    let framework = fold_reports(lattices.len(), lattices.iter().map(framework_report));
    for (row, item) in [
        ("t1", "t1_pos"),
        ("t1_negative", "t1_neg"),
        (
            "principal_iff_principal_ultrafilter",
            "principal_space_iff_principal_ultrafilter",
        ),
        ("principal_points_dense", "principal_points_dense"),
        ("negative_within_positive", "neg_topology_within_pos"),
        (
            "negative_basic_open_identity",
            "neg_equals_union_of_orthogonal_pos",
        ),
        ("positive_base_identity", "pos_intersection_is_pos_of_meet"),
        (
            "ultrafilter_criterion",
            "ultrafilter_criterion_matches_maximality",
        ),
        ("complemented_coincidence", "complemented_coincidence"),
    ] {
        let it = framework.get(item).expect("framework item present");
        t.push(row, it.status, it.witness.clone());
    }

    let hausdorff_ok = lattices
        .iter()
        .filter(|l| l.len() > 1)
        .all(|l| StoneSpace::generate(l, Side::Pos).is_ok_and(|s| s.is_hausdorff()));
    t.check(
        "hausdorff_positive_finite",
        hausdorff_ok,
        Some(format!("{} spaces", lattices.len())),
    );

    let absent = (3..=4).all(|n| {
        !finite_partition_lattice(n)
            .expect("in range")
            .complementation()
            .is_present()
    });
    t.check(
        "partition_lattice_not_complemented",
        absent,
        Some("finite_partition_lattice(3), (4)".into()),
    );

    let mut rng = sample::rng(seed);
    let families: Vec<Vec<EpPartition>> = (0..TABLE_SAMPLES)
        .map(|i| {
            (0..=(i % 4))
                .map(|_| sample::random_nontrivial_ep(&mut rng, 8, 12))
                .collect()
        })
        .collect();

    let coarse_ok = families.iter().all(|f| {
        witness_coarse_orthogonal(f)
            .is_ok_and(|y| y.block_count() == 2 && f.iter().all(|x| y.orth_coarse(x)))
    });
    t.check(
        "coarse_orthogonal_witness",
        coarse_ok,
        Some(format!("{TABLE_SAMPLES} families")),
    );

    let fine_ok = families.iter().all(|f| {
        witness_fine_orthogonal(f).is_ok_and(|w| {
            w.certificates.len() == f.len()
                && f.iter().all(|x| w.witness.orth_fine(x))
                && w.certificates.iter().all(|c| !c.block.is_empty())
        })
    });
    t.check(
        "fine_orthogonal_witness",
        fine_ok,
        Some(format!("{TABLE_SAMPLES} families")),
    );

    let escape_ok = families
        .iter()
        .all(|f| noncompactness_escape(f).is_ok_and(|c| c.holds()));
    t.check(
        "positive_coarse_not_quasicompact_core",
        escape_ok,
        Some(format!("{TABLE_SAMPLES} finite subfamilies")),
    );

    let two_block_ok = families.iter().flatten().all(|x| {
        x.two_block_coarsening()
            .is_ok_and(|z| z.block_count() == 2 && z.is_coarser(x))
    });
    t.check("two_block_coarsening", two_block_ok, None);

    let primes = prime_residue_family(6).expect("6 is in range");
    let primes_ok = primes
        .iter()
        .enumerate()
        .all(|(i, a)| primes[i + 1..].iter().all(|b| a.orth_coarse(b)));
    t.check(
        "prime_family_pairwise_orthogonal",
        primes_ok,
        Some("15 pairs".into()),
    );

    let mut leq_ok = true;
    for _ in 0..TABLE_SAMPLES {
        let x = sample::random_sc(&mut rng, 3, 3, 4);
        let y = sample::random_sc(&mut rng, 3, 3, 4);
        let bound = crate::pinf::column_min(x.horizon_with(&y) as u64) + 1;
        let searched = (1..=bound).find(|&n| x.glue_below(n).is_coarser(&y));
        leq_ok &= searched == x.leq_star(&y);
    }
    t.check(
        "almost_coarser_matches_search",
        leq_ok,
        Some(format!("{TABLE_SAMPLES} pairs")),
    );
    t
}
