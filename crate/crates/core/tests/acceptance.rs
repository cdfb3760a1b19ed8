//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;

use matsat::oscillation::{is_extendable, validate, SequenceKind};
use matsat::perm::{Reason, Verdict};
use matsat::verify::{certify, check_expandable, Axis, Claim};
use matsat::witness::{explicit_witness, full_witness, pad_witness, split_witness, traversal_witness};
use matsat::{classify, contains_naive, ex_bruteforce, find_embedding, sat_bruteforce};
use matsat::{Entry, Matrix01, Pattern, PermutationMatrix, Transform};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mat(rows: usize, cols: usize, list: &[(usize, usize)]) -> Matrix01 {
    Matrix01::new(rows, cols, list.iter().map(|&p| p.into())).unwrap()
}

fn pat(s: &[usize]) -> Pattern {
    Pattern::from_permutation(s).unwrap()
}

fn figure_three() -> Outcome {
    let w = split_witness(&pat(&[3, 1, 4, 2])).map_err(|e| e.to_string())?;
    let want = mat(5, 6, &[(1, 3), (2, 1), (2, 5), (4, 2), (4, 6), (5, 4)]);
    ensure(w.matrix == want, || format!("got\n{}", w.matrix))?;
    ensure(w.expandable_rows == [3], || format!("expandable rows {:?}", w.expandable_rows))?;
    ensure(certify(&w.matrix, &w.pattern, Claim::VerticalWitness).holds, || "not certified".into())?;
    Ok("5x6, expandable row 3".into())
}

fn figure_four() -> Outcome {
    let p = pat(&[3, 1, 4, 2]);
    let w = full_witness(&p).map_err(|e| e.to_string())?;
    let want = mat(
        11,
        11,
        &[(1, 10), (2, 8), (3, 11), (4, 7), (5, 10), (6, 8), (7, 3), (8, 1), (8, 5), (10, 2), (10, 6), (11, 4)],
    );
    ensure(w.matrix == want, || format!("got\n{}", w.matrix))?;
    ensure(w.expandable_rows == [9] && w.expandable_cols == [9], || "expandable lines differ".into())?;
    ensure(certify(&w.matrix, &p, Claim::Witness).holds, || "witness not certified".into())?;
    let x = explicit_witness(&p, Some(&w.matrix)).map_err(|e| e.to_string())?;
    ensure(certify(&x.matrix, &p, Claim::ExplicitWitness).holds, || "explicit witness not certified".into())?;
    Ok(format!("11x11 weight 12, explicit fill weight {}", x.matrix.weight()))
}

/// Decomposable by the block definition: some proper prefix of rows uses
/// exactly the first or exactly the last columns.
fn decomposable_by_blocks(sigma: &[usize]) -> bool {
    let k = sigma.len();
    (1..k).any(|j| {
        let prefix: Vec<usize> = sigma[..j].iter().copied().sorted().collect();
        prefix == (1..=j).collect::<Vec<_>>() || prefix == (k - j + 1..=k).collect::<Vec<_>>()
    })
}

/// Classification, full witness and explicit witness for every
/// permutation of size `k`. Returns the number of indecomposable ones.
fn sweep(k: usize) -> Result<usize, String> {
    let perms: Vec<PermutationMatrix> = PermutationMatrix::all(k).collect();
    let results: Vec<Result<bool, String>> = perms
        .par_iter()
        .map(|perm| {
            let p = perm.to_pattern();
            let c = classify(&p);
            let decomposable = decomposable_by_blocks(perm.sigma());
            let label = format!("{:?}", perm.sigma());
            if decomposable {
                ensure(c.verdict == Verdict::Linear, || format!("{label} should be linear"))?;
                return Ok(false);
            }
            ensure(c.verdict == Verdict::Bounded && c.reason == Reason::IndecomposablePermutation, || {
                format!("{label} should be bounded")
            })?;
            let w = full_witness(&p).map_err(|e| format!("{label}: {e}"))?;
            ensure(w.matrix.rows() <= 3 * k * k && w.matrix.cols() <= 3 * k * k, || format!("{label}: too large"))?;
            ensure(certify(&w.matrix, &p, Claim::Witness).holds, || format!("{label}: witness fails"))?;
            for &r in &w.expandable_rows {
                ensure(check_expandable(&w.matrix, &p, Axis::Row, r) == Ok(true), || format!("{label}: row {r}"))?;
            }
            for &c in &w.expandable_cols {
                ensure(check_expandable(&w.matrix, &p, Axis::Col, c) == Ok(true), || format!("{label}: col {c}"))?;
            }
            let x = explicit_witness(&p, Some(&w.matrix)).map_err(|e| format!("{label}: {e}"))?;
            ensure(x.matrix.weight() <= 9 * k.pow(4), || format!("{label}: explicit weight too large"))?;
            ensure(certify(&x.matrix, &p, Claim::ExplicitWitness).holds, || format!("{label}: explicit fails"))?;
            Ok(true)
        })
        .collect();
    let mut count = 0;
    for r in results {
        count += usize::from(r?);
    }
    Ok(count)
}

fn sweep_up_to_five() -> Outcome {
    let mut total = 0;
    let mut counts = Vec::new();
    for k in 1..=5 {
        counts.push(sweep(k)?);
        total += (1..=k).product::<usize>();
    }
    ensure(total == 153, || format!("{total} permutations"))?;
    Ok(format!("153 permutations, indecomposable per size {counts:?}"))
}

fn sweep_six() -> Outcome {
    let n = sweep(6)?;
    Ok(format!("720 permutations, {n} indecomposable"))
}

fn figure_six() -> Outcome {
    let p = PermutationMatrix::new(vec![3, 1, 5, 7, 2, 4, 8, 6]).unwrap();
    let x: Vec<Entry> = [(2, 1), (1, 3), (5, 2), (3, 5), (6, 4), (4, 7), (8, 6), (7, 8)].map(Entry::from).to_vec();
    ensure(validate(&p, &x, SequenceKind::TallTraversal) == Ok(true), || "not a tall traversal".into())?;
    ensure(validate(&p, &x, SequenceKind::Oscillation) == Ok(false), || "accepted as an oscillation".into())?;
    ensure(is_extendable(&p, &x) == Ok(None), || "reported extendable".into())?;
    let w = traversal_witness(&p, &x).map_err(|e| e.to_string())?;
    let dims = (w.matrix.rows(), w.matrix.cols());
    ensure(dims == (81, 48), || format!("dimensions {dims:?}"))?;
    ensure(w.matrix.weight() == 42, || format!("weight {}", w.matrix.weight()))?;
    ensure(w.expandable_rows == [40], || format!("expandable rows {:?}", w.expandable_rows))?;
    ensure(certify(&w.matrix, &w.pattern, Claim::VerticalWitness).holds, || "not certified".into())?;
    Ok("81x48, weight 42, expandable row 40".into())
}

fn all_matrices(rows: usize, cols: usize) -> impl Iterator<Item = Matrix01> {
    let n = rows * cols;
    (0u32..1 << n).map(move |bits| {
        let cells = (0..n).filter(move |b| bits >> b & 1 == 1).map(move |b| Entry::new(b / cols + 1, b % cols + 1));
        Matrix01::new(rows, cols, cells).unwrap()
    })
}

fn containment_equivalence() -> Outcome {
    let patterns: Vec<Pattern> = (1..=3)
        .cartesian_product(1..=3)
        .flat_map(|(r, c)| all_matrices(r, c))
        .filter_map(|m| Pattern::new(m).ok())
        .collect();
    let hosts: Vec<Matrix01> = (1..=4).cartesian_product(1..=4).flat_map(|(r, c)| all_matrices(r, c)).collect();
    let disagreements: usize = hosts
        .par_iter()
        .map(|m| {
            patterns
                .iter()
                .filter(|p| {
                    let fast = find_embedding(m, p);
                    let valid = fast.as_ref().map_or(true, |e| e.is_valid(m, p));
                    !valid || fast.is_some() != contains_naive(m, p)
                })
                .count()
        })
        .sum();
    ensure(disagreements == 0, || format!("{disagreements} disagreements"))?;
    Ok(format!("{} hosts x {} patterns, no disagreements", hosts.len(), patterns.len()))
}

fn oracle_anchors() -> Outcome {
    let r = sat_bruteforce(&pat(&[1, 2]), 2, 2).map_err(|e| e.to_string())?;
    ensure(r.weight == 3, || format!("sat(12, 2, 2) = {}", r.weight))?;
    for n in 1..=5 {
        let w = sat_bruteforce(&pat(&[1]), n, n).map_err(|e| e.to_string())?.weight;
        ensure(w == 0, || format!("sat(1, {n}, {n}) = {w}"))?;
    }
    let two_by_two = Pattern::new(mat(2, 2, &[(1, 1), (1, 2), (2, 1)])).unwrap();
    let patterns = [pat(&[1, 2]), pat(&[2, 1]), pat(&[1, 3, 2]), pat(&[2, 3, 1]), pat(&[3, 1, 4, 2]), two_by_two];
    let sizes = [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4), (2, 5), (4, 5), (5, 5)];
    let mut checked = 0;
    for p in &patterns {
        for &(rows, cols) in &sizes {
            let sat = sat_bruteforce(p, rows, cols).map_err(|e| e.to_string())?;
            let ex = ex_bruteforce(p, rows, cols).map_err(|e| e.to_string())?;
            let sat_rev = sat_bruteforce(&p.transform(Transform::Rev), rows, cols).map_err(|e| e.to_string())?;
            let tag = format!("{p:?} {rows}x{cols}");
            ensure(sat.weight == sat_rev.weight, || format!("{tag}: sat differs under reversal"))?;
            ensure(sat.weight <= ex.weight, || format!("{tag}: sat above ex"))?;
            ensure(certify(&sat.matrix, p, Claim::Saturating).holds, || format!("{tag}: sat matrix fails"))?;
            ensure(certify(&ex.matrix, p, Claim::Avoids).holds, || format!("{tag}: ex matrix fails"))?;
            ensure(ex.matrix.weight() == ex.weight, || format!("{tag}: ex weight mismatch"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} instances"))
}

fn padding() -> Outcome {
    for s in [&[3, 1, 4, 2][..], &[2, 5, 3, 1, 4]] {
        let p = pat(s);
        let x = explicit_witness(&p, None).map_err(|e| e.to_string())?;
        let start = x.matrix.rows().max(x.matrix.cols());
        for n in start..=15 {
            let padded = pad_witness(&x, n, n).map_err(|e| e.to_string())?;
            ensure(certify(&padded.matrix, &p, Claim::Saturating).holds, || format!("{s:?} at {n}: not saturating"))?;
            ensure(padded.matrix.weight() == x.matrix.weight(), || format!("{s:?} at {n}: weight changed"))?;
        }
    }
    Ok("padded up to 15x15".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("split witness of 3142 matches the 5x6 figure", figure_three),
        ("full witness of 3142 matches the 11x11 figure", figure_four),
        ("classification and witnesses for all permutations up to size 5", sweep_up_to_five),
        ("classification and witnesses for all permutations of size 6", sweep_six),
        ("tall traversal of size 8 and its witness", figure_six),
        ("containment search agrees with naive enumeration", containment_equivalence),
        ("brute-force saturation anchors", oracle_anchors),
        ("padded explicit witnesses stay saturating", padding),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = Duration::as_secs_f64(&start.elapsed());
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
