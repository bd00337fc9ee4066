// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Runtime limits are part of each check.

use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use defgroups::deficiency::{certify_with, CertifyOptions};
use defgroups::linalg::smith_normal_form_with_transforms;
use defgroups::presentations::product_of;
use defgroups::{
    building_block, certify, cokernel, construct, direct_product, enumerate, figure_one_table, golod_shafarevich_check,
    h1_from_presentation, h1_from_table, h2_from_table, h2_kunneth, h2_of_block_product, multiplication_table, order,
    power_product, solve, BlockKind, CertifyMode, FinAbGroup, GroupTable, GsVerdict, Int, IntMatrix, Presentation,
    Strategy, DEFAULT_MAX_COSETS,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::strategy::{Strategy as _, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn block(kind: BlockKind, p: u64) -> Presentation {
    building_block(kind, p).unwrap()
}

fn table(p: &Presentation) -> GroupTable {
    multiplication_table(&enumerate(p, DEFAULT_MAX_COSETS, Strategy::Hlt).unwrap()).unwrap()
}

fn figure_one() -> Outcome {
    let names: Vec<String> = figure_one_table(2, 7).into_iter().map(|r| r.name).collect();
    let expected = ["C", "C²", "B", "C³", "B×C", "A×C²", "C⁴", "B×C²"];
    ensure!(names == expected, "got {names:?}");
    Ok(())
}

fn solver_sweep() -> Outcome {
    let binom2 = |m: u64| m * (m - 1) / 2;
    for n in 0..=10_000u64 {
        let c = solve(n);
        let m = (2 * c.r + 2 * c.s + c.t) as u64;
        ensure!(binom2(m) + c.s as u64 - c.r as u64 == n, "n={n}: {c:?}");
        ensure!(c.r * c.s == 0, "n={n}: r*s != 0");
        // no smaller m reaches n: the largest value at m - 1 is binom(m-1,2) + floor((m-1)/2)
        ensure!(m == 1 || binom2(m - 1) + (m - 1) / 2 < n, "n={n}: m={m} not minimal");
    }
    Ok(())
}

fn orders() -> Outcome {
    let cases = [
        (BlockKind::C, 2, 2),
        (BlockKind::A, 2, 8),
        (BlockKind::B, 2, 16),
        (BlockKind::C, 3, 3),
        (BlockKind::A, 3, 27),
        (BlockKind::B, 3, 27),
    ];
    for (kind, p, expected) in cases {
        let got = order(&block(kind, p), DEFAULT_MAX_COSETS, Strategy::Hlt).map_err(|e| e.to_string())?;
        ensure!(got == expected, "{kind}_{p}: order {got}, expected {expected}");
    }
    Ok(())
}

fn multipliers() -> Outcome {
    let cases = [
        (BlockKind::C, 2, FinAbGroup::trivial()),
        (BlockKind::C, 3, FinAbGroup::trivial()),
        (BlockKind::A, 2, FinAbGroup::trivial()),
        (BlockKind::B, 2, FinAbGroup::elementary(2, 2)),
        (BlockKind::B, 3, FinAbGroup::elementary(3, 2)),
    ];
    for (kind, p, expected) in cases {
        let got = h2_from_table(&table(&block(kind, p))).map_err(|e| e.to_string())?;
        ensure!(got == expected, "{kind}_{p}: H2 = {got}, expected {expected}");
    }
    Ok(())
}

fn kunneth() -> Outcome {
    let c2 = block(BlockKind::C, 2);
    let z2 = FinAbGroup::cyclic(2);
    let from_table = h2_from_table(&table(&direct_product(&c2, &c2))).map_err(|e| e.to_string())?;
    let formula = h2_kunneth(&FinAbGroup::trivial(), &FinAbGroup::trivial(), &z2, &z2).unwrap();
    ensure!(from_table == z2 && formula == z2, "C2 x C2: table {from_table}, formula {formula}");

    let a2c2 = direct_product(&block(BlockKind::A, 2), &c2);
    let gt = table(&a2c2);
    ensure!(gt.order() == 16, "A2 x C2 has order {}", gt.order());
    let from_table = h2_from_table(&gt).map_err(|e| e.to_string())?;
    let pipeline = h2_of_block_product(2, 1, 0, 1).map_err(|e| e.to_string())?;
    ensure!(from_table == pipeline, "A2 x C2: table {from_table}, pipeline {pipeline}");
    Ok(())
}

fn h1_agreement() -> Outcome {
    let mut groups: Vec<Presentation> = Vec::new();
    for p in [2, 3] {
        for kind in BlockKind::ALL {
            groups.push(block(kind, p));
        }
    }
    let c2 = block(BlockKind::C, 2);
    groups.push(power_product(&c2, 2).unwrap());
    groups.push(power_product(&c2, 3).unwrap());
    for g in &groups {
        let a = h1_from_presentation(g);
        let b = h1_from_table(&table(g)).map_err(|e| e.to_string())?;
        ensure!(a == b, "{g}: presentation {a}, table {b}");
    }
    Ok(())
}

fn certified_constructions() -> Vec<(u64, u64, Result<defgroups::DeficiencyCertificate, String>)> {
    let mut out = Vec::new();
    for p in [2, 3, 5] {
        for n in 0..=100 {
            let cert = construct(p, n)
                .map_err(|e| e.to_string())
                .and_then(|g| certify(&g, CertifyMode::Kunneth).map_err(|e| e.to_string()));
            out.push((p, n, cert));
        }
    }
    out
}

fn end_to_end() -> Outcome {
    for (p, n, cert) in certified_constructions() {
        let cert = cert?;
        ensure!(cert.certified_value == Some(-(n as i64)), "p={p} n={n}: {cert}");
    }
    for p in [2, 3, 5] {
        let five = construct(p, 5).unwrap();
        ensure!(five.pedigree().unwrap().group_name() == "A×C²", "n=5 at p={p}");
        let seven = construct(p, 7).unwrap();
        ensure!(seven.pedigree().unwrap().group_name() == "B×C²", "n=7 at p={p}");
    }
    // the small cases also certify through the table pipeline
    for p in [2, 3] {
        for n in 0..=2 {
            let g = construct(p, n).unwrap();
            let opts = CertifyOptions { h2_ceiling: 32, ..Default::default() };
            let cert = certify_with(&g, CertifyMode::Table, &opts).map_err(|e| e.to_string())?;
            ensure!(cert.certified_value == Some(-(n as i64)), "table p={p} n={n}: {cert}");
        }
    }
    Ok(())
}

fn count_law() -> Outcome {
    let block_strategy = (0usize..3, 0usize..3).prop_map(|(k, pi)| block(BlockKind::ALL[k], [2, 3, 5][pi]));
    let multiset = proptest::collection::vec(block_strategy, 1..=8)
        .prop_filter("total rank at most 8", |fs| fs.iter().map(Presentation::num_generators).sum::<usize>() <= 8);
    let mut runner = TestRunner::new_with_rng(
        Config { cases: 500, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    for _ in 0..500 {
        let factors = multiset.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        let prod = product_of(&factors);
        let rels: usize = factors.iter().map(Presentation::num_relators).sum();
        let gens: Vec<usize> = factors.iter().map(Presentation::num_generators).collect();
        let mut cross = 0;
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                cross += gens[i] * gens[j];
            }
        }
        ensure!(prod.num_relators() == rels + cross, "{prod}");
        ensure!(prod.num_generators() == gens.iter().sum::<usize>(), "{prod}");
    }
    Ok(())
}

fn golod_shafarevich() -> Outcome {
    for (p, n, cert) in certified_constructions() {
        let cert = cert?;
        let d = cert.h1.as_ref().unwrap().min_generators() as u64;
        let def = cert.certified_value.unwrap();
        ensure!(golod_shafarevich_check(d, def) == GsVerdict::Consistent, "p={p} n={n}: d={d} def={def}");
    }
    ensure!(golod_shafarevich_check(4, 0) == GsVerdict::Violation, "(4, 0) not flagged");
    Ok(())
}

/// Fraction-free elimination; every division is exact.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}

fn snf_engine() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut nonsingular = 0;
    for case in 0..1000 {
        let rows = rng.gen_range(1..=12);
        let cols = if rng.gen_bool(0.3) { rows } else { rng.gen_range(1..=12) };
        let density = rng.gen_range(0.05..=1.0);
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| if rng.gen_bool(density) { rng.gen_range(-50..=50) } else { 0 }).collect())
            .collect();
        let mat = IntMatrix::from_i64_rows(&m);
        let snf = smith_normal_form_with_transforms(&mat);
        for w in snf.diagonal.windows(2) {
            ensure!(w[1].is_multiple_of(&w[0]), "case {case}: chain broken {:?}", snf.diagonal);
        }
        ensure!(snf.diagonal.iter().all(|d| !d.is_negative()), "case {case}: negative entry");
        let t = snf.transforms.as_ref().unwrap();
        ensure!(
            t.left.mul(&mat).mul(&t.right) == snf.diagonal_matrix(rows, cols),
            "case {case}: U*M*V != D"
        );
        if rows == cols {
            let det = bareiss_det(m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect());
            if !det.is_zero() {
                nonsingular += 1;
                let size = cokernel(&mat).order();
                let expected = Int::from(det.abs());
                ensure!(size == Some(expected), "case {case}: |coker| {size:?} vs |det| {det}");
            }
        }
    }
    ensure!(nonsingular > 100, "only {nonsingular} nonsingular squares sampled");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("block-count table for p = 2, n = 0..7", figure_one, Duration::from_secs(1)),
        ("solver sweep n = 0..10000", solver_sweep, Duration::from_secs(5)),
        ("block orders by coset enumeration", orders, Duration::from_secs(10)),
        ("block Schur multipliers from the bar complex", multipliers, Duration::from_secs(600)),
        ("Kunneth against the bar complex", kunneth, Duration::from_secs(300)),
        ("H1 from presentation against H1 from table", h1_agreement, Duration::from_secs(60)),
        ("certify(construct(p, n)) for p in {2,3,5}, n = 0..100", end_to_end, Duration::from_secs(5)),
        ("direct product relator count law, 500 cases", count_law, Duration::from_secs(1)),
        ("Golod-Shafarevich screen", golod_shafarevich, Duration::from_secs(5)),
        ("Smith normal form on 1000 random matrices", snf_engine, Duration::from_secs(10)),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed <= limit {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
