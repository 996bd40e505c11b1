//! Acceptance gate: one PASS/FAIL line per criterion, each under its runtime budget.
//!
//! Runs without the libtest harness so the report is always printed.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use ytab_core::format::{approx, RationalMatrix};
use ytab_core::involutions::{
    avg_fixed_points, cell12_row, count_involutions, enumerate_involutions, second_order_residual,
    seeded_rng, InvolutionCountTable, InvolutionSampler,
};
use ytab_core::numeric::{ratio, rational_u};
use ytab_core::oracle::{
    cell12_enumerated, parseval, sandwich, tableaux_of_size, convergence_deviations, zset,
};
use ytab_core::probabilities::{limit_prob_shapes, prob_two_columns, two_column_shapes};
use ytab_core::quasirandom::{average_fixed_points, Involutions};
use ytab_core::Limits;

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ytab(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ytab"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "ytab {} exited with {}: {}",
            args.join(" "),
            out.status,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(String::from_utf8(out.stdout).expect("utf8"))
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{GOLDEN}/{name}")).expect("golden file")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn matrix_matches(args: &[&str], file: &str, spot: &[(usize, usize, (u64, u64))]) -> Outcome {
    let out = ytab(args)?;
    let expected = golden(file);
    ensure(out == expected, || {
        format!("output differs from {file}:\n{out}")
    })?;
    let m = RationalMatrix::from_csv(&out).map_err(|e| e.to_string())?;
    for &(r, c, (p, q)) in spot {
        ensure(*m.get(r, c) == rational_u(p, q), || {
            format!("entry ({r},{c}) is {}", m.get(r, c))
        })?;
    }
    let cells: usize = m.values.iter().map(Vec::len).sum();
    Ok(format!("{cells} entries match"))
}

fn occupancy() -> Outcome {
    // (1,2) at k=5 and (2,3) at k=6
    matrix_matches(
        &["table", "occupancy", "--k-max", "6"],
        "occupancy_k6.csv",
        &[(3, 0, (1, 30)), (4, 6, (5, 144)), (0, 1, (0, 1))],
    )
}

fn joint() -> Outcome {
    matrix_matches(
        &["table", "joint", "--r-max", "6", "--s-max", "9"],
        "joint_r6_s9.csv",
        &[(2, 4, (53, 2520)), (3, 6, (913, 362880)), (4, 0, (0, 1))],
    )
}

fn f12_table() -> Outcome {
    let out = ytab(&["exact", "f12", "--table", "--n-max", "9"])?;
    let expected = golden("f12_n9.csv");
    ensure(out == expected, || format!("formula table differs:\n{out}"))?;
    let limits = Limits::default();
    for (n, line) in (2..=9).zip(expected.lines().skip(1)) {
        let from_file: Vec<&str> = line.split(',').skip(1).filter(|s| !s.is_empty()).collect();
        let brute = cell12_enumerated(n, &limits).map_err(|e| e.to_string())?;
        let brute: Vec<String> = brute[1..].iter().map(u64::to_string).collect();
        ensure(from_file == brute, || {
            format!("enumeration disagrees at n={n}: {brute:?}")
        })?;
        let formula: Vec<String> = cell12_row(n).iter().map(BigUint::to_string).collect();
        ensure(from_file == formula, || {
            format!("formula disagrees at n={n}")
        })?;
    }
    ensure(
        line_entry(&expected, 8, 3) == "246" && line_entry(&expected, 9, 5) == "98",
        || "spot values f(8,3), f(9,5)".into(),
    )?;
    Ok("rows n=2..9 match by formula and by enumeration".into())
}

fn line_entry(table: &str, n: usize, k: usize) -> String {
    table
        .lines()
        .nth(n - 1)
        .and_then(|l| l.split(',').nth(k))
        .unwrap_or("")
        .to_string()
}

fn failures(checks: &[ytab_core::oracle::Check]) -> Outcome {
    let bad: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.counterexample.as_deref().unwrap_or("")))
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} checks", checks.len()))
}

fn parseval_mass() -> Outcome {
    failures(&parseval(10, &Limits::default()).map_err(|e| e.to_string())?)
}

fn zset_sizes() -> Outcome {
    let limits = Limits::default();
    let six = tableaux_of_size(6, &limits)
        .map_err(|e| e.to_string())?
        .len();
    ensure(six == 76, || format!("{six} tableaux of size 6"))?;
    failures(&zset(6, &limits).map_err(|e| e.to_string())?)
}

fn three_cell_convergence() -> Outcome {
    let ns = [8, 10, 12, 14];
    let devs = convergence_deviations(3, &ns, &Limits::default()).map_err(|e| e.to_string())?;
    ensure(devs.len() == 4, || {
        format!("{} three-cell tableaux", devs.len())
    })?;
    let mut last = Vec::new();
    for (t, d) in &devs {
        ensure(d.windows(2).all(|w| w[1] < w[0]), || {
            format!(
                "{t}: not strictly decreasing: {:?}",
                d.iter().map(approx).collect::<Vec<_>>()
            )
        })?;
        let at14 = approx(d.last().expect("four sizes"));
        ensure(at14 < 0.01, || format!("{t}: deviation {at14} at n=14"))?;
        last.push(format!("{t}={at14:.5}"));
    }
    Ok(format!("n=14: {}", last.join(" ")))
}

fn second_order() -> Outcome {
    let big = 16384;
    let table = InvolutionCountTable::window(big - 12, big);
    let small = InvolutionCountTable::window(1024 - 12, 1024);
    let c =
        |t: &InvolutionCountTable, n, k| second_order_residual(t, n, k).map_err(|e| e.to_string());
    let c3 = c(&table, big, 3)?;
    let c4 = c(&table, big, 4)?;
    let c5 = c(&table, big, 5)?;
    let c4_small = c(&small, 1024, 4)?;
    ensure((c3 + 1.0 / 3.0).abs() <= 0.02, || format!("c3 = {c3}"))?;
    ensure((c5 - 1.0 / 6.0).abs() <= 0.01, || format!("c5 = {c5}"))?;
    ensure(c4.abs() < c4_small.abs(), || {
        format!("c4: {c4} at 16384 vs {c4_small} at 1024")
    })?;
    Ok(format!(
        "c3={c3:.5} c5={c5:.5} c4={c4:.5} (c4 at 1024: {c4_small:.5})"
    ))
}

fn sandwich_bounds() -> Outcome {
    failures(&sandwich(8, &[2, 3], &Limits::default()).map_err(|e| e.to_string())?)
}

fn fixed_points() -> Outcome {
    let limits = Limits::default();
    for n in 1..=10 {
        let enumerated =
            average_fixed_points(&Involutions, n, &limits).map_err(|e| e.to_string())?;
        let formula = ratio(&(count_involutions(n - 1) * n), &count_involutions(n));
        ensure(
            enumerated == formula && avg_fixed_points(n) == formula,
            || format!("n={n}: {enumerated} vs {formula}"),
        )?;
    }
    let mut ratios = Vec::new();
    for n in [50usize, 100, 400] {
        let r = approx(&avg_fixed_points(n)) / (n as f64).sqrt();
        ensure((0.9..=1.2).contains(&r), || format!("n={n}: ratio {r}"))?;
        ratios.push(format!("n={n}: {r:.4}"));
    }
    Ok(ratios.join(", "))
}

fn two_columns() -> Outcome {
    for k in 1..=12 {
        let sum = limit_prob_shapes(&two_column_shapes(k)).map_err(|e| e.to_string())?;
        ensure(sum == prob_two_columns(k), || {
            format!("k={k}: {sum} vs {}", prob_two_columns(k))
        })?;
    }
    Ok("k=1..12".into())
}

fn sampler() -> Outcome {
    let samples = 100_000u32;
    let sampler = InvolutionSampler::new(4);
    let mut rng = seeded_rng(2024);
    let members: Vec<Vec<usize>> = enumerate_involutions(4, &Limits::default())
        .map_err(|e| e.to_string())?
        .map(|p| p.word().to_vec())
        .collect();
    ensure(members.len() == 10, || {
        format!("{} involutions of 4", members.len())
    })?;
    let mut counts = vec![0u32; members.len()];
    for _ in 0..samples {
        let w = sampler.sample(&mut rng);
        let idx = members
            .iter()
            .position(|m| m == w.word())
            .ok_or("sample is not an involution")?;
        counts[idx] += 1;
    }
    let p = 0.1;
    let sd = (p * (1.0 - p) / samples as f64).sqrt();
    let worst = counts
        .iter()
        .map(|&c| ((c as f64 / samples as f64 - p) / sd).abs())
        .fold(0.0, f64::max);
    ensure(worst < 5.0, || {
        format!("worst deviation {worst:.2} sd, counts {counts:?}")
    })?;
    ensure(!counts.contains(&0), || "missing involution".into())?;
    Ok(format!("worst deviation {worst:.2} sd"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("occupancy table", 5, occupancy),
        ("joint table", 60, joint),
        ("f(n,k) table", 10, f12_table),
        ("Parseval and RS mass", 5, parseval_mass),
        ("Z-set sizes", 30, zset_sizes),
        ("three-cell convergence", 120, three_cell_convergence),
        ("second-order asymptotics", 120, second_order),
        ("sandwich bounds", 60, sandwich_bounds),
        ("fixed-point statistics", 5, fixed_points),
        ("two-column identity", 5, two_columns),
        ("sampler frequencies", 5, sampler),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status} {name} ({:.2} s): {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
