//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use qprofile::counting::{
    gamma_q, partitions_of, q_binomial, sigma_column_sum, sigma_poly, splitting_count, whittaker_coefficient,
    QPolynomial,
};
use qprofile::ffield::field_of_order;
use qprofile::fqlinalg::Vector;
use qprofile::oracle::{
    enumerate_subspaces, random_partial_map, splitting_brute, verify_duality, verify_extensions, verify_sigma,
    verify_simple_maps, DEFAULT_BUDGET,
};
use qprofile::{FieldCtx, FieldElem, PartialMap, Partition};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(q: u64) -> FieldCtx {
    field_of_order(q).expect("prime power")
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn subspace_counts() -> Outcome {
    let configs = [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4)];
    let mut rows = 0;
    for (q, n) in configs {
        let report = verify_sigma(&field(q), n, None, DEFAULT_BUDGET, 4).map_err(|e| e.to_string())?;
        ensure(report.pass, || format!("q={q} n={n}\n{}", report.to_table()))?;
        rows += report.rows.len();
    }
    let spot = |q: u64, n: usize, expected: &[(&[usize], u32)]| -> Result<(), String> {
        let report = verify_sigma(&field(q), n, None, DEFAULT_BUDGET, 1).map_err(|e| e.to_string())?;
        for (mu, v) in expected {
            let key = p(mu).to_string();
            let row = report.rows.iter().find(|r| r.key == key).ok_or(format!("missing row {key}"))?;
            ensure(row.observed == v.to_string(), || format!("q={q} n={n} {key}: {} != {v}", row.observed))?;
        }
        Ok(())
    };
    spot(2, 3, &[(&[2, 1], 7), (&[1, 1, 1], 7), (&[3], 1)])?;
    spot(2, 4, &[(&[2, 2], 20), (&[2, 1, 1], 15), (&[3, 1], 15), (&[1, 1, 1, 1], 15), (&[4], 1)])?;
    Ok(format!("{} configurations, {rows} rows", configs.len()))
}

fn splitting() -> Outcome {
    for (m, d, q, expected) in [(2, 2, 2u64, 20u32), (2, 2, 3, 90)] {
        let start = Instant::now();
        let formula = splitting_count(m, d, q).map_err(|e| e.to_string())?;
        let brute = splitting_brute(&field(q), m, d, None, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let expected = BigUint::from(expected);
        ensure(formula == expected && brute == expected, || {
            format!("(m,d,q)=({m},{d},{q}): formula {formula}, brute {brute}, expected {expected}")
        })?;
        ensure(start.elapsed().as_secs() < 10, || format!("(m,d,q)=({m},{d},{q}) took {:?}", start.elapsed()))?;
    }
    Ok("(2,2,2) -> 20, (2,2,3) -> 90".into())
}

fn simple_maps() -> Outcome {
    let mut rows = 0;
    for (q, n, k) in [(2, 3, 1), (2, 3, 2), (2, 4, 1), (2, 4, 2), (3, 3, 1)] {
        let report = verify_simple_maps(&field(q), n, k, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(report.pass, || report.to_table())?;
        rows += report.rows.len();
    }
    Ok(format!("{rows} partition rows"))
}

fn extensions() -> Outcome {
    let f = field(2);
    let mut rows = 0;
    for n in [3, 4] {
        for k in 0..=n - 2 {
            let seed = (n * 10 + k) as u64;
            let report = verify_extensions(&f, n, k, 20, seed, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(report.pass, || report.to_table())?;
            ensure(report.rows.len() == 40, || format!("n={n} k={k}: {} rows", report.rows.len()))?;
            rows += report.rows.len();
        }
    }
    Ok(format!("{rows} extension counts"))
}

fn duality() -> Outcome {
    let f = field(2);
    let mut summary = Vec::new();
    for n in 1..=4 {
        let report = verify_duality(&f, n, 100, 2024 + n as u64, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(report.pass, || report.to_table())?;
        let singular: usize = report.params["singular"].parse().unwrap();
        let non_simple: usize = report.params["non_simple"].parse().unwrap();
        ensure(singular > 0, || format!("n={n}: no singular operator"))?;
        ensure(n == 1 || non_simple > 0, || format!("n={n}: no non-simple operator"))?;
        summary.push(format!("n={n}: {singular} singular, {non_simple} non-simple"));
    }
    Ok(summary.join("; "))
}

fn symbolic() -> Outcome {
    // (a) column sums
    for n in 1..=8 {
        for k in 0..n {
            let sum = sigma_column_sum(n, n - k).map_err(|e| e.to_string())?;
            ensure(sum == q_binomial(n, n - k), || format!("column sum n={n} k={k}: {sum}"))?;
        }
        // k = n: only the zero subspace, which has no partition of n
        ensure(sigma_column_sum(n, 0).map_err(|e| e.to_string())?.is_zero(), || format!("n={n} m=0"))?;
    }
    // (b) orbit-stabilizer
    for n in 0..=10 {
        for k in 0..=n {
            let rhs = (&(&gamma_q(k) * &gamma_q(n - k)) * &q_binomial(n, k)).shift(k * (n - k));
            ensure(gamma_q(n) == rhs, || format!("orbit-stabilizer n={n} k={k}"))?;
        }
    }
    // (c) every division exact, (d) sigma versus the Whittaker magnitude
    let mut count = 0;
    for n in 1..=12 {
        for mu in partitions_of(n) {
            let sigma = sigma_poly(&mu).map_err(|e| format!("sigma {mu}: {e}"))?;
            let w = whittaker_coefficient(&mu).map_err(|e| format!("whittaker {mu}: {e}"))?;
            let shift: usize = mu.parts().iter().skip(1).map(|&m| m * (m - 1) / 2).sum();
            ensure(w.magnitude().shift(shift) == sigma, || format!("{mu}: {sigma} vs {}", w.magnitude()))?;
            count += 1;
        }
    }
    Ok(format!("(a) n<=8, (b) n<=10, (c)+(d) over {count} partitions"))
}

fn all_maps(field: &FieldCtx, n: usize, k: usize) -> Vec<PartialMap> {
    let q = field.order();
    let width = n * k;
    let mut out = Vec::new();
    for w in enumerate_subspaces(field, n, k, DEFAULT_BUDGET).unwrap() {
        for code in 0..(q as usize).pow(width as u32) {
            let mut c = code;
            let mut flat = vec![FieldElem::ZERO; width];
            for slot in flat.iter_mut().rev() {
                *slot = FieldElem::from_code((c % q as usize) as u32);
                c /= q as usize;
            }
            let images: Vec<Vector> = flat.chunks(n.max(1)).map(|c| c.to_vec()).collect();
            out.push(PartialMap::new(w.clone(), images).unwrap());
        }
    }
    out
}

fn simplicity() -> Outcome {
    let check = |pm: &PartialMap| -> Result<bool, String> {
        let a = pm.is_simple().map_err(|e| e.to_string())?;
        let b = pm.is_unimodular().map_err(|e| e.to_string())?;
        ensure(a == b, || format!("disagreement on domain {} images {:?}", pm.domain(), pm.images()))?;
        Ok(a)
    };
    let f2 = field(2);
    let mut exhaustive = 0;
    let mut simple = 0;
    for k in [1, 2] {
        for pm in all_maps(&f2, 3, k) {
            simple += check(&pm)? as usize;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut random_simple = 0;
    for (q, n) in [(3, 3), (2, 4)] {
        let f = field(q);
        for i in 0..1000 {
            let k = i % n;
            random_simple += check(&random_partial_map(&f, n, k, &mut rng))? as usize;
        }
    }
    Ok(format!("{exhaustive} exhaustive maps ({simple} simple), 2000 random ({random_simple} simple)"))
}

fn pn_table() -> Outcome {
    let mut lines = Vec::new();
    for n in 1..=12 {
        let top = whittaker_coefficient(&p(&[n])).map_err(|e| e.to_string())?;
        ensure(top.sign() == 1 && *top.magnitude() == QPolynomial::one(), || {
            format!("(n) coefficient at n={n}: {top}")
        })?;
    }
    for n in 1..=6 {
        for mu in partitions_of(n) {
            let w = whittaker_coefficient(&mu).map_err(|e| e.to_string())?;
            let shift: usize = mu.parts().iter().skip(1).map(|&m| m * (m - 1) / 2).sum();
            ensure(w.magnitude().shift(shift) == sigma_poly(&mu).map_err(|e| e.to_string())?, || mu.to_string())?;
            ensure(w.to_string().parse::<qprofile::SignedQPolynomial>().ok().as_ref() == Some(&w), || {
                format!("{mu}: {w} does not re-parse")
            })?;
            lines.push(format!("p_{n} {mu}: {w}"));
        }
    }
    for line in &lines {
        println!("    {line}");
    }
    Ok(format!("{} table entries", lines.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("subspace counts at desk scale", subspace_counts),
        ("splitting subspaces", splitting),
        ("simple-map counts", simple_maps),
        ("extension counts", extensions),
        ("duality", duality),
        ("symbolic identities", symbolic),
        ("simplicity equivalence", simplicity),
        ("p_n coefficient table", pn_table),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
