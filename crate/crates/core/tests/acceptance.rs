//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use hecke_bc::group::PairRule;
use hecke_bc::parabolic::nontrivial_intervals;
use hecke_bc::verify::{check_collapse, check_truncation, compare_methods, run_suite, short_sequences};
use hecke_bc::{DefectTriple, Error, Interval, PathFamily, SignedPermutation, StarNetwork};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: u128 = 10_000_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn suite(name: &str) -> Outcome {
    let r = run_suite(name).map_err(|e| e.to_string())?;
    if r.passed() {
        Ok(format!("{}/{}", r.agreed, r.checked))
    } else {
        Err(r.to_string())
    }
}

fn main_exhaustive() -> Outcome {
    let seqs = short_sequences(2, 3);
    if seqs.len() != 39 {
        return Err(format!("expected 39 sequences, built {}", seqs.len()));
    }
    suite("main-b2")
}

/// Draws a sequence of one to four intervals, retrying until it fits the
/// budget and holds at most one of the `big` stars.
fn draw(rng: &mut ChaCha8Rng, n: usize, pool: &[Interval], big: &[Interval]) -> Vec<Interval> {
    loop {
        let len = rng.gen_range(1..=4);
        let seq: Vec<Interval> = (0..len).map(|_| *pool.choose(rng).unwrap()).collect();
        if seq.iter().filter(|iv| big.contains(iv)).count() > 1 {
            continue;
        }
        let net = StarNetwork::ordinary(n, &seq).unwrap();
        if net.family_count_estimate() <= BUDGET {
            return seq;
        }
    }
}

fn main_sampled() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_b3b4);
    let mut checked = 0;
    let mut largest = 0;
    for (n, samples) in [(3, 100), (4, 50)] {
        let all = nontrivial_intervals(n);
        let big: Vec<Interval> =
            if n == 4 { vec![Interval::new(-3, 3, 4).unwrap(), Interval::new(-4, 4, 4).unwrap()] } else { Vec::new() };
        let pool: Vec<Interval> =
            all.into_iter().filter(|iv| n == 3 || iv.cardinality() <= 4 || big.contains(iv)).collect();
        for _ in 0..samples {
            let seq = draw(&mut rng, n, &pool, &big);
            largest = largest.max(StarNetwork::ordinary(n, &seq).unwrap().family_count_estimate());
            if let Some(diff) = compare_methods(n, &seq, Some(BUDGET)).map_err(|e| e.to_string())? {
                return Err(diff);
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} sampled sequences, largest {largest} families"))
}

fn deodhar() -> Outcome {
    let a = suite("deodhar-b2")?;
    let b = suite("deodhar-b3")?;
    Ok(format!("B2 {a}, B3 {b}"))
}

fn mirrored(paths: &[(i32, Vec<i32>)]) -> Vec<(i32, Vec<i32>)> {
    paths.iter().cloned().chain(paths.iter().map(|(i, s)| (-i, s.iter().map(|l| -l).collect()))).collect()
}

fn defect_example() -> Outcome {
    let net = StarNetwork::parse("[-2,2] o [-1,1] o [1,2] o [-2,2]", 2).map_err(|e| e.to_string())?;
    let paths = mirrored(&[(2, vec![2, -2, -2, -1, -1]), (1, vec![1, -1, 1, 2, 2])]);
    let p = PathFamily::from_paths(&net, &paths).map_err(|e| e.to_string())?;
    let want = [(-1, 1, 2), (-1, 2, 3), (1, 2, 4), (-2, 2, 4)];
    let mut want: Vec<DefectTriple> = want.iter().map(|&(i, j, k)| DefectTriple { i, j, k }).collect();
    want.sort();
    let got = p.defects();
    if got == want {
        Ok("4 defects, as stated".into())
    } else {
        Err(format!("got {got:?}"))
    }
}

fn type_example() -> Outcome {
    let net = StarNetwork::parse("[1,3] o [2,3] o [1,2] o [-1,1]", 3).map_err(|e| e.to_string())?;
    let sigma = mirrored(&[(1, vec![1, 3, 3, 3, 3]), (2, vec![2, 2, 2, 1, -1]), (3, vec![3, 1, 1, 2, 2])]);
    let sigma = PathFamily::from_paths(&net, &sigma).map_err(|e| e.to_string())?;
    let u: SignedPermutation = "3 -1 2".parse().unwrap();
    if sigma.family_type() != u {
        return Err(format!("sigma has type {}", sigma.family_type()));
    }
    let tau = vec![
        (3, vec![3; 5]),
        (2, vec![2; 5]),
        (1, vec![1; 5]),
        (-1, vec![-1, -2, -2, -1, -1]),
        (-2, vec![-2, -1, -1, -2, -2]),
        (-3, vec![-3; 5]),
    ];
    match PathFamily::from_paths(&net, &tau) {
        Err(Error::InvalidFamily(msg)) if msg.contains("reflections") => {}
        other => return Err(format!("tau not rejected for reflection: {other:?}")),
    }
    let pairs = sigma.sink_inversions(PairRule::AbsLe);
    if pairs.len() != u.length() {
        return Err(format!("{} pairs for length {}", pairs.len(), u.length()));
    }
    let stated = [(-2, 2), (1, 3), (2, 3)];
    let confirmed: Vec<_> = stated.iter().filter(|p| pairs.contains(p)).collect();
    let extra: Vec<_> = pairs.iter().filter(|p| !stated.contains(p)).collect();
    if confirmed.len() == 2 && extra == [&(1, 2)] && sigma.level(4, 3) >= sigma.level(4, 2) {
        Ok(format!(
            "type 3 -1 2, tau rejected, pairs {pairs:?}; stated pair (2,3) fails sink(3) < sink(2), (1,2) counted instead"
        ))
    } else {
        Err(format!("pairs {pairs:?}"))
    }
}

fn collapse() -> Outcome {
    let fixtures = [
        ("[-2,2] o [-1,1] o [1,2] * [-2,2]", 2, vec![2]),
        ("[1,3] * [-3,3]", 3, vec![3]),
        ("[1,3] * [1,3]", 3, vec![3]),
    ];
    for (text, n, mults) in fixtures {
        let net = StarNetwork::parse(text, n).map_err(|e| e.to_string())?;
        if net.multiplicities() != mults {
            return Err(format!("{text}: multiplicities {:?}", net.multiplicities()));
        }
        if let Some(diff) = check_collapse(&net).map_err(|e| e.to_string())? {
            return Err(diff);
        }
    }
    Ok("factors (1+q) and (1+q)(1+q+q^2) hold type by type".into())
}

fn truncation() -> Outcome {
    let mut checked = 0;
    for seq in short_sequences(2, 3).into_iter().filter(|s| s.len() >= 2) {
        if let Some(diff) = check_truncation(2, &seq).map_err(|e| e.to_string())? {
            return Err(diff);
        }
        checked += 1;
    }
    Ok(format!("{checked} networks"))
}

fn smooth() -> Outcome {
    let a = suite("smooth-b3")?;
    let b = suite("builtins")?;
    Ok(format!("reversals {a}, builtins {b}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("main identity, B2 exhaustive", main_exhaustive),
        ("main identity, B3/B4 sampled", main_sampled),
        ("subexpression oracle", deodhar),
        ("defect example", defect_example),
        ("type and reflection example", type_example),
        ("collapse identity", collapse),
        ("length formulas", || {
            let parts = (1..=4).map(|n| suite(&format!("lengths-b{n}"))).collect::<Result<Vec<_>, _>>()?;
            Ok(parts.join(", "))
        }),
        ("minimal coset representatives", || suite("minreps-b3")),
        ("truncation cardinalities", truncation),
        ("smooth KL polynomials", smooth),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({detail}) [{secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} [{secs:.2}s]\n{why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
