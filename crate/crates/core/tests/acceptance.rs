//! Acceptance checks, one PASS/FAIL line each. Runs without the libtest harness so
//! the lines always reach the terminal.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use algebraic_heights::catalog::{
    build_catalog, load_errata, load_golden, phi_table, verify_golden, CatalogEntry,
};
use algebraic_heights::enumerate::{
    binomial_quadratic, binomial_quadratic_survives, candidates_for_with, height_of,
    lemma_excludes, raw_candidates, GeneratorOptions,
};
use algebraic_heights::intpoly::{Polynomial, Rational, Sign};
use algebraic_heights::irreducibility::{is_irreducible, oracle_factor_search, Irreducibility};
use algebraic_heights::realroots::{
    cauchy_bound, compare, count_roots_in, descartes_bound, isolate_roots,
    quadratic_roots_closed_form, refine_to, sturm_chain, Interval,
};

const EXPECTED_TOTALS: [usize; 7] = [1, 2, 4, 12, 28, 72, 172];
/// Rows of the count table: `(n, [Φ(n,1), Φ(n,2), ...])` for the degrees it lists.
const EXPECTED_MATRIX: [(u32, &[usize]); 7] = [
    (1, &[1]),
    (2, &[2]),
    (3, &[4, 0]),
    (4, &[4, 8, 0]),
    (5, &[8, 8, 12, 0]),
    (6, &[4, 32, 20, 16, 0]),
    (7, &[12, 28, 100, 16, 16, 0]),
];
const GOLDEN_ENTRIES: usize = 291;
const PHI_TIME_LIMIT: Duration = Duration::from_secs(60);
const EXTENSION_TIME_LIMIT: Duration = Duration::from_secs(600);
/// Closed form vs isolated root: `|difference| < 10^-12` after refining to `10^-13`.
const QUADRATIC_TOL_EXP: u32 = 12;
const QUADRATIC_REFINE_EXP: u32 = 13;
const RANDOM_POLYS: usize = 10_000;
const RANDOM_MAX_DEGREE: usize = 6;
const RANDOM_MAX_COEFF: i64 = 5;
const RANDOM_SEED: u64 = 0x5eed_0c0d;
const LEMMA_MAX_HEIGHT: u32 = 9;
const EXTENSION_HEIGHT: u32 = 9;
const JOBS_TO_COMPARE: [u32; 3] = [1, 2, 4];

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_algheights"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn phi_totals() -> Outcome {
    let start = Instant::now();
    let out = bin()
        .args(["phi", "--max-height", "7"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.status.success(), || {
        format!("exit status {}", out.status)
    })?;
    let text = String::from_utf8_lossy(&out.stdout);
    let line = text
        .lines()
        .find_map(|l| l.strip_prefix("Phi: "))
        .ok_or("no totals line")?;
    let totals: Vec<usize> = line
        .split(", ")
        .map(|t| t.parse().map_err(|_| format!("bad total {t:?}")))
        .collect::<Result<_, _>>()?;
    ensure(totals == EXPECTED_TOTALS, || format!("totals {totals:?}"))?;
    ensure(elapsed < PHI_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("totals {totals:?} in {elapsed:.2?}"))
}

fn phi_matrix(catalog: &[CatalogEntry]) -> Outcome {
    let table = phi_table(catalog);
    let mut cells = 0;
    for (n, row) in EXPECTED_MATRIX {
        for (i, &want) in row.iter().enumerate() {
            let k = i as u32 + 1;
            let got = table.phi(n, k);
            ensure(got == want, || {
                format!("Phi({n},{k}) = {got}, expected {want}")
            })?;
            cells += 1;
        }
        for k in row.len() as u32 + 1..=n {
            ensure(table.phi(n, k) == 0, || format!("Phi({n},{k}) should be 0"))?;
        }
    }
    Ok(format!("{cells} cells equal"))
}

fn golden_catalog(catalog: &[CatalogEntry]) -> Outcome {
    let golden = load_golden(&data("golden_heights_1_7.csv")).map_err(|e| e.to_string())?;
    let errata = load_errata(&data("errata.csv")).map_err(|e| e.to_string())?;
    ensure(golden.len() == GOLDEN_ENTRIES, || {
        format!("{} golden rows", golden.len())
    })?;
    let report = verify_golden(catalog, &golden, &errata);
    ensure(report.is_ok() && report.matched == GOLDEN_ENTRIES, || {
        report.summary()
    })?;
    ensure(
        report
            .errata_applied
            .iter()
            .any(|(c, f)| *c == 175 && f == "value"),
        || "c=175 printed value was not routed through the errata list".into(),
    )?;

    let status = bin()
        .args(["verify", "--max-height", "7", "--golden"])
        .arg(data("golden_heights_1_7.csv"))
        .arg("--errata")
        .arg(data("errata.csv"))
        .output()
        .map_err(|e| e.to_string())?
        .status;
    ensure(status.success(), || format!("verify exited with {status}"))?;
    Ok(format!(
        "{}/{} match, {} errata fields applied",
        report.matched,
        golden.len(),
        report.errata_applied.len()
    ))
}

fn quadratic_oracle(catalog: &[CatalogEntry]) -> Outcome {
    let tol = Rational::new(BigInt::from(1), BigInt::from(10).pow(QUADRATIC_TOL_EXP));
    let eps = Rational::new(BigInt::from(1), BigInt::from(10).pow(QUADRATIC_REFINE_EXP));
    let sign_of = |c: &BigInt| {
        if c.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    };
    let mut checked = 0;
    let mut worst = Rational::zero();
    for e in catalog.iter().filter(|e| e.k == 2) {
        let p = e.poly();
        let (q, a1, a0) = (p.coeff(2), p.coeff(1), p.coeff(0));
        let (lo, hi) =
            quadratic_roots_closed_form(&q, &a1.abs(), &a0.abs(), sign_of(&a1), sign_of(&a0))
                .map_err(|err| format!("c={}: {err}", e.c))?;
        let closed = if e.key.root == 0 { lo } else { hi };
        let mid = refine_to(&e.value, &eps).interval().midpoint();
        let diff = (closed.approximate(QUADRATIC_REFINE_EXP + 6) - mid).abs();
        ensure(diff < tol, || {
            format!("c={}: {closed} differs by {diff}", e.c)
        })?;
        if diff > worst {
            worst = diff;
        }
        checked += 1;
    }
    let expected: usize = EXPECTED_MATRIX
        .iter()
        .filter_map(|(_, row)| row.get(1))
        .sum();
    ensure(checked == expected, || {
        format!("{checked} quadratic entries, expected {expected}")
    })?;
    let worst_f = worst.to_f64().unwrap_or(f64::NAN);
    Ok(format!(
        "{checked} quadratic entries, worst gap {worst_f:.1e}"
    ))
}

fn same_verdict(
    p: &Polynomial,
    fast: &Irreducibility,
    slow: &Irreducibility,
) -> Result<(), String> {
    ensure(fast.is_irreducible() == slow.is_irreducible(), || {
        format!("{p}: fast {fast:?}, oracle {slow:?}")
    })?;
    for w in [fast.witness(), slow.witness()].into_iter().flatten() {
        ensure(w.product() == *p, || {
            format!("{p}: witness {w:?} does not multiply back")
        })?;
        let (df, dp) = (w.factor.degree().unwrap_or(0), p.degree().unwrap_or(0));
        ensure(df >= 1 && 2 * df <= dp, || {
            format!("{p}: witness factor degree {df}")
        })?;
    }
    Ok(())
}

fn irreducibility_oracle() -> Outcome {
    let mut seen = BTreeSet::new();
    let mut exhaustive = 0;
    for n in 1..=7 {
        for k in 1..=n {
            for cand in raw_candidates(n, k, GeneratorOptions::exhaustive()) {
                let p = cand.poly;
                if !p.is_canonical() || !seen.insert(p.coeffs().to_vec()) {
                    continue;
                }
                let fast = is_irreducible(&p).map_err(|e| e.to_string())?;
                if p.degree() == Some(1) {
                    ensure(fast.is_irreducible(), || format!("{p} is linear"))?;
                } else {
                    let slow = oracle_factor_search(&p).map_err(|e| e.to_string())?;
                    same_verdict(&p, &fast, &slow)?;
                }
                exhaustive += 1;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut reducible = 0;
    for _ in 0..RANDOM_POLYS {
        let deg = rng.random_range(2..=RANDOM_MAX_DEGREE);
        let mut coeffs: Vec<i64> = (0..deg)
            .map(|_| rng.random_range(-RANDOM_MAX_COEFF..=RANDOM_MAX_COEFF))
            .collect();
        coeffs.push(rng.random_range(1..=RANDOM_MAX_COEFF));
        let p = Polynomial::from_coeffs(&coeffs)
            .primitive_part()
            .map_err(|e| e.to_string())?;
        let fast = is_irreducible(&p).map_err(|e| e.to_string())?;
        let slow = oracle_factor_search(&p).map_err(|e| e.to_string())?;
        same_verdict(&p, &fast, &slow)?;
        reducible += usize::from(!fast.is_irreducible());
    }
    Ok(format!(
        "{exhaustive} distinct candidates up to height 7 and {RANDOM_POLYS} random polynomials ({reducible} reducible) agree"
    ))
}

fn case_lemmas() -> Outcome {
    let opts = GeneratorOptions::exhaustive();
    let mut quadratic_binomials = 0;
    for n in 1..=LEMMA_MAX_HEIGHT {
        for k in 1..=n {
            let survivors = candidates_for_with(n, k, opts).map_err(|e| e.to_string())?;
            if lemma_excludes(n, k) {
                ensure(survivors.is_empty(), || {
                    format!("{} survivors at n={n}, k={k}", survivors.len())
                })?;
            }
            let shortcut = candidates_for_with(n, k, GeneratorOptions::default())
                .map_err(|e| e.to_string())?;
            let roots = |v: &[algebraic_heights::enumerate::Survivor]| {
                v.iter().map(|s| s.roots.len()).sum::<usize>()
            };
            ensure(roots(&survivors) == roots(&shortcut), || {
                format!("shortcuts change the count at n={n}, k={k}")
            })?;
            for s in &survivors {
                let p = &s.candidate.poly;
                if n >= 2 {
                    ensure(!p.coeff(0).is_zero(), || {
                        format!("{p} survives with a zero constant")
                    })?;
                }
                if k == 1 && n >= 2 {
                    ensure(s.candidate.layout.parts().iter().all(|&b| b != 0), || {
                        format!("k=1 survivor {} has a zero part", s.candidate.layout)
                    })?;
                }
            }
            if k != 2 {
                continue;
            }
            // both directions of the rule for q x^2 +- N
            let survived: BTreeSet<Vec<BigInt>> = survivors
                .iter()
                .map(|s| s.candidate.poly.coeffs().to_vec())
                .collect();
            for cand in raw_candidates(n, k, opts) {
                let Some((q, a0)) = binomial_quadratic(&cand.poly) else {
                    continue;
                };
                let lead = q.to_u64().ok_or("huge coefficient")?;
                let tail = a0.abs().to_u64().ok_or("huge coefficient")?;
                let expected =
                    a0.is_negative() && binomial_quadratic_survives(lead, tail, n as u64);
                let actual = survived.contains(cand.poly.coeffs());
                ensure(expected == actual, || {
                    format!("{}: expected survival {expected}, got {actual}", cand.poly)
                })?;
                quadratic_binomials += 1;
            }
        }
    }
    Ok(format!(
        "degree lemmas, nonzero parts at k=1 and {quadratic_binomials} binomial quadratics checked through height {LEMMA_MAX_HEIGHT}"
    ))
}

fn emitted(args: &[&str], jobs: Option<u32>) -> Result<Vec<u8>, String> {
    let mut cmd = bin();
    if let Some(j) = jobs {
        cmd.arg("--jobs").arg(j.to_string());
    }
    let out = cmd.args(args).output().map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!(
            "{args:?} exited with {}: {}",
            out.status,
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok(out.stdout)
}

fn properties(catalog: &[CatalogEntry]) -> Outcome {
    let mut polys: BTreeMap<Vec<BigInt>, Vec<&CatalogEntry>> = BTreeMap::new();
    for e in catalog {
        polys.entry(e.poly().coeffs().to_vec()).or_default().push(e);
    }
    for entries in polys.values() {
        let p = entries[0].poly();
        let roots = isolate_roots(p).map_err(|e| e.to_string())?;
        ensure(roots.len() == entries.len(), || {
            format!(
                "{p}: catalog has {} of {} roots",
                entries.len(),
                roots.len()
            )
        })?;
        let (max_pos, max_neg) = descartes_bound(p);
        let zero = &isolate_roots(&Polynomial::x()).map_err(|e| e.to_string())?[0];
        let side = |o: Ordering| roots.iter().filter(|r| compare(r, zero) == o).count();
        let (pos, neg) = (side(Ordering::Greater), side(Ordering::Less));
        ensure(pos <= max_pos && (max_pos - pos) % 2 == 0, || {
            format!("{p}: {pos} positive roots vs bound {max_pos}")
        })?;
        ensure(neg <= max_neg && (max_neg - neg) % 2 == 0, || {
            format!("{p}: {neg} negative roots vs bound {max_neg}")
        })?;
        if p.degree() >= Some(2) {
            let m = cauchy_bound(p);
            let chain = sturm_chain(p).map_err(|e| e.to_string())?;
            let count =
                count_roots_in(&chain, &Interval::new(-m.clone(), m)).map_err(|e| e.to_string())?;
            ensure(count == roots.len(), || {
                format!("{p}: Sturm count {count}, isolated {}", roots.len())
            })?;
        }
    }

    for (i, a) in catalog.iter().enumerate() {
        for b in &catalog[i + 1..] {
            ensure(compare(&a.value, &b.value) != Ordering::Equal, || {
                format!("c={} and c={} are the same number", a.c, b.c)
            })?;
        }
    }

    let csv = |h: u32| emitted(&["enumerate", "--max-height", &h.to_string()], None);
    let mut previous = csv(1)?;
    for h in 2..=8 {
        let next = csv(h)?;
        ensure(next.starts_with(&previous), || {
            format!("catalog({}) is not a prefix of catalog({h})", h - 1)
        })?;
        previous = next;
    }

    let runs: Vec<Vec<u8>> = JOBS_TO_COMPARE
        .iter()
        .map(|&j| {
            emitted(
                &["enumerate", "--max-height", "8", "--format", "json"],
                Some(j),
            )
        })
        .collect::<Result<_, _>>()?;
    ensure(runs.windows(2).all(|w| w[0] == w[1]), || {
        "output depends on --jobs".into()
    })?;

    Ok(format!(
        "{} polynomials, {} distinct values, prefixes h=1..7, jobs {JOBS_TO_COMPARE:?} identical",
        polys.len(),
        catalog.len()
    ))
}

fn extension() -> Outcome {
    let h = EXTENSION_HEIGHT.to_string();
    let start = Instant::now();
    let first = emitted(&["enumerate", "--max-height", &h], None)?;
    let elapsed = start.elapsed();
    ensure(elapsed < EXTENSION_TIME_LIMIT, || {
        format!("took {elapsed:?}")
    })?;
    let second = emitted(&["enumerate", "--max-height", &h], Some(2))?;
    ensure(first == second, || "two runs differ".into())?;

    let catalog = build_catalog(EXTENSION_HEIGHT).map_err(|e| e.to_string())?;
    let text = String::from_utf8(first).map_err(|e| e.to_string())?;
    ensure(text.lines().count() == catalog.len() + 1, || {
        "row count differs from library build".into()
    })?;
    for (i, e) in catalog.iter().enumerate() {
        let p = e.poly();
        ensure(e.c == i + 1, || format!("gap at c={}", i + 1))?;
        ensure(p.is_canonical(), || format!("c={}: {p} not canonical", e.c))?;
        ensure(
            height_of(p) == BigInt::from(e.n) && p.degree() == Some(e.k as usize),
            || format!("c={}: {p} is not of height {} and degree {}", e.c, e.n, e.k),
        )?;
        ensure(!lemma_excludes(e.n, e.k), || {
            format!("c={} at excluded degree", e.c)
        })?;
        let irreducible = is_irreducible(p)
            .map_err(|err| err.to_string())?
            .is_irreducible();
        ensure(irreducible, || format!("c={}: {p} reducible", e.c))?;
        if i > 0 {
            ensure(catalog[i - 1].key < e.key, || {
                format!("keys not increasing at c={}", e.c)
            })?;
        }
        if e.value.as_rational().is_none() {
            ensure(truncation_holds(e)?, || {
                format!("c={}: {} is not a truncation of the root", e.c, e.decimal)
            })?;
        }
    }
    let mut sorted: Vec<&CatalogEntry> = catalog.iter().collect();
    sorted.sort_by(|a, b| compare(&a.value, &b.value));
    ensure(
        sorted
            .windows(2)
            .all(|w| compare(&w[0].value, &w[1].value) == Ordering::Less),
        || "duplicate value".into(),
    )?;
    let totals = phi_table(&catalog).totals();
    Ok(format!(
        "{} entries (Phi {totals:?}) in {elapsed:.2?}",
        catalog.len()
    ))
}

/// Refines until the root falls on one side of the cell `shown .. shown +- 10^-digits`.
fn truncation_holds(e: &CatalogEntry) -> Result<bool, String> {
    let digits = e.decimal.split('.').nth(1).map_or(0, str::len) as u32;
    let shown = parse_decimal(&e.decimal).ok_or("unparsable decimal")?;
    let step = Rational::new(BigInt::from(1), BigInt::from(10).pow(digits));
    let (lo, hi) = if shown.is_negative() {
        (&shown - &step, shown.clone())
    } else {
        (shown.clone(), &shown + &step)
    };
    for extra in 2..64 {
        let eps = Rational::new(BigInt::from(1), BigInt::from(10).pow(digits + extra));
        let fine = refine_to(&e.value, &eps);
        let iv = fine.interval();
        if iv.lo >= lo && iv.hi <= hi {
            return Ok(true);
        }
        if iv.hi < lo || iv.lo > hi {
            return Ok(false);
        }
    }
    Err(format!(
        "c={}: root too close to a decimal boundary to decide",
        e.c
    ))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let v = Rational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    Some(if neg { -v } else { v })
}

fn main() {
    let catalog = build_catalog(7).expect("height-7 catalog");
    let criteria: Vec<Criterion<'_>> = vec![
        ("1 phi totals", Box::new(phi_totals)),
        ("2 phi matrix", Box::new(|| phi_matrix(&catalog))),
        ("3 golden catalog", Box::new(|| golden_catalog(&catalog))),
        (
            "4 quadratic closed form",
            Box::new(|| quadratic_oracle(&catalog)),
        ),
        ("5 irreducibility oracle", Box::new(irreducibility_oracle)),
        ("6 case lemmas", Box::new(case_lemmas)),
        ("7 properties", Box::new(|| properties(&catalog))),
        ("8 height-9 extension", Box::new(extension)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{:.2?}]", start.elapsed());
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
