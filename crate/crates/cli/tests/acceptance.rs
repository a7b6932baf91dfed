//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Runs without the libtest harness so the lines always show.

use std::collections::HashSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use metarep::alexmod::{branched_homology, sw_ratio, Count};
use metarep::deform::{certify_nonmetabelian, cocycle_spaces, newton_deform, solve_formal};
use metarep::knotio::{knot_by_name, torus_knot, KnotPresentation};
use metarep::metab::{
    commutant_dim, count_classes, has_distinct_eigenvalues, is_unitary, metabelian_reps,
    prime_factors, rn_lower_bound, CharacterGroup, MetabelianSetup,
};
use metarep::twisted::{
    boundary_restriction, cover_betti, criterion_check, verify_adjoint_factorization,
    verify_decomposition, COVER_CAP,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const FIG8_COUNTS: [u64; 21] = [
    1, 2, 5, 10, 24, 50, 120, 270, 640, 1500, 3600, 8610, 20880, 50700, 124024, 304290, 750120,
    1854400, 4600200, 11440548, 28527320,
];

const SW_TOL_50: f64 = 0.05;
const SW_TOL_MEAN: f64 = 0.02;
const ISOTROPY_TOL: f64 = 1e-8;
const FORMAL_TOL: f64 = 1e-9;
const NEWTON_RESIDUAL: f64 = 1e-10;

fn knot(name: &str) -> KnotPresentation {
    knot_by_name(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:.2?}, limit {limit:?}")
    })
}

fn finite(c: &Count) -> Option<u64> {
    c.finite()
        .map(|v| v.to_string().parse().expect("fits in u64"))
}

fn figure_eight_counts() -> Check {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_metarep"))
        .args(["count", "4_1", "--n-range", "1..21", "--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let got: Vec<u64> = v["rows"]
        .as_array()
        .ok_or("no rows")?
        .iter()
        .filter_map(|r| r["classes"].as_u64())
        .collect();
    ensure(got == FIG8_COUNTS, || format!("got {got:?}"))?;
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("21 exact values in {elapsed:.2?}"))
}

fn torus_counts() -> Check {
    let t35 = torus_knot(3, 5).map_err(|e| e.to_string())?;
    let k10 = knot("10_153");
    let got = [
        finite(&count_classes(&t35, 3)),
        finite(&count_classes(&t35, 5)),
        finite(&count_classes(&k10, 3)),
        finite(&count_classes(&k10, 5)),
    ];
    let want = [Some(8), Some(16), Some(16), Some(24)];
    ensure(got == want, || {
        format!("T(3,5) and 10_153 at n = 3, 5: {got:?}")
    })?;
    Ok("T(3,5): 8, 16; 10_153: 16, 24".into())
}

fn trefoil_ranks() -> Check {
    let p = knot("3_1");
    let mut nonzero = vec![];
    for n in 2..=12 {
        let c = count_classes(&p, n);
        if c.is_infinite() || finite(&c) != Some(0) {
            nonzero.push(n);
        }
    }
    ensure(nonzero == [2, 3, 6], || format!("nonzero at {nonzero:?}"))?;
    let b1 = branched_homology(&p, 6).free_rank;
    ensure(count_classes(&p, 6).is_infinite() && b1 > 0, || {
        format!("n = 6 not on the b1 > 0 branch (b1 = {b1})")
    })?;
    Ok(format!(
        "nonzero at {nonzero:?}, n = 6 infinite with b1 = {b1}"
    ))
}

/// Orbits of size exactly `n` under `t`, walking each orbit explicitly.
fn brute_force_count(g: &CharacterGroup, n: usize) -> u64 {
    let mut seen = HashSet::new();
    let mut count = 0;
    for chi in g.enumerate() {
        if seen.contains(&chi.exponents) {
            continue;
        }
        let mut orbit = vec![chi.exponents.clone()];
        loop {
            let next = g.shift_exponents(orbit.last().unwrap());
            if next == orbit[0] {
                break;
            }
            orbit.push(next);
        }
        if orbit.len() == n {
            count += 1;
        }
        seen.extend(orbit);
    }
    count
}

fn counting_oracle() -> Check {
    let mut checked = 0;
    for name in ["3_1", "4_1", "5_2"] {
        let p = knot(name);
        for n in 1..=6 {
            let h = branched_homology(&p, n);
            if h.free_rank > 0 {
                continue;
            }
            let g = CharacterGroup::new(h).map_err(|e| e.to_string())?;
            let brute = brute_force_count(&g, n);
            let formula = finite(&count_classes(&p, n));
            ensure(formula == Some(brute), || {
                format!("{name} n={n}: formula {formula:?}, brute force {brute}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (knot, n) points agree"))
}

fn construction_soundness() -> Check {
    let mut reps = 0;
    for (name, max_n) in [("4_1", 4), ("3_1", 3)] {
        let p = knot(name);
        for n in 2..=max_n {
            for (chi, a) in metabelian_reps(&p, n).map_err(|e| e.to_string())? {
                let at = || format!("{name} n={n} χ={:?}", chi.exponents);
                a.check_relators(&p).map_err(|e| format!("{}: {e}", at()))?;
                ensure(a.images().iter().all(|m| m.det().is_one()), || {
                    format!("{}: det ≠ 1", at())
                })?;
                ensure(is_unitary(&a), || format!("{}: not unitary", at()))?;
                ensure(has_distinct_eigenvalues(&a.eval(p.meridian())), || {
                    format!("{}: repeated meridian eigenvalue", at())
                })?;
                let c = commutant_dim(&a).map_err(|e| e.to_string())?;
                ensure(c == 1, || format!("{}: commutant dimension {c}", at()))?;
                reps += 1;
            }
        }
    }
    Ok(format!("{reps} representations, exact"))
}

fn criterion_points() -> Vec<(&'static str, usize)> {
    vec![("4_1", 2), ("4_1", 3), ("3_1", 2), ("3_1", 3)]
}

fn criterion_and_cover() -> Check {
    let mut slowest = Duration::ZERO;
    for (name, n) in criterion_points() {
        let start = Instant::now();
        let p = knot(name);
        let s = MetabelianSetup::new(&p, n).map_err(|e| e.to_string())?;
        let cover = cover_betti(&p, &s, COVER_CAP).map_err(|e| e.to_string())?;
        ensure(cover.equality, || {
            format!(
                "{name} n={n}: cover equality fails, b1 = {}",
                cover.b1_tilde
            )
        })?;
        for chi in s.classes() {
            let v = criterion_check(&p, &s, &chi).map_err(|e| e.to_string())?;
            ensure(v.h1 == n - 1, || format!("{name} n={n}: h1 = {}", v.h1))?;
            ensure(v.criterion_met == cover.equality, || {
                format!("{name} n={n}: certificates disagree")
            })?;
        }
        let elapsed = start.elapsed();
        within(elapsed, Duration::from_secs(60)).map_err(|e| format!("{name} n={n}: {e}"))?;
        slowest = slowest.max(elapsed);
    }
    Ok(format!(
        "h1 = n - 1 and cover equality at 4 points, slowest {slowest:.2?}"
    ))
}

fn decomposition() -> Check {
    let mut classes = 0;
    for (name, n) in criterion_points() {
        let p = knot(name);
        let s = MetabelianSetup::new(&p, n).map_err(|e| e.to_string())?;
        for chi in s.classes() {
            let r = verify_decomposition(&p, &s, &chi).map_err(|e| format!("{name} n={n}: {e}"))?;
            let rhs = r.b1_cover + r.h1_beta.iter().sum::<usize>();
            ensure(r.h1_adjoint == rhs, || {
                format!("{name} n={n}: h1 {} vs {rhs}", r.h1_adjoint)
            })?;
            ensure(r.words_checked >= 200, || {
                format!("{name} n={n}: only {} words", r.words_checked)
            })?;
            classes += 1;
        }
    }
    Ok(format!(
        "trace identity and h1 additivity for {classes} classes"
    ))
}

fn twisted_alexander_unit() -> Check {
    let p = knot("4_1");
    let s = MetabelianSetup::new(&p, 2).map_err(|e| e.to_string())?;
    let chi = s.classes().into_iter().next().ok_or("no class")?;
    let (c, k) = verify_adjoint_factorization(&p, &s, &chi).map_err(|e| e.to_string())?;
    ensure(c.is_one() || c.neg_ref().is_one(), || {
        format!("unit is {c} t^{k}")
    })?;
    Ok(format!(
        "quotient {} t^{k}",
        if c.is_one() { "+1" } else { "-1" }
    ))
}

fn silver_williams() -> Check {
    let start = Instant::now();
    let p = knot("4_1");
    let target = ((3.0 + 5f64.sqrt()) / 2.0).ln();
    let ratio = |n| {
        sw_ratio(&p, n)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("n={n}: b1 > 0"))
    };
    let at50 = ratio(50)?;
    ensure((at50 - target).abs() <= SW_TOL_50, || {
        format!("n=50: {at50}")
    })?;
    let devs = (40..=60)
        .map(|n| ratio(n).map(|r| (r - target).abs()))
        .collect::<Result<Vec<_>, _>>()?;
    let mean = devs.iter().sum::<f64>() / devs.len() as f64;
    ensure(mean <= SW_TOL_MEAN, || format!("mean deviation {mean}"))?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "n=50: {at50:.6}, mean |dev| on [40,60]: {mean:.4}, {elapsed:.2?}"
    ))
}

fn lower_bound() -> Check {
    let p = knot("4_1");
    for n in 1..=21 {
        let lb = rn_lower_bound(&p, n).map_err(|e| e.to_string())?;
        let c = count_classes(&p, n);
        let c = c.finite().ok_or_else(|| format!("n={n}: infinite"))?;
        ensure(&lb <= c, || format!("n={n}: {lb} > {c}"))?;
        ensure(prime_factors(n).len() != 1 || &lb == c, || {
            format!("n={n} prime: {lb} ≠ {c}")
        })?;
    }
    Ok("n ≤ 21, equality at primes".into())
}

fn lagrangian() -> Check {
    let mut worst: f64 = 0.0;
    for (name, n) in [("4_1", 2), ("4_1", 3), ("3_1", 2)] {
        let p = knot(name);
        for (_, a) in metabelian_reps(&p, n).map_err(|e| e.to_string())? {
            let r = boundary_restriction(&p, &a).map_err(|e| e.to_string())?;
            ensure(r.image_dim == n - 1, || {
                format!("{name} n={n}: image dimension {}", r.image_dim)
            })?;
            ensure(r.isotropy_residual <= ISOTROPY_TOL, || {
                format!("{name} n={n}: residual {}", r.isotropy_residual)
            })?;
            worst = worst.max(r.isotropy_residual);
        }
    }
    Ok(format!(
        "image dimension n - 1, worst isotropy residual {worst:.1e}"
    ))
}

fn deformation() -> Check {
    let start = Instant::now();
    let p = knot("4_1");
    let (_, a) = metabelian_reps(&p, 2)
        .map_err(|e| e.to_string())?
        .into_iter()
        .next()
        .ok_or("no class")?;
    let spaces = cocycle_spaces(&p, &a).map_err(|e| e.to_string())?;
    let a1 = spaces.h1.first().ok_or("H^1 is zero")?;
    let series = solve_formal(&p, &a, a1, 4).map_err(|e| e.to_string())?;
    let formal = series.residuals.iter().cloned().fold(0.0, f64::max);
    ensure(formal <= FORMAL_TOL, || {
        format!("formal residuals {:?}", series.residuals)
    })?;
    let ts = [0.02, 0.04, 0.06, 0.08, 0.1];
    let path = newton_deform(&p, &a, a1, &ts).map_err(|e| e.to_string())?;
    let mut newton: f64 = 0.0;
    for st in &path.steps {
        ensure(st.residual <= NEWTON_RESIDUAL, || {
            format!("t={}: residual {}", st.t, st.residual)
        })?;
        let cert = certify_nonmetabelian(&p, &st.rep, 2).map_err(|e| e.to_string())?;
        ensure(cert.certified, || {
            format!("t={}: not certified ({cert:?})", st.t)
        })?;
        newton = newton.max(st.residual);
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "formal ≤ {formal:.1e}, Newton ≤ {newton:.1e}, certified at 5 points, {elapsed:.2?}"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("figure-eight class counts, n = 1..21", figure_eight_counts),
        ("torus knot T(3,5) and 10_153 counts", torus_counts),
        ("trefoil nonzero only at n = 2, 3, 6", trefoil_ranks),
        ("Möbius count vs brute-force orbits", counting_oracle),
        ("construction soundness", construction_soundness),
        ("h1(ad α) = n - 1 and cover equality", criterion_and_cover),
        ("adjoint decomposition and h1 additivity", decomposition),
        (
            "twisted Alexander factorization unit",
            twisted_alexander_unit,
        ),
        ("Silver-Williams limit for 4_1", silver_williams),
        ("lower bound r_n ≤ count", lower_bound),
        ("boundary image is Lagrangian", lagrangian),
        ("formal and numerical deformation", deformation),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2}  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2}  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
