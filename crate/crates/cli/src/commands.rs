use std::ops::RangeInclusive;

use metarep::alexmod::{alexander_poly, branched_homology, mahler, sw_ratio_poly, Count};
use metarep::deform::{
    certify_nonmetabelian, cocycle_spaces, newton_deform, solve_formal, Certificate, DeformPath,
};
use metarep::knotio::KnotPresentation;
use metarep::metab::{
    count_classes, has_distinct_eigenvalues, is_irreducible, is_unitary, rn_lower_bound, Character,
    CoverData, MetabelianSetup, ZChoice,
};
use metarep::twisted::{
    adjoint_rep, boundary_restriction, cohomology_dims, cover_betti, criterion_check,
    twisted_alexander, verify_adjoint_factorization, BoundaryReport, CohomologyReport, CoverReport,
    CriterionVerdict,
};
use serde::Serialize;

use crate::failure::{Failure, Kind, Stage};
use crate::output::{csv_rows, table, Output};

pub struct Knot {
    pub label: String,
    pub p: KnotPresentation,
}

#[derive(Serialize)]
struct CountRow {
    n: usize,
    classes: Count,
    b1: usize,
    torsion: String,
    lower_bound: Option<String>,
}

#[derive(Serialize)]
struct CountReport {
    knot: String,
    rows: Vec<CountRow>,
}

pub fn count(k: &Knot, ns: RangeInclusive<usize>) -> Result<Output, Failure> {
    let data = CoverData::new(&k.p);
    let mut rows = Vec::new();
    for n in ns {
        let (b1, tor) = data.betti_torsion(n);
        let lower_bound = if b1 > 0 {
            None
        } else {
            Some(rn_lower_bound(&k.p, n).stage("count")?.to_string())
        };
        rows.push(CountRow {
            n,
            classes: count_classes(&k.p, n),
            b1,
            torsion: tor.to_string(),
            lower_bound,
        });
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let classes = if r.classes.is_infinite() {
                "infinite (b1 > 0)".to_string()
            } else {
                r.classes.to_string()
            };
            vec![
                r.n.to_string(),
                classes,
                r.b1.to_string(),
                r.torsion.clone(),
                r.lower_bound.clone().unwrap_or("-".into()),
            ]
        })
        .collect();
    let headers = ["n", "classes", "b1", "torsion", "lower_bound"];
    let report = CountReport {
        knot: k.label.clone(),
        rows,
    };
    Ok(Output::new(&report, table(&headers, &cells)).with_csv(csv_rows(&headers, &cells)))
}

fn setup(k: &Knot, n: usize) -> Result<MetabelianSetup, Failure> {
    if n == 0 {
        return Err(Failure::input("input", "n must be at least 1"));
    }
    MetabelianSetup::new(&k.p, n).stage("enumeration")
}

fn pick(s: &MetabelianSetup, chi: usize) -> Result<Character, Failure> {
    let classes = s.classes();
    if classes.is_empty() {
        return Err(Failure::new(
            Kind::NotApplicable,
            "enumeration",
            "no irreducible metabelian classes at this rank",
        ));
    }
    let len = classes.len();
    classes.into_iter().nth(chi).ok_or_else(|| {
        Failure::input(
            "input",
            format!("character index {chi} out of range, {len} classes"),
        )
    })
}

pub fn parse_z(s: &str) -> Result<ZChoice, String> {
    if s == "canonical" {
        return Ok(ZChoice::Canonical);
    }
    s.parse::<i64>()
        .map(ZChoice::Explicit)
        .map_err(|_| format!("expected `canonical` or an integer, got `{s}`"))
}

#[derive(Serialize)]
struct RepEntry {
    index: usize,
    character: Character,
    rep: metarep::rep::Representation<metarep::cyclotomic::CycNum>,
}

#[derive(Serialize)]
struct RepsReport {
    knot: String,
    n: usize,
    classes: Vec<RepEntry>,
}

pub fn reps(k: &Knot, n: usize, z: ZChoice) -> Result<Output, Failure> {
    let s = setup(k, n)?;
    let mut classes = Vec::new();
    let mut text = String::new();
    for (index, chi) in s.classes().into_iter().enumerate() {
        let rep = s.build(&k.p, &chi, z).stage("construction")?;
        text += &format!(
            "class {index}: character {:?}, order {}\n",
            chi.exponents, chi.order
        );
        for (g, m) in rep.images().iter().enumerate() {
            text += &format!("  x{g}:\n");
            for row in m.to_rows() {
                let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                text += &format!("    [{}]\n", cells.join(", "));
            }
        }
        classes.push(RepEntry {
            index,
            character: chi,
            rep,
        });
    }
    if classes.is_empty() {
        text += "no irreducible metabelian classes\n";
    }
    Ok(Output::new(
        &RepsReport {
            knot: k.label.clone(),
            n,
            classes,
        },
        text,
    ))
}

#[derive(Serialize)]
struct CohomologyOut {
    knot: String,
    n: usize,
    character: Character,
    adjoint: CohomologyReport,
    criterion: CriterionVerdict,
    boundary: Option<BoundaryReport>,
    boundary_error: Option<String>,
}

pub fn cohomology(k: &Knot, n: usize, chi: usize) -> Result<Output, Failure> {
    let s = setup(k, n)?;
    let character = pick(&s, chi)?;
    let alpha = s
        .build(&k.p, &character, ZChoice::Canonical)
        .stage("construction")?;
    let adjoint =
        cohomology_dims(&k.p, &adjoint_rep(&alpha).stage("construction")?).stage("criterion")?;
    let criterion = criterion_check(&k.p, &s, &character).stage("criterion")?;
    let (boundary, boundary_error) = match boundary_restriction(&k.p, &alpha) {
        Ok(b) => (Some(b), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(Output::flat(&CohomologyOut {
        knot: k.label.clone(),
        n,
        character,
        adjoint,
        criterion,
        boundary,
        boundary_error,
    }))
}

#[derive(Serialize)]
struct CoverOut {
    knot: String,
    cover: CoverReport,
}

pub fn cover(k: &Knot, n: usize, cap: u64) -> Result<Output, Failure> {
    let s = setup(k, n)?;
    let cover = cover_betti(&k.p, &s, cap).stage("cover")?;
    let headers = ["character", "h1_beta"];
    let cells: Vec<Vec<String>> = cover
        .per_character
        .iter()
        .enumerate()
        .map(|(i, h)| vec![i.to_string(), h.to_string()])
        .collect();
    Ok(Output::flat(&CoverOut {
        knot: k.label.clone(),
        cover,
    })
    .with_csv(csv_rows(&headers, &cells)))
}

#[derive(Serialize)]
struct TwistedOut {
    knot: String,
    n: usize,
    character: Character,
    alexander: String,
    alpha_numerator: String,
    alpha_denominator: String,
    adjoint_column: usize,
    adjoint_numerator: String,
    adjoint_denominator: String,
    /// `Δ^{ad α} = unit · ∏ Δ_K(ω^j t) · ∏ Δ^{β_i}`, as `c t^k`.
    factorization_unit: String,
}

pub fn twisted_alex(k: &Knot, n: usize, chi: usize) -> Result<Output, Failure> {
    if n < 2 {
        return Err(Failure::input("input", "twisted-alex needs n >= 2"));
    }
    let s = setup(k, n)?;
    let character = pick(&s, chi)?;
    let alpha = s
        .build(&k.p, &character, ZChoice::Canonical)
        .stage("construction")?;
    let a = twisted_alexander(&k.p, &alpha).stage("twisted-alex")?;
    let ad = twisted_alexander(&k.p, &adjoint_rep(&alpha).stage("construction")?)
        .stage("twisted-alex")?;
    let (c, deg) = verify_adjoint_factorization(&k.p, &s, &character).stage("twisted-alex")?;
    let delta = alexander_poly(&k.p).stage("twisted-alex")?;
    Ok(Output::flat(&TwistedOut {
        knot: k.label.clone(),
        n,
        character,
        alexander: delta.to_string(),
        alpha_numerator: a.numerator.to_string(),
        alpha_denominator: a.denominator.to_string(),
        adjoint_column: ad.column,
        adjoint_numerator: ad.numerator.to_string(),
        adjoint_denominator: ad.denominator.to_string(),
        factorization_unit: format!("({c})t^{deg}"),
    }))
}

#[derive(Serialize)]
struct SwRow {
    n: usize,
    b1: usize,
    invariant_factors: Vec<String>,
    torsion: String,
    sw_ratio: Option<f64>,
}

#[derive(Serialize)]
struct SwReport {
    knot: String,
    alexander: String,
    log_mahler: f64,
    rows: Vec<SwRow>,
}

pub fn sw(k: &Knot, ns: RangeInclusive<usize>) -> Result<Output, Failure> {
    let delta = alexander_poly(&k.p).stage("alexander")?;
    let log_mahler = mahler(&delta).ln();
    let rows: Vec<SwRow> = ns
        .map(|n| {
            let h = branched_homology(&k.p, n);
            SwRow {
                n,
                b1: h.free_rank,
                invariant_factors: h.invariant_factors.iter().map(|d| d.to_string()).collect(),
                torsion: h.torsion_order().to_string(),
                sw_ratio: sw_ratio_poly(&delta, n),
            }
        })
        .collect();
    let headers = ["n", "b1", "invariant_factors", "torsion", "sw_ratio"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.b1.to_string(),
                r.invariant_factors.join(" "),
                r.torsion.clone(),
                r.sw_ratio.map_or("-".into(), |x| format!("{x:.6}")),
            ]
        })
        .collect();
    let text = format!("alexander: {delta}\nlog mahler measure: {log_mahler:.6}\n")
        + &table(&headers, &cells);
    Ok(Output::new(
        &SwReport {
            knot: k.label.clone(),
            alexander: delta.to_string(),
            log_mahler,
            rows,
        },
        text,
    )
    .with_csv(csv_rows(&headers, &cells)))
}

#[derive(Serialize)]
struct StepOut {
    t: f64,
    iterations: usize,
    residual: f64,
    certificate: Certificate,
    probe: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct DeformOut {
    knot: String,
    n: usize,
    character: Character,
    z1: usize,
    b1: usize,
    h1: usize,
    direction: usize,
    formal_order: usize,
    formal_residuals: Vec<f64>,
    probe_words: Vec<String>,
    steps: Vec<StepOut>,
    certified: bool,
}

pub struct DeformArgs {
    pub chi: usize,
    pub order: usize,
    pub steps: usize,
    pub direction: usize,
}

fn run_deform(
    k: &Knot,
    s: &MetabelianSetup,
    character: Character,
    a: &DeformArgs,
) -> Result<DeformOut, Failure> {
    let n = s.structure.n;
    if a.order < 2 {
        return Err(Failure::input("input", "order must be at least 2"));
    }
    let alpha = s
        .build(&k.p, &character, ZChoice::Canonical)
        .stage("construction")?;
    let spaces = cocycle_spaces(&k.p, &alpha).stage("deformation")?;
    let a1 = spaces.h1.get(a.direction).ok_or_else(|| {
        if spaces.h1.is_empty() {
            Failure::new(
                Kind::NotApplicable,
                "deformation",
                "H^1 is zero, nothing to deform along",
            )
        } else {
            Failure::input(
                "input",
                format!(
                    "direction {} out of range, dim H^1 = {}",
                    a.direction,
                    spaces.h1.len()
                ),
            )
        }
    })?;
    let formal = solve_formal(&k.p, &alpha, a1, a.order).stage("deformation")?;
    let ts: Vec<f64> = (1..=a.steps).map(|j| 0.02 * j as f64).collect();
    let path: DeformPath = newton_deform(&k.p, &alpha, a1, &ts).stage("deformation")?;
    let mut steps = Vec::new();
    for st in &path.steps {
        let certificate = certify_nonmetabelian(&k.p, &st.rep, n).stage("certification")?;
        steps.push(StepOut {
            t: st.t,
            iterations: st.iterations,
            residual: st.residual,
            certificate,
            probe: st.probe.iter().map(|z| [z.re, z.im]).collect(),
        });
    }
    let certified = !steps.is_empty() && steps.iter().all(|s| s.certificate.certified);
    Ok(DeformOut {
        knot: k.label.clone(),
        n,
        character,
        z1: spaces.z1.len(),
        b1: spaces.b1.len(),
        h1: spaces.h1.len(),
        direction: a.direction,
        formal_order: formal.order,
        formal_residuals: formal.residuals,
        probe_words: path.probe_words.iter().map(|w| w.to_string()).collect(),
        steps,
        certified,
    })
}

pub fn deform(k: &Knot, n: usize, a: &DeformArgs) -> Result<Output, Failure> {
    let s = setup(k, n)?;
    let character = pick(&s, a.chi)?;
    let out = run_deform(k, &s, character, a)?;
    let mut text = format!(
        "dim Z1 = {}, dim B1 = {}, dim H1 = {}\n",
        out.z1, out.b1, out.h1
    );
    for (i, r) in out.formal_residuals.iter().enumerate() {
        text += &format!("order {}: residual {r:.3e}\n", i + 1);
    }
    let headers = [
        "t",
        "iterations",
        "residual",
        "irreducible",
        "min_distance",
        "certified",
    ];
    let cells: Vec<Vec<String>> = out
        .steps
        .iter()
        .map(|s| {
            vec![
                format!("{:.2}", s.t),
                s.iterations.to_string(),
                format!("{:.3e}", s.residual),
                s.certificate.irreducible.to_string(),
                format!("{:.3e}", s.certificate.min_distance),
                s.certificate.certified.to_string(),
            ]
        })
        .collect();
    text += &table(&headers, &cells);
    let probe_headers = ["t", "word_index", "word", "re", "im"];
    let probe_rows: Vec<Vec<String>> = out
        .steps
        .iter()
        .flat_map(|s| {
            out.probe_words
                .iter()
                .zip(&s.probe)
                .enumerate()
                .map(move |(i, (w, z))| {
                    vec![
                        s.t.to_string(),
                        i.to_string(),
                        w.clone(),
                        format!("{:.15e}", z[0]),
                        format!("{:.15e}", z[1]),
                    ]
                })
        })
        .collect();
    Ok(Output::new(&out, text).with_csv(csv_rows(&probe_headers, &probe_rows)))
}

#[derive(Serialize)]
struct ClassCheck {
    index: usize,
    character: Character,
    relators_exact: bool,
    det_one: bool,
    unitary: bool,
    irreducible: bool,
    distinct_meridian_eigenvalues: bool,
}

#[derive(Serialize, Default)]
struct PipelineReport {
    knot: String,
    n: usize,
    classes: Option<Count>,
    stopped_at: Option<String>,
    reason: Option<String>,
    construction: Vec<ClassCheck>,
    criterion: Vec<CriterionVerdict>,
    cover: Option<CoverReport>,
    cover_skipped: Option<String>,
    deformation: Option<DeformOut>,
}

pub fn pipeline(k: &Knot, n: usize, cap: u64) -> Result<Output, Failure> {
    let mut report = PipelineReport {
        knot: k.label.clone(),
        n,
        ..Default::default()
    };
    let stop = |mut report: PipelineReport, f: Failure| {
        report.stopped_at = Some(f.stage.clone());
        report.reason = Some(f.message.clone());
        f.with_partial(Output::flat(&report))
    };
    let classes = count_classes(&k.p, n);
    report.classes = Some(classes.clone());
    if classes.is_infinite() {
        let b1 = branched_homology(&k.p, n).free_rank;
        let f = Failure::new(
            Kind::NotApplicable,
            "enumeration",
            format!("b1(L_{n}) = {b1} > 0: infinitely many metabelian classes, the rank criterion does not apply"),
        );
        return Err(stop(report, f));
    }
    let s = match setup(k, n) {
        Ok(s) => s,
        Err(f) => return Err(stop(report, f)),
    };
    let chars = s.classes();
    if chars.is_empty() {
        let f = Failure::new(
            Kind::NotApplicable,
            "enumeration",
            "no irreducible metabelian classes at this rank",
        );
        return Err(stop(report, f));
    }
    for (index, chi) in chars.iter().enumerate() {
        let rep = s
            .build(&k.p, chi, ZChoice::Canonical)
            .stage("construction")?;
        let mu = rep.eval(k.p.meridian());
        report.construction.push(ClassCheck {
            index,
            character: chi.clone(),
            relators_exact: rep.check_relators(&k.p).is_ok(),
            det_one: rep.images().iter().all(|m| m.det().is_one()),
            unitary: is_unitary(&rep),
            irreducible: is_irreducible(&rep).stage("construction")?,
            distinct_meridian_eigenvalues: has_distinct_eigenvalues(&mu),
        });
        report
            .criterion
            .push(criterion_check(&k.p, &s, chi).stage("criterion")?);
    }
    match cover_betti(&k.p, &s, cap) {
        Ok(c) => report.cover = Some(c),
        Err(metarep::Error::Intractable { size, cap }) => {
            report.cover_skipped = Some(format!("|H| = {size} exceeds cap {cap}"))
        }
        Err(e) => return Err(Failure::from_error("cover", e)),
    }
    let Some(first) = report.criterion.iter().position(|v| v.criterion_met) else {
        let f = Failure::new(
            Kind::NotApplicable,
            "criterion",
            format!("dim H^1 != {} for every class", n - 1),
        );
        return Err(stop(report, f));
    };
    if n >= 2 {
        let args = DeformArgs {
            chi: first,
            order: 4,
            steps: 5,
            direction: 0,
        };
        report.deformation = Some(run_deform(k, &s, chars[first].clone(), &args)?);
    }
    Ok(Output::flat(&report))
}
