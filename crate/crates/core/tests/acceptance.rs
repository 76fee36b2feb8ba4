//! Acceptance run: one PASS/FAIL line per criterion. Built without the test
//! harness so the lines always show up in `cargo test` output.

mod common;

use std::time::{Duration, Instant};

use knotplate::catalog::{self, fixture, fixtures, torus_two};
use knotplate::diagram::Diagram;
use knotplate::fundgroup::{
    abelianization, certify_unknot, complexity, tietze_simplify, tietze_simplify_observed, wirtinger_presentation,
    wirtinger_relations, AbelianInvariants, Presentation, TietzeLimits, Verdict,
};
use knotplate::scan::{scan_assignments, ScanOptions};
use knotplate::template::TemplateComplex;
use knotplate::Analysis;

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn analysis(name: &str) -> Analysis {
    Analysis::of(&fixture(name).unwrap().diagram()).unwrap()
}

fn z_to_the(mu: usize) -> AbelianInvariants {
    AbelianInvariants {
        free_rank: mu,
        torsion: vec![],
    }
}

fn criterion_1() -> Outcome {
    let d = fixture("trefoil").unwrap().diagram();
    let t0 = Instant::now();
    let a = Analysis::of(&d).unwrap();
    let c = complexity(&a.presentation).unwrap();
    let took = t0.elapsed();
    let p = &a.presentation;
    check(
        p.generator_count() == 6 && p.relator_count() == 6,
        "expected 6 generators and 6 relators",
    )?;
    check(c.lengths == vec![3; 6], format!("lengths {:?}", c.lengths))?;
    // (3^6)^(1/6) = 3 exactly
    check(c.geometric_mean == 3.0, format!("complexity {}", c.geometric_mean))?;
    check(took < Duration::from_millis(10), format!("took {took:?}"))?;
    Ok(format!(
        "lengths {:?}, complexity {:.3}, {:?}",
        c.lengths, c.geometric_mean, took
    ))
}

fn criterion_2() -> Outcome {
    let c = complexity(&analysis("unknot3").presentation).unwrap();
    check(c.lengths == vec![1, 1, 2, 2, 6, 6], format!("lengths {:?}", c.lengths))?;
    let oracle = 144f64.powf(1.0 / 6.0);
    check((oracle - 2.289).abs() < 0.001, "oracle drifted")?;
    check(
        (c.geometric_mean - 2.289).abs() <= 0.001,
        format!("complexity {}", c.geometric_mean),
    )?;
    Ok(format!("lengths {:?}, complexity {:.4}", c.lengths, c.geometric_mean))
}

/// `x y x y' x' y'` up to renaming, inversion and rotation, checked here
/// independently of the library's own predicate.
fn braid_form(p: &Presentation) -> bool {
    if p.generator_count() != 2 || p.relator_count() != 1 {
        return false;
    }
    let w: Vec<(usize, i32)> = p.relators[0]
        .word
        .letters()
        .iter()
        .map(|l| (l.gen, if l.inverse { -1 } else { 1 }))
        .collect();
    [(0, 1), (1, 0)].iter().any(|&(x, y)| {
        let target = vec![(x, 1), (y, 1), (x, 1), (y, -1), (x, -1), (y, -1)];
        common::cyclic_variants(&target).contains(&w)
    })
}

fn criterion_3() -> Outcome {
    let s = tietze_simplify(&analysis("trefoil").presentation, TietzeLimits::default());
    check(s.is_final, "trefoil cascade hit the budget")?;
    check(
        braid_form(&s.presentation),
        format!("trefoil ended at\n{}", s.presentation.to_text()),
    )?;
    let mut notes = vec![format!("trefoil -> {}", s.presentation.to_text().replace('\n', "; "))];
    for name in ["unknot3", "unknot4"] {
        let a = analysis(name);
        let s = tietze_simplify(&a.presentation, TietzeLimits::default());
        check(
            s.presentation.generator_count() == 1 && s.presentation.is_free(),
            format!("{name} ended at {}", s.presentation.to_text()),
        )?;
        let v = certify_unknot(&a.diagram, &a.presentation, TietzeLimits::default()).unwrap();
        check(v == Verdict::Certified, format!("{name}: {v:?}"))?;
        notes.push(format!("{name} certified"));
    }
    Ok(notes.join(", "))
}

fn criterion_4() -> Outcome {
    let mut reduced = Vec::new();
    for f in fixtures() {
        let d = f.diagram();
        let c = d.crossing_count();
        let a = Analysis::of(&d).unwrap();
        let p = &a.presentation;
        check(
            p.generator_count() == 2 * c && p.relator_count() == 2 * c,
            format!("{}: template {}x{}", f.name, p.generator_count(), p.relator_count()),
        )?;
        let (strands, formal) = wirtinger_relations(&d).map_err(|e| format!("{}: {e}", f.name))?;
        check(
            strands.count == c && formal.len() == c,
            format!("{}: Wirtinger size", f.name),
        )?;
        // the formal relations x_k x_i x_k' x_j' all have four letters
        check(
            formal.iter().all(|r| r.len() == 4),
            format!("{}: formal length", f.name),
        )?;
        let w = wirtinger_presentation(&d).unwrap();
        check(
            w.generator_count() == c && w.relator_count() == c,
            format!("{}: reduced Wirtinger size", f.name),
        )?;
        if d.is_alternating() {
            check(
                w.lengths().iter().all(|&l| l == 4),
                format!("{}: reduced {:?}", f.name, w.lengths()),
            )?;
        }
        reduced.push(format!("{} {:?}", f.name, w.lengths()));
        let want = z_to_the(f.components);
        check(
            abelianization(p) == want,
            format!("{}: template abelianizes to {}", f.name, abelianization(p)),
        )?;
        check(
            abelianization(&w) == want,
            format!("{}: Wirtinger abelianizes to {}", f.name, abelianization(&w)),
        )?;
    }
    let mu: Vec<usize> = ["trefoil", "figure-eight", "hopf", "borromean"]
        .iter()
        .map(|n| fixture(n).unwrap().diagram().component_count())
        .collect();
    check(mu == vec![1, 1, 2, 3], format!("component counts {mu:?}"))?;
    Ok(format!("reduced Wirtinger lengths: {}", reduced.join("; ")))
}

fn criterion_5() -> Outcome {
    let mut rows = Vec::new();
    for f in fixtures() {
        let d = f.diagram();
        let c = d.crossing_count();
        let (e, t) = common::exterior_and_bigons(&d);
        let a = Analysis::of(&d).unwrap();
        let k = TemplateComplex::from_analysis(&a)
            .map_err(|x| format!("{}: {x}", f.name))?
            .counts();
        check(
            k.internal_walls == 4 * c - t,
            format!("{}: walls {} vs 4C-T = {}", f.name, k.internal_walls, 4 * c - t),
        )?;
        check(
            k.ring_walls == e,
            format!("{}: ring walls {} vs E = {e}", f.name, k.ring_walls),
        )?;
        check(k.saddles == 5 * c, format!("{}: saddles {}", f.name, k.saddles))?;
        check(
            k.lid_facets == 2 * c,
            format!("{}: lid facets {}", f.name, k.lid_facets),
        )?;
        check(
            k.polygons <= 12 * c,
            format!("{}: {} polygons > 12C", f.name, k.polygons),
        )?;
        check(
            k.polygons <= 11 * c + e,
            format!("{}: {} polygons > 11C + E", f.name, k.polygons),
        )?;
        check(
            k.side_incidences <= 64 * c,
            format!("{}: {} edge incidences > 64C", f.name, k.side_incidences),
        )?;
        rows.push(format!("{} {}/{}", f.name, k.polygons, k.side_incidences));
    }
    let k = TemplateComplex::from_analysis(&analysis("trefoil")).unwrap().counts();
    check(
        (k.internal_walls, k.ring_walls, k.saddles, k.lid_facets, k.polygons) == (9, 3, 15, 6, 33),
        "trefoil totals",
    )?;
    Ok(format!("polygons/edge incidences: {}", rows.join(", ")))
}

fn criterion_6() -> Outcome {
    // Hand count on the trefoil complex: 36 saddle-point vertices (12 per
    // crossing), the central star at two heights, 3 circle vertices at two
    // heights gives V = 44; E = 76 and F = 9 + 3 + 15 + 6 = 33, so chi = 1.
    const HAND: i64 = 44 - 76 + 33;
    let mut seen = Vec::new();
    for f in fixtures() {
        let tc = TemplateComplex::from_analysis(&Analysis::of(&f.diagram()).unwrap()).unwrap();
        let chi = tc.euler_characteristic();
        check(chi == HAND, format!("{}: chi = {chi}", f.name))?;
        seen.push(chi);
    }
    let t = TemplateComplex::from_analysis(&analysis("trefoil")).unwrap().counts();
    check((t.vertices, t.edges, t.polygons) == (44, 76, 33), "trefoil hand count")?;
    Ok(format!("chi = {HAND} on all {} fixtures", seen.len()))
}

fn criterion_7() -> Outcome {
    let t0 = Instant::now();
    let mut notes = Vec::new();
    for (name, cases) in [("trefoil-shadow", 8), ("figure-eight-shadow", 16)] {
        let rows =
            scan_assignments(&fixture(name).unwrap().diagram(), &ScanOptions::default()).map_err(|e| e.to_string())?;
        check(rows.len() == cases, format!("{name}: {} cases", rows.len()))?;
        let best = rows.iter().map(|r| r.complexity).fold(0.0, f64::max);
        let alt: Vec<_> = rows.iter().filter(|r| r.alternating).collect();
        check(alt.len() == 2, format!("{name}: {} alternating assignments", alt.len()))?;
        check(
            alt.iter().all(|r| r.complexity == best),
            format!(
                "{name}: alternating {:?} vs best {best}",
                alt.iter().map(|r| r.complexity).collect::<Vec<_>>()
            ),
        )?;
        for r in &rows {
            check(
                (3.0..=4.0).contains(&r.arithmetic_mean),
                format!("{name} mask {:b}: mean {}", r.mask, r.arithmetic_mean),
            )?;
        }
        notes.push(format!("{name} max {best:.3}"));
    }
    let took = t0.elapsed();
    check(took < Duration::from_secs(5), format!("took {took:?}"))?;
    Ok(format!("{}, {took:?}", notes.join(", ")))
}

/// Per-call wall time of `f`: the fastest of several batches, each long
/// enough to fill `budget`. The minimum shrugs off scheduler noise.
fn time_it(budget: Duration, mut f: impl FnMut()) -> f64 {
    (0..5)
        .map(|_| {
            let t0 = Instant::now();
            let mut reps = 0u32;
            while t0.elapsed() < budget || reps < 2 {
                f();
                reps += 1;
            }
            t0.elapsed().as_secs_f64() / reps as f64
        })
        .fold(f64::INFINITY, f64::min)
}

fn criterion_8() -> Outcome {
    let sizes: Vec<usize> = std::iter::once(3).chain((1..=20).map(|k| 10 * k)).collect();
    let diagrams: Vec<Diagram> = sizes.iter().map(|&c| torus_two(c).unwrap()).collect();
    let build = |d: &Diagram| {
        let a = Analysis::of(d).unwrap();
        let tc = TemplateComplex::from_analysis(&a).unwrap();
        std::hint::black_box((a.presentation.relator_count(), tc.polygons.len()));
    };
    for d in &diagrams {
        build(d);
    }
    let mut worst = 0.0f64;
    let mut best_r2 = f64::NEG_INFINITY;
    // the fit is repeated a few times and the best taken, to ride out noise
    // from other tests running on the same machine
    for _ in 0..3 {
        let times: Vec<f64> = diagrams
            .iter()
            .map(|d| time_it(Duration::from_millis(10), || build(d)))
            .collect();
        worst = worst.max(times.iter().cloned().fold(0.0, f64::max));
        let xs: Vec<f64> = diagrams.iter().map(|d| d.crossing_count() as f64).collect();
        best_r2 = best_r2.max(common::r_squared(&xs, &times));
        if best_r2 > 0.99 {
            break;
        }
    }
    check(worst < 1.0, format!("slowest instance {worst:.3} s"))?;
    check(best_r2 > 0.99, format!("R^2 = {best_r2:.4}"))?;
    Ok(format!("C = 3..200, R^2 = {best_r2:.4}, slowest {:.2} ms", worst * 1e3))
}

fn criterion_9() -> Outcome {
    let mut diagrams: Vec<(String, Diagram)> = catalog::fixtures()
        .into_iter()
        .map(|f| (f.name.to_string(), f.diagram()))
        .collect();
    diagrams.extend(
        common::random_diagrams(1000, 0x6b6e6f74)
            .into_iter()
            .map(|(w, d)| (format!("braid {w:?}"), d)),
    );
    let limits = TietzeLimits {
        max_letters: 20_000,
        ..TietzeLimits::default()
    };
    let mut failures = Vec::new();
    let mut steps = 0usize;
    for (i, (name, d)) in diagrams.iter().enumerate() {
        let mut fail = |what: String| failures.push(format!("{name}: {what}"));
        let a = Analysis::of(d).unwrap();
        let m = Analysis::of(&d.mirror().unwrap()).unwrap();
        let (x, y) = (
            complexity(&a.presentation).unwrap(),
            complexity(&m.presentation).unwrap(),
        );
        if x.geometric_mean != y.geometric_mean {
            fail(format!(
                "mirror complexity {} vs {}",
                x.geometric_mean, y.geometric_mean
            ));
        }
        let mu = d.component_count();
        let k = d.crossing_count();
        for j in [i % k, (i * 7 + 3) % k] {
            if d.flip_crossing(j).unwrap().component_count() != mu {
                fail(format!("flipping crossing {j} changed the component count"));
            }
        }
        if !a.medial.is_bipartite() {
            fail("medial graph not bipartite".into());
        }
        if a.medial.contracted_face_sizes().iter().any(|&s| s != 4) {
            fail(format!("medial faces {:?}", a.medial.contracted_face_sizes()));
        }
        let want = abelianization(&a.presentation);
        if want != z_to_the(mu) {
            fail(format!("abelianization {want}"));
        }
        tietze_simplify_observed(&a.presentation, limits, &mut |step, q| {
            steps += 1;
            if abelianization(q) != want {
                fail(format!("{step:?} changed the abelianization"));
            }
        });
    }
    check(
        failures.is_empty(),
        format!(
            "{} failures, first: {}",
            failures.len(),
            failures.first().cloned().unwrap_or_default()
        ),
    )?;
    Ok(format!(
        "{} diagrams, {steps} Tietze steps checked, 0 failures",
        diagrams.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 trefoil raw presentation", criterion_1),
        ("2 trefoil-like unknot complexity", criterion_2),
        ("3 Tietze final forms", criterion_3),
        ("4 presentation sizes and abelianization", criterion_4),
        ("5 template counts", criterion_5),
        ("6 Euler characteristic", criterion_6),
        ("7 assignment scans", criterion_7),
        ("8 linear scaling", criterion_8),
        ("9 property suite", criterion_9),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
