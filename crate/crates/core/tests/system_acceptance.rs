//! Acceptance suite: one pass/fail line per criterion, exact arithmetic
//! throughout, each criterion timed against its budget.
//!
//! Run with `cargo test -p eulersym-core --test system_acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use eulersym::catalog::{build_family, component_count_check, Family, ProductSpec};
use eulersym::legendre::{
    double_transform_check, legendre_transform, verify_gradient_identities, IdentityMode, LegendreConfig,
};
use eulersym::linalg::{int, Scalar};
use eulersym::poly::{binomial, squarefree_probe, Monomial, Polynomial};
use eulersym::rng;
use eulersym::symbol::{
    rank_symmetry_check, symbol_system_of, verify_symbol_system, GradedSubspace, SymbolFailure, SymbolSystem,
    SymbolVerdict,
};
use eulersym::variety::{
    bb_limit, boundary_points, quadric_relations, reaching_direction, relation_membership, smoothness_report,
    torus_act, translate, AmbientPoint, AmbientSpace, LimitDirection, SmoothnessConfig, SmoothnessVerdict,
};
use num_traits::{One, Zero};

struct Outcome {
    passed: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            passed: true,
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.notes.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn all_entries() -> Vec<Family> {
    let mut out = vec![Family::XCubed];
    out.extend((1..=8).map(Family::Quad));
    out.extend((1..=8).map(Family::QuadLine));
    out.extend((1..=8).map(Family::MonProd));
    out.extend((1..=4).map(Family::Det));
    out.extend((1..=4).map(Family::SymDet));
    out.extend([2, 4, 6, 8].map(Family::Pfaff));
    out.push(Family::Cartan);
    out
}

fn mono(exps: &[u32]) -> Polynomial {
    Polynomial::monomial(Monomial::new(exps.to_vec()), Scalar::one())
}

fn profile_str(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    let mut table: Vec<(Family, Vec<usize>, usize)> = vec![(Family::XCubed, vec![1, 1, 1, 1], 4)];
    for n in 1..=8 {
        table.push((Family::Quad(n), vec![1, n, 1], n + 2));
    }
    for m in 1..=6 {
        table.push((Family::MonProd(m), (0..=m).map(|k| binomial(m, k)).collect(), 1 << m));
    }
    table.extend([
        (Family::Det(2), vec![1, 4, 1], 6),
        (Family::Det(3), vec![1, 9, 9, 1], 20),
        (Family::SymDet(3), vec![1, 6, 6, 1], 14),
        (Family::Pfaff(6), vec![1, 15, 15, 1], 32),
        (Family::Cartan, vec![1, 27, 27, 1], 56),
    ]);
    for (family, profile, ambient) in table {
        let e = build_family(family);
        let s = symbol_system_of(&e.polynomial).expect("catalog polynomial");
        let got = s.system.profile();
        out.require(
            got == profile && s.system.ambient_dim() == ambient,
            format!("{family}: got {} / {}", profile_str(&got), s.system.ambient_dim()),
        );
        out.require(
            e.expected.profile == profile && e.expected.ambient_dim == ambient,
            format!("{family}: stored expectation differs"),
        );
    }
    let labels = [
        (Family::Det(2), "Grassmannian variety Gr(2,4)"),
        (Family::Det(3), "Grassmannian variety Gr(3,6)"),
        (Family::Pfaff(6), "Spinor variety"),
        (Family::SymDet(3), "Lagrangian Grassmannian LG(3,6)"),
        (Family::Cartan, "27-dimensional E_7/P_7"),
    ];
    for (family, text) in labels {
        let label = build_family(family).expected.labels[0].to_string();
        out.require(label.contains(text), format!("{family}: label `{label}`"));
    }
    for n in 2..=8 {
        let label = build_family(Family::Quad(n)).expected.labels[0].to_string();
        out.require(label.contains("hyperquadric"), format!("quad[{n}]: label `{label}`"));
    }
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    for family in all_entries() {
        let e = build_family(family);
        let s = symbol_system_of(&e.polynomial).expect("catalog polynomial");
        let verdict = verify_symbol_system(&s.system);
        out.require(verdict.passed(), format!("{family}: {verdict:?}"));
    }
    // F^2 = <x^2>, F^3 = <y^3>: ι_{e_2} y^3 leaves F^2
    let comps = vec![
        GradedSubspace::full(0, 2),
        GradedSubspace::full(1, 2),
        GradedSubspace::span(2, 2, &[mono(&[2, 0])]).unwrap(),
        GradedSubspace::span(3, 2, &[mono(&[0, 3])]).unwrap(),
    ];
    let bad = SymbolSystem::from_components(2, comps).unwrap();
    match verify_symbol_system(&bad) {
        SymbolVerdict::Fail(SymbolFailure::Inclusion { witness, direction, .. }) => {
            out.require(witness == mono(&[0, 3]) && direction == 1, "negative case: wrong witness");
            out.note(format!("negative case rejected with witness {witness} along e{}", direction + 1));
        }
        other => out.require(false, format!("negative case not rejected: {other:?}")),
    }
    out
}

fn random_form(rng: &mut rng::SeededRng, m: usize, r: u32) -> Polynomial {
    use rand::Rng;
    loop {
        let monos = eulersym::poly::monomials_of_degree(m, r);
        let terms = monos.into_iter().filter_map(|mo| {
            let keep = rng.gen_bool(0.4);
            let c: i64 = rng.gen_range(-5..=5);
            (keep && c != 0).then(|| (mo, int(c)))
        });
        let p = Polynomial::from_terms(m, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    for family in all_entries() {
        let e = build_family(family);
        let rep = rank_symmetry_check(&e.polynomial).expect("catalog polynomial");
        out.require(rep.symmetric(), format!("{family}: ranks {}", profile_str(&rep.ranks)));
    }
    use rand::Rng;
    let mut rng = rng::seeded(2024, 0);
    for i in 0..25 {
        let m = rng.gen_range(1..=4);
        let r = rng.gen_range(1..=4);
        let p = random_form(&mut rng, m, r);
        let rep = rank_symmetry_check(&p).unwrap();
        out.require(rep.symmetric(), format!("random {i} ({p}): ranks {}", profile_str(&rep.ranks)));
    }
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    let config = LegendreConfig::default();
    let certified = LegendreConfig {
        certify: true,
        ..config.clone()
    };
    let entries = all_entries().into_iter().map(build_family).filter(|e| e.expected.degree >= 2);
    for entry in entries {
        let family = entry.family;
        let p = entry.polynomial;
        let res = legendre_transform(&p, &certified).expect("catalog polynomial");
        let Some(ps) = res.transform() else {
            out.require(false, format!("{family}: status {}", res.status.name()));
            continue;
        };
        out.require(res.verified_points == 64, format!("{family}: verified {} points", res.verified_points));
        out.require(res.certified, format!("{family}: certificate missing"));
        let round = double_transform_check(&p, &config).expect("ekp");
        out.require(round.round_trip, format!("{family}: P_** != P"));
        let ids = verify_gradient_identities(&p, ps, IdentityMode::Symbolic).expect("same shape");
        out.require(ids.holds(), format!("{family}: gradient identities {ids:?}"));
    }
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    for family in all_entries() {
        let e = build_family(family);
        let m = e.polynomial.nvars();
        if m > 15 {
            continue;
        }
        let space = AmbientSpace::new(&e.polynomial).unwrap();
        let mut rng = rng::seeded(5, m as u64);
        let mut done = 0;
        while done < 100 {
            let t = rng::int_vector(&mut rng, 1, 6).remove(0);
            let w = rng::int_vector(&mut rng, m, 6);
            let v = rng::int_vector(&mut rng, m, 6);
            let Ok(x) = space.embed(&t, &w) else { continue };
            let moved: Vec<Scalar> = w.iter().zip(&v).map(|(a, b)| a + &t * b).collect();
            let lhs = translate(&space, &v, &x).unwrap();
            let rhs = space.embed(&t, &moved).unwrap();
            if lhs != rhs {
                out.require(false, format!("{family}: translate(v, embed(t,w)) != embed(t, w+tv)"));
                break;
            }
            done += 1;
        }
        let boundary = boundary_points(&space, 3, 5).unwrap();
        for (i, b) in boundary.iter().enumerate() {
            let v1 = rng::int_vector(&mut rng, m, 4);
            let v2 = rng::int_vector(&mut rng, m, 4);
            let sum: Vec<Scalar> = v1.iter().zip(&v2).map(|(a, b)| a + b).collect();
            let lhs = translate(&space, &v1, &translate(&space, &v2, &b.point).unwrap()).unwrap();
            let rhs = translate(&space, &sum, &b.point).unwrap();
            out.require(lhs == rhs, format!("{family}: group law fails at boundary point {i}"));
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    for family in all_entries() {
        let e = build_family(family);
        let m = e.polynomial.nvars();
        let r = e.expected.degree;
        let space = AmbientSpace::new(&e.polynomial).unwrap();
        let o = space.origin();
        let z = space.terminal_point();
        let mut rng = rng::seeded(6, m as u64);
        let mut done = 0;
        while done < 50 {
            let w = rng::int_vector(&mut rng, m, 6);
            if e.polynomial.evaluate(&w).unwrap().is_zero() {
                continue;
            }
            let x = space.embed(&Scalar::one(), &w).unwrap();
            let (low, i) = bb_limit(&x, LimitDirection::ToZero);
            let (high, k) = bb_limit(&x, LimitDirection::ToInfinity);
            let mut ok = low.projectively_eq(&o) && i == 0 && high.projectively_eq(&z) && k == r;
            ok &= low.is_torus_fixed() && high.is_torus_fixed();
            let lambda = rng::nonzero_rational(&mut rng, 7);
            for fixed in [&low, &high] {
                ok &= torus_act(&lambda, fixed).unwrap().projectively_eq(fixed);
            }
            let scaled: Vec<Scalar> = w.iter().map(|c| c * &lambda).collect();
            ok &= torus_act(&lambda, &x)
                .unwrap()
                .projectively_eq(&space.embed(&Scalar::one(), &scaled).unwrap());
            if !ok {
                out.require(false, format!("{family}: torus/limit property fails at sample {done}"));
                break;
            }
            done += 1;
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let mut distinct_total = 0;
    for family in all_entries() {
        let e = build_family(family);
        let space = AmbientSpace::new(&e.polynomial).unwrap();
        let points = boundary_points(&space, 3, 7).unwrap();
        out.require(points.len() >= 3, format!("{family}: only {} boundary points", points.len()));
        let mut distinct: Vec<&AmbientPoint> = Vec::new();
        for b in &points {
            out.require(b.point.is_boundary(), format!("{family}: `{}` is not a boundary point", b.construction));
            if !distinct.iter().any(|d| d.projectively_eq(&b.point)) {
                distinct.push(&b.point);
            }
            let v = reaching_direction(&space, &b.point, 50, 7).unwrap();
            out.require(v.is_some(), format!("{family}: no sampled v reaches z from `{}`", b.construction));
        }
        distinct_total += distinct.len();
        if distinct.len() < 3 {
            out.note(format!(
                "{family}: {} distinct rational boundary point(s) among {} constructions",
                distinct.len(),
                points.len()
            ));
        }
    }
    out.note(format!("{distinct_total} distinct boundary points in total"));
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    for family in all_entries() {
        let e = build_family(family);
        if e.expected.degree < 2 {
            continue;
        }
        let m = e.polynomial.nvars();
        let space = AmbientSpace::new(&e.polynomial).unwrap();
        let relations = quadric_relations(&space).unwrap();
        if m <= 9 {
            let coords = space.embedding_polynomials();
            for rel in &relations {
                let ok = rel.poly.substitute(&coords).unwrap().is_zero();
                out.require(ok, format!("{family}: relation ({}, {}) does not vanish", rel.weight, rel.index));
            }
        } else {
            let mut rng = rng::seeded(8, m as u64);
            let mut done = 0;
            while done < 20 {
                let t = rng::int_vector(&mut rng, 1, 9).remove(0);
                let w = rng::int_vector(&mut rng, m, 9);
                let Ok(x) = space.embed(&t, &w) else { continue };
                let coords = x.coordinates();
                for rel in &relations {
                    let ok = rel.poly.evaluate(&coords).unwrap().is_zero();
                    out.require(ok, format!("{family}: relation ({}, {}) fails at a sample", rel.weight, rel.index));
                }
                done += 1;
            }
        }
    }
    let xy = AmbientSpace::new(&mono(&[1, 1])).unwrap();
    let bad = AmbientPoint::new(
        vec![vec![int(1)], vec![int(0), int(0)], vec![int(1)]],
        &xy.block_dims(),
    )
    .unwrap();
    out.require(!relation_membership(&xy, &bad).unwrap(), "[1:0:0:1] accepted for xy");
    out
}

fn criterion_9() -> Outcome {
    let mut out = Outcome::new();
    let entries: Vec<_> = all_entries().into_iter().map(build_family).collect();
    let ambient: Vec<usize> = entries
        .iter()
        .map(|e| symbol_system_of(&e.polynomial).unwrap().system.ambient_dim())
        .collect();
    let mut pairs = 0;
    for i in 0..entries.len() {
        for j in i..entries.len() {
            let (a, b) = (&entries[i], &entries[j]);
            if a.polynomial.nvars() + b.polynomial.nvars() > 12 {
                continue;
            }
            let spec = ProductSpec::new(vec![a.clone(), b.clone()]).unwrap();
            let got = symbol_system_of(&spec.polynomial()).unwrap().system.ambient_dim();
            out.require(
                got == ambient[i] * ambient[j] && got == spec.expected().ambient_dim,
                format!("{} x {}: ambient {got} vs {}", a.name(), b.name(), ambient[i] * ambient[j]),
            );
            pairs += 1;
        }
    }
    out.note(format!("{pairs} pairs checked for ambient multiplicativity"));
    let mut specs = vec!["monprod[1],monprod[1]".to_string()];
    specs.extend((2..=4).map(|m| format!("monprod[{m}]")));
    specs.extend(["monprod[2],monprod[1]".to_string(), "monprod[2],monprod[2]".to_string()]);
    specs.extend((1..=4).map(|m| format!("quadline[{m}]")));
    specs.push("quad[3],monprod[1]".to_string());
    let config = LegendreConfig::default();
    for text in specs {
        let spec = ProductSpec::parse(&text).unwrap();
        match component_count_check(&spec, &config) {
            Ok(rep) => out.require(
                rep.passes() && rep.computed_factors == Some(rep.expected_factors),
                format!("{text}: {rep:?}"),
            ),
            Err(err) => out.require(false, format!("{text}: {err}")),
        }
    }
    out
}

fn criterion_10() -> Outcome {
    let mut out = Outcome::new();
    let config = LegendreConfig::default();
    let x2y = mono(&[2, 1]);
    let res = legendre_transform(&x2y, &config).unwrap();
    let fails_ekp = !res.is_ekp();
    out.require(
        fails_ekp,
        format!(
            "x^2*y is EKP: status {}, P_* = {}, rigorous {}",
            res.status.name(),
            res.transform().map(ToString::to_string).unwrap_or_default(),
            res.rigorous
        ),
    );
    if let Some(ps) = res.transform() {
        let certified = eulersym::legendre::identity_defect(&x2y, ps).unwrap().is_zero();
        out.note(format!("P_*(dP) - P^2 expands to zero for x^2*y: {certified}"));
    }
    for (name, p) in [
        ("x^3 + y^3", &mono(&[3, 0]) + &mono(&[0, 3])),
        ("x^2*y + x*y^2", &mono(&[2, 1]) + &mono(&[1, 2])),
    ] {
        let res = legendre_transform(&p, &config).unwrap();
        out.require(!res.is_ekp(), format!("{name} reported EKP"));
        out.note(format!("control {name}: {} (rigorous {})", res.status.name(), res.rigorous));
    }

    let x3 = mono(&[3]);
    let res = legendre_transform(&x3, &config).unwrap();
    out.require(res.is_ekp() && res.verified_points == 64, "x^3 is not EKP");
    let probe = squarefree_probe(&x3, 4, 0).unwrap();
    out.require(!probe.is_squarefree(), "x^3 not flagged by the squarefree probe");

    let mut inputs: Vec<(String, Polynomial)> = all_entries()
        .into_iter()
        .map(build_family)
        .filter(|e| e.expected.degree >= 2 && e.polynomial.nvars() <= 9)
        .map(|e| (e.name(), e.polynomial))
        .collect();
    inputs.push(("x^2*y".into(), x2y));
    inputs.push(("x^3 + y^3".into(), &mono(&[3, 0]) + &mono(&[0, 3])));
    let sconfig = SmoothnessConfig::default();
    for (name, p) in inputs {
        let rep = smoothness_report(&p, &sconfig).unwrap();
        let text = rep.verdict.to_string();
        let necessary_only = matches!(
            rep.verdict,
            SmoothnessVerdict::FailsNecessaryCondition(_) | SmoothnessVerdict::PassesAllImplementedConditions
        ) && (text.starts_with("fails necessary condition") || text == "passes all implemented necessary conditions");
        out.require(necessary_only && text != "smooth", format!("{name}: verdict `{text}`"));
    }
    out
}

/// Id, title, time budget in seconds, and the check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (1, "catalog profiles and labels", 60, criterion_1),
        (2, "symbol-system verification", 30, criterion_2),
        (3, "catalecticant rank symmetry", 60, criterion_3),
        (4, "Legendre suite", 300, criterion_4),
        (5, "action consistency and group law", 120, criterion_5),
        (6, "torus and fixed-point limits", 60, criterion_6),
        (7, "boundary reachability", 60, criterion_7),
        (8, "relations on the embedded locus", 60, criterion_8),
        (9, "products and component counts", 60, criterion_9),
        (10, "negative controls", 30, criterion_10),
    ];
    let mut failed = 0;
    for (id, title, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= Duration::from_secs(budget);
        let passed = outcome.passed && in_budget;
        if !passed {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {}: {title} ({:.1}s, budget {budget}s)",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        if !in_budget {
            println!("    over time budget");
        }
        for note in outcome.notes {
            println!("    {note}");
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
