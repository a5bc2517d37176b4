//! End-to-end acceptance checks; run with `cargo test --test acceptance`.
//! Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

mod common;

use std::panic;
use std::time::Instant;

use common::*;
use noether::cm::{cm_basis, domination};
use noether::diffop::{module_membership, verify_noetherian, DiffOp};
use noether::linalg;
use noether::membership::{
    extension_test, ideal_member, kollekt_member, norm_equiv, norm_eval, CofactorOracle,
    ExtensionResult, PuncturedFunction,
};
use noether::noetherian::{
    default_tilts, fan1_express, generic_points, gens_from_ch, gens_from_tilts, kollekt_gens,
    vandermonde_matrix, vandermonde_solve, IdealSpec, NoetherianGens, Provenance,
};
use noether::poly::{rat, simplex_count, Dims, Monomial, MultiIndex, Poly, Rational};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mixed_partials(m: u32) -> Vec<DiffOp> {
    let d = Dims::new(1, 1);
    let mut out = Vec::new();
    for k in 0..=m {
        for j in 0..=k {
            out.push(DiffOp::derivative(d, mi(&[k - j]), mi(&[j])));
        }
    }
    out
}

fn two_way(a: &[DiffOp], b: &[DiffOp]) -> Result<(), String> {
    for (x, y) in [(a, b), (b, a)] {
        for o in x {
            let c =
                module_membership(o, y).ok_or_else(|| format!("{o} not in the other module"))?;
            ensure(c.combine(y, o.dims()) == *o, || {
                format!("combination for {o} does not recombine")
            })?;
        }
    }
    Ok(())
}

fn tilt_reconstruction() -> Outcome {
    for m in 1..=3 {
        let j = line_ideal(m);
        let tilts = default_tilts(&j).map_err(|e| e.to_string())?;
        ensure(tilts.len() == (m + 1) as usize, || {
            format!("m={m}: {} tilts", tilts.len())
        })?;
        let g = gens_from_tilts(&line_data(m), &j, &tilts).map_err(|e| e.to_string())?;
        two_way(g.ops(), &mixed_partials(m)).map_err(|e| format!("m={m}: {e}"))?;
    }
    Ok("m = 1, 2, 3 module-equal both ways".into())
}

fn golden_plane_example() -> Outcome {
    let d = d22();
    let g = plane_gens();
    let expected = [
        (mi(&[1, 0]), mi(&[0, 0]), "z2"),
        (mi(&[0, 1]), mi(&[0, 0]), "z1"),
        (mi(&[0, 0]), mi(&[1, 0]), "0"),
        (mi(&[0, 0]), mi(&[0, 1]), "0"),
        (mi(&[1, 0]), mi(&[1, 0]), "z2*dz1"),
        (mi(&[0, 1]), mi(&[1, 0]), "z1*dz1 + 1"),
        (mi(&[1, 0]), mi(&[0, 1]), "z2*dz2 + 1"),
        (mi(&[0, 1]), mi(&[0, 1]), "z1*dz2"),
        (mi(&[1, 1]), mi(&[0, 0]), "z1*dw1 + z2*dw2"),
    ];
    for (m, beta, s) in &expected {
        let prov = Provenance::Datum {
            datum: 1,
            m: m.clone(),
            beta: beta.clone(),
        };
        let got = g
            .find(&prov)
            .ok_or_else(|| format!("missing operator {prov}"))?;
        ensure(got.is_expanded() && got.to_string() == *s, || {
            format!("{prov}: got {got}, expected {s}")
        })?;
    }
    let listed: std::collections::BTreeSet<String> =
        expected.iter().map(|(_, _, s)| s.to_string()).collect();
    let image_set = [
        "z1",
        "z2",
        "0",
        "z2*dz1",
        "z1*dz1 + 1",
        "z2*dz2 + 1",
        "z1*dz2",
        "z1*dw1 + z2*dw2",
    ];
    ensure(
        listed == image_set.iter().map(|s| s.to_string()).collect(),
        || "image set differs".into(),
    )?;
    for (o, prov) in g.iter() {
        match prov {
            Provenance::Datum { datum: 0, .. } => {
                ensure(o.to_string() == "1", || format!("{prov}: {o}"))?
            }
            Provenance::Datum { m, beta, .. }
                if !expected.iter().any(|(em, eb, _)| em == m && eb == beta) =>
            {
                ensure(o.is_zero(), || format!("{prov}: expected zero, got {o}"))?
            }
            _ => {}
        }
    }

    let reference = NoetherianGens::new(
        d,
        "reference",
        [
            "1",
            "z1*dz1",
            "z2*dz1",
            "z1*dz2",
            "z2*dz2",
            "z1*dw1 + z2*dw2",
        ]
        .iter()
        .map(|s| (op(s, d), Provenance::Ambient { partial: None }))
        .collect(),
    )
    .map_err(|e| e.to_string())?;
    let eq = norm_equiv(&g, &reference).map_err(|e| e.to_string())?;
    let mut rng = rng(2);
    let phis: Vec<Poly> = (0..6).map(|_| random_poly(&mut rng, d, 3, 5)).collect();
    let coords = [
        rat(-2),
        rat(-1),
        Rational::new(1.into(), 2.into()),
        rat(1),
        rat(3),
    ];
    let mut points = 0;
    for a in &coords {
        for b in &coords {
            let pt = vec![a.clone(), b.clone()];
            let bounds = eq.bounds_at(&pt).map_err(|e| e.to_string())?;
            for phi in &phis {
                let na = norm_eval(phi, &g, &pt).map_err(|e| e.to_string())?.squared;
                let nb = norm_eval(phi, &reference, &pt)
                    .map_err(|e| e.to_string())?
                    .squared;
                ensure(
                    na <= &bounds.a_le_b * &nb && nb <= &bounds.b_le_a * &na,
                    || format!("bounds fail at {pt:?} for {phi}: {na} vs {nb}"),
                )?;
            }
            points += 1;
        }
    }
    Ok(format!(
        "9 operators exact, norm equivalence certified at {points} points"
    ))
}

fn duality_vs_cofactors() -> Outcome {
    let ideals: Vec<(&str, IdealSpec, NoetherianGens)> = (1..=3)
        .map(|m| {
            let j = line_ideal(m);
            let g = gens_from_ch(&line_data(m), &j).unwrap();
            ("line", j, g)
        })
        .chain([("plane", plane_ideal(), plane_gens())])
        .collect();
    let mut rng = rng(3);
    let mut summary = Vec::new();
    for (name, j, g) in &ideals {
        let mut oracle = CofactorOracle::new(j.gens());
        let (mut members, mut escalated) = (0, 0);
        for i in 0..200 {
            let phi = if i % 2 == 0 {
                let e = random_ideal_element(&mut rng, j, 4);
                if i % 4 == 0 {
                    &e + &random_poly(&mut rng, j.dims(), 4, 1)
                } else {
                    e
                }
            } else {
                random_poly(&mut rng, j.dims(), 4, 4)
            };
            let deg = match phi.total_degree() {
                noether::poly::Degree::Finite(d) => d,
                noether::poly::Degree::NegInfinity => 0,
            };
            let dual = ideal_member(&phi, g).map_err(|e| e.to_string())?.member;
            let mut found = oracle.contains(&phi, deg + 2);
            if dual && !found {
                escalated += 1;
                found = oracle.contains(&phi, deg + 4);
            }
            ensure(dual == found, || {
                format!("{name} M={}: disagreement on {phi} (duality {dual})", j.m())
            })?;
            members += usize::from(dual);
        }
        summary.push(format!(
            "{name} M={}: {members}/200 members, {escalated} escalations",
            j.m()
        ));
    }
    Ok(summary.join("; "))
}

fn fan1_identities() -> Outcome {
    let mut count = 0;
    for (n, p) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let dims = Dims::new(n, p);
        let caps: Vec<MultiIndex> = MultiIndex::boxed(&MultiIndex::new(vec![2; p]));
        for cap in caps {
            let gens: Vec<Poly> = (0..p)
                .map(|k| Poly::w(dims, k).pow(cap.get(k) + 1))
                .collect();
            let j = IdealSpec::asserted(gens, cap.clone()).unwrap();
            let tilts = default_tilts(&j).map_err(|e| e.to_string())?;
            let monos = Monomial::up_to_degree(dims, 4);
            for m in MultiIndex::boxed(&cap) {
                for beta in MultiIndex::simplex(n, cap.abs() - m.abs()) {
                    let e = fan1_express(&m, &beta, &j, &tilts)
                        .map_err(|e| format!("{m} {beta}: {e}"))?;
                    let lhs = DiffOp::derivative(dims, m.clone(), beta.clone());
                    let rhs = e.to_op(dims, &tilts).map_err(|e| e.to_string())?;
                    for mono in &monos {
                        let phi = Poly::monomial(dims, mono.clone(), rat(1));
                        ensure(lhs.apply(&phi).unwrap() == rhs.apply(&phi).unwrap(), || {
                            format!("dims {dims} M={cap}: {lhs} differs on {mono}")
                        })?;
                    }
                    count += 1;
                }
            }
        }
    }
    let mut inverses = 0;
    for n in 1..=2 {
        for deg in 0..=3 {
            let pts = generic_points(n, deg, simplex_count(n, deg));
            let inv = vandermonde_solve(&pts, deg).map_err(|e| e.to_string())?;
            let size = simplex_count(n, deg);
            ensure(
                linalg::mat_mul(&vandermonde_matrix(&pts, deg), &inv) == linalg::identity(size),
                || format!("B*B^-1 != I for n={n}, degree {deg}"),
            )?;
            inverses += 1;
        }
    }
    Ok(format!(
        "{count} tilt identities exact on monomials of order <= 4, {inverses} Vandermonde inverses"
    ))
}

fn extension_round_trips() -> Outcome {
    let d = d22();
    let mut rng = rng(5);
    let mut oracle = CofactorOracle::new(plane_ideal().gens());
    let unit = PuncturedFunction {
        phi0: random_z_poly(&mut rng, d, 2, 3),
        h: Poly::one(d),
    };
    ensure(
        extension_test(&unit).unwrap() == ExtensionResult::NoExtension,
        || "h = 1 extended".into(),
    )?;
    for i in 0..50 {
        let mut h = random_z_poly(&mut rng, d, 3, 4);
        let c = h.constant_term();
        h = &h - &Poly::constant(d, c);
        let pf = PuncturedFunction {
            phi0: random_z_poly(&mut rng, d, 3, 3),
            h,
        };
        let ext = extension_test(&pf).map_err(|e| e.to_string())?;
        ensure(matches!(ext, ExtensionResult::Extends { .. }), || {
            format!("case {i}: h(0) = 0 not extended")
        })?;
        ensure(ext.round_trip(&pf, &mut oracle, 3), || {
            format!("case {i}: round trip failed for h = {}", pf.h)
        })?;
    }
    Ok("h = 1 rejected, 50 random extensions validated".into())
}

fn domination_direction() -> Outcome {
    let mut rng = rng(6);
    let mut cases: Vec<(String, IdealSpec, NoetherianGens)> = (1..=3)
        .map(|m| {
            (
                format!("line m={m}"),
                line_ideal(m),
                gens_from_ch(&line_data(m), &line_ideal(m)).unwrap(),
            )
        })
        .collect();
    cases.push(("plane".into(), plane_ideal(), plane_gens()));
    let mut worst = Vec::new();
    for (name, j, g) in &cases {
        let basis = cm_basis(j).map_err(|e| e.to_string())?;
        let dims = j.dims();
        let mut max_c = rat(0);
        for _ in 0..10 {
            let pt = random_point(&mut rng, dims.n);
            let mut samples: Vec<Poly> =
                (0..4).map(|_| random_poly(&mut rng, dims, 3, 4)).collect();
            let members: Vec<Poly> = (0..3)
                .map(|_| random_ideal_element(&mut rng, j, 4))
                .collect();
            samples.extend(members.iter().cloned());
            let r = domination(g, &basis, &pt, &samples).map_err(|e| e.to_string())?;
            ensure(r.holds(), || format!("{name}: domination fails at {pt:?}"))?;
            for phi in &members {
                let v = norm_eval(phi, g, &pt).map_err(|e| e.to_string())?.squared;
                ensure(v == rat(0), || {
                    format!("{name}: ideal element {phi} has norm {v}")
                })?;
            }
            max_c = max_c.max(r.c_sq.clone());
        }
        worst.push(format!("{name} C^2 <= {max_c}"));
    }
    Ok(worst.join("; "))
}

fn kollekt_verdicts() -> Outcome {
    let d = Dims::new(2, 0);
    let f = p("z1^2 + z2^2 - 1", d);
    let g = kollekt_gens(&f).map_err(|e| e.to_string())?;
    ensure(g.len() == 3, || format!("{} operators", g.len()))?;
    let f2 = &f * &f;
    let cases = [
        (f2.clone(), true),
        (&p("z1", d) * &f2, true),
        (f.clone(), false),
        (p("z1", d), false),
        (Poly::one(d), false),
    ];
    for (phi, expected) in &cases {
        let v = kollekt_member(phi, &f, &g).map_err(|e| e.to_string())?;
        ensure(v.member == *expected, || format!("{phi}: got {}", v.member))?;
    }
    Ok("5 verdicts correct".into())
}

fn noetherian_soundness() -> Outcome {
    let mut rng = rng(8);
    let mut families: Vec<(String, IdealSpec, NoetherianGens)> = Vec::new();
    for m in 1..=3 {
        let j = line_ideal(m);
        families.push((
            format!("ch line m={m}"),
            j.clone(),
            gens_from_ch(&line_data(m), &j).unwrap(),
        ));
        let t = default_tilts(&j).unwrap();
        families.push((
            format!("tilts line m={m}"),
            j.clone(),
            gens_from_tilts(&line_data(m), &j, &t).unwrap(),
        ));
    }
    let j = plane_ideal();
    families.push(("ch plane".into(), j.clone(), plane_gens()));
    let t = default_tilts(&j).unwrap();
    families.push((
        "tilts plane".into(),
        j.clone(),
        gens_from_tilts(&plane_data(), &j, &t).unwrap(),
    ));
    let mut total = 0;
    for (name, j, g) in &families {
        let elements: Vec<Poly> = (0..200)
            .map(|_| random_ideal_element(&mut rng, j, 5))
            .collect();
        for (o, prov) in g.iter() {
            ensure(verify_noetherian(o, j), || {
                format!("{name} {prov}: not Noetherian")
            })?;
            for e in &elements {
                ensure(o.apply(e).unwrap().is_zero(), || {
                    format!("{name} {prov}: nonzero on {e}")
                })?;
            }
            total += 1;
        }
    }
    let d = Dims::new(2, 0);
    let f = p("z1^2 + z2^2 - 1", d);
    let kg = kollekt_gens(&f).unwrap();
    let f2 = IdealSpec::asserted(vec![&f * &f], MultiIndex::zeros(0)).unwrap();
    for _ in 0..200 {
        let e = random_ideal_element(&mut rng, &f2, 6);
        for o in kg.ops() {
            ensure(o.apply_poly(&e).unwrap().exact_divide(&f).is_ok(), || {
                format!("{o} on {e}")
            })?;
        }
    }
    total += kg.len();
    Ok(format!(
        "{total} operators verified against 200 ideal elements each"
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "tilted families reconstruct mixed partials",
            tilt_reconstruction,
        ),
        (
            "plane example operators and norm equivalence",
            golden_plane_example,
        ),
        ("duality agrees with cofactor oracle", duality_vs_cofactors),
        ("tilt expressions and Vandermonde inverses", fan1_identities),
        ("extension across the origin", extension_round_trips),
        (
            "coefficient norm dominated by operator norm",
            domination_direction,
        ),
        ("membership in <f^2> via first partials", kollekt_verdicts),
        ("every emitted operator is Noetherian", noetherian_soundness),
    ];
    let start = Instant::now();
    let mut failed = 0;
    panic::set_hook(Box::new(|_| {}));
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS ({secs:.2}s) {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL ({secs:.2}s) {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.2}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
