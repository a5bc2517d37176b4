mod common;

use common::{d22, line_data, line_ideal, mi, op, p, plane_data, plane_gens, plane_ideal, rng};
use noether::diffop::{module_membership, DiffOp};
use noether::membership::{norm_equiv, norm_eval};
use noether::noetherian::{
    default_tilts, gens_from_ch, gens_from_tilts, tilt_grid, tilts_with_count, CHDatum,
    NoetherianGens, Provenance,
};
use noether::poly::{rat, ratio, Dims, Poly, RatFunc, Rational};

fn contained(a: &[DiffOp], b: &[DiffOp]) -> Vec<String> {
    a.iter()
        .filter(|o| match module_membership(o, b) {
            Some(c) => c.combine(b, o.dims()) != **o,
            None => true,
        })
        .map(|o| o.to_string())
        .collect()
}

fn assert_module_equal(a: &NoetherianGens, b: &NoetherianGens) {
    let missing = contained(a.ops(), b.ops());
    assert!(
        missing.is_empty(),
        "{} ⊄ {}: {missing:?}",
        a.label(),
        b.label()
    );
    let missing = contained(b.ops(), a.ops());
    assert!(
        missing.is_empty(),
        "{} ⊄ {}: {missing:?}",
        b.label(),
        a.label()
    );
}

fn family(dims: Dims, label: &str, ops: &[&str]) -> NoetherianGens {
    NoetherianGens::new(
        dims,
        label,
        ops.iter()
            .map(|s| (op(s, dims), Provenance::Ambient { partial: None }))
            .collect(),
    )
    .unwrap()
}

fn scaled(data: &[CHDatum], units: &[&str]) -> Vec<CHDatum> {
    data.iter()
        .zip(units)
        .map(|(d, u)| {
            let u = p(u, d.a().dims());
            CHDatum::new(&u * d.a(), d.m().clone()).unwrap()
        })
        .collect()
}

#[test]
fn line_tilt_families_match_ch_families() {
    for m in 0..=3 {
        let j = line_ideal(m);
        let ch = gens_from_ch(&line_data(m), &j).unwrap();
        let tilted = gens_from_tilts(&line_data(m), &j, &default_tilts(&j).unwrap()).unwrap();
        assert_module_equal(&ch, &tilted);
    }
}

#[test]
fn line_ch_family_is_all_mixed_partials() {
    let d = Dims::new(1, 1);
    let g = gens_from_ch(&line_data(2), &line_ideal(2)).unwrap();
    let partials = family(
        d,
        "partials",
        &["1", "dz1", "dw1", "dz1^2", "dz1*dw1", "dw1^2"],
    );
    assert_module_equal(&g, &partials);
}

#[test]
fn plane_tilt_family_matches_ch_family() {
    let j = plane_ideal();
    let tilts = default_tilts(&j).unwrap();
    assert_eq!(tilts.len(), 9);
    let tilted = gens_from_tilts(&plane_data(), &j, &tilts).unwrap();
    tilted.verify(&j).unwrap();
    assert_module_equal(&plane_gens(), &tilted);
}

#[test]
fn two_points_per_direction_span_a_proper_submodule() {
    let j = plane_ideal();
    let ch = plane_gens();
    for points in [
        vec![vec![rat(0), rat(0)], vec![rat(1), rat(1)]],
        vec![vec![rat(1), rat(2)], vec![rat(3), rat(1)]],
    ] {
        let tilted =
            gens_from_tilts(&plane_data(), &j, &tilt_grid(d22(), &points).unwrap()).unwrap();
        assert!(contained(tilted.ops(), ch.ops()).is_empty());
        let missing = contained(ch.ops(), tilted.ops());
        assert!(missing.contains(&"z2*dz1".to_string()), "{missing:?}");
        assert!(missing.contains(&"z1*dz1 + 1".to_string()), "{missing:?}");
    }
    let three =
        gens_from_tilts(&plane_data(), &j, &tilts_with_count(d22(), 1, 3).unwrap()).unwrap();
    assert_module_equal(&ch, &three);
}

#[test]
fn untilted_submersion_gives_the_beta_zero_operators() {
    for m in 1..=3 {
        let j = line_ideal(m);
        let zero = tilt_grid(Dims::new(1, 1), &[vec![rat(0)]]).unwrap();
        let tilted = gens_from_tilts(&line_data(m), &j, &zero).unwrap();
        let ch = gens_from_ch(&line_data(m), &j).unwrap();
        let beta_zero: Vec<DiffOp> = ch
            .iter()
            .filter(|(_, prov)| matches!(prov, Provenance::Datum { beta, .. } if beta.is_zero()))
            .map(|(o, _)| o.clone())
            .collect();
        assert!(contained(&beta_zero, tilted.ops()).is_empty());
        assert!(contained(tilted.ops(), &beta_zero).is_empty());
    }
}

#[test]
fn unit_multiples_of_densities_give_module_equal_families() {
    for m in 1..=3 {
        let j = line_ideal(m);
        let base = gens_from_ch(&line_data(m), &j).unwrap();
        for u in ["1 + z1 + w1", "3 - 2*w1^2 + z1*w1", "-1/2 + z1^2"] {
            let g = gens_from_ch(&scaled(&line_data(m), &[u]), &j).unwrap();
            assert_module_equal(&base, &g);
        }
    }
    let j = plane_ideal();
    let base = plane_gens();
    for units in [
        ["1 + z1", "2 + w1 + z2"],
        ["1", "1 - z1*w2 + w1"],
        ["5 + z1*z2", "1 + z1 + z2 + w1 + w2"],
    ] {
        let g = gens_from_ch(&scaled(&plane_data(), &units), &j).unwrap();
        g.verify(&j).unwrap();
        assert_module_equal(&base, &g);
    }
}

#[test]
fn zero_density_is_rejected() {
    assert!(CHDatum::new(Poly::zero(d22()), mi(&[1, 1])).is_err());
}

#[test]
fn identical_families_have_identity_transitions() {
    let g = plane_gens();
    let distinct = family(
        d22(),
        "distinct",
        &["1", "z2*dz1", "z1*dz2 + 1", "z1*dw1 + z2*dw2"],
    );
    let eq = norm_equiv(&distinct, &distinct).unwrap();
    for rows in [&eq.a_to_b, &eq.b_to_a] {
        for (i, c) in rows.iter().enumerate() {
            for (k, h) in c.coeffs.iter().enumerate() {
                assert_eq!(h.is_one(), i == k);
                assert_eq!(h.is_zero(), i != k);
            }
        }
    }
    assert!(eq.locus.is_constant());
    let eq = norm_equiv(&g, &g).unwrap();
    let pt = vec![rat(2), rat(-1)];
    let phi = p("z1*w1 + w2^2 + z2", d22());
    let b = eq.bounds_at(&pt).unwrap();
    let n = norm_eval(&phi, &g, &pt).unwrap().squared;
    assert!(n <= &b.a_le_b * &n && n <= &b.b_le_a * &n);
}

#[test]
fn tilts_against_mixed_partials_give_the_vandermonde_transition() {
    let d = Dims::new(1, 1);
    let j = line_ideal(1);
    let tilts = tilt_grid(d, &[vec![rat(0)], vec![rat(1)]]).unwrap();
    let tilted = gens_from_tilts(&line_data(1), &j, &tilts).unwrap();
    let printed: Vec<String> = tilted.ops().iter().map(|o| o.to_string()).collect();
    assert!(
        printed.contains(&"dw1".to_string()) && printed.contains(&"dw1 + dz1".to_string()),
        "{printed:?}"
    );
    let partials = family(d, "partials", &["1", "dz1", "dw1"]);
    let eq = norm_equiv(&partials, &tilted).unwrap();
    let pt = vec![rat(1)];
    let a = eq.a_to_b_at(&pt).unwrap();
    // ∂/∂z is the difference of the two tilted first-order operators
    let dz = &a[1];
    let at = |s: &str| {
        tilted
            .ops()
            .iter()
            .position(|o| o.to_string() == s)
            .unwrap()
    };
    assert_eq!(dz[at("dw1 + dz1")], rat(1));
    assert_eq!(dz[at("dw1")], rat(-1));
    let b = eq.b_to_a_at(&pt).unwrap();
    assert_eq!(b[at("dw1 + dz1")], vec![rat(0), rat(1), rat(1)]);
}

#[test]
fn adding_a_combination_keeps_the_norm_class() {
    let g = plane_gens();
    let c1 = RatFunc::from_poly(p("z1 + 2", d22()));
    let c2 = RatFunc::from_poly(p("z2^2", d22()));
    let extra = g.ops()[4]
        .scale(&c1)
        .checked_add(&g.ops()[9].scale(&c2))
        .unwrap();
    let mut items: Vec<(DiffOp, Provenance)> =
        g.iter().map(|(o, pr)| (o.clone(), pr.clone())).collect();
    items.push((extra, Provenance::Ambient { partial: None }));
    let bigger = NoetherianGens::new(d22(), "extended", items).unwrap();
    let eq = norm_equiv(&g, &bigger).unwrap();
    let mut r = rng(11);
    for pt in [
        vec![rat(1), rat(1)],
        vec![ratio(-3, 2), rat(2)],
        vec![rat(4), ratio(1, 3)],
    ] {
        let b = eq.bounds_at(&pt).unwrap();
        for _ in 0..8 {
            let phi = common::random_poly(&mut r, d22(), 3, 5);
            let na = norm_eval(&phi, &g, &pt).unwrap().squared;
            let nb = norm_eval(&phi, &bigger, &pt).unwrap().squared;
            assert!(na <= &b.a_le_b * &nb, "{phi} at {pt:?}");
            assert!(nb <= &b.b_le_a * &na, "{phi} at {pt:?}");
        }
    }
}

#[test]
fn inequivalent_families_are_reported() {
    let d = Dims::new(1, 1);
    let small = family(d, "small", &["1", "dw1"]);
    let full = family(d, "full", &["1", "dz1", "dw1"]);
    let err = norm_equiv(&small, &full).unwrap_err();
    assert!(err.to_string().contains("dz1"), "{err}");
}

#[test]
fn line_norm_by_direct_application() {
    let d = Dims::new(1, 1);
    let g = family(d, "partials", &["1", "dz1", "dw1"]);
    let n = norm_eval(&p("z1 + 3*w1", d), &g, &[rat(2)]).unwrap();
    assert_eq!(n.squared, rat(14));
    assert!(n.sqrt_display(6).starts_with("3.741657"));
}

#[test]
fn plane_norm_of_w1_comes_from_the_last_operator() {
    let n = norm_eval(&p("w1", d22()), &plane_gens(), &[rat(1), rat(0)]).unwrap();
    assert_eq!(n.squared, rat(1));
}

#[test]
fn norm_is_unchanged_by_coefficient_free_relabelling() {
    let g = plane_gens();
    let reversed = NoetherianGens::new(
        d22(),
        "reversed",
        g.ops()
            .iter()
            .cloned()
            .zip(g.provenance().iter().cloned())
            .rev()
            .collect(),
    )
    .unwrap();
    let pt: Vec<Rational> = vec![ratio(2, 3), rat(-5)];
    let phi = p("z1^2*w2 + w1 - 3*z2", d22());
    assert_eq!(
        norm_eval(&phi, &g, &pt).unwrap().squared,
        norm_eval(&phi, &reversed, &pt).unwrap().squared
    );
}
