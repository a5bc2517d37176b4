use std::fmt::Write;

use noether::cm::{cm_basis, cm_represent};
use noether::diffop::{module_membership, DiffOp};
use noether::membership::{
    cofactor_member, ideal_member, kollekt_member, norm_eval, MembershipVerdict,
};
use noether::noetherian::kollekt_gens;
use noether::poly::format_point;
use noether::{Dims, Monomial, MultiIndex, NoetherianGens, Poly};
use serde_json::{json, Value};

use crate::report::{Failure, Report, NEGATIVE, OK, VERIFICATION};
use crate::spec::{parse_points, ProblemSpec};

/// Decimal places for displayed square roots.
pub const SQRT_DIGITS: usize = 12;

/// Flags shared by the subcommands.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub phi: Option<String>,
    pub points: Option<String>,
    pub tilts: Option<usize>,
    pub cofactor_bound: Option<u32>,
}

impl Options {
    fn phi(&self, dims: Dims) -> Result<(String, Poly), Failure> {
        let s = self
            .phi
            .as_deref()
            .ok_or_else(|| Failure::usage("--phi is required"))?;
        let phi = Poly::parse(s, dims)
            .map_err(|e| Failure::usage(format!("cannot parse --phi '{s}': {e}")))?;
        Ok((s.to_string(), phi))
    }
}

fn family_json(g: &NoetherianGens) -> Value {
    let ops: Vec<Value> = g
        .iter()
        .enumerate()
        .map(|(i, (op, prov))| json!({ "index": i + 1, "provenance": prov.to_string(), "operator": op.to_string() }))
        .collect();
    json!({ "family": g.label(), "n": g.dims().n, "p": g.dims().p, "operators": ops })
}

fn witness_line(g: &NoetherianGens, v: &MembershipVerdict) -> Option<String> {
    v.witness.as_ref().map(|(i, val)| {
        format!(
            "witness: operator {} ({}) gives {val}",
            i + 1,
            g.provenance()[*i]
        )
    })
}

fn witness_json(g: &NoetherianGens, v: &MembershipVerdict) -> Value {
    match &v.witness {
        Some((i, val)) => json!({
            "operator": i + 1,
            "provenance": g.provenance()[*i].to_string(),
            "value": val.to_string(),
        }),
        None => Value::Null,
    }
}

pub fn gens(spec: &ProblemSpec, opts: &Options) -> Result<Report, Failure> {
    let j = spec.ideal(opts.cofactor_bound)?;
    let g = spec.family(&j, opts.tilts)?;
    let mut text = String::new();
    writeln!(text, "family: {}", g.label()).unwrap();
    writeln!(text, "dims: n={} p={}", g.dims().n, g.dims().p).unwrap();
    writeln!(text, "operators: {}", g.len()).unwrap();
    for (i, (op, prov)) in g.iter().enumerate() {
        writeln!(text, "{}\t{prov}\t{op}", i + 1).unwrap();
    }
    writeln!(text, "verified: {}/{}", g.len(), g.len()).unwrap();
    let mut json = family_json(&g);
    json["verified"] = json!(true);
    Ok(Report::new(text, json, OK))
}

pub fn member(spec: &ProblemSpec, opts: &Options) -> Result<Report, Failure> {
    let j = spec.ideal(opts.cofactor_bound)?;
    let g = spec.family(&j, opts.tilts)?;
    let (s, phi) = opts.phi(j.dims())?;
    let v = ideal_member(&phi, &g).map_err(Failure::from_engine)?;
    let mut text = format!(
        "phi: {s}\nfamily: {} ({} operators)\nmember: {}\n",
        g.label(),
        g.len(),
        yes_no(v.member)
    );
    if let Some(w) = witness_line(&g, &v) {
        writeln!(text, "{w}").unwrap();
    }
    let mut code = if v.member { OK } else { NEGATIVE };
    let mut json = json!({
        "phi": s,
        "family": g.label(),
        "member": v.member,
        "witness": witness_json(&g, &v),
    });
    if let Some(d) = opts.cofactor_bound {
        let found = cofactor_member(&phi, &j, d);
        let note = match (v.member, found) {
            (_, true) => "found",
            (true, false) => "none found, inconclusive",
            (false, false) => "none found",
        };
        writeln!(text, "cofactors (degree <= {d}): {note}").unwrap();
        if found && !v.member {
            writeln!(text, "error: cofactors contradict the operator verdict").unwrap();
            code = VERIFICATION;
        }
        json["cofactors"] = json!({ "bound": d, "found": found });
    }
    Ok(Report::new(text, json, code))
}

pub fn norm(spec: &ProblemSpec, opts: &Options) -> Result<Report, Failure> {
    let j = spec.ideal(opts.cofactor_bound)?;
    let g = spec.family(&j, opts.tilts)?;
    let (s, phi) = opts.phi(j.dims())?;
    let points = match &opts.points {
        Some(p) => parse_points(p, spec.n)?,
        None => spec.points()?,
    };
    if points.is_empty() {
        return Err(Failure::usage(
            "no sample points: pass --points or list them in the problem file",
        ));
    }
    let mut text = format!(
        "phi: {s}\nfamily: {} ({} operators)\npoint\tsquared\tsqrt\n",
        g.label(),
        g.len()
    );
    let mut rows = Vec::new();
    for pt in &points {
        let v = norm_eval(&phi, &g, pt).map_err(Failure::from_engine)?;
        let root = v.sqrt_display(SQRT_DIGITS);
        writeln!(text, "{}\t{}\t{root}", format_point(pt), v.squared).unwrap();
        rows.push(
            json!({ "point": format_point(pt), "squared": v.squared.to_string(), "sqrt": root }),
        );
    }
    Ok(Report::new(
        text,
        json!({ "phi": s, "family": g.label(), "rows": rows }),
        OK,
    ))
}

pub fn basis(spec: &ProblemSpec, opts: &Options) -> Result<Report, Failure> {
    let j = spec.ideal(opts.cofactor_bound)?;
    let b = cm_basis(&j).map_err(Failure::from_engine)?;
    let z = MultiIndex::zeros(j.dims().n);
    let name = |a: &MultiIndex| Monomial::new(z.clone(), a.clone()).to_string();
    let mut text = format!("{b}\n");
    let mut json = json!({
        "basis": b.monomials().iter().map(name).collect::<Vec<_>>(),
        "denominator_locus": b.denominator_locus().to_string(),
    });
    if opts.phi.is_some() {
        let (s, phi) = opts.phi(j.dims())?;
        let coeffs = cm_represent(&phi, &b).map_err(Failure::from_engine)?;
        writeln!(text, "representative of {s}:").unwrap();
        let mut rep = Vec::new();
        for (a, c) in b.monomials().iter().zip(&coeffs) {
            writeln!(text, "{}\t{c}", name(a)).unwrap();
            rep.push(json!({ "monomial": name(a), "coefficient": c.to_string() }));
        }
        json["phi"] = json!(s);
        json["representative"] = json!(rep);
    }
    Ok(Report::new(text, json, OK))
}

pub fn kollekt(spec: &ProblemSpec, opts: &Options) -> Result<Report, Failure> {
    let dims = Dims::new(spec.n, 0);
    let fs = spec
        .f
        .as_deref()
        .ok_or_else(|| Failure::usage("the problem file has no f"))?;
    let f =
        Poly::parse(fs, dims).map_err(|e| Failure::usage(format!("cannot parse f '{fs}': {e}")))?;
    if f.is_zero() {
        return Err(Failure::usage("f must be nonzero"));
    }
    let g = kollekt_gens(&f).map_err(Failure::from_engine)?;
    let (s, phi) = opts.phi(dims)?;
    let v = kollekt_member(&phi, &f, &g).map_err(Failure::from_engine)?;
    let mut text = format!(
        "f: {f}\noperators: {}\nphi: {s}\nmember: {}\n",
        g.len(),
        yes_no(v.member)
    );
    if let Some(w) = witness_line(&g, &v) {
        writeln!(text, "{w}").unwrap();
    }
    let json = json!({
        "f": f.to_string(),
        "operators": g.ops().iter().map(|o| o.to_string()).collect::<Vec<_>>(),
        "phi": s,
        "member": v.member,
        "witness": witness_json(&g, &v),
    });
    Ok(Report::new(
        text,
        json,
        if v.member { OK } else { NEGATIVE },
    ))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub const FIXTURES: [(&str, &str); 5] = [
    ("line1", include_str!("../fixtures/line1.toml")),
    ("line2", include_str!("../fixtures/line2.toml")),
    ("line3", include_str!("../fixtures/line3.toml")),
    ("plane", include_str!("../fixtures/plane.toml")),
    ("kollekt", include_str!("../fixtures/kollekt.toml")),
];

fn fixture(name: &str) -> ProblemSpec {
    let text = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .expect("known fixture")
        .1;
    ProblemSpec::from_toml(text).expect("bundled fixtures parse")
}

fn two_way(a: &[DiffOp], b: &[DiffOp]) -> bool {
    let inside = |x: &[DiffOp], y: &[DiffOp]| {
        x.iter()
            .all(|o| module_membership(o, y).is_some_and(|c| c.combine(y, o.dims()) == *o))
    };
    inside(a, b) && inside(b, a)
}

type Check = (&'static str, fn() -> Result<String, Failure>);

fn check_lines() -> Result<String, Failure> {
    for m in 1..=3u32 {
        let spec = fixture(&format!("line{m}"));
        let g = spec.family(&spec.ideal(None)?, None)?;
        let d = spec.dims();
        let partials: Vec<DiffOp> = (0..=m)
            .flat_map(|k| (0..=k).map(move |j| (k, j)))
            .map(|(k, j)| {
                DiffOp::derivative(d, MultiIndex::new(vec![k - j]), MultiIndex::new(vec![j]))
            })
            .collect();
        if !two_way(g.ops(), &partials) {
            return Err(Failure::verification(format!(
                "m={m}: not the mixed partials"
            )));
        }
    }
    Ok("m = 1, 2, 3 equal to the mixed partials".into())
}

fn check_plane() -> Result<String, Failure> {
    let spec = fixture("plane");
    let j = spec.ideal(None)?;
    let g = spec.family(&j, None)?;
    let printed: Vec<String> = g.ops().iter().map(|o| o.to_string()).collect();
    for want in [
        "z1*dw1 + z2*dw2",
        "z1*dz1 + 1",
        "z2*dz2 + 1",
        "z2*dz1",
        "z1*dz2",
        "z1",
        "z2",
    ] {
        if !printed.iter().any(|s| s == want) {
            return Err(Failure::verification(format!("missing operator {want}")));
        }
    }
    let t = spec.family(&j, Some(3))?;
    if !two_way(g.ops(), t.ops()) {
        return Err(Failure::verification("tilted family differs"));
    }
    Ok(format!("{} operators, tilted family equal", g.len()))
}

fn check_membership() -> Result<String, Failure> {
    let spec = fixture("plane");
    let opts = |phi: &str| Options {
        phi: Some(phi.into()),
        ..Options::default()
    };
    let yes = member(&spec, &opts("w1*w2"))?;
    let no = member(&spec, &opts("w1"))?;
    let k = fixture("kollekt");
    let f = k.f.clone().expect("kollekt fixture has f");
    let sq = kollekt(&k, &opts(&format!("({f})^2")))?;
    let lin = kollekt(&k, &opts(&f))?;
    match (yes.code, no.code, sq.code, lin.code) {
        (OK, NEGATIVE, OK, NEGATIVE) => Ok("w1*w2 in, w1 out; f^2 in, f out".into()),
        codes => Err(Failure::verification(format!(
            "unexpected verdict codes {codes:?}"
        ))),
    }
}

fn check_norm() -> Result<String, Failure> {
    let spec = fixture("line1");
    let r = norm(
        &spec,
        &Options {
            phi: Some("z1 + 3*w1".into()),
            points: Some("2".into()),
            ..Options::default()
        },
    )?;
    match r.json["rows"][0]["squared"].as_str() {
        Some("14") => Ok("|z + 3w|^2 = 14 at z = 2".into()),
        other => Err(Failure::verification(format!("squared norm {other:?}"))),
    }
}

pub const CHECKS: [Check; 4] = [
    ("line families", check_lines),
    ("plane family", check_plane),
    ("membership verdicts", check_membership),
    ("norm value", check_norm),
];

pub fn selftest() -> Report {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failed = 0;
    for (name, check) in CHECKS {
        let (ok, detail) = match check() {
            Ok(d) => (true, d),
            Err(f) => (false, f.msg),
        };
        failed += usize::from(!ok);
        writeln!(
            text,
            "{} {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        )
        .unwrap();
        rows.push(json!({ "check": name, "pass": ok, "detail": detail }));
    }
    writeln!(
        text,
        "{}/{} checks passed",
        CHECKS.len() - failed,
        CHECKS.len()
    )
    .unwrap();
    Report::new(
        text,
        json!({ "checks": rows, "failed": failed }),
        if failed == 0 { OK } else { VERIFICATION },
    )
}
