//! One handler per subcommand. Each returns a structured report.

use serde_json::{json, Value};

use finsler_core::exact::{self, Rat};
use finsler_core::finsler::{
    check_metric_positivity, compactified_coords, sequence_limit, FinslerFlat, HoroPointFlat, Placement, DIST_TOL,
};
use finsler_core::polytope::{build_unit_ball, dual_ball, verify_cube_structure};
use finsler_core::rootsys::{fundamental_vertices, FinslerFunctional, RootSystem};
use finsler_core::symspace::flags::relative_position;
use finsler_core::symspace::psl3::{self, LimitData, Psl3Example};
use finsler_core::symspace::{
    cartan_projection, delta_distance, flag_limit, limit_set_sample, regularity_stats, relative_position_flags,
    FlagLimitOptions, LimitSetOptions, SlMatrix, SymPoint, SymspaceError, AMBIGUITY_TOL, MERGE_TOL, RANK_TOL,
};
use finsler_core::thickening::{
    complement, enumerate_balanced, metric_thickening, validate_thickening, BalancedOptions, Thickening, ThickeningError,
    ANGLE_TOL,
};
use finsler_core::weyl::{coset_folding_leq, enumerate_weyl, FaceType, RelativePosition};

use crate::parse::{self, usage};
use crate::report::{CliError, Report};

fn fmt_q(v: &[Rat]) -> Vec<String> {
    v.iter().map(exact::format_rat).collect()
}

fn fmt_tuple(v: &[usize]) -> String {
    format!("({})", v.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

fn type_a(n: usize) -> Result<(RootSystem, finsler_core::weyl::WeylGroup), CliError> {
    if n < 2 {
        return Err(usage("matrices must be at least 2x2"));
    }
    parse::root_system(&format!("A{}", n - 1))
}

pub fn rootsys_info(tag: &str, functional: Option<&str>) -> Result<Report, CliError> {
    let (rs, _) = parse::root_system(tag)?;
    let l = parse::functional(&rs, functional)?;
    let info = rs.info();
    let vertices = if l.is_regular() {
        Some(fundamental_vertices(&rs, &l)?.iter().map(|v| fmt_q(v)).collect::<Vec<_>>())
    } else {
        None
    };
    let head = format!(
        "{}: rank {}, {} roots ({} positive)",
        info.cartan_type, info.rank, info.num_roots, info.num_positive_roots
    );
    Ok(Report::new(json!({
        "root_system": info,
        "functional": { "row": fmt_q(l.row()), "regular": l.is_regular() },
        "fundamental_vertices": vertices,
    }))
    .line(head))
}

pub fn weyl_enumerate(tag: &str) -> Result<Report, CliError> {
    let (rs, g) = parse::root_system(tag)?;
    let s = g.summary(&rs);
    let head = format!("|W| = {}, w0 = {} (length {}), iota = {:?}", s.order, s.longest_element, s.longest_length, s.iota);
    Ok(Report::new(serde_json::to_value(&s).expect("serializable")).line(head))
}

pub fn weyl_bruhat(tag: &str, u: &str, w: &str, face: Option<&str>) -> Result<Report, CliError> {
    let (_, g) = parse::root_system(tag)?;
    let a = g.parse_word(u)?;
    let b = g.parse_word(w)?;
    let (leq, geq, shown) = match face {
        None => (g.bruhat_leq(a, b), g.bruhat_leq(b, a), (g.format_word(a), g.format_word(b))),
        Some(f) => {
            let f = FaceType::parse(g.rank(), f)?;
            let c1 = RelativePosition::new(&g, f, a);
            let c2 = RelativePosition::new(&g, f, b);
            (coset_folding_leq(&g, &c1, &c2)?, coset_folding_leq(&g, &c2, &c1)?, (c1.format(&g), c2.format(&g)))
        }
    };
    let head = format!("{} {} {}", shown.0, if leq { "⪯" } else { "⋠" }, shown.1);
    Ok(Report::new(json!({ "u": shown.0, "w": shown.1, "leq": leq, "geq": geq })).line(head))
}

fn thickening_arg(g: &finsler_core::weyl::WeylGroup, elements: &str) -> Result<Thickening, CliError> {
    Ok(Thickening::from_words(g, &parse::words(elements))?)
}

pub fn thickening_classify(tag: &str, elements: &str) -> Result<Report, CliError> {
    let (_, g) = parse::root_system(tag)?;
    let th = thickening_arg(&g, elements)?;
    let c = validate_thickening(&g, &th);
    let head = format!(
        "{}: ideal={} fat={} slim={} balanced={}",
        th.format(&g),
        c.ideal,
        c.fat,
        c.slim,
        c.balanced
    );
    Ok(Report::new(serde_json::to_value(&c).expect("serializable")).line(head))
}

pub fn thickening_complement(tag: &str, elements: &str) -> Result<Report, CliError> {
    let (_, g) = parse::root_system(tag)?;
    let th = thickening_arg(&g, elements)?;
    let c = complement(&g, &th)?;
    let back = complement(&g, &c)?;
    let involutive = back.elements() == th.elements();
    Ok(Report::new(json!({
        "input": th.words(&g),
        "complement": c.words(&g),
        "complement_classification": validate_thickening(&g, &c),
        "involutive": involutive,
        "sizes_sum_to_order": th.len() + c.len() == g.order(),
    }))
    .line(format!("{}^c = {}", th.format(&g), c.format(&g))))
}

pub fn thickening_metric(tag: &str, theta0: &str, theta: &str, radius: &str) -> Result<Report, CliError> {
    let (rs, g) = parse::root_system(tag)?;
    let t0 = parse::real_vec(theta0)?;
    let t = parse::real_vec(theta)?;
    let r = parse::real(radius)?;
    let m = metric_thickening(&rs, &g, &t0, &t, r)?;
    let warnings: Vec<Value> =
        m.warnings.iter().map(|(w, a)| json!({ "element": g.format_word(*w), "angle": a })).collect();
    let mut rep = Report::new(json!({
        "thickening": m.thickening.words(&g),
        "classification": validate_thickening(&g, &m.thickening),
        "radius": r,
        "boundary_warnings": warnings,
        "angle_tolerance": ANGLE_TOL,
    }))
    .line(format!("{} (angle tolerance {ANGLE_TOL:e})", m.thickening.format(&g)));
    for (w, a) in &m.warnings {
        rep = rep.line(format!("warning: {} is at angle {a} within tolerance of the radius", g.format_word(*w)));
    }
    Ok(rep)
}

pub fn thickening_balanced(tag: &str, face: Option<&str>, seed: Option<u64>, samples: usize) -> Result<Report, CliError> {
    let (rs, g) = parse::root_system(tag)?;
    let f = parse::face(g.rank(), face)?;
    let res = match enumerate_balanced(&rs, &g, f, BalancedOptions { seed, samples }) {
        Err(e @ ThickeningError::SeedRequired(_)) => return Err(usage(format!("{e}; pass --seed"))),
        r => r?,
    };
    let list: Vec<Vec<String>> = res.thickenings.iter().map(|t| t.words(&g)).collect();
    let mut rep = Report::new(json!({
        "face": f.to_string(),
        "mode": res.mode,
        "count": list.len(),
        "thickenings": list,
        "degenerate_samples": res.degenerate_samples,
        "seed": seed,
        "angle_tolerance": ANGLE_TOL,
    }))
    .line(format!("{} balanced thickening(s) for face type {f}", list.len()));
    for t in &res.thickenings {
        rep = rep.line(t.format(&g));
    }
    Ok(rep)
}

fn functional_and_group(tag: &str, functional: Option<&str>) -> Result<(RootSystem, finsler_core::weyl::WeylGroup, FinslerFunctional), CliError> {
    let (rs, g) = parse::root_system(tag)?;
    let l = parse::functional(&rs, functional)?;
    Ok((rs, g, l))
}

pub fn polytope_ball(tag: &str, functional: Option<&str>) -> Result<Report, CliError> {
    let (rs, g, l) = functional_and_group(tag, functional)?;
    let b = build_unit_ball(&rs, &g, &l)?;
    let p = &b.polytope;
    Ok(Report::new(json!({
        "facets": p.facets().len(),
        "vertices": p.vertices().len(),
        "simplicial": p.is_simplicial(),
        "f_vector": p.face_lattice().f_vector(),
        "fundamental_vertices": b.fundamental_vertices.iter().map(|v| fmt_q(v)).collect::<Vec<_>>(),
        "polytope": p.export(),
    }))
    .line(format!("B: {} facets, {} vertices, simplicial={}", p.facets().len(), p.vertices().len(), p.is_simplicial())))
}

pub fn polytope_dual(tag: &str, functional: Option<&str>) -> Result<Report, CliError> {
    let (rs, g, l) = functional_and_group(tag, functional)?;
    let b = build_unit_ball(&rs, &g, &l)?;
    let d = dual_ball(&b.polytope)?;
    let check = d.check();
    let equivariant = d.is_equivariant(&g, &b.polytope);
    let ok = check.bijective && check.complementary_dimensions && check.inclusion_reversing && check.dual_simple && equivariant;
    Ok(Report::new(json!({
        "duality": check,
        "equivariant": equivariant,
        "primal_f_vector": d.primal_lattice.f_vector(),
        "dual_f_vector": d.dual_lattice.f_vector(),
        "polytope": d.polytope.export(),
    }))
    .line(format!(
        "B*: {} facets, {} vertices, simple={}, duality {}",
        d.polytope.facets().len(),
        d.polytope.vertices().len(),
        check.dual_simple,
        if ok { "PASS" } else { "FAIL" }
    ))
    .ok(ok))
}

pub fn polytope_cube(tag: &str, functional: Option<&str>) -> Result<Report, CliError> {
    let (rs, g, l) = functional_and_group(tag, functional)?;
    let r = verify_cube_structure(&rs, &g, &l)?;
    let head = format!("{}: f-vector {} {}", r.cartan_type, fmt_tuple(&r.f_vector), if r.pass { "PASS" } else { "FAIL" });
    let pass = r.pass;
    Ok(Report::new(serde_json::to_value(&r).expect("serializable")).line(head).ok(pass))
}

fn point(rs: &RootSystem, s: &str) -> Result<Vec<f64>, CliError> {
    let v = parse::real_vec(s)?;
    if v.len() != rs.rank() {
        return Err(usage(format!("point `{s}` has {} coordinates, expected {}", v.len(), rs.rank())));
    }
    Ok(v)
}

pub fn finsler_dist(tag: &str, functional: Option<&str>, x: &str, y: &str) -> Result<Report, CliError> {
    let (rs, g, l) = functional_and_group(tag, functional)?;
    let flat = FinslerFlat::new(&rs, &g, &l);
    let (x, y) = (point(&rs, x)?, point(&rs, y)?);
    let d = flat.distance(&x, &y)?;
    let iota = FinslerFlat::new(&rs, &g, &flat.iota_functional());
    Ok(Report::new(json!({
        "distance": d.value,
        "witnesses": d.witnesses.iter().map(|&w| g.format_word(w)).collect::<Vec<_>>(),
        "reverse_distance": flat.dist(&y, &x),
        "iota_reverse_distance": iota.dist(&y, &x),
        "tolerance": DIST_TOL,
    }))
    .line(format!("d(x, y) = {} (tolerance {DIST_TOL:e})", d.value)))
}

pub fn finsler_diamond(tag: &str, functional: Option<&str>, x: &str, y: &str, z: &str) -> Result<Report, CliError> {
    let (rs, g, l) = functional_and_group(tag, functional)?;
    let flat = FinslerFlat::new(&rs, &g, &l);
    let (x, y, z) = (point(&rs, x)?, point(&rs, y)?, point(&rs, z)?);
    let member = flat.diamond_membership(&x, &y, &z)?;
    let p = flat.segment_placement(&x, &y)?;
    let defect = flat.dist(&x, &z) + flat.dist(&z, &y) - flat.dist(&x, &y);
    Ok(Report::new(json!({
        "in_diamond": member,
        "triangle_defect": defect,
        "face": p.face.to_string(),
        "anchor": g.format_word(p.anchor),
        "tolerance": DIST_TOL,
    }))
    .line(format!("z {} the diamond of xy (tolerance {DIST_TOL:e})", if member { "lies in" } else { "is outside" })))
}

pub struct HoroArgs<'a> {
    pub face: Option<&'a str>,
    pub anchor: &'a str,
    pub basepoint: Option<&'a str>,
    pub radius: f64,
    pub steps: usize,
    pub grid: usize,
}

/// Grid points of `[−r, r]^n` within norm `r`.
pub fn ball_grid(rs: &RootSystem, r: f64, per_axis: usize) -> Vec<Vec<f64>> {
    let n = rs.rank();
    let q = per_axis.max(2);
    let vals: Vec<f64> = (0..q).map(|i| -r + 2.0 * r * i as f64 / (q - 1) as f64).collect();
    let mut out = Vec::new();
    for code in 0..q.pow(n as u32) {
        let mut c = code;
        let p: Vec<f64> = (0..n)
            .map(|_| {
                let v = vals[c % q];
                c /= q;
                v
            })
            .collect();
        if rs.norm_f64(&p) <= r {
            out.push(p);
        }
    }
    out
}

pub fn finsler_horolimit(tag: &str, functional: Option<&str>, a: HoroArgs<'_>) -> Result<Report, CliError> {
    let (rs, g, l) = functional_and_group(tag, functional)?;
    let flat = FinslerFlat::new(&rs, &g, &l);
    let face = parse::face(g.rank(), a.face)?;
    let anchor = g.parse_word(a.anchor)?;
    let p = match a.basepoint {
        Some(s) => point(&rs, s)?,
        None => vec![0.0; rs.rank()],
    };
    if a.steps == 0 {
        return Err(usage("--steps must be positive"));
    }
    let h = HoroPointFlat::new(Placement::new(&g, anchor, face), p);
    let o = vec![0.0; rs.rank()];
    let ball = ball_grid(&rs, a.radius, a.grid);
    let disc = flat.horofunction_convergence(&h, &o, &ball, a.steps);
    let first_below = disc.iter().position(|&d| d < 1e-6).map(|i| i + 1);
    let monotone_from_10 = disc.iter().skip(9).collect::<Vec<_>>().windows(2).all(|w| *w[1] <= *w[0] + 1e-15);
    let last = *disc.last().expect("steps > 0");
    Ok(Report::new(json!({
        "face": face.to_string(),
        "anchor": g.format_word(h.placement.anchor),
        "ball_points": ball.len(),
        "discrepancy": disc,
        "first_index_below_1e-6": first_below,
        "monotone_from_index_10": monotone_from_10,
        "tolerance": DIST_TOL,
    }))
    .line(format!("sup discrepancy at k = {}: {last:e}", a.steps)))
}

pub fn finsler_coords(tag: &str, x: Option<&str>, sequence: Option<&str>) -> Result<Report, CliError> {
    let (rs, _) = parse::root_system(tag)?;
    let c = match (x, sequence) {
        (Some(x), _) => compactified_coords(&rs, &point(&rs, x)?)?,
        (None, Some(s)) => {
            let seq = s.split(';').filter(|t| !t.trim().is_empty()).map(|t| point(&rs, t)).collect::<Result<Vec<_>, _>>()?;
            sequence_limit(&rs, &seq, DIST_TOL)?
        }
        (None, None) => return Err(usage("pass --x or --sequence")),
    };
    let shown: Vec<String> = c
        .coords
        .iter()
        .map(|k| match k {
            finsler_core::finsler::Coord::Finite(v) => format!("{v}"),
            finsler_core::finsler::Coord::Infinite => "∞".into(),
            finsler_core::finsler::Coord::Undetermined => "?".into(),
        })
        .collect();
    Ok(Report::new(json!({
        "coords": c.coords,
        "interior": c.is_interior(),
        "determined": c.is_determined(),
        "tolerance": DIST_TOL,
    }))
    .line(format!("({})", shown.join(", "))))
}

pub fn finsler_positivity(tag: &str, functional: Option<&str>) -> Result<Report, CliError> {
    let (rs, g, l) = functional_and_group(tag, functional)?;
    let r = check_metric_positivity(&rs, &g, &l);
    let head = if r.metric { "metric".to_string() } else { format!("seminorm, degenerate along {:?}", r.degenerate_subspace) };
    Ok(Report::new(serde_json::to_value(&r).expect("serializable")).line(head))
}

fn delta_json(d: &finsler_core::symspace::DeltaVector) -> Value {
    let n = d.values().len();
    json!({
        "delta": d.values(),
        "alphas": (0..n - 1).map(|i| d.alpha(i)).collect::<Vec<_>>(),
        "root_coords": d.root_coords(),
        "norm": d.norm(),
    })
}

pub fn symspace_cartan(matrix: Option<&str>, xy: Option<(&str, &str)>, functional: Option<&str>) -> Result<Report, CliError> {
    let d = match (matrix, xy) {
        (Some(m), _) => cartan_projection(&parse::matrix(m)?),
        (None, Some((x, y))) => {
            let x = SymPoint::from_rows(&parse::real_rows(x)?)?;
            let y = SymPoint::from_rows(&parse::real_rows(y)?)?;
            delta_distance(&x, &y)?
        }
        (None, None) => return Err(usage("pass --matrix or --x and --y")),
    };
    let n = d.values().len();
    let mut body = delta_json(&d);
    if let Some(f) = functional {
        let (rs, _) = type_a(n)?;
        let l = parse::functional(&rs, Some(f))?;
        let v: f64 = l.row_f64().iter().zip(d.root_coords()).map(|(a, b)| a * b).sum();
        body["finsler"] = json!(v);
    }
    body["tolerance"] = json!(RANK_TOL);
    let shown: Vec<String> = d.values().iter().map(|x| format!("{x:.12}")).collect();
    Ok(Report::new(body).line(format!("({})", shown.join(", "))))
}

pub fn symspace_flaglimit(matrix: &str, power: usize, face: Option<&str>, mesh: usize, seed: Option<u64>) -> Result<Report, CliError> {
    let g = parse::matrix(matrix)?;
    let n = g.dim();
    if n < 2 {
        return Err(usage("matrix must be at least 2x2"));
    }
    let face = parse::face(n - 1, face)?;
    if !face.is_chamber() && seed.is_none() {
        return Err(usage("partial flag types sample random test flags; pass --seed"));
    }
    if power < 3 {
        return Err(usage("--power must be at least 3"));
    }
    let mut seq = vec![g.clone()];
    for _ in 1..power {
        let next = seq.last().expect("nonempty").mul(&g);
        if !next.is_finite() {
            return Err(SymspaceError::Overflow.into());
        }
        seq.push(next);
    }
    let reg = regularity_stats(&seq, face)?;
    let opts = FlagLimitOptions { mesh_size: mesh, seed: seed.unwrap_or(0), ..Default::default() };
    let lim = flag_limit(&seq, face, opts)?;
    Ok(Report::new(json!({
        "face": face.to_string(),
        "power": power,
        "regular": reg.regular,
        "uniformly_regular": reg.uniformly_regular,
        "pure": reg.pure,
        "sample_note": reg.sample_note,
        "forward": lim.forward.export(),
        "backward": lim.backward.export(),
        "transverse": lim.transverse,
        "transversality_margin": lim.transversality_margin,
        "forward_last_step": lim.forward_steps.last(),
        "backward_last_step": lim.backward_steps.last(),
        "contraction": lim.contraction,
        "seed": seed,
        "tolerance": { "convergence": opts.conv_tol, "rank": RANK_TOL, "ambiguity": AMBIGUITY_TOL },
    }))
    .line(format!(
        "forward and backward limits {}transverse; {} test flags within {:e} of the forward limit (finite-sample evidence)",
        if lim.transverse { "" } else { "not " },
        lim.contraction.mesh_size,
        lim.contraction.radius
    )))
}

pub fn symspace_pos(sigma: &str, tau: &str, tau_dims: Option<&str>) -> Result<Report, CliError> {
    let s = parse::flag(sigma, None)?;
    let t = parse::flag(tau, tau_dims)?;
    let (_, g) = type_a(s.ambient_dim())?;
    let perm = relative_position_flags(&s, &t)?;
    let coset = relative_position(&g, &s, &t)?;
    Ok(Report::new(json!({
        "permutation": perm,
        "coset": coset.format(&g),
        "representative": g.format_word(coset.rep()),
        "tolerance": { "rank": RANK_TOL, "ambiguity_band": [RANK_TOL, AMBIGUITY_TOL] },
    }))
    .line(format!("pos = {} (permutation {:?})", coset.format(&g), perm)))
}

fn generators(s: &str) -> Result<Vec<SlMatrix>, CliError> {
    if s.trim().eq_ignore_ascii_case("psl3") {
        Ok(psl3::generators())
    } else {
        parse::matrices(s)
    }
}

pub fn symspace_limitset(gens: &str, radius: usize, face: Option<&str>, frac: f64, min_gap: f64) -> Result<Report, CliError> {
    let gens = generators(gens)?;
    let n = gens[0].dim();
    let face = parse::face(n - 1, face)?;
    let opts = LimitSetOptions { norm_fraction: frac, min_gap, ..Default::default() };
    let s = limit_set_sample(&gens, radius, face, opts)?;
    let mut rep = Report::new(serde_json::to_value(s.export()).expect("serializable"))
        .line(format!("{} flags of type {face} from {} of {} elements (merge tolerance {MERGE_TOL:e})", s.flags.len(), s.selected, s.ball_size));
    for w in &s.warnings {
        rep = rep.line(format!("warning: {w}"));
    }
    Ok(rep)
}

pub fn example_a2_balanced() -> Result<Report, CliError> {
    let rs = RootSystem::from_tag("A2")?;
    let g = enumerate_weyl(&rs)?;
    let res = enumerate_balanced(&rs, &g, FaceType::chamber(2), BalancedOptions::default())?;
    let expected = vec!["e".to_string(), "s1".into(), "s2".into()];
    let ok = res.thickenings.len() == 1 && res.thickenings[0].words(&g) == expected;
    let certs: Vec<Value> = res
        .thickenings
        .iter()
        .map(|t| {
            let c = complement(&g, t).map(|c| c.elements() == t.elements()).unwrap_or(false);
            json!({ "thickening": t.words(&g), "classification": validate_thickening(&g, t), "self_complementary": c })
        })
        .collect();
    let mut rep = Report::new(json!({ "count": res.thickenings.len(), "mode": res.mode, "certificates": certs }))
        .line(format!("A2, chamber type: {} balanced thickening(s)", res.thickenings.len()));
    for t in &res.thickenings {
        rep = rep.line(t.format(&g));
    }
    Ok(rep.ok(ok))
}

pub fn example_psl3_domain(seed: Option<u64>, samples: usize, radius: usize, flag: Option<&str>) -> Result<Report, CliError> {
    let gens = psl3::generators();
    let opts = LimitSetOptions::default();
    let p = limit_set_sample(&gens, radius, psl3::point_type(), opts)?;
    let l = limit_set_sample(&gens, radius, psl3::line_type(), opts)?;
    let f = limit_set_sample(&gens, radius, FaceType::chamber(2), opts)?;
    let sampled = LimitData::from_samples(&p, &l, &f);
    let matches = sampled.matches(&LimitData::expected());
    let ex = Psl3Example::new(sampled)?;
    let counts = json!({ "points": p.flags.len(), "lines": l.flags.len(), "full_flags": f.flags.len() });
    let limits = format!(
        "limit sets at radius {radius}: {} points, {} lines, {} full flags; expected sets {}",
        p.flags.len(),
        l.flags.len(),
        f.flags.len(),
        if matches { "recovered" } else { "NOT recovered" }
    );
    let th = json!({
        "chamber": ex.thickenings.chamber.words(&ex.group),
        "point": ex.thickenings.point.words(&ex.group),
        "line": ex.thickenings.line.words(&ex.group),
    });
    let tol = json!({ "merge": MERGE_TOL, "incidence": RANK_TOL, "ambiguity": AMBIGUITY_TOL });
    if let Some(fl) = flag {
        let sigma = parse::flag(fl, Some("1,2"))?;
        let c = ex.membership(&sigma)?;
        return Ok(Report::new(json!({ "limit_sets": counts, "matches_expected": matches, "thickenings": th, "check": c, "tolerance": tol }))
            .line(limits)
            .line(format!("flag is {}", if c.verdict == psl3::Verdict::Removed { "removed" } else { "in the domain" }))
            .ok(matches));
    }
    let seed = seed.ok_or_else(|| usage("the random sweep needs --seed (or pass --flag)"))?;
    let r = psl3::domain_sweep(&ex, samples, seed);
    let ok = matches && r.disagreements == 0;
    Ok(Report::new(json!({ "limit_sets": counts, "matches_expected": matches, "thickenings": th, "sweep": r, "tolerance": tol }))
        .line(limits)
        .line(format!(
            "sweep of {} flags: {} removed, {} in domain, {} ambiguous, {} disagreements",
            r.samples, r.removed, r.in_domain, r.ambiguous, r.disagreements
        ))
        .ok(ok))
}
