use std::path::Path;

use num_rational::BigRational;
use num_traits::{One, Zero};

use surfdyn::abelian::{
    concordance, exe_lattice, is_ample, line_class, line_volumes, minkowski_chain_check, ns_real_lattice,
    AbelianSpecJson, Constant, RealScalar, ScalarField,
};
use surfdyn::birational::{
    degree_sequence, stability_check, xie_lower_bound, BirationalMapJson, BirationalSelfMap, XieDecision,
    XieInput,
};
use surfdyn::crofton::{bound_check, complex_volume, crofton_estimate, CurveJson, ProjectiveCurve};
use surfdyn::exact::{classify_unit, lehmer_number, lehmer_polynomial, poly_hi, QuadraticSurd, UnitKind};
use surfdyn::lattice::{
    classify_isometry, norm_growth_exponent, parabolic_invariant_line, volume_growth, GramJson, GramLattice,
    GrowthReport, IsometryType, LatticeClass, LatticeIsometry, MatrixJson,
};
use surfdyn::surfaces::{
    entropy_consistency, involution_word, torus_entropy, torus_lefschetz, Surface222Model,
    TorusAutomorphism, WehlerModel,
};

use crate::format;
use crate::{parse_alpha, parse_ints, read_json, CliError, Report, Result, RunConfig, Section};

pub(crate) fn isometry_section(name: &str, iso: &LatticeIsometry, cfg: &RunConfig) -> Section {
    let digits = cfg.digits();
    let mut s = Section::new(name);
    s.check(
        "Gram matrix preserved",
        "MᵗGM = G",
        "yes",
        iso.lattice.check_isometry(&iso.matrix).is_ok(),
    );
    s.info("type", iso.kind.to_string());
    s.info("characteristic polynomial", format::poly(&iso.char_poly));
    s.info("spectral radius λ", format::algebraic(&iso.lambda, digits));
    s.info("entropy log λ", format::interval(&iso.entropy(cfg.bits()), digits));
    if let Some(u) = &iso.unit_class {
        s.info("unit type of λ", format!("{:?} (degree {})", u.kind, u.degree));
    }
    if iso.kind == IsometryType::Parabolic {
        if let Ok(line) = parabolic_invariant_line(iso) {
            s.info("invariant isotropic line", format!("±{}", format::ints(&line.coords)));
        }
        s.info(
            "growth exponent of ‖Mᵏ‖ at k = 1000",
            format!("{:.4}", norm_growth_exponent(&iso.matrix, 1000)),
        );
    }
    s
}

pub(crate) fn alpha_rows(s: &mut Section, iso: &LatticeIsometry, alpha: &BigRational, cfg: &RunConfig) -> Result<()> {
    let r = entropy_consistency(iso, Some(alpha), cfg.bits())?;
    let floor = r.floor.expect("alpha given");
    s.check(
        format!("log λ ≥ {}·log λ₁₀", alpha),
        format::interval(&floor, cfg.digits()),
        format::interval(&r.entropy, cfg.digits()),
        r.floor_respected == Some(true),
    );
    Ok(())
}

pub fn classify(cfg: &RunConfig, lattice: &Path, isometry: &Path, report: &mut Report) -> Result<()> {
    let g: GramJson = read_json(lattice)?;
    let l = GramLattice::from_json(&g)?;
    let m: MatrixJson = read_json(isometry)?;
    let m = m.to_matrix()?;
    let iso = classify_isometry(&m, &l)?;
    report.push(isometry_section("isometry", &iso, cfg));
    Ok(())
}

pub fn salem(cfg: &RunConfig, poly: &str, report: &mut Report) -> Result<()> {
    let is_lehmer = poly.trim() == "lehmer";
    let p = if is_lehmer {
        lehmer_polynomial()
    } else {
        poly_hi(&parse_ints(poly)?)
    };
    let u = classify_unit(&p)?;
    let mut s = Section::new("unit");
    s.info("polynomial", format::poly(&p));
    s.info("degree", u.degree.to_string());
    s.info("kind", format!("{:?}", u.kind));
    if u.leading_root.is_some() {
        let lam = surfdyn::exact::RealAlgebraic::largest_root(&p)?;
        s.info("largest root", format::algebraic(&lam, cfg.digits()));
    }
    if is_lehmer {
        let lam = lehmer_number();
        let lo = surfdyn::exact::frac(117628081, 100000000);
        let hi = surfdyn::exact::frac(117628082, 100000000);
        let enc = lam.enclosure(cfg.bits());
        s.check(
            "λ₁₀",
            "Salem, in [1.17628081, 1.17628082]",
            format!("{:?}, {}", u.kind, format::interval(&enc, 12)),
            u.kind == UnitKind::Salem && enc.lo >= lo && enc.hi <= hi,
        );
    }
    report.push(s);
    Ok(())
}

fn word_of(s: &str) -> Result<Vec<usize>> {
    parse_ints(s)?
        .into_iter()
        .map(|i| {
            usize::try_from(i)
                .ok()
                .filter(|&i| i >= 1)
                .ok_or_else(|| CliError::Input(format!("involution index {i}")))
        })
        .collect()
}

pub fn surface222(
    cfg: &RunConfig,
    word: &str,
    alpha: Option<&str>,
    growth: Option<usize>,
    report: &mut Report,
) -> Result<()> {
    let model = Surface222Model::new();
    let w = word_of(word)?;
    let iso = involution_word(&model, &w)?;
    let mut s = isometry_section(&format!("surface222 word {word}"), &iso, cfg);
    if let Some(a) = alpha {
        alpha_rows(&mut s, &iso, &parse_alpha(a)?, cfg)?;
    }
    report.push(s);
    if let Some(n) = growth {
        report.push(growth_section(&iso, &model.polarization(), n)?);
    }
    Ok(())
}

pub(crate) fn growth_section(iso: &LatticeIsometry, c: &LatticeClass, n: usize) -> Result<Section> {
    let g = volume_growth(iso, c, c, n)?;
    let mut s = Section::new(format!("volume growth (f_*ⁿ c)·c, n ≤ {n}"));
    s.info("c", format::ints(&c.coords));
    if let Some(last) = g.values.last() {
        s.info(format!("v_{n}"), last.to_string());
    }
    match &g.report {
        GrowthReport::Loxodromic {
            ratio_last,
            ratio_error,
            root_last,
            root_error,
            normalized_last,
            ..
        } => {
            s.info("v_N / v_{N-1}", format!("{} (error ≤ {:.3e})", format::interval(ratio_last, 20), ratio_error));
            s.info("v_N^{1/N}", format!("{} (error ≤ {:.3e})", format::interval(root_last, 20), root_error));
            s.info("v_N / λ^N", format::interval(normalized_last, 20));
        }
        GrowthReport::Parabolic {
            quadratic_coefficient,
            change,
        } => {
            s.info("v_N / N²", format!("{quadratic_coefficient:.8} (change {change:.3e})"));
        }
        GrowthReport::Elliptic { max_abs } => s.info("max |v_n|", max_abs.to_string()),
    }
    Ok(s)
}

pub fn wehler(cfg: &RunConfig, word: &str, alpha: Option<&str>, report: &mut Report) -> Result<()> {
    let model = WehlerModel::new();
    let iso = involution_word(&model, &word_of(word)?)?;
    let mut s = isometry_section(&format!("wehler word {word}"), &iso, cfg);
    if let Some(a) = alpha {
        alpha_rows(&mut s, &iso, &parse_alpha(a)?, cfg)?;
    }
    report.push(s);
    Ok(())
}

pub fn torus(cfg: &RunConfig, matrix: &str, alpha: Option<&str>, report: &mut Report) -> Result<()> {
    let v = parse_ints(matrix)?;
    if v.len() != 4 {
        return Err(CliError::Input(format!("torus matrix needs 4 entries, got {}", v.len())));
    }
    let t = TorusAutomorphism::from_i64(v[0], v[1], v[2], v[3])?;
    let e = torus_entropy(&t, cfg.bits());
    let d = cfg.digits();
    let mut s = Section::new(format!("torus [[{}, {}], [{}, {}]]", v[0], v[1], v[2], v[3]));
    s.info("μ (spectral radius on H¹)", format::surd(&e.mu_exact, d));
    s.info("λ(f) = μ²", format::surd(&e.lambda_exact, d));
    s.info("h_ℝ = log μ", format::interval(&e.h_real, d));
    s.info("h_ℂ = log λ(f)", format::interval(&e.h_complex, d));
    s.info("Lefschetz number", torus_lefschetz(&t).to_string());
    let diff = e.h_complex.sub(&e.h_real.scale(&BigRational::from_integer(2.into())));
    s.check(
        "h_ℂ - 2h_ℝ",
        "0",
        format::interval(&diff, 3),
        diff.contains(&BigRational::zero()),
    );
    if let Some(a) = alpha {
        let a = parse_alpha(a)?;
        let floor = crate::entropy_floor(&a, cfg.bits())?;
        s.info(format!("{}·log λ₁₀", a), format::interval(&floor, d));
        if e.h_complex.lo > BigRational::zero() {
            // α ≤ h_ℝ / h_ℂ
            let ratio = e.h_real.div(&e.h_complex).expect("positive");
            s.check("α ≤ h_ℝ / h_ℂ", a.to_string(), format::interval(&ratio, d), a <= ratio.hi);
        }
    }
    report.push(s);
    Ok(())
}

pub fn abelian(cfg: &RunConfig, spec: &Path, report: &mut Report) -> Result<()> {
    let j: AbelianSpecJson = read_json(spec)?;
    let spec = j.into_spec()?;
    let c = concordance(&spec)?;
    let ns = ns_real_lattice(&spec)?;
    let mut s = Section::new("abelian surface");
    s.info("ρ(X_ℂ)", c.rho_c.to_string());
    s.info("ρ(X_ℝ)", c.rho_r.to_string());
    s.info("NS(X_ℝ) Gram matrix", format!("{:?}", ns.lattice.gram().to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()));
    s.info("α", c.alpha.to_string());
    s.info("loxodromic automorphism", c.loxodromic_exists.to_string());
    if let Some(w) = &c.isotropic_witness {
        s.info("isotropic class", format::ints(&w.coords));
    }
    if let Some(w) = &c.loxodromic_witness {
        s.info("loxodromic witness λ", format::algebraic(&w.lambda, cfg.digits()));
    }
    let floor = crate::entropy_floor(&c.alpha, cfg.bits())?;
    s.info("entropy floor α·log λ₁₀", format::interval(&floor, cfg.digits()));
    report.push(s);
    Ok(())
}

/// `y` as a scalar together with the field declaring it.
pub(crate) fn parse_y(y: &str) -> Result<(RealScalar, ScalarField)> {
    if let Some(r) = surfdyn::exact::parse_rational(y.trim()) {
        return Ok((RealScalar::rational(r), ScalarField::new()));
    }
    let c = Constant::parse(y).ok_or_else(|| CliError::Input(format!("cannot parse y = {y:?}")))?;
    let field = ScalarField::new().declare_constant("y", c)?;
    Ok((RealScalar::label("y"), field))
}

pub fn lines(cfg: &RunConfig, max: i64, y: &str, report: &mut Report) -> Result<()> {
    if max < 1 {
        return Err(CliError::Input("max must be positive".into()));
    }
    let (ys, field) = parse_y(y)?;
    let l = exe_lattice();
    let mut s = Section::new(format!("lines on E_y × E_y, y = {y}"));
    for a in -max..=max {
        for b in 0..=max {
            if num_integer::gcd(a, b) != 1 || (b == 0 && a < 0) {
                continue;
            }
            let c = line_class(a, b)?;
            let v = line_volumes(a, b, &ys)?;
            let ok = l.square(&c).is_zero() && v.ratio_squared_times_y(&ys) == Some(BigRational::one());
            let ratio = v.ratio(&field, cfg.bits())?;
            s.check(
                format!("({a}, {b})"),
                "L² = 0, (vol_ℝ/vol_ℂ^½)² y = 1",
                format!("{} vol_ℝ = {} ratio {}", format::ints(&c.coords), v.vol_r, format::interval(&ratio, 12)),
                ok,
            );
        }
    }
    report.push(s);
    Ok(())
}

pub fn reduce(cfg: &RunConfig, class: &str, y: &str, report: &mut Report) -> Result<()> {
    let v = parse_ints(class)?;
    if v.len() != 3 {
        return Err(CliError::Input(format!("class needs 3 coordinates, got {}", v.len())));
    }
    let c = LatticeClass::from_i64(&v);
    if !is_ample(&c)? {
        return Err(CliError::Core(surfdyn::Error::NotAmple));
    }
    let (ys, field) = parse_y(y)?;
    let ch = minkowski_chain_check(&c, &ys, &field, cfg.bits())?;
    let d = cfg.digits().min(20);
    let mut s = Section::new(format!("triangle reduction of {}", format::ints(&v)));
    s.info("g", format!("{:?}", ch.reduction.g.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()));
    s.info("(k_H, k_V, k_Δ)", format::ints(&ch.reduction.k));
    s.info("Σ k_j vol_ℝ(D_j)", format::interval(&ch.sum_real, d));
    s.info("C (Σ k_j² vol_ℂ(D_j))^½", format::interval(&ch.minkowski, d));
    s.info("C vol_ℂ(c)^½", format::interval(&ch.lower_bound, d));
    s.check("chain of inequalities", "holds", if ch.holds { "holds" } else { "violated" }, ch.holds);
    report.push(s);
    Ok(())
}

pub fn birational(
    cfg: &RunConfig,
    map: Option<&str>,
    file: Option<&Path>,
    iterates: usize,
    report: &mut Report,
) -> Result<()> {
    let f = match (map, file) {
        (Some(m), _) => BirationalSelfMap::parse(m)?,
        (None, Some(p)) => {
            let j: BirationalMapJson = read_json(p)?;
            BirationalSelfMap::from_json(&j)?
        }
        (None, None) => return Err(CliError::Input("birational needs --map or --file".into())),
    };
    let mut s = Section::new("map");
    s.info("x ↦", f.comp1().to_string());
    s.info("y ↦", f.comp2().to_string());
    s.info("degree matrix", format::matrix2(&f.degree_matrix()));
    report.push(s);
    if f.has_inverse() {
        let r = stability_check(&f)?;
        let mut s = Section::new("algebraic stability");
        s.info("Ind(f)", r.ind_f.to_string());
        s.info("Ind(f⁻¹)", r.ind_f_inv.to_string());
        s.info("real points of Ind(f), Ind(f⁻¹)", format!("{}, {}", real_points(&r.ind_f), real_points(&r.ind_f_inv)));
        s.row(
            "Ind(f) ∩ Ind(f⁻¹)",
            "∅",
            if r.disjoint { "∅" } else { "nonempty" },
            if r.disjoint { crate::Status::Pass } else { crate::Status::Inconclusive },
        );
        s.info("degree matrix of f²", format::matrix2(&r.degree_f2));
        s.check(
            "degree matrix of f² = (degree matrix of f)²",
            format::matrix2(&surfdyn::birational::degree_matrix_product(&r.degree_f, &r.degree_f)),
            format::matrix2(&r.degree_f2),
            !r.disjoint || r.certified_identity,
        );
        report.push(s);
    }
    let one = QuadraticSurd::rational(BigRational::one());
    let seq = degree_sequence(&f, (&one, &one), iterates)?;
    let mut s = Section::new("degrees against L = H + V");
    for st in &seq {
        let ratio = st.ratio.as_ref().map(|r| format!(", ratio {}", r)).unwrap_or_default();
        s.info(format!("n = {}", st.n), format!("{} deg_L = {}{}", format::matrix2(&st.degree_matrix), st.deg_l, ratio));
    }
    if seq.len() >= 3 {
        let q = seq[2].deg_l.mul(&seq[1].deg_l.inv().expect("positive degree"));
        match xie_lower_bound(&XieInput::Exact(q.clone()), cfg.bits())? {
            XieDecision::Bound { enclosure, exceeds_one } => s.row(
                "lower bound from q = deg_L(f²)/deg_L(f)",
                "> 1",
                format::interval(&enclosure, 12),
                crate::Status::from_bool(exceeds_one),
            ),
            XieDecision::Inconclusive => s.row(
                "lower bound from q = deg_L(f²)/deg_L(f)",
                "q² ≥ 2·3³⁶",
                format!("q = {q}"),
                crate::Status::Inconclusive,
            ),
        }
    }
    report.push(s);
    Ok(())
}

fn real_points(set: &surfdyn::birational::IndeterminacySet) -> String {
    if set.is_real_free() {
        "0".into()
    } else {
        "some".into()
    }
}

pub(crate) fn load_curve(spec: &str) -> Result<ProjectiveCurve> {
    if let Some(c) = ProjectiveCurve::named(spec) {
        return Ok(c);
    }
    let j: CurveJson = read_json(Path::new(spec))?;
    Ok(ProjectiveCurve::from_json(&j)?)
}

pub fn crofton(cfg: &RunConfig, curve: &str, report: &mut Report) -> Result<()> {
    let c = load_curve(curve)?;
    let est = crofton_estimate(&c, cfg.samples, cfg.seed)?;
    let b = bound_check(&c, &est);
    let mut s = Section::new(format!("crofton: {c}"));
    s.info("samples, seed", format!("{}, {}", est.samples, est.seed));
    s.info("mean count", est.mean_count.clone());
    s.info("vol_ℝ estimate", format!("{:.6} ± {:.6}", est.estimate, est.stderr));
    s.info("vol_ℂ", format::interval(&complex_volume(&c, cfg.bits()), 12));
    s.info("degenerate lines redrawn", est.degenerate.to_string());
    s.check("count ≤ degree on every sample", format!("≤ {}", c.degree()), est.max_count.to_string(), b.per_sample);
    s.check("vol_ℝ ≤ deg·π", format!("≤ {:.6}", b.bound), format!("{:.6}", b.estimate), b.holds);
    s.info("equality within 3σ", b.equality.to_string());
    report.push(s);
    Ok(())
}
