//! Batch command-line front end: per-knot slope reports, a verification
//! suite, and isometry classification.
//!
//! Output is line-delimited records with stable field order; `--json`
//! switches to one JSON object per line with the same field names.
//! Exit codes: 0 ok, 2 parse error, 3 pipeline error, 4 input-domain error.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nalgebra::{Complex, DMatrix, DVector, Matrix2, Vector2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use rigidity::cohomology::{
    cocycle_space, is_coboundary, parabolic_h1, peripheral_restriction_dims, torus_normal_form,
    trace_gradient, weil_deform, Cocycle, ModuleTag, Presentation, Representation, Word, RANK_TOL,
};
use rigidity::cohomology::torus::{rot90, screw_model_cocycle};
use rigidity::error::Error;
use rigidity::isometry::{
    classify, embed, from_sl2c, parabolic_generator, parabolic_translation, Isometry,
    IsometryClass,
};
use rigidity::lie::{join, r31_coords, LieElement};
use rigidity::twobridge::{
    family_derivative, limit_slope_with_options, parse_catalog, parse_knot_spec, screw_member,
    PeripheralBasis, SlopeResult, TwoBridgeKnot, MERIDIAN_LONGITUDE,
};

#[derive(Parser)]
#[command(name = "rigidity", version, about = "Infinitesimal rigidity data for two-bridge knot groups in SO(4,1)")]
struct Cli {
    /// Rank tolerance (overrides RIGIDITY_TOL; default 1e-8).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Emit one JSON object per line instead of key=value records.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the built-in verification suite; one pass/fail line per check.
    Verify,
    /// Excluded slope for a knot spec "p/q" or a catalog file (one spec per
    /// line, '#' comments).
    Slope {
        /// Knot spec "p/q" or a path to a catalog file.
        input: String,
        /// Override the geometric-candidate root selection.
        #[arg(long)]
        root_index: Option<usize>,
        /// Peripheral basis; "meridian-longitude" is the only value in v1.
        #[arg(long, default_value = "meridian-longitude")]
        basis: String,
    },
    /// Classify a 5x5 matrix in SO_0(4,1), read from a whitespace-separated
    /// file ("-" for stdin).
    Classify {
        /// Path to the matrix file, or "-" for stdin.
        path: String,
    },
}

fn resolve_tol(flag: Option<f64>) -> Result<f64, String> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var("RIGIDITY_TOL") {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("RIGIDITY_TOL is not a number: {e}")),
        Err(_) => Ok(RANK_TOL),
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::InvalidKnot { .. }
        | Error::NotSpecialLorentz { .. }
        | Error::NotLieElement { .. }
        | Error::NonUnitDeterminant(_)
        | Error::NotOnHyperboloid(_)
        | Error::ZeroVector
        | Error::DimensionMismatch(..)
        | Error::RootIndexOutOfRange(..) => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match resolve_tol(cli.tol) {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let code = match &cli.command {
        Command::Verify => cmd_verify(tol, cli.json),
        Command::Slope {
            input,
            root_index,
            basis,
        } => cmd_slope(input, *root_index, basis, tol, cli.json),
        Command::Classify { path } => cmd_classify(path, tol, cli.json),
    };
    ExitCode::from(code)
}

// ---------------------------------------------------------------------------
// slope
// ---------------------------------------------------------------------------

fn parse_basis(name: &str) -> Result<PeripheralBasis, Error> {
    match name {
        "meridian-longitude" => Ok(MERIDIAN_LONGITUDE),
        other => Err(Error::Parse(format!(
            "unknown peripheral basis {other:?}; v1 supports \"meridian-longitude\""
        ))),
    }
}

fn slope_record(
    k: &TwoBridgeKnot,
    res: &SlopeResult,
    tol: f64,
    basis: &str,
    json: bool,
) -> String {
    let l_text = match res.l {
        Some(l) => format!("{l}"),
        None => "inf".to_string(),
    };
    if json {
        json!({
            "knot": format!("{}/{}", k.p(), k.q()),
            "l": res.l,
            "l_is_infinite": res.l.is_none(),
            "omega": [res.omega[0], res.omega[1]],
            "lambda": res.lambda,
            "x_longitude": [res.x_longitude.re, res.x_longitude.im],
            "root": [res.root.re, res.root.im],
            "root_index": res.root_index,
            "dims": {
                "z1_r31_knot": res.audit.knot_r31.0,
                "b1_r31_knot": res.audit.knot_r31.1,
                "h1_r31_knot": res.audit.knot_r31.2,
                "z1_r31_torus": res.audit.torus_r31.0,
                "b1_r31_torus": res.audit.torus_r31.1,
                "h1_r31_torus": res.audit.torus_r31.2,
            },
            "residual": res.residual,
            "config": { "tol": tol, "basis": basis },
        })
        .to_string()
    } else {
        format!(
            "knot={}/{} l={} omega=({},{}) lambda={} x_longitude=({},{}) root=({},{}) \
             root_index={} dims.knot_r31=({},{},{}) dims.torus_r31=({},{},{}) residual={} \
             tol={} basis={}",
            k.p(),
            k.q(),
            l_text,
            res.omega[0],
            res.omega[1],
            res.lambda,
            res.x_longitude.re,
            res.x_longitude.im,
            res.root.re,
            res.root.im,
            res.root_index,
            res.audit.knot_r31.0,
            res.audit.knot_r31.1,
            res.audit.knot_r31.2,
            res.audit.torus_r31.0,
            res.audit.torus_r31.1,
            res.audit.torus_r31.2,
            res.residual,
            tol,
            basis
        )
    }
}

fn cmd_slope(
    input: &str,
    root_index: Option<usize>,
    basis_name: &str,
    tol: f64,
    json: bool,
) -> u8 {
    let basis = match parse_basis(basis_name) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    // A bare "p/q" is a knot spec; anything else is a catalog path.
    let knots: Vec<TwoBridgeKnot> = match parse_knot_spec(input) {
        Ok(k) => vec![k],
        Err(Error::Parse(_)) if std::path::Path::new(input).is_file() => {
            let text = match std::fs::read_to_string(input) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read catalog {input:?}: {e}");
                    return 2;
                }
            };
            match parse_catalog(&text) {
                Ok(ks) => ks,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit_code_for(&e);
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };

    let mut worst = 0u8;
    for k in &knots {
        match limit_slope_with_options(k, root_index, tol, basis) {
            Ok(res) => println!("{}", slope_record(k, &res, tol, basis_name, json)),
            Err(e) => {
                eprintln!("error: knot {}/{}: {e}", k.p(), k.q());
                worst = worst.max(exit_code_for(&e));
            }
        }
    }
    worst
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

fn read_matrix(path: &str) -> Result<DMatrix<f64>, Error> {
    let text = if path == "-" {
        use std::io::Read;
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path:?}: {e}")))?
    };
    let entries: Vec<f64> = text
        .split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad matrix entry {t:?}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    if entries.len() != 25 {
        return Err(Error::Parse(format!(
            "expected 25 whitespace-separated entries (5x5), got {}",
            entries.len()
        )));
    }
    Ok(DMatrix::from_row_slice(5, 5, &entries))
}

fn cmd_classify(path: &str, tol: f64, json: bool) -> u8 {
    let run = || -> Result<String, Error> {
        let m = read_matrix(path)?;
        let iso = Isometry::new(m, tol.max(rigidity::DEFAULT_TOL))?;
        let class = classify(&iso, tol.max(rigidity::DEFAULT_TOL))?;
        let trace = iso.trace();
        let residual = (trace - class.expected_trace()).abs();
        let (lambda, alpha, beta) = match class {
            IsometryClass::Identity | IsometryClass::ParabolicTranslation => (None, None, None),
            IsometryClass::ParabolicScrew { alpha } => (None, Some(alpha), None),
            IsometryClass::Elliptic { alpha, beta } => (None, Some(alpha), Some(beta)),
            IsometryClass::Loxodromic { lambda, alpha } => (Some(lambda), Some(alpha), None),
        };
        let opt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x}"));
        Ok(if json {
            json!({
                "kind": class.kind_name(),
                "lambda": lambda,
                "alpha": alpha,
                "beta": beta,
                "trace": trace,
                "trace_residual": residual,
                "config": { "tol": tol },
            })
            .to_string()
        } else {
            format!(
                "kind={} lambda={} alpha={} beta={} trace={} trace_residual={} tol={}",
                class.kind_name(),
                opt(lambda),
                opt(alpha),
                opt(beta),
                trace,
                residual,
                tol
            )
        })
    };
    match run() {
        Ok(line) => {
            println!("{line}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct Check {
    name: &'static str,
    run: fn(f64, &mut ChaCha8Rng) -> Result<(), String>,
}

fn cmd_verify(tol: f64, json: bool) -> u8 {
    let checks: &[Check] = &[
        Check { name: "torus-cohomology-dimensions", run: check_torus_dims },
        Check { name: "knot-cohomology-figure-eight", run: check_knot_cohomology },
        Check { name: "sl2c-trace-identities", run: check_trace_identities },
        Check { name: "classification-trace-formulas", run: check_classification },
        Check { name: "parabolic-exponential-closed-form", run: check_parabolic_exp },
        Check { name: "torus-normal-form-round-trip", run: check_normal_form },
        Check { name: "trace-gradient-kernel", run: check_trace_gradient },
        Check { name: "weil-quadratic-defect", run: check_weil },
        Check { name: "screw-family-derivative", run: check_screw_family },
        Check { name: "slope-basis-equivariance", run: check_slope_basis },
    ];
    let mut failures = 0usize;
    for c in checks {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5121_D0C5);
        let outcome = (c.run)(tol, &mut rng);
        if json {
            println!(
                "{}",
                json!({
                    "check": c.name,
                    "pass": outcome.is_ok(),
                    "detail": outcome.as_ref().err(),
                    "config": { "tol": tol },
                })
            );
        } else {
            match &outcome {
                Ok(()) => println!("pass {}", c.name),
                Err(msg) => println!("FAIL {}: {msg}", c.name),
            }
        }
        if outcome.is_err() {
            failures += 1;
        }
    }
    if failures == 0 {
        0
    } else {
        1
    }
}

fn err_str(e: impl std::fmt::Display) -> String {
    format!("{e}")
}

fn random_lattice(rng: &mut ChaCha8Rng) -> (Vector2<f64>, Vector2<f64>) {
    loop {
        let t1 = Vector2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let t2 = Vector2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let det: f64 = t1[0] * t2[1] - t1[1] * t2[0];
        if det.abs() > 0.3 && t1.norm() > 0.3 && t2.norm() > 0.3 {
            return (t1, t2);
        }
    }
}

fn torus_rep(lattice: (Vector2<f64>, Vector2<f64>)) -> Representation {
    Representation::new(vec![
        parabolic_translation(lattice.0[0], lattice.0[1]),
        parabolic_translation(lattice.1[0], lattice.1[1]),
    ])
}

fn check_torus_dims(tol: f64, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let pres = Presentation::torus();
    for _ in 0..10 {
        let rep = torus_rep(random_lattice(rng));
        for (tag, expect) in [
            (ModuleTag::R31, (5, 3, 2)),
            (ModuleTag::So31, (8, 4, 4)),
            (ModuleTag::So41, (13, 7, 6)),
        ] {
            // The so(4,1) module needs the representation embedded in SO(4,1).
            let acting = if tag == ModuleTag::So41 {
                rep.embedded()
            } else {
                rep.clone()
            };
            let rpt = cocycle_space(&pres, &acting, tag, tol).map_err(err_str)?;
            let got = (rpt.dim_z1, rpt.dim_b1, rpt.dim_h1);
            if got != expect {
                return Err(format!("{} dims {:?}, expected {:?}", tag.name(), got, expect));
            }
        }
    }
    Ok(())
}

fn check_knot_cohomology(tol: f64, _rng: &mut ChaCha8Rng) -> Result<(), String> {
    let k = TwoBridgeKnot::new(5, 3).map_err(err_str)?;
    let rep2 = rigidity::twobridge::riley_reps(&k)
        .map_err(err_str)?
        .into_iter()
        .find(|r| r.is_geometric_candidate)
        .ok_or("no geometric candidate")?;
    let lattice = rigidity::twobridge::cusp_lattice(&rep2, &k).map_err(err_str)?;
    let pres = k.presentation();
    let rep = rep2.lorentz_rep().map_err(err_str)?;
    let rpt = cocycle_space(&pres, &rep, ModuleTag::R31, tol).map_err(err_str)?;
    if rpt.dim_h1 != 1 {
        return Err(format!("dim H1(M,R31) = {}, expected 1", rpt.dim_h1));
    }
    let words = [k.meridian_word(), lattice.longitude.clone()];
    let big = rep.embedded();
    let ph1 = parabolic_h1(&pres, &big, &words, ModuleTag::So41).map_err(err_str)?;
    if ph1 != 0 {
        return Err(format!("PH1(so41) = {ph1}, expected 0"));
    }
    let (_, image) =
        peripheral_restriction_dims(&pres, &big, &words, ModuleTag::So41, tol).map_err(err_str)?;
    if image != 3 {
        return Err(format!("peripheral image dim = {image}, expected 3"));
    }
    Ok(())
}

fn random_sl2(rng: &mut ChaCha8Rng) -> Matrix2<Complex<f64>> {
    let c = |rng: &mut ChaCha8Rng| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    loop {
        let a = c(rng);
        let b = c(rng);
        let cc = c(rng);
        if a.norm() > 0.2 {
            let d = (Complex::new(1.0, 0.0) + b * cc) / a;
            return Matrix2::new(a, b, cc, d);
        }
    }
}

fn check_trace_identities(_tol: f64, rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..50 {
        let m = random_sl2(rng);
        let tr2 = (m[(0, 0)] + m[(1, 1)]).norm_sqr();
        let iso = from_sl2c(&m).map_err(err_str)?;
        let d31 = (iso.trace() + 1.0 - tr2 - 1.0).abs();
        let d41 = (embed(&iso).trace() - tr2 - 1.0).abs();
        if d31.max(d41) > 1e-9 {
            return Err(format!("trace identity defect {}", d31.max(d41)));
        }
    }
    Ok(())
}

fn check_classification(tol: f64, _rng: &mut ChaCha8Rng) -> Result<(), String> {
    let t = embed(&parabolic_translation(1.0, 0.0));
    let cls = classify(&t, tol.max(1e-9)).map_err(err_str)?;
    if cls.kind_name() != "parabolic_translation" || (t.trace() - 5.0).abs() > 1e-9 {
        return Err(format!("parabolic translation: {}", cls.kind_name()));
    }
    Ok(())
}

fn check_parabolic_exp(_tol: f64, rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..10 {
        let (x, y) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let gen = LieElement::new(parabolic_generator(x, y)).map_err(err_str)?;
        let defect = (gen.exp().matrix() - parabolic_translation(x, y).matrix()).amax();
        if defect > 1e-12 {
            return Err(format!("exp defect {defect}"));
        }
    }
    Ok(())
}

fn check_normal_form(tol: f64, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let pres = Presentation::torus();
    for _ in 0..10 {
        let lattice = random_lattice(rng);
        let rep = torus_rep(lattice);
        let rpt = cocycle_space(&pres, &rep, ModuleTag::R31, tol).map_err(err_str)?;
        let coeffs: Vec<f64> = (0..rpt.dim_z1).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut stacked = DVector::zeros(8);
        for (k, c) in coeffs.iter().enumerate() {
            stacked += *c * rpt.basis_z1.column(k);
        }
        let d = Cocycle::from_stacked(ModuleTag::R31, &stacked);
        let nf = torus_normal_form(&d, lattice).map_err(err_str)?;
        if nf.rot_residual(lattice) > 1e-8 {
            return Err(format!("rot residual {}", nf.rot_residual(lattice)));
        }
        let trivial = is_coboundary(&pres, &rep, &d, 1e-8).map_err(err_str)?;
        if trivial != (nf.lambda <= 1e-8) {
            return Err(format!("lambda {} vs coboundary {}", nf.lambda, trivial));
        }
    }
    Ok(())
}

fn check_trace_gradient(tol: f64, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let pres = Presentation::torus();
    let lattice = random_lattice(rng);
    let rep = torus_rep(lattice);
    let rpt = cocycle_space(&pres, &rep, ModuleTag::R31, tol).map_err(err_str)?;
    for k in 0..rpt.dim_z1 {
        let d = rpt.z1_cocycle(k);
        for _ in 0..5 {
            let a = rng.gen_range(-3i64..4);
            let b = rng.gen_range(-3i64..4);
            let w = Word::generator_power(0, a).concat(&Word::generator_power(1, b));
            let g = trace_gradient(&rep, &d, &w).abs();
            if g > 1e-10 {
                return Err(format!("gradient {g} on word {w}"));
            }
        }
    }
    Ok(())
}

fn check_weil(tol: f64, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let pres = Presentation::torus();
    let lattice = random_lattice(rng);
    let rep = torus_rep(lattice);
    let rpt = cocycle_space(&pres, &rep, ModuleTag::R31, tol).map_err(err_str)?;
    let d = rpt.z1_cocycle(0);
    let d3 = weil_deform(&pres, &rep, &d, 1e-3).map_err(err_str)?;
    let d4 = weil_deform(&pres, &rep, &d, 1e-4).map_err(err_str)?;
    let ratio = d3 / d4;
    if !(80.0..120.0).contains(&ratio) {
        return Err(format!("defect ratio {ratio}, expected ~100"));
    }
    Ok(())
}

fn check_screw_family(_tol: f64, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let lattice = random_lattice(rng);
    let theta = rng.gen_range(0.0..std::f64::consts::PI);
    let omega = Vector2::new(theta.cos(), theta.sin());
    let lambda = rng.gen_range(0.5..2.0);
    let model = screw_model_cocycle(lattice, &omega, lambda);
    for (tau, value) in [(lattice.0, &model.values[0]), (lattice.1, &model.values[1])] {
        let base = embed(&parabolic_translation(tau[0], tau[1]));
        let deriv = family_derivative(|t| screw_member(tau, &omega, lambda, t), &base, 1e-4)
            .map_err(err_str)?;
        let expect = join(&LieElement::zero(3), value).map_err(err_str)?;
        let err = (&deriv - expect.matrix()).amax() / expect.matrix().amax().max(1e-12);
        if err > 1e-4 {
            return Err(format!("derivative relative error {err}"));
        }
        let c = r31_coords(value);
        let s = tau.dot(&rot90(&omega)) * lambda;
        if (c.alpha - s * omega[0]).abs() > 1e-12 || (c.beta - s * omega[1]).abs() > 1e-12 {
            return Err("model rotation data mismatch".into());
        }
    }
    Ok(())
}

fn check_slope_basis(tol: f64, _rng: &mut ChaCha8Rng) -> Result<(), String> {
    let k = TwoBridgeKnot::new(5, 3).map_err(err_str)?;
    let base = limit_slope_with_options(&k, None, tol, MERIDIAN_LONGITUDE).map_err(err_str)?;
    let l = base.l.ok_or("expected finite slope")?;
    let changed = limit_slope_with_options(&k, None, tol, [[1, 0], [1, 1]]).map_err(err_str)?;
    let l2 = changed.l.ok_or("expected finite slope")?;
    if (l2 - (l - 1.0)).abs() > 1e-9 {
        return Err(format!("basis change: {l2} vs {}", l - 1.0));
    }
    Ok(())
}
