use std::collections::BTreeMap;
use std::io::Write;

use qwalk_core::bounds::{
    cutoff_profile, mixture_divergence_witness, mixture_stated_chain, threshold_c, threshold_d,
    tv_upper_from_a, wreath_threshold, Evaluator, Hypothesis, StatedBound, TruncationConfig, Walk,
};
use qwalk_core::numerics::lambda_moment;
use qwalk_core::structures::{lambda_theta, porod_integral};
use qwalk_core::verify::{run_suites, Suite};
use serde::Serialize;

use crate::error::CliError;
use crate::output::{num, sink, write_json};
use crate::spec::{parse_group, parse_nu, parse_psi, parse_range};
use crate::{
    BoundArgs, FamilyArg, Format, KGrid, MomentArgs, ProfileArgs, ReportFormat, ThresholdArgs,
    VerifyArgs, WalkArgs,
};

/// Parameters as given, echoed into every output.
#[derive(Serialize)]
struct WalkInfo {
    family: &'static str,
    #[serde(rename = "N")]
    n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    psi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    quad_points: Option<usize>,
}

fn require<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::usage(flag, format!("required for --family {family}")))
}

fn build_walk(a: &WalkArgs) -> Result<(Walk, TruncationConfig, WalkInfo), CliError> {
    let mut info = WalkInfo {
        family: "",
        n: a.n,
        tau: None,
        theta: None,
        group: None,
        psi: None,
        nu: None,
        quad_points: None,
    };
    let walk = match a.family {
        FamilyArg::Unitary => {
            let tau = require(a.tau, "--tau", "unitary")?;
            let nu_spec =
                a.nu.as_deref()
                    .ok_or_else(|| CliError::usage("--nu", "required for --family unitary"))?;
            info.tau = Some(tau);
            info.nu = Some(nu_spec.into());
            Walk::unitary(a.n, tau, parse_nu(nu_spec, a.n)?)?
        }
        FamilyArg::UnitaryEval => {
            let theta = require(a.theta, "--theta", "unitary-eval")?;
            info.theta = Some(theta);
            Walk::unitary_eval(a.n, theta)?
        }
        FamilyArg::Mixture => {
            if a.quad_points == 0 {
                return Err(CliError::usage("--quad-points", "must be positive"));
            }
            info.quad_points = Some(a.quad_points);
            Walk::mixture(a.n, a.quad_points.div_ceil(8))?
        }
        FamilyArg::Wreath => {
            let tau = require(a.tau, "--tau", "wreath")?;
            let spec = a
                .group
                .as_deref()
                .ok_or_else(|| CliError::usage("--group", "required for --family wreath"))?;
            let group = parse_group(spec)?;
            let psi = parse_psi(&a.psi, &group)?;
            info.tau = Some(tau);
            info.group = Some(spec.into());
            info.psi = Some(a.psi.clone());
            Walk::wreath(a.n, tau, group, psi)?
        }
    };
    info.family = walk.family().name();
    let default = walk.default_truncation();
    let tc = TruncationConfig::new(
        a.max_p.unwrap_or(default.max_p),
        a.max_total.unwrap_or(default.max_total),
    )
    .map_err(|e| CliError::usage("--max-p/--max-total", e.to_string()))?;
    Ok((walk, tc, info))
}

fn thresholds_of(walk: &Walk) -> BTreeMap<&'static str, f64> {
    let mut m = BTreeMap::new();
    m.insert("nominal_cutoff", walk.nominal_cutoff());
    m.insert("rate", walk.rate());
    match walk {
        Walk::Unitary { .. } | Walk::UnitaryEval { .. } => {
            let tau = walk.effective_tau();
            m.insert("tau_effective", tau);
            if let (Ok(c), Ok(d)) = (threshold_c(tau), threshold_d(tau)) {
                m.insert("C", c);
                m.insert("D", d);
                m.insert("tau_plus_C", tau + c);
            }
        }
        Walk::Mixture { .. } => {
            m.insert("N_min", 12.0);
        }
        Walk::Wreath { tau, .. } => {
            if let Ok(q) = wreath_threshold(*tau) {
                m.insert("Qthr", q);
            }
        }
    }
    m
}

fn steps(walk: &Walk, grid: &KGrid, round: bool) -> Result<Vec<f64>, CliError> {
    let mut ks = if let Some(k) = grid.k {
        vec![k]
    } else if let Some(c) = grid.c {
        vec![walk.k_from_c(c)]
    } else if let Some(r) = &grid.k_range {
        parse_range("--k-range", r)?
    } else if let Some(r) = &grid.c_range {
        parse_range("--c-range", r)?
            .into_iter()
            .map(|c| walk.k_from_c(c))
            .collect()
    } else {
        unreachable!("clap requires one of the grid flags")
    };
    if round {
        ks.iter_mut().for_each(|k| *k = k.round());
    }
    if ks.is_empty() {
        return Err(CliError::usage(
            "--k-range/--c-range",
            "the step grid is empty",
        ));
    }
    if let Some(k) = ks.iter().find(|k| !(**k >= 0.0)) {
        return Err(CliError::usage(
            "--k/--c",
            format!("step count {k} is negative; raise c or N"),
        ));
    }
    Ok(ks)
}

fn all_hold(h: &[Hypothesis]) -> bool {
    h.iter().all(|h| h.holds)
}

#[derive(Serialize)]
struct JsonRow {
    k: f64,
    c: f64,
    tv_upper_lo: f64,
    tv_upper_hi: f64,
    tv_lower: f64,
    certified: bool,
    hypotheses_hold: bool,
}

#[derive(Serialize)]
struct ProfileDoc<'a> {
    walk: &'a WalkInfo,
    truncation: TruncationConfig,
    thresholds: BTreeMap<&'static str, f64>,
    hypotheses: Vec<String>,
    rows: Vec<JsonRow>,
}

pub fn profile(a: ProfileArgs) -> Result<u8, CliError> {
    let (walk, tc, info) = build_walk(&a.walk)?;
    let ks = steps(&walk, &a.grid, a.round_k)?;
    if a.threads == 0 {
        return Err(CliError::usage("--threads", "must be at least 1"));
    }
    let ev = Evaluator::new(walk.clone(), tc)?;
    let prof = cutoff_profile(&ev, &ks, a.threads)?;
    let rows: Vec<JsonRow> = prof
        .rows
        .iter()
        .map(|r| JsonRow {
            k: r.k,
            c: r.c,
            tv_upper_lo: r.tv_upper_lo,
            tv_upper_hi: r.tv_upper_hi,
            tv_lower: r.tv_lower,
            certified: r.certified,
            hypotheses_hold: all_hold(&walk.hypotheses(r.k)),
        })
        .collect();
    let hypotheses: Vec<String> = walk
        .hypotheses(prof.rows[0].k)
        .into_iter()
        .map(|h| h.name)
        .collect();
    let doc = ProfileDoc {
        walk: &info,
        truncation: tc,
        thresholds: thresholds_of(&walk),
        hypotheses,
        rows,
    };
    match a.format {
        Format::Json => write_json(a.output.as_deref(), &doc)?,
        Format::Csv => {
            let mut w = sink(a.output.as_deref())?;
            let params = serde_json::to_value(doc.walk)?;
            let params: Vec<String> = params
                .as_object()
                .expect("struct")
                .iter()
                .map(|(k, v)| {
                    format!(
                        "{k}={}",
                        v.as_str().map_or_else(|| v.to_string(), str::to_owned)
                    )
                })
                .collect();
            writeln!(w, "# {}", params.join(" "))?;
            writeln!(
                w,
                "# truncation max_p={} max_total={}",
                tc.max_p, tc.max_total
            )?;
            let th: Vec<String> = doc
                .thresholds
                .iter()
                .map(|(k, v)| format!("{k}={}", num(*v)))
                .collect();
            writeln!(w, "# {}", th.join(" "))?;
            for h in &doc.hypotheses {
                writeln!(w, "# hypothesis: {h}")?;
            }
            let mut out = csv::Writer::from_writer(&mut w);
            out.write_record([
                "k",
                "c",
                "tv_upper_lo",
                "tv_upper_hi",
                "tv_lower",
                "certified",
                "hypotheses_hold",
            ])?;
            for r in &doc.rows {
                out.write_record([
                    num(r.k),
                    num(r.c),
                    num(r.tv_upper_lo),
                    num(r.tv_upper_hi),
                    num(r.tv_lower),
                    r.certified.to_string(),
                    r.hypotheses_hold.to_string(),
                ])?;
            }
            out.flush()?;
            drop(out);
            w.flush()?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct Witness {
    block: u64,
    log_term_lower: f64,
}

#[derive(Serialize)]
struct BoundDoc<'a> {
    walk: &'a WalkInfo,
    truncation: TruncationConfig,
    thresholds: BTreeMap<&'static str, f64>,
    k: f64,
    c: f64,
    a_partial: f64,
    a_partial_ln: f64,
    a_tail: Option<f64>,
    a_upper: Option<f64>,
    certified: bool,
    estimated: bool,
    terms_used: String,
    certificate: String,
    tv_upper_lo: f64,
    tv_upper_hi: f64,
    tv_upper_clamped: bool,
    tv_lower: f64,
    hypotheses: Vec<Hypothesis>,
    stated: StatedBound,
    #[serde(skip_serializing_if = "Option::is_none")]
    divergence_witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stated_chain_a_upper: Option<Option<f64>>,
}

pub fn bound(a: BoundArgs) -> Result<u8, CliError> {
    let (walk, tc, info) = build_walk(&a.walk)?;
    let grid = KGrid {
        k: a.point.k,
        c: a.point.c,
        k_range: None,
        c_range: None,
    };
    let k = steps(&walk, &grid, a.round_k)?[0];
    let ev = Evaluator::new(walk.clone(), tc)?;
    let ak = ev.a_k(k)?;
    let tv = tv_upper_from_a(&ak);
    let (witness, chain) = match walk {
        Walk::Mixture { n, .. } => (
            mixture_divergence_witness(n, k, 40)?.map(|w| Witness {
                block: w.block,
                log_term_lower: w.log_term_lower,
            }),
            Some(mixture_stated_chain(n, k)?.map(f64::exp)),
        ),
        _ => (None, None),
    };
    let doc = BoundDoc {
        walk: &info,
        truncation: tc,
        thresholds: thresholds_of(&walk),
        k,
        c: walk.c_from_k(k),
        a_partial: ak.partial.to_f64(),
        a_partial_ln: ak.partial.logmag(),
        a_tail: ak.tail.map(|t| t.to_f64()),
        a_upper: ak.upper().filter(|_| ak.is_certified()).map(|u| u.to_f64()),
        certified: ak.is_certified(),
        estimated: ak.estimated,
        terms_used: ak.terms_used.to_string(),
        certificate: ak.certificate.clone(),
        tv_upper_lo: tv.lo,
        tv_upper_hi: tv.hi,
        tv_upper_clamped: tv.clamped,
        tv_lower: walk.tv_lower(k)?,
        hypotheses: walk.hypotheses(k),
        stated: walk.stated_bound(k),
        divergence_witness: witness,
        stated_chain_a_upper: chain,
    };
    write_json(a.output.as_deref(), &doc)?;
    Ok(0)
}

#[derive(Serialize)]
struct ThresholdDoc {
    tau: f64,
    #[serde(rename = "C")]
    c: f64,
    #[serde(rename = "D")]
    d: f64,
    tau_plus_c: f64,
    #[serde(rename = "Qthr")]
    q_thr: Option<f64>,
    #[serde(rename = "N")]
    n: u64,
    cutoff_steps: f64,
}

pub fn thresholds(a: ThresholdArgs) -> Result<u8, CliError> {
    let c = threshold_c(a.tau).map_err(|e| CliError::usage("--tau", e.to_string()))?;
    let nf = a.n as f64;
    let doc = ThresholdDoc {
        tau: a.tau,
        c,
        d: threshold_d(a.tau)?,
        tau_plus_c: a.tau + c,
        q_thr: wreath_threshold(a.tau).ok(),
        n: a.n,
        cutoff_steps: nf * nf.ln() / a.tau,
    };
    write_json(a.output.as_deref(), &doc)?;
    Ok(0)
}

#[derive(Serialize)]
struct CircleMoment {
    eps: i64,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct LambdaRow {
    l: u64,
    closed_form: f64,
    quadrature: f64,
    shifted_product: f64,
}

#[derive(Serialize)]
struct MomentDoc {
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    circle_moments: Vec<CircleMoment>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    lambda_moments: Vec<LambdaRow>,
}

pub fn moments(a: MomentArgs) -> Result<u8, CliError> {
    if a.n.is_none() && a.nu.is_none() {
        return Err(CliError::usage("--N/--nu", "give at least one of them"));
    }
    if a.quad_points == 0 {
        return Err(CliError::usage("--quad-points", "must be positive"));
    }
    let panels = a.quad_points.div_ceil(8);
    let mut doc = MomentDoc {
        n: a.n,
        nu: a.nu.clone(),
        circle_moments: Vec::new(),
        lambda_moments: Vec::new(),
    };
    if let Some(spec) = &a.nu {
        let n = if spec == "porod" {
            require(a.n, "--N", "moments --nu porod")?
        } else {
            a.n.unwrap_or(3)
        };
        let nu = parse_nu(spec, n)?;
        for e in -a.eps_max.abs()..=a.eps_max.abs() {
            let m = nu.moment_with(e, panels);
            doc.circle_moments.push(CircleMoment {
                eps: e,
                re: m.re,
                im: m.im,
            });
        }
    }
    if let Some(n) = a.n {
        for l in 0..=a.l_max {
            let closed = lambda_moment(n, l)?;
            let quad = porod_integral(n, panels, |th| lambda_theta(th).powi(l as i32));
            let shifted = (1..=l)
                .map(|s| 2.0 * (n + 2 * s) as f64 / (n + 2 * s + 1) as f64)
                .product();
            doc.lambda_moments.push(LambdaRow {
                l,
                closed_form: closed,
                quadrature: quad,
                shifted_product: shifted,
            });
        }
    }
    write_json(a.output.as_deref(), &doc)?;
    Ok(0)
}

pub fn verify(a: VerifyArgs) -> Result<u8, CliError> {
    let mut suites = Vec::new();
    for name in &a.suite {
        if name == "all" {
            suites.extend(Suite::ALL);
        } else {
            let s = Suite::from_name(name).ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                CliError::usage(
                    "--suite",
                    format!(
                        "unknown suite `{name}`; expected all or one of {}",
                        names.join(", ")
                    ),
                )
            })?;
            suites.push(s);
        }
    }
    suites.dedup();
    let summary = run_suites(&suites)?;
    print!("{summary}");
    if let Some(path) = &a.report {
        match a.format {
            ReportFormat::Json => write_json(Some(path), &summary)?,
            ReportFormat::Text => {
                let mut w = sink(Some(path))?;
                write!(w, "{summary}")?;
                w.flush()?;
            }
        }
    }
    Ok(if summary.all_as_expected() { 0 } else { 1 })
}
