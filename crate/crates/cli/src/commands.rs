use std::fmt::Write as _;

use dicelab_core::clt::{
    approximation_report, sigma_from_empirical_rule, Continuity, EmpiricalRule, Orientation,
};
use dicelab_core::dsl::{parse, BoundExpr, Expr, Ty};
use dicelab_core::exact::to_f64;
use dicelab_core::space::SampleSpace;
use dicelab_core::stats::{
    cdf, event_weight, expectation, favorable_capped, pmf, variance_definitional, variance_moments,
    CdfConvention, Distribution,
};
use dicelab_core::sumdist::{compare_paths, sum_pmf_convolution, Verdict};

use crate::error::CliError;
use crate::render::{self, Row};
use crate::{
    BenchArgs, CdfArg, CltArgs, DistArgs, Engine, Format, ProbArgs, RuleArg, StatsArgs, Switch,
};

/// Parses `src` and checks it binds to `space` with root type `ty`.
/// Binding notes (such as an ambiguous `count`) go to stderr.
pub fn expression(flag: &str, src: &str, space: &SampleSpace, ty: Ty) -> Result<Expr, CliError> {
    let expr = parse(src).map_err(|e| CliError::parse(flag, src, &e))?;
    let bound = BoundExpr::bind(&expr, space.die(), space.dice())
        .map_err(|e| CliError::usage(format!("{flag}: {e}")))?;
    for note in bound.diagnostics() {
        eprintln!("note: {note}");
    }
    if bound.ty() != ty {
        return Err(CliError::usage(format!(
            "{flag}: expected a {ty} expression, `{src}` is {}",
            bound.ty()
        )));
    }
    Ok(expr)
}

pub fn prob(a: &ProbArgs) -> Result<String, CliError> {
    let space = a.space.space()?;
    let event = expression("--event", &a.event, &space, Ty::Bool)?;
    let mut out = String::new();
    if a.list {
        for o in favorable_capped(&space, &event, a.list_cap)? {
            writeln!(out, "{}", o.display(space.die())).unwrap();
        }
    }
    let w = event_weight(&space, &event)?;
    let p = w.probability();
    match a.format {
        Format::Table => writeln!(
            out,
            "{}",
            render::with_decimal(&w.to_string(), p.as_rational())
        )
        .unwrap(),
        Format::Csv => {
            if a.header {
                out.push_str("favorable,total,probability\n");
            }
            let d = render::decimal(p.as_rational());
            writeln!(out, "{},{},{d}", w.favorable, w.total).unwrap();
        }
        Format::Bars => return Err(CliError::usage("prob: --format bars is not available")),
    }
    Ok(out)
}

pub fn stats(a: &StatsArgs) -> Result<String, CliError> {
    let space = a.space.space()?;
    let rv = expression("--rv", &a.rv, &space, Ty::Int)?;
    let e = expectation(&space, &rv)?;
    let vd = variance_definitional(&space, &rv)?;
    let vm = variance_moments(&space, &rv)?;
    let mut out = String::new();
    writeln!(out, "E = {}", render::rational(&e)).unwrap();
    writeln!(out, "V = {}  [E((X-E(X))^2)]", render::rational(&vd)).unwrap();
    writeln!(out, "V = {}  [E(X^2)-E(X)^2]", render::rational(&vm)).unwrap();
    writeln!(out, "identical: {}", if vd == vm { "yes" } else { "no" }).unwrap();
    Ok(out)
}

fn convention(c: CdfArg) -> CdfConvention {
    match c {
        CdfArg::Inclusive => CdfConvention::Inclusive,
        CdfArg::Strict => CdfConvention::StrictBelow,
    }
}

/// Rows of a distribution listing: masses or cumulative values, over the
/// tight support or padded to `0..pad`.
pub fn dist_rows(
    dist: &Distribution,
    cdf_conv: Option<CdfConvention>,
    pad: Option<i64>,
) -> Result<Vec<Row>, CliError> {
    if let Some(n) = pad {
        if dist.support_min() < 0 || dist.support_max() >= n {
            return Err(CliError::usage(format!(
                "--pad {n}: support {}..{} does not fit in 0..{n}",
                dist.support_min(),
                dist.support_max()
            )));
        }
        return Ok((0..n)
            .map(|h| {
                let p = match cdf_conv {
                    Some(c) => dist.cdf_at(h, c),
                    None => dist.mass(h),
                };
                (h, p)
            })
            .collect());
    }
    Ok(match cdf_conv {
        Some(c) => cdf(dist, c),
        None => dist.dense(),
    })
}

pub fn dist(a: &DistArgs) -> Result<String, CliError> {
    let space = a.space.space()?;
    let rv = expression("--rv", &a.rv, &space, Ty::Int)?;
    let engine = match a.engine {
        Engine::Auto if rv.is_sum() => Engine::Conv,
        Engine::Auto => Engine::Enum,
        Engine::Conv if !rv.is_sum() => {
            return Err(CliError::usage(
                "--engine conv: the convolution engine only computes the random variable `sum`",
            ))
        }
        e => e,
    };
    let dist = match engine {
        Engine::Conv => sum_pmf_convolution(space.die(), space.dice()),
        _ => pmf(&space, &rv)?,
    };
    let rows = dist_rows(&dist, a.cdf.map(convention), a.pad)?;
    Ok(match a.format {
        Format::Csv => render::csv(&rows, a.exact, a.header),
        Format::Bars => render::bars(&rows),
        Format::Table => render::table(
            &rows,
            if a.cdf.is_some() {
                "cumulative"
            } else {
                "probability"
            },
        ),
    })
}

pub fn continuity(s: Switch) -> Continuity {
    match s {
        Switch::On => Continuity::On,
        Switch::Off => Continuity::Off,
    }
}

pub fn clt(a: &CltArgs) -> Result<String, CliError> {
    let die = a.die.die()?;
    let max_d = a.dice as usize;
    let mut out = String::new();
    match a.format {
        Format::Table => writeln!(
            out,
            "{:>3}  {:>16}  {:>14}  {:>12}  {:>15}",
            "d", "mu", "sigma", "sup_error", "total_variation"
        )
        .unwrap(),
        Format::Csv if a.header => out.push_str("d,mu,sigma,sup_error,total_variation\n"),
        Format::Csv => {}
        Format::Bars => return Err(CliError::usage("clt: --format bars is not available")),
    }
    for d in 1..=max_d {
        let r = approximation_report(&die, d, continuity(a.correction))?;
        match a.format {
            Format::Csv => writeln!(
                out,
                "{d},{:.10},{:.10},{:.10},{:.10}",
                r.mu, r.sigma, r.sup_error, r.total_variation
            ),
            _ => writeln!(
                out,
                "{d:>3}  {:>16.10}  {:>14.10}  {:>12.10}  {:>15.10}",
                r.mu, r.sigma, r.sup_error, r.total_variation
            ),
        }
        .unwrap();
    }
    if let Some(i) = a.inflection {
        let mean = match a.mean {
            Some(m) => m,
            None => to_f64(&sum_pmf_convolution(&die, max_d).mean()),
        };
        let rule = match a.rule {
            RuleArg::Printed => EmpiricalRule::AsPrinted,
            RuleArg::Corrected => EmpiricalRule::Corrected,
        };
        let orientation = if a.absolute {
            Orientation::Absolute
        } else {
            Orientation::Reject
        };
        let sigma = sigma_from_empirical_rule(i, mean, rule, orientation)?;
        writeln!(
            out,
            "sigma from inflection {i} and mean {mean} with Φ(z) = {:.10}: {sigma:.10}",
            rule.level()
        )
        .unwrap();
    }
    Ok(out)
}

pub fn bench(a: &BenchArgs) -> Result<String, CliError> {
    if a.from > a.to {
        return Err(CliError::usage("bench: --from must not exceed --to"));
    }
    let die = a.die.die()?;
    let mut out = String::new();
    match a.format {
        Format::Table => writeln!(
            out,
            "{:>3}  {:>22}  {:>12}  {:>14}  {:>10}  check",
            "d", "outcomes", "conv_ms", "enum_ms", "speedup"
        )
        .unwrap(),
        Format::Csv if a.header => out.push_str("d,outcomes,conv_ms,enum_ms,speedup,check\n"),
        Format::Csv => {}
        Format::Bars => return Err(CliError::usage("bench: --format bars is not available")),
    }
    for d in a.from..=a.to {
        let d = d as usize;
        let r = compare_paths(&die, d, a.cap);
        let outcomes = SampleSpace::new(die.clone(), d).cardinality().to_string();
        let conv_ms = format!("{:.3}", r.convolution_time.as_secs_f64() * 1e3);
        let (enum_ms, speedup) = match (r.enumeration_time, r.speedup()) {
            (Some(t), Some(s)) => (format!("{:.3}", t.as_secs_f64() * 1e3), format!("{s:.1}")),
            _ => ("skipped (cap)".to_string(), "-".to_string()),
        };
        let check = match r.verdict {
            Verdict::Equal => "equal",
            Verdict::Mismatch => "MISMATCH",
            Verdict::Unchecked => "unchecked",
        };
        match a.format {
            Format::Csv => writeln!(out, "{d},{outcomes},{conv_ms},{enum_ms},{speedup},{check}"),
            _ => writeln!(
                out,
                "{d:>3}  {outcomes:>22}  {conv_ms:>12}  {enum_ms:>14}  {speedup:>10}  {check}"
            ),
        }
        .unwrap();
    }
    Ok(out)
}
