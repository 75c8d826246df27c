//! Scripted answers to the seven problem sheets.
//!
//! Every sheet uses fixed parameters and prints no timings, so the output is
//! byte-for-byte reproducible.

use std::fmt::Write as _;

use dicelab_core::clt::{
    approximation_report, sigma_from_empirical_rule, Continuity, EmpiricalRule, Orientation,
};
use dicelab_core::dsl::parse;
use dicelab_core::exact::to_f64;
use dicelab_core::space::{DieSpec, Outcome, SampleSpace};
use dicelab_core::stats::{
    event_weight, expectation, favorable, pmf, variance_definitional, variance_moments,
    CdfConvention, EventWeight,
};
use dicelab_core::sumdist::sum_pmf_convolution;
use dicelab_core::Rational;
use num_bigint::BigInt;
use num_traits::Signed;

use crate::commands::dist_rows;
use crate::error::CliError;
use crate::render;

type Out = Result<String, CliError>;

pub fn sheet(n: u8, search_fair: bool) -> Out {
    if search_fair && n != 4 {
        return Err(CliError::usage("--search-fair only applies to sheet 4"));
    }
    match n {
        1 => sheet1(),
        2 => sheet2(),
        3 => sheet3(),
        4 => sheet4(search_fair),
        5 => sheet5(),
        6 => sheet6(),
        7 => sheet7(),
        _ => Err(CliError::usage(format!("there is no sheet {n}"))),
    }
}

fn die() -> DieSpec {
    DieSpec::fair(1..=6)
}

fn weight(space: &SampleSpace, event: &str) -> Result<EventWeight, CliError> {
    Ok(event_weight(
        space,
        &parse(event).expect("fixed expression"),
    )?)
}

fn prob_line(out: &mut String, label: &str, w: &EventWeight) {
    let p = w.probability();
    writeln!(
        out,
        "{label} = {}",
        render::with_decimal(&w.to_string(), p.as_rational())
    )
    .unwrap();
}

fn joined(o: &Outcome, die: &DieSpec) -> String {
    o.face_indices()
        .iter()
        .map(|&i| die.faces()[i].label.as_str())
        .collect()
}

fn sheet1() -> Out {
    let space = SampleSpace::new(die(), 1);
    let mut out = String::from("Sheet 1: one fair die\n");
    prob_line(&mut out, "P(face > 4)", &weight(&space, "sum > 4")?);
    prob_line(&mut out, "P(face > 3)", &weight(&space, "sum > 3")?);
    Ok(out)
}

fn sheet2() -> Out {
    let space = SampleSpace::new(die(), 3);
    let mut out = String::new();
    writeln!(
        out,
        "Sheet 2: three fair dice, |Ω| = {}",
        space.cardinality()
    )
    .unwrap();
    writeln!(out, "desired event: d1 <= d2 <= d3").unwrap();
    prob_line(
        &mut out,
        "P(d1 <= d2 <= d3)",
        &weight(&space, "d1 <= d2 <= d3")?,
    );
    let mut parts = Vec::new();
    for k in 1..=6 {
        let w = weight(&space, &format!("d1 <= d2 <= d3 and d3 == {k}"))?;
        parts.push(w.favorable.to_string());
    }
    let total = weight(&space, "d1 <= d2 <= d3")?.favorable;
    writeln!(out, "by last die: {} = {total}", parts.join(" + ")).unwrap();
    prob_line(
        &mut out,
        "P(d1 < d2 < d3)",
        &weight(&space, "d1 < d2 < d3")?,
    );
    Ok(out)
}

fn sheet3() -> Out {
    let space = SampleSpace::new(die(), 3);
    let event = parse("d1 <= d2 <= d3").unwrap();
    let listed = favorable(&space, &event)?;
    let mut out = String::from("Sheet 3: favorable outcomes of d1 <= d2 <= d3, sorted\n");
    for row in listed.chunks(8) {
        let cells: Vec<String> = row
            .iter()
            .map(|o| o.display(space.die()).to_string())
            .collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    writeln!(out, "count: {} of {}", listed.len(), space.cardinality()).unwrap();
    let five = SampleSpace::new(die(), 5);
    prob_line(
        &mut out,
        "five dice: P(d1 <= d2 <= d3 <= d4 <= d5)",
        &weight(&five, "d1 <= d2 <= d3 <= d4 <= d5")?,
    );
    Ok(out)
}

fn sheet4(search_fair: bool) -> Out {
    let four = SampleSpace::new(die(), 4);
    let mut out = String::from("Sheet 4\n");
    writeln!(out, "Q2: four fair dice, Alice wins if 7 <= sum <= 14").unwrap();
    let alice = weight(&four, "7 <= sum <= 14")?;
    let bob = weight(&four, "not 7 <= sum <= 14")?;
    prob_line(&mut out, "P(Alice)", &alice);
    prob_line(&mut out, "P(Bob)", &bob);
    let winner = match alice.favorable.cmp(&bob.favorable) {
        std::cmp::Ordering::Greater => "Alice",
        std::cmp::Ordering::Less => "Bob",
        std::cmp::Ordering::Equal => "neither",
    };
    writeln!(out, "advantage: {winner}").unwrap();
    if search_fair {
        search_fair_rules(&mut out, &four)?;
    }
    let two = SampleSpace::new(die(), 2);
    writeln!(
        out,
        "Q4: two fair dice, X(ω) = d1 + d2, E = {{ω | X(ω) == 10}}"
    )
    .unwrap();
    let e = favorable(&two, &parse("d1 + d2 == 10").unwrap())?;
    let cells: Vec<String> = e.iter().map(|o| o.display(two.die()).to_string()).collect();
    writeln!(out, "E = {{{}}}", cells.join(", ")).unwrap();
    prob_line(&mut out, "P(E)", &weight(&two, "d1 + d2 == 10")?);
    Ok(out)
}

/// Every rule `a <= sum <= b` closest to a fair game.
fn search_fair_rules(out: &mut String, space: &SampleSpace) -> Result<(), CliError> {
    let dist = pmf(space, &parse("sum").unwrap())?;
    let total = BigInt::from(space.denominator().clone());
    let scale = Rational::from_integer(total.clone());
    // integer weights per value, then prefix sums
    let values: Vec<(i64, BigInt)> = dist
        .dense()
        .into_iter()
        .map(|(v, m)| (v, (m * &scale).to_integer()))
        .collect();
    let mut prefix = vec![BigInt::from(0)];
    for (_, w) in &values {
        let next = prefix.last().unwrap() + w;
        prefix.push(next);
    }
    let mut best: Option<BigInt> = None;
    let mut hits = Vec::new();
    for i in 0..values.len() {
        for j in i..values.len() {
            let w: BigInt = &prefix[j + 1] - &prefix[i];
            let twice: BigInt = &w * 2;
            let gap = (twice - &total).abs();
            match &best {
                Some(b) if gap > *b => continue,
                Some(b) if gap == *b => {}
                _ => {
                    best = Some(gap.clone());
                    hits.clear();
                }
            }
            hits.push((values[i].0, values[j].0, w));
        }
    }
    let best = best.expect("nonempty support");
    writeln!(out, "Q3: rules a <= sum <= b closest to a fair game").unwrap();
    for (a, b, w) in &hits {
        let w = EventWeight {
            favorable: w.to_biguint().unwrap(),
            total: space.denominator().clone(),
        };
        prob_line(out, &format!("P({a} <= sum <= {b})"), &w);
    }
    if best == BigInt::from(0) {
        writeln!(out, "these rules are exactly fair").unwrap();
    } else {
        // |w/total - 1/2| = gap / (2 total); keep the space size as denominator when possible
        let two = BigInt::from(2);
        let gap = if (&best % &two) == BigInt::from(0) {
            format!("{}/{}", &best / &two, total)
        } else {
            format!("{}/{}", best, &total * &two)
        };
        writeln!(out, "|P - 1/2| = {gap}; no contiguous rule is exactly fair").unwrap();
    }
    Ok(())
}

fn sheet5() -> Out {
    let coin = DieSpec::coin();
    let space = SampleSpace::new(coin.clone(), 5);
    let mut out = String::from("Sheet 5: a fair coin tossed 5 times (K heads, Z tails)\n");
    let event = parse("count(K) == 2").unwrap();
    let two = favorable(&space, &event)?;
    let words: Vec<String> = two.iter().map(|o| joined(o, &coin)).collect();
    writeln!(out, "exactly two heads: {}", words.join(" ")).unwrap();
    prob_line(&mut out, "P(count(K) == 2)", &event_weight(&space, &event)?);
    let x = parse("count(K)").unwrap();
    writeln!(out, "X = count(K)").unwrap();
    writeln!(out, "E = {}", render::rational(&expectation(&space, &x)?)).unwrap();
    let vd = variance_definitional(&space, &x)?;
    let vm = variance_moments(&space, &x)?;
    writeln!(out, "V = {}  [E((X-E(X))^2)]", render::rational(&vd)).unwrap();
    writeln!(out, "V = {}  [E(X^2)-E(X)^2]", render::rational(&vm)).unwrap();
    writeln!(out, "n tosses:").unwrap();
    for n in 1..=8 {
        let s = SampleSpace::new(coin.clone(), n);
        writeln!(
            out,
            "  n = {n}: E = {}, V = {}",
            expectation(&s, &x)?,
            variance_moments(&s, &x)?
        )
        .unwrap();
    }
    Ok(out)
}

fn sheet6() -> Out {
    let mut out = String::from("Sheet 6\n");
    writeln!(out, "variance both ways:").unwrap();
    let cases = [
        ("coin, 5 tosses, count(K)", DieSpec::coin(), 5, "count(K)"),
        ("die, 6 rolls, sum", die(), 6, "sum"),
        ("die, 7 rolls, sum", die(), 7, "sum"),
    ];
    for (label, d, n, rv) in cases {
        let space = SampleSpace::new(d, n);
        let x = parse(rv).unwrap();
        let vd = variance_definitional(&space, &x)?;
        let vm = variance_moments(&space, &x)?;
        writeln!(
            out,
            "  {label}: {vd} and {vm}, identical: {}",
            if vd == vm { "yes" } else { "no" }
        )
        .unwrap();
    }
    writeln!(out, "five coins, count(K):").unwrap();
    let coins = pmf(
        &SampleSpace::new(DieSpec::coin(), 5),
        &parse("count(K)").unwrap(),
    )?;
    out.push_str(&render::csv(&dist_rows(&coins, None, None)?, false, false));

    let four = SampleSpace::new(die(), 4);
    let sums = pmf(&four, &parse("sum").unwrap())?;
    writeln!(out, "four dice, sum, values 0..30:").unwrap();
    out.push_str(&render::csv(
        &dist_rows(&sums, None, Some(30))?,
        false,
        false,
    ));
    writeln!(
        out,
        "support: {}..{}, E(sum) = {}",
        sums.support_min(),
        sums.support_max(),
        expectation(&four, &parse("sum").unwrap())?
    )
    .unwrap();
    writeln!(out, "four dice, P(sum < h) for h in 0..30:").unwrap();
    out.push_str(&render::csv(
        &dist_rows(&sums, Some(CdfConvention::StrictBelow), Some(30))?,
        false,
        false,
    ));
    Ok(out)
}

fn sheet7() -> Out {
    let mut out = String::from("Sheet 7\n");
    for d in 1..=4 {
        writeln!(out, "d = {d}, sum:").unwrap();
        let dist = sum_pmf_convolution(&die(), d);
        out.push_str(&render::csv(&dist_rows(&dist, None, None)?, false, false));
    }
    writeln!(out, "normal approximation, continuity correction on:").unwrap();
    writeln!(out, "  d  mu  sigma  sup_error  total_variation").unwrap();
    for d in 1..=4 {
        let r = approximation_report(&die(), d, Continuity::On)?;
        writeln!(
            out,
            "  {d}  {:.10}  {:.10}  {:.10}  {:.10}",
            r.mu, r.sigma, r.sup_error, r.total_variation
        )
        .unwrap();
    }
    let four = sum_pmf_convolution(&die(), 4);
    let m = four.moments();
    let mean = to_f64(&m.mean);
    writeln!(out, "inflection guess i = 18, mean = {}", m.mean).unwrap();
    for rule in [EmpiricalRule::AsPrinted, EmpiricalRule::Corrected] {
        let s = sigma_from_empirical_rule(18.0, mean, rule, Orientation::Reject)?;
        writeln!(out, "  sigma with Φ(z) = {:.10}: {s:.10}", rule.level()).unwrap();
    }
    writeln!(
        out,
        "  exact sigma = sqrt({}) ≈ {:.10}",
        m.variance,
        m.std_dev()
    )
    .unwrap();
    Ok(out)
}
