use std::fmt::Write as _;

use dicelab_core::exact::to_decimal;
use dicelab_core::Rational;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Decimal places used for every printed probability.
pub const PLACES: u32 = 10;

/// Width of the longest bar in `bars` output.
pub const BAR_WIDTH: u32 = 60;

pub fn decimal(r: &Rational) -> String {
    to_decimal(r, PLACES).text
}

/// `56/216 ≈ 0.2592592593`, `10/32 = 0.3125`, or just `14` when the exact
/// text already is the decimal.
pub fn with_decimal(exact: &str, r: &Rational) -> String {
    let d = to_decimal(r, PLACES);
    if d.text == exact {
        exact.to_string()
    } else if d.exact {
        format!("{exact} = {}", d.text)
    } else {
        format!("{exact} ≈ {}", d.text)
    }
}

pub fn rational(r: &Rational) -> String {
    with_decimal(&r.to_string(), r)
}

/// One `(value, probability)` row of a distribution listing.
pub type Row = (i64, Rational);

pub fn csv(rows: &[Row], exact: bool, header: bool) -> String {
    let mut out = String::new();
    if header {
        out.push_str("value,probability\n");
    }
    for (v, p) in rows {
        let p = if exact { p.to_string() } else { decimal(p) };
        writeln!(out, "{v},{p}").unwrap();
    }
    out
}

pub fn table(rows: &[Row], label: &str) -> String {
    let fracs: Vec<String> = rows.iter().map(|(_, p)| p.to_string()).collect();
    let vw = rows
        .iter()
        .map(|(v, _)| v.to_string().len())
        .chain(["value".len()])
        .max()
        .unwrap();
    let fw = fracs
        .iter()
        .map(String::len)
        .chain([label.len()])
        .max()
        .unwrap();
    let mut out = String::new();
    writeln!(out, "{:>vw$}  {:>fw$}  decimal", "value", label).unwrap();
    for ((v, p), f) in rows.iter().zip(&fracs) {
        writeln!(out, "{v:>vw$}  {f:>fw$}  {}", decimal(p)).unwrap();
    }
    out
}

/// `round(BAR_WIDTH · p / top)`, halves rounded up, in exact arithmetic.
fn bar_len(p: &Rational, top: &Rational) -> usize {
    if top.is_zero() {
        return 0;
    }
    let scaled = p * Rational::from_integer(BigInt::from(BAR_WIDTH)) / top;
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    (scaled + half).floor().to_integer().to_usize().unwrap_or(0)
}

pub fn bars(rows: &[Row]) -> String {
    let top = rows
        .iter()
        .map(|(_, p)| p)
        .max()
        .cloned()
        .unwrap_or_else(Rational::zero);
    let vw = rows
        .iter()
        .map(|(v, _)| v.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for (v, p) in rows {
        let bar = "#".repeat(bar_len(p, &top));
        writeln!(
            out,
            "{v:>vw$} | {bar:<w$} {}",
            decimal(p),
            w = BAR_WIDTH as usize
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn decimal_markers() {
        assert_eq!(with_decimal("56/216", &q(56, 216)), "56/216 ≈ 0.2592592593");
        assert_eq!(with_decimal("10/32", &q(10, 32)), "10/32 = 0.3125");
        assert_eq!(rational(&q(14, 1)), "14");
        assert_eq!(rational(&q(5, 2)), "5/2 = 2.5");
    }

    #[test]
    fn csv_rows() {
        let rows = vec![(4, q(1, 1296)), (5, q(4, 1296))];
        assert_eq!(csv(&rows, false, false), "4,0.0007716049\n5,0.0030864198\n");
        assert_eq!(
            csv(&rows, true, true),
            "value,probability\n4,1/1296\n5,1/324\n"
        );
    }

    #[test]
    fn bars_scale_to_mode() {
        let rows = vec![(0, q(1, 4)), (1, q(1, 2)), (2, q(1, 4))];
        let text = bars(&rows);
        let lens: Vec<usize> = text.lines().map(|l| l.matches('#').count()).collect();
        assert_eq!(lens, [30, 60, 30]);
        assert_eq!(bar_len(&q(1, 120), &q(1, 1)), 1);
        assert_eq!(bar_len(&q(1, 121), &q(1, 1)), 0);
    }
}
