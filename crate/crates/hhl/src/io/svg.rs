//! SVG rendering of the stratification on the fundamental domain: hyperplane
//! traces clipped to the unit square and marked 0-cells. Presentation output
//! only, but byte-deterministic for a fixed input.

use crate::error::{HhlError, Result};
use crate::stratification::StrataComplex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

const MARGIN: i64 = 60;
const SPAN: i64 = 520;

fn rat(v: i64) -> BigRational {
    BigRational::from(BigInt::from(v))
}

/// Map a unit-domain coordinate to canvas space, rounded to 2 decimals.
fn coord(t: &BigRational) -> String {
    let v = rat(MARGIN) + rat(SPAN) * t;
    let scaled = (v * rat(100)).round().to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let abs = scaled.abs();
    let int_part = &abs / 100;
    let frac = &abs % 100;
    format!("{sign}{int_part}.{frac:02}")
}

/// Same, with the vertical axis flipped (SVG y grows downward).
fn coord_flipped(t: &BigRational) -> String {
    coord(&(BigRational::one() - t))
}

fn strict_floor(v: &BigRational) -> BigInt {
    if v.is_integer() {
        v.to_integer() - 1
    } else {
        v.floor().to_integer()
    }
}

/// Lifts of all 0-cells landing in the fundamental domain. The 1-dimensional
/// picture uses the half-open interval `[0,1)`; the square is closed, so
/// identified corners are all visible.
fn zero_cell_lifts(strata: &StrataComplex, closed: bool) -> Vec<Vec<BigRational>> {
    let k = strata.input.k;
    let mut out = Vec::new();
    for &id in &strata.by_dim[0] {
        let p = &strata.strata[id].interior_point.0;
        let ranges: Vec<(BigInt, BigInt)> = p
            .iter()
            .map(|x| {
                let lo = (-x).ceil().to_integer();
                let hi = if closed {
                    (BigRational::one() - x).floor().to_integer()
                } else {
                    strict_floor(&(BigRational::one() - x))
                };
                (lo, hi)
            })
            .collect();
        let mut shift = vec![BigInt::zero(); k];
        enumerate_shifts(&ranges, &mut shift, 0, &mut |z| {
            let point: Vec<BigRational> = p
                .iter()
                .zip(z)
                .map(|(x, d)| x + BigRational::from(d.clone()))
                .collect();
            out.push(point);
        });
    }
    out.sort();
    out.dedup();
    out
}

fn enumerate_shifts(
    ranges: &[(BigInt, BigInt)],
    shift: &mut Vec<BigInt>,
    level: usize,
    emit: &mut impl FnMut(&[BigInt]),
) {
    if level == ranges.len() {
        emit(shift);
        return;
    }
    let (lo, hi) = &ranges[level];
    let mut z = lo.clone();
    while &z <= hi {
        shift[level] = z.clone();
        enumerate_shifts(ranges, shift, level + 1, emit);
        z += 1;
    }
}

/// Intersection of the line `p . x = a` with the closed unit square, as 0, 1
/// or 2 boundary points.
fn clip_line_to_square(p: &[BigInt], a: &BigInt) -> Vec<(BigRational, BigRational)> {
    let p1 = BigRational::from(p[0].clone());
    let p2 = BigRational::from(p[1].clone());
    let a = BigRational::from(a.clone());
    let mut pts: Vec<(BigRational, BigRational)> = Vec::new();
    let unit = |v: &BigRational| *v >= BigRational::zero() && *v <= BigRational::one();
    // vertical edges x = c
    for c in [BigRational::zero(), BigRational::one()] {
        if !p2.is_zero() {
            let y = (&a - &p1 * &c) / p2.clone();
            if unit(&y) {
                pts.push((c.clone(), y));
            }
        }
    }
    // horizontal edges y = c
    for c in [BigRational::zero(), BigRational::one()] {
        if !p1.is_zero() {
            let x = (&a - &p2 * &c) / p1.clone();
            if unit(&x) {
                pts.push((x, c.clone()));
            }
        }
    }
    pts.sort();
    pts.dedup();
    if pts.len() > 2 {
        // collinear points; keep the extremes
        pts = vec![pts.first().unwrap().clone(), pts.last().unwrap().clone()];
    }
    pts
}

pub fn export_svg(strata: &StrataComplex) -> Result<String> {
    match strata.input.k {
        1 => Ok(render_line(strata)),
        2 => Ok(render_square(strata)),
        k => Err(HhlError::Input(format!("svg supports k <= 2, got k = {k}"))),
    }
}

fn render_line(strata: &StrataComplex) -> String {
    let mut out = String::new();
    out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"120\" viewBox=\"0 0 640 120\">\n");
    out.push_str(&format!(
        "  <line x1=\"{}\" y1=\"60\" x2=\"{}\" y2=\"60\" stroke=\"black\" stroke-width=\"1\"/>\n",
        coord(&rat(0)),
        coord(&rat(1))
    ));
    for p in zero_cell_lifts(strata, false) {
        let x = coord(&p[0]);
        out.push_str(&format!(
            "  <circle cx=\"{x}\" cy=\"60\" r=\"4\" fill=\"black\"/>\n"
        ));
        out.push_str(&format!(
            "  <text x=\"{x}\" y=\"85\" font-size=\"14\" text-anchor=\"middle\">{}</text>\n",
            p[0]
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn render_square(strata: &StrataComplex) -> String {
    let input = &strata.input;
    let mut out = String::new();
    out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n");
    out.push_str(&format!(
        "  <rect x=\"{}\" y=\"{}\" width=\"520\" height=\"520\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n",
        coord(&rat(0)),
        coord_flipped(&rat(1)),
    ));
    // hyperplane traces with positive length
    let mut drawn: Vec<(usize, BigInt)> = Vec::new();
    for i in 0..input.n {
        let normal = input.psi.row(i);
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for c in normal {
            if c.is_negative() {
                lo += c;
            } else {
                hi += c;
            }
        }
        let mut a = lo;
        while a <= hi {
            let pts = clip_line_to_square(normal, &a);
            if pts.len() == 2 && pts[0] != pts[1] {
                drawn.push((i, a.clone()));
                out.push_str(&format!(
                    "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"1\"/>\n",
                    coord(&pts[0].0),
                    coord_flipped(&pts[0].1),
                    coord(&pts[1].0),
                    coord_flipped(&pts[1].1),
                ));
            }
            a += 1;
        }
    }
    // mark only lifts sitting on a visible trace
    for p in zero_cell_lifts(strata, true) {
        let point = crate::exactmath::RationalPoint(p.clone());
        let visible = drawn.iter().any(|(i, a)| {
            input.h_value(*i, &point) == BigRational::from(a.clone())
        });
        if !visible {
            continue;
        }
        out.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>\n",
            coord(&p[0]),
            coord_flipped(&p[1]),
        ));
    }
    out.push_str("</svg>\n");
    out
}
