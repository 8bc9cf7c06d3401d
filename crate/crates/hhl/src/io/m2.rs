//! Macaulay2 script export: declares the polynomial ring and the
//! differential matrices with the stable variable order `x_1..x_n`, and
//! asserts that consecutive differentials compose to zero.

use crate::complex::{HHLComplex, PolyEntry};

fn monomial_string(exponents: &[u32]) -> String {
    let factors: Vec<String> = exponents
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x_{}", i + 1)
            } else {
                format!("x_{}^{}", i + 1, e)
            }
        })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

fn poly_string(entry: Option<&PolyEntry>) -> String {
    let Some(terms) = entry else {
        return "0".to_string();
    };
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, term) in terms.iter().enumerate() {
        let mono = monomial_string(&term.exponents);
        let coeff = term.coeff;
        let magnitude = coeff.unsigned_abs();
        let body = if magnitude == 1 { mono } else { format!("{magnitude}*{mono}") };
        if idx == 0 {
            if coeff < 0 {
                out.push('-');
            }
        } else if coeff < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

/// Render the whole complex as an M2 script.
pub fn export_m2(complex: &HHLComplex, n: usize) -> String {
    let mut out = String::new();
    out.push_str("-- HHL complex export (tool: hhl ");
    out.push_str(env!("CARGO_PKG_VERSION"));
    out.push_str(")\n");
    out.push_str(&format!("R = QQ[x_1..x_{n}];\n"));
    let k = complex.top_dim();
    for m in 1..=k {
        let d = complex.boundary(m);
        out.push_str(&format!("d{m} = map(R^{}, R^{}, {{", d.nrows, d.ncols));
        let rows: Vec<String> = (0..d.nrows)
            .map(|r| {
                let cols: Vec<String> =
                    (0..d.ncols).map(|c| poly_string(d.entry(r, c))).collect();
                format!("{{{}}}", cols.join(", "))
            })
            .collect();
        out.push_str(&rows.join(", "));
        out.push_str("});\n");
    }
    for m in 1..k {
        out.push_str(&format!("assert(d{m} * d{} == 0);\n", m + 1));
    }
    out.push_str(&format!(
        "C = chainComplex({});\n",
        (1..=k).map(|m| format!("d{m}")).collect::<Vec<_>>().join(", ")
    ));
    out
}
