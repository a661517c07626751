//! Real roots of a polynomial on a closed interval.
//!
//! Breakpoints are a uniform grid plus the real critical points of the
//! polynomial (found recursively from its derivatives). Between consecutive
//! breakpoints the polynomial is monotone, so every simple root shows up as a
//! sign change of exactly one bracket, however close the roots are.

pub(crate) fn eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn derivative(p: &[f64]) -> Vec<f64> {
    p.iter().enumerate().skip(1).map(|(k, &c)| k as f64 * c).collect()
}

fn trimmed(p: &[f64]) -> &[f64] {
    let end = p.iter().rposition(|&c| c != 0.0).map_or(0, |i| i + 1);
    &p[..end]
}

const BRACKET_WIDTH: f64 = 1e-14;

/// Roots of `p` (ascending coefficients) in `[lo, hi]`, sorted ascending.
/// `grid` extra uniformly spaced breakpoints are used at the top level.
pub(crate) fn real_roots(p: &[f64], lo: f64, hi: f64, grid: usize) -> Vec<f64> {
    let p = trimmed(p);
    if p.len() <= 1 {
        return Vec::new();
    }
    let mut breaks = vec![lo, hi];
    if p.len() > 2 {
        breaks.extend(real_roots(&derivative(p), lo, hi, 0));
    }
    breaks.extend((1..=grid).map(|i| lo + (hi - lo) * i as f64 / (grid + 1) as f64));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let mut roots: Vec<f64> = Vec::new();
    let push = |r: f64, roots: &mut Vec<f64>| {
        if roots.last().map_or(true, |&last| r - last > BRACKET_WIDTH) {
            roots.push(r);
        }
    };
    for pair in breaks.windows(2) {
        let (l, r) = (pair[0], pair[1]);
        let (fl, fr) = (eval(p, l), eval(p, r));
        if fl == 0.0 {
            push(l, &mut roots);
        } else if fl.signum() != fr.signum() && fr != 0.0 {
            push(bisect(p, l, r, fl), &mut roots);
        }
    }
    if eval(p, hi) == 0.0 {
        push(hi, &mut roots);
    }
    roots
}

fn bisect(p: &[f64], mut l: f64, mut r: f64, mut fl: f64) -> f64 {
    let (lo0, hi0) = (l, r);
    while r - l > BRACKET_WIDTH {
        let mid = 0.5 * (l + r);
        if mid <= l || mid >= r {
            break;
        }
        let fm = eval(p, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fl.signum() {
            l = mid;
            fl = fm;
        } else {
            r = mid;
        }
    }
    let x = 0.5 * (l + r);
    let dp = eval(&derivative(p), x);
    if dp != 0.0 {
        let polished = x - eval(p, x) / dp;
        if polished >= lo0 && polished <= hi0 && eval(p, polished).abs() <= eval(p, x).abs() {
            return polished;
        }
    }
    x
}
