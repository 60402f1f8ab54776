#![allow(dead_code)]

use gtcg::{GtPattern, IWeight};

/// All normalized i-weights of rank `n` with first entry at most `max`.
pub fn irreps(n: usize, max: i64) -> Vec<IWeight> {
    fn go(prefix: &mut Vec<i64>, n: usize, hi: i64, out: &mut Vec<IWeight>) {
        if prefix.len() == n - 1 {
            let mut e = prefix.clone();
            e.push(0);
            out.push(IWeight::new(e).unwrap());
            return;
        }
        for v in 0..=hi {
            prefix.push(v);
            go(prefix, n, v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, max, &mut out);
    out
}

/// Every pattern with top row `s`, built row by row from the betweenness
/// condition alone, in no particular order.
pub fn brute_patterns(s: &IWeight) -> Vec<GtPattern> {
    fn rows_below(upper: &[i64]) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for k in 0..upper.len() - 1 {
            let mut next = Vec::new();
            for prefix in &out {
                for v in upper[k + 1]..=upper[k] {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }
    let mut triangles = vec![vec![s.entries().to_vec()]];
    for _ in 1..s.rank() {
        let mut next = Vec::new();
        for t in &triangles {
            for r in rows_below(t.last().unwrap()) {
                let mut t2 = t.clone();
                t2.push(r);
                next.push(t2);
            }
        }
        triangles = next;
    }
    triangles
        .iter()
        .map(|t| GtPattern::from_rows(t).unwrap())
        .collect()
}

fn fact(n: i64) -> f64 {
    assert!(n >= 0);
    (1..=n).map(|k| k as f64).product()
}

/// `<j1 m1; j2 m2 | J M>` with every argument doubled.
pub fn racah(j1: i64, m1: i64, j2: i64, m2: i64, j: i64, m: i64) -> f64 {
    if m1 + m2 != m || j > j1 + j2 || j < (j1 - j2).abs() || (j1 + j2 + j) % 2 != 0 {
        return 0.0;
    }
    let h = |x: i64| {
        assert_eq!(x % 2, 0);
        x / 2
    };
    let pre = (j as f64 + 1.0) * fact(h(j + j1 - j2)) * fact(h(j - j1 + j2)) * fact(h(j1 + j2 - j))
        / fact(h(j1 + j2 + j) + 1);
    let norm = fact(h(j + m))
        * fact(h(j - m))
        * fact(h(j1 - m1))
        * fact(h(j1 + m1))
        * fact(h(j2 - m2))
        * fact(h(j2 + m2));
    let mut sum = 0.0;
    for k in 0..=h(j1 + j2 - j) {
        let args = [
            k,
            h(j1 + j2 - j) - k,
            h(j1 - m1) - k,
            h(j2 + m2) - k,
            h(j - j2 + m1) + k,
            h(j - j1 - m2) + k,
        ];
        if args.iter().any(|&a| a < 0) {
            continue;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / args.iter().map(|&a| fact(a)).product::<f64>();
    }
    (pre * norm).sqrt() * sum
}
