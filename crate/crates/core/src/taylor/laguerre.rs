use rug::Float;

/// L_n(x) by (k+1)L_{k+1} = (2k+1-x)L_k - k L_{k-1}, at the precision of `x`.
pub fn laguerre_poly(n: usize, x: &Float) -> Float {
    let p = x.prec();
    let mut prev = Float::with_val(p, 1);
    if n == 0 {
        return prev;
    }
    let mut cur = Float::with_val(p, 1 - x);
    for k in 1..n {
        let mut next = Float::with_val(p, (2 * k + 1) as u64);
        next -= x;
        next *= &cur;
        next -= Float::with_val(p, &prev * k as u64);
        next /= (k + 1) as u64;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// L_n(x) in double precision, same recurrence.
pub fn laguerre_poly_f64(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 - x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let next = ((2 * k + 1) as f64 - x) * cur / (k + 1) as f64 - (k as f64) * prev / (k + 1) as f64;
        prev = cur;
        cur = next;
    }
    cur
}
