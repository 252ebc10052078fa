use crate::zinfty::PathVector;

fn xi(x: &PathVector, k: usize) -> i128 {
    x.get(k) as i128
}

/// Closed-form image test for the rank-2 datum
/// `[[-a, -b], [-c, 2]]` with `ι = (…, 2, 1, 2, 1)`.
///
/// For `b = c = 0` the image is the set of vectors supported on `{1, 2}`;
/// for `b, c != 0` it is cut out by `c x_{2k+1} - x_{2k+2} > 0` unless both
/// vanish, and `x_{2k+1} != 0 ⇒ x_{2k} > 0`. Mixed cases use the one-real
/// specialization directly.
pub fn rank2_member(x: &PathVector, a: i64, b: i64, c: i64) -> bool {
    let _ = a;
    let top = x.max_position().unwrap_or(0);
    let (b, c) = (b as i128, c as i128);
    if b == 0 && c == 0 {
        return top <= 2;
    }
    (1..=top / 2 + 1).all(|k| {
        let (xe, xo, xn) = (xi(x, 2 * k), xi(x, 2 * k + 1), xi(x, 2 * k + 2));
        let slack = c * xo - xn;
        if b != 0 && c != 0 {
            let strict = slack > 0 || (xo == 0 && xn == 0);
            strict && (xo == 0 || xe > 0)
        } else {
            slack >= 0 && (xo == 0 || (b * xe > 0 && slack > 0))
        }
    })
}

/// Closed-form image test for the rank-3 datum
/// `[[-a, -b, -c], [-d, -e, -f], [-g, -h, 2]]` with `ι = (…, 3, 2, 1)`.
pub fn rank3_member(x: &PathVector, p: [i64; 8]) -> bool {
    let [_, b, c, d, _, f, g, h] = p.map(|v| v as i128);
    let top = x.max_position().unwrap_or(0);
    (1..=top / 3 + 1).all(|k| {
        let at = |o: usize| xi(x, 3 * k + o);
        let back = |o: usize| xi(x, 3 * k - o);
        let slack = g * at(1) + h * at(2) - at(3);
        if slack < 0 {
            return false;
        }
        if at(1) > 0 {
            let bx = b * back(1);
            if bx + c * at(0) <= 0 || (bx == 0 && slack <= 0) {
                return false;
            }
        }
        if at(2) > 0 {
            let dx = d * at(1);
            if f * at(0) + dx <= 0 || (dx == 0 && slack <= 0) {
                return false;
            }
        }
        true
    })
}
