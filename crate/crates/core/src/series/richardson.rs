use crate::error::{Error, Result};
use crate::numeric::{PrecisionContext, Real};

use super::{rounding_slack, Method, SeriesResult};

/// Richardson extrapolation of samples taken at `N, 2N, 4N, ...`, assuming
/// the error expands in integer powers of `1/N`.
///
/// Column `j` of the tableau removes the `N^-j` term:
/// `R[i][j] = R[i][j-1] + (R[i][j-1] - R[i-1][j-1]) / (2^j - 1)`.
/// The result is `R[last][levels]`; the error estimate is its distance to
/// the previous row's corner `R[last-1][min(levels, last-1)]`.
///
/// The returned `s` is zero; callers extrapolating an eta series overwrite it.
pub fn richardson_extrapolate(
    partials: &[(u64, Real)],
    levels: usize,
    ctx: &PrecisionContext,
) -> Result<SeriesResult> {
    if partials.len() < 2 {
        return Err(Error::invalid("extrapolation needs at least two samples"));
    }
    if levels == 0 || levels > partials.len() - 1 {
        return Err(Error::invalid(format!(
            "levels must be in 1..={}, got {levels}",
            partials.len() - 1
        )));
    }
    if partials[0].0 == 0 {
        return Err(Error::invalid("sample sizes must be positive"));
    }
    for w in partials.windows(2) {
        if w[0].0.checked_mul(2) != Some(w[1].0) {
            return Err(Error::invalid(format!(
                "samples must double: {} is followed by {}",
                w[0].0, w[1].0
            )));
        }
    }

    let mut prev_row: Vec<Real> = Vec::new();
    let mut corners = Vec::with_capacity(partials.len());
    for (i, (_, v)) in partials.iter().enumerate() {
        let mut row = vec![v.clone()];
        for j in 1..=levels.min(i) {
            let r = &row[j - 1];
            let diff = r.sub(&prev_row[j - 1], ctx);
            let step = diff.div_int((1i64 << j) - 1, ctx)?;
            row.push(r.add(&step, ctx));
        }
        corners.push(row.last().unwrap().clone());
        prev_row = row;
    }
    let value = corners.last().unwrap().clone();
    let previous = &corners[corners.len() - 2];
    let scale = partials
        .iter()
        .map(|(_, v)| v.abs().to_f64())
        .fold(0.0, f64::max);
    let slack = rounding_slack(scale, 4 * (levels as u64 + 1) * (levels as u64 + 1), ctx);
    let error_bound = value.sub(previous, ctx).abs().add(&slack, ctx);
    Ok(SeriesResult {
        value,
        s: Real::zero(),
        terms_used: partials.last().unwrap().0,
        error_bound,
        method: Method::RichardsonExtrapolated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{make_context, pi};

    #[test]
    fn constant_sequence_is_fixed() {
        let c = make_context(20).unwrap();
        let v = Real::parse("1.25", &c).unwrap();
        let parts = vec![(10, v.clone()), (20, v.clone()), (40, v.clone())];
        let r = richardson_extrapolate(&parts, 2, &c).unwrap();
        assert_eq!(r.value, v);
        assert!(r.error_bound.is_positive());
    }

    #[test]
    fn basel_partial_sums() {
        let c = make_context(30).unwrap();
        let partial = |n: u64| {
            let mut s = Real::zero();
            for k in 1..=n {
                s = s.add(&Real::one().div(&Real::from_u64(k * k), &c).unwrap(), &c);
            }
            (n, s)
        };
        let parts = vec![partial(100), partial(200), partial(400)];
        let r = richardson_extrapolate(&parts, 2, &c).unwrap();
        let p = pi(&c);
        let target = p.mul(&p, &c).div_int(6, &c).unwrap();
        let err = r.value.sub(&target, &c).abs().to_f64();
        assert!(err < 1e-7, "error {err:e}");
        assert!(err <= r.error_bound.to_f64());
        assert_eq!(r.terms_used, 400);
    }

    #[test]
    fn rejects_bad_spacing_and_levels() {
        let c = make_context(20).unwrap();
        let v = Real::one();
        let bad = vec![(10, v.clone()), (30, v.clone())];
        assert!(matches!(richardson_extrapolate(&bad, 1, &c), Err(Error::InvalidInput(_))));
        let ok = vec![(10, v.clone()), (20, v.clone())];
        assert!(richardson_extrapolate(&ok, 2, &c).is_err());
        assert!(richardson_extrapolate(&ok, 0, &c).is_err());
        assert!(richardson_extrapolate(&ok[..1], 1, &c).is_err());
    }
}
