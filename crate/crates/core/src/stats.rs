//! Small numeric helpers shared across modules.

/// Lower median: the order statistic at index `(len - 1) / 2` of the sorted
/// values. For an even count this is the lower of the two middle elements,
/// which keeps the result inside the observed value set.
///
/// Panics on an empty slice; callers handle the empty case themselves.
pub(crate) fn median_lower(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty(), "median of empty slice");
    let idx = (values.len() - 1) / 2;
    let (_, m, _) = values.select_nth_unstable_by(idx, |a, b| a.total_cmp(b));
    *m
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    // Exact when every element is identical; the averaged value must not
    // drift by an ulp in that case (degenerate-graph equality depends on it).
    let first = values[0];
    if values.iter().all(|&v| v == first) {
        return first;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample standard deviation (ddof = 1); 0 for fewer than two values.
pub(crate) fn sample_std(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    let ss: f64 = values.iter().map(|v| (v - m) * (v - m)).sum();
    (ss / (values.len() - 1) as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_lower_picks_lower_middle() {
        assert_eq!(median_lower(&mut [1.0, 2.0, 100.0]), 2.0);
        assert_eq!(median_lower(&mut [4.0, 1.0, 3.0, 2.0]), 2.0);
        assert_eq!(median_lower(&mut [42.0]), 42.0);
        assert_eq!(median_lower(&mut [7.0, 3.0]), 3.0);
    }

    #[test]
    fn mean_of_identical_values_is_exact() {
        let v = vec![0.1; 3];
        assert_eq!(mean(&v), 0.1);
    }
}
