//! Realization length bands.
//!
//! A realization with `u` unsatisfied clauses has length in
//! `[L + u*beta, L + u*beta + 10(nm)^2]`, where `L` is the sum over tiles
//! of their minimum connection lengths. Bands for different `u` are
//! disjoint whenever `beta > 10(nm)^2`, which the default schedule
//! (`beta = 20(nm)^2`) guarantees.

/// The inclusive band `B_u` for a realization with `u` unsatisfied clauses.
pub fn length_bands(u: u32, l: i64, n: usize, m: usize, beta: i64) -> (i64, i64) {
    let nm = (n as i64) * (m as i64);
    let lo = l + i64::from(u) * beta;
    (lo, lo + 10 * nm * nm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_arithmetic() {
        assert_eq!(length_bands(0, 100, 3, 5, 4500), (100, 100 + 2250));
        assert_eq!(length_bands(1, 100, 3, 5, 4500), (4600, 4600 + 2250));
    }

    #[test]
    fn default_beta_separates_bands() {
        let (n, m) = (3, 5);
        let beta = 20 * (n * m) as i64 * (n * m) as i64;
        for u in 0..4 {
            let (_, hi) = length_bands(u, 0, n, m, beta);
            let (lo_next, _) = length_bands(u + 1, 0, n, m, beta);
            assert!(hi < lo_next);
        }
    }
}
