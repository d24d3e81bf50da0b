//! Closed-form bounds on cone crossing numbers, evaluated exactly.
//!
//! Comparisons against radicals are done by squaring: `c >= k + sqrt(p/q)`
//! holds iff `c >= k` and `q (c - k)^2 >= p`.

use serde::Serialize;

/// The number `base + sqrt(num / den)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RootForm {
    pub base: u64,
    pub num: u64,
    pub den: u64,
}

impl RootForm {
    pub fn value(&self) -> f64 {
        self.base as f64 + (self.num as f64 / self.den as f64).sqrt()
    }

    /// `c >= self`.
    pub fn at_most(&self, c: u64) -> bool {
        c >= self.base && {
            let d = (c - self.base) as u128;
            self.den as u128 * d * d >= self.num as u128
        }
    }

    /// `c <= self`.
    pub fn at_least(&self, c: u64) -> bool {
        c <= self.base || {
            let d = (c - self.base) as u128;
            self.den as u128 * d * d <= self.num as u128
        }
    }

    /// Smallest integer `c >= self`.
    pub fn ceil(&self) -> u64 {
        let mut t = ((self.num as f64 / self.den as f64).sqrt() as u64).saturating_sub(1);
        while !self.at_most(self.base + t) {
            t += 1;
        }
        self.base + t
    }
}

/// Lower bound `k + sqrt(k/2)` on the cone of any graph with crossing number `k`.
pub fn thm12_lower(k: u64) -> RootForm {
    RootForm { base: k, num: k, den: 2 }
}

/// Whether `c` satisfies the lower bound `c >= k + sqrt(k/2)`.
pub fn thm12_check(k: u64, c: u64) -> bool {
    thm12_lower(k).at_most(c)
}

/// Lower bound on the cone of a simple graph with crossing number `k`.
pub fn thm41_lower(k: u64) -> u64 {
    match k {
        0 => 0,
        1 => 3,
        2 | 3 => k + 3,
        4 => k + 4,
        _ => k + 5,
    }
}

/// Upper bound `k + sqrt(3k)` reached by the multigraph family.
pub fn multigraph_upper(k: u64) -> RootForm {
    RootForm { base: k, num: 3 * k, den: 1 }
}

/// Crossing numbers of the `r`-fold multigraph of the first figure and of its cone.
pub fn multigraph_family_point(r: u64) -> (u64, u64) {
    (3 * r * r, 3 * r * r + 3 * r)
}

/// The Harary–Hill value `Z(n) = (1/4) floor(n/2) floor((n-1)/2) floor((n-2)/2) floor((n-3)/2)`.
pub fn harary_hill(n: u64) -> u64 {
    if n < 4 {
        return 0;
    }
    let n = n as u128;
    (n / 2 * ((n - 1) / 2) * ((n - 2) / 2) * ((n - 3) / 2) / 4) as u64
}

/// Smallest `n` with `Z(n - 1) < k <= Z(n)`, for `k >= 1`.
fn hh_index(k: u64) -> u64 {
    let mut n = 5;
    while harary_hill(n) < k {
        n += 1;
    }
    n
}

/// Upper bound on `f_s(k) - k` from `G = K_{n-1} + K_{n1}`, assuming the
/// Harary–Hill values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HhPhi {
    pub n: u64,
    pub n1: u64,
    pub cr_g: u64,
    pub cr_cone: u64,
    pub phi_upper: u64,
}

pub fn hh_phi_upper(k: u64) -> HhPhi {
    let k = k.max(1);
    let n = hh_index(k);
    let k1 = k - harary_hill(n - 1);
    let n1 = hh_index(k1);
    let cr_g = harary_hill(n - 1) + harary_hill(n1);
    let cr_cone = harary_hill(n) + harary_hill(n1 + 1);
    HhPhi {
        n,
        n1,
        cr_g,
        cr_cone,
        phi_upper: cr_cone - k,
    }
}

/// `hh_phi_upper(k)` divided by `sqrt(2) k^(3/4)`.
pub fn conjecture_ratio(k: u64) -> f64 {
    hh_phi_upper(k).phi_upper as f64 / (2f64.sqrt() * (k as f64).powf(0.75))
}

/// The known values of `f_s`.
pub fn fs_known(k: u64) -> Option<u64> {
    match k {
        1 => Some(3),
        2 => Some(5),
        3 => Some(6),
        4 => Some(8),
        5 => Some(10),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub k: u64,
    pub thm12_lower: RootForm,
    pub thm41_lower: u64,
    pub multigraph_upper: RootForm,
    pub fs_known: Option<u64>,
}

pub fn bound_report(k: u64) -> BoundReport {
    BoundReport {
        k,
        thm12_lower: thm12_lower(k),
        thm41_lower: thm41_lower(k),
        multigraph_upper: multigraph_upper(k),
        fs_known: fs_known(k),
    }
}

/// One line of a serialized bound report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub k: u64,
    pub bound: String,
    pub value: f64,
    pub conditional: bool,
}

impl BoundReport {
    /// Rows for the report file. Harary–Hill rows are marked conditional.
    pub fn rows(&self) -> Vec<BoundRow> {
        let k = self.k;
        let row = |bound: &str, value: f64, conditional: bool| BoundRow {
            k,
            bound: bound.to_string(),
            value,
            conditional,
        };
        let mut rows = vec![
            row("cone_lower_sqrt_half", self.thm12_lower.value(), false),
            row("cone_lower_sqrt_half_int", self.thm12_lower.ceil() as f64, false),
            row("cone_lower_simple", self.thm41_lower as f64, false),
            row("multigraph_upper", self.multigraph_upper.value(), false),
        ];
        if let Some(v) = self.fs_known {
            rows.push(row("fs_known", v as f64, false));
        }
        if k >= 1 {
            let hh = hh_phi_upper(k);
            rows.push(row("hh_cone_upper", hh.cr_cone as f64, true));
            rows.push(row("hh_phi_upper", hh.phi_upper as f64, true));
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thm12_examples() {
        assert!(thm12_check(2, 3));
        assert!(!thm12_check(2, 2));
        assert!(thm12_check(0, 0));
        assert!(thm12_check(8, 10));
        assert!(!thm12_check(8, 9));
        assert_eq!(thm12_lower(8).ceil(), 10);
        assert_eq!(thm12_lower(0).ceil(), 0);
    }

    #[test]
    fn thm41_examples() {
        assert_eq!(thm41_lower(0), 0);
        assert_eq!(thm41_lower(1), 3);
        assert_eq!(thm41_lower(2), 5);
        assert_eq!(thm41_lower(4), 8);
        assert_eq!(thm41_lower(5), 10);
    }

    #[test]
    fn thm41_dominates_up_to_fifty() {
        for k in 0..=50 {
            assert!(thm12_check(k, thm41_lower(k)), "k = {k}");
        }
        assert!(!thm12_check(51, thm41_lower(51)));
    }

    #[test]
    fn family_points() {
        assert_eq!(multigraph_family_point(1), (3, 6));
        assert_eq!(multigraph_family_point(2), (12, 18));
        let u = multigraph_upper(12);
        assert!(u.at_least(18) && u.at_most(18));
        for r in 1..100 {
            let (k, c) = multigraph_family_point(r);
            assert!(multigraph_upper(k).at_most(c) && multigraph_upper(k).at_least(c));
        }
    }

    #[test]
    fn harary_hill_values() {
        let z: Vec<u64> = (4..=12).map(harary_hill).collect();
        assert_eq!(z, [0, 1, 3, 9, 18, 36, 60, 100, 150]);
        for n in (4..40u64).step_by(2) {
            assert_eq!(harary_hill(n) * 64, n * (n - 2) * (n - 2) * (n - 4));
            let m = n + 1;
            assert_eq!(harary_hill(m) * 64, (m - 1) * (m - 1) * (m - 3) * (m - 3));
        }
    }

    #[test]
    fn hh_phi_examples() {
        let h = hh_phi_upper(10);
        assert_eq!((h.n, h.n1, h.cr_g, h.cr_cone, h.phi_upper), (8, 5, 10, 21, 11));
        let h = hh_phi_upper(1);
        assert_eq!((h.n, h.n1, h.cr_g, h.cr_cone, h.phi_upper), (5, 5, 1, 4, 3));
        // k = Z(8): k1 = Z(8) - Z(7) = 9.
        let h = hh_phi_upper(18);
        assert_eq!((h.n, h.n1, h.cr_g), (8, 7, 18));
        for k in 1..2000 {
            let h = hh_phi_upper(k);
            assert!(h.cr_g >= k);
            assert!(harary_hill(h.n - 1) < k && k <= harary_hill(h.n));
        }
    }

    #[test]
    fn ratio_examples() {
        assert!((conjecture_ratio(10) - 1.383).abs() < 1e-3);
    }

    #[test]
    fn fs_values() {
        assert_eq!(fs_known(1), Some(3));
        assert_eq!(fs_known(5), Some(10));
        assert_eq!(fs_known(6), None);
    }
}
