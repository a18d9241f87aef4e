//! Double cosets, the parametric intertwiner matrix between two permutation
//! modules, exact determinants and (non-)unimodularity certificates.
//!
//! `d(H1, H2)` is the gcd of `det M` over all intertwiners `M`. It is zero
//! unless the pair is rationally equivalent, and its prime support is the set
//! of primes at which the pair fails to be locally equivalent.

mod certificate;
mod det;
mod factors;
mod pattern;

pub use certificate::{
    unimodular_search, unimodularity_certificate, CertificateStatus, SearchOutcome, SystemRecord,
    UnimodularityCertificate,
};
pub use det::{bareiss, default_assignments, det_at, det_at_big, det_at_mod, det_mod, sample_gcd};
pub use factors::{
    det_from_factor_values, find_variable_mappings, verify_factor_product, Factor, FactorCheck,
    FactorKind, FactorList, Mismatch,
};
pub use pattern::{double_cosets, Cell, DoubleCosetDecomposition, ParametricHomMatrix};

use num_bigint::BigInt;
use serde::Serializer;

use crate::equivalence::{p_locally_equivalent, rationally_equivalent, Triple};
use crate::error::{Error, Result};
use crate::group::{EnumeratedGroup, SubgroupSet};
use crate::subgroups::prime_factors;

/// Primes dividing `d(H1, H2)`: those `p | |H1|` at which the pair is not
/// p-locally equivalent. Needs a rationally equivalent pair (else `d = 0`).
pub fn primes_dividing_d(g: &EnumeratedGroup, h1: &SubgroupSet, h2: &SubgroupSet) -> Result<Vec<u64>> {
    let triple = Triple::InGroup { g, h1, h2 };
    if !rationally_equivalent(&triple)?.verdict {
        return Err(Error::Precondition(
            "the pair is not rationally equivalent, so d(H1, H2) = 0".into(),
        ));
    }
    let mut out = Vec::new();
    for p in prime_factors(h1.order() as u64) {
        if !p_locally_equivalent(&triple, p)?.verdict {
            out.push(p);
        }
    }
    Ok(out)
}

pub(crate) fn ser_bigint<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn ser_bigints<S: Serializer>(x: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(BigInt::to_string))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::GroupSpec;
    use num_traits::{One, Zero};

    fn s4() -> EnumeratedGroup {
        EnumeratedGroup::from_spec(GroupSpec::from_cycles(4, &["(1 2 3 4)", "(1 2)"]).unwrap()).unwrap()
    }

    fn big(v: &[i64]) -> Vec<Vec<BigInt>> {
        let n = (v.len() as f64).sqrt() as usize;
        v.chunks(n).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn bareiss_small_cases() {
        assert_eq!(bareiss(big(&[2, 3, 1, 4])), BigInt::from(5));
        assert_eq!(bareiss(big(&[0, 1, 1, 0])), BigInt::from(-1));
        assert_eq!(bareiss(big(&[1, 2, 3, 4, 5, 6, 7, 8, 9])), BigInt::zero());
        assert_eq!(bareiss(big(&[0, 2, 1, 1, 0, 3, 4, 1, 0])), BigInt::from(25));
        assert_eq!(det_mod(vec![vec![0, 2, 1], vec![1, 0, 3], vec![4, 1, 0]], 7), 4);
    }

    #[test]
    fn whole_group_gives_one_cell() {
        let g = s4();
        let w = g.whole();
        let dc = double_cosets(&g, &w, &w).unwrap();
        assert_eq!(dc.cells.len(), 1);
        assert_eq!(dc.pattern.dim(), 1);
        let f = FactorList::parse("sign 1\nlin 1 ^1").unwrap();
        assert!(verify_factor_product(&dc.pattern, &f, 20, 1).unwrap().holds);
        let cert = unimodularity_certificate(&f, Some(&dc.pattern)).unwrap();
        assert_eq!(
            cert.status,
            CertificateStatus::ExistsWitness {
                assignment: vec![BigInt::one()]
            }
        );
    }

    #[test]
    fn identical_subgroups_give_identity_intertwiner() {
        let g = s4();
        let h = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2 3)"]).unwrap()).unwrap();
        let dc = double_cosets(&g, &h, &h).unwrap();
        assert_eq!(dc.cells[0].size, 1);
        assert_eq!(dc.cells[0].representative, 0);
        assert!(dc.pattern.is_balanced());
        let mut a = vec![0; dc.pattern.nvars()];
        a[0] = 1;
        assert_eq!(det_at(&dc.pattern, &a), BigInt::one());
        let units = default_assignments(dc.pattern.nvars(), 0, 50, 0);
        assert_eq!(sample_gcd(&dc.pattern, &units), BigInt::one());
        let found = unimodular_search(&dc.pattern, 1).unwrap();
        let x = found.assignment.expect("a permutation matrix is unimodular");
        assert!(factors::is_unit(&det_at(&dc.pattern, &x)));
        assert_eq!(primes_dividing_d(&g, &h, &h).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn inequivalent_pair_has_zero_gcd() {
        // <(1 2)> and <(1 2)(3 4)> have index 12 in S4 but differ on classes
        let g = s4();
        let a = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2)"]).unwrap()).unwrap();
        let b = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2)(3 4)"]).unwrap()).unwrap();
        let dc = double_cosets(&g, &a, &b).unwrap();
        let samples = default_assignments(dc.pattern.nvars(), 5, 50, 7);
        assert_eq!(sample_gcd(&dc.pattern, &samples), BigInt::zero());
        assert!(matches!(primes_dividing_d(&g, &a, &b), Err(Error::Precondition(_))));
    }

    #[test]
    fn index_mismatch() {
        let g = s4();
        let a = g.trivial();
        assert!(matches!(double_cosets(&g, &a, &g.whole()), Err(Error::IndexMismatch(24, 1))));
    }

    #[test]
    fn reordering_cosets_keeps_abs_det() {
        let g = s4();
        let h = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2)"]).unwrap()).unwrap();
        let dc = double_cosets(&g, &h, &h).unwrap();
        let m = dc.pattern.dim();
        let rows: Vec<usize> = (0..m).rev().collect();
        let cols: Vec<usize> = (0..m).map(|i| (i * 5) % m).collect();
        let shuffled = dc.pattern.permuted(&rows, &cols);
        for a in default_assignments(dc.pattern.nvars(), 4, 9, 3) {
            let d1 = det_at(&dc.pattern, &a);
            let d2 = det_at(&shuffled, &a);
            assert!(d1 == d2 || d1 == -d2);
        }
    }

    #[test]
    fn factor_degree_mismatch() {
        let p = ParametricHomMatrix::new(2, 2, vec![0, 1, 1, 0]).unwrap();
        let f = FactorList::parse("sign 1\nlin 1 1 ^1").unwrap();
        assert!(matches!(
            verify_factor_product(&p, &f, 5, 0),
            Err(Error::DegreeMismatch { expected: 2, found: 1 })
        ));
        // det [[a,b],[b,a]] = (a+b)(a-b)
        let f = FactorList::parse("sign 1\nlin 1 1\nlin 1 -1").unwrap();
        let check = verify_factor_product(&p, &f, 20, 0).unwrap();
        assert!(check.holds);
        let wrong = FactorList::parse("lin 1 1\nlin 1 -2").unwrap();
        let check = verify_factor_product(&p, &wrong, 20, 0).unwrap();
        assert!(!check.holds && check.mismatch.is_some());
    }

    #[test]
    fn factor_text_round_trip_and_errors() {
        let text = "sign -1\nsizes 1 1 2\nvars 2 1 3\nquad 2 3 (x1-x2) (x2-x3) ^4\nlin 1 0 -1 ^2\n";
        let f = FactorList::parse(text).unwrap();
        assert_eq!(f.degree(), 10);
        assert_eq!(f.mapping(), vec![1, 0, 2]);
        assert_eq!(FactorList::parse(&f.to_text()).unwrap(), f);
        let err = FactorList::parse("sign 1\nlin 1 2\nlin 1 x ^1").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 7, .. }), "{err}");
        assert!(FactorList::parse("sign 2\nlin 1").is_err());
        assert!(FactorList::parse("cube 1 2").is_err());
    }

    #[test]
    fn certificate_cases() {
        // 2s² + 3t² never equals 1
        let f = FactorList::parse("quad 2 3 (x1-x2) (x2-x3) ^1\nlin 1 1 1").unwrap();
        let c = unimodularity_certificate(&f, None).unwrap();
        assert!(c.is_nonexistent() && c.systems.is_empty());
        // 2x + 4y = ±1 has rational but no integral solutions
        let f = FactorList::parse("lin 2 4").unwrap();
        let c = unimodularity_certificate(&f, None).unwrap();
        assert!(c.is_nonexistent());
        assert_eq!(c.systems.len(), 2);
        assert!(c.systems.iter().all(|s| s.rationally_solvable && !s.integrally_solvable));
        // x + y and x - y both units: x = 1, y = 0
        let f = FactorList::parse("lin 1 1\nlin 1 -1").unwrap();
        let c = unimodularity_certificate(&f, None).unwrap();
        assert!(matches!(c.status, CertificateStatus::ExistsWitness { .. }));
        // s² + t² = 1 allows s = ±1, t = 0
        let f = FactorList::parse("quad 1 1 (x1-x2) (x2-x3)\nlin 0 0 1").unwrap();
        let c = unimodularity_certificate(&f, None).unwrap();
        assert_eq!(c.systems.len(), 2 * 4);
        assert!(matches!(c.status, CertificateStatus::ExistsWitness { .. }));
        let f = FactorList::parse("quad -1 1 (x1-x2) (x2-x3)").unwrap();
        assert!(matches!(unimodularity_certificate(&f, None), Err(Error::UnsupportedForm(_))));
    }

    #[test]
    fn integral_solver() {
        let a: Vec<Vec<BigInt>> = big(&[6, 10, 15, 0, 0, 0, 0, 0, 0]);
        let b = vec![BigInt::one(), BigInt::zero(), BigInt::zero()];
        let x = certificate::solve_integral(&a, &b, 3).expect("gcd(6,10,15) = 1");
        let v: BigInt = x.iter().zip(&a[0]).map(|(x, c)| x * c).sum();
        assert!(v.is_one());
    }

    #[test]
    fn pattern_text_round_trip() {
        let g = s4();
        let h = g.subgroup_from_spec(&GroupSpec::from_cycles(4, &["(1 2 3)"]).unwrap()).unwrap();
        let p = double_cosets(&g, &h, &h).unwrap().pattern;
        assert_eq!(ParametricHomMatrix::parse(&p.to_text()).unwrap(), p);
        assert!(matches!(
            ParametricHomMatrix::parse("pattern 2 2\n1 2\n2 3\n"),
            Err(Error::Parse { line: 3, column: 3, .. })
        ));
    }
}
