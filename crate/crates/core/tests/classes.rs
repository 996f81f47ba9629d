mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use lamina_core::classes::{classify_mode, reduce_to_rational, split_modes, ClassId};
use lamina_core::dispersion::{DispersionLaw, PowerBase, WaveVector};
use lamina_core::exact::{radical_sum_is_zero, RadicalSum, Rational};
use lamina_core::report::ClassTable;
use lamina_core::search::SearchDomain;

use common::{kernel_from_sieve, spf_sieve};

fn wv(m: i32, n: i32) -> WaveVector {
    WaveVector::new(m, n)
}

fn power(p: i128, q: i128, base: PowerBase) -> DispersionLaw {
    DispersionLaw::PowerLaw {
        exponent: Rational::new(p, q).unwrap(),
        base,
    }
}

#[test]
fn classes_partition_the_domain() {
    let spf = spf_sieve(1 << 15);
    let laws = [
        DispersionLaw::DriftInverseNorm,
        DispersionLaw::GravityNormRoot,
        DispersionLaw::CapillaryScalar,
        power(-1, 4, PowerBase::NormSquared),
        power(1, 3, PowerBase::NormSquared),
        power(2, 3, PowerBase::Scalar),
    ];
    for law in laws {
        let domain = SearchDomain::new(25).unwrap();
        let table = ClassTable::build(&law, &domain).unwrap();
        let mut seen = BTreeSet::new();
        for class in &table.classes {
            for m in &class.members {
                let k = wv(m.mode[0], m.mode[1]);
                assert!(seen.insert(k), "{law}: {k} in two classes");
                let radicand = law.class_radicand(k).unwrap();
                let (gamma, kernel) = kernel_from_sieve(radicand, class.degree, &spf);
                assert_eq!((class.kernel, m.gamma), (kernel, gamma), "{law}: {k}");
            }
            assert!(class.members.windows(2).all(|w| w[0].mode < w[1].mode));
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), domain.modes(&law), "{law}");
        assert!(table.classes.windows(2).all(|w| w[0].kernel < w[1].kernel));
    }
}

#[test]
fn drift_class_table_examples() {
    let table = ClassTable::build(&DispersionLaw::DriftInverseNorm, &SearchDomain::new(20).unwrap()).unwrap();
    let five = table.class(5).expect("class 5");
    for k in [[1, 2], [2, 1], [3, 6], [6, 3]] {
        assert!(five.members.iter().any(|m| m.mode == k), "{k:?}");
    }
    assert!(table.class(3).is_none());
    let rossby = ClassTable::build(&DispersionLaw::RossbySphere, &SearchDomain::new(10).unwrap()).unwrap();
    assert_eq!(rossby.classes.len(), 1);
    assert_eq!(
        (rossby.classes[0].kernel, rossby.classes[0].degree),
        (ClassId::UNIVERSAL.kernel, ClassId::UNIVERSAL.degree)
    );
}

#[test]
fn reduced_condition_matches_exact_sum() {
    // Drift class 5: ω = 1/(γ√5), so γ-sums of reciprocals decide resonance.
    let law = DispersionLaw::DriftInverseNorm;
    let cl5 = ClassId { kernel: 5, degree: 2 };
    let members = [wv(1, 2), wv(2, 4), wv(3, 6), wv(4, 8), wv(6, 12), wv(2, 11), wv(5, 10)];
    let cond = reduce_to_rational(&law, cl5, &[1, 1, -1]).unwrap();
    for &a in &members {
        for &b in &members {
            for &c in &members {
                let gammas: Vec<u64> = [a, b, c]
                    .iter()
                    .map(|&k| classify_mode(&law, k).unwrap().gamma)
                    .collect();
                let sum = split_modes(&law, &[a, b, c], &[1, 1, -1]).unwrap();
                let exact = sum.iter().all(|e| e.is_zero().unwrap());
                assert_eq!(cond.is_satisfied(&gammas).unwrap(), exact, "{a} {b} {c}");
            }
        }
    }
    // 1/2 + 1/2 = 1: (2,4) + (2,4) resonates with (1,2) in frequency
    assert!(cond.is_satisfied(&[2, 2, 1]).unwrap());
}

fn mode() -> impl Strategy<Value = WaveVector> {
    (-30i32..=30, -30i32..=30)
        .prop_filter("origin", |&(m, n)| (m, n) != (0, 0))
        .prop_map(|(m, n)| wv(m, n))
}

proptest! {
    #[test]
    fn splitting_is_sound(modes in prop::collection::vec(mode(), 2..6), flips in prop::collection::vec(any::<bool>(), 6), law_pick in 0usize..2) {
        let law = [DispersionLaw::DriftInverseNorm, DispersionLaw::GravityNormRoot][law_pick];
        let signs: Vec<i8> = modes.iter().zip(&flips).map(|(_, &f)| if f { -1 } else { 1 }).collect();
        let equations = split_modes(&law, &modes, &signs).unwrap();
        let degree = law.degree().unwrap();
        let sum = RadicalSum::from_terms(
            degree,
            modes.iter().zip(&signs).map(|(&k, &s)| law.omega_exact(k).unwrap().to_radical(degree).scale(Rational::from_integer(s as i128)).unwrap()),
        ).unwrap();
        let all_zero = equations.iter().all(|e| e.is_zero().unwrap());
        prop_assert_eq!(all_zero, radical_sum_is_zero(&sum).0);
        // one equation per distinct class, each term in its own class
        let classes: BTreeSet<ClassId> = modes.iter().map(|&k| classify_mode(&law, k).unwrap().class_id).collect();
        prop_assert_eq!(equations.len(), classes.len());
        for e in &equations {
            prop_assert!(e.terms.iter().all(|t| t.membership.unwrap().class_id == e.class_id));
        }
        let float: f64 = modes.iter().zip(&signs).map(|(&k, &s)| s as f64 * law.omega_float(k).unwrap()).sum();
        if all_zero {
            prop_assert!(float.abs() < 1e-12);
        }
    }

    #[test]
    fn class_is_invariant_under_scaling(k in mode(), t in 1i32..6) {
        // Scaling by t multiplies m² + n² by t², so the square-free kernel
        // is unchanged and γ picks up the factor t.
        let law = DispersionLaw::DriftInverseNorm;
        let a = classify_mode(&law, k).unwrap();
        let b = classify_mode(&law, k.scaled(t)).unwrap();
        prop_assert_eq!(a.class_id, b.class_id);
        prop_assert_eq!(b.gamma, a.gamma * t as u64);
    }
}
