use proptest::prelude::*;
use std::sync::OnceLock;
use wallcross_core::arith::{int, Rational};
use wallcross_core::hall::{FqAlgebraSpec, HallLab, HallSeries};

fn labs() -> &'static [HallLab] {
    static LABS: OnceLock<Vec<HallLab>> = OnceLock::new();
    LABS.get_or_init(|| {
        vec![
            HallLab::new(FqAlgebraSpec::truncated_poly(2, 3), 3).unwrap(),
            HallLab::new(FqAlgebraSpec::truncated_poly(3, 2), 3).unwrap(),
            HallLab::new(FqAlgebraSpec::free(2, 2), 2).unwrap(),
        ]
    })
}

fn basis(lab: &HallLab, d: usize, i: usize) -> HallSeries {
    let mut s = HallSeries::zero(lab.max_dim());
    s.0[d].insert(i, int(1));
    s
}

fn gl_order(p: u64, n: u32) -> u64 {
    (0..n).map(|j| p.pow(n) - p.pow(j)).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hall_product_is_associative(which in 0usize..3, picks in prop::collection::vec((0usize..4, 0usize..8), 3)) {
        let lab = &labs()[which];
        let top = lab.max_dim();
        let elems: Vec<HallSeries> = picks
            .iter()
            .map(|&(d, i)| {
                let d = d % (top + 1);
                basis(lab, d, i % lab.classes(d).len())
            })
            .collect();
        let (e, f, g) = (&elems[0], &elems[1], &elems[2]);
        prop_assert_eq!(lab.mul(&lab.mul(e, f), g), lab.mul(e, &lab.mul(f, g)));
    }

    #[test]
    fn orbit_stabilizer_sums(which in 0usize..3) {
        let lab = &labs()[which];
        let p = lab.spec.p as u64;
        for d in 0..=lab.max_dim() {
            prop_assert_eq!(lab.gl_order(d), gl_order(p, d as u32));
            let total: u64 = lab.classes(d).iter().map(|m| lab.gl_order(d) / m.aut_count).sum();
            prop_assert_eq!(total, lab.valid_tuples(d));
        }
    }

    #[test]
    fn f_series_lives_on_cyclic_classes(which in 0usize..3) {
        let lab = &labs()[which];
        let f = lab.f_series().unwrap();
        for d in 0..=lab.max_dim() {
            for (i, m) in lab.classes(d).iter().enumerate() {
                let c = f.bracket_coeff(lab, (d, i));
                let want = if m.is_cyclic() {
                    Rational::new((m.gen_count as i64).into(), (m.aut_count as i64).into())
                } else {
                    int(0)
                };
                prop_assert_eq!(c, want);
            }
        }
    }
}
