use fatpoint::cohomology::hilbert_function;
use fatpoint::configuration::catalog;
use fatpoint::oracle::{oracle_hilbert, realize, realize_alternate, verify_realization};
use fatpoint::polytope::{int, limiting_shape, newton_polytope, rat};
use fatpoint::staircase::staircase_from_hilbert;

#[test]
fn scaled_areas_shrink_toward_three() {
    for entry in catalog() {
        let areas: Vec<_> = [2u64, 4, 8, 16, 32]
            .iter()
            .map(|&m| {
                let s = staircase_from_hilbert(&hilbert_function(&entry.config, m).unwrap()).unwrap();
                newton_polytope(&s).scale(&rat(1, m as i64)).unwrap().complement_area()
            })
            .collect();
        for a in &areas {
            assert!(*a >= int(3), "{}: area {a}", entry.slug);
        }
        for w in areas.windows(2) {
            assert!(w[1] <= w[0], "{}: {} then {}", entry.slug, w[0], w[1]);
        }
    }
}

#[test]
fn both_witnesses_agree() {
    for entry in catalog() {
        let a = realize(entry.slug).unwrap();
        let b = realize_alternate(entry.slug).unwrap();
        assert_ne!(a, b);
        assert!(verify_realization(&a, &entry.config) && verify_realization(&b, &entry.config));
        for m in 1..=2 {
            let tab = hilbert_function(&entry.config, m).unwrap();
            for t in 0..tab.values.len() as u64 {
                assert_eq!(oracle_hilbert(&a, m, t), oracle_hilbert(&b, m, t), "{} m={m} t={t}", entry.slug);
            }
        }
    }
}

#[test]
fn intercepts_of_exact_limits() {
    // y-intercept is the largest number of points on a line when there is a
    // line through three of them
    for (slug, y0) in [("one-line-3", 3), ("line-4", 4), ("line-5", 5), ("line-6", 6), ("two-lines-3-meeting", 3)] {
        let cfg = catalog().into_iter().find(|e| e.slug == slug).unwrap().config;
        let report = limiting_shape(&cfg, &[60, 120, 180]).unwrap();
        assert!(report.exact, "{slug}");
        assert_eq!(report.limit.intercepts().1, int(y0), "{slug}");
    }
}
