//! Round trips of the text formats the driver reads and writes.

use proptest::prelude::*;

use qes::json::cell;
use qes::potfile::Tabulated;

fn table(xs: &[f64], vs: &[f64]) -> String {
    let mut s = String::from("x,V\n");
    for (x, v) in xs.iter().zip(vs) {
        s.push_str(&format!("{},{}\n", cell(*x), cell(*v)));
    }
    s
}

proptest! {
    #[test]
    fn csv_cells_parse_back_exactly(v in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL | proptest::num::f64::ZERO) {
        prop_assert_eq!(cell(v).parse::<f64>().unwrap(), v);
    }

    #[test]
    fn tables_reproduce_their_nodes(steps in prop::collection::vec((0.01f64..5.0, -1e3f64..1e3), 2..40), start in -50.0f64..50.0) {
        let mut xs = Vec::new();
        let mut x = start;
        for (dx, _) in &steps {
            xs.push(x);
            x += dx;
        }
        let vs: Vec<f64> = steps.iter().map(|(_, v)| *v).collect();
        let t = Tabulated::parse(table(&xs, &vs).as_bytes()).unwrap();
        prop_assert_eq!(t.range(), (xs[0], xs[xs.len() - 1]));
        for (x, v) in xs.iter().zip(&vs) {
            prop_assert_eq!(t.value(*x), *v);
        }
        for w in xs.windows(2).zip(vs.windows(2)) {
            let mid = t.value(0.5 * (w.0[0] + w.0[1]));
            prop_assert!(mid >= w.1[0].min(w.1[1]) - 1e-9 && mid <= w.1[0].max(w.1[1]) + 1e-9);
        }
    }

    #[test]
    fn a_repeated_abscissa_is_reported_at_its_line(n in 3usize..30, at in 1usize..29) {
        let at = at.min(n - 1);
        let mut xs: Vec<f64> = (0..n).map(|i| i as f64).collect();
        xs[at] = xs[at - 1];
        let err = Tabulated::parse(table(&xs, &vec![0.0; n]).as_bytes()).unwrap_err();
        // the header is line 1 and node i sits on line i + 2
        prop_assert_eq!(err.line, at as u64 + 2);
    }
}
