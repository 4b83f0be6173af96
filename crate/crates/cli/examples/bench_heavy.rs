use polyshift_core::solver::{find_shift, SetConfig, ShiftStatus};
use polyshift_core::{DensePoly, FieldSpec, Oracle, SeededRng};
use std::time::Instant;

fn main() {
    let field = FieldSpec::default_prime();
    let total = Instant::now();
    for idx in 0..10u64 {
        let mut rng = SeededRng::new(9000 + idx);
        let f = DensePoly::random(5, 5, 0.5, field, &mut rng);
        let c = field.sample_point(5, 1_000_000, &mut rng).unwrap();
        let g = f.shift(&c).unwrap();
        let start = Instant::now();
        let cfg = SetConfig { seed: idx, ..SetConfig::default() };
        let result = find_shift(&Oracle::from_dense(&f), &Oracle::from_dense(&g), &cfg).unwrap();
        let ok = match &result.status {
            ShiftStatus::Shift(a) => f.shift(a).unwrap() == g,
            ShiftStatus::Fail => false,
        };
        println!(
            "idx {idx}: {:?} queries {} ok {ok}",
            start.elapsed(),
            result.queries_used
        );
        assert!(ok);
    }
    println!("total {:?}", total.elapsed());
}
